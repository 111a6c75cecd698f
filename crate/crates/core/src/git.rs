//! The linear GIT problem `[V/GL₂]` with `V = Hom(C⁶,T) ⊕ Sym³T∨`.
//!
//! Sign convention, used everywhere downstream: a coordinate of `V` whose
//! vector weight is `w` is scaled by `λ` with exponent `−⟨λ,w⟩`. With this
//! convention `V^{λ≥0}` and `V^{λ≤0}` reproduce the KN strata tables below
//! verbatim. Slice models report the residual pairing `⟨λ,w⟩` directly.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cubic::{inv2, BinaryCubic, Mat2, Stratum};
use crate::rational::{format_q, parse_q, q, Q};
use crate::weights::OnePs;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Plus => "+",
            Side::Minus => "-",
        })
    }
}

impl FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" | "positive" => Ok(Side::Plus),
            "-" | "minus" | "negative" => Ok(Side::Minus),
            _ => Err(Error::Parse(format!("side must be + or -, got {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GitProblem {
    /// Torus weights of `V`, with multiplicity.
    pub v_weights: Vec<(i64, i64)>,
    /// Torus weights of the Lie algebra.
    pub g_weights: Vec<(i64, i64)>,
    /// Candidate destabilizing 1-PS, in stratum order.
    pub one_ps: Vec<OnePs>,
}

impl Default for GitProblem {
    fn default() -> Self {
        Self::flop()
    }
}

impl GitProblem {
    /// `Hom(C⁶,T) ⊕ Sym³T∨`. The order of the `V` weights matches the
    /// coordinates of [`PointV`]: `Φ₁•`, `Φ₂•`, then `ψ₁..ψ₄` (the
    /// coefficients of `t₁³, t₁²t₂, t₁t₂², t₂³`).
    pub fn flop() -> Self {
        let mut v = vec![(1, 0); 6];
        v.extend(vec![(0, 1); 6]);
        v.extend([(-3, 0), (-2, -1), (-1, -2), (0, -3)]);
        GitProblem {
            v_weights: v,
            g_weights: vec![(0, 0), (0, 0), (1, -1), (-1, 1)],
            one_ps: vec![OnePs::LAMBDA0, OnePs::LAMBDA1, OnePs::LAMBDA2],
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn weight_sum(&self) -> (i64, i64) {
        self.v_weights.iter().fold((0, 0), |(a, b), (x, y)| (a + x, b + y))
    }

    pub fn is_calabi_yau(&self) -> bool {
        let (a, b) = self.weight_sum();
        a + b == 0
    }

    /// Positive `λ`-eigenvalues on `V` minus those on the Lie algebra.
    pub fn eta(&self, lambda: &OnePs) -> i64 {
        let pos = |ws: &[(i64, i64)]| ws.iter().map(|w| lambda.pair_raw(*w).max(0)).sum::<i64>();
        pos(&self.v_weights) - pos(&self.g_weights)
    }

    /// Exponent by which `λ` scales coordinate `k`.
    pub fn coordinate_exponent(&self, lambda: &OnePs, k: usize) -> i64 {
        -lambda.pair_raw(self.v_weights[k])
    }

    /// Indices of the coordinates spanning `V^{λ≥0}` (or `V^{λ≤0}`).
    pub fn attracting_coords(&self, lambda: &OnePs, nonneg: bool) -> Vec<usize> {
        (0..self.v_weights.len())
            .filter(|&k| {
                let e = self.coordinate_exponent(lambda, k);
                if nonneg { e >= 0 } else { e <= 0 }
            })
            .collect()
    }
}

/// A point `(Φ, ψ)` of `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointV {
    pub phi: [[Q; 6]; 2],
    pub psi: BinaryCubic,
}

#[derive(Serialize, Deserialize)]
struct PointVJson {
    phi: [[String; 6]; 2],
    psi: BinaryCubic,
}

impl Serialize for PointV {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let row = |r: &[Q; 6]| -> [String; 6] { std::array::from_fn(|j| format_q(&r[j])) };
        PointVJson { phi: [row(&self.phi[0]), row(&self.phi[1])], psi: self.psi.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PointV {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PointVJson::deserialize(d)?;
        let mut phi: [[Q; 6]; 2] = Default::default();
        for r in 0..2 {
            for j in 0..6 {
                phi[r][j] = parse_q(&raw.phi[r][j]).map_err(serde::de::Error::custom)?;
            }
        }
        Ok(PointV { phi, psi: raw.psi })
    }
}

impl PointV {
    pub fn new(phi: [[Q; 6]; 2], psi: BinaryCubic) -> Self {
        PointV { phi, psi }
    }

    pub fn from_ints(phi: [[i64; 6]; 2], psi: [i64; 4]) -> Self {
        PointV {
            phi: phi.map(|r| r.map(q)),
            psi: BinaryCubic::from_ints(psi),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn phi_rank(&self) -> usize {
        let [r1, r2] = &self.phi;
        for i in 0..6 {
            for j in (i + 1)..6 {
                if !(&r1[i] * &r2[j] - &r1[j] * &r2[i]).is_zero() {
                    return 2;
                }
            }
        }
        if r1.iter().chain(r2).all(Zero::is_zero) { 0 } else { 1 }
    }

    /// Whether every column of `Φ` lies on the line `[u:v] ⊂ T`.
    pub fn image_in_line(&self, p: &crate::cubic::ProjectivePoint) -> bool {
        (0..6).all(|j| p.contains(&self.phi[0][j], &self.phi[1][j]))
    }

    /// `g·(Φ,ψ) = (gΦ, ψ∘g⁻¹)`.
    pub fn act(&self, g: &Mat2<Q>) -> Result<Self> {
        let gi = inv2(g).ok_or_else(|| Error::Parse("singular group element".into()))?;
        let phi = std::array::from_fn(|r| {
            std::array::from_fn(|j| &g[r][0] * &self.phi[0][j] + &g[r][1] * &self.phi[1][j])
        });
        Ok(PointV { phi, psi: self.psi.pullback(&gi) })
    }

    /// Nonzero-ness of the six components `Φ₁•, Φ₂•, ψ₁, ψ₂, ψ₃, ψ₄`.
    pub fn component_nonzero(&self) -> [bool; 6] {
        let row = |r: &[Q; 6]| r.iter().any(|x| !x.is_zero());
        let c = &self.psi.coeffs;
        [row(&self.phi[0]), row(&self.phi[1]), !c[0].is_zero(), !c[1].is_zero(), !c[2].is_zero(), !c[3].is_zero()]
    }

    /// The 16 coordinates in [`GitProblem::flop`] order.
    pub fn coordinates(&self) -> Vec<Q> {
        self.phi[0].iter().chain(&self.phi[1]).chain(&self.psi.coeffs).cloned().collect()
    }
}

pub fn semistable(p: &PointV, side: Side) -> bool {
    match side {
        Side::Minus => p.phi_rank() == 2,
        Side::Plus => match p.psi.stratum() {
            Stratum::Sigma3 => true,
            Stratum::Sigma2 => {
                let d = p.psi.double_root().expect("Σ₂ cubics have a double root");
                !p.image_in_line(&d)
            }
            _ => false,
        },
    }
}

/// Index `i` of the unstable stratum `GYᵢ^±` containing `p`, or `None` if
/// `p` is semistable.
pub fn unstable_stratum(p: &PointV, side: Side) -> Option<usize> {
    if semistable(p, side) {
        return None;
    }
    Some(match side {
        Side::Minus => {
            if p.phi_rank() == 0 { 0 } else { 1 }
        }
        Side::Plus => match p.psi.stratum() {
            Stratum::Sigma0 => 0,
            Stratum::Sigma1 => 1,
            _ => 2,
        },
    })
}

/// Per-component constraint in a stratum display.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Pat {
    /// `0`
    Zero,
    /// `□`
    NonZero,
    /// `⋆`
    Any,
}

impl Pat {
    fn admits(self, nonzero: bool) -> bool {
        match self {
            Pat::Zero => !nonzero,
            Pat::NonZero => nonzero,
            Pat::Any => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumPattern {
    pub name: &'static str,
    pub side: Side,
    pub index: usize,
    /// `true` for the attracting set `Y`, `false` for the fixed set `Z`.
    pub attracting: bool,
    pub components: [Pat; 6],
}

impl StratumPattern {
    pub fn matches(&self, p: &PointV) -> bool {
        self.components.iter().zip(p.component_nonzero()).all(|(c, nz)| c.admits(nz))
    }

    /// `self ⊆ closure(other)` as coordinate patterns.
    pub fn in_closure_of(&self, other: &Self) -> bool {
        self.components.iter().zip(&other.components).all(|(a, b)| *a == Pat::Zero || *b != Pat::Zero)
    }

    pub fn disjoint_from(&self, other: &Self) -> bool {
        self.components.iter().zip(&other.components).any(|(a, b)| {
            matches!((a, b), (Pat::Zero, Pat::NonZero) | (Pat::NonZero, Pat::Zero))
        })
    }
}

/// The `Z` and `Y` displays for both sides.
pub fn stratum_table() -> Vec<StratumPattern> {
    use Pat::{Any as S, NonZero as B, Zero as O};
    let e = |name, side, index, attracting, components| StratumPattern { name, side, index, attracting, components };
    vec![
        e("Z0-", Side::Minus, 0, false, [O, O, O, O, O, O]),
        e("Y0-", Side::Minus, 0, true, [O, O, S, S, S, S]),
        e("Z1-", Side::Minus, 1, false, [B, O, S, O, O, O]),
        e("Y1-", Side::Minus, 1, true, [B, O, S, S, S, S]),
        e("Z0+", Side::Plus, 0, false, [O, O, O, O, O, O]),
        e("Y0+", Side::Plus, 0, true, [S, S, O, O, O, O]),
        e("Z1+", Side::Plus, 1, false, [S, O, B, O, O, O]),
        e("Y1+", Side::Plus, 1, true, [S, S, B, O, O, O]),
        e("Z2+", Side::Plus, 2, false, [O, O, O, B, O, O]),
        e("Y2+", Side::Plus, 2, true, [O, S, S, B, O, O]),
    ]
}

/// Residual 1-PS weights on a transverse slice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SliceReport {
    pub model: String,
    pub description: String,
    /// Weights of the coordinates that are projectivized.
    pub base_weights: Vec<i64>,
    /// Weights `w` of the fibre summands `𝒪(w)`.
    pub fibre_weights: Vec<i64>,
}

pub const SLICE_MODELS: [&str; 3] = ["generic-sing-slice-minus", "generic-sing-slice-plus", "F-resolution"];

/// Slice at a generic rank-one cubic: first column of `Φ` is `(1,0)`, the
/// second row's remaining 5 entries and the coefficients of `t₁t₂²`, `t₂³`
/// survive, acted on by `λ₁`. For `F̃`: bottom row of `Φ` is zero,
/// `ψ = t₂(t₁² + γt₂²)`, acted on by `λ₂`.
pub fn slice_weights(model: &str) -> Result<SliceReport> {
    let v = GitProblem::flop().v_weights;
    let l1 = OnePs::LAMBDA1;
    let row2: Vec<i64> = v[7..12].iter().map(|w| l1.pair_raw(*w)).collect();
    let coeffs: Vec<i64> = [v[14], v[15]].iter().map(|w| l1.pair_raw(*w)).collect();
    match model {
        "generic-sing-slice-minus" => {
            // Φ₂ ≠ 0 is projectivized; α, β are the fibre
            Ok(SliceReport {
                model: model.into(),
                description: format!("Tot O({})⊕O({}) over P^{}", coeffs[0], coeffs[1], row2.len() - 1),
                base_weights: row2,
                fibre_weights: coeffs,
            })
        }
        "generic-sing-slice-plus" => {
            // (α, β) ≠ 0 is projectivized with the negated weights
            let base: Vec<i64> = coeffs.iter().map(|w| -w).collect();
            let fibre: Vec<i64> = row2.iter().map(|w| -w).collect();
            Ok(SliceReport {
                model: model.into(),
                description: format!("Tot O(-1)^{} over P^1_{}:{}", fibre.len(), base[0], base[1]),
                base_weights: base,
                fibre_weights: fibre,
            })
        }
        "F-resolution" => {
            let l2 = OnePs::LAMBDA2;
            let mut w: Vec<i64> = v[0..6].iter().map(|x| -l2.pair_raw(*x)).collect();
            w.push(-l2.pair_raw(v[15]));
            Ok(SliceReport {
                model: model.into(),
                description: format!("P^6 with weights {w:?}"),
                base_weights: w,
                fibre_weights: vec![],
            })
        }
        other => Err(Error::UnknownModel(other.into())),
    }
}

/// Points covering every stratum on both sides, including rank-one `Φ`
/// and the standard cubic forms.
pub fn stability_fixtures() -> Vec<PointV> {
    let rank2 = |psi| PointV::from_ints([[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0]], psi);
    vec![
        rank2([0, 0, 0, 0]),
        rank2([1, 0, 0, 1]),
        rank2([0, 1, 0, 0]),
        rank2([1, 0, 0, 0]),
        PointV::from_ints([[0; 6]; 2], [1, 0, 0, 1]),
        PointV::from_ints([[0; 6]; 2], [0, 1, 0, 0]),
        PointV::from_ints([[0; 6]; 2], [0; 4]),
        PointV::from_ints([[1, 1, 0, 0, 0, 0], [0; 6]], [2, 0, 0, 0]),
        PointV::from_ints([[0; 6], [1, 2, 0, 0, 0, 0]], [3, 1, 0, 0]),
        PointV::from_ints([[1, 2, 0, 0, 0, 0], [0; 6]], [0, 1, 0, 0]),
        PointV::from_ints([[1, 2, 3, 0, 0, 0], [0; 6]], [1, -1, 2, 0]),
        PointV::from_ints([[0, 0, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0]], [0, 0, 0, 0]),
    ]
}

/// Positive-side classification of the standard forms: `Σ₁` is unstable,
/// `Σ₃∖Σ₂` is stable, and `t₁²t₂` is unstable iff `Φ` lands in `t₁ = 0`.
pub fn standard_form_examples() -> Vec<(PointV, bool)> {
    let generic = [[1, 2, 0, -1, 0, 3], [0, 1, 1, 0, 2, -1]];
    vec![
        (PointV::from_ints(generic, [1, 0, 0, 0]), false),
        (PointV::from_ints([[0; 6]; 2], [1, 0, 0, 0]), false),
        (PointV::from_ints(generic, [1, 0, 0, 1]), true),
        (PointV::from_ints([[0; 6]; 2], [1, 0, 0, 1]), true),
        (PointV::from_ints([[0; 6], [1, 2, 0, 0, 0, 0]], [0, 1, 0, 0]), false),
        (PointV::from_ints([[1, 0, 0, 0, 0, 0], [5, 2, 0, 0, 0, 0]], [0, 1, 0, 0]), true),
        (PointV::from_ints(generic, [0, 1, 0, 0]), true),
    ]
}

/// A random point with small integer entries; `sparsity` is the probability
/// that a component is forced to zero.
pub fn random_point<R: rand::Rng>(rng: &mut R, sparsity: f64) -> PointV {
    let mut p = PointV::from_ints([[0; 6]; 2], [0; 4]);
    for r in 0..2 {
        if !rng.gen_bool(sparsity) {
            for j in 0..6 {
                p.phi[r][j] = q(rng.gen_range(-3..=3));
            }
        }
    }
    for k in 0..4 {
        if !rng.gen_bool(sparsity) {
            p.psi.coeffs[k] = q(rng.gen_range(-3..=3));
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic::{random_gl2, ProjectivePoint};

    fn rank2_padded(psi: [i64; 4]) -> PointV {
        PointV::from_ints([[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0]], psi)
    }
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn eta_values() {
        let g = GitProblem::flop();
        assert_eq!(g.weight_sum(), (0, 0));
        assert!(g.is_calabi_yau());
        let etas: Vec<i64> = g.one_ps.iter().map(|l| g.eta(l)).collect();
        assert_eq!(etas, vec![12, 5, 12]);
        for l in &g.one_ps {
            assert_eq!(g.eta(l), g.eta(&l.neg()));
        }
    }

    #[test]
    fn convention_reproduces_tables() {
        let g = GitProblem::flop();
        // component index of each of the 16 coordinates
        let comp = |k: usize| if k < 6 { 0 } else if k < 12 { 1 } else { k - 10 };
        for pat in stratum_table().iter().filter(|p| p.attracting) {
            let lambda = g.one_ps[pat.index];
            let nonneg = pat.side == Side::Minus;
            let allowed: Vec<usize> = g.attracting_coords(&lambda, nonneg).into_iter().map(comp).collect();
            for c in 0..6 {
                assert_eq!(pat.components[c] != Pat::Zero, allowed.contains(&c), "{} component {c}", pat.name);
            }
        }
        for pat in stratum_table().iter().filter(|p| !p.attracting && p.index > 0) {
            let lambda = g.one_ps[pat.index];
            let fixed: Vec<usize> =
                (0..16).filter(|&k| g.coordinate_exponent(&lambda, k) == 0).map(comp).collect();
            for c in 0..6 {
                assert_eq!(pat.components[c] != Pat::Zero, fixed.contains(&c), "{} component {c}", pat.name);
            }
        }
    }

    #[test]
    fn table_shape() {
        let t = stratum_table();
        for side in [Side::Minus, Side::Plus] {
            let on: Vec<&StratumPattern> = t.iter().filter(|p| p.side == side).collect();
            for z in on.iter().filter(|p| !p.attracting) {
                let y = on.iter().find(|p| p.attracting && p.index == z.index).unwrap();
                assert!(z.in_closure_of(y), "{} ⊄ closure({})", z.name, y.name);
            }
            for (i, a) in on.iter().enumerate() {
                for b in &on[i + 1..] {
                    if a.attracting == b.attracting {
                        assert!(a.disjoint_from(b), "{} meets {}", a.name, b.name);
                    }
                }
            }
        }
    }

    #[test]
    fn standard_examples() {
        for (p, expect) in standard_form_examples() {
            assert_eq!(semistable(&p, Side::Plus), expect, "{p:?}");
        }
        let p = rank2_padded([0, 0, 0, 0]);
        assert!(semistable(&p, Side::Minus));
        assert!(!semistable(&p, Side::Plus));
        let p = PointV::from_ints([[0; 6]; 2], [1, 0, 0, 1]);
        assert!(semistable(&p, Side::Plus));
        assert!(!semistable(&p, Side::Minus));
        let p = PointV::from_ints([[0; 6], [1, 2, 0, 0, 0, 0]], [0, 1, 0, 0]);
        assert!(p.image_in_line(&ProjectivePoint::from_ints(0, 1).unwrap()));
        assert!(!semistable(&p, Side::Plus));
        // image in the simple root t₂ = 0 of t₁²t₂
        let p = PointV::from_ints([[1, 2, 0, 0, 0, 0], [0; 6]], [0, 1, 0, 0]);
        assert!(semistable(&p, Side::Plus));
    }

    /// Moves a rank-one `Φ` so its image is the line `[1:0]`.
    fn align_rank_one(p: &PointV) -> PointV {
        let j = (0..6).find(|&j| !p.phi[0][j].is_zero() || !p.phi[1][j].is_zero()).unwrap();
        let (x, y) = (p.phi[0][j].clone(), p.phi[1][j].clone());
        let m = if x.is_zero() { [[x, q(1)], [y, q(0)]] } else { [[x, q(0)], [y, q(1)]] };
        p.act(&inv2(&m).unwrap()).unwrap()
    }

    #[test]
    fn fixtures_classify_exactly_once() {
        let table = stratum_table();
        for p in stability_fixtures() {
            for side in [Side::Minus, Side::Plus] {
                let p = if side == Side::Minus && p.phi_rank() == 1 { align_rank_one(&p) } else { p.clone() };
                let ys: Vec<&StratumPattern> =
                    table.iter().filter(|s| s.side == side && s.attracting && s.matches(&p)).collect();
                let ss = semistable(&p, side);
                assert!(ys.len() <= 1);
                assert_eq!(ss as usize + ys.len(), 1, "{p:?} on side {side}");
                if let Some(y) = ys.first() {
                    assert_eq!(unstable_stratum(&p, side), Some(y.index));
                }
            }
        }
    }

    #[test]
    fn semistability_is_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in stability_fixtures() {
            for _ in 0..100 {
                let g = random_gl2(&mut rng);
                let gp = p.act(&g).unwrap();
                for side in [Side::Minus, Side::Plus] {
                    assert_eq!(semistable(&p, side), semistable(&gp, side));
                    assert_eq!(unstable_stratum(&p, side), unstable_stratum(&gp, side));
                }
            }
        }
    }

    #[test]
    fn slice_models() {
        let m = slice_weights("generic-sing-slice-minus").unwrap();
        assert_eq!((m.base_weights, m.fibre_weights), (vec![1; 5], vec![-2, -3]));
        let p = slice_weights("generic-sing-slice-plus").unwrap();
        assert_eq!((p.base_weights, p.fibre_weights), (vec![2, 3], vec![-1; 5]));
        let f = slice_weights("F-resolution").unwrap();
        assert_eq!(f.base_weights, vec![1, 1, 1, 1, 1, 1, 6]);
        assert!(matches!(slice_weights("nope"), Err(Error::UnknownModel(_))));
    }

    #[test]
    fn json_roundtrip() {
        let p = PointV::from_ints([[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0]], [1, 0, 0, 1]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(PointV::from_json(&s).unwrap(), p);
        let g = GitProblem::flop();
        assert_eq!(GitProblem::from_json(&serde_json::to_string(&g).unwrap()).unwrap(), g);
        assert!(PointV::from_json("{\"phi\": 3}").is_err());
    }
}
