//! The superpotential `W = (ψ∘Sym³Φ)(f)` on `V = Hom(C⁶,T) ⊕ Sym³T∨`.
//!
//! With `f̂` the symmetric trilinear form of `f` (`f̂(x,x,x) = f(x)`) and
//! `ψ = Σ c_k t₁^{3−k} t₂^k`,
//!
//! `W(Φ,ψ) = Σ_k c_k · f̂(Φ₁•^{3−k}, Φ₂•^k)`.
//!
//! This is `1/6` of the apolar pairing of `ψ` with the pullback cubic
//! `f(t₁Φ₁• + t₂Φ₂•)`, hence `GL(T)`-invariant for `(Φ,ψ) ↦ (gΦ, ψ∘g⁻¹)`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::characters::binom;
use crate::cubic::{random_gl2, BinaryCubic, Stratum};
use crate::git::{semistable, PointV, Side};
use crate::poly::Poly;
use crate::rational::{format_q, parse_q, q, random_q, to_f64, Q};
use crate::verify::Status;
use crate::{Error, Result};

/// A cubic form in six variables together with its symmetric tensor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cubic6 {
    terms: BTreeMap<[u8; 6], Q>,
    /// `T[i][j][k]`, flattened; `f̂(x,y,z) = Σ T_ijk xᵢ yⱼ z_k`.
    tensor: Vec<Q>,
    /// Nonzero entries of `tensor`.
    sparse: Vec<(usize, usize, usize, Q)>,
}

#[derive(Serialize, Deserialize)]
struct Cubic6Json {
    terms: Vec<(String, [u8; 6])>,
}

impl Cubic6 {
    pub fn new(terms: BTreeMap<[u8; 6], Q>) -> Result<Self> {
        let mut tensor = vec![Q::zero(); 216];
        for (e, c) in &terms {
            if e.iter().map(|x| *x as u32).sum::<u32>() != 3 {
                return Err(Error::Parse(format!("monomial {e:?} is not cubic")));
            }
            let idx: Vec<usize> = (0..6).flat_map(|i| std::iter::repeat(i).take(e[i] as usize)).collect();
            let perms = distinct_permutations(&idx);
            for p in &perms {
                tensor[36 * p[0] + 6 * p[1] + p[2]] += c / q(perms.len() as i64);
            }
        }
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let sparse = (0..216).filter(|n| !tensor[*n].is_zero()).map(|n| (n / 36, n / 6 % 6, n % 6, tensor[n].clone())).collect();
        Ok(Cubic6 { terms, tensor, sparse })
    }

    /// `Σ xᵢ³`.
    pub fn fermat() -> Self {
        let terms = (0..6)
            .map(|i| {
                let mut e = [0u8; 6];
                e[i] = 3;
                (e, Q::one())
            })
            .collect();
        Cubic6::new(terms).expect("cubic")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: Cubic6Json = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let mut terms = BTreeMap::new();
        for (c, e) in raw.terms {
            *terms.entry(e).or_insert_with(Q::zero) += parse_q(&c)?;
        }
        Cubic6::new(terms)
    }

    pub fn to_json(&self) -> String {
        let terms = self.terms.iter().map(|(e, c)| (format_q(c), *e)).collect();
        serde_json::to_string(&Cubic6Json { terms }).expect("serializable")
    }

    pub fn is_fermat(&self) -> bool {
        *self == Self::fermat()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8; 6], &Q)> {
        self.terms.iter()
    }

    pub fn tensor(&self, i: usize, j: usize, k: usize) -> &Q {
        &self.tensor[36 * i + 6 * j + k]
    }

    pub fn hat(&self, x: &[Q; 6], y: &[Q; 6], z: &[Q; 6]) -> Q {
        let mut s = Q::zero();
        for (i, j, k, t) in &self.sparse {
            if !(x[*i].is_zero() || y[*j].is_zero() || z[*k].is_zero()) {
                s += t * &x[*i] * &y[*j] * &z[*k];
            }
        }
        s
    }

    pub fn eval(&self, x: &[Q; 6]) -> Q {
        self.terms
            .iter()
            .map(|(e, c)| (0..6).fold(c.clone(), |acc, i| acc * num_traits::pow(x[i].clone(), e[i] as usize)))
            .sum()
    }

    /// `∂ᵢf(x)`.
    pub fn partial(&self, i: usize, x: &[Q; 6]) -> Q {
        q(3) * self.hat(x, x, &unit(i))
    }

    /// `f(t₁·a + t₂·b)` as a binary cubic.
    pub fn pullback(&self, a: &[Q; 6], b: &[Q; 6]) -> BinaryCubic {
        BinaryCubic { coeffs: std::array::from_fn(|k| q(binom(3, k as i64)) * self.hat_mixed(a, b, k)) }
    }

    /// `f̂(a^{3−k}, b^k)`.
    pub fn hat_mixed(&self, a: &[Q; 6], b: &[Q; 6], k: usize) -> Q {
        match k {
            0 => self.hat(a, a, a),
            1 => self.hat(a, a, b),
            2 => self.hat(a, b, b),
            _ => self.hat(b, b, b),
        }
    }

    fn tensor_f64(&self) -> Vec<f64> {
        self.tensor.iter().map(to_f64).collect()
    }
}

fn unit(i: usize) -> [Q; 6] {
    std::array::from_fn(|j| if i == j { Q::one() } else { Q::zero() })
}

fn distinct_permutations(idx: &[usize]) -> BTreeSet<[usize; 3]> {
    let (a, b, c) = (idx[0], idx[1], idx[2]);
    [[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]].into_iter().collect()
}

pub fn eval_w(f: &Cubic6, p: &PointV) -> Q {
    let [a, b] = &p.phi;
    (0..4).filter(|k| !p.psi.coeffs[*k].is_zero()).map(|k| &p.psi.coeffs[k] * f.hat_mixed(a, b, k)).sum()
}

/// Gradient over the 16 coordinates `Φ₁•, Φ₂•, ψ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gradient {
    pub phi: [[Q; 6]; 2],
    pub psi: [Q; 4],
}

impl Gradient {
    pub fn is_zero(&self) -> bool {
        self.phi.iter().flatten().chain(&self.psi).all(Zero::is_zero)
    }

    pub fn phi_is_zero(&self) -> bool {
        self.phi.iter().flatten().all(Zero::is_zero)
    }

    pub fn to_vec(&self) -> Vec<Q> {
        self.phi.iter().flatten().chain(&self.psi).cloned().collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.to_vec().iter().map(format_q).collect()
    }
}

/// Exact gradient. The `ψ`-part is `f̂(Φ₁^{3−k},Φ₂^k)`, the pullback
/// coefficient divided by `C(3,k)`; both vanish together.
pub fn grad_w(f: &Cubic6, p: &PointV) -> Gradient {
    let [a, b] = &p.phi;
    let c = &p.psi.coeffs;
    let mut phi: [[Q; 6]; 2] = Default::default();
    for j in 0..6 {
        let e = unit(j);
        let mut d1 = Q::zero();
        let mut d2 = Q::zero();
        for k in 0..4 {
            if c[k].is_zero() {
                continue;
            }
            // ∂/∂a of f̂(a^{3−k}, b^k) = (3−k) f̂(a^{2−k}, b^k, e); likewise for b
            if k < 3 {
                let t = match k {
                    0 => f.hat(a, a, &e),
                    1 => f.hat(a, b, &e),
                    _ => f.hat(b, b, &e),
                };
                d1 += &c[k] * q(3 - k as i64) * t;
            }
            if k > 0 {
                let t = match k {
                    1 => f.hat(a, a, &e),
                    2 => f.hat(a, b, &e),
                    _ => f.hat(b, b, &e),
                };
                d2 += &c[k] * q(k as i64) * t;
            }
        }
        phi[0][j] = d1;
        phi[1][j] = d2;
    }
    let psi = std::array::from_fn(|k| f.hat_mixed(a, b, k));
    Gradient { phi, psi }
}

/// `W` in floating point from 16 coordinates.
pub fn eval_w_f64(tensor: &[f64], x: &[f64; 16]) -> f64 {
    let a = &x[0..6];
    let b = &x[6..12];
    let hat = |u: &[f64], v: &[f64], w: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..6 {
            for j in 0..6 {
                for k in 0..6 {
                    s += tensor[36 * i + 6 * j + k] * u[i] * v[j] * w[k];
                }
            }
        }
        s
    };
    x[12] * hat(a, a, a) + x[13] * hat(a, a, b) + x[14] * hat(a, b, b) + x[15] * hat(b, b, b)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiniteDifferenceReport {
    pub points: usize,
    pub step: f64,
    pub max_relative_error: f64,
    pub tolerance: f64,
    pub passes: bool,
}

pub const FD_TOLERANCE: f64 = 1e-6;

/// Central differences against [`grad_w`] at `points` seeded random points.
/// Error is measured as `‖g_fd − g‖_∞ / max(‖g‖_∞, 1)`.
pub fn finite_difference_check(f: &Cubic6, points: usize, seed: u64) -> FiniteDifferenceReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tensor = f.tensor_f64();
    let h = 1e-4;
    let mut worst: f64 = 0.0;
    for _ in 0..points {
        let phi = std::array::from_fn(|_| std::array::from_fn(|_| random_q(&mut rng, 4)));
        let psi = BinaryCubic { coeffs: std::array::from_fn(|_| random_q(&mut rng, 4)) };
        let p = PointV::new(phi, psi);
        let exact: Vec<f64> = grad_w(f, &p).to_vec().iter().map(to_f64).collect();
        let x: [f64; 16] = std::array::from_fn(|i| to_f64(&p.coordinates()[i]));
        let mut err: f64 = 0.0;
        for i in 0..16 {
            let mut xp = x;
            let mut xm = x;
            xp[i] += h;
            xm[i] -= h;
            let fd = (eval_w_f64(&tensor, &xp) - eval_w_f64(&tensor, &xm)) / (2.0 * h);
            err = err.max((fd - exact[i]).abs());
        }
        let scale = exact.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        worst = worst.max(err / scale);
    }
    FiniteDifferenceReport { points, step: h, max_relative_error: worst, tolerance: FD_TOLERANCE, passes: worst <= FD_TOLERANCE }
}

/// `W` with `ψ` fixed, as a polynomial in the 12 entries of `Φ`
/// (`Φ₁₁..Φ₁₆, Φ₂₁..Φ₂₆`).
pub fn w_poly(f: &Cubic6, psi: &BinaryCubic) -> Poly {
    let mut w = Poly::zero(12);
    for k in 0..4 {
        let c = &psi.coeffs[k];
        if c.is_zero() {
            continue;
        }
        // rows of the three slots: (3−k) copies of Φ₁, k copies of Φ₂
        let rows: Vec<usize> = std::iter::repeat(0).take(3 - k).chain(std::iter::repeat(1).take(k)).collect();
        for i in 0..6 {
            for j in 0..6 {
                for l in 0..6 {
                    let t = f.tensor(i, j, l);
                    if t.is_zero() {
                        continue;
                    }
                    let mut e = vec![0u32; 12];
                    e[6 * rows[0] + i] += 1;
                    e[6 * rows[1] + j] += 1;
                    e[6 * rows[2] + l] += 1;
                    w.add_term(e, c * t);
                }
            }
        }
    }
    w
}

/// Minimal sets of variables meeting every support; the common zero locus
/// of the monomials is the union of the coordinate subspaces they cut out.
pub fn minimal_hitting_sets(supports: &[BTreeSet<usize>], nvars: usize) -> Vec<BTreeSet<usize>> {
    let hits = |s: u32| supports.iter().all(|m| m.iter().any(|v| s >> v & 1 == 1));
    let all: Vec<u32> = (0u32..(1 << nvars)).filter(|s| hits(*s)).collect();
    let mut out: Vec<u32> = all.iter().copied().filter(|s| !all.iter().any(|t| t != s && t & s == *t)).collect();
    out.sort_by_key(|s| (s.count_ones(), *s));
    out.into_iter().map(|s| (0..nvars).filter(|v| s >> v & 1 == 1).collect()).collect()
}

pub fn coordinate_name(i: usize) -> String {
    format!("Φ{}{}", i / 6 + 1, i % 6 + 1)
}

/// The four standard forms `0, t₁³, t₁²t₂, t₁³+t₂³` with the locus where
/// the `Φ`-gradient of `W` vanishes for smooth `f`, as coordinates set to 0.
pub fn standard_forms() -> Vec<(BinaryCubic, BTreeSet<usize>)> {
    vec![
        (BinaryCubic::zero(), BTreeSet::new()),
        (BinaryCubic::t1_cubed(), (0..6).collect()),
        (BinaryCubic::t1_sq_t2(), (0..6).collect()),
        (BinaryCubic::fermat(), (0..12).collect()),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumCritical {
    pub psi: BinaryCubic,
    pub stratum: Stratum,
    /// Coordinates vanishing on the expected locus.
    pub expected_locus: Vec<String>,
    /// Minimal hitting sets of the `Φ`-gradient, when every component is a monomial.
    pub symbolic_locus: Option<Vec<Vec<String>>>,
    pub symbolic: Status,
    pub sampled: usize,
    /// Sampled points on the locus where the `Φ`-gradient failed to vanish.
    pub locus_failures: usize,
    /// Sampled points off the locus where the `Φ`-gradient vanished.
    pub off_locus_zeros: usize,
    pub semistable_critical: usize,
    /// Positive-semistable critical points with `Φ ≠ 0` or `ψ ∉ Σ₃`.
    pub violations: usize,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sigma2Report {
    pub samples: usize,
    pub attempts: usize,
    pub vanishing: usize,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalReport {
    pub cubic: String,
    pub seed: u64,
    pub strata: Vec<StratumCritical>,
    pub sigma2: Sigma2Report,
    pub status: Status,
}

fn random_row<R: Rng>(rng: &mut R) -> [Q; 6] {
    std::array::from_fn(|_| q(rng.gen_range(-3..=3)))
}

/// Stratumwise check of the critical locus of `W` on the positive side.
/// Symbolic for Fermat-type `f` (monomial gradients); sampling otherwise.
/// `samples` drives both the per-stratum sampling and the `Σ₂` check.
pub fn critical_stratum_check(f: &Cubic6, samples: usize, seed: u64) -> CriticalReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut strata = Vec::new();
    for (psi, locus) in standard_forms() {
        let w = w_poly(f, &psi);
        let grads: Vec<Poly> = (0..12).map(|i| w.derivative(i)).collect();
        let symbolic_locus = grads.iter().all(|g| g.num_terms() <= 1).then(|| {
            let supports: Vec<BTreeSet<usize>> = grads
                .iter()
                .filter(|g| !g.is_zero())
                .map(|g| g.terms().next().expect("monomial").0.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i).collect())
                .collect();
            minimal_hitting_sets(&supports, 12)
        });
        let symbolic = match &symbolic_locus {
            Some(h) if h.len() == 1 && h[0] == locus => Status::Pass,
            Some(_) => Status::Fail,
            None => Status::Inconclusive,
        };
        let (mut locus_failures, mut off_locus_zeros, mut semistable_critical, mut violations) = (0, 0, 0, 0);
        for s in 0..samples {
            let mut phi = [random_row(&mut rng), random_row(&mut rng)];
            if s == 0 {
                phi = Default::default();
            }
            for &i in &locus {
                phi[i / 6][i % 6] = Q::zero();
            }
            let on = PointV::new(phi.clone(), psi.clone());
            let g = random_gl2(&mut rng);
            for p in [on.clone(), on.act(&g).expect("invertible")] {
                let grad = grad_w(f, &p);
                if !grad.phi_is_zero() {
                    locus_failures += 1;
                }
                if grad.is_zero() && semistable(&p, Side::Plus) {
                    semistable_critical += 1;
                    if p.phi_rank() != 0 || p.psi.stratum() != Stratum::Sigma3 {
                        violations += 1;
                    }
                }
            }
            if !locus.is_empty() {
                let mut off = phi;
                let i = *locus.iter().nth(rng.gen_range(0..locus.len())).expect("nonempty");
                off[i / 6][i % 6] = q(rng.gen_range(1..=3));
                if grad_w(f, &PointV::new(off, psi.clone())).phi_is_zero() {
                    off_locus_zeros += 1;
                }
            }
        }
        let sampled_ok = locus_failures == 0 && off_locus_zeros == 0 && violations == 0;
        let status = match (symbolic, sampled_ok) {
            (Status::Fail, _) | (_, false) => Status::Fail,
            (Status::Pass, true) => Status::Pass,
            _ => Status::Inconclusive,
        };
        strata.push(StratumCritical {
            stratum: psi.stratum(),
            psi,
            expected_locus: locus.iter().map(|i| coordinate_name(*i)).collect(),
            symbolic_locus: symbolic_locus.map(|hs| hs.iter().map(|h| h.iter().map(|i| coordinate_name(*i)).collect()).collect()),
            symbolic,
            sampled: samples,
            locus_failures,
            off_locus_zeros,
            semistable_critical,
            violations,
            status,
        });
    }
    let sigma2 = sigma2_check(f, samples, &mut rng);
    let status = if strata.iter().any(|s| s.status == Status::Fail) || sigma2.status == Status::Fail {
        Status::Fail
    } else if strata.iter().all(|s| s.status == Status::Pass) && sigma2.status == Status::Pass {
        Status::Pass
    } else {
        Status::Inconclusive
    };
    let cubic = if f.is_fermat() { "fermat".to_string() } else { f.to_json() };
    CriticalReport { cubic, seed, strata, sigma2, status }
}

pub const SIGMA2_SAMPLES: usize = 1000;

/// Random positive-semistable points with `ψ ∈ Σ₂`: the gradient of `W` must
/// not vanish. `ψ = (t₁²t₂)∘g` for random `g`; `Φ` is biased towards the
/// boundary by zeroing entries and by placing one row on a line.
pub fn sigma2_check<R: Rng>(f: &Cubic6, samples: usize, rng: &mut R) -> Sigma2Report {
    let mut attempts = 0;
    let mut accepted = 0;
    let mut vanishing = 0;
    while accepted < samples && attempts < 50 * samples {
        attempts += 1;
        let psi = BinaryCubic::t1_sq_t2().pullback(&random_gl2(rng));
        let mut phi = [random_row(rng), random_row(rng)];
        match rng.gen_range(0..4) {
            0 => phi[0] = Default::default(),
            1 => phi[1] = Default::default(),
            2 => {
                let k = q(rng.gen_range(-2..=2));
                phi[1] = std::array::from_fn(|j| &k * &phi[0][j]);
            }
            _ => {}
        }
        for r in phi.iter_mut().flatten() {
            if rng.gen_bool(0.3) {
                *r = Q::zero();
            }
        }
        let p = PointV::new(phi, psi);
        if !semistable(&p, Side::Plus) {
            continue;
        }
        accepted += 1;
        if grad_w(f, &p).is_zero() {
            vanishing += 1;
        }
    }
    let status = if vanishing > 0 {
        Status::Fail
    } else if accepted < samples {
        Status::Inconclusive
    } else {
        Status::Pass
    };
    Sigma2Report { samples: accepted, attempts, vanishing, status }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rowq(v: [i64; 6]) -> [Q; 6] {
        v.map(q)
    }

    fn point(a: [i64; 6], b: [i64; 6], psi: BinaryCubic) -> PointV {
        PointV::new([rowq(a), rowq(b)], psi)
    }

    fn generic_cubic() -> Cubic6 {
        let mut t = BTreeMap::new();
        t.insert([3, 0, 0, 0, 0, 0], q(1));
        t.insert([1, 1, 1, 0, 0, 0], q(2));
        t.insert([0, 2, 0, 0, 1, 0], q(-3));
        t.insert([0, 0, 0, 1, 1, 1], qf(1, 2));
        t.insert([0, 0, 0, 0, 0, 3], q(5));
        Cubic6::new(t).unwrap()
    }

    use crate::rational::qf;

    #[test]
    fn stratum_formulas_fermat() {
        let f = Cubic6::fermat();
        let a = [1, -2, 3, 0, 1, 2];
        let b = [2, 1, -1, 1, 0, -3];
        let (ra, rb) = (rowq(a), rowq(b));
        assert_eq!(eval_w(&f, &point(a, b, BinaryCubic::t1_cubed())), f.eval(&ra));
        assert_eq!(eval_w(&f, &point(a, b, BinaryCubic::fermat())), f.eval(&ra) + f.eval(&rb));
        assert_eq!(eval_w(&f, &point(a, b, BinaryCubic::t1_sq_t2())), f.hat(&ra, &ra, &rb));
        assert_eq!(eval_w(&f, &point(a, b, BinaryCubic::zero())), Q::zero());
        // Fermat: f̂(a,a,b) = Σ aᵢ² bᵢ
        let direct: Q = (0..6).map(|i| q(a[i] * a[i] * b[i])).sum();
        assert_eq!(f.hat(&ra, &ra, &rb), direct);
    }

    #[test]
    fn phi_gradient_formulas() {
        let f = generic_cubic();
        let a = rowq([1, 2, -1, 0, 3, 1]);
        let b = rowq([0, 1, 1, -2, 1, 1]);
        // ψ = t₁³: ∂_{Φ₁ᵢ}W = ∂ᵢf(Φ₁•), ∂_{Φ₂}W = 0
        let g = grad_w(&f, &PointV::new([a.clone(), b.clone()], BinaryCubic::t1_cubed()));
        for i in 0..6 {
            assert_eq!(g.phi[0][i], f.partial(i, &a));
            assert!(g.phi[1][i].is_zero());
        }
        // ψ = t₁²t₂: ∂_{Φ₂ᵢ}W = f̂(Φ₁,Φ₁,eᵢ) = ∂ᵢf(Φ₁•)/3
        let g = grad_w(&f, &PointV::new([a.clone(), b.clone()], BinaryCubic::t1_sq_t2()));
        for i in 0..6 {
            assert_eq!(&g.phi[1][i] * q(3), f.partial(i, &a));
        }
    }

    #[test]
    fn gradient_vanishes_at_zero_phi() {
        let f = generic_cubic();
        for psi in [BinaryCubic::fermat(), BinaryCubic::from_ints([1, -2, 3, 7])] {
            assert!(grad_w(&f, &PointV::new(Default::default(), psi)).is_zero());
        }
    }

    #[test]
    fn finite_differences() {
        for f in [Cubic6::fermat(), generic_cubic()] {
            let r = finite_difference_check(&f, 100, 0);
            assert!(r.passes, "{r:?}");
        }
    }

    #[test]
    fn invariance_under_group() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for f in [Cubic6::fermat(), generic_cubic()] {
            for _ in 0..100 {
                let p = PointV::new(
                    [std::array::from_fn(|_| random_q(&mut rng, 3)), std::array::from_fn(|_| random_q(&mut rng, 3))],
                    BinaryCubic { coeffs: std::array::from_fn(|_| random_q(&mut rng, 3)) },
                );
                let g = random_gl2(&mut rng);
                assert_eq!(eval_w(&f, &p.act(&g).unwrap()), eval_w(&f, &p));
            }
        }
    }

    #[test]
    fn symbolic_loci_fermat() {
        let r = critical_stratum_check(&Cubic6::fermat(), SIGMA2_SAMPLES, 0);
        assert_eq!(r.status, Status::Pass, "{r:#?}");
        for s in &r.strata {
            assert_eq!(s.symbolic, Status::Pass);
        }
        // ψ = t₁³ + t₂³ is the only stratum with semistable critical points, all at Φ = 0
        assert!(r.strata[3].semistable_critical > 0);
        assert!(r.strata[..3].iter().all(|s| s.semistable_critical == 0));
        assert_eq!(r.sigma2.samples, SIGMA2_SAMPLES);
        assert_eq!(r.sigma2.vanishing, 0);
    }

    #[test]
    fn user_cubic_is_sampling_only() {
        let r = critical_stratum_check(&generic_cubic(), 10, 1);
        assert!(r.strata.iter().skip(1).any(|s| s.symbolic == Status::Inconclusive));
        assert!(r.strata.iter().all(|s| s.violations == 0));
    }

    #[test]
    fn hitting_sets() {
        let s = |v: &[usize]| v.iter().copied().collect::<BTreeSet<usize>>();
        let hs = minimal_hitting_sets(&[s(&[0, 1]), s(&[1, 2])], 3);
        assert_eq!(hs, vec![s(&[1]), s(&[0, 2])]);
        assert_eq!(minimal_hitting_sets(&[], 3), vec![s(&[])]);
    }

    #[test]
    fn json_roundtrip() {
        let f = generic_cubic();
        assert_eq!(Cubic6::from_json(&f.to_json()).unwrap(), f);
        assert!(Cubic6::from_json(r#"{"terms":[["1",[1,1,0,0,0,0]]]}"#).is_err());
    }

    fn arb_row() -> impl Strategy<Value = [Q; 6]> {
        proptest::array::uniform6(-4i64..=4).prop_map(|r| r.map(q))
    }

    fn arb_psi() -> impl Strategy<Value = BinaryCubic> {
        proptest::array::uniform4(-4i64..=4).prop_map(BinaryCubic::from_ints)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn hat_symmetric_and_polar(x in arb_row(), y in arb_row(), z in arb_row(), i in 0usize..6) {
            let f = generic_cubic();
            let v = f.hat(&x, &y, &z);
            prop_assert_eq!(&v, &f.hat(&y, &x, &z));
            prop_assert_eq!(&v, &f.hat(&z, &y, &x));
            prop_assert_eq!(&v, &f.hat(&x, &z, &y));
            prop_assert_eq!(f.hat(&x, &x, &x), f.eval(&x));
            prop_assert_eq!(f.hat(&x, &x, &unit(i)) * q(3), f.partial(i, &x));
        }

        #[test]
        fn linear_in_psi(a in arb_row(), b in arb_row(), p1 in arb_psi(), p2 in arb_psi(), k in -3i64..=3) {
            let f = generic_cubic();
            let sum = BinaryCubic { coeffs: std::array::from_fn(|i| &p1.coeffs[i] + q(k) * &p2.coeffs[i]) };
            let w = |psi: BinaryCubic| eval_w(&f, &PointV::new([a.clone(), b.clone()], psi));
            prop_assert_eq!(w(sum), w(p1) + q(k) * w(p2));
        }

        #[test]
        fn psi_gradient_is_pullback(a in arb_row(), b in arb_row(), psi in arb_psi()) {
            for f in [Cubic6::fermat(), generic_cubic()] {
                let g = grad_w(&f, &PointV::new([a.clone(), b.clone()], psi.clone()));
                let pb = f.pullback(&a, &b);
                for k in 0..4 {
                    prop_assert_eq!(&g.psi[k] * q(binom(3, k as i64)), pb.coeffs[k].clone());
                }
                prop_assert_eq!(g.psi.iter().all(Zero::is_zero), pb.is_zero());
            }
        }
    }
}
