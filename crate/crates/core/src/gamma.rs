//! The order-18 group `Γ = (ℤ₃×ℤ₃)⋊ℤ₂ ⊂ GL₂`, the stabilizer of `t₁³+t₂³`.
//!
//! Elements are monomial matrices `Sˢ·diag(ωⁱ, ωʲ)` with `S` the coordinate
//! swap. All character values live in `ℤ[ω]`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::cubic::{pullback_coeffs, Mat2};
use crate::weights::Weight;
use crate::Result;

pub const ORDER: i64 = 18;

/// `x + y·ω` with `ω² = −1 − ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Eisenstein {
    pub x: i64,
    pub y: i64,
}

impl Eisenstein {
    pub const fn new(x: i64, y: i64) -> Self {
        Eisenstein { x, y }
    }

    pub const fn int(x: i64) -> Self {
        Eisenstein { x, y: 0 }
    }

    pub fn omega_pow(k: i64) -> Self {
        match k.rem_euclid(3) {
            0 => Self::new(1, 0),
            1 => Self::new(0, 1),
            _ => Self::new(-1, -1),
        }
    }

    /// Complex conjugation, `ω ↦ ω²`.
    pub fn conj(self) -> Self {
        Self::new(self.x - self.y, -self.y)
    }

    pub fn norm(self) -> i64 {
        self.x * self.x - self.x * self.y + self.y * self.y
    }

    /// Exact division by an integer, if it divides both coordinates.
    pub fn div_int(self, d: i64) -> Option<Self> {
        (self.x % d == 0 && self.y % d == 0).then(|| Self::new(self.x / d, self.y / d))
    }

    pub fn as_int(self) -> Option<i64> {
        (self.y == 0).then_some(self.x)
    }
}

impl fmt::Display for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.x, self.y) {
            (x, 0) => write!(f, "{x}"),
            (0, y) => write!(f, "{y}w"),
            (x, y) if y < 0 => write!(f, "{x}{y}w"),
            (x, y) => write!(f, "{x}+{y}w"),
        }
    }
}

impl Serialize for Eisenstein {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.x, self.y].serialize(s)
    }
}

impl Add for Eisenstein {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Eisenstein {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Eisenstein {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

impl Mul for Eisenstein {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let bd = self.y * o.y;
        Self::new(self.x * o.x - bd, self.x * o.y + self.y * o.x - bd)
    }
}

impl Zero for Eisenstein {
    fn zero() -> Self {
        Self::int(0)
    }
    fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }
}

impl One for Eisenstein {
    fn one() -> Self {
        Self::int(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GammaElement {
    pub swap: bool,
    pub i: u8,
    pub j: u8,
}

impl fmt::Display for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.swap {
            write!(f, "S·d({},{})", self.i, self.j)
        } else {
            write!(f, "d({},{})", self.i, self.j)
        }
    }
}

impl GammaElement {
    pub fn new(swap: bool, i: i64, j: i64) -> Self {
        GammaElement { swap, i: i.rem_euclid(3) as u8, j: j.rem_euclid(3) as u8 }
    }

    pub fn identity() -> Self {
        Self::new(false, 0, 0)
    }

    /// `diag(ωⁱ,ωʲ)·S = S·diag(ωʲ,ωⁱ)`.
    pub fn compose(&self, o: &Self) -> Self {
        let (i, j) = if o.swap { (self.j, self.i) } else { (self.i, self.j) };
        Self::new(self.swap ^ o.swap, (i + o.i) as i64, (j + o.j) as i64)
    }

    pub fn inverse(&self) -> Self {
        if self.swap {
            // (S d(i,j))⁻¹ = d(−i,−j) S = S d(−j,−i)
            Self::new(true, -(self.j as i64), -(self.i as i64))
        } else {
            Self::new(false, -(self.i as i64), -(self.j as i64))
        }
    }

    pub fn matrix(&self) -> Mat2<Eisenstein> {
        let (a, b) = (Eisenstein::omega_pow(self.i as i64), Eisenstein::omega_pow(self.j as i64));
        let z = Eisenstein::zero();
        if self.swap {
            [[z, b], [a, z]]
        } else {
            [[a, z], [z, b]]
        }
    }

    pub fn det(&self) -> Eisenstein {
        let m = self.matrix();
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// `g` acts on the (co)ordinates of a cubic by pullback; `true` iff it
    /// fixes `t₁³+t₂³`.
    pub fn fixes_fermat_cubic(&self) -> bool {
        let one = Eisenstein::one();
        let z = Eisenstein::zero();
        let f = [one, z, z, one];
        pullback_coeffs(&f, &self.matrix()) == f
    }

    /// Trace on `𝒯_χ = Sym^{a−b}T ⊗ det^b`, through the monomial action on
    /// the basis `e₁ᵏe₂ⁿ⁻ᵏ`.
    pub fn trace_on(&self, chi: &Weight) -> Result<Eisenstein> {
        chi.check_dominant()?;
        let n = chi.a - chi.b;
        let (i, j) = (self.i as i64, self.j as i64);
        let sym = if self.swap {
            // e₁ ↦ ωⁱe₂, e₂ ↦ ωʲe₁: only e₁ᵏe₂ᵏ with n = 2k is fixed
            if n % 2 == 0 {
                Eisenstein::omega_pow((i + j) * (n / 2))
            } else {
                Eisenstein::zero()
            }
        } else {
            (0..=n).fold(Eisenstein::zero(), |acc, k| acc + Eisenstein::omega_pow(i * k + j * (n - k)))
        };
        // det is ±ω^{i+j}; its b-th power for any integer b
        let sign = if self.swap && chi.b.rem_euclid(2) == 1 { -1 } else { 1 };
        let det_b = Eisenstein::omega_pow((i + j) * chi.b) * Eisenstein::int(sign);
        Ok(sym * det_b)
    }
}

pub fn build_group() -> Vec<GammaElement> {
    let mut out = Vec::with_capacity(ORDER as usize);
    for swap in [false, true] {
        for i in 0..3 {
            for j in 0..3 {
                out.push(GammaElement::new(swap, i, j));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    pub representative: GammaElement,
    pub size: i64,
    pub members: Vec<GammaElement>,
}

pub fn conjugacy_classes() -> Vec<ConjugacyClass> {
    let g = build_group();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for x in &g {
        if seen.contains(x) {
            continue;
        }
        let members: BTreeSet<GammaElement> =
            g.iter().map(|h| h.compose(x).compose(&h.inverse())).collect();
        seen.extend(members.iter().copied());
        out.push(ConjugacyClass {
            representative: *members.iter().next().expect("nonempty"),
            size: members.len() as i64,
            members: members.into_iter().collect(),
        });
    }
    out
}

/// Subgroup generated by all commutators `xyx⁻¹y⁻¹`.
pub fn commutator_subgroup() -> BTreeSet<GammaElement> {
    let g = build_group();
    let mut sub: BTreeSet<GammaElement> = BTreeSet::from([GammaElement::identity()]);
    let comms: Vec<GammaElement> = g
        .iter()
        .flat_map(|x| g.iter().map(move |y| x.compose(y).compose(&x.inverse()).compose(&y.inverse())))
        .collect();
    loop {
        let next: BTreeSet<GammaElement> =
            sub.iter().flat_map(|a| comms.iter().map(move |c| a.compose(c))).chain(sub.iter().copied()).collect();
        if next.len() == sub.len() {
            return sub;
        }
        sub = next;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaIrrep {
    pub label: String,
    pub dim: i64,
    /// Values on the classes, in table order.
    pub values: Vec<Eisenstein>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaCharTable {
    pub classes: Vec<ConjugacyClass>,
    pub irreps: Vec<GammaIrrep>,
}

/// Linear character `ω^{p(i+j)}·(−1)^{q·s}`, factoring through the ℤ₆ quotient.
fn linear_value(p: i64, q: i64, g: &GammaElement) -> Eisenstein {
    let sign = if q == 1 && g.swap { -1 } else { 1 };
    Eisenstein::omega_pow(p * (g.i as i64 + g.j as i64)) * Eisenstein::int(sign)
}

/// Induced from the ℤ₃²-character `(i,j) ↦ ω^{ai+bj}`.
fn induced_value(a: i64, b: i64, g: &GammaElement) -> Eisenstein {
    if g.swap {
        return Eisenstein::zero();
    }
    let (i, j) = (g.i as i64, g.j as i64);
    Eisenstein::omega_pow(a * i + b * j) + Eisenstein::omega_pow(b * i + a * j)
}

pub fn character_table() -> GammaCharTable {
    let classes = conjugacy_classes();
    let mut irreps = Vec::new();
    for q in 0..2 {
        for p in 0..3 {
            irreps.push(GammaIrrep {
                label: format!("L{p}{q}"),
                dim: 1,
                values: classes.iter().map(|c| linear_value(p, q, &c.representative)).collect(),
            });
        }
    }
    for (a, b) in [(1, 0), (2, 0), (1, 2)] {
        irreps.push(GammaIrrep {
            label: format!("R{a}{b}"),
            dim: 2,
            values: classes.iter().map(|c| induced_value(a, b, &c.representative)).collect(),
        });
    }
    GammaCharTable { classes, irreps }
}

impl GammaCharTable {
    /// `⟨χ, ψ⟩ = (1/18) Σ_g χ(g)·conj ψ(g)`; `None` if not an integer.
    pub fn inner(&self, chi: &[Eisenstein], psi: &[Eisenstein]) -> Option<i64> {
        let s = self
            .classes
            .iter()
            .zip(chi.iter().zip(psi))
            .fold(Eisenstein::zero(), |acc, (c, (x, y))| acc + Eisenstein::int(c.size) * *x * y.conj());
        s.div_int(ORDER)?.as_int()
    }

    pub fn gram_matrix(&self) -> Vec<Vec<Option<i64>>> {
        self.irreps
            .iter()
            .map(|r| self.irreps.iter().map(|s| self.inner(&r.values, &s.values)).collect())
            .collect()
    }

    pub fn rows_orthonormal(&self) -> bool {
        self.gram_matrix()
            .iter()
            .enumerate()
            .all(|(r, row)| row.iter().enumerate().all(|(s, v)| *v == Some((r == s) as i64)))
    }

    /// `Σ_χ χ(c)·conj χ(d) = δ_{cd}·18/|c|`.
    pub fn columns_orthogonal(&self) -> bool {
        let n = self.classes.len();
        (0..n).all(|c| {
            (0..n).all(|d| {
                let s = self
                    .irreps
                    .iter()
                    .fold(Eisenstein::zero(), |acc, r| acc + r.values[c] * r.values[d].conj());
                let want = if c == d { ORDER / self.classes[c].size } else { 0 };
                s == Eisenstein::int(want)
            })
        })
    }

    pub fn class_function_of(&self, f: impl Fn(&GammaElement) -> Eisenstein) -> Vec<Eisenstein> {
        self.classes.iter().map(|c| f(&c.representative)).collect()
    }

    /// Multiplicities of each irrep in a class function; `None` if some
    /// multiplicity is not an integer.
    pub fn decompose(&self, values: &[Eisenstein]) -> Option<BTreeMap<String, i64>> {
        let mut out = BTreeMap::new();
        for r in &self.irreps {
            let m = self.inner(values, &r.values)?;
            if m != 0 {
                out.insert(r.label.clone(), m);
            }
        }
        Some(out)
    }

    /// Restriction of the GL₂ irreducible `𝒯_χ` to Γ.
    pub fn restrict_gl2(&self, chi: &Weight) -> Result<BTreeMap<String, i64>> {
        chi.check_dominant()?;
        let values = self.class_function_of(|g| g.trace_on(chi).expect("dominant"));
        Ok(self.decompose(&values).expect("a genuine representation has integral multiplicities"))
    }

    pub fn irrep(&self, label: &str) -> Option<&GammaIrrep> {
        self.irreps.iter().find(|r| r.label == label)
    }

    pub fn dim_of(&self, decomp: &BTreeMap<String, i64>) -> i64 {
        decomp.iter().map(|(l, m)| self.irrep(l).map_or(0, |r| r.dim) * m).sum()
    }

    /// Order of a linear character in the character group.
    pub fn linear_order(&self, label: &str) -> Option<usize> {
        let r = self.irrep(label)?;
        if r.dim != 1 {
            return None;
        }
        let mut acc: Vec<Eisenstein> = r.values.clone();
        for k in 1..=ORDER as usize {
            if acc.iter().all(|v| *v == Eisenstein::one()) {
                return Some(k);
            }
            acc = acc.iter().zip(&r.values).map(|(a, b)| *a * *b).collect();
        }
        None
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("irrep,dim");
        for c in &self.classes {
            out.push_str(&format!(",{}[{}]", c.representative, c.size));
        }
        out.push('\n');
        for r in &self.irreps {
            out.push_str(&format!("{},{}", r.label, r.dim));
            for v in &r.values {
                out.push_str(&format!(",{v}"));
            }
            out.push('\n');
        }
        out
    }
}
