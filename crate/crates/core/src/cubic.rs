//! Binary cubic forms `ψ = c30·t₁³ + c21·t₁²t₂ + c12·t₁t₂² + c03·t₂³`.
//!
//! Root structure is decided by gcd/multiplicity arithmetic over ℚ, never by
//! numerical root finding.

use std::fmt;
use std::ops::{Add, Mul};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{q, Q};
use crate::{Error, Result};

/// Root strata `{0} = Σ₀ ⊂ Σ₁ ⊂ Σ₂ ⊂ Σ₃`, labelled by the smallest `Σᵢ`
/// containing the form (`i` = number of distinct roots over ℂ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Stratum {
    Sigma0,
    Sigma1,
    Sigma2,
    Sigma3,
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = match self {
            Stratum::Sigma0 => 0,
            Stratum::Sigma1 => 1,
            Stratum::Sigma2 => 2,
            Stratum::Sigma3 => 3,
        };
        write!(f, "Σ{i}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[String; 4]", into = "[String; 4]")]
pub struct BinaryCubic {
    /// `[c30, c21, c12, c03]`.
    pub coeffs: [Q; 4],
}

impl TryFrom<[String; 4]> for BinaryCubic {
    type Error = Error;
    fn try_from(v: [String; 4]) -> Result<Self> {
        let [a, b, c, d] = v;
        Ok(BinaryCubic {
            coeffs: [
                crate::rational::parse_q(&a)?,
                crate::rational::parse_q(&b)?,
                crate::rational::parse_q(&c)?,
                crate::rational::parse_q(&d)?,
            ],
        })
    }
}

impl From<BinaryCubic> for [String; 4] {
    fn from(c: BinaryCubic) -> Self {
        c.coeffs.map(|x| crate::rational::format_q(&x))
    }
}

impl fmt::Display for BinaryCubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: [String; 4] = self.clone().into();
        write!(f, "[{}, {}, {}, {}]", s[0], s[1], s[2], s[3])
    }
}

/// A point `[u:v]` of `P(T)`; compared up to scale.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProjectivePoint {
    #[serde(with = "crate::rational::as_string")]
    pub u: Q,
    #[serde(with = "crate::rational::as_string")]
    pub v: Q,
}

impl ProjectivePoint {
    pub fn new(u: Q, v: Q) -> Result<Self> {
        if u.is_zero() && v.is_zero() {
            return Err(Error::Parse("projective point [0:0]".into()));
        }
        Ok(ProjectivePoint { u, v })
    }

    pub fn from_ints(u: i64, v: i64) -> Result<Self> {
        Self::new(q(u), q(v))
    }

    /// Whether the vector `(x, y)` lies on this line.
    pub fn contains(&self, x: &Q, y: &Q) -> bool {
        (&self.u * y - &self.v * x).is_zero()
    }
}

impl PartialEq for ProjectivePoint {
    fn eq(&self, other: &Self) -> bool {
        (&self.u * &other.v - &self.v * &other.u).is_zero()
    }
}

/// 2×2 matrix `[[g11, g12], [g21, g22]]` acting on `(t₁, t₂)` as a column.
pub type Mat2<T> = [[T; 2]; 2];

/// Coefficients of `ψ∘g`, i.e. `ψ(g11·t₁ + g12·t₂, g21·t₁ + g22·t₂)`, over any
/// commutative ring.
pub fn pullback_coeffs<T>(c: &[T; 4], g: &Mat2<T>) -> [T; 4]
where
    T: Clone + Zero + One + Add<Output = T> + Mul<Output = T>,
{
    let l1 = vec![g[0][0].clone(), g[0][1].clone()];
    let l2 = vec![g[1][0].clone(), g[1][1].clone()];
    let mut out = [T::zero(), T::zero(), T::zero(), T::zero()];
    for (i, ci) in c.iter().enumerate() {
        // c_i · l1^{3-i} · l2^i
        let mut form = vec![T::one()];
        for _ in 0..(3 - i) {
            form = form_mul(&form, &l1);
        }
        for _ in 0..i {
            form = form_mul(&form, &l2);
        }
        for (k, fk) in form.into_iter().enumerate() {
            out[k] = out[k].clone() + ci.clone() * fk;
        }
    }
    out
}

fn form_mul<T>(x: &[T], y: &[T]) -> Vec<T>
where
    T: Clone + Zero + Add<Output = T> + Mul<Output = T>,
{
    let mut out = vec![T::zero(); x.len() + y.len() - 1];
    for (i, xi) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            out[i + j] = out[i + j].clone() + xi.clone() * yj.clone();
        }
    }
    out
}

pub fn det2(g: &Mat2<Q>) -> Q {
    &g[0][0] * &g[1][1] - &g[0][1] * &g[1][0]
}

pub fn inv2(g: &Mat2<Q>) -> Option<Mat2<Q>> {
    let d = det2(g);
    if d.is_zero() {
        return None;
    }
    Some([
        [&g[1][1] / &d, -&g[0][1] / &d],
        [-&g[1][0] / &d, &g[0][0] / &d],
    ])
}

/// A random invertible rational 2×2 matrix with small entries.
pub fn random_gl2<R: rand::Rng>(rng: &mut R) -> Mat2<Q> {
    loop {
        let g = [
            [crate::rational::random_q(rng, 5), crate::rational::random_q(rng, 5)],
            [crate::rational::random_q(rng, 5), crate::rational::random_q(rng, 5)],
        ];
        if !det2(&g).is_zero() {
            return g;
        }
    }
}

impl BinaryCubic {
    pub fn new(c30: Q, c21: Q, c12: Q, c03: Q) -> Self {
        BinaryCubic { coeffs: [c30, c21, c12, c03] }
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        BinaryCubic { coeffs: c.map(q) }
    }

    pub fn zero() -> Self {
        Self::from_ints([0, 0, 0, 0])
    }

    /// `t₁³`
    pub fn t1_cubed() -> Self {
        Self::from_ints([1, 0, 0, 0])
    }

    /// `t₁²t₂`
    pub fn t1_sq_t2() -> Self {
        Self::from_ints([0, 1, 0, 0])
    }

    /// `t₁³ + t₂³`
    pub fn fermat() -> Self {
        Self::from_ints([1, 0, 0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `ψ∘g`.
    pub fn pullback(&self, g: &Mat2<Q>) -> Self {
        BinaryCubic { coeffs: pullback_coeffs(&self.coeffs, g) }
    }

    pub fn eval(&self, t1: &Q, t2: &Q) -> Q {
        let [a, b, c, d] = &self.coeffs;
        a * t1 * t1 * t1 + b * t1 * t1 * t2 + c * t1 * t2 * t2 + d * t2 * t2 * t2
    }

    /// `18abcd − 4b³d + b²c² − 4ac³ − 27a²d²`.
    pub fn discriminant(&self) -> Q {
        let [a, b, c, d] = &self.coeffs;
        q(18) * a * b * c * d - q(4) * b * b * b * d + b * b * c * c - q(4) * a * c * c * c
            - q(27) * a * a * d * d
    }

    /// Dehomogenization `f(x) = ψ(x, 1)`, coefficients in ascending degree.
    fn dehomogenize(&self) -> UniPoly {
        let [a, b, c, d] = self.coeffs.clone();
        UniPoly::new(vec![d, c, b, a])
    }

    /// Degree of `gcd(ψ, ∂ψ/∂t₁, ∂ψ/∂t₂)` as a binary form; `None` for ψ = 0.
    pub fn singular_gcd_degree(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let f = self.dehomogenize();
        let deg = f.degree().expect("nonzero");
        // A root at infinity of multiplicity m contributes t₂^{m-1} to the gcd.
        let m_inf = 3 - deg;
        let g = UniPoly::gcd(&f, &f.derivative());
        let finite = g.degree().unwrap_or(0);
        Some(finite + m_inf.saturating_sub(1))
    }

    pub fn stratum(&self) -> Stratum {
        match self.singular_gcd_degree() {
            None => Stratum::Sigma0,
            Some(2) => Stratum::Sigma1,
            Some(1) => Stratum::Sigma2,
            Some(0) => Stratum::Sigma3,
            Some(d) => unreachable!("gcd degree {d} of a binary cubic"),
        }
    }

    /// Multiplicity of the linear factor vanishing at `p`.
    pub fn root_multiplicity(&self, p: &ProjectivePoint) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroCubic);
        }
        let f = self.dehomogenize();
        if p.v.is_zero() {
            return Ok(3 - f.degree().expect("nonzero"));
        }
        let x0 = &p.u / &p.v;
        let mut g = f;
        let mut m = 0;
        loop {
            let (quot, rem) = g.divide_linear(&x0);
            if !rem.is_zero() {
                return Ok(m);
            }
            m += 1;
            g = quot;
        }
    }

    /// A rational point at which ψ has a root of multiplicity ≥ 2, if any.
    pub fn double_root(&self) -> Option<ProjectivePoint> {
        if self.stratum() != Stratum::Sigma2 && self.stratum() != Stratum::Sigma1 {
            return None;
        }
        let f = self.dehomogenize();
        let deg = f.degree().expect("nonzero");
        if deg <= 1 {
            return ProjectivePoint::from_ints(1, 0).ok();
        }
        let g = UniPoly::gcd(&f, &f.derivative());
        match g.degree() {
            Some(d) if d >= 1 => {
                // Over ℚ the repeated factor of a cubic is rational: gcd is
                // (x − r) or (x − r)².
                let c = &g.coeffs;
                let r = if d == 1 { -&c[0] / &c[1] } else { -&c[1] / (q(2) * &c[2]) };
                ProjectivePoint::new(r, q(1)).ok()
            }
            _ => ProjectivePoint::from_ints(1, 0).ok(),
        }
    }
}

/// Dense univariate polynomial over ℚ, ascending coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq)]
struct UniPoly {
    coeffs: Vec<Q>,
}

impl UniPoly {
    fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn derivative(&self) -> Self {
        UniPoly::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * q(i as i64)).collect(),
        )
    }

    fn rem(&self, d: &UniPoly) -> UniPoly {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.coeffs[dd].clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1;
            let f = &r[k] / &lead;
            for i in 0..=dd {
                let t = &f * &d.coeffs[i];
                r[k - dd + i] -= t;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        UniPoly::new(r)
    }

    fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.rem(&y);
            x = y;
            y = r;
        }
        x
    }

    /// Synthetic division by `(x − x0)`.
    fn divide_linear(&self, x0: &Q) -> (UniPoly, Q) {
        if self.is_zero() {
            return (self.clone(), Q::zero());
        }
        let n = self.coeffs.len();
        let mut quot = vec![Q::zero(); n - 1];
        let mut acc = Q::zero();
        for i in (0..n).rev() {
            acc = &acc * x0 + &self.coeffs[i];
            if i > 0 {
                quot[i - 1] = acc.clone();
            }
        }
        (UniPoly::new(quot), acc)
    }
}
