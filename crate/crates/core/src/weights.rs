//! The GL₂ weight lattice.
//!
//! A [`Weight`] `(a,b)` is the highest weight of the irreducible
//! representation `𝒯_(a,b) = Sym^{a−b} T ⊗ (det T)^b`; it is dominant when
//! `a >= b`. A [`OnePs`] `(w1,w2)` is the cocharacter `t ↦ diag(t^w1, t^w2)`
//! of the diagonal torus.
//!
//! Weights are stored as `i64`. Every computation in this crate stays inside
//! a box of side well under `10³`, so overflow is not a concern in practice.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Weight {
    pub a: i64,
    pub b: i64,
}

impl From<[i64; 2]> for Weight {
    fn from([a, b]: [i64; 2]) -> Self {
        Weight { a, b }
    }
}

impl From<Weight> for [i64; 2] {
    fn from(w: Weight) -> Self {
        [w.a, w.b]
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Accepts `a,b` or `(a,b)`.
impl std::str::FromStr for Weight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected a,b got {s:?}"));
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = t.split_once(',').ok_or_else(bad)?;
        Ok(Weight::new(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
    }
}

impl Weight {
    pub const fn new(a: i64, b: i64) -> Self {
        Weight { a, b }
    }

    /// `(det T)^k`.
    pub const fn det_power(k: i64) -> Self {
        Weight { a: k, b: k }
    }

    /// The weight of `Sym^c T ⊗ (det T)^b`.
    pub const fn from_sym_det(c: i64, b: i64) -> Self {
        Weight { a: b + c, b }
    }

    pub fn is_dominant(&self) -> bool {
        self.a >= self.b
    }

    pub fn check_dominant(&self) -> Result<()> {
        if self.is_dominant() {
            Ok(())
        } else {
            Err(Error::NotDominant(self.a, self.b))
        }
    }

    /// Dimension of the irreducible with this highest weight.
    pub fn dim(&self) -> i64 {
        self.a - self.b + 1
    }

    /// Highest weight of the dual representation.
    pub fn dual(&self) -> Self {
        Weight { a: -self.b, b: -self.a }
    }

    /// The image under the Weyl group swap.
    pub fn weyl_partner(&self) -> Self {
        Weight { a: self.b, b: self.a }
    }

    /// Tensor with `(det T)^k`.
    pub fn twist(&self, k: i64) -> Self {
        Weight { a: self.a + k, b: self.b + k }
    }

    /// All torus weights of the irreducible, from highest to lowest.
    pub fn weight_multiset(&self) -> Result<Vec<(i64, i64)>> {
        self.check_dominant()?;
        Ok((0..=self.a - self.b).map(|i| (self.a - i, self.b + i)).collect())
    }

    pub fn add(&self, other: &Weight) -> Self {
        Weight { a: self.a + other.a, b: self.b + other.b }
    }

    /// Largest absolute coordinate, used for box bounds.
    pub fn norm_inf(&self) -> i64 {
        self.a.abs().max(self.b.abs())
    }
}

/// A one-parameter subgroup `t ↦ diag(t^w1, t^w2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct OnePs {
    pub w1: i64,
    pub w2: i64,
}

impl From<[i64; 2]> for OnePs {
    fn from([w1, w2]: [i64; 2]) -> Self {
        OnePs { w1, w2 }
    }
}

impl From<OnePs> for [i64; 2] {
    fn from(l: OnePs) -> Self {
        [l.w1, l.w2]
    }
}

impl fmt::Display for OnePs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.w1, self.w2)
    }
}

impl OnePs {
    /// The centre, `t·id`.
    pub const LAMBDA0: OnePs = OnePs { w1: 1, w2: 1 };
    pub const LAMBDA1: OnePs = OnePs { w1: 0, w2: 1 };
    pub const LAMBDA2: OnePs = OnePs { w1: -1, w2: 2 };

    pub const fn new(w1: i64, w2: i64) -> Self {
        OnePs { w1, w2 }
    }

    pub fn neg(&self) -> Self {
        OnePs { w1: -self.w1, w2: -self.w2 }
    }

    /// `⟨λ, χ⟩ = w1·a + w2·b`.
    pub fn pair(&self, chi: &Weight) -> i64 {
        self.w1 * chi.a + self.w2 * chi.b
    }

    /// Pairing against a raw torus weight.
    pub fn pair_raw(&self, (m, n): (i64, i64)) -> i64 {
        self.w1 * m + self.w2 * n
    }
}

/// Free function form of [`OnePs::pair`].
pub fn pair(lambda: &OnePs, chi: &Weight) -> i64 {
    lambda.pair(chi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pairing_examples() {
        assert_eq!(pair(&OnePs::LAMBDA2, &Weight::new(2, -2)), -6);
        assert_eq!(pair(&OnePs::LAMBDA1, &Weight::new(7, -3)), -3);
        assert_eq!(pair(&OnePs::LAMBDA0, &Weight::new(2, -2)), 0);
    }

    #[test]
    fn weyl_partner_examples() {
        assert_eq!(Weight::new(2, -2).weyl_partner(), Weight::new(-2, 2));
        assert_eq!(Weight::new(4, 4).weyl_partner(), Weight::new(4, 4));
        assert_eq!(Weight::new(5, 3).weyl_partner(), Weight::new(3, 5));
    }

    #[test]
    fn weight_multiset_examples() {
        assert_eq!(Weight::new(1, 0).weight_multiset().unwrap(), vec![(1, 0), (0, 1)]);
        assert_eq!(Weight::new(-3, -3).weight_multiset().unwrap(), vec![(-3, -3)]);
        assert_eq!(
            Weight::new(3, 0).weight_multiset().unwrap(),
            vec![(3, 0), (2, 1), (1, 2), (0, 3)]
        );
        assert_eq!(Weight::new(0, 1).weight_multiset(), Err(Error::NotDominant(0, 1)));
    }

    #[test]
    fn sym_det_conversion() {
        assert_eq!(Weight::from_sym_det(4, -2), Weight::new(2, -2));
        assert_eq!(Weight::new(2, -2).dual(), Weight::new(2, -2));
        assert_eq!(Weight::new(5, 3).dual(), Weight::new(-3, -5));
    }

    #[test]
    fn json_form() {
        let w: Weight = serde_json::from_str("[2,-2]").unwrap();
        assert_eq!(w, Weight::new(2, -2));
        assert_eq!(serde_json::to_string(&w).unwrap(), "[2,-2]");
    }

    proptest! {
        #[test]
        fn pairing_is_bilinear(w1 in -20i64..20, w2 in -20i64..20, v1 in -20i64..20, v2 in -20i64..20,
                               a in -20i64..20, b in -20i64..20, c in -20i64..20, d in -20i64..20) {
            let l = OnePs::new(w1, w2);
            let m = OnePs::new(v1, v2);
            let x = Weight::new(a, b);
            let y = Weight::new(c, d);
            prop_assert_eq!(l.pair(&x.add(&y)), l.pair(&x) + l.pair(&y));
            let lm = OnePs::new(w1 + v1, w2 + v2);
            prop_assert_eq!(lm.pair(&x), l.pair(&x) + m.pair(&x));
        }

        #[test]
        fn weyl_partner_involutive(a in -50i64..50, b in -50i64..50) {
            let x = Weight::new(a, b);
            prop_assert_eq!(x.weyl_partner().weyl_partner(), x);
        }

        #[test]
        fn pair_with_partner_sums(w1 in -9i64..9, w2 in -9i64..9, a in -9i64..9, b in -9i64..9) {
            let l = OnePs::new(w1, w2);
            let x = Weight::new(a, b);
            prop_assert_eq!(l.pair(&x) + l.pair(&x.weyl_partner()), (w1 + w2) * (a + b));
        }

        #[test]
        fn multiset_swap_symmetric(b in -10i64..10, c in 0i64..10) {
            let x = Weight::new(b + c, b);
            let mut ws = x.weight_multiset().unwrap();
            let mut swapped: Vec<_> = ws.iter().map(|&(m, n)| (n, m)).collect();
            ws.sort();
            swapped.sort();
            prop_assert_eq!(ws.len() as i64, x.dim());
            prop_assert_eq!(ws, swapped);
        }
    }
}
