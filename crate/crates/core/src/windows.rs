//! Grade restriction rules and the window sets ∇₋, ∇₊.
//!
//! A rule `(λ, η, offset)` admits `χ` iff both `⟨λ,χ⟩` and `⟨λ,χ′⟩` lie in
//! `[−η/2 + offset, η/2 + offset)`. Since the `λ`-weights of `𝒯_χ` are affine
//! in the weight index, the two extremes decide membership for the whole
//! weight multiset.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;

use crate::git::{GitProblem, Side};
use crate::rational::{q, qf, Q};
use crate::weights::{OnePs, Weight};

pub const DEFAULT_BOX: i64 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowRule {
    pub lambda: OnePs,
    pub eta: i64,
    #[serde(with = "crate::rational::as_string")]
    pub offset: Q,
}

impl WindowRule {
    pub fn new(lambda: OnePs, eta: i64) -> Self {
        WindowRule { lambda, eta, offset: Q::zero() }
    }

    pub fn with_offset(mut self, offset: Q) -> Self {
        self.offset = offset;
        self
    }

    pub fn lower(&self) -> Q {
        qf(-self.eta, 2) + &self.offset
    }

    pub fn upper(&self) -> Q {
        qf(self.eta, 2) + &self.offset
    }

    pub fn admits_value(&self, v: i64) -> bool {
        let v = q(v);
        self.lower() <= v && v < self.upper()
    }

    pub fn admits(&self, chi: &Weight) -> bool {
        self.admits_value(self.lambda.pair(chi)) && self.admits_value(self.lambda.pair(&chi.weyl_partner()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowSet {
    pub side: Side,
    pub rules: Vec<WindowRule>,
}

impl WindowSet {
    /// Rules for `λ₀, λ₁` on the negative side and `λ₀, λ₁, λ₂` on the
    /// positive side, with widths from the GIT problem.
    pub fn from_problem(problem: &GitProblem, side: Side) -> Self {
        let n = match side {
            Side::Minus => 2,
            Side::Plus => 3,
        };
        let rules = problem.one_ps.iter().take(n).map(|l| WindowRule::new(*l, problem.eta(l))).collect();
        WindowSet { side, rules }
    }

    pub fn standard(side: Side) -> Self {
        Self::from_problem(&GitProblem::flop(), side)
    }

    pub fn with_zero_widths(mut self) -> Self {
        for r in &mut self.rules {
            r.eta = 0;
        }
        self
    }

    pub fn contains(&self, chi: &Weight) -> bool {
        chi.is_dominant() && self.rules.iter().all(|r| r.admits(chi))
    }

    /// The rules `χ` violates.
    pub fn violations(&self, chi: &Weight) -> Vec<OnePs> {
        self.rules.iter().filter(|r| !r.admits(chi)).map(|r| r.lambda).collect()
    }

    /// All dominant weights in `[−box, box]²` passing every rule.
    pub fn enumerate(&self, bound: i64) -> BTreeSet<Weight> {
        let mut out = BTreeSet::new();
        for a in -bound..=bound {
            for b in -bound..=a {
                let chi = Weight::new(a, b);
                if self.contains(&chi) {
                    out.insert(chi);
                }
            }
        }
        out
    }
}

pub fn weight_in_window(chi: &Weight, rules: &WindowSet) -> bool {
    rules.contains(chi)
}

pub fn enumerate_window(rules: &WindowSet, bound: i64) -> BTreeSet<Weight> {
    rules.enumerate(bound)
}

/// `{(b+c, b) : 0 ≤ c ≤ 4, −2 ≤ b ≤ 2−c}`.
pub fn kapranov_set() -> BTreeSet<Weight> {
    (0..=4).flat_map(|c| (-2..=2 - c).map(move |b| Weight::from_sym_det(c, b))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrthogonalityReport {
    pub lambda: OnePs,
    pub pivot: Weight,
    pub pivot_value: i64,
    pub strict: bool,
    pub passes: Vec<Weight>,
    pub failures: Vec<Weight>,
    /// Weights with `⟨λ,χ⟩ = ⟨λ,pivot⟩`, whichever way they were counted.
    pub boundary: Vec<Weight>,
}

impl OrthogonalityReport {
    pub fn all_pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compares `⟨λ,χ⟩` against `⟨λ,pivot⟩`: `>` when strict, `≥` otherwise.
pub fn orthogonality_report<'a, I>(weights: I, pivot: &Weight, lambda: &OnePs, strict: bool) -> OrthogonalityReport
where
    I: IntoIterator<Item = &'a Weight>,
{
    let pv = lambda.pair(pivot);
    let mut r = OrthogonalityReport {
        lambda: *lambda,
        pivot: *pivot,
        pivot_value: pv,
        strict,
        passes: vec![],
        failures: vec![],
        boundary: vec![],
    };
    for chi in weights {
        let v = lambda.pair(chi);
        if v == pv {
            r.boundary.push(*chi);
        }
        if v > pv || (!strict && v == pv) {
            r.passes.push(*chi);
        } else {
            r.failures.push(*chi);
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn minus_window_is_kapranov() {
        let m = WindowSet::standard(Side::Minus).enumerate(DEFAULT_BOX);
        assert_eq!(m.len(), 15);
        assert_eq!(m, kapranov_set());
        assert!(m.contains(&Weight::new(2, -2)));
    }

    #[test]
    fn plus_window_drops_one() {
        let plus = WindowSet::standard(Side::Plus);
        let p = plus.enumerate(DEFAULT_BOX);
        let mut expect = kapranov_set();
        expect.remove(&Weight::new(2, -2));
        assert_eq!(p, expect);
        assert_eq!(plus.violations(&Weight::new(2, -2)), vec![OnePs::LAMBDA2]);
        for chi in &p {
            assert!(p.contains(&chi.dual()), "{chi}");
        }
    }

    #[test]
    fn window_independent_of_box() {
        for side in [Side::Minus, Side::Plus] {
            let w = WindowSet::standard(side);
            assert_eq!(w.enumerate(8), w.enumerate(15));
        }
    }

    #[test]
    fn zero_widths_are_empty() {
        for side in [Side::Minus, Side::Plus] {
            let w = WindowSet::standard(side).with_zero_widths();
            assert!(w.enumerate(DEFAULT_BOX).is_empty());
        }
        assert!(WindowSet::standard(Side::Plus).contains(&Weight::new(0, 0)));
    }

    #[test]
    fn shifted_windows() {
        let base = WindowSet::standard(Side::Minus);
        let mut same = base.clone();
        same.rules[0] = same.rules[0].clone().with_offset(q(0));
        assert_eq!(same.enumerate(DEFAULT_BOX), base.enumerate(DEFAULT_BOX));
        // only λ₁ is sensitive to a unit shift; (2,−2) pairs to ∓6 under λ₂
        for (side, i) in [(Side::Minus, 1), (Side::Plus, 1)] {
            let base = WindowSet::standard(side);
            for k in [-1, 1] {
                let mut moved = base.clone();
                moved.rules[i] = moved.rules[i].clone().with_offset(q(k));
                assert_ne!(moved.enumerate(DEFAULT_BOX), base.enumerate(DEFAULT_BOX), "{side} rule {i} by {k}");
            }
        }
        for (side, i) in [(Side::Minus, 0), (Side::Plus, 0), (Side::Plus, 2)] {
            let base = WindowSet::standard(side);
            let mut moved = base.clone();
            moved.rules[i] = moved.rules[i].clone().with_offset(q(1));
            assert_eq!(moved.enumerate(DEFAULT_BOX), base.enumerate(DEFAULT_BOX));
        }
    }

    #[test]
    fn orthogonality_examples() {
        let plus = WindowSet::standard(Side::Plus).enumerate(DEFAULT_BOX);
        let pivot = Weight::new(2, -2);
        let r = orthogonality_report(&plus, &pivot, &OnePs::LAMBDA2, true);
        assert_eq!(r.pivot_value, -6);
        assert_eq!(r.passes.len(), 14);
        assert!(r.boundary.is_empty());
        let r = orthogonality_report([pivot].iter(), &pivot, &OnePs::LAMBDA0, true);
        assert_eq!(r.failures, vec![pivot]);
        assert_eq!(r.boundary, vec![pivot]);
    }

    proptest! {
        #[test]
        fn partner_interval_check_matches_full_multiset(a in -8i64..8, d in 0i64..10) {
            let chi = Weight::new(a + d, a);
            for side in [Side::Minus, Side::Plus] {
                let w = WindowSet::standard(side);
                let full = w.rules.iter().all(|r| {
                    chi.weight_multiset().unwrap().iter().all(|x| r.admits_value(r.lambda.pair_raw(*x)))
                });
                prop_assert_eq!(w.contains(&chi), full);
            }
        }
    }
}
