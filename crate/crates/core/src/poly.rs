//! Sparse multivariate polynomials over ℚ.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::rational::{format_q, Q};

pub type Monomial = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, Q::one())
    }

    pub fn monomial(nvars: usize, exps: Monomial, c: Q) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        p.add_term(exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, exps: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &Q) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(self.nvars, Q::one()), |acc, _| acc.mul(self))
    }

    pub fn contains_var(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m[i] > 0)
    }

    /// Replaces `xᵢ` by `p`.
    pub fn substitute(&self, i: usize, p: &Poly) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let k = rest[i];
            rest[i] = 0;
            let t = Self::monomial(self.nvars, rest, c.clone()).mul(&p.pow(k));
            out = out.add(&t);
        }
        out
    }

    /// Removes variable `i`, which must not occur.
    pub fn drop_var(&self, i: usize) -> Self {
        assert!(!self.contains_var(i), "variable {i} still occurs");
        let mut out = Self::zero(self.nvars - 1);
        for (m, c) in &self.terms {
            let mut m = m.clone();
            m.remove(i);
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[i] > 0 {
                let mut d = m.clone();
                d[i] -= 1;
                out.add_term(d, c * Q::from_integer(m[i].into()));
            }
        }
        out
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        self.terms.iter().fold(Q::zero(), |acc, (m, c)| {
            let mut t = c.clone();
            for (xi, &e) in x.iter().zip(m) {
                for _ in 0..e {
                    t *= xi;
                }
            }
            acc + t
        })
    }

    /// Coefficient of the bare monomial `xᵢ`.
    pub fn linear_coefficient(&self, i: usize) -> Option<&Q> {
        let mut e = vec![0; self.nvars];
        e[i] = 1;
        self.terms.get(&e)
    }

    /// The common `Σ wᵢeᵢ` of all terms, if there is one.
    pub fn homogeneous_degree(&self, weights: &[i64]) -> Option<i64> {
        let mut it = self.terms.keys().map(|m| m.iter().zip(weights).map(|(e, w)| *e as i64 * w).sum::<i64>());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Largest `Σ wᵢeᵢ` over the terms.
    pub fn max_degree(&self, weights: &[i64]) -> Option<i64> {
        self.terms.keys().map(|m| m.iter().zip(weights).map(|(e, w)| *e as i64 * w).sum::<i64>()).max()
    }

    /// Whether every term's monomial vanishes on the coordinate subspace
    /// where exactly the variables in `nonzero` may be nonzero.
    pub fn vanishes_on_support(&self, nonzero: &[bool]) -> bool {
        self.terms.keys().all(|m| m.iter().zip(nonzero).any(|(e, nz)| *e > 0 && !nz))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let vars: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| **e > 0)
                    .map(|(i, e)| if *e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
                    .collect();
                if vars.is_empty() { format_q(c) } else { format!("{}*{}", format_q(c), vars.join("*")) }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// All exponent vectors with `Σ dᵢeᵢ = d`, for positive `dᵢ`.
pub fn monomials_of_degree(degrees: &[i64], d: i64) -> Vec<Monomial> {
    fn rec(degrees: &[i64], i: usize, left: i64, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if i == degrees.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut e = 0;
        while e as i64 * degrees[i] <= left {
            cur[i] = e;
            rec(degrees, i + 1, left - e as i64 * degrees[i], cur, out);
            e += 1;
        }
        cur[i] = 0;
    }
    assert!(degrees.iter().all(|&x| x > 0), "degrees must be positive");
    let mut out = Vec::new();
    if d >= 0 {
        rec(degrees, 0, d, &mut vec![0; degrees.len()], &mut out);
    }
    out
}
