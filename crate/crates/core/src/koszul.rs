//! Bigraded Koszul homology over ℚ: linear elimination, exact ranks on
//! monomial bases, and regularity certificates.
//!
//! Every variable carries a `λ`-weight and a positive auxiliary degree; the
//! auxiliary degree makes each bigraded piece finite-dimensional. A Koszul
//! generator `e_f` carries the bidegree of `f`. Truncation bounds the degree
//! of the polynomial coefficient, measured from the cheapest generator of
//! each homological degree.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{integer_row, Echelon};
use crate::poly::{monomials_of_degree, Monomial, Poly};
use crate::rational::{parse_q, Q};
use crate::{Error, Result};

pub const MIN_TRUNCATION: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub weight: i64,
    pub degree: i64,
    #[serde(default)]
    pub invertible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedRing {
    pub vars: Vec<Variable>,
}

impl GradedRing {
    pub fn new(vars: Vec<Variable>) -> Self {
        GradedRing { vars }
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn weights(&self) -> Vec<i64> {
        self.vars.iter().map(|v| v.weight).collect()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.vars.iter().map(|v| v.degree).collect()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    fn monomial_weight(&self, m: &Monomial) -> i64 {
        m.iter().zip(&self.vars).map(|(e, v)| *e as i64 * v.weight).sum()
    }
}

/// A Koszul generator: the element and its bidegree, which survives the
/// element becoming zero under elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub poly: Poly,
    pub weight: i64,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulProblem {
    pub ring: GradedRing,
    pub elements: Vec<Element>,
}

impl KoszulProblem {
    /// Elements must be `λ`-homogeneous. Elements that are not homogeneous
    /// for the auxiliary degree are recorded at their top degree.
    pub fn new(ring: GradedRing, polys: Vec<Poly>) -> Result<Self> {
        let w = ring.weights();
        let d = ring.degrees();
        let mut elements = Vec::new();
        for (i, p) in polys.into_iter().enumerate() {
            if p.nvars() != ring.len() {
                return Err(Error::Parse(format!("element {i} has the wrong number of variables")));
            }
            if p.is_zero() {
                return Err(Error::Parse(format!("element {i} is zero; give its bidegree explicitly")));
            }
            let weight = p.homogeneous_degree(&w).ok_or_else(|| Error::Parse(format!("element {i} is not λ-homogeneous")))?;
            let degree = p.max_degree(&d).expect("nonzero");
            elements.push(Element { poly: p, weight, degree });
        }
        Ok(KoszulProblem { ring, elements })
    }

    pub fn is_bigraded(&self) -> bool {
        let d = self.ring.degrees();
        d.iter().all(|x| *x > 0)
            && self.elements.iter().all(|e| e.poly.is_zero() || e.poly.homogeneous_degree(&d) == Some(e.degree))
    }

    pub fn nonzero_elements(&self) -> Vec<&Element> {
        self.elements.iter().filter(|e| !e.poly.is_zero()).collect()
    }

    pub fn zero_elements(&self) -> Vec<&Element> {
        self.elements.iter().filter(|e| e.poly.is_zero()).collect()
    }

    fn remove_var(&mut self, i: usize, value: &Poly) {
        for e in &mut self.elements {
            e.poly = e.poly.substitute(i, value).drop_var(i);
        }
        self.ring.vars.remove(i);
    }

    /// Sets weight-0, degree-0 units to 1; adjoins `ū` with `u·ū − 1` for
    /// the other units.
    pub fn specialize_units(&self) -> KoszulProblem {
        let mut p = self.clone();
        while let Some(i) = p.ring.vars.iter().position(|v| v.invertible && v.weight == 0 && v.degree == 0) {
            let n = p.ring.len();
            p.remove_var(i, &Poly::constant(n, Q::one()));
        }
        let units: Vec<usize> = (0..p.ring.len()).filter(|&i| p.ring.vars[i].invertible).collect();
        for i in units {
            let v = p.ring.vars[i].clone();
            p.ring.vars[i].invertible = false;
            p.ring.vars.push(Variable { name: format!("{}_inv", v.name), weight: -v.weight, degree: v.degree.max(1), invertible: false });
            let n = p.ring.len();
            for e in &mut p.elements {
                e.poly = extend_vars(&e.poly, n);
            }
            let rel = Poly::var(n, i).mul(&Poly::var(n, n - 1)).sub(&Poly::constant(n, Q::one()));
            p.elements.push(Element { poly: rel, weight: 0, degree: v.degree.max(1) });
        }
        p
    }
}

fn extend_vars(p: &Poly, n: usize) -> Poly {
    let mut out = Poly::zero(n);
    for (m, c) in p.terms() {
        let mut m = m.clone();
        m.resize(n, 0);
        out.add_term(m, c.clone());
    }
    out
}

/// One elimination: element `index` had the form `c·y + g` with `y ∉ g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EliminationStep {
    pub variable: String,
    pub element: usize,
}

/// Repeatedly removes a pair (element `c·y + g`, variable `y`) with `c` a
/// nonzero constant and `y` absent from `g`, substituting `y := −g/c`.
pub fn eliminate_linear(p: &KoszulProblem) -> KoszulProblem {
    eliminate_linear_logged(p).0
}

pub fn eliminate_linear_logged(p: &KoszulProblem) -> (KoszulProblem, Vec<EliminationStep>) {
    let mut p = p.clone();
    let mut log = Vec::new();
    'outer: loop {
        for (ei, e) in p.elements.iter().enumerate() {
            for y in 0..p.ring.len() {
                if p.ring.vars[y].invertible {
                    continue;
                }
                let Some(c) = e.poly.linear_coefficient(y).cloned() else { continue };
                let n = p.ring.len();
                let g = e.poly.sub(&Poly::var(n, y).scale(&c));
                if g.contains_var(y) {
                    continue;
                }
                let value = g.scale(&(-Q::one() / c));
                log.push(EliminationStep { variable: p.ring.vars[y].name.clone(), element: ei });
                p.elements.remove(ei);
                p.remove_var(y, &value);
                continue 'outer;
            }
        }
        return (p, log);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regularity {
    Regular,
    NotRegular,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Certainty {
    /// Holds in all degrees.
    Exact,
    /// Holds in every bidegree up to the truncation.
    CertifiedToTruncation,
    /// Filtered approximation; not a certificate.
    Truncated,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityVerdict {
    pub verdict: Regularity,
    pub certainty: Certainty,
    pub reason: String,
}

impl RegularityVerdict {
    fn new(verdict: Regularity, certainty: Certainty, reason: impl Into<String>) -> Self {
        RegularityVerdict { verdict, certainty, reason: reason.into() }
    }
}

/// Homology in one homological degree: `λ`-weight ↦ (total degree ↦ dimension).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct TorDegree {
    pub k: usize,
    /// Serialized as `[[weight, [[degree, dim], …]], …]` to keep numeric order.
    #[serde(serialize_with = "serialize_series")]
    pub weights: BTreeMap<i64, BTreeMap<i64, i64>>,
}

fn serialize_series<S: serde::Serializer>(m: &BTreeMap<i64, BTreeMap<i64, i64>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<(i64, Vec<(i64, i64)>)> = m.iter().map(|(w, d)| (*w, d.iter().map(|(a, b)| (*a, *b)).collect())).collect();
    v.serialize(s)
}

impl TorDegree {
    pub fn support(&self) -> BTreeSet<i64> {
        self.weights.iter().filter(|(_, s)| s.values().any(|d| *d != 0)).map(|(w, _)| *w).collect()
    }

    fn add(&mut self, w: i64, d: i64, n: i64) {
        if n != 0 {
            *self.weights.entry(w).or_default().entry(d).or_insert(0) += n;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorWeightReport {
    pub truncation: usize,
    pub status: Certainty,
    pub verdict: RegularityVerdict,
    pub degrees: Vec<TorDegree>,
}

impl TorWeightReport {
    pub fn support(&self, k: usize) -> BTreeSet<i64> {
        self.degrees.iter().find(|d| d.k == k).map(TorDegree::support).unwrap_or_default()
    }

    pub fn total_support(&self) -> BTreeSet<i64> {
        self.degrees.iter().flat_map(TorDegree::support).collect()
    }

    pub fn positive_support(&self) -> BTreeSet<i64> {
        self.degrees.iter().filter(|d| d.k > 0).flat_map(TorDegree::support).collect()
    }

    /// Largest homological degree with nonzero homology.
    pub fn top_degree(&self) -> Option<usize> {
        self.degrees.iter().filter(|d| !d.support().is_empty()).map(|d| d.k).max()
    }

    /// Drops bidegrees with total degree above `max_degree`.
    pub fn restricted(&self, max_degree: i64) -> Vec<TorDegree> {
        self.degrees
            .iter()
            .map(|d| TorDegree {
                k: d.k,
                weights: d
                    .weights
                    .iter()
                    .map(|(w, s)| (*w, s.iter().filter(|(dd, n)| **dd <= max_degree && **n != 0).map(|(a, b)| (*a, *b)).collect::<BTreeMap<_, _>>()))
                    .filter(|(_, s)| !s.is_empty())
                    .collect(),
            })
            .filter(|d| !d.weights.is_empty())
            .collect()
    }
}

/// Exact bigraded homology of `K(f; R)` by linear algebra.
struct BigradedKoszul<'a> {
    ring: &'a GradedRing,
    elems: Vec<(Vec<(Monomial, BigInt)>, i64, i64)>,
    degrees: Vec<i64>,
    monomials: HashMap<i64, Vec<Monomial>>,
    ranks: HashMap<(usize, i64), BTreeMap<i64, usize>>,
}

type Basis = BTreeMap<i64, Vec<(u32, Monomial)>>;

impl<'a> BigradedKoszul<'a> {
    fn new(ring: &'a GradedRing, elements: &[&Element]) -> Self {
        let elems = elements
            .iter()
            .map(|e| {
                let terms: Vec<(usize, Q)> = e.poly.terms().enumerate().map(|(i, (_, c))| (i, c.clone())).collect();
                let ints = integer_row(&terms);
                let monos: Vec<Monomial> = e.poly.terms().map(|(m, _)| m.clone()).collect();
                (ints.into_iter().map(|(i, c)| (monos[i].clone(), c)).collect(), e.weight, e.degree)
            })
            .collect();
        BigradedKoszul { ring, elems, degrees: ring.degrees(), monomials: HashMap::new(), ranks: HashMap::new() }
    }

    fn n(&self) -> usize {
        self.elems.len()
    }

    fn subsets(&self, k: usize) -> Vec<u32> {
        (0u32..(1 << self.n())).filter(|s| s.count_ones() as usize == k).collect()
    }

    fn subset_bidegree(&self, s: u32) -> (i64, i64) {
        (0..self.n()).filter(|i| s >> i & 1 == 1).fold((0, 0), |(w, d), i| (w + self.elems[i].1, d + self.elems[i].2))
    }

    fn monos(&mut self, d: i64) -> Vec<Monomial> {
        if d < 0 {
            return vec![];
        }
        let degs = self.degrees.clone();
        self.monomials.entry(d).or_insert_with(|| monomials_of_degree(&degs, d)).clone()
    }

    fn basis(&mut self, k: usize, total: i64) -> Basis {
        let mut out: Basis = BTreeMap::new();
        if k > self.n() {
            return out;
        }
        for s in self.subsets(k) {
            let (sw, sd) = self.subset_bidegree(s);
            for m in self.monos(total - sd) {
                let w = sw + self.ring.monomial_weight(&m);
                out.entry(w).or_default().push((s, m));
            }
        }
        out
    }

    /// Rank of `d_k : K_k → K_{k−1}` in total degree `total`, per weight.
    fn rank(&mut self, k: usize, total: i64) -> BTreeMap<i64, usize> {
        if let Some(r) = self.ranks.get(&(k, total)) {
            return r.clone();
        }
        let mut out = BTreeMap::new();
        if k >= 1 && k <= self.n() {
            let src = self.basis(k, total);
            let tgt = self.basis(k - 1, total);
            for (w, cols) in &src {
                let Some(rows) = tgt.get(w) else { continue };
                let index: HashMap<(u32, &Monomial), usize> =
                    rows.iter().enumerate().map(|(i, (s, m))| ((*s, m), i)).collect();
                let mut ech = Echelon::new();
                for (s, m) in cols {
                    let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
                    let mut sign = BigInt::one();
                    for i in 0..self.n() {
                        if s >> i & 1 == 0 {
                            continue;
                        }
                        let rest = s & !(1 << i);
                        for (fm, c) in &self.elems[i].0 {
                            let mm: Monomial = m.iter().zip(fm).map(|(a, b)| a + b).collect();
                            let col = index[&(rest, &mm)];
                            *acc.entry(col).or_insert_with(BigInt::zero) += &sign * c;
                        }
                        sign = -sign;
                    }
                    let row: Vec<(usize, BigInt)> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                    ech.insert(row);
                }
                out.insert(*w, ech.rank());
            }
        }
        self.ranks.insert((k, total), out.clone());
        out
    }

    fn homology(&mut self, k: usize, total: i64) -> BTreeMap<i64, i64> {
        let basis = self.basis(k, total);
        let r_out = self.rank(k, total);
        let r_in = self.rank(k + 1, total);
        basis
            .iter()
            .map(|(w, b)| {
                let h = b.len() as i64 - *r_out.get(w).unwrap_or(&0) as i64 - *r_in.get(w).unwrap_or(&0) as i64;
                (*w, h)
            })
            .filter(|(_, h)| *h != 0)
            .collect()
    }

    fn min_generator_degree(&self, k: usize) -> Option<i64> {
        self.subsets(k).into_iter().map(|s| self.subset_bidegree(s).1).min()
    }

    fn report(&mut self, truncation: i64) -> Vec<TorDegree> {
        let mut out = Vec::new();
        for k in 0..=self.n() {
            let Some(lo) = self.min_generator_degree(k) else { continue };
            let mut td = TorDegree { k, ..Default::default() };
            for total in lo..=lo + truncation {
                for (w, h) in self.homology(k, total) {
                    td.add(w, total, h);
                }
            }
            out.push(td);
        }
        out
    }
}

/// Exterior algebra on the zero elements tensored with a homology report.
fn tensor_exterior(base: Vec<TorDegree>, zeros: &[&Element]) -> Vec<TorDegree> {
    let z = zeros.len();
    let mut out: BTreeMap<usize, TorDegree> = BTreeMap::new();
    for s in 0u32..(1 << z) {
        let k = s.count_ones() as usize;
        let (zw, zd) = (0..z).filter(|i| s >> i & 1 == 1).fold((0, 0), |(w, d), i| (w + zeros[i].weight, d + zeros[i].degree));
        for td in &base {
            let e = out.entry(td.k + k).or_insert_with(|| TorDegree { k: td.k + k, ..Default::default() });
            for (w, series) in &td.weights {
                for (d, n) in series {
                    e.add(w + zw, d + zd, *n);
                }
            }
        }
    }
    out.into_values().collect()
}

/// `H₀` of the empty sequence: the monomials of the ring.
fn ring_report(ring: &GradedRing, truncation: i64) -> Vec<TorDegree> {
    let mut td = TorDegree::default();
    if ring.is_empty() {
        td.add(0, 0, 1);
    } else {
        for d in 0..=truncation {
            for m in monomials_of_degree(&ring.degrees(), d) {
                td.add(ring.monomial_weight(&m), d, 1);
            }
        }
    }
    vec![td]
}

/// Coefficients of `∏(1 − t^{dᶠ}) / ∏(1 − t^{dˣ})` up to `t^n`.
fn complete_intersection_series(var_degrees: &[i64], elem_degrees: &[i64], n: usize) -> Vec<i64> {
    let mut s = vec![0i64; n + 1];
    s[0] = 1;
    for &d in var_degrees {
        for i in d as usize..=n {
            s[i] += s[i - d as usize];
        }
    }
    for &d in elem_degrees {
        for i in (d as usize..=n).rev() {
            s[i] -= s[i - d as usize];
        }
    }
    s
}

fn pairwise_coprime_monomials(elems: &[&Element]) -> Option<bool> {
    let supports: Vec<Vec<bool>> = elems
        .iter()
        .map(|e| {
            (e.poly.num_terms() == 1).then(|| e.poly.terms().next().expect("one term").0.iter().map(|x| *x > 0).collect())
        })
        .collect::<Option<_>>()?;
    Some(supports.iter().enumerate().all(|(i, a)| supports[i + 1..].iter().all(|b| a.iter().zip(b).all(|(x, y)| !(*x && *y)))))
}

fn verdict_of(p: &KoszulProblem, truncation: usize, h0: Option<&TorDegree>, h1: Option<&TorDegree>) -> RegularityVerdict {
    use Certainty::*;
    use Regularity::*;
    if truncation < MIN_TRUNCATION {
        return RegularityVerdict::new(Regularity::Inconclusive, Certainty::Inconclusive, "truncation below the minimum");
    }
    if !p.zero_elements().is_empty() {
        return RegularityVerdict::new(NotRegular, Exact, "elimination leaves a zero element");
    }
    let nz = p.nonzero_elements();
    if nz.is_empty() {
        return RegularityVerdict::new(Regular, Exact, "elimination removes every element");
    }
    if let Some(c) = pairwise_coprime_monomials(&nz) {
        return if c {
            RegularityVerdict::new(Regular, Exact, "pairwise coprime monomials")
        } else {
            RegularityVerdict::new(NotRegular, Exact, "monomials sharing a variable")
        };
    }
    if !p.is_bigraded() {
        return RegularityVerdict::new(Regularity::Inconclusive, Certainty::Inconclusive, "not homogeneous for the auxiliary degree");
    }
    if h1.is_some_and(|h| !h.support().is_empty()) {
        return RegularityVerdict::new(NotRegular, Exact, "H₁ ≠ 0");
    }
    let Some(h0) = h0 else {
        return RegularityVerdict::new(Regularity::Inconclusive, Certainty::Inconclusive, "no H₀ data");
    };
    let mut hilb = vec![0i64; truncation + 1];
    for series in h0.weights.values() {
        for (d, n) in series {
            if (*d as usize) <= truncation {
                hilb[*d as usize] += n;
            }
        }
    }
    let ci = complete_intersection_series(&p.ring.degrees(), &nz.iter().map(|e| e.degree).collect::<Vec<_>>(), truncation);
    if hilb == ci {
        RegularityVerdict::new(Regular, CertifiedToTruncation, "Hilbert function matches a complete intersection")
    } else {
        RegularityVerdict::new(NotRegular, Exact, "Hilbert function differs from a complete intersection")
    }
}

pub fn regularity_certificate(p: &KoszulProblem, truncation: usize) -> RegularityVerdict {
    tor_weights(p, truncation).verdict
}

/// Koszul homology weights, after unit specialization and elimination.
pub fn tor_weights(p: &KoszulProblem, truncation: usize) -> TorWeightReport {
    tor_weights_with(p, truncation, true)
}

pub fn tor_weights_with(p: &KoszulProblem, truncation: usize, eliminate: bool) -> TorWeightReport {
    let mut q = p.specialize_units();
    if eliminate {
        q = eliminate_linear(&q);
    }
    if truncation < MIN_TRUNCATION {
        return TorWeightReport {
            truncation,
            status: Certainty::Inconclusive,
            verdict: verdict_of(&q, truncation, None, None),
            degrees: vec![],
        };
    }
    let t = truncation as i64;
    let zeros = q.zero_elements();
    let nz = q.nonzero_elements();
    let positive = q.ring.vars.iter().all(|v| v.degree > 0);
    if nz.is_empty() && positive {
        let degrees = tensor_exterior(ring_report(&q.ring, t), &zeros);
        let verdict = verdict_of(&q, truncation, None, None);
        let status = if q.ring.vars.iter().all(|v| v.weight == 0) { Certainty::Exact } else { Certainty::CertifiedToTruncation };
        return TorWeightReport { truncation, status, verdict, degrees };
    }
    if !q.is_bigraded() {
        let degrees = filtered_report(&q, t);
        let verdict = verdict_of(&q, truncation, None, None);
        return TorWeightReport { truncation, status: Certainty::Truncated, verdict, degrees };
    }
    let mut engine = BigradedKoszul::new(&q.ring, &nz);
    let base = engine.report(t);
    let verdict = verdict_of(&q, truncation, base.iter().find(|d| d.k == 0), base.iter().find(|d| d.k == 1));
    let degrees = tensor_exterior(base, &zeros);
    let status = if verdict.verdict == Regularity::Regular
        && verdict.certainty == Certainty::Exact
        && h0_terminates(degrees.first(), &q.ring, t)
    {
        Certainty::Exact
    } else {
        Certainty::CertifiedToTruncation
    };
    TorWeightReport { truncation, status, verdict, degrees }
}

/// `H₀ = R/I` is generated by 1, so if it vanishes in `max deg xᵢ`
/// consecutive degrees it vanishes from there on.
fn h0_terminates(h0: Option<&TorDegree>, ring: &GradedRing, t: i64) -> bool {
    let Some(h0) = h0 else { return false };
    let span = ring.degrees().into_iter().max().unwrap_or(1);
    let nonzero: BTreeSet<i64> =
        h0.weights.values().flat_map(|s| s.iter().filter(|(_, n)| **n != 0).map(|(d, _)| *d)).collect();
    ((t - span + 1)..=t).all(|d| !nonzero.contains(&d))
}

/// Filtered approximation for sequences that are not degree-homogeneous:
/// coefficients of degree ≤ T, recorded at key `T`.
fn filtered_report(p: &KoszulProblem, t: i64) -> Vec<TorDegree> {
    let ring = &p.ring;
    let degs: Vec<i64> = ring.degrees().into_iter().map(|d| d.max(1)).collect();
    let mut monos: Vec<Monomial> = Vec::new();
    for d in 0..=t {
        monos.extend(monomials_of_degree(&degs, d));
    }
    let elems = &p.elements;
    let n = elems.len();
    let deg_of = |m: &Monomial| m.iter().zip(&degs).map(|(e, d)| *e as i64 * d).sum::<i64>();
    let basis = |k: usize, cap: i64| -> Vec<(u32, Monomial)> {
        (0u32..(1 << n))
            .filter(|s| s.count_ones() as usize == k)
            .flat_map(|s| monos.iter().filter(|m| deg_of(m) <= cap).map(move |m| (s, m.clone())))
            .collect()
    };
    let weight = |s: u32, m: &Monomial| -> i64 {
        (0..n).filter(|i| s >> i & 1 == 1).map(|i| elems[i].weight).sum::<i64>() + ring.monomial_weight(m)
    };
    let rank = |src: &[(u32, Monomial)]| -> BTreeMap<i64, usize> {
        let mut by_w: BTreeMap<i64, Echelon> = BTreeMap::new();
        let mut index: HashMap<(u32, Monomial), usize> = HashMap::new();
        for (s, m) in src {
            let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
            let mut sign = Q::one();
            for i in 0..n {
                if s >> i & 1 == 0 {
                    continue;
                }
                let rest = s & !(1 << i);
                for (fm, c) in elems[i].poly.terms() {
                    let mm: Monomial = m.iter().zip(fm).map(|(a, b)| a + b).collect();
                    let next = index.len();
                    let col = *index.entry((rest, mm)).or_insert(next);
                    *acc.entry(col).or_insert_with(Q::zero) += &sign * c;
                }
                sign = -sign;
            }
            let row: Vec<(usize, Q)> = acc.into_iter().collect();
            by_w.entry(weight(*s, m)).or_default().insert(integer_row(&row));
        }
        by_w.into_iter().map(|(w, e)| (w, e.rank())).collect()
    };
    let max_e = elems.iter().map(|e| e.degree.max(1)).max().unwrap_or(1);
    let mut out = Vec::new();
    for k in 0..=n {
        let b = basis(k, t);
        let r_out = if k > 0 { rank(&b) } else { BTreeMap::new() };
        let r_in = if k < n { rank(&basis(k + 1, t - max_e)) } else { BTreeMap::new() };
        let mut dims: BTreeMap<i64, i64> = BTreeMap::new();
        for (s, m) in &b {
            *dims.entry(weight(*s, m)).or_insert(0) += 1;
        }
        let mut td = TorDegree { k, ..Default::default() };
        for (w, d) in dims {
            let h = d - *r_out.get(&w).unwrap_or(&0) as i64 - *r_in.get(&w).unwrap_or(&0) as i64;
            td.add(w, t, h.max(0));
        }
        out.push(td);
    }
    out
}

/// Variables as `(name, weight, degree)`.
fn ring(vars: &[(&str, i64, i64)]) -> GradedRing {
    GradedRing::new(vars.iter().map(|(n, w, d)| Variable { name: n.to_string(), weight: *w, degree: *d, invertible: false }).collect())
}

struct Builder {
    ring: GradedRing,
}

impl Builder {
    fn v(&self, name: &str) -> Poly {
        Poly::var(self.ring.len(), self.ring.index(name).expect("known variable"))
    }
}

/// The chart `v = 1` of `Z₁⁺`: elements `x₁..x₆, β − uα, γ − uβ, −uγ` over
/// `ℚ[x, α^{±1}, β, γ, u]` with `λ₁`-weights `x:1, α:0, β:−1, γ:−2, u:−1`.
pub fn z1_plus() -> KoszulProblem {
    let mut vars: Vec<(String, i64, i64)> = (1..=6).map(|i| (format!("x{i}"), 1, 1)).collect();
    vars.extend([("alpha".into(), 0, 0), ("beta".into(), -1, 1), ("gamma".into(), -2, 2), ("u".into(), -1, 1)]);
    let mut r = ring(&vars.iter().map(|(n, w, d)| (n.as_str(), *w, *d)).collect::<Vec<_>>());
    r.vars[6].invertible = true;
    let b = Builder { ring: r };
    let mut els: Vec<Poly> = (1..=6).map(|i| b.v(&format!("x{i}"))).collect();
    els.push(b.v("beta").sub(&b.v("u").mul(&b.v("alpha"))));
    els.push(b.v("gamma").sub(&b.v("u").mul(&b.v("beta"))));
    els.push(b.v("u").mul(&b.v("gamma")).scale(&-Q::one()));
    KoszulProblem::new(b.ring, els).expect("homogeneous fixture")
}

fn z1_minus_vars(with_x1: bool) -> Vec<(String, i64, i64)> {
    let first = if with_x1 { 1 } else { 2 };
    let mut vars: Vec<(String, i64, i64)> = (first..=6).map(|i| (format!("x{i}"), 0, 1)).collect();
    vars.extend([("alpha".into(), 1, 3), ("beta".into(), 2, 2), ("gamma".into(), 3, 1), ("v".into(), -1, 1)]);
    vars
}

/// The sequence `vx₁..vx₆, vβ − α, vγ − β, −γ` on `Z₁⁻` (`u = 1`), graded by
/// the destabilizing 1-PS of the negative side: `x:0, α:1, β:2, γ:3, v:−1`.
/// On `Z₁⁻` the row `Φ₁ = x` is nonzero; this is the chart `x₁ = 1`.
pub fn z1_minus() -> KoszulProblem {
    let vars = z1_minus_vars(false);
    let b = Builder { ring: ring(&vars.iter().map(|(n, w, d)| (n.as_str(), *w, *d)).collect::<Vec<_>>()) };
    let mut els = vec![b.v("v")];
    els.extend((2..=6).map(|i| b.v("v").mul(&b.v(&format!("x{i}")))));
    els.extend(remark_tail(&b));
    KoszulProblem::new(b.ring, els).expect("homogeneous fixture")
}

/// The same sequence over the full polynomial ring `ℚ[x₁..x₆, α, β, γ, v]`.
pub fn z1_minus_unlocalized() -> KoszulProblem {
    let vars = z1_minus_vars(true);
    let b = Builder { ring: ring(&vars.iter().map(|(n, w, d)| (n.as_str(), *w, *d)).collect::<Vec<_>>()) };
    let mut els: Vec<Poly> = (1..=6).map(|i| b.v("v").mul(&b.v(&format!("x{i}")))).collect();
    els.extend(remark_tail(&b));
    KoszulProblem::new(b.ring, els).expect("homogeneous fixture")
}

fn remark_tail(b: &Builder) -> Vec<Poly> {
    vec![
        b.v("v").mul(&b.v("beta")).sub(&b.v("alpha")),
        b.v("v").mul(&b.v("gamma")).sub(&b.v("beta")),
        b.v("gamma").scale(&-Q::one()),
    ]
}

/// `(vx₁, …, vx₆)` restricted to the chart `x₁ = 1`, i.e. `(v, vx₂, …, vx₆)`.
pub fn vx_chart() -> KoszulProblem {
    let vars: Vec<(String, i64, i64)> = (2..=6).map(|i| (format!("x{i}"), 0, 1)).chain([("v".to_string(), -1, 1)]).collect();
    let b = Builder { ring: ring(&vars.iter().map(|(n, w, d)| (n.as_str(), *w, *d)).collect::<Vec<_>>()) };
    let mut els = vec![b.v("v")];
    els.extend((2..=6).map(|i| b.v("v").mul(&b.v(&format!("x{i}")))));
    KoszulProblem::new(b.ring, els).expect("homogeneous fixture")
}

/// JSON description of a custom problem. Elements are lists of terms
/// `[coefficient, [exponents…]]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KoszulSpec {
    pub variables: Vec<Variable>,
    pub elements: Vec<Vec<(String, Vec<u32>)>>,
}

impl KoszulSpec {
    pub fn build(&self) -> Result<KoszulProblem> {
        let r = GradedRing::new(self.variables.clone());
        let n = r.len();
        let mut polys = Vec::new();
        for e in &self.elements {
            let mut p = Poly::zero(n);
            for (c, exps) in e {
                if exps.len() != n {
                    return Err(Error::Parse(format!("exponent vector {exps:?} has the wrong length")));
                }
                p.add_term(exps.clone(), parse_q(c)?);
            }
            polys.push(p);
        }
        KoszulProblem::new(r, polys)
    }
}

impl fmt::Display for KoszulProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.ring.vars.iter().map(|v| v.name.as_str()).collect();
        writeln!(f, "ring: {}", names.join(", "))?;
        for e in &self.elements {
            writeln!(f, "  [{} | w={} d={}]", e.poly, e.weight, e.degree)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[i64]) -> BTreeSet<i64> {
        v.iter().copied().collect()
    }

    fn monomial_problem(vars: &[(&str, i64, i64)], gens: &[Vec<u32>]) -> KoszulProblem {
        let r = ring(vars);
        let n = r.len();
        let polys = gens.iter().map(|e| Poly::monomial(n, e.clone(), Q::one())).collect();
        KoszulProblem::new(r, polys).unwrap()
    }

    /// Oracle: standard monomials of a monomial ideal, by divisibility.
    fn standard_monomial_weights(p: &KoszulProblem, t: i64) -> BTreeSet<i64> {
        let gens: Vec<Monomial> = p.elements.iter().map(|e| e.poly.terms().next().unwrap().0.clone()).collect();
        let mut out = BTreeSet::new();
        for d in 0..=t {
            for m in monomials_of_degree(&p.ring.degrees(), d) {
                if !gens.iter().any(|g| g.iter().zip(&m).all(|(a, b)| a <= b)) {
                    out.insert(p.ring.monomial_weight(&m));
                }
            }
        }
        out
    }

    #[test]
    fn z1_plus_reduces_to_u_cubed() {
        let p = z1_plus().specialize_units();
        let r = eliminate_linear(&p);
        assert_eq!(r.ring.vars.len(), 1);
        assert_eq!(r.ring.vars[0].name, "u");
        assert_eq!(r.elements.len(), 1);
        let e = &r.elements[0];
        assert_eq!(e.poly.num_terms(), 1);
        assert_eq!(e.poly.terms().next().unwrap().0, &vec![3]);
        assert_eq!(e.weight, -3);
    }

    #[test]
    fn z1_plus_weights() {
        let rep = tor_weights(&z1_plus(), 6);
        assert_eq!(rep.verdict.verdict, Regularity::Regular);
        assert_eq!(rep.verdict.certainty, Certainty::Exact);
        assert_eq!(rep.status, Certainty::Exact);
        assert_eq!(rep.support(0), set(&[0, -1, -2]));
        assert_eq!(rep.top_degree(), Some(0));
        assert!(rep.total_support().iter().all(|w| 2 * w >= -5 && 2 * w < 5));
    }

    #[test]
    fn z1_plus_without_elimination_agrees() {
        let full = tor_weights_with(&z1_plus(), 4, false);
        let red = tor_weights_with(&z1_plus(), 4, true);
        assert_eq!(full.restricted(4), red.restricted(4));
        assert_eq!(full.verdict.verdict, Regularity::Regular);
    }

    #[test]
    fn z1_minus_weights() {
        let rep = tor_weights(&z1_minus(), 6);
        assert_eq!(rep.verdict.verdict, Regularity::NotRegular);
        assert_eq!(rep.total_support(), set(&[0, -1, -2, -3, -4, -5]));
        assert_eq!(rep.positive_support(), set(&[-1, -2, -3, -4, -5]));
        for k in 0..=5 {
            assert_eq!(rep.support(k), set(&[-(k as i64)]));
        }
        // outside the λ₁ window [−5/2, 5/2)
        assert!(rep.total_support().iter().any(|w| 2 * w < -5));
    }

    #[test]
    fn z1_minus_matches_vx_sequence() {
        let a = tor_weights(&z1_minus(), 6);
        let b = tor_weights_with(&vx_chart(), 6, false);
        for k in 0..=6 {
            assert_eq!(a.support(k), b.support(k), "degree {k}");
        }
        assert_eq!(b.verdict.verdict, Regularity::NotRegular);
    }

    #[test]
    fn unlocalized_problem_is_not_fully_eliminated() {
        let (r, log) = eliminate_linear_logged(&z1_minus_unlocalized());
        let gone: Vec<&str> = log.iter().map(|s| s.variable.as_str()).collect();
        assert_eq!(gone.len(), 3);
        for v in ["alpha", "beta", "gamma"] {
            assert!(gone.contains(&v));
        }
        assert_eq!(r.elements.len(), 6);
        assert!(r.elements.iter().all(|e| e.poly.num_terms() == 1));
        assert_eq!(regularity_certificate(&z1_minus_unlocalized(), 6).verdict, Regularity::NotRegular);
    }

    #[test]
    fn simple_problems() {
        // (x, y) over ℚ[x,y] eliminates completely
        let p = monomial_problem(&[("x", 1, 1), ("y", 0, 1)], &[vec![1, 0], vec![0, 1]]);
        let r = eliminate_linear(&p);
        assert!(r.ring.vars.is_empty() && r.elements.is_empty());
        let rep = tor_weights(&p, 4);
        assert_eq!(rep.support(0), set(&[0]));
        assert_eq!(rep.verdict.verdict, Regularity::Regular);
        // (x, x) is not regular
        let p = monomial_problem(&[("x", 1, 1)], &[vec![1], vec![1]]);
        assert_eq!(regularity_certificate(&p, 4).verdict, Regularity::NotRegular);
        // u³ alone
        let p = monomial_problem(&[("u", -1, 1)], &[vec![3]]);
        let rep = tor_weights(&p, 4);
        assert_eq!(rep.support(0), set(&[0, -1, -2]));
        assert_eq!(rep.top_degree(), Some(0));
        assert_eq!(rep.status, Certainty::Exact);
        // too small a truncation
        assert_eq!(tor_weights(&p, 2).status, Certainty::Inconclusive);
    }

    #[test]
    fn degree_zero_matches_standard_monomials() {
        let vars = [("x", 1, 1), ("y", -1, 1), ("z", 2, 1)];
        for gens in [vec![vec![2, 0, 0], vec![0, 3, 0]], vec![vec![1, 1, 0], vec![0, 2, 1]], vec![vec![1, 1, 1]]] {
            let p = monomial_problem(&vars, &gens);
            let rep = tor_weights_with(&p, 5, false);
            assert_eq!(rep.support(0), standard_monomial_weights(&p, 5), "{gens:?}");
        }
    }

    #[test]
    fn non_regular_by_homology() {
        // (xy, xz): H₁ ≠ 0 and the certificate must say so
        let vars = [("x", 0, 1), ("y", 1, 1), ("z", -1, 1)];
        let r = ring(&vars);
        let x = Poly::var(3, 0);
        let polys = vec![x.mul(&Poly::var(3, 1)).add(&x.mul(&Poly::var(3, 1))), x.mul(&Poly::var(3, 2))];
        let p = KoszulProblem::new(r, polys).unwrap();
        let rep = tor_weights(&p, 4);
        assert_eq!(rep.verdict.verdict, Regularity::NotRegular);
        assert!(!rep.support(1).is_empty());
        // (x² + y², yz) is regular but not monomial: needs the Hilbert function
        let vars = [("x", 0, 1), ("y", 0, 1), ("z", 0, 1)];
        let r = ring(&vars);
        let (x, y, z) = (Poly::var(3, 0), Poly::var(3, 1), Poly::var(3, 2));
        let p = KoszulProblem::new(r, vec![x.mul(&x).add(&y.mul(&y)), y.mul(&z)]).unwrap();
        let v = regularity_certificate(&p, 6);
        assert_eq!((v.verdict, v.certainty), (Regularity::Regular, Certainty::CertifiedToTruncation));
    }

    #[test]
    fn elimination_preserves_homology() {
        // x − y² with y of degree 1, x of degree 2, then y³
        let vars = [("x", 2, 2), ("y", 1, 1)];
        let r = ring(&vars);
        let (x, y) = (Poly::var(2, 0), Poly::var(2, 1));
        let p = KoszulProblem::new(r, vec![x.sub(&y.mul(&y)), y.pow(3)]).unwrap();
        let a = tor_weights_with(&p, 6, true);
        let b = tor_weights_with(&p, 6, false);
        assert_eq!(a.restricted(6), b.restricted(6));
        assert_eq!(a.support(0), set(&[0, 1, 2]));
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(24))]
        #[test]
        fn elimination_invariance(
            w in proptest::array::uniform2(-2i64..=2), d in proptest::array::uniform2(1i64..=2),
            a in 0u32..=2, b in 0u32..=2, c in 1i64..=3, r in 0u32..=1, e in proptest::array::uniform2(0u32..=2),
        ) {
            proptest::prop_assume!(a + b > 0 && e[0] + e[1] + r > 0);
            let xw = a as i64 * w[0] + b as i64 * w[1];
            let xd = a as i64 * d[0] + b as i64 * d[1];
            let r3 = ring(&[("x", xw, xd), ("y", w[0], d[0]), ("z", w[1], d[1])]);
            let lin = Poly::var(3, 0).sub(&Poly::monomial(3, vec![0, a, b], Q::from_integer(c.into())));
            let other = Poly::monomial(3, vec![r, e[0], e[1]], Q::one());
            let p = KoszulProblem::new(r3, vec![lin, other]).unwrap();
            let t = 4;
            let full = tor_weights_with(&p, t, false);
            let red = tor_weights_with(&p, t, true);
            proptest::prop_assert_eq!(full.restricted(t as i64), red.restricted(t as i64));
        }
    }

    #[test]
    fn rejects_inhomogeneous_weights() {
        let r = ring(&[("x", 1, 1), ("y", 2, 1)]);
        assert!(KoszulProblem::new(r, vec![Poly::var(2, 0).add(&Poly::var(2, 1))]).is_err());
    }

    #[test]
    fn custom_json() {
        let s = r#"{"variables":[{"name":"u","weight":-1,"degree":1}],"elements":[[["1",[3]]]]}"#;
        let spec: KoszulSpec = serde_json::from_str(s).unwrap();
        let rep = tor_weights(&spec.build().unwrap(), 4);
        assert_eq!(rep.support(0), set(&[0, -1, -2]));
    }

    #[test]
    fn unit_adjunction_fallback() {
        // a unit of nonzero weight forces the filtered path
        let mut r = ring(&[("t", 1, 1), ("y", -1, 1)]);
        r.vars[0].invertible = true;
        let p = KoszulProblem::new(r, vec![Poly::var(2, 1).mul(&Poly::var(2, 0))]).unwrap();
        let q = p.specialize_units();
        assert_eq!(q.ring.len(), 3);
        assert_eq!(q.elements.len(), 2);
        let rep = tor_weights(&p, 4);
        assert_eq!(rep.status, Certainty::Truncated);
    }
}
