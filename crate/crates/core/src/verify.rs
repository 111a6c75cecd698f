//! The named acceptance checks. Each check is self-contained, deterministic
//! given the seed, and reports pass, fail, or inconclusive with a JSON
//! payload of the data it compared.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bott::{self, bott_pushforward, exactness_check, LineBundleWeight, ResolutionModel};
use crate::closure::standard_closure;
use crate::cubic::{random_gl2, BinaryCubic};
use crate::gamma::{character_table, conjugacy_classes};
use crate::git::{semistable, slice_weights, stability_fixtures, standard_form_examples, unstable_stratum};
use crate::koszul::{self, tor_weights, Regularity};
use crate::potential::{self, Cubic6};
use crate::rational::random_q;
use crate::windows::{kapranov_set, orthogonality_report, WindowSet, DEFAULT_BOX};
use crate::{GitProblem, OnePs, PointV, Result, Side, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    fn of(ok: bool) -> Self {
        if ok { Status::Pass } else { Status::Fail }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// The mathematical statement being checked.
    pub anchor: String,
    pub status: Status,
    pub detail: String,
    pub payload: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub seed: u64,
    pub summary: Summary,
    pub checks: Vec<Check>,
}

impl RunReport {
    /// True iff no check failed; inconclusive checks do not count against.
    pub fn ok(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// One entry per acceptance criterion, in criterion order.
pub const CHECK_NAMES: [&str; 13] = [
    "eta-invariants",
    "window-sets",
    "gamma-representations",
    "euler-characteristics",
    "bott-anchor",
    "k-resolution",
    "orthogonality",
    "hom-series-vanishing",
    "generation-closure",
    "koszul-tor-weights",
    "stability",
    "superpotential",
    "slice-models",
];

type CheckFn = fn(u64) -> Result<(bool, String, Value)>;

fn table() -> [(&'static str, &'static str, CheckFn); 13] {
    [
        (CHECK_NAMES[0], "η(λ₀, λ₁, λ₂) = (12, 5, 12)", check_eta),
        (CHECK_NAMES[1], "|∇₋| = 15 = {(b+c, b) : c ≤ 4, −2 ≤ b ≤ 2−c}; ∇₊ = ∇₋ ∖ {(2,−2)} is self-dual", check_windows),
        (CHECK_NAMES[2], "Γ has nine irreps, six linear and three 2-dimensional; det generates the characters; Sym²T ⊗ det⁻¹ ⊇ det³; ∇₊ reaches every irrep", check_gamma),
        (CHECK_NAMES[3], "χ(BΓ) + χ(P⁵) = 9 + 6 = 15 = χ(Gr(2,6)) = |∇₋|", check_euler),
        (CHECK_NAMES[4], "q_*(L^{−k}) = 𝒯_{(0,−k)} for 0 ≤ k ≤ 6; L^a ⊗ (T/L)^{a−1} is acyclic", check_bott),
        (CHECK_NAMES[5], "the resolution of 𝒦 has the ten listed weights, ends in 𝒯_{(0,−3)} once, and the resolution of 𝒮 starts at 𝒯_{(2,−2)} and is exact", check_k_resolution),
        (CHECK_NAMES[6], "⟨λ₂, χ⟩ > ⟨λ₂, (2,−2)⟩ on ∇₊; ≥ on the resolution of 𝒦", check_orthogonality),
        (CHECK_NAMES[7], "graded Euler pairings of 𝒮 with 𝒯_μ and of 𝒯_μ∨ with 𝒮∨ vanish for μ ∈ ∇₋", check_hom_series),
        (CHECK_NAMES[8], "∇₊ generates det^k for |k| ≤ 5; 𝒦 adds (0,−3), then (−2,−4), then (−6,−6)", check_closure),
        (CHECK_NAMES[9], "Tor weights on Z₁⁺ are exactly 0, −1, −2 (regular); on Z₁⁻ they are 0, …, −5 (not regular)", check_koszul),
        (CHECK_NAMES[10], "semistability is GL₂-invariant; Σ₁ unstable, Σ₃∖Σ₂ stable, Σ₂ unstable iff Φ lands in the double root", check_stability),
        (CHECK_NAMES[11], "∇W matches finite differences; the stratum formulas hold for Fermat f; Σ₂-points are never critical", check_superpotential),
        (CHECK_NAMES[12], "O(−2)⊕O(−3) → P⁴ ⇢ O(−1)^{⊕5} → P¹_{2:3}; F̃ = P⁶_{1:…:1:6}", check_slices),
    ]
}

pub fn run_check(name: &str, seed: u64) -> Result<Check> {
    let (name, anchor, f) = table()
        .into_iter()
        .find(|(n, _, _)| *n == name)
        .ok_or_else(|| crate::Error::UnknownModel(name.to_string()))?;
    Ok(evaluate(name, anchor, f, seed))
}

fn evaluate(name: &str, anchor: &str, f: CheckFn, seed: u64) -> Check {
    let (status, detail, payload) = match f(seed) {
        Ok((ok, detail, payload)) => (Status::of(ok), detail, payload),
        Err(e) => (Status::Fail, format!("error: {e}"), Value::Null),
    };
    // a check can downgrade itself by marking its payload
    let status = if payload.get("inconclusive").and_then(Value::as_bool) == Some(true) && status == Status::Fail {
        Status::Inconclusive
    } else {
        status
    };
    Check { name: name.into(), anchor: anchor.into(), status, detail, payload }
}

/// Runs every check on its own thread; the report order is fixed.
pub fn run_all(seed: u64) -> RunReport {
    let checks: Vec<Check> = std::thread::scope(|s| {
        let handles: Vec<_> = table()
            .into_iter()
            .map(|(n, a, f)| s.spawn(move || evaluate(n, a, f, seed)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("check thread panicked")).collect()
    });
    let count = |st| checks.iter().filter(|c| c.status == st).count();
    let summary = Summary { pass: count(Status::Pass), fail: count(Status::Fail), inconclusive: count(Status::Inconclusive) };
    RunReport { seed, summary, checks }
}

fn w(a: i64, b: i64) -> Weight {
    Weight::new(a, b)
}

fn check_eta(_: u64) -> Result<(bool, String, Value)> {
    let g = GitProblem::flop();
    let etas: Vec<i64> = g.one_ps.iter().map(|l| g.eta(l)).collect();
    let symmetric = g.one_ps.iter().all(|l| g.eta(l) == g.eta(&l.neg()));
    let ok = etas == [12, 5, 12] && symmetric && g.is_calabi_yau();
    Ok((ok, format!("η = {etas:?}"), json!({ "eta": etas, "symmetric_under_negation": symmetric })))
}

fn check_windows(_: u64) -> Result<(bool, String, Value)> {
    let minus = WindowSet::standard(Side::Minus).enumerate(DEFAULT_BOX);
    let plus = WindowSet::standard(Side::Plus).enumerate(DEFAULT_BOX);
    let mut expect_plus = kapranov_set();
    expect_plus.remove(&w(2, -2));
    let self_dual = plus.iter().all(|c| plus.contains(&c.dual()));
    let ok = minus.len() == 15 && minus == kapranov_set() && plus.len() == 14 && plus == expect_plus && self_dual;
    Ok((
        ok,
        format!("|∇₋| = {}, |∇₊| = {}", minus.len(), plus.len()),
        json!({ "minus": minus, "plus": plus, "plus_self_dual": self_dual }),
    ))
}

fn check_gamma(_: u64) -> Result<(bool, String, Value)> {
    let t = character_table();
    let classes = conjugacy_classes().len();
    let mut dims: Vec<i64> = t.irreps.iter().map(|r| r.dim).collect();
    dims.sort();
    let orth = t.rows_orthonormal() && t.columns_orthogonal();
    let det = t.restrict_gl2(&w(1, 1))?;
    let det_order = match det.iter().next() {
        Some((l, 1)) if det.len() == 1 => t.linear_order(l),
        _ => None,
    };
    let sym2 = t.restrict_gl2(&w(1, -1))?;
    let det3 = t.restrict_gl2(&Weight::det_power(3))?;
    let contains = det3.iter().all(|(l, m)| sym2.get(l).copied().unwrap_or(0) >= *m);
    let mut covered = BTreeSet::new();
    for chi in WindowSet::standard(Side::Plus).enumerate(DEFAULT_BOX) {
        covered.extend(t.restrict_gl2(&chi)?.into_keys());
    }
    let ok = classes == 9 && dims == [1, 1, 1, 1, 1, 1, 2, 2, 2] && orth && det_order == Some(6) && contains && covered.len() == 9;
    Ok((
        ok,
        format!("{classes} classes, det of order {det_order:?}, ∇₊ covers {} irreps", covered.len()),
        json!({
            "classes": classes, "dims": dims, "orthogonal": orth, "det_order": det_order,
            "sym2_twist": sym2, "det3": det3, "covered": covered,
        }),
    ))
}

fn check_euler(_: u64) -> Result<(bool, String, Value)> {
    let irreps = conjugacy_classes().len() as i64;
    // F̃ ∖ {γ ≠ 0} is P⁵ on the six weight-one coordinates
    let p5 = slice_weights("F-resolution")?.base_weights.iter().filter(|x| **x == 1).count() as i64;
    let gr = crate::characters::binom(6, 2);
    let nabla = kapranov_set().len() as i64;
    let ok = irreps + p5 == 15 && gr == 15 && nabla == 15;
    Ok((ok, format!("{irreps} + {p5} = {} = χ(Gr(2,6)) = {gr} = |∇₋| = {nabla}", irreps + p5), json!({ "irreps": irreps, "p5": p5, "grassmannian": gr, "nabla_minus": nabla })))
}

fn check_bott(_: u64) -> Result<(bool, String, Value)> {
    let anchor: Vec<Value> = (0..=6)
        .map(|k| json!({ "k": k, "result": bott_pushforward(LineBundleWeight { a: -k, b: 0 }) }))
        .collect();
    let ok_anchor = (0..=6).all(|k| bott_pushforward(LineBundleWeight { a: -k, b: 0 }) == Some((0, w(0, -k))));
    let ok_acyclic = (-8..=8).all(|a| bott_pushforward(LineBundleWeight { a, b: a - 1 }).is_none());
    Ok((ok_anchor && ok_acyclic, format!("anchor {ok_anchor}, acyclic {ok_acyclic}"), json!({ "anchor": anchor, "acyclic": ok_acyclic })))
}

pub fn k_support_expected() -> Vec<Weight> {
    let mut v = vec![w(0, -3), w(0, -2), w(0, -1), w(0, 0), w(1, 1), w(2, 1), w(-3, -3), w(-2, -2), w(-1, -2), w(1, -2)];
    v.sort();
    v
}

fn check_k_resolution(_: u64) -> Result<(bool, String, Value)> {
    let s = bott::s_resolution();
    let k = bott::k_resolution();
    let last = k.max_degree();
    let support_ok = k.support() == k_support_expected();
    let final_ok = k.term(last) == crate::IrrepDecomp::single(w(0, -3)) && k.degrees_of(&w(0, -3)) == vec![last];
    let first_ok = s.min_degree() == 0 && s.term(0) == crate::IrrepDecomp::single(w(2, -2));
    let model = ResolutionModel::by_name("lambda2-geq")?;
    let exact = exactness_check(&model, &s, 4)?;
    let ok = support_ok && final_ok && first_ok && exact.is_none();
    Ok((
        ok,
        format!("support {support_ok}, final (0,−3) {final_ok}, first (2,−2) {first_ok}, first inexact degree {exact:?}"),
        json!({ "s_resolution": s, "k_support": k.support(), "first_inexact_degree": exact }),
    ))
}

fn check_orthogonality(_: u64) -> Result<(bool, String, Value)> {
    let pivot = w(2, -2);
    let plus = WindowSet::standard(Side::Plus).enumerate(DEFAULT_BOX);
    let strict = orthogonality_report(&plus, &pivot, &OnePs::LAMBDA2, true);
    let ks = bott::k_resolution().support();
    let weak = orthogonality_report(&ks, &pivot, &OnePs::LAMBDA2, false);
    let ok = strict.all_pass() && strict.passes.len() == 14 && weak.all_pass();
    Ok((
        ok,
        format!(
            "∇₊ strict: {} failures; 𝒦 weak: {} failures, boundary [{}]",
            strict.failures.len(),
            weak.failures.len(),
            weak.boundary.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        ),
        json!({ "plus": strict, "k_resolution": weak }),
    ))
}

pub const HOM_SERIES_RANGE: std::ops::RangeInclusive<i64> = -6..=4;

fn check_hom_series(_: u64) -> Result<(bool, String, Value)> {
    let s = bott::s_resolution();
    let q3 = bott::q3_resolution();
    let minus = kapranov_set();
    let mut bad = Vec::new();
    for mu in &minus {
        if bott::hom_from_complex_series(&s, mu, HOM_SERIES_RANGE)?.iter().any(|x| *x != 0) {
            bad.push(json!({ "pairing": "S", "mu": mu }));
        }
        if bott::hom_to_complex_series(&mu.dual(), &q3, HOM_SERIES_RANGE)?.iter().any(|x| *x != 0) {
            bad.push(json!({ "pairing": "S_dual", "mu": mu }));
        }
    }
    let control = bott::hom_from_complex_series(&s, &w(4, -4), HOM_SERIES_RANGE)?;
    let non_vacuous = control.iter().any(|x| *x != 0);
    let ok = bad.is_empty() && non_vacuous;
    Ok((
        ok,
        format!("{} nonzero series over {} weights; control (4,−4) nonzero: {non_vacuous}", bad.len(), minus.len()),
        json!({ "degrees": [HOM_SERIES_RANGE.start(), HOM_SERIES_RANGE.end()], "nonzero": bad, "control": control }),
    ))
}

fn check_closure(_: u64) -> Result<(bool, String, Value)> {
    let without = standard_closure(false, DEFAULT_BOX)?;
    let with = standard_closure(true, DEFAULT_BOX)?;
    let dets5 = (-5..=5).all(|k| without.contains(&Weight::det_power(k)));
    let no_03 = !without.contains(&w(0, -3));
    let steps: Vec<Option<usize>> = [w(0, -3), w(-2, -4), w(-6, -6)].iter().map(|c| with.step_of(c)).collect();
    let ordered = matches!(steps.as_slice(), [Some(a), Some(b), Some(c)] if a < b && b < c);
    let dets6 = (-6..=5).all(|k| with.contains(&Weight::det_power(k)));
    let ok = dets5 && no_03 && ordered && dets6;
    Ok((
        ok,
        format!("without 𝒦: det^±5 {dets5}, (0,−3) absent {no_03}; with 𝒦: steps {steps:?}, det^[−6,5] {dets6}"),
        json!({ "without_k": without.weights(), "with_k": with.weights(), "steps": steps }),
    ))
}

pub const KOSZUL_TRUNCATION: usize = 6;

fn check_koszul(_: u64) -> Result<(bool, String, Value)> {
    let plus = tor_weights(&koszul::z1_plus(), KOSZUL_TRUNCATION);
    let minus = tor_weights(&koszul::z1_minus(), KOSZUL_TRUNCATION);
    let expect_plus: BTreeSet<i64> = [0, -1, -2].into();
    let expect_minus: BTreeSet<i64> = (-5..=0).collect();
    let in_window = |s: &BTreeSet<i64>| s.iter().all(|x| -5 <= 2 * x && 2 * x < 5);
    let plus_ok = plus.verdict.verdict == Regularity::Regular
        && plus.total_support() == expect_plus
        && plus.top_degree() == Some(0)
        && in_window(&plus.total_support());
    let minus_ok = minus.verdict.verdict == Regularity::NotRegular
        && minus.total_support() == expect_minus
        && !in_window(&minus.total_support());
    let inconclusive = plus.verdict.verdict == Regularity::Inconclusive || minus.verdict.verdict == Regularity::Inconclusive;
    Ok((
        plus_ok && minus_ok,
        format!("Z₁⁺ {:?} {:?}; Z₁⁻ {:?} {:?}", plus.verdict.verdict, plus.total_support(), minus.verdict.verdict, minus.total_support()),
        json!({ "z1_plus": plus, "z1_minus": minus, "inconclusive": inconclusive }),
    ))
}

pub const GROUP_SAMPLES: usize = 100;

fn check_stability(seed: u64) -> Result<(bool, String, Value)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut broken = Vec::new();
    let fixtures = stability_fixtures();
    for (i, p) in fixtures.iter().enumerate() {
        for _ in 0..GROUP_SAMPLES {
            let gp = p.act(&random_gl2(&mut rng))?;
            for side in [Side::Minus, Side::Plus] {
                if semistable(p, side) != semistable(&gp, side) || unstable_stratum(p, side) != unstable_stratum(&gp, side) {
                    broken.push(json!({ "fixture": i, "side": side }));
                }
            }
        }
    }
    let examples: Vec<(PointV, bool)> = standard_form_examples();
    let misclassified: Vec<usize> =
        examples.iter().enumerate().filter(|(_, (p, e))| semistable(p, Side::Plus) != *e).map(|(i, _)| i).collect();
    let minus_rank: bool = fixtures.iter().all(|p| semistable(p, Side::Minus) == (p.phi_rank() == 2));
    let ok = broken.is_empty() && misclassified.is_empty() && minus_rank;
    Ok((
        ok,
        format!("{} fixtures × {GROUP_SAMPLES} group elements; {} invariance failures; {} misclassified", fixtures.len(), broken.len(), misclassified.len()),
        json!({ "invariance_failures": broken, "misclassified": misclassified, "examples": examples.len() }),
    ))
}

pub const FD_POINTS: usize = 100;

fn check_superpotential(seed: u64) -> Result<(bool, String, Value)> {
    let f = Cubic6::fermat();
    let fd = potential::finite_difference_check(&f, FD_POINTS, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let mut formulas_ok = true;
    for _ in 0..20 {
        let a: [_; 6] = std::array::from_fn(|_| random_q(&mut rng, 5));
        let b: [_; 6] = std::array::from_fn(|_| random_q(&mut rng, 5));
        let at = |psi: BinaryCubic| potential::eval_w(&f, &PointV::new([a.clone(), b.clone()], psi));
        formulas_ok &= at(BinaryCubic::t1_cubed()) == f.eval(&a)
            && at(BinaryCubic::fermat()) == f.eval(&a) + f.eval(&b)
            && at(BinaryCubic::t1_sq_t2()) == f.hat(&a, &a, &b);
    }
    let crit = potential::critical_stratum_check(&f, potential::SIGMA2_SAMPLES, seed);
    let ok = fd.passes && formulas_ok && crit.status == Status::Pass;
    Ok((
        ok,
        format!(
            "max relative FD error {:.2e}; formulas {formulas_ok}; critical {:?}; Σ₂ samples {} with {} vanishing",
            fd.max_relative_error, crit.status, crit.sigma2.samples, crit.sigma2.vanishing
        ),
        json!({ "finite_differences": fd, "formulas": formulas_ok, "critical": crit }),
    ))
}

fn check_slices(_: u64) -> Result<(bool, String, Value)> {
    let m = slice_weights("generic-sing-slice-minus")?;
    let p = slice_weights("generic-sing-slice-plus")?;
    let f = slice_weights("F-resolution")?;
    let ok = m.base_weights == [1; 5]
        && m.fibre_weights == [-2, -3]
        && p.base_weights == [2, 3]
        && p.fibre_weights == [-1; 5]
        && f.base_weights == [1, 1, 1, 1, 1, 1, 6];
    Ok((ok, format!("{}; {}; {}", m.description, p.description, f.description), json!({ "models": [m, p, f] })))
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_complete() {
        let names: BTreeSet<&str> = table().iter().map(|(n, _, _)| *n).collect();
        assert_eq!(names.len(), 13);
        assert!(run_check("nope", 0).is_err());
    }

    #[test]
    fn fast_checks_pass() {
        for n in ["eta-invariants", "window-sets", "euler-characteristics", "bott-anchor", "slice-models", "orthogonality"] {
            let c = run_check(n, 0).unwrap();
            assert_eq!(c.status, Status::Pass, "{n}: {}", c.detail);
        }
    }
}
