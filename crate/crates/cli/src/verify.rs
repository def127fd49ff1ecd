use std::collections::BTreeMap;
use std::fmt::Display;

use rayon::prelude::*;
use serde_json::{json, Value};

use hess_gkm::cohomology;
use hess_gkm::combinatorics::{
    self, binomial, enumerate_group_capped, enumerate_hessenberg, factorial, h_inversions, reduce,
};
use hess_gkm::rep;
use hess_gkm::{betti, classes, gkm};
use hess_gkm::{Error, HessenbergFunction, Result};

/// Pointwise suites (GKM membership, relation identities) enumerate edges
/// times classes times monomials; past this n they are reported as skipped.
const POINTWISE_LIMIT: usize = 5;

pub struct SweepConfig {
    pub max_n: usize,
    pub degrees: Vec<u32>,
    pub budget: u128,
    pub cap: usize,
}

pub struct SweepSummary {
    pub report: Value,
    pub failed: usize,
}

enum Check {
    Pass { name: String },
    Fail { name: String, expected: String, got: String },
    Skip { name: String, reason: &'static str },
}

impl Check {
    fn pass(name: impl Into<String>) -> Check {
        Check::Pass { name: name.into() }
    }

    fn fail(name: impl Into<String>, expected: impl Display, got: impl Display) -> Check {
        Check::Fail {
            name: name.into(),
            expected: expected.to_string(),
            got: got.to_string(),
        }
    }

    fn skip(name: impl Into<String>, reason: &'static str) -> Check {
        Check::Skip { name: name.into(), reason }
    }
}

/// Compares a computed value against its oracle, treating an over-budget
/// refusal as a skip and any other error as a failure in its own right.
fn gated<T, E: PartialEq<T> + Display>(
    name: &str,
    expected: E,
    got: Result<T>,
    render: impl Fn(&T) -> String,
) -> Check {
    match got {
        Ok(v) if expected == v => Check::pass(name),
        Ok(v) => Check::fail(name, expected, render(&v)),
        Err(Error::BudgetExceeded { .. }) => Check::skip(name, "over-budget"),
        Err(e) => Check::fail(name, expected, format!("error: {e}")),
    }
}

pub fn run_sweep(config: &SweepConfig) -> SweepSummary {
    let functions: Vec<HessenbergFunction> = (1..=config.max_n)
        .flat_map(enumerate_hessenberg)
        .collect();

    let outcomes: Vec<Vec<Check>> = functions
        .par_iter()
        .map(|h| checks_for(h, config))
        .collect();

    let mut passed = 0u64;
    let mut failed = 0usize;
    let mut skipped = 0u64;
    let mut passes: BTreeMap<String, u64> = BTreeMap::new();
    let mut failures: Vec<Value> = Vec::new();
    let mut skips: BTreeMap<(String, &'static str), u64> = BTreeMap::new();
    for (h, checks) in functions.iter().zip(&outcomes) {
        for check in checks {
            match check {
                Check::Pass { name } => {
                    passed += 1;
                    *passes.entry(name.clone()).or_insert(0) += 1;
                }
                Check::Fail { name, expected, got } => {
                    failed += 1;
                    failures.push(json!({
                        "h": h.values(),
                        "check": name,
                        "expected": expected,
                        "got": got,
                    }));
                }
                Check::Skip { name, reason } => {
                    skipped += 1;
                    *skips.entry((name.clone(), reason)).or_insert(0) += 1;
                }
            }
        }
    }

    let skipped_list: Vec<Value> = skips
        .iter()
        .map(|((name, reason), count)| {
            json!({ "check": name, "reason": reason, "count": count })
        })
        .collect();

    let report = json!({
        "schema": super::SCHEMA,
        "command": "verify",
        "max_n": config.max_n,
        "d": config.degrees,
        "functions": functions.len(),
        "checks": {
            "run": passed + failed as u64 + skipped,
            "passed": passed,
            "failed": failed,
            "skipped": skipped,
        },
        "passed_by_check": passes,
        "failures": failures,
        "skipped": skipped_list,
        "all_passed": failed == 0,
    });
    SweepSummary { report, failed }
}

fn checks_for(h: &HessenbergFunction, config: &SweepConfig) -> Vec<Check> {
    let n = h.n();
    let connected = h.is_connected();
    let budget = config.budget;
    let mut out = Vec::new();

    // Poincaré polynomial: the deletion recursion against the inversion
    // count, plus total mass and palindromy.
    let brute = match betti::poincare_bruteforce_capped(h, config.cap) {
        Ok(p) => p,
        Err(e) => {
            out.push(Check::fail("poincare-bruteforce", "a polynomial", format!("error: {e}")));
            return out;
        }
    };
    match betti::poincare_inductive(h) {
        Ok(inductive) if inductive == brute => out.push(Check::pass("poincare-routes-agree")),
        Ok(inductive) => out.push(Check::fail("poincare-routes-agree", &brute, inductive)),
        Err(e) => out.push(Check::fail("poincare-routes-agree", &brute, format!("error: {e}"))),
    }
    if brute.sum() == factorial(n) {
        out.push(Check::pass("poincare-mass"));
    } else {
        out.push(Check::fail("poincare-mass", factorial(n), brute.sum()));
    }
    if connected {
        if brute.is_palindromic() {
            out.push(Check::pass("poincare-palindromic"));
        } else {
            out.push(Check::fail("poincare-palindromic", "palindromic coefficients", &brute));
        }
    }

    // Connectivity criterion: one component exactly when h clears the
    // subdiagonal everywhere.
    match betti::component_count_capped(h, config.cap) {
        Ok(c) if (c == 1) == connected => out.push(Check::pass("connectivity-criterion")),
        Ok(c) => out.push(Check::fail(
            "connectivity-criterion",
            format!("components == 1 iff h(j) >= j+1 (criterion: {connected})"),
            format!("{c} components"),
        )),
        Err(e) => out.push(Check::fail(
            "connectivity-criterion",
            "a component count",
            format!("error: {e}"),
        )),
    }

    if connected {
        out.push(b2_closed_form_check(h, &brute));
        if let Some(check) = deletion_components_check(h) {
            out.push(check);
        }
    }

    // Pointwise class suites are only feasible at small n.
    if n <= POINTWISE_LIMIT {
        out.push(gkm_membership_check(h));
        if connected {
            out.push(relation_suite_check(h));
        }
    } else {
        out.push(Check::skip("class-gkm-membership", "pointwise-scale"));
        if connected {
            out.push(Check::skip("relation-suite", "pointwise-scale"));
        }
    }

    if connected {
        let b2 = betti::b2_closed_form(h).unwrap_or(u64::MAX);
        out.push(gated(
            "h2-rank-vs-elimination",
            b2,
            cohomology::h2_rank(h, budget),
            |r| r.to_string(),
        ));
        match cohomology::h2_presentation(h, budget) {
            Ok(pres) => {
                if pres.rank == b2 {
                    out.push(Check::pass("h2-presentation-rank"));
                } else {
                    out.push(Check::fail("h2-presentation-rank", b2, pres.rank));
                }
                out.push(realization_check("h2-realization", pres.realization_verified));
            }
            Err(e) => out.push(Check::fail(
                "h2-presentation-rank",
                b2,
                format!("error: {e}"),
            )),
        }
        out.push(beta_decomposition_check(h, budget));
    }

    for &d in &config.degrees {
        let du = d as usize;
        if du >= n || !hypothesis_holds(h, du) {
            continue;
        }
        out.extend(degree_d_checks(h, d, &brute, budget));
    }

    // Agreement of the restricted and full inversion statistics below the
    // band threshold, for every degree where the hypothesis has content.
    for dp in 1..=4usize.min(n.saturating_sub(1)) {
        if hypothesis_holds(h, dp) {
            out.push(inversion_agreement_check(h, dp, config.cap));
        }
    }

    out
}

fn hypothesis_holds(h: &HessenbergFunction, d: usize) -> bool {
    (1..=h.n().saturating_sub(d)).all(|j| h.value(j) >= j + d)
}

fn b2_closed_form_check(h: &HessenbergFunction, brute: &hess_gkm::symbolic::PoincarePolynomial) -> Check {
    let expected = brute.coefficient(1);
    match betti::b2_closed_form(h) {
        Ok(got) if got == expected => Check::pass("b2-closed-form"),
        Ok(got) => Check::fail("b2-closed-form", expected, got),
        Err(e) => Check::fail("b2-closed-form", expected, format!("error: {e}")),
    }
}

/// Deleting an index j with h(j) = j+1 from a connected function leaves one
/// component when j sits in the bottom set and binom(n-1, j-1) components
/// when it sits in the L set.
fn deletion_components_check(h: &HessenbergFunction) -> Option<Check> {
    let n = h.n();
    if n < 2 {
        return None;
    }
    let name = "deletion-components";
    let bottom = combinatorics::bottom_set(h);
    let lset = combinatorics::l_set(h);
    let mut applicable = false;
    for j in 1..n {
        if h.value(j) != j + 1 {
            continue;
        }
        applicable = true;
        let expected = if bottom.contains(&j) {
            1
        } else if lset.contains(&j) {
            binomial(n - 1, j - 1)
        } else {
            return Some(Check::fail(
                name,
                format!("j={j} in the bottom set or the L set"),
                "neither",
            ));
        };
        let got = match reduce(h, j).and_then(|hj| betti::component_count(&hj)) {
            Ok(c) => c,
            Err(e) => {
                return Some(Check::fail(name, expected, format!("j={j}: error: {e}")));
            }
        };
        if got != expected {
            return Some(Check::fail(
                name,
                format!("j={j}: {expected} components"),
                format!("{got} components"),
            ));
        }
    }
    applicable.then(|| Check::pass(name))
}

/// Every x, y, tau, and y-star class satisfies every edge congruence.
fn gkm_membership_check(h: &HessenbergFunction) -> Check {
    let name = "class-gkm-membership";
    let n = h.n();
    let graph = match gkm::build_graph(h) {
        Ok(g) => g,
        Err(e) => return Check::fail(name, "a graph", format!("error: {e}")),
    };
    let mut roster: Vec<(String, classes::EquivariantClass)> = Vec::new();
    let build = |roster: &mut Vec<(String, classes::EquivariantClass)>| -> Result<()> {
        for i in 1..=n {
            roster.push((format!("x_{i}"), classes::class_x(n, i)?));
        }
        for j in 1..=n {
            for k in 1..=n {
                roster.push((format!("y_{{{j},{k}}}"), classes::class_y(h, j, k)?));
            }
        }
        for cardinality in combinatorics::l_set(h) {
            for a in subsets_of_size(n, cardinality) {
                let label: Vec<String> = a.iter().map(|v| v.to_string()).collect();
                roster.push((
                    format!("tau_{{{}}}", label.join(",")),
                    classes::class_tau(h, &a)?,
                ));
            }
        }
        for i in 2..=n {
            for k in 1..=n {
                roster.push((format!("ystar_{{{i},{k}}}"), classes::class_y_star(h, i, k)?));
            }
        }
        Ok(())
    };
    if let Err(e) = build(&mut roster) {
        return Check::fail(name, "constructible classes", format!("error: {e}"));
    }
    for (label, class) in &roster {
        match class.is_gkm(&graph) {
            Ok(true) => {}
            Ok(false) => {
                return Check::fail(
                    name,
                    format!("{label} satisfies every edge congruence"),
                    "a violated congruence",
                );
            }
            Err(e) => return Check::fail(name, label, format!("error: {e}")),
        }
    }
    Check::pass(name)
}

fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn extend(start: usize, n: usize, size: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for v in start..=n {
            current.push(v);
            extend(v + 1, n, size, current, out);
            current.pop();
        }
    }
    extend(1, n, size, &mut current, &mut out);
    out
}

fn relation_suite_check(h: &HessenbergFunction) -> Check {
    let name = "relation-suite";
    match classes::verify_relation_suite(h) {
        Ok(report) if report.all_passed() => Check::pass(name),
        Ok(report) => {
            let first = report
                .entries
                .iter()
                .find(|e| !e.passed)
                .map(|e| e.name.clone())
                .unwrap_or_default();
            Check::fail(name, "all identities hold pointwise", format!("failed: {first}"))
        }
        Err(e) => Check::fail(name, "all identities hold pointwise", format!("error: {e}")),
    }
}

fn realization_check(name: &str, verified: Option<bool>) -> Check {
    match verified {
        Some(true) => Check::pass(name),
        Some(false) => Check::fail(name, "generators realize the computed quotient", "mismatch"),
        None => Check::skip(name, "over-budget"),
    }
}

fn beta_decomposition_check(h: &HessenbergFunction, budget: u128) -> Check {
    let name = "beta-decomposition";
    let formula = match rep::beta_formula(h) {
        Ok(f) => f,
        Err(e) => return Check::fail(name, "a formula decomposition", format!("error: {e}")),
    };
    let computed = rep::dot_action_character(h, 1, budget).and_then(|chi| rep::decompose(&chi));
    match computed {
        Ok(dec) if dec == formula => Check::pass(name),
        Ok(dec) => Check::fail(name, formula, dec),
        Err(Error::BudgetExceeded { .. }) => Check::skip(name, "over-budget"),
        Err(e) => Check::fail(name, formula, format!("error: {e}")),
    }
}

fn degree_d_checks(
    h: &HessenbergFunction,
    d: u32,
    brute: &hess_gkm::symbolic::PoincarePolynomial,
    budget: u128,
) -> Vec<Check> {
    let du = d as usize;
    let mut out = Vec::new();

    let name = format!("betti-low-degree-d{d}");
    let expected: Vec<u64> = (0..=du).map(|r| brute.coefficient(r)).collect();
    match betti::betti_low_degree(h, du) {
        Ok(got) if got == expected => out.push(Check::pass(&name)),
        Ok(got) => out.push(Check::fail(&name, format!("{expected:?}"), format!("{got:?}"))),
        Err(e) => out.push(Check::fail(&name, format!("{expected:?}"), format!("error: {e}"))),
    }

    match cohomology::h2d_presentation(h, d, budget) {
        Ok(pres) => {
            let name = format!("h2d-rank-d{d}");
            let expected = brute.coefficient(du);
            if pres.rank == expected {
                out.push(Check::pass(&name));
            } else {
                out.push(Check::fail(&name, expected, pres.rank));
            }
            out.push(realization_check(
                &format!("h2d-realization-d{d}"),
                pres.realization_verified,
            ));
        }
        Err(e) => out.push(Check::fail(
            format!("h2d-rank-d{d}"),
            "a presentation",
            format!("error: {e}"),
        )),
    }

    let name = format!("h2d-decomposition-d{d}");
    match rep::h2d_decomposition_formula(h, d) {
        Ok(formula) => {
            let computed =
                rep::dot_action_character(h, d, budget).and_then(|chi| rep::decompose(&chi));
            match computed {
                Ok(dec) if dec == formula => out.push(Check::pass(&name)),
                Ok(dec) => out.push(Check::fail(&name, formula, dec)),
                Err(Error::BudgetExceeded { .. }) => out.push(Check::skip(&name, "over-budget")),
                Err(e) => out.push(Check::fail(&name, formula, format!("error: {e}"))),
            }
        }
        Err(e) => out.push(Check::fail(&name, "a formula decomposition", format!("error: {e}"))),
    }

    // Below degree d the dot action is trivial: each character is constant at
    // the corresponding Betti number.
    let name = format!("triviality-below-d{d}");
    let mut verdict = Check::pass(&name);
    for p in 1..d {
        match rep::dot_action_character(h, p, budget) {
            Ok(chi) => {
                let expected = brute.coefficient(p as usize);
                if chi.values().iter().any(|v| *v != expected.into()) {
                    verdict = Check::fail(
                        &name,
                        format!("constant character {expected} in degree {p}"),
                        format!("{:?}", chi.values()),
                    );
                    break;
                }
            }
            Err(Error::BudgetExceeded { .. }) => {
                verdict = Check::skip(&name, "over-budget");
                break;
            }
            Err(e) => {
                verdict = Check::fail(
                    &name,
                    format!("a character in degree {p}"),
                    format!("error: {e}"),
                );
                break;
            }
        }
    }
    out.push(verdict);

    out
}

/// Below the threshold degree, the restricted inversion statistic agrees
/// with the full one, in both directions.
fn inversion_agreement_check(h: &HessenbergFunction, d: usize, cap: usize) -> Check {
    let name = format!("inversion-agreement-d{d}");
    let group = match enumerate_group_capped(h.n(), cap) {
        Ok(g) => g,
        Err(e) => return Check::fail(&name, "an enumerated group", format!("error: {e}")),
    };
    let bound = d as u64;
    for w in &group {
        let lh = match h_inversions(h, w) {
            Ok(v) => v,
            Err(e) => return Check::fail(&name, "a restricted count", format!("error: {e}")),
        };
        let l = w.inversions();
        if (lh < bound && lh != l) || (l < bound && lh != l) {
            return Check::fail(
                &name,
                format!("agreement below {d} at w={w}"),
                format!("restricted {lh}, full {l}"),
            );
        }
    }
    Check::pass(&name)
}
