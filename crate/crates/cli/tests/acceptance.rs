//! One test per acceptance criterion, run one at a time so the timing
//! budgets measure each criterion alone.

use std::process::Command;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::Value;

use hess_gkm::cohomology::{self, DEFAULT_LA_BUDGET};
use hess_gkm::combinatorics::{
    self, binomial, enumerate_group_capped, enumerate_hessenberg, factorial, h_inversions, reduce,
};
use hess_gkm::rep;
use hess_gkm::{betti, classes, gkm};
use hess_gkm::{HessenbergFunction, Result};

static SERIAL: Mutex<()> = Mutex::new(());

fn serial() -> std::sync::MutexGuard<'static, ()> {
    SERIAL.lock().unwrap_or_else(|poisoned| poisoned.into_inner())
}

fn finish(criterion: u32, what: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    assert!(
        elapsed < budget,
        "criterion {criterion} took {elapsed:?}, budget {budget:?}"
    );
    println!("[PASS] criterion {criterion} — {what} ({elapsed:.1?} < {budget:?})");
}

fn functions_up_to(max_n: usize) -> Vec<HessenbergFunction> {
    (1..=max_n).flat_map(enumerate_hessenberg).collect()
}

fn cli_report(args: &[&str]) -> (i32, Value) {
    let output = Command::new(env!("CARGO_BIN_EXE_hess-gkm"))
        .args(args)
        .output()
        .expect("binary runs");
    let code = output.status.code().expect("exit code");
    let stdout = String::from_utf8(output.stdout).expect("utf-8 stdout");
    let value = serde_json::from_str(&stdout).expect("stdout is a JSON report");
    (code, value)
}

fn hypothesis_holds(h: &HessenbergFunction, d: usize) -> bool {
    (1..=h.n().saturating_sub(d)).all(|j| h.value(j) >= j + d)
}

#[test]
fn criterion_01_analyze_reports_b2_17_by_three_routes() {
    let _guard = serial();
    let start = Instant::now();

    let (code, report) = cli_report(&["analyze", "3,3,4,5,5"]);
    assert_eq!(code, 0);
    assert_eq!(report["bottom_set"], serde_json::json!([2]));
    assert_eq!(report["l_set"], serde_json::json!([3, 4]));
    assert_eq!(report["b2"]["closed_form"], 17);
    assert_eq!(report["b2"]["bruteforce"], 17);
    assert_eq!(report["b2"]["rank_route"], 17, "degree-1 rank minus 5");
    assert_eq!(report["b2"]["agree"], true);
    assert_eq!(report["all_checks_passed"], true);

    finish(
        1,
        "analyze (3,3,4,5,5): bottom {2}, L {3,4}, b2 = 17 three ways",
        start,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_02_h2_reports_the_n8_decomposition_formula_only() {
    let _guard = serial();
    let start = Instant::now();

    let (code, report) = cli_report(&["h2", "2,3,6,6,6,7,8,8"]);
    assert_eq!(code, 0);
    assert_eq!(
        report["decomposition"]["formula"],
        serde_json::json!({"(8)": 3, "(7,1)": 2, "(6,2)": 2})
    );
    assert_eq!(
        report["decomposition"]["display"],
        "3*M(8) + 2*M(7,1) + 2*M(6,2)"
    );
    // 3*1 + 2*8 + 2*28: the module dimensions weighted by multiplicity.
    assert_eq!(report["decomposition"]["dimension"], 75);
    assert_eq!(report["presentation"]["rank"], 75);
    assert_eq!(report["consistency"]["rank_equals_b2_closed_form"], true);
    assert_eq!(report["consistency"]["decomposition_dimension_equals_b2"], true);
    // Formula-only at n = 8: nothing tries to build the S_8 graph.
    assert_eq!(report["character_check"]["status"], "skipped-over-budget");
    assert_eq!(report["presentation"]["realization"], "skipped-over-budget");

    finish(
        2,
        "h2 (2,3,6,6,6,7,8,8): 3*M(8) + 2*M(7,1) + 2*M(6,2), dimension 75 = b2",
        start,
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_03_poincare_routes_agree_exhaustively_to_n7() {
    let _guard = serial();
    let start = Instant::now();

    let functions = functions_up_to(7);
    let at_n7 = functions.iter().filter(|h| h.n() == 7).count();
    assert_eq!(at_n7, 429);

    let brute: Vec<_> = functions
        .par_iter()
        .map(|h| betti::poincare_bruteforce(h).unwrap())
        .collect();

    let mut cache = betti::PoincareCache::new();
    for (h, brute) in functions.iter().zip(&brute) {
        let inductive = betti::poincare_inductive_with(h, &mut cache).unwrap();
        assert_eq!(&inductive, brute, "routes disagree at h = {h}");
        assert_eq!(brute.sum(), factorial(h.n()), "mass is n! at h = {h}");
        if h.is_connected() {
            assert!(brute.is_palindromic(), "not palindromic at h = {h}");
        }
    }

    finish(
        3,
        &format!(
            "{} functions (429 at n = 7): deletion recursion == inversion count, mass n!, palindromic when connected",
            functions.len()
        ),
        start,
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_04_b2_closed_form_matches_the_inversion_count_to_n7() {
    let _guard = serial();
    let start = Instant::now();

    let connected: Vec<_> = functions_up_to(7)
        .into_iter()
        .filter(HessenbergFunction::is_connected)
        .collect();
    connected.par_iter().for_each(|h| {
        let brute = betti::poincare_bruteforce(h).unwrap().coefficient(1);
        let closed = betti::b2_closed_form(h).unwrap();
        assert_eq!(closed, brute, "closed form misses at h = {h}");
    });

    finish(
        4,
        &format!("{} connected functions: closed form == #{{w : one restricted inversion}}", connected.len()),
        start,
        Duration::from_secs(120),
    );
}

/// Every x, y, tau, and y-star class on h, with a printable label.
fn class_roster(h: &HessenbergFunction) -> Result<Vec<(String, classes::EquivariantClass)>> {
    let n = h.n();
    let mut roster = Vec::new();
    for i in 1..=n {
        roster.push((format!("x_{i}"), classes::class_x(n, i)?));
    }
    for j in 1..=n {
        for k in 1..=n {
            roster.push((format!("y_{{{j},{k}}}"), classes::class_y(h, j, k)?));
        }
    }
    for cardinality in combinatorics::l_set(h) {
        let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
        while let Some(prefix) = stack.pop() {
            if prefix.len() == cardinality {
                roster.push((format!("tau_{prefix:?}"), classes::class_tau(h, &prefix)?));
                continue;
            }
            let low = prefix.last().map_or(1, |&v| v + 1);
            for v in low..=n {
                let mut next = prefix.clone();
                next.push(v);
                stack.push(next);
            }
        }
    }
    for i in 2..=n {
        for k in 1..=n {
            roster.push((format!("ystar_{{{i},{k}}}"), classes::class_y_star(h, i, k)?));
        }
    }
    Ok(roster)
}

#[test]
fn criterion_05_all_classes_pass_every_edge_congruence_to_n5() {
    let _guard = serial();
    let start = Instant::now();

    let functions = functions_up_to(5);
    let class_count: usize = functions
        .par_iter()
        .map(|h| {
            let graph = gkm::build_graph(h).unwrap();
            let roster = class_roster(h).unwrap();
            for (label, class) in &roster {
                assert!(
                    class.is_gkm(&graph).unwrap(),
                    "{label} violates a congruence on h = {h}"
                );
            }
            roster.len()
        })
        .sum();

    finish(
        5,
        &format!(
            "{class_count} classes over {} functions pass every edge congruence",
            functions.len()
        ),
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_06_relation_suite_holds_pointwise_to_n5() {
    let _guard = serial();
    let start = Instant::now();

    let connected: Vec<_> = functions_up_to(5)
        .into_iter()
        .filter(HessenbergFunction::is_connected)
        .collect();
    let identity_count: usize = connected
        .par_iter()
        .map(|h| {
            let report = classes::verify_relation_suite(h).unwrap();
            for entry in &report.entries {
                assert!(entry.passed, "{} fails on h = {h}", entry.name);
            }
            report.entries.len()
        })
        .sum();
    assert!(identity_count > 0);

    finish(
        6,
        &format!(
            "{identity_count} identities over {} connected functions hold pointwise",
            connected.len()
        ),
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_07_presentation_rank_and_realization_match_elimination_to_n5() {
    let _guard = serial();
    let start = Instant::now();

    let connected: Vec<_> = functions_up_to(5)
        .into_iter()
        .filter(HessenbergFunction::is_connected)
        .collect();
    connected.par_iter().for_each(|h| {
        let pres = cohomology::h2_presentation(h, DEFAULT_LA_BUDGET).unwrap();
        let rank = cohomology::h2_rank(h, DEFAULT_LA_BUDGET).unwrap();
        assert_eq!(pres.rank, rank, "rank differs from elimination at h = {h}");
        assert_eq!(
            pres.realization_verified,
            Some(true),
            "generators fail to realize the quotient at h = {h}"
        );
    });

    finish(
        7,
        &format!(
            "{} connected functions: presentation rank == degree-1 dimension − n, generators span",
            connected.len()
        ),
        start,
        Duration::from_secs(300),
    );
}

#[test]
fn criterion_08_dot_character_decomposes_to_the_beta_formula_to_n5() {
    let _guard = serial();
    let start = Instant::now();

    let connected: Vec<_> = functions_up_to(5)
        .into_iter()
        .filter(HessenbergFunction::is_connected)
        .collect();
    connected.par_iter().for_each(|h| {
        let chi = rep::dot_action_character(h, 1, DEFAULT_LA_BUDGET).unwrap();
        let computed = rep::decompose(&chi).unwrap();
        let formula = rep::beta_formula(h).unwrap();
        assert_eq!(computed, formula, "decompositions differ at h = {h}");
    });

    finish(
        8,
        &format!(
            "{} connected functions: decompose(dot character) == beta formula",
            connected.len()
        ),
        start,
        Duration::from_secs(300),
    );
}

#[test]
fn criterion_09_higher_degree_pieces_match_at_desk_scale() {
    let _guard = serial();
    let start = Instant::now();

    // Betti prefixes from the closed form against brute force, n <= 6.
    let mut qualifying = 0usize;
    for h in functions_up_to(6) {
        for d in [2usize, 3] {
            if d >= h.n() || !hypothesis_holds(&h, d) {
                continue;
            }
            qualifying += 1;
            let brute = betti::poincare_bruteforce(&h).unwrap();
            let expected: Vec<u64> = (0..=d).map(|r| brute.coefficient(r)).collect();
            let got = betti::betti_low_degree(&h, d).unwrap();
            assert_eq!(got, expected, "Betti prefix differs at h = {h}, d = {d}");
        }
    }
    assert!(qualifying > 0);

    // Exact quotient ranks, decompositions, and triviality below d where the
    // elimination fits: all of n <= 4 with d = 2, plus an n = 5 spot check.
    let mut exact_cases: Vec<(HessenbergFunction, u32)> = functions_up_to(4)
        .into_iter()
        .filter(|h| h.n() >= 3 && hypothesis_holds(h, 2))
        .map(|h| (h, 2u32))
        .collect();
    assert_eq!(exact_cases.len(), 3);
    exact_cases.push(("3,4,5,5,5".parse().unwrap(), 2));

    for (h, d) in &exact_cases {
        let pres = cohomology::h2d_presentation(h, *d, DEFAULT_LA_BUDGET).unwrap();
        let rank = cohomology::ordinary_rank(h, *d, DEFAULT_LA_BUDGET).unwrap();
        assert_eq!(pres.rank, rank, "quotient rank differs at h = {h}");
        assert_eq!(pres.realization_verified, Some(true));

        let chi = rep::dot_action_character(h, *d, DEFAULT_LA_BUDGET).unwrap();
        let computed = rep::decompose(&chi).unwrap();
        let formula = rep::h2d_decomposition_formula(h, *d).unwrap();
        assert_eq!(computed, formula, "decompositions differ at h = {h}");

        let brute = betti::poincare_bruteforce(h).unwrap();
        for p in 1..*d {
            let chi = rep::dot_action_character(h, p, DEFAULT_LA_BUDGET).unwrap();
            let expected = brute.coefficient(p as usize);
            for value in chi.values() {
                assert_eq!(
                    *value,
                    expected.into(),
                    "action is not trivial in degree {p} at h = {h}"
                );
            }
        }
    }

    // One d = 3 case fits as well and exercises two trivial degrees.
    let flag4: HessenbergFunction = "4,4,4,4".parse().unwrap();
    let brute = betti::poincare_bruteforce(&flag4).unwrap();
    for p in 1..3u32 {
        let chi = rep::dot_action_character(&flag4, p, DEFAULT_LA_BUDGET).unwrap();
        for value in chi.values() {
            assert_eq!(*value, brute.coefficient(p as usize).into());
        }
    }

    finish(
        9,
        &format!(
            "{qualifying} qualifying (h, d) Betti prefixes; {} exact quotient cases incl. an n = 5 spot check",
            exact_cases.len()
        ),
        start,
        Duration::from_secs(600),
    );
}

#[test]
fn criterion_10_restricted_inversions_agree_below_the_threshold_to_n6() {
    let _guard = serial();
    let start = Instant::now();

    let mut checked = 0u64;
    for h in functions_up_to(6) {
        let n = h.n();
        let group = enumerate_group_capped(n, 8).unwrap();
        for d in 1..=4u64.min(n.saturating_sub(1) as u64) {
            if !hypothesis_holds(&h, d as usize) {
                continue;
            }
            for w in &group {
                let restricted = h_inversions(&h, w).unwrap();
                let full = w.inversions();
                if restricted < d {
                    assert_eq!(restricted, full, "h = {h}, w = {w}, d = {d}");
                }
                if full < d {
                    assert_eq!(restricted, full, "h = {h}, w = {w}, d = {d}");
                }
                checked += 1;
            }
        }
    }
    assert!(checked > 0);

    finish(
        10,
        &format!("{checked} (h, d, w) triples: restricted == full below the threshold, both directions"),
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_11_connectivity_criterion_and_deletion_component_counts_to_n6() {
    let _guard = serial();
    let start = Instant::now();

    let functions = functions_up_to(6);
    functions.par_iter().for_each(|h| {
        let components = betti::component_count(h).unwrap();
        assert_eq!(
            components == 1,
            h.is_connected(),
            "connectivity criterion fails at h = {h}"
        );
    });

    let mut deletions = 0usize;
    for h in &functions {
        if !h.is_connected() || h.n() < 2 {
            continue;
        }
        let n = h.n();
        for j in combinatorics::l_set(h) {
            let reduced = reduce(h, j).unwrap();
            let components = betti::component_count(&reduced).unwrap();
            assert_eq!(
                components,
                binomial(n - 1, j - 1),
                "deleted graph component count fails at h = {h}, j = {j}"
            );
            deletions += 1;
        }
        for j in combinatorics::bottom_set(h) {
            let reduced = reduce(h, j).unwrap();
            assert_eq!(
                betti::component_count(&reduced).unwrap(),
                1,
                "deleting a bottom index must stay connected at h = {h}, j = {j}"
            );
            deletions += 1;
        }
    }
    assert!(deletions > 0);

    finish(
        11,
        &format!(
            "{} functions: connected iff h(j) >= j+1; {deletions} deletions hit their component counts",
            functions.len()
        ),
        start,
        Duration::from_secs(60),
    );
}
