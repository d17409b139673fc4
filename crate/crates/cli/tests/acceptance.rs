//! Acceptance suite: one test per shipped guarantee, each printing a PASS
//! line (run with `--nocapture` to see them) and holding its stated runtime
//! budget. Everything is decided in exact arithmetic or by certified
//! enclosures.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use markoff_fib::bounds::{c_window, check_lk_gt_alpha_inv2, karamata_lower_with_tol};
use markoff_fib::classifier::{
    duplicate_pairs, enumerate_solutions, is_duplicate_family_pair, m_k_indices, IndexTriple,
};
use markoff_fib::kfib::{kfib, kfib_int, KParam};
use markoff_fib::markoff::{minimal_triples_for_m, ValueTriple};
use markoff_fib::oracle::{brute_census, brute_solutions, cross_check};
use markoff_fib::quad::default_tol;
use markoff_fib::verify::{run_suites, VerifyConfig};

fn kp(k: u64) -> KParam {
    KParam::new(k).unwrap()
}

fn budget_check(name: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    assert!(
        elapsed <= budget,
        "{name} exceeded its {budget:?} budget: took {elapsed:?}"
    );
    println!("[PASS] {name} ({elapsed:?})");
}

fn node(x: u64, y: u64, z: u64, children: Vec<serde_json::Value>) -> serde_json::Value {
    serde_json::json!({
        "x": x.to_string(),
        "y": y.to_string(),
        "z": z.to_string(),
        "children": children,
    })
}

/// The first five levels of the 8-tree rooted at (2,2,12), upper child first.
fn expected_eight_tree() -> serde_json::Value {
    node(
        2,
        2,
        12,
        vec![node(
            2,
            12,
            70,
            vec![
                node(
                    2,
                    70,
                    408,
                    vec![
                        node(
                            2,
                            408,
                            2378,
                            vec![
                                node(2, 2378, 13860, vec![]),
                                node(408, 2378, 2910670, vec![]),
                            ],
                        ),
                        node(
                            70,
                            408,
                            85678,
                            vec![
                                node(70, 85678, 17991972, vec![]),
                                node(408, 85678, 104869802, vec![]),
                            ],
                        ),
                    ],
                ),
                node(
                    12,
                    70,
                    2518,
                    vec![
                        node(
                            12,
                            2518,
                            90578,
                            vec![
                                node(12, 90578, 3258290, vec![]),
                                node(2518, 90578, 684226200, vec![]),
                            ],
                        ),
                        node(
                            70,
                            2518,
                            528768,
                            vec![
                                node(70, 528768, 111038762, vec![]),
                                node(2518, 528768, 3994313402, vec![]),
                            ],
                        ),
                    ],
                ),
            ],
        )],
    )
}

fn count_nodes(v: &serde_json::Value) -> usize {
    1 + v["children"]
        .as_array()
        .unwrap()
        .iter()
        .map(count_nodes)
        .sum::<usize>()
}

#[test]
fn eight_tree_reproduction_via_cli() {
    let start = Instant::now();
    let output = Command::new(env!("CARGO_BIN_EXE_markoff-fib"))
        .args(["tree", "--root", "2,2,12", "--depth", "4", "--format", "json"])
        .output()
        .expect("binary runs");
    assert!(output.status.success(), "tree command failed: {output:?}");
    let got: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    let expected = expected_eight_tree();
    assert_eq!(count_nodes(&expected), 16);
    assert_eq!(got, expected, "tree structure or child order differs");
    // The Pell branch is the repeated upper (first) child all the way down.
    let mut cursor = &got;
    let bold = [
        (2u64, 2u64, 12u64),
        (2, 12, 70),
        (2, 70, 408),
        (2, 408, 2378),
        (2, 2378, 13860),
    ];
    for (i, (x, y, z)) in bold.iter().enumerate() {
        assert_eq!(cursor["x"], x.to_string());
        assert_eq!(cursor["y"], y.to_string());
        assert_eq!(cursor["z"], z.to_string());
        if i + 1 < bold.len() {
            cursor = &cursor["children"].as_array().unwrap()[0];
        }
    }
    budget_check("eight_tree_reproduction_via_cli", start, Duration::from_secs(1));
}

#[test]
fn pell_branch_parity_values() {
    let start = Instant::now();
    let k2 = kp(2);
    for n in 1..=20usize {
        let even = m_k_indices(k2, &IndexTriple::new(2, 2 * n, 2 * n + 2).unwrap());
        assert_eq!(even, BigInt::from(8), "even-b member n={n}");
        let odd = m_k_indices(k2, &IndexTriple::new(2, 2 * n + 1, 2 * n + 3).unwrap());
        assert!(odd.is_zero(), "odd-b member n={n}: m={odd}");
    }
    budget_check("pell_branch_parity_values", start, Duration::from_secs(1));
}

#[test]
fn nonminimal_solutions_are_exactly_the_pell_branch() {
    let start = Instant::now();
    let reports = run_suites(
        "theorem1",
        &VerifyConfig {
            c_max: Some(24),
            ..Default::default()
        },
    )
    .unwrap();
    for report in &reports {
        assert!(report.passed(), "{report:?}");
    }
    budget_check(
        "nonminimal_solutions_are_exactly_the_pell_branch",
        start,
        Duration::from_secs(30),
    );
}

#[test]
fn duplicate_family_identity_even_b() {
    let start = Instant::now();
    let k3 = kp(3);
    for a in (1..=19usize).step_by(2) {
        for b in (a + 3)..=40usize {
            if b % 2 != 0 {
                continue;
            }
            let lhs = m_k_indices(k3, &IndexTriple::new(a, b, a + b).unwrap());
            let rhs = m_k_indices(k3, &IndexTriple::new(a + 1, b - 1, a + b).unwrap());
            assert_eq!(lhs, rhs, "a={a} b={b}");
        }
    }
    budget_check("duplicate_family_identity_even_b", start, Duration::from_secs(5));
}

#[test]
fn duplicate_family_strict_inequality_odd_b() {
    let start = Instant::now();
    let k3 = kp(3);
    for a in (1..=19usize).step_by(2) {
        for b in (a + 3)..=40usize {
            if b % 2 == 0 {
                continue;
            }
            let lhs = m_k_indices(k3, &IndexTriple::new(a, b, a + b).unwrap());
            let rhs = m_k_indices(k3, &IndexTriple::new(a + 1, b - 1, a + b).unwrap());
            // Exact arithmetic fixes the direction: the difference is
            // 2 − 6·F_3(a)·F_3(a+1) < 0, e.g. m_3(1,5,6) = 23762 while
            // m_3(2,4,6) = 23778. Strictly unequal either way, so no
            // odd-b pair ever shares an m.
            let diff = &lhs - &rhs;
            let expected = BigInt::from(2) - 6 * kfib_int(k3, a) * kfib_int(k3, a + 1);
            assert_eq!(diff, expected, "a={a} b={b}");
            assert!(lhs < rhs, "a={a} b={b}: lhs={lhs} rhs={rhs}");
        }
    }
    budget_check(
        "duplicate_family_strict_inequality_odd_b",
        start,
        Duration::from_secs(5),
    );
}

fn expected_family_pairs(c_max: usize) -> BTreeSet<(IndexTriple, IndexTriple)> {
    let mut out = BTreeSet::new();
    for a in (1..=19usize).step_by(2) {
        for b in (a + 3)..=40 {
            if b % 2 == 0 && a + b <= c_max {
                out.insert((
                    IndexTriple::new(a, b, a + b).unwrap(),
                    IndexTriple::new(a + 1, b - 1, a + b).unwrap(),
                ));
            }
        }
    }
    out
}

#[test]
fn uniqueness_sweep() {
    let start = Instant::now();
    for k in [2u64, 4, 5, 6, 7, 8] {
        let pairs = duplicate_pairs(kp(k), 20).unwrap();
        assert!(
            pairs.is_empty(),
            "k={k}: minimal solutions share an m: {:?} {:?}",
            pairs[0].0.idx,
            pairs[0].1.idx
        );
    }
    let pairs = duplicate_pairs(kp(3), 20).unwrap();
    let got: BTreeSet<(IndexTriple, IndexTriple)> =
        pairs.iter().map(|(s, t)| (s.idx, t.idx)).collect();
    let expected = expected_family_pairs(20);
    assert_eq!(got, expected);
    assert_eq!(got.len(), 20);
    for (s, t) in &pairs {
        assert!(is_duplicate_family_pair(&s.idx, &t.idx));
        assert_eq!(s.m, t.m);
        assert_eq!(s.idx.a + s.idx.b, t.idx.a + t.idx.b);
        assert_eq!(s.idx.c, t.idx.c);
    }
    budget_check("uniqueness_sweep", start, Duration::from_secs(60));
}

#[test]
fn identity_suite_exact() {
    let start = Instant::now();
    let reports = run_suites("identities", &VerifyConfig::default()).unwrap();
    for report in &reports {
        for check in &report.checks {
            assert!(
                report.passed(),
                "identity check {} failed: {:?}",
                check.name,
                check.detail
            );
        }
    }
    budget_check("identity_suite_exact", start, Duration::from_secs(10));
}

#[test]
fn growth_constant_exceeds_inverse_alpha_squared() {
    let start = Instant::now();
    for k in 2..=100u64 {
        assert!(
            check_lk_gt_alpha_inv2(kp(k)).unwrap(),
            "k={k}: L_k <= alpha_k^-2"
        );
    }
    budget_check(
        "growth_constant_exceeds_inverse_alpha_squared",
        start,
        Duration::from_secs(10),
    );
}

#[test]
fn karamata_floor_below_every_extremal_m() {
    let start = Instant::now();
    for k in 2..=8u64 {
        let kk = kp(k);
        let s = if k == 2 { 1usize } else { 0 };
        for c in 2..=20usize {
            if c < 2 + s {
                continue;
            }
            let mut tol = default_tol();
            let mut bound = karamata_lower_with_tol(kk, c, &tol).unwrap();
            for a in 1..=(c - s) / 2 {
                let b = c - s - a;
                if b < a {
                    continue;
                }
                let m = m_k_indices(kk, &IndexTriple::new(a, b, c).unwrap());
                assert!(m.is_positive());
                let mut rounds = 0;
                while BigRational::from(m.clone()) <= *bound.hi() {
                    rounds += 1;
                    assert!(
                        rounds <= 40,
                        "k={k} a={a} b={b} c={c}: m={m} never cleared the certified floor"
                    );
                    tol /= BigRational::from(BigInt::from(1000));
                    bound = karamata_lower_with_tol(kk, c, &tol).unwrap();
                }
            }
        }
    }
    budget_check(
        "karamata_floor_below_every_extremal_m",
        start,
        Duration::from_secs(30),
    );
}

#[test]
fn oracle_equivalence() {
    let start = Instant::now();

    // Census: the dumb scan and the quadratic-formula route agree for every
    // m up to 2000; m = 8 has exactly the one tree root (2,2,12).
    let mismatch = (1u64..=2000)
        .into_par_iter()
        .map(|m| {
            let m = BigInt::from(m);
            let dumb = brute_census(&m).unwrap();
            let quick: BTreeSet<ValueTriple> =
                minimal_triples_for_m(&m).unwrap().into_iter().collect();
            let report = cross_check(&format!("m={m}"), &dumb, &quick);
            if report.is_match() {
                None
            } else {
                Some(format!("{report:?}"))
            }
        })
        .find_any(|r| r.is_some())
        .flatten();
    assert!(mismatch.is_none(), "census mismatch: {mismatch:?}");
    let eights = minimal_triples_for_m(&BigInt::from(8)).unwrap();
    assert_eq!(eights, vec![ValueTriple::from_u64(2, 2, 12).unwrap()]);

    // Value-space enumeration matches the index-space classifier.
    for k in 2..=6u64 {
        let kk = kp(k);
        let value_max = kfib(kk, 16);
        let reference = brute_solutions(kk, &value_max).unwrap();
        let candidate: BTreeSet<ValueTriple> = enumerate_solutions(kk, 16)
            .unwrap()
            .into_iter()
            .map(|s| s.values)
            .collect();
        let report = cross_check(&format!("k={k}"), &reference, &candidate);
        assert!(report.is_match(), "k={k}: {report:?}");
    }
    budget_check("oracle_equivalence", start, Duration::from_secs(300));
}

#[test]
fn c_window_soundness() {
    let start = Instant::now();
    for k in 2..=6u64 {
        let kk = kp(k);
        let mut seen = BTreeSet::new();
        for sol in enumerate_solutions(kk, 18).unwrap() {
            if !sol.minimal || !seen.insert(sol.m.clone()) {
                continue;
            }
            let w = c_window(kk, &sol.m).unwrap();
            assert!(
                w.candidates.len() <= 1,
                "k={k} m={}: window has {} elements",
                sol.m,
                w.candidates.len()
            );
            assert!(
                w.all_candidates().contains(&sol.idx.c),
                "k={k} m={} true c={}: window {:?} exceptional {:?}",
                sol.m,
                sol.idx.c,
                w.candidates,
                w.exceptional
            );
        }
    }
    budget_check("c_window_soundness", start, Duration::from_secs(60));
}
