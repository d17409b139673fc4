//! Verification suites aggregating every module's invariants into
//! machine-readable reports. The CLI `verify` subcommand and the acceptance
//! test target both run these.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{
    c_window, check_lk_gt_alpha_inv2, karamata_lower_with_tol, l3_alt_reading, lk,
};
use crate::classifier::{
    duplicate_pairs, enumerate_solutions, is_duplicate_family_pair, m_k_indices,
    nonminimal_family_check, predict_region, IndexTriple, Region,
};
use crate::kfib::{
    doubling_bound_sides, ge3_product, identity_sides, kfib, kfib_index_of, kfib_int,
    vajda_sides, Identity, KParam,
};
use crate::markoff::{minimal_triples_for_m, ValueTriple};
use crate::oracle::{brute_census, brute_solutions, cross_check};
use crate::quad::default_tol;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckOutcome {
    fn from_result(name: &str, result: std::result::Result<Option<String>, String>) -> Self {
        match result {
            Ok(detail) => CheckOutcome {
                name: name.to_string(),
                status: CheckStatus::Pass,
                detail,
            },
            Err(detail) => CheckOutcome {
                name: name.to_string(),
                status: CheckStatus::Fail,
                detail: Some(detail),
            },
        }
    }

    fn skip(name: &str, detail: String) -> Self {
        CheckOutcome {
            name: name.to_string(),
            status: CheckStatus::Skip,
            detail: Some(detail),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn failures(&self) -> Vec<&CheckOutcome> {
        self.checks
            .iter()
            .filter(|c| c.status == CheckStatus::Fail)
            .collect()
    }
}

/// Narrowing knobs for a suite run. `None` means the suite's documented
/// default sweep.
#[derive(Debug, Clone, Default)]
pub struct VerifyConfig {
    pub k: Option<u64>,
    pub c_max: Option<usize>,
    pub budget: Option<Duration>,
}

pub const SUITE_NAMES: [&str; 5] = ["identities", "theorem1", "theorem2", "bounds", "oracle"];

/// Runs one named suite, or all of them for "all".
pub fn run_suites(name: &str, cfg: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    let names: Vec<&str> = if name == "all" {
        SUITE_NAMES.to_vec()
    } else {
        vec![name]
    };
    let mut out = Vec::new();
    for suite in names {
        let report = match suite {
            "identities" => identities_suite(cfg),
            "theorem1" => theorem1_suite(cfg)?,
            "theorem2" => theorem2_suite(cfg)?,
            "bounds" => bounds_suite(cfg)?,
            "oracle" => oracle_suite(cfg)?,
            other => return Err(crate::Error::pre(format!("unknown suite '{other}'"))),
        };
        out.push(report);
    }
    Ok(out)
}

fn k_of(v: u64) -> KParam {
    KParam::new(v).expect("verify sweeps use k >= 1")
}

fn ks(cfg: &VerifyConfig, lo: u64, hi: u64) -> Vec<u64> {
    match cfg.k {
        Some(k) if (lo..=hi).contains(&k) => vec![k],
        Some(_) => Vec::new(),
        None => (lo..=hi).collect(),
    }
}

// ---------------------------------------------------------------- identities

fn identities_suite(cfg: &VerifyConfig) -> SuiteReport {
    let p = 30usize;
    let mut checks = Vec::new();

    checks.push(CheckOutcome::from_result("recurrence_consistency", {
        let mut r = Ok(None);
        'outer: for kk in ks(cfg, 1, 10) {
            let k = k_of(kk);
            for n in 2..=200usize {
                let expect = kk * kfib(k, n - 1) + kfib(k, n - 2);
                if kfib(k, n) != expect {
                    r = Err(format!("recurrence broken at k={kk}, n={n}"));
                    break 'outer;
                }
            }
        }
        r
    }));

    checks.push(CheckOutcome::from_result("vajda", {
        let mut r = Ok(None);
        'outer: for kk in ks(cfg, 1, 10) {
            let k = k_of(kk);
            for n in 1..=p {
                for i in 1..=p {
                    for j in 1..=p {
                        let (lhs, rhs) = vajda_sides(k, n, i, j).unwrap();
                        if lhs != rhs {
                            r = Err(format!("k={kk} n={n} i={i} j={j}: {lhs} != {rhs}"));
                            break 'outer;
                        }
                    }
                }
            }
        }
        r
    }));

    type IdentityCheck = (&'static str, Box<dyn Fn(KParam) -> Option<String>>);
    let simple_identities: Vec<IdentityCheck> = vec![
        (
            "sum",
            Box::new(move |k| {
                for a in 1..=p {
                    for b in 1..=p {
                        let (l, r) = identity_sides(k, Identity::Sum { a, b }).unwrap();
                        if l != r {
                            return Some(format!("k={} a={a} b={b}", k.get()));
                        }
                    }
                }
                None
            }),
        ),
        (
            "docagne",
            Box::new(move |k| {
                for a in 1..=p {
                    for b in a..=p {
                        let (l, r) = identity_sides(k, Identity::DOcagne { a, b }).unwrap();
                        if l != r {
                            return Some(format!("k={} a={a} b={b}", k.get()));
                        }
                    }
                }
                None
            }),
        ),
        (
            "catalan",
            Box::new(move |k| {
                for n in 1..=p {
                    for r in 1..=n {
                        let (l, rr) = identity_sides(k, Identity::Catalan { n, r }).unwrap();
                        if l != rr {
                            return Some(format!("k={} n={n} r={r}", k.get()));
                        }
                    }
                }
                None
            }),
        ),
        (
            "simson",
            Box::new(move |k| {
                for n in 1..=p {
                    let (l, r) = identity_sides(k, Identity::Simson { n }).unwrap();
                    if l != r {
                        return Some(format!("k={} n={n}", k.get()));
                    }
                }
                None
            }),
        ),
        (
            "sum_of_squares",
            Box::new(move |k| {
                for upper in 0..=p {
                    let (l, r) = identity_sides(k, Identity::SumOfSquares { upper }).unwrap();
                    if l != r {
                        return Some(format!("k={} N={upper}", k.get()));
                    }
                }
                None
            }),
        ),
    ];
    for (name, run) in simple_identities {
        let mut r = Ok(None);
        for kk in ks(cfg, 1, 10) {
            if let Some(detail) = run(k_of(kk)) {
                r = Err(detail);
                break;
            }
        }
        checks.push(CheckOutcome::from_result(name, r));
    }

    checks.push(CheckOutcome::from_result("growth_ratio_bound", {
        // k·F(a) ≤ F(a+1), equality exactly at a = 1.
        let mut r = Ok(None);
        'outer: for kk in ks(cfg, 1, 10) {
            let k = k_of(kk);
            for a in 1..=50usize {
                let lhs = kk * kfib(k, a);
                let rhs = kfib(k, a + 1);
                let ok = lhs <= rhs && (lhs == rhs) == (a == 1);
                if !ok {
                    r = Err(format!("k={kk} a={a}"));
                    break 'outer;
                }
            }
        }
        r
    }));

    checks.push(CheckOutcome::from_result("product_bounds", {
        // F(a)F(b) ≤ F(a+b−1) ≤ F(a)F(b)(1 + 1/k²), cross-multiplied by k²;
        // equality on the left iff a = 1 or b = 1, on the right iff a = b = 2.
        let mut r = Ok(None);
        'outer: for kk in ks(cfg, 1, 10) {
            let k = k_of(kk);
            for a in 1..=p {
                for b in 1..=p {
                    let prod = kfib(k, a) * kfib(k, b);
                    let mid = kfib(k, a + b - 1);
                    let left_ok = prod <= mid && (prod == mid) == (a == 1 || b == 1);
                    let lhs = kk * kk * &mid;
                    let rhs = (kk * kk + 1) * &prod;
                    let right_ok = lhs <= rhs && (lhs == rhs) == (a == 2 && b == 2);
                    if !left_ok || !right_ok {
                        r = Err(format!("k={kk} a={a} b={b}"));
                        break 'outer;
                    }
                }
            }
        }
        r
    }));

    checks.push(CheckOutcome::from_result("product_threshold", {
        // F_k(c) ≥ 3F_k(a)F_k(b) iff c ≥ a+b+1 or (a,b,c) = (2,2,4) for k = 2,
        // iff c ≥ a+b for k ≥ 3; equality only at (k,a,b,c) = (2,2,2,4), (3,1,1,2).
        let mut r = Ok(None);
        let mut equalities = Vec::new();
        'outer: for kk in ks(cfg, 2, 8) {
            let k = k_of(kk);
            for a in 1..=20usize {
                for b in 1..=20usize {
                    for c in 1..=20usize {
                        let ge = ge3_product(k, a, b, c).unwrap();
                        let expect = if kk == 2 {
                            c > a + b || (a, b, c) == (2, 2, 4)
                        } else {
                            c >= a + b
                        };
                        if ge != expect {
                            r = Err(format!("k={kk} a={a} b={b} c={c}: got {ge}"));
                            break 'outer;
                        }
                        if kfib(k, c) == 3u32 * kfib(k, a) * kfib(k, b) {
                            equalities.push((kk, a, b, c));
                        }
                    }
                }
            }
        }
        if r.is_ok() && cfg.k.is_none() && equalities != vec![(2, 2, 2, 4), (3, 1, 1, 2)] {
            r = Err(format!("unexpected equality cases: {equalities:?}"));
        }
        r
    }));

    checks.push(CheckOutcome::from_result("doubling_bound", {
        let mut r = Ok(None);
        'outer: for kk in ks(cfg, 4, 10) {
            let k = k_of(kk);
            for n in 1..=p {
                let (lhs, rhs) = doubling_bound_sides(k, n).unwrap();
                if lhs > rhs {
                    r = Err(format!("k={kk} n={n}: {lhs} > {rhs}"));
                    break 'outer;
                }
            }
        }
        r
    }));

    checks.push(CheckOutcome::from_result("index_roundtrip", {
        let mut r = Ok(None);
        'outer: for kk in ks(cfg, 1, 10) {
            let k = k_of(kk);
            for n in 2..=100usize {
                if kk == 1 && n == 2 {
                    // F_1(1) = F_1(2) = 1; the inverse picks the smallest index.
                    continue;
                }
                let back = kfib_index_of(k, &kfib(k, n));
                if back != Some(n) {
                    r = Err(format!("k={kk} n={n}: got {back:?}"));
                    break 'outer;
                }
            }
        }
        r
    }));

    SuiteReport {
        suite: "identities".to_string(),
        checks,
    }
}

// ----------------------------------------------------------------- theorem1

fn theorem1_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let c_max = cfg.c_max.unwrap_or(24);
    let mut checks = Vec::new();

    checks.push(CheckOutcome::from_result("pell_parity_values", {
        let k2 = k_of(2);
        let mut r = Ok(None);
        for n in 1..=20usize {
            let even = m_k_indices(k2, &IndexTriple::new(2, 2 * n, 2 * n + 2)?);
            let odd = m_k_indices(k2, &IndexTriple::new(2, 2 * n + 1, 2 * n + 3)?);
            if even != BigInt::from(8) || !odd.is_zero() {
                r = Err(format!("n={n}: even-b m={even}, odd-b m={odd}"));
                break;
            }
        }
        r
    }));

    for kk in ks(cfg, 2, 8) {
        let report = nonminimal_family_check(k_of(kk), c_max)?;
        let name = format!("nonminimal_family_k{kk}");
        if report.pass {
            let detail = if kk == 2 {
                Some(format!("{} Pell-branch members", report.family.len()))
            } else {
                None
            };
            checks.push(CheckOutcome {
                name,
                status: CheckStatus::Pass,
                detail,
            });
        } else {
            checks.push(CheckOutcome {
                name,
                status: CheckStatus::Fail,
                detail: Some(format!(
                    "missing={:?} unexpected={:?} wrong_m={:?}",
                    report.missing, report.unexpected, report.wrong_m
                )),
            });
        }
    }

    Ok(SuiteReport {
        suite: "theorem1".to_string(),
        checks,
    })
}

// ----------------------------------------------------------------- theorem2

fn expected_duplicate_family(c_max: usize) -> BTreeSet<(IndexTriple, IndexTriple)> {
    let mut out = BTreeSet::new();
    for a in (1..=19usize).step_by(2) {
        let mut b = a + 3;
        while b <= 40 {
            if b % 2 == 0 && a + b <= c_max {
                out.insert((
                    IndexTriple {
                        a,
                        b,
                        c: a + b,
                    },
                    IndexTriple {
                        a: a + 1,
                        b: b - 1,
                        c: a + b,
                    },
                ));
            }
            b += 1;
        }
    }
    out
}

fn theorem2_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let c_max = cfg.c_max.unwrap_or(20);
    let k3 = k_of(3);
    let mut checks = Vec::new();

    checks.push(CheckOutcome::from_result("duplicate_family_equality", {
        let mut r = Ok(None);
        'outer: for a in (1..=19usize).step_by(2) {
            for b in (a + 3)..=40usize {
                if b % 2 != 0 {
                    continue;
                }
                let lhs = m_k_indices(k3, &IndexTriple::new(a, b, a + b)?);
                let rhs = m_k_indices(k3, &IndexTriple::new(a + 1, b - 1, a + b)?);
                if lhs != rhs {
                    r = Err(format!("a={a} b={b}: {lhs} != {rhs}"));
                    break 'outer;
                }
            }
        }
        r
    }));

    checks.push(CheckOutcome::from_result("duplicate_family_odd_b", {
        // For odd b the two m values are never equal; exactly,
        // m_3(a,b,a+b) − m_3(a+1,b−1,a+b) = 2 − 6·F_3(a)·F_3(a+1) < 0.
        let mut r = Ok(None);
        'outer: for a in (1..=19usize).step_by(2) {
            for b in (a + 3)..=40usize {
                if b % 2 == 0 {
                    continue;
                }
                let lhs = m_k_indices(k3, &IndexTriple::new(a, b, a + b)?);
                let rhs = m_k_indices(k3, &IndexTriple::new(a + 1, b - 1, a + b)?);
                let expected_diff = BigInt::from(2) - 6 * kfib_int(k3, a) * kfib_int(k3, a + 1);
                if &lhs - &rhs != expected_diff || lhs >= rhs {
                    r = Err(format!(
                        "a={a} b={b}: lhs={lhs} rhs={rhs} diff={} expected {expected_diff}",
                        &lhs - &rhs
                    ));
                    break 'outer;
                }
            }
        }
        r
    }));

    for kk in ks(cfg, 2, 8) {
        let pairs = duplicate_pairs(k_of(kk), c_max)?;
        let name = format!("uniqueness_k{kk}");
        if kk == 3 {
            let got: BTreeSet<(IndexTriple, IndexTriple)> =
                pairs.iter().map(|(s, t)| (s.idx, t.idx)).collect();
            let expected = expected_duplicate_family(c_max);
            let family_form = pairs
                .iter()
                .all(|(s, t)| is_duplicate_family_pair(&s.idx, &t.idx));
            let conserved = pairs
                .iter()
                .all(|(s, t)| s.idx.a + s.idx.b == t.idx.a + t.idx.b && s.idx.c == t.idx.c);
            if got == expected && family_form && conserved {
                checks.push(CheckOutcome {
                    name,
                    status: CheckStatus::Pass,
                    detail: Some(format!("{} duplicate pairs, all in the family", got.len())),
                });
            } else {
                checks.push(CheckOutcome {
                    name,
                    status: CheckStatus::Fail,
                    detail: Some(format!(
                        "got {:?}, expected {:?}",
                        got, expected
                    )),
                });
            }
        } else if pairs.is_empty() {
            checks.push(CheckOutcome {
                name,
                status: CheckStatus::Pass,
                detail: None,
            });
        } else {
            checks.push(CheckOutcome {
                name,
                status: CheckStatus::Fail,
                detail: Some(format!(
                    "unexpected duplicate m: {} and {}",
                    pairs[0].0.idx, pairs[0].1.idx
                )),
            });
        }
    }

    Ok(SuiteReport {
        suite: "theorem2".to_string(),
        checks,
    })
}

// ------------------------------------------------------------------- bounds

fn bounds_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut checks = Vec::new();

    checks.push(CheckOutcome::from_result("lk_gt_alpha_inv_sq", {
        let mut r = Ok(None);
        for kk in ks(cfg, 2, 100) {
            if !check_lk_gt_alpha_inv2(k_of(kk))? {
                r = Err(format!("k={kk}: L_k <= alpha^-2"));
                break;
            }
        }
        r
    }));

    {
        let l3 = lk(k_of(3))?.value;
        let alt = l3_alt_reading(&default_tol());
        let (plo, phi) = l3.decimal(15);
        let (alo, ahi) = alt.decimal(15);
        checks.push(CheckOutcome {
            name: "l3_readings".to_string(),
            status: if alt.hi().is_negative() {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            detail: Some(format!(
                "primary in [{plo}, {phi}]; alt reading in [{alo}, {ahi}] \
                 (negative, unusable as a lower-bound constant)"
            )),
        });
    }

    checks.push(CheckOutcome::from_result("karamata_floor", {
        let mut r = Ok(None);
        'outer: for kk in ks(cfg, 2, 8) {
            let k = k_of(kk);
            let c_hi = cfg.c_max.unwrap_or(20);
            for c in 2..=c_hi {
                // Collect the (a,b) pairs at the extremal index for this c.
                let s = if kk == 2 { 1 } else { 0 };
                if c < 1 + 1 + s {
                    continue;
                }
                let mut tol = default_tol();
                let mut bound = karamata_lower_with_tol(k, c, &tol)?;
                for a in 1..=(c - s) / 2 {
                    let b = c - s - a;
                    if b < a {
                        continue;
                    }
                    let m = m_k_indices(k, &IndexTriple::new(a, b, c)?);
                    let mut refined = 0;
                    while BigRational::from(m.clone()) <= *bound.hi() {
                        refined += 1;
                        if refined > 40 {
                            r = Err(format!(
                                "k={kk} a={a} b={b} c={c}: m={m} never cleared the floor"
                            ));
                            break 'outer;
                        }
                        tol /= BigRational::from(BigInt::from(1000));
                        bound = karamata_lower_with_tol(k, c, &tol)?;
                    }
                }
            }
        }
        r
    }));

    checks.push(CheckOutcome::from_result("m_monotonicity", {
        // m_k(a,b,c) strictly decreasing in (a,b) pointwise, c fixed >= 3.
        let mut r = Ok(None);
        'outer: for kk in ks(cfg, 2, 6) {
            let k = k_of(kk);
            for c in 3..=cfg.c_max.unwrap_or(15) {
                let mut table = Vec::new();
                for a in 1..=c {
                    for b in a..=c {
                        table.push((a, b, m_k_indices(k, &IndexTriple::new(a, b, c)?)));
                    }
                }
                for (a, b, m1) in &table {
                    for (a2, b2, m2) in &table {
                        if a <= a2 && b <= b2 {
                            let ok = if (a, b) == (a2, b2) {
                                m1 == m2
                            } else {
                                m1 > m2
                            };
                            if !ok {
                                r = Err(format!(
                                    "k={kk} c={c}: m({a},{b})={m1} vs m({a2},{b2})={m2}"
                                ));
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
        r
    }));

    checks.push(CheckOutcome::from_result("window_soundness", {
        let mut r = Ok(None);
        'outer: for kk in ks(cfg, 2, 6) {
            let k = k_of(kk);
            let mut seen = BTreeSet::new();
            for sol in enumerate_solutions(k, cfg.c_max.unwrap_or(18))? {
                if !sol.minimal || !seen.insert(sol.m.clone()) {
                    continue;
                }
                let w = c_window(k, &sol.m)?;
                if w.candidates.len() > 1 {
                    r = Err(format!("k={kk} m={}: window wider than 1: {:?}", sol.m, w.candidates));
                    break 'outer;
                }
                if !w.all_candidates().contains(&sol.idx.c) {
                    r = Err(format!(
                        "k={kk} m={} c={}: window {:?} + {:?} misses the true index",
                        sol.m, sol.idx.c, w.candidates, w.exceptional
                    ));
                    break 'outer;
                }
            }
        }
        r
    }));

    checks.push(CheckOutcome::from_result("region_prediction", {
        let mut r = Ok(None);
        'outer: for kk in ks(cfg, 2, 8) {
            let k = k_of(kk);
            for c in 1..=20usize {
                for b in 1..=c {
                    for a in 1..=b {
                        let t = IndexTriple { a, b, c };
                        let v = predict_region(k, &t)?;
                        let m = m_k_indices(k, &t);
                        let ok = match v.predicted {
                            Region::Positive => m.is_positive(),
                            Region::NonPositive => !m.is_positive(),
                            Region::Unknown => false,
                        };
                        if !ok {
                            r = Err(format!("k={kk} {t}: predicted {:?}, m={m}", v.predicted));
                            break 'outer;
                        }
                    }
                }
            }
        }
        r
    }));

    Ok(SuiteReport {
        suite: "bounds".to_string(),
        checks,
    })
}

// ------------------------------------------------------------------- oracle

fn oracle_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let budget = cfg.budget.unwrap_or(Duration::from_secs(240));
    let start = Instant::now();
    let mut checks = Vec::new();

    // Census equivalence in chunks so the budget can be honored.
    let mut census_outcome = None;
    let chunk = 100u64;
    let mut lo = 1u64;
    while lo <= 2000 {
        if start.elapsed() > budget {
            census_outcome = Some(CheckOutcome::skip(
                "census_equivalence",
                format!("budget exhausted before m={lo}"),
            ));
            break;
        }
        let hi = (lo + chunk - 1).min(2000);
        let mismatch: Option<String> = (lo..=hi)
            .into_par_iter()
            .map(|m| {
                let m = BigInt::from(m);
                let dumb = brute_census(&m)?;
                let quick: BTreeSet<ValueTriple> =
                    minimal_triples_for_m(&m)?.into_iter().collect();
                let report = cross_check(&format!("census m={m}"), &dumb, &quick);
                if report.is_match() {
                    Ok(None)
                } else {
                    Ok(Some(serde_json::to_string(&report).unwrap()))
                }
            })
            .collect::<Result<Vec<Option<String>>>>()?
            .into_iter()
            .flatten()
            .next();
        if let Some(detail) = mismatch {
            census_outcome = Some(CheckOutcome {
                name: "census_equivalence".to_string(),
                status: CheckStatus::Fail,
                detail: Some(detail),
            });
            break;
        }
        lo = hi + 1;
    }
    checks.push(census_outcome.unwrap_or(CheckOutcome {
        name: "census_equivalence".to_string(),
        status: CheckStatus::Pass,
        detail: Some("m = 1..=2000, both census routes agree".to_string()),
    }));

    for kk in ks(cfg, 2, 6) {
        let name = format!("solutions_equivalence_k{kk}");
        if start.elapsed() > budget {
            checks.push(CheckOutcome::skip(&name, "budget exhausted".to_string()));
            continue;
        }
        let k = k_of(kk);
        let cap = cfg.c_max.unwrap_or(16);
        let value_max = kfib(k, cap);
        let reference = brute_solutions(k, &value_max)?;
        let candidate: BTreeSet<ValueTriple> = enumerate_solutions(k, cap)?
            .into_iter()
            .map(|s| s.values)
            .collect();
        let report = cross_check(&format!("k={kk} values<=F({cap})"), &reference, &candidate);
        if report.is_match() {
            checks.push(CheckOutcome {
                name,
                status: CheckStatus::Pass,
                detail: Some(format!("{} solutions", report.reference_size)),
            });
        } else {
            checks.push(CheckOutcome {
                name,
                status: CheckStatus::Fail,
                detail: Some(serde_json::to_string(&report).unwrap()),
            });
        }
    }

    Ok(SuiteReport {
        suite: "oracle".to_string(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(run_suites("nope", &VerifyConfig::default()).is_err());
    }

    #[test]
    fn failure_accounting() {
        let report = SuiteReport {
            suite: "constructed".to_string(),
            checks: vec![
                CheckOutcome::from_result("good", Ok(None)),
                CheckOutcome::from_result("bad", Err("counterexample".to_string())),
                CheckOutcome::skip("slow", "budget".to_string()),
            ],
        };
        assert!(!report.passed());
        assert_eq!(report.failures().len(), 1);
        assert_eq!(report.failures()[0].name, "bad");
        // Skips alone do not fail a suite.
        let report = SuiteReport {
            suite: "constructed".to_string(),
            checks: vec![CheckOutcome::skip("slow", "budget".to_string())],
        };
        assert!(report.passed());
    }

    #[test]
    fn theorem1_defaults_pass() {
        let reports = run_suites("theorem1", &VerifyConfig::default()).unwrap();
        assert!(reports.iter().all(|r| r.passed()), "{reports:?}");
    }

    #[test]
    fn theorem2_defaults_pass() {
        let reports = run_suites("theorem2", &VerifyConfig::default()).unwrap();
        assert!(reports.iter().all(|r| r.passed()), "{reports:?}");
    }

    #[test]
    fn restricted_k_runs_subset() {
        let cfg = VerifyConfig {
            k: Some(5),
            c_max: Some(10),
            budget: None,
        };
        let reports = run_suites("theorem1", &cfg).unwrap();
        assert!(reports[0]
            .checks
            .iter()
            .any(|c| c.name == "nonminimal_family_k5"));
        assert!(!reports[0]
            .checks
            .iter()
            .any(|c| c.name == "nonminimal_family_k2"));
    }
}
