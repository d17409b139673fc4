//! Classification of Markoff m-triples whose components are k-Fibonacci
//! numbers (k ≥ 2): closed-form sign prediction for m_k(a,b,c), exhaustive
//! enumeration, the unique non-minimal Pell branch, duplicate-m detection
//! (the k = 3 family), and complete find-by-m through the c-window.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::c_window;
use crate::kfib::{cache_for, KParam};
use crate::markoff::ValueTriple;
use crate::{Error, Result};

/// Ordered index triple 1 ≤ a ≤ b ≤ c. Unordered inputs are sorted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IndexTriple {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl IndexTriple {
    pub fn new(a: usize, b: usize, c: usize) -> Result<Self> {
        if a < 1 || b < 1 || c < 1 {
            return Err(Error::pre("indices must be >= 1"));
        }
        let mut v = [a, b, c];
        v.sort_unstable();
        Ok(IndexTriple {
            a: v[0],
            b: v[1],
            c: v[2],
        })
    }

    /// Sort key matching the documented output order: c-major, then a, b.
    fn sort_key(&self) -> (usize, usize, usize) {
        (self.c, self.a, self.b)
    }
}

impl fmt::Display for IndexTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// m_k(a,b,c) = F_k(a)² + F_k(b)² + F_k(c)² − 3·F_k(a)·F_k(b)·F_k(c), exact.
pub fn m_k_indices(k: KParam, t: &IndexTriple) -> BigInt {
    let f = cache_for(k);
    let fa = f.get_int(t.a);
    let fb = f.get_int(t.b);
    let fc = f.get_int(t.c);
    &fa * &fa + &fb * &fb + &fc * &fc - 3 * fa * fb * fc
}

/// A verified solution: m_k(a,b,c) > 0 with all components k-Fibonacci.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub k: KParam,
    pub idx: IndexTriple,
    pub values: ValueTriple,
    pub m: BigInt,
    pub minimal: bool,
}

impl Solution {
    /// Builds the solution record for (k, a, b, c) when m_k(a,b,c) > 0.
    pub fn from_indices(k: KParam, idx: IndexTriple) -> Option<Solution> {
        let m = m_k_indices(k, &idx);
        if !m.is_positive() {
            return None;
        }
        let f = cache_for(k);
        let values = ValueTriple::new(f.get(idx.a), f.get(idx.b), f.get(idx.c))
            .expect("k-Fibonacci components with index >= 1 are positive");
        let minimal = values.is_minimal();
        Some(Solution {
            k,
            idx,
            values,
            m,
            minimal,
        })
    }

    pub fn record(&self) -> SolutionRecord {
        SolutionRecord {
            k: self.k.get(),
            a: self.idx.a,
            b: self.idx.b,
            c: self.idx.c,
            x: self.values.x().to_string(),
            y: self.values.y().to_string(),
            z: self.values.z().to_string(),
            m: self.m.to_string(),
            minimal: self.minimal,
        }
    }
}

/// JSON-lines / CSV record; big integers as decimal strings so consumers
/// never lose precision.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SolutionRecord {
    pub k: u64,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub x: String,
    pub y: String,
    pub z: String,
    pub m: String,
    pub minimal: bool,
}

impl SolutionRecord {
    pub const CSV_HEADER: &'static str = "k,a,b,c,x,y,z,m,minimal";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.k, self.a, self.b, self.c, self.x, self.y, self.z, self.m, self.minimal
        )
    }
}

/// Predicted sign region for m_k(a,b,c).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    Positive,
    NonPositive,
    Unknown,
}

/// Which closed-form rule produced the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionRule {
    /// b = c forces m ≤ 0 for any k.
    EqualTopPair,
    /// Third index too small: c < a+b (k ≥ 3) or c ≤ a+b with a ≥ 3 (k = 2).
    ShortThird,
    /// Third index at or beyond the minimality threshold: the triple is
    /// minimal, so m = z(z−3xy) + x² + y² > 0.
    WideThird,
    /// k = 2, a = 1, c ≤ b+1: the unit-lead strip is nonpositive.
    UnitLead,
    /// k = 2, a = 2, c = b+1: strictly negative.
    PellStep,
    /// k = 2, a = 2, c = b+2: m = 4(1 − (−1)^{b+1}), positive iff b is even.
    PellParity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionVerdict {
    pub predicted: Region,
    pub rule: Option<RegionRule>,
}

fn verdict(predicted: Region, rule: RegionRule) -> RegionVerdict {
    RegionVerdict {
        predicted,
        rule: Some(rule),
    }
}

/// Closed-form sign prediction for m_k(a,b,c), k ≥ 2. The rule set covers
/// every ordered triple; `Unknown` is never produced for valid input.
pub fn predict_region(k: KParam, t: &IndexTriple) -> Result<RegionVerdict> {
    k.require_at_least(2)?;
    let (a, b, c) = (t.a, t.b, t.c);
    if k.get() >= 3 {
        return Ok(if c < a + b {
            verdict(Region::NonPositive, RegionRule::ShortThird)
        } else {
            verdict(Region::Positive, RegionRule::WideThird)
        });
    }
    // k = 2
    if c > a + b {
        return Ok(verdict(Region::Positive, RegionRule::WideThird));
    }
    if a >= 3 {
        return Ok(verdict(Region::NonPositive, RegionRule::ShortThird));
    }
    if a == 1 {
        // Ordered input means c ∈ {b, b+1} here.
        return Ok(verdict(Region::NonPositive, RegionRule::UnitLead));
    }
    // a = 2, c ∈ {b, b+1, b+2}
    Ok(match c - b {
        0 => verdict(Region::NonPositive, RegionRule::EqualTopPair),
        1 => verdict(Region::NonPositive, RegionRule::PellStep),
        _ => {
            if b % 2 == 0 {
                verdict(Region::Positive, RegionRule::PellParity)
            } else {
                verdict(Region::NonPositive, RegionRule::PellParity)
            }
        }
    })
}

/// All solutions with c ≤ c_max, in lexicographic (c, b, a) order. Scans are
/// partitioned by c across workers; the merge order is deterministic.
pub fn enumerate_solutions(k: KParam, c_max: usize) -> Result<Vec<Solution>> {
    k.require_at_least(2)?;
    // Warm the cache serially so workers only read.
    cache_for(k).get(c_max.max(1));
    let mut per_c: Vec<(usize, Vec<Solution>)> = (1..=c_max)
        .into_par_iter()
        .map(|c| {
            let mut found = Vec::new();
            for b in 1..=c {
                for a in 1..=b {
                    let idx = IndexTriple { a, b, c };
                    if let Some(sol) = Solution::from_indices(k, idx) {
                        found.push(sol);
                    }
                }
            }
            (c, found)
        })
        .collect();
    per_c.sort_by_key(|(c, _)| *c);
    let mut out: Vec<Solution> = per_c.into_iter().flat_map(|(_, v)| v).collect();
    out.sort_by_key(|s| s.idx.sort_key());
    Ok(out)
}

/// Report of the non-minimal classification check: for k = 2 the non-minimal
/// solutions with c ≤ c_max must be exactly the Pell branch
/// {(2, 2n, 2n+2) : 2 ≤ n ≤ (c_max−2)/2}, each with m = 8; for k ≥ 3 the
/// non-minimal set must be empty.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub k: u64,
    pub c_max: usize,
    pub pass: bool,
    pub family: Vec<IndexTriple>,
    pub missing: Vec<IndexTriple>,
    pub unexpected: Vec<IndexTriple>,
    pub wrong_m: Vec<(IndexTriple, String)>,
}

pub fn nonminimal_family_check(k: KParam, c_max: usize) -> Result<FamilyReport> {
    k.require_at_least(2)?;
    let solutions = enumerate_solutions(k, c_max)?;
    let nonminimal: Vec<&Solution> = solutions.iter().filter(|s| !s.minimal).collect();

    let expected: Vec<IndexTriple> = if k.get() == 2 {
        (2..=(c_max.saturating_sub(2)) / 2)
            .map(|n| IndexTriple {
                a: 2,
                b: 2 * n,
                c: 2 * n + 2,
            })
            .collect()
    } else {
        Vec::new()
    };

    let actual: Vec<IndexTriple> = nonminimal.iter().map(|s| s.idx).collect();
    let missing: Vec<IndexTriple> = expected
        .iter()
        .filter(|t| !actual.contains(t))
        .copied()
        .collect();
    let unexpected: Vec<IndexTriple> = actual
        .iter()
        .filter(|t| !expected.contains(t))
        .copied()
        .collect();
    let wrong_m: Vec<(IndexTriple, String)> = nonminimal
        .iter()
        .filter(|s| s.m != BigInt::from(8))
        .map(|s| (s.idx, s.m.to_string()))
        .collect();

    let pass = missing.is_empty() && unexpected.is_empty() && wrong_m.is_empty();
    Ok(FamilyReport {
        k: k.get(),
        c_max,
        pass,
        family: actual,
        missing,
        unexpected,
        wrong_m,
    })
}

/// All unordered pairs of distinct minimal solutions sharing the same m,
/// c ≤ c_max. Pairs are keyed on the exact integer m and emitted in ascending
/// m order, each pair (c, b, a)-sorted internally.
pub fn duplicate_pairs(k: KParam, c_max: usize) -> Result<Vec<(Solution, Solution)>> {
    k.require_at_least(2)?;
    let mut by_m: BTreeMap<BigInt, Vec<Solution>> = BTreeMap::new();
    for sol in enumerate_solutions(k, c_max)? {
        if sol.minimal {
            by_m.entry(sol.m.clone()).or_default().push(sol);
        }
    }
    let mut pairs = Vec::new();
    for (_, mut group) in by_m {
        group.sort_by_key(|s| s.idx);
        for i in 0..group.len() {
            for j in i + 1..group.len() {
                pairs.push((group[i].clone(), group[j].clone()));
            }
        }
    }
    Ok(pairs)
}

/// Does an unordered duplicate pair match the k = 3 family
/// {(a, b, a+b), (a+1, b−1, a+b)} with a odd, b even, b ≥ a+3?
pub fn is_duplicate_family_pair(first: &IndexTriple, second: &IndexTriple) -> bool {
    // The member with the smaller lead index is the (a, b, a+b) one.
    let (lo, hi) = if first.a <= second.a {
        (first, second)
    } else {
        (second, first)
    };
    let (a, b) = (lo.a, lo.b);
    a % 2 == 1
        && b % 2 == 0
        && b >= a + 3
        && lo.c == a + b
        && *hi
            == IndexTriple {
                a: a + 1,
                b: b - 1,
                c: a + b,
            }
}

/// Symbolic descriptor of the single infinite solution family:
/// k = 2, m = 8, indices (2, 2n, 2n+2) for n ≥ 1. n = 1 is the minimal
/// member; every n ≥ 2 member is non-minimal.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyDescriptor {
    pub k: u64,
    pub m: String,
    pub pattern: String,
    pub n_min: usize,
    pub cap_c: usize,
    pub note: String,
}

impl FamilyDescriptor {
    fn pell_eights(cap_c: usize) -> Self {
        FamilyDescriptor {
            k: 2,
            m: "8".to_string(),
            pattern: "(F_2(2), F_2(2n), F_2(2n+2)) for n >= 1".to_string(),
            n_min: 1,
            cap_c,
            note: "n = 1 gives the minimal member (2,2,12); members with n >= 2 \
                   are non-minimal"
                .to_string(),
        }
    }
}

/// Result of find-by-m: the materialized solutions (complete up to cap_c when
/// the symbolic family applies, complete outright otherwise) plus the family
/// descriptor when m admits infinitely many solutions.
#[derive(Debug, Clone)]
pub struct FindReport {
    pub k: KParam,
    pub m: BigInt,
    pub solutions: Vec<Solution>,
    pub family: Option<FamilyDescriptor>,
}

pub const DEFAULT_FAMILY_CAP: usize = 64;

/// Complete list of solutions with the given m ≥ 1. Third-index candidates
/// come from the c-window (including exceptional ones); the k = 2, m = 8
/// family is materialized separately up to `cap_c`.
pub fn find_triples_for_m(k: KParam, m: &BigInt, cap_c: usize) -> Result<FindReport> {
    k.require_at_least(2)?;
    if !m.is_positive() {
        return Err(Error::pre("find_triples_for_m requires m >= 1"));
    }
    let window = c_window(k, m)?;
    let mut solutions: Vec<Solution> = Vec::new();
    for c in window.all_candidates() {
        for a in 1..=c {
            for b in a..=c {
                let idx = IndexTriple { a, b, c };
                if m_k_indices(k, &idx) == *m {
                    if let Some(sol) = Solution::from_indices(k, idx) {
                        solutions.push(sol);
                    }
                }
            }
        }
    }

    let family = if k.get() == 2 && *m == BigInt::from(8) {
        let mut n = 1;
        while 2 * n + 2 <= cap_c {
            let idx = IndexTriple {
                a: 2,
                b: 2 * n,
                c: 2 * n + 2,
            };
            if !solutions.iter().any(|s| s.idx == idx) {
                solutions.push(
                    Solution::from_indices(k, idx).expect("family members have m = 8 > 0"),
                );
            }
            n += 1;
        }
        Some(FamilyDescriptor::pell_eights(cap_c))
    } else {
        None
    };

    solutions.sort_by_key(|s| s.idx.sort_key());
    solutions.dedup_by(|a, b| a.idx == b.idx);
    Ok(FindReport {
        k,
        m: m.clone(),
        solutions,
        family,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(v: u64) -> KParam {
        KParam::new(v).unwrap()
    }

    fn idx(a: usize, b: usize, c: usize) -> IndexTriple {
        IndexTriple::new(a, b, c).unwrap()
    }

    #[test]
    fn m_k_examples() {
        assert_eq!(m_k_indices(k(2), &idx(2, 4, 6)), BigInt::from(8));
        assert_eq!(m_k_indices(k(3), &idx(1, 4, 5)), BigInt::from(2180));
        assert_eq!(m_k_indices(k(3), &idx(1, 1, 1)), BigInt::from(0));
    }

    #[test]
    fn region_examples() {
        let v = predict_region(k(2), &idx(2, 4, 6)).unwrap();
        assert_eq!(v.predicted, Region::Positive);
        assert_eq!(v.rule, Some(RegionRule::PellParity));

        let v = predict_region(k(2), &idx(2, 3, 5)).unwrap();
        assert_eq!(v.predicted, Region::NonPositive);
        assert_eq!(v.rule, Some(RegionRule::PellParity));

        let v = predict_region(k(5), &idx(1, 2, 2)).unwrap();
        assert_eq!(v.predicted, Region::NonPositive);
        assert_eq!(v.rule, Some(RegionRule::ShortThird));

        assert!(predict_region(k(1), &idx(1, 2, 3)).is_err());
    }

    #[test]
    fn region_prediction_sound_and_total() {
        for kk in 2..=8 {
            for c in 1..=20 {
                for b in 1..=c {
                    for a in 1..=b {
                        let t = IndexTriple { a, b, c };
                        let v = predict_region(k(kk), &t).unwrap();
                        let m = m_k_indices(k(kk), &t);
                        match v.predicted {
                            Region::Positive => {
                                assert!(m.is_positive(), "k={kk} {t} predicted positive, m={m}")
                            }
                            Region::NonPositive => {
                                assert!(!m.is_positive(), "k={kk} {t} predicted <=0, m={m}")
                            }
                            Region::Unknown => panic!("k={kk} {t} left unknown"),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        let sols = enumerate_solutions(k(2), 4).unwrap();
        let got: Vec<(usize, usize, usize, i64, bool)> = sols
            .iter()
            .map(|s| {
                (
                    s.idx.a,
                    s.idx.b,
                    s.idx.c,
                    i64::try_from(&s.m).unwrap(),
                    s.minimal,
                )
            })
            .collect();
        assert_eq!(
            got,
            vec![
                (1, 1, 3, 12, true),
                (1, 1, 4, 110, true),
                (1, 2, 4, 77, true),
                (2, 2, 4, 8, true),
            ]
        );

        let sols = enumerate_solutions(k(2), 6).unwrap();
        let nonmin: Vec<IndexTriple> =
            sols.iter().filter(|s| !s.minimal).map(|s| s.idx).collect();
        assert_eq!(nonmin, vec![idx(2, 4, 6)]);

        let sols = enumerate_solutions(k(4), 3).unwrap();
        let got: Vec<(IndexTriple, i64)> = sols
            .iter()
            .map(|s| (s.idx, i64::try_from(&s.m).unwrap()))
            .collect();
        assert_eq!(
            got,
            vec![(idx(1, 1, 2), 6), (idx(1, 1, 3), 240), (idx(1, 2, 3), 102)]
        );
    }

    #[test]
    fn family_check_examples() {
        let r = nonminimal_family_check(k(2), 10).unwrap();
        assert!(r.pass);
        assert_eq!(r.family, vec![idx(2, 4, 6), idx(2, 6, 8), idx(2, 8, 10)]);

        let r = nonminimal_family_check(k(3), 12).unwrap();
        assert!(r.pass);
        assert!(r.family.is_empty());

        let r = nonminimal_family_check(k(2), 5).unwrap();
        assert!(r.pass);
        assert!(r.family.is_empty());
    }

    #[test]
    fn duplicate_examples() {
        let pairs = duplicate_pairs(k(3), 5).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].0.idx, idx(1, 4, 5));
        assert_eq!(pairs[0].1.idx, idx(2, 3, 5));
        assert_eq!(pairs[0].0.m, BigInt::from(2180));
        assert!(is_duplicate_family_pair(&pairs[0].0.idx, &pairs[0].1.idx));

        let pairs = duplicate_pairs(k(3), 7).unwrap();
        let idxs: Vec<(IndexTriple, IndexTriple)> =
            pairs.iter().map(|(a, b)| (a.idx, b.idx)).collect();
        assert_eq!(
            idxs,
            vec![
                (idx(1, 4, 5), idx(2, 3, 5)),
                (idx(1, 6, 7), idx(2, 5, 7)),
            ]
        );

        assert!(duplicate_pairs(k(4), 12).unwrap().is_empty());
    }

    #[test]
    fn find_examples() {
        let r = find_triples_for_m(k(3), &BigInt::from(2180), DEFAULT_FAMILY_CAP).unwrap();
        let idxs: Vec<IndexTriple> = r.solutions.iter().map(|s| s.idx).collect();
        assert_eq!(idxs, vec![idx(1, 4, 5), idx(2, 3, 5)]);
        assert!(r.family.is_none());

        let r = find_triples_for_m(k(2), &BigInt::from(8), 12).unwrap();
        let idxs: Vec<IndexTriple> = r.solutions.iter().map(|s| s.idx).collect();
        assert_eq!(
            idxs,
            vec![
                idx(2, 2, 4),
                idx(2, 4, 6),
                idx(2, 6, 8),
                idx(2, 8, 10),
                idx(2, 10, 12),
            ]
        );
        assert!(r.solutions[0].minimal);
        assert!(r.solutions[1..].iter().all(|s| !s.minimal));
        assert!(r.family.is_some());

        let r = find_triples_for_m(k(2), &BigInt::from(110), DEFAULT_FAMILY_CAP).unwrap();
        let idxs: Vec<IndexTriple> = r.solutions.iter().map(|s| s.idx).collect();
        assert_eq!(idxs, vec![idx(1, 1, 4)]);

        assert!(find_triples_for_m(k(2), &BigInt::from(0), 8).is_err());
    }

    #[test]
    fn csv_and_json_records() {
        let sol = Solution::from_indices(k(2), idx(2, 4, 6)).unwrap();
        let rec = sol.record();
        assert_eq!(rec.csv_row(), "2,2,4,6,2,12,70,8,false");
        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(
            json,
            r#"{"k":2,"a":2,"b":4,"c":6,"x":"2","y":"12","z":"70","m":"8","minimal":false}"#
        );
    }
}
