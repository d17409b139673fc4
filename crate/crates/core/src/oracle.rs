//! Independent brute-force ground truth: value-space enumeration with no
//! index arithmetic and no closed-form shortcuts. Deliberately slow and dumb;
//! it shares nothing with the classifier beyond k-Fibonacci generation.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::kfib::{cache_for, KParam};
use crate::markoff::{TripleRecord, ValueTriple};
use crate::{Error, Result};

/// All ordered triples of k-Fibonacci values ≤ value_max with m > 0, by a
/// plain triple loop. No pruning beyond ordering.
pub fn brute_solutions(k: KParam, value_max: &BigUint) -> Result<BTreeSet<ValueTriple>> {
    if value_max.is_zero() {
        return Err(Error::pre("value_max must be >= 1"));
    }
    let cache = cache_for(k);
    let mut values: Vec<BigUint> = Vec::new();
    let mut n = 1;
    loop {
        let term = cache.get(n);
        if term > *value_max {
            break;
        }
        if values.last() != Some(&term) {
            values.push(term);
        }
        n += 1;
    }
    let mut out = BTreeSet::new();
    for i in 0..values.len() {
        for j in i..values.len() {
            for l in j..values.len() {
                let (x, y, z) = (&values[i], &values[j], &values[l]);
                // Direct equation test: x² + y² + z² > 3xyz means m > 0.
                let squares = x * x + y * y + z * z;
                let product = 3u32 * x * y * z;
                if squares > product {
                    out.insert(ValueTriple::new(x.clone(), y.clone(), z.clone())?);
                }
            }
        }
    }
    Ok(out)
}

/// All minimal triples for m, by direct scanning: x ≤ y with x² + y² ≤ m,
/// then every z in [max(y, 3xy), z_hi] tested against the equation itself.
/// The quadratic formula only caps the scan range; membership is never
/// decided by it.
pub fn brute_census(m: &BigInt) -> Result<BTreeSet<ValueTriple>> {
    if !m.is_positive() {
        return Err(Error::pre("census requires m >= 1"));
    }
    let mut out = BTreeSet::new();
    let mut x = BigInt::one();
    while 2 * &x * &x <= *m {
        let mut y = x.clone();
        loop {
            let sq = &x * &x + &y * &y;
            if sq > *m {
                break;
            }
            let threexy: BigInt = 3 * &x * &y;
            let disc: BigInt = &threexy * &threexy - 4 * (&sq - m);
            let z_hi = (&threexy + disc.sqrt()) / 2;
            let mut z = threexy.max(y.clone());
            while z <= z_hi {
                if &(&z * &z) + &sq == 3 * &x * &y * &z + m {
                    out.insert(ValueTriple::new(
                        x.to_biguint().unwrap(),
                        y.to_biguint().unwrap(),
                        z.to_biguint().unwrap(),
                    )?);
                }
                z += 1;
            }
            y += 1;
        }
        x += 1;
    }
    Ok(out)
}

/// Symmetric difference between a reference set and a candidate set, with the
/// direction of each mismatch.
#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub domain: String,
    pub reference_size: usize,
    pub candidate_size: usize,
    pub missing_from_candidate: Vec<TripleRecord>,
    pub unexpected_in_candidate: Vec<TripleRecord>,
}

impl OracleReport {
    pub fn is_match(&self) -> bool {
        self.missing_from_candidate.is_empty() && self.unexpected_in_candidate.is_empty()
    }
}

pub fn cross_check(
    domain: &str,
    reference: &BTreeSet<ValueTriple>,
    candidate: &BTreeSet<ValueTriple>,
) -> OracleReport {
    OracleReport {
        domain: domain.to_string(),
        reference_size: reference.len(),
        candidate_size: candidate.len(),
        missing_from_candidate: reference
            .difference(candidate)
            .map(TripleRecord::from)
            .collect(),
        unexpected_in_candidate: candidate
            .difference(reference)
            .map(TripleRecord::from)
            .collect(),
    }
}
