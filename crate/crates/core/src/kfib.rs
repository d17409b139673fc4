//! k-Fibonacci sequences F_k(0) = 0, F_k(1) = 1, F_k(n) = k·F_k(n-1) + F_k(n-2),
//! exact and memoized, together with the classical identities and inequalities
//! (Vajda, D'Ocagne, Catalan, Simson, sum-of-squares, product bounds) exposed as
//! checkable two-sided evaluations.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Sequence parameter k ≥ 1. k = 1 gives the Fibonacci numbers, k = 2 the Pell numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KParam(u64);

impl KParam {
    pub fn new(k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::KTooSmall { min: 1, got: 0 });
        }
        Ok(KParam(k))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// Most theorem-level operations only apply for k ≥ 2.
    pub fn require_at_least(self, min: u64) -> Result<Self> {
        if self.0 < min {
            return Err(Error::KTooSmall { min, got: self.0 });
        }
        Ok(self)
    }
}

impl fmt::Display for KParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Append-only memo of F_k terms, indexed from 0. Concurrent reads, serialized
/// appends; never evicted within a process run.
pub struct SequenceCache {
    k: KParam,
    terms: RwLock<Vec<BigUint>>,
}

impl SequenceCache {
    pub fn new(k: KParam) -> Self {
        SequenceCache {
            k,
            terms: RwLock::new(vec![BigUint::zero(), BigUint::one()]),
        }
    }

    pub fn k(&self) -> KParam {
        self.k
    }

    /// F_k(n), exact.
    pub fn get(&self, n: usize) -> BigUint {
        {
            let terms = self.terms.read().unwrap();
            if n < terms.len() {
                return terms[n].clone();
            }
        }
        let mut terms = self.terms.write().unwrap();
        let k = BigUint::from(self.k.0);
        while terms.len() <= n {
            let next = &k * &terms[terms.len() - 1] + &terms[terms.len() - 2];
            terms.push(next);
        }
        terms[n].clone()
    }

    pub fn get_int(&self, n: usize) -> BigInt {
        BigInt::from(self.get(n))
    }

    /// Smallest n with F_k(n) = v, if any. For v = 1 this is n = 1
    /// (F_k(2) = 1 only happens when k = 1).
    pub fn index_of(&self, v: &BigUint) -> Option<usize> {
        if v.is_zero() {
            return Some(0);
        }
        let mut n = 1;
        loop {
            let term = self.get(n);
            if term == *v {
                return Some(n);
            }
            if term > *v {
                return None;
            }
            n += 1;
        }
    }
}

// One cache per k, shared process-wide.
static CACHES: OnceLock<RwLock<HashMap<u64, Arc<SequenceCache>>>> = OnceLock::new();

pub fn cache_for(k: KParam) -> Arc<SequenceCache> {
    let registry = CACHES.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(cache) = registry.read().unwrap().get(&k.0) {
        return Arc::clone(cache);
    }
    let mut map = registry.write().unwrap();
    Arc::clone(
        map.entry(k.0)
            .or_insert_with(|| Arc::new(SequenceCache::new(k))),
    )
}

/// F_k(n), memoized per k.
pub fn kfib(k: KParam, n: usize) -> BigUint {
    cache_for(k).get(n)
}

pub fn kfib_int(k: KParam, n: usize) -> BigInt {
    cache_for(k).get_int(n)
}

/// Inverse lookup: the index n with F_k(n) = v, or None if v is not a term.
pub fn kfib_index_of(k: KParam, v: &BigUint) -> Option<usize> {
    cache_for(k).index_of(v)
}

fn sign_pow(n: usize) -> BigInt {
    if n.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Both sides of Vajda's identity:
/// F_k(n+i)·F_k(n+j) − F_k(n)·F_k(n+i+j) = (−1)^n·F_k(i)·F_k(j), for n, i, j ≥ 1.
pub fn vajda_sides(k: KParam, n: usize, i: usize, j: usize) -> Result<(BigInt, BigInt)> {
    if n < 1 || i < 1 || j < 1 {
        return Err(Error::pre("vajda requires n, i, j >= 1"));
    }
    let f = cache_for(k);
    let lhs = f.get_int(n + i) * f.get_int(n + j) - f.get_int(n) * f.get_int(n + i + j);
    let rhs = sign_pow(n) * f.get_int(i) * f.get_int(j);
    Ok((lhs, rhs))
}

/// Identity selector for [`identity_sides`]. Each variant carries its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Identity {
    /// F_k(a+b) = F_k(a+1)·F_k(b) + F_k(a)·F_k(b−1), a, b ≥ 1.
    Sum { a: usize, b: usize },
    /// (−1)^a·F_k(b−a) = F_k(b)·F_k(a+1) − F_k(b+1)·F_k(a), 1 ≤ a ≤ b.
    DOcagne { a: usize, b: usize },
    /// F_k(n)² = F_k(n+r)·F_k(n−r) + (−1)^{n−r}·F_k(r)², 1 ≤ r ≤ n.
    Catalan { n: usize, r: usize },
    /// F_k(n)² = F_k(n+1)·F_k(n−1) − (−1)^n, n ≥ 1.
    Simson { n: usize },
    /// Σ_{n=0}^{N} F_k(n)² = F_k(N)·F_k(N+1)/k (exact division).
    SumOfSquares { upper: usize },
}

/// Evaluates both sides of the selected identity exactly. Callers assert equality.
pub fn identity_sides(k: KParam, id: Identity) -> Result<(BigInt, BigInt)> {
    let f = cache_for(k);
    match id {
        Identity::Sum { a, b } => {
            if a < 1 || b < 1 {
                return Err(Error::pre("sum identity requires a, b >= 1"));
            }
            let lhs = f.get_int(a + b);
            let rhs = f.get_int(a + 1) * f.get_int(b) + f.get_int(a) * f.get_int(b - 1);
            Ok((lhs, rhs))
        }
        Identity::DOcagne { a, b } => {
            if a < 1 || b < a {
                return Err(Error::pre("d'ocagne identity requires 1 <= a <= b"));
            }
            let lhs = sign_pow(a) * f.get_int(b - a);
            let rhs = f.get_int(b) * f.get_int(a + 1) - f.get_int(b + 1) * f.get_int(a);
            Ok((lhs, rhs))
        }
        Identity::Catalan { n, r } => {
            if r < 1 || r > n {
                return Err(Error::pre("catalan identity requires 1 <= r <= n"));
            }
            let lhs = f.get_int(n) * f.get_int(n);
            let fr = f.get_int(r);
            let rhs = f.get_int(n + r) * f.get_int(n - r) + sign_pow(n - r) * &fr * &fr;
            Ok((lhs, rhs))
        }
        Identity::Simson { n } => {
            if n < 1 {
                return Err(Error::pre("simson identity requires n >= 1"));
            }
            let lhs = f.get_int(n) * f.get_int(n);
            let rhs = f.get_int(n + 1) * f.get_int(n - 1) - sign_pow(n);
            Ok((lhs, rhs))
        }
        Identity::SumOfSquares { upper } => {
            let mut lhs = BigInt::zero();
            for n in 0..=upper {
                let t = f.get_int(n);
                lhs += &t * &t;
            }
            let prod = f.get_int(upper) * f.get_int(upper + 1);
            let kk = BigInt::from(k.0);
            // Divisibility is guaranteed; the assert is a free sanity check.
            let (q, r) = num_integer::Integer::div_rem(&prod, &kk);
            assert!(r.is_zero(), "F_k(N)·F_k(N+1) must be divisible by k");
            Ok((lhs, q))
        }
    }
}

/// True iff F_k(c) ≥ 3·F_k(a)·F_k(b), exactly. Requires a, b, c ≥ 1.
pub fn ge3_product(k: KParam, a: usize, b: usize, c: usize) -> Result<bool> {
    if a < 1 || b < 1 || c < 1 {
        return Err(Error::pre("ge3_product requires a, b, c >= 1"));
    }
    let f = cache_for(k);
    Ok(f.get(c) >= 3u32 * f.get(a) * f.get(b))
}

/// Both sides of the doubling bound 4·F_k(2n−2) ≤ F_k(n)², valid for k ≥ 4, n ≥ 1.
pub fn doubling_bound_sides(k: KParam, n: usize) -> Result<(BigInt, BigInt)> {
    k.require_at_least(4)?;
    if n < 1 {
        return Err(Error::pre("doubling bound requires n >= 1"));
    }
    let f = cache_for(k);
    let lhs = 4 * f.get_int(2 * n - 2);
    let fn_ = f.get_int(n);
    Ok((lhs, &fn_ * &fn_))
}
