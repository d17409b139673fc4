//! Exact tooling for Markoff m-triples whose components are k-Fibonacci
//! numbers: x² + y² + z² = 3xyz + m over positive integers, with every
//! component a term of F_k(0) = 0, F_k(1) = 1, F_k(n) = k·F_k(n−1) + F_k(n−2).
//!
//! Everything is computed in exact arithmetic. Inequalities about the
//! irrationals α_k and √(k²+4) are decided through sign tests in Z[α_k] or
//! disjoint rational enclosures, never floating point.
//!
//! Module map:
//! - [`kfib`]: sequence generation, inverse lookup, and the identity toolbox.
//! - [`quad`]: exact Z[α_k] arithmetic and certified rational enclosures.
//! - [`markoff`]: the m-equation layer — triples, Vieta trees, per-m census.
//! - [`bounds`]: growth constants, the certified m floor, the c-window.
//! - [`classifier`]: sign regions, enumeration, the Pell branch, duplicates,
//!   find-by-m.
//! - [`oracle`]: independent brute-force ground truth.
//! - [`verify`]: invariant suites aggregating all of the above.

pub mod bounds;
pub mod classifier;
mod error;
pub mod kfib;
pub mod markoff;
pub mod oracle;
pub mod quad;
pub mod verify;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
