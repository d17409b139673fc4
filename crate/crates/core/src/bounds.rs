//! Analytic lower-bound machinery for minimal triples: the growth constants
//! L_k, the certified floor L_k·α_k^{2c}/D_k² for m at extremal index triples,
//! the exact per-c maximum of m, and the c-window that pins the third index of
//! any minimal solution from its m alone.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::kfib::{kfib_int, KParam};
use crate::quad::{default_tol, enclose, BoundExpr, QuadInt, RealBound};
use crate::{Error, Result};

/// Certified enclosure of the growth constant L_k (k ≥ 2). L_k is positive
/// and the lower bound m > L_k·α_k^{2c}/D_k² holds for every ordered pair
/// (a, b) at the extremal third index (c = a+b+1 for k = 2, c = a+b for k ≥ 3).
#[derive(Debug, Clone)]
pub struct LkConstant {
    pub k: KParam,
    pub value: RealBound,
}

fn one() -> BoundExpr {
    BoundExpr::int(1)
}

// Closed forms: three regimes. k = 2 carries the full correction series, k = 3
// the two-term parabola value, k ≥ 4 just 1 − 3/D_k.
fn lk_expr(k: KParam) -> BoundExpr {
    let a = || BoundExpr::alpha(k);
    let d = || BoundExpr::sqrt_disc(k);
    let three_over_d = || BoundExpr::int(3) / d();
    match k.get() {
        2 => {
            let t1 = one() - three_over_d() * a().pow(-1);
            let t2 = BoundExpr::int(2) * (one() - three_over_d() * a()) * a().pow(-4);
            let t3 = (BoundExpr::int(6) + three_over_d() * a() + BoundExpr::int(9) / d())
                * a().pow(-6);
            t1 + t2 - t3
        }
        3 => {
            let t1 = (one() - three_over_d()) * (one() + BoundExpr::int(2) * a().pow(-2));
            let t2 = (BoundExpr::int(6) + BoundExpr::int(12) / d()) * a().pow(-4);
            t1 - t2
        }
        _ => one() - three_over_d(),
    }
}

/// Variant transcription of the k = 3 constant that damps the trailing term
/// by the k = 2 growth rate instead of the k = 3 one. It evaluates negative,
/// which is why the primary reading is the one used everywhere; the bounds
/// report shows both side by side.
pub fn l3_alt_reading(tol: &BigRational) -> RealBound {
    let k3 = KParam::new(3).unwrap();
    let k2 = KParam::new(2).unwrap();
    let a = || BoundExpr::alpha(k3);
    let d = || BoundExpr::sqrt_disc(k3);
    let t1 = (one() - BoundExpr::int(3) / d()) * (one() + BoundExpr::int(2) * a().pow(-2));
    let t2 = (BoundExpr::int(6) + BoundExpr::int(12) / d()) * BoundExpr::alpha(k2).pow(-4);
    enclose(&(t1 - t2), tol)
}

pub fn lk(k: KParam) -> Result<LkConstant> {
    lk_with_tol(k, &default_tol())
}

pub fn lk_with_tol(k: KParam, tol: &BigRational) -> Result<LkConstant> {
    k.require_at_least(2)?;
    let expr = lk_expr(k);
    let mut tol = tol.clone();
    let mut value = enclose(&expr, &tol);
    // L_k > 0; refine until the enclosure certifies it.
    while !value.lo().is_positive() {
        tol /= BigRational::from(BigInt::from(1000));
        value = enclose(&expr, &tol);
    }
    Ok(LkConstant { k, value })
}

/// Certified decision of L_k > α_k⁻². Enclosures are refined until disjoint,
/// so the answer carries no tolerance parameter.
pub fn check_lk_gt_alpha_inv2(k: KParam) -> Result<bool> {
    k.require_at_least(2)?;
    let inv2_expr = BoundExpr::alpha(k).pow(-2);
    let mut tol = default_tol();
    loop {
        let l = lk_with_tol(k, &tol)?.value;
        let inv2 = enclose(&inv2_expr, &tol);
        if l.disjoint(&inv2) {
            return Ok(inv2.strictly_below(&l));
        }
        tol /= BigRational::from(BigInt::from(1000));
    }
}

/// Certified enclosure of L_k·α_k^{2c}/D_k², the floor under m_k(a, b, c) at
/// the extremal third index.
pub fn karamata_lower(k: KParam, c: usize) -> Result<RealBound> {
    karamata_lower_with_tol(k, c, &default_tol())
}

pub fn karamata_lower_with_tol(k: KParam, c: usize, tol: &BigRational) -> Result<RealBound> {
    k.require_at_least(2)?;
    let expr = lk_expr(k) * BoundExpr::alpha(k).pow(2 * c as i64)
        / BoundExpr::ratio(BigRational::from(crate::quad::disc_int(k)));
    Ok(enclose(&expr, tol))
}

/// Exact F_k(c)² − 3·F_k(c) + 2: the maximum of m over ordered index triples
/// with third index c, attained at (1, 1, c).
pub fn m_upper_for_c(k: KParam, c: usize) -> BigInt {
    let f = kfib_int(k, c);
    &f * &f - 3 * f + 2
}

/// Third-index window for m: the candidate set
/// { c ≥ 2 : α_k^{2(c−1)} < D_k²·m < α_k^{2c} }, decided exactly in Z[α_k].
/// It has at most one element by construction. For k = 2, m = 8 the minimal
/// solution (a,b,c) = (2,2,4) sits outside the window chain (it is the unique
/// triple-product equality case with c = a + b), so index 4 is returned
/// separately as an exceptional candidate.
#[derive(Debug, Clone)]
pub struct CWindow {
    pub k: KParam,
    pub m: BigInt,
    pub candidates: Vec<usize>,
    pub exceptional: Vec<usize>,
}

impl CWindow {
    pub fn all_candidates(&self) -> Vec<usize> {
        let mut out = self.candidates.clone();
        out.extend(&self.exceptional);
        out
    }
}

pub fn c_window(k: KParam, m: &BigInt) -> Result<CWindow> {
    k.require_at_least(2)?;
    if !m.is_positive() {
        return Err(Error::pre("c_window requires m >= 1"));
    }
    let disc_m = QuadInt::from_int(k, crate::quad::disc_int(k) * m);
    let mut candidates = Vec::new();
    let mut c = 2usize;
    loop {
        let left = QuadInt::alpha_pow(k, 2 * (c - 1));
        if left.try_cmp(&disc_m)? != std::cmp::Ordering::Less {
            break;
        }
        let right = QuadInt::alpha_pow(k, 2 * c);
        if disc_m.try_cmp(&right)? == std::cmp::Ordering::Less {
            candidates.push(c);
        }
        c += 1;
    }
    let exceptional = if k.get() == 2 && *m == BigInt::from(8) {
        vec![4]
    } else {
        Vec::new()
    };
    Ok(CWindow {
        k,
        m: m.clone(),
        candidates,
        exceptional,
    })
}
