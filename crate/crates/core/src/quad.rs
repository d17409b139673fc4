//! Exact arithmetic in Z[α_k], where α_k is the dominant root of x² − kx − 1,
//! plus certified rational enclosures of expressions in α_k and √(k²+4).
//!
//! Every inequality the bound machinery relies on is decided either exactly
//! (sign tests in Z[α_k] via the minimal polynomial) or by disjoint rational
//! enclosures. Floating point is never consulted.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::kfib::KParam;
use crate::{Error, Result};

/// Exact element p + q·α_k of Z[α_k]. The representation is unique because
/// α_k is irrational for every k ≥ 1 (k²+4 is never a perfect square).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadInt {
    k: KParam,
    p: BigInt,
    q: BigInt,
}

impl QuadInt {
    pub fn new(k: KParam, p: BigInt, q: BigInt) -> Self {
        QuadInt { k, p, q }
    }

    pub fn from_int(k: KParam, n: BigInt) -> Self {
        QuadInt {
            k,
            p: n,
            q: BigInt::zero(),
        }
    }

    pub fn k(&self) -> KParam {
        self.k
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// α_k^n by binary exponentiation in Z[α_k] (α² = kα + 1). The result
    /// always lands on the power normal form (F_k(n−1), F_k(n)); tests
    /// cross-check that against the sequence module.
    pub fn alpha_pow(k: KParam, n: usize) -> Self {
        let mut acc = QuadInt::from_int(k, BigInt::one());
        let mut base = QuadInt::new(k, BigInt::zero(), BigInt::one());
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Sign of p + q·α_k, decided exactly through the minimal polynomial:
    /// for q ≠ 0 and p, q of opposite signs, the sign reduces to the sign of
    /// g = p² + k·p·q − q² at the rational point −p/q (g ≠ 0 since α_k is
    /// irrational).
    pub fn sign(&self) -> Ordering {
        let (ps, qs) = (self.p.sign(), self.q.sign());
        if qs == num_bigint::Sign::NoSign {
            return match ps {
                num_bigint::Sign::Plus => Ordering::Greater,
                num_bigint::Sign::NoSign => Ordering::Equal,
                num_bigint::Sign::Minus => Ordering::Less,
            };
        }
        let q_pos = qs == num_bigint::Sign::Plus;
        if q_pos && !self.p.is_negative() {
            return Ordering::Greater;
        }
        if !q_pos && !self.p.is_positive() {
            return Ordering::Less;
        }
        let k = BigInt::from(self.k.get());
        let g = &self.p * &self.p + k * &self.p * &self.q - &self.q * &self.q;
        assert!(!g.is_zero(), "alpha_k is irrational; g cannot vanish");
        let positive = q_pos != g.is_positive();
        if positive {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    /// Exact comparison; errors when the operands live over different k.
    pub fn try_cmp(&self, other: &QuadInt) -> Result<Ordering> {
        if self.k != other.k {
            return Err(Error::MismatchedK(self.k.get(), other.k.get()));
        }
        let diff = QuadInt::new(self.k, &self.p - &other.p, &self.q - &other.q);
        Ok(diff.sign())
    }

    /// Certified enclosure of the real value p + q·α_k.
    pub fn enclose(&self, tol: &BigRational) -> RealBound {
        let scale = BigRational::from(self.q.abs().max(BigInt::one()));
        let alpha = alpha_enclosure(self.k, &(tol / scale));
        let q = BigRational::from(self.q.clone());
        let p = BigRational::from(self.p.clone());
        let scaled = alpha.scale(&q);
        RealBound::new(&p + scaled.lo(), &p + scaled.hi())
    }
}

impl Mul for &QuadInt {
    type Output = QuadInt;

    fn mul(self, rhs: &QuadInt) -> QuadInt {
        assert_eq!(self.k, rhs.k, "QuadInt multiplication requires equal k");
        let k = BigInt::from(self.k.get());
        let qq = &self.q * &rhs.q;
        QuadInt {
            k: self.k,
            p: &self.p * &rhs.p + &qq,
            q: &self.p * &rhs.q + &self.q * &rhs.p + k * qq,
        }
    }
}

impl PartialOrd for QuadInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}·α_{}", self.p, self.q, self.k)
    }
}

/// Certified enclosure [lo, hi] of a real quantity, with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealBound {
    lo: BigRational,
    hi: BigRational,
}

impl RealBound {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "inverted enclosure");
        RealBound { lo, hi }
    }

    pub fn point(v: BigRational) -> Self {
        RealBound {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        self.lo <= *v && *v <= self.hi
    }

    pub fn contains_bound(&self, other: &RealBound) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// True when every point of `self` is strictly below every point of `other`.
    pub fn strictly_below(&self, other: &RealBound) -> bool {
        self.hi < other.lo
    }

    pub fn disjoint(&self, other: &RealBound) -> bool {
        self.strictly_below(other) || other.strictly_below(self)
    }

    /// Both operands must enclose the same value; the intersection keeps
    /// refinements nested.
    pub fn intersect(&self, other: &RealBound) -> RealBound {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        RealBound::new(lo, hi)
    }

    fn scale(&self, f: &BigRational) -> RealBound {
        let a = f * &self.lo;
        let b = f * &self.hi;
        if a <= b {
            RealBound::new(a, b)
        } else {
            RealBound::new(b, a)
        }
    }

    fn recip(&self) -> RealBound {
        assert!(
            self.lo.is_positive() || self.hi.is_negative(),
            "reciprocal of an enclosure containing zero"
        );
        RealBound::new(self.hi.recip(), self.lo.recip())
    }

    fn powi(&self, n: i64) -> RealBound {
        if n < 0 {
            return self.powi(-n).recip();
        }
        let mut acc = RealBound::point(BigRational::one());
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl Add for &RealBound {
    type Output = RealBound;
    fn add(self, rhs: &RealBound) -> RealBound {
        RealBound::new(&self.lo + &rhs.lo, &self.hi + &rhs.hi)
    }
}

impl Sub for &RealBound {
    type Output = RealBound;
    fn sub(self, rhs: &RealBound) -> RealBound {
        RealBound::new(&self.lo - &rhs.hi, &self.hi - &rhs.lo)
    }
}

impl Neg for &RealBound {
    type Output = RealBound;
    fn neg(self) -> RealBound {
        RealBound::new(-self.hi.clone(), -self.lo.clone())
    }
}

impl Mul for &RealBound {
    type Output = RealBound;
    fn mul(self, rhs: &RealBound) -> RealBound {
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        RealBound::new(lo, hi)
    }
}

impl Div for &RealBound {
    type Output = RealBound;
    // Interval division is multiplication by the reciprocal enclosure.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &RealBound) -> RealBound {
        self * &rhs.recip()
    }
}

/// Expression over α_k, √(k²+4) and rational constants, evaluated to a
/// certified enclosure of requested width by [`enclose`].
#[derive(Debug, Clone)]
pub enum BoundExpr {
    Const(BigRational),
    /// α_k, the dominant root of x² − kx − 1.
    Alpha(KParam),
    /// √(k²+4), the root gap of the characteristic polynomial.
    SqrtDisc(KParam),
    Neg(Box<BoundExpr>),
    Add(Box<BoundExpr>, Box<BoundExpr>),
    Sub(Box<BoundExpr>, Box<BoundExpr>),
    Mul(Box<BoundExpr>, Box<BoundExpr>),
    Div(Box<BoundExpr>, Box<BoundExpr>),
    Pow(Box<BoundExpr>, i64),
}

impl BoundExpr {
    pub fn int(v: i64) -> Self {
        BoundExpr::Const(BigRational::from(BigInt::from(v)))
    }

    pub fn ratio(v: BigRational) -> Self {
        BoundExpr::Const(v)
    }

    pub fn alpha(k: KParam) -> Self {
        BoundExpr::Alpha(k)
    }

    pub fn sqrt_disc(k: KParam) -> Self {
        BoundExpr::SqrtDisc(k)
    }

    pub fn pow(self, n: i64) -> Self {
        BoundExpr::Pow(Box::new(self), n)
    }

    fn eval(&self, digits: u32) -> RealBound {
        match self {
            BoundExpr::Const(v) => RealBound::point(v.clone()),
            BoundExpr::Alpha(k) => {
                let s = sqrt_nat_enclosure(&disc_int(*k), digits);
                let kk = RealBound::point(BigRational::from(BigInt::from(k.get())));
                let half = RealBound::point(BigRational::new(BigInt::one(), BigInt::from(2)));
                &(&kk + &s) * &half
            }
            BoundExpr::SqrtDisc(k) => sqrt_nat_enclosure(&disc_int(*k), digits),
            BoundExpr::Neg(e) => -&e.eval(digits),
            BoundExpr::Add(a, b) => &a.eval(digits) + &b.eval(digits),
            BoundExpr::Sub(a, b) => &a.eval(digits) - &b.eval(digits),
            BoundExpr::Mul(a, b) => &a.eval(digits) * &b.eval(digits),
            BoundExpr::Div(a, b) => &a.eval(digits) / &b.eval(digits),
            BoundExpr::Pow(e, n) => e.eval(digits).powi(*n),
        }
    }
}

impl Add for BoundExpr {
    type Output = BoundExpr;
    fn add(self, rhs: BoundExpr) -> BoundExpr {
        BoundExpr::Add(Box::new(self), Box::new(rhs))
    }
}

impl Sub for BoundExpr {
    type Output = BoundExpr;
    fn sub(self, rhs: BoundExpr) -> BoundExpr {
        BoundExpr::Sub(Box::new(self), Box::new(rhs))
    }
}

impl Mul for BoundExpr {
    type Output = BoundExpr;
    fn mul(self, rhs: BoundExpr) -> BoundExpr {
        BoundExpr::Mul(Box::new(self), Box::new(rhs))
    }
}

impl Div for BoundExpr {
    type Output = BoundExpr;
    fn div(self, rhs: BoundExpr) -> BoundExpr {
        BoundExpr::Div(Box::new(self), Box::new(rhs))
    }
}

impl Neg for BoundExpr {
    type Output = BoundExpr;
    fn neg(self) -> BoundExpr {
        BoundExpr::Neg(Box::new(self))
    }
}

/// k² + 4, the discriminant of x² − kx − 1.
pub(crate) fn disc_int(k: KParam) -> BigInt {
    let kk = BigInt::from(k.get());
    &kk * &kk + 4
}

/// Enclosure of √n (n a nonnegative integer) of width 10^−digits, by scaled
/// integer square root: lo = ⌊√(n·10^{2d})⌋/10^d, hi = lo + 10^−d.
fn sqrt_nat_enclosure(n: &BigInt, digits: u32) -> RealBound {
    assert!(!n.is_negative());
    let scale = BigInt::from(10u32).pow(digits);
    let s = (n * &scale * &scale).sqrt();
    let lo = BigRational::new(s.clone(), scale.clone());
    let hi = BigRational::new(s + 1, scale);
    RealBound::new(lo, hi)
}

/// Default enclosure tolerance: 10^−12.
pub fn default_tol() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u64).pow(12))
}

/// Evaluates `expr` to a certified enclosure of width ≤ tol. Leaf precision
/// walks a fixed doubling schedule from the same starting point on every call,
/// intersecting along the way; a finer-tolerance call therefore passes through
/// every level of a coarser one and returns an enclosure nested inside it.
pub fn enclose(expr: &BoundExpr, tol: &BigRational) -> RealBound {
    assert!(tol.is_positive(), "tolerance must be positive");
    let mut digits = 18u32;
    let mut best: Option<RealBound> = None;
    loop {
        let cur = expr.eval(digits);
        let cur = match &best {
            Some(prev) => prev.intersect(&cur),
            None => cur,
        };
        if cur.width() <= *tol {
            return cur;
        }
        best = Some(cur);
        digits = digits.checked_mul(2).expect("enclosure precision overflow");
        assert!(digits < 1 << 24, "enclosure failed to converge");
    }
}

/// Enclosure of α_k = (k + √(k²+4))/2.
pub fn alpha_enclosure(k: KParam, tol: &BigRational) -> RealBound {
    enclose(&BoundExpr::alpha(k), tol)
}

/// Decimal rendering of a rational with directed rounding, so printed
/// endpoints still enclose the true value.
pub fn decimal_str(r: &BigRational, frac_digits: u32, round_up: bool) -> String {
    let scale = BigInt::from(10u32).pow(frac_digits);
    let scaled = r * BigRational::from(scale.clone());
    let v = if round_up {
        scaled.ceil()
    } else {
        scaled.floor()
    }
    .to_integer();
    let neg = v.is_negative();
    let digits = v.abs().to_string();
    let digits = if digits.len() <= frac_digits as usize {
        format!("{:0>width$}", digits, width = frac_digits as usize + 1)
    } else {
        digits
    };
    let split = digits.len() - frac_digits as usize;
    let (int_part, frac_part) = digits.split_at(split);
    let sign = if neg { "-" } else { "" };
    if frac_digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

impl RealBound {
    /// Printed form `[lo, hi]` with outward rounding at the given precision.
    pub fn decimal(&self, frac_digits: u32) -> (String, String) {
        (
            decimal_str(&self.lo, frac_digits, false),
            decimal_str(&self.hi, frac_digits, true),
        )
    }
}

/// Enclosure of √(k²+4).
pub fn sqrt_disc_enclosure(k: KParam, tol: &BigRational) -> RealBound {
    enclose(&BoundExpr::sqrt_disc(k), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kfib::{kfib_int, KParam};

    fn k(v: u64) -> KParam {
        KParam::new(v).unwrap()
    }

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn alpha_pow_examples() {
        let p0 = QuadInt::alpha_pow(k(2), 0);
        assert_eq!((p0.p(), p0.q()), (&BigInt::one(), &BigInt::zero()));
        let p3 = QuadInt::alpha_pow(k(2), 3);
        assert_eq!((p3.p(), p3.q()), (&BigInt::from(2), &BigInt::from(5)));
        let p2 = QuadInt::alpha_pow(k(3), 2);
        assert_eq!((p2.p(), p2.q()), (&BigInt::one(), &BigInt::from(3)));
    }

    #[test]
    fn alpha_pow_matches_sequence() {
        for kk in 1..=10 {
            for n in 1..=100 {
                let pw = QuadInt::alpha_pow(k(kk), n);
                assert_eq!(pw.p(), &kfib_int(k(kk), n - 1), "k={kk} n={n}");
                assert_eq!(pw.q(), &kfib_int(k(kk), n), "k={kk} n={n}");
            }
        }
    }

    #[test]
    fn comparison_examples() {
        let a = QuadInt::new(k(2), BigInt::from(2), BigInt::from(5));
        let b = QuadInt::from_int(k(2), BigInt::from(12));
        assert_eq!(a.try_cmp(&b).unwrap(), std::cmp::Ordering::Greater);

        let one = QuadInt::from_int(k(2), BigInt::one());
        assert_eq!(one.try_cmp(&one).unwrap(), std::cmp::Ordering::Equal);

        let alpha3 = QuadInt::new(k(3), BigInt::zero(), BigInt::one());
        let three = QuadInt::from_int(k(3), BigInt::from(3));
        assert_eq!(alpha3.try_cmp(&three).unwrap(), std::cmp::Ordering::Greater);

        let other_k = QuadInt::from_int(k(5), BigInt::one());
        assert!(one.try_cmp(&other_k).is_err());
        assert!(one.partial_cmp(&other_k).is_none());
    }

    #[test]
    fn sqrt_enclosure_examples() {
        let tol = ratio(1, 1_000_000);
        let d2 = sqrt_disc_enclosure(k(2), &tol);
        assert!(d2.width() <= tol);
        // √8 = 2.8284271…
        assert!(d2.lo() > &ratio(2_828_426, 1_000_000));
        assert!(d2.hi() < &ratio(2_828_428, 1_000_000));

        // α_2⁻² = 3 − 2√2 = 0.17157287…
        let inv2 = enclose(&BoundExpr::alpha(k(2)).pow(-2), &tol);
        assert!(inv2.lo() > &ratio(171_572, 1_000_000));
        assert!(inv2.hi() < &ratio(171_574, 1_000_000));

        // Containment at loose tolerance holds by construction.
        let loose = enclose(&BoundExpr::alpha(k(5)), &BigRational::one());
        let tight = enclose(&BoundExpr::alpha(k(5)), &tol);
        assert!(loose.contains_bound(&tight));
    }

    #[test]
    fn enclose_nests_under_refinement() {
        let exprs = [
            BoundExpr::alpha(k(2)).pow(-6),
            BoundExpr::int(1) - BoundExpr::int(3) / BoundExpr::sqrt_disc(k(4)),
            BoundExpr::alpha(k(3)) * BoundExpr::sqrt_disc(k(3)),
        ];
        for expr in &exprs {
            let mut tol = BigRational::one();
            let mut prev = enclose(expr, &tol);
            for _ in 0..5 {
                tol /= BigRational::from(BigInt::from(1000));
                let next = enclose(expr, &tol);
                assert!(prev.contains_bound(&next));
                assert!(next.width() <= tol);
                prev = next;
            }
        }
    }
}
