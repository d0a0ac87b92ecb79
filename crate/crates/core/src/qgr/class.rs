use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freealg::Arity;

/// A nonnegative element `t · d^(-i)` of `Z[1/d]` in normal form.
///
/// Normal form: `t = 0` has `i = 0`; otherwise `d ∤ t` (for `d ≥ 2`). For
/// `d = 1` the exponent is always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawClass")]
pub struct QgrClass {
    t: u64,
    i: i64,
    d: Arity,
}

#[derive(Deserialize)]
struct RawClass {
    t: u64,
    i: i64,
    d: usize,
}

impl TryFrom<RawClass> for QgrClass {
    type Error = Error;
    fn try_from(raw: RawClass) -> Result<Self> {
        Ok(QgrClass::new(Arity::new(raw.d)?, raw.t, raw.i))
    }
}

impl QgrClass {
    /// The class of `t · d^(-i)`, normalized.
    // `is_multiple_of` is newer than the declared minimum toolchain
    #[allow(clippy::manual_is_multiple_of)]
    pub fn new(d: Arity, mut t: u64, mut i: i64) -> Self {
        if t == 0 || d.get() == 1 {
            return QgrClass { t, i: 0, d };
        }
        let base = d.get() as u64;
        while t % base == 0 {
            t /= base;
            i -= 1;
        }
        QgrClass { t, i, d }
    }

    pub fn zero(d: Arity) -> Self {
        QgrClass { t: 0, i: 0, d }
    }

    pub fn one(d: Arity) -> Self {
        QgrClass { t: 1, i: 0, d }
    }

    /// `[O(m)] = d^m`.
    pub fn of_twist(d: Arity, m: i64) -> Self {
        QgrClass::new(d, 1, -m)
    }

    pub fn numerator(&self) -> u64 {
        self.t
    }

    pub fn exponent(&self) -> i64 {
        self.i
    }

    pub fn arity(&self) -> Arity {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.t == 0
    }

    /// Multiplies by `d^m`.
    pub fn twist(&self, m: i64) -> Self {
        if self.t == 0 || self.d.get() == 1 {
            return *self;
        }
        QgrClass { t: self.t, i: self.i - m, d: self.d }
    }

    /// The `r` with `class = r · d^twist`, if it is a nonnegative integer.
    pub fn multiplicity_at(&self, twist: i64) -> Option<u64> {
        if self.t == 0 {
            return Some(0);
        }
        if self.d.get() == 1 {
            return Some(self.t);
        }
        let e = -self.i - twist;
        if e < 0 {
            return None;
        }
        let scale = (self.d.get() as u64).checked_pow(u32::try_from(e).ok()?)?;
        self.t.checked_mul(scale)
    }

    pub fn to_ratio(&self) -> BigRational {
        let d = BigInt::from(self.d.get());
        let t = BigRational::from_integer(BigInt::from(self.t));
        if self.i >= 0 {
            t / BigRational::from_integer(num_traits::pow(d, self.i as usize))
        } else {
            t * BigRational::from_integer(num_traits::pow(d, (-self.i) as usize))
        }
    }

    /// The class of a nonnegative rational whose denominator divides a power of `d`.
    pub fn from_ratio(d: Arity, q: &BigRational) -> Option<Self> {
        if q.is_negative() {
            return None;
        }
        if q.is_zero() {
            return Some(QgrClass::zero(d));
        }
        let base = BigInt::from(d.get());
        let (num, den) = (q.numer().clone(), q.denom().clone());
        if den.is_one() {
            // integer: pull out powers of d
            let mut n = num;
            let mut i = 0i64;
            while d.get() > 1 && (&n % &base).is_zero() {
                n /= &base;
                i -= 1;
            }
            return Some(QgrClass { t: n.to_u64()?, i, d });
        }
        if d.get() == 1 {
            return None;
        }
        let mut scaled = num;
        let mut i = 0i64;
        let max_steps = den.bits() as i64 + 1;
        while !(&scaled % &den).is_zero() {
            if i > max_steps {
                return None;
            }
            scaled *= &base;
            i += 1;
        }
        let t = (scaled / &den).to_u64()?;
        Some(QgrClass::new(d, t, i))
    }

    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        if self.d != other.d {
            return None;
        }
        let sum = self.to_ratio() + other.to_ratio();
        QgrClass::from_ratio(self.d, &sum)
    }

    /// `self / k`, when it still lies in `Z[1/d]`.
    pub fn divide_by(&self, k: u64) -> Option<Self> {
        if k == 0 {
            return None;
        }
        QgrClass::from_ratio(self.d, &(self.to_ratio() / BigRational::from_integer(BigInt::from(k))))
    }

    /// `self · k`.
    pub fn times(&self, k: u64) -> Self {
        let q = self.to_ratio() * BigRational::from_integer(BigInt::from(k));
        QgrClass::from_ratio(self.d, &q).expect("class numerator fits in u64")
    }

    /// Least common exponent `m` with both classes integral multiples of `d^(-m)`.
    pub fn common_twist(&self, other: &Self) -> i64 {
        let e = |c: &QgrClass| if c.t == 0 { i64::MIN } else { c.i };
        let m = e(self).max(e(other));
        if m == i64::MIN {
            0
        } else {
            m
        }
    }
}

impl Add for QgrClass {
    type Output = QgrClass;
    fn add(self, rhs: QgrClass) -> QgrClass {
        self.checked_add(&rhs).expect("classes over the same arity with representable sum")
    }
}

impl PartialOrd for QgrClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        (self.d == other.d).then(|| self.to_ratio().cmp(&other.to_ratio()))
    }
}

impl fmt::Display for QgrClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.to_ratio();
        if q.denom().is_one() {
            write!(f, "{}", q.numer())
        } else {
            write!(f, "{}/{}", q.numer(), q.denom())
        }
    }
}

/// Signed combination `Σ d^(-b)` as an exact rational.
pub(crate) fn signed_power_sum(d: Arity, positive: &[i64], negative: &[i64]) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(d.get()));
    let pow = |e: i64| -> BigRational {
        if e >= 0 {
            num_traits::pow(base.clone(), e as usize).recip()
        } else {
            num_traits::pow(base.clone(), (-e) as usize)
        }
    };
    let mut acc = BigRational::zero();
    for &b in positive {
        acc += pow(b);
    }
    for &b in negative {
        acc -= pow(b);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: usize) -> Arity {
        Arity::new(n).unwrap()
    }

    #[test]
    fn normal_form() {
        let c = QgrClass::new(d(2), 8, 0);
        assert_eq!((c.numerator(), c.exponent()), (1, -3));
        let half = QgrClass::new(d(2), 1, 1);
        assert_eq!(half.to_string(), "1/2");
        assert_eq!(half.twist(1), QgrClass::one(d(2)));
        assert_eq!(QgrClass::new(d(2), 0, 5), QgrClass::zero(d(2)));
        assert_eq!(QgrClass::new(d(1), 6, 3).exponent(), 0);
    }

    #[test]
    fn multiplicities() {
        let one = QgrClass::one(d(2));
        assert_eq!(one.multiplicity_at(-1), Some(2));
        assert_eq!(one.multiplicity_at(-3), Some(8));
        assert_eq!(one.multiplicity_at(1), None);
        assert_eq!(QgrClass::new(d(2), 1, 1).multiplicity_at(0), None);
        assert_eq!(QgrClass::zero(d(3)).multiplicity_at(7), Some(0));
    }

    #[test]
    fn ratio_roundtrip_and_arithmetic() {
        let q = BigRational::new(3.into(), 4.into());
        let c = QgrClass::from_ratio(d(2), &q).unwrap();
        assert_eq!((c.numerator(), c.exponent()), (3, 2));
        assert_eq!(c.to_ratio(), q);
        assert!(QgrClass::from_ratio(d(2), &BigRational::new(1.into(), 3.into())).is_none());
        let sum = c + QgrClass::new(d(2), 1, 2);
        assert_eq!(sum, QgrClass::one(d(2)));
        assert_eq!(QgrClass::one(d(2)).divide_by(2), Some(QgrClass::new(d(2), 1, 1)));
        assert_eq!(QgrClass::one(d(3)).divide_by(2), None);
    }

    #[test]
    fn json_schema() {
        let c = QgrClass::new(d(2), 1, 1);
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"{"t":1,"i":1,"d":2}"#);
        let back: QgrClass = serde_json::from_str(r#"{"t":4,"i":0,"d":2}"#).unwrap();
        assert_eq!(back, QgrClass::of_twist(d(2), 2));
    }
}
