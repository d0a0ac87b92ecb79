//! Exact coefficient fields.
//!
//! Everything downstream is generic over [`Field`]. Two implementations are
//! provided: [`Rational`] (arbitrary precision) and the prime field [`Fp`].

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Which coefficient field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

pub trait Field:
    Clone
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_i64(n: i64) -> Self;
    /// Image of `num/den`, `None` when `den` vanishes in the field.
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self>;
    fn spec() -> FieldSpec;

    /// Parses `"3"`, `"-1/2"` and similar.
    fn parse_ratio(text: &str) -> Option<Self> {
        let text = text.trim();
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (BigInt::from_str(n.trim()).ok()?, BigInt::from_str(d.trim()).ok()?),
            None => (BigInt::from_str(text).ok()?, BigInt::one()),
        };
        Self::from_ratio(&num, &den)
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.clone() * i)
    }

    /// True when the printed form needs a leading minus sign.
    fn is_negative_display(&self) -> bool {
        false
    }
}

/// Exact rational number.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

macro_rules! forward_binop {
    ($ty:ty, $tr:ident, $m:ident, $atr:ident, $am:ident) => {
        impl $tr for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                <$ty>::from_inner(self.into_inner().$m(rhs.into_inner()))
            }
        }
        impl $atr for $ty {
            fn $am(&mut self, rhs: $ty) {
                let lhs = std::mem::replace(self, <$ty as Field>::zero());
                *self = lhs.$m(rhs);
            }
        }
    };
}

impl Rational {
    fn from_inner(v: BigRational) -> Self {
        Rational(v)
    }
    fn into_inner(self) -> BigRational {
        self.0
    }
}

forward_binop!(Rational, Add, add, AddAssign, add_assign);
forward_binop!(Rational, Sub, sub, SubAssign, sub_assign);
forward_binop!(Rational, Mul, mul, MulAssign, mul_assign);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }
    fn from_i64(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(Rational(BigRational::new(num.clone(), den.clone())))
        }
    }
    fn spec() -> FieldSpec {
        FieldSpec::Rationals
    }
    fn is_negative_display(&self) -> bool {
        self.0.is_negative()
    }
}

/// The prime field with `P` elements. `P` must be prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 + rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 + P as u128 - rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> AddAssign for Fp<P> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<const P: u64> SubAssign for Fp<P> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<const P: u64> MulAssign for Fp<P> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
    fn from_i64(n: i64) -> Self {
        Fp((n as i128).rem_euclid(P as i128) as u64)
    }
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        let p = BigInt::from(P);
        let reduce = |x: &BigInt| x.mod_floor(&p).to_u64().map(Fp::<P>);
        let n = reduce(num)?;
        let d = reduce(den)?;
        d.inv().map(|di| n * di)
    }
    fn spec() -> FieldSpec {
        FieldSpec::Prime(P)
    }
}

/// Primes accepted for `GF(p)` by front ends that dispatch at run time.
pub const SUPPORTED_PRIMES: &[u64] = &[
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 32003, 65521,
    2147483647,
];

/// Runs `$body` with the type alias `$f` bound to the field named by `$spec`.
/// Expands to an `Option` that is `None` for unsupported primes.
#[macro_export]
macro_rules! with_field {
    ($spec:expr, $f:ident => $body:expr) => {{
        match $spec {
            $crate::field::FieldSpec::Rationals => {
                type $f = $crate::field::Rational;
                Some($body)
            }
            $crate::field::FieldSpec::Prime(p) => $crate::with_field!(@primes p, $f, $body;
                2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73,
                79, 83, 89, 97, 101, 32003, 65521, 2147483647),
        }
    }};
    (@primes $p:ident, $f:ident, $body:expr; $($q:literal),*) => {
        match $p {
            $(
                $q => {
                    type $f = $crate::field::Fp<$q>;
                    Some($body)
                }
            )*
            _ => None,
        }
    };
}
