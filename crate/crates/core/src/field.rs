//! Exact coefficient fields: the rationals and small prime fields.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A field with exact arithmetic.
pub trait Field:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Short tag used in reports, e.g. `QQ` or `Fp:32003`.
    fn tag() -> String;
    fn characteristic() -> u64;
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn from_i64(v: i64) -> Self;
    /// Maps `num / den`; `None` when the denominator vanishes in the field.
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self>;

    fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }
    fn add_assign(&mut self, o: &Self) {
        *self = self.add(o);
    }
    /// `self -= a * b`
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.sub(&a.mul(b));
    }
    fn is_minus_one(&self) -> bool {
        self.neg().is_one()
    }
}

/// Rational numbers, always stored in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Q(pub BigRational);

impl Q {
    pub fn new(num: i64, den: i64) -> Self {
        Q(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }
    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Field for Q {
    fn tag() -> String {
        "QQ".to_string()
    }
    fn characteristic() -> u64 {
        0
    }
    fn zero() -> Self {
        Q(BigRational::zero())
    }
    fn one() -> Self {
        Q(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn add(&self, o: &Self) -> Self {
        Q(&self.0 + &o.0)
    }
    fn sub(&self, o: &Self) -> Self {
        Q(&self.0 - &o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        Q(&self.0 * &o.0)
    }
    fn neg(&self) -> Self {
        Q(-&self.0)
    }
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Q(self.0.recip())
    }
    fn from_i64(v: i64) -> Self {
        Q(BigRational::from_integer(BigInt::from(v)))
    }
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(Q(BigRational::new(num.clone(), den.clone())))
        }
    }
    fn add_assign(&mut self, o: &Self) {
        self.0 += &o.0;
    }
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        self.0 -= &a.0 * &b.0;
    }
}

/// The prime field of order `P`. `P` must be an odd prime below 2^32.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn value(&self) -> u64 {
        self.0
    }
    fn pow(mut b: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % P;
            }
            b = b * b % P;
            e >>= 1;
        }
        r
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // symmetric representative reads better for small coefficients
        if self.0 > P / 2 {
            write!(f, "-{}", P - self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl<const P: u64> Field for Fp<P> {
    fn tag() -> String {
        format!("Fp:{P}")
    }
    fn characteristic() -> u64 {
        P
    }
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn is_one(&self) -> bool {
        self.0 == 1
    }
    fn add(&self, o: &Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= P { s - P } else { s })
    }
    fn sub(&self, o: &Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + P - o.0 })
    }
    fn mul(&self, o: &Self) -> Self {
        Fp(self.0 * o.0 % P)
    }
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        Fp(Self::pow(self.0, P - 2))
    }
    fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        let p = BigInt::from(P);
        let n = num.mod_floor(&p).to_u64()?;
        let d = den.mod_floor(&p).to_u64()?;
        if d == 0 {
            None
        } else {
            Some(Fp(n).mul(&Fp(d).inv()))
        }
    }
}

/// Primes accepted by `--field Fp:<p>`.
pub const SUPPORTED_PRIMES: [u64; 3] = [101, 32003, 2147483647];

pub type F101 = Fp<101>;
pub type F32003 = Fp<32003>;
pub type F2p31 = Fp<2147483647>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic() {
        let a = Q::new(1, 2);
        let b = Q::new(1, 3);
        assert_eq!(a.add(&b), Q::new(5, 6));
        assert_eq!(a.mul(&b).inv(), Q::from_i64(6));
        assert_eq!(format!("{}", Q::new(-4, 6)), "-2/3");
    }

    #[test]
    fn prime_field_inverse() {
        for v in 1..101 {
            let x = F101::from_i64(v);
            assert!(x.mul(&x.inv()).is_one());
        }
        let x = F2p31::from_i64(-5);
        assert!(x.add(&F2p31::from_i64(5)).is_zero());
        assert_eq!(
            F101::from_ratio(&BigInt::from(1), &BigInt::from(2)),
            Some(F101::from_i64(51))
        );
        assert_eq!(F101::from_ratio(&BigInt::from(1), &BigInt::from(202)), None);
    }
}
