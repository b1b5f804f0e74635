//! Exact scalars over the rationals and over prime fields GF(p), p >= 5.
//!
//! Rationals keep a machine-word fast path and spill into arbitrary precision
//! only when a numerator or denominator leaves the `i64` range, so structure
//! constants like `1/2` never touch the allocator. Every value is normalized
//! (lowest terms, positive denominator), which makes derived equality exact.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest modulus accepted for prime fields; keeps residue products in `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Kind {
    Rational,
    Prime(u64),
}

/// The ambient field of a computation: Q, or GF(p) with p prime and p >= 5.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec(Kind);

impl FieldSpec {
    pub const fn rational() -> Self {
        FieldSpec(Kind::Rational)
    }

    /// GF(p). Characteristic 2 and 3 are rejected, as are composite moduli.
    pub fn prime(p: u64) -> Result<Self> {
        if p == 2 || p == 3 {
            return Err(Error::Field(format!(
                "characteristic {p} is not supported (need char != 2, 3)"
            )));
        }
        if p > MAX_PRIME {
            return Err(Error::Field(format!("modulus {p} exceeds {MAX_PRIME}")));
        }
        if !is_prime(p) {
            return Err(Error::Field(format!("modulus {p} is not prime")));
        }
        Ok(FieldSpec(Kind::Prime(p)))
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.0, Kind::Rational)
    }

    /// The modulus for prime fields, `None` for Q.
    pub fn modulus(&self) -> Option<u64> {
        match self.0 {
            Kind::Rational => None,
            Kind::Prime(p) => Some(p),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self.0 {
            Kind::Rational => Scalar::Q(Rational::from_integer(n)),
            Kind::Prime(p) => Scalar::Fp(Residue::new(n.rem_euclid(p as i64) as u64, p)),
        }
    }

    /// `num / den` in this field.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        let den = self.from_i64(den);
        if den.is_zero() {
            return Err(Error::Field("division by zero".into()));
        }
        Ok(&self.from_i64(num) * &den.inv())
    }

    pub fn vector_zero(&self, len: usize) -> Vec<Scalar> {
        vec![self.zero(); len]
    }

    pub fn unit_vector(&self, len: usize, index: usize) -> Vec<Scalar> {
        let mut v = self.vector_zero(len);
        v[index] = self.one();
        v
    }

    /// Parses `"n"` or `"n/d"`. For prime fields the value is reduced mod p.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let bad = || Error::Field(format!("malformed scalar {text:?}"));
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Field(format!("zero denominator in {text:?}")));
        }
        match self.0 {
            Kind::Rational => Ok(Scalar::Q(Rational::from_big(BigRational::new(num, den)))),
            Kind::Prime(p) => {
                let modulus = BigInt::from(p);
                let reduce = |x: &BigInt| x.mod_floor(&modulus).to_u64().unwrap();
                let den = Residue::new(reduce(&den), p);
                if den.value == 0 {
                    return Err(Error::Field(format!("denominator of {text:?} vanishes mod {p}")));
                }
                Ok(Scalar::Fp(Residue::new(reduce(&num), p).mul(den.inv())))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Kind::Rational => write!(f, "Q"),
            Kind::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A normalized rational number.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    // reduced, den > 0, neither component is i64::MIN
    Small(i64, i64),
    // only when the value does not fit `Small`
    Big(Box<BigRational>),
}

impl Rational {
    pub fn from_integer(n: i64) -> Self {
        Self::from_i128(n as i128, 1)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = -num;
            den = -den;
        }
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(n), Ok(d)) if n != i64::MIN && d != i64::MIN => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(Box::new(BigRational::new(num.into(), den.into())))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN && d != i64::MIN => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(Box::new(r))),
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    fn add(&self, other: &Self) -> Self {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &other.0) {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let Some(num) = (a * d).checked_add(c * b) {
                return Self::from_i128(num, b * d);
            }
        }
        Self::from_big(self.to_big() + other.to_big())
    }

    fn mul(&self, other: &Self) -> Self {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &other.0) {
            return Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128);
        }
        Self::from_big(self.to_big() * other.to_big())
    }

    fn neg(&self) -> Self {
        match &self.0 {
            Repr::Small(n, d) => Rational(Repr::Small(-n, *d)),
            Repr::Big(b) => Rational(Repr::Big(Box::new(-(**b).clone()))),
        }
    }

    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        match &self.0 {
            Repr::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Repr::Big(b) => Self::from_big(b.recip()),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) if b.denom().is_one() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

/// A residue in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    p: u64,
}

impl Residue {
    fn new(value: u64, p: u64) -> Self {
        debug_assert!(value < p);
        Residue { value, p }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    fn add(self, o: Self) -> Self {
        Residue::new((self.value + o.value) % self.p, self.p)
    }

    fn mul(self, o: Self) -> Self {
        Residue::new(self.value * o.value % self.p, self.p)
    }

    fn neg(self) -> Self {
        Residue::new((self.p - self.value) % self.p, self.p)
    }

    fn inv(self) -> Self {
        assert!(self.value != 0, "inverse of zero");
        // Fermat: a^(p-2)
        let (mut base, mut exp, mut acc) = (self.value, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        Residue::new(acc, self.p)
    }
}

/// An exact field element. Arithmetic between elements of different fields
/// is a logic error and panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rational),
    Fp(Residue),
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Q(_) => FieldSpec::rational(),
            Scalar::Fp(r) => FieldSpec(Kind::Prime(r.p)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp(r) => r.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => matches!(r.0, Repr::Small(1, 1)),
            Scalar::Fp(r) => r.value == 1,
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Q(r) => Scalar::Q(r.inv()),
            Scalar::Fp(r) => Scalar::Fp(r.inv()),
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.add(b)),
            (Scalar::Fp(a), Scalar::Fp(b)) if a.p == b.p => Scalar::Fp(a.add(*b)),
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.mul(b)),
            (Scalar::Fp(a), Scalar::Fp(b)) if a.p == b.p => Scalar::Fp(a.mul(*b)),
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(a.neg()),
            Scalar::Fp(a) => Scalar::Fp(a.neg()),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv()
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => r.fmt(f),
            Scalar::Fp(r) => write!(f, "{}", r.value),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Vector helpers shared across the crate.

pub(crate) fn vec_is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub(crate) fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `acc += c * v`, skipping the work when `c` is zero.
pub(crate) fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += &(c * x);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_characteristic() {
        assert!(FieldSpec::prime(2).is_err());
        assert!(FieldSpec::prime(3).is_err());
        assert!(FieldSpec::prime(9).is_err());
        assert!(FieldSpec::prime(5).is_ok());
        assert!(FieldSpec::prime(7).is_ok());
    }

    #[test]
    fn rationals_normalize() {
        let q = FieldSpec::rational();
        let a = q.from_ratio(2, -4).unwrap();
        assert_eq!(a.to_string(), "-1/2");
        assert_eq!(q.parse_scalar("-3/6").unwrap(), a);
        assert!((&a + &q.from_ratio(1, 2).unwrap()).is_zero());
    }

    #[test]
    fn rationals_spill_to_bigint_and_back() {
        let q = FieldSpec::rational();
        let big = q.from_i64(i64::MAX - 1);
        let sq = &big * &big;
        assert_eq!(sq.to_string(), "85070591730234615828950163710522949636");
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(matches!(&back, Scalar::Q(Rational(Repr::Small(..)))));
    }

    #[test]
    fn prime_arithmetic() {
        let f = FieldSpec::prime(5).unwrap();
        let two = f.from_i64(2);
        assert_eq!((&two * &two.inv()), f.one());
        assert_eq!(f.from_i64(-1).to_string(), "4");
        assert_eq!(f.parse_scalar("1/2").unwrap(), f.from_i64(3));
        assert!(f.parse_scalar("1/5").is_err());
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn mixing_fields_panics() {
        let _ = &FieldSpec::rational().one() + &FieldSpec::prime(5).unwrap().one();
    }
}
