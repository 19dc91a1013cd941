//! Exact scalars over the rationals and over prime fields GF(p).
//!
//! Every [`FieldScalar`] carries its field, so mixing fields is caught at the
//! operation that would combine them. Values are always stored in canonical
//! form (reduced fractions with positive denominator, residues in `[0, p)`),
//! which makes derived equality and hashing agree with field equality.

use alloc::string::ToString;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// The largest accepted prime modulus. Residue products fit in `u64`.
pub const MAX_MODULUS: u64 = u32::MAX as u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    PrimeField,
}

/// Identifies the field a scalar or matrix lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldDescriptor {
    modulus: Option<u64>,
}

impl FieldDescriptor {
    pub const fn rationals() -> Self {
        FieldDescriptor { modulus: None }
    }

    /// GF(p). Rejects composite moduli and moduli above [`MAX_MODULUS`].
    pub fn prime(p: u64) -> Result<Self> {
        if p > MAX_MODULUS || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldDescriptor { modulus: Some(p) })
    }

    pub fn kind(&self) -> FieldKind {
        match self.modulus {
            None => FieldKind::Rationals,
            Some(_) => FieldKind::PrimeField,
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn zero(&self) -> FieldScalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldScalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> FieldScalar {
        match self.modulus {
            None => FieldScalar::from_rational(BigRational::from_integer(BigInt::from(v))),
            Some(p) => FieldScalar::residue(v.rem_euclid(p as i64) as u64, p),
        }
    }

    /// Parses a scalar in this field's text syntax.
    ///
    /// Rationals accept an optional sign, an integer and an optional
    /// `/denominator` with a positive denominator. Prime fields accept a bare
    /// residue in `[0, p)`.
    pub fn parse_scalar(&self, text: &str) -> Result<FieldScalar> {
        let bad = || Error::ParseScalar(text.to_string());
        match self.modulus {
            None => {
                let (num, den) = match text.split_once('/') {
                    Some((n, d)) => (n, Some(d)),
                    None => (text, None),
                };
                let num: BigInt = parse_signed(num).ok_or_else(bad)?;
                let den: BigInt = match den {
                    None => BigInt::one(),
                    Some(d) => {
                        if !is_digits(d) {
                            return Err(bad());
                        }
                        d.parse().map_err(|_| bad())?
                    }
                };
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(FieldScalar::from_rational(BigRational::new(num, den)))
            }
            Some(p) => {
                if !is_digits(text) {
                    return Err(bad());
                }
                let v: u64 = text.parse().map_err(|_| bad())?;
                if v >= p {
                    return Err(bad());
                }
                Ok(FieldScalar::residue(v, p))
            }
        }
    }

    /// Builds `num / den` as an exact rational, reducing to lowest terms.
    pub fn ratio(num: BigInt, den: BigInt) -> Result<FieldScalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldScalar::from_rational(BigRational::new(num, den)))
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus {
            None => write!(f, "Q"),
            Some(p) => write!(f, "GF {p}"),
        }
    }
}

fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

fn parse_signed(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if !is_digits(digits) {
        return None;
    }
    s.parse().ok()
}

/// Deterministic trial division; moduli are at most 32 bits.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

/// An exact element of Q or GF(p).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldScalar {
    repr: Repr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldScalar {
    fn from_rational(r: BigRational) -> Self {
        FieldScalar {
            repr: Repr::Rational(r),
        }
    }

    fn residue(value: u64, modulus: u64) -> Self {
        FieldScalar {
            repr: Repr::Residue { value, modulus },
        }
    }

    pub fn field(&self) -> FieldDescriptor {
        match &self.repr {
            Repr::Rational(_) => FieldDescriptor::rationals(),
            Repr::Residue { modulus, .. } => FieldDescriptor {
                modulus: Some(*modulus),
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rational(r) => r.is_zero(),
            Repr::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Rational(r) => r.is_one(),
            Repr::Residue { value, .. } => *value == 1,
        }
    }

    /// The residue for GF(p) scalars.
    pub fn as_residue(&self) -> Option<u64> {
        match &self.repr {
            Repr::Residue { value, .. } => Some(*value),
            Repr::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rational(r) => Some(r),
            Repr::Residue { .. } => None,
        }
    }

    /// Absolute size of numerator and denominator, in bits. Zero for residues.
    pub fn height_bits(&self) -> u64 {
        match &self.repr {
            Repr::Rational(r) => r.numer().bits().max(r.denom().bits()),
            Repr::Residue { .. } => 0,
        }
    }

    pub fn apply(&self, op: ArithOp, rhs: &FieldScalar) -> Result<FieldScalar> {
        match op {
            ArithOp::Add => self.checked_add(rhs),
            ArithOp::Sub => self.checked_sub(rhs),
            ArithOp::Mul => self.checked_mul(rhs),
            ArithOp::Div => self.checked_div(rhs),
        }
    }

    pub fn checked_add(&self, rhs: &FieldScalar) -> Result<FieldScalar> {
        match (&self.repr, &rhs.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Ok(Self::from_rational(a + b)),
            (Repr::Residue { value: a, modulus: p }, Repr::Residue { value: b, modulus: q })
                if p == q =>
            {
                Ok(Self::residue((a + b) % p, *p))
            }
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn checked_sub(&self, rhs: &FieldScalar) -> Result<FieldScalar> {
        match (&self.repr, &rhs.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Ok(Self::from_rational(a - b)),
            (Repr::Residue { value: a, modulus: p }, Repr::Residue { value: b, modulus: q })
                if p == q =>
            {
                Ok(Self::residue((a + p - b) % p, *p))
            }
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn checked_mul(&self, rhs: &FieldScalar) -> Result<FieldScalar> {
        match (&self.repr, &rhs.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Ok(Self::from_rational(a * b)),
            (Repr::Residue { value: a, modulus: p }, Repr::Residue { value: b, modulus: q })
                if p == q =>
            {
                Ok(Self::residue(a * b % p, *p))
            }
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn checked_div(&self, rhs: &FieldScalar) -> Result<FieldScalar> {
        if self.field() != rhs.field() {
            return Err(Error::FieldMismatch);
        }
        self.checked_mul(&rhs.inverse()?)
    }

    pub fn inverse(&self) -> Result<FieldScalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match &self.repr {
            Repr::Rational(r) => Ok(Self::from_rational(r.recip())),
            Repr::Residue { value, modulus } => {
                Ok(Self::residue(pow_mod(*value, modulus - 2, *modulus), *modulus))
            }
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

// Operator forms panic on field mismatch; matrices guarantee a single field.
impl Add for &FieldScalar {
    type Output = FieldScalar;
    fn add(self, rhs: &FieldScalar) -> FieldScalar {
        self.checked_add(rhs).expect("field mismatch in addition")
    }
}

impl Sub for &FieldScalar {
    type Output = FieldScalar;
    fn sub(self, rhs: &FieldScalar) -> FieldScalar {
        self.checked_sub(rhs).expect("field mismatch in subtraction")
    }
}

impl Mul for &FieldScalar {
    type Output = FieldScalar;
    fn mul(self, rhs: &FieldScalar) -> FieldScalar {
        self.checked_mul(rhs).expect("field mismatch in multiplication")
    }
}

impl Neg for &FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        match &self.repr {
            Repr::Rational(r) => FieldScalar::from_rational(-r),
            Repr::Residue { value, modulus } => {
                FieldScalar::residue((modulus - value) % modulus, *modulus)
            }
        }
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Repr::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl fmt::Debug for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rational(_) => write!(f, "{self}"),
            Repr::Residue { modulus, .. } => write!(f, "{self} (mod {modulus})"),
        }
    }
}
