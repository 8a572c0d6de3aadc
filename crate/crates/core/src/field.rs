//! Exact scalars over ℚ and prime fields.
//!
//! A [`FieldSpec`] names the field; every [`Scalar`] remembers which field it
//! lives in, and mixing fields inside one arithmetic operation is a bug that
//! panics. Validation of user input happens at the object boundaries, where
//! mismatches surface as [`Error::FieldMismatch`].

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest modulus accepted for prime fields; keeps residue products in `u64`.
pub const MAX_MODULUS: u64 = 1 << 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    /// The prime field of order `p`; rejects `p < 2`, composite `p`, and `p ≥ 2³²`.
    pub fn prime(p: u64) -> Result<Self> {
        if p < 2 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= MAX_MODULUS {
            return Err(Error::ModulusTooLarge(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    /// Number of elements, or `None` for ℚ.
    pub fn order(&self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(*p),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime(p) => Scalar::Residue { value: v.rem_euclid(*p as i64) as u64, modulus: *p },
        }
    }

    /// `num/den` in this field; `None` when `den` vanishes in the field.
    pub fn fraction(&self, num: i64, den: i64) -> Option<Scalar> {
        self.from_i64(num).checked_div(&self.from_i64(den))
    }

    fn lift_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            FieldSpec::Prime(p) => {
                let r = ((v % BigInt::from(*p)) + BigInt::from(*p)) % BigInt::from(*p);
                Scalar::Residue { value: r.to_u64().expect("residue fits in u64"), modulus: *p }
            }
        }
    }

    /// All field elements in increasing residue order (`0, 1, …, p−1`).
    pub fn elements(&self) -> Result<Vec<Scalar>> {
        match self {
            FieldSpec::Rationals => Err(Error::SearchOverRationals),
            FieldSpec::Prime(p) => Ok((0..*p).map(|value| Scalar::Residue { value, modulus: *p }).collect()),
        }
    }

    /// Parses `"3"`, `"-3"`, `"3/7"`; over F_p a fraction means `a·b⁻¹`.
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        let bad = || Error::ParseScalar(text.to_string());
        let t = text.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (t, None),
        };
        let parse_int = |s: &str| -> Result<BigInt> {
            if s.is_empty() || s.starts_with('+') {
                return Err(bad());
            }
            s.parse::<BigInt>().map_err(|_| bad())
        };
        let n = self.lift_bigint(&parse_int(num)?);
        match den {
            None => Ok(n),
            Some(d) => {
                let d = self.lift_bigint(&parse_int(d)?);
                n.checked_div(&d).ok_or_else(bad)
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element: a rational in lowest terms or a residue in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, modulus } => {
                Scalar::Residue { value: pow_mod(*value, modulus - 2, *modulus), modulus: *modulus }
            }
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Option<Scalar> {
        other.inverse().map(|inv| self * &inv)
    }

    /// Residue value for prime fields; the index used by lexicographic enumeration.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Residue { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
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

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

fn same_modulus(a: u64, b: u64) -> u64 {
    assert_eq!(a, b, "scalars from different prime fields");
    a
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) => {
                let m = same_modulus(*p, *q);
                Scalar::Residue { value: (a + b) % m, modulus: m }
            }
            _ => panic!("scalars from different fields"),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) => {
                let m = same_modulus(*p, *q);
                Scalar::Residue { value: (a + m - b) % m, modulus: m }
            }
            _ => panic!("scalars from different fields"),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) => {
                let m = same_modulus(*p, *q);
                Scalar::Residue { value: a * b % m, modulus: m }
            }
            _ => panic!("scalars from different fields"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => {
                Scalar::Residue { value: (modulus - value) % modulus, modulus: *modulus }
            }
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a += b,
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) => {
                let m = same_modulus(*p, *q);
                *a = (*a + b) % m;
            }
            _ => panic!("scalars from different fields"),
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl Scalar {
    /// `self += a·b` without an intermediate allocation in the prime case.
    pub fn add_product(&mut self, a: &Scalar, b: &Scalar) {
        match (&mut *self, a, b) {
            (
                Scalar::Residue { value, modulus },
                Scalar::Residue { value: x, .. },
                Scalar::Residue { value: y, .. },
            ) => {
                *value = (*value + x * y % *modulus) % *modulus;
            }
            _ => {
                let prod = a * b;
                *self += &prod;
            }
        }
    }
}
