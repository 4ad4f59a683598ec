//! Exact scalars over the rationals and over prime fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::ScalarError;

/// Largest admissible characteristic. Residues are multiplied in `u128`, but keeping
/// `p < 2^32` lets every intermediate fit comfortably in `u64` as well.
pub const MAX_PRIME: u64 = (1 << 32) - 1;

/// The ground field of an algebra: either `Q` or `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldSpec {
    Rational,
    Prime { p: u64 },
}

impl FieldSpec {
    /// Prime field `F_p`; rejects composites and characteristics above [`MAX_PRIME`].
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(FieldSpec::Prime { p })
    }

    /// Checks the invariant on deserialized values.
    pub fn check(&self) -> Result<(), ScalarError> {
        match *self {
            FieldSpec::Rational => Ok(()),
            FieldSpec::Prime { p } => FieldSpec::prime(p).map(|_| ()),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime { p } => p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime { p } => Scalar::Prime {
                value: n.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    /// `n / d` in this field; `None` when `d` vanishes in the field.
    pub fn from_ratio(&self, n: &BigInt, d: &BigInt) -> Option<Scalar> {
        if d.is_zero() {
            return None;
        }
        match *self {
            FieldSpec::Rational => Some(Scalar::Rational(BigRational::new(n.clone(), d.clone()))),
            FieldSpec::Prime { p } => {
                let num = reduce_big(n, p);
                let den = reduce_big(d, p);
                if den == 0 {
                    return None;
                }
                Some(Scalar::Prime {
                    value: mul_mod(num, inv_mod(den, p), p),
                    p,
                })
            }
        }
    }

    /// Parses `"3"`, `"-7/2"`, and for prime fields also `"4 mod 7"`.
    pub fn parse(&self, s: &str) -> Result<Scalar, ScalarError> {
        let text = s.trim();
        let bad = || ScalarError::Parse(s.to_string());
        if let Some((residue, modulus)) = text.split_once("mod") {
            let modulus: u64 = modulus.trim().parse().map_err(|_| bad())?;
            match *self {
                FieldSpec::Prime { p } if p == modulus => {}
                _ => {
                    return Err(ScalarError::WrongField {
                        value: s.to_string(),
                        field: *self,
                    })
                }
            }
            return self.parse(residue);
        }
        let (n, d) = match text.split_once('/') {
            Some((n, d)) => (
                BigInt::from_str(n.trim()).map_err(|_| bad())?,
                BigInt::from_str(d.trim()).map_err(|_| bad())?,
            ),
            None => (BigInt::from_str(text).map_err(|_| bad())?, BigInt::one()),
        };
        self.from_ratio(&n, &d).ok_or_else(|| ScalarError::WrongField {
            value: s.to_string(),
            field: *self,
        })
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        s.field() == *self
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime { p } => write!(f, "F_{p}"),
        }
    }
}

/// An exact field element. Rationals are kept in lowest terms with a positive
/// denominator, residues in `[0, p)`, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rational,
            Scalar::Prime { p, .. } => FieldSpec::Prime { p: *p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Prime { value, p } => Scalar::Prime {
                value: inv_mod(*value, *p),
                p: *p,
            },
        })
    }

    /// Integer value for small rationals with denominator 1, or the residue.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(r) if r.is_integer() => r.to_integer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Prime { value, .. } => Some(*value as i64),
        }
    }

    /// Reduction of a rational into `F_p`; `None` if `p` divides the denominator.
    pub fn reduce_mod(&self, p: u64) -> Option<Scalar> {
        match self {
            Scalar::Rational(r) => FieldSpec::Prime { p }.from_ratio(r.numer(), r.denom()),
            Scalar::Prime { p: q, .. } if *q == p => Some(self.clone()),
            Scalar::Prime { .. } => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { value: a, p }, Scalar::Prime { value: b, p: q }) if p == q => {
                Scalar::Prime {
                    value: (a + b) % p,
                    p: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Prime { value: a, p }, Scalar::Prime { value: b, p: q }) if p == q => {
                Scalar::Prime {
                    value: (a + p - b) % p,
                    p: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { value: a, p }, Scalar::Prime { value: b, p: q }) if p == q => {
                Scalar::Prime {
                    value: mul_mod(*a, *b, *p),
                    p: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { value, p } => Scalar::Prime {
                value: (p - value) % p,
                p: *p,
            },
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn reduce_big(n: &BigInt, p: u64) -> u64 {
    let r = n % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    r.to_u64().expect("residue fits in u64")
}
