//! Coefficient fields: the rationals and prime fields `GF(p)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("cannot parse field `{0}` (expected Q or Fp with p prime, e.g. F2)")]
    BadFieldName(String),
    #[error("cannot parse scalar `{text}` over {field}")]
    BadScalar { text: String, field: FieldSpec },
    #[error("scalar over {found} used where {expected} was required")]
    Mismatch {
        expected: FieldSpec,
        found: FieldSpec,
    },
}

/// The field `k` that Betti numbers and resolutions are computed over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
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

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::zero()),
            FieldSpec::Prime(p) => Scalar::Modular { value: 0, p },
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime(p) => Scalar::Modular {
                value: v.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    /// Reduces a rational into this field; `None` when the denominator is
    /// not invertible mod p.
    pub fn from_rational(self, q: &BigRational) -> Option<Scalar> {
        match self {
            FieldSpec::Rationals => Some(Scalar::Rational(q.clone())),
            FieldSpec::Prime(p) => {
                let modulus = BigInt::from(p);
                let reduce = |x: &BigInt| {
                    let r = ((x % &modulus) + &modulus) % &modulus;
                    r.to_u64().expect("residue fits in u64")
                };
                let num = reduce(q.numer());
                let den = reduce(q.denom());
                if den == 0 {
                    return None;
                }
                Some(Scalar::Modular {
                    value: mul_mod(num, inv_mod(den, p), p),
                    p,
                })
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

impl FromStr for FieldSpec {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        match t {
            "Q" | "QQ" | "q" => Ok(FieldSpec::Rationals),
            _ => {
                let digits = t
                    .strip_prefix('F')
                    .or_else(|| t.strip_prefix("GF"))
                    .or_else(|| t.strip_prefix("ZZ/"))
                    .ok_or_else(|| FieldError::BadFieldName(s.to_string()))?;
                let p: u64 = digits
                    .parse()
                    .map_err(|_| FieldError::BadFieldName(s.to_string()))?;
                FieldSpec::prime(p)
            }
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // extended Euclid on signed values; p < 2^32 so i64 is enough
    let (mut r0, mut r1) = (p as i64, (a % p) as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    assert_eq!(r0, 1, "{a} is not invertible mod {p}");
    t0.rem_euclid(p as i64) as u64
}

/// An exact field element tagged with its field.
///
/// Arithmetic between scalars of different fields is a programming error and
/// panics; entry points that accept user data check fields up front.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Modular { p, .. } => FieldSpec::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Modular { value, p } => Scalar::Modular {
                value: inv_mod(*value, *p),
                p: *p,
            },
        })
    }

    /// Parses the textual form written by `Display`: `-3/2` over Q,
    /// `4 mod 7` (or a bare residue) over GF(p).
    pub fn parse(text: &str, field: FieldSpec) -> Result<Scalar, FieldError> {
        let bad = || FieldError::BadScalar {
            text: text.to_string(),
            field,
        };
        let t = text.trim();
        match field {
            FieldSpec::Rationals => {
                let q = if let Some((n, d)) = t.split_once('/') {
                    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                    if d.is_zero() {
                        return Err(bad());
                    }
                    BigRational::new(n, d)
                } else {
                    BigRational::from_integer(t.parse().map_err(|_| bad())?)
                };
                Ok(Scalar::Rational(q))
            }
            FieldSpec::Prime(p) => {
                let body = match t.split_once("mod") {
                    Some((v, m)) => {
                        let m: u64 = m.trim().parse().map_err(|_| bad())?;
                        if m != p {
                            return Err(bad());
                        }
                        v.trim()
                    }
                    None => t,
                };
                let v: i64 = body.parse().map_err(|_| bad())?;
                Ok(field.from_i64(v))
            }
        }
    }

    fn combine(&self, other: &Scalar, op: Op) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(match op {
                Op::Add => a + b,
                Op::Sub => a - b,
                Op::Mul => a * b,
            }),
            (Scalar::Modular { value: a, p }, Scalar::Modular { value: b, p: q }) if p == q => {
                let value = match op {
                    Op::Add => (a + b) % p,
                    Op::Sub => (a + p - b) % p,
                    Op::Mul => mul_mod(*a, *b, *p),
                };
                Scalar::Modular { value, p: *p }
            }
            _ => panic!(
                "scalar field mismatch: {} vs {}",
                self.field(),
                other.field()
            ),
        }
    }
}

#[derive(Clone, Copy)]
enum Op {
    Add,
    Sub,
    Mul,
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:expr) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.combine(rhs, $op)
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.combine(&rhs, $op)
            }
        }
    };
}

scalar_binop!(Add, add, Op::Add);
scalar_binop!(Sub, sub, Op::Sub);
scalar_binop!(Mul, mul, Op::Mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Modular { value, p } => Scalar::Modular {
                value: (p - value) % p,
                p: *p,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => {
                let sign = if q.is_negative() { "-" } else { "" };
                write!(f, "{sign}{}/{}", q.numer().abs(), q.denom())
            }
            Scalar::Modular { value, p } => write!(f, "{value} mod {p}"),
        }
    }
}
