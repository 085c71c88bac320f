//! Exact scalars: arbitrary-precision rationals or prime-field elements.
//! No floating point exists anywhere in this crate.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Zero};

use super::LinAlgError;

/// The coefficient field of a representation: the rationals or F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Q,
    Fp(u64),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec::Q
    }

    pub fn prime(p: u64) -> Result<Self, LinAlgError> {
        if is_prime(p) {
            Ok(FieldSpec::Fp(p))
        } else {
            Err(LinAlgError::NotPrime(p))
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Q => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Fp(p) => Scalar::Fp {
                p: *p,
                val: n.rem_euclid(*p as i64) as u64,
            },
        }
    }

    /// Parses an integer literal or an `a/b` fraction (rationals only).
    pub fn parse(&self, text: &str) -> Result<Scalar, LinAlgError> {
        let bad = || LinAlgError::BadScalar(text.to_string());
        match self {
            FieldSpec::Q => {
                let (num, den) = match text.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (text, "1"),
                };
                let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
                let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar::Rat(BigRational::new(num, den)))
            }
            FieldSpec::Fp(_) => {
                let n: i64 = text.trim().parse().map_err(|_| bad())?;
                Ok(self.from_i64(n))
            }
        }
    }
}

/// An element of an exact field, kept in canonical form: rationals in
/// lowest terms with positive denominator (enforced by `BigRational`),
/// prime-field values in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Fp { p: u64, val: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Q,
            Scalar::Fp { p, .. } => FieldSpec::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { val, .. } => *val == 1,
        }
    }

    /// Multiplicative inverse. `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(r.recip()))
                }
            }
            Scalar::Fp { p, val } => {
                if *val == 0 {
                    None
                } else {
                    // Fermat: val^(p-2) mod p.
                    let mut result: u128 = 1;
                    let mut base = *val as u128;
                    let mut exp = *p - 2;
                    let modulus = *p as u128;
                    while exp > 0 {
                        if exp & 1 == 1 {
                            result = result * base % modulus;
                        }
                        base = base * base % modulus;
                        exp >>= 1;
                    }
                    Some(Scalar::Fp {
                        p: *p,
                        val: result as u64,
                    })
                }
            }
        }
    }
}

fn mismatch() -> ! {
    panic!("scalar arithmetic across different fields")
}

impl Add for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { p, val: a }, Scalar::Fp { p: q, val: b }) if p == q => Scalar::Fp {
                p: *p,
                val: ((*a as u128 + *b as u128) % *p as u128) as u64,
            },
            _ => mismatch(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Fp { p, val: a }, Scalar::Fp { p: q, val: b }) if p == q => Scalar::Fp {
                p: *p,
                val: ((*a as u128 + (*p - *b) as u128) % *p as u128) as u64,
            },
            _ => mismatch(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { p, val: a }, Scalar::Fp { p: q, val: b }) if p == q => Scalar::Fp {
                p: *p,
                val: ((*a as u128 * *b as u128) % *p as u128) as u64,
            },
            _ => mismatch(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { p, val } => Scalar::Fp {
                p: *p,
                val: if *val == 0 { 0 } else { p - val },
            },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { val, .. } => write!(f, "{val}"),
        }
    }
}

impl Scalar {
    /// JSON form: plain integer when possible, `"a/b"` string otherwise.
    pub fn to_json_value(&self) -> serde_json::Value {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    if let Ok(n) = i64::try_from(r.numer().clone()) {
                        return serde_json::Value::from(n);
                    }
                }
                serde_json::Value::from(self.to_string())
            }
            Scalar::Fp { val, .. } => serde_json::Value::from(*val),
        }
    }

    /// Parses a JSON entry (integer or string) in the given field.
    pub fn from_json_value(field: FieldSpec, v: &serde_json::Value) -> Result<Scalar, LinAlgError> {
        match v {
            serde_json::Value::Number(n) => {
                let n = n
                    .as_i64()
                    .ok_or_else(|| LinAlgError::BadScalar(v.to_string()))?;
                Ok(field.from_i64(n))
            }
            serde_json::Value::String(s) => field.parse(s),
            _ => Err(LinAlgError::BadScalar(v.to_string())),
        }
    }
}
