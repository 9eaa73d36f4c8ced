//! Exact coefficient rings.
//!
//! Every scalar is stored as a [`BigRational`]; the [`Ring`] decides which
//! rationals are legal values and how arithmetic is reduced. Elements of
//! `F_p` are kept as integers in `0..p`, elements of `Z` as integers, and
//! elements of `Z_(p)` as rationals whose reduced denominator is prime to `p`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::combinat::is_prime;

pub type Scalar = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{value} is not an element of {ring}")]
    NotAnElement { value: String, ring: Ring },
    #[error("{value} is not invertible in {ring}")]
    NotInvertible { value: String, ring: Ring },
    #[error("ring mismatch: {0} vs {1}")]
    Mismatch(Ring, Ring),
    #[error("{0} is not a field")]
    NotAField(Ring),
    #[error("cannot parse ring `{0}` (expected Z, Q, Fp:<p> or Zp:<p>)")]
    Parse(String),
}

/// The coefficient rings supported by the library.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    Rationals,
    PrimeField(u64),
    /// Rationals with denominator prime to `p`.
    PLocal(u64),
}

impl Ring {
    pub fn prime_field(p: u64) -> Result<Ring, RingError> {
        if is_prime(p) {
            Ok(Ring::PrimeField(p))
        } else {
            Err(RingError::NotPrime(p))
        }
    }

    pub fn p_local(p: u64) -> Result<Ring, RingError> {
        if is_prime(p) {
            Ok(Ring::PLocal(p))
        } else {
            Err(RingError::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Ring::PrimeField(p) => *p,
            _ => 0,
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, Ring::Rationals | Ring::PrimeField(_))
    }

    /// The prime attached to `F_p` or `Z_(p)`.
    pub fn prime(&self) -> Option<u64> {
        match self {
            Ring::PrimeField(p) | Ring::PLocal(p) => Some(*p),
            _ => None,
        }
    }

    /// Whether every integer-coefficient expression can be mapped into this ring
    /// and back into `Q` without loss (no torsion).
    pub fn is_torsion_free(&self) -> bool {
        !matches!(self, Ring::PrimeField(_))
    }

    pub fn ensure_same(&self, other: &Ring) -> Result<(), RingError> {
        if self == other {
            Ok(())
        } else {
            Err(RingError::Mismatch(*self, *other))
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    /// Image of an integer.
    pub fn from_int<T: Into<BigInt>>(&self, n: T) -> Scalar {
        let n: BigInt = n.into();
        match self {
            Ring::PrimeField(p) => Scalar::from_integer(n.mod_floor(&BigInt::from(*p))),
            _ => Scalar::from_integer(n),
        }
    }

    /// Coerce a rational into this ring, failing when it is not a legal value.
    pub fn element(&self, q: Scalar) -> Result<Scalar, RingError> {
        match self {
            Ring::Rationals => Ok(q),
            Ring::Integers => {
                if q.is_integer() {
                    Ok(q)
                } else {
                    Err(self.not_an_element(&q))
                }
            }
            Ring::PLocal(p) => {
                if (q.denom() % BigInt::from(*p)).is_zero() {
                    Err(self.not_an_element(&q))
                } else {
                    Ok(q)
                }
            }
            Ring::PrimeField(p) => {
                let p = BigInt::from(*p);
                let den = q.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(self.not_an_element(&q));
                }
                let inv = mod_inverse(&den, &p).expect("denominator coprime to p");
                Ok(Scalar::from_integer((q.numer() * inv).mod_floor(&p)))
            }
        }
    }

    fn not_an_element(&self, q: &Scalar) -> RingError {
        RingError::NotAnElement { value: q.to_string(), ring: *self }
    }

    fn reduce(&self, q: Scalar) -> Scalar {
        match self {
            Ring::PrimeField(p) => {
                debug_assert!(q.is_integer());
                Scalar::from_integer(q.numer().mod_floor(&BigInt::from(*p)))
            }
            Ring::PLocal(p) => {
                assert!(
                    !(q.denom() % BigInt::from(*p)).is_zero(),
                    "Z_({p}) invariant violated by {q}"
                );
                q
            }
            _ => q,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a - b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a * b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.reduce(-a)
    }

    pub fn pow(&self, a: &Scalar, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar, RingError> {
        if a.is_zero() {
            return Err(RingError::NotInvertible { value: a.to_string(), ring: *self });
        }
        let candidate = a.recip();
        match self {
            Ring::PrimeField(_) => self.element(candidate),
            _ => self.element(candidate).map_err(|_| RingError::NotInvertible {
                value: a.to_string(),
                ring: *self,
            }),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, RingError> {
        let inv = self.inv(b)?;
        Ok(self.mul(a, &inv))
    }

    pub fn is_unit(&self, a: &Scalar) -> bool {
        self.inv(a).is_ok()
    }

    /// Map a scalar from `Z`, `Q` or `Z_(p)` into this ring.
    pub fn coerce_from(&self, a: &Scalar) -> Result<Scalar, RingError> {
        self.element(a.clone())
    }

    /// Short textual name used by the CLI (`Z`, `Q`, `Fp:3`, `Zp:3`).
    pub fn tag(&self) -> String {
        match self {
            Ring::Integers => "Z".into(),
            Ring::Rationals => "Q".into(),
            Ring::PrimeField(p) => format!("Fp:{p}"),
            Ring::PLocal(p) => format!("Zp:{p}"),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Rationals => write!(f, "Q"),
            Ring::PrimeField(p) => write!(f, "F_{p}"),
            Ring::PLocal(p) => write!(f, "Z_({p})"),
        }
    }
}

impl FromStr for Ring {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "Z" | "ZZ" => return Ok(Ring::Integers),
            "Q" | "QQ" => return Ok(Ring::Rationals),
            _ => {}
        }
        let (head, p) = s.split_once(':').ok_or_else(|| RingError::Parse(s.into()))?;
        let p: u64 = p.trim().parse().map_err(|_| RingError::Parse(s.into()))?;
        match head.trim() {
            "Fp" | "F" => Ring::prime_field(p),
            "Zp" | "Z(p)" => Ring::p_local(p),
            _ => Err(RingError::Parse(s.into())),
        }
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Render a scalar as a decimal string (`"3"`, `"-1/2"`).
pub fn scalar_string(a: &Scalar) -> String {
    if a.is_integer() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

/// Small integer view of a scalar, when it fits.
pub fn scalar_to_i64(a: &Scalar) -> Option<i64> {
    if a.is_integer() {
        a.numer().to_i64()
    } else {
        None
    }
}

pub fn is_negative(a: &Scalar) -> bool {
    a.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::new(n.into(), d.into())
    }

    #[test]
    fn prime_field_reduces() {
        let f5 = Ring::prime_field(5).unwrap();
        assert_eq!(f5.from_int(-1), q(4, 1));
        assert_eq!(f5.add(&q(3, 1), &q(4, 1)), q(2, 1));
        assert_eq!(f5.inv(&q(2, 1)).unwrap(), q(3, 1));
        assert_eq!(f5.element(q(1, 2)).unwrap(), q(3, 1));
        assert!(f5.element(q(1, 5)).is_err());
    }

    #[test]
    fn non_prime_rejected() {
        assert_eq!(Ring::prime_field(6), Err(RingError::NotPrime(6)));
        assert!(Ring::p_local(1).is_err());
    }

    #[test]
    fn p_local_checks_denominators() {
        let z3 = Ring::p_local(3).unwrap();
        assert!(z3.element(q(1, 2)).is_ok());
        assert!(z3.element(q(1, 6)).is_err());
        assert!(z3.inv(&q(3, 1)).is_err());
        assert_eq!(z3.inv(&q(2, 1)).unwrap(), q(1, 2));
    }

    #[test]
    fn integers_reject_fractions() {
        assert!(Ring::Integers.element(q(1, 2)).is_err());
        assert!(Ring::Integers.inv(&q(2, 1)).is_err());
        assert_eq!(Ring::Integers.inv(&q(-1, 1)).unwrap(), q(-1, 1));
    }

    #[test]
    fn parse_tags() {
        assert_eq!("Z".parse::<Ring>().unwrap(), Ring::Integers);
        assert_eq!("Fp:7".parse::<Ring>().unwrap(), Ring::PrimeField(7));
        assert_eq!("Zp:2".parse::<Ring>().unwrap(), Ring::PLocal(2));
        assert!("Fp:8".parse::<Ring>().is_err());
        assert!("R".parse::<Ring>().is_err());
        for r in [Ring::Integers, Ring::Rationals, Ring::PrimeField(3), Ring::PLocal(5)] {
            assert_eq!(r.tag().parse::<Ring>().unwrap(), r);
        }
    }
}
