//! Ground fields and their elements: prime fields F_p and the rationals.
//!
//! Elements are kept in canonical form at all times (residues in `0..p`,
//! reduced fractions with positive denominator), so equality of values is
//! equality of representations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// Largest admissible prime modulus. Keeping p below 2^31 lets all F_p
/// arithmetic run in u64/u128 without arbitrary precision.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// A ground field: F_p for a prime p, or the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Fp(u64),
    Rational,
}

impl Field {
    /// Validates p (primality, size) and returns F_p.
    pub fn prime(p: u64) -> Result<Field> {
        if p > MAX_PRIME {
            return Err(Error::invalid(format!(
                "modulus {p} exceeds the supported bound {MAX_PRIME}"
            )));
        }
        if !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        Ok(Field::Fp(p))
    }

    /// Characteristic: p or 0.
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Fp(p) => *p,
            Field::Rational => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Fp(p) => Scalar::Fp { p: *p, val: 0 },
            Field::Rational => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Fp(p) => Scalar::Fp { p: *p, val: 1 % *p },
            Field::Rational => Scalar::Rat(BigRational::one()),
        }
    }

    /// Element from an integer, reduced into the field.
    pub fn from_int(&self, n: i64) -> Scalar {
        match self {
            Field::Fp(p) => {
                let m = n.rem_euclid(*p as i64) as u64;
                Scalar::Fp { p: *p, val: m }
            }
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Fp(p) => write!(f, "F{p}"),
            Field::Rational => write!(f, "Q"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// A field element in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp { p: u64, val: u64 },
    Rat(BigRational),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Fp { p, .. } => Field::Fp(*p),
            Scalar::Rat(_) => Field::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp { val, .. } => *val == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp { p, val } => *val == 1 % *p,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Fp { p, val: a }, Scalar::Fp { p: q, val: b }) => {
                assert_eq!(p, q, "mixed moduli");
                Scalar::Fp { p: *p, val: (a + b) % p }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => panic!("mixed fields"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Fp { p, val } => Scalar::Fp { p: *p, val: (p - val) % p },
            Scalar::Rat(r) => Scalar::Rat(-r),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Fp { p, val: a }, Scalar::Fp { p: q, val: b }) => {
                assert_eq!(p, q, "mixed moduli");
                let prod = (*a as u128 * *b as u128) % (*p as u128);
                Scalar::Fp { p: *p, val: prod as u64 }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            _ => panic!("mixed fields"),
        }
    }

    /// Multiplicative inverse; panics on zero (checked by callers).
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Fp { p, val } => {
                assert!(*val != 0, "inverse of zero");
                Scalar::Fp { p: *p, val: inv_mod(*val, *p) }
            }
            Scalar::Rat(r) => {
                assert!(!r.is_zero(), "inverse of zero");
                Scalar::Rat(r.recip())
            }
        }
    }

    /// Canonical text rendering: residue for F_p, "a/b" (b > 0) for Q.
    pub fn render(&self) -> String {
        match self {
            Scalar::Fp { val, .. } => val.to_string(),
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
        }
    }

    /// Parses "n" or "n/d" into the field.
    pub fn parse(field: Field, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let n: i64 = num
            .parse()
            .map_err(|_| Error::invalid(format!("bad coefficient {s:?}")))?;
        match (field, den) {
            (_, None) => Ok(field.from_int(n)),
            (Field::Rational, Some(d)) => {
                let d: i64 = d
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad coefficient {s:?}")))?;
                if d == 0 {
                    return Err(Error::invalid("zero denominator"));
                }
                Ok(Scalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d))))
            }
            (Field::Fp(_), Some(d)) => {
                let d: i64 = d
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad coefficient {s:?}")))?;
                let dv = field.from_int(d);
                if dv.is_zero() {
                    return Err(Error::invalid(format!(
                        "denominator {d} is zero in {field}"
                    )));
                }
                Ok(field.from_int(n).mul(&dv.inv()))
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Modular inverse by extended Euclid; p prime, 0 < a < p.
fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "not invertible");
    old_s.rem_euclid(p as i128) as u64
}

/// Helper used when serializing rationals: BigRational itself is not serde.
pub fn scalar_to_json(s: &Scalar) -> serde_json::Value {
    match s {
        Scalar::Fp { val, .. } => serde_json::json!(val),
        Scalar::Rat(_) => serde_json::json!(s.render()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_validation() {
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(7).is_ok());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(MAX_PRIME + 2).is_err());
    }

    #[test]
    fn fp_arithmetic_canonical() {
        let f = Field::prime(7).unwrap();
        let a = f.from_int(5);
        let b = f.from_int(-3); // canonical residue 4
        assert_eq!(b, f.from_int(4));
        assert_eq!(a.add(&b), f.from_int(2));
        assert_eq!(a.mul(&b), f.from_int(6));
        assert!(a.mul(&a.inv()).is_one());
        assert_eq!(f.from_int(0).neg(), f.zero());
    }

    #[test]
    fn rational_arithmetic_reduced() {
        let f = Field::Rational;
        let half = Scalar::parse(f, "1/2").unwrap();
        let third = Scalar::parse(f, "-2/6").unwrap();
        assert_eq!(third.render(), "-1/3");
        assert_eq!(half.add(&third).render(), "1/6");
        assert!(half.mul(&half.inv()).is_one());
    }

    #[test]
    fn parse_fraction_in_fp() {
        let f = Field::prime(5).unwrap();
        // 1/2 = 3 mod 5
        assert_eq!(Scalar::parse(f, "1/2").unwrap(), f.from_int(3));
        assert!(Scalar::parse(f, "1/5").is_err());
    }

    #[test]
    fn field_axioms_sampled() {
        for p in [2u64, 3, 5, 31] {
            let f = Field::prime(p).unwrap();
            for a in 0..p.min(16) {
                for b in 0..p.min(16) {
                    let (x, y) = (f.from_int(a as i64), f.from_int(b as i64));
                    assert_eq!(x.add(&y), y.add(&x));
                    assert_eq!(x.mul(&y), y.mul(&x));
                    assert_eq!(x.sub(&y).add(&y), x);
                    if !y.is_zero() {
                        assert_eq!(x.mul(&y).mul(&y.inv()), x);
                    }
                }
            }
        }
    }
}
