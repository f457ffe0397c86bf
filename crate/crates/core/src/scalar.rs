//! Ground fields and their elements.
//!
//! Two families are supported: the rationals, backed by arbitrary-precision
//! integers and kept in lowest terms, and prime fields `GF(p)` with a
//! word-sized prime modulus. A [`Scalar`] for a prime field carries its
//! modulus so that arithmetic operators can be implemented directly on it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// Prime field `GF(p)`; rejects composite or degenerate moduli.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::InvalidModulus(p))
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some(*p),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Field::Prime(_))
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Residue {
                value: (v as i128).rem_euclid(p as i128) as u64,
                modulus: p,
            },
        }
    }

    /// Element `num/den`. Panics if `den` is zero (or divisible by the modulus).
    pub fn from_ratio(&self, num: i64, den: i64) -> Scalar {
        let n = self.from_i64(num);
        let d = self.from_i64(den);
        &n * &d.inverse().expect("zero denominator")
    }

    /// Parses an entry in the matrix text format: `a` or `a/b` with `b > 0`.
    /// Prime-field entries must be canonical residues.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let bad = || Error::Parse(format!("invalid entry `{s}` for field {self}"));
        match *self {
            Field::Rationals => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n, Some(d)),
                    None => (s, None),
                };
                let num: BigInt = num.parse().map_err(|_| bad())?;
                let den: BigInt = match den {
                    Some(d) => d.parse().map_err(|_| bad())?,
                    None => BigInt::one(),
                };
                if !den.is_positive() {
                    return Err(bad());
                }
                Ok(Scalar::Rational(BigRational::new(num, den)))
            }
            Field::Prime(p) => {
                let v: u64 = s.parse().map_err(|_| bad())?;
                if v >= p {
                    return Err(bad());
                }
                Ok(Scalar::Residue {
                    value: v,
                    modulus: p,
                })
            }
        }
    }

    /// Every element of a prime field, in residue order.
    pub fn elements(&self) -> Result<Vec<Scalar>> {
        match *self {
            Field::Rationals => Err(Error::FieldNotFinite),
            Field::Prime(p) => Ok((0..p)
                .map(|value| Scalar::Residue { value, modulus: p })
                .collect()),
        }
    }

    /// Whether `s` is an element of this field.
    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (Field::Rationals, Scalar::Rational(_)) => true,
            (Field::Prime(p), Scalar::Residue { modulus, .. }) => p == modulus,
            _ => false,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "rational"),
            Field::Prime(p) => write!(f, "gf:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `rational` or `gf:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "rational" {
            return Ok(Field::Rationals);
        }
        match s.strip_prefix("gf:") {
            Some(p) => {
                let p: u64 = p
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid modulus in `{s}`")))?;
                Field::prime(p)
            }
            None => Err(Error::Parse(format!(
                "unknown field `{s}` (expected `rational` or `gf:<p>`)"
            ))),
        }
    }
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
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

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// Residue value for prime-field scalars.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Residue { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    /// Signed representative used for display: rationals as themselves,
    /// residues above `p/2` as negatives. Returns `(negative, magnitude text)`.
    pub(crate) fn signed_parts(&self) -> (bool, String) {
        match self {
            Scalar::Rational(r) => (r.is_negative(), r.abs().to_string()),
            Scalar::Residue { value, modulus } => {
                if *value > modulus / 2 {
                    (true, (modulus - value).to_string())
                } else {
                    (false, value.to_string())
                }
            }
        }
    }

    fn check_same(&self, other: &Scalar) {
        if let (Scalar::Residue { modulus: a, .. }, Scalar::Residue { modulus: b, .. }) =
            (self, other)
        {
            assert_eq!(a, b, "scalar arithmetic across different prime fields");
        } else {
            assert_eq!(
                self.field(),
                other.field(),
                "scalar arithmetic across different fields"
            );
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: ((*a as u128 * *b as u128) % *modulus as u128) as u64,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
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

pub(crate) fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut acc: u128 = 1 % m;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Smallest generator of the multiplicative group of `GF(p)`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut f = 2;
    while f * f <= m {
        if m.is_multiple_of(f) {
            factors.push(f);
            while m.is_multiple_of(f) {
                m /= f;
            }
        }
        f += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("prime field has a primitive root")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues_are_canonical() {
        let f = Field::Prime(5);
        assert_eq!(
            f.from_i64(-1),
            Scalar::Residue {
                value: 4,
                modulus: 5
            }
        );
        assert_eq!(
            f.from_i64(12),
            Scalar::Residue {
                value: 2,
                modulus: 5
            }
        );
        assert_eq!(f.from_ratio(1, 2), f.from_i64(3));
    }

    #[test]
    fn rationals_in_lowest_terms() {
        let q = Field::Rationals;
        assert_eq!(q.parse_scalar("4/6").unwrap(), q.from_ratio(2, 3));
        assert_eq!(q.parse_scalar("-3").unwrap(), q.from_i64(-3));
        assert!(q.parse_scalar("1/0").is_err());
        assert!(q.parse_scalar("1/-2").is_err());
        assert!(q.parse_scalar("x").is_err());
    }

    #[test]
    fn prime_entries_must_be_canonical() {
        let f = Field::Prime(3);
        assert!(f.parse_scalar("3").is_err());
        assert!(f.parse_scalar("-1").is_err());
        assert_eq!(f.parse_scalar("2").unwrap(), f.from_i64(-1));
    }

    #[test]
    fn field_descriptor_parsing() {
        assert_eq!("rational".parse::<Field>().unwrap(), Field::Rationals);
        assert_eq!("gf:7".parse::<Field>().unwrap(), Field::Prime(7));
        assert_eq!("gf:9".parse::<Field>(), Err(Error::InvalidModulus(9)));
        assert!("gf:1".parse::<Field>().is_err());
        assert!("real".parse::<Field>().is_err());
        assert_eq!(Field::Prime(7).to_string(), "gf:7");
    }

    #[test]
    fn inverses() {
        for p in [2u64, 3, 5, 7, 1_000_000_007] {
            let f = Field::Prime(p);
            for v in 1..p.min(50) {
                let s = f.from_i64(v as i64);
                assert!((&s * &s.inverse().unwrap()).is_one());
            }
        }
        assert!(Field::Rationals.zero().inverse().is_none());
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(18_446_744_073_709_551_559));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(2), 1);
        assert_eq!(primitive_root(3), 2);
        assert_eq!(primitive_root(5), 2);
        assert_eq!(primitive_root(7), 3);
    }
}
