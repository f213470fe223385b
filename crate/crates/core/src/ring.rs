//! Exact commutative coefficient rings in which 2 is invertible.
//!
//! Three kinds of ring are supported: the rationals (arbitrary precision),
//! prime fields `F_p` for odd primes `p`, and residue rings `Z/nZ` for odd
//! `n >= 3`. Only the first two are fields; the linear solvers refuse the
//! third, while element arithmetic works everywhere.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Descriptor of a coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Rationals,
    /// `F_p`, `p` an odd prime.
    PrimeField(u64),
    /// `Z/nZ`, `n` odd and at least 3. Never treated as a field, even when `n` is prime.
    ResidueRing(u64),
}

impl Ring {
    pub fn prime_field(p: u64) -> Result<Ring> {
        if p == 2 || !is_prime(p) {
            return Err(Error::InvalidDescriptor(format!(
                "F_p requires an odd prime, got {p}"
            )));
        }
        Ok(Ring::PrimeField(p))
    }

    pub fn residue_ring(n: u64) -> Result<Ring> {
        if n < 3 || n.is_multiple_of(2) {
            return Err(Error::InvalidDescriptor(format!(
                "Z/nZ requires odd n >= 3, got {n}"
            )));
        }
        Ok(Ring::ResidueRing(n))
    }

    /// Re-checks the descriptor invariants; useful for values built directly from the enum.
    pub fn validate(self) -> Result<Ring> {
        match self {
            Ring::Rationals => Ok(self),
            Ring::PrimeField(p) => Ring::prime_field(p),
            Ring::ResidueRing(n) => Ring::residue_ring(n),
        }
    }

    pub fn is_field(self) -> bool {
        !matches!(self, Ring::ResidueRing(_))
    }

    /// Fails with `UnsupportedRing` unless this is a field.
    pub fn require_field(self) -> Result<()> {
        if self.is_field() {
            Ok(())
        } else {
            Err(Error::UnsupportedRing(self))
        }
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            Ring::Rationals => None,
            Ring::PrimeField(m) | Ring::ResidueRing(m) => Some(m),
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(self) -> Option<u64> {
        self.modulus()
    }

    pub fn zero(self) -> RingElement {
        self.from_i64(0)
    }

    pub fn one(self) -> RingElement {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> RingElement {
        let value = match self {
            Ring::Rationals => Value::Rational(BigRational::from_integer(BigInt::from(v))),
            Ring::PrimeField(m) | Ring::ResidueRing(m) => {
                Value::Residue((v as i128).rem_euclid(m as i128) as u64)
            }
        };
        RingElement { ring: self, value }
    }

    /// Builds `num/den`; over a modular ring `den` must be a unit.
    pub fn from_fraction(self, num: &BigInt, den: &BigInt) -> Result<RingElement> {
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        match self {
            Ring::Rationals => Ok(RingElement {
                ring: self,
                value: Value::Rational(BigRational::new(num.clone(), den.clone())),
            }),
            Ring::PrimeField(m) | Ring::ResidueRing(m) => {
                let n = self.reduce_bigint(num);
                let d = self.reduce_bigint(den);
                let d_inv = RingElement {
                    ring: self,
                    value: Value::Residue(d),
                }
                .try_invert()?;
                let n = RingElement {
                    ring: self,
                    value: Value::Residue(n % m),
                };
                Ok(&n * &d_inv)
            }
        }
    }

    fn reduce_bigint(self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.modulus().expect("modular ring"));
        v.mod_floor(&m)
            .to_u64()
            .expect("reduced residue fits in u64")
    }

    /// The multiplicative inverse of 2.
    pub fn half(self) -> RingElement {
        self.from_i64(2)
            .try_invert()
            .expect("2 is a unit in every supported ring")
    }

    /// Parses `"3"`, `"-1/2"` and similar. Over modular rings the result is reduced.
    pub fn parse(self, s: &str) -> Result<RingElement> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (parse_int(n)?, parse_int(d)?),
            None => (parse_int(s)?, BigInt::one()),
        };
        self.from_fraction(&num, &den)
    }

    /// Every element, in increasing order of canonical representative. Modular rings only.
    pub fn elements(self) -> Option<impl Iterator<Item = RingElement>> {
        let m = self.modulus()?;
        Some((0..m).map(move |v| RingElement {
            ring: self,
            value: Value::Residue(v),
        }))
    }

    /// Builds an element from a residue, reducing it first. Panics over the rationals.
    pub fn from_residue(self, v: u64) -> RingElement {
        let m = self.modulus().expect("from_residue needs a modular ring");
        RingElement {
            ring: self,
            value: Value::Residue(v % m),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Rationals => write!(f, "Q"),
            Ring::PrimeField(p) => write!(f, "F_{p}"),
            Ring::ResidueRing(n) => write!(f, "Z/{n}Z"),
        }
    }
}

fn parse_int(s: &str) -> Result<BigInt> {
    BigInt::from_str(s.trim()).map_err(|_| Error::Parse(format!("invalid integer {s:?}")))
}

fn mul_mod(x: u64, y: u64, m: u64) -> u64 {
    ((x as u128 * y as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for a in WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Value {
    Rational(BigRational),
    Residue(u64),
}

/// An element of a [`Ring`], always held in canonical form: a reduced
/// fraction with positive denominator, or the least non-negative residue.
///
/// The arithmetic operators panic when the operands belong to different
/// rings; the `checked_*` methods report a `DomainError` instead.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring: Ring,
    value: Value,
}

impl RingElement {
    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Rational(r) => r.is_zero(),
            Value::Residue(v) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring.one()
    }

    /// The residue, for modular rings.
    pub fn residue(&self) -> Option<u64> {
        match self.value {
            Value::Residue(v) => Some(v),
            Value::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.value {
            Value::Rational(r) => Some(r),
            Value::Residue(_) => None,
        }
    }

    fn same_ring(&self, other: &RingElement) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "ring mismatch: {} vs {}",
                self.ring, other.ring
            )))
        }
    }

    pub fn checked_add(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ring(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ring(other)?;
        Ok(self.add_unchecked(&other.neg_ref()))
    }

    pub fn checked_mul(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &RingElement) -> RingElement {
        let value = match (&self.value, &other.value) {
            (Value::Rational(x), Value::Rational(y)) => Value::Rational(x + y),
            (Value::Residue(x), Value::Residue(y)) => {
                let m = self.ring.modulus().unwrap();
                Value::Residue(((*x as u128 + *y as u128) % m as u128) as u64)
            }
            _ => unreachable!("ring already checked"),
        };
        RingElement {
            ring: self.ring,
            value,
        }
    }

    fn mul_unchecked(&self, other: &RingElement) -> RingElement {
        let value = match (&self.value, &other.value) {
            (Value::Rational(x), Value::Rational(y)) => Value::Rational(x * y),
            (Value::Residue(x), Value::Residue(y)) => {
                Value::Residue(mul_mod(*x, *y, self.ring.modulus().unwrap()))
            }
            _ => unreachable!("ring already checked"),
        };
        RingElement {
            ring: self.ring,
            value,
        }
    }

    fn neg_ref(&self) -> RingElement {
        let value = match &self.value {
            Value::Rational(x) => Value::Rational(-x),
            Value::Residue(0) => Value::Residue(0),
            Value::Residue(x) => Value::Residue(self.ring.modulus().unwrap() - x),
        };
        RingElement {
            ring: self.ring,
            value,
        }
    }

    /// The multiplicative inverse, or `NotAUnit`.
    pub fn try_invert(&self) -> Result<RingElement> {
        match &self.value {
            Value::Rational(x) => {
                if x.is_zero() {
                    Err(Error::NotAUnit(self.to_string()))
                } else {
                    Ok(RingElement {
                        ring: self.ring,
                        value: Value::Rational(x.recip()),
                    })
                }
            }
            Value::Residue(x) => {
                let m = self.ring.modulus().unwrap() as i128;
                let ext = (*x as i128).extended_gcd(&m);
                if ext.gcd != 1 {
                    return Err(Error::NotAUnit(self.to_string()));
                }
                let inv = ext.x.rem_euclid(m) as u64;
                Ok(RingElement {
                    ring: self.ring,
                    value: Value::Residue(inv),
                })
            }
        }
    }

    pub fn is_unit(&self) -> bool {
        self.try_invert().is_ok()
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Rational(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Value::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Value::Residue(v) => write!(f, "{v}"),
        }
    }
}

fn expect_same(x: &RingElement, y: &RingElement) {
    if let Err(e) = x.same_ring(y) {
        panic!("{e}");
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        expect_same(self, rhs);
        self.add_unchecked(rhs)
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        expect_same(self, rhs);
        self.add_unchecked(&rhs.neg_ref())
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        expect_same(self, rhs);
        self.mul_unchecked(rhs)
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.neg_ref()
    }
}

impl Add for RingElement {
    type Output = RingElement;
    fn add(self, rhs: RingElement) -> RingElement {
        &self + &rhs
    }
}

impl Sub for RingElement {
    type Output = RingElement;
    fn sub(self, rhs: RingElement) -> RingElement {
        &self - &rhs
    }
}

impl Mul for RingElement {
    type Output = RingElement;
    fn mul(self, rhs: RingElement) -> RingElement {
        &self * &rhs
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.neg_ref()
    }
}
