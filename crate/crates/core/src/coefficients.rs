//! Coefficient domains: residues modulo a prime power `ell^m`, and exact
//! arbitrary-precision integers and rationals.
//!
//! Series code is generic over [`Ring`]. A ring value carries whatever
//! context its elements need (the modulus for residues), so elements
//! themselves stay plain (`u64`, `BigInt`, `BigRational`) and the hot
//! convolution loop never touches per-element metadata.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest admissible modulus value. Keeps `value^2` inside `u128` with room
/// for lazy accumulation.
pub const MAX_MODULUS: u64 = 1 << 62;

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// A prime-power modulus `ell^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Modulus {
    ell: u64,
    m: u32,
    value: u64,
}

impl Modulus {
    pub fn new(ell: u64, m: u32) -> Result<Self> {
        if !is_prime(ell) {
            return Err(Error::InvalidPrime(ell));
        }
        if m == 0 {
            return Err(Error::InvalidParameter(
                "modulus exponent must be positive".into(),
            ));
        }
        let value = ell
            .checked_pow(m)
            .filter(|&v| v <= MAX_MODULUS)
            .ok_or(Error::ModulusTooLarge { ell, m })?;
        Ok(Modulus { ell, m, value })
    }

    /// Recovers `(ell, m)` from a prime-power value such as `121`.
    pub fn from_value(value: u64) -> Result<Self> {
        if value < 2 {
            return Err(Error::NotAPrimePower(value));
        }
        // Smallest divisor above 1 is prime.
        let ell = (2..)
            .take_while(|d: &u64| d.saturating_mul(*d) <= value)
            .find(|d| value.is_multiple_of(*d))
            .unwrap_or(value);
        let mut rest = value;
        let mut m = 0;
        while rest.is_multiple_of(ell) {
            rest /= ell;
            m += 1;
        }
        if rest != 1 {
            return Err(Error::NotAPrimePower(value));
        }
        Modulus::new(ell, m)
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn exponent(&self) -> u32 {
        self.m
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// Canonical representative of a signed machine integer.
    pub fn reduce_i64(&self, x: i64) -> u64 {
        (x as i128).rem_euclid(self.value as i128) as u64
    }

    /// Canonical representative of an arbitrary-precision integer.
    pub fn reduce_big(&self, x: &BigInt) -> u64 {
        let r = x.mod_floor(&BigInt::from(self.value));
        r.to_u64().expect("remainder below a u64 modulus")
    }

    /// Reduces `num/den`; fails when `den` shares a factor with the modulus.
    pub fn reduce_rational(&self, x: &BigRational) -> Result<u64> {
        let num = self.reduce_big(x.numer());
        let den = self.reduce_big(x.denom());
        let inv = inv_u64(den, self.value).ok_or(Error::NotAUnit {
            value: x.denom().to_string(),
            modulus: self.value,
        })?;
        Ok(mul_u64(num, inv, self.value))
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "{}", self.ell)
        } else {
            write!(f, "{}^{}", self.ell, self.m)
        }
    }
}

#[inline]
fn mul_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn inv_u64(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// A canonical residue `0 <= value < modulus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: Modulus,
}

impl Residue {
    pub fn new(value: u64, modulus: Modulus) -> Self {
        Residue {
            value: value % modulus.value,
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn check(&self, other: &Residue) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.value,
                right: other.modulus.value,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Residue) -> Result<Residue> {
        self.check(other)?;
        Ok(Residue::new(
            ((self.value as u128 + other.value as u128) % self.modulus.value as u128) as u64,
            self.modulus,
        ))
    }

    pub fn sub(&self, other: &Residue) -> Result<Residue> {
        self.check(other)?;
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Residue {
        Residue::new(
            (self.modulus.value - self.value) % self.modulus.value,
            self.modulus,
        )
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus.value)
    }
}

/// Canonical `x mod M`, negatives mapped into `[0, M)`.
pub fn reduce(x: &BigInt, modulus: Modulus) -> Residue {
    Residue::new(modulus.reduce_big(x), modulus)
}

/// Product of two residues, computed at double width.
pub fn mul_mod(a: &Residue, b: &Residue) -> Result<Residue> {
    a.check(b)?;
    Ok(Residue::new(
        mul_u64(a.value, b.value, a.modulus.value),
        a.modulus,
    ))
}

/// Multiplicative inverse; `NotAUnit` when `gcd(a, M) > 1`.
pub fn inv_mod(a: &Residue) -> Result<Residue> {
    inv_u64(a.value, a.modulus.value)
        .map(|v| Residue::new(v, a.modulus))
        .ok_or(Error::NotAUnit {
            value: a.value.to_string(),
            modulus: a.modulus.value,
        })
}

/// An `ell`-adic valuation; zero has infinite valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    /// `min(self, cap)` as a finite number.
    pub fn capped(self, cap: u32) -> u32 {
        match self {
            Valuation::Finite(v) => v.min(cap),
            Valuation::Infinite => cap,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

/// Largest `v` with `ell^v | x`.
pub fn ell_valuation(x: u64, ell: u64) -> Valuation {
    assert!(ell >= 2, "valuation base must be at least 2");
    if x == 0 {
        return Valuation::Infinite;
    }
    let mut v = 0;
    let mut x = x;
    while x.is_multiple_of(ell) {
        x /= ell;
        v += 1;
    }
    Valuation::Finite(v)
}

/// Valuation of the absolute value of an arbitrary-precision integer.
pub fn ell_valuation_big(x: &BigInt, ell: u64) -> Valuation {
    assert!(ell >= 2, "valuation base must be at least 2");
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let base = BigInt::from(ell);
    let mut v = 0;
    let mut x = x.abs();
    loop {
        let (q, r) = x.div_rem(&base);
        if !r.is_zero() {
            break;
        }
        x = q;
        v += 1;
    }
    Valuation::Finite(v)
}

/// Valuation of a rational `num/den` (may be negative).
pub fn ell_valuation_rational(x: &BigRational, ell: u64) -> Option<i64> {
    let num = ell_valuation_big(x.numer(), ell).finite()?;
    let den = ell_valuation_big(x.denom(), ell).finite().unwrap_or(0);
    Some(num as i64 - den as i64)
}

/// A commutative coefficient ring. Elements are plain values; the ring
/// value supplies the arithmetic context.
#[allow(clippy::wrong_self_convention)]
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, x: i64) -> Self::Elem;
    fn from_bigint(&self, x: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Inverse when `a` is a unit.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `sum_i a[i] * b[len - 1 - i]` for equal-length slices; the
    /// convolution kernel.
    fn dot_rev(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Self::Elem {
        debug_assert_eq!(a.len(), b.len());
        a.iter()
            .zip(b.iter().rev())
            .fold(self.zero(), |acc, (x, y)| self.add(&acc, &self.mul(x, y)))
    }
}

impl Ring for Modulus {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.value
    }

    fn from_i64(&self, x: i64) -> u64 {
        self.reduce_i64(x)
    }

    fn from_bigint(&self, x: &BigInt) -> u64 {
        self.reduce_big(x)
    }

    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.value {
            s - self.value
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.value - b
        }
    }

    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.value - a
        }
    }

    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_u64(*a, *b, self.value)
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        inv_u64(*a, self.value)
    }

    fn dot_rev(&self, a: &[u64], b: &[u64]) -> u64 {
        let max = (self.value - 1) as u128;
        let len = a.len() as u128;
        if max * max * len <= u64::MAX as u128 {
            // Whole sum fits in one word: reduce once.
            let s = a
                .iter()
                .zip(b.iter().rev())
                .fold(0u64, |acc, (x, y)| acc + x * y);
            s % self.value
        } else if self.value <= u32::MAX as u64 {
            let s = a
                .iter()
                .zip(b.iter().rev())
                .fold(0u128, |acc, (x, y)| acc + (x * y) as u128);
            (s % self.value as u128) as u64
        } else {
            a.iter().zip(b.iter().rev()).fold(0u64, |acc, (x, y)| {
                self.add(&acc, &mul_u64(*x, *y, self.value))
            })
        }
    }
}

/// The integers, exact.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn from_i64(&self, x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn from_bigint(&self, x: &BigInt) -> BigInt {
        x.clone()
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        (a.magnitude().is_one()).then(|| a.clone())
    }

    fn dot_rev(&self, a: &[BigInt], b: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for (x, y) in a.iter().zip(b.iter().rev()) {
            if x.sign() != Sign::NoSign && y.sign() != Sign::NoSign {
                acc += x * y;
            }
        }
        acc
    }
}

/// The rationals, exact.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    fn from_bigint(&self, x: &BigInt) -> BigRational {
        BigRational::from_integer(x.clone())
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }

    fn dot_rev(&self, a: &[BigRational], b: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (x, y) in a.iter().zip(b.iter().rev()) {
            if !x.is_zero() && !y.is_zero() {
                acc += x * y;
            }
        }
        acc
    }
}
