//! Prime fields `F_p` and the rationals.
//!
//! A [`Field`] is a small context value (the prime for `F_p`, nothing for `Q`)
//! that performs arithmetic on its element type. Polynomials carry their field
//! so that mismatched operands can be detected.

use alloc::string::{String, ToString};
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Largest admissible prime is strictly below this bound.
pub const PRIME_BOUND: u64 = 1 << 61;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds 2^61")]
    PrimeTooLarge(u64),
    #[error("cannot parse field element `{0}`")]
    BadElement(String),
    #[error("division by zero in field element `{0}`")]
    ZeroDenominator(String),
}

/// Runtime description of a base field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldConfig {
    Prime(u64),
    Rationals,
}

impl FieldConfig {
    /// Characteristic, with `0` for the rationals.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldConfig::Prime(p) => *p,
            FieldConfig::Rationals => 0,
        }
    }
}

impl fmt::Display for FieldConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldConfig::Prime(p) => write!(f, "F_{p}"),
            FieldConfig::Rationals => f.write_str("Q"),
        }
    }
}

/// Arithmetic context for a field whose elements are `Self::Elem`.
///
/// Elements handed to these methods must already be in canonical form
/// (residues in `0..p`, rationals in lowest terms); every method returns
/// canonical elements.
pub trait Field: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + PartialEq + Eq + Ord + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn characteristic(&self) -> u64;
    fn config(&self) -> FieldConfig;

    /// The `index`-th element of the fixed enumeration order:
    /// `0, 1, 2, ...` for `F_p` and `0, 1, -1, 2, -2, ...` for `Q`.
    /// Returns `None` once a finite field is exhausted.
    fn enumerate(&self, index: u64) -> Option<Self::Elem>;

    fn parse_element(&self, s: &str) -> Result<Self::Elem, FieldError>;

    /// Whether the canonical text form of `a` starts with a minus sign.
    fn is_negative(&self, a: &Self::Elem) -> bool;

    fn write_element(&self, a: &Self::Elem, out: &mut dyn fmt::Write) -> fmt::Result;

    fn element_to_string(&self, a: &Self::Elem) -> String {
        let mut s = String::new();
        let _ = self.write_element(a, &mut s);
        s
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, a, m);
        }
        a = mul_mod_u64(a, a, m);
        e >>= 1;
    }
    acc
}

/// The prime field `F_p`, elements stored as residues in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p >= PRIME_BOUND {
            return Err(FieldError::PrimeTooLarge(p));
        }
        if !is_prime_u64(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduces an arbitrary integer into `0..p`.
    pub fn reduce_i128(&self, n: i128) -> u64 {
        n.rem_euclid(self.p as i128) as u64
    }

    fn reduce_bigint(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        n.mod_floor(&p).to_u64().expect("residue fits in u64")
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        // p < 2^61 so the sum cannot overflow
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod_u64(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.reduce_i128(t0))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i128(n as i128)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn config(&self) -> FieldConfig {
        FieldConfig::Prime(self.p)
    }
    fn enumerate(&self, index: u64) -> Option<u64> {
        (index < self.p).then_some(index)
    }
    fn parse_element(&self, s: &str) -> Result<u64, FieldError> {
        let t = s.trim();
        let n = BigInt::parse_bytes(t.as_bytes(), 10)
            .ok_or_else(|| FieldError::BadElement(t.to_string()))?;
        Ok(self.reduce_bigint(&n))
    }
    fn is_negative(&self, _a: &u64) -> bool {
        false
    }
    fn write_element(&self, a: &u64, out: &mut dyn fmt::Write) -> fmt::Result {
        write!(out, "{a}")
    }
}

/// The field of rational numbers with arbitrary-precision elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn config(&self) -> FieldConfig {
        FieldConfig::Rationals
    }
    fn enumerate(&self, index: u64) -> Option<BigRational> {
        let k = (index as i128 + 1) / 2;
        let v = if index % 2 == 0 { -k } else { k };
        Some(BigRational::from_integer(BigInt::from(v)))
    }
    fn parse_element(&self, s: &str) -> Result<BigRational, FieldError> {
        let t = s.trim();
        let bad = || FieldError::BadElement(t.to_string());
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num = BigInt::parse_bytes(num.as_bytes(), 10).ok_or_else(bad)?;
        let den = BigInt::parse_bytes(den.as_bytes(), 10).ok_or_else(bad)?;
        if den.is_zero() {
            return Err(FieldError::ZeroDenominator(t.to_string()));
        }
        Ok(BigRational::new(num, den))
    }
    fn is_negative(&self, a: &BigRational) -> bool {
        a.is_negative()
    }
    fn write_element(&self, a: &BigRational, out: &mut dyn fmt::Write) -> fmt::Result {
        if a.denom().is_one() {
            write!(out, "{}", a.numer())
        } else {
            write!(out, "{}/{}", a.numer(), a.denom())
        }
    }
}
