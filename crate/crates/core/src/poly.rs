//! Dense univariate polynomials over a [`Field`].
//!
//! Coefficients are stored in ascending degree order with no trailing zeros,
//! so the zero polynomial is the empty vector and has degree `None`
//! (which orders below every `Some(d)`).
//!
//! The text form is `c*X^k` terms joined by `+`/`-`, e.g. `3*X^2 + 2*X + 1`.
//! [`Polynomial::parse`] accepts arbitrary whitespace and the `Display` output
//! parses back to the same polynomial.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::field::{Field, FieldError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("both inputs are zero")]
    BothZero,
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("cannot parse polynomial `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<K: Field> {
    field: K,
    coeffs: Vec<K::Elem>,
}

impl<K: Field> Polynomial<K> {
    /// Builds a polynomial from ascending coefficients, dropping trailing zeros.
    pub fn new(field: K, mut coeffs: Vec<K::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Polynomial { field, coeffs }
    }

    pub fn from_ints(field: K, coeffs: &[i64]) -> Self {
        let c = coeffs.iter().map(|&n| field.from_i64(n)).collect();
        Self::new(field, c)
    }

    pub fn zero(field: K) -> Self {
        Polynomial { field, coeffs: Vec::new() }
    }

    pub fn one(field: K) -> Self {
        let one = field.one();
        Polynomial { field, coeffs: vec![one] }
    }

    pub fn constant(field: K, c: K::Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// The indeterminate `X`.
    pub fn x(field: K) -> Self {
        Self::monomial(field.clone(), field.one(), 1)
    }

    pub fn monomial(field: K, c: K::Elem, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        Self::new(field, coeffs)
    }

    /// `X - root`.
    pub fn linear(field: K, root: &K::Elem) -> Self {
        let c0 = field.neg(root);
        let one = field.one();
        Polynomial { field, coeffs: vec![c0, one] }
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn coeffs(&self) -> &[K::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<K::Elem> {
        self.coeffs
    }

    /// Degree, with `None` standing for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0. Only for callers that
    /// have already excluded zero or do not care about the distinction.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn leading(&self) -> Option<&K::Elem> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> K::Elem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn same_field(&self, other: &Self) -> bool {
        self.field == other.field
    }

    fn check_field(&self, other: &Self) -> Result<(), PolyError> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(PolyError::FieldMismatch)
        }
    }

    fn assert_field(&self, other: &Self) {
        assert!(self.same_field(other), "polynomial arithmetic across different fields");
    }

    fn add_impl(&self, other: &Self) -> Self {
        self.assert_field(other);
        let k = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = k.zero();
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                k.add(a, b)
            })
            .collect();
        Self::new(k.clone(), c)
    }

    fn sub_impl(&self, other: &Self) -> Self {
        self.assert_field(other);
        let k = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = k.zero();
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                k.sub(a, b)
            })
            .collect();
        Self::new(k.clone(), c)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        self.assert_field(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field.clone());
        }
        let k = &self.field;
        let mut c = vec![k.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = k.mul(a, b);
                c[i + j] = k.add(&c[i + j], &t);
            }
        }
        Self::new(k.clone(), c)
    }

    pub fn scale(&self, c: &K::Elem) -> Self {
        let k = &self.field;
        Self::new(k.clone(), self.coeffs.iter().map(|a| k.mul(a, c)).collect())
    }

    /// Multiplies by `X^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![self.field.zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Polynomial { field: self.field.clone(), coeffs: c }
    }

    /// Scales to leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.field.is_one(c))
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), PolyError> {
        self.check_field(d)?;
        let dl = d.leading().ok_or(PolyError::DivisionByZero)?;
        let k = &self.field;
        let dl_inv = k.inv(dl).expect("leading coefficient is nonzero");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(k.clone()), self.clone()));
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![k.zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let t = k.mul(&r[i + dd], &dl_inv);
            if k.is_zero(&t) {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let s = k.mul(&t, dc);
                r[i + j] = k.sub(&r[i + j], &s);
            }
            q[i] = t;
        }
        r.truncate(dd);
        Ok((Self::new(k.clone(), q), Self::new(k.clone(), r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self, PolyError> {
        self.div_rem(d).map(|(_, r)| r)
    }

    /// Quotient of an exact division, `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        match self.div_rem(d) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        !self.is_zero() && other.rem(self).is_ok_and(|r| r.is_zero())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &K::Elem) -> K::Elem {
        let k = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(k.zero(), |acc, c| k.add(&k.mul(&acc, x), c))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        let k = &self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| k.mul(a, &k.from_i64(i as i64)))
            .collect();
        Self::new(k.clone(), c)
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Result<Self, PolyError> {
        let mut base = self.rem(m)?;
        let mut acc = Self::one(self.field.clone()).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(m)?;
            }
        }
        Ok(acc)
    }

    /// Parses the `c*X^k + ...` grammar.
    pub fn parse(field: K, input: &str) -> Result<Self, PolyError> {
        parse_poly(field, input)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl<K: Field> $tr<&Polynomial<K>> for &Polynomial<K> {
            type Output = Polynomial<K>;
            fn $method(self, rhs: &Polynomial<K>) -> Polynomial<K> {
                self.$imp(rhs)
            }
        }
        impl<K: Field> $tr<Polynomial<K>> for Polynomial<K> {
            type Output = Polynomial<K>;
            fn $method(self, rhs: Polynomial<K>) -> Polynomial<K> {
                self.$imp(&rhs)
            }
        }
        impl<K: Field> $tr<&Polynomial<K>> for Polynomial<K> {
            type Output = Polynomial<K>;
            fn $method(self, rhs: &Polynomial<K>) -> Polynomial<K> {
                self.$imp(rhs)
            }
        }
        impl<K: Field> $tr<Polynomial<K>> for &Polynomial<K> {
            type Output = Polynomial<K>;
            fn $method(self, rhs: Polynomial<K>) -> Polynomial<K> {
                self.$imp(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);

impl<K: Field> Neg for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn neg(self) -> Polynomial<K> {
        let k = &self.field;
        Polynomial::new(k.clone(), self.coeffs.iter().map(|a| k.neg(a)).collect())
    }
}

impl<K: Field> Neg for Polynomial<K> {
    type Output = Polynomial<K>;
    fn neg(self) -> Polynomial<K> {
        -&self
    }
}

impl<K: Field> fmt::Display for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = &self.field;
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if k.is_zero(c) {
                continue;
            }
            let negative = k.is_negative(c);
            let mag = if negative { k.neg(c) } else { c.clone() };
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            if deg == 0 {
                k.write_element(&mag, f)?;
                continue;
            }
            if !k.is_one(&mag) {
                k.write_element(&mag, f)?;
                f.write_str("*")?;
            }
            f.write_str("X")?;
            if deg > 1 {
                write!(f, "^{deg}")?;
            }
        }
        Ok(())
    }
}

impl<K: Field> fmt::Debug for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({})", self.field.config(), self)
    }
}

/// Largest exponent accepted by the parser.
const MAX_PARSE_DEGREE: usize = 1 << 16;

fn parse_poly<K: Field>(field: K, input: &str) -> Result<Polynomial<K>, PolyError> {
    let err = |reason: &str| PolyError::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let s: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err("empty input"));
    }
    let mut coeffs: Vec<K::Elem> = Vec::new();
    let mut i = 0;
    let mut first = true;
    while i < s.len() {
        let mut negative = false;
        match s[i] {
            '+' => i += 1,
            '-' => {
                negative = true;
                i += 1;
            }
            _ if first => {}
            c => return Err(err(&alloc::format!("expected `+` or `-`, found `{c}`"))),
        }
        first = false;
        let start = i;
        while i < s.len() && (s[i].is_ascii_digit() || s[i] == '/') {
            i += 1;
        }
        let mut coeff = if i > start {
            let text: String = s[start..i].iter().collect();
            let c = field.parse_element(&text)?;
            if i < s.len() && s[i] == '*' {
                i += 1;
                if i >= s.len() || !matches!(s[i], 'X' | 'x') {
                    return Err(err("expected `X` after `*`"));
                }
            } else if i < s.len() && matches!(s[i], 'X' | 'x') {
                return Err(err("missing `*` between coefficient and `X`"));
            }
            c
        } else if i < s.len() && matches!(s[i], 'X' | 'x') {
            field.one()
        } else {
            return Err(err("expected a term"));
        };
        let mut exp = 0usize;
        if i < s.len() && matches!(s[i], 'X' | 'x') {
            i += 1;
            exp = 1;
            if i < s.len() && s[i] == '^' {
                i += 1;
                let es = i;
                while i < s.len() && s[i].is_ascii_digit() {
                    i += 1;
                }
                if es == i {
                    return Err(err("missing exponent after `^`"));
                }
                let text: String = s[es..i].iter().collect();
                exp = text.parse().map_err(|_| err("exponent out of range"))?;
                if exp > MAX_PARSE_DEGREE {
                    return Err(err("exponent out of range"));
                }
            }
        }
        if negative {
            coeff = field.neg(&coeff);
        }
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, field.zero());
        }
        coeffs[exp] = field.add(&coeffs[exp], &coeff);
    }
    Ok(Polynomial::new(field, coeffs))
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn poly_gcd<K: Field>(f: &Polynomial<K>, g: &Polynomial<K>) -> Result<Polynomial<K>, PolyError> {
    f.check_field(g)?;
    let mut a = f.clone();
    let mut b = g.clone();
    while !b.is_zero() {
        let r = a.rem(&b)?;
        a = b;
        b = r;
    }
    Ok(a.monic())
}

/// Returns `(d, u, v)` with `u*f + v*g = d = poly_gcd(f, g)`.
///
/// The cofactors are the ones produced by the plain extended Euclidean
/// algorithm, which are of minimal degree. For `f = g` this yields
/// `u = 0, v = 1/lc(f)`.
pub fn extended_gcd<K: Field>(
    f: &Polynomial<K>,
    g: &Polynomial<K>,
) -> Result<(Polynomial<K>, Polynomial<K>, Polynomial<K>), PolyError> {
    f.check_field(g)?;
    if f.is_zero() && g.is_zero() {
        return Err(PolyError::BothZero);
    }
    let k = f.field().clone();
    let (mut r0, mut r1) = (f.clone(), g.clone());
    let (mut s0, mut s1) = (Polynomial::one(k.clone()), Polynomial::zero(k.clone()));
    let (mut t0, mut t1) = (Polynomial::zero(k.clone()), Polynomial::one(k.clone()));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1)?;
        let s = &s0 - &(&q * &s1);
        let t = &t0 - &(&q * &t1);
        r0 = core::mem::replace(&mut r1, r);
        s0 = core::mem::replace(&mut s1, s);
        t0 = core::mem::replace(&mut t1, t);
    }
    let inv = k.inv(r0.leading().expect("gcd of nonzero input is nonzero")).unwrap();
    Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
}

/// Inverse of `a` modulo `m`, when `gcd(a, m) = 1`.
pub fn inverse_mod<K: Field>(a: &Polynomial<K>, m: &Polynomial<K>) -> Option<Polynomial<K>> {
    let (d, u, _) = extended_gcd(a, m).ok()?;
    if d.is_one() {
        u.rem(m).ok()
    } else {
        None
    }
}

pub fn derivative<K: Field>(f: &Polynomial<K>) -> Polynomial<K> {
    f.derivative()
}

/// Resultant `lc(f)^deg(g) * prod g(root)` over the roots of `f`, using the
/// actual degrees of both inputs. Zero if either input is zero.
pub fn resultant<K: Field>(f: &Polynomial<K>, g: &Polynomial<K>) -> Result<K::Elem, PolyError> {
    f.check_field(g)?;
    let k = f.field().clone();
    let mut acc = k.one();
    let (mut a, mut b) = (f.clone(), g.clone());
    loop {
        let (Some(m), Some(n)) = (a.degree(), b.degree()) else {
            return Ok(k.zero());
        };
        if m == 0 {
            return Ok(k.mul(&acc, &k.pow(a.leading().unwrap(), n as u64)));
        }
        if n == 0 {
            return Ok(k.mul(&acc, &k.pow(b.leading().unwrap(), m as u64)));
        }
        // Res(a, b) = (-1)^(mn) Res(b, a) = (-1)^(mn) lc(b)^(m - deg r) Res(b, r)
        let r = a.rem(&b)?;
        let Some(dr) = r.degree() else {
            return Ok(k.zero());
        };
        if (m * n) % 2 == 1 {
            acc = k.neg(&acc);
        }
        acc = k.mul(&acc, &k.pow(b.leading().unwrap(), (m - dr) as u64));
        a = b;
        b = r;
    }
}

/// Discriminant `(-1)^(n(n-1)/2) Res(f, f') / lc(f)` with `f'` taken at its
/// formal degree `n - 1`.
pub fn discriminant<K: Field>(f: &Polynomial<K>) -> Result<K::Elem, PolyError> {
    let k = f.field().clone();
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(PolyError::ConstantPolynomial),
    };
    let df = f.derivative();
    let Some(dk) = df.degree() else {
        return Ok(k.zero());
    };
    let lc = f.leading().unwrap().clone();
    let mut r = resultant(f, &df)?;
    // correct for derivative degree drop in positive characteristic
    r = k.mul(&r, &k.pow(&lc, (n - 1 - dk) as u64));
    if (n * (n - 1) / 2) % 2 == 1 {
        r = k.neg(&r);
    }
    Ok(k.div(&r, &lc).unwrap())
}

/// `gcd(f, f') = 1`. Always false for nonconstant `f` with `f' = 0`.
pub fn is_separable<K: Field>(f: &Polynomial<K>) -> bool {
    poly_gcd(f, &f.derivative()).is_ok_and(|g| g.is_one())
}

/// Polynomial with the given roots, `prod (X - r)`.
pub fn from_roots<K: Field>(field: K, roots: &[K::Elem]) -> Polynomial<K> {
    roots
        .iter()
        .fold(Polynomial::one(field.clone()), |acc, r| acc * Polynomial::linear(field.clone(), r))
}
