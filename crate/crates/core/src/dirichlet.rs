//! Construction of `c` such that `a + b*c*Y` has degree `n` in `X` and
//! geometric Galois group `S_n`.
//!
//! The construction picks a cycle length `e`, forces the specializations at
//! two values `alpha1`, `alpha2` of `Y` to factor as
//! `(X - gamma1)^e * h1` and `(X - gamma2)^2 * h2` with `h1`, `h2` separable,
//! and solves the resulting pair of congruences for `c`.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_integer::Integer;
use thiserror::Error;

use crate::factor::is_irreducible;
use crate::field::{Field, PrimeField};
use crate::poly::{inverse_mod, is_separable, poly_gcd, Polynomial};

/// Default cap on candidates tried by each element search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000;

/// Smallest prime characteristic the constructor accepts.
pub const MIN_PRIME: u64 = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("a and b are not coprime")]
    NotCoprime,
    #[error("degree n = {n} is too small: {reason}")]
    DegreeTooSmall { n: usize, reason: String },
    #[error("field too small: {0}")]
    FieldTooSmall(String),
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("no cycle length e with n/2 < e < n - m for n = {n}, m = {m}")]
    NoValidCycleLength { n: usize, m: usize },
}

fn violation(msg: &str) -> ConstructError {
    ConstructError::PreconditionViolation(String::from(msg))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionParams<K: Field> {
    pub a: Polynomial<K>,
    pub b: Polynomial<K>,
    pub n: usize,
    pub search_budget: u64,
}

impl<K: Field> ConstructionParams<K> {
    pub fn new(a: Polynomial<K>, b: Polynomial<K>, n: usize) -> Self {
        ConstructionParams { a, b, n, search_budget: DEFAULT_SEARCH_BUDGET }
    }

    pub fn field(&self) -> &K {
        self.a.field()
    }

    /// `max(deg a, 2 + deg b)`.
    pub fn m(&self) -> usize {
        self.a.deg0().max(2 + self.b.deg0())
    }
}

/// Degrees of the intermediate polynomials met while solving the
/// congruences, recorded as obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CongruenceTrace {
    pub deg_c1: Option<usize>,
    pub deg_c2: Option<usize>,
    pub deg_h1_0: Option<usize>,
    pub deg_h2_0: Option<usize>,
    pub deg_c_bar: Option<usize>,
    pub deg_s: usize,
    pub candidates_tried: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirichletCertificate<K: Field> {
    pub a: Polynomial<K>,
    pub b: Polynomial<K>,
    pub c: Polynomial<K>,
    pub n: usize,
    pub e: usize,
    pub alpha1: K::Elem,
    pub alpha2: K::Elem,
    pub gamma1: K::Elem,
    pub gamma2: K::Elem,
    pub p1: Polynomial<K>,
    pub p2: Polynomial<K>,
    pub h1: Polynomial<K>,
    pub h2: Polynomial<K>,
    pub trace: Option<CongruenceTrace>,
}

impl<K: Field> DirichletCertificate<K> {
    pub fn field(&self) -> &K {
        self.a.field()
    }

    pub fn bc(&self) -> Polynomial<K> {
        &self.b * &self.c
    }

    /// The specialization `a + alpha*b*c`.
    pub fn specialize(&self, alpha: &K::Elem) -> Polynomial<K> {
        &self.a + &self.bc().scale(alpha)
    }
}

/// Smallest `e > n/2` coprime to `n` (and to `p` when `p > 0`), provided it
/// also satisfies `e < n - m`.
pub fn find_cycle_length(n: usize, m: usize, p: u64) -> Result<usize, ConstructError> {
    let none = ConstructError::NoValidCycleLength { n, m };
    let upper = n.checked_sub(m).ok_or(none.clone())?;
    let e = (n / 2 + 1..n)
        .find(|&e| e.gcd(&n) == 1 && (p == 0 || (e as u64).gcd(&p) == 1))
        .ok_or(none.clone())?;
    if e < upper {
        Ok(e)
    } else {
        Err(none)
    }
}

/// First `alpha` in enumeration order, outside `exclude`, with
/// `gcd(a + alpha*b, c) = 1` and, if asked, `a + alpha*b` separable.
pub fn find_good_alpha<K: Field>(
    a: &Polynomial<K>,
    b: &Polynomial<K>,
    c: &Polynomial<K>,
    exclude: &[K::Elem],
    require_separable: bool,
    budget: u64,
) -> Result<K::Elem, ConstructError> {
    if !a.same_field(b) || !a.same_field(c) {
        return Err(violation("inputs over different fields"));
    }
    if c.is_zero() {
        return Err(violation("c is zero"));
    }
    if !poly_gcd(a, b).expect("same field").is_one() {
        return Err(ConstructError::NotCoprime);
    }
    let k = a.field();
    for i in 0..budget {
        let Some(alpha) = k.enumerate(i) else { break };
        if exclude.contains(&alpha) {
            continue;
        }
        let f = a + &b.scale(&alpha);
        if !poly_gcd(&f, c).expect("same field").is_one() {
            continue;
        }
        if require_separable && !is_separable(&f) {
            continue;
        }
        return Ok(alpha);
    }
    Err(ConstructError::FieldTooSmall(format!(
        "no admissible alpha among the first {budget} elements of {}",
        k.config()
    )))
}

/// Solves `a = p_i*h_i + alpha_i*b*c` for `i = 1, 2` with `deg c = d`,
/// `h_i` separable and `gcd(h_i, a*p_i) = 1`.
///
/// `d = deg p1 + deg p2` is accepted as well and uses a constant `s`.
pub fn build_congruence_c<K: Field>(
    a: &Polynomial<K>,
    b: &Polynomial<K>,
    p: [&Polynomial<K>; 2],
    alpha: [&K::Elem; 2],
    d: usize,
    budget: u64,
) -> Result<(Polynomial<K>, Polynomial<K>, Polynomial<K>), ConstructError> {
    build_congruence_traced(a, b, p, alpha, d, budget).map(|(c, h1, h2, _)| (c, h1, h2))
}

type Traced<K> = (Polynomial<K>, Polynomial<K>, Polynomial<K>, CongruenceTrace);

pub fn build_congruence_traced<K: Field>(
    a: &Polynomial<K>,
    b: &Polynomial<K>,
    p: [&Polynomial<K>; 2],
    alpha: [&K::Elem; 2],
    d: usize,
    budget: u64,
) -> Result<Traced<K>, ConstructError> {
    let k = a.field().clone();
    if [b, p[0], p[1]].iter().any(|q| !a.same_field(q)) {
        return Err(violation("inputs over different fields"));
    }
    if a.is_zero() || b.is_zero() || p[0].is_constant() || p[1].is_constant() {
        return Err(violation("a, b must be nonzero and p1, p2 nonconstant"));
    }
    let coprime = |x: &Polynomial<K>, y: &Polynomial<K>| poly_gcd(x, y).expect("same field").is_one();
    if !(coprime(a, b)
        && coprime(a, p[0])
        && coprime(a, p[1])
        && coprime(b, p[0])
        && coprime(b, p[1])
        && coprime(p[0], p[1]))
    {
        return Err(violation("a, b, p1, p2 are not pairwise coprime"));
    }
    if alpha[0] == alpha[1] || k.is_zero(alpha[0]) || k.is_zero(alpha[1]) {
        return Err(violation("alpha1, alpha2 must be distinct and nonzero"));
    }
    let dp = p[0].deg0() + p[1].deg0();
    if d < dp {
        return Err(violation("target degree of c is below deg p1 + deg p2"));
    }
    let d_s = d - dp;

    // a = p_i h_{i,0} + b_i c_i p_{3-i}, deg c_i < deg p_i
    let bi = [b.scale(alpha[0]), b.scale(alpha[1])];
    let mut ci = Vec::with_capacity(2);
    let mut hi0 = Vec::with_capacity(2);
    for i in 0..2 {
        let other = p[1 - i];
        let unit = &bi[i] * other;
        let inv = inverse_mod(&unit, p[i]).ok_or_else(|| violation("b_i p_{3-i} not invertible"))?;
        let c = (a * &inv).rem(p[i]).expect("nonzero modulus");
        let h = (a - &(&unit * &c))
            .exact_div(p[i])
            .expect("congruence solution divides");
        ci.push(c);
        hi0.push(h);
    }
    let c_bar = &(&ci[0] * p[1]) + &(&ci[1] * p[0]);
    let hi1 = [&hi0[0] - &(&ci[1] * &bi[0]), &hi0[1] - &(&ci[0] * &bi[1])];
    let p12 = p[0] * p[1];
    let ap = [a * p[0], a * p[1]];
    let bp = [&bi[0] * p[1], &bi[1] * p[0]];

    let avoid = &(&(&hi1[0] * &hi1[1]) * b) * &p12;
    let mut tried = 0u64;
    let exhausted = |tried: u64| {
        ConstructError::FieldTooSmall(format!(
            "no s = lambda*(X - beta)^{}(X - gamma) found after {tried} candidates over {}",
            d_s.saturating_sub(1),
            k.config()
        ))
    };

    // candidate shapes for s before scaling
    let shape_iter: Box<dyn Iterator<Item = Polynomial<K>> + '_> = if d_s == 0 {
        Box::new(core::iter::once(Polynomial::one(k.clone())))
    } else {
        Box::new(ShapeIter::new(k.clone(), d_s, avoid))
    };

    for shape in shape_iter {
        let mut li = 1u64;
        while let Some(lambda) = k.enumerate(li) {
            li += 1;
            if tried >= budget {
                return Err(exhausted(tried));
            }
            tried += 1;
            let s = shape.scale(&lambda);
            let h = [&hi1[0] - &(&bp[0] * &s), &hi1[1] - &(&bp[1] * &s)];
            let ok = (0..2).all(|i| is_separable(&h[i]) && poly_gcd(&h[i], &ap[i]).expect("same field").is_one());
            if ok {
                let c = &c_bar + &(&p12 * &s);
                let [h1, h2] = h;
                let trace = CongruenceTrace {
                    deg_c1: ci[0].degree(),
                    deg_c2: ci[1].degree(),
                    deg_h1_0: hi0[0].degree(),
                    deg_h2_0: hi0[1].degree(),
                    deg_c_bar: c_bar.degree(),
                    deg_s: d_s,
                    candidates_tried: tried,
                };
                return Ok((c, h1, h2, trace));
            }
        }
        if tried >= budget {
            break;
        }
    }
    Err(exhausted(tried))
}

/// `(X - beta)^(d-1) (X - gamma)` over index pairs `(i, j)` of the element
/// enumeration, taken diagonal by diagonal (`i + j = 0, 1, 2, ...`, then by
/// `i`), skipping roots of `avoid`. Diagonals keep the order fair over
/// infinite fields.
struct ShapeIter<K: Field> {
    field: K,
    d: usize,
    avoid: Polynomial<K>,
    diag: u64,
    i: u64,
}

impl<K: Field> ShapeIter<K> {
    fn new(field: K, d: usize, avoid: Polynomial<K>) -> Self {
        ShapeIter { field, d, avoid, diag: 0, i: 0 }
    }

    fn admissible(&self, x: &K::Elem) -> bool {
        !self.field.is_zero(&self.avoid.eval(x))
    }
}

impl<K: Field> Iterator for ShapeIter<K> {
    type Item = Polynomial<K>;

    fn next(&mut self) -> Option<Polynomial<K>> {
        loop {
            if self.i > self.diag {
                self.diag += 1;
                self.i = 0;
                // past the last diagonal of a finite field
                let j = self.diag;
                if self.field.enumerate(j / 2).is_none() {
                    return None;
                }
            }
            let (i, j) = (self.i, self.diag - self.i);
            self.i += 1;
            let (Some(beta), Some(gamma)) = (self.field.enumerate(i), self.field.enumerate(j)) else {
                continue;
            };
            if !self.admissible(&beta) || !self.admissible(&gamma) {
                continue;
            }
            let k = &self.field;
            let shape = Polynomial::linear(k.clone(), &beta).pow(self.d - 1)
                * Polynomial::linear(k.clone(), &gamma);
            return Some(shape);
        }
    }
}

fn check_inputs<K: Field>(params: &ConstructionParams<K>) -> Result<(), ConstructError> {
    let (a, b) = (&params.a, &params.b);
    if !a.same_field(b) {
        return Err(violation("a and b over different fields"));
    }
    if b.is_zero() {
        return Err(violation("b is zero"));
    }
    if !poly_gcd(a, b).expect("same field").is_one() {
        return Err(ConstructError::NotCoprime);
    }
    let p = a.field().characteristic();
    if p != 0 && p < MIN_PRIME {
        return Err(ConstructError::FieldTooSmall(format!(
            "characteristic {p} is below the minimum {MIN_PRIME}"
        )));
    }
    Ok(())
}

/// Runs the full construction, choosing `e` by [`find_cycle_length`] with
/// `m = max(deg a, 2 + deg b)`.
pub fn construct_dirichlet<K: Field>(
    params: &ConstructionParams<K>,
) -> Result<DirichletCertificate<K>, ConstructError> {
    check_inputs(params)?;
    let n = params.n;
    let m = params.m();
    let p = params.field().characteristic();
    let e = find_cycle_length(n, m, p).map_err(|_| ConstructError::DegreeTooSmall {
        n,
        reason: format!("no cycle length e with n/2 < e < n - {m} coprime to n and p"),
    })?;
    let needed = params.a.deg0().max(e + 2 + params.b.deg0());
    if n <= needed {
        return Err(ConstructError::DegreeTooSmall {
            n,
            reason: format!("need n > max(deg a, e + 2 + deg b) = {needed} with e = {e}"),
        });
    }
    construct_with_cycle_length(params, e)
}

/// Runs the construction for a caller-chosen `e`.
///
/// Requires `n/2 < e < n`, `gcd(e, n) = 1`, `e` prime to the characteristic,
/// `n > deg a` and `n - deg b >= e + 2`. This admits small instances such as
/// `n = 5, e = 3` that the automatic choice of `e` excludes.
pub fn construct_with_cycle_length<K: Field>(
    params: &ConstructionParams<K>,
    e: usize,
) -> Result<DirichletCertificate<K>, ConstructError> {
    check_inputs(params)?;
    let (a, b, n) = (&params.a, &params.b, params.n);
    let k = a.field().clone();
    let p = k.characteristic();
    if !(2 * e > n && e < n && e.gcd(&n) == 1 && (p == 0 || (e as u64).gcd(&p) == 1)) {
        return Err(violation("cycle length must satisfy n/2 < e < n and gcd(e, n*p) = 1"));
    }
    if n <= a.deg0() || n < b.deg0() + e + 2 {
        return Err(ConstructError::DegreeTooSmall {
            n,
            reason: format!("need n > deg a and n >= e + 2 + deg b with e = {e}"),
        });
    }
    let budget = params.search_budget;
    let ab = a * b;
    let mut gammas = Vec::new();
    let mut alphas = Vec::new();
    for i in 0..budget {
        let Some(x) = k.enumerate(i) else { break };
        if gammas.len() < 2 && !k.is_zero(&ab.eval(&x)) {
            gammas.push(x.clone());
        }
        if alphas.len() < 2 && !k.is_zero(&x) {
            alphas.push(x);
        }
        if gammas.len() == 2 && alphas.len() == 2 {
            break;
        }
    }
    if gammas.len() < 2 || alphas.len() < 2 {
        return Err(ConstructError::FieldTooSmall(String::from(
            "cannot pick two points that are not roots of a*b",
        )));
    }
    let p1 = Polynomial::linear(k.clone(), &gammas[0]).pow(e);
    let p2 = Polynomial::linear(k.clone(), &gammas[1]).pow(2);
    let d = n - b.deg0();
    // the congruences are solved as a = p_i h_i + (-alpha_i) b c, so that
    // the specialization at Y = alpha_i is p_i h_i
    let neg = [k.neg(&alphas[0]), k.neg(&alphas[1])];
    let (c, h1, h2, trace) = build_congruence_traced(a, b, [&p1, &p2], [&neg[0], &neg[1]], d, budget)?;
    let [alpha1, alpha2]: [K::Elem; 2] = alphas.try_into().expect("two alphas");
    let [gamma1, gamma2]: [K::Elem; 2] = gammas.try_into().expect("two gammas");
    Ok(DirichletCertificate {
        a: a.clone(),
        b: b.clone(),
        c,
        n,
        e,
        alpha1,
        alpha2,
        gamma1,
        gamma2,
        p1,
        p2,
        h1,
        h2,
        trace: Some(trace),
    })
}

/// True when `a + alpha*b*c` is irreducible of degree `n`.
pub fn is_irreducible_offset(cert: &DirichletCertificate<PrimeField>, alpha: u64) -> bool {
    let f = cert.specialize(&alpha);
    f.degree() == Some(cert.n) && is_irreducible(&f)
}

/// All `alpha` in F_p, in increasing order and at most `limit` of them, with
/// `a + alpha*b*c` irreducible of degree `n`.
pub fn find_irreducible_offsets(cert: &DirichletCertificate<PrimeField>, limit: usize) -> Vec<u64> {
    let p = cert.field().modulus();
    (0..p)
        .filter(|&alpha| is_irreducible_offset(cert, alpha))
        .take(limit)
        .collect()
}
