//! Factorization over prime fields and root finding.
//!
//! Pipeline: squarefree decomposition, distinct-degree split, then
//! equal-degree splitting with a seeded generator so results are
//! reproducible.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::{Field, PrimeField, Rationals};
use crate::poly::{poly_gcd, Polynomial};

/// Seed used by [`factor`] when the caller does not supply one.
pub const DEFAULT_FACTOR_SEED: u64 = 0x5eed_0f_fac7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
}

/// `unit * prod factor^multiplicity`, factors monic irreducible and distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorMultiset<K: Field> {
    pub unit: K::Elem,
    pub factors: Vec<(Polynomial<K>, usize)>,
}

impl<K: Field> FactorMultiset<K> {
    pub fn expand(&self, field: &K) -> Polynomial<K> {
        self.factors.iter().fold(
            Polynomial::constant(field.clone(), self.unit.clone()),
            |acc, (g, m)| acc * g.pow(*m),
        )
    }

    /// Factor degrees repeated by multiplicity, largest first.
    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(g, m)| core::iter::repeat(g.deg0()).take(*m))
            .collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 1)
    }
}

type FpPoly = Polynomial<PrimeField>;

/// Linear map `g -> g^p mod f` on residues modulo `f`, stored as the images
/// of `1, X, ..., X^(n-1)`.
pub struct Frobenius {
    modulus: FpPoly,
    columns: Vec<FpPoly>,
}

impl Frobenius {
    pub fn new(f: &FpPoly) -> Self {
        let k = *f.field();
        let n = f.deg0();
        let xp = Polynomial::x(k).pow_mod(k.modulus(), f).expect("nonzero modulus");
        let mut columns = Vec::with_capacity(n);
        let mut cur = Polynomial::one(k).rem(f).expect("nonzero modulus");
        for _ in 0..n {
            columns.push(cur.clone());
            cur = (&cur * &xp).rem(f).expect("nonzero modulus");
        }
        Frobenius { modulus: f.clone(), columns }
    }

    /// `g^p mod f` for `deg g < deg f`. Coefficients are fixed by Frobenius
    /// in F_p, so this is just a linear combination of the columns.
    pub fn apply(&self, g: &FpPoly) -> FpPoly {
        let k = *self.modulus.field();
        let n = self.columns.len();
        let mut acc = vec![0u64; n];
        for (c, col) in g.coeffs().iter().zip(&self.columns) {
            if *c == 0 {
                continue;
            }
            for (a, x) in acc.iter_mut().zip(col.coeffs()) {
                *a = k.add(a, &k.mul(c, x));
            }
        }
        Polynomial::new(k, acc)
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }
}

/// Factors a nonzero polynomial over F_p using [`DEFAULT_FACTOR_SEED`].
pub fn factor(f: &FpPoly) -> Result<FactorMultiset<PrimeField>, FactorError> {
    factor_with_seed(f, DEFAULT_FACTOR_SEED)
}

pub fn factor_with_seed(f: &FpPoly, seed: u64) -> Result<FactorMultiset<PrimeField>, FactorError> {
    let unit = *f.leading().ok_or(FactorError::ZeroPolynomial)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(&f.monic()) {
        for (d, block) in distinct_degree(&part) {
            let frob = Frobenius::new(&block);
            for g in equal_degree(&block, d, &frob, &mut rng) {
                factors.push((g, mult));
            }
        }
    }
    factors.sort_by(|(g, m), (h, n)| {
        (g.deg0(), g.coeffs(), m).cmp(&(h.deg0(), h.coeffs(), n))
    });
    Ok(FactorMultiset { unit, factors })
}

/// Squarefree parts of a monic polynomial: `f = prod g_i^m_i` with the
/// `g_i` squarefree, pairwise coprime, and the `m_i` distinct.
pub fn squarefree_decomposition(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let k = *f.field();
    let p = k.modulus() as usize;
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let df = f.derivative();
    if df.is_zero() {
        for (g, m) in squarefree_decomposition(&pth_root(f)) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = poly_gcd(f, &df).expect("same field");
    let mut w = f.exact_div(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = poly_gcd(&w, &c).expect("same field");
        let z = w.exact_div(&y).expect("gcd divides");
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        c = c.exact_div(&y).expect("gcd divides");
        w = y;
    }
    if !c.is_one() {
        for (g, m) in squarefree_decomposition(&pth_root(&c)) {
            out.push((g, m * p));
        }
    }
    out.sort_by_key(|(_, m)| *m);
    out
}

/// `g` with `g(X)^p = f(X)`, for `f` whose derivative vanishes.
fn pth_root(f: &FpPoly) -> FpPoly {
    let p = f.field().modulus() as usize;
    let c = f.coeffs().iter().step_by(p).copied().collect();
    Polynomial::new(*f.field(), c)
}

/// Splits a squarefree monic polynomial into `(d, product of its degree-d
/// irreducible factors)`.
pub fn distinct_degree(f: &FpPoly) -> Vec<(usize, FpPoly)> {
    let k = *f.field();
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let frob = Frobenius::new(f);
    let x = Polynomial::x(k).rem(f).expect("nonzero");
    let mut h = x.clone();
    let mut g = f.clone();
    let mut d = 1;
    while g.deg0() >= 2 * d {
        h = frob.apply(&h);
        let q = poly_gcd(&(&h - &x), &g).expect("same field");
        if !q.is_one() {
            g = g.exact_div(&q).expect("gcd divides");
            out.push((d, q));
        }
        d += 1;
    }
    if !g.is_constant() {
        out.push((g.deg0(), g));
    }
    out
}

/// Splits a monic squarefree product of degree-`d` irreducibles into its
/// factors. `frob` must be taken modulo a multiple of `f`.
fn equal_degree(f: &FpPoly, d: usize, frob: &Frobenius, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    if f.deg0() == d {
        return vec![f.clone()];
    }
    let k = *f.field();
    let p = k.modulus();
    let n = f.deg0();
    loop {
        let coeffs: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        let a = Polynomial::new(k, coeffs);
        if a.is_constant() {
            continue;
        }
        let splitter = if p == 2 {
            // absolute trace a + a^2 + ... + a^(2^(d-1))
            let mut t = a.clone();
            let mut tr = a.clone();
            for _ in 1..d {
                t = frob.apply(&t).rem(f).expect("nonzero");
                tr = &tr + &t;
            }
            tr
        } else {
            // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p-1)/2)
            let mut t = a.clone();
            let mut norm = a.clone();
            for _ in 1..d {
                t = frob.apply(&t).rem(f).expect("nonzero");
                norm = (&norm * &t).rem(f).expect("nonzero");
            }
            let b = norm.pow_mod((p - 1) / 2, f).expect("nonzero");
            &b - &Polynomial::one(k)
        };
        let g = poly_gcd(&splitter, f).expect("same field");
        if !g.is_constant() && g.deg0() < n {
            let h = f.exact_div(&g).expect("gcd divides");
            let mut out = equal_degree(&g, d, frob, rng);
            out.extend(equal_degree(&h, d, frob, rng));
            return out;
        }
    }
}

/// Irreducibility over F_p; constants (including zero) are not irreducible.
pub fn is_irreducible(f: &FpPoly) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let k = *f.field();
    let f = f.monic();
    let df = f.derivative();
    if df.is_zero() || !poly_gcd(&f, &df).expect("same field").is_one() {
        return false;
    }
    let frob = Frobenius::new(&f);
    let x = Polynomial::x(k).rem(&f).expect("nonzero");
    let mut h = x.clone();
    for _ in 1..=n / 2 {
        h = frob.apply(&h);
        if !poly_gcd(&(&h - &x), &f).expect("same field").is_one() {
            return false;
        }
    }
    true
}

/// Roots lying in the base field.
pub trait RootsInField: Field {
    /// Distinct roots of `f` in ascending order. The zero polynomial has no
    /// finite root list and yields an empty vector.
    fn roots_in_field(f: &Polynomial<Self>) -> Vec<Self::Elem>;
}

impl RootsInField for PrimeField {
    fn roots_in_field(f: &Polynomial<Self>) -> Vec<u64> {
        if f.is_constant() {
            return Vec::new();
        }
        let k = *f.field();
        let f = f.monic();
        let xp = Polynomial::x(k).pow_mod(k.modulus(), &f).expect("nonzero");
        let split = poly_gcd(&(&xp - &Polynomial::x(k)), &f).expect("same field");
        if split.is_constant() {
            return Vec::new();
        }
        let frob = Frobenius::new(&split);
        let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_FACTOR_SEED);
        let mut roots: Vec<u64> = equal_degree(&split, 1, &frob, &mut rng)
            .into_iter()
            .map(|l| k.neg(&l.coeff(0)))
            .collect();
        roots.sort_unstable();
        roots
    }
}

impl RootsInField for Rationals {
    fn roots_in_field(f: &Polynomial<Self>) -> Vec<BigRational> {
        if f.is_constant() {
            return Vec::new();
        }
        let denom_lcm = f
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = f
            .coeffs()
            .iter()
            .map(|c| (c * BigRational::from_integer(denom_lcm.clone())).to_integer())
            .collect();
        let mut roots = Vec::new();
        let low = ints.iter().position(|c| !c.is_zero()).unwrap();
        if low > 0 {
            roots.push(BigRational::zero());
        }
        let a0 = ints[low].abs();
        let an = ints.last().unwrap().abs();
        if ints.len() - low > 1 {
            let num_divs = divisors(&a0);
            let den_divs = divisors(&an);
            for s in &den_divs {
                for r in &num_divs {
                    for sign in [1i32, -1] {
                        let x = BigRational::new(r * BigInt::from(sign), s.clone());
                        if !roots.contains(&x) && f.eval(&x).is_zero() {
                            roots.push(x);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots
    }
}

/// Positive divisors by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let q = n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
