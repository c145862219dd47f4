//! Independent oracles for the integration and acceptance tests. Nothing
//! here calls into the crate's algebra; polynomials are plain coefficient
//! vectors (ascending) over F_p.

#![allow(dead_code)]

use dirichlet_core::group::{FiniteGroup, Hom};
use dirichlet_core::perm::Permutation;

pub type Coeffs = Vec<u64>;

fn trim(mut f: Coeffs) -> Coeffs {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn pow_mod_u64(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    r
}

fn inv_u64(a: u64, p: u64) -> u64 {
    pow_mod_u64(a, p - 2, p)
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

pub fn poly_mul(f: &[u64], g: &[u64], p: u64) -> Coeffs {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(a, b, p)) % p;
        }
    }
    trim(out)
}

pub fn poly_rem(f: &[u64], g: &[u64], p: u64) -> Coeffs {
    let g = trim(g.to_vec());
    let mut r = trim(f.to_vec());
    let lead_inv = inv_u64(*g.last().expect("nonzero divisor"), p);
    while r.len() >= g.len() && !r.is_empty() {
        let shift = r.len() - g.len();
        let c = mulmod(*r.last().unwrap(), lead_inv, p);
        for (i, &b) in g.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - mulmod(c, b, p)) % p;
        }
        r = trim(r);
    }
    r
}

pub fn poly_gcd(f: &[u64], g: &[u64], p: u64) -> Coeffs {
    let (mut a, mut b) = (trim(f.to_vec()), trim(g.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&l) = a.last() {
        let li = inv_u64(l, p);
        a.iter_mut().for_each(|c| *c = mulmod(*c, li, p));
    }
    a
}

pub fn derivative(f: &[u64], p: u64) -> Coeffs {
    trim(f.iter().enumerate().skip(1).map(|(i, &c)| mulmod(c, i as u64 % p, p)).collect())
}

pub fn eval(f: &[u64], x: u64, p: u64) -> u64 {
    f.iter().rev().fold(0, |acc, &c| (mulmod(acc, x, p) + c) % p)
}

/// Rank of a matrix over F_p by Gaussian elimination.
fn rank(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let inv = inv_u64(m[r][c], p);
        for j in 0..cols {
            m[r][j] = mulmod(m[r][j], inv, p);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] + p - mulmod(f, m[r][j], p)) % p;
                }
            }
        }
        r += 1;
    }
    r
}

/// Berlekamp's criterion: a squarefree `f` of degree `n` is irreducible iff
/// the fixed space of `g ↦ g^p mod f` is one-dimensional.
pub fn berlekamp_irreducible(f: &[u64], p: u64) -> bool {
    let f = trim(f.to_vec());
    let n = f.len().saturating_sub(1);
    if n == 0 {
        return false;
    }
    if poly_gcd(&f, &derivative(&f, p), p).len() != 1 {
        return false;
    }
    // row i: X^{ip} mod f, minus e_i
    let xp = {
        let mut acc = vec![1u64];
        let x = vec![0, 1];
        for _ in 0..p {
            acc = poly_rem(&poly_mul(&acc, &x, p), &f, p);
        }
        acc
    };
    let mut row = vec![1u64];
    let mut m = Vec::with_capacity(n);
    for i in 0..n {
        let mut r = row.clone();
        r.resize(n, 0);
        r[i] = (r[i] + p - 1) % p;
        m.push(r);
        row = poly_rem(&poly_mul(&row, &xp, p), &f, p);
    }
    n - rank(m, p) == 1
}

/// Irreducibility by trial division with every monic polynomial of degree
/// up to `deg f / 2`.
pub fn trial_division_irreducible(f: &[u64], p: u64) -> bool {
    let f = trim(f.to_vec());
    let n = f.len().saturating_sub(1);
    if n == 0 {
        return false;
    }
    for d in 1..=n / 2 {
        for code in 0..p.pow(d as u32) {
            let mut g: Coeffs = (0..d).map(|i| code / p.pow(i as u32) % p).collect();
            g.push(1);
            if poly_rem(&f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Arithmetic in `F_{p^k} = F_p[t]/(m(t))`.
pub struct ExtField {
    pub p: u64,
    pub k: usize,
    modulus: Coeffs,
}

impl ExtField {
    pub fn new(p: u64, k: usize) -> Self {
        // first monic irreducible of degree k in counting order
        let modulus = (0..p.pow(k as u32))
            .map(|code| {
                let mut g: Coeffs = (0..k).map(|i| code / p.pow(i as u32) % p).collect();
                g.push(1);
                g
            })
            .find(|g| trial_division_irreducible(g, p))
            .expect("irreducible exists");
        ExtField { p, k, modulus }
    }

    pub fn size(&self) -> u64 {
        self.p.pow(self.k as u32)
    }

    pub fn element(&self, code: u64) -> Coeffs {
        trim((0..self.k).map(|i| code / self.p.pow(i as u32) % self.p).collect())
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Coeffs {
        poly_rem(&poly_mul(a, b, self.p), &self.modulus, self.p)
    }

    fn add(&self, a: &[u64], b: &[u64]) -> Coeffs {
        let n = a.len().max(b.len());
        trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % self.p).collect())
    }

    /// `f(x)` for `f` over F_p.
    pub fn eval(&self, f: &[u64], x: &[u64]) -> Coeffs {
        f.iter().rev().fold(Vec::new(), |acc, &c| {
            let t = self.mul(&acc, x);
            self.add(&t, &trim(vec![c]))
        })
    }

    pub fn frobenius(&self, x: &[u64]) -> Coeffs {
        let mut acc = vec![1u64];
        for _ in 0..self.p {
            acc = self.mul(&acc, x);
        }
        acc
    }
}

/// Sizes of the orbits of `x ↦ x^p` on the roots of a squarefree `f`, found
/// in the smallest `F_{p^k}` (`k ≤ max_k`) containing all of them. Sorted
/// descending; `None` if no such field was found.
pub fn frobenius_orbit_sizes(f: &[u64], p: u64, max_k: usize) -> Option<Vec<usize>> {
    let f = trim(f.to_vec());
    let n = f.len() - 1;
    for k in 1..=max_k {
        let field = ExtField::new(p, k);
        let roots: Vec<Coeffs> = (0..field.size())
            .map(|c| field.element(c))
            .filter(|x| field.eval(&f, x).is_empty())
            .collect();
        if roots.len() < n {
            continue;
        }
        let mut seen = vec![false; roots.len()];
        let mut sizes = Vec::new();
        for i in 0..roots.len() {
            if seen[i] {
                continue;
            }
            let mut len = 0;
            let mut x = roots[i].clone();
            loop {
                let j = roots.iter().position(|r| *r == x).expect("root set is Frobenius stable");
                if seen[j] {
                    break;
                }
                seen[j] = true;
                len += 1;
                x = field.frobenius(&x);
            }
            sizes.push(len);
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        return Some(sizes);
    }
    None
}

/// Every set partition of `0..n`, as block labels per point.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, cur: &mut Vec<usize>, blocks: usize, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=blocks {
            cur.push(b);
            go(i + 1, n, cur, blocks.max(b + 1), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), 0, &mut out);
    out
}

/// Primitivity by testing every nontrivial partition against the generators.
pub fn primitive_by_partitions(n: usize, gens: &[Permutation], partitions: &[Vec<usize>]) -> bool {
    partitions.iter().all(|part| {
        let blocks = part.iter().max().map_or(0, |m| m + 1);
        if blocks == 1 || blocks == n {
            return true;
        }
        let preserved = gens.iter().all(|g| {
            // g maps blocks to blocks iff same-block points stay together
            (0..n).all(|x| (0..n).all(|y| part[x] != part[y] || part[g.apply(x)] == part[g.apply(y)]))
        });
        !preserved
    })
}

/// Homomorphisms `θ: Γ → G` with `α ∘ θ = μ`, by running through every
/// function table.
pub fn weak_solutions_by_tables(gamma: &FiniteGroup, mu: &Hom, g: &FiniteGroup, alpha: &Hom) -> Vec<Vec<usize>> {
    let (n, m) = (gamma.order(), g.order());
    let total = (m as u64).pow(n as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let images: Vec<usize> = (0..n).map(|i| (code / (m as u64).pow(i as u32) % m as u64) as usize).collect();
        let hom = (0..n).all(|x| (0..n).all(|y| images[gamma.mul(x, y)] == g.mul(images[x], images[y])));
        if hom && (0..n).all(|x| alpha.apply(images[x]) == mu.apply(x)) {
            out.push(images);
        }
    }
    out
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Whether `e` meets the three cycle-length conditions.
pub fn valid_cycle_length(e: usize, n: usize, m: usize, p: u64) -> bool {
    2 * e > n && e + m < n && gcd(e, n) == 1 && (p == 0 || e as u64 % p != 0)
}

/// Every valid cycle length, by scanning.
pub fn all_cycle_lengths(n: usize, m: usize, p: u64) -> Vec<usize> {
    (1..n).filter(|&e| valid_cycle_length(e, n, m, p)).collect()
}
