//! The groups `Z/m ⋊ Z/p^k` with `(a, x)(b, y) = (a + α^x b, x + y)`, where
//! `α` has multiplicative order `p` modulo `m`.

use alloc::format;
use alloc::vec::Vec;

use thiserror::Error;

use crate::field::is_prime_u64;
use crate::group::{FiniteGroup, GroupError, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuasiPError {
    #[error("{0} is not prime")]
    NotPrime(usize),
    #[error("p = {p} divides m = {m}")]
    PDividesM { p: usize, m: usize },
    #[error("alpha = {alpha} does not have multiplicative order {p} modulo {m}")]
    WrongOrder { alpha: usize, p: usize, m: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// What was checked about the constructed group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiPReport {
    /// The elements of `p`-power order generate the group.
    pub generated_by_p_sylows: bool,
    /// Every normal subgroup of index prime to `p` is the whole group.
    pub prime_to_p_quotients_trivial: bool,
    /// `(1,1)^{p^k}` is the identity.
    pub generator_power_trivial: bool,
    /// For each divisor `n` of the order, the subgroup `A ⋊ B` of order `n`
    /// with `A ≤ Z/m`, `B ≤ Z/p^k`.
    pub subgroups_by_order: Vec<(usize, Subgroup)>,
}

#[derive(Debug, Clone)]
pub struct QuasiP {
    pub p: usize,
    pub k: u32,
    pub m: usize,
    pub alpha: usize,
    pub group: FiniteGroup,
    pub report: QuasiPReport,
}

impl QuasiP {
    fn pk(&self) -> usize {
        self.p.pow(self.k)
    }

    pub fn index_of(&self, a: usize, x: usize) -> usize {
        (x % self.pk()) * self.m + a % self.m
    }

    pub fn element(&self, i: usize) -> (usize, usize) {
        (i % self.m, i / self.m)
    }

    /// `(a,1)^n = (a(1 + α + .. + α^{n-1}), n)`.
    pub fn closed_form_power(&self, a: usize, n: usize) -> (usize, usize) {
        let mut sum = 0;
        let mut term = 1 % self.m;
        for _ in 0..n {
            sum = (sum + term) % self.m;
            term = term * self.alpha % self.m;
        }
        (a * sum % self.m, n % self.pk())
    }
}

fn mul_order(alpha: usize, m: usize) -> Option<usize> {
    let mut x = alpha % m;
    for k in 1..=m {
        if x == 1 % m {
            return Some(k);
        }
        x = x * alpha % m;
    }
    None
}

pub fn quasi_p_semidirect(p: usize, k: u32, m: usize, alpha: usize) -> Result<QuasiP, QuasiPError> {
    if !is_prime_u64(p as u64) {
        return Err(QuasiPError::NotPrime(p));
    }
    if m == 0 || m % p == 0 {
        return Err(QuasiPError::PDividesM { p, m });
    }
    if mul_order(alpha, m) != Some(p) {
        return Err(QuasiPError::WrongOrder { alpha, p, m });
    }
    let pk = p.checked_pow(k).ok_or(GroupError::OrderTooLarge { order: usize::MAX, limit: crate::group::MAX_ORDER })?;
    let order = pk.saturating_mul(m);
    if order > crate::group::MAX_ORDER {
        return Err(GroupError::OrderTooLarge { order, limit: crate::group::MAX_ORDER }.into());
    }
    let powers: Vec<usize> = (0..p).scan(1 % m, |x, _| {
        let cur = *x;
        *x = *x * alpha % m;
        Some(cur)
    })
    .collect();
    let elements: Vec<(usize, usize)> = (0..pk).flat_map(|x| (0..m).map(move |a| (a, x))).collect();
    let group = FiniteGroup::from_elements(
        &elements,
        |&(a, x), &(b, y)| ((a + powers[x % p] * b) % m, (x + y) % pk),
        |&(a, x)| format!("({a},{x})"),
    )?;
    let mut q = QuasiP {
        p,
        k,
        m,
        alpha,
        group,
        report: QuasiPReport {
            generated_by_p_sylows: false,
            prime_to_p_quotients_trivial: false,
            generator_power_trivial: false,
            subgroups_by_order: Vec::new(),
        },
    };
    let h = &q.group;
    let generated_by_p_sylows = h.generated_by_p_elements(p).order() == h.order();
    let prime_to_p_quotients_trivial = h
        .normal_subgroups()
        .iter()
        .all(|n| (h.order() / n.order()) % p == 0 || n.order() == h.order());
    let g11 = q.index_of(1, 1);
    let generator_power_trivial = h.pow(g11, pk) == h.identity();
    let mut subgroups_by_order = Vec::new();
    for n in 1..=order {
        if order % n != 0 {
            continue;
        }
        let n0 = gcd(n, m);
        let qq = n / n0;
        // A = ⟨m/n0⟩ ≤ Z/m, B = ⟨p^k/q⟩ ≤ Z/p^k
        let a_step = m / n0;
        let b_step = pk / qq;
        let members: Vec<usize> = (0..qq)
            .flat_map(|j| (0..n0).map(move |i| (i * a_step, j * b_step)))
            .map(|(a, x)| q.index_of(a, x))
            .collect();
        let sub = Subgroup::from_elements(members);
        if h.is_subgroup(&sub) && sub.order() == n {
            subgroups_by_order.push((n, sub));
        }
    }
    q.report = QuasiPReport { generated_by_p_sylows, prime_to_p_quotients_trivial, generator_power_trivial, subgroups_by_order };
    Ok(q)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
