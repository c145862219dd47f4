//! Permutations of `{0, .., n-1}`, printed and parsed in 1-based cycle
//! notation such as `(1 2 3)(4 5)`.
//!
//! Products follow function composition: `a * b` applies `b` first.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermParseError {
    #[error("cannot parse cycle notation `{input}`: {reason}")]
    Syntax { input: String, reason: String },
    #[error("point {point} exceeds degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} repeated inside a cycle")]
    RepeatedPoint(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("images do not form a permutation of 0..{0}")]
pub struct NotABijection(pub usize);

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// Builds from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, NotABijection> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(NotABijection(n));
            }
            seen[x] = true;
        }
        Ok(Permutation { images: images.into_iter().map(|x| x as u32).collect() })
    }

    /// Builds from 1-based cycles. The cycles are multiplied right to left,
    /// so overlapping cycles are allowed.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, PermParseError> {
        let mut p = Permutation::identity(degree);
        for cyc in cycles.iter().rev() {
            let c = Self::single_cycle(degree, cyc)?;
            p = &c * &p;
        }
        Ok(p)
    }

    fn single_cycle(degree: usize, cyc: &[usize]) -> Result<Self, PermParseError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = Vec::with_capacity(cyc.len());
        for &pt in cyc {
            if pt == 0 || pt > degree {
                return Err(PermParseError::PointOutOfRange { point: pt, degree });
            }
            if seen.contains(&pt) {
                return Err(PermParseError::RepeatedPoint(pt));
            }
            seen.push(pt);
        }
        for (i, &pt) in cyc.iter().enumerate() {
            let next = cyc[(i + 1) % cyc.len()];
            images[pt - 1] = (next - 1) as u32;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Permutation::identity(self.degree());
        for (i, slot) in out.images.iter_mut().enumerate() {
            let mut x = i;
            // walk k mod cycle length steps
            let mut len = 1;
            let mut y = self.apply(i);
            while y != i {
                y = self.apply(y);
                len += 1;
            }
            for _ in 0..k % len {
                x = self.apply(x);
            }
            *slot = x as u32;
        }
        out
    }

    /// Extends to a larger degree by fixing the new points.
    pub fn extend_to(&self, degree: usize) -> Self {
        let mut images = self.images.clone();
        images.extend(self.images.len() as u32..degree as u32);
        Permutation { images }
    }

    /// Disjoint cycles of length at least 2, 0-based, each starting at its
    /// smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            parts.push(len);
        }
        CycleType::new(parts)
    }

    pub fn order(&self) -> usize {
        self.cycle_type().parts().iter().fold(1, |acc, &l| acc.lcm(&l))
    }

    /// Parses cycle notation, inferring the degree from the largest point.
    pub fn parse(input: &str) -> Result<Self, PermParseError> {
        let cycles = parse_cycles(input)?;
        let degree = cycles.iter().flatten().copied().max().unwrap_or(0);
        Self::from_parsed(degree, &cycles)
    }

    /// Parses cycle notation for a fixed degree.
    pub fn parse_with_degree(input: &str, degree: usize) -> Result<Self, PermParseError> {
        let cycles = parse_cycles(input)?;
        Self::from_parsed(degree, &cycles)
    }

    fn from_parsed(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermParseError> {
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Self::from_cycles(degree, &refs)
    }

    /// Packs a permutation of degree at most 16 into 4 bits per point.
    pub(crate) fn pack(&self) -> u64 {
        debug_assert!(self.degree() <= 16);
        self.images
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &x)| acc | ((x as u64) << (4 * i)))
    }

    pub(crate) fn unpack(code: u64, degree: usize) -> Self {
        Permutation {
            images: (0..degree).map(|i| ((code >> (4 * i)) & 0xf) as u32).collect(),
        }
    }
}

fn parse_cycles(input: &str) -> Result<Vec<Vec<usize>>, PermParseError> {
    let err = |reason: &str| PermParseError::Syntax {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let mut cycles = Vec::new();
    let mut rest = input.trim();
    if rest.is_empty() {
        return Err(err("empty input"));
    }
    while !rest.is_empty() {
        rest = rest
            .strip_prefix('(')
            .ok_or_else(|| err("expected `(`"))?;
        let close = rest.find(')').ok_or_else(|| err("unclosed `(`"))?;
        let body = &rest[..close];
        if body.contains('(') {
            return Err(err("nested `(`"));
        }
        let mut cyc = Vec::new();
        for tok in body.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let pt: usize = tok.parse().map_err(|_| err("expected a positive integer"))?;
            cyc.push(pt);
        }
        if !cyc.is_empty() {
            cycles.push(cyc);
        }
        rest = rest[close + 1..].trim_start();
    }
    Ok(cycles)
}

impl Mul<&Permutation> for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch in product");
        Permutation {
            images: rhs.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }
}

impl Mul for Permutation {
    type Output = Permutation;
    fn mul(self, rhs: Permutation) -> Permutation {
        &self * &rhs
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cyc in cycles {
            f.write_str("(")?;
            for (i, x) in cyc.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}[{}]", self.degree())
    }
}

/// Multiset of cycle lengths, stored in decreasing order and including
/// fixed points.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    /// Type `(len, 1, ..., 1)` of a single `len`-cycle in degree `degree`.
    pub fn single_cycle(len: usize, degree: usize) -> Self {
        let mut parts = vec![len];
        parts.extend(core::iter::repeat(1).take(degree.saturating_sub(len)));
        CycleType::new(parts)
    }

    pub fn is_single_cycle(&self, len: usize) -> bool {
        self.0.first() == Some(&len) && self.0[1..].iter().all(|&x| x == 1)
    }

    /// Parses space-separated parts such as `2 1 1 1`.
    pub fn parse(s: &str) -> Option<Self> {
        let parts: Option<Vec<usize>> = s.split_whitespace().map(|t| t.parse().ok()).collect();
        let parts = parts?;
        if parts.is_empty() || parts.contains(&0) {
            return None;
        }
        Some(CycleType::new(parts))
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}
