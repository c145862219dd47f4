//! Permutation groups given by generators: closure, orbits, blocks,
//! primitivity, and the e-cycle plus transposition test for `S_n`.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use once_cell::race::OnceBox;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::perm::{CycleType, Permutation};

/// Largest degree for which the full closure is computed.
pub const MAX_CLOSURE_DEGREE: usize = 12;

/// Largest number of elements the closure may hold.
pub const MAX_CLOSURE_SIZE: usize = 4_000_000;

/// Random products tried before falling back to the closure.
pub const DEFAULT_SEARCH_BUDGET: usize = 4096;

const SEARCH_SEED: u64 = 0x0b10_c5ee;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermGroupError {
    #[error("closure refused: degree {degree} exceeds {limit}")]
    DegreeTooLarge { degree: usize, limit: usize },
    #[error("closure refused: more than {limit} elements")]
    ClosureTooLarge { limit: usize },
    #[error("group is not transitive")]
    NotTransitive,
    #[error("not a subgroup")]
    NotASubgroup,
    #[error("generator degree {found} differs from group degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("point {0} out of range")]
    PointOutOfRange(usize),
}

pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    closure: OnceBox<Vec<u64>>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let g = PermGroup::new_unchecked(self.degree, self.generators.clone());
        if let Some(c) = self.closure.get() {
            let _ = g.closure.set(Box::new(c.clone()));
        }
        g
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup[{}]<", self.degree)?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermGroupError> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(PermGroupError::DegreeMismatch { expected: degree, found: g.degree() });
        }
        Ok(Self::new_unchecked(degree, generators))
    }

    fn new_unchecked(degree: usize, generators: Vec<Permutation>) -> Self {
        PermGroup { degree, generators, closure: OnceBox::new() }
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new_unchecked(degree, Vec::new())
    }

    /// `S_n` generated by `(1 2)` and `(1 2 ... n)`.
    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[&[1, 2]]).unwrap());
            let long: Vec<usize> = (1..=n).collect();
            gens.push(Permutation::from_cycles(n, &[&long]).unwrap());
        }
        Self::new_unchecked(n, gens)
    }

    pub fn cyclic(n: usize) -> Self {
        let long: Vec<usize> = (1..=n).collect();
        let gens = if n >= 2 { vec![Permutation::from_cycles(n, &[&long]).unwrap()] } else { vec![] };
        Self::new_unchecked(n, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    fn packed_closure(&self) -> Result<&[u64], PermGroupError> {
        if let Some(c) = self.closure.get() {
            return Ok(c);
        }
        if self.degree > MAX_CLOSURE_DEGREE {
            return Err(PermGroupError::DegreeTooLarge { degree: self.degree, limit: MAX_CLOSURE_DEGREE });
        }
        let id = Permutation::identity(self.degree);
        let gens: Vec<&Permutation> = self.generators.iter().filter(|g| !g.is_identity()).collect();
        let mut seen = BTreeSet::new();
        seen.insert(id.pack());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = *g * &x;
                if seen.insert(y.pack()) {
                    if seen.len() > MAX_CLOSURE_SIZE {
                        return Err(PermGroupError::ClosureTooLarge { limit: MAX_CLOSURE_SIZE });
                    }
                    queue.push_back(y);
                }
            }
        }
        let sorted: Vec<u64> = seen.into_iter().collect();
        let _ = self.closure.set(Box::new(sorted));
        Ok(self.closure.get().expect("just set"))
    }

    /// All elements of the generated group, in a fixed order.
    pub fn closure(&self) -> Result<Vec<Permutation>, PermGroupError> {
        let d = self.degree;
        Ok(self.packed_closure()?.iter().map(|&c| Permutation::unpack(c, d)).collect())
    }

    pub fn order(&self) -> Result<u64, PermGroupError> {
        Ok(self.packed_closure()?.len() as u64)
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool, PermGroupError> {
        if p.degree() != self.degree {
            return Ok(false);
        }
        Ok(self.packed_closure()?.binary_search(&p.pack()).is_ok())
    }

    /// Orbit of a point, in discovery order.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut out = vec![point];
        seen[point] = true;
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out
    }

    /// Orbits, each sorted, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree {
            if seen[x] {
                continue;
            }
            let mut o = self.orbit(x);
            for &y in &o {
                seen[y] = true;
            }
            o.sort_unstable();
            out.push(o);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    /// Finest block system in which `a` and `b` share a block.
    pub fn minimal_block(&self, a: usize, b: usize) -> Result<BlockSystem, PermGroupError> {
        let n = self.degree;
        if a >= n || b >= n {
            return Err(PermGroupError::PointOutOfRange(a.max(b)));
        }
        if !self.is_transitive() {
            return Err(PermGroupError::NotTransitive);
        }
        let mut uf = UnionFind::new(n);
        let mut queue = VecDeque::new();
        if uf.union(a, b) {
            queue.push_back((a, b));
        }
        while let Some((x, y)) = queue.pop_front() {
            for g in &self.generators {
                let (gx, gy) = (g.apply(x), g.apply(y));
                if uf.union(gx, gy) {
                    queue.push_back((gx, gy));
                }
            }
        }
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..n {
            classes.entry(uf.find(x)).or_default().push(x);
        }
        let mut blocks: Vec<Vec<usize>> = classes.into_values().collect();
        blocks.sort_by_key(|blk| blk[0]);
        Ok(BlockSystem { blocks })
    }

    pub fn is_primitive(&self) -> Result<bool, PermGroupError> {
        if !self.is_transitive() {
            return Err(PermGroupError::NotTransitive);
        }
        for x in 1..self.degree {
            if self.minimal_block(0, x)?.blocks.len() > 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Searches for an element whose suitable power is a single `len`-cycle:
    /// generators first, then seeded random products, then the closure when
    /// it is small enough to enumerate. Returns the `len`-cycle itself.
    pub fn find_single_cycle(&self, len: usize, budget: usize) -> Option<Permutation> {
        let extract = |x: &Permutation| power_to_single_cycle(x, len);
        if let Some(c) = self.generators.iter().find_map(extract) {
            return Some(c);
        }
        if !self.generators.is_empty() {
            let mut rng = ChaCha8Rng::seed_from_u64(SEARCH_SEED);
            let mut x = Permutation::identity(self.degree);
            for _ in 0..budget {
                let g = &self.generators[rng.gen_range(0..self.generators.len())];
                x = &x * g;
                if let Some(c) = extract(&x) {
                    return Some(c);
                }
            }
        }
        self.closure().ok()?.iter().find_map(extract)
    }

    /// Left action of `self` on the left cosets of `sub`, cosets numbered by
    /// their first appearance in the closure order starting with `sub` itself.
    pub fn action_on_cosets(&self, sub: &PermGroup) -> Result<PermGroup, PermGroupError> {
        if sub.degree != self.degree {
            return Err(PermGroupError::NotASubgroup);
        }
        for g in &sub.generators {
            if !self.contains(g)? {
                return Err(PermGroupError::NotASubgroup);
            }
        }
        let h = sub.closure()?;
        let elements = self.closure()?;
        let coset_key = |g: &Permutation| h.iter().map(|x| (g * x).pack()).min().expect("nonempty");
        let mut index: BTreeMap<u64, usize> = BTreeMap::new();
        index.insert(coset_key(&Permutation::identity(self.degree)), 0);
        let mut reps = vec![Permutation::identity(self.degree)];
        for g in &elements {
            let key = coset_key(g);
            if let alloc::collections::btree_map::Entry::Vacant(v) = index.entry(key) {
                v.insert(reps.len());
                reps.push(g.clone());
            }
        }
        let m = reps.len();
        let gens = self
            .generators
            .iter()
            .map(|s| {
                let images = reps.iter().map(|r| index[&coset_key(&(s * r))]).collect();
                Permutation::from_images(images).expect("coset action is a bijection")
            })
            .collect();
        Ok(PermGroup::new_unchecked(m, gens))
    }
}

/// If `x` has exactly one cycle of length `len` and every other cycle length
/// is prime to `len`, returns the power of `x` that is that single cycle.
pub fn power_to_single_cycle(x: &Permutation, len: usize) -> Option<Permutation> {
    if len < 2 {
        return None;
    }
    let ct = x.cycle_type();
    let mut hits = 0;
    let mut other_lcm = 1usize;
    for &l in ct.parts() {
        if l == len {
            hits += 1;
        } else if l.gcd(&len) != 1 {
            return None;
        } else {
            other_lcm = other_lcm.lcm(&l);
        }
    }
    if hits != 1 {
        return None;
    }
    let y = x.pow(other_lcm);
    debug_assert!(y.cycle_type().is_single_cycle(len));
    Some(y)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges, keeping the smaller root; true if the classes were distinct.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Partition of the points into blocks, each sorted, ordered by smallest point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSystem {
    pub blocks: Vec<Vec<usize>>,
}

impl BlockSystem {
    pub fn is_trivial(&self) -> bool {
        self.blocks.len() <= 1 || self.blocks.iter().all(|b| b.len() == 1)
    }

    /// Every generator maps each block onto a block.
    pub fn is_preserved_by(&self, g: &Permutation) -> bool {
        let n: usize = self.blocks.iter().map(Vec::len).sum();
        let mut block_of = vec![0; n];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                block_of[x] = i;
            }
        }
        self.blocks.iter().all(|b| {
            let target = block_of[g.apply(b[0])];
            b.iter().all(|&x| block_of[g.apply(x)] == target)
        })
    }
}

impl fmt::Display for BlockSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for (j, x) in b.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            f.write_str("}")?;
        }
        f.write_str("}")
    }
}

/// The conditions checked by [`certify_symmetric`], in order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SnClause {
    /// The evidence acts on `n` points.
    Degree,
    /// `gcd(e, n) = 1`.
    CycleLengthCoprime,
    /// `n/2 < e < n`.
    CycleLengthRange,
    Transitive,
    ContainsECycle,
    ContainsTransposition,
}

impl SnClause {
    pub fn name(self) -> &'static str {
        match self {
            SnClause::Degree => "degree",
            SnClause::CycleLengthRange => "cycle_length_range",
            SnClause::CycleLengthCoprime => "cycle_length_coprime",
            SnClause::Transitive => "transitive",
            SnClause::ContainsECycle => "contains_e_cycle",
            SnClause::ContainsTransposition => "contains_transposition",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SnVerdict {
    /// The group is `S_n`; carries the witnessing e-cycle and transposition.
    Accepted { e_cycle: Permutation, transposition: Permutation },
    Rejected(SnClause),
}

impl SnVerdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, SnVerdict::Accepted { .. })
    }
}

/// Decides whether `evidence` is all of `S_n` from a transitive action, an
/// `e`-cycle with `n/2 < e < n`, `gcd(e, n) = 1`, and a transposition,
/// without enumerating the group when witnesses are found early.
pub fn certify_symmetric(n: usize, e: usize, evidence: &PermGroup) -> SnVerdict {
    certify_symmetric_with_budget(n, e, evidence, DEFAULT_SEARCH_BUDGET)
}

pub fn certify_symmetric_with_budget(n: usize, e: usize, evidence: &PermGroup, budget: usize) -> SnVerdict {
    if evidence.degree() != n {
        return SnVerdict::Rejected(SnClause::Degree);
    }
    if e.gcd(&n) != 1 {
        return SnVerdict::Rejected(SnClause::CycleLengthCoprime);
    }
    if !(2 * e > n && e < n) {
        return SnVerdict::Rejected(SnClause::CycleLengthRange);
    }
    if !evidence.is_transitive() {
        return SnVerdict::Rejected(SnClause::Transitive);
    }
    let Some(e_cycle) = evidence.find_single_cycle(e, budget) else {
        return SnVerdict::Rejected(SnClause::ContainsECycle);
    };
    let Some(transposition) = evidence.find_single_cycle(2, budget) else {
        return SnVerdict::Rejected(SnClause::ContainsTransposition);
    };
    SnVerdict::Accepted { e_cycle, transposition }
}

/// Cycle type of a permutation.
pub fn cycle_type(p: &Permutation) -> CycleType {
    p.cycle_type()
}
