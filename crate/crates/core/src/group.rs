//! Finite groups as multiplication tables over element indices, with
//! homomorphisms and subgroup utilities.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::perm::Permutation;
use crate::permgroup::{PermGroup, PermGroupError};

/// Largest group order any constructor accepts.
pub const MAX_ORDER: usize = 5000;

/// Tables up to this order get the full `n^3` associativity check.
pub const FULL_ASSOCIATIVITY_LIMIT: usize = 500;

/// Tables up to this order get a generator-based associativity check.
pub const AXIOM_CHECK_LIMIT: usize = 2000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group order {order} exceeds the guard {limit}")]
    OrderTooLarge { order: usize, limit: usize },
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("not a subgroup")]
    NotASubgroup,
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error(transparent)]
    Perm(#[from] PermGroupError),
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    identity: usize,
    table: Vec<u16>,
    inverses: Vec<u16>,
    labels: Vec<String>,
    generators: Vec<usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order)
    }
}

fn check_order(order: usize) -> Result<(), GroupError> {
    if order > MAX_ORDER {
        Err(GroupError::OrderTooLarge { order, limit: MAX_ORDER })
    } else {
        Ok(())
    }
}

impl FiniteGroup {
    /// Builds from a multiplication table `rows[a][b] = a*b`, verifying the
    /// group axioms.
    pub fn from_table(rows: &[Vec<usize>], labels: Option<Vec<String>>) -> Result<Self, GroupError> {
        let n = rows.len();
        check_order(n)?;
        if n == 0 {
            return Err(GroupError::NotAGroup(String::from("empty table")));
        }
        let mut table = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(GroupError::NotAGroup(String::from("table is not square")));
            }
            for &x in row {
                if x >= n {
                    return Err(GroupError::NotAGroup(format!("entry {x} out of range")));
                }
                table.push(x as u16);
            }
        }
        let labels = match labels {
            Some(l) if l.len() == n => l,
            Some(_) => return Err(GroupError::NotAGroup(String::from("label count differs from order"))),
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        let g = Self::assemble(n, table, labels, None)?;
        if n <= FULL_ASSOCIATIVITY_LIMIT && !g.is_associative() {
            return Err(GroupError::NotAGroup(String::from("multiplication is not associative")));
        }
        Ok(g)
    }

    /// Builds the table of `elements` (which must be closed under `mul`)
    /// with `elements[0]` as identity.
    pub fn from_elements<T, M, L>(elements: &[T], mul: M, label: L) -> Result<Self, GroupError>
    where
        T: Ord + Clone,
        M: Fn(&T, &T) -> T,
        L: Fn(&T) -> String,
    {
        let n = elements.len();
        check_order(n)?;
        let index: BTreeMap<&T, usize> = elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
        if index.len() != n {
            return Err(GroupError::NotAGroup(String::from("repeated elements")));
        }
        let mut table = Vec::with_capacity(n * n);
        for a in elements {
            for b in elements {
                let c = mul(a, b);
                let &i = index
                    .get(&c)
                    .ok_or_else(|| GroupError::NotAGroup(String::from("element set not closed")))?;
                table.push(i as u16);
            }
        }
        let labels = elements.iter().map(label).collect();
        Self::assemble(n, table, labels, None)
    }

    /// Closure of `generators` under `mul`, in breadth-first order from the
    /// identity. Returns the group and its elements.
    pub fn generate<T, M, L>(identity: T, generators: &[T], mul: M, label: L) -> Result<(Self, Vec<T>), GroupError>
    where
        T: Ord + Clone,
        M: Fn(&T, &T) -> T,
        L: Fn(&T) -> String,
    {
        let mut elements = vec![identity.clone()];
        let mut seen: BTreeSet<T> = BTreeSet::new();
        seen.insert(identity);
        let mut i = 0;
        while i < elements.len() {
            for g in generators {
                let y = mul(&elements[i], g);
                if seen.insert(y.clone()) {
                    elements.push(y);
                    check_order(elements.len())?;
                }
            }
            i += 1;
        }
        let g = Self::from_elements(&elements, &mul, label)?;
        let gen_idx: Vec<usize> = generators
            .iter()
            .map(|x| elements.iter().position(|y| y == x).expect("generator in closure"))
            .collect();
        Ok((g.with_generators(gen_idx), elements))
    }

    fn assemble(n: usize, table: Vec<u16>, labels: Vec<String>, gens: Option<Vec<usize>>) -> Result<Self, GroupError> {
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] as usize == x && table[x * n + e] as usize == x))
            .ok_or_else(|| GroupError::NotAGroup(String::from("no identity")))?;
        let mut inverses = vec![u16::MAX; n];
        for a in 0..n {
            let b = (0..n)
                .find(|&b| table[a * n + b] as usize == identity)
                .ok_or_else(|| GroupError::NotAGroup(format!("element {a} has no right inverse")))?;
            if table[b * n + a] as usize != identity {
                return Err(GroupError::NotAGroup(format!("element {a} has no two-sided inverse")));
            }
            inverses[a] = b as u16;
        }
        // Latin square property
        for a in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                let r = table[a * n + b] as usize;
                let c = table[b * n + a] as usize;
                if row[r] || col[c] {
                    return Err(GroupError::NotAGroup(String::from("table is not a Latin square")));
                }
                row[r] = true;
                col[c] = true;
            }
        }
        let mut g = FiniteGroup { order: n, identity, table, inverses, labels, generators: Vec::new() };
        g.generators = match gens {
            Some(v) => v,
            None => g.greedy_generators(),
        };
        if n <= AXIOM_CHECK_LIMIT && !g.light_associativity() {
            return Err(GroupError::NotAGroup(String::from("multiplication is not associative")));
        }
        Ok(g)
    }

    /// Builds from a flat row-major table produced by a structural
    /// multiplication; the cheap axiom checks still run.
    pub(crate) fn from_raw(order: usize, table: Vec<u16>, labels: Vec<String>, gens: Vec<usize>) -> Result<Self, GroupError> {
        check_order(order)?;
        let g = Self::assemble(order, table, labels, None)?;
        Ok(g.with_generators(gens))
    }

    /// A subgroup as a group in its own right, with the map from its
    /// indices back to this group's indices.
    pub fn subgroup_as_group(&self, sub: &Subgroup) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        if !self.is_subgroup(sub) {
            return Err(GroupError::NotASubgroup);
        }
        let mut elements: Vec<usize> = sub.iter().collect();
        let pos = elements.iter().position(|&x| x == self.identity).unwrap();
        elements.swap(0, pos);
        let g = Self::from_elements(&elements, |&a, &b| self.mul(a, b), |&a| self.labels[a].clone())?;
        Ok((g, elements))
    }

    /// Permutation group as an abstract group, with the permutation realizing
    /// each element.
    pub fn perm_group_elements(pg: &PermGroup) -> Result<(Self, Vec<Permutation>), GroupError> {
        let id = Permutation::identity(pg.degree());
        Self::generate(id, pg.generators(), |a, b| a * b, |p| p.to_string())
    }

    fn with_generators(mut self, gens: Vec<usize>) -> Self {
        let gens: Vec<usize> = gens.into_iter().filter(|&g| g != self.identity).collect();
        if self.subgroup_generated(&gens).order() == self.order {
            self.generators = gens;
        }
        self
    }

    /// Generating set chosen greedily in index order.
    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut reached = self.right_closure(&gens);
        for x in 0..self.order {
            if !reached[x] {
                gens.push(x);
                reached = self.right_closure(&gens);
            }
        }
        gens
    }

    /// Elements reachable from the identity by right multiplication.
    fn right_closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// Light's test: `(x g) y = x (g y)` for all `x`, `y` and generators `g`.
    fn light_associativity(&self) -> bool {
        let n = self.order;
        self.generators.iter().all(|&g| {
            (0..n).all(|x| {
                let xg = self.mul(x, g);
                (0..n).all(|y| self.mul(xg, y) == self.mul(x, self.mul(g, y)))
            })
        })
    }

    /// Exhaustive associativity over all triples.
    pub fn is_associative(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.mul(a, b);
                (0..n).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
            })
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1).expect("order 1")
    }

    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        check_order(n)?;
        if n == 0 {
            return Err(GroupError::NotAGroup(String::from("order 0")));
        }
        let elements: Vec<usize> = (0..n).collect();
        let g = Self::from_elements(&elements, |a, b| (a + b) % n, |a| a.to_string())?;
        Ok(g.with_generators(vec![1 % n]))
    }

    /// `S_n` acting on `{1, .., n}`, elements labelled in cycle notation.
    pub fn symmetric(n: usize) -> Result<Self, GroupError> {
        Self::from_perm_group(&PermGroup::symmetric(n))
    }

    /// Dihedral group of order `2n`: rotations `r^k` then reflections `s r^k`.
    pub fn dihedral(n: usize) -> Result<Self, GroupError> {
        check_order(2 * n)?;
        if n == 0 {
            return Err(GroupError::NotAGroup(String::from("order 0")));
        }
        // (s, k) stands for s^s r^k; r^k s = s r^-k
        let elements: Vec<(usize, usize)> = (0..2).flat_map(|s| (0..n).map(move |k| (s, k))).collect();
        let mul = |&(s1, k1): &(usize, usize), &(s2, k2): &(usize, usize)| {
            let k1 = if s2 == 1 { (n - k1) % n } else { k1 };
            ((s1 + s2) % 2, (k1 + k2) % n)
        };
        let label = |&(s, k): &(usize, usize)| match (s, k) {
            (0, 0) => String::from("1"),
            (0, k) => format!("r{k}"),
            (_, 0) => String::from("s"),
            (_, k) => format!("sr{k}"),
        };
        let g = Self::from_elements(&elements, mul, label)?;
        Ok(g.with_generators(vec![1 % n, n]))
    }

    /// Direct product; element `(g, h)` has index `g * |H| + h`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<Self, GroupError> {
        let n = g.order * h.order;
        check_order(n)?;
        let elements: Vec<(usize, usize)> = (0..g.order).flat_map(|a| (0..h.order).map(move |b| (a, b))).collect();
        // identity must come first
        let mut elements = elements;
        let id = (g.identity, h.identity);
        let pos = elements.iter().position(|x| *x == id).unwrap();
        elements.swap(0, pos);
        let prod = Self::from_elements(
            &elements,
            |&(a1, b1), &(a2, b2)| (g.mul(a1, a2), h.mul(b1, b2)),
            |&(a, b)| format!("({},{})", g.label(a), h.label(b)),
        )?;
        Ok(prod)
    }

    pub fn from_perm_group(pg: &PermGroup) -> Result<Self, GroupError> {
        let id = Permutation::identity(pg.degree());
        let (g, _) = Self::generate(id, pg.generators(), |a, b| a * b, |p| p.to_string())?;
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    /// `a^-1 b a`.
    pub fn conj(&self, b: usize, a: usize) -> usize {
        self.mul(self.inv(a), self.mul(b, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.order
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find_label(&self, s: &str) -> Result<usize, GroupError> {
        let s = s.trim();
        self.labels
            .iter()
            .position(|l| l == s)
            .ok_or_else(|| GroupError::UnknownElement(s.to_string()))
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&a| self.generators.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        let seen = self.right_closure(gens);
        Subgroup::from_sorted((0..self.order).filter(|&x| seen[x]).collect())
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted(self.elements().collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted(vec![self.identity])
    }

    /// True when `set` is closed, contains the identity and is nonempty.
    pub fn is_subgroup(&self, set: &Subgroup) -> bool {
        set.contains(self.identity)
            && set.iter().all(|a| set.iter().all(|b| set.contains(self.mul(a, self.inv(b)))))
    }

    pub fn is_normal(&self, sub: &Subgroup) -> bool {
        sub.iter()
            .all(|x| self.generators.iter().all(|&g| sub.contains(self.conj(x, g))))
    }

    pub fn normal_closure(&self, set: &[usize]) -> Subgroup {
        let mut gens: Vec<usize> = set.to_vec();
        loop {
            let sub = self.subgroup_generated(&gens);
            let extra: Vec<usize> = sub
                .iter()
                .flat_map(|x| self.generators.iter().map(move |&g| (x, g)))
                .map(|(x, g)| self.conj(x, g))
                .filter(|y| !sub.contains(*y))
                .collect();
            if extra.is_empty() {
                return sub;
            }
            gens.extend(extra);
        }
    }

    /// Representatives of the left cosets `rH`, identity first, each the
    /// smallest index in its coset.
    pub fn left_transversal(&self, sub: &Subgroup) -> Vec<usize> {
        self.transversal(sub, |x, h| self.mul(x, h))
    }

    /// Representatives of the right cosets `Hr`, identity first, each the
    /// smallest index in its coset.
    pub fn right_transversal(&self, sub: &Subgroup) -> Vec<usize> {
        self.transversal(sub, |x, h| self.mul(h, x))
    }

    fn transversal(&self, sub: &Subgroup, act: impl Fn(usize, usize) -> usize) -> Vec<usize> {
        let mut covered = vec![false; self.order];
        let mut reps = vec![self.identity];
        for h in sub.iter() {
            covered[act(self.identity, h)] = true;
        }
        for x in 0..self.order {
            if covered[x] {
                continue;
            }
            reps.push(x);
            for h in sub.iter() {
                covered[act(x, h)] = true;
            }
        }
        reps
    }

    /// All subgroups, by joining cyclic subgroups until nothing new appears.
    /// Intended for small orders.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut found: BTreeSet<Subgroup> = self.elements().map(|x| self.subgroup_generated(&[x])).collect();
        let cyclic: Vec<Subgroup> = found.iter().cloned().collect();
        let mut frontier: Vec<Subgroup> = cyclic.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                for c in &cyclic {
                    if c.is_subset(s) {
                        continue;
                    }
                    let mut gens: Vec<usize> = s.iter().collect();
                    gens.extend(c.iter());
                    let j = self.subgroup_generated(&gens);
                    if found.insert(j.clone()) {
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        let mut all: Vec<Subgroup> = found.into_iter().collect();
        all.sort_by_key(|s| (s.order(), s.elements.clone()));
        all
    }

    /// All normal subgroups, as joins of normal closures of single elements.
    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        let mut found: BTreeSet<Subgroup> = self.elements().map(|x| self.normal_closure(&[x])).collect();
        let base: Vec<Subgroup> = found.iter().cloned().collect();
        let mut frontier = base.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                for b in &base {
                    if b.is_subset(s) {
                        continue;
                    }
                    let mut gens: Vec<usize> = s.iter().collect();
                    gens.extend(b.iter());
                    let j = self.subgroup_generated(&gens);
                    if found.insert(j.clone()) {
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        let mut all: Vec<Subgroup> = found.into_iter().collect();
        all.sort_by_key(|s| (s.order(), s.elements.clone()));
        all
    }

    /// Subgroup generated by the elements of `p`-power order.
    pub fn generated_by_p_elements(&self, p: usize) -> Subgroup {
        let gens: Vec<usize> = self.elements().filter(|&x| is_power_of(self.element_order(x), p)).collect();
        self.subgroup_generated(&gens)
    }

    /// Regular permutation representation `x -> g x`.
    pub fn left_regular(&self, g: usize) -> Permutation {
        Permutation::from_images(self.elements().map(|x| self.mul(g, x)).collect()).expect("Latin row")
    }
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n > 1 && n % p == 0 {
        n /= p;
    }
    n == 1
}

/// A subset of a group's element indices, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn from_sorted(elements: Vec<usize>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Subgroup { elements }
    }

    pub fn from_elements(mut elements: Vec<usize>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        Subgroup { elements }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.elements.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.elements
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup { elements: self.elements.iter().copied().filter(|&x| other.contains(x)).collect() }
    }
}

/// A map between finite groups given by the image of every element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hom {
    images: Vec<usize>,
}

impl Hom {
    /// Wraps a full image table after checking it is a homomorphism.
    pub fn new(source: &FiniteGroup, target: &FiniteGroup, images: Vec<usize>) -> Result<Self, GroupError> {
        if images.len() != source.order() {
            return Err(GroupError::NotAHomomorphism(String::from("image table has wrong length")));
        }
        if images.iter().any(|&y| y >= target.order()) {
            return Err(GroupError::NotAHomomorphism(String::from("image out of range")));
        }
        let h = Hom { images };
        if !h.is_homomorphism(source, target) {
            return Err(GroupError::NotAHomomorphism(String::from("products are not preserved")));
        }
        Ok(h)
    }

    /// Wraps an image table without checking.
    pub fn new_unchecked(images: Vec<usize>) -> Self {
        Hom { images }
    }

    /// Extends images of `gens` (which must generate `source`) to a
    /// homomorphism, or `None` if the images violate a relation.
    pub fn from_generators(
        source: &FiniteGroup,
        target: &FiniteGroup,
        gens: &[usize],
        gen_images: &[usize],
    ) -> Option<Self> {
        const UNSET: usize = usize::MAX;
        let mut images = vec![UNSET; source.order()];
        images[source.identity()] = target.identity();
        let mut stack = vec![source.identity()];
        // assign along the Cayley graph, then check every edge
        while let Some(x) = stack.pop() {
            for (&s, &t) in gens.iter().zip(gen_images) {
                let y = source.mul(x, s);
                let v = target.mul(images[x], t);
                if images[y] == UNSET {
                    images[y] = v;
                    stack.push(y);
                } else if images[y] != v {
                    return None;
                }
            }
        }
        if images.contains(&UNSET) {
            return None;
        }
        Some(Hom { images })
    }

    /// Identity map of a group.
    pub fn identity(g: &FiniteGroup) -> Self {
        Hom { images: g.elements().collect() }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self` after `first`: `x -> self(first(x))`.
    pub fn after(&self, first: &Hom) -> Hom {
        Hom { images: first.images.iter().map(|&y| self.images[y]).collect() }
    }

    pub fn is_homomorphism(&self, source: &FiniteGroup, target: &FiniteGroup) -> bool {
        source.elements().all(|a| {
            source
                .elements()
                .all(|b| self.images[source.mul(a, b)] == target.mul(self.images[a], self.images[b]))
        })
    }

    pub fn kernel(&self, source: &FiniteGroup, target: &FiniteGroup) -> Subgroup {
        Subgroup::from_sorted(source.elements().filter(|&x| self.images[x] == target.identity()).collect())
    }

    pub fn image(&self) -> Subgroup {
        Subgroup::from_elements(self.images.clone())
    }

    pub fn is_injective(&self) -> bool {
        self.image().order() == self.images.len()
    }

    pub fn is_surjective(&self, target: &FiniteGroup) -> bool {
        self.image().order() == target.order()
    }

    /// Preimage of a subgroup of the target.
    pub fn preimage(&self, sub: &Subgroup) -> Subgroup {
        Subgroup::from_sorted((0..self.images.len()).filter(|&x| sub.contains(self.images[x])).collect())
    }
}
