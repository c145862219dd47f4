//! Twisted wreath products `A wr_{G0} G = Ind_{G0}^G(A) ⋊ G` and their
//! structural maps.
//!
//! Conventions: `G0` acts on `A` from the right (`a^σ`), `G` acts on
//! `Ind` by `f^σ(τ) = f(στ)`, and `(fσ)(gτ) = f g^{σ⁻¹} στ`. An element of
//! `Ind` is stored by its values on a left transversal `R` of `G0` in `G`
//! (`1 ∈ R`); the value at `rρ` is `f(r)^ρ`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use thiserror::Error;

use crate::group::{FiniteGroup, GroupError, Hom, Subgroup, MAX_ORDER};
use crate::perm::Permutation;

/// Embedding outputs are verified exhaustively up to this order.
pub const EXHAUSTIVE_CHECK_LIMIT: usize = 500;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WreathError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("element {0} is not in the distinguished subgroup")]
    NotInSubgroup(usize),
    #[error("not a splitting: {0}")]
    NotASplitting(String),
    #[error("invalid extension: {0}")]
    InvalidExtension(String),
    #[error("action is not fine: {0}")]
    NotFine(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

/// A right action of a subgroup `G0 ≤ G` on a group `A` by automorphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    acting: Subgroup,
    slot: Vec<usize>,
    auts: Vec<Vec<usize>>,
}

impl GroupAction {
    /// `auts[i][a] = a^σ` for `σ = acting.as_slice()[i]`.
    pub fn new(parent: &FiniteGroup, acting: Subgroup, a: &FiniteGroup, auts: Vec<Vec<usize>>) -> Result<Self, WreathError> {
        if !parent.is_subgroup(&acting) {
            return Err(GroupError::NotASubgroup.into());
        }
        if auts.len() != acting.order() {
            return Err(WreathError::InvalidAction(String::from("one automorphism per element required")));
        }
        let mut slot = vec![NONE; parent.order()];
        for (i, s) in acting.iter().enumerate() {
            slot[s] = i;
        }
        let action = GroupAction { acting, slot, auts };
        action.validate(parent, a)?;
        Ok(action)
    }

    pub fn trivial(parent: &FiniteGroup, acting: Subgroup, a: &FiniteGroup) -> Result<Self, WreathError> {
        let id: Vec<usize> = a.elements().collect();
        let auts = vec![id; acting.order()];
        Self::new(parent, acting, a, auts)
    }

    /// Extends automorphisms given on generators of the acting subgroup,
    /// using `a^{σs} = (a^σ)^s`.
    pub fn from_generators(
        parent: &FiniteGroup,
        gens: &[usize],
        a: &FiniteGroup,
        gen_auts: &[Vec<usize>],
    ) -> Result<Self, WreathError> {
        if gens.len() != gen_auts.len() {
            return Err(WreathError::InvalidAction(String::from("generator count differs from automorphism count")));
        }
        let acting = parent.subgroup_generated(gens);
        let mut table: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        table.insert(parent.identity(), a.elements().collect());
        let mut stack = vec![parent.identity()];
        while let Some(x) = stack.pop() {
            for (&s, aut) in gens.iter().zip(gen_auts) {
                if aut.len() != a.order() {
                    return Err(WreathError::InvalidAction(String::from("automorphism has wrong length")));
                }
                let y = parent.mul(x, s);
                let img: Vec<usize> = table[&x].iter().map(|&v| aut[v]).collect();
                match table.get(&y) {
                    Some(old) if *old != img => {
                        return Err(WreathError::InvalidAction(String::from("generator images violate a relation")))
                    }
                    Some(_) => {}
                    None => {
                        table.insert(y, img);
                        stack.push(y);
                    }
                }
            }
        }
        let auts = acting.iter().map(|s| table.remove(&s).expect("closure")).collect();
        Self::new(parent, acting, a, auts)
    }

    /// Every generator of the acting subgroup acts by inversion (`A` abelian).
    pub fn inversion(parent: &FiniteGroup, gens: &[usize], a: &FiniteGroup) -> Result<Self, WreathError> {
        let inv: Vec<usize> = a.elements().map(|x| a.inv(x)).collect();
        Self::from_generators(parent, gens, a, &vec![inv; gens.len()])
    }

    fn validate(&self, parent: &FiniteGroup, a: &FiniteGroup) -> Result<(), WreathError> {
        for aut in &self.auts {
            if aut.len() != a.order() {
                return Err(WreathError::InvalidAction(String::from("automorphism has wrong length")));
            }
            if Hom::new(a, a, aut.clone()).map(|h| h.is_injective()) != Ok(true) {
                return Err(WreathError::InvalidAction(String::from("image is not an automorphism")));
            }
        }
        for s in self.acting.iter() {
            for t in self.acting.iter() {
                let st = parent.mul(s, t);
                if a.elements().any(|x| self.apply(x, st) != self.apply(self.apply(x, s), t)) {
                    return Err(WreathError::InvalidAction(String::from("not a right action")));
                }
            }
        }
        Ok(())
    }

    pub fn acting(&self) -> &Subgroup {
        &self.acting
    }

    /// `a^σ`; `σ` must lie in the acting subgroup.
    pub fn apply(&self, a: usize, sigma: usize) -> usize {
        self.auts[self.slot[sigma]][a]
    }

    /// The same action seen through an embedding `inclusion` of another
    /// group into the parent, restricted to the preimage of the acting
    /// subgroup.
    pub fn pull_back(&self, source: &FiniteGroup, inclusion: &[usize], a: &FiniteGroup) -> Result<Self, WreathError> {
        let acting = Subgroup::from_sorted(source.elements().filter(|&x| self.acting.contains(inclusion[x])).collect());
        let auts = acting.iter().map(|x| self.auts[self.slot[inclusion[x]]].clone()).collect();
        Self::new(source, acting, a, auts)
    }
}

/// A splitting `i(σ) = a_σ σ` of `A ⋊ G0 → G0`, stored by `σ ↦ a_σ` over
/// the elements of `G0` in increasing index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Splitting {
    g0: Subgroup,
    cocycle: Vec<usize>,
}

impl Splitting {
    pub fn from_fn(g0: &Subgroup, f: impl Fn(usize) -> usize) -> Self {
        Splitting { g0: g0.clone(), cocycle: g0.iter().map(f).collect() }
    }

    pub fn trivial(g0: &Subgroup, a: &FiniteGroup) -> Self {
        Self::from_fn(g0, |_| a.identity())
    }

    /// `a_σ`.
    pub fn value(&self, sigma: usize) -> usize {
        let i = self.g0.as_slice().binary_search(&sigma).expect("σ in G0");
        self.cocycle[i]
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.g0
    }

    /// Checks `a_{στ} = a_σ a_τ^{σ⁻¹}`, i.e. that `i` is a homomorphism.
    fn validate(&self, g: &FiniteGroup, a: &FiniteGroup, action: &GroupAction) -> Result<(), WreathError> {
        if &self.g0 != action.acting() {
            return Err(WreathError::NotASplitting(String::from("defined on the wrong subgroup")));
        }
        for s in self.g0.iter() {
            for t in self.g0.iter() {
                let lhs = self.value(g.mul(s, t));
                let rhs = a.mul(self.value(s), action.apply(self.value(t), g.inv(s)));
                if lhs != rhs {
                    return Err(WreathError::NotASplitting(format!(
                        "not a homomorphism at ({}, {})",
                        g.label(s),
                        g.label(t)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `A ⋊ G0` with `(aσ)(bτ) = a b^{σ⁻¹} στ`.
#[derive(Debug, Clone)]
pub struct SemidirectProduct {
    a: FiniteGroup,
    g: FiniteGroup,
    action: GroupAction,
    a_digits: Digits,
    s_digits: Digits,
    group: FiniteGroup,
}

/// Orders the elements of a group with the identity first so that encoded
/// tuples of identities get index 0.
#[derive(Debug, Clone)]
struct Digits {
    elems: Vec<usize>,
    pos: Vec<usize>,
}

impl Digits {
    fn new(g: &FiniteGroup) -> Self {
        Self::of(g.order(), core::iter::once(g.identity()).chain(g.elements().filter(|&x| x != g.identity())))
    }

    fn of_subgroup(parent: &FiniteGroup, sub: &Subgroup) -> Self {
        let id = parent.identity();
        Self::of(parent.order(), core::iter::once(id).chain(sub.iter().filter(|&x| x != id)))
    }

    fn of(universe: usize, order: impl Iterator<Item = usize>) -> Self {
        let elems: Vec<usize> = order.collect();
        let mut pos = vec![NONE; universe];
        for (i, &x) in elems.iter().enumerate() {
            pos[x] = i;
        }
        Digits { elems, pos }
    }
}

impl SemidirectProduct {
    pub fn new(a: &FiniteGroup, g: &FiniteGroup, action: &GroupAction) -> Result<Self, WreathError> {
        let g0 = action.acting();
        let n = a.order() * g0.order();
        if n > MAX_ORDER {
            return Err(GroupError::OrderTooLarge { order: n, limit: MAX_ORDER }.into());
        }
        let a_digits = Digits::new(a);
        let s_digits = Digits::of_subgroup(g, g0);
        let na = a.order();
        let decode = |i: usize| (a_digits.elems[i % na], s_digits.elems[i / na]);
        let encode = |x: usize, s: usize| s_digits.pos[s] * na + a_digits.pos[x];
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            let (x, s) = decode(i);
            let s_inv = g.inv(s);
            for j in 0..n {
                let (y, t) = decode(j);
                table.push(encode(a.mul(x, action.apply(y, s_inv)), g.mul(s, t)) as u16);
            }
        }
        let labels = (0..n)
            .map(|i| {
                let (x, s) = decode(i);
                format!("({},{})", a.label(x), g.label(s))
            })
            .collect();
        let mut gens: Vec<usize> = a.generators().iter().map(|&x| encode(x, g.identity())).collect();
        gens.extend(g0.iter().map(|s| encode(a.identity(), s)));
        let group = FiniteGroup::from_raw(n, table, labels, gens)?;
        Ok(SemidirectProduct { a: a.clone(), g: g.clone(), action: action.clone(), a_digits, s_digits, group })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn index_of(&self, a: usize, sigma: usize) -> usize {
        self.s_digits.pos[sigma] * self.a.order() + self.a_digits.pos[a]
    }

    /// `(a, σ)` for an element index.
    pub fn element(&self, i: usize) -> (usize, usize) {
        let na = self.a.order();
        (self.a_digits.elems[i % na], self.s_digits.elems[i / na])
    }

    /// The quotient map `aσ ↦ σ`, valued in the parent group's indices.
    pub fn quotient(&self, i: usize) -> usize {
        self.element(i).1
    }

    /// `σ ↦ a_σ σ` as element indices, after checking the homomorphism
    /// property.
    pub fn splitting_images(&self, i: &Splitting) -> Result<Vec<usize>, WreathError> {
        i.validate(&self.g, &self.a, &self.action)?;
        Ok(i.g0.iter().map(|s| self.index_of(i.value(s), s)).collect())
    }
}

/// Element `fσ` of a twisted wreath product: `f` lists the values on the
/// fixed left transversal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WreathElement {
    pub f: Vec<usize>,
    pub sigma: usize,
}

#[derive(Debug, Clone)]
pub struct TwistedWreath {
    a: FiniteGroup,
    g: FiniteGroup,
    action: GroupAction,
    reps: Vec<usize>,
    /// `x = reps[r] ρ` for each `x ∈ G`, as `(r, ρ)`.
    decomposition: Vec<(usize, usize)>,
    a_digits: Digits,
    g_digits: Digits,
    group: FiniteGroup,
}

impl TwistedWreath {
    /// `A wr_{G0} G`, with `G0` the acting subgroup of `action`.
    pub fn new(a: &FiniteGroup, g: &FiniteGroup, action: &GroupAction) -> Result<Self, WreathError> {
        let g0 = action.acting();
        let reps = g.left_transversal(g0);
        let k = reps.len();
        let order = checked_wreath_order(a.order(), k, g.order())?;
        let mut decomposition = vec![(NONE, NONE); g.order()];
        for (r, &x) in reps.iter().enumerate() {
            for rho in g0.iter() {
                decomposition[g.mul(x, rho)] = (r, rho);
            }
        }
        let mut w = TwistedWreath {
            a: a.clone(),
            g: g.clone(),
            action: action.clone(),
            reps,
            decomposition,
            a_digits: Digits::new(a),
            g_digits: Digits::new(g),
            group: FiniteGroup::trivial(),
        };
        let elements: Vec<WreathElement> = (0..order).map(|i| w.decode(i)).collect();
        let mut table = Vec::with_capacity(order * order);
        for x in &elements {
            for y in &elements {
                table.push(w.encode(&w.multiply(x, y)) as u16);
            }
        }
        let labels = elements.iter().map(|x| w.label_of(x)).collect();
        let mut gens: Vec<usize> = g
            .generators()
            .iter()
            .map(|&s| w.encode(&WreathElement { f: vec![a.identity(); k], sigma: s }))
            .collect();
        gens.extend(a.generators().iter().map(|&x| w.encode(&w.f_at_identity(x))));
        w.group = FiniteGroup::from_raw(order, table, labels, gens)?;
        Ok(w)
    }

    /// Plain wreath product `A wr G` (trivial `G0`).
    pub fn plain(a: &FiniteGroup, g: &FiniteGroup) -> Result<Self, WreathError> {
        let action = GroupAction::trivial(g, g.trivial_subgroup(), a)?;
        Self::new(a, g, &action)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn base(&self) -> &FiniteGroup {
        &self.a
    }

    pub fn top(&self) -> &FiniteGroup {
        &self.g
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    /// The fixed left transversal of `G0` in `G`; the identity comes first.
    pub fn transversal(&self) -> &[usize] {
        &self.reps
    }

    pub fn index_of(&self, x: &WreathElement) -> usize {
        self.encode(x)
    }

    pub fn element(&self, i: usize) -> WreathElement {
        self.decode(i)
    }

    /// `f(x)` for any `x ∈ G`.
    pub fn eval(&self, f: &[usize], x: usize) -> usize {
        let (r, rho) = self.decomposition[x];
        self.action.apply(f[r], rho)
    }

    /// `α(fσ) = σ`.
    pub fn quotient(&self) -> Hom {
        Hom::new_unchecked(self.group.elements().map(|i| self.decode(i).sigma).collect())
    }

    /// `Ind_{G0}^G(A)`, the elements with trivial `σ`.
    pub fn induced_module(&self) -> Subgroup {
        let id = self.g.identity();
        Subgroup::from_sorted(self.group.elements().filter(|&i| self.decode(i).sigma == id).collect())
    }

    /// `f_a` with `f_a(σ) = a^σ` on `G0` and `1` elsewhere, as an element of `Ind`.
    pub fn f_at_identity(&self, a: usize) -> WreathElement {
        let mut f = vec![self.a.identity(); self.reps.len()];
        f[0] = a;
        WreathElement { f, sigma: self.g.identity() }
    }

    /// Structural product `(fσ)(gτ) = f g^{σ⁻¹} στ`.
    pub fn multiply(&self, x: &WreathElement, y: &WreathElement) -> WreathElement {
        let s_inv = self.g.inv(x.sigma);
        let f = self
            .reps
            .iter()
            .enumerate()
            .map(|(i, &r)| self.a.mul(x.f[i], self.eval(&y.f, self.g.mul(s_inv, r))))
            .collect();
        WreathElement { f, sigma: self.g.mul(x.sigma, y.sigma) }
    }

    /// `ρ(aσ) = f_a σ` from `A ⋊ G0`.
    pub fn embed_semidirect(&self, sd: &SemidirectProduct, x: usize) -> usize {
        let (a, sigma) = sd.element(x);
        let mut e = self.f_at_identity(a);
        e.sigma = sigma;
        self.encode(&e)
    }

    /// Shapiro map `π(fσ) = f(1)σ` on `Ind ⋊ G0`.
    pub fn shapiro(&self, sd: &SemidirectProduct, w: usize) -> Result<usize, WreathError> {
        let e = self.decode(w);
        if !self.action.acting().contains(e.sigma) {
            return Err(WreathError::NotInSubgroup(e.sigma));
        }
        Ok(sd.index_of(self.eval(&e.f, self.g.identity()), e.sigma))
    }

    /// A splitting `j` of `α` through `Ind ⋊ G0` lifting the splitting `i`
    /// of `A ⋊ G0 → G0`: `j(τ) = f_τ τ` with
    /// `f_τ(σ) = a_{σ⁻¹}⁻¹ a_{σ⁻¹τ}`, where `a` is extended to `G` along the
    /// right cosets `G0 ρ`, `ρ` in `transversal` (default: smallest
    /// representatives).
    pub fn lift_splitting(&self, i: &Splitting, transversal: Option<&[usize]>) -> Result<Hom, WreathError> {
        let g = &self.g;
        let a = &self.a;
        let g0 = self.action.acting();
        i.validate(g, a, &self.action)?;
        let default;
        let right_reps = match transversal {
            Some(t) => t,
            None => {
                default = g.right_transversal(g0);
                &default
            }
        };
        if !right_reps.contains(&g.identity()) || right_reps.len() * g0.order() != g.order() {
            return Err(WreathError::Precondition(String::from("transversal must contain 1 and have (G:G0) elements")));
        }
        // a_σ = a_{σ'} for σ = σ' ρ
        let mut extended = vec![NONE; g.order()];
        for &rho in right_reps {
            for s in g0.iter() {
                let x = g.mul(s, rho);
                if extended[x] != NONE {
                    return Err(WreathError::Precondition(String::from("transversal has two representatives of one coset")));
                }
                extended[x] = i.value(s);
            }
        }
        let images = g
            .elements()
            .map(|tau| {
                let f = self
                    .reps
                    .iter()
                    .map(|&s| {
                        let s_inv = g.inv(s);
                        a.mul(a.inv(extended[s_inv]), extended[g.mul(s_inv, tau)])
                    })
                    .collect();
                self.encode(&WreathElement { f, sigma: tau })
            })
            .collect();
        let j = Hom::new_unchecked(images);
        self.verify_lift(i, &j)?;
        Ok(j)
    }

    fn verify_lift(&self, i: &Splitting, j: &Hom) -> Result<(), WreathError> {
        if !j.is_homomorphism(&self.g, &self.group) {
            return Err(WreathError::Verification(String::from("lifted splitting is not a homomorphism")));
        }
        let alpha = self.quotient();
        if self.g.elements().any(|s| alpha.apply(j.apply(s)) != s) {
            return Err(WreathError::Verification(String::from("lifted splitting is not a section")));
        }
        for s in self.action.acting().iter() {
            let e = self.decode(j.apply(s));
            if e.sigma != s || self.eval(&e.f, self.g.identity()) != i.value(s) {
                return Err(WreathError::Verification(String::from("Shapiro image differs from the splitting")));
            }
        }
        Ok(())
    }

    /// Action on `X × G` induced by a left action of `A` on `X`, for plain
    /// wreath products: `(fσ)(x, τ) = (f(στ) x, στ)`. The point `(x, τ)` is
    /// numbered `τ·|X| + x`.
    pub fn permutation_action(&self, a_perms: &[Permutation]) -> Result<Vec<Permutation>, WreathError> {
        if self.action.acting().order() != 1 {
            return Err(WreathError::Precondition(String::from("permutation action needs a plain wreath product")));
        }
        let n = check_perm_action(&self.a, a_perms)?;
        let perms = self
            .group
            .elements()
            .map(|i| {
                let e = self.decode(i);
                let mut images = vec![0; n * self.g.order()];
                for tau in self.g.elements() {
                    let st = self.g.mul(e.sigma, tau);
                    let p = &a_perms[self.eval(&e.f, st)];
                    for x in 0..n {
                        images[tau * n + x] = st * n + p.apply(x);
                    }
                }
                Permutation::from_images(images).expect("bijection")
            })
            .collect();
        Ok(perms)
    }

    fn encode(&self, x: &WreathElement) -> usize {
        let na = self.a.order();
        let mut code = 0;
        for &v in x.f.iter().rev() {
            code = code * na + self.a_digits.pos[v];
        }
        self.g_digits.pos[x.sigma] * na.pow(self.reps.len() as u32) + code
    }

    fn decode(&self, i: usize) -> WreathElement {
        let na = self.a.order();
        let block = na.pow(self.reps.len() as u32);
        let mut code = i % block;
        let f = (0..self.reps.len())
            .map(|_| {
                let d = code % na;
                code /= na;
                self.a_digits.elems[d]
            })
            .collect();
        WreathElement { f, sigma: self.g_digits.elems[i / block] }
    }

    fn label_of(&self, x: &WreathElement) -> String {
        let mut s = String::from("[");
        for (i, &v) in x.f.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(self.a.label(v));
        }
        let _ = write!(s, "]{}", self.g.label(x.sigma));
        s
    }
}

fn checked_wreath_order(a: usize, k: usize, g: usize) -> Result<usize, WreathError> {
    let too_large = |order| WreathError::Group(GroupError::OrderTooLarge { order, limit: MAX_ORDER });
    let mut order = g;
    for _ in 0..k {
        order = order.checked_mul(a).filter(|&o| o <= MAX_ORDER).ok_or_else(|| too_large(order.saturating_mul(a)))?;
    }
    if order > MAX_ORDER {
        return Err(too_large(order));
    }
    Ok(order)
}

/// Checks that `perms` realizes a left action of `a`; returns the degree.
fn check_perm_action(a: &FiniteGroup, perms: &[Permutation]) -> Result<usize, WreathError> {
    if perms.len() != a.order() {
        return Err(WreathError::InvalidAction(String::from("one permutation per element required")));
    }
    let n = perms[0].degree();
    let ok = perms.iter().all(|p| p.degree() == n)
        && a.elements().all(|x| a.elements().all(|y| perms[a.mul(x, y)] == &perms[x] * &perms[y]));
    if ok {
        Ok(n)
    } else {
        Err(WreathError::InvalidAction(String::from("permutations do not realize the group")))
    }
}

/// An embedding of `G` into a twisted wreath product, with `G` realized as
/// a subgroup of a larger group.
#[derive(Debug, Clone)]
pub struct WreathEmbedding {
    pub source: FiniteGroup,
    /// Index of each source element in the ambient group.
    pub inclusion: Vec<usize>,
    pub target: TwistedWreath,
    pub map: Hom,
}

/// For `G, H0 ≤ H`, `G0 = G ∩ H0` and a splitting `i` of `A ⋊ G0 → G0`
/// (given on `G0` as a subgroup of `H`), an embedding `j: G → A wr_{H0} H`
/// with `π(j(σ)) = i(σ)` on `G0`. It is the lifted splitting into
/// `A wr_{G0} G` followed by `f ↦ f̃`, `f̃(σh) = f(σ)^h` on `G·H0` and `1`
/// elsewhere.
pub fn embed_wreath_into_bigger(
    h: &FiniteGroup,
    g: &Subgroup,
    action: &GroupAction,
    a: &FiniteGroup,
    i: &Splitting,
) -> Result<WreathEmbedding, WreathError> {
    let h0 = action.acting();
    let g0 = g.intersection(h0);
    if !h.is_subgroup(g) {
        return Err(GroupError::NotASubgroup.into());
    }
    if i.subgroup() != &g0 {
        return Err(WreathError::NotASplitting(String::from("splitting must be defined on G ∩ H0")));
    }
    let (small, inclusion) = h.subgroup_as_group(g)?;
    let small_action = action.pull_back(&small, &inclusion, a)?;
    let small_split = Splitting::from_fn(small_action.acting(), |x| i.value(inclusion[x]));
    let inner = TwistedWreath::new(a, &small, &small_action)?;
    let j_inner = inner.lift_splitting(&small_split, None)?;
    let outer = TwistedWreath::new(a, h, action)?;

    // f̃ on the representatives of H/H0
    let extend = |f: &[usize]| -> Vec<usize> {
        outer
            .reps
            .iter()
            .map(|&r| {
                small
                    .elements()
                    .find_map(|x| {
                        let hh = h.mul(h.inv(inclusion[x]), r);
                        h0.contains(hh).then(|| action.apply(inner.eval(f, x), hh))
                    })
                    .unwrap_or(a.identity())
            })
            .collect()
    };
    let images = small
        .elements()
        .map(|x| {
            let e = inner.decode(j_inner.apply(x));
            outer.encode(&WreathElement { f: extend(&e.f), sigma: inclusion[e.sigma] })
        })
        .collect();
    let map = Hom::new_unchecked(images);
    verify_embedding(&small, outer.group(), &map)?;
    for x in small_action.acting().iter() {
        let e = outer.decode(map.apply(x));
        if e.sigma != inclusion[x] || outer.eval(&e.f, h.identity()) != small_split.value(x) {
            return Err(WreathError::Verification(String::from("Shapiro triangle does not commute")));
        }
    }
    Ok(WreathEmbedding { source: small, inclusion, target: outer, map })
}

fn verify_embedding(source: &FiniteGroup, target: &FiniteGroup, map: &Hom) -> Result<(), WreathError> {
    if !map.is_injective() {
        return Err(WreathError::Verification(String::from("map is not injective")));
    }
    if !map.is_homomorphism(source, target) {
        return Err(WreathError::Verification(String::from("map is not a homomorphism")));
    }
    Ok(())
}

/// Embedding of an extension `1 → A → H → G → 1` into `A wr G`.
#[derive(Debug, Clone)]
pub struct ExtensionEmbedding {
    /// The kernel `A` and its inclusion into `H`.
    pub kernel: FiniteGroup,
    pub kernel_inclusion: Vec<usize>,
    pub wreath: TwistedWreath,
    pub map: Hom,
}

/// `i: H → A wr G` with `α ∘ i = π`, where `A = ker π`. With a set-theoretic
/// section `t` of `π` (`t(1) = 1`), `i(h) = f_h π(h)` and
/// `f_h(x) = t(x)⁻¹ h t(π(h)⁻¹ x)`.
pub fn kaloujnine_krasner_embed(h: &FiniteGroup, g: &FiniteGroup, pi: &Hom) -> Result<ExtensionEmbedding, WreathError> {
    if pi.images().len() != h.order() || pi.images().iter().any(|&y| y >= g.order()) {
        return Err(WreathError::InvalidExtension(String::from("projection has the wrong shape")));
    }
    if !pi.is_homomorphism(h, g) {
        return Err(WreathError::InvalidExtension(String::from("projection is not a homomorphism")));
    }
    if !pi.is_surjective(g) {
        return Err(WreathError::InvalidExtension(String::from("projection is not surjective")));
    }
    let kernel_sub = pi.kernel(h, g);
    let (kernel, kernel_inclusion) = h.subgroup_as_group(&kernel_sub)?;
    let mut local = vec![NONE; h.order()];
    for (i, &x) in kernel_inclusion.iter().enumerate() {
        local[x] = i;
    }
    let mut section = vec![NONE; g.order()];
    for x in h.elements() {
        if section[pi.apply(x)] == NONE {
            section[pi.apply(x)] = x;
        }
    }
    section[g.identity()] = h.identity();
    let wreath = TwistedWreath::plain(&kernel, g)?;
    let images = h
        .elements()
        .map(|x| {
            let s = pi.apply(x);
            let s_inv = g.inv(s);
            let f = wreath
                .reps
                .iter()
                .map(|&y| {
                    let v = h.mul(h.inv(section[y]), h.mul(x, section[g.mul(s_inv, y)]));
                    local[v]
                })
                .collect();
            wreath.encode(&WreathElement { f, sigma: s })
        })
        .collect();
    let map = Hom::new_unchecked(images);
    verify_embedding(h, wreath.group(), &map)?;
    if wreath.quotient().after(&map) != *pi {
        return Err(WreathError::Verification(String::from("α ∘ i differs from π")));
    }
    Ok(ExtensionEmbedding { kernel, kernel_inclusion, wreath, map })
}

/// `A wr G` together with its action on `X × G`.
#[derive(Debug, Clone)]
pub struct WreathAction {
    pub wreath: TwistedWreath,
    pub perms: Vec<Permutation>,
}

/// The action of `A wr G` on `X × G` for a left action of `A` on `X`
/// (`a_perms[a]` realizes `a`), after checking the action axioms.
pub fn fine_wreath_action(a: &FiniteGroup, a_perms: &[Permutation], g: &FiniteGroup) -> Result<WreathAction, WreathError> {
    let wreath = TwistedWreath::plain(a, g)?;
    let perms = wreath.permutation_action(a_perms)?;
    let w = wreath.group();
    let pairs: Vec<usize> = if w.order() <= EXHAUSTIVE_CHECK_LIMIT { w.elements().collect() } else { w.generators().to_vec() };
    for x in w.elements() {
        for &y in &pairs {
            if perms[w.mul(x, y)] != &perms[x] * &perms[y] {
                return Err(WreathError::Verification(String::from("action axiom fails")));
            }
        }
    }
    Ok(WreathAction { wreath, perms })
}

/// A fine action of `H` on `X × G` over `β: H → G`.
#[derive(Debug, Clone)]
pub struct FineAction {
    pub points: usize,
    pub perms: Vec<Permutation>,
    pub beta: Hom,
}

impl FineAction {
    /// Checks transitivity, faithfulness and that `h` maps `X × {τ}` onto
    /// `X × {β(h)τ}`. Points are numbered `τ·n + x`.
    pub fn new(h: &FiniteGroup, g: &FiniteGroup, beta: Hom, n: usize, perms: Vec<Permutation>) -> Result<Self, WreathError> {
        if n == 0 || perms.len() != h.order() || perms.iter().any(|p| p.degree() != n * g.order()) {
            return Err(WreathError::NotFine(String::from("one permutation of X × G per element required")));
        }
        if !beta.is_homomorphism(h, g) || !beta.is_surjective(g) {
            return Err(WreathError::NotFine(String::from("β is not an epimorphism")));
        }
        if h.elements().any(|x| h.elements().any(|y| perms[h.mul(x, y)] != &perms[x] * &perms[y])) {
            return Err(WreathError::NotFine(String::from("permutations do not form an action")));
        }
        let distinct: alloc::collections::BTreeSet<&Permutation> = perms.iter().collect();
        if distinct.len() != perms.len() {
            return Err(WreathError::NotFine(String::from("action is not faithful")));
        }
        let pg = crate::permgroup::PermGroup::new(n * g.order(), perms.clone())
            .map_err(|e| WreathError::NotFine(format!("{e}")))?;
        if !pg.is_transitive() {
            return Err(WreathError::NotFine(String::from("action is not transitive")));
        }
        for x in h.elements() {
            let b = beta.apply(x);
            for tau in g.elements() {
                let target = g.mul(b, tau);
                if (0..n).any(|p| perms[x].apply(tau * n + p) / n != target) {
                    return Err(WreathError::NotFine(String::from("fibres are not permuted along β")));
                }
            }
        }
        Ok(FineAction { points: n, perms, beta })
    }

    /// `h_τ ∈ S_X` with `h(x, τ) = (h_τ(x), β(h)τ)`.
    pub fn fibre_permutation(&self, h: usize, tau: usize) -> Permutation {
        let n = self.points;
        let p = &self.perms[h];
        Permutation::from_images((0..n).map(|x| p.apply(tau * n + x) % n).collect()).expect("fibre bijection")
    }
}

/// `ν: H → S_n wr G`, `ν(h) = f_h β(h)` with `f_h(σ) = h_{β(h)⁻¹σ}`.
#[derive(Debug, Clone)]
pub struct FineEmbedding {
    pub wreath: WreathAction,
    pub map: Hom,
}

pub fn embed_fine(h: &FiniteGroup, g: &FiniteGroup, action: &FineAction) -> Result<FineEmbedding, WreathError> {
    let n = action.points;
    let (sn, sn_perms) = FiniteGroup::perm_group_elements(&crate::permgroup::PermGroup::symmetric(n))?;
    let lookup: BTreeMap<&Permutation, usize> = sn_perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let wreath = fine_wreath_action(&sn, &sn_perms, g)?;
    let w = &wreath.wreath;
    let images = h
        .elements()
        .map(|x| {
            let b = action.beta.apply(x);
            let b_inv = g.inv(b);
            let f = w.reps.iter().map(|&s| lookup[&action.fibre_permutation(x, g.mul(b_inv, s))]).collect();
            w.encode(&WreathElement { f, sigma: b })
        })
        .collect();
    let map = Hom::new_unchecked(images);
    verify_embedding(h, w.group(), &map)?;
    if w.quotient().after(&map) != action.beta {
        return Err(WreathError::Verification(String::from("α ∘ ν differs from β")));
    }
    if h.elements().any(|x| wreath.perms[map.apply(x)] != action.perms[x]) {
        return Err(WreathError::Verification(String::from("ν does not respect the action")));
    }
    Ok(FineEmbedding { wreath, map })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3_with_transposition() -> (FiniteGroup, Subgroup) {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let t = s3.find_label("(1 2)").unwrap();
        let g0 = s3.subgroup_generated(&[t]);
        (s3, g0)
    }

    #[test]
    fn orders_match_formula() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let w = TwistedWreath::plain(&z2, &s3).unwrap();
        assert_eq!(w.group().order(), 384);

        let (s3, g0) = s3_with_transposition();
        let act = GroupAction::inversion(&s3, &[s3.find_label("(1 2)").unwrap()], &z3).unwrap();
        assert_eq!(act.acting(), &g0);
        let w = TwistedWreath::new(&z3, &s3, &act).unwrap();
        assert_eq!(w.group().order(), 162);
        assert!(w.group().is_associative());

        let whole = GroupAction::trivial(&s3, s3.whole(), &z3).unwrap();
        let w = TwistedWreath::new(&z3, &s3, &whole).unwrap();
        assert_eq!(w.group().order(), 18);

        let z5 = FiniteGroup::cyclic(5).unwrap();
        assert!(matches!(
            TwistedWreath::plain(&z5, &s3),
            Err(WreathError::Group(GroupError::OrderTooLarge { .. }))
        ));
    }

    #[test]
    fn table_agrees_with_structural_product_and_kernel_is_induced() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let (s3, _) = s3_with_transposition();
        let act = GroupAction::inversion(&s3, &[s3.find_label("(1 2)").unwrap()], &z3).unwrap();
        let w = TwistedWreath::new(&z3, &s3, &act).unwrap();
        let grp = w.group();
        for x in grp.elements() {
            for y in grp.elements() {
                let p = w.multiply(&w.element(x), &w.element(y));
                assert_eq!(w.index_of(&p), grp.mul(x, y));
            }
        }
        let alpha = w.quotient();
        assert!(alpha.is_homomorphism(grp, &s3));
        assert!(alpha.is_surjective(&s3));
        assert_eq!(alpha.kernel(grp, &s3), w.induced_module());
        assert_eq!(w.induced_module().order(), 27);
    }

    #[test]
    fn shapiro_is_a_retraction_of_rho() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let (s3, _) = s3_with_transposition();
        let act = GroupAction::inversion(&s3, &[s3.find_label("(1 2)").unwrap()], &z3).unwrap();
        let w = TwistedWreath::new(&z3, &s3, &act).unwrap();
        let sd = SemidirectProduct::new(&z3, &s3, &act).unwrap();
        assert_eq!(sd.group().order(), 6);
        let rho = Hom::new_unchecked(sd.group().elements().map(|x| w.embed_semidirect(&sd, x)).collect());
        assert!(rho.is_homomorphism(sd.group(), w.group()));
        assert!(rho.is_injective());
        assert_eq!(rho.apply(sd.group().identity()), w.group().identity());
        for x in sd.group().elements() {
            assert_eq!(w.shapiro(&sd, rho.apply(x)).unwrap(), x);
        }
        let outside = w.index_of(&WreathElement { f: vec![0; 3], sigma: s3.find_label("(1 2 3)").unwrap() });
        assert!(matches!(w.shapiro(&sd, outside), Err(WreathError::NotInSubgroup(_))));
    }

    #[test]
    fn lifted_splitting_with_character() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let (s3, g0) = s3_with_transposition();
        let act = GroupAction::trivial(&s3, g0.clone(), &z2).unwrap();
        let w = TwistedWreath::new(&z2, &s3, &act).unwrap();
        let chi = Splitting::from_fn(&g0, |s| usize::from(s != s3.identity()));
        let j = w.lift_splitting(&chi, None).unwrap();
        assert!(j.is_injective());

        let trivial = Splitting::trivial(&g0, &z2);
        let j = w.lift_splitting(&trivial, None).unwrap();
        for s in s3.elements() {
            let e = w.element(j.apply(s));
            assert!(e.f.iter().all(|&v| v == z2.identity()));
            assert_eq!(e.sigma, s);
        }

        // a constant nonzero cocycle is not a homomorphism
        let bad = Splitting::from_fn(&g0, |_| 1);
        assert!(matches!(w.lift_splitting(&bad, None), Err(WreathError::NotASplitting(_))));
    }

    #[test]
    fn embedding_into_larger_wreath() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let (s3, h0) = s3_with_transposition();
        let act = GroupAction::trivial(&s3, h0.clone(), &z2).unwrap();
        // G = A_3, G0 = 1, (H:H0) = 3
        let g = s3.subgroup_generated(&[s3.find_label("(1 2 3)").unwrap()]);
        let i = Splitting::trivial(&s3.trivial_subgroup(), &z2);
        let emb = embed_wreath_into_bigger(&s3, &g, &act, &z2, &i).unwrap();
        assert_eq!(emb.target.group().order(), 48);
        assert!(emb.map.is_injective());

        // degenerate case G = G0 = H0
        let chi = Splitting::from_fn(&h0, |s| usize::from(s != s3.identity()));
        let emb = embed_wreath_into_bigger(&s3, &h0, &act, &z2, &chi).unwrap();
        assert_eq!(emb.source.order(), 2);
    }

    #[test]
    fn extensions_embed_into_plain_wreath() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let pi = Hom::from_generators(&z4, &z2, &[1], &[1]).unwrap();
        let e = kaloujnine_krasner_embed(&z4, &z2, &pi).unwrap();
        assert_eq!(e.wreath.group().order(), 8);
        assert_eq!(e.kernel.order(), 2);

        let s3 = FiniteGroup::symmetric(3).unwrap();
        let sign = Hom::new(&s3, &z2, s3.elements().map(|x| usize::from(s3.element_order(x) == 2)).collect()).unwrap();
        let e = kaloujnine_krasner_embed(&s3, &z2, &sign).unwrap();
        assert_eq!(e.wreath.group().order(), 18);

        let not_onto = Hom::new(&z2, &z4, vec![0, 2]).unwrap();
        assert!(kaloujnine_krasner_embed(&z2, &z4, &not_onto).is_err());
    }

    fn z4_fine_action() -> (FiniteGroup, FiniteGroup, FineAction) {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let beta = Hom::from_generators(&z4, &z2, &[1], &[1]).unwrap();
        // points τ·2 + x; generator: (x=0,τ=0) → (0,1) → (1,0) → (1,1) → (0,0)
        let gen = Permutation::from_images(vec![2, 3, 1, 0]).unwrap();
        let perms: Vec<Permutation> = (0..4).map(|k| gen.pow(k)).collect();
        let fine = FineAction::new(&z4, &z2, beta, 2, perms).unwrap();
        (z4, z2, fine)
    }

    #[test]
    fn permutational_wreath_action() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let (s2, perms) = FiniteGroup::perm_group_elements(&crate::permgroup::PermGroup::symmetric(2)).unwrap();
        let wa = fine_wreath_action(&s2, &perms, &z2).unwrap();
        assert_eq!(wa.perms.len(), 8);
        let pg = crate::permgroup::PermGroup::new(4, wa.perms.clone()).unwrap();
        assert!(pg.is_transitive());
        let distinct: alloc::collections::BTreeSet<_> = wa.perms.iter().collect();
        assert_eq!(distinct.len(), 8);
    }

    #[test]
    fn fine_action_cocycle_and_embedding() {
        let (z4, z2, fine) = z4_fine_action();
        for h1 in z4.elements() {
            for h2 in z4.elements() {
                let g2 = fine.beta.apply(h2);
                for tau in z2.elements() {
                    let lhs = fine.fibre_permutation(z4.mul(h1, h2), tau);
                    let rhs = &fine.fibre_permutation(h1, z2.mul(g2, tau)) * &fine.fibre_permutation(h2, tau);
                    assert_eq!(lhs, rhs);
                }
            }
        }
        let nu = embed_fine(&z4, &z2, &fine).unwrap();
        assert!(nu.map.is_injective());
        assert_eq!(nu.wreath.wreath.group().order(), 8);

        // the regular action of Z/4 on four points, ignoring fibres, is not fine over Z/2
        let shift = Permutation::from_images(vec![1, 2, 3, 0]).unwrap();
        let perms: Vec<Permutation> = (0..4).map(|k| shift.pow(k)).collect();
        assert!(matches!(
            FineAction::new(&z4, &z2, fine.beta.clone(), 2, perms),
            Err(WreathError::NotFine(_))
        ));
    }
}
