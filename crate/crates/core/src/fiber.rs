//! Fiber products `G1 ×_A G2` and fiber powers `G^I_A`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::group::{FiniteGroup, GroupError, Hom, MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiberError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("map {0} is not an epimorphism onto the base")]
    NotSurjective(usize),
    #[error("a fiber power needs at least one copy")]
    NoCopies,
}

/// Compatible tuples `(g_1, .., g_k)` with all `α_i(g_i)` equal, with the
/// coordinate projections and the common map to the base.
#[derive(Debug, Clone)]
pub struct FiberProduct {
    pub group: FiniteGroup,
    pub tuples: Vec<Vec<usize>>,
    pub projections: Vec<Hom>,
    pub to_base: Hom,
}

impl FiberProduct {
    pub fn projection(&self, i: usize) -> &Hom {
        &self.projections[i]
    }

    /// Index of a compatible tuple.
    pub fn index_of(&self, tuple: &[usize]) -> Option<usize> {
        self.tuples.iter().position(|t| t == tuple)
    }
}

/// `G1 ×_A G2` for epimorphisms `α1: G1 → A`, `α2: G2 → A`.
pub fn fiber_product(g1: &FiniteGroup, a1: &Hom, g2: &FiniteGroup, a2: &Hom, base: &FiniteGroup) -> Result<FiberProduct, FiberError> {
    fiber_over(&[(g1, a1), (g2, a2)], base)
}

/// `G^I_A`, the fiber product of `copies` copies of `α: G → A`.
pub fn fiber_power(g: &FiniteGroup, alpha: &Hom, base: &FiniteGroup, copies: usize) -> Result<FiberProduct, FiberError> {
    if copies == 0 {
        return Err(FiberError::NoCopies);
    }
    fiber_over(&vec![(g, alpha); copies], base)
}

fn fiber_over(factors: &[(&FiniteGroup, &Hom)], base: &FiniteGroup) -> Result<FiberProduct, FiberError> {
    for (i, (g, a)) in factors.iter().enumerate() {
        if a.images().len() != g.order() || a.images().iter().any(|&y| y >= base.order()) {
            return Err(GroupError::NotAHomomorphism(format!("map {i} has the wrong shape")).into());
        }
        if !a.is_homomorphism(g, base) {
            return Err(GroupError::NotAHomomorphism(format!("map {i}")).into());
        }
        if !a.is_surjective(base) {
            return Err(FiberError::NotSurjective(i));
        }
    }
    // |A| · Π |G_i|/|A|
    let mut order = base.order();
    for (g, _) in factors {
        order = order
            .checked_mul(g.order() / base.order())
            .filter(|&o| o <= MAX_ORDER)
            .ok_or(GroupError::OrderTooLarge { order: usize::MAX, limit: MAX_ORDER })?;
    }
    let fibres: Vec<Vec<Vec<usize>>> = factors
        .iter()
        .map(|(g, a)| {
            let mut by_image = vec![Vec::new(); base.order()];
            for x in g.elements() {
                by_image[a.apply(x)].push(x);
            }
            by_image
        })
        .collect();
    let mut tuples: Vec<Vec<usize>> = Vec::with_capacity(order);
    let identity: Vec<usize> = factors.iter().map(|(g, _)| g.identity()).collect();
    tuples.push(identity.clone());
    for b in base.elements() {
        let mut partial: Vec<Vec<usize>> = vec![Vec::new()];
        for fibre in &fibres {
            partial = partial
                .into_iter()
                .flat_map(|t| {
                    fibre[b].iter().map(move |&x| {
                        let mut t = t.clone();
                        t.push(x);
                        t
                    })
                })
                .collect();
        }
        tuples.extend(partial.into_iter().filter(|t| *t != identity));
    }
    let group = FiniteGroup::from_elements(
        &tuples,
        |x, y| factors.iter().enumerate().map(|(i, (g, _))| g.mul(x[i], y[i])).collect(),
        |t| {
            let mut s = String::from("(");
            for (i, (g, _)) in factors.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                s.push_str(g.label(t[i]));
            }
            s.push(')');
            s
        },
    )?;
    let projections = (0..factors.len())
        .map(|i| Hom::new_unchecked(tuples.iter().map(|t| t[i]).collect()))
        .collect();
    let (_, a0) = factors[0];
    let to_base = Hom::new_unchecked(tuples.iter().map(|t| a0.apply(t[0])).collect());
    Ok(FiberProduct { group, tuples, projections, to_base })
}
