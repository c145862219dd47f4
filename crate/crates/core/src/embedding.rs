//! Finite embedding problems `(μ: Γ → A, α: G → A)`, double embedding
//! problems, and brute-force search for their solutions.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::factor::factor;
use crate::field::PrimeField;
use crate::fiber::{fiber_product, FiberError, FiberProduct};
use crate::group::{FiniteGroup, GroupError, Hom, Subgroup};
use crate::perm::{CycleType, Permutation};
use crate::permgroup::PermGroup;
use crate::poly::{is_separable, Polynomial};
use crate::wreath::TwistedWreath;

/// Default cap on the number of generator-image assignments tried.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Largest family accepted by [`check_independence`].
pub const MAX_INDEPENDENT_FAMILY: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Fiber(#[from] FiberError),
    #[error("{0} is not an epimorphism")]
    NotSurjective(&'static str),
    #[error("search needs {candidates} assignments, budget is {budget}")]
    BudgetExceeded { candidates: u128, budget: u64 },
    #[error("problem has no distinguished subgroup")]
    MissingSubgroup,
    #[error("incompatible double embedding problem: {0}")]
    Incompatible(String),
    #[error("ker μ' is not contained in ker μ")]
    KernelCondition,
    #[error("family of {count} solutions exceeds the limit {limit}")]
    FamilyTooLarge { count: usize, limit: usize },
    #[error("not a solution: {0}")]
    NotASolution(String),
    #[error("polynomial is not separable")]
    NotSeparable,
    #[error("polynomial is constant")]
    ConstantPolynomial,
}

fn check_epi(src: &FiniteGroup, dst: &FiniteGroup, map: &Hom, name: &'static str) -> Result<(), EmbeddingError> {
    if map.images().len() != src.order() || map.images().iter().any(|&y| y >= dst.order()) {
        return Err(GroupError::NotAHomomorphism(format!("{name} has the wrong shape")).into());
    }
    if !map.is_homomorphism(src, dst) {
        return Err(GroupError::NotAHomomorphism(String::from(name)).into());
    }
    if !map.is_surjective(dst) {
        return Err(EmbeddingError::NotSurjective(name));
    }
    Ok(())
}

fn check_mono(src: &FiniteGroup, dst: &FiniteGroup, map: &Hom, name: &str) -> Result<(), EmbeddingError> {
    let shape_ok = map.images().len() == src.order() && map.images().iter().all(|&y| y < dst.order());
    if !shape_ok || !map.is_homomorphism(src, dst) || !map.is_injective() {
        return Err(EmbeddingError::Incompatible(format!("{name} is not an injective homomorphism")));
    }
    Ok(())
}

/// `(μ: Γ → A, α: G → A)` with an optional distinguished subgroup `G0 ≤ G`.
#[derive(Debug, Clone)]
pub struct EmbeddingProblem {
    pub gamma: FiniteGroup,
    pub mu: Hom,
    pub a: FiniteGroup,
    pub g: FiniteGroup,
    pub alpha: Hom,
    pub distinguished: Option<Subgroup>,
}

impl EmbeddingProblem {
    pub fn new(gamma: FiniteGroup, mu: Hom, a: FiniteGroup, g: FiniteGroup, alpha: Hom) -> Result<Self, EmbeddingError> {
        check_epi(&gamma, &a, &mu, "μ")?;
        check_epi(&g, &a, &alpha, "α")?;
        Ok(EmbeddingProblem { gamma, mu, a, g, alpha, distinguished: None })
    }

    pub fn with_distinguished(mut self, g0: Subgroup) -> Result<Self, EmbeddingError> {
        if !self.g.is_subgroup(&g0) {
            return Err(GroupError::NotASubgroup.into());
        }
        self.distinguished = Some(g0);
        Ok(self)
    }

    /// `α ∘ θ = μ`.
    pub fn is_weak_solution(&self, theta: &Hom) -> bool {
        theta.images().len() == self.gamma.order()
            && theta.is_homomorphism(&self.gamma, &self.g)
            && self.alpha.after(theta) == self.mu
    }

    /// For each generator of `Γ`, the elements of `G` over its image in `A`.
    fn candidates(&self) -> Vec<Vec<usize>> {
        self.gamma
            .generators()
            .iter()
            .map(|&s| self.g.elements().filter(|&x| self.alpha.apply(x) == self.mu.apply(s)).collect())
            .collect()
    }

    /// Number of generator-image assignments an exhaustive search visits.
    pub fn search_size(&self) -> u128 {
        self.candidates().iter().map(|c| c.len() as u128).product()
    }

    /// Possible images of the first generator of `Γ`; the search can be
    /// split along them.
    pub fn first_generator_images(&self) -> Vec<usize> {
        self.candidates().into_iter().next().unwrap_or_else(|| vec![self.g.identity()])
    }

    /// Weak solutions sending the first generator of `Γ` to `first`, in
    /// enumeration order.
    pub fn weak_solutions_with_first_image(&self, first: usize) -> Vec<Solution> {
        let gens = self.gamma.generators();
        let mut cands = self.candidates();
        if gens.is_empty() {
            return Hom::from_generators(&self.gamma, &self.g, &[], &[]).map(|t| self.solution(t)).into_iter().collect();
        }
        cands[0].retain(|&x| x == first);
        let mut out = Vec::new();
        if cands.iter().any(Vec::is_empty) {
            return out;
        }
        let mut idx = vec![0usize; gens.len()];
        loop {
            let images: Vec<usize> = idx.iter().zip(&cands).map(|(&i, c)| c[i]).collect();
            if let Some(theta) = Hom::from_generators(&self.gamma, &self.g, gens, &images) {
                out.push(self.solution(theta));
            }
            // odometer, last generator fastest
            let mut pos = gens.len();
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < cands[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    fn solution(&self, theta: Hom) -> Solution {
        let surjective = self.is_surjective_solution(&theta);
        let transitive = self.is_transitive_solution(&theta).ok();
        Solution { theta, surjective, transitive }
    }

    /// All weak solutions `θ: Γ → G`, `α ∘ θ = μ`, found by assigning images
    /// to the generators of `Γ` and checking relations.
    pub fn enumerate_weak_solutions(&self, budget: u64) -> Result<Vec<Solution>, EmbeddingError> {
        let candidates = self.search_size();
        if candidates > u128::from(budget) {
            return Err(EmbeddingError::BudgetExceeded { candidates, budget });
        }
        Ok(self
            .first_generator_images()
            .into_iter()
            .flat_map(|x| self.weak_solutions_with_first_image(x))
            .collect())
    }

    /// `ker α ⊆ θ(Γ)`, which for a weak solution is equivalent to `θ` being
    /// onto.
    pub fn is_surjective_solution(&self, theta: &Hom) -> bool {
        let image = theta.image();
        self.alpha.kernel(&self.g, &self.a).iter().all(|x| image.contains(x))
    }

    /// `(G : G0) = (D : D ∩ G0)` for `D = θ(Γ)`.
    pub fn is_transitive_solution(&self, theta: &Hom) -> Result<bool, EmbeddingError> {
        let g0 = self.distinguished.as_ref().ok_or(EmbeddingError::MissingSubgroup)?;
        let d = theta.image();
        let dg0 = d.intersection(g0);
        Ok(self.g.order() * dg0.order() == d.order() * g0.order())
    }
}

/// A weak solution with its properties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub theta: Hom,
    pub surjective: bool,
    /// `None` when the problem has no distinguished subgroup.
    pub transitive: Option<bool>,
}

/// Whether `θ(Γ)` contains every `f_a`; for a weak solution into a twisted
/// wreath product this forces surjectivity.
pub fn wreath_criterion(wreath: &TwistedWreath, theta: &Hom) -> bool {
    let image = theta.image();
    wreath
        .base()
        .elements()
        .all(|a| image.contains(wreath.index_of(&wreath.f_at_identity(a))))
}

/// Two embedding problems with inclusions `Γ ≤ Λ`, `G ≤ H`, `A ≤ B`
/// compatible with all maps.
#[derive(Debug, Clone)]
pub struct DoubleEmbeddingProblem {
    pub lower: EmbeddingProblem,
    pub higher: EmbeddingProblem,
    pub gamma_in_lambda: Hom,
    pub g_in_h: Hom,
    pub a_in_b: Hom,
}

impl DoubleEmbeddingProblem {
    pub fn new(
        lower: EmbeddingProblem,
        higher: EmbeddingProblem,
        gamma_in_lambda: Hom,
        g_in_h: Hom,
        a_in_b: Hom,
    ) -> Result<Self, EmbeddingError> {
        check_mono(&lower.gamma, &higher.gamma, &gamma_in_lambda, "Γ → Λ")?;
        check_mono(&lower.g, &higher.g, &g_in_h, "G → H")?;
        check_mono(&lower.a, &higher.a, &a_in_b, "A → B")?;
        if a_in_b.after(&lower.mu) != higher.mu.after(&gamma_in_lambda) {
            return Err(EmbeddingError::Incompatible(String::from("μ and ν do not commute with the inclusions")));
        }
        if a_in_b.after(&lower.alpha) != higher.alpha.after(&g_in_h) {
            return Err(EmbeddingError::Incompatible(String::from("α and β do not commute with the inclusions")));
        }
        Ok(DoubleEmbeddingProblem { lower, higher, gamma_in_lambda, g_in_h, a_in_b })
    }
}

/// A weak solution `θ` of the higher problem with `θ(Γ) ≤ G`, and its
/// restriction `η: Γ → G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepSolution {
    pub eta: Hom,
    pub theta: Hom,
}

pub fn solve_dep(dep: &DoubleEmbeddingProblem, budget: u64) -> Result<Vec<DepSolution>, EmbeddingError> {
    let g_image = dep.g_in_h.image();
    let mut back = vec![usize::MAX; dep.higher.g.order()];
    for x in dep.lower.g.elements() {
        back[dep.g_in_h.apply(x)] = x;
    }
    let solutions = dep.higher.enumerate_weak_solutions(budget)?;
    Ok(solutions
        .into_iter()
        .filter_map(|s| {
            let restricted = s.theta.after(&dep.gamma_in_lambda);
            restricted.images().iter().all(|&y| g_image.contains(y)).then(|| DepSolution {
                eta: Hom::new_unchecked(restricted.images().iter().map(|&y| back[y]).collect()),
                theta: s.theta,
            })
        })
        .collect())
}

/// The problem `(μ', α': G ×_A A' → A')` dominating `(μ, α)`.
#[derive(Debug, Clone)]
pub struct Domination {
    pub problem: EmbeddingProblem,
    pub fiber: FiberProduct,
    /// `ν: A' → A` with `ν ∘ μ' = μ`.
    pub nu: Hom,
}

impl Domination {
    /// `π ∘ θ'`, a weak solution of the original problem.
    pub fn project(&self, theta_prime: &Hom) -> Hom {
        self.fiber.projections[0].after(theta_prime)
    }

    /// `θ' = (θ, μ')` for a weak solution `θ` of the original problem.
    pub fn induce(&self, theta: &Hom) -> Hom {
        let images = self
            .problem
            .gamma
            .elements()
            .map(|x| self.fiber.index_of(&[theta.apply(x), self.problem.mu.apply(x)]).expect("compatible pair"))
            .collect();
        Hom::new_unchecked(images)
    }

    /// A section `β'` of `α'` built from a weak solution `θ` of the original
    /// problem with `ker μ' ≤ ker θ`, or `None` if the kernel condition fails.
    pub fn splitting_from(&self, theta: &Hom) -> Option<Hom> {
        let p = &self.problem;
        let theta_prime = self.induce(theta);
        let mut images = vec![usize::MAX; p.a.order()];
        for x in p.gamma.elements() {
            let slot = &mut images[p.mu.apply(x)];
            let v = theta_prime.apply(x);
            if *slot != usize::MAX && *slot != v {
                return None;
            }
            *slot = v;
        }
        let beta = Hom::new_unchecked(images);
        debug_assert!(beta.is_homomorphism(&p.a, &p.g));
        debug_assert!(p.alpha.after(&beta) == Hom::identity(&p.a));
        Some(beta)
    }
}

/// Dominates `(μ, α)` by `(μ', α')` with `G' = G ×_A A'`, given an
/// epimorphism `μ': Γ → A'` with `ker μ' ≤ ker μ`.
pub fn dominate_by_fiber_product(problem: &EmbeddingProblem, mu_prime: &Hom, a_prime: &FiniteGroup) -> Result<Domination, EmbeddingError> {
    check_epi(&problem.gamma, a_prime, mu_prime, "μ'")?;
    let ker_prime = mu_prime.kernel(&problem.gamma, a_prime);
    let ker = problem.mu.kernel(&problem.gamma, &problem.a);
    if !ker_prime.is_subset(&ker) {
        return Err(EmbeddingError::KernelCondition);
    }
    let mut nu = vec![usize::MAX; a_prime.order()];
    for x in problem.gamma.elements() {
        nu[mu_prime.apply(x)] = problem.mu.apply(x);
    }
    let nu = Hom::new_unchecked(nu);
    let fiber = fiber_product(&problem.g, &problem.alpha, a_prime, &nu, &problem.a)?;
    let dominating = EmbeddingProblem::new(
        problem.gamma.clone(),
        mu_prime.clone(),
        a_prime.clone(),
        fiber.group.clone(),
        fiber.projections[1].clone(),
    )?;
    Ok(Domination { problem: dominating, fiber, nu })
}

/// `(ker μ : ∩_{i ∈ I0} ker θ_i) = Π_{i ∈ I0} (ker μ : ker θ_i)` for every
/// nonempty subset `I0` of the family.
pub fn check_independence(problem: &EmbeddingProblem, thetas: &[Hom]) -> Result<bool, EmbeddingError> {
    if thetas.len() > MAX_INDEPENDENT_FAMILY {
        return Err(EmbeddingError::FamilyTooLarge { count: thetas.len(), limit: MAX_INDEPENDENT_FAMILY });
    }
    for (i, t) in thetas.iter().enumerate() {
        if !problem.is_weak_solution(t) || !t.is_surjective(&problem.g) {
            return Err(EmbeddingError::NotASolution(format!("member {i} is not a surjective solution")));
        }
    }
    let ker_mu = problem.mu.kernel(&problem.gamma, &problem.a);
    let kernels: Vec<Subgroup> = thetas.iter().map(|t| t.kernel(&problem.gamma, &problem.g)).collect();
    for mask in 1u32..(1 << thetas.len()) {
        let members: Vec<&Subgroup> = (0..thetas.len()).filter(|i| mask & (1 << i) != 0).map(|i| &kernels[i]).collect();
        let meet = members[1..].iter().fold(members[0].clone(), |acc, k| acc.intersection(k));
        let lhs = ker_mu.order() / meet.order();
        let rhs: usize = members.iter().map(|k| ker_mu.order() / k.order()).product();
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The cyclic group generated by the Frobenius permutation of the roots of
/// a squarefree `f` over `F_p`, with its cycle type (the factor degrees).
/// Roots of the `i`-th irreducible factor are numbered consecutively.
pub fn galois_group_over_fq(f: &Polynomial<PrimeField>) -> Result<(PermGroup, CycleType), EmbeddingError> {
    if f.is_constant() {
        return Err(EmbeddingError::ConstantPolynomial);
    }
    if !is_separable(f) {
        return Err(EmbeddingError::NotSeparable);
    }
    let factors = factor(f).map_err(|_| EmbeddingError::ConstantPolynomial)?;
    let degrees: Vec<usize> = factors.factors.iter().map(|(q, _)| q.deg0()).collect();
    let n: usize = degrees.iter().sum();
    let mut images = vec![0; n];
    let mut start = 0;
    for d in &degrees {
        for i in 0..*d {
            images[start + i] = start + (i + 1) % d;
        }
        start += d;
    }
    let frob = Permutation::from_images(images).expect("cycles");
    let cycle_type = frob.cycle_type();
    let group = PermGroup::new(n, vec![frob]).map_err(GroupError::from)?;
    Ok((group, cycle_type))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4_over_klein() -> EmbeddingProblem {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let klein = FiniteGroup::direct_product(&z2, &z2).unwrap();
        let mu = Hom::from_generators(&z4, &z2, &[1], &[1]).unwrap();
        let first = Hom::new_unchecked(klein.labels().iter().map(|l| usize::from(l.starts_with("(1"))).collect());
        EmbeddingProblem::new(z4, mu, z2, klein, first).unwrap()
    }

    #[test]
    fn weak_solutions_of_z4_over_klein() {
        let p = z4_over_klein();
        let sols = p.enumerate_weak_solutions(DEFAULT_BUDGET).unwrap();
        assert_eq!(sols.len(), 2);
        assert!(sols.iter().all(|s| !s.surjective && p.is_weak_solution(&s.theta)));
        assert!(sols.iter().all(|s| s.theta.image().order() == 2));
    }

    #[test]
    fn isomorphic_target_has_one_solution() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let id = Hom::identity(&z3);
        let p = EmbeddingProblem::new(z3.clone(), id.clone(), z3.clone(), z3.clone(), id).unwrap();
        let sols = p.enumerate_weak_solutions(DEFAULT_BUDGET).unwrap();
        assert_eq!(sols.len(), 1);
        assert!(sols[0].surjective);
    }

    #[test]
    fn no_weak_solution_into_z4() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let q = Hom::from_generators(&z4, &z2, &[1], &[1]).unwrap();
        let p = EmbeddingProblem::new(z2.clone(), Hom::identity(&z2), z2, z4, q).unwrap();
        assert!(p.enumerate_weak_solutions(DEFAULT_BUDGET).unwrap().is_empty());
    }

    #[test]
    fn budget_is_enforced() {
        let p = z4_over_klein();
        assert_eq!(
            p.enumerate_weak_solutions(1),
            Err(EmbeddingError::BudgetExceeded { candidates: 2, budget: 1 })
        );
    }

    #[test]
    fn transitivity_in_s5() {
        let (s5, perms) = FiniteGroup::perm_group_elements(&PermGroup::symmetric(5)).unwrap();
        let stab = Subgroup::from_elements(s5.elements().filter(|&x| perms[x].apply(0) == 0).collect());
        let five = s5.elements().find(|&x| perms[x] == Permutation::parse("(1 2 3 4 5)").unwrap()).unwrap();
        let swap = s5.elements().find(|&x| perms[x] == Permutation::parse_with_degree("(1 2)", 5).unwrap()).unwrap();
        let trivial = FiniteGroup::trivial();
        let to_trivial = Hom::new_unchecked(vec![0; 120]);
        let z5 = FiniteGroup::cyclic(5).unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let p5 = EmbeddingProblem::new(z5.clone(), Hom::new_unchecked(vec![0; 5]), trivial.clone(), s5.clone(), to_trivial.clone())
            .unwrap()
            .with_distinguished(stab.clone())
            .unwrap();
        let theta = Hom::from_generators(&z5, &s5, &[1], &[five]).unwrap();
        assert_eq!(p5.is_transitive_solution(&theta), Ok(true));
        let p2 = EmbeddingProblem::new(z2.clone(), Hom::new_unchecked(vec![0; 2]), trivial, s5.clone(), to_trivial)
            .unwrap()
            .with_distinguished(stab)
            .unwrap();
        let theta = Hom::from_generators(&z2, &s5, &[1], &[swap]).unwrap();
        assert_eq!(p2.is_transitive_solution(&theta), Ok(false));
        assert_eq!(z4_over_klein().is_transitive_solution(&theta), Err(EmbeddingError::MissingSubgroup));
    }

    #[test]
    fn galois_groups_over_finite_fields() {
        let f3 = PrimeField::new(3).unwrap();
        let f = Polynomial::parse(f3, "X^3 - X^2 + X - 1").unwrap();
        let (g, ct) = galois_group_over_fq(&f).unwrap();
        assert_eq!(ct.parts(), [2, 1]);
        assert_eq!(g.order().unwrap(), 2);
        let irr = Polynomial::parse(f3, "X^3 - X + 1").unwrap();
        assert_eq!(galois_group_over_fq(&irr).unwrap().1.parts(), [3]);
        let sq = Polynomial::parse(f3, "X^2 - 2*X + 1").unwrap();
        assert_eq!(galois_group_over_fq(&sq).unwrap_err(), EmbeddingError::NotSeparable);
    }

    fn klein() -> FiniteGroup {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        FiniteGroup::direct_product(&z2, &z2).unwrap()
    }

    fn first_projection(k: &FiniteGroup) -> Hom {
        Hom::new_unchecked(k.labels().iter().map(|l| usize::from(l.starts_with("(1"))).collect())
    }

    fn diagonal_dep(gamma_image: &str) -> Result<DoubleEmbeddingProblem, EmbeddingError> {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let k = klein();
        let id = Hom::identity(&z2);
        let lower = EmbeddingProblem::new(z2.clone(), id.clone(), z2.clone(), z2.clone(), id.clone())?;
        let higher = EmbeddingProblem::new(k.clone(), first_projection(&k), z2.clone(), k.clone(), first_projection(&k))?;
        let diag = k.find_label("(1,1)").unwrap();
        let gamma_in = Hom::new_unchecked(vec![k.identity(), k.find_label(gamma_image).unwrap()]);
        let g_in = Hom::new_unchecked(vec![k.identity(), diag]);
        DoubleEmbeddingProblem::new(lower, higher, gamma_in, g_in, id)
    }

    #[test]
    fn dep_with_diagonal_constraint() {
        let dep = diagonal_dep("(1,1)").unwrap();
        let sols = solve_dep(&dep, DEFAULT_BUDGET).unwrap();
        // brute force over every map of the four-element group to itself
        let k = klein();
        let beta = first_projection(&k);
        let diag = Subgroup::from_elements(vec![k.identity(), k.find_label("(1,1)").unwrap()]);
        let mut count = 0;
        for code in 0..256usize {
            let images: Vec<usize> = (0..4).map(|i| (code >> (2 * i)) & 3).collect();
            let theta = Hom::new_unchecked(images);
            if theta.is_homomorphism(&k, &k)
                && beta.after(&theta) == beta
                && diag.iter().all(|x| diag.contains(theta.apply(x)))
            {
                count += 1;
            }
        }
        assert_eq!(sols.len(), count);
        assert_eq!(count, 2);
        for s in &sols {
            assert!(dep.lower.is_weak_solution(&s.eta));
        }
    }

    #[test]
    fn dep_with_trivial_higher_problem() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let id = Hom::identity(&z2);
        let p = EmbeddingProblem::new(z2.clone(), id.clone(), z2.clone(), z2.clone(), id.clone()).unwrap();
        let dep = DoubleEmbeddingProblem::new(p.clone(), p.clone(), id.clone(), id.clone(), id).unwrap();
        let lower = p.enumerate_weak_solutions(DEFAULT_BUDGET).unwrap();
        let sols = solve_dep(&dep, DEFAULT_BUDGET).unwrap();
        assert_eq!(sols.len(), lower.len());
        assert_eq!(sols[0].eta, lower[0].theta);
    }

    #[test]
    fn dep_rejects_incompatible_inclusions() {
        assert!(matches!(diagonal_dep("(0,1)"), Err(EmbeddingError::Incompatible(_))));
    }

    #[test]
    fn fiber_product_domination() {
        let p = z4_over_klein();
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let dom = dominate_by_fiber_product(&p, &Hom::identity(&z4), &z4).unwrap();
        assert_eq!(dom.problem.g.order(), p.g.order() * 4 / 2);
        let sols = dom.problem.enumerate_weak_solutions(DEFAULT_BUDGET).unwrap();
        assert!(!sols.is_empty());
        for s in &sols {
            assert!(p.is_weak_solution(&dom.project(&s.theta)));
        }
        for s in p.enumerate_weak_solutions(DEFAULT_BUDGET).unwrap() {
            let induced = dom.induce(&s.theta);
            assert!(dom.problem.is_weak_solution(&induced));
            let beta = dom.splitting_from(&s.theta).unwrap();
            assert!(beta.is_homomorphism(&dom.problem.a, &dom.problem.g));
            assert_eq!(dom.problem.alpha.after(&beta), Hom::identity(&z4));
        }
        let trivial = FiniteGroup::trivial();
        assert_eq!(
            dominate_by_fiber_product(&p, &Hom::new_unchecked(vec![0; 4]), &trivial).unwrap_err(),
            EmbeddingError::KernelCondition
        );
    }

    #[test]
    fn independence_of_fiber_power_projections() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let q = Hom::from_generators(&z4, &z2, &[1], &[1]).unwrap();
        let power = crate::fiber::fiber_power(&z4, &q, &z2, 2).unwrap();
        let p = EmbeddingProblem::new(power.group.clone(), power.to_base.clone(), z2, z4, q).unwrap();
        let thetas = power.projections.clone();
        assert_eq!(check_independence(&p, &thetas), Ok(true));
        assert_eq!(check_independence(&p, &thetas[..1]), Ok(true));
        let dup = [thetas[0].clone(), thetas[0].clone()];
        assert_eq!(check_independence(&p, &dup), Ok(false));
        let five = vec![thetas[0].clone(); 5];
        assert!(matches!(check_independence(&p, &five), Err(EmbeddingError::FamilyTooLarge { .. })));
    }

    #[test]
    fn wreath_target_criterion() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let w = TwistedWreath::plain(&z2, &z2).unwrap();
        let alpha = w.quotient();
        let p = EmbeddingProblem::new(w.group().clone(), alpha.clone(), z2.clone(), w.group().clone(), alpha).unwrap();
        let id = Hom::identity(w.group());
        assert!(wreath_criterion(&w, &id));
        assert!(p.is_surjective_solution(&id));

        let split = Hom::new_unchecked(z2.elements().map(|s| w.index_of(&crate::wreath::WreathElement { f: vec![0, 0], sigma: s })).collect());
        let p2 = EmbeddingProblem::new(z2.clone(), Hom::identity(&z2), z2.clone(), w.group().clone(), w.quotient()).unwrap();
        assert!(p2.is_weak_solution(&split));
        assert!(!wreath_criterion(&w, &split));
        assert!(!p2.is_surjective_solution(&split));
    }
}
