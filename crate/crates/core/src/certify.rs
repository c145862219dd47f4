//! Verification of construction certificates and Frobenius sampling.
//!
//! A certificate proves `Gal(a + b*c*Y / K(Y)) = S_n` over an algebraic
//! closure `K` by exhibiting: irreducibility (`gcd(a, b*c) = 1`), degree `n`,
//! a tamely ramified specialization of shape `(X - gamma1)^e * squarefree`
//! giving an `e`-cycle, one of shape `(X - gamma2)^2 * squarefree` giving a
//! transposition, and `n/2 < e < n`, `gcd(e, n) = 1` for primitivity.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use alloc::format;
use core::fmt;

use num_integer::Integer;

use crate::dirichlet::DirichletCertificate;
use crate::factor::factor;
use crate::field::{Field, PrimeField};
use crate::perm::CycleType;
use crate::poly::{is_separable, poly_gcd, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CertClause {
    WellFormed,
    Irreducibility,
    Degree,
    Primitivity,
    Ramification1,
    Ramification2,
}

impl CertClause {
    pub const ALL: [CertClause; 6] = [
        CertClause::WellFormed,
        CertClause::Irreducibility,
        CertClause::Degree,
        CertClause::Primitivity,
        CertClause::Ramification1,
        CertClause::Ramification2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CertClause::WellFormed => "well_formed",
            CertClause::Irreducibility => "irreducibility",
            CertClause::Degree => "degree",
            CertClause::Primitivity => "primitivity",
            CertClause::Ramification1 => "ramification_1",
            CertClause::Ramification2 => "ramification_2",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }
}

impl fmt::Display for CertClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which tameness condition made a ramified specialization yield a cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TamenessCase {
    /// Characteristic zero.
    CharZero,
    /// Every multiplicity is prime to the characteristic.
    CoprimeToChar,
    /// Characteristic 2, the ramified multiplicity is 2 and the rest are odd.
    CharTwoSquare,
}

impl TamenessCase {
    pub fn name(self) -> &'static str {
        match self {
            TamenessCase::CharZero => "char_zero",
            TamenessCase::CoprimeToChar => "coprime_to_char",
            TamenessCase::CharTwoSquare => "char_two_square",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [TamenessCase::CharZero, TamenessCase::CoprimeToChar, TamenessCase::CharTwoSquare]
            .into_iter()
            .find(|c| c.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseResult {
    pub clause: CertClause,
    /// `None` when the clause passed, otherwise the failed check.
    pub failure: Option<String>,
    pub tameness: Option<TamenessCase>,
}

impl ClauseResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    fn pass(clause: CertClause) -> Self {
        ClauseResult { clause, failure: None, tameness: None }
    }

    fn fail(clause: CertClause, why: String) -> Self {
        ClauseResult { clause, failure: Some(why), tameness: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conclusion {
    SymmetricGroupCertified,
    Rejected(CertClause),
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conclusion::SymmetricGroupCertified => f.write_str("SymmetricGroupCertified"),
            Conclusion::Rejected(c) => write!(f, "Rejected({c})"),
        }
    }
}

impl Conclusion {
    pub fn parse(s: &str) -> Option<Self> {
        if s == "SymmetricGroupCertified" {
            return Some(Conclusion::SymmetricGroupCertified);
        }
        let inner = s.strip_prefix("Rejected(")?.strip_suffix(')')?;
        CertClause::from_name(inner).map(Conclusion::Rejected)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnCertificate<K: Field> {
    pub certificate: DirichletCertificate<K>,
    pub clauses: Vec<ClauseResult>,
    pub conclusion: Conclusion,
}

fn check_well_formed<K: Field>(cert: &DirichletCertificate<K>) -> ClauseResult {
    let clause = CertClause::WellFormed;
    let k = cert.field();
    let polys = [&cert.b, &cert.c, &cert.p1, &cert.p2, &cert.h1, &cert.h2];
    if polys.iter().any(|p| !p.same_field(&cert.a)) {
        return ClauseResult::fail(clause, String::from("polynomials over different fields"));
    }
    if cert.alpha1 == cert.alpha2 {
        return ClauseResult::fail(clause, String::from("alpha1 = alpha2"));
    }
    if k.is_zero(&cert.alpha1) || k.is_zero(&cert.alpha2) {
        return ClauseResult::fail(clause, String::from("alpha_i must be nonzero"));
    }
    if cert.gamma1 == cert.gamma2 {
        return ClauseResult::fail(clause, String::from("gamma1 = gamma2"));
    }
    if cert.e == 0 || cert.n == 0 {
        return ClauseResult::fail(clause, String::from("n and e must be positive"));
    }
    if cert.p1 != Polynomial::linear(k.clone(), &cert.gamma1).pow(cert.e) {
        return ClauseResult::fail(clause, String::from("p1 differs from (X - gamma1)^e"));
    }
    if cert.p2 != Polynomial::linear(k.clone(), &cert.gamma2).pow(2) {
        return ClauseResult::fail(clause, String::from("p2 differs from (X - gamma2)^2"));
    }
    ClauseResult::pass(clause)
}

fn check_irreducibility<K: Field>(cert: &DirichletCertificate<K>) -> ClauseResult {
    let clause = CertClause::Irreducibility;
    match poly_gcd(&cert.a, &cert.bc()) {
        Ok(g) if g.is_one() => ClauseResult::pass(clause),
        Ok(g) => ClauseResult::fail(clause, format!("gcd(a, b*c) = {g}")),
        Err(e) => ClauseResult::fail(clause, format!("{e}")),
    }
}

fn check_degree<K: Field>(cert: &DirichletCertificate<K>) -> ClauseResult {
    let clause = CertClause::Degree;
    let dbc = cert.bc().degree();
    if dbc != Some(cert.n) {
        return ClauseResult::fail(clause, format!("deg(b*c) = {dbc:?}, expected {}", cert.n));
    }
    if cert.a.degree() >= Some(cert.n) {
        return ClauseResult::fail(clause, String::from("deg a >= n"));
    }
    ClauseResult::pass(clause)
}

fn check_primitivity<K: Field>(cert: &DirichletCertificate<K>) -> ClauseResult {
    let clause = CertClause::Primitivity;
    let (n, e) = (cert.n, cert.e);
    if e.gcd(&n) != 1 {
        return ClauseResult::fail(clause, format!("gcd(e, n) = {} != 1", e.gcd(&n)));
    }
    if !(2 * e > n && e < n) {
        return ClauseResult::fail(clause, format!("e = {e} outside (n/2, n)"));
    }
    ClauseResult::pass(clause)
}

/// Checks one ramified specialization: `which = 1` uses `(alpha1, gamma1,
/// h1)` with multiplicity `e`, `which = 2` uses `(alpha2, gamma2, h2)` with
/// multiplicity 2.
pub fn certify_ramification<K: Field>(cert: &DirichletCertificate<K>, which: u8) -> ClauseResult {
    let (clause, alpha, gamma, h, mult) = match which {
        1 => (CertClause::Ramification1, &cert.alpha1, &cert.gamma1, &cert.h1, cert.e),
        2 => (CertClause::Ramification2, &cert.alpha2, &cert.gamma2, &cert.h2, 2),
        _ => panic!("ramification index must be 1 or 2"),
    };
    let k = cert.field();
    if !h.same_field(&cert.a) || !cert.b.same_field(&cert.a) || !cert.c.same_field(&cert.a) {
        return ClauseResult::fail(clause, String::from("polynomials over different fields"));
    }
    let shape = Polynomial::linear(k.clone(), gamma).pow(mult);
    if cert.specialize(alpha) != &shape * h {
        return ClauseResult::fail(clause, format!("a + alpha*b*c != (X - gamma)^{mult} * h"));
    }
    if !is_separable(h) {
        return ClauseResult::fail(clause, String::from("h is not separable"));
    }
    if k.is_zero(&h.eval(gamma)) {
        return ClauseResult::fail(clause, String::from("h vanishes at gamma"));
    }
    if !poly_gcd(h, &cert.a).expect("same field").is_one() {
        return ClauseResult::fail(clause, String::from("gcd(h, a) != 1"));
    }
    // remaining multiplicities are all 1 since h is separable and h(gamma) != 0
    let p = k.characteristic();
    let tameness = if p == 0 {
        TamenessCase::CharZero
    } else if (mult as u64).gcd(&p) == 1 {
        TamenessCase::CoprimeToChar
    } else if p == 2 && mult == 2 {
        TamenessCase::CharTwoSquare
    } else {
        return ClauseResult::fail(clause, format!("tameness: multiplicity {mult} divisible by characteristic {p}"));
    };
    ClauseResult { clause, failure: None, tameness: Some(tameness) }
}

/// Runs every clause and concludes `S_n` only if all pass.
pub fn conclude_sn<K: Field>(cert: &DirichletCertificate<K>) -> SnCertificate<K> {
    let well = check_well_formed(cert);
    let clauses = if well.passed() {
        alloc::vec![
            well,
            check_irreducibility(cert),
            check_degree(cert),
            check_primitivity(cert),
            certify_ramification(cert, 1),
            certify_ramification(cert, 2),
        ]
    } else {
        alloc::vec![well]
    };
    let conclusion = clauses
        .iter()
        .find(|c| !c.passed())
        .map_or(Conclusion::SymmetricGroupCertified, |c| Conclusion::Rejected(c.clause));
    SnCertificate { certificate: cert.clone(), clauses, conclusion }
}

/// Histogram of factor-degree cycle types over a set of specializations.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CycleTypeSample {
    pub trials: u64,
    pub histogram: BTreeMap<CycleType, u64>,
    pub skipped: u64,
}

impl CycleTypeSample {
    pub fn record(&mut self, outcome: Option<CycleType>) {
        self.trials += 1;
        match outcome {
            Some(ct) => *self.histogram.entry(ct).or_insert(0) += 1,
            None => self.skipped += 1,
        }
    }

    pub fn count(&self, ct: &CycleType) -> u64 {
        self.histogram.get(ct).copied().unwrap_or(0)
    }

    pub fn recorded(&self) -> u64 {
        self.trials - self.skipped
    }
}

/// Cycle type of Frobenius at `alpha`: the factor degrees of
/// `a + alpha*b*c`, or `None` if that polynomial is not squarefree of
/// degree `n`.
pub fn frobenius_cycle_type(cert: &DirichletCertificate<PrimeField>, alpha: u64) -> Option<CycleType> {
    let f = cert.specialize(&alpha);
    if f.degree() != Some(cert.n) || !is_separable(&f) {
        return None;
    }
    let fm = factor(&f).expect("nonzero");
    Some(CycleType::new(fm.degree_multiset()))
}

pub fn frobenius_sample<I>(cert: &DirichletCertificate<PrimeField>, alphas: I) -> CycleTypeSample
where
    I: IntoIterator<Item = u64>,
{
    let mut sample = CycleTypeSample::default();
    for alpha in alphas {
        sample.record(frobenius_cycle_type(cert, alpha));
    }
    sample
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::{build_congruence_c, construct_dirichlet, ConstructionParams};

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn poly(k: PrimeField, s: &str) -> Polynomial<PrimeField> {
        Polynomial::parse(k, s).unwrap()
    }

    fn sample_cert() -> DirichletCertificate<PrimeField> {
        let k = fp(101);
        construct_dirichlet(&ConstructionParams::new(poly(k, "1"), poly(k, "1"), 12)).unwrap()
    }

    /// Certificate with a forced cycle length, bypassing the constructor's checks.
    fn forced(k: PrimeField, n: usize, e: usize) -> DirichletCertificate<PrimeField> {
        let (a, b) = (poly(k, "1"), poly(k, "1"));
        let (alpha1, alpha2, gamma1, gamma2) = (1, 2, 0, 1);
        let p1 = Polynomial::linear(k, &gamma1).pow(e);
        let p2 = Polynomial::linear(k, &gamma2).pow(2);
        let (c, h1, h2) =
            build_congruence_c(&a, &b, [&p1, &p2], [&k.neg(&alpha1), &k.neg(&alpha2)], n, 100_000).unwrap();
        DirichletCertificate { a, b, c, n, e, alpha1, alpha2, gamma1, gamma2, p1, p2, h1, h2, trace: None }
    }

    #[test]
    fn pipeline_certifies() {
        let s = conclude_sn(&sample_cert());
        assert_eq!(s.conclusion, Conclusion::SymmetricGroupCertified);
        assert_eq!(s.clauses.len(), 6);
        assert!(s.clauses.iter().all(ClauseResult::passed));
        assert_eq!(s.clauses[4].tameness, Some(TamenessCase::CoprimeToChar));
    }

    #[test]
    fn tampered_c_breaks_congruence() {
        let mut cert = sample_cert();
        cert.c = &cert.c + &Polynomial::one(*cert.field());
        assert!(!certify_ramification(&cert, 1).passed());
        assert!(!certify_ramification(&cert, 2).passed());
        assert_eq!(conclude_sn(&cert).conclusion, Conclusion::Rejected(CertClause::Ramification1));
    }

    #[test]
    fn wild_ramification_rejected() {
        let cert = forced(fp(7), 16, 14);
        let r = certify_ramification(&cert, 1);
        assert!(r.failure.unwrap().starts_with("tameness"));
        assert!(certify_ramification(&cert, 2).passed());
    }

    #[test]
    fn shared_factor_rejected() {
        let k = fp(101);
        let mut cert = sample_cert();
        cert.a = poly(k, "X - 5");
        cert.c = &cert.c * &poly(k, "X - 5");
        assert_eq!(conclude_sn(&cert).conclusion, Conclusion::Rejected(CertClause::Irreducibility));
    }

    #[test]
    fn half_cycle_rejected() {
        let cert = forced(fp(101), 12, 6);
        assert!(certify_ramification(&cert, 1).passed());
        assert_eq!(conclude_sn(&cert).conclusion, Conclusion::Rejected(CertClause::Primitivity));
    }

    #[test]
    fn char_two_square_case() {
        let k = fp(2);
        let cert = DirichletCertificate {
            a: poly(k, "1"),
            b: poly(k, "1"),
            c: poly(k, "X^2"),
            n: 2,
            e: 1,
            alpha1: 1,
            alpha2: 1,
            gamma1: 0,
            gamma2: 1,
            p1: poly(k, "X"),
            p2: poly(k, "X^2 + 1"),
            h1: poly(k, "1"),
            h2: poly(k, "1"),
            trace: None,
        };
        // 1 + X^2 = (X + 1)^2 in characteristic 2
        let r = certify_ramification(&cert, 2);
        assert_eq!(r.tameness, Some(TamenessCase::CharTwoSquare));
    }

    #[test]
    fn frobenius_sample_counts() {
        let cert = sample_cert();
        let p = cert.field().modulus();
        let s = frobenius_sample(&cert, 0..p);
        assert_eq!(s.trials, p);
        assert_eq!(s.recorded(), s.histogram.values().sum::<u64>());
        // alpha = 0 gives a constant, always skipped
        assert!(s.skipped >= 1);
        assert!(s.histogram.keys().all(|ct| ct.degree() == cert.n));
        // ramified specializations are never recorded
        assert_eq!(frobenius_cycle_type(&cert, cert.alpha1), None);
        assert_eq!(frobenius_cycle_type(&cert, cert.alpha2), None);
    }

    #[test]
    fn conclusion_text_round_trip() {
        for c in [Conclusion::SymmetricGroupCertified, Conclusion::Rejected(CertClause::Ramification2)] {
            assert_eq!(Conclusion::parse(&alloc::string::ToString::to_string(&c)), Some(c));
        }
    }
}
