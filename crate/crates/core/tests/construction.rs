mod common;

use dirichlet_core::certify::{certify_ramification, conclude_sn, frobenius_sample, CertClause, Conclusion};
use dirichlet_core::dirichlet::{
    build_congruence_c, construct_dirichlet, construct_with_cycle_length, find_cycle_length, find_good_alpha,
    find_irreducible_offsets, ConstructError, ConstructionParams, DirichletCertificate,
};
use dirichlet_core::factor::factor;
use dirichlet_core::field::{Field, PrimeField};
use dirichlet_core::perm::CycleType;
use dirichlet_core::poly::{is_separable, poly_gcd, Polynomial};
use proptest::prelude::*;

fn fp(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn poly(p: u64, s: &str) -> Polynomial<PrimeField> {
    Polynomial::parse(fp(p), s).unwrap()
}

fn quintic(p: u64) -> DirichletCertificate<PrimeField> {
    let one = poly(p, "1");
    construct_with_cycle_length(&ConstructionParams::new(one.clone(), one, 5), 3).unwrap()
}

/// Every stated property of a certificate, by polynomial arithmetic.
fn check_invariants(cert: &DirichletCertificate<PrimeField>) -> Result<(), String> {
    let k = *cert.field();
    if cert.specialize(&k.zero()) != cert.a || cert.c.degree() != Some(cert.n - cert.b.deg0()) {
        return Err(String::from("degree of c"));
    }
    if !poly_gcd(&cert.a, &cert.bc()).unwrap().is_one() {
        return Err(String::from("a and bc share a factor"));
    }
    for (alpha, gamma, h, mult) in [(cert.alpha1, cert.gamma1, &cert.h1, cert.e), (cert.alpha2, cert.gamma2, &cert.h2, 2)] {
        let shape = Polynomial::linear(k, &gamma).pow(mult);
        if cert.specialize(&alpha) != &shape * h {
            return Err(format!("specialization at {alpha} is not (X - {gamma})^{mult} h"));
        }
        // factor: X - gamma with multiplicity mult, everything else simple
        let fm = factor(&cert.specialize(&alpha)).unwrap();
        for (g, m) in &fm.factors {
            let is_gamma = *g == Polynomial::linear(k, &gamma);
            if (is_gamma && *m != mult) || (!is_gamma && *m != 1) {
                return Err(format!("factor {g} has multiplicity {m}"));
            }
        }
    }
    Ok(())
}

#[test]
fn cycle_length_is_minimal() {
    for n in 1..=200 {
        for m in 0..=8 {
            for p in [0u64, 2, 3, 5, 7, 11] {
                match find_cycle_length(n, m, p) {
                    Ok(e) => {
                        assert!(common::valid_cycle_length(e, n, m, p));
                        assert_eq!(common::all_cycle_lengths(n, m, p).first(), Some(&e));
                    }
                    Err(_) => assert!(common::all_cycle_lengths(n, m, p).is_empty()),
                }
            }
        }
    }
}

#[test]
fn good_alpha_examples() {
    let (a, one, c) = (poly(5, "X"), poly(5, "1"), poly(5, "X - 1"));
    // only alpha = 4 makes X + alpha vanish at the root 1 of c
    let bad: Vec<u64> = (0..5).filter(|&al| (1 + al) % 5 == 0).collect();
    assert_eq!(bad, vec![4]);
    assert_eq!(find_good_alpha(&a, &one, &c, &[], false, 100), Ok(0));
    assert_eq!(find_good_alpha(&a, &one, &poly(5, "3"), &[0, 1], false, 100), Ok(2));
    let r = find_good_alpha(&poly(2, "X"), &poly(2, "1"), &poly(2, "1"), &[0, 1], false, 100);
    assert!(matches!(r, Err(ConstructError::FieldTooSmall(_))));
}

#[test]
fn congruence_postconditions_over_f7() {
    let k = fp(7);
    let (a, b) = (poly(7, "1"), poly(7, "X"));
    let p1 = Polynomial::linear(k, &1).pow(3);
    let p2 = Polynomial::linear(k, &2).pow(2);
    let (alpha1, alpha2) = (1u64, 2u64);
    let (c, h1, h2) = build_congruence_c(&a, &b, [&p1, &p2], [&alpha1, &alpha2], 6, 100_000).unwrap();
    assert_eq!(c.degree(), Some(6));
    for (p, h, alpha) in [(&p1, &h1, alpha1), (&p2, &h2, alpha2)] {
        assert_eq!(&(p * h) + &(&b * &c).scale(&alpha), a);
        assert!(is_separable(h));
        assert!(poly_gcd(h, &(&a * p)).unwrap().is_one());
    }
    let r = build_congruence_c(&poly(7, "X"), &poly(7, "X"), [&p1, &p2], [&alpha1, &alpha2], 6, 100);
    assert!(matches!(r, Err(ConstructError::PreconditionViolation(_))));
}

#[test]
fn construction_examples() {
    let params = ConstructionParams::new(poly(101, "1"), poly(101, "1"), 12);
    let cert = construct_dirichlet(&params).unwrap();
    assert_eq!(cert.e, 7);
    assert_eq!(cert.c.degree(), Some(12));
    assert_eq!(conclude_sn(&cert).conclusion, Conclusion::SymmetricGroupCertified);
    check_invariants(&cert).unwrap();
    // same inputs, same certificate
    assert_eq!(construct_dirichlet(&params).unwrap(), cert);

    let x = poly(101, "X");
    assert_eq!(construct_dirichlet(&ConstructionParams::new(x.clone(), x, 12)), Err(ConstructError::NotCoprime));
    let r = construct_dirichlet(&ConstructionParams::new(poly(101, "X^5 + 1"), poly(101, "1"), 8));
    assert!(matches!(r, Err(ConstructError::DegreeTooSmall { .. })));
    let r = construct_dirichlet(&ConstructionParams::new(poly(5, "1"), poly(5, "1"), 12));
    assert!(matches!(r, Err(ConstructError::FieldTooSmall(_))));
}

#[test]
fn offsets_match_exhaustive_factorization() {
    let cert = quintic(13);
    let oracle: Vec<u64> = (0..13)
        .filter(|al| {
            let f = cert.specialize(al);
            f.degree() == Some(5) && common::berlekamp_irreducible(f.coeffs(), 13)
        })
        .collect();
    assert_eq!(oracle, vec![6, 12]);
    assert_eq!(find_irreducible_offsets(&cert, usize::MAX), oracle);
    assert_eq!(find_irreducible_offsets(&cert, 1), vec![6]);

    let cert = quintic(101);
    let offsets = find_irreducible_offsets(&cert, usize::MAX);
    assert!(!offsets.contains(&0));
    let ratio = offsets.len() as f64 / 101.0;
    assert!((ratio - 0.2).abs() <= 0.15, "ratio {ratio}");
    for al in &offsets {
        assert!(common::berlekamp_irreducible(cert.specialize(al).coeffs(), 101));
    }
}

#[test]
fn certifier_rejections() {
    let cert = construct_dirichlet(&ConstructionParams::new(poly(101, "1"), poly(101, "1"), 12)).unwrap();

    let mut tampered = cert.clone();
    tampered.c = &tampered.c + &poly(101, "1");
    assert!(!certify_ramification(&tampered, 1).passed());
    assert_ne!(conclude_sn(&tampered).conclusion, Conclusion::SymmetricGroupCertified);

    let mut shared = cert.clone();
    shared.a = poly(101, "X - 5");
    shared.c = &shared.c * &poly(101, "X - 5");
    assert_eq!(conclude_sn(&shared).conclusion, Conclusion::Rejected(CertClause::Irreducibility));

    // each passing clause is needed: break exactly its evidence
    let mut bad_e = cert.clone();
    bad_e.e = 6;
    assert_ne!(conclude_sn(&bad_e).conclusion, Conclusion::SymmetricGroupCertified);
    let mut bad_h2 = cert.clone();
    bad_h2.h2 = &bad_h2.h2 * &poly(101, "2");
    assert_eq!(conclude_sn(&bad_h2).conclusion, Conclusion::Rejected(CertClause::Ramification2));
    let mut same_alpha = cert.clone();
    same_alpha.alpha2 = same_alpha.alpha1;
    assert_eq!(conclude_sn(&same_alpha).conclusion, Conclusion::Rejected(CertClause::WellFormed));
}

#[test]
fn wild_cycle_length_rejected_in_characteristic_seven() {
    let r = construct_with_cycle_length(&ConstructionParams::new(poly(7, "1"), poly(7, "1"), 16), 14);
    assert!(matches!(r, Err(ConstructError::PreconditionViolation(_))));
}

#[test]
fn sample_matches_frobenius_orbits_over_f7() {
    let cert = quintic(7);
    assert_eq!(conclude_sn(&cert).conclusion, Conclusion::SymmetricGroupCertified);
    let sample = frobenius_sample(&cert, 0..7);
    let mut oracle = std::collections::BTreeMap::new();
    let mut skipped = 0;
    for al in 0..7 {
        let f = cert.specialize(&al);
        let squarefree = common::poly_gcd(f.coeffs(), &common::derivative(f.coeffs(), 7), 7).len() == 1;
        if f.degree() != Some(5) || !squarefree {
            skipped += 1;
            continue;
        }
        let sizes = common::frobenius_orbit_sizes(f.coeffs(), 7, 6).unwrap();
        *oracle.entry(CycleType::new(sizes)).or_insert(0u64) += 1;
    }
    assert_eq!(sample.histogram, oracle);
    assert_eq!(sample.skipped, skipped);
    assert_eq!(sample.trials, 7);
}

#[test]
fn chebotarev_shape_over_f101() {
    let cert = quintic(101);
    let sample = frobenius_sample(&cert, 0..101);
    assert!(sample.histogram.keys().all(|ct| ct.degree() == 5));
    let five = sample.count(&CycleType::single_cycle(5, 5)) as f64 / sample.recorded() as f64;
    assert!((five - 0.2).abs() <= 0.15, "frequency {five}");
    assert!(sample.count(&CycleType::new(vec![2, 1, 1, 1])) > 0);
    // ramified values never enter the histogram
    assert!(sample.skipped >= 3);
}

fn coprime_pair() -> impl Strategy<Value = (Vec<u64>, Vec<u64>, usize)> {
    let poly = |max: usize| {
        (prop::collection::vec(0..101u64, 0..=max), 1..101u64).prop_map(|(mut c, lead)| {
            c.push(lead);
            c
        })
    };
    (poly(3), poly(2), 10usize..=18)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn certificates_satisfy_invariants((a, b, n) in coprime_pair()) {
        let (a, b) = (Polynomial::new(fp(101), a), Polynomial::new(fp(101), b));
        prop_assume!(poly_gcd(&a, &b).unwrap().is_one());
        let params = ConstructionParams::new(a, b, n);
        match construct_dirichlet(&params) {
            Ok(cert) => {
                prop_assert_eq!(check_invariants(&cert), Ok(()));
                prop_assert_eq!(conclude_sn(&cert).conclusion, Conclusion::SymmetricGroupCertified);
                prop_assert_eq!(construct_dirichlet(&params).unwrap(), cert);
            }
            Err(ConstructError::DegreeTooSmall { .. }) => {
                let m = params.m();
                let e = common::all_cycle_lengths(n, m, 101).first().copied();
                prop_assert!(e.is_none_or(|e| n <= params.a.deg0().max(e + 2 + params.b.deg0())));
            }
            Err(other) => prop_assert!(false, "unexpected {other}"),
        }
    }
}
