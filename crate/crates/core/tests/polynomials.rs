mod common;

use dirichlet_core::factor::{factor, is_irreducible, RootsInField};
use dirichlet_core::field::{PrimeField, Rationals};
use dirichlet_core::poly::{discriminant, extended_gcd, is_separable, poly_gcd, Polynomial};
use num_rational::BigRational;
use proptest::prelude::*;

fn fp(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn poly(p: u64, s: &str) -> Polynomial<PrimeField> {
    Polynomial::parse(fp(p), s).unwrap()
}

#[test]
fn gcd_examples() {
    assert_eq!(poly_gcd(&poly(5, "X^2 - 1"), &poly(5, "X^3 - 1")).unwrap(), poly(5, "X - 1"));
    let f = poly(7, "3*X^2 + 1");
    assert_eq!(poly_gcd(&f, &Polynomial::zero(fp(7))).unwrap(), f.monic());

    // X^4 + 1 = (X^2 + X + 2)(X^2 + 2X + 2) over F_3, checked by the oracle
    assert_eq!(common::poly_mul(&[2, 1, 1], &[2, 2, 1], 3), vec![1, 0, 0, 0, 1]);
    assert_eq!(poly_gcd(&poly(3, "X^4 + 1"), &poly(3, "X^2 + X + 2")).unwrap(), poly(3, "X^2 + X + 2"));
}

#[test]
fn extended_gcd_examples() {
    let (d, u, v) = extended_gcd(&poly(3, "X^2 + 1"), &poly(3, "X")).unwrap();
    assert!(d.is_one());
    assert_eq!(u, poly(3, "1"));
    assert_eq!(v, poly(3, "-X"));

    let f = poly(7, "3*X + 2");
    let (d, u, v) = extended_gcd(&f, &f).unwrap();
    assert_eq!(d, f.monic());
    assert!(u.is_zero());
    assert_eq!(v, poly(7, "5"));

    // 2^3 = 1 in F_7, so X - 2 is itself the gcd
    assert_eq!(common::eval(&[6, 0, 0, 1], 2, 7), 0);
    let (f, g) = (poly(7, "X^3 - 1"), poly(7, "X - 2"));
    let (d, u, v) = extended_gcd(&f, &g).unwrap();
    assert_eq!(d, g);
    assert_eq!(&(&u * &f) + &(&v * &g), d);
}

#[test]
fn discriminant_examples() {
    let q = |s: &str| Polynomial::parse(Rationals, s).unwrap();
    // -4p^3 - 27q^2 with p = 2, q = 1
    let closed_form = BigRational::from_integer((-4 * 2i64.pow(3) - 27).into());
    assert_eq!(discriminant(&q("X^3 + 2*X + 1")).unwrap(), closed_form);
    assert_eq!(closed_form, BigRational::from_integer((-59).into()));
    assert_eq!(discriminant(&q("X^2 + 3*X + 5")).unwrap(), BigRational::from_integer((9 - 20).into()));
    assert!(!is_separable(&poly(7, "X^2 - 2*X + 1")));
}

#[test]
fn factor_examples() {
    assert!(is_irreducible(&poly(3, "X^2 + 1")));
    let fm = factor(&poly(5, "X^2 + 1")).unwrap();
    let mut got: Vec<_> = fm.factors.iter().map(|(f, k)| (f.clone(), *k)).collect();
    got.sort_by_key(|(f, _)| f.coeffs().to_vec());
    assert_eq!(got, vec![(poly(5, "X + 2"), 1), (poly(5, "X + 3"), 1)]);

    // X^4 + 1 over F_3 has no root, and trial division by all monic
    // quadratics finds exactly the two factors below
    let quadratics: Vec<Vec<u64>> = (0..9u64)
        .map(|code| vec![code % 3, code / 3, 1])
        .filter(|g| common::poly_rem(&[1, 0, 0, 0, 1], g, 3).is_empty())
        .collect();
    assert_eq!(quadratics, vec![vec![2, 1, 1], vec![2, 2, 1]]);
    let fm = factor(&poly(3, "X^4 + 1")).unwrap();
    let mut got: Vec<_> = fm.factors.iter().map(|(f, _)| f.coeffs().to_vec()).collect();
    got.sort();
    assert_eq!(got, quadratics);
}

#[test]
fn roots_examples() {
    assert_eq!(poly(5, "X^2 + 1").eval(&2), 0);
    assert!(PrimeField::roots_in_field(&poly(3, "X^2 + 1")).is_empty());
    let f = poly(5, "X^3 - X");
    let by_evaluation: Vec<u64> = (0..5).filter(|&x| common::eval(f.coeffs(), x, 5) == 0).collect();
    assert_eq!(by_evaluation, vec![0, 1, 4]);
    assert_eq!(PrimeField::roots_in_field(&f), by_evaluation);
}

#[test]
fn text_grammar_round_trips() {
    for s in ["0", "1", "X", "-X + 3", "2*X^5 + X^2 - 7", "X^10"] {
        let f = Polynomial::parse(Rationals, s).unwrap();
        assert_eq!(f.to_string(), s);
        assert_eq!(Polynomial::parse(Rationals, &f.to_string()).unwrap(), f);
    }
    let f = Polynomial::parse(Rationals, "1/2*X^2 - 3/4").unwrap();
    assert_eq!(Polynomial::parse(Rationals, &f.to_string()).unwrap(), f);
}

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7])
}

fn poly_over(p: u64, max_len: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0..p, 0..=max_len)
}

fn prime_and_polys(max_len: usize) -> impl Strategy<Value = (u64, Vec<u64>, Vec<u64>)> {
    small_prime().prop_flat_map(move |p| (Just(p), poly_over(p, max_len), poly_over(p, max_len)))
}

proptest! {
    #[test]
    fn gcd_divides_both((p, f, g) in prime_and_polys(8)) {
        let (f, g) = (Polynomial::new(fp(p), f), Polynomial::new(fp(p), g));
        let d = poly_gcd(&f, &g).unwrap();
        if !d.is_zero() {
            prop_assert!(f.rem(&d).unwrap().is_zero());
            prop_assert!(g.rem(&d).unwrap().is_zero());
            prop_assert_eq!(d.coeffs().to_vec(), common::poly_gcd(f.coeffs(), g.coeffs(), p));
        } else {
            prop_assert!(f.is_zero() && g.is_zero());
        }
    }

    #[test]
    fn cofactors_resubstitute((p, f, g) in prime_and_polys(8)) {
        let (f, g) = (Polynomial::new(fp(p), f), Polynomial::new(fp(p), g));
        prop_assume!(!(f.is_zero() && g.is_zero()));
        let (d, u, v) = extended_gcd(&f, &g).unwrap();
        prop_assert_eq!(&(&u * &f) + &(&v * &g), d);
    }

    #[test]
    fn irreducibility_matches_trial_division((p, f, _) in prime_and_polys(7)) {
        let f = Polynomial::new(fp(p), f);
        prop_assume!(!f.is_zero());
        prop_assert_eq!(is_irreducible(&f), common::trial_division_irreducible(f.coeffs(), p));
    }

    #[test]
    fn factorization_remultiplies((p, f, _) in prime_and_polys(9)) {
        let f = Polynomial::new(fp(p), f);
        prop_assume!(!f.is_zero());
        let fm = factor(&f).unwrap();
        prop_assert_eq!(fm.expand(&fp(p)), f);
        for (g, _) in &fm.factors {
            prop_assert!(g.is_monic());
            prop_assert!(common::trial_division_irreducible(g.coeffs(), p));
        }
    }

    #[test]
    fn separable_iff_discriminant_nonzero((p, f, _) in prime_and_polys(7)) {
        let f = Polynomial::new(fp(p), f);
        prop_assume!(f.degree().is_some_and(|d| d >= 1));
        if f.derivative().is_zero() {
            prop_assert!(!is_separable(&f));
        } else if f.degree() >= Some(2) {
            prop_assert_eq!(is_separable(&f), discriminant(&f).unwrap() != 0);
        }
        // separable means no repeated factor
        let oracle = common::poly_gcd(f.coeffs(), &common::derivative(f.coeffs(), p), p).len() == 1;
        prop_assert_eq!(is_separable(&f), oracle);
    }

    #[test]
    fn prime_field_text_round_trips((p, f, _) in prime_and_polys(8)) {
        let f = Polynomial::new(fp(p), f);
        prop_assert_eq!(Polynomial::parse(fp(p), &f.to_string()).unwrap(), f);
    }

    #[test]
    fn rational_text_round_trips(c in prop::collection::vec((-50i64..50, 1i64..20), 0..6)) {
        let coeffs = c.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect();
        let f = Polynomial::new(Rationals, coeffs);
        prop_assert_eq!(Polynomial::parse(Rationals, &f.to_string()).unwrap(), f);
    }
}
