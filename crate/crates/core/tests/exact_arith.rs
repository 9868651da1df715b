//! Field axioms, embedding and parsing properties of cyclotomic numbers.

mod common;

use common::strategies::{element, triple, ORDERS};
use minimal_fusion::exact_arith::{
    cyclotomic_polynomial, embed, radical_string, ratio, recognize, totient, zeta,
    CyclotomicNumber, Rational,
};
use minimal_fusion::Error;
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::strategy::ValueTree;

fn order_and_element() -> impl Strategy<Value = (u32, CyclotomicNumber)> {
    prop::sample::select(ORDERS.to_vec()).prop_flat_map(|n| (Just(n), element(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn addition_is_associative_and_commutative((_, x, y, z) in triple()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x + &y, &y + &x);
    }

    #[test]
    fn multiplication_distributes((_, x, y, z) in triple()) {
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
    }

    #[test]
    fn identities_and_negation((n, x) in order_and_element()) {
        prop_assert_eq!(&x + &CyclotomicNumber::zero(n), x.clone());
        prop_assert_eq!(&x * &CyclotomicNumber::one(n), x.clone());
        prop_assert!((&x + &(-&x)).is_zero());
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn nonzero_elements_invert((_, x) in order_and_element()) {
        if x.is_zero() {
            prop_assert_eq!(x.inv(), Err(Error::DivisionByZero));
        } else {
            let inv = x.inv().unwrap();
            prop_assert!((&x * &inv).is_one());
            prop_assert_eq!(inv.inv().unwrap(), x);
        }
    }

    #[test]
    fn embedding_is_a_ring_homomorphism((_, x, y, _z) in triple()) {
        let (ex, ey) = (x.approx(), y.approx());
        prop_assert!((&x * &y).approx().agrees_with(&(ex * ey), 0.0));
        prop_assert!((&x + &y).approx().agrees_with(&(ex + ey), 0.0));
    }

    #[test]
    fn conjugation_is_multiplicative_and_matches_embedding((_, x, y, _z) in triple()) {
        prop_assert_eq!((&x * &y).conj(), x.conj() * y.conj());
        prop_assert!(x.conj().approx().agrees_with(&x.approx().conj(), 0.0));
        prop_assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn zeta_is_independent_of_order(n in 1u32..60, k in -200i64..200, t in 1u32..6) {
        prop_assert_eq!(zeta(n, k), zeta(n * t, k * i64::from(t)));
        prop_assert_eq!(zeta(n, k).promote(n * t).unwrap(), zeta(n * t, k * i64::from(t)));
    }

    #[test]
    fn display_round_trips((_, x) in order_and_element()) {
        let parsed: CyclotomicNumber = x.to_string().parse().unwrap();
        prop_assert_eq!(parsed.order(), x.order());
        prop_assert_eq!(parsed, x);
    }

    #[test]
    fn galois_action_is_a_ring_map((n, x, y, _z) in triple(), k in 1i64..100) {
        let k = (0..).map(|j| k + j).find(|c| num_integer::gcd(*c, i64::from(n)) == 1).unwrap();
        let g = |v: &CyclotomicNumber| v.galois(k).unwrap();
        prop_assert_eq!(g(&(&x * &y)), g(&x) * g(&y));
        prop_assert_eq!(g(&(&x + &y)), g(&x) + g(&y));
    }

    #[test]
    fn radicals_are_recognised(c in prop::collection::vec(-5i64..=5, 8), d in 1i64..=4) {
        let s2 = zeta(8, 1) + zeta(8, 7);
        let s3 = zeta(12, 1) + zeta(12, 11);
        let basis = [CyclotomicNumber::one(1), s2.clone(), s3.clone(), &s2 * &s3];
        let i = zeta(4, 1);
        let x = (0..4).fold(CyclotomicNumber::zero(24), |acc, k| {
            acc + basis[k].scale(&ratio(c[k], d)) + (&basis[k] * &i).scale(&ratio(c[k + 4], d))
        });
        let form = recognize(&x).unwrap();
        for k in 0..4 {
            prop_assert_eq!(&form.re[k], &ratio(c[k], d));
            prop_assert_eq!(&form.im[k], &ratio(c[k + 4], d));
        }
    }
}

#[test]
fn thousand_products_at_order_224_embed_consistently() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let strat = (element(224), element(224));
    for _ in 0..1000 {
        let (a, b) = strat.new_tree(&mut runner).unwrap().current();
        let product = (&a * &b).approx();
        assert!(
            product.agrees_with(&(a.approx() * b.approx()), 0.0),
            "{a} · {b}"
        );
    }
}

#[test]
fn spot_values() {
    assert_eq!(
        zeta(4, 1) * zeta(4, 1),
        CyclotomicNumber::from_integer(4, -1)
    );
    let s2 = (zeta(8, 1) + zeta(8, 7)).approx();
    assert!((s2.re - std::f64::consts::SQRT_2).abs() < 1e-12 && s2.im.abs() < 1e-12);
    let y = zeta(8, 7).approx();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert!((y.re - h).abs() < 1e-12 && (y.im + h).abs() < 1e-12);
    assert_eq!(zeta(3, 1) * zeta(3, 2), CyclotomicNumber::one(3));
    let one = CyclotomicNumber::one(3);
    assert_eq!((&one + zeta(3, 1)).inv().unwrap(), &one + zeta(3, 2));
    assert_eq!(zeta(6, 1), &one + zeta(3, 1));
    assert_eq!(zeta(224, 224), CyclotomicNumber::one(224));
    assert_eq!(embed(&CyclotomicNumber::one(5), 53).re, 1.0);
}

#[test]
fn cyclotomic_polynomial_vanishes_at_zeta() {
    for n in [1u32, 2, 7, 8, 12, 24, 224] {
        let phi = cyclotomic_polynomial(n);
        assert_eq!(phi.len() - 1, totient(n) as usize);
        let value = phi
            .iter()
            .enumerate()
            .fold(CyclotomicNumber::zero(n), |acc, (k, c)| {
                acc + zeta(n, k as i64).scale(&Rational::from_integer(c.clone()))
            });
        assert!(value.is_zero(), "Φ_{n}(ζ_{n}) ≠ 0");
    }
    assert_eq!(totient(224), 96);
    assert_eq!(totient(528), 160);
    assert_eq!(
        cyclotomic_polynomial(4),
        vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)]
    );
}

#[test]
fn high_precision_embedding_agrees() {
    let x = zeta(528, 37) + zeta(528, 5).scale(&ratio(-3, 7));
    let lo = x.approx();
    let hi = x.embed(200);
    assert!(lo.agrees_with(&hi, 1e-12));
    assert!(hi.error_bound <= lo.error_bound);
}

#[test]
fn radical_strings_for_lemma_constants() {
    let s2 = zeta(8, 1) + zeta(8, 7);
    let one = CyclotomicNumber::one(8);
    let i = zeta(8, 2);
    assert_eq!(radical_string(&(&one + &i)).unwrap(), "1 + i");
    assert_eq!(radical_string(&((&s2 - &one) * &i)).unwrap(), "(√2 - 1)·i");
    assert!(radical_string(&zeta(5, 1)).is_none());
}
