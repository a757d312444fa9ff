//! Randomized property tests for the exact arithmetic layer: field axioms
//! over random cyclotomic contexts, the floating-point embedding as an
//! approximate homomorphism, and exact trigonometric identities.

use num::{BigInt, BigRational};
use proptest::prelude::*;

use gauss_analogue::characters::{jacobi_symbol, Character};
use gauss_analogue::cyclotomic::{
    from_cos, from_sin, make_context, sqrt_k_element, CycloElement, Rational,
};

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Build an element of Q(ζ_M) from a seed vector of small rationals.
fn element_from_seed(m: u64, seed: &[(i8, u8)]) -> CycloElement {
    let ctx = make_context(m).unwrap();
    let mut acc = CycloElement::zero(&ctx);
    for (e, &(num, den)) in seed.iter().enumerate().take(ctx.degree()) {
        let den = (den % 9 + 1) as i64;
        let r = rat(num as i64, den);
        let term = CycloElement::zeta_pow(&ctx, e as i64).scale(&r);
        acc = &acc + &term;
    }
    acc
}

fn seed_vec() -> impl Strategy<Value = Vec<(i8, u8)>> {
    prop::collection::vec((any::<i8>().prop_map(|x| x % 10), any::<u8>()), 8..32)
}

// sparse seeds keep the extended-Euclid inversions cheap at degree ~100
fn sparse_seed_vec() -> impl Strategy<Value = Vec<(i8, u8)>> {
    prop::collection::vec((any::<i8>().prop_map(|x| x % 4), any::<u8>()), 3..10)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mul_is_associative_and_commutative(
        m in 1u64..=120,
        sa in seed_vec(),
        sb in seed_vec(),
        sc in seed_vec(),
    ) {
        let a = element_from_seed(m, &sa);
        let b = element_from_seed(m, &sb);
        let c = element_from_seed(m, &sc);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn mul_distributes_over_add(
        m in 1u64..=120,
        sa in seed_vec(),
        sb in seed_vec(),
        sc in seed_vec(),
    ) {
        let a = element_from_seed(m, &sa);
        let b = element_from_seed(m, &sb);
        let c = element_from_seed(m, &sc);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn nonzero_elements_invert(m in 1u64..=120, sa in sparse_seed_vec()) {
        let a = element_from_seed(m, &sa);
        prop_assume!(!a.is_zero());
        let inv = a.inv().unwrap();
        let ctx = a.context().clone();
        prop_assert_eq!(&a * &inv, CycloElement::one(&ctx));
    }

    #[test]
    fn float_embedding_is_multiplicative(
        m in 1u64..=120,
        sa in seed_vec(),
        sb in seed_vec(),
    ) {
        let a = element_from_seed(m, &sa);
        let b = element_from_seed(m, &sb);
        let prod = (&a * &b).to_complex();
        let sep = a.to_complex() * b.to_complex();
        prop_assert!((prod - sep).norm() < 1e-9, "|{prod} - {sep}|");
    }

    #[test]
    fn float_embedding_is_additive(
        m in 1u64..=120,
        sa in seed_vec(),
        sb in seed_vec(),
    ) {
        let a = element_from_seed(m, &sa);
        let b = element_from_seed(m, &sb);
        let sum = (&a + &b).to_complex();
        let sep = a.to_complex() + b.to_complex();
        prop_assert!((sum - sep).norm() < 1e-9);
    }

    #[test]
    fn jacobi_is_completely_multiplicative(
        k in (1u64..=30).prop_map(|x| 2 * x + 1),
        n in -100i64..100,
        m in -100i64..100,
    ) {
        let lhs = jacobi_symbol(n * m, k).unwrap();
        let rhs = jacobi_symbol(n, k).unwrap() * jacobi_symbol(m, k).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn pythagorean_identity_exact() {
    for k in (3u64..=29).step_by(2) {
        let ctx = make_context(4 * k).unwrap();
        for a in 1..k as i64 {
            let s = from_sin(a, k, &ctx).unwrap();
            let c = from_cos(a, k, &ctx).unwrap();
            assert_eq!(
                &s.pow(2) + &c.pow(2),
                CycloElement::one(&ctx),
                "sin^2 + cos^2 at {a}pi/{k}"
            );
        }
    }
}

#[test]
fn double_angle_exact() {
    for k in (3u64..=29).step_by(2) {
        let ctx = make_context(4 * k).unwrap();
        for a in 1..k as i64 {
            let lhs = from_sin(2 * a, k, &ctx).unwrap();
            let rhs =
                (&from_sin(a, k, &ctx).unwrap() * &from_cos(a, k, &ctx).unwrap()).scale(&rat(2, 1));
            assert_eq!(lhs, rhs, "sin(2a) at a = {a}pi/{k}");
        }
    }
}

#[test]
fn sqrt_k_square_and_sign() {
    for k in (3u64..=59).step_by(2) {
        if !gauss_analogue::characters::is_squarefree(k) {
            continue;
        }
        let ctx = make_context(4 * k).unwrap();
        let s = sqrt_k_element(k, &ctx).unwrap();
        assert_eq!(s.pow(2), CycloElement::from_integer(&ctx, k as i64));
        let z = s.to_complex();
        assert!(z.re > 0.0, "sqrt({k}) must embed positive");
        assert!(z.im.abs() < 1e-9, "sqrt({k}) must embed real");
        assert!((z.re - (k as f64).sqrt()).abs() < 1e-9);
    }
}

#[test]
fn character_tables_are_primitive_across_range() {
    for k in (3u64..=59).step_by(2) {
        if !gauss_analogue::characters::is_squarefree(k) {
            continue;
        }
        let chi = Character::build_real_primitive(k).unwrap();
        assert!(
            gauss_analogue::characters::check_primitive_factorization(&chi).unwrap(),
            "factorization fails for k = {k}"
        );
    }
}

#[test]
fn float_embedding_handles_rational_coefficients() {
    let ctx = make_context(12).unwrap();
    let x = CycloElement::from_rational(&ctx, BigRational::new(BigInt::from(7), BigInt::from(3)));
    let z = x.to_complex();
    assert!((z.re - 7.0 / 3.0).abs() < 1e-12 && z.im.abs() < 1e-12);
}
