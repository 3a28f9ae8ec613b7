//! Randomized algebraic property checks for the exact polynomial layer.

use freediv::poly::{
    gcd, generic_general, generic_skew, is_squarefree, rat, squarefree_part, v, Polynomial,
};
use proptest::prelude::*;

/// A term `c · a_{i,j}^e` with small indices and exponents.
fn term_strategy() -> impl Strategy<Value = Polynomial> {
    (1u32..=3, 1u32..=3, 0u32..=2, -5i64..=5).prop_map(|(i, j, e, c)| {
        Polynomial::var(v(i, j)).pow(e).scale(&rat(c))
    })
}

fn poly_strategy() -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec(term_strategy(), 0..5)
        .prop_map(|terms| terms.iter().fold(Polynomial::zero(), |acc, t| acc.add(t)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_commutes(f in poly_strategy(), g in poly_strategy()) {
        prop_assert_eq!(f.add(&g), g.add(&f));
    }

    #[test]
    fn addition_associates(
        f in poly_strategy(),
        g in poly_strategy(),
        h in poly_strategy(),
    ) {
        prop_assert_eq!(f.add(&g).add(&h), f.add(&g.add(&h)));
    }

    #[test]
    fn multiplication_commutes(f in poly_strategy(), g in poly_strategy()) {
        prop_assert_eq!(f.mul(&g), g.mul(&f));
    }

    #[test]
    fn multiplication_associates(
        f in poly_strategy(),
        g in poly_strategy(),
        h in poly_strategy(),
    ) {
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
    }

    #[test]
    fn multiplication_distributes(
        f in poly_strategy(),
        g in poly_strategy(),
        h in poly_strategy(),
    ) {
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
    }

    #[test]
    fn negation_is_additive_inverse(f in poly_strategy()) {
        prop_assert!(f.add(&f.neg()).is_zero());
    }

    #[test]
    fn derivative_satisfies_leibniz(f in poly_strategy(), g in poly_strategy()) {
        let x = v(1, 1);
        let lhs = f.mul(&g).derivative(x);
        let rhs = f.derivative(x).mul(&g).add(&f.mul(&g.derivative(x)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gcd_divides_both_arguments(f in poly_strategy(), g in poly_strategy()) {
        if f.is_zero() && g.is_zero() {
            return Ok(());
        }
        let d = gcd(&f, &g);
        if !f.is_zero() {
            prop_assert!(f.exact_div(&d).is_some());
        }
        if !g.is_zero() {
            prop_assert!(g.exact_div(&d).is_some());
        }
    }

    #[test]
    fn common_factor_appears_in_gcd(
        f in poly_strategy(),
        g in poly_strategy(),
        h in poly_strategy(),
    ) {
        if h.is_zero() || (f.is_zero() && g.is_zero()) {
            return Ok(());
        }
        let d = gcd(&f.mul(&h), &g.mul(&h));
        prop_assert!(d.exact_div(&h).is_some());
    }

    #[test]
    fn squarefree_part_divides_and_is_squarefree(f in poly_strategy()) {
        if f.is_zero() || f.is_constant() {
            return Ok(());
        }
        let s = squarefree_part(&f).unwrap();
        prop_assert!(f.exact_div(&s).is_some());
        prop_assert!(is_squarefree(&s).unwrap());
        // Squaring any nonconstant factor must destroy squarefreeness.
        prop_assert!(!is_squarefree(&f.mul(&s)).unwrap());
    }

    #[test]
    fn exact_division_round_trips(f in poly_strategy(), g in poly_strategy()) {
        if f.is_zero() || g.is_zero() {
            return Ok(());
        }
        let p = f.mul(&g);
        let q = p.exact_div(&g).unwrap();
        prop_assert_eq!(q, f);
    }

    #[test]
    fn constant_multiple_detection(f in poly_strategy(), c in 1i64..=7) {
        if f.is_zero() {
            return Ok(());
        }
        let g = f.scale(&rat(c));
        prop_assert_eq!(g.constant_multiple_of(&f), Some(rat(c)));
        prop_assert!(g.eq_up_to_constant(&f));
    }
}

#[test]
fn pfaffian_square_equals_determinant_small() {
    for m in 1..=6usize {
        let a = generic_skew(m);
        let pf = a.pfaffian().unwrap();
        let det = a.determinant().unwrap();
        assert!(pf.mul(&pf).sub(&det).is_zero(), "size {}", m);
    }
}

#[test]
fn bareiss_agrees_with_cofactor_expansion() {
    for m in 1..=4usize {
        let a = generic_general(m, m);
        assert_eq!(
            a.determinant().unwrap(),
            a.determinant_cofactor().unwrap(),
            "size {}",
            m
        );
    }
}

#[test]
fn determinant_is_alternating_and_multilinear_spotcheck() {
    // Swapping two rows flips the sign.
    let a = generic_general(3, 3);
    let mut b = freediv::poly::PolyMatrix::zero(3, 3);
    for i in 0..3 {
        for j in 0..3 {
            let src = match i {
                0 => 1,
                1 => 0,
                _ => 2,
            };
            *b.at_mut(i, j) = a.at(src, j).clone();
        }
    }
    assert_eq!(
        a.determinant().unwrap(),
        b.determinant().unwrap().neg()
    );
}
