mod common;

use common::{eval_f64, p};
use proptest::prelude::*;
use walkerspin::poly::{q, q_to_f64, Poly, RatFun, Var, Q};
use walkerspin::sample::{random_poly, rng};

fn arb_poly() -> impl Strategy<Value = Poly> {
    (any::<u64>(), 0u32..4, 1usize..5).prop_map(|(seed, deg, terms)| random_poly(&mut rng(seed), deg, terms))
}

fn arb_point() -> impl Strategy<Value = [Q; 4]> {
    prop::array::uniform4((-6i64..=6, 1i64..=4)).prop_map(|a| a.map(|(n, d)| q(n, d)))
}

proptest! {
    #![proptest_config(common::proptest_config(64))]

    #[test]
    fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn leibniz_rule(a in arb_poly(), b in arb_poly(), k in 0usize..4) {
        let v = Var::from_index(k);
        prop_assert_eq!((&a * &b).diff(v), &(&a.diff(v) * &b) + &(&a * &b.diff(v)));
    }

    #[test]
    fn partials_commute(a in arb_poly(), i in 0usize..4, j in 0usize..4) {
        let (vi, vj) = (Var::from_index(i), Var::from_index(j));
        prop_assert_eq!(a.diff(vi).diff(vj), a.diff(vj).diff(vi));
    }

    #[test]
    fn display_round_trips(a in arb_poly()) {
        let back: Poly = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in arb_poly(), b in arb_poly(), x in arb_point()) {
        prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
    }

    #[test]
    fn exact_evaluation_matches_floating_point(a in arb_poly(), x in arb_point()) {
        let exact = q_to_f64(&a.eval(&x));
        let approx = eval_f64(&a, x.clone().map(|c| q_to_f64(&c)));
        prop_assert!((exact - approx).abs() <= 1e-9 * (1.0 + exact.abs()));
    }

    #[test]
    fn exact_division_inverts_multiplication(a in arb_poly(), b in arb_poly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
    }

    #[test]
    fn rational_functions_normalize(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assume!(!b.is_zero() && !c.is_zero());
        let f = RatFun::new(&a * &c, &b * &c);
        prop_assert_eq!(f, RatFun::new(a.clone(), b.clone()));
    }

    #[test]
    fn quotient_rule(a in arb_poly(), b in arb_poly(), k in 0usize..4) {
        prop_assume!(!b.is_zero());
        let v = Var::from_index(k);
        let f = RatFun::new(a.clone(), b.clone());
        let expected = RatFun::new(&(&a.diff(v) * &b) - &(&a * &b.diff(v)), &b * &b);
        prop_assert_eq!(f.diff(v), expected);
    }
}

#[test]
fn parses_rational_literals_and_powers() {
    let a = p("1/4*u^2*v^2 - 3*x*y + 2");
    assert_eq!(a.coeff(&[2, 2, 0, 0]), q(1, 4));
    assert_eq!(a.coeff(&[0, 0, 1, 1]), q(-3, 1));
    assert_eq!(a.eval(&[q(2, 1), q(1, 1), q(1, 1), q(1, 1)]), q(0, 1));
    assert_eq!(p("(u+v)^2"), p("u^2 + 2*u*v + v^2"));
}

#[test]
fn division_by_a_variable_is_rejected() {
    assert!("u/v".parse::<Poly>().is_err());
    assert!("u^2*v^2/4".parse::<Poly>().is_err());
    assert!("u^".parse::<Poly>().is_err());
}

#[test]
fn rational_function_evaluation_detects_poles() {
    let f = RatFun::new(p("u"), p("u - v"));
    assert_eq!(f.eval(&[q(1, 1), q(1, 1), q(0, 1), q(0, 1)]), None);
    assert_eq!(f.eval(&[q(2, 1), q(1, 1), q(0, 1), q(0, 1)]), Some(q(2, 1)));
    assert_eq!(RatFun::new(p("u^2 - v^2"), p("u - v")), RatFun::from(&p("u + v")));
}
