mod common;

use common::{p, walker};
use proptest::prelude::*;
use walkerspin::geometry::WalkerGeometry;
use walkerspin::poly::RatFun;
use walkerspin::sample::test_metrics;
use walkerspin::spin::{exterior_residuals, spin_coefficients_from_tetrad, transform_coefficients, walker_closed_form, Coef};

fn routes_agree(g: &WalkerGeometry) -> bool {
    let t = spin_coefficients_from_tetrad(&g.christoffel, &g.tensor, &g.tetrad).unwrap();
    t.diff(&g.coefficients).iter().all(|(_, r)| r.is_zero())
}

proptest! {
    #![proptest_config(common::proptest_config(10))]

    #[test]
    fn closed_form_matches_tetrad_route(seed in any::<u64>()) {
        let g = WalkerGeometry::new(test_metrics(1, 4, seed)[0].clone());
        prop_assert!(routes_agree(&g));
    }

    #[test]
    fn exterior_derivatives_vanish(seed in any::<u64>()) {
        let g = WalkerGeometry::new(test_metrics(1, 4, seed)[0].clone());
        prop_assert!(exterior_residuals(&g.tensor, &g.tetrad, &g.coefficients).iter().all(|(_, r)| r.is_zero()));
    }

    #[test]
    fn spin_frame_identities(seed in any::<u64>()) {
        let s = walker_closed_form(&test_metrics(1, 4, seed)[0]);
        prop_assert!(s.spin_frame_residuals().iter().all(|(_, r)| r.is_zero()));
    }
}

#[test]
fn frozen_coefficients_of_a_reference_metric() {
    let s = walker_closed_form(&walker("u*x + v^2", "x*y - u*v", "y^2"));
    let expected = [
        ("sig", "1/2*v"),
        ("bet", "-1/4*u"),
        ("gam", "1/4*x"),
        ("kap'", "-v"),
        ("eps'", "-1/4*x"),
        ("alp'", "-1/4*u"),
        ("alp~", "1/4*u"),
        ("gam~", "1/4*x"),
        ("kap~'", "1/2*u*v^2 - 1/2*v*x*y - 1/4*x*y^2"),
        ("sig~'", "-1/4*u*v*x - 1/4*u*y^2 - 1/4*v^3 + 1/2*y"),
        ("eps~'", "-1/4*x"),
        ("bet~'", "1/4*u"),
    ];
    let nonzero: Vec<(String, String)> = s.nonzero().into_iter().map(|(c, v)| (c.ascii(), v.to_string())).collect();
    let expected: Vec<(String, String)> = expected.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    assert_eq!(nonzero, expected);
}

#[test]
fn shear_of_the_pure_b_metric() {
    // b = u^3 gives sigma = -b_u / 2.
    let s = walker_closed_form(&walker("0", "u^3", "0"));
    assert_eq!(s.by_name("sig"), &RatFun::from(&p("-3/2*u^2")));
    for n in ["kap", "rho", "tau", "kap~", "rho~", "sig~", "tau~"] {
        assert!(s.by_name(n).is_zero(), "{n}");
    }
}

#[test]
fn flat_metric_has_no_coefficients() {
    let s = walker_closed_form(&walker("0", "0", "0"));
    assert_eq!(s.nonzero().len(), 0);
}

#[test]
fn coefficient_names_round_trip() {
    for c in Coef::all() {
        assert_eq!(Coef::parse(&c.ascii()), Some(c));
        assert_eq!(c.prime().prime(), c);
        assert_eq!(c.tilde().tilde(), c);
    }
    assert_eq!(Coef::all().count(), 32);
    assert!(Coef::parse("zeta").is_none());
}

#[test]
fn transformation_law_matches_recomputation() {
    let frames = [("1 + x", "2", "y", "u - v"), ("3", "1 + y", "x", "v")];
    for (w, (lam, lamt, mu, mut_)) in test_metrics(2, 3, 21).into_iter().zip(frames) {
        let g = WalkerGeometry::new(w);
        let [lam, lamt, mu, mut_] = [lam, lamt, mu, mut_].map(|s| RatFun::from(&p(s)));
        let t2 = g.tetrad.transform(&lam, &lamt, &mu, &mut_).unwrap();
        let direct = spin_coefficients_from_tetrad(&g.christoffel, &g.tensor, &t2).unwrap();
        for (c, v) in transform_coefficients(&g.coefficients, &lam, &lamt, &mu, &mut_).unwrap() {
            assert_eq!(&v, direct.get(c), "{}", c.ascii());
        }
    }
}
