mod common;

use common::{p, walker};
use proptest::prelude::*;
use walkerspin::geometry::WalkerGeometry;
use walkerspin::heavenly::{build_metric, HeavenlyPotential};
use walkerspin::nullgeom::{
    alpha_integrability_residual, classify_type_iii, frobenius_check, ggst_condition_iii, gradient_square, kerr_check,
    lambda_from_eta, omega_divergence_residual, relation_suite, ricci_conditions, s_and_t_forms, wps_tests,
    NullGeomError, OneForm, PrimedSpinorField,
};
use walkerspin::poly::{Poly, RatFun};
use walkerspin::sample::test_metrics;
use walkerspin::walker::WalkerMetric;

fn spinor(a: &str, b: &str) -> PrimedSpinorField {
    PrimedSpinorField::new(p(a), p(b)).expect("nonzero spinor")
}

fn strs(f: &OneForm) -> Vec<String> {
    f.0.iter().map(|c| c.to_string()).collect()
}

/// Metric / spinor pairs whose null distribution is integrable.
fn integrable_cases() -> Vec<(WalkerMetric, PrimedSpinorField)> {
    vec![
        (WalkerMetric::flat(), spinor("u", "-y")),
        (walker("x^2", "0", "0"), spinor("v", "x")),
        (walker("v^2", "0", "0"), spinor("v", "x")),
        (walker("u*x", "0", "0"), spinor("u", "-y")),
        (walker("0", "v*y", "0"), spinor("v", "x")),
    ]
}

proptest! {
    #![proptest_config(common::proptest_config(8))]

    #[test]
    fn walker_spinor_is_parallel_up_to_scale(seed in any::<u64>()) {
        let g = WalkerGeometry::new(test_metrics(1, 4, seed)[0].clone());
        let pi = PrimedSpinorField::walker();
        prop_assert!(alpha_integrability_residual(&pi, &g).is_zero());
        let f = s_and_t_forms(&pi, &g).unwrap();
        prop_assert!(f.s.is_zero());
        prop_assert!(f.eta.is_zero());
        prop_assert!(relation_suite(&g.coefficients, &g.curvature, "walker-tilde").unwrap().iter().all(|(_, r)| r.is_zero()));
    }

    #[test]
    fn adapted_frame_relations(seed in any::<u64>()) {
        let g = WalkerGeometry::new(test_metrics(1, 4, seed)[0].clone());
        for suite in ["walker-frame", "flat-alpha", "walker-tilde", "type3-affine", "spin-frame"] {
            let r = relation_suite(&g.coefficients, &g.curvature, suite).unwrap();
            prop_assert!(r.iter().all(|(_, x)| x.is_zero()), "{}", suite);
        }
    }

    #[test]
    fn coordinate_and_spinor_ricci_null_agree(seed in any::<u64>()) {
        let w = test_metrics(1, 3, seed)[0].clone();
        let g = WalkerGeometry::new(w.clone());
        let rc = ricci_conditions(&PrimedSpinorField::walker(), &g.curvature, Some(&w));
        prop_assert!(rc.coordinate_route.unwrap().1);
    }

    #[test]
    fn type_iii_consequences_hold(seed in any::<u64>()) {
        let g = WalkerGeometry::new(test_metrics(1, 3, seed)[0].clone());
        let f = classify_type_iii(&g.coefficients, &g.curvature);
        if let Some(c) = f.auto_parallel_consequences {
            prop_assert!(c.holds);
        }
        if let Some(c) = f.parallel_consequences {
            prop_assert!(c.holds);
        }
    }

    #[test]
    fn coordinate_plane_forms_are_closed(seed in any::<u64>(), k in 0usize..4) {
        let _ = seed;
        let f = OneForm::gradient(&Poly::var(walkerspin::poly::Var::from_index(k)));
        prop_assert!(frobenius_check(&f).iter().all(|r| r.is_zero()));
    }
}

#[test]
fn flat_space_example() {
    let g = WalkerGeometry::new(WalkerMetric::flat());
    let pi = spinor("u", "-y");
    let f = s_and_t_forms(&pi, &g).unwrap();
    assert_eq!(strs(&f.s), ["y", "0", "0", "-u"]);
    let k = kerr_check(&pi, &g).unwrap();
    assert!(k.conclusion.iter().all(|c| c.is_zero()));
    assert!(k.consistent);
}

#[test]
fn non_integrable_spinor_is_rejected() {
    let g = WalkerGeometry::new(WalkerMetric::flat());
    let pi = spinor("1", "u");
    assert!(!alpha_integrability_residual(&pi, &g).is_zero());
    assert!(matches!(s_and_t_forms(&pi, &g), Err(NullGeomError::NotIntegrable)));
}

#[test]
fn zero_spinor_is_rejected() {
    assert!(matches!(PrimedSpinorField::new(Poly::zero(), Poly::zero()), Err(NullGeomError::ZeroSpinor)));
}

#[test]
fn walker_spinor_has_no_kerr_form() {
    let g = WalkerGeometry::new(walker("u*x", "y^2", "v"));
    assert!(matches!(kerr_check(&PrimedSpinorField::walker(), &g), Err(NullGeomError::WalkerCase)));
}

#[test]
fn integrable_cases_factor_and_satisfy_divergence_identity() {
    for (w, pi) in integrable_cases() {
        let g = WalkerGeometry::new(w.clone());
        assert!(alpha_integrability_residual(&pi, &g).is_zero(), "{w:?}");
        let f = s_and_t_forms(&pi, &g).unwrap();
        assert!(omega_divergence_residual(&pi, &g, &f).is_zero(), "{w:?}");
        assert!(kerr_check(&pi, &g).unwrap().consistent, "{w:?}");
    }
}

#[test]
fn gradient_square_vanishes_identically() {
    for (w, pi) in integrable_cases() {
        let g = WalkerGeometry::new(w);
        let f = s_and_t_forms(&pi, &g).unwrap();
        let gs = gradient_square(&pi, &g, &f);
        assert!(gs.lhs.is_zero());
    }
}

#[test]
fn eta_omega_product_can_be_nonzero() {
    let g = WalkerGeometry::new(walker("u*x", "0", "0"));
    let pi = spinor("u", "-y");
    let f = s_and_t_forms(&pi, &g).unwrap();
    let gs = gradient_square(&pi, &g, &f);
    assert!(gs.lhs.is_zero());
    assert_eq!(gs.rhs, RatFun::from(&p("1/2*x*y")));
}

#[test]
fn rescaling_the_spinor() {
    for (w, pi) in integrable_cases() {
        let g = WalkerGeometry::new(w);
        let f = s_and_t_forms(&pi, &g).unwrap();
        for k in [p("3"), p("1 + x^2")] {
            let scaled = pi.scaled(&k);
            let fk = s_and_t_forms(&scaled, &g).unwrap();
            let k = RatFun::from(&k);
            let k2 = &k * &k;
            let expected: Vec<RatFun> = f.s.0.iter().map(|c| &k2 * c).collect();
            assert_eq!(fk.s.0.to_vec(), expected);
        }
        let three = RatFun::int(3);
        let fk = s_and_t_forms(&pi.scaled(&p("3")), &g).unwrap();
        assert_eq!(fk.omega, f.omega.scale(&three));
    }
}

#[test]
fn triple_contraction_routes_agree_for_integrable_spinors() {
    for (w, pi) in integrable_cases() {
        let g = WalkerGeometry::new(w);
        let f = s_and_t_forms(&pi, &g).unwrap();
        let wps = wps_tests(&pi, &g.curvature);
        let via_eta = lambda_from_eta(&pi, &g, &f);
        assert_eq!(via_eta, wps.lambda);
    }
}

#[test]
fn ggst_third_condition_on_an_einstein_example() {
    let w = build_metric(&HeavenlyPotential::from_theta(p("u*v*x"))).unwrap();
    let g = WalkerGeometry::new(w);
    for q in 2..=4 {
        assert!(ggst_condition_iii(&PrimedSpinorField::walker(), q, &g).unwrap().is_zero(), "q = {q}");
    }
    assert!(matches!(ggst_condition_iii(&PrimedSpinorField::walker(), 5, &g), Err(NullGeomError::Multiplicity(5))));
}

#[test]
fn unknown_relation_suite() {
    let g = WalkerGeometry::new(WalkerMetric::flat());
    assert!(matches!(relation_suite(&g.coefficients, &g.curvature, "nope"), Err(NullGeomError::UnknownSuite(_))));
}
