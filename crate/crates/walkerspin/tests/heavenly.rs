mod common;

use common::{metric_f64, p, ricci_fd, scalar_fd};
use walkerspin::curvature::{walker_curvature_components, SdType};
use walkerspin::geometry::WalkerGeometry;
use walkerspin::heavenly::{
    build_metric, einstein_check, identity_check, invariants, is_affine_in_uv, psi_components, random_potential,
    scalar_flat_case, validate_potential, HeavenlyError, HeavenlyPotential, PotentialSpec,
};
use walkerspin::nullgeom::{ricci_conditions, walker_ricci_null_residuals, PrimedSpinorField};
use walkerspin::poly::{q, RatFun};
use walkerspin::sample::rng;

fn theta(s: &str) -> HeavenlyPotential {
    HeavenlyPotential::from_theta(p(s))
}

fn random_potentials(n: usize) -> Vec<HeavenlyPotential> {
    let mut r = rng(2026);
    (0..n).map(|_| random_potential(&mut r, 5)).collect()
}

#[test]
fn random_potentials_give_ricci_null_metrics() {
    for pot in random_potentials(10) {
        assert!(validate_potential(&pot).is_valid());
        let w = build_metric(&pot).unwrap();
        assert!(walker_ricci_null_residuals(&w).iter().all(|(_, r)| r.is_zero()));
        let c = walker_curvature_components(&w);
        assert!(ricci_conditions(&PrimedSpinorField::walker(), &c, Some(&w)).ricci_null);
    }
}

#[test]
fn trace_free_ricci_annihilates_the_null_plane_numerically() {
    for pot in random_potentials(3) {
        let w = build_metric(&pot).unwrap();
        let x = [0.3, -0.4, 0.5, 0.2];
        let r = ricci_fd(&w, x, 1e-3);
        let (s, g) = (scalar_fd(&w, x, 1e-3), metric_f64(&w, x));
        for i in 0..2 {
            for j in 0..4 {
                let tf = r[i][j] - s / 4.0 * g[i][j];
                assert!(tf.abs() < 1e-5 * (1.0 + s.abs()), "trace-free R_{i}{j} = {tf}");
            }
        }
    }
}

#[test]
fn curvature_routes_agree_on_random_potentials() {
    for pot in random_potentials(10) {
        let psi = psi_components(&pot).unwrap();
        assert!(psi.routes_agree());
        assert!(psi.delta_symmetric);
    }
}

#[test]
fn curvature_identity_holds() {
    for pot in random_potentials(10) {
        assert!(identity_check(&pot).unwrap().residual().is_zero());
    }
}

#[test]
fn scalar_curvature_is_twice_h() {
    for pot in random_potentials(5) {
        let inv = invariants(&pot).unwrap();
        assert_eq!(inv.s, pot.h.scale(&q(2, 1)));
    }
}

#[test]
fn swap_symmetry() {
    for pot in random_potentials(4) {
        let w = build_metric(&pot).unwrap();
        assert_eq!(build_metric(&pot.swapped()).unwrap(), w.swapped());
        assert!(validate_potential(&pot.swapped()).is_valid());
    }
}

#[test]
fn scalar_flat_random_potentials() {
    let mut r = rng(99);
    for _ in 0..6 {
        let mut pot = random_potential(&mut r, 4);
        pot = HeavenlyPotential::scalar_flat(pot.theta.clone(), &pot.f - &(&walkerspin::poly::Poly::u() * &pot.h), &pot.g - &(&walkerspin::poly::Poly::v() * &pot.h));
        let rep = scalar_flat_case(&pot).unwrap();
        assert!(rep.psit_matches && rep.phi_matches);
    }
}

#[test]
fn einstein_example_uvx() {
    let pot = theta("u*v*x");
    let e = einstein_check(&pot).unwrap();
    assert!(e.einstein && e.tensor_route_einstein && e.r_matches_general);
    let inv = invariants(&pot).unwrap();
    assert_eq!(inv.p, p("v - x^2"));
    assert_eq!(inv.r, p("v - x^2"));
    assert!(inv.a_ab.iter().all(|a| a.is_zero()));
    let w = build_metric(&pot).unwrap();
    let r = ricci_fd(&w, [0.2, 0.7, -0.3, 0.5], 1e-3);
    assert!(r.iter().flatten().all(|x| x.abs() < 1e-5));
}

#[test]
fn non_einstein_example() {
    let pot = theta("1/4*u^2*v^2");
    let e = einstein_check(&pot).unwrap();
    assert!(!e.einstein && !e.tensor_route_einstein && e.agrees());
    let inv = invariants(&pot).unwrap();
    assert_eq!(inv.p, p("-3/4*u^2*v^2"));
    assert!(!is_affine_in_uv(&inv.r));
    assert_eq!(inv.a_ab, [p("-3/2*v^2"), p("-3*u*v"), p("-3/2*u^2")]);
    let w = build_metric(&pot).unwrap();
    let r = ricci_fd(&w, [0.5, 0.5, 0.1, 0.1], 1e-3);
    assert!(r.iter().flatten().any(|x| x.abs() > 1e-2));
}

#[test]
fn type_iii_scalar_flat_example() {
    let pot = HeavenlyPotential::scalar_flat(p("0"), p("y^2"), p("0"));
    let inv = invariants(&pot).unwrap();
    assert_eq!(inv.b_plus_sc, p("4*y"));
    let rep = scalar_flat_case(&pot).unwrap();
    assert_eq!(rep.psit3, p("-1/2*y"));
    assert_eq!(rep.psit4, p("u"));
    assert_eq!(rep.sd_type, SdType::III31);
    let ic = identity_check(&pot).unwrap();
    assert!(ic.residual().is_zero());
    assert_eq!(ic.curvature_side, RatFun::from(&p("-24*u")));
}

#[test]
fn einstein_check_requires_scalar_flat() {
    let mut r = rng(5);
    let pot = loop {
        let pot = random_potential(&mut r, 3);
        if !pot.h.is_zero() {
            break pot;
        }
    };
    assert!(matches!(einstein_check(&pot), Err(HeavenlyError::NotScalarFlat(_))));
}

#[test]
fn invalid_potentials_are_rejected_with_residuals() {
    let pot = HeavenlyPotential::parse("0", "y^2", "0", "0", "0", "0").unwrap();
    let rep = validate_potential(&pot);
    assert!(!rep.is_valid());
    assert_eq!(rep.residuals[0].0, "F_u - f");
    assert!(matches!(build_metric(&pot), Err(HeavenlyError::Invalid(_))));
    let dep = HeavenlyPotential::parse("0", "v", "0", "0", "0", "0").unwrap();
    assert!(validate_potential(&dep).dependence.iter().any(|d| d == "f depends on v"));
}

#[test]
fn potential_spec_from_json() {
    let spec: PotentialSpec = serde_json::from_str(r#"{"theta": "u*v*x", "F": "0"}"#).unwrap();
    let pot = HeavenlyPotential::from_spec(&spec).unwrap();
    assert_eq!(pot, theta("u*v*x"));
    let bad: PotentialSpec = serde_json::from_str(r#"{"theta": "u/v"}"#).unwrap();
    assert!(matches!(HeavenlyPotential::from_spec(&bad), Err(HeavenlyError::Parse { field: "theta", .. })));
}

#[test]
fn built_metric_geometry_is_consistent() {
    let w = build_metric(&theta("u*v*x")).unwrap();
    let g = WalkerGeometry::new(w.clone());
    assert_eq!(g.curvature, walker_curvature_components(&w));
}
