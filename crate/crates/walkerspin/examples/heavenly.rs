//! Ricci-null Walker metrics from a potential, with the curvature identity and Einstein check.

use walkerspin::heavenly::{build_metric, einstein_check, identity_check, invariants, HeavenlyPotential};

fn main() {
    for theta in ["u*v*x", "1/4*u^2*v^2"] {
        let p = HeavenlyPotential::from_theta(theta.parse().expect("valid potential"));
        let w = build_metric(&p).expect("valid potential");
        let inv = invariants(&p).expect("valid potential");
        let e = einstein_check(&p).expect("scalar-flat potential");
        println!("theta = {theta}");
        println!("  metric a = {}, b = {}, c = {}", w.a, w.b, w.c);
        println!("  P = {}, A_AB = [{}, {}, {}]", inv.p, inv.a_ab[0], inv.a_ab[1], inv.a_ab[2]);
        println!("  identity holds: {}", identity_check(&p).expect("valid potential").residual().is_zero());
        println!("  Einstein: {} (tensor route {})", e.einstein, e.tensor_route_einstein);
    }
}
