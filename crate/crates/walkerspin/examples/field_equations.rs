//! Field equations and commutators; a perturbed coefficient is caught.

use walkerspin::curvature::{commutator_residuals, field_equation_residuals};
use walkerspin::geometry::WalkerGeometry;
use walkerspin::poly::{Poly, RatFun};
use walkerspin::spin::Coef;
use walkerspin::walker::WalkerMetric;

fn main() {
    let w = WalkerMetric::parse("v*x", "u^2*y", "x*y").expect("valid metric");
    let g = WalkerGeometry::new(w);
    let fe = field_equation_residuals(&g.coefficients, &g.curvature, &g.tetrad);
    println!("{} field equations, all zero: {}", fe.len(), fe.iter().all(|(_, r)| r.is_zero()));

    let f: Poly = "u*x^2 + v*y".parse().expect("valid polynomial");
    let comm = commutator_residuals(&g.coefficients, &g.tetrad, &f);
    println!("{} commutators on {f}, all zero: {}", comm.len(), comm.iter().all(|(_, r)| r.is_zero()));

    let mut s = g.coefficients.clone();
    let rho = Coef::parse("rho").expect("known coefficient");
    s.set(rho, s.get(rho) + &RatFun::one());
    println!("after rho += 1, failing equations:");
    for (name, r) in field_equation_residuals(&s, &g.curvature, &g.tetrad) {
        if !r.is_zero() {
            println!("  {name} = {r}");
        }
    }
}
