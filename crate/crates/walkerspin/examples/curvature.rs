//! Curvature spinors of a Walker metric, cross-checked against the Riemann tensor.

use walkerspin::curvature::{bianchi_contracted_check, phi_lambda_from_ricci, riemann};
use walkerspin::geometry::WalkerGeometry;
use walkerspin::walker::WalkerMetric;

fn main() {
    let w = WalkerMetric::parse("x^2", "u^3", "u*y").expect("valid metric");
    let g = WalkerGeometry::new(w);
    for (name, value) in g.curvature.entries() {
        if !value.is_zero() {
            println!("{name:>6} = {value}");
        }
    }
    let rd = riemann(&g.tensor, &g.christoffel);
    let (phi, lambda) = phi_lambda_from_ricci(&rd, &g.tensor, &g.tetrad).expect("null tetrad");
    println!("tensor route Phi matches: {}", phi == g.curvature.phi);
    println!("tensor route Lambda matches: {}", lambda == g.curvature.lambda);
    let bianchi = bianchi_contracted_check(&g.tensor, &g.christoffel, &rd);
    println!("contracted Bianchi identity holds: {}", bianchi.iter().all(|p| p.is_zero()));
}
