//! Spin coefficients of a Walker metric by two independent routes.

use walkerspin::geometry::WalkerGeometry;
use walkerspin::spin::{exterior_residuals, spin_coefficients_from_tetrad};
use walkerspin::walker::WalkerMetric;

fn main() {
    let w = WalkerMetric::parse("u*x + v^2", "x*y - u*v", "y^2").expect("valid metric");
    let g = WalkerGeometry::new(w);
    println!("nonzero spin coefficients (closed form):");
    for (c, v) in g.coefficients.nonzero() {
        println!("  {:>5} = {v}", c.ascii());
    }
    let from_tetrad = spin_coefficients_from_tetrad(&g.christoffel, &g.tensor, &g.tetrad).expect("null tetrad");
    let agree = from_tetrad.diff(&g.coefficients).iter().all(|(_, r)| r.is_zero());
    println!("tetrad route agrees: {agree}");
    let bad = exterior_residuals(&g.tensor, &g.tetrad, &g.coefficients).iter().filter(|(_, r)| !r.is_zero()).count();
    println!("nonzero exterior-derivative residuals: {bad}");
}
