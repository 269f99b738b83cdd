//! Connecting fields along the null congruence of d/du, compared with the exact solution.

use walkerspin::congruence::{
    integrate_connecting, integrate_jacobi, jacobi_sigma, step_halving_difference, walker_oracle, ConnectingState,
    Synthetic, WalkerCurve,
};
use walkerspin::poly::qi;
use walkerspin::walker::WalkerMetric;

fn main() {
    let w = WalkerMetric::parse("0", "u^2", "0").expect("valid metric");
    let base = [qi(0), qi(0), qi(0), qi(0)];
    let curve = WalkerCurve::from_metric(&w, base.clone());
    let z0 = ConnectingState::new(0.0, 0.0, 1.0, 0.0);
    let path = integrate_connecting(&curve, z0, 1.0, 1e-3).expect("regular curve");
    println!("final state = {:?}", path.last());
    println!("max error against exact solution = {:e}", path.max_error(|v| walker_oracle(&w, &base, z0, v)));
    println!("step-halving difference = {:e}", step_halving_difference(&curve, z0, 1.0, 0.1).expect("regular curve"));

    let src = Synthetic::constant_expansion(0.3);
    let a = integrate_jacobi(&src, ConnectingState::new(0.0, 1.0, 0.0, 0.0), ConnectingState::new(0.0, 0.2, 0.1, 0.0), 2.0, 1e-2)
        .expect("regular source");
    let b = integrate_jacobi(&src, ConnectingState::new(0.0, 0.0, 1.0, 0.0), ConnectingState::new(0.0, -0.1, 0.3, 0.0), 2.0, 1e-2)
        .expect("regular source");
    let sigma = jacobi_sigma(&a, &b).expect("matching grids");
    let spread = sigma.iter().fold(0.0f64, |m, s| m.max((s - sigma[0]).abs()));
    println!("Jacobi symplectic form drift = {spread:e}");
}
