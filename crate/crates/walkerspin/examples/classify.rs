//! Algebraic type of the self-dual Weyl spinor at chosen points.

use walkerspin::curvature::{classify_sd_weyl, walker_curvature_components};
use walkerspin::poly::qi;
use walkerspin::walker::WalkerMetric;

fn main() {
    let cases = [("flat", "0", "0", "0"), ("b = u^3", "0", "u^3", "0"), ("a = u*y^2", "u*y^2", "0", "0"), ("c = x^2*y", "0", "0", "x^2*y")];
    let point = [qi(1), qi(2), qi(1), qi(3)];
    for (name, a, b, c) in cases {
        let w = WalkerMetric::parse(a, b, c).expect("valid metric");
        let curv = walker_curvature_components(&w);
        match classify_sd_weyl(&w, &curv, &point) {
            Ok(t) => println!("{name:>10}: {t}"),
            Err(e) => println!("{name:>10}: {e}"),
        }
    }
}
