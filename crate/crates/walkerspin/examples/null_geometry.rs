//! Integrability of the null distribution of a primed spinor field.

use walkerspin::geometry::WalkerGeometry;
use walkerspin::nullgeom::{
    distribution_report, frobenius_check, gradient_square, kerr_check, s_and_t_forms, OneForm, PrimedSpinorField,
};
use walkerspin::poly::Poly;
use walkerspin::walker::WalkerMetric;

fn main() {
    let g = WalkerGeometry::new(WalkerMetric::flat());
    let pi = PrimedSpinorField::new("u".parse().unwrap(), "-y".parse().unwrap()).expect("nonzero spinor");
    let forms = s_and_t_forms(&pi, &g).expect("integrable distribution");
    println!("pi = (u, -y) on flat space");
    println!("  S      = {:?}", forms.s.0.iter().map(|c| c.to_string()).collect::<Vec<_>>());
    println!("  omega  = {:?}", forms.omega.components().iter().map(|c| c.to_string()).collect::<Vec<_>>());
    let gs = gradient_square(&pi, &g, &forms);
    println!("  gradient square lhs = {}, rhs = {}", gs.lhs, gs.rhs);
    let kerr = kerr_check(&pi, &g).expect("integrable distribution");
    println!("  Kerr consistent: {}", kerr.consistent);

    let w = WalkerMetric::parse("x*u^2", "v*y", "x^2").expect("valid metric");
    let gw = WalkerGeometry::new(w);
    let report = distribution_report(&PrimedSpinorField::walker(), &gw);
    println!("Walker spinor: {}", serde_json::to_string(&report).expect("serializable"));
    let dx = OneForm::gradient(&Poly::x());
    println!("d(dx) passes Frobenius: {}", frobenius_check(&dx).iter().all(|r| r.is_zero()));
}
