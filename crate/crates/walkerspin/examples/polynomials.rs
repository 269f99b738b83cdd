//! Exact polynomial and rational-function arithmetic in the coordinates `u, v, x, y`.

use walkerspin::poly::{q, Poly, RatFun, Var};

fn main() {
    let p: Poly = "3/2*u^2*x - v*y + 1".parse().expect("valid polynomial");
    let r: Poly = "u - y".parse().expect("valid polynomial");
    println!("p          = {p}");
    println!("p_u        = {}", p.diff(Var::U));
    println!("p_ux       = {}", p.d(&[Var::U, Var::X]));
    println!("p * (u-y)  = {}", &p * &r);
    println!("p(1,2,3,4) = {}", p.eval(&[q(1, 1), q(2, 1), q(3, 1), q(4, 1)]));

    let f = RatFun::new(p.clone(), r.clone());
    println!("p/(u-y)    = {f}");
    println!("d/dy       = {}", f.diff(Var::Y));
    println!("f * (u-y) == p: {}", (&f * &RatFun::from(&r)) == RatFun::from(&p));
}
