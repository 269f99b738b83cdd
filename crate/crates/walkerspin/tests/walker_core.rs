#![allow(clippy::needless_range_loop)]

mod common;

use common::{christoffel_fd, eval_f64, walker};
use proptest::prelude::*;
use walkerspin::poly::{q_to_f64, RatFun, Var};
use walkerspin::sample::{random_point, rng, test_metrics};
use walkerspin::walker::{assemble_metric, christoffel, ivdw_symbols, walker_tetrad, Op};

proptest! {
    #![proptest_config(common::proptest_config(12))]

    #[test]
    fn inverse_metric_and_compatibility(seed in any::<u64>()) {
        let w = &test_metrics(1, 4, seed)[0];
        let m = assemble_metric(w);
        prop_assert!(m.inverse_residual().iter().flatten().all(|p| p.is_zero()));
        prop_assert!(christoffel(&m).metric_compatibility(&m).iter().all(|p| p.is_zero()));
    }

    #[test]
    fn tetrad_is_normalized_and_complete(seed in any::<u64>()) {
        let w = &test_metrics(1, 4, seed)[0];
        let m = assemble_metric(w);
        let t = walker_tetrad(w);
        prop_assert!(t.check_normalized(&m).is_ok());
        prop_assert!(t.completeness_residual(&m).iter().flatten().all(|r| r.is_zero()));
    }

    #[test]
    fn soldering_symbols_invert(seed in any::<u64>()) {
        let w = &test_metrics(1, 3, seed)[0];
        let s = ivdw_symbols(w);
        let v: [RatFun; 4] = std::array::from_fn(|i| RatFun::from(&walkerspin::poly::Poly::var(Var::from_index(i))));
        prop_assert_eq!(s.dyad_to_vector(&s.vector_to_dyad(&v)), v);
    }
}

#[test]
fn christoffel_symbols_match_finite_differences() {
    let mut r = rng(7);
    for w in test_metrics(6, 4, 11) {
        let exact = christoffel(&assemble_metric(&w));
        let x = random_point(&mut r).map(|c| q_to_f64(&c));
        let approx = christoffel_fd(&w, x, 1e-4);
        for k in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    let e = eval_f64(&exact.gamma[k][i][j], x);
                    assert!((e - approx[k][i][j]).abs() < 1e-5 * (1.0 + e.abs()), "Gamma^{k}_{i}{j}: {e} vs {}", approx[k][i][j]);
                }
            }
        }
    }
}

#[test]
fn metric_has_canonical_block_form() {
    let w = walker("u*x", "v^2", "y");
    let m = assemble_metric(&w);
    assert_eq!(m.g[0][2].to_string(), "1");
    assert_eq!(m.g[1][3].to_string(), "1");
    assert_eq!(m.g[2][2], w.a);
    assert_eq!(m.g[3][3], w.b);
    assert_eq!(m.g[2][3], w.c);
    for (i, j) in [(0, 0), (0, 1), (1, 1), (0, 3), (1, 2)] {
        assert!(m.g[i][j].is_zero());
    }
}

#[test]
fn null_legs_of_the_walker_tetrad() {
    let w = walker("x^2", "u*y", "v");
    let m = assemble_metric(&w);
    let t = walker_tetrad(&w);
    for leg in [&t.l, &t.n, &t.m, &t.mt] {
        assert!(m.dot(leg, leg).is_zero());
    }
    assert!(t.l[0] == RatFun::one() && t.l.iter().skip(1).all(|c| c.is_zero()));
    assert!(!m.dot(&t.l, &t.n).is_zero());
    let f = RatFun::from(&common::p("u*v + x^2*y"));
    assert_eq!(t.apply(Op::D, &f), f.diff(Var::U));
}

#[test]
fn swapping_is_an_involution() {
    for w in test_metrics(5, 3, 3) {
        assert_eq!(w.swapped().swapped(), w);
    }
}

#[test]
fn frame_transform_preserves_normalization() {
    let w = walker("u*x", "y^2", "v");
    let m = assemble_metric(&w);
    let t = walker_tetrad(&w);
    let lam = RatFun::from(&common::p("1 + x^2"));
    let lamt = RatFun::from(&common::p("2"));
    let mu = RatFun::from(&common::p("u*y"));
    let mut_ = RatFun::from(&common::p("v - x"));
    let t2 = t.transform(&lam, &lamt, &mu, &mut_).unwrap();
    assert!(t2.check_normalized(&m).is_ok());
    assert!(t.transform(&RatFun::zero(), &lamt, &mu, &mut_).is_err());
}
