//! Seeded random generators for polynomials, Walker metrics and points.

use crate::poly::{Poly, Var, Q};
use crate::walker::WalkerMetric;
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small nonzero rational `p/q` with `|p| <= 5`, `1 <= q <= 3`.
pub fn small_rational(rng: &mut SampleRng) -> Q {
    let mut p: i64 = 0;
    while p == 0 {
        p = rng.gen_range(-5..=5);
    }
    Q::new(BigInt::from(p), BigInt::from(rng.gen_range(1..=3i64)))
}

/// Random polynomial with up to `terms` terms of total degree at most `degree`
/// in the listed variables.
pub fn random_poly_in(rng: &mut SampleRng, vars: &[Var], degree: u32, terms: usize) -> Poly {
    let mut p = Poly::zero();
    for _ in 0..terms {
        let mut e = [0u32; 4];
        let total = rng.gen_range(0..=degree);
        for _ in 0..total {
            if vars.is_empty() {
                break;
            }
            let v = vars[rng.gen_range(0..vars.len())];
            e[v.index()] += 1;
        }
        p += &Poly::monomial(small_rational(rng), e);
    }
    p
}

pub fn random_poly(rng: &mut SampleRng, degree: u32, terms: usize) -> Poly {
    random_poly_in(rng, &Var::ALL, degree, terms)
}

/// Walker metric with `a, b, c` of total degree at most `degree`.
pub fn random_walker(rng: &mut SampleRng, degree: u32) -> WalkerMetric {
    WalkerMetric::new(
        random_poly(rng, degree, 5),
        random_poly(rng, degree, 5),
        random_poly(rng, degree, 5),
    )
}

/// The same family of metrics used across the acceptance checks.
pub fn test_metrics(count: usize, degree: u32, seed: u64) -> Vec<WalkerMetric> {
    let mut r = rng(seed);
    (0..count).map(|_| random_walker(&mut r, degree)).collect()
}

/// Random rational point with small entries.
pub fn random_point(rng: &mut SampleRng) -> [Q; 4] {
    std::array::from_fn(|_| Q::new(BigInt::from(rng.gen_range(-4..=4i64)), BigInt::from(rng.gen_range(1..=3i64))))
}
