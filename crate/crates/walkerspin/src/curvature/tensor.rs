use crate::poly::{q, Poly, RatFun, Var};
use crate::walker::{Christoffel, FrameError, MetricTensor, Tetrad, Vec4};
use std::array::from_fn;

/// Overall sign relating the coordinate Riemann formula below to the curvature
/// convention of the spinor formulae. Fixed by requiring the scalar curvature of a
/// Walker metric to be `a_uu + b_vv + 2 c_uv`.
pub const RICCI_SIGN: i64 = 1;

/// Riemann tensor `R^a_{bcd}` (stored `[a][b][c][d]`), Ricci tensor and scalar curvature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiemannData {
    pub riemann: Vec<Poly>,
    pub ricci: [[Poly; 4]; 4],
    pub scalar: Poly,
}

impl RiemannData {
    pub fn component(&self, a: usize, b: usize, c: usize, d: usize) -> &Poly {
        &self.riemann[((a * 4 + b) * 4 + c) * 4 + d]
    }

    /// Residuals of `R^a_{bcd} + R^a_{bdc}`, the first Bianchi identity and Ricci symmetry.
    pub fn symmetry_residuals(&self) -> Vec<Poly> {
        let mut out = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        out.push(self.component(a, b, c, d) + self.component(a, b, d, c));
                        out.push(
                            &(self.component(a, b, c, d) + self.component(a, c, d, b)) + self.component(a, d, b, c),
                        );
                    }
                }
                out.push(&self.ricci[a][b] - &self.ricci[b][a]);
            }
        }
        out
    }
}

/// `R^a_{bcd} = d_c G^a_{db} - d_d G^a_{cb} + G^a_{ce} G^e_{db} - G^a_{de} G^e_{cb}`,
/// scaled by [`RICCI_SIGN`]; `R_bd = R^a_{bad}` and `S = g^{bd} R_bd`.
pub fn riemann(m: &MetricTensor, ch: &Christoffel) -> RiemannData {
    let g = &ch.gamma;
    let mut riemann = Vec::with_capacity(256);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let mut r = &g[a][d][b].diff(Var::from_index(c)) - &g[a][c][b].diff(Var::from_index(d));
                    for e in 0..4 {
                        r += &(&g[a][c][e] * &g[e][d][b]);
                        r -= &(&g[a][d][e] * &g[e][c][b]);
                    }
                    riemann.push(r.scale_int(RICCI_SIGN));
                }
            }
        }
    }
    let ricci: [[Poly; 4]; 4] = from_fn(|b| {
        from_fn(|d| {
            let mut s = Poly::zero();
            for a in 0..4 {
                s += &riemann[((a * 4 + b) * 4 + a) * 4 + d];
            }
            s
        })
    });
    let mut scalar = Poly::zero();
    for b in 0..4 {
        for d in 0..4 {
            if !m.ginv[b][d].is_zero() {
                scalar += &(&m.ginv[b][d] * &ricci[b][d]);
            }
        }
    }
    RiemannData { riemann, ricci, scalar }
}

/// Trace-free Ricci components in the tetrad and `Lam = -S/24`.
/// `phi[i][j]` carries `Phi_ij`.
pub fn phi_lambda_from_ricci(
    r: &RiemannData,
    m: &MetricTensor,
    t: &Tetrad,
) -> Result<([[RatFun; 3]; 3], RatFun), FrameError> {
    if !(t.chi == RatFun::one() && t.chit == RatFun::one()) {
        return Err(FrameError::Degenerate("not a pair of spin frames".into()));
    }
    t.check_normalized(m)?;
    let quarter_s = r.scalar.scale(&q(1, 4));
    let phi_ab: [[RatFun; 4]; 4] =
        from_fn(|a| from_fn(|b| RatFun::from((&r.ricci[a][b] - &(&quarter_s * &m.g[a][b])).scale(&q(1, 2)))));
    let pair = |x: &Vec4, y: &Vec4| -> RatFun {
        let mut s = RatFun::zero();
        for a in 0..4 {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..4 {
                if !y[b].is_zero() && !phi_ab[a][b].is_zero() {
                    s = &s + &(&(&x[a] * &y[b]) * &phi_ab[a][b]);
                }
            }
        }
        s
    };
    let (l, n, mm, mt) = (&t.l, &t.n, &t.m, &t.mt);
    let phi = [
        [pair(l, l), pair(l, mm), pair(mm, mm)],
        [pair(l, mt), pair(l, n), pair(mm, n)],
        [pair(mt, mt), pair(mt, n), pair(n, n)],
    ];
    let lam = RatFun::from(r.scalar.scale(&q(-1, 24)));
    Ok((phi, lam))
}

/// `nabla^a R_ab - (1/2) d_b S`.
pub fn bianchi_contracted_check(m: &MetricTensor, ch: &Christoffel, r: &RiemannData) -> [Poly; 4] {
    let g = &ch.gamma;
    from_fn(|b| {
        let mut s = r.scalar.diff(Var::from_index(b)).scale(&q(-1, 2));
        for c in 0..4 {
            for a in 0..4 {
                if m.ginv[c][a].is_zero() {
                    continue;
                }
                let mut d = r.ricci[a][b].diff(Var::from_index(c));
                for e in 0..4 {
                    d -= &(&g[e][c][a] * &r.ricci[e][b]);
                    d -= &(&g[e][c][b] * &r.ricci[a][e]);
                }
                s += &(&m.ginv[c][a] * &d);
            }
        }
        s
    })
}
