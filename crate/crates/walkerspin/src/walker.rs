//! Walker metrics in canonical coordinates `(u, v, x, y)`, their Levi-Civita connection,
//! the Walker null tetrad and the soldering symbols.

use crate::poly::{q, Poly, RatFun, Var};
use std::array::from_fn;
use thiserror::Error;

pub type Mat4 = [[Poly; 4]; 4];
/// Contravariant (or covariant) coordinate components.
pub type Vec4 = [RatFun; 4];

/// The three free functions of the canonical form `g = [[0, I], [I, W]]`, `W = [[a, c], [c, b]]`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WalkerMetric {
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
}

impl WalkerMetric {
    pub fn new(a: Poly, b: Poly, c: Poly) -> WalkerMetric {
        WalkerMetric { a, b, c }
    }

    pub fn flat() -> WalkerMetric {
        WalkerMetric::default()
    }

    /// Parse `a`, `b`, `c` from expression strings.
    pub fn parse(a: &str, b: &str, c: &str) -> Result<WalkerMetric, crate::poly::ParseError> {
        Ok(WalkerMetric {
            a: a.parse()?,
            b: b.parse()?,
            c: c.parse()?,
        })
    }

    /// The coordinate symmetry `u <-> v`, `x <-> y`, `a <-> b`.
    pub fn swapped(&self) -> WalkerMetric {
        let perm = [Var::V, Var::U, Var::Y, Var::X];
        WalkerMetric {
            a: self.b.permute_vars(perm),
            b: self.a.permute_vars(perm),
            c: self.c.permute_vars(perm),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricTensor {
    pub g: Mat4,
    pub ginv: Mat4,
}

impl MetricTensor {
    pub fn lower(&self, v: &Vec4) -> Vec4 {
        from_fn(|a| (0..4).map(|b| &RatFun::from(&self.g[a][b]) * &v[b]).sum())
    }

    pub fn raise(&self, w: &Vec4) -> Vec4 {
        from_fn(|a| (0..4).map(|b| &RatFun::from(&self.ginv[a][b]) * &w[b]).sum())
    }

    pub fn dot(&self, v: &Vec4, w: &Vec4) -> RatFun {
        let lv = self.lower(v);
        (0..4).map(|a| &lv[a] * &w[a]).sum()
    }

    /// `g . ginv - I`, entrywise.
    pub fn inverse_residual(&self) -> Mat4 {
        from_fn(|i| {
            from_fn(|j| {
                let mut s = Poly::zero();
                for k in 0..4 {
                    s += &(&self.g[i][k] * &self.ginv[k][j]);
                }
                if i == j {
                    s -= &Poly::one();
                }
                s
            })
        })
    }
}

pub fn assemble_metric(w: &WalkerMetric) -> MetricTensor {
    let z = Poly::zero;
    let o = Poly::one;
    let g = [
        [z(), z(), o(), z()],
        [z(), z(), z(), o()],
        [o(), z(), w.a.clone(), w.c.clone()],
        [z(), o(), w.c.clone(), w.b.clone()],
    ];
    let ginv = [
        [-&w.a, -&w.c, o(), z()],
        [-&w.c, -&w.b, z(), o()],
        [o(), z(), z(), z()],
        [z(), o(), z(), z()],
    ];
    MetricTensor { g, ginv }
}

/// `gamma[k][i][j]` is the connection coefficient with upper index `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Christoffel {
    pub gamma: [[[Poly; 4]; 4]; 4],
}

pub fn christoffel(m: &MetricTensor) -> Christoffel {
    let dg: [[[Poly; 4]; 4]; 4] =
        from_fn(|c| from_fn(|a| from_fn(|b| m.g[a][b].diff(Var::from_index(c)))));
    // first kind: [ij, l] = (d_i g_lj + d_j g_li - d_l g_ij) / 2
    let first: [[[Poly; 4]; 4]; 4] = from_fn(|l| {
        from_fn(|i| {
            from_fn(|j| {
                let s = &(&dg[i][l][j] + &dg[j][l][i]) - &dg[l][i][j];
                s.scale(&q(1, 2))
            })
        })
    });
    let gamma = from_fn(|k| {
        from_fn(|i| {
            from_fn(|j| {
                let mut s = Poly::zero();
                for l in 0..4 {
                    if !m.ginv[k][l].is_zero() && !first[l][i][j].is_zero() {
                        s += &(&m.ginv[k][l] * &first[l][i][j]);
                    }
                }
                s
            })
        })
    });
    Christoffel { gamma }
}

impl Christoffel {
    /// `nabla_c g_ab` for all index triples `(c, a, b)`.
    pub fn metric_compatibility(&self, m: &MetricTensor) -> Vec<Poly> {
        let mut out = Vec::with_capacity(64);
        for c in 0..4 {
            for a in 0..4 {
                for b in 0..4 {
                    let mut s = m.g[a][b].diff(Var::from_index(c));
                    for e in 0..4 {
                        s -= &(&self.gamma[e][c][a] * &m.g[e][b]);
                        s -= &(&self.gamma[e][c][b] * &m.g[a][e]);
                    }
                    out.push(s);
                }
            }
        }
        out
    }
}

/// Null tetrad with coordinate components and the dyad normalization scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tetrad {
    pub l: Vec4,
    pub n: Vec4,
    pub m: Vec4,
    pub mt: Vec4,
    pub chi: RatFun,
    pub chit: RatFun,
}

pub fn walker_tetrad(w: &WalkerMetric) -> Tetrad {
    let z = RatFun::zero;
    let o = RatFun::one;
    let half = |p: &Poly| RatFun::from(p.scale(&q(1, 2)));
    Tetrad {
        l: [o(), z(), z(), z()],
        mt: [z(), o(), z(), z()],
        n: [-half(&w.a), -half(&w.c), o(), z()],
        m: [half(&w.c), half(&w.b), z(), -o()],
        chi: o(),
        chit: o(),
    }
}

/// Directional derivative along a tetrad leg.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    /// along `l`
    D,
    /// along `n`
    Dp,
    /// along `m`
    Delta,
    /// along `m~`
    Tri,
}

impl Op {
    pub const ALL: [Op; 4] = [Op::D, Op::Dp, Op::Delta, Op::Tri];

    /// Dyad index pair `(A, A')` of the leg.
    pub fn dyad(self) -> (usize, usize) {
        match self {
            Op::D => (0, 0),
            Op::Delta => (0, 1),
            Op::Tri => (1, 0),
            Op::Dp => (1, 1),
        }
    }

    pub fn from_dyad(a: usize, ap: usize) -> Op {
        match (a, ap) {
            (0, 0) => Op::D,
            (0, 1) => Op::Delta,
            (1, 0) => Op::Tri,
            _ => Op::Dp,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Op::D => "D",
            Op::Dp => "D'",
            Op::Delta => "δ",
            Op::Tri => "△",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("tetrad normalization violated: {0}")]
    Degenerate(String),
    #[error("scaling function is identically zero")]
    ZeroScale,
}

impl Tetrad {
    pub fn leg(&self, op: Op) -> &Vec4 {
        match op {
            Op::D => &self.l,
            Op::Dp => &self.n,
            Op::Delta => &self.m,
            Op::Tri => &self.mt,
        }
    }

    /// Apply a directional derivative to a scalar.
    pub fn apply(&self, op: Op, f: &RatFun) -> RatFun {
        let leg = self.leg(op);
        (0..4)
            .filter(|&a| !leg[a].is_zero())
            .map(|a| &leg[a] * &f.diff(Var::from_index(a)))
            .sum()
    }

    /// All ten pairwise products minus their required values.
    pub fn normalization_residuals(&self, m: &MetricTensor) -> Vec<(String, RatFun)> {
        let cc = &self.chi * &self.chit;
        let legs = [("l", &self.l), ("n", &self.n), ("m", &self.m), ("mt", &self.mt)];
        let mut out = Vec::new();
        for i in 0..4 {
            for j in i..4 {
                let target = match (legs[i].0, legs[j].0) {
                    ("l", "n") => cc.clone(),
                    ("m", "mt") => -&cc,
                    _ => RatFun::zero(),
                };
                let r = &m.dot(legs[i].1, legs[j].1) - &target;
                out.push((format!("{}.{}", legs[i].0, legs[j].0), r));
            }
        }
        out
    }

    pub fn check_normalized(&self, m: &MetricTensor) -> Result<(), FrameError> {
        for (name, r) in self.normalization_residuals(m) {
            if !r.is_zero() {
                return Err(FrameError::Degenerate(format!("{name} off by {r}")));
            }
        }
        Ok(())
    }

    /// `g_ab - 2 (l_(a n_b) - m_(a mt_b))` for a unimodular tetrad.
    pub fn completeness_residual(&self, m: &MetricTensor) -> [[RatFun; 4]; 4] {
        let (l, n, mm, mt) = (m.lower(&self.l), m.lower(&self.n), m.lower(&self.m), m.lower(&self.mt));
        from_fn(|a| {
            from_fn(|b| {
                let s = &(&(&l[a] * &n[b]) + &(&n[a] * &l[b])) - &(&(&mm[a] * &mt[b]) + &(&mt[a] * &mm[b]));
                &RatFun::from(&m.g[a][b]) - &s
            })
        })
    }

    /// Frame change by boosts `lambda, lambdat` and null rotations `mu, mut` about `l`.
    pub fn transform(
        &self,
        lam: &RatFun,
        lamt: &RatFun,
        mu: &RatFun,
        mut_: &RatFun,
    ) -> Result<Tetrad, FrameError> {
        let il = lam.recip().ok_or(FrameError::ZeroScale)?;
        let ilt = lamt.recip().ok_or(FrameError::ZeroScale)?;
        let comb = |terms: &[(RatFun, &Vec4)]| -> Vec4 {
            from_fn(|a| terms.iter().map(|(k, v)| k * &v[a]).sum())
        };
        let l = comb(&[(lam * lamt, &self.l)]);
        let n = comb(&[
            (&il * &ilt, &self.n),
            (&il * mut_, &self.mt),
            (mu * &ilt, &self.m),
            (mu * mut_, &self.l),
        ]);
        let m = comb(&[(lam * &ilt, &self.m), (lam * mut_, &self.l)]);
        let mt = comb(&[(&il * lamt, &self.mt), (mu * lamt, &self.l)]);
        Ok(Tetrad {
            l,
            n,
            m,
            mt,
            chi: self.chi.clone(),
            chit: self.chit.clone(),
        })
    }

    /// The tetrad of the primed dyads: `l <-> n`, `m -> -mt`, `mt -> -m`.
    pub fn primed(&self) -> Tetrad {
        let neg = |v: &Vec4| -> Vec4 { from_fn(|a| -&v[a]) };
        Tetrad {
            l: self.n.clone(),
            n: self.l.clone(),
            m: neg(&self.mt),
            mt: neg(&self.m),
            chi: self.chi.clone(),
            chit: self.chit.clone(),
        }
    }
}

/// `nabla_b V^a`, indexed `[b][a]`.
pub fn covariant_derivative_vector(ch: &Christoffel, v: &Vec4) -> [[RatFun; 4]; 4] {
    from_fn(|b| {
        from_fn(|a| {
            let mut s = v[a].diff(Var::from_index(b));
            for c in 0..4 {
                let g = &ch.gamma[a][b][c];
                if !g.is_zero() && !v[c].is_zero() {
                    s = &s + &(&RatFun::from(g) * &v[c]);
                }
            }
            s
        })
    })
}

/// `X^b nabla_b V^a`.
pub fn directional_vector(ch: &Christoffel, x: &Vec4, v: &Vec4) -> Vec4 {
    let nv = covariant_derivative_vector(ch, v);
    from_fn(|a| (0..4).filter(|&b| !x[b].is_zero()).map(|b| &x[b] * &nv[b][a]).sum())
}

/// Soldering symbols between coordinate and dyad components.
///
/// `to_dyad[i][A][A']` gives the dyad components of `d/dx^i`;
/// `to_coord[i][A][A']` gives coordinate component `i` of the dyad basis vector `e_{AA'}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IvdW {
    pub to_dyad: [[[Poly; 2]; 2]; 4],
    pub to_coord: [[[Poly; 2]; 2]; 4],
}

pub fn ivdw_symbols(w: &WalkerMetric) -> IvdW {
    let z = Poly::zero;
    let o = Poly::one;
    let h = |p: &Poly| p.scale(&q(1, 2));
    let to_dyad = [
        [[o(), z()], [z(), z()]],
        [[z(), z()], [o(), z()]],
        [[h(&w.a), z()], [h(&w.c), o()]],
        [[h(&w.c), -o()], [h(&w.b), z()]],
    ];
    let to_coord = [
        [[o(), h(&w.c)], [z(), -h(&w.a)]],
        [[z(), h(&w.b)], [o(), -h(&w.c)]],
        [[z(), z()], [z(), o()]],
        [[z(), -o()], [z(), z()]],
    ];
    IvdW { to_dyad, to_coord }
}

impl IvdW {
    /// Dyad components `V^{AA'}` of a coordinate vector.
    pub fn vector_to_dyad(&self, v: &Vec4) -> [[RatFun; 2]; 2] {
        from_fn(|a| from_fn(|ap| (0..4).map(|i| &RatFun::from(&self.to_dyad[i][a][ap]) * &v[i]).sum()))
    }

    /// Coordinate components from dyad components.
    pub fn dyad_to_vector(&self, d: &[[RatFun; 2]; 2]) -> Vec4 {
        from_fn(|i| {
            let mut s = RatFun::zero();
            for a in 0..2 {
                for ap in 0..2 {
                    s = &s + &(&RatFun::from(&self.to_coord[i][a][ap]) * &d[a][ap]);
                }
            }
            s
        })
    }
}
