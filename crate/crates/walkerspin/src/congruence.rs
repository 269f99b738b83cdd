//! Connecting vector fields and Jacobi fields along integral curves of the Walker null
//! direction `l = d_u`, with closed-form oracles, Riccati checks and the forms Sigma,
//! Omega and `T_ab`.
//!
//! States are components in the basis `(l, m~, m, n)`: `V = eta l + zeta m~ + zetat m + nu n`.
//! The affine parameter `v` moves the curve from a base point `p` to `p + (v, 0, 0, 0)`.

use crate::curvature::CurvatureSpinors;
use crate::geometry::WalkerGeometry;
use crate::poly::{q_from_f64, q_to_f64, RatFun, Var, Q};
use crate::spin::SpinCoefficients;
use crate::walker::WalkerMetric;
use nalgebra::{DMatrix, Matrix2, Matrix4, Vector2, Vector4};
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use std::io::{self, Write};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CongruenceError {
    #[error("step must be positive, got {0}")]
    NonPositiveStep(f64),
    #[error("end of the parameter range must be positive, got {0}")]
    NonPositiveRange(f64),
    #[error("non-finite value at v = {0}")]
    NonFinite(f64),
    #[error("kappa or kappa~ is nonzero at v = {0}; the distribution is not auto-parallel")]
    NotAutoParallel(f64),
    #[error("coefficients have a pole on the curve at v = {0}")]
    Pole(f64),
    #[error("v = {0} is not a point of the coefficient trace grid")]
    OffGrid(f64),
    #[error("paths are sampled on different grids")]
    MismatchedGrids,
    #[error("caustic: the propagator is singular at v = {0}")]
    Caustic(f64),
    #[error("coefficient pattern required by the {0} flow is violated")]
    PatternViolated(&'static str),
}

/// Spin-coefficient combinations that enter `M` and `P` at one parameter value.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CoefficientSample {
    pub rho: f64,
    pub rhot: f64,
    pub sigma: f64,
    pub sigmat: f64,
    pub tau: f64,
    pub taut: f64,
    /// `gam + gam~`.
    pub gam: f64,
    /// `alp + bet~`.
    pub alp_bett: f64,
    /// `alp~ + bet`.
    pub alpt_bet: f64,
    pub kappa: f64,
    pub kappat: f64,
}

/// Curvature combinations that enter `N` and `Q`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CurvatureSample {
    pub phi00: f64,
    pub psi0: f64,
    pub psit0: f64,
    /// `Psi1 + Phi01`.
    pub psi1_phi01: f64,
    /// `Psit1 + Phi10`.
    pub psit1_phi10: f64,
    /// `Psi2 + Psit2 + 2 Phi11 - 2 Lambda`.
    pub middle: f64,
}

/// Anything that can report coefficients along one curve.
pub trait CoefficientSource: Sync {
    fn coefficients(&self, v: f64) -> Result<CoefficientSample, CongruenceError>;
    fn curvature(&self, v: f64) -> Result<CurvatureSample, CongruenceError>;
}

/// The integral curve of `d_u` through a base point of a Walker metric. Coefficients are
/// evaluated exactly in rational arithmetic and then converted.
#[derive(Clone, Debug)]
pub struct WalkerCurve {
    base: [Q; 4],
    coefficients: [RatFun; 11],
    curvature: [RatFun; 6],
}

fn combos(s: &SpinCoefficients) -> [RatFun; 11] {
    let g = |n: &str| s.by_name(n).clone();
    [
        g("rho"),
        g("rho~"),
        g("sig"),
        g("sig~"),
        g("tau"),
        g("tau~"),
        &g("gam") + &g("gam~"),
        &g("alp") + &g("bet~"),
        &g("alp~") + &g("bet"),
        g("kap"),
        g("kap~"),
    ]
}

fn curvature_combos(c: &CurvatureSpinors) -> [RatFun; 6] {
    let two_phi11 = &c.phi[1][1] + &c.phi[1][1];
    let two_lam = &c.lambda + &c.lambda;
    [
        c.phi[0][0].clone(),
        c.psi[0].clone(),
        c.psit[0].clone(),
        &c.psi[1] + &c.phi[0][1],
        &c.psit[1] + &c.phi[1][0],
        &(&(&c.psi[2] + &c.psit[2]) + &two_phi11) - &two_lam,
    ]
}

impl WalkerCurve {
    pub fn new(g: &WalkerGeometry, base: [Q; 4]) -> WalkerCurve {
        WalkerCurve {
            base,
            coefficients: combos(&g.coefficients),
            curvature: curvature_combos(&g.curvature),
        }
    }

    pub fn from_metric(w: &WalkerMetric, base: [Q; 4]) -> WalkerCurve {
        WalkerCurve::new(&WalkerGeometry::new(w.clone()), base)
    }

    pub fn point(&self, v: f64) -> [Q; 4] {
        let mut p = self.base.clone();
        p[0] += q_from_f64(v);
        p
    }

    fn eval<const K: usize>(&self, fs: &[RatFun; K], v: f64) -> Result<[f64; K], CongruenceError> {
        if !v.is_finite() {
            return Err(CongruenceError::NonFinite(v));
        }
        let p = self.point(v);
        let mut out = [0.0; K];
        for (o, f) in out.iter_mut().zip(fs) {
            *o = q_to_f64(&f.eval(&p).ok_or(CongruenceError::Pole(v))?);
        }
        Ok(out)
    }
}

impl CoefficientSource for WalkerCurve {
    fn coefficients(&self, v: f64) -> Result<CoefficientSample, CongruenceError> {
        let [rho, rhot, sigma, sigmat, tau, taut, gam, alp_bett, alpt_bet, kappa, kappat] = self.eval(&self.coefficients, v)?;
        Ok(CoefficientSample {
            rho,
            rhot,
            sigma,
            sigmat,
            tau,
            taut,
            gam,
            alp_bett,
            alpt_bet,
            kappa,
            kappat,
        })
    }

    fn curvature(&self, v: f64) -> Result<CurvatureSample, CongruenceError> {
        let [phi00, psi0, psit0, psi1_phi01, psit1_phi10, middle] = self.eval(&self.curvature, v)?;
        Ok(CurvatureSample {
            phi00,
            psi0,
            psit0,
            psi1_phi01,
            psit1_phi10,
            middle,
        })
    }
}

type CoefficientFn = Box<dyn Fn(f64) -> CoefficientSample + Send + Sync>;
type CurvatureFn = Box<dyn Fn(f64) -> CurvatureSample + Send + Sync>;

/// Coefficients prescribed by closures, for model systems with known solutions.
pub struct Synthetic {
    coefficients: CoefficientFn,
    curvature: CurvatureFn,
}

impl Synthetic {
    /// Curvature defaults to zero.
    pub fn new(f: impl Fn(f64) -> CoefficientSample + Send + Sync + 'static) -> Synthetic {
        Synthetic {
            coefficients: Box::new(f),
            curvature: Box::new(|_| CurvatureSample::default()),
        }
    }

    pub fn with_curvature(mut self, f: impl Fn(f64) -> CurvatureSample + Send + Sync + 'static) -> Synthetic {
        self.curvature = Box::new(f);
        self
    }

    /// `rho = rho~ = r`, everything else zero.
    pub fn constant_expansion(r: f64) -> Synthetic {
        Synthetic::new(move |_| CoefficientSample {
            rho: r,
            rhot: r,
            ..Default::default()
        })
    }
}

impl CoefficientSource for Synthetic {
    fn coefficients(&self, v: f64) -> Result<CoefficientSample, CongruenceError> {
        Ok((self.coefficients)(v))
    }

    fn curvature(&self, v: f64) -> Result<CurvatureSample, CongruenceError> {
        Ok((self.curvature)(v))
    }
}

/// Coefficients sampled on a strictly increasing grid.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientTrace {
    pub grid: Vec<f64>,
    pub coefficients: Vec<CoefficientSample>,
    pub curvature: Vec<CurvatureSample>,
}

impl CoefficientTrace {
    /// Samples `source` at `0, h, 2h, ..., v_end`, with `h` the largest spacing not
    /// exceeding `spacing` that divides `v_end`.
    pub fn sample(source: &dyn CoefficientSource, v_end: f64, spacing: f64) -> Result<CoefficientTrace, CongruenceError> {
        let grid = uniform_grid(v_end, spacing)?;
        let coefficients = grid.iter().map(|&v| source.coefficients(v)).collect::<Result<_, _>>()?;
        let curvature = grid.iter().map(|&v| source.curvature(v)).collect::<Result<_, _>>()?;
        Ok(CoefficientTrace {
            grid,
            coefficients,
            curvature,
        })
    }

    fn index(&self, v: f64) -> Result<usize, CongruenceError> {
        let i = self.grid.partition_point(|&g| g < v);
        let tol = 1e-9 * (1.0 + v.abs());
        [i.checked_sub(1), Some(i)]
            .into_iter()
            .flatten()
            .find(|&j| j < self.grid.len() && (self.grid[j] - v).abs() <= tol)
            .ok_or(CongruenceError::OffGrid(v))
    }
}

impl CoefficientSource for CoefficientTrace {
    fn coefficients(&self, v: f64) -> Result<CoefficientSample, CongruenceError> {
        Ok(self.coefficients[self.index(v)?])
    }

    fn curvature(&self, v: f64) -> Result<CurvatureSample, CongruenceError> {
        Ok(self.curvature[self.index(v)?])
    }
}

fn uniform_grid(v_end: f64, step: f64) -> Result<Vec<f64>, CongruenceError> {
    if step.is_nan() || step <= 0.0 {
        return Err(CongruenceError::NonPositiveStep(step));
    }
    if !v_end.is_finite() || v_end <= 0.0 {
        return Err(CongruenceError::NonPositiveRange(v_end));
    }
    let n = (v_end / step - 1e-9).ceil().max(1.0) as usize;
    Ok((0..=n).map(|k| v_end * k as f64 / n as f64).collect())
}

/// `V = eta l + zeta m~ + zetat m + nu n`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ConnectingState {
    pub eta: f64,
    pub zeta: f64,
    pub zetat: f64,
    pub nu: f64,
}

impl ConnectingState {
    pub fn new(eta: f64, zeta: f64, zetat: f64, nu: f64) -> ConnectingState {
        ConnectingState { eta, zeta, zetat, nu }
    }

    pub fn to_vector(self) -> Vector4<f64> {
        Vector4::new(self.eta, self.zeta, self.zetat, self.nu)
    }

    pub fn from_vector(z: &Vector4<f64>) -> ConnectingState {
        ConnectingState::new(z[0], z[1], z[2], z[3])
    }

    fn is_finite(&self) -> bool {
        self.to_vector().iter().all(|x| x.is_finite())
    }

    /// The metric pairing in the `(l, m~, m, n)` basis.
    pub fn dot(&self, w: &ConnectingState) -> f64 {
        self.eta * w.nu + self.nu * w.eta - self.zeta * w.zetat - self.zetat * w.zeta
    }
}

/// Rows `[0, alp+bet~, alp~+bet, gam+gam~]`, `[0, rho, sig, tau]`, `[0, sig~, rho~, tau~]`,
/// `[0, -kap~, -kap, 0]`.
pub fn m_numeric(c: &CoefficientSample) -> Matrix4<f64> {
    Matrix4::new(
        0.0, c.alp_bett, c.alpt_bet, c.gam, //
        0.0, c.rho, c.sigma, c.tau, //
        0.0, c.sigmat, c.rhot, c.taut, //
        0.0, -c.kappat, -c.kappa, 0.0,
    )
}

pub fn p_numeric(c: &CoefficientSample) -> Matrix2<f64> {
    Matrix2::new(c.rho, c.sigma, c.sigmat, c.rhot)
}

/// The curvature matrix with `D^2 Z = -N Z`.
pub fn n_numeric(k: &CurvatureSample) -> Matrix4<f64> {
    Matrix4::new(
        0.0, -k.psit1_phi10, -k.psi1_phi01, -k.middle, //
        0.0, k.phi00, k.psi0, k.psi1_phi01, //
        0.0, k.psit0, k.phi00, k.psit1_phi10, //
        0.0, 0.0, 0.0, 0.0,
    )
}

pub fn q_numeric(k: &CurvatureSample) -> Matrix2<f64> {
    Matrix2::new(k.phi00, k.psi0, k.psit0, k.phi00)
}

/// States on a parameter grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Path {
    pub v: Vec<f64>,
    pub states: Vec<ConnectingState>,
}

impl Path {
    pub fn last(&self) -> ConnectingState {
        *self.states.last().expect("nonempty path")
    }

    /// Largest componentwise deviation from `f` over the grid.
    pub fn max_error(&self, f: impl Fn(f64) -> ConnectingState) -> f64 {
        self.v
            .iter()
            .zip(&self.states)
            .map(|(&v, s)| (s.to_vector() - f(v).to_vector()).amax())
            .fold(0.0, f64::max)
    }
}

fn auto_parallel_m(source: &dyn CoefficientSource, v: f64) -> Result<Matrix4<f64>, CongruenceError> {
    let c = source.coefficients(v)?;
    if c.kappa != 0.0 || c.kappat != 0.0 {
        return Err(CongruenceError::NotAutoParallel(v));
    }
    Ok(m_numeric(&c))
}

/// Fourth-order Runge-Kutta integration of `DZ = M Z` on `[0, v_end]`. `nu` is held at
/// its initial value.
pub fn integrate_connecting(
    source: &dyn CoefficientSource,
    z0: ConnectingState,
    v_end: f64,
    step: f64,
) -> Result<Path, CongruenceError> {
    let grid = uniform_grid(v_end, step)?;
    let mut z = z0.to_vector();
    let mut states = vec![z0];
    for w in grid.windows(2) {
        let (v, h) = (w[0], w[1] - w[0]);
        let (m0, m1, m2) = (auto_parallel_m(source, v)?, auto_parallel_m(source, v + h / 2.0)?, auto_parallel_m(source, w[1])?);
        let k1 = m0 * z;
        let k2 = m1 * (z + k1 * (h / 2.0));
        let k3 = m1 * (z + k2 * (h / 2.0));
        let k4 = m2 * (z + k3 * h);
        z += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        z[3] = z0.nu;
        let s = ConnectingState::from_vector(&z);
        if !s.is_finite() {
            return Err(CongruenceError::NonFinite(w[1]));
        }
        states.push(s);
    }
    Ok(Path { v: grid, states })
}

/// Integrates several initial states along the same curve in parallel.
pub fn integrate_many(
    source: &dyn CoefficientSource,
    initial: &[ConnectingState],
    v_end: f64,
    step: f64,
) -> Result<Vec<Path>, CongruenceError> {
    initial.par_iter().map(|&z0| integrate_connecting(source, z0, v_end, step)).collect()
}

/// Richardson estimate: the largest difference between runs with `step` and `step / 2`
/// at the coarse grid points.
pub fn step_halving_difference(
    source: &dyn CoefficientSource,
    z0: ConnectingState,
    v_end: f64,
    step: f64,
) -> Result<f64, CongruenceError> {
    let coarse = integrate_connecting(source, z0, v_end, step)?;
    let fine = integrate_connecting(source, z0, v_end, step / 2.0)?;
    if fine.states.len() != 2 * coarse.states.len() - 1 {
        return Err(CongruenceError::MismatchedGrids);
    }
    Ok(coarse
        .states
        .iter()
        .enumerate()
        .map(|(i, s)| (s.to_vector() - fine.states[2 * i].to_vector()).amax())
        .fold(0.0, f64::max))
}

/// Solutions of the Jacobi equation with their first derivatives.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiPath {
    pub v: Vec<f64>,
    pub states: Vec<ConnectingState>,
    pub derivatives: Vec<ConnectingState>,
}

impl JacobiPath {
    pub fn positions(&self) -> Path {
        Path {
            v: self.v.clone(),
            states: self.states.clone(),
        }
    }
}

/// Fourth-order integration of `D^2 Z = -N Z`. `nu` is the exact affine function
/// `nu0 + nu0' v`.
pub fn integrate_jacobi(
    source: &dyn CoefficientSource,
    z0: ConnectingState,
    dz0: ConnectingState,
    v_end: f64,
    step: f64,
) -> Result<JacobiPath, CongruenceError> {
    let grid = uniform_grid(v_end, step)?;
    let rhs = |v: f64, z: &Vector4<f64>, dz: &Vector4<f64>| -> Result<(Vector4<f64>, Vector4<f64>), CongruenceError> {
        Ok((*dz, -(n_numeric(&source.curvature(v)?) * z)))
    };
    let (mut z, mut dz) = (z0.to_vector(), dz0.to_vector());
    let (mut states, mut derivatives) = (vec![z0], vec![dz0]);
    for w in grid.windows(2) {
        let (v, h) = (w[0], w[1] - w[0]);
        let (a1, b1) = rhs(v, &z, &dz)?;
        let (a2, b2) = rhs(v + h / 2.0, &(z + a1 * (h / 2.0)), &(dz + b1 * (h / 2.0)))?;
        let (a3, b3) = rhs(v + h / 2.0, &(z + a2 * (h / 2.0)), &(dz + b2 * (h / 2.0)))?;
        let (a4, b4) = rhs(w[1], &(z + a3 * h), &(dz + b3 * h))?;
        z += (a1 + a2 * 2.0 + a3 * 2.0 + a4) * (h / 6.0);
        dz += (b1 + b2 * 2.0 + b3 * 2.0 + b4) * (h / 6.0);
        z[3] = z0.nu + dz0.nu * w[1];
        dz[3] = dz0.nu;
        let (s, d) = (ConnectingState::from_vector(&z), ConnectingState::from_vector(&dz));
        if !s.is_finite() || !d.is_finite() {
            return Err(CongruenceError::NonFinite(w[1]));
        }
        states.push(s);
        derivatives.push(d);
    }
    Ok(JacobiPath {
        v: grid,
        states,
        derivatives,
    })
}

/// The initial derivative that makes a Jacobi field a connecting field: `M(0) Z0`.
pub fn connecting_derivative(source: &dyn CoefficientSource, z0: ConnectingState) -> Result<ConnectingState, CongruenceError> {
    Ok(ConnectingState::from_vector(&(auto_parallel_m(source, 0.0)? * z0.to_vector())))
}

/// Closed-form connecting field along `d_u` for a Walker metric, starting at the base point:
/// `zeta = zeta0 + (b0 - b)/2 zetat0 + (c - c0)/2 nu0`,
/// `eta = eta0 + (c0 - c)/2 zetat0 + (a - a0)/2 nu0`.
pub fn walker_oracle(w: &WalkerMetric, base: &[Q; 4], z0: ConnectingState, v: f64) -> ConnectingState {
    let mut p = base.clone();
    p[0] += q_from_f64(v);
    let diff = |f: &crate::poly::Poly| q_to_f64(&(f.eval(&p) - f.eval(base)));
    let (da, db, dc) = (diff(&w.a), diff(&w.b), diff(&w.c));
    ConnectingState::new(
        z0.eta - dc / 2.0 * z0.zetat + da / 2.0 * z0.nu,
        z0.zeta - db / 2.0 * z0.zetat + dc / 2.0 * z0.nu,
        z0.zetat,
        z0.nu,
    )
}

/// A 4x4 or 2x2 matrix of rational functions.
pub type SymMatrix<const K: usize> = [[RatFun; K]; K];

fn sym_mul<const K: usize>(a: &SymMatrix<K>, b: &SymMatrix<K>) -> SymMatrix<K> {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..K).map(|k| &a[i][k] * &b[k][j]).sum()))
}

pub fn m_symbolic(s: &SpinCoefficients) -> SymMatrix<4> {
    let [rho, rhot, sig, sigt, tau, taut, gam, ab, atb, kap, kapt] = combos(s);
    let z = RatFun::zero;
    [
        [z(), ab, atb, gam],
        [z(), rho, sig, tau],
        [z(), sigt, rhot, taut],
        [z(), -kapt, -kap, z()],
    ]
}

pub fn n_symbolic(c: &CurvatureSpinors) -> SymMatrix<4> {
    let [phi00, psi0, psit0, p1, pt1, mid] = curvature_combos(c);
    let z = RatFun::zero;
    [
        [z(), -pt1.clone(), -p1.clone(), -mid],
        [z(), phi00.clone(), psi0, p1],
        [z(), psit0, phi00, pt1],
        [z(), z(), z(), z()],
    ]
}

pub fn p_symbolic(s: &SpinCoefficients) -> SymMatrix<2> {
    let m = m_symbolic(s);
    [[m[1][1].clone(), m[1][2].clone()], [m[2][1].clone(), m[2][2].clone()]]
}

pub fn q_symbolic(c: &CurvatureSpinors) -> SymMatrix<2> {
    let n = n_symbolic(c);
    [[n[1][1].clone(), n[1][2].clone()], [n[2][1].clone(), n[2][2].clone()]]
}

fn riccati<const K: usize>(m: &SymMatrix<K>, n: &SymMatrix<K>) -> SymMatrix<K> {
    let m2 = sym_mul(m, m);
    std::array::from_fn(|i| std::array::from_fn(|j| &(&m[i][j].diff(Var::U) + &m2[i][j]) + &n[i][j]))
}

/// `DM + M^2 + N` and `DP + P^2 + Q`, both identically zero.
#[derive(Clone, Debug)]
pub struct RiccatiResiduals {
    pub m: SymMatrix<4>,
    pub p: SymMatrix<2>,
}

impl RiccatiResiduals {
    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().chain(self.p.iter().flatten()).all(RatFun::is_zero)
    }

    /// The largest absolute entry at a point.
    pub fn max_abs_at(&self, point: &[Q; 4]) -> Option<f64> {
        let mut best = 0.0f64;
        for r in self.m.iter().flatten().chain(self.p.iter().flatten()) {
            best = best.max(q_to_f64(&r.eval(point)?).abs());
        }
        Some(best)
    }
}

pub fn riccati_residual(g: &WalkerGeometry) -> RiccatiResiduals {
    RiccatiResiduals {
        m: riccati(&m_symbolic(&g.coefficients), &n_symbolic(&g.curvature)),
        p: riccati(&p_symbolic(&g.coefficients), &q_symbolic(&g.curvature)),
    }
}

/// The scalar Riccati equations along `l`, plus the consequence
/// `D(rho - rho~) = rho~^2 - rho^2`.
pub fn riccati_component_residuals(s: &SpinCoefficients, c: &CurvatureSpinors) -> Vec<(String, RatFun)> {
    let g = |n: &str| s.by_name(n).clone();
    let d = |f: &RatFun| f.diff(Var::U);
    let (rho, rhot, sig, sigt, tau, taut) = (g("rho"), g("rho~"), g("sig"), g("sig~"), g("tau"), g("tau~"));
    let ab = &g("alp") + &g("bet~");
    let atb = &g("alp~") + &g("bet");
    let ss = &sig * &sigt;
    let trace = &rho + &rhot;
    let two = |f: &RatFun| f + f;
    let list: Vec<(&str, RatFun)> = vec![
        ("D(alp+bet~)", &(&(&d(&ab) + &(&rho * &ab)) + &(&sigt * &atb)) - &(&c.psit[1] + &c.phi[1][0])),
        ("D(alp~+bet)", &(&(&d(&atb) + &(&rhot * &atb)) + &(&sig * &ab)) - &(&c.psi[1] + &c.phi[0][1])),
        ("D(rho)", &(&(&d(&rho) + &(&rho * &rho)) + &ss) + &c.phi[0][0]),
        ("D(rho~)", &(&(&d(&rhot) + &(&rhot * &rhot)) + &ss) + &c.phi[0][0]),
        ("D(sig)", &(&d(&sig) + &(&trace * &sig)) + &c.psi[0]),
        ("D(sig~)", &(&d(&sigt) + &(&trace * &sigt)) + &c.psit[0]),
        ("D(tau)", &(&(&d(&tau) + &(&tau * &rho)) + &(&taut * &sig)) + &(&c.psi[1] + &c.phi[0][1])),
        ("D(tau~)", &(&(&d(&taut) + &(&taut * &rhot)) + &(&tau * &sigt)) + &(&c.psit[1] + &c.phi[1][0])),
        (
            "D(gam+gam~)",
            &(&(&d(&(&g("gam") + &g("gam~"))) - &(&tau * &ab)) - &(&taut * &atb))
                - &(&(&(&c.psi[2] + &c.psit[2]) + &two(&c.phi[1][1])) - &two(&c.lambda)),
        ),
        ("D(rho-rho~)", &d(&(&rho - &rhot)) - &(&(&rhot * &rhot) - &(&rho * &rho))),
    ];
    list.into_iter().map(|(n, r)| (n.to_string(), r)).collect()
}

/// `M0 (M0 v + 1)^{-1}`, the propagated matrix when the curvature term vanishes.
pub fn curvature_free_solution(m0: &DMatrix<f64>, v: f64) -> Result<DMatrix<f64>, CongruenceError> {
    let k = m0.nrows();
    let a = m0 * v + DMatrix::identity(k, k);
    let scale = a.iter().fold(1.0f64, |s, x| s.max(x.abs()));
    if a.determinant().abs() <= 1e-12 * scale.powi(k as i32) {
        return Err(CongruenceError::Caustic(v));
    }
    let inv = a.try_inverse().ok_or(CongruenceError::Caustic(v))?;
    Ok(m0 * inv)
}

/// `(rho, rho~, sig, sig~)` at `v` from initial values when `Q = 0`:
/// each over `1 + v (rho0 + rho~0) + v^2 d`, `d = rho0 rho~0 - sig0 sig~0`.
pub fn curvature_free_scalars(p0: [f64; 4], v: f64) -> Result<[f64; 4], CongruenceError> {
    let [r, rt, s, st] = p0;
    let d = r * rt - s * st;
    let den = 1.0 + v * (r + rt) + v * v * d;
    if den.abs() <= 1e-12 {
        return Err(CongruenceError::Caustic(v));
    }
    Ok([(r + v * d) / den, (rt + v * d) / den, s / den, st / den])
}

/// Closed-form flows of `DX = P X` for special coefficient patterns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlowKind {
    /// `rho = rho~`, `sig = sig~ = 0`.
    Dilation,
    /// `rho = rho~ = 0`, `sig = -sig~`.
    Rotation,
    /// `rho = rho~ = 0`, `sig = sig~`.
    Boost,
    /// `rho = -rho~`, `sig = sig~ = 0`.
    InverseScale,
    /// `rho = rho~`, `sig = -sig~`.
    ScaledRotation,
    /// `sig = sig~ = 0`.
    Diagonal,
    /// `rho = rho~`, `sig = sig~`.
    ScaledBoost,
}

impl FlowKind {
    pub fn name(self) -> &'static str {
        match self {
            FlowKind::Dilation => "dilation",
            FlowKind::Rotation => "rotation",
            FlowKind::Boost => "boost",
            FlowKind::InverseScale => "inverse-scale",
            FlowKind::ScaledRotation => "scaled-rotation",
            FlowKind::Diagonal => "diagonal",
            FlowKind::ScaledBoost => "scaled-boost",
        }
    }

    /// Whether `(rho, rho~, sig, sig~)` fits the pattern, up to `tol`.
    pub fn fits(self, [r, rt, s, st]: [f64; 4], tol: f64) -> bool {
        let z = |x: f64| x.abs() <= tol;
        match self {
            FlowKind::Dilation => z(r - rt) && z(s) && z(st),
            FlowKind::Rotation => z(r) && z(rt) && z(s + st),
            FlowKind::Boost => z(r) && z(rt) && z(s - st),
            FlowKind::InverseScale => z(r + rt) && z(s) && z(st),
            FlowKind::ScaledRotation => z(r - rt) && z(s + st),
            FlowKind::Diagonal => z(s) && z(st),
            FlowKind::ScaledBoost => z(r - rt) && z(s - st),
        }
    }
}

fn rotation(t: f64) -> Matrix2<f64> {
    Matrix2::new(t.cos(), -t.sin(), t.sin(), t.cos())
}

fn hyperbolic(t: f64) -> Matrix2<f64> {
    Matrix2::new(t.cosh(), t.sinh(), t.sinh(), t.cosh())
}

/// Applies the closed-form flow of `kind`, given the integrals
/// `[int rho, int rho~, int sig, int sig~]` over `[0, v]`.
pub fn special_flow(kind: FlowKind, integrals: [f64; 4], x0: [f64; 2]) -> Result<[f64; 2], CongruenceError> {
    if !kind.fits(integrals, 1e-12 * (1.0 + integrals.iter().fold(0.0f64, |m, x| m.max(x.abs())))) {
        return Err(CongruenceError::PatternViolated(kind.name()));
    }
    let [r, rt, s, st] = integrals;
    let x = Vector2::new(x0[0], x0[1]);
    let y = match kind {
        FlowKind::Dilation => x * ((r + rt) / 2.0).exp(),
        FlowKind::Rotation => rotation((st - s) / 2.0) * x,
        FlowKind::Boost => hyperbolic((st + s) / 2.0) * x,
        FlowKind::InverseScale => Matrix2::new(((r - rt) / 2.0).exp(), 0.0, 0.0, ((rt - r) / 2.0).exp()) * x,
        FlowKind::ScaledRotation => rotation(st) * x * r.exp(),
        FlowKind::Diagonal => Matrix2::new(r.exp(), 0.0, 0.0, rt.exp()) * x,
        FlowKind::ScaledBoost => hyperbolic(s) * x * r.exp(),
    };
    Ok([y[0], y[1]])
}

/// Checks the pattern pointwise on a grid of `[0, v]` and applies [`special_flow`] with
/// integrals computed by composite Simpson quadrature.
pub fn special_flow_along(
    kind: FlowKind,
    source: &dyn CoefficientSource,
    v: f64,
    intervals: usize,
    x0: [f64; 2],
) -> Result<[f64; 2], CongruenceError> {
    let n = 2 * intervals.max(1);
    let h = v / n as f64;
    let mut acc = [0.0; 4];
    for k in 0..=n {
        let c = source.coefficients(k as f64 * h)?;
        let vals = [c.rho, c.rhot, c.sigma, c.sigmat];
        if !kind.fits(vals, 1e-12) {
            return Err(CongruenceError::PatternViolated(kind.name()));
        }
        let wgt = if k == 0 || k == n { 1.0 } else if k % 2 == 1 { 4.0 } else { 2.0 };
        for (a, x) in acc.iter_mut().zip(vals) {
            *a += wgt * x * h / 3.0;
        }
    }
    special_flow(kind, acc, x0)
}

/// Sigma and Omega of a pair of fields at one parameter value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SigmaOmega {
    pub v: f64,
    pub sigma: f64,
    pub omega: f64,
}

/// Sigma for connecting fields,
/// `[(rho - rho~) Om + (tau~ + alp + bet~)(nu xi - zeta chi) + (tau + alp~ + bet)(nu xit - zetat chi)] / 2`,
/// and `Om = zeta xit - zetat xi`, where `W = (omega, xi, xit, chi)`.
pub fn sigma_omega_forms(source: &dyn CoefficientSource, vp: &Path, wp: &Path) -> Result<Vec<SigmaOmega>, CongruenceError> {
    if vp.v != wp.v {
        return Err(CongruenceError::MismatchedGrids);
    }
    vp.v.iter()
        .zip(vp.states.iter().zip(&wp.states))
        .map(|(&v, (a, b))| {
            let c = source.coefficients(v)?;
            let omega = a.zeta * b.zetat - a.zetat * b.zeta;
            let sigma = ((c.rho - c.rhot) * omega
                + (c.taut + c.alp_bett) * (a.nu * b.zeta - a.zeta * b.nu)
                + (c.tau + c.alpt_bet) * (a.nu * b.zetat - a.zetat * b.nu))
                / 2.0;
            Ok(SigmaOmega { v, sigma, omega })
        })
        .collect()
}

/// `(V . DW - W . DV) / 2` for a pair of Jacobi fields.
pub fn jacobi_sigma(vp: &JacobiPath, wp: &JacobiPath) -> Result<Vec<f64>, CongruenceError> {
    if vp.v != wp.v {
        return Err(CongruenceError::MismatchedGrids);
    }
    Ok((0..vp.v.len())
        .map(|i| (vp.states[i].dot(&wp.derivatives[i]) - wp.states[i].dot(&vp.derivatives[i])) / 2.0)
        .collect())
}

/// Largest `|D(zeta zetat) - [(rho + rho~) zeta zetat + sig zetat^2 + sig~ zeta^2]|` over
/// interior grid points, with `D` by central differences.
pub fn product_rate_defect(source: &dyn CoefficientSource, path: &Path) -> Result<f64, CongruenceError> {
    let prod: Vec<f64> = path.states.iter().map(|s| s.zeta * s.zetat).collect();
    let mut worst = 0.0f64;
    for i in 1..path.v.len().saturating_sub(1) {
        let h = path.v[i + 1] - path.v[i - 1];
        let d = (prod[i + 1] - prod[i - 1]) / h;
        let c = source.coefficients(path.v[i])?;
        let s = path.states[i];
        let rhs = (c.rho + c.rhot) * prod[i] + c.sigma * s.zetat * s.zetat + c.sigmat * s.zeta * s.zeta;
        worst = worst.max((d - rhs).abs());
    }
    Ok(worst)
}

/// Writes `v,eta,zeta,zetatilde,nu,rho,rhotilde,sigma,sigmatilde` rows.
pub fn write_trace_csv(out: &mut dyn Write, source: &dyn CoefficientSource, path: &Path) -> io::Result<()> {
    writeln!(out, "v,eta,zeta,zetatilde,nu,rho,rhotilde,sigma,sigmatilde")?;
    for (&v, s) in path.v.iter().zip(&path.states) {
        let c = source.coefficients(v).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            v, s.eta, s.zeta, s.zetat, s.nu, c.rho, c.rhot, c.sigma, c.sigmat
        )?;
    }
    Ok(())
}

/// `P = D + S + I + H` with `D = d E1`, `S = s diag(1,-1)`, `I = i [[0,-1],[1,0]]`,
/// `H = h [[0,1],[1,0]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PDecomposition {
    /// `(rho + rho~)/2`.
    pub dilation: Q,
    /// `(rho - rho~)/2`.
    pub scale: Q,
    /// `(sig~ - sig)/2`.
    pub rotation: Q,
    /// `(sig~ + sig)/2`.
    pub boost: Q,
}

impl PDecomposition {
    pub fn reconstruct(&self) -> [[Q; 2]; 2] {
        [
            [&self.dilation + &self.scale, &self.boost - &self.rotation],
            [&self.boost + &self.rotation, &self.dilation - &self.scale],
        ]
    }
}

/// `T(X,Y) = S(X,Y) + (rho + rho~)/2 h(X,Y) + (rho~ - rho)/2 Om(X,Y)` on the screen space,
/// as matrices in the `(zeta, zetat)` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TDecomposition {
    pub tensor: [[Q; 2]; 2],
    pub trace_free: [[Q; 2]; 2],
    pub trace_coefficient: Q,
    pub skew_coefficient: Q,
}

/// `h(X,Y) = -(zeta xit + zetat xi)`.
pub fn screen_metric() -> [[Q; 2]; 2] {
    let (z, m) = (Q::zero(), -Q::from_integer(1.into()));
    [[z.clone(), m.clone()], [m, z]]
}

/// `Om(X,Y) = zeta xit - zetat xi`.
pub fn screen_area() -> [[Q; 2]; 2] {
    let (z, o) = (Q::zero(), Q::from_integer(1.into()));
    [[z.clone(), o.clone()], [-o, z]]
}

impl TDecomposition {
    pub fn reconstruct(&self) -> [[Q; 2]; 2] {
        let (h, om) = (screen_metric(), screen_area());
        std::array::from_fn(|i| {
            std::array::from_fn(|j| &(&self.trace_free[i][j] + &(&self.trace_coefficient * &h[i][j])) + &(&self.skew_coefficient * &om[i][j]))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Eigenvalues {
    Real(f64, f64),
    Complex { re: f64, im: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShapeReport {
    pub p: [[Q; 2]; 2],
    pub p_parts: PDecomposition,
    pub t_parts: TDecomposition,
    /// `(rho - rho~)^2 + 4 sig sig~`.
    pub discriminant: Q,
    pub eigenvalues: Eigenvalues,
}

pub fn shape_decompositions(rho: Q, rhot: Q, sigma: Q, sigmat: Q) -> ShapeReport {
    let half = |x: Q| x / Q::from_integer(2.into());
    let p_parts = PDecomposition {
        dilation: half(&rho + &rhot),
        scale: half(&rho - &rhot),
        rotation: half(&sigmat - &sigma),
        boost: half(&sigmat + &sigma),
    };
    let tensor = [[-sigmat.clone(), -rho.clone()], [-rhot.clone(), -sigma.clone()]];
    let t_parts = TDecomposition {
        tensor,
        trace_free: [[-sigmat.clone(), Q::zero()], [Q::zero(), -sigma.clone()]],
        trace_coefficient: p_parts.dilation.clone(),
        skew_coefficient: -p_parts.scale.clone(),
    };
    let diff = &rho - &rhot;
    let discriminant = &diff * &diff + Q::from_integer(4.into()) * &sigma * &sigmat;
    let tr = q_to_f64(&(&rho + &rhot)) / 2.0;
    let root = q_to_f64(&discriminant.abs()).sqrt() / 2.0;
    let eigenvalues = if discriminant.is_negative() {
        Eigenvalues::Complex { re: tr, im: root }
    } else {
        Eigenvalues::Real(tr + root, tr - root)
    };
    ShapeReport {
        p: [[rho, sigma], [sigmat, rhot]],
        p_parts,
        t_parts,
        discriminant,
        eigenvalues,
    }
}

/// Shape data of the spin coefficients at a point, or `None` at a pole.
pub fn shape_at(s: &SpinCoefficients, point: &[Q; 4]) -> Option<ShapeReport> {
    let e = |n: &str| s.by_name(n).eval(point);
    Some(shape_decompositions(e("rho")?, e("rho~")?, e("sig")?, e("sig~")?))
}
