//! Curvature by the tensor route and by spin coefficients, the field-equation and
//! commutator verifiers, and algebraic classification of the self-dual Weyl spinor.

mod equations;
mod tensor;

pub use equations::{commutator_identities, field_equations, walker_commutator_identities, walker_curvature_formulas};
pub use tensor::{bianchi_contracted_check, phi_lambda_from_ricci, riemann, RiemannData, RICCI_SIGN};

use crate::expr::{Expr, ExprError, Identity};
use crate::poly::{q, Poly, RatFun, Var, Q};
use crate::spin::{walker_closed_form, DyadField, Slot, SpinCoefficients};
use crate::walker::{walker_tetrad, Op, Tetrad, WalkerMetric};
use num_traits::Zero;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Dyad components of the curvature spinors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureSpinors {
    pub psi: [RatFun; 5],
    pub psit: [RatFun; 5],
    /// `phi[i][j]` is `Phi_ij`.
    pub phi: [[RatFun; 3]; 3],
    pub lambda: RatFun,
    pub pi: RatFun,
    pub s: RatFun,
}

impl CurvatureSpinors {
    pub fn zero() -> CurvatureSpinors {
        let z = RatFun::zero;
        CurvatureSpinors {
            psi: std::array::from_fn(|_| z()),
            psit: std::array::from_fn(|_| z()),
            phi: std::array::from_fn(|_| std::array::from_fn(|_| z())),
            lambda: z(),
            pi: z(),
            s: z(),
        }
    }

    /// Names in report order.
    pub fn names() -> Vec<String> {
        let mut v: Vec<String> = (0..5).map(|k| format!("Psi{k}")).collect();
        v.extend((0..5).map(|k| format!("Psit{k}")));
        for i in 0..3 {
            for j in 0..3 {
                v.push(format!("Phi{i}{j}"));
            }
        }
        v.extend(["Lam", "Pi", "S"].map(String::from));
        v
    }

    pub fn get(&self, name: &str) -> Option<&RatFun> {
        let digit = |s: &str| s.parse::<usize>().ok();
        if let Some(k) = name.strip_prefix("Psit").and_then(digit) {
            return self.psit.get(k);
        }
        if let Some(k) = name.strip_prefix("Psi").and_then(digit) {
            return self.psi.get(k);
        }
        if let Some(ij) = name.strip_prefix("Phi") {
            let b = ij.as_bytes();
            if b.len() == 2 && b[0].is_ascii_digit() && b[1].is_ascii_digit() {
                let (i, j) = ((b[0] - b'0') as usize, (b[1] - b'0') as usize);
                return self.phi.get(i).and_then(|r| r.get(j));
            }
            return None;
        }
        match name {
            "Lam" => Some(&self.lambda),
            "Pi" => Some(&self.pi),
            "S" => Some(&self.s),
            _ => None,
        }
    }

    pub fn get_mut(&mut self, name: &str) -> Option<&mut RatFun> {
        let digit = |s: &str| s.parse::<usize>().ok();
        if let Some(k) = name.strip_prefix("Psit").and_then(digit) {
            return self.psit.get_mut(k);
        }
        if let Some(k) = name.strip_prefix("Psi").and_then(digit) {
            return self.psi.get_mut(k);
        }
        if let Some(ij) = name.strip_prefix("Phi") {
            let b = ij.as_bytes();
            if b.len() == 2 {
                let (i, j) = ((b[0].wrapping_sub(b'0')) as usize, (b[1].wrapping_sub(b'0')) as usize);
                return self.phi.get_mut(i).and_then(|r| r.get_mut(j));
            }
            return None;
        }
        match name {
            "Lam" => Some(&mut self.lambda),
            "Pi" => Some(&mut self.pi),
            "S" => Some(&mut self.s),
            _ => None,
        }
    }

    pub fn entries(&self) -> Vec<(String, RatFun)> {
        Self::names()
            .into_iter()
            .map(|n| {
                let v = self.get(&n).expect("known name").clone();
                (n, v)
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries().iter().all(|(_, v)| v.is_zero())
    }

    /// `Psi_ABCD` as a field with four lower unprimed indices.
    pub fn psi_field(&self) -> DyadField {
        DyadField::from_fn(vec![Slot::DOWN; 4], |i| self.psi[ones(i)].clone())
    }

    /// `Psit_A'B'C'D'` as a field with four lower primed indices.
    pub fn psit_field(&self) -> DyadField {
        DyadField::from_fn(vec![Slot::DOWN_P; 4], |i| self.psit[ones(i)].clone())
    }

    /// `Phi_ABA'B'` with slots `A, B, A', B'`.
    pub fn phi_field(&self) -> DyadField {
        DyadField::from_fn(vec![Slot::DOWN, Slot::DOWN, Slot::DOWN_P, Slot::DOWN_P], |i| {
            self.phi[ones(&i[..2])][ones(&i[2..])].clone()
        })
    }

    /// Components after priming the dyads.
    pub fn prime(&self) -> CurvatureSpinors {
        let p = &self.psi;
        let f = &self.phi;
        CurvatureSpinors {
            psi: [p[4].clone(), -&p[3], p[2].clone(), -&p[1], p[0].clone()],
            psit: {
                let t = &self.psit;
                [t[4].clone(), -&t[3], t[2].clone(), -&t[1], t[0].clone()]
            },
            phi: [
                [f[2][2].clone(), -&f[2][1], f[2][0].clone()],
                [-&f[1][2], f[1][1].clone(), -&f[1][0]],
                [f[0][2].clone(), -&f[0][1], f[0][0].clone()],
            ],
            lambda: self.lambda.clone(),
            pi: self.pi.clone(),
            s: self.s.clone(),
        }
    }

    /// The tilde relabelling: `Psi <-> Psit` and `Phi_ij <-> Phi_ji`.
    pub fn tilde(&self) -> CurvatureSpinors {
        CurvatureSpinors {
            psi: self.psit.clone(),
            psit: self.psi.clone(),
            phi: std::array::from_fn(|i| std::array::from_fn(|j| self.phi[j][i].clone())),
            lambda: self.lambda.clone(),
            pi: self.pi.clone(),
            s: self.s.clone(),
        }
    }
}

fn ones(idx: &[usize]) -> usize {
    idx.iter().sum()
}

impl fmt::Display for CurvatureSpinors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, v) in self.entries() {
            writeln!(f, "{n} = {v}")?;
        }
        Ok(())
    }
}

/// Metric partials `a1..a4, b1..b4, c1..c4` and the constants `h, t, q`.
fn walker_symbols(w: &WalkerMetric) -> BTreeMap<String, RatFun> {
    let mut env = BTreeMap::new();
    for (name, p) in [("a", &w.a), ("b", &w.b), ("c", &w.c)] {
        for v in Var::ALL {
            env.insert(format!("{name}{}", v.index() + 1), RatFun::from(p.diff(v)));
        }
    }
    env.insert("h".into(), RatFun::constant(q(1, 2)));
    env.insert("t".into(), RatFun::constant(q(1, 3)));
    env.insert("q".into(), RatFun::constant(q(1, 4)));
    env
}

/// Evaluate an expression against coefficients, curvature and extra symbols in a frame.
pub fn evaluate(
    e: &Expr,
    s: &SpinCoefficients,
    c: Option<&CurvatureSpinors>,
    extra: &BTreeMap<String, RatFun>,
    t: &Tetrad,
) -> Result<RatFun, ExprError> {
    let env = |name: &str| -> Option<RatFun> {
        if let Some(coef) = crate::spin::Coef::parse(name) {
            return Some(s.get(coef).clone());
        }
        if let Some(v) = extra.get(name) {
            return Some(v.clone());
        }
        c.and_then(|c| c.get(name).cloned())
    };
    e.eval(&env, &|op: Op, f: &RatFun| t.apply(op, f))
}

/// Curvature of the Walker spin frames from the closed-form coefficients.
pub fn walker_curvature_components(w: &WalkerMetric) -> CurvatureSpinors {
    let s = walker_closed_form(w);
    let t = walker_tetrad(w);
    let extra = walker_symbols(w);
    let mut out = CurvatureSpinors::zero();
    let mut seen = std::collections::BTreeSet::new();
    for (name, e) in walker_curvature_formulas() {
        if seen.insert(name.clone()) {
            let v = evaluate(e, &s, None, &extra, &t).expect("closed formulas are bound");
            *out.get_mut(name).expect("known name") = v;
        }
    }
    out.lambda = out.s.scale(&q(-1, 24));
    out.pi = out.lambda.clone();
    out
}

/// Differences between every alternative Walker curvature formula and the adopted
/// value, plus `Psit2 + 2 Lam` and `S - (a11 + b22 + 2 c12)`.
pub fn walker_curvature_redundancy(w: &WalkerMetric) -> Vec<(String, RatFun)> {
    let s = walker_closed_form(w);
    let t = walker_tetrad(w);
    let c = walker_curvature_components(w);
    let extra = walker_symbols(w);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    let mut k = 0;
    for (name, e) in walker_curvature_formulas() {
        let first = seen.insert(name.clone());
        if first {
            continue;
        }
        k += 1;
        let v = evaluate(e, &s, Some(&c), &extra, &t).expect("bound");
        out.push((format!("{name}#{k}"), &v - c.get(name).expect("known")));
    }
    out.push(("Psit2+2Lam".into(), &c.psit[2] + &c.lambda.scale(&q(2, 1))));
    let s_expected = &(&w.a.d(&[Var::U, Var::U]) + &w.b.d(&[Var::V, Var::V])) + &w.c.d(&[Var::U, Var::V]).scale_int(2);
    out.push(("S-(a11+b22+2c12)".into(), &c.s - &RatFun::from(s_expected)));
    out
}

fn residuals(
    ids: &[Identity],
    s: &SpinCoefficients,
    c: Option<&CurvatureSpinors>,
    extra: &BTreeMap<String, RatFun>,
    t: &Tetrad,
) -> Vec<(String, RatFun)> {
    ids.par_iter()
        .map(|id| {
            let r = evaluate(&id.residual, s, c, extra, t).unwrap_or_else(|e| panic!("{}: {e}", id.label));
            (id.label.clone(), r)
        })
        .collect()
}

/// All 48 field-equation residuals.
pub fn field_equation_residuals(s: &SpinCoefficients, c: &CurvatureSpinors, t: &Tetrad) -> Vec<(String, RatFun)> {
    residuals(field_equations(), s, Some(c), &BTreeMap::new(), t)
}

/// The six commutator residuals on the scalar `f`.
pub fn commutator_residuals(s: &SpinCoefficients, t: &Tetrad, f: &Poly) -> Vec<(String, RatFun)> {
    let mut extra = BTreeMap::new();
    extra.insert("f".to_string(), RatFun::from(f));
    residuals(commutator_identities(), s, None, &extra, t)
}

/// Residuals of the Walker-frame commutator forms on `f`.
pub fn walker_commutator_residuals(w: &WalkerMetric, f: &Poly) -> Vec<(String, RatFun)> {
    let s = walker_closed_form(w);
    let t = walker_tetrad(w);
    let mut extra = walker_symbols(w);
    extra.insert("f".to_string(), RatFun::from(f));
    residuals(walker_commutator_identities(), &s, None, &extra, &t)
}

/// All monomials in `u, v, x, y` of total degree at most `d`.
pub fn monomials_up_to(d: u32) -> Vec<Poly> {
    let mut out = Vec::new();
    for i in 0..=d {
        for j in 0..=d - i {
            for k in 0..=d - i - j {
                for l in 0..=d - i - j - k {
                    out.push(Poly::monomial(Q::from_integer(1.into()), [i, j, k, l]));
                }
            }
        }
    }
    out
}

/// Algebraic type of the self-dual Weyl spinor of a Walker metric at a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SdType {
    /// `{2,2}Ia`
    D22Ia,
    /// `{211}II` or `{1 1bar 2}II`; the criterion does not separate them.
    II211,
    /// `{4}II`
    N4II,
    /// `{31}III`
    III31,
    SdFlat,
}

impl SdType {
    pub fn label(self) -> &'static str {
        match self {
            SdType::D22Ia => "{2,2}Ia",
            SdType::II211 => "{211}II/{1 1bar 2}II",
            SdType::N4II => "{4}II",
            SdType::III31 => "{31}III",
            SdType::SdFlat => "SD-flat",
        }
    }
}

impl fmt::Display for SdType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("`{0}` has a vanishing denominator at the point")]
    Singular(String),
}

/// The combinations `A`, `B` recovered from `Psit3 = -(B + S c)/8` and
/// `Psit4 = (6 B c - A + S (3 c^2 - 1))/24`.
pub fn sd_invariants(c: &CurvatureSpinors, w: &WalkerMetric) -> (RatFun, RatFun) {
    let cc = RatFun::from(&w.c);
    let s = &c.s;
    let b = &c.psit[3].scale(&q(-8, 1)) - &(s * &cc);
    let three_c2_minus_1 = &(&cc * &cc).scale(&q(3, 1)) - &RatFun::one();
    let a = &(&(&b * &cc).scale(&q(6, 1)) + &(s * &three_c2_minus_1)) - &c.psit[4].scale(&q(24, 1));
    (a, b)
}

/// Classify the self-dual Weyl spinor at `point`.
pub fn classify_sd_weyl(w: &WalkerMetric, c: &CurvatureSpinors, point: &[Q; 4]) -> Result<SdType, ClassifyError> {
    let at = |name: &str, f: &RatFun| f.eval(point).ok_or_else(|| ClassifyError::Singular(name.to_string()));
    let mut all_zero = true;
    for k in 0..5 {
        if !at(&format!("Psit{k}"), &c.psit[k])?.is_zero() {
            all_zero = false;
        }
    }
    if all_zero {
        return Ok(SdType::SdFlat);
    }
    let (a, b) = sd_invariants(c, w);
    let s = at("S", &c.s)?;
    let a = at("A", &a)?;
    let b = at("B", &b)?;
    Ok(if !s.is_zero() {
        let disc = &(&s * &s) + &(&(&a * &s) + &(&b * &b * Q::from_integer(3.into())));
        if disc.is_zero() {
            SdType::D22Ia
        } else {
            SdType::II211
        }
    } else if !b.is_zero() {
        SdType::III31
    } else {
        SdType::N4II
    })
}
