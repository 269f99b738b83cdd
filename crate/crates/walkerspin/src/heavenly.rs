//! Ricci-null Walker metrics generated by a potential `theta` together with the data
//! `f, g, F, G, h`, their invariants, curvature formulas and the Einstein test.
//!
//! Derivative subscripts follow the coordinates: 1 = u, 2 = v, 3 = x, 4 = y.

use crate::curvature::{sd_invariants, walker_curvature_components, CurvatureSpinors, SdType};
use crate::poly::{q, ParseError, Poly, RatFun, Var, Q};
use crate::walker::WalkerMetric;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use Var::{U, V, X, Y};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeavenlyError {
    #[error("invalid potential: {0}")]
    Invalid(String),
    #[error("scalar-flat form required: {0}")]
    NotScalarFlat(String),
    #[error("parse error in `{field}`: {source}")]
    Parse { field: &'static str, source: ParseError },
}

/// The input data `(theta, f, g, F, G, h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeavenlyPotential {
    pub theta: Poly,
    /// Function of `(u, x, y)`.
    pub f: Poly,
    /// Function of `(v, x, y)`.
    pub g: Poly,
    /// Function of `(u, x, y)` with `F_1 = f`.
    pub big_f: Poly,
    /// Function of `(v, x, y)` with `G_2 = g`.
    pub big_g: Poly,
    /// Function of `(x, y)`.
    pub h: Poly,
}

/// String form used in JSON spec files. Missing fields default to `0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct PotentialSpec {
    pub label: Option<String>,
    pub theta: String,
    pub f: String,
    pub g: String,
    #[serde(rename = "F")]
    pub big_f: String,
    #[serde(rename = "G")]
    pub big_g: String,
    pub h: String,
}

fn parse_field(field: &'static str, s: &str) -> Result<Poly, HeavenlyError> {
    let s = if s.trim().is_empty() { "0" } else { s };
    s.parse().map_err(|source| HeavenlyError::Parse { field, source })
}

impl HeavenlyPotential {
    /// `theta` alone, with `f = g = F = G = h = 0`.
    pub fn from_theta(theta: Poly) -> HeavenlyPotential {
        HeavenlyPotential {
            theta,
            f: Poly::zero(),
            g: Poly::zero(),
            big_f: Poly::zero(),
            big_g: Poly::zero(),
            h: Poly::zero(),
        }
    }

    /// The scalar-flat form `F = u f`, `G = v g`, `h = 0` with `f, g` functions of `(x, y)`.
    pub fn scalar_flat(theta: Poly, f: Poly, g: Poly) -> HeavenlyPotential {
        HeavenlyPotential {
            big_f: &Poly::u() * &f,
            big_g: &Poly::v() * &g,
            theta,
            f,
            g,
            h: Poly::zero(),
        }
    }

    pub fn parse(theta: &str, f: &str, g: &str, big_f: &str, big_g: &str, h: &str) -> Result<HeavenlyPotential, HeavenlyError> {
        Ok(HeavenlyPotential {
            theta: parse_field("theta", theta)?,
            f: parse_field("f", f)?,
            g: parse_field("g", g)?,
            big_f: parse_field("F", big_f)?,
            big_g: parse_field("G", big_g)?,
            h: parse_field("h", h)?,
        })
    }

    pub fn from_spec(s: &PotentialSpec) -> Result<HeavenlyPotential, HeavenlyError> {
        HeavenlyPotential::parse(&s.theta, &s.f, &s.g, &s.big_f, &s.big_g, &s.h)
    }

    /// Image under `u <-> v`, `x <-> y`, `f <-> g`, `F <-> G`.
    pub fn swapped(&self) -> HeavenlyPotential {
        let sw = |p: &Poly| p.permute_vars([V, U, Y, X]);
        HeavenlyPotential {
            theta: sw(&self.theta),
            f: sw(&self.g),
            g: sw(&self.f),
            big_f: sw(&self.big_g),
            big_g: sw(&self.big_f),
            h: sw(&self.h),
        }
    }
}

/// Failed defining relations, as named residual polynomials, and variable-dependence
/// violations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidityReport {
    pub residuals: Vec<(String, Poly)>,
    pub dependence: Vec<String>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.residuals.is_empty() && self.dependence.is_empty()
    }

    fn describe(&self) -> String {
        let mut parts: Vec<String> = self.residuals.iter().map(|(n, r)| format!("{n} = {r}")).collect();
        parts.extend(self.dependence.iter().cloned());
        parts.join("; ")
    }
}

/// Checks `f_1 = g_2 = h`, `F_1 = f`, `G_2 = g` and the declared variable dependence.
pub fn validate_potential(p: &HeavenlyPotential) -> ValidityReport {
    let mut report = ValidityReport::default();
    let mut check = |name: &str, r: Poly| {
        if !r.is_zero() {
            report.residuals.push((name.to_string(), r));
        }
    };
    check("f_u - h", &p.f.diff(U) - &p.h);
    check("g_v - h", &p.g.diff(V) - &p.h);
    check("F_u - f", &p.big_f.diff(U) - &p.f);
    check("G_v - g", &p.big_g.diff(V) - &p.g);
    let forbid: [(&str, &Poly, &[Var]); 5] = [
        ("f", &p.f, &[V]),
        ("g", &p.g, &[U]),
        ("F", &p.big_f, &[V]),
        ("G", &p.big_g, &[U]),
        ("h", &p.h, &[U, V]),
    ];
    for (name, poly, vars) in forbid {
        for &v in vars {
            if poly.depends_on(v) {
                report.dependence.push(format!("{name} depends on {}", v.name()));
            }
        }
    }
    report
}

fn require_valid(p: &HeavenlyPotential) -> Result<(), HeavenlyError> {
    let r = validate_potential(p);
    if r.is_valid() {
        Ok(())
    } else {
        Err(HeavenlyError::Invalid(r.describe()))
    }
}

/// `a = -2 theta_22 + F`, `b = -2 theta_11 + G`, `c = 2 theta_12`.
pub fn build_metric(p: &HeavenlyPotential) -> Result<WalkerMetric, HeavenlyError> {
    require_valid(p)?;
    Ok(metric_of(p))
}

fn metric_of(p: &HeavenlyPotential) -> WalkerMetric {
    let t = &p.theta;
    WalkerMetric::new(
        &t.d(&[V, V]).scale_int(-2) + &p.big_f,
        &t.d(&[U, U]).scale_int(-2) + &p.big_g,
        t.d(&[U, V]).scale_int(2),
    )
}

/// `box H = -a H_11 - 2 c H_12 - b H_22 + 2 H_13 + 2 H_24 - f H_1 - g H_2`.
pub fn box_operator(p: &HeavenlyPotential, w: &WalkerMetric, hh: &Poly) -> Poly {
    let terms = [
        -(&w.a * &hh.d(&[U, U])),
        -(&w.c * &hh.d(&[U, V])).scale_int(2),
        -(&w.b * &hh.d(&[V, V])),
        hh.d(&[U, X]).scale_int(2),
        hh.d(&[V, Y]).scale_int(2),
        -(&p.f * &hh.diff(U)),
        -(&p.g * &hh.diff(V)),
    ];
    terms.iter().fold(Poly::zero(), |acc, t| &acc + t)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeavenlyInvariants {
    /// `S = 2h`.
    pub s: Poly,
    /// `B + S c = 2(f_4 - g_3)`.
    pub b_plus_sc: Poly,
    /// `theta_13 + theta_24 + theta_11 theta_22 - theta_12^2`.
    pub p: Poly,
    /// `(g theta_2 - G theta_22 + f theta_1 - F theta_11 - h theta)/2`.
    pub q: Poly,
    /// `-(v F_4 + u G_3)/4`.
    pub t: Poly,
    /// `P + Q + T`.
    pub r: Poly,
    /// `[A_00, A_01, A_11] = [(P+Q)_11, (P+Q+T)_12, (P+Q)_22]`.
    pub a_ab: [Poly; 3],
}

pub fn invariants(p: &HeavenlyPotential) -> Result<HeavenlyInvariants, HeavenlyError> {
    require_valid(p)?;
    let t = &p.theta;
    let pp = &(&t.d(&[U, X]) + &t.d(&[V, Y])) + &(&(&t.d(&[U, U]) * &t.d(&[V, V])) - &t.d(&[U, V]).pow(2));
    let qq = (&(&(&(&p.g * &t.diff(V)) - &(&p.big_g * &t.d(&[V, V]))) + &(&(&p.f * &t.diff(U)) - &(&p.big_f * &t.d(&[U, U]))))
        - &(&p.h * t))
        .scale(&q(1, 2));
    let tt = (&(&Poly::v() * &p.big_f.diff(Y)) + &(&Poly::u() * &p.big_g.diff(X))).scale(&q(-1, 4));
    let pq = &pp + &qq;
    let r = &pq + &tt;
    Ok(HeavenlyInvariants {
        s: p.h.scale_int(2),
        b_plus_sc: (&p.f.diff(Y) - &p.g.diff(X)).scale_int(2),
        a_ab: [pq.d(&[U, U]), r.d(&[U, V]), pq.d(&[V, V])],
        p: pp,
        q: qq,
        t: tt,
        r,
    })
}

/// Both sides of the identity expressing `A - 6Bc - S(3c^2 - 1)` through `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    /// From the curvature of the built metric.
    pub curvature_side: RatFun,
    /// From the potential.
    pub potential_side: Poly,
}

impl IdentityCheck {
    pub fn residual(&self) -> RatFun {
        &self.curvature_side - &RatFun::from(&self.potential_side)
    }
}

/// `12 box R + 24 f R_1 + 24 g R_2 - 3(f G_3 + g F_4) - 6(F_44 + G_33) + 3(v f f_4 + u g g_3)
///  + 6(v f_34 + u g_34) - 3 v h_4 (F - 2 theta_22) - 3 u h_3 (G - 2 theta_11)`.
pub fn identity_potential_side(p: &HeavenlyPotential, inv: &HeavenlyInvariants, w: &WalkerMetric) -> Poly {
    let (u, v) = (Poly::u(), Poly::v());
    let r = &inv.r;
    let t = &p.theta;
    let terms = [
        box_operator(p, w, r).scale_int(12),
        (&p.f * &r.diff(U)).scale_int(24),
        (&p.g * &r.diff(V)).scale_int(24),
        (&(&p.f * &p.big_g.diff(X)) + &(&p.g * &p.big_f.diff(Y))).scale_int(-3),
        (&p.big_f.d(&[Y, Y]) + &p.big_g.d(&[X, X])).scale_int(-6),
        (&(&(&v * &p.f) * &p.f.diff(Y)) + &(&(&u * &p.g) * &p.g.diff(X))).scale_int(3),
        (&(&v * &p.f.d(&[X, Y])) + &(&u * &p.g.d(&[X, Y]))).scale_int(6),
        (&(&v * &p.h.diff(Y)) * &(&p.big_f - &t.d(&[V, V]).scale_int(2))).scale_int(-3),
        (&(&u * &p.h.diff(X)) * &(&p.big_g - &t.d(&[U, U]).scale_int(2))).scale_int(-3),
    ];
    terms.iter().fold(Poly::zero(), |acc, t| &acc + t)
}

/// Evaluates both sides of the identity on the built metric.
pub fn identity_check(p: &HeavenlyPotential) -> Result<IdentityCheck, HeavenlyError> {
    let inv = invariants(p)?;
    let w = metric_of(p);
    let curv = walker_curvature_components(&w);
    let (a, b) = sd_invariants(&curv, &w);
    let c = RatFun::from(&w.c);
    let three_c2_minus_1 = &(&c * &c).scale(&q(3, 1)) - &RatFun::one();
    let curvature_side = &(&a - &(&b * &c).scale(&q(6, 1))) - &(&curv.s * &three_c2_minus_1);
    Ok(IdentityCheck {
        curvature_side,
        potential_side: identity_potential_side(p, &inv, &w),
    })
}

/// Unprimed frame spinors of the Walker spin frame in which `delta_A = alpha_A d_v - beta_A d_u`.
pub const ALPHA: [i64; 2] = [0, 1];
pub const BETA: [i64; 2] = [-1, 0];

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// Component `delta_{A1} ... delta_{Ak} F` for the index list `idx`, through the expansion
/// `sum_q (-1)^q C(k,q) alpha_(A ... alpha beta ... beta_K) d^k F / du^q dv^(k-q)`.
pub fn delta_multi(f: &Poly, idx: &[usize]) -> Poly {
    let k = idx.len();
    let perms = permutations(k);
    let mut out = Poly::zero();
    for qn in 0..=k {
        let mut sym = 0i64;
        for perm in &perms {
            let prod: i64 = perm
                .iter()
                .enumerate()
                .map(|(slot, &factor)| if factor < k - qn { ALPHA[idx[slot]] } else { BETA[idx[slot]] })
                .product();
            sym += prod;
        }
        if sym == 0 {
            continue;
        }
        let sign = if qn % 2 == 0 { 1 } else { -1 };
        let coeff = Q::new((sign * binomial(k, qn) * sym).into(), (perms.len() as i64).into());
        let mut vars = vec![U; qn];
        vars.extend(std::iter::repeat_n(V, k - qn));
        out = &out + &f.d(&vars).scale(&coeff);
    }
    out
}

/// `Psi_0 .. Psi_4` by three routes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiComponents {
    /// `-theta_1111, -theta_1112, -theta_1122 + h/6, -theta_1222, -theta_2222`.
    pub direct: [Poly; 5],
    /// `-delta^4 (theta - u^2 v^2 h / 24)` with `k` indices equal to 1.
    pub delta: [Poly; 5],
    /// From the curvature of the built metric.
    pub curvature: [RatFun; 5],
    /// Whether every ordering of the indices gives the same `delta^4` component.
    pub delta_symmetric: bool,
}

impl PsiComponents {
    pub fn routes_agree(&self) -> bool {
        (0..5).all(|k| self.direct[k] == self.delta[k] && RatFun::from(&self.direct[k]) == self.curvature[k])
    }
}

pub fn psi_components(p: &HeavenlyPotential) -> Result<PsiComponents, HeavenlyError> {
    require_valid(p)?;
    let t = &p.theta;
    let h6 = p.h.scale(&q(1, 6));
    let direct = [
        -t.d(&[U, U, U, U]),
        -t.d(&[U, U, U, V]),
        &(-t.d(&[U, U, V, V])) + &h6,
        -t.d(&[U, V, V, V]),
        -t.d(&[V, V, V, V]),
    ];
    let uv2 = &Poly::u().pow(2) * &Poly::v().pow(2);
    let pot = t - &(&uv2 * &p.h).scale(&q(1, 24));
    let mut delta_symmetric = true;
    let delta = std::array::from_fn(|k| {
        let base = -delta_multi(&pot, &ones_last(k));
        for perm in permutations(4) {
            let idx: Vec<usize> = perm.iter().map(|&i| usize::from(i >= 4 - k)).collect();
            if -delta_multi(&pot, &idx) != base {
                delta_symmetric = false;
            }
        }
        base
    });
    let curvature = walker_curvature_components(&metric_of(p)).psi;
    Ok(PsiComponents {
        direct,
        delta,
        curvature,
        delta_symmetric,
    })
}

fn ones_last(k: usize) -> Vec<usize> {
    (0..4).map(|i| usize::from(i >= 4 - k)).collect()
}

/// Curvature of a scalar-flat potential by the closed formulas, compared with the
/// curvature of the built metric.
#[derive(Clone, Debug)]
pub struct ScalarFlatReport {
    /// `(g_3 - f_4)/4`.
    pub psit3: Poly,
    /// `-box R/2 - f R_1 - g R_2 + (u g - v f)(f_4 - g_3)/8 + (u (f_4 - g_3)_4 - v (f_4 - g_3)_3)/4`.
    pub psit4: Poly,
    /// `[A_00, A_01, A_11] = delta_A delta_B R`.
    pub a_ab: [Poly; 3],
    pub psit_matches: bool,
    /// `Phi = A_AB pi_A' pi_B'` agrees with the curvature route, all other `Phi` vanish.
    pub phi_matches: bool,
    /// The type at a generic point.
    pub sd_type: SdType,
    pub curvature: CurvatureSpinors,
}

fn require_scalar_flat(p: &HeavenlyPotential) -> Result<(), HeavenlyError> {
    require_valid(p)?;
    let fail = |m: &str| Err(HeavenlyError::NotScalarFlat(m.to_string()));
    if !p.h.is_zero() {
        return fail("h must vanish");
    }
    if p.f.depends_on(U) || p.g.depends_on(V) {
        return fail("f and g must be functions of (x, y)");
    }
    if p.big_f != &Poly::u() * &p.f || p.big_g != &Poly::v() * &p.g {
        return fail("F = u f and G = v g are required");
    }
    Ok(())
}

pub fn scalar_flat_case(p: &HeavenlyPotential) -> Result<ScalarFlatReport, HeavenlyError> {
    require_scalar_flat(p)?;
    let inv = invariants(p)?;
    let w = metric_of(p);
    let (u, v) = (Poly::u(), Poly::v());
    let r = &inv.r;
    let k = &p.f.diff(Y) - &p.g.diff(X);
    let psit3 = (-&k).scale(&q(1, 4));
    let psit4 = [
        box_operator(p, &w, r).scale(&q(-1, 2)),
        -(&p.f * &r.diff(U)),
        -(&p.g * &r.diff(V)),
        (&(&(&u * &p.g) - &(&v * &p.f)) * &k).scale(&q(1, 8)),
        (&(&u * &k.diff(Y)) - &(&v * &k.diff(X))).scale(&q(1, 4)),
    ]
    .iter()
    .fold(Poly::zero(), |acc, t| &acc + t);
    let a_ab = [delta_multi(r, &[0, 0]), delta_multi(r, &[0, 1]), delta_multi(r, &[1, 1])];
    let curvature = walker_curvature_components(&w);
    let psit_matches = curvature.psit[3] == RatFun::from(&psit3) && curvature.psit[4] == RatFun::from(&psit4);
    let phi_matches = (0..3).all(|i| {
        (0..3).all(|j| {
            let expected = if j == 2 { RatFun::from(&a_ab[i]) } else { RatFun::zero() };
            curvature.phi[i][j] == expected
        })
    });
    let sd_type = if curvature.psit.iter().all(RatFun::is_zero) {
        SdType::SdFlat
    } else if !k.is_zero() {
        SdType::III31
    } else {
        SdType::N4II
    };
    Ok(ScalarFlatReport {
        psit3,
        psit4,
        a_ab,
        psit_matches,
        phi_matches,
        sd_type,
        curvature,
    })
}

/// The Einstein test for scalar-flat potentials.
#[derive(Clone, Debug)]
pub struct EinsteinReport {
    /// `R` from the scalar-flat forms of `Q` and `T`.
    pub r: Poly,
    /// `[R_11, R_12, R_22]`.
    pub second_derivatives: [Poly; 3],
    /// `R` is affine in `u, v`.
    pub einstein: bool,
    /// All `Phi` from the tensor route vanish on the built metric.
    pub tensor_route_einstein: bool,
    /// The scalar-flat `R` equals the general `P + Q + T`.
    pub r_matches_general: bool,
}

impl EinsteinReport {
    pub fn agrees(&self) -> bool {
        self.einstein == self.tensor_route_einstein && self.r_matches_general
    }
}

pub fn einstein_check(p: &HeavenlyPotential) -> Result<EinsteinReport, HeavenlyError> {
    require_scalar_flat(p)?;
    let t = &p.theta;
    let (u, v) = (Poly::u(), Poly::v());
    let pp = &(&t.d(&[U, X]) + &t.d(&[V, Y])) + &(&(&t.d(&[U, U]) * &t.d(&[V, V])) - &t.d(&[U, V]).pow(2));
    let qq = (&(&p.g * &(&t.diff(V) - &(&v * &t.d(&[V, V])))) + &(&p.f * &(&t.diff(U) - &(&u * &t.d(&[U, U])))))
        .scale(&q(1, 2));
    let tt = (&(&u * &v) * &(&p.f.diff(Y) + &p.g.diff(X))).scale(&q(-1, 4));
    let r = &(&pp + &qq) + &tt;
    let second_derivatives = [r.d(&[U, U]), r.d(&[U, V]), r.d(&[V, V])];
    let einstein = second_derivatives.iter().all(Poly::is_zero);
    let w = metric_of(p);
    let tensor = crate::walker::assemble_metric(&w);
    let ch = crate::walker::christoffel(&tensor);
    let rd = crate::curvature::riemann(&tensor, &ch);
    let tetrad = crate::walker::walker_tetrad(&w);
    let tensor_route_einstein = crate::curvature::phi_lambda_from_ricci(&rd, &tensor, &tetrad)
        .map(|(phi, _)| phi.iter().flatten().all(RatFun::is_zero))
        .unwrap_or(false);
    let r_matches_general = invariants(p)?.r == r;
    Ok(EinsteinReport {
        r,
        second_derivatives,
        einstein,
        tensor_route_einstein,
        r_matches_general,
    })
}

/// A random valid potential: `f = u h + f0`, `F = u^2 h/2 + u f0 + F0`, and the same with
/// `v`, `g0`, `G0`, where `h, f0, g0, F0, G0` depend on `(x, y)` only.
pub fn random_potential(rng: &mut crate::sample::SampleRng, degree: u32) -> HeavenlyPotential {
    use crate::sample::random_poly_in;
    let xy = [X, Y];
    let low = degree.saturating_sub(2).max(1);
    let theta = random_poly_in(rng, &[U, V, X, Y], degree, 6);
    let h = random_poly_in(rng, &xy, low, 2);
    let f0 = random_poly_in(rng, &xy, low, 2);
    let g0 = random_poly_in(rng, &xy, low, 2);
    let big_f0 = random_poly_in(rng, &xy, low, 2);
    let big_g0 = random_poly_in(rng, &xy, low, 2);
    let (u, v) = (Poly::u(), Poly::v());
    let half = q(1, 2);
    HeavenlyPotential {
        f: &(&u * &h) + &f0,
        g: &(&v * &h) + &g0,
        big_f: &(&(&u.pow(2) * &h).scale(&half) + &(&u * &f0)) + &big_f0,
        big_g: &(&(&v.pow(2) * &h).scale(&half) + &(&v * &g0)) + &big_g0,
        theta,
        h,
    }
}

/// Whether `R` is affine in `(u, v)`, the hyperheavenly form of the Einstein condition.
pub fn is_affine_in_uv(r: &Poly) -> bool {
    [r.d(&[U, U]), r.d(&[U, V]), r.d(&[V, V])].iter().all(Poly::is_zero)
}
