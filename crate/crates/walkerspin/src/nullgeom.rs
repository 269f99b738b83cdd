//! Null distributions: alpha-distributions from a primed spinor field, the invariants
//! `S_a`, `T_a`, `omega_A`, `eta_A`, Weyl principal spinor tests, the Goldberg-Sachs
//! divergence condition, Frobenius checks and adapted-frame relation suites.

use crate::curvature::CurvatureSpinors;
use crate::geometry::WalkerGeometry;
use crate::poly::{Poly, RatFun, Var};
use crate::spin::{dyad_covector_to_coord, DyadField, Slot, SpinCoefficients};
use crate::walker::WalkerMetric;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NullGeomError {
    #[error("spinor field vanishes identically")]
    ZeroSpinor,
    #[error("alpha-distribution is not integrable")]
    NotIntegrable,
    #[error("S_a vanishes identically, so the statement is vacuous")]
    WalkerCase,
    #[error("multiplicity index must be 2, 3 or 4, got {0}")]
    Multiplicity(usize),
    #[error("unknown relation suite `{0}`")]
    UnknownSuite(String),
}

/// `pi^{A'} = p o^{A'} + q iota^{A'}` in the Walker primed frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimedSpinorField {
    pub p: Poly,
    pub q: Poly,
}

impl PrimedSpinorField {
    pub fn new(p: Poly, q: Poly) -> Result<PrimedSpinorField, NullGeomError> {
        if p.is_zero() && q.is_zero() {
            return Err(NullGeomError::ZeroSpinor);
        }
        Ok(PrimedSpinorField { p, q })
    }

    /// The parallel spinor `o^{A'}` of the Walker frame.
    pub fn walker() -> PrimedSpinorField {
        PrimedSpinorField {
            p: Poly::one(),
            q: Poly::zero(),
        }
    }

    pub fn scaled(&self, k: &Poly) -> PrimedSpinorField {
        PrimedSpinorField {
            p: &self.p * k,
            q: &self.q * k,
        }
    }

    pub fn upper(&self) -> DyadField {
        DyadField::spinor(Slot::UP_P, RatFun::from(&self.p), RatFun::from(&self.q))
    }

    /// `pi_{A'} = (-q, p)`.
    pub fn lower(&self) -> DyadField {
        DyadField::spinor(Slot::DOWN_P, RatFun::from(-&self.q), RatFun::from(&self.p))
    }

    /// A spinor `xi^{A'}` with `pi_{A'} xi^{A'} = 1`.
    pub fn dual(&self) -> DyadField {
        let (p, q) = (RatFun::from(&self.p), RatFun::from(&self.q));
        let (x0, x1) = if self.q.is_zero() {
            (RatFun::zero(), p.recip().expect("p nonzero"))
        } else if self.p.is_zero() {
            (-q.recip().expect("q nonzero"), RatFun::zero())
        } else {
            let n = (&(&p * &p) + &(&q * &q)).recip().expect("p, q not both zero");
            (-(&q * &n), &p * &n)
        };
        DyadField::spinor(Slot::UP_P, x0, x1)
    }
}

/// A covector field in coordinate components `(u, v, x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm(pub [RatFun; 4]);

impl OneForm {
    pub fn gradient(f: &Poly) -> OneForm {
        OneForm(std::array::from_fn(|i| RatFun::from(f.diff(Var::from_index(i)))))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    /// `(dw)_{ab} = d_a w_b - d_b w_a`.
    pub fn exterior_derivative(&self) -> [[RatFun; 4]; 4] {
        std::array::from_fn(|a| {
            std::array::from_fn(|b| &self.0[b].diff(Var::from_index(a)) - &self.0[a].diff(Var::from_index(b)))
        })
    }
}

/// Index triples of the four independent components of a 3-form.
pub const THREE_FORM_INDICES: [[usize; 3]; 4] = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];

/// The 3-form `dl ^ l`, listed over [`THREE_FORM_INDICES`]. It vanishes exactly when
/// the hyperplane field annihilated by `l` is integrable.
pub fn frobenius_check(l: &OneForm) -> [RatFun; 4] {
    let dl = l.exterior_derivative();
    let w = &l.0;
    THREE_FORM_INDICES.map(|[a, b, c]| &(&(&dl[a][b] * &w[c]) + &(&dl[b][c] * &w[a])) + &(&dl[c][a] * &w[b]))
}

fn contract_all(field: DyadField, with: &DyadField, copies: usize) -> DyadField {
    let mut f = field;
    for _ in 0..copies {
        let last = f.rank() - 1;
        f = f.contract_with(last, with).expect("matching valence");
    }
    f
}

/// The residual `pi_{A'} pi^{B'} nabla_{BB'} pi^{A'}` (one lower unprimed index).
/// It vanishes exactly when the alpha-distribution of `pi` is integrable.
pub fn alpha_integrability_residual(pi: &PrimedSpinorField, g: &WalkerGeometry) -> DyadField {
    pi.upper()
        .covariant_derivative(&g.coefficients, &g.tetrad)
        .contract_with(1, &pi.upper())
        .and_then(|f| f.contract_with(1, &pi.lower()))
        .expect("matching valence")
}

/// `S_a`, `T_a` and their factors `omega_A`, `eta_A` for an integrable `pi`.
#[derive(Clone, Debug)]
pub struct SpinorForms {
    /// `S_{AA'} = pi_{B'} nabla_{AA'} pi^{B'}`.
    pub s_dyad: DyadField,
    /// `T_{AA'} = pi^{B'} nabla_{AB'} pi_{A'}`.
    pub t_dyad: DyadField,
    pub s: OneForm,
    pub t: OneForm,
    pub omega: DyadField,
    pub eta: DyadField,
}

fn one_form(g: &WalkerGeometry, d: &DyadField) -> OneForm {
    let w = [[d.get(&[0, 0]).clone(), d.get(&[0, 1]).clone()], [d.get(&[1, 0]).clone(), d.get(&[1, 1]).clone()]];
    OneForm(dyad_covector_to_coord(&g.tensor, &g.tetrad, &w))
}

pub fn s_and_t_forms(pi: &PrimedSpinorField, g: &WalkerGeometry) -> Result<SpinorForms, NullGeomError> {
    let (s, t) = (&g.coefficients, &g.tetrad);
    let s_dyad = pi.upper().covariant_derivative(s, t).contract_with(2, &pi.lower()).expect("valence");
    let t_dyad = pi.lower().covariant_derivative(s, t).contract_with(1, &pi.upper()).expect("valence");
    let xi = pi.dual();
    let omega = s_dyad.contract_with(1, &xi).expect("valence");
    let eta = t_dyad.contract_with(1, &xi).expect("valence");
    let lower = pi.lower();
    let factored = |whole: &DyadField, factor: &DyadField| whole.sub(&factor.tensor(&lower)).expect("valence").is_zero();
    if !factored(&s_dyad, &omega) || !factored(&t_dyad, &eta) {
        return Err(NullGeomError::NotIntegrable);
    }
    Ok(SpinorForms {
        s: one_form(g, &s_dyad),
        t: one_form(g, &t_dyad),
        s_dyad,
        t_dyad,
        omega,
        eta,
    })
}

/// `omega_A - (nabla_{AD'} pi^{D'} - eta_A)`, identically zero for integrable `pi`.
pub fn omega_divergence_residual(pi: &PrimedSpinorField, g: &WalkerGeometry, f: &SpinorForms) -> DyadField {
    let div = pi.upper().covariant_derivative(&g.coefficients, &g.tetrad).contract(1, 2).expect("valence");
    f.omega.sub(&div.sub(&f.eta).expect("valence")).expect("valence")
}

/// Both sides of `(nabla_b pi_{A'})(nabla^b pi^{A'}) = 2 eta^D omega_D`.
#[derive(Clone, Debug)]
pub struct GradientSquare {
    /// The full contraction of `nabla_{BB'} pi_{A'}` with itself.
    pub lhs: RatFun,
    /// `2 eta^D omega_D`.
    pub rhs: RatFun,
}

impl GradientSquare {
    pub fn residual(&self) -> RatFun {
        &self.lhs - &self.rhs
    }
}

pub fn gradient_square(pi: &PrimedSpinorField, g: &WalkerGeometry, f: &SpinorForms) -> GradientSquare {
    let (s, t) = (&g.coefficients, &g.tetrad);
    let low = pi.lower().covariant_derivative(s, t);
    let up = pi.upper().covariant_derivative(s, t).flip(0).and_then(|d| d.flip(1)).expect("valence");
    let mut prod = low.tensor(&up);
    for _ in 0..3 {
        prod = prod.contract(0, prod.rank() / 2).expect("valence");
    }
    let eta_up = f.eta.flip(0).expect("valence");
    let rhs = eta_up.contract_with(0, &f.omega).expect("valence").get(&[]).clone();
    GradientSquare {
        lhs: prod.get(&[]).clone(),
        rhs: &rhs + &rhs,
    }
}

/// Full and triple contractions of `Psit` with `pi`.
#[derive(Clone, Debug)]
pub struct WpsContractions {
    /// `Psit_{A'B'C'D'} pi^{A'} pi^{B'} pi^{C'} pi^{D'}`; zero iff `[pi]` is a WPS.
    pub quartic: RatFun,
    /// `Psit_{A'B'C'D'} pi^{B'} pi^{C'} pi^{D'}`; zero iff `[pi]` is a multiple WPS.
    pub lambda: DyadField,
}

pub fn wps_tests(pi: &PrimedSpinorField, c: &CurvatureSpinors) -> WpsContractions {
    let lambda = contract_all(c.psit_field(), &pi.upper(), 3);
    let quartic = lambda.contract_with(0, &pi.upper()).expect("valence").get(&[]).clone();
    WpsContractions { quartic, lambda }
}

/// `lambda_{A'} = pi_{A'} pi^{B'} nabla_{BB'} eta^B`, the derivative route to the triple
/// contraction.
pub fn lambda_from_eta(pi: &PrimedSpinorField, g: &WalkerGeometry, f: &SpinorForms) -> DyadField {
    let eta_up = f.eta.flip(0).expect("valence");
    let div = eta_up.covariant_derivative(&g.coefficients, &g.tetrad).contract(0, 2).expect("valence");
    let scalar = div.contract_with(0, &pi.upper()).expect("valence");
    scalar.tensor(&pi.lower())
}

/// `pi^{A'} ... nabla^{DD'} Psit_{A'B'C'D'}` with `5 - q` copies of `pi`.
pub fn ggst_condition_iii(pi: &PrimedSpinorField, q: usize, g: &WalkerGeometry) -> Result<DyadField, NullGeomError> {
    if !(2..=4).contains(&q) {
        return Err(NullGeomError::Multiplicity(q));
    }
    let d = g
        .curvature
        .psit_field()
        .covariant_derivative(&g.coefficients, &g.tetrad)
        .flip(0)
        .and_then(|f| f.flip(1))
        .and_then(|f| f.contract(1, 5))
        .expect("valence");
    Ok(contract_all(d, &pi.upper(), 5 - q))
}

/// Named residuals together with the verdict that all vanish identically.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub holds: bool,
    pub residuals: Vec<(String, String)>,
}

impl Witness {
    fn from(list: &[(String, RatFun)]) -> Witness {
        Witness {
            holds: list.iter().all(|(_, r)| r.is_zero()),
            residuals: list.iter().map(|(n, r)| (n.clone(), r.to_string())).collect(),
        }
    }
}

fn named(s: &SpinCoefficients, names: &[&str]) -> Vec<(String, RatFun)> {
    names.iter().map(|n| (n.to_string(), s.by_name(n).clone())).collect()
}

/// Type I flags for `<l>`: auto-parallel iff `kap = kap~ = 0`, parallel iff also
/// `sig, sig~, rho, rho~, tau, tau~` vanish.
#[derive(Clone, Debug, Serialize)]
pub struct TypeIFlags {
    pub auto_parallel: Witness,
    pub parallel: Witness,
}

pub fn classify_type_i(s: &SpinCoefficients) -> TypeIFlags {
    let ap = named(s, &["kap", "kap~"]);
    let par = named(s, &["kap", "kap~", "sig", "sig~", "rho", "rho~", "tau", "tau~"]);
    TypeIFlags {
        auto_parallel: Witness::from(&ap),
        parallel: Witness::from(&par),
    }
}

/// Type III flags for `<l>^perp` together with the curvature consequences that must
/// hold when the distribution is auto-parallel or parallel.
#[derive(Clone, Debug, Serialize)]
pub struct TypeIIIFlags {
    pub integrable: Witness,
    pub auto_parallel: Witness,
    pub parallel: Witness,
    /// Present when auto-parallel; must all vanish.
    pub auto_parallel_consequences: Option<Witness>,
    /// Present when parallel; must all vanish.
    pub parallel_consequences: Option<Witness>,
}

pub fn classify_type_iii(s: &SpinCoefficients, c: &CurvatureSpinors) -> TypeIIIFlags {
    let mut integ = named(s, &["kap", "kap~"]);
    integ.push(("rho-rho~".into(), s.by_name("rho") - s.by_name("rho~")));
    let ap = named(s, &["kap", "kap~", "sig", "sig~", "rho", "rho~"]);
    let par = named(s, &["kap", "kap~", "sig", "sig~", "rho", "rho~", "tau", "tau~"]);
    let (ap, par) = (Witness::from(&ap), Witness::from(&par));
    let two_lam = &c.lambda + &c.lambda;
    let ap_cons = ap.holds.then(|| {
        Witness::from(&[
            ("Psi0".into(), c.psi[0].clone()),
            ("Psit0".into(), c.psit[0].clone()),
            ("Phi00".into(), c.phi[0][0].clone()),
            ("Psi1-Phi01".into(), &c.psi[1] - &c.phi[0][1]),
            ("Psit1-Phi10".into(), &c.psit[1] - &c.phi[1][0]),
        ])
    });
    let par_cons = par.holds.then(|| {
        Witness::from(&[
            ("Psi0".into(), c.psi[0].clone()),
            ("Psi1".into(), c.psi[1].clone()),
            ("Psit0".into(), c.psit[0].clone()),
            ("Psit1".into(), c.psit[1].clone()),
            ("Phi00".into(), c.phi[0][0].clone()),
            ("Phi01".into(), c.phi[0][1].clone()),
            ("Phi10".into(), c.phi[1][0].clone()),
            ("Phi02".into(), c.phi[0][2].clone()),
            ("Phi20".into(), c.phi[2][0].clone()),
            ("Psi2+2Lam".into(), &c.psi[2] + &two_lam),
            ("Psit2+2Lam".into(), &c.psit[2] + &two_lam),
        ])
    });
    TypeIIIFlags {
        integrable: Witness::from(&integ),
        auto_parallel: ap,
        parallel: par,
        auto_parallel_consequences: ap_cons,
        parallel_consequences: par_cons,
    }
}

/// `a_uu - b_vv`, `b_uv + c_uu`, `a_uv + c_vv`: the Ricci-null conditions of a Walker
/// metric in coordinates.
pub fn walker_ricci_null_residuals(w: &WalkerMetric) -> Vec<(String, Poly)> {
    use Var::{U, V};
    vec![
        ("a11-b22".into(), &w.a.d(&[U, U]) - &w.b.d(&[V, V])),
        ("b12+c11".into(), &w.b.d(&[U, V]) + &w.c.d(&[U, U])),
        ("a12+c22".into(), &w.a.d(&[U, V]) + &w.c.d(&[V, V])),
    ]
}

#[derive(Clone, Debug)]
pub struct RicciConditions {
    /// `Phi_{ABA'B'} pi^{A'} pi^{B'}`.
    pub double: DyadField,
    /// `Phi_{ABA'B'} pi^{B'}`.
    pub single: DyadField,
    pub ricci_aligned: bool,
    pub ricci_null: bool,
    /// For `pi` proportional to the Walker spinor: the coordinate conditions and whether
    /// they agree with the spinor route.
    pub coordinate_route: Option<(Vec<(String, Poly)>, bool)>,
}

pub fn ricci_conditions(pi: &PrimedSpinorField, c: &CurvatureSpinors, w: Option<&WalkerMetric>) -> RicciConditions {
    let single = contract_all(c.phi_field(), &pi.upper(), 1);
    let double = contract_all(single.clone(), &pi.upper(), 1);
    let ricci_null = single.is_zero();
    let coordinate_route = w.filter(|_| pi.q.is_zero()).map(|w| {
        let res = walker_ricci_null_residuals(w);
        let agree = res.iter().all(|(_, r)| r.is_zero()) == ricci_null;
        (res, agree)
    });
    RicciConditions {
        ricci_aligned: double.is_zero(),
        ricci_null,
        double,
        single,
        coordinate_route,
    }
}

/// One instance of the statement "Ricci-aligned implies `<S^a>^perp` integrable".
#[derive(Clone, Debug)]
pub struct KerrReport {
    pub hypothesis: bool,
    pub conclusion: [RatFun; 4],
    /// False only if the hypothesis holds and the conclusion fails.
    pub consistent: bool,
}

pub fn kerr_check(pi: &PrimedSpinorField, g: &WalkerGeometry) -> Result<KerrReport, NullGeomError> {
    let forms = s_and_t_forms(pi, g)?;
    if forms.s.is_zero() {
        return Err(NullGeomError::WalkerCase);
    }
    let hypothesis = ricci_conditions(pi, &g.curvature, None).ricci_aligned;
    let conclusion = frobenius_check(&forms.s);
    let closed = conclusion.iter().all(|c| c.is_zero());
    Ok(KerrReport {
        hypothesis,
        conclusion,
        consistent: !hypothesis || closed,
    })
}

/// Names accepted by [`relation_suite`].
pub const RELATION_SUITES: [&str; 7] = [
    "walker-frame",
    "flat-alpha",
    "walker-tilde",
    "type3-affine",
    "type3-ap",
    "ricci-aligned",
    "spin-frame",
];

/// Residuals of the relations defining one adapted-frame suite.
pub fn relation_suite(s: &SpinCoefficients, c: &CurvatureSpinors, suite: &str) -> Result<Vec<(String, RatFun)>, NullGeomError> {
    let g = |n: &str| s.by_name(n).clone();
    let sum = |ns: &[&str]| -> RatFun { ns.iter().map(|n| g(n)).sum() };
    let label = |ns: &[&str]| ns.join("+");
    let sums = |groups: &[&[&str]]| -> Vec<(String, RatFun)> { groups.iter().map(|ns| (label(ns), sum(ns))).collect() };
    Ok(match suite {
        "walker-frame" => vec![
            ("alp'+alp~+tau".into(), sum(&["alp'", "alp~", "tau"])),
            ("bet+bet~'+tau".into(), sum(&["bet", "bet~'", "tau"])),
            ("gam-gam~-rho'".into(), &(&g("gam") - &g("gam~")) - &g("rho'")),
            ("eps'-eps~'+rho'".into(), &(&g("eps'") - &g("eps~'")) + &g("rho'")),
        ],
        "flat-alpha" => named(s, &["kap", "rho", "alp", "eps", "tau'", "sig'", "eps~", "bet~"]),
        "walker-tilde" => named(s, &["kap~", "sig~", "rho~", "tau~"]),
        "type3-affine" => sums(&[&["tau", "alp~", "bet"], &["tau~", "alp", "bet~"]]),
        "type3-ap" => {
            let mut v = named(s, &["kap~", "kap", "eps~", "eps", "tau'", "tau~'"]);
            v.extend(sums(&[&["tau", "alp~", "bet"], &["tau~", "alp", "bet~"]]));
            v.push(("rho-rho~".into(), &g("rho") - &g("rho~")));
            v
        }
        "ricci-aligned" => vec![
            ("bet~".into(), g("bet~")),
            ("alp+1".into(), &g("alp") + &RatFun::one()),
            ("tau~-1".into(), &g("tau~") - &RatFun::one()),
            (
                "Psit2+2Lam-2alp~".into(),
                &(&c.psit[2] + &(&c.lambda + &c.lambda)) - &(&g("alp~") + &g("alp~")),
            ),
        ],
        "spin-frame" => s.spin_frame_residuals(),
        other => return Err(NullGeomError::UnknownSuite(other.to_string())),
    })
}

/// Summary flags for the distributions attached to `pi` and to the Walker null direction.
#[derive(Clone, Debug, Serialize)]
pub struct DistributionReport {
    pub alpha_integrable: bool,
    pub walker: bool,
    pub auto_parallel: bool,
    pub parallel: bool,
    pub type3_integrable: bool,
    pub ricci_null: bool,
    pub ricci_aligned: bool,
    pub witnesses: Vec<(String, String)>,
}

pub fn distribution_report(pi: &PrimedSpinorField, g: &WalkerGeometry) -> DistributionReport {
    let mut witnesses = Vec::new();
    let res = alpha_integrability_residual(pi, g);
    for (k, r) in res.components().iter().enumerate() {
        witnesses.push((format!("integrability[{k}]"), r.to_string()));
    }
    let alpha_integrable = res.is_zero();
    let walker = match s_and_t_forms(pi, g) {
        Ok(f) => {
            for (k, r) in f.s.0.iter().enumerate() {
                witnesses.push((format!("S[{}]", Var::from_index(k).name()), r.to_string()));
            }
            f.s.is_zero()
        }
        Err(_) => false,
    };
    let t1 = classify_type_i(&g.coefficients);
    let t3 = classify_type_iii(&g.coefficients, &g.curvature);
    for (prefix, w) in [("parallel", &t1.parallel), ("type3", &t3.integrable)] {
        witnesses.extend(w.residuals.iter().map(|(n, r)| (format!("{prefix}.{n}"), r.clone())));
    }
    let rc = ricci_conditions(pi, &g.curvature, Some(&g.metric));
    DistributionReport {
        alpha_integrable,
        walker,
        auto_parallel: t1.auto_parallel.holds,
        parallel: t1.parallel.holds,
        type3_integrable: t3.integrable.holds,
        ricci_null: rc.ricci_null,
        ricci_aligned: rc.ricci_aligned,
        witnesses,
    }
}
