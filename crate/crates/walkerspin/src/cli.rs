//! Command-line front end. [`run`] parses arguments, executes one subcommand and returns
//! the process exit code: 0 success, 1 verification failure, 2 input error, 3 cross-route
//! disagreement.

use crate::congruence::{
    integrate_connecting, step_halving_difference, walker_oracle, write_trace_csv, ConnectingState, WalkerCurve,
};
use crate::curvature::{
    bianchi_contracted_check, classify_sd_weyl, commutator_residuals, field_equation_residuals, monomials_up_to,
    phi_lambda_from_ricci, riemann, sd_invariants, walker_commutator_residuals,
};
use crate::geometry::WalkerGeometry;
use crate::heavenly::{
    build_metric, einstein_check, identity_check, invariants, scalar_flat_case, validate_potential, HeavenlyError, HeavenlyPotential,
    PotentialSpec,
};
use crate::nullgeom::{distribution_report, relation_suite, s_and_t_forms, PrimedSpinorField};
use crate::poly::{q_from_f64, Poly, RatFun, Q};
use crate::spin::{exterior_residuals, spin_coefficients_from_tetrad, Coef};
use crate::walker::WalkerMetric;
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DISAGREE: i32 = 3;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "NP_THREADS";

#[derive(Parser, Debug)]
#[command(name = "walkerspin", version, about = "Spin-coefficient analysis of Walker metrics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Coefficients, curvature, classification and distribution flags.
    Analyze {
        spec: PathBuf,
        /// Evaluation point `u,v,x,y` for the classification.
        #[arg(long, default_value = "1,1,1,1")]
        point: String,
    },
    /// Residual suites; exits 1 if any residual is nonzero.
    Verify {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Add `1 + u` to the named spin coefficient before checking.
        #[arg(long)]
        perturb: Option<String>,
        /// Largest monomial degree for the commutator suite.
        #[arg(long, default_value_t = 3)]
        degree: u32,
    },
    /// Connecting-field propagation along the integral curve of d/du; writes CSV.
    Congruence {
        spec: PathBuf,
        /// Base point `u,v,x,y`.
        #[arg(long, default_value = "0,0,0,0")]
        base: String,
        /// Initial state `eta,zeta,zetatilde,nu`.
        #[arg(long, default_value = "0,0,1,0")]
        v0: String,
        #[arg(long, default_value_t = 1.0)]
        end: f64,
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        /// CSV destination; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a Ricci-null metric from a potential and run its checks.
    Heavenly {
        potential: PathBuf,
        #[arg(long, value_enum, default_value_t = HeavenlyCheck::All)]
        check: HeavenlyCheck,
    },
    /// Algebraic type of the self-dual Weyl spinor at a point.
    Classify {
        spec: PathBuf,
        #[arg(long, default_value = "1,1,1,1")]
        point: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Routes,
    Field,
    Commutators,
    Bianchi,
    Relations,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum HeavenlyCheck {
    Einstein,
    Identity,
    All,
}

/// A metric spec file entry.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct MetricSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub a: String,
    pub b: String,
    pub c: String,
}

impl MetricSpec {
    pub fn parse(&self) -> Result<WalkerMetric, CliError> {
        let field = |name: &str, s: &str| -> Result<Poly, CliError> {
            let s = if s.trim().is_empty() { "0" } else { s };
            s.parse().map_err(|e| CliError::Input(format!("{}: field `{name}`: {e}", self.name())))
        };
        Ok(WalkerMetric::new(field("a", &self.a)?, field("b", &self.b)?, field("c", &self.c)?))
    }

    pub fn name(&self) -> String {
        self.label.clone().unwrap_or_else(|| "metric".into())
    }

    pub fn from_metric(label: Option<String>, w: &WalkerMetric) -> MetricSpec {
        MetricSpec {
            label,
            a: w.a.to_string(),
            b: w.b.to_string(),
            c: w.c.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Input(String),
}

impl CliError {
    fn code(&self) -> i32 {
        EXIT_INPUT
    }

    fn message(&self) -> &str {
        let CliError::Input(m) = self;
        m
    }
}

/// Reads a JSON file holding one spec object or an array of them.
pub fn read_specs<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let items = match value {
        serde_json::Value::Array(v) => v,
        other => vec![other],
    };
    items
        .into_iter()
        .map(|v| serde_json::from_value(v).map_err(|e| CliError::Input(format!("{}: {e}", path.display()))))
        .collect()
}

fn parse_numbers<const K: usize>(s: &str, what: &str) -> Result<[f64; K], CliError> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Input(format!("{what}: {e}")))?;
    let arr: [f64; K] = parts
        .try_into()
        .map_err(|_| CliError::Input(format!("{what}: expected {K} comma-separated numbers")))?;
    if arr.iter().any(|x| !x.is_finite()) {
        return Err(CliError::Input(format!("{what}: values must be finite")));
    }
    Ok(arr)
}

/// Parses `u,v,x,y`; entries may be integers, decimals or rationals `p/q`.
pub fn parse_point(s: &str) -> Result<[Q; 4], CliError> {
    let parts: Vec<Q> = s
        .split(',')
        .map(|p| {
            let p = p.trim();
            p.parse::<Q>()
                .ok()
                .or_else(|| p.parse::<f64>().ok().filter(|x| x.is_finite()).map(q_from_f64))
                .ok_or_else(|| CliError::Input(format!("point: cannot read `{p}`")))
        })
        .collect::<Result<_, _>>()?;
    parts
        .try_into()
        .map_err(|_| CliError::Input("point: expected four comma-separated values u,v,x,y".into()))
}

fn thread_pool() -> rayon::ThreadPool {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|s| s.trim().parse::<usize>().ok()).filter(|&n| n > 0) {
        b = b.num_threads(n);
    }
    b.build().expect("thread pool")
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let (result, o, e) = thread_pool().install(|| {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let r = dispatch(&cli.command, &mut o, &mut e);
        (r, o, e)
    });
    let _ = out.write_all(&o);
    let _ = err.write_all(&e);
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}

fn dispatch(cmd: &Command, out: &mut Vec<u8>, err: &mut Vec<u8>) -> Result<i32, CliError> {
    let (text, code) = match cmd {
        Command::Analyze { spec, point } => {
            let point = parse_point(point)?;
            per_spec(spec, |s, w| analyze_report(s, w, &point))?
        }
        Command::Verify {
            spec,
            suite,
            perturb,
            degree,
        } => {
            let perturb = perturb
                .as_deref()
                .map(|n| Coef::parse(n).ok_or_else(|| CliError::Input(format!("unknown spin coefficient `{n}`"))))
                .transpose()?;
            per_spec(spec, |s, w| Ok(verify_report(s, w, *suite, perturb, *degree)))?
        }
        Command::Classify { spec, point } => {
            let point = parse_point(point)?;
            per_spec(spec, |s, w| classify_report(s, w, &point))?
        }
        Command::Heavenly { potential, check } => {
            let specs: Vec<PotentialSpec> = read_specs(potential)?;
            let pots = specs
                .iter()
                .map(|s| HeavenlyPotential::from_spec(s).map_err(|e| CliError::Input(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            let reports: Vec<Result<(String, i32), CliError>> =
                specs.par_iter().zip(&pots).map(|(s, p)| heavenly_report(s, p, *check)).collect();
            combine(reports)?
        }
        Command::Congruence {
            spec,
            base,
            v0,
            end,
            step,
            out: dest,
        } => {
            let specs: Vec<MetricSpec> = read_specs(spec)?;
            let [first] = <[MetricSpec; 1]>::try_from(specs)
                .map_err(|_| CliError::Input("congruence takes a single metric spec".into()))?;
            let w = first.parse()?;
            let base = parse_point(base)?;
            let z = parse_numbers::<4>(v0, "v0")?;
            let z0 = ConnectingState::new(z[0], z[1], z[2], z[3]);
            return congruence_command(&w, base, z0, *end, *step, dest.as_deref(), out, err);
        }
    };
    out.write_all(text.as_bytes()).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(code)
}

fn per_spec(
    path: &Path,
    f: impl Fn(&MetricSpec, &WalkerMetric) -> Result<(String, i32), CliError> + Sync,
) -> Result<(String, i32), CliError> {
    let specs: Vec<MetricSpec> = read_specs(path)?;
    let metrics = specs.iter().map(MetricSpec::parse).collect::<Result<Vec<_>, _>>()?;
    let reports: Vec<_> = specs.par_iter().zip(&metrics).map(|(s, w)| f(s, w)).collect();
    combine(reports)
}

fn combine(reports: Vec<Result<(String, i32), CliError>>) -> Result<(String, i32), CliError> {
    let mut text = String::new();
    let mut code = EXIT_OK;
    for r in reports {
        let (t, c) = r?;
        text.push_str(&t);
        code = code.max(c);
    }
    Ok((text, code))
}

fn fmt_point(p: &[Q; 4]) -> String {
    p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// The `analyze` report for one metric.
pub fn analyze_report(spec: &MetricSpec, w: &WalkerMetric, point: &[Q; 4]) -> Result<(String, i32), CliError> {
    let g = WalkerGeometry::new(w.clone());
    let mut s = String::new();
    let mut code = EXIT_OK;
    let _ = writeln!(s, "== {} ==", spec.name());
    let _ = writeln!(s, "a = {}\nb = {}\nc = {}", w.a, w.b, w.c);
    let _ = writeln!(s, "-- spin coefficients (nonzero) --");
    for (c, v) in g.coefficients.nonzero() {
        let _ = writeln!(s, "{} = {}", c.ascii(), v);
    }
    let _ = writeln!(s, "-- curvature (nonzero) --");
    for (n, v) in g.curvature.entries() {
        if !v.is_zero() {
            let _ = writeln!(s, "{n} = {v}");
        }
    }
    let _ = writeln!(s, "-- classification --");
    let _ = writeln!(s, "point = {}", fmt_point(point));
    match classify_sd_weyl(w, &g.curvature, point) {
        Ok(t) => {
            let _ = writeln!(s, "type = {t}");
        }
        Err(e) => {
            let _ = writeln!(s, "type = undetermined ({e})");
        }
    }
    let _ = writeln!(s, "-- distribution --");
    let d = distribution_report(&PrimedSpinorField::walker(), &g);
    for (k, v) in [
        ("alpha_integrable", d.alpha_integrable),
        ("walker", d.walker),
        ("auto_parallel", d.auto_parallel),
        ("parallel", d.parallel),
        ("type3_integrable", d.type3_integrable),
        ("ricci_null", d.ricci_null),
        ("ricci_aligned", d.ricci_aligned),
    ] {
        let _ = writeln!(s, "{k} = {v}");
    }
    let _ = writeln!(s, "-- cross-route --");
    let routes = route_checks(&g);
    for (name, ok) in &routes {
        let _ = writeln!(s, "{name} = {}", if *ok { "agree" } else { "DISAGREE" });
        if !ok {
            code = EXIT_DISAGREE;
        }
    }
    Ok((s, code))
}

fn route_checks(g: &WalkerGeometry) -> Vec<(&'static str, bool)> {
    let tetrad_route = spin_coefficients_from_tetrad(&g.christoffel, &g.tensor, &g.tetrad)
        .map(|s| s.diff(&g.coefficients).iter().all(|(_, r)| r.is_zero()))
        .unwrap_or(false);
    let rd = riemann(&g.tensor, &g.christoffel);
    let curvature_route = phi_lambda_from_ricci(&rd, &g.tensor, &g.tetrad)
        .map(|(phi, lam)| phi == g.curvature.phi && lam == g.curvature.lambda)
        .unwrap_or(false);
    vec![("spin coefficients (tetrad vs closed form)", tetrad_route), ("curvature (tensor vs spin)", curvature_route)]
}

type Listing = Vec<(String, RatFun)>;

fn suite_routes(g: &WalkerGeometry) -> Listing {
    let mut v: Listing = match spin_coefficients_from_tetrad(&g.christoffel, &g.tensor, &g.tetrad) {
        Ok(s) => Coef::all()
            .map(|c| (format!("route.{}", c.ascii()), s.get(c) - g.coefficients.get(c)))
            .collect(),
        Err(e) => vec![(format!("route.frame ({e})"), RatFun::one())],
    };
    v.extend(exterior_residuals(&g.tensor, &g.tetrad, &g.coefficients).into_iter().map(|(n, r)| (format!("exterior.{n}"), r)));
    v
}

fn suite_field(g: &WalkerGeometry, perturb: Option<Coef>) -> Listing {
    let mut s = g.coefficients.clone();
    if let Some(c) = perturb {
        let bumped = s.get(c) + &RatFun::from(&(&Poly::one() + &Poly::u()));
        s.set(c, bumped);
    }
    field_equation_residuals(&s, &g.curvature, &g.tetrad)
}

fn suite_commutators(g: &WalkerGeometry, degree: u32) -> Listing {
    let monomials = monomials_up_to(degree);
    let per: Vec<Listing> = monomials
        .par_iter()
        .map(|f| {
            let mut v: Listing = commutator_residuals(&g.coefficients, &g.tetrad, f)
                .into_iter()
                .map(|(n, r)| (format!("{n}[{f}]"), r))
                .collect();
            v.extend(walker_commutator_residuals(&g.metric, f).into_iter().map(|(n, r)| (format!("{n}[{f}]"), r)));
            v
        })
        .collect();
    per.into_iter().flatten().collect()
}

fn suite_bianchi(g: &WalkerGeometry) -> Listing {
    let rd = riemann(&g.tensor, &g.christoffel);
    let mut v: Listing = bianchi_contracted_check(&g.tensor, &g.christoffel, &rd)
        .iter()
        .zip(["u", "v", "x", "y"])
        .map(|(r, c)| (format!("bianchi.{c}"), RatFun::from(r)))
        .collect();
    let sym = rd.symmetry_residuals();
    let bad = sym.iter().filter(|p| !p.is_zero()).count();
    v.push(("riemann.symmetries".into(), RatFun::int(bad as i64)));
    match phi_lambda_from_ricci(&rd, &g.tensor, &g.tetrad) {
        Ok((phi, lam)) => {
            for i in 0..3 {
                for j in 0..3 {
                    v.push((format!("tensor-vs-spin.Phi{i}{j}"), &phi[i][j] - &g.curvature.phi[i][j]));
                }
            }
            v.push(("tensor-vs-spin.Lambda".into(), &lam - &g.curvature.lambda));
        }
        Err(e) => v.push((format!("tensor-vs-spin ({e})"), RatFun::one())),
    }
    let c = &g.curvature;
    v.push(("S-tensor-vs-spin".into(), &RatFun::from(&rd.scalar) - &c.s));
    v.push(("Psit2-S/12".into(), &c.psit[2] - &c.s.scale(&crate::poly::q(1, 12))));
    v.push(("Psit2+2Lambda".into(), &c.psit[2] + &(&c.lambda + &c.lambda)));
    v
}

fn suite_relations(g: &WalkerGeometry) -> Listing {
    let mut v = Listing::new();
    for suite in ["walker-frame", "flat-alpha", "walker-tilde", "type3-affine", "spin-frame"] {
        let list = relation_suite(&g.coefficients, &g.curvature, suite).expect("known suite");
        v.extend(list.into_iter().map(|(n, r)| (format!("{suite}.{n}"), r)));
    }
    let c = &g.curvature;
    for (n, r) in [
        ("Psit0", c.psit[0].clone()),
        ("Psit1", c.psit[1].clone()),
        ("Phi00", c.phi[0][0].clone()),
        ("Phi10", c.phi[1][0].clone()),
        ("Phi20", c.phi[2][0].clone()),
    ] {
        v.push((format!("walker-consequence.{n}"), r));
    }
    let s_zero = s_and_t_forms(&PrimedSpinorField::walker(), g).map(|f| f.s.is_zero()).unwrap_or(false);
    let pattern = ["kap~", "sig~", "rho~", "tau~"].iter().all(|n| g.coefficients.by_name(n).is_zero());
    v.push(("walker-equivalence".into(), RatFun::int(i64::from(s_zero != pattern))));
    v
}

/// The `verify` report for one metric.
pub fn verify_report(spec: &MetricSpec, w: &WalkerMetric, suite: Suite, perturb: Option<Coef>, degree: u32) -> (String, i32) {
    let g = WalkerGeometry::new(w.clone());
    let wanted = |x: Suite| suite == x || suite == Suite::All;
    let mut sections: Vec<(&str, Listing)> = Vec::new();
    if wanted(Suite::Routes) {
        sections.push(("routes", suite_routes(&g)));
    }
    if wanted(Suite::Field) {
        sections.push(("field", suite_field(&g, perturb)));
    }
    if wanted(Suite::Commutators) {
        sections.push(("commutators", suite_commutators(&g, degree)));
    }
    if wanted(Suite::Bianchi) {
        sections.push(("bianchi", suite_bianchi(&g)));
    }
    if wanted(Suite::Relations) {
        sections.push(("relations", suite_relations(&g)));
    }
    let mut s = String::new();
    let mut code = EXIT_OK;
    let _ = writeln!(s, "== {} ==", spec.name());
    if let Some(c) = perturb {
        let _ = writeln!(s, "perturbed: {} += 1 + u", c.ascii());
    }
    for (name, list) in sections {
        let bad: Vec<_> = list.iter().filter(|(_, r)| !r.is_zero()).collect();
        let _ = writeln!(s, "suite {name}: {} residuals, {} nonzero", list.len(), bad.len());
        for (n, r) in bad {
            let _ = writeln!(s, "  {n} = {r}");
        }
        if !list.iter().all(|(_, r)| r.is_zero()) {
            code = EXIT_FAIL;
        }
    }
    let _ = writeln!(s, "verdict: {}", if code == EXIT_OK { "PASS" } else { "FAIL" });
    (s, code)
}

/// The `classify` report for one metric.
pub fn classify_report(spec: &MetricSpec, w: &WalkerMetric, point: &[Q; 4]) -> Result<(String, i32), CliError> {
    let curv = crate::curvature::walker_curvature_components(w);
    let (a, b) = sd_invariants(&curv, w);
    let at = |f: &RatFun| f.eval(point).map(|x| x.to_string()).unwrap_or_else(|| "pole".into());
    let mut s = String::new();
    let _ = writeln!(s, "== {} ==", spec.name());
    let _ = writeln!(s, "point = {}", fmt_point(point));
    let _ = writeln!(s, "S = {}\nA = {}\nB = {}", at(&curv.s), at(&a), at(&b));
    for k in 0..5 {
        let _ = writeln!(s, "Psit{k} = {}", at(&curv.psit[k]));
    }
    let t = classify_sd_weyl(w, &curv, point).map_err(|e| CliError::Input(e.to_string()))?;
    let _ = writeln!(s, "type = {t}");
    Ok((s, EXIT_OK))
}

/// The `heavenly` report for one potential.
pub fn heavenly_report(spec: &PotentialSpec, p: &HeavenlyPotential, check: HeavenlyCheck) -> Result<(String, i32), CliError> {
    let name = spec.label.clone().unwrap_or_else(|| "potential".into());
    let validity = validate_potential(p);
    if !validity.is_valid() {
        let mut m = format!("{name}: invalid potential");
        for (n, r) in &validity.residuals {
            let _ = write!(m, "; {n} = {r}");
        }
        for d in &validity.dependence {
            let _ = write!(m, "; {d}");
        }
        return Err(CliError::Input(m));
    }
    let herr = |e: HeavenlyError| CliError::Input(e.to_string());
    let w = build_metric(p).map_err(herr)?;
    let inv = invariants(p).map_err(herr)?;
    let mut s = String::new();
    let mut code = EXIT_OK;
    let _ = writeln!(s, "== {name} ==");
    let metric_json = serde_json::to_string(&MetricSpec::from_metric(spec.label.clone(), &w)).expect("serializable");
    let _ = writeln!(s, "metric = {metric_json}");
    let ricci_null = crate::nullgeom::walker_ricci_null_residuals(&w).iter().all(|(_, r)| r.is_zero());
    let _ = writeln!(s, "ricci_null = {ricci_null}");
    if !ricci_null {
        code = EXIT_FAIL;
    }
    let _ = writeln!(s, "S = {}\nB+Sc = {}\nP = {}\nQ = {}\nT = {}\nR = {}", inv.s, inv.b_plus_sc, inv.p, inv.q, inv.t, inv.r);
    let _ = writeln!(s, "A00 = {}\nA01 = {}\nA11 = {}", inv.a_ab[0], inv.a_ab[1], inv.a_ab[2]);
    if inv.s.is_zero() {
        let sf = scalar_flat_case(p).map_err(herr)?;
        let _ = writeln!(s, "Psit3 = {}\nPsit4 = {}\nsd_type = {}", sf.psit3, sf.psit4, sf.sd_type);
        if !(sf.psit_matches && sf.phi_matches) {
            let _ = writeln!(s, "scalar-flat curvature = DISAGREE");
            code = EXIT_DISAGREE;
        }
    }
    if matches!(check, HeavenlyCheck::Identity | HeavenlyCheck::All) {
        let ic = identity_check(p).map_err(herr)?;
        let ok = ic.residual().is_zero();
        let _ = writeln!(s, "identity = {}", if ok { "holds" } else { "FAILS" });
        if !ok {
            let _ = writeln!(s, "  curvature side = {}\n  potential side = {}", ic.curvature_side, ic.potential_side);
            code = code.max(EXIT_FAIL);
        }
    }
    if matches!(check, HeavenlyCheck::Einstein | HeavenlyCheck::All) {
        match einstein_check(p) {
            Ok(e) => {
                let _ = writeln!(s, "einstein = {}", e.einstein);
                let _ = writeln!(s, "einstein_tensor_route = {}", e.tensor_route_einstein);
                if !e.einstein {
                    for (n, d) in ["R_uu", "R_uv", "R_vv"].iter().zip(&e.second_derivatives) {
                        if !d.is_zero() {
                            let _ = writeln!(s, "  witness {n} = {d}");
                        }
                    }
                }
                if !e.agrees() {
                    code = EXIT_DISAGREE;
                }
            }
            Err(HeavenlyError::NotScalarFlat(m)) => {
                let _ = writeln!(s, "einstein = n/a ({m})");
            }
            Err(e) => return Err(herr(e)),
        }
    }
    Ok((s, code))
}

#[allow(clippy::too_many_arguments)]
fn congruence_command(
    w: &WalkerMetric,
    base: [Q; 4],
    z0: ConnectingState,
    end: f64,
    step: f64,
    dest: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let curve = WalkerCurve::from_metric(w, base.clone());
    let input = |e: crate::congruence::CongruenceError| CliError::Input(e.to_string());
    let path = integrate_connecting(&curve, z0, end, step).map_err(input)?;
    let oracle_error = path.max_error(|v| walker_oracle(w, &base, z0, v));
    let halving = step_halving_difference(&curve, z0, end, step).map_err(input)?;
    let summary = format!("max oracle error = {oracle_error:e}\nstep-halving difference = {halving:e}\n");
    match dest {
        Some(p) => {
            let mut f = std::fs::File::create(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
            write_trace_csv(&mut f, &curve, &path).map_err(|e| CliError::Input(e.to_string()))?;
            out.write_all(summary.as_bytes()).map_err(|e| CliError::Input(e.to_string()))?;
        }
        None => {
            write_trace_csv(out, &curve, &path).map_err(|e| CliError::Input(e.to_string()))?;
            err.write_all(summary.as_bytes()).map_err(|e| CliError::Input(e.to_string()))?;
        }
    }
    Ok(EXIT_OK)
}
