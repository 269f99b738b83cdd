//! Acceptance harness: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};
use walkerspin::congruence::{
    integrate_connecting, integrate_jacobi, jacobi_sigma, riccati_component_residuals, riccati_residual,
    sigma_omega_forms, step_halving_difference, walker_oracle, ConnectingState, WalkerCurve,
};
use walkerspin::curvature::{
    bianchi_contracted_check, classify_sd_weyl, commutator_residuals, field_equation_residuals, monomials_up_to,
    phi_lambda_from_ricci, riemann, walker_commutator_residuals, SdType,
};
use walkerspin::geometry::WalkerGeometry;
use walkerspin::heavenly::{
    build_metric, einstein_check, identity_check, psi_components, random_potential, scalar_flat_case,
    HeavenlyPotential,
};
use walkerspin::nullgeom::{
    frobenius_check, ggst_condition_iii, relation_suite, s_and_t_forms, walker_ricci_null_residuals, OneForm,
    PrimedSpinorField,
};
use walkerspin::poly::{q, Poly, RatFun, Q};
use walkerspin::sample::{rng, test_metrics};
use walkerspin::spin::{exterior_residuals, spin_coefficients_from_tetrad, Coef};
use walkerspin::walker::WalkerMetric;

const METRIC_COUNT: usize = 25;
const METRIC_DEGREE: u32 = 4;
const METRIC_SEED: u64 = 20_260_101;
const ROUTE_TIME_LIMIT: Duration = Duration::from_secs(10);
const COMMUTATOR_DEGREE: u32 = 3;
const POTENTIAL_COUNT: usize = 10;
const POTENTIAL_DEGREE: u32 = 5;
const POTENTIAL_SEED: u64 = 7_2026;
const ORACLE_TOL: f64 = 1e-8;
const ORACLE_STEP: f64 = 1e-3;
const ORDER_RATIO: (f64, f64) = (12.0, 20.0);
const ORDER_STEPS: (f64, f64) = (0.1, 0.05);
const SIGMA_TOL: f64 = 1e-8;

type Verdict = Result<String, String>;

struct Fixture {
    metrics: Vec<WalkerMetric>,
    geometries: Vec<WalkerGeometry>,
    build_time: Duration,
}

fn poly(s: &str) -> Poly {
    s.parse().expect("valid polynomial")
}

fn metric(a: &str, b: &str, c: &str) -> WalkerMetric {
    WalkerMetric::parse(a, b, c).expect("valid metric")
}

fn nonzero(list: &[(String, RatFun)]) -> Vec<&str> {
    list.iter().filter(|(_, r)| !r.is_zero()).map(|(n, _)| n.as_str()).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn route_equality(fx: &Fixture) -> Verdict {
    let start = Instant::now();
    for (k, g) in fx.geometries.iter().enumerate() {
        let t = spin_coefficients_from_tetrad(&g.christoffel, &g.tensor, &g.tetrad).map_err(|e| format!("metric {k}: {e}"))?;
        let bad: Vec<String> = Coef::all().filter(|&c| t.get(c) != g.coefficients.get(c)).map(|c| c.ascii()).collect();
        ensure(bad.is_empty(), || format!("metric {k}: entries differ: {bad:?}"))?;
    }
    let elapsed = fx.build_time + start.elapsed();
    ensure(elapsed < ROUTE_TIME_LIMIT, || format!("runtime {elapsed:?} exceeds {ROUTE_TIME_LIMIT:?}"))?;
    Ok(format!("{METRIC_COUNT} metrics x 32 entries equal, {:.2} s", elapsed.as_secs_f64()))
}

fn exterior_route(fx: &Fixture) -> Verdict {
    let mut count = 0;
    for (k, g) in fx.geometries.iter().enumerate() {
        let r = exterior_residuals(&g.tensor, &g.tetrad, &g.coefficients);
        count += r.len();
        ensure(nonzero(&r).is_empty(), || format!("metric {k}: {:?}", nonzero(&r)))?;
    }
    Ok(format!("{count} exterior residuals zero"))
}

fn field_equations(fx: &Fixture) -> Verdict {
    for (k, g) in fx.geometries.iter().enumerate() {
        let r = field_equation_residuals(&g.coefficients, &g.curvature, &g.tetrad);
        ensure(r.len() == 48, || format!("metric {k}: {} residuals, expected 48", r.len()))?;
        ensure(nonzero(&r).is_empty(), || format!("metric {k}: {:?}", nonzero(&r)))?;
    }
    let bump = RatFun::from(&poly("1 + u"));
    let mut detected = 0;
    for g in &fx.geometries {
        for c in Coef::all() {
            let mut s = g.coefficients.clone();
            s.set(c, s.get(c) + &bump);
            let r = field_equation_residuals(&s, &g.curvature, &g.tetrad);
            ensure(!nonzero(&r).is_empty(), || format!("perturbation of {} undetected", c.ascii()))?;
            detected += 1;
        }
    }
    Ok(format!("48 x {METRIC_COUNT} residuals zero; {detected}/{detected} single perturbations detected"))
}

fn commutators(fx: &Fixture) -> Verdict {
    let monomials = monomials_up_to(COMMUTATOR_DEGREE);
    for (k, g) in fx.geometries.iter().enumerate() {
        for f in &monomials {
            let r = commutator_residuals(&g.coefficients, &g.tetrad, f);
            ensure(r.len() == 6 && nonzero(&r).is_empty(), || format!("metric {k}, f = {f}: {:?}", nonzero(&r)))?;
            let w = walker_commutator_residuals(&fx.metrics[k], f);
            ensure(nonzero(&w).is_empty(), || format!("metric {k}, f = {f}, Walker form: {:?}", nonzero(&w)))?;
        }
    }
    Ok(format!("{} monomials x {METRIC_COUNT} metrics, general and Walker forms", monomials.len()))
}

fn curvature_cross_route(fx: &Fixture) -> Verdict {
    let twelfth = q(1, 12);
    for (k, g) in fx.geometries.iter().enumerate() {
        let rd = riemann(&g.tensor, &g.christoffel);
        let (phi, lambda) = phi_lambda_from_ricci(&rd, &g.tensor, &g.tetrad).map_err(|e| format!("metric {k}: {e}"))?;
        let c = &g.curvature;
        ensure(phi == c.phi, || format!("metric {k}: Phi differs"))?;
        ensure(lambda == c.lambda, || format!("metric {k}: Lambda differs"))?;
        ensure(c.psit[2] == c.s.scale(&twelfth), || format!("metric {k}: Psit2 != S/12"))?;
        ensure(c.psit[2] == c.lambda.scale(&q(-2, 1)), || format!("metric {k}: Psit2 != -2 Lambda"))?;
        ensure(bianchi_contracted_check(&g.tensor, &g.christoffel, &rd).iter().all(Poly::is_zero), || {
            format!("metric {k}: contracted Bianchi residual nonzero")
        })?;
    }
    Ok("Phi, Lambda equal; Psit2 = S/12 = -2 Lambda; Bianchi residual zero".into())
}

fn walker_consequences(fx: &Fixture) -> Verdict {
    for (k, g) in fx.geometries.iter().enumerate() {
        let c = &g.curvature;
        let parts = [("Psit0", &c.psit[0]), ("Psit1", &c.psit[1]), ("Phi00", &c.phi[0][0]), ("Phi10", &c.phi[1][0]), ("Phi20", &c.phi[2][0])];
        let bad: Vec<&str> = parts.iter().filter(|(_, v)| !v.is_zero()).map(|(n, _)| *n).collect();
        ensure(bad.is_empty(), || format!("metric {k}: {bad:?}"))?;
    }
    Ok("Psit0 = Psit1 = Phi00 = Phi10 = Phi20 = 0 on all metrics".into())
}

fn heavenly_pipeline() -> Verdict {
    let mut r = rng(POTENTIAL_SEED);
    for k in 0..POTENTIAL_COUNT {
        let pot = random_potential(&mut r, POTENTIAL_DEGREE);
        let w = build_metric(&pot).map_err(|e| format!("potential {k}: {e}"))?;
        let rn = walker_ricci_null_residuals(&w);
        ensure(rn.iter().all(|(_, p)| p.is_zero()), || format!("potential {k}: not Ricci-null"))?;
        let psi = psi_components(&pot).map_err(|e| format!("potential {k}: {e}"))?;
        ensure(psi.routes_agree(), || format!("potential {k}: Psit routes differ"))?;
        let id = identity_check(&pot).map_err(|e| format!("potential {k}: {e}"))?;
        ensure(id.residual().is_zero(), || format!("potential {k}: identity residual {}", id.residual()))?;
    }
    let e1 = einstein_check(&HeavenlyPotential::from_theta(poly("u*v*x"))).map_err(|e| e.to_string())?;
    ensure(e1.einstein && e1.tensor_route_einstein, || "theta = uvx not Einstein on both routes".into())?;
    let e2 = einstein_check(&HeavenlyPotential::from_theta(poly("1/4*u^2*v^2"))).map_err(|e| e.to_string())?;
    ensure(!e2.einstein && !e2.tensor_route_einstein, || "theta = u^2 v^2 / 4 reported Einstein".into())?;
    Ok(format!("{POTENTIAL_COUNT} potentials Ricci-null, routes agree, identity exact; uvx Einstein, u^2v^2/4 not"))
}

fn congruence_numerics(fx: &Fixture) -> Verdict {
    let origin: [Q; 4] = [q(0, 1), q(0, 1), q(0, 1), q(0, 1)];
    let w = metric("0", "u^2", "0");
    let curve = WalkerCurve::from_metric(&w, origin.clone());
    let z0 = ConnectingState::new(0.0, 0.0, 1.0, 0.0);
    let path = integrate_connecting(&curve, z0, 1.0, ORACLE_STEP).map_err(|e| e.to_string())?;
    let err = path.max_error(|v| walker_oracle(&w, &origin, z0, v));
    ensure(err <= ORACLE_TOL, || format!("oracle error {err:e}"))?;

    let w6 = metric("u^3", "u^6", "u^4");
    let c6 = WalkerCurve::from_metric(&w6, origin.clone());
    let z1 = ConnectingState::new(1.0, 1.0, 1.0, 1.0);
    let d1 = step_halving_difference(&c6, z1, 1.0, ORDER_STEPS.0).map_err(|e| e.to_string())?;
    let d2 = step_halving_difference(&c6, z1, 1.0, ORDER_STEPS.1).map_err(|e| e.to_string())?;
    let ratio = d1 / d2;
    ensure((ORDER_RATIO.0..=ORDER_RATIO.1).contains(&ratio), || format!("step-halving ratio {ratio}"))?;
    let p6 = integrate_connecting(&c6, z1, 1.0, ORACLE_STEP).map_err(|e| e.to_string())?;
    ensure(p6.states.iter().all(|s| s.nu == z1.nu), || "nu not constant".into())?;

    let gw = metric("u^2*y", "u^3*x", "u*v");
    let jc = WalkerCurve::from_metric(&gw, [q(1, 2), q(1, 1), q(-1, 1), q(2, 1)]);
    let ja = integrate_jacobi(&jc, ConnectingState::new(0.1, 1.0, 0.0, 0.5), ConnectingState::new(0.0, 0.2, 0.1, 0.1), 1.0, ORACLE_STEP)
        .map_err(|e| e.to_string())?;
    let jb = integrate_jacobi(&jc, ConnectingState::new(0.0, 0.0, 1.0, -0.3), ConnectingState::new(0.3, -0.1, 0.3, 0.2), 1.0, ORACLE_STEP)
        .map_err(|e| e.to_string())?;
    let s = jacobi_sigma(&ja, &jb).map_err(|e| e.to_string())?;
    let drift = s.iter().map(|x| (x - s[0]).abs()).fold(0.0, f64::max);
    ensure(drift <= SIGMA_TOL, || format!("Jacobi Sigma drift {drift:e}"))?;

    let pa = integrate_connecting(&jc, ConnectingState::new(1.0, 0.5, 0.0, 1.0), 1.0, ORACLE_STEP).map_err(|e| e.to_string())?;
    let pb = integrate_connecting(&jc, ConnectingState::new(0.0, -1.0, 2.0, 0.5), 1.0, ORACLE_STEP).map_err(|e| e.to_string())?;
    let forms = sigma_omega_forms(&jc, &pa, &pb).map_err(|e| e.to_string())?;
    let sig_max = forms.iter().map(|f| f.sigma.abs()).fold(0.0, f64::max);
    ensure(sig_max == 0.0, || format!("Walker Sigma not identically zero: {sig_max:e}"))?;

    for (k, g) in fx.geometries.iter().enumerate() {
        ensure(riccati_residual(g).is_zero(), || format!("metric {k}: matrix Riccati residual nonzero"))?;
        let comp = riccati_component_residuals(&g.coefficients, &g.curvature);
        ensure(nonzero(&comp).is_empty(), || format!("metric {k}: {:?}", nonzero(&comp)))?;
    }
    Ok(format!(
        "oracle error {err:.1e}; halving ratio {ratio:.2}; nu constant; Jacobi Sigma drift {drift:.1e}; Walker Sigma 0; Riccati exact"
    ))
}

fn classification() -> Verdict {
    let pot = HeavenlyPotential::scalar_flat(poly("0"), poly("y^2"), poly("0"));
    let rep = scalar_flat_case(&pot).map_err(|e| e.to_string())?;
    ensure(rep.psit3 == poly("-1/2*y"), || format!("Psit3 = {}", rep.psit3))?;
    let w = build_metric(&pot).map_err(|e| e.to_string())?;
    let g = WalkerGeometry::new(w.clone());
    ensure(g.curvature.psit[3] == RatFun::from(&poly("-1/2*y")), || "curvature-route Psit3 differs".into())?;
    for point in [[1, 2, 3, 1], [0, 0, 0, -2], [-1, 3, 2, 5]] {
        let p = point.map(|n| q(n, 1));
        let t = classify_sd_weyl(&w, &g.curvature, &p).map_err(|e| e.to_string())?;
        ensure(t == SdType::III31, || format!("type {t} at {point:?}"))?;
    }

    let gb = WalkerGeometry::new(metric("0", "u^3", "0"));
    ensure(gb.curvature.psi[0] == RatFun::from(&poly("3*u")), || format!("Psi0 = {}", gb.curvature.psi[0]))?;
    for point in [[1, 0, 0, 0], [2, -1, 3, 1]] {
        let p = point.map(|n| q(n, 1));
        let t = classify_sd_weyl(&gb.metric, &gb.curvature, &p).map_err(|e| e.to_string())?;
        ensure(t == SdType::SdFlat, || format!("b = u^3: type {t}"))?;
    }

    let gf = WalkerGeometry::new(WalkerMetric::flat());
    ensure(gf.curvature.is_zero(), || "flat curvature nonzero".into())?;
    ensure(gf.coefficients.nonzero().is_empty(), || "flat coefficients nonzero".into())?;
    let t = classify_sd_weyl(&gf.metric, &gf.curvature, &[q(1, 1), q(1, 1), q(1, 1), q(1, 1)]).map_err(|e| e.to_string())?;
    ensure(t == SdType::SdFlat, || format!("flat: type {t}"))?;
    Ok("f = y^2: Psit3 = -y/2, {31}III at y != 0; b = u^3: SD-flat, Psi0 = 3u; flat: all zero".into())
}

fn null_geometry(fx: &Fixture) -> Verdict {
    let pi = PrimedSpinorField::walker();
    for (k, g) in fx.geometries.iter().enumerate() {
        let f = s_and_t_forms(&pi, g).map_err(|e| format!("metric {k}: {e}"))?;
        let pattern = relation_suite(&g.coefficients, &g.curvature, "walker-tilde").map_err(|e| e.to_string())?;
        ensure(f.s.is_zero() && nonzero(&pattern).is_empty(), || format!("metric {k}: S = 0 {}, pattern {:?}", f.s.is_zero(), nonzero(&pattern)))?;
        let l_flat = OneForm(g.tensor.lower(&g.tetrad.l));
        ensure(l_flat == OneForm::gradient(&Poly::x()), || format!("metric {k}: l lowered is not dx"))?;
        ensure(frobenius_check(&l_flat).iter().all(RatFun::is_zero), || format!("metric {k}: Frobenius fails for dx"))?;
    }
    let w = build_metric(&HeavenlyPotential::from_theta(poly("u*v*x"))).map_err(|e| e.to_string())?;
    let g = WalkerGeometry::new(w);
    for q in 2..=4 {
        let r = ggst_condition_iii(&pi, q, &g).map_err(|e| e.to_string())?;
        ensure(r.is_zero(), || format!("divergence condition nonzero for multiplicity {q}"))?;
    }
    Ok("S = 0 with the Walker pattern; Frobenius(dx) = 0; divergence condition zero on uvx".into())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let metrics = test_metrics(METRIC_COUNT, METRIC_DEGREE, METRIC_SEED);
    let geometries: Vec<WalkerGeometry> = metrics.iter().cloned().map(WalkerGeometry::new).collect();
    let fx = Fixture {
        metrics,
        geometries,
        build_time: start.elapsed(),
    };
    let criteria: [(&str, &dyn Fn() -> Verdict); 10] = [
        ("route equality", &|| route_equality(&fx)),
        ("exterior-derivative route", &|| exterior_route(&fx)),
        ("field equations", &|| field_equations(&fx)),
        ("commutators", &|| commutators(&fx)),
        ("curvature cross-route", &|| curvature_cross_route(&fx)),
        ("Walker consequences", &|| walker_consequences(&fx)),
        ("heavenly pipeline", &heavenly_pipeline),
        ("congruence numerics", &|| congruence_numerics(&fx)),
        ("classification", &classification),
        ("null-geometry checkers", &|| null_geometry(&fx)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{}/10 criteria passed in {:.1} s", 10 - failed, start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
