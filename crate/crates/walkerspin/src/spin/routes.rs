use super::{connection_table, Base, Coef, SpinCoefficients};
use crate::poly::{q, Poly, RatFun, Var};
use crate::walker::{directional_vector, Christoffel, FrameError, MetricTensor, Op, Tetrad, Vec4, WalkerMetric};
use std::array::from_fn;

fn contract(w: &Vec4, v: &Vec4) -> RatFun {
    (0..4).filter(|&a| !w[a].is_zero() && !v[a].is_zero()).map(|a| &w[a] * &v[a]).sum()
}

/// Spin coefficients from the covariant derivatives of a normalized tetrad.
pub fn spin_coefficients_from_tetrad(
    ch: &Christoffel,
    metric: &MetricTensor,
    t: &Tetrad,
) -> Result<SpinCoefficients, FrameError> {
    t.check_normalized(metric)?;
    let l_ = metric.lower(&t.l);
    let n_ = metric.lower(&t.n);
    let m_ = metric.lower(&t.m);
    let mt_ = metric.lower(&t.mt);
    let inv = (&t.chi * &t.chit).recip().ok_or(FrameError::ZeroScale)?;
    let mut out = SpinCoefficients::zero();
    for op in Op::ALL {
        let x = t.leg(op);
        let dl = directional_vector(ch, x, &t.l);
        let dn = directional_vector(ch, x, &t.n);
        let dm = directional_vector(ch, x, &t.m);
        let dmt = directional_vector(ch, x, &t.mt);
        let chi_term = &t.chit * &t.apply(op, &t.chi);
        let chit_term = &t.chi * &t.apply(op, &t.chit);
        let unprimed = [
            (&(&contract(&n_, &dl) + &contract(&m_, &dmt)) + &chi_term).half(),
            -contract(&m_, &dl),
            -contract(&mt_, &dn),
            (&(&contract(&l_, &dn) + &contract(&mt_, &dm)) + &chi_term).half(),
        ];
        let tilde = [
            (&(&contract(&n_, &dl) + &contract(&mt_, &dm)) + &chit_term).half(),
            -contract(&mt_, &dl),
            -contract(&m_, &dn),
            (&(&contract(&l_, &dn) + &contract(&m_, &dmt)) + &chit_term).half(),
        ];
        for (is_tilde, vals) in [(false, unprimed), (true, tilde)] {
            let table = connection_table(is_tilde);
            let (_, row) = table.iter().find(|(o, _)| *o == op).expect("row");
            for (k, (sign, coef)) in row.iter().enumerate() {
                let v = &vals[k] * &inv;
                out.set(*coef, if *sign < 0 { -v } else { v });
            }
        }
    }
    Ok(out)
}

/// Closed-form coefficients of the Walker spin frames.
pub fn walker_closed_form(w: &WalkerMetric) -> SpinCoefficients {
    use Base::*;
    use Var::*;
    let (a, b, c) = (&w.a, &w.b, &w.c);
    let d = |p: &Poly, v: Var| p.diff(v);
    let (a1, a2, a4) = (d(a, U), d(a, V), d(a, Y));
    let (b1, b2, b3) = (d(b, U), d(b, V), d(b, X));
    let (c1, c2, c3, c4) = (d(c, U), d(c, V), d(c, X), d(c, Y));
    let f = |p: Poly, n: i64, dd: i64| RatFun::from(p.scale(&q(n, dd)));
    let mut s = SpinCoefficients::zero();
    let mut put = |base: Base, primed: bool, tilde: bool, v: RatFun| s.set(Coef::new(base, primed, tilde), v);

    put(Epsilon, true, false, f(&c2 - &a1, 1, 4));
    put(Epsilon, true, true, f(-(&a1 + &c2), 1, 4));
    put(Alpha, true, false, f(&b2 - &c1, 1, 4));
    put(Alpha, false, true, f(-(&b2 + &c1), 1, 4));
    put(Beta, false, false, f(&b2 - &c1, 1, 4));
    put(Beta, true, true, f(-(&b2 + &c1), 1, 4));
    put(Gamma, false, false, f(&a1 - &c2, 1, 4));
    put(Gamma, false, true, f(&a1 + &c2, 1, 4));
    put(Kappa, true, false, f(a2.clone(), -1, 2));
    let kt = &(&(&(&a4.scale_int(2) - &c3.scale_int(2)) - &(b * &a2)) - &(c * &a1)) + &(&(a * &c1) + &(c * &c2));
    put(Kappa, true, true, f(kt, 1, 4));
    put(Rho, true, false, f(c2.clone(), -1, 2));
    put(Sigma, false, false, f(b1.clone(), -1, 2));
    let st = &(&(&(&c4.scale_int(2) - &b3.scale_int(2)) - &(c * &c1)) - &(b * &c2)) + &(&(a * &b1) + &(c * &b2));
    put(Sigma, true, true, f(st, 1, 4));
    put(Tau, false, false, f(c1, 1, 2));
    s
}

/// Residuals of the exterior-derivative expansions of the four tetrad one-forms,
/// labelled `d<leg>[ab]` for the six independent components.
pub fn exterior_residuals(metric: &MetricTensor, t: &Tetrad, s: &SpinCoefficients) -> Vec<(String, RatFun)> {
    let l = metric.lower(&t.l);
    let n = metric.lower(&t.n);
    let m = metric.lower(&t.m);
    let mt = metric.lower(&t.mt);
    let g = |name: &str| s.by_name(name).clone();
    let sum = |names: &[&str]| -> RatFun { names.iter().map(|n| g(n)).sum() };
    let wedge = |p: &Vec4, r: &Vec4| -> [[RatFun; 4]; 4] { from_fn(|a| from_fn(|b| &(&p[a] * &r[b]) - &(&r[a] * &p[b]))) };
    let ext = |p: &Vec4| -> [[RatFun; 4]; 4] {
        from_fn(|a| from_fn(|b| &p[b].diff(Var::from_index(a)) - &p[a].diff(Var::from_index(b))))
    };
    type Pair<'a> = (RatFun, &'a Vec4, &'a Vec4);
    let expansions: Vec<(&str, &Vec4, Vec<Pair>)> = vec![
        (
            "l",
            &l,
            vec![
                (sum(&["tau~", "alp~'", "bet'"]), &l, &m),
                (sum(&["tau", "bet~'", "alp'"]), &l, &mt),
                (sum(&["gam'", "gam~'"]), &l, &n),
                (&g("rho~") - &g("rho"), &m, &mt),
                (-g("kap~"), &m, &n),
                (-g("kap"), &mt, &n),
            ],
        ),
        (
            "m",
            &m,
            vec![
                (&(&g("rho~'") - &g("eps'")) - &g("gam~"), &l, &m),
                (g("sig~'"), &l, &mt),
                (sum(&["tau", "tau~'"]), &l, &n),
                (&g("alp'") - &g("alp~"), &m, &mt),
                (&sum(&["gam'", "eps~"]) - &g("rho"), &m, &n),
                (-g("sig"), &mt, &n),
            ],
        ),
        (
            "mt",
            &mt,
            vec![
                (g("sig'"), &l, &m),
                (-(&sum(&["eps~'", "gam"]) - &g("rho'")), &l, &mt),
                (sum(&["tau~", "tau'"]), &l, &n),
                (&g("alp") - &g("alp~'"), &m, &mt),
                (-g("sig~"), &m, &n),
                (&sum(&["eps", "gam~'"]) - &g("rho~"), &mt, &n),
            ],
        ),
        (
            "n",
            &n,
            vec![
                (-g("kap'"), &l, &m),
                (-g("kap~'"), &l, &mt),
                (-sum(&["gam", "gam~"]), &l, &n),
                (&g("rho'") - &g("rho~'"), &m, &mt),
                (sum(&["bet~", "alp", "tau'"]), &m, &n),
                (sum(&["bet", "alp~", "tau~'"]), &mt, &n),
            ],
        ),
    ];
    let mut out = Vec::new();
    for (name, form, terms) in expansions {
        let mut res = ext(form);
        for (k, p, r) in terms {
            if k.is_zero() {
                continue;
            }
            let w = wedge(p, r);
            for a in 0..4 {
                for b in 0..4 {
                    res[a][b] = &res[a][b] - &(&k * &w[a][b]);
                }
            }
        }
        for a in 0..4 {
            for b in (a + 1)..4 {
                out.push((format!("d{name}[{a}{b}]"), res[a][b].clone()));
            }
        }
    }
    out
}

/// Closed-form images of `kap, rho, sig, tau` and their tilde partners under
/// `l -> lam lamt l`, `m -> lam/lamt m + lam mut l`, `mt -> lamt/lam mt + mu lamt l`.
pub type TransformedCoefficients = Vec<(Coef, RatFun)>;

pub fn transform_coefficients(
    s: &SpinCoefficients,
    lam: &RatFun,
    lamt: &RatFun,
    mu: &RatFun,
    mut_: &RatFun,
) -> Result<TransformedCoefficients, FrameError> {
    let il = lam.recip().ok_or(FrameError::ZeroScale)?;
    let ilt = lamt.recip().ok_or(FrameError::ZeroScale)?;
    let mut out = Vec::new();
    for tilde in [false, true] {
        let (l, lt, m, mt, il, ilt) = if tilde {
            (lamt, lam, mut_, mu, &ilt, &il)
        } else {
            (lam, lamt, mu, mut_, &il, &ilt)
        };
        let get = |b: Base| s.get(Coef::new(b, false, tilde));
        let k = get(Base::Kappa);
        let (rho, sig, tau) = (get(Base::Rho), get(Base::Sigma), get(Base::Tau));
        let l2 = l * l;
        let l3 = &l2 * l;
        let kappa = &(&l3 * lt) * k;
        let rho_n = &(&(l * lt) * rho) + &(&(&(&l2 * lt) * m) * k);
        let sig_n = &(&(&l3 * ilt) * sig) + &(&(&l3 * mt) * k);
        let tau_n = &(&(&(l * ilt) * tau) + &(&(l * mt) * rho))
            + &(&(&(&(&l2 * ilt) * m) * sig) + &(&(&(&l2 * m) * mt) * k));
        let _ = il;
        out.push((Coef::new(Base::Kappa, false, tilde), kappa));
        out.push((Coef::new(Base::Rho, false, tilde), rho_n));
        out.push((Coef::new(Base::Sigma, false, tilde), sig_n));
        out.push((Coef::new(Base::Tau, false, tilde), tau_n));
    }
    Ok(out)
}
