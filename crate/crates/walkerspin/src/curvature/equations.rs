use crate::expr::Identity;
use std::sync::OnceLock;

const FIELD: [(&str, &str); 24] = [
    ("a", "tr(kap) - D(rho) = rho^2 + sig*sig~ - kap~*tau + kap*(tau' + 2*alp + bet~ + bet') - rho*(eps + eps~) + Phi00"),
    ("a'", "-dl(kap') - Dp(rho') = rho'^2 + sig'*sig~' - kap~'*tau' + kap'*(tau + 2*alp' + bet~' + bet) - rho'*(eps' + eps~') + Phi22"),
    ("b", "dl(kap) - D(sig) = sig*(rho + rho~ - gam~' + gam' - 2*eps) - kap*(tau - tau~' - alp~ - alp' - 2*bet) + Psi0"),
    ("b'", "-tr(kap') - Dp(sig') = sig'*(rho' + rho~' - gam~ + gam - 2*eps') - kap'*(tau' - tau~ - alp~' - alp - 2*bet') + Psi4"),
    ("c", "Dp(kap) - D(tau) = rho*(tau + tau~') + sig*(tau~ + tau') - tau*(gam~' + eps) + kap*(gam~ + 2*gam - eps') + Psi1 + Phi01"),
    ("c'", "D(kap') - Dp(tau') = rho'*(tau' + tau~) + sig'*(tau~' + tau) - tau'*(gam~ + eps') + kap'*(gam~' + 2*gam' - eps) - Psi3 - Phi21"),
    ("d", "tr(sig) - dl(rho) = tau*(rho - rho~) + kap*(rho~' - rho') - rho*(alp~ + bet) + sig*(2*alp - alp~' + bet') - Psi1 + Phi01"),
    ("d'", "-dl(sig') + tr(rho') = tau'*(rho' - rho~') + kap'*(rho~ - rho) - rho'*(alp~' + bet') + sig'*(2*alp' - alp~ + bet) + Psi3 - Phi21"),
    ("e", "Dp(sig) - dl(tau) = -rho'*sig - sig~'*rho + tau^2 - kap*kap~' - tau*(bet - bet~') + sig*(2*gam - eps' + eps~') + Phi02"),
    ("e'", "D(sig') + tr(tau') = -rho*sig' - sig~*rho' + tau'^2 - kap'*kap~ - tau'*(bet' - bet~) + sig'*(2*gam' - eps + eps~) + Phi20"),
    ("f", "tr(tau) - Dp(rho) = rho*rho~' + sig*sig' - tau*tau~ + kap*kap' - rho*(gam + gam~) + tau*(alp - alp~') - Psi2 - 2*Pi"),
    ("f'", "-dl(tau') - D(rho') = rho'*rho~ + sig'*sig - tau'*tau~' + kap'*kap - rho'*(gam' + gam~') + tau'*(alp' - alp~) - Psi2 - 2*Pi"),
    ("g", "Dp(bet) - dl(gam) = tau*rho' + kap'*sig - kap~'*eps - alp*sig~' + bet*(eps~' - rho' + gam) + gam*(bet~' + alp' + tau) - Phi12"),
    ("g'", "D(bet') + tr(gam') = tau'*rho + kap*sig' - kap~*eps' - alp'*sig~ + bet'*(eps~ - rho + gam') + gam'*(bet~ + alp + tau') + Phi10"),
    ("h", "tr(eps) - D(alp) = -tau'*rho - kap*sig' - kap~*gam + bet*sig~ - alp*(eps~ - rho + gam') + eps*(bet~ + alp + tau') - Phi10"),
    ("h'", "-dl(eps') - Dp(alp') = -tau*rho' - kap'*sig - kap~'*gam' + bet'*sig~' - alp'*(eps~' - rho' + gam) + eps'*(bet~' + alp' + tau) + Phi12"),
    ("i", "D(bet) - dl(eps) = kap*(rho' + gam) + sig*(tau' - alp) + bet*(gam~' - rho~) - eps*(tau~' + alp~) + Psi1"),
    ("i'", "Dp(bet') + tr(eps') = kap'*(rho + gam') + sig'*(tau - alp') + bet'*(gam~ - rho~') - eps'*(tau~ + alp~') - Psi3"),
    ("j", "tr(gam) - Dp(alp) = kap'*(eps - rho) + sig'*(bet - tau) + alp*(rho~' - gam~) - gam*(tau~ + alp~') - (gam*bet' + alp*eps') + Psi3"),
    ("j'", "-dl(gam') - D(alp') = kap*(eps' - rho') + sig*(bet' - tau') + alp'*(rho~ - gam~') - gam'*(tau~' + alp~) - (gam'*bet + alp'*eps) - Psi1"),
    ("k", "D(gam) - Dp(eps) = tau*tau' - kap*kap' - bet*(tau' + tau~) - alp*(tau~' + tau) - eps*(gam + gam~) + gam*(gam' + gam~') + Psi2 + Phi11 - Pi"),
    ("k'", "Dp(gam') - D(eps') = tau*tau' - kap*kap' - bet'*(tau + tau~') - alp'*(tau~ + tau') - eps'*(gam' + gam~') + gam'*(gam + gam~) + Psi2 + Phi11 - Pi"),
    ("l", "tr(bet) - dl(alp) = rho*rho' - sig*sig' - alp*alp~ - bet*alp~' + alp*(bet + alp') + gam*(rho - rho~) + eps*(rho~' - rho') + Psi2 - Phi11 - Pi"),
    ("l'", "-dl(bet') + tr(alp') = rho*rho' - sig*sig' - alp'*alp~' - bet'*alp~ + alp'*(bet' + alp) + gam'*(rho' - rho~') + eps'*(rho~ - rho) + Psi2 - Phi11 - Pi"),
];

const COMMUTATORS: [(&str, &str); 6] = [
    ("[D',D]", "Dp(D(f)) - D(Dp(f)) = (gam + gam~)*D(f) - (gam' + gam~')*Dp(f) + (tau + tau~')*tr(f) + (tau' + tau~)*dl(f)"),
    ("[dl,D]", "dl(D(f)) - D(dl(f)) = (bet + alp~ + tau~')*D(f) - kap*Dp(f) + sig*tr(f) + (rho~ - eps - gam~')*dl(f)"),
    ("[D',tr]", "Dp(tr(f)) - tr(Dp(f)) = (bet' + alp~' + tau~)*Dp(f) - kap'*D(f) - sig'*dl(f) - (rho~' - eps' - gam~)*tr(f)"),
    ("[D,tr]", "D(tr(f)) - tr(D(f)) = kap~*Dp(f) - (tau' + bet~ + alp)*D(f) - sig~*dl(f) - (rho - eps~ - gam')*tr(f)"),
    ("[dl,D']", "dl(Dp(f)) - Dp(dl(f)) = kap~'*D(f) - (tau + bet~' + alp')*Dp(f) + sig~'*tr(f) + (rho' - eps~' - gam)*dl(f)"),
    ("[tr,dl]", "tr(dl(f)) - dl(tr(f)) = (rho~' - rho')*D(f) + (rho - rho~)*Dp(f) + (alp' - alp~)*tr(f) + (alp - alp~')*dl(f)"),
];

/// Walker-frame specializations of the commutators; the symbols `a1` etc. are
/// partial derivatives of the metric functions.
const WALKER_COMMUTATORS: [(&str, &str); 6] = [
    ("walker[D',D]", "Dp(D(f)) - D(Dp(f)) = (a1*D(f) + c1*tr(f))*h"),
    ("walker[dl,D]", "dl(D(f)) - D(dl(f)) = -(c1*D(f) + b1*tr(f))*h"),
    ("walker[D',tr]", "Dp(tr(f)) - tr(Dp(f)) = (a2*D(f) + c2*tr(f))*h"),
    ("walker[D,tr]", "D(tr(f)) - tr(D(f)) = 0"),
    ("walker[dl,D']", "dl(Dp(f)) - Dp(dl(f)) = kap~'*D(f) + sig~'*tr(f)"),
    ("walker[tr,dl]", "tr(dl(f)) - dl(tr(f)) = (c2*D(f) + b2*tr(f))*h"),
];

/// Curvature of Walker spin frames read off from the field equations; the first
/// entry for each name is definitional, later entries are alternatives.
const WALKER_CURVATURE: [(&str, &str); 32] = [
    ("Psi0", "-D(sig)"),
    ("Psi1", "D(bet)"),
    ("Psi1", "-(D(tau) + tr(sig))*h"),
    ("Psi2", "(D(gam) + tr(bet - tau))*t"),
    ("Psi2", "(D(gam + rho') + tr(bet))*t"),
    ("Psi3", "tr(gam)"),
    ("Psi3", "(tr(rho') - D(kap'))*h"),
    ("Psi4", "-tr(kap')"),
    ("Psit0", "0"),
    ("Psit1", "0"),
    ("Psit2", "(D(gam~) - tr(alp~))*t"),
    ("Psit2", "S*t*q"),
    ("Psit3", "dl(gam~) - Dp(alp~)"),
    ("Psit3", "-(D(kap~') + tr(sig~'))*h"),
    ("Psit4", "2*(sig~'*eps~' - kap~'*bet~') - dl(kap~') - Dp(sig~')"),
    ("S", "4*(D(gam) + tr(bet + 2*tau))"),
    ("S", "4*(D(gam - 2*rho') + tr(bet))"),
    ("Phi00", "0"),
    ("Phi10", "0"),
    ("Phi20", "0"),
    ("Phi22", "-tr(kap~')"),
    ("Phi22", "2*(rho'*eps' - kap'*alp') - dl(kap') - Dp(rho')"),
    ("Phi02", "D(sig~')"),
    ("Phi02", "Dp(sig) - dl(tau) + 2*(tau*bet - sig*gam)"),
    ("Phi01", "D(bet~')"),
    ("Phi01", "(tr(sig) - D(tau))*h"),
    ("Phi21", "tr(gam~)"),
    ("Phi21", "-(D(kap') + tr(rho'))*h"),
    ("Phi11", "(D(gam) - tr(bet))*h"),
    ("Phi11", "(D(gam~) + tr(alp~))*h"),
    ("Phi12", "tau*rho' + kap'*sig - Dp(bet) + dl(gam)"),
    ("Phi12", "(tr(sig~') - D(kap~'))*h"),
];

fn parse_all(src: &[(&str, &str)], prefix: &str) -> Vec<Identity> {
    src.iter()
        .map(|(l, s)| Identity::parse(&format!("{prefix}{l}"), s).unwrap_or_else(|e| panic!("{l}: {e}")))
        .collect()
}

/// The 24 field equations followed by their 24 tilde images, labelled `fe.a`, `fe.a'`,
/// `fe~.a`, ...
pub fn field_equations() -> &'static [Identity] {
    static CELL: OnceLock<Vec<Identity>> = OnceLock::new();
    CELL.get_or_init(|| {
        let base = parse_all(&FIELD, "fe.");
        let tilde: Vec<Identity> = base
            .iter()
            .zip(FIELD.iter())
            .map(|(e, (l, _))| e.tilde(&format!("fe~.{l}")))
            .collect();
        base.into_iter().chain(tilde).collect()
    })
}

/// The six commutator identities acting on a scalar `f`.
pub fn commutator_identities() -> &'static [Identity] {
    static CELL: OnceLock<Vec<Identity>> = OnceLock::new();
    CELL.get_or_init(|| parse_all(&COMMUTATORS, ""))
}

pub fn walker_commutator_identities() -> &'static [Identity] {
    static CELL: OnceLock<Vec<Identity>> = OnceLock::new();
    CELL.get_or_init(|| parse_all(&WALKER_COMMUTATORS, ""))
}

/// `(name, expression)` pairs giving Walker curvature components in terms of
/// coefficients; `h = 1/2`, `t = 1/3`, `q = 1/4`.
pub fn walker_curvature_formulas() -> &'static [(String, crate::expr::Expr)] {
    static CELL: OnceLock<Vec<(String, crate::expr::Expr)>> = OnceLock::new();
    CELL.get_or_init(|| {
        WALKER_CURVATURE
            .iter()
            .map(|(n, s)| (n.to_string(), crate::expr::Expr::parse(s).unwrap_or_else(|e| panic!("{n}: {e}"))))
            .collect()
    })
}
