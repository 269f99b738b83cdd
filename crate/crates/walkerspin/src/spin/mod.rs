//! The 32 spin coefficients of a pair of dyads, their computation, priming, and
//! dyad-component covariant differentiation.

mod dyad;
mod routes;

pub use dyad::{coord_covector_to_dyad, dyad_covector_to_coord, DyadField, Slot, ValenceError};
pub use routes::{
    exterior_residuals, spin_coefficients_from_tetrad, transform_coefficients, walker_closed_form,
    TransformedCoefficients,
};

use crate::poly::RatFun;
use crate::walker::Op;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    Kappa,
    Sigma,
    Rho,
    Tau,
    Epsilon,
    Alpha,
    Beta,
    Gamma,
}

impl Base {
    pub const ALL: [Base; 8] = [
        Base::Kappa,
        Base::Sigma,
        Base::Rho,
        Base::Tau,
        Base::Epsilon,
        Base::Alpha,
        Base::Beta,
        Base::Gamma,
    ];

    pub fn ascii(self) -> &'static str {
        ["kap", "sig", "rho", "tau", "eps", "alp", "bet", "gam"][self as usize]
    }

    pub fn greek(self) -> &'static str {
        ["κ", "σ", "ρ", "τ", "ε", "α", "β", "γ"][self as usize]
    }
}

/// A named coefficient: base letter, primed partner, tilde family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coef {
    pub base: Base,
    pub primed: bool,
    pub tilde: bool,
}

impl Coef {
    pub const fn new(base: Base, primed: bool, tilde: bool) -> Coef {
        Coef { base, primed, tilde }
    }

    pub fn index(self) -> usize {
        (self.tilde as usize) * 16 + (self.primed as usize) * 8 + self.base as usize
    }

    pub fn from_index(i: usize) -> Coef {
        Coef {
            base: Base::ALL[i % 8],
            primed: (i / 8) % 2 == 1,
            tilde: i >= 16,
        }
    }

    pub fn all() -> impl Iterator<Item = Coef> {
        (0..32).map(Coef::from_index)
    }

    pub fn prime(self) -> Coef {
        Coef { primed: !self.primed, ..self }
    }

    pub fn tilde(self) -> Coef {
        Coef { tilde: !self.tilde, ..self }
    }

    /// ASCII name such as `kap`, `sig'`, `rho~`, `tau~'`.
    pub fn ascii(self) -> String {
        format!(
            "{}{}{}",
            self.base.ascii(),
            if self.tilde { "~" } else { "" },
            if self.primed { "'" } else { "" }
        )
    }

    pub fn greek(self) -> String {
        format!(
            "{}{}{}",
            self.base.greek(),
            if self.tilde { "\u{303}" } else { "" },
            if self.primed { "'" } else { "" }
        )
    }

    pub fn parse(name: &str) -> Option<Coef> {
        let (rest, primed) = match name.strip_suffix('\'') {
            Some(r) => (r, true),
            None => (name, false),
        };
        let (rest, tilde) = match rest.strip_suffix('~') {
            Some(r) => (r, true),
            None => (rest, false),
        };
        let base = Base::ALL.into_iter().find(|b| b.ascii() == rest)?;
        Some(Coef { base, primed, tilde })
    }
}

impl fmt::Display for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ascii())
    }
}

/// Connection component table: entry `[row][col]` is `(sign, coefficient)` with row the
/// derivative leg and column `(B, C)` in order `00, 01, 10, 11`, so that
/// `gamma_{AA' B}^C = sign * coefficient`.
pub fn connection_table(tilde: bool) -> [(Op, [(i8, Coef); 4]); 4] {
    use Base::*;
    let c = |b: Base, p: bool| Coef::new(b, p, tilde);
    if !tilde {
        [
            (Op::D, [(1, c(Epsilon, false)), (1, c(Kappa, false)), (-1, c(Tau, true)), (1, c(Gamma, true))]),
            (Op::Tri, [(1, c(Alpha, false)), (1, c(Rho, false)), (1, c(Sigma, true)), (-1, c(Beta, true))]),
            (Op::Delta, [(1, c(Beta, false)), (1, c(Sigma, false)), (1, c(Rho, true)), (-1, c(Alpha, true))]),
            (Op::Dp, [(1, c(Gamma, false)), (1, c(Tau, false)), (-1, c(Kappa, true)), (1, c(Epsilon, true))]),
        ]
    } else {
        [
            (Op::D, [(1, c(Epsilon, false)), (1, c(Kappa, false)), (-1, c(Tau, true)), (1, c(Gamma, true))]),
            (Op::Tri, [(1, c(Beta, false)), (1, c(Sigma, false)), (1, c(Rho, true)), (-1, c(Alpha, true))]),
            (Op::Delta, [(1, c(Alpha, false)), (1, c(Rho, false)), (1, c(Sigma, true)), (-1, c(Beta, true))]),
            (Op::Dp, [(1, c(Gamma, false)), (1, c(Tau, false)), (-1, c(Kappa, true)), (1, c(Epsilon, true))]),
        ]
    }
}

/// The 32 coefficients, stored densely.
#[derive(Clone, PartialEq, Eq)]
pub struct SpinCoefficients {
    vals: Vec<RatFun>,
}

impl SpinCoefficients {
    pub fn zero() -> SpinCoefficients {
        SpinCoefficients {
            vals: vec![RatFun::zero(); 32],
        }
    }

    pub fn get(&self, c: Coef) -> &RatFun {
        &self.vals[c.index()]
    }

    pub fn set(&mut self, c: Coef, v: RatFun) {
        self.vals[c.index()] = v;
    }

    /// Look up by ASCII name; panics on an unknown name.
    pub fn by_name(&self, name: &str) -> &RatFun {
        self.get(Coef::parse(name).unwrap_or_else(|| panic!("unknown coefficient {name}")))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Coef, &RatFun)> {
        self.vals.iter().enumerate().map(|(i, v)| (Coef::from_index(i), v))
    }

    /// `gamma_{AA' B}^C` (unprimed) or `gamma~_{AA' B'}^C'` (primed) as a function.
    pub fn connection(&self, primed_index: bool, a: usize, ap: usize, b: usize, c: usize) -> RatFun {
        let op = Op::from_dyad(a, ap);
        let table = connection_table(primed_index);
        let (_, row) = table.iter().find(|(o, _)| *o == op).expect("row");
        let (sign, coef) = row[2 * b + c];
        let v = self.get(coef);
        if sign < 0 {
            -v
        } else {
            v.clone()
        }
    }

    /// The partner swap induced by priming the dyads.
    pub fn prime(&self) -> SpinCoefficients {
        let mut out = SpinCoefficients::zero();
        for (c, v) in self.iter() {
            out.set(c.prime(), v.clone());
        }
        out
    }

    /// Names with nonzero values.
    pub fn nonzero(&self) -> Vec<(Coef, &RatFun)> {
        self.iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    /// Entrywise difference.
    pub fn diff(&self, other: &SpinCoefficients) -> Vec<(Coef, RatFun)> {
        self.iter().map(|(c, v)| (c, v - other.get(c))).collect()
    }

    /// The spin-frame identities `eps = -gam'`, `alp = bet'`, `bet = alp'`, `gam = -eps'`
    /// and their tilde versions.
    pub fn spin_frame_residuals(&self) -> Vec<(String, RatFun)> {
        let mut out = Vec::new();
        for tilde in [false, true] {
            let g = |b: Base, p: bool| self.get(Coef::new(b, p, tilde));
            let t = if tilde { "~" } else { "" };
            out.push((format!("eps{t}+gam{t}'"), g(Base::Epsilon, false) + g(Base::Gamma, true)));
            out.push((format!("alp{t}-bet{t}'"), g(Base::Alpha, false) - g(Base::Beta, true)));
            out.push((format!("bet{t}-alp{t}'"), g(Base::Beta, false) - g(Base::Alpha, true)));
            out.push((format!("gam{t}+eps{t}'"), g(Base::Gamma, false) + g(Base::Epsilon, true)));
        }
        out
    }
}

impl fmt::Debug for SpinCoefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (c, v) in self.nonzero() {
            m.entry(&c.ascii(), &v.to_string());
        }
        m.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for c in Coef::all() {
            assert_eq!(Coef::parse(&c.ascii()), Some(c));
            assert_eq!(Coef::from_index(c.index()), c);
        }
        assert_eq!(Coef::parse("kap~'"), Some(Coef::new(Base::Kappa, true, true)));
        assert_eq!(Coef::parse("zeta"), None);
    }
}
