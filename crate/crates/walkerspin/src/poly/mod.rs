//! Sparse multivariate polynomials over the rationals in the coordinates `u, v, x, y`.

mod parse;
mod ratfun;

pub use parse::{parse_poly, ParseError, ParseErrorKind};
pub use ratfun::RatFun;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// Exact rational scalar.
pub type Q = BigRational;

/// Exponent vector, degrees in `(u, v, x, y)`.
pub type Exp = [u32; 4];

/// Build a rational from a numerator and denominator.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Build an integer rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Exact conversion of a finite double to a rational.
pub fn q_from_f64(x: f64) -> Q {
    Q::from_float(x).expect("finite value")
}

/// Nearest double to a rational.
pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Coordinate variable. The numeric subscripts 1..4 of the usual notation are `U, V, X, Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    U,
    V,
    X,
    Y,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::U, Var::V, Var::X, Var::Y];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Var {
        Var::ALL[i]
    }

    pub fn name(self) -> &'static str {
        ["u", "v", "x", "y"][self as usize]
    }
}

/// A polynomial with rational coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Exp, Q>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Poly {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert([0; 4], c);
        }
        p
    }

    pub fn int(n: i64) -> Poly {
        Poly::constant(qi(n))
    }

    pub fn var(v: Var) -> Poly {
        let mut e = [0; 4];
        e[v.index()] = 1;
        Poly::monomial(Q::one(), e)
    }

    pub fn monomial(c: Q, e: Exp) -> Poly {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn u() -> Poly {
        Poly::var(Var::U)
    }
    pub fn v() -> Poly {
        Poly::var(Var::V)
    }
    pub fn x() -> Poly {
        Poly::var(Var::X)
    }
    pub fn y() -> Poly {
        Poly::var(Var::Y)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&[0; 4]).is_some_and(|c| c.is_one())
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&[0; 4]).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exp) -> Q {
        self.terms.get(e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|e| e[v.index()]).max().unwrap_or(0)
    }

    pub fn depends_on(&self, v: Var) -> bool {
        self.terms.keys().any(|e| e[v.index()] > 0)
    }

    fn add_term(&mut self, e: Exp, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Poly {
        self.scale(&qi(n))
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to `v`.
    pub fn diff(&self, v: Var) -> Poly {
        let i = v.index();
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = *e;
                f[i] -= 1;
                out.terms.insert(f, c * qi(e[i] as i64));
            }
        }
        out
    }

    /// Repeated partial derivatives, e.g. `d(&[U, U, V])`.
    pub fn d(&self, vars: &[Var]) -> Poly {
        vars.iter().fold(self.clone(), |p, v| p.diff(*v))
    }

    pub fn eval(&self, point: &[Q; 4]) -> Q {
        let mut acc = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, &p) in e.iter().enumerate() {
                if p > 0 {
                    t *= num_traits::pow(point[k].clone(), p as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Rename variables: variable `i` becomes variable `perm[i]`.
    pub fn permute_vars(&self, perm: [Var; 4]) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let mut f = [0; 4];
            for i in 0..4 {
                f[perm[i].index()] += e[i];
            }
            out.add_term(f, c.clone());
        }
        out
    }

    /// Substitute a polynomial for one variable.
    pub fn substitute(&self, v: Var, with: &Poly) -> Poly {
        let i = v.index();
        let mut out = Poly::zero();
        let mut powers: Vec<Poly> = vec![Poly::one()];
        for (e, c) in &self.terms {
            while powers.len() <= e[i] as usize {
                let next = powers.last().unwrap() * with;
                powers.push(next);
            }
            let mut f = *e;
            f[i] = 0;
            let t = &Poly::monomial(c.clone(), f) * &powers[e[i] as usize];
            out += &t;
        }
        out
    }

    /// Leading term under lexicographic order with `u > v > x > y`.
    pub fn leading(&self) -> Option<(&Exp, &Q)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / d`, if `d` divides `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (de, dc) = d.leading()?;
        let (de, dc) = (*de, dc.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((re, rc)) = rem.leading() {
            if (0..4).any(|k| re[k] < de[k]) {
                return None;
            }
            let mut e = [0; 4];
            for k in 0..4 {
                e[k] = re[k] - de[k];
            }
            let t = Poly::monomial(rc / &dc, e);
            rem -= &(&t * d);
            quot += &t;
        }
        Some(quot)
    }

    /// Canonical ordering key for printing: higher total degree first, then lexicographic.
    fn print_order(a: &Exp, b: &Exp) -> Ordering {
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        db.cmp(&da).then_with(|| b.cmp(a))
    }

    /// Largest absolute coefficient, as a double. Useful for reporting.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .values()
            .map(|c| q_to_f64(&c.abs()))
            .fold(0.0, f64::max)
    }
}

fn fmt_rational(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Exp> = self.terms.keys().collect();
        keys.sort_by(|a, b| Poly::print_order(a, b));
        for (i, e) in keys.iter().enumerate() {
            let c = &self.terms[*e];
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors: Vec<String> = Vec::new();
            let is_const = e.iter().all(|&p| p == 0);
            if !mag.is_one() || is_const {
                factors.push(fmt_rational(&mag));
            }
            for (k, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => factors.push(Var::from_index(k).name().to_string()),
                    _ => factors.push(format!("{}^{}", Var::from_index(k).name(), p)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl std::str::FromStr for Poly {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Poly, ParseError> {
        parse_poly(s)
    }
}

impl From<i64> for Poly {
    fn from(n: i64) -> Poly {
        Poly::int(n)
    }
}

impl From<Q> for Poly {
    fn from(c: Q) -> Poly {
        Poly::constant(c)
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]];
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_partials_commute() {
        let p = parse_poly("u*v*x + 3*u^2*y").unwrap();
        assert_eq!(p.diff(Var::U).diff(Var::X), p.diff(Var::X).diff(Var::U));
        assert_eq!(parse_poly("u*v*x").unwrap().d(&[Var::U, Var::X]), Poly::v());
    }

    #[test]
    fn exact_division() {
        let a = parse_poly("u+v").unwrap();
        let b = parse_poly("u-v").unwrap();
        let p = &a * &b;
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(parse_poly("u^2+1").unwrap().div_exact(&a), None);
    }

    #[test]
    fn substitution_and_permutation() {
        let p = parse_poly("u^2*x").unwrap();
        assert_eq!(p.substitute(Var::U, &Poly::int(2)), parse_poly("4*x").unwrap());
        let swapped = p.permute_vars([Var::V, Var::U, Var::Y, Var::X]);
        assert_eq!(swapped, parse_poly("v^2*y").unwrap());
    }
}
