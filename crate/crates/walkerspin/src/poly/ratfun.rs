use super::{Poly, Var, Q};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Quotient of two polynomials. The denominator is monic in the lexicographic
/// leading term, and exact polynomial quotients are reduced to `den = 1`.
#[derive(Clone)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    /// Panics if `den` is the zero polynomial.
    pub fn new(num: Poly, den: Poly) -> RatFun {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = RatFun { num, den };
        r.normalize();
        r
    }

    pub fn zero() -> RatFun {
        RatFun::from(Poly::zero())
    }

    pub fn one() -> RatFun {
        RatFun::from(Poly::one())
    }

    pub fn int(n: i64) -> RatFun {
        RatFun::from(Poly::int(n))
    }

    pub fn constant(c: Q) -> RatFun {
        RatFun::from(Poly::constant(c))
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one();
            return;
        }
        if let Some(c) = self.den.as_constant() {
            if !c.is_one() {
                self.num = self.num.scale(&(Q::one() / c));
                self.den = Poly::one();
            }
            return;
        }
        let lead = self.den.leading().map(|(_, c)| c.clone()).expect("nonzero");
        if !lead.is_one() {
            let inv = Q::one() / lead;
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
        if let Some(qt) = self.num.div_exact(&self.den) {
            self.num = qt;
            self.den = Poly::one();
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// The polynomial value, when the denominator is trivial.
    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_poly().then_some(&self.num)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn diff(&self, v: Var) -> RatFun {
        if self.is_poly() {
            return RatFun::from(self.num.diff(v));
        }
        let n = &(&self.num.diff(v) * &self.den) - &(&self.num * &self.den.diff(v));
        RatFun::new(n, &self.den * &self.den)
    }

    pub fn scale(&self, c: &Q) -> RatFun {
        RatFun {
            num: self.num.scale(c),
            den: if c.is_zero() { Poly::one() } else { self.den.clone() },
        }
    }

    pub fn half(&self) -> RatFun {
        self.scale(&super::q(1, 2))
    }

    /// Value at a point, or `None` if the denominator vanishes there.
    pub fn eval(&self, point: &[Q; 4]) -> Option<Q> {
        let d = self.den.eval(point);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(point) / d)
        }
    }

    pub fn recip(&self) -> Option<RatFun> {
        if self.num.is_zero() {
            None
        } else {
            Some(RatFun::new(self.den.clone(), self.num.clone()))
        }
    }

    pub fn pow(&self, n: u32) -> RatFun {
        let mut acc = RatFun::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl From<Poly> for RatFun {
    fn from(p: Poly) -> RatFun {
        RatFun { num: p, den: Poly::one() }
    }
}

impl From<&Poly> for RatFun {
    fn from(p: &Poly) -> RatFun {
        RatFun::from(p.clone())
    }
}

impl From<i64> for RatFun {
    fn from(n: i64) -> RatFun {
        RatFun::int(n)
    }
}

impl PartialEq for RatFun {
    fn eq(&self, other: &RatFun) -> bool {
        if self.is_poly() && other.is_poly() {
            self.num == other.num
        } else {
            &self.num * &other.den == &other.num * &self.den
        }
    }
}

impl Eq for RatFun {}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({self})")
    }
}

impl Add<&RatFun> for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.is_poly() && rhs.is_poly() {
            return RatFun::from(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return RatFun::new(&self.num + &rhs.num, self.den.clone());
        }
        RatFun::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub<&RatFun> for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Mul<&RatFun> for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_poly() && rhs.is_poly() {
            return RatFun::from(&self.num * &rhs.num);
        }
        RatFun::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div<&RatFun> for &RatFun {
    type Output = RatFun;
    /// Panics on division by the zero function.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &RatFun) -> RatFun {
        let r = rhs.recip().expect("division by zero function");
        self * &r
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: RatFun) -> RatFun {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: &RatFun) -> RatFun {
                (&self).$m(rhs)
            }
        }
        impl $tr<RatFun> for &RatFun {
            type Output = RatFun;
            fn $m(self, rhs: RatFun) -> RatFun {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl std::iter::Sum for RatFun {
    fn sum<I: Iterator<Item = RatFun>>(iter: I) -> RatFun {
        iter.fold(RatFun::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    #[test]
    fn reduces_exact_quotients() {
        let n = parse_poly("u^2 - v^2").unwrap();
        let d = parse_poly("u - v").unwrap();
        let r = RatFun::new(n, d);
        assert!(r.is_poly());
        assert_eq!(r.num(), &parse_poly("u + v").unwrap());
    }

    #[test]
    fn quotient_rule() {
        let r = RatFun::new(Poly::one(), parse_poly("u").unwrap());
        let d = r.diff(Var::U);
        let expect = RatFun::new(Poly::int(-1), parse_poly("u^2").unwrap());
        assert_eq!(d, expect);
        assert_eq!(&r * &RatFun::from(parse_poly("u").unwrap()), RatFun::one());
    }
}
