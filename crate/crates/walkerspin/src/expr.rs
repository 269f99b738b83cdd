//! A small expression language for spin-coefficient identities.
//!
//! Identifiers are coefficient names (`kap`, `rho~'`, ...), curvature names (`Psi0`,
//! `Psit3`, `Phi12`, `Lam`, `Pi`, `S`) or free symbols such as `f`. The directional
//! operators are written `D(..)`, `Dp(..)`, `dl(..)` (along `m`) and `tr(..)` (along `mt`).

use crate::poly::RatFun;
use crate::spin::Coef;
use crate::walker::Op;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Sym(String),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    Apply(Op, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unbound symbol `{0}`")]
    Unbound(String),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Sym(char),
    End,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut n: i64 = 0;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                n = n * 10 + chars[i].1.to_digit(10).expect("digit") as i64;
                i += 1;
            }
            out.push((pos, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || "~'".contains(chars[i].1)) {
                s.push(chars[i].1);
                i += 1;
            }
            out.push((pos, Tok::Ident(s)));
        } else if "+-*^()=".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ExprError::Syntax {
                pos,
                msg: format!("unexpected `{c}`"),
            });
        }
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, msg: &str) -> Result<T, ExprError> {
        Err(ExprError::Syntax {
            pos: self.toks[self.at].0,
            msg: msg.into(),
        })
    }

    fn sum(&mut self) -> Result<Expr, ExprError> {
        let mut terms = vec![self.product()?];
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    terms.push(self.product()?);
                }
                Tok::Sym('-') => {
                    self.bump();
                    terms.push(Expr::Neg(Box::new(self.product()?)));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 { terms.pop().expect("one") } else { Expr::Add(terms) })
    }

    fn product(&mut self) -> Result<Expr, ExprError> {
        if let Tok::Sym('-') = self.peek() {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.product()?)));
        }
        let mut factors = vec![self.power()?];
        while let Tok::Sym('*') = self.peek() {
            self.bump();
            factors.push(self.power()?);
        }
        Ok(if factors.len() == 1 { factors.pop().expect("one") } else { Expr::Mul(factors) })
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if let Tok::Sym('^') = self.peek() {
            self.bump();
            match self.bump() {
                Tok::Int(n) if n >= 0 => Ok(Expr::Pow(Box::new(base), n as u32)),
                _ => self.fail("expected exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.bump() {
            Tok::Int(n) => Ok(Expr::Int(n)),
            Tok::Sym('(') => {
                let e = self.sum()?;
                match self.bump() {
                    Tok::Sym(')') => Ok(e),
                    _ => self.fail("expected `)`"),
                }
            }
            Tok::Ident(name) => {
                let op = match name.as_str() {
                    "D" => Some(Op::D),
                    "Dp" => Some(Op::Dp),
                    "dl" => Some(Op::Delta),
                    "tr" => Some(Op::Tri),
                    _ => None,
                };
                match (op, self.peek()) {
                    (Some(op), Tok::Sym('(')) => {
                        self.bump();
                        let e = self.sum()?;
                        match self.bump() {
                            Tok::Sym(')') => Ok(Expr::Apply(op, Box::new(e))),
                            _ => self.fail("expected `)`"),
                        }
                    }
                    _ => Ok(Expr::Sym(name)),
                }
            }
            _ => self.fail("expected a term"),
        }
    }
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr, ExprError> {
        let mut p = Parser { toks: lex(src)?, at: 0 };
        let e = p.sum()?;
        match p.peek() {
            Tok::End => Ok(e),
            _ => p.fail("trailing input"),
        }
    }

    /// Rename every symbol and operator through the given maps.
    pub fn rewrite(&self, sym: &impl Fn(&str) -> String, op: &impl Fn(Op) -> Op) -> Expr {
        match self {
            Expr::Int(n) => Expr::Int(*n),
            Expr::Sym(s) => Expr::Sym(sym(s)),
            Expr::Add(v) => Expr::Add(v.iter().map(|e| e.rewrite(sym, op)).collect()),
            Expr::Mul(v) => Expr::Mul(v.iter().map(|e| e.rewrite(sym, op)).collect()),
            Expr::Neg(e) => Expr::Neg(Box::new(e.rewrite(sym, op))),
            Expr::Pow(e, n) => Expr::Pow(Box::new(e.rewrite(sym, op)), *n),
            Expr::Apply(o, e) => Expr::Apply(op(*o), Box::new(e.rewrite(sym, op))),
        }
    }

    /// The tilde image: tilde toggled on coefficients, `Psi <-> Psit`, `Phi_ij -> Phi_ji`,
    /// `dl <-> tr`.
    pub fn tilde(&self) -> Expr {
        self.rewrite(&tilde_name, &|o| match o {
            Op::Delta => Op::Tri,
            Op::Tri => Op::Delta,
            other => other,
        })
    }

    /// Evaluate with a symbol environment and an operator action.
    pub fn eval(
        &self,
        env: &impl Fn(&str) -> Option<RatFun>,
        apply: &impl Fn(Op, &RatFun) -> RatFun,
    ) -> Result<RatFun, ExprError> {
        Ok(match self {
            Expr::Int(n) => RatFun::int(*n),
            Expr::Sym(s) => env(s).ok_or_else(|| ExprError::Unbound(s.clone()))?,
            Expr::Add(v) => {
                let mut acc = RatFun::zero();
                for e in v {
                    acc = &acc + &e.eval(env, apply)?;
                }
                acc
            }
            Expr::Mul(v) => {
                let mut acc = RatFun::one();
                for e in v {
                    let x = e.eval(env, apply)?;
                    if x.is_zero() {
                        return Ok(RatFun::zero());
                    }
                    acc = &acc * &x;
                }
                acc
            }
            Expr::Neg(e) => -e.eval(env, apply)?,
            Expr::Pow(e, n) => e.eval(env, apply)?.pow(*n),
            Expr::Apply(o, e) => apply(*o, &e.eval(env, apply)?),
        })
    }
}

/// Tilde image of a single symbol name.
pub fn tilde_name(s: &str) -> String {
    if let Some(c) = Coef::parse(s) {
        return c.tilde().ascii();
    }
    if let Some(k) = s.strip_prefix("Psit") {
        return format!("Psi{k}");
    }
    if let Some(k) = s.strip_prefix("Psi") {
        return format!("Psit{k}");
    }
    if let Some(ij) = s.strip_prefix("Phi") {
        let b = ij.as_bytes();
        if b.len() == 2 {
            return format!("Phi{}{}", b[1] as char, b[0] as char);
        }
    }
    s.to_string()
}

/// An identity `lhs = rhs` kept as the residual `lhs - rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub label: String,
    pub residual: Expr,
}

impl Identity {
    pub fn parse(label: &str, src: &str) -> Result<Identity, ExprError> {
        let (l, r) = src.split_once('=').ok_or(ExprError::Syntax {
            pos: 0,
            msg: "expected `=`".into(),
        })?;
        let lhs = Expr::parse(l)?;
        let rhs = Expr::parse(r)?;
        Ok(Identity {
            label: label.to_string(),
            residual: Expr::Add(vec![lhs, Expr::Neg(Box::new(rhs))]),
        })
    }

    pub fn tilde(&self, label: &str) -> Identity {
        Identity {
            label: label.to_string(),
            residual: self.residual.tilde(),
        }
    }
}
