use super::{Poly, Var, Q};
use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownIdentifier(String),
    Division,
}

/// Parse failure with a byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at position {pos}: {}", describe(.kind))]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

fn describe(k: &ParseErrorKind) -> String {
    match k {
        ParseErrorKind::Syntax(s) => s.clone(),
        ParseErrorKind::UnknownIdentifier(s) => format!("unknown identifier `{s}`"),
        ParseErrorKind::Division => "division is only allowed inside a rational literal p/q".into(),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
}

impl Lexer {
    fn new(src: &str) -> Result<Lexer, ParseError> {
        let bytes: Vec<(usize, char)> = src.char_indices().collect();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let (pos, ch) = bytes[i];
            if ch.is_whitespace() {
                i += 1;
            } else if ch.is_ascii_digit() {
                let start = i;
                while i < bytes.len() && bytes[i].1.is_ascii_digit() {
                    i += 1;
                }
                let digits: String = bytes[start..i].iter().map(|(_, c)| *c).collect();
                toks.push((pos, Tok::Int(digits.parse().expect("digits"))));
            } else if ch.is_ascii_alphabetic() || ch == '_' {
                let start = i;
                while i < bytes.len() && (bytes[i].1.is_ascii_alphanumeric() || bytes[i].1 == '_') {
                    i += 1;
                }
                let word: String = bytes[start..i].iter().map(|(_, c)| *c).collect();
                toks.push((pos, Tok::Ident(word)));
            } else if "+-*/^()".contains(ch) {
                toks.push((pos, Tok::Sym(ch)));
                i += 1;
            } else if ch == '\u{2212}' {
                toks.push((pos, Tok::Sym('-')));
                i += 1;
            } else {
                return Err(ParseError {
                    pos,
                    kind: ParseErrorKind::Syntax(format!("unexpected character `{ch}`")),
                });
            }
        }
        toks.push((src.len(), Tok::End));
        Ok(Lexer { toks })
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            kind: ParseErrorKind::Syntax(msg.to_string()),
        })
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    acc += &self.term()?;
                }
                Tok::Sym('-') => {
                    self.bump();
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Sym('/') => {
                    return Err(ParseError {
                        pos: self.pos(),
                        kind: ParseErrorKind::Division,
                    })
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Tok::Sym('-') => {
                self.bump();
                Ok(-self.unary()?)
            }
            Tok::Sym('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if let Tok::Sym('^') = self.peek() {
            self.bump();
            let pos = self.pos();
            match self.bump() {
                Tok::Int(n) => {
                    let e: u32 = n.try_into().map_err(|_| ParseError {
                        pos,
                        kind: ParseErrorKind::Syntax("exponent too large".into()),
                    })?;
                    Ok(base.pow(e))
                }
                _ => Err(ParseError {
                    pos,
                    kind: ParseErrorKind::Syntax("expected a nonnegative integer exponent".into()),
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => {
                if let Tok::Sym('/') = self.peek() {
                    self.bump();
                    let dpos = self.pos();
                    match self.bump() {
                        Tok::Int(d) if !d.is_zero() => Ok(Poly::constant(Q::new(n, d))),
                        Tok::Int(_) => Err(ParseError {
                            pos: dpos,
                            kind: ParseErrorKind::Syntax("zero denominator".into()),
                        }),
                        _ => Err(ParseError {
                            pos: dpos,
                            kind: ParseErrorKind::Division,
                        }),
                    }
                } else {
                    Ok(Poly::constant(Q::from_integer(n)))
                }
            }
            Tok::Ident(name) => match name.as_str() {
                "u" => Ok(Poly::var(Var::U)),
                "v" => Ok(Poly::var(Var::V)),
                "x" => Ok(Poly::var(Var::X)),
                "y" => Ok(Poly::var(Var::Y)),
                _ => Err(ParseError {
                    pos,
                    kind: ParseErrorKind::UnknownIdentifier(name),
                }),
            },
            Tok::Sym('(') => {
                let inner = self.expr()?;
                match self.bump() {
                    Tok::Sym(')') => Ok(inner),
                    _ => Err(ParseError {
                        pos: self.toks[self.at.saturating_sub(1)].0,
                        kind: ParseErrorKind::Syntax("expected `)`".into()),
                    }),
                }
            }
            Tok::End => Err(ParseError {
                pos,
                kind: ParseErrorKind::Syntax("unexpected end of input".into()),
            }),
            Tok::Sym(c) => Err(ParseError {
                pos,
                kind: ParseErrorKind::Syntax(format!("unexpected `{c}`")),
            }),
        }
    }
}

/// Parse an expression in `u, v, x, y` with integer or `p/q` literals and `+ - * ^ ( )`.
pub fn parse_poly(src: &str) -> Result<Poly, ParseError> {
    let lex = Lexer::new(src)?;
    let mut p = Parser { toks: lex.toks, at: 0 };
    if matches!(p.peek(), Tok::End) {
        return p.err("empty expression");
    }
    let out = p.expr()?;
    match p.peek() {
        Tok::End => Ok(out),
        Tok::Sym(')') => p.err("unbalanced `)`"),
        _ => p.err("expected an operator"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_and_grouping() {
        let p = parse_poly("2/3*y^4").unwrap();
        assert_eq!(p.to_string(), "2/3*y^4");
        assert_eq!(parse_poly("u*(u+v)").unwrap().to_string(), "u^2 + u*v");
        assert_eq!(parse_poly(" 3*u^2*v -x ").unwrap().to_string(), "3*u^2*v - x");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_poly("u + * v").unwrap_err();
        assert_eq!(e.pos, 4);
        let e = parse_poly("u/2").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Division);
        assert_eq!(e.pos, 1);
        let e = parse_poly("u + z").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownIdentifier("z".into()));
        assert_eq!(e.pos, 4);
        assert!(parse_poly("(u+v").is_err());
        assert!(parse_poly("").is_err());
    }
}
