//! A small expression language for user-defined sequences `a_n`.
//!
//! ```text
//! expr    = term { ("+" | "-") term } ;
//! term    = unary { ("*" | "/") unary } ;
//! unary   = "-" unary | power ;
//! power   = atom [ "^" exponent ] ;
//! exponent= "-" exponent | power ;
//! atom    = integer | "n" | "(" expr ")" | "mod" "(" expr "," expr ")" ;
//! ```
//!
//! `^` binds tighter than unary minus (`-n^2 = -(n^2)`) and is right
//! associative. The exponent must evaluate to an integer at the point of
//! evaluation, which admits `(-1)^n`. Division is exact.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::SeqValues;
use crate::error::{Error, Result};
use crate::ring::{CoeffRing, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeqExpr {
    Int(BigInt),
    N,
    Neg(Box<SeqExpr>),
    Add(Box<SeqExpr>, Box<SeqExpr>),
    Sub(Box<SeqExpr>, Box<SeqExpr>),
    Mul(Box<SeqExpr>, Box<SeqExpr>),
    Div(Box<SeqExpr>, Box<SeqExpr>),
    Pow(Box<SeqExpr>, Box<SeqExpr>),
    Mod(Box<SeqExpr>, Box<SeqExpr>),
}

/// Syntax error with a 0-based byte offset into the source.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: expected {expected}")]
pub struct ParseError {
    pub offset: usize,
    pub expected: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(u8),
    End,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    tok: Tok,
    tok_start: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> std::result::Result<Self, ParseError> {
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
            tok: Tok::End,
            tok_start: 0,
        };
        p.bump()?;
        Ok(p)
    }

    fn bump(&mut self) -> std::result::Result<(), ParseError> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.tok_start = self.pos;
        let Some(&c) = self.src.get(self.pos) else {
            self.tok = Tok::End;
            return Ok(());
        };
        if c.is_ascii_digit() {
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
            self.tok = Tok::Int(digits.parse().expect("digits"));
        } else if c.is_ascii_alphabetic() {
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                self.pos += 1;
            }
            let word = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
            self.tok = Tok::Ident(word.to_string());
        } else if b"+-*/^(),".contains(&c) {
            self.pos += 1;
            self.tok = Tok::Sym(c);
        } else {
            return Err(ParseError {
                offset: self.pos,
                expected: "a number, `n`, an operator or a parenthesis".into(),
            });
        }
        Ok(())
    }

    fn fail<T>(&self, expected: &str) -> std::result::Result<T, ParseError> {
        Err(ParseError {
            offset: self.tok_start,
            expected: expected.to_string(),
        })
    }

    fn eat(&mut self, sym: u8) -> std::result::Result<bool, ParseError> {
        if self.tok == Tok::Sym(sym) {
            self.bump()?;
            Ok(true)
        } else {
            Ok(false)
        }
    }

    fn expect(&mut self, sym: u8) -> std::result::Result<(), ParseError> {
        if !self.eat(sym)? {
            return self.fail(&format!("`{}`", sym as char));
        }
        Ok(())
    }

    fn expr(&mut self) -> std::result::Result<SeqExpr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+')? {
                lhs = SeqExpr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-')? {
                lhs = SeqExpr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> std::result::Result<SeqExpr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*')? {
                lhs = SeqExpr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(b'/')? {
                lhs = SeqExpr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> std::result::Result<SeqExpr, ParseError> {
        if self.eat(b'-')? {
            return Ok(SeqExpr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> std::result::Result<SeqExpr, ParseError> {
        let base = self.atom()?;
        if self.eat(b'^')? {
            let exp = self.exponent()?;
            return Ok(SeqExpr::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> std::result::Result<SeqExpr, ParseError> {
        if self.eat(b'-')? {
            return Ok(SeqExpr::Neg(Box::new(self.exponent()?)));
        }
        self.power()
    }

    fn atom(&mut self) -> std::result::Result<SeqExpr, ParseError> {
        match self.tok.clone() {
            Tok::Int(v) => {
                self.bump()?;
                Ok(SeqExpr::Int(v))
            }
            Tok::Ident(w) if w == "n" => {
                self.bump()?;
                Ok(SeqExpr::N)
            }
            Tok::Ident(w) if w == "mod" => {
                self.bump()?;
                self.expect(b'(')?;
                let x = self.expr()?;
                self.expect(b',')?;
                let m = self.expr()?;
                self.expect(b')')?;
                Ok(SeqExpr::Mod(Box::new(x), Box::new(m)))
            }
            Tok::Sym(b'(') => {
                self.bump()?;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            _ => self.fail("a number, `n`, `mod(` or `(`"),
        }
    }
}

/// Parses a sequence expression.
pub fn parse(text: &str) -> std::result::Result<SeqExpr, ParseError> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    if p.tok != Tok::End {
        return p.fail("an operator or end of input");
    }
    Ok(e)
}

impl SeqExpr {
    /// Exact value at `n`.
    pub fn eval_at(&self, n: u64) -> Result<Rational> {
        use SeqExpr::*;
        Ok(match self {
            Int(v) => Rational::from_integer(v.clone()),
            N => Rational::from_integer(n),
            Neg(x) => x.eval_at(n)?.negate(),
            Add(a, b) => a.eval_at(n)?.plus(&b.eval_at(n)?),
            Sub(a, b) => a.eval_at(n)?.minus(&b.eval_at(n)?),
            Mul(a, b) => a.eval_at(n)?.times(&b.eval_at(n)?),
            Div(a, b) => {
                let den = b.eval_at(n)?;
                if den.is_zero() {
                    return Err(Error::DivisionByZero { n });
                }
                a.eval_at(n)?.times(&den.inverse()?)
            }
            Pow(a, b) => {
                let base = a.eval_at(n)?;
                let e = b.eval_at(n)?;
                let exp = e.to_i64().ok_or_else(|| Error::NonIntegerExponent {
                    n,
                    exponent: e.to_string(),
                })?;
                if exp < 0 && base.is_zero() {
                    return Err(Error::DivisionByZero { n });
                }
                base.powi(exp)?
            }
            Mod(a, b) => {
                let x = a.eval_at(n)?;
                let m = b.eval_at(n)?;
                if m.is_zero() {
                    return Err(Error::DivisionByZero { n });
                }
                let q = x.times(&m.inverse()?).floor();
                x.minus(&m.times(&q))
            }
        })
    }

    /// `[eval_at(1), ..., eval_at(len)]`.
    pub fn materialize(&self, len: usize) -> Result<SeqValues> {
        let values = (1..=len as u64)
            .map(|n| self.eval_at(n))
            .collect::<Result<Vec<_>>>()?;
        Ok(SeqValues::new(values))
    }
}

/// Fully parenthesised rendering; parses back to the same tree.
impl fmt::Display for SeqExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SeqExpr::*;
        match self {
            Int(v) => write!(f, "{v}"),
            N => f.write_str("n"),
            Neg(x) => write!(f, "-({x})"),
            Add(a, b) => write!(f, "({a} + {b})"),
            Sub(a, b) => write!(f, "({a} - {b})"),
            Mul(a, b) => write!(f, "({a} * {b})"),
            Div(a, b) => write!(f, "({a} / {b})"),
            Pow(a, b) => write!(f, "({a})^({b})"),
            Mod(a, b) => write!(f, "mod({a}, {b})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn int(v: i64) -> Box<SeqExpr> {
        Box::new(SeqExpr::Int(v.into()))
    }

    #[test]
    fn parses_square() {
        assert_eq!(
            parse("n^2").unwrap(),
            SeqExpr::Pow(Box::new(SeqExpr::N), int(2))
        );
        assert_eq!(parse(" n ^ 2 ").unwrap(), parse("n^2").unwrap());
    }

    #[test]
    fn precedence_and_associativity() {
        // -n^2 is -(n^2)
        assert_eq!(
            parse("-n^2").unwrap(),
            SeqExpr::Neg(Box::new(SeqExpr::Pow(Box::new(SeqExpr::N), int(2))))
        );
        // 2^3^2 = 2^9
        assert_eq!(parse("2^3^2").unwrap().eval_at(1).unwrap(), r(512));
        // left associative subtraction and division
        assert_eq!(parse("10-3-2").unwrap().eval_at(1).unwrap(), r(5));
        assert_eq!(parse("12/3/2").unwrap().eval_at(1).unwrap(), r(2));
        assert_eq!(
            parse("2^-1").unwrap().eval_at(1).unwrap(),
            Rational::new(1, 2)
        );
        assert_eq!(parse("1+2*3").unwrap().eval_at(1).unwrap(), r(7));
    }

    #[test]
    fn parity_indicator() {
        let e = parse("(1-(-1)^n)/2").unwrap();
        assert_eq!(e.eval_at(4).unwrap(), r(0));
        assert_eq!(e.eval_at(5).unwrap(), r(1));
    }

    #[test]
    fn errors_carry_offsets() {
        let err = parse("n +").unwrap_err();
        assert_eq!(err.offset, 3);
        assert_eq!(parse("(n").unwrap_err().offset, 2);
        assert_eq!(parse("n n").unwrap_err().offset, 2);
        assert_eq!(parse("x").unwrap_err().offset, 0);
        assert_eq!(parse("n # 2").unwrap_err().offset, 2);
        assert_eq!(parse("").unwrap_err().offset, 0);
        assert_eq!(parse("1.5").unwrap_err().offset, 1);
    }

    #[test]
    fn evaluation_errors() {
        let e = parse("1/(n-2)").unwrap();
        assert_eq!(e.eval_at(2), Err(Error::DivisionByZero { n: 2 }));
        assert_eq!(e.eval_at(3).unwrap(), r(1));
        assert!(matches!(
            parse("2^(n/2)").unwrap().eval_at(3),
            Err(Error::NonIntegerExponent { n: 3, .. })
        ));
        assert_eq!(
            parse("(n-1)^-1").unwrap().eval_at(1),
            Err(Error::DivisionByZero { n: 1 })
        );
        assert_eq!(
            parse("1/(n-2)").unwrap().materialize(3),
            Err(Error::DivisionByZero { n: 2 })
        );
    }

    #[test]
    fn modulo() {
        let e = parse("mod(n, 3)").unwrap();
        assert_eq!(
            e.materialize(4).unwrap(),
            SeqValues::new(vec![r(1), r(2), r(0), r(1)])
        );
        assert_eq!(parse("mod(-n, 3)").unwrap().eval_at(1).unwrap(), r(2));
        assert_eq!(
            parse("mod(n, 0)").unwrap().eval_at(1),
            Err(Error::DivisionByZero { n: 1 })
        );
    }

    #[test]
    fn materialize_examples() {
        assert_eq!(
            parse("n").unwrap().materialize(3).unwrap(),
            SeqValues::new(vec![r(1), r(2), r(3)])
        );
        assert_eq!(
            parse("1").unwrap().materialize(2).unwrap(),
            SeqValues::new(vec![r(1), r(1)])
        );
        assert_eq!(
            parse("n^2").unwrap().materialize(3).unwrap(),
            SeqValues::new(vec![r(1), r(4), r(9)])
        );
    }
}
