//! Expression text syntax: integers, `a/b`, symbols `[A-Za-z][A-Za-z0-9_]*`,
//! `+ - * / ^` (nonnegative integer powers), parentheses and
//! `exp(<linear form>)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::exppoly::ExpPoly;
use super::ratexpr::RatExpr;
use super::symbol::Symbol;
use super::Rational;
use crate::error::{Error, Result};

/// Raw expression tree as read from text.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigInt),
    Sym(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Exp(Box<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < b.len() {
        let c = b[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((st, Tok::Num(s[st..i].parse().unwrap())));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((st, Tok::Ident(s[st..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Parse { col: i + 1, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0 + 1).unwrap_or(self.end + 1)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { col: self.col(), msg: msg.to_string() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            match self.peek().cloned() {
                Some(Tok::Num(n)) if !neg => {
                    self.pos += 1;
                    let e = n.to_u32().ok_or(Error::Parse {
                        col: self.col(),
                        msg: "exponent too large".into(),
                    })?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => self.err("expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Ident(id)) => {
                self.pos += 1;
                if id == "exp" {
                    if !self.eat('(') {
                        return self.err("expected `(` after exp");
                    }
                    let a = self.expr()?;
                    if !self.eat(')') {
                        return self.err("expected `)`");
                    }
                    Ok(Expr::Exp(Box::new(a)))
                } else {
                    Ok(Expr::Sym(id))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(_) => self.err("unexpected token"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse expression text into a raw tree.
pub fn parse_expr(s: &str) -> Result<Expr> {
    let toks = lex(s)?;
    let mut p = Parser { toks, pos: 0, end: s.len() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

impl Expr {
    /// Canonical exact value; division is allowed by any nonzero expression.
    pub fn to_rat(&self) -> Result<RatExpr> {
        Ok(match self {
            Expr::Num(n) => RatExpr::constant(Rational::from_integer(n.clone())),
            Expr::Sym(s) => RatExpr::var(s),
            Expr::Neg(a) => -a.to_rat()?,
            Expr::Add(a, b) => a.to_rat()? + b.to_rat()?,
            Expr::Sub(a, b) => a.to_rat()? - b.to_rat()?,
            Expr::Mul(a, b) => a.to_rat()? * b.to_rat()?,
            Expr::Div(a, b) => {
                let d = b.to_rat()?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                a.to_rat()? * d.inv()?
            }
            Expr::Pow(a, e) => a.to_rat()?.pow(*e),
            Expr::Exp(a) => {
                let arg = a.to_rat()?;
                let form = arg
                    .as_poly()
                    .and_then(|p| p.as_linear_form())
                    .ok_or_else(|| Error::Unsupported(format!("exp({arg}) is not exp of a linear form")))?;
                RatExpr::from(ExpPoly::exp_of(&form))
            }
        })
    }

    /// Numeric evaluation of the raw tree.
    pub fn eval_f64(&self, at: &HashMap<Symbol, f64>) -> Option<f64> {
        Some(match self {
            Expr::Num(n) => n.to_f64()?,
            Expr::Sym(s) => *at.get(&Symbol::new(s))?,
            Expr::Neg(a) => -a.eval_f64(at)?,
            Expr::Add(a, b) => a.eval_f64(at)? + b.eval_f64(at)?,
            Expr::Sub(a, b) => a.eval_f64(at)? - b.eval_f64(at)?,
            Expr::Mul(a, b) => a.eval_f64(at)? * b.eval_f64(at)?,
            Expr::Div(a, b) => a.eval_f64(at)? / b.eval_f64(at)?,
            Expr::Pow(a, e) => a.eval_f64(at)?.powi(*e as i32),
            Expr::Exp(a) => a.eval_f64(at)?.exp(),
        })
    }
}

/// Canonicalize a raw tree into an exp-polynomial. Division is accepted only
/// by nonzero rational constants.
pub fn canonicalize(e: &Expr) -> Result<ExpPoly> {
    let r = e.to_rat()?;
    r.as_poly()
        .cloned()
        .ok_or_else(|| Error::Unsupported(format!("{r} is not an exp-polynomial")))
}

/// Parse text straight to a canonical rational expression.
pub fn parse_rat(s: &str) -> Result<RatExpr> {
    parse_expr(s)?.to_rat()
}

/// Parse text straight to a canonical exp-polynomial.
pub fn parse_poly(s: &str) -> Result<ExpPoly> {
    canonicalize(&parse_expr(s)?)
}

/// Split a linear combination `Σ c_k * name_k` into coefficients, one per
/// name in `names`. Every other symbol is treated as part of a coefficient.
pub fn parse_linear_combination(s: &str, names: &[String]) -> Result<Vec<RatExpr>> {
    let r = parse_rat(s)?;
    linear_coefficients(&r, names)
}

pub fn linear_coefficients(r: &RatExpr, names: &[String]) -> Result<Vec<RatExpr>> {
    let syms: Vec<Symbol> = names.iter().map(|n| Symbol::new(n)).collect();
    for (f, _) in r.denom_factors() {
        if syms.iter().any(|s| f.contains(s)) {
            return Err(Error::Input(format!("`{r}` is not linear in {}", names.join(", "))));
        }
    }
    let den = RatExpr::from(r.denom());
    let mut rest = r.numer().clone();
    let mut out = Vec::with_capacity(names.len());
    for s in &syms {
        let cs = rest
            .coefficients_in(s)
            .ok_or_else(|| Error::Input(format!("`{s}` appears inside an exponential")))?;
        if cs.keys().any(|d| *d > 1) {
            return Err(Error::Input(format!("`{r}` is not linear in {s}")));
        }
        let c1 = cs.get(&1).cloned().unwrap_or_default();
        if syms.iter().any(|t| c1.contains(t)) {
            return Err(Error::Input(format!("`{r}` is not linear in {}", names.join(", "))));
        }
        rest = cs.get(&0).cloned().unwrap_or_default();
        out.push(&RatExpr::from(c1) / &den);
    }
    if !rest.is_zero() {
        return Err(Error::Input(format!(
            "`{r}` has a part that is not a combination of {}",
            names.join(", ")
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::q;

    #[test]
    fn parses_and_canonicalizes() {
        assert_eq!(parse_poly("2*x1*x1").unwrap().to_string(), "2*x1^2");
        assert!(parse_poly("(x1+x2)*exp(x1) - x2*exp(x1) - x1*exp(x1)").unwrap().is_zero());
        assert_eq!(parse_poly("exp(x1)*exp(2*x1)").unwrap().to_string(), "exp(3*x1)");
        assert_eq!(parse_poly("-(1/2*x3^2 + beta)").unwrap().to_string(), "-1/2*x3^2 - beta");
    }

    #[test]
    fn rejects_nonlinear_exponent() {
        assert!(matches!(parse_poly("exp(x1^2)"), Err(Error::Unsupported(_))));
        assert!(matches!(parse_poly("exp(x1*x2)"), Err(Error::Unsupported(_))));
        assert!(matches!(parse_poly("x1/x2"), Err(Error::Unsupported(_))));
        assert!(parse_poly("x1 +").is_err());
        assert!(parse_poly("x1 $ 2").is_err());
    }

    #[test]
    fn linear_combination_split() {
        let names: Vec<String> = ["P", "T", "G"].iter().map(|s| s.to_string()).collect();
        let c = parse_linear_combination("T + alpha*G", &names).unwrap();
        assert!(c[0].is_zero());
        assert!(c[1].is_one());
        assert_eq!(c[2], RatExpr::var("alpha"));
        let c = parse_linear_combination("-x2*d1 + 1/2*d3", &["d1".into(), "d2".into(), "d3".into()]).unwrap();
        assert_eq!(c[0].to_string(), "-x2");
        assert_eq!(c[2].as_constant(), Some(q(1, 2)));
        assert!(parse_linear_combination("P*T", &names).is_err());
        assert!(parse_linear_combination("P + 1", &names).is_err());
    }

    #[test]
    fn rational_division() {
        let r = parse_rat("(1+beta)/(1-beta)*q").unwrap();
        let s = parse_rat("-q*(beta+1)/(beta-1)").unwrap();
        assert_eq!(r, s);
    }
}
