//! Plain and LaTeX text for realizations and algebras. The plain format is
//! the one the catalog files use, so it parses back unchanged.

use num_traits::{One, Signed};

use crate::expr::{ExpPoly, Key, RatExpr, Rational, Symbol};
use crate::liealg::LieAlgebra;
use crate::shirokov::Realization;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Plain,
    Latex,
}

/// Join signed terms as `a + b - c`.
fn join_signed(terms: Vec<String>) -> String {
    let mut out = String::new();
    for (i, t) in terms.into_iter().enumerate() {
        if i == 0 {
            out.push_str(&t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&t);
        }
    }
    out
}

/// Join signed terms as `a+b-c`.
fn join_compact(terms: Vec<String>) -> String {
    let mut out = String::new();
    for (i, t) in terms.into_iter().enumerate() {
        if i > 0 && !t.starts_with('-') {
            out.push('+');
        }
        out.push_str(&t);
    }
    out
}

/// `c*name` with the conventions used in the catalog files.
fn scaled_plain(c: &RatExpr, name: &str) -> String {
    if c.is_one() {
        return name.to_string();
    }
    if (-c).is_one() {
        return format!("-{name}");
    }
    let single = c.as_poly().is_some_and(|p| p.len() == 1);
    if single {
        return format!("{c}*{name}");
    }
    let s = c.to_string();
    if s.starts_with('-') && c.is_poly() {
        format!("-({})*{name}", -c)
    } else {
        format!("({s})*{name}")
    }
}

/// Plain text of a vector field, e.g. `-x2*d1 + d3`.
pub fn field_plain(coeffs: &[RatExpr]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(a, c)| scaled_plain(c, &format!("d{}", a + 1)))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        join_signed(terms)
    }
}

/// Plain text of a linear combination of named basis elements.
pub fn combination_plain(coeffs: &[RatExpr], names: &[String]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .zip(names)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, n)| scaled_plain(c, n))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        join_signed(terms)
    }
}

fn latex_symbol(s: &Symbol) -> String {
    if let Some(k) = s.coord_index() {
        return if k < 10 { format!("x_{k}") } else { format!("x_{{{k}}}") };
    }
    match s.name() {
        "alpha" | "beta" | "gamma" | "delta" | "lambda" | "mu" | "rho" | "theta" | "phi" => format!("\\{}", s.name()),
        "eps" => "\\varepsilon".into(),
        "qt" => "\\tilde q".into(),
        "qh" => "\\hat q".into(),
        n => n.to_string(),
    }
}

fn latex_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.to_string()
    } else {
        format!("\\tfrac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

fn latex_key(k: &Key) -> String {
    let mut s = String::new();
    for (sym, e) in &k.mono {
        push_latex(&mut s, &latex_symbol(sym));
        if *e > 1 {
            s.push_str(&format!("^{e}"));
        }
    }
    if !k.exp.is_empty() {
        let terms: Vec<String> = k
            .exp
            .iter()
            .map(|(sym, c)| {
                let a = c.abs();
                let body = if a.is_one() { latex_symbol(sym) } else { format!("{}{}", latex_rational(&a), latex_symbol(sym)) };
                if c.is_negative() {
                    format!("-{body}")
                } else {
                    body
                }
            })
            .collect();
        s.push_str(&format!("e^{{{}}}", join_compact(terms)));
    }
    s
}

/// Append `piece`, separating a trailing control word from a following letter.
fn push_latex(s: &mut String, piece: &str) {
    let ends_in_command = s
        .rfind('\\')
        .is_some_and(|i| s[i + 1..].chars().all(|c| c.is_ascii_alphabetic()) && s.len() > i + 1);
    if ends_in_command && piece.starts_with(|c: char| c.is_ascii_alphabetic()) {
        s.push(' ');
    }
    s.push_str(piece);
}

/// LaTeX text of an exp-polynomial.
pub fn latex_poly(p: &ExpPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = p
        .terms()
        .rev()
        .map(|(k, c)| {
            let a = c.abs();
            let ks = latex_key(k);
            let body = if ks.is_empty() {
                latex_rational(&a)
            } else if a.is_one() {
                ks
            } else {
                format!("{}{}", latex_rational(&a), ks)
            };
            if c.is_negative() {
                format!("-{body}")
            } else {
                body
            }
        })
        .collect();
    join_compact(terms)
}

/// LaTeX text of a rational expression.
pub fn latex_expr(r: &RatExpr) -> String {
    match r.as_poly() {
        Some(p) => latex_poly(p),
        None => format!("\\frac{{{}}}{{{}}}", latex_poly(r.numer()), latex_poly(&r.denom())),
    }
}

fn scaled_latex(c: &RatExpr, name: &str) -> String {
    if c.is_one() {
        return name.to_string();
    }
    if (-c).is_one() {
        return format!("-{name}");
    }
    if c.as_poly().is_some_and(|p| p.len() == 1) {
        return format!("{}{name}", latex_expr(c));
    }
    if c.is_poly() && latex_expr(c).starts_with('-') {
        format!("-({}){name}", latex_expr(&-c))
    } else {
        format!("({}){name}", latex_expr(c))
    }
}

/// LaTeX text of a vector field, e.g. `-x_2\partial_1+\partial_3`.
pub fn field_latex(coeffs: &[RatExpr]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(a, c)| scaled_latex(c, &format!("\\partial_{}", a + 1)))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        join_compact(terms)
    }
}

fn latex_label(l: &str) -> String {
    let mut chars = l.chars();
    let head: String = chars.by_ref().take_while(|c| c.is_alphabetic()).collect();
    let rest: String = l[head.len()..].to_string();
    if rest.is_empty() {
        head
    } else {
        format!("{head}_{{{rest}}}")
    }
}

/// One `label = field` line per basis element.
pub fn realization_lines(r: &Realization, fmt: Format) -> Vec<String> {
    r.labels
        .iter()
        .zip(&r.images)
        .map(|(l, f)| match fmt {
            Format::Plain => format!("{l} = {}", field_plain(f)),
            Format::Latex => format!("{}={}", latex_label(l), field_latex(f)),
        })
        .collect()
}

/// Nonzero brackets of an algebra, one per line.
pub fn algebra_lines(l: &LieAlgebra, fmt: Format) -> Vec<String> {
    l.nonzero_brackets()
        .into_iter()
        .map(|(i, j, v)| match fmt {
            Format::Plain => format!("[{},{}] = {}", l.basis[i], l.basis[j], combination_plain(v, &l.basis)),
            Format::Latex => {
                let names: Vec<String> = l.basis.iter().map(|b| latex_label(b)).collect();
                let terms: Vec<String> = v
                    .iter()
                    .zip(&names)
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, n)| scaled_latex(c, n))
                    .collect();
                format!("[{},{}]={}", names[i], names[j], join_compact(terms))
            }
        })
        .collect()
}

/// Full algebra file text (parses back with `parse_algebra`).
pub fn algebra_plain(l: &LieAlgebra) -> String {
    let mut s = format!("name: {}\nbasis: {}\n", l.name, l.basis.join(", "));
    for p in &l.params {
        match &p.range {
            Some(r) => s.push_str(&format!("param: {} {r}\n", p.symbol)),
            None => s.push_str(&format!("param: {}\n", p.symbol)),
        }
    }
    for line in algebra_lines(l, Format::Plain) {
        s.push_str(&line);
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_rat;

    fn f(v: &[&str]) -> Vec<RatExpr> {
        v.iter().map(|s| parse_rat(s).unwrap()).collect()
    }

    #[test]
    fn plain_fields() {
        assert_eq!(field_plain(&f(&["-x2", "0", "1"])), "-x2*d1 + d3");
        assert_eq!(field_plain(&f(&["0", "0"])), "0");
        assert_eq!(field_plain(&f(&["-1/2*x3^2 - beta", "-x3"])), "-(1/2*x3^2 + beta)*d1 - x3*d2");
        assert_eq!(field_plain(&f(&["1/2*x2^2 - x3"])), "(1/2*x2^2 - x3)*d1");
        assert_eq!(field_plain(&f(&["-exp(3*x3)"])), "-exp(3*x3)*d1");
    }

    #[test]
    fn latex_fields() {
        assert_eq!(field_latex(&f(&["x2", "0"])), "x_2\\partial_1");
        assert_eq!(field_latex(&f(&["0", "exp(2*x2)", "1/2*alpha"])), "e^{2x_2}\\partial_2+\\tfrac{1}{2}\\alpha\\partial_3");
        assert_eq!(latex_label("J12"), "J_{12}");
        assert_eq!(field_latex(&f(&["alpha*q*x2"])), "x_2\\alpha q\\partial_1");
    }
}
