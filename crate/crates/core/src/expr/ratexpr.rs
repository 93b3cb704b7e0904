use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::exppoly::{ExpPoly, Key};
use super::symbol::Symbol;
use super::Rational;
use crate::error::{Error, Result};

/// Quotient of exp-polynomials. The denominator is kept as a product of
/// normalized factors (leading coefficient 1, no exponential in the leading
/// term, no monomial content); units and exact divisions are folded into
/// the numerator.
#[derive(Clone, Default)]
pub struct RatExpr {
    num: ExpPoly,
    den: Vec<(ExpPoly, u32)>,
}

/// Split `p` into a unit (coefficient times exponential), a monomial part
/// and a normalized remainder.
fn split_unit(p: &ExpPoly) -> (Rational, Key, Vec<(Symbol, u32)>, ExpPoly) {
    let (lk, lc) = p.leading().expect("nonzero");
    let lc = lc.clone();
    let unit_key = Key { mono: vec![], exp: lk.exp.clone() };
    let mono = p.monomial_gcd();
    let mk = Key { mono: mono.clone(), exp: unit_key.exp.clone() };
    let rest = p.exact_div(&ExpPoly::term(lc.clone(), mk)).expect("unit and monomial divide");
    (lc, unit_key, mono, rest)
}

impl RatExpr {
    pub fn zero() -> Self {
        RatExpr::default()
    }

    pub fn one() -> Self {
        RatExpr::from(ExpPoly::one())
    }

    pub fn int(n: i64) -> Self {
        RatExpr::from(ExpPoly::int(n))
    }

    pub fn constant(c: Rational) -> Self {
        RatExpr::from(ExpPoly::constant(c))
    }

    pub fn var(name: &str) -> Self {
        RatExpr::from(ExpPoly::var(name))
    }

    pub fn coord(i: usize) -> Self {
        RatExpr::from(ExpPoly::coord(i))
    }

    pub fn numer(&self) -> &ExpPoly {
        &self.num
    }

    pub fn denom_factors(&self) -> &[(ExpPoly, u32)] {
        &self.den
    }

    pub fn denom(&self) -> ExpPoly {
        let mut d = ExpPoly::one();
        for (f, k) in &self.den {
            d = &d * &f.pow(*k);
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_empty()
    }

    /// The numerator when the denominator is trivial.
    pub fn as_poly(&self) -> Option<&ExpPoly> {
        self.den.is_empty().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.as_poly().and_then(|p| p.as_constant())
    }

    fn insert_factor(den: &mut Vec<(ExpPoly, u32)>, g: ExpPoly, k: u32) {
        if k == 0 || g.is_one() {
            return;
        }
        for i in 0..den.len() {
            if den[i].0 == g {
                den[i].1 += k;
                return;
            }
            if g.len() > 1 {
                if let Some(h) = g.exact_div(&den[i].0) {
                    if h.as_constant().is_none() {
                        den[i].1 += k;
                        let h = normalize_factor(&h);
                        Self::insert_factor(den, h, k);
                        return;
                    }
                }
                if let Some(h) = den[i].0.exact_div(&g) {
                    if h.as_constant().is_none() {
                        let p = den[i].1;
                        den[i].0 = g;
                        den[i].1 = p + k;
                        let h = normalize_factor(&h);
                        Self::insert_factor(den, h, p);
                        return;
                    }
                }
            }
        }
        den.push((g, k));
    }

    /// Build `num / d` where `d` is an arbitrary nonzero exp-polynomial.
    pub fn from_parts(num: ExpPoly, d: &ExpPoly) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r = RatExpr { num, den: vec![] };
        r.divide_by_poly(d);
        r.reduce();
        Ok(r)
    }

    fn divide_by_poly(&mut self, d: &ExpPoly) {
        let (lc, unit, mono, rest) = split_unit(d);
        let inv_unit = ExpPoly::term(
            Rational::one() / lc,
            Key {
                mono: vec![],
                exp: unit.exp.iter().map(|(s, c)| (s.clone(), -c)).collect(),
            },
        );
        self.num = &self.num * &inv_unit;
        for (s, e) in mono {
            Self::insert_factor(&mut self.den, ExpPoly::symbol(s), e);
        }
        if !rest.is_one() {
            let rest = normalize_factor(&rest);
            Self::insert_factor(&mut self.den, rest, 1);
        }
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        for i in 0..self.den.len() {
            while self.den[i].1 > 0 {
                match self.num.exact_div(&self.den[i].0) {
                    Some(q) => {
                        self.num = q;
                        self.den[i].1 -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|(_, k)| *k > 0);
        self.den.sort_by(|a, b| {
            a.0.leading().map(|t| t.0).cmp(&b.0.leading().map(|t| t.0)).then(a.0.len().cmp(&b.0.len()))
        });
    }

    pub fn inv(&self) -> Result<RatExpr> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r = RatExpr { num: self.denom(), den: vec![] };
        r.divide_by_poly(&self.num);
        r.reduce();
        Ok(r)
    }

    pub fn pow(&self, n: u32) -> RatExpr {
        let mut acc = RatExpr::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> RatExpr {
        if c.is_zero() {
            return RatExpr::zero();
        }
        RatExpr { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        let mut s = self.num.symbols();
        for (f, _) in &self.den {
            s.extend(f.symbols());
        }
        s
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        self.num.contains(s) || self.den.iter().any(|(f, _)| f.contains(s))
    }

    /// Exact partial derivative (quotient rule).
    pub fn diff(&self, v: &Symbol) -> RatExpr {
        if self.den.is_empty() {
            return RatExpr::from(self.num.diff(v));
        }
        let d = self.denom();
        let top = &(&self.num.diff(v) * &d) - &(&self.num * &d.diff(v));
        let mut r = RatExpr { num: top, den: vec![] };
        for (f, k) in &self.den {
            Self::insert_factor(&mut r.den, f.clone(), 2 * k);
        }
        r.reduce();
        r
    }

    pub fn substitute(&self, bindings: &HashMap<Symbol, RatExpr>) -> Result<RatExpr> {
        let num = subst_poly(&self.num, bindings)?;
        let mut den = RatExpr::one();
        for (f, k) in &self.den {
            den = &den * &subst_poly(f, bindings)?.pow(*k);
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(&num * &den.inv()?)
    }

    pub fn substitute_one(&self, s: &Symbol, r: &RatExpr) -> Result<RatExpr> {
        let mut m = HashMap::new();
        m.insert(s.clone(), r.clone());
        self.substitute(&m)
    }

    pub fn eval_f64(&self, at: &HashMap<Symbol, f64>) -> Option<f64> {
        let mut d = 1.0;
        for (f, k) in &self.den {
            d *= f.eval_f64(at)?.powi(*k as i32);
        }
        Some(self.num.eval_f64(at)? / d)
    }

    pub fn eval_rational(&self, at: &HashMap<Symbol, Rational>) -> Option<Rational> {
        let d = self.denom().eval_rational(at)?;
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_rational(at)? / d)
    }

    /// Whether the expression stays finite when `s` is set to zero, i.e.
    /// no denominator factor vanishes identically at `s = 0`.
    pub fn finite_at_zero(&self, s: &Symbol) -> bool {
        let z = ExpPoly::zero();
        self.den.iter().all(|(f, _)| match f.substitute_one(s, &z) {
            Ok(v) => !v.is_zero(),
            Err(_) => true,
        })
    }
}

fn normalize_factor(p: &ExpPoly) -> ExpPoly {
    let (lk, lc) = p.leading().unwrap();
    let unit = Key { mono: vec![], exp: lk.exp.iter().map(|(s, c)| (s.clone(), -c)).collect() };
    p.mul_term(&(Rational::one() / lc), &unit)
}

fn subst_poly(p: &ExpPoly, bindings: &HashMap<Symbol, RatExpr>) -> Result<RatExpr> {
    if bindings.values().all(|r| r.is_poly()) {
        let m: HashMap<Symbol, ExpPoly> =
            bindings.iter().map(|(s, r)| (s.clone(), r.num.clone())).collect();
        return Ok(RatExpr::from(p.substitute(&m)?));
    }
    let mut out = RatExpr::zero();
    for (k, c) in p.terms() {
        let mut t = RatExpr::constant(c.clone());
        let mut form = Vec::new();
        for (s, e) in &k.mono {
            match bindings.get(s) {
                Some(r) => t = &t * &r.pow(*e),
                None => t = &t * &RatExpr::from(ExpPoly::symbol(s.clone()).pow(*e)),
            }
        }
        for (s, a) in &k.exp {
            match bindings.get(s) {
                Some(r) => {
                    let lf = r.as_poly().and_then(|p| p.as_linear_form()).ok_or_else(|| {
                        Error::Unsupported(format!("substituting {s} -> {r} inside an exponential"))
                    })?;
                    form.extend(lf.into_iter().map(|(t, b)| (t, a * b)));
                }
                None => form.push((s.clone(), a.clone())),
            }
        }
        t = &t * &RatExpr::from(ExpPoly::exp_of(&form));
        out = &out + &t;
    }
    Ok(out)
}

impl From<ExpPoly> for RatExpr {
    fn from(p: ExpPoly) -> Self {
        RatExpr { num: p, den: vec![] }
    }
}

impl From<i64> for RatExpr {
    fn from(n: i64) -> Self {
        RatExpr::int(n)
    }
}

impl From<Rational> for RatExpr {
    fn from(c: Rational) -> Self {
        RatExpr::constant(c)
    }
}

impl PartialEq for RatExpr {
    fn eq(&self, other: &Self) -> bool {
        if self.den.is_empty() && other.den.is_empty() {
            return self.num == other.num;
        }
        (self - other).is_zero()
    }
}

impl Eq for RatExpr {}

fn combine(a: &RatExpr, b: &RatExpr, sub: bool) -> RatExpr {
    if a.den.is_empty() && b.den.is_empty() {
        let num = if sub { &a.num - &b.num } else { &a.num + &b.num };
        return RatExpr { num, den: vec![] };
    }
    let mut den: Vec<(ExpPoly, u32)> = a.den.clone();
    for (f, k) in &b.den {
        match den.iter_mut().find(|(g, _)| g == f) {
            Some(e) => e.1 = e.1.max(*k),
            None => den.push((f.clone(), *k)),
        }
    }
    let lift = |r: &RatExpr| {
        let mut n = r.num.clone();
        for (f, k) in &den {
            let have = r.den.iter().find(|(g, _)| g == f).map(|(_, j)| *j).unwrap_or(0);
            if *k > have {
                n = &n * &f.pow(k - have);
            }
        }
        n
    };
    let na = lift(a);
    let nb = lift(b);
    let num = if sub { &na - &nb } else { &na + &nb };
    let mut r = RatExpr { num, den };
    r.reduce();
    r
}

impl Add for &RatExpr {
    type Output = RatExpr;
    fn add(self, rhs: &RatExpr) -> RatExpr {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        combine(self, rhs, false)
    }
}

impl Sub for &RatExpr {
    type Output = RatExpr;
    fn sub(self, rhs: &RatExpr) -> RatExpr {
        if rhs.is_zero() {
            return self.clone();
        }
        combine(self, rhs, true)
    }
}

impl Mul for &RatExpr {
    type Output = RatExpr;
    fn mul(self, rhs: &RatExpr) -> RatExpr {
        if self.is_zero() || rhs.is_zero() {
            return RatExpr::zero();
        }
        let num = &self.num * &rhs.num;
        if self.den.is_empty() && rhs.den.is_empty() {
            return RatExpr { num, den: vec![] };
        }
        let mut den = self.den.clone();
        for (f, k) in &rhs.den {
            RatExpr::insert_factor(&mut den, f.clone(), *k);
        }
        let mut r = RatExpr { num, den };
        r.reduce();
        r
    }
}

impl Div for &RatExpr {
    type Output = RatExpr;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &RatExpr) -> RatExpr {
        self * &rhs.inv().expect("division by zero expression")
    }
}

impl Neg for &RatExpr {
    type Output = RatExpr;
    fn neg(self) -> RatExpr {
        RatExpr { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatExpr {
            type Output = RatExpr;
            fn $m(self, rhs: RatExpr) -> RatExpr {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RatExpr {
    type Output = RatExpr;
    fn neg(self) -> RatExpr {
        -&self
    }
}

impl fmt::Display for RatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        if self.num.len() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        f.write_str("/")?;
        let d = self.denom();
        if d.len() > 1 || d.leading().is_some_and(|(k, _)| k.mono.len() + k.exp.len() > 1 || k.total_degree() > 1) {
            write!(f, "({d})")
        } else {
            write!(f, "{d}")
        }
    }
}

impl fmt::Debug for RatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::q;

    fn v(s: &str) -> RatExpr {
        RatExpr::var(s)
    }

    #[test]
    fn fractions_cancel() {
        let a = v("alpha");
        let b = v("beta");
        let r = &(&a * &b) / &a;
        assert!(r.is_poly());
        assert_eq!(r, b);
        let one_minus_b = &RatExpr::one() - &b;
        let x = &(&b - &RatExpr::one()) / &one_minus_b;
        assert_eq!(x.as_constant(), Some(q(-1, 1)));
    }

    #[test]
    fn sums_over_common_denominators() {
        let a = v("alpha");
        let s = &(&RatExpr::one() / &a) + &(&RatExpr::one() / &a);
        assert_eq!(s, &RatExpr::int(2) / &a);
        let t = &(&a / &(&a + &RatExpr::one())) + &(&RatExpr::one() / &(&a + &RatExpr::one()));
        assert!(t.is_one());
    }

    #[test]
    fn exponential_denominators_fold() {
        let e = RatExpr::from(ExpPoly::exp_of(&[(Symbol::coord(1), q(1, 1))]));
        let r = &RatExpr::one() / &e;
        assert!(r.is_poly());
        assert_eq!(r.to_string(), "exp(-x1)");
    }

    #[test]
    fn display_of_quotient() {
        let b = v("beta");
        let r = &(&RatExpr::one() + &b) / &(&RatExpr::one() - &b);
        assert_eq!(r.to_string(), "(-beta - 1)/(beta - 1)");
        assert_eq!((&RatExpr::one() / &v("alpha")).to_string(), "1/alpha");
    }
}
