use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::symbol::Symbol;
use super::Rational;
use crate::error::{Error, Result};

/// Exponent part of a term: a monomial with nonnegative powers together with
/// the linear form inside `exp(...)`. Both lists are sorted by symbol and
/// never hold zero entries.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Key {
    pub mono: Vec<(Symbol, u32)>,
    pub exp: Vec<(Symbol, Rational)>,
}

/// Lexicographic comparison of two sparse vectors as if they were dense
/// vectors over the global symbol order.
fn cmp_sparse<V: Ord + Zero>(a: &[(Symbol, V)], b: &[(Symbol, V)]) -> Ordering {
    let zero = V::zero();
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.get(i), b.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some((_, v)), None) => return v.cmp(&zero),
            (None, Some((_, w))) => return zero.cmp(w),
            (Some((s, v)), Some((t, w))) => match s.cmp(t) {
                Ordering::Less => return v.cmp(&zero),
                Ordering::Greater => return zero.cmp(w),
                Ordering::Equal => {
                    if v != w {
                        return v.cmp(w);
                    }
                    i += 1;
                    j += 1;
                }
            },
        }
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_sparse(&self.mono, &other.mono).then_with(|| cmp_sparse(&self.exp, &other.exp))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn merge<V: Clone + Zero>(
    a: &[(Symbol, V)],
    b: &[(Symbol, V)],
    f: impl Fn(&V, &V) -> V,
) -> Vec<(Symbol, V)> {
    let zero = V::zero();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (s, v) = match (a.get(i), b.get(j)) {
            (Some((s, v)), Some((t, w))) => match s.cmp(t) {
                Ordering::Less => {
                    i += 1;
                    (s.clone(), f(v, &zero))
                }
                Ordering::Greater => {
                    j += 1;
                    (t.clone(), f(&zero, w))
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                    (s.clone(), f(v, w))
                }
            },
            (Some((s, v)), None) => {
                i += 1;
                (s.clone(), f(v, &zero))
            }
            (None, Some((t, w))) => {
                j += 1;
                (t.clone(), f(&zero, w))
            }
            (None, None) => unreachable!(),
        };
        if !v.is_zero() {
            out.push((s, v));
        }
    }
    out
}

impl Key {
    pub fn one() -> Self {
        Key::default()
    }

    pub fn is_one(&self) -> bool {
        self.mono.is_empty() && self.exp.is_empty()
    }

    pub fn mul(&self, other: &Key) -> Key {
        Key {
            mono: merge(&self.mono, &other.mono, |a, b| a + b),
            exp: merge(&self.exp, &other.exp, |a, b| a + b),
        }
    }

    /// `self / other` when the monomial part divides.
    pub fn div(&self, other: &Key) -> Option<Key> {
        let mut mono = Vec::with_capacity(self.mono.len());
        let mut j = 0;
        for (s, e) in &self.mono {
            if j < other.mono.len() && other.mono[j].0 < *s {
                return None;
            }
            if j < other.mono.len() && other.mono[j].0 == *s {
                let f = other.mono[j].1;
                j += 1;
                if f > *e {
                    return None;
                }
                if f < *e {
                    mono.push((s.clone(), e - f));
                }
            } else {
                mono.push((s.clone(), *e));
            }
        }
        if j < other.mono.len() {
            return None;
        }
        Some(Key {
            mono,
            exp: merge(&self.exp, &other.exp, |a, b| a - b),
        })
    }

    pub fn degree_in(&self, s: &Symbol) -> u32 {
        self.mono.iter().find(|(t, _)| t == s).map(|(_, e)| *e).unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.mono.iter().map(|(_, e)| *e).sum()
    }
}

/// Canonical exact expression: a finite sum of rational coefficients times
/// monomials times exponentials of rational linear forms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExpPoly {
    terms: BTreeMap<Key, Rational>,
}

fn add_term(map: &mut BTreeMap<Key, Rational>, k: Key, c: Rational) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(k) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl ExpPoly {
    pub fn zero() -> Self {
        ExpPoly::default()
    }

    pub fn one() -> Self {
        ExpPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        ExpPoly::term(c, Key::one())
    }

    pub fn int(n: i64) -> Self {
        ExpPoly::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn term(c: Rational, k: Key) -> Self {
        let mut terms = BTreeMap::new();
        add_term(&mut terms, k, c);
        ExpPoly { terms }
    }

    pub fn symbol(s: Symbol) -> Self {
        ExpPoly::term(Rational::one(), Key { mono: vec![(s, 1)], exp: vec![] })
    }

    pub fn var(name: &str) -> Self {
        ExpPoly::symbol(Symbol::new(name))
    }

    pub fn coord(i: usize) -> Self {
        ExpPoly::symbol(Symbol::coord(i))
    }

    /// `exp(form)` for a linear form given as (symbol, coefficient) pairs.
    pub fn exp_of(form: &[(Symbol, Rational)]) -> Self {
        let mut f: BTreeMap<Symbol, Rational> = BTreeMap::new();
        for (s, c) in form {
            *f.entry(s.clone()).or_insert_with(Rational::zero) += c;
        }
        let exp = f.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        ExpPoly::term(Rational::one(), Key { mono: vec![], exp })
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Key, Rational)>) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in it {
            add_term(&mut terms, k, c);
        }
        ExpPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Key, &Rational)> {
        self.terms.iter()
    }

    /// The value when the expression is a rational constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (k, c) = self.terms.iter().next().unwrap();
                k.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// The single term, if there is exactly one.
    pub fn as_single_term(&self) -> Option<(&Key, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<(&Key, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn trailing(&self) -> Option<(&Key, &Rational)> {
        self.terms.iter().next()
    }

    pub fn scale(&self, c: &Rational) -> ExpPoly {
        if c.is_zero() {
            return ExpPoly::zero();
        }
        ExpPoly {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn mul_term(&self, c: &Rational, key: &Key) -> ExpPoly {
        if c.is_zero() {
            return ExpPoly::zero();
        }
        ExpPoly {
            terms: self.terms.iter().map(|(k, v)| (k.mul(key), v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> ExpPoly {
        let mut acc = ExpPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// All symbols appearing in monomials or exponentials.
    pub fn symbols(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        for k in self.terms.keys() {
            out.extend(k.mono.iter().map(|(s, _)| s.clone()));
            out.extend(k.exp.iter().map(|(s, _)| s.clone()));
        }
        out
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        self.terms
            .keys()
            .any(|k| k.mono.iter().any(|(t, _)| t == s) || k.exp.iter().any(|(t, _)| t == s))
    }

    pub fn has_exp(&self) -> bool {
        self.terms.keys().any(|k| !k.exp.is_empty())
    }

    pub fn degree_in(&self, s: &Symbol) -> u32 {
        self.terms.keys().map(|k| k.degree_in(s)).max().unwrap_or(0)
    }

    /// Exact partial derivative.
    pub fn diff(&self, v: &Symbol) -> ExpPoly {
        let mut out = BTreeMap::new();
        for (k, c) in &self.terms {
            if let Some((_, a)) = k.exp.iter().find(|(s, _)| s == v) {
                add_term(&mut out, k.clone(), c * a);
            }
            if let Some(pos) = k.mono.iter().position(|(s, _)| s == v) {
                let e = k.mono[pos].1;
                let mut nk = k.clone();
                if e == 1 {
                    nk.mono.remove(pos);
                } else {
                    nk.mono[pos].1 = e - 1;
                }
                add_term(&mut out, nk, c * Rational::from_integer(BigInt::from(e)));
            }
        }
        ExpPoly { terms: out }
    }

    /// Simultaneous substitution. Replacements of symbols occurring inside
    /// exponentials must be homogeneous linear forms with rational
    /// coefficients.
    pub fn substitute(&self, bindings: &HashMap<Symbol, ExpPoly>) -> Result<ExpPoly> {
        if bindings.is_empty() {
            return Ok(self.clone());
        }
        let mut linear: HashMap<&Symbol, Vec<(Symbol, Rational)>> = HashMap::new();
        let mut pow_cache: HashMap<(Symbol, u32), ExpPoly> = HashMap::new();
        let mut out = ExpPoly::zero();
        for (k, c) in &self.terms {
            let mut kept = Key::one();
            let mut factor = ExpPoly::one();
            for (s, e) in &k.mono {
                match bindings.get(s) {
                    Some(r) => {
                        let p = pow_cache
                            .entry((s.clone(), *e))
                            .or_insert_with(|| r.pow(*e))
                            .clone();
                        factor = &factor * &p;
                    }
                    None => kept.mono.push((s.clone(), *e)),
                }
            }
            let mut form: Vec<(Symbol, Rational)> = Vec::new();
            for (s, a) in &k.exp {
                match bindings.get(s) {
                    Some(r) => {
                        if !linear.contains_key(s) {
                            let lf = r.as_linear_form().ok_or_else(|| {
                                Error::Unsupported(format!(
                                    "substituting {s} -> {r} inside an exponential"
                                ))
                            })?;
                            linear.insert(s, lf);
                        }
                        for (t, b) in &linear[s] {
                            form.push((t.clone(), a * b));
                        }
                    }
                    None => form.push((s.clone(), a.clone())),
                }
            }
            let ex = ExpPoly::exp_of(&form);
            let t = ExpPoly::term(c.clone(), kept);
            out = &out + &(&(&t * &factor) * &ex);
        }
        Ok(out)
    }

    pub fn substitute_one(&self, s: &Symbol, r: &ExpPoly) -> Result<ExpPoly> {
        let mut m = HashMap::new();
        m.insert(s.clone(), r.clone());
        self.substitute(&m)
    }

    /// The expression as a homogeneous linear form `Σ c_s s`, if it is one.
    pub fn as_linear_form(&self) -> Option<Vec<(Symbol, Rational)>> {
        let mut out = Vec::new();
        for (k, c) in &self.terms {
            if !k.exp.is_empty() || k.mono.len() != 1 || k.mono[0].1 != 1 {
                return None;
            }
            out.push((k.mono[0].0.clone(), c.clone()));
        }
        Some(out)
    }

    /// Coefficients with respect to powers of `s`: `self = Σ_k c_k s^k`.
    /// Fails if `s` occurs inside an exponential.
    pub fn coefficients_in(&self, s: &Symbol) -> Option<BTreeMap<u32, ExpPoly>> {
        let mut out: BTreeMap<u32, BTreeMap<Key, Rational>> = BTreeMap::new();
        for (k, c) in &self.terms {
            if k.exp.iter().any(|(t, _)| t == s) {
                return None;
            }
            let d = k.degree_in(s);
            let mut nk = k.clone();
            nk.mono.retain(|(t, _)| t != s);
            add_term(out.entry(d).or_default(), nk, c.clone());
        }
        Some(out.into_iter().map(|(d, t)| (d, ExpPoly { terms: t })).collect())
    }

    /// Split into parts that are independent of the given symbols: the
    /// result maps each distinct monomial/exponential in those symbols to
    /// its coefficient expression.
    pub fn split_by(&self, syms: &BTreeSet<Symbol>) -> BTreeMap<Key, ExpPoly> {
        let mut out: BTreeMap<Key, BTreeMap<Key, Rational>> = BTreeMap::new();
        for (k, c) in &self.terms {
            let outer = Key {
                mono: k.mono.iter().filter(|(s, _)| syms.contains(s)).cloned().collect(),
                exp: k.exp.iter().filter(|(s, _)| syms.contains(s)).cloned().collect(),
            };
            let inner = Key {
                mono: k.mono.iter().filter(|(s, _)| !syms.contains(s)).cloned().collect(),
                exp: k.exp.iter().filter(|(s, _)| !syms.contains(s)).cloned().collect(),
            };
            add_term(out.entry(outer).or_default(), inner, c.clone());
        }
        out.into_iter().map(|(k, t)| (k, ExpPoly { terms: t })).collect()
    }

    /// Exact division. Returns `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &ExpPoly) -> Option<ExpPoly> {
        let (lk, lc) = d.leading()?;
        if self.is_zero() {
            return Some(ExpPoly::zero());
        }
        if d.len() == 1 {
            let inv = Rational::one() / lc;
            let mut terms = BTreeMap::new();
            for (k, c) in &self.terms {
                terms.insert(k.div(lk)?, c * &inv);
            }
            return Some(ExpPoly { terms });
        }
        let (tk, _) = d.trailing().unwrap();
        let floor = self.trailing().unwrap().0.clone();
        let mut r = self.clone();
        let mut q = BTreeMap::new();
        let limit = 64 + 8 * (self.len() + d.len()) * d.len().max(4);
        for _ in 0..limit {
            let Some((rk, rc)) = r.leading() else {
                return Some(ExpPoly { terms: q });
            };
            let qk = rk.div(lk)?;
            if qk.mul(tk) < floor {
                return None;
            }
            let qc = rc / lc;
            r = &r - &d.mul_term(&qc, &qk);
            add_term(&mut q, qk, qc);
        }
        None
    }

    /// Largest monomial dividing every term (exponential parts ignored).
    pub fn monomial_gcd(&self) -> Vec<(Symbol, u32)> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return vec![] };
        let mut g: BTreeMap<Symbol, u32> = first.mono.iter().cloned().collect();
        for k in it {
            let m: BTreeMap<&Symbol, u32> = k.mono.iter().map(|(s, e)| (s, *e)).collect();
            g.retain(|s, e| match m.get(s) {
                Some(f) => {
                    *e = (*e).min(*f);
                    true
                }
                None => false,
            });
        }
        g.into_iter().collect()
    }

    /// Numeric evaluation.
    pub fn eval_f64(&self, at: &HashMap<Symbol, f64>) -> Option<f64> {
        let mut acc = 0.0;
        for (k, c) in &self.terms {
            let mut v = c.to_f64()?;
            for (s, e) in &k.mono {
                v *= at.get(s)?.powi(*e as i32);
            }
            let mut arg = 0.0;
            for (s, a) in &k.exp {
                arg += a.to_f64()? * at.get(s)?;
            }
            acc += v * arg.exp();
        }
        Some(acc)
    }

    /// Exact evaluation at rational points; exponentials must vanish.
    pub fn eval_rational(&self, at: &HashMap<Symbol, Rational>) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (k, c) in &self.terms {
            if !k.exp.is_empty() {
                return None;
            }
            let mut v = c.clone();
            for (s, e) in &k.mono {
                v *= num_traits::pow(at.get(s)?.clone(), *e as usize);
            }
            acc += v;
        }
        Some(acc)
    }

    /// Rational number whose product with `self` has coprime integer
    /// coefficients and a positive leading coefficient.
    pub fn content(&self) -> Rational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Rational::one();
        }
        let mut r = Rational::new(num, den);
        if self.leading().unwrap().1.is_negative() {
            r = -r;
        }
        r
    }
}

impl Add for &ExpPoly {
    type Output = ExpPoly;
    fn add(self, rhs: &ExpPoly) -> ExpPoly {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut terms = big.terms.clone();
        for (k, c) in &small.terms {
            add_term(&mut terms, k.clone(), c.clone());
        }
        ExpPoly { terms }
    }
}

impl Sub for &ExpPoly {
    type Output = ExpPoly;
    fn sub(self, rhs: &ExpPoly) -> ExpPoly {
        let mut terms = self.terms.clone();
        for (k, c) in &rhs.terms {
            add_term(&mut terms, k.clone(), -c);
        }
        ExpPoly { terms }
    }
}

impl Mul for &ExpPoly {
    type Output = ExpPoly;
    fn mul(self, rhs: &ExpPoly) -> ExpPoly {
        let mut terms = BTreeMap::new();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &rhs.terms {
                add_term(&mut terms, k1.mul(k2), c1 * c2);
            }
        }
        ExpPoly { terms }
    }
}

impl Neg for &ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        ExpPoly {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ExpPoly {
            type Output = ExpPoly;
            fn $m(self, rhs: ExpPoly) -> ExpPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        -&self
    }
}

pub(crate) fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Text of a linear form such as `2*x1 - x3`.
pub(crate) fn fmt_linear_form(form: &[(Symbol, Rational)]) -> String {
    let mut s = String::new();
    for (i, (sym, c)) in form.iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if !a.is_one() {
            s.push_str(&fmt_rational(&a));
            s.push('*');
        }
        s.push_str(sym.name());
    }
    s
}

/// Text of a key without coefficient; empty for the unit key.
pub(crate) fn fmt_key(k: &Key) -> String {
    let mut parts: Vec<String> = k
        .mono
        .iter()
        .map(|(s, e)| if *e == 1 { s.to_string() } else { format!("{s}^{e}") })
        .collect();
    if !k.exp.is_empty() {
        parts.push(format!("exp({})", fmt_linear_form(&k.exp)));
    }
    parts.join("*")
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let ks = fmt_key(k);
            if ks.is_empty() {
                f.write_str(&fmt_rational(&a))?;
            } else if a.is_one() {
                f.write_str(&ks)?;
            } else {
                write!(f, "{}*{}", fmt_rational(&a), ks)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for ExpPoly {
    fn from(n: i64) -> Self {
        ExpPoly::int(n)
    }
}

impl From<Rational> for ExpPoly {
    fn from(c: Rational) -> Self {
        ExpPoly::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::q;

    fn x(i: usize) -> ExpPoly {
        ExpPoly::coord(i)
    }

    #[test]
    fn cancellation_to_zero() {
        let e1 = ExpPoly::exp_of(&[(Symbol::coord(1), q(1, 1))]);
        let a = &(&x(1) + &x(2)) * &e1;
        let r = &(&a - &(&x(2) * &e1)) - &(&x(1) * &e1);
        assert!(r.is_zero());
    }

    #[test]
    fn exponentials_multiply() {
        let a = ExpPoly::exp_of(&[(Symbol::coord(1), q(1, 1))]);
        let b = ExpPoly::exp_of(&[(Symbol::coord(1), q(2, 1))]);
        assert_eq!((&a * &b).to_string(), "exp(3*x1)");
    }

    #[test]
    fn derivative_of_x_squared_exp() {
        let e2 = ExpPoly::exp_of(&[(Symbol::coord(1), q(2, 1))]);
        let f = &x(1).pow(2) * &e2;
        let d = f.diff(&Symbol::coord(1));
        let expect = &(&x(1).scale(&q(2, 1)) + &x(1).pow(2).scale(&q(2, 1))) * &e2;
        assert_eq!(d, expect);
        assert!((&x(1) * &ExpPoly::exp_of(&[(Symbol::coord(1), q(1, 1))]))
            .diff(&Symbol::coord(2))
            .is_zero());
    }

    #[test]
    fn exact_division() {
        let a = &x(1) + &ExpPoly::var("alpha");
        let b = &x(2) - &ExpPoly::int(1);
        let p = &a * &b;
        assert_eq!(p.exact_div(&a), Some(b.clone()));
        assert_eq!(p.exact_div(&b), Some(a.clone()));
        assert_eq!(a.exact_div(&b), None);
        let one_minus_e = &ExpPoly::one() - &ExpPoly::exp_of(&[(Symbol::coord(1), q(1, 1))]);
        assert_eq!(ExpPoly::one().exact_div(&one_minus_e), None);
    }

    #[test]
    fn substitution_into_exponential() {
        let e = ExpPoly::exp_of(&[(Symbol::coord(1), q(1, 1))]);
        let r = e.substitute_one(&Symbol::coord(1), &(&x(1) + &x(2))).unwrap();
        let expect = &e * &ExpPoly::exp_of(&[(Symbol::coord(2), q(1, 1))]);
        assert_eq!(r, expect);
        assert!(e.substitute_one(&Symbol::coord(1), &x(2).pow(2)).is_err());
        assert!(e.substitute_one(&Symbol::coord(1), &(&x(2) + &ExpPoly::one())).is_err());
    }

    #[test]
    fn display_orders_terms() {
        let p = &x(3).pow(2).scale(&q(1, 2)) + &ExpPoly::var("beta");
        assert_eq!(p.to_string(), "1/2*x3^2 + beta");
        assert_eq!((-&x(2)).to_string(), "-x2");
    }
}
