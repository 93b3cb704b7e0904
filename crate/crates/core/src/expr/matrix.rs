use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::exppoly::{ExpPoly, Key};
use super::ratexpr::RatExpr;
use super::symbol::Symbol;
use super::Rational;
use crate::error::{Error, Result};

/// Dense matrix over rational expressions.
#[derive(Clone, PartialEq, Eq)]
pub struct SymMatrix {
    rows: usize,
    cols: usize,
    data: Vec<RatExpr>,
}

impl SymMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SymMatrix { rows, cols, data: vec![RatExpr::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SymMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, RatExpr::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RatExpr>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        SymMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_cols(cols: Vec<Vec<RatExpr>>) -> Self {
        SymMatrix::from_rows(cols).transpose()
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> RatExpr) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        SymMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RatExpr {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatExpr) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<RatExpr> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<RatExpr> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> SymMatrix {
        SymMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map(&self, f: impl Fn(&RatExpr) -> RatExpr) -> SymMatrix {
        SymMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map(&self, f: impl Fn(&RatExpr) -> Result<RatExpr>) -> Result<SymMatrix> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(SymMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn entries(&self) -> impl Iterator<Item = &RatExpr> {
        self.data.iter()
    }

    pub fn mul(&self, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        SymMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = RatExpr::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = other.get(k, j);
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[RatExpr]) -> Vec<RatExpr> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = RatExpr::zero();
                for (k, x) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &SymMatrix) -> SymMatrix {
        assert!(self.rows == other.rows && self.cols == other.cols);
        SymMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn sub(&self, other: &SymMatrix) -> SymMatrix {
        assert!(self.rows == other.rows && self.cols == other.cols);
        SymMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - other.get(i, j))
    }

    pub fn scale(&self, c: &RatExpr) -> SymMatrix {
        self.map(|x| x * c)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// Entries as rational constants, when all of them are.
    pub fn as_rational(&self) -> Option<Vec<Vec<Rational>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).as_constant()).collect())
            .collect()
    }

    pub fn pow(&self, k: u32) -> SymMatrix {
        let mut acc = SymMatrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Reduced row echelon form over the fraction field. Returns the reduced
    /// matrix, the pivot columns and the non-constant pivots that were
    /// assumed nonzero.
    pub fn rref(&self) -> (SymMatrix, Vec<usize>, Vec<RatExpr>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut conditions = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = pick_pivot(&m, r, c) else { continue };
            m.swap_rows(r, p);
            let pv = m.get(r, c).clone();
            if pv.as_constant().is_none() {
                conditions.push(pv.clone());
            }
            let inv = pv.inv().expect("pivot is nonzero");
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let b = m.get(r, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&f * b);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots, conditions)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{v : M v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<RatExpr>> {
        let (m, pivots, _) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![RatExpr::zero(); self.cols];
                v[f] = RatExpr::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m.get(r, f);
                }
                v
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Exact inverse by Gauss-Jordan elimination over the fraction field.
    pub fn inverse(&self) -> Result<SymMatrix> {
        if self.rows != self.cols {
            return Err(Error::Input("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = SymMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, RatExpr::one());
        }
        let (m, pivots, _) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(SymMatrix::from_fn(n, n, |i, j| m.get(i, n + j).clone()))
    }

    pub fn det(&self) -> RatExpr {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = self.rows;
        let mut det = RatExpr::one();
        for c in 0..n {
            let Some(p) = pick_pivot(&m, c, c) else { return RatExpr::zero() };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pv = m.get(c, c).clone();
            det = &det * &pv;
            let inv = pv.inv().unwrap();
            for i in c + 1..n {
                let f = m.get(i, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        det
    }
}

fn complexity(x: &RatExpr) -> (usize, usize) {
    let d: usize = x.denom_factors().iter().map(|(f, k)| f.len() * *k as usize).sum();
    (d + usize::from(x.as_constant().is_none()), x.numer().len())
}

fn pick_pivot(m: &SymMatrix, from: usize, c: usize) -> Option<usize> {
    (from..m.rows)
        .filter(|&i| !m.get(i, c).is_zero())
        .min_by_key(|&i| complexity(m.get(i, c)))
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", r.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Characteristic polynomial coefficients `c_0 .. c_n` (monic, `c_n = 1`)
/// of a rational matrix, by the Faddeev-LeVerrier recursion.
pub fn char_poly(a: &[Vec<Rational>]) -> Vec<Rational> {
    let n = a.len();
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        let mut next = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Rational::zero();
                for l in 0..n {
                    if !a[i][l].is_zero() && !m[l][j].is_zero() {
                        s += &a[i][l] * &m[l][j];
                    }
                }
                next[i][j] = s;
            }
            next[i][i] += &c[n - k + 1];
        }
        let mut tr = Rational::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &a[i][l] * &next[l][i];
            }
        }
        c[n - k] = -tr / Rational::from_integer(BigInt::from(k as i64));
        m = next;
    }
    c
}

fn eval_poly(p: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn deflate(p: &[Rational], r: &Rational) -> Vec<Rational> {
    let n = p.len() - 1;
    let mut q = vec![Rational::zero(); n];
    let mut carry = Rational::zero();
    for i in (0..n).rev() {
        carry = &p[i + 1] + &carry * r;
        q[i] = carry.clone();
    }
    q
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 {
        return Some(vec![]);
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
        if d > 2_000_000 {
            return None;
        }
    }
    Some(out)
}

/// Rational roots with multiplicity of a polynomial given by coefficients
/// `p_0 .. p_n`. Returns the roots and the residual factor without rational
/// roots.
pub fn rational_roots(p: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut p: Vec<Rational> = p.to_vec();
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    let mut roots = Vec::new();
    loop {
        if p.len() <= 1 {
            break;
        }
        if p[0].is_zero() {
            roots.push(Rational::zero());
            p = deflate(&p, &Rational::zero());
            continue;
        }
        let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> =
            p.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let (Some(num), Some(den)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
            break;
        };
        let mut found = None;
        'search: for a in &num {
            for b in &den {
                for s in [1i64, -1] {
                    let r = Rational::new(a * BigInt::from(s), b.clone());
                    if eval_poly(&p, &r).is_zero() {
                        found = Some(r);
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some(r) => {
                p = deflate(&p, &r);
                roots.push(r);
            }
            None => break,
        }
    }
    roots.sort();
    (roots, p)
}

fn fmt_poly_in(p: &[Rational], var: &str) -> String {
    let mut e = ExpPoly::zero();
    for (i, c) in p.iter().enumerate() {
        e = &e + &ExpPoly::var(var).pow(i as u32).scale(c);
    }
    e.to_string()
}

/// Solution of `y' = lam*y + f(t)`, `y(0) = 0`, for `f` an exp-polynomial in
/// `t` alone.
fn solve_linear_ode(lam: &Rational, f: &ExpPoly, t: &Symbol) -> ExpPoly {
    let mut y = ExpPoly::zero();
    for (k, c) in f.terms() {
        let m = k.degree_in(t);
        let mu = k.exp.iter().find(|(s, _)| s == t).map(|(_, a)| a.clone()).unwrap_or_default();
        let e_mu = ExpPoly::exp_of(&[(t.clone(), mu.clone())]);
        if &mu == lam {
            let p = ExpPoly::symbol(t.clone())
                .pow(m + 1)
                .scale(&(c / Rational::from_integer(BigInt::from(m + 1))));
            y = &y + &(&p * &e_mu);
        } else {
            let d = &mu - lam;
            let mut a = vec![Rational::zero(); m as usize + 1];
            a[m as usize] = c / &d;
            for j in (0..m as usize).rev() {
                a[j] = -Rational::from_integer(BigInt::from(j as i64 + 1)) * &a[j + 1] / &d;
            }
            let mut p = ExpPoly::zero();
            for (j, aj) in a.iter().enumerate() {
                p = &p + &ExpPoly::symbol(t.clone()).pow(j as u32).scale(aj);
            }
            let e_lam = ExpPoly::exp_of(&[(t.clone(), lam.clone())]);
            y = &(&y + &(&p * &e_mu)) - &e_lam.scale(&a[0]);
        }
    }
    y
}

/// `exp(sign * t * A)` computed exactly through the characteristic
/// polynomial and Putzer's recurrence. Symbolic entries are allowed as long
/// as the characteristic polynomial has rational constant coefficients.
pub fn mat_exp_ad(a: &SymMatrix, t: &Symbol, sign: i32) -> Result<SymMatrix> {
    let n = a.rows();
    if n != a.cols() {
        return Err(Error::Input("matrix exponential of a non-square matrix".into()));
    }
    let s = RatExpr::int(sign.signum() as i64);
    let a = a.scale(&s);
    if a.is_zero() {
        return Ok(SymMatrix::identity(n));
    }
    let cp = char_poly_sym(&a);
    let mut q = Vec::with_capacity(cp.len());
    for (i, c) in cp.iter().enumerate() {
        match c.as_constant() {
            Some(v) => q.push(v),
            None => {
                return Err(Error::RationalSpectrum(format!(
                    "characteristic polynomial coefficient of lambda^{i} is {c}, not a rational constant"
                )))
            }
        }
    }
    putzer(&a, &q, t)
}

/// Characteristic polynomial coefficients over rational expressions.
pub fn char_poly_sym(a: &SymMatrix) -> Vec<RatExpr> {
    let n = a.rows();
    let mut c = vec![RatExpr::zero(); n + 1];
    c[n] = RatExpr::one();
    let mut m = SymMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = a.mul(&m);
        for i in 0..n {
            let v = next.get(i, i) + &c[n - k + 1];
            next.set(i, i, v);
        }
        let am = a.mul(&next);
        let mut tr = RatExpr::zero();
        for i in 0..n {
            tr = &tr + am.get(i, i);
        }
        c[n - k] = -&(&tr / &RatExpr::int(k as i64));
        m = next;
    }
    c
}

/// `Σ_{k<n} (tA)^k / k!` for nilpotent `A`.
pub fn nilpotent_series(a: &SymMatrix, t: &Symbol) -> SymMatrix {
    let n = a.rows();
    let tv = RatExpr::from(ExpPoly::symbol(t.clone()));
    let mut out = SymMatrix::identity(n);
    let mut term = SymMatrix::identity(n);
    for k in 1..=n {
        term = term.mul(a).scale(&(&tv / &RatExpr::int(k as i64)));
        if term.is_zero() {
            break;
        }
        out = out.add(&term);
    }
    out
}

fn putzer(a: &SymMatrix, cp: &[Rational], t: &Symbol) -> Result<SymMatrix> {
    let n = a.rows();
    let (roots, rest) = rational_roots(cp);
    if roots.len() < n {
        return Err(Error::RationalSpectrum(format!(
            "characteristic polynomial has the factor {} without rational roots",
            fmt_poly_in(&rest, "lambda")
        )));
    }
    let mut r: Vec<ExpPoly> = Vec::with_capacity(n);
    r.push(ExpPoly::exp_of(&[(t.clone(), roots[0].clone())]));
    for k in 1..n {
        let next = solve_linear_ode(&roots[k], &r[k - 1], t);
        r.push(next);
    }
    let mut out = SymMatrix::zeros(n, n);
    let mut p = SymMatrix::identity(n);
    for k in 0..n {
        if k > 0 {
            let shift = a.sub(&SymMatrix::identity(n).scale(&RatExpr::constant(roots[k - 1].clone())));
            p = p.mul(&shift);
        }
        out = out.add(&p.scale(&RatExpr::from(r[k].clone())));
    }
    Ok(out)
}

/// Single-term exponential in `t` with rate `lam`.
pub fn exp_rate(t: &Symbol, lam: Rational) -> ExpPoly {
    ExpPoly::term(Rational::one(), Key { mono: vec![], exp: vec![(t.clone(), lam)] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::q;

    fn r(n: i64) -> RatExpr {
        RatExpr::int(n)
    }

    #[test]
    fn inverse_of_unipotent() {
        let x = RatExpr::coord(1);
        let m = SymMatrix::from_rows(vec![vec![r(1), r(0)], vec![x.clone(), r(1)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv, SymMatrix::from_rows(vec![vec![r(1), r(0)], vec![-&x, r(1)]]));
    }

    #[test]
    fn inverse_of_exponential_diagonal() {
        let t = Symbol::coord(1);
        let m = SymMatrix::from_rows(vec![
            vec![RatExpr::from(exp_rate(&t, q(1, 1))), r(0)],
            vec![r(0), RatExpr::from(exp_rate(&t, q(2, 1)))],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv.get(0, 0).to_string(), "exp(-x1)");
        assert_eq!(inv.get(1, 1).to_string(), "exp(-2*x1)");
        assert!(inv.get(0, 0).is_poly());
    }

    #[test]
    fn singular_matrix_detected() {
        let x = RatExpr::coord(1);
        let m = SymMatrix::from_rows(vec![vec![x.clone(), x.clone()], vec![r(1), r(1)]]);
        assert_eq!(m.inverse(), Err(Error::Singular));
        assert!(m.det().is_zero());
    }

    #[test]
    fn char_poly_and_roots() {
        let a = vec![
            vec![q(0, 1), q(0, 1), q(0, 1)],
            vec![q(0, 1), q(2, 1), q(0, 1)],
            vec![q(0, 1), q(0, 1), q(-1, 1)],
        ];
        let cp = char_poly(&a);
        let (roots, rest) = rational_roots(&cp);
        assert_eq!(roots, vec![q(-1, 1), q(0, 1), q(2, 1)]);
        assert_eq!(rest.len(), 1);
        let rot = vec![vec![q(0, 1), q(-1, 1)], vec![q(1, 1), q(0, 1)]];
        let (roots, rest) = rational_roots(&char_poly(&rot));
        assert!(roots.is_empty());
        assert_eq!(rest.len(), 3);
    }

    #[test]
    fn rotation_generator_rejected() {
        let a = SymMatrix::from_rows(vec![vec![r(0), r(-1)], vec![r(1), r(0)]]);
        let e = mat_exp_ad(&a, &Symbol::coord(1), 1);
        assert!(matches!(e, Err(Error::RationalSpectrum(_))));
    }

    #[test]
    fn jordan_block_exponential() {
        let t = Symbol::coord(1);
        let a = SymMatrix::from_rows(vec![vec![r(2), r(1)], vec![r(0), r(2)]]);
        let e = mat_exp_ad(&a, &t, 1).unwrap();
        let e2 = RatExpr::from(exp_rate(&t, q(2, 1)));
        assert_eq!(e.get(0, 0), &e2);
        assert_eq!(e.get(0, 1), &(&RatExpr::coord(1) * &e2));
        assert!(e.get(1, 0).is_zero());
        let inv = mat_exp_ad(&a, &t, -1).unwrap();
        assert!(e.mul(&inv).is_identity());
    }
}
