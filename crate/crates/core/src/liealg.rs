//! Finite-dimensional Lie algebras over exact scalars.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::expr::{linear_coefficients, parse_rat, RatExpr, SymMatrix, Symbol};

/// Coefficient vector in a chosen basis.
pub type Vector = Vec<RatExpr>;

#[derive(Clone, Debug, PartialEq)]
pub struct Param {
    pub symbol: Symbol,
    /// Informational range text such as `alpha >= 0`.
    pub range: Option<String>,
}

/// Lie algebra given by structure constants `C_{ij}^k` in a named basis.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    pub name: String,
    pub basis: Vec<String>,
    pub params: Vec<Param>,
    /// Extra `key: value` header lines (title, deformation parameter, ...).
    pub meta: BTreeMap<String, String>,
    c: Vec<Vec<Vector>>,
}

#[derive(Clone, Debug)]
pub struct JacobiReport {
    pub holds: bool,
    pub violations: Vec<(usize, usize, usize, Vector)>,
}

impl LieAlgebra {
    /// Abelian algebra with the given basis labels.
    pub fn abelian(name: &str, basis: &[&str]) -> Self {
        let n = basis.len();
        LieAlgebra {
            name: name.to_string(),
            basis: basis.iter().map(|s| s.to_string()).collect(),
            params: vec![],
            meta: BTreeMap::new(),
            c: vec![vec![vec![RatExpr::zero(); n]; n]; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == label)
    }

    pub fn unit(&self, i: usize) -> Vector {
        let mut v = vec![RatExpr::zero(); self.dim()];
        v[i] = RatExpr::one();
        v
    }

    /// Set `[e_i, e_j] = v` (and `[e_j, e_i] = -v`).
    pub fn set_bracket(&mut self, i: usize, j: usize, v: Vector) {
        assert_eq!(v.len(), self.dim());
        self.c[j][i] = v.iter().map(|x| -x).collect();
        self.c[i][j] = v;
    }

    /// Add `coef * e_k` to `[e_i, e_j]`.
    pub fn add_bracket_term(&mut self, i: usize, j: usize, k: usize, coef: &RatExpr) {
        let v = &self.c[i][j][k] + coef;
        self.c[i][j][k] = v.clone();
        self.c[j][i][k] = -v;
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &RatExpr {
        &self.c[i][j][k]
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[RatExpr] {
        &self.c[i][j]
    }

    /// Bracket of two coefficient vectors.
    pub fn bracket(&self, u: &[RatExpr], v: &[RatExpr]) -> Vector {
        let n = self.dim();
        let mut out = vec![RatExpr::zero(); n];
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() || i == j {
                    continue;
                }
                let uv = &u[i] * &v[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = &self.c[i][j][k];
                    if !c.is_zero() {
                        *o = &*o + &(&uv * c);
                    }
                }
            }
        }
        out
    }

    pub fn param_symbols(&self) -> Vec<Symbol> {
        self.params.iter().map(|p| p.symbol.clone()).collect()
    }

    /// Nonzero brackets `(i, j, [e_i, e_j])` with `i < j`.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, &[RatExpr])> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.c[i][j].iter().any(|x| !x.is_zero()) {
                    out.push((i, j, self.c[i][j].as_slice()));
                }
            }
        }
        out
    }

    /// Whether both algebras have identical structure constants.
    pub fn same_constants(&self, other: &LieAlgebra) -> bool {
        self.dim() == other.dim()
            && (0..self.dim()).all(|i| {
                (i + 1..self.dim()).all(|j| self.c[i][j] == other.c[i][j])
            })
    }

    /// Apply `f` to every structure constant.
    pub fn map_constants(&self, f: impl Fn(&RatExpr) -> Result<RatExpr>) -> Result<LieAlgebra> {
        let mut out = self.clone();
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                let v = self.c[i][j].iter().map(&f).collect::<Result<Vec<_>>>()?;
                out.set_bracket(i, j, v);
            }
        }
        Ok(out)
    }

    pub fn jacobi_check(&self) -> JacobiReport {
        let n = self.dim();
        let mut violations = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (self.unit(i), self.unit(j), self.unit(k));
                    let a = self.bracket(&self.c[i][j], &ek);
                    let b = self.bracket(&self.c[j][k], &ei);
                    let c = self.bracket(&self.c[k][i], &ej);
                    let r: Vector = (0..n).map(|l| &(&a[l] + &b[l]) + &c[l]).collect();
                    if r.iter().any(|x| !x.is_zero()) {
                        violations.push((i, j, k, r));
                    }
                }
            }
        }
        JacobiReport { holds: violations.is_empty(), violations }
    }

    /// Matrix of `ad_v`: column `i` holds the coordinates of `[v, e_i]`.
    pub fn adjoint(&self, v: &[RatExpr]) -> SymMatrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|i| self.bracket(v, &self.unit(i))).collect();
        SymMatrix::from_cols(cols)
    }

    /// Structure constants in the basis `f_i = Σ_j U_{ji} e_j` (columns of
    /// `U` are the new basis vectors in old coordinates).
    pub fn change_basis(&self, u: &SymMatrix, labels: Option<Vec<String>>) -> Result<LieAlgebra> {
        let n = self.dim();
        if u.rows() != n || u.cols() != n {
            return Err(Error::Input("basis change has the wrong size".into()));
        }
        let inv = u.inverse()?;
        let mut out = self.clone();
        if let Some(l) = labels {
            out.basis = l;
        }
        let cols: Vec<Vector> = (0..n).map(|i| u.col(i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let b = self.bracket(&cols[i], &cols[j]);
                out.set_bracket(i, j, inv.mul_vec(&b));
            }
        }
        Ok(out)
    }

    /// Whether `U[x, y] = [Ux, Uy]` for all basis pairs.
    pub fn is_automorphism(&self, u: &SymMatrix) -> bool {
        let n = self.dim();
        if u.rows() != n || u.cols() != n || u.det().is_zero() {
            return false;
        }
        let cols: Vec<Vector> = (0..n).map(|i| u.col(i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = u.mul_vec(&self.c[i][j]);
                let rhs = self.bracket(&cols[i], &cols[j]);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Whether `U` carries the brackets of `self` to those of `target`:
    /// `U[x, y]_self = [Ux, Uy]_target`.
    pub fn is_homomorphism_to(&self, target: &LieAlgebra, u: &SymMatrix) -> bool {
        let n = self.dim();
        if u.cols() != n || u.rows() != target.dim() {
            return false;
        }
        let cols: Vec<Vector> = (0..n).map(|i| u.col(i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = u.mul_vec(&self.c[i][j]);
                let rhs = target.bracket(&cols[i], &cols[j]);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Parse a linear combination of basis labels.
    pub fn parse_vector(&self, s: &str) -> Result<Vector> {
        let r = parse_rat(s)?;
        linear_coefficients(&r, &self.basis)
    }
}

/// Reduced row echelon basis of the span of `vs` (rows), dropping zeros.
pub fn span_basis(vs: &[Vector]) -> Vec<Vector> {
    if vs.is_empty() {
        return vec![];
    }
    let (m, pivots, _) = SymMatrix::from_rows(vs.to_vec()).rref();
    (0..pivots.len()).map(|r| m.row(r)).collect()
}

pub fn rank(vs: &[Vector]) -> usize {
    span_basis(vs).len()
}

/// Whether `v` lies in the span of `vs`.
pub fn in_span(vs: &[Vector], v: &[RatExpr]) -> bool {
    if v.iter().all(|x| x.is_zero()) {
        return true;
    }
    let mut all = vs.to_vec();
    all.push(v.to_vec());
    rank(&all) == rank(vs)
}

/// Whether two lists span the same subspace.
pub fn same_span(a: &[Vector], b: &[Vector]) -> bool {
    let ra = rank(a);
    if ra != rank(b) {
        return false;
    }
    let mut all = a.to_vec();
    all.extend(b.iter().cloned());
    rank(&all) == ra
}

/// Whether the span of `gens` is closed under the bracket.
pub fn subalgebra_closed(l: &LieAlgebra, gens: &[Vector]) -> bool {
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if !in_span(gens, &l.bracket(&gens[i], &gens[j])) {
                return false;
            }
        }
    }
    true
}

/// Whether the span of `gens` is an ideal.
pub fn is_ideal(l: &LieAlgebra, gens: &[Vector]) -> bool {
    (0..l.dim()).all(|i| gens.iter().all(|g| in_span(gens, &l.bracket(&l.unit(i), g))))
}

/// Largest ideal of `l` inside the span of `gens`, by the stabilizing
/// iteration `I_{k+1} = {v ∈ I_k : [L, v] ⊆ I_k}`.
pub fn largest_ideal_in(l: &LieAlgebra, gens: &[Vector]) -> Vec<Vector> {
    let n = l.dim();
    let mut basis = span_basis(gens);
    loop {
        let r = basis.len();
        if r == 0 {
            return basis;
        }
        // Rows of `ann` annihilate span(basis).
        let ann = SymMatrix::from_rows(basis.clone()).nullspace();
        let mut rows: Vec<Vector> = Vec::new();
        for e in 0..n {
            let images: Vec<Vector> = basis.iter().map(|b| l.bracket(&l.unit(e), b)).collect();
            for a in &ann {
                let row: Vector = images
                    .iter()
                    .map(|img| {
                        let mut acc = RatExpr::zero();
                        for (x, y) in a.iter().zip(img) {
                            if !x.is_zero() && !y.is_zero() {
                                acc = &acc + &(x * y);
                            }
                        }
                        acc
                    })
                    .collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            return basis;
        }
        let sol = SymMatrix::from_rows(rows).nullspace();
        let next: Vec<Vector> = sol
            .iter()
            .map(|a| {
                (0..n)
                    .map(|k| {
                        let mut acc = RatExpr::zero();
                        for (s, b) in a.iter().zip(&basis) {
                            if !s.is_zero() && !b[k].is_zero() {
                                acc = &acc + &(s * &b[k]);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let next = span_basis(&next);
        if next.len() == r {
            return basis;
        }
        basis = next;
    }
}

/// Parse the algebra file format.
pub fn parse_algebra(text: &str) -> Result<LieAlgebra> {
    let mut name = None;
    let mut basis: Option<Vec<String>> = None;
    let mut dim: Option<usize> = None;
    let mut params = Vec::new();
    let mut meta = BTreeMap::new();
    let mut brackets = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let err = |m: String| Error::Input(format!("line {}: {m}", lineno + 1));
        if line.starts_with('[') {
            let close = line.find(']').ok_or_else(|| err("missing `]`".into()))?;
            let (a, b) = line[1..close].split_once(',').ok_or_else(|| err("expected [A,B]".into()))?;
            let rhs = line[close + 1..]
                .trim()
                .strip_prefix('=')
                .ok_or_else(|| err("expected `=` after bracket".into()))?;
            brackets.push((lineno + 1, a.trim().to_string(), b.trim().to_string(), rhs.trim().to_string()));
            continue;
        }
        let (k, v) = line.split_once(':').ok_or_else(|| err(format!("cannot read `{line}`")))?;
        let v = v.trim();
        match k.trim() {
            "name" => name = Some(v.to_string()),
            "dim" => dim = Some(v.parse().map_err(|_| err("bad dimension".into()))?),
            "basis" => basis = Some(v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()),
            "param" | "params" => {
                let (sym, range) = match v.split_once(char::is_whitespace) {
                    Some((s, r)) => (s, Some(r.trim().to_string())),
                    None => (v, None),
                };
                params.push(Param { symbol: Symbol::new(sym), range });
            }
            other => {
                meta.insert(other.to_string(), v.to_string());
            }
        }
    }
    let basis = basis.ok_or_else(|| Error::Input("missing `basis:` line".into()))?;
    if let Some(d) = dim {
        if d != basis.len() {
            return Err(Error::Input(format!("dim {d} does not match {} basis labels", basis.len())));
        }
    }
    let refs: Vec<&str> = basis.iter().map(|s| s.as_str()).collect();
    let mut l = LieAlgebra::abelian(&name.unwrap_or_else(|| "unnamed".into()), &refs);
    l.params = params;
    l.meta = meta;
    for (lineno, a, b, rhs) in brackets {
        let i = l.index(&a).ok_or_else(|| Error::Input(format!("line {lineno}: unknown label `{a}`")))?;
        let j = l.index(&b).ok_or_else(|| Error::Input(format!("line {lineno}: unknown label `{b}`")))?;
        if i == j {
            return Err(Error::Input(format!("line {lineno}: [{a},{a}] is always zero")));
        }
        let v = l.parse_vector(&rhs).map_err(|e| Error::Input(format!("line {lineno}: {e}")))?;
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                l.add_bracket_term(i, j, k, c);
            }
        }
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abar_g1() -> LieAlgebra {
        parse_algebra("name: AbarG1(1)\nbasis: P, T, G\n[G,T] = P\n").unwrap()
    }

    #[test]
    fn a31_is_lie() {
        let l = parse_algebra("name: A3.1\nbasis: e1, e2, e3\n[e2,e3] = e1\n").unwrap();
        assert!(l.jacobi_check().holds);
    }

    #[test]
    fn jacobi_failure_reports_residual() {
        let l = parse_algebra("basis: e1, e2, e3\n[e1,e2] = e3\n[e2,e3] = e1\n[e3,e1] = e1\n").unwrap();
        let r = l.jacobi_check();
        assert!(!r.holds);
        assert_eq!(r.violations.len(), 1);
        let (i, j, k, res) = &r.violations[0];
        assert_eq!((*i, *j, *k), (0, 1, 2));
        assert!(res[0].is_zero() && res[1].is_zero() && res[2].is_one());
    }

    #[test]
    fn adjoint_of_g() {
        let l = abar_g1();
        let ad_g = l.adjoint(&l.unit(2));
        for i in 0..3 {
            for j in 0..3 {
                let e = ad_g.get(i, j);
                if (i, j) == (0, 1) {
                    assert!(e.is_one());
                } else {
                    assert!(e.is_zero());
                }
            }
        }
        assert!(l.adjoint(&l.unit(0)).is_zero());
    }

    #[test]
    fn subalgebras_and_ideals() {
        let l = abar_g1();
        let p = l.parse_vector("P").unwrap();
        let tag = l.parse_vector("T + alpha*G").unwrap();
        assert!(subalgebra_closed(&l, &[p.clone(), tag.clone()]));
        let g = l.parse_vector("G").unwrap();
        let t = l.parse_vector("T").unwrap();
        assert!(!subalgebra_closed(&l, &[g, t]));
        assert!(same_span(&largest_ideal_in(&l, std::slice::from_ref(&p)), std::slice::from_ref(&p)));
        assert!(largest_ideal_in(&l, &[tag]).is_empty());
    }

    #[test]
    fn discrete_automorphism() {
        let l = abar_g1();
        // P -> -P, T -> G, G -> T
        let u = SymMatrix::from_cols(vec![
            l.parse_vector("-P").unwrap(),
            l.parse_vector("G").unwrap(),
            l.parse_vector("T").unwrap(),
        ]);
        assert!(l.is_automorphism(&u));
        let bad = SymMatrix::from_cols(vec![
            l.parse_vector("P").unwrap(),
            l.parse_vector("G").unwrap(),
            l.parse_vector("T").unwrap(),
        ]);
        assert!(!l.is_automorphism(&bad));
    }
}
