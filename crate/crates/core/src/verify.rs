//! Checks on realizations: vector-field brackets, commutation relations,
//! kernels, duality and equivalence under explicit coordinate changes.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::expr::{ExpPoly, RatExpr, SymMatrix, Symbol};
use crate::liealg::{span_basis, LieAlgebra, Vector};
use crate::shirokov::{coords, Realization, VectorFieldSet};

/// Outcome of a commutation-relation check.
#[derive(Clone, Debug)]
pub struct RelationReport {
    pub ok: bool,
    /// `(i, j, residual)` where the residual is the coefficient list of
    /// `[R(e_i), R(e_j)] - R([e_i, e_j])`.
    pub failures: Vec<(usize, usize, Vec<RatExpr>)>,
}

/// Lie bracket of vector fields in coordinates `x1 .. xm`:
/// `[X, Y]^a = X(Y^a) - Y(X^a)`.
pub fn vf_bracket(x: &[RatExpr], y: &[RatExpr]) -> Vec<RatExpr> {
    assert_eq!(x.len(), y.len(), "fields on different coordinate counts");
    let xs = coords(x.len());
    apply_bracket(x, y, &xs)
}

/// Bracket with respect to an explicit list of coordinate symbols.
pub fn apply_bracket(x: &[RatExpr], y: &[RatExpr], xs: &[Symbol]) -> Vec<RatExpr> {
    (0..x.len())
        .map(|a| {
            let mut acc = RatExpr::zero();
            for (b, s) in xs.iter().enumerate() {
                if !x[b].is_zero() {
                    let d = y[a].diff(s);
                    if !d.is_zero() {
                        acc = &acc + &(&x[b] * &d);
                    }
                }
                if !y[b].is_zero() {
                    let d = x[a].diff(s);
                    if !d.is_zero() {
                        acc = &acc - &(&y[b] * &d);
                    }
                }
            }
            acc
        })
        .collect()
}

/// Check `[R(e_i), R(e_j)] = Σ_k C_{ij}^k R(e_k)` for all `i < j`.
pub fn check_relations(l: &LieAlgebra, r: &Realization) -> RelationReport {
    let n = l.dim();
    let mut failures = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = vf_bracket(&r.images[i], &r.images[j]);
            let rhs = r.image_of(l.bracket_basis(i, j));
            let res: Vec<RatExpr> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
            if res.iter().any(|x| !x.is_zero()) {
                failures.push((i, j, res));
            }
        }
    }
    RelationReport { ok: failures.is_empty(), failures }
}

/// Vectors `c` (over the parameter fraction field) with `Σ c_b R(e_b) = 0`
/// identically in the coordinates.
pub fn realization_kernel(r: &Realization) -> Vec<Vector> {
    let n = r.images.len();
    let xs: BTreeSet<Symbol> = coords(r.m).into_iter().collect();
    let mut rows: Vec<Vector> = Vec::new();
    for a in 0..r.m {
        let col: Vec<&RatExpr> = r.images.iter().map(|f| &f[a]).collect();
        let mut den = RatExpr::one();
        for c in &col {
            for (f, k) in c.denom_factors() {
                den = &den * &RatExpr::from(f.pow(*k));
            }
        }
        let nums: Vec<ExpPoly> = col
            .iter()
            .map(|c| {
                let p = *c * &den;
                p.as_poly().cloned().expect("common denominator clears")
            })
            .collect();
        let parts: Vec<_> = nums.iter().map(|p| p.split_by(&xs)).collect();
        let keys: BTreeSet<_> = parts.iter().flat_map(|m| m.keys().cloned()).collect();
        for k in keys {
            let row: Vector = parts
                .iter()
                .map(|m| m.get(&k).map(|p| RatExpr::from(p.clone())).unwrap_or_default())
                .collect();
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return (0..n)
            .map(|i| {
                let mut v = vec![RatExpr::zero(); n];
                v[i] = RatExpr::one();
                v
            })
            .collect();
    }
    span_basis(&SymMatrix::from_rows(rows).nullspace())
}

/// Vectors free of the symbol `p` lying in the span of `vs` for every value
/// of `p`.
pub fn parameter_free_part(vs: &[Vector], p: &Symbol, n: usize) -> Vec<Vector> {
    if vs.is_empty() {
        return vec![];
    }
    let ann = SymMatrix::from_rows(vs.to_vec()).nullspace();
    let mut rows: Vec<Vector> = Vec::new();
    for w in &ann {
        let mut den = RatExpr::one();
        for c in w {
            for (f, k) in c.denom_factors() {
                den = &den * &RatExpr::from(f.pow(*k));
            }
        }
        let polys: Vec<ExpPoly> =
            w.iter().map(|c| (c * &den).as_poly().cloned().expect("cleared")).collect();
        let mut split: Vec<_> = Vec::new();
        for q in &polys {
            split.push(q.coefficients_in(p).expect("parameter outside exponentials"));
        }
        let degs: BTreeSet<u32> = split.iter().flat_map(|m| m.keys().copied()).collect();
        for d in degs {
            rows.push(
                split
                    .iter()
                    .map(|m| m.get(&d).map(|q| RatExpr::from(q.clone())).unwrap_or_default())
                    .collect(),
            );
        }
    }
    if rows.is_empty() {
        return (0..n)
            .map(|i| {
                let mut v = vec![RatExpr::zero(); n];
                v[i] = RatExpr::one();
                v
            })
            .collect();
    }
    span_basis(&SymMatrix::from_rows(rows).nullspace())
}

/// Whether `W Ξ = I`, where column `k` of `Ξ` is field `k`.
pub fn duality_check(w: &SymMatrix, fields: &VectorFieldSet) -> bool {
    if w.rows() != fields.ncoords || w.cols() != fields.ncoords || fields.fields.len() != w.cols() {
        return false;
    }
    let xi = SymMatrix::from_cols(fields.fields.clone());
    w.mul(&xi).is_identity()
}

/// Change of coordinates `y_a = φ_a(x)`, optionally with a declared inverse
/// `x_a = ψ_a(y)` (written in the same symbols `x1 .. xm`).
#[derive(Clone, Debug)]
pub struct CoordinateMap {
    pub m: usize,
    pub images: Vec<RatExpr>,
    pub inverse: Option<Vec<RatExpr>>,
}

impl CoordinateMap {
    pub fn identity(m: usize) -> Self {
        CoordinateMap { m, images: (1..=m).map(RatExpr::coord).collect(), inverse: Some((1..=m).map(RatExpr::coord).collect()) }
    }

    fn bindings(v: &[RatExpr]) -> HashMap<Symbol, RatExpr> {
        v.iter().enumerate().map(|(i, e)| (Symbol::coord(i + 1), e.clone())).collect()
    }

    /// Check the declared inverse by composing both ways, or, without one,
    /// that the Jacobian determinant is not identically zero.
    pub fn validate(&self) -> Result<()> {
        if self.images.len() != self.m {
            return Err(Error::Input("coordinate map has the wrong number of images".into()));
        }
        match &self.inverse {
            Some(inv) => {
                if inv.len() != self.m {
                    return Err(Error::Input("inverse map has the wrong number of images".into()));
                }
                let f = Self::bindings(&self.images);
                let g = Self::bindings(inv);
                for a in 0..self.m {
                    let x = RatExpr::coord(a + 1);
                    let fg = self.images[a].substitute(&g)?;
                    let gf = inv[a].substitute(&f)?;
                    if fg != x || gf != x {
                        return Err(Error::Input(format!("declared inverse fails at coordinate x{}", a + 1)));
                    }
                }
                Ok(())
            }
            None => {
                let xs = coords(self.m);
                let jac = SymMatrix::from_fn(self.m, self.m, |a, b| self.images[a].diff(&xs[b]));
                if jac.det().is_zero() {
                    Err(Error::Input("coordinate map has a degenerate Jacobian".into()))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Push a field forward: coefficient `a` is `X(φ_a)` expressed in `x`.
    /// The caller compares it with target coefficients composed with `φ`.
    pub fn push(&self, field: &[RatExpr]) -> Vec<RatExpr> {
        let xs = coords(self.m);
        self.images
            .iter()
            .map(|phi| {
                let mut acc = RatExpr::zero();
                for (b, s) in xs.iter().enumerate() {
                    if !field[b].is_zero() {
                        let d = phi.diff(s);
                        if !d.is_zero() {
                            acc = &acc + &(&field[b] * &d);
                        }
                    }
                }
                acc
            })
            .collect()
    }

    /// Compose a function of the new coordinates with `φ`.
    pub fn pull(&self, f: &RatExpr) -> Result<RatExpr> {
        f.substitute(&Self::bindings(&self.images))
    }
}

/// Whether `R2(e_i) = φ_*(R1(U e_i))` for every basis element, where `U`
/// (columns are images of basis vectors) defaults to the identity.
pub fn compare_realizations(
    r1: &Realization,
    r2: &Realization,
    phi: &CoordinateMap,
    u: Option<&SymMatrix>,
) -> Result<bool> {
    if r1.m != r2.m || phi.m != r1.m || r1.images.len() != r2.images.len() {
        return Ok(false);
    }
    phi.validate()?;
    let n = r1.images.len();
    for i in 0..n {
        let v = match u {
            Some(u) => u.col(i),
            None => {
                let mut v = vec![RatExpr::zero(); n];
                v[i] = RatExpr::one();
                v
            }
        };
        let pushed = phi.push(&r1.image_of(&v));
        for (a, p) in pushed.iter().enumerate() {
            if &phi.pull(&r2.images[i][a])? != p {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_rat;
    use crate::liealg::{largest_ideal_in, parse_algebra, same_span};
    use crate::shirokov::{left_invariant_fields, one_forms, realize, Splitting};

    fn f(v: &[&str]) -> Vec<RatExpr> {
        v.iter().map(|s| parse_rat(s).unwrap()).collect()
    }

    fn abar_g1() -> LieAlgebra {
        parse_algebra("name: AbarG1(1)\nbasis: P, T, G\n[G,T] = P\n").unwrap()
    }

    #[test]
    fn basic_brackets() {
        assert_eq!(vf_bracket(&f(&["1", "0"]), &f(&["0", "x1"])), f(&["0", "1"]));
        assert_eq!(vf_bracket(&f(&["-x2", "0", "1"]), &f(&["0", "1", "0"])), f(&["1", "0", "0"]));
    }

    #[test]
    fn relations_and_sign_flip() {
        let l = abar_g1();
        let r = realize(&l, &Splitting::generic(&l)).unwrap();
        assert!(check_relations(&l, &r).ok);
        let mut bad = r.clone();
        bad.images[2] = bad.images[2].iter().map(|c| -c).collect();
        let rep = check_relations(&l, &bad);
        assert!(!rep.ok);
        let (i, j, res) = &rep.failures[0];
        assert_eq!((*i, *j), (1, 2));
        assert_eq!(res, &f(&["2", "0", "0"]));
    }

    #[test]
    fn kernel_matches_ideal() {
        let l = abar_g1();
        let split = Splitting {
            complement: vec![l.parse_vector("G").unwrap(), l.parse_vector("T").unwrap()],
            sub: vec![l.parse_vector("P").unwrap()],
        };
        let r = realize(&l, &split).unwrap();
        let k = realization_kernel(&r);
        assert!(same_span(&k, &largest_ideal_in(&l, &split.sub)));
        assert_eq!(k.len(), 1);
        let g = realize(&l, &Splitting::generic(&l)).unwrap();
        assert!(realization_kernel(&g).is_empty());
    }

    #[test]
    fn duality() {
        let l = abar_g1();
        let (w, vf) = left_invariant_fields(&l).unwrap();
        assert!(duality_check(&w, &vf));
        let mut w2 = one_forms(&l).unwrap();
        let v = w2.get(0, 0) + &RatExpr::coord(1);
        w2.set(0, 0, v);
        assert!(!duality_check(&w2, &vf));
    }

    #[test]
    fn coordinate_sign_change() {
        let l = abar_g1();
        let r = realize(&l, &Splitting::generic(&l)).unwrap();
        assert!(compare_realizations(&r, &r, &CoordinateMap::identity(3), None).unwrap());
        let phi = CoordinateMap { m: 3, images: f(&["x1", "x2", "-x3"]), inverse: Some(f(&["x1", "x2", "-x3"])) };
        let mut r2 = r.clone();
        r2.images[2] = f(&["-x2", "0", "-1"]);
        assert!(compare_realizations(&r, &r2, &phi, None).unwrap());
        assert!(!compare_realizations(&r, &r, &phi, None).unwrap());
        let broken = CoordinateMap { m: 3, images: f(&["x1", "x2", "-x3"]), inverse: Some(f(&["x1", "x2", "x3"])) };
        assert!(compare_realizations(&r, &r2, &broken, None).is_err());
    }
}
