//! Realizations from left-invariant vector fields: one-forms built from
//! products of adjoint exponentials, their dual fields, projection to a
//! coset, and promotion of a parameter to a new coordinate.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::expr::{mat_exp_ad, RatExpr, SymMatrix, Symbol};
use crate::liealg::{rank, subalgebra_closed, LieAlgebra, Vector};

/// Complement vectors followed by subalgebra generators, in the
/// coordinates of the algebra's declared basis.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub complement: Vec<Vector>,
    pub sub: Vec<Vector>,
}

impl Splitting {
    pub fn generic(l: &LieAlgebra) -> Self {
        Splitting { complement: (0..l.dim()).map(|i| l.unit(i)).collect(), sub: vec![] }
    }

    /// Parses `complement ; subalgebra`, for example `P, G ; T + alpha*G`, or `generic`.
    pub fn parse(l: &LieAlgebra, s: &str) -> Result<Self> {
        if s.trim() == "generic" {
            return Ok(Splitting::generic(l));
        }
        let (c, h) = s.split_once(';').unwrap_or((s, ""));
        let vecs = |part: &str| {
            crate::catalog::split_top_level(part)
                .iter()
                .filter(|x| !x.is_empty())
                .map(|x| l.parse_vector(x))
                .collect::<Result<Vec<_>>>()
        };
        Ok(Splitting { complement: vecs(c)?, sub: vecs(h)? })
    }

    /// Matrix whose columns are the complement vectors then the generators.
    pub fn matrix(&self) -> SymMatrix {
        let mut cols = self.complement.clone();
        cols.extend(self.sub.iter().cloned());
        SymMatrix::from_cols(cols)
    }

    pub fn validate(&self, l: &LieAlgebra) -> Result<()> {
        let n = l.dim();
        if self.complement.len() + self.sub.len() != n {
            return Err(Error::Input(format!(
                "splitting has {} + {} vectors for a {n}-dimensional algebra",
                self.complement.len(),
                self.sub.len()
            )));
        }
        let mut all = self.complement.clone();
        all.extend(self.sub.iter().cloned());
        if rank(&all) != n {
            return Err(Error::Input("complement and subalgebra do not span the algebra".into()));
        }
        if !subalgebra_closed(l, &self.sub) {
            return Err(Error::Input("subalgebra is not closed under the bracket".into()));
        }
        Ok(())
    }
}

/// Vector fields on `ncoords` coordinates; `fields[k][a]` is the coefficient
/// of `∂_{a+1}` in field `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorFieldSet {
    pub ncoords: usize,
    pub fields: Vec<Vec<RatExpr>>,
}

/// Images of the basis elements of an algebra as vector fields.
#[derive(Clone, Debug)]
pub struct Realization {
    pub labels: Vec<String>,
    pub m: usize,
    /// `images[b][a]`: coefficient of `∂_{a+1}` in the image of basis element `b`.
    pub images: Vec<Vec<RatExpr>>,
    pub provenance: String,
    /// Informational range notes attached to promoted coordinates.
    pub notes: Vec<String>,
}

impl Realization {
    pub fn image(&self, label: &str) -> Option<&[RatExpr]> {
        self.labels.iter().position(|l| l == label).map(|i| self.images[i].as_slice())
    }

    /// Image of a linear combination of basis elements.
    pub fn image_of(&self, v: &[RatExpr]) -> Vec<RatExpr> {
        let mut out = vec![RatExpr::zero(); self.m];
        for (c, img) in v.iter().zip(&self.images) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(img) {
                if !x.is_zero() {
                    *o = &*o + &(c * x);
                }
            }
        }
        out
    }

    /// Whether both realizations have identical images.
    pub fn same_images(&self, other: &Realization) -> bool {
        self.m == other.m
            && self.images.len() == other.images.len()
            && self.images.iter().zip(&other.images).all(|(a, b)| a == b)
    }

    pub fn substitute(&self, bindings: &HashMap<Symbol, RatExpr>) -> Result<Realization> {
        let images = self
            .images
            .iter()
            .map(|f| f.iter().map(|c| c.substitute(bindings)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Realization { images, ..self.clone() })
    }
}

/// Coordinate symbols `x1 .. xn`.
pub fn coords(n: usize) -> Vec<Symbol> {
    (1..=n).map(Symbol::coord).collect()
}

/// The matrix `W` of left-invariant one-forms in second canonical
/// coordinates: column 1 is `e_1`, column `i` is column `i` of
/// `exp(-x_1 ad_1) ... exp(-x_{i-1} ad_{i-1})`.
pub fn one_forms(l: &LieAlgebra) -> Result<SymMatrix> {
    one_forms_on(l, l.dim())
}

/// The one-form matrix with `x_{m+1} = ... = x_n = 0`: only the first `m`
/// adjoint exponentials enter.
pub fn one_forms_on(l: &LieAlgebra, m: usize) -> Result<SymMatrix> {
    let n = l.dim();
    let xs = coords(n);
    let mut w = SymMatrix::zeros(n, n);
    let mut prod = SymMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            w.set(j, i, prod.get(j, i).clone());
        }
        if i + 1 < n && i < m {
            let ad = l.adjoint(&l.unit(i));
            prod = prod.mul(&mat_exp_ad(&ad, &xs[i], -1)?);
        }
    }
    Ok(w)
}

/// Fields dual to the one-forms: field `k` has the coefficients
/// `(W^{-1})_{a,k}` along `∂_a`.
pub fn left_invariant_fields(l: &LieAlgebra) -> Result<(SymMatrix, VectorFieldSet)> {
    let w = one_forms(l)?;
    let inv = w.inverse().map_err(|_| Error::Input("one-form matrix is singular".into()))?;
    let n = l.dim();
    let fields = (0..n).map(|k| inv.col(k)).collect();
    Ok((w, VectorFieldSet { ncoords: n, fields }))
}

/// Fields of the adapted algebra projected to the first `m` coordinates.
/// The projected coefficients do not involve `x_{m+1} .. x_n`, so these
/// are set to zero before inverting; exponentials of subalgebra elements,
/// whose spectrum may be complex, then never arise.
pub fn coset_fields(adapted: &LieAlgebra, m: usize) -> Result<Vec<Vec<RatExpr>>> {
    let w = one_forms_on(adapted, m)?;
    let inv = w.inverse().map_err(|_| Error::Input("one-form matrix is singular".into()))?;
    Ok((0..adapted.dim()).map(|k| inv.col(k)[..m].to_vec()).collect())
}

/// Realization of `l` with respect to the splitting.
pub fn realize(l: &LieAlgebra, split: &Splitting) -> Result<Realization> {
    split.validate(l)?;
    let n = l.dim();
    let m = split.complement.len();
    let u = split.matrix();
    let adapted = l.change_basis(&u, None)?;
    let projected = coset_fields(&adapted, m)?;
    let uinv = u.inverse()?;
    let images = (0..n)
        .map(|b| {
            let mut img = vec![RatExpr::zero(); m];
            for (i, field) in projected.iter().enumerate() {
                let c = uinv.get(i, b);
                if c.is_zero() {
                    continue;
                }
                for (o, x) in img.iter_mut().zip(field) {
                    if !x.is_zero() {
                        *o = &*o + &(c * x);
                    }
                }
            }
            img
        })
        .collect();
    Ok(Realization {
        labels: l.basis.clone(),
        m,
        images,
        provenance: "pipeline".into(),
        notes: vec![],
    })
}

/// Replace the parameter `p` by a new coordinate `x_{m+1}`. Returns the
/// realization unchanged with a warning when `p` does not occur.
pub fn promote_parameter(
    r: &Realization,
    p: &Symbol,
    range: Option<&str>,
) -> (Realization, Option<String>) {
    if !r.images.iter().flatten().any(|c| c.contains(p)) {
        return (r.clone(), Some(format!("parameter {p} does not occur; nothing promoted")));
    }
    let m = r.m + 1;
    let x = RatExpr::coord(m);
    let images = r
        .images
        .iter()
        .map(|f| {
            let mut g: Vec<RatExpr> =
                f.iter().map(|c| c.substitute_one(p, &x).expect("polynomial substitution")).collect();
            g.push(RatExpr::zero());
            g
        })
        .collect();
    let mut notes = r.notes.clone();
    if let Some(rg) = range {
        notes.push(format!("x{m} replaces {p} ({rg})"));
    }
    (
        Realization { labels: r.labels.clone(), m, images, provenance: format!("{} promoted {p}", r.provenance), notes },
        None,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::parse_algebra;

    fn abar_g1() -> LieAlgebra {
        parse_algebra("name: AbarG1(1)\nbasis: P, T, G\n[G,T] = P\n").unwrap()
    }

    fn show(r: &Realization, b: usize) -> Vec<String> {
        r.images[b].iter().map(|c| c.to_string()).collect()
    }

    #[test]
    fn one_forms_of_abar_g1() {
        let w = one_forms(&abar_g1()).unwrap();
        let s: Vec<String> = w.entries().map(|x| x.to_string()).collect();
        assert_eq!(s, ["1", "0", "x2", "0", "1", "0", "0", "0", "1"]);
    }

    #[test]
    fn generic_fields_of_abar_g1() {
        let (_, vf) = left_invariant_fields(&abar_g1()).unwrap();
        let g: Vec<String> = vf.fields[2].iter().map(|x| x.to_string()).collect();
        assert_eq!(g, ["-x2", "0", "1"]);
    }

    #[test]
    fn coset_with_parametrized_subalgebra() {
        let l = abar_g1();
        let split = Splitting {
            complement: vec![l.parse_vector("P").unwrap(), l.parse_vector("G").unwrap()],
            sub: vec![l.parse_vector("T + alpha*G").unwrap()],
        };
        let r = realize(&l, &split).unwrap();
        assert_eq!(show(&r, 0), ["1", "0"]);
        assert_eq!(show(&r, 1), ["x2", "-alpha"]);
        assert_eq!(show(&r, 2), ["0", "1"]);
        let (p, warn) = promote_parameter(&r, &Symbol::new("alpha"), None);
        assert!(warn.is_none());
        assert_eq!(show(&p, 1), ["x2", "-x3", "0"]);
        let (same, warn) = promote_parameter(&r, &Symbol::new("beta"), None);
        assert!(warn.is_some());
        assert!(same.same_images(&r));
    }
}
