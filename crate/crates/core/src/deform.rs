//! One-parameter deformations: contraction matrices applied at finite
//! parameter, limits at `q = 0`, specializations and generic realizations
//! of the deformed algebras.

use std::collections::HashMap;

use crate::catalog::suite::Report;
use crate::catalog::{
    assignment_matrix, basis_maps, contractions, deformed_realizations, family_names, ContractionSpec,
    DeformedRealization,
};
use crate::error::{Error, Result};
use crate::expr::{RatExpr, SymMatrix, Symbol};
use crate::liealg::LieAlgebra;
use crate::shirokov::{realize, Realization, Splitting};
use crate::verify::check_relations;

/// Structure constants depending on a designated parameter `q`.
#[derive(Clone, Debug)]
pub struct DeformationFamily {
    pub algebra: LieAlgebra,
    pub q: Symbol,
    /// Some constant has `q` in a denominator.
    pub rational: bool,
}

impl DeformationFamily {
    pub fn new(algebra: LieAlgebra, q: Symbol) -> Self {
        let rational = has_pole_in(&algebra, &q);
        DeformationFamily { algebra, q, rational }
    }

    /// Family from an algebra carrying a `deformation_parameter:` line.
    pub fn from_algebra(algebra: LieAlgebra) -> Result<Self> {
        let q = algebra
            .meta
            .get("deformation_parameter")
            .ok_or_else(|| Error::Input(format!("{} has no deformation parameter", algebra.name)))?;
        let q = Symbol::new(q);
        Ok(Self::new(algebra, q))
    }

    /// The `q = 0` member.
    pub fn base(&self) -> Result<LieAlgebra> {
        specialize(&self.algebra, &HashMap::from([(self.q.clone(), RatExpr::zero())]))
    }
}

fn constants(l: &LieAlgebra) -> impl Iterator<Item = (usize, usize, usize, &RatExpr)> {
    l.nonzero_brackets()
        .into_iter()
        .flat_map(|(i, j, v)| v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(k, c)| (i, j, k, c)))
}

fn has_pole_in(l: &LieAlgebra, q: &Symbol) -> bool {
    constants(l).any(|(_, _, _, c)| c.denom_factors().iter().any(|(f, _)| f.contains(q)))
}

/// Brackets `[x, y]_q = U⁻¹[Ux, Uy]`, where the columns of `U` are the new
/// basis vectors in the coordinates of `l`. New labels default to `f1 .. fn`.
pub fn deform_via_contraction(l: &LieAlgebra, u: &SymMatrix, q: &Symbol) -> Result<DeformationFamily> {
    if u.det().is_zero() {
        return Err(Error::Singular);
    }
    let labels = (1..=l.dim()).map(|i| format!("f{i}")).collect();
    let mut d = l.change_basis(u, Some(labels))?;
    d.name = format!("{}_{q}", l.name);
    if !d.params.iter().any(|p| &p.symbol == q) {
        d.params.push(crate::liealg::Param { symbol: q.clone(), range: None });
    }
    d.meta.insert("deformation_parameter".into(), q.to_string());
    Ok(DeformationFamily::new(d, q.clone()))
}

/// Rewrite `l` in the basis `order`, each label given as a combination of
/// the current basis elements.
pub fn relabel(l: &LieAlgebra, pairs: &[(String, String)], order: &[String]) -> Result<LieAlgebra> {
    let u = assignment_matrix(pairs, order, &l.basis)?;
    l.change_basis(&u, Some(order.to_vec()))
}

/// The same algebra with its basis listed in `order`.
pub fn reorder(l: &LieAlgebra, order: &[String]) -> Result<LieAlgebra> {
    let pairs: Vec<(String, String)> = order.iter().map(|b| (b.clone(), b.clone())).collect();
    relabel(l, &pairs, order)
}

/// Apply a catalog contraction and relabel the result in the basis order
/// of `target` (usually the recorded family).
pub fn apply_contraction(spec: &ContractionSpec, source: &LieAlgebra, target: &[String]) -> Result<DeformationFamily> {
    let f = deform_via_contraction(source, &spec.matrix, &spec.parameter)?;
    let mut l = relabel(&f.algebra, &spec.labels, target)?;
    l.name = spec.family.clone();
    Ok(DeformationFamily::new(l, spec.parameter.clone()))
}

/// The `q → 0` limit of the structure constants.
pub fn contraction_limit(l: &LieAlgebra, q: &Symbol) -> Result<LieAlgebra> {
    for (i, j, k, c) in constants(l) {
        if !c.finite_at_zero(q) {
            return Err(Error::NoLimit(format!(
                "coefficient of {} in [{},{}] is {c}",
                l.basis[k], l.basis[i], l.basis[j]
            )));
        }
    }
    let mut out = specialize(l, &HashMap::from([(q.clone(), RatExpr::zero())]))?;
    out.params.retain(|p| &p.symbol != q);
    out.meta.remove("deformation_parameter");
    Ok(out)
}

/// Exact substitution into the structure constants.
pub fn specialize(l: &LieAlgebra, bindings: &HashMap<Symbol, RatExpr>) -> Result<LieAlgebra> {
    if bindings.is_empty() {
        return Ok(l.clone());
    }
    let mut out = l.map_constants(|c| c.substitute(bindings))?;
    out.params.retain(|p| !bindings.contains_key(&p.symbol));
    Ok(out)
}

/// Realization on the whole group with the complement given by labels in
/// order, with every parameter kept symbolic.
pub fn deformed_generic_realization(l: &LieAlgebra, complement: &[String]) -> Result<Realization> {
    if complement.len() != l.dim() {
        return Err(Error::Input(format!("a generic complement of {} needs {} labels", l.name, l.dim())));
    }
    let vs = complement
        .iter()
        .map(|c| l.index(c).map(|i| l.unit(i)).ok_or_else(|| Error::Input(format!("unknown label `{c}`"))))
        .collect::<Result<Vec<_>>>()?;
    realize(l, &Splitting { complement: vs, sub: vec![] })
}

/// Whether two realizations give every label the same image.
pub fn same_images_by_label(a: &Realization, b: &Realization) -> bool {
    a.m == b.m
        && a.labels.len() == b.labels.len()
        && a.labels.iter().zip(&a.images).all(|(l, img)| b.image(l) == Some(img.as_slice()))
}

/// Setting `q = 0` in a realization of the family gives the pipeline
/// realization of the undeformed algebra for the same complement.
pub fn specialization_matches_base(f: &DeformationFamily, r: &Realization, complement: &[String]) -> Result<bool> {
    let base_name = f
        .algebra
        .meta
        .get("base")
        .ok_or_else(|| Error::Input(format!("{} names no base algebra", f.algebra.name)))?;
    let base = crate::catalog::algebra(base_name)?;
    let at_zero = r.substitute(&HashMap::from([(f.q.clone(), RatExpr::zero())]))?;
    let undeformed = deformed_generic_realization(&base, complement)?;
    Ok(same_images_by_label(&at_zero, &undeformed))
}

fn family_report(rep: &mut Report, name: &str) -> Result<()> {
    let l = crate::catalog::algebra(name)?;
    let j = l.jacobi_check();
    rep.push(name, "jacobi", j.holds, format!("{} violations", j.violations.len()));
    let f = DeformationFamily::from_algebra(l)?;
    let base = crate::catalog::algebra(
        f.algebra.meta.get("base").ok_or_else(|| Error::Input(format!("{name} names no base algebra")))?,
    )?;
    let lim = contraction_limit(&f.algebra, &f.q)?;
    rep.push(name, "limit-is-base", reorder(&lim, &base.basis)?.same_constants(&base), base.name.clone());
    Ok(())
}

fn contraction_report(rep: &mut Report, spec: &ContractionSpec) -> Result<()> {
    let fam = crate::catalog::algebra(&spec.family)?;
    let src = crate::catalog::algebra(&spec.source)?;
    let got = apply_contraction(spec, &src, &fam.basis)?;
    rep.push(&spec.name, "reproduces-family", got.algebra.same_constants(&fam), spec.family.clone());
    Ok(())
}

fn realization_report(rep: &mut Report, d: &DeformedRealization) -> Result<()> {
    let rel = check_relations(&d.algebra, &d.realization);
    let detail = if d.expect_fail { "printed form expected to fail" } else { "" };
    rep.push(&d.id, "relations", rel.ok != d.expect_fail, detail);
    if d.expect_fail {
        return Ok(());
    }
    let r = deformed_generic_realization(&d.algebra, &d.complement)?;
    rep.push(&d.id, "regenerate-verbatim", r.same_images(&d.realization), d.complement.join(", "));
    let f = DeformationFamily::from_algebra(d.algebra.clone())?;
    rep.push(&d.id, "specialization-is-base", specialization_matches_base(&f, &d.realization, &d.complement)?, "");
    Ok(())
}

/// Families, contractions, printed realizations and the isomorphism
/// certificates that involve deformed algebras.
pub fn deformation_report() -> Result<Report> {
    let mut rep = Report::default();
    let guard = |rep: &mut Report, subject: &str, check: &'static str, r: Result<()>| {
        if let Err(e) = r {
            rep.push(subject, check, false, e.to_string());
        }
    };
    for name in family_names() {
        let r = family_report(&mut rep, &name);
        guard(&mut rep, &name, "family", r);
    }
    for spec in contractions()? {
        let r = contraction_report(&mut rep, &spec);
        guard(&mut rep, &spec.name, "contraction", r);
    }
    for d in deformed_realizations()? {
        let r = realization_report(&mut rep, &d);
        guard(&mut rep, &d.id, "realization", r);
    }
    let families = family_names();
    for m in basis_maps()?.into_iter().filter(|m| families.contains(&m.target)) {
        let subject = format!("{}/{}", m.kind, m.id);
        match m.holds() {
            Ok(h) => rep.push(&subject, "brackets-preserved", h, ""),
            Err(e) => rep.push(&subject, "brackets-preserved", false, e.to_string()),
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{algebra, contraction};
    use crate::expr::parse_rat;
    use crate::liealg::parse_algebra;

    fn q() -> Symbol {
        Symbol::new("q")
    }

    #[test]
    fn identity_matrix_gives_a_constant_family() {
        let l = algebra("A3.4").unwrap();
        let f = deform_via_contraction(&l, &SymMatrix::identity(3), &q()).unwrap();
        assert!(f.algebra.same_constants(&l));
        assert!(!f.rational);
        assert!(contraction_limit(&f.algebra, &q()).unwrap().same_constants(&l));
    }

    #[test]
    fn contractions_reproduce_the_families() {
        for spec in contractions().unwrap() {
            let fam = algebra(&spec.family).unwrap();
            let src = algebra(&spec.source).unwrap();
            let got = apply_contraction(&spec, &src, &fam.basis).unwrap();
            assert!(got.algebra.same_constants(&fam), "{}", spec.name);
            assert!(got.algebra.jacobi_check().holds);
        }
    }

    #[test]
    fn limits_of_the_families() {
        let spec = contraction("A3.4-A3.1").unwrap();
        let fam = algebra(&spec.family).unwrap();
        let lim = contraction_limit(&fam, &q()).unwrap();
        let base = algebra("AbarG1(1)").unwrap();
        let u = assignment_matrix(
            &[("P".into(), "P".into()), ("T".into(), "T".into()), ("G".into(), "G".into())],
            &base.basis,
            &lim.basis,
        )
        .unwrap();
        assert!(base.is_homomorphism_to(&lim, &u));
        let f = DeformationFamily::from_algebra(fam).unwrap();
        assert!(f.base().unwrap().same_constants(&lim));
    }

    #[test]
    fn limits_recover_the_undeformed_algebras() {
        for name in ["AbarG1q(1)", "AG1q(1)", "AbarG1qt(1)", "AG1qt(1)", "AbarG1qh(1)", "AG1qh(1)"] {
            let f = DeformationFamily::from_algebra(algebra(name).unwrap()).unwrap();
            let base = algebra(&f.algebra.meta["base"]).unwrap();
            let lim = contraction_limit(&f.algebra, &f.q).unwrap();
            assert!(reorder(&lim, &base.basis).unwrap().same_constants(&base), "{name}");
        }
    }

    #[test]
    fn full_deformation_report() {
        let rep = deformation_report().unwrap();
        assert!(rep.ok(), "{}", rep.text());
        assert!(rep.lines.iter().filter(|l| l.check == "brackets-preserved").count() >= 2);
    }

    #[test]
    fn a_pole_has_no_limit() {
        let l = parse_algebra("name: x\nbasis: a, b\nparam: q\n[a,b] = 1/q*a\n").unwrap();
        assert!(matches!(contraction_limit(&l, &q()), Err(Error::NoLimit(_))));
        assert!(DeformationFamily::new(l, q()).rational);
    }

    #[test]
    fn specialization_leaves_unbound_families_alone() {
        let l = algebra("AG1q(1)").unwrap();
        assert!(specialize(&l, &HashMap::new()).unwrap().same_constants(&l));
        let b = HashMap::from([(Symbol::new("beta"), parse_rat("-1/2").unwrap())]);
        let s = specialize(&l, &b).unwrap();
        assert!(s.jacobi_check().holds);
        assert!(!s.params.iter().any(|p| p.symbol.name() == "beta"));
    }

    #[test]
    fn printed_realizations() {
        for d in deformed_realizations().unwrap() {
            let ok = check_relations(&d.algebra, &d.realization).ok;
            assert_eq!(ok, !d.expect_fail, "{}", d.id);
            if d.expect_fail {
                continue;
            }
            let r = deformed_generic_realization(&d.algebra, &d.complement).unwrap();
            assert!(r.same_images(&d.realization), "{}", d.id);
            let f = DeformationFamily::from_algebra(d.algebra.clone()).unwrap();
            assert!(specialization_matches_base(&f, &d.realization, &d.complement).unwrap(), "{}", d.id);
        }
    }
}
