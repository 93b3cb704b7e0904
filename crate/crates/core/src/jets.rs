//! Jet spaces, total derivatives and prolongation of point-symmetry
//! candidates, with invariance checks for the catalog equations.
//!
//! Differential functions are rational expressions in jet symbols such as
//! `u`, `u_x`, `u_txx`, where the suffix lists independent names in their
//! declared order. Auxiliary functions of one independent (for instance
//! `s = sin(2t)`, `c = cos(2t)`) enter through their derivative rules and an
//! optional quadratic relation used to reduce powers.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::catalog::suite::Report;
use crate::catalog::{algebra, assignment_matrix, bind_algebra, load_fixture, parse_assignments, parse_bindings};
use crate::catalog::{parse_records, EQUATION_FILES};
use crate::error::{Error, Result};
use crate::expr::{parse_rat, q, ExpPoly, RatExpr, Rational, SymMatrix, Symbol};
use crate::liealg::LieAlgebra;
use crate::shirokov::{realize, Realization, Splitting};

/// Multi-index as derivative counts per independent.
pub type MultiIndex = Vec<u32>;

#[derive(Clone, Debug)]
pub struct JetSpace {
    pub independents: Vec<Symbol>,
    pub dependents: Vec<Symbol>,
    /// Auxiliary functions `(w, i, dw/dx_i)` of the independent `x_i`.
    pub aux: Vec<(Symbol, usize, RatExpr)>,
    /// Relation `w^2 = r` used to lower powers of `w`.
    pub relation: Option<(Symbol, ExpPoly)>,
}

impl JetSpace {
    /// Independent names must be single letters so jet names stay unambiguous.
    pub fn new(independents: &[&str], dependents: &[&str]) -> Result<Self> {
        for v in independents {
            if v.len() != 1 || !v.chars().all(|c| c.is_ascii_lowercase()) {
                return Err(Error::Input(format!("independent `{v}` must be a single lowercase letter")));
            }
        }
        for d in dependents {
            if d.is_empty() || d.contains('_') || independents.contains(d) {
                return Err(Error::Input(format!("bad dependent name `{d}`")));
            }
        }
        Ok(JetSpace {
            independents: independents.iter().map(|s| Symbol::new(s)).collect(),
            dependents: dependents.iter().map(|s| Symbol::new(s)).collect(),
            aux: vec![],
            relation: None,
        })
    }

    /// Coordinates of the base space: independents then dependents.
    pub fn base_coords(&self) -> Vec<Symbol> {
        self.independents.iter().chain(&self.dependents).cloned().collect()
    }

    /// Canonical jet symbol of dependent `a` with multi-index `j`.
    pub fn jet(&self, a: usize, j: &[u32]) -> Symbol {
        let mut name = self.dependents[a].name().to_string();
        if j.iter().any(|&c| c > 0) {
            name.push('_');
            for (v, &c) in self.independents.iter().zip(j) {
                for _ in 0..c {
                    name.push_str(v.name());
                }
            }
        }
        Symbol::new(&name)
    }

    /// Read a jet symbol back; any order of the suffix letters is accepted.
    pub fn parse_jet(&self, s: &Symbol) -> Option<(usize, MultiIndex)> {
        let (head, suffix) = match s.name().split_once('_') {
            Some((h, t)) => (h, t),
            None => (s.name(), ""),
        };
        let a = self.dependents.iter().position(|d| d.name() == head)?;
        if s.name().contains('_') && suffix.is_empty() {
            return None;
        }
        let mut j = vec![0; self.independents.len()];
        for ch in suffix.chars() {
            let i = self.independents.iter().position(|v| v.name().starts_with(ch))?;
            j[i] += 1;
        }
        Some((a, j))
    }

    fn var(s: &Symbol) -> RatExpr {
        RatExpr::from(ExpPoly::symbol(s.clone()))
    }

    /// Partial derivative in `x_i` including the auxiliary chain rules.
    fn partial(&self, f: &RatExpr, i: usize) -> RatExpr {
        let mut acc = f.diff(&self.independents[i]);
        for (w, k, rule) in &self.aux {
            if *k == i {
                let d = f.diff(w);
                if !d.is_zero() {
                    acc = &acc + &(&d * rule);
                }
            }
        }
        acc
    }

    /// `D_i f = ∂_i f + Σ u^a_{J+i} ∂f/∂u^a_J`.
    pub fn total_derivative(&self, f: &RatExpr, i: usize) -> RatExpr {
        let mut acc = self.partial(f, i);
        for s in f.symbols() {
            if let Some((a, mut j)) = self.parse_jet(&s) {
                let d = f.diff(&s);
                if !d.is_zero() {
                    j[i] += 1;
                    acc = &acc + &(&d * &Self::var(&self.jet(a, &j)));
                }
            }
        }
        acc
    }

    /// `D_J f`.
    pub fn total_derivative_multi(&self, f: &RatExpr, j: &[u32]) -> RatExpr {
        let mut out = f.clone();
        for (i, &c) in j.iter().enumerate() {
            for _ in 0..c {
                out = self.total_derivative(&out, i);
            }
        }
        out
    }

    /// Lower powers of the relation symbol in the numerator.
    pub fn reduce(&self, f: &RatExpr) -> Result<RatExpr> {
        let Some((w, r)) = &self.relation else { return Ok(f.clone()) };
        let Some(parts) = f.numer().coefficients_in(w) else { return Ok(f.clone()) };
        if parts.keys().all(|&d| d < 2) {
            return Ok(f.clone());
        }
        let wp = ExpPoly::symbol(w.clone());
        let mut num = ExpPoly::zero();
        for (d, c) in parts {
            let mut t = &c * &r.pow(d / 2);
            if d % 2 == 1 {
                t = &t * &wp;
            }
            num = &num + &t;
        }
        RatExpr::from_parts(num, &f.denom())
    }
}

/// Point-symmetry candidate `Σ ξ^i ∂_{x_i} + Σ φ^a ∂_{u^a}`.
#[derive(Clone, Debug)]
pub struct SymmetryCandidate {
    pub name: String,
    pub xi: Vec<RatExpr>,
    pub phi: Vec<RatExpr>,
}

impl SymmetryCandidate {
    /// Parse `xi_t = ..; xi_x = ..; phi_u = ..`; missing entries are zero.
    pub fn parse(space: &JetSpace, name: &str, text: &str) -> Result<Self> {
        let mut xi = vec![RatExpr::zero(); space.independents.len()];
        let mut phi = vec![RatExpr::zero(); space.dependents.len()];
        for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Input(format!("{name}: expected `xi_t = ...`, got `{part}`")))?;
            let e = parse_rat(v.trim())?;
            for s in e.symbols() {
                if space.parse_jet(&s).is_some_and(|(_, j)| j.iter().any(|&c| c > 0)) {
                    return Err(Error::Input(format!("{name}: point symmetries cannot depend on {s}")));
                }
            }
            let k = k.trim();
            let slot = if let Some(v) = k.strip_prefix("xi_") {
                space.independents.iter().position(|s| s.name() == v).map(|i| &mut xi[i])
            } else if let Some(d) = k.strip_prefix("phi_") {
                space.dependents.iter().position(|s| s.name() == d).map(|a| &mut phi[a])
            } else {
                None
            };
            *slot.ok_or_else(|| Error::Input(format!("{name}: unknown coefficient `{k}`")))? = e;
        }
        Ok(SymmetryCandidate { name: name.to_string(), xi, phi })
    }

    /// Coefficients on the base coordinates.
    pub fn field(&self) -> Vec<RatExpr> {
        self.xi.iter().chain(&self.phi).cloned().collect()
    }

    pub fn combine(name: &str, terms: &[(RatExpr, &SymmetryCandidate)]) -> SymmetryCandidate {
        let (ni, nd) = terms.first().map_or((0, 0), |(_, x)| (x.xi.len(), x.phi.len()));
        let mut out = SymmetryCandidate {
            name: name.to_string(),
            xi: vec![RatExpr::zero(); ni],
            phi: vec![RatExpr::zero(); nd],
        };
        for (c, x) in terms {
            for (o, v) in out.xi.iter_mut().zip(&x.xi).chain(out.phi.iter_mut().zip(&x.phi)) {
                *o = &*o + &(c * v);
            }
        }
        out
    }
}

/// Prolonged coefficients `φ^{a,J}`, computed on demand by
/// `φ^{a,J+i} = D_i φ^{a,J} - Σ_k D_i(ξ^k) u^a_{J+k}`.
pub struct Prolongation<'a> {
    space: &'a JetSpace,
    x: &'a SymmetryCandidate,
    memo: HashMap<(usize, MultiIndex), RatExpr>,
}

impl<'a> Prolongation<'a> {
    pub fn new(space: &'a JetSpace, x: &'a SymmetryCandidate) -> Self {
        Prolongation { space, x, memo: HashMap::new() }
    }

    pub fn coefficient(&mut self, a: usize, j: &[u32]) -> RatExpr {
        if let Some(c) = self.memo.get(&(a, j.to_vec())) {
            return c.clone();
        }
        let out = match j.iter().rposition(|&c| c > 0) {
            None => self.x.phi[a].clone(),
            Some(i) => {
                let mut prev = j.to_vec();
                prev[i] -= 1;
                let base = self.coefficient(a, &prev);
                let mut acc = self.space.total_derivative(&base, i);
                for (k, xk) in self.x.xi.iter().enumerate() {
                    let d = self.space.total_derivative(xk, i);
                    if d.is_zero() {
                        continue;
                    }
                    let mut jk = prev.clone();
                    jk[k] += 1;
                    acc = &acc - &(&d * &JetSpace::var(&self.space.jet(a, &jk)));
                }
                acc
            }
        };
        self.memo.insert((a, j.to_vec()), out.clone());
        out
    }

    /// `pr X (f)`.
    pub fn apply(&mut self, f: &RatExpr) -> RatExpr {
        let mut acc = RatExpr::zero();
        for (i, xi) in self.x.xi.iter().enumerate() {
            if !xi.is_zero() {
                acc = &acc + &(xi * &self.space.partial(f, i));
            }
        }
        for s in f.symbols() {
            if let Some((a, j)) = self.space.parse_jet(&s) {
                let d = f.diff(&s);
                if !d.is_zero() {
                    acc = &acc + &(&self.coefficient(a, &j) * &d);
                }
            }
        }
        acc
    }
}

/// All prolonged coefficients with `|J| <= order`.
pub fn prolong(space: &JetSpace, x: &SymmetryCandidate, order: u32) -> Vec<(Symbol, RatExpr)> {
    let mut p = Prolongation::new(space, x);
    let mut out = Vec::new();
    for a in 0..space.dependents.len() {
        for j in multi_indices(space.independents.len(), order) {
            let c = p.coefficient(a, &j);
            out.push((space.jet(a, &j), c));
        }
    }
    out
}

fn multi_indices(n: usize, order: u32) -> Vec<MultiIndex> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|j: MultiIndex| {
                let used: u32 = j.iter().sum();
                (0..=order - used).map(move |c| {
                    let mut k = j.clone();
                    k.push(c);
                    k
                })
            })
            .collect();
    }
    out.sort_by_key(|j| (j.iter().sum::<u32>(), std::cmp::Reverse(j.clone())));
    out
}

/// `lead = rhs` with the leading derivative named explicitly.
#[derive(Clone, Debug)]
pub struct Equation {
    pub dependent: usize,
    pub lead: MultiIndex,
    pub rhs: RatExpr,
}

impl Equation {
    pub fn parse(space: &JetSpace, text: &str) -> Result<Self> {
        let (l, r) = text
            .split_once('=')
            .ok_or_else(|| Error::Input(format!("expected `lead = rhs`, got `{text}`")))?;
        let (dependent, lead) = space
            .parse_jet(&Symbol::new(l.trim()))
            .ok_or_else(|| Error::Input(format!("`{}` is not a derivative of a dependent", l.trim())))?;
        Ok(Equation { dependent, lead, rhs: parse_rat(r.trim())? })
    }

    pub fn residual(&self, space: &JetSpace) -> RatExpr {
        &JetSpace::var(&space.jet(self.dependent, &self.lead)) - &self.rhs
    }
}

/// Replace every derivative of a leading derivative by the corresponding
/// derivative of its right-hand side, until none remains.
pub fn eliminate(space: &JetSpace, eqs: &[Equation], f: &RatExpr) -> Result<RatExpr> {
    let mut f = f.clone();
    for _ in 0..32 {
        let mut subs = HashMap::new();
        for s in f.symbols() {
            let Some((a, j)) = space.parse_jet(&s) else { continue };
            for e in eqs {
                if e.dependent == a && j.iter().zip(&e.lead).all(|(x, y)| x >= y) {
                    let extra: Vec<u32> = j.iter().zip(&e.lead).map(|(x, y)| x - y).collect();
                    subs.insert(s.clone(), space.total_derivative_multi(&e.rhs, &extra));
                    break;
                }
            }
        }
        if subs.is_empty() {
            return Ok(f);
        }
        f = f.substitute(&subs)?;
    }
    Err(Error::Input("elimination of leading derivatives does not terminate".into()))
}

/// Residuals of `pr X (Δ)` on the solution manifold, one per equation.
pub fn invariance_residuals(space: &JetSpace, eqs: &[Equation], x: &SymmetryCandidate) -> Result<Vec<RatExpr>> {
    let mut p = Prolongation::new(space, x);
    eqs.iter()
        .map(|e| {
            let r = p.apply(&e.residual(space));
            space.reduce(&eliminate(space, eqs, &r)?)
        })
        .collect()
}

pub fn check_point_symmetry(space: &JetSpace, eqs: &[Equation], x: &SymmetryCandidate) -> Result<bool> {
    Ok(invariance_residuals(space, eqs, x)?.iter().all(RatExpr::is_zero))
}

/// Bracket of base fields, with the auxiliary chain rules.
pub fn operator_bracket(space: &JetSpace, a: &[RatExpr], b: &[RatExpr]) -> Result<Vec<RatExpr>> {
    let coords = space.base_coords();
    let ni = space.independents.len();
    let d = |f: &RatExpr, k: usize| if k < ni { space.partial(f, k) } else { f.diff(&coords[k]) };
    (0..coords.len())
        .map(|c| {
            let mut acc = RatExpr::zero();
            for k in 0..coords.len() {
                if !a[k].is_zero() {
                    acc = &acc + &(&a[k] * &d(&b[c], k));
                }
                if !b[k].is_zero() {
                    acc = &acc - &(&b[k] * &d(&a[c], k));
                }
            }
            space.reduce(&acc)
        })
        .collect()
}

/// Sample point for the `idx`-th symbol.
fn sample(point: usize, idx: usize) -> Rational {
    let num = ((7 * point + 5 * idx + 3) % 17) as i64 + 1;
    let den = ((3 * point + 2 * idx) % 5) as i64 + 2;
    q(num, den)
}

/// Constants `c` with `target = Σ c_k fields_k`, found on sample points and
/// then confirmed exactly.
fn constant_combination(space: &JetSpace, fields: &[Vec<RatExpr>], target: &[RatExpr]) -> Result<Vec<RatExpr>> {
    let k = fields.len();
    let mut syms = std::collections::BTreeSet::new();
    for f in fields.iter().chain(std::iter::once(&target.to_vec())) {
        for c in f {
            syms.extend(c.symbols());
        }
    }
    let syms: Vec<Symbol> = syms.into_iter().collect();
    let mut rows = Vec::new();
    for p in 0..3 * k + 4 {
        let at: HashMap<Symbol, Rational> = syms.iter().enumerate().map(|(i, s)| (s.clone(), sample(p, i))).collect();
        for comp in 0..target.len() {
            let vals: Option<Vec<Rational>> = fields
                .iter()
                .map(|f| f[comp].eval_rational(&at))
                .chain(std::iter::once(target[comp].eval_rational(&at)))
                .collect();
            if let Some(v) = vals {
                rows.push(v.into_iter().map(RatExpr::constant).collect::<Vec<_>>());
            }
        }
    }
    let (red, pivots, _) = SymMatrix::from_rows(rows).rref();
    if pivots.contains(&k) {
        return Err(Error::Input("bracket is not a constant combination of the operators".into()));
    }
    if pivots.len() < k {
        return Err(Error::Input("operators are linearly dependent".into()));
    }
    let coef: Vec<RatExpr> = (0..k).map(|r| red.get(r, k).clone()).collect();
    for comp in 0..target.len() {
        let mut res = target[comp].clone();
        for (c, f) in coef.iter().zip(fields) {
            res = &res - &(c * &f[comp]);
        }
        if !space.reduce(&res)?.is_zero() {
            return Err(Error::Input("bracket is not a constant combination of the operators".into()));
        }
    }
    Ok(coef)
}

/// Structure constants of the span of the operators, in their own basis.
pub fn extract_algebra(space: &JetSpace, ops: &[SymmetryCandidate]) -> Result<LieAlgebra> {
    let names: Vec<&str> = ops.iter().map(|x| x.name.as_str()).collect();
    let mut l = LieAlgebra::abelian("operators", &names);
    let fields: Vec<Vec<RatExpr>> = ops.iter().map(SymmetryCandidate::field).collect();
    for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            let b = operator_bracket(space, &fields[i], &fields[j])?;
            let c = constant_combination(space, &fields, &b)
                .map_err(|e| Error::Input(format!("[{},{}]: {e}", ops[i].name, ops[j].name)))?;
            l.set_bracket(i, j, c);
        }
    }
    Ok(l)
}

/// A catalog equation with its operators and claims.
#[derive(Clone, Debug)]
pub struct EquationFile {
    pub name: String,
    pub title: String,
    pub space: JetSpace,
    pub equations: Vec<Equation>,
    pub operators: Vec<SymmetryCandidate>,
    /// Candidates that must fail the invariance test.
    pub negatives: Vec<SymmetryCandidate>,
    pub algebra: Option<String>,
    pub bind: HashMap<Symbol, RatExpr>,
    /// Algebra basis elements as combinations of the operators.
    pub basis: Vec<(String, String)>,
    /// Table row realizing the same algebra, or a splitting to realize it
    /// with, and the coordinate change (each old variable in terms of
    /// `x1, x2, ...`).
    pub realization: Option<String>,
    pub complement: Vec<String>,
    pub subalgebra: Vec<String>,
    pub coords: Vec<(String, String)>,
}

fn names(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).collect()
}

pub fn parse_equation_file(text: &str) -> Result<EquationFile> {
    let (_, recs) = parse_records(text, "name")?;
    let r = recs.into_iter().next().ok_or_else(|| Error::Input("missing `name:` line".into()))?;
    let mut space = JetSpace::new(&names(r.require("independent")?), &names(r.require("dependent")?))?;
    for a in r.get_all("aux") {
        let (l, rhs) = a.split_once('=').ok_or_else(|| r.error(&format!("cannot read aux `{a}`")))?;
        let (w, v) = l
            .trim()
            .split_once('_')
            .ok_or_else(|| r.error(&format!("aux `{a}` must read `w_t = ...`")))?;
        let i = space
            .independents
            .iter()
            .position(|s| s.name() == v)
            .ok_or_else(|| r.error(&format!("aux `{a}` differentiates by an unknown variable")))?;
        space.aux.push((Symbol::new(w), i, parse_rat(rhs.trim())?));
    }
    if let Some(red) = r.get("reduce") {
        let (l, rhs) = red.split_once('=').ok_or_else(|| r.error("cannot read `reduce:`"))?;
        let w = l.trim().strip_suffix("^2").ok_or_else(|| r.error("`reduce:` must read `w^2 = ...`"))?;
        let rhs = parse_rat(rhs.trim())?;
        let p = rhs.as_poly().ok_or_else(|| r.error("`reduce:` needs a polynomial right-hand side"))?.clone();
        space.relation = Some((Symbol::new(w.trim()), p));
    }
    let equations = r.get_all("equation").iter().map(|e| Equation::parse(&space, e)).collect::<Result<Vec<_>>>()?;
    if equations.is_empty() {
        return Err(r.error("no `equation:` lines"));
    }
    let mut operators = Vec::new();
    for line in &r.body {
        let (k, v) = line.split_once(':').ok_or_else(|| r.error(&format!("cannot read `{line}`")))?;
        operators.push(SymmetryCandidate::parse(&space, k.trim(), v)?);
    }
    let negatives = r
        .get_all("not-symmetry")
        .iter()
        .enumerate()
        .map(|(i, t)| SymmetryCandidate::parse(&space, &format!("N{}", i + 1), t))
        .collect::<Result<Vec<_>>>()?;
    Ok(EquationFile {
        name: r.head.clone(),
        title: r.get("title").unwrap_or_default().to_string(),
        space,
        equations,
        operators,
        negatives,
        algebra: r.get("algebra").map(str::to_string),
        bind: r.get("bind").map(parse_bindings).transpose()?.unwrap_or_default(),
        basis: r.get("basis").map(parse_assignments).transpose()?.unwrap_or_default(),
        realization: r.get("realization").map(str::to_string),
        complement: r.get("complement").map(names).unwrap_or_default().into_iter().map(str::to_string).collect(),
        subalgebra: r.get("subalgebra").map(names).unwrap_or_default().into_iter().map(str::to_string).collect(),
        coords: r.get("coords").map(parse_assignments).transpose()?.unwrap_or_default(),
    })
}

pub fn equation_files() -> Result<Vec<EquationFile>> {
    EQUATION_FILES.iter().map(|(_, t)| parse_equation_file(t)).collect()
}

impl EquationFile {
    fn op_names(&self) -> Vec<String> {
        self.operators.iter().map(|x| x.name.clone()).collect()
    }

    /// The claimed algebra and the matrix whose columns express its basis
    /// in the operators.
    fn claimed(&self) -> Result<Option<(LieAlgebra, SymMatrix)>> {
        let Some(name) = &self.algebra else { return Ok(None) };
        let l = bind_algebra(&algebra(name)?, &self.bind)?;
        let u = assignment_matrix(&self.basis, &l.basis, &self.op_names())?;
        Ok(Some((l, u)))
    }

    /// Whether the operator brackets reproduce the claimed algebra under the
    /// recorded basis correspondence.
    pub fn structure_matches(&self) -> Result<Option<bool>> {
        let Some((l, u)) = self.claimed()? else { return Ok(None) };
        let ops = extract_algebra(&self.space, &self.operators)?;
        Ok(Some(!u.det().is_zero() && l.is_homomorphism_to(&ops, &u)))
    }

    /// Operator for each claimed basis element.
    fn basis_operators(&self, l: &LieAlgebra, u: &SymMatrix) -> Vec<SymmetryCandidate> {
        (0..l.dim())
            .map(|b| {
                let terms: Vec<(RatExpr, &SymmetryCandidate)> =
                    u.col(b).into_iter().zip(&self.operators).filter(|(c, _)| !c.is_zero()).collect();
                SymmetryCandidate::combine(&l.basis[b], &terms)
            })
            .collect()
    }

    /// Whether the operators, rewritten in the recorded coordinates, equal
    /// the referenced table realization label by label.
    pub fn realization_matches(&self) -> Result<Option<bool>> {
        if self.realization.is_none() && self.complement.is_empty() {
            return Ok(None);
        }
        let (l, u) = self.claimed()?.ok_or_else(|| Error::Input(format!("{}: realization without algebra", self.name)))?;
        let target = self.target_realization(&l)?;
        let old = self.space.base_coords();
        let m = old.len();
        if target.m != m || self.coords.len() != m {
            return Ok(Some(false));
        }
        let mut subs = HashMap::new();
        for (k, v) in &self.coords {
            subs.insert(Symbol::new(k), parse_rat(v)?);
        }
        let exprs = old
            .iter()
            .map(|s| subs.get(s).cloned().ok_or_else(|| Error::Input(format!("{}: no coordinate for {s}", self.name))))
            .collect::<Result<Vec<_>>>()?;
        let jac = SymMatrix::from_fn(m, m, |j, k| exprs[j].diff(&Symbol::coord(k + 1)));
        let jinv = jac.inverse()?;
        for x in self.basis_operators(&l, &u) {
            let field = x.field().iter().map(|c| c.substitute(&subs)).collect::<Result<Vec<_>>>()?;
            let pushed = jinv.mul_vec(&field);
            if target.image(&x.name) != Some(pushed.as_slice()) {
                return Ok(Some(false));
            }
        }
        Ok(Some(true))
    }

    fn target_realization(&self, l: &LieAlgebra) -> Result<Realization> {
        if let Some(rid) = &self.realization {
            return Ok(load_fixture(rid)?.realization);
        }
        let vs = |items: &[String]| items.iter().map(|s| l.parse_vector(s)).collect::<Result<Vec<_>>>();
        realize(l, &Splitting { complement: vs(&self.complement)?, sub: vs(&self.subalgebra)? })
    }

    /// Short description of the realization claim.
    pub fn realization_label(&self) -> String {
        match &self.realization {
            Some(r) => r.clone(),
            None => format!("complement {} mod <{}>", self.complement.join(", "), self.subalgebra.join(", ")),
        }
    }

    /// Every check for this equation as report lines.
    pub fn report(&self) -> Report {
        let mut rep = Report::default();
        for x in &self.operators {
            let subject = format!("{}/{}", self.name, x.name);
            match invariance_residuals(&self.space, &self.equations, x) {
                Ok(res) => {
                    let bad: Vec<String> = res.iter().filter(|r| !r.is_zero()).map(|r| r.to_string()).collect();
                    rep.push(&subject, "invariant", bad.is_empty(), bad.join("; "));
                }
                Err(e) => rep.push(&subject, "invariant", false, e.to_string()),
            }
        }
        for x in &self.negatives {
            let subject = format!("{}/{}", self.name, x.name);
            match check_point_symmetry(&self.space, &self.equations, x) {
                Ok(holds) => rep.push(&subject, "not-invariant", !holds, ""),
                Err(e) => rep.push(&subject, "not-invariant", false, e.to_string()),
            }
        }
        let target = self.algebra.clone().unwrap_or_default();
        match self.structure_matches() {
            Ok(Some(ok)) => rep.push(&self.name, "structure-constants", ok, target),
            Ok(None) => {}
            Err(e) => rep.push(&self.name, "structure-constants", false, e.to_string()),
        }
        match self.realization_matches() {
            Ok(Some(ok)) => rep.push(&self.name, "realization-map", ok, self.realization_label()),
            Ok(None) => {}
            Err(e) => rep.push(&self.name, "realization-map", false, e.to_string()),
        }
        rep
    }
}

/// Checks for one catalog equation, by file stem.
pub fn symmetry_report(name: &str) -> Result<Report> {
    Ok(parse_equation_file(crate::catalog::equation_text(name)?)?.report())
}

/// Checks for every catalog equation.
pub fn symmetry_suite() -> Result<Report> {
    let files = equation_files()?;
    let parts: Vec<Report> = files.par_iter().map(EquationFile::report).collect();
    let mut rep = Report::default();
    for p in parts {
        rep.extend(p);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tx() -> JetSpace {
        JetSpace::new(&["t", "x"], &["u"]).unwrap()
    }

    fn e(s: &str) -> RatExpr {
        parse_rat(s).unwrap()
    }

    #[test]
    fn jet_names_are_canonical() {
        let s = tx();
        assert_eq!(s.jet(0, &[1, 2]).name(), "u_txx");
        assert_eq!(s.parse_jet(&Symbol::new("u_xtx")), Some((0, vec![1, 2])));
        assert_eq!(s.parse_jet(&Symbol::new("u")), Some((0, vec![0, 0])));
        assert_eq!(s.parse_jet(&Symbol::new("v_x")), None);
        assert_eq!(s.parse_jet(&Symbol::new("u_y")), None);
    }

    #[test]
    fn total_derivatives() {
        let s = tx();
        assert_eq!(s.total_derivative(&e("u"), 1), e("u_x"));
        assert_eq!(s.total_derivative(&e("u*u_x"), 1), e("u_x^2 + u*u_xx"));
        assert!(s.total_derivative(&e("x"), 0).is_zero());
        assert_eq!(s.total_derivative(&e("t*u_x"), 0), e("u_x + t*u_tx"));
    }

    #[test]
    fn translations_prolong_to_zero() {
        let s = tx();
        let x = SymmetryCandidate::parse(&s, "P", "xi_x = 1").unwrap();
        assert!(prolong(&s, &x, 5).iter().all(|(_, c)| c.is_zero()));
    }

    #[test]
    fn galilean_boost_prolongation() {
        let s = tx();
        let x = SymmetryCandidate::parse(&s, "G", "xi_x = t; phi_u = 1").unwrap();
        let mut p = Prolongation::new(&s, &x);
        assert_eq!(p.coefficient(0, &[1, 0]), e("-u_x"));
        assert!(p.coefficient(0, &[0, 1]).is_zero());
    }

    #[test]
    fn scaling_prolongation() {
        let s = tx();
        let x = SymmetryCandidate::parse(&s, "D", "xi_t = 2*t; xi_x = x; phi_u = -u").unwrap();
        let mut p = Prolongation::new(&s, &x);
        assert_eq!(p.coefficient(0, &[0, 1]), e("-2*u_x"));
        assert_eq!(p.coefficient(0, &[1, 0]), e("-3*u_t"));
    }

    #[test]
    fn burgers_invariance() {
        let s = tx();
        let eqs = vec![Equation::parse(&s, "u_t = mu*u_xx - u*u_x").unwrap()];
        let inv = SymmetryCandidate::parse(&s, "S", "xi_t = t^2; xi_x = t*x; phi_u = x - t*u").unwrap();
        assert!(check_point_symmetry(&s, &eqs, &inv).unwrap());
        let not = SymmetryCandidate::parse(&s, "N", "phi_u = 1").unwrap();
        let res = invariance_residuals(&s, &eqs, &not).unwrap();
        assert_eq!(res, vec![e("u_x")]);
    }

    #[test]
    fn kdv_scaling() {
        let s = tx();
        let eqs = vec![Equation::parse(&s, "u_t = -u*u_x - u_xxx").unwrap()];
        let x = SymmetryCandidate::parse(&s, "e4", "xi_t = t; xi_x = 1/3*x; phi_u = -2/3*u").unwrap();
        assert!(check_point_symmetry(&s, &eqs, &x).unwrap());
    }

    #[test]
    fn aux_relation_reduces_powers() {
        let mut s = JetSpace::new(&["t"], &["r"]).unwrap();
        s.aux.push((Symbol::new("s"), 0, e("2*c")));
        s.aux.push((Symbol::new("c"), 0, e("-2*s")));
        s.relation = Some((Symbol::new("c"), e("1 - s^2").as_poly().unwrap().clone()));
        assert!(s.reduce(&e("c^2 + s^2 - 1")).unwrap().is_zero());
        assert_eq!(s.reduce(&e("c^3")).unwrap(), e("c - c*s^2"));
        assert_eq!(s.total_derivative(&e("s*r"), 0), e("2*c*r + s*r_t"));
    }

    #[test]
    fn prolongation_is_linear() {
        let s = tx();
        let a = SymmetryCandidate::parse(&s, "A", "xi_t = t^2; xi_x = t*x; phi_u = x - t*u").unwrap();
        let b = SymmetryCandidate::parse(&s, "B", "xi_x = x*u; phi_u = u^2").unwrap();
        let c = SymmetryCandidate::combine("C", &[(e("2"), &a), (e("-3"), &b)]);
        let (pa, pb, pc) = (prolong(&s, &a, 3), prolong(&s, &b, 3), prolong(&s, &c, 3));
        for ((x, y), z) in pa.iter().zip(&pb).zip(&pc) {
            assert_eq!(&(&e("2") * &x.1) - &(&e("3") * &y.1), z.1);
        }
    }

    #[test]
    fn every_catalog_equation_passes() {
        let rep = symmetry_suite().unwrap();
        assert!(rep.ok(), "{}", rep.text());
    }
}
