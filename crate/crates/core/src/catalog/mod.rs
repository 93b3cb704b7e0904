//! Embedded fixture catalog: algebras, deformation families, realization
//! tables, equivalence claims, basis maps, contractions and equations.

pub mod galilei;
pub mod records;
pub mod suite;

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::expr::{parse_linear_combination, parse_rat, RatExpr, SymMatrix, Symbol};
use crate::liealg::{parse_algebra, LieAlgebra, Param, Vector};
use crate::shirokov::{Realization, Splitting};
use crate::verify::CoordinateMap;

pub use galilei::{deformed_extended, galilei_algebra, GalileiSpec, Level};
pub use records::{parse_records, Record};

macro_rules! embed {
    ($dir:literal: $($file:literal),* $(,)?) => {
        &[$(($file, include_str!(concat!("../../catalog/", $dir, "/", $file)))),*]
    };
}

pub static ALGEBRA_FILES: &[(&str, &str)] = embed!("algebras":
    "A2.1+A1.alg", "A2.1+A2.1.alg", "A3.1.alg", "A3.4.alg", "A4.1.alg", "A4.8.alg",
    "A4.8m12.alg", "g5.30.alg", "g5.30m2.alg", "g5.alg", "p11.alg", "sl2.alg", "sl2+A1.alg",
);

pub static FAMILY_FILES: &[(&str, &str)] = embed!("families":
    "AbarG1q.fam", "AbarG1qt.fam", "AbarG1qh.fam", "AG1q.fam", "AG1qt.fam", "AG1qh.fam",
);

pub static TABLE_FILES: &[(&str, &str)] = embed!("tables":
    "table2.tbl", "table3.tbl", "table4.tbl", "table5.tbl", "table6.tbl", "table7.tbl", "table8.tbl",
);

pub static CONTRACTION_FILES: &[(&str, &str)] = embed!("contractions":
    "A3.4-A3.1.ctr", "A4.8-A4.1.ctr", "A2.1+A2.1-A4.1.ctr",
);

pub static DEFORMATION_FILES: &[(&str, &str)] = embed!("deformations": "generic.rlz");

pub static MAP_FILES: &[(&str, &str)] = embed!("maps": "isomorphisms.map", "automorphisms.map");

pub static CLAIM_FILES: &[(&str, &str)] = embed!("claims": "equivalences.clm");

pub static EQUATION_FILES: &[(&str, &str)] = embed!("equations":
    "burgers.eq", "kdv.eq", "kdv5.eq", "kawahara.eq", "kdv-var-rho1.eq", "kawahara-var-rho2.eq",
    "kdv5-var-rho1.eq", "gkdv-n2.eq", "gkdv-n3.eq", "reaction-diffusion-1-2.eq",
    "reaction-diffusion-2-3.eq", "diffusion-n1.eq", "diffusion-n2.eq", "ermakov.eq", "kepler.eq",
    "central-force-eps1.eq", "central-force-eps4.eq",
);

/// Galilei families at `n = 1, 2`: the eight names per `n`.
pub fn galilei_names(ns: &[usize]) -> Vec<String> {
    let mut out = Vec::new();
    for &n in ns {
        for k in 1..=4 {
            for reduced in [true, false] {
                let spec = GalileiSpec::new(Level::from_index(k).unwrap(), reduced, n);
                out.push(spec.to_string());
            }
        }
    }
    out
}

/// Names of the algebras stored as files.
pub fn algebra_file_names() -> Vec<String> {
    ALGEBRA_FILES
        .iter()
        .map(|(_, text)| parse_algebra(text).expect("embedded algebra parses").name)
        .collect()
}

/// Deformation families stored as files, plus the `D`-deformed extended
/// algebras at `n = 1, 2, 3`.
pub fn family_names() -> Vec<String> {
    let mut out: Vec<String> = FAMILY_FILES
        .iter()
        .map(|(_, text)| parse_algebra(text).expect("embedded family parses").name)
        .collect();
    for n in 1..=3 {
        out.push(format!("AbarG2q({n})"));
        out.push(format!("AG2q({n})"));
    }
    out
}

fn deformed_name(name: &str) -> Option<(bool, usize)> {
    let (reduced, rest) = match name.strip_prefix("AbarG2q(") {
        Some(r) => (true, r),
        None => (false, name.strip_prefix("AG2q(")?),
    };
    let n: usize = rest.strip_suffix(')')?.parse().ok()?;
    (n >= 1).then_some((reduced, n))
}

/// Look an algebra up by name: files, families, Galilei names such as
/// `AG2(1)`, and deformed extended algebras such as `AbarG2q(2)`.
pub fn algebra(name: &str) -> Result<LieAlgebra> {
    for (_, text) in ALGEBRA_FILES.iter().chain(FAMILY_FILES) {
        let l = parse_algebra(text)?;
        if l.name == name {
            return Ok(l);
        }
    }
    if let Some(spec) = GalileiSpec::parse(name) {
        return galilei_algebra(spec);
    }
    if let Some((reduced, n)) = deformed_name(name) {
        return deformed_extended(reduced, n);
    }
    Err(Error::NotFound(format!("algebra `{name}`")))
}

/// Parse `sym = value, ...` bindings.
pub fn parse_bindings(s: &str) -> Result<HashMap<Symbol, RatExpr>> {
    let mut out = HashMap::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Input(format!("expected `symbol = value`, got `{part}`")))?;
        out.insert(Symbol::new(k.trim()), parse_rat(v.trim())?);
    }
    Ok(out)
}

/// Substitute parameter values into an algebra and drop the bound params.
pub fn bind_algebra(l: &LieAlgebra, b: &HashMap<Symbol, RatExpr>) -> Result<LieAlgebra> {
    if b.is_empty() {
        return Ok(l.clone());
    }
    let mut out = l.map_constants(|c| c.substitute(b))?;
    out.params.retain(|p| !b.contains_key(&p.symbol));
    Ok(out)
}

/// Split `A = x, B = y` at top-level commas into `(label, expression)`.
pub fn parse_assignments(s: &str) -> Result<Vec<(String, String)>> {
    split_top_level(s)
        .into_iter()
        .map(|part| {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Input(format!("expected `name = expression`, got `{part}`")))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

/// Split at commas that are not inside parentheses.
pub fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

/// Matrix whose column `i` holds the coefficients of the `i`-th assignment
/// right-hand side in `basis`, with columns ordered like `order`.
pub fn assignment_matrix(pairs: &[(String, String)], order: &[String], basis: &[String]) -> Result<SymMatrix> {
    let mut cols = Vec::with_capacity(order.len());
    for label in order {
        let (_, rhs) = pairs
            .iter()
            .find(|(k, _)| k == label)
            .ok_or_else(|| Error::Input(format!("no image given for `{label}`")))?;
        cols.push(parse_linear_combination(rhs, basis)?);
    }
    if pairs.len() != order.len() {
        return Err(Error::Input(format!("expected {} images, found {}", order.len(), pairs.len())));
    }
    Ok(SymMatrix::from_cols(cols))
}

// ---------------------------------------------------------------- tables

/// One row of a realization table.
#[derive(Clone, Debug)]
pub struct Row {
    pub id: String,
    pub params: Vec<Param>,
    /// Complement as printed, or `None` for rows given only as fields.
    pub complement: Option<Vec<String>>,
    /// Complement with signs chosen so the pipeline reproduces the row verbatim.
    pub adapted: Option<Vec<String>>,
    pub sub: Vec<String>,
    /// `(base row, parameter)` for rows obtained by promoting a parameter.
    pub promote: Option<(String, String)>,
    pub faithful: bool,
    /// Coordinate change taking the printed-complement output to the row.
    pub map: Option<Vec<String>>,
    pub images: Vec<(String, String)>,
}

#[derive(Clone, Debug)]
pub struct Table {
    pub id: String,
    pub algebra: String,
    pub title: String,
    pub rows: Vec<Row>,
}

fn list(s: &str) -> Vec<String> {
    split_top_level(s).into_iter().filter(|x| !x.is_empty()).collect()
}

pub fn parse_table(text: &str) -> Result<Table> {
    let (pre, recs) = parse_records(text, "row")?;
    let id = pre.require("table")?.to_string();
    let algebra = pre.require("algebra")?.to_string();
    let title = pre.comments.first().cloned().unwrap_or_default();
    let mut rows = Vec::new();
    for r in recs {
        let params = r
            .get_all("param")
            .into_iter()
            .map(|v| {
                let (sym, range) = match v.split_once(char::is_whitespace) {
                    Some((s, rg)) => (s, Some(rg.trim().to_string())),
                    None => (v, None),
                };
                Param { symbol: Symbol::new(sym), range }
            })
            .collect();
        let promote = match r.get("promote") {
            Some(p) => {
                let (b, s) = p
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| r.error("promote needs `<row> <parameter>`"))?;
                Some((b.trim().to_string(), s.trim().to_string()))
            }
            None => None,
        };
        let faithful = match r.get("faithful") {
            Some("yes") => true,
            Some("no") => false,
            _ => return Err(r.error("faithful must be `yes` or `no`")),
        };
        let mut images = Vec::new();
        for line in &r.body {
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| r.error(&format!("cannot read `{line}`")))?;
            images.push((k.trim().to_string(), v.trim().to_string()));
        }
        rows.push(Row {
            id: r.head.clone(),
            params,
            complement: r.get("complement").map(list),
            adapted: r.get("adapted-complement").map(list),
            sub: r.get("subalgebra").map(list).unwrap_or_default(),
            promote,
            faithful,
            map: r.get("map").map(list),
            images,
        });
    }
    Ok(Table { id, algebra, title, rows })
}

pub fn tables() -> Result<Vec<Table>> {
    TABLE_FILES.iter().map(|(_, t)| parse_table(t)).collect()
}

pub fn table(id: &str) -> Result<Table> {
    tables()?
        .into_iter()
        .find(|t| t.id == id)
        .ok_or_else(|| Error::NotFound(format!("table `{id}`")))
}

/// A table row resolved against its algebra.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub id: String,
    pub table: String,
    pub algebra: LieAlgebra,
    pub row: Row,
    /// Realization as printed in the table.
    pub realization: Realization,
    /// Splitting from the printed complement (inherited by promoted rows).
    pub splitting: Option<Splitting>,
    /// Splitting from the adapted complement, if any.
    pub adapted: Option<Splitting>,
    /// Parameter promoted to a new coordinate.
    pub promoted: Option<Symbol>,
    pub map: Option<CoordinateMap>,
}

fn vectors(l: &LieAlgebra, items: &[String]) -> Result<Vec<Vector>> {
    items.iter().map(|s| l.parse_vector(s)).collect()
}

/// Largest `k` with `x<k>` or `d<k>` in the text.
fn max_index(s: &str) -> usize {
    let b = s.as_bytes();
    let mut best = 0;
    let mut i = 0;
    while i < b.len() {
        let boundary = i == 0 || !(b[i - 1].is_ascii_alphanumeric() || b[i - 1] == b'_');
        if boundary && (b[i] == b'x' || b[i] == b'd') {
            let mut j = i + 1;
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
            }
            let word_end = j == b.len() || !(b[j].is_ascii_alphanumeric() || b[j] == b'_');
            if j > i + 1 && word_end {
                best = best.max(s[i + 1..j].parse().unwrap_or(0));
            }
            i = j;
        } else {
            i += 1;
        }
    }
    best
}

/// Parse `label = Σ c_k*dk` lines into a realization on `m` coordinates.
pub fn parse_realization(l: &LieAlgebra, images: &[(String, String)], m: usize, provenance: &str) -> Result<Realization> {
    let ds: Vec<String> = (1..=m).map(|k| format!("d{k}")).collect();
    let mut out = vec![None; l.dim()];
    for (label, rhs) in images {
        let b = l
            .index(label)
            .ok_or_else(|| Error::Input(format!("`{label}` is not a basis element of {}", l.name)))?;
        let coeffs = parse_linear_combination(rhs, &ds)?;
        for c in &coeffs {
            if c.symbols().iter().any(|s| s.coord_index().is_some_and(|k| k > m)) {
                return Err(Error::Input(format!("`{rhs}` uses a coordinate beyond x{m}")));
            }
        }
        if out[b].replace(coeffs).is_some() {
            return Err(Error::Input(format!("`{label}` is given twice")));
        }
    }
    let images = out
        .into_iter()
        .enumerate()
        .map(|(b, v)| v.ok_or_else(|| Error::Input(format!("no image given for `{}`", l.basis[b]))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Realization { labels: l.basis.clone(), m, images, provenance: provenance.into(), notes: vec![] })
}

fn coordinate_map(items: &[String], inverse: Option<&[String]>) -> Result<CoordinateMap> {
    let images = items.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>()?;
    let inverse = match inverse {
        Some(inv) => Some(inv.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>()?),
        None => None,
    };
    Ok(CoordinateMap { m: images.len(), images, inverse })
}

/// Resolve `tableN/<row>`; `tableN/generic` names the row `h0`.
pub fn load_fixture(id: &str) -> Result<Fixture> {
    let (tid, rid) = id
        .split_once('/')
        .ok_or_else(|| Error::Input(format!("fixture id `{id}` must look like table2/h1.1")))?;
    let t = table(tid)?;
    let rid = if rid == "generic" { "h0" } else { rid };
    fixture_in(&t, rid)
}

pub fn fixture_in(t: &Table, rid: &str) -> Result<Fixture> {
    let row = t
        .rows
        .iter()
        .find(|r| r.id == rid)
        .ok_or_else(|| Error::NotFound(format!("fixture `{}/{rid}`", t.id)))?
        .clone();
    let l = algebra(&t.algebra)?;
    let id = format!("{}/{}", t.id, row.id);
    let ctx = |e: Error| Error::Input(format!("{id}: {e}"));
    let (base, promoted) = match &row.promote {
        Some((b, p)) => {
            let base = t
                .rows
                .iter()
                .find(|r| &r.id == b)
                .ok_or_else(|| Error::NotFound(format!("base row `{b}` of {id}")))?
                .clone();
            (base, Some(Symbol::new(p)))
        }
        None => (row.clone(), None),
    };
    let splitting = match &base.complement {
        Some(c) => Some(Splitting { complement: vectors(&l, c).map_err(ctx)?, sub: vectors(&l, &base.sub).map_err(ctx)? }),
        None => None,
    };
    let adapted = match &base.adapted {
        Some(c) => Some(Splitting { complement: vectors(&l, c).map_err(ctx)?, sub: vectors(&l, &base.sub).map_err(ctx)? }),
        None => None,
    };
    let m = match &splitting {
        Some(s) => s.complement.len() + usize::from(promoted.is_some()),
        None => row.images.iter().map(|(_, v)| max_index(v)).max().unwrap_or(0),
    };
    let realization = parse_realization(&l, &row.images, m, "table").map_err(ctx)?;
    let map = match &base.map {
        Some(items) => {
            let mut items = items.clone();
            if promoted.is_some() {
                items.push(format!("x{m}"));
            }
            Some(coordinate_map(&items, None).map_err(ctx)?)
        }
        None => None,
    };
    Ok(Fixture { id, table: t.id.clone(), algebra: l, row, realization, splitting, adapted, promoted, map })
}

pub fn all_fixtures() -> Result<Vec<Fixture>> {
    let mut out = Vec::new();
    for t in tables()? {
        for r in &t.rows {
            out.push(fixture_in(&t, &r.id)?);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------- claims

/// A stated equivalence between two table rows.
#[derive(Clone, Debug)]
pub struct Claim {
    pub id: String,
    pub from: String,
    pub to: String,
    pub bind_from: HashMap<Symbol, RatExpr>,
    pub bind_to: HashMap<Symbol, RatExpr>,
    pub basis: Vec<(String, String)>,
    pub map: CoordinateMap,
    pub origin: String,
}

pub fn claims() -> Result<Vec<Claim>> {
    let mut out = Vec::new();
    for (_, text) in CLAIM_FILES {
        let (_, recs) = parse_records(text, "claim")?;
        for r in recs {
            let map_items = list(r.require("map")?);
            let inv = r.get("inverse").map(list);
            out.push(Claim {
                id: r.head.clone(),
                from: r.require("from")?.to_string(),
                to: r.require("to")?.to_string(),
                bind_from: parse_bindings(r.get("bind").unwrap_or(""))?,
                bind_to: parse_bindings(r.get("bind-to").unwrap_or(""))?,
                basis: parse_assignments(r.require("basis")?)?,
                map: coordinate_map(&map_items, inv.as_deref())?,
                origin: r.get("origin").unwrap_or("stated").to_string(),
            });
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------- maps

/// An isomorphism or automorphism given by basis images.
#[derive(Clone, Debug)]
pub struct BasisMap {
    pub id: String,
    pub kind: String,
    pub source: String,
    pub target: String,
    pub bind: HashMap<Symbol, RatExpr>,
    /// Columns are images of the source basis (in source order) written in
    /// the target basis.
    pub matrix: SymMatrix,
    pub expect_fail: bool,
    pub note: String,
}

pub fn basis_maps() -> Result<Vec<BasisMap>> {
    let mut out = Vec::new();
    for (_, text) in MAP_FILES {
        let (_, recs) = parse_records(text, "map")?;
        for r in recs {
            out.push(parse_basis_map(&r)?);
        }
    }
    Ok(out)
}

fn parse_basis_map(r: &Record) -> Result<BasisMap> {
    let source = r.require("source")?.to_string();
    let target = r.get("target").unwrap_or(&source).to_string();
    let bind = parse_bindings(r.get("bind").unwrap_or(""))?;
    let src = algebra(&source)?;
    let tgt = algebra(&target)?;
    let matrix = if r.get("matrix").is_some() {
        let order = list(r.require("basis")?);
        let pos: Vec<usize> = order
            .iter()
            .map(|b| src.index(b).ok_or_else(|| r.error(&format!("`{b}` is not in {}", src.name))))
            .collect::<Result<_>>()?;
        if pos.len() != src.dim() {
            return Err(r.error("`basis:` must list every source basis element"));
        }
        let rows: Vec<Vec<RatExpr>> = r
            .body
            .iter()
            .map(|line| list(line).iter().map(|e| parse_rat(e)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let m = SymMatrix::from_rows(rows);
        let m = match r.get("orientation").unwrap_or("rows") {
            "rows" => m.transpose(),
            "columns" => m,
            o => return Err(r.error(&format!("unknown orientation `{o}`"))),
        };
        if m.rows() != pos.len() || m.cols() != pos.len() {
            return Err(r.error("matrix size does not match the basis"));
        }
        let mut out = SymMatrix::zeros(pos.len(), pos.len());
        for (i, &pi) in pos.iter().enumerate() {
            for (j, &pj) in pos.iter().enumerate() {
                out.set(pi, pj, m.get(i, j).clone());
            }
        }
        out
    } else {
        let pairs: Vec<(String, String)> = r
            .body
            .iter()
            .map(|l| {
                let (k, v) = l.split_once('=').ok_or_else(|| r.error(&format!("cannot read `{l}`")))?;
                Ok((k.trim().to_string(), v.trim().to_string()))
            })
            .collect::<Result<_>>()?;
        assignment_matrix(&pairs, &src.basis, &tgt.basis)?
    };
    Ok(BasisMap {
        id: r.head.clone(),
        kind: r.require("kind")?.to_string(),
        source,
        target,
        bind,
        matrix,
        expect_fail: r.get("expect") == Some("fails"),
        note: r.comments.join(" "),
    })
}

impl BasisMap {
    /// Whether the map preserves brackets exactly.
    pub fn holds(&self) -> Result<bool> {
        let src = algebra(&self.source)?;
        let tgt = bind_algebra(&algebra(&self.target)?, &self.bind)?;
        let src = if self.source == self.target { tgt.clone() } else { bind_algebra(&src, &self.bind)? };
        if self.matrix.det().is_zero() {
            return Ok(false);
        }
        Ok(src.is_homomorphism_to(&tgt, &self.matrix))
    }
}

// ---------------------------------------------------------------- contractions

#[derive(Clone, Debug)]
pub struct ContractionSpec {
    pub name: String,
    pub source: String,
    pub parameter: Symbol,
    pub family: String,
    /// Columns are the contracted basis vectors `f_i` in the source basis.
    pub matrix: SymMatrix,
    /// Family labels as combinations of the `f_i`.
    pub labels: Vec<(String, String)>,
}

pub fn contractions() -> Result<Vec<ContractionSpec>> {
    CONTRACTION_FILES.iter().map(|(_, t)| parse_contraction(t)).collect()
}

pub fn contraction(name: &str) -> Result<ContractionSpec> {
    contractions()?
        .into_iter()
        .find(|c| c.name == name)
        .ok_or_else(|| Error::NotFound(format!("contraction `{name}`")))
}

pub fn parse_contraction(text: &str) -> Result<ContractionSpec> {
    let (pre, recs) = parse_records(text, "matrix")?;
    let rec = recs.into_iter().next().ok_or_else(|| Error::Input("missing `matrix:` block".into()))?;
    let rows: Vec<Vec<RatExpr>> = rec
        .body
        .iter()
        .map(|line| list(line).iter().map(|e| parse_rat(e)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let m = SymMatrix::from_rows(rows);
    let matrix = match pre.get("orientation").unwrap_or("rows") {
        "rows" => m.transpose(),
        "columns" => m,
        o => return Err(Error::Input(format!("unknown orientation `{o}`"))),
    };
    Ok(ContractionSpec {
        name: pre.require("name")?.to_string(),
        source: pre.require("source")?.to_string(),
        parameter: Symbol::new(pre.require("parameter")?),
        family: pre.require("family")?.to_string(),
        matrix,
        labels: parse_assignments(pre.require("labels")?)?,
    })
}

// ---------------------------------------------------------------- deformed realizations

/// A printed generic realization of a deformed algebra.
#[derive(Clone, Debug)]
pub struct DeformedRealization {
    pub id: String,
    pub algebra: LieAlgebra,
    /// Labels of the ordered complement used by the pipeline.
    pub complement: Vec<String>,
    pub realization: Realization,
    /// The printed form is known not to satisfy the relations.
    pub expect_fail: bool,
    pub note: String,
}

pub fn deformed_realizations() -> Result<Vec<DeformedRealization>> {
    let mut out = Vec::new();
    for (_, text) in DEFORMATION_FILES {
        let (_, recs) = parse_records(text, "realization")?;
        for r in recs {
            let l = algebra(r.require("algebra")?)?;
            let complement = list(r.require("complement")?);
            let images: Vec<(String, String)> = r
                .body
                .iter()
                .map(|line| {
                    let (k, v) = line.split_once('=').ok_or_else(|| r.error(&format!("cannot read `{line}`")))?;
                    Ok((k.trim().to_string(), v.trim().to_string()))
                })
                .collect::<Result<_>>()?;
            let realization = parse_realization(&l, &images, complement.len(), "printed")
                .map_err(|e| r.error(&e.to_string()))?;
            out.push(DeformedRealization {
                id: r.head.clone(),
                algebra: l,
                complement,
                realization,
                expect_fail: r.get("expect") == Some("fails"),
                note: r.comments.join(" "),
            });
        }
    }
    Ok(out)
}

pub fn equation_text(name: &str) -> Result<&'static str> {
    EQUATION_FILES
        .iter()
        .find(|(f, _)| f.strip_suffix(".eq") == Some(name))
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::NotFound(format!("equation `{name}`")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_embedded_algebra_loads() {
        for n in algebra_file_names().into_iter().chain(family_names()).chain(galilei_names(&[1, 2])) {
            assert!(algebra(&n).is_ok(), "{n}");
        }
        assert!(matches!(algebra("nope"), Err(Error::NotFound(_))));
    }

    #[test]
    fn fixture_lookup() {
        let f = load_fixture("table2/generic").unwrap();
        assert_eq!(f.id, "table2/h0");
        assert_eq!(f.algebra.name, "AbarG1(1)");
        assert_eq!(f.realization.m, 3);
        let s = load_fixture("table8/h2.4").unwrap();
        let img = s.realization.image("S").unwrap();
        let shown: Vec<String> = img.iter().map(|c| c.to_string()).collect();
        assert_eq!(shown, ["x1^2", "x1", "exp(2*x2)"]);
        assert!(matches!(load_fixture("table2/h9.9"), Err(Error::NotFound(_))));
        assert!(load_fixture("bogus").is_err());
    }

    #[test]
    fn promoted_rows_gain_a_coordinate() {
        let f = load_fixture("table2/h1.2^x3").unwrap();
        assert_eq!(f.realization.m, 3);
        assert_eq!(f.promoted, Some(Symbol::new("alpha")));
    }

    #[test]
    fn coordinate_indices() {
        assert_eq!(max_index("x2*d1 + exp(x4)*d3"), 4);
        assert_eq!(max_index("d10 + max1"), 10);
        assert_eq!(max_index("0"), 0);
    }

    #[test]
    fn all_data_parses() {
        assert!(all_fixtures().unwrap().len() >= 100);
        assert!(!claims().unwrap().is_empty());
        assert!(!basis_maps().unwrap().is_empty());
        assert_eq!(contractions().unwrap().len(), 3);
        assert_eq!(deformed_realizations().unwrap().len(), 5);
    }
}
