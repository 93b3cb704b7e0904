//! Browser bindings: check an algebra, realize it, and deform it.
//!
//! Every entry point takes either a catalog name or the text of an algebra file
//! and returns plain text, or an error message.

use galreal::catalog::{algebra, algebra_file_names, family_names, galilei_names, parse_bindings};
use galreal::deform::{contraction_limit, specialize, DeformationFamily};
use galreal::liealg::{parse_algebra, LieAlgebra};
use galreal::render::{algebra_lines, realization_lines, Format};
use galreal::shirokov::{realize as realize_split, Splitting};
use galreal::verify::check_relations;
use wasm_bindgen::prelude::*;

fn load(input: &str) -> Result<LieAlgebra, String> {
    let r = if input.contains('\n') { parse_algebra(input) } else { algebra(input.trim()) };
    r.map_err(|e| e.to_string())
}

fn format(latex: bool) -> Format {
    if latex {
        Format::Latex
    } else {
        Format::Plain
    }
}

/// Catalog algebra names, one per line.
#[wasm_bindgen]
pub fn catalog() -> String {
    let mut names = algebra_file_names();
    names.extend(galilei_names(&[1, 2]));
    names.extend(family_names());
    names.join("\n")
}

/// Brackets and the Jacobi verdict.
#[wasm_bindgen]
pub fn check(input: &str) -> Result<String, String> {
    let l = load(input)?;
    let j = l.jacobi_check();
    let mut out = algebra_lines(&l, Format::Plain).join("\n");
    out.push_str(&format!(
        "\njacobi: {}\n",
        if j.holds { "holds".to_string() } else { format!("{} violations", j.violations.len()) }
    ));
    Ok(out)
}

/// Vector fields for a splitting `complement ; subalgebra` or `generic`.
#[wasm_bindgen]
pub fn realize(input: &str, splitting: &str, latex: bool) -> Result<String, String> {
    let l = load(input)?;
    let sp = Splitting::parse(&l, splitting).map_err(|e| e.to_string())?;
    let r = realize_split(&l, &sp).map_err(|e| e.to_string())?;
    let mut out = realization_lines(&r, format(latex)).join("\n");
    for n in &r.notes {
        out.push_str(&format!("\nnote: {n}"));
    }
    let c = check_relations(&l, &r);
    out.push_str(&format!(
        "\nrelations: {}\n",
        if c.ok { "hold".to_string() } else { format!("{} failing pairs", c.failures.len()) }
    ));
    Ok(out)
}

/// A deformation family as given, its limit (`mode = "limit"`), or a specialization such as `q=1`.
#[wasm_bindgen]
pub fn deform(input: &str, mode: &str) -> Result<String, String> {
    let f = DeformationFamily::from_algebra(load(input)?).map_err(|e| e.to_string())?;
    let mode = mode.trim();
    let l = match mode {
        "" => Ok(f.algebra.clone()),
        "limit" => contraction_limit(&f.algebra, &f.q),
        b => parse_bindings(b).and_then(|m| specialize(&f.algebra, &m)),
    }
    .map_err(|e| e.to_string())?;
    let mut out = format!("{} basis: {}\n", l.name, l.basis.join(", "));
    out.push_str(&algebra_lines(&l, Format::Plain).join("\n"));
    out.push_str(&format!("\njacobi: {}\n", if l.jacobi_check().holds { "holds" } else { "fails" }));
    Ok(out)
}
