//! One PASS/FAIL line per acceptance criterion, with pinned runtime limits.
//! Runs without the test harness so the lines are never captured.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use galreal::catalog::suite::{claims_report, maps_report, run_suite, Report};
use galreal::catalog::{algebra, algebra_file_names, basis_maps, family_names, galilei_names};
use galreal::deform::deformation_report;
use galreal::jets::symmetry_suite;

const TABLES: [&str; 5] = ["table2", "table4", "table6", "table7", "table8"];

struct Outcome {
    pass: bool,
    detail: String,
}

fn criterion(n: u32, name: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    let pass = out.pass && took < limit;
    println!(
        "{} criterion {n} {name}: {}; {:.2} s (limit {} s)",
        if pass { "PASS" } else { "FAIL" },
        out.detail,
        took.as_secs_f64(),
        limit.as_secs()
    );
    pass
}

fn lines_ok(rep: &Report, checks: &[&str]) -> (usize, Vec<String>) {
    let sel: Vec<_> = rep.lines.iter().filter(|l| checks.contains(&l.check)).collect();
    let bad = sel.iter().filter(|l| !l.pass).map(|l| format!("{} {}", l.subject, l.check)).collect();
    (sel.len(), bad)
}

fn table_report() -> Report {
    let mut rep = Report::default();
    for t in TABLES {
        rep.extend(run_suite(t).expect("table loads"));
    }
    rep
}

fn jacobi_suite() -> Outcome {
    let names: Vec<String> = algebra_file_names().into_iter().chain(galilei_names(&[1, 2])).chain(family_names()).collect();
    let bad: Vec<String> = names.iter().filter(|n| !algebra(n).unwrap().jacobi_check().holds).cloned().collect();
    Outcome { pass: bad.is_empty() && names.len() >= 40, detail: format!("{} algebras, failing {:?}", names.len(), bad) }
}

fn table_regression() -> Outcome {
    let rep = table_report();
    let (rows, bad) = lines_ok(&rep, &["relations", "faithful-flag", "kernel-is-largest-ideal"]);
    let realized = rep.lines.iter().filter(|l| l.check == "relations").count();
    Outcome { pass: bad.is_empty() && realized >= 60, detail: format!("{realized} rows, {rows} checks, failing {bad:?}") }
}

fn regeneration(rep: &Report) -> Outcome {
    let checks = [
        "regenerate-relations",
        "regenerate-kernel",
        "verbatim",
        "adapted-verbatim",
        "exact",
        "adapted-exact",
        "match-via-map",
        "regenerate",
    ];
    let (n, mut bad) = lines_ok(rep, &checks);
    let generic = rep.lines.iter().filter(|l| l.check.ends_with("verbatim") && l.pass).count();
    let extra = claims_report().unwrap();
    let maps = maps_report().unwrap();
    bad.extend(extra.lines.iter().chain(&maps.lines).filter(|l| !l.pass).map(|l| l.subject.clone()));
    Outcome {
        pass: bad.is_empty() && generic >= 5,
        detail: format!(
            "{n} checks, {generic} generic rows byte-identical, {} claims, {} maps, failing {bad:?}",
            extra.lines.len(),
            maps.lines.len()
        ),
    }
}

fn duality_and_shift(rep: &Report) -> Outcome {
    let (n, bad) = lines_ok(rep, &["duality", "shift"]);
    Outcome { pass: bad.is_empty() && n > 0, detail: format!("{n} checks, failing {bad:?}") }
}

fn deformation_suite() -> Outcome {
    let rep = deformation_report().unwrap();
    let certificates = rep.lines.iter().filter(|l| l.check == "brackets-preserved").count();
    let limits = basis_maps()
        .unwrap()
        .into_iter()
        .filter(|m| ["AbarG1(1)", "AG1(1)"].contains(&m.source.as_str()) && ["A3.1", "A4.1"].contains(&m.target.as_str()))
        .all(|m| m.holds().unwrap());
    let bad: Vec<String> = rep.lines.iter().filter(|l| !l.pass).map(|l| format!("{} {}", l.subject, l.check)).collect();
    Outcome {
        pass: bad.is_empty() && certificates >= 2 && limits,
        detail: format!("{} checks, {certificates} certificates, limits identified: {limits}, failing {bad:?}", rep.lines.len()),
    }
}

fn symmetry() -> Outcome {
    let rep = symmetry_suite().unwrap();
    let structure = rep.lines.iter().filter(|l| l.check == "structure-constants").count();
    let bad: Vec<String> = rep.lines.iter().filter(|l| !l.pass).map(|l| format!("{} {}", l.subject, l.check)).collect();
    Outcome {
        pass: bad.is_empty() && structure >= 17,
        detail: format!("{} checks, {structure} algebras identified, failing {bad:?}", rep.lines.len()),
    }
}

fn properties() -> Outcome {
    let mut bad = Vec::new();
    let all = common::all();
    for (name, f) in &all {
        if let Err(e) = f() {
            bad.push(format!("{name}: {e}"));
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("{} properties x {} cases, failing {bad:?}", all.len(), common::CASES),
    }
}

fn main() -> ExitCode {
    let s = Duration::from_secs;
    let mut ok = true;
    ok &= criterion(1, "jacobi-suite", s(5), jacobi_suite);
    ok &= criterion(2, "table-regression", s(30), table_regression);
    let shared = table_report();
    ok &= criterion(3, "pipeline-regeneration", s(60), || regeneration(&shared));
    ok &= criterion(4, "duality-and-shift", s(60), || duality_and_shift(&shared));
    ok &= criterion(5, "deformation-suite", s(10), deformation_suite);
    ok &= criterion(6, "symmetry-suite", s(60), symmetry);
    ok &= criterion(7, "property-tests", s(60), properties);
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
