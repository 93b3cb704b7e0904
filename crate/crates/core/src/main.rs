use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use galreal::catalog::suite::{run_suite, Report};
use galreal::catalog::{self, algebra, parse_bindings, parse_contraction, tables};
use galreal::deform::{self, DeformationFamily};
use galreal::jets::{self, parse_equation_file};
use galreal::liealg::{parse_algebra, LieAlgebra};
use galreal::render::{algebra_lines, realization_lines, Format};
use galreal::shirokov::{promote_parameter, realize, Splitting};
use galreal::verify::check_relations;
use galreal::{Error, Result};

#[derive(Parser)]
#[command(name = "galreal", version, about = "Exact realizations of low-dimensional Galilei algebras")]
struct Cli {
    /// Write a machine-readable summary to this file.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Jacobi identity and print the adjoint matrices.
    Check {
        /// Algebra file or catalog name.
        algebra: String,
    },
    /// Realize an algebra relative to a splitting `complement ; subalgebra`.
    Realize {
        algebra: String,
        /// For example `P, G ; T + alpha*G`; `generic` uses the whole basis.
        splitting: String,
        /// Replace this parameter by a new coordinate.
        #[arg(long)]
        promote: Option<String>,
        #[arg(long)]
        latex: bool,
    },
    /// Run the table regression for `all`, a table, or a fixture id.
    Verify { selector: String },
    /// Show a deformation family or apply a contraction; `all` runs every check.
    Deform {
        name: String,
        /// Take the limit as the deformation parameter goes to zero.
        #[arg(long, conflicts_with = "at")]
        limit: bool,
        /// Specialize, for example `q=1` or `q=1,beta=-1/2`.
        #[arg(long)]
        at: Option<String>,
    },
    /// Check point symmetries of an equation file, a catalog equation, or `all`.
    Symmetry { equation: String },
    /// Print every realization table.
    Tables {
        #[arg(long)]
        latex: bool,
    },
}

/// Outcome of a command: printed text and whether every check passed.
struct Outcome {
    text: String,
    report: Report,
}

impl Outcome {
    fn plain(text: String) -> Self {
        Outcome { text, report: Report::default() }
    }
}

fn load_algebra(arg: &str) -> Result<LieAlgebra> {
    let p = Path::new(arg);
    if p.is_file() {
        let text = std::fs::read_to_string(p).map_err(|e| Error::Input(format!("{arg}: {e}")))?;
        return parse_algebra(&text);
    }
    algebra(arg)
}

fn cmd_check(name: &str) -> Result<Outcome> {
    let l = load_algebra(name)?;
    let mut rep = Report::default();
    let j = l.jacobi_check();
    let detail = j
        .violations
        .iter()
        .map(|(i, k, m, _)| format!("({}, {}, {})", l.basis[*i], l.basis[*k], l.basis[*m]))
        .collect::<Vec<_>>()
        .join(" ");
    rep.push(&l.name, "jacobi", j.holds, detail);
    let mut text = format!("{} (dim {})\n", l.name, l.dim());
    for line in algebra_lines(&l, Format::Plain) {
        text.push_str(&format!("  {line}\n"));
    }
    for i in 0..l.dim() {
        text.push_str(&format!("ad {}:\n", l.basis[i]));
        let ad = l.adjoint(&l.unit(i));
        for r in 0..ad.rows() {
            let row: Vec<String> = ad.row(r).iter().map(|c| c.to_string()).collect();
            text.push_str(&format!("  [{}]\n", row.join(", ")));
        }
    }
    Ok(Outcome { text, report: rep })
}

fn cmd_realize(name: &str, split: &str, promote: Option<&str>, latex: bool) -> Result<Outcome> {
    let l = load_algebra(name)?;
    let sp = Splitting::parse(&l, split)?;
    let mut r = realize(&l, &sp)?;
    let mut text = String::new();
    if let Some(p) = promote {
        let sym = galreal::expr::Symbol::new(p);
        let range = l.params.iter().find(|x| x.symbol == sym).and_then(|x| x.range.as_deref());
        let (pr, warn) = promote_parameter(&r, &sym, range);
        if let Some(w) = warn {
            text.push_str(&format!("warning: {w}\n"));
        }
        r = pr;
    }
    let fmt = if latex { Format::Latex } else { Format::Plain };
    for line in realization_lines(&r, fmt) {
        text.push_str(&line);
        text.push('\n');
    }
    for n in &r.notes {
        text.push_str(&format!("note: {n}\n"));
    }
    let mut rep = Report::default();
    let check = check_relations(&l, &r);
    rep.push(&l.name, "relations", check.ok, format!("{} failing pairs", check.failures.len()));
    Ok(Outcome { text, report: rep })
}

fn cmd_verify(selector: &str) -> Result<Outcome> {
    let report = run_suite(selector)?;
    Ok(Outcome { text: String::new(), report })
}

fn cmd_deform(name: &str, limit: bool, at: Option<&str>) -> Result<Outcome> {
    if name == "all" {
        return Ok(Outcome { text: String::new(), report: deform::deformation_report()? });
    }
    let mut rep = Report::default();
    let family = if let Ok(spec) = catalog::contraction(name) {
        from_contraction(&spec, &mut rep)?
    } else if Path::new(name).is_file() {
        let text = std::fs::read_to_string(name).map_err(|e| Error::Input(format!("{name}: {e}")))?;
        match parse_contraction(&text) {
            Ok(spec) => from_contraction(&spec, &mut rep)?,
            Err(_) => DeformationFamily::from_algebra(parse_algebra(&text)?)?,
        }
    } else {
        DeformationFamily::from_algebra(algebra(name)?)?
    };
    let out = if limit {
        deform::contraction_limit(&family.algebra, &family.q)?
    } else if let Some(b) = at {
        deform::specialize(&family.algebra, &parse_bindings(b)?)?
    } else {
        family.algebra.clone()
    };
    let j = out.jacobi_check();
    rep.push(&out.name, "jacobi", j.holds, "");
    let mut text = format!("{} basis: {}\n", out.name, out.basis.join(", "));
    if family.rational {
        text.push_str(&format!("note: constants are rational in {}\n", family.q));
    }
    for line in algebra_lines(&out, Format::Plain) {
        text.push_str(&line);
        text.push('\n');
    }
    Ok(Outcome { text, report: rep })
}

fn from_contraction(spec: &catalog::ContractionSpec, rep: &mut Report) -> Result<DeformationFamily> {
    let src = algebra(&spec.source)?;
    match algebra(&spec.family) {
        Ok(fam) => {
            let f = deform::apply_contraction(spec, &src, &fam.basis)?;
            rep.push(&spec.name, "reproduces-family", f.algebra.same_constants(&fam), spec.family.clone());
            Ok(f)
        }
        Err(_) => deform::deform_via_contraction(&src, &spec.matrix, &spec.parameter),
    }
}

fn cmd_symmetry(arg: &str) -> Result<Outcome> {
    let report = if arg == "all" {
        jets::symmetry_suite()?
    } else if Path::new(arg).is_file() {
        let text = std::fs::read_to_string(arg).map_err(|e| Error::Input(format!("{arg}: {e}")))?;
        parse_equation_file(&text)?.report()
    } else {
        jets::symmetry_report(arg)?
    };
    Ok(Outcome { text: String::new(), report })
}

fn cmd_tables(latex: bool) -> Result<Outcome> {
    let fmt = if latex { Format::Latex } else { Format::Plain };
    let mut text = String::new();
    for t in tables()? {
        text.push_str(&format!("== {} ({}) {}\n", t.id, t.algebra, t.title));
        for row in &t.rows {
            let f = catalog::fixture_in(&t, &row.id)?;
            let sub = if row.sub.is_empty() { "0".to_string() } else { row.sub.join(", ") };
            text.push_str(&format!("-- {} <{}>{}\n", row.id, sub, if row.faithful { "" } else { " unfaithful" }));
            for line in realization_lines(&f.realization, fmt) {
                text.push_str(&format!("   {line}\n"));
            }
        }
    }
    Ok(Outcome::plain(text))
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Check { algebra } => cmd_check(algebra),
        Command::Realize { algebra, splitting, promote, latex } => {
            cmd_realize(algebra, splitting, promote.as_deref(), *latex)
        }
        Command::Verify { selector } => cmd_verify(selector),
        Command::Deform { name, limit, at } => cmd_deform(name, *limit, at.as_deref()),
        Command::Symmetry { equation } => cmd_symmetry(equation),
        Command::Tables { latex } => cmd_tables(*latex),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut stdout = std::io::stdout().lock();
    let mut body = out.text.clone();
    body.push_str(&out.report.text());
    if !out.report.lines.is_empty() {
        body.push_str(&out.report.summary());
    }
    // A closed pipe (for example `| head`) is not an error.
    let _ = stdout.write_all(body.as_bytes());
    if let Some(path) = &cli.report {
        let body = format!("{}{}", out.report.summary(), out.report.text());
        if let Err(e) = std::fs::write(path, body) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if out.report.ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
