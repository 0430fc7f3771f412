//! `foldtile` command-line front end for the dihedral f-tiling classifier.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context as _, Result};
use clap::{Parser, Subcommand, ValueEnum};

use foldtile_core::report::{self, Method, TablesDocument};
use foldtile_core::selftest;
use foldtile_core::{Base, EdgeClass};

#[derive(Parser)]
#[command(name = "foldtile", version, about = "Dihedral f-tilings of the sphere from the (2,3,4) triangle")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one (base, edge class) case and write its JSON document.
    Enumerate {
        #[arg(long, value_enum)]
        base: BaseArg,
        #[arg(long, value_enum)]
        edge: EdgeArg,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
        /// Output path; `-` for stdout.
        #[arg(long)]
        out: PathBuf,
    },
    /// All six cases as one CSV or JSON table.
    Tables {
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a record (e.g. `BO-c-12`) as SVG.
    Render {
        #[arg(long)]
        record: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the acceptance criteria.
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum BaseArg {
    Bo,
    Fbo,
}

#[derive(Clone, Copy, ValueEnum)]
enum EdgeArg {
    A,
    B,
    C,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Symmetry,
    Graphiso,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl From<BaseArg> for Base {
    fn from(b: BaseArg) -> Self {
        match b {
            BaseArg::Bo => Base::BO,
            BaseArg::Fbo => Base::FBO,
        }
    }
}

impl From<EdgeArg> for EdgeClass {
    fn from(e: EdgeArg) -> Self {
        match e {
            EdgeArg::A => EdgeClass::A,
            EdgeArg::B => EdgeClass::B,
            EdgeArg::C => EdgeClass::C,
        }
    }
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Symmetry => Method::Symmetry,
            MethodArg::Graphiso => Method::Graphiso,
            MethodArg::Both => Method::Both,
        }
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        None => print!("{text}"),
        Some(p) if p == Path::new("-") => print!("{text}"),
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Enumerate { base, edge, method, out } => {
            let c = report::run_classification(base.into(), edge.into(), method.into())?;
            let s = &c.summary;
            eprintln!(
                "{}-{}: {} units, {} parity solutions, {} valid, {} classes ({} before dropping monohedral)",
                s.base, s.edge_class, s.units, s.raw, s.valid, s.classes, s.classes_unfiltered
            );
            write_out(Some(&out), &(TablesDocument::new(vec![c]).to_json()? + "\n"))
        }
        Command::Tables { format, out } => {
            let doc = report::run_all(Method::Both)?;
            let text = match format {
                Format::Json => doc.to_json()? + "\n",
                Format::Csv => report::tables_csv(&doc)?,
            };
            write_out(out.as_deref(), &text)
        }
        Command::Render { record, out } => {
            let r = report::find_record(&record)?;
            let svg = report::render_record(&r)?;
            write_out(Some(&out), &svg)?;
            eprintln!("{}: {} {}|{} → {}", r.id, r.group, r.n_triangle, r.n_second, out.display());
            Ok(())
        }
        Command::Selftest => {
            let ctx = selftest::Context::compute()?;
            let outcomes = selftest::run_all(&ctx);
            for o in &outcomes {
                println!("{o}");
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            if failed > 0 {
                bail!("{failed} of {} criteria failed", outcomes.len());
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
