//! The `eulerlab` command line: polytope generation and I/O, Euler checks,
//! flag-counting proof runs and Schlegel diagram output.
//!
//! Exit codes: 0 when every check passes, 1 when an identity or a general
//! position check fails, 2 for usage and input errors.

mod document;
mod report;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use eulerlab::euler::{euler_alternating_sum, f_vector};
use eulerlab::polytope::{generate, Family};
use eulerlab::{conformance, folded_proof, projection, schlegel_proof, svg, Error, Polytope};

pub use document::PolytopeDocument;
pub use report::RunReport;

#[derive(Debug, Parser)]
#[command(name = "eulerlab", version, about = "Exact Euler–Poincaré checks and flag-counting proofs on convex polytopes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a polytope document for a family: simplex:d, cube:d, crosspolytope:d or random:d,n,bound.
    Generate {
        spec: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Print the f-vector and the alternating sum.
    Check {
        file: PathBuf,
        #[command(flatten)]
        out: ReportArgs,
    },
    /// Run one or both flag-counting proofs and check every identity on the way.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Proof::Both)]
        proof: Proof,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Facet the Schlegel diagram is taken at.
        #[arg(long, default_value_t = 0)]
        facet: usize,
        #[command(flatten)]
        out: ReportArgs,
    },
    /// Draw the Schlegel diagram of a 3- or 4-polytope.
    SchlegelSvg {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        facet: usize,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Run the built-in acceptance checks.
    Selftest,
}

#[derive(Debug, clap::Args)]
pub struct ReportArgs {
    /// Also write the JSON run report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Print the JSON run report instead of the summary.
    #[arg(long)]
    pub json: bool,
    /// Record the wall-clock time in the report.
    #[arg(long)]
    pub timestamp: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Proof {
    Schlegel,
    Folded,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// A check ran and failed.
    Identity(String),
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Identity(_) => 1,
            CliError::Input(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Identity(m) | CliError::Input(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::GeneralPositionViolated(_) | Error::NoGeneralDirection(_) => CliError::Identity(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| io_error(path, e))
}

fn unix_time() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map_or(0, |d| d.as_secs())
}

/// Runs one command, writing human-readable output to `out`. `Ok(true)`
/// means every check passed.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<bool, CliError> {
    let w = |out: &mut dyn Write, s: String| out.write_all(s.as_bytes()).map_err(|e| CliError::Input(e.to_string()));
    match cli.command {
        Command::Generate { spec, seed, output } => {
            let family: Family = spec.parse().map_err(CliError::from)?;
            let p = generate(&family, seed)?;
            let doc = PolytopeDocument::from_polytope(&p, Some(family.to_string()));
            write_file(&output, &doc.to_json())?;
            w(out, format!("{family}: {} vertices, dimension {}\n", p.vertex_count(), p.dim()))?;
            Ok(true)
        }
        Command::Check { file, out: args } => {
            let p = PolytopeDocument::read(&file)?.polytope()?;
            let report = base_report("check", &file, &p, &args);
            emit(out, &report, &args, |out| {
                w(out, format!("f-vector {}\nalternating sum {}\n", report.f_vector, report.euler_sum))
            })?;
            Ok(report.pass)
        }
        Command::Verify {
            file,
            proof,
            seed,
            facet,
            out: args,
        } => {
            let p = PolytopeDocument::read(&file)?.polytope()?;
            if p.dim() < 3 {
                return Err(CliError::Input(Error::SchlegelDimension(p.dim()).to_string()));
            }
            let mut report = base_report("verify", &file, &p, &args);
            report.seed = Some(seed);
            if proof != Proof::Folded {
                report.facet = Some(facet);
                report.schlegel = Some(schlegel_proof::verify_proof_schlegel(&p, facet, seed)?);
            }
            if proof != Proof::Schlegel {
                report.folded = Some(folded_proof::verify_proof_folded(&p, seed)?);
            }
            report.pass = report.pass
                && report.schlegel.as_ref().is_none_or(|r| r.pass)
                && report.folded.as_ref().is_none_or(|r| r.pass);
            emit(out, &report, &args, |out| w(out, verify_summary(&report)))?;
            Ok(report.pass)
        }
        Command::SchlegelSvg { file, facet, output } => {
            let p = PolytopeDocument::read(&file)?.polytope()?;
            if p.dim() != 3 && p.dim() != 4 {
                return Err(CliError::Input(Error::DiagramDimension(p.dim()).to_string()));
            }
            let cx = projection::schlegel(&p, facet)?;
            write_file(&output, &svg::schlegel_svg(&cx)?)?;
            w(out, format!("{} cells written to {}\n", cx.cells.len(), output.display()))?;
            Ok(true)
        }
        Command::Selftest => {
            let mut pass = true;
            for check in conformance::CRITERIA {
                let outcome = check();
                pass &= outcome.pass;
                w(out, format!("{outcome}\n"))?;
            }
            Ok(pass)
        }
    }
}

fn base_report(command: &str, file: &Path, p: &Polytope, args: &ReportArgs) -> RunReport {
    let f = f_vector(p.lattice());
    let euler_sum = euler_alternating_sum(&f);
    RunReport {
        command: command.into(),
        inputs: vec![file.display().to_string()],
        seed: None,
        facet: None,
        timestamp: args.timestamp.then(unix_time),
        pass: euler_sum == 1,
        f_vector: f,
        euler_sum,
        schlegel: None,
        folded: None,
    }
}

fn emit(
    out: &mut dyn Write,
    report: &RunReport,
    args: &ReportArgs,
    summary: impl FnOnce(&mut dyn Write) -> Result<(), CliError>,
) -> Result<(), CliError> {
    if let Some(path) = &args.report {
        write_file(path, &report.to_json())?;
    }
    if args.json {
        out.write_all(report.to_json().as_bytes())
            .map_err(|e| CliError::Input(e.to_string()))
    } else {
        summary(out)
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "FAIL"
    }
}

fn verify_summary(r: &RunReport) -> String {
    let mut s = format!("f-vector {}, alternating sum {}\n", r.f_vector, r.euler_sum);
    if let Some(sr) = &r.schlegel {
        s += &format!(
            "schlegel at facet {} (direction {:?}): {}\n",
            sr.facet,
            sr.direction,
            verdict(sr.pass)
        );
        for t in &sr.cells {
            s += &format!("  cell {}: {} (expected {})\n", t.label, t.sum, sr.expected_per_cell);
        }
        s += &format!("  outside: {} (expected {})\n", sr.outside.sum, sr.expected_outside);
        s += &format!("  total {} = {} = {}\n", sr.total, sr.lhs, sr.rhs);
        if let Some(e) = &sr.complex_error {
            s += &format!("  diagram: {e}\n");
        }
        if let Some(e) = &sr.criterion_error {
            s += &format!("  projection criterion: {e}\n");
        }
    }
    if let Some(fr) = &r.folded {
        s += &format!("folded through facets {:?}: {}\n", fr.transversal.pair, verdict(fr.pass));
        for t in &fr.facets {
            let expected = t.chain.last().map_or(String::new(), |e| e.to_string());
            s += &format!("  {}: {} (expected {expected})\n", t.label, t.sum);
        }
        s += &format!("  pair {}, total {} = {} = {}\n", fr.pair_sum, fr.total, fr.lhs, fr.rhs);
        if let Some(e) = &fr.criterion_error {
            s += &format!("  projection criterion: {e}\n");
        }
    }
    s += &format!("{}\n", verdict(r.pass));
    s
}
