//! `smale`: stable homology of Smale spaces from graph presentations.
//!
//! Exit codes: 0 success, 2 unreadable or malformed input, 3 presentation
//! fails validation, 4 an internal identity check failed, 5 a precondition
//! of the requested computation does not hold.

mod render;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use smale_core::analysis::{k_rank_report_from_ranks, parse_matrix};
use smale_core::document::{presentation_digest, HomologyReportDoc, InvariantsDoc, SystemDoc};
use smale_core::{
    homology, k_rank_report, krieger_dimension_group, kunneth, product_presentation,
    toral_homology, FiberedPresentation, HomologyReport, InputDocument, Mode, SCHEMA_VERSION,
};

/// Environment variable holding the worker thread count.
const THREADS_VAR: &str = "SMALE_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Parse = 2,
    Validation = 3,
    Guardrail = 4,
    Precondition = 5,
}

/// Error tagged with the exit code it maps to.
#[derive(Debug)]
struct Failure {
    kind: Kind,
    message: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Failure {}

fn fail(kind: Kind, message: impl fmt::Display) -> anyhow::Error {
    Failure {
        kind,
        message: message.to_string(),
    }
    .into()
}

#[derive(Parser)]
#[command(
    name = "smale",
    version,
    about = "Exact stable homology of Smale spaces"
)]
struct Cli {
    /// Emit machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    StableDisconnected,
    UnstableDisconnected,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::StableDisconnected => Mode::StableDisconnected,
            ModeArg::UnstableDisconnected => Mode::UnstableDisconnected,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a presentation and list every violated condition.
    Validate { input: PathBuf },
    /// Krieger dimension group of the underlying graph.
    DimensionGroup { input: PathBuf },
    /// Stable homology in every degree.
    Homology { input: PathBuf },
    /// Predicted homology of the product of two presentations.
    Kunneth {
        a: PathBuf,
        b: PathBuf,
        /// Also compute the product presentation directly and compare.
        #[arg(long)]
        cross_check: bool,
    },
    /// Ranks for a hyperbolic toral automorphism.
    Toral {
        /// Rows separated by `;`, entries by `,`, e.g. "2,1;1,1".
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Rational K-theory ranks from the E2 page.
    KRanks {
        /// Presentation to compute homology from.
        #[arg(required_unless_present = "report")]
        input: Option<PathBuf>,
        /// Homology report JSON (as written by `homology --json`).
        #[arg(long, conflicts_with = "input")]
        report: Option<PathBuf>,
        /// Overrides the mode declared in the input.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| fail(Kind::Parse, format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<(InputDocument, FiberedPresentation)> {
    let doc = InputDocument::from_json(&read(path)?)
        .map_err(|e| fail(Kind::Parse, format!("{}: {e}", path.display())))?;
    let p = doc
        .presentation()
        .map_err(|e| fail(Kind::Parse, format!("{}: {e}", path.display())))?;
    Ok((doc, p))
}

/// Loads a presentation that must pass validation.
fn load_valid(path: &Path) -> Result<(InputDocument, FiberedPresentation)> {
    let (doc, p) = load(path)?;
    let report = p.validate();
    if !report.is_valid() {
        let listing: Vec<String> = report.violations.iter().map(|v| format!("  {v}")).collect();
        return Err(fail(
            Kind::Validation,
            format!(
                "{}: invalid presentation\n{}",
                path.display(),
                listing.join("\n")
            ),
        ));
    }
    Ok((doc, p))
}

fn compute(p: &FiberedPresentation) -> Result<HomologyReport> {
    homology(p).map_err(|e| fail(Kind::Guardrail, e))
}

fn print_json(v: &impl serde::Serialize) -> Result<()> {
    println!(
        "{}",
        serde_json::to_string_pretty(v).context("serializing output")?
    );
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Validate { input } => {
            let (_, p) = load(&input)?;
            let report = p.validate();
            if cli.json {
                print_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "digest": presentation_digest(&p),
                    "valid": report.is_valid(),
                    "bounds": report.is_valid().then(|| p.bounds()),
                    "violations": report.violations,
                }))?;
            } else {
                print!("{}", render::validation(&p, &report));
            }
            if !report.is_valid() {
                return Err(fail(
                    Kind::Validation,
                    format!(
                        "{} violation(s) in {}",
                        report.violations.len(),
                        input.display()
                    ),
                ));
            }
        }
        Command::DimensionGroup { input } => {
            let (_, p) = load(&input)?;
            let d = krieger_dimension_group(p.base()).map_err(|e| fail(Kind::Precondition, e))?;
            let inv = d.invariants();
            if cli.json {
                print_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "digest": presentation_digest(&p),
                    "invariants": InvariantsDoc::from(&inv),
                    "system": SystemDoc::from(&d),
                }))?;
            } else {
                print!("{}", render::dimension_group(&inv));
            }
        }
        Command::Homology { input } => {
            let (_, p) = load_valid(&input)?;
            let h = compute(&p)?;
            if cli.json {
                print_json(&HomologyReportDoc::from(&h))?;
            } else {
                print!("{}", render::homology(&h));
            }
        }
        Command::Kunneth { a, b, cross_check } => {
            let (_, pa) = load_valid(&a)?;
            let (_, pb) = load_valid(&b)?;
            let predicted = kunneth(&compute(&pa)?, &compute(&pb)?);
            let direct = if cross_check {
                let product =
                    product_presentation(&pa, &pb).map_err(|e| fail(Kind::Validation, e))?;
                Some(compute(&product)?)
            } else {
                None
            };
            let agrees = direct
                .as_ref()
                .map(|d| render::nontrivial(d) == render::nontrivial(&predicted));
            if cli.json {
                print_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "predicted": HomologyReportDoc::from(&predicted),
                    "cross_check": direct.as_ref().map(|d| json!({
                        "agrees": agrees,
                        "direct": HomologyReportDoc::from(d),
                    })),
                }))?;
            } else {
                print!("{}", render::homology(&predicted));
                if let Some(ok) = agrees {
                    println!("cross-check: {}", if ok { "agrees" } else { "DISAGREES" });
                }
            }
            if agrees == Some(false) {
                return Err(fail(
                    Kind::Guardrail,
                    "product homology disagrees with the prediction",
                ));
            }
        }
        Command::Toral { matrix } => {
            let a =
                parse_matrix(&matrix).map_err(|e| fail(Kind::Parse, format!("--matrix: {e}")))?;
            let h = toral_homology(&a).map_err(|e| fail(Kind::Precondition, e))?;
            if cli.json {
                print_json(&HomologyReportDoc::from(&h))?;
            } else {
                print!("{}", render::homology(&h));
            }
        }
        Command::KRanks {
            input,
            report,
            mode,
        } => {
            let (r, digest) = match (input, report) {
                (Some(path), _) => {
                    let (doc, p) = load_valid(&path)?;
                    let h = compute(&p)?;
                    let mode = mode
                        .map(Mode::from)
                        .or(doc.mode)
                        .unwrap_or(Mode::StableDisconnected);
                    (k_rank_report(&h, mode), h.provenance.digest)
                }
                (None, Some(path)) => {
                    let doc: HomologyReportDoc = serde_json::from_str(&read(&path)?)
                        .map_err(|e| fail(Kind::Parse, format!("{}: {e}", path.display())))?;
                    let mode = mode.map_or(Mode::StableDisconnected, Mode::from);
                    let r = k_rank_report_from_ranks(&doc.ranks(), mode)
                        .map_err(|e| fail(Kind::Precondition, e))?;
                    (r, doc.provenance.digest)
                }
                (None, None) => unreachable!("clap requires one of the two"),
            };
            if cli.json {
                print_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "digest": digest,
                    "report": r,
                }))?;
            } else {
                print!("{}", render::k_ranks(&r));
            }
        }
    }
    Ok(())
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| {
            fail(
                Kind::Parse,
                format!("{THREADS_VAR} must be a positive integer, got {value:?}"),
            )
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .context("configuring the thread pool")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = e.downcast_ref::<Failure>().map_or(1, |f| f.kind as u8);
            ExitCode::from(code)
        }
    }
}
