//! Command-line front end: parse expressions, apply generator words, analyse
//! weights and orders, build weight diagrams, and reconstruct concomitants
//! from their lead coefficients.
//!
//! Exit codes: 0 success, 2 parse error, 3 precondition violation, 4 solver
//! inconsistent/underdetermined, 5 internal verification failure.  Every
//! error path prints a single `error: ...` line to stderr.

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use ternary_core::action::{order_of, weight_of, ActionError, Word};
use ternary_core::parse::{parse_polynomial, ParseError};
use ternary_core::render::{render_latex, render_polynomial, render_text, RenderFormat};
use ternary_core::rep::{irrep_dim, lowering_span, RepError, WeightDiagram};
use ternary_core::ring::{Polynomial, RingConfig};
use ternary_core::roberts::{
    dual_conic_oracle, hessian_covariant, reconstruct_auto, reconstruct_contravariant,
    reconstruct_covariant, reconstruct_mixed, verify_concomitant, ConcomitantReport, RobertsError,
};

#[derive(Parser)]
#[command(
    name = "ternary",
    about = "Concomitants of ternary forms: sl3 derivations, weight diagrams and Roberts-style reconstruction",
    disable_help_subcommand = true
)]
struct Cli {
    /// Degree n of the ternary form (required by every command except dim)
    #[arg(long, global = true)]
    degree: Option<u32>,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Latex,
}

impl From<FormatArg> for RenderFormat {
    fn from(f: FormatArg) -> RenderFormat {
        match f {
            FormatArg::Text => RenderFormat::Text,
            FormatArg::Json => RenderFormat::Json,
            FormatArg::Latex => RenderFormat::Latex,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Auto,
    Covariant,
    Contravariant,
    Mixed,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a generator word to an expression
    Act {
        /// Whitespace-separated factors, e.g. "Dh1^2 Dh3" (rightmost acts first)
        #[arg(long)]
        word: String,
        #[arg(long)]
        expr: String,
    },
    /// Weight [λ1, λ2] of an isobaric expression
    Weight {
        #[arg(long)]
        expr: String,
    },
    /// Nilpotency order [o1, o2] under Dh1, Dh2
    Order {
        #[arg(long)]
        expr: String,
    },
    /// Dimension of the irreducible sl3-module of highest weight [m1, m2]
    Dim {
        #[arg(long)]
        m1: u32,
        #[arg(long)]
        m2: u32,
    },
    /// Weight diagram spanned by lowering words applied to a seed
    Span {
        #[arg(long)]
        expr: String,
    },
    /// Reconstruct the concomitant headed by a seed
    Reconstruct {
        #[arg(long)]
        expr: String,
        #[arg(long, value_enum, default_value_t = KindArg::Auto)]
        kind: KindArg,
    },
    /// Per-generator invariance table of an expression
    Verify {
        #[arg(long)]
        expr: String,
    },
    /// Hessian covariant of the generic form (degree 3, order 3(n-2))
    Hessian,
    /// Dual conic contravariant (n = 2 only)
    Dualconic,
}

enum CliError {
    Parse(String),
    Precondition(String),
    Solver(String),
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Solver(_) => 4,
            CliError::Internal(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m)
            | CliError::Precondition(m)
            | CliError::Solver(m)
            | CliError::Internal(m) => m,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<ActionError> for CliError {
    fn from(e: ActionError) -> Self {
        match e {
            ActionError::OrderCapExceeded { .. } => CliError::Internal(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<RepError> for CliError {
    fn from(e: RepError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<RobertsError> for CliError {
    fn from(e: RobertsError) -> Self {
        match e {
            RobertsError::Ring(_) => CliError::Parse(e.to_string()),
            RobertsError::Inconsistent | RobertsError::Underdetermined { .. } => {
                CliError::Solver(e.to_string())
            }
            RobertsError::VerificationFailed(_) | RobertsError::Internal(_) => {
                CliError::Internal(e.to_string())
            }
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let mut stdout = std::io::stdout();
    let mut stderr = std::io::stderr();
    ExitCode::from(run(args, &mut stdout, &mut stderr))
}

/// Dispatches one invocation; returns the process exit code.
pub fn run<W: Write, E: Write>(argv: Vec<String>, out: &mut W, err: &mut E) -> u8 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let first_line = e.to_string().lines().next().unwrap_or("error").to_string();
            let line = if first_line.starts_with("error") {
                first_line
            } else {
                format!("error: {first_line}")
            };
            let _ = writeln!(err, "{line}");
            return 2;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.exit_code()
        }
    }
}

fn ring_of(cli: &Cli) -> Result<RingConfig, CliError> {
    let degree = cli
        .degree
        .ok_or_else(|| CliError::Parse("--degree is required for this command".to_string()))?;
    RingConfig::new(degree).map_err(|e| CliError::Parse(e.to_string()))
}

/// Parses an expression; `seed_only` additionally restricts it to
/// a-variables (seeds of spans and reconstructions).
fn expression(text: &str, ring: &RingConfig, seed_only: bool) -> Result<Polynomial, CliError> {
    let poly = parse_polynomial(text, ring)?;
    if seed_only && !poly.is_a_only() {
        return Err(CliError::Precondition(
            "expression must use only a[i,j] variables for this command".to_string(),
        ));
    }
    Ok(poly)
}

fn dispatch<W: Write>(cli: &Cli, out: &mut W) -> Result<(), CliError> {
    let format: RenderFormat = cli.format.into();
    match &cli.command {
        Command::Act { word, expr } => {
            let ring = ring_of(cli)?;
            let word: Word = word.parse().map_err(|e: String| CliError::Parse(e))?;
            let poly = expression(expr, &ring, false)?;
            let image = word.apply(&poly, &ring);
            emit(out, &render_polynomial(&image, format))
        }
        Command::Weight { expr } => {
            let ring = ring_of(cli)?;
            let poly = expression(expr, &ring, false)?;
            let w = weight_of(&poly, &ring)?;
            emit(out, &w.to_string())
        }
        Command::Order { expr } => {
            let ring = ring_of(cli)?;
            let poly = expression(expr, &ring, true)?;
            let o = order_of(&poly, &ring)?;
            emit(out, &o.to_string())
        }
        Command::Dim { m1, m2 } => emit(out, &irrep_dim(*m1, *m2).to_string()),
        Command::Span { expr } => {
            let ring = ring_of(cli)?;
            let seed = expression(expr, &ring, true)?;
            let diagram = lowering_span(&seed, &ring)?;
            match format {
                RenderFormat::Json => emit(out, &diagram.to_json().to_string()),
                _ => emit(out, &span_text(&diagram, format)),
            }
        }
        Command::Reconstruct { expr, kind } => {
            let ring = ring_of(cli)?;
            let seed = expression(expr, &ring, true)?;
            let report = match kind {
                KindArg::Auto => reconstruct_auto(&seed, &ring)?,
                KindArg::Covariant => reconstruct_covariant(&seed, &ring)?,
                KindArg::Contravariant => reconstruct_contravariant(&seed, &ring)?,
                KindArg::Mixed => reconstruct_mixed(&seed, &ring)?,
            };
            match format {
                RenderFormat::Json => emit(out, &report.to_json().to_string()),
                _ => emit(out, &report_text(&report, format)),
            }
        }
        Command::Verify { expr } => {
            let ring = ring_of(cli)?;
            let poly = expression(expr, &ring, false)?;
            let table = verify_concomitant(&poly, &ring);
            match format {
                RenderFormat::Json => {
                    let obj: serde_json::Map<String, serde_json::Value> = table
                        .iter()
                        .map(|(g, ok)| (g.to_string(), serde_json::Value::from(*ok)))
                        .collect();
                    emit(out, &serde_json::Value::Object(obj).to_string())
                }
                _ => {
                    let lines: Vec<String> = table
                        .iter()
                        .map(|(g, ok)| format!("{g}: {}", if *ok { "pass" } else { "fail" }))
                        .collect();
                    emit(out, &lines.join("\n"))
                }
            }
        }
        Command::Hessian => {
            let ring = ring_of(cli)?;
            let hessian = hessian_covariant(&ring)?;
            emit(out, &render_polynomial(&hessian, format))
        }
        Command::Dualconic => {
            let ring = ring_of(cli)?;
            let dual = dual_conic_oracle(&ring)?;
            emit(out, &render_polynomial(&dual, format))
        }
    }
}

fn emit<W: Write>(out: &mut W, text: &str) -> Result<(), CliError> {
    writeln!(out, "{text}").map_err(|e| CliError::Internal(e.to_string()))
}

fn poly_for(format: RenderFormat, p: &Polynomial) -> String {
    match format {
        RenderFormat::Latex => render_latex(p),
        _ => render_text(p),
    }
}

fn span_text(diagram: &WeightDiagram, format: RenderFormat) -> String {
    let mut lines = Vec::new();
    lines.push(format!("seed weight: {}", diagram.seed_weight()));
    lines.push(format!("total dimension: {}", diagram.total_dimension()));
    let spaces: Vec<_> = diagram.spaces().collect();
    for (w, entries) in spaces.into_iter().rev() {
        lines.push(format!("weight {} (dim {})", w, entries.len()));
        for e in entries {
            lines.push(format!("  {}: {}", e.word, poly_for(format, &e.polynomial)));
        }
    }
    lines.join("\n")
}

fn report_text(report: &ConcomitantReport, format: RenderFormat) -> String {
    let verified: Vec<String> = report
        .verified
        .iter()
        .map(|(g, ok)| format!("{g}={}", if *ok { "pass" } else { "fail" }))
        .collect();
    [
        format!("kind: {}", report.kind),
        format!("degree: {}", report.degree),
        format!("order: {}", report.order),
        format!("class: {}", report.class),
        format!("seed: {}", poly_for(format, &report.seed)),
        format!("verified: {}", verified.join(" ")),
        format!("polynomial: {}", poly_for(format, &report.polynomial)),
    ]
    .join("\n")
}
