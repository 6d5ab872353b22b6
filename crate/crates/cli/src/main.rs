//! `arborize`: JSON graphs in, certified (fractional) degree-bounded
//! forest and branching decompositions out.

mod budget;
mod commands;
mod dot;
mod error;
mod json;
mod reproduce;
mod search;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use arborize_core::gadgets::SearchParams;
use clap::{Parser, Subcommand, ValueEnum};

use crate::budget::Budget;
use crate::commands::{ExactKind, Mode, OrientCaps, Report};
use crate::error::CliError;
use crate::json::{parse_rat, read_input, Input};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "arborize", version, about = "Degree-bounded forest and branching decompositions with certificates")]
struct Cli {
    /// JSON graph file.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Seed for randomized stages.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Limits, e.g. `edges=14,colors=10,nodes=1000000,time=30s,forest-cap=26`.
    #[arg(long, global = true)]
    budget: Option<String>,
    /// Also write the emitted certificate as JSON to this file.
    #[arg(long, global = true)]
    cert_out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sizes, degrees, Δ_f, arboricity, pseudoarboricity and girth.
    Stats,
    /// Arboricity with a forest decomposition and a dense-set witness.
    Arboricity,
    /// Pseudoarboricity with a decomposition and a dense-set witness.
    Pseudoarboricity,
    /// Degree-f pseudoarboricity max(Δ_f, pa).
    Paf,
    /// Fractional degree-f arboricity with primal and dual certificates.
    Fractional,
    /// Re-check a decomposition or LP certificate against the input graph.
    Certify {
        #[arg(long)]
        cert: PathBuf,
    },
    /// Build the gadget G_t and report its LP value.
    Gadget {
        #[arg(long)]
        t: usize,
    },
    /// Blow up G_t m times and compare against max(Δ_t + 1, a).
    Counterexample {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        m: usize,
    },
    /// Search small multigraphs with Δ_t = a = 2 for a high LP value.
    Search {
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[arg(long, default_value_t = 6)]
        max_vertices: usize,
        #[arg(long, default_value_t = 10)]
        max_mult: usize,
        #[arg(long, default_value = "9/8")]
        target: String,
        /// Only evaluate the isomorphism class of this graph.
        #[arg(long)]
        restrict: Option<PathBuf>,
        /// Checkpoint file of finished class codes; `<file>.best` holds the running best.
        #[arg(long)]
        resume: Option<PathBuf>,
    },
    /// Orient edges under in/out-degree caps, or for branchings with a given d.
    Orient {
        #[arg(long, requires = "out_cap", conflicts_with_all = ["caps", "branchings"])]
        in_cap: Option<usize>,
        #[arg(long, requires = "in_cap")]
        out_cap: Option<usize>,
        /// JSON file {"g": degree function, "h": degree function}.
        #[arg(long, conflicts_with = "branchings")]
        caps: Option<PathBuf>,
        #[arg(long)]
        branchings: Option<usize>,
    },
    /// Decompose into degree-f branchings (digraphs) or forests (via orientation).
    Decompose {
        #[arg(long, value_enum, default_value = "girth")]
        mode: Mode,
        /// Report per-stage counts.
        #[arg(long)]
        stats: bool,
    },
    /// Exact value by exhaustive search on small graphs.
    Exact {
        #[arg(long, value_enum, default_value = "a")]
        kind: ExactKind,
    },
    /// Re-run a fixed scenario and print the measured values.
    Reproduce {
        #[arg(long, value_enum)]
        target: reproduce::Target,
    },
}

fn input(path: &Option<PathBuf>) -> Result<Input, CliError> {
    let path = path.as_ref().ok_or_else(|| CliError::usage("this command needs --input PATH"))?;
    read_input(path)
}

fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    let budget = match &cli.budget {
        Some(spec) => Budget::parse(spec)?,
        None => Budget::default(),
    };
    let seed = cli.seed.unwrap_or(0);
    match &cli.command {
        Command::Stats => Ok(commands::stats(&input(&cli.input)?)),
        Command::Arboricity => commands::density(&input(&cli.input)?, false),
        Command::Pseudoarboricity => commands::density(&input(&cli.input)?, true),
        Command::Paf => commands::paf(&input(&cli.input)?),
        Command::Fractional => commands::fractional(&input(&cli.input)?, &budget),
        Command::Certify { cert } => commands::certify(&input(&cli.input)?, cert),
        Command::Gadget { t } => commands::gadget(*t),
        Command::Counterexample { t, m } => commands::counterexample(*t, *m),
        Command::Search { t, max_vertices, max_mult, target, restrict, resume } => {
            let restrict_to = match restrict {
                Some(p) => Some(read_input(p)?.undirected()?.clone()),
                None => None,
            };
            let params = SearchParams {
                t: *t,
                max_vertices: *max_vertices,
                max_total_mult: *max_mult,
                target: parse_rat(target)?,
                restrict_to,
            };
            commands::search(&params, resume.as_deref())
        }
        Command::Orient { in_cap, out_cap, caps, branchings } => {
            let mode = match (in_cap, out_cap, caps, branchings) {
                (Some(i), Some(o), None, None) => OrientCaps::Constant { in_cap: *i, out_cap: *o },
                (None, None, Some(p), None) => OrientCaps::File(p),
                (None, None, None, Some(d)) => OrientCaps::Branchings(*d),
                _ => return Err(CliError::usage("orient needs --in-cap and --out-cap, --caps FILE, or --branchings D")),
            };
            commands::orient_command(&input(&cli.input)?, mode)
        }
        Command::Decompose { mode, stats } => {
            if *mode == Mode::Asymptotic && cli.seed.is_none() {
                return Err(CliError::usage("--mode asymptotic is randomized; pass --seed N"));
            }
            commands::decompose(&input(&cli.input)?, *mode, seed, *stats)
        }
        Command::Exact { kind } => commands::exact(&input(&cli.input)?, *kind, &budget),
        Command::Reproduce { target } => reproduce::reproduce(*target, seed),
    }
}

fn write_out(path: Option<&Path>, body: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, body).map_err(|e| CliError::usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = out.write_all(body.as_bytes());
            let _ = out.flush();
            Ok(())
        }
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("report serializes") + "\n"
}

fn render(cli: &Cli, report: &Report) -> Result<(), CliError> {
    let body = match cli.format {
        Format::Text => report.text.clone(),
        Format::Json => pretty(&report.json),
        Format::Dot => report.dot.clone().ok_or_else(|| CliError::usage("this command has no DOT output"))?,
    };
    if let Some(path) = &cli.cert_out {
        let cert = report.certificate.as_ref().ok_or_else(|| CliError::usage("this command emits no certificate"))?;
        write_out(Some(path), &pretty(cert))?;
    }
    write_out(cli.output.as_deref(), &body)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli).and_then(|report| render(&cli, &report).map(|()| report.status)) {
        Ok(status) => status.into(),
        Err(e) => {
            eprintln!("error: {e}");
            e.status.into()
        }
    }
}
