use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use multilog::problem::Order;
use multilog::report::error_code;
use multilog::suite::{self, CRITERIA};
use multilog::{exit, run, Command, Problem, Report, RunError, Settings, Target};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "multilog",
    version,
    about = "Multi-logarithmic forms, residues and freeness of complete intersections"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Override the monomial order of the problem file.
    #[arg(long, global = true)]
    order: Option<Order>,
    /// Maximal length of computed resolutions.
    #[arg(long, global = true)]
    max_length: Option<usize>,
    /// Truncation order of non-monomial branch parametrizations.
    #[arg(long, global = true)]
    truncation: Option<u32>,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Run twice and fail unless both reports agree byte for byte.
    #[arg(long, global = true)]
    seedless: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    Paper,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generators and Betti numbers of h Ω^q(log X/C).
    Logforms {
        problem: PathBuf,
        #[arg(long)]
        q: Option<usize>,
    },
    /// Multi-logarithmic k-vector fields.
    Derk { problem: PathBuf },
    /// Jacobian ideals and the fundamental form.
    Jacobian { problem: PathBuf },
    /// Multi-residues, duality and pairing.
    Residues { problem: PathBuf },
    /// The freeness diagnostics.
    Freeness { problem: PathBuf },
    /// Minimal free resolution of one of the attached modules.
    Resolve {
        problem: PathBuf,
        #[arg(long, value_enum)]
        target: Target,
    },
    /// Valuative checks for a curve with a branch parametrization.
    Curve { problem: PathBuf },
    /// Run the acceptance criteria.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteName,
        /// Only these criteria (repeatable).
        #[arg(long)]
        criterion: Vec<u8>,
    },
}

fn verify(criteria: &[u8]) -> Report {
    let ids: Vec<u8> = if criteria.is_empty() { CRITERIA.iter().map(|c| c.0).collect() } else { criteria.to_vec() };
    let mut report = Report::new("verify", json!({"suite": "paper", "criteria": ids}));
    let outcomes = suite::run_all(&ids);
    for o in &outcomes {
        report.checks.insert(format!("criterion {}", o.id), o.pass);
        report.timings.insert(format!("criterion {}", o.id), o.seconds);
        report.summary.push(o.line());
    }
    report.results = json!({"table": outcomes});
    report
}

fn execute(cli: &Cli) -> Result<Report, (i32, String)> {
    let (command, path) = match &cli.command {
        Cmd::Verify { criterion, .. } => return Ok(verify(criterion)),
        Cmd::Logforms { problem, q } => (Command::LogForms { q: *q }, problem),
        Cmd::Derk { problem } => (Command::DerK, problem),
        Cmd::Jacobian { problem } => (Command::Jacobian, problem),
        Cmd::Residues { problem } => (Command::Residues, problem),
        Cmd::Freeness { problem } => (Command::Freeness, problem),
        Cmd::Resolve { problem, target } => (Command::Resolve { target: *target }, problem),
        Cmd::Curve { problem } => (Command::Curve, problem),
    };
    let mut problem = Problem::load(path).map_err(|d| (exit::PARSE_ERROR, format!("{}:{}", path.display(), d)))?;
    if let Some(o) = cli.order {
        problem = problem.with_order(o.into());
    }
    let settings = Settings { max_length: cli.max_length, truncation: cli.truncation };
    run(&command, &problem, &settings).map_err(|e| match &e {
        RunError::Engine(err) => (exit::ENGINE_ERROR, format!("{} [{}]", e, error_code(err))),
        RunError::Usage(_) => (exit::PARSE_ERROR, e.to_string()),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut report = match execute(&cli) {
        Ok(r) => r,
        Err((code, message)) => {
            eprintln!("error: {}", message);
            return ExitCode::from(code as u8);
        }
    };
    if cli.seedless {
        let again = match execute(&cli) {
            Ok(r) => r,
            Err((code, message)) => {
                eprintln!("error: {}", message);
                return ExitCode::from(code as u8);
            }
        };
        let same = again.canonical_json() == report.canonical_json();
        report.checks.insert("deterministic".into(), same);
        report.summary.push(format!("{:<40} {}", "deterministic", if same { "ok" } else { "FAILED" }));
    }
    print!("{}", report.human());
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("error: {}: {}", path.display(), e);
            return ExitCode::from(exit::PARSE_ERROR as u8);
        }
    }
    ExitCode::from(if report.pass() { exit::OK } else { exit::CHECK_FAILED } as u8)
}
