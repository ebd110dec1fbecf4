//! `magnus`: verification suites, expansions and continuum-limit tables.
//!
//! Exit status is 0 when every case passes, 1 when a case fails and 2 on a
//! usage error.

mod report;
mod spec;
mod suites;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use magnus_core::continuum::convergence_study;
use magnus_core::expansion::{magnus_closed_form, magnus_from_dyson, monodromy_direct, MagnusStyle};
use magnus_core::{Direction, Matrix, Operator, SiteOperatorFamily};
use serde_json::json;

use report::{Backend, Builder};
use spec::{parse_family, parse_field, Family};

#[derive(Parser)]
#[command(name = "magnus", version, about = "Exact Dyson/Magnus expansions and their algebraic identities")]
struct Cli {
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = BackendArg::Exact)]
    backend: BackendArg,
    /// Pass threshold for the float backend.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tolerance: f64,
    /// Truncation order in α.
    #[arg(long, global = true, default_value_t = 3)]
    order: usize,
    #[arg(long, global = true)]
    json: bool,
    /// Add wall-clock time to verification reports.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Exact,
    Float,
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Dyson,
    MagnusOracle,
    MagnusExplicit,
    MagnusPrelie,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Forward,
    Backward,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 4)]
        sites: usize,
        /// Chain length for the Yangian suite.
        #[arg(long = "N", default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 10)]
        cases: usize,
    },
    /// Print Dyson or Magnus coefficients of a family.
    Expand {
        spec: String,
        #[arg(long, value_enum, default_value_t = Form::Dyson)]
        form: Form,
        #[arg(long, value_enum, default_value_t = DirectionArg::Forward)]
        direction: DirectionArg,
    },
    /// Convergence of discretized Magnus coefficients to the continuum.
    Limit {
        spec: String,
        #[arg(long, value_delimiter = ',', default_values_t = [0.25, 0.125, 0.0625, 0.03125, 0.015625])]
        deltas: Vec<f64>,
    },
}

enum Failure {
    Usage(String),
    Failed,
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Failed) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let backend = match cli.backend {
        BackendArg::Exact => Backend::Exact,
        BackendArg::Float => Backend::Float,
    };
    match &cli.command {
        Command::Verify { suite, sites, rank, dim, cases } => {
            if *dim == 0 {
                return Err(usage("--dim must be positive"));
            }
            let opts = suites::Options { seed: cli.seed, sites: *sites, rank: *rank, dim: *dim, cases: *cases, order: cli.order };
            let start = Instant::now();
            let mut b = Builder::new(backend, cli.tolerance);
            suites::run(suite, &opts, &mut b).map_err(Failure::Usage)?;
            let mut report = b.finish(suite, cli.seed);
            if cli.timing {
                report.wall_time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            print!("{}", if cli.json { report.to_json() } else { report.to_text() });
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Failed)
            }
        }
        Command::Expand { spec, form, direction } => {
            let direction = match direction {
                DirectionArg::Forward => Direction::Forward,
                DirectionArg::Backward => Direction::Backward,
            };
            let fam = parse_family(spec, cli.seed).map_err(usage)?.build(direction);
            let lines = match (fam, backend) {
                (Family::Matrix(f), Backend::Exact) => expand(&f, *form, cli.order)?,
                (Family::Matrix(f), Backend::Float) => expand(&f.map(&f.like().to_f64(), Matrix::to_f64), *form, cli.order)?,
                (Family::Free(f), Backend::Exact) => expand(&f, *form, cli.order)?,
                (Family::Free(_), Backend::Float) => return Err(usage("free families have no float backend")),
            };
            if cli.json {
                let coeffs: Vec<_> = lines.iter().map(|(k, v)| json!({ "name": k, "value": v })).collect();
                let doc = json!({ "spec": spec, "form": form_name(*form), "direction": direction.name(), "order": cli.order, "coefficients": coeffs });
                println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
            } else {
                println!("form = {}\ndirection = {}\norder = {}", form_name(*form), direction.name(), cli.order);
                for (k, v) in lines {
                    println!("{k} = {v}");
                }
            }
            Ok(())
        }
        Command::Limit { spec, deltas } => {
            if deltas.len() < 3 {
                return Err(usage(format!("need at least 3 step sizes for a rate, got {}", deltas.len())));
            }
            let field = parse_field(spec, cli.seed).map_err(usage)?.build().map_err(usage)?;
            let table = convergence_study(&field, deltas, cli.order).map_err(usage)?;
            if cli.json {
                let rows: Vec<_> = table
                    .rows
                    .iter()
                    .map(|r| json!({ "delta": r.delta, "errors": r.errors, "rates": r.rates }))
                    .collect();
                let doc = json!({ "spec": spec, "orders": table.orders, "rows": rows, "rate": (1..=table.orders).map(|m| table.rate(m)).collect::<Vec<_>>() });
                println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
            } else {
                print!("{}", table.to_csv());
            }
            Ok(())
        }
    }
}

fn form_name(f: Form) -> &'static str {
    match f {
        Form::Dyson => "dyson",
        Form::MagnusOracle => "magnus-oracle",
        Form::MagnusExplicit => "magnus-explicit",
        Form::MagnusPrelie => "magnus-prelie",
    }
}

fn expand<O: Operator + std::fmt::Display>(fam: &SiteOperatorFamily<O>, form: Form, order: usize) -> Result<Vec<(String, String)>, Failure> {
    let t = monodromy_direct(fam, order);
    if order == 0 {
        return Ok(vec![("T0".into(), t.coeff(0).to_string())]);
    }
    let q = match form {
        Form::Dyson => {
            return Ok(t.coeffs().iter().enumerate().map(|(m, c)| (format!("T{m}"), c.to_string())).collect());
        }
        Form::MagnusOracle => magnus_from_dyson(&t.coeffs()[1..]),
        Form::MagnusExplicit | Form::MagnusPrelie => {
            let style = if matches!(form, Form::MagnusExplicit) { MagnusStyle::Explicit } else { MagnusStyle::PreLie };
            magnus_closed_form(fam, style, order).map_err(usage)?.q
        }
    };
    Ok(q.iter().enumerate().map(|(m, c)| (format!("Q{}", m + 1), c.to_string())).collect())
}
