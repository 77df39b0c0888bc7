mod commands;
mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use singchi_core::standard_basis::{Engine, FieldMode};
use singchi_core::Error;

#[derive(Parser, Debug)]
#[command(
    name = "singchi",
    version,
    about = "Euler characteristics of Milnor fibres of images of corank-1 map-germs"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Seed for generic linear combinations.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Reduction-step bound per standard basis.
    #[arg(long, global = true)]
    pub max_steps: Option<u64>,
    /// Coefficient field: `rational` or `fp:PRIME`.
    #[arg(long, global = true, default_value = "rational")]
    pub field: String,
    /// Print the report as compact JSON.
    #[arg(long, global = true, conflicts_with = "pretty")]
    pub json: bool,
    /// Print the report as indented JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Milnor number of an isolated hypersurface singularity.
    Milnor {
        poly: String,
        /// Comma-separated variables; inferred from the polynomial if absent.
        #[arg(long)]
        vars: Option<String>,
    },
    /// Milnor number of an ICIS given as `{"vars": [...], "gens": [...]}`.
    Icis { ideal: String },
    /// Multiple point spaces, their emptiness and Milnor numbers.
    Mps {
        germ: String,
        #[arg(long)]
        k: Option<usize>,
        /// Partition of k such as `(1,2)`.
        #[arg(long)]
        partition: Option<String>,
        #[arg(long = "param")]
        params: Vec<String>,
    },
    /// Full image Milnor fibre report for a germ C^3 -> C^4.
    ImageChi {
        germ: String,
        #[arg(long = "param")]
        params: Vec<String>,
    },
    /// Batch image-chi over catalog rows, compared with the tabulated values.
    Table1 {
        /// Catalog rows (repeatable or comma-separated).
        #[arg(long)]
        rows: Vec<String>,
        #[arg(long = "param")]
        params: Vec<String>,
    },
    /// Euler characteristics for a composite g o f.
    Zariski {
        #[arg(long = "mu-g", allow_hyphen_values = true)]
        mu_g: i64,
        #[arg(long = "mu-f", allow_hyphen_values = true)]
        mu_f: i64,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long = "mu-I-f", allow_hyphen_values = true)]
        mu_i_f: i64,
    },
    /// Discriminant of (x, u) -> (x, u^3 + phi(x) u) by two routes.
    Equidim {
        #[arg(long)]
        phi: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        vars: Option<String>,
    },
    /// Constancy of the invariants along a one-parameter unfolding.
    Family {
        unfolding: String,
        /// Comma-separated rational parameter values.
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
    },
    /// Stratified Euler-characteristic difference from a JSON list of strata.
    StratEuler { strata: String },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Milnor { .. } => "milnor",
            Command::Icis { .. } => "icis",
            Command::Mps { .. } => "mps",
            Command::ImageChi { .. } => "image-chi",
            Command::Table1 { .. } => "table1",
            Command::Zariski { .. } => "zariski",
            Command::Equidim { .. } => "equidim",
            Command::Family { .. } => "family",
            Command::StratEuler { .. } => "strat-euler",
        }
    }
}

/// What a command produced: the `inputs` echo, the `result` payload, a
/// human-readable summary and whether the command counts as successful.
pub struct Outcome {
    pub inputs: Value,
    pub result: Value,
    pub summary: Vec<String>,
    pub ok: bool,
}

fn parse_field(text: &str) -> Result<FieldMode, Error> {
    match text.trim() {
        "rational" | "Q" => Ok(FieldMode::Rational),
        other => other
            .strip_prefix("fp:")
            .and_then(|p| p.parse::<u64>().ok())
            .map(FieldMode::Prime)
            .ok_or_else(|| Error::BadParams(format!("unknown field `{other}`"))),
    }
}

fn engine(opts: &GlobalOpts) -> Result<Engine, Error> {
    let mut e = Engine::default().with_field(parse_field(&opts.field)?)?;
    if let Some(m) = opts.max_steps {
        e = e.with_max_steps(m);
    }
    Ok(e)
}

fn error_kind(e: &Error) -> &'static str {
    if e.is_usage() {
        "usage"
    } else {
        "computation"
    }
}

fn emit(opts: &GlobalOpts, report: &Value, summary: &[String]) {
    let text = if opts.json {
        report.to_string()
    } else if opts.pretty {
        serde_json::to_string_pretty(report).expect("report serializes")
    } else {
        summary.join("\n")
    };
    // a closed pipe (`singchi ... | head`) is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = cli.global;
    let name = cli.command.name();

    let outcome = engine(&opts).and_then(|engine| {
        if let FieldMode::Prime(p) = engine.field {
            eprintln!(
                "warning: computing over F_{p}; results are probabilistic and must be confirmed \
                 over the rationals"
            );
        }
        commands::run(&cli.command, &engine, &opts)
    });

    let field = parse_field(&opts.field)
        .map(|f| f.label())
        .unwrap_or_else(|_| opts.field.clone());
    match outcome {
        Ok(out) => {
            let report = json!({
                "schema": 1,
                "command": name,
                "inputs": out.inputs,
                "seed": opts.seed,
                "field": field,
                "result": out.result,
            });
            emit(&opts, &report, &out.summary);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let report = json!({
                "schema": 1,
                "command": name,
                "seed": opts.seed,
                "field": field,
                "error": { "kind": error_kind(&e), "message": e.to_string() },
            });
            if opts.json || opts.pretty {
                emit(&opts, &report, &[]);
            }
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}
