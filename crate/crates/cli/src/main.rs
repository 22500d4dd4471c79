use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use trinomial_sieve::arith::parse_rational;
use trinomial_sieve::presets::{preset, PRESET_NAMES};
use trinomial_sieve_cli::{parse_job, run_job, CliError, JobSpec, Mode, Overrides};

const SCHEMA: &str = r#"Job file (JSON, rationals as "p/q" strings):
  {
    "field":    { "poly": [-2, 0, 1],                      integer coefficients, constant term first
                  "root": { "re": ["1", "2"], "im": ["0", "0"] } },   closed rectangle holding exactly one root
    "elements": [["0", "1"]],                              coordinates in the basis 1, x, x^2, ...
    "mode":     "classify" | "bounds" | "search" | "diagnose" | "verify",
    "search":   { "max_degree": 30, "emit_binomials": true, "parallel_width": 4 },   optional
    "eps":      "1/1000000",                               optional height precision
    "bounds":   { "d": 1, "h": "0", "h_tilde": "0", "nu": 3 },   optional, bounds without a set
    "diagnose": { "m": 2, "n": 1, "m_prime": 3, "n_prime": 1 },  optional
    "hits":     [{ "m": 5, "n": 1, "a": [...], "b": [...] }]     verify mode
  }
The subcommand overrides "mode". Exit codes: 0 success, 1 input error or failed verification,
2 internal soundness failure."#;

#[derive(Parser)]
#[command(name = "trinomial-sieve", version, about = "Find every trinomial X^m + A X^n + B vanishing on a set of algebraic numbers", after_help = SCHEMA)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Split the set into root-of-unity classes and report heights.
    Classify(Common),
    /// Evaluate the degree and height bounds.
    Bounds(Common),
    /// Enumerate and certify trinomials up to a degree cap.
    Search(Common),
    /// Run the six-term and multiset checks on the first three elements.
    Diagnose(Common),
    /// Re-check the hits of a search result.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Search output whose "hits" are re-checked.
        #[arg(long)]
        hits: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    /// Job file, or - for stdin.
    #[arg(long, short, conflicts_with = "preset")]
    input: Option<String>,
    /// Built-in example set.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(PRESET_NAMES))]
    preset: Option<String>,
    #[arg(long)]
    max_degree: Option<u64>,
    /// Worker threads for the search.
    #[arg(long, env = "TRINOMIAL_SIEVE_JOBS")]
    jobs: Option<usize>,
    /// Target width of height enclosures, as P/Q.
    #[arg(long)]
    eps: Option<String>,
    /// Add wall-clock time to the output.
    #[arg(long)]
    timing: bool,
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn load(common: &Common, mode: Mode) -> Result<JobSpec, CliError> {
    let mut spec = match (&common.input, &common.preset) {
        (Some(path), _) => parse_job(&read_input(path)?)?,
        (None, Some(name)) => JobSpec::from_omega(&preset(name)?, mode)?,
        (None, None) => return Err(CliError::Schema("give --input FILE|- or --preset NAME".into())),
    };
    spec.mode = mode;
    Ok(spec)
}

fn execute(cli: Cli) -> Result<(Value, bool), CliError> {
    let (common, mode, hits) = match cli.command {
        Command::Classify(c) => (c, Mode::Classify, None),
        Command::Bounds(c) => (c, Mode::Bounds, None),
        Command::Search(c) => (c, Mode::Search, None),
        Command::Diagnose(c) => (c, Mode::Diagnose, None),
        Command::Verify { common, hits } => (common, Mode::Verify, hits),
    };
    let mut spec = load(&common, mode)?;
    if let Some(path) = hits {
        let doc: Value = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        let list = doc.get("hits").cloned().ok_or_else(|| CliError::Schema("hit file has no \"hits\"".into()))?;
        let parsed: Vec<Value> = serde_json::from_value(list)?;
        let mut out = Vec::with_capacity(parsed.len());
        for h in parsed {
            out.push(json!({ "m": h["m"], "n": h["n"], "a": h["a"], "b": h["b"] }));
        }
        spec.hits = Some(serde_json::from_value(Value::from(out))?);
    }
    let overrides = Overrides {
        max_degree: common.max_degree,
        jobs: common.jobs,
        eps: common.eps.as_deref().map(parse_rational).transpose()?,
    };
    let start = Instant::now();
    let mut out = run_job(&spec, &overrides)?;
    if common.timing {
        out.json["timing_ms"] = Value::from(start.elapsed().as_millis() as u64);
    }
    Ok((out.json, out.success))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok((json, success)) => {
            let text = serde_json::to_string_pretty(&json).expect("output serializes");
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = writeln!(stdout, "{text}") {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("{}", json!({ "error": e.to_string() }));
                    return ExitCode::from(1);
                }
            }
            if success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{}", json!({ "error": e.to_string() }));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
