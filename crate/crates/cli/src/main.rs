mod commands;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use strata_cones::encoding::{parse_stratum, parse_weight};
use strata_cones::{Error, QVector, SplittingConfig, Stratum};

/// Weight cones, dual descriptions and minimal cones of Goren-Oort strata.
#[derive(Parser, Debug)]
#[command(name = "strata-cones", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the full dossier of one stratum.
    Describe(StratumArgs),
    /// Run every check on one stratum.
    Check(StratumArgs),
    /// Run every check on every stratum of a sweep.
    Explore(ExploreArgs),
    /// Decide membership of a weight in the cone of a stratum.
    Member(WeightArgs),
    /// Reduce a weight and test it against the minimal cones.
    Minimal(MinimalArgs),
    /// Delta class of a weight and membership of a bi-weight.
    Gl2(Gl2Args),
}

#[derive(Args, Debug)]
struct Output {
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Write to this file instead of stdout.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct StratumArgs {
    /// The prime p.
    #[arg(long)]
    p: u64,
    /// Frobenius cycle lengths, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    cycles: Vec<usize>,
    /// Stratum as `cycle.pos` tokens; empty for the empty set, `all` for every embedding.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    t: String,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct WeightArgs {
    #[command(flatten)]
    stratum: StratumArgs,
    /// Weight coordinates, comma separated integers or fractions a/b.
    #[arg(long, allow_hyphen_values = true)]
    weight: String,
}

#[derive(Args, Debug)]
struct MinimalArgs {
    #[command(flatten)]
    weight: WeightArgs,
    /// Divisibility exponents `cycle.pos=a` of the sections f_β(T), comma separated.
    #[arg(long, default_value = "")]
    powers: String,
}

#[derive(Args, Debug)]
struct Gl2Args {
    #[command(flatten)]
    weight: WeightArgs,
    /// The λ part of a bi-weight; defaults to zero.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
}

#[derive(Args, Debug)]
struct ExploreArgs {
    /// Primes to sweep, comma separated.
    #[arg(long = "p-list", value_delimiter = ',', default_value = "2,3,5")]
    p_list: Vec<u64>,
    /// Largest total degree d.
    #[arg(long = "d-max", default_value_t = 5)]
    d_max: usize,
    /// Worker threads; output does not depend on it.
    #[arg(long, env = "STRATA_CONES_JOBS")]
    jobs: Option<usize>,
    #[command(flatten)]
    out: Output,
}

const EXIT_OK: u8 = 0;
const EXIT_INTERNAL: u8 = 1;
const EXIT_CHECK_FAILED: u8 = 2;
const EXIT_USAGE: u8 = 3;

/// Rendered output and whether a checked claim failed.
pub struct Outcome {
    pub text: String,
    pub json: serde_json::Value,
    pub failed: bool,
}

impl StratumArgs {
    fn stratum(&self) -> Result<Stratum, Error> {
        let config = SplittingConfig::new(self.p, self.cycles.clone())?;
        parse_stratum(&config, &self.t)
    }
}

impl WeightArgs {
    fn parse(&self) -> Result<(Stratum, QVector), Error> {
        let t = self.stratum.stratum()?;
        let kappa = parse_weight(&self.weight, t.config().d())?;
        Ok((t, kappa))
    }
}

fn run(command: &Command) -> anyhow::Result<(Outcome, &Output)> {
    Ok(match command {
        Command::Describe(a) => (commands::describe(&a.stratum()?), &a.out),
        Command::Check(a) => (commands::check(&a.stratum()?), &a.out),
        Command::Explore(a) => (commands::explore(&a.p_list, a.d_max, a.jobs)?, &a.out),
        Command::Member(a) => {
            let (t, kappa) = a.parse()?;
            (commands::member(&t, &kappa)?, &a.stratum.out)
        }
        Command::Minimal(a) => {
            let (t, kappa) = a.weight.parse()?;
            let powers = commands::parse_powers(t.config(), &a.powers)?;
            (commands::minimal(&t, &kappa, &powers)?, &a.weight.stratum.out)
        }
        Command::Gl2(a) => {
            let (t, kappa) = a.weight.parse()?;
            let lambda = match &a.lambda {
                Some(s) => parse_weight(s, t.config().d())?,
                None => QVector::zeros(t.config().d()),
            };
            (commands::gl2(&t, &lambda, &kappa)?, &a.weight.stratum.out)
        }
    })
}

fn emit(outcome: &Outcome, out: &Output) -> anyhow::Result<()> {
    let body = if out.json {
        serde_json::to_string_pretty(&outcome.json)? + "\n"
    } else {
        outcome.text.clone()
    };
    match &out.output {
        Some(path) => std::fs::write(path, body)?,
        None => std::io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::Internal(_)) | None => EXIT_INTERNAL,
        Some(_) => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    let result = run(&cli.command).and_then(|(outcome, out)| {
        emit(&outcome, out)?;
        Ok(outcome.failed)
    });
    match result {
        Ok(false) => ExitCode::from(EXIT_OK),
        Ok(true) => ExitCode::from(EXIT_CHECK_FAILED),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
