mod args;
mod formula;
mod table;
mod verify;

use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use lucky_core::oracle::{self, DEFAULT_CAP};
use lucky_core::parking::{first_failing_car, park_classical, park_vector};
use lucky_core::vector::reduce_index_set;
use lucky_core::{CapacityProfile, ForbiddenSpotSet, LuckySet, OracleConfig, PreferenceVector};

use args::{parse_prefs, parse_set, parse_vec, PrefsArg, SetArg, VecArg};
use formula::{Formula, Params};

/// Parking functions, their outcomes, and their lucky cars.
#[derive(Parser, Debug)]
#[command(name = "lucky", version)]
struct Cli {
    /// Largest preference space the brute-force oracle may enumerate.
    #[arg(long, global = true, env = "LUCKY_BRUTE_CAP", default_value_t = DEFAULT_CAP)]
    cap: u64,

    /// Worker threads for the oracle (default: one per core).
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Park one preference list and show the outcome and lucky cars.
    Simulate(SimulateArgs),
    /// Evaluate a counting formula.
    Count(CountArgs),
    /// Exhaustive census of a family of parking functions, as JSON.
    Brute(BruteArgs),
    /// Check a formula against the oracle over an instance grid.
    Verify(verify::VerifyArgs),
    /// Tabulate a formula over ranges of its inputs.
    Table(table::TableArgs),
    /// Remove cars from a lucky set and renumber the rest.
    Reduce(ReduceArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("street").required(true).args(["u", "n"]))]
struct SimulateArgs {
    /// Capacity vector, weakly increasing (e.g. 2,2,3,3).
    #[arg(long, value_parser = parse_vec)]
    u: Option<VecArg>,
    /// Number of unit spots; cars beyond the spots leave them vacant.
    #[arg(long)]
    n: Option<usize>,
    /// Preferences in arrival order (e.g. 1,3,3,1).
    #[arg(long, value_parser = parse_prefs)]
    prefs: PrefsArg,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args, Debug)]
pub struct FormulaInputs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    j: Option<usize>,
    /// Lucky set, strictly ascending (e.g. 1,4).
    #[arg(long = "I", value_parser = parse_set)]
    lucky: Option<SetArg>,
    /// Lucky spots, strictly ascending.
    #[arg(long = "L", value_parser = parse_set)]
    spots: Option<SetArg>,
    /// Unavailable spots, strictly ascending.
    #[arg(long = "s", value_parser = parse_set)]
    forbidden: Option<SetArg>,
    /// Capacity vector, weakly increasing.
    #[arg(long, value_parser = parse_vec)]
    u: Option<VecArg>,
}

impl FormulaInputs {
    fn params(&self) -> Params {
        Params {
            n: self.n,
            m: self.m,
            k: self.k,
            i: self.i,
            j: self.j,
            lucky: self.lucky.clone().map(|s| s.0),
            spots: self.spots.clone().map(|s| s.0),
            forbidden: self.forbidden.clone().map(|s| s.0),
            u: self.u.clone().map(|u| u.0),
        }
    }
}

#[derive(Args, Debug)]
struct CountArgs {
    #[arg(value_enum)]
    formula: Formula,
    #[command(flatten)]
    inputs: FormulaInputs,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args, Debug)]
struct BruteArgs {
    /// Capacity vector of a vector-parking census.
    #[arg(long, value_parser = parse_vec, conflicts_with_all = ["n", "m", "s", "polynomial"])]
    u: Option<VecArg>,
    /// Spots (cars too, unless --m is given).
    #[arg(long)]
    n: Option<usize>,
    /// Cars on an n-spot street.
    #[arg(long, requires = "n", conflicts_with = "s")]
    m: Option<usize>,
    /// Unavailable spots of a parking completion with n cars.
    #[arg(long, value_parser = parse_set, requires = "n")]
    s: Option<SetArg>,
    /// Print the lucky-car polynomial coefficients of length-n parking functions.
    #[arg(long, requires = "n", conflicts_with_all = ["m", "s"])]
    polynomial: bool,
    /// Key distinct outcomes by exact lucky-spot set instead (needs --u).
    #[arg(long, requires = "u")]
    lucky_spots: bool,
}

#[derive(Args, Debug)]
struct ReduceArgs {
    /// Lucky set, strictly ascending.
    #[arg(long = "I", value_parser = parse_set)]
    lucky: SetArg,
    /// Cars to remove, strictly ascending.
    #[arg(long, value_parser = parse_set)]
    remove: SetArg,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let config = OracleConfig { cap: cli.cap, workers: cli.workers };
    match cli.command {
        Command::Simulate(args) => simulate(args),
        Command::Count(args) => count(args),
        Command::Brute(args) => brute(args, &config),
        Command::Verify(args) => verify::run(args, config),
        Command::Table(args) => table::run(args, config),
        Command::Reduce(args) => {
            let lucky = LuckySet::new(args.lucky.0)?;
            println!("{}", reduce_index_set(&lucky, &args.remove.0));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn simulate(args: SimulateArgs) -> Result<ExitCode> {
    let prefs = PreferenceVector::new(args.prefs.0.clone())?;
    let (outcome, lucky, family) = match (&args.u, args.n) {
        (Some(u), None) => {
            let u = CapacityProfile::new(u.0.clone())?;
            if prefs.len() != u.len() {
                bail!("--prefs has {} entries but --u has {}", prefs.len(), u.len());
            }
            match park_vector(&u, &prefs) {
                Some((o, l)) => (serde_json::to_value(&o)?, l, (o.to_string(), json!({ "u": u.u() }))),
                None => return Ok(not_parking(first_failing_car(&u, &prefs))),
            }
        }
        (None, Some(n)) => match park_classical(&prefs, n) {
            Some((o, l)) => (serde_json::to_value(&o)?, l, (o.to_string(), json!({ "n": n }))),
            None => {
                return Ok(not_parking(first_failing_car(&CapacityProfile::classical(n), &prefs)))
            }
        },
        _ => bail!("give exactly one of --u and --n"),
    };
    let (rendered, mut header) = family;
    match args.format {
        Format::Text => {
            let lucky_text = if lucky.is_empty() { "none".to_string() } else { lucky.to_string() };
            println!("{rendered} | lucky: {lucky_text}");
        }
        Format::Json => {
            header["prefs"] = json!(prefs.as_slice());
            header["outcome"] = outcome;
            header["lucky"] = json!(lucky.as_slice());
            println!("{header}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn not_parking(car: Option<usize>) -> ExitCode {
    match car {
        Some(car) => eprintln!("not a parking function: car {car} cannot park"),
        None => eprintln!("not a parking function"),
    }
    ExitCode::from(3)
}

fn count(args: CountArgs) -> Result<ExitCode> {
    let params = args.inputs.params();
    params.check(args.formula)?;
    let value = formula::evaluate(args.formula, &params)?;
    match args.format {
        Format::Text => println!("{value}"),
        Format::Json => println!(
            "{}",
            json!({
                "formula": args.formula.name(),
                "inputs": params.to_json(args.formula),
                "value": value.to_string(),
            })
        ),
    }
    Ok(ExitCode::SUCCESS)
}

fn brute(args: BruteArgs, config: &OracleConfig) -> Result<ExitCode> {
    let json = match (&args.u, args.n, args.m, &args.s) {
        (Some(u), None, None, None) => {
            let u = CapacityProfile::new(u.0.clone())?;
            if args.lucky_spots {
                let census = oracle::census_lucky_spots(&u, config)?;
                let keyed: serde_json::Map<String, serde_json::Value> = census
                    .into_iter()
                    .map(|(spots, outcomes)| Ok((serde_json::to_string(&spots)?, serde_json::to_value(outcomes)?)))
                    .collect::<Result<_>>()?;
                serde_json::to_string(&keyed)?
            } else {
                oracle::census_vector(&u, config)?.to_json()
            }
        }
        (None, Some(n), None, None) if args.polynomial => {
            serde_json::to_string(&oracle::lucky_polynomial(n, config)?)?
        }
        (None, Some(n), None, None) => oracle::census_classical(n, config)?.to_json(),
        (None, Some(n), Some(m), None) => {
            if m > n {
                bail!("need m <= n, got m={m} n={n}");
            }
            oracle::census_mn(m, n, config)?.to_json()
        }
        (None, Some(n), None, Some(s)) => {
            oracle::census_completion(&ForbiddenSpotSet::new(n, s.0.clone())?, config)?.to_json()
        }
        _ => bail!("choose a family: --u U, --n N, --m M --n N, or --n N --s S"),
    };
    println!("{json}");
    Ok(ExitCode::SUCCESS)
}
