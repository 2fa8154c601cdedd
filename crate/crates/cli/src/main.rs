//! `hyperjac`: analyze single curves, run censuses, scan Fermat curves and
//! cross-check p-ranks against point counts.
//!
//! Exit codes: 0 success, 1 bad input, 2 internal axiom violation,
//! 3 witness not found, 4 oracle mismatch.

mod poly_parse;

use std::process::ExitCode;

use clap::{error::ErrorKind, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hyperjac::analysis::analyze;
use hyperjac::census::{self, format_psi, Mode};
use hyperjac::zeta::DEFAULT_SEED;
use hyperjac::{CurveSpec, Error, PrimeField};

const SEED_VAR: &str = "DIEUDONNE_SEED";

#[derive(Parser)]
#[command(
    name = "hyperjac",
    version,
    about = "p-torsion invariants of hyperelliptic Jacobians over F_p"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Frobenius, Verschiebung, p-rank, a-number and EO type of one curve.
    Analyze(AnalyzeArgs),
    /// Tally EO types over all curves of a genus, or hunt for a witness.
    Search(SearchArgs),
    /// p-rank of y^2 = x^d + 1 for a list of primes.
    Fermat(FermatArgs),
    /// Compare the Hasse-Witt p-rank with the L-polynomial on every curve.
    OracleCheck(OracleArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long)]
    p: u64,
    /// Coefficients a_0,a_1,...,a_d in ascending order.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        conflicts_with = "poly",
        required_unless_present = "poly"
    )]
    coeffs: Vec<i64>,
    /// The polynomial f, e.g. "2x^9+x^8+x".
    #[arg(long)]
    poly: Option<String>,
    /// Compact JSON (the default).
    #[arg(long, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON.
    #[arg(long)]
    pretty: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Csv,
    Json,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    g: usize,
    /// full, monic or monicOdd.
    #[arg(long, default_value = "full")]
    mode: Mode,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    shards: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    out: Output,
    /// Find the first curve with this type instead of tallying, e.g. 1,1,2,3.
    #[arg(long, value_delimiter = ',')]
    witness: Option<Vec<usize>>,
    /// Also count curves up to affine isomorphism (JSON output only).
    #[arg(long)]
    iso: bool,
}

#[derive(Args)]
struct FermatArgs {
    #[arg(long)]
    d: u64,
    #[arg(long, value_delimiter = ',', required = true)]
    primes: Vec<u64>,
    #[arg(long, value_enum, default_value = "csv")]
    out: Output,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    g: usize,
    #[arg(long, default_value = "full")]
    mode: Mode,
    #[arg(long)]
    shards: Option<usize>,
}

enum Failure {
    Input(String),
    Internal(String),
    NotFound(String),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else if matches!(e.root(), Error::NotFound) {
            Failure::NotFound(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Outcome = Result<(), Failure>;

fn print_json<T: Serialize>(value: &T, pretty: bool) -> Outcome {
    let text = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    };
    println!("{}", text.map_err(|e| Failure::Internal(e.to_string()))?);
    Ok(())
}

fn shards(requested: Option<usize>) -> usize {
    requested.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn seed() -> Result<u64, Failure> {
    let Ok(raw) = std::env::var(SEED_VAR) else {
        return Ok(DEFAULT_SEED);
    };
    let raw = raw.trim();
    let parsed = match raw.strip_prefix("0x") {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => raw.parse(),
    };
    parsed.map_err(|_| Failure::Input(format!("{SEED_VAR}={raw:?} is not a u64")))
}

fn curve_from(p: u64, coeffs: &[i64]) -> Result<CurveSpec, Failure> {
    let field = PrimeField::new(p)?;
    let reduced: Vec<u64> = coeffs.iter().map(|&a| field.from_i64(a).value()).collect();
    Ok(CurveSpec::from_coeffs(field, &reduced)?)
}

fn run_analyze(args: AnalyzeArgs) -> Outcome {
    let coeffs = match &args.poly {
        Some(text) => poly_parse::parse_poly(text).map_err(Failure::Input)?,
        None => args.coeffs,
    };
    let curve = curve_from(args.p, &coeffs)?;
    print_json(&analyze(&curve)?, args.pretty)
}

fn run_search(args: SearchArgs) -> Outcome {
    let workers = shards(args.shards);
    if let Some(target) = args.witness {
        let curve = census::find_witness(args.p, args.g, &target, args.mode, workers)?;
        let result = analyze(&curve)?;
        return match args.out {
            Output::Json => print_json(&result, false),
            Output::Csv => {
                let coeffs: Vec<String> = result.coeffs.iter().map(|c| c.to_string()).collect();
                println!(
                    "{};{};{}",
                    result.p,
                    coeffs.join(","),
                    format_psi(&result.eo_type)
                );
                Ok(())
            }
        };
    }
    let report = census::run_tally_with(args.p, args.g, args.mode, workers, args.iso)?;
    match args.out {
        Output::Csv => {
            print!("{}", report.to_csv());
            Ok(())
        }
        Output::Json => print_json(&report, false),
    }
}

fn run_fermat(args: FermatArgs) -> Outcome {
    let rows = census::fermat_scan(args.d, &args.primes)?;
    match args.out {
        Output::Json => print_json(&rows, false),
        Output::Csv => {
            println!("p;p_mod_d;p_rank;g;ordinary");
            for r in rows {
                println!("{};{};{};{};{}", r.p, r.p_mod_d, r.p_rank, r.g, r.ordinary);
            }
            Ok(())
        }
    }
}

fn run_oracle_check(args: OracleArgs) -> Outcome {
    let report = census::oracle_check(args.p, args.g, args.mode, seed()?, shards(args.shards))?;
    println!("{} curves, {} mismatches", report.curves, report.mismatches);
    match report.first_mismatch {
        None => Ok(()),
        Some(m) => {
            let coeffs: Vec<String> = m.coeffs.iter().map(|c| c.to_string()).collect();
            println!(
                "first mismatch: p={} coeffs={} hasse_witt={} zeta={}",
                args.p,
                coeffs.join(","),
                m.hasse_witt,
                m.zeta
            );
            Err(Failure::Mismatch)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let outcome = match cli.command {
        Command::Analyze(a) => run_analyze(a),
        Command::Search(a) => run_search(a),
        Command::Fermat(a) => run_fermat(a),
        Command::OracleCheck(a) => run_oracle_check(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::NotFound(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(3)
        }
        Err(Failure::Mismatch) => ExitCode::from(4),
    }
}
