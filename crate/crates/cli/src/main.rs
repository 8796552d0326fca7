use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ellidiff::config::{self, parse_complex, parse_tolerance, Suite, SuiteConfig, C};
use ellidiff::eval;
use ellidiff_core::weight::WeightPoint;
use num_complex::Complex64;

const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;

#[derive(Parser)]
#[command(name = "ellidiff", version, about = "Numerical verification of the elliptic C2 difference operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and report every check.
    Verify(VerifyArgs),
    /// Print a single complex value.
    #[command(subcommand)]
    Eval(EvalCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run (repeatable); all suites when omitted.
    #[arg(long = "suite", value_name = "NAME", value_parser = parse_suite)]
    suites: Vec<Suite>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "1.1i")]
    tau: Complex64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0.1")]
    hbar: Complex64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0.5")]
    omega1: Complex64,
    #[arg(long, default_value_t = config::DEFAULT_SAMPLES, allow_hyphen_values = true)]
    samples: usize,
    #[arg(long, default_value_t = config::DEFAULT_SEED)]
    seed: u64,
    /// Tolerance override SUITE=EPS for the upper-bound checks of a suite (repeatable).
    #[arg(long = "tol", value_name = "SUITE=EPS", value_parser = parse_tolerance)]
    tol: Vec<(Suite, f64)>,
    /// Also write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Args)]
struct Modulus {
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "1.1i")]
    tau: Complex64,
}

#[derive(Subcommand)]
enum EvalCommand {
    /// d^order/dz^order theta_kind(z | tau).
    Theta {
        #[arg(long)]
        kind: u8,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
        #[arg(long, default_value_t = 0)]
        order: u8,
        #[command(flatten)]
        modulus: Modulus,
    },
    /// Weierstrass p(z) for the half periods (omega1, omega1 tau).
    Wp {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0.5")]
        omega1: Complex64,
        #[command(flatten)]
        modulus: Modulus,
    },
    /// Face weight W_11 with edges given as e1, -e1, e2, -e2.
    Weight {
        /// lambda as "l1,l2".
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        lambda: WeightPoint,
        #[arg(long, allow_hyphen_values = true)]
        top: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        bottom: String,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        u: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0.1")]
        hbar: Complex64,
        #[command(flatten)]
        modulus: Modulus,
    },
    /// (M~_d f_i)(lambda) for the basis function f_i, i = 0..3.
    Operator {
        #[arg(long)]
        degree: u8,
        #[arg(long)]
        basis: u8,
        /// lambda as "l1,l2".
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        lambda: WeightPoint,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0.1")]
        hbar: Complex64,
        #[command(flatten)]
        modulus: Modulus,
    },
}

fn parse_suite(s: &str) -> Result<Suite, config::ConfigError> {
    s.parse()
}

fn parse_point(s: &str) -> Result<WeightPoint, config::ConfigError> {
    let (a, b) = s.split_once(',').ok_or_else(|| config::ConfigError::BadComplex(s.to_string()))?;
    Ok(WeightPoint::new(parse_complex(a)?, parse_complex(b)?))
}

fn verify(args: VerifyArgs) -> ExitCode {
    let cfg = SuiteConfig {
        tau: C(args.tau),
        hbar: C(args.hbar),
        omega1: C(args.omega1),
        samples: args.samples,
        seed: args.seed,
        tol_overrides: args.tol.into_iter().collect(),
        suites: args.suites,
    };
    let report = match ellidiff::run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    match args.format {
        Format::Table => print!("{}", report.to_table()),
        Format::Json => println!("{}", report.to_json()),
    }
    if let Some(path) = args.report {
        if let Err(e) = std::fs::write(&path, report.to_json()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_CONFIG);
        }
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

fn evaluate(cmd: EvalCommand) -> ellidiff_core::Result<Complex64> {
    match cmd {
        EvalCommand::Theta { kind, z, order, modulus } => eval::eval_theta(kind, z, modulus.tau, order),
        EvalCommand::Wp { z, omega1, modulus } => eval::eval_wp(z, omega1, modulus.tau),
        EvalCommand::Weight { lambda, top, right, left, bottom, u, hbar, modulus } => {
            let edges = [
                eval::parse_edge(&top)?,
                eval::parse_edge(&right)?,
                eval::parse_edge(&left)?,
                eval::parse_edge(&bottom)?,
            ];
            eval::eval_weight(lambda, edges, u, hbar, modulus.tau)
        }
        EvalCommand::Operator { degree, basis, lambda, hbar, modulus } => {
            eval::eval_operator(degree, basis, lambda, hbar, modulus.tau)
        }
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Verify(args) => verify(args),
        Command::Eval(cmd) => match evaluate(cmd) {
            Ok(z) => {
                println!("{z}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_CONFIG)
            }
        },
    }
}
