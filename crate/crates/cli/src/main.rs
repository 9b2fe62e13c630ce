//! etaq: exact arithmetic, Ramanujan sums and truncated Ramanujan
//! expansions over F_q[T], with machine-readable output.
//!
//! Exit codes: 0 success, 2 parse/usage error, 3 domain error,
//! 4 verification failure, 5 resource budget exceeded.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use etaq_core::Error;

use output::OutputFormat;

/// Budget-cap override, lowest precedence after --budget and the config.
pub const BUDGET_ENV: &str = "ETAQ_BUDGET";

#[derive(Parser)]
#[command(
    name = "etaq",
    version,
    about = "Exact arithmetic, Ramanujan sums and truncated Ramanujan expansions over F_q[T]"
)]
struct Cli {
    /// JSON config file supplying defaults for q/p/n, deg-bound,
    /// tolerance, format and budget.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Cap on enumerated tuples (overrides ETAQ_BUDGET and the config).
    #[arg(long, global = true)]
    budget: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// Field order, validated as a prime power.
    #[arg(long, conflicts_with_all = ["p", "n"])]
    q: Option<u64>,

    /// Characteristic (requires --n).
    #[arg(long, requires = "n")]
    p: Option<u64>,

    /// Extension degree (requires --p).
    #[arg(long, requires = "p")]
    n: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect the coefficient field (order, characteristic, modulus).
    Field {
        #[command(subcommand)]
        sub: FieldCmd,
    },
    /// Polynomial-ring computations.
    Poly {
        #[command(subcommand)]
        sub: PolyCmd,
    },
    /// Evaluate arithmetic functions on a monic polynomial.
    Arith {
        #[command(subcommand)]
        sub: ArithCmd,
    },
    /// Ramanujan sum η(G,H) or its unitary variant.
    Eta {
        #[command(flatten)]
        field: FieldArgs,
        /// First argument G (any polynomial).
        #[arg(long = "G")]
        g: String,
        /// Modulus H (monic).
        #[arg(long = "H")]
        h: String,
        #[arg(long)]
        unitary: bool,
        #[arg(long, value_enum, default_value = "divisor")]
        method: MethodArg,
    },
    /// Expansion coefficient for a tuple (H_1,...,H_k).
    Coeff {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Exponent s (defaults to 1; forced to 0 for tau).
        #[arg(long)]
        s: Option<f64>,
        /// Tuple coordinates H_i (monic), repeatable.
        #[arg(long = "H", required = true)]
        h: Vec<String>,
        #[arg(long)]
        unitary: bool,
        #[arg(long, value_enum, default_value = "closed")]
        mode: CoeffModeArg,
        /// Degree bound for the special/general truncated sums.
        #[arg(long = "deg-bound")]
        deg_bound: Option<u32>,
        /// Irreducible degree bound for the Euler-product route.
        #[arg(long = "prime-deg-bound", default_value_t = 3)]
        prime_deg_bound: u32,
        /// Exponent cap per local factor for the Euler-product route.
        #[arg(long = "exp-bound", default_value_t = 4)]
        exp_bound: u32,
    },
    /// Truncated expansion partial sums at (G_1,...,G_k).
    Expand {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        s: Option<f64>,
        /// Arguments G_i (monic), repeatable.
        #[arg(long = "G", required = true)]
        g: Vec<String>,
        #[arg(long)]
        unitary: bool,
        #[arg(long = "deg-bound")]
        deg_bound: Option<u32>,
    },
    /// Verify a closed-form expansion identity and report residuals.
    Verify {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum)]
        identity: FamilyArg,
        #[arg(long)]
        s: Option<f64>,
        /// Number of variables; must match the number of --G arguments.
        #[arg(long)]
        k: usize,
        #[arg(long = "G", required = true)]
        g: Vec<String>,
        #[arg(long)]
        unitary: bool,
        #[arg(long = "deg-bound")]
        deg_bound: Option<u32>,
        /// Residual tolerance (defaults to the geometric-tail allowance).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// ζ_A(s): closed form and truncated partial sum.
    Zeta {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        s: f64,
        #[arg(long = "deg-bound")]
        deg_bound: Option<u32>,
    },
    /// Run the built-in invariant suite.
    Selftest {
        #[arg(long, value_enum, default_value = "quick")]
        level: LevelArg,
    },
}

#[derive(Subcommand)]
enum FieldCmd {
    /// Print p, n, q and the reduction modulus.
    Info {
        #[command(flatten)]
        field: FieldArgs,
    },
}

#[derive(Subcommand)]
enum PolyCmd {
    /// Factor a polynomial into unit times monic irreducible powers.
    Factor {
        #[command(flatten)]
        field: FieldArgs,
        poly: String,
    },
    /// Greatest common monic divisor.
    Gcd {
        #[command(flatten)]
        field: FieldArgs,
        a: String,
        b: String,
    },
    /// List the (unitary) monic divisors.
    Divisors {
        #[command(flatten)]
        field: FieldArgs,
        poly: String,
        #[arg(long)]
        unitary: bool,
    },
}

#[derive(Subcommand)]
enum ArithCmd {
    /// Evaluate a named arithmetic function at a monic polynomial.
    Eval {
        #[command(flatten)]
        field: FieldArgs,
        /// One of: mobius, liouville, omega, bigomega, tau, sigma, phi,
        /// psi, beta, mobius-star, tau-star, sigma-star, phi-star.
        #[arg(long = "fn")]
        function: String,
        /// Exponent for sigma/phi/psi/beta (defaults to 1).
        #[arg(long)]
        s: Option<f64>,
        g: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Divisor,
    Character,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Sigma,
    Tau,
    Beta,
    Phi,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoeffModeArg {
    Closed,
    Special,
    General,
    Euler,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse { .. } => 2,
        Error::Domain(_) | Error::DivisionByZero(_) => 3,
        Error::InvariantFailure(_) => 4,
        Error::Resource(_) => 5,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
