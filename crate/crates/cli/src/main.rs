mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "steadycert", version, about = "Exact steady-state and stability certificates for repressilator models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Seed for every random choice; recorded in the output.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,

    /// Worker threads (default: available cores for sweeps and certify, 1 elsewhere).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Cap on S-pairs per Gröbner computation.
    #[arg(long, global = true)]
    pub budget_pairs: Option<usize>,

    /// Wall-clock cap in seconds per Gröbner computation (STEADYCERT_BUDGET_SECS overrides).
    #[arg(long, global = true)]
    pub budget_secs: Option<f64>,

    /// Output path; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    #[arg(long)]
    pub model: Option<String>,
    /// `s=3/10,b=4,g=0.6`; decimals are read exactly.
    #[arg(long, conflicts_with = "config")]
    pub params: Option<String>,
    /// JSON file `{"model": ..., "params": {...}}`.
    #[arg(long)]
    pub config: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Order {
    Lex,
    Degrevlex,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// All steady states with positivity flags.
    SteadyStates {
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Linear stability of the positive steady state.
    Stability {
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Exact search for Hopf witnesses over a grid or random samples.
    HopfScan {
        #[command(flatten)]
        model: ModelArgs,
        /// `name:lo:hi:count,...`
        #[arg(long, conflicts_with = "samples")]
        grid: Option<String>,
        /// Logarithmic grid spacing.
        #[arg(long)]
        log: bool,
        /// Number of log-uniform random samples.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value = "1e-2:1e2")]
        range: String,
        /// Cross-check against the symbolic Hopf formula (3D models).
        #[arg(long)]
        formula: bool,
    },
    /// Certified enumeration of real steady states.
    Certify {
        #[command(flatten)]
        model: ModelArgs,
        /// Sample count; a single point from --params when absent.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value = "1e-3:1e3")]
        range: String,
        /// bwd6d: solve this many samples by a direct Gröbner basis as well.
        #[arg(long)]
        gb_cross_check: Option<usize>,
        /// rep3d: add the Allwright condition at every point.
        #[arg(long)]
        allwright: bool,
    },
    /// Checks of the stored ideal decompositions.
    VerifyDecomposition {
        #[arg(long)]
        which: String,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Integrates one trajectory.
    Simulate {
        #[command(flatten)]
        model: ModelArgs,
        /// Initial state, comma separated.
        #[arg(long, required = true)]
        init: Option<String>,
        #[arg(long)]
        t_end: Option<f64>,
        #[arg(long, default_value_t = 1e-8)]
        rel_tol: f64,
        #[arg(long, default_value_t = 1e-10)]
        abs_tol: f64,
        #[arg(long)]
        max_step: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Stability and oscillation map over a parameter grid.
    Sweep {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        grid: String,
        #[arg(long)]
        log: bool,
        /// `fixed:1,2,2` or `perturb:0.1`.
        #[arg(long, default_value = "perturb:0.1")]
        x0: String,
        #[arg(long)]
        t_end: Option<f64>,
        /// Eigenvalue verdicts only, no simulation.
        #[arg(long)]
        eigen_only: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Gröbner basis of an ideal in JSON form.
    Groebner {
        #[arg(long)]
        input: std::path::PathBuf,
        #[arg(long, value_enum, default_value_t = Order::Degrevlex)]
        order: Order,
        /// Return the reduced basis.
        #[arg(long)]
        reduce: bool,
    },
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli, &argv[1..]) {
        Ok(outcome) => ExitCode::from(outcome),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
