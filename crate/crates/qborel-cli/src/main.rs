mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qborel::uqalg::DEFAULT_BOUND;

use report::Format;

#[derive(Parser, Debug)]
#[command(name = "qborel", version, about = "Sweeps, catalogs and module constructions for coideal subalgebras of U_q(g)")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every command.
#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Cartan type, either with the rank (`A2`) or without it (`A`, then `--rank`).
    #[arg(long = "type", global = true, default_value = "A2")]
    pub kind: String,
    #[arg(long, global = true)]
    pub rank: Option<usize>,
    /// Degree bound of the algebra engine.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND)]
    pub bound: i32,
    /// Radius of truncated module windows.
    #[arg(long, global = true, default_value_t = 3)]
    pub window: u32,
    /// Worker threads for sweeps; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Report file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for sampled character values.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Include wall-clock timings, which makes reports non-reproducible.
    #[arg(long, global = true)]
    pub timing: bool,
}

/// Selects a subalgebra: a catalog entry or triangular data with `L = supp⊥`.
#[derive(Args, Debug, Clone)]
pub struct BorelArgs {
    /// One of `weyl` (A1), `sl3-type1`, `sl3-type2` (A2), `standard`, `whole`, `custom`.
    #[arg(long, default_value = "custom")]
    pub borel: String,
    /// Reduced word of `w₋`, 1-based, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub w_minus: Vec<usize>,
    /// Reduced word of `w₊`, 1-based, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub w_plus: Vec<usize>,
    /// Simple roots carrying both characters, 1-based.
    #[arg(long, value_delimiter = ',')]
    pub support: Vec<usize>,
    /// Character value on the raising side.
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub lambda: String,
    /// Character value on the lowering side; defaults to the value making the Weyl-algebra constant match.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda_prime: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Graded-algebra sweep over every Weyl group element and support.
    SweepConja {
        #[arg(long, default_value_t = 4)]
        max_shift: u32,
    },
    /// Borel subalgebras of U_q(sl2) or U_q(sl3) with their identities.
    Catalog,
    /// Module induced from a one-dimensional character.
    Induce {
        /// `weyl` for sl2, `sl3-type1` or `sl3-type2`.
        #[arg(long, default_value = "weyl")]
        borel: String,
        /// Value on the raising generator Ē (Ē1 for sl3).
        #[arg(long, allow_hyphen_values = true, default_value = "q")]
        e: String,
        /// Value on the lowering generator; defaults to the constraint solution.
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
        /// Value on K1K2² (sl3 only).
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        k: String,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda_prime: Option<String>,
    },
    /// Bounded right-coideal test for a presentation.
    VerifyCoideal {
        #[command(flatten)]
        borel: BorelArgs,
        /// Longest generator product spanned.
        #[arg(long, default_value_t = 2)]
        length: usize,
    },
    /// Associated graded algebra of one shifted Schubert part.
    Graded {
        /// Reduced word of `w`, 1-based.
        #[arg(long, value_delimiter = ',', required = true)]
        word: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        support: Vec<usize>,
        #[arg(long, default_value_t = 4)]
        max_shift: u32,
    },
    /// Searches for a commutator acting non-nilpotently on simple modules.
    NonbasicWitness {
        #[command(flatten)]
        borel: BorelArgs,
        /// Highest weights separated by `;`, each comma separated; defaults to fundamentals and ρ.
        #[arg(long)]
        weights: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => code.into(),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
