//! `pnm`: define, combine, analyze and query PNmatrices from the shell.
//!
//! Exit codes: 0 yes/ok, 1 no/refuted, 2 unknown/inconclusive, 3 usage
//! error, 4 runtime error.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_USAGE: u8 = 3;
pub const EXIT_RUNTIME: u8 = 4;

#[derive(Parser)]
#[command(
    name = "pnm",
    version,
    about = "Partial non-deterministic matrices: combination, analysis and consequence"
)]
pub struct Cli {
    /// Machine-readable output on standard output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// A fixture name (reducts as `name[c1,c2]`) or a matrix file path.
pub type MatrixArg = String;

#[derive(Subcommand)]
pub enum Command {
    /// Parse formulas and print them canonically.
    Parse {
        #[arg(long)]
        formulas: String,
        /// Signature taken from this matrix.
        #[arg(long, conflicts_with = "signature")]
        matrix: Option<MatrixArg>,
        /// Explicit signature, e.g. "neg/1, and/2".
        #[arg(long)]
        signature: Option<String>,
    },
    /// Classification, viable components and spurious values.
    Info { matrix: MatrixArg },
    /// Strict product of two matrices.
    Product {
        #[arg(long)]
        left: MatrixArg,
        #[arg(long)]
        right: MatrixArg,
        /// Remove spurious values.
        #[arg(long)]
        prune: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Sum of matrices over a common signature.
    Sum {
        /// Repeat for each summand.
        #[arg(long = "matrix", required = true, num_args = 1)]
        matrices: Vec<MatrixArg>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// k-th power of a matrix.
    Power {
        #[arg(long)]
        matrix: MatrixArg,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Extension to a larger signature (new connectives are unconstrained).
    Extend {
        #[arg(long)]
        matrix: MatrixArg,
        /// Connectives to add, e.g. "box/1, fuse/2".
        #[arg(long)]
        signature: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Reduct to a subset of the connectives.
    Reduct {
        #[arg(long)]
        matrix: MatrixArg,
        /// Comma-separated connective names to keep.
        #[arg(long)]
        connectives: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Remove spurious values.
    Prune {
        #[arg(long)]
        matrix: MatrixArg,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Decide a consequence query.
    Decide {
        #[arg(long)]
        matrix: MatrixArg,
        #[command(flatten)]
        query: QueryArgs,
    },
    /// Check the soundness of a calculus.
    CheckRules {
        #[arg(long)]
        matrix: MatrixArg,
        /// Rule file, one `name : A, B |- C, D` per line.
        #[arg(long, conflicts_with = "calculus", required_unless_present = "calculus")]
        rules: Option<PathBuf>,
        /// Built-in calculus.
        #[arg(long, value_enum)]
        calculus: Option<BuiltinCalculus>,
    },
    /// One-variable separators for pairs of usable values.
    Separators {
        #[arg(long)]
        matrix: MatrixArg,
        /// First value of a single pair.
        #[arg(long, requires = "y")]
        x: Option<String>,
        /// Second value of a single pair.
        #[arg(long, requires = "x")]
        y: Option<String>,
        #[command(flatten)]
        sep: SeparatorArgs,
    },
    /// Whether every pair of usable values has a separator.
    Monadic {
        #[arg(long)]
        matrix: MatrixArg,
        #[command(flatten)]
        sep: SeparatorArgs,
    },
    /// Bounded search for a witness that the matrix is not saturated.
    RefuteSaturation {
        #[arg(long)]
        matrix: MatrixArg,
        #[command(flatten)]
        sat: SaturationArgs,
    },
    /// Advice on splitting a matrix into two reducts.
    SplitAdvice {
        #[arg(long)]
        matrix: MatrixArg,
        /// Connectives of the first part, comma-separated.
        #[arg(long)]
        left: String,
        /// Connectives of the second part, comma-separated.
        #[arg(long)]
        right: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        sep: SeparatorArgs,
        #[command(flatten)]
        sat: SaturationArgs,
    },
    /// Matrix for the combination of two logics.
    Combine {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::Multiple)]
        mode: ModeArg,
        /// Remove spurious values (multiple mode).
        #[arg(long)]
        prune: bool,
        /// Single mode: take these powers of the inputs.
        #[arg(long, num_args = 2, value_names = ["K1", "K2"])]
        powers: Option<Vec<usize>>,
        #[command(flatten)]
        sat: SaturationArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Decide a query in the combination of two logics.
    DecideCombined {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long, value_enum, default_value_t = Route::Partition)]
        route: Route,
        /// Extra context formulas for the partition route.
        #[arg(long, default_value = "")]
        ctx_extra: String,
        /// Cap on context formulas not forced by the query.
        #[arg(long, default_value_t = pnmatrix::combine::CTX_CAP)]
        max_free: usize,
    },
    /// Semi-decide a single-conclusion query after adding axiom schemas.
    AxiomDerive {
        #[arg(long)]
        matrix: MatrixArg,
        /// Axiom schemas, comma-separated; defaults to the two implication axioms.
        #[arg(long)]
        axioms: Option<String>,
        /// Connectives the axioms and query add to the matrix, e.g. "imp/2".
        #[arg(long)]
        signature: Option<String>,
        #[arg(long, default_value = "")]
        premises: String,
        #[arg(long)]
        conclusion: String,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// List the built-in fixtures, or print one.
    Fixtures {
        #[arg(long)]
        name: Option<String>,
    },
}

#[derive(Args)]
pub struct OutArgs {
    /// Write the matrix here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct PairArgs {
    #[arg(long)]
    pub left: MatrixArg,
    #[arg(long)]
    pub right: MatrixArg,
    /// Treat the left input as saturated without searching.
    #[arg(long)]
    pub left_saturated: bool,
    #[arg(long)]
    pub right_saturated: bool,
}

#[derive(Args)]
pub struct QueryArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::Multiple)]
    pub mode: ModeArg,
    /// Comma-separated formulas; empty for none.
    #[arg(long, default_value = "")]
    pub premises: String,
    #[arg(long, default_value = "")]
    pub conclusions: String,
}

#[derive(Args)]
pub struct SeparatorArgs {
    /// Connectives the separators may use; defaults to the whole signature.
    #[arg(long)]
    pub connectives: Option<String>,
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
    #[arg(long, default_value_t = 5000)]
    pub max_candidates: usize,
}

#[derive(Args)]
pub struct SaturationArgs {
    #[arg(long, default_value_t = 2)]
    pub max_premises: usize,
    #[arg(long, default_value_t = 3)]
    pub max_conclusions: usize,
    #[arg(long, default_value_t = 1)]
    pub premise_depth: usize,
    #[arg(long, default_value_t = 2)]
    pub conclusion_depth: usize,
    #[arg(long, default_value_t = 3)]
    pub max_vars: usize,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Multiple,
    Single,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Route {
    /// Partition a context and ask each component.
    Partition,
    /// Decide over the strict product.
    Product,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum BuiltinCalculus {
    Classical,
    KleeneKs,
    Sources,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_RUNTIME)
        }
    }
}
