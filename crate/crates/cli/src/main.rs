mod commands;
mod input;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "enh", version, about = "E_n-homology of commutative dg algebras via twisted iterated bar complexes")]
struct Cli {
    /// Worker threads (default: available processors).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Homology and/or cohomology tables of M ⊗ Σ⁻ⁿBⁿ(A) with the twisted differential.
    Compute(ComputeArgs),
    /// Run selected verification checks.
    Verify(VerifyArgs),
    /// List the n-level trees with a given number of leaves.
    Trees(TreesArgs),
    /// Compare the n = 1 complex with the shifted Hochschild complex of A_+.
    Oracle(OracleArgs),
    /// Barratt–Eccles retract, cells, θ restriction and twisting-cochain lifts.
    OperadVerify(OperadArgs),
    /// Betti number at one degree for n = 1..=n_max.
    Stability(StabilityArgs),
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// Algebra document path or `builtin:name[:params]`.
    #[arg(long)]
    algebra: String,
    /// Bimodule document path or `builtin:name`.
    #[arg(long)]
    module: String,
    /// Coefficient ring: q, z or f:P.
    #[arg(long, default_value = "q")]
    ring: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Homology,
    Cohomology,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    max_degree: i64,
    #[arg(long, value_enum, default_value = "homology")]
    mode: ModeArg,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Reproduce the worked ∂_θ example (four degree variants).
    #[arg(long)]
    golden_example: bool,
    /// d² = 0 on the assembled complexes (needs --algebra and --module).
    #[arg(long)]
    d_squared: bool,
    /// Validate the input presentations (needs --algebra and --module).
    #[arg(long)]
    axioms: bool,
    /// θ lands in the restricted complete-graph cell.
    #[arg(long)]
    theta_restriction: bool,
    /// Retract identities between Barratt–Eccles and Com.
    #[arg(long)]
    retract: bool,
    /// Variation counts against the K_n colimit.
    #[arg(long)]
    cells: bool,
    /// Hochschild shift comparison (needs --algebra and --module).
    #[arg(long)]
    oracle: bool,
    #[arg(long)]
    algebra: Option<String>,
    #[arg(long)]
    module: Option<String>,
    #[arg(long, default_value = "q")]
    ring: String,
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value_t = 4)]
    max_degree: i64,
    #[arg(long, default_value_t = 3)]
    arity: usize,
    #[arg(long, default_value_t = 2)]
    max_simplicial_degree: usize,
    #[arg(long, default_value_t = 3)]
    theta_levels: usize,
    #[arg(long, default_value_t = 4)]
    theta_leaves: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TreesArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    leaves: usize,
    #[arg(long, value_enum, default_value = "tsv")]
    format: Format,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Compare degrees 0..=max_degree of the bar side.
    #[arg(long, default_value_t = 5)]
    max_degree: i64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct OperadArgs {
    #[arg(long, default_value_t = 4)]
    arity: usize,
    #[arg(long, default_value_t = 3)]
    max_simplicial_degree: usize,
    #[arg(long, default_value_t = 3)]
    theta_levels: usize,
    #[arg(long, default_value_t = 4)]
    theta_leaves: usize,
    /// Tree levels n for which the twisting cochain is lifted.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    levels: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    lift_arity: usize,
    #[arg(long, default_value_t = 3)]
    lift_degree: usize,
    #[arg(long, default_value_t = 3)]
    lift_leaves: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct StabilityArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    degree: i64,
    #[arg(long)]
    n_max: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let result = match cli.command {
        Command::Compute(a) => commands::compute(a),
        Command::Verify(a) => commands::verify(a),
        Command::Trees(a) => commands::trees(a),
        Command::Oracle(a) => commands::oracle(a),
        Command::OperadVerify(a) => commands::operad_verify(a),
        Command::Stability(a) => commands::stability(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
