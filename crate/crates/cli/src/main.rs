mod checks;
mod commands;
mod report;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "hypiso", version, about = "Isogenies between hyperelliptic Jacobians from polynomial factorizations")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Fixture directory holding `families/` and `weil/`.
    #[arg(long, global = true, env = "HYPISO_FIXTURES", default_value = "fixtures")]
    pub fixtures: PathBuf,
    /// Emit versioned JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Base seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Run the long checks: simplicity for g ≥ 12 and the f31 quadratic kernel.
    #[arg(long, global = true)]
    pub deep: bool,
    /// Worker threads for per-family sweeps.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: u32,
    /// Include wall-clock timings (JSON output is then no longer reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Fixture integrity checks.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Differential representations.
    #[command(subcommand)]
    Diff(DiffCmd),
    /// Kernel group at a specialization.
    Kernel(KernelArgs),
    /// Cantor-arithmetic checks on Jacobians.
    #[command(subcommand)]
    Jac(JacCmd),
    /// Absolute simplicity from a Weil-coefficient table.
    Simple(SimpleArgs),
    /// Every row of the main theorem: factorization, symmetry, m, kernel, simplicity.
    TheoremTable(TableArgs),
}

#[derive(Subcommand, Debug)]
pub enum CatalogCmd {
    /// Factorization, symmetry and normalization constants.
    Verify {
        /// `f7` … `f31`, `cyclic-N[-E]` or `dickson-N[-I]`; all literal families if absent.
        #[arg(long)]
        family: Option<String>,
    },
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long, default_value = "linear")]
    pub construction: String,
}

#[derive(Subcommand, Debug)]
pub enum DiffCmd {
    /// The matrix of φ on differentials, one row per line.
    Matrix {
        #[command(flatten)]
        fam: FamilyArgs,
        /// Use the basis x^(i-1)dx/y instead of d(x^i)/y.
        #[arg(long)]
        holomorphic: bool,
    },
    /// m with M(φ)·M(φ̂) = m·I, or the offending product.
    Rosati {
        #[command(flatten)]
        fam: FamilyArgs,
    },
}

#[derive(Args, Debug)]
pub struct KernelArgs {
    #[command(flatten)]
    pub fam: FamilyArgs,
    /// Assignments such as "s1=1 s2=6"; the catalog's specialization if absent.
    #[arg(long)]
    pub params: Option<String>,
    #[arg(long)]
    pub prime: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum JacCmd {
    /// φ̂(φ(D)) = [m]D on random divisor classes.
    Roundtrip(RoundtripArgs),
}

#[derive(Args, Debug)]
pub struct RoundtripArgs {
    #[command(flatten)]
    pub fam: FamilyArgs,
    #[arg(long)]
    pub prime: u64,
    /// Assignments for t and s, e.g. "t=0 s=4".
    #[arg(long)]
    pub params: String,
    #[arg(long, default_value_t = 10)]
    pub count: u64,
}

#[derive(Args, Debug)]
pub struct SimpleArgs {
    /// A `.weil` file, looked up under `<fixtures>/weil` when not found as given.
    #[arg(long)]
    pub weil: PathBuf,
    #[arg(long, default_value_t = 2000)]
    pub prime_bound: u64,
    /// Ignore errata declared in the table.
    #[arg(long)]
    pub verbatim: bool,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long, default_value_t = 2000)]
    pub prime_bound: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = commands::run(&cli);
    ExitCode::from(code as u8)
}
