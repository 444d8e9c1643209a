//! `cspoly`: construct, certify and bound cs 2-neighborly polytopes.
//!
//! Exit codes: 0 success, 1 a certification check failed, 2 bad arguments,
//! malformed input or I/O failure, 3 construction failure.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "cspoly", version, about)]
struct Cli {
    /// Worker threads for certification scans (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    /// Cap on violations listed in reports.
    #[arg(long, global = true, default_value_t = cspoly::predicates::DEFAULT_MAX_VIOLATIONS)]
    max_violations: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build an almost acute cs set of 2^(d-1)+2 points.
    Construct(ConstructArgs),
    /// Certify that a point set is the vertex set of a cs 2-neighborly polytope.
    Certify(CertifyArgs),
    /// Print the vertex and edge bounds for a dimension.
    Bounds(BoundsArgs),
    /// Construct and certify in one run.
    Demo(DemoArgs),
}

#[derive(Debug, Args)]
struct BuildArgs {
    #[arg(long)]
    dim: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Apex height as an integer or p/q; must satisfy c² > d-1.
    #[arg(long)]
    c: Option<String>,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[command(flatten)]
    build: BuildArgs,
    /// Point-set file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Construction trace JSON.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CertifyArgs {
    #[arg(long)]
    input: PathBuf,
    /// Target dimension (defaults to the file header).
    #[arg(long)]
    dim: Option<usize>,
    /// Report JSON (stdout when omitted).
    #[arg(long)]
    report: Option<PathBuf>,
    /// Dump every certificate to this file.
    #[arg(long)]
    certs: Option<PathBuf>,
    /// Cross-check edges against facet enumeration (small inputs only).
    #[arg(long)]
    brute_force: bool,
    /// Skip the direct hyperplanes and certify through the LP only.
    #[arg(long)]
    lp_only: bool,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    #[arg(long)]
    dim: usize,
    /// Vertex count for the edge bounds.
    #[arg(long)]
    n: Option<u64>,
}

#[derive(Debug, Args)]
struct DemoArgs {
    #[command(flatten)]
    build: BuildArgs,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long)]
    certs: Option<PathBuf>,
    #[arg(long)]
    lp_only: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(2);
        }
    };
    let code = pool.install(|| commands::run(&cli));
    ExitCode::from(code)
}
