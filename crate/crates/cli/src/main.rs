use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

use commands::{Failure, Report};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

/// Exact computations with Wall forms.
#[derive(Parser, Debug)]
#[command(name = "wallform", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Coefficient bound for searches and vertex enumeration.
    #[arg(long, global = true, default_value_t = 1)]
    pub bound: u32,

    /// Largest padding rank tried by `stable-rank`.
    #[arg(long, global = true, default_value_t = 2)]
    pub jmax: usize,

    /// Highest homology degree computed.
    #[arg(long = "max-degree", global = true, default_value_t = 2)]
    pub max_degree: usize,

    /// Node cap for rank searches and simplex cap for complexes.
    #[arg(long, global = true, default_value_t = 2_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Write the command's artifact (form, witness or complex) to this path.
    #[arg(long, global = true)]
    pub emit: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the form axioms.
    Validate { file: PathBuf },
    /// Certified bounds on the rank.
    Rank { file: PathBuf },
    /// Certified lower bound on the stable rank.
    StableRank { file: PathBuf },
    /// Orthogonal complement of the document's `sub` or `morphism`.
    Complement { file: PathBuf },
    /// Build the truncated complex of embedded W^1s.
    Complex { file: PathBuf },
    /// Homology of the truncated complex.
    Homology { file: PathBuf },
    /// Local Cohen-Macaulay evidence for dimension `n`.
    Lcm {
        file: PathBuf,
        #[arg(default_value_t = 1)]
        n: i64,
    },
    /// Connectivity evidence; `g` defaults to the certified rank.
    Connectivity { file: PathBuf, g: Option<usize> },
    /// Automorphism carrying `f2` to `f1`.
    Transitivity { file: PathBuf },
    /// Rank witness inside the kernel of the document's `probe`.
    KernelWitness { file: PathBuf },
    /// Cancel a W^1 summand from the document's `iso`.
    Cancel { file: PathBuf },
    /// Print the standard form of rank `g`; `h` is like `0`, `Z`, `Z/2+Z/4`.
    StandardForm {
        g: usize,
        #[arg(default_value = "0")]
        h: String,
        #[arg(default_value = "param:trivial")]
        param: String,
    },
}

fn init_threads() {
    if let Ok(v) = std::env::var("WALLFORM_THREADS") {
        if let Ok(n) = v.trim().parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn emit(cli: &Cli, report: &Report) -> anyhow::Result<()> {
    if let Some(path) = &cli.emit {
        let text = match &report.artifact {
            Some(commands::Artifact::Json(v)) => serde_json::to_string_pretty(v)? + "\n",
            Some(commands::Artifact::Text(t)) => t.clone(),
            None => serde_json::to_string_pretty(&report.json)? + "\n",
        };
        std::fs::write(path, text)?;
    }
    Ok(())
}

fn print(cli: &Cli, report: &Report) {
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report.json).expect("reports serialize")),
        Format::Table => print!("{}", report.text),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    init_threads();
    match commands::run(&cli) {
        Ok(report) => {
            if let Err(e) = emit(&cli, &report) {
                eprintln!("error: {e:#}");
                return ExitCode::from(3);
            }
            print(&cli, &report);
            ExitCode::from(report.exit)
        }
        Err(Failure::Report(report)) => {
            print(&cli, &report);
            ExitCode::from(report.exit)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
