use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod manifest;

/// Soft triples, their coset planes, and the converse extraction.
#[derive(Parser, Debug)]
#[command(name = "softplane", version, about)]
struct Cli {
    /// Cap on enumerated group elements and collineations.
    #[arg(long, global = true, env = "SOFTPLANE_MAX_ELEMENTS", default_value_t = softplane::limits::DEFAULT_MAX_ELEMENTS)]
    max_elements: usize,

    /// Worker threads for parallel sections.
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a construction and write group, triple, plane and action files.
    Build(BuildArgs),
    /// Check the four conditions and their consequences for a triple file.
    Verify {
        #[arg(long)]
        triple: PathBuf,
    },
    /// Elation structure and the proposition battery of a triple.
    Analyze(AnalyzeArgs),
    /// Recover a soft triple from a plane and collineation generators.
    Extract(ExtractArgs),
    /// Exhaustive soft-triple search in a small group, or the index-p
    /// subgroup search in a decorated group.
    Search(SearchArgs),
    /// Arithmetic feasibility filters for a plane order.
    Feasible {
        n: u64,
        #[arg(long)]
        json: bool,
    },
    /// Re-emit a plane file in another format.
    Export {
        #[arg(long)]
        plane: PathBuf,
        #[arg(long, value_enum, default_value_t = ExportFormat::IncidenceMatrix)]
        format: ExportFormat,
        /// Write here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    IncidenceMatrix,
    Plane,
    Json,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Output directory.
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
    /// Stem for output file names.
    #[arg(long, global = true)]
    pub name: Option<String>,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[command(subcommand)]
    pub construction: Construction,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Subcommand, Debug)]
pub enum Construction {
    /// Upper unitriangular 3x3 matrices over GF(q) or a semifield table.
    Heisenberg {
        #[arg(long, required_unless_present = "semifield", conflicts_with = "semifield")]
        q: Option<u32>,
        #[arg(long)]
        semifield: Option<PathBuf>,
    },
    /// A ⋉ F^4 for q odd, q = 2 mod 3.
    Likeable {
        #[arg(long)]
        q: u32,
        /// Additive map file (`ADDITIVE q`); defaults to zero.
        #[arg(long)]
        l: Option<PathBuf>,
    },
    /// Extension by a field automorphism acting on entries.
    Decorate {
        #[arg(long, value_enum, default_value_t = Base::Heisenberg)]
        base: Base,
        #[arg(long)]
        q: u32,
        /// `frobenius^e`, the map x -> x^(p^e).
        #[arg(long, default_value = "frobenius^1")]
        alpha: String,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Base {
    Heisenberg,
    Likeable,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub triple: PathBuf,
    /// Run the proposition battery (default when nothing else is chosen).
    #[arg(long)]
    pub battery: bool,
    /// Ideal line and point checks.
    #[arg(long)]
    pub ideals: bool,
    /// Elation counts and translation-plane test.
    #[arg(long)]
    pub elations: bool,
    /// Battery as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct ExtractArgs {
    #[arg(long)]
    pub plane: PathBuf,
    /// Collineation generators (`COLLINEATIONS` file).
    #[arg(long, alias = "group")]
    pub action: PathBuf,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
#[command(args_conflicts_with_subcommands = true)]
pub struct SearchArgs {
    #[command(subcommand)]
    pub decorated: Option<SearchSub>,
    #[arg(long)]
    pub group: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Disable early rejection (for cross-checking).
    #[arg(long)]
    pub no_prune: bool,
    /// Resumable progress log.
    #[arg(long)]
    pub progress: Option<PathBuf>,
    /// Largest group order searched.
    #[arg(long, default_value_t = softplane::converse::SEARCH_MAX_ORDER)]
    pub max_order: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Subcommand, Debug)]
pub enum SearchSub {
    /// Index-p subgroups of a decorated group.
    Decorated {
        #[arg(long, value_enum, default_value_t = Base::Heisenberg)]
        base: Base,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value = "frobenius^1")]
        alpha: String,
    },
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(e) = err.downcast_ref::<softplane::Error>() {
        if e.is_budget() {
            return 3;
        }
        if e.is_usage() {
            return 2;
        }
        return 1;
    }
    if err.downcast_ref::<std::io::Error>().is_some() {
        return 2;
    }
    match err.downcast_ref::<commands::Usage>() {
        Some(_) => 2,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    softplane::limits::set_max_elements(cli.max_elements);
    if let Some(w) = cli.workers {
        if let Err(e) = softplane::limits::set_worker_threads(w) {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let argv: Vec<String> = std::env::args().skip(1).collect();
    match commands::run(cli.command, argv) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
