mod cache;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use descent_core::GroupType;

#[derive(Parser, Debug)]
#[command(name = "descent", version, about = "Exact descent algebras of type D (and type A)")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Group type
    #[arg(long = "type", global = true, default_value = "D", value_parser = parse_type)]
    pub group_type: GroupType,
    /// Rank: D_n, or the symmetric group on n letters for type A
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Work modulo this prime
    #[arg(long, global = true)]
    pub p: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Directory holding cached structure tables
    #[arg(long, global = true, env = "DESCENT_CACHE_DIR", default_value = ".descent-cache")]
    pub cache_dir: PathBuf,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Raise the default rank limit to this value
    #[arg(long, global = true)]
    pub max_n_override: Option<usize>,
}

fn parse_type(s: &str) -> Result<GroupType, String> {
    s.parse().map_err(|_| format!("expected A or D, got {s:?}"))
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build (or load) the structure table and write it to the cache
    Table,
    /// Multiply two basis elements
    Multiply {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Spanning set of the radical, with the ideal and nilpotency checks
    Radical,
    /// The matrix R of permutation characters at Coxeter elements
    Characters,
    /// Run the verification suite
    Verify,
    /// Symmetric-group products by the matrix rule
    Typea {
        #[command(subcommand)]
        command: TypeaCommand,
    },
}

#[derive(Subcommand, Debug)]
enum TypeaCommand {
    /// B_a B_b as a multiset of reading words
    Multiply {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// The Lie-monomial action, as a multiset of degree compositions
    LieAction {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.common.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("warning: {e}");
        }
    }
    let ctx = commands::Context::new(cli.common);
    let result = match cli.command {
        Command::Table => ctx.table(),
        Command::Multiply { a, b } => ctx.multiply(&a, &b),
        Command::Radical => ctx.radical(),
        Command::Characters => ctx.characters(),
        Command::Verify => ctx.verify(),
        Command::Typea { command } => match command {
            TypeaCommand::Multiply { a, b } => ctx.typea(&a, &b, false),
            TypeaCommand::LieAction { a, b } => ctx.typea(&a, &b, true),
        },
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
