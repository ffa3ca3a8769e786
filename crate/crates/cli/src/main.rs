use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

use commands::{CliError, Report};

#[derive(Parser, Debug)]
#[command(name = "pretopo", version, about = "Analyse finite knowledge spaces")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Override the enumeration guards (also read from PRETOPO_BOUND).
    #[arg(long, global = true, env = "PRETOPO_BOUND")]
    bound: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a family and validate it as a knowledge space.
    Check {
        input: PathBuf,
        /// Print the union closure of the family instead.
        #[arg(long)]
        close: bool,
    },
    /// Minimal pre-base, weight and the literal atom condition.
    Base { input: PathBuf },
    /// Closure operators of a set, the whole closure table, or the space
    /// generated by a closure-table file.
    Closure {
        input: PathBuf,
        /// Comma-separated labels.
        #[arg(long)]
        set: Option<String>,
    },
    /// Inner and outer fringes of a set, or of every state.
    Fringe {
        input: PathBuf,
        #[arg(long)]
        set: Option<String>,
    },
    /// Separation axioms with witnesses.
    Separation { input: PathBuf },
    /// Connectedness, chain and gradedness properties.
    Connectivity {
        input: PathBuf,
        /// Step size for tight and plain n-connectedness.
        #[arg(short = 'n', default_value_t = 1)]
        n: usize,
    },
    /// Discriminative reduction.
    Reduce { input: PathBuf },
    /// Specialization order of a quasi-ordinal space, or the space of a
    /// quasi-order file.
    Order { input: PathBuf },
    /// Delineated structure of a skill multimap.
    Delineate { input: PathBuf },
    /// Dense sets of items.
    PrimaryItems {
        input: PathBuf,
        /// greedy, matrix, exact or all.
        #[arg(long, default_value = "all")]
        method: String,
    },
    /// Classify a point map between two spaces.
    Map {
        map: PathBuf,
        domain: PathBuf,
        codomain: PathBuf,
    },
    /// Product of spaces.
    Product {
        #[arg(required = true, num_args = 1..)]
        inputs: Vec<PathBuf>,
    },
    /// Audit the registered theorems over enumerated or sampled spaces.
    Mine {
        #[arg(short = 'n', default_value_t = 3)]
        n: usize,
        /// Comma-separated: all, asserted, audit, a domain or a theorem id.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sampled spaces when n exceeds the exhaustive bound.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Write the JSON report here as well.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let bounds = commands::bounds(cli.bound);
    match &cli.command {
        Command::Check { input, close } => commands::check(input, *close),
        Command::Base { input } => commands::base(input),
        Command::Closure { input, set } => commands::closure(input, set.as_deref()),
        Command::Fringe { input, set } => commands::fringe(input, set.as_deref()),
        Command::Separation { input } => commands::separation(input),
        Command::Connectivity { input, n } => commands::connectivity(input, *n),
        Command::Reduce { input } => commands::reduce(input),
        Command::Order { input } => commands::order(input),
        Command::Delineate { input } => commands::delineate(input, &bounds),
        Command::PrimaryItems { input, method } => commands::primary_items(input, method, &bounds),
        Command::Map {
            map,
            domain,
            codomain,
        } => commands::map(map, domain, codomain),
        Command::Product { inputs } => commands::product(inputs),
        Command::Mine {
            n,
            suite,
            seed,
            samples,
            out,
        } => commands::mine(*n, suite, *seed, *samples, out.as_deref(), &bounds),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Json => print!("{}", report.json_text()),
                Format::Table => print!("{}", report.table),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
