//! Thin command-line wrapper over the library's command runner.
//!
//! Exit codes: 0 all claims hold, 1 a counterexample was found, 2 input or
//! parse error, 3 capacity bound exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use nestlab::cli::{parse_instance, run_command, Instance, RunOptions, DEFAULT_SEED};

#[derive(Parser)]
#[command(
    name = "nestlab",
    version,
    about = "Order theory on finite spaces: nests, separation, orderability checks, and exact Fermat reals"
)]
struct Cli {
    /// Emit the machine-readable JSON report instead of the table.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for randomized suites (fixed default, printed in reports).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Override a capacity or search bound where the command supports it.
    #[arg(long, global = true)]
    bound: Option<usize>,

    /// Scattering convention: adjoin the whole space first or test raw.
    #[arg(long, global = true, value_parser = ["include-universe", "raw"], default_value = "raw")]
    convention: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check each family in the instance for the nest property.
    CheckNest { instance: PathBuf },
    /// Report the induced order of each family and its classification.
    InducedOrder { instance: PathBuf },
    /// Report T0/T1 separation of each family and of their union.
    Separation { instance: PathBuf },
    /// Check each family for the interlocking property.
    Interlocking { instance: PathBuf },
    /// Check whether each family scatters the space.
    Scatter { instance: PathBuf },
    /// Run the orderability checks on nests L and R.
    Vdw { instance: PathBuf },
    /// Evaluate the five ordinal conditions on the instance topology.
    OrdinalProfile { instance: PathBuf },
    /// Minimal number of nests generating the instance topology.
    Neight { instance: PathBuf },
    /// Compare ray and interval topologies of the instance relation, or
    /// sweep all strict transitive relations with --batch.
    ProbeTransitive {
        instance: Option<PathBuf>,
        /// Sweep every strict transitive relation on the space.
        #[arg(long)]
        batch: bool,
        /// Space size for instance-free batch runs.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Check nest transfer along coordinate preimages and projections.
    ProductTransfer {
        instance: PathBuf,
        /// Number of product coordinates.
        #[arg(long, default_value_t = 2)]
        index_count: usize,
    },
    /// Compare Fermat-real expressions and print the ascending order.
    FermatCompare {
        exprs: Vec<String>,
        #[arg(long)]
        instance: Option<PathBuf>,
    },
    /// Print the canonical form of Fermat-real expressions.
    FermatCanon {
        exprs: Vec<String>,
        #[arg(long)]
        instance: Option<PathBuf>,
    },
    /// Enumerate families, nests, or topologies on a small space.
    Enumerate {
        /// Space size.
        #[arg(long)]
        n: Option<usize>,
        /// Print only the count.
        #[arg(long)]
        count: bool,
        /// all, nest, or topology.
        #[arg(long)]
        filter: Option<String>,
    },
}

fn load(path: &PathBuf) -> Result<Instance, nestlab::Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| nestlab::Error::input(format!("{}: {e}", path.display())))?;
    parse_instance(&text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut opts = RunOptions {
        seed: cli.seed.unwrap_or(DEFAULT_SEED),
        bound: cli.bound,
        include_universe: cli.convention == "include-universe",
        ..RunOptions::default()
    };

    let (name, instance) = match &cli.command {
        Command::CheckNest { instance } => ("check-nest", Some(instance)),
        Command::InducedOrder { instance } => ("induced-order", Some(instance)),
        Command::Separation { instance } => ("separation", Some(instance)),
        Command::Interlocking { instance } => ("interlocking", Some(instance)),
        Command::Scatter { instance } => ("scatter", Some(instance)),
        Command::Vdw { instance } => ("vdw", Some(instance)),
        Command::OrdinalProfile { instance } => ("ordinal-profile", Some(instance)),
        Command::Neight { instance } => ("neight", Some(instance)),
        Command::ProbeTransitive { instance, batch, n } => {
            opts.batch = *batch;
            opts.n = *n;
            ("probe-transitive", instance.as_ref())
        }
        Command::ProductTransfer {
            instance,
            index_count,
        } => {
            opts.index_count = *index_count;
            ("product-transfer", Some(instance))
        }
        Command::FermatCompare { exprs, instance } => {
            opts.exprs = exprs.clone();
            ("fermat-compare", instance.as_ref())
        }
        Command::FermatCanon { exprs, instance } => {
            opts.exprs = exprs.clone();
            ("fermat-canon", instance.as_ref())
        }
        Command::Enumerate { n, count, filter } => {
            opts.n = *n;
            opts.count_only = *count;
            opts.filter = filter.clone();
            ("enumerate", None)
        }
    };

    let instance = match instance {
        Some(path) => match load(path) {
            Ok(i) => i,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(e.exit_code() as u8);
            }
        },
        None => Instance::empty(),
    };

    match run_command(name, &instance, &opts) {
        Ok(report) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.render_human());
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
