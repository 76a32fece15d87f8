//! `graphshare`: dealer and combiner for graph-shaped secrets.
//!
//! Exit codes: 0 success or accepted, 2 usage or input error, 3 the
//! reconstructed secret was rejected by verification.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "graphshare",
    version,
    about = "Secret sharing for graphs and graph colorings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SchemeArg {
    Shamir,
    Kgh,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SecretArg {
    /// The whole graph (structure, plus colors when k > 1).
    Graph,
    /// Only the structure, even when the file carries colors.
    Structure,
    /// Only the color vector.
    Coloring,
}

#[derive(Subcommand)]
enum Command {
    /// Print a graph file's digit string and its integer value.
    Encode { graph: PathBuf },

    /// Write the graph with the given integer value for (n, k) as a GSF file.
    Decode {
        #[arg(long = "vertices")]
        n: usize,
        #[arg(long = "palette", default_value_t = 1)]
        k: u32,
        value: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Deal shares of a graph (or of a bit string laid out as a graph).
    Split {
        /// GSF input; omit when using --number.
        graph: Option<PathBuf>,
        /// Share a bit string (ASCII 0/1) as a graph instead of a graph file.
        #[arg(long, conflicts_with = "graph")]
        number: Option<String>,
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        /// Threshold (Shamir). KGH always needs all shares.
        #[arg(long)]
        t: Option<usize>,
        /// Number of participants.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "any")]
        predicate: String,
        #[arg(long, value_enum, default_value = "graph")]
        secret: SecretArg,
        /// Field prime for Shamir; 5, 7 or 11 select the non-production test fields.
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, env = "GRAPHSHARE_OUT_DIR", default_value = ".")]
        out_dir: PathBuf,
    },

    /// Pool share files, verify the result and write it out when accepted.
    Reconstruct {
        #[arg(required = true)]
        shares: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Count the graphs on n vertices that satisfy a predicate.
    Census {
        #[arg(long)]
        vertices: usize,
        #[arg(long, default_value = "any")]
        predicate: String,
    },

    /// Shift one KGH coloring share and compare the reconstructions.
    AttackDemo {
        #[arg(long)]
        shares: PathBuf,
        #[arg(long)]
        constant: u32,
        /// Structure to check properness against, if not in the predicate.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Encode { graph } => commands::encode(&graph),
        Command::Decode { n, k, value, out } => commands::decode(n, k, &value, out.as_deref()),
        Command::Split {
            graph,
            number,
            scheme,
            t,
            n,
            predicate,
            secret,
            prime,
            seed,
            out_dir,
        } => commands::split(commands::SplitArgs {
            graph,
            number,
            scheme,
            threshold: t,
            participants: n,
            predicate,
            secret,
            prime,
            seed,
            out_dir,
        }),
        Command::Reconstruct { shares, out } => commands::reconstruct(&shares, out.as_deref()),
        Command::Census {
            vertices,
            predicate,
        } => commands::census(vertices, &predicate),
        Command::AttackDemo {
            shares,
            constant,
            graph,
        } => commands::attack_demo(&shares, constant, graph.as_deref()),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::EXIT_INPUT)
        }
    }
}
