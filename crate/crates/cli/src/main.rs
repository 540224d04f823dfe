//! `revca`: build, compose and verify reversible cellular automata.
//!
//! Exit status: 0 on success, 1 when a check fails, 2 on malformed input.

mod commands;
mod rules;

use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "revca",
    version,
    about = "Reversible cellular automata and broom-group workbench"
)]
struct Cli {
    /// Seed for randomized suites (ChaCha8).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Permutations of 1-based points.
    #[command(subcommand)]
    Perm(PermCmd),
    /// Broom words and their actions.
    #[command(subcommand)]
    Wreath(WreathCmd),
    /// Cellular automata from rule files or built-ins.
    #[command(subcommand)]
    Ca(CaCmd),
    /// Seeded verification suites.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Linear automata as Laurent matrices.
    #[command(subcommand)]
    Linca(LincaCmd),
}

#[derive(Subcommand)]
enum PermCmd {
    /// Prints `a·b` (b applied first).
    Compose {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 5)]
        degree: usize,
    },
    Order {
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = 5)]
        degree: usize,
    },
    /// Exponent of the generated group (default: A5).
    Exponent {
        #[arg(long = "gen")]
        gens: Vec<String>,
        #[arg(long, default_value_t = 5)]
        degree: usize,
    },
    /// Derived series of the generated group (default: A5).
    Solvable {
        #[arg(long = "gen")]
        gens: Vec<String>,
        #[arg(long, default_value_t = 5)]
        degree: usize,
    },
}

#[derive(Subcommand)]
enum WreathCmd {
    /// Applies a word to a tuple of points in 1..5.
    Act {
        #[arg(long)]
        word: String,
        #[arg(long)]
        tuple: String,
    },
    /// Image in A5 wr Z/nZ as (rot, vec).
    Nf {
        #[arg(long)]
        word: String,
        #[arg(long)]
        n: usize,
    },
    /// Checks that a word acts trivially for every tested tuple size.
    Identity {
        #[arg(long)]
        word: String,
        /// `1..8`, `evens:16` or a list such as `2,3,5`.
        #[arg(long, default_value = "1..16")]
        sizes: String,
    },
    /// Checks `[g, h]^e` for tuple sizes 1..max-n.
    Law {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long, default_value_t = 30)]
        exponent: i64,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
    /// Builds the located word of a cylinder permutation.
    Pi {
        #[arg(long)]
        g: String,
        #[arg(long)]
        i: i64,
        /// Control symbols 0..2, space separated.
        #[arg(long)]
        w: String,
    },
    /// Border test of a word, or search of the driver's trace language.
    Unbordered {
        #[arg(long, conflicts_with = "len")]
        word: Option<String>,
        #[arg(long)]
        len: Option<usize>,
    },
}

#[derive(Args, Clone)]
struct ConfigArgs {
    /// Space-separated symbol names.
    #[arg(long)]
    config: String,
    /// Treat the config as a finite window instead of a periodic point.
    #[arg(long)]
    window: bool,
    /// Coordinate of the first window symbol.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    base: i64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Pgm,
}

#[derive(Subcommand)]
enum CaCmd {
    Apply {
        #[arg(long)]
        rule: String,
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// Prints the rule of `outer ∘ inner`.
    Compose {
        #[arg(long)]
        outer: String,
        #[arg(long)]
        inner: String,
        /// Keep the full range instead of canonicalizing.
        #[arg(long)]
        raw: bool,
        #[arg(long)]
        out: Option<String>,
    },
    Invert {
        #[arg(long)]
        rule: String,
        #[arg(long, default_value_t = 4)]
        max_range: i32,
        #[arg(long)]
        out: Option<String>,
    },
    Injective {
        #[arg(long)]
        rule: String,
    },
    Surjective {
        #[arg(long)]
        rule: String,
    },
    Order {
        #[arg(long)]
        rule: String,
        #[arg(long, default_value_t = 100)]
        kmax: u64,
    },
    /// Length-`len` column words of a one-sided rule.
    Trace {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        len: usize,
        /// Restrict the first symbol of each column.
        #[arg(long)]
        first: Option<String>,
        #[arg(long)]
        witnesses: bool,
    },
    /// Space-time diagram.
    Run {
        #[arg(long)]
        rule: String,
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Keep at most this many columns.
        #[arg(long)]
        width: Option<usize>,
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    Law {
        #[arg(long)]
        pairs: Option<usize>,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        max_n: Option<usize>,
    },
    Exponent,
    Quotient,
    /// Generators against the abstract conveyor action.
    TwoSided {
        #[arg(long)]
        max_word: Option<usize>,
        #[arg(long)]
        max_block: Option<usize>,
        /// Seeded multi-block configurations per word length.
        #[arg(long)]
        configs: Option<usize>,
    },
    Reversibility,
    Oracle {
        #[arg(long)]
        cas: Option<usize>,
        #[arg(long)]
        max_period: Option<usize>,
    },
    Construction {
        #[arg(long)]
        kmax: Option<u64>,
        #[arg(long)]
        max_len: Option<usize>,
    },
    Pi {
        #[arg(long)]
        samples: Option<usize>,
    },
    OneSided {
        #[arg(long)]
        words: Option<usize>,
        #[arg(long)]
        max_len: Option<usize>,
    },
    Linca {
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Every criterion with default sizes.
    All,
}

#[derive(Subcommand)]
enum LincaCmd {
    Det {
        #[arg(long)]
        matrix: String,
        /// Field for untagged entries.
        #[arg(long)]
        field: Option<u32>,
    },
    Invert {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        field: Option<u32>,
    },
    /// Matrix to linear automaton JSON.
    Toca {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        field: Option<u32>,
        /// Also write the induced rule file.
        #[arg(long)]
        rule_out: Option<String>,
    },
    /// Linear automaton JSON to matrix.
    Tomatrix {
        #[arg(long = "ca")]
        linear: String,
    },
}

/// Result of a command that ran to completion.
pub enum Status {
    Ok,
    Violation,
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("REVCA_THREADS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .context("REVCA_THREADS must be a positive integer")?;
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            bail!("cannot configure {n} threads: {e}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = configure_threads().and_then(|()| commands::dispatch(cli));
    match run {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Violation) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
