use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "zeckwin",
    version,
    about = "Zeckendorf window dynamics of geometric progressions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Oracle,
    Theta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DotKind {
    Theta,
    Orbit,
    Dfa,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Example {
    #[value(name = "example-3")]
    Example3,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output format; each command has its own default.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the result here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OrbitArgs {
    #[arg(long, default_value = "1")]
    pub u: String,
    #[arg(long, default_value_t = 2)]
    pub q: u64,
    #[arg(long = "M", default_value_t = 5)]
    pub m: usize,
    /// Comma-separated binary patterns, matched LSD-first.
    #[arg(long, default_value = "101")]
    pub family: String,
    #[arg(long, default_value_t = zeckwin::orbit::DEFAULT_N_MAX)]
    pub n_max: u64,
    /// Allow a window shorter than the longest pattern.
    #[arg(long)]
    pub override_ml_check: bool,
    #[arg(long, value_enum, default_value_t = Mode::Oracle)]
    pub mode: Mode,
    /// Samples for the window map in theta mode.
    #[arg(long, default_value_t = DEFAULT_N_CAP)]
    pub n_cap: u64,
    /// Directory for cached window maps.
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
}

pub const DEFAULT_N_CAP: u64 = 100_000;

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Zeckendorf word of N, most significant digit first.
    Encode {
        n: String,
        #[command(flatten)]
        output: Output,
    },
    /// Value of a Zeckendorf word.
    Decode {
        word: String,
        #[command(flatten)]
        output: Output,
    },
    /// Z(qN) by the exact oracle, alongside the streaming multiplier.
    Mul {
        n: String,
        #[arg(long, default_value_t = 2)]
        q: u64,
        #[arg(long)]
        carry_bound: Option<u64>,
        #[arg(long)]
        delay_cap: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// First M symbols of the padded LSD-first stream of N.
    Window {
        n: String,
        #[arg(long = "M", default_value_t = 5)]
        m: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Whether a word over {0,1,#} avoids the family.
    Avoid {
        word: String,
        #[arg(long)]
        family: String,
        #[command(flatten)]
        output: Output,
    },
    /// Empirical window map over N = 1..=n_cap.
    SynthesizeTheta {
        #[arg(long, default_value_t = 2)]
        q: u64,
        #[arg(long = "M", default_value_t = 5)]
        m: usize,
        #[arg(long, default_value_t = DEFAULT_N_CAP)]
        n_cap: u64,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Least extra input width that makes the window map conflict-free.
    CheckLocality {
        #[arg(long, default_value_t = 2)]
        q: u64,
        #[arg(long = "M", default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 10_000)]
        n_cap: u64,
        #[arg(long, default_value_t = 8)]
        d_max: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Window sequence, exponent set and period of u q^n.
    Orbit {
        #[command(flatten)]
        orbit: OrbitArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Graphviz rendering of an automaton, window map or orbit.
    ExportDot {
        #[arg(value_enum)]
        kind: DotKind,
        #[command(flatten)]
        orbit: OrbitArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Recompute the worked example's published values and diff them.
    VerifyPaper {
        #[arg(value_enum)]
        example: Example,
        /// Horizon for the period search; re-checked at twice this.
        #[arg(long, default_value_t = 1000)]
        n_max: u64,
        #[arg(long, default_value_t = DEFAULT_N_CAP)]
        n_cap: u64,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
}
