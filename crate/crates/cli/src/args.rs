use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact and Monte Carlo inference for models with several identical observers.
#[derive(Debug, Parser)]
#[command(name = "obsinfer", version)]
pub struct Cli {
    /// Output as aligned tables or as one JSON record per line.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Records,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the built-in models and their parameters.
    Scenarios,
    /// Write a built-in model as a model file.
    Dump {
        #[command(flatten)]
        model: ModelArgs,
        /// Write to this path instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Probability of an event under a measure.
    Query {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(value_enum)]
        measure: QueryMeasure,
        /// Event expression, e.g. `Heads`, `S=1 & !Tails`, `X>=2`.
        event: String,
        /// Condition on this event.
        #[arg(long)]
        given: Option<String>,
        /// Cells kept by the `restricted` measure, comma separated.
        #[arg(long)]
        cells: Option<String>,
    },
    /// Check which principles a measure satisfies.
    Check {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum, default_value_t = CheckMeasure::Thirder)]
        measure: CheckMeasure,
        /// Measure file, for `--measure file`.
        #[arg(long)]
        weights: Option<PathBuf>,
        /// Violations listed per principle.
        #[arg(long, default_value_t = 32)]
        cap: usize,
        /// Principles to check; all applicable ones if omitted.
        principles: Vec<String>,
    },
    /// Find every measure satisfying a set of principles.
    Solve {
        #[command(flatten)]
        model: ModelArgs,
        principles: Vec<String>,
    },
    /// Monte Carlo estimate of a Thirder or Halfer probability.
    Estimate {
        #[command(flatten)]
        model: ModelArgs,
        /// `<thirder|halfer>[-<event>][-given-colour<y>]`, e.g. `halfer-given-colour0`.
        #[arg(long)]
        target: Option<String>,
        /// Number of draws; accepts forms like `1e6`.
        #[arg(long, default_value = "100000")]
        samples: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; 0 uses every core. Results do not depend on it.
        #[arg(long, default_value_t = 0)]
        streams: usize,
        /// Cosmological model only: Thirder (`E`, exact) or Halfer (`L`) law.
        #[arg(long, value_enum)]
        which: Option<Which>,
        /// Cosmological model only: the constant `θ ∈ [0, 1)` whose probability is reported.
        #[arg(long)]
        theta: Option<f64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum QueryMeasure {
    Thirder,
    Halfer,
    Objective,
    Restricted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckMeasure {
    Thirder,
    Halfer,
    File,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    #[value(name = "E", alias = "e")]
    E,
    #[value(name = "L", alias = "l")]
    L,
}

/// A built-in model name or a model file path, with the built-in parameters.
#[derive(Clone, Debug, Default, Args)]
pub struct ModelArgs {
    /// Built-in name (see `scenarios`) or path to a model file.
    pub model: String,
    #[arg(long = "N", value_name = "N")]
    pub big_n: Option<usize>,
    #[arg(long = "M", value_name = "M")]
    pub big_m: Option<usize>,
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long)]
    pub p0: Option<String>,
    #[arg(long)]
    pub p1: Option<String>,
    #[arg(long)]
    pub p2: Option<String>,
    /// Number of candidate constants.
    #[arg(long = "n", value_name = "n")]
    pub n: Option<usize>,
    #[arg(long)]
    pub kappa: Option<String>,
    /// Sets `κ = n^(1-α)` when `--kappa` is absent.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub n0: Option<usize>,
    #[arg(long)]
    pub m_intercept: Option<String>,
    #[arg(long)]
    pub m_slope: Option<String>,
    /// Law of `V` as `v:w` pairs, e.g. `1/4:1/2,1/2:1/4,3/4:1/4`.
    #[arg(long)]
    pub support: Option<String>,
    /// Stopping hazards `h_0..h_M`, comma separated, ending in 1.
    #[arg(long)]
    pub hazards: Option<String>,
    #[arg(long)]
    pub u_levels: Option<u32>,
}
