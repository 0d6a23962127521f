use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "planar-switch", version, about = "Stability of planar switched linear systems with a nondiagonalizable mode")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify a system: GUAS, uniformly stable but not GUAS, or unbounded.
    Classify(InputArgs),
    /// Print the normal form, the change of basis T and the time scale tau.
    NormalForm(InputArgs),
    /// Write the worst trajectory as CSV and print a summary.
    Worst(WorstArgs),
    /// Simulate a switching policy and write the trajectory as CSV.
    Simulate(SimulateArgs),
    /// Classify every system in a directory or list of files.
    Batch(BatchArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output file (written atomically); standard output when omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Relative band inside which a quantity is treated as zero.
    #[arg(long, default_value_t = 1e-9)]
    pub tol_degenerate: f64,
    /// Relative band inside which the half-turn ratio counts as one.
    #[arg(long, default_value_t = 1e-9)]
    pub tol_ratio: f64,
}

#[derive(Args, Debug)]
pub struct InputArgs {
    /// System description (JSON); `-` reads standard input.
    #[arg(long, short)]
    pub input: PathBuf,
    #[command(flatten)]
    pub common: Common,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FrameArg {
    #[default]
    NormalForm,
    Original,
}

#[derive(Args, Debug)]
pub struct WorstArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    /// Initial state `x1,x2`, in the coordinates chosen by `--frame`.
    #[arg(long, default_value = "1,0", value_parser = parse_vec2, allow_hyphen_values = true)]
    pub x0: (f64, f64),
    #[arg(long, default_value_t = 10)]
    pub half_turns: usize,
    #[arg(long, value_enum, default_value_t)]
    pub frame: FrameArg,
    /// Sample spacing between switches; a few samples per arc when omitted.
    #[arg(long)]
    pub dt: Option<f64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolicyArg {
    Constant,
    Random,
    Worst,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub policy: PolicyArg,
    /// Weight of A for `--policy constant`.
    #[arg(long)]
    pub u: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.05)]
    pub dwell_min: f64,
    #[arg(long, default_value_t = 0.5)]
    pub dwell_max: f64,
    #[arg(long, default_value_t = 20.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 0.01)]
    pub dt: f64,
    #[arg(long, default_value = "1,0", value_parser = parse_vec2, allow_hyphen_values = true)]
    pub x0: (f64, f64),
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct BatchArgs {
    /// A directory (all `*.json` files, sorted) or a list of files.
    #[arg(long, short, num_args = 1.., required = true)]
    pub input: Vec<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

fn parse_vec2(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b] = parts.as_slice() else {
        return Err(format!("expected `x1,x2`, got `{s}`"));
    };
    let x1: f64 = a.parse().map_err(|e| format!("bad x1 `{a}`: {e}"))?;
    let x2: f64 = b.parse().map_err(|e| format!("bad x2 `{b}`: {e}"))?;
    if !(x1.is_finite() && x2.is_finite()) || (x1 == 0.0 && x2 == 0.0) {
        return Err("initial state must be finite and nonzero".into());
    }
    Ok((x1, x2))
}
