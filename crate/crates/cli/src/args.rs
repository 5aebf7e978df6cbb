use std::path::PathBuf;
use std::str::FromStr;

use baseline::pes::SyntheticPes;
use clap::{Args, Parser, Subcommand, ValueEnum};
use molham::{LambdaChoice, QromBackend, Strategy};

#[derive(Debug, Clone, Parser)]
#[command(name = "whq", version, about = "Walsh-Hadamard QROM synthesis and vibrational block-encoding resource reports")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Address width of synthetic surfaces.
    #[arg(long, global = true)]
    pub eta: Option<u32>,
    /// Fixed-point digits per loaded word.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..=33))]
    pub digits: Option<u32>,
    /// Target error; energy accuracy in cm⁻¹ for `molham`.
    #[arg(long, global = true)]
    pub epsilon: Option<f64>,
    /// SELECT-SWAP width: `optimal`, a fixed integer, or `xS` to scale the optimum by S.
    #[arg(long, global = true)]
    pub lambda: Option<LambdaArg>,
    /// Encoding strategy, or `all`.
    #[arg(long, global = true)]
    pub strategy: Option<StrategyArg>,
    /// QROM backend for diagonal loads: `select-swap` or `wh`.
    #[arg(long, global = true)]
    pub backend: Option<QromBackend>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for random inputs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output file, written atomically; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaArg(pub LambdaChoice);

impl FromStr for LambdaArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("optimal") {
            return Ok(Self(LambdaChoice::Optimal));
        }
        if let Some(rest) = s.strip_prefix('x') {
            let v: f64 = rest.parse().map_err(|_| format!("bad lambda scale `{rest}`"))?;
            if !(v > 0.0 && v.is_finite()) {
                return Err(format!("lambda scale must be positive, got {v}"));
            }
            return Ok(Self(LambdaChoice::Scaled(v)));
        }
        match s.parse::<u64>() {
            Ok(0) => Err("lambda must be at least 1".into()),
            Ok(v) => Ok(Self(LambdaChoice::Fixed(v))),
            Err(_) => Err(format!("expected `optimal`, an integer or `xS`, got `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrategyArg {
    All,
    One(Strategy),
}

impl StrategyArg {
    pub fn strategies(self) -> Vec<Strategy> {
        match self {
            Self::All => Strategy::ALL.to_vec(),
            Self::One(s) => vec![s],
        }
    }
}

impl FromStr for StrategyArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(Self::All);
        }
        let canon = s.to_ascii_uppercase().replace('-', "_");
        canon.parse::<Strategy>().map(Self::One).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Walsh spectrum concentration and the minimal truncation at ε.
    WhtAnalyze(SampleArgs),
    /// Synthesizes and verifies a WH-QROM circuit.
    QromSynth(SynthArgs),
    /// SELECT-SWAP over WH-QROM cost ratios, raw and arccos-angle modes.
    Compare(CompareArgs),
    /// Quadrature, transform and recursion checks for one grid.
    DvrCheck(DvrArgs),
    /// Builds and verifies a d-sparse block encoding.
    BlockencVerify(BlockencArgs),
    /// Levels, norms, block-encoding and phase-estimation costs of a toy molecule.
    Molham(MolhamArgs),
    /// Least-squares fit of `log2 τ` against `η` and `log2 log2(1/ε)`.
    FitScaling(FitArgs),
}

/// Where sampled values come from.
#[derive(Debug, Clone, Args)]
pub struct Source {
    /// Samples: `.csv`/`.txt` with one value per line, otherwise little-endian f64.
    #[arg(long, conflicts_with = "pes")]
    pub input: Option<PathBuf>,
    /// Bundled surface: `harmonic`, `morse` or `wells`.
    #[arg(long)]
    pub pes: Option<SyntheticPes>,
    /// Coordinates of the bundled surface.
    #[arg(long, default_value_t = 2)]
    pub dims: u32,
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub source: Source,
    /// Rescale file samples so the largest magnitude fits the quantizer.
    #[arg(long)]
    pub normalize: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SynthArgs {
    #[command(flatten)]
    pub sample: SampleArgs,
    /// Also write the circuit in text form to this file.
    #[arg(long)]
    pub circuit: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub source: Source,
    /// Digits for the SELECT-SWAP side; defaults to `--digits`.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=33))]
    pub ss_digits: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct DvrArgs {
    /// `hermite` or `legendre`.
    #[arg(long, default_value = "hermite")]
    pub kind: String,
    #[arg(long, default_value_t = 16)]
    pub n: usize,
    /// Recursion segment width; must be a power of two dividing `n`.
    #[arg(long, default_value_t = 4)]
    pub segment: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    Standard,
    Fused,
}

#[derive(Debug, Clone, Args)]
pub struct BlockencArgs {
    /// Coordinate-list CSV (`row,col,value`).
    #[arg(long, requires = "n", conflicts_with = "random")]
    pub input: Option<PathBuf>,
    /// Dimension of the `--input` operator.
    #[arg(long)]
    pub n: Option<usize>,
    /// Row sparsity; inferred from the data when absent.
    #[arg(long)]
    pub rho: Option<usize>,
    /// Dimension of a random symmetric operator drawn from `--seed`.
    #[arg(long)]
    pub random: Option<usize>,
    #[arg(long, value_enum, default_value_t = Construction::Fused)]
    pub construction: Construction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// Water at 8 stretch and 16 bend functions.
    Water,
    /// Water at 32 stretch and 64 bend functions; too large for dense levels.
    WaterLarge,
}

#[derive(Debug, Clone, Args)]
pub struct MolhamArgs {
    /// TOML molecule description; overrides `--preset`.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Preset::Water)]
    pub preset: Preset,
    /// Number of vibrational levels to report.
    #[arg(long, default_value_t = 10)]
    pub levels: usize,
    /// Tabulate costs over `--sweep-n` × `--sweep-eps` instead of a single report.
    #[arg(long)]
    pub sweep: bool,
    /// Basis sizes per mode for the sweep.
    #[arg(long, value_delimiter = ',', default_values_t = [4usize, 8, 16])]
    pub sweep_n: Vec<usize>,
    /// QROM truncation targets for the sweep; digits follow as `⌈log2(1/ε)⌉ + 1`.
    #[arg(long, value_delimiter = ',', default_values_t = [2f64.powi(-6), 2f64.powi(-8), 2f64.powi(-10)])]
    pub sweep_eps: Vec<f64>,
    /// λ scale factors for a cost envelope (SELECT-SWAP only).
    #[arg(long, value_delimiter = ',')]
    pub envelope: Vec<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct FitArgs {
    /// CSV with `eta`, `epsilon` and `tau` columns; other columns are ignored.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Surface for the built-in WH sweep when no input is given.
    #[arg(long, default_value = "morse")]
    pub pes: SyntheticPes,
    #[arg(long, default_value_t = 2)]
    pub dims: u32,
    /// Digits of the built-in sweep; `ε = 2^-d`.
    #[arg(long, value_delimiter = ',', default_values_t = [6u32, 8, 10])]
    pub sweep_digits: Vec<u32>,
}
