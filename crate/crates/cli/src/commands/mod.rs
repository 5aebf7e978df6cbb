mod blockenc;
mod dvr;
mod fit;
mod molham;
mod sampled;

pub use blockenc::{blockenc_verify, random_symmetric, BlockencReport};
pub use dvr::{dvr_check, DvrReport, EXACTNESS_TOL, ORTHOGONALITY_TOL, RECURSION_TOL};
pub use fit::{fit_scaling, wh_sweep, FitReport};
pub use molham::{molham, spec_for, sweep_rows, MolhamReport, StrategyRow, SweepRow};
pub use sampled::{compare, qrom_synth, wht_analyze, CompareReport, SynthReport, WhtReport, CURVE_MAX_ETA};

/// Default fixed-point digits.
pub const DEFAULT_DIGITS: u32 = 15;
/// Default truncation target.
pub const DEFAULT_EPSILON: f64 = 1.0 / 1024.0;
