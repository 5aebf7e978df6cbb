use std::fs;
use std::io::Write;
use std::path::Path;

use baseline::pes::SyntheticPes;

use crate::args::Source;
use crate::CliError;

/// Default address width of bundled surfaces.
pub(crate) const DEFAULT_ETA: u32 = 12;
/// Largest address width sampled in memory.
pub(crate) const MAX_ETA: u32 = 22;

/// Writes through a sibling temporary file and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = path.with_file_name(format!(".{name}.tmp{}", std::process::id()));
    let mut f = fs::File::create(&tmp)?;
    f.write_all(bytes)?;
    f.sync_all()?;
    drop(f);
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}

/// Samples read from a file or generated from a bundled surface, with a label.
pub(crate) struct Samples {
    pub label: String,
    pub values: Vec<f64>,
    pub synthetic: bool,
}

pub(crate) fn load(source: &Source, eta: Option<u32>) -> Result<Samples, CliError> {
    if let Some(path) = &source.input {
        if !path.exists() {
            return Err(CliError::Config(format!("input {} does not exist", path.display())));
        }
        let values = wht::read_samples(path)?;
        if values.iter().any(|v| !v.is_finite()) {
            return Err(CliError::Parse(format!("{} holds non-finite samples", path.display())));
        }
        return Ok(Samples { label: "file".into(), values, synthetic: false });
    }
    let pes = source.pes.unwrap_or(SyntheticPes::SeparableHarmonic);
    let eta = eta.unwrap_or(DEFAULT_ETA);
    if source.dims == 0 || source.dims > eta.max(1) {
        return Err(CliError::Config(format!("dims must lie in 1..={eta}, got {}", source.dims)));
    }
    if eta > MAX_ETA {
        return Err(CliError::Config(format!("eta = {eta} exceeds {MAX_ETA}")));
    }
    Ok(Samples {
        label: format!("{}-{}d", pes_name(pes), source.dims),
        values: pes.sample(eta, source.dims),
        synthetic: true,
    })
}

pub(crate) fn pes_name(p: SyntheticPes) -> &'static str {
    match p {
        SyntheticPes::SeparableHarmonic => "harmonic",
        SyntheticPes::MorseSum => "morse",
        SyntheticPes::CoupledGaussianWells => "wells",
    }
}

pub(crate) fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))
}
