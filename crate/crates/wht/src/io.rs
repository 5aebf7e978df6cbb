use std::fs;
use std::path::Path;

use crate::error::{Result, WhtError};
use crate::sampled::log2_exact;

/// Little-endian `f64` samples; the byte length must be a multiple of 8.
pub fn read_samples_binary(bytes: &[u8]) -> Result<Vec<f64>> {
    if bytes.len() % 8 != 0 {
        return Err(WhtError::Parse {
            line: 0,
            msg: format!("{} bytes is not a whole number of f64 values", bytes.len()),
        });
    }
    let out: Vec<f64> = bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8")))
        .collect();
    log2_exact(out.len())?;
    Ok(out)
}

/// One value per line; blank lines and `#` comments are skipped.
pub fn read_samples_csv(text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let field = line.split(',').next().unwrap_or(line).trim();
        let v: f64 = field.parse().map_err(|_| WhtError::Parse {
            line: i + 1,
            msg: format!("not a number: {field:?}"),
        })?;
        out.push(v);
    }
    log2_exact(out.len())?;
    Ok(out)
}

/// Reads a sample file, choosing the format by extension (`.csv`/`.txt` are text).
pub fn read_samples(path: &Path) -> Result<Vec<f64>> {
    let bytes = fs::read(path)?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("csv") | Some("txt") => {
            let text = String::from_utf8(bytes).map_err(|e| WhtError::Parse {
                line: 0,
                msg: e.to_string(),
            })?;
            read_samples_csv(&text)
        }
        _ => read_samples_binary(&bytes),
    }
}
