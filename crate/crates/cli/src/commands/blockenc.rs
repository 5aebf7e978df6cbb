use std::fs::File;

use blockenc::{dsparse_fused, dsparse_standard, EncodingRecord, SparseOracle};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::{BlockencArgs, Common, Construction};
use crate::{render, CliError, Output};

/// Chance that an off-diagonal pair is nonzero in a random operator.
const RANDOM_DENSITY: f64 = 0.25;
/// Largest random dimension.
const RANDOM_MAX_DIM: usize = 64;

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BlockencReport {
    pub source: String,
    #[serde(flatten)]
    pub record: EncodingRecord,
    pub spectral_radius: f64,
}

/// Symmetric operator with a full diagonal and entries uniform in `[-1, 1)`.
pub fn random_symmetric(n: usize, seed: u64) -> Result<SparseOracle, CliError> {
    if n == 0 || n > RANDOM_MAX_DIM {
        return Err(CliError::Config(format!("random dimension must lie in 1..={RANDOM_MAX_DIM}, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = vec![Vec::new(); n];
    for i in 0..n {
        for j in i..n {
            if i != j && !rng.gen_bool(RANDOM_DENSITY) {
                continue;
            }
            let v: f64 = rng.gen_range(-1.0..1.0);
            rows[i].push((j, v));
            if i != j {
                rows[j].push((i, v));
            }
        }
    }
    for r in &mut rows {
        r.sort_by_key(|e| e.0);
    }
    let rho = rows.iter().map(Vec::len).max().unwrap_or(1);
    Ok(SparseOracle::new(n, rho, rows)?)
}

pub fn blockenc_verify(c: &Common, a: &BlockencArgs) -> Result<Output, CliError> {
    let (source, oracle) = match (&a.input, a.random) {
        (Some(path), _) => {
            let n = a.n.ok_or_else(|| CliError::Config("--input needs --n".into()))?;
            let f = File::open(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
            ("file".to_string(), SparseOracle::from_coo_csv(f, n, a.rho)?)
        }
        (None, Some(n)) => (format!("random-{n}"), random_symmetric(n, c.seed)?),
        (None, None) => return Err(CliError::Config("give --input or --random".into())),
    };
    if !oracle.is_symmetric(0.0) {
        return Err(CliError::Parse("operator is not symmetric".into()));
    }
    let be = match a.construction {
        Construction::Standard => dsparse_standard(&oracle)?,
        Construction::Fused => dsparse_fused(&oracle)?,
    };
    let report = BlockencReport { source, record: be.record(), spectral_radius: be.spectral_radius() };
    let failure = (report.record.zeta < report.spectral_radius)
        .then(|| format!("zeta {} below spectral radius {}", report.record.zeta, report.spectral_radius));
    let text = render(c.format, &report, || {
        let r = &report.record;
        format!(
            "construction,dimension,systemQubits,ancillaQubits,zeta,residual,unitarityDeviation,spectralRadius\n{},{},{},{},{},{:e},{:e},{}\n",
            r.construction,
            r.dimension,
            r.system_qubits,
            r.ancilla_qubits,
            r.zeta,
            r.residual,
            r.unitarity_deviation,
            report.spectral_radius
        )
    });
    Ok(Output { text, failure })
}
