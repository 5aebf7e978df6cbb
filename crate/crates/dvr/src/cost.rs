use qrom::CostReport;

/// Rotation rounds per mode: `⌊π √n / 4⌋`.
pub fn rounds(n: u64) -> u64 {
    (std::f64::consts::PI * (n as f64).sqrt() / 4.0).floor() as u64
}

/// `Σ_i 2 ⌊π √n_i / 4⌋ C_Q(n_i², d)`, summed field-wise; qubits take the maximum
/// since modes are processed one after another.
pub fn dvr_oracle_cost(ns: &[u64], d: u32, coster: impl Fn(u64, u32) -> CostReport) -> CostReport {
    let mut total = CostReport::default();
    for &n in ns {
        let r = 2 * rounds(n);
        let c = coster(n * n, d);
        total.t_count += r * c.t_count;
        total.toffoli_count += r * c.toffoli_count;
        total.cnot_count += r * c.cnot_count;
        total.clifford_count += r * c.clifford_count;
        total.t_depth += r * c.t_depth;
        total.quantum_volume += r * c.quantum_volume;
        total.qubit_count = total.qubit_count.max(c.qubit_count);
    }
    total
}

/// Toffolis of the segment-initialization lookup: `2 N √m / √F + √(N m)`.
pub fn segment_init_cost(n: f64, m: f64, f: f64) -> f64 {
    2.0 * n * m.sqrt() / f.sqrt() + (n * m).sqrt()
}
