use baseline::pes::*;
use baseline::*;
use proptest::prelude::*;
use wht::{quantize, SampledFunction};

fn zeros(eta: u32, d: u32) -> SampledFunction {
    SampledFunction::new(d, vec![0; 1 << eta]).unwrap()
}

#[test]
fn formula_instance() {
    let m = SelectSwapModel::new(10, 15, 8).unwrap();
    assert_eq!(m.toffoli(), 368);
    assert_eq!(m.qubits(), 140);
    let r = selectswap_cost(&m, &zeros(10, 15));
    assert_eq!(r.toffoli_count, 368);
    assert_eq!(r.t_count, 4 * 368);
    assert_eq!(r.t_depth, 131);
    assert_eq!(r.cnot_count, 0);
    assert_eq!(r.quantum_volume, 4 * 368 * 140);
}

#[test]
fn lambda_one_and_bounds() {
    let m = SelectSwapModel::new(6, 5, 1).unwrap();
    assert_eq!(m.toffoli(), 64 + 10);
    assert_eq!(m.toffoli_depth(), 64);
    assert!(SelectSwapModel::new(6, 5, 0).is_err());
    assert!(SelectSwapModel::new(6, 5, 65).is_err());
}

#[test]
fn cnot_bound_counts_twos_complement_bits() {
    let f = SampledFunction::new(4, vec![-1, 0, 3, -8]).unwrap();
    assert_eq!(cnot_lower_bound(&f), 4 + 0 + 2 + 1);
}

#[test]
fn optimal_lambda_examples() {
    let (l, r) = optimize_lambda(10, 15, &zeros(10, 15));
    let best = (1..=1024u64).map(|l| SelectSwapModel::new(10, 15, l).unwrap().toffoli()).min().unwrap();
    assert_eq!(r.toffoli_count, best);
    assert!((5..=7).contains(&l), "λ* ≈ 5.8, got {l}");
    let (l, _) = optimize_lambda(4, 8, &zeros(4, 8));
    assert_eq!(l, 1);
    let (lp, rp) = optimize_lambda_pow2(10, 15, &zeros(10, 15));
    assert!(lp.is_power_of_two());
    assert!(rp.toffoli_count >= r.toffoli_count);
}

#[test]
fn exhaustive_scan_never_beats_optimizer() {
    for eta in 1..=12u32 {
        for d in [1u32, 5, 15, 33] {
            let f = zeros(eta, d.min(60 - eta));
            let d = f.d();
            let (l, r) = optimize_lambda(eta, d, &f);
            for lam in 1..=(1u64 << eta) {
                let t = SelectSwapModel::new(eta, d, lam).unwrap().toffoli();
                assert!(t > r.toffoli_count || (t == r.toffoli_count && lam >= l));
            }
        }
    }
}

#[test]
fn zero_function_gives_infinite_ratios() {
    let r = compare(&zeros(6, 8), 2f64.powi(-10)).unwrap();
    assert_eq!(r.retained, 0);
    assert_eq!(r.wh.toffoli_count, 0);
    assert_eq!(r.toffoli_count, Ratio::Infinite);
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(json["toffoliCount"], "∞");
    assert!(compare(&zeros(6, 8), 0.0).is_err());
}

#[test]
fn ratios_recompute_from_reports() {
    let v = SyntheticPes::SeparableHarmonic.sample(10, 2);
    let f = quantize(&normalize_raw(&v, 12), 12).unwrap();
    let r = compare(&f, 2f64.powi(-8)).unwrap();
    let (wh, ss) = (r.wh, r.selectswap);
    let q = |a: u64, b: u64| a as f64 / b as f64;
    assert!((r.qubits.value() - q(ss.qubit_count, wh.qubit_count)).abs() < 1e-12);
    assert!((r.toffoli_count.value() - q(ss.toffoli_count, wh.toffoli_count)).abs() < 1e-12);
    assert!((r.toffoli_depth.value() - q(ss.t_depth, wh.t_depth)).abs() < 1e-12);
    assert!(
        (r.toffoli_volume.value()
            - q(ss.toffoli_count * ss.qubit_count, wh.toffoli_count * wh.qubit_count))
        .abs()
            < 1e-12
    );
    assert!((r.cnot.value() - q(ss.cnot_count, wh.cnot_count)).abs() < 1e-12);
    let w = (ss.toffoli_count as f64 + ss.cnot_count as f64 / 50.0)
        / (wh.toffoli_count as f64 + wh.cnot_count as f64 / 50.0);
    assert!((r.weighted.value() - w).abs() < 1e-12);
}

#[test]
fn harmonic_surface_favours_walsh() {
    let v = SyntheticPes::SeparableHarmonic.sample(12, 2);
    let f = quantize(&normalize_raw(&v, 15), 15).unwrap();
    let r = compare(&f, 2f64.powi(-10)).unwrap();
    assert!(r.toffoli_count.value() > 1.0, "{}", r.toffoli_count);
}

#[test]
fn grid_split_and_points() {
    assert_eq!(split_bits(7, 3), vec![3, 2, 2]);
    let p = grid_point(0b11_01, &[2, 2]);
    assert_eq!(p, vec![-0.25, 0.75]);
    let a = arccos_angles(&[-2.0, 0.0, 2.0]);
    assert!((a[0] - 1.0 / 3.0).abs() < 1e-12 && a[1].abs() < 1e-12 && (a[2] + 1.0 / 3.0).abs() < 1e-12);
    let n = normalize_raw(&[-4.0, 2.0], 4);
    assert_eq!(n, vec![-0.875, 0.4375]);
}

#[test]
fn gradient_bounds_hold_on_fine_grid() {
    for p in [SyntheticPes::SeparableHarmonic, SyntheticPes::MorseSum, SyntheticPes::CoupledGaussianWells] {
        for dims in 1..=3u32 {
            let bits = split_bits(12, dims);
            let h = 1e-6;
            let bound = p.gradient_bound(dims);
            for x in (0..1u64 << 12).step_by(37) {
                let u = grid_point(x, &bits);
                let g2: f64 = (0..u.len())
                    .map(|i| {
                        let mut a = u.clone();
                        let mut b = u.clone();
                        a[i] += h;
                        b[i] -= h;
                        ((p.eval(&a) - p.eval(&b)) / (2.0 * h)).powi(2)
                    })
                    .sum();
                assert!(g2.sqrt() <= bound + 1e-6, "{p:?} D={dims}");
            }
        }
    }
}

proptest! {
    #[test]
    fn optimizer_minimal(eta in 1u32..=12, d in 1u32..=33) {
        let f = zeros(eta, d);
        let (l, r) = optimize_lambda(eta, d, &f);
        prop_assert!(l >= 1 && l <= 1 << eta);
        for lam in 1..=(1u64 << eta) {
            prop_assert!(SelectSwapModel::new(eta, d, lam).unwrap().toffoli() >= r.toffoli_count);
        }
    }
}
