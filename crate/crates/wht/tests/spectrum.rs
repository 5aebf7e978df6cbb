use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wht::*;

fn naive_wht(values: &[i64]) -> Vec<i64> {
    let n = values.len() as u64;
    (0..n)
        .map(|z| {
            (0..n)
                .map(|x| if parity(x, z) { -values[x as usize] } else { values[x as usize] })
                .sum()
        })
        .collect()
}

fn random_function(rng: &mut ChaCha8Rng, eta: u32, d: u32) -> SampledFunction {
    let half = 1i64 << (d - 1);
    let values = (0..1usize << eta).map(|_| rng.gen_range(-half..half)).collect();
    SampledFunction::new(d, values).unwrap()
}

#[test]
fn quantize_zero_and_boundary() {
    let f = quantize(&[0.0; 8], 8).unwrap();
    assert!(f.values().iter().all(|&v| v == 0));
    let f = quantize(&[-1.0; 4], 4).unwrap();
    assert!(f.values().iter().all(|&v| v == -8));
}

#[test]
fn quantize_ramp_matches_pointwise_floor() {
    let theta: Vec<f64> = (0..8).map(|x| x as f64 / 8.0).collect();
    let f = quantize(&theta, 5).unwrap();
    for (x, &v) in f.values().iter().enumerate() {
        assert_eq!(v, (16.0 * theta[x]).floor() as i64);
    }
    assert_eq!(f.values(), &[0, 2, 4, 6, 8, 10, 12, 14]);
}

#[test]
fn quantize_rejects_bad_input() {
    assert!(matches!(quantize(&[1.0, 0.0], 4), Err(WhtError::SampleRange { .. })));
    assert!(matches!(quantize(&[0.0; 3], 4), Err(WhtError::NotPowerOfTwo(3))));
    assert!(matches!(
        SampledFunction::new(40, vec![0; 1 << 23]),
        Err(WhtError::Width(63))
    ));
}

#[test]
fn constant_function_spectrum() {
    let f = SampledFunction::new(6, vec![-5; 16]).unwrap();
    let s = wht_forward(&f);
    assert_eq!(s.coeffs()[0], -80);
    assert!(s.coeffs()[1..].iter().all(|&c| c == 0));
}

#[test]
fn single_character_spectrum() {
    let z0 = 0b1011u64;
    let values = (0..16u64).map(|x| if parity(x, z0) { -3 } else { 3 }).collect();
    let s = wht_forward(&SampledFunction::new(4, values).unwrap());
    for (z, &c) in s.coeffs().iter().enumerate() {
        assert_eq!(c, if z as u64 == z0 { 48 } else { 0 });
    }
}

#[test]
fn butterfly_matches_naive_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let f = random_function(&mut rng, 6, 9);
        assert_eq!(wht_forward(&f).coeffs(), naive_wht(f.values()).as_slice());
    }
}

#[test]
fn inverse_of_unit_spectrum_is_one() {
    let mut coeffs = vec![0; 32];
    coeffs[0] = 32;
    let g = wht_inverse(&WalshSpectrum::from_coeffs(10, coeffs).unwrap());
    assert!(g.iter().all(|v| v.as_integer() == Some(1)));
}

#[test]
fn round_trip_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for eta in 1..=12 {
        let f = random_function(&mut rng, eta, 12);
        let g = wht_inverse(&wht_forward(&f));
        let back: Vec<i64> = g.iter().map(|v| v.as_integer().unwrap() as i64).collect();
        assert_eq!(back, f.values());
        let full = TruncatedSpectrum::full(wht_forward(&f));
        let back: Vec<i64> = full
            .reconstruct()
            .iter()
            .map(|v| v.as_integer().unwrap() as i64)
            .collect();
        assert_eq!(back, f.values());
    }
}

#[test]
fn diag_error_closed_cases() {
    let f = SampledFunction::new(6, vec![3; 8]).unwrap();
    let same: Vec<Dyadic> = f.values().iter().map(|&v| Dyadic::new(v as i128, 0)).collect();
    assert_eq!(diag_error(&f, &same, 6).unwrap(), 0.0);
    let wrap: Vec<Dyadic> = f.values().iter().map(|&v| Dyadic::new(v as i128 - 32, 0)).collect();
    assert!(diag_error(&f, &wrap, 6).unwrap() < 1e-12);
    let quarter: Vec<Dyadic> = f.values().iter().map(|&v| Dyadic::new(v as i128 - 16, 0)).collect();
    assert!((diag_error(&f, &quarter, 6).unwrap() - 2.0).abs() < 1e-12);
    assert!(matches!(
        diag_error(&f, &same[..4], 6),
        Err(WhtError::LengthMismatch { .. })
    ));
}

#[test]
fn minimal_truncation_constant_and_zero() {
    let f = SampledFunction::new(8, vec![7; 64]).unwrap();
    assert_eq!(minimal_truncation(&f, 1e-3).k(), 1);
    let z = SampledFunction::new(8, vec![0; 64]).unwrap();
    assert_eq!(minimal_truncation(&z, 1e-3).k(), 0);
}

#[test]
fn minimal_truncation_two_characters() {
    let (za, zb) = (0b0011u64, 0b0101u64);
    let values: Vec<i64> = (0..16u64)
        .map(|x| {
            let a = if parity(x, za) { -20 } else { 20 };
            let b = if parity(x, zb) { -20 } else { 20 };
            a + b
        })
        .collect();
    let f = SampledFunction::new(8, values).unwrap();
    let eps = 0.05;
    let s = wht_forward(&f);
    let one = TruncatedSpectrum::top_k(s.clone(), 1);
    assert!(diag_error(&f, &one.reconstruct(), 8).unwrap() >= eps);
    let two = TruncatedSpectrum::top_k(s, 2);
    assert_eq!(diag_error(&f, &two.reconstruct(), 8).unwrap(), 0.0);
    assert_eq!(minimal_truncation(&f, eps).k(), 2);
}

#[test]
fn minimal_truncation_matches_exhaustive_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let eps = 2f64.powi(-10);
    for _ in 0..4 {
        let eta = 8;
        let theta: Vec<f64> = (0..1usize << eta)
            .map(|x| {
                let t = x as f64 / 256.0;
                0.6 * (std::f64::consts::TAU * t).sin() * 0.9 + rng.gen_range(-0.01..0.01)
            })
            .collect();
        let f = quantize(&theta, 14).unwrap();
        let s = wht_forward(&f);
        let oracle = (0..=256usize)
            .find(|&k| {
                let t = TruncatedSpectrum::top_k(s.clone(), k);
                diag_error(&f, &t.reconstruct(), 14).unwrap() < eps
            })
            .unwrap();
        assert_eq!(minimal_truncation(&f, eps).k(), oracle);
    }
}

#[test]
fn truncation_curve_ends_at_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let f = random_function(&mut rng, 5, 6);
    let curve = truncation_curve(&f);
    assert_eq!(curve.last().unwrap().1, 0.0);
    assert_eq!(curve.len(), wht_forward(&f).support_size() + 1);
}

#[test]
fn sample_readers_agree() {
    let data = [0.25, -0.5, 0.125, 0.0];
    let bytes: Vec<u8> = data.iter().flat_map(|v: &f64| v.to_le_bytes()).collect();
    assert_eq!(read_samples_binary(&bytes).unwrap(), data);
    assert_eq!(read_samples_csv("0.25\n-0.5\n\n0.125\n0\n").unwrap(), data);
    match read_samples_csv("0.1\nabc\n") {
        Err(WhtError::Parse { line, .. }) => assert_eq!(line, 2),
        other => panic!("unexpected {other:?}"),
    }
}

fn function_strategy() -> impl Strategy<Value = SampledFunction> {
    (1u32..=8, 1u32..=16).prop_flat_map(|(eta, d)| {
        let half = 1i64 << (d - 1);
        prop::collection::vec(-half..half, 1usize << eta)
            .prop_map(move |v| SampledFunction::new(d, v).unwrap())
    })
}

proptest! {
    #[test]
    fn involution_scales_by_two_to_eta(f in function_strategy()) {
        let mut twice = wht_forward(&f).coeffs().to_vec();
        fwht_in_place(&mut twice);
        let n = f.len() as i64;
        prop_assert!(twice.iter().zip(f.values()).all(|(&a, &v)| a == n * v));
    }

    #[test]
    fn coefficients_bounded(f in function_strategy()) {
        let s = wht_forward(&f);
        let bound = f.len() as i64 * f.max_abs();
        prop_assert!(s.coeffs().iter().all(|c| c.abs() <= bound));
        prop_assert!(WalshSpectrum::from_coeffs(f.b(), s.coeffs().to_vec()).is_ok());
    }

    #[test]
    fn diag_error_is_pseudometric(
        a in prop::collection::vec(-100.0f64..100.0, 8),
        b in prop::collection::vec(-100.0f64..100.0, 8),
        c in prop::collection::vec(-100.0f64..100.0, 8),
    ) {
        let d = 6;
        let ab = diag_error_real(&a, &b, d).unwrap();
        let ba = diag_error_real(&b, &a, d).unwrap();
        let bc = diag_error_real(&b, &c, d).unwrap();
        let ac = diag_error_real(&a, &c, d).unwrap();
        prop_assert!((ab - ba).abs() < 1e-12);
        prop_assert_eq!(diag_error_real(&a, &a, d).unwrap(), 0.0);
        prop_assert!(ac <= ab + bc + 1e-12);
    }

    #[test]
    fn truncation_meets_budget_and_is_first_success(f in function_strategy(), e in 1u32..12) {
        let eps = 2f64.powi(-(e as i32));
        let t = minimal_truncation(&f, eps);
        let err = diag_error(&f, &t.reconstruct(), f.d()).unwrap();
        prop_assert!(err < eps);
        let s = wht_forward(&f);
        for k in 0..t.k() {
            let shorter = TruncatedSpectrum::top_k(s.clone(), k);
            prop_assert!(diag_error(&f, &shorter.reconstruct(), f.d()).unwrap() >= eps);
        }
        let full = TruncatedSpectrum::top_k(s, f.len());
        prop_assert_eq!(diag_error(&f, &full.reconstruct(), f.d()).unwrap(), 0.0);
    }

    #[test]
    fn retained_dominate_dropped(f in function_strategy(), k in 0usize..256) {
        let s = wht_forward(&f);
        let k = k.min(s.len());
        let t = TruncatedSpectrum::top_k(s.clone(), k);
        prop_assert_eq!(t.k(), k);
        let kept: Vec<u64> = t.support().to_vec();
        let min_kept = kept.iter().map(|&z| s.coeffs()[z as usize].abs()).min();
        let max_dropped = (0..s.len() as u64)
            .filter(|z| !kept.contains(z))
            .map(|z| s.coeffs()[z as usize].abs())
            .max();
        if let (Some(a), Some(b)) = (min_kept, max_dropped) {
            prop_assert!(a >= b);
        }
    }
}
