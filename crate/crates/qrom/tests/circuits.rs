use proptest::prelude::*;
use qrom::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wht::{minimal_truncation, quantize, wht_forward, SampledFunction, TruncatedSpectrum, WalshSpectrum};

fn spectrum(eta: u32, b: u32, entries: &[(u64, i64)]) -> TruncatedSpectrum {
    let mut coeffs = vec![0i64; 1 << eta];
    for &(z, c) in entries {
        coeffs[z as usize] = c;
    }
    let k = entries.len();
    TruncatedSpectrum::top_k(WalshSpectrum::from_coeffs(b, coeffs).unwrap(), k)
}

fn expected(spec: &TruncatedSpectrum) -> Vec<i128> {
    spec.reconstruct().iter().map(|g| g.num).collect()
}

fn assert_implements(c: &QromCircuit, spec: &TruncatedSpectrum, ys: &[u64]) {
    let m = 1i128 << spec.b();
    for (x, num) in expected(spec).into_iter().enumerate() {
        for &y in ys {
            let want = (y as i128 + num).rem_euclid(m) as u64;
            assert_eq!(simulate(c, x as u64, y).unwrap(), want, "x={x} y={y}");
        }
    }
}

fn pfx_masks(c: &QromCircuit) -> Vec<u64> {
    c.gates()
        .iter()
        .filter_map(|g| match g {
            Gate::Pfx { mask, .. } => Some(*mask),
            _ => None,
        })
        .collect()
}

fn random_theta(rng: &mut ChaCha8Rng, eta: u32) -> Vec<f64> {
    let (a, b, p) = (rng.gen_range(0.1..0.5), rng.gen_range(0.0..0.3), rng.gen_range(1.0..4.0));
    (0..1usize << eta)
        .map(|x| {
            let t = x as f64 / (1u64 << eta) as f64;
            (a * (p * std::f64::consts::TAU * t).sin() + b * t * t + rng.gen_range(-0.02..0.02))
                .clamp(-0.99, 0.99)
        })
        .collect()
}

#[test]
fn zero_mask_is_plain_adder() {
    let s = spectrum(3, 8, &[(0, 40)]);
    let c = synthesize(&s, Ordering::GrayCode);
    assert_eq!(c.gates(), &[Gate::Adder { k: 40, width: 8 }]);
}

#[test]
fn single_mask_block() {
    let s = spectrum(3, 8, &[(0b101, -24)]);
    for ord in [Ordering::GrayCode, Ordering::MagnitudeDescending] {
        let c = synthesize(&s, ord);
        assert_eq!(
            c.gates(),
            &[
                Gate::Pfx { mask: 0b101, width: 8 },
                Gate::Adder { k: -24, width: 8 },
                Gate::Pfx { mask: 0b101, width: 8 },
            ]
        );
    }
}

#[test]
fn gray_order_merges_fanouts() {
    let s = spectrum(3, 9, &[(0b001, 8), (0b011, 16), (0b010, 24)]);
    let gray = synthesize(&s, Ordering::GrayCode);
    assert_eq!(pfx_masks(&gray), vec![0b001, 0b010, 0b001, 0b010]);
    let plain = synthesize(&s, Ordering::MagnitudeDescending);
    assert_eq!(pfx_masks(&plain).len(), 6);
    for x in 0..8 {
        for y in [0, 1, 300, 511] {
            assert_eq!(simulate(&gray, x, y).unwrap(), simulate(&plain, x, y).unwrap());
        }
    }
    assert!(cost(&gray).cnot_count < cost(&plain).cnot_count);
}

#[test]
fn equal_pair_saves_one_adder() {
    let b = 10;
    for (k, l) in [(12i64, 12i64), (12, -12), (-7, 7), (33, 33)] {
        let s = spectrum(4, b, &[(0b0011, k), (0b0110, l)]);
        for ord in [Ordering::GrayCode, Ordering::MagnitudeDescending] {
            let c = synthesize(&s, ord);
            let p = pair_cancel(&c, &s).unwrap();
            assert_implements(&p, &s, &[0, 5, 1023]);
            let (before, after) = (cost(&c), cost(&p));
            assert_eq!(before.t_count - after.t_count, adder_t_count(k, b));
            assert!(after.cnot_count <= before.cnot_count);
        }
    }
}

#[test]
fn unpairable_spectrum_unchanged() {
    let s = spectrum(4, 10, &[(0b0001, 3), (0b0010, 8), (0b0100, 64)]);
    let c = synthesize(&s, Ordering::GrayCode);
    assert_eq!(pair_cancel(&c, &s).unwrap(), c);
}

#[test]
fn same_lsb_pair_saving_matches_formula() {
    let b = 12;
    let (k, l) = (12i64, 20i64);
    let s = spectrum(4, b, &[(0b0101, k), (0b1001, l)]);
    let c = synthesize(&s, Ordering::MagnitudeDescending);
    let p = pair_cancel(&c, &s).unwrap();
    assert_implements(&p, &s, &[0, 77, 4095]);
    let t = k.trailing_zeros();
    let best = (k + l).trailing_zeros().max((k - l).trailing_zeros());
    let saving = cost(&c).t_count - cost(&p).t_count;
    assert_eq!(saving, 4 * (best - t) as u64);
    assert!(saving >= 4);
}

#[test]
fn adder_cost_instances() {
    assert_eq!(adder_t_count(4, 8), 16);
    assert_eq!(adder_t_count(7, 8), 24);
    assert_eq!(adder_t_count(-3, 8), 24);
    assert_eq!(controlled_adder_t_count(4, 8), 20);
    assert_eq!(pfx_cnot_count(0b1011, 8), 12);
}

#[test]
fn cost_matches_independent_tally() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..10 {
        let f = quantize(&random_theta(&mut rng, 6), 6).unwrap();
        let spec = minimal_truncation(&f, 2f64.powi(-6));
        let c = synthesize(&spec, Ordering::GrayCode);
        let mut t = 0u64;
        let mut cnot = 0u64;
        for g in c.gates() {
            match g {
                Gate::Adder { k, width } => {
                    t += 4 * (*width as i64 - 2 - k.trailing_zeros() as i64).max(0) as u64
                }
                Gate::Pfx { mask, width } => {
                    cnot += 2 * (mask.count_ones() as u64 - 1) + *width as u64
                }
                other => panic!("unexpected gate {other}"),
            }
        }
        let r = cost(&c);
        assert_eq!(r.t_count, t);
        assert_eq!(r.toffoli_count * 4, r.t_count);
        assert_eq!(r.cnot_count, cnot);
        assert_eq!(r.quantum_volume, r.t_count * r.qubit_count);
        assert!(r.qubit_count <= 3 * 6 + 2 * 6);
    }
}

#[test]
fn cost_report_json_field_names() {
    let r = CostReport::from_toffoli(2, 3, 4, 5, 6);
    let v: serde_json::Value = serde_json::to_value(r).unwrap();
    for key in ["tCount", "toffoliCount", "cnotCount", "cliffordCount", "qubitCount", "tDepth", "quantumVolume"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["quantumVolume"], 40);
}

#[test]
fn identity_and_constant_simulation() {
    let id = QromCircuit::identity(3, 8);
    assert_eq!(simulate(&id, 5, 17).unwrap(), 17);
    let f = SampledFunction::new(5, vec![-3; 8]).unwrap();
    let c = synthesize(&TruncatedSpectrum::full(wht_forward(&f)), Ordering::GrayCode);
    for x in 0..8 {
        assert_eq!(simulate(&c, x, 100).unwrap(), (100 - 24 + 256) % 256);
    }
    assert!(matches!(simulate(&c, 8, 0), Err(QromError::Address { .. })));
    assert!(matches!(simulate(&c, 0, 256), Err(QromError::Payload { .. })));
}

#[test]
fn random_function_matches_reconstruction() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let f = quantize(&random_theta(&mut rng, 8), 8).unwrap();
    let spec = minimal_truncation(&f, 2f64.powi(-8));
    let c = synthesize(&spec, Ordering::GrayCode);
    assert_implements(&c, &spec, &[0]);
}

#[test]
fn text_round_trip() {
    let s = spectrum(4, 10, &[(0, 5), (0b0011, 12), (0b0110, 12), (0b1000, -6)]);
    let c = synthesize(&s, Ordering::GrayCode);
    let p = pair_cancel(&c, &s).unwrap();
    let text = p.to_text();
    assert!(text.contains("CADD"));
    assert_eq!(QromCircuit::from_text(&text).unwrap(), p);
    assert!(QromCircuit::from_text("QROM 2 4 gray-code\nADD 99 4\n").is_err());
    assert!(QromCircuit::from_text("QROM 2 4 gray-code\nFOO 1\n").is_err());
}

#[test]
fn hadamard_is_not_classical() {
    let c = QromCircuit::from_gates(2, 4, Ordering::GrayCode, vec![Gate::Hadamard(0)]).unwrap();
    assert!(matches!(simulate(&c, 0, 0), Err(QromError::NonClassical(_))));
}

#[test]
fn support_split_books_one_merge_adder() {
    let s = spectrum(3, 8, &[(0b001, 1), (0b010, 3), (0b100, 5), (0b011, 7)]);
    let c = synthesize(&s, Ordering::GrayCode);
    let (plain, split) = (cost(&c), cost_support_split(&c));
    assert_eq!(split.toffoli_count, plain.toffoli_count + 6);
    assert!(split.t_depth < plain.t_depth);
}

#[test]
fn rotation_zero_is_identity() {
    let f = SampledFunction::new(4, vec![0; 4]).unwrap();
    let r = multiplexed_rotation_unitary(&f).unwrap();
    for i in 0..8 {
        for j in 0..8 {
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((r.direct[(i, j)].re - want).abs() < 1e-15);
        }
    }
    assert!(r.discrepancy() < 1e-12);
}

#[test]
fn rotation_quarter_turn() {
    let d = 5;
    let f = SampledFunction::new(d, vec![1 << (d - 2); 4]).unwrap();
    let r = multiplexed_rotation_unitary(&f).unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for x in 0..4 {
        assert!((r.direct[(x, x)].re - h).abs() < 1e-15);
        assert!((r.direct[(4 + x, x)].re - h).abs() < 1e-15);
        assert!((r.direct[(x, 4 + x)].re + h).abs() < 1e-15);
    }
    assert!(r.discrepancy() < 1e-12);
}

#[test]
fn rotation_random_blocks() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let (eta, d) = (4u32, 5u32);
    let vals: Vec<i64> = (0..16).map(|_| rng.gen_range(-16..16)).collect();
    let f = SampledFunction::new(d, vals.clone()).unwrap();
    let r = multiplexed_rotation_unitary(&f).unwrap();
    let n = 1 << eta;
    for (x, &v) in vals.iter().enumerate() {
        let th = std::f64::consts::TAU * v as f64 / 32.0;
        let (s, c) = (th / 2.0).sin_cos();
        let block = [[c, -s], [s, c]];
        for a in 0..2 {
            for b in 0..2 {
                let z = r.composed[(a * n + x, b * n + x)];
                assert!((z.re - block[a][b]).abs() < 1e-12 && z.im.abs() < 1e-12);
            }
        }
    }
    assert!(r.discrepancy() < 1e-12);
    assert!(unitarity_deviation(&r.composed) < 1e-12);
    let too_big = SampledFunction::new(8, vec![0; 64]).unwrap();
    assert!(matches!(multiplexed_rotation_unitary(&too_big), Err(QromError::Scale { .. })));
}

#[test]
fn optimizations_preserve_action_exhaustively() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for eta in [3u32, 6, 8] {
        let d = 6;
        let f = quantize(&random_theta(&mut rng, eta), d).unwrap();
        let spec = minimal_truncation(&f, 2f64.powi(-8));
        let plain = synthesize(&spec, Ordering::MagnitudeDescending);
        let gray = synthesize(&spec, Ordering::GrayCode);
        let b = spec.b();
        let ys: Vec<u64> = (0..4).map(|_| rng.gen_range(0..1u64 << b)).collect();
        for c in [&plain, &gray] {
            let p = pair_cancel(c, &spec).unwrap();
            assert!(cost(&p).t_count <= cost(c).t_count);
            assert!(cost(&p).cnot_count <= cost(c).cnot_count);
            assert_implements(&p, &spec, &ys);
        }
        assert!(cost(&gray).cnot_count <= cost(&plain).cnot_count);
        assert_eq!(cost(&gray).t_count, cost(&plain).t_count);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn block_permutation_commutes(seed in any::<u64>(), eta in 2u32..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = eta + 5;
        let lim = 1i64 << (b - 2);
        let mut entries: Vec<(u64, i64)> = Vec::new();
        for z in 0..1u64 << eta {
            if rng.gen_bool(0.6) {
                entries.push((z, rng.gen_range(-lim..lim)));
            }
        }
        let mut gates = Vec::new();
        let mut order = entries.clone();
        order.shuffle(&mut rng);
        for &(z, k) in &order {
            if k == 0 { continue; }
            if z != 0 { gates.push(Gate::Pfx { mask: z, width: b }); }
            gates.push(Gate::Adder { k, width: b });
            if z != 0 { gates.push(Gate::Pfx { mask: z, width: b }); }
        }
        let shuffled = QromCircuit::from_gates(eta, b, Ordering::MagnitudeDescending, gates).unwrap();
        let spec = spectrum(eta, b, &entries);
        let c = synthesize(&spec, Ordering::GrayCode);
        for x in 0..1u64 << eta {
            let y = rng.gen_range(0..1u64 << b);
            prop_assert_eq!(simulate(&shuffled, x, y).unwrap(), simulate(&c, x, y).unwrap());
        }
    }

    #[test]
    fn pfx_composition_is_xor(z1 in 0u64..64, z2 in 0u64..64, x in 0u64..64, y in 0u64..4096) {
        let b = 12;
        let two = QromCircuit::from_gates(6, b, Ordering::GrayCode, vec![
            Gate::Pfx { mask: z1, width: b }, Gate::Pfx { mask: z2, width: b },
        ]).unwrap();
        let merged = merge_pfx(two.gates().to_vec());
        let one = QromCircuit::from_gates(6, b, Ordering::GrayCode, merged.clone()).unwrap();
        prop_assert!(merged.len() <= 1);
        prop_assert_eq!(simulate(&two, x, y).unwrap(), simulate(&one, x, y).unwrap());
    }

    #[test]
    fn pair_cancel_safe_on_random_spectra(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let eta = rng.gen_range(2..6u32);
        let b = eta + rng.gen_range(2..8u32);
        let lim = 1i64 << (b - 1);
        let pool = [3i64, -3, 6, 12, -12, 5, 20, 7, 1];
        let mut entries: Vec<(u64, i64)> = Vec::new();
        for z in 0..1u64 << eta {
            if rng.gen_bool(0.7) {
                let k = if rng.gen_bool(0.5) {
                    pool[rng.gen_range(0..pool.len())] % lim
                } else {
                    rng.gen_range(-lim + 1..lim)
                };
                entries.push((z, k));
            }
        }
        let spec = spectrum(eta, b, &entries);
        for ord in [Ordering::GrayCode, Ordering::MagnitudeDescending] {
            let c = synthesize(&spec, ord);
            let p = pair_cancel(&c, &spec).unwrap();
            prop_assert!(cost(&p).t_count <= cost(&c).t_count);
            prop_assert!(cost(&p).cnot_count <= cost(&c).cnot_count);
            let m = 1i128 << b;
            for (x, num) in expected(&spec).into_iter().enumerate() {
                let y = rng.gen_range(0..1u64 << b);
                prop_assert_eq!(simulate(&p, x as u64, y).unwrap(), (y as i128 + num).rem_euclid(m) as u64);
            }
        }
    }
}
