use blockenc::*;
use nalgebra::{DMatrix, SymmetricEigen};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random symmetric matrix with at most `rho` nonzeros per row.
fn random_sparse(r: &mut ChaCha8Rng, n: usize, rho: usize) -> DMatrix<f64> {
    let mut a = DMatrix::zeros(n, n);
    for _ in 0..n * rho {
        let (j, k) = (r.gen_range(0..n), r.gen_range(0..n));
        let count = |a: &DMatrix<f64>, i: usize| (0..n).filter(|&c| a[(i, c)] != 0.0).count();
        if a[(j, k)] != 0.0 || count(&a, j) >= rho || count(&a, k) >= rho {
            continue;
        }
        if j != k && (count(&a, j) + 1 > rho || count(&a, k) + 1 > rho) {
            continue;
        }
        let v = r.gen_range(-1.0..1.0);
        a[(j, k)] = v;
        a[(k, j)] = v;
    }
    if a.amax() == 0.0 {
        a[(0, 0)] = 0.5;
    }
    a
}

fn pad(a: &DMatrix<f64>, dim: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(dim, dim);
    m.view_mut((0, 0), (a.nrows(), a.ncols())).copy_from(a);
    m
}

#[test]
fn identity_four() {
    let a = SparseOracle::from_dense(&DMatrix::identity(4, 4)).unwrap();
    for be in [dsparse_standard(&a).unwrap(), dsparse_fused(&a).unwrap()] {
        assert_eq!(be.zeta, 1.0);
        assert!((be.sub_block() - DMatrix::<f64>::identity(4, 4)).amax() < 1e-12);
        assert!(be.residual < 1e-12);
    }
}

#[test]
fn tridiagonal_eight() {
    let mut r = rng(1);
    let mut a = DMatrix::zeros(8, 8);
    for i in 0..8 {
        a[(i, i)] = r.gen_range(0.0..1.0);
        if i + 1 < 8 {
            let v = r.gen_range(0.0..1.0);
            a[(i, i + 1)] = v;
            a[(i + 1, i)] = v;
        }
    }
    let s = SparseOracle::from_dense(&a).unwrap();
    assert_eq!(s.rho(), 3);
    let be = dsparse_standard(&s).unwrap();
    assert!((be.zeta - 3.0 * a.amax()).abs() < 1e-15);
    assert!((be.sub_block() * 3.0 * a.amax() - &a).amax() < 1e-12);
}

#[test]
fn random_two_sparse_sixteen_both_methods() {
    let mut r = rng(2);
    for _ in 0..5 {
        let a = random_sparse(&mut r, 16, 2);
        let s = SparseOracle::from_dense(&a).unwrap();
        let std = dsparse_standard(&s).unwrap();
        let fused = dsparse_fused(&s).unwrap();
        assert!(std.residual < 1e-10 && fused.residual < 1e-10);
        assert_eq!(std.zeta, fused.zeta);
        assert!((std.sub_block() - fused.sub_block()).amax() < 1e-10);
        assert_eq!(std.ancilla_qubits, 4 + 2);
        assert_eq!(fused.ancilla_qubits, 4 + 1);
    }
}

#[test]
fn sixty_four_dimensional_sparse() {
    let mut r = rng(3);
    let a = random_sparse(&mut r, 64, 3);
    let s = SparseOracle::from_dense(&a).unwrap();
    let be = dsparse_standard(&s).unwrap();
    assert_eq!(be.circuit.qubits(), 14);
    assert!(be.residual < 1e-9 && be.unitarity < 1e-10);
}

#[test]
fn non_power_of_two_dimension_is_padded() {
    let mut r = rng(4);
    let a = random_sparse(&mut r, 5, 2);
    let s = SparseOracle::from_dense(&a).unwrap();
    let be = dsparse_fused(&s).unwrap();
    assert_eq!(be.dim(), 8);
    assert!((be.sub_block() * be.zeta - pad(&a, 8)).amax() < 1e-12);
}

#[test]
fn zero_and_asymmetric_rejected() {
    let z = SparseOracle::from_dense(&DMatrix::zeros(4, 4)).unwrap();
    assert!(matches!(dsparse_standard(&z), Err(BlockEncodingError::Degenerate)));
    let mut a = DMatrix::zeros(4, 4);
    a[(0, 1)] = 1.0;
    let s = SparseOracle::from_dense(&a).unwrap();
    assert!(dsparse_fused(&s).is_err());
    assert!(matches!(diagonal_fused(&[0.0; 4]), Err(BlockEncodingError::Degenerate)));
}

#[test]
fn diagonal_fused_single_ancilla() {
    let d = [0.3, -1.5, 0.9, 1.2, 0.0, -0.1, 0.7, 1.5];
    let be = diagonal_fused(&d).unwrap();
    assert_eq!(be.ancilla_qubits, 1);
    assert_eq!(be.zeta, 1.5);
    let sb = be.sub_block();
    for i in 0..8 {
        assert!((sb[(i, i)] - d[i] / 1.5).abs() < 1e-15);
    }
    assert!(be.zeta >= be.spectral_radius());
}

#[test]
fn block_copy_oracle_matches_generic() {
    let mut r = rng(5);
    let blocks: Vec<DMatrix<f64>> = (0..4)
        .map(|_| {
            let m = DMatrix::from_fn(4, 4, |_, _| r.gen_range(-1.0..1.0));
            &m + m.transpose()
        })
        .collect();
    let s = SparseOracle::block_diagonal(&blocks).unwrap();
    assert_eq!(s.oracle(), ColumnOracle::BlockCopy { block_bits: 2 });
    for j in 0..16 {
        for l in 0..4 {
            assert_eq!(s.column(j, l), Some(s.column_table(j)[l]));
        }
    }
    let copy = dsparse_standard(&s).unwrap();
    let generic = dsparse_standard(&s.clone().with_generic_oracle()).unwrap();
    assert!((copy.sub_block() - generic.sub_block()).amax() < 1e-12);
    let fused = dsparse_fused(&s).unwrap();
    assert!((fused.sub_block() - generic.sub_block()).amax() < 1e-12);
}

#[test]
fn diag_no_rotation_ramp() {
    let values: Vec<u64> = (0..8).collect();
    let q = diagonal_qrom(&values, 3).unwrap();
    let be = diag_no_rotation(&values, 3, &q).unwrap();
    assert_eq!(be.zeta, 7.0);
    let sb = be.sub_block();
    for x in 0..8 {
        assert!((sb[(x, x)] - x as f64 / 7.0).abs() < 1e-14);
    }
    assert!(be.residual < 1e-12);
}

#[test]
fn diag_no_rotation_maximal_is_identity() {
    let values = vec![15u64; 4];
    let q = diagonal_qrom(&values, 4).unwrap();
    let be = diag_no_rotation(&values, 4, &q).unwrap();
    assert!((be.sub_block() - DMatrix::<f64>::identity(4, 4)).amax() < 1e-12);
}

#[test]
fn diag_no_rotation_errors() {
    assert!(matches!(diagonal_qrom(&[0, 8, 1, 2], 3), Err(BlockEncodingError::Range { index: 1, .. })));
    let good = diagonal_qrom(&[1, 2, 3, 4], 3).unwrap();
    assert!(matches!(
        diag_no_rotation(&[1, 2, 3, 5], 3, &good),
        Err(BlockEncodingError::QromMismatch { x: 3, .. })
    ));
}

#[test]
fn lcu_single_and_pair() {
    let a = diagonal_fused(&[0.5, -0.25]).unwrap();
    let one = lcu_sum(std::slice::from_ref(&a)).unwrap();
    assert_eq!(one.zeta, a.zeta);
    assert_eq!(one.circuit, a.circuit);
    let b = diagonal_fused(&[0.1, 0.5]).unwrap();
    let s = lcu_sum(&[a.clone(), b.clone()]).unwrap();
    assert_eq!(s.zeta, 1.0);
    assert!((s.sub_block() - (&a.operator + &b.operator) / 1.0).amax() < 1e-12);
    assert!(matches!(lcu_sum(&[]), Err(BlockEncodingError::Empty)));
}

#[test]
fn lcu_three_diagonal_parts_padded() {
    let mut r = rng(6);
    let parts: Vec<BlockEncoding> = (0..3)
        .map(|_| diagonal_fused(&(0..8).map(|_| r.gen_range(-2.0..2.0)).collect::<Vec<_>>()).unwrap())
        .collect();
    let s = lcu_sum(&parts).unwrap();
    let zeta: f64 = parts.iter().map(|p| p.zeta).sum();
    assert!((s.zeta - zeta).abs() < 1e-14);
    assert!(s.residual < 1e-10);
    assert_eq!(s.ancilla_qubits, 1 + 2);
}

#[test]
fn lcu_mixed_ancilla_counts() {
    let mut r = rng(7);
    let a = dsparse_standard(&SparseOracle::from_dense(&random_sparse(&mut r, 8, 2)).unwrap()).unwrap();
    let b = diagonal_fused(&[1.0, -0.5, 0.25, 0.0, 0.3, 0.6, -0.9, 0.1]).unwrap();
    let s = lcu_sum(&[a.clone(), b.clone()]).unwrap();
    assert!((s.sub_block() * s.zeta - (&a.operator + &b.operator)).amax() < 1e-10);
}

#[test]
fn product_with_identity_encoding() {
    let l = diagonal_fused(&[0.5, -1.0, 0.25, 0.75]).unwrap();
    let id = diagonal_fused(&[1.0; 4]).unwrap();
    let p = product_be(&l, &id).unwrap();
    assert_eq!(p.zeta, l.zeta);
    assert!((p.sub_block() - l.sub_block()).amax() < 1e-12);
}

#[test]
fn product_diagonal_elementwise() {
    let x = [0.5, -1.0, 0.25, 0.75];
    let y = [2.0, 0.5, -1.0, 1.0];
    let p = product_be(&diagonal_fused(&x).unwrap(), &diagonal_fused(&y).unwrap()).unwrap();
    assert_eq!(p.zeta, 2.0);
    let sb = p.sub_block();
    for i in 0..4 {
        assert!((sb[(i, i)] * 2.0 - x[i] * y[i]).abs() < 1e-12);
    }
}

#[test]
fn product_ladder_times_diagonal() {
    let n = 8;
    let mut jx = DMatrix::zeros(n, n);
    for i in 0..n - 1 {
        let v = ((i + 1) as f64).sqrt();
        jx[(i, i + 1)] = v;
        jx[(i + 1, i)] = v;
    }
    let diag: Vec<f64> = (0..n).map(|i| i as f64 - 3.5).collect();
    let l = dsparse_fused(&SparseOracle::from_dense(&jx).unwrap()).unwrap();
    let r = diagonal_fused(&diag).unwrap();
    let p = product_be(&l, &r).unwrap();
    let dense = &jx * DMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag));
    assert!((p.sub_block() * p.zeta - dense).amax() < 1e-10);
    assert!((p.zeta - l.zeta * r.zeta).abs() < 1e-12);
    assert!(product_be(&l, &diagonal_fused(&[1.0; 4]).unwrap()).is_err());
}

/// Two 4-level modes: `h_eff = h ⊗ I + ½ g`, `H = h⊗I + I⊗h + g` for a swap-symmetric `g`.
fn two_mode(r: &mut ChaCha8Rng) -> (DMatrix<f64>, DMatrix<f64>) {
    let h = {
        let m = DMatrix::from_fn(4, 4, |_, _| r.gen_range(-1.0..1.0));
        (&m + m.transpose()) * 0.5
    };
    let i4 = DMatrix::<f64>::identity(4, 4);
    let x = DMatrix::from_fn(4, 4, |a, b| if a.abs_diff(b) == 1 { 1.0 } else { 0.0 });
    let g = x.kronecker(&x) * 0.3;
    // qubits 0..2 hold mode 1 (low), 2..4 mode 2: kron(A, B) puts B on the low qubits.
    let h_eff = i4.kronecker(&h) + &g * 0.5;
    let full = i4.kronecker(&h) + h.kronecker(&i4) + g;
    (h_eff, full)
}

#[test]
fn symmetry_swap_two_mode() {
    let mut r = rng(8);
    let (h_eff, full) = two_mode(&mut r);
    let be = dsparse_fused(&SparseOracle::from_dense(&h_eff).unwrap()).unwrap();
    let out = symmetry_swap_reduction(&be, &[(0, 2), (1, 3)], &full).unwrap();
    assert!((out.zeta - 2.0 * be.zeta).abs() < 1e-15);
    assert!(out.residual < 1e-10);
    let bad = &full + DMatrix::from_fn(16, 16, |a, b| if a == 0 && b == 0 { 1e-6 } else { 0.0 });
    assert!(matches!(
        symmetry_swap_reduction(&be, &[(0, 2), (1, 3)], &bad),
        Err(BlockEncodingError::Symmetry(_))
    ));
}

#[test]
fn swap_symmetric_h_eff_doubles() {
    let d: Vec<f64> = (0..16).map(|u| ((u & 3) + (u >> 2)) as f64 * 0.1 + 0.05).collect();
    let be = diagonal_fused(&d).unwrap();
    let out = symmetry_swap_reduction(&be, &[(0, 2), (1, 3)], &(&be.operator * 2.0)).unwrap();
    assert!((out.sub_block() - be.sub_block()).amax() < 1e-12);
}

#[test]
fn swap_matrix_fixes_symmetric_states() {
    let s = swap_matrix(4, &[(0, 2), (1, 3)]);
    assert!((&s * &s - DMatrix::<f64>::identity(16, 16)).amax() == 0.0);
    for a in 0..4 {
        let u = a | a << 2;
        assert_eq!(s[(u, u)], 1.0);
    }
}

#[test]
fn sum_tensor_pure_a() {
    let idx = of_sum_tensor(5, 1, 1).unwrap();
    for a in 0..5 {
        for mu in 0..5 {
            assert_eq!(idx.column((a, 0, 0), mu).unwrap(), (mu, 0, 0));
        }
    }
    assert!(idx.column((0, 0, 0), 5).is_err());
}

#[test]
fn sum_tensor_brute_force_pattern() {
    for (na, nb, nc) in [(2, 2, 2), (3, 2, 4), (2, 5, 3)] {
        let idx = of_sum_tensor(na, nb, nc).unwrap();
        let n = idx.dim();
        // Dense pattern from the Kronecker sum with all-ones factors.
        let ones = |k: usize| DMatrix::<f64>::from_element(k, k, 1.0);
        let id = |k: usize| DMatrix::<f64>::identity(k, k);
        let m = ones(na).kronecker(&id(nb)).kronecker(&id(nc))
            + id(na).kronecker(&ones(nb)).kronecker(&id(nc))
            + id(na).kronecker(&id(nb)).kronecker(&ones(nc));
        for j in 0..n {
            let mut want: Vec<usize> = (0..n).filter(|&k| m[(j, k)] != 0.0).collect();
            let mut got: Vec<usize> = (0..idx.sparsity())
                .map(|mu| idx.flatten(idx.column(idx.unflatten(j), mu).unwrap()))
                .collect();
            want.sort();
            got.sort();
            assert_eq!(got, want, "row {j}");
        }
    }
}

#[test]
fn sum_tensor_c1_piecewise() {
    let idx = of_sum_tensor(3, 4, 2).unwrap();
    let list: Vec<_> = (0..idx.sparsity()).map(|mu| idx.column((0, 0, 0), mu).unwrap()).collect();
    assert_eq!(
        list,
        vec![(0, 0, 0), (1, 0, 0), (2, 0, 0), (0, 1, 0), (0, 2, 0), (0, 3, 0), (0, 0, 1)]
    );
}

#[test]
fn sum_tensor_drives_a_sparse_encoding() {
    let idx = of_sum_tensor(2, 2, 2).unwrap();
    let mut r = rng(9);
    let sym = |r: &mut ChaCha8Rng, k: usize| {
        let m = DMatrix::from_fn(k, k, |_, _| r.gen_range(0.1..1.0));
        (&m + m.transpose()) * 0.5
    };
    let (a, b, c) = (sym(&mut r, 2), sym(&mut r, 2), sym(&mut r, 2));
    let id = DMatrix::<f64>::identity(2, 2);
    let m = a.kronecker(&id).kronecker(&id) + id.kronecker(&b).kronecker(&id) + id.kronecker(&id).kronecker(&c);
    let rows = (0..8)
        .map(|j| {
            (0..idx.sparsity())
                .map(|mu| {
                    let k = idx.flatten(idx.column(idx.unflatten(j), mu).unwrap());
                    (k, m[(j, k)])
                })
                .collect()
        })
        .collect();
    let s = SparseOracle::new(8, idx.sparsity(), rows).unwrap();
    let be = dsparse_standard(&s).unwrap();
    assert!((be.sub_block() * be.zeta - &m).amax() < 1e-10);
}

#[test]
fn angular_momentum_boundaries() {
    let idx = of_angular_momentum(4).unwrap();
    assert_eq!(idx.column(0, 0).unwrap(), 1);
    assert_eq!(idx.column(4, 1).unwrap(), 3);
    for j in 1..4 {
        assert_eq!((idx.column(j, 0).unwrap(), idx.column(j, 1).unwrap()), (j - 1, j + 1));
    }
    assert!(idx.column(5, 0).is_err());
    assert!(of_angular_momentum(0).is_err());
}

#[test]
fn circuit_dense_matches_factor_semantics() {
    // A swap of two 1-qubit registers is the SWAP gate.
    let mut c = Circuit::new(2);
    c.push(register_swap(0, 1)).unwrap();
    let u = c.to_dense().unwrap();
    let want = DMatrix::from_row_slice(4, 4, &[1., 0., 0., 0., 0., 0., 1., 0., 0., 1., 0., 0., 0., 0., 0., 1.]);
    assert_eq!(u, want);
    // Conditioned rotation acts only on the selected branch.
    let mut c = Circuit::new(2);
    let (co, si) = (0.6, 0.8);
    c.push(Factor::rotation(0, &[], vec![[co, -si, si, co]]).when(Condition::register(&[1], 1))).unwrap();
    let u = c.to_dense().unwrap();
    assert_eq!(u[(0, 0)], 1.0);
    assert_eq!(u[(3, 2)], si);
    assert!((c.adjoint().to_dense().unwrap() * &u - DMatrix::<f64>::identity(4, 4)).amax() < 1e-15);
}

#[test]
fn state_preparation_first_column() {
    let v = [0.5, 0.5, 0.5, 0.5];
    let m = state_preparation(&v);
    for i in 0..4 {
        assert!((m[(i, 0)] - 0.5).abs() < 1e-15);
    }
    assert!((m.transpose() * &m - DMatrix::<f64>::identity(4, 4)).amax() < 1e-15);
}

#[test]
fn coo_csv_ingest() {
    let text = "row,col,value\n0,0,1.0\n0,1,0.5\n1,0,0.5\n2,3,-0.25\n3,2,-0.25\n";
    let s = SparseOracle::from_coo_csv(text.as_bytes(), 4, None).unwrap();
    assert_eq!(s.rho(), 2);
    assert_eq!(s.get(2, 3), -0.25);
    let bad = "0,0,1.0\n0,x,2\n";
    assert!(matches!(
        SparseOracle::from_coo_csv(bad.as_bytes(), 4, None),
        Err(BlockEncodingError::Parse { line: 2, .. })
    ));
    let be = dsparse_standard(&s).unwrap();
    let rec = serde_json::to_value(be.record()).unwrap();
    assert_eq!(rec["zeta"], 2.0);
    assert_eq!(rec["dimension"], 4);
}

#[test]
fn zeta_bounds_spectral_radius() {
    let mut r = rng(10);
    for _ in 0..20 {
        let d: Vec<f64> = (0..8).map(|_| r.gen_range(-3.0..3.0)).collect();
        let be = diagonal_fused(&d).unwrap();
        assert!(be.zeta >= be.spectral_radius() - 1e-12);
        let s = random_sparse(&mut r, 8, 3);
        let be = dsparse_standard(&SparseOracle::from_dense(&s).unwrap()).unwrap();
        let rad = SymmetricEigen::new(s).eigenvalues.amax();
        assert!(be.zeta >= rad - 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lcu_zeta_additive(a in proptest::collection::vec(-2.0f64..2.0, 4), b in proptest::collection::vec(0.1f64..2.0, 4)) {
        prop_assume!(a.iter().any(|x| x.abs() > 1e-3));
        let ea = diagonal_fused(&a).unwrap();
        let eb = diagonal_fused(&b).unwrap();
        let s = lcu_sum(&[ea.clone(), eb.clone()]).unwrap();
        prop_assert!((s.zeta - ea.zeta - eb.zeta).abs() < 1e-12);
        let p = product_be(&ea, &eb).unwrap();
        prop_assert!((p.zeta - ea.zeta * eb.zeta).abs() < 1e-12);
    }

    #[test]
    fn diag_no_rotation_any_values(eta in 1u32..4, d in 1u32..5, seed in any::<u64>()) {
        let mut r = rng(seed);
        let values: Vec<u64> = (0..1u64 << eta).map(|_| r.gen_range(0..1u64 << d)).collect();
        let q = diagonal_qrom(&values, d).unwrap();
        let be = diag_no_rotation(&values, d, &q).unwrap();
        prop_assert_eq!(be.zeta, ((1u64 << d) - 1) as f64);
        prop_assert!(be.zeta >= be.spectral_radius());
    }
}
