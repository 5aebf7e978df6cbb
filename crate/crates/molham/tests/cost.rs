use baseline::SelectSwapModel;
use molham::cost::*;
use molham::norms::Strategy;
use molham::ToyMoleculeSpec;
use proptest::prelude::*;

fn ss() -> CostConfig {
    CostConfig::default()
}

#[test]
fn select_swap_lookup_matches_the_model() {
    let cfg = CostConfig { lambda: LambdaChoice::Fixed(8), ..ss() };
    let p = c_q(1 << 10, 15, None, &cfg);
    assert_eq!(p.report.toffoli_count, 368);
    assert_eq!(p.report.t_count, 4 * 368);
    assert_eq!(p.report.qubit_count, 140);
    assert_eq!(p.ancillas, 130);
}

#[test]
fn diagonal_is_two_lookups_plus_the_adder() {
    let cfg = ss();
    let q = c_q(4096, 15, None, &cfg);
    let d = c_d(4096, 15, None, &cfg);
    assert_eq!(d.report.toffoli_count, 2 * q.report.toffoli_count + 15);
}

#[test]
fn trivial_tables_cost_nothing() {
    for cfg in [ss(), CostConfig { backend: QromBackend::Wh, ..ss() }] {
        assert_eq!(c_q(1, 15, None, &cfg).report, qrom::CostReport::default());
        assert_eq!(c_d(0, 15, None, &cfg).report, qrom::CostReport::default());
    }
}

#[test]
fn decoupled_water_books_no_coupling_tables() {
    let mut s = ToyMoleculeSpec::water(8, 8);
    s.coupling.mu12 = None;
    let c = strategy_cost(&s, Strategy::FbrDvr, &ss()).unwrap();
    for name in ["cos theta", "sin theta", "1/R1"] {
        let comp = c.components.iter().find(|x| x.name == name).unwrap();
        assert_eq!(comp.count, 0);
        assert_eq!(comp.unit, qrom::CostReport::default());
    }
    let coupled = strategy_cost(&ToyMoleculeSpec::water(8, 8), Strategy::FbrDvr, &ss()).unwrap();
    assert!(coupled.hamiltonian.t_count > c.hamiltonian.t_count);
}

#[test]
fn water_components_follow_the_mixed_layout() {
    let s = ToyMoleculeSpec::water(32, 64);
    let c = strategy_cost(&s, Strategy::FbrDvr, &ss()).unwrap();
    let get = |n: &str| c.components.iter().find(|x| x.name == n).unwrap().clone();
    assert_eq!((get("P_R1 elements").count, get("P_R1 elements").entries), (4, 64));
    assert_eq!((get("P_theta elements").count, get("P_theta elements").entries), (4, 2048));
    assert_eq!(get("cos theta").count, 1);
    assert_eq!(get("sin theta").count, 2);
    assert_eq!((get("1/R1").count, get("1/R1").entries), (1, 32));
    assert_eq!(get("potential").entries, 32 * 32 * 64);
    assert_eq!(get("DVR transforms (block encoding)").count, 2);
    assert_eq!(get("DVR transforms (Hamiltonian)").count, 4);
    let be: u64 = c
        .components
        .iter()
        .filter(|x| !x.name.contains("(Hamiltonian)") && !["controlled terms", "ancilla state preparation", "rotor oracle"].contains(&x.name.as_str()))
        .map(|x| x.count * x.unit.t_count)
        .sum();
    assert_eq!(be, c.block_encoding.t_count);
    let all: u64 = c.components.iter().map(|x| x.count * x.unit.t_count).sum();
    assert_eq!(all, c.hamiltonian.t_count);
    assert_eq!(c.system_qubits, 16);
}

#[test]
fn dvr_transform_cost_matches_the_oracle_formula() {
    let s = ToyMoleculeSpec::water(32, 64);
    let c = strategy_cost(&s, Strategy::FbrDvr, &ss()).unwrap();
    let t = c.components.iter().find(|x| x.name == "DVR transforms (block encoding)").unwrap().unit.t_count;
    let lookup = |n: u64| {
        let eta = ceil_log2(n * n);
        SelectSwapModel::new(eta, 15, best_lambda(eta, 15)).unwrap().toffoli() * 4
    };
    let expect = 2 * dvr::rounds(32) * lookup(32) * 2 + 2 * dvr::rounds(64) * lookup(64);
    assert_eq!(t, expect);
}

#[test]
fn lcu_formula() {
    let (r, _) = lcu_cost(1 << 16);
    let n2lg = (1u64 << 32) * 16;
    assert_eq!(r.t_count, 3 * n2lg + 4 * 256);
    assert_eq!(r.clifford_count, 27 * n2lg / 4 + 4 * 256);
    let s = ToyMoleculeSpec::water(32, 64);
    let c = strategy_cost(&s, Strategy::LcuFbr, &ss()).unwrap();
    assert_eq!(c.hamiltonian, r);
}

#[test]
fn oscillator_crossover() {
    let cost = |n: usize, st| {
        strategy_cost(&ToyMoleculeSpec::oscillator(n, 1.0, 2000.0, 16.0), st, &ss())
            .unwrap()
            .hamiltonian
            .t_count
    };
    for n in [8usize, 16, 32, 64, 128, 256] {
        assert!(cost(n, Strategy::LcuFbr) < cost(n, Strategy::FbrDvr), "n = {n}");
    }
    for n in [512usize, 1024] {
        assert!(cost(n, Strategy::FbrDvr) < cost(n, Strategy::LcuFbr), "n = {n}");
    }
}

#[test]
fn strategy_ordering_for_water() {
    let s = ToyMoleculeSpec::water(32, 64);
    let t: Vec<u64> = Strategy::ALL
        .iter()
        .map(|&st| strategy_cost(&s, st, &ss()).unwrap().hamiltonian.t_count)
        .collect();
    // LCU, full DVR, separate DVR, mixed: each cheaper than the one before.
    for w in t.windows(2) {
        assert!(w[1] < w[0], "{t:?}");
    }
}

#[test]
fn lambda_scale_trades_ancillas_for_gates() {
    let s = ToyMoleculeSpec::water(32, 64);
    let env = lambda_envelope(&s, Strategy::FbrDvr, 15, &power_scales(-3, 5)).unwrap();
    for w in env.windows(2) {
        assert!(w[1].ancillas >= w[0].ancillas);
    }
    let opt = strategy_cost(&s, Strategy::FbrDvr, &ss()).unwrap().hamiltonian.t_count;
    assert!(env.iter().all(|p| p.t_count >= opt));
    assert_eq!(env.iter().find(|p| p.scale == 1.0).unwrap().t_count, opt);
}

#[test]
fn wh_backend_synthesizes_small_tables() {
    let s = ToyMoleculeSpec::water(8, 8);
    let cfg = CostConfig { backend: QromBackend::Wh, ..ss() };
    let c = strategy_cost(&s, Strategy::FbrDvr, &cfg).unwrap();
    assert!(c.components.iter().all(|x| !x.fallback));
    assert_eq!(c.backend, QromBackend::Wh);
    let full = strategy_cost(&s, Strategy::FullDvr, &cfg).unwrap();
    assert!(full.components.iter().any(|x| x.fallback));
}

#[test]
fn rejects_bad_precision() {
    let s = ToyMoleculeSpec::water(4, 4);
    assert!(strategy_cost(&s, Strategy::FbrDvr, &CostConfig { d: 34, ..ss() }).is_err());
    assert!(strategy_cost(&s, Strategy::FbrDvr, &CostConfig { epsilon: 0.0, ..ss() }).is_err());
}

#[test]
fn polyspherical_triatomic_has_no_azimuthal_terms() {
    let sizes = PolysphericalSizes { atoms: 3, n_r: 8, n_theta: 8, n_phi: 8, j: 0 };
    for rows in [polyspherical_dvr_table(&sizes, &ss()), polyspherical_fbr_dvr_table(&sizes, &ss())] {
        for r in &rows {
            if r.term.contains("phi") || r.term.contains("cor") || r.term.contains("Gamma") || r.term.contains('J') {
                assert_eq!(r.count, 0, "{}", r.term);
                assert_eq!(r.cost, qrom::CostReport::default(), "{}", r.term);
            }
        }
        let v = rows.iter().find(|r| r.term.ends_with('V')).unwrap();
        assert_eq!(v.n, 8 * 8 * 8);
        assert_eq!(table_total(&rows).t_count, rows.iter().map(|r| r.cost.t_count).sum::<u64>());
    }
}

#[test]
fn polyspherical_counts_for_five_atoms() {
    let sizes = PolysphericalSizes { atoms: 5, n_r: 4, n_theta: 4, n_phi: 4, j: 2 };
    let rows = polyspherical_dvr_table(&sizes, &ss());
    let count = |t: &str| rows.iter().find(|r| r.term == t).unwrap().count;
    assert_eq!(count("U_vib(R_i,R_i)"), 4);
    assert_eq!(count("U_vib(u_i,u_j)"), 3);
    assert_eq!(count("U_vib(phi_i,phi_j)"), 1);
    assert_eq!(count("U_vib(u_i,phi_j)"), 4);
    assert_eq!(count("U_cor(x|y,u_j)"), 6);
    assert_eq!(count("U_Jx|y"), 4);
    let rr = rows.iter().find(|r| r.term == "U_vib(R_i,R_i)").unwrap();
    assert_eq!(rr.cost.t_count, 4 * 2 * c_d(16, 15, None, &ss()).report.t_count);
}

#[test]
fn qpe_examples() {
    let ch = qrom::CostReport { t_count: 100, qubit_count: 50, ..Default::default() };
    let q = qpe_cost(10.0, &ch, 10.0).unwrap();
    assert_eq!(q.calls, 2);
    assert_eq!(q.report.t_count, 200);
    assert_eq!(q.report.quantum_volume, 200 * 50);
    let q1 = qpe_cost(1000.0, &ch, 1.0).unwrap();
    assert_eq!(q1.calls, (std::f64::consts::PI * 500.0).ceil() as u64);
    assert_eq!(q1.phase_qubits, 10);
    assert_eq!(q1.report.qubit_count, 60);
    assert!(qpe_cost(1.0, &ch, 0.0).is_err());
    assert!(!q1.saturated);
}

#[test]
fn qpe_counts_saturate() {
    let ch = qrom::CostReport { t_count: 1 << 40, qubit_count: 300, ..Default::default() };
    let q = qpe_cost(1e12, &ch, 1.0).unwrap();
    assert!(q.saturated);
    assert_eq!(q.report.t_count, u64::MAX);
    assert_eq!(q.report.quantum_volume, u64::MAX);
}

proptest! {
    #[test]
    fn best_lambda_is_exhaustively_optimal(eta in 1u32..13, d in 1u32..34) {
        let l = best_lambda(eta, d);
        let toff = |l: u64| SelectSwapModel::new(eta, d, l).unwrap().toffoli();
        let best = (1..=1u64 << eta).map(toff).min().unwrap();
        prop_assert_eq!(toff(l), best);
        prop_assert!((1..l).all(|x| toff(x) > best));
    }

    #[test]
    fn qpe_is_linear_in_zeta(z in 1.0f64..1e4, eps in 0.01f64..10.0, t in 1u64..1000) {
        let ch = qrom::CostReport { t_count: t, qubit_count: 10, ..Default::default() };
        let a = qpe_cost(z, &ch, eps).unwrap();
        let b = qpe_cost(2.0 * z, &ch, eps).unwrap();
        prop_assert!(b.calls >= 2 * a.calls - 1 && b.calls <= 2 * a.calls);
        prop_assert_eq!(a.report.t_count, a.calls * t);
    }
}
