use molham::{MolhamError, PesKind, ToyMoleculeSpec};

const WATER: &str = r#"
name = "water"
j = 0

[[radial]]
mass = 0.948
omega = 3832.0
r0 = 1.8112
n = 4

[[radial]]
mass = 0.948
omega = 3832.0
r0 = 1.8112
n = 4

[angular]
n = 6
theta0 = 104.52
theta_max = 0.6
omega = 1649.0

[coupling]
mu12 = 15.995

[pes]
kind = "harmonic"
"#;

#[test]
fn parses_water_config() {
    let s = ToyMoleculeSpec::from_toml(WATER).unwrap();
    assert_eq!(s.sizes(), vec![4, 4, 6]);
    assert_eq!(s.dim(), 96);
    assert_eq!(s.modes(), 3);
    assert_eq!(s.pes.kind, PesKind::Harmonic);
    assert!(s.is_exchange_symmetric());
}

#[test]
fn toml_round_trip() {
    let s = ToyMoleculeSpec::water(4, 6);
    let back = ToyMoleculeSpec::from_toml(&s.to_toml()).unwrap();
    assert_eq!(s, back);
}

#[test]
fn nonpositive_mass_names_the_field() {
    let text = WATER.replacen("mass = 0.948", "mass = -1.0", 1);
    match ToyMoleculeSpec::from_toml(&text) {
        Err(MolhamError::Config { field, .. }) => assert_eq!(field, "radial[0].mass"),
        other => panic!("expected config error, got {other:?}"),
    }
    let text = WATER.replace("mass = 0.948", "mass = 0.0");
    match ToyMoleculeSpec::from_toml(&text) {
        Err(MolhamError::Config { field, .. }) => assert_eq!(field, "radial[0].mass"),
        other => panic!("expected config error, got {other:?}"),
    }
}

#[test]
fn other_field_errors() {
    let cases = [
        ("n = 6", "n = 1", "angular.n"),
        ("theta_max = 0.6", "theta_max = 1.5", "angular.theta_max"),
        ("mu12 = 15.995", "mu12 = -2.0", "coupling.mu12"),
        ("omega = 1649.0", "omega = 0.0", "angular.omega"),
    ];
    for (from, to, field) in cases {
        match ToyMoleculeSpec::from_toml(&WATER.replace(from, to)) {
            Err(MolhamError::Config { field: f, .. }) => assert_eq!(f, field),
            other => panic!("{field}: got {other:?}"),
        }
    }
}

#[test]
fn morse_needs_depth() {
    let text = WATER.replace("kind = \"harmonic\"", "kind = \"morse\"");
    match ToyMoleculeSpec::from_toml(&text) {
        Err(MolhamError::Config { field, .. }) => assert_eq!(field, "pes.depth"),
        other => panic!("got {other:?}"),
    }
    let ok = text.replace("kind = \"morse\"", "kind = \"morse\"\ndepth = 0.2");
    ToyMoleculeSpec::from_toml(&ok).unwrap();
}

#[test]
fn unknown_keys_and_syntax_are_config_errors() {
    let bad = WATER.replace("j = 0", "j = 0\nbogus = 1");
    assert!(matches!(ToyMoleculeSpec::from_toml(&bad), Err(MolhamError::Config { .. })));
    assert!(matches!(ToyMoleculeSpec::from_toml("radial = ["), Err(MolhamError::Config { .. })));
}

#[test]
fn grid_reaching_the_origin_is_rejected() {
    let mut s = ToyMoleculeSpec::water(32, 8);
    s.radial[0].r0 = 0.5;
    s.radial[1].r0 = 0.5;
    assert!(matches!(s.validate(), Err(MolhamError::Grid(_))));
    let o = ToyMoleculeSpec::oscillator(512, 1.0, 2000.0, 6.0);
    assert!(matches!(o.validate(), Err(MolhamError::Grid(_))));
}

#[test]
fn angular_window_must_stay_in_range() {
    let mut s = ToyMoleculeSpec::water(4, 6);
    s.angular.as_mut().unwrap().theta0 = 170.0;
    assert!(matches!(s.validate(), Err(MolhamError::Grid(_))));
}
