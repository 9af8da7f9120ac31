use viscoswell::config::RunConfig;
use viscoswell::experiments::{compare_external_curve, normalize_record, preset, read_curve, PRESET_NAMES};
use viscoswell::ivp1d::{boundary_root, mass_ratio};
use viscoswell::output::write_mass;
use viscoswell::solver::{run, steady_state_oracle};
use viscoswell::{LoadSchedule, SolverConfig, State1D};

#[test]
fn every_preset_survives_a_toml_round_trip() {
    for name in PRESET_NAMES {
        let p = preset(name).unwrap();
        let text = RunConfig::from_preset(&p).to_toml().unwrap();
        assert_eq!(RunConfig::parse(&text).unwrap().resolve().unwrap(), p, "{name}");
    }
}

#[test]
fn coarse_run_feeds_the_curve_reader() {
    let p = preset("nmp-pmda-oda").unwrap();
    let rec = run(&State1D::dry(21).unwrap(), &p.schedule, &p.params, &p.solver, 100.0, 40).unwrap();
    let uptake = normalize_record(rec, true).unwrap();
    let mut csv = Vec::new();
    write_mass(&mut csv, &uptake).unwrap();
    let curve = read_curve(csv.as_slice()).unwrap();
    assert_eq!(curve, uptake.curve);
    assert_eq!(compare_external_curve(&curve, &curve).unwrap().rmse, 0.0);

    let (p_eq, _) = steady_state_oracle(&p.params, 0.0).unwrap();
    let last = uptake.record.final_state().unwrap();
    assert!(last.p.iter().all(|x| ((x - p_eq) / p_eq).abs() < 1e-3));
}

#[test]
fn equilibrium_under_load_is_a_fixed_point() {
    let p = preset("dmso-pmda-oda").unwrap();
    let (p_eq, g_eq) = steady_state_oracle(&p.params, 1.0).unwrap();
    assert!((boundary_root(g_eq, 1.0, &p.params).unwrap().x - p_eq).abs() < 1e-10);
    let state = State1D::uniform(31, p_eq, g_eq).unwrap();
    let schedule = LoadSchedule::constant(1.0);
    let rec = run(&state, &schedule, &p.params, &SolverConfig::default(), 0.5, 1).unwrap();
    let end = rec.final_state().unwrap();
    for (a, b) in end.p.iter().zip(&state.p) {
        assert!((a - b).abs() < 1e-8);
    }
    let m0 = mass_ratio(&state, &p.params).unwrap();
    assert!((rec.mass_curve.last().unwrap() - m0).abs() < 1e-8);
}
