macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(qubit_geometry, "qubit_geometry.rs");
example!(jc_dynamics, "jc_dynamics.rs");
example!(master_equation_oracle, "master_equation_oracle.rs");
example!(dephasing_factor, "dephasing_factor.rs");
example!(squeezing_phase, "squeezing_phase.rs");
example!(sign_map, "sign_map.rs");
example!(parameter_scan, "parameter_scan.rs");
example!(verify_oracles, "verify_oracles.rs");

#[test]
fn qubit_geometry_runs() {
    qubit_geometry::run_example().expect("qubit_geometry example should run");
}

#[test]
fn jc_dynamics_runs() {
    jc_dynamics::run_example().expect("jc_dynamics example should run");
}

#[test]
fn master_equation_oracle_runs() {
    master_equation_oracle::run_example().expect("master_equation_oracle example should run");
}

#[test]
fn dephasing_factor_runs() {
    dephasing_factor::run_example().expect("dephasing_factor example should run");
}

#[test]
fn squeezing_phase_runs() {
    squeezing_phase::run_example().expect("squeezing_phase example should run");
}

#[test]
fn sign_map_runs() {
    sign_map::run_example().expect("sign_map example should run");
}

#[test]
fn parameter_scan_runs() {
    parameter_scan::run_example().expect("parameter_scan example should run");
}

#[test]
fn verify_oracles_runs() {
    verify_oracles::run_example().expect("verify_oracles example should run");
}
