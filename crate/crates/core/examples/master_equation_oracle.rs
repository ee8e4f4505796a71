// Checks the closed-form JC trajectory against direct RK4 integration of
// the master equation.

use std::error::Error;

use squeezed_qsl::jc::evolve_jc;
use squeezed_qsl::oracles::{propagate_master_equation, propagate_master_equation_samples, OdeSettings};
use squeezed_qsl::{LorentzianSpectrum, QubitState, SqueezedEnvironment};

fn deviation(a: &QubitState, b: &QubitState) -> f64 {
    (a.rho11() - b.rho11()).abs().max((a.rho10() - b.rho10()).norm())
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let env = SqueezedEnvironment::new(0.8, 1.2)?;
    let spec = LorentzianSpectrum::new(10.0, 1.0)?;

    let times: Vec<f64> = (0..=5).map(f64::from).collect();
    let states = propagate_master_equation_samples(&times, &env, &spec, &OdeSettings::default())?;
    for (t, s) in times.iter().zip(&states) {
        println!("t = {t}: |closed form - RK4| = {:.2e}", deviation(s, &evolve_jc(*t, &env, &spec)?));
    }

    // Halving the step should shrink the error about sixteenfold.
    let exact = evolve_jc(1.0, &env, &spec)?;
    let mut previous: Option<f64> = None;
    for h in [0.02, 0.01, 0.005] {
        let err = deviation(&propagate_master_equation(1.0, &env, &spec, &OdeSettings::new(h)?)?, &exact);
        match previous {
            Some(p) => println!("h = {h:<6} error {err:.3e}  ratio {:.2}", p / err),
            None => println!("h = {h:<6} error {err:.3e}"),
        }
        previous = Some(err);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
