// Damped Jaynes–Cummings decay in a squeezed vacuum and its speed limit.

use std::error::Error;
use std::f64::consts::FRAC_PI_2;

use squeezed_qsl::jc::{evolve_jc, generator_jc, qsl_jc};
use squeezed_qsl::qubit::norms;
use squeezed_qsl::{LorentzianSpectrum, SqueezedEnvironment};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let env = SqueezedEnvironment::new(0.5, FRAC_PI_2)?;
    let spec = LorentzianSpectrum::new(5.0, 1.0)?;

    println!("{:>5} {:>10} {:>10} {:>10} {:>10}", "t", "rho11", "Re rho10", "Im rho10", "|L_t|op");
    for i in 0..=10 {
        let t = 0.2 * i as f64;
        let s = evolve_jc(t, &env, &spec)?;
        let g = generator_jc(t, &env, &spec)?;
        println!(
            "{t:5.1} {:10.6} {:10.6} {:10.6} {:10.6}",
            s.rho11(),
            s.rho10().re,
            s.rho10().im,
            norms(&g).op
        );
    }

    let q = qsl_jc(1.0, &env, &spec)?;
    println!(
        "tau = 1: tau_qsl = {:.6} (ratio {:.6}, tight norm {})",
        q.tau_qsl, q.ratio, q.tight_norm
    );

    // Stronger squeezing slows the evolution relative to its bound.
    for r in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let q = qsl_jc(1.0, &SqueezedEnvironment::new(r, FRAC_PI_2)?, &spec)?;
        println!("r = {r:4.2}: ratio {:.6}", q.ratio);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
