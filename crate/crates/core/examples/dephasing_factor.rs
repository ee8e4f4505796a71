// Dephasing factor for Ohmic-family spectra: closed form, frequency
// quadrature and the rate.

use std::error::Error;

use squeezed_qsl::dephasing::{gamma_analytic, gamma_quadrature, gamma_rate, qsl_dephasing};
use squeezed_qsl::{OhmicSpectrum, SqueezedEnvironment};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let env = SqueezedEnvironment::new(0.5, 1.0)?;
    let t = 3.0;

    println!("{:>6} {:>12} {:>12} {:>9} {:>12} {:>8}", "s", "gamma", "quadrature", "rel dev", "gamma'", "ratio");
    // 0.999 and 1.001 sit next to the Γ(s − 1) pole and go through quadrature.
    for s in [0.5, 0.999, 1.0, 1.001, 2.0, 3.0, 4.0] {
        let spec = OhmicSpectrum::new(1.0, s)?;
        let g = gamma_analytic(t, &env, &spec)?;
        let q = gamma_quadrature(t, &env, &spec)?;
        println!(
            "{s:6.3} {g:12.8} {q:12.8} {:9.1e} {:12.8} {:8.5}",
            (g - q).abs() / q,
            gamma_rate(t, &env, &spec)?,
            qsl_dephasing(t, &env, &spec)?.ratio
        );
    }

    // A finite cutoff only rescales time: γ(t; ω_c) = γ(ω_c·t; 1).
    let scaled = OhmicSpectrum::with_cutoff(1.0, 2.5, 2.0)?;
    let unit = OhmicSpectrum::new(1.0, 2.5)?;
    println!(
        "omega_c = 2 at t = 1: {:.10}   omega_c = 1 at t = 2: {:.10}",
        gamma_analytic(1.0, &env, &scaled)?,
        gamma_analytic(2.0, &env, &unit)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
