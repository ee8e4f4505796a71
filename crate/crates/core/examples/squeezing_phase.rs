// How the squeezing phase and strength move the JC speed limit.

use std::error::Error;
use std::f64::consts::PI;

use squeezed_qsl::jc::qsl_jc;
use squeezed_qsl::{LorentzianSpectrum, SqueezedEnvironment};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let spec = LorentzianSpectrum::new(5.0, 1.0)?;

    // Mirror pairs θ and 2π − θ give the same bound; θ = 0 is the largest.
    println!("r = 0.5, gamma0 = 5, tau = 1");
    for k in 0..8 {
        let theta = k as f64 * PI / 4.0;
        let a = qsl_jc(1.0, &SqueezedEnvironment::new(0.5, theta)?, &spec)?;
        let b = qsl_jc(1.0, &SqueezedEnvironment::new(0.5, 2.0 * PI - theta)?, &spec)?;
        println!(
            "theta = {:4.2}pi  tau_qsl {:.8}  mirror {:.8}",
            theta / PI,
            a.tau_qsl,
            b.tau_qsl
        );
    }

    println!("theta = pi/2, tau = 1");
    for gamma0 in [1.0, 5.0, 10.0] {
        let spec = LorentzianSpectrum::new(gamma0, 1.0)?;
        let ratios = [0.0, 0.5, 1.0]
            .iter()
            .map(|&r| Ok(qsl_jc(1.0, &SqueezedEnvironment::new(r, PI / 2.0)?, &spec)?.ratio))
            .collect::<Result<Vec<f64>, Box<dyn Error>>>()?;
        println!("gamma0 = {gamma0:4}: ratio at r = 0, 0.5, 1: {ratios:.5?}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
