// Where the dephasing rate turns negative, as a map over (θ, s).

use std::error::Error;
use std::f64::consts::PI;

use squeezed_qsl::dephasing::{rate_root_in_s, sign_region};
use squeezed_qsl::{Sign, SqueezedEnvironment};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let tau = 3.0;
    let s_grid: Vec<f64> = (1..=40).map(|i| 0.1 * i as f64).collect();
    let theta_grid: Vec<f64> = (0..16).map(|i| i as f64 * PI / 8.0).collect();
    let map = sign_region(1.0, tau, &s_grid, &theta_grid)?;

    println!("sign of gamma'(tau) at r = 1, tau = 3 ('-' marks revival), s from 0.1 to 4.0");
    for (i, theta) in theta_grid.iter().enumerate() {
        let line: String = (0..s_grid.len())
            .map(|j| match map.cell(i, j).at_tau {
                Sign::Positive => '+',
                Sign::Negative => '-',
                Sign::Boundary => '0',
            })
            .collect();
        println!("theta = {:5.3}pi  {line}", theta / PI);
    }

    // Without squeezing the rate at τ = 3 flips sign at s* = π/atan 3.
    let s_star = rate_root_in_s(tau, &SqueezedEnvironment::vacuum(), 2.0, 3.0)?;
    println!("vacuum crossover s* = {s_star:.10} (pi/atan 3 = {:.10})", PI / 3f64.atan());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
