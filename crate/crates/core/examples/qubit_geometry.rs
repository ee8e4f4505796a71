// State distances and generator norms for a single qubit.

use std::error::Error;

use num_complex::Complex64;
use squeezed_qsl::qubit::{bures_angle, fidelity, norms};
use squeezed_qsl::{HermitianGenerator, QubitState};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let plus = QubitState::maximally_coherent();
    let mixed = QubitState::maximally_mixed();
    let tilted = QubitState::new(0.3, Complex64::new(0.2, -0.35))?;

    for (name, s) in [("mixed", &mixed), ("tilted", &tilted), ("plus", &plus)] {
        println!(
            "F(plus, {name:6}) = {:.6}   Bures angle = {:.6}",
            fidelity(&plus, s)?,
            bures_angle(&plus, s)?
        );
    }

    // A traceless Hermitian generator has eigenvalues ±m, so the three
    // norms are m, √2·m and 2m.
    let g = HermitianGenerator::new(3.0, Complex64::new(0.0, 4.0));
    let n = norms(&g);
    println!("norms of diag(3, -3) + 4i offdiag: op {} hs {:.6} tr {}", n.op, n.hs, n.tr);

    // Positivity is checked on construction.
    match QubitState::new(0.5, Complex64::new(0.6, 0.0)) {
        Ok(_) => return Err("non-positive state was accepted".into()),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
