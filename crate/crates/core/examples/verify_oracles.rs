// Runs the quick oracle suites and prints their worst deviations.

use std::error::Error;

use squeezed_qsl::scan::verify::{run_verify, Suite};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for suite in [Suite::Norms, Suite::DephasingOracle, Suite::Derivatives] {
        let report = run_verify(suite)?;
        println!("{suite}: {}", if report.pass { "pass" } else { "FAIL" });
        for c in &report.checks {
            println!("  {:40} {:.3e} (tol {:.0e})", c.name, c.max_deviation, c.tolerance);
        }
        if !report.pass {
            return Err(format!("{suite} failed").into());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
