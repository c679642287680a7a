//! Runs the pointwise and Clifford identity suites and prints one line per
//! check; `holst verify` produces the same report as JSON.

use torsion_spectral::cli::{run_verify, Suite, VerifyOptions};

fn main() -> torsion_spectral::Result<()> {
    for suite in [Suite::Pointwise, Suite::Clifford] {
        let report = run_verify(&VerifyOptions {
            suite,
            ..VerifyOptions::default()
        })?;
        for c in &report.checks {
            let mark = if c.pass { "ok  " } else { "FAIL" };
            println!(
                "{mark} {:36} {:.1e} ≤ {:.0e}  {}",
                c.id, c.max_residual, c.tolerance, c.anchor
            );
        }
    }
    Ok(())
}
