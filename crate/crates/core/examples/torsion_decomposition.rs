//! Splits a random torsion tensor on R⁴ into its vectorial, totally skew and
//! Cartan-type parts, and prints norms and orthogonality residuals.

use torsion_spectral::cli::decompose_report;
use torsion_spectral::multilinear::{decompose_torsion, TorsionTensor, Vector};
use torsion_spectral::sampling::{random_torsion, rng};

fn main() -> torsion_spectral::Result<()> {
    let mut r = rng(2024);
    let a = random_torsion(&mut r, 4);
    let report = decompose_report(&a)?;
    println!("‖A‖²        = {:.6}", report.norms.a);
    println!("‖V-part‖²   = {:.6}", report.norms.v);
    println!("‖T-part‖²   = {:.6}", report.norms.t);
    println!("‖S‖²        = {:.6}", report.norms.s);
    println!(
        "‖S+‖², ‖S-‖² = {:.6}, {:.6}",
        report.norms.s_plus.unwrap(),
        report.norms.s_minus.unwrap()
    );
    for (pair, value) in &report.orthogonality {
        println!("|<{pair}>| = {value:.1e}");
    }
    println!(
        "Pythagoras residual {:.1e}, round trip {:.1e}",
        report.pythagoras_residual, report.round_trip_residual
    );

    // a purely vectorial tensor gives back its vector and nothing else
    let e1 = TorsionTensor::vectorial(&Vector::unit(4, 0))?;
    let c = decompose_torsion(&e1);
    println!(
        "vectorial e1: V = {:?}, ‖T‖² = {}, ‖S‖² = {}",
        c.vector.components(),
        c.three_form.norm_sq(),
        c.cartan.norm_sq()
    );

    // the decomposition works in every dimension 3..=8
    for n in 3..=8 {
        let a = random_torsion(&mut r, n);
        println!(
            "n = {n}: round trip {:.1e}",
            decompose_report(&a)?.round_trip_residual
        );
    }
    Ok(())
}
