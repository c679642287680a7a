//! Structure equations on the flat 4-torus for a random band-limited
//! torsion field: Θ from the structure equation, the Nieh-Yan identity,
//! ∫dC_TT = 0, and the curvature form of the Holst term against its closed
//! form.

use std::time::Instant;

use torsion_spectral::sampling::rng;
use torsion_spectral::torus::{nieh_yan, random_field, FieldKind, TorusGrid};

fn main() -> torsion_spectral::Result<()> {
    let grid = TorusGrid::new(1.0, 16)?;
    let a = random_field(&mut rng(5), grid, FieldKind::Torsion, 2, 0.5)?;
    let start = Instant::now();
    let report = nieh_yan(&a)?;
    println!("{}", torsion_spectral::json::to_string(&report)?);
    println!("elapsed {:.2?}", start.elapsed());
    Ok(())
}
