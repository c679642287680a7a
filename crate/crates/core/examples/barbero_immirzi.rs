//! The Holst action on the torus and its blindness to one chirality of
//! Cartan-type torsion at γ = ±1.

use torsion_spectral::sampling::rng;
use torsion_spectral::torus::{holst_action, random_field, torsion_parts, FieldKind, TorusGrid};

fn main() -> torsion_spectral::Result<()> {
    let grid = TorusGrid::new(1.0, 16)?;
    let mut r = rng(9);
    let a = random_field(&mut r, grid, FieldKind::Torsion, 2, 0.5)?;
    let shift = torsion_parts(&random_field(&mut r, grid, FieldKind::Torsion, 2, 0.5)?)?;
    for gamma in [1.0, -1.0, 0.2743] {
        let base = holst_action(gamma, 1.0, &a)?;
        let plus = holst_action(gamma, 1.0, &a.add(&shift.self_dual)?)?.value;
        let minus = holst_action(gamma, 1.0, &a.add(&shift.anti_self_dual)?)?.value;
        println!("γ = {gamma}: I_H = {:.9}", base.value);
        println!("  change under S+ shift {:+.3e}", plus - base.value);
        println!("  change under S- shift {:+.3e}", minus - base.value);
    }
    Ok(())
}
