//! Euclidean Clifford algebra Cl(ℝ⁴) acting on Σ₄ ≅ ℂ⁴.
//!
//! Conventions: X·Y + Y·X = −2g(X,Y), so the generators are skew-adjoint;
//! the monomial θ^{i₁}∧…∧θ^{i_k} acts as e_{i₁}·…·e_{i_k}; the chirality
//! operator is γ₅ = e₁·e₂·e₃·e₄ = dvol and left-handed spinors are its
//! −1 eigenspace, P_L = ½(id − γ₅).

mod coefficients;
mod endomorphism;

use serde::{Deserialize, Serialize};

pub use coefficients::{
    alpha2, beta2_closed_form, beta2_density, beta2_holst_residual, dirac_torsion_symbol,
    dirac_torsion_symbol_from_parts, trace_pairings, Beta2, PointData, TracePairings,
};
pub use endomorphism::{Complex, SpinorEndomorphism};

use crate::error::{Error, Result};
use crate::multilinear::{KForm, Vector};

/// Which concrete matrices realize the generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepresentationKind {
    /// Chiral (Weyl) basis: γ₅ = diag(1, 1, −1, −1).
    Standard,
    /// The chiral basis conjugated by a fixed non-monomial unitary.
    Alternative,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliffordRep {
    kind: RepresentationKind,
    /// e_I for every subset I ⊆ {1..4}, indexed by bitmask, increasing order
    products: Vec<SpinorEndomorphism>,
}

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

fn chiral_generators() -> [SpinorEndomorphism; 4] {
    let o = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    let pauli = [
        [[o, one], [one, o]],
        [[o, -i], [i, o]],
        [[one, o], [o, -one]],
    ];
    let mut out: Vec<SpinorEndomorphism> = Vec::with_capacity(4);
    // hermitian Γ_k = [[0, −iσ_k], [iσ_k, 0]], Γ_4 = [[0, 1], [1, 0]]; e_a = iΓ_a
    for s in &pauli {
        let mut m = SpinorEndomorphism::zero();
        for r in 0..2 {
            for col in 0..2 {
                m[(r, col + 2)] = i * (-i * s[r][col]);
                m[(r + 2, col)] = i * (i * s[r][col]);
            }
        }
        out.push(m);
    }
    let mut g4 = SpinorEndomorphism::zero();
    for r in 0..2 {
        g4[(r, r + 2)] = i;
        g4[(r + 2, r)] = i;
    }
    out.push(g4);
    out.try_into().expect("four generators")
}

fn conjugating_unitary() -> SpinorEndomorphism {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut u = SpinorEndomorphism::zero();
    for r in 0..2 {
        u[(r, r)] = c(h, 0.0);
        u[(r, r + 2)] = c(h, 0.0);
        u[(r + 2, r)] = c(-h, 0.0);
        u[(r + 2, r + 2)] = c(h, 0.0);
    }
    // an extra relative phase keeps the result away from any real form
    let mut phase = SpinorEndomorphism::identity();
    phase[(1, 1)] = c(0.0, 1.0);
    phase[(3, 3)] = c(0.0, -1.0);
    &u * &phase
}

impl CliffordRep {
    pub fn new(kind: RepresentationKind) -> Self {
        let mut gens = chiral_generators();
        if kind == RepresentationKind::Alternative {
            let u = conjugating_unitary();
            let ud = u.adjoint();
            for g in gens.iter_mut() {
                *g = &(&u * g) * &ud;
            }
        }
        let mut products = Vec::with_capacity(16);
        for mask in 0u16..16 {
            let mut m = SpinorEndomorphism::identity();
            for (a, g) in gens.iter().enumerate() {
                if mask & (1 << a) != 0 {
                    m = &m * g;
                }
            }
            products.push(m);
        }
        Self { kind, products }
    }

    pub fn standard() -> Self {
        Self::new(RepresentationKind::Standard)
    }

    pub fn alternative() -> Self {
        Self::new(RepresentationKind::Alternative)
    }

    pub fn kind(&self) -> RepresentationKind {
        self.kind
    }

    /// e_a (0-based).
    pub fn generator(&self, a: usize) -> &SpinorEndomorphism {
        &self.products[1 << a]
    }

    /// γ₅ = e₁·e₂·e₃·e₄.
    pub fn chirality(&self) -> &SpinorEndomorphism {
        &self.products[15]
    }

    /// P_L = ½(id − γ₅).
    pub fn left_projector(&self) -> SpinorEndomorphism {
        (&SpinorEndomorphism::identity() - self.chirality()).scale(0.5)
    }

    /// max_{a,b} |γ_aγ_b + γ_bγ_a + 2δ_ab|.
    pub fn relation_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                let ga = self.generator(a);
                let gb = self.generator(b);
                let mut anti = &(ga * gb) + &(gb * ga);
                if a == b {
                    anti = &anti + &SpinorEndomorphism::identity().scale(2.0);
                }
                worst = worst.max(anti.max_abs());
            }
        }
        worst
    }

    /// Clifford action of a form; linear in the form.
    pub fn rep_form(&self, form: &KForm) -> Result<SpinorEndomorphism> {
        if form.n() != 4 {
            return Err(Error::RequiresFourDimensions(form.n()));
        }
        let mut out = SpinorEndomorphism::zero();
        for (&mask, &coeff) in form.masks().iter().zip(form.coeffs()) {
            if coeff != 0.0 {
                out.add_scaled(&self.products[mask as usize], coeff);
            }
        }
        Ok(out)
    }

    /// Clifford multiplication by a vector, V· = Σ V_a e_a.
    pub fn rep_vector(&self, v: &Vector) -> Result<SpinorEndomorphism> {
        self.rep_form(&v.flat())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_hold_in_both_reps() {
        for rep in [CliffordRep::standard(), CliffordRep::alternative()] {
            assert!(rep.relation_defect() < 1e-14);
            for a in 0..4 {
                let g = rep.generator(a);
                assert!(
                    (&g.adjoint() + g).max_abs() < 1e-14,
                    "generator {a} not skew"
                );
            }
            let g5 = rep.chirality();
            assert!((&(g5 * g5) - &SpinorEndomorphism::identity()).max_abs() < 1e-14);
            assert!(g5.trace().norm() < 1e-14);
            assert!((rep.left_projector().trace() - c(2.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn standard_is_chiral_and_differs_from_alternative() {
        let s = CliffordRep::standard();
        let a = CliffordRep::alternative();
        let diag: Vec<f64> = (0..4).map(|i| s.chirality()[(i, i)].re).collect();
        assert_eq!(diag, vec![1.0, 1.0, -1.0, -1.0]);
        assert!((s.generator(0) - a.generator(0)).max_abs() > 0.1);
        for entry in s.generator(1).entries() {
            let allowed = [
                c(0.0, 0.0),
                c(1.0, 0.0),
                c(-1.0, 0.0),
                c(0.0, 1.0),
                c(0.0, -1.0),
            ];
            assert!(allowed.iter().any(|v| (entry - v).norm() < 1e-15));
        }
    }

    #[test]
    fn rep_form_examples() {
        let rep = CliffordRep::standard();
        let t1 = KForm::monomial(4, &[0]).unwrap();
        assert_eq!(rep.rep_form(&t1).unwrap(), *rep.generator(0));
        let dvol = KForm::volume(4).unwrap();
        assert_eq!(rep.rep_form(&dvol).unwrap(), *rep.chirality());
        let t123 = rep
            .rep_form(&KForm::monomial(4, &[0, 1, 2]).unwrap())
            .unwrap();
        assert!((&(&t123 * &t123) - &SpinorEndomorphism::identity()).max_abs() < 1e-15);
        assert!(rep.rep_form(&KForm::monomial(3, &[0]).unwrap()).is_err());
    }

    #[test]
    fn adjointness_by_degree() {
        let rep = CliffordRep::alternative();
        let three = KForm::from_coeffs(4, 3, vec![0.2, -1.3, 0.7, 2.1]).unwrap();
        let m = rep.rep_form(&three).unwrap();
        assert!((&m.adjoint() - &m).max_abs() < 1e-14);
        let v = rep
            .rep_vector(&Vector::new(vec![0.5, -0.1, 1.2, 0.3]))
            .unwrap();
        assert!((&v.adjoint() + &v).max_abs() < 1e-14);
    }
}
