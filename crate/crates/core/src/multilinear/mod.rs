//! Exact pointwise multilinear algebra on an oriented Euclidean ℝⁿ:
//! forms and Hodge duality, torsion tensors in Λ¹⊗Λ², their irreducible
//! decomposition, and the pointwise identities of moving-frame calculus.

mod decompose;
mod form;
mod identities;
mod torsion;

use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use decompose::{
    cartan_defect, decompose_torsion, recompose_torsion, split_cartan_selfdual, star_last_pair,
    ComponentsJson, TorsionComponents,
};
pub(crate) use decompose::{three_form_from_map, three_form_to_map};
pub use form::{binomial, KForm};
pub use identities::{
    holst_density, holst_term_pointwise, scalar_curvature, skew_vector_pairing, theta_squared,
    theta_squared_closed_form, torsion_two_forms, translational_chern_simons, HolstTerms,
    PointGeometry,
};
pub use torsion::{TorsionJson, TorsionTensor};

pub(crate) const MAX_DIM: usize = 8;

/// Number of spatial dimensions of the model space, 3 ≤ n ≤ 8.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dimension(usize);

impl Dimension {
    pub fn new(n: usize) -> Result<Self> {
        if (3..=MAX_DIM).contains(&n) {
            Ok(Self(n))
        } else {
            Err(Error::Dimension(n))
        }
    }

    pub fn get(self) -> usize {
        self.0
    }

    pub fn require_four(self) -> Result<()> {
        if self.0 == 4 {
            Ok(())
        } else {
            Err(Error::RequiresFourDimensions(self.0))
        }
    }
}

pub(crate) fn require_four(n: usize) -> Result<()> {
    if n == 4 {
        Ok(())
    } else {
        Err(Error::RequiresFourDimensions(n))
    }
}

/// A tangent vector in orthonormal-frame components V_a = g(V, e_a).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(components: Vec<f64>) -> Self {
        Self(components)
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    pub fn unit(n: usize, a: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[a] = 1.0;
        v
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[f64] {
        &self.0
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn scale(&self, s: f64) -> Vector {
        Vector(self.0.iter().map(|x| x * s).collect())
    }

    /// Applies the orthogonal matrix `q` (row-major n×n).
    pub fn rotated(&self, q: &[f64]) -> Vector {
        let n = self.n();
        Vector(
            (0..n)
                .map(|i| (0..n).map(|a| q[i * n + a] * self.0[a]).sum())
                .collect(),
        )
    }

    pub fn max_abs_diff(&self, other: &Vector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

impl Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}
