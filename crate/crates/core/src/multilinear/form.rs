//! Alternating k-forms on ℝⁿ stored over strictly increasing multi-indices.
//!
//! Basis monomials θ^{i₁}∧…∧θ^{i_k} (i₁ < … < i_k) are addressed internally
//! by bitmask; the coefficient stored for a monomial is the value of the form
//! on the corresponding ordered frame vectors (e_{i₁}, …, e_{i_k}). With this
//! normalization the monomials are orthonormal for `inner` and the wedge of
//! basis monomials carries only a permutation sign.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::OnceLock;

use super::{Vector, MAX_DIM};
use crate::error::{Error, Result};

struct Basis {
    /// masks of each degree, in lexicographic order of their index tuples
    by_degree: Vec<Vec<u16>>,
    /// position of a mask within its degree
    rank: Vec<usize>,
}

fn basis(n: usize) -> &'static Basis {
    static TABLES: OnceLock<Vec<Basis>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| (0..=MAX_DIM).map(build_basis).collect());
    &tables[n]
}

fn build_basis(n: usize) -> Basis {
    let mut by_degree: Vec<Vec<u16>> = vec![Vec::new(); n + 1];
    for mask in 0u16..(1 << n) {
        by_degree[mask.count_ones() as usize].push(mask);
    }
    for masks in &mut by_degree {
        masks.sort_by_key(|&m| indices_of(m));
    }
    let mut rank = vec![0; 1 << n];
    for masks in &by_degree {
        for (pos, &m) in masks.iter().enumerate() {
            rank[m as usize] = pos;
        }
    }
    Basis { by_degree, rank }
}

pub(crate) fn indices_of(mask: u16) -> Vec<usize> {
    (0..16).filter(|&i| mask & (1 << i) != 0).collect()
}

/// Sign of θ^I ∧ θ^J relative to θ^{I∪J} for disjoint I, J.
pub(crate) fn merge_sign(left: u16, right: u16) -> f64 {
    let mut inversions = 0u32;
    let mut rest = right;
    while rest != 0 {
        let j = rest.trailing_zeros();
        // elements of `left` larger than j must move past it
        inversions += (left >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    if inversions.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// An alternating k-form on ℝⁿ in the orthonormal coframe θ¹, …, θⁿ.
#[derive(Debug, Clone, PartialEq)]
pub struct KForm {
    n: usize,
    degree: usize,
    coeffs: Vec<f64>,
}

impl KForm {
    pub fn zero(n: usize, degree: usize) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::Dimension(n));
        }
        if degree > n {
            return Err(Error::DegreeOverflow {
                left: degree,
                right: 0,
                n,
            });
        }
        Ok(Self {
            n,
            degree,
            coeffs: vec![0.0; binomial(n, degree)],
        })
    }

    /// The 0-form with value `value`.
    pub fn scalar(n: usize, value: f64) -> Result<Self> {
        let mut f = Self::zero(n, 0)?;
        f.coeffs[0] = value;
        Ok(f)
    }

    /// The volume form θ¹∧…∧θⁿ.
    pub fn volume(n: usize) -> Result<Self> {
        let mut f = Self::zero(n, n)?;
        f.coeffs[0] = 1.0;
        Ok(f)
    }

    /// `f · dvol`.
    pub fn top(n: usize, value: f64) -> Result<Self> {
        let mut f = Self::volume(n)?;
        f.coeffs[0] = value;
        Ok(f)
    }

    /// Basis monomial θ^{i₁}∧…∧θ^{i_k} for 0-based indices (any order; the
    /// sign of the sorting permutation is applied).
    pub fn monomial(n: usize, indices: &[usize]) -> Result<Self> {
        let mut f = Self::zero(n, indices.len())?;
        f.set(indices, 1.0)?;
        Ok(f)
    }

    /// Builds a form from its coefficients in the canonical increasing basis.
    pub fn from_coeffs(n: usize, degree: usize, coeffs: Vec<f64>) -> Result<Self> {
        let f = Self::zero(n, degree)?;
        if coeffs.len() != f.coeffs.len() {
            return Err(Error::invalid(format!(
                "a {degree}-form on R^{n} has {} coefficients, got {}",
                f.coeffs.len(),
                coeffs.len()
            )));
        }
        Ok(Self { coeffs, ..f })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Canonical basis masks for this degree, aligned with `coeffs`.
    pub(crate) fn masks(&self) -> &'static [u16] {
        &basis(self.n).by_degree[self.degree]
    }

    /// Increasing index tuples aligned with `coeffs()`.
    pub fn basis_indices(n: usize, degree: usize) -> Vec<Vec<usize>> {
        basis(n).by_degree[degree]
            .iter()
            .map(|&m| indices_of(m))
            .collect()
    }

    pub(crate) fn coeff_by_mask(&self, mask: u16) -> f64 {
        self.coeffs[basis(self.n).rank[mask as usize]]
    }

    pub(crate) fn add_by_mask(&mut self, mask: u16, value: f64) {
        let r = basis(self.n).rank[mask as usize];
        self.coeffs[r] += value;
    }

    /// (increasing indices, coefficient) pairs.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, f64)> + '_ {
        self.masks()
            .iter()
            .zip(&self.coeffs)
            .map(|(&m, &c)| (indices_of(m), c))
    }

    /// Sorts `indices`, returning the mask and permutation sign, or `None`
    /// when an index repeats.
    fn canonical(&self, indices: &[usize]) -> Result<Option<(u16, f64)>> {
        if indices.len() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: indices.len(),
            });
        }
        let mut mask = 0u16;
        let mut sign = 1.0;
        for &i in indices {
            if i >= self.n {
                return Err(Error::invalid(format!(
                    "index {i} out of range for n = {}",
                    self.n
                )));
            }
            if mask & (1 << i) != 0 {
                return Ok(None);
            }
            // every already-placed larger index is an inversion
            if (mask >> (i + 1)).count_ones() % 2 == 1 {
                sign = -sign;
            }
            mask |= 1 << i;
        }
        Ok(Some((mask, sign)))
    }

    /// Evaluates the form on (e_{i₁}, …, e_{i_k}); alternating in the indices.
    pub fn eval(&self, indices: &[usize]) -> Result<f64> {
        Ok(match self.canonical(indices)? {
            Some((mask, sign)) => sign * self.coeff_by_mask(mask),
            None => 0.0,
        })
    }

    /// Sets the value on (e_{i₁}, …, e_{i_k}), consistently with alternation.
    pub fn set(&mut self, indices: &[usize], value: f64) -> Result<()> {
        match self.canonical(indices)? {
            Some((mask, sign)) => {
                let r = basis(self.n).rank[mask as usize];
                self.coeffs[r] = sign * value;
                Ok(())
            }
            None if value == 0.0 => Ok(()),
            None => Err(Error::invalid("repeated index in alternating form")),
        }
    }

    /// Coefficient of a 0-form or of dvol.
    pub fn top_value(&self) -> f64 {
        debug_assert!(self.degree == 0 || self.degree == self.n);
        self.coeffs[0]
    }

    pub fn wedge(&self, other: &KForm) -> Result<KForm> {
        self.same_dim(other)?;
        let degree = self.degree + other.degree;
        if degree > self.n {
            return Err(Error::DegreeOverflow {
                left: self.degree,
                right: other.degree,
                n: self.n,
            });
        }
        let mut out = KForm::zero(self.n, degree)?;
        for (&ma, &ca) in self.masks().iter().zip(&self.coeffs) {
            if ca == 0.0 {
                continue;
            }
            for (&mb, &cb) in other.masks().iter().zip(&other.coeffs) {
                if ma & mb != 0 || cb == 0.0 {
                    continue;
                }
                out.add_by_mask(ma | mb, merge_sign(ma, mb) * ca * cb);
            }
        }
        Ok(out)
    }

    /// Hodge star for the orientation dvol = θ¹∧…∧θⁿ, characterized by
    /// ω ∧ ∗η = ⟨ω, η⟩ dvol.
    pub fn hodge(&self) -> KForm {
        let full: u16 = ((1u32 << self.n) - 1) as u16;
        let mut out = KForm::zero(self.n, self.n - self.degree).expect("valid degree");
        for (&m, &c) in self.masks().iter().zip(&self.coeffs) {
            let comp = full & !m;
            out.add_by_mask(comp, merge_sign(m, comp) * c);
        }
        out
    }

    pub fn inner(&self, other: &KForm) -> Result<f64> {
        self.same_dim(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b)
            .sum())
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// Contraction v ⌟ ω in the first slot.
    pub fn interior(&self, v: &Vector) -> Result<KForm> {
        if v.n() != self.n {
            return Err(Error::DimensionMismatch(v.n(), self.n));
        }
        if self.degree == 0 {
            return Err(Error::InteriorOfScalar);
        }
        let mut out = KForm::zero(self.n, self.degree - 1)?;
        for (&m, &c) in self.masks().iter().zip(&self.coeffs) {
            if c == 0.0 {
                continue;
            }
            let mut rest = m;
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let below = (m & ((1u16 << j) - 1)).count_ones();
                let sign = if below.is_multiple_of(2) { 1.0 } else { -1.0 };
                out.add_by_mask(m & !(1 << j), sign * v[j] * c);
            }
        }
        Ok(out)
    }

    /// ♯: the vector metrically dual to a 1-form.
    pub fn sharp(&self) -> Result<Vector> {
        if self.degree != 1 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                found: self.degree,
            });
        }
        Ok(Vector::new(self.coeffs.clone()))
    }

    pub fn scale(&self, s: f64) -> KForm {
        KForm {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            ..self.clone()
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Largest coefficient difference; forms must have equal shape.
    pub fn max_abs_diff(&self, other: &KForm) -> f64 {
        assert_eq!((self.n, self.degree), (other.n, other.degree));
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    fn same_dim(&self, other: &KForm) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        Ok(())
    }

    fn assert_same_shape(&self, other: &KForm) {
        assert!(
            self.n == other.n && self.degree == other.degree,
            "adding a {}-form on R^{} to a {}-form on R^{}",
            other.degree,
            other.n,
            self.degree,
            self.n
        );
    }
}

impl Add for &KForm {
    type Output = KForm;
    fn add(self, rhs: &KForm) -> KForm {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &KForm {
    type Output = KForm;
    fn sub(self, rhs: &KForm) -> KForm {
        self.assert_same_shape(rhs);
        KForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
            ..self.clone()
        }
    }
}

impl AddAssign<&KForm> for KForm {
    fn add_assign(&mut self, rhs: &KForm) {
        self.assert_same_shape(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Mul<&KForm> for f64 {
    type Output = KForm;
    fn mul(self, rhs: &KForm) -> KForm {
        rhs.scale(self)
    }
}

impl Neg for &KForm {
    type Output = KForm;
    fn neg(self) -> KForm {
        self.scale(-1.0)
    }
}

impl Vector {
    /// ♭: the 1-form g(v, ·).
    pub fn flat(&self) -> KForm {
        KForm::from_coeffs(self.n(), 1, self.components().to_vec()).expect("dimension in range")
    }
}
