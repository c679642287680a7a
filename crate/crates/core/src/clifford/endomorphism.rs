use std::ops::{Add, Index, IndexMut, Mul, Sub};

use nalgebra::Matrix4;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Complex = num_complex::Complex64;

/// A complex-linear map of the spinor space Σ₄ ≅ ℂ⁴.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorEndomorphism(pub Matrix4<Complex>);

impl SpinorEndomorphism {
    pub fn zero() -> Self {
        Self(Matrix4::zeros())
    }

    pub fn identity() -> Self {
        Self(Matrix4::identity())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.map(|z| z * s))
    }

    pub fn scale_complex(&self, s: Complex) -> Self {
        Self(self.0.map(|z| z * s))
    }

    pub fn add_scaled(&mut self, other: &SpinorEndomorphism, s: f64) {
        self.0 += other.0.map(|z| z * s);
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn trace(&self) -> Complex {
        self.0.trace()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn entries(&self) -> impl Iterator<Item = &Complex> {
        self.0.iter()
    }

    pub fn apply(&self, spinor: &[Complex; 4]) -> [Complex; 4] {
        let mut out = [Complex::new(0.0, 0.0); 4];
        for (r, o) in out.iter_mut().enumerate() {
            for (col, s) in spinor.iter().enumerate() {
                *o += self.0[(r, col)] * s;
            }
        }
        out
    }
}

impl Index<(usize, usize)> for SpinorEndomorphism {
    type Output = Complex;
    fn index(&self, ix: (usize, usize)) -> &Complex {
        &self.0[ix]
    }
}

impl IndexMut<(usize, usize)> for SpinorEndomorphism {
    fn index_mut(&mut self, ix: (usize, usize)) -> &mut Complex {
        &mut self.0[ix]
    }
}

impl Mul for &SpinorEndomorphism {
    type Output = SpinorEndomorphism;
    fn mul(self, rhs: &SpinorEndomorphism) -> SpinorEndomorphism {
        SpinorEndomorphism(self.0 * rhs.0)
    }
}

impl Add for &SpinorEndomorphism {
    type Output = SpinorEndomorphism;
    fn add(self, rhs: &SpinorEndomorphism) -> SpinorEndomorphism {
        SpinorEndomorphism(self.0 + rhs.0)
    }
}

impl Sub for &SpinorEndomorphism {
    type Output = SpinorEndomorphism;
    fn sub(self, rhs: &SpinorEndomorphism) -> SpinorEndomorphism {
        SpinorEndomorphism(self.0 - rhs.0)
    }
}

/// Serialized as a 4×4 nested array of `[re, im]` pairs, row-major.
impl Serialize for SpinorEndomorphism {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = (0..4)
            .map(|r| {
                (0..4)
                    .map(|col| [self.0[(r, col)].re, self.0[(r, col)].im])
                    .collect()
            })
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SpinorEndomorphism {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows: [[[f64; 2]; 4]; 4] = Deserialize::deserialize(deserializer)?;
        let mut m = Self::zero();
        for (r, row) in rows.iter().enumerate() {
            for (col, [re, im]) in row.iter().enumerate() {
                m.0[(r, col)] = Complex::new(*re, *im);
            }
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_layout() {
        let mut m = SpinorEndomorphism::identity();
        m[(0, 1)] = Complex::new(0.0, -1.0);
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.starts_with("[[[1.0,0.0],[0.0,-1.0],[0.0,0.0],[0.0,0.0]],"));
        let back: SpinorEndomorphism = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
