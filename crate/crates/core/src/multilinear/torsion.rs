use serde::{Deserialize, Serialize};

use super::{Dimension, KForm, Vector};
use crate::error::{Error, Result};

/// A ∈ Λ¹⊗Λ² at a point: A_{xyz} = g(A(e_x, e_y), e_z), antisymmetric in the
/// last two slots. Stored densely, row-major over (x, y, z).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TorsionJson", into = "TorsionJson")]
pub struct TorsionTensor {
    n: usize,
    data: Vec<f64>,
}

/// Wire form `{"n": int, "A": row-major n³ array}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TorsionJson {
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<f64>,
}

impl TryFrom<TorsionJson> for TorsionTensor {
    type Error = Error;
    fn try_from(raw: TorsionJson) -> Result<Self> {
        TorsionTensor::new(raw.n, raw.a)
    }
}

impl From<TorsionTensor> for TorsionJson {
    fn from(t: TorsionTensor) -> Self {
        TorsionJson { n: t.n, a: t.data }
    }
}

impl TorsionTensor {
    /// Validates A_{xyz} = −A_{xzy} exactly.
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        Dimension::new(n)?;
        if data.len() != n * n * n {
            return Err(Error::invalid(format!(
                "torsion tensor on R^{n} needs {} entries, got {}",
                n * n * n,
                data.len()
            )));
        }
        let t = Self { n, data };
        let mut bad = Vec::new();
        let mut defect: f64 = 0.0;
        for x in 0..n {
            for y in 0..n {
                for z in y..n {
                    let d = t.get(x, y, z) + t.get(x, z, y);
                    if d != 0.0 || !t.get(x, y, z).is_finite() {
                        bad.push([x, y, z]);
                        defect = defect.max(d.abs());
                    }
                }
            }
        }
        if bad.is_empty() {
            Ok(t)
        } else {
            Err(Error::Invariant {
                what: "antisymmetry A_xyz = -A_xzy",
                indices: bad,
                defect,
            })
        }
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(n, vec![0.0; n * n * n])
    }

    /// Antisymmetrizes an arbitrary n³ array in the last two slots:
    /// A_{xyz} = ½(raw_{xyz} − raw_{xzy}).
    pub fn antisymmetrize(n: usize, raw: &[f64]) -> Result<Self> {
        Dimension::new(n)?;
        assert_eq!(raw.len(), n * n * n);
        let mut data = vec![0.0; n * n * n];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let v = 0.5 * (raw[(x * n + y) * n + z] - raw[(x * n + z) * n + y]);
                    data[(x * n + y) * n + z] = v;
                }
            }
        }
        Self::new(n, data)
    }

    /// Builds from a closure over (x, y, z) for y < z; the other half is
    /// filled by antisymmetry.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize, usize) -> f64) -> Result<Self> {
        Dimension::new(n)?;
        let mut data = vec![0.0; n * n * n];
        for x in 0..n {
            for y in 0..n {
                for z in (y + 1)..n {
                    let v = f(x, y, z);
                    data[(x * n + y) * n + z] = v;
                    data[(x * n + z) * n + y] = -v;
                }
            }
        }
        Self::new(n, data)
    }

    /// Vectorial torsion A_{xyz} = δ_{xy} V_z − δ_{xz} V_y.
    pub fn vectorial(v: &Vector) -> Result<Self> {
        let n = v.n();
        Self::from_upper(n, |x, y, z| {
            let mut a = 0.0;
            if x == y {
                a += v[z];
            }
            if x == z {
                a -= v[y];
            }
            a
        })
    }

    /// Totally antisymmetric torsion A_{xyz} = T(e_x, e_y, e_z).
    pub fn from_three_form(t: &KForm) -> Result<Self> {
        if t.degree() != 3 {
            return Err(Error::DegreeMismatch {
                expected: 3,
                found: t.degree(),
            });
        }
        Self::from_upper(t.n(), |x, y, z| {
            t.eval(&[x, y, z]).expect("indices in range")
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, z: usize) -> f64 {
        self.data[(x * self.n + y) * self.n + z]
    }

    /// ⟨A, B⟩ = Σ A_{ijk} B_{ijk}.
    pub fn inner(&self, other: &TorsionTensor) -> Result<f64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum())
    }

    pub fn norm_sq(&self) -> f64 {
        self.data.iter().map(|a| a * a).sum()
    }

    pub fn scale(&self, s: f64) -> TorsionTensor {
        Self {
            n: self.n,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn add(&self, other: &TorsionTensor) -> TorsionTensor {
        assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &TorsionTensor) -> TorsionTensor {
        assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, a| m.max(a.abs()))
    }

    pub fn max_abs_diff(&self, other: &TorsionTensor) -> f64 {
        self.sub(other).max_abs()
    }

    /// The O(n) action (αA)_{XYZ} = A_{α⁻¹X, α⁻¹Y, α⁻¹Z} for the orthogonal
    /// matrix `q` (row-major), i.e. (qA)_{ijk} = Σ q_{ia} q_{jb} q_{kc} A_{abc}.
    pub fn rotated(&self, q: &[f64]) -> TorsionTensor {
        let n = self.n;
        assert_eq!(q.len(), n * n);
        let mut data = vec![0.0; n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut acc = 0.0;
                    for a in 0..n {
                        for b in 0..n {
                            let qab = q[i * n + a] * q[j * n + b];
                            for c in 0..n {
                                acc += qab * q[k * n + c] * self.get(a, b, c);
                            }
                        }
                    }
                    data[(i * n + j) * n + k] = acc;
                }
            }
        }
        // restore exact antisymmetry lost to rounding
        for x in 0..n {
            for y in 0..n {
                for z in (y + 1)..n {
                    let v = 0.5 * (data[(x * n + y) * n + z] - data[(x * n + z) * n + y]);
                    data[(x * n + y) * n + z] = v;
                    data[(x * n + z) * n + y] = -v;
                }
                data[(x * n + y) * n + y] = 0.0;
            }
        }
        Self { n, data }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_123() -> TorsionTensor {
        TorsionTensor::from_upper(4, |x, y, z| if (x, y, z) == (0, 1, 2) { 1.0 } else { 0.0 })
            .unwrap()
    }

    #[test]
    fn rejects_non_antisymmetric() {
        let mut data = vec![0.0; 27];
        data[1] = 1.0; // A_{0,0,1} without its partner
        let err = TorsionTensor::new(3, data).unwrap_err();
        match err {
            Error::Invariant { indices, .. } => assert_eq!(indices, vec![[0, 0, 1]]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_dimension() {
        assert!(matches!(TorsionTensor::zero(2), Err(Error::Dimension(2))));
        assert!(matches!(TorsionTensor::zero(9), Err(Error::Dimension(9))));
    }

    #[test]
    fn inner_examples() {
        let z = TorsionTensor::zero(4).unwrap();
        assert_eq!(z.norm_sq(), 0.0);
        assert_eq!(example_123().norm_sq(), 2.0);
    }

    #[test]
    fn three_form_norm_counts_orderings() {
        let t = KForm::from_coeffs(4, 3, vec![0.5, -1.0, 2.0, 0.25]).unwrap();
        let a = TorsionTensor::from_three_form(&t).unwrap();
        assert!((a.norm_sq() - 6.0 * t.norm_sq()).abs() < 1e-14);
    }

    #[test]
    fn vectorial_embedding_entries() {
        let a = TorsionTensor::vectorial(&Vector::unit(4, 0)).unwrap();
        for k in 1..4 {
            assert_eq!(a.get(k, k, 0), 1.0);
            assert_eq!(a.get(k, 0, k), -1.0);
        }
        assert_eq!(a.data().iter().filter(|v| **v != 0.0).count(), 6);
    }

    #[test]
    fn json_shape() {
        let a = example_123();
        let s = serde_json::to_string(&a).unwrap();
        assert!(s.starts_with("{\"n\":4,\"A\":["));
        let back: TorsionTensor = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
    }
}
