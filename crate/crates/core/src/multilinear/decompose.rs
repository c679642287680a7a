//! The irreducible splitting Λ¹⊗Λ² = 𝒱 ⊕ 𝒯 ⊕ 𝒮 (and 𝒮 = 𝒮⁺ ⊕ 𝒮⁻ for n = 4).
//!
//! Projectors:
//! - vectorial: V_z = (1/(n−1)) Σ_a A_{aaz} (𝒯 and 𝒮 are trace-free)
//! - totally skew: T_{xyz} = (1/6)·Alt(A)_{xyz} = (A_{xyz} + A_{yzx} + A_{zxy})/3
//! - Cartan type: the remainder

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{require_four, KForm, TorsionTensor, Vector};
use crate::error::{Error, Result};

/// The unique (V, T, S) of A(X,Y) = g(X,Y)V − g(V,Y)X + T(X,Y,·)♯ + S(X,Y,·)♯.
#[derive(Debug, Clone, PartialEq)]
pub struct TorsionComponents {
    pub vector: Vector,
    pub three_form: KForm,
    pub cartan: TorsionTensor,
    /// (S⁺, S⁻), present for n = 4.
    pub chiral: Option<(TorsionTensor, TorsionTensor)>,
}

impl TorsionComponents {
    pub fn n(&self) -> usize {
        self.vector.n()
    }

    /// V-part embedded back into Λ¹⊗Λ².
    pub fn vector_part(&self) -> TorsionTensor {
        TorsionTensor::vectorial(&self.vector).expect("dimension validated")
    }

    /// T-part embedded back into Λ¹⊗Λ².
    pub fn three_form_part(&self) -> TorsionTensor {
        TorsionTensor::from_three_form(&self.three_form).expect("degree validated")
    }

    pub fn self_dual(&self) -> Option<&TorsionTensor> {
        self.chiral.as_ref().map(|(p, _)| p)
    }

    pub fn anti_self_dual(&self) -> Option<&TorsionTensor> {
        self.chiral.as_ref().map(|(_, m)| m)
    }

    /// Builds components from (V, T, S), validating S ∈ 𝒮 and computing the
    /// chiral split when n = 4.
    pub fn from_parts(vector: Vector, three_form: KForm, cartan: TorsionTensor) -> Result<Self> {
        let n = vector.n();
        if three_form.n() != n || three_form.degree() != 3 {
            return Err(Error::invalid(
                "T must be a 3-form of the same dimension as V",
            ));
        }
        if cartan.n() != n {
            return Err(Error::DimensionMismatch(cartan.n(), n));
        }
        check_cartan(&cartan)?;
        let chiral = if n == 4 {
            Some(split_cartan_selfdual(&cartan)?)
        } else {
            None
        };
        Ok(Self {
            vector,
            three_form,
            cartan,
            chiral,
        })
    }
}

pub fn decompose_torsion(a: &TorsionTensor) -> TorsionComponents {
    let n = a.n();
    let vector = Vector::new(
        (0..n)
            .map(|z| (0..n).map(|s| a.get(s, s, z)).sum::<f64>() / (n as f64 - 1.0))
            .collect(),
    );
    let coeffs: Vec<f64> = KForm::basis_indices(n, 3)
        .iter()
        .map(|ix| {
            let (x, y, z) = (ix[0], ix[1], ix[2]);
            (a.get(x, y, z) + a.get(y, z, x) + a.get(z, x, y)) / 3.0
        })
        .collect();
    let three_form = KForm::from_coeffs(n, 3, coeffs).expect("n >= 3");

    let v_part = TorsionTensor::vectorial(&vector).expect("dimension validated");
    let t_part = TorsionTensor::from_three_form(&three_form).expect("degree 3");
    let cartan = a.sub(&v_part).sub(&t_part);
    let chiral = (n == 4).then(|| chiral_parts(&cartan));
    TorsionComponents {
        vector,
        three_form,
        cartan,
        chiral,
    }
}

/// Exact right inverse of [`decompose_torsion`]; rejects an S outside 𝒮.
pub fn recompose_torsion(c: &TorsionComponents) -> Result<TorsionTensor> {
    check_cartan(&c.cartan)?;
    Ok(c.vector_part().add(&c.three_form_part()).add(&c.cartan))
}

/// Applies the Hodge star to the 2-form in the last two slots of S.
pub fn star_last_pair(s: &TorsionTensor) -> Result<TorsionTensor> {
    let n = s.n();
    let mut data = vec![0.0; n * n * n];
    for x in 0..n {
        let coeffs = KForm::basis_indices(n, 2)
            .iter()
            .map(|ix| s.get(x, ix[0], ix[1]))
            .collect();
        let starred = KForm::from_coeffs(n, 2, coeffs)?.hodge();
        if starred.degree() != 2 {
            return Err(Error::RequiresFourDimensions(n));
        }
        for (ix, c) in starred.iter() {
            data[(x * n + ix[0]) * n + ix[1]] = c;
            data[(x * n + ix[1]) * n + ix[0]] = -c;
        }
    }
    TorsionTensor::new(n, data)
}

fn chiral_parts(s: &TorsionTensor) -> (TorsionTensor, TorsionTensor) {
    let star = star_last_pair(s).expect("n = 4");
    (s.add(&star).scale(0.5), s.sub(&star).scale(0.5))
}

/// S = S⁺ + S⁻ with S^± = ½(S ± ⋆S), ⋆ acting on the last two slots.
pub fn split_cartan_selfdual(s: &TorsionTensor) -> Result<(TorsionTensor, TorsionTensor)> {
    require_four(s.n())?;
    check_cartan(s)?;
    Ok(chiral_parts(s))
}

/// Largest violation of the 𝒮 conditions (cyclic sum and first-pair trace)
/// together with the offending index triples.
pub fn cartan_defect(s: &TorsionTensor) -> (f64, Vec<[usize; 3]>) {
    let n = s.n();
    let scale = s.max_abs().max(1.0);
    let tol = 1e-10 * scale;
    let mut worst: f64 = 0.0;
    let mut bad = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let cyc = s.get(x, y, z) + s.get(y, z, x) + s.get(z, x, y);
                worst = worst.max(cyc.abs());
                if cyc.abs() > tol {
                    bad.insert([x, y, z], ());
                }
            }
        }
    }
    for z in 0..n {
        let tr: f64 = (0..n).map(|a| s.get(a, a, z)).sum();
        worst = worst.max(tr.abs());
        if tr.abs() > tol {
            bad.insert([n, n, z], ());
        }
    }
    (worst, bad.into_keys().collect())
}

fn check_cartan(s: &TorsionTensor) -> Result<()> {
    let (defect, indices) = cartan_defect(s);
    if indices.is_empty() {
        Ok(())
    } else {
        Err(Error::Invariant {
            what: "Cartan-type (cyclic sum and trace vanish)",
            indices,
            defect,
        })
    }
}

/// Wire form of [`TorsionComponents`]: `{"V": [...], "T": {"a,b,c": value},
/// "S": n³ array}`, 1-based triple keys, plus `S_plus`/`S_minus` for n = 4.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComponentsJson {
    #[serde(rename = "V")]
    pub v: Vec<f64>,
    #[serde(rename = "T")]
    pub t: BTreeMap<String, f64>,
    #[serde(rename = "S")]
    pub s: Vec<f64>,
    #[serde(rename = "S_plus", skip_serializing_if = "Option::is_none", default)]
    pub s_plus: Option<Vec<f64>>,
    #[serde(rename = "S_minus", skip_serializing_if = "Option::is_none", default)]
    pub s_minus: Option<Vec<f64>>,
}

pub(crate) fn triple_key(ix: &[usize]) -> String {
    ix.iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub(crate) fn parse_triple_key(key: &str, n: usize) -> Result<Vec<usize>> {
    let ix: Vec<usize> = key
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::invalid(format!("bad form index key {key:?}")))?;
    if ix.iter().any(|&i| i == 0 || i > n) {
        return Err(Error::invalid(format!(
            "form index key {key:?} out of range 1..={n}"
        )));
    }
    Ok(ix.into_iter().map(|i| i - 1).collect())
}

/// A 3-form as a map from 1-based increasing index triples to coefficients.
pub(crate) fn three_form_to_map(t: &KForm) -> BTreeMap<String, f64> {
    t.iter().map(|(ix, v)| (triple_key(&ix), v)).collect()
}

pub(crate) fn three_form_from_map(n: usize, map: &BTreeMap<String, f64>) -> Result<KForm> {
    let mut t = KForm::zero(n, 3)?;
    for (key, value) in map {
        let ix = parse_triple_key(key, n)?;
        if ix.len() != 3 {
            return Err(Error::invalid(format!("T key {key:?} is not a triple")));
        }
        t.set(&ix, *value)?;
    }
    Ok(t)
}

impl From<&TorsionComponents> for ComponentsJson {
    fn from(c: &TorsionComponents) -> Self {
        ComponentsJson {
            v: c.vector.components().to_vec(),
            t: three_form_to_map(&c.three_form),
            s: c.cartan.data().to_vec(),
            s_plus: c.self_dual().map(|p| p.data().to_vec()),
            s_minus: c.anti_self_dual().map(|m| m.data().to_vec()),
        }
    }
}

impl TryFrom<ComponentsJson> for TorsionComponents {
    type Error = Error;
    fn try_from(raw: ComponentsJson) -> Result<Self> {
        let n = raw.v.len();
        let t = three_form_from_map(n, &raw.t)?;
        let s = TorsionTensor::new(n, raw.s)?;
        TorsionComponents::from_parts(Vector::new(raw.v), t, s)
    }
}

impl Serialize for TorsionComponents {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        ComponentsJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TorsionComponents {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let raw = ComponentsJson::deserialize(deserializer)?;
        TorsionComponents::try_from(raw).map_err(serde::de::Error::custom)
    }
}
