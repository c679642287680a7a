//! The torsion Dirac symbol and the second heat coefficient of D*D on
//! left-handed spinors.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{CliffordRep, SpinorEndomorphism};
use crate::error::{Error, Result};
use crate::multilinear::{
    decompose_torsion, holst_density, require_four, skew_vector_pairing, three_form_from_map,
    three_form_to_map, KForm, PointGeometry, TorsionComponents, TorsionTensor, Vector,
};

/// Zero-order part of the torsion Dirac operator, ¼ Σ_{abc} A_{abc} e_a·e_b·e_c,
/// summed directly over all index triples.
pub fn dirac_torsion_symbol(rep: &CliffordRep, a: &TorsionTensor) -> Result<SpinorEndomorphism> {
    require_four(a.n())?;
    let mut out = SpinorEndomorphism::zero();
    for x in 0..4 {
        for y in 0..4 {
            for z in 0..4 {
                let coeff = a.get(x, y, z);
                if coeff != 0.0 {
                    let m = &(rep.generator(x) * rep.generator(y)) * rep.generator(z);
                    out.add_scaled(&m, 0.25 * coeff);
                }
            }
        }
    }
    Ok(out)
}

/// (3/2)·T − (3/2)·V♭ as Clifford multiplication; the Cartan part drops out.
pub fn dirac_torsion_symbol_from_parts(
    rep: &CliffordRep,
    c: &TorsionComponents,
) -> Result<SpinorEndomorphism> {
    require_four(c.n())?;
    let t = rep.rep_form(&c.three_form)?;
    let v = rep.rep_vector(&c.vector)?;
    Ok((&t - &v).scale(1.5))
}

/// Pointwise input of α₂: R^g, div V, V, T and dT.
#[derive(Debug, Clone, PartialEq)]
pub struct PointData {
    pub rg: f64,
    pub div_v: f64,
    pub v: Vector,
    pub t: KForm,
    pub dt: KForm,
}

#[derive(Serialize, Deserialize)]
struct PointDataJson {
    #[serde(rename = "Rg")]
    rg: f64,
    #[serde(rename = "divV")]
    div_v: f64,
    #[serde(rename = "V")]
    v: Vec<f64>,
    #[serde(rename = "T")]
    t: BTreeMap<String, f64>,
    /// coefficient of dvol
    #[serde(rename = "dT")]
    dt: f64,
}

impl PointData {
    pub fn new(rg: f64, div_v: f64, v: Vector, t: KForm, dt: KForm) -> Result<Self> {
        require_four(v.n())?;
        require_four(t.n())?;
        if t.degree() != 3 || dt.degree() != 4 {
            return Err(Error::invalid("PointData needs a 3-form T and a 4-form dT"));
        }
        let finite = rg.is_finite()
            && div_v.is_finite()
            && v.components().iter().all(|x| x.is_finite())
            && t.coeffs().iter().all(|x| x.is_finite())
            && dt.top_value().is_finite();
        if !finite {
            return Err(Error::invalid("PointData entries must be finite"));
        }
        Ok(Self {
            rg,
            div_v,
            v,
            t,
            dt,
        })
    }

    pub fn zero() -> Self {
        Self {
            rg: 0.0,
            div_v: 0.0,
            v: Vector::zero(4),
            t: KForm::zero(4, 3).expect("n = 4"),
            dt: KForm::zero(4, 4).expect("n = 4"),
        }
    }
}

impl Serialize for PointData {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        PointDataJson {
            rg: self.rg,
            div_v: self.div_v,
            v: self.v.components().to_vec(),
            t: three_form_to_map(&self.t),
            dt: self.dt.top_value(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PointData {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PointDataJson::deserialize(deserializer)?;
        let n = raw.v.len();
        let t = three_form_from_map(n, &raw.t).map_err(D::Error::custom)?;
        let dt = KForm::top(n, raw.dt).map_err(D::Error::custom)?;
        PointData::new(raw.rg, raw.div_v, Vector::new(raw.v), t, dt).map_err(D::Error::custom)
    }
}

/// Trace identities used to reduce ½Tr((1−γ₅)α₂), each with its closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TracePairings {
    /// Tr(T·T′), closed form 4⟨T,T′⟩₃
    pub three_forms: (f64, f64),
    /// Tr(T·V·γ₅), closed form −4⟨T,∗V♭⟩₃
    pub mixed_chiral: (f64, f64),
    /// Tr(dT·γ₅), closed form 4·dT/dvol
    pub top_chiral: (f64, f64),
    /// Tr((V⌟T)·γ₅), closed form 0
    pub contraction_chiral: (f64, f64),
    /// Tr(dT), closed form 0
    pub top: (f64, f64),
    /// Tr(T·V), closed form 0
    pub mixed: (f64, f64),
    /// Tr(V⌟T), closed form 0
    pub contraction: (f64, f64),
    /// max |Vγ₅ + ∗V♭| entrywise
    pub vector_chirality_defect: f64,
    /// largest imaginary part among the traces above
    pub imaginary: f64,
}

impl TracePairings {
    pub fn max_residual(&self) -> f64 {
        [
            self.three_forms,
            self.mixed_chiral,
            self.top_chiral,
            self.contraction_chiral,
            self.top,
            self.mixed,
            self.contraction,
        ]
        .iter()
        .map(|(got, want)| (got - want).abs())
        .fold(self.vector_chirality_defect.max(self.imaginary), f64::max)
    }
}

pub fn trace_pairings(
    rep: &CliffordRep,
    t: &KForm,
    t2: &KForm,
    v: &Vector,
    dt: &KForm,
) -> Result<TracePairings> {
    let g5 = rep.chirality();
    let rt = rep.rep_form(t)?;
    let rt2 = rep.rep_form(t2)?;
    let rv = rep.rep_vector(v)?;
    let rdt = rep.rep_form(dt)?;
    let rvt = rep.rep_form(&t.interior(v)?)?;
    let tv = &rt * &rv;
    let star_v = rep.rep_form(&v.flat().hodge())?;
    let traces: Vec<_> = [&rt * &rt2, &tv * g5, &rdt * g5, &rvt * g5, rdt, tv, rvt]
        .iter()
        .map(|m| m.trace())
        .collect();
    let imaginary = traces.iter().fold(0.0_f64, |m, z| m.max(z.im.abs()));
    Ok(TracePairings {
        three_forms: (traces[0].re, 4.0 * t.inner(t2)?),
        mixed_chiral: (traces[1].re, -4.0 * skew_vector_pairing(t, v)?),
        top_chiral: (traces[2].re, 4.0 * dt.top_value()),
        contraction_chiral: (traces[3].re, 0.0),
        top: (traces[4].re, 0.0),
        mixed: (traces[5].re, 0.0),
        contraction: (traces[6].re, 0.0),
        vector_chirality_defect: (&(&rv * g5) + &star_v).max_abs(),
        imaginary,
    })
}

/// α₂ = (1/6 − 1/4)R^g − (3/2)dT + (3/4)‖T‖² − (3/2)div V + (9/2)|V|²
///      − 9(T·V + V⌟T),
/// scalars acting as multiples of the identity and forms by Clifford
/// multiplication; ‖T‖² = 6⟨T,T⟩₃.
pub fn alpha2(rep: &CliffordRep, p: &PointData) -> Result<SpinorEndomorphism> {
    let scalar = (1.0 / 6.0 - 0.25) * p.rg + 0.75 * 6.0 * p.t.norm_sq() - 1.5 * p.div_v
        + 4.5 * p.v.norm_sq();
    let mut out = SpinorEndomorphism::identity().scale(scalar);
    out.add_scaled(&rep.rep_form(&p.dt)?, -1.5);
    let tv = &rep.rep_form(&p.t)? * &rep.rep_vector(&p.v)?;
    out.add_scaled(&tv, -9.0);
    out.add_scaled(&rep.rep_form(&p.t.interior(&p.v)?)?, -9.0);
    Ok(out)
}

/// β₂ evaluated both through traces and through the closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Beta2 {
    pub via_traces: f64,
    pub closed_form: f64,
}

impl Beta2 {
    pub fn discrepancy(&self) -> f64 {
        (self.via_traces - self.closed_form).abs()
    }
}

/// β₂ = −(1/6)(R^g − 9‖T‖² + 18 div V − 54|V|² + 108⟨T,∗V♭⟩₃) + 3·dT/dvol.
pub fn beta2_closed_form(p: &PointData) -> Result<f64> {
    let t_norm = 6.0 * p.t.norm_sq();
    let bracket = p.rg - 9.0 * t_norm + 18.0 * p.div_v - 54.0 * p.v.norm_sq()
        + 108.0 * skew_vector_pairing(&p.t, &p.v)?;
    Ok(-bracket / 6.0 + 3.0 * p.dt.top_value())
}

/// β₂ = ½Tr((1−γ₅)α₂) alongside the closed form.
pub fn beta2_density(rep: &CliffordRep, p: &PointData) -> Result<Beta2> {
    let a2 = alpha2(rep, p)?;
    let left = &rep.left_projector() * &a2;
    Ok(Beta2 {
        via_traces: left.trace().re,
        closed_form: beta2_closed_form(p)?,
    })
}

/// |β₂ + ρ₁/6| where ρ₁ is the Holst density (γ = 1) of the connection
/// with torsion components (3V, 3T, S = 0), so that dT becomes 3dT.
pub fn beta2_holst_residual(rep: &CliffordRep, p: &PointData) -> Result<f64> {
    let beta = beta2_density(rep, p)?.via_traces;
    let scaled = TorsionTensor::from_three_form(&p.t.scale(3.0))?
        .add(&TorsionTensor::vectorial(&p.v.scale(3.0))?);
    let geometry = PointGeometry {
        rg: p.rg,
        div_v: 3.0 * p.div_v,
        components: decompose_torsion(&scaled),
        dt: p.dt.scale(3.0),
    };
    let rho = holst_density(1.0, &geometry)?.top_value();
    Ok((beta + rho / 6.0).abs())
}
