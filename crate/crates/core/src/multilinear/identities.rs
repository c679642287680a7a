//! Pointwise torsion identities: torsion 2-forms, the translational
//! Chern-Simons form, ΣΘ∧Θ, scalar curvature, the Holst term and the Holst
//! density. Tensor norms ‖·‖² are the full-index sums of [`TorsionTensor`],
//! so ‖T‖² = 6⟨T,T⟩₃ for a 3-form.

use serde::Serialize;

use super::{require_four, KForm, TorsionComponents, TorsionTensor, Vector};
use crate::error::{Error, Result};

/// Θ^a(e_b, e_c) = A_{bca} − A_{cba}, one 2-form per frame index a.
pub fn torsion_two_forms(a: &TorsionTensor) -> Vec<KForm> {
    let n = a.n();
    let pairs = KForm::basis_indices(n, 2);
    (0..n)
        .map(|k| {
            let coeffs = pairs
                .iter()
                .map(|ix| {
                    let (b, c) = (ix[0], ix[1]);
                    a.get(b, c, k) - a.get(c, b, k)
                })
                .collect();
            KForm::from_coeffs(n, 2, coeffs).expect("n in range")
        })
        .collect()
}

/// C_TT = Σ_a Θ^a ∧ θ^a.
pub fn translational_chern_simons(a: &TorsionTensor) -> Result<KForm> {
    require_four(a.n())?;
    let mut acc = KForm::zero(4, 3)?;
    for (k, theta) in torsion_two_forms(a).iter().enumerate() {
        acc += &theta.wedge(&KForm::monomial(4, &[k])?)?;
    }
    Ok(acc)
}

/// Σ_a Θ^a ∧ Θ^a computed directly from the torsion 2-forms.
pub fn theta_squared(a: &TorsionTensor) -> Result<KForm> {
    require_four(a.n())?;
    let mut acc = KForm::zero(4, 4)?;
    for theta in torsion_two_forms(a) {
        acc += &theta.wedge(&theta)?;
    }
    Ok(acc)
}

/// ⟨T, ∗V♭⟩₃ for the orientation dvol = θ¹∧…∧θ⁴.
pub fn skew_vector_pairing(t: &KForm, v: &Vector) -> Result<f64> {
    t.inner(&v.flat().hodge())
}

fn chirality_gap(c: &TorsionComponents) -> Result<f64> {
    let (plus, minus) = c
        .chiral
        .as_ref()
        .ok_or(Error::RequiresFourDimensions(c.n()))?;
    Ok(plus.norm_sq() - minus.norm_sq())
}

/// 12⟨T,∗V♭⟩₃ dvol + ½(‖S⁺‖² − ‖S⁻‖²) dvol.
pub fn theta_squared_closed_form(c: &TorsionComponents) -> Result<KForm> {
    require_four(c.n())?;
    let value = 12.0 * skew_vector_pairing(&c.three_form, &c.vector)? + 0.5 * chirality_gap(c)?;
    KForm::top(4, value)
}

/// Pointwise data of an orthogonal connection: Levi-Civita scalar curvature,
/// div^g(V), the torsion components, and dT.
#[derive(Debug, Clone)]
pub struct PointGeometry {
    pub rg: f64,
    pub div_v: f64,
    pub components: TorsionComponents,
    pub dt: KForm,
}

impl PointGeometry {
    pub fn flat(components: TorsionComponents) -> Self {
        let n = components.n();
        Self {
            rg: 0.0,
            div_v: 0.0,
            dt: KForm::zero(n, 4.min(n)).expect("n in range"),
            components,
        }
    }
}

/// R = R^g + 2(n−1) div V − (n−1)(n−2)|V|² − ‖T‖² + ½‖S‖².
pub fn scalar_curvature(p: &PointGeometry) -> f64 {
    let c = &p.components;
    let nf = c.n() as f64;
    let t_norm = 6.0 * c.three_form.norm_sq();
    p.rg + 2.0 * (nf - 1.0) * p.div_v - (nf - 1.0) * (nf - 2.0) * c.vector.norm_sq() - t_norm
        + 0.5 * c.cartan.norm_sq()
}

fn require_top(dt: &KForm) -> Result<()> {
    require_four(dt.n())?;
    if dt.degree() != 4 {
        return Err(Error::DegreeMismatch {
            expected: 4,
            found: dt.degree(),
        });
    }
    Ok(())
}

/// C_H = 6 dT − 12⟨T,∗V♭⟩₃ dvol − ½(‖S⁺‖² − ‖S⁻‖²) dvol.
pub fn holst_term_pointwise(c: &TorsionComponents, dt: &KForm) -> Result<KForm> {
    require_four(c.n())?;
    require_top(dt)?;
    let value = 6.0 * dt.top_value()
        - 12.0 * skew_vector_pairing(&c.three_form, &c.vector)?
        - 0.5 * chirality_gap(c)?;
    KForm::top(4, value)
}

/// The Holst density ρ_γ split into its individual dvol-coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HolstTerms {
    pub gamma: f64,
    /// R^g
    pub levi_civita: f64,
    /// 6 div V
    pub divergence: f64,
    /// −6|V|²
    pub vector: f64,
    /// −‖T‖²
    pub three_form: f64,
    /// (12/γ)⟨T,∗V♭⟩₃
    pub mixed: f64,
    /// −(6/γ) dT
    pub exact: f64,
    /// ½(1 + 1/γ)‖S⁺‖²
    pub self_dual: f64,
    /// ½(1 − 1/γ)‖S⁻‖²
    pub anti_self_dual: f64,
}

impl HolstTerms {
    pub fn new(gamma: f64, p: &PointGeometry) -> Result<Self> {
        if gamma == 0.0 || !gamma.is_finite() {
            return Err(Error::invalid(
                "Barbero-Immirzi parameter must be finite and nonzero",
            ));
        }
        let c = &p.components;
        require_four(c.n())?;
        require_top(&p.dt)?;
        let (plus, minus) = c
            .chiral
            .as_ref()
            .ok_or(Error::RequiresFourDimensions(c.n()))?;
        let inv = 1.0 / gamma;
        Ok(Self {
            gamma,
            levi_civita: p.rg,
            divergence: 6.0 * p.div_v,
            vector: -6.0 * c.vector.norm_sq(),
            three_form: -6.0 * c.three_form.norm_sq(),
            mixed: 12.0 * inv * skew_vector_pairing(&c.three_form, &c.vector)?,
            exact: -6.0 * inv * p.dt.top_value(),
            self_dual: 0.5 * (1.0 + inv) * plus.norm_sq(),
            anti_self_dual: 0.5 * (1.0 - inv) * minus.norm_sq(),
        })
    }

    pub fn total(&self) -> f64 {
        self.levi_civita
            + self.divergence
            + self.vector
            + self.three_form
            + self.mixed
            + self.exact
            + self.self_dual
            + self.anti_self_dual
    }

    /// Sum of two breakdowns (used for integrating densities).
    pub fn accumulate(&mut self, other: &HolstTerms) {
        self.levi_civita += other.levi_civita;
        self.divergence += other.divergence;
        self.vector += other.vector;
        self.three_form += other.three_form;
        self.mixed += other.mixed;
        self.exact += other.exact;
        self.self_dual += other.self_dual;
        self.anti_self_dual += other.anti_self_dual;
    }

    pub fn scaled(&self, s: f64) -> HolstTerms {
        HolstTerms {
            gamma: self.gamma,
            levi_civita: s * self.levi_civita,
            divergence: s * self.divergence,
            vector: s * self.vector,
            three_form: s * self.three_form,
            mixed: s * self.mixed,
            exact: s * self.exact,
            self_dual: s * self.self_dual,
            anti_self_dual: s * self.anti_self_dual,
        }
    }

    pub fn zero(gamma: f64) -> HolstTerms {
        HolstTerms {
            gamma,
            levi_civita: 0.0,
            divergence: 0.0,
            vector: 0.0,
            three_form: 0.0,
            mixed: 0.0,
            exact: 0.0,
            self_dual: 0.0,
            anti_self_dual: 0.0,
        }
    }
}

/// ρ_γ dvol = (R^g + 6 div V − 6|V|² − ‖T‖² + (12/γ)⟨T,∗V♭⟩₃) dvol − (6/γ) dT
///          + (½(1+1/γ)‖S⁺‖² + ½(1−1/γ)‖S⁻‖²) dvol.
pub fn holst_density(gamma: f64, p: &PointGeometry) -> Result<KForm> {
    KForm::top(4, HolstTerms::new(gamma, p)?.total())
}
