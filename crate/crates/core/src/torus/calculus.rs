//! Exterior calculus of form fields on the torus in the coordinate frame
//! e_a = ∂_a, θ^a = dx^a, where ∇^g is the coordinate derivative and the
//! connection forms are ω^a_b(e_c) = A_{cba}.

use serde::Serialize;

use super::field::{FieldKind, PeriodicField};
use super::grid::{Spectral, TorusGrid};
use crate::error::{Error, Result};
use crate::multilinear::{
    decompose_torsion, holst_term_pointwise, torsion_two_forms, HolstTerms, KForm, PointGeometry,
};

/// (left basis index, right basis index, output basis index, sign) for every
/// nonvanishing product of basis monomials of the given degrees.
fn wedge_table(p: usize, q: usize) -> Result<Vec<(usize, usize, usize, f64)>> {
    let left = KForm::basis_indices(4, p);
    let right = KForm::basis_indices(4, q);
    let mut table = Vec::new();
    for (i, li) in left.iter().enumerate() {
        let a = KForm::monomial(4, li)?;
        for (j, rj) in right.iter().enumerate() {
            let prod = a.wedge(&KForm::monomial(4, rj)?)?;
            if let Some((r, &s)) = prod.coeffs().iter().enumerate().find(|(_, c)| **c != 0.0) {
                table.push((i, j, r, s));
            }
        }
    }
    Ok(table)
}

fn form_kind(degree: usize) -> FieldKind {
    FieldKind::Form(degree)
}

/// Pointwise f ∧ g of two form fields (scalars count as 0-forms).
pub fn wedge(f: &PeriodicField, g: &PeriodicField) -> Result<PeriodicField> {
    let (p, q) = (f.form_degree()?, g.form_degree()?);
    if p + q > 4 {
        return Err(Error::DegreeOverflow {
            left: p,
            right: q,
            n: 4,
        });
    }
    if f.grid() != g.grid() {
        return Err(Error::invalid("forms live on different grids"));
    }
    let mut out = PeriodicField::zeros(f.grid(), form_kind(p + q))?;
    for (i, j, r, s) in wedge_table(p, q)? {
        let (a, b) = (f.component(i), g.component(j));
        for ((o, x), y) in out.component_mut(r).iter_mut().zip(a).zip(b) {
            *o += s * x * y;
        }
    }
    Ok(out)
}

/// Exterior derivative with Fourier-spectral partial derivatives.
pub fn spectral_d(f: &PeriodicField) -> Result<PeriodicField> {
    let k = f.form_degree()?;
    if k >= 4 {
        return Err(Error::invalid(
            "d of a 4-form vanishes identically; no 5-forms on a 4-torus",
        ));
    }
    let sp = Spectral::new(f.grid());
    let mut out = PeriodicField::zeros(f.grid(), form_kind(k + 1))?;
    for (a, i, r, s) in wedge_table(1, k)? {
        let da = sp.derivative(f.component(i), a);
        for (o, v) in out.component_mut(r).iter_mut().zip(&da) {
            *o += s * v;
        }
    }
    Ok(out)
}

/// div V = Σ_a ∂_a V_a.
pub fn divergence(v: &PeriodicField) -> Result<PeriodicField> {
    v.require_kind(FieldKind::Vector)?;
    let sp = Spectral::new(v.grid());
    let mut out = PeriodicField::zeros(v.grid(), FieldKind::Scalar)?;
    for a in 0..4 {
        let da = sp.derivative(v.component(a), a);
        for (o, x) in out.component_mut(0).iter_mut().zip(&da) {
            *o += x;
        }
    }
    Ok(out)
}

fn coframe(grid: TorusGrid) -> Result<Vec<PeriodicField>> {
    (0..4)
        .map(|a| PeriodicField::constant_form(grid, &KForm::monomial(4, &[a])?))
        .collect()
}

/// The pointwise Cartan decomposition of a torsion field.
#[derive(Debug, Clone)]
pub struct TorsionParts {
    pub vector: PeriodicField,
    pub three_form: PeriodicField,
    pub cartan: PeriodicField,
    pub self_dual: PeriodicField,
    pub anti_self_dual: PeriodicField,
}

pub fn torsion_parts(a: &PeriodicField) -> Result<TorsionParts> {
    a.require_kind(FieldKind::Torsion)?;
    let grid = a.grid();
    let mut vector = PeriodicField::zeros(grid, FieldKind::Vector)?;
    let mut three_form = PeriodicField::zeros(grid, FieldKind::Form(3))?;
    // cartan, self-dual, anti-self-dual
    let mut comps: [Vec<Vec<f64>>; 3] = std::array::from_fn(|_| vec![vec![0.0; grid.points()]; 64]);
    for p in 0..grid.points() {
        let c = decompose_torsion(&a.torsion_at(p)?);
        for (i, v) in c.vector.components().iter().enumerate() {
            vector.component_mut(i)[p] = *v;
        }
        for (i, v) in c.three_form.coeffs().iter().enumerate() {
            three_form.component_mut(i)[p] = *v;
        }
        let (plus, minus) = c.chiral.as_ref().expect("n = 4");
        for (slot, t) in comps.iter_mut().zip([&c.cartan, plus, minus]) {
            for (i, v) in t.data().iter().enumerate() {
                slot[i][p] = *v;
            }
        }
    }
    let [s, sp, sm] = comps;
    Ok(TorsionParts {
        vector,
        three_form,
        cartan: PeriodicField::from_components(grid, FieldKind::Torsion, s)?,
        self_dual: PeriodicField::from_components(grid, FieldKind::Torsion, sp)?,
        anti_self_dual: PeriodicField::from_components(grid, FieldKind::Torsion, sm)?,
    })
}

/// Connection, curvature and torsion forms of ∇ = ∇^g + A.
#[derive(Debug, Clone)]
pub struct StructureForms {
    /// ω^a_b at index 4a + b
    pub omega: Vec<PeriodicField>,
    /// Ω^a_b = dω^a_b + Σ_c ω^a_c ∧ ω^c_b at index 4a + b
    pub curvature: Vec<PeriodicField>,
    /// Θ^a = Σ_c ω^a_c ∧ θ^c
    pub torsion: Vec<PeriodicField>,
}

impl StructureForms {
    pub fn omega(&self, a: usize, b: usize) -> &PeriodicField {
        &self.omega[4 * a + b]
    }

    pub fn curvature(&self, a: usize, b: usize) -> &PeriodicField {
        &self.curvature[4 * a + b]
    }
}

pub fn structure_forms(a: &PeriodicField) -> Result<StructureForms> {
    a.require_kind(FieldKind::Torsion)?;
    let grid = a.grid();
    let mut omega = Vec::with_capacity(16);
    for x in 0..4 {
        for y in 0..4 {
            // ω^x_y(e_c) = A_{c y x}
            let comps = (0..4)
                .map(|c| a.component(c * 16 + y * 4 + x).to_vec())
                .collect();
            omega.push(PeriodicField::from_components(
                grid,
                FieldKind::Form(1),
                comps,
            )?);
        }
    }
    let theta = coframe(grid)?;
    let mut torsion = Vec::with_capacity(4);
    for x in 0..4 {
        let mut acc = PeriodicField::zeros(grid, FieldKind::Form(2))?;
        for c in 0..4 {
            acc = acc.add(&wedge(&omega[4 * x + c], &theta[c])?)?;
        }
        torsion.push(acc);
    }
    let mut curvature = Vec::with_capacity(16);
    for x in 0..4 {
        for y in 0..4 {
            let mut acc = spectral_d(&omega[4 * x + y])?;
            for c in 0..4 {
                acc = acc.add(&wedge(&omega[4 * x + c], &omega[4 * c + y])?)?;
            }
            curvature.push(acc);
        }
    }
    Ok(StructureForms {
        omega,
        curvature,
        torsion,
    })
}

/// max over grid points and (a, b, c) of |Θ^a from the structure equation −
/// Θ^a computed pointwise from A|.
pub fn structure_torsion_residual(a: &PeriodicField, forms: &StructureForms) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for p in 0..a.grid().points() {
        let direct = torsion_two_forms(&a.torsion_at(p)?);
        for (k, th) in direct.iter().enumerate() {
            worst = worst.max(th.max_abs_diff(&forms.torsion[k].form_at(p)?));
        }
    }
    Ok(worst)
}

/// Field-level check of dC_TT = ΣΘ^a∧Θ^a + ΣΩ^a_b∧θ^b∧θ^a and of the
/// closed form of the Holst term.
#[derive(Debug, Clone, Serialize)]
pub struct NiehYanReport {
    /// max |dC_TT − ΣΘ∧Θ − C_H|
    pub residual: f64,
    /// structure-equation Θ against the pointwise torsion 2-forms
    pub torsion_residual: f64,
    /// ∫ dC_TT
    pub integral_d_ctt: f64,
    /// max |C_H − (6dT − 12⟨T,∗V♭⟩₃dvol − ½(‖S⁺‖² − ‖S⁻‖²)dvol)|
    pub holst_closed_form_residual: f64,
    /// max |C_TT − 6T|
    pub chern_simons_residual: f64,
    #[serde(skip)]
    pub holst_term: Option<PeriodicField>,
}

/// C_H = Σ_{a,b} Ω^a_b ∧ θ^b ∧ θ^a.
pub fn holst_term_field(forms: &StructureForms, grid: TorusGrid) -> Result<PeriodicField> {
    let theta = coframe(grid)?;
    let mut acc = PeriodicField::zeros(grid, FieldKind::Form(4))?;
    for x in 0..4 {
        for y in 0..4 {
            let tt = wedge(&theta[y], &theta[x])?;
            acc = acc.add(&wedge(forms.curvature(x, y), &tt)?)?;
        }
    }
    Ok(acc)
}

pub fn nieh_yan(a: &PeriodicField) -> Result<NiehYanReport> {
    let grid = a.grid();
    let forms = structure_forms(a)?;
    let theta = coframe(grid)?;
    let mut ctt = PeriodicField::zeros(grid, FieldKind::Form(3))?;
    let mut theta_sq = PeriodicField::zeros(grid, FieldKind::Form(4))?;
    for (th, co) in forms.torsion.iter().zip(&theta) {
        ctt = ctt.add(&wedge(th, co)?)?;
        theta_sq = theta_sq.add(&wedge(th, th)?)?;
    }
    let d_ctt = spectral_d(&ctt)?;
    let ch = holst_term_field(&forms, grid)?;
    let residual = d_ctt.max_abs_diff(&theta_sq.add(&ch)?)?;

    let parts = torsion_parts(a)?;
    let dt = spectral_d(&parts.three_form)?;
    let mut closed_residual: f64 = 0.0;
    for p in 0..grid.points() {
        let c = decompose_torsion(&a.torsion_at(p)?);
        let closed = holst_term_pointwise(&c, &dt.form_at(p)?)?;
        closed_residual = closed_residual.max((closed.top_value() - ch.component(0)[p]).abs());
    }
    Ok(NiehYanReport {
        residual,
        torsion_residual: structure_torsion_residual(a, &forms)?,
        integral_d_ctt: d_ctt.integrate()?,
        holst_closed_form_residual: closed_residual,
        chern_simons_residual: ctt.max_abs_diff(&parts.three_form.scale(6.0))?,
        holst_term: Some(ch),
    })
}

pub fn nieh_yan_residual(a: &PeriodicField) -> Result<f64> {
    Ok(nieh_yan(a)?.residual)
}

/// I_H = (1/16πG) ∫ ρ_γ dvol with R^g = 0, together with the integrated
/// contribution of each term of ρ_γ.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct HolstAction {
    pub value: f64,
    pub gamma: f64,
    #[serde(rename = "G")]
    pub g_newton: f64,
    pub terms: HolstTerms,
}

pub fn holst_action(gamma: f64, g_newton: f64, a: &PeriodicField) -> Result<HolstAction> {
    if !(g_newton.is_finite() && g_newton > 0.0) {
        return Err(Error::invalid(format!(
            "Newton constant must be positive, got {g_newton}"
        )));
    }
    if gamma == 0.0 || !gamma.is_finite() {
        return Err(Error::invalid(
            "Barbero-Immirzi parameter must be finite and nonzero",
        ));
    }
    let grid = a.grid();
    let parts = torsion_parts(a)?;
    let div_v = divergence(&parts.vector)?;
    let dt = spectral_d(&parts.three_form)?;
    let mut total = HolstTerms::zero(gamma);
    for p in 0..grid.points() {
        let geometry = PointGeometry {
            rg: 0.0,
            div_v: div_v.component(0)[p],
            components: decompose_torsion(&a.torsion_at(p)?),
            dt: dt.form_at(p)?,
        };
        total.accumulate(&HolstTerms::new(gamma, &geometry)?);
    }
    let terms = total.scaled(grid.cell_volume() / (16.0 * std::f64::consts::PI * g_newton));
    Ok(HolstAction {
        value: terms.total(),
        gamma,
        g_newton,
        terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multilinear::TorsionTensor;
    use crate::sampling::rng;
    use crate::torus::random_field;
    use std::f64::consts::PI;

    fn grid8() -> TorusGrid {
        TorusGrid::new(1.0, 8).unwrap()
    }

    #[test]
    fn d_examples() {
        let g = grid8();
        let c = PeriodicField::constant_form(g, &KForm::monomial(4, &[1, 2]).unwrap()).unwrap();
        assert!(spectral_d(&c).unwrap().max_abs() < 1e-12);

        let w = 2.0 * PI / g.period();
        let f = PeriodicField::from_fn(g, FieldKind::Form(1), |x, o| {
            o.fill(0.0);
            o[1] = (w * x[0]).sin();
        })
        .unwrap();
        let df = spectral_d(&f).unwrap();
        for p in 0..g.points() {
            let want = w * (w * g.coordinates(p)[0]).cos();
            let got = df.form_at(p).unwrap();
            assert!((got.eval(&[0, 1]).unwrap() - want).abs() < 1e-12);
            assert!(got.eval(&[0, 2]).unwrap().abs() < 1e-12);
        }

        let omega = random_field(&mut rng(4), g, FieldKind::Form(2), 2, 1.0).unwrap();
        let dd = spectral_d(&spectral_d(&omega).unwrap()).unwrap();
        assert!(dd.max_abs() < 1e-10);
        assert!(spectral_d(&PeriodicField::zeros(g, FieldKind::Form(4)).unwrap()).is_err());
    }

    #[test]
    fn divergence_examples() {
        let g = grid8();
        let w = 2.0 * PI / g.period();
        let v = PeriodicField::from_fn(g, FieldKind::Vector, |x, o| {
            o.fill(0.0);
            o[0] = (w * x[0]).sin();
        })
        .unwrap();
        let dv = divergence(&v).unwrap();
        for p in 0..g.points() {
            assert!((dv.component(0)[p] - w * (w * g.coordinates(p)[0]).cos()).abs() < 1e-12);
        }
        let r = random_field(&mut rng(2), g, FieldKind::Vector, 2, 1.0).unwrap();
        assert!(divergence(&r).unwrap().integrate().unwrap().abs() < 1e-12);
    }

    #[test]
    fn zero_and_constant_torsion() {
        let g = grid8();
        let zero = PeriodicField::zeros(g, FieldKind::Torsion).unwrap();
        let r = nieh_yan(&zero).unwrap();
        assert_eq!((r.residual, r.holst_closed_form_residual), (0.0, 0.0));

        let a = crate::sampling::random_torsion(&mut rng(9), 4);
        let field = PeriodicField::constant_torsion(g, &a).unwrap();
        let forms = structure_forms(&field).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                let mut ww = PeriodicField::zeros(g, FieldKind::Form(2)).unwrap();
                for c in 0..4 {
                    ww = ww
                        .add(&wedge(forms.omega(x, c), forms.omega(c, y)).unwrap())
                        .unwrap();
                }
                assert!(forms.curvature(x, y).max_abs_diff(&ww).unwrap() < 1e-12);
            }
        }
        let r = nieh_yan(&field).unwrap();
        assert!(r.residual < 1e-12 && r.holst_closed_form_residual < 1e-12);
    }

    #[test]
    fn holst_action_of_constant_three_form() {
        let g = grid8();
        let tau = 0.5;
        let t = KForm::monomial(4, &[0, 1, 2]).unwrap().scale(tau);
        let a = PeriodicField::constant_torsion(g, &TorsionTensor::from_three_form(&t).unwrap())
            .unwrap();
        let gn = 2.0;
        let ih = holst_action(1.0, gn, &a).unwrap();
        let want = -6.0 * tau * tau / (16.0 * PI * gn);
        assert!((ih.value - want).abs() < 1e-14);
        assert!(holst_action(0.0, 1.0, &a).is_err());
        assert!(holst_action(1.0, 0.0, &a).is_err());
    }
}
