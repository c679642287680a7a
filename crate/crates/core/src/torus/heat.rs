//! Heat trace Tr(e^{−tD*D} P_L) for constant torsion on the flat torus,
//! where D is diagonal in Fourier modes, and the small-t fit of its
//! expansion coefficients.

use nalgebra::{DMatrix, DVector, Matrix4, SymmetricEigen};
use serde::Serialize;

use super::calculus::holst_action;
use super::field::PeriodicField;
use super::grid::TorusGrid;
use crate::clifford::{beta2_closed_form, CliffordRep, PointData, SpinorEndomorphism};
use crate::error::{Error, Result};
use crate::json::format_f64;
use crate::multilinear::{KForm, TorsionTensor, Vector};

/// Largest accepted condition number of the scaled least-squares design.
pub const MAX_CONDITION: f64 = 1e10;

/// Constant torsion data (T₀, V₀) of the heat-trace scenarios.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantTorsion {
    pub t: KForm,
    pub v: Vector,
}

impl ConstantTorsion {
    pub fn new(t: KForm, v: Vector) -> Result<Self> {
        if t.n() != 4 || v.n() != 4 {
            return Err(Error::RequiresFourDimensions(t.n().max(v.n())));
        }
        if t.degree() != 3 {
            return Err(Error::DegreeMismatch {
                expected: 3,
                found: t.degree(),
            });
        }
        Ok(Self { t, v })
    }

    pub fn zero() -> Self {
        Self {
            t: KForm::zero(4, 3).expect("n = 4"),
            v: Vector::zero(4),
        }
    }

    /// (3/2)T₀· − (3/2)V₀·
    fn symbol(&self, rep: &CliffordRep) -> Result<SpinorEndomorphism> {
        let mut m = rep.rep_form(&self.t)?.scale(1.5);
        m.add_scaled(&rep.rep_vector(&self.v)?, -1.5);
        Ok(m)
    }

    /// The closed-form β₂ with R^g = div V = dT = 0.
    pub fn beta2_closed(&self) -> Result<f64> {
        let p = PointData::new(0.0, 0.0, self.v.clone(), self.t.clone(), KForm::zero(4, 4)?)?;
        beta2_closed_form(&p)
    }

    /// The torsion tensor of the connection with components (3V₀, 3T₀, S = 0).
    pub fn scaled_connection(&self) -> Result<TorsionTensor> {
        Ok(TorsionTensor::from_three_form(&self.t.scale(3.0))?
            .add(&TorsionTensor::vectorial(&self.v.scale(3.0))?))
    }
}

/// Eigenvalues λ of M_k = D_k†D_k for every mode |k_i| ≤ K, each paired with
/// the weight u†P_L u of its eigenvector, in lexicographic mode order.
#[derive(Debug, Clone)]
pub struct HeatSpectrum {
    period: f64,
    cutoff: usize,
    levels: Vec<(f64, f64)>,
}

impl HeatSpectrum {
    pub fn new(
        rep: &CliffordRep,
        torsion: &ConstantTorsion,
        period: f64,
        cutoff: usize,
    ) -> Result<Self> {
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::invalid(format!(
                "torus period must be positive, got {period}"
            )));
        }
        if cutoff == 0 {
            return Err(Error::invalid("mode cutoff must be at least 1"));
        }
        let symbol = torsion.symbol(rep)?;
        let p_left = rep.left_projector();
        let w = 2.0 * std::f64::consts::PI / period;
        let side = 2 * cutoff + 1;
        let mut levels = Vec::with_capacity(4 * side.pow(4));
        let k = cutoff as i64;
        let i = num_complex::Complex64::new(0.0, 1.0);
        for k1 in -k..=k {
            for k2 in -k..=k {
                for k3 in -k..=k {
                    for k4 in -k..=k {
                        let mut d = symbol.clone();
                        for (a, ka) in [k1, k2, k3, k4].into_iter().enumerate() {
                            if ka != 0 {
                                d = &d + &rep.generator(a).scale_complex(i * (w * ka as f64));
                            }
                        }
                        let m: Matrix4<num_complex::Complex64> = d.0.adjoint() * d.0;
                        let eig = SymmetricEigen::new(m);
                        for j in 0..4 {
                            let u = eig.eigenvectors.column(j);
                            let weight = (u.adjoint() * p_left.0 * u)[(0, 0)].re;
                            levels.push((eig.eigenvalues[j], weight));
                        }
                    }
                }
            }
        }
        Ok(Self {
            period,
            cutoff,
            levels,
        })
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Σ_k Tr(exp(−tM_k) P_L).
    pub fn trace(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        Ok(self
            .levels
            .iter()
            .map(|(lambda, w)| w * (-t * lambda).exp())
            .sum())
    }
}

fn check_time(t: f64) -> Result<()> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::invalid(format!(
            "heat time must be positive, got {t}"
        )));
    }
    Ok(())
}

/// Tr(e^{−tD*D} P_L) summed over modes |k_i| ≤ cutoff.
pub fn heat_trace(
    rep: &CliffordRep,
    torsion: &ConstantTorsion,
    period: f64,
    t: f64,
    cutoff: usize,
) -> Result<f64> {
    check_time(t)?;
    HeatSpectrum::new(rep, torsion, period, cutoff)?.trace(t)
}

/// Smallest cutoff K for which the discarded modes contribute less than
/// `tail` at time `t_min`. Uses |D_k v| ≥ |p| − ‖symbol‖ with the Frobenius
/// norm as operator-norm bound, and counts modes shell by shell.
pub fn mode_cutoff(
    rep: &CliffordRep,
    torsion: &ConstantTorsion,
    period: f64,
    t_min: f64,
    tail: f64,
) -> Result<usize> {
    check_time(t_min)?;
    let c = torsion.symbol(rep)?.0.norm();
    let w = 2.0 * std::f64::consts::PI / period;
    let shell_bound = |j: usize| -> f64 {
        // modes with max|k_i| = j number (2j+1)⁴ − (2j−1)⁴ ≤ 8(2j+1)³; each has |p| ≥ w j
        let gap = (w * j as f64 - c).max(0.0);
        4.0 * 8.0 * ((2 * j + 1) as f64).powi(3) * (-t_min * gap * gap).exp()
    };
    for k in 1..10_000 {
        let mut rest = 0.0;
        let mut j = k + 1;
        loop {
            let term = shell_bound(j);
            rest += term;
            if term < 1e-3 * tail * f64::EPSILON || j > k + 100_000 {
                break;
            }
            j += 1;
        }
        if rest < tail {
            return Ok(k);
        }
    }
    Err(Error::invalid(
        "no mode cutoff reaches the requested tail bound",
    ))
}

/// Eight times geometrically spaced in [0.01, 0.0125].
pub fn default_times() -> Vec<f64> {
    let (lo, hi, m) = (0.01_f64, 0.0125_f64, 8);
    (0..m)
        .map(|i| lo * (hi / lo).powf(i as f64 / (m - 1) as f64))
        .collect()
}

/// Least-squares fit of y(t) = Tr·(4πt)²/L⁴ against β₀ + β₂t + β₄t².
#[derive(Debug, Clone, Serialize)]
pub struct HeatFit {
    pub ts: Vec<f64>,
    pub traces: Vec<f64>,
    pub beta0_hat: f64,
    pub beta2_hat: f64,
    pub beta4_hat: f64,
    /// max |y_i − fitted y_i|
    pub fit_residual: f64,
    pub condition: f64,
    #[serde(rename = "L")]
    pub period: f64,
    #[serde(rename = "K")]
    pub cutoff: usize,
}

impl HeatFit {
    /// `t,trace` rows with 17-significant-digit floats.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,trace\n");
        for (t, tr) in self.ts.iter().zip(&self.traces) {
            out.push_str(&format!("{},{}\n", format_f64(*t), format_f64(*tr)));
        }
        out
    }
}

pub fn fit_from_spectrum(spectrum: &HeatSpectrum, ts: &[f64]) -> Result<HeatFit> {
    for &t in ts {
        check_time(t)?;
    }
    let mut distinct = ts.to_vec();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < 3 {
        return Err(Error::invalid(format!(
            "heat fit needs at least 3 distinct times, got {}",
            distinct.len()
        )));
    }
    let l4 = spectrum.period().powi(4);
    let traces = ts
        .iter()
        .map(|&t| spectrum.trace(t))
        .collect::<Result<Vec<_>>>()?;
    let ys: Vec<f64> = ts
        .iter()
        .zip(&traces)
        .map(|(&t, tr)| tr * (4.0 * std::f64::consts::PI * t).powi(2) / l4)
        .collect();

    let t_ref = distinct[distinct.len() - 1];
    let design = DMatrix::from_fn(ts.len(), 3, |r, c| (ts[r] / t_ref).powi(c as i32));
    let svd = design.clone().svd(true, true);
    let (smax, smin) = svd
        .singular_values
        .iter()
        .fold((0.0_f64, f64::INFINITY), |(hi, lo), s| {
            (hi.max(*s), lo.min(*s))
        });
    let condition = smax / smin;
    if !(condition.is_finite() && condition <= MAX_CONDITION) {
        return Err(Error::IllConditioned { condition });
    }
    let rhs = DVector::from_column_slice(&ys);
    let coef = svd
        .solve(&rhs, smax * f64::EPSILON)
        .map_err(|e| Error::invalid(format!("least squares failed: {e}")))?;
    let fitted = &design * &coef;
    let fit_residual = fitted
        .iter()
        .zip(&ys)
        .fold(0.0, |m: f64, (f, y)| m.max((f - y).abs()));
    Ok(HeatFit {
        ts: ts.to_vec(),
        traces,
        beta0_hat: coef[0],
        beta2_hat: coef[1] / t_ref,
        beta4_hat: coef[2] / (t_ref * t_ref),
        fit_residual,
        condition,
        period: spectrum.period(),
        cutoff: spectrum.cutoff(),
    })
}

pub fn fit_heat_coefficients(
    rep: &CliffordRep,
    torsion: &ConstantTorsion,
    period: f64,
    ts: &[f64],
    cutoff: usize,
) -> Result<HeatFit> {
    for &t in ts {
        check_time(t)?;
    }
    let spectrum = HeatSpectrum::new(rep, torsion, period, cutoff)?;
    fit_from_spectrum(&spectrum, ts)
}

/// Comparison of the fitted β₂ with the Holst action of the connection
/// (3V₀, 3T₀, S = 0) at γ = 1.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralHolstCheck {
    pub beta2_hat: f64,
    pub beta2_closed: f64,
    /// Ī_H
    pub holst_action: f64,
    #[serde(rename = "G")]
    pub g_newton: f64,
    /// |L⁴β̂₂ + (8πG/3)Ī_H| / max(1, |Ī_H|)
    pub residual: f64,
}

pub fn spectral_holst_from_fit(
    torsion: &ConstantTorsion,
    fit: &HeatFit,
    g_newton: f64,
) -> Result<SpectralHolstCheck> {
    let grid = TorusGrid::new(fit.period, 8)?;
    let field = PeriodicField::constant_torsion(grid, &torsion.scaled_connection()?)?;
    let ih = holst_action(1.0, g_newton, &field)?.value;
    let lhs = fit.period.powi(4) * fit.beta2_hat;
    let residual =
        (lhs + 8.0 * std::f64::consts::PI * g_newton / 3.0 * ih).abs() / ih.abs().max(1.0);
    Ok(SpectralHolstCheck {
        beta2_hat: fit.beta2_hat,
        beta2_closed: torsion.beta2_closed()?,
        holst_action: ih,
        g_newton,
        residual,
    })
}

pub fn spectral_holst_check(
    rep: &CliffordRep,
    torsion: &ConstantTorsion,
    g_newton: f64,
    period: f64,
    ts: &[f64],
    cutoff: usize,
) -> Result<SpectralHolstCheck> {
    let fit = fit_heat_coefficients(rep, torsion, period, ts, cutoff)?;
    spectral_holst_from_fit(torsion, &fit, g_newton)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn flat_trace_is_twice_gaussian_sum() {
        let rep = CliffordRep::alternative();
        let (l, t, k) = (1.0, 0.05, 4);
        let got = heat_trace(&rep, &ConstantTorsion::zero(), l, t, k).unwrap();
        let one_d: f64 = (-4..=4)
            .map(|j| (-t * (2.0 * PI * j as f64 / l).powi(2)).exp())
            .sum();
        assert!((got - 2.0 * one_d.powi(4)).abs() < 1e-12 * got);
    }

    #[test]
    fn rejects_bad_times() {
        let rep = CliffordRep::standard();
        let z = ConstantTorsion::zero();
        assert!(heat_trace(&rep, &z, 1.0, 0.0, 2).is_err());
        assert!(fit_heat_coefficients(&rep, &z, 1.0, &[0.01, 0.01, 0.02], 2).is_err());
        assert!(fit_heat_coefficients(&rep, &z, 1.0, &[0.01, -0.02, 0.03], 2).is_err());
    }

    #[test]
    fn monotone_and_large_time_limit() {
        let rep = CliffordRep::standard();
        let t0 = ConstantTorsion::new(
            KForm::monomial(4, &[0, 1, 2]).unwrap().scale(0.3),
            Vector::zero(4),
        )
        .unwrap();
        let s = HeatSpectrum::new(&rep, &t0, 1.0, 3).unwrap();
        let a = s.trace(0.05).unwrap();
        let b = s.trace(0.1).unwrap();
        assert!(a > b);
        // only k = 0 survives: M_0 = (0.45)² id on the left-handed block
        let big = s.trace(50.0).unwrap();
        assert!((big - 2.0 * (-50.0 * 0.45f64.powi(2)).exp()).abs() < 1e-12);
    }

    #[test]
    fn cutoff_bound_is_sufficient() {
        let rep = CliffordRep::standard();
        let z = ConstantTorsion::zero();
        let k = mode_cutoff(&rep, &z, 1.0, 0.02, 1e-12).unwrap();
        let a = heat_trace(&rep, &z, 1.0, 0.02, k).unwrap();
        let b = heat_trace(&rep, &z, 1.0, 0.02, k + 3).unwrap();
        assert!((a - b).abs() < 1e-12);
        assert!(k <= 8);
    }

    #[test]
    fn default_time_grid() {
        let ts = default_times();
        assert_eq!(ts.len(), 8);
        assert!((ts[0] - 0.01).abs() < 1e-15 && (ts[7] - 0.0125).abs() < 1e-15);
    }
}
