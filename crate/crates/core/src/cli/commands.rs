use std::collections::BTreeMap;

use serde::Serialize;

use super::config::RunConfig;
use super::verify::{run_verify, VerifyOptions, VerifyReport};
use crate::clifford::CliffordRep;
use crate::error::{Error, Result};
use crate::json;
use crate::multilinear::{
    decompose_torsion, recompose_torsion, ComponentsJson, TorsionJson, TorsionTensor,
};
use crate::torus::{
    fit_heat_coefficients, holst_action, mode_cutoff, spectral_holst_from_fit, HeatFit,
    HolstAction, SpectralHolstCheck,
};

/// Exit codes of the `holst` binary.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const CHECK_FAILURE: i32 = 1;
    pub const INPUT_ERROR: i32 = 2;
    pub const INVARIANT_VIOLATION: i32 = 3;
}

/// Invariant violations map to 3, everything else the user supplied to 2.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Invariant { .. } => exit::INVARIANT_VIOLATION,
        _ => exit::INPUT_ERROR,
    }
}

/// Rendered output of a command and whether its checks passed.
#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub text: String,
    pub pass: bool,
}

impl CommandOutput {
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            exit::PASS
        } else {
            exit::CHECK_FAILURE
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(Error::invalid(format!(
                "unknown format {s:?} (expected json or csv)"
            ))),
        }
    }
}

/// Tensor norms of A and of each embedded part.
#[derive(Debug, Clone, Serialize)]
pub struct PartNorms {
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "V")]
    pub v: f64,
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "S")]
    pub s: f64,
    #[serde(rename = "S_plus", skip_serializing_if = "Option::is_none")]
    pub s_plus: Option<f64>,
    #[serde(rename = "S_minus", skip_serializing_if = "Option::is_none")]
    pub s_minus: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecomposeReport {
    pub n: usize,
    pub components: ComponentsJson,
    /// squared tensor norms
    pub norms: PartNorms,
    /// |<X,Y>| for every pair of parts
    pub orthogonality: BTreeMap<&'static str, f64>,
    /// |‖A‖² − Σ‖part‖²|
    pub pythagoras_residual: f64,
    /// max |A − (V-part + T-part + S)|
    pub round_trip_residual: f64,
}

pub fn decompose_report(a: &TorsionTensor) -> Result<DecomposeReport> {
    let c = decompose_torsion(a);
    let (v, t, s) = (c.vector_part(), c.three_form_part(), &c.cartan);
    let mut orthogonality = BTreeMap::new();
    orthogonality.insert("V,T", v.inner(&t)?.abs());
    orthogonality.insert("V,S", v.inner(s)?.abs());
    orthogonality.insert("T,S", t.inner(s)?.abs());
    if let Some((p, m)) = &c.chiral {
        orthogonality.insert("S_plus,S_minus", p.inner(m)?.abs());
    }
    let norms = PartNorms {
        a: a.norm_sq(),
        v: v.norm_sq(),
        t: t.norm_sq(),
        s: s.norm_sq(),
        s_plus: c.self_dual().map(|p| p.norm_sq()),
        s_minus: c.anti_self_dual().map(|m| m.norm_sq()),
    };
    Ok(DecomposeReport {
        n: a.n(),
        components: ComponentsJson::from(&c),
        pythagoras_residual: (norms.a - norms.v - norms.t - norms.s).abs(),
        round_trip_residual: recompose_torsion(&c)?.max_abs_diff(a),
        norms,
        orthogonality,
    })
}

/// `decompose`: torsion tensor JSON in, components report out. Schema
/// errors are input errors; a tensor that is not antisymmetric in its last
/// two slots is an invariant violation.
pub fn cmd_decompose(input: &str) -> Result<CommandOutput> {
    let raw: TorsionJson = serde_json::from_str(input)?;
    let a = TorsionTensor::new(raw.n, raw.a)?;
    Ok(CommandOutput {
        text: json::to_string(&decompose_report(&a)?)?,
        pass: true,
    })
}

pub fn cmd_verify(opts: &VerifyOptions) -> Result<(VerifyReport, CommandOutput)> {
    let report = run_verify(opts)?;
    let out = CommandOutput {
        text: json::to_string(&report)?,
        pass: report.pass,
    };
    Ok((report, out))
}

/// Relative tolerance of the fitted β₂ and of the spectral Holst comparison.
pub const HEAT_TOLERANCE: f64 = 0.02;
/// Absolute tolerance of the fitted β₀.
pub const BETA0_TOLERANCE: f64 = 1e-3;
/// Gaussian tail bound used to pick the mode cutoff.
pub const CUTOFF_TAIL: f64 = 1e-12;

#[derive(Debug, Clone, Serialize)]
pub struct HeatReport {
    pub fit: HeatFit,
    pub beta2_closed: f64,
    /// |β̂₂ − β₂| / max(1, |β₂|)
    pub beta2_relative_error: f64,
    pub beta0_error: f64,
    pub spectral_holst: SpectralHolstCheck,
    pub tolerance: f64,
    pub pass: bool,
}

pub fn heat_report(cfg: &RunConfig) -> Result<HeatReport> {
    cfg.validate()?;
    let rep = CliffordRep::standard();
    let tor = cfg.constant_torsion()?;
    let period = cfg.grid.period();
    let t_min = cfg.ts.iter().copied().fold(f64::INFINITY, f64::min);
    if !t_min.is_finite() {
        return Err(Error::invalid("heat fit needs at least 3 distinct times"));
    }
    let cutoff = match cfg.cutoff {
        Some(k) => k,
        None => mode_cutoff(&rep, &tor, period, t_min, CUTOFF_TAIL)?,
    };
    let fit = fit_heat_coefficients(&rep, &tor, period, &cfg.ts, cutoff)?;
    let spectral_holst = spectral_holst_from_fit(&tor, &fit, cfg.g_newton)?;
    let beta2_closed = spectral_holst.beta2_closed;
    let beta2_relative_error = (fit.beta2_hat - beta2_closed).abs() / beta2_closed.abs().max(1.0);
    let beta0_error = (fit.beta0_hat - 2.0).abs();
    let pass = beta2_relative_error <= HEAT_TOLERANCE
        && spectral_holst.residual <= HEAT_TOLERANCE
        && beta0_error <= BETA0_TOLERANCE;
    Ok(HeatReport {
        fit,
        beta2_closed,
        beta2_relative_error,
        beta0_error,
        spectral_holst,
        tolerance: HEAT_TOLERANCE,
        pass,
    })
}

/// `heat-fit`: the report as JSON, or the (t, trace) pairs as CSV.
pub fn cmd_heat_fit(cfg: &RunConfig, format: OutputFormat) -> Result<CommandOutput> {
    let report = heat_report(cfg)?;
    let text = match format {
        OutputFormat::Json => json::to_string(&report)?,
        OutputFormat::Csv => report.fit.to_csv(),
    };
    Ok(CommandOutput {
        text,
        pass: report.pass,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct HolstReport {
    #[serde(rename = "I_H")]
    pub value: f64,
    pub action: HolstAction,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

pub fn degeneracy_note(gamma: f64) -> Option<&'static str> {
    if gamma == 1.0 {
        Some("gamma = 1: the anti-self-dual Cartan part S- drops out of I_H")
    } else if gamma == -1.0 {
        Some("gamma = -1: the self-dual Cartan part S+ drops out of I_H")
    } else {
        None
    }
}

pub fn holst_report(cfg: &RunConfig) -> Result<HolstReport> {
    cfg.validate()?;
    let field = cfg.torsion_field()?;
    let action = holst_action(cfg.gamma, cfg.g_newton, &field)?;
    Ok(HolstReport {
        value: action.value,
        action,
        note: degeneracy_note(cfg.gamma),
    })
}

pub fn cmd_holst(cfg: &RunConfig) -> Result<CommandOutput> {
    Ok(CommandOutput {
        text: json::to_string(&holst_report(cfg)?)?,
        pass: true,
    })
}
