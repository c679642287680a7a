use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multilinear::{three_form_from_map, KForm, TorsionComponents, TorsionTensor, Vector};
use crate::sampling;
use crate::torus::{
    default_times, random_field, torsion_parts, ConstantTorsion, FieldKind, PeriodicField,
    TorusGrid,
};

/// Constant torsion given by its components; missing parts are zero.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantSpec {
    /// 3-form coefficients keyed by 1-based increasing triples "a,b,c"
    #[serde(rename = "T", default)]
    pub t: BTreeMap<String, f64>,
    #[serde(rename = "V", default, skip_serializing_if = "Option::is_none")]
    pub v: Option<Vec<f64>>,
    /// Cartan-type part as a row-major n³ array
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileName {
    /// every component an independent band-limited trigonometric polynomial
    BandLimited,
    /// the Cartan-type part of a band-limited field
    Cartan,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomProfile {
    pub profile: ProfileName,
    #[serde(default = "default_bandwidth")]
    pub bandwidth: usize,
    #[serde(default = "default_amplitude")]
    pub amplitude: f64,
}

fn default_bandwidth() -> usize {
    2
}

fn default_amplitude() -> f64 {
    0.5
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TorsionSpec {
    Constant(ConstantSpec),
    Random(RandomProfile),
}

impl Default for TorsionSpec {
    fn default() -> Self {
        TorsionSpec::Constant(ConstantSpec::default())
    }
}

/// Run parameters shared by the `heat-fit` and `holst` commands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_n")]
    pub n: usize,
    #[serde(default)]
    pub grid: TorusGrid,
    #[serde(default)]
    pub torsion: TorsionSpec,
    #[serde(default = "default_one")]
    pub gamma: f64,
    #[serde(rename = "G", default = "default_one")]
    pub g_newton: f64,
    #[serde(default = "default_times")]
    pub ts: Vec<f64>,
    /// mode cutoff; chosen from the tail bound when absent
    #[serde(rename = "K", default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

fn default_seed() -> u64 {
    42
}

fn default_n() -> usize {
    4
}

fn default_one() -> f64 {
    1.0
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: default_seed(),
            n: default_n(),
            grid: TorusGrid::default(),
            torsion: TorsionSpec::default(),
            gamma: 1.0,
            g_newton: 1.0,
            ts: default_times(),
            cutoff: None,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Numeric constraints of every downstream operation.
    pub fn validate(&self) -> Result<()> {
        if self.n != 4 {
            return Err(Error::RequiresFourDimensions(self.n));
        }
        if self.gamma == 0.0 || !self.gamma.is_finite() {
            return Err(Error::invalid("gamma must be finite and nonzero"));
        }
        if !(self.g_newton.is_finite() && self.g_newton > 0.0) {
            return Err(Error::invalid(format!(
                "G must be positive, got {}",
                self.g_newton
            )));
        }
        if let Some(bad) = self.ts.iter().find(|t| !(t.is_finite() && **t > 0.0)) {
            return Err(Error::invalid(format!(
                "heat times must be positive, got {bad}"
            )));
        }
        if self.cutoff == Some(0) {
            return Err(Error::invalid("K must be at least 1"));
        }
        match &self.torsion {
            TorsionSpec::Random(r) => {
                if r.bandwidth > self.grid.band_limit() {
                    return Err(Error::invalid(format!(
                        "bandwidth {} exceeds the grid band limit {}",
                        r.bandwidth,
                        self.grid.band_limit()
                    )));
                }
                if !r.amplitude.is_finite() {
                    return Err(Error::invalid("amplitude must be finite"));
                }
            }
            TorsionSpec::Constant(c) => {
                if c.v.as_ref().is_some_and(|v| v.len() != self.n) {
                    return Err(Error::invalid(format!("V needs {} components", self.n)));
                }
                if c.s.as_ref().is_some_and(|s| s.len() != self.n.pow(3)) {
                    return Err(Error::invalid(format!("S needs {} entries", self.n.pow(3))));
                }
            }
        }
        Ok(())
    }

    /// The constant torsion components; errors for random profiles. An S
    /// outside the Cartan subspace is an invariant violation.
    pub fn constant_components(&self) -> Result<TorsionComponents> {
        let TorsionSpec::Constant(c) = &self.torsion else {
            return Err(Error::invalid("this command needs a constant torsion spec"));
        };
        let n = self.n;
        let t = three_form_from_map(n, &c.t)?;
        let v = Vector::new(c.v.clone().unwrap_or_else(|| vec![0.0; n]));
        let s = match &c.s {
            Some(s) => TorsionTensor::new(n, s.clone())?,
            None => TorsionTensor::zero(n)?,
        };
        TorsionComponents::from_parts(v, t, s)
    }

    pub fn constant_torsion(&self) -> Result<ConstantTorsion> {
        let c = self.constant_components()?;
        ConstantTorsion::new(c.three_form, c.vector)
    }

    /// The torsion field on the configured grid.
    pub fn torsion_field(&self) -> Result<PeriodicField> {
        match &self.torsion {
            TorsionSpec::Constant(_) => {
                let c = self.constant_components()?;
                PeriodicField::constant_torsion(
                    self.grid,
                    &crate::multilinear::recompose_torsion(&c)?,
                )
            }
            TorsionSpec::Random(r) => {
                let mut rng = sampling::rng(self.seed);
                let a = random_field(
                    &mut rng,
                    self.grid,
                    FieldKind::Torsion,
                    r.bandwidth,
                    r.amplitude,
                )?;
                match r.profile {
                    ProfileName::BandLimited => Ok(a),
                    ProfileName::Cartan => Ok(torsion_parts(&a)?.cartan),
                }
            }
        }
    }

    /// T₀ as a 3-form, for reporting.
    pub fn three_form(&self) -> Result<KForm> {
        Ok(self.constant_components()?.three_form)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_round_trip() {
        let cfg = RunConfig::from_json("{}").unwrap();
        assert_eq!(cfg, RunConfig::default());
        let text = r#"{"seed":1,"torsion":{"constant":{"T":{"1,2,3":0.3},"V":[0,0,0,0.2]}},"gamma":-1,"G":7}"#;
        let cfg = RunConfig::from_json(text).unwrap();
        let ct = cfg.constant_torsion().unwrap();
        assert_eq!(ct.t.eval(&[0, 1, 2]).unwrap(), 0.3);
        assert_eq!(ct.v[3], 0.2);
        let again = RunConfig::from_json(&serde_json::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(again, cfg);
    }

    #[test]
    fn validation() {
        for bad in [
            r#"{"gamma":0}"#,
            r#"{"G":-1}"#,
            r#"{"ts":[0.01,-0.02,0.03]}"#,
            r#"{"n":5}"#,
            r#"{"grid":{"L":1,"N":7}}"#,
            r#"{"K":0}"#,
            r#"{"torsion":{"random":{"profile":"band_limited","bandwidth":9}}}"#,
            r#"{"unknown":1}"#,
        ] {
            assert!(RunConfig::from_json(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn cartan_spec_outside_subspace_is_invariant_error() {
        let mut s = vec![0.0; 64];
        s[16 + 2 * 4 + 3] = 1.0;
        s[16 + 3 * 4 + 2] = -1.0;
        let cfg = RunConfig {
            torsion: TorsionSpec::Constant(ConstantSpec {
                s: Some(s),
                ..Default::default()
            }),
            ..Default::default()
        };
        assert!(matches!(
            cfg.constant_components(),
            Err(Error::Invariant { .. })
        ));
    }
}
