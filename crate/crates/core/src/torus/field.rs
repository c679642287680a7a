use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::grid::{Spectral, TorusGrid};
use crate::error::{Error, Result};
use crate::multilinear::{binomial, KForm, TorsionTensor, Vector};
use crate::sampling::normal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Scalar,
    Vector,
    Form(usize),
    /// A_{xyz}, 64 components row-major over (x, y, z)
    Torsion,
    /// four complex components stored as (re, im) pairs
    Spinor,
}

impl FieldKind {
    pub fn components(self) -> usize {
        match self {
            FieldKind::Scalar => 1,
            FieldKind::Vector => 4,
            FieldKind::Form(k) => binomial(4, k),
            FieldKind::Torsion => 64,
            FieldKind::Spinor => 8,
        }
    }

    fn validate(self) -> Result<()> {
        match self {
            FieldKind::Form(k) if k > 4 => {
                Err(Error::invalid(format!("no {k}-forms on a 4-torus")))
            }
            _ => Ok(()),
        }
    }
}

impl std::fmt::Display for FieldKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldKind::Scalar => write!(f, "scalar"),
            FieldKind::Vector => write!(f, "vector"),
            FieldKind::Form(k) => write!(f, "{k}-form"),
            FieldKind::Torsion => write!(f, "torsion"),
            FieldKind::Spinor => write!(f, "spinor"),
        }
    }
}

/// Samples of a tensor or spinor field on a [`TorusGrid`], stored one array
/// per component.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicField {
    grid: TorusGrid,
    kind: FieldKind,
    comps: Vec<Vec<f64>>,
}

/// Wire form: `data` is row-major over (j₁, j₂, j₃, j₄, component).
#[derive(Serialize, Deserialize)]
struct FieldJson {
    grid: TorusGrid,
    kind: FieldKind,
    data: Vec<f64>,
}

impl Serialize for PeriodicField {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let mut data = Vec::with_capacity(self.comps.len() * self.grid.points());
        for p in 0..self.grid.points() {
            for c in &self.comps {
                data.push(c[p]);
            }
        }
        FieldJson {
            grid: self.grid,
            kind: self.kind,
            data,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PeriodicField {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = FieldJson::deserialize(deserializer)?;
        raw.kind.validate().map_err(D::Error::custom)?;
        let m = raw.kind.components();
        let points = raw.grid.points();
        if raw.data.len() != m * points {
            return Err(D::Error::custom(format!(
                "{} field on {}^4 grid needs {} values, got {}",
                raw.kind,
                raw.grid.size(),
                m * points,
                raw.data.len()
            )));
        }
        let comps = (0..m)
            .map(|c| (0..points).map(|p| raw.data[p * m + c]).collect())
            .collect();
        let field = PeriodicField {
            grid: raw.grid,
            kind: raw.kind,
            comps,
        };
        field.check_invariants().map_err(D::Error::custom)?;
        Ok(field)
    }
}

impl PeriodicField {
    pub fn zeros(grid: TorusGrid, kind: FieldKind) -> Result<Self> {
        kind.validate()?;
        Ok(Self {
            grid,
            kind,
            comps: vec![vec![0.0; grid.points()]; kind.components()],
        })
    }

    /// Builds a field from per-component arrays.
    pub fn from_components(grid: TorusGrid, kind: FieldKind, comps: Vec<Vec<f64>>) -> Result<Self> {
        kind.validate()?;
        if comps.len() != kind.components() || comps.iter().any(|c| c.len() != grid.points()) {
            return Err(Error::invalid(format!(
                "component arrays do not fit a {kind} field on this grid"
            )));
        }
        let f = Self { grid, kind, comps };
        f.check_invariants()?;
        Ok(f)
    }

    /// Samples `f(x, out)` at every grid point; `out` has one slot per component.
    pub fn from_fn(
        grid: TorusGrid,
        kind: FieldKind,
        mut f: impl FnMut([f64; 4], &mut [f64]),
    ) -> Result<Self> {
        let mut field = Self::zeros(grid, kind)?;
        let mut buf = vec![0.0; kind.components()];
        for p in 0..grid.points() {
            f(grid.coordinates(p), &mut buf);
            for (c, v) in buf.iter().enumerate() {
                field.comps[c][p] = *v;
            }
        }
        field.check_invariants()?;
        Ok(field)
    }

    pub fn constant_form(grid: TorusGrid, form: &KForm) -> Result<Self> {
        if form.n() != 4 {
            return Err(Error::RequiresFourDimensions(form.n()));
        }
        Self::from_fn(grid, FieldKind::Form(form.degree()), |_, out| {
            out.copy_from_slice(form.coeffs())
        })
    }

    pub fn constant_vector(grid: TorusGrid, v: &Vector) -> Result<Self> {
        if v.n() != 4 {
            return Err(Error::RequiresFourDimensions(v.n()));
        }
        Self::from_fn(grid, FieldKind::Vector, |_, out| {
            out.copy_from_slice(v.components())
        })
    }

    pub fn constant_torsion(grid: TorusGrid, a: &TorsionTensor) -> Result<Self> {
        if a.n() != 4 {
            return Err(Error::RequiresFourDimensions(a.n()));
        }
        Self::from_fn(grid, FieldKind::Torsion, |_, out| {
            out.copy_from_slice(a.data())
        })
    }

    pub fn grid(&self) -> TorusGrid {
        self.grid
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn component(&self, c: usize) -> &[f64] {
        &self.comps[c]
    }

    pub(crate) fn component_mut(&mut self, c: usize) -> &mut [f64] {
        &mut self.comps[c]
    }

    fn check_invariants(&self) -> Result<()> {
        if self.kind == FieldKind::Torsion {
            let mut bad = Vec::new();
            let mut defect: f64 = 0.0;
            for x in 0..4 {
                for y in 0..4 {
                    for z in y..4 {
                        let (i, j) = (x * 16 + y * 4 + z, x * 16 + z * 4 + y);
                        let worst = self.comps[i]
                            .iter()
                            .zip(&self.comps[j])
                            .fold(0.0, |m: f64, (a, b)| m.max((a + b).abs()));
                        if worst != 0.0 {
                            bad.push([x, y, z]);
                            defect = defect.max(worst);
                        }
                    }
                }
            }
            if !bad.is_empty() {
                return Err(Error::Invariant {
                    what: "antisymmetry A_xyz = -A_xzy at every grid point",
                    indices: bad,
                    defect,
                });
            }
        }
        if self.comps.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::invalid("field samples must be finite"));
        }
        Ok(())
    }

    fn require(&self, kind: FieldKind) -> Result<()> {
        if self.kind != kind {
            return Err(Error::FieldKind {
                expected: kind.to_string(),
                found: self.kind.to_string(),
            });
        }
        Ok(())
    }

    pub(crate) fn require_kind(&self, kind: FieldKind) -> Result<()> {
        self.require(kind)
    }

    pub(crate) fn form_degree(&self) -> Result<usize> {
        match self.kind {
            FieldKind::Form(k) => Ok(k),
            FieldKind::Scalar => Ok(0),
            other => Err(Error::FieldKind {
                expected: "form".into(),
                found: other.to_string(),
            }),
        }
    }

    pub fn form_at(&self, p: usize) -> Result<KForm> {
        let k = self.form_degree()?;
        KForm::from_coeffs(4, k, self.comps.iter().map(|c| c[p]).collect())
    }

    pub fn vector_at(&self, p: usize) -> Result<Vector> {
        self.require(FieldKind::Vector)?;
        Ok(Vector::new(self.comps.iter().map(|c| c[p]).collect()))
    }

    pub fn torsion_at(&self, p: usize) -> Result<TorsionTensor> {
        self.require(FieldKind::Torsion)?;
        TorsionTensor::new(4, self.comps.iter().map(|c| c[p]).collect())
    }

    pub fn spinor_at(&self, p: usize) -> Result<[Complex64; 4]> {
        self.require(FieldKind::Spinor)?;
        Ok(std::array::from_fn(|c| {
            Complex64::new(self.comps[2 * c][p], self.comps[2 * c + 1][p])
        }))
    }

    /// The four complex component arrays of a spinor field.
    pub fn spinor_components(&self) -> Result<[Vec<Complex64>; 4]> {
        self.require(FieldKind::Spinor)?;
        Ok(std::array::from_fn(|c| {
            self.comps[2 * c]
                .iter()
                .zip(&self.comps[2 * c + 1])
                .map(|(&re, &im)| Complex64::new(re, im))
                .collect()
        }))
    }

    pub fn spinor_from_components(grid: TorusGrid, psi: &[Vec<Complex64>; 4]) -> Result<Self> {
        let mut comps = Vec::with_capacity(8);
        for c in psi {
            if c.len() != grid.points() {
                return Err(Error::invalid(
                    "spinor component length does not match the grid",
                ));
            }
            comps.push(c.iter().map(|z| z.re).collect());
            comps.push(c.iter().map(|z| z.im).collect());
        }
        Self::from_components(grid, FieldKind::Spinor, comps)
    }

    /// ∫ f dvol = (L/N)⁴ Σ samples, for a scalar or a 4-form.
    pub fn integrate(&self) -> Result<f64> {
        match self.kind {
            FieldKind::Scalar | FieldKind::Form(0) | FieldKind::Form(4) => {
                Ok(self.comps[0].iter().sum::<f64>() * self.grid.cell_volume())
            }
            other => Err(Error::FieldKind {
                expected: "scalar or 4-form".into(),
                found: other.to_string(),
            }),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.comps.iter().flatten().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &PeriodicField) -> Result<f64> {
        if self.kind != other.kind || self.grid != other.grid {
            return Err(Error::FieldKind {
                expected: self.kind.to_string(),
                found: other.kind.to_string(),
            });
        }
        Ok(self
            .comps
            .iter()
            .flatten()
            .zip(other.comps.iter().flatten())
            .fold(0.0, |m, (a, b)| m.max((a - b).abs())))
    }

    pub fn scale(&self, s: f64) -> PeriodicField {
        PeriodicField {
            grid: self.grid,
            kind: self.kind,
            comps: self
                .comps
                .iter()
                .map(|c| c.iter().map(|v| v * s).collect())
                .collect(),
        }
    }

    pub fn add(&self, other: &PeriodicField) -> Result<PeriodicField> {
        if self.kind != other.kind || self.grid != other.grid {
            return Err(Error::FieldKind {
                expected: self.kind.to_string(),
                found: other.kind.to_string(),
            });
        }
        Ok(PeriodicField {
            grid: self.grid,
            kind: self.kind,
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        })
    }

    pub fn sub(&self, other: &PeriodicField) -> Result<PeriodicField> {
        self.add(&other.scale(-1.0))
    }

    /// Largest relative spectral magnitude beyond |k_i| ≤ limit over all components.
    pub fn out_of_band(&self, limit: usize) -> f64 {
        let sp = Spectral::new(self.grid);
        self.comps
            .iter()
            .map(|c| sp.out_of_band(c, limit))
            .fold(0.0, f64::max)
    }
}

/// ⟨ψ, φ⟩_{L²} = ∫ Σ_c conj(ψ_c) φ_c dvol.
pub fn l2_inner(psi: &PeriodicField, phi: &PeriodicField) -> Result<Complex64> {
    if psi.grid != phi.grid {
        return Err(Error::invalid("spinor fields live on different grids"));
    }
    let a = psi.spinor_components()?;
    let b = phi.spinor_components()?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (x, y) in a.iter().zip(&b) {
        for (u, v) in x.iter().zip(y) {
            acc += u.conj() * v;
        }
    }
    Ok(acc * psi.grid.cell_volume())
}

/// One real trigonometric polynomial with Fourier support |k_i| ≤ bandwidth,
/// normalized so that samples have unit variance times `amplitude²`.
fn random_band_limited_samples<R: Rng + ?Sized>(
    rng: &mut R,
    sp: &Spectral,
    grid: TorusGrid,
    bandwidth: usize,
    amplitude: f64,
) -> Vec<f64> {
    let mut spec = vec![Complex64::new(0.0, 0.0); grid.points()];
    let mut count = 0usize;
    for (p, v) in spec.iter_mut().enumerate() {
        let m = grid.multi_index(p);
        let inside = m.iter().all(|&mi| {
            !grid.is_nyquist(mi) && grid.wavenumber(mi).unsigned_abs() as usize <= bandwidth
        });
        if inside {
            *v = Complex64::new(normal(rng), normal(rng));
            count += 1;
        }
    }
    sp.inverse(&mut spec);
    // inverse already divides by N⁴; undo that and normalize by the mode count
    let s = amplitude * grid.points() as f64 / (count as f64).sqrt();
    spec.iter().map(|z| z.re * s).collect()
}

/// A random field whose every component is band-limited to |k_i| ≤ bandwidth.
/// Torsion fields are antisymmetric by construction.
pub fn random_field<R: Rng + ?Sized>(
    rng: &mut R,
    grid: TorusGrid,
    kind: FieldKind,
    bandwidth: usize,
    amplitude: f64,
) -> Result<PeriodicField> {
    if bandwidth > grid.band_limit() {
        return Err(Error::invalid(format!(
            "bandwidth {bandwidth} exceeds the grid band limit {}",
            grid.band_limit()
        )));
    }
    let sp = Spectral::new(grid);
    let mut field = PeriodicField::zeros(grid, kind)?;
    if kind == FieldKind::Torsion {
        for x in 0..4 {
            for y in 0..4 {
                for z in (y + 1)..4 {
                    let s = random_band_limited_samples(rng, &sp, grid, bandwidth, amplitude);
                    field.comps[x * 16 + z * 4 + y] = s.iter().map(|v| -v).collect();
                    field.comps[x * 16 + y * 4 + z] = s;
                }
            }
        }
    } else {
        for c in 0..kind.components() {
            field.comps[c] = random_band_limited_samples(rng, &sp, grid, bandwidth, amplitude);
        }
    }
    Ok(field)
}
