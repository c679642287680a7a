use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform grid on (ℝ/Lℤ)⁴ with N samples per axis. Points are ordered
/// row-major over (j₁, j₂, j₃, j₄), j₁ slowest.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GridJson", into = "GridJson")]
pub struct TorusGrid {
    l: f64,
    n: usize,
}

#[derive(Serialize, Deserialize)]
struct GridJson {
    #[serde(rename = "L")]
    l: f64,
    #[serde(rename = "N")]
    n: usize,
}

impl TryFrom<GridJson> for TorusGrid {
    type Error = Error;
    fn try_from(g: GridJson) -> Result<Self> {
        TorusGrid::new(g.l, g.n)
    }
}

impl From<TorusGrid> for GridJson {
    fn from(g: TorusGrid) -> Self {
        GridJson { l: g.l, n: g.n }
    }
}

impl Default for TorusGrid {
    fn default() -> Self {
        Self { l: 1.0, n: 16 }
    }
}

impl TorusGrid {
    pub fn new(l: f64, n: usize) -> Result<Self> {
        if !(l.is_finite() && l > 0.0) {
            return Err(Error::invalid(format!(
                "torus period must be positive, got {l}"
            )));
        }
        if n < 8 || !n.is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "grid size must be even and >= 8, got {n}"
            )));
        }
        Ok(Self { l, n })
    }

    pub fn period(&self) -> f64 {
        self.l
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> usize {
        self.n.pow(4)
    }

    /// Largest |k_i| retained by derivatives.
    pub fn band_limit(&self) -> usize {
        self.n / 2 - 1
    }

    /// Volume element per sample, (L/N)⁴.
    pub fn cell_volume(&self) -> f64 {
        (self.l / self.n as f64).powi(4)
    }

    pub fn multi_index(&self, p: usize) -> [usize; 4] {
        let n = self.n;
        [p / (n * n * n), (p / (n * n)) % n, (p / n) % n, p % n]
    }

    pub fn coordinates(&self, p: usize) -> [f64; 4] {
        let h = self.l / self.n as f64;
        self.multi_index(p).map(|j| j as f64 * h)
    }

    /// Signed integer wavenumber of FFT bin m; the Nyquist bin maps to 0
    /// so that derivatives annihilate it.
    pub fn wavenumber(&self, m: usize) -> i64 {
        let n = self.n;
        if 2 * m < n {
            m as i64
        } else if 2 * m == n {
            0
        } else {
            m as i64 - n as i64
        }
    }

    pub fn is_nyquist(&self, m: usize) -> bool {
        2 * m == self.n
    }
}

/// FFT plans for one grid size, applied axis by axis.
pub(crate) struct Spectral {
    grid: TorusGrid,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl Spectral {
    pub(crate) fn new(grid: TorusGrid) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            grid,
            forward: planner.plan_fft_forward(grid.n),
            inverse: planner.plan_fft_inverse(grid.n),
        }
    }

    pub(crate) fn grid(&self) -> TorusGrid {
        self.grid
    }

    fn transform(&self, data: &mut [Complex64], inverse: bool) {
        let n = self.grid.n;
        let fft = if inverse {
            &self.inverse
        } else {
            &self.forward
        };
        let mut line = vec![Complex64::new(0.0, 0.0); n];
        let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
        for axis in 0..4 {
            let stride = n.pow(3 - axis as u32);
            for base in 0..data.len() {
                // visit each line once: its first element has index 0 along `axis`
                if !(base / stride).is_multiple_of(n) {
                    continue;
                }
                for (j, v) in line.iter_mut().enumerate() {
                    *v = data[base + j * stride];
                }
                fft.process_with_scratch(&mut line, &mut scratch);
                for (j, v) in line.iter().enumerate() {
                    data[base + j * stride] = *v;
                }
            }
        }
        if inverse {
            let s = 1.0 / data.len() as f64;
            data.iter_mut().for_each(|v| *v *= s);
        }
    }

    pub(crate) fn forward(&self, data: &mut [Complex64]) {
        self.transform(data, false);
    }

    pub(crate) fn inverse(&self, data: &mut [Complex64]) {
        self.transform(data, true);
    }

    /// ∂_axis of complex samples.
    pub(crate) fn derivative_complex(&self, values: &[Complex64], axis: usize) -> Vec<Complex64> {
        let g = self.grid;
        let mut spec = values.to_vec();
        self.forward(&mut spec);
        let scale = 2.0 * std::f64::consts::PI / g.l;
        for (p, v) in spec.iter_mut().enumerate() {
            let k = g.wavenumber(g.multi_index(p)[axis]);
            *v *= Complex64::new(0.0, scale * k as f64);
        }
        self.inverse(&mut spec);
        spec
    }

    /// ∂_axis of real samples.
    pub(crate) fn derivative(&self, values: &[f64], axis: usize) -> Vec<f64> {
        let c: Vec<Complex64> = values.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.derivative_complex(&c, axis)
            .into_iter()
            .map(|z| z.re)
            .collect()
    }

    /// Largest spectral magnitude outside the band |k_i| ≤ limit, relative to
    /// the largest overall.
    pub(crate) fn out_of_band(&self, values: &[f64], limit: usize) -> f64 {
        let g = self.grid;
        let mut spec: Vec<Complex64> = values.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.forward(&mut spec);
        let mut inside: f64 = 0.0;
        let mut outside: f64 = 0.0;
        for (p, v) in spec.iter().enumerate() {
            let m = g.multi_index(p);
            let beyond = m
                .iter()
                .any(|&mi| g.is_nyquist(mi) || g.wavenumber(mi).unsigned_abs() as usize > limit);
            if beyond {
                outside = outside.max(v.norm());
            } else {
                inside = inside.max(v.norm());
            }
        }
        outside / inside.max(f64::MIN_POSITIVE)
    }
}
