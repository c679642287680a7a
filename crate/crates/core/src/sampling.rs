//! Seeded random inputs for property checks. Every generator draws from a
//! ChaCha8 stream, so a (seed, call sequence) pair is reproducible across
//! platforms.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::clifford::PointData;
use crate::multilinear::{decompose_torsion, KForm, TorsionTensor, Vector};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// I.i.d. standard normal entries, antisymmetrized in the last two slots.
pub fn random_torsion<R: Rng + ?Sized>(rng: &mut R, n: usize) -> TorsionTensor {
    let raw: Vec<f64> = (0..n * n * n).map(|_| normal(rng)).collect();
    TorsionTensor::antisymmetrize(n, &raw).expect("dimension in range")
}

pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vector {
    Vector::new((0..n).map(|_| normal(rng)).collect())
}

pub fn random_form<R: Rng + ?Sized>(rng: &mut R, n: usize, degree: usize) -> KForm {
    let len = crate::multilinear::binomial(n, degree);
    KForm::from_coeffs(n, degree, (0..len).map(|_| normal(rng)).collect()).expect("degree in range")
}

/// The Cartan-type part of a random tensor.
pub fn random_cartan<R: Rng + ?Sized>(rng: &mut R, n: usize) -> TorsionTensor {
    decompose_torsion(&random_torsion(rng, n)).cartan
}

/// Haar-distributed orthogonal matrix (row-major) from the QR factorization
/// of a Gaussian matrix, with the sign of R's diagonal absorbed into Q.
pub fn random_orthogonal<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let g = DMatrix::from_fn(n, n, |_, _| normal(rng));
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(q[(i, j)]);
        }
    }
    out
}

pub fn random_point_data<R: Rng + ?Sized>(rng: &mut R) -> PointData {
    let rg = normal(rng);
    let div_v = normal(rng);
    let v = random_vector(rng, 4);
    let t = random_form(rng, 4, 3);
    let dt = KForm::top(4, normal(rng)).expect("n = 4");
    PointData::new(rg, div_v, v, t, dt).expect("finite samples")
}
