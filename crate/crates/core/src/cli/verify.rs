//! Identity suites behind `holst verify`. Every check draws its random
//! instances from its own seeded stream, so a check's residual depends only
//! on (seed, count) and not on which other checks ran before it.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::clifford::{
    beta2_density, beta2_holst_residual, dirac_torsion_symbol, dirac_torsion_symbol_from_parts,
    trace_pairings, CliffordRep, SpinorEndomorphism,
};
use crate::error::{Error, Result};
use crate::multilinear::{
    cartan_defect, decompose_torsion, holst_density, holst_term_pointwise, recompose_torsion,
    scalar_curvature, star_last_pair, theta_squared, theta_squared_closed_form,
    translational_chern_simons, KForm, PointGeometry, TorsionComponents, TorsionTensor,
};
use crate::sampling::{
    self, normal, random_cartan, random_form, random_orthogonal, random_point_data, random_torsion,
    random_vector,
};
use crate::torus::{
    default_times, dirac_apply, divergence, fit_heat_coefficients, holst_action, l2_inner,
    lichnerowicz_residual, mode_cutoff, nieh_yan, random_field, spectral_d,
    spectral_holst_from_fit, torsion_parts, ConstantTorsion, FieldKind, PeriodicField, TorusGrid,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Pointwise,
    Clifford,
    Fields,
    All,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pointwise" => Ok(Suite::Pointwise),
            "clifford" => Ok(Suite::Clifford),
            "fields" => Ok(Suite::Fields),
            "all" => Ok(Suite::All),
            _ => Err(Error::invalid(format!(
                "unknown suite {s:?} (expected pointwise, clifford, fields or all)"
            ))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Pointwise => "pointwise",
            Suite::Clifford => "clifford",
            Suite::Fields => "fields",
            Suite::All => "all",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: &'static str,
    /// the identity being checked, written out
    pub anchor: &'static str,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub seed: u64,
    pub count: usize,
    pub checks: Vec<Check>,
    pub distinct_anchors: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub suite: Suite,
    pub seed: u64,
    pub count: usize,
    /// replace every tolerance by −1 so that all checks fail
    pub corrupt_tolerance: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            suite: Suite::All,
            seed: 42,
            count: 100,
            corrupt_tolerance: false,
        }
    }
}

/// Dimensions exercised by the dimension-generic pointwise checks.
pub const POINTWISE_DIMENSIONS: [usize; 4] = [3, 4, 5, 6];

/// Band limit of the random fields; products of three stay below N/2 on 16⁴.
const FIELD_BANDWIDTH: usize = 2;

pub fn run_verify(opts: &VerifyOptions) -> Result<VerifyReport> {
    if opts.count == 0 {
        return Err(Error::invalid("count must be at least 1"));
    }
    let mut c = Collector {
        seed: opts.seed,
        corrupt: opts.corrupt_tolerance,
        checks: Vec::new(),
    };
    let (pw, cl, fi) = match opts.suite {
        Suite::Pointwise => (true, false, false),
        Suite::Clifford => (false, true, false),
        Suite::Fields => (false, false, true),
        Suite::All => (true, true, true),
    };
    if pw {
        pointwise_suite(&mut c, opts.count)?;
    }
    if cl {
        clifford_suite(&mut c, opts.count)?;
    }
    if fi {
        fields_suite(&mut c, field_instances(opts.count))?;
    }
    let mut anchors: Vec<&str> = c.checks.iter().map(|k| k.anchor).collect();
    anchors.sort_unstable();
    anchors.dedup();
    let pass = c.checks.iter().all(|k| k.pass);
    Ok(VerifyReport {
        suite: opts.suite,
        seed: opts.seed,
        count: opts.count,
        distinct_anchors: anchors.len(),
        checks: c.checks,
        pass,
    })
}

/// Grid-level instances per check: ⌈count/100⌉, at most 3.
pub fn field_instances(count: usize) -> usize {
    count.div_ceil(100).clamp(1, 3)
}

struct Collector {
    seed: u64,
    corrupt: bool,
    checks: Vec<Check>,
}

impl Collector {
    /// Per-check seed: FNV-1a of the id mixed into the suite seed.
    fn seed_for(&self, id: &str) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in id.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        self.seed ^ h
    }

    fn rng(&self, id: &str) -> ChaCha8Rng {
        sampling::rng(self.seed_for(id))
    }

    fn record(
        &mut self,
        id: &'static str,
        anchor: &'static str,
        tolerance: f64,
        max_residual: f64,
    ) {
        let tolerance = if self.corrupt { -1.0 } else { tolerance };
        self.checks.push(Check {
            id,
            anchor,
            max_residual,
            tolerance,
            pass: max_residual <= tolerance,
            seed: self.seed_for(id),
        });
    }

    /// Runs `f` on `count` instances drawn from the check's stream and
    /// records the worst residual.
    fn run(
        &mut self,
        id: &'static str,
        anchor: &'static str,
        tolerance: f64,
        count: usize,
        mut f: impl FnMut(&mut ChaCha8Rng) -> Result<f64>,
    ) -> Result<()> {
        let mut rng = self.rng(id);
        let mut worst = 0.0;
        for _ in 0..count {
            worst = worse(worst, f(&mut rng)?);
        }
        self.record(id, anchor, tolerance, worst);
        Ok(())
    }
}

/// max that lets NaN win, so a NaN residual can never pass.
fn worse(a: f64, b: f64) -> f64 {
    if b.is_nan() || b > a {
        b
    } else {
        a
    }
}

fn relative(diff: f64, scale: f64) -> f64 {
    diff / scale.abs().max(1.0)
}

fn unit_torsion(rng: &mut ChaCha8Rng, n: usize) -> TorsionTensor {
    let a = random_torsion(rng, n);
    let norm = a.norm_sq().sqrt();
    a.scale(1.0 / norm)
}

fn parts(c: &TorsionComponents) -> [TorsionTensor; 3] {
    [c.vector_part(), c.three_form_part(), c.cartan.clone()]
}

fn nonzero_gamma(rng: &mut ChaCha8Rng) -> f64 {
    let g = 0.25 + normal(rng).abs();
    if rng.random::<bool>() {
        g
    } else {
        -g
    }
}

fn random_geometry(rng: &mut ChaCha8Rng, a: &TorsionTensor) -> Result<PointGeometry> {
    Ok(PointGeometry {
        rg: normal(rng),
        div_v: normal(rng),
        components: decompose_torsion(a),
        dt: KForm::top(4, normal(rng))?,
    })
}

/// Replaces S by S + δ in a decomposition.
fn with_cartan_shift(c: &TorsionComponents, delta: &TorsionTensor) -> Result<TorsionComponents> {
    TorsionComponents::from_parts(c.vector.clone(), c.three_form.clone(), c.cartan.add(delta))
}

fn pointwise_suite(c: &mut Collector, count: usize) -> Result<()> {
    c.run(
        "decomposition.round_trip",
        "A = V-part + T-part + S with unique (V, T, S)",
        1e-12,
        count,
        |rng| {
            let mut worst: f64 = 0.0;
            for n in POINTWISE_DIMENSIONS {
                let a = unit_torsion(rng, n);
                worst = worse(
                    worst,
                    recompose_torsion(&decompose_torsion(&a))?.max_abs_diff(&a),
                );
            }
            Ok(worst)
        },
    )?;
    c.run(
        "decomposition.orthogonality",
        "<V-part,T-part> = <V-part,S> = <T-part,S> = 0, <S+,S-> = 0",
        1e-12,
        count,
        |rng| {
            let mut worst: f64 = 0.0;
            for n in POINTWISE_DIMENSIONS {
                let d = decompose_torsion(&unit_torsion(rng, n));
                let [v, t, s] = parts(&d);
                for (x, y) in [(&v, &t), (&v, &s), (&t, &s)] {
                    worst = worse(worst, x.inner(y)?.abs());
                }
                if let Some((p, m)) = &d.chiral {
                    worst = worse(worst, p.inner(m)?.abs());
                }
            }
            Ok(worst)
        },
    )?;
    c.run(
        "decomposition.pythagoras",
        "‖A‖² = ‖V-part‖² + ‖T-part‖² + ‖S‖²",
        1e-12,
        count,
        |rng| {
            let mut worst: f64 = 0.0;
            for n in POINTWISE_DIMENSIONS {
                let a = unit_torsion(rng, n);
                let [v, t, s] = parts(&decompose_torsion(&a));
                worst = worse(
                    worst,
                    (a.norm_sq() - v.norm_sq() - t.norm_sq() - s.norm_sq()).abs(),
                );
            }
            Ok(worst)
        },
    )?;
    c.run(
        "decomposition.equivariance",
        "decompose(α·A) = α·decompose(A) for α ∈ O(n)",
        1e-10,
        count,
        |rng| {
            let mut worst: f64 = 0.0;
            for n in POINTWISE_DIMENSIONS {
                let a = unit_torsion(rng, n);
                let q = random_orthogonal(rng, n);
                let rotated_first = parts(&decompose_torsion(&a.rotated(&q)));
                let decomposed_first = parts(&decompose_torsion(&a));
                for (x, y) in rotated_first.iter().zip(&decomposed_first) {
                    worst = worse(worst, x.max_abs_diff(&y.rotated(&q)));
                }
            }
            Ok(worst)
        },
    )?;
    c.run(
        "decomposition.cartan_subspace",
        "S_xyz + S_yzx + S_zxy = 0 and Σ_a S_aaz = 0",
        1e-12,
        count,
        |rng| {
            let mut worst: f64 = 0.0;
            for n in POINTWISE_DIMENSIONS {
                worst = worse(
                    worst,
                    cartan_defect(&decompose_torsion(&unit_torsion(rng, n)).cartan).0,
                );
            }
            Ok(worst)
        },
    )?;
    c.run(
        "hodge.pairing",
        "ω ∧ ∗η = <ω,η> dvol",
        1e-12,
        count,
        |rng| {
            let mut worst: f64 = 0.0;
            for n in POINTWISE_DIMENSIONS {
                let k = rng.random_range(0..=n);
                let omega = random_form(rng, n, k);
                let eta = random_form(rng, n, k);
                let lhs = omega.wedge(&eta.hodge())?.top_value();
                let rhs = omega.inner(&eta)?;
                worst = worse(worst, relative((lhs - rhs).abs(), rhs));
            }
            Ok(worst)
        },
    )?;
    c.run(
        "selfdual.split",
        "S = S+ + S-, ⋆S± = ±S±, S± Cartan-type",
        1e-12,
        count,
        |rng| {
            let d = decompose_torsion(&unit_torsion(rng, 4));
            let (p, m) = d.chiral.as_ref().expect("n = 4");
            Ok([
                p.add(m).max_abs_diff(&d.cartan),
                star_last_pair(p)?.max_abs_diff(p),
                star_last_pair(m)?.max_abs_diff(&m.scale(-1.0)),
                cartan_defect(p).0,
                cartan_defect(m).0,
            ]
            .into_iter()
            .fold(0.0, worse))
        },
    )?;
    c.run(
        "chern_simons.translational",
        "C_TT = Σ_a Θ^a ∧ θ^a = 6T",
        1e-12,
        count,
        |rng| {
            let a = unit_torsion(rng, 4);
            let t = decompose_torsion(&a).three_form;
            Ok(translational_chern_simons(&a)?.max_abs_diff(&t.scale(6.0)))
        },
    )?;
    c.run(
        "theta_squared.closed_form",
        "Σ_a Θ^a ∧ Θ^a = 12<T,∗V♭>₃ dvol + ½(‖S+‖² − ‖S-‖²) dvol",
        1e-12,
        count,
        |rng| {
            let a = unit_torsion(rng, 4);
            let closed = theta_squared_closed_form(&decompose_torsion(&a))?;
            Ok(theta_squared(&a)?.max_abs_diff(&closed))
        },
    )?;
    c.run(
        "holst_term.pointwise_nieh_yan",
        "C_H = −Σ_a Θ^a ∧ Θ^a when dT = 0",
        1e-12,
        count,
        |rng| {
            let a = unit_torsion(rng, 4);
            let ch = holst_term_pointwise(&decompose_torsion(&a), &KForm::zero(4, 4)?)?;
            Ok(ch.max_abs_diff(&theta_squared(&a)?.scale(-1.0)))
        },
    )?;
    c.run(
        "holst_density.definition",
        "ρ_γ dvol = R dvol − (1/γ) C_H",
        1e-12,
        count,
        |rng| {
            let a = unit_torsion(rng, 4);
            let gamma = nonzero_gamma(rng);
            let p = random_geometry(rng, &a)?;
            let rho = holst_density(gamma, &p)?.top_value();
            let ch = holst_term_pointwise(&p.components, &p.dt)?.top_value();
            let want = scalar_curvature(&p) - ch / gamma;
            Ok(relative((rho - want).abs(), want))
        },
    )?;
    c.run(
        "holst_density.degeneracy",
        "ρ_1 does not depend on S-, ρ_(-1) does not depend on S+",
        1e-12,
        count,
        |rng| {
            let a = unit_torsion(rng, 4);
            let p = random_geometry(rng, &a)?;
            let shift = decompose_torsion(&random_cartan(rng, 4));
            let (plus, minus) = shift.chiral.as_ref().expect("n = 4");
            let mut worst: f64 = 0.0;
            for (gamma, delta) in [(1.0, minus), (-1.0, plus)] {
                let base = holst_density(gamma, &p)?.top_value();
                let moved = PointGeometry {
                    components: with_cartan_shift(&p.components, delta)?,
                    ..p.clone()
                };
                let after = holst_density(gamma, &moved)?.top_value();
                worst = worse(worst, relative((after - base).abs(), base));
            }
            Ok(worst)
        },
    )?;
    Ok(())
}

fn reps() -> [CliffordRep; 2] {
    [CliffordRep::standard(), CliffordRep::alternative()]
}

fn clifford_suite(c: &mut Collector, count: usize) -> Result<()> {
    let [standard, alternative] = reps();
    c.run(
        "clifford.relations",
        "e_a·e_b + e_b·e_a = −2δ_ab, e_a skew-adjoint",
        1e-12,
        1,
        |_| {
            let mut worst: f64 = 0.0;
            for rep in reps() {
                worst = worse(worst, rep.relation_defect());
                for a in 0..4 {
                    let g = rep.generator(a);
                    worst = worse(worst, (&g.adjoint() + g).max_abs());
                }
            }
            Ok(worst)
        },
    )?;
    c.run(
        "clifford.beta0",
        "β₀ = ½Tr(1 − γ₅) = 2",
        0.0,
        1,
        |_| Ok((standard.left_projector().trace().re - 2.0).abs()),
    )?;
    c.run(
        "clifford.form_adjointness",
        "3-forms act self-adjointly, vectors skew-adjointly, f·dvol acts as f·γ₅",
        1e-12,
        count,
        |rng| {
            let mut worst: f64 = 0.0;
            let t = random_form(rng, 4, 3);
            let v = random_vector(rng, 4);
            let f = normal(rng);
            for rep in reps() {
                let rt = rep.rep_form(&t)?;
                let rv = rep.rep_vector(&v)?;
                worst = worse(worst, (&rt - &rt.adjoint()).max_abs());
                worst = worse(worst, (&rv + &rv.adjoint()).max_abs());
                let top = rep.rep_form(&KForm::top(4, f)?)?;
                worst = worse(worst, (&top - &rep.chirality().scale(f)).max_abs());
            }
            Ok(worst)
        },
    )?;
    c.run(
        "clifford.trace_pairings",
        "Tr(TT') = 4<T,T'>₃, Tr(TVγ₅) = −4<T,∗V♭>₃, Tr(dTγ₅) = 4dT; Tr(dT) = Tr(TV) = Tr(V⌟T) = Tr(V⌟Tγ₅) = 0",
        1e-12,
        count,
        |rng| {
            let (t, t2, v) = (random_form(rng, 4, 3), random_form(rng, 4, 3), random_vector(rng, 4));
            let dt = KForm::top(4, normal(rng))?;
            let mut worst: f64 = 0.0;
            for rep in reps() {
                let p = trace_pairings(&rep, &t, &t2, &v, &dt)?;
                for (got, want) in [
                    p.three_forms,
                    p.mixed_chiral,
                    p.top_chiral,
                    p.contraction_chiral,
                    p.top,
                    p.mixed,
                    p.contraction,
                ] {
                    worst = worse(worst, relative((got - want).abs(), want));
                }
                worst = worse(worst, p.imaginary);
            }
            Ok(worst)
        },
    )?;
    c.run(
        "clifford.vector_chirality",
        "V·γ₅ = −∗V♭",
        1e-12,
        count,
        |rng| {
            let v = random_vector(rng, 4);
            let mut worst: f64 = 0.0;
            for rep in reps() {
                let lhs = &rep.rep_vector(&v)? * rep.chirality();
                worst = worse(worst, (&lhs + &rep.rep_form(&v.flat().hodge())?).max_abs());
            }
            Ok(worst)
        },
    )?;
    c.run(
        "dirac.symbol",
        "¼Σ A_abc e_a·e_b·e_c = (3/2)T − (3/2)V",
        1e-12,
        count,
        |rng| {
            let a = random_torsion(rng, 4);
            let parts = decompose_torsion(&a);
            let mut worst: f64 = 0.0;
            for rep in reps() {
                let raw = dirac_torsion_symbol(&rep, &a)?;
                let mut want = rep.rep_form(&parts.three_form)?.scale(1.5);
                want.add_scaled(&rep.rep_vector(&parts.vector)?, -1.5);
                worst = worse(worst, (&raw - &want).max_abs());
            }
            Ok(worst)
        },
    )?;
    c.run(
        "dirac.cartan_invisibility",
        "the zero-order part of D does not change with the Cartan-type part S",
        1e-12,
        count,
        |rng| {
            let a = random_torsion(rng, 4);
            let without = a.sub(&decompose_torsion(&a).cartan);
            let mut worst: f64 = 0.0;
            for rep in reps() {
                let d: SpinorEndomorphism =
                    &dirac_torsion_symbol(&rep, &a)? - &dirac_torsion_symbol(&rep, &without)?;
                worst = worse(worst, d.max_abs());
                let from_parts =
                    dirac_torsion_symbol_from_parts(&rep, &decompose_torsion(&without))?;
                worst = worse(
                    worst,
                    (&dirac_torsion_symbol(&rep, &a)? - &from_parts).max_abs(),
                );
            }
            Ok(worst)
        },
    )?;
    c.run(
        "beta2.consistency",
        "½Tr((1 − γ₅)α₂) = −(1/6)(Rg − 9‖T‖² + 18divV − 54|V|² + 108<T,∗V♭>₃) + 3dT",
        1e-12,
        count,
        |rng| {
            let p = random_point_data(rng);
            let mut worst: f64 = 0.0;
            for rep in reps() {
                let b = beta2_density(&rep, &p)?;
                worst = worse(worst, relative(b.discrepancy(), b.closed_form));
            }
            Ok(worst)
        },
    )?;
    c.run(
        "beta2.holst",
        "β₂ dvol = −(1/6)ρ_1 dvol of the connection with torsion (3V, 3T, S = 0)",
        1e-12,
        count,
        |rng| {
            let p = random_point_data(rng);
            let mut worst: f64 = 0.0;
            for rep in reps() {
                let scale = beta2_density(&rep, &p)?.closed_form;
                worst = worse(worst, relative(beta2_holst_residual(&rep, &p)?, scale));
            }
            Ok(worst)
        },
    )?;
    c.run(
        "clifford.representation_independence",
        "traces and β₂ agree in unitarily equivalent representations",
        1e-12,
        count,
        |rng| {
            let p = random_point_data(rng);
            let t2 = random_form(rng, 4, 3);
            let b1 = beta2_density(&standard, &p)?.via_traces;
            let b2 = beta2_density(&alternative, &p)?.via_traces;
            let mut worst = relative((b1 - b2).abs(), b1);
            let p1 = trace_pairings(&standard, &p.t, &t2, &p.v, &p.dt)?;
            let p2 = trace_pairings(&alternative, &p.t, &t2, &p.v, &p.dt)?;
            for (x, y) in [
                (p1.three_forms, p2.three_forms),
                (p1.mixed_chiral, p2.mixed_chiral),
                (p1.top_chiral, p2.top_chiral),
            ] {
                worst = worse(worst, relative((x.0 - y.0).abs(), x.0));
            }
            Ok(worst)
        },
    )?;
    Ok(())
}

fn field_grid() -> TorusGrid {
    TorusGrid::default()
}

fn random_fields(rng: &mut ChaCha8Rng, kind: FieldKind, amplitude: f64) -> Result<PeriodicField> {
    random_field(rng, field_grid(), kind, FIELD_BANDWIDTH, amplitude)
}

/// Random constant torsion for the heat checks, small enough that the
/// default time window resolves β₂.
fn random_constant_torsion(rng: &mut ChaCha8Rng) -> Result<ConstantTorsion> {
    let t = random_form(rng, 4, 3).scale(0.15);
    let v = random_vector(rng, 4).scale(0.1);
    ConstantTorsion::new(t, v)
}

fn fields_suite(c: &mut Collector, instances: usize) -> Result<()> {
    let grid = field_grid();
    let band_scale = 2.0 * std::f64::consts::PI * FIELD_BANDWIDTH as f64 / grid.period();
    c.run("fields.d_squared", "d∘d = 0", 1e-12, instances, |rng| {
        let mut worst: f64 = 0.0;
        for k in [0, 1, 2] {
            let omega = random_fields(rng, FieldKind::Form(k), 1.0)?;
            let d1 = spectral_d(&omega)?;
            let d2 = spectral_d(&d1)?;
            worst = worse(
                worst,
                d2.max_abs() / (d1.max_abs() * band_scale).max(f64::MIN_POSITIVE),
            );
        }
        Ok(worst)
    })?;
    c.run(
        "fields.stokes",
        "∫_M dω = 0 on the closed torus",
        1e-10,
        instances,
        |rng| {
            let omega = random_fields(rng, FieldKind::Form(3), 1.0)?;
            Ok(spectral_d(&omega)?.integrate()?.abs())
        },
    )?;
    c.run(
        "fields.divergence_integral",
        "∫_M div V dvol = 0",
        1e-10,
        instances,
        |rng| {
            let v = random_fields(rng, FieldKind::Vector, 1.0)?;
            Ok(divergence(&v)?.integrate()?.abs())
        },
    )?;

    // one Nieh-Yan evaluation feeds four checks
    let mut reports = Vec::with_capacity(instances);
    {
        let mut rng = c.rng("fields.nieh_yan");
        for _ in 0..instances {
            reports.push(nieh_yan(&random_fields(
                &mut rng,
                FieldKind::Torsion,
                0.5,
            )?)?);
        }
    }
    let fold = |f: fn(&crate::torus::NiehYanReport) -> f64| reports.iter().map(f).fold(0.0, worse);
    let structure = fold(|r| r.torsion_residual);
    let residual = fold(|r| r.residual);
    let integral = fold(|r| r.integral_d_ctt.abs());
    let closed = fold(|r| r.holst_closed_form_residual);
    c.record(
        "fields.structure_torsion",
        "Θ^a = dθ^a + Σ_c ω^a_c ∧ θ^c",
        1e-10,
        structure,
    );
    c.record(
        "fields.nieh_yan",
        "dC_TT = Σ_a Θ^a ∧ Θ^a + Σ_ab Ω^a_b ∧ θ^b ∧ θ^a",
        1e-8,
        residual,
    );
    c.record("fields.integral_d_ctt", "∫_M dC_TT = 0", 1e-10, integral);
    c.record(
        "fields.holst_closed_form",
        "C_H = 6dT − 12<T,∗V♭>₃ dvol − ½(‖S+‖² − ‖S-‖²) dvol",
        1e-8,
        closed,
    );

    let rep = CliffordRep::standard();
    c.run(
        "fields.dirac_adjoint",
        "<Dψ,φ> = <ψ,D*φ>",
        1e-10,
        instances,
        |rng| {
            let psi = random_fields(rng, FieldKind::Spinor, 1.0)?;
            let phi = random_fields(rng, FieldKind::Spinor, 1.0)?;
            let t = random_fields(rng, FieldKind::Form(3), 0.5)?;
            let v = random_fields(rng, FieldKind::Vector, 0.5)?;
            let lhs = l2_inner(&dirac_apply(&rep, &psi, &t, &v, false)?, &phi)?;
            let rhs = l2_inner(&psi, &dirac_apply(&rep, &phi, &t, &v, true)?)?;
            Ok(relative((lhs - rhs).norm(), lhs.norm()))
        },
    )?;
    c.run(
        "fields.lichnerowicz",
        "D*D = Δ + (3/2)dT − ¾‖T‖² + (3/2)divV − (9/2)|V|² + 9(T·V + V⌟T)",
        1e-8,
        instances,
        |rng| {
            let psi = random_fields(rng, FieldKind::Spinor, 1.0)?;
            let t = random_fields(rng, FieldKind::Form(3), 0.5)?;
            let v = random_fields(rng, FieldKind::Vector, 0.5)?;
            lichnerowicz_residual(&rep, &psi, &t, &v)
        },
    )?;
    c.run(
        "fields.lichnerowicz_flat",
        "D*D = Δ when T = V = 0",
        1e-12,
        instances,
        |rng| {
            let psi = random_fields(rng, FieldKind::Spinor, 1.0)?;
            let t = PeriodicField::zeros(grid, FieldKind::Form(3))?;
            let v = PeriodicField::zeros(grid, FieldKind::Vector)?;
            lichnerowicz_residual(&rep, &psi, &t, &v)
        },
    )?;
    c.run(
        "fields.holst_degeneracy",
        "I_H at γ = 1 (γ = −1) is unchanged by perturbing S- (S+)",
        1e-12,
        instances,
        |rng| {
            let a = random_fields(rng, FieldKind::Torsion, 0.5)?;
            let shift = torsion_parts(&random_fields(rng, FieldKind::Torsion, 0.5)?)?;
            let mut worst: f64 = 0.0;
            for (gamma, delta) in [(1.0, &shift.anti_self_dual), (-1.0, &shift.self_dual)] {
                let base = holst_action(gamma, 1.0, &a)?.value;
                let moved = holst_action(gamma, 1.0, &a.add(delta)?)?.value;
                worst = worse(worst, relative((moved - base).abs(), base));
            }
            Ok(worst)
        },
    )?;

    // one heat fit per instance feeds four checks
    let mut fits = Vec::with_capacity(instances);
    {
        let mut rng = c.rng("heat.fit");
        let ts = default_times();
        for _ in 0..instances {
            let tor = random_constant_torsion(&mut rng)?;
            let k = mode_cutoff(&rep, &tor, grid.period(), ts[0], 1e-12)?;
            let fit = fit_heat_coefficients(&rep, &tor, grid.period(), &ts, k)?;
            let g1 = spectral_holst_from_fit(&tor, &fit, 1.0)?;
            let g7 = spectral_holst_from_fit(&tor, &fit, 7.0)?;
            fits.push((fit, g1, g7));
        }
    }
    let beta0 = fits
        .iter()
        .map(|(f, _, _)| (f.beta0_hat - 2.0).abs())
        .fold(0.0, worse);
    let beta2 = fits
        .iter()
        .map(|(f, g, _)| relative((f.beta2_hat - g.beta2_closed).abs(), g.beta2_closed))
        .fold(0.0, worse);
    let spectral = fits.iter().map(|(_, g, _)| g.residual).fold(0.0, worse);
    let g_indep = fits
        .iter()
        .map(|(_, g1, g7)| (g1.residual - g7.residual).abs())
        .fold(0.0, worse);
    c.record(
        "heat.beta0",
        "Tr(e^{−tD*D}P_L) ~ (4πt)^{−2}L⁴(β₀ + tβ₂ + t²β₄), β₀ = 2",
        1e-3,
        beta0,
    );
    c.record("heat.beta2", "fitted β₂ = closed-form β₂", 0.02, beta2);
    c.record(
        "heat.spectral_holst",
        "∫β₂ dvol = −(8πG/3) Ī_H",
        0.02,
        spectral,
    );
    c.record(
        "heat.g_independence",
        "(8πG/3)·(1/16πG) = 1/6: the spectral Holst comparison does not depend on G",
        1e-12,
        g_indep,
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pointwise_and_clifford_pass_and_are_deterministic() {
        for suite in [Suite::Pointwise, Suite::Clifford] {
            let opts = VerifyOptions {
                suite,
                seed: 7,
                count: 20,
                corrupt_tolerance: false,
            };
            let a = run_verify(&opts).unwrap();
            assert!(
                a.pass,
                "{:#?}",
                a.checks.iter().filter(|k| !k.pass).collect::<Vec<_>>()
            );
            let b = run_verify(&opts).unwrap();
            assert_eq!(
                crate::json::to_string(&a).unwrap(),
                crate::json::to_string(&b).unwrap()
            );
        }
    }

    #[test]
    fn corrupted_tolerance_fails() {
        let opts = VerifyOptions {
            suite: Suite::Clifford,
            count: 2,
            corrupt_tolerance: true,
            ..Default::default()
        };
        assert!(!run_verify(&opts).unwrap().pass);
    }

    #[test]
    fn suite_names() {
        for s in [Suite::Pointwise, Suite::Clifford, Suite::Fields, Suite::All] {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
        assert_eq!(field_instances(1), 1);
        assert_eq!(field_instances(100), 1);
        assert_eq!(field_instances(101), 2);
        assert_eq!(field_instances(10_000), 3);
    }
}
