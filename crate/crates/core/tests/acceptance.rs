//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line with its worst residual and
//! runtime; the process exits nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand_chacha::ChaCha8Rng;
use torsion_spectral::clifford::{
    beta2_density, beta2_holst_residual, dirac_torsion_symbol, dirac_torsion_symbol_from_parts,
    CliffordRep,
};
use torsion_spectral::multilinear::{
    decompose_torsion, recompose_torsion, theta_squared, theta_squared_closed_form,
    translational_chern_simons, KForm, TorsionComponents, TorsionTensor, Vector,
};
use torsion_spectral::sampling::{random_orthogonal, random_point_data, random_torsion, rng};
use torsion_spectral::torus::{
    fit_heat_coefficients, holst_action, lichnerowicz_residual, mode_cutoff, nieh_yan,
    random_field, spectral_holst_from_fit, torsion_parts, ConstantTorsion, FieldKind,
    PeriodicField, TorusGrid,
};
use torsion_spectral::Result;

/// One measured quantity against its bound.
struct Measure {
    label: &'static str,
    value: f64,
    bound: f64,
    at_least: bool,
}

impl Measure {
    fn new(label: &'static str, value: f64, bound: f64) -> Self {
        Self {
            label,
            value,
            bound,
            at_least: false,
        }
    }

    fn at_least(label: &'static str, value: f64, bound: f64) -> Self {
        Self {
            label,
            value,
            bound,
            at_least: true,
        }
    }

    fn ok(&self) -> bool {
        if self.at_least {
            self.value >= self.bound
        } else {
            self.value <= self.bound
        }
    }

    fn describe(&self) -> String {
        let op = if self.at_least { ">=" } else { "<=" };
        let verdict = if self.ok() { "" } else { " FAILED" };
        if self.at_least {
            format!(
                "{} {} ({op} {}{verdict})",
                self.label, self.value, self.bound
            )
        } else {
            format!(
                "{} {:.2e} ({op} {:.0e}{verdict})",
                self.label, self.value, self.bound
            )
        }
    }
}

struct Criterion {
    number: usize,
    name: &'static str,
    time_limit: Option<Duration>,
    run: fn() -> Result<Vec<Measure>>,
}

fn worst(acc: &mut f64, x: f64) {
    if x.is_nan() || x > *acc {
        *acc = x;
    }
}

fn unit_torsion(r: &mut ChaCha8Rng, n: usize) -> TorsionTensor {
    let a = random_torsion(r, n);
    a.scale(1.0 / a.norm_sq().sqrt())
}

fn parts(c: &TorsionComponents) -> [TorsionTensor; 3] {
    [c.vector_part(), c.three_form_part(), c.cartan.clone()]
}

fn decomposition_suite() -> Result<Vec<Measure>> {
    let mut r = rng(1);
    let (mut round, mut orth, mut pyth, mut equiv) = (0.0, 0.0, 0.0, 0.0);
    for n in 3..=6 {
        for _ in 0..1000 {
            let a = unit_torsion(&mut r, n);
            let c = decompose_torsion(&a);
            worst(&mut round, recompose_torsion(&c)?.max_abs_diff(&a));
            let [v, t, s] = parts(&c);
            for (x, y) in [(&v, &t), (&v, &s), (&t, &s)] {
                worst(&mut orth, x.inner(y)?.abs());
            }
            if let Some((p, m)) = &c.chiral {
                worst(&mut orth, p.inner(m)?.abs());
            }
            worst(
                &mut pyth,
                (a.norm_sq() - v.norm_sq() - t.norm_sq() - s.norm_sq()).abs(),
            );
            let q = random_orthogonal(&mut r, n);
            let rotated = parts(&decompose_torsion(&a.rotated(&q)));
            for (x, y) in rotated.iter().zip([&v, &t, &s]) {
                worst(&mut equiv, x.max_abs_diff(&y.rotated(&q)));
            }
        }
    }
    Ok(vec![
        Measure::new("round trip", round, 1e-12),
        Measure::new("orthogonality", orth, 1e-12),
        Measure::new("pythagoras", pyth, 1e-12),
        Measure::new("O(n) equivariance", equiv, 1e-10),
    ])
}

fn chern_simons_identities() -> Result<Vec<Measure>> {
    let mut r = rng(2);
    let (mut ctt, mut sq) = (0.0, 0.0);
    for _ in 0..1000 {
        let a = unit_torsion(&mut r, 4);
        let c = decompose_torsion(&a);
        worst(
            &mut ctt,
            translational_chern_simons(&a)?.max_abs_diff(&c.three_form.scale(6.0)),
        );
        worst(
            &mut sq,
            theta_squared(&a)?.max_abs_diff(&theta_squared_closed_form(&c)?),
        );
    }
    Ok(vec![
        Measure::new("C_TT - 6T", ctt, 1e-12),
        Measure::new("sum Theta^Theta closed form", sq, 1e-12),
    ])
}

fn beta2_pointwise() -> Result<Vec<Measure>> {
    let mut r = rng(3);
    let (standard, alternative) = (CliffordRep::standard(), CliffordRep::alternative());
    let (mut holst, mut consistency, mut reps) = (0.0, 0.0, 0.0);
    for _ in 0..1000 {
        let p = random_point_data(&mut r);
        let b1 = beta2_density(&standard, &p)?;
        let b2 = beta2_density(&alternative, &p)?;
        let scale = b1.closed_form.abs().max(1.0);
        for rep in [&standard, &alternative] {
            worst(&mut holst, beta2_holst_residual(rep, &p)? / scale);
        }
        worst(
            &mut consistency,
            b1.discrepancy().max(b2.discrepancy()) / scale,
        );
        worst(&mut reps, (b1.via_traces - b2.via_traces).abs() / scale);
    }
    Ok(vec![
        Measure::new("beta2 + rho_1/6", holst, 1e-12),
        Measure::new("traces vs closed form", consistency, 1e-12),
        Measure::new("representation independence", reps, 1e-12),
    ])
}

fn dirac_symbol() -> Result<Vec<Measure>> {
    let mut r = rng(4);
    let (mut symbol, mut invisible) = (0.0, 0.0);
    for _ in 0..1000 {
        let a = random_torsion(&mut r, 4);
        let c = decompose_torsion(&a);
        let without = a.sub(&c.cartan);
        for rep in [CliffordRep::standard(), CliffordRep::alternative()] {
            let raw = dirac_torsion_symbol(&rep, &a)?;
            let mut want = rep.rep_form(&c.three_form)?.scale(1.5);
            want.add_scaled(&rep.rep_vector(&c.vector)?, -1.5);
            worst(&mut symbol, (&raw - &want).max_abs());
            worst(
                &mut invisible,
                (&raw - &dirac_torsion_symbol(&rep, &without)?).max_abs(),
            );
            worst(
                &mut invisible,
                (&raw - &dirac_torsion_symbol_from_parts(&rep, &c)?).max_abs(),
            );
        }
    }
    let beta0 = (CliffordRep::standard().left_projector().trace().re - 2.0).abs();
    Ok(vec![
        Measure::new("zero-order symbol", symbol, 1e-12),
        Measure::new("Cartan invisibility", invisible, 1e-12),
        Measure::new("beta0 - 2", beta0, 0.0),
    ])
}

fn grid16() -> TorusGrid {
    TorusGrid::new(1.0, 16).unwrap()
}

fn field_identities() -> Result<Vec<Measure>> {
    let a = random_field(&mut rng(5), grid16(), FieldKind::Torsion, 2, 0.5)?;
    let rep = nieh_yan(&a)?;
    Ok(vec![
        Measure::new("structure-equation Theta", rep.torsion_residual, 1e-10),
        Measure::new("Nieh-Yan", rep.residual, 1e-8),
        Measure::new("integral dC_TT", rep.integral_d_ctt.abs(), 1e-10),
        Measure::new("C_H closed form", rep.holst_closed_form_residual, 1e-8),
    ])
}

fn lichnerowicz() -> Result<Vec<Measure>> {
    let g = grid16();
    let mut r = rng(6);
    let rep = CliffordRep::standard();
    let psi = random_field(&mut r, g, FieldKind::Spinor, 2, 1.0)?;
    let t = random_field(&mut r, g, FieldKind::Form(3), 2, 0.5)?;
    let v = random_field(&mut r, g, FieldKind::Vector, 2, 0.5)?;
    let curved = lichnerowicz_residual(&rep, &psi, &t, &v)?;
    let zero_t = PeriodicField::zeros(g, FieldKind::Form(3))?;
    let zero_v = PeriodicField::zeros(g, FieldKind::Vector)?;
    let flat = lichnerowicz_residual(&rep, &psi, &zero_t, &zero_v)?;
    Ok(vec![
        Measure::new("band-limited T, V", curved, 1e-8),
        Measure::new("flat", flat, 1e-12),
    ])
}

fn heat_trace_fit() -> Result<Vec<Measure>> {
    let rep = CliffordRep::standard();
    let ts: Vec<f64> = torsion_spectral::torus::default_times();
    assert!(ts.iter().all(|t| (0.01..=0.04).contains(t)));
    let (mut beta0, mut beta2, mut spectral, mut g_indep) = (0.0, 0.0, 0.0, 0.0);
    for (tau, nu) in [(0.3, 0.0), (0.3, 0.2)] {
        let t = KForm::monomial(4, &[0, 1, 2])?.scale(tau);
        let v = Vector::new(vec![0.0, 0.0, 0.0, nu]);
        let tor = ConstantTorsion::new(t, v)?;
        // ‖T‖² = 6τ², |V|² = ν², ∗e⁴ = −θ¹²³ so ⟨T,∗V♭⟩₃ = −τν; with R = divV = dT = 0
        // β₂ = −(1/6)(−54τ² − 54ν² − 108τν) = 9(τ + ν)²
        let closed = 9.0 * (tau + nu) * (tau + nu);
        let k = mode_cutoff(&rep, &tor, 1.0, ts[0], 1e-12)?;
        let fit = fit_heat_coefficients(&rep, &tor, 1.0, &ts, k)?;
        worst(&mut beta0, (fit.beta0_hat - 2.0).abs());
        worst(&mut beta2, (fit.beta2_hat - closed).abs() / closed);
        let g1 = spectral_holst_from_fit(&tor, &fit, 1.0)?;
        let g7 = spectral_holst_from_fit(&tor, &fit, 7.0)?;
        worst(&mut spectral, g1.residual);
        worst(&mut g_indep, (g1.residual - g7.residual).abs());
    }
    Ok(vec![
        Measure::new("beta0 - 2", beta0, 1e-3),
        Measure::new("beta2 relative", beta2, 0.02),
        Measure::new("spectral Holst", spectral, 0.02),
        Measure::new("G independence", g_indep, 1e-12),
    ])
}

fn barbero_immirzi() -> Result<Vec<Measure>> {
    let g = grid16();
    let mut r = rng(8);
    let a = random_field(&mut r, g, FieldKind::Torsion, 2, 0.5)?;
    let shift = torsion_parts(&random_field(&mut r, g, FieldKind::Torsion, 2, 0.5)?)?;
    let mut out = Vec::new();
    for (gamma, delta, label) in [
        (1.0, &shift.anti_self_dual, "gamma = 1 vs S-"),
        (-1.0, &shift.self_dual, "gamma = -1 vs S+"),
    ] {
        let base = holst_action(gamma, 1.0, &a)?.value;
        let moved = holst_action(gamma, 1.0, &a.add(delta)?)?.value;
        out.push(Measure::new(
            label,
            (moved - base).abs() / base.abs().max(1.0),
            1e-12,
        ));
    }
    Ok(out)
}

fn cli_verify() -> Result<Vec<Measure>> {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_holst"))
            .args(["verify", "--suite", "all", "--seed", "42"])
            .output()
            .expect("holst binary runs")
    };
    let first = run();
    let second = run();
    let report: serde_json::Value = serde_json::from_slice(&first.stdout)?;
    let anchors = report["distinct_anchors"].as_u64().unwrap_or(0) as f64;
    let code = first.status.code().unwrap_or(-1) as f64;
    Ok(vec![
        Measure::new("exit code", code.abs(), 0.0),
        Measure::at_least("distinct anchors", anchors, 15.0),
        Measure::new(
            "rerun differs",
            if first.stdout == second.stdout {
                0.0
            } else {
                1.0
            },
            0.0,
        ),
    ])
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            number: 1,
            name: "torsion decomposition",
            time_limit: Some(Duration::from_secs(10)),
            run: decomposition_suite,
        },
        Criterion {
            number: 2,
            name: "Chern-Simons identities",
            time_limit: Some(Duration::from_secs(5)),
            run: chern_simons_identities,
        },
        Criterion {
            number: 3,
            name: "pointwise beta2 and Holst density",
            time_limit: Some(Duration::from_secs(5)),
            run: beta2_pointwise,
        },
        Criterion {
            number: 4,
            name: "Dirac symbol and beta0",
            time_limit: None,
            run: dirac_symbol,
        },
        Criterion {
            number: 5,
            name: "field-level structure equations",
            time_limit: Some(Duration::from_secs(60)),
            run: field_identities,
        },
        Criterion {
            number: 6,
            name: "Lichnerowicz formula",
            time_limit: Some(Duration::from_secs(60)),
            run: lichnerowicz,
        },
        Criterion {
            number: 7,
            name: "heat-trace fit",
            time_limit: Some(Duration::from_secs(120)),
            run: heat_trace_fit,
        },
        Criterion {
            number: 8,
            name: "Barbero-Immirzi degeneracy",
            time_limit: None,
            run: barbero_immirzi,
        },
        Criterion {
            number: 9,
            name: "verify command",
            time_limit: None,
            run: cli_verify,
        },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let (pass, detail) = match result {
            Ok(measures) => {
                let in_time = c.time_limit.is_none_or(|limit| elapsed < limit);
                let detail: Vec<String> = measures.iter().map(Measure::describe).collect();
                (
                    in_time && measures.iter().all(Measure::ok),
                    detail.join("; "),
                )
            }
            Err(e) => (false, format!("error: {e}")),
        };
        let limit = c
            .time_limit
            .map(|l| format!(" / {}s", l.as_secs()))
            .unwrap_or_default();
        println!(
            "{} criterion {}: {} [{:.2}s{}] {}",
            if pass { "PASS" } else { "FAIL" },
            c.number,
            c.name,
            elapsed.as_secs_f64(),
            limit,
            detail
        );
        if !pass {
            failures += 1;
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
