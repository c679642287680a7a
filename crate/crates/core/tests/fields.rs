use std::f64::consts::PI;

use torsion_spectral::clifford::CliffordRep;
use torsion_spectral::multilinear::{KForm, TorsionTensor, Vector};
use torsion_spectral::sampling::{random_form, random_torsion, random_vector, rng};
use torsion_spectral::torus::{
    heat_trace, holst_action, lichnerowicz_residual, nieh_yan, random_field, spectral_d,
    ConstantTorsion, FieldKind, HeatSpectrum, PeriodicField, TorusGrid,
};

#[test]
fn integrals_of_simple_fields() {
    let g = TorusGrid::new(2.0, 8).unwrap();
    let one = PeriodicField::from_fn(g, FieldKind::Scalar, |_, o| o[0] = 1.0).unwrap();
    assert!((one.integrate().unwrap() - 16.0).abs() < 1e-12);

    let w = 2.0 * PI / g.period();
    let wave = PeriodicField::from_fn(g, FieldKind::Scalar, |x, o| {
        o[0] = (w * (x[1] + 2.0 * x[3])).cos()
    })
    .unwrap();
    assert!(wave.integrate().unwrap().abs() < 1e-12);
}

#[test]
fn d_of_a_single_mode_three_form() {
    let g = TorusGrid::new(1.0, 8).unwrap();
    let w = 2.0 * PI;
    // f = sin(w x⁴) θ¹²³, so df = w cos(w x⁴) θ⁴∧θ¹²³ = −w cos(w x⁴) θ¹²³⁴
    let f = PeriodicField::from_fn(g, FieldKind::Form(3), |x, o| {
        o.fill(0.0);
        o[0] = (w * x[3]).sin();
    })
    .unwrap();
    let idx = KForm::basis_indices(4, 3);
    assert_eq!(idx[0], vec![0, 1, 2]);
    let df = spectral_d(&f).unwrap();
    for p in 0..g.points() {
        let want = -w * (w * g.coordinates(p)[3]).cos();
        assert!((df.component(0)[p] - want).abs() < 1e-12);
    }
}

#[test]
fn nieh_yan_for_constant_torsion_on_a_coarse_grid() {
    let g = TorusGrid::new(1.5, 8).unwrap();
    let mut r = rng(11);
    for _ in 0..3 {
        let a = PeriodicField::constant_torsion(g, &random_torsion(&mut r, 4)).unwrap();
        let rep = nieh_yan(&a).unwrap();
        assert!(rep.residual <= 1e-12, "{}", rep.residual);
        assert!(rep.integral_d_ctt.abs() <= 1e-12);
        assert!(rep.holst_closed_form_residual <= 1e-12);
        assert!(rep.chern_simons_residual <= 1e-12);
    }
}

#[test]
fn nieh_yan_for_band_limited_torsion() {
    let g = TorusGrid::new(1.0, 8).unwrap();
    let a = random_field(&mut rng(12), g, FieldKind::Torsion, 1, 0.5).unwrap();
    let rep = nieh_yan(&a).unwrap();
    assert!(rep.residual <= 1e-8, "{}", rep.residual);
    assert!(rep.torsion_residual <= 1e-10);
    assert!(rep.integral_d_ctt.abs() <= 1e-10);
    assert!(rep.holst_closed_form_residual <= 1e-8);
}

#[test]
fn holst_action_scales_with_volume() {
    // constant T = τθ¹²³ at γ = 1: ρ = −6τ², so I_H = −6τ²L⁴/(16πG)
    let tau = 0.3;
    let t = KForm::monomial(4, &[0, 1, 2]).unwrap().scale(tau);
    let tensor = TorsionTensor::from_three_form(&t).unwrap();
    for (l, gn) in [(1.0, 1.0), (2.0, 1.0), (2.0, 3.0)] {
        let g = TorusGrid::new(l, 8).unwrap();
        let a = PeriodicField::constant_torsion(g, &tensor).unwrap();
        let got = holst_action(1.0, gn, &a).unwrap().value;
        let want = -6.0 * tau * tau * f64::powi(l, 4) / (16.0 * PI * gn);
        assert!(
            (got - want).abs() <= 1e-13 * want.abs(),
            "L = {l}: {got} vs {want}"
        );
    }
}

fn random_constant(seed: u64) -> ConstantTorsion {
    let mut r = rng(seed);
    ConstantTorsion::new(
        random_form(&mut r, 4, 3).scale(0.3),
        random_vector(&mut r, 4).scale(0.2),
    )
    .unwrap()
}

#[test]
fn heat_trace_converges_in_the_cutoff() {
    let rep = CliffordRep::standard();
    let tor = random_constant(13);
    let coarse = HeatSpectrum::new(&rep, &tor, 1.0, 16).unwrap();
    let fine = HeatSpectrum::new(&rep, &tor, 1.0, 20).unwrap();
    for t in [0.01, 0.02, 0.04] {
        let (a, b) = (coarse.trace(t).unwrap(), fine.trace(t).unwrap());
        assert!((a - b).abs() < 1e-12 * b, "t = {t}: {a} vs {b}");
    }
}

#[test]
fn heat_trace_decreases_in_time_and_ignores_the_representation() {
    let tor = random_constant(14);
    let std_rep = CliffordRep::standard();
    let alt_rep = CliffordRep::alternative();
    let ts = [0.01, 0.015, 0.02, 0.03, 0.05];
    let mut last = f64::INFINITY;
    for t in ts {
        let a = heat_trace(&std_rep, &tor, 1.0, t, 12).unwrap();
        let b = heat_trace(&alt_rep, &tor, 1.0, t, 12).unwrap();
        assert!(a < last);
        assert!((a - b).abs() < 1e-10 * a);
        last = a;
    }
    assert!(heat_trace(&std_rep, &tor, 1.0, -0.01, 12).is_err());
}

#[test]
fn flat_heat_trace_is_a_power_of_a_theta_sum() {
    // D_k†D_k = |2πk/L|² on every spinor, and P_L has rank 2
    let rep = CliffordRep::standard();
    for (l, t, k) in [(1.0, 0.01, 10usize), (2.0, 0.05, 8)] {
        let w = 2.0 * PI / l;
        let theta: f64 = (-(k as i64)..=k as i64)
            .map(|j| (-t * w * w * (j * j) as f64).exp())
            .sum();
        let want = 2.0 * theta.powi(4);
        let got = heat_trace(&rep, &ConstantTorsion::zero(), l, t, k).unwrap();
        assert!((got - want).abs() < 1e-12 * want, "{got} vs {want}");
    }
}

#[test]
fn lichnerowicz_with_constant_torsion_and_a_plane_wave() {
    let g = TorusGrid::new(1.0, 8).unwrap();
    let w = 2.0 * PI;
    let mut r = rng(15);
    let t = PeriodicField::constant_form(g, &random_form(&mut r, 4, 3).scale(0.4)).unwrap();
    let v = PeriodicField::constant_vector(g, &Vector::new(vec![0.1, -0.2, 0.0, 0.3])).unwrap();
    let psi = PeriodicField::from_fn(g, FieldKind::Spinor, |x, o| {
        let phase = w * (x[0] - 2.0 * x[2]);
        for c in 0..4 {
            o[2 * c] = (c as f64 + 1.0) * phase.cos();
            o[2 * c + 1] = (1.0 - c as f64) * phase.sin();
        }
    })
    .unwrap();
    for rep in [CliffordRep::standard(), CliffordRep::alternative()] {
        let res = lichnerowicz_residual(&rep, &psi, &t, &v).unwrap();
        assert!(res <= 1e-10, "{res}");
    }
}
