//! End-to-end properties of the minimization and phase-diagram pipeline.

use lambda_dicke::minimizer::StationaryKind;
use lambda_dicke::phase_diagram::{
    label_from_observables, linspace, locate_boundary, solve_point, sweep_g1g2, tolerances, BoundaryOptions,
    ScanAxis, SweepOptions,
};
use lambda_dicke::zero_temp::{p33_zero_t, y_zero_t};
use lambda_dicke::{Branch, ModelParams, PhaseLabel};
use proptest::prelude::*;

fn params(delta: f64, r1: f64, r2: f64) -> ModelParams {
    let p = ModelParams::new(delta, 1.0, 1.1, 0.8, 0.0, 0.0);
    ModelParams {
        g1: r1 * p.critical_coupling(Branch::One),
        g2: r2 * p.critical_coupling(Branch::Two),
        ..p
    }
}

fn gc1() -> f64 {
    params(0.0, 0.0, 0.0).critical_coupling(Branch::One)
}

#[test]
fn sweep_labels_rederive_from_observables() {
    let template = params(0.1, 0.0, 0.0);
    let g1 = linspace(0.0, 2.0 * template.critical_coupling(Branch::One), 21);
    let g2 = linspace(0.0, 2.0 * template.critical_coupling(Branch::Two), 21);
    let pts = sweep_g1g2(&template, 20.0, &g1, &g2, &SweepOptions::default()).unwrap();
    let tol = tolerances(&template);
    let mut seen = Vec::new();
    for pt in &pts {
        assert_eq!(label_from_observables(&pt.obs, tol).unwrap(), pt.label);
        assert!((pt.obs.p11 + pt.obs.p22 + pt.obs.p33 - 1.0).abs() < 1e-14);
        assert!(pt.n_local_minima >= 1);
        assert!(pt.minima.contains(&pt.global));
        if !seen.contains(&pt.label) {
            seen.push(pt.label);
        }
    }
    assert_eq!(seen.len(), 3);
}

#[test]
fn zero_temperature_ladder() {
    let beta = 1e4;
    for k in 0..12 {
        let r = 1.05 + 0.18 * k as f64;
        let p = params(0.0, r, 0.3);
        let pt = solve_point(&p, beta, [p.g1, p.g2], &SweepOptions::default()).unwrap();
        assert_eq!(pt.label, PhaseLabel::Sr1);
        let y0 = y_zero_t(&p, Branch::One);
        assert!((pt.global.mf.y1 - y0).abs() / y0 < 1e-4, "r = {r}");
        assert!((pt.obs.p33 - p33_zero_t(&p, Branch::One).unwrap()).abs() < 1e-3, "r = {r}");
        assert!((pt.obs.n1 - pt.global.mf.y1.powi(2)).abs() < 1e-15);
    }
}

#[test]
fn delta0_boundary_shifts_up_and_jump_shrinks_as_t_falls() {
    let p = params(0.0, 0.0, 0.2);
    let gc = gc1();
    let opts = BoundaryOptions::default();
    let mut last: Option<(f64, f64)> = None;
    for &kt in &[1e-4, 1e-3, 1e-2, 0.05] {
        let bp = locate_boundary(&p, 1.0 / kt, ScanAxis::G1, (0.8 * gc, 1.8 * gc), &opts).unwrap();
        assert_eq!((bp.from, bp.to), (PhaseLabel::Normal, PhaseLabel::Sr1));
        if let Some((loc, jump)) = last {
            assert!(bp.location > loc, "kT = {kt}");
            assert!(bp.jump.n1 > jump, "kT = {kt}");
        }
        last = Some((bp.location, bp.jump.n1));
    }
}

#[test]
fn boundary_brackets_and_nonnegative_jumps() {
    let p = params(0.1, 0.0, 0.2);
    let gc = p.critical_coupling(Branch::One);
    let opts = BoundaryOptions {
        spinodals: true,
        ..BoundaryOptions::default()
    };
    let bp = locate_boundary(&p, 10.0, ScanAxis::G1, (0.8 * gc, 1.8 * gc), &opts).unwrap();
    let (lo, hi) = (bp.spinodal_lo.unwrap(), bp.spinodal_hi.unwrap());
    assert!(lo <= bp.location && bp.location <= hi, "{lo} {} {hi}", bp.location);
    assert!(hi - lo > 1e-3 * gc);
    let j = &bp.jump;
    for v in [j.n1, j.n2, j.p11, j.p22, j.p33, j.c13, j.c23, j.c12] {
        assert!(v >= 0.0);
    }
    assert!(j.n1 > 0.01);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn solved_points_are_consistent(
        delta in prop_oneof![Just(0.0), 0.0..0.5f64],
        r1 in 0.0..2.5f64,
        r2 in 0.0..2.5f64,
        log_kt in -3.0..0.5f64,
    ) {
        let p = params(delta, r1, r2);
        let beta = 10f64.powf(-log_kt);
        let pt = solve_point(&p, beta, [p.g1, p.g2], &SweepOptions { grid_points: 121, ..SweepOptions::default() })
            .unwrap();
        let o = &pt.obs;
        prop_assert!((o.p11 + o.p22 + o.p33 - 1.0).abs() < 1e-13);
        prop_assert!(pt.global.mf.y1.min(pt.global.mf.y2) < 1e-4);
        prop_assert_eq!(pt.global.kind, StationaryKind::Minimum);
        prop_assert_eq!(label_from_observables(o, tolerances(&p)).unwrap(), pt.label);
        for m in &pt.minima {
            prop_assert!(m.f0 >= pt.global.f0 || lambda_dicke::minimizer::is_tie(m.f0, pt.global.f0));
        }
    }
}
