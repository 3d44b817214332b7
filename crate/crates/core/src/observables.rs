//! Per-particle expectation values at a mean-field point.

use serde::{Deserialize, Serialize};

use crate::minimizer::StationaryPoint;
use crate::model::{MeanField, ModelParams};
use crate::spectrum::{boltzmann, build_h, eigendecompose, Mat3};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObservableSet {
    pub n1: f64,
    pub n2: f64,
    pub p11: f64,
    pub p22: f64,
    pub p33: f64,
    pub c13: f64,
    pub c23: f64,
    pub c12: f64,
    pub f0: f64,
    pub f_per_particle: f64,
}

impl ObservableSet {
    /// Populations and coherences as a symmetric matrix.
    pub fn density(&self) -> Mat3 {
        [
            [self.p11, self.c12, self.c13],
            [self.c12, self.p22, self.c23],
            [self.c13, self.c23, self.p33],
        ]
    }
}

/// `(y1^2, y2^2)`.
pub fn mode_occupations(mf: &MeanField) -> (f64, f64) {
    (mf.y1 * mf.y1, mf.y2 * mf.y2)
}

/// Thermal single-particle state `exp(-beta h) / z` at `mf`.
pub fn thermal_state(params: &ModelParams, beta: f64, mf: &MeanField) -> Mat3 {
    boltzmann(&eigendecompose(&build_h(params, mf.y1, mf.y2)), beta).density()
}

/// `<A_n^m> / N` for levels `n, m` in `1..=3`.
///
/// # Panics
///
/// If `n` or `m` is outside `1..=3`.
pub fn collective_expectation(params: &ModelParams, beta: f64, mf: &MeanField, n: usize, m: usize) -> f64 {
    assert!((1..=3).contains(&n) && (1..=3).contains(&m), "levels are 1..=3");
    thermal_state(params, beta, mf)[n - 1][m - 1]
}

pub fn observable_set(params: &ModelParams, beta: f64, sp: &StationaryPoint) -> ObservableSet {
    let rho = thermal_state(params, beta, &sp.mf);
    let (n1, n2) = mode_occupations(&sp.mf);
    ObservableSet {
        n1,
        n2,
        p11: rho[0][0],
        p22: rho[1][1],
        p33: rho[2][2],
        c13: rho[0][2],
        c23: rho[1][2],
        c12: rho[0][1],
        f0: sp.f0,
        f_per_particle: sp.f0 / beta,
    }
}

/// Boltzmann populations of the bare levels `(0, delta, gap)`.
pub fn normal_phase_closed_form(params: &ModelParams, beta: f64) -> (f64, f64, f64) {
    let e2 = (-beta * params.delta).exp();
    let e3 = (-beta * params.gap).exp();
    let z = 1.0 + e2 + e3;
    (1.0 / z, e2 / z, e3 / z)
}
