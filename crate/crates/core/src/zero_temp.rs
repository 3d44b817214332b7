//! Closed forms for `delta = 0` in the zero-temperature limit, used as
//! oracles for the finite-temperature pipeline.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free_energy::{omega, q_func};
use crate::model::{Branch, ModelParams};

/// `q` counts as saturated when it is this close to 0 or 1.
pub const Q_STEP_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroTResult {
    pub branch: Branch,
    pub y0: f64,
    pub p33: f64,
    pub n_active: f64,
}

/// `(g / omega) sqrt(1 - (g_c / g)^4)` above threshold, 0 otherwise.
pub fn y_zero_t(params: &ModelParams, branch: Branch) -> f64 {
    let r = params.relative_coupling(branch);
    if r <= 1.0 {
        return 0.0;
    }
    let inv2 = 1.0 / (r * r);
    params.coupling(branch) / params.omega(branch) * ((1.0 - inv2) * (1.0 + inv2)).sqrt()
}

/// `(1 - (g_c / g)^2) / 2`. Defined for `g >= g_c` only.
pub fn p33_zero_t(params: &ModelParams, branch: Branch) -> Result<f64> {
    let r = params.relative_coupling(branch);
    if r < 1.0 {
        return Err(Error::InvalidParameter(format!(
            "g{} = {} is below its critical value {}",
            branch.index() + 1,
            params.coupling(branch),
            params.critical_coupling(branch)
        )));
    }
    Ok(0.5 * (1.0 - 1.0 / (r * r)))
}

/// Upper-level population at finite temperature on the mode-1 axis, with
/// the exponentials scaled by `exp(-beta gap Omega)`.
pub fn p33_finite_t_closed(params: &ModelParams, beta: f64, y1: f64) -> f64 {
    let om = omega(params, y1, 0.0);
    let s = beta * params.gap * om;
    let e = (-s).exp();
    let num = 0.5 * ((-s).exp_m1() + (e + 1.0) * om);
    let den = (e + 1.0 + (0.5 * beta * params.gap * (1.0 - om)).exp()) * om;
    num / den
}

/// Zero-temperature state on one branch.
pub fn zero_t_result(params: &ModelParams, branch: Branch) -> ZeroTResult {
    let y0 = y_zero_t(params, branch);
    ZeroTResult {
        branch,
        y0,
        p33: p33_zero_t(params, branch).unwrap_or(0.0),
        n_active: y0 * y0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QStep {
    Zero,
    One,
    Transitional,
}

pub fn q_step(beta: f64, gap: f64, omega: f64) -> QStep {
    let q = q_func(beta, gap, omega);
    if q <= Q_STEP_TOLERANCE {
        QStep::Zero
    } else if q >= 1.0 - Q_STEP_TOLERANCE {
        QStep::One
    } else {
        QStep::Transitional
    }
}
