//! The Laplace exponent `f(y1, z1, y2, z2)` and its gradient.
//!
//! ```text
//! f = beta [w1 (y1^2 + z1^2) + w2 (y2^2 + z2^2)] - ln Tr exp(-beta h(y1, y2))
//! ```
//!
//! The general route goes through the spectrum of `h`; for `delta = 0` the
//! trace has the closed form `1 + 2 exp(-beta gap / 2) cosh(beta gap Omega / 2)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Branch, MeanField, ModelParams};
use crate::spectrum::{boltzmann, build_h, eigendecompose, eigenvalues};

/// Exponent per particle and the matching free energy per particle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FreeEnergyValue {
    /// Dimensionless exponent `f`.
    pub f: f64,
    /// `f / beta`, in energy units.
    pub f_per_particle: f64,
}

impl FreeEnergyValue {
    fn new(f: f64, beta: f64) -> Self {
        Self {
            f,
            f_per_particle: f / beta,
        }
    }
}

/// `sqrt(1 + 16 g1^2 y1^2 / gap^2 + 16 g2^2 y2^2 / gap^2)`.
pub fn omega(params: &ModelParams, y1: f64, y2: f64) -> f64 {
    let s1 = 4.0 * params.g1 * y1 / params.gap;
    let s2 = 4.0 * params.g2 * y2 / params.gap;
    (1.0 + s1 * s1 + s2 * s2).sqrt()
}

/// ```text
/// q(Omega) = 2 e^{-b/2} sinh(b Omega / 2) / (1 + 2 e^{-b/2} cosh(b Omega / 2)),  b = beta gap
/// ```
///
/// Evaluated with `e^{b (Omega - 1) / 2}` divided out of both terms, so it
/// never overflows.
pub fn q_func(beta: f64, gap: f64, omega: f64) -> f64 {
    let x = 0.5 * beta * gap * omega;
    let a = 0.5 * beta * gap * (omega - 1.0);
    let decay = (-2.0 * x).exp();
    -(-2.0 * x).exp_m1() / (1.0 + decay + (-a).exp())
}

/// `1 - q(Omega)` without cancellation.
pub fn q_complement(beta: f64, gap: f64, omega: f64) -> f64 {
    let x = 0.5 * beta * gap * omega;
    let a = 0.5 * beta * gap * (omega - 1.0);
    let decay = (-2.0 * x).exp();
    let tilt = (-a).exp();
    (2.0 * decay + tilt) / (1.0 + decay + tilt)
}

/// `ln[1 + 2 e^{-b/2} cosh(b Omega / 2)]` without overflow.
fn ln_trace_delta0(beta: f64, gap: f64, omega: f64) -> f64 {
    let x = 0.5 * beta * gap * omega;
    let a = 0.5 * beta * gap * (omega - 1.0);
    a + ((-a).exp() + (-2.0 * x).exp()).ln_1p()
}

fn field_energy(params: &ModelParams, mf: &MeanField) -> f64 {
    params.omega1 * (mf.y1 * mf.y1 + mf.z1 * mf.z1) + params.omega2 * (mf.y2 * mf.y2 + mf.z2 * mf.z2)
}

/// Closed form for degenerate ground states.
pub fn f_delta0(params: &ModelParams, beta: f64, mf: &MeanField) -> Result<FreeEnergyValue> {
    if params.delta != 0.0 {
        return Err(Error::NonzeroDelta(params.delta));
    }
    let om = omega(params, mf.y1, mf.y2);
    let f = beta * field_energy(params, mf) - ln_trace_delta0(beta, params.gap, om);
    Ok(FreeEnergyValue::new(f, beta))
}

/// Spectral route, valid for any `delta`.
pub fn f_general(params: &ModelParams, beta: f64, mf: &MeanField) -> FreeEnergyValue {
    FreeEnergyValue::new(f_value(params, beta, mf), beta)
}

/// Bare `f` from the spectral route; the hot path of grid scans.
pub fn f_value(params: &ModelParams, beta: f64, mf: &MeanField) -> f64 {
    let eps = eigenvalues(&build_h(params, mf.y1, mf.y2));
    let tail = (-beta * (eps[1] - eps[0])).exp() + (-beta * (eps[2] - eps[0])).exp();
    beta * (field_energy(params, mf) + eps[0]) - tail.ln_1p()
}

/// Analytic `(df/dy1, df/dy2)` at `z = 0`.
///
/// `df/dy_n = 2 beta w_n y_n + beta <dh/dy_n>`, where the thermal average of
/// `dh/dy_1 = 2 g1 (a13 + a31)` is `4 g1 rho_13` (and likewise for mode 2).
pub fn grad_f(params: &ModelParams, beta: f64, y1: f64, y2: f64) -> [f64; 2] {
    let g = grad_energy(params, beta, y1, y2);
    [beta * g[0], beta * g[1]]
}

/// `grad_f / beta`, the gradient of the free energy per particle.
pub fn grad_energy(params: &ModelParams, beta: f64, y1: f64, y2: f64) -> [f64; 2] {
    let rho = boltzmann(&eigendecompose(&build_h(params, y1, y2)), beta).density();
    [
        2.0 * params.omega1 * y1 + 4.0 * params.g1 * rho[0][2],
        2.0 * params.omega2 * y2 + 4.0 * params.g2 * rho[1][2],
    ]
}

/// One gradient component along `branch`, in energy units.
pub fn grad_energy_along(params: &ModelParams, beta: f64, mf: &MeanField, branch: Branch) -> f64 {
    grad_energy(params, beta, mf.y1, mf.y2)[branch.index()]
}

/// The stationarity bracket at `delta = 0` along one axis:
/// `df/dy_n = 2 beta w_n y_n [1 - (g_n / g_{n,c})^2 q(Omega) / Omega]`.
pub fn grad_delta0_along(params: &ModelParams, beta: f64, y1: f64, y2: f64, branch: Branch) -> f64 {
    let om = omega(params, y1, y2);
    let ratio = params.relative_coupling(branch);
    let y = match branch {
        Branch::One => y1,
        Branch::Two => y2,
    };
    2.0 * beta * params.omega(branch) * y * (1.0 - ratio * ratio * q_func(beta, params.gap, om) / om)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fig4(g1: f64, g2: f64) -> ModelParams {
        ModelParams::new(0.1, 1.0, 1.1, 0.8, g1, g2)
    }

    fn delta0(g1: f64, g2: f64) -> ModelParams {
        ModelParams::new(0.0, 1.0, 1.1, 0.8, g1, g2)
    }

    /// Scale of the terms that make up `f`, for relative comparisons.
    fn term_scale(p: &ModelParams, beta: f64, mf: &MeanField) -> f64 {
        let om = omega(p, mf.y1, mf.y2);
        1.0f64.max(beta * field_energy(p, mf)).max(beta * p.gap * om)
    }

    #[test]
    fn omega_values() {
        let p = ModelParams::new(0.0, 1.0, 1.0, 1.0, 0.5, 0.3);
        assert_eq!(omega(&p, 0.0, 0.0), 1.0);
        // 1 + 16 * 0.25 * 0.25 = 2
        assert!((omega(&p, 0.5, 0.0) - 2f64.sqrt()).abs() < 1e-15);
        let mut last = 1.0;
        for i in 1..50 {
            let o = omega(&p, 0.02 * i as f64, 0.01 * i as f64);
            assert!(o > last);
            last = o;
        }
    }

    #[test]
    fn q_limits() {
        assert!((1.0 - q_func(1e4, 1.0, 1.5)).abs() < 1e-12);
        // Series: q ~ (b Omega / 2) (2 / 3) for small b = beta gap.
        let q = q_func(0.01, 1.0, 1.0);
        assert!(q < 0.01);
        assert!((q - 0.005 * 2.0 / 3.0).abs() < 1e-5);
        for &b in &[0.01, 1.0, 4.0, 100.0] {
            let mut last = 0.0;
            for i in 0..200 {
                let q = q_func(b, 1.0, 1.0 + 0.05 * i as f64);
                assert!(q > last || (q == 1.0 && last == 1.0));
                last = q;
            }
        }
        assert!(q_func(1e300, 1.0, 3.0).is_finite());
    }

    #[test]
    fn f_delta0_at_origin() {
        let p = delta0(0.7, 0.3);
        for &beta in &[0.1, 1.0, 4.0, 1e4] {
            let f = f_delta0(&p, beta, &MeanField::ORIGIN).unwrap().f;
            let expect = -(2.0 + (-beta * p.gap).exp()).ln();
            assert!((f - expect).abs() < 1e-15);
            assert!((f_general(&p, beta, &MeanField::ORIGIN).f - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn f_delta0_rejects_nonzero_delta() {
        assert!(f_delta0(&fig4(0.3, 0.3), 1.0, &MeanField::ORIGIN).is_err());
    }

    #[test]
    fn decoupled_f_general() {
        let p = fig4(0.0, 0.0);
        let f = f_general(&p, 4.0, &MeanField::ORIGIN).f;
        let expect = -(1.0 + (-0.4f64).exp() + (-4.0f64).exp()).ln();
        assert!((f - expect).abs() < 1e-15);
    }

    #[test]
    fn z_enters_quadratically() {
        let p = fig4(0.7, 0.4);
        let beta = 3.0;
        let a = f_general(&p, beta, &MeanField::new(0.3, 0.0, 0.2, 0.0)).f;
        let b = f_general(&p, beta, &MeanField::new(0.3, 0.25, 0.2, -0.1)).f;
        let expect = beta * (1.1 * 0.25 * 0.25 + 0.8 * 0.01);
        assert!(((b - a) - expect).abs() < 1e-13);
    }

    #[test]
    fn per_particle_free_energy() {
        let v = f_general(&fig4(0.7, 0.4), 4.0, &MeanField::on_plane(0.2, 0.1));
        assert_eq!(v.f_per_particle, v.f / 4.0);
        assert!((v.f_per_particle * 4.0 - v.f).abs() <= f64::EPSILON * v.f.abs());
    }

    #[test]
    fn routes_agree_at_delta0() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..1000 {
            let beta = 10f64.powf(rng.gen_range(-1.0..4.0));
            let p = ModelParams::new(
                0.0,
                1.0,
                1.1,
                0.8,
                rng.gen_range(0.0..3.0) * 0.5244,
                rng.gen_range(0.0..3.0) * 0.4472,
            );
            let mf = MeanField::new(
                rng.gen_range(0.0..2.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(0.0..2.0),
                rng.gen_range(-1.0..1.0),
            );
            let a = f_general(&p, beta, &mf).f;
            let b = f_delta0(&p, beta, &mf).unwrap().f;
            assert!(
                (a - b).abs() <= 1e-12 * term_scale(&p, beta, &mf),
                "{a} vs {b} at {mf:?}, beta {beta}"
            );
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for i in 0..500 {
            let delta = if i % 2 == 0 { 0.1 } else { 0.0 };
            let p = ModelParams::new(delta, 1.0, 1.1, 0.8, rng.gen_range(0.0..1.5), rng.gen_range(0.0..1.5));
            let beta = 10f64.powf(rng.gen_range(-1.0..2.0));
            let y1 = rng.gen_range(0.01..1.5);
            let y2 = rng.gen_range(0.01..1.5);
            let g = grad_f(&p, beta, y1, y2);
            let h = 1e-6;
            let f = |a: f64, b: f64| f_general(&p, beta, &MeanField::on_plane(a, b)).f;
            let fd = [
                (f(y1 + h, y2) - f(y1 - h, y2)) / (2.0 * h),
                (f(y1, y2 + h) - f(y1, y2 - h)) / (2.0 * h),
            ];
            let noise = 1e-9 * f(y1, y2).abs().max(1.0);
            for k in 0..2 {
                assert!(
                    (g[k] - fd[k]).abs() <= 1e-5 * g[k].abs().max(fd[k].abs()) + noise,
                    "component {k}: {} vs {} at ({y1}, {y2})",
                    g[k],
                    fd[k]
                );
            }
        }
    }

    #[test]
    fn gradient_vanishes_at_origin() {
        assert_eq!(grad_f(&fig4(0.9, 0.9), 10.0, 0.0, 0.0), [0.0, 0.0]);
    }

    #[test]
    fn gradient_matches_delta0_bracket() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..300 {
            let p = delta0(rng.gen_range(0.0..1.5), rng.gen_range(0.0..1.5));
            let beta = 10f64.powf(rng.gen_range(-1.0..3.0));
            let y = rng.gen_range(0.0..1.5);
            for branch in Branch::BOTH {
                let (y1, y2) = match branch {
                    Branch::One => (y, 0.0),
                    Branch::Two => (0.0, y),
                };
                let a = grad_f(&p, beta, y1, y2)[branch.index()];
                let b = grad_delta0_along(&p, beta, y1, y2, branch);
                assert!((a - b).abs() <= 1e-10 * (1.0 + beta * (1.0 + y)));
            }
        }
    }

    proptest! {
        #[test]
        fn reflection_symmetry(
            g1 in 0.0f64..1.5, g2 in 0.0f64..1.5,
            y1 in -1.5f64..1.5, y2 in -1.5f64..1.5,
            z1 in -1.0f64..1.0, z2 in -1.0f64..1.0, lb in -1.0f64..3.0,
        ) {
            let p = fig4(g1, g2);
            let beta = 10f64.powf(lb);
            let base = f_general(&p, beta, &MeanField::new(y1, z1, y2, z2)).f;
            for mf in [
                MeanField::new(-y1, z1, y2, z2),
                MeanField::new(y1, -z1, y2, z2),
                MeanField::new(y1, z1, -y2, z2),
                MeanField::new(y1, z1, y2, -z2),
                MeanField::new(y1, z1, y2, z2).canonical(),
            ] {
                let other = f_general(&p, beta, &mf).f;
                prop_assert!((other - base).abs() <= 1e-13 * base.abs().max(1.0));
            }
        }

        #[test]
        fn minimum_over_z_is_at_zero(
            g1 in 0.0f64..1.5, y1 in 0.0f64..1.5, z in 1e-3f64..1.0, lb in -1.0f64..3.0,
        ) {
            let p = fig4(g1, 0.3);
            let beta = 10f64.powf(lb);
            let at0 = f_general(&p, beta, &MeanField::new(y1, 0.0, 0.1, 0.0)).f;
            let small = f_general(&p, beta, &MeanField::new(y1, z * 0.5, 0.1, 0.0)).f;
            let large = f_general(&p, beta, &MeanField::new(y1, z, 0.1, 0.0)).f;
            prop_assert!(at0 < small && small < large);
        }

        #[test]
        fn q_is_a_proper_fraction(lb in -3.0f64..6.0, om in 1.0f64..50.0) {
            let q = q_func(10f64.powf(lb), 1.0, om);
            prop_assert!(q > 0.0 && q <= 1.0);
            if 10f64.powf(lb) * om < 30.0 {
                prop_assert!(q < 1.0);
            }
        }
    }
}
