//! The 3x3 single-particle mean-field Hamiltonian, its eigensystem and its
//! Boltzmann matrix.
//!
//! Rows and columns are ordered `|1>, |2>, |3>`. Boltzmann matrices are kept
//! in shifted form `B = exp(log_scale) * scaled` with the largest weight in
//! `scaled` equal to one, so `beta * gap` can be made as large as needed
//! without overflow.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{Branch, ModelParams};

pub type Mat3 = [[f64; 3]; 3];
pub type Vec3 = [f64; 3];

/// Relative eigenvalue gap below which the analytic route hands over to
/// Jacobi rotations.
const DEGENERACY_GAP: f64 = 1e-4;

const JACOBI_MAX_SWEEPS: usize = 64;

/// `h(y1, y2) = delta a22 + gap a33 + 2 g1 y1 (a13 + a31) + 2 g2 y2 (a23 + a32)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleParticleH {
    m: Mat3,
}

impl SingleParticleH {
    pub fn new(params: &ModelParams, y1: f64, y2: f64) -> Self {
        let c13 = 2.0 * params.g1 * y1;
        let c23 = 2.0 * params.g2 * y2;
        Self {
            m: [
                [0.0, 0.0, c13],
                [0.0, params.delta, c23],
                [c13, c23, params.gap],
            ],
        }
    }

    /// Wraps an arbitrary symmetric matrix. Only the upper triangle is read.
    pub fn from_symmetric(m: Mat3) -> Self {
        let mut s = m;
        for i in 0..3 {
            for j in 0..i {
                s[i][j] = s[j][i];
            }
        }
        Self { m: s }
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.m
    }

    pub fn trace(&self) -> f64 {
        self.m[0][0] + self.m[1][1] + self.m[2][2]
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.m.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// Shorthand for [`SingleParticleH::new`].
pub fn build_h(params: &ModelParams, y1: f64, y2: f64) -> SingleParticleH {
    SingleParticleH::new(params, y1, y2)
}

/// Ascending eigenvalues and the matching orthonormal eigenvectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralDecomposition {
    pub values: Vec3,
    /// `vectors[k]` belongs to `values[k]`.
    pub vectors: [Vec3; 3],
}

/// Which algorithm produced a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// One level is exactly decoupled; a single plane rotation finishes.
    Decoupled,
    Cardano,
    Jacobi,
}

pub fn eigendecompose(h: &SingleParticleH) -> SpectralDecomposition {
    eigendecompose_with_route(h).0
}

/// Analytic route first, Jacobi rotations when two eigenvalues are closer
/// than `DEGENERACY_GAP` relative to the spectral scale. Matrices with an
/// exactly decoupled level skip the cubic entirely.
pub fn eigendecompose_with_route(h: &SingleParticleH) -> (SpectralDecomposition, Route) {
    if has_decoupled_level(&h.m) {
        return (jacobi_decompose(h), Route::Decoupled);
    }
    match cardano_decompose(h) {
        Some(d) => (d, Route::Cardano),
        None => (jacobi_decompose(h), Route::Jacobi),
    }
}

/// Eigenvalues in ascending order, without eigenvectors.
pub fn eigenvalues(h: &SingleParticleH) -> Vec3 {
    if has_decoupled_level(&h.m) {
        return jacobi_decompose(h).values;
    }
    match cardano_values(&h.m) {
        Some(v) => v,
        None => jacobi_decompose(h).values,
    }
}

fn has_decoupled_level(m: &Mat3) -> bool {
    (m[0][1] == 0.0 && m[0][2] == 0.0)
        || (m[0][1] == 0.0 && m[1][2] == 0.0)
        || (m[0][2] == 0.0 && m[1][2] == 0.0)
}

/// Trigonometric solution of the characteristic cubic. `None` when the
/// matrix is a multiple of the identity.
fn cardano_values(m: &Mat3) -> Option<Vec3> {
    let off = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
    let q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
    let d0 = m[0][0] - q;
    let d1 = m[1][1] - q;
    let d2 = m[2][2] - q;
    let p2 = d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * off;
    if p2 == 0.0 {
        return None;
    }
    let p = (p2 / 6.0).sqrt();
    let b00 = d0 / p;
    let b11 = d1 / p;
    let b22 = d2 / p;
    let b01 = m[0][1] / p;
    let b02 = m[0][2] / p;
    let b12 = m[1][2] / p;
    let det = b00 * (b11 * b22 - b12 * b12) - b01 * (b01 * b22 - b12 * b02)
        + b02 * (b01 * b12 - b11 * b02);
    let r = (det / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let hi = q + 2.0 * p * phi.cos();
    let lo = q + 2.0 * p * (phi + 2.0 * PI / 3.0).cos();
    let mid = 3.0 * q - hi - lo;
    let mut v = [lo, mid, hi];
    v.sort_by(|a, b| a.total_cmp(b));
    Some(v)
}

fn cardano_decompose(h: &SingleParticleH) -> Option<SpectralDecomposition> {
    let values = cardano_values(&h.m)?;
    let scale = values[0].abs().max(values[2].abs());
    let gap = (values[1] - values[0]).min(values[2] - values[1]);
    if !(gap > DEGENERACY_GAP * scale) {
        return None;
    }
    let w_lo = null_vector(&h.m, values[0])?;
    let w_hi = null_vector(&h.m, values[2])?;
    let w_mid = normalize(cross(&w_hi, &w_lo))?;
    Some(finish(values, [w_lo, w_mid, w_hi]))
}

/// Unit vector spanning the kernel of `m - lambda I`, from the largest
/// cross product of two of its rows.
fn null_vector(m: &Mat3, lambda: f64) -> Option<Vec3> {
    let r0 = [m[0][0] - lambda, m[0][1], m[0][2]];
    let r1 = [m[1][0], m[1][1] - lambda, m[1][2]];
    let r2 = [m[2][0], m[2][1], m[2][2] - lambda];
    let candidates = [cross(&r0, &r1), cross(&r0, &r2), cross(&r1, &r2)];
    let best = candidates
        .iter()
        .copied()
        .fold(None::<(f64, Vec3)>, |acc, c| {
            let n = dot(&c, &c);
            match acc {
                Some((bn, _)) if bn >= n => acc,
                _ => Some((n, c)),
            }
        })?;
    normalize(best.1)
}

/// Cyclic Jacobi rotations. Exact zeros outside a rotated pair stay zero.
pub fn jacobi_decompose(h: &SingleParticleH) -> SpectralDecomposition {
    let mut a = h.m;
    let mut v: Mat3 = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    for sweep in 0..JACOBI_MAX_SWEEPS {
        let off = a[0][1].abs() + a[0][2].abs() + a[1][2].abs();
        if off == 0.0 {
            break;
        }
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            let apq = a[p][q];
            if apq == 0.0 {
                continue;
            }
            let g = 100.0 * apq.abs();
            if sweep > 3 && a[p][p].abs() + g == a[p][p].abs() && a[q][q].abs() + g == a[q][q].abs()
            {
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                continue;
            }
            let diff = a[q][q] - a[p][p];
            let t = if diff.abs() + g == diff.abs() {
                apq / diff
            } else {
                let theta = 0.5 * diff / apq;
                let t = 1.0 / (theta.abs() + (theta * theta + 1.0).sqrt());
                if theta < 0.0 {
                    -t
                } else {
                    t
                }
            };
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;
            let tau = s / (1.0 + c);
            a[p][p] -= t * apq;
            a[q][q] += t * apq;
            a[p][q] = 0.0;
            a[q][p] = 0.0;
            let r = 3 - p - q;
            let arp = a[r][p];
            let arq = a[r][q];
            a[r][p] = arp - s * (arq + tau * arp);
            a[r][q] = arq + s * (arp - tau * arq);
            a[p][r] = a[r][p];
            a[q][r] = a[r][q];
            for row in v.iter_mut() {
                let vp = row[p];
                let vq = row[q];
                row[p] = vp - s * (vq + tau * vp);
                row[q] = vq + s * (vp - tau * vq);
            }
        }
    }
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| a[i][i].total_cmp(&a[j][j]));
    let values = [a[order[0]][order[0]], a[order[1]][order[1]], a[order[2]][order[2]]];
    let column = |k: usize| [v[0][k], v[1][k], v[2][k]];
    finish(values, [column(order[0]), column(order[1]), column(order[2])])
}

fn finish(values: Vec3, vectors: [Vec3; 3]) -> SpectralDecomposition {
    SpectralDecomposition {
        values,
        vectors: vectors.map(fix_sign),
    }
}

/// Largest-magnitude component positive; ties go to the lowest index.
fn fix_sign(v: Vec3) -> Vec3 {
    let mut k = 0;
    for i in 1..3 {
        if v[i].abs() > v[k].abs() {
            k = i;
        }
    }
    if v[k] < 0.0 {
        v.map(|x| -x)
    } else {
        v
    }
}

fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn normalize(v: Vec3) -> Option<Vec3> {
    let n = dot(&v, &v).sqrt();
    if n > 0.0 && n.is_finite() {
        Some(v.map(|x| x / n))
    } else {
        None
    }
}

/// `exp(-beta h)` stored as `exp(log_scale) * scaled`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoltzmannMatrix {
    scaled: Mat3,
    log_scale: f64,
}

impl BoltzmannMatrix {
    pub fn scaled(&self) -> &Mat3 {
        &self.scaled
    }

    pub fn log_scale(&self) -> f64 {
        self.log_scale
    }

    pub fn scaled_trace(&self) -> f64 {
        self.scaled[0][0] + self.scaled[1][1] + self.scaled[2][2]
    }

    /// `ln z` with `z = Tr exp(-beta h)`.
    pub fn ln_z(&self) -> f64 {
        self.log_scale + self.scaled_trace().ln()
    }

    /// `z`; infinite when `ln z` exceeds the `f64` range.
    pub fn z(&self) -> f64 {
        self.scaled_trace() * self.log_scale.exp()
    }

    /// Unscaled matrix. Entries overflow for very large `beta * |h|`.
    pub fn matrix(&self) -> Mat3 {
        let s = self.log_scale.exp();
        self.scaled.map(|row| row.map(|x| x * s))
    }

    /// Thermal single-particle state `exp(-beta h) / z`.
    pub fn density(&self) -> Mat3 {
        let t = self.scaled_trace();
        self.scaled.map(|row| row.map(|x| x / t))
    }

    /// `scaled` re-expressed relative to another log scale, for comparing two
    /// matrices built with different shifts.
    pub fn rescaled_to(&self, log_scale: f64) -> Mat3 {
        let s = (self.log_scale - log_scale).exp();
        self.scaled.map(|row| row.map(|x| x * s))
    }
}

/// `sum_k exp(-beta (eps_k - eps_1)) w_k w_k^T`, scaled by `exp(-beta eps_1)`.
pub fn boltzmann(decomp: &SpectralDecomposition, beta: f64) -> BoltzmannMatrix {
    let e0 = decomp.values[0];
    let mut scaled = [[0.0; 3]; 3];
    for (value, w) in decomp.values.iter().zip(&decomp.vectors) {
        let weight = (-beta * (value - e0)).exp();
        for i in 0..3 {
            for j in i..3 {
                scaled[i][j] += weight * w[i] * w[j];
            }
        }
    }
    for i in 0..3 {
        for j in 0..i {
            scaled[i][j] = scaled[j][i];
        }
    }
    BoltzmannMatrix {
        scaled,
        log_scale: -beta * e0,
    }
}

/// Closed-form `exp(-beta h)` for `delta = 0` with only `y_branch = y0`
/// nonzero, built from `a_+-` and `b_n`.
pub fn closed_form_boltzmann_delta0(
    params: &ModelParams,
    beta: f64,
    branch: Branch,
    y0: f64,
) -> Result<BoltzmannMatrix> {
    if params.delta != 0.0 {
        return Err(Error::NonzeroDelta(params.delta));
    }
    let gap = params.gap;
    let g = params.coupling(branch);
    let s = 4.0 * g * y0 / gap;
    let omega = (1.0 + s * s).sqrt();
    // Everything is multiplied by exp(-beta gap (omega - 1) / 2).
    let x = 0.5 * beta * gap * omega;
    let shift = 0.5 * beta * gap * (omega - 1.0);
    let decay = (-2.0 * x).exp();
    let rise = -(-2.0 * x).exp_m1();
    let a_plus = 0.5 * ((1.0 + decay) + rise / omega);
    let a_minus = 0.5 * ((1.0 + decay) - rise / omega);
    let b = -(s / omega) * 0.5 * rise;
    let spectator = (-shift).exp();
    let scaled = match branch {
        Branch::One => [
            [a_plus, 0.0, b],
            [0.0, spectator, 0.0],
            [b, 0.0, a_minus],
        ],
        Branch::Two => [
            [spectator, 0.0, 0.0],
            [0.0, a_plus, b],
            [0.0, b, a_minus],
        ],
    };
    Ok(BoltzmannMatrix {
        scaled,
        log_scale: shift,
    })
}
