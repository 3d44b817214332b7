//! Stationary points and the global minimum of `f` over `(y1, y2)`.
//!
//! Two independent routes:
//!
//! * `delta = 0`: nontrivial stationary points solve
//!   `(g_c / g)^2 Omega = q(Omega)` on one axis. [`stationary_points_delta0`]
//!   scans the residual on `(1, (g / g_c)^2)` and bisects every sign change.
//! * any `delta`: a brute-force grid over the `y1, y2 >= 0` quadrant yields
//!   local-minimum candidates, which [`refine`] polishes by alternating
//!   per-axis bisection on the analytic gradient.
//!
//! [`landscape`] uses the first route at `delta = 0`, where the second meets
//! exactly flat valleys, and the second otherwise.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free_energy::{f_delta0, f_value, grad_energy, q_complement};
use crate::model::{Branch, MeanField, ModelParams};

/// Default nodes per grid axis.
pub const DEFAULT_GRID_POINTS: usize = 401;

/// Gradient of the free energy per particle accepted at a stationary point,
/// in units of `gap`.
pub const GRADIENT_TOLERANCE: f64 = 1e-9;

/// Refined points closer than this (in units of `y_scale`) are the same
/// minimum.
const SAME_POINT: f64 = 1e-6;

/// Target bracket width of the per-axis bisection, in units of `y_scale`.
const BISECTION_WIDTH: f64 = 1e-13;

/// Probe distance from the origin used to decide its stability along an
/// axis, in units of `y_scale`.
const ORIGIN_PROBE: f64 = 1e-7;

const INITIAL_STEP: f64 = 1e-3;
const MAX_STEP: f64 = 0.05;
const MAX_SWEEPS: usize = 500;

/// Samples of the `delta = 0` residual between `Omega = 1` and the bound.
const RESIDUAL_SAMPLES: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StationaryKind {
    Minimum,
    Maximum,
    Saddle,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StationaryPoint {
    /// Canonical: `z = 0`, `y >= 0`.
    pub mf: MeanField,
    pub f0: f64,
    pub kind: StationaryKind,
    /// `None` for the trivial solution, otherwise the active mode.
    pub branch: Option<Branch>,
}

impl StationaryPoint {
    /// Builds a point at `mf`, evaluating `f` and tagging the active mode.
    fn at(params: &ModelParams, beta: f64, mf: MeanField, kind: StationaryKind) -> Self {
        Self {
            mf,
            f0: f_value(params, beta, &mf),
            kind,
            branch: active_branch(params, &mf),
        }
    }
}

/// The mode whose order parameter exceeds its tolerance. If both do, the one
/// further above tolerance.
pub fn active_branch(params: &ModelParams, mf: &MeanField) -> Option<Branch> {
    let r1 = mf.y1.abs() / params.order_tolerance(Branch::One);
    let r2 = mf.y2.abs() / params.order_tolerance(Branch::Two);
    match (r1 > 1.0, r2 > 1.0) {
        (false, false) => None,
        (true, false) => Some(Branch::One),
        (false, true) => Some(Branch::Two),
        (true, true) if r1 >= r2 => Some(Branch::One),
        (true, true) => Some(Branch::Two),
    }
}

/// Brute-force grid over `[0, y_max[0]] x [0, y_max[1]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub y_max: [f64; 2],
    pub points: [usize; 2],
}

impl GridSpec {
    pub fn new(y_max: [f64; 2], points: [usize; 2]) -> Result<Self> {
        for k in 0..2 {
            if !(y_max[k] > 0.0 && y_max[k].is_finite()) {
                return Err(Error::InvalidGrid(format!("y_max[{k}] must be positive")));
            }
            if points[k] < 2 {
                return Err(Error::InvalidGrid(format!("points[{k}] must be at least 2")));
            }
        }
        Ok(Self { y_max, points })
    }

    /// `points` nodes per axis reaching just past the stationarity bound
    /// `g_n / omega_n`, beyond which `f` increases monotonically.
    pub fn covering(params: &ModelParams, points: usize) -> Self {
        let y_max = Branch::BOTH.map(|b| 1.05 * params.y_bound(b) + 0.01 * params.y_scale(b));
        Self {
            y_max,
            points: [points.max(2); 2],
        }
    }

    pub fn default_for(params: &ModelParams) -> Self {
        Self::covering(params, DEFAULT_GRID_POINTS)
    }

    pub fn spacing(&self) -> [f64; 2] {
        [0, 1].map(|k| self.y_max[k] / (self.points[k] - 1) as f64)
    }

    fn node(&self, axis: usize, i: usize) -> f64 {
        if i + 1 == self.points[axis] {
            self.y_max[axis]
        } else {
            self.y_max[axis] * i as f64 / (self.points[axis] - 1) as f64
        }
    }
}

/// `(g_n / g_{n,c})^2`. Since `q < 1`, every root of
/// `(g_c / g)^2 Omega = q(Omega)` lies below it.
pub fn omega_upper_bound(params: &ModelParams, branch: Branch) -> f64 {
    let r = params.relative_coupling(branch);
    r * r
}

/// Inverts `Omega = sqrt(1 + 16 g_n^2 y^2 / gap^2)` on one axis.
pub fn y_from_omega(params: &ModelParams, branch: Branch, omega: f64) -> f64 {
    let g = params.coupling(branch);
    ((omega - 1.0) * (omega + 1.0)).max(0.0).sqrt() * params.gap / (4.0 * g)
}

/// Nontrivial stationary points on the `branch` axis for `delta = 0`, in
/// order of increasing `y`.
pub fn stationary_points_delta0(
    params: &ModelParams,
    beta: f64,
    branch: Branch,
) -> Result<Vec<StationaryPoint>> {
    if params.delta != 0.0 {
        return Err(Error::NonzeroDelta(params.delta));
    }
    let bound = omega_upper_bound(params, branch);
    if !(bound > 1.0) {
        return Ok(Vec::new());
    }
    let gap = params.gap;
    let residual = |om: f64| (om - bound) / bound + q_complement(beta, gap, om);

    // Quadratic spacing resolves the thermal layer just above Omega = 1.
    let omegas: Vec<f64> = (0..=RESIDUAL_SAMPLES)
        .map(|k| {
            let t = k as f64 / RESIDUAL_SAMPLES as f64;
            1.0 + (bound - 1.0) * t * t
        })
        .collect();
    let mut values: Vec<f64> = omegas.iter().map(|&o| residual(o)).collect();
    // The residual at the bound is 1 - q > 0, but underflows to 0 at large
    // beta gap; the minimum root then sits at the bound to machine precision.
    if let Some(last) = values.last_mut() {
        *last = last.max(f64::MIN_POSITIVE);
    }

    let mut brackets: Vec<(f64, f64)> = Vec::new();
    for k in 1..omegas.len() {
        let (r0, r1) = (values[k - 1], values[k]);
        if r0 != 0.0 && r0.signum() != r1.signum() && r1 != 0.0 {
            brackets.push((omegas[k - 1], omegas[k]));
        } else if r1 == 0.0 && k + 1 < omegas.len() {
            let r2 = values[k + 1];
            if r0.signum() != r2.signum() {
                brackets.push((omegas[k - 1], omegas[k + 1]));
            }
        }
        // A dip below zero between samples shows up as a positive local
        // minimum of the samples.
        if k + 1 < omegas.len() && r1 > 0.0 && r1 < r0 && r1 <= values[k + 1] {
            let (lo, hi) = (omegas[k - 1], omegas[k + 1]);
            let (om_min, r_min) = golden_minimum(&residual, lo, hi);
            if r_min < 0.0 {
                brackets.push((lo, om_min));
                brackets.push((om_min, hi));
            }
        }
    }
    brackets.sort_by(|a, b| a.0.total_cmp(&b.0));
    brackets.dedup();

    let mut points = Vec::with_capacity(brackets.len());
    for (lo, hi) in brackets {
        let rising = residual(lo) < 0.0;
        let root = bisect(&residual, lo, hi);
        if !(root > 1.0) {
            continue;
        }
        let y = y_from_omega(params, branch, root);
        let mf = MeanField::ORIGIN.with_y(branch, y);
        // df/dy has the sign of the residual: + -> - is a maximum.
        let kind = if rising {
            StationaryKind::Minimum
        } else {
            StationaryKind::Maximum
        };
        points.push(StationaryPoint {
            mf,
            f0: f_delta0(params, beta, &mf)?.f,
            kind,
            branch: Some(branch),
        });
    }
    Ok(points)
}

fn golden_minimum(func: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut a = hi - ratio * (hi - lo);
    let mut b = lo + ratio * (hi - lo);
    let (mut fa, mut fb) = (func(a), func(b));
    for _ in 0..200 {
        if hi - lo <= 1e-15 * hi.abs() {
            break;
        }
        if fa < fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - ratio * (hi - lo);
            fa = func(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + ratio * (hi - lo);
            fb = func(b);
        }
    }
    if fa < fb {
        (a, fa)
    } else {
        (b, fb)
    }
}

/// Sign-change bisection to `|hi - lo| < 1e-12` (or until the midpoint is
/// no longer representable between the ends).
fn bisect(func: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let neg_low = func(lo) < 0.0;
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (func(mid) < 0.0) == neg_low {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Evaluates `f` on every grid node (`z = 0`).
pub fn grid_values(params: &ModelParams, beta: f64, spec: &GridSpec) -> Vec<Vec<f64>> {
    (0..spec.points[0])
        .into_par_iter()
        .map(|i| {
            let y1 = spec.node(0, i);
            (0..spec.points[1])
                .map(|j| f_value(params, beta, &MeanField::on_plane(y1, spec.node(1, j))))
                .collect()
        })
        .collect()
}

/// Grid nodes whose `f` is no larger than any of their (up to eight)
/// neighbours, in row-major order.
pub fn grid_search(params: &ModelParams, beta: f64, spec: &GridSpec) -> Result<Vec<MeanField>> {
    let spec = GridSpec::new(spec.y_max, spec.points)?;
    let values = grid_values(params, beta, &spec);
    let (n1, n2) = (spec.points[0], spec.points[1]);
    let mut out = Vec::new();
    for i in 0..n1 {
        for j in 0..n2 {
            let v = values[i][j];
            let mut is_min = true;
            'nbr: for di in -1i64..=1 {
                for dj in -1i64..=1 {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let (a, b) = (i as i64 + di, j as i64 + dj);
                    if a < 0 || b < 0 || a >= n1 as i64 || b >= n2 as i64 {
                        continue;
                    }
                    if values[a as usize][b as usize] < v {
                        is_min = false;
                        break 'nbr;
                    }
                }
            }
            if is_min {
                out.push(MeanField::on_plane(spec.node(0, i), spec.node(1, j)));
            }
        }
    }
    Ok(out)
}

/// Polishes a seed into a stationary point by alternating 1-D minimizations
/// along each axis, each a bisection on the matching gradient component.
/// Each sweep is followed by a line minimization along its net displacement
/// and a safeguarded Newton step, which carry the iterate along shallow
/// curved valleys.
pub fn refine(params: &ModelParams, beta: f64, seed: &MeanField) -> Result<StationaryPoint> {
    let mut y = [seed.y1.abs(), seed.y2.abs()];
    let scale = Branch::BOTH.map(|b| params.y_scale(b));
    for _ in 0..MAX_SWEEPS {
        let before = y;
        for branch in Branch::BOTH {
            let k = branch.index();
            y[k] = line_minimum(params, beta, y, branch);
        }
        let moved = (0..2)
            .map(|k| (y[k] - before[k]).abs() / scale[k])
            .fold(0.0, f64::max);
        if moved <= 1e-12 {
            let g = grad_energy(params, beta, y[0], y[1]);
            if g[0].abs().max(g[1].abs()) <= GRADIENT_TOLERANCE * params.gap {
                let mf = MeanField::on_plane(y[0], y[1]);
                let kind = classify_kind(params, beta, y);
                return Ok(StationaryPoint::at(params, beta, mf, kind));
            }
        } else {
            y = extrapolate(params, beta, y, [y[0] - before[0], y[1] - before[1]], moved);
            if let Some(next) = newton_step(params, beta, y) {
                y = next;
            }
        }
    }
    Err(Error::NotConverged {
        seed: *seed,
        last: MeanField::on_plane(y[0], y[1]),
    })
}

/// Minimum of `f` along `y + t d` for `t >= 0`, staying in the quadrant
/// `y >= 0`. A coordinate that reaches the quadrant edge is set to exactly 0.
fn extrapolate(params: &ModelParams, beta: f64, y: [f64; 2], d: [f64; 2], d_scaled: f64) -> [f64; 2] {
    let at = |t: f64| [(y[0] + t * d[0]).max(0.0), (y[1] + t * d[1]).max(0.0)];
    let slope = |t: f64| {
        let p = at(t);
        let g = grad_energy(params, beta, p[0], p[1]);
        g[0] * d[0] + g[1] * d[1]
    };
    if !(slope(0.0) < 0.0) {
        return y;
    }
    let mut edge = f64::INFINITY;
    for k in 0..2 {
        if d[k] < 0.0 {
            edge = edge.min(y[k] / -d[k]);
        }
    }
    let mut last = 0.0f64;
    let mut step = 1.0;
    let hi = loop {
        let next = (last + step).min(edge);
        if slope(next) > 0.0 {
            break next;
        }
        if next >= edge {
            let mut p = at(edge);
            for k in 0..2 {
                if d[k] < 0.0 && y[k] / -d[k] == edge {
                    p[k] = 0.0;
                }
            }
            return p;
        }
        if !next.is_finite() || next > 1e6 {
            return y;
        }
        last = next;
        step *= 2.0;
    };
    at(bisect_slope(&slope, last, hi, BISECTION_WIDTH / d_scaled))
}

/// Newton step on the analytic gradient with a finite-difference Hessian,
/// clipped to the quadrant. `None` unless the Hessian is positive definite
/// and `f` does not increase.
fn newton_step(params: &ModelParams, beta: f64, y: [f64; 2]) -> Option<[f64; 2]> {
    let g = grad_energy(params, beta, y[0], y[1]);
    let mut hess = [[0.0; 2]; 2];
    for branch in Branch::BOTH {
        let k = branch.index();
        let h = 1e-6 * params.y_scale(branch);
        let (mut up, mut down) = (y, y);
        up[k] += h;
        down[k] -= h;
        let (gu, gd) = (grad_energy(params, beta, up[0], up[1]), grad_energy(params, beta, down[0], down[1]));
        for j in 0..2 {
            hess[j][k] = (gu[j] - gd[j]) / (2.0 * h);
        }
    }
    let off = 0.5 * (hess[0][1] + hess[1][0]);
    let det = hess[0][0] * hess[1][1] - off * off;
    if !(hess[0][0] > 0.0 && det > 0.0) {
        return None;
    }
    let step = [
        (hess[1][1] * g[0] - off * g[1]) / det,
        (hess[0][0] * g[1] - off * g[0]) / det,
    ];
    let next = [(y[0] - step[0]).max(0.0), (y[1] - step[1]).max(0.0)];
    let f = |p: [f64; 2]| f_value(params, beta, &MeanField::on_plane(p[0], p[1]));
    (next != y && f(next) <= f(y)).then_some(next)
}

/// Local minimum of `f` along one axis, starting from `y[axis]`, with the
/// other coordinate held fixed.
fn line_minimum(params: &ModelParams, beta: f64, y: [f64; 2], branch: Branch) -> f64 {
    let k = branch.index();
    if params.coupling(branch) == 0.0 {
        return 0.0;
    }
    let scale = params.y_scale(branch);
    let slope = |t: f64| {
        let mut p = y;
        p[k] = t;
        grad_energy(params, beta, p[0], p[1])[k]
    };
    let probe = ORIGIN_PROBE * scale;
    // Past the stationarity bound the slope is positive.
    let cap = params.y_bound(branch) * (1.0 + 1e-9) + probe;
    let start = y[k];

    let (lo, hi) = if start <= probe {
        if slope(probe) >= 0.0 {
            return 0.0;
        }
        match expand_right(&slope, probe, cap, scale) {
            Some(b) => b,
            None => return cap,
        }
    } else {
        let s0 = slope(start);
        if s0 == 0.0 {
            return start;
        }
        if s0 < 0.0 {
            match expand_right(&slope, start, cap, scale) {
                Some(b) => b,
                None => return cap,
            }
        } else {
            match expand_left(&slope, start, probe, scale) {
                Some(b) => b,
                None => return 0.0,
            }
        }
    };
    bisect_slope(&slope, lo, hi, BISECTION_WIDTH * scale)
}

/// From a point with negative slope, steps right until the slope turns
/// positive. Returns the bracket `(negative, positive)`.
fn expand_right(slope: &impl Fn(f64) -> f64, start: f64, cap: f64, scale: f64) -> Option<(f64, f64)> {
    let mut last = start;
    let mut step = INITIAL_STEP * scale;
    loop {
        let next = (last + step).min(cap);
        if slope(next) > 0.0 {
            return Some((last, next));
        }
        if next >= cap {
            return None;
        }
        last = next;
        step = (2.0 * step).min(MAX_STEP * scale);
    }
}

/// From a point with positive slope, steps left until the slope turns
/// negative. `None` means the slope stays positive down to the probe, so the
/// line minimum is the origin.
fn expand_left(slope: &impl Fn(f64) -> f64, start: f64, probe: f64, scale: f64) -> Option<(f64, f64)> {
    let mut last = start;
    let mut step = INITIAL_STEP * scale;
    loop {
        let next = (last - step).max(probe);
        if slope(next) < 0.0 {
            return Some((next, last));
        }
        if next <= probe {
            return None;
        }
        last = next;
        step = (2.0 * step).min(MAX_STEP * scale);
    }
}

fn bisect_slope(slope: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, width: f64) -> f64 {
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let s = slope(mid);
        if s == 0.0 {
            return mid;
        }
        if s < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Sign of the curvature along each axis, from central differences of the
/// analytic gradient.
fn classify_kind(params: &ModelParams, beta: f64, y: [f64; 2]) -> StationaryKind {
    let mut signs = [0i8; 2];
    for branch in Branch::BOTH {
        let k = branch.index();
        let h = 1e-6 * params.y_scale(branch);
        let at = |t: f64| {
            let mut p = y;
            p[k] = t;
            grad_energy(params, beta, p[0], p[1])[k]
        };
        let curvature = (at(y[k] + h) - at(y[k] - h)) / (2.0 * h);
        signs[k] = if curvature > 0.0 {
            1
        } else if curvature < 0.0 {
            -1
        } else {
            0
        };
    }
    match signs {
        [1, 1] => StationaryKind::Minimum,
        [-1, -1] => StationaryKind::Maximum,
        _ => StationaryKind::Saddle,
    }
}

/// Refines every seed and keeps the distinct minima, sorted by
/// `(branch, y1, y2)`. A seed that fails to converge is dropped if its last
/// iterate lies above some converged minimum, and is an error otherwise.
pub fn local_minima(
    params: &ModelParams,
    beta: f64,
    seeds: &[MeanField],
) -> Result<Vec<StationaryPoint>> {
    let s1 = params.y_scale(Branch::One);
    let s2 = params.y_scale(Branch::Two);
    let mut out: Vec<StationaryPoint> = Vec::new();
    let mut stalled: Vec<(f64, Error)> = Vec::new();
    for seed in seeds {
        let sp = match refine(params, beta, seed) {
            Ok(sp) => sp,
            Err(e @ Error::NotConverged { last, .. }) => {
                stalled.push((f_value(params, beta, &last), e));
                continue;
            }
            Err(e) => return Err(e),
        };
        if sp.kind != StationaryKind::Minimum {
            continue;
        }
        let dup = out.iter().any(|o| {
            (o.mf.y1 - sp.mf.y1).abs() <= SAME_POINT * s1 && (o.mf.y2 - sp.mf.y2).abs() <= SAME_POINT * s2
        });
        if !dup {
            out.push(sp);
        }
    }
    // A stalled seed is harmless only if it ended above a converged minimum.
    let f_min = out.iter().map(|m| m.f0).fold(f64::INFINITY, f64::min);
    if let Some((_, e)) = stalled
        .into_iter()
        .find(|(f, _)| !(f_min.is_finite() && (*f > f_min || is_tie(*f, f_min))))
    {
        return Err(e);
    }
    out.sort_by(|a, b| {
        a.branch
            .cmp(&b.branch)
            .then(a.mf.y1.total_cmp(&b.mf.y1))
            .then(a.mf.y2.total_cmp(&b.mf.y2))
    });
    Ok(out)
}

/// Two values of `f` closer than this (relative) are a tie.
pub fn is_tie(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

/// Smallest `f` among `minima`. Ties prefer trivial, then mode 1, then
/// mode 2. Fails if the winner has both modes active.
pub fn select_global(params: &ModelParams, minima: &[StationaryPoint]) -> Result<StationaryPoint> {
    let f_min = minima
        .iter()
        .map(|m| m.f0)
        .fold(f64::INFINITY, f64::min);
    let best = minima
        .iter()
        .filter(|m| is_tie(m.f0, f_min))
        .min_by(|a, b| a.branch.cmp(&b.branch).then(a.f0.total_cmp(&b.f0)))
        .copied()
        .ok_or_else(|| Error::InvalidGrid("no local minimum found".into()))?;
    check_single_mode(params, &best)?;
    Ok(best)
}

/// Rejects points where both order parameters exceed their tolerances.
pub fn check_single_mode(params: &ModelParams, sp: &StationaryPoint) -> Result<()> {
    if sp.mf.y1 > params.order_tolerance(Branch::One) && sp.mf.y2 > params.order_tolerance(Branch::Two)
    {
        return Err(Error::BothModesActive {
            y1: sp.mf.y1,
            y2: sp.mf.y2,
        });
    }
    Ok(())
}

/// All local minima found from a grid plus the global one among them.
#[derive(Debug, Clone, PartialEq)]
pub struct Landscape {
    pub minima: Vec<StationaryPoint>,
    pub global: StationaryPoint,
}

/// Grid candidates (and the origin, always) refined into local minima.
pub fn landscape(params: &ModelParams, beta: f64, spec: &GridSpec) -> Result<Landscape> {
    landscape_with_seeds(params, beta, spec, &[])
}

/// As [`landscape`], with extra seeds refined ahead of the grid candidates.
/// At `delta = 0` the exact axis roots replace the grid and the seeds.
pub fn landscape_with_seeds(
    params: &ModelParams,
    beta: f64,
    spec: &GridSpec,
    extra: &[MeanField],
) -> Result<Landscape> {
    if params.delta == 0.0 {
        landscape_delta0(params, beta)
    } else {
        grid_landscape(params, beta, spec, extra)
    }
}

/// The grid route for any `delta`.
pub fn grid_landscape(
    params: &ModelParams,
    beta: f64,
    spec: &GridSpec,
    extra: &[MeanField],
) -> Result<Landscape> {
    let mut seeds = vec![MeanField::ORIGIN];
    seeds.extend_from_slice(extra);
    seeds.extend(grid_search(params, beta, spec)?);
    let minima = local_minima(params, beta, &seeds)?;
    let global = select_global(params, &minima)?;
    Ok(Landscape { minima, global })
}

/// Local minima at `delta = 0`. There `f` depends on `(y1, y2)` through
/// `omega1 y1^2 + omega2 y2^2` and `g1^2 y1^2 + g2^2 y2^2` only, so every
/// minimum lies on an axis. A root on axis `n` is stable across it iff
/// `g_n^2 / omega_n >= g_m^2 / omega_m`; at equality a degenerate arc joins
/// the two axes and both ends are kept.
pub fn landscape_delta0(params: &ModelParams, beta: f64) -> Result<Landscape> {
    let mut minima = Vec::new();
    let origin_stable = Branch::BOTH.into_iter().all(|b| {
        let probe = MeanField::ORIGIN.with_y(b, ORIGIN_PROBE * params.y_scale(b));
        params.coupling(b) == 0.0 || grad_energy(params, beta, probe.y1, probe.y2)[b.index()] >= 0.0
    });
    if origin_stable {
        minima.push(StationaryPoint::at(params, beta, MeanField::ORIGIN, StationaryKind::Minimum));
    }
    let strength = Branch::BOTH.map(|b| params.coupling(b).powi(2) / params.omega(b));
    for branch in Branch::BOTH {
        let (own, other) = (strength[branch.index()], strength[branch.other().index()]);
        if own < other * (1.0 - 1e-12) {
            continue;
        }
        for sp in stationary_points_delta0(params, beta, branch)? {
            if sp.kind == StationaryKind::Minimum {
                minima.push(StationaryPoint::at(params, beta, sp.mf, StationaryKind::Minimum));
            }
        }
    }
    let global = select_global(params, &minima)?;
    Ok(Landscape { minima, global })
}

pub fn global_minimum(params: &ModelParams, beta: f64, spec: &GridSpec) -> Result<StationaryPoint> {
    Ok(landscape(params, beta, spec)?.global)
}
