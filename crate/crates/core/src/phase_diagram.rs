//! Parameter sweeps, phase classification and first-order boundaries.
//!
//! A sweep is a row-major grid. Each row (strip) runs along the fast axis
//! with warm starts: a node is seeded with the previous node's minima plus a
//! coarse grid, and every `verify_every`-th node gets a full fresh grid.
//! Strips are independent, so running them on any number of threads gives
//! bitwise-identical results.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minimizer::{
    check_single_mode, landscape_with_seeds, refine, GridSpec, Landscape, StationaryKind,
    StationaryPoint, DEFAULT_GRID_POINTS,
};
use crate::model::{Branch, MeanField, ModelParams, PhaseLabel, ThermoPoint};
use crate::observables::{observable_set, ObservableSet};

/// Relative bracket width at which boundary bisection stops.
pub const BOUNDARY_RESOLUTION: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepOptions {
    /// Nodes per axis of the fresh grid.
    pub grid_points: usize,
    /// Nodes per axis of the grid added to warm-start seeds.
    pub coarse_points: usize,
    /// A strip runs a fresh grid at every node index divisible by this.
    pub verify_every: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            grid_points: DEFAULT_GRID_POINTS,
            coarse_points: 41,
            verify_every: 32,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint {
    /// `[slow, fast]` axis values of the node.
    pub coords: [f64; 2],
    pub label: PhaseLabel,
    pub obs: ObservableSet,
    pub n_local_minima: usize,
    pub global: StationaryPoint,
    pub minima: Vec<StationaryPoint>,
}

/// Label of a global minimum. Fails if both order parameters exceed their
/// tolerances.
pub fn classify(sp: &StationaryPoint, tol: [f64; 2]) -> Result<PhaseLabel> {
    let (a1, a2) = (sp.mf.y1.abs() > tol[0], sp.mf.y2.abs() > tol[1]);
    match (a1, a2) {
        (true, true) => Err(Error::BothModesActive {
            y1: sp.mf.y1,
            y2: sp.mf.y2,
        }),
        (true, false) => Ok(PhaseLabel::Sr1),
        (false, true) => Ok(PhaseLabel::Sr2),
        (false, false) => Ok(PhaseLabel::Normal),
    }
}

/// The label recovered from mode occupations alone, `y_n = sqrt(n_n)`.
pub fn label_from_observables(obs: &ObservableSet, tol: [f64; 2]) -> Result<PhaseLabel> {
    let sp = StationaryPoint {
        mf: MeanField::on_plane(obs.n1.sqrt(), obs.n2.sqrt()),
        f0: obs.f0,
        kind: StationaryKind::Minimum,
        branch: None,
    };
    classify(&sp, tol)
}

pub fn tolerances(params: &ModelParams) -> [f64; 2] {
    Branch::BOTH.map(|b| params.order_tolerance(b))
}

/// Evenly spaced values from `min` to `max` inclusive.
pub fn linspace(min: f64, max: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![min],
        n => (0..n)
            .map(|i| {
                if i + 1 == n {
                    max
                } else {
                    min + (max - min) * (i as f64 / (n - 1) as f64)
                }
            })
            .collect(),
    }
}

fn solve_node(
    params: &ModelParams,
    beta: f64,
    seeds: &[MeanField],
    fresh: bool,
    options: &SweepOptions,
) -> Result<Landscape> {
    let points = if fresh {
        options.grid_points
    } else {
        options.coarse_points
    };
    landscape_with_seeds(params, beta, &GridSpec::covering(params, points), seeds)
}

fn phase_point(params: &ModelParams, beta: f64, coords: [f64; 2], land: Landscape) -> Result<PhasePoint> {
    let label = classify(&land.global, tolerances(params))?;
    Ok(PhasePoint {
        coords,
        label,
        obs: observable_set(params, beta, &land.global),
        n_local_minima: land.minima.len(),
        global: land.global,
        minima: land.minima,
    })
}

/// One node from a fresh grid, without warm starts.
pub fn solve_point(
    params: &ModelParams,
    beta: f64,
    coords: [f64; 2],
    options: &SweepOptions,
) -> Result<PhasePoint> {
    let land = solve_node(params, beta, &[], true, options)?;
    phase_point(params, beta, coords, land)
}

/// Runs one strip per `slow` value along `fast`, in parallel over strips.
/// `node` maps `(slow, fast)` to the model and inverse temperature.
pub fn sweep<F>(slow: &[f64], fast: &[f64], options: &SweepOptions, node: F) -> Result<Vec<PhasePoint>>
where
    F: Fn(f64, f64) -> Result<(ModelParams, f64)> + Sync,
{
    let options = SweepOptions {
        verify_every: options.verify_every.max(1),
        ..*options
    };
    let strips: Vec<Vec<PhasePoint>> = slow
        .par_iter()
        .map(|&s| {
            let mut out = Vec::with_capacity(fast.len());
            let mut seeds: Vec<MeanField> = Vec::new();
            for (k, &f) in fast.iter().enumerate() {
                let at = |e: Error| Error::AtNode {
                    coords: format!("({s}, {f})"),
                    source: Box::new(e),
                };
                let (params, beta) = node(s, f).map_err(at)?;
                let fresh = k % options.verify_every == 0;
                let land = solve_node(&params, beta, &seeds, fresh, &options).map_err(at)?;
                seeds = land.minima.iter().map(|m| m.mf).collect();
                out.push(phase_point(&params, beta, [s, f], land).map_err(at)?);
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(strips.into_iter().flatten().collect())
}

/// Row-major over `(g1, g2)` with `g2` the fast axis; coordinates are the
/// couplings themselves.
pub fn sweep_g1g2(
    template: &ModelParams,
    beta: f64,
    g1: &[f64],
    g2: &[f64],
    options: &SweepOptions,
) -> Result<Vec<PhasePoint>> {
    template.validate()?;
    ThermoPoint::new(beta)?;
    sweep(g1, g2, options, |a, b| {
        let p = ModelParams {
            g1: a,
            g2: b,
            ..*template
        };
        Ok((p.validate()?, beta))
    })
}

/// Row-major over `(k_B T, g1)` with `g1` the fast axis; `g2` comes from the
/// template.
pub fn sweep_g1t(
    template: &ModelParams,
    temperatures: &[f64],
    g1: &[f64],
    options: &SweepOptions,
) -> Result<Vec<PhasePoint>> {
    template.validate()?;
    sweep(temperatures, g1, options, |t, a| {
        let beta = ThermoPoint::from_temperature(t)?.beta;
        let p = ModelParams { g1: a, ..*template };
        Ok((p.validate()?, beta))
    })
}

/// Parameter varied by a boundary scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanAxis {
    G1,
    G2,
    /// `k_B T` in energy units.
    Temperature,
}

impl ScanAxis {
    fn apply(self, template: &ModelParams, beta: f64, x: f64) -> Result<(ModelParams, f64)> {
        Ok(match self {
            ScanAxis::G1 => (ModelParams { g1: x, ..*template }.validate()?, beta),
            ScanAxis::G2 => (ModelParams { g2: x, ..*template }.validate()?, beta),
            ScanAxis::Temperature => (
                template.validate()?,
                ThermoPoint::from_temperature(x)?.beta,
            ),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            ScanAxis::G1 => "g1",
            ScanAxis::G2 => "g2",
            ScanAxis::Temperature => "kT",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPoint {
    pub axis: ScanAxis,
    pub location: f64,
    pub from: PhaseLabel,
    pub to: PhaseLabel,
    /// `|obs(to) - obs(from)|` field by field, both evaluated at `location`.
    pub jump: ObservableSet,
    pub below: ObservableSet,
    pub above: ObservableSet,
    pub spinodal_lo: Option<f64>,
    pub spinodal_hi: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryOptions {
    pub grid_points: usize,
    pub spinodals: bool,
}

impl Default for BoundaryOptions {
    fn default() -> Self {
        Self {
            grid_points: DEFAULT_GRID_POINTS,
            spinodals: false,
        }
    }
}

struct Probe {
    global: StationaryPoint,
    label: PhaseLabel,
}

fn probe(template: &ModelParams, beta: f64, axis: ScanAxis, x: f64, points: usize) -> Result<Probe> {
    let (params, b) = axis.apply(template, beta, x)?;
    let land = landscape_with_seeds(&params, b, &GridSpec::covering(&params, points), &[])?;
    let label = classify(&land.global, tolerances(&params))?;
    Ok(Probe {
        global: land.global,
        label,
    })
}

/// Bisects `[lo, hi]` on the switch of the global-minimum label.
///
/// For a temperature scan `beta` is ignored and `lo`, `hi` are `k_B T`.
pub fn locate_boundary(
    template: &ModelParams,
    beta: f64,
    axis: ScanAxis,
    bracket: (f64, f64),
    options: &BoundaryOptions,
) -> Result<BoundaryPoint> {
    let (mut lo, mut hi) = (bracket.0.min(bracket.1), bracket.0.max(bracket.1));
    let points = options.grid_points;
    let mut a = probe(template, beta, axis, lo, points)?;
    let mut b = probe(template, beta, axis, hi, points)?;
    if a.label == b.label {
        return Err(Error::NoTransition { lo, hi });
    }
    let from = a.label;
    while hi - lo > BOUNDARY_RESOLUTION * lo.abs().max(hi.abs()) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let m = probe(template, beta, axis, mid, points)?;
        if m.label == from {
            lo = mid;
            a = m;
        } else {
            hi = mid;
            b = m;
        }
    }
    let location = 0.5 * (lo + hi);
    let (params, b_at) = axis.apply(template, beta, location)?;
    let left = refine(&params, b_at, &a.global.mf)?;
    let right = refine(&params, b_at, &b.global.mf)?;
    for sp in [&left, &right] {
        check_single_mode(&params, sp)?;
    }
    let below = observable_set(&params, b_at, &left);
    let above = observable_set(&params, b_at, &right);

    let (spinodal_lo, spinodal_hi) = if options.spinodals {
        let to_label = b.label;
        let lo_edge = spinodal(template, beta, axis, location, &right, to_label, -1.0)?;
        let hi_edge = spinodal(template, beta, axis, location, &left, from, 1.0)?;
        (Some(lo_edge.min(location)), Some(hi_edge.max(location)))
    } else {
        (None, None)
    };

    Ok(BoundaryPoint {
        axis,
        location,
        from,
        to: b.label,
        jump: abs_diff(&below, &above),
        below,
        above,
        spinodal_lo,
        spinodal_hi,
    })
}

fn abs_diff(a: &ObservableSet, b: &ObservableSet) -> ObservableSet {
    ObservableSet {
        n1: (b.n1 - a.n1).abs(),
        n2: (b.n2 - a.n2).abs(),
        p11: (b.p11 - a.p11).abs(),
        p22: (b.p22 - a.p22).abs(),
        p33: (b.p33 - a.p33).abs(),
        c13: (b.c13 - a.c13).abs(),
        c23: (b.c23 - a.c23).abs(),
        c12: (b.c12 - a.c12).abs(),
        f0: (b.f0 - a.f0).abs(),
        f_per_particle: (b.f_per_particle - a.f_per_particle).abs(),
    }
}

/// Refines `seed` at `x` and reports whether it stays a minimum with the
/// given label.
fn survives(
    template: &ModelParams,
    beta: f64,
    axis: ScanAxis,
    x: f64,
    seed: &StationaryPoint,
    label: PhaseLabel,
) -> Result<Option<StationaryPoint>> {
    let (params, b) = axis.apply(template, beta, x)?;
    let sp = refine(&params, b, &seed.mf)?;
    let ok = sp.kind == StationaryKind::Minimum
        && classify(&sp, tolerances(&params)).is_ok_and(|l| l == label);
    Ok(ok.then_some(sp))
}

/// Furthest axis value, in direction `dir` from `start`, up to which the
/// branch of `seed` remains a local minimum.
fn spinodal(
    template: &ModelParams,
    beta: f64,
    axis: ScanAxis,
    start: f64,
    seed: &StationaryPoint,
    label: PhaseLabel,
    dir: f64,
) -> Result<f64> {
    let floor = match axis {
        ScanAxis::Temperature => f64::MIN_POSITIVE,
        _ => 0.0,
    };
    let Some(mut last) = survives(template, beta, axis, start, seed, label)? else {
        return Ok(start);
    };
    let mut inside = start;
    let mut step = 1e-4 * start.abs().max(1e-3);
    // Expand until the branch is lost.
    let mut outside = loop {
        let x = (inside + dir * step).max(floor);
        if x == inside {
            return Ok(inside);
        }
        match survives(template, beta, axis, x, &last, label)? {
            Some(sp) => {
                inside = x;
                last = sp;
                step *= 2.0;
                if step > 1e3 * start.abs().max(1.0) {
                    return Ok(inside);
                }
            }
            None => break x,
        }
    };
    while (outside - inside).abs() > BOUNDARY_RESOLUTION * inside.abs().max(outside.abs()) {
        let mid = 0.5 * (inside + outside);
        if mid == inside || mid == outside {
            break;
        }
        match survives(template, beta, axis, mid, &last, label)? {
            Some(sp) => {
                inside = mid;
                last = sp;
            }
            None => outside = mid,
        }
    }
    Ok(inside)
}
