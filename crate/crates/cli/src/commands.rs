//! Subcommand implementations. Each builds tables and hands them to an
//! [`Emitter`].

use std::path::PathBuf;

use lambda_dicke::free_energy::f_general;
use lambda_dicke::minimizer::GridSpec;
use lambda_dicke::observables::ObservableSet;
use lambda_dicke::phase_diagram::{
    locate_boundary, solve_point, sweep_g1g2, sweep_g1t, BoundaryOptions, PhasePoint, ScanAxis,
};
use lambda_dicke::zero_temp::{p33_zero_t, y_zero_t};
use lambda_dicke::{Branch, Error, MeanField, ModelParams, ThermoPoint};

use crate::config::{AxisSpec, RunConfig};
use crate::emit::{minima_columns, minima_rows, phase_columns, phase_row, Cell, Emitter, Table};
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::Subcommand)]
pub enum Command {
    /// f over a (y1, y2) grid at fixed parameters.
    Landscape,
    /// Global minimum and observables at each parameter set.
    Minimize,
    /// Phase diagram over (g1, g2), one block per temperature.
    Sweep2d,
    /// Phase diagram over (k_B T, g1).
    #[command(name = "sweepT")]
    SweepT,
    /// Locate normal/superradiant boundaries and their jumps.
    Boundary,
    /// Compare the low-temperature pipeline with the zero-temperature closed forms.
    Ztcheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Landscape => "landscape",
            Command::Minimize => "minimize",
            Command::Sweep2d => "sweep2d",
            Command::SweepT => "sweepT",
            Command::Boundary => "boundary",
            Command::Ztcheck => "ztcheck",
        }
    }
}

/// Runs `command` on a worker pool sized by the config.
pub fn execute(command: Command, cfg: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.run.workers)
        .build()
        .map_err(|e| CliError::Output(e.to_string()))?;
    pool.install(|| {
        let mut out = Emitter::new(cfg, command.name())?;
        match command {
            Command::Landscape => landscape(cfg, &mut out)?,
            Command::Minimize => minimize(cfg, &mut out)?,
            Command::Sweep2d => sweep2d(cfg, &mut out)?,
            Command::SweepT => sweep_t(cfg, &mut out)?,
            Command::Boundary => boundary(cfg, &mut out)?,
            Command::Ztcheck => ztcheck(cfg, &mut out)?,
        }
        out.finish()
    })
}

struct Ctx {
    template: ModelParams,
    t_col: &'static str,
    temps: Vec<(f64, f64)>,
}

/// Template model and `(configured, beta)` temperature pairs.
fn context(cfg: &RunConfig) -> Result<Ctx, CliError> {
    let template = cfg.params()?;
    let temps = cfg
        .temperatures()
        .into_iter()
        .map(|t| Ok((t, ThermoPoint::from_temperature(cfg.absolute_temperature(t))?.beta)))
        .collect::<Result<_, Error>>()?;
    Ok(Ctx {
        template,
        t_col: cfg.temperature_unit().column(),
        temps,
    })
}

fn landscape(cfg: &RunConfig, out: &mut Emitter) -> Result<(), CliError> {
    let ctx = context(cfg)?;
    let g1 = cfg.coupling_axis(Branch::One);
    let g2 = cfg.coupling_axis(Branch::Two);
    let g1_max = g1.values.iter().copied().fold(0.0, f64::max);
    let default_y1 = {
        let p = ModelParams { g1: g1_max, ..ctx.template };
        AxisSpec {
            min: 0.0,
            max: GridSpec::default_for(&p).y_max[0],
            points: 201,
            scale_by_critical: None,
        }
    };
    let y1 = cfg.axes.y1.unwrap_or(default_y1).values();
    let y2 = cfg.axes.y2.unwrap_or(AxisSpec::single(0.0)).values();

    let mut table = Table::new([ctx.t_col, g1.name, g2.name, "y1", "y2", "f", "f_minus_origin"]);
    for &(t, beta) in &ctx.temps {
        for (c1, &v1) in g1.coords.iter().zip(&g1.values) {
            for (c2, &v2) in g2.coords.iter().zip(&g2.values) {
                let p = ModelParams { g1: v1, g2: v2, ..ctx.template }.validate()?;
                let origin = f_general(&p, beta, &MeanField::ORIGIN).f;
                for &a in &y1 {
                    for &b in &y2 {
                        let f = f_general(&p, beta, &MeanField::on_plane(a, b)).f;
                        table.push(
                            [t, *c1, *c2, a, b, f, f - origin].map(Cell::Num).to_vec(),
                        );
                    }
                }
            }
        }
    }
    out.table("", &table)?;
    Ok(())
}

fn emit_phase_points(
    cfg: &RunConfig,
    out: &mut Emitter,
    coord_names: &[&str],
    points: &[(Vec<f64>, PhasePoint)],
) -> Result<(), CliError> {
    let mut table = Table::new(phase_columns(coord_names));
    for (coords, pt) in points {
        table.push(phase_row(coords, pt));
    }
    out.table("", &table)?;
    if cfg.features.metastable {
        let mut minima = Table::new(minima_columns(coord_names));
        for (coords, pt) in points {
            for row in minima_rows(coords, pt) {
                minima.push(row);
            }
        }
        out.table(".minima", &minima)?;
    }
    Ok(())
}

fn minimize(cfg: &RunConfig, out: &mut Emitter) -> Result<(), CliError> {
    let ctx = context(cfg)?;
    let g1 = cfg.coupling_axis(Branch::One);
    let g2 = cfg.coupling_axis(Branch::Two);
    let opts = cfg.sweep_options();
    let mut points = Vec::new();
    for &(t, beta) in &ctx.temps {
        for (c1, &v1) in g1.coords.iter().zip(&g1.values) {
            for (c2, &v2) in g2.coords.iter().zip(&g2.values) {
                let p = ModelParams { g1: v1, g2: v2, ..ctx.template }.validate()?;
                let pt = solve_point(&p, beta, [v1, v2], &opts)?;
                points.push((vec![t, *c1, *c2], pt));
            }
        }
    }
    emit_phase_points(cfg, out, &[ctx.t_col, g1.name, g2.name], &points)
}

fn sweep2d(cfg: &RunConfig, out: &mut Emitter) -> Result<(), CliError> {
    let ctx = context(cfg)?;
    let g1 = cfg.coupling_axis(Branch::One);
    let g2 = cfg.coupling_axis(Branch::Two);
    let opts = cfg.sweep_options();
    let n2 = g2.values.len();
    let mut points = Vec::new();
    for &(t, beta) in &ctx.temps {
        let pts = sweep_g1g2(&ctx.template, beta, &g1.values, &g2.values, &opts)?;
        for (k, pt) in pts.into_iter().enumerate() {
            points.push((vec![t, g1.coords[k / n2], g2.coords[k % n2]], pt));
        }
    }
    emit_phase_points(cfg, out, &[ctx.t_col, g1.name, g2.name], &points)
}

fn sweep_t(cfg: &RunConfig, out: &mut Emitter) -> Result<(), CliError> {
    let ctx = context(cfg)?;
    let g1 = cfg.coupling_axis(Branch::One);
    let opts = cfg.sweep_options();
    let kts: Vec<f64> = ctx
        .temps
        .iter()
        .map(|&(t, _)| cfg.absolute_temperature(t))
        .collect();
    let n = g1.values.len();
    let pts = sweep_g1t(&ctx.template, &kts, &g1.values, &opts)?;
    let points: Vec<_> = pts
        .into_iter()
        .enumerate()
        .map(|(k, pt)| (vec![ctx.temps[k / n].0, g1.coords[k % n]], pt))
        .collect();
    emit_phase_points(cfg, out, &[ctx.t_col, g1.name], &points)
}

const JUMP_FIELDS: [&str; 8] = ["n1", "n2", "p11", "p22", "p33", "c13", "c23", "c12"];

fn jump_values(o: &ObservableSet) -> [f64; 8] {
    [o.n1, o.n2, o.p11, o.p22, o.p33, o.c13, o.c23, o.c12]
}

fn boundary(cfg: &RunConfig, out: &mut Emitter) -> Result<(), CliError> {
    let ctx = context(cfg)?;
    let axis = cfg.boundary.axis;
    let bracket = cfg.boundary_bracket();
    let opts = BoundaryOptions {
        grid_points: cfg.grid.points,
        spinodals: cfg.features.spinodals,
    };
    let location = cfg.boundary_column();
    let mut columns: Vec<String> = Vec::new();
    if axis != ScanAxis::Temperature {
        columns.push(ctx.t_col.into());
    }
    columns.extend(["from", "to", location].map(String::from));
    columns.extend(JUMP_FIELDS.iter().map(|f| format!("jump_{f}")));
    columns.extend(["spinodal_lo", "spinodal_hi"].map(String::from));
    let mut table = Table::new(columns);

    let runs: Vec<(Option<f64>, f64)> = if axis == ScanAxis::Temperature {
        vec![(None, 1.0)]
    } else {
        ctx.temps.iter().map(|&(t, b)| (Some(t), b)).collect()
    };
    for (t, beta) in runs {
        let bp = locate_boundary(&ctx.template, beta, axis, bracket, &opts)?;
        let mut row: Vec<Cell> = t.into_iter().map(Cell::Num).collect();
        row.push(Cell::Text(bp.from.as_str().into()));
        row.push(Cell::Text(bp.to.as_str().into()));
        row.push(Cell::Num(cfg.boundary_coordinate(bp.location)));
        row.extend(jump_values(&bp.jump).map(Cell::Num));
        for s in [bp.spinodal_lo, bp.spinodal_hi] {
            row.push(Cell::Num(s.map_or(f64::NAN, |x| cfg.boundary_coordinate(x))));
        }
        table.push(row);
    }
    out.table("", &table)?;
    Ok(())
}

fn ztcheck(cfg: &RunConfig, out: &mut Emitter) -> Result<(), CliError> {
    let ctx = context(cfg)?;
    if ctx.template.delta != 0.0 {
        return Err(Error::NonzeroDelta(ctx.template.delta).into());
    }
    let g1 = cfg.coupling_axis(Branch::One);
    let opts = cfg.sweep_options();
    let mut table = Table::new([
        ctx.t_col,
        g1.name,
        "label",
        "y1",
        "y1_zero_t",
        "y1_rel_err",
        "p33",
        "p33_zero_t",
        "p33_abs_err",
    ]);
    for &(t, beta) in &ctx.temps {
        for (c1, &v1) in g1.coords.iter().zip(&g1.values) {
            let p = ModelParams { g1: v1, ..ctx.template }.validate()?;
            let pt = solve_point(&p, beta, [t, v1], &opts)?;
            let y = pt.global.mf.y1;
            let y0 = y_zero_t(&p, Branch::One);
            let rel = if y0 > 0.0 { (y - y0).abs() / y0 } else { y.abs() };
            let p33_0 = p33_zero_t(&p, Branch::One).unwrap_or(f64::NAN);
            table.push(vec![
                Cell::Num(t),
                Cell::Num(*c1),
                Cell::Text(pt.label.as_str().into()),
                Cell::Num(y),
                Cell::Num(y0),
                Cell::Num(rel),
                Cell::Num(pt.obs.p33),
                Cell::Num(p33_0),
                Cell::Num((pt.obs.p33 - p33_0).abs()),
            ]);
        }
    }
    out.table("", &table)?;
    Ok(())
}
