//! Tabular output. Numbers are written with 17 significant digits, which
//! round-trips every `f64` exactly.

use std::fs;
use std::path::{Path, PathBuf};

use lambda_dicke::minimizer::{StationaryPoint, GRADIENT_TOLERANCE};
use lambda_dicke::model::ORDER_TOLERANCE_SCALE;
use lambda_dicke::phase_diagram::{PhasePoint, BOUNDARY_RESOLUTION};
use lambda_dicke::PhaseLabel;
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::error::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Columns following the coordinates in every phase-point table.
pub const PHASE_COLUMNS: [&str; 11] = [
    "label",
    "n1",
    "n2",
    "p11",
    "p22",
    "p33",
    "c13",
    "c23",
    "c12",
    "f0",
    "n_local_minima",
];

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
}

impl Cell {
    pub fn render(&self) -> String {
        match self {
            Cell::Num(x) => format_num(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Num(x) => serde_json::Number::from_f64(*x)
                .map(serde_json::Value::Number)
                .unwrap_or_else(|| serde_json::Value::String(format_num(*x))),
            Cell::Int(n) => (*n).into(),
            Cell::Text(s) => s.clone().into(),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(x) => Some(*x),
            Cell::Int(n) => Some(*n as f64),
            Cell::Text(_) => None,
        }
    }
}

pub fn format_num(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn to_csv(&self) -> Result<Vec<u8>, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let out = |e: csv::Error| CliError::Output(e.to_string());
        w.write_record(&self.columns).map_err(out)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render)).map_err(out)?;
        }
        w.into_inner().map_err(|e| CliError::Output(e.to_string()))
    }

    pub fn to_json(&self) -> Result<Vec<u8>, CliError> {
        let rows: Vec<serde_json::Map<String, serde_json::Value>> = self
            .rows
            .iter()
            .map(|row| {
                self.columns
                    .iter()
                    .cloned()
                    .zip(row.iter().map(Cell::json))
                    .collect()
            })
            .collect();
        let mut bytes = serde_json::to_vec_pretty(&rows).map_err(|e| CliError::Output(e.to_string()))?;
        bytes.push(b'\n');
        Ok(bytes)
    }

    /// Reads a CSV written by [`Table::to_csv`]. Fields that parse as numbers
    /// become [`Cell::Num`].
    pub fn from_csv(bytes: &[u8]) -> Result<Self, CliError> {
        let mut r = csv::Reader::from_reader(bytes);
        let err = |e: csv::Error| CliError::Output(e.to_string());
        let columns = r.headers().map_err(err)?.iter().map(String::from).collect();
        let mut rows = Vec::new();
        for rec in r.records() {
            let rec = rec.map_err(err)?;
            rows.push(
                rec.iter()
                    .map(|f| match f.parse::<f64>() {
                        Ok(x) => Cell::Num(x),
                        Err(_) => Cell::Text(f.to_string()),
                    })
                    .collect(),
            );
        }
        Ok(Self { columns, rows })
    }
}

pub fn phase_columns(coords: &[&str]) -> Vec<String> {
    coords
        .iter()
        .copied()
        .chain(PHASE_COLUMNS)
        .map(String::from)
        .collect()
}

pub fn phase_row(coords: &[f64], pt: &PhasePoint) -> Vec<Cell> {
    let o = &pt.obs;
    let mut row: Vec<Cell> = coords.iter().map(|&c| Cell::Num(c)).collect();
    row.push(Cell::Text(pt.label.as_str().into()));
    row.extend([o.n1, o.n2, o.p11, o.p22, o.p33, o.c13, o.c23, o.c12, o.f0].map(Cell::Num));
    row.push(Cell::Int(pt.n_local_minima as u64));
    row
}

pub fn minima_columns(coords: &[&str]) -> Vec<String> {
    coords
        .iter()
        .copied()
        .chain(["index", "y1", "y2", "f0", "branch", "is_global"])
        .map(String::from)
        .collect()
}

pub fn minima_rows(coords: &[f64], pt: &PhasePoint) -> Vec<Vec<Cell>> {
    pt.minima
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let mut row: Vec<Cell> = coords.iter().map(|&c| Cell::Num(c)).collect();
            row.push(Cell::Int(i as u64));
            row.extend([m.mf.y1, m.mf.y2, m.f0].map(Cell::Num));
            row.push(Cell::Text(PhaseLabel::from_branch(m.branch).as_str().into()));
            row.push(Cell::Int(is_same(m, &pt.global) as u64));
            row
        })
        .collect()
}

fn is_same(a: &StationaryPoint, b: &StationaryPoint) -> bool {
    a.mf == b.mf && a.f0 == b.f0
}

#[derive(Serialize)]
struct MetaInfo<'a> {
    version: &'a str,
    command: &'a str,
    order_tolerance_scale: f64,
    gradient_tolerance: f64,
    boundary_resolution: f64,
    files: Vec<String>,
}

#[derive(Serialize)]
struct MetaDoc<'a> {
    meta: MetaInfo<'a>,
    #[serde(flatten)]
    config: &'a RunConfig,
}

/// Writes files into the configured output directory.
pub struct Emitter<'a> {
    config: &'a RunConfig,
    command: &'a str,
    written: Vec<PathBuf>,
}

impl<'a> Emitter<'a> {
    pub fn new(config: &'a RunConfig, command: &'a str) -> Result<Self, CliError> {
        let dir = &config.output.dir;
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        Ok(Self {
            config,
            command,
            written: Vec::new(),
        })
    }

    fn basename(&self) -> &str {
        self.config.output.basename.as_deref().unwrap_or(self.command)
    }

    fn path(&self, suffix: &str) -> PathBuf {
        self.config.output.dir.join(format!("{}{suffix}", self.basename()))
    }

    /// Writes `<basename><suffix>.<ext>` in the configured format.
    pub fn table(&mut self, suffix: &str, table: &Table) -> Result<PathBuf, CliError> {
        let format = self.config.output.format;
        let bytes = match format {
            Format::Csv => table.to_csv()?,
            Format::Json => table.to_json()?,
        };
        let path = self.path(&format!("{suffix}.{}", format.extension()));
        write(&path, &bytes)?;
        self.written.push(path.clone());
        Ok(path)
    }

    /// Writes `<basename>.meta.toml` and returns every path written.
    pub fn finish(mut self) -> Result<Vec<PathBuf>, CliError> {
        let files = self
            .written
            .iter()
            .filter_map(|p| p.file_name().map(|n| n.to_string_lossy().into_owned()))
            .collect();
        let doc = MetaDoc {
            meta: MetaInfo {
                version: VERSION,
                command: self.command,
                order_tolerance_scale: ORDER_TOLERANCE_SCALE,
                gradient_tolerance: GRADIENT_TOLERANCE,
                boundary_resolution: BOUNDARY_RESOLUTION,
                files,
            },
            config: self.config,
        };
        let text = toml::to_string(&doc).map_err(|e| CliError::Output(e.to_string()))?;
        let path = self.path(".meta.toml");
        write(&path, text.as_bytes())?;
        self.written.push(path);
        Ok(self.written)
    }
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}
