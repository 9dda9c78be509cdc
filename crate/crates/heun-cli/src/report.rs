//! JSON report schemas. Field order follows struct declaration; rendering is
//! deterministic for identical inputs.

use heun_core::pathsum::SolutionTable;
use serde::Serialize;

use crate::CliError;

#[derive(Serialize)]
pub struct Row {
    pub z_re: f64,
    pub z_im: f64,
    #[serde(rename = "H_re")]
    pub h_re: f64,
    #[serde(rename = "H_im")]
    pub h_im: f64,
    #[serde(rename = "dH_re")]
    pub dh_re: f64,
    #[serde(rename = "dH_im")]
    pub dh_im: f64,
}

fn rows_of(table: &SolutionTable) -> Vec<Row> {
    (0..table.points.len())
        .map(|i| Row {
            z_re: table.points[i].re,
            z_im: table.points[i].im,
            h_re: table.h[i].re,
            h_im: table.h[i].im,
            dh_re: table.hp[i].re,
            dh_im: table.hp[i].im,
        })
        .collect()
}

fn render_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError {
            code: 4,
            message: format!("json serialization: {e}"),
        })
}

#[derive(Serialize)]
pub struct JsonTable {
    pub command: &'static str,
    pub n1: usize,
    pub n2: usize,
    pub rows: Vec<Row>,
}

impl JsonTable {
    pub fn from_table(table: &SolutionTable) -> Self {
        JsonTable {
            command: "eval",
            n1: table.n1,
            n2: table.n2,
            rows: rows_of(table),
        }
    }

    pub fn render(&self) -> Result<String, CliError> {
        render_json(self)
    }
}

#[derive(Serialize)]
pub struct SidedJsonTable {
    pub command: &'static str,
    pub n2: usize,
    pub left: Vec<Row>,
    pub right: Vec<Row>,
}

impl SidedJsonTable {
    pub fn from_tables(left: &SolutionTable, right: &SolutionTable) -> Self {
        SidedJsonTable {
            command: "eval-regular",
            n2: left.n2,
            left: rows_of(left),
            right: rows_of(right),
        }
    }

    pub fn render(&self) -> Result<String, CliError> {
        render_json(self)
    }
}

#[derive(Serialize)]
pub struct BenchEntry {
    pub points: usize,
    pub rows: usize,
    pub wall_seconds_median: f64,
    pub wall_seconds_min: f64,
    pub max_error_vs_refined: f64,
}

#[derive(Serialize)]
pub struct BenchReport {
    pub command: &'static str,
    pub results: Vec<BenchEntry>,
}

impl BenchReport {
    pub fn render(&self) -> Result<String, CliError> {
        render_json(self)
    }
}

#[derive(Serialize)]
pub struct ConvergenceReport {
    pub command: &'static str,
    pub resolutions: [usize; 3],
    /// max |ΔH| between successive resolutions at shared points
    pub errors: [f64; 2],
    /// Richardson estimate of the finest run's error
    pub error_estimate: f64,
    /// null when the differences sit at machine level
    pub observed_order: Option<f64>,
}

impl ConvergenceReport {
    pub fn render(&self) -> Result<String, CliError> {
        render_json(self)
    }
}
