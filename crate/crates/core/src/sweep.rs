//! Regime and performance maps over a rectangular `(strength, ε)` grid at fixed
//! temperature and tunneling.
//!
//! Cells are stored row-major with `ε` as the outer loop. Evaluation may run in
//! parallel (feature `parallel`); the merge is always in canonical order, so the
//! result does not depend on the worker count.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::DEFAULT_TOL;
use crate::qdot::DotParams;
use crate::regimes::{BranchKind, Classification, Mode};

/// Exact CSV header of [`SweepResult::write_csv`].
pub const CSV_HEADER: &str = "strength,epsilon,mode,performance,Qh,Qc,W";

/// Version tag of the JSON document.
pub const JSON_SCHEMA: u32 = 1;

/// Inclusive linear spacing `min, …, max` with `steps` points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, steps: usize) -> Self {
        Axis { min, max, steps }
    }

    pub fn validate(&self, name: &str) -> Result<()> {
        if !self.min.is_finite() || !self.max.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "{name} axis bounds must be finite"
            )));
        }
        if self.steps < 2 {
            return Err(Error::InvalidGrid(format!(
                "{name} axis needs at least 2 steps"
            )));
        }
        if self.min >= self.max {
            return Err(Error::InvalidGrid(format!(
                "{name} axis needs min < max, got {}:{}",
                self.min, self.max
            )));
        }
        Ok(())
    }

    /// The `i`-th grid value; the last one is `max` exactly.
    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.steps {
            return self.max;
        }
        self.min + (self.max - self.min) * i as f64 / (self.steps - 1) as f64
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.steps).map(|i| self.value(i)).collect()
    }
}

impl FromStr for Axis {
    type Err = String;

    /// Parses `min:max:steps`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, steps] = parts.as_slice() else {
            return Err(format!("expected min:max:steps, got `{s}`"));
        };
        let min = min
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("bad axis min `{min}`: {e}"))?;
        let max = max
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("bad axis max `{max}`: {e}"))?;
        let steps = steps
            .trim()
            .parse::<usize>()
            .map_err(|e| format!("bad axis steps `{steps}`: {e}"))?;
        Ok(Axis { min, max, steps })
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.min, self.max, self.steps)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub branch: BranchKind,
    /// `a` on the engine branch, `b` on the refrigerator branches.
    pub strength_axis: Axis,
    pub epsilon_axis: Axis,
    pub temperature: f64,
    pub tau: f64,
    pub zero_tol: f64,
}

impl GridSpec {
    /// Default axes: strength in `[0, 1]`, `ε` in `[0.1, 3]`, 201 × 201.
    pub fn new(branch: BranchKind, temperature: f64, tau: f64) -> Self {
        GridSpec {
            branch,
            strength_axis: Axis::new(0.0, 1.0, 201),
            epsilon_axis: Axis::new(0.1, 3.0, 201),
            temperature,
            tau,
            zero_tol: DEFAULT_TOL,
        }
    }

    pub fn with_axes(mut self, strength: Axis, epsilon: Axis) -> Self {
        self.strength_axis = strength;
        self.epsilon_axis = epsilon;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.strength_axis.validate("strength")?;
        self.epsilon_axis.validate("epsilon")?;
        if self.strength_axis.min < 0.0 || self.strength_axis.max > 1.0 {
            return Err(Error::InvalidGrid(
                "strength axis must lie within [0, 1]".into(),
            ));
        }
        if self.epsilon_axis.min <= 0.0 {
            return Err(Error::InvalidGrid("epsilon axis must start above 0".into()));
        }
        if self.temperature.is_nan() || self.temperature <= 0.0 || self.temperature.is_infinite() {
            return Err(Error::NonPositiveTemperature(self.temperature));
        }
        if !self.tau.is_finite() {
            return Err(Error::NotFinite {
                name: "tau",
                value: self.tau,
            });
        }
        if self.zero_tol.is_nan() || self.zero_tol < 0.0 {
            return Err(Error::InvalidGrid("zero_tol must be non-negative".into()));
        }
        Ok(())
    }

    pub fn cell_count(&self) -> usize {
        self.strength_axis.steps * self.epsilon_axis.steps
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub strength: f64,
    pub epsilon: f64,
    pub mode: Mode,
    pub performance: Option<f64>,
    #[serde(rename = "Qh")]
    pub qh: f64,
    #[serde(rename = "Qc")]
    pub qc: f64,
    #[serde(rename = "W")]
    pub w: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub counts: BTreeMap<Mode, usize>,
    pub fractions: BTreeMap<Mode, f64>,
}

impl SweepSummary {
    fn from_cells(cells: &[SweepCell]) -> Self {
        let mut counts = BTreeMap::new();
        for c in cells {
            *counts.entry(c.mode).or_insert(0) += 1;
        }
        let total = cells.len() as f64;
        let fractions = counts
            .iter()
            .map(|(&m, &n)| (m, n as f64 / total))
            .collect();
        SweepSummary { counts, fractions }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub spec: GridSpec,
    pub cells: Vec<SweepCell>,
    pub summary: SweepSummary,
}

/// Evaluates one grid point. `spec` must already be validated.
pub fn evaluate_cell(spec: &GridSpec, strength: f64, epsilon: f64) -> Result<SweepCell> {
    let params = DotParams::new(epsilon, spec.tau)?;
    let hw = spec
        .branch
        .quantities(&params, spec.temperature, strength)?;
    let c = Classification::from_heat_work(hw, spec.zero_tol);
    Ok(SweepCell {
        strength,
        epsilon,
        mode: c.mode,
        performance: c.performance,
        qh: hw.qh,
        qc: hw.qc,
        w: hw.w,
    })
}

fn row(spec: &GridSpec, j: usize) -> Result<Vec<SweepCell>> {
    let eps = spec.epsilon_axis.value(j);
    (0..spec.strength_axis.steps)
        .map(|i| evaluate_cell(spec, spec.strength_axis.value(i), eps))
        .collect()
}

fn assemble(spec: &GridSpec, rows: Vec<Vec<SweepCell>>) -> SweepResult {
    let cells: Vec<SweepCell> = rows.into_iter().flatten().collect();
    let summary = SweepSummary::from_cells(&cells);
    SweepResult {
        spec: *spec,
        cells,
        summary,
    }
}

/// Single-threaded sweep.
pub fn run_sweep_serial(spec: &GridSpec) -> Result<SweepResult> {
    spec.validate()?;
    let rows = (0..spec.epsilon_axis.steps)
        .map(|j| row(spec, j))
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble(spec, rows))
}

/// Sweep on the global rayon pool (or serially without the `parallel` feature).
pub fn run_sweep(spec: &GridSpec) -> Result<SweepResult> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        spec.validate()?;
        let rows = (0..spec.epsilon_axis.steps)
            .into_par_iter()
            .map(|j| row(spec, j))
            .collect::<Result<Vec<_>>>()?;
        Ok(assemble(spec, rows))
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_sweep_serial(spec)
    }
}

/// Sweep on a dedicated pool of `threads` workers.
#[cfg(feature = "parallel")]
pub fn run_sweep_with_threads(spec: &GridSpec, threads: usize) -> Result<SweepResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidGrid(format!("thread pool: {e}")))?;
    pool.install(|| run_sweep(spec))
}

/// Fraction of cells in each mode present; the values sum to 1.
pub fn mode_area_fractions(result: &SweepResult) -> BTreeMap<Mode, f64> {
    result.summary.fractions.clone()
}

/// Locale-independent CSV number: 17 significant digits (round-trip exact) in scientific form.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Serialize)]
struct JsonDocument<'a> {
    schema: u32,
    spec: &'a GridSpec,
    cells: &'a [SweepCell],
    summary: &'a SweepSummary,
    metadata: JsonMetadata,
}

#[derive(Serialize)]
struct JsonMetadata {
    ordering: &'static str,
    strength: &'static str,
    performance: &'static str,
}

impl SweepResult {
    pub fn fraction(&self, mode: Mode) -> f64 {
        self.summary.fractions.get(&mode).copied().unwrap_or(0.0)
    }

    pub fn modes_present(&self) -> Vec<Mode> {
        self.summary.counts.keys().copied().collect()
    }

    pub fn cell(&self, strength_index: usize, epsilon_index: usize) -> &SweepCell {
        &self.cells[epsilon_index * self.spec.strength_axis.steps + strength_index]
    }

    /// Writes `strength,epsilon,mode,performance,Qh,Qc,W`; `performance` is
    /// empty for undefined cells.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{CSV_HEADER}")?;
        for c in &self.cells {
            let perf = c.performance.map(format_number).unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                format_number(c.strength),
                format_number(c.epsilon),
                c.mode.name(),
                perf,
                format_number(c.qh),
                format_number(c.qc),
                format_number(c.w),
            )?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::with_capacity(self.cells.len() * 128);
        self.write_csv(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV output is ASCII")
    }

    /// `{schema, spec, cells, summary, metadata}`.
    pub fn to_json_string(&self) -> String {
        let doc = JsonDocument {
            schema: JSON_SCHEMA,
            spec: &self.spec,
            cells: &self.cells,
            summary: &self.summary,
            metadata: JsonMetadata {
                ordering: "row-major, epsilon outer, strength inner",
                strength: self.spec.branch.strength_label(),
                performance: "eta=|W/Qh| for engine cells; kappa=COP/(1+COP) for refrigerator, accelerator and heater cells; null when undefined",
            },
        };
        serde_json::to_string_pretty(&doc).expect("sweep document serializes")
    }
}
