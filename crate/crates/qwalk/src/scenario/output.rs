//! Deterministic file output: the per-step timeseries CSV, sparse
//! snapshot CSVs of `P(x,y)` with JSON sidecars, and the sweep manifest.
//!
//! Identical configurations must produce bit-identical files, so floats
//! are written with Rust's shortest round-trip formatting and the
//! sidecar echoes everything about a run except its output location.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::num::Real;
use crate::observables::{JointDistribution, ObservableRecord};

use super::config::{Mode, ScenarioConfig};

/// Serializable echo of a configuration, embedded in snapshot sidecars
/// and sweep manifests. Deliberately omits `output_dir` so moving a run
/// does not change its content.
#[derive(Clone, Debug, Serialize)]
pub struct ConfigEcho {
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial: Option<String>,
    pub coin1: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coin2: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interaction: Option<String>,
    pub steps: u64,
    pub record_entropy: bool,
    pub entropy_stride: u64,
    pub snapshot_steps: Vec<u64>,
    pub seed_label: String,
    pub lattice_half_width: usize,
}

impl ConfigEcho {
    pub fn new<T: Real>(config: &ScenarioConfig<T>, lattice_half_width: usize) -> ConfigEcho {
        ConfigEcho {
            mode: config.mode.token().to_string(),
            initial: config.initial.map(|i| i.token().to_string()),
            coin1: config.coin1.token(),
            coin2: config.coin2.as_ref().map(|c| c.token()),
            interaction: config.interaction.map(|i| i.token().to_string()),
            steps: config.steps,
            record_entropy: config.record_entropy,
            entropy_stride: config.entropy_stride,
            snapshot_steps: config.snapshot_steps.clone(),
            seed_label: config.seed_label.clone(),
            lattice_half_width,
        }
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path).map_err(Error::io(path))?))
}

fn opt<T: Real>(v: Option<T>) -> String {
    match v {
        Some(x) => format!("{x}"),
        None => String::new(),
    }
}

/// Write the per-step observable records as CSV with the header
/// `step,sigma,c12,delta12,entropy`. Fields that were not recorded stay
/// empty: `sigma` in pair runs, the pair columns in single runs, and
/// `entropy` on strided-out steps.
pub fn write_timeseries<T: Real>(path: &Path, records: &[ObservableRecord<T>]) -> Result<()> {
    let mut w = create(path)?;
    (|| -> std::io::Result<()> {
        writeln!(w, "step,sigma,c12,delta12,entropy")?;
        for r in records {
            writeln!(
                w,
                "{},{},{},{},{}",
                r.step,
                opt(r.sigma),
                opt(r.c12),
                opt(r.delta12),
                opt(r.entropy)
            )?;
        }
        w.flush()
    })()
    .map_err(Error::io(path))
}

#[derive(Serialize)]
struct SnapshotSidecar<'a> {
    step: u64,
    total_probability: f64,
    nonzero_cells: usize,
    config: &'a ConfigEcho,
}

/// Write one `P(x,y)` snapshot: a sparse CSV (`x,y,p` triples for cells
/// above the probability floor, row-major ascending) and a JSON sidecar
/// describing the run it came from.
pub fn write_snapshot<T: Real>(
    csv_path: &Path,
    json_path: &Path,
    dist: &JointDistribution<T>,
    echo: &ConfigEcho,
    step: u64,
) -> Result<()> {
    let threshold = T::snapshot_threshold();
    let mut nonzero = 0usize;
    {
        let mut w = create(csv_path)?;
        (|| -> std::io::Result<()> {
            writeln!(w, "x,y,p")?;
            for (x, y, p) in dist.iter() {
                if p > threshold {
                    nonzero += 1;
                    writeln!(w, "{x},{y},{p}")?;
                }
            }
            w.flush()
        })()
        .map_err(Error::io(csv_path))?;
    }
    let sidecar = SnapshotSidecar {
        step,
        total_probability: dist.total().as_f64(),
        nonzero_cells: nonzero,
        config: echo,
    };
    let mut w = create(json_path)?;
    serde_json::to_writer_pretty(&mut w, &sidecar)
        .map_err(|e| Error::Config(format!("serializing sidecar: {e}")))?;
    (|| -> std::io::Result<()> {
        writeln!(w)?;
        w.flush()
    })()
    .map_err(Error::io(json_path))
}

/// Outcome of one sweep cell, as recorded in the manifest.
#[derive(Clone, Debug, Serialize)]
pub struct CellRecord {
    pub index: usize,
    pub dir: String,
    pub axes: Vec<AxisSetting>,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timeseries: Option<String>,
}

/// One axis assignment of a sweep cell.
#[derive(Clone, Debug, Serialize)]
pub struct AxisSetting {
    pub key: String,
    pub value: String,
}

#[derive(Serialize)]
struct Manifest<'a> {
    cells: &'a [CellRecord],
}

/// Write the sweep manifest listing every cell with its axis values,
/// status, and output location.
pub fn write_manifest(path: &Path, cells: &[CellRecord]) -> Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, &Manifest { cells })
        .map_err(|e| Error::Config(format!("serializing manifest: {e}")))?;
    (|| -> std::io::Result<()> {
        writeln!(w)?;
        w.flush()
    })()
    .map_err(Error::io(path))
}

/// Mode-aware blank-column conventions, used by tests to assert the CSV
/// shape matches the run kind.
pub fn expected_blank_columns(mode: Mode) -> &'static [&'static str] {
    match mode {
        Mode::Single => &["c12", "delta12", "entropy"],
        Mode::Pair => &["sigma"],
    }
}
