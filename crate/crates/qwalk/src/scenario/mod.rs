//! End-to-end scenario execution: resolve a configuration, run the walk,
//! record observables, and write deterministic CSV/JSON artifacts.

pub mod config;
pub mod output;
pub mod presets;
pub mod sweep;

pub use config::{
    parse_coin, parse_config_file, parse_initial, parse_interaction, parse_mode,
    parse_step_list, ConfigPatch, InitialSel, Mode, ScenarioConfig,
};
pub use output::{write_manifest, write_snapshot, write_timeseries, AxisSetting, CellRecord, ConfigEcho};
pub use presets::{find_preset, presets, Preset};
pub use sweep::{parse_axes_file, run_sweep, Axis, AxisKey, SweepOutputs};

use std::path::PathBuf;

use crate::coins::PairCoinSpec;
use crate::entanglement::{entanglement_entropy, max_entropy_after};
use crate::error::{Error, Result};
use crate::evolution::{run_pair, run_single};
use crate::lattice::{make_initial_pair, make_initial_single, unbiased_spinor, Lattice};
use crate::num::Real;
use crate::observables::{
    avg_separation, correlation, joint_distribution, sigma, ObservableRecord,
};

/// Paths and records produced by one scenario run.
#[derive(Clone, Debug)]
pub struct ScenarioOutputs<T: Real> {
    pub output_dir: PathBuf,
    pub timeseries_path: PathBuf,
    pub snapshot_paths: Vec<PathBuf>,
    pub records: Vec<ObservableRecord<T>>,
}

/// Run one scenario to completion and write its artifacts.
///
/// The lattice is sized to `steps + 1` half-width so the evolving state
/// never reaches the boundary. Observables are recorded at step 0 and
/// after every step; the entanglement entropy is checked against its
/// light-cone bound as it is computed.
pub fn run_scenario<T: Real>(config: &ScenarioConfig<T>) -> Result<ScenarioOutputs<T>> {
    config.validate()?;
    std::fs::create_dir_all(&config.output_dir).map_err(Error::io(&config.output_dir))?;
    let lattice = Lattice::new(config.steps as usize + 1);
    let timeseries_path = config.output_dir.join("timeseries.csv");

    let mut records: Vec<ObservableRecord<T>> = Vec::with_capacity(config.steps as usize + 1);
    let mut snapshot_paths: Vec<PathBuf> = Vec::new();

    match config.mode {
        Mode::Single => {
            let state = make_initial_single(lattice, unbiased_spinor::<T>())?;
            run_single(state, &config.coin1, config.steps, |step, state| {
                records.push(ObservableRecord {
                    step,
                    sigma: Some(sigma(state)),
                    c12: None,
                    delta12: None,
                    entropy: None,
                });
                Ok(())
            })?;
        }
        Mode::Pair => {
            let initial = config
                .initial
                .expect("validated pair config has an initial state");
            let spec = PairCoinSpec {
                coin1: config.coin1.clone(),
                coin2: config
                    .coin2
                    .clone()
                    .expect("validated pair config has a second coin"),
                interaction: config
                    .interaction
                    .expect("validated pair config has an interaction"),
            };
            let state = make_initial_pair(lattice, &initial.to_initial_pair())?;
            let echo = ConfigEcho::new(config, lattice.half_width());
            let tol = T::unit_tol();

            run_pair(state, &spec, config.steps, |step, state| {
                let joint = joint_distribution(state);
                let entropy = if config.record_entropy && step % config.entropy_stride == 0 {
                    let e = entanglement_entropy(state)?;
                    let bound: T = max_entropy_after(step);
                    if e < -tol || e > bound + tol {
                        return Err(Error::Invariant(format!(
                            "entanglement entropy {e} at step {step} violates 0 <= E <= {bound}"
                        )));
                    }
                    Some(e)
                } else {
                    None
                };
                records.push(ObservableRecord {
                    step,
                    sigma: None,
                    c12: Some(correlation(&joint)),
                    delta12: Some(avg_separation(&joint)),
                    entropy,
                });
                if config.snapshot_steps.contains(&step) {
                    let csv = config.output_dir.join(format!("snapshot-{step}.csv"));
                    let json = config.output_dir.join(format!("snapshot-{step}.json"));
                    write_snapshot(&csv, &json, &joint, &echo, step)?;
                    snapshot_paths.push(csv);
                    snapshot_paths.push(json);
                }
                Ok(())
            })?;
        }
    }

    write_timeseries(&timeseries_path, &records)?;
    Ok(ScenarioOutputs {
        output_dir: config.output_dir.clone(),
        timeseries_path,
        snapshot_paths,
        records,
    })
}

/// Least-squares exponent of a power law σ(n) ~ n^c over the window
/// `n_min..=n_max`: the slope of ln σ against ln n.
pub fn fit_exponent<T: Real>(series: &[(u64, T)], n_min: u64, n_max: u64) -> Result<T> {
    if n_min < 1 || n_min >= n_max {
        return Err(Error::Config(format!(
            "fit window [{n_min}, {n_max}] must satisfy 1 <= n_min < n_max"
        )));
    }
    let mut points: Vec<(T, T)> = Vec::new();
    for &(n, s) in series {
        if n < n_min || n > n_max {
            continue;
        }
        if s <= T::zero() {
            return Err(Error::FitUndefined(format!(
                "sigma = {s} at step {n} has no logarithm"
            )));
        }
        points.push((T::lit(n as f64).ln(), s.ln()));
    }
    if points.len() < 2 {
        return Err(Error::FitUndefined(format!(
            "need at least two points in [{n_min}, {n_max}], found {}",
            points.len()
        )));
    }
    let count = T::from_usize(points.len()).expect("point count fits in the scalar type");
    let mean_x = points.iter().map(|&(x, _)| x).sum::<T>() / count;
    let mean_y = points.iter().map(|&(_, y)| y).sum::<T>() / count;
    let mut sxx = T::zero();
    let mut sxy = T::zero();
    for &(x, y) in &points {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    if sxx == T::zero() {
        return Err(Error::FitUndefined(
            "all points share one abscissa; the slope is undefined".to_string(),
        ));
    }
    Ok(sxy / sxx)
}
