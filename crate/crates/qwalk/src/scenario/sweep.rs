//! Parameter sweeps: the Cartesian product of axis values applied over a
//! base configuration, executed cell-by-cell (in parallel) with a JSON
//! manifest tying cells to their outputs.
//!
//! Axes address the swept parameters directly: `alpha1`/`alpha2` (or the
//! paired `alphas`) replace the coins with `alpha` coins, `q`/`p` (or
//! the paired `qp`) retune `phi` coins, and `interaction`/`initial`
//! replace those fields. Paired values are written `A/B`, e.g.
//! `alphas = 0/0.5` or `qp = 1/50`.

use std::path::PathBuf;

use rayon::prelude::*;

use crate::coins::CoinSpec;
use crate::error::{Error, Result};
use crate::num::Real;

use super::config::{parse_initial, parse_interaction, Mode, ScenarioConfig};
use super::output::{write_manifest, AxisSetting, CellRecord};
use super::run_scenario;

/// A sweepable parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxisKey {
    Alpha1,
    Alpha2,
    /// Paired `α₁/α₂`.
    Alphas,
    Q,
    P,
    /// Paired `q/p`.
    Qp,
    Interaction,
    Initial,
}

impl AxisKey {
    pub fn name(&self) -> &'static str {
        match self {
            AxisKey::Alpha1 => "alpha1",
            AxisKey::Alpha2 => "alpha2",
            AxisKey::Alphas => "alphas",
            AxisKey::Q => "q",
            AxisKey::P => "p",
            AxisKey::Qp => "qp",
            AxisKey::Interaction => "interaction",
            AxisKey::Initial => "initial",
        }
    }

    pub fn parse(s: &str) -> Result<AxisKey> {
        match s {
            "alpha1" => Ok(AxisKey::Alpha1),
            "alpha2" => Ok(AxisKey::Alpha2),
            "alphas" => Ok(AxisKey::Alphas),
            "q" => Ok(AxisKey::Q),
            "p" => Ok(AxisKey::P),
            "qp" => Ok(AxisKey::Qp),
            "interaction" => Ok(AxisKey::Interaction),
            "initial" => Ok(AxisKey::Initial),
            _ => Err(Error::Config(format!(
                "unknown sweep axis '{s}' (expected alpha1, alpha2, alphas, q, p, qp, interaction, or initial)"
            ))),
        }
    }
}

/// One sweep axis: a parameter and the values it takes. Values stay
/// textual until they are applied to a cell, so a bad value fails that
/// cell alone with a precise message.
#[derive(Clone, Debug)]
pub struct Axis {
    pub key: AxisKey,
    pub values: Vec<String>,
}

/// Parse an axes file: `key = v1, v2, …` lines, `#` comments allowed.
pub fn parse_axes_file(text: &str) -> Result<Vec<Axis>> {
    let mut axes = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.split_once('#') {
            Some((head, _)) => head,
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, values) = line.split_once('=').ok_or_else(|| {
            Error::Config(format!(
                "line {}: expected 'axis = v1, v2, …', got '{raw}'",
                lineno + 1
            ))
        })?;
        let key = AxisKey::parse(key.trim())?;
        if axes.iter().any(|a: &Axis| a.key == key) {
            return Err(Error::Config(format!(
                "line {}: axis '{}' listed twice",
                lineno + 1,
                key.name()
            )));
        }
        let values: Vec<String> = values
            .split(',')
            .map(|v| v.trim().to_string())
            .filter(|v| !v.is_empty())
            .collect();
        if values.is_empty() {
            return Err(Error::Config(format!(
                "line {}: axis '{}' has no values",
                lineno + 1,
                key.name()
            )));
        }
        axes.push(Axis { key, values });
    }
    Ok(axes)
}

fn parse_alpha<T: Real>(s: &str) -> Result<T> {
    let v: f64 = s
        .parse()
        .map_err(|_| Error::Config(format!("alpha value '{s}' is not a number")))?;
    if !(v.is_finite() && v >= 0.0) {
        return Err(Error::Config(format!(
            "alpha value '{s}' must be a finite non-negative number"
        )));
    }
    Ok(T::lit(v))
}

fn parse_qp_part(s: &str, what: &str) -> Result<u32> {
    let v: u32 = s
        .parse()
        .map_err(|_| Error::Config(format!("{what} value '{s}' is not a positive integer")))?;
    if v == 0 {
        return Err(Error::Config(format!("{what} must be at least 1")));
    }
    Ok(v)
}

fn split_pair<'a>(s: &'a str, axis: &str) -> Result<(&'a str, &'a str)> {
    s.split_once('/').ok_or_else(|| {
        Error::Config(format!("axis '{axis}' takes paired values written A/B, got '{s}'"))
    })
}

fn retune_q<T: Real>(coin: &mut CoinSpec<T>, q: u32) -> bool {
    if let CoinSpec::Phi { q: ref mut old, .. } = coin {
        *old = q;
        true
    } else {
        false
    }
}

fn retune_p<T: Real>(coin: &mut CoinSpec<T>, p: u32) -> bool {
    if let CoinSpec::Phi { p: ref mut old, .. } = coin {
        *old = p;
        true
    } else {
        false
    }
}

/// Apply one axis value to a cell's configuration.
pub fn apply_axis_value<T: Real>(
    config: &mut ScenarioConfig<T>,
    key: AxisKey,
    value: &str,
) -> Result<()> {
    let require_pair = |field: &str| -> Result<()> {
        if config.mode != Mode::Pair {
            return Err(Error::Config(format!(
                "axis '{field}' applies to pair mode only"
            )));
        }
        Ok(())
    };
    match key {
        AxisKey::Alpha1 => {
            config.coin1 = CoinSpec::Alpha {
                alpha: parse_alpha(value)?,
                tau: 1,
            };
        }
        AxisKey::Alpha2 => {
            require_pair("alpha2")?;
            config.coin2 = Some(CoinSpec::Alpha {
                alpha: parse_alpha(value)?,
                tau: 1,
            });
        }
        AxisKey::Alphas => {
            require_pair("alphas")?;
            let (a1, a2) = split_pair(value, "alphas")?;
            config.coin1 = CoinSpec::Alpha {
                alpha: parse_alpha(a1)?,
                tau: 1,
            };
            config.coin2 = Some(CoinSpec::Alpha {
                alpha: parse_alpha(a2)?,
                tau: 1,
            });
        }
        AxisKey::Q => {
            let q = parse_qp_part(value, "q")?;
            let mut touched = retune_q(&mut config.coin1, q);
            if let Some(c2) = config.coin2.as_mut() {
                touched |= retune_q(c2, q);
            }
            if !touched {
                return Err(Error::Config(
                    "axis 'q' retunes phi coins, but no coin in the base config is a phi coin"
                        .to_string(),
                ));
            }
        }
        AxisKey::P => {
            let p = parse_qp_part(value, "p")?;
            let mut touched = retune_p(&mut config.coin1, p);
            if let Some(c2) = config.coin2.as_mut() {
                touched |= retune_p(c2, p);
            }
            if !touched {
                return Err(Error::Config(
                    "axis 'p' retunes phi coins, but no coin in the base config is a phi coin"
                        .to_string(),
                ));
            }
        }
        AxisKey::Qp => {
            let (q_str, p_str) = split_pair(value, "qp")?;
            let coin = CoinSpec::Phi {
                q: parse_qp_part(q_str, "q")?,
                p: parse_qp_part(p_str, "p")?,
            };
            config.coin1 = coin.clone();
            if config.mode == Mode::Pair {
                config.coin2 = Some(coin);
            }
        }
        AxisKey::Interaction => {
            require_pair("interaction")?;
            config.interaction = Some(parse_interaction(value)?);
        }
        AxisKey::Initial => {
            require_pair("initial")?;
            config.initial = Some(parse_initial(value)?);
        }
    }
    Ok(())
}

/// Where a sweep landed: the manifest path plus cell counts.
#[derive(Clone, Debug)]
pub struct SweepOutputs {
    pub manifest_path: PathBuf,
    pub cells: usize,
    pub failures: usize,
}

/// Run the Cartesian product of `axes` over `base`. Each cell runs in
/// its own subdirectory `cell-NNN` of the base output directory; a cell
/// failure is recorded in the manifest without stopping the rest. Empty
/// axes run the base configuration as a single cell.
pub fn run_sweep<T: Real>(base: &ScenarioConfig<T>, axes: &[Axis]) -> Result<SweepOutputs> {
    base.validate()?;
    let total: usize = axes.iter().map(|a| a.values.len()).product();
    std::fs::create_dir_all(&base.output_dir).map_err(Error::io(&base.output_dir))?;

    let cells: Vec<CellRecord> = (0..total)
        .into_par_iter()
        .map(|index| {
            // Mixed-radix digits, first axis slowest.
            let mut digits = vec![0usize; axes.len()];
            let mut rest = index;
            for (d, axis) in digits.iter_mut().zip(axes).rev() {
                *d = rest % axis.values.len();
                rest /= axis.values.len();
            }
            let dir_name = format!("cell-{index:03}");
            let settings: Vec<AxisSetting> = axes
                .iter()
                .zip(&digits)
                .map(|(axis, &d)| AxisSetting {
                    key: axis.key.name().to_string(),
                    value: axis.values[d].clone(),
                })
                .collect();

            let mut config = base.clone();
            config.output_dir = base.output_dir.join(&dir_name);
            let applied: Result<()> = axes
                .iter()
                .zip(&digits)
                .try_for_each(|(axis, &d)| apply_axis_value(&mut config, axis.key, &axis.values[d]));

            let status = applied
                .and_then(|()| config.validate())
                .and_then(|()| run_scenario(&config).map(|_| ()));
            match status {
                Ok(()) => CellRecord {
                    index,
                    dir: dir_name.clone(),
                    axes: settings,
                    status: "ok".to_string(),
                    timeseries: Some(format!("{dir_name}/timeseries.csv")),
                },
                Err(e) => CellRecord {
                    index,
                    dir: dir_name,
                    axes: settings,
                    status: format!("error: {e}"),
                    timeseries: None,
                },
            }
        })
        .collect();

    let failures = cells.iter().filter(|c| c.status != "ok").count();
    let manifest_path = base.output_dir.join("manifest.json");
    write_manifest(&manifest_path, &cells)?;
    Ok(SweepOutputs {
        manifest_path,
        cells: cells.len(),
        failures,
    })
}
