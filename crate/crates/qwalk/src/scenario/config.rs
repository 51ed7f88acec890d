//! Run configuration: the scenario description shared by presets, config
//! files, and CLI flags, plus the token grammar common to all three.
//!
//! A configuration is assembled as a stack of patches — preset, then
//! config file, then command-line flags, later layers winning — and
//! resolved into a validated [`ScenarioConfig`] before anything runs.

use std::path::PathBuf;

use crate::coins::{CoinSpec, InteractionRule};
use crate::error::{Error, Result};
use crate::lattice::InitialPair;
use crate::num::Real;

/// Whether the scenario evolves one walker or a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Single,
    Pair,
}

impl Mode {
    pub fn token(&self) -> &'static str {
        match self {
            Mode::Single => "single",
            Mode::Pair => "pair",
        }
    }
}

/// Initial-state selector for pair mode. Single mode always starts from
/// the unbiased spinor at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InitialSel {
    Sep,
    PsiPlus,
    PsiMinus,
}

impl InitialSel {
    pub fn token(&self) -> &'static str {
        match self {
            InitialSel::Sep => "sep",
            InitialSel::PsiPlus => "psi-plus",
            InitialSel::PsiMinus => "psi-minus",
        }
    }

    pub fn to_initial_pair<T: Real>(self) -> InitialPair<T> {
        match self {
            InitialSel::Sep => InitialPair::Sep,
            InitialSel::PsiPlus => InitialPair::PsiPlus,
            InitialSel::PsiMinus => InitialPair::PsiMinus,
        }
    }
}

/// A fully resolved run description. Pair-only fields (`initial`,
/// `coin2`, `interaction`) are `Some` exactly when `mode` is `Pair`;
/// [`ScenarioConfig::validate`] enforces this.
#[derive(Clone, Debug)]
pub struct ScenarioConfig<T: Real = f64> {
    pub mode: Mode,
    pub initial: Option<InitialSel>,
    pub coin1: CoinSpec<T>,
    pub coin2: Option<CoinSpec<T>>,
    pub interaction: Option<InteractionRule>,
    pub steps: u64,
    pub record_entropy: bool,
    pub entropy_stride: u64,
    pub snapshot_steps: Vec<u64>,
    pub output_dir: PathBuf,
    pub seed_label: String,
}

impl<T: Real> ScenarioConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if self.entropy_stride == 0 {
            return Err(Error::Config(
                "entropy_stride must be at least 1".to_string(),
            ));
        }
        for &s in &self.snapshot_steps {
            if s > self.steps {
                return Err(Error::Config(format!(
                    "snapshot step {s} is beyond the last step {}",
                    self.steps
                )));
            }
        }
        match self.mode {
            Mode::Pair => {
                if self.initial.is_none() {
                    return Err(Error::Config(
                        "pair mode requires an initial state (initial = sep | psi-plus | psi-minus)"
                            .to_string(),
                    ));
                }
                if self.coin2.is_none() {
                    return Err(Error::Config("pair mode requires coin2".to_string()));
                }
                if self.interaction.is_none() {
                    return Err(Error::Config(
                        "pair mode requires an interaction (none | identity | pi-phase)"
                            .to_string(),
                    ));
                }
            }
            Mode::Single => {
                if self.initial.is_some()
                    || self.coin2.is_some()
                    || self.interaction.is_some()
                {
                    return Err(Error::Config(
                        "initial, coin2, and interaction apply to pair mode only".to_string(),
                    ));
                }
                if !self.snapshot_steps.is_empty() {
                    return Err(Error::Config(
                        "snapshots hold the joint distribution P(x,y) and require pair mode"
                            .to_string(),
                    ));
                }
                if self.record_entropy {
                    return Err(Error::Config(
                        "entanglement entropy requires pair mode".to_string(),
                    ));
                }
            }
        }
        if self.output_dir.as_os_str().is_empty() {
            return Err(Error::Config("output_dir must not be empty".to_string()));
        }
        Ok(())
    }
}

/// A partial configuration: every field optional, so layers can be
/// stacked with later layers taking precedence.
#[derive(Clone, Debug)]
pub struct ConfigPatch<T: Real = f64> {
    pub mode: Option<Mode>,
    pub initial: Option<InitialSel>,
    pub coin1: Option<CoinSpec<T>>,
    pub coin2: Option<CoinSpec<T>>,
    pub interaction: Option<InteractionRule>,
    pub steps: Option<u64>,
    pub record_entropy: Option<bool>,
    pub entropy_stride: Option<u64>,
    pub snapshot_steps: Option<Vec<u64>>,
    pub output_dir: Option<PathBuf>,
    pub seed_label: Option<String>,
}

impl<T: Real> Default for ConfigPatch<T> {
    fn default() -> ConfigPatch<T> {
        ConfigPatch {
            mode: None,
            initial: None,
            coin1: None,
            coin2: None,
            interaction: None,
            steps: None,
            record_entropy: None,
            entropy_stride: None,
            snapshot_steps: None,
            output_dir: None,
            seed_label: None,
        }
    }
}

impl<T: Real> ConfigPatch<T> {
    /// Lift a complete configuration into a patch (used to put a preset
    /// at the bottom of the stack).
    pub fn from_config(config: &ScenarioConfig<T>) -> ConfigPatch<T> {
        ConfigPatch {
            mode: Some(config.mode),
            initial: config.initial,
            coin1: Some(config.coin1.clone()),
            coin2: config.coin2.clone(),
            interaction: config.interaction,
            steps: Some(config.steps),
            record_entropy: Some(config.record_entropy),
            entropy_stride: Some(config.entropy_stride),
            snapshot_steps: Some(config.snapshot_steps.clone()),
            output_dir: Some(config.output_dir.clone()),
            seed_label: Some(config.seed_label.clone()),
        }
    }

    /// Overlay `over` on `self`: fields set in `over` win.
    pub fn merged(self, over: ConfigPatch<T>) -> ConfigPatch<T> {
        ConfigPatch {
            mode: over.mode.or(self.mode),
            initial: over.initial.or(self.initial),
            coin1: over.coin1.or(self.coin1),
            coin2: over.coin2.or(self.coin2),
            interaction: over.interaction.or(self.interaction),
            steps: over.steps.or(self.steps),
            record_entropy: over.record_entropy.or(self.record_entropy),
            entropy_stride: over.entropy_stride.or(self.entropy_stride),
            snapshot_steps: over.snapshot_steps.or(self.snapshot_steps),
            output_dir: over.output_dir.or(self.output_dir),
            seed_label: over.seed_label.or(self.seed_label),
        }
    }

    /// Fill defaults, demand the required fields, and validate.
    pub fn resolve(self) -> Result<ScenarioConfig<T>> {
        let mode = self.mode.ok_or_else(|| {
            Error::Config("mode is required (single | pair); set it via --mode, a config file, or a preset".to_string())
        })?;
        let coin1 = self.coin1.ok_or_else(|| {
            Error::Config("coin1 is required (hadamard | alpha:A[:TAU] | phi:Q/P)".to_string())
        })?;
        let steps = self
            .steps
            .ok_or_else(|| Error::Config("steps is required".to_string()))?;
        let config = ScenarioConfig {
            mode,
            initial: self.initial,
            coin1,
            coin2: self.coin2,
            interaction: self.interaction,
            steps,
            record_entropy: self.record_entropy.unwrap_or(mode == Mode::Pair),
            entropy_stride: self.entropy_stride.unwrap_or(1),
            snapshot_steps: self.snapshot_steps.unwrap_or_default(),
            output_dir: self.output_dir.unwrap_or_else(|| PathBuf::from("out")),
            seed_label: self.seed_label.unwrap_or_default(),
        };
        config.validate()?;
        Ok(config)
    }
}

pub fn parse_mode(s: &str) -> Result<Mode> {
    match s {
        "single" => Ok(Mode::Single),
        "pair" => Ok(Mode::Pair),
        _ => Err(Error::Config(format!(
            "unrecognized mode '{s}' (expected single or pair)"
        ))),
    }
}

pub fn parse_initial(s: &str) -> Result<InitialSel> {
    match s {
        "sep" => Ok(InitialSel::Sep),
        "psi-plus" => Ok(InitialSel::PsiPlus),
        "psi-minus" => Ok(InitialSel::PsiMinus),
        _ => Err(Error::Config(format!(
            "unrecognized initial state '{s}' (expected sep, psi-plus, or psi-minus)"
        ))),
    }
}

pub fn parse_interaction(s: &str) -> Result<InteractionRule> {
    match s {
        "none" => Ok(InteractionRule::None),
        "identity" => Ok(InteractionRule::IdentityOne),
        "pi-phase" => Ok(InteractionRule::PiPhase),
        _ => Err(Error::Config(format!(
            "unrecognized interaction '{s}' (expected none, identity, or pi-phase)"
        ))),
    }
}

fn parse_real<T: Real>(s: &str, what: &str) -> Result<T> {
    let v: f64 = s
        .parse()
        .map_err(|_| Error::Config(format!("{what} '{s}' is not a number")))?;
    if !v.is_finite() {
        return Err(Error::Config(format!("{what} '{s}' must be finite")));
    }
    Ok(T::lit(v))
}

fn parse_count(s: &str, what: &str) -> Result<u32> {
    s.parse()
        .map_err(|_| Error::Config(format!("{what} '{s}' is not a positive integer")))
}

/// Parse a coin token: `hadamard`, `alpha:A[:TAU]`, `phi:Q/P`, or
/// `general:THETA:PHI1:PHI2`.
pub fn parse_coin<T: Real>(s: &str) -> Result<CoinSpec<T>> {
    if s == "hadamard" {
        return Ok(CoinSpec::Hadamard);
    }
    if let Some(rest) = s.strip_prefix("alpha:") {
        let mut parts = rest.split(':');
        let alpha: T = parse_real(parts.next().unwrap_or(""), "alpha")?;
        if alpha < T::zero() {
            return Err(Error::Config(format!(
                "alpha must be non-negative, got {alpha}"
            )));
        }
        let tau = match parts.next() {
            Some(t) => parse_count(t, "tau")?,
            None => 1,
        };
        if tau == 0 {
            return Err(Error::Config("tau must be at least 1".to_string()));
        }
        if parts.next().is_some() {
            return Err(Error::Config(format!(
                "too many fields in coin '{s}' (expected alpha:A[:TAU])"
            )));
        }
        return Ok(CoinSpec::Alpha { alpha, tau });
    }
    if let Some(rest) = s.strip_prefix("phi:") {
        let (q_str, p_str) = rest.split_once('/').ok_or_else(|| {
            Error::Config(format!("coin '{s}' must name a fraction (phi:Q/P)"))
        })?;
        let q = parse_count(q_str, "q")?;
        let p = parse_count(p_str, "p")?;
        if q == 0 || p == 0 {
            return Err(Error::Config("q and p must be at least 1".to_string()));
        }
        return Ok(CoinSpec::Phi { q, p });
    }
    if let Some(rest) = s.strip_prefix("general:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Config(format!(
                "coin '{s}' must carry three angles (general:THETA:PHI1:PHI2)"
            )));
        }
        return Ok(CoinSpec::General {
            theta: parse_real(parts[0], "theta")?,
            phi1: parse_real(parts[1], "phi1")?,
            phi2: parse_real(parts[2], "phi2")?,
        });
    }
    Err(Error::Config(format!(
        "unrecognized coin '{s}' (expected hadamard, alpha:A[:TAU], phi:Q/P, or general:THETA:PHI1:PHI2)"
    )))
}

/// Parse a comma-separated step list, e.g. `0,100,200`. Empty means no
/// snapshots.
pub fn parse_step_list(s: &str) -> Result<Vec<u64>> {
    let trimmed = s.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|part| {
            part.trim()
                .parse()
                .map_err(|_| Error::Config(format!("'{part}' is not a step number")))
        })
        .collect()
}

fn parse_flag(s: &str, what: &str) -> Result<bool> {
    match s {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(Error::Config(format!(
            "{what} '{s}' must be true or false"
        ))),
    }
}

/// Parse a flat `key = value` config file. Blank lines and `#` comments
/// are ignored; keys are exactly the [`ScenarioConfig`] field names.
pub fn parse_config_file<T: Real>(text: &str) -> Result<ConfigPatch<T>> {
    let mut patch = ConfigPatch::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.split_once('#') {
            Some((head, _)) => head,
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Config(format!(
                "line {}: expected 'key = value', got '{raw}'",
                lineno + 1
            ))
        })?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "mode" => patch.mode = Some(parse_mode(value)?),
            "initial" => patch.initial = Some(parse_initial(value)?),
            "coin1" => patch.coin1 = Some(parse_coin(value)?),
            "coin2" => patch.coin2 = Some(parse_coin(value)?),
            "interaction" => patch.interaction = Some(parse_interaction(value)?),
            "steps" => {
                patch.steps = Some(value.parse().map_err(|_| {
                    Error::Config(format!("steps '{value}' is not a non-negative integer"))
                })?)
            }
            "record_entropy" => {
                patch.record_entropy = Some(parse_flag(value, "record_entropy")?)
            }
            "entropy_stride" => {
                patch.entropy_stride = Some(value.parse().map_err(|_| {
                    Error::Config(format!("entropy_stride '{value}' is not an integer"))
                })?)
            }
            "snapshot_steps" => patch.snapshot_steps = Some(parse_step_list(value)?),
            "output_dir" => patch.output_dir = Some(PathBuf::from(value)),
            "seed_label" => patch.seed_label = Some(value.to_string()),
            _ => {
                return Err(Error::Config(format!(
                    "line {}: unknown key '{key}'",
                    lineno + 1
                )))
            }
        }
    }
    Ok(patch)
}
