//! The preset catalog: named, fully resolved configurations covering the
//! studied single-walker coin families and the full two-walker grid of
//! initial states × interactions × coin combinations.
//!
//! Naming scheme:
//!
//! * `single-alpha-aA` — one walker, `alpha:A` coin, 1000 steps.
//! * `single-phi-qQpP` — one walker, `phi:Q/P` coin, 200 steps.
//! * `grid-{init}-{inter}-{combo}` — pair, both coins from the alpha
//!   family, 100 steps with a final-step snapshot; `combo` is `aA` for
//!   equal parameters or `aA1-A2` for distinct ones.
//! * `dynloc-{inter}-{init}-qQpP` — pair, identical `phi:Q/P` coins,
//!   200 steps (the dynamical-localization family).
//! * `comb4-{inter}-{init}-qQpP` — pair, Hadamard on walker 1 and
//!   `phi:Q/P` on walker 2, 200 steps.
//!
//! `init` ∈ `sep | psiplus | psiminus`, `inter` ∈ `noninteracting | one
//! | piphase` (`one` is the identity substitution, `piphase` the −1
//! phase).

use std::path::PathBuf;

use crate::coins::{CoinSpec, InteractionRule};
use crate::num::Real;

use super::config::{InitialSel, Mode, ScenarioConfig};

/// A named, ready-to-run configuration.
#[derive(Clone, Debug)]
pub struct Preset<T: Real = f64> {
    pub name: String,
    pub config: ScenarioConfig<T>,
}

const INITIALS: [(&str, InitialSel); 3] = [
    ("sep", InitialSel::Sep),
    ("psiplus", InitialSel::PsiPlus),
    ("psiminus", InitialSel::PsiMinus),
];

const INTERACTIONS: [(&str, InteractionRule); 3] = [
    ("noninteracting", InteractionRule::None),
    ("one", InteractionRule::IdentityOne),
    ("piphase", InteractionRule::PiPhase),
];

/// The five studied (α₁, α₂) pairs.
const ALPHA_COMBOS: [(&str, f64, f64); 5] = [
    ("a0", 0.0, 0.0),
    ("a0.5", 0.5, 0.5),
    ("a1.25", 1.25, 1.25),
    ("a0-0.5", 0.0, 0.5),
    ("a0-1.25", 0.0, 1.25),
];

/// The three studied (q, p) pairs.
const QP_COMBOS: [(u32, u32); 3] = [(1, 100), (1, 50), (4, 50)];

/// The single-walker α values.
const SINGLE_ALPHAS: [(&str, f64); 5] = [
    ("0", 0.0),
    ("0.25", 0.25),
    ("0.5", 0.5),
    ("0.75", 0.75),
    ("1.25", 1.25),
];

fn named<T: Real>(name: String, config: ScenarioConfig<T>) -> Preset<T> {
    Preset { name, config }
}

fn base_pair<T: Real>(
    name: &str,
    initial: InitialSel,
    interaction: InteractionRule,
    coin1: CoinSpec<T>,
    coin2: CoinSpec<T>,
    steps: u64,
    snapshot_steps: Vec<u64>,
) -> Preset<T> {
    named(
        name.to_string(),
        ScenarioConfig {
            mode: Mode::Pair,
            initial: Some(initial),
            coin1,
            coin2: Some(coin2),
            interaction: Some(interaction),
            steps,
            record_entropy: true,
            entropy_stride: 1,
            snapshot_steps,
            output_dir: PathBuf::from("out").join(name),
            seed_label: name.to_string(),
        },
    )
}

/// The full catalog, in a stable order.
pub fn presets<T: Real>() -> Vec<Preset<T>> {
    let mut out = Vec::new();

    for (label, alpha) in SINGLE_ALPHAS {
        let name = format!("single-alpha-a{label}");
        out.push(named(
            name.clone(),
            ScenarioConfig {
                mode: Mode::Single,
                initial: None,
                coin1: CoinSpec::Alpha {
                    alpha: T::lit(alpha),
                    tau: 1,
                },
                coin2: None,
                interaction: None,
                steps: 1000,
                record_entropy: false,
                entropy_stride: 1,
                snapshot_steps: Vec::new(),
                output_dir: PathBuf::from("out").join(&name),
                seed_label: name.clone(),
            },
        ));
    }

    for (q, p) in QP_COMBOS {
        let name = format!("single-phi-q{q}p{p}");
        out.push(named(
            name.clone(),
            ScenarioConfig {
                mode: Mode::Single,
                initial: None,
                coin1: CoinSpec::Phi { q, p },
                coin2: None,
                interaction: None,
                steps: 200,
                record_entropy: false,
                entropy_stride: 1,
                snapshot_steps: Vec::new(),
                output_dir: PathBuf::from("out").join(&name),
                seed_label: name.clone(),
            },
        ));
    }

    for (init_label, initial) in INITIALS {
        for (inter_label, interaction) in INTERACTIONS {
            for (combo_label, a1, a2) in ALPHA_COMBOS {
                let name = format!("grid-{init_label}-{inter_label}-{combo_label}");
                out.push(base_pair(
                    &name,
                    initial,
                    interaction,
                    CoinSpec::Alpha {
                        alpha: T::lit(a1),
                        tau: 1,
                    },
                    CoinSpec::Alpha {
                        alpha: T::lit(a2),
                        tau: 1,
                    },
                    100,
                    vec![100],
                ));
            }
        }
    }

    for (inter_label, interaction) in INTERACTIONS {
        for (init_label, initial) in INITIALS {
            for (q, p) in QP_COMBOS {
                let name = format!("dynloc-{inter_label}-{init_label}-q{q}p{p}");
                out.push(base_pair(
                    &name,
                    initial,
                    interaction,
                    CoinSpec::Phi { q, p },
                    CoinSpec::Phi { q, p },
                    200,
                    Vec::new(),
                ));
            }
        }
    }

    for (inter_label, interaction) in INTERACTIONS {
        for (init_label, initial) in INITIALS.iter().filter(|(l, _)| *l != "sep") {
            for (q, p) in QP_COMBOS {
                let name = format!("comb4-{inter_label}-{init_label}-q{q}p{p}");
                out.push(base_pair(
                    &name,
                    *initial,
                    interaction,
                    CoinSpec::Hadamard,
                    CoinSpec::Phi { q, p },
                    200,
                    Vec::new(),
                ));
            }
        }
    }

    out
}

/// Look a preset up by exact name.
pub fn find_preset<T: Real>(name: &str) -> Option<Preset<T>> {
    presets().into_iter().find(|p| p.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn catalog_size_and_uniqueness() {
        let all = presets::<f64>();
        assert_eq!(all.len(), 5 + 3 + 45 + 27 + 18);
        let names: HashSet<&str> = all.iter().map(|p| p.name.as_str()).collect();
        assert_eq!(names.len(), all.len(), "duplicate preset names");
    }

    #[test]
    fn every_preset_validates() {
        for p in presets::<f64>() {
            p.config
                .validate()
                .unwrap_or_else(|e| panic!("preset {} invalid: {e}", p.name));
        }
    }

    #[test]
    fn canonical_names_exist() {
        for name in [
            "grid-sep-noninteracting-a0",
            "grid-psiplus-one-a1.25",
            "grid-psiminus-piphase-a0-1.25",
            "dynloc-one-psiplus-q1p50",
            "dynloc-piphase-sep-q1p100",
            "comb4-noninteracting-psiplus-q4p50",
            "single-alpha-a0.75",
            "single-phi-q4p50",
        ] {
            assert!(
                find_preset::<f64>(name).is_some(),
                "missing preset {name}"
            );
        }
        assert!(find_preset::<f64>("no-such-preset").is_none());
    }

    #[test]
    fn grid_presets_snapshot_the_final_step() {
        let p = find_preset::<f64>("grid-sep-noninteracting-a0").unwrap();
        assert_eq!(p.config.steps, 100);
        assert_eq!(p.config.snapshot_steps, vec![100]);
        assert_eq!(p.config.mode, Mode::Pair);
        assert_eq!(p.config.interaction, Some(InteractionRule::None));
        assert_eq!(
            p.config.coin1,
            CoinSpec::Alpha { alpha: 0.0, tau: 1 }
        );
    }

    #[test]
    fn dynloc_presets_use_identical_phi_coins() {
        let p = find_preset::<f64>("dynloc-one-psiplus-q1p50").unwrap();
        assert_eq!(p.config.coin1, CoinSpec::Phi { q: 1, p: 50 });
        assert_eq!(p.config.coin2, Some(CoinSpec::Phi { q: 1, p: 50 }));
        assert_eq!(p.config.steps, 200);
        assert_eq!(p.config.interaction, Some(InteractionRule::IdentityOne));
        assert_eq!(p.config.initial, Some(InitialSel::PsiPlus));
        assert!(p.config.record_entropy);
        assert_eq!(p.config.entropy_stride, 1);
    }

    #[test]
    fn comb4_presets_mix_hadamard_and_phi() {
        let p = find_preset::<f64>("comb4-piphase-psiminus-q1p100").unwrap();
        assert_eq!(p.config.coin1, CoinSpec::Hadamard);
        assert_eq!(p.config.coin2, Some(CoinSpec::Phi { q: 1, p: 100 }));
    }

    #[test]
    fn single_presets_are_single_mode() {
        let p = find_preset::<f64>("single-alpha-a1.25").unwrap();
        assert_eq!(p.config.mode, Mode::Single);
        assert_eq!(p.config.steps, 1000);
        assert!(!p.config.record_entropy);
        let p = find_preset::<f64>("single-phi-q1p100").unwrap();
        assert_eq!(p.config.coin1, CoinSpec::Phi { q: 1, p: 100 });
        assert_eq!(p.config.steps, 200);
    }
}
