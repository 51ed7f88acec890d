//! State-vector simulation of discrete-time quantum walks for one and two
//! particles on the integer line.
//!
//! A walk step applies a (possibly time-dependent) coin to the internal
//! spin, then shifts each particle one site in the direction its spin
//! points. Two-particle walks extend this with contact interactions that
//! replace or rephase the coin wherever the particles sit on the same
//! site. On top of the kernels the crate provides position observables
//! (joint and marginal distributions, spread, correlation, mean
//! separation), the entanglement entropy of the particle bipartition via
//! a Schmidt decomposition, an independent dense-operator evolution used
//! as a cross-check, and a scenario runner with a preset catalog,
//! parameter sweeps, and deterministic CSV/JSON output.
//!
//! All numerics are generic over the scalar precision through the
//! [`Real`] trait; `f64` aliases such as [`PairState64`] are provided at
//! the crate root. There is no hidden randomness anywhere in the
//! pipeline: equal inputs produce byte-equal outputs.
//!
//! # Example
//!
//! One Hadamard step of the spin-entangled pair ψ⁺ leaves the two
//! positions perfectly correlated:
//!
//! ```
//! use qwalk::{
//!     correlation, joint_distribution, make_initial_pair, run_pair,
//!     CoinSpec64, InitialPair, InteractionRule, Lattice, PairCoinSpec64,
//! };
//!
//! let lattice = Lattice::new(4);
//! let state = make_initial_pair(lattice, &InitialPair::PsiPlus)?;
//! let spec = PairCoinSpec64 {
//!     coin1: CoinSpec64::Hadamard,
//!     coin2: CoinSpec64::Hadamard,
//!     interaction: InteractionRule::None,
//! };
//! let state = run_pair(state, &spec, 1, |_, _| Ok(()))?;
//! let c12 = correlation(&joint_distribution(&state));
//! assert!((c12 - 1.0).abs() < 1e-12);
//! # Ok::<(), qwalk::Error>(())
//! ```

pub mod coins;
pub mod entanglement;
pub mod error;
pub mod evolution;
pub mod lattice;
pub mod linalg;
pub mod num;
pub mod observables;
pub mod scenario;

pub use coins::{
    coin_at, pair_coin_at, CoinMatrix, CoinSpec, InteractionRule, PairCoinMatrix, PairCoinSpec,
};
pub use entanglement::{
    bipartite_matrix, compact_bipartite_matrix, entanglement_entropy, entropy,
    max_entropy_after, schmidt_spectrum, SchmidtSpectrum,
};
pub use error::{Error, Result};
pub use evolution::{
    oracle_evolve, oracle_step_matrix, run_pair, run_single, step_pair, step_single,
    ORACLE_MAX_HALF_WIDTH, ORACLE_MAX_STEPS,
};
pub use lattice::{
    make_initial_pair, make_initial_single, unbiased_spinor, InitialPair, Lattice, PairState,
    SingleState, Spin,
};
pub use linalg::{singular_values, CMat};
pub use num::{Amp, Real};
pub use observables::{
    avg_separation, correlation, joint_distribution, marginals, position_distribution, sigma,
    JointDistribution, ObservableRecord, PositionDistribution,
};
pub use scenario::{
    find_preset, fit_exponent, parse_axes_file, presets, run_scenario, run_sweep, ConfigPatch,
    InitialSel, Mode, Preset, ScenarioConfig, ScenarioOutputs,
};

/// Complex amplitude at `f64` precision.
pub type Amp64 = Amp<f64>;
/// Complex amplitude at `f32` precision.
pub type Amp32 = Amp<f32>;
/// Single-particle state at `f64` precision.
pub type SingleState64 = SingleState<f64>;
/// Single-particle state at `f32` precision.
pub type SingleState32 = SingleState<f32>;
/// Two-particle state at `f64` precision.
pub type PairState64 = PairState<f64>;
/// Two-particle state at `f32` precision.
pub type PairState32 = PairState<f32>;
/// Coin specification at `f64` precision.
pub type CoinSpec64 = CoinSpec<f64>;
/// Coin specification at `f32` precision.
pub type CoinSpec32 = CoinSpec<f32>;
/// Pair coin specification at `f64` precision.
pub type PairCoinSpec64 = PairCoinSpec<f64>;
/// Pair coin specification at `f32` precision.
pub type PairCoinSpec32 = PairCoinSpec<f32>;
/// Scenario configuration at `f64` precision.
pub type ScenarioConfig64 = ScenarioConfig<f64>;
/// Scenario configuration at `f32` precision.
pub type ScenarioConfig32 = ScenarioConfig<f32>;
/// Dense complex matrix at `f64` precision.
pub type CMat64 = CMat<f64>;
/// Dense complex matrix at `f32` precision.
pub type CMat32 = CMat<f32>;
