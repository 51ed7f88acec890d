//! One full walk step — coin, then conditional shift — for one- and
//! two-walker states, run loops that drive a time-dependent coin
//! schedule, and an independent dense-matrix oracle for small lattices.
//!
//! A step at walk time `t` realizes the coin(s) at `t`, applies them
//! cell-by-cell (with the same-site substitution for interacting pairs),
//! then translates every amplitude by one site per particle — up for `↑`,
//! down for `↓`. Amplitudes never wrap or truncate: stepping a state
//! whose light cone would touch the lattice edge is a hard error.
//!
//! The oracle rebuilds each step as an explicit dense unitary and applies
//! it by matrix–vector multiplication. It shares only the coin-matrix
//! code with the kernel, so agreement between the two is a meaningful
//! check of the sparse update logic.

use num_complex::Complex;

use crate::coins::{coin_at, pair_coin_at, CoinSpec, PairCoinSpec};
use crate::error::{Error, Result};
use crate::lattice::{Lattice, PairState, SingleState, Spin};
use crate::linalg::CMat;
use crate::num::{Amp, Real};

/// Largest lattice half-width `oracle_evolve` will materialize a dense
/// step operator for (the operator has `[2(2N+1)]⁴` entries).
pub const ORACLE_MAX_HALF_WIDTH: usize = 12;
/// Largest step count `oracle_evolve` accepts.
pub const ORACLE_MAX_STEPS: u64 = 10;

fn require_headroom(support: usize, half_width: usize) -> Result<()> {
    if support + 1 > half_width {
        return Err(Error::BoundaryContact {
            half_width,
            needed: support + 1,
        });
    }
    Ok(())
}

/// Advance a one-walker state by one step with the coin at time `t`.
pub fn step_single<T: Real>(
    state: &mut SingleState<T>,
    spec: &CoinSpec<T>,
    t: u64,
) -> Result<()> {
    require_headroom(state.support(), state.lattice().half_width())?;
    let c = coin_at(spec, t);
    let r = state.support() as i64;

    // Coin stage, in place: only the support window can hold amplitude.
    for x in -r..=r {
        let up = state.amp(x, Spin::Up);
        let dn = state.amp(x, Spin::Down);
        state.set_amp(x, Spin::Up, c.at(0, 0) * up + c.at(0, 1) * dn);
        state.set_amp(x, Spin::Down, c.at(1, 0) * up + c.at(1, 1) * dn);
    }

    // Shift stage, double-buffered: each (x, s) scatters to a distinct
    // target, so plain assignment is a faithful permutation.
    let zero = Complex::new(T::zero(), T::zero());
    let lat = state.lattice();
    let mut next = vec![zero; state.amps().len()];
    for x in -r..=r {
        for s in Spin::BOTH {
            next[2 * lat.index(x + s.shift()) + s.index()] = state.amp(x, s);
        }
    }
    state.amp = next;
    state.support += 1;
    Ok(())
}

/// Advance a two-walker state by one step with the pair coin at time `t`.
/// The same-site substitution tests `x == y` on the positions *before*
/// the coin is applied.
pub fn step_pair<T: Real>(
    state: &mut PairState<T>,
    spec: &PairCoinSpec<T>,
    t: u64,
) -> Result<()> {
    require_headroom(state.support(), state.lattice().half_width())?;
    let far = pair_coin_at(spec, t, false);
    let same = pair_coin_at(spec, t, true);
    let r = state.support() as i64;
    let zero = Complex::new(T::zero(), T::zero());

    // Coin stage, in place over the support square.
    for x in -r..=r {
        for y in -r..=r {
            let m = if x == y { &same } else { &far };
            let mut v = [zero; 4];
            for s1 in 0..2 {
                for s2 in 0..2 {
                    v[s1 + 2 * s2] =
                        state.amp(x, Spin::from_index(s1), y, Spin::from_index(s2));
                }
            }
            for (s_out, row) in m.0.iter().enumerate() {
                let mut acc = zero;
                for (s_in, entry) in row.iter().enumerate() {
                    acc += *entry * v[s_in];
                }
                state.set_amp(
                    x,
                    Spin::from_index(s_out & 1),
                    y,
                    Spin::from_index(s_out >> 1),
                    acc,
                );
            }
        }
    }

    // Shift stage, double-buffered disjoint scatter.
    let lat = state.lattice();
    let dim = state.dim();
    let mut next = vec![zero; state.amps().len()];
    for x in -r..=r {
        for y in -r..=r {
            for s1 in Spin::BOTH {
                for s2 in Spin::BOTH {
                    let a = state.amp(x, s1, y, s2);
                    if a != zero {
                        let row = 2 * lat.index(x + s1.shift()) + s1.index();
                        let col = 2 * lat.index(y + s2.shift()) + s2.index();
                        next[row * dim + col] = a;
                    }
                }
            }
        }
    }
    state.amp = next;
    state.support += 1;
    Ok(())
}

/// Drive a one-walker state for `steps` steps. Step `k = 1..=steps` uses
/// coin time `t = k − 1`; `observe` fires once with the initial state
/// (step 0) and again after every step.
pub fn run_single<T: Real, F>(
    mut state: SingleState<T>,
    spec: &CoinSpec<T>,
    steps: u64,
    mut observe: F,
) -> Result<SingleState<T>>
where
    F: FnMut(u64, &SingleState<T>) -> Result<()>,
{
    observe(0, &state)?;
    for k in 1..=steps {
        step_single(&mut state, spec, k - 1)?;
        observe(k, &state)?;
    }
    Ok(state)
}

/// Drive a two-walker state for `steps` steps; same conventions as
/// [`run_single`].
pub fn run_pair<T: Real, F>(
    mut state: PairState<T>,
    spec: &PairCoinSpec<T>,
    steps: u64,
    mut observe: F,
) -> Result<PairState<T>>
where
    F: FnMut(u64, &PairState<T>) -> Result<()>,
{
    observe(0, &state)?;
    for k in 1..=steps {
        step_pair(&mut state, spec, k - 1)?;
        observe(k, &state)?;
    }
    Ok(state)
}

/// Build the explicit dense step operator `U_t = S·C_t` on the full
/// two-walker space. `C_t` is block-diagonal over cells (with the
/// same-site substitution); `S` translates each particle by its spin,
/// wrapping at the lattice edge so the operator stays exactly unitary.
/// Within the light cone the wrap is never exercised and the operator
/// agrees with the kernel's open-boundary convention.
pub fn oracle_step_matrix<T: Real>(
    lattice: Lattice,
    spec: &PairCoinSpec<T>,
    t: u64,
) -> CMat<T> {
    let dim = 2 * lattice.n_sites();
    let d = dim * dim;
    let far = pair_coin_at(spec, t, false);
    let same = pair_coin_at(spec, t, true);
    let n = lattice.half_width() as i64;
    let wrap = |x: i64| {
        if x > n {
            -n
        } else if x < -n {
            n
        } else {
            x
        }
    };
    let mut u = CMat::zeros(d, d);
    for x in lattice.positions() {
        for y in lattice.positions() {
            let m = if x == y { &same } else { &far };
            for s1_in in 0..2 {
                for s2_in in 0..2 {
                    let col = (2 * lattice.index(x) + s1_in) * dim
                        + 2 * lattice.index(y)
                        + s2_in;
                    for s1_out in 0..2 {
                        for s2_out in 0..2 {
                            let v = m.at(s1_out + 2 * s2_out, s1_in + 2 * s2_in);
                            let xo = wrap(x + Spin::from_index(s1_out).shift());
                            let yo = wrap(y + Spin::from_index(s2_out).shift());
                            let row = (2 * lattice.index(xo) + s1_out) * dim
                                + 2 * lattice.index(yo)
                                + s2_out;
                            u.set(row, col, v);
                        }
                    }
                }
            }
        }
    }
    u
}

/// Evolve a two-walker state by dense matrix–vector multiplication
/// against the explicitly built step operators. Refuses lattices and
/// step counts beyond [`ORACLE_MAX_HALF_WIDTH`] / [`ORACLE_MAX_STEPS`];
/// the full operator simply does not fit above that.
pub fn oracle_evolve<T: Real>(
    initial: &PairState<T>,
    spec: &PairCoinSpec<T>,
    steps: u64,
) -> Result<PairState<T>> {
    let lattice = initial.lattice();
    if lattice.half_width() > ORACLE_MAX_HALF_WIDTH || steps > ORACLE_MAX_STEPS {
        return Err(Error::OracleTooLarge {
            half_width: lattice.half_width(),
            steps,
            max_half_width: ORACLE_MAX_HALF_WIDTH,
            max_steps: ORACLE_MAX_STEPS,
        });
    }
    let mut v: Vec<Amp<T>> = initial.amps().to_vec();
    for t in 0..steps {
        let u = oracle_step_matrix(lattice, spec, t);
        v = u.mul_vec(&v);
    }
    let mut out = PairState {
        lattice,
        amp: v,
        support: 0,
    };
    rescan_support(&mut out);
    Ok(out)
}

fn rescan_support<T: Real>(state: &mut PairState<T>) {
    let lat = state.lattice();
    let mut support = 0usize;
    for x in lat.positions() {
        for y in lat.positions() {
            for s1 in Spin::BOTH {
                for s2 in Spin::BOTH {
                    if state.amp(x, s1, y, s2).norm_sqr() != T::zero() {
                        support = support
                            .max(x.unsigned_abs() as usize)
                            .max(y.unsigned_abs() as usize);
                    }
                }
            }
        }
    }
    state.support = support;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coins::InteractionRule;
    use crate::lattice::{make_initial_pair, make_initial_single, InitialPair};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn hh(interaction: InteractionRule) -> PairCoinSpec<f64> {
        PairCoinSpec {
            coin1: CoinSpec::Hadamard,
            coin2: CoinSpec::Hadamard,
            interaction,
        }
    }

    fn max_pair_diff(a: &PairState<f64>, b: &PairState<f64>) -> f64 {
        assert_eq!(a.amps().len(), b.amps().len());
        a.amps()
            .iter()
            .zip(b.amps())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    fn random_pair_state(lattice: Lattice, radius: i64, rng: &mut StdRng) -> PairState<f64> {
        let mut state = PairState::zeroed(lattice);
        for x in -radius..=radius {
            for y in -radius..=radius {
                for s1 in Spin::BOTH {
                    for s2 in Spin::BOTH {
                        let a = Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                        state.set_amp(x, s1, y, s2, a);
                    }
                }
            }
        }
        state.support = radius as usize;
        state
    }

    #[test]
    fn single_up_walker_splits_under_hadamard() {
        let lat = Lattice::new(2);
        let mut s =
            make_initial_single::<f64>(lat, (Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)))
                .unwrap();
        step_single(&mut s, &CoinSpec::Hadamard, 0).unwrap();
        assert!((s.amp(1, Spin::Up) - FRAC_1_SQRT_2).norm() <= 1e-15);
        assert!((s.amp(-1, Spin::Down) - FRAC_1_SQRT_2).norm() <= 1e-15);
        assert_eq!(s.amp(0, Spin::Up), Complex::new(0.0, 0.0));
        assert_eq!(s.amp(0, Spin::Down), Complex::new(0.0, 0.0));
        assert_eq!(s.support(), 1);
    }

    #[test]
    fn unbiased_walker_spreads_symmetrically_in_one_step() {
        let lat = Lattice::new(2);
        let mut s =
            make_initial_single::<f64>(lat, crate::lattice::unbiased_spinor()).unwrap();
        step_single(&mut s, &CoinSpec::Hadamard, 0).unwrap();
        let p1 = s.amp(1, Spin::Up).norm_sqr() + s.amp(1, Spin::Down).norm_sqr();
        let pm1 = s.amp(-1, Spin::Up).norm_sqr() + s.amp(-1, Spin::Down).norm_sqr();
        assert!((p1 - 0.5).abs() <= 1e-15);
        assert!((pm1 - 0.5).abs() <= 1e-15);
    }

    #[test]
    fn phi_at_full_period_steps_like_hadamard() {
        let lat = Lattice::new(3);
        let mut a =
            make_initial_single::<f64>(lat, crate::lattice::unbiased_spinor()).unwrap();
        let mut b = a.clone();
        step_single(&mut a, &CoinSpec::Phi { q: 1, p: 50 }, 50).unwrap();
        step_single(&mut b, &CoinSpec::Hadamard, 0).unwrap();
        for (x, y) in a.amps().iter().zip(b.amps()) {
            assert_eq!((x - y).norm(), 0.0);
        }
    }

    #[test]
    fn first_step_uses_time_zero() {
        // Phi(1,2) at t=0 is the Hadamard coin; at t=1 it is not. A
        // one-step run must therefore match a Hadamard step exactly.
        let lat = Lattice::new(2);
        let init = make_initial_single::<f64>(lat, crate::lattice::unbiased_spinor()).unwrap();
        let a = run_single(init.clone(), &CoinSpec::Phi { q: 1, p: 2 }, 1, |_, _| Ok(()))
            .unwrap();
        let b = run_single(init, &CoinSpec::Hadamard, 1, |_, _| Ok(())).unwrap();
        for (x, y) in a.amps().iter().zip(b.amps()) {
            assert_eq!((x - y).norm(), 0.0);
        }
    }

    #[test]
    fn psi_plus_one_hadamard_step_bunches() {
        let lat = Lattice::new(2);
        let mut s = make_initial_pair::<f64>(lat, &InitialPair::PsiPlus).unwrap();
        step_pair(&mut s, &hh(InteractionRule::None), 0).unwrap();
        let h = FRAC_1_SQRT_2;
        assert!((s.amp(1, Spin::Up, 1, Spin::Up) - h).norm() <= 1e-15);
        assert!((s.amp(-1, Spin::Down, -1, Spin::Down) + h).norm() <= 1e-15);
        // Everything else is exactly zero, in particular the
        // anti-bunched corners.
        let p11 = s.amp(1, Spin::Up, 1, Spin::Up).norm_sqr();
        let pmm = s.amp(-1, Spin::Down, -1, Spin::Down).norm_sqr();
        assert!((p11 - 0.5).abs() <= 1e-15);
        assert!((pmm - 0.5).abs() <= 1e-15);
        assert_eq!(s.amp(1, Spin::Up, -1, Spin::Down), Complex::new(0.0, 0.0));
        assert_eq!(s.amp(-1, Spin::Down, 1, Spin::Up), Complex::new(0.0, 0.0));
        assert!((s.norm() - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn psi_minus_one_hadamard_step_antibunches() {
        let lat = Lattice::new(2);
        let mut s = make_initial_pair::<f64>(lat, &InitialPair::PsiMinus).unwrap();
        step_pair(&mut s, &hh(InteractionRule::None), 0).unwrap();
        let h = FRAC_1_SQRT_2;
        assert!((s.amp(1, Spin::Up, -1, Spin::Down) + h).norm() <= 1e-15);
        assert!((s.amp(-1, Spin::Down, 1, Spin::Up) - h).norm() <= 1e-15);
        assert_eq!(s.amp(1, Spin::Up, 1, Spin::Up), Complex::new(0.0, 0.0));
        assert_eq!(s.amp(-1, Spin::Down, -1, Spin::Down), Complex::new(0.0, 0.0));
        let p = s.amp(1, Spin::Up, -1, Spin::Down).norm_sqr();
        assert!((p - 0.5).abs() <= 1e-15);
    }

    #[test]
    fn identity_interaction_translates_up_up_pair_exactly() {
        let lat = Lattice::new(8);
        let init = make_initial_pair::<f64>(
            lat,
            &InitialPair::Custom(vec![(0, Spin::Up, 0, Spin::Up, Complex::new(1.0, 0.0))]),
        )
        .unwrap();
        let spec = PairCoinSpec {
            coin1: CoinSpec::Phi { q: 3, p: 7 },
            coin2: CoinSpec::Alpha {
                alpha: 1.25,
                tau: 1,
            },
            interaction: InteractionRule::IdentityOne,
        };
        let s = run_pair(init, &spec, 6, |_, _| Ok(())).unwrap();
        assert_eq!(s.amp(6, Spin::Up, 6, Spin::Up), Complex::new(1.0, 0.0));
        assert_eq!(s.norm(), 1.0);
    }

    #[test]
    fn identity_interaction_sep_corner_amplitude_is_exact() {
        let lat = Lattice::new(6);
        let init = make_initial_pair::<f64>(lat, &InitialPair::Sep).unwrap();
        let spec = hh(InteractionRule::IdentityOne);
        let s = run_pair(init.clone(), &spec, 5, |_, _| Ok(())).unwrap();
        assert_eq!(s.amp(5, Spin::Up, 5, Spin::Up), Complex::new(0.5, 0.0));
        assert_eq!(s.amp(-5, Spin::Down, -5, Spin::Down), Complex::new(-0.5, 0.0));
        // The oracle agrees.
        let o = oracle_evolve(&init, &spec, 5).unwrap();
        assert_eq!(o.amp(5, Spin::Up, 5, Spin::Up), Complex::new(0.5, 0.0));
    }

    #[test]
    fn step_is_linear() {
        let lat = Lattice::new(6);
        let mut rng = StdRng::seed_from_u64(42);
        let psi1 = random_pair_state(lat, 2, &mut rng);
        let psi2 = random_pair_state(lat, 0, &mut rng);
        let ca = Complex::new(0.3, -0.4);
        let cb = Complex::new(-0.8, 0.1);
        let combined = PairState {
            lattice: lat,
            amp: psi1
                .amps()
                .iter()
                .zip(psi2.amps())
                .map(|(a, b)| ca * a + cb * b)
                .collect(),
            support: psi1.support().max(psi2.support()),
        };
        let spec = PairCoinSpec {
            coin1: CoinSpec::Alpha { alpha: 0.5, tau: 1 },
            coin2: CoinSpec::Phi { q: 1, p: 50 },
            interaction: InteractionRule::PiPhase,
        };
        let mut s1 = psi1;
        let mut s2 = psi2;
        let mut sc = combined;
        step_pair(&mut s1, &spec, 3).unwrap();
        step_pair(&mut s2, &spec, 3).unwrap();
        step_pair(&mut sc, &spec, 3).unwrap();
        let recombined: Vec<Amp<f64>> = s1
            .amps()
            .iter()
            .zip(s2.amps())
            .map(|(a, b)| ca * a + cb * b)
            .collect();
        let worst = sc
            .amps()
            .iter()
            .zip(&recombined)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max);
        assert!(worst <= 1e-12, "linearity violated by {worst}");
    }

    #[test]
    fn pair_norm_is_preserved_every_step() {
        let lat = Lattice::new(101);
        let init = make_initial_pair::<f64>(lat, &InitialPair::Sep).unwrap();
        let spec = PairCoinSpec {
            coin1: CoinSpec::Hadamard,
            coin2: CoinSpec::Phi { q: 1, p: 50 },
            interaction: InteractionRule::PiPhase,
        };
        run_pair(init, &spec, 100, |_, s| {
            let drift = (s.norm() - 1.0).abs();
            if drift > 1e-12 {
                return Err(Error::Invariant(format!("norm drift {drift}")));
            }
            Ok(())
        })
        .unwrap();
    }

    #[test]
    fn single_norm_drift_stays_tiny_over_a_thousand_steps() {
        let lat = Lattice::new(1001);
        let init = make_initial_single::<f64>(lat, crate::lattice::unbiased_spinor()).unwrap();
        let spec = CoinSpec::Alpha {
            alpha: 1.25,
            tau: 1,
        };
        let mut worst = 0.0f64;
        let s = run_single(init, &spec, 1000, |_, s| {
            worst = worst.max((s.norm() - 1.0).abs());
            Ok(())
        })
        .unwrap();
        assert!(worst < 1e-9, "cumulative norm drift {worst}");
        assert!((s.norm() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn light_cone_grows_one_site_per_step() {
        let lat = Lattice::new(12);
        let init = make_initial_pair::<f64>(lat, &InitialPair::Sep).unwrap();
        run_pair(init, &hh(InteractionRule::PiPhase), 10, |k, s| {
            assert_eq!(s.support() as u64, k);
            // Everything beyond the light cone is exactly zero.
            let r = k as i64;
            for x in lat.positions() {
                for y in lat.positions() {
                    if x.abs() <= r && y.abs() <= r {
                        continue;
                    }
                    for s1 in Spin::BOTH {
                        for s2 in Spin::BOTH {
                            assert_eq!(s.amp(x, s1, y, s2), Complex::new(0.0, 0.0));
                        }
                    }
                }
            }
            Ok(())
        })
        .unwrap();
    }

    #[test]
    fn boundary_contact_is_a_hard_error() {
        let lat = Lattice::new(3);
        let init = make_initial_pair::<f64>(lat, &InitialPair::Sep).unwrap();
        let err = run_pair(init, &hh(InteractionRule::None), 4, |_, _| Ok(())).unwrap_err();
        assert!(matches!(
            err,
            Error::BoundaryContact {
                half_width: 3,
                needed: 4
            }
        ));

        let single = make_initial_single::<f64>(
            Lattice::new(2),
            crate::lattice::unbiased_spinor(),
        )
        .unwrap();
        let err = run_single(single, &CoinSpec::Hadamard, 3, |_, _| Ok(())).unwrap_err();
        assert!(matches!(err, Error::BoundaryContact { .. }));
    }

    #[test]
    fn zero_steps_returns_initial_and_observes_once() {
        let lat = Lattice::new(2);
        let init = make_initial_pair::<f64>(lat, &InitialPair::PsiMinus).unwrap();
        let mut calls = Vec::new();
        let out = run_pair(init.clone(), &hh(InteractionRule::None), 0, |k, _| {
            calls.push(k);
            Ok(())
        })
        .unwrap();
        assert_eq!(calls, vec![0]);
        assert_eq!(max_pair_diff(&init, &out), 0.0);
    }

    #[test]
    fn observer_fires_after_every_step() {
        let lat = Lattice::new(5);
        let init = make_initial_pair::<f64>(lat, &InitialPair::Sep).unwrap();
        let mut seen = Vec::new();
        run_pair(init, &hh(InteractionRule::None), 4, |k, s| {
            seen.push((k, s.support()));
            Ok(())
        })
        .unwrap();
        assert_eq!(seen, vec![(0, 0), (1, 1), (2, 2), (3, 3), (4, 4)]);
    }

    #[test]
    fn non_interacting_sep_walk_factorizes() {
        let steps = 20u64;
        let lat = Lattice::new(21);
        let spec = PairCoinSpec {
            coin1: CoinSpec::Hadamard,
            coin2: CoinSpec::Alpha { alpha: 0.5, tau: 1 },
            interaction: InteractionRule::None,
        };
        let pair = run_pair(
            make_initial_pair::<f64>(lat, &InitialPair::Sep).unwrap(),
            &spec,
            steps,
            |_, _| Ok(()),
        )
        .unwrap();
        let one = run_single(
            make_initial_single::<f64>(lat, crate::lattice::unbiased_spinor()).unwrap(),
            &spec.coin1,
            steps,
            |_, _| Ok(()),
        )
        .unwrap();
        let two = run_single(
            make_initial_single::<f64>(lat, crate::lattice::unbiased_spinor()).unwrap(),
            &spec.coin2,
            steps,
            |_, _| Ok(()),
        )
        .unwrap();
        let mut worst = 0.0f64;
        for x in lat.positions() {
            for y in lat.positions() {
                let p_joint: f64 = Spin::BOTH
                    .iter()
                    .flat_map(|s1| Spin::BOTH.iter().map(move |s2| (s1, s2)))
                    .map(|(s1, s2)| pair.amp(x, *s1, y, *s2).norm_sqr())
                    .sum();
                let p1: f64 = Spin::BOTH.iter().map(|s| one.amp(x, *s).norm_sqr()).sum();
                let p2: f64 = Spin::BOTH.iter().map(|s| two.amp(y, *s).norm_sqr()).sum();
                worst = worst.max((p_joint - p1 * p2).abs());
            }
        }
        assert!(worst < 1e-12, "factorization broken by {worst}");
    }

    #[test]
    fn oracle_step_operator_is_unitary() {
        let lat = Lattice::new(3);
        for interaction in [
            InteractionRule::None,
            InteractionRule::IdentityOne,
            InteractionRule::PiPhase,
        ] {
            let spec = PairCoinSpec {
                coin1: CoinSpec::Alpha { alpha: 0.5, tau: 1 },
                coin2: CoinSpec::Phi { q: 1, p: 4 },
                interaction,
            };
            for t in [0u64, 1, 3] {
                let u = oracle_step_matrix(lat, &spec, t);
                let defect = u.unitarity_defect();
                assert!(defect <= 1e-10, "defect {defect} for {interaction:?} at t={t}");
            }
        }
    }

    #[test]
    fn kernel_matches_oracle_on_an_interacting_walk() {
        let lat = Lattice::new(9);
        let spec = PairCoinSpec {
            coin1: CoinSpec::<f64>::Phi { q: 1, p: 50 },
            coin2: CoinSpec::Phi { q: 1, p: 50 },
            interaction: InteractionRule::PiPhase,
        };
        let init = make_initial_pair::<f64>(lat, &InitialPair::PsiMinus).unwrap();
        let kernel = run_pair(init.clone(), &spec, 8, |_, _| Ok(())).unwrap();
        let oracle = oracle_evolve(&init, &spec, 8).unwrap();
        let diff = max_pair_diff(&kernel, &oracle);
        assert!(diff < 1e-12, "kernel/oracle disagree by {diff}");
        assert_eq!(kernel.support(), 8);
        assert_eq!(oracle.support(), 8);
    }

    #[test]
    fn oracle_refuses_oversized_instances() {
        let spec = hh(InteractionRule::None);
        let big = make_initial_pair::<f64>(Lattice::new(13), &InitialPair::Sep).unwrap();
        assert!(matches!(
            oracle_evolve(&big, &spec, 2),
            Err(Error::OracleTooLarge { .. })
        ));
        let small = make_initial_pair::<f64>(Lattice::new(4), &InitialPair::Sep).unwrap();
        assert!(matches!(
            oracle_evolve(&small, &spec, 11),
            Err(Error::OracleTooLarge { .. })
        ));
    }
}
