//! Amplitude containers for one- and two-walker wavefunctions on a
//! bounded integer lattice, plus their basic algebra.
//!
//! Positions live on the symmetric window `x ∈ [-N, +N]`. A walker moves
//! at most one site per step, so a lattice with `N >= steps` contains the
//! entire light cone of an origin-localized start; the evolution module
//! refuses to step a state whose light cone would touch the edge.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::num::{Amp, Real};

/// Coin (spin) basis state of a walker. `Up` shifts `+1`, `Down` shifts
/// `-1` under the conditional-shift operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub const BOTH: [Spin; 2] = [Spin::Up, Spin::Down];

    #[inline]
    pub fn index(self) -> usize {
        match self {
            Spin::Up => 0,
            Spin::Down => 1,
        }
    }

    #[inline]
    pub fn from_index(i: usize) -> Spin {
        match i {
            0 => Spin::Up,
            1 => Spin::Down,
            _ => panic!("spin index must be 0 or 1, got {i}"),
        }
    }

    /// Displacement under the conditional shift.
    #[inline]
    pub fn shift(self) -> i64 {
        match self {
            Spin::Up => 1,
            Spin::Down => -1,
        }
    }
}

/// Bounded symmetric integer lattice `x ∈ [-N, +N]` with its position ↔
/// array-index map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lattice {
    half_width: usize,
}

impl Lattice {
    pub fn new(half_width: usize) -> Lattice {
        Lattice { half_width }
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    pub fn n_sites(&self) -> usize {
        2 * self.half_width + 1
    }

    #[inline]
    pub fn contains(&self, x: i64) -> bool {
        x.unsigned_abs() as usize <= self.half_width
    }

    /// Array index of position `x`; positions round-trip exactly.
    #[inline]
    pub fn index(&self, x: i64) -> usize {
        debug_assert!(self.contains(x), "position {x} outside lattice");
        (x + self.half_width as i64) as usize
    }

    /// Position of array index `i`.
    #[inline]
    pub fn position(&self, i: usize) -> i64 {
        debug_assert!(i < self.n_sites());
        i as i64 - self.half_width as i64
    }

    /// All positions, ascending.
    pub fn positions(&self) -> impl Iterator<Item = i64> {
        let n = self.half_width as i64;
        -n..=n
    }
}

/// One-walker wavefunction: a complex amplitude per `(position, spin)`.
#[derive(Clone, Debug)]
pub struct SingleState<T: Real> {
    pub(crate) lattice: Lattice,
    /// `amp[2·index(x) + spin]`.
    pub(crate) amp: Vec<Amp<T>>,
    /// Support radius: amplitudes vanish (exactly) for `|x| > support`.
    pub(crate) support: usize,
}

impl<T: Real> SingleState<T> {
    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    pub fn support(&self) -> usize {
        self.support
    }

    #[inline]
    pub fn amp(&self, x: i64, s: Spin) -> Amp<T> {
        self.amp[2 * self.lattice.index(x) + s.index()]
    }

    #[inline]
    pub(crate) fn set_amp(&mut self, x: i64, s: Spin, v: Amp<T>) {
        let i = 2 * self.lattice.index(x) + s.index();
        self.amp[i] = v;
    }

    /// Raw amplitudes, laid out as `[2·site + spin]`.
    pub fn amps(&self) -> &[Amp<T>] {
        &self.amp
    }

    /// Total probability `Σ |amp|²` (1 for any evolved state).
    pub fn norm(&self) -> T {
        self.amp.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// Two-walker wavefunction: the complex coefficient tensor
/// `a[x, s1, y, s2]` over `(position₁, spin₁, position₂, spin₂)`.
///
/// Layout: `amp[(2·index(x) + s1)·dim + (2·index(y) + s2)]` with
/// `dim = 2·n_sites`. Read as a matrix, rows carry the particle-1 labels
/// and columns the particle-2 labels — exactly the bipartite coefficient
/// matrix whose singular values give the Schmidt spectrum.
#[derive(Clone, Debug)]
pub struct PairState<T: Real> {
    pub(crate) lattice: Lattice,
    pub(crate) amp: Vec<Amp<T>>,
    pub(crate) support: usize,
}

impl<T: Real> PairState<T> {
    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    pub fn support(&self) -> usize {
        self.support
    }

    /// Per-particle dimension (`2 · n_sites`): the side length of the
    /// coefficient matrix.
    pub fn dim(&self) -> usize {
        2 * self.lattice.n_sites()
    }

    #[inline]
    pub(crate) fn flat(&self, x: i64, s1: Spin, y: i64, s2: Spin) -> usize {
        let dim = self.dim();
        (2 * self.lattice.index(x) + s1.index()) * dim + 2 * self.lattice.index(y) + s2.index()
    }

    #[inline]
    pub fn amp(&self, x: i64, s1: Spin, y: i64, s2: Spin) -> Amp<T> {
        self.amp[self.flat(x, s1, y, s2)]
    }

    #[inline]
    pub(crate) fn set_amp(&mut self, x: i64, s1: Spin, y: i64, s2: Spin, v: Amp<T>) {
        let i = self.flat(x, s1, y, s2);
        self.amp[i] = v;
    }

    /// Raw amplitudes in the row-major layout documented on the type.
    pub fn amps(&self) -> &[Amp<T>] {
        &self.amp
    }

    /// Total probability `Σ |a|²`.
    pub fn norm(&self) -> T {
        self.amp.iter().map(|a| a.norm_sqr()).sum()
    }

    pub(crate) fn zeroed(lattice: Lattice) -> PairState<T> {
        let dim = 2 * lattice.n_sites();
        PairState {
            lattice,
            amp: vec![Complex::new(T::zero(), T::zero()); dim * dim],
            support: 0,
        }
    }
}

/// Initial-state selector for the two-walker wavefunction.
#[derive(Clone, Debug)]
pub enum InitialPair<T: Real> {
    /// Product of two unbiased walkers at the origin:
    /// `½(|0↑;0↑⟩ + i|0↑;0↓⟩ + i|0↓;0↑⟩ − |0↓;0↓⟩)`.
    Sep,
    /// Coin-entangled Bell state `(|0↑;0↓⟩ + |0↓;0↑⟩)/√2`.
    PsiPlus,
    /// Coin-entangled Bell state `(|0↑;0↓⟩ − |0↓;0↑⟩)/√2`.
    PsiMinus,
    /// Explicit amplitude list `(x, s1, y, s2, amplitude)`; must be
    /// normalized.
    Custom(Vec<(i64, Spin, i64, Spin, Amp<T>)>),
}

/// Build a one-walker state localized at the origin with the given coin
/// spinor `(c_up, c_down)`.
pub fn make_initial_single<T: Real>(
    lattice: Lattice,
    spinor: (Amp<T>, Amp<T>),
) -> Result<SingleState<T>> {
    let norm = spinor.0.norm_sqr() + spinor.1.norm_sqr();
    if (norm - T::one()).abs() > T::unit_tol() {
        return Err(Error::NotNormalized {
            norm: norm.as_f64(),
            tol: T::unit_tol().as_f64(),
        });
    }
    let mut state = SingleState {
        lattice,
        amp: vec![Complex::new(T::zero(), T::zero()); 2 * lattice.n_sites()],
        support: 0,
    };
    state.set_amp(0, Spin::Up, spinor.0);
    state.set_amp(0, Spin::Down, spinor.1);
    Ok(state)
}

/// Build a two-walker state from one of the canonical selectors.
pub fn make_initial_pair<T: Real>(
    lattice: Lattice,
    which: &InitialPair<T>,
) -> Result<PairState<T>> {
    let mut state = PairState::zeroed(lattice);
    let half = T::lit(0.5);
    let invsq2 = T::FRAC_1_SQRT_2();
    let zero = T::zero();
    match which {
        InitialPair::Sep => {
            state.set_amp(0, Spin::Up, 0, Spin::Up, Complex::new(half, zero));
            state.set_amp(0, Spin::Up, 0, Spin::Down, Complex::new(zero, half));
            state.set_amp(0, Spin::Down, 0, Spin::Up, Complex::new(zero, half));
            state.set_amp(0, Spin::Down, 0, Spin::Down, Complex::new(-half, zero));
        }
        InitialPair::PsiPlus => {
            state.set_amp(0, Spin::Up, 0, Spin::Down, Complex::new(invsq2, zero));
            state.set_amp(0, Spin::Down, 0, Spin::Up, Complex::new(invsq2, zero));
        }
        InitialPair::PsiMinus => {
            state.set_amp(0, Spin::Up, 0, Spin::Down, Complex::new(invsq2, zero));
            state.set_amp(0, Spin::Down, 0, Spin::Up, Complex::new(-invsq2, zero));
        }
        InitialPair::Custom(entries) => {
            let mut norm = T::zero();
            let mut support = 0usize;
            for &(x, s1, y, s2, a) in entries {
                for pos in [x, y] {
                    if !lattice.contains(pos) {
                        return Err(Error::PositionOutOfRange {
                            x: pos,
                            half_width: lattice.half_width(),
                        });
                    }
                }
                norm += a.norm_sqr();
                support = support
                    .max(x.unsigned_abs() as usize)
                    .max(y.unsigned_abs() as usize);
                let v = state.amp(x, s1, y, s2) + a;
                state.set_amp(x, s1, y, s2, v);
            }
            if (norm - T::one()).abs() > T::unit_tol() {
                return Err(Error::NotNormalized {
                    norm: norm.as_f64(),
                    tol: T::unit_tol().as_f64(),
                });
            }
            state.support = support;
        }
    }
    Ok(state)
}

/// The unbiased coin spinor `(1, i)/√2`: the start state that spreads
/// symmetrically under real coins.
pub fn unbiased_spinor<T: Real>() -> (Amp<T>, Amp<T>) {
    (
        Complex::new(T::FRAC_1_SQRT_2(), T::zero()),
        Complex::new(T::zero(), T::FRAC_1_SQRT_2()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn index_position_round_trip_exact() {
        for n in [0usize, 1, 5, 100] {
            let lat = Lattice::new(n);
            for x in lat.positions() {
                assert_eq!(lat.position(lat.index(x)), x);
            }
            assert_eq!(lat.positions().count(), lat.n_sites());
        }
    }

    proptest! {
        /// Round-trip is exact for arbitrary lattice sizes and positions.
        #[test]
        fn index_round_trip_prop(n in 0usize..2000, off in 0usize..4001) {
            let lat = Lattice::new(n);
            let x = (off % lat.n_sites()) as i64 - n as i64;
            prop_assert!(lat.contains(x));
            prop_assert_eq!(lat.position(lat.index(x)), x);
        }
    }

    #[test]
    fn basis_single_state() {
        let lat = Lattice::new(3);
        let s = make_initial_single::<f64>(lat, (Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)))
            .unwrap();
        assert_eq!(s.amp(0, Spin::Up), Complex::new(1.0, 0.0));
        assert_eq!(s.amp(0, Spin::Down), Complex::new(0.0, 0.0));
        assert_eq!(s.amp(1, Spin::Up), Complex::new(0.0, 0.0));
        assert_eq!(s.norm(), 1.0);
        assert_eq!(s.support(), 0);
    }

    #[test]
    fn unbiased_single_state_is_normalized() {
        let lat = Lattice::new(2);
        let s = make_initial_single::<f64>(lat, unbiased_spinor()).unwrap();
        assert!((s.norm() - 1.0).abs() <= 1e-15);
    }

    #[test]
    fn non_normalized_spinor_is_rejected() {
        let lat = Lattice::new(2);
        let err = make_initial_single::<f64>(lat, (Complex::new(1.0, 0.0), Complex::new(1.0, 0.0)))
            .unwrap_err();
        assert!(matches!(err, Error::NotNormalized { .. }));
    }

    #[test]
    fn sep_amplitudes() {
        let lat = Lattice::new(4);
        let s = make_initial_pair::<f64>(lat, &InitialPair::Sep).unwrap();
        assert_eq!(s.amp(0, Spin::Up, 0, Spin::Up), Complex::new(0.5, 0.0));
        assert_eq!(s.amp(0, Spin::Up, 0, Spin::Down), Complex::new(0.0, 0.5));
        assert_eq!(s.amp(0, Spin::Down, 0, Spin::Up), Complex::new(0.0, 0.5));
        assert_eq!(s.amp(0, Spin::Down, 0, Spin::Down), Complex::new(-0.5, 0.0));
        assert_eq!(s.norm(), 1.0);
        assert_eq!(s.support(), 0);
    }

    #[test]
    fn bell_states_have_two_amplitudes() {
        let lat = Lattice::new(4);
        let plus = make_initial_pair::<f64>(lat, &InitialPair::PsiPlus).unwrap();
        let minus = make_initial_pair::<f64>(lat, &InitialPair::PsiMinus).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(plus.amp(0, Spin::Up, 0, Spin::Down), Complex::new(r, 0.0));
        assert_eq!(plus.amp(0, Spin::Down, 0, Spin::Up), Complex::new(r, 0.0));
        assert_eq!(minus.amp(0, Spin::Up, 0, Spin::Down), Complex::new(r, 0.0));
        assert_eq!(minus.amp(0, Spin::Down, 0, Spin::Up), Complex::new(-r, 0.0));
        assert_eq!(plus.amp(0, Spin::Up, 0, Spin::Up), Complex::new(0.0, 0.0));
        assert!((plus.norm() - 1.0).abs() <= 1e-15);
        assert!((minus.norm() - 1.0).abs() <= 1e-15);
    }

    #[test]
    fn custom_product_basis_state() {
        let lat = Lattice::new(2);
        let s = make_initial_pair::<f64>(
            lat,
            &InitialPair::Custom(vec![(
                0,
                Spin::Up,
                0,
                Spin::Up,
                Complex::new(1.0, 0.0),
            )]),
        )
        .unwrap();
        assert_eq!(s.amp(0, Spin::Up, 0, Spin::Up), Complex::new(1.0, 0.0));
        assert_eq!(s.norm(), 1.0);
    }

    #[test]
    fn custom_validation_errors() {
        let lat = Lattice::new(2);
        let err = make_initial_pair::<f64>(
            lat,
            &InitialPair::Custom(vec![(0, Spin::Up, 0, Spin::Up, Complex::new(0.5, 0.0))]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotNormalized { .. }));

        let err = make_initial_pair::<f64>(
            lat,
            &InitialPair::Custom(vec![(3, Spin::Up, 0, Spin::Up, Complex::new(1.0, 0.0))]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::PositionOutOfRange { x: 3, .. }));
    }

    #[test]
    fn custom_support_covers_entries() {
        let lat = Lattice::new(5);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let s = make_initial_pair::<f64>(
            lat,
            &InitialPair::Custom(vec![
                (-3, Spin::Up, 1, Spin::Down, Complex::new(r, 0.0)),
                (2, Spin::Down, 0, Spin::Up, Complex::new(0.0, r)),
            ]),
        )
        .unwrap();
        assert_eq!(s.support(), 3);
    }

    #[test]
    fn zeroed_state_has_zero_norm() {
        let lat = Lattice::new(3);
        let s: PairState<f64> = PairState::zeroed(lat);
        assert_eq!(s.norm(), 0.0);
    }
}
