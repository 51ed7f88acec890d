//! Positional observables computed from state snapshots: the joint
//! distribution `P(x,y)`, its marginals, the single-walker spread `σ`,
//! the positional correlation `C₁₂ = ⟨xy⟩ − ⟨x⟩⟨y⟩`, and the average
//! separation `Δ₁₂ = ⟨|x−y|⟩`.
//!
//! Everything here is a pure function of one snapshot; nothing is
//! accumulated across steps, so each step's record stands on its own.

use crate::lattice::{Lattice, PairState, SingleState, Spin};
use crate::num::Real;

/// Probability of each lattice position for one walker (spin traced
/// out).
#[derive(Clone, Debug)]
pub struct PositionDistribution<T: Real> {
    lattice: Lattice,
    /// `p[index(x)]`.
    p: Vec<T>,
}

impl<T: Real> PositionDistribution<T> {
    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    #[inline]
    pub fn p(&self, x: i64) -> T {
        self.p[self.lattice.index(x)]
    }

    pub fn total(&self) -> T {
        self.p.iter().copied().sum()
    }

    /// `⟨x⟩`.
    pub fn mean(&self) -> T {
        self.lattice
            .positions()
            .map(|x| T::from_i64(x).unwrap() * self.p(x))
            .sum()
    }

    /// `⟨|x|⟩`.
    pub fn abs_mean(&self) -> T {
        self.lattice
            .positions()
            .map(|x| T::from_i64(x.abs()).unwrap() * self.p(x))
            .sum()
    }

    /// `⟨x²⟩ − ⟨x⟩²`, clamped at zero against rounding on point masses.
    pub fn variance(&self) -> T {
        let mean = self.mean();
        let second: T = self
            .lattice
            .positions()
            .map(|x| {
                let xf = T::from_i64(x).unwrap();
                xf * xf * self.p(x)
            })
            .sum();
        (second - mean * mean).max(T::zero())
    }

    pub fn sigma(&self) -> T {
        self.variance().sqrt()
    }

    /// `(x, P(x))` pairs, ascending in `x`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, T)> + '_ {
        self.lattice.positions().map(move |x| (x, self.p(x)))
    }
}

/// Trace out the spin of a one-walker state.
pub fn position_distribution<T: Real>(state: &SingleState<T>) -> PositionDistribution<T> {
    let lattice = state.lattice();
    let p = lattice
        .positions()
        .map(|x| {
            Spin::BOTH
                .iter()
                .map(|s| state.amp(x, *s).norm_sqr())
                .sum()
        })
        .collect();
    PositionDistribution { lattice, p }
}

/// Standard deviation `√(⟨x²⟩ − ⟨x⟩²)` of the walker's position.
pub fn sigma<T: Real>(state: &SingleState<T>) -> T {
    position_distribution(state).sigma()
}

/// Joint probability `P(x,y)` of finding walker 1 at `x` and walker 2 at
/// `y` (both spins traced out).
#[derive(Clone, Debug)]
pub struct JointDistribution<T: Real> {
    lattice: Lattice,
    /// `p[index(x)·n_sites + index(y)]`.
    p: Vec<T>,
}

impl<T: Real> JointDistribution<T> {
    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    #[inline]
    pub fn p(&self, x: i64, y: i64) -> T {
        self.p[self.lattice.index(x) * self.lattice.n_sites() + self.lattice.index(y)]
    }

    pub fn total(&self) -> T {
        self.p.iter().copied().sum()
    }

    /// `(x, y, P(x,y))` triples, row-major ascending.
    pub fn iter(&self) -> impl Iterator<Item = (i64, i64, T)> + '_ {
        self.lattice.positions().flat_map(move |x| {
            self.lattice.positions().map(move |y| (x, y, self.p(x, y)))
        })
    }
}

/// Collapse a two-walker state to its joint position distribution:
/// `P(x,y) = Σ_{s₁,s₂} |a_{x s₁ y s₂}|²`.
pub fn joint_distribution<T: Real>(state: &PairState<T>) -> JointDistribution<T> {
    let lattice = state.lattice();
    let n = lattice.n_sites();
    let mut p = vec![T::zero(); n * n];
    for (ix, x) in lattice.positions().enumerate() {
        for (iy, y) in lattice.positions().enumerate() {
            let mut cell = T::zero();
            for s1 in Spin::BOTH {
                for s2 in Spin::BOTH {
                    cell += state.amp(x, s1, y, s2).norm_sqr();
                }
            }
            p[ix * n + iy] = cell;
        }
    }
    JointDistribution { lattice, p }
}

/// Row and column sums of the joint distribution: the positional
/// distributions of walker 1 and walker 2.
pub fn marginals<T: Real>(
    dist: &JointDistribution<T>,
) -> (PositionDistribution<T>, PositionDistribution<T>) {
    let lattice = dist.lattice();
    let n = lattice.n_sites();
    let mut px = vec![T::zero(); n];
    let mut py = vec![T::zero(); n];
    for (ix, row) in dist.p.chunks_exact(n).enumerate() {
        for (iy, &v) in row.iter().enumerate() {
            px[ix] += v;
            py[iy] += v;
        }
    }
    (
        PositionDistribution { lattice, p: px },
        PositionDistribution { lattice, p: py },
    )
}

/// Positional correlation `C₁₂ = ⟨xy⟩ − ⟨x⟩⟨y⟩`. Positive values mean
/// the walkers bunch (concentrate near `x ≈ y`), negative values mean
/// they anti-bunch.
pub fn correlation<T: Real>(dist: &JointDistribution<T>) -> T {
    let lattice = dist.lattice();
    let n = lattice.n_sites();
    let mut xy = T::zero();
    for (ix, x) in lattice.positions().enumerate() {
        for (iy, y) in lattice.positions().enumerate() {
            xy += T::from_i64(x * y).unwrap() * dist.p[ix * n + iy];
        }
    }
    let (px, py) = marginals(dist);
    xy - px.mean() * py.mean()
}

/// Average inter-walker distance `Δ₁₂ = ⟨|x−y|⟩`.
pub fn avg_separation<T: Real>(dist: &JointDistribution<T>) -> T {
    let lattice = dist.lattice();
    let n = lattice.n_sites();
    let mut acc = T::zero();
    for (ix, x) in lattice.positions().enumerate() {
        for (iy, y) in lattice.positions().enumerate() {
            acc += T::from_i64((x - y).abs()).unwrap() * dist.p[ix * n + iy];
        }
    }
    acc
}

/// One timeseries row: the observables recorded after a given step.
/// `sigma` is filled in single-walker runs; the remaining fields in
/// two-walker runs, with `entropy` present only on steps where it was
/// computed (it is the expensive one and may be strided).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ObservableRecord<T: Real> {
    pub step: u64,
    pub sigma: Option<T>,
    pub c12: Option<T>,
    pub delta12: Option<T>,
    pub entropy: Option<T>,
}
