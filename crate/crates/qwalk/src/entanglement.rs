//! Inter-walker entanglement from the Schmidt spectrum.
//!
//! The pair state's amplitude tensor, read as a matrix `A` with rows
//! `(x, s₁)` and columns `(y, s₂)`, is exactly the bipartite coefficient
//! matrix: the reduced density matrix of walker 1 is `ρ₁ = A·A†`, its
//! eigenvalues are the squared singular values of `A`, and the von
//! Neumann entropy `E = −Σ λᵢ log₂ λᵢ` measures the entanglement between
//! the walkers in bits.
//!
//! The spectrum is computed from the singular values of `A` directly
//! rather than by forming `ρ₁`, which avoids squaring the condition
//! number; restricting `A` to its exactly-nonzero rows and columns first
//! (the light cone plus the parity structure of the walk) keeps the
//! decomposition small — after `n` steps the matrix is about
//! `2(n+1) × 2(n+1)` instead of `[2(2N+1)]²`.

use crate::error::Result;
use crate::lattice::PairState;
use crate::linalg::{singular_values, CMat};
use crate::num::Real;

/// Eigenvalues `λᵢ` of the reduced density matrix `ρ₁`, descending.
#[derive(Clone, Debug)]
pub struct SchmidtSpectrum<T: Real> {
    lambdas: Vec<T>,
}

impl<T: Real> SchmidtSpectrum<T> {
    /// The eigenvalues, descending; all clamped to `≥ 0`.
    pub fn lambdas(&self) -> &[T] {
        &self.lambdas
    }

    /// `Σ λᵢ` — 1 (within rounding) for a normalized state.
    pub fn sum(&self) -> T {
        self.lambdas.iter().copied().sum()
    }
}

/// The full bipartite coefficient matrix `A[(x,s₁),(y,s₂)] = a_{x s₁ y s₂}`.
pub fn bipartite_matrix<T: Real>(state: &PairState<T>) -> CMat<T> {
    let dim = state.dim();
    CMat::from_fn(dim, dim, |r, c| state.amps()[r * dim + c])
}

/// The bipartite matrix restricted to rows and columns that hold at
/// least one exactly-nonzero amplitude. Dropping all-zero rows/columns
/// leaves the singular values (hence the spectrum and entropy)
/// unchanged, and after `n` steps shrinks the matrix to the occupied
/// light cone.
pub fn compact_bipartite_matrix<T: Real>(state: &PairState<T>) -> CMat<T> {
    let dim = state.dim();
    let amps = state.amps();
    let zero = T::zero();
    let mut row_used = vec![false; dim];
    let mut col_used = vec![false; dim];
    for r in 0..dim {
        for c in 0..dim {
            let a = amps[r * dim + c];
            if a.re != zero || a.im != zero {
                row_used[r] = true;
                col_used[c] = true;
            }
        }
    }
    let rows: Vec<usize> = (0..dim).filter(|&r| row_used[r]).collect();
    let cols: Vec<usize> = (0..dim).filter(|&c| col_used[c]).collect();
    CMat::from_fn(rows.len(), cols.len(), |i, j| amps[rows[i] * dim + cols[j]])
}

/// Schmidt spectrum of a bipartite coefficient matrix: `λᵢ = σᵢ²` for
/// singular values `σᵢ`, descending, clamped to `≥ 0`.
pub fn schmidt_spectrum<T: Real>(a: &CMat<T>) -> Result<SchmidtSpectrum<T>> {
    let sv = singular_values(a)?;
    let lambdas = sv.iter().map(|s| (*s * *s).max(T::zero())).collect();
    Ok(SchmidtSpectrum { lambdas })
}

/// Von Neumann entropy `E = −Σ_{λᵢ > ε} λᵢ log₂ λᵢ` in bits, with the
/// documented cutoff `ε` suppressing `0·log 0` (and the result clamped
/// at zero against `λ` values a rounding error above 1).
pub fn entropy<T: Real>(spectrum: &SchmidtSpectrum<T>) -> T {
    let cutoff = T::spectrum_cutoff();
    let mut e = T::zero();
    for &l in spectrum.lambdas() {
        if l > cutoff {
            e -= l * l.log2();
        }
    }
    e.max(T::zero())
}

/// Entanglement entropy of a pair state, computed through the compact
/// light-cone submatrix.
pub fn entanglement_entropy<T: Real>(state: &PairState<T>) -> Result<T> {
    let a = compact_bipartite_matrix(state);
    Ok(entropy(&schmidt_spectrum(&a)?))
}

/// The logarithmic upper bound `E ≤ 1 + log₂(2n+1)` after `n` steps of
/// an origin-started walk: each one-walker subsystem then spans at most
/// `2(2n+1)` states.
pub fn max_entropy_after<T: Real>(steps: u64) -> T {
    T::one() + T::from_u64(2 * steps + 1).unwrap().log2()
}
