//! Minimal dense complex linear algebra.
//!
//! The simulator needs exactly one nontrivial decomposition: the singular
//! values of a general complex matrix (the Schmidt coefficients of a
//! bipartite state). They are computed here from scratch in two classical
//! stages so the crate carries no heavy linear-algebra dependency:
//!
//! 1. Householder bidiagonalization with Hermitian reflectors
//!    `H = I - c·w·w†`. Phase freedom lets the resulting bidiagonal be
//!    taken entrywise non-negative without changing singular values.
//! 2. The squared singular values are the eigenvalues of the symmetric
//!    tridiagonal `B†B` (diagonal `dᵢ² + fᵢ₋₁²`, couplings `dᵢ·fᵢ`),
//!    solved by an implicit-shift QL iteration.
//!
//! Squaring halves the attainable *relative* accuracy of the smallest
//! singular values, which is irrelevant downstream: the entanglement
//! module consumes the λ = σ² spectrum to an absolute cutoff. Absolute
//! accuracy is ~machine epsilon times the squared matrix norm, far inside
//! the 1e-9 needed there (cross-checked in tests against an independent
//! implementation). The alternative zero-diagonal Golub–Kahan embedding
//! is avoided deliberately — its ±σ eigenvalue pairing makes the shifted
//! QL iteration oscillate and stall on low-rank and clustered spectra.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::num::{Amp, Real};

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMat<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> CMat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat {
            rows,
            cols,
            data: vec![Complex::new(T::zero(), T::zero()); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Amp<T>) -> Self {
        let mut m = CMat::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.data[r * cols + c] = f(r, c);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> Amp<T> {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Amp<T>) {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c] = v;
    }

    pub fn data(&self) -> &[Amp<T>] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Amp<T>] {
        &mut self.data
    }

    pub fn fill_zero(&mut self) {
        let z = Complex::new(T::zero(), T::zero());
        self.data.fill(z);
    }

    pub fn transposed(&self) -> Self {
        CMat::from_fn(self.cols, self.rows, |r, c| self.at(c, r))
    }

    pub fn conj_transposed(&self) -> Self {
        CMat::from_fn(self.cols, self.rows, |r, c| self.at(c, r).conj())
    }

    /// `self · v` for a vector of length `cols`.
    pub fn mul_vec(&self, v: &[Amp<T>]) -> Vec<Amp<T>> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![Complex::new(T::zero(), T::zero()); self.rows];
        for (r, o) in out.iter_mut().enumerate() {
            let row = &self.data[r * self.cols..(r + 1) * self.cols];
            let mut acc = Complex::new(T::zero(), T::zero());
            for (a, x) in row.iter().zip(v) {
                acc += a * x;
            }
            *o = acc;
        }
        out
    }

    /// Dense product `self · other` (test-sized matrices only).
    pub fn mul(&self, other: &CMat<T>) -> CMat<T> {
        assert_eq!(self.cols, other.rows);
        let mut out = CMat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.norm_sqr() == T::zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.at(r, c) + a * other.at(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// Largest elementwise deviation of `self†·self` from the identity.
    pub fn unitarity_defect(&self) -> T {
        let gram = self.conj_transposed().mul(self);
        let mut worst = T::zero();
        for r in 0..gram.rows {
            for c in 0..gram.cols {
                let expect = if r == c { T::one() } else { T::zero() };
                let dev = (gram.at(r, c) - Complex::new(expect, T::zero())).norm();
                if dev > worst {
                    worst = dev;
                }
            }
        }
        worst
    }
}

/// Singular values of `a`, sorted descending. The decomposition itself is
/// not formed; only the spectrum is returned.
pub fn singular_values<T: Real>(a: &CMat<T>) -> Result<Vec<T>> {
    if a.rows == 0 || a.cols == 0 {
        return Ok(Vec::new());
    }
    // Work on a tall copy: bidiagonalization assumes rows >= cols, and
    // transposition leaves singular values unchanged.
    let mut work = if a.rows >= a.cols {
        a.clone()
    } else {
        a.transposed()
    };
    let (d, f) = bidiagonalize(&mut work);
    bidiagonal_singular_values(&d, &f)
}

/// Reduce a tall matrix (rows >= cols) to upper-bidiagonal form by
/// alternating left/right Hermitian Householder reflections. Returns the
/// non-negative diagonal `d` (len `cols`) and superdiagonal `f`
/// (len `cols - 1`); the matrix contents are destroyed.
fn bidiagonalize<T: Real>(a: &mut CMat<T>) -> (Vec<T>, Vec<T>) {
    let (m, n) = (a.rows, a.cols);
    debug_assert!(m >= n);
    let zero = Complex::new(T::zero(), T::zero());
    let mut d = vec![T::zero(); n];
    let mut f = vec![T::zero(); n.saturating_sub(1)];
    let mut w: Vec<Amp<T>> = vec![zero; m];

    for k in 0..n {
        // Left reflector: zero column k below row k. H·x = beta·e1 with
        // |beta| = ||x||, w = x - beta·e1, beta phased so w†x is real.
        // The column is pre-scaled by its L1 magnitude before squaring:
        // without this, columns whose entries sit near the underflow
        // threshold square to zero (or give 2/||w||² = inf) and inject
        // NaNs into the trailing submatrix. The reflector H = I - c·ww†
        // is invariant under a common rescaling of w, so applying it with
        // scaled w and the matching c is exact.
        let mut scale = T::zero();
        for i in k..m {
            let v = a.at(i, k);
            scale = scale + v.re.abs() + v.im.abs();
        }
        if scale > T::zero() {
            let mut norm2 = T::zero();
            for i in k..m {
                let v = a.at(i, k) / scale;
                w[i - k] = v;
                norm2 += v.norm_sqr();
            }
            let norm_x = norm2.sqrt();
            d[k] = scale * norm_x;
            let x0 = w[0];
            let x0n = x0.norm();
            let phase = if x0n > T::zero() {
                x0 / x0n
            } else {
                Complex::new(T::one(), T::zero())
            };
            w[0] = x0 + phase * norm_x;
            // ||w||² = 2·||x||·(||x|| + |x0|), all terms non-negative.
            let wnorm2 = T::lit(2.0) * norm_x * (norm_x + x0n);
            if wnorm2 > T::zero() {
                let c = T::lit(2.0) / wnorm2;
                for j in k + 1..n {
                    // s = w† · A[k.., j]
                    let mut s = zero;
                    for i in k..m {
                        s += w[i - k].conj() * a.at(i, j);
                    }
                    let cs = s * c;
                    for i in k..m {
                        let v = a.at(i, j) - w[i - k] * cs;
                        a.set(i, j, v);
                    }
                }
            }
        }

        // Right reflector: zero row k beyond column k+1. Acting on columns
        // from the right with the reflector built from u = conj(row) sends
        // the row to (conj(beta), 0, …). With a single entry to the right
        // of the diagonal there is nothing to zero; its modulus is the
        // superdiagonal value directly. Same L1 pre-scaling as above.
        if k + 1 < n {
            let mut scale = T::zero();
            for j in k + 1..n {
                let v = a.at(k, j);
                scale = scale + v.re.abs() + v.im.abs();
            }
            if scale > T::zero() {
                let mut norm2 = T::zero();
                for j in k + 1..n {
                    let v = (a.at(k, j) / scale).conj();
                    w[j - (k + 1)] = v;
                    norm2 += v.norm_sqr();
                }
                let norm_x = norm2.sqrt();
                f[k] = scale * norm_x;
                if k + 2 < n {
                    let u0 = w[0];
                    let u0n = u0.norm();
                    let phase = if u0n > T::zero() {
                        u0 / u0n
                    } else {
                        Complex::new(T::one(), T::zero())
                    };
                    w[0] = u0 + phase * norm_x;
                    let wnorm2 = T::lit(2.0) * norm_x * (norm_x + u0n);
                    if wnorm2 > T::zero() {
                        let c = T::lit(2.0) / wnorm2;
                        for i in k + 1..m {
                            // s = A[i, k+1..] · w
                            let mut s = zero;
                            for j in k + 1..n {
                                s += a.at(i, j) * w[j - (k + 1)];
                            }
                            let cs = s * c;
                            for j in k + 1..n {
                                let v = a.at(i, j) - cs * w[j - (k + 1)].conj();
                                a.set(i, j, v);
                            }
                        }
                    }
                }
            }
        }
    }
    (d, f)
}

/// Singular values of the non-negative real bidiagonal matrix `(d, f)`,
/// descending.
fn bidiagonal_singular_values<T: Real>(d: &[T], f: &[T]) -> Result<Vec<T>> {
    let n = d.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    debug_assert_eq!(f.len(), n - 1);
    // Normal-equations tridiagonal J = B†B, whose eigenvalues are the
    // squared singular values. Column i of B holds d[i] on the diagonal
    // and f[i-1] above it.
    let mut diag = vec![T::zero(); n];
    let mut off = vec![T::zero(); n];
    for i in 0..n {
        let mut v = d[i] * d[i];
        if i > 0 {
            v += f[i - 1] * f[i - 1];
        }
        diag[i] = v;
        if i + 1 < n {
            off[i] = d[i] * f[i];
        }
    }
    tridiagonal_eigenvalues(&mut diag, &mut off)?;
    // Tiny negatives from rounding around zero are clamped before the
    // square root.
    let mut sv: Vec<T> = diag
        .into_iter()
        .map(|l| l.max(T::zero()).sqrt())
        .collect();
    sv.sort_by(|a, b| b.partial_cmp(a).expect("singular values are finite"));
    Ok(sv)
}

const MAX_QL_ITERATIONS: usize = 40;

/// Eigenvalues of a symmetric tridiagonal matrix by the implicit-shift QL
/// iteration, in place: `d` holds the diagonal and receives the
/// (unsorted) eigenvalues; `e[i]` couples rows `i` and `i+1` (`e[n-1]`
/// is workspace).
fn tridiagonal_eigenvalues<T: Real>(d: &mut [T], e: &mut [T]) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    debug_assert_eq!(e.len(), n);
    e[n - 1] = T::zero();
    let two = T::lit(2.0);

    // Absolute deflation floor. A coupling below epsilon times the matrix
    // norm moves eigenvalues by at most that much, so it can be treated as
    // an exact split. The relative test alone never fires while the local
    // diagonal entries sit at zero — the generic situation here, because
    // the Golub-Kahan embedding has an identically zero diagonal — which
    // would otherwise stall low-rank inputs.
    let mut anorm = T::zero();
    for i in 0..n {
        let mut row = d[i].abs() + e[i].abs();
        if i > 0 {
            row += e[i - 1].abs();
        }
        anorm = anorm.max(row);
    }
    let floor = T::epsilon() * anorm;

    for l in 0..n {
        let mut iter = 0usize;
        loop {
            // Find the end of the unreduced block starting at l: the first
            // negligible coupling splits the matrix.
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= T::epsilon() * dd + floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITERATIONS {
                return Err(Error::SpectralNonConvergence {
                    block: l,
                    size: n,
                    iterations: MAX_QL_ITERATIONS,
                });
            }
            // Wilkinson-style shift from the leading 2x2.
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            let sign_r_g = if g >= T::zero() { r } else { -r };
            g = d[m] - d[l] + e[l] / (g + sign_r_g);
            let mut s = T::one();
            let mut c = T::one();
            let mut p = T::zero();
            let mut early_split = false;
            for i in (l..m).rev() {
                let fv = s * e[i];
                let b = c * e[i];
                r = fv.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    // Underflowed rotation: deflate and restart this block.
                    d[i + 1] -= p;
                    e[m] = T::zero();
                    early_split = true;
                    break;
                }
                s = fv / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if early_split {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    Ok(())
}
