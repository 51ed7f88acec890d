//! Scalar abstraction for the numerical kernels.
//!
//! Every stateful container and every algorithm in this crate is generic
//! over a floating-point scalar [`Real`]. Double precision is the default
//! (the CLI and the presets use `f64` exclusively; the documented
//! tolerances assume it); `f32` is available for quick, low-memory
//! experiments with proportionally looser tolerances.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::float::FloatConst;
use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar usable by the simulator.
///
/// The per-type constants encode how tightly unitarity, normalization, and
/// spectral quantities can be held at that precision.
pub trait Real:
    Float
    + FloatConst
    + NumAssign
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Tolerance for unitarity and normalization checks: a freshly built
    /// coin satisfies `max |C†C - I| <= unit_tol()` and evolution keeps
    /// `| |psi|^2 - 1 | <= unit_tol()` per step.
    fn unit_tol() -> Self;

    /// Schmidt eigenvalues at or below this cutoff are treated as exact
    /// zeros when computing the entropy (`0·log 0 := 0`); rounding-induced
    /// tiny negatives are clamped at the negative of this value.
    fn spectrum_cutoff() -> Self;

    /// Joint-probability cells at or below this value are omitted from
    /// sparse snapshot files.
    fn snapshot_threshold() -> Self;

    /// Lossy conversion from an `f64` literal; panics only on values that
    /// cannot be represented at all (never for finite constants).
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 literal must convert")
    }

    /// Widen to `f64` for error reporting.
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar must widen to f64")
    }
}

impl Real for f64 {
    fn unit_tol() -> Self {
        1e-12
    }
    fn spectrum_cutoff() -> Self {
        1e-12
    }
    fn snapshot_threshold() -> Self {
        1e-15
    }
}

impl Real for f32 {
    fn unit_tol() -> Self {
        1e-5
    }
    fn spectrum_cutoff() -> Self {
        1e-6
    }
    fn snapshot_threshold() -> Self {
        1e-7
    }
}

/// Complex probability amplitude over the scalar `T`.
pub type Amp<T> = Complex<T>;

/// `exp(i·phi)` as an amplitude.
#[inline]
pub fn cis<T: Real>(phi: T) -> Amp<T> {
    let (s, c) = phi.sin_cos();
    Complex::new(c, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_convert_exactly_for_f64() {
        assert_eq!(f64::lit(0.25), 0.25);
        assert_eq!(f32::lit(0.25), 0.25f32);
    }

    #[test]
    fn cis_hits_the_axes() {
        let z: Amp<f64> = cis(0.0);
        assert_eq!(z, Complex::new(1.0, 0.0));
        let z = cis(std::f64::consts::FRAC_PI_2);
        assert!((z.re).abs() < 1e-15 && (z.im - 1.0).abs() < 1e-15);
    }

    #[test]
    fn tolerances_are_ordered_by_precision() {
        assert!(f64::unit_tol() < f32::unit_tol() as f64);
        assert!(f64::snapshot_threshold() < f64::spectrum_cutoff());
    }
}
