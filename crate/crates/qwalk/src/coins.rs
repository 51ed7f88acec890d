//! Time-dependent coin operators, their two-particle (4×4) assembly, and
//! the same-site interaction substitution.
//!
//! Time convention: the `k`-th step of a walk (`k = 1, 2, …`) applies the
//! coin evaluated at `t = k − 1`, so the first step of every family is an
//! exact Hadamard for `Alpha` (any α) and for `Phi` (phase 0).

use num_complex::Complex;

use crate::num::{cis, Amp, Real};

/// Declarative description of a (possibly time-dependent) coin family.
#[derive(Clone, Debug, PartialEq)]
pub enum CoinSpec<T: Real> {
    /// The constant balanced coin `(1/√2)[[1, 1], [1, −1]]`.
    Hadamard,
    /// Constant rotation with two relative phases:
    /// `[[cosθ, e^{iφ₁}·sinθ], [e^{iφ₂}·sinθ, −e^{i(φ₁+φ₂)}·cosθ]]`.
    General { theta: T, phi1: T, phi2: T },
    /// Real symmetric coin `[[cosθ(t), sinθ(t)], [sinθ(t), −cosθ(t)]]`
    /// with `cosθ(t) = (1/√2)·(τ/(t+τ))^α` and the positive branch
    /// `sinθ = +√(1−cos²θ)`. `α = 0` is the Hadamard coin at every step;
    /// larger `α` bends the walk from ballistic through diffusive to
    /// localized spreading. `tau >= 1`.
    Alpha { alpha: T, tau: u32 },
    /// Phase-modulated Hadamard
    /// `(1/√2)[[e^{−iΦ}, e^{−iΦ}], [e^{iΦ}, −e^{iΦ}]]` with
    /// `Φ(t) = 2π·(q/p)·t`; exactly periodic in `t` with period `p`.
    /// `q/p` is stored as given (no gcd reduction). `p >= 1`.
    Phi { q: u32, p: u32 },
}

impl<T: Real> CoinSpec<T> {
    /// Canonical textual token, matching the CLI / config-file grammar.
    pub fn token(&self) -> String {
        match self {
            CoinSpec::Hadamard => "hadamard".to_string(),
            CoinSpec::General { theta, phi1, phi2 } => {
                format!("general:{theta}:{phi1}:{phi2}")
            }
            CoinSpec::Alpha { alpha, tau } => format!("alpha:{alpha}:{tau}"),
            CoinSpec::Phi { q, p } => format!("phi:{q}/{p}"),
        }
    }
}

/// A realized 2×2 coin at a fixed step, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoinMatrix<T: Real>(pub [[Amp<T>; 2]; 2]);

impl<T: Real> CoinMatrix<T> {
    #[inline]
    pub fn at(&self, r: usize, c: usize) -> Amp<T> {
        self.0[r][c]
    }

    /// Largest elementwise deviation of `C†C` from the identity.
    pub fn unitarity_defect(&self) -> T {
        let m = &self.0;
        let mut worst = T::zero();
        for r in 0..2 {
            for c in 0..2 {
                let mut g = Complex::new(T::zero(), T::zero());
                for row in m {
                    g += row[r].conj() * row[c];
                }
                let expect = if r == c { T::one() } else { T::zero() };
                let dev = (g - Complex::new(expect, T::zero())).norm();
                if dev > worst {
                    worst = dev;
                }
            }
        }
        worst
    }
}

/// Realize the 2×2 coin of `spec` at dimensionless time `t` (the step
/// about to be applied; the `k`-th step uses `t = k − 1`).
pub fn coin_at<T: Real>(spec: &CoinSpec<T>, t: u64) -> CoinMatrix<T> {
    let zero = T::zero();
    match spec {
        CoinSpec::Hadamard => {
            let h = T::FRAC_1_SQRT_2();
            CoinMatrix([
                [Complex::new(h, zero), Complex::new(h, zero)],
                [Complex::new(h, zero), Complex::new(-h, zero)],
            ])
        }
        CoinSpec::General { theta, phi1, phi2 } => {
            let (sin, cos) = theta.sin_cos();
            CoinMatrix([
                [Complex::new(cos, zero), cis(*phi1) * sin],
                [cis(*phi2) * sin, -cis(*phi1 + *phi2) * cos],
            ])
        }
        CoinSpec::Alpha { alpha, tau } => {
            debug_assert!(*tau >= 1, "Alpha coin requires tau >= 1");
            let tau_t = T::from_u32(*tau).unwrap();
            let ratio = tau_t / (T::from_u64(t).unwrap() + tau_t);
            let cos = T::FRAC_1_SQRT_2() * ratio.powf(*alpha);
            let sin = (T::one() - cos * cos).sqrt();
            CoinMatrix([
                [Complex::new(cos, zero), Complex::new(sin, zero)],
                [Complex::new(sin, zero), Complex::new(-cos, zero)],
            ])
        }
        CoinSpec::Phi { q, p } => {
            debug_assert!(*p >= 1, "Phi coin requires p >= 1");
            // Reduce t modulo the period and the phase modulo 2π before
            // exponentiating, so periodicity is exact and no precision is
            // lost at large t.
            let p64 = u64::from(*p);
            let cycles = (u64::from(*q) * (t % p64)) % p64;
            let phi = T::TAU() * T::from_u64(cycles).unwrap() / T::from_u64(p64).unwrap();
            let h = T::FRAC_1_SQRT_2();
            let em = cis(-phi) * h;
            let ep = cis(phi) * h;
            CoinMatrix([[em, em], [ep, -ep]])
        }
    }
}

/// Which 4×4 operator replaces the product coin when the walkers share a
/// site (`x = y`, evaluated before the coin is applied).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InteractionRule {
    /// No substitution anywhere.
    None,
    /// Same-site cells get exactly the 4×4 identity
    /// (`(−𝟙)⊗(−𝟙) = 𝟙`): co-located walkers keep their spins and are
    /// translated together.
    IdentityOne,
    /// Same-site cells get `e^{iπ}·(C₁⊗C₂) = −(C₁⊗C₂)`.
    PiPhase,
}

impl InteractionRule {
    pub fn token(&self) -> &'static str {
        match self {
            InteractionRule::None => "none",
            InteractionRule::IdentityOne => "identity",
            InteractionRule::PiPhase => "pi-phase",
        }
    }
}

/// Coin assignment for a two-walker step: `coin1` drives particle 1
/// (the `x, s1` labels), `coin2` drives particle 2 (`y, s2`).
#[derive(Clone, Debug, PartialEq)]
pub struct PairCoinSpec<T: Real> {
    pub coin1: CoinSpec<T>,
    pub coin2: CoinSpec<T>,
    pub interaction: InteractionRule,
}

/// A realized 4×4 pair coin, row-major over the basis
/// `(↑↑, ↓↑, ↑↓, ↓↓)` — first arrow is particle 1's spin, so the flat
/// index is `m = s1 + 2·s2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairCoinMatrix<T: Real>(pub [[Amp<T>; 4]; 4]);

impl<T: Real> PairCoinMatrix<T> {
    #[inline]
    pub fn at(&self, r: usize, c: usize) -> Amp<T> {
        self.0[r][c]
    }

    /// Largest elementwise deviation of `M†M` from the identity.
    pub fn unitarity_defect(&self) -> T {
        let m = &self.0;
        let mut worst = T::zero();
        for r in 0..4 {
            for c in 0..4 {
                let mut g = Complex::new(T::zero(), T::zero());
                for row in m {
                    g += row[r].conj() * row[c];
                }
                let expect = if r == c { T::one() } else { T::zero() };
                let dev = (g - Complex::new(expect, T::zero())).norm();
                if dev > worst {
                    worst = dev;
                }
            }
        }
        worst
    }
}

/// Realize the 4×4 pair coin at time `t` for a cell with `same_site =
/// (x == y)` (positions before the coin is applied).
pub fn pair_coin_at<T: Real>(
    spec: &PairCoinSpec<T>,
    t: u64,
    same_site: bool,
) -> PairCoinMatrix<T> {
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    if same_site && spec.interaction == InteractionRule::IdentityOne {
        let mut m = [[zero; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = one;
        }
        return PairCoinMatrix(m);
    }
    let c1 = coin_at(&spec.coin1, t);
    let c2 = coin_at(&spec.coin2, t);
    let negate = same_site && spec.interaction == InteractionRule::PiPhase;
    let mut m = [[zero; 4]; 4];
    for s1_out in 0..2 {
        for s2_out in 0..2 {
            for s1_in in 0..2 {
                for s2_in in 0..2 {
                    let mut v = c1.at(s1_out, s1_in) * c2.at(s2_out, s2_in);
                    if negate {
                        v = -v;
                    }
                    m[s1_out + 2 * s2_out][s1_in + 2 * s2_in] = v;
                }
            }
        }
    }
    PairCoinMatrix(m)
}
