//! Fock eigenfunctions in the quadrature coordinate, full wave functions
//! with their phases, and two-state superposition densities.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::phases::{self, PhaseState};
use crate::timebase::ModeParams;

/// Largest supported Fock index.
pub const N_MAX: u32 = 50;

/// Tolerance on the superposition weight normalization.
pub const WEIGHT_TOL: f64 = 1e-12;

/// ħ and the medium permittivity constant ε.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumConstants {
    pub hbar: f64,
    pub epsilon: f64,
}

impl QuantumConstants {
    pub fn new(hbar: f64, epsilon: f64) -> Result<Self> {
        if !(hbar > 0.0) {
            return Err(Error::NonPositiveConstant { name: "hbar", value: hbar });
        }
        if !(epsilon > 0.0) {
            return Err(Error::NonPositiveConstant { name: "epsilon", value: epsilon });
        }
        Ok(Self { hbar, epsilon })
    }

    /// ħ = ε = 1, the setting of all published figures.
    pub fn unity() -> Self {
        Self { hbar: 1.0, epsilon: 1.0 }
    }
}

/// Gaussian width parameters ζ(t) = εω/(ħ f) and ζ′(t) = ζ − iεḟ/(2ħf).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WidthParams {
    pub zeta: f64,
    pub zeta_prime: Complex64,
}

pub fn width_params(mode: &ModeParams, consts: &QuantumConstants, t: f64) -> Result<WidthParams> {
    if t < mode.t0 {
        return Err(Error::TimeBeforeReference { t, t0: mode.t0 });
    }
    let f = mode.eval_f(t);
    let fdot = mode.eval_fdot(t);
    let zeta = consts.epsilon * mode.omega / (consts.hbar * f);
    let im = -consts.epsilon * fdot / (2.0 * consts.hbar * f);
    Ok(WidthParams { zeta, zeta_prime: Complex64::new(zeta, im) })
}

/// Physicists' Hermite polynomial H_n(x) by the three-term recurrence.
pub fn hermite(n: u32, x: f64) -> Result<f64> {
    if n > N_MAX {
        return Err(Error::IndexTooLarge { n, max: N_MAX });
    }
    if n == 0 {
        return Ok(1.0);
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// H_n(x)/√(2ⁿ n!) with the normalization folded into the recurrence, so
/// large n stays inside f64 range.
fn hermite_normalized(n: u32, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = std::f64::consts::SQRT_2 * x;
    for k in 1..n {
        let kf = k as f64;
        let next = x * (2.0 / (kf + 1.0)).sqrt() * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Eigenfunction ⟨q|φ_n⟩ = (ζ/π)^{1/4} (2ⁿn!)^{−1/2} H_n(√ζ q) e^{−ζ′q²/2}.
pub fn eigenfunction(
    n: u32,
    q: f64,
    mode: &ModeParams,
    consts: &QuantumConstants,
    t: f64,
) -> Result<Complex64> {
    if n > N_MAX {
        return Err(Error::IndexTooLarge { n, max: N_MAX });
    }
    let wp = width_params(mode, consts, t)?;
    let h = hermite_normalized(n, wp.zeta.sqrt() * q);
    let prefactor = (wp.zeta / PI).powf(0.25);
    let gauss = (-wp.zeta_prime * (0.5 * q * q)).exp();
    Ok(prefactor * h * gauss)
}

/// Full wave function ⟨q|ψ_n⟩ = ⟨q|φ_n⟩ e^{iγ_n(t)} with n taken from `state`.
pub fn wavefunction(
    q: f64,
    mode: &ModeParams,
    consts: &QuantumConstants,
    state: &PhaseState,
    t: f64,
) -> Result<Complex64> {
    let phi = eigenfunction(state.n, q, mode, consts, t)?;
    let gamma = phases::total_phase(mode, state, t)?;
    Ok(phi * Complex64::from_polar(1.0, gamma))
}

/// Two-state superposition β_n|ψ_n⟩ + β_m|ψ_m⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperpositionSpec {
    pub n: u32,
    pub m: u32,
    pub beta_n: Complex64,
    pub beta_m: Complex64,
}

impl SuperpositionSpec {
    pub fn new(n: u32, m: u32, beta_n: Complex64, beta_m: Complex64) -> Result<Self> {
        if n == m {
            return Err(Error::DuplicateFockIndex(n));
        }
        let norm = beta_n.norm_sqr() + beta_m.norm_sqr();
        if (norm - 1.0).abs() > WEIGHT_TOL {
            return Err(Error::WeightNormalizationViolated { norm });
        }
        Ok(Self { n, m, beta_n, beta_m })
    }

    /// The published weights β_n = 1/√2, β_m = (1+i)/2 for (n, m) = (5, 8).
    pub fn reference_weights() -> Self {
        Self {
            n: 5,
            m: 8,
            beta_n: Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            beta_m: Complex64::new(0.5, 0.5),
        }
    }
}

/// Probability density of the superposition at (q, t).
///
/// Returns `(total, cross)` where
/// total = |β_nψ_n|² + |β_mψ_m|² + cross and
/// cross = 2 Re[β_n* β_m ψ_n* ψ_m].
pub fn superposition_density(
    spec: &SuperpositionSpec,
    q: f64,
    mode: &ModeParams,
    consts: &QuantumConstants,
    states: (&PhaseState, &PhaseState),
    t: f64,
) -> Result<(f64, f64)> {
    let norm = spec.beta_n.norm_sqr() + spec.beta_m.norm_sqr();
    if (norm - 1.0).abs() > WEIGHT_TOL {
        return Err(Error::WeightNormalizationViolated { norm });
    }
    debug_assert_eq!(states.0.n, spec.n);
    debug_assert_eq!(states.1.n, spec.m);
    let psi_n = wavefunction(q, mode, consts, states.0, t)?;
    let psi_m = wavefunction(q, mode, consts, states.1, t)?;
    let cross = 2.0 * (spec.beta_n.conj() * spec.beta_m * psi_n.conj() * psi_m).re;
    let total = (spec.beta_n * psi_n).norm_sqr() + (spec.beta_m * psi_m).norm_sqr() + cross;
    Ok((total, cross))
}

/// Integration half-width covering the classically allowed region plus tails
/// for index n at width ζ.
pub fn quadrature_halfwidth(n: u32, zeta: f64) -> f64 {
    6.0 * ((2.0 * n as f64 + 1.0) / zeta).sqrt() + 2.0 / zeta.sqrt()
}
