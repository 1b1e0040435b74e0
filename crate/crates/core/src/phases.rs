//! Total Fock-state phase and its dynamical/geometric decomposition.

use crate::error::Result;
use crate::timebase::ModeParams;

/// Fock index plus the initial phase constants at t0.
///
/// The total offset is always the sum of the dynamical and geometric offsets,
/// enforced by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseState {
    pub n: u32,
    pub gamma0: f64,
    pub gamma_d0: f64,
    pub gamma_g0: f64,
}

impl PhaseState {
    pub fn new(n: u32, gamma_d0: f64, gamma_g0: f64) -> Self {
        Self { n, gamma0: gamma_d0 + gamma_g0, gamma_d0, gamma_g0 }
    }

    /// Zero initial-phase constants, matching the published curves.
    pub fn zero(n: u32) -> Self {
        Self::new(n, 0.0, 0.0)
    }

    #[inline]
    fn n_half(&self) -> f64 {
        self.n as f64 + 0.5
    }
}

/// γ_n(t) = −(n + 1/2)·ω·T(t) + γ_n(t0).
pub fn total_phase(mode: &ModeParams, state: &PhaseState, t: f64) -> Result<f64> {
    let big_t = mode.big_t(t)?;
    Ok(-state.n_half() * mode.omega * big_t + state.gamma0)
}

/// γ_{D,n}(t) = −(1/2)(n + 1/2)(c1 + c2)·ω·(t − t0) + γ_{D,n}(t0).
pub fn dynamical_phase(mode: &ModeParams, state: &PhaseState, t: f64) -> Result<f64> {
    if t < mode.t0 {
        return Err(crate::error::Error::TimeBeforeReference { t, t0: mode.t0 });
    }
    Ok(-0.5 * state.n_half() * (mode.c1 + mode.c2) * mode.omega * (t - mode.t0) + state.gamma_d0)
}

/// γ_{G,n}(t) = (1/2)(n + 1/2){(c1 + c2)·ω·(t − t0) − 2ωT(t)} + γ_{G,n}(t0).
pub fn geometric_phase(mode: &ModeParams, state: &PhaseState, t: f64) -> Result<f64> {
    let big_t = mode.big_t(t)?;
    Ok(0.5
        * state.n_half()
        * ((mode.c1 + mode.c2) * mode.omega * (t - mode.t0) - 2.0 * mode.omega * big_t)
        + state.gamma_g0)
}

/// dγ_{G,n}/dt = (1/2)(n + 1/2)·ω·[(c1 + c2) − 2/f(t)], the analytic
/// derivative of the geometric phase.
pub fn geometric_phase_rate(mode: &ModeParams, state: &PhaseState, t: f64) -> Result<f64> {
    if t < mode.t0 {
        return Err(crate::error::Error::TimeBeforeReference { t, t0: mode.t0 });
    }
    Ok(0.5 * state.n_half() * mode.omega * ((mode.c1 + mode.c2) - 2.0 / mode.eval_f(t)))
}
