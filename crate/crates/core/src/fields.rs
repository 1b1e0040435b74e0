//! Coherent eigenvalue, vector potential, and electromagnetic fields of a
//! single-mode nonstatic wave, plus two-frequency interference.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::timebase::ModeParams;
use crate::wavefunctions::QuantumConstants;

/// Coherent-field constants: phase θ, amplitude α₀, wavenumber k, volume V.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldParams {
    pub theta: f64,
    pub alpha0: f64,
    pub k: f64,
    pub volume: f64,
}

impl FieldParams {
    pub fn new(theta: f64, alpha0: f64, k: f64, volume: f64) -> Result<Self> {
        if alpha0 < 0.0 {
            return Err(Error::NonPositiveConstant { name: "alpha0", value: alpha0 });
        }
        if !(k > 0.0) {
            return Err(Error::NonPositiveConstant { name: "k", value: k });
        }
        if !(volume > 0.0) {
            return Err(Error::NonPositiveConstant { name: "volume", value: volume });
        }
        Ok(Self { theta, alpha0, k, volume })
    }

    /// θ = 0, α₀ = k = V = 1, the setting of the published figures.
    pub fn unity() -> Self {
        Self { theta: 0.0, alpha0: 1.0, k: 1.0, volume: 1.0 }
    }
}

/// All field quantities at one (x, t) point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample {
    pub t: f64,
    pub x: f64,
    /// Amplitude 𝒜(t) = √(2ħf/(εVω))·α₀ of the vector potential.
    pub big_a: f64,
    /// Amplitude ℰ(t) = ω√(1+z²)·𝒜/f of the electric field.
    pub amp_e: f64,
    /// Amplitude ℬ(t) = −𝒜k of the magnetic field.
    pub amp_b: f64,
    /// Phase shift δ = atan_xy(−z, 1) ∈ (0, π).
    pub delta: f64,
    /// Phase kx − Θ(t) − θ + δ of the electric field.
    pub phase_e: f64,
    pub a: f64,
    pub e: f64,
    pub b: f64,
}

/// The unique μ ∈ [0, 2π) with cos μ ∝ x and sin μ ∝ y.
pub fn atan_xy(x: f64, y: f64) -> Result<f64> {
    if x == 0.0 && y == 0.0 {
        return Err(Error::UndefinedAngle);
    }
    Ok(y.atan2(x).rem_euclid(TAU))
}

/// Coherent eigenvalue α(t) = α₀·e^{−i[ωT(t) + θ]}.
pub fn coherent_eigenvalue(mode: &ModeParams, fp: &FieldParams, t: f64) -> Result<Complex64> {
    let theta_t = mode.eval_theta(t)?; // ωT(t)
    Ok(Complex64::from_polar(fp.alpha0, -(theta_t + fp.theta)))
}

/// Evaluate every field quantity at (x, t).
pub fn field_sample(
    mode: &ModeParams,
    consts: &QuantumConstants,
    fp: &FieldParams,
    x: f64,
    t: f64,
) -> Result<FieldSample> {
    let s = mode.sample(t)?;
    let big_a =
        (2.0 * consts.hbar * s.f / (consts.epsilon * fp.volume * mode.omega)).sqrt() * fp.alpha0;
    let amp_e = mode.omega * (1.0 + s.z * s.z).sqrt() * big_a / s.f;
    let amp_b = -big_a * fp.k;
    let delta = atan_xy(-s.z, 1.0).expect("second component is 1");
    let xi = fp.k * x - s.theta - fp.theta;
    Ok(FieldSample {
        t,
        x,
        big_a,
        amp_e,
        amp_b,
        delta,
        phase_e: xi + delta,
        a: big_a * xi.cos(),
        e: amp_e * (xi + delta).cos(),
        b: amp_b * xi.sin(),
    })
}

/// A(x, t) = 𝒜(t)·cos(kx − Θ(t) − θ).
pub fn vector_potential(
    x: f64,
    t: f64,
    mode: &ModeParams,
    consts: &QuantumConstants,
    fp: &FieldParams,
) -> Result<f64> {
    Ok(field_sample(mode, consts, fp, x, t)?.a)
}

/// E(x, t) = ℰ(t)·cos(kx − Θ(t) − θ + δ).
pub fn electric_field(
    x: f64,
    t: f64,
    mode: &ModeParams,
    consts: &QuantumConstants,
    fp: &FieldParams,
) -> Result<f64> {
    Ok(field_sample(mode, consts, fp, x, t)?.e)
}

/// B(x, t) = ℬ(t)·sin(kx − Θ(t) − θ) with ℬ = −𝒜k.
pub fn magnetic_field(
    x: f64,
    t: f64,
    mode: &ModeParams,
    consts: &QuantumConstants,
    fp: &FieldParams,
) -> Result<f64> {
    Ok(field_sample(mode, consts, fp, x, t)?.b)
}

/// E_tot(x, t) = E_I(x, t) + E_II(x, t) for two modes that share everything
/// but their frequency.
pub fn interference_field(
    x: f64,
    t: f64,
    mode_i: &ModeParams,
    mode_ii: &ModeParams,
    consts: &QuantumConstants,
    fp: &FieldParams,
) -> Result<f64> {
    Ok(electric_field(x, t, mode_i, consts, fp)?
        + electric_field(x, t, mode_ii, consts, fp)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::timebase::C3Sign;
    use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

    fn unity() -> (ModeParams, QuantumConstants, FieldParams) {
        (ModeParams::static_mode(), QuantumConstants::unity(), FieldParams::unity())
    }

    #[test]
    fn atan_xy_quadrants() {
        assert_eq!(atan_xy(1.0, 0.0).unwrap(), 0.0);
        assert!((atan_xy(0.0, 1.0).unwrap() - FRAC_PI_2).abs() < 1e-15);
        assert!((atan_xy(-1.0, -1.0).unwrap() - 5.0 * PI / 4.0).abs() < 1e-15);
        assert!(matches!(atan_xy(0.0, 0.0), Err(Error::UndefinedAngle)));
        // range check on a sweep
        for i in 0..64 {
            let a = i as f64 * TAU / 64.0;
            let mu = atan_xy(a.cos(), a.sin()).unwrap();
            assert!((0.0..TAU).contains(&mu));
        }
    }

    #[test]
    fn coherent_eigenvalue_modulus_and_reference_value() {
        let p = ModeParams::with_sign(1.0, 1.5, 1.5, C3Sign::Plus, 0.0, 0.0).unwrap();
        let fp = FieldParams { theta: 0.7, alpha0: 2.0, k: 1.0, volume: 1.0 };
        let at_t0 = coherent_eigenvalue(&p, &fp, 0.0).unwrap();
        assert!((at_t0 - Complex64::from_polar(2.0, -0.7)).norm() < 1e-14);
        for i in 0..40 {
            let t = 0.37 * i as f64;
            assert!((coherent_eigenvalue(&p, &fp, t).unwrap().norm() - 2.0).abs() < 1e-12);
        }
        // static, theta = 0: arg alpha = -omega(t - t0) mod 2pi
        let p = ModeParams::static_mode();
        let fp = FieldParams::unity();
        for t in [0.3, 1.9, 5.0] {
            let arg = coherent_eigenvalue(&p, &fp, t).unwrap().arg().rem_euclid(TAU);
            assert!((arg - (-t).rem_euclid(TAU)).abs() < 1e-12);
        }
    }

    #[test]
    fn static_all_unity_values() {
        let (p, c, fp) = unity();
        assert!((vector_potential(0.0, 0.0, &p, &c, &fp).unwrap() - SQRT_2).abs() < 1e-14);
        assert!(electric_field(0.0, 0.0, &p, &c, &fp).unwrap().abs() < 1e-14);
        assert!(magnetic_field(0.0, 0.0, &p, &c, &fp).unwrap().abs() < 1e-14);
        let s = field_sample(&p, &c, &fp, 0.0, 0.0).unwrap();
        assert!((s.delta - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn spatial_periodicity_static() {
        let (p, c, fp) = unity();
        for t in [0.0, 0.9, 4.2] {
            for x in [0.0, 0.5, 1.7] {
                let a0 = vector_potential(x, t, &p, &c, &fp).unwrap();
                let a1 = vector_potential(x + TAU / fp.k, t, &p, &c, &fp).unwrap();
                assert!((a0 - a1).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn amplitude_tracks_sqrt_f() {
        let p = ModeParams::with_sign(1.0, 1.5, 1.0, C3Sign::Plus, 0.0, 0.0).unwrap();
        let c = QuantumConstants::unity();
        let fp = FieldParams::unity();
        let ratio0 = {
            let s = field_sample(&p, &c, &fp, 0.0, 0.0).unwrap();
            s.big_a * s.big_a / p.eval_f(0.0)
        };
        for i in 1..50 {
            let t = 0.21 * i as f64;
            let s = field_sample(&p, &c, &fp, 0.0, t).unwrap();
            assert!((s.big_a * s.big_a / p.eval_f(t) - ratio0).abs() < 1e-12);
        }
    }

    #[test]
    fn delta_stays_in_open_zero_pi() {
        let p = ModeParams::with_sign(1.0, 10_000.0, 10_000.0, C3Sign::Plus, 0.0, 0.0).unwrap();
        let c = QuantumConstants::unity();
        let fp = FieldParams::unity();
        for i in 0..500 {
            let t = i as f64 * PI / 500.0;
            let s = field_sample(&p, &c, &fp, 0.0, t).unwrap();
            assert!(s.delta > 0.0 && s.delta < PI, "delta = {} at t = {t}", s.delta);
        }
    }

    #[test]
    fn identical_modes_interfere_to_double() {
        let p = ModeParams::with_sign(1.0, 1.5, 1.0, C3Sign::Plus, 0.0, 0.0).unwrap();
        let c = QuantumConstants::unity();
        let fp = FieldParams::unity();
        for (x, t) in [(0.0, 0.4), (1.2, 2.0), (2.5, 6.1)] {
            let e = electric_field(x, t, &p, &c, &fp).unwrap();
            let tot = interference_field(x, t, &p, &p, &c, &fp).unwrap();
            assert_eq!(tot, 2.0 * e);
        }
    }

    #[test]
    fn field_params_validation() {
        assert!(FieldParams::new(0.0, -1.0, 1.0, 1.0).is_err());
        assert!(FieldParams::new(0.0, 1.0, 0.0, 1.0).is_err());
        assert!(FieldParams::new(0.0, 1.0, 1.0, -3.0).is_err());
    }
}
