//! Mode parameters and the time machinery of a nonstatic light mode:
//! the width function f(t), the branch-corrected phase integral Θ(t) = ωT(t),
//! and the nonstaticity measure D_F.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use crate::error::{Error, Result};
use crate::quad;

/// Tolerance on the constraint c1·c2 − c3² = 1, scaled by max(1, c1·c2):
/// squaring c3 = √(c1·c2 − 1) already costs about one ulp of c1·c2.
pub const COEFF_TOL: f64 = 1e-9;

/// Relative tolerance of the quadrature oracle for Θ.
pub const ORACLE_RTOL: f64 = 1e-10;

/// Half-width, in units of the step ratio, inside which a time is treated as
/// sitting exactly on a tan singularity and Θ takes its two-sided limit.
const SINGULAR_TOL: f64 = 1e-9;

/// Branch choice for c3 = ±√(c1·c2 − 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum C3Sign {
    Plus,
    Minus,
}

/// Parameter set (ω, c1, c2, c3, t0, φ) of a single nonstatic mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeParams {
    pub omega: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub t0: f64,
    pub phi: f64,
}

/// f, ḟ, z = ḟ/(2ω), Θ and T evaluated at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeSample {
    pub t: f64,
    pub f: f64,
    pub fdot: f64,
    pub z: f64,
    pub theta: f64,
    pub big_t: f64,
}

impl ModeParams {
    pub fn new(omega: f64, c1: f64, c2: f64, c3: f64, t0: f64, phi: f64) -> Result<Self> {
        Self { omega, c1, c2, c3, t0, phi }.validate()
    }

    /// Build a parameter set with c3 resolved from the sign convention.
    pub fn with_sign(
        omega: f64,
        c1: f64,
        c2: f64,
        sign: C3Sign,
        t0: f64,
        phi: f64,
    ) -> Result<Self> {
        let c3 = resolve_c3(c1, c2, sign)?;
        Self::new(omega, c1, c2, c3, t0, phi)
    }

    /// The static mode (c1, c2, c3) = (1, 1, 0) with unit frequency.
    pub fn static_mode() -> Self {
        Self { omega: 1.0, c1: 1.0, c2: 1.0, c3: 0.0, t0: 0.0, phi: 0.0 }
    }

    pub fn validate(self) -> Result<Self> {
        if !(self.omega > 0.0) {
            return Err(Error::NonPositiveFrequency(self.omega));
        }
        if !(self.c1 > 0.0 && self.c2 > 0.0) {
            return Err(Error::CoefficientConstraintViolated(format!(
                "c1 and c2 must be positive, got c1 = {}, c2 = {}",
                self.c1, self.c2
            )));
        }
        if self.c1 * self.c2 < 1.0 {
            return Err(Error::CoefficientConstraintViolated(format!(
                "c1*c2 = {} < 1",
                self.c1 * self.c2
            )));
        }
        let defect = self.c1 * self.c2 - self.c3 * self.c3 - 1.0;
        if defect.abs() > COEFF_TOL * (self.c1 * self.c2).max(1.0) {
            return Err(Error::CoefficientConstraintViolated(format!(
                "c1*c2 - c3^2 - 1 = {defect:e} exceeds tolerance {COEFF_TOL:e}"
            )));
        }
        if !(-FRAC_PI_2 <= self.phi && self.phi < FRAC_PI_2) {
            return Err(Error::PhiOutOfRange(self.phi));
        }
        Ok(self)
    }

    /// φ̃(t) = ω(t − t0) + φ.
    #[inline]
    pub fn phase_angle(&self, t: f64) -> f64 {
        self.omega * (t - self.t0) + self.phi
    }

    /// Amplitude R and phase offset χ of the oscillating part of f:
    /// f = (c1+c2)/2 + R·cos(2φ̃ − χ).
    #[inline]
    fn oscillation(&self) -> (f64, f64) {
        let b = 0.5 * (self.c2 - self.c1);
        let r = (b * b + self.c3 * self.c3).sqrt();
        (r, self.c3.atan2(b))
    }

    /// f(t) = c1 sin²φ̃ + c2 cos²φ̃ + c3 sin 2φ̃; strictly positive.
    ///
    /// Evaluated in the equivalent form f_min + 2R·cos²(φ̃ − χ/2) whose terms
    /// are all non-negative; the textbook form loses ~8 digits near f_min at
    /// extreme c1, c2 and the resulting jitter stalls adaptive quadrature.
    /// f_min is taken as 1/((c1+c2)/2 + R), i.e. with the constraint
    /// c1·c2 − c3² = 1 treated as exact, which keeps quadrature of ω/f
    /// consistent with the closed-form Θ even when c3 carries rounding.
    pub fn eval_f(&self, t: f64) -> f64 {
        let (r, chi) = self.oscillation();
        let a = 0.5 * (self.c1 + self.c2);
        let f_min = (a + r).recip();
        let c = (self.phase_angle(t) - 0.5 * chi).cos();
        f_min + 2.0 * r * c * c
    }

    /// ḟ(t) = ω[(c1 − c2) sin 2φ̃ + 2 c3 cos 2φ̃] = −2ωR·sin(2φ̃ − χ).
    pub fn eval_fdot(&self, t: f64) -> f64 {
        let (r, chi) = self.oscillation();
        -2.0 * self.omega * r * (2.0 * self.phase_angle(t) - chi).sin()
    }

    /// (ḟ, z) with z = ḟ/(2ω).
    pub fn eval_fdot_z(&self, t: f64) -> (f64, f64) {
        let fdot = self.eval_fdot(t);
        (fdot, fdot / (2.0 * self.omega))
    }

    /// Analytic minimum of f over t: (c1+c2)/2 − √((c1+c2)²/4 − 1).
    pub fn f_min(&self) -> f64 {
        // 1/(a + sqrt(a^2 - 1)) == a - sqrt(a^2 - 1) without the cancellation
        // that costs ~8 digits at extreme c1, c2.
        let a = 0.5 * (self.c1 + self.c2);
        (a + (a * a - 1.0).max(0.0).sqrt()).recip()
    }

    /// Analytic maximum of f over t.
    pub fn f_max(&self) -> f64 {
        let a = 0.5 * (self.c1 + self.c2);
        a + (a * a - 1.0).max(0.0).sqrt()
    }

    /// Period of f (and of each π gain in Θ).
    pub fn period(&self) -> f64 {
        PI / self.omega
    }

    fn check_time(&self, t: f64) -> Result<()> {
        if t < self.t0 {
            return Err(Error::TimeBeforeReference { t, t0: self.t0 });
        }
        Ok(())
    }

    /// (ω(t − t0) + φ)/π + 1/2; integer exactly at the tan singularities.
    #[inline]
    fn step_ratio(&self, t: f64) -> f64 {
        (self.omega * (t - self.t0) + self.phi) / PI + 0.5
    }

    /// Number of step times t_m = t0 + ((2m+1)π/2 − φ)/ω with t_m ≤ t.
    ///
    /// Right-continuous: the step at t = t_m is already counted.
    pub fn step_count(&self, t: f64) -> Result<u64> {
        self.check_time(t)?;
        Ok(step_index(self.step_ratio(t)) as u64)
    }

    /// Θ(t) = atan Z(t) − atan Z(t0) + π·step_count, Z(τ) = c3 + c1 tan φ̃(τ).
    ///
    /// At the tan singularities the two-sided limit π/2 + mπ − atan Z(t0) is
    /// used, which keeps Θ continuous regardless of the sign tan() happens to
    /// return there in floating point.
    pub fn eval_theta(&self, t: f64) -> Result<f64> {
        self.check_time(t)?;
        let atan0 = (self.c3 + self.c1 * self.phi.tan()).atan();
        let r = self.step_ratio(t);
        let k = r.round();
        if (r - k).abs() <= SINGULAR_TOL && k >= 0.0 {
            return Ok(k * PI - FRAC_PI_2 - atan0);
        }
        let z = self.c3 + self.c1 * self.phase_angle(t).tan();
        Ok(z.atan() - atan0 + PI * step_index(r) as f64)
    }

    /// T(t) = Θ(t)/ω.
    pub fn big_t(&self, t: f64) -> Result<f64> {
        Ok(self.eval_theta(t)? / self.omega)
    }

    pub fn sample(&self, t: f64) -> Result<TimeSample> {
        let theta = self.eval_theta(t)?;
        let (fdot, z) = self.eval_fdot_z(t);
        Ok(TimeSample {
            t,
            f: self.eval_f(t),
            fdot,
            z,
            theta,
            big_t: theta / self.omega,
        })
    }

    /// Times in [t0, t_max] at which f attains its minimum (the nodes of the
    /// probability density, where the step phase drops).
    pub fn node_times(&self, t_max: f64) -> Vec<f64> {
        let b = 0.5 * (self.c2 - self.c1);
        let r = (b * b + self.c3 * self.c3).sqrt();
        if r < 1e-15 {
            return Vec::new(); // static: f is constant, no nodes
        }
        // f = (c1+c2)/2 + r·cos(2φ̃ − χ); minima at φ̃ = (χ + π)/2 + mπ.
        let chi = self.c3.atan2(b);
        let base = 0.5 * (chi + PI);
        let mut m = ((self.phi - base) / PI).ceil();
        // Guard against the ceiling landing one period early.
        while base + m * PI < self.phi - 1e-12 {
            m += 1.0;
        }
        let mut out = Vec::new();
        loop {
            let t = self.t0 + (base + m * PI - self.phi) / self.omega;
            if t > t_max + 1e-15 {
                break;
            }
            if t >= self.t0 {
                out.push(t);
            }
            m += 1.0;
        }
        out
    }
}

/// Step index for a given step ratio, with right-continuity at integers.
fn step_index(r: f64) -> i64 {
    let k = r.round();
    let idx = if (r - k).abs() <= SINGULAR_TOL { k as i64 } else { r.floor() as i64 };
    idx.max(0)
}

/// c3 = sign·√(c1·c2 − 1).
pub fn resolve_c3(c1: f64, c2: f64, sign: C3Sign) -> Result<f64> {
    if !(c1 > 0.0 && c2 > 0.0 && c1 * c2 >= 1.0) {
        return Err(Error::CoefficientConstraintViolated(format!(
            "resolve_c3 requires c1 > 0, c2 > 0, c1*c2 >= 1; got c1 = {c1}, c2 = {c2}"
        )));
    }
    let root = (c1 * c2 - 1.0).sqrt();
    Ok(match sign {
        C3Sign::Plus => root,
        C3Sign::Minus => -root,
    })
}

/// Measure of nonstaticity D_F = √((c1+c2)² − 4)/(2√2).
pub fn measure_df(c1: f64, c2: f64) -> Result<f64> {
    let s = c1 + c2;
    if s * s < 4.0 {
        return Err(Error::CoefficientConstraintViolated(format!(
            "measure_df requires c1 + c2 >= 2, got {s}"
        )));
    }
    Ok((s * s - 4.0).sqrt() / (2.0 * SQRT_2))
}

/// ω·∫_a^b dt'/f(t') by adaptive quadrature; both endpoints must be ≥ t0.
pub fn oracle_theta_between(params: &ModeParams, a: f64, b: f64) -> Result<f64> {
    if a < params.t0 {
        return Err(Error::TimeBeforeReference { t: a, t0: params.t0 });
    }
    if b < a {
        return Err(Error::TimeBeforeReference { t: b, t0: a });
    }
    // Split at the nodes so each 1/f peak sits on a segment boundary, then
    // cap segment length at a quarter period.
    let nodes = params.node_times(b + params.period());
    let mut cuts = vec![a];
    for tn in &nodes {
        if *tn > a && *tn < b {
            cuts.push(*tn);
        }
    }
    cuts.push(b);
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let max_len = 0.25 * params.period();
    // Near a node, f evaluated directly carries argument-rounding jitter of
    // ~1e-12 relative, which stalls the adaptive error estimate. The exact
    // identity f(t) = f_min + (f_max - f_min)·sin²(ω(t - t_node)) with the
    // node-relative time subtracted exactly is jitter-free, so each piece
    // integrates that form anchored at its nearest node.
    let f_lo = params.f_min();
    let swing = params.f_max() - f_lo;
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let mid = 0.5 * (lo + hi);
        let anchor = nodes
            .iter()
            .copied()
            .min_by(|x, y| (x - mid).abs().partial_cmp(&(y - mid).abs()).unwrap());
        let integrand = |t: f64| match anchor {
            Some(tn) => {
                let s = (params.omega * (t - tn)).sin();
                params.omega / (f_lo + swing * s * s)
            }
            None => params.omega / params.eval_f(t),
        };
        let pieces = ((hi - lo) / max_len).ceil().max(1.0) as usize;
        let h = (hi - lo) / pieces as f64;
        for i in 0..pieces {
            let x0 = lo + i as f64 * h;
            total += quad::adaptive_simpson_rel(
                &integrand,
                x0,
                x0 + h,
                ORACLE_RTOL,
                quad::DEFAULT_MAX_DEPTH,
            )?;
        }
    }
    Ok(total)
}

/// Quadrature evaluation of Θ(t); the independent test oracle for
/// [`ModeParams::eval_theta`].
pub fn oracle_theta(params: &ModeParams, t: f64) -> Result<f64> {
    oracle_theta_between(params, params.t0, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn moderate() -> ModeParams {
        ModeParams::with_sign(1.0, 1.5, 1.5, C3Sign::Plus, 0.0, 0.0).unwrap()
    }

    #[test]
    fn validate_accepts_static_and_moderate() {
        assert!(ModeParams::new(1.0, 1.0, 1.0, 0.0, 0.0, 0.0).is_ok());
        assert!(ModeParams::new(1.0, 1.5, 1.5, 1.25f64.sqrt(), 0.0, 0.0).is_ok());
    }

    #[test]
    fn validate_rejects_bad_parameters() {
        assert!(matches!(
            ModeParams::new(0.0, 1.0, 1.0, 0.0, 0.0, 0.0),
            Err(Error::NonPositiveFrequency(_))
        ));
        assert!(matches!(
            ModeParams::new(1.0, 1.0, 1.0, 0.5, 0.0, 0.0),
            Err(Error::CoefficientConstraintViolated(_))
        ));
        assert!(matches!(
            ModeParams::new(1.0, 1.0, 0.5, 0.0, 0.0, 0.0),
            Err(Error::CoefficientConstraintViolated(_))
        ));
        assert!(matches!(
            ModeParams::new(1.0, 1.0, 1.0, 0.0, 0.0, FRAC_PI_2),
            Err(Error::PhiOutOfRange(_))
        ));
    }

    #[test]
    fn resolve_c3_values() {
        assert_eq!(resolve_c3(1.0, 1.0, C3Sign::Plus).unwrap(), 0.0);
        assert!((resolve_c3(1.5, 1.5, C3Sign::Plus).unwrap() - 1.25f64.sqrt()).abs() < 1e-15);
        assert!(
            (resolve_c3(10_000.0, 10_000.0, C3Sign::Plus).unwrap() - 9999.99995).abs() < 1e-3
        );
        assert!(resolve_c3(1.0, 0.5, C3Sign::Plus).is_err());
        assert!(resolve_c3(1.5, 1.5, C3Sign::Minus).unwrap() < 0.0);
    }

    #[test]
    fn eval_f_static_is_one() {
        let p = ModeParams::static_mode();
        for t in [0.0, 0.7, 3.2, 11.0] {
            assert!((p.eval_f(t) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn eval_f_moderate_value_and_minimum() {
        let p = moderate();
        assert!((p.eval_f(PI / 4.0) - 2.618034).abs() < 1e-6);
        let grid_min = (0..20_000)
            .map(|i| p.eval_f(i as f64 * 2.0 * PI / 20_000.0))
            .fold(f64::INFINITY, f64::min);
        assert!((grid_min - 0.381966).abs() < 1e-6);
        assert!((p.f_min() - 0.381966011).abs() < 1e-8);
    }

    #[test]
    fn fdot_static_and_moderate() {
        let p = ModeParams::static_mode();
        let (fd, z) = p.eval_fdot_z(1.3);
        assert_eq!(fd, 0.0);
        assert_eq!(z, 0.0);
        let p = moderate();
        let (fd, z) = p.eval_fdot_z(0.0);
        assert!((fd - 2.236068).abs() < 1e-6);
        assert!((z - 1.118034).abs() < 1e-6);
    }

    #[test]
    fn fdot_matches_finite_difference() {
        let h = 1e-6;
        for p in [
            ModeParams::static_mode(),
            moderate(),
            ModeParams::with_sign(2.0, 1.5, 1.0, C3Sign::Minus, 0.5, 0.3).unwrap(),
        ] {
            for i in 0..200 {
                let t = p.t0 + 0.05 * i as f64;
                let fd = (p.eval_f(t + h) - p.eval_f(t - h)) / (2.0 * h);
                let exact = p.eval_fdot(t);
                let scale = exact.abs().max(p.omega * (p.c1 + p.c2));
                assert!((fd - exact).abs() <= 1e-6 * scale, "t = {t}");
            }
        }
    }

    #[test]
    fn step_count_boundaries() {
        let p = ModeParams::static_mode();
        assert_eq!(p.step_count(0.0).unwrap(), 0);
        assert_eq!(p.step_count(FRAC_PI_2 * 0.999).unwrap(), 0);
        assert_eq!(p.step_count(FRAC_PI_2).unwrap(), 1);
        assert_eq!(p.step_count(10.0 * PI).unwrap(), 10);
        assert!(matches!(
            p.step_count(-0.1),
            Err(Error::TimeBeforeReference { .. })
        ));
    }

    #[test]
    fn theta_static_is_linear() {
        let p = ModeParams::static_mode();
        for t in [0.0, 0.5, FRAC_PI_2, 2.0, 7.9, 10.0 * PI] {
            assert!((p.eval_theta(t).unwrap() - t).abs() < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn theta_continuous_at_singular_times() {
        let p = moderate();
        for m in 0..5 {
            let tm = (2.0 * m as f64 + 1.0) * FRAC_PI_2;
            let at = p.eval_theta(tm).unwrap();
            let before = p.eval_theta(tm - 1e-9).unwrap();
            let after = p.eval_theta(tm + 1e-9).unwrap();
            assert!((at - before).abs() < 1e-6);
            assert!((after - at).abs() < 1e-6);
        }
    }

    #[test]
    fn theta_periodicity() {
        for p in [moderate(), ModeParams::with_sign(1.0, 1.5, 1.0, C3Sign::Minus, 0.0, 0.2).unwrap()]
        {
            for i in 0..50 {
                let t = p.t0 + 0.13 * i as f64;
                let gain = p.eval_theta(t + p.period()).unwrap() - p.eval_theta(t).unwrap();
                assert!((gain - PI).abs() < 1e-9, "t = {t}, gain = {gain}");
            }
        }
    }

    #[test]
    fn theta_matches_quadrature_oracle() {
        let p = moderate();
        for t in [0.3, 1.0, 2.0, 5.5] {
            let closed = p.eval_theta(t).unwrap();
            let quad = oracle_theta(&p, t).unwrap();
            assert!((closed - quad).abs() < 1e-8, "t = {t}");
        }
    }

    #[test]
    fn oracle_static_and_one_period_extreme() {
        let p = ModeParams::static_mode();
        assert!((oracle_theta(&p, 2.0).unwrap() - 2.0).abs() < 1e-10);
        let p = ModeParams::with_sign(1.0, 10_000.0, 10_000.0, C3Sign::Plus, 0.0, 0.0).unwrap();
        assert!((oracle_theta(&p, PI).unwrap() - PI).abs() < 1e-8);
    }

    #[test]
    fn measure_df_values() {
        assert_eq!(measure_df(1.0, 1.0).unwrap(), 0.0);
        assert!((measure_df(10_000.0, 10_000.0).unwrap() - 7071.067811).abs() < 1e-2);
        assert!((measure_df(1.5, 1.5).unwrap() - 5f64.sqrt() / (2.0 * SQRT_2)).abs() < 1e-12);
        assert!(measure_df(0.5, 0.5).is_err());
    }

    #[test]
    fn node_times_align_with_f_minimum() {
        let p = moderate();
        let nodes = p.node_times(4.0 * PI);
        assert!(!nodes.is_empty());
        for tn in &nodes {
            assert!((p.eval_f(*tn) - p.f_min()).abs() < 1e-10);
            assert!(p.eval_fdot(*tn).abs() < 1e-9);
        }
        for w in nodes.windows(2) {
            assert!((w[1] - w[0] - p.period()).abs() < 1e-12);
        }
        assert!(ModeParams::static_mode().node_times(10.0).is_empty());
    }
}
