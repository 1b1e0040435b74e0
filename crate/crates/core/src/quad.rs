//! Adaptive Simpson quadrature with interval bisection.

use crate::error::{Error, Result};

pub const DEFAULT_MAX_DEPTH: u32 = 60;

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// Integrate `f` over `[a, b]` to absolute tolerance `eps`.
pub fn adaptive_simpson<F>(f: &F, a: f64, b: f64, eps: f64, max_depth: u32) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if a == b {
        return Ok(0.0);
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let s = simpson(a, b, fa, fm, fb);
    recurse(f, a, m, b, fa, fm, fb, s, eps.max(f64::MIN_POSITIVE), max_depth, max_depth)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F>(
    f: &F,
    a: f64,
    m: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    s: f64,
    eps: f64,
    depth: u32,
    max_depth: u32,
) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (f(lm), f(rm));
    let sl = simpson(a, m, fa, flm, fm);
    let sr = simpson(m, b, fm, frm, fb);
    let err = sl + sr - s;
    if err.abs() <= 15.0 * eps {
        return Ok(sl + sr + err / 15.0);
    }
    if depth == 0 {
        return Err(Error::QuadratureNonConvergence { max_depth });
    }
    let half = 0.5 * eps;
    let left = recurse(f, a, lm, m, fa, flm, fm, sl, half, depth - 1, max_depth)?;
    let right = recurse(f, m, rm, b, fm, frm, fb, sr, half, depth - 1, max_depth)?;
    Ok(left + right)
}

/// Integrate `f` over `[a, b]` to relative tolerance `rel`.
///
/// The absolute tolerance is seeded from a coarse composite estimate and the
/// integration is repeated once if the first pass shows the seed was too
/// loose (sharply peaked integrands can fool the coarse scan either way).
pub fn adaptive_simpson_rel<F>(f: &F, a: f64, b: f64, rel: f64, max_depth: u32) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if a == b {
        return Ok(0.0);
    }
    let n = 32;
    let h = (b - a) / n as f64;
    let mut coarse = 0.0;
    for i in 0..n {
        let x0 = a + i as f64 * h;
        coarse += simpson(x0, x0 + h, f(x0), f(x0 + 0.5 * h), f(x0 + h));
    }
    let eps0 = rel * coarse.abs().max(f64::MIN_POSITIVE);
    let first = adaptive_simpson(f, a, b, eps0, max_depth)?;
    let eps1 = rel * first.abs().max(f64::MIN_POSITIVE);
    if eps1 < 0.5 * eps0 {
        adaptive_simpson(f, a, b, eps1, max_depth)
    } else {
        Ok(first)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_is_exact() {
        let v = adaptive_simpson(&|x: f64| x * x * x, 0.0, 2.0, 1e-12, 40).unwrap();
        assert!((v - 4.0).abs() < 1e-12);
    }

    #[test]
    fn sine_over_period() {
        let v = adaptive_simpson(&f64::sin, 0.0, PI, 1e-12, 40).unwrap();
        assert!((v - 2.0).abs() < 1e-10);
    }

    #[test]
    fn relative_tolerance_on_peaked_integrand() {
        // Lorentzian peak of width 1e-3 centered mid-interval.
        let w = 1e-3;
        let f = |x: f64| w / ((x - 0.5).powi(2) + w * w);
        let v = adaptive_simpson_rel(&f, 0.0, 1.0, 1e-10, 60).unwrap();
        let exact = (0.5 / w).atan() * 2.0;
        assert!((v - exact).abs() < 1e-8 * exact);
    }

    #[test]
    fn depth_exhaustion_reports_error() {
        let f = |x: f64| if x < 0.331 { 0.0 } else { 1.0 };
        let r = adaptive_simpson(&f, 0.0, 1.0, 1e-300, 4);
        assert!(matches!(r, Err(Error::QuadratureNonConvergence { .. })));
    }
}
