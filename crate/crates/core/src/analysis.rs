//! Post-processing of sampled field traces: RMS, beat-envelope detection,
//! spectral concentration, and group-velocity readout from field maps.

use std::f64::consts::TAU;

/// Root-mean-square of a sample series.
pub fn time_rms(samples: &[f64]) -> f64 {
    if samples.is_empty() {
        return 0.0;
    }
    (samples.iter().map(|v| v * v).sum::<f64>() / samples.len() as f64).sqrt()
}

/// Centered moving average with a window of `width` samples (clamped at the
/// edges).
fn moving_average(samples: &[f64], width: usize) -> Vec<f64> {
    let n = samples.len();
    let half = width / 2;
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(0.0);
    for v in samples {
        prefix.push(prefix.last().unwrap() + v);
    }
    (0..n)
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + half + 1).min(n);
            (prefix[hi] - prefix[lo]) / (hi - lo) as f64
        })
        .collect()
}

/// Mean spacing of the beat-envelope peaks of `signal` sampled at step `dt`.
///
/// The squared signal is low-passed over one carrier period, which leaves the
/// squared envelope up to a constant factor; its peak spacing is the beat
/// period. Returns `None` if fewer than two envelope peaks are found.
pub fn beat_envelope_peak_spacing(signal: &[f64], dt: f64, carrier_period: f64) -> Option<f64> {
    if signal.len() < 8 {
        return None;
    }
    let window = ((carrier_period / dt).round() as usize).max(3);
    let squared: Vec<f64> = signal.iter().map(|v| v * v).collect();
    let env2 = moving_average(&squared, window);
    // Trim the edge-clamped margins before searching for peaks.
    let margin = window;
    if env2.len() <= 2 * margin + 2 {
        return None;
    }
    let interior = &env2[margin..env2.len() - margin];
    // Residual carrier ripple leaves multiple near-equal local maxima around
    // each beat crest, so individual maxima are unreliable markers. Instead,
    // each contiguous run above the midrange threshold is one crest; its
    // ripple-averaged position is the weighted centroid of the excess.
    let lo = interior.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = interior.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let threshold = lo + 0.5 * (hi - lo);
    let mut centroids: Vec<f64> = Vec::new();
    let mut run_start: Option<usize> = None;
    for i in 0..=interior.len() {
        let above = i < interior.len() && interior[i] >= threshold;
        match (above, run_start) {
            (true, None) => run_start = Some(i),
            (false, Some(s)) => {
                // Runs clipped by the trimmed margins are incomplete crests.
                if s > 0 && i < interior.len() {
                    let (mut wsum, mut wpos) = (0.0, 0.0);
                    for (j, v) in interior[s..i].iter().enumerate() {
                        let w = v - threshold;
                        wsum += w;
                        wpos += w * (s + j) as f64;
                    }
                    if wsum > 0.0 {
                        centroids.push(wpos / wsum);
                    }
                }
                run_start = None;
            }
            _ => {}
        }
    }
    if centroids.len() < 2 {
        return None;
    }
    let mut gaps: Vec<f64> = centroids.windows(2).map(|w| w[1] - w[0]).collect();
    gaps.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let mid = gaps.len() / 2;
    let gap = if gaps.len() % 2 == 1 { gaps[mid] } else { 0.5 * (gaps[mid - 1] + gaps[mid]) };
    Some(gap * dt)
}

/// Fraction of spectral power (mean removed) held by the strongest frequency
/// bin, plus that bin index. Plain DFT over bins 1..N/2.
pub fn dominant_bin_power_fraction(signal: &[f64]) -> (usize, f64) {
    let n = signal.len();
    if n < 4 {
        return (0, 0.0);
    }
    let mean = signal.iter().sum::<f64>() / n as f64;
    let centered: Vec<f64> = signal.iter().map(|v| v - mean).collect();
    let mut best_bin = 0;
    let mut best = 0.0;
    let mut total = 0.0;
    for bin in 1..=n / 2 {
        let w = TAU * bin as f64 / n as f64;
        let (mut re, mut im) = (0.0, 0.0);
        for (j, v) in centered.iter().enumerate() {
            let ph = w * j as f64;
            re += v * ph.cos();
            im -= v * ph.sin();
        }
        let p = re * re + im * im;
        total += p;
        if p > best {
            best = p;
            best_bin = bin;
        }
    }
    if total == 0.0 {
        (0, 0.0)
    } else {
        (best_bin, best / total)
    }
}

/// Group-velocity readout from an (t, x) field map: each successive pair of
/// time slices is aligned by circular cross-correlation (with parabolic lag
/// refinement) and the mean ridge slope dx/dt is returned.
///
/// `rows[i][j]` is the field at time `t_min + i*dt`, position `x_min + j*dx`.
/// The x grid is assumed to span whole spatial periods. Returns `None` when
/// the map carries no usable signal.
pub fn group_velocity_estimate(rows: &[Vec<f64>], dx: f64, dt: f64, stride: usize) -> Option<f64> {
    let stride = stride.max(1);
    if rows.len() <= stride || rows[0].len() < 4 {
        return None;
    }
    let nx = rows[0].len();
    let mut shifts = Vec::new();
    for pair in rows.windows(stride + 1) {
        let (a, b) = (&pair[0], &pair[stride]);
        let corr: Vec<f64> = (0..nx)
            .map(|lag| (0..nx).map(|j| a[j] * b[(j + lag) % nx]).sum::<f64>())
            .collect();
        let (mut best_lag, mut best) = (0usize, f64::NEG_INFINITY);
        for (lag, &c) in corr.iter().enumerate() {
            if c > best {
                best = c;
                best_lag = lag;
            }
        }
        if best <= 0.0 {
            continue; // slice pair too weak to correlate
        }
        let prev = corr[(best_lag + nx - 1) % nx];
        let next = corr[(best_lag + 1) % nx];
        let denom = prev - 2.0 * best + next;
        let frac = if denom.abs() > 0.0 { 0.5 * (prev - next) / denom } else { 0.0 };
        let mut lag = best_lag as f64 + frac.clamp(-0.5, 0.5);
        // Interpret lags beyond half the window as negative shifts.
        if lag > nx as f64 / 2.0 {
            lag -= nx as f64;
        }
        shifts.push(lag * dx / (stride as f64 * dt));
    }
    if shifts.is_empty() {
        None
    } else {
        Some(shifts.iter().sum::<f64>() / shifts.len() as f64)
    }
}
