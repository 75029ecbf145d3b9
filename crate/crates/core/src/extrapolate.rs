//! Richardson extrapolation to `t -> 0+` on halving step schedules.

use crate::error::{Error, Result};
use crate::linalg::{self, C64};

/// Steps `t_k = scale * 2^-k` for `k = first..=last`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepSchedule {
    pub first: u32,
    pub last: u32,
}

impl StepSchedule {
    pub const fn new(first: u32, last: u32) -> Self {
        StepSchedule { first, last }
    }

    /// `t = 2^-4 .. 2^-20`, the ray schedule used for boundary values.
    pub const RAY: StepSchedule = StepSchedule::new(4, 20);

    pub fn len(&self) -> usize {
        (self.last - self.first + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.last < self.first
    }

    pub fn steps(&self, scale: f64) -> Vec<f64> {
        (self.first..=self.last)
            .map(|k| scale * 2f64.powi(-(k as i32)))
            .collect()
    }
}

/// Extrapolated limit with an error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Limit {
    pub value: C64,
    pub error: f64,
}

/// Neville-Richardson tableau for samples `f(t_0), f(t_0/2), ...` of a
/// function with a power series in `t`. Returns the tableau entry with the
/// smallest error estimate, stopping once higher orders start to lose
/// accuracy to rounding.
pub fn richardson(samples: &[C64]) -> Result<Limit> {
    if samples.is_empty() {
        return Err(Error::ExtrapolationFailed);
    }
    if samples.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::ExtrapolationFailed);
    }
    let mut best = Limit {
        value: samples[0],
        error: f64::INFINITY,
    };
    let mut prev: Vec<C64> = vec![samples[0]];
    for (k, &s) in samples.iter().enumerate().skip(1) {
        let mut row = Vec::with_capacity(k + 1);
        row.push(s);
        let mut factor = 1.0;
        for j in 1..=k {
            factor *= 2.0;
            let improved = row[j - 1] + (row[j - 1] - prev[j - 1]) / (factor - 1.0);
            let err = (improved - row[j - 1]).norm().max((improved - prev[j - 1]).norm());
            if err <= best.error {
                best = Limit {
                    value: improved,
                    error: err,
                };
            }
            row.push(improved);
        }
        // Diagonal error grew well past the best seen: rounding dominates.
        if (row[k] - prev[k - 1]).norm() >= 2.0 * best.error && k > 2 {
            break;
        }
        prev = row;
    }
    if !best.error.is_finite() {
        best.error = 0.0;
    }
    Ok(best)
}

/// Two-point Richardson estimates `2 v(t/2) - v(t)` for consecutive samples.
pub fn two_point_vectors(samples: &[Vec<C64>]) -> Vec<Vec<C64>> {
    samples
        .windows(2)
        .map(|w| w[1].iter().zip(&w[0]).map(|(fine, coarse)| fine * 2.0 - coarse).collect())
        .collect()
}

/// True when the norms grow monotonically and by more than a factor of 10 overall.
pub fn is_divergent(estimates: &[Vec<C64>]) -> bool {
    let norms: Vec<f64> = estimates.iter().map(|v| linalg::norm(v)).collect();
    if norms.iter().any(|n| !n.is_finite()) {
        return true;
    }
    let (Some(&first), Some(&last)) = (norms.first(), norms.last()) else {
        return false;
    };
    let monotone = norms.windows(2).all(|w| w[1] >= w[0]);
    monotone && last > 10.0 * first.max(f64::MIN_POSITIVE)
}
