use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cubic smoothstep rising from 0 at `inner` to 1 at `outer`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutoffProfile {
    pub inner: f64,
    pub outer: f64,
}

impl CutoffProfile {
    /// `inner = eps log t / 2`, `outer = eps log t`.
    pub fn new(eps: f64, log_t: f64) -> Result<Self> {
        if !(eps > 0.0) || !eps.is_finite() {
            return Err(Error::InvalidEps(eps));
        }
        if !(log_t > 0.0) || !log_t.is_finite() {
            return Err(Error::Unsupported(format!("log t must be positive, got {log_t}")));
        }
        Ok(Self {
            inner: 0.5 * eps * log_t,
            outer: eps * log_t,
        })
    }

    pub fn width(&self) -> f64 {
        self.outer - self.inner
    }

    /// Bound on the derivative, `1.5 / width = 3 / (eps log t)`.
    pub fn max_derivative(&self) -> f64 {
        1.5 / self.width()
    }
}

/// Value and derivative of the profile at distance `d`.
pub fn cutoff(d: f64, profile: &CutoffProfile) -> (f64, f64) {
    if d <= profile.inner {
        return (0.0, 0.0);
    }
    if d >= profile.outer {
        return (1.0, 0.0);
    }
    let w = profile.width();
    let x = (d - profile.inner) / w;
    let value = x * x * (3.0 - 2.0 * x);
    // 6x(1-x) peaks at 1.5; clamp so rounding never crosses the bound
    let slope = (6.0 * x * (1.0 - x)).min(1.5);
    (value.clamp(0.0, 1.0), slope / w)
}
