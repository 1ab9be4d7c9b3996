use crate::error::{invalid, DgError, Result};

/// Partition `0 = t_0 < t_1 < ... < t_N = T` of the time interval.
///
/// Slab `i` (zero based) is the right-closed interval `(t_i, t_{i+1}]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeMesh {
    breakpoints: Vec<f64>,
}

impl TimeMesh {
    pub fn new(breakpoints: Vec<f64>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return invalid("a time mesh needs at least two breakpoints");
        }
        if breakpoints[0] != 0.0 {
            return invalid(format!("first breakpoint must be 0, got {}", breakpoints[0]));
        }
        if breakpoints.iter().any(|t| !t.is_finite()) {
            return invalid("breakpoints must be finite");
        }
        if let Some(w) = breakpoints.windows(2).find(|w| w[1] <= w[0]) {
            return invalid(format!("breakpoints not strictly increasing at {} -> {}", w[0], w[1]));
        }
        Ok(Self { breakpoints })
    }

    /// Uniform mesh of `n` slabs on `[0, t_end]`.
    pub fn uniform(t_end: f64, n: usize) -> Result<Self> {
        if !(t_end > 0.0) || !t_end.is_finite() {
            return invalid(format!("final time must be positive, got {t_end}"));
        }
        if n == 0 {
            return invalid("number of slabs must be at least 1");
        }
        let mut pts: Vec<f64> = (0..=n).map(|i| i as f64 * t_end / n as f64).collect();
        pts[n] = t_end;
        Self::new(pts)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn n_slabs(&self) -> usize {
        self.breakpoints.len() - 1
    }

    pub fn t_end(&self) -> f64 {
        self.breakpoints[self.n_slabs()]
    }

    /// `(t_i, t_{i+1})` for zero-based slab `i`.
    pub fn slab(&self, i: usize) -> (f64, f64) {
        (self.breakpoints[i], self.breakpoints[i + 1])
    }

    pub fn width(&self, i: usize) -> f64 {
        self.breakpoints[i + 1] - self.breakpoints[i]
    }

    pub fn max_width(&self) -> f64 {
        (0..self.n_slabs()).map(|i| self.width(i)).fold(0.0, f64::max)
    }

    /// Index of the slab containing `t` under the right-closed convention.
    /// `t = 0` maps to slab 0.
    pub fn locate(&self, t: f64) -> Result<usize> {
        let t_end = self.t_end();
        if !(0.0..=t_end).contains(&t) {
            return Err(DgError::OutOfDomain { t, t_end });
        }
        // first breakpoint >= t, minus one
        let idx = self.breakpoints.partition_point(|&b| b < t);
        Ok(idx.saturating_sub(1).min(self.n_slabs() - 1))
    }

    /// Map `t` in slab `i` to the reference coordinate in `[0, 1]`.
    pub fn to_local(&self, i: usize, t: f64) -> f64 {
        let (a, b) = self.slab(i);
        (t - a) / (b - a)
    }
}
