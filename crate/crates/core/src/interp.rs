//! Shape-preserving piecewise-cubic interpolation (Fritsch–Carlson).
//!
//! Used to cache expensive imaginary-axis permittivities on a fixed grid and
//! to tabulate the BCS gap curve.  The scheme never overshoots the data, so
//! monotone inputs stay monotone.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{domain, Result};

/// Monotone cubic interpolant over a strictly increasing abscissa grid.
#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    xs: Vec<f64>,
    ys: Vec<f64>,
    slopes: Vec<f64>,
}

impl MonotoneCubic {
    /// Builds the interpolant; `xs` must be strictly increasing and finite,
    /// with at least two points.
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(domain("MonotoneCubic: xs/ys length mismatch"));
        }
        if xs.len() < 2 {
            return Err(domain("MonotoneCubic: need at least two points"));
        }
        for w in xs.windows(2) {
            if !(w[1] > w[0]) {
                return Err(domain("MonotoneCubic: xs must be strictly increasing"));
            }
        }
        if xs.iter().chain(ys.iter()).any(|v| !v.is_finite()) {
            return Err(domain("MonotoneCubic: non-finite input"));
        }

        let n = xs.len();
        let mut h = vec![0.0; n - 1];
        let mut d = vec![0.0; n - 1];
        for i in 0..n - 1 {
            h[i] = xs[i + 1] - xs[i];
            d[i] = (ys[i + 1] - ys[i]) / h[i];
        }

        let mut m = vec![0.0; n];
        if n == 2 {
            m[0] = d[0];
            m[1] = d[0];
        } else {
            for i in 1..n - 1 {
                if d[i - 1] * d[i] <= 0.0 {
                    m[i] = 0.0;
                } else {
                    let w1 = 2.0 * h[i] + h[i - 1];
                    let w2 = h[i] + 2.0 * h[i - 1];
                    m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
                }
            }
            m[0] = edge_slope(h[0], h[1], d[0], d[1]);
            m[n - 1] = edge_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
        }

        Ok(MonotoneCubic { xs, ys, slopes: m })
    }

    pub fn x_min(&self) -> f64 {
        self.xs[0]
    }

    pub fn x_max(&self) -> f64 {
        *self.xs.last().unwrap()
    }

    /// Evaluates the interpolant; `x` must lie within the grid range.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(x >= self.x_min() && x <= self.x_max()) {
            return Err(domain(format!(
                "MonotoneCubic: x = {x:e} outside [{:e}, {:e}]",
                self.x_min(),
                self.x_max()
            )));
        }
        // index of the segment containing x
        let i = match self.xs.binary_search_by(|v| v.total_cmp(&x)) {
            Ok(i) => {
                if i == self.xs.len() - 1 {
                    return Ok(self.ys[i]);
                }
                i
            }
            Err(i) => i - 1,
        };
        let h = self.xs[i + 1] - self.xs[i];
        let t = (x - self.xs[i]) / h;
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        Ok(h00 * self.ys[i] + h10 * h * self.slopes[i] + h01 * self.ys[i + 1] + h11 * h * self.slopes[i + 1])
    }
}

// One-sided three-point slope estimate with the standard shape-preserving
// clamps (h0/d0 belong to the boundary segment).
fn edge_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    let m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if m * d0 <= 0.0 {
        0.0
    } else if d0 * d1 <= 0.0 && m.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        m
    }
}
