//! Power-law characterization of sweep results: ordinary least squares in
//! log-log space, with the RMS log-residual reported so "approximately a
//! power law" can be quantified.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{domain, Result};
#[cfg(not(feature = "std"))]
use crate::fmath::FloatExt;
use crate::materials::SuperconductorParameters;

/// Result of one log-log fit `y ≈ prefactor · x^exponent`.
#[derive(Debug, Clone)]
pub struct ScalingFit {
    pub exponent: f64,
    pub prefactor: f64,
    /// RMS of the residuals of ln(y) against the fit.
    pub residual: f64,
    pub samples: Vec<(f64, f64)>,
}

/// Least-squares power-law fit through strictly positive samples with
/// strictly increasing abscissae.
pub fn fit_power_law(samples: &[(f64, f64)]) -> Result<ScalingFit> {
    if samples.len() < 2 {
        return Err(domain(format!(
            "fit_power_law: need at least 2 samples, got {}",
            samples.len()
        )));
    }
    for w in samples.windows(2) {
        if !(w[1].0 > w[0].0) {
            return Err(domain("fit_power_law: x values must be strictly increasing"));
        }
    }
    if samples.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0)) {
        return Err(domain("fit_power_law: samples must be strictly positive"));
    }

    let n = samples.len() as f64;
    let logs: Vec<(f64, f64)> = samples.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for &(lx, ly) in &logs {
        sxx += (lx - mean_x) * (lx - mean_x);
        sxy += (lx - mean_x) * (ly - mean_y);
    }
    let exponent = sxy / sxx;
    let intercept = mean_y - exponent * mean_x;
    let mut ss = 0.0;
    for &(lx, ly) in &logs {
        let r = ly - (intercept + exponent * lx);
        ss += r * r;
    }
    Ok(ScalingFit {
        exponent,
        prefactor: intercept.exp(),
        residual: (ss / n).sqrt(),
        samples: samples.to_vec(),
    })
}

/// Impurity parameter y₀ = ħ/(2·τ_n·Δ(0)) of the film.
pub fn impurity_parameter(sc: &SuperconductorParameters) -> f64 {
    sc.impurity_parameter()
}

/// The window 1 < y₀ < 30 in which the single power-law characterization is
/// quoted; values outside deserve a warning, not an error.
pub fn impurity_in_validity_range(y0: f64) -> bool {
    y0 > 1.0 && y0 < 30.0
}
