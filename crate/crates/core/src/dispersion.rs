//! Kramers–Kronig rotation of real-frequency loss functions onto the
//! imaginary frequency axis, `ε(iζ) = 1 + (2/π) ∫ ω ε″(ω)/(ζ² + ω²) dω`.
//!
//! The superconductor transform is organized around the *difference*
//! `ε″_s,reg - ε″_n`, which vanishes above a few gap widths: the Drude part
//! is added back in closed form and the condensate delta term appears as
//! `(2/π)·S(T)/ζ²` with `S(T)` from the sum rule.  Defining the pair `(W, S)`
//! from the same truncated difference makes the two contributions cancel
//! exactly at large ζ, which is what lets the Lifshitz integral stop at a
//! cutoff of order 10·k·T_c/ħ.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{domain, numeric, Result};
#[cfg(not(feature = "std"))]
use crate::fmath::FloatExt;
use crate::interp::MonotoneCubic;
use crate::materials::{
    default_omega_max, sum_rule_deficit_of, DrudeParameters, GKernelVariant, MattisBardeenLoss,
    SuperconductorParameters,
};
use crate::quad::{adaptive_scalar, QuadratureSpec, Tolerance};

use core::f64::consts::{FRAC_PI_2, PI};

/// A non-negative loss function ε″(ω) with a hint about where it lives.
pub struct LossFunction<F> {
    evaluator: F,
    /// (ω_low, ω_high): the region of numerical significance; the transform
    /// integrates up to ω_high and seeds its subdivisions at ω_low.
    support: (f64, f64),
    /// Assume ε″ ~ A/ω³ beyond ω_high and add that tail in closed form.
    inverse_cube_tail: bool,
}

impl<F: Fn(f64) -> Result<f64>> LossFunction<F> {
    /// Loss with compact support: nothing is integrated beyond `ω_high`.
    pub fn new(evaluator: F, support: (f64, f64)) -> Self {
        LossFunction {
            evaluator,
            support,
            inverse_cube_tail: false,
        }
    }

    /// Loss with a Drude-like `1/ω³` decay beyond `ω_high`.
    pub fn with_inverse_cube_tail(evaluator: F, support: (f64, f64)) -> Self {
        LossFunction {
            evaluator,
            support,
            inverse_cube_tail: true,
        }
    }

    pub fn eval(&self, omega: f64) -> Result<f64> {
        (self.evaluator)(omega)
    }
}

// Tail ∫_{ωh}^∞ ω (A/ω³)/(ζ²+ω²) dω = (A/ζ²)(1/ωh - atan(ζ/ωh)/ζ); the
// series form takes over when the bracket cancels.
fn inverse_cube_tail_integral(amplitude: f64, omega_high: f64, zeta: f64) -> f64 {
    let r = zeta / omega_high;
    if r < 1e-2 {
        let r2 = r * r;
        amplitude / (omega_high * omega_high * omega_high)
            * (1.0 / 3.0 - r2 / 5.0 + r2 * r2 / 7.0 - r2 * r2 * r2 / 9.0)
    } else {
        amplitude / (zeta * zeta) * (1.0 / omega_high - r.atan() / zeta)
    }
}

/// Kramers–Kronig transform of a loss function onto the imaginary axis.
///
/// Substituting `ω = ζ·tan θ` absorbs the kernel exactly:
/// `ε(iζ) = 1 + (2/π) ∫₀^{θ_high} tan θ · ε″(ζ tan θ) dθ  (+ tail)`.
pub fn kk_transform<F>(loss: &LossFunction<F>, zeta: f64, spec: &QuadratureSpec) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(zeta > 0.0) {
        return Err(domain("kk_transform: zeta must be > 0 rad/s"));
    }
    spec.validate()?;
    let (omega_low, omega_high) = loss.support;
    if !(omega_high > 0.0 && omega_high > omega_low) {
        return Err(domain("kk_transform: invalid support hint"));
    }

    let theta_high = (omega_high / zeta).atan();
    // seeds outside (0, theta_high) are dropped by the integrator
    let mut seeds = [0.0_f64; 4];
    let mut n_seeds = 0;
    for omega in [
        omega_low.max(0.0),
        (omega_low.abs().max(1e-300) * omega_high).sqrt(),
        0.1 * omega_high,
        zeta, // θ = π/4
    ] {
        if omega > 0.0 {
            seeds[n_seeds] = (omega / zeta).atan();
            n_seeds += 1;
        }
    }

    let out = adaptive_scalar(
        |theta| {
            let t = theta.tan();
            Ok(t * loss.eval(zeta * t)?)
        },
        0.0,
        theta_high,
        &seeds[..n_seeds],
        Tolerance {
            rel: spec.kk_rel_tol,
            abs: 0.0,
        },
        spec.max_nodes,
    )?;
    if !out.converged {
        return Err(numeric(format!(
            "kk_transform did not converge at zeta = {zeta:e} rad/s: error {:e} after {} evals over {} intervals",
            out.error, out.evals, out.intervals
        )));
    }

    let mut integral = out.value[0];
    if loss.inverse_cube_tail {
        let amplitude = loss.eval(omega_high)? * omega_high.powi(3);
        integral += inverse_cube_tail_integral(amplitude, omega_high, zeta);
    }
    Ok(1.0 + 2.0 / PI * integral)
}

// KK integral of the loss difference ε″_s,reg - ε″_n up to ω_max, in the
// tan-θ variable.  The difference behaves like (C_s - C_n)/ω at small ω, so
// tan θ · d(ζ tan θ) stays finite at θ = 0.
fn difference_kk_integral(
    mb: &MattisBardeenLoss,
    zeta: f64,
    omega_max: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let normal = *mb.normal_state();
    let edge = mb.gap_edge();
    let theta_high = (omega_max / zeta).atan();
    let mut seeds = [0.0_f64; 5];
    let mut n_seeds = 0;
    for omega in [0.3 * edge, edge, 3.0 * edge, zeta, 0.3 * omega_max] {
        if omega > 0.0 && omega < omega_max {
            seeds[n_seeds] = (omega / zeta).atan();
            n_seeds += 1;
        }
    }
    let out = adaptive_scalar(
        |theta| {
            let tan = theta.tan();
            let omega = zeta * tan;
            Ok(tan * (mb.eval(omega)? - normal.loss(omega)?))
        },
        0.0,
        theta_high,
        &seeds[..n_seeds],
        Tolerance {
            rel: spec.kk_rel_tol,
            abs: 0.0,
        },
        spec.max_nodes,
    )?;
    if !out.converged {
        return Err(numeric(format!(
            "superconductor KK difference integral did not converge at zeta = {zeta:e} rad/s: \
             error {:e} after {} evals",
            out.error, out.evals
        )));
    }
    Ok(out.value[0])
}

/// Superconducting-film permittivity on the imaginary axis, computed
/// directly (one difference transform per call):
/// `ε_s(iζ) = ε_n(iζ) + (2/π)·I_diff(ζ) + (2/π)·S(T)/ζ²`.
pub fn superconductor_imag_axis(
    zeta: f64,
    t: f64,
    params: &SuperconductorParameters,
    spec: &QuadratureSpec,
    variant: GKernelVariant,
) -> Result<f64> {
    if !(zeta > 0.0) {
        return Err(domain("superconductor_imag_axis: zeta must be > 0 rad/s"));
    }
    let mb = MattisBardeenLoss::new(params, t, variant)?;
    let eps_n = params.normal_state.eps_imag_axis(zeta)?;
    if mb.gap_ev() == 0.0 {
        return Ok(eps_n);
    }
    let omega_max = default_omega_max(params);
    let s_weight = sum_rule_deficit_of(&mb, omega_max)?;
    let diff = difference_kk_integral(&mb, zeta, omega_max, spec)?;
    Ok(eps_n + 2.0 / PI * (diff + s_weight / (zeta * zeta)))
}

/// Tabulated `ε_s(iζ)` for one `(t, τ_n)` point.
///
/// The table stores `W(ζ) = ζ·(2/π)·I_diff(ζ)` on a log-spaced grid (`W` is
/// bounded at both ends, unlike the difference itself) and reconstructs
/// `ε_s(iζ) = ε_n(iζ) + W(ζ)/ζ + (2/π)·S(T)/ζ²` by monotone cubic
/// interpolation in ln ζ.  Build is the single-threaded warm-up pass; the
/// finished table is immutable and safe to share across threads.
#[derive(Debug, Clone)]
pub struct ScPermittivityTable {
    normal: DrudeParameters,
    gap_ev: f64,
    s_weight: f64,
    t: f64,
    // None when the gap is closed and ε_s ≡ ε_n
    w_interp: Option<MonotoneCubic>,
    zeta_min: f64,
    zeta_max: f64,
}

/// Grid density of the ζ table.
const POINTS_PER_DECADE: usize = 16;

impl ScPermittivityTable {
    /// Builds the table over `[zeta_min, zeta_max]` (rad/s).
    pub fn build(
        params: &SuperconductorParameters,
        t: f64,
        spec: &QuadratureSpec,
        zeta_min: f64,
        zeta_max: f64,
        variant: GKernelVariant,
    ) -> Result<Self> {
        spec.validate()?;
        if !(zeta_min > 0.0 && zeta_max > zeta_min) {
            return Err(domain("ScPermittivityTable: invalid zeta range"));
        }
        let mb = MattisBardeenLoss::new(params, t, variant)?;
        let normal = params.normal_state;
        if mb.gap_ev() == 0.0 {
            return Ok(ScPermittivityTable {
                normal,
                gap_ev: 0.0,
                s_weight: 0.0,
                t,
                w_interp: None,
                zeta_min,
                zeta_max,
            });
        }

        let omega_max = default_omega_max(params);
        let s_weight = sum_rule_deficit_of(&mb, omega_max)?;

        let decades = (zeta_max / zeta_min).ln() / core::f64::consts::LN_10;
        let n = (decades * POINTS_PER_DECADE as f64) as usize + 2;
        let ln_min = zeta_min.ln();
        let ln_max = zeta_max.ln();
        let mut ln_zetas = Vec::with_capacity(n);
        let mut w_values = Vec::with_capacity(n);
        for i in 0..n {
            let ln_z = ln_min + (ln_max - ln_min) * i as f64 / (n - 1) as f64;
            let zeta = ln_z.exp();
            let diff = difference_kk_integral(&mb, zeta, omega_max, spec)?;
            ln_zetas.push(ln_z);
            w_values.push(zeta * 2.0 / PI * diff);
        }
        let w_interp = MonotoneCubic::new(ln_zetas, w_values)?;

        Ok(ScPermittivityTable {
            normal,
            gap_ev: mb.gap_ev(),
            s_weight,
            t,
            w_interp: Some(w_interp),
            zeta_min,
            zeta_max,
        })
    }

    pub fn relative_temperature(&self) -> f64 {
        self.t
    }

    pub fn gap_ev(&self) -> f64 {
        self.gap_ev
    }

    /// Condensate spectral weight S(T) in (rad/s)².
    pub fn s_weight(&self) -> f64 {
        self.s_weight
    }

    pub fn zeta_range(&self) -> (f64, f64) {
        (self.zeta_min, self.zeta_max)
    }

    pub fn normal_state(&self) -> &DrudeParameters {
        &self.normal
    }

    /// `ε_s(iζ)` from the table; ζ must lie within the built range.
    pub fn eps(&self, zeta: f64) -> Result<f64> {
        let eps_n = self.normal.eps_imag_axis(zeta)?;
        match &self.w_interp {
            None => Ok(eps_n),
            Some(interp) => {
                let w = interp.eval(zeta.ln())?;
                Ok(eps_n + w / zeta + 2.0 / PI * self.s_weight / (zeta * zeta))
            }
        }
    }
}
