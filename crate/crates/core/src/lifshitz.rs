//! The Casimir free-energy difference between the two film states:
//!
//! ```text
//! ΔE = ħA/(4π²c²) ∫₁^∞ p dp ∫₀^{Λ k T_c/ħ} dζ ζ² ln[(Q_n^TE Q_n^TM)/(Q_s^TE Q_s^TM)]
//! ```
//!
//! The ζ axis is integrated in ln ζ over log-spaced panels down to
//! `ζ_min = 10⁻⁶ k T_c/ħ` (the remaining sliver is bounded analytically);
//! the p axis is mapped to a finite interval through `p = e^u` (or
//! `p = 1 + tan θ`), truncated where the certified envelope `~e^{-2ζpL/c}`
//! falls below e⁻⁵⁰.  TE and TM parts ride through the same quadrature, so
//! `total = te + tm` holds to rounding.

use alloc::format;
use alloc::vec::Vec;

use crate::cavity::{integrand, CavityGeometry, LayerPermittivities};
use crate::dispersion::ScPermittivityTable;
use crate::error::{domain, numeric, Result};
#[cfg(not(feature = "std"))]
use crate::fmath::FloatExt;
use crate::materials::{DrudeParameters, GKernelVariant, SuperconductorParameters};
use crate::quad::{adaptive, PTransform, QuadratureSpec, Tolerance};
use crate::units::{C_CM_S, HBAR_ERG_S, HBAR_EV_S, K_BOLTZMANN_EV_K};

use core::f64::consts::PI;

/// Result of one ΔE evaluation.
#[derive(Debug, Clone, Copy)]
pub struct DeltaEnergyResult {
    /// ΔE = E_n - E_s in erg (positive when the superconducting state binds
    /// more strongly).
    pub total_erg: f64,
    pub te_part_erg: f64,
    pub tm_part_erg: f64,
    pub estimated_error_erg: f64,
    /// Outer-axis integrand evaluations (each one inner p integral).
    pub zeta_evals: usize,
    /// Total cavity-integrand evaluations.
    pub p_evals: usize,
    pub cutoff_used: f64,
}

/// Ideal perfectly conducting plates: E = -π²·ħc·A/(720·L³).
pub fn ideal_casimir_energy(area_cm2: f64, gap_cm: f64) -> Result<f64> {
    if !(area_cm2 > 0.0 && gap_cm > 0.0) {
        return Err(domain("ideal_casimir_energy: area and gap must be > 0"));
    }
    Ok(-PI * PI * HBAR_ERG_S * C_CM_S * area_cm2 / (720.0 * gap_cm * gap_cm * gap_cm))
}

/// Lower end of the ζ integration, as a fraction of k·T_c/ħ.
const ZETA_MIN_FACTOR: f64 = 1e-6;
/// The p axis is truncated where 2ζpL/c has grown by this many e-folds.
const P_TAIL_EFOLD: f64 = 50.0;

fn zeta_thermal_scale(tc_k: f64) -> f64 {
    K_BOLTZMANN_EV_K * tc_k / HBAR_EV_S
}

// One inner p integral at fixed ζ; returns [total, te, tm], its error
// estimate (quadrature + certified truncation tail) and the eval count.
fn inner_p_integral(
    zeta: f64,
    geom: &CavityGeometry,
    layers: &LayerPermittivities<'_>,
    spec: &QuadratureSpec,
    tol: Tolerance,
) -> Result<([f64; 3], f64, usize)> {
    let alpha = 2.0 * zeta * geom.gap_width_cm / C_CM_S;
    let p_max = 1.0 + P_TAIL_EFOLD / alpha;

    // physical breakpoints: the exponential knee p ~ 1/alpha and the K
    // crossover p ~ sqrt(eps - 1) of the most polarizable layer
    let eps_big = layers
        .eps_mirror(zeta)?
        .max(layers.eps_film(zeta, crate::cavity::FilmState::Superconducting)?);
    let p_knee = 1.0 / alpha;
    let p_cross = (eps_big - 1.0).sqrt();

    let out = match spec.p_transform {
        PTransform::Exponential => {
            let u_max = p_max.ln();
            let mut seeds = [0.0_f64; 6];
            let mut n = 0;
            for p in [p_knee, p_cross, p_cross * 30.0] {
                if p > 1.0 {
                    seeds[n] = p.ln();
                    n += 1;
                }
            }
            for f in [0.25, 0.5, 0.75] {
                seeds[n] = f * u_max;
                n += 1;
            }
            adaptive::<3, _>(
                |u| {
                    let p = u.exp();
                    let weight = p * p;
                    let parts = integrand(zeta, p, geom, layers)?;
                    Ok([weight * parts.total, weight * parts.te, weight * parts.tm])
                },
                0.0,
                u_max,
                &seeds[..n],
                tol,
                spec.max_nodes,
            )?
        }
        PTransform::Tangent => {
            let theta_max = (p_max - 1.0).atan();
            let mut seeds = [0.0_f64; 5];
            let mut n = 0;
            for p in [p_knee, p_cross, p_cross * 30.0] {
                if p > 1.0 {
                    seeds[n] = (p - 1.0).atan();
                    n += 1;
                }
            }
            for f in [0.5, 0.9] {
                seeds[n] = f * theta_max;
                n += 1;
            }
            adaptive::<3, _>(
                |theta| {
                    let tan = theta.tan();
                    let p = 1.0 + tan;
                    let weight = p * (1.0 + tan * tan);
                    let parts = integrand(zeta, p, geom, layers)?;
                    Ok([weight * parts.total, weight * parts.te, weight * parts.tm])
                },
                0.0,
                theta_max,
                &seeds[..n],
                tol,
                spec.max_nodes,
            )?
        }
    };
    if !out.converged {
        return Err(numeric(format!(
            "inner p integral did not converge at zeta = {zeta:e} rad/s: \
             error {:e} after {} evals over {} intervals",
            out.error, out.evals, out.intervals
        )));
    }

    // certified truncation bound: |ln ratio| <~ 16 e^{-alpha p} beyond p_max
    let zeta2 = zeta * zeta;
    let tail = 16.0 * zeta2 * (-alpha * p_max).exp() * (p_max / alpha + 1.0 / (alpha * alpha));

    Ok((out.value, out.error + tail, out.evals))
}

/// ΔE over an already-built permittivity table (shared across geometries and
/// cutoffs for the same `(t, τ_n)` point).
pub fn delta_casimir_energy_with(
    layers: &LayerPermittivities<'_>,
    tc_k: f64,
    geom: &CavityGeometry,
    spec: &QuadratureSpec,
) -> Result<DeltaEnergyResult> {
    spec.validate()?;
    if !(tc_k > 0.0) {
        return Err(domain("delta_casimir_energy: T_c must be > 0 K"));
    }
    let scale = zeta_thermal_scale(tc_k);
    let zeta_min = ZETA_MIN_FACTOR * scale;
    let zeta_max = spec.cutoff_lambda * scale;
    let (table_lo, table_hi) = layers.sc_table().zeta_range();
    if table_lo > zeta_min || table_hi < zeta_max {
        return Err(domain(format!(
            "permittivity table covers [{table_lo:e}, {table_hi:e}] rad/s \
             but the integral needs [{zeta_min:e}, {zeta_max:e}]"
        )));
    }

    let mut p_evals = 0usize;
    let mut zeta_evals = 0usize;

    // pre-pass: probe the integrand scale on a fixed log grid so that the
    // absolute floors (and hence the refinement) do not depend on traversal
    // order
    let n_probe = 9;
    let mut f_scale = 0.0_f64;
    let mut f_at_zeta_min = 0.0_f64;
    for i in 0..n_probe {
        let frac = i as f64 / (n_probe - 1) as f64;
        let zeta = zeta_min * (zeta_max / zeta_min).powf(frac);
        let (value, _, evals) = inner_p_integral(
            zeta,
            geom,
            layers,
            spec,
            Tolerance { rel: 1e-2, abs: 0.0 },
        )?;
        p_evals += evals;
        zeta_evals += 1;
        let f = (zeta * zeta * zeta * value[0]).abs();
        if i == 0 {
            f_at_zeta_min = f;
        }
        f_scale = f_scale.max(f);
    }

    // inner tolerance: one third of the budget, with an absolute floor tied
    // to the probed scale so negligible ζ regions converge cheaply
    let floor_f = f_scale * spec.rel_tol / 30.0;

    let v_min = zeta_min.ln();
    let v_max = zeta_max.ln();
    let mut seeds = [0.0_f64; 8];
    for (i, m) in [1e-5, 1e-4, 1e-3, 1e-2, 0.1, 0.5, 2.0, 5.0].iter().enumerate() {
        seeds[i] = (m * scale).ln();
    }

    let out = adaptive::<3, _>(
        |v| {
            let zeta = v.exp();
            let zeta3 = zeta * zeta * zeta;
            let tol = Tolerance {
                rel: spec.rel_tol / 3.0,
                abs: floor_f / zeta3,
            };
            let (value, _, evals) = inner_p_integral(zeta, geom, layers, spec, tol)?;
            p_evals += evals;
            zeta_evals += 1;
            Ok([zeta3 * value[0], zeta3 * value[1], zeta3 * value[2]])
        },
        v_min,
        v_max,
        &seeds,
        Tolerance {
            rel: spec.rel_tol,
            abs: floor_f * (v_max - v_min) / 10.0,
        },
        spec.max_nodes,
    )?;
    if !out.converged {
        return Err(numeric(format!(
            "zeta integral did not converge: error {:e} on value {:e} after {} evals",
            out.error, out.value[0], out.evals
        )));
    }

    let prefactor =
        HBAR_ERG_S * geom.plate_area_cm2 / (4.0 * PI * PI * C_CM_S * C_CM_S);
    let total_erg = prefactor * out.value[0];
    let te_part_erg = prefactor * out.value[1];
    let tm_part_erg = prefactor * out.value[2];

    // error budget: outer quadrature + slaved inner tolerances + the
    // un-integrated [0, ζ_min] sliver (integrand ~ ζ² there, so the sliver
    // is bounded by its ln-space value at ζ_min)
    let inner_budget = spec.rel_tol / 3.0 * out.value[0].abs() + floor_f * (v_max - v_min);
    let sliver = f_at_zeta_min;
    let estimated_error_erg = prefactor * (out.error + inner_budget + sliver);

    if estimated_error_erg > 10.0 * spec.rel_tol * total_erg.abs() {
        return Err(numeric(format!(
            "ΔE error estimate {estimated_error_erg:e} erg exceeds budget on total {total_erg:e} erg \
             ({zeta_evals} zeta nodes, {p_evals} integrand evals)"
        )));
    }

    Ok(DeltaEnergyResult {
        total_erg,
        te_part_erg,
        tm_part_erg,
        estimated_error_erg,
        zeta_evals,
        p_evals,
        cutoff_used: spec.cutoff_lambda,
    })
}

/// Builds the permittivity table for `(t, τ_n)` and evaluates ΔE.
pub fn delta_casimir_energy(
    t: f64,
    geom: &CavityGeometry,
    sc: &SuperconductorParameters,
    mirror: &DrudeParameters,
    spec: &QuadratureSpec,
    variant: GKernelVariant,
) -> Result<DeltaEnergyResult> {
    if !(t > 0.0 && t <= 1.0) {
        return Err(domain(format!("delta_casimir_energy: t = {t} outside (0, 1]")));
    }
    let table = build_table(t, sc, spec, spec.cutoff_lambda, variant)?;
    let layers = LayerPermittivities::new(mirror, &sc.normal_state, &table);
    delta_casimir_energy_with(&layers, sc.critical_temperature_k, geom, spec)
}

/// Permittivity table sized for a Lifshitz run up to `max_lambda`.
pub fn build_table(
    t: f64,
    sc: &SuperconductorParameters,
    spec: &QuadratureSpec,
    max_lambda: f64,
    variant: GKernelVariant,
) -> Result<ScPermittivityTable> {
    let scale = zeta_thermal_scale(sc.critical_temperature_k);
    ScPermittivityTable::build(
        sc,
        t,
        spec,
        0.5 * ZETA_MIN_FACTOR * scale,
        1.05 * max_lambda * scale,
        variant,
    )
}

/// ΔE for several cutoffs Λ, sharing one permittivity table.
#[derive(Debug, Clone)]
pub struct CutoffScan {
    pub points: Vec<(f64, DeltaEnergyResult)>,
    /// (max - min)/|mean| of ΔE over the scanned cutoffs.
    pub max_relative_spread: f64,
}

pub fn cutoff_sensitivity(
    t: f64,
    geom: &CavityGeometry,
    sc: &SuperconductorParameters,
    mirror: &DrudeParameters,
    lambdas: &[f64],
    spec: &QuadratureSpec,
    variant: GKernelVariant,
) -> Result<CutoffScan> {
    if lambdas.is_empty() {
        return Err(domain("cutoff_sensitivity: need at least one cutoff"));
    }
    let mut max_lambda: f64 = 0.0;
    for &l in lambdas {
        if !(5.0..=30.0).contains(&l) {
            return Err(domain(format!("cutoff_sensitivity: lambda {l} outside [5, 30]")));
        }
        max_lambda = max_lambda.max(l);
    }
    if !(t > 0.0 && t <= 1.0) {
        return Err(domain(format!("cutoff_sensitivity: t = {t} outside (0, 1]")));
    }

    let table = build_table(t, sc, spec, max_lambda, variant)?;
    let layers = LayerPermittivities::new(mirror, &sc.normal_state, &table);

    let mut points = Vec::with_capacity(lambdas.len());
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut sum = 0.0;
    for &lambda in lambdas {
        let mut spec_l = *spec;
        spec_l.cutoff_lambda = lambda;
        let r = delta_casimir_energy_with(&layers, sc.critical_temperature_k, geom, &spec_l)?;
        lo = lo.min(r.total_erg);
        hi = hi.max(r.total_erg);
        sum += r.total_erg;
        points.push((lambda, r));
    }
    let mean = sum / lambdas.len() as f64;
    let max_relative_spread = if hi == lo { 0.0 } else { (hi - lo) / mean.abs() };

    Ok(CutoffScan {
        points,
        max_relative_spread,
    })
}

/// Fractions of ΔE carried by each polarization.
#[derive(Debug, Clone, Copy)]
pub struct ModeSplit {
    pub te_fraction: f64,
    pub tm_fraction: f64,
}

/// Splits an existing result into TE/TM fractions of the total.
pub fn mode_split_of(result: &DeltaEnergyResult) -> Result<ModeSplit> {
    let total = result.total_erg;
    if total == 0.0 || total.abs() < 10.0 * result.estimated_error_erg {
        return Err(numeric(
            "mode_split: total too close to zero for well-defined fractions",
        ));
    }
    Ok(ModeSplit {
        te_fraction: result.te_part_erg / total,
        tm_fraction: result.tm_part_erg / total,
    })
}

/// Computes ΔE and splits it into TE/TM fractions.
pub fn mode_split(
    t: f64,
    geom: &CavityGeometry,
    sc: &SuperconductorParameters,
    mirror: &DrudeParameters,
    spec: &QuadratureSpec,
    variant: GKernelVariant,
) -> Result<ModeSplit> {
    let result = delta_casimir_energy(t, geom, sc, mirror, spec, variant)?;
    mode_split_of(&result)
}
