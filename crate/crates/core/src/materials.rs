//! Real-frequency loss functions of the cavity media.
//!
//! The mirrors and the normal-state film are Drude metals.  The
//! superconducting film follows the long-wavelength Mattis–Bardeen response
//! built on a numerically solved weak-coupling BCS gap: a regular absorptive
//! part `ε″_s,reg(ω)` above threshold plus thermally assisted absorption, and
//! a zero-frequency condensate term whose spectral weight is fixed by the
//! oscillator-strength sum rule (see [`sum_rule_deficit`]).
//!
//! Internal units: energies in eV, frequencies in rad/s, times in s.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{consistency, domain, numeric, Result};
use crate::interp::MonotoneCubic;
#[cfg(not(feature = "std"))]
use crate::fmath::FloatExt;
use crate::quad::{adaptive_scalar, Tolerance};
use crate::units::{HBAR_EV_S, K_BOLTZMANN_EV_K};

/// Weak-coupling BCS ratio Δ(0)/(k·T_c) = π·e^{-γ}.
pub const BCS_GAP_RATIO: f64 = 1.763_877_2;

/// Drude metal: plasma energy ħΩ (eV) and collision time τ (s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrudeParameters {
    pub plasma_energy_ev: f64,
    pub scattering_time_s: f64,
}

impl DrudeParameters {
    pub fn new(plasma_energy_ev: f64, scattering_time_s: f64) -> Result<Self> {
        if !(plasma_energy_ev > 0.0) {
            return Err(domain("DrudeParameters: plasma energy must be > 0 eV"));
        }
        if !(scattering_time_s > 0.0) {
            return Err(domain("DrudeParameters: scattering time must be > 0 s"));
        }
        Ok(DrudeParameters {
            plasma_energy_ev,
            scattering_time_s,
        })
    }

    /// Plasma frequency Ω (rad/s).
    pub fn plasma_frequency(&self) -> f64 {
        self.plasma_energy_ev / HBAR_EV_S
    }

    /// Imaginary part of the Drude permittivity at a real frequency:
    /// `ε″(ω) = Ω² / (ω τ (ω² + 1/τ²))`.
    pub fn loss(&self, omega: f64) -> Result<f64> {
        if !(omega > 0.0) {
            return Err(domain("drude_loss: omega must be > 0 rad/s"));
        }
        let cap_omega = self.plasma_frequency();
        let inv_tau = 1.0 / self.scattering_time_s;
        Ok(cap_omega * cap_omega / (omega * self.scattering_time_s * (omega * omega + inv_tau * inv_tau)))
    }

    /// Drude permittivity on the imaginary frequency axis (closed form):
    /// `ε(iζ) = 1 + Ω² / (ζ (ζ + 1/τ))`.
    pub fn eps_imag_axis(&self, zeta: f64) -> Result<f64> {
        if !(zeta > 0.0) {
            return Err(domain("drude_imag_axis: zeta must be > 0 rad/s"));
        }
        let cap_omega = self.plasma_frequency();
        let inv_tau = 1.0 / self.scattering_time_s;
        Ok(1.0 + cap_omega * cap_omega / (zeta * (zeta + inv_tau)))
    }
}

/// Imaginary Drude permittivity, free-function form.
pub fn drude_loss(omega: f64, params: &DrudeParameters) -> Result<f64> {
    params.loss(omega)
}

/// Drude permittivity on the imaginary axis, free-function form.
pub fn drude_imag_axis(zeta: f64, params: &DrudeParameters) -> Result<f64> {
    params.eps_imag_axis(zeta)
}

/// BCS superconducting film: T_c, zero-temperature gap, and the
/// normal-state Drude parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperconductorParameters {
    pub critical_temperature_k: f64,
    pub gap_at_zero_ev: f64,
    pub normal_state: DrudeParameters,
}

impl SuperconductorParameters {
    /// Constructs with an explicit zero-temperature gap.
    pub fn new(
        critical_temperature_k: f64,
        gap_at_zero_ev: f64,
        normal_state: DrudeParameters,
    ) -> Result<Self> {
        if !(critical_temperature_k > 0.0) {
            return Err(domain("SuperconductorParameters: T_c must be > 0 K"));
        }
        if !(gap_at_zero_ev > 0.0) {
            return Err(domain("SuperconductorParameters: gap must be > 0 eV"));
        }
        Ok(SuperconductorParameters {
            critical_temperature_k,
            gap_at_zero_ev,
            normal_state,
        })
    }

    /// Constructs with Δ(0) = ratio · k·T_c; the ratio must stay in the
    /// weak-coupling window [1.5, 2.0].
    pub fn with_bcs_ratio(
        critical_temperature_k: f64,
        ratio: f64,
        normal_state: DrudeParameters,
    ) -> Result<Self> {
        if !(1.5..=2.0).contains(&ratio) {
            return Err(domain(format!(
                "SuperconductorParameters: BCS ratio {ratio} outside [1.5, 2.0]"
            )));
        }
        let gap = ratio * K_BOLTZMANN_EV_K * critical_temperature_k;
        Self::new(critical_temperature_k, gap, normal_state)
    }

    /// k·T_c in eV.
    pub fn thermal_energy_at_tc_ev(&self) -> f64 {
        K_BOLTZMANN_EV_K * self.critical_temperature_k
    }

    /// Impurity parameter y₀ = ħ / (2 τ_n Δ(0)).
    pub fn impurity_parameter(&self) -> f64 {
        HBAR_EV_S / (2.0 * self.normal_state.scattering_time_s * self.gap_at_zero_ev)
    }
}

// ---------------------------------------------------------------------------
// BCS gap
// ---------------------------------------------------------------------------

// Fermi occupation 1/(e^a + 1) for a >= 0, safe against overflow.
fn fermi(a: f64) -> f64 {
    if a > 700.0 {
        0.0
    } else {
        1.0 / (a.exp() + 1.0)
    }
}

// Reduced gap-equation mismatch F(δ) = ln(1/δ) - 2 ∫₀^∞ dx f(E β)/E with
// E = √(x² + δ²) in units of Δ(0) and β = (Δ(0)/kT_c)/t evaluated at the
// self-consistent weak-coupling ratio.  F > 0 below the solution, F < 0 above.
fn gap_equation_mismatch(delta: f64, beta: f64) -> Result<f64> {
    let x_max = 60.0 / beta;
    let integral = if delta * beta > 700.0 {
        0.0
    } else {
        let seeds = [
            delta / 3.0,
            delta,
            3.0 * delta,
            1.0 / beta,
            3.0 / beta,
            10.0 / beta,
        ];
        adaptive_scalar(
            |x| {
                let e = (x * x + delta * delta).sqrt();
                Ok(fermi(beta * e) / e)
            },
            0.0,
            x_max,
            &seeds,
            Tolerance { rel: 1e-11, abs: 1e-14 },
            20_000,
        )?
        .value[0]
    };
    Ok(-delta.ln() - 2.0 * integral)
}

// Reduced gap δ(t) = Δ(T)/Δ(0) on the universal weak-coupling curve.
fn reduced_gap(t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(domain(format!("bcs_gap: t = {t} outside [0, 1]")));
    }
    if t == 0.0 {
        return Ok(1.0);
    }
    if t == 1.0 {
        return Ok(0.0);
    }
    let beta = BCS_GAP_RATIO / t;
    let mut lo = 1e-12;
    let mut hi = 1.0;
    // F(hi) < 0 always for t > 0; make sure the bracket is valid at lo.
    if gap_equation_mismatch(lo, beta)? <= 0.0 {
        return Ok(0.0);
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if gap_equation_mismatch(mid, beta)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-13 * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Temperature-dependent BCS gap Δ(T) in eV, from the weak-coupling gap
/// equation solved in reduced units and scaled by Δ(0).
pub fn bcs_gap(t: f64, params: &SuperconductorParameters) -> Result<f64> {
    Ok(params.gap_at_zero_ev * reduced_gap(t)?)
}

/// Tabulated gap curve: Δ(T) solved by bisection on a fixed `t` grid and
/// interpolated monotonically in between.
#[derive(Debug, Clone)]
pub struct GapCurve {
    ts: Vec<f64>,
    gaps_ev: Vec<f64>,
    interp: MonotoneCubic,
}

impl GapCurve {
    /// Solves the gap equation on an `n`-point uniform grid over [0, 1]
    /// (201 points is the standard resolution).
    pub fn bcs(params: &SuperconductorParameters, n: usize) -> Result<Self> {
        if n < 3 {
            return Err(domain("GapCurve: need at least 3 grid points"));
        }
        let mut ts = Vec::with_capacity(n);
        let mut gaps = Vec::with_capacity(n);
        for i in 0..n {
            let t = i as f64 / (n - 1) as f64;
            ts.push(t);
            gaps.push(params.gap_at_zero_ev * reduced_gap(t)?);
        }
        let interp = MonotoneCubic::new(ts.clone(), gaps.clone())?;
        Ok(GapCurve {
            ts,
            gaps_ev: gaps,
            interp,
        })
    }

    pub fn relative_temperatures(&self) -> &[f64] {
        &self.ts
    }

    pub fn gaps_ev(&self) -> &[f64] {
        &self.gaps_ev
    }

    /// Interpolated Δ(T) in eV.
    pub fn gap(&self, t: f64) -> Result<f64> {
        self.interp.eval(t)
    }
}

// ---------------------------------------------------------------------------
// Mattis–Bardeen kernel
// ---------------------------------------------------------------------------

/// Which second-term denominator the coherence kernel uses.
///
/// `Corrected` is the standard Mattis–Bardeen form with `(P₁+P₂)² + (ħ/τ)²`
/// in the second term and is the default everywhere; `Verbatim` repeats the
/// first-term denominator `(P₁-P₂)² + (ħ/τ)²` in both terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GKernelVariant {
    Corrected,
    Verbatim,
}

/// Coherence-factor kernel g(ω, τ_n, E) in 1/eV².
///
/// Sign convention: `P = sign(arg)·√(arg² - Δ²)`, so on the pair-breaking
/// interval (E < -Δ) `P₂` is negative and the two denominators swap roles.
pub fn g_kernel(
    e_ev: f64,
    omega: f64,
    tau_n_s: f64,
    gap_ev: f64,
    variant: GKernelVariant,
) -> Result<f64> {
    let w = HBAR_EV_S * omega;
    let p2_sq = e_ev * e_ev - gap_ev * gap_ev;
    let p1_sq = (e_ev + w) * (e_ev + w) - gap_ev * gap_ev;
    if p2_sq <= 0.0 || p1_sq <= 0.0 {
        return Err(domain(format!(
            "g_kernel: E = {e_ev:e} eV lies on or inside the gap branch points"
        )));
    }
    let p2 = e_ev.signum() * p2_sq.sqrt();
    let p1 = (e_ev + w).signum() * p1_sq.sqrt();
    let coherence = (e_ev * (e_ev + w) + gap_ev * gap_ev) / (p1 * p2);
    let eta = HBAR_EV_S / tau_n_s;
    let d1 = (p1 - p2) * (p1 - p2) + eta * eta;
    let d2 = match variant {
        GKernelVariant::Corrected => (p1 + p2) * (p1 + p2) + eta * eta,
        GKernelVariant::Verbatim => d1,
    };
    Ok((1.0 + coherence) / d1 - (1.0 - coherence) / d2)
}

/// Prepared evaluator of the regular part of the superconducting loss
/// `ε″_s,reg(ω)` at one reduced temperature.
#[derive(Debug, Clone, Copy)]
pub struct MattisBardeenLoss {
    gap_ev: f64,
    kt_ev: f64,
    eta_ev: f64,
    normal: DrudeParameters,
    variant: GKernelVariant,
}

impl MattisBardeenLoss {
    pub fn new(params: &SuperconductorParameters, t: f64, variant: GKernelVariant) -> Result<Self> {
        if !(0.0..=1.0).contains(&t) {
            return Err(domain(format!("MattisBardeenLoss: t = {t} outside [0, 1]")));
        }
        let gap_ev = bcs_gap(t, params)?;
        Ok(Self::with_gap(
            gap_ev,
            K_BOLTZMANN_EV_K * t * params.critical_temperature_k,
            params.normal_state,
            variant,
        ))
    }

    // Test/diagnostic constructor with an explicit gap and temperature.
    pub(crate) fn with_gap(
        gap_ev: f64,
        kt_ev: f64,
        normal: DrudeParameters,
        variant: GKernelVariant,
    ) -> Self {
        MattisBardeenLoss {
            gap_ev,
            kt_ev,
            eta_ev: HBAR_EV_S / normal.scattering_time_s,
            normal,
            variant,
        }
    }

    pub fn gap_ev(&self) -> f64 {
        self.gap_ev
    }

    pub fn normal_state(&self) -> &DrudeParameters {
        &self.normal
    }

    /// Angular frequency of the pair-breaking edge, 2Δ(T)/ħ.
    pub fn gap_edge(&self) -> f64 {
        2.0 * self.gap_ev / HBAR_EV_S
    }

    // occ(E/kT) - occ((E+w)/kT), stable for all argument sizes.
    fn occupation_drop(&self, e_ev: f64, w_ev: f64) -> f64 {
        let kt = self.kt_ev;
        if kt == 0.0 {
            return 0.0;
        }
        let a = e_ev / kt;
        let b = w_ev / kt;
        if b > 500.0 {
            return fermi(a);
        }
        let grown = a + b;
        if grown > 700.0 {
            // e^{a+b} overflows; the drop is occ(a) to machine precision
            return fermi(a);
        }
        b.exp_m1() / ((1.0 + (-a).exp()) * (grown.exp() + 1.0))
    }

    // -tanh(E/2kT) for E < 0, i.e. tanh(|E|/2kT); 1 in the T -> 0 limit.
    fn pair_thermal_factor(&self, abs_e_ev: f64) -> f64 {
        if self.kt_ev == 0.0 {
            1.0
        } else {
            (abs_e_ev / (2.0 * self.kt_ev)).tanh()
        }
    }

    // Second-term denominator under the configured variant.
    fn second_denominator(&self, d1: f64, p_sum_sq: f64) -> f64 {
        match self.variant {
            GKernelVariant::Corrected => p_sum_sq + self.eta_ev * self.eta_ev,
            GKernelVariant::Verbatim => d1,
        }
    }

    // Thermal (scattering) integral ∫_Δ^∞ J_T dE under E = Δ·cosh(u); the
    // substitution absorbs the inverse-square-root edge and the factor Δ·sinh u
    // cancels against 1/P₂ in the coherence term, so the integrand is finite
    // at u = 0.
    fn thermal_integral(&self, w_ev: f64, max_nodes: usize) -> Result<f64> {
        let gap = self.gap_ev;
        let kt = self.kt_ev;
        if kt == 0.0 {
            return Ok(0.0);
        }
        let e_max = gap + 30.0 * kt;
        let u_max = (e_max / gap).acosh();
        let u_thermal = (1.0 + kt / gap).acosh();
        let eta2 = self.eta_ev * self.eta_ev;
        let out = adaptive_scalar(
            |u| {
                let e = gap * u.cosh();
                let p2 = gap * u.sinh();
                let p1 = ((e + w_ev) * (e + w_ev) - gap * gap).sqrt();
                let r = e * (e + w_ev) + gap * gap;
                let d1 = (p1 - p2) * (p1 - p2) + eta2;
                let d2 = self.second_denominator(d1, (p1 + p2) * (p1 + p2));
                let drop = 2.0 * self.occupation_drop(e, w_ev);
                Ok(drop * ((p2 + r / p1) / d1 + (r / p1 - p2) / d2))
            },
            0.0,
            u_max,
            &[
                u_thermal.min(0.9 * u_max),
                u_max / 64.0,
                u_max / 16.0,
                u_max / 4.0,
            ],
            Tolerance { rel: 1e-9, abs: 0.0 },
            max_nodes,
        )?;
        Ok(out.value[0])
    }

    // Pair-breaking integral ∫_{Δ-ħω}^{-Δ} J_D dE for ħω > 2Δ, split at the
    // midpoint E = -ħω/2 with a cosh substitution from each edge.
    fn pair_integral(&self, w_ev: f64, max_nodes: usize) -> Result<f64> {
        let gap = self.gap_ev;
        if w_ev <= 2.0 * gap {
            return Ok(0.0);
        }
        let u_m = (w_ev / (2.0 * gap)).acosh();
        if u_m == 0.0 {
            return Ok(0.0);
        }
        let eta2 = self.eta_ev * self.eta_ev;
        let seeds = [u_m / 64.0, u_m / 16.0, u_m / 4.0];

        // upper half: E = -Δ·cosh u from -Δ down to -ħω/2; |P₂| cancels
        let upper = adaptive_scalar(
            |u| {
                let abs_e = gap * u.cosh();
                let abs_p2 = gap * u.sinh();
                let rest = w_ev - abs_e; // = E + ħω > 0
                let p1 = (rest * rest - gap * gap).sqrt();
                let abs_r = abs_e * rest - gap * gap;
                let d1 = (p1 + abs_p2) * (p1 + abs_p2) + eta2;
                let diff = p1 - abs_p2;
                let d2 = self.second_denominator(d1, diff * diff);
                let g_de = (abs_p2 + abs_r / p1) / d1 + (abs_r / p1 - abs_p2) / d2;
                Ok(self.pair_thermal_factor(abs_e) * g_de)
            },
            0.0,
            u_m,
            &seeds,
            Tolerance { rel: 1e-9, abs: 0.0 },
            max_nodes,
        )?;

        // lower half: E + ħω = Δ·cosh v from Δ-ħω up to -ħω/2; P₁ cancels
        let lower = adaptive_scalar(
            |v| {
                let rest = gap * v.cosh(); // = E + ħω
                let p1 = gap * v.sinh();
                let abs_e = w_ev - rest;
                let abs_p2 = (abs_e * abs_e - gap * gap).sqrt();
                let abs_r = abs_e * rest - gap * gap;
                let d1 = (p1 + abs_p2) * (p1 + abs_p2) + eta2;
                let diff = p1 - abs_p2;
                let d2 = self.second_denominator(d1, diff * diff);
                let g_de = (p1 + abs_r / abs_p2) / d1 + (abs_r / abs_p2 - p1) / d2;
                Ok(self.pair_thermal_factor(abs_e) * g_de)
            },
            0.0,
            u_m,
            &seeds,
            Tolerance { rel: 1e-9, abs: 0.0 },
            max_nodes,
        )?;

        Ok(upper.value[0] + lower.value[0])
    }

    /// Regular part of the superconducting loss function `ε″_s,reg(ω)`.
    ///
    /// At Δ = 0 the kernel reduces to the normal-metal one analytically, so
    /// the Drude closed form is returned directly; this also makes the
    /// `t = 1` state bitwise identical to the normal state.
    pub fn eval(&self, omega: f64) -> Result<f64> {
        if !(omega > 0.0) {
            return Err(domain("mattis_bardeen_loss: omega must be > 0 rad/s"));
        }
        if self.gap_ev == 0.0 {
            return self.normal.loss(omega);
        }
        let w_ev = HBAR_EV_S * omega;
        let max_nodes = 6_000;
        let integral = self.thermal_integral(w_ev, max_nodes)? + self.pair_integral(w_ev, max_nodes)?;
        let cap_omega = self.normal.plasma_frequency();
        let prefactor =
            HBAR_EV_S * cap_omega * cap_omega / (2.0 * omega * omega * self.normal.scattering_time_s);
        let value = prefactor * integral;
        if !value.is_finite() {
            return Err(numeric(format!(
                "mattis_bardeen_loss: non-finite value at omega = {omega:e} rad/s"
            )));
        }
        Ok(value)
    }
}

/// Regular part of the Mattis–Bardeen loss, free-function form.
pub fn mattis_bardeen_loss(
    omega: f64,
    t: f64,
    params: &SuperconductorParameters,
    variant: GKernelVariant,
) -> Result<f64> {
    MattisBardeenLoss::new(params, t, variant)?.eval(omega)
}

/// Default spectral cutoff for the loss difference:
/// `ω_max = max(20·k·T_c, 10·2Δ(0)) / ħ`.
pub fn default_omega_max(params: &SuperconductorParameters) -> f64 {
    let by_temperature = 20.0 * params.thermal_energy_at_tc_ev();
    let by_gap = 20.0 * params.gap_at_zero_ev;
    by_temperature.max(by_gap) / HBAR_EV_S
}

/// Spectral weight S(T) = ∫₀^{ω_max} ω·[ε″_n - ε″_s,reg] dω (in (rad/s)²)
/// transferred into the zero-frequency condensate term.
pub fn sum_rule_deficit(
    t: f64,
    params: &SuperconductorParameters,
    omega_max: f64,
    variant: GKernelVariant,
) -> Result<f64> {
    let mb = MattisBardeenLoss::new(params, t, variant)?;
    sum_rule_deficit_of(&mb, omega_max)
}

pub(crate) fn sum_rule_deficit_of(mb: &MattisBardeenLoss, omega_max: f64) -> Result<f64> {
    if mb.gap_ev() == 0.0 {
        return Ok(0.0);
    }
    if !(omega_max > 0.0) {
        return Err(domain("sum_rule_deficit: omega_max must be > 0"));
    }
    let normal = *mb.normal_state();
    // the spectra must already have merged at the cutoff
    let merge = (mb.eval(omega_max)? - normal.loss(omega_max)?).abs() / normal.loss(omega_max)?;
    if merge > 0.05 {
        return Err(domain(format!(
            "sum_rule_deficit: omega_max = {omega_max:e} rad/s too small, spectra still differ by {merge:.3}"
        )));
    }

    let edge = mb.gap_edge();
    let seeds = [
        1e-6 * omega_max,
        1e-4 * omega_max,
        1e-2 * omega_max,
        0.1 * omega_max,
        0.5 * edge,
        edge,
        2.0 * edge,
    ];
    let out = adaptive_scalar(
        |omega| Ok(omega * (normal.loss(omega)? - mb.eval(omega)?)),
        0.0,
        omega_max,
        &seeds,
        Tolerance { rel: 1e-7, abs: 0.0 },
        40_000,
    )?;
    let s = out.value[0];
    let scale = core::f64::consts::FRAC_PI_2 * normal.plasma_frequency().powi(2);
    if s < -1e-7 * scale {
        return Err(consistency(format!(
            "sum_rule_deficit: negative spectral weight {s:e} (scale {scale:e})"
        )));
    }
    Ok(s.max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::energy_to_angular_frequency;
    use approx::assert_relative_eq;

    fn beryllium_film(tau_n: f64) -> SuperconductorParameters {
        SuperconductorParameters::new(
            0.5,
            7.6e-5,
            DrudeParameters::new(18.9, tau_n).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn drude_loss_values() {
        let d = DrudeParameters::new(18.9, 5e-13).unwrap();
        let cap = d.plasma_frequency();
        // omega = 1/tau gives Ω²τ²/2
        let omega = 1.0 / d.scattering_time_s;
        assert_relative_eq!(
            d.loss(omega).unwrap(),
            cap * cap * d.scattering_time_s * d.scattering_time_s / 2.0,
            max_relative = 1e-13
        );
        // high-frequency decay ~ Ω²/(τ ω³)
        let big = 1e3 / d.scattering_time_s;
        assert_relative_eq!(
            d.loss(big).unwrap(),
            cap * cap / (d.scattering_time_s * big * big * big),
            max_relative = 1e-5
        );
        assert!(d.loss(0.0).is_err());
        assert!(d.loss(-1.0).is_err());
    }

    #[test]
    fn drude_sum_rule() {
        // ∫₀^B ω ε″ dω = Ω² atan(Bτ) -> π Ω²/2; quadrature against closed form
        let d = DrudeParameters::new(18.9, 5e-13).unwrap();
        let cap = d.plasma_frequency();
        let b = 1e5 / d.scattering_time_s;
        let out = adaptive_scalar(
            |w| Ok(w * d.loss(w)?),
            0.0,
            b,
            &[1e-4 * b, 1e-2 * b, 0.1 * b],
            Tolerance { rel: 1e-9, abs: 0.0 },
            40_000,
        )
        .unwrap();
        let exact = cap * cap * (b * d.scattering_time_s).atan();
        assert_relative_eq!(out.value[0], exact, max_relative = 1e-7);
        assert_relative_eq!(
            out.value[0],
            core::f64::consts::FRAC_PI_2 * cap * cap,
            max_relative = 1e-4
        );
    }

    #[test]
    fn drude_imag_axis_values() {
        let d = DrudeParameters::new(18.9, 5e-13).unwrap();
        let cap = d.plasma_frequency();
        let zeta = 1.0 / d.scattering_time_s;
        assert_relative_eq!(
            d.eps_imag_axis(zeta).unwrap(),
            1.0 + cap * cap * d.scattering_time_s * d.scattering_time_s / 2.0,
            max_relative = 1e-13
        );
        // vacuum limit
        assert_relative_eq!(d.eps_imag_axis(1e25).unwrap(), 1.0, max_relative = 1e-9);
        assert!(d.eps_imag_axis(0.0).is_err());
    }

    #[test]
    fn gap_endpoints_and_monotonicity() {
        let sc = beryllium_film(5e-13);
        assert_eq!(bcs_gap(1.0, &sc).unwrap(), 0.0);
        assert_eq!(bcs_gap(0.0, &sc).unwrap(), sc.gap_at_zero_ev);
        assert!(bcs_gap(1.5, &sc).is_err());
        assert!(bcs_gap(-0.1, &sc).is_err());
        let mut prev = f64::INFINITY;
        for i in 0..=20 {
            let t = i as f64 / 20.0;
            let g = bcs_gap(t, &sc).unwrap();
            assert!(g <= prev + 1e-15, "gap not monotone at t = {t}");
            assert!(g >= 0.0);
            prev = g;
        }
    }

    #[test]
    fn gap_solution_satisfies_equation() {
        // plug the solution back into the reduced equation
        for &t in &[0.2, 0.5, 0.8, 0.9, 0.97] {
            let delta = reduced_gap(t).unwrap();
            let mismatch = gap_equation_mismatch(delta, BCS_GAP_RATIO / t).unwrap();
            assert!(
                mismatch.abs() < 1e-10,
                "gap equation residual {mismatch:e} at t = {t}"
            );
        }
    }

    #[test]
    fn gap_near_tc_asymptote() {
        // Δ(t)/Δ(0) -> 1.74 √(1-t) near T_c, within 2%
        for &t in &[0.95, 0.98, 0.99, 0.999] {
            let delta = reduced_gap(t).unwrap();
            let asymptote = 1.74 * (1.0 - t).sqrt();
            assert_relative_eq!(delta, asymptote, max_relative = 0.02);
        }
    }

    #[test]
    fn gap_value_at_99_percent() {
        let sc = beryllium_film(5e-13);
        assert_relative_eq!(bcs_gap(0.99, &sc).unwrap(), 1.32e-5, max_relative = 0.02);
    }

    #[test]
    fn gap_curve_matches_direct_solution() {
        let sc = beryllium_film(5e-13);
        let curve = GapCurve::bcs(&sc, 201).unwrap();
        assert_eq!(curve.gap(0.0).unwrap(), sc.gap_at_zero_ev);
        assert_eq!(curve.gap(1.0).unwrap(), 0.0);
        for &t in &[0.123, 0.5, 0.777, 0.9, 0.9612] {
            let direct = bcs_gap(t, &sc).unwrap();
            let tabulated = curve.gap(t).unwrap();
            assert_relative_eq!(tabulated, direct, max_relative = 1e-3);
        }
    }

    #[test]
    fn g_kernel_gapless_limit_is_flat() {
        // at Δ = 0 the kernel no longer depends on E
        let omega = 1e11;
        let g1 = g_kernel(1e-5, omega, 5e-13, 0.0, GKernelVariant::Corrected).unwrap();
        let g2 = g_kernel(3e-4, omega, 5e-13, 0.0, GKernelVariant::Corrected).unwrap();
        assert_relative_eq!(g1, g2, max_relative = 1e-12);
        // and matches 2/((ħω)² + (ħ/τ)²)
        let w = HBAR_EV_S * omega;
        let eta = HBAR_EV_S / 5e-13;
        assert_relative_eq!(g1, 2.0 / (w * w + eta * eta), max_relative = 1e-12);
    }

    #[test]
    fn g_kernel_symmetric_pair_point() {
        // E = -ħω/2 with ħω > 2Δ: P₂ = -P₁, the corrected second denominator
        // collapses to (ħ/τ)² with a vanishing numerator, and
        // g = 2 / ((2P₁)² + (ħ/τ)²).
        let gap = 7.6e-5;
        let tau = 5e-13;
        let w = 5.0 * gap;
        let omega = energy_to_angular_frequency(w).unwrap();
        let e = -w / 2.0;
        let g = g_kernel(e, omega, tau, gap, GKernelVariant::Corrected).unwrap();
        let p1 = ((w / 2.0) * (w / 2.0) - gap * gap).sqrt();
        let eta = HBAR_EV_S / tau;
        assert_relative_eq!(g, 2.0 / (4.0 * p1 * p1 + eta * eta), max_relative = 1e-12);
    }

    #[test]
    fn g_kernel_rejects_branch_points() {
        let gap = 7.6e-5;
        assert!(g_kernel(gap, 1e11, 5e-13, gap, GKernelVariant::Corrected).is_err());
        assert!(g_kernel(0.5 * gap, 1e7, 5e-13, gap, GKernelVariant::Corrected).is_err());
    }

    #[test]
    fn small_gap_limit_recovers_drude() {
        // force a tiny gap through the full quadrature path
        let normal = DrudeParameters::new(18.9, 5e-13).unwrap();
        let gap = 7.6e-9; // 1e-4 of the physical gap
        let kt = K_BOLTZMANN_EV_K * 0.45; // t = 0.9 of a 0.5 K film
        let mb = MattisBardeenLoss::with_gap(gap, kt, normal, GKernelVariant::Corrected);
        // far above both the gap and the thermal scale
        let omega = 1.0 / normal.scattering_time_s;
        assert_relative_eq!(
            mb.eval(omega).unwrap(),
            normal.loss(omega).unwrap(),
            max_relative = 1e-6
        );
        // near the (tiny) gap scale, thermal smearing still erases the gap
        let omega = energy_to_angular_frequency(4.0 * gap).unwrap();
        assert_relative_eq!(
            mb.eval(omega).unwrap(),
            normal.loss(omega).unwrap(),
            max_relative = 1e-3
        );
    }

    #[test]
    fn loss_equals_drude_at_transition() {
        let sc = beryllium_film(5e-13);
        let mb = MattisBardeenLoss::new(&sc, 1.0, GKernelVariant::Corrected).unwrap();
        for &omega in &[1e10, 1e11, 1e12, 1e13] {
            assert_eq!(mb.eval(omega).unwrap(), sc.normal_state.loss(omega).unwrap());
        }
    }

    #[test]
    fn subgap_loss_frozen_out_at_low_temperature() {
        let sc = beryllium_film(5e-13);
        let mb = MattisBardeenLoss::new(&sc, 0.05, GKernelVariant::Corrected).unwrap();
        let omega = energy_to_angular_frequency(sc.gap_at_zero_ev).unwrap(); // x0 = 0.5
        let n = sc.normal_state.loss(omega).unwrap();
        let s = mb.eval(omega).unwrap();
        assert!(s >= 0.0);
        assert!(s < 1e-12 * n, "sub-gap loss {s:e} vs normal {n:e}");
    }

    #[test]
    fn loss_nonnegative_and_subgap_suppressed() {
        let sc = beryllium_film(5e-13);
        for &t in &[0.1, 0.3] {
            let mb = MattisBardeenLoss::new(&sc, t, GKernelVariant::Corrected).unwrap();
            let gap = mb.gap_ev();
            for &x in &[0.05_f64, 0.2, 0.5, 0.9, 1.5, 3.0] {
                let omega = energy_to_angular_frequency(2.0 * gap * x).unwrap();
                let s = mb.eval(omega).unwrap();
                let n = sc.normal_state.loss(omega).unwrap();
                assert!(s >= 0.0, "negative loss at t = {t}, x = {x}");
                if x < 1.0 {
                    assert!(
                        s <= n * (1.0 + 1e-3),
                        "sub-gap loss above normal at t = {t}, x = {x}: {s:e} vs {n:e}"
                    );
                }
            }
        }
    }

    #[test]
    fn loss_merges_with_normal_in_far_infrared() {
        // operating regime of the sweep: t >= 0.9
        let sc = beryllium_film(5e-13);
        let ktc = sc.thermal_energy_at_tc_ev();
        for &t in &[0.9, 0.95] {
            let mb = MattisBardeenLoss::new(&sc, t, GKernelVariant::Corrected).unwrap();
            for &m in &[10.5_f64, 15.0, 30.0] {
                let omega = energy_to_angular_frequency(m * ktc).unwrap();
                let s = mb.eval(omega).unwrap();
                let n = sc.normal_state.loss(omega).unwrap();
                assert!(
                    ((s - n) / n).abs() < 1e-2,
                    "spectra differ by {:.4} at t = {t}, ħω = {m} kT_c",
                    ((s - n) / n).abs()
                );
            }
        }
    }

    #[test]
    fn pair_breaking_edge_visible_at_low_temperature() {
        let sc = beryllium_film(5e-13);
        let mb = MattisBardeenLoss::new(&sc, 0.3, GKernelVariant::Corrected).unwrap();
        let gap = mb.gap_ev();
        let below = mb
            .eval(energy_to_angular_frequency(2.0 * gap * 0.9).unwrap())
            .unwrap();
        let above = mb
            .eval(energy_to_angular_frequency(2.0 * gap * 1.2).unwrap())
            .unwrap();
        assert!(
            above > 10.0 * below,
            "no absorption edge: below = {below:e}, above = {above:e}"
        );
    }

    #[test]
    fn sum_rule_deficit_basics() {
        let sc = beryllium_film(5e-13);
        let omega_max = default_omega_max(&sc);
        assert_eq!(
            sum_rule_deficit(1.0, &sc, omega_max, GKernelVariant::Corrected).unwrap(),
            0.0
        );
        // monotone growth of the condensate weight as T drops
        let s = [0.9, 0.6, 0.3]
            .iter()
            .map(|&t| sum_rule_deficit(t, &sc, omega_max, GKernelVariant::Corrected).unwrap())
            .collect::<Vec<_>>();
        assert!(s[0] > 0.0);
        assert!(s[1] > s[0]);
        assert!(s[2] > s[1]);
    }

    #[test]
    fn sum_rule_deficit_clean_limit_condenses_all_weight() {
        // τ -> ∞, T -> 0: all Drude weight π Ω²/2 moves to the condensate
        let sc = beryllium_film(1e-9);
        let omega_max = default_omega_max(&sc);
        let s = sum_rule_deficit(0.05, &sc, omega_max, GKernelVariant::Corrected).unwrap();
        let full = core::f64::consts::FRAC_PI_2 * sc.normal_state.plasma_frequency().powi(2);
        assert_relative_eq!(s, full, max_relative = 0.02);
    }

    #[test]
    fn sum_rule_deficit_rejects_small_cutoff() {
        let sc = beryllium_film(5e-13);
        // a cutoff below the gap edge leaves the spectra far apart
        let r = sum_rule_deficit(0.3, &sc, 0.5 * 2.0 * 7.6e-5 / HBAR_EV_S, GKernelVariant::Corrected);
        assert!(r.is_err());
    }

    #[test]
    fn impurity_parameter_values() {
        assert_relative_eq!(
            beryllium_film(5e-13).impurity_parameter(),
            8.66,
            max_relative = 1e-3
        );
        assert_relative_eq!(
            beryllium_film(1e-12).impurity_parameter(),
            4.33,
            max_relative = 1e-3
        );
        assert_relative_eq!(
            beryllium_film(1e-13).impurity_parameter(),
            43.3,
            max_relative = 1e-3
        );
    }
}
