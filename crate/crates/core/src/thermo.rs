//! Superconductor thermodynamics of the film: condensation energy, parabolic
//! critical-field law, the thin-film ρ factor, and the parallel critical
//! field with and without the cavity contribution to the free energy.

use alloc::format;

use crate::cavity::CavityGeometry;
use crate::error::{domain, Result};
#[cfg(not(feature = "std"))]
use crate::fmath::FloatExt;
use crate::units::{C_CM_S, ELECTRON_REST_ENERGY_EV, EV_IN_ERG, FINE_STRUCTURE_ALPHA, HBAR_ERG_S};

/// Thermodynamic data of the film: H_c(0) in Oe, T_c in K, volume in cm³,
/// and the two superconducting length scales in cm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilmThermodynamics {
    pub thermodynamic_field_at_zero_oe: f64,
    pub critical_temperature_k: f64,
    pub volume_cm3: f64,
    pub penetration_depth_cm: f64,
    pub coherence_length_cm: f64,
}

impl FilmThermodynamics {
    pub fn new(
        thermodynamic_field_at_zero_oe: f64,
        critical_temperature_k: f64,
        volume_cm3: f64,
        penetration_depth_cm: f64,
        coherence_length_cm: f64,
    ) -> Result<Self> {
        let fields = [
            thermodynamic_field_at_zero_oe,
            critical_temperature_k,
            volume_cm3,
            penetration_depth_cm,
            coherence_length_cm,
        ];
        if fields.iter().any(|&v| !(v > 0.0)) {
            return Err(domain("FilmThermodynamics: all fields must be > 0"));
        }
        Ok(FilmThermodynamics {
            thermodynamic_field_at_zero_oe,
            critical_temperature_k,
            volume_cm3,
            penetration_depth_cm,
            coherence_length_cm,
        })
    }

    /// Volume taken from the cavity geometry (V = A·D).
    pub fn from_geometry(
        geom: &CavityGeometry,
        h_c0_oe: f64,
        critical_temperature_k: f64,
        penetration_depth_cm: f64,
        coherence_length_cm: f64,
    ) -> Result<Self> {
        Self::new(
            h_c0_oe,
            critical_temperature_k,
            geom.plate_area_cm2 * geom.film_thickness_cm,
            penetration_depth_cm,
            coherence_length_cm,
        )
    }
}

/// Parabolic law H_c(T) = H_c(0)·(1 - t²) in Oe.
pub fn thermodynamic_field(t: f64, h_c0_oe: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(domain(format!("thermodynamic_field: t = {t} outside [0, 1]")));
    }
    Ok(h_c0_oe * (1.0 - t * t))
}

/// Condensation energy H_c(T)²·V/(8π) in erg.
pub fn condensation_energy(t: f64, film: &FilmThermodynamics) -> Result<f64> {
    let h = thermodynamic_field(t, film.thermodynamic_field_at_zero_oe)?;
    Ok(h * h * film.volume_cm3 / (8.0 * core::f64::consts::PI))
}

/// Thin-film enhancement factor ρ = √24·(λ/D)·(1 + 9·D²/(π⁶·ξ²)).
pub fn rho_factor(film: &FilmThermodynamics, film_thickness_cm: f64) -> f64 {
    debug_assert!(film_thickness_cm > 0.0);
    let pi6 = core::f64::consts::PI.powi(6);
    let lambda = film.penetration_depth_cm;
    let xi = film.coherence_length_cm;
    24.0_f64.sqrt() * (lambda / film_thickness_cm)
        * (1.0 + 9.0 * film_thickness_cm * film_thickness_cm / (pi6 * xi * xi))
}

/// Parallel critical field H = ρ·√(8π·ΔF/V) in Oe, for a free-energy
/// difference ΔF in erg.
pub fn critical_parallel_field(
    t: f64,
    film: &FilmThermodynamics,
    film_thickness_cm: f64,
    delta_free_energy_erg: f64,
) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(domain(format!(
            "critical_parallel_field: t = {t} outside [0, 1]"
        )));
    }
    if delta_free_energy_erg < 0.0 {
        return Err(domain(
            "critical_parallel_field: negative free-energy difference (normal state favored)",
        ));
    }
    let rho = rho_factor(film, film_thickness_cm);
    Ok(rho * (8.0 * core::f64::consts::PI * delta_free_energy_erg / film.volume_cm3).sqrt())
}

/// Relative enhancement of the critical field caused by a Casimir
/// free-energy gain ΔE on top of the condensation energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldShift {
    /// Exact ratio √(1 + ΔE/E_cond).
    pub exact: f64,
    /// First-order estimate ΔE/(2·E_cond), quoted as a fractional shift.
    pub first_order: f64,
}

/// Field-shift ratio H_cavity/H_bare for a Casimir gain ΔE ≥ 0.
pub fn field_shift_ratio(delta_casimir_erg: f64, e_cond_erg: f64) -> Result<FieldShift> {
    if !(e_cond_erg > 0.0) {
        return Err(domain("field_shift_ratio: condensation energy must be > 0"));
    }
    let x = delta_casimir_erg / e_cond_erg;
    if x < -1.0 {
        return Err(domain("field_shift_ratio: free energy would turn negative"));
    }
    Ok(FieldShift {
        exact: (1.0 + x).sqrt(),
        first_order: 0.5 * x,
    })
}

/// Radiative-correction scale ε = α·ħω_c/(m·c²) with ω_c = c/L.
pub fn radiative_parameter(gap_width_cm: f64) -> Result<f64> {
    if !(gap_width_cm > 0.0) {
        return Err(domain("radiative_parameter: gap width must be > 0 cm"));
    }
    let hbar_omega_c_ev = HBAR_ERG_S * C_CM_S / gap_width_cm / EV_IN_ERG;
    Ok(FINE_STRUCTURE_ALPHA * hbar_omega_c_ev / ELECTRON_REST_ENERGY_EV)
}
