//! Physical constants and unit conversions.
//!
//! Internal unit system: Gaussian CGS (erg, cm, s, Oe), with spectroscopic
//! energies carried in eV.  Every other module exchanges quantities in these
//! units and converts through the functions here, exactly once.
//!
//! Constant values are CODATA 2018 / NIST.

use crate::error::{domain, Result};

/// Reduced Planck constant (erg·s).
pub const HBAR_ERG_S: f64 = 1.054_571_817e-27;

/// Speed of light in vacuum (cm/s).
pub const C_CM_S: f64 = 2.997_924_58e10;

/// Boltzmann constant (erg/K).
pub const K_BOLTZMANN_ERG_K: f64 = 1.380_649e-16;

/// One electronvolt (erg).
pub const EV_IN_ERG: f64 = 1.602_176_634e-12;

/// Fine structure constant.
pub const FINE_STRUCTURE_ALPHA: f64 = 7.297_352_5693e-3;

/// Electron rest energy m·c² (eV).
pub const ELECTRON_REST_ENERGY_EV: f64 = 510_998.950_00;

/// Reduced Planck constant (eV·s).
pub const HBAR_EV_S: f64 = HBAR_ERG_S / EV_IN_ERG;

/// Boltzmann constant (eV/K).
pub const K_BOLTZMANN_EV_K: f64 = K_BOLTZMANN_ERG_K / EV_IN_ERG;

/// Full constant record, for callers that want the set as one value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub hbar_erg_s: f64,
    pub c_cm_s: f64,
    pub k_boltzmann_erg_k: f64,
    pub ev_in_erg: f64,
    pub fine_structure_alpha: f64,
    pub electron_rest_energy_ev: f64,
}

/// The CODATA 2018 values used throughout the crate.
pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
    hbar_erg_s: HBAR_ERG_S,
    c_cm_s: C_CM_S,
    k_boltzmann_erg_k: K_BOLTZMANN_ERG_K,
    ev_in_erg: EV_IN_ERG,
    fine_structure_alpha: FINE_STRUCTURE_ALPHA,
    electron_rest_energy_ev: ELECTRON_REST_ENERGY_EV,
};

/// Converts a photon energy in eV to an angular frequency in rad/s.
pub fn energy_to_angular_frequency(energy_ev: f64) -> Result<f64> {
    if !(energy_ev >= 0.0) {
        return Err(domain("energy_to_angular_frequency: energy must be >= 0 eV"));
    }
    Ok(energy_ev / HBAR_EV_S)
}

/// Inverse of [`energy_to_angular_frequency`].
pub fn angular_frequency_to_energy(omega_rad_s: f64) -> Result<f64> {
    if !(omega_rad_s >= 0.0) {
        return Err(domain("angular_frequency_to_energy: omega must be >= 0 rad/s"));
    }
    Ok(omega_rad_s * HBAR_EV_S)
}

/// Converts a temperature in K to the thermal energy k·T in eV.
pub fn temperature_to_energy(t_kelvin: f64) -> Result<f64> {
    if !(t_kelvin >= 0.0) {
        return Err(domain("temperature_to_energy: temperature must be >= 0 K"));
    }
    Ok(t_kelvin * K_BOLTZMANN_EV_K)
}

/// Reduced frequency x₀ = ħω / (2·Δ(0)) for a gap Δ(0) in eV.
pub fn reduced_frequency(omega_rad_s: f64, gap0_ev: f64) -> Result<f64> {
    if !(gap0_ev > 0.0) {
        return Err(domain("reduced_frequency: gap must be > 0 eV"));
    }
    Ok(omega_rad_s * HBAR_EV_S / (2.0 * gap0_ev))
}
