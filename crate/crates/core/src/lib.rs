//! Lifshitz-theory machinery for a five-layer Casimir cavity whose middle
//! layer is a thin superconducting film.
//!
//! The crate computes the change `ΔE = E_n - E_s` in Casimir free energy of a
//! mirror / vacuum gap / film / vacuum gap / mirror stack when the film goes
//! from the normal (`n`) to the superconducting (`s`) state, and propagates
//! that change into the film's parallel critical magnetic field.
//!
//! Pipeline, bottom up:
//!
//! * [`units`] — physical constants (CODATA 2018, Gaussian CGS with spectral
//!   energies in eV) and the few conversions everything else relies on.
//! * [`materials`] — real-frequency loss functions: Drude for the normal
//!   metal, Mattis–Bardeen with a numerically solved BCS gap for the film,
//!   plus the condensate spectral weight transferred to zero frequency.
//! * [`dispersion`] — Kramers–Kronig rotation of loss functions onto the
//!   imaginary frequency axis, organized around the *difference*
//!   `ε″_s - ε″_n`, which has compact spectral support.
//! * [`cavity`] — Fresnel coefficients and the five-layer `Q` factors at
//!   imaginary frequencies.
//! * [`lifshitz`] — the outer two-dimensional `(ζ, p)` integral for `ΔE`,
//!   the ideal-plate baseline, cutoff diagnostics, and the TE/TM split.
//! * [`thermo`] — condensation energy, parabolic critical-field law, the
//!   thin-film ρ factor, and the field-shift ratio.
//! * [`scaling`] — log-log power-law fits over geometry and temperature.
//!
//! The crate is `no_std`-compatible (`alloc` required); enable the `libm`
//! feature when building without `std` to supply the float math.

#![cfg_attr(not(feature = "std"), no_std)]

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("building without `std` requires the `libm` feature");

extern crate alloc;

pub mod cavity;
pub mod dispersion;
pub mod error;
mod fmath;
pub mod interp;
pub mod lifshitz;
pub mod materials;
pub mod quad;
pub mod scaling;
pub mod thermo;
pub mod units;

pub use error::{Error, Result};
pub use quad::QuadratureSpec;
