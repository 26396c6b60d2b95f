//! Multilayer optics on the imaginary frequency axis: K factors, TE/TM
//! Fresnel coefficients, and the five-layer Q factors of the
//! mirror / gap / film / gap / mirror stack.
//!
//! With `x = e^{-2ζpL/c}` (gap round trip) and `y_I = e^{-2ζK_I D/c}` (film
//! crossing in state I),
//!
//! ```text
//!         (1 - Δ₁I Δ₁₂ x)² - (Δ₁I - Δ₁₂ x)² y_I
//!  Q_I = ----------------------------------------
//!                   1 - Δ₁I² y_I
//! ```
//!
//! per polarization.  The logs are taken through `ln(1+·)` of the deviation
//! from unity, and the `n`/`s` evaluations share every state-independent
//! subexpression, so the integrand vanishes identically (bitwise) when the
//! two film states coincide.

use alloc::format;

use crate::dispersion::ScPermittivityTable;
use crate::error::{domain, numeric, Result};
#[cfg(not(feature = "std"))]
use crate::fmath::FloatExt;
use crate::materials::DrudeParameters;
use crate::units::C_CM_S;

/// Cavity geometry: gap width L, film thickness D, plate area A.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityGeometry {
    pub gap_width_cm: f64,
    pub film_thickness_cm: f64,
    pub plate_area_cm2: f64,
}

impl CavityGeometry {
    pub fn new(gap_width_cm: f64, film_thickness_cm: f64, plate_area_cm2: f64) -> Result<Self> {
        if !(gap_width_cm > 0.0 && film_thickness_cm > 0.0 && plate_area_cm2 > 0.0) {
            return Err(domain("CavityGeometry: L, D, A must all be > 0"));
        }
        Ok(CavityGeometry {
            gap_width_cm,
            film_thickness_cm,
            plate_area_cm2,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarization {
    Te,
    Tm,
}

/// Which state the film is in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilmState {
    Normal,
    Superconducting,
}

/// Imaginary-axis permittivities of the stack: semi-infinite Drude mirrors,
/// vacuum gaps, and the film in both states.
#[derive(Debug, Clone)]
pub struct LayerPermittivities<'a> {
    mirror: &'a DrudeParameters,
    film_normal: &'a DrudeParameters,
    film_superconducting: &'a ScPermittivityTable,
}

impl<'a> LayerPermittivities<'a> {
    pub fn new(
        mirror: &'a DrudeParameters,
        film_normal: &'a DrudeParameters,
        film_superconducting: &'a ScPermittivityTable,
    ) -> Self {
        LayerPermittivities {
            mirror,
            film_normal,
            film_superconducting,
        }
    }

    pub fn sc_table(&self) -> &ScPermittivityTable {
        self.film_superconducting
    }

    pub fn eps_mirror(&self, zeta: f64) -> Result<f64> {
        self.mirror.eps_imag_axis(zeta)
    }

    pub fn eps_film(&self, zeta: f64, state: FilmState) -> Result<f64> {
        match state {
            FilmState::Normal => self.film_normal.eps_imag_axis(zeta),
            FilmState::Superconducting => self.film_superconducting.eps(zeta),
        }
    }
}

/// `K = √(ε(iζ) - 1 + p²)`; real for ε ≥ 1, p ≥ 1.
pub fn k_factor(eps_iz: f64, p: f64) -> f64 {
    debug_assert!(p >= 1.0, "k_factor: p must be >= 1");
    debug_assert!(eps_iz >= 1.0, "k_factor: eps(i zeta) must be >= 1");
    let arg = eps_iz - 1.0 + p * p;
    assert!(arg >= 0.0, "k_factor: negative radicand {arg}");
    arg.sqrt()
}

/// TE Fresnel coefficient Δ = (K_j - K_l)/(K_j + K_l).
pub fn fresnel_te(k_j: f64, k_l: f64) -> f64 {
    debug_assert!(k_j > 0.0 && k_l > 0.0);
    (k_j - k_l) / (k_j + k_l)
}

/// TM Fresnel coefficient Δ = (K_j ε_l - K_l ε_j)/(K_j ε_l + K_l ε_j).
pub fn fresnel_tm(k_j: f64, k_l: f64, eps_j: f64, eps_l: f64) -> f64 {
    debug_assert!(k_j > 0.0 && k_l > 0.0 && eps_j > 0.0 && eps_l > 0.0);
    (k_j * eps_l - k_l * eps_j) / (k_j * eps_l + k_l * eps_j)
}

// Deviations of numerator and denominator of Q from 1, kept separate so the
// log can be taken as ln1p even when both exponentials are tiny.
//
// n = -2abx + a²b²x² - (a - bx)² y,   d = -a² y.
fn q_deviation(a: f64, b: f64, x: f64, y: f64) -> (f64, f64) {
    let abx = a * b * x;
    let n = -2.0 * abx + abx * abx - (a - b * x) * (a - b * x) * y;
    let d = -(a * a) * y;
    (n, d)
}

/// Q factor of the five-layer stack for one polarization and film state.
pub fn q_factor(
    zeta: f64,
    p: f64,
    polarization: Polarization,
    state: FilmState,
    geom: &CavityGeometry,
    layers: &LayerPermittivities<'_>,
) -> Result<f64> {
    if !(zeta > 0.0) {
        return Err(domain("q_factor: zeta must be > 0 rad/s"));
    }
    if !(p >= 1.0) {
        return Err(domain("q_factor: p must be >= 1"));
    }
    let eps_m = layers.eps_mirror(zeta)?;
    let eps_f = layers.eps_film(zeta, state)?;
    let k_m = k_factor(eps_m, p);
    let k_f = k_factor(eps_f, p);
    let x = (-2.0 * zeta * p * geom.gap_width_cm / C_CM_S).exp();
    let y = (-2.0 * zeta * k_f * geom.film_thickness_cm / C_CM_S).exp();
    let (a, b) = match polarization {
        Polarization::Te => (fresnel_te(p, k_f), fresnel_te(p, k_m)),
        Polarization::Tm => (
            fresnel_tm(p, k_f, 1.0, eps_f),
            fresnel_tm(p, k_m, 1.0, eps_m),
        ),
    };
    let (n, d) = q_deviation(a, b, x, y);
    let den = 1.0 + d;
    if den < 1e-300 {
        return Err(numeric(format!(
            "q_factor: denominator underflow at zeta = {zeta:e}, p = {p:e}"
        )));
    }
    let num = 1.0 + n;
    if !(num > 0.0) {
        return Err(numeric(format!(
            "q_factor: non-positive numerator at zeta = {zeta:e}, p = {p:e}"
        )));
    }
    Ok(num / den)
}

/// TE/TM decomposition of `ζ²·ln[(Q_n^TE Q_n^TM)/(Q_s^TE Q_s^TM)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrandParts {
    pub total: f64,
    pub te: f64,
    pub tm: f64,
}

// ln Q_n - ln Q_s for one polarization, with x and the mirror coefficient b
// shared between the states.
fn log_q_ratio(a_n: f64, a_s: f64, b: f64, x: f64, y_n: f64, y_s: f64) -> Result<f64> {
    let (n_n, d_n) = q_deviation(a_n, b, x, y_n);
    let (n_s, d_s) = q_deviation(a_s, b, x, y_s);
    for (label, v) in [("n", n_n), ("s", n_s), ("n", d_n), ("s", d_s)] {
        if v <= -1.0 {
            return Err(numeric(format!(
                "cavity integrand: Q factor not positive in state {label}"
            )));
        }
    }
    Ok(n_n.ln_1p() - n_s.ln_1p() - (d_n.ln_1p() - d_s.ln_1p()))
}

/// Lifshitz integrand at one `(ζ, p)` node, with the state-independent
/// subexpressions computed once and shared between the film states.
pub fn integrand(
    zeta: f64,
    p: f64,
    geom: &CavityGeometry,
    layers: &LayerPermittivities<'_>,
) -> Result<IntegrandParts> {
    if !(zeta > 0.0) {
        return Err(domain("integrand: zeta must be > 0 rad/s"));
    }
    if !(p >= 1.0) {
        return Err(domain("integrand: p must be >= 1"));
    }

    let eps_m = layers.eps_mirror(zeta)?;
    let eps_n = layers.eps_film(zeta, FilmState::Normal)?;
    let eps_s = layers.eps_film(zeta, FilmState::Superconducting)?;
    let k_m = k_factor(eps_m, p);
    let k_n = k_factor(eps_n, p);
    let k_s = k_factor(eps_s, p);

    let scale = 2.0 * zeta / C_CM_S;
    let x = (-scale * p * geom.gap_width_cm).exp();
    let y_n = (-scale * k_n * geom.film_thickness_cm).exp();
    let y_s = (-scale * k_s * geom.film_thickness_cm).exp();

    let zeta2 = zeta * zeta;
    let te = zeta2
        * log_q_ratio(
            fresnel_te(p, k_n),
            fresnel_te(p, k_s),
            fresnel_te(p, k_m),
            x,
            y_n,
            y_s,
        )?;
    let tm = zeta2
        * log_q_ratio(
            fresnel_tm(p, k_n, 1.0, eps_n),
            fresnel_tm(p, k_s, 1.0, eps_s),
            fresnel_tm(p, k_m, 1.0, eps_m),
            x,
            y_n,
            y_s,
        )?;

    Ok(IntegrandParts {
        total: te + tm,
        te,
        tm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::{GKernelVariant, SuperconductorParameters};
    use crate::quad::QuadratureSpec;
    use crate::units::{HBAR_EV_S, K_BOLTZMANN_EV_K};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn film_parameters(tau_n: f64) -> SuperconductorParameters {
        SuperconductorParameters::new(0.5, 7.6e-5, DrudeParameters::new(18.9, tau_n).unwrap())
            .unwrap()
    }

    fn zeta_scale() -> f64 {
        K_BOLTZMANN_EV_K * 0.5 / HBAR_EV_S
    }

    fn build_table(t: f64, tau_n: f64) -> ScPermittivityTable {
        ScPermittivityTable::build(
            &film_parameters(tau_n),
            t,
            &QuadratureSpec::default(),
            1e-7 * zeta_scale(),
            35.0 * zeta_scale(),
            GKernelVariant::Corrected,
        )
        .unwrap()
    }

    fn paper_geometry() -> CavityGeometry {
        CavityGeometry::new(1e-6, 5e-7, 1.0).unwrap()
    }

    #[test]
    fn k_factor_values() {
        assert_eq!(k_factor(1.0, 3.0), 3.0);
        assert_relative_eq!(k_factor(2.0, 1.0), 2.0_f64.sqrt(), max_relative = 1e-15);
        // perfect-conductor asymptote K -> sqrt(eps)
        assert_relative_eq!(k_factor(1e12, 10.0), 1e6, max_relative = 1e-9);
    }

    #[test]
    fn fresnel_values() {
        assert_eq!(fresnel_te(2.0, 2.0), 0.0);
        assert_relative_eq!(fresnel_te(2.0, 1.0), 1.0 / 3.0, max_relative = 1e-15);
        // vacuum -> perfect conductor: TE -> -1, TM -> +1
        let eps = 1e16;
        let k = k_factor(eps, 1.0);
        assert_relative_eq!(fresnel_te(1.0, k), -1.0, max_relative = 1e-7);
        assert_relative_eq!(fresnel_tm(1.0, k, 1.0, eps), 1.0, max_relative = 1e-7);
        assert_eq!(fresnel_tm(1.0, 1.0, 1.0, 1.0), 0.0);
        assert_relative_eq!(
            fresnel_tm(1.0, 2.0, 1.0, 4.0),
            1.0 / 3.0,
            max_relative = 1e-15
        );
    }

    proptest! {
        #[test]
        fn fresnel_coefficients_bounded(
            eps_j in 1.0..1e10f64,
            eps_l in 1.0..1e10f64,
            p in 1.0..1e6f64,
        ) {
            let k_j = k_factor(eps_j, p);
            let k_l = k_factor(eps_l, p);
            let te = fresnel_te(k_j, k_l);
            let tm = fresnel_tm(k_j, k_l, eps_j, eps_l);
            prop_assert!(te.abs() < 1.0);
            prop_assert!(tm.abs() < 1.0);
        }
    }

    #[test]
    fn q_approaches_one_at_large_zeta() {
        let table = build_table(0.9, 5e-13);
        let sc = film_parameters(5e-13);
        let mirror = DrudeParameters::new(18.9, 2.4e-12).unwrap();
        let layers = LayerPermittivities::new(&mirror, &sc.normal_state, &table);
        let geom = paper_geometry();
        let zeta = 30.0 * zeta_scale();
        // large p drives both exponentials to zero
        let q = q_factor(zeta, 1e8, Polarization::Te, FilmState::Normal, &geom, &layers).unwrap();
        assert_relative_eq!(q, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn q_converges_to_one_monotonically_along_ray() {
        let table = build_table(0.9, 5e-13);
        let sc = film_parameters(5e-13);
        let mirror = DrudeParameters::new(18.9, 2.4e-12).unwrap();
        let layers = LayerPermittivities::new(&mirror, &sc.normal_state, &table);
        let geom = paper_geometry();
        let zeta = zeta_scale();
        let mut prev_gap = f64::INFINITY;
        for i in 0..10 {
            let p = 10.0_f64.powf(1.0 + 0.6 * i as f64);
            let q = q_factor(zeta, p, Polarization::Te, FilmState::Superconducting, &geom, &layers)
                .unwrap();
            assert!(q > 0.0);
            let gap = (q - 1.0).abs();
            assert!(gap <= prev_gap * (1.0 + 1e-12), "not monotone at p = {p}");
            prev_gap = gap;
        }
    }

    #[test]
    fn film_of_zero_thickness_is_invisible() {
        let table = build_table(0.9, 5e-13);
        let sc = film_parameters(5e-13);
        let mirror = DrudeParameters::new(18.9, 2.4e-12).unwrap();
        let layers = LayerPermittivities::new(&mirror, &sc.normal_state, &table);
        // D -> 0 collapses y to 1 and Q to 1 - Δ₁₂²x², independent of state
        let geom = CavityGeometry::new(1e-6, 1e-30, 1.0).unwrap();
        let zeta = zeta_scale();
        let p = 2.0;
        let q_n = q_factor(zeta, p, Polarization::Te, FilmState::Normal, &geom, &layers).unwrap();
        let q_s =
            q_factor(zeta, p, Polarization::Te, FilmState::Superconducting, &geom, &layers).unwrap();
        assert_relative_eq!(q_n, q_s, max_relative = 1e-9);
        let parts = integrand(zeta, p, &geom, &layers).unwrap();
        assert!(parts.total.abs() < 1e-9 * zeta * zeta);
    }

    #[test]
    fn integrand_vanishes_identically_at_transition() {
        let table = build_table(1.0, 5e-13);
        let sc = film_parameters(5e-13);
        let mirror = DrudeParameters::new(18.9, 2.4e-12).unwrap();
        let layers = LayerPermittivities::new(&mirror, &sc.normal_state, &table);
        let geom = paper_geometry();
        for i in 0..6 {
            let zeta = zeta_scale() * 10.0_f64.powf(-4.0 + 1.5 * i as f64);
            for &p in &[1.0, 3.0, 1e2, 1e5] {
                let parts = integrand(zeta, p, &geom, &layers).unwrap();
                assert_eq!(parts.total, 0.0);
                assert_eq!(parts.te, 0.0);
                assert_eq!(parts.tm, 0.0);
            }
        }
    }

    #[test]
    fn integrand_matches_independent_q_factor_route() {
        let table = build_table(0.9, 5e-13);
        let sc = film_parameters(5e-13);
        let mirror = DrudeParameters::new(18.9, 2.4e-12).unwrap();
        let layers = LayerPermittivities::new(&mirror, &sc.normal_state, &table);
        let geom = paper_geometry();
        for &(m, p) in &[(0.3_f64, 1.5_f64), (1.0, 30.0), (3.0, 1e3), (0.01, 1e5)] {
            let zeta = m * zeta_scale();
            let parts = integrand(zeta, p, &geom, &layers).unwrap();
            let ln_q = |pol, state| {
                q_factor(zeta, p, pol, state, &geom, &layers)
                    .unwrap()
                    .ln()
            };
            let expected = zeta
                * zeta
                * (ln_q(Polarization::Te, FilmState::Normal)
                    + ln_q(Polarization::Tm, FilmState::Normal)
                    - ln_q(Polarization::Te, FilmState::Superconducting)
                    - ln_q(Polarization::Tm, FilmState::Superconducting));
            // the shared-subexpression route must agree with the naive one
            // wherever the naive logs keep significance
            if expected.abs() > 1e-10 * zeta * zeta {
                assert_relative_eq!(parts.total, expected, max_relative = 1e-6);
            }
        }
    }

    #[test]
    fn te_part_dominates_for_paper_parameters() {
        let table = build_table(0.9, 5e-13);
        let sc = film_parameters(5e-13);
        let mirror = DrudeParameters::new(18.9, 2.4e-12).unwrap();
        let layers = LayerPermittivities::new(&mirror, &sc.normal_state, &table);
        let geom = paper_geometry();
        // representative interior nodes of the Lifshitz domain
        for &(m, p) in &[(0.5_f64, 1e4_f64), (1.0, 3e4), (2.0, 1e5)] {
            let parts = integrand(m * zeta_scale(), p, &geom, &layers).unwrap();
            assert!(
                parts.tm.abs() < 0.1 * parts.te.abs(),
                "TM not negligible at (m = {m}, p = {p}): te = {:e}, tm = {:e}",
                parts.te,
                parts.tm
            );
        }
    }
}
