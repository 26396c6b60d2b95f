//! Adaptive Gauss–Kronrod quadrature (7/15 pair) with seeded subdivisions.
//!
//! The integrator evaluates a small fixed number of components per node
//! (e.g. total / TE / TM parts of the same integrand) and drives the
//! refinement on component 0.  Refinement picks the interval with the
//! largest error estimate; the final reduction sums leaf intervals in
//! left-to-right order with compensated summation, so the result does not
//! depend on the refinement history.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{domain, numeric, Result};
#[cfg(not(feature = "std"))]
use crate::fmath::FloatExt;

/// Cutoff, tolerance and transform choices for the nested integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Dimensionless cutoff Λ of the imaginary-frequency integral: the ζ
    /// integration stops at Λ·k·T_c/ħ.
    pub cutoff_lambda: f64,
    /// Relative tolerance of the two-dimensional (ζ, p) integral.
    pub rel_tol: f64,
    /// Relative tolerance of the Kramers–Kronig transforms feeding it.
    pub kk_rel_tol: f64,
    /// Function-evaluation budget per one-dimensional integration axis.
    pub max_nodes: usize,
    /// Variable transform of the `p ∈ [1, ∞)` axis.
    pub p_transform: PTransform,
}

/// How the semi-infinite `p` axis is mapped to a finite interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PTransform {
    /// `p = 1 + tan θ` over a truncated θ range.
    Tangent,
    /// `p = e^u` over `u ∈ [0, U]` (default).
    Exponential,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            cutoff_lambda: 10.0,
            rel_tol: 1e-4,
            kk_rel_tol: 1e-6,
            max_nodes: 20_000,
            p_transform: PTransform::Exponential,
        }
    }
}

impl QuadratureSpec {
    /// Checks the documented invariants.
    pub fn validate(&self) -> Result<()> {
        if !(5.0..=30.0).contains(&self.cutoff_lambda) {
            return Err(domain(format!(
                "QuadratureSpec: cutoff_lambda {} outside [5, 30]",
                self.cutoff_lambda
            )));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-2) {
            return Err(domain(format!(
                "QuadratureSpec: rel_tol {} outside (0, 1e-2]",
                self.rel_tol
            )));
        }
        if !(self.kk_rel_tol > 0.0 && self.kk_rel_tol <= 1e-2) {
            return Err(domain(format!(
                "QuadratureSpec: kk_rel_tol {} outside (0, 1e-2]",
                self.kk_rel_tol
            )));
        }
        if self.max_nodes < 64 {
            return Err(domain(format!(
                "QuadratureSpec: max_nodes {} below 64",
                self.max_nodes
            )));
        }
        Ok(())
    }
}

/// Stopping tolerance for one adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Tolerance {
    pub fn rel(rel: f64) -> Self {
        Tolerance { rel, abs: 0.0 }
    }

    fn met(&self, error: f64, driver: f64) -> bool {
        error <= self.abs.max(self.rel * driver.abs())
    }
}

/// Result of one adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadOutput<const N: usize> {
    /// Component-wise integral values; component 0 drove the refinement.
    pub value: [f64; N],
    /// Error estimate for component 0.
    pub error: f64,
    /// Number of integrand evaluations.
    pub evals: usize,
    /// Number of leaf intervals.
    pub intervals: usize,
    /// Whether the requested tolerance was met within the budget.
    pub converged: bool,
}

// 15-point Kronrod abscissae (positive half, descending), QUADPACK values.
const XGK15: [f64; 8] = [
    0.991_455_371_120_812_639_207,
    0.949_107_912_342_758_524_526,
    0.864_864_423_359_769_072_789,
    0.741_531_185_599_394_439_864,
    0.586_087_235_467_691_130_294,
    0.405_845_151_377_397_166_907,
    0.207_784_955_007_898_467_601,
    0.0,
];

// Kronrod weights matching XGK15.
const WGK15: [f64; 8] = [
    0.022_935_322_010_529_224_964,
    0.063_092_092_629_978_553_291,
    0.104_790_010_322_250_183_824,
    0.140_653_259_715_525_918_745,
    0.169_004_726_639_267_902_827,
    0.190_350_578_064_785_409_913,
    0.204_432_940_075_298_892_414,
    0.209_482_141_084_727_828_013,
];

// 7-point Gauss weights (odd-index abscissae of XGK15).
const WG7: [f64; 4] = [
    0.129_484_966_168_869_693_271,
    0.279_705_391_489_276_667_901,
    0.381_830_050_505_118_944_950,
    0.417_959_183_673_469_387_755,
];

struct Panel<const N: usize> {
    a: f64,
    b: f64,
    value: [f64; N],
    error: f64,
}

/// QUADPACK-style rescaling of the raw `|K15 - G7|` difference.
fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

fn qk15<const N: usize, F>(f: &mut F, a: f64, b: f64) -> Result<Panel<N>>
where
    F: FnMut(f64) -> Result<[f64; N]>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let mut eval = |x: f64| -> Result<[f64; N]> {
        let v = f(x)?;
        for c in v.iter() {
            if !c.is_finite() {
                return Err(numeric(format!("integrand non-finite at x = {x:e}")));
            }
        }
        Ok(v)
    };

    let f_center = eval(center)?;
    let mut kronrod = [0.0_f64; N];
    for (k, fc) in kronrod.iter_mut().zip(f_center.iter()) {
        *k = fc * WGK15[7];
    }
    // the center is also the middle node of the embedded 7-point Gauss rule
    let mut gauss0 = f_center[0] * WG7[3];
    let mut res_abs = f_center[0].abs() * WGK15[7];

    // fv[j] holds the driver values at the paired nodes for res_asc.
    let mut fv1 = [0.0_f64; 7];
    let mut fv2 = [0.0_f64; 7];

    for j in 0..7 {
        let dx = half * XGK15[j];
        let v1 = eval(center - dx)?;
        let v2 = eval(center + dx)?;
        fv1[j] = v1[0];
        fv2[j] = v2[0];
        for i in 0..N {
            kronrod[i] += WGK15[j] * (v1[i] + v2[i]);
        }
        res_abs += WGK15[j] * (v1[0].abs() + v2[0].abs());
        if j % 2 == 1 {
            // odd indices are the embedded Gauss nodes
            gauss0 += WG7[j / 2] * (fv1[j] + fv2[j]);
        }
    }

    let mean = kronrod[0] * 0.5;
    let mut res_asc = WGK15[7] * (f_center[0] - mean).abs();
    for j in 0..7 {
        res_asc += WGK15[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let raw_err = (kronrod[0] - gauss0) * half;
    let mut value = [0.0_f64; N];
    for i in 0..N {
        value[i] = kronrod[i] * half;
    }
    res_abs *= half.abs();
    res_asc *= half.abs();

    Ok(Panel {
        a,
        b,
        value,
        error: rescale_error(raw_err, res_abs, res_asc),
    })
}

/// Adaptive integration of `f` over `[a, b]`.
///
/// `seeds` lists interior points where the initial subdivision is cut
/// (values outside `(a, b)` are ignored).  The budget `max_evals` bounds the
/// number of integrand evaluations; when it is exhausted the best estimate is
/// returned with `converged == false`.
pub fn adaptive<const N: usize, F>(
    mut f: F,
    a: f64,
    b: f64,
    seeds: &[f64],
    tol: Tolerance,
    max_evals: usize,
) -> Result<QuadOutput<N>>
where
    F: FnMut(f64) -> Result<[f64; N]>,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(domain("adaptive: bounds must be finite"));
    }
    if a == b {
        return Ok(QuadOutput {
            value: [0.0; N],
            error: 0.0,
            evals: 0,
            intervals: 0,
            converged: true,
        });
    }
    if a > b {
        return Err(domain("adaptive: lower bound above upper bound"));
    }

    let mut cuts: Vec<f64> = seeds.iter().copied().filter(|&s| s > a && s < b).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let mut panels: Vec<Panel<N>> = Vec::with_capacity(cuts.len() + 1);
    let mut evals = 0usize;
    let mut lo = a;
    for &cut in cuts.iter().chain(core::iter::once(&b)) {
        panels.push(qk15(&mut f, lo, cut)?);
        evals += 15;
        lo = cut;
    }

    loop {
        let mut total = 0.0;
        let mut err = 0.0;
        for p in &panels {
            total += p.value[0];
            err += p.error;
        }
        if tol.met(err, total) || evals + 30 > max_evals {
            break;
        }

        // split the panel with the largest error estimate
        let mut worst = 0;
        for (i, p) in panels.iter().enumerate() {
            if p.error > panels[worst].error {
                worst = i;
            }
        }
        let Panel { a: pa, b: pb, .. } = panels[worst];
        let mid = 0.5 * (pa + pb);
        if mid <= pa || mid >= pb {
            // interval too narrow to split further
            break;
        }
        let left = qk15(&mut f, pa, mid)?;
        let right = qk15(&mut f, mid, pb)?;
        evals += 30;
        panels[worst] = left;
        panels.push(right);
    }

    // deterministic reduction: leaves in left-to-right order, Kahan-summed
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    let mut sums = [KahanSum::new(); N];
    let mut err_sum = KahanSum::new();
    for p in &panels {
        for i in 0..N {
            sums[i].add(p.value[i]);
        }
        err_sum.add(p.error);
    }
    let mut value = [0.0_f64; N];
    for i in 0..N {
        value[i] = sums[i].total();
    }
    let error = err_sum.total();

    Ok(QuadOutput {
        value,
        error,
        evals,
        intervals: panels.len(),
        converged: tol.met(error, value[0]),
    })
}

/// Scalar convenience wrapper around [`adaptive`].
pub fn adaptive_scalar<F>(
    mut f: F,
    a: f64,
    b: f64,
    seeds: &[f64],
    tol: Tolerance,
    max_evals: usize,
) -> Result<QuadOutput<1>>
where
    F: FnMut(f64) -> Result<f64>,
{
    adaptive(move |x| f(x).map(|v| [v]), a, b, seeds, tol, max_evals)
}

/// Compensated (Kahan) summation.
#[derive(Debug, Clone, Copy)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        KahanSum { sum: 0.0, comp: 0.0 }
    }

    pub fn add(&mut self, x: f64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum
    }
}

impl Default for KahanSum {
    fn default() -> Self {
        Self::new()
    }
}
