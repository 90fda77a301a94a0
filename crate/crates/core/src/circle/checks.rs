use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use super::arcs::MajorArc;
use super::quad::{fresnel_integral, integrate_adaptive, DEFAULT_PANEL_BUDGET};
use crate::error::{invalid, Error, Result};
use crate::expsum::{e, weyl_sum, GridSpec, TorusPoint};
use crate::gauss::{gauss_sum_direct, GaussSumParams};
use crate::sum::ComplexCompensatedSum;

/// Default constant `c` in `|measured - predicted| ≤ c·q`.
pub const DEFAULT_CENTER_CONSTANT: f64 = 4.0;

/// `|S_N(b/q, a/q)|` against `(N/q)·|S(a, b, q)|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CenterCheck {
    pub measured: f64,
    pub predicted: f64,
    pub ratio: f64,
    /// `|measured - predicted|`.
    pub error: f64,
    /// `c·q`.
    pub bound: f64,
    pub within_bound: bool,
}

fn require_admissible(arc: &MajorArc) -> Result<()> {
    if arc.is_admissible() {
        Ok(())
    } else {
        Err(Error::Inadmissible { q: arc.q(), a: arc.a(), b: arc.b() })
    }
}

fn gauss_abs(arc: &MajorArc) -> f64 {
    if arc.center_t().is_origin() {
        return 1.0;
    }
    let p = GaussSumParams::new(arc.a() as i64, arc.b() as i64, arc.q()).expect("arc fractions are reduced");
    gauss_sum_direct(&p).norm()
}

/// Compares the Weyl sum at the arc center with the Gauss-sum prediction.
///
/// Splitting `n = mq + s` gives `S_N(b/q, a/q) = ⌊N/q⌋·S(a, b, q)` plus at
/// most `q` leftover unimodular terms, so `|measured - predicted| ≤ q` up to
/// the fractional part of `N/q`; `c = 4` leaves room for both.
pub fn arc_center_sum_check(arc: &MajorArc, c: f64) -> Result<CenterCheck> {
    require_admissible(arc)?;
    let q = arc.q() as f64;
    let measured = weyl_sum(arc.n(), TorusPoint::rational(arc.b() as i64, arc.a() as i64, arc.q())).norm();
    let predicted = arc.n() as f64 / q * gauss_abs(arc);
    let error = (measured - predicted).abs();
    Ok(CenterCheck { measured, predicted, ratio: measured / predicted, error, bound: c * q, within_bound: error <= c * q })
}

/// Extremes of `|S_N|` over a sampled arc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcScan {
    pub min: f64,
    pub max: f64,
    pub argmin: TorusPoint,
    pub argmax: TorusPoint,
    /// `N/√q`, the scale of the lower bound.
    pub lower_scale: f64,
    /// `2N/√q + √q·log q`.
    pub upper_bound: f64,
}

/// Maps node `k` of `grid` onto `[center - half, center + half]`.
fn arc_node(grid: &GridSpec, k: usize, center: f64, half: f64) -> f64 {
    center + half * (2.0 * grid.node(k) - 1.0)
}

/// The points of `grid_x × grid_t` mapped onto the arc rectangle.
///
/// Each grid's unit interval is stretched over the corresponding side of the
/// arc, so the default midpoint grid with an odd number of points includes
/// the center.
pub fn arc_sample_points(arc: &MajorArc, grid_x: &GridSpec, grid_t: &GridSpec) -> Vec<TorusPoint> {
    let (cx, ct) = arc.center();
    let mut points = Vec::with_capacity(grid_x.points() * grid_t.points());
    for i in 0..grid_x.points() {
        let x = arc_node(grid_x, i, cx, arc.half_width_x());
        for j in 0..grid_t.points() {
            points.push(TorusPoint::new(x, arc_node(grid_t, j, ct, arc.half_width_t())));
        }
    }
    points
}

/// The default 33 × 33 midpoint sub-grid of an arc.
pub fn default_arc_grid() -> (GridSpec, GridSpec) {
    (GridSpec::midpoint(33), GridSpec::midpoint(33))
}

fn check_arc_resolution(n: f64, width_x: f64, width_t: f64, grid_x: &GridSpec, grid_t: &GridSpec) -> Result<()> {
    let step_x = width_x / grid_x.points() as f64;
    let step_t = width_t / grid_t.points() as f64;
    if step_x > 1.0 / (8.0 * n) {
        return Err(Error::Resolution(format!("x step {step_x:e} exceeds 1/(8N) = {:e}", 1.0 / (8.0 * n))));
    }
    if step_t > 1.0 / (8.0 * n * n) {
        return Err(Error::Resolution(format!("t step {step_t:e} exceeds 1/(8N^2) = {:e}", 1.0 / (8.0 * n * n))));
    }
    Ok(())
}

/// `min` and `max` of `|S_N|` over the sampled arc.
///
/// The grid must resolve the arc: its `x` spacing may not exceed `1/(8N)`
/// and its `t` spacing `1/(8N²)`. Arcs are narrow (`2·10⁻² N^ε` steps of
/// those sizes), so for any `N < 6.25^(1/ε)` even a single sample does.
/// Ties go to the first point in `x`-major order.
pub fn arc_sup_inf_scan(arc: &MajorArc, grid_x: &GridSpec, grid_t: &GridSpec) -> Result<ArcScan> {
    let n = arc.n() as f64;
    check_arc_resolution(n, 2.0 * arc.half_width_x(), 2.0 * arc.half_width_t(), grid_x, grid_t)?;
    let points = arc_sample_points(arc, grid_x, grid_t);
    let values: Vec<f64> = points.par_iter().map(|&p| weyl_sum(arc.n(), p).norm()).collect();
    let (mut lo, mut hi) = (0usize, 0usize);
    for (k, v) in values.iter().enumerate() {
        if *v < values[lo] {
            lo = k;
        }
        if *v > values[hi] {
            hi = k;
        }
    }
    let q = arc.q() as f64;
    Ok(ArcScan {
        min: values[lo],
        max: values[hi],
        argmin: points[lo],
        argmax: points[hi],
        lower_scale: n / q.sqrt(),
        upper_bound: 2.0 * n / q.sqrt() + q.sqrt() * q.ln(),
    })
}

/// The pieces of Euler's summation formula for the inner sum over one
/// residue class `s`.
///
/// With `M = ⌊N/q⌋`, `z = mq + s` and `f(y) = e((yq + s)²τ + (yq + s)ξ)`,
///
/// ```text
/// Σ_{m=1}^{M} f(m) = f(1) + (1/q) ∫_{q+s}^{Mq+s} e(z²τ + zξ) dz
///                  + 2πi ∫_{q+s}^{Mq+s} {(z - s)/q} (2zτ + ξ) e(z²τ + zξ) dz.
/// ```
///
/// The correction integral carries `2zτ + ξ`: the `y`-derivative of the
/// phase is `q(2zτ + ξ)` and the change of variables contributes `1/q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerTerms {
    pub s: u64,
    /// `Σ_{m=1}^{M} f(m)` summed directly.
    pub direct: Complex64,
    /// `f(1)`.
    pub boundary: Complex64,
    /// `(1/q) ∫ e(z²τ + zξ) dz`.
    pub main: Complex64,
    /// `2πi ∫ {(z - s)/q} (2zτ + ξ) e(z²τ + zξ) dz`.
    pub correction: Complex64,
    /// `|direct - boundary - main - correction|`.
    pub residual: f64,
    /// `|(1/q) ∫ (e(z²τ + zξ) - 1) dz|`, the deviation of the main term
    /// from its value at the arc center.
    pub main_deviation: f64,
    pub converged: bool,
}

/// Euler-summation decomposition of `Σ_{m=1}^{⌊N/q⌋} e((mq+s)²τ + (mq+s)ξ)`.
pub fn euler_summation_terms(arc: &MajorArc, s: u64, xi: f64, tau: f64) -> Result<EulerTerms> {
    let q = arc.q();
    if s == 0 || s > q {
        return Err(invalid(format!("s = {s} is not in [1, {q}]")));
    }
    let m_max = arc.n() / q;
    if m_max == 0 {
        return Err(invalid("N < q leaves no complete residue block"));
    }
    let (qf, sf) = (q as f64, s as f64);
    let phase = |z: f64| e(z * z * tau + z * xi);

    let mut direct = ComplexCompensatedSum::new();
    for m in 1..=m_max {
        direct.add(phase((m * q + s) as f64));
    }
    let direct = direct.value();
    let boundary = phase(qf + sf);

    if m_max == 1 {
        return Ok(EulerTerms {
            s,
            direct,
            boundary,
            main: Complex64::new(0.0, 0.0),
            correction: Complex64::new(0.0, 0.0),
            residual: (direct - boundary).norm(),
            main_deviation: 0.0,
            converged: true,
        });
    }

    let (z0, z1) = (qf + sf, (m_max * q + s) as f64);
    let main_q = fresnel_integral(z0, z1, tau, xi);
    let main = main_q.value / qf;
    let main_deviation = ((main_q.value - (z1 - z0)) / qf).norm();

    // On [z_m, z_{m+1}] with z_m = mq + s the sawtooth is exactly
    // (z - z_m)/q, so each panel is integrated on its own.
    let mut correction = ComplexCompensatedSum::new();
    let mut converged = main_q.converged;
    let panel_tol = 1e-8 / m_max as f64;
    for m in 1..m_max {
        let left = (m * q + s) as f64;
        let right = ((m + 1) * q + s) as f64;
        let r = integrate_adaptive(
            |z| phase(z) * Complex64::new(0.0, TAU * (z - left) / qf * (2.0 * z * tau + xi)),
            &[left, right],
            panel_tol,
            DEFAULT_PANEL_BUDGET,
        );
        converged &= r.converged;
        correction.add(r.value);
    }
    let correction = correction.value();

    Ok(EulerTerms {
        s,
        direct,
        boundary,
        main,
        correction,
        residual: (direct - boundary - main - correction).norm(),
        main_deviation,
        converged,
    })
}

/// Euler-summation terms over every residue class `s = 1..q` at the offset
/// `(ξ, τ)` from the arc center.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerCheck {
    pub terms: Vec<EulerTerms>,
    pub max_correction: f64,
    /// `(10π/q)·N^ε`.
    pub correction_bound: f64,
    pub max_main_deviation: f64,
    /// `(6/q)·N^ε`, reported for comparison with `max_main_deviation`.
    pub main_deviation_bound: f64,
    pub max_residual: f64,
    pub converged: bool,
}

impl EulerCheck {
    pub fn correction_within_bound(&self) -> bool {
        self.max_correction <= self.correction_bound
    }
}

/// Runs [`euler_summation_terms`] for `s = 1..q`; the offsets must lie in
/// the arc.
pub fn arc_euler_check(arc: &MajorArc, xi: f64, tau: f64) -> Result<EulerCheck> {
    if xi.abs() > arc.half_width_x() || tau.abs() > arc.half_width_t() {
        return Err(invalid("offset (xi, tau) lies outside the arc"));
    }
    let terms: Vec<EulerTerms> = (1..=arc.q())
        .into_par_iter()
        .map(|s| euler_summation_terms(arc, s, xi, tau))
        .collect::<Result<_>>()?;
    let max_of = |f: fn(&EulerTerms) -> f64| terms.iter().map(f).fold(0.0, f64::max);
    let scale = (arc.n() as f64).powf(arc.eps()) / arc.q() as f64;
    Ok(EulerCheck {
        max_correction: max_of(|t| t.correction.norm()),
        correction_bound: 10.0 * std::f64::consts::PI * scale,
        max_main_deviation: max_of(|t| t.main_deviation),
        main_deviation_bound: 6.0 * scale,
        max_residual: max_of(|t| t.residual),
        converged: terms.iter().all(|t| t.converged),
        terms,
    })
}
