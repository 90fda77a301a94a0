use num_complex::Complex64;
use rayon::prelude::*;

use crate::budget::WorkBudget;
use crate::circle::{arc_sample_points, default_arc_grid, MajorArc};
use crate::error::{invalid, Error, Result};
use crate::expsum::{mean_abs_pow, pow_from_norm_sqr, weyl_sum, GridEvaluator, GridSpec, TorusPoint, WeylTerms};
use crate::sum::{chunked_sum, pairwise_sum, CompensatedSum};

/// Largest `N` accepted in double mode unless raised in the options.
pub const DEFAULT_MAX_DOUBLE_N: u64 = 2048;

/// Rows of the `t`-grid handled by one task in double mode.
const ROW_CHUNK: usize = 64;

/// Which integral of `|S_N|^α` a [`NormSample`] holds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormMode {
    /// `∫₀¹ |S_N(x, t)|^α dt` at a fixed `x`.
    Marginal { x: f64 },
    /// `∫₀¹∫₀¹ |S_N(x, t)|^α dx dt`.
    Double,
    /// `sup_x ∫_{I(a,q)} |S_N(x, t)|^α dt` with `x` ranging over `I(b, q)`.
    Arc(MajorArc),
}

impl NormMode {
    pub fn label(&self) -> &'static str {
        match self {
            NormMode::Marginal { .. } => "marginal",
            NormMode::Double => "double",
            NormMode::Arc(_) => "arc",
        }
    }

    /// Whether two modes describe the same integral.
    pub fn same_as(&self, other: &NormMode) -> bool {
        match (self, other) {
            (NormMode::Marginal { x }, NormMode::Marginal { x: y }) => x == y,
            (NormMode::Double, NormMode::Double) => true,
            (NormMode::Arc(a), NormMode::Arc(b)) => {
                (a.q(), a.a(), a.b(), a.eps()) == (b.q(), b.a(), b.b(), b.eps())
            }
            _ => false,
        }
    }
}

/// One evaluated integral. `value` is the integral itself, not its `α`-th
/// root.
#[derive(Debug, Clone, PartialEq)]
pub struct NormSample {
    pub n: u64,
    pub alpha: f64,
    pub mode: NormMode,
    pub value: f64,
    pub t_step: f64,
    /// `None` in marginal mode.
    pub x_step: Option<f64>,
    /// Grids used, e.g. `t=131072pts@0.5 x=1024pts@0.5`.
    pub resolution: String,
    /// Set when the grids were coarser than the resolution rule and the
    /// caller asked to proceed anyway.
    pub unsafe_grid: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    /// Defaults to [`standard_t_grid`].
    pub t_grid: Option<GridSpec>,
    /// Defaults to [`standard_x_grid`].
    pub x_grid: Option<GridSpec>,
    /// Sub-grid mapped onto the arc rectangle in arc mode.
    pub arc_grid: (GridSpec, GridSpec),
    /// Accept grids that break the resolution rule and mark the sample.
    pub allow_unsafe: bool,
    /// Use the four-fold row symmetry in double mode when the grids allow it.
    pub fold: bool,
    pub max_double_n: u64,
    pub budget: WorkBudget,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            t_grid: None,
            x_grid: None,
            arc_grid: default_arc_grid(),
            allow_unsafe: false,
            fold: true,
            max_double_n: DEFAULT_MAX_DOUBLE_N,
            budget: WorkBudget::default(),
        }
    }
}

/// Midpoint grid of `8N²` points: step `1/(8N²)`, eight samples per period
/// of the fastest `t`-oscillation.
pub fn standard_t_grid(n: u64) -> GridSpec {
    GridSpec::midpoint((8 * n * n) as usize)
}

/// Midpoint grid of `8N` points.
pub fn standard_x_grid(n: u64) -> GridSpec {
    GridSpec::midpoint((8 * n) as usize)
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > 0.0 {
        Ok(())
    } else {
        Err(invalid(format!("alpha must be positive and finite, got {alpha}")))
    }
}

/// `Ok(false)` when the grid meets the rule, `Ok(true)` when it does not but
/// `allow_unsafe` is set.
fn resolution_ok(what: &str, points: usize, needed: u64, allow_unsafe: bool) -> Result<bool> {
    if points as u64 >= needed {
        Ok(false)
    } else if allow_unsafe {
        Ok(true)
    } else {
        Err(Error::Resolution(format!("{what} grid has {points} points, needs at least {needed}")))
    }
}

/// Midpoint-rule value of the integral selected by `mode`.
///
/// Double and marginal modes need a `t`-step of at most `1/(8N²)`; double
/// mode also needs an `x`-step of at most `1/(8N)`. At even `α` the standard
/// grids are exact up to rounding, since they exceed the trigonometric degree
/// of `|S_N|^α`.
///
/// ```
/// use weyl_lab::moments::{moment_quadrature, NormMode, QuadratureOptions};
///
/// let s = moment_quadrature(16, 2.0, &NormMode::Double, &QuadratureOptions::default()).unwrap();
/// assert!((s.value - 16.0).abs() < 1e-9);
/// ```
pub fn moment_quadrature(n: u64, alpha: f64, mode: &NormMode, opts: &QuadratureOptions) -> Result<NormSample> {
    Ok(moment_quadrature_multi(n, &[alpha], mode, opts)?.remove(0))
}

/// [`moment_quadrature`] for several exponents from one pass over the grid.
pub fn moment_quadrature_multi(
    n: u64,
    alphas: &[f64],
    mode: &NormMode,
    opts: &QuadratureOptions,
) -> Result<Vec<NormSample>> {
    if n == 0 {
        return Err(invalid("N must be positive"));
    }
    if alphas.is_empty() {
        return Err(invalid("no exponents given"));
    }
    for &alpha in alphas {
        check_alpha(alpha)?;
    }
    match mode {
        NormMode::Double => double(n, alphas, opts),
        NormMode::Marginal { x } => marginal(n, *x, alphas, opts),
        NormMode::Arc(arc) => arc_restricted(n, arc, alphas, opts),
    }
}

fn double(n: u64, alphas: &[f64], opts: &QuadratureOptions) -> Result<Vec<NormSample>> {
    if n > opts.max_double_n {
        return Err(Error::MemoryCap(format!(
            "double quadrature with N = {n} exceeds the cap {}",
            opts.max_double_n
        )));
    }
    let tg = opts.t_grid.unwrap_or_else(|| standard_t_grid(n));
    let xg = opts.x_grid.unwrap_or_else(|| standard_x_grid(n));
    let unsafe_t = resolution_ok("t", tg.points(), 8 * n * n, opts.allow_unsafe)?;
    let unsafe_x = resolution_ok("x", xg.points(), 8 * n, opts.allow_unsafe)?;
    let (gt, gx) = (tg.points(), xg.points());
    opts.budget.check(gt as u128 * gx as u128)?;

    // S(x, t + 1/2) = S(x + 1/2, t) because n² ≡ n (mod 2), and
    // |S(-x, -t)| = |S(x, t)|. On grids closed under both maps the rows
    // k, Gt-1-k, k+Gt/2 and Gt/2-1-k carry the same integral over x.
    let fold = opts.fold
        && gt % 4 == 0
        && tg.shift() == 0.5
        && gx % 2 == 0
        && xg.is_reflection_symmetric();
    let (rows, weight) = if fold { (gt / 4, 4.0) } else { (gt, 1.0) };

    let partial = map_row_chunks(n, &tg, &xg, rows, || vec![CompensatedSum::new(); alphas.len()], |row, acc| {
        for (slot, &alpha) in acc.iter_mut().zip(alphas) {
            slot.add(row.iter().map(|z| pow_from_norm_sqr(z.norm_sqr(), alpha)).collect::<CompensatedSum>().value());
        }
    });

    let resolution = format!("t={} x={}{}", tg.describe(), xg.describe(), if fold { " fold=4" } else { "" });
    Ok(alphas
        .iter()
        .enumerate()
        .map(|(i, &alpha)| {
            let totals: Vec<f64> = partial.iter().map(|p| p[i].value()).collect();
            NormSample {
                n,
                alpha,
                mode: NormMode::Double,
                value: weight * pairwise_sum(&totals) / (gt as f64 * gx as f64),
                t_step: tg.step(),
                x_step: Some(xg.step()),
                resolution: resolution.clone(),
                unsafe_grid: unsafe_t || unsafe_x,
            }
        })
        .collect())
}

/// Runs `row_fn` on `S_N(·, t_k)` over the x-grid for `k < rows`, in
/// chunks of [`ROW_CHUNK`] rows, one accumulator per chunk. Chunk results
/// come back in index order, whatever the thread count.
pub(crate) fn map_row_chunks<T: Send>(
    n: u64,
    tg: &GridSpec,
    xg: &GridSpec,
    rows: usize,
    init: impl Fn() -> T + Sync + Send,
    row_fn: impl Fn(&[Complex64], &mut T) + Sync + Send,
) -> Vec<T> {
    let gx = xg.points();
    let x_offset = xg.offset();
    (0..rows.div_ceil(ROW_CHUNK))
        .into_par_iter()
        .map_init(
            || (GridEvaluator::new(*xg), vec![Complex64::new(0.0, 0.0); gx]),
            |(evaluator, buf), c| {
                let mut acc = init();
                for k in c * ROW_CHUNK..((c + 1) * ROW_CHUNK).min(rows) {
                    // e(m · x_offset) is folded into the coefficients.
                    let p = TorusPoint::new(x_offset, tg.node(k));
                    let terms = WeylTerms::new(1, n, p).zip(1i64..).map(|(z, m)| (m, z));
                    evaluator.eval_pretwiddled_into(terms, buf);
                    row_fn(buf, &mut acc);
                }
                acc
            },
        )
        .collect()
}

/// `Σ_k c_k e(k² θ)` for `k = 1..=len` at every node of `grid`, one FFT.
/// Frequencies fold mod the grid size.
pub(crate) fn quadratic_spectrum_values(coeffs: &[Complex64], grid: &GridSpec) -> Vec<Complex64> {
    let mut buf = vec![Complex64::new(0.0, 0.0); grid.points()];
    let terms = coeffs.iter().zip(1i64..).map(|(&c, k)| (k * k, c));
    GridEvaluator::new(*grid).eval_into(terms, &mut buf);
    buf
}

fn marginal(n: u64, x: f64, alphas: &[f64], opts: &QuadratureOptions) -> Result<Vec<NormSample>> {
    let tg = opts.t_grid.unwrap_or_else(|| standard_t_grid(n));
    let unsafe_t = resolution_ok("t", tg.points(), 8 * n * n, opts.allow_unsafe)?;
    opts.budget.check(tg.points() as u128 + n as u128)?;

    // The coefficients e(kx + k² offset) already carry the grid offset.
    let mut buf = vec![Complex64::new(0.0, 0.0); tg.points()];
    let terms = WeylTerms::new(1, n, TorusPoint::new(x, tg.offset()))
        .zip(1i64..)
        .map(|(z, k)| (k * k, z));
    GridEvaluator::new(tg).eval_pretwiddled_into(terms, &mut buf);

    Ok(alphas
        .iter()
        .map(|&alpha| NormSample {
            n,
            alpha,
            mode: NormMode::Marginal { x },
            value: mean_abs_pow(&buf, alpha),
            t_step: tg.step(),
            x_step: None,
            resolution: format!("t={}", tg.describe()),
            unsafe_grid: unsafe_t,
        })
        .collect())
}

fn arc_restricted(n: u64, arc: &MajorArc, alphas: &[f64], opts: &QuadratureOptions) -> Result<Vec<NormSample>> {
    if arc.n() != n {
        return Err(invalid(format!("arc was built for N = {}, not {n}", arc.n())));
    }
    let (gx, gt) = opts.arc_grid;
    let t_step = 2.0 * arc.half_width_t() / gt.points() as f64;
    let x_step = 2.0 * arc.half_width_x() / gx.points() as f64;
    let nf = n as f64;
    let too_coarse = t_step > 1.0 / (8.0 * nf * nf) || x_step > 1.0 / (8.0 * nf);
    if too_coarse && !opts.allow_unsafe {
        return Err(Error::Resolution(format!(
            "arc sub-grid steps ({x_step:e}, {t_step:e}) exceed (1/(8N), 1/(8N^2))"
        )));
    }
    let points = arc_sample_points(arc, &gx, &gt);
    opts.budget.check(points.len() as u128 * n as u128)?;
    let values: Vec<Complex64> = points.par_iter().map(|&p| weyl_sum(n, p)).collect();

    let rows = gt.points();
    let width = 2.0 * arc.half_width_t();
    Ok(alphas
        .iter()
        .map(|&alpha| {
            let best = values
                .chunks(rows)
                .map(|row| width * chunked_sum(rows, |j| pow_from_norm_sqr(row[j].norm_sqr(), alpha)) / rows as f64)
                .fold(f64::NEG_INFINITY, f64::max);
            NormSample {
                n,
                alpha,
                mode: NormMode::Arc(*arc),
                value: best,
                t_step,
                x_step: Some(x_step),
                resolution: format!("arc t={} x={}", gt.describe(), gx.describe()),
                unsafe_grid: too_coarse,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::FareyFraction;
    use crate::moments::moment_exact_even;

    fn opts() -> QuadratureOptions {
        QuadratureOptions::default()
    }

    #[test]
    fn single_term_is_one() {
        let arc_n1 = MajorArc::with_rules(
            FareyFraction::origin(),
            0,
            1,
            0.01,
            crate::circle::ArcRules { allow_eps_zero: false, allow_origin: true },
        )
        .unwrap();
        for mode in [NormMode::Double, NormMode::Marginal { x: 0.3 }] {
            for alpha in [0.5, 2.0, 3.9, 7.0] {
                let s = moment_quadrature(1, alpha, &mode, &opts()).unwrap();
                assert!((s.value - 1.0).abs() < 1e-13, "{mode:?} {alpha}: {}", s.value);
            }
        }
        // The arc integral is over a window of width 2·10⁻², so it is the
        // width times 1.
        let s = moment_quadrature(1, 3.0, &NormMode::Arc(arc_n1), &opts()).unwrap();
        assert!((s.value - 2.0 * arc_n1.half_width_t()).abs() < 1e-15);
    }

    #[test]
    fn parseval() {
        for n in [2, 7, 16, 64] {
            let s = moment_quadrature(n, 2.0, &NormMode::Double, &opts()).unwrap();
            assert!((s.value / n as f64 - 1.0).abs() < 1e-9, "N = {n}: {}", s.value);
            for x in [0.0, 0.25, 1.0 / 3.0] {
                let m = moment_quadrature(n, 2.0, &NormMode::Marginal { x }, &opts()).unwrap();
                assert!((m.value / n as f64 - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn even_moments_match_exact_counts() {
        for n in [5u64, 12, 32] {
            let s = moment_quadrature_multi(n, &[4.0, 6.0], &NormMode::Double, &opts()).unwrap();
            for (sample, k) in s.iter().zip([2, 3]) {
                let exact = moment_exact_even(n, k).unwrap() as f64;
                assert!((sample.value / exact - 1.0).abs() < 1e-9, "N={n} k={k}: {} vs {exact}", sample.value);
            }
        }
    }

    #[test]
    fn fold_matches_unfolded() {
        let folded = moment_quadrature_multi(9, &[1.5, 3.9], &NormMode::Double, &opts()).unwrap();
        let plain = moment_quadrature_multi(9, &[1.5, 3.9], &NormMode::Double, &QuadratureOptions { fold: false, ..opts() })
            .unwrap();
        assert!(folded[0].resolution.ends_with("fold=4"));
        assert!(!plain[0].resolution.contains("fold"));
        for (f, p) in folded.iter().zip(&plain) {
            assert!((f.value / p.value - 1.0).abs() < 1e-12);
        }
        // An odd t-grid cannot fold. At α = 1.5 the rule is not exact, so
        // the two grids differ by discretization error.
        let odd = QuadratureOptions { t_grid: Some(GridSpec::midpoint(8 * 81 + 1)), ..opts() };
        let s = moment_quadrature(9, 1.5, &NormMode::Double, &odd).unwrap();
        assert!(!s.resolution.contains("fold"));
        let rel = (s.value / folded[0].value - 1.0).abs();
        assert!(rel < 1e-4, "{rel}");
    }

    #[test]
    fn marginal_matches_pointwise_sums() {
        let n = 6;
        let x = 0.2;
        let tg = standard_t_grid(n);
        let values: Vec<Complex64> = tg.nodes().map(|t| weyl_sum(n, TorusPoint::new(x, t))).collect();
        let oracle = mean_abs_pow(&values, 3.3);
        let s = moment_quadrature(n, 3.3, &NormMode::Marginal { x }, &opts()).unwrap();
        assert!((s.value / oracle - 1.0).abs() < 1e-12);
    }

    #[test]
    fn resolution_rule() {
        let coarse = QuadratureOptions { t_grid: Some(GridSpec::midpoint(100)), ..opts() };
        assert!(matches!(moment_quadrature(8, 3.0, &NormMode::Double, &coarse), Err(Error::Resolution(_))));
        let coarse_x = QuadratureOptions { x_grid: Some(GridSpec::midpoint(10)), ..opts() };
        assert!(matches!(moment_quadrature(8, 3.0, &NormMode::Double, &coarse_x), Err(Error::Resolution(_))));
        // The x-grid does not matter in marginal mode.
        assert!(moment_quadrature(8, 3.0, &NormMode::Marginal { x: 0.0 }, &coarse_x).is_ok());
        let forced = QuadratureOptions { allow_unsafe: true, ..coarse };
        let s = moment_quadrature(8, 3.0, &NormMode::Double, &forced).unwrap();
        assert!(s.unsafe_grid);
    }

    #[test]
    fn domain_and_caps() {
        assert!(moment_quadrature(0, 2.0, &NormMode::Double, &opts()).is_err());
        assert!(moment_quadrature(4, 0.0, &NormMode::Double, &opts()).is_err());
        assert!(moment_quadrature(4, f64::NAN, &NormMode::Double, &opts()).is_err());
        let capped = QuadratureOptions { max_double_n: 3, ..opts() };
        assert!(matches!(moment_quadrature(4, 2.0, &NormMode::Double, &capped), Err(Error::MemoryCap(_))));
        let small = QuadratureOptions { budget: WorkBudget::new(1000), ..opts() };
        assert!(matches!(moment_quadrature(4, 2.0, &NormMode::Double, &small), Err(Error::Budget { .. })));
    }

    #[test]
    fn arc_mode_scales_with_the_center_value() {
        let arc = MajorArc::new(FareyFraction::new(1, 3).unwrap(), 0, 1024, 0.01).unwrap();
        let s = moment_quadrature(1024, 2.0, &NormMode::Arc(arc), &opts()).unwrap();
        // |S| ≈ (N/q)|S(1,0,3)| = N/√3 across the whole arc.
        let predicted = 2.0 * arc.half_width_t() * 1024.0 * 1024.0 / 3.0;
        assert!((s.value / predicted - 1.0).abs() < 0.05, "{} vs {predicted}", s.value);
        let other = MajorArc::new(FareyFraction::new(1, 3).unwrap(), 0, 512, 0.01).unwrap();
        assert!(moment_quadrature(1024, 2.0, &NormMode::Arc(other), &opts()).is_err());
    }
}
