use num_complex::Complex64;

use crate::expsum::e;
use crate::sum::ComplexCompensatedSum;

// Kronrod 15-point nodes on [0, 1] (mirrored to [-1, 0]); odd indices are
// also the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Default cap on the number of panels an adaptive integral may visit.
pub const DEFAULT_PANEL_BUDGET: usize = 1 << 20;

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: Complex64,
    /// Sum of the per-panel `|K15 - G7|` estimates.
    pub error_estimate: f64,
    /// False when the panel budget ran out before every panel met its share
    /// of the tolerance; `value` is then the best estimate available.
    pub converged: bool,
    pub panels: usize,
}

fn gk15(f: &impl Fn(f64) -> Complex64, a: f64, b: f64) -> (Complex64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for i in 0..7 {
        let dx = half * XGK[i];
        let pair = f(center - dx) + f(center + dx);
        kronrod += pair * WGK[i];
        if i % 2 == 1 {
            gauss += pair * WG[i / 2];
        }
    }
    let k = kronrod * half;
    let g = gauss * half;
    (k, (k - g).norm())
}

/// `∫ f` over `[breaks[0], breaks.last()]` by adaptive Gauss–Kronrod 7/15.
///
/// The initial panels are the intervals between consecutive `breaks`, so
/// discontinuities and known oscillation scales can be placed on panel
/// boundaries. Each panel must meet `tol` scaled by its share of the total
/// length; panels that do not are bisected, depth first, until
/// `max_panels` panels have been evaluated.
pub fn integrate_adaptive(
    f: impl Fn(f64) -> Complex64,
    breaks: &[f64],
    tol: f64,
    max_panels: usize,
) -> Quadrature {
    assert!(breaks.len() >= 2, "need at least one panel");
    let total = breaks[breaks.len() - 1] - breaks[0];
    let mut stack: Vec<(f64, f64)> = breaks.windows(2).rev().map(|w| (w[0], w[1])).collect();
    let mut value = ComplexCompensatedSum::new();
    let mut error_estimate = 0.0;
    let mut evaluated = 0usize;
    let mut converged = true;
    while let Some((a, b)) = stack.pop() {
        let (k, err) = gk15(&f, a, b);
        evaluated += 1;
        let share = if total > 0.0 { tol * (b - a) / total } else { tol };
        let mid = 0.5 * (a + b);
        let splittable = mid > a && mid < b;
        if err <= share || !splittable || evaluated + stack.len() >= max_panels {
            if err > share {
                converged = false;
            }
            value.add(k);
            error_estimate += err;
        } else {
            stack.push((mid, b));
            stack.push((a, mid));
        }
    }
    Quadrature { value: value.value(), error_estimate, converged, panels: evaluated }
}

/// `∫_{z0}^{z1} e(z² τ + z ξ) dz` to absolute accuracy `1e-8`.
///
/// The phase derivative `2zτ + ξ` is linear, so the number of oscillations
/// on the interval is at most its length times the larger endpoint value.
/// The initial panels are sized to hold about one oscillation each.
pub fn fresnel_integral(z0: f64, z1: f64, tau: f64, xi: f64) -> Quadrature {
    fresnel_integral_with(z0, z1, tau, xi, 1e-8, DEFAULT_PANEL_BUDGET)
}

pub fn fresnel_integral_with(z0: f64, z1: f64, tau: f64, xi: f64, tol: f64, max_panels: usize) -> Quadrature {
    assert!(z0 < z1, "fresnel_integral needs z0 < z1");
    if tau == 0.0 && xi == 0.0 {
        return Quadrature {
            value: Complex64::new(z1 - z0, 0.0),
            error_estimate: 0.0,
            converged: true,
            panels: 0,
        };
    }
    let slope = (2.0 * z0 * tau + xi).abs().max((2.0 * z1 * tau + xi).abs());
    let cycles = slope * (z1 - z0);
    let panels = (cycles.ceil() as usize).clamp(1, max_panels / 2);
    let breaks: Vec<f64> = (0..=panels)
        .map(|k| if k == panels { z1 } else { z0 + (z1 - z0) * k as f64 / panels as f64 })
        .collect();
    integrate_adaptive(|z| e(z * z * tau + z * xi), &breaks, tol, max_panels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sum::ComplexCompensatedSum;
    use std::f64::consts::PI;

    #[test]
    fn weights_sum_to_two() {
        let k: f64 = 2.0 * WGK[..7].iter().sum::<f64>() + WGK[7];
        let g: f64 = 2.0 * WG[..3].iter().sum::<f64>() + WG[3];
        assert!((k - 2.0).abs() < 1e-15);
        assert!((g - 2.0).abs() < 1e-15);
    }

    #[test]
    fn rules_are_exact_on_polynomials() {
        for deg in 0..=22 {
            let f = |x: f64| Complex64::new(x.powi(deg), 0.0);
            let (k, err) = gk15(&f, -1.0, 1.0);
            let exact = if deg % 2 == 0 { 2.0 / (deg as f64 + 1.0) } else { 0.0 };
            assert!((k.re - exact).abs() < 1e-14, "K15 degree {deg}");
            if deg <= 13 {
                assert!(err < 1e-14, "G7 degree {deg}: {err}");
            }
        }
    }

    #[test]
    fn fresnel_examples() {
        let r = fresnel_integral(0.0, 1.0, 0.0, 0.0);
        assert_eq!(r.value, Complex64::new(1.0, 0.0));
        assert!(fresnel_integral(0.0, 1.0, 0.0, 1.0).value.norm() < 1e-12);
        let r = fresnel_integral(2.5, 7.25, 0.0, 0.0);
        assert!((r.value.re - 4.75).abs() < 1e-12 && r.value.im == 0.0);
    }

    #[test]
    fn fresnel_matches_riemann_oracle() {
        let n = 1_000_000;
        let h = 0.5 / n as f64;
        let mut acc = ComplexCompensatedSum::new();
        for k in 0..n {
            let z = (k as f64 + 0.5) * h;
            acc.add(e(z * z));
        }
        let oracle = acc.value() * h;
        let r = fresnel_integral(0.0, 0.5, 1.0, 0.0);
        assert!(r.converged);
        assert!((r.value - oracle).norm() < 1e-6, "{} vs {}", r.value, oracle);
    }

    #[test]
    fn linear_phase_has_closed_form() {
        // ∫ e(ξz) dz = (e(ξ z1) - e(ξ z0)) / (2πiξ).
        for &(z0, z1, xi) in &[(0.0, 10.0, 0.37), (3.0, 500.0, -1.3), (-4.0, 4.0, 25.0)] {
            let exact = (e(xi * z1) - e(xi * z0)) / Complex64::new(0.0, 2.0 * PI * xi);
            let r = fresnel_integral(z0, z1, 0.0, xi);
            assert!(r.converged);
            assert!((r.value - exact).norm() < 1e-8, "{z0} {z1} {xi}");
        }
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let r = fresnel_integral_with(0.0, 100.0, 3.0, 0.0, 1e-14, 64);
        assert!(!r.converged);
        assert!(r.panels <= 64);
    }
}
