//! Major arcs of the torus and the checks built on them.
//!
//! A major arc `M(q, a, b)` is the rectangle around `(b/q, a/q)` with
//! half-widths `10⁻² N^(ε-1)` in `x` and `10⁻² N^(ε-2)` in `t`, for
//! `1 ≤ a < q ≤ N^(1/2-ε)` with `gcd(a, q) = 1` and `0 ≤ b < q`. On an arc
//! whose Gauss sum does not vanish, `|S_N|` is close to `(N/q)|S(a, b, q)|`,
//! which is of size `N/√q`.
//!
//! ```
//! use weyl_lab::circle::{arc_center_sum_check, FareyFraction, MajorArc};
//!
//! let arc = MajorArc::new(FareyFraction::new(1, 3).unwrap(), 0, 4096, 0.01).unwrap();
//! let check = arc_center_sum_check(&arc, 4.0).unwrap();
//! assert!(check.within_bound);
//! assert!((check.ratio - 1.0).abs() < 0.1);
//! ```

mod arcs;
mod checks;
mod quad;

pub use arcs::{
    check_disjoint, enumerate_major_arcs, enumerate_major_arcs_with, max_denominator, ArcRules, Disjointness,
    FareyFraction, MajorArc, MAX_EPS,
};
pub use checks::{
    arc_center_sum_check, arc_euler_check, arc_sample_points, arc_sup_inf_scan, default_arc_grid,
    euler_summation_terms, ArcScan, CenterCheck, EulerCheck, EulerTerms, DEFAULT_CENTER_CONSTANT,
};
pub use quad::{fresnel_integral, fresnel_integral_with, integrate_adaptive, Quadrature, DEFAULT_PANEL_BUDGET};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::expsum::GridSpec;

    fn arc(a: u64, q: u64, b: u64, n: u64) -> MajorArc {
        MajorArc::new(FareyFraction::new(a, q).unwrap(), b, n, 0.01).unwrap()
    }

    #[test]
    fn farey_validation() {
        assert!(FareyFraction::new(1, 1).is_err());
        assert!(FareyFraction::new(0, 5).is_err());
        assert!(FareyFraction::new(5, 5).is_err());
        assert!(matches!(FareyFraction::new(2, 4), Err(Error::NotCoprime { gcd: 2, .. })));
        assert!(FareyFraction::new(3, 7).is_ok());
    }

    #[test]
    fn arc_rules() {
        let third = FareyFraction::new(1, 3).unwrap();
        assert!(MajorArc::new(third, 0, 100, 0.0).is_err());
        assert!(MajorArc::new(third, 0, 100, 0.02).is_err());
        assert!(MajorArc::new(third, 3, 100, 0.01).is_err());
        let zero = ArcRules { allow_eps_zero: true, allow_origin: false };
        let a = MajorArc::with_rules(third, 0, 100, 0.0, zero).unwrap();
        assert!((a.half_width_x() - 1e-4).abs() < 1e-18);
        assert!((a.half_width_t() - 1e-6).abs() < 1e-20);
        assert!(MajorArc::new(FareyFraction::origin(), 0, 100, 0.01).is_err());
        let origin = ArcRules { allow_eps_zero: false, allow_origin: true };
        assert!(MajorArc::with_rules(FareyFraction::origin(), 0, 100, 0.01, origin).is_ok());
        // q must not exceed N^(1/2 - eps).
        assert!(MajorArc::new(FareyFraction::new(1, 11).unwrap(), 0, 100, 0.01).is_err());
    }

    #[test]
    fn max_denominator_values() {
        assert_eq!(max_denominator(10_000, 0.01), 91);
        assert_eq!(max_denominator(4096, 0.01), 58);
        assert_eq!(max_denominator(100, 0.0), 10);
        assert_eq!(max_denominator(1, 0.01), 1);
    }

    #[test]
    fn enumeration_examples() {
        let all = enumerate_major_arcs(10_000, 0.01, 2, false).unwrap();
        assert_eq!(all.len(), 2);
        let admissible = enumerate_major_arcs(10_000, 0.01, 2, true).unwrap();
        assert_eq!(admissible.len(), 1);
        assert_eq!(admissible[0].b(), 1);

        let arcs = enumerate_major_arcs(100, 0.01, 3, true).unwrap();
        assert_eq!(arcs.iter().filter(|a| a.q() == 3).count(), 6);

        assert!(enumerate_major_arcs(100, 0.01, 1, false).unwrap().is_empty());
        assert!(enumerate_major_arcs(100, 0.0, 3, false).is_err());
        assert!(enumerate_major_arcs(100, 0.01, 10, false).is_err());
    }

    #[test]
    fn disjointness_examples() {
        let qmax = max_denominator(4096, 0.01);
        let family = enumerate_major_arcs(4096, 0.01, qmax, true).unwrap();
        assert_eq!(check_disjoint(&family).unwrap(), Disjointness { disjoint: true, overlap: None });

        let one = arc(1, 3, 0, 4096);
        let r = check_disjoint(&[one, arc(1, 2, 1, 4096), one]).unwrap();
        assert_eq!(r, Disjointness { disjoint: false, overlap: Some((0, 2)) });

        let n = 1_000_000;
        assert!(check_disjoint(&[arc(1, 2, 1, n), arc(1, 3, 0, n)]).unwrap().disjoint);
        assert!(check_disjoint(&[]).unwrap().disjoint);
        assert!(check_disjoint(&[arc(1, 2, 1, 4096), arc(1, 3, 0, 1024)]).is_err());
    }

    #[test]
    fn disjointness_sees_wide_overlaps() {
        // With eps = 0 and N = 4 the t-intervals have half-width 1/1600; two
        // arcs at the same t-center differ only in x.
        let rules = ArcRules { allow_eps_zero: true, allow_origin: true };
        let origin = FareyFraction::origin();
        let a = MajorArc::with_rules(origin, 0, 4, 0.0, rules).unwrap();
        assert!(!check_disjoint(&[a, a]).unwrap().disjoint);
    }

    #[test]
    fn center_law() {
        // N = qM: the decomposition is exact at the center.
        for &(a, q, b) in &[(1, 3, 0), (2, 5, 3), (1, 4, 2), (3, 8, 0), (1, 6, 1)] {
            let n = q * 500;
            let c = arc_center_sum_check(&arc(a, q, b, n), 4.0).unwrap();
            assert!((c.measured - c.predicted).abs() < 1e-8 * n as f64, "{a}/{q} b={b}");
        }
        let c = arc_center_sum_check(&arc(1, 3, 0, 4096), 4.0).unwrap();
        assert!(c.ratio > 0.9 && c.ratio < 1.1);
        assert!(matches!(
            arc_center_sum_check(&arc(1, 4, 1, 4096), 4.0),
            Err(Error::Inadmissible { q: 4, a: 1, b: 1 })
        ));
    }

    #[test]
    fn arc_scan_bounds() {
        let a = arc(1, 3, 0, 1024);
        let (gx, gt) = default_arc_grid();
        let scan = arc_sup_inf_scan(&a, &gx, &gt).unwrap();
        let q = 3f64;
        assert!(scan.min >= 0.5 * 1024.0 / q.sqrt(), "{}", scan.min);
        assert!(scan.max <= 2.0 * 1024.0 / q.sqrt() + q.sqrt() * q.ln() + 1.0);
        assert!(scan.min <= scan.max);

    }

    #[test]
    fn degenerate_scan_is_the_center() {
        let a = arc(1, 3, 0, 1024);
        let scan = arc_sup_inf_scan(&a, &GridSpec::midpoint(1), &GridSpec::midpoint(1)).unwrap();
        let c = arc_center_sum_check(&a, 4.0).unwrap();
        assert_eq!(scan.min, scan.max);
        assert!((scan.min - c.measured).abs() < 1e-9);
    }

    #[test]
    fn euler_summation_identity() {
        for &(a, q, b, n) in &[(1, 3, 0, 4096), (2, 5, 1, 4096), (1, 7, 3, 10_000)] {
            let arc = arc(a, q, b, n);
            for &(fx, ft) in &[(0.0, 0.0), (1.0, 1.0), (-1.0, 0.5), (0.3, -1.0)] {
                let check = arc_euler_check(&arc, fx * arc.half_width_x(), ft * arc.half_width_t()).unwrap();
                assert!(check.converged);
                assert!(check.max_residual < 1e-7, "residual {}", check.max_residual);
                assert!(check.correction_within_bound(), "{} > {}", check.max_correction, check.correction_bound);
            }
        }
    }

    #[test]
    fn euler_terms_at_the_center() {
        let arc = arc(1, 3, 0, 3000);
        let t = euler_summation_terms(&arc, 2, 0.0, 0.0).unwrap();
        assert!((t.direct.re - 1000.0).abs() < 1e-9);
        assert!(t.correction.norm() < 1e-12);
        assert!((t.main.re - 999.0 * 3.0 / 3.0).abs() < 1e-9);
        assert!(euler_summation_terms(&arc, 0, 0.0, 0.0).is_err());
        assert!(arc_euler_check(&arc, 1.0, 0.0).is_err());
    }
}
