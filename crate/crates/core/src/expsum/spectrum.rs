//! Evaluation of sparse trigonometric sums on equispaced grids.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::grid::GridSpec;
use super::phase::{e, frac, frac_mul};
use crate::sum::ComplexCompensatedSum;

/// Phase `n · offset` for a signed frequency.
#[inline]
fn offset_phase(freq: i64, offset: f64) -> f64 {
    let p = frac_mul(freq.unsigned_abs(), offset);
    if freq < 0 {
        frac(-p)
    } else {
        p
    }
}

/// Inverse-FFT plan plus scratch for repeated evaluations on one grid size.
pub(crate) struct GridEvaluator {
    grid: GridSpec,
    fft: Arc<dyn Fft<f64>>,
    scratch: Vec<Complex64>,
}

impl GridEvaluator {
    pub(crate) fn new(grid: GridSpec) -> Self {
        let fft = FftPlanner::new().plan_fft_inverse(grid.points());
        let scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
        Self { grid, fft, scratch }
    }

    /// Folds `(frequency, coefficient)` pairs into `buf` (length = grid
    /// points) and transforms in place, leaving `Σ c_n e(n θ_k)` in `buf[k]`.
    ///
    /// Folding frequencies mod the grid size is exact for point evaluation;
    /// it only matters for quadrature, where it aliases.
    pub(crate) fn eval_into(&mut self, terms: impl IntoIterator<Item = (i64, Complex64)>, buf: &mut [Complex64]) {
        let g = self.grid.points();
        assert_eq!(buf.len(), g);
        buf.fill(Complex64::new(0.0, 0.0));
        let offset = self.grid.offset();
        for (freq, c) in terms {
            let bin = freq.rem_euclid(g as i64) as usize;
            buf[bin] += if offset == 0.0 { c } else { c * e(offset_phase(freq, offset)) };
        }
        self.fft.process_with_scratch(buf, &mut self.scratch);
    }

    /// As [`eval_into`](Self::eval_into), for coefficients that already
    /// carry the offset factor `e(n · offset)`.
    pub(crate) fn eval_pretwiddled_into(
        &mut self,
        terms: impl IntoIterator<Item = (i64, Complex64)>,
        buf: &mut [Complex64],
    ) {
        let g = self.grid.points();
        assert_eq!(buf.len(), g);
        buf.fill(Complex64::new(0.0, 0.0));
        for (freq, c) in terms {
            buf[freq.rem_euclid(g as i64) as usize] += c;
        }
        self.fft.process_with_scratch(buf, &mut self.scratch);
    }
}

/// `Σ c_n e(n θ_k)` at every node of `grid`, by one inverse FFT of the
/// folded coefficient array.
pub fn eval_spectrum(terms: impl IntoIterator<Item = (i64, Complex64)>, grid: &GridSpec) -> Vec<Complex64> {
    let mut buf = vec![Complex64::new(0.0, 0.0); grid.points()];
    GridEvaluator::new(*grid).eval_into(terms, &mut buf);
    buf
}

/// Direct summation reference for [`eval_spectrum`]. The integer part of
/// each phase `n k / G` is reduced exactly before the trig call.
pub fn eval_spectrum_direct(terms: &[(i64, Complex64)], grid: &GridSpec) -> Vec<Complex64> {
    let g = grid.points() as u128;
    let offset = grid.offset();
    (0..grid.points())
        .map(|k| {
            let mut acc = ComplexCompensatedSum::new();
            for &(freq, c) in terms {
                let lattice = (freq.rem_euclid(g as i64) as u128 * k as u128 % g) as f64 / g as f64;
                acc.add(c * e(lattice + offset_phase(freq, offset)));
            }
            acc.value()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fft_matches_direct_on_shifted_grid() {
        let terms: Vec<(i64, Complex64)> = vec![
            (-7, Complex64::new(0.3, -1.0)),
            (0, Complex64::new(2.0, 0.0)),
            (3, Complex64::new(-0.5, 0.25)),
            (40, Complex64::new(1.0, 1.0)),
        ];
        for grid in [GridSpec::midpoint(16), GridSpec::aligned(9), GridSpec::new(32, 0.3).unwrap()] {
            let fast = eval_spectrum(terms.iter().copied(), &grid);
            let slow = eval_spectrum_direct(&terms, &grid);
            for (a, b) in fast.iter().zip(&slow) {
                assert!((a - b).norm() < 1e-13, "{grid:?}");
            }
        }
    }
}
