//! Deterministic floating-point reductions.
//!
//! Every scan in this crate reduces in a fixed order: compensated
//! left-to-right accumulation inside a row, then a pairwise tree over row
//! results keyed by row index. The tree shape depends only on the number of
//! rows, so the result is the same for any worker count.

use num_complex::Complex64;

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Self::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Compensated sum of complex values, component-wise.
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexCompensatedSum {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl ComplexCompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

const PAIRWISE_LEAF: usize = 32;

/// Pairwise (cascade) sum with a tree fixed by the slice length.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= PAIRWISE_LEAF {
        return values.iter().copied().collect::<CompensatedSum>().value();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Sums `f(0), …, f(len-1)` in fixed chunks: compensated within a chunk,
/// pairwise across chunk totals.
pub fn chunked_sum(len: usize, f: impl Fn(usize) -> f64) -> f64 {
    const CHUNK: usize = 1024;
    let totals: Vec<f64> = (0..len)
        .step_by(CHUNK)
        .map(|start| (start..(start + CHUNK).min(len)).map(&f).collect::<CompensatedSum>().value())
        .collect();
    pairwise_sum(&totals)
}
