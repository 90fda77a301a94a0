use crate::error::{invalid, Result};
use crate::expsum::phase::frac;

/// Equispaced sample nodes on `[0, 1)`.
///
/// Node `k` sits at `(k + shift) / points`, where `shift ∈ [0, 1)` is the
/// offset measured in steps. The default is the midpoint rule (`shift = 1/2`),
/// which keeps nodes off rationals with small denominators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    points: usize,
    shift: f64,
}

impl GridSpec {
    pub fn new(points: usize, shift: f64) -> Result<Self> {
        if points == 0 {
            return Err(invalid("a grid needs at least one point"));
        }
        if !(0.0..1.0).contains(&shift) {
            return Err(invalid(format!("grid shift {shift} outside [0, 1)")));
        }
        Ok(Self { points, shift })
    }

    /// Midpoint grid; panics on zero points.
    pub fn midpoint(points: usize) -> Self {
        Self::new(points, 0.5).expect("midpoint grid needs points >= 1")
    }

    /// Grid with a node at 0.
    pub fn aligned(points: usize) -> Self {
        Self::new(points, 0.0).expect("aligned grid needs points >= 1")
    }

    /// Builds a grid from an absolute offset in `[0, 1/points)`.
    pub fn with_offset(points: usize, offset: f64) -> Result<Self> {
        if points == 0 {
            return Err(invalid("a grid needs at least one point"));
        }
        Self::new(points, offset * points as f64)
    }

    pub fn points(&self) -> usize {
        self.points
    }

    /// Offset of node 0 from the origin, in steps.
    pub fn shift(&self) -> f64 {
        self.shift
    }

    /// Offset of node 0 from the origin, in turns.
    pub fn offset(&self) -> f64 {
        self.shift / self.points as f64
    }

    pub fn step(&self) -> f64 {
        1.0 / self.points as f64
    }

    pub fn node(&self, k: usize) -> f64 {
        frac((k as f64 + self.shift) / self.points as f64)
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.points).map(move |k| self.node(k))
    }

    /// Symmetric under `θ → -θ` (mod 1) as a node set.
    pub(crate) fn is_reflection_symmetric(&self) -> bool {
        self.shift == 0.0 || self.shift == 0.5
    }

    pub fn describe(&self) -> String {
        format!("{}pts@{}", self.points, self.shift)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn midpoint_nodes() {
        let g = GridSpec::midpoint(4);
        let nodes: Vec<f64> = g.nodes().collect();
        assert_eq!(nodes, vec![0.125, 0.375, 0.625, 0.875]);
        assert_eq!(g.offset(), 0.125);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(GridSpec::new(0, 0.5).is_err());
        assert!(GridSpec::new(4, 1.0).is_err());
        assert!(GridSpec::with_offset(4, 0.25).is_err());
        assert_eq!(GridSpec::with_offset(4, 0.0).unwrap(), GridSpec::aligned(4));
    }
}
