use crate::error::{Error, Result};

/// Upper bound on the number of pointwise evaluations a single call may
/// perform. Grid scans check it before allocating anything.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WorkBudget {
    pub max_evaluations: u128,
}

impl WorkBudget {
    pub const DEFAULT_EVALUATIONS: u128 = 1 << 34;

    pub const fn new(max_evaluations: u128) -> Self {
        Self { max_evaluations }
    }

    pub const fn unlimited() -> Self {
        Self { max_evaluations: u128::MAX }
    }

    pub fn check(&self, needed: u128) -> Result<()> {
        if needed > self.max_evaluations {
            Err(Error::Budget { needed, budget: self.max_evaluations })
        } else {
            Ok(())
        }
    }
}

impl Default for WorkBudget {
    fn default() -> Self {
        Self::new(Self::DEFAULT_EVALUATIONS)
    }
}
