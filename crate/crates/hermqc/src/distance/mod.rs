//! Minimum-distance machinery: exact exhaustive enumeration, the MacWilliams
//! transform route through a small dual, information-set (Brouwer-Zimmermann
//! style) search with matched lower/upper bounds, meet-in-the-middle search
//! for low-weight cyclic codewords, and the seven-case structural lower bound
//! for two-generator quasi-cyclic codes.

mod enumerate;
mod infoset;
mod mitm;
mod structural;
mod transform;

pub use enumerate::{dmin_exhaustive, weight_distribution};
pub use infoset::{dmin_bz, find_low_weight};
pub use mitm::{mitm_min_weight, MitmOutcome};
pub use structural::{
    structural_bound, thm_lower_bound, CaseReport, PartReport, StructuralError, StructuralReport,
};
pub use transform::dmin_transform;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DistanceError {
    #[error("code has dimension zero; minimum distance is undefined")]
    ZeroDimensional,
    #[error("enumeration needs {needed} codewords, over the budget of {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("weight-distribution transform produced an inconsistent spectrum")]
    BadSpectrum,
}

/// Outcome of a distance computation: exact when lower = upper.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceResult {
    pub lower: usize,
    pub upper: usize,
    /// Enumeration effort actually spent, for reporting.
    pub work: u64,
}

impl DistanceResult {
    pub fn exact(value: usize, work: u64) -> DistanceResult {
        DistanceResult { lower: value, upper: value, work }
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }
}

/// Budgets steering which distance engine handles a cyclic constituent.
#[derive(Debug, Clone, Copy)]
pub struct DistancePolicy {
    /// Exhaustive enumeration allowed while q^(2k) stays at or under this.
    pub exhaustive_budget: u64,
    /// Transform route allowed while q^(2(n-k)) stays at or under this.
    pub dual_budget: u64,
    /// Meet-in-the-middle half-enumeration size cap per weight level.
    pub mitm_budget: u64,
    /// Permit constructing the splitting field for root-based bounds.
    pub allow_splitting_field: bool,
}

impl Default for DistancePolicy {
    fn default() -> Self {
        DistancePolicy {
            exhaustive_budget: 20_000_000,
            dual_budget: 20_000_000,
            mitm_budget: 4_000_000,
            allow_splitting_field: true,
        }
    }
}

/// q^k with saturation, for budget comparisons.
pub(crate) fn sat_pow(q: u64, k: u64) -> u64 {
    let mut acc: u64 = 1;
    for _ in 0..k {
        acc = acc.saturating_mul(q);
    }
    acc
}
