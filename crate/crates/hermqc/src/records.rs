//! Self-contained evaluation records: every derived quantity for one
//! (g1, g2, t) instance, in a stable serialization order so equal inputs
//! give byte-identical JSON lines.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::distance::{dmin_bz, dmin_exhaustive, sat_pow, structural_bound, DistancePolicy};
use crate::field::Field;
use crate::poly::Poly;
use crate::qc::{qc_build, QcError};
use crate::quantum::{beats_gv, gv_kmax, hermitian_construct, DStatus, QuantumParams};

/// Engine limits for one evaluation; all limits are work-based, never
/// wall-clock, so a fixed option set is fully deterministic.
#[derive(Debug, Clone, Copy)]
pub struct EvalOptions {
    /// Exhaustive enumeration runs when q^k is at most this.
    pub exhaustive_budget: u64,
    /// Message budget for the information-set engine above that.
    pub infoset_work: u64,
    /// Whether to compute the distance block.
    pub with_distance: bool,
    /// Whether to compute the structural lower-bound block.
    pub with_structural: bool,
    /// Constituent-distance policy for the structural bound.
    pub structural_policy: DistancePolicy,
}

impl Default for EvalOptions {
    fn default() -> EvalOptions {
        EvalOptions {
            exhaustive_budget: 200_000_000,
            infoset_work: 120_000_000,
            with_distance: true,
            with_structural: true,
            structural_policy: DistancePolicy::default(),
        }
    }
}

/// Distance block: the certified interval and the engine that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub method: String,
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    pub work: u64,
}

/// One fully evaluated instance. Self-contained: re-evaluating the stored
/// strings under the same options reproduces every derived field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub q2: usize,
    pub n: usize,
    pub g1: String,
    pub g2: String,
    pub t: String,
    pub len: usize,
    pub dim: usize,
    pub prop_dims: bool,
    pub thm_main: bool,
    pub thm_extended: bool,
    pub dual_containing: bool,
    /// Cheapest criterion that certified dual-containment, or "none".
    pub certified_by: String,
    pub distance: Option<DistanceReport>,
    /// Structural lower-bound interval [lo, hi] when computed.
    pub structural_lower: Option<[u64; 2]>,
    pub quantum: Option<QuantumParams>,
    pub gv_kmax: Option<usize>,
    pub beats_gv: Option<bool>,
    pub seed: Option<u64>,
    pub trial: Option<u64>,
}

/// Build the code and derive the full record under the given engine limits.
pub fn evaluate(
    field: &Arc<Field>,
    n: usize,
    g1: &Poly,
    g2: &Poly,
    t: &Poly,
    opts: &EvalOptions,
) -> Result<ResultRecord, QcError> {
    let code = qc_build(field, n, g1, g2, t)?;
    let dim = code.dim();
    let prop_dims = code.check_prop_dims();
    let thm_main = code.check_thm_main();
    let thm_extended = code.check_thm_extended();
    let dual_containing = code.check_dual_containing_direct();
    let certified_by = if thm_main {
        "main"
    } else if thm_extended {
        "extended"
    } else if dual_containing {
        "direct"
    } else {
        "none"
    };

    let distance = if opts.with_distance && dim > 0 {
        let q = field.order() as u64;
        let result = if sat_pow(q, dim as u64) <= opts.exhaustive_budget {
            dmin_exhaustive(code.g_mat(), opts.exhaustive_budget)
                .map(|r| ("exhaustive", r))
        } else {
            dmin_bz(code.g_mat(), opts.infoset_work).map(|r| ("info_set", r))
        };
        result.ok().map(|(method, r)| DistanceReport {
            method: method.to_string(),
            lower: r.lower,
            upper: r.upper,
            exact: r.is_exact(),
            work: r.work,
        })
    } else {
        None
    };

    let structural_lower = if opts.with_structural {
        structural_bound(field, n, g1, g2, t, opts.structural_policy)
            .ok()
            .map(|r| [r.lower_lo, r.lower_hi])
    } else {
        None
    };

    let quantum = if dual_containing {
        let (d, d_status) = match &distance {
            Some(rep) if rep.exact => (rep.upper, DStatus::Exact),
            Some(rep) => (rep.lower, DStatus::LowerBound),
            None => (1, DStatus::LowerBound),
        };
        hermitian_construct(field.q(), code.len(), dim, d, d_status, true).ok()
    } else {
        None
    };

    Ok(ResultRecord {
        q2: field.order(),
        n,
        g1: g1.to_string(),
        g2: g2.to_string(),
        t: t.to_string(),
        len: code.len(),
        dim,
        prop_dims,
        thm_main,
        thm_extended,
        dual_containing,
        certified_by: certified_by.to_string(),
        distance,
        structural_lower,
        gv_kmax: quantum.map(|p| gv_kmax(p.n, p.d, p.q)),
        beats_gv: quantum.as_ref().map(beats_gv),
        quantum,
        seed: None,
        trial: None,
    })
}
