//! Embedded reference codes: the stored tables and worked constructions used
//! by tests and the `tables` command.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::field::Field;
use crate::poly::Poly;
use crate::qc::{qc_build, QuasiCyclicCode};

/// One stored code: generator strings in run-length notation plus claimed parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureRow {
    /// Source table name (`codes_gf9`, `codes_gf16`, `codes_gf25`, `examples`).
    pub table: String,
    /// Human-readable row label.
    pub label: String,
    /// Field order q².
    pub q2: usize,
    /// Circulant block length (the code has length 2n).
    pub n: usize,
    /// First constituent generator, run-length notation.
    pub g1: String,
    /// Second constituent generator, run-length notation.
    pub g2: String,
    /// Pair polynomial t, run-length notation.
    pub t: String,
    /// Claimed classical parameters [len, k, d]; len is always 2n and d is a
    /// lower bound when `d_is_bound` is set.
    pub claimed_nkd: [usize; 3],
    /// Derived quantum parameters [[len, k, d]] when stated.
    pub claimed_quantum: Option<[usize; 3]>,
    /// True when the claimed d is only a certified lower bound, not exact.
    pub d_is_bound: bool,
}

impl FixtureRow {
    /// Claimed code length (always 2n).
    pub fn len(&self) -> usize {
        self.claimed_nkd[0]
    }

    /// Claimed dimension.
    pub fn k(&self) -> usize {
        self.claimed_nkd[1]
    }

    /// Claimed minimum distance (a lower bound when `d_is_bound` is set).
    pub fn d(&self) -> usize {
        self.claimed_nkd[2]
    }

    /// Field this row's code lives over.
    ///
    /// Panics if the stored order is not one of the supported ones.
    pub fn field(&self) -> Arc<Field> {
        Field::with_order(self.q2).expect("stored fixture row has a supported field order")
    }

    /// Parse the three stored polynomials.
    ///
    /// Panics if a stored string is malformed; the data is embedded, so that
    /// would be a defect in the crate itself.
    pub fn polys(&self, field: &Arc<Field>) -> (Poly, Poly, Poly) {
        let g1 = Poly::parse(field, &self.g1).expect("stored g1 parses");
        let g2 = Poly::parse(field, &self.g2).expect("stored g2 parses");
        let t = Poly::parse(field, &self.t).expect("stored t parses");
        (g1, g2, t)
    }

    /// Construct the stored code.
    ///
    /// Panics if the embedded data is malformed (generators must divide xⁿ−1).
    pub fn build(&self) -> QuasiCyclicCode {
        let field = self.field();
        let (g1, g2, t) = self.polys(&field);
        qc_build(&field, self.n, &g1, &g2, &t).expect("stored generators divide x^n - 1")
    }
}

fn parse_jsonl(data: &str) -> Vec<FixtureRow> {
    data.lines()
        .filter(|line| !line.trim().is_empty())
        .map(|line| serde_json::from_str(line).expect("embedded fixture line is valid JSON"))
        .collect()
}

/// Stored codes over GF(9).
pub fn rows_gf9() -> Vec<FixtureRow> {
    parse_jsonl(include_str!("../fixtures/codes_gf9.jsonl"))
}

/// Stored codes over GF(16).
pub fn rows_gf16() -> Vec<FixtureRow> {
    parse_jsonl(include_str!("../fixtures/codes_gf16.jsonl"))
}

/// Stored codes over GF(25).
pub fn rows_gf25() -> Vec<FixtureRow> {
    parse_jsonl(include_str!("../fixtures/codes_gf25.jsonl"))
}

/// All classical table rows (GF(9), GF(16), GF(25)), in table order.
pub fn classical_rows() -> Vec<FixtureRow> {
    let mut rows = rows_gf9();
    rows.extend(rows_gf16());
    rows.extend(rows_gf25());
    rows
}

/// The six worked constructions (the two long ones carry distance bounds only).
pub fn example_rows() -> Vec<FixtureRow> {
    parse_jsonl(include_str!("../fixtures/examples.jsonl"))
}

/// Every stored row: classical tables followed by the worked constructions.
pub fn all_rows() -> Vec<FixtureRow> {
    let mut rows = classical_rows();
    rows.extend(example_rows());
    rows
}

/// Base binary quantum codes ([[n, k, d]]₂) that the propagation targets derive from.
pub const PROPAGATION_BASE: [[usize; 3]; 5] = [
    [42, 14, 8],
    [70, 42, 7],
    [70, 48, 6],
    [82, 42, 9],
    [170, 148, 5],
];

/// Derived binary quantum parameters reachable from the base set by propagation.
pub const PROPAGATION_TARGETS: [[usize; 3]; 11] = [
    [42, 13, 8],
    [71, 48, 6],
    [70, 39, 7],
    [70, 40, 7],
    [70, 41, 7],
    [71, 40, 7],
    [71, 41, 7],
    [71, 42, 7],
    [83, 42, 9],
    [170, 147, 5],
    [171, 148, 5],
];
