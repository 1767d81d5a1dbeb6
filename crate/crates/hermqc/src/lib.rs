//! Construction and certification of two-generator quasi-cyclic codes over
//! GF(q^2), together with the Hermitian-construction step that turns a
//! dual-containing classical code into a quantum [[n,k,d]]_q code.
//!
//! The pipeline: pick a block length n coprime to q, choose divisors g1, g2 of
//! x^n - 1 (usually through q^2-cyclotomic cosets), pick a mixing polynomial
//! t, and form the length-2n code spanned by ([t*g1],[g1])-type and
//! ([g2],[t*g2])-type rows. The [`qc`] module certifies Hermitian
//! dual-containment three ways (sufficient conditions on the generators, and
//! a direct matrix check), [`distance`] computes or bounds minimum distance,
//! and [`quantum`] applies the Hermitian construction and compares against
//! the Gilbert–Varshamov threshold.
//!
//! All arithmetic is exact: table-driven small fields, explicit splitting
//! fields for root computations, and big-integer combinatorics where counts
//! overflow machine words.

pub mod cosets;
pub mod cyclic;
pub mod distance;
pub mod field;
pub mod fixtures;
pub mod matrix;
pub mod poly;
pub mod qc;
pub mod quantum;
pub mod records;
pub mod search;

pub use field::Field;

