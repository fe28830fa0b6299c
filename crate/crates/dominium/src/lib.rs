//! Exact k-domination, k-tuple domination, and 2-packing numbers for small
//! graphs (order ≤ 64), with verifiable traces of the constructive proofs
//! behind the classical bounds that relate them.
//!
//! Everything is bit-parallel over `u64` adjacency rows: solvers are
//! branch-and-bound searches with combinatorial pruning, cross-checked
//! against naive enumeration oracles. Bound verdicts are computed in exact
//! rational arithmetic — no floats, no rounding, no false violations.

pub mod bounds;
pub mod cli;
pub mod constructions;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod report;
pub mod solvers;
