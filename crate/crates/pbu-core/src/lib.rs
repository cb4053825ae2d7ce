//! Process-based unification of quality approaches.
//!
//! A workspace holds decomposed quality approaches (standards, models,
//! process descriptions), unified process models, and the mappings between
//! them. On top of that this crate provides the consistency checks,
//! coverage/appraisal/traceability reports, version diffing, granularity
//! decompositions, deterministic exports, and the two document-analysis
//! pipelines (cross-reference extraction and word frequency).
//!
//! The `parallel` feature (on by default) runs per-document analysis work on
//! a rayon pool; the aggregated output is byte-identical to the sequential
//! fallback either way.

pub mod analysis;
pub mod coverage;
pub mod export;
pub mod fixture;
pub mod mapping;
pub mod model;
pub mod porter;
pub mod process;
pub mod versioning;
pub mod workspace;

#[cfg(test)]
pub(crate) mod testutil;
