//! Exact symbolic engine for path algebras of quivers presented by reduction systems.
//!
//! A reduction system is a set of pairs `(s, φ_s)` where `s` is a path of length ≥ 2
//! and `φ_s` a linear combination of parallel paths. The engine checks the structural
//! conditions that make such a system a valid presentation (no lhs a subpath of
//! another, rhs irreducible), certifies termination against admissible path orders,
//! resolves overlap ambiguities (diamond lemma), and computes the combinatorial star
//! product of a deformed system with exact rational, multi-parameter coefficients.
//!
//! Key operations:
//! - [`rewrite::ReductionSystem`]: validation, normal forms, confluence checks
//! - [`ambiguity`]: higher ambiguities and bimodule basis dimensions
//! - [`deform`]: star products, Maurer-Cartan checks, residual variety equations
//! - [`diagram`]: reduction systems for quasi-coherent sheaves on chart covers
//! - [`hypersurface`]: noncommutative hypersurface presentations and their cochain
//!   complex over the ambiguity basis
//!
//! Design notes:
//! - All coefficient arithmetic is exact (`BigRational`); no floats anywhere.
//! - Iteration order of every map is deterministic (`BTreeMap`), so serialized
//!   output is byte-identical across runs.
//! - Potentially non-terminating loops take explicit step caps and report cap
//!   exhaustion as a distinct outcome, never as a wrong answer.

pub mod ambiguity;
pub mod deform;
pub mod diagram;
pub mod element;
pub mod fixtures;
pub mod hypersurface;
pub mod order;
pub mod path;
pub mod poly;
pub mod quiver;
pub mod rewrite;
pub mod wire;

pub use element::AlgebraElement;
pub use order::{AdmissibleOrder, OrderRelation, Stage};
pub use path::Path;
pub use poly::{ParamPolynomial, ParamSet, TruncationPolicy};
pub use quiver::{Arrow, ArrowId, Quiver, Vertex, VertexId};
pub use rewrite::{ReductionPair, ReductionSystem};

use thiserror::Error;

/// Error taxonomy. `Input` means malformed data (CLI exit 1), `Math` a failed
/// mathematical side condition (exit 2), `Cap` an exhausted resource limit (exit 3).
#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("mathematical failure: {0}")]
    Math(String),
    #[error("resource cap exhausted: {0}")]
    Cap(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
    pub fn math(msg: impl Into<String>) -> Self {
        Error::Math(msg.into())
    }
    pub fn cap(msg: impl Into<String>) -> Self {
        Error::Cap(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
