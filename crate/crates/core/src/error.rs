use thiserror::Error;

use crate::structure::ClosureAxiom;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong while building or analysing a finite space.
///
/// Set-valued payloads are rendered with the owning universe's labels so the
/// messages are readable without further context.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("universe must contain at least one item")]
    EmptyUniverse,
    #[error("universe has {size} items; the packed representation holds at most 64")]
    UniverseOverflow { size: usize },
    #[error("duplicate item label `{label}`")]
    DuplicateLabel { label: String },
    #[error("unknown item label `{label}`")]
    UnknownItem { label: String },
    #[error("item index {index} is outside a universe of {size} items")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("operands live over different universes")]
    UniverseMismatch,
    #[error("family does not cover the universe; missing {missing}")]
    CoverError { missing: String },
    #[error("family is missing the empty set")]
    MissingEmptySet,
    #[error("family is not closed under union: {left} ∪ {right} is absent")]
    NotUnionClosed { left: String, right: String },
    #[error("relation pairs must be non-empty, got an empty {side} member")]
    EmptyMemberError { side: &'static str },
    #[error("closure operator violates axiom {axiom} at {witness}")]
    AxiomViolation { axiom: ClosureAxiom, witness: String },
    #[error("closure table is not total: {missing} has no value")]
    IncompleteClosureTable { missing: String },
    #[error("candidate family is not a pre-base for the space")]
    NotAPreBase,
    #[error("family is not the minimal pre-base of the space it generates")]
    NotMinimalPreBase,
    #[error("space is not quasi-ordinal: {left} ∩ {right} is not a state")]
    NotQuasiOrdinal { left: String, right: String },
    #[error("relation is not reflexive at `{item}`")]
    NotReflexive { item: String },
    #[error("relation is not transitive: {a} ⪯ {b} ⪯ {c} but not {a} ⪯ {c}")]
    NotTransitive { a: String, b: String, c: String },
    #[error("cover is not an open cover of the space: {reason}")]
    NotACover { reason: String },
    #[error("subspace carrier must be non-empty")]
    EmptySubspace,
    #[error("classes do not partition the universe: {reason}")]
    NotAPartition { reason: String },
    #[error("{set} is not a state of the space")]
    NotAState { set: String },
    #[error("map is not surjective")]
    NotSurjective,
    #[error("map is not total: `{item}` has no image")]
    IncompleteMap { item: String },
    #[error("skill multimap invalid: {reason}")]
    InvalidSkillMap { reason: String },
    #[error("{what}: {size} exceeds the configured bound {bound}")]
    BoundExceeded {
        what: &'static str,
        size: usize,
        bound: usize,
    },
    #[error("skill universe of {size} skills exceeds the configured bound {bound}")]
    SkillBoundExceeded { size: usize, bound: usize },
    #[error("competency pool of {size} exceeds the configured bound {bound}")]
    CombinatorialBoundExceeded { size: usize, bound: usize },
    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable variant name, used by the CLI when reporting domain errors.
    pub fn name(&self) -> &'static str {
        match self {
            Error::EmptyUniverse => "EmptyUniverse",
            Error::UniverseOverflow { .. } => "UniverseOverflow",
            Error::DuplicateLabel { .. } => "DuplicateLabel",
            Error::UnknownItem { .. } => "UnknownItem",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::UniverseMismatch => "UniverseMismatch",
            Error::CoverError { .. } => "CoverError",
            Error::MissingEmptySet => "MissingEmptySet",
            Error::NotUnionClosed { .. } => "NotUnionClosed",
            Error::EmptyMemberError { .. } => "EmptyMemberError",
            Error::AxiomViolation { .. } => "AxiomViolation",
            Error::IncompleteClosureTable { .. } => "IncompleteClosureTable",
            Error::NotAPreBase => "NotAPreBase",
            Error::NotMinimalPreBase => "NotMinimalPreBase",
            Error::NotQuasiOrdinal { .. } => "NotQuasiOrdinal",
            Error::NotReflexive { .. } => "NotReflexive",
            Error::NotTransitive { .. } => "NotTransitive",
            Error::NotACover { .. } => "NotACover",
            Error::EmptySubspace => "EmptySubspace",
            Error::NotAPartition { .. } => "NotAPartition",
            Error::NotAState { .. } => "NotAState",
            Error::NotSurjective => "NotSurjective",
            Error::IncompleteMap { .. } => "IncompleteMap",
            Error::InvalidSkillMap { .. } => "InvalidSkillMap",
            Error::BoundExceeded { .. } => "BoundExceeded",
            Error::SkillBoundExceeded { .. } => "SkillBoundExceeded",
            Error::CombinatorialBoundExceeded { .. } => "CombinatorialBoundExceeded",
            Error::UnknownName { .. } => "UnknownName",
            Error::Parse(_) => "ParseError",
        }
    }
}
