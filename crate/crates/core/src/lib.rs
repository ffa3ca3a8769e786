//! Finite pre-topological spaces, read as knowledge spaces over a set of
//! items.
//!
//! Sets of items are bitmasks ([`ItemSet`]) over a labelled [`Universe`] of
//! at most 64 items. A [`PreTopology`] is a union-closed family containing
//! the empty set and the whole universe.

pub mod bounds;
pub mod cardinal;
pub mod connectivity;
pub mod error;
pub mod family;
pub mod fixtures;
pub mod io;
pub mod maps;
pub mod miner;
pub mod operators;
pub mod order;
pub mod separation;
pub mod set;
pub mod skills;
pub mod structure;

pub use bounds::Bounds;
pub use error::{Error, Result};
pub use family::{irreducible_states, union_closure, SetFamily};
pub use set::{distance, ItemSet, Universe};
pub use structure::{KnowledgeStructure, PreTopology};
