//! Modular decomposition of hypergraphs and tournaments, and realization of
//! 3-uniform hypergraphs as the 3-cycle structure of a tournament.
//!
//! A tournament `T` realizes a 3-uniform hypergraph `H` on the same vertices
//! when the edges of `H` are exactly the triples inducing a directed 3-cycle
//! in `T`. The [`realization`] module decides realizability, builds one
//! realization, and counts and enumerates all of them from the labelled
//! decomposition tree in [`decomposition`].

pub mod decomposition;
pub mod error;
pub mod graph;
pub mod hypergraph;
pub mod io;
pub mod oracle;
pub mod realization;
pub mod tournament;
pub mod vertex_set;

pub use error::{Error, Result};
pub use graph::Graph;
pub use hypergraph::{Hypergraph, IndexMap, Induced};
pub use realization::{
    count_realizations, enumerate_realizations, realize, NonRealizabilityWitness, Outcome,
    WitnessStage,
};
pub use tournament::{CriticalKind, Tournament};
pub use vertex_set::VertexSet;
