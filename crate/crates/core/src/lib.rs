//! Compiles ontologies into quivers and exercises categorical machinery on
//! them: free path categories, finite categories with law checking, quiver
//! representations over exact fields, path algebras with an exactness test,
//! marked quivers, and pushout-based merging of knowledge bases.

pub mod fincat;
pub mod kb;
pub mod linrep;
pub mod marked;
pub mod onto;
pub mod path;
pub mod quiver;

pub use quiver::{
    accepts_categorification, check_graph_morphism, enumerate_graph_morphisms,
    find_oriented_cycle, is_weakly_connected, pushout, Arrow, ArrowId, CategorificationReport,
    GraphMorphism, Pushout, Quiver, QuiverError, Vertex, VertexId,
};
