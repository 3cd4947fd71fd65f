//! Concept graph, reference-concept resolution and concept relatedness.

mod graph;
mod resolve;

pub use graph::{load_ontology, ConceptGraph, Edge, Node, NodeKind, Rc};
pub use resolve::{CandidateCost, Resolution};
