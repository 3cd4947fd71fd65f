//! Concept-aware text retrieval.
//!
//! Every phrase of every document is annotated with a *reference concept*
//! (RC): the ontology node closest, in hop count, to all of the phrase's
//! terms. The index keeps a classic term posting next to a posting per
//! `(term, rc)` pair, and both Boolean and vector-space retrieval can run
//! either over plain terms ([`Mode::Traditional`]) or over postings whose
//! RC is related to the query's own RC ([`Mode::Semantic`]).
//!
//! ```
//! use cir_core::fixtures::Fixture;
//! use cir_core::{vsm, Mode, TextPipeline};
//!
//! let fx = Fixture::Arabic.load().unwrap();
//! let terms = TextPipeline::default().query_terms("ألم العين");
//! let hits = vsm::rank(&fx.index, &fx.graph, &terms, Mode::Semantic, 4, 1, vsm::VsmOptions::default()).unwrap();
//! assert_eq!(hits[0].doc_id, 5);
//! ```

pub mod boolean;
pub mod corpus;
mod error;
pub mod eval;
pub mod fixtures;
pub mod index;
pub mod ontology;
pub mod textpipe;
pub mod vsm;

use std::fmt;
use std::str::FromStr;

pub use boolean::{BooleanQuery, DocSet, Operator};
pub use corpus::{Collection, Document, Phrase};
pub use error::{Error, Result};
pub use eval::{Metrics, Qrels, Report, RunResult};
pub use index::{IndexPair, Posting};
pub use ontology::{ConceptGraph, NodeKind, Rc};
pub use textpipe::{Language, StopWordList, TextPipeline};
pub use vsm::{Norm, QueryWeighting, RankedHit, VsmOptions};

/// Hop limit used when deciding whether two reference concepts are related.
pub const DEFAULT_HOPS: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Mode {
    #[default]
    Traditional,
    Semantic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Model {
    Boolean,
    Vsm,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Traditional => "traditional",
            Mode::Semantic => "semantic",
        }
    }
}

impl Model {
    pub fn as_str(self) -> &'static str {
        match self {
            Model::Boolean => "boolean",
            Model::Vsm => "vsm",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "traditional" => Ok(Mode::Traditional),
            "semantic" => Ok(Mode::Semantic),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

impl FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "boolean" => Ok(Model::Boolean),
            "vsm" => Ok(Model::Vsm),
            other => Err(format!("unknown model `{other}`")),
        }
    }
}
