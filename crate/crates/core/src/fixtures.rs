//! Built-in test collections.
//!
//! Neither collection ships real text. Each is generated from a posting
//! table by [`synthesize_fixture`], so indexing it reproduces that table.
//! Relevance judgments are derived from the index with [`derive_qrels`].

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use crate::boolean::{parse_boolean, Operator};
use crate::corpus::Collection;
use crate::error::{Error, Result};
use crate::eval::{parse_queries, Qrels, Query};
use crate::index::{build_index, synthesize_fixture, IndexPair, PostingTable};
use crate::ontology::{ConceptGraph, Rc};
use crate::textpipe::{Language, StopWordList, TextPipeline};
use crate::Model;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fixture {
    /// Eleven documents.
    Arabic,
    /// One hundred documents built around the polysemous `mouse`.
    English,
}

/// A fixture with everything needed to run its query suite.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub fixture: Fixture,
    pub graph: ConceptGraph,
    pub collection: Collection,
    pub index: IndexPair,
    pub queries: Vec<Query>,
    pub qrels: Qrels,
}

impl Fixture {
    pub const ALL: [Fixture; 2] = [Fixture::Arabic, Fixture::English];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::Arabic => "arabic",
            Fixture::English => "english",
        }
    }

    pub fn ontology_tsv(self) -> &'static str {
        match self {
            Fixture::Arabic => include_str!("../fixtures/arabic/ontology.tsv"),
            Fixture::English => include_str!("../fixtures/english/ontology.tsv"),
        }
    }

    pub fn postings_tsv(self) -> &'static str {
        match self {
            Fixture::Arabic => include_str!("../fixtures/arabic/postings.tsv"),
            Fixture::English => include_str!("../fixtures/english/postings.tsv"),
        }
    }

    pub fn queries_tsv(self) -> &'static str {
        match self {
            Fixture::Arabic => include_str!("../fixtures/arabic/queries.tsv"),
            Fixture::English => include_str!("../fixtures/english/queries.tsv"),
        }
    }

    pub fn graph(self) -> Result<ConceptGraph> {
        ConceptGraph::parse(self.ontology_tsv())
    }

    pub fn table(self) -> Result<PostingTable> {
        PostingTable::parse(self.postings_tsv())
    }

    pub fn queries(self) -> Result<Vec<Query>> {
        parse_queries(self.queries_tsv())
    }

    pub fn collection(self) -> Result<Collection> {
        synthesize_fixture(&self.table()?, &self.graph()?)
    }

    pub fn load(self) -> Result<Loaded> {
        self.load_with(&TextPipeline::default(), crate::DEFAULT_HOPS)
    }

    pub fn load_with(self, pipeline: &TextPipeline, hops: u32) -> Result<Loaded> {
        let graph = self.graph()?;
        let collection = synthesize_fixture(&self.table()?, &graph)?;
        let index = build_index(&collection, &graph, pipeline);
        let queries = self.queries()?;
        let qrels = derive_qrels(&index, &graph, pipeline, &queries, hops)?;
        Ok(Loaded {
            fixture: self,
            graph,
            collection,
            index,
            queries,
            qrels,
        })
    }
}

/// Positive terms, negated terms and query RC of a query.
fn query_parts(graph: &ConceptGraph, pipeline: &TextPipeline, q: &Query) -> Result<(Vec<String>, Vec<String>, Rc)> {
    let (pos, neg) = match q.model {
        Model::Boolean => {
            let b = parse_boolean(&q.text, pipeline)?;
            let neg = if b.operator == Operator::Not {
                b.negated
            } else {
                Vec::new()
            };
            (b.terms, neg)
        }
        Model::Vsm => {
            let terms = pipeline.query_terms(&q.text);
            if terms.is_empty() {
                return Err(Error::EmptyQuery);
            }
            (terms, Vec::new())
        }
    };
    let rc = graph.resolve_rc(&pos);
    Ok((pos, neg, rc))
}

/// Marks a document relevant to a query when the query's positive terms
/// occur in it at least as often under RCs related to the query RC as under
/// unrelated ones (and at least once under a related RC), and no negated
/// term occurs in it under a related RC.
///
/// Queries whose RC is unknown get no judgments. Each query id is judged
/// once, from its first line.
pub fn derive_qrels(
    ix: &IndexPair,
    graph: &ConceptGraph,
    pipeline: &TextPipeline,
    queries: &[Query],
    hops: u32,
) -> Result<Qrels> {
    let mut qrels = Qrels::new();
    let mut done = BTreeSet::new();
    for q in queries {
        if !done.insert(q.id.as_str()) {
            continue;
        }
        let (pos, neg, rc) = query_parts(graph, pipeline, q)?;
        if rc.is_unknown() {
            continue;
        }
        let mut related: BTreeMap<u32, u64> = BTreeMap::new();
        let mut unrelated: BTreeMap<u32, u64> = BTreeMap::new();
        for term in &pos {
            for (term_rc, posting) in ix.senses_of(term) {
                let bucket = if graph.related(term_rc, &rc, hops) {
                    &mut related
                } else {
                    &mut unrelated
                };
                for &(d, tf) in posting.entries() {
                    *bucket.entry(d).or_default() += u64::from(tf);
                }
            }
        }
        let excluded: BTreeSet<u32> = neg
            .iter()
            .flat_map(|t| ix.senses_of(t))
            .filter(|(term_rc, _)| graph.related(term_rc, &rc, hops))
            .flat_map(|(_, p)| p.doc_ids())
            .collect();
        let relevant: BTreeSet<u32> = related
            .iter()
            .filter(|&(d, &mass)| mass >= unrelated.get(d).copied().unwrap_or(0) && !excluded.contains(d))
            .map(|(&d, _)| d)
            .collect();
        if !relevant.is_empty() {
            qrels.set(q.id.clone(), relevant);
        }
    }
    Ok(qrels)
}

/// Writes every fixture under `dir/<name>/` (corpus, ontology, queries,
/// qrels, index) plus the built-in stop-word lists under `dir/stopwords/`.
pub fn materialize(dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    let mut written = Vec::new();
    let mut write = |path: PathBuf, bytes: &[u8]| -> Result<()> {
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
        }
        std::fs::write(&path, bytes).map_err(|e| Error::io(&path, e))?;
        written.push(path);
        Ok(())
    };
    for fx in Fixture::ALL {
        let loaded = fx.load()?;
        let base = dir.join(fx.name());
        let mut corpus = Vec::new();
        loaded
            .collection
            .write_jsonl(&mut corpus)
            .map_err(|e| Error::io(base.join("corpus.jsonl"), e))?;
        write(base.join("corpus.jsonl"), &corpus)?;
        write(base.join("ontology.tsv"), fx.ontology_tsv().as_bytes())?;
        write(base.join("queries.tsv"), fx.queries_tsv().as_bytes())?;
        write(base.join("qrels.tsv"), loaded.qrels.to_tsv().as_bytes())?;
        write(base.join("index.cir"), loaded.index.to_text().as_bytes())?;
    }
    for lang in [Language::English, Language::Arabic] {
        let name = format!("{lang}.txt");
        write(
            dir.join("stopwords").join(name),
            StopWordList::builtin_text(lang).as_bytes(),
        )?;
    }
    Ok(written)
}
