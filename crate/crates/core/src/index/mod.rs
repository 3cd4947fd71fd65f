//! Traditional and semantic inverted indexes.
//!
//! The semantic side is keyed by `(term, rc)`. The traditional side is
//! always the per-term sum of the semantic side, so the two can never
//! disagree about which documents contain a term.

mod persist;
mod synth;

use std::collections::BTreeMap;

pub use persist::{load_index, save_index, FORMAT_MAGIC, FORMAT_VERSION};
pub use synth::{synthesize_fixture, PostingTable, TableRow};

use crate::corpus::Collection;
use crate::ontology::{ConceptGraph, Rc};
use crate::textpipe::TextPipeline;

/// Document list for one key: `(doc_id, tf)` sorted by doc id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Posting {
    entries: Vec<(u32, u32)>,
}

impl Posting {
    /// Sorts and merges duplicate doc ids by adding their tf. Zero tfs are dropped.
    pub fn from_entries(mut entries: Vec<(u32, u32)>) -> Self {
        entries.sort_unstable();
        let mut out: Vec<(u32, u32)> = Vec::with_capacity(entries.len());
        for (doc, tf) in entries {
            if tf == 0 {
                continue;
            }
            match out.last_mut() {
                Some((d, t)) if *d == doc => *t += tf,
                _ => out.push((doc, tf)),
            }
        }
        Posting { entries: out }
    }

    pub fn entries(&self) -> &[(u32, u32)] {
        &self.entries
    }

    pub fn df(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn doc_ids(&self) -> impl Iterator<Item = u32> + '_ {
        self.entries.iter().map(|&(d, _)| d)
    }

    pub fn tf(&self, doc: u32) -> u32 {
        self.entries
            .binary_search_by_key(&doc, |&(d, _)| d)
            .map_or(0, |i| self.entries[i].1)
    }

    pub fn total_tf(&self) -> u64 {
        self.entries.iter().map(|&(_, tf)| u64::from(tf)).sum()
    }

    fn merge<'a>(postings: impl IntoIterator<Item = &'a Posting>) -> Posting {
        let mut acc: BTreeMap<u32, u32> = BTreeMap::new();
        for p in postings {
            for &(d, tf) in &p.entries {
                *acc.entry(d).or_default() += tf;
            }
        }
        Posting {
            entries: acc.into_iter().collect(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IndexPair {
    n_docs: usize,
    traditional: BTreeMap<String, Posting>,
    semantic: BTreeMap<(String, Rc), Posting>,
}

impl IndexPair {
    /// Derives the traditional side from the semantic postings.
    pub fn from_semantic(n_docs: usize, semantic: BTreeMap<(String, Rc), Posting>) -> Self {
        let mut grouped: BTreeMap<&str, Vec<&Posting>> = BTreeMap::new();
        for ((term, _), p) in &semantic {
            grouped.entry(term).or_default().push(p);
        }
        let traditional = grouped
            .into_iter()
            .map(|(t, ps)| (t.to_owned(), Posting::merge(ps)))
            .collect();
        IndexPair {
            n_docs,
            traditional,
            semantic,
        }
    }

    pub fn n_docs(&self) -> usize {
        self.n_docs
    }

    pub fn traditional(&self, term: &str) -> Option<&Posting> {
        self.traditional.get(term)
    }

    pub fn semantic(&self, term: &str, rc: &Rc) -> Option<&Posting> {
        self.semantic.get(&(term.to_owned(), rc.clone()))
    }

    /// All `(rc, posting)` pairs of one term.
    pub fn senses_of<'a>(&'a self, term: &'a str) -> impl Iterator<Item = (&'a Rc, &'a Posting)> + 'a {
        self.semantic
            .range((term.to_owned(), Rc::Unknown)..)
            .take_while(move |((t, _), _)| t == term)
            .map(|((_, rc), p)| (rc, p))
    }

    pub fn terms(&self) -> impl Iterator<Item = &str> {
        self.traditional.keys().map(String::as_str)
    }

    pub fn traditional_postings(&self) -> impl Iterator<Item = (&str, &Posting)> {
        self.traditional.iter().map(|(t, p)| (t.as_str(), p))
    }

    pub fn semantic_postings(&self) -> impl Iterator<Item = (&str, &Rc, &Posting)> {
        self.semantic.iter().map(|((t, rc), p)| (t.as_str(), rc, p))
    }

    /// Union of the term's postings whose rc is within `hops` of `query_rc`.
    pub fn effective_posting(&self, graph: &ConceptGraph, term: &str, query_rc: &Rc, hops: u32) -> Posting {
        Posting::merge(
            self.senses_of(term)
                .filter(|(rc, _)| graph.related(rc, query_rc, hops))
                .map(|(_, p)| p),
        )
    }

    /// Every term's semantic postings add up to its traditional posting.
    pub fn partition_holds(&self) -> bool {
        let rebuilt = IndexPair::from_semantic(self.n_docs, self.semantic.clone());
        rebuilt.traditional == self.traditional
    }
}

/// Indexes every phrase of every document under the phrase's resolved RC.
pub fn build_index(collection: &Collection, graph: &ConceptGraph, pipeline: &TextPipeline) -> IndexPair {
    let mut acc: BTreeMap<(String, Rc), BTreeMap<u32, u32>> = BTreeMap::new();
    for doc in collection.documents() {
        for phrase in &doc.phrases {
            let terms = pipeline.pipeline(phrase);
            if terms.is_empty() {
                continue;
            }
            let rc = graph.resolve_rc(&terms);
            for term in terms {
                *acc.entry((term, rc.clone()))
                    .or_default()
                    .entry(doc.doc_id)
                    .or_default() += 1;
            }
        }
    }
    let semantic = acc
        .into_iter()
        .map(|(k, docs)| {
            (
                k,
                Posting {
                    entries: docs.into_iter().collect(),
                },
            )
        })
        .collect();
    IndexPair::from_semantic(collection.n_docs(), semantic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Document;

    #[test]
    fn one_phrase_repeated_word() {
        let c = Collection::new(vec![Document::new(1, "a a")]).unwrap();
        let ix = build_index(&c, &ConceptGraph::new(), &TextPipeline::new(crate::Language::Arabic));
        assert_eq!(ix.n_docs(), 1);
        let p = ix.traditional("a").unwrap();
        assert_eq!(p.entries(), &[(1, 2)]);
        assert_eq!(p.df(), 1);
        assert_eq!(ix.semantic("a", &Rc::Unknown).unwrap().entries(), &[(1, 2)]);
    }

    #[test]
    fn empty_collection() {
        let ix = build_index(&Collection::default(), &ConceptGraph::new(), &TextPipeline::default());
        assert_eq!(ix.n_docs(), 0);
        assert_eq!(ix.terms().count(), 0);
    }

    #[test]
    fn same_term_two_rcs_in_one_document() {
        let g = ConceptGraph::parse(
            "node\tx\tX\tconcept\nnode\ty\tY\tconcept\nsense\tp\tx\nsense\tq\ty\nsense\tw\tx\nsense\tw\ty\n",
        )
        .unwrap();
        let c = Collection::new(vec![Document::new(4, "w p. w w q")]).unwrap();
        let ix = build_index(&c, &g, &TextPipeline::default());
        assert_eq!(ix.semantic("w", &Rc::concept("x")).unwrap().entries(), &[(4, 1)]);
        assert_eq!(ix.semantic("w", &Rc::concept("y")).unwrap().entries(), &[(4, 2)]);
        assert_eq!(ix.traditional("w").unwrap().entries(), &[(4, 3)]);
        assert!(ix.partition_holds());
        assert_eq!(ix.senses_of("w").count(), 2);
    }

    #[test]
    fn posting_from_entries_normalizes() {
        let p = Posting::from_entries(vec![(5, 1), (2, 3), (5, 2), (9, 0)]);
        assert_eq!(p.entries(), &[(2, 3), (5, 3)]);
        assert_eq!(p.tf(5), 3);
        assert_eq!(p.tf(9), 0);
        assert_eq!(p.total_tf(), 6);
    }
}
