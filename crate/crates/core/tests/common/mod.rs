#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use cir_core::{ConceptGraph, IndexPair, NodeKind, Posting, Rc};
use proptest::prelude::*;

pub const CONCEPTS: usize = 4;

/// A small random world: a concept graph over `c0..c3`, terms `t0..` with
/// one or two senses each, and raw `(term, rc, doc, tf)` postings where
/// `rc == 0` means UNKNOWN and `rc == i` means concept `c{i-1}`.
#[derive(Debug, Clone)]
pub struct RandomCase {
    pub n_docs: u32,
    pub n_terms: usize,
    pub edges: Vec<(usize, usize)>,
    pub senses: Vec<Vec<usize>>,
    pub entries: Vec<(usize, usize, u32, u32)>,
}

pub fn term(i: usize) -> String {
    format!("t{i}")
}

pub fn concept(i: usize) -> String {
    format!("c{i}")
}

pub fn rc_of(i: usize) -> Rc {
    if i == 0 {
        Rc::Unknown
    } else {
        Rc::concept(concept(i - 1))
    }
}

impl RandomCase {
    pub fn graph(&self) -> ConceptGraph {
        let mut g = ConceptGraph::new();
        for c in 0..CONCEPTS {
            g.add_node(concept(c), format!("C{c}"), NodeKind::Concept).unwrap();
        }
        for &(a, b) in &self.edges {
            g.add_edge(&concept(a), "rel", &concept(b)).unwrap();
        }
        for (t, ss) in self.senses.iter().enumerate() {
            for &s in ss {
                g.add_sense(term(t), &concept(s)).unwrap();
            }
        }
        g
    }

    pub fn index(&self) -> IndexPair {
        let mut raw: BTreeMap<(String, Rc), Vec<(u32, u32)>> = BTreeMap::new();
        for &(t, rc, d, tf) in &self.entries {
            raw.entry((term(t), rc_of(rc))).or_default().push((d, tf));
        }
        let semantic = raw.into_iter().map(|(k, v)| (k, Posting::from_entries(v))).collect();
        IndexPair::from_semantic(self.n_docs as usize, semantic)
    }

    /// Summed tf per (term, doc) straight from the raw entries.
    pub fn tf_matrix(&self) -> BTreeMap<(usize, u32), u32> {
        let mut m = BTreeMap::new();
        for &(t, _, d, tf) in &self.entries {
            *m.entry((t, d)).or_default() += tf;
        }
        m
    }

    pub fn docs_with(&self, t: usize) -> BTreeSet<u32> {
        self.entries.iter().filter(|e| e.0 == t).map(|e| e.2).collect()
    }

    pub fn all_terms(&self) -> Vec<String> {
        (0..self.n_terms).map(term).collect()
    }
}

pub fn arb_case() -> impl Strategy<Value = RandomCase> {
    (1u32..=8, 1usize..=6).prop_flat_map(|(n_docs, n_terms)| {
        let pairs: Vec<(usize, usize)> = (0..CONCEPTS)
            .flat_map(|a| (a + 1..CONCEPTS).map(move |b| (a, b)))
            .collect();
        (
            Just(n_docs),
            Just(n_terms),
            proptest::sample::subsequence(pairs.clone(), 0..=pairs.len()),
            proptest::collection::vec(
                proptest::collection::btree_set(0..CONCEPTS, 1..=2).prop_map(|s| s.into_iter().collect()),
                n_terms,
            ),
            proptest::collection::vec((0..n_terms, 0..=CONCEPTS, 1..=n_docs, 1u32..=5), 0..40),
        )
            .prop_map(|(n_docs, n_terms, edges, senses, entries)| RandomCase {
                n_docs,
                n_terms,
                edges,
                senses,
                entries,
            })
    })
}

/// Floyd-Warshall over an undirected unit-weight adjacency list.
pub fn all_pairs(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<Option<u32>>> {
    let mut d = vec![vec![None; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = Some(0);
    }
    for &(a, b) in edges {
        if a != b {
            d[a][b] = Some(1);
            d[b][a] = Some(1);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(x), Some(y)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|cur| x + y < cur) {
                        d[i][j] = Some(x + y);
                    }
                }
            }
        }
    }
    d
}

/// Dense reference ranker over raw `(term, doc) -> tf` counts. Query
/// dimensions must be distinct. Query-subspace norms, all-ones query.
pub fn dense_rank(n_docs: u32, tf: &BTreeMap<(usize, u32), u32>, query: &[usize]) -> Vec<(u32, f64)> {
    let dims: Vec<usize> = {
        let mut v = query.to_vec();
        v.dedup();
        v
    };
    let n = f64::from(n_docs);
    let df: Vec<usize> = dims
        .iter()
        .map(|&t| {
            (1..=n_docs)
                .filter(|&d| tf.get(&(t, d)).copied().unwrap_or(0) > 0)
                .count()
        })
        .collect();
    let mut out = Vec::new();
    for doc in 1..=n_docs {
        let raw: Vec<u32> = dims.iter().map(|&t| tf.get(&(t, doc)).copied().unwrap_or(0)).collect();
        if raw.iter().all(|&x| x == 0) {
            continue;
        }
        let w: Vec<f64> = raw
            .iter()
            .zip(&df)
            .map(|(&f, &df)| {
                if f == 0 {
                    0.0
                } else {
                    (1.0 + f64::from(f).log10()) * (n / df as f64).log10()
                }
            })
            .collect();
        let dot: f64 = w.iter().sum();
        let nd = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        let nq = (dims.len() as f64).sqrt();
        out.push((doc, if nd == 0.0 { 0.0 } else { dot / (nd * nq) }));
    }
    out.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
    out
}
