//! Implementations checked against brute-force references.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use cir_core::boolean::{self, eval_and, eval_not, eval_or, BooleanQuery, Operator};
use cir_core::{vsm, ConceptGraph, NodeKind, Rc, VsmOptions};
use common::{all_pairs, arb_case, concept, dense_rank, rc_of, term, RandomCase, CONCEPTS};
use proptest::prelude::*;

#[derive(Debug, Clone)]
struct RandomGraph {
    concept: Vec<bool>,
    edges: Vec<(usize, usize)>,
    senses: Vec<Vec<usize>>,
}

fn arb_graph() -> impl Strategy<Value = RandomGraph> {
    (1usize..=12).prop_flat_map(|n| {
        (
            proptest::collection::vec(any::<bool>(), n),
            proptest::collection::vec((0..n, 0..n), 0..20),
            proptest::collection::vec(proptest::collection::btree_set(0..n, 1..=3), 0..4),
        )
            .prop_map(|(concept, edges, senses)| RandomGraph {
                concept,
                edges,
                senses: senses.into_iter().map(|s| s.into_iter().collect()).collect(),
            })
    })
}

fn node(i: usize) -> String {
    format!("n{i:02}")
}

impl RandomGraph {
    fn build(&self) -> ConceptGraph {
        let mut g = ConceptGraph::new();
        for (i, &c) in self.concept.iter().enumerate() {
            let kind = if c { NodeKind::Concept } else { NodeKind::Instance };
            g.add_node(node(i), "x", kind).unwrap();
        }
        for &(a, b) in &self.edges {
            g.add_edge(&node(a), "e", &node(b)).unwrap();
        }
        for (t, ss) in self.senses.iter().enumerate() {
            for &s in ss {
                g.add_sense(format!("w{t}"), &node(s)).unwrap();
            }
        }
        g
    }

    fn directed_ancestor(&self, start: usize) -> Option<usize> {
        let n = self.concept.len();
        if self.concept[start] {
            return Some(start);
        }
        let mut d = vec![vec![None::<u32>; n]; n];
        for (i, row) in d.iter_mut().enumerate() {
            row[i] = Some(0);
        }
        for &(a, b) in &self.edges {
            if a != b {
                d[a][b] = Some(1);
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if let (Some(x), Some(y)) = (d[i][k], d[k][j]) {
                        if d[i][j].is_none_or(|c| x + y < c) {
                            d[i][j] = Some(x + y);
                        }
                    }
                }
            }
        }
        (0..n)
            .filter(|&c| self.concept[c] && c != start)
            .filter_map(|c| d[start][c].map(|dist| (dist, c)))
            .min()
            .map(|(_, c)| c)
    }

    /// Exhaustive argmin over concepts of (sum, max, id).
    fn resolve(&self, words: &[usize]) -> Rc {
        let s: BTreeSet<usize> = words.iter().copied().filter(|&w| w < self.senses.len()).collect();
        if s.is_empty() {
            return Rc::Unknown;
        }
        if s.len() == 1 {
            let w = *s.iter().next().unwrap();
            if self.senses[w].len() == 1 {
                if let Some(a) = self.directed_ancestor(self.senses[w][0]) {
                    return Rc::concept(node(a));
                }
            }
        }
        let d = all_pairs(self.concept.len(), &self.edges);
        let mut best: Option<(u32, u32, String)> = None;
        for c in (0..self.concept.len()).filter(|&c| self.concept[c]) {
            let per: Option<Vec<u32>> = s
                .iter()
                .map(|&w| self.senses[w].iter().filter_map(|&x| d[x][c]).min())
                .collect();
            if let Some(per) = per {
                let key = (per.iter().sum(), *per.iter().max().unwrap(), node(c));
                if best.as_ref().is_none_or(|b| key < *b) {
                    best = Some(key);
                }
            }
        }
        best.map_or(Rc::Unknown, |(_, _, id)| Rc::concept(id))
    }
}

fn brute_semantic_docs(case: &RandomCase, t: usize, qrc: &Rc, hops: u32) -> BTreeSet<u32> {
    let d = all_pairs(CONCEPTS, &case.edges);
    case.entries
        .iter()
        .filter(|e| e.0 == t)
        .filter(|e| match (e.1, qrc.id()) {
            (0, _) | (_, None) => false,
            (rc, Some(q)) => {
                let q: usize = q[1..].parse().unwrap();
                d[rc - 1][q].is_some_and(|x| x <= hops)
            }
        })
        .map(|e| e.2)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn hop_distance_matches_floyd_warshall(rg in arb_graph()) {
        let g = rg.build();
        let d = all_pairs(rg.concept.len(), &rg.edges);
        for (a, row) in d.iter().enumerate() {
            for (b, &want) in row.iter().enumerate() {
                prop_assert_eq!(g.hop_distance(&node(a), &node(b)), want);
            }
        }
    }

    #[test]
    fn resolve_matches_exhaustive_search(rg in arb_graph(), words in proptest::collection::vec(0usize..5, 0..4)) {
        let g = rg.build();
        let terms: Vec<String> = words.iter().map(|w| format!("w{w}")).collect();
        prop_assert_eq!(g.resolve_rc(&terms), rg.resolve(&words));
    }

    #[test]
    fn related_matches_floyd_warshall(rg in arb_graph(), a in 0usize..12, b in 0usize..12, h in 0u32..4) {
        let n = rg.concept.len();
        let (a, b) = (a % n, b % n);
        let g = rg.build();
        let d = all_pairs(n, &rg.edges);
        let expect = d[a][b].is_some_and(|x| x <= h);
        prop_assert_eq!(g.related(&Rc::concept(node(a)), &Rc::concept(node(b)), h), expect);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn boolean_matches_set_algebra(case in arb_case(), split in 0usize..6) {
        let ix = case.index();
        let terms = case.all_terms();
        let sets: Vec<BTreeSet<u32>> = (0..case.n_terms).map(|t| case.docs_with(t)).collect();

        let and: BTreeSet<u32> = sets.iter().skip(1).fold(sets[0].clone(), |acc, s| &acc & s);
        let or: BTreeSet<u32> = sets.iter().flatten().copied().collect();
        prop_assert_eq!(eval_and(&ix, &terms).into_vec(), and.into_iter().collect::<Vec<_>>());
        prop_assert_eq!(eval_or(&ix, &terms).into_vec(), or.into_iter().collect::<Vec<_>>());

        let cut = 1 + split % case.n_terms;
        let (base, neg) = terms.split_at(cut);
        let base_set = sets[..cut].iter().skip(1).fold(sets[0].clone(), |acc, s| &acc & s);
        let neg_set: BTreeSet<u32> = sets[cut..].iter().flatten().copied().collect();
        let not: Vec<u32> = base_set.difference(&neg_set).copied().collect();
        prop_assert_eq!(eval_not(&ix, base, neg).into_vec(), not);
    }

    #[test]
    fn semantic_boolean_matches_filtered_set_algebra(case in arb_case(), h in 0u32..3) {
        let g = case.graph();
        let ix = case.index();
        let terms = case.all_terms();
        let qrc = g.resolve_rc(&terms);
        let q = BooleanQuery { operator: Operator::Or, terms: terms.clone(), negated: vec![] };
        let got = boolean::eval_semantic(&ix, &g, &q, h).into_vec();
        let expect: Vec<u32> = if qrc.is_unknown() {
            (0..case.n_terms).flat_map(|t| case.docs_with(t)).collect::<BTreeSet<_>>().into_iter().collect()
        } else {
            (0..case.n_terms)
                .flat_map(|t| brute_semantic_docs(&case, t, &qrc, h))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect()
        };
        prop_assert_eq!(got, expect);
    }

    #[test]
    fn vsm_matches_dense_ranker(case in arb_case(), query in proptest::collection::vec(0usize..6, 1..4)) {
        let ix = case.index();
        let query: Vec<usize> = query.into_iter().map(|q| q % case.n_terms).collect();
        let names: Vec<String> = query.iter().map(|&q| term(q)).collect();
        let mut uniq = query.clone();
        let mut seen = BTreeSet::new();
        uniq.retain(|q| seen.insert(*q));
        let expect = dense_rank(case.n_docs, &case.tf_matrix(), &uniq);
        let got = vsm::rank_traditional(&ix, &names, usize::MAX, VsmOptions::default()).unwrap();
        prop_assert_eq!(got.len(), expect.len());
        for (hit, (doc, score)) in got.iter().zip(&expect) {
            prop_assert!((hit.score - score).abs() < 1e-9, "doc {} {} vs {} {}", hit.doc_id, hit.score, doc, score);
        }
        // order may only differ between exactly-tied scores
        let got_ids: BTreeSet<u32> = got.iter().map(|h| h.doc_id).collect();
        let exp_ids: BTreeSet<u32> = expect.iter().map(|e| e.0).collect();
        prop_assert_eq!(got_ids, exp_ids);
    }
}

#[test]
fn semantic_rank_matches_dense_ranker_on_filtered_matrix() {
    use proptest::test_runner::{Config, TestRunner};
    let mut runner = TestRunner::new(Config::with_cases(300));
    runner
        .run(&(arb_case(), 0u32..3), |(case, h)| {
            let g = case.graph();
            let ix = case.index();
            let terms = case.all_terms();
            let qrc = g.resolve_rc(&terms);
            prop_assume!(!qrc.is_unknown());
            let d = all_pairs(CONCEPTS, &case.edges);
            let q: usize = qrc.id().unwrap()[1..].parse().unwrap();
            let mut tf = BTreeMap::new();
            for &(t, rc, doc, f) in &case.entries {
                if rc > 0 && d[rc - 1][q].is_some_and(|x| x <= h) {
                    *tf.entry((t, doc)).or_insert(0) += f;
                }
            }
            let all: Vec<usize> = (0..case.n_terms).collect();
            let expect = dense_rank(case.n_docs, &tf, &all);
            let got = vsm::rank_semantic(&ix, &g, &terms, usize::MAX, h, VsmOptions::default()).unwrap();
            prop_assert_eq!(got.len(), expect.len());
            for (hit, (_, score)) in got.iter().zip(&expect) {
                prop_assert!((hit.score - score).abs() < 1e-9);
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn rc_encoding_helpers_agree() {
    assert_eq!(rc_of(0), Rc::Unknown);
    assert_eq!(rc_of(1), Rc::concept(concept(0)));
}
