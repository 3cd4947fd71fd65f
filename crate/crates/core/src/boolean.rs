//! Flat Boolean queries over traditional or RC-filtered postings.

use std::fmt;

use crate::corpus::split_words;
use crate::error::{Error, Result};
use crate::index::{IndexPair, Posting};
use crate::ontology::{ConceptGraph, Rc};
use crate::textpipe::{normalize_arabic, TextPipeline};
use crate::Mode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Operator {
    And,
    Or,
    Not,
}

impl Operator {
    pub fn as_str(self) -> &'static str {
        match self {
            Operator::And => "AND",
            Operator::Or => "OR",
            Operator::Not => "NOT",
        }
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One operator applied to pipeline-normalized terms. For `Not`, `terms`
/// are AND-combined and every document holding a `negated` term is removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanQuery {
    pub operator: Operator,
    pub terms: Vec<String>,
    pub negated: Vec<String>,
}

/// Strictly ascending list of document ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct DocSet(Vec<u32>);

impl DocSet {
    /// Sorts and deduplicates.
    pub fn from_unsorted(mut ids: Vec<u32>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        DocSet(ids)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, doc: u32) -> bool {
        self.0.binary_search(&doc).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &DocSet) -> bool {
        self.0.iter().all(|d| other.contains(*d))
    }
}

impl From<&Posting> for DocSet {
    fn from(p: &Posting) -> Self {
        DocSet(p.doc_ids().collect())
    }
}

fn operator_word(word: &str) -> Option<Operator> {
    match word.to_lowercase().as_str() {
        "and" => return Some(Operator::And),
        "or" => return Some(Operator::Or),
        "not" => return Some(Operator::Not),
        _ => {}
    }
    match normalize_arabic(word).as_str() {
        "و" => Some(Operator::And),
        "او" => Some(Operator::Or),
        "ليس" => Some(Operator::Not),
        _ => None,
    }
}

/// Parses a flat query. Operator words are recognized before stop-word
/// removal; a query without any defaults to AND. With NOT, words before the
/// first NOT form the base and every later word is negated.
pub fn parse_boolean(raw: &str, pipeline: &TextPipeline) -> Result<BooleanQuery> {
    let mut operator: Option<Operator> = None;
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    for word in split_words(raw) {
        if let Some(op) = operator_word(&word) {
            match operator {
                Some(prev) if prev != op => return Err(Error::MixedOperators(prev.as_str(), op.as_str())),
                _ => operator = Some(op),
            }
            continue;
        }
        if operator == Some(Operator::Not) {
            negative.push(word);
        } else {
            positive.push(word);
        }
    }
    let operator = operator.unwrap_or(Operator::And);
    let terms = dedup(pipeline.process_words(&positive));
    let negated = dedup(pipeline.process_words(&negative));
    if terms.is_empty() {
        return Err(if operator == Operator::Not && !negated.is_empty() {
            Error::NotWithoutBase
        } else {
            Error::EmptyQuery
        });
    }
    Ok(BooleanQuery {
        operator,
        terms,
        negated,
    })
}

fn dedup(terms: Vec<String>) -> Vec<String> {
    let mut out: Vec<String> = Vec::with_capacity(terms.len());
    for t in terms {
        if !out.contains(&t) {
            out.push(t);
        }
    }
    out
}

/// Intersection, rarest list first, stopping as soon as nothing is left.
pub fn intersect(mut lists: Vec<DocSet>) -> DocSet {
    if lists.is_empty() {
        return DocSet::default();
    }
    lists.sort_by_key(DocSet::len);
    let mut lists = lists.into_iter();
    let mut candidates = lists.next().unwrap_or_default().0;
    for list in lists {
        if candidates.is_empty() {
            break;
        }
        candidates.retain(|d| list.contains(*d));
    }
    DocSet(candidates)
}

pub fn union(lists: Vec<DocSet>) -> DocSet {
    let mut out: Vec<u32> = Vec::new();
    for list in lists {
        out = merge_sorted(&out, &list.0);
    }
    DocSet(out)
}

fn merge_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

pub fn difference(base: DocSet, remove: &DocSet) -> DocSet {
    DocSet(base.0.into_iter().filter(|d| !remove.contains(*d)).collect())
}

fn traditional_docs<S: AsRef<str>>(ix: &IndexPair, terms: &[S]) -> Vec<DocSet> {
    terms
        .iter()
        .map(|t| ix.traditional(t.as_ref()).map(DocSet::from).unwrap_or_default())
        .collect()
}

pub fn eval_and<S: AsRef<str>>(ix: &IndexPair, terms: &[S]) -> DocSet {
    intersect(traditional_docs(ix, terms))
}

pub fn eval_or<S: AsRef<str>>(ix: &IndexPair, terms: &[S]) -> DocSet {
    union(traditional_docs(ix, terms))
}

pub fn eval_not<S: AsRef<str>>(ix: &IndexPair, base: &[S], negated: &[S]) -> DocSet {
    difference(eval_and(ix, base), &eval_or(ix, negated))
}

fn combine(operator: Operator, positive: Vec<DocSet>, negative: Vec<DocSet>) -> DocSet {
    match operator {
        Operator::And => intersect(positive),
        Operator::Or => union(positive),
        Operator::Not => difference(intersect(positive), &union(negative)),
    }
}

pub fn eval_traditional(ix: &IndexPair, q: &BooleanQuery) -> DocSet {
    combine(
        q.operator,
        traditional_docs(ix, &q.terms),
        traditional_docs(ix, &q.negated),
    )
}

/// Resolves the query RC over the positive terms and evaluates them over
/// postings whose RC lies within `hops` of it. Negated terms subtract their
/// whole traditional posting, so the result is always a subset of the
/// traditional one. Falls back to traditional evaluation when the query RC
/// is unknown.
pub fn eval_semantic(ix: &IndexPair, graph: &ConceptGraph, q: &BooleanQuery, hops: u32) -> DocSet {
    let rc = graph.resolve_rc(&q.terms);
    eval_with_rc(ix, graph, q, &rc, hops)
}

pub(crate) fn eval_with_rc(ix: &IndexPair, graph: &ConceptGraph, q: &BooleanQuery, rc: &Rc, hops: u32) -> DocSet {
    if rc.is_unknown() {
        return eval_traditional(ix, q);
    }
    let filtered = |terms: &[String]| -> Vec<DocSet> {
        terms
            .iter()
            .map(|t| DocSet::from(&ix.effective_posting(graph, t, rc, hops)))
            .collect()
    };
    combine(q.operator, filtered(&q.terms), traditional_docs(ix, &q.negated))
}

pub fn evaluate(ix: &IndexPair, graph: &ConceptGraph, q: &BooleanQuery, mode: Mode, hops: u32) -> DocSet {
    match mode {
        Mode::Traditional => eval_traditional(ix, q),
        Mode::Semantic => eval_semantic(ix, graph, q, hops),
    }
}
