//! tf-idf cosine ranking.
//!
//! Document weights are `wtf(tf) * idf(df)` with base-10 logs. By default
//! the query vector is all ones and document norms only span the query's
//! dimensions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::index::{IndexPair, Posting};
use crate::ontology::ConceptGraph;
use crate::Mode;

/// Sublinear term frequency: `1 + log10(tf)`, zero for `tf == 0`.
pub fn wtf(tf: u32) -> f64 {
    if tf == 0 {
        0.0
    } else {
        1.0 + f64::from(tf).log10()
    }
}

pub fn idf(n_docs: usize, df: usize) -> Result<f64> {
    if df == 0 {
        return Err(Error::DivisionByZeroDf);
    }
    if df > n_docs {
        return Err(Error::InvariantViolation(format!("df {df} exceeds N {n_docs}")));
    }
    Ok((n_docs as f64 / df as f64).log10())
}

/// Cosine of two equal-length vectors; zero when either is the zero vector.
pub fn cosine(d: &[f64], q: &[f64]) -> f64 {
    assert_eq!(d.len(), q.len(), "cosine over vectors of different length");
    let dot: f64 = d.iter().zip(q).map(|(a, b)| a * b).sum();
    let nd = d.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nq = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    if nd == 0.0 || nq == 0.0 {
        0.0
    } else {
        dot / (nd * nq)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankedHit {
    pub doc_id: u32,
    pub score: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QueryWeighting {
    #[default]
    Binary,
    Idf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Norm {
    #[default]
    QuerySubspace,
    /// Norm of the document's whole traditional tf-idf vector.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VsmOptions {
    pub weighting: QueryWeighting,
    pub norm: Norm,
}

impl FromStr for QueryWeighting {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "binary" => Ok(QueryWeighting::Binary),
            "idf" => Ok(QueryWeighting::Idf),
            other => Err(format!("unknown query weighting `{other}`")),
        }
    }
}

impl FromStr for Norm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "query-subspace" => Ok(Norm::QuerySubspace),
            "full" => Ok(Norm::Full),
            other => Err(format!("unknown norm `{other}`")),
        }
    }
}

impl fmt::Display for QueryWeighting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QueryWeighting::Binary => "binary",
            QueryWeighting::Idf => "idf",
        })
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Norm::QuerySubspace => "query-subspace",
            Norm::Full => "full",
        })
    }
}

fn distinct<S: AsRef<str>>(terms: &[S]) -> Result<Vec<&str>> {
    let mut out: Vec<&str> = Vec::with_capacity(terms.len());
    for t in terms {
        if !out.contains(&t.as_ref()) {
            out.push(t.as_ref());
        }
    }
    if out.is_empty() {
        return Err(Error::EmptyQuery);
    }
    Ok(out)
}

fn full_norms(ix: &IndexPair) -> Result<BTreeMap<u32, f64>> {
    let mut sq: BTreeMap<u32, f64> = BTreeMap::new();
    for (_, p) in ix.traditional_postings() {
        let w_idf = idf(ix.n_docs(), p.df())?;
        for &(d, tf) in p.entries() {
            *sq.entry(d).or_default() += (wtf(tf) * w_idf).powi(2);
        }
    }
    Ok(sq.into_iter().map(|(d, s)| (d, s.sqrt())).collect())
}

/// Scores every document that appears in at least one of `dims`.
fn score(ix: &IndexPair, dims: &[Posting], k: usize, opts: VsmOptions) -> Result<Vec<RankedHit>> {
    let n = ix.n_docs();
    let idfs: Vec<Option<f64>> = dims
        .iter()
        .map(|p| {
            if p.is_empty() {
                Ok(None)
            } else {
                idf(n, p.df()).map(Some)
            }
        })
        .collect::<Result<_>>()?;
    let q: Vec<f64> = idfs
        .iter()
        .map(|w| match opts.weighting {
            QueryWeighting::Binary => 1.0,
            QueryWeighting::Idf => w.unwrap_or(0.0),
        })
        .collect();
    let full = match opts.norm {
        Norm::Full => Some(full_norms(ix)?),
        Norm::QuerySubspace => None,
    };

    let candidates: BTreeSet<u32> = dims.iter().flat_map(Posting::doc_ids).collect();
    let mut hits: Vec<RankedHit> = candidates
        .into_iter()
        .map(|doc| {
            let d: Vec<f64> = dims
                .iter()
                .zip(&idfs)
                .map(|(p, w)| wtf(p.tf(doc)) * w.unwrap_or(0.0))
                .collect();
            let score = match &full {
                None => cosine(&d, &q),
                Some(norms) => {
                    let nd = norms.get(&doc).copied().unwrap_or(0.0);
                    let nq = q.iter().map(|x| x * x).sum::<f64>().sqrt();
                    let dot: f64 = d.iter().zip(&q).map(|(a, b)| a * b).sum();
                    if nd == 0.0 || nq == 0.0 {
                        0.0
                    } else {
                        (dot / (nd * nq)).min(1.0)
                    }
                }
            };
            RankedHit { doc_id: doc, score }
        })
        .collect();
    sort_hits(&mut hits);
    hits.truncate(k);
    Ok(hits)
}

/// Score descending, then doc id ascending.
pub fn sort_hits(hits: &mut [RankedHit]) {
    hits.sort_by(|a, b| b.score.total_cmp(&a.score).then(a.doc_id.cmp(&b.doc_id)));
}

pub fn rank_traditional<S: AsRef<str>>(
    ix: &IndexPair,
    terms: &[S],
    k: usize,
    opts: VsmOptions,
) -> Result<Vec<RankedHit>> {
    let dims: Vec<Posting> = distinct(terms)?
        .into_iter()
        .map(|t| ix.traditional(t).cloned().unwrap_or_default())
        .collect();
    score(ix, &dims, k, opts)
}

/// Like [`rank_traditional`] but each dimension only keeps the postings
/// whose RC is within `hops` of the query RC; idf uses that filtered df.
pub fn rank_semantic<S: AsRef<str>>(
    ix: &IndexPair,
    graph: &ConceptGraph,
    terms: &[S],
    k: usize,
    hops: u32,
    opts: VsmOptions,
) -> Result<Vec<RankedHit>> {
    let terms = distinct(terms)?;
    let rc = graph.resolve_rc(&terms);
    if rc.is_unknown() {
        return rank_traditional(ix, &terms, k, opts);
    }
    let dims: Vec<Posting> = terms
        .iter()
        .map(|t| ix.effective_posting(graph, t, &rc, hops))
        .collect();
    score(ix, &dims, k, opts)
}

#[allow(clippy::too_many_arguments)]
pub fn rank<S: AsRef<str>>(
    ix: &IndexPair,
    graph: &ConceptGraph,
    terms: &[S],
    mode: Mode,
    k: usize,
    hops: u32,
    opts: VsmOptions,
) -> Result<Vec<RankedHit>> {
    match mode {
        Mode::Traditional => rank_traditional(ix, terms, k, opts),
        Mode::Semantic => rank_semantic(ix, graph, terms, k, hops, opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wtf_values() {
        assert_eq!(wtf(0), 0.0);
        assert_eq!(wtf(1), 1.0);
        assert!((wtf(2) - 1.3010).abs() < 5e-5);
        assert!((wtf(10) - 2.0).abs() < 1e-12);
        assert!((wtf(16) - 2.2041).abs() < 5e-5);
    }

    #[test]
    fn idf_values_and_errors() {
        assert!((idf(11, 4).unwrap() - 0.4393).abs() < 5e-5);
        assert!((idf(11, 2).unwrap() - 0.7404).abs() < 5e-5);
        assert_eq!(idf(7, 7).unwrap(), 0.0);
        assert!(matches!(idf(11, 0), Err(Error::DivisionByZeroDf)));
        assert!(matches!(idf(3, 4), Err(Error::InvariantViolation(_))));
    }

    #[test]
    fn cosine_cases() {
        assert!((cosine(&[0.3, 0.4], &[0.3, 0.4]) - 1.0).abs() < 1e-12);
        assert_eq!(cosine(&[1.0, 0.0], &[0.0, 1.0]), 0.0);
        assert_eq!(cosine(&[0.0, 0.0], &[1.0, 1.0]), 0.0);
        assert!((cosine(&[0.392, 0.439], &[1.0, 1.0]) - 0.998).abs() < 5e-4);
    }

    #[test]
    fn empty_query() {
        let ix = IndexPair::default();
        let none: [&str; 0] = [];
        assert!(matches!(
            rank_traditional(&ix, &none, 10, VsmOptions::default()),
            Err(Error::EmptyQuery)
        ));
    }

    #[test]
    fn single_term_scores_one() {
        let ix = IndexPair::parse("CIRIDX v1 N=4\na\t\t1:1,3:2\n").unwrap();
        let hits = rank_traditional(&ix, &["a"], 10, VsmOptions::default()).unwrap();
        assert_eq!(hits.iter().map(|h| h.doc_id).collect::<Vec<_>>(), [1, 3]);
        assert!(hits.iter().all(|h| (h.score - 1.0).abs() < 1e-12));
    }

    #[test]
    fn option_parsing() {
        assert_eq!("idf".parse::<QueryWeighting>().unwrap(), QueryWeighting::Idf);
        assert_eq!("full".parse::<Norm>().unwrap(), Norm::Full);
        assert!("cosine".parse::<Norm>().is_err());
    }
}
