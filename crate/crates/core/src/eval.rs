//! Precision, recall and side-by-side reports of retrieval runs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use crate::boolean::{self, parse_boolean};
use crate::error::{Error, Result};
use crate::index::IndexPair;
use crate::ontology::ConceptGraph;
use crate::textpipe::TextPipeline;
use crate::vsm::{self, VsmOptions};
use crate::{Mode, Model};

pub fn precision(retrieved: &[u32], relevant: &BTreeSet<u32>) -> Result<f64> {
    if retrieved.is_empty() {
        return Err(Error::EmptyRetrieved);
    }
    let hits = retrieved.iter().filter(|d| relevant.contains(d)).count();
    Ok(hits as f64 / retrieved.len() as f64)
}

pub fn recall(retrieved: &[u32], relevant: &BTreeSet<u32>) -> Result<f64> {
    if relevant.is_empty() {
        return Err(Error::EmptyRelevant);
    }
    let hits = retrieved.iter().filter(|d| relevant.contains(d)).count();
    Ok(hits as f64 / relevant.len() as f64)
}

/// Precision is `None` when nothing was retrieved.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metrics {
    pub precision: Option<f64>,
    pub recall: f64,
}

fn metrics(retrieved: &[u32], relevant: &BTreeSet<u32>) -> Result<Metrics> {
    Ok(Metrics {
        precision: precision(retrieved, relevant).ok(),
        recall: recall(retrieved, relevant)?,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub query_id: String,
    pub model: Model,
    pub mode: Mode,
    pub retrieved: Vec<u32>,
    pub elapsed_ms: f64,
}

/// Metrics over the first `min(k, retrieved)` hits.
pub fn pr_at_k(run: &RunResult, relevant: &BTreeSet<u32>, k: usize) -> Result<Metrics> {
    let cut = &run.retrieved[..run.retrieved.len().min(k.max(1))];
    metrics(cut, relevant)
}

/// Runs `f` and returns its output with the elapsed wall-clock milliseconds.
pub fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64() * 1e3)
}

/// Relevant documents per query id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Qrels(BTreeMap<String, BTreeSet<u32>>);

impl Qrels {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, query_id: impl Into<String>, doc: u32) {
        self.0.entry(query_id.into()).or_default().insert(doc);
    }

    pub fn set(&mut self, query_id: impl Into<String>, docs: BTreeSet<u32>) {
        self.0.insert(query_id.into(), docs);
    }

    pub fn get(&self, query_id: &str) -> Option<&BTreeSet<u32>> {
        self.0.get(query_id)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &BTreeSet<u32>)> {
        self.0.iter().map(|(q, d)| (q.as_str(), d))
    }

    /// `query-id<TAB>doc-id` per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut q = Qrels::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (id, doc) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(i + 1, "expected query-id<TAB>doc-id"))?;
            let doc = doc
                .trim()
                .parse()
                .map_err(|_| Error::parse(i + 1, format!("bad doc id `{doc}`")))?;
            q.insert(id, doc);
        }
        Ok(q)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (q, docs) in &self.0 {
            for d in docs {
                let _ = writeln!(out, "{q}\t{d}");
            }
        }
        out
    }
}

/// One line of a query file: `id<TAB>model<TAB>mode<TAB>text`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub id: String,
    pub model: Model,
    pub mode: Mode,
    pub text: String,
}

pub fn parse_queries(text: &str) -> Result<Vec<Query>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |m: String| Error::parse(i + 1, m);
        let fields: Vec<&str> = line.splitn(4, '\t').collect();
        let [id, model, mode, text] = fields[..] else {
            return Err(bad("expected id, model, mode and text".into()));
        };
        out.push(Query {
            id: id.to_owned(),
            model: model.parse().map_err(bad)?,
            mode: mode.parse().map_err(bad)?,
            text: text.to_owned(),
        });
    }
    Ok(out)
}

pub fn load_queries(path: impl AsRef<Path>) -> Result<Vec<Query>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_queries(&text)
}

/// Shared knobs for [`execute`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub hops: u32,
    pub vsm: VsmOptions,
    /// Ranked runs keep at most this many hits.
    pub limit: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            hops: crate::DEFAULT_HOPS,
            vsm: VsmOptions::default(),
            limit: usize::MAX,
        }
    }
}

/// Parses and evaluates one query, timing everything after parsing.
pub fn execute(
    ix: &IndexPair,
    graph: &ConceptGraph,
    pipeline: &TextPipeline,
    q: &Query,
    cfg: RunConfig,
) -> Result<RunResult> {
    let (retrieved, elapsed_ms) = match q.model {
        Model::Boolean => {
            let parsed = parse_boolean(&q.text, pipeline)?;
            let (docs, ms) = timed(|| boolean::evaluate(ix, graph, &parsed, q.mode, cfg.hops));
            (docs.into_vec(), ms)
        }
        Model::Vsm => {
            let terms = pipeline.query_terms(&q.text);
            let (hits, ms) = timed(|| vsm::rank(ix, graph, &terms, q.mode, cfg.limit, cfg.hops, cfg.vsm));
            (hits?.into_iter().map(|h| h.doc_id).collect(), ms)
        }
    };
    Ok(RunResult {
        query_id: q.id.clone(),
        model: q.model,
        mode: q.mode,
        retrieved,
        elapsed_ms,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub query_id: String,
    pub model: Model,
    pub mode: Mode,
    pub retrieved: usize,
    pub full: Metrics,
    pub at_k: Option<Metrics>,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AverageRow {
    pub model: Model,
    pub mode: Mode,
    pub queries: usize,
    /// Mean over runs with a defined precision.
    pub precision: Option<f64>,
    /// Runs left out of the precision mean.
    pub undefined: usize,
    pub recall: f64,
    pub precision_at_k: Option<f64>,
    pub recall_at_k: Option<f64>,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub k: Option<usize>,
    pub rows: Vec<ReportRow>,
    pub averages: Vec<AverageRow>,
}

fn mean(xs: impl IntoIterator<Item = f64>) -> Option<f64> {
    let (sum, n) = xs.into_iter().fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    (n > 0).then(|| sum / n as f64)
}

/// Per-run metrics plus one average row per `(model, mode)`. Rows keep the
/// order of `runs`; averages are sorted by model then mode.
pub fn compare_report(runs: &[RunResult], qrels: &Qrels, k: Option<usize>) -> Result<Report> {
    if runs.is_empty() {
        return Err(Error::EmptyReport);
    }
    let mut rows = Vec::with_capacity(runs.len());
    for run in runs {
        let relevant = qrels
            .get(&run.query_id)
            .ok_or_else(|| Error::MissingQrel(run.query_id.clone()))?;
        rows.push(ReportRow {
            query_id: run.query_id.clone(),
            model: run.model,
            mode: run.mode,
            retrieved: run.retrieved.len(),
            full: metrics(&run.retrieved, relevant)?,
            at_k: k.map(|k| pr_at_k(run, relevant, k)).transpose()?,
            elapsed_ms: run.elapsed_ms,
        });
    }

    let mut groups: BTreeMap<(Model, Mode), Vec<&ReportRow>> = BTreeMap::new();
    for row in &rows {
        groups.entry((row.model, row.mode)).or_default().push(row);
    }
    let averages = groups
        .into_iter()
        .map(|((model, mode), rs)| AverageRow {
            model,
            mode,
            queries: rs.len(),
            precision: mean(rs.iter().filter_map(|r| r.full.precision)),
            undefined: rs.iter().filter(|r| r.full.precision.is_none()).count(),
            recall: mean(rs.iter().map(|r| r.full.recall)).unwrap_or(0.0),
            precision_at_k: mean(rs.iter().filter_map(|r| r.at_k.and_then(|m| m.precision))),
            recall_at_k: mean(rs.iter().filter_map(|r| r.at_k.map(|m| m.recall))),
            elapsed_ms: mean(rs.iter().map(|r| r.elapsed_ms)).unwrap_or(0.0),
        })
        .collect();
    Ok(Report { k, rows, averages })
}

fn pct(x: Option<f64>) -> String {
    x.map_or_else(|| "-".to_owned(), |v| format!("{:.1}", v * 100.0))
}

impl Report {
    pub fn to_tsv(&self) -> String {
        let mut out =
            String::from("query\tmodel\tmode\tretrieved\tprecision\trecall\tprecision_at_k\trecall_at_k\telapsed_ms\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{:.3}",
                r.query_id,
                r.model,
                r.mode,
                r.retrieved,
                pct(r.full.precision),
                pct(Some(r.full.recall)),
                pct(r.at_k.and_then(|m| m.precision)),
                pct(r.at_k.map(|m| m.recall)),
                r.elapsed_ms
            );
        }
        for a in &self.averages {
            let _ = writeln!(
                out,
                "AVERAGE\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{:.3}",
                a.model,
                a.mode,
                a.queries,
                pct(a.precision),
                pct(Some(a.recall)),
                pct(a.precision_at_k),
                pct(a.recall_at_k),
                a.elapsed_ms
            );
        }
        out
    }

    /// Column-aligned version of [`Report::to_tsv`].
    pub fn to_text(&self) -> String {
        let tsv = self.to_tsv();
        let table: Vec<Vec<&str>> = tsv.lines().map(|l| l.split('\t').collect()).collect();
        let cols = table.iter().map(Vec::len).max().unwrap_or(0);
        let widths: Vec<usize> = (0..cols)
            .map(|c| {
                table
                    .iter()
                    .filter_map(|r| r.get(c))
                    .map(|s| s.chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        for row in &table {
            for (c, cell) in row.iter().enumerate() {
                let pad = widths[c] - cell.chars().count();
                out.push_str(cell);
                if c + 1 < row.len() {
                    out.push_str(&" ".repeat(pad + 2));
                }
            }
            out.push('\n');
        }
        for a in self.averages.iter().filter(|a| a.undefined > 0) {
            let _ = writeln!(
                out,
                "note: {} {} average precision excludes {} run(s) that retrieved nothing",
                a.model, a.mode, a.undefined
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(ids: &[u32]) -> BTreeSet<u32> {
        ids.iter().copied().collect()
    }

    fn run(id: &str, mode: Mode, retrieved: &[u32]) -> RunResult {
        RunResult {
            query_id: id.into(),
            model: Model::Boolean,
            mode,
            retrieved: retrieved.to_vec(),
            elapsed_ms: 1.0,
        }
    }

    #[test]
    fn precision_and_recall() {
        assert_eq!(precision(&[1, 2, 3, 4], &rel(&[1, 3])).unwrap(), 0.5);
        assert_eq!(precision(&[1, 3], &rel(&[1, 3, 7])).unwrap(), 1.0);
        assert!(matches!(precision(&[], &rel(&[1])), Err(Error::EmptyRetrieved)));
        assert!((recall(&[1, 3], &rel(&[1, 3, 7])).unwrap() - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(recall(&[2], &rel(&[1])).unwrap(), 0.0);
        assert!(matches!(recall(&[1], &rel(&[])), Err(Error::EmptyRelevant)));
    }

    #[test]
    fn cutoff_metrics() {
        // R N R N with three relevant
        let r = run("q", Mode::Traditional, &[1, 2, 3, 4]);
        let m = pr_at_k(&r, &rel(&[1, 3, 9]), 4).unwrap();
        assert_eq!(m.precision, Some(0.5));
        assert!((m.recall - 2.0 / 3.0).abs() < 1e-12);
        let m = pr_at_k(&r, &rel(&[1, 3, 9]), 1).unwrap();
        assert_eq!(m.precision, Some(1.0));
        assert!((m.recall - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn report_shape() {
        let mut q = Qrels::new();
        for id in ["a", "b", "c"] {
            q.insert(id, 1);
        }
        let runs: Vec<RunResult> = ["a", "b", "c"]
            .iter()
            .flat_map(|id| [run(id, Mode::Traditional, &[1, 2]), run(id, Mode::Semantic, &[1])])
            .collect();
        let rep = compare_report(&runs, &q, Some(4)).unwrap();
        assert_eq!(rep.rows.len(), 6);
        assert_eq!(rep.averages.len(), 2);
        assert_eq!(rep.averages[0].precision, Some(0.5));
        assert_eq!(rep.averages[1].precision, Some(1.0));
        assert_eq!(rep.to_tsv().lines().count(), 1 + 6 + 2);
    }

    #[test]
    fn undefined_precision_excluded() {
        let mut q = Qrels::new();
        q.insert("a", 1);
        q.insert("b", 1);
        let runs = [run("a", Mode::Traditional, &[1]), run("b", Mode::Traditional, &[])];
        let rep = compare_report(&runs, &q, None).unwrap();
        assert_eq!(rep.averages[0].precision, Some(1.0));
        assert_eq!(rep.averages[0].undefined, 1);
        assert!(rep.to_text().contains("excludes 1 run"));
    }

    #[test]
    fn report_errors() {
        assert!(matches!(
            compare_report(&[], &Qrels::new(), None),
            Err(Error::EmptyReport)
        ));
        let err = compare_report(&[run("zz", Mode::Semantic, &[1])], &Qrels::new(), None).unwrap_err();
        assert!(matches!(err, Error::MissingQrel(id) if id == "zz"));
    }

    #[test]
    fn query_file() {
        let qs = parse_queries("# header\nq1\tvsm\tsemantic\tألم العين\nq2\tboolean\ttraditional\ta\tb\n").unwrap();
        assert_eq!(qs.len(), 2);
        assert_eq!(qs[0].model, Model::Vsm);
        assert_eq!(qs[1].text, "a\tb");
        assert!(matches!(
            parse_queries("q\tvsm\tfuzzy\tx\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(parse_queries("q\tvsm\n").is_err());
    }

    #[test]
    fn qrels_tsv() {
        let q = Qrels::parse("q1\t3\nq1\t1\n# c\nq2\t2\n").unwrap();
        assert_eq!(q.get("q1").unwrap(), &rel(&[1, 3]));
        assert_eq!(Qrels::parse(&q.to_tsv()).unwrap(), q);
        assert!(Qrels::parse("q1 3\n").is_err());
    }
}
