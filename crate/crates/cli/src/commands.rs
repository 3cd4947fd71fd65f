use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{Context, Result};
use cir_core::boolean::{self, parse_boolean};
use cir_core::corpus::{load_collection, split_words};
use cir_core::eval::{compare_report, execute, load_queries, timed, RunConfig};
use cir_core::index::{build_index, load_index, save_index};
use cir_core::ontology::load_ontology;
use cir_core::{fixtures, vsm, ConceptGraph, IndexPair, Mode, Model, Qrels, TextPipeline};

use crate::config::Settings;
use crate::UsageError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Tsv,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "tsv" => Ok(ReportFormat::Tsv),
            other => Err(format!("unknown format `{other}` (text or tsv)")),
        }
    }
}

fn required<'a>(value: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path> {
    value
        .as_deref()
        .ok_or_else(|| UsageError(format!("--{flag} is required (flag or config file)")).into())
}

fn pipeline(settings: &Settings) -> Result<TextPipeline> {
    let p = TextPipeline::new(settings.language);
    match &settings.stopwords {
        Some(dir) => {
            log::info!("stop words from {}", dir.display());
            Ok(p.with_stopwords_dir(dir)?)
        }
        None => Ok(p),
    }
}

fn graph(settings: &Settings) -> Result<ConceptGraph> {
    let path = required(&settings.ontology, "ontology")?;
    Ok(load_ontology(path)?)
}

fn index_file(settings: &Settings) -> Result<IndexPair> {
    let path = required(&settings.index, "index")?;
    Ok(load_index(path)?)
}

pub fn index(settings: &Settings, out_path: &Path, out: &mut impl Write) -> Result<()> {
    let corpus = required(&settings.corpus, "corpus")?;
    let collection = load_collection(corpus)?;
    let g = graph(settings)?;
    let p = pipeline(settings)?;
    let ix = build_index(&collection, &g, &p);
    save_index(&ix, out_path)?;
    writeln!(
        out,
        "indexed {} documents: {} terms, {} term/concept postings -> {}",
        ix.n_docs(),
        ix.traditional_postings().count(),
        ix.semantic_postings().count(),
        out_path.display()
    )?;
    Ok(())
}

pub fn search(settings: &Settings, model: Model, mode: Mode, query: &str, out: &mut impl Write) -> Result<()> {
    let ix = index_file(settings)?;
    let g = graph(settings)?;
    let p = pipeline(settings)?;
    let hops = settings.hops;
    let elapsed = match model {
        Model::Boolean => {
            let q = parse_boolean(query, &p)?;
            log::info!("query rc: {}", g.resolve_rc(&q.terms));
            let (docs, ms) = timed(|| boolean::evaluate(&ix, &g, &q, mode, hops));
            for d in docs.iter() {
                writeln!(out, "{d}")?;
            }
            ms
        }
        Model::Vsm => {
            let terms = p.query_terms(query);
            log::info!("query terms: {terms:?}, rc: {}", g.resolve_rc(&terms));
            let (hits, ms) = timed(|| vsm::rank(&ix, &g, &terms, mode, settings.topk, hops, settings.vsm));
            for (rank, h) in hits?.iter().enumerate() {
                writeln!(out, "{}\t{}\t{:.4}", rank + 1, h.doc_id, h.score)?;
            }
            ms
        }
    };
    writeln!(out, "elapsed_ms\t{elapsed:.3}")?;
    Ok(())
}

pub fn rc(settings: &Settings, words: &[String], out: &mut impl Write) -> Result<()> {
    let g = graph(settings)?;
    let p = pipeline(settings)?;
    let terms: Vec<String> = words.iter().flat_map(|w| p.process_words(&split_words(w))).collect();
    let res = g.resolve(&terms);
    writeln!(out, "{}", res.rc)?;
    if res.terms.is_empty() {
        writeln!(out, "no input term has a sense in the ontology")?;
        return Ok(());
    }
    if res.candidates.is_empty() {
        writeln!(
            out,
            "single-sense term {}: nearest concept above its sense",
            res.terms[0]
        )?;
        return Ok(());
    }
    writeln!(out, "concept\ttotal\tmax\t{}", res.terms.join("\t"))?;
    for c in &res.candidates {
        let per: Vec<String> = c.per_term.iter().map(u32::to_string).collect();
        writeln!(out, "{}\t{}\t{}\t{}", c.concept, c.total, c.max, per.join("\t"))?;
    }
    Ok(())
}

pub fn eval(
    settings: &Settings,
    queries: &Path,
    qrels: &Path,
    topk: Option<usize>,
    format: ReportFormat,
    out: &mut impl Write,
) -> Result<()> {
    let ix = index_file(settings)?;
    let g = graph(settings)?;
    let p = pipeline(settings)?;
    let queries = load_queries(queries)?;
    let qrels = Qrels::load(qrels)?;
    let cfg = RunConfig {
        hops: settings.hops,
        vsm: settings.vsm,
        limit: usize::MAX,
    };
    let runs = queries
        .iter()
        .map(|q| execute(&ix, &g, &p, q, cfg).with_context(|| format!("query {}", q.id)))
        .collect::<Result<Vec<_>>>()?;
    let report = compare_report(&runs, &qrels, topk)?;
    match format {
        ReportFormat::Text => out.write_all(report.to_text().as_bytes())?,
        ReportFormat::Tsv => out.write_all(report.to_tsv().as_bytes())?,
    }
    Ok(())
}

pub fn fixtures(dir: &Path, out: &mut impl Write) -> Result<()> {
    for path in fixtures::materialize(dir)? {
        writeln!(out, "{}", path.display())?;
    }
    Ok(())
}
