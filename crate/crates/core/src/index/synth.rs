//! Builds a synthetic collection whose index reproduces a posting table.

use std::collections::{BTreeMap, BTreeSet};

use crate::corpus::{Collection, Document};
use crate::error::{Error, Result};
use crate::ontology::{ConceptGraph, Rc};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub term: String,
    pub rc: Rc,
    pub entries: Vec<(u32, u32)>,
}

/// Desired semantic postings, one row per `(term, rc)`.
///
/// Text form: an optional `@docs<TAB>N` line fixing the collection size,
/// then `term<TAB>rc<TAB>doc:tf,...` rows (empty rc for UNKNOWN).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PostingTable {
    pub n_docs: u32,
    pub rows: Vec<TableRow>,
}

impl PostingTable {
    pub fn parse(text: &str) -> Result<Self> {
        let mut table = PostingTable::default();
        let mut declared = None;
        for (i, line) in text.lines().enumerate() {
            let lineno = i + 1;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields[0] == "@docs" {
                let n = fields
                    .get(1)
                    .and_then(|n| n.parse().ok())
                    .ok_or_else(|| Error::parse(lineno, "@docs needs a count"))?;
                declared = Some(n);
                continue;
            }
            let [term, rc, entries] = fields[..] else {
                return Err(Error::parse(lineno, "expected term, rc and entries"));
            };
            let mut parsed = Vec::new();
            for item in entries.split(',') {
                let pair = item
                    .split_once(':')
                    .and_then(|(d, tf)| Some((d.trim().parse::<u32>().ok()?, tf.trim().parse::<u32>().ok()?)));
                match pair {
                    Some((d, tf)) if d > 0 && tf > 0 => parsed.push((d, tf)),
                    _ => return Err(Error::parse(lineno, format!("bad entry `{item}`"))),
                }
            }
            table.rows.push(TableRow {
                term: term.to_owned(),
                rc: if rc.is_empty() { Rc::Unknown } else { Rc::concept(rc) },
                entries: parsed,
            });
        }
        let max_doc = table
            .rows
            .iter()
            .flat_map(|r| r.entries.iter().map(|&(d, _)| d))
            .max()
            .unwrap_or(0);
        table.n_docs = match declared {
            Some(n) if n < max_doc => {
                return Err(Error::InvariantViolation(format!(
                    "@docs {n} is smaller than the largest doc id {max_doc}"
                )))
            }
            Some(n) => n,
            None => max_doc,
        };
        Ok(table)
    }
}

/// `(term, tf)` pairs of one document, grouped by rc.
type Groups<'a> = BTreeMap<&'a Rc, Vec<(&'a str, u32)>>;

/// Emits documents `1..=n_docs`. Each document gets one phrase per rc it
/// holds, made of that rc's terms repeated tf times. When those terms alone
/// do not resolve to the rc, the first anchor (in sorted order) that fixes
/// it is appended: a single-sense ontology term whose sense is the rc node
/// and which the table itself never uses.
pub fn synthesize_fixture(table: &PostingTable, graph: &ConceptGraph) -> Result<Collection> {
    let mut per_doc: BTreeMap<u32, Groups> = BTreeMap::new();
    for row in &table.rows {
        for &(doc, tf) in &row.entries {
            per_doc
                .entry(doc)
                .or_default()
                .entry(&row.rc)
                .or_default()
                .push((&row.term, tf));
        }
    }

    let table_terms: BTreeSet<&str> = table.rows.iter().map(|r| r.term.as_str()).collect();
    let mut anchors: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for term in graph.terms() {
        if table_terms.contains(term) {
            continue;
        }
        if let [only] = graph.senses(term)[..] {
            anchors.entry(only).or_default().push(term);
        }
    }

    let mut documents = Vec::with_capacity(table.n_docs as usize);
    for doc in 1..=table.n_docs {
        let mut phrases = Vec::new();
        for (rc, terms) in per_doc.remove(&doc).unwrap_or_default() {
            let names: Vec<&str> = terms.iter().map(|(t, _)| *t).collect();
            let mut words: Vec<&str> = terms
                .iter()
                .flat_map(|&(t, tf)| std::iter::repeat_n(t, tf as usize))
                .collect();
            if graph.resolve_rc(&names) != *rc {
                let candidates = rc.id().and_then(|id| anchors.get(id)).cloned().unwrap_or_default();
                let anchor = candidates.into_iter().find(|a| {
                    let mut with = names.clone();
                    with.push(a);
                    graph.resolve_rc(&with) == *rc
                });
                match anchor {
                    Some(a) => words.push(a),
                    None => {
                        return Err(Error::Unresolvable {
                            doc,
                            rc: rc.to_string(),
                            terms: names.iter().map(|s| s.to_string()).collect(),
                        })
                    }
                }
            }
            phrases.push(words.join(" "));
        }
        documents.push(Document::new(doc, phrases.join(". ")));
    }
    Collection::new(documents)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::build_index;
    use crate::textpipe::TextPipeline;

    const GRAPH: &str = "\
node\tfruit\tFruit\tconcept
node\tlogo\tLogo\tconcept
node\tapple_fruit\tapple\tinstance
node\tapple_logo\tApple logo\tinstance
edge\tapple_fruit\tis-a\tfruit
edge\tapple_logo\tis-a\tlogo
sense\tapple\tapple_fruit
sense\tapple\tapple_logo
sense\tfruity\tfruit
sense\tbrand\tlogo
";

    #[test]
    fn anchors_disambiguate() {
        let g = ConceptGraph::parse(GRAPH).unwrap();
        let table = PostingTable::parse("@docs\t3\napple\tfruit\t1:2,3:1\napple\tlogo\t2:1\n").unwrap();
        let c = synthesize_fixture(&table, &g).unwrap();
        assert_eq!(c.n_docs(), 3);
        let ix = build_index(&c, &g, &TextPipeline::default());
        assert_eq!(
            ix.semantic("apple", &Rc::concept("fruit")).unwrap().entries(),
            &[(1, 2), (3, 1)]
        );
        assert_eq!(ix.semantic("apple", &Rc::concept("logo")).unwrap().entries(), &[(2, 1)]);
    }

    #[test]
    fn empty_table() {
        let table = PostingTable::parse("").unwrap();
        let c = synthesize_fixture(&table, &ConceptGraph::new()).unwrap();
        assert_eq!(c.n_docs(), 0);
    }

    #[test]
    fn infeasible_without_anchor() {
        let g = ConceptGraph::parse(GRAPH).unwrap();
        // "brand" is in the table, so it cannot serve as an anchor for logo
        let table = PostingTable::parse("apple\tlogo\t1:1\nbrand\tfruit\t1:1\n").unwrap();
        let err = synthesize_fixture(&table, &g).unwrap_err();
        assert!(matches!(err, Error::Unresolvable { doc: 1, .. }));
    }

    #[test]
    fn unknown_rc_rows() {
        let g = ConceptGraph::parse(GRAPH).unwrap();
        let table = PostingTable::parse("zebra\t\t1:3\n").unwrap();
        let c = synthesize_fixture(&table, &g).unwrap();
        let ix = build_index(&c, &g, &TextPipeline::default());
        assert_eq!(ix.semantic("zebra", &Rc::Unknown).unwrap().entries(), &[(1, 3)]);
    }

    #[test]
    fn declared_size_too_small() {
        assert!(PostingTable::parse("@docs\t1\na\t\t2:1\n").is_err());
        assert!(matches!(
            PostingTable::parse("a\t\t2\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }
}
