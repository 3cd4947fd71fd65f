use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Concept,
    Instance,
}

impl NodeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NodeKind::Concept => "concept",
            NodeKind::Instance => "instance",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub id: String,
    pub label: String,
    pub kind: NodeKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub source: String,
    pub label: String,
    pub target: String,
}

/// Reference concept of a phrase or query.
///
/// `Unknown` orders before every concept, which keeps persisted indexes
/// sorted the same way the in-memory maps are.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rc {
    Unknown,
    Concept(String),
}

impl Rc {
    pub fn concept(id: impl Into<String>) -> Self {
        Rc::Concept(id.into())
    }

    pub fn id(&self) -> Option<&str> {
        match self {
            Rc::Unknown => None,
            Rc::Concept(id) => Some(id),
        }
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Rc::Unknown)
    }
}

impl fmt::Display for Rc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rc::Unknown => f.write_str("UNKNOWN"),
            Rc::Concept(id) => f.write_str(id),
        }
    }
}

/// Labeled multigraph of concepts and instances plus the term-to-sense table.
#[derive(Debug, Clone, Default)]
pub struct ConceptGraph {
    pub(super) nodes: Vec<Node>,
    pub(super) index: HashMap<String, usize>,
    pub(super) edges: Vec<(usize, String, usize)>,
    /// Undirected neighbours, sorted and deduplicated.
    pub(super) adjacency: Vec<Vec<usize>>,
    /// Outgoing neighbours, sorted by target id.
    pub(super) outgoing: Vec<Vec<usize>>,
    pub(super) senses: BTreeMap<String, Vec<usize>>,
}

impl ConceptGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, id: impl Into<String>, label: impl Into<String>, kind: NodeKind) -> Result<()> {
        let id = id.into();
        let label = label.into();
        if id.is_empty() || label.is_empty() {
            return Err(Error::InvariantViolation("node id and label must be non-empty".into()));
        }
        if self.index.contains_key(&id) {
            return Err(Error::InvariantViolation(format!("duplicate node `{id}`")));
        }
        self.index.insert(id.clone(), self.nodes.len());
        self.nodes.push(Node { id, label, kind });
        self.adjacency.push(Vec::new());
        self.outgoing.push(Vec::new());
        Ok(())
    }

    pub fn add_edge(&mut self, source: &str, label: impl Into<String>, target: &str) -> Result<()> {
        let s = self.require(source, 0)?;
        let t = self.require(target, 0)?;
        self.edges.push((s, label.into(), t));
        insert_sorted(&mut self.adjacency[s], t);
        insert_sorted(&mut self.adjacency[t], s);
        let nodes = &self.nodes;
        let out = &mut self.outgoing[s];
        if !out.contains(&t) {
            out.push(t);
            out.sort_by(|a, b| nodes[*a].id.cmp(&nodes[*b].id));
        }
        Ok(())
    }

    pub fn add_sense(&mut self, term: impl Into<String>, node: &str) -> Result<()> {
        let n = self.require(node, 0)?;
        let senses = self.senses.entry(term.into()).or_default();
        if !senses.contains(&n) {
            senses.push(n);
        }
        Ok(())
    }

    fn require(&self, id: &str, line: usize) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::DanglingReference {
            line,
            id: id.to_owned(),
        })
    }

    pub(super) fn idx(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn node(&self, id: &str) -> Option<&Node> {
        self.idx(id).map(|i| &self.nodes[i])
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().map(|(s, l, t)| Edge {
            source: self.nodes[*s].id.clone(),
            label: l.clone(),
            target: self.nodes[*t].id.clone(),
        })
    }

    pub fn senses(&self, term: &str) -> Vec<&str> {
        self.senses
            .get(term)
            .map(|v| v.iter().map(|&i| self.nodes[i].id.as_str()).collect())
            .unwrap_or_default()
    }

    pub fn has_senses(&self, term: &str) -> bool {
        self.senses.contains_key(term)
    }

    pub fn terms(&self) -> impl Iterator<Item = &str> {
        self.senses.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Parses the TSV form. Node lines may appear after the edges and senses
    /// that mention them.
    pub fn parse(text: &str) -> Result<Self> {
        let mut g = ConceptGraph::new();
        let mut links: Vec<(usize, Vec<&str>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            if raw.trim().is_empty() || raw.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = raw.split('\t').collect();
            match fields[0] {
                "node" => {
                    if fields.len() != 4 {
                        return Err(Error::parse(line, "node line needs 4 fields"));
                    }
                    let kind = match fields[3] {
                        "concept" => NodeKind::Concept,
                        "instance" => NodeKind::Instance,
                        other => return Err(Error::parse(line, format!("unknown node kind `{other}`"))),
                    };
                    g.add_node(fields[1], fields[2], kind)
                        .map_err(|e| Error::parse(line, e.to_string()))?;
                }
                "edge" if fields.len() == 4 => links.push((line, fields)),
                "sense" if fields.len() == 3 => links.push((line, fields)),
                "edge" | "sense" => return Err(Error::parse(line, format!("wrong field count for `{}`", fields[0]))),
                other => return Err(Error::parse(line, format!("unknown record `{other}`"))),
            }
        }
        for (line, f) in links {
            let at_line = |e: Error| match e {
                Error::DanglingReference { id, .. } => Error::DanglingReference { line, id },
                e => e,
            };
            if f[0] == "edge" {
                g.add_edge(f[1], f[2], f[3]).map_err(at_line)?;
            } else {
                if f[1].is_empty() {
                    return Err(Error::parse(line, "empty sense term"));
                }
                g.add_sense(f[1], f[2]).map_err(at_line)?;
            }
        }
        Ok(g)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for n in &self.nodes {
            out.push_str(&format!("node\t{}\t{}\t{}\n", n.id, n.label, n.kind.as_str()));
        }
        for e in self.edges() {
            out.push_str(&format!("edge\t{}\t{}\t{}\n", e.source, e.label, e.target));
        }
        for (term, senses) in &self.senses {
            for &s in senses {
                out.push_str(&format!("sense\t{}\t{}\n", term, self.nodes[s].id));
            }
        }
        out
    }
}

pub fn load_ontology(path: impl AsRef<Path>) -> Result<ConceptGraph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    ConceptGraph::parse(&text)
}

fn insert_sorted(v: &mut Vec<usize>, x: usize) {
    if let Err(pos) = v.binary_search(&x) {
        v.insert(pos, x);
    }
}
