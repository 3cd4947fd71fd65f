use std::collections::{BTreeSet, VecDeque};

use super::graph::{ConceptGraph, NodeKind, Rc};

/// Cost of one candidate concept during resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateCost {
    pub concept: String,
    pub total: u32,
    pub max: u32,
    /// Per resolved term, in the order of [`Resolution::terms`].
    pub per_term: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    pub rc: Rc,
    /// Distinct input terms that have at least one sense, sorted.
    pub terms: Vec<String>,
    /// Reachable candidates ordered best first. Empty when the single-sense
    /// shortcut applied.
    pub candidates: Vec<CandidateCost>,
}

impl ConceptGraph {
    /// Unit-cost BFS over edges taken in either direction.
    pub(crate) fn distances_from(&self, start: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.nodes.len()];
        dist[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap_or(0) + 1;
            for &v in &self.adjacency[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Shortest undirected path length. `None` when unreachable or when
    /// either id is not in the graph.
    pub fn hop_distance(&self, a: &str, b: &str) -> Option<u32> {
        let (a, b) = (self.idx(a)?, self.idx(b)?);
        self.bounded_distance(a, b, u32::MAX)
    }

    fn bounded_distance(&self, a: usize, b: usize, limit: u32) -> Option<u32> {
        if a == b {
            return Some(0);
        }
        let mut dist = vec![u32::MAX; self.nodes.len()];
        dist[a] = 0;
        let mut queue = VecDeque::from([a]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u] + 1;
            if d > limit {
                break;
            }
            for &v in &self.adjacency[u] {
                if dist[v] == u32::MAX {
                    if v == b {
                        return Some(d);
                    }
                    dist[v] = d;
                    queue.push_back(v);
                }
            }
        }
        None
    }

    /// Closest concept along outgoing edges, ties to the smaller id.
    /// A concept is its own ancestor.
    pub fn concept_ancestor(&self, id: &str) -> Option<&str> {
        let start = self.idx(id)?;
        if self.nodes[start].kind == NodeKind::Concept {
            return Some(&self.nodes[start].id);
        }
        let mut seen = vec![false; self.nodes.len()];
        seen[start] = true;
        let mut frontier = vec![start];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &u in &frontier {
                for &v in &self.outgoing[u] {
                    if !seen[v] {
                        seen[v] = true;
                        next.push(v);
                    }
                }
            }
            let best = next
                .iter()
                .filter(|&&v| self.nodes[v].kind == NodeKind::Concept)
                .map(|&v| self.nodes[v].id.as_str())
                .min();
            if best.is_some() {
                return best;
            }
            frontier = next;
        }
        None
    }

    pub fn resolve_rc<S: AsRef<str>>(&self, terms: &[S]) -> Rc {
        self.resolve(terms).rc
    }

    /// Picks the concept minimizing the summed hop distance to the terms'
    /// nearest senses. Ties go to the smaller worst-case distance, then the
    /// smaller node id. Terms without senses are ignored.
    pub fn resolve<S: AsRef<str>>(&self, terms: &[S]) -> Resolution {
        let terms: Vec<String> = terms
            .iter()
            .map(AsRef::as_ref)
            .filter(|t| self.senses.contains_key(*t))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .map(str::to_owned)
            .collect();
        let mut res = Resolution {
            rc: Rc::Unknown,
            terms,
            candidates: Vec::new(),
        };
        if res.terms.is_empty() {
            return res;
        }
        if let [only] = res.terms.as_slice() {
            if let [sense] = self.senses[only].as_slice() {
                if let Some(anc) = self.concept_ancestor(&self.nodes[*sense].id) {
                    res.rc = Rc::concept(anc);
                    return res;
                }
            }
        }

        // For each term, the min distance from any of its senses to every node.
        let per_term: Vec<Vec<Option<u32>>> = res
            .terms
            .iter()
            .map(|t| {
                let mut best: Vec<Option<u32>> = vec![None; self.nodes.len()];
                for &s in &self.senses[t] {
                    for (b, d) in best.iter_mut().zip(self.distances_from(s)) {
                        *b = match (*b, d) {
                            (Some(x), Some(y)) => Some(x.min(y)),
                            (x, y) => x.or(y),
                        };
                    }
                }
                best
            })
            .collect();

        for (c, node) in self.nodes.iter().enumerate() {
            if node.kind != NodeKind::Concept {
                continue;
            }
            let dists: Option<Vec<u32>> = per_term.iter().map(|d| d[c]).collect();
            if let Some(dists) = dists {
                res.candidates.push(CandidateCost {
                    concept: node.id.clone(),
                    total: dists.iter().sum(),
                    max: dists.iter().copied().max().unwrap_or(0),
                    per_term: dists,
                });
            }
        }
        res.candidates
            .sort_by(|a, b| (a.total, a.max, &a.concept).cmp(&(b.total, b.max, &b.concept)));
        if let Some(best) = res.candidates.first() {
            res.rc = Rc::concept(best.concept.clone());
        }
        res
    }

    /// Both concepts known and within `hops` of each other.
    pub fn related(&self, a: &Rc, b: &Rc, hops: u32) -> bool {
        match (a.id().and_then(|x| self.idx(x)), b.id().and_then(|x| self.idx(x))) {
            (Some(a), Some(b)) => self.bounded_distance(a, b, hops).is_some(),
            _ => false,
        }
    }
}
