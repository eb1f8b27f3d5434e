//! Simple undirected graphs with sorted adjacency lists, together with the
//! predicates, edge-list text format, and DOT export shared by every other
//! module.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An immutable simple undirected graph on vertices `0..n`.
///
/// Adjacency lists are sorted, symmetric, irreflexive and duplicate-free;
/// the constructor rejects anything else.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut sets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !sets[u].insert(v) {
                return Err(Error::DuplicateEdge(u, v));
            }
            sets[v].insert(u);
        }
        Ok(Graph {
            adj: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    /// The complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).expect("complete graph is simple")
    }

    /// The path on `n` vertices.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::new(n, &edges).expect("path is simple")
    }

    /// The cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((n - 1, 0));
        Graph::new(n, &edges).expect("cycle is simple")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|a| a.len()).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(|a| a.len()).min().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// True iff every vertex has degree exactly 3.
    pub fn is_cubic(&self) -> bool {
        self.is_regular(3)
    }

    pub fn is_regular(&self, d: usize) -> bool {
        !self.adj.is_empty() && self.adj.iter().all(|a| a.len() == d)
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        n > 0 && self.adj.iter().all(|a| a.len() == n - 1)
    }

    /// True iff no vertex has three pairwise non-adjacent neighbors.
    pub fn is_claw_free(&self) -> bool {
        for v in 0..self.n() {
            let nb = &self.adj[v];
            for i in 0..nb.len() {
                for j in (i + 1)..nb.len() {
                    if self.has_edge(nb[i], nb[j]) {
                        continue;
                    }
                    for &c in &nb[(j + 1)..] {
                        if !self.has_edge(nb[i], c) && !self.has_edge(nb[j], c) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Maximal connected vertex sets, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            out.push(VertexSet::from_unsorted(comp));
        }
        out
    }

    /// Removes the vertices in `s`, returning the remaining graph together
    /// with the old-to-new index map (`None` for deleted vertices).
    pub fn delete_vertices(&self, s: &VertexSet) -> Result<(Graph, Vec<Option<usize>>)> {
        s.validate_for(self)?;
        let n = self.n();
        let mut map: Vec<Option<usize>> = vec![None; n];
        let mut next = 0usize;
        for v in 0..n {
            if !s.contains(v) {
                map[v] = Some(next);
                next += 1;
            }
        }
        let mut edges = Vec::new();
        for (u, v) in self.edges() {
            if let (Some(a), Some(b)) = (map[u], map[v]) {
                edges.push((a, b));
            }
        }
        Ok((Graph::new(next, &edges)?, map))
    }

    /// All triangles (vertex triples inducing `K_3`), each sorted, in
    /// lexicographic order.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            let nb = &self.adj[u];
            for i in 0..nb.len() {
                let v = nb[i];
                if v <= u {
                    continue;
                }
                for &w in &nb[(i + 1)..] {
                    if w > v && self.has_edge(v, w) {
                        out.push([u, v, w]);
                    }
                }
            }
        }
        out
    }

    /// Parses the whitespace-separated edge-list format: one `u v` pair per
    /// line, `#` comments and blank lines ignored, vertices 0-based. The
    /// vertex count is one plus the largest index seen.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut max_index: Option<usize> = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let mut tokens = line.split_whitespace();
            let Some(first) = tokens.next() else {
                continue;
            };
            let second = tokens.next().ok_or_else(|| Error::EdgeListFormat {
                line: line_no,
                msg: "expected two vertex indices".into(),
            })?;
            if let Some(extra) = tokens.next() {
                return Err(Error::EdgeListFormat {
                    line: line_no,
                    msg: format!("unexpected trailing token {extra:?}"),
                });
            }
            let parse = |tok: &str| -> Result<usize> {
                tok.parse().map_err(|_| Error::EdgeListFormat {
                    line: line_no,
                    msg: format!("malformed vertex index {tok:?}"),
                })
            };
            let u = parse(first)?;
            let v = parse(second)?;
            if u == v {
                return Err(Error::EdgeListFormat {
                    line: line_no,
                    msg: format!("self-loop at vertex {u}"),
                });
            }
            if edges.contains(&(u.min(v), u.max(v))) {
                return Err(Error::EdgeListFormat {
                    line: line_no,
                    msg: format!("duplicate edge {u} {v}"),
                });
            }
            edges.push((u.min(v), u.max(v)));
            max_index = Some(max_index.map_or(u.max(v), |m| m.max(u.max(v))));
        }
        let n = max_index.map_or(0, |m| m + 1);
        Graph::new(n, &edges)
    }

    /// Serializes to the edge-list format; `parse_edge_list` round-trips it.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Renders the graph as DOT text, filling the highlighted vertices.
    pub fn to_dot(&self, highlight: &VertexSet) -> String {
        let mut out = String::from("graph G {\n  node [shape=circle];\n");
        for v in 0..self.n() {
            if highlight.contains(v) {
                out.push_str(&format!("  {v} [style=filled, fillcolor=gray];\n"));
            } else {
                out.push_str(&format!("  {v};\n"));
            }
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("  {u} -- {v};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// A sorted, duplicate-free set of vertex indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet {
    members: Vec<usize>,
}

impl VertexSet {
    pub fn new() -> Self {
        VertexSet::default()
    }

    pub fn from_unsorted(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSet { members }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet { members: vec![v] }
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        VertexSet {
            members: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn insert(&mut self, v: usize) -> bool {
        match self.members.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.members.insert(pos, v);
                true
            }
        }
    }

    pub fn remove(&mut self, v: usize) -> bool {
        match self.members.binary_search(&v) {
            Ok(pos) => {
                self.members.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.members
    }

    pub fn smallest(&self) -> Option<usize> {
        self.members.first().copied()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut v = self.members.clone();
        v.extend_from_slice(&other.members);
        VertexSet::from_unsorted(v)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            members: self.iter().filter(|&v| other.contains(v)).collect(),
        }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            members: self.iter().filter(|&v| !other.contains(v)).collect(),
        }
    }

    /// Complement within `{0, .., n-1}`.
    pub fn complement(&self, n: usize) -> VertexSet {
        VertexSet {
            members: (0..n).filter(|&v| !self.contains(v)).collect(),
        }
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    /// Checks that every member is a vertex of `g`.
    pub fn validate_for(&self, g: &Graph) -> Result<()> {
        match self.members.last() {
            Some(&v) if v >= g.n() => Err(Error::VertexOutOfRange {
                vertex: v,
                n: g.n(),
            }),
            _ => Ok(()),
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        VertexSet::from_unsorted(iter.into_iter().collect())
    }
}

impl From<&[usize]> for VertexSet {
    fn from(slice: &[usize]) -> Self {
        VertexSet::from_unsorted(slice.to_vec())
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}
