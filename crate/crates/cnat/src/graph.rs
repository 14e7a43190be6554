//! Simple undirected labelled graphs: permutation-graph construction, pruning,
//! induced subgraphs, and enumeration of rooted acyclic orientations.
//!
//! Vertices carry arbitrary `u32` labels (induced subgraphs keep the original
//! labels). Adjacency is stored as one bitmask row per vertex, so adjacency
//! tests are O(1); graphs are capped at 64 vertices, far beyond desk scale.

use std::fmt::Write as _;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has {0} vertices, more than the supported 64")]
    TooManyVertices(usize),
    #[error("edge endpoint {0} is not a vertex")]
    UnknownVertex(u32),
    #[error("loop at vertex {0}")]
    Loop(u32),
    #[error("graph has no vertices")]
    Empty,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex {0} not in graph")]
    NotAVertex(u32),
    #[error("edge ({0}, {1}) already present")]
    EdgeExists(u32, u32),
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(u32, u32),
    #[error("vertex subset is not contained in the graph")]
    NotASubset,
    #[error("bad graph text: {0}")]
    BadFormat(String),
}

/// A finite simple undirected graph with integer vertex labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphData", into = "GraphData")]
pub struct Graph {
    labels: Vec<u32>, // sorted, distinct
    adj: Vec<u64>,    // adjacency row per vertex index
}

/// Serialized form: `{"vertices":[...],"edges":[[u,v],...]}`.
#[derive(Serialize, Deserialize)]
struct GraphData {
    vertices: Vec<u32>,
    edges: Vec<(u32, u32)>,
}

impl TryFrom<GraphData> for Graph {
    type Error = GraphError;
    fn try_from(d: GraphData) -> Result<Self, GraphError> {
        Graph::new(d.vertices, &d.edges)
    }
}

impl From<Graph> for GraphData {
    fn from(g: Graph) -> GraphData {
        GraphData {
            vertices: g.labels.clone(),
            edges: g.edges(),
        }
    }
}

impl Graph {
    /// Builds a graph from vertex labels and unordered edge pairs. Duplicate
    /// vertices and edges are collapsed; loops are rejected.
    pub fn new(mut vertices: Vec<u32>, edges: &[(u32, u32)]) -> Result<Self, GraphError> {
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.len() > 64 {
            return Err(GraphError::TooManyVertices(vertices.len()));
        }
        let mut g = Graph {
            labels: vertices,
            adj: Vec::new(),
        };
        g.adj = vec![0; g.labels.len()];
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::Loop(u));
            }
            let a = g.index(u).ok_or(GraphError::UnknownVertex(u))?;
            let b = g.index(v).ok_or(GraphError::UnknownVertex(v))?;
            g.adj[a] |= 1 << b;
            g.adj[b] |= 1 << a;
        }
        Ok(g)
    }

    /// Vertex set `1..=n`, one edge per inversion of `p`.
    pub fn permutation_graph(p: &Permutation) -> Graph {
        let vertices = (1..=p.len() as u32).collect();
        Graph::new(vertices, &p.inversions()).expect("inversions are valid edges")
    }

    /// The complete graph on labels `1..=n`.
    pub fn complete(n: usize) -> Graph {
        Graph::permutation_graph(&Permutation::decreasing(n))
    }

    /// The cycle `C_k` on labels `1..=k`.
    pub fn cycle(k: usize) -> Graph {
        assert!(k >= 3, "cycles need at least 3 vertices");
        let mut edges: Vec<(u32, u32)> = (1..k as u32).map(|i| (i, i + 1)).collect();
        edges.push((k as u32, 1));
        Graph::new((1..=k as u32).collect(), &edges).unwrap()
    }

    fn index(&self, v: u32) -> Option<usize> {
        self.labels.binary_search(&v).ok()
    }

    pub fn vertices(&self) -> &[u32] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|row| row.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` pairs with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for a in 0..self.labels.len() {
            for b in a + 1..self.labels.len() {
                if self.adj[a] >> b & 1 == 1 {
                    out.push((self.labels[a], self.labels[b]));
                }
            }
        }
        out
    }

    pub fn contains_vertex(&self, v: u32) -> bool {
        self.index(v).is_some()
    }

    pub fn contains_edge(&self, u: u32, v: u32) -> bool {
        match (self.index(u), self.index(v)) {
            (Some(a), Some(b)) => self.adj[a] >> b & 1 == 1,
            _ => false,
        }
    }

    pub fn degree(&self, v: u32) -> Result<u32, GraphError> {
        let a = self.index(v).ok_or(GraphError::NotAVertex(v))?;
        Ok(self.adj[a].count_ones())
    }

    pub fn neighbours(&self, v: u32) -> Result<Vec<u32>, GraphError> {
        let a = self.index(v).ok_or(GraphError::NotAVertex(v))?;
        Ok(self.bits_to_labels(self.adj[a]))
    }

    fn bits_to_labels(&self, mut bits: u64) -> Vec<u32> {
        let mut out = Vec::new();
        while bits != 0 {
            let b = bits.trailing_zeros() as usize;
            out.push(self.labels[b]);
            bits &= bits - 1;
        }
        out
    }

    /// Returns a copy with the absent edge `(u, v)` added.
    pub fn add_edge(&self, u: u32, v: u32) -> Result<Graph, GraphError> {
        if u == v {
            return Err(GraphError::Loop(u));
        }
        let a = self.index(u).ok_or(GraphError::NotAVertex(u))?;
        let b = self.index(v).ok_or(GraphError::NotAVertex(v))?;
        if self.adj[a] >> b & 1 == 1 {
            return Err(GraphError::EdgeExists(u, v));
        }
        let mut g = self.clone();
        g.adj[a] |= 1 << b;
        g.adj[b] |= 1 << a;
        Ok(g)
    }

    /// Replaces the edge `(u, v)` by a length-2 path through a fresh vertex.
    pub fn subdivide_edge(&self, u: u32, v: u32, new_vertex: u32) -> Result<Graph, GraphError> {
        if !self.contains_edge(u, v) {
            return Err(GraphError::NotAnEdge(u, v));
        }
        if self.contains_vertex(new_vertex) {
            return Err(GraphError::EdgeExists(new_vertex, new_vertex));
        }
        let mut vertices = self.labels.clone();
        vertices.push(new_vertex);
        let mut edges: Vec<(u32, u32)> = self
            .edges()
            .into_iter()
            .filter(|&e| e != (u.min(v), u.max(v)))
            .collect();
        edges.push((u, new_vertex));
        edges.push((new_vertex, v));
        Graph::new(vertices, &edges)
    }

    pub fn is_connected(&self) -> Result<bool, GraphError> {
        if self.labels.is_empty() {
            return Err(GraphError::Empty);
        }
        let all: u64 = if self.labels.len() == 64 {
            u64::MAX
        } else {
            (1 << self.labels.len()) - 1
        };
        let mut seen: u64 = 1;
        loop {
            let mut next = seen;
            let mut bits = seen;
            while bits != 0 {
                let a = bits.trailing_zeros() as usize;
                next |= self.adj[a];
                bits &= bits - 1;
            }
            if next == seen {
                break;
            }
            seen = next;
        }
        Ok(seen == all)
    }

    /// Vertex-induced subgraph, keeping the original labels.
    pub fn induced_subgraph(&self, vs: &[u32]) -> Result<Graph, GraphError> {
        for &v in vs {
            if !self.contains_vertex(v) {
                return Err(GraphError::NotASubset);
            }
        }
        let edges: Vec<(u32, u32)> = self
            .edges()
            .into_iter()
            .filter(|&(u, v)| vs.contains(&u) && vs.contains(&v))
            .collect();
        Graph::new(vs.to_vec(), &edges)
    }

    /// Repeatedly deletes degree-1 vertices. A tree prunes to the single
    /// vertex with the lowest label of the input graph.
    pub fn prune(&self) -> Result<Graph, GraphError> {
        if !self.is_connected()? {
            return Err(GraphError::Disconnected);
        }
        if self.edge_count() + 1 == self.vertex_count() {
            // Tree: deletion order would decide the survivor, so fix it.
            return Graph::new(vec![self.labels[0]], &[]);
        }
        let n = self.labels.len();
        let mut alive: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
        loop {
            let mut removed = false;
            for a in 0..n {
                if alive >> a & 1 == 1 && (self.adj[a] & alive).count_ones() == 1 {
                    alive &= !(1 << a);
                    removed = true;
                }
            }
            if !removed {
                break;
            }
        }
        self.induced_subgraph(&self.bits_to_labels(alive))
    }

    /// True iff some vertex subset of size `len` induces the cycle `C_len`.
    pub fn induces_cycle(&self, len: usize) -> bool {
        if len < 3 || len > self.labels.len() {
            return false;
        }
        (0..self.labels.len()).combinations(len).any(|combo| {
            let mask: u64 = combo.iter().map(|&a| 1u64 << a).sum();
            combo
                .iter()
                .all(|&a| (self.adj[a] & mask).count_ones() == 2)
                && connected_within(&self.adj, mask)
        })
    }

    /// All acyclic orientations whose unique target is `s`, in lexicographic
    /// order of edge directions (edges in canonical order, `u -> v` before
    /// `v -> u` for `u < v`).
    pub fn rooted_acyclic_orientations(&self, s: u32) -> Result<Vec<Orientation>, GraphError> {
        let mut out = Vec::new();
        self.rooted_orientation_search(s, &mut |arcs| {
            out.push(Orientation {
                arcs: arcs.to_vec(),
            })
        })?;
        Ok(out)
    }

    /// Number of `s`-rooted acyclic orientations, without retaining them.
    pub fn count_rooted_acyclic_orientations(&self, s: u32) -> Result<u64, GraphError> {
        let mut count = 0u64;
        self.rooted_orientation_search(s, &mut |_| count += 1)?;
        Ok(count)
    }

    fn rooted_orientation_search(
        &self,
        s: u32,
        emit: &mut dyn FnMut(&[(u32, u32)]),
    ) -> Result<(), GraphError> {
        let s_idx = self.index(s).ok_or(GraphError::NotAVertex(s))?;
        if !self.is_connected()? {
            return Err(GraphError::Disconnected);
        }
        let n = self.labels.len();
        let edges: Vec<(usize, usize)> = {
            let mut e = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if self.adj[a] >> b & 1 == 1 {
                        e.push((a, b));
                    }
                }
            }
            e
        };

        // The sink's edges are forced inwards; every other vertex needs at
        // least one outgoing edge, which makes s the unique target.
        let mut arcs: Vec<(u32, u32)> = Vec::with_capacity(edges.len());
        let mut search = Search {
            graph: self,
            s_idx,
            edges: &edges,
            out_deg: vec![0u32; n],
            undecided: (0..n).map(|a| self.adj[a].count_ones()).collect(),
            reach: vec![(0..n).map(|a| 1u64 << a).collect(); edges.len() + 1],
            emit,
        };
        search.descend(0, &mut arcs);
        Ok(())
    }
}

struct Search<'a> {
    graph: &'a Graph,
    s_idx: usize,
    edges: &'a [(usize, usize)],
    out_deg: Vec<u32>,
    undecided: Vec<u32>,
    // reach[d][v] = vertices reachable from v once the first d edges are
    // directed; one row per search depth so backtracking is a no-op.
    reach: Vec<Vec<u64>>,
    emit: &'a mut dyn FnMut(&[(u32, u32)]),
}

impl Search<'_> {
    fn descend(&mut self, next: usize, arcs: &mut Vec<(u32, u32)>) {
        if next == self.edges.len() {
            (self.emit)(arcs);
            return;
        }
        let (a, b) = self.edges[next];
        self.undecided[a] -= 1;
        self.undecided[b] -= 1;
        if a == self.s_idx || b == self.s_idx {
            // Forced into the sink.
            let tail = if a == self.s_idx { b } else { a };
            self.out_deg[tail] += 1;
            let (cur, rest) = self.reach.split_at_mut(next + 1);
            rest[0].copy_from_slice(&cur[next]);
            arcs.push((self.graph.labels[tail], self.graph.labels[self.s_idx]));
            self.descend(next + 1, arcs);
            arcs.pop();
            self.out_deg[tail] -= 1;
        } else {
            for (tail, head) in [(a, b), (b, a)] {
                // A back-reach means a directed cycle; a finished vertex with
                // no outgoing edge would be a second target.
                if self.reach[next][head] >> tail & 1 == 1 {
                    continue;
                }
                if self.undecided[head] == 0 && self.out_deg[head] == 0 {
                    continue;
                }
                self.out_deg[tail] += 1;
                let (cur, rest) = self.reach.split_at_mut(next + 1);
                rest[0].copy_from_slice(&cur[next]);
                let gained = rest[0][head];
                for r in rest[0].iter_mut() {
                    if *r >> tail & 1 == 1 {
                        *r |= gained;
                    }
                }
                arcs.push((self.graph.labels[tail], self.graph.labels[head]));
                self.descend(next + 1, arcs);
                arcs.pop();
                self.out_deg[tail] -= 1;
            }
        }
        self.undecided[a] += 1;
        self.undecided[b] += 1;
    }
}

fn connected_within(adj: &[u64], mask: u64) -> bool {
    let start = mask.trailing_zeros() as usize;
    let mut seen: u64 = 1 << start;
    loop {
        let mut next = seen;
        let mut bits = seen;
        while bits != 0 {
            let a = bits.trailing_zeros() as usize;
            next |= adj[a] & mask;
            bits &= bits - 1;
        }
        if next == seen {
            break;
        }
        seen = next;
    }
    seen == mask
}

/// A direction assignment for every edge of a base graph, stored as
/// `(tail, head)` arcs in the graph's canonical edge order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orientation {
    arcs: Vec<(u32, u32)>,
}

impl Orientation {
    pub fn new(arcs: Vec<(u32, u32)>) -> Self {
        Orientation { arcs }
    }

    pub fn arcs(&self) -> &[(u32, u32)] {
        &self.arcs
    }

    pub fn in_degree(&self, v: u32) -> u32 {
        self.arcs.iter().filter(|&&(_, h)| h == v).count() as u32
    }

    pub fn out_degree(&self, v: u32) -> u32 {
        self.arcs.iter().filter(|&&(t, _)| t == v).count() as u32
    }

    /// Checks that the arcs are exactly the edges of `g`, one direction each.
    pub fn orients(&self, g: &Graph) -> bool {
        if self.arcs.len() != g.edge_count() {
            return false;
        }
        let mut pairs: Vec<(u32, u32)> = self
            .arcs
            .iter()
            .map(|&(t, h)| (t.min(h), t.max(h)))
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        pairs == g.edges()
    }

    pub fn is_acyclic(&self) -> bool {
        // Kahn peeling on the arc multiset.
        let mut arcs = self.arcs.clone();
        loop {
            if arcs.is_empty() {
                return true;
            }
            let before = arcs.len();
            let heads: Vec<u32> = arcs.iter().map(|&(_, h)| h).collect();
            arcs.retain(|&(t, _)| heads.contains(&t));
            if arcs.len() == before {
                return false;
            }
        }
    }

    /// Vertices of `g` with every incident edge incoming.
    pub fn targets(&self, g: &Graph) -> Vec<u32> {
        g.vertices()
            .iter()
            .copied()
            .filter(|&v| {
                let d = g.degree(v).unwrap_or(0);
                d > 0 && self.in_degree(v) == d
            })
            .collect()
    }
}

impl Graph {
    /// Text form: first line `V E`, then one `u v` line per edge. Vertices are
    /// the edge endpoints; an edgeless graph gets vertices `1..=V`.
    pub fn from_text(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| GraphError::BadFormat("missing header".into()))?;
        let mut it = header.split_whitespace();
        let v: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| GraphError::BadFormat("bad vertex count".into()))?;
        let e: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| GraphError::BadFormat("bad edge count".into()))?;
        let mut edges = Vec::with_capacity(e);
        for _ in 0..e {
            let line = lines
                .next()
                .ok_or_else(|| GraphError::BadFormat("missing edge line".into()))?;
            let mut it = line.split_whitespace();
            let u: u32 = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| GraphError::BadFormat(format!("bad edge line `{line}`")))?;
            let w: u32 = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| GraphError::BadFormat(format!("bad edge line `{line}`")))?;
            edges.push((u, w));
        }
        let mut vertices: Vec<u32> = edges.iter().flat_map(|&(u, w)| [u, w]).collect();
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.is_empty() {
            vertices = (1..=v as u32).collect();
        } else if vertices.len() != v {
            return Err(GraphError::BadFormat(format!(
                "header says {v} vertices, edges mention {}",
                vertices.len()
            )));
        }
        Graph::new(vertices, &edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.vertex_count(), self.edge_count());
        for (u, v) in self.edges() {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }
}
