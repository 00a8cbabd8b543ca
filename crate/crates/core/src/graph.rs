//! Finite simple graphs on dense vertex labels `0..n`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// An unordered edge, always stored smaller endpoint first.
pub type Edge = (usize, usize);

/// Normalizes a vertex pair into edge order.
#[inline]
pub fn edge(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("edge {0}-{1} references a vertex outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("duplicate edge {0}-{1}")]
    Parallel(usize, usize),
}

/// A finite simple graph. Vertices are `0..n`; adjacency sets are kept sorted so
/// every iteration order is deterministic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n],
            m: 0,
        }
    }

    /// Builds a graph, rejecting loops, parallel edges and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange(u, v, n));
            }
            if !g.add_edge(u, v) {
                let (a, b) = edge(u, v);
                return Err(GraphError::Parallel(a, b));
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Inserts `uv`; returns false when it was already present.
    ///
    /// Panics on loops or out-of-range vertices.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v, "loop at {u}");
        assert!(u < self.n() && v < self.n(), "vertex out of range");
        if self.adj[u].insert(v) {
            self.adj[v].insert(u);
            self.m += 1;
            true
        } else {
            false
        }
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u < self.n() && self.adj[u].remove(&v) {
            self.adj[v].remove(&u);
            self.m -= 1;
            true
        } else {
            false
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].contains(&v)
    }

    /// Appends a fresh isolated vertex and returns its label.
    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(BTreeSet::new());
        self.adj.len() - 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn neighbor_set(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.iter().any(BTreeSet::is_empty)
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.m);
        for (u, nb) in self.adj.iter().enumerate() {
            out.extend(nb.range(u + 1..).map(|&v| (u, v)));
        }
        out
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(BTreeSet::len).collect();
        d.sort_unstable();
        d
    }

    /// Deletes the listed vertices. Survivors keep their relative order; the
    /// returned map sends each old label to its new label (or `None`).
    pub fn remove_vertices(&self, removed: &[usize]) -> (Graph, Vec<Option<usize>>) {
        let mut map = vec![None; self.n()];
        let mut next = 0;
        for (v, slot) in map.iter_mut().enumerate() {
            if !removed.contains(&v) {
                *slot = Some(next);
                next += 1;
            }
        }
        let mut g = Graph::empty(next);
        for (u, v) in self.edges() {
            if let (Some(a), Some(b)) = (map[u], map[v]) {
                g.add_edge(a, b);
            }
        }
        (g, map)
    }

    /// Induced subgraph on `verts`; new label `i` is `verts[i]`.
    pub fn induced(&self, verts: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in verts.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = Graph::empty(verts.len());
        for (i, &v) in verts.iter().enumerate() {
            for w in self.neighbors(v) {
                let j = pos[w];
                if j != usize::MAX && i < j {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Subgraph spanned by an edge set: only endpoints of `edges` are kept.
    pub fn edge_induced(edges: &[Edge]) -> Graph {
        let mut verts: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        verts.sort_unstable();
        verts.dedup();
        let mut g = Graph::empty(verts.len());
        for &(u, v) in edges {
            let a = verts.binary_search(&u).unwrap();
            let b = verts.binary_search(&v).unwrap();
            g.add_edge(a, b);
        }
        g
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n());
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_avoiding(&[])
    }

    /// Components of the graph with `blocked` vertices deleted (labels unchanged).
    pub fn components_avoiding(&self, blocked: &[usize]) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        for &b in blocked {
            seen[b] = true;
        }
        let mut comps = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// A stable 64-bit fingerprint of the labelled graph (FNV-1a over the
    /// vertex count and sorted edge list).
    pub fn fingerprint(&self) -> u64 {
        const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
        const PRIME: u64 = 0x0000_0100_0000_01b3;
        let mut h = OFFSET;
        let mut feed = |x: u64| {
            for b in x.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(PRIME);
            }
        };
        feed(self.n() as u64);
        for (u, v) in self.edges() {
            feed(u as u64);
            feed(v as u64);
        }
        h
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

/// Small named graphs used throughout the toolkit and its tests.
pub mod named {
    use super::Graph;

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// K5 minus the edge 2-4.
    pub fn k5_minus() -> Graph {
        let mut g = complete(5);
        g.remove_edge(2, 4);
        g
    }

    /// Two copies of K4 glued along the edge 2-3.
    pub fn b1() -> Graph {
        Graph::from_edges(
            6,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (2, 4),
                (2, 5),
                (3, 4),
                (3, 5),
                (4, 5),
            ],
        )
        .unwrap()
    }

    /// Two copies of K4 sharing vertex 2, plus the edge 3-5.
    pub fn b2() -> Graph {
        Graph::from_edges(
            7,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (2, 4),
                (2, 5),
                (2, 6),
                (4, 5),
                (4, 6),
                (5, 6),
                (3, 5),
            ],
        )
        .unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for i in 1..n {
            g.add_edge(i - 1, i);
        }
        g
    }

    /// Wheel with `rim` rim vertices `0..rim` and hub `rim`.
    pub fn wheel(rim: usize) -> Graph {
        let mut g = cycle(rim);
        let hub = g.add_vertex();
        for i in 0..rim {
            g.add_edge(i, hub);
        }
        g
    }

    /// Parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut g = Graph::empty(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Triangles 0-1-2 and 3-4-5 joined by the matching 0-3, 1-4, 2-5.
    pub fn prism() -> Graph {
        Graph::from_edges(
            6,
            [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap()
    }

    /// Two triangles sharing vertex 0.
    pub fn bowtie() -> Graph {
        Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).unwrap()
    }

    /// Two copies of K4 sharing vertex 3.
    pub fn two_k4_at_vertex() -> Graph {
        let mut g = complete(4);
        for _ in 0..3 {
            g.add_vertex();
        }
        for (u, v) in [(3, 4), (3, 5), (3, 6), (4, 5), (4, 6), (5, 6)] {
            g.add_edge(u, v);
        }
        g
    }

    /// Ring of four K4's, consecutive ones sharing a vertex
    /// (the 12-vertex starting graph of the worked reduction sequence).
    /// Vertices a..l are 0..11; the shared vertices are b=1, d=3, e=4, g=6.
    pub fn k4_ring() -> Graph {
        let quads = [[0, 1, 2, 3], [4, 5, 6, 7], [3, 6, 8, 9], [1, 4, 10, 11]];
        let mut g = Graph::empty(12);
        for q in quads {
            for i in 0..4 {
                for j in i + 1..4 {
                    g.add_edge(q[i], q[j]);
                }
            }
        }
        g
    }
}
