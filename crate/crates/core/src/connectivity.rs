//! Vertex/edge connectivity and the 2-vertex / 3-edge separations used by the
//! join and separation operations.

use std::collections::VecDeque;

use crate::graph::{edge, Edge, Graph};

/// Cut vertices, in increasing order.
pub fn articulation_points(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut time = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        // (vertex, parent, next neighbour index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if *idx < adj[v].len() {
                let w = adj[v][*idx];
                *idx += 1;
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else if w != parent {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if parent != root && low[v] >= disc[parent] {
                        is_cut[parent] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    (0..n).filter(|&v| is_cut[v]).collect()
}

/// `k`-vertex-connectivity for `k` in `1..=3`: at least `k + 1` vertices and
/// no vertex cut of size below `k`. In particular K2 is 1-connected only.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    assert!((1..=3).contains(&k), "k must be 1, 2 or 3");
    if g.n() < k + 1 || !g.is_connected() {
        return false;
    }
    match k {
        1 => true,
        2 => articulation_points(g).is_empty(),
        _ => {
            if !articulation_points(g).is_empty() {
                return false;
            }
            (0..g.n()).all(|v| {
                let (h, _) = g.remove_vertices(&[v]);
                articulation_points(&h).is_empty()
            })
        }
    }
}

fn unit_max_flow(adj: &[Vec<usize>], s: usize, t: usize, cap_limit: usize) -> usize {
    let n = adj.len();
    // residual capacity on directed arcs; each undirected edge gives capacity 1 both ways
    let mut flow: std::collections::HashMap<(usize, usize), i32> = Default::default();
    let mut total = 0;
    while total < cap_limit {
        let mut prev = vec![usize::MAX; n];
        prev[s] = s;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            if u == t {
                break;
            }
            for &w in &adj[u] {
                let f = *flow.get(&(u, w)).unwrap_or(&0);
                if prev[w] == usize::MAX && f < 1 {
                    prev[w] = u;
                    q.push_back(w);
                }
            }
        }
        if prev[t] == usize::MAX {
            break;
        }
        let mut v = t;
        while v != s {
            let u = prev[v];
            *flow.entry((u, v)).or_insert(0) += 1;
            *flow.entry((v, u)).or_insert(0) -= 1;
            v = u;
        }
        total += 1;
    }
    total
}

/// Size of a minimum edge cut; 0 for disconnected graphs or fewer than two vertices.
pub fn edge_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if n < 2 || !g.is_connected() {
        return 0;
    }
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut best = g.min_degree();
    for t in 1..n {
        best = best.min(unit_max_flow(&adj, 0, t, best));
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeparationKind {
    /// Two induced subgraphs sharing exactly two vertices.
    TwoVertex,
    /// Two vertex-disjoint induced subgraphs joined by exactly three edges.
    ThreeEdge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cut {
    Vertices(usize, usize),
    Edges([Edge; 3]),
}

/// A separation of a graph into two sides. For the vertex kind both sides
/// contain the two cut vertices; for the edge kind the sides partition `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub kind: SeparationKind,
    pub side1: Vec<usize>,
    pub side2: Vec<usize>,
    pub cut: Cut,
    /// Vertex kind: neither side induces K4. Edge kind: the cut edges are pairwise disjoint.
    pub nontrivial: bool,
}

impl Separation {
    pub fn parts(&self, g: &Graph) -> (Graph, Graph) {
        (g.induced(&self.side1), g.induced(&self.side2))
    }

    /// Edges of `g` covered by the two induced sides plus the cut edges.
    /// Equals the edge set of `g` for every valid separation.
    pub fn reassembled_edges(&self, g: &Graph) -> Vec<Edge> {
        let mut out = Vec::new();
        for side in [&self.side1, &self.side2] {
            let h = g.induced(side);
            out.extend(h.edges().into_iter().map(|(a, b)| edge(side[a], side[b])));
        }
        if let Cut::Edges(es) = &self.cut {
            out.extend(es.iter().copied());
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

fn is_k4(g: &Graph) -> bool {
    g.n() == 4 && g.m() == 6
}

/// Subsets of `comps[1..]` (non-empty), each yielding (side-2 component indices).
fn side_masks(c: usize) -> impl Iterator<Item = u64> {
    assert!(c <= 40, "too many components to enumerate splits");
    let rest = c - 1;
    (1u64..(1u64 << rest)).map(|m| m << 1)
}

/// All separations of the requested kind, sides ordered so the side holding the
/// smallest private vertex comes first.
pub fn enumerate_separations(g: &Graph, kind: SeparationKind) -> Vec<Separation> {
    match kind {
        SeparationKind::TwoVertex => two_vertex_separations(g),
        SeparationKind::ThreeEdge => three_edge_separations(g),
    }
}

fn two_vertex_separations(g: &Graph) -> Vec<Separation> {
    let n = g.n();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let comps = g.components_avoiding(&[a, b]);
            if comps.len() < 2 {
                continue;
            }
            for mask in side_masks(comps.len()) {
                let mut s1 = vec![a, b];
                let mut s2 = vec![a, b];
                for (i, c) in comps.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        s2.extend(c);
                    } else {
                        s1.extend(c);
                    }
                }
                s1.sort_unstable();
                s2.sort_unstable();
                let nontrivial = !is_k4(&g.induced(&s1)) && !is_k4(&g.induced(&s2));
                out.push(Separation {
                    kind: SeparationKind::TwoVertex,
                    side1: s1,
                    side2: s2,
                    cut: Cut::Vertices(a, b),
                    nontrivial,
                });
            }
        }
    }
    out
}

fn three_edge_separations(g: &Graph) -> Vec<Separation> {
    let edges = g.edges();
    let m = edges.len();
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for l in j + 1..m {
                let cut = [edges[i], edges[j], edges[l]];
                let mut h = g.clone();
                for &(u, v) in &cut {
                    h.remove_edge(u, v);
                }
                let comps = h.components();
                if comps.len() < 2 {
                    continue;
                }
                let mut comp_of = vec![0usize; g.n()];
                for (ci, c) in comps.iter().enumerate() {
                    for &v in c {
                        comp_of[v] = ci;
                    }
                }
                for mask in side_masks(comps.len()) {
                    let side = |v: usize| mask >> comp_of[v] & 1;
                    if !cut.iter().all(|&(u, v)| side(u) != side(v)) {
                        continue;
                    }
                    let mut s1 = Vec::new();
                    let mut s2 = Vec::new();
                    for v in 0..g.n() {
                        if side(v) == 1 {
                            s2.push(v);
                        } else {
                            s1.push(v);
                        }
                    }
                    let mut ends: Vec<usize> = cut.iter().flat_map(|&(u, v)| [u, v]).collect();
                    ends.sort_unstable();
                    ends.dedup();
                    out.push(Separation {
                        kind: SeparationKind::ThreeEdge,
                        side1: s1,
                        side2: s2,
                        cut: Cut::Edges(cut),
                        nontrivial: ends.len() == 6,
                    });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn brute_k_connected(g: &Graph, k: usize) -> bool {
        let n = g.n();
        if n < k + 1 {
            return false;
        }
        // remove every subset of size < k
        let mut subsets: Vec<Vec<usize>> = vec![vec![]];
        if k >= 2 {
            subsets.extend((0..n).map(|v| vec![v]));
        }
        if k >= 3 {
            for a in 0..n {
                for b in a + 1..n {
                    subsets.push(vec![a, b]);
                }
            }
        }
        subsets.iter().all(|s| g.components_avoiding(s).len() == 1)
    }

    #[test]
    fn named_connectivity() {
        assert!(!is_k_connected(&two_k4_at_vertex(), 2));
        assert!(is_k_connected(&b1(), 2));
        assert!(is_k_connected(&path(3), 1));
        assert!(is_k_connected(&complete(2), 1));
        assert!(!is_k_connected(&complete(2), 2));
        assert!(is_k_connected(&complete(4), 3));
        assert!(!is_k_connected(&b1(), 3));
        assert!(is_k_connected(&wheel(5), 3));
    }

    #[test]
    fn k_connectivity_matches_brute_force_on_small_graphs() {
        // every labelled graph on 5 vertices, plus a sample on 7
        for mask in 0u32..(1 << 10) {
            let g = graph_from_mask(5, mask as u64);
            for k in 1..=3 {
                assert_eq!(is_k_connected(&g, k), brute_k_connected(&g, k), "{g:?} k={k}");
            }
        }
        let mut x: u64 = 0x9e37_79b9_7f4a_7c15;
        for _ in 0..400 {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            let g = graph_from_mask(7, x & ((1 << 21) - 1));
            for k in 1..=3 {
                assert_eq!(is_k_connected(&g, k), brute_k_connected(&g, k), "{g:?} k={k}");
            }
        }
    }

    fn graph_from_mask(n: usize, mask: u64) -> Graph {
        let mut g = Graph::empty(n);
        let mut bit = 0;
        for u in 0..n {
            for v in u + 1..n {
                if mask >> bit & 1 == 1 {
                    g.add_edge(u, v);
                }
                bit += 1;
            }
        }
        g
    }

    #[test]
    fn edge_connectivity_examples() {
        assert_eq!(edge_connectivity(&complete(6)), 5);
        assert_eq!(edge_connectivity(&cycle(5)), 2);
        assert_eq!(edge_connectivity(&k5_minus()), 3);
        assert_eq!(edge_connectivity(&Graph::empty(3)), 0);
    }

    #[test]
    fn edge_connectivity_bounded_by_min_degree() {
        for mask in (0u64..(1 << 15)).step_by(37) {
            let g = graph_from_mask(6, mask);
            assert!(edge_connectivity(&g) <= g.min_degree());
        }
    }

    #[test]
    fn b1_has_one_two_vertex_separation() {
        let g = b1();
        let seps = enumerate_separations(&g, SeparationKind::TwoVertex);
        assert_eq!(seps.len(), 1);
        assert_eq!(seps[0].cut, Cut::Vertices(2, 3));
        assert!(!seps[0].nontrivial, "both sides are K4");
    }

    #[test]
    fn k5_minus_has_no_two_vertex_separation() {
        assert!(enumerate_separations(&k5_minus(), SeparationKind::TwoVertex).is_empty());
    }

    #[test]
    fn prism_matching_is_nontrivial_edge_cut() {
        let g = prism();
        let seps = enumerate_separations(&g, SeparationKind::ThreeEdge);
        let matching = seps
            .iter()
            .find(|s| s.cut == Cut::Edges([(0, 3), (1, 4), (2, 5)]))
            .expect("matching cut");
        assert!(matching.nontrivial);
        // degree-3 vertex stars are trivial cuts
        assert!(seps.iter().any(|s| !s.nontrivial));
    }

    #[test]
    fn separations_reassemble() {
        for g in [b1(), b2(), prism(), k4_ring(), two_k4_at_vertex(), wheel(5)] {
            for kind in [SeparationKind::TwoVertex, SeparationKind::ThreeEdge] {
                for s in enumerate_separations(&g, kind) {
                    assert_eq!(s.reassembled_edges(&g), g.edges());
                    match kind {
                        SeparationKind::TwoVertex => {
                            let shared: Vec<_> =
                                s.side1.iter().filter(|v| s.side2.contains(v)).collect();
                            assert_eq!(shared.len(), 2);
                            assert!(s.side1.len() > 2 && s.side2.len() > 2);
                        }
                        SeparationKind::ThreeEdge => {
                            assert_eq!(s.side1.len() + s.side2.len(), g.n());
                        }
                    }
                }
            }
        }
    }
}
