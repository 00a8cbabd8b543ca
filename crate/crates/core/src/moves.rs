//! Construction and reduction moves on graphs, joins and separations, and the
//! reduction engine that takes an M(2,2)-connected graph down to K5⁻ or B1.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

use crate::connectivity::{enumerate_separations, Cut, SeparationKind};
use crate::graph::{edge, named, Edge, Graph};
use crate::iso::{find_isomorphism, is_isomorphic};
use crate::sparsity::is_m22_connected;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("{0}-{1} is not an edge")]
    MissingEdge(usize, usize),
    #[error("{0}-{1} is already an edge")]
    ExistingEdge(usize, usize),
    #[error("vertex {0} has degree {1}, not 3")]
    NotANode(usize, usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("graph is not M(2,2)-connected")]
    NotM22Connected,
    #[error("inconsistent gluing: {0}")]
    Gluing(String),
}

/// One local move. Vertex arguments refer to the graph the move is applied to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Move {
    EdgeAddition { u: usize, v: usize },
    EdgeDeletion { u: usize, v: usize },
    /// Delete `xy`, add a new vertex joined to `x`, `y`, `z`.
    OneExtension { x: usize, y: usize, z: usize },
    /// Delete the degree-3 vertex `v`, add `xy` between two of its neighbours.
    OneReduction { v: usize, x: usize, y: usize },
    /// Delete `v1v2`, add adjacent new vertices both joined to `v1` and `v2`.
    K4Extension { v1: usize, v2: usize },
    /// Delete adjacent degree-3 vertices with common neighbours `v1, v2`, add `v1v2`.
    K4Reduction { u1: usize, u2: usize },
    /// Generalised vertex split: `v` keeps the neighbours in `n1` and gains `x`;
    /// a new vertex takes the remaining neighbours; the two are joined.
    VertexSplit { v: usize, x: usize, n1: Vec<usize> },
    /// Contract `ab` into `a` and drop the resulting edge to `w` (one copy of it
    /// when `w` was a common neighbour).
    EdgeReduction { a: usize, b: usize, w: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    EdgeAddition,
    EdgeDeletion,
    OneExtension,
    OneReduction,
    K4Extension,
    K4Reduction,
    VertexSplit,
    EdgeReduction,
}

impl MoveKind {
    pub const ALL: [MoveKind; 8] = [
        MoveKind::EdgeAddition,
        MoveKind::EdgeDeletion,
        MoveKind::OneExtension,
        MoveKind::OneReduction,
        MoveKind::K4Extension,
        MoveKind::K4Reduction,
        MoveKind::VertexSplit,
        MoveKind::EdgeReduction,
    ];

    /// Keyword used in move scripts.
    pub fn keyword(self) -> &'static str {
        match self {
            MoveKind::EdgeAddition => "edge-addition",
            MoveKind::EdgeDeletion => "edge-deletion",
            MoveKind::OneExtension => "1-extension",
            MoveKind::OneReduction => "1-reduction",
            MoveKind::K4Extension => "k4-extension",
            MoveKind::K4Reduction => "k4-reduction",
            MoveKind::VertexSplit => "vertex-split",
            MoveKind::EdgeReduction => "edge-reduction",
        }
    }

    pub fn from_keyword(s: &str) -> Option<MoveKind> {
        MoveKind::ALL.into_iter().find(|k| k.keyword() == s)
    }

    pub fn is_reduction(self) -> bool {
        matches!(
            self,
            MoveKind::EdgeDeletion | MoveKind::OneReduction | MoveKind::K4Reduction | MoveKind::EdgeReduction
        )
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::EdgeAddition { .. } => MoveKind::EdgeAddition,
            Move::EdgeDeletion { .. } => MoveKind::EdgeDeletion,
            Move::OneExtension { .. } => MoveKind::OneExtension,
            Move::OneReduction { .. } => MoveKind::OneReduction,
            Move::K4Extension { .. } => MoveKind::K4Extension,
            Move::K4Reduction { .. } => MoveKind::K4Reduction,
            Move::VertexSplit { .. } => MoveKind::VertexSplit,
            Move::EdgeReduction { .. } => MoveKind::EdgeReduction,
        }
    }

    /// Integer parameters in script order.
    pub fn params(&self) -> Vec<usize> {
        match self {
            Move::EdgeAddition { u, v } | Move::EdgeDeletion { u, v } => vec![*u, *v],
            Move::OneExtension { x, y, z } => vec![*x, *y, *z],
            Move::OneReduction { v, x, y } => vec![*v, *x, *y],
            Move::K4Extension { v1, v2 } => vec![*v1, *v2],
            Move::K4Reduction { u1, u2 } => vec![*u1, *u2],
            Move::VertexSplit { v, x, n1 } => {
                let mut p = vec![*v, *x];
                p.extend(n1);
                p
            }
            Move::EdgeReduction { a, b, w } => vec![*a, *b, *w],
        }
    }

    /// Inverse of [`Move::params`].
    pub fn from_params(kind: MoveKind, p: &[usize]) -> Option<Move> {
        let exact = |k: usize| p.len() == k;
        Some(match kind {
            MoveKind::EdgeAddition if exact(2) => Move::EdgeAddition { u: p[0], v: p[1] },
            MoveKind::EdgeDeletion if exact(2) => Move::EdgeDeletion { u: p[0], v: p[1] },
            MoveKind::OneExtension if exact(3) => Move::OneExtension { x: p[0], y: p[1], z: p[2] },
            MoveKind::OneReduction if exact(3) => Move::OneReduction { v: p[0], x: p[1], y: p[2] },
            MoveKind::K4Extension if exact(2) => Move::K4Extension { v1: p[0], v2: p[1] },
            MoveKind::K4Reduction if exact(2) => Move::K4Reduction { u1: p[0], u2: p[1] },
            MoveKind::VertexSplit if p.len() >= 2 => Move::VertexSplit { v: p[0], x: p[1], n1: p[2..].to_vec() },
            MoveKind::EdgeReduction if exact(3) => Move::EdgeReduction { a: p[0], b: p[1], w: p[2] },
            _ => return None,
        })
    }

    /// The same move with every vertex argument renamed by `f`.
    pub fn map_vertices(&self, f: impl Fn(usize) -> usize) -> Move {
        let mut params: Vec<usize> = self.params().into_iter().map(f).collect();
        if let Move::VertexSplit { .. } = self {
            params[2..].sort_unstable();
        }
        Move::from_params(self.kind(), &params).expect("same arity")
    }

    /// Change in (vertex count, edge count).
    pub fn size_delta(&self) -> (isize, isize) {
        match self.kind() {
            MoveKind::EdgeAddition => (0, 1),
            MoveKind::EdgeDeletion => (0, -1),
            MoveKind::OneExtension => (1, 2),
            MoveKind::OneReduction => (-1, -2),
            MoveKind::K4Extension => (2, 4),
            MoveKind::K4Reduction => (-2, -4),
            MoveKind::VertexSplit => (1, 2),
            MoveKind::EdgeReduction => (-1, -2),
        }
    }

    /// Checks the structural preconditions of the move on `g`.
    pub fn check(&self, g: &Graph) -> Result<(), MoveError> {
        let n = g.n();
        if let Some(&bad) = self.params().iter().find(|&&x| x >= n) {
            return Err(MoveError::VertexOutOfRange(bad));
        }
        let need_edge = |u: usize, v: usize| {
            if u != v && g.has_edge(u, v) {
                Ok(())
            } else {
                Err(MoveError::MissingEdge(u, v))
            }
        };
        let need_node = |v: usize| {
            if g.degree(v) == 3 {
                Ok(())
            } else {
                Err(MoveError::NotANode(v, g.degree(v)))
            }
        };
        let fail = |s: &str| Err(MoveError::Precondition(s.to_string()));
        match self {
            Move::EdgeAddition { u, v } => {
                if u == v {
                    return fail("edge addition needs distinct endpoints");
                }
                if g.has_edge(*u, *v) {
                    return Err(MoveError::ExistingEdge(*u, *v));
                }
            }
            Move::EdgeDeletion { u, v } => need_edge(*u, *v)?,
            Move::OneExtension { x, y, z } => {
                need_edge(*x, *y)?;
                if z == x || z == y {
                    return fail("1-extension needs z outside {x, y}");
                }
            }
            Move::OneReduction { v, x, y } => {
                need_node(*v)?;
                need_edge(*v, *x)?;
                need_edge(*v, *y)?;
                if x == y {
                    return fail("1-reduction needs two distinct neighbours");
                }
                if g.has_edge(*x, *y) {
                    return Err(MoveError::ExistingEdge(*x, *y));
                }
            }
            Move::K4Extension { v1, v2 } => need_edge(*v1, *v2)?,
            Move::K4Reduction { u1, u2 } => {
                need_edge(*u1, *u2)?;
                need_node(*u1)?;
                need_node(*u2)?;
                let common: Vec<usize> = g.neighbor_set(*u1).intersection(g.neighbor_set(*u2)).copied().collect();
                if common.len() != 2 {
                    return fail("K4⁻-reduction needs exactly two common neighbours");
                }
                if g.has_edge(common[0], common[1]) {
                    return Err(MoveError::ExistingEdge(common[0], common[1]));
                }
            }
            Move::VertexSplit { v, x, n1 } => {
                let set: BTreeSet<usize> = n1.iter().copied().collect();
                if set.len() != n1.len() {
                    return fail("vertex split neighbour list has repeats");
                }
                if let Some(&w) = n1.iter().find(|&&w| !g.has_edge(*v, w)) {
                    return Err(MoveError::MissingEdge(*v, w));
                }
                if x == v || set.contains(x) {
                    return fail("vertex split needs x outside N1 and distinct from v");
                }
            }
            Move::EdgeReduction { a, b, w } => {
                need_edge(*a, *b)?;
                if w == a || w == b || !(g.has_edge(*a, *w) || g.has_edge(*b, *w)) {
                    return fail("edge reduction needs w adjacent to a or b");
                }
                let common: Vec<usize> = g.neighbor_set(*a).intersection(g.neighbor_set(*b)).copied().collect();
                if !(common.is_empty() || common == [*w]) {
                    return fail("edge reduction needs common neighbourhood empty or {w}");
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind())?;
        for p in self.params() {
            write!(f, " {p}")?;
        }
        Ok(())
    }
}

/// Result of a move together with the vertex relabelling it induced
/// (`relabel[old] = new`, `None` for deleted vertices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Applied {
    pub graph: Graph,
    pub relabel: Vec<Option<usize>>,
}

pub fn apply(g: &Graph, m: &Move) -> Result<Graph, MoveError> {
    apply_mapped(g, m).map(|a| a.graph)
}

/// Applies `m`. Added vertices get the next free labels; deleting vertices
/// shifts higher labels down.
pub fn apply_mapped(g: &Graph, m: &Move) -> Result<Applied, MoveError> {
    m.check(g)?;
    let identity: Vec<Option<usize>> = (0..g.n()).map(Some).collect();
    let mut h = g.clone();
    let (graph, relabel) = match m {
        Move::EdgeAddition { u, v } => {
            h.add_edge(*u, *v);
            (h, identity)
        }
        Move::EdgeDeletion { u, v } => {
            h.remove_edge(*u, *v);
            (h, identity)
        }
        Move::OneExtension { x, y, z } => {
            h.remove_edge(*x, *y);
            let w = h.add_vertex();
            for t in [*x, *y, *z] {
                h.add_edge(w, t);
            }
            (h, identity)
        }
        Move::OneReduction { v, x, y } => {
            h.add_edge(*x, *y);
            h.remove_vertices(&[*v])
        }
        Move::K4Extension { v1, v2 } => {
            h.remove_edge(*v1, *v2);
            let a = h.add_vertex();
            let b = h.add_vertex();
            for (s, t) in [(a, *v1), (a, *v2), (b, *v1), (b, *v2), (a, b)] {
                h.add_edge(s, t);
            }
            (h, identity)
        }
        Move::K4Reduction { u1, u2 } => {
            let c: Vec<usize> = g.neighbors(*u1).filter(|&w| w != *u2).collect();
            h.add_edge(c[0], c[1]);
            h.remove_vertices(&[*u1, *u2])
        }
        Move::VertexSplit { v, x, n1 } => {
            let keep: BTreeSet<usize> = n1.iter().copied().collect();
            let moved: Vec<usize> = g.neighbors(*v).filter(|w| !keep.contains(w)).collect();
            let v2 = h.add_vertex();
            for w in moved {
                h.remove_edge(*v, w);
                h.add_edge(v2, w);
            }
            h.add_edge(*v, v2);
            h.add_edge(*v, *x);
            (h, identity)
        }
        Move::EdgeReduction { a, b, w } => {
            let common = g.neighbor_set(*a).intersection(g.neighbor_set(*b)).next().is_some();
            for y in g.neighbors(*b).filter(|&y| y != *a) {
                h.add_edge(*a, y);
            }
            if !common {
                h.remove_edge(*a, *w);
            }
            h.remove_vertices(&[*b])
        }
    };
    Ok(Applied { graph, relabel })
}

/// A move undoing another one: `mv` applies to the result of the original
/// move, and `map` is an isomorphism from the original graph onto the result
/// of `mv`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inverse {
    pub mv: Move,
    pub map: Vec<usize>,
}

/// The inverse of `m` applied to `g`.
pub fn inverse(g: &Graph, m: &Move) -> Result<Inverse, MoveError> {
    let applied = apply_mapped(g, m)?;
    let n = g.n();
    let r = |u: usize| applied.relabel[u].expect("surviving vertex");
    let identity: Vec<usize> = (0..n).collect();
    let (mv, map) = match m {
        Move::EdgeAddition { u, v } => (Move::EdgeDeletion { u: *u, v: *v }, identity),
        Move::EdgeDeletion { u, v } => (Move::EdgeAddition { u: *u, v: *v }, identity),
        Move::OneExtension { x, y, .. } => (Move::OneReduction { v: n, x: *x, y: *y }, identity),
        Move::K4Extension { .. } => (Move::K4Reduction { u1: n, u2: n + 1 }, identity),
        Move::VertexSplit { v, x, .. } => (Move::EdgeReduction { a: *v, b: n, w: *x }, identity),
        Move::OneReduction { v, x, y } => {
            let z = g.neighbors(*v).find(|t| t != x && t != y).unwrap();
            let map = (0..n).map(|u| if u == *v { n - 1 } else { r(u) }).collect();
            (Move::OneExtension { x: r(*x), y: r(*y), z: r(z) }, map)
        }
        Move::K4Reduction { u1, u2 } => {
            let c: Vec<usize> = g.neighbors(*u1).filter(|w| w != u2).collect();
            let map = (0..n)
                .map(|u| match u {
                    _ if u == *u1 => n - 2,
                    _ if u == *u2 => n - 1,
                    _ => r(u),
                })
                .collect();
            (Move::K4Extension { v1: r(c[0]), v2: r(c[1]) }, map)
        }
        Move::EdgeReduction { a, b, w } => {
            // the split keeps the endpoint that carries the extra edge
            let common = g.neighbor_set(*a).contains(w) && g.neighbor_set(*b).contains(w);
            let (keep, other) = if common || g.has_edge(*a, *w) { (*a, *b) } else { (*b, *a) };
            let mut n1: Vec<usize> = g
                .neighbors(keep)
                .filter(|&t| t != other && t != *w)
                .map(r)
                .collect();
            n1.sort_unstable();
            let map = (0..n)
                .map(|u| match u {
                    _ if u == keep => r(*a),
                    _ if u == other => n - 1,
                    _ => r(u),
                })
                .collect();
            (Move::VertexSplit { v: r(*a), x: r(*w), n1 }, map)
        }
    };
    Ok(Inverse { mv, map })
}

/// Gluing data for a join of two graphs `(G1, G2)`; vertex arguments are
/// labels in the respective graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gluing {
    /// The edge `ab` of G1 and a K4 `[a, b, c, d]` of G2 whose `c, d` have degree 3;
    /// `a, b` are identified.
    One { ab: Edge, k4: [usize; 4] },
    /// K4's `[a, b, c1, d1]` in G1 and `[a, b, c2, d2]` in G2 with `c_i, d_i` of
    /// degree 3; `a, b` are identified and `ab` is put back.
    Two { k4_1: [usize; 4], k4_2: [usize; 4] },
    /// Degree-3 vertices `v1` of G1 and `v2` of G2; each pair `(s, t)` lists a
    /// neighbour of `v1` and the neighbour of `v2` it gets joined to.
    Three { v1: usize, v2: usize, pairs: [(usize, usize); 3] },
}

impl Gluing {
    pub fn order(&self) -> usize {
        match self {
            Gluing::One { .. } => 1,
            Gluing::Two { .. } => 2,
            Gluing::Three { .. } => 3,
        }
    }
}

/// A join and where the vertices of each input ended up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Joined {
    pub graph: Graph,
    pub from_g1: Vec<Option<usize>>,
    pub from_g2: Vec<Option<usize>>,
}

fn check_k4(g: &Graph, k: &[usize; 4], nodes: &[usize]) -> Result<(), MoveError> {
    let set: BTreeSet<usize> = k.iter().copied().collect();
    if set.len() != 4 || k.iter().any(|&x| x >= g.n()) {
        return Err(MoveError::Gluing(format!("{k:?} is not a vertex quadruple")));
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if !g.has_edge(k[i], k[j]) {
                return Err(MoveError::Gluing(format!("{k:?} does not span a K4")));
            }
        }
    }
    if let Some(&c) = nodes.iter().find(|&&c| g.degree(c) != 3) {
        return Err(MoveError::Gluing(format!("vertex {c} must have degree 3")));
    }
    Ok(())
}

fn k4_edges(k: &[usize; 4]) -> Vec<Edge> {
    let mut out = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            out.push(edge(k[i], k[j]));
        }
    }
    out
}

/// Glues `g1` and `g2`: vertices in `drop*` and edges in `cut*` are removed,
/// `ident` lists `(g2 vertex, g1 vertex)` pairs that become one vertex, and
/// `extra` lists new edges as `(g1 vertex, g2 vertex)`.
fn glue(
    g1: &Graph,
    g2: &Graph,
    drop: (&[usize], &[usize]),
    cut: (&[Edge], &[Edge]),
    ident: &[(usize, usize)],
    extra: &[(usize, usize)],
) -> Joined {
    let mut from_g1 = vec![None; g1.n()];
    let mut next = 0;
    for (v, slot) in from_g1.iter_mut().enumerate() {
        if !drop.0.contains(&v) {
            *slot = Some(next);
            next += 1;
        }
    }
    let mut from_g2 = vec![None; g2.n()];
    for (v, slot) in from_g2.iter_mut().enumerate() {
        if let Some(&(_, t)) = ident.iter().find(|&&(s, _)| s == v) {
            *slot = from_g1[t];
        } else if !drop.1.contains(&v) {
            *slot = Some(next);
            next += 1;
        }
    }
    let mut h = Graph::empty(next);
    for (g, map, cut) in [(g1, &from_g1, cut.0), (g2, &from_g2, cut.1)] {
        for e in g.edges() {
            if cut.contains(&e) {
                continue;
            }
            if let (Some(a), Some(b)) = (map[e.0], map[e.1]) {
                h.add_edge(a, b);
            }
        }
    }
    for &(s, t) in extra {
        h.add_edge(from_g1[s].unwrap(), from_g2[t].unwrap());
    }
    Joined { graph: h, from_g1, from_g2 }
}

/// The j-join of `(g1, g2)`. G1's surviving vertices come first, in order,
/// followed by G2's surviving unshared vertices.
pub fn join(g1: &Graph, g2: &Graph, gluing: &Gluing) -> Result<Joined, MoveError> {
    match gluing {
        Gluing::One { ab, k4 } => {
            if !g1.has_edge(ab.0, ab.1) || ab.0 == ab.1 {
                return Err(MoveError::Gluing(format!("{ab:?} is not an edge of G1")));
            }
            check_k4(g2, k4, &k4[2..])?;
            let e1 = [edge(ab.0, ab.1)];
            let e2 = k4_edges(k4);
            Ok(glue(g1, g2, (&[], &k4[2..]), (&e1, &e2), &[(k4[0], ab.0), (k4[1], ab.1)], &[]))
        }
        Gluing::Two { k4_1, k4_2 } => {
            check_k4(g1, k4_1, &k4_1[2..])?;
            check_k4(g2, k4_2, &k4_2[2..])?;
            let e1 = k4_edges(k4_1);
            let e2 = k4_edges(k4_2);
            let mut j = glue(
                g1,
                g2,
                (&k4_1[2..], &k4_2[2..]),
                (&e1, &e2),
                &[(k4_2[0], k4_1[0]), (k4_2[1], k4_1[1])],
                &[],
            );
            let (a, b) = (j.from_g1[k4_1[0]].unwrap(), j.from_g1[k4_1[1]].unwrap());
            j.graph.add_edge(a, b);
            Ok(j)
        }
        Gluing::Three { v1, v2, pairs } => {
            let bad = |g: &Graph, v: usize, nb: Vec<usize>| {
                let mut nb = nb;
                nb.sort_unstable();
                nb.dedup();
                v >= g.n() || nb.len() != 3 || g.neighbors(v).collect::<Vec<_>>() != nb
            };
            if bad(g1, *v1, pairs.iter().map(|p| p.0).collect()) || bad(g2, *v2, pairs.iter().map(|p| p.1).collect())
            {
                return Err(MoveError::Gluing("pairs must list the three neighbours of v1 and v2".into()));
            }
            let e1: Vec<Edge> = pairs.iter().map(|p| edge(*v1, p.0)).collect();
            let e2: Vec<Edge> = pairs.iter().map(|p| edge(*v2, p.1)).collect();
            Ok(glue(g1, g2, (&[*v1], &[*v2]), (&e1, &e2), &[], pairs))
        }
    }
}

/// One j-separation `(G1, G2)` of a graph; `origin*` send part labels back to
/// the graph's labels (`None` for added vertices). Joining the parts with
/// `gluing` rebuilds the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatedPair {
    pub g1: Graph,
    pub g2: Graph,
    pub gluing: Gluing,
    pub origin1: Vec<Option<usize>>,
    pub origin2: Vec<Option<usize>>,
}

fn side_graph(g: &Graph, side: &[usize], extra: usize) -> (Graph, Vec<Option<usize>>) {
    let mut h = g.induced(side);
    let mut origin: Vec<Option<usize>> = side.iter().map(|&v| Some(v)).collect();
    for _ in 0..extra {
        h.add_vertex();
        origin.push(None);
    }
    (h, origin)
}

fn complete_on(h: &mut Graph, vs: &[usize]) {
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            h.add_edge(vs[i], vs[j]);
        }
    }
}

fn pos(side: &[usize], v: usize) -> usize {
    side.binary_search(&v).expect("vertex on this side")
}

/// All j-separations of `g`: for j = 1, 2 from 2-vertex-separations whose cut
/// is a non-edge (j = 1, both orders) or an edge (j = 2); for j = 3 from
/// non-trivial 3-edge-separations.
pub fn separations_of(g: &Graph, j: usize) -> Vec<SeparatedPair> {
    let mut out = Vec::new();
    if g.n() < 4 {
        return out;
    }
    match j {
        1 | 2 => {
            for s in enumerate_separations(g, SeparationKind::TwoVertex) {
                let Cut::Vertices(a, b) = s.cut else { continue };
                if (j == 2) != g.has_edge(a, b) {
                    continue;
                }
                if j == 1 {
                    for (h1, h2) in [(&s.side1, &s.side2), (&s.side2, &s.side1)] {
                        let (mut g1, origin1) = side_graph(g, h1, 0);
                        g1.add_edge(pos(h1, a), pos(h1, b));
                        let (mut g2, origin2) = side_graph(g, h2, 2);
                        let k4 = [pos(h2, a), pos(h2, b), h2.len(), h2.len() + 1];
                        complete_on(&mut g2, &k4);
                        let gluing = Gluing::One { ab: (pos(h1, a), pos(h1, b)), k4 };
                        out.push(SeparatedPair { g1, g2, gluing, origin1, origin2 });
                    }
                } else {
                    let (h1, h2) = (&s.side1, &s.side2);
                    let (mut g1, origin1) = side_graph(g, h1, 2);
                    let k4_1 = [pos(h1, a), pos(h1, b), h1.len(), h1.len() + 1];
                    complete_on(&mut g1, &k4_1);
                    let (mut g2, origin2) = side_graph(g, h2, 2);
                    let k4_2 = [pos(h2, a), pos(h2, b), h2.len(), h2.len() + 1];
                    complete_on(&mut g2, &k4_2);
                    out.push(SeparatedPair { g1, g2, gluing: Gluing::Two { k4_1, k4_2 }, origin1, origin2 });
                }
            }
        }
        3 => {
            for s in enumerate_separations(g, SeparationKind::ThreeEdge) {
                let Cut::Edges(cut) = s.cut else { continue };
                if !s.nontrivial {
                    continue;
                }
                let (h1, h2) = (&s.side1, &s.side2);
                let (mut g1, origin1) = side_graph(g, h1, 1);
                let (mut g2, origin2) = side_graph(g, h2, 1);
                let (v1, v2) = (h1.len(), h2.len());
                let mut pairs = [(0, 0); 3];
                for (i, &(x, y)) in cut.iter().enumerate() {
                    let (p, q) = if h1.binary_search(&x).is_ok() { (x, y) } else { (y, x) };
                    pairs[i] = (pos(h1, p), pos(h2, q));
                    g1.add_edge(v1, pairs[i].0);
                    g2.add_edge(v2, pairs[i].1);
                }
                out.push(SeparatedPair { g1, g2, gluing: Gluing::Three { v1, v2, pairs }, origin1, origin2 });
            }
        }
        _ => {}
    }
    out
}

/// The two terminal graphs of the reduction engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseGraph {
    K5Minus,
    B1,
}

impl BaseGraph {
    pub fn graph(self) -> Graph {
        match self {
            BaseGraph::K5Minus => named::k5_minus(),
            BaseGraph::B1 => named::b1(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BaseGraph::K5Minus => "K5-",
            BaseGraph::B1 => "B1",
        }
    }

    pub fn from_name(s: &str) -> Option<BaseGraph> {
        match s {
            "K5-" => Some(BaseGraph::K5Minus),
            "B1" => Some(BaseGraph::B1),
            _ => None,
        }
    }

    /// Which base graph `g` is isomorphic to, if any.
    pub fn recognise(g: &Graph) -> Option<BaseGraph> {
        [BaseGraph::K5Minus, BaseGraph::B1].into_iter().find(|b| {
            let h = b.graph();
            g.n() == h.n() && g.m() == h.m() && is_isomorphic(g, &h)
        })
    }
}

/// Candidate reductions of `g` in search order: edge deletions, then
/// K4⁻-reductions, then edge-reductions, each block sorted by labels.
pub fn reduction_candidates(g: &Graph) -> Vec<Move> {
    let mut out: Vec<Move> = Vec::new();
    // deleting an edge cannot leave a connected matroid when |E| < 2n
    if g.m() >= 2 * g.n() {
        out.extend(g.edges().into_iter().map(|(u, v)| Move::EdgeDeletion { u, v }));
    }
    for (u1, u2) in g.edges() {
        let m = Move::K4Reduction { u1, u2 };
        if m.check(g).is_ok() {
            out.push(m);
        }
    }
    for (a, b) in g.edges() {
        let mut ws: Vec<usize> = g.neighbors(a).chain(g.neighbors(b)).filter(|&w| w != a && w != b).collect();
        ws.sort_unstable();
        ws.dedup();
        for w in ws {
            let m = Move::EdgeReduction { a, b, w };
            if m.check(g).is_ok() {
                out.push(m);
            }
        }
    }
    out
}

fn admissible(g: &Graph, m: &Move) -> bool {
    apply(g, m).map(|h| is_m22_connected(&h)).unwrap_or(false)
}

/// An admissible reduction of an M(2,2)-connected graph: a move whose result
/// is again M(2,2)-connected. `None` exactly for K5⁻ and B1.
///
/// The first admissible candidate of [`reduction_candidates`] is returned,
/// except that a move landing directly on a base graph is preferred.
pub fn find_admissible_reduction(g: &Graph) -> Result<Option<Move>, MoveError> {
    if !is_m22_connected(g) {
        return Err(MoveError::NotM22Connected);
    }
    if BaseGraph::recognise(g).is_some() {
        return Ok(None);
    }
    let candidates = reduction_candidates(g);
    let (n, m) = (g.n() as isize, g.m() as isize);
    let lands_on_base = candidates.iter().find(|mv| {
        let (dn, dm) = mv.size_delta();
        matches!((n + dn, m + dm), (5, 9) | (6, 11))
            && apply(g, mv).map(|h| BaseGraph::recognise(&h).is_some()).unwrap_or(false)
    });
    if let Some(mv) = lands_on_base {
        return Ok(Some(mv.clone()));
    }
    let found = candidates.par_iter().find_first(|mv| admissible(g, mv)).cloned();
    match found {
        Some(mv) => Ok(Some(mv)),
        None => Err(MoveError::Precondition(
            "no admissible reduction found for an M(2,2)-connected graph".into(),
        )),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub mv: Move,
    pub result: Graph,
    /// Fingerprint of `result`.
    pub hash: u64,
    pub relabel: Vec<Option<usize>>,
}

/// A sequence of admissible reductions from an input graph down to a graph
/// isomorphic to K5⁻ or B1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub input: Graph,
    pub steps: Vec<TraceStep>,
    pub base: BaseGraph,
}

impl ReductionTrace {
    pub fn last(&self) -> &Graph {
        self.steps.last().map(|s| &s.result).unwrap_or(&self.input)
    }

    pub fn kinds(&self) -> Vec<MoveKind> {
        self.steps.iter().map(|s| s.mv.kind()).collect()
    }

    /// Forward construction script from the canonical base graph, and an
    /// isomorphism from the input onto the graph the script builds.
    pub fn construction(&self) -> (MoveScript, Vec<usize>) {
        let base = self.base.graph();
        let mut psi = find_isomorphism(self.last(), &base).expect("trace ends at its base graph");
        let mut built = base;
        let mut moves = Vec::new();
        for i in (0..self.steps.len()).rev() {
            let before = if i == 0 { &self.input } else { &self.steps[i - 1].result };
            let inv = inverse(before, &self.steps[i].mv).expect("recorded move is valid");
            let f = inv.mv.map_vertices(|x| psi[x]);
            let next = apply(&built, &f).expect("translated move is valid");
            let old_n = built.n();
            let extended = |x: usize| if x < old_n { psi[x] } else { x };
            psi = inv.map.iter().map(|&x| extended(x)).collect();
            built = next;
            moves.push(f);
        }
        (MoveScript { base: self.base, moves }, psi)
    }
}

/// Repeatedly applies [`find_admissible_reduction`] until a base graph is reached.
pub fn reduce_to_base(g: &Graph) -> Result<ReductionTrace, MoveError> {
    let mut current = g.clone();
    let mut steps = Vec::new();
    loop {
        match find_admissible_reduction(&current)? {
            None => {
                let base = BaseGraph::recognise(&current).expect("terminal graph is a base graph");
                return Ok(ReductionTrace { input: g.clone(), steps, base });
            }
            Some(mv) => {
                let applied = apply_mapped(&current, &mv)?;
                current = applied.graph.clone();
                steps.push(TraceStep {
                    mv,
                    hash: applied.graph.fingerprint(),
                    result: applied.graph,
                    relabel: applied.relabel,
                });
            }
        }
    }
}

/// A base graph followed by forward moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveScript {
    pub base: BaseGraph,
    pub moves: Vec<Move>,
}

impl MoveScript {
    pub fn replay(&self) -> Result<Graph, MoveError> {
        let mut g = self.base.graph();
        for m in &self.moves {
            g = apply(&g, m)?;
        }
        Ok(g)
    }
}

fn random_split(g: &Graph, rng: &mut ChaCha8Rng) -> Option<Move> {
    let v = rng.random_range(0..g.n());
    let nb: Vec<usize> = g.neighbors(v).collect();
    let n1: Vec<usize> = nb.iter().copied().filter(|_| rng.random_bool(0.5)).collect();
    if n1.is_empty() || nb.len() - n1.len() < 2 {
        return None;
    }
    let others: Vec<usize> = (0..g.n()).filter(|&x| x != v && !n1.contains(&x)).collect();
    let x = *others.choose(rng)?;
    Some(Move::VertexSplit { v, x, n1 })
}

/// One random forward move keeping `g` M(2,2)-connected.
pub fn random_forward_move(g: &Graph, rng: &mut ChaCha8Rng) -> Move {
    loop {
        match rng.random_range(0..3) {
            0 => {
                let edges = g.edges();
                let &(v1, v2) = edges.choose(rng).expect("graph has edges");
                return Move::K4Extension { v1, v2 };
            }
            1 => {
                let non_edges: Vec<Edge> = (0..g.n())
                    .flat_map(|u| (u + 1..g.n()).map(move |v| (u, v)))
                    .filter(|&(u, v)| !g.has_edge(u, v))
                    .collect();
                if let Some(&(u, v)) = non_edges.choose(rng) {
                    return Move::EdgeAddition { u, v };
                }
            }
            _ => {
                for _ in 0..20 {
                    if let Some(m) = random_split(g, rng) {
                        if admissible(g, &m) {
                            return m;
                        }
                    }
                }
            }
        }
    }
}

/// A random M(2,2)-connected graph: K5⁻ or B1 followed by `steps` random
/// K4⁻-extensions, edge additions and admissible vertex splits.
pub fn random_m22_graph(steps: usize, seed: u64) -> Graph {
    random_m22_script(steps, seed).replay().expect("generated moves are valid")
}

/// The move script behind [`random_m22_graph`].
pub fn random_m22_script(steps: usize, seed: u64) -> MoveScript {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = if rng.random_bool(0.5) { BaseGraph::K5Minus } else { BaseGraph::B1 };
    let mut g = base.graph();
    let mut moves = Vec::with_capacity(steps);
    for _ in 0..steps {
        let m = random_forward_move(&g, &mut rng);
        g = apply(&g, &m).expect("random move is valid");
        moves.push(m);
    }
    MoveScript { base, moves }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::sparsity::is_circuit22;

    #[test]
    fn extension_examples() {
        let h = apply(&k5_minus(), &Move::K4Extension { v1: 0, v2: 1 }).unwrap();
        assert_eq!((h.n(), h.m()), (7, 13));
        assert!(is_circuit22(&h).unwrap());
        let h = apply(&b1(), &Move::OneExtension { x: 0, y: 1, z: 4 }).unwrap();
        assert_eq!((h.n(), h.m()), (7, 13));
        assert!(is_circuit22(&h).unwrap());
    }

    #[test]
    fn preconditions_name_the_failure() {
        let g = b2();
        assert_eq!(
            apply(&g, &Move::K4Reduction { u1: 0, u2: 1 }),
            Err(MoveError::ExistingEdge(2, 3))
        );
        assert_eq!(apply(&g, &Move::EdgeDeletion { u: 0, v: 6 }), Err(MoveError::MissingEdge(0, 6)));
        assert_eq!(apply(&g, &Move::K4Extension { v1: 0, v2: 9 }), Err(MoveError::VertexOutOfRange(9)));
        assert!(matches!(
            apply(&g, &Move::EdgeReduction { a: 0, b: 1, w: 4 }),
            Err(MoveError::Precondition(_))
        ));
        assert_eq!(apply(&g, &Move::OneReduction { v: 2, x: 0, y: 1 }), Err(MoveError::NotANode(2, 6)));
    }

    #[test]
    fn split_and_edge_reduction_undo_each_other() {
        let g = k5_minus();
        let split = Move::VertexSplit { v: 2, x: 0, n1: vec![1] };
        let h = apply(&g, &split).unwrap();
        assert_eq!((h.n(), h.m()), (6, 11));
        let inv = inverse(&g, &split).unwrap();
        assert_eq!(inv.mv, Move::EdgeReduction { a: 2, b: 5, w: 0 });
        assert_eq!(apply(&h, &inv.mv).unwrap(), g);
    }

    #[test]
    fn inverse_map_is_an_isomorphism_for_every_kind() {
        let g = k4_ring();
        let h = apply(&g, &Move::EdgeDeletion { u: 1, v: 3 }).unwrap();
        let cases: Vec<(Graph, Move)> = vec![
            (g.clone(), Move::EdgeAddition { u: 0, v: 5 }),
            (g.clone(), Move::EdgeDeletion { u: 1, v: 3 }),
            (g.clone(), Move::OneExtension { x: 0, y: 1, z: 7 }),
            (prism(), Move::OneReduction { v: 0, x: 1, y: 3 }),
            (g.clone(), Move::K4Extension { v1: 3, v2: 6 }),
            (h.clone(), Move::K4Reduction { u1: 0, u2: 2 }),
            (g.clone(), Move::VertexSplit { v: 3, x: 5, n1: vec![0, 2] }),
            (b2(), Move::EdgeReduction { a: 3, b: 5, w: 2 }),
            (prism(), Move::EdgeReduction { a: 0, b: 3, w: 1 }),
            (prism(), Move::EdgeReduction { a: 0, b: 3, w: 4 }),
        ];
        for (g, m) in cases {
            let inv = match inverse(&g, &m) {
                Ok(inv) => inv,
                Err(e) => panic!("{m}: {e}"),
            };
            let back = apply(&apply(&g, &m).unwrap(), &inv.mv).unwrap();
            assert_eq!(back.n(), g.n());
            for (u, v) in g.edges() {
                assert!(back.has_edge(inv.map[u], inv.map[v]), "{m}");
            }
            assert_eq!(back.m(), g.m());
        }
    }

    #[test]
    fn joins_of_circuits() {
        let j1 = join(&k5_minus(), &b1(), &Gluing::One { ab: (0, 1), k4: [2, 3, 0, 1] }).unwrap();
        assert_eq!((j1.graph.n(), j1.graph.m()), (7, 13));
        assert!(is_circuit22(&j1.graph).unwrap());
        let j2 = join(&b1(), &b1(), &Gluing::Two { k4_1: [2, 3, 0, 1], k4_2: [2, 3, 0, 1] }).unwrap();
        assert_eq!((j2.graph.n(), j2.graph.m()), (6, 11));
        assert!(is_circuit22(&j2.graph).unwrap());
        let a = j2.from_g1[2].unwrap();
        let b = j2.from_g1[3].unwrap();
        assert!(j2.graph.has_edge(a, b));
        let j3 =
            join(&k5_minus(), &k5_minus(), &Gluing::Three { v1: 2, v2: 4, pairs: [(0, 0), (1, 1), (3, 3)] }).unwrap();
        assert_eq!((j3.graph.n(), j3.graph.m()), (8, 15));
        assert!(is_circuit22(&j3.graph).unwrap());
    }

    #[test]
    fn join_rejects_bad_gluing() {
        assert!(join(&k5_minus(), &b1(), &Gluing::One { ab: (0, 1), k4: [0, 1, 2, 4] }).is_err());
        assert!(join(&k5_minus(), &b1(), &Gluing::One { ab: (2, 4), k4: [2, 3, 0, 1] }).is_err());
        assert!(join(&k5_minus(), &k5_minus(), &Gluing::Three { v1: 0, v2: 4, pairs: [(1, 0), (2, 1), (3, 3)] })
            .is_err());
    }

    #[test]
    fn separations_rebuild_the_graph() {
        for (g, j) in [(b1(), 2), (prism(), 3), (k4_ring(), 1), (b2(), 2), (cycle(6), 3)] {
            for s in separations_of(&g, j) {
                let back = join(&s.g1, &s.g2, &s.gluing).unwrap();
                assert!(is_isomorphic(&back.graph, &g), "j={j}");
            }
        }
    }

    #[test]
    fn separation_examples() {
        let seps = separations_of(&b1(), 2);
        assert_eq!(seps.len(), 1);
        for part in [&seps[0].g1, &seps[0].g2] {
            assert!(is_isomorphic(part, &b1()));
            assert!(is_m22_connected(part));
        }
        let seps = separations_of(&prism(), 3);
        assert_eq!(seps.len(), 1);
        assert!(is_isomorphic(&seps[0].g1, &complete(4)));
        assert!(is_isomorphic(&seps[0].g2, &complete(4)));
        assert!(separations_of(&k5_minus(), 1).is_empty());
    }

    #[test]
    fn b2_reduces_to_b1_in_one_edge_reduction() {
        let t = reduce_to_base(&b2()).unwrap();
        assert_eq!(t.kinds(), vec![MoveKind::EdgeReduction]);
        assert_eq!(t.base, BaseGraph::B1);
    }

    #[test]
    fn bases_have_no_reduction() {
        assert_eq!(find_admissible_reduction(&k5_minus()), Ok(None));
        assert_eq!(find_admissible_reduction(&b1()), Ok(None));
        assert_eq!(find_admissible_reduction(&wheel(5)), Err(MoveError::NotM22Connected));
        let t = reduce_to_base(&k5_minus()).unwrap();
        assert!(t.steps.is_empty());
        assert_eq!(t.base, BaseGraph::K5Minus);
    }

    #[test]
    fn k4_ring_follows_the_expected_kinds() {
        let t = reduce_to_base(&k4_ring()).unwrap();
        assert_eq!(
            t.kinds(),
            vec![
                MoveKind::EdgeDeletion,
                MoveKind::K4Reduction,
                MoveKind::EdgeReduction,
                MoveKind::K4Reduction,
                MoveKind::EdgeReduction
            ]
        );
        let inner = [edge(1, 3), edge(3, 6), edge(4, 6), edge(1, 4)];
        let Move::EdgeDeletion { u, v } = t.steps[0].mv else { unreachable!() };
        assert!(inner.contains(&(u, v)));
        assert_eq!(t.base, BaseGraph::B1);
        let sizes: Vec<usize> = t.steps.iter().map(|s| s.result.n() + s.result.m()).collect();
        assert_eq!(sizes, vec![35, 29, 26, 20, 17]);
        assert!(is_isomorphic(&t.steps[3].result, &b2()));
    }

    #[test]
    fn construction_script_rebuilds_input() {
        for g in [k4_ring(), b2(), complete_bipartite(3, 6), complete(6)] {
            let t = reduce_to_base(&g).unwrap();
            let (script, psi) = t.construction();
            let built = script.replay().unwrap();
            assert_eq!(built.n(), g.n());
            assert_eq!(built.m(), g.m());
            for (u, v) in g.edges() {
                assert!(built.has_edge(psi[u], psi[v]));
            }
        }
    }

    #[test]
    fn random_graphs_are_m22_connected_and_reproducible() {
        assert!(BaseGraph::recognise(&random_m22_graph(0, 3)).is_some());
        for seed in 0..10 {
            let g = random_m22_graph(8, seed);
            assert!(is_m22_connected(&g));
            assert_eq!(g, random_m22_graph(8, seed));
        }
    }
}
