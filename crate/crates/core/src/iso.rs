//! Exact isomorphism and automorphism search by backtracking, intended for
//! graphs of at most a few dozen vertices.

use crate::graph::Graph;

/// Per-vertex invariant: degree followed by the sorted neighbour degrees.
fn signatures(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.n())
        .map(|v| {
            let mut s: Vec<usize> = g.neighbors(v).map(|w| g.degree(w)).collect();
            s.sort_unstable();
            s.insert(0, g.degree(v));
            s
        })
        .collect()
}

/// Vertex order for `g`: start at the highest-degree vertex, then repeatedly
/// take the vertex with most already-ordered neighbours.
fn search_order(g: &Graph, seeds: &[usize]) -> Vec<usize> {
    let n = g.n();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut links = vec![0usize; n];
    let push = |v: usize, placed: &mut Vec<bool>, links: &mut Vec<usize>, order: &mut Vec<usize>| {
        placed[v] = true;
        order.push(v);
        for w in g.neighbors(v) {
            links[w] += 1;
        }
    };
    for &s in seeds {
        push(s, &mut placed, &mut links, &mut order);
    }
    while order.len() < n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (links[v], g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        push(v, &mut placed, &mut links, &mut order);
    }
    order
}

struct Matcher<'a> {
    g: &'a Graph,
    h: &'a Graph,
    sig_g: Vec<Vec<usize>>,
    sig_h: Vec<Vec<usize>>,
    order: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Matcher<'_> {
    fn consistent(&self, v: usize, x: usize) -> bool {
        if self.used[x] || self.sig_g[v] != self.sig_h[x] {
            return false;
        }
        // every already-mapped vertex must agree on adjacency with v
        for &u in &self.order {
            let y = self.map[u];
            if y == usize::MAX {
                continue;
            }
            if self.g.has_edge(u, v) != self.h.has_edge(y, x) {
                return false;
            }
        }
        true
    }

    fn assign(&mut self, v: usize, x: usize) {
        self.map[v] = x;
        self.used[x] = true;
    }

    fn unassign(&mut self, v: usize) {
        self.used[self.map[v]] = false;
        self.map[v] = usize::MAX;
    }

    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        if self.map[v] != usize::MAX {
            return self.extend(depth + 1);
        }
        for x in 0..self.h.n() {
            if self.consistent(v, x) {
                self.assign(v, x);
                if self.extend(depth + 1) {
                    return true;
                }
                self.unassign(v);
            }
        }
        false
    }
}

/// An isomorphism `g -> h` (as `map[v_g] = v_h`) that extends the given
/// forced pairs, if one exists.
pub fn find_isomorphism_extending(g: &Graph, h: &Graph, forced: &[(usize, usize)]) -> Option<Vec<usize>> {
    if g.n() != h.n() || g.m() != h.m() || g.degree_sequence() != h.degree_sequence() {
        return None;
    }
    let seeds: Vec<usize> = forced.iter().map(|&(v, _)| v).collect();
    let mut m = Matcher {
        g,
        h,
        sig_g: signatures(g),
        sig_h: signatures(h),
        order: search_order(g, &seeds),
        map: vec![usize::MAX; g.n()],
        used: vec![false; h.n()],
    };
    for &(v, x) in forced {
        if m.map[v] != usize::MAX {
            if m.map[v] != x {
                return None;
            }
            continue;
        }
        if !m.consistent(v, x) {
            return None;
        }
        m.assign(v, x);
    }
    if m.extend(0) {
        Some(m.map)
    } else {
        None
    }
}

pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    find_isomorphism_extending(g, h, &[])
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    find_isomorphism(g, h).is_some()
}

/// Some automorphism sends vertex 0 to every other vertex.
pub fn is_vertex_transitive(g: &Graph) -> bool {
    (0..g.n()).all(|v| find_isomorphism_extending(g, g, &[(0, v)]).is_some())
}

/// Some automorphism sends the first edge onto every other edge.
pub fn is_edge_transitive(g: &Graph) -> bool {
    let edges = g.edges();
    let Some(&(a, b)) = edges.first() else {
        return true;
    };
    edges.iter().all(|&(c, d)| {
        find_isomorphism_extending(g, g, &[(a, c), (b, d)]).is_some()
            || find_isomorphism_extending(g, g, &[(a, d), (b, c)]).is_some()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn named_isomorphism_examples() {
        let mut other = complete(5);
        other.remove_edge(0, 1);
        assert!(is_isomorphic(&k5_minus(), &other));
        assert!(!is_isomorphic(&b1(), &b2()));
        let mut two_triangles = Graph::empty(6);
        for (u, v) in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)] {
            two_triangles.add_edge(u, v);
        }
        assert!(!is_isomorphic(&cycle(6), &two_triangles));
    }

    #[test]
    fn returned_map_preserves_edges() {
        let g = k4_ring();
        let perm = [5, 3, 11, 0, 7, 1, 9, 2, 4, 10, 6, 8];
        let h = g.permuted(&perm);
        let map = find_isomorphism(&g, &h).unwrap();
        for (u, v) in g.edges() {
            assert!(h.has_edge(map[u], map[v]));
        }
    }

    #[test]
    fn equivalence_relation_spot_checks() {
        let gs = [k5_minus(), b1(), b2(), prism(), complete_bipartite(3, 3), wheel(5)];
        let perm6 = [3, 0, 5, 1, 4, 2];
        for g in &gs {
            assert!(is_isomorphic(g, g));
        }
        let p = prism().permuted(&perm6);
        let q = p.permuted(&perm6);
        assert!(is_isomorphic(&prism(), &p) && is_isomorphic(&p, &prism()));
        assert!(is_isomorphic(&p, &q) && is_isomorphic(&prism(), &q));
        for (i, g) in gs.iter().enumerate() {
            for h in &gs[i + 1..] {
                assert_eq!(is_isomorphic(g, h), is_isomorphic(h, g));
            }
        }
    }

    #[test]
    fn transitivity() {
        assert!(is_vertex_transitive(&complete(6)));
        assert!(is_edge_transitive(&complete(6)));
        assert!(is_vertex_transitive(&prism()));
        assert!(!is_edge_transitive(&prism()));
        assert!(is_edge_transitive(&complete_bipartite(3, 4)));
        assert!(!is_vertex_transitive(&complete_bipartite(3, 4)));
        assert!(!is_vertex_transitive(&wheel(5)));
    }
}
