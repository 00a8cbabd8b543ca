//! The (2,k)-sparsity matroids via the pebble game, with circuits, matroid
//! components and ear decompositions of the simple (2,2)-sparse matroid.

use thiserror::Error;

use crate::graph::{edge, Edge, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SparsityError {
    #[error("sparsity offset k={0} outside 0..=3")]
    InvalidOffset(usize),
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error("graph has no edges")]
    NoEdges,
    #[error("edge {0}-{1} is independent of the current basis")]
    Independent(usize, usize),
}

/// State of the (2,k) pebble game: two pebbles per vertex, an edge is
/// accepted when `k + 1` pebbles can be collected on its endpoints.
///
/// Invariant: `free pebbles + accepted edges = 2n`; the accepted set is always
/// (2,k)-sparse.
#[derive(Debug, Clone)]
pub struct PebbleGame {
    k: usize,
    pebbles: Vec<u8>,
    out: Vec<Vec<usize>>,
    accepted: Vec<Edge>,
}

impl PebbleGame {
    pub fn new(n: usize, k: usize) -> Result<Self, SparsityError> {
        if k > 3 {
            return Err(SparsityError::InvalidOffset(k));
        }
        Ok(PebbleGame {
            k,
            pebbles: vec![2; n],
            out: vec![Vec::new(); n],
            accepted: Vec::new(),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn free_pebbles(&self, v: usize) -> usize {
        self.pebbles[v] as usize
    }

    /// Accepted edges, in acceptance order.
    pub fn accepted(&self) -> &[Edge] {
        &self.accepted
    }

    pub fn rank(&self) -> usize {
        self.accepted.len()
    }

    /// Moves one pebble onto `start` along reversed arcs, never touching `avoid`.
    fn fetch_pebble(&mut self, start: usize, avoid: usize) -> bool {
        let n = self.pebbles.len();
        let mut prev = vec![usize::MAX; n];
        prev[start] = start;
        prev[avoid] = avoid;
        let mut stack = vec![start];
        let mut found = None;
        'search: while let Some(x) = stack.pop() {
            for &y in &self.out[x] {
                if prev[y] != usize::MAX {
                    continue;
                }
                prev[y] = x;
                if self.pebbles[y] > 0 {
                    found = Some(y);
                    break 'search;
                }
                stack.push(y);
            }
        }
        let Some(w) = found else {
            return false;
        };
        let mut y = w;
        while y != start {
            let x = prev[y];
            let pos = self.out[x].iter().position(|&t| t == y).unwrap();
            self.out[x].swap_remove(pos);
            self.out[y].push(x);
            y = x;
        }
        self.pebbles[w] -= 1;
        self.pebbles[start] += 1;
        true
    }

    /// Collects `k + 1` pebbles on `{u, v}` if possible.
    fn gather(&mut self, u: usize, v: usize) -> bool {
        while (self.pebbles[u] + self.pebbles[v]) as usize <= self.k {
            if self.pebbles[u] < 2 && self.fetch_pebble(u, v) {
                continue;
            }
            if self.pebbles[v] < 2 && self.fetch_pebble(v, u) {
                continue;
            }
            return false;
        }
        true
    }

    /// Accepts `uv` when the accepted set plus `uv` stays independent.
    pub fn try_insert(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v);
        if !self.gather(u, v) {
            return false;
        }
        let (tail, head) = if self.pebbles[u] > 0 { (u, v) } else { (v, u) };
        self.pebbles[tail] -= 1;
        self.out[tail].push(head);
        self.accepted.push(edge(u, v));
        true
    }

    /// Independence test for `accepted + uv` that leaves the state untouched.
    pub fn accepts(&self, u: usize, v: usize) -> bool {
        self.clone().gather(u, v)
    }

    /// Removes an accepted edge, returning its pebble to the tail.
    pub fn remove(&mut self, u: usize, v: usize) -> bool {
        let e = edge(u, v);
        let Some(i) = self.accepted.iter().position(|&f| f == e) else {
            return false;
        };
        self.accepted.remove(i);
        for (t, h) in [(u, v), (v, u)] {
            if let Some(pos) = self.out[t].iter().position(|&x| x == h) {
                self.out[t].swap_remove(pos);
                self.pebbles[t] += 1;
                return true;
            }
        }
        unreachable!("accepted edge without orientation")
    }

    /// Vertices reachable from `from` along oriented accepted edges.
    fn reach(&self, from: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.pebbles.len()];
        let mut stack = Vec::new();
        for &s in from {
            if !seen[s] {
                seen[s] = true;
                stack.push(s);
            }
        }
        while let Some(x) = stack.pop() {
            for &y in &self.out[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// The unique circuit inside `accepted + uv`, sorted.
    ///
    /// After a failed search the vertices reachable from `u, v` span the
    /// smallest tight set containing both; the circuit is `uv` together with
    /// every accepted edge inside it.
    pub fn fundamental_circuit(&self, u: usize, v: usize) -> Result<Vec<Edge>, SparsityError> {
        let mut probe = self.clone();
        if probe.gather(u, v) {
            return Err(SparsityError::Independent(u.min(v), u.max(v)));
        }
        let region = probe.reach(&[u, v]);
        let mut circuit: Vec<Edge> = probe
            .accepted
            .iter()
            .filter(|f| region[f.0] && region[f.1])
            .copied()
            .collect();
        circuit.push(edge(u, v));
        circuit.sort_unstable();
        Ok(circuit)
    }

    /// Same circuit by the exchange definition: `f` is in it exactly when
    /// `accepted - f + uv` is independent.
    pub fn fundamental_circuit_by_exchange(&self, u: usize, v: usize) -> Result<Vec<Edge>, SparsityError> {
        if self.accepts(u, v) {
            return Err(SparsityError::Independent(u.min(v), u.max(v)));
        }
        let mut circuit = vec![edge(u, v)];
        for &f in &self.accepted {
            let mut trial = self.clone();
            trial.remove(f.0, f.1);
            if trial.gather(u, v) {
                circuit.push(f);
            }
        }
        circuit.sort_unstable();
        Ok(circuit)
    }
}

fn vertex_bound(edges: &[Edge]) -> usize {
    edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0)
}

/// Rank of `edges` in the (2,k)-sparsity matroid.
pub fn rank2k(edges: &[Edge], k: usize) -> Result<usize, SparsityError> {
    let mut game = PebbleGame::new(vertex_bound(edges), k)?;
    for &(u, v) in edges {
        game.try_insert(u, v);
    }
    Ok(game.rank())
}

fn basis_game(g: &Graph, order: &[Edge], k: usize) -> (PebbleGame, Vec<Edge>) {
    let mut game = PebbleGame::new(g.n(), k).expect("k checked by caller");
    let mut rejected = Vec::new();
    for &(u, v) in order {
        if !game.try_insert(u, v) {
            rejected.push((u, v));
        }
    }
    (game, rejected)
}

pub fn is_sparse(g: &Graph, k: usize) -> Result<bool, SparsityError> {
    Ok(rank2k(&g.edges(), k)? == g.m())
}

pub fn is_tight(g: &Graph, k: usize) -> Result<bool, SparsityError> {
    Ok(is_sparse(g, k)? && g.m() + k == 2 * g.n())
}

fn check_boundary(g: &Graph) -> Result<(), SparsityError> {
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 0) {
        return Err(SparsityError::IsolatedVertex(v));
    }
    if g.m() == 0 {
        return Err(SparsityError::NoEdges);
    }
    Ok(())
}

/// Edge-set circuit test in the (2,k) matroid: dependent, and independent
/// after deleting any edge.
pub fn is_circuit_set(edges: &[Edge], k: usize) -> Result<bool, SparsityError> {
    let m = edges.len();
    if m == 0 || rank2k(edges, k)? != m - 1 {
        return Ok(false);
    }
    for i in 0..m {
        let rest: Vec<Edge> = edges.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &e)| e).collect();
        if rank2k(&rest, k)? != m - 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `g` is a (2,2)-circuit: `2n - 1` edges, every proper subgraph (2,2)-sparse.
pub fn is_circuit22(g: &Graph) -> Result<bool, SparsityError> {
    check_boundary(g)?;
    if g.m() + 1 != 2 * g.n() {
        return Ok(false);
    }
    is_circuit_set(&g.edges(), 2)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Component labels of the edges of `g` (indexed like `g.edges()`) from the
/// fundamental circuits of one basis, scanning edges in `order`.
fn components_one_basis(g: &Graph, order: &[usize], stop_when_connected: bool) -> Vec<usize> {
    let edges = g.edges();
    let m = edges.len();
    let index = |e: Edge| edges.binary_search(&e).unwrap();
    let ordered: Vec<Edge> = order.iter().map(|&i| edges[i]).collect();
    let (game, rejected) = basis_game(g, &ordered, 2);
    let mut uf = UnionFind::new(m);
    let mut classes = m;
    for (u, v) in rejected {
        let e = index((u, v));
        let circuit = game.fundamental_circuit(u, v).expect("rejected edge is dependent");
        for f in circuit {
            if uf.union(e, index(f)) {
                classes -= 1;
            }
        }
        if stop_when_connected && classes == 1 {
            break;
        }
    }
    (0..m).map(|i| uf.find(i)).collect()
}

fn labels_to_partition(edges: &[Edge], labels: &[usize]) -> Vec<Vec<Edge>> {
    let mut groups: std::collections::BTreeMap<usize, Vec<Edge>> = Default::default();
    for (i, &l) in labels.iter().enumerate() {
        groups.entry(l).or_default().push(edges[i]);
    }
    let mut parts: Vec<Vec<Edge>> = groups.into_values().collect();
    parts.sort();
    parts
}

/// Partition of the edge set into components of the (2,2)-sparse matroid.
///
/// Computed from the fundamental circuits of one basis and cross-checked
/// against a second basis built in reverse edge order; should the two ever
/// disagree, their common refinement is returned.
pub fn m22_components(g: &Graph) -> Result<Vec<Vec<Edge>>, SparsityError> {
    check_boundary(g)?;
    let edges = g.edges();
    let m = edges.len();
    let forward: Vec<usize> = (0..m).collect();
    let backward: Vec<usize> = (0..m).rev().collect();
    let a = components_one_basis(g, &forward, false);
    let b = components_one_basis(g, &backward, false);
    let pa = labels_to_partition(&edges, &a);
    let pb = labels_to_partition(&edges, &b);
    if pa == pb {
        return Ok(pa);
    }
    let meet: Vec<usize> = (0..m).map(|i| a[i] * m + b[i]).collect();
    Ok(labels_to_partition(&edges, &meet))
}

/// Every pair of edges lies in a common (2,2)-circuit (and there are at least
/// two edges, none of the vertices isolated).
pub fn is_m22_connected(g: &Graph) -> bool {
    let (n, m) = (g.n(), g.m());
    if m < 2 || g.has_isolated_vertex() {
        return false;
    }
    // every edge of a circuit has both endpoints of degree >= 3, and a
    // connected matroid with rank 2n - 2 has more than 2n - 2 elements
    if g.min_degree() < 3 || m + 1 < 2 * n {
        return false;
    }
    let order: Vec<usize> = (0..m).collect();
    let labels = components_one_basis(g, &order, true);
    labels.iter().all(|&l| l == labels[0])
}

/// An ordered sequence of circuits `C_1..C_t` whose partial unions grow to the
/// whole edge set, each new circuit meeting the previous union and adding a
/// minimal set of new edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EarDecomposition {
    pub circuits: Vec<Vec<Edge>>,
}

impl EarDecomposition {
    pub fn len(&self) -> usize {
        self.circuits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circuits.is_empty()
    }

    /// `D_i = C_1 ∪ ... ∪ C_i`, sorted, for `i = 1..t`.
    pub fn unions(&self) -> Vec<Vec<Edge>> {
        let mut acc: Vec<Edge> = Vec::new();
        self.circuits
            .iter()
            .map(|c| {
                acc.extend(c);
                acc.sort_unstable();
                acc.dedup();
                acc.clone()
            })
            .collect()
    }

    /// The new parts `C_i \ D_{i-1}`.
    pub fn ears(&self) -> Vec<Vec<Edge>> {
        let unions = self.unions();
        self.circuits
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i == 0 {
                    c.clone()
                } else {
                    c.iter().filter(|e| unions[i - 1].binary_search(e).is_err()).copied().collect()
                }
            })
            .collect()
    }
}

/// Candidate next circuits: fundamental circuits (w.r.t. a basis that extends a
/// basis of `covered`) of the edges outside `covered`, keeping those that meet
/// `covered` (all of them when `covered` is empty).
fn ear_candidates(g: &Graph, covered: &[Edge]) -> Vec<(Vec<Edge>, Vec<Edge>)> {
    let mut order: Vec<Edge> = covered.to_vec();
    let rest: Vec<Edge> = g.edges().into_iter().filter(|e| covered.binary_search(e).is_err()).collect();
    order.extend(&rest);
    let mut game = PebbleGame::new(g.n(), 2).unwrap();
    let mut rejected_new = Vec::new();
    for &(u, v) in &order {
        let in_d = covered.binary_search(&(u, v)).is_ok();
        if !game.try_insert(u, v) && !in_d {
            rejected_new.push((u, v));
        }
    }
    let mut out = Vec::new();
    for (u, v) in rejected_new {
        let c = game.fundamental_circuit(u, v).unwrap();
        let new: Vec<Edge> = c.iter().filter(|e| covered.binary_search(e).is_err()).copied().collect();
        if covered.is_empty() || new.len() < c.len() {
            out.push((new, c));
        }
    }
    out
}

/// Greedy ear decomposition; `None` exactly when `g` is not (2,2)-connected.
///
/// Each step picks, among the candidate circuits, one with the fewest new
/// edges, ties broken by the sorted list of new edges. Every candidate's new
/// part is a circuit of the contraction by the current union, so the choice is
/// minimal under inclusion as well.
pub fn ear_decomposition(g: &Graph) -> Result<Option<EarDecomposition>, SparsityError> {
    check_boundary(g)?;
    if g.m() < 2 {
        return Ok(None);
    }
    let total = g.m();
    let mut covered: Vec<Edge> = Vec::new();
    let mut circuits = Vec::new();
    while covered.len() < total {
        let best = ear_candidates(g, &covered)
            .into_iter()
            .min_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        let Some((_, circuit)) = best else {
            return Ok(None);
        };
        covered.extend(&circuit);
        covered.sort_unstable();
        covered.dedup();
        circuits.push(circuit);
    }
    Ok(Some(EarDecomposition { circuits }))
}
