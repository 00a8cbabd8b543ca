//! Brute-force oracles and seeded corpora shared by the integration tests.
#![allow(dead_code)]

use normrig::{gnp, random_m22_graph, Edge, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

/// Counting oracle for one graph: every edge subset as a bitmask over `edges`.
pub struct Brute {
    pub edges: Vec<Edge>,
    /// `sparse[s]`: subset `s` is (2,k)-sparse by direct counting.
    pub sparse: Vec<bool>,
}

impl Brute {
    pub fn new(g: &Graph, k: usize) -> Brute {
        let edges = g.edges();
        let m = edges.len();
        assert!(m <= 20, "brute force needs few edges");
        let n = g.n();
        let inside: Vec<(u32, usize)> = (1u32..1 << n)
            .filter(|x| x.count_ones() >= 2)
            .map(|x| {
                let mask = edges
                    .iter()
                    .enumerate()
                    .filter(|(_, &(u, v))| x >> u & 1 == 1 && x >> v & 1 == 1)
                    .fold(0u32, |acc, (i, _)| acc | 1 << i);
                (mask, x.count_ones() as usize)
            })
            .collect();
        let sparse = (0u32..1 << m)
            .map(|s| inside.iter().all(|&(mask, size)| ((s & mask).count_ones() as usize) + k <= 2 * size))
            .collect();
        Brute { edges, sparse }
    }

    pub fn full(&self) -> u32 {
        ((1u64 << self.edges.len()) - 1) as u32
    }

    pub fn mask_of(&self, set: &[Edge]) -> u32 {
        set.iter()
            .map(|e| 1u32 << self.edges.iter().position(|f| f == e).expect("edge of the graph"))
            .fold(0, |a, b| a | b)
    }

    pub fn set_of(&self, mask: u32) -> Vec<Edge> {
        (0..self.edges.len()).filter(|i| mask >> i & 1 == 1).map(|i| self.edges[i]).collect()
    }

    /// Largest sparse subset of `s`.
    pub fn rank(&self, s: u32) -> usize {
        let mut best = 0;
        let mut sub = s;
        loop {
            if self.sparse[sub as usize] {
                best = best.max(sub.count_ones() as usize);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & s;
        }
        best
    }

    pub fn is_circuit(&self, s: u32) -> bool {
        s != 0
            && !self.sparse[s as usize]
            && (0..self.edges.len()).filter(|i| s >> i & 1 == 1).all(|i| self.sparse[(s & !(1 << i)) as usize])
    }

    pub fn circuits(&self) -> Vec<u32> {
        (1..=self.full()).filter(|&s| self.is_circuit(s)).collect()
    }

    /// Edge classes of "lie in a common circuit", singletons included.
    pub fn components(&self) -> Vec<Vec<Edge>> {
        let m = self.edges.len();
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for c in self.circuits() {
            let idx: Vec<usize> = (0..m).filter(|i| c >> i & 1 == 1).collect();
            for w in idx.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                parent[a] = b;
            }
        }
        let mut classes: Vec<Vec<Edge>> = Vec::new();
        let mut root_of: Vec<Option<usize>> = vec![None; m];
        for i in 0..m {
            let r = find(&mut parent, i);
            match root_of[r] {
                Some(c) => classes[c].push(self.edges[i]),
                None => {
                    root_of[r] = Some(classes.len());
                    classes.push(vec![self.edges[i]]);
                }
            }
        }
        normalise(classes)
    }
}

pub fn normalise(mut classes: Vec<Vec<Edge>>) -> Vec<Vec<Edge>> {
    for c in &mut classes {
        c.sort();
    }
    classes.sort();
    classes
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative of every isomorphism class of graphs on `n` vertices.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<Edge> = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    let index = |u: usize, v: usize| pairs.iter().position(|&e| e == (u.min(v), u.max(v))).unwrap();
    let tables: Vec<Vec<usize>> = permutations(n)
        .iter()
        .map(|p| pairs.iter().map(|&(u, v)| index(p[u], p[v])).collect())
        .collect();
    let mut seen: HashSet<u32> = HashSet::new();
    let mut reps = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let canon = tables
            .iter()
            .map(|t| (0..pairs.len()).filter(|i| mask >> i & 1 == 1).fold(0u32, |a, i| a | 1 << t[i]))
            .min()
            .unwrap_or(0);
        if seen.insert(canon) {
            let edges = (0..pairs.len()).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]);
            reps.push(Graph::from_edges(n, edges).unwrap());
        }
    }
    reps
}

/// Seeded mix of G(n, p) graphs and grown M(2,2)-connected graphs, n ≤ 10.
pub fn corpus(size: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(size);
    while out.len() < size {
        let g = if out.len() % 4 == 0 {
            random_m22_graph(rng.random_range(0..6), rng.random())
        } else {
            let n = rng.random_range(4..=10);
            let p = rng.random_range(0.35..0.95);
            gnp(n, p, &mut rng).unwrap()
        };
        if g.n() <= 10 && g.m() > 0 {
            out.push(g);
        }
    }
    out
}
