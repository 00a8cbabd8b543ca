mod common;

use normrig::moves::{inverse, random_forward_move, reduction_candidates, separations_of, Joined};
use normrig::*;
use rand::seq::{IndexedRandom, SliceRandom};
use std::collections::BTreeMap;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random 1-extension that leaves `keep` (a K4 and its two degree-3 vertices) alone.
fn one_extension(g: &Graph, rng: &mut ChaCha8Rng, keep: &[usize]) -> Move {
    loop {
        let edges = g.edges();
        let &(x, y) = edges.choose(rng).unwrap();
        let z = rng.random_range(0..g.n());
        let touches_k4 = keep.contains(&x) && keep.contains(&y);
        let touches_nodes = keep.len() == 4 && (keep[2..].contains(&z) || keep[2..].contains(&x) || keep[2..].contains(&y));
        if z != x && z != y && !touches_k4 && !touches_nodes {
            return Move::OneExtension { x, y, z };
        }
    }
}

/// A circuit grown from a base by fewer than `max_steps` 1-extensions.
fn random_circuit(rng: &mut ChaCha8Rng, max_steps: usize) -> Graph {
    let steps = rng.random_range(0..max_steps);
    let mut g = if rng.random_bool(0.5) { named::k5_minus() } else { named::b1() };
    for _ in 0..steps {
        g = apply(&g, &one_extension(&g, rng, &[])).unwrap();
    }
    g
}

/// A circuit containing the K4 `[2, 3, 0, 1]` with 0 and 1 of degree 3.
fn circuit_with_k4(rng: &mut ChaCha8Rng, max_steps: usize) -> Graph {
    let steps = rng.random_range(0..max_steps);
    let keep = [2, 3, 0, 1];
    let mut g = named::b1();
    for _ in 0..steps {
        g = apply(&g, &one_extension(&g, rng, &keep)).unwrap();
    }
    g
}

fn origins(map: &[Option<usize>]) -> Vec<usize> {
    let mut out: Vec<usize> = map.iter().flatten().copied().collect();
    out.sort_unstable();
    out
}

fn node(g: &Graph, rng: &mut ChaCha8Rng) -> usize {
    let nodes: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == 3).collect();
    *nodes.choose(rng).unwrap()
}

#[test]
fn one_extensions_keep_circuits() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let g = random_circuit(&mut rng, 6);
        assert!(is_circuit22(&g).unwrap());
        let h = circuit_with_k4(&mut rng, 6);
        assert!(is_circuit22(&h).unwrap());
        assert_eq!((h.degree(0), h.degree(1)), (3, 3));
    }
}

#[test]
fn joins_of_circuits_are_circuits() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for i in 0..200 {
        let (g1, g2, gluing) = match i % 3 {
            0 => {
                let g1 = random_circuit(&mut rng, 5);
                let ab = *g1.edges().choose(&mut rng).unwrap();
                (g1, circuit_with_k4(&mut rng, 5), Gluing::One { ab, k4: [2, 3, 0, 1] })
            }
            1 => {
                let g1 = circuit_with_k4(&mut rng, 5);
                let g2 = circuit_with_k4(&mut rng, 5);
                (g1, g2, Gluing::Two { k4_1: [2, 3, 0, 1], k4_2: [2, 3, 0, 1] })
            }
            _ => {
                let g1 = random_circuit(&mut rng, 5);
                let g2 = random_circuit(&mut rng, 5);
                let (v1, v2) = (node(&g1, &mut rng), node(&g2, &mut rng));
                let n1: Vec<usize> = g1.neighbors(v1).collect();
                let mut n2: Vec<usize> = g2.neighbors(v2).collect();
                n2.shuffle(&mut rng);
                let pairs = [(n1[0], n2[0]), (n1[1], n2[1]), (n1[2], n2[2])];
                (g1, g2, Gluing::Three { v1, v2, pairs })
            }
        };
        let Joined { graph, .. } = join(&g1, &g2, &gluing).unwrap();
        assert!(is_circuit22(&graph).unwrap(), "instance {i}: {gluing:?}");
        assert_eq!(graph.m() + 1, 2 * graph.n());
    }
}

#[test]
fn separations_of_circuits_are_circuits() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut seen = 0;
    for i in 0..120 {
        let g = if i % 2 == 0 {
            let g1 = random_circuit(&mut rng, 3);
            let ab = *g1.edges().choose(&mut rng).unwrap();
            join(&g1, &circuit_with_k4(&mut rng, 3), &Gluing::One { ab, k4: [2, 3, 0, 1] }).unwrap().graph
        } else {
            random_circuit(&mut rng, 6)
        };
        let mut one_seps: BTreeMap<(Vec<usize>, Vec<usize>), Vec<bool>> = BTreeMap::new();
        for j in 1..=3 {
            for sep in separations_of(&g, j) {
                let both = is_circuit22(&sep.g1).unwrap() && is_circuit22(&sep.g2).unwrap();
                if j == 1 {
                    let sides = [origins(&sep.origin1), origins(&sep.origin2)];
                    let key = if sides[0] < sides[1] { (sides[0].clone(), sides[1].clone()) } else { (sides[1].clone(), sides[0].clone()) };
                    one_seps.entry(key).or_default().push(both);
                } else {
                    assert!(both, "instance {i}, j={j}");
                }
                let rebuilt = join(&sep.g1, &sep.g2, &sep.gluing).unwrap().graph;
                assert!(is_isomorphic(&rebuilt, &g));
                seen += 1;
            }
        }
        for (key, orders) in one_seps {
            assert_eq!(orders.len(), 2, "instance {i}: {key:?}");
            assert_eq!(orders.iter().filter(|&&b| b).count(), 1, "instance {i}: {key:?}");
        }
    }
    assert!(seen > 50);
}

#[test]
fn forward_moves_keep_m22_connectivity() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..200u64 {
        let steps = rng.random_range(0..10);
        let g = random_m22_graph(steps, i);
        let m = match i % 4 {
            0 => one_extension(&g, &mut rng, &[]),
            1 => {
                let non_edges: Vec<Edge> = (0..g.n())
                    .flat_map(|u| (u + 1..g.n()).map(move |v| (u, v)))
                    .filter(|&(u, v)| !g.has_edge(u, v))
                    .collect();
                match non_edges.choose(&mut rng) {
                    Some(&(u, v)) => Move::EdgeAddition { u, v },
                    None => continue,
                }
            }
            2 => {
                let &(v1, v2) = g.edges().choose(&mut rng).unwrap();
                Move::K4Extension { v1, v2 }
            }
            _ => random_forward_move(&g, &mut rng),
        };
        let h = apply(&g, &m).unwrap();
        assert!(is_m22_connected(&h), "seed {i}: {m}");
    }
}

#[test]
fn reductions_exist_and_traces_are_short() {
    for seed in 0..150u64 {
        let g = random_m22_graph((seed % 12) as usize, 100 + seed);
        if g.n() > 14 {
            continue;
        }
        let found = find_admissible_reduction(&g).unwrap();
        assert_eq!(found.is_none(), BaseGraph::recognise(&g).is_some(), "seed {seed}");
        let trace = reduce_to_base(&g).unwrap();
        assert!(trace.steps.len() + 14 <= g.n() + g.m());
    }
}

#[test]
fn inverses_round_trip_for_every_kind() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut kinds = std::collections::BTreeSet::new();
    for i in 0..150u64 {
        let steps = rng.random_range(2..10);
        let g = random_m22_graph(steps, 300 + i);
        let mut moves: Vec<Move> = reduction_candidates(&g).into_iter().filter(|m| m.check(&g).is_ok()).collect();
        moves.push(random_forward_move(&g, &mut rng));
        moves.push(one_extension(&g, &mut rng, &[]));
        let m = moves.choose(&mut rng).unwrap().clone();
        let h = apply(&g, &m).unwrap();
        let inv = inverse(&g, &m).unwrap();
        let back = apply(&h, &inv.mv).unwrap();
        for (u, v) in g.edges() {
            assert!(back.has_edge(inv.map[u], inv.map[v]), "{m} then {}", inv.mv);
        }
        assert_eq!(back.m(), g.m());
        kinds.insert(m.kind());
    }
    assert!(kinds.len() >= 6, "{kinds:?}");
}
