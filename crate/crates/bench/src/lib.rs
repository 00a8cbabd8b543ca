//! Benchmark inputs for normrig.

use normrig::{named, random_m22_graph, Graph};

/// Named graphs plus grown M(2,2)-connected graphs of increasing size.
pub fn fixtures() -> Vec<(String, Graph)> {
    let mut out = vec![
        ("k3,6".to_string(), named::complete_bipartite(3, 6)),
        ("k4-ring".to_string(), named::k4_ring()),
        ("k8".to_string(), named::complete(8)),
    ];
    for steps in [10, 25, 50] {
        let g = random_m22_graph(steps, steps as u64);
        out.push((format!("m22-{}v", g.n()), g));
    }
    out
}
