//! Seeded random graphs and the global-rigidity frequency experiment.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::decide::globally_rigid_analytic;
use crate::graph::Graph;
use crate::moves::random_m22_graph;

/// Give up on the pairing model after this many rejected pairings.
pub const MAX_PAIRING_ATTEMPTS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("no {k}-regular graph on {n} vertices")]
    NoRegularGraph { n: usize, k: usize },
    #[error("pairing model found no simple {k}-regular graph on {n} vertices")]
    PairingFailed { n: usize, k: usize },
    #[error("edge probability {0} outside [0, 1]")]
    BadProbability(f64),
}

/// Erdős–Rényi G(n, p).
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph, GenerateError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GenerateError::BadProbability(p));
    }
    let mut g = Graph::empty(n);
    for v in 1..n {
        for u in 0..v {
            if rng.random_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// Uniform random perfect matching of `n·k` half-edges, rejected and redrawn
/// until it has no loops or repeated edges.
pub fn random_regular<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Result<Graph, GenerateError> {
    if (n * k) % 2 == 1 || (n > 0 && k >= n) {
        return Err(GenerateError::NoRegularGraph { n, k });
    }
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, k)).collect();
    'attempt: for _ in 0..MAX_PAIRING_ATTEMPTS {
        points.shuffle(rng);
        let mut g = Graph::empty(n);
        for pair in points.chunks_exact(2) {
            if pair[0] == pair[1] || !g.add_edge(pair[0], pair[1]) {
                continue 'attempt;
            }
        }
        return Ok(g);
    }
    Err(GenerateError::PairingFailed { n, k })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    Gnp { p: f64 },
    Regular { k: usize },
    /// `steps` random forward moves from a base graph; `n` is ignored.
    M22 { steps: usize },
}

impl Model {
    pub fn name(&self) -> &'static str {
        match self {
            Model::Gnp { .. } => "gnp",
            Model::Regular { .. } => "regular",
            Model::M22 { .. } => "m22",
        }
    }

    pub fn sample(&self, n: usize, seed: u64) -> Result<Graph, GenerateError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match *self {
            Model::Gnp { p } => gnp(n, p, &mut rng),
            Model::Regular { k } => random_regular(n, k, &mut rng),
            Model::M22 { steps } => Ok(random_m22_graph(steps, seed)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRow {
    pub n: usize,
    pub samples: usize,
    pub globally_rigid: usize,
    /// Per-sample seeds of graphs that were not globally rigid.
    pub failures: Vec<u64>,
}

impl ExperimentRow {
    pub fn frequency(&self) -> f64 {
        if self.samples == 0 {
            0.0
        } else {
            self.globally_rigid as f64 / self.samples as f64
        }
    }
}

/// One row per `n`. Sample seeds come from a single master generator in
/// order; samples may be evaluated concurrently but are tallied by index.
pub fn run_experiment(model: Model, ns: &[usize], samples: usize, seed: u64) -> Result<Vec<ExperimentRow>, GenerateError> {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let seeds: Vec<u64> = (0..samples).map(|_| master.random()).collect();
        let verdicts = seeds
            .par_iter()
            .map(|&s| model.sample(n, s).map(|g| globally_rigid_analytic(&g)))
            .collect::<Result<Vec<bool>, _>>()?;
        let failures: Vec<u64> = seeds.iter().zip(&verdicts).filter(|(_, &ok)| !ok).map(|(&s, _)| s).collect();
        rows.push(ExperimentRow { n, samples, globally_rigid: samples - failures.len(), failures });
    }
    Ok(rows)
}
