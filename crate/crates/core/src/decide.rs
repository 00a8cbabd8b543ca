//! Global rigidity decisions: the analytic-plane characterisation with
//! certificates, its necessary conditions, sufficient conditions, the
//! Euclidean comparison and numeric cross-checks.

use nalgebra::DMatrix;
use thiserror::Error;

use crate::connectivity::{articulation_points, edge_connectivity, is_k_connected};
use crate::geometry::{
    edge_deleted_ranks, framework_rank, random_regular_placement, GeometryError, NormedPlane, RankMode,
};
use crate::graph::{Edge, Graph};
use crate::iso::{is_edge_transitive, is_vertex_transitive};
use crate::sparsity::{ear_decomposition, is_m22_connected, m22_components, rank2k, EarDecomposition};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DecideError {
    #[error("graph is not globally rigid in the Euclidean plane")]
    NotEuclideanGloballyRigid,
    #[error("graph needs at least {0} vertices")]
    TooSmall(usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Why a graph fails (or which structure certifies it).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reason {
    /// Fewer than five vertices: too small to contain a (2,2)-circuit.
    TooFewVertices(usize),
    Disconnected,
    CutVertex(usize),
    /// Rank of the (2,2) matroid below `2n - 2`.
    NotSpanningTight { rank: usize, target: usize },
    /// An edge lying in no (2,2)-circuit.
    EdgeInNoCircuit(Edge),
    /// Two edges in different matroid components.
    SeparateComponents(Edge, Edge),
    /// The graph is 2-connected and an ear decomposition exists.
    EarDecomposition(EarDecomposition),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SufficientCondition {
    /// 2-connected and 4-edge-connected.
    EdgeConnectivity,
    /// δ ≥ max{4, n/2}.
    MinDegree,
    /// `G − v` rigid for every vertex `v` (n ≥ 3).
    VertexDeletedRigid,
    /// Connected, δ ≥ 4, vertex- or edge-transitive.
    Transitive,
    /// 2-connected, δ ≥ 5 and algebraic connectivity above 4/(δ+1).
    Spectral,
}

impl SufficientCondition {
    pub fn name(self) -> &'static str {
        match self {
            SufficientCondition::EdgeConnectivity => "edge-connectivity",
            SufficientCondition::MinDegree => "min-degree",
            SufficientCondition::VertexDeletedRigid => "vertex-deleted-rigid",
            SufficientCondition::Transitive => "transitive",
            SufficientCondition::Spectral => "spectral",
        }
    }
}

/// Largest graph for which transitivity is searched.
pub const TRANSITIVITY_LIMIT: usize = 12;

/// Outcome of [`sufficient_checks`].
#[derive(Debug, Clone, PartialEq)]
pub struct SufficientReport {
    pub fired: Vec<SufficientCondition>,
    /// With δ ≥ 4 and Δ ≤ n − 5, at least one of `G` and its complement is
    /// globally rigid; this does not speak for `G` alone.
    pub complement_dichotomy: bool,
    pub algebraic_connectivity: Option<f64>,
    pub notices: Vec<String>,
}

/// Numeric cross-check at one random placement.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericAgreement {
    pub p: f64,
    pub seed: u64,
    pub exact: bool,
    pub rank: usize,
    pub target: usize,
    pub edge_deleted_ranks: Vec<usize>,
    pub inf_rigid: bool,
    pub redundantly_rigid: bool,
    /// Numeric rigidity and redundant rigidity both match the matroid predictions.
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RigidityReport {
    pub n: usize,
    pub m: usize,
    pub globally_rigid_analytic: bool,
    pub two_connected: bool,
    pub m22_connected: bool,
    pub reasons: Vec<Reason>,
    pub sufficient: SufficientReport,
    pub euclidean_verdict: bool,
    pub numeric_agreement: Option<NumericAgreement>,
}

/// Rank of `E − e` in the (2,2) matroid is `2n − 2` for every edge `e`.
pub fn is_redundantly_rigid_combinatorial(g: &Graph) -> bool {
    let edges = g.edges();
    let target = (2 * g.n()).saturating_sub(2);
    if rank2k(&edges, 2).unwrap() != target {
        return false;
    }
    (0..edges.len()).all(|i| {
        let rest: Vec<Edge> = edges.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &e)| e).collect();
        rank2k(&rest, 2).unwrap() == target
    })
}

/// Spanning (2,2)-tight: rank `2n − 2`.
pub fn is_rigid_combinatorial(g: &Graph) -> bool {
    rank2k(&g.edges(), 2).unwrap() == (2 * g.n()).saturating_sub(2)
}

fn failure_reasons(g: &Graph) -> Vec<Reason> {
    let mut reasons = Vec::new();
    if !g.is_connected() {
        reasons.push(Reason::Disconnected);
    } else if let Some(&u) = articulation_points(g).first() {
        reasons.push(Reason::CutVertex(u));
    }
    let edges = g.edges();
    let rank = rank2k(&edges, 2).unwrap();
    let target = (2 * g.n()).saturating_sub(2);
    if rank < target {
        reasons.push(Reason::NotSpanningTight { rank, target });
    }
    let coloop = (0..edges.len()).find(|&i| {
        let rest: Vec<Edge> = edges.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &e)| e).collect();
        rank2k(&rest, 2).unwrap() < rank
    });
    if let Some(i) = coloop {
        reasons.push(Reason::EdgeInNoCircuit(edges[i]));
    } else if let Ok(parts) = m22_components(g) {
        if parts.len() > 1 {
            reasons.push(Reason::SeparateComponents(parts[0][0], parts[1][0]));
        }
    }
    reasons
}

/// Verdict only, without certificates or side checks.
pub fn globally_rigid_analytic(g: &Graph) -> bool {
    g.n() >= 5 && is_k_connected(g, 2) && is_m22_connected(g)
}

/// Global rigidity in analytic normed planes: at least five vertices,
/// 2-connected and M(2,2)-connected. Includes certificates, sufficient
/// conditions and the Euclidean verdict.
pub fn is_globally_rigid_analytic(g: &Graph) -> RigidityReport {
    let two_connected = is_k_connected(g, 2);
    let m22 = g.n() >= 5 && is_m22_connected(g);
    let verdict = two_connected && m22;
    let mut reasons = Vec::new();
    if g.n() < 5 {
        reasons.push(Reason::TooFewVertices(g.n()));
    }
    if verdict {
        let ear = ear_decomposition(g).ok().flatten().expect("M(2,2)-connected graphs have ear decompositions");
        reasons.push(Reason::EarDecomposition(ear));
    } else if g.n() >= 5 {
        reasons.extend(failure_reasons(g));
    }
    RigidityReport {
        n: g.n(),
        m: g.m(),
        globally_rigid_analytic: verdict,
        two_connected,
        m22_connected: m22,
        reasons,
        sufficient: sufficient_checks(g),
        euclidean_verdict: g.n() >= 2 && is_globally_rigid_euclidean(g),
        numeric_agreement: None,
    }
}

/// The two necessary conditions, evaluated separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HendricksonReport {
    pub two_connected: bool,
    pub cut_vertex: Option<usize>,
    pub spanning_tight: bool,
    pub every_edge_in_circuit: bool,
    pub redundantly_rigid: bool,
}

impl HendricksonReport {
    pub fn passes(&self) -> bool {
        self.two_connected && self.redundantly_rigid
    }
}

pub fn hendrickson_check(g: &Graph) -> HendricksonReport {
    let edges = g.edges();
    let rank = rank2k(&edges, 2).unwrap();
    let spanning_tight = rank == (2 * g.n()).saturating_sub(2);
    let every_edge_in_circuit = !edges.is_empty()
        && (0..edges.len()).all(|i| {
            let rest: Vec<Edge> = edges.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &e)| e).collect();
            rank2k(&rest, 2).unwrap() == rank
        });
    HendricksonReport {
        two_connected: is_k_connected(g, 2),
        cut_vertex: articulation_points(g).first().copied(),
        spanning_tight,
        every_edge_in_circuit,
        redundantly_rigid: spanning_tight && every_edge_in_circuit,
    }
}

/// Second smallest Laplacian eigenvalue.
pub fn algebraic_connectivity(g: &Graph) -> f64 {
    let n = g.n();
    if n < 2 {
        return 0.0;
    }
    let mut l = DMatrix::<f64>::zeros(n, n);
    for (u, v) in g.edges() {
        l[(u, v)] = -1.0;
        l[(v, u)] = -1.0;
        l[(u, u)] += 1.0;
        l[(v, v)] += 1.0;
    }
    let mut ev: Vec<f64> = l.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev[1]
}

const SPECTRAL_TOL: f64 = 1e-9;

pub fn sufficient_checks(g: &Graph) -> SufficientReport {
    let n = g.n();
    let delta = if n == 0 { 0 } else { g.min_degree() };
    let two_connected = is_k_connected(g, 2);
    let mut fired = Vec::new();
    let mut notices = Vec::new();
    if two_connected && edge_connectivity(g) >= 4 {
        fired.push(SufficientCondition::EdgeConnectivity);
    }
    if delta >= 4 && 2 * delta >= n {
        fired.push(SufficientCondition::MinDegree);
    }
    if n >= 3
        && (0..n).all(|v| {
            let (h, _) = g.remove_vertices(&[v]);
            is_rigid_combinatorial(&h)
        })
    {
        fired.push(SufficientCondition::VertexDeletedRigid);
    }
    if delta >= 4 && g.is_connected() {
        if n <= TRANSITIVITY_LIMIT {
            if is_vertex_transitive(g) || is_edge_transitive(g) {
                fired.push(SufficientCondition::Transitive);
            }
        } else {
            notices.push(format!("transitivity not checked for n > {TRANSITIVITY_LIMIT}"));
        }
    }
    let mut mu = None;
    if two_connected && delta >= 5 {
        let a = algebraic_connectivity(g);
        mu = Some(a);
        if a > 4.0 / (delta as f64 + 1.0) + SPECTRAL_TOL {
            fired.push(SufficientCondition::Spectral);
        }
    }
    let complement_dichotomy = n > 0 && delta >= 4 && g.max_degree() + 5 <= n;
    SufficientReport { fired, complement_dichotomy, algebraic_connectivity: mu, notices }
}

/// Generic global rigidity in the Euclidean plane: a complete graph on at most
/// three vertices, or 3-connected and redundantly rigid in the (2,3) matroid.
pub fn is_globally_rigid_euclidean(g: &Graph) -> bool {
    let n = g.n();
    if n <= 3 {
        return n >= 1 && g.m() == n * (n - 1) / 2;
    }
    if !is_k_connected(g, 3) {
        return false;
    }
    let edges = g.edges();
    let target = 2 * n - 3;
    if rank2k(&edges, 3).unwrap() != target {
        return false;
    }
    (0..edges.len()).all(|i| {
        let rest: Vec<Edge> = edges.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &e)| e).collect();
        rank2k(&rest, 3).unwrap() == target
    })
}

/// For a graph globally rigid in the Euclidean plane: whether it is also
/// globally rigid in analytic normed planes, decided by `|E| > 2n − 2`.
pub fn euclidean_transfer(g: &Graph) -> Result<bool, DecideError> {
    if g.n() < 2 {
        return Err(DecideError::TooSmall(2));
    }
    if !is_globally_rigid_euclidean(g) {
        return Err(DecideError::NotEuclideanGloballyRigid);
    }
    Ok(g.m() + 2 > 2 * g.n())
}

/// The combinatorial report plus a rank computation at a random placement
/// in `plane` (exact for even p).
pub fn certify(g: &Graph, plane: &NormedPlane, seed: u64) -> Result<RigidityReport, DecideError> {
    if g.n() < 2 {
        return Err(DecideError::TooSmall(2));
    }
    let mut report = is_globally_rigid_analytic(g);
    let placement = random_regular_placement(g, seed)?;
    let mode = RankMode::preferred(&placement, plane);
    let k = plane.trivial_flex_dim();
    let target = 2 * g.n() - plane.trivial_flex_dim();
    let rank = framework_rank(g, &placement, plane, mode)?;
    let deleted = edge_deleted_ranks(g, &placement, plane, mode)?;
    let inf_rigid = rank == target;
    let redundantly_rigid = inf_rigid && deleted.iter().all(|&r| r == target);
    let edges = g.edges();
    let comb_rank = rank2k(&edges, k).unwrap();
    let comb_deleted: Vec<usize> = (0..edges.len())
        .map(|i| {
            let rest: Vec<Edge> = edges.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &e)| e).collect();
            rank2k(&rest, k).unwrap()
        })
        .collect();
    let agrees = rank == comb_rank && deleted == comb_deleted;
    report.numeric_agreement = Some(NumericAgreement {
        p: plane.p(),
        seed,
        exact: matches!(mode, RankMode::Exact),
        rank,
        target,
        edge_deleted_ranks: deleted,
        inf_rigid,
        redundantly_rigid,
        agrees,
    });
    Ok(report)
}
