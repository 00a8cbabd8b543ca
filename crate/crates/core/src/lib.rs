//! Global rigidity of graphs in analytic normed planes.
//!
//! The combinatorial side works with the (2,k)-sparsity matroids through a
//! pebble game: ranks, fundamental circuits, M(2,2)-components and ear
//! decompositions. On top of that sit the construction moves (extensions,
//! splits, joins and their inverses), a reduction engine that walks any
//! M(2,2)-connected graph down to K5⁻ or B1, and the global rigidity verdict.
//!
//! The numeric side builds rigidity operators for ℓp planes at random
//! rational placements and computes their rank exactly or in floating point.
//!
//! ```
//! use normrig::{named, is_globally_rigid_analytic};
//! assert!(is_globally_rigid_analytic(&named::b1()).globally_rigid_analytic);
//! assert!(!is_globally_rigid_analytic(&named::wheel(5)).globally_rigid_analytic);
//! ```

pub mod connectivity;
pub mod decide;
pub mod generate;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod iso;
pub mod moves;
pub mod sparsity;

pub use connectivity::{articulation_points, edge_connectivity, enumerate_separations, is_k_connected, Separation};
pub use decide::{
    certify, globally_rigid_analytic, hendrickson_check, is_globally_rigid_analytic, is_globally_rigid_euclidean,
    sufficient_checks, DecideError, Reason, RigidityReport, SufficientCondition,
};
pub use generate::{gnp, random_regular, run_experiment, ExperimentRow, GenerateError, Model};
pub use geometry::{
    cut_vertex_counterexample, framework_rank, random_regular_placement, rank_of, rigidity_operator, GeometryError,
    NormedPlane, Placement, RankMode,
};
pub use graph::{edge, named, Edge, Graph, GraphError};
pub use io::{FormatError, GraphFormat};
pub use iso::{find_isomorphism, is_isomorphic};
pub use moves::{
    apply, find_admissible_reduction, join, random_m22_graph, reduce_to_base, BaseGraph, Gluing, Move, MoveError,
    MoveKind, MoveScript, ReductionTrace,
};
pub use sparsity::{ear_decomposition, is_circuit22, is_m22_connected, m22_components, rank2k, EarDecomposition, PebbleGame};
