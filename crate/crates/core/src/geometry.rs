//! ℓp planes, placements, rigidity operators and their ranks, z-reflections
//! and the cut-vertex counterexample.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::connectivity::articulation_points;
use crate::graph::{Edge, Graph};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("exponent {0} must satisfy 1 < p < infinity")]
    BadExponent(f64),
    #[error("placement has {0} points for a graph on {1} vertices")]
    SizeMismatch(usize, usize),
    #[error("edge {0}-{1} has coincident endpoints")]
    Coincident(usize, usize),
    #[error("exact rank needs rational entries (rational placement with p = 2 or scaled even p)")]
    NotExact,
    #[error("no well-positioned placement after {0} attempts")]
    Degenerate(usize),
    #[error("z must be nonzero")]
    ZeroVector,
    #[error("root finding failed: {0}")]
    NoConvergence(String),
}

/// The plane R² with the ℓp norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormedPlane {
    p: f64,
}

/// The signed coordinate permutations, as row-major 2×2 matrices.
pub const SIGNED_PERMUTATIONS: [[i8; 4]; 8] = [
    [1, 0, 0, 1],
    [-1, 0, 0, 1],
    [1, 0, 0, -1],
    [-1, 0, 0, -1],
    [0, 1, 1, 0],
    [0, -1, 1, 0],
    [0, 1, -1, 0],
    [0, -1, -1, 0],
];

impl NormedPlane {
    pub fn lp(p: f64) -> Result<Self, GeometryError> {
        if p.is_finite() && p > 1.0 {
            Ok(NormedPlane { p })
        } else {
            Err(GeometryError::BadExponent(p))
        }
    }

    pub fn euclidean() -> Self {
        NormedPlane { p: 2.0 }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn is_euclidean(&self) -> bool {
        self.p == 2.0
    }

    /// Dimension of the space of trivial infinitesimal flexes: translations,
    /// plus rotations in the Euclidean case.
    pub fn trivial_flex_dim(&self) -> usize {
        if self.is_euclidean() {
            3
        } else {
            2
        }
    }

    /// `Some(p)` when p is an even integer.
    pub fn even_exponent(&self) -> Option<u32> {
        let r = self.p.round();
        (r == self.p && r >= 2.0 && (r as u32).is_multiple_of(2)).then_some(r as u32)
    }

    /// Linear isometries when there are finitely many (every p ≠ 2).
    pub fn isometries(&self) -> Option<&'static [[i8; 4]; 8]> {
        (!self.is_euclidean()).then_some(&SIGNED_PERMUTATIONS)
    }

    pub fn norm(&self, x: [f64; 2]) -> f64 {
        let p = self.p;
        let m = x[0].abs().max(x[1].abs());
        if m == 0.0 {
            return 0.0;
        }
        m * ((x[0].abs() / m).powf(p) + (x[1].abs() / m).powf(p)).powf(1.0 / p)
    }

    /// Norm of the dual ℓq space, 1/p + 1/q = 1.
    pub fn dual_norm(&self, f: [f64; 2]) -> f64 {
        let q = self.p / (self.p - 1.0);
        NormedPlane { p: q }.norm(f)
    }
}

/// The support functional of `x`: the functional φ with φ(x) = ‖x‖² and dual
/// norm ‖x‖, given by its two coefficients. The zero vector maps to zero.
pub fn support_functional(x: [f64; 2], plane: &NormedPlane) -> [f64; 2] {
    let p = plane.p();
    let nx = plane.norm(x);
    if nx == 0.0 {
        return [0.0, 0.0];
    }
    let c = |t: f64| t.signum() * t.abs().powf(p - 1.0) / nx.powf(p - 2.0);
    if plane.is_euclidean() {
        x
    } else {
        [c(x[0]), c(x[1])]
    }
}

pub type Point = [BigRational; 2];

/// Vertex positions, either exact rationals or floats.
#[derive(Debug, Clone, PartialEq)]
pub enum Placement {
    Exact(Vec<Point>),
    Float(Vec<[f64; 2]>),
}

fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Placement {
    pub fn len(&self) -> usize {
        match self {
            Placement::Exact(v) => v.len(),
            Placement::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Placement::Exact(_))
    }

    pub fn point(&self, v: usize) -> [f64; 2] {
        match self {
            Placement::Exact(ps) => [rat_to_f64(&ps[v][0]), rat_to_f64(&ps[v][1])],
            Placement::Float(ps) => ps[v],
        }
    }

    pub fn to_float(&self) -> Placement {
        Placement::Float((0..self.len()).map(|v| self.point(v)).collect())
    }

    /// Every edge has distinct endpoints.
    pub fn check_well_positioned(&self, g: &Graph) -> Result<(), GeometryError> {
        if self.len() != g.n() {
            return Err(GeometryError::SizeMismatch(self.len(), g.n()));
        }
        for (u, v) in g.edges() {
            let same = match self {
                Placement::Exact(ps) => ps[u] == ps[v],
                Placement::Float(ps) => ps[u] == ps[v],
            };
            if same {
                return Err(GeometryError::Coincident(u, v));
            }
        }
        Ok(())
    }

    /// Applies `x ↦ a·x + t` to every point, `a` a signed permutation.
    fn transform_exact(ps: &[Point], a: &[i8; 4], t: &Point) -> Vec<Point> {
        let s = |k: i8, x: &BigRational| match k {
            1 => x.clone(),
            -1 => -x.clone(),
            _ => BigRational::zero(),
        };
        ps.iter()
            .map(|p| {
                [
                    s(a[0], &p[0]) + s(a[1], &p[1]) + &t[0],
                    s(a[2], &p[0]) + s(a[3], &p[1]) + &t[1],
                ]
            })
            .collect()
    }
}

/// Entries of a rigidity operator.
#[derive(Debug, Clone, PartialEq)]
pub enum Entries {
    Exact(Vec<Vec<BigRational>>),
    Float(DMatrix<f64>),
}

/// The |E| × 2n matrix of support functionals of edge differences; row `i`
/// belongs to the `i`-th smallest edge `vw` and holds φ at `v`'s columns and
/// −φ at `w`'s.
#[derive(Debug, Clone, PartialEq)]
pub struct RigidityOperator {
    pub edges: Vec<Edge>,
    pub cols: usize,
    pub scaled: bool,
    pub entries: Entries,
}

impl RigidityOperator {
    pub fn rows(&self) -> usize {
        self.edges.len()
    }

    pub fn to_float(&self) -> DMatrix<f64> {
        match &self.entries {
            Entries::Float(m) => m.clone(),
            Entries::Exact(rows) => {
                DMatrix::from_fn(self.rows(), self.cols, |i, j| rat_to_f64(&rows[i][j]))
            }
        }
    }

    /// The operator applied to a velocity vector `(x_0, y_0, x_1, y_1, ...)`.
    pub fn apply_exact(&self, velocity: &[BigRational]) -> Option<Vec<BigRational>> {
        let Entries::Exact(rows) = &self.entries else {
            return None;
        };
        Some(
            rows.iter()
                .map(|r| r.iter().zip(velocity).fold(BigRational::zero(), |acc, (a, b)| acc + a * b))
                .collect(),
        )
    }
}

fn pow_rat(x: &BigRational, e: u32) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..e {
        out *= x;
    }
    out
}

/// Builds the rigidity operator. With `scaled`, each row is multiplied by
/// ‖p_v − p_w‖^{p−2}, so for even p and rational positions every entry is the
/// rational (d_i)^{p−1}; such operators (and all p = 2 operators of rational
/// placements) are stored exactly.
pub fn rigidity_operator(
    g: &Graph,
    placement: &Placement,
    plane: &NormedPlane,
    scaled: bool,
) -> Result<RigidityOperator, GeometryError> {
    placement.check_well_positioned(g)?;
    let edges = g.edges();
    let cols = 2 * g.n();
    let exact_power = match (placement, plane.even_exponent()) {
        (Placement::Exact(_), Some(2)) => Some(1),
        (Placement::Exact(_), Some(p)) if scaled => Some(p - 1),
        _ => None,
    };
    let entries = match (placement, exact_power) {
        (Placement::Exact(ps), Some(e)) => {
            let rows = edges
                .iter()
                .map(|&(v, w)| {
                    let mut row = vec![BigRational::zero(); cols];
                    for i in 0..2 {
                        let c = pow_rat(&(&ps[v][i] - &ps[w][i]), e);
                        row[2 * w + i] = -c.clone();
                        row[2 * v + i] = c;
                    }
                    row
                })
                .collect();
            Entries::Exact(rows)
        }
        _ => {
            let mut m = DMatrix::zeros(edges.len(), cols);
            for (r, &(v, w)) in edges.iter().enumerate() {
                let (a, b) = (placement.point(v), placement.point(w));
                let d = [a[0] - b[0], a[1] - b[1]];
                let mut phi = support_functional(d, plane);
                if scaled {
                    let s = plane.norm(d).powf(plane.p() - 2.0);
                    phi = [phi[0] * s, phi[1] * s];
                }
                for i in 0..2 {
                    m[(r, 2 * v + i)] = phi[i];
                    m[(r, 2 * w + i)] = -phi[i];
                }
            }
            Entries::Float(m)
        }
    };
    Ok(RigidityOperator { edges, cols, scaled, entries })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RankMode {
    /// Fraction-free elimination over the integers.
    Exact,
    /// Singular values above `tol` times the largest one.
    Float { tol: f64 },
}

impl RankMode {
    pub const DEFAULT_TOL: f64 = 1e-9;

    /// Exact when the operator would be rational, float otherwise.
    pub fn preferred(placement: &Placement, plane: &NormedPlane) -> RankMode {
        if placement.is_exact() && plane.even_exponent().is_some() {
            RankMode::Exact
        } else {
            RankMode::Float { tol: RankMode::DEFAULT_TOL }
        }
    }
}

/// Rank of an integer matrix by Bareiss elimination.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let v = (&a[i][j] * &a[rank][col] - &a[i][col] * &a[rank][j]) / &prev;
                a[i][j] = v;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Rank of a rational matrix: rows are cleared of denominators, then [`bareiss_rank`].
pub fn exact_rank(rows: &[Vec<BigRational>]) -> usize {
    let ints = rows
        .iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            r.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    bareiss_rank(ints)
}

/// Numerical rank: singular values above `tol` times the largest, after
/// rescaling every nonzero row to unit length (rank is unchanged by row
/// scaling, and this keeps rows of very different magnitude comparable).
pub fn float_rank(m: &DMatrix<f64>, tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let mut m = m.clone();
    for mut row in m.row_iter_mut() {
        let norm = row.norm();
        if norm > 0.0 {
            row /= norm;
        }
    }
    let sv = m.svd(false, false).singular_values;
    let top = sv.iter().cloned().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * top).count()
}

pub fn rank_of(op: &RigidityOperator, mode: RankMode) -> Result<usize, GeometryError> {
    match (mode, &op.entries) {
        (RankMode::Exact, Entries::Exact(rows)) => Ok(exact_rank(rows)),
        (RankMode::Exact, Entries::Float(_)) => Err(GeometryError::NotExact),
        (RankMode::Float { tol }, _) => Ok(float_rank(&op.to_float(), tol)),
    }
}

/// Rank of the operator of `g`, scaled whenever that makes it exact.
pub fn framework_rank(
    g: &Graph,
    placement: &Placement,
    plane: &NormedPlane,
    mode: RankMode,
) -> Result<usize, GeometryError> {
    let scaled = matches!(mode, RankMode::Exact);
    rank_of(&rigidity_operator(g, placement, plane, scaled)?, mode)
}

/// Rank equals `2n` minus the trivial flex dimension.
pub fn is_inf_rigid(g: &Graph, placement: &Placement, plane: &NormedPlane, mode: RankMode) -> Result<bool, GeometryError> {
    let target = (2 * g.n()).saturating_sub(plane.trivial_flex_dim());
    Ok(framework_rank(g, placement, plane, mode)? == target)
}

/// Ranks of the operator of `g − e` for each edge `e`, in edge order.
pub fn edge_deleted_ranks(
    g: &Graph,
    placement: &Placement,
    plane: &NormedPlane,
    mode: RankMode,
) -> Result<Vec<usize>, GeometryError> {
    let op = rigidity_operator(g, placement, plane, matches!(mode, RankMode::Exact))?;
    (0..op.rows())
        .map(|skip| match (&op.entries, mode) {
            (Entries::Exact(rows), RankMode::Exact) => {
                let rest: Vec<Vec<BigRational>> =
                    rows.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, r)| r.clone()).collect();
                Ok(exact_rank(&rest))
            }
            (_, RankMode::Exact) => Err(GeometryError::NotExact),
            (_, RankMode::Float { tol }) => {
                let m = op.to_float().remove_row(skip);
                Ok(float_rank(&m, tol))
            }
        })
        .collect()
}

/// `g − e` is infinitesimally rigid for every edge `e`.
pub fn is_redundantly_rigid(
    g: &Graph,
    placement: &Placement,
    plane: &NormedPlane,
    mode: RankMode,
) -> Result<bool, GeometryError> {
    let target = (2 * g.n()).saturating_sub(plane.trivial_flex_dim());
    Ok(edge_deleted_ranks(g, placement, plane, mode)?.iter().all(|&r| r == target))
}

pub const GRID_NUMERATOR: i64 = 1_000_000;
pub const GRID_DENOMINATOR: i64 = 1_000;
const PLACEMENT_RETRIES: usize = 100;

/// A random rational placement: numerators uniform in ±10^6 over 10^3,
/// redrawn until no edge difference has a zero coordinate.
pub fn random_regular_placement(g: &Graph, seed: u64) -> Result<Placement, GeometryError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..PLACEMENT_RETRIES {
        let nums: Vec<[i64; 2]> = (0..g.n())
            .map(|_| {
                [
                    rng.random_range(-GRID_NUMERATOR..=GRID_NUMERATOR),
                    rng.random_range(-GRID_NUMERATOR..=GRID_NUMERATOR),
                ]
            })
            .collect();
        let ok = g.edges().iter().all(|&(u, v)| nums[u][0] != nums[v][0] && nums[u][1] != nums[v][1]);
        if ok {
            return Ok(Placement::Exact(
                nums.iter()
                    .map(|c| [rat(c[0], GRID_DENOMINATOR), rat(c[1], GRID_DENOMINATOR)])
                    .collect(),
            ));
        }
    }
    Err(GeometryError::Degenerate(PLACEMENT_RETRIES))
}

fn cross(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

/// The z-reflection of `x`: the other point `y` with ‖y‖ = ‖x‖ and
/// ‖y − z‖ = ‖x − z‖, on the far side of the line through 0 and z. Points on
/// that line are fixed.
pub fn z_reflection(z: [f64; 2], x: [f64; 2], plane: &NormedPlane, tol: f64) -> Result<[f64; 2], GeometryError> {
    let nz = plane.norm(z);
    if nz == 0.0 {
        return Err(GeometryError::ZeroVector);
    }
    let r = plane.norm(x);
    let side = cross(z, x);
    if r == 0.0 || side.abs() <= tol * nz * r {
        return Ok(x);
    }
    let target = plane.norm([x[0] - z[0], x[1] - z[1]]);
    let theta_z = z[1].atan2(z[0]);
    let s = side.signum();
    let at = |t: f64| {
        let th = theta_z - s * t;
        let u = [th.cos(), th.sin()];
        let k = r / plane.norm(u);
        [k * u[0], k * u[1]]
    };
    let f = |t: f64| {
        let y = at(t);
        plane.norm([y[0] - z[0], y[1] - z[1]]) - target
    };
    let (mut lo, mut hi) = (0.0, std::f64::consts::PI);
    let scale = r + nz;
    if f(lo) > tol * scale || f(hi) < -tol * scale {
        return Err(GeometryError::NoConvergence("distance to z is not bracketed on the far arc".into()));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-16 {
            break;
        }
    }
    let t = 0.5 * (lo + hi);
    let residual = f(t).abs();
    if residual > tol * scale {
        return Err(GeometryError::NoConvergence(format!("residual {residual:e}")));
    }
    Ok(at(t))
}

/// Output of [`cut_vertex_counterexample`].
#[derive(Debug, Clone, PartialEq)]
pub struct CutVertexFlip {
    pub cut_vertex: usize,
    /// Vertices whose positions were negated.
    pub flipped: Vec<usize>,
    pub placement: Placement,
}

/// For a graph with a cut vertex `u`: translate so that `p_u = 0`, then negate
/// every position on one side of the cut. The result has the same edge
/// lengths as `placement`. `None` when `g` has no cut vertex.
pub fn cut_vertex_counterexample(g: &Graph, placement: &Placement) -> Option<CutVertexFlip> {
    let &u = articulation_points(g).first()?;
    let comps = g.components_avoiding(&[u]);
    let mut flipped: Vec<usize> = comps[1..].iter().flatten().copied().collect();
    flipped.sort_unstable();
    let flip = |v: usize| flipped.binary_search(&v).is_ok();
    let placement = match placement {
        Placement::Exact(ps) => Placement::Exact(
            (0..ps.len())
                .map(|v| {
                    let d = [&ps[v][0] - &ps[u][0], &ps[v][1] - &ps[u][1]];
                    if flip(v) {
                        [-d[0].clone(), -d[1].clone()]
                    } else {
                        d
                    }
                })
                .collect(),
        ),
        Placement::Float(ps) => Placement::Float(
            (0..ps.len())
                .map(|v| {
                    let d = [ps[v][0] - ps[u][0], ps[v][1] - ps[u][1]];
                    if flip(v) {
                        [-d[0], -d[1]]
                    } else {
                        d
                    }
                })
                .collect(),
        ),
    };
    Some(CutVertexFlip { cut_vertex: u, flipped, placement })
}

/// All edge lengths agree: exactly (comparing p-th powers) for rational
/// placements and even p, otherwise to relative tolerance `tol`.
pub fn is_equivalent(g: &Graph, p: &Placement, q: &Placement, plane: &NormedPlane, tol: f64) -> bool {
    if p.len() != g.n() || q.len() != g.n() {
        return false;
    }
    if let (Placement::Exact(a), Placement::Exact(b), Some(e)) = (p, q, plane.even_exponent()) {
        let len = |ps: &[Point], u: usize, v: usize| {
            pow_rat(&(&ps[u][0] - &ps[v][0]), e) + pow_rat(&(&ps[u][1] - &ps[v][1]), e)
        };
        return g.edges().iter().all(|&(u, v)| len(a, u, v) == len(b, u, v));
    }
    g.edges().iter().all(|&(u, v)| {
        let (pu, pv, qu, qv) = (p.point(u), p.point(v), q.point(u), q.point(v));
        let l1 = plane.norm([pu[0] - pv[0], pu[1] - pv[1]]);
        let l2 = plane.norm([qu[0] - qv[0], qu[1] - qv[1]]);
        (l1 - l2).abs() <= tol * l1.max(l2).max(1.0)
    })
}

/// Whether some isometry of the plane carries `p` to `q`. For p ≠ 2 the
/// isometries are the signed coordinate permutations followed by translations,
/// checked exactly for rational placements; for p = 2 a least-squares rigid
/// motion (with or without reflection) is fitted and accepted if every point
/// lands within `tol` times the configuration size.
pub fn is_congruent(p: &Placement, q: &Placement, plane: &NormedPlane, tol: f64) -> bool {
    if p.len() != q.len() {
        return false;
    }
    if p.is_empty() {
        return true;
    }
    if plane.is_euclidean() {
        return procrustes_congruent(p, q, tol);
    }
    if let (Placement::Exact(a), Placement::Exact(b)) = (p, q) {
        return SIGNED_PERMUTATIONS.iter().any(|m| {
            let moved = Placement::transform_exact(&a[..1], m, &[BigRational::zero(), BigRational::zero()]);
            let t = [&b[0][0] - &moved[0][0], &b[0][1] - &moved[0][1]];
            Placement::transform_exact(a, m, &t) == *b
        });
    }
    let (a, b) = (p.to_float(), q.to_float());
    let scale = spread(&a).max(spread(&b)).max(1.0);
    SIGNED_PERMUTATIONS.iter().any(|m| {
        let f = |x: [f64; 2]| [m[0] as f64 * x[0] + m[1] as f64 * x[1], m[2] as f64 * x[0] + m[3] as f64 * x[1]];
        let a0 = f(a.point(0));
        let t = [b.point(0)[0] - a0[0], b.point(0)[1] - a0[1]];
        (0..a.len()).all(|v| {
            let y = f(a.point(v));
            let d = [y[0] + t[0] - b.point(v)[0], y[1] + t[1] - b.point(v)[1]];
            d[0].hypot(d[1]) <= tol * scale
        })
    })
}

fn spread(p: &Placement) -> f64 {
    let c = centroid(p);
    (0..p.len())
        .map(|v| {
            let x = p.point(v);
            (x[0] - c[0]).hypot(x[1] - c[1])
        })
        .fold(0.0, f64::max)
}

fn centroid(p: &Placement) -> [f64; 2] {
    let n = p.len() as f64;
    let mut c = [0.0, 0.0];
    for v in 0..p.len() {
        let x = p.point(v);
        c[0] += x[0] / n;
        c[1] += x[1] / n;
    }
    c
}

fn procrustes_congruent(p: &Placement, q: &Placement, tol: f64) -> bool {
    let (cp, cq) = (centroid(p), centroid(q));
    let scale = spread(p).max(spread(q)).max(1.0);
    [1.0, -1.0].iter().any(|&mirror| {
        let a: Vec<[f64; 2]> = (0..p.len())
            .map(|v| {
                let x = p.point(v);
                [x[0] - cp[0], mirror * (x[1] - cp[1])]
            })
            .collect();
        let b: Vec<[f64; 2]> = (0..q.len())
            .map(|v| {
                let x = q.point(v);
                [x[0] - cq[0], x[1] - cq[1]]
            })
            .collect();
        let (mut sc, mut ss) = (0.0, 0.0);
        for (x, y) in a.iter().zip(&b) {
            sc += x[0] * y[0] + x[1] * y[1];
            ss += x[0] * y[1] - x[1] * y[0];
        }
        let th = ss.atan2(sc);
        let (c, s) = (th.cos(), th.sin());
        a.iter().zip(&b).all(|(x, y)| {
            let r = [c * x[0] - s * x[1], s * x[0] + c * x[1]];
            (r[0] - y[0]).hypot(r[1] - y[1]) <= tol * scale
        })
    })
}
