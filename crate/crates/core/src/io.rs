//! Text formats: graph6, edge lists, placements, move scripts and reports.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt::Write as _;
use thiserror::Error;

use crate::decide::{Reason, RigidityReport};
use crate::geometry::Placement;
use crate::graph::Graph;
use crate::moves::{BaseGraph, Move, MoveKind, MoveScript};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("graph6: {msg} at byte {pos}")]
    Graph6 { pos: usize, msg: String },
    #[error("edge list line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
    #[error("placement line {line}: {msg}")]
    Placement { line: usize, msg: String },
    #[error("move script line {line}: {msg}")]
    Script { line: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    EdgeList,
}

impl GraphFormat {
    pub fn from_name(s: &str) -> Option<GraphFormat> {
        match s {
            "graph6" | "g6" => Some(GraphFormat::Graph6),
            "edgelist" | "edges" => Some(GraphFormat::EdgeList),
            _ => None,
        }
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph, FormatError> {
    match format {
        GraphFormat::Graph6 => parse_graph6(text),
        GraphFormat::EdgeList => parse_edge_list(text),
    }
}

pub fn emit_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Graph6 => emit_graph6(g) + "\n",
        GraphFormat::EdgeList => emit_edge_list(g),
    }
}

fn g6_err(pos: usize, msg: &str) -> FormatError {
    FormatError::Graph6 { pos, msg: msg.to_string() }
}

/// Decodes one graph6 string (an optional `>>graph6<<` header is skipped).
pub fn parse_graph6(text: &str) -> Result<Graph, FormatError> {
    let mut s = text.trim().as_bytes();
    let mut offset = 0;
    if let Some(rest) = s.strip_prefix(b">>graph6<<") {
        s = rest;
        offset = 10;
    }
    if let Some(i) = s.iter().position(|&b| !(63..=126).contains(&b)) {
        return Err(g6_err(offset + i, "byte outside 63..=126"));
    }
    let (n, body) = match s {
        [] => return Err(g6_err(offset, "empty input")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(g6_err(offset + 2, "truncated size"));
            }
            let n = rest[..6].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(g6_err(offset + 1, "truncated size"));
            }
            let n = rest[..3].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &rest[3..])
        }
        [b, rest @ ..] => ((b - 63) as usize, rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    let start = offset + (s.len() - body.len());
    if body.len() != need {
        return Err(g6_err(start + body.len().min(need), &format!("expected {need} data bytes, found {}", body.len())));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = body[need - 1] - 63;
        if last & ((1 << (6 - bits % 6)) - 1) != 0 {
            return Err(g6_err(start + need - 1, "nonzero padding bits"));
        }
    }
    Ok(g)
}

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for sh in [12, 6, 0] {
            out.push(((n >> sh) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for sh in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> sh) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Meaningful lines with `#` comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

/// `n` on the first line, then one `u v` pair per line.
pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let err = |line: usize, msg: String| FormatError::EdgeList { line, msg };
    let mut lines = content_lines(text);
    let (l0, first) = lines.next().ok_or_else(|| err(1, "missing vertex count".into()))?;
    let n: usize = first.parse().map_err(|_| err(l0, format!("bad vertex count {first:?}")))?;
    let mut g = Graph::empty(n);
    for (line, l) in lines {
        let parts: Vec<&str> = l.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(err(line, format!("expected two vertices, got {l:?}")));
        }
        let parse = |s: &str| s.parse::<usize>().map_err(|_| err(line, format!("bad vertex {s:?}")));
        let (u, v) = (parse(parts[0])?, parse(parts[1])?);
        if u >= n || v >= n {
            return Err(err(line, format!("vertex out of range 0..{n}")));
        }
        if u == v {
            return Err(err(line, "loop".into()));
        }
        if !g.add_edge(u, v) {
            return Err(err(line, format!("repeated edge {u} {v}")));
        }
    }
    Ok(g)
}

pub fn emit_edge_list(g: &Graph) -> String {
    let mut s = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((a, b)) => {
            let d: BigInt = b.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(a.parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Lines `v x y` with rational coordinates (`num/den` or integers) give an
/// exact placement; any decimal coordinate makes the whole placement float.
/// Every vertex `0..n` must appear exactly once.
pub fn parse_placement(text: &str) -> Result<Placement, FormatError> {
    let err = |line: usize, msg: String| FormatError::Placement { line, msg };
    let mut rows: Vec<(usize, usize, [&str; 2])> = Vec::new();
    for (line, l) in content_lines(text) {
        let parts: Vec<&str> = l.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(err(line, format!("expected `v x y`, got {l:?}")));
        }
        let v = parts[0].parse::<usize>().map_err(|_| err(line, format!("bad vertex {:?}", parts[0])))?;
        rows.push((line, v, [parts[1], parts[2]]));
    }
    let n = rows.len();
    let mut seen = vec![false; n];
    for &(line, v, _) in &rows {
        if v >= n || seen[v] {
            return Err(err(line, format!("vertex {v} repeated or out of range 0..{n}")));
        }
        seen[v] = true;
    }
    rows.sort_by_key(|r| r.1);
    let decimal = rows.iter().any(|r| r.2.iter().any(|c| c.contains(['.', 'e', 'E'])));
    if decimal {
        let mut pts = Vec::with_capacity(n);
        for (line, _, c) in rows {
            let f = |s: &str| -> Result<f64, FormatError> {
                match parse_rational(s) {
                    Some(r) => r.to_f64().ok_or_else(|| err(line, format!("bad coordinate {s:?}"))),
                    None => s.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(|| err(line, format!("bad coordinate {s:?}"))),
                }
            };
            pts.push([f(c[0])?, f(c[1])?]);
        }
        Ok(Placement::Float(pts))
    } else {
        let mut pts = Vec::with_capacity(n);
        for (line, _, c) in rows {
            let f = |s: &str| parse_rational(s).ok_or_else(|| err(line, format!("bad coordinate {s:?}")));
            pts.push([f(c[0])?, f(c[1])?]);
        }
        Ok(Placement::Exact(pts))
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn emit_placement(p: &Placement) -> String {
    let mut s = String::new();
    match p {
        Placement::Exact(pts) => {
            for (v, c) in pts.iter().enumerate() {
                let _ = writeln!(s, "{v} {} {}", fmt_rational(&c[0]), fmt_rational(&c[1]));
            }
        }
        Placement::Float(pts) => {
            for (v, c) in pts.iter().enumerate() {
                let _ = writeln!(s, "{v} {:?} {:?}", c[0], c[1]);
            }
        }
    }
    s
}

/// `base K5-` or `base B1`, then one `keyword i j ...` line per move.
pub fn parse_script(text: &str) -> Result<MoveScript, FormatError> {
    let err = |line: usize, msg: String| FormatError::Script { line, msg };
    let mut lines = content_lines(text);
    let (l0, header) = lines.next().ok_or_else(|| err(1, "missing `base` header".into()))?;
    let base = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["base", name] => BaseGraph::from_name(name).ok_or_else(|| err(l0, format!("unknown base graph {name:?}")))?,
        _ => return Err(err(l0, format!("expected `base K5-|B1`, got {header:?}"))),
    };
    let mut moves = Vec::new();
    for (line, l) in lines {
        let mut words = l.split_whitespace();
        let kw = words.next().unwrap_or("");
        let kind = MoveKind::from_keyword(kw).ok_or_else(|| err(line, format!("unknown move {kw:?}")))?;
        let params = words
            .map(|w| w.parse::<usize>().map_err(|_| err(line, format!("bad parameter {w:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let m = Move::from_params(kind, &params)
            .ok_or_else(|| err(line, format!("wrong number of parameters for {kw}")))?;
        moves.push(m);
    }
    Ok(MoveScript { base, moves })
}

pub fn emit_script(s: &MoveScript) -> String {
    let mut out = format!("base {}\n", s.base.name());
    for m in &s.moves {
        let _ = writeln!(out, "{m}");
    }
    out
}

fn edge_list_inline(edges: &[(usize, usize)]) -> String {
    edges.iter().map(|(u, v)| format!("{u}-{v}")).collect::<Vec<_>>().join(" ")
}

/// `key: value` lines in a fixed order.
pub fn emit_report(r: &RigidityReport) -> String {
    let mut s = String::new();
    let mut kv = |k: &str, v: String| {
        let _ = writeln!(s, "{k}: {v}");
    };
    kv("vertices", r.n.to_string());
    kv("edges", r.m.to_string());
    kv("globally_rigid_analytic", r.globally_rigid_analytic.to_string());
    kv("two_connected", r.two_connected.to_string());
    kv("m22_connected", r.m22_connected.to_string());
    for reason in &r.reasons {
        match reason {
            Reason::TooFewVertices(n) => kv("reason", format!("too-few-vertices {n}")),
            Reason::Disconnected => kv("reason", "disconnected".into()),
            Reason::CutVertex(u) => kv("reason", format!("cut-vertex {u}")),
            Reason::NotSpanningTight { rank, target } => kv("reason", format!("rank {rank} < {target}")),
            Reason::EdgeInNoCircuit((u, v)) => kv("reason", format!("edge-in-no-circuit {u}-{v}")),
            Reason::SeparateComponents((a, b), (c, d)) => {
                kv("reason", format!("separate-components {a}-{b} {c}-{d}"))
            }
            Reason::EarDecomposition(ear) => {
                kv("certificate", format!("ear-decomposition {} circuits", ear.len()));
                for (i, c) in ear.circuits.iter().enumerate() {
                    kv(&format!("circuit.{}", i + 1), edge_list_inline(c));
                }
            }
        }
    }
    let fired: Vec<&str> = r.sufficient.fired.iter().map(|c| c.name()).collect();
    kv("sufficient", if fired.is_empty() { "none".into() } else { fired.join(",") });
    kv("complement_dichotomy", r.sufficient.complement_dichotomy.to_string());
    if let Some(mu) = r.sufficient.algebraic_connectivity {
        kv("algebraic_connectivity", format!("{mu:.6}"));
    }
    for notice in &r.sufficient.notices {
        kv("notice", notice.clone());
    }
    kv("euclidean_globally_rigid", r.euclidean_verdict.to_string());
    if let Some(a) = &r.numeric_agreement {
        kv("p", format!("{}", a.p));
        kv("seed", a.seed.to_string());
        kv("mode", if a.exact { "exact" } else { "float" }.into());
        kv("rank", a.rank.to_string());
        kv("rank_target", a.target.to_string());
        let min = a.edge_deleted_ranks.iter().min().copied();
        kv("min_edge_deleted_rank", min.map_or("none".into(), |x| x.to_string()));
        kv("inf_rigid", a.inf_rigid.to_string());
        kv("redundantly_rigid", a.redundantly_rigid.to_string());
        kv("numeric_agrees", a.agrees.to_string());
    }
    s
}
