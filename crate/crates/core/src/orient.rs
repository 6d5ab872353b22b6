//! Orientations with per-vertex indegree and outdegree caps.
//!
//! `G` can be oriented with d⁻(v) ≤ g(v) and d⁺(v) ≤ h(v) iff
//! (1) d(v) ≤ g(v) + h(v) for every v and (2) e(S) ≤ min{g(S), h(S)} for
//! every S. [`orient`] decides this with one lower-bounded flow and, when it
//! fails, extracts a vertex or set violating one of the two conditions.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::certificate::{CertKind, DecompositionCertificate};
use crate::density::pseudoarboricity;
use crate::flow::{FlowNetwork, INF};
use crate::graph::{delta_f, DegreeFn, Digraph, Multigraph};

/// Orientation of every parallel copy: `forward[p]` copies of pair `p = {u < v}`
/// point `u → v`, the remaining ones `v → u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    pub forward: Vec<usize>,
}

/// Which undirected copies an arc class of an oriented digraph came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArcSource {
    pub pair: usize,
    pub forward: bool,
}

impl Orientation {
    pub fn in_degrees(&self, g: &Multigraph) -> Vec<usize> {
        let mut d = vec![0; g.n()];
        for (e, &fw) in g.edges().iter().zip(&self.forward) {
            d[e.v] += fw;
            d[e.u] += e.mult - fw;
        }
        d
    }

    pub fn out_degrees(&self, g: &Multigraph) -> Vec<usize> {
        let mut d = vec![0; g.n()];
        for (e, &fw) in g.edges().iter().zip(&self.forward) {
            d[e.u] += fw;
            d[e.v] += e.mult - fw;
        }
        d
    }

    /// The oriented digraph and, per arc class, the pair it came from.
    pub fn to_digraph(&self, g: &Multigraph) -> (Digraph, Vec<ArcSource>) {
        let mut arcs = Vec::new();
        let mut sources = Vec::new();
        for (pair, (e, &fw)) in g.edges().iter().zip(&self.forward).enumerate() {
            if fw > 0 {
                arcs.push((e.u, e.v, fw));
                sources.push(ArcSource { pair, forward: true });
            }
            if e.mult > fw {
                arcs.push((e.v, e.u, e.mult - fw));
                sources.push(ArcSource { pair, forward: false });
            }
        }
        let d = Digraph::new(g.n(), arcs).expect("orientation of a valid multigraph");
        debug_assert_eq!(d.num_arc_classes(), sources.len());
        (d, sources)
    }
}

/// Forgets directions: maps a certificate on the oriented digraph back to
/// the pairs of `g`. Branchings become forests; other kinds keep their name.
pub fn undirect_certificate(
    g: &Multigraph,
    sources: &[ArcSource],
    directed: &DecompositionCertificate,
) -> DecompositionCertificate {
    let mut forward: Vec<Vec<usize>> = vec![Vec::new(); g.num_pairs()];
    let mut backward: Vec<Vec<usize>> = vec![Vec::new(); g.num_pairs()];
    for (src, colors) in sources.iter().zip(&directed.assignment) {
        let slot = if src.forward { &mut forward[src.pair] } else { &mut backward[src.pair] };
        slot.extend_from_slice(colors);
    }
    let assignment = forward
        .into_iter()
        .zip(backward)
        .map(|(mut f, b)| {
            f.extend(b);
            f
        })
        .collect();
    let kind = match directed.kind {
        CertKind::DegreeFBranching => CertKind::DegreeFForest,
        other => other,
    };
    DecompositionCertificate { kind, k: directed.k, assignment, f: directed.f.clone() }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Infeasibility {
    /// d(v) > g(v) + h(v)
    Vertex { vertex: usize, degree: usize, g: usize, h: usize },
    /// e(S) > min{g(S), h(S)}
    Set { set: Vec<usize>, e_s: usize, g_s: usize, h_s: usize },
}

impl Infeasibility {
    /// Recounts the witness against `graph`, `g`, `h`; true iff it really
    /// violates condition (1) or (2).
    pub fn holds(&self, graph: &Multigraph, g: &DegreeFn, h: &DegreeFn) -> bool {
        match self {
            Infeasibility::Vertex { vertex, .. } => {
                graph.degrees()[*vertex] > g.get(*vertex) + h.get(*vertex)
            }
            Infeasibility::Set { set, .. } => {
                graph.edges_within_set(set) > g.sum_over(set).min(h.sum_over(set))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrientationResult {
    Oriented(Orientation),
    Infeasible(Infeasibility),
}

impl OrientationResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self, OrientationResult::Oriented(_))
    }
}

/// Orients `graph` so that d⁻(v) ≤ g(v) and d⁺(v) ≤ h(v), or explains why
/// that is impossible.
///
/// Network: source → pair (exactly mult), pair → each endpoint (≤ mult),
/// vertex → sink with d(v) − h(v) ≤ flow ≤ g(v). Flow into a vertex is the
/// number of copies whose head it is; the lower bound forces enough heads
/// that the outdegree stays within h.
pub fn orient(graph: &Multigraph, g: &DegreeFn, h: &DegreeFn) -> OrientationResult {
    let n = graph.n();
    let deg = graph.degrees();
    if let Some(v) = (0..n).find(|&v| deg[v] > g.get(v) + h.get(v)) {
        return OrientationResult::Infeasible(Infeasibility::Vertex {
            vertex: v,
            degree: deg[v],
            g: g.get(v),
            h: h.get(v),
        });
    }
    let pairs = graph.num_pairs();
    let s = 0;
    let pair_node = |p: usize| 1 + p;
    let vertex_node = |v: usize| 1 + pairs + v;
    let t = 1 + pairs + n;
    let (super_s, super_t) = (t + 1, t + 2);
    let mut net = FlowNetwork::new(t + 3);
    let mut excess = vec![0i64; t + 1];

    let mut to_v = Vec::with_capacity(pairs);
    for (p, e) in graph.edges().iter().enumerate() {
        // s → pair with lower = upper = mult
        excess[pair_node(p)] += e.mult as i64;
        excess[s] -= e.mult as i64;
        net.add_edge(pair_node(p), vertex_node(e.u), e.mult as u64);
        to_v.push(net.add_edge(pair_node(p), vertex_node(e.v), e.mult as u64));
    }
    for v in 0..n {
        let lower = deg[v].saturating_sub(h.get(v));
        let upper = g.get(v).min(deg[v]);
        net.add_edge(vertex_node(v), t, (upper - lower) as u64);
        excess[t] += lower as i64;
        excess[vertex_node(v)] -= lower as i64;
    }
    net.add_edge(t, s, INF);
    let mut demand = 0u64;
    for (x, &ex) in excess.iter().enumerate() {
        if ex > 0 {
            net.add_edge(super_s, x, ex as u64);
            demand += ex as u64;
        } else if ex < 0 {
            net.add_edge(x, super_t, (-ex) as u64);
        }
    }
    if net.max_flow(super_s, super_t) == demand {
        let forward = to_v.iter().map(|&id| net.flow(id) as usize).collect();
        return OrientationResult::Oriented(Orientation { forward });
    }
    // condition (1) holds, so condition (2) fails for the head caps or the tail caps
    for caps in [g, h] {
        if let Some(set) = overfull_set(graph, caps) {
            let e_s = graph.edges_within_set(&set);
            let (g_s, h_s) = (g.sum_over(&set), h.sum_over(&set));
            return OrientationResult::Infeasible(Infeasibility::Set { set, e_s, g_s, h_s });
        }
    }
    unreachable!("orientation infeasible although both conditions hold")
}

/// A set S with e(S) > caps(S), if one exists: the vertex side of a min cut
/// when copies are assigned to endpoints with vertex v absorbing ≤ caps(v).
fn overfull_set(graph: &Multigraph, caps: &DegreeFn) -> Option<Vec<usize>> {
    let pairs = graph.num_pairs();
    let (s, t) = (0, 1 + pairs + graph.n());
    let mut net = FlowNetwork::new(t + 1);
    for (p, e) in graph.edges().iter().enumerate() {
        net.add_edge(s, 1 + p, e.mult as u64);
        net.add_edge(1 + p, 1 + pairs + e.u, e.mult as u64);
        net.add_edge(1 + p, 1 + pairs + e.v, e.mult as u64);
    }
    for v in 0..graph.n() {
        net.add_edge(1 + pairs + v, t, caps.get(v) as u64);
    }
    if net.max_flow(s, t) == graph.total_edges() as u64 {
        return None;
    }
    let side = net.residual_reachable(s);
    Some((0..graph.n()).filter(|&v| side[1 + pairs + v]).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrientError {
    #[error("{parameter} = {value} exceeds d = {d}")]
    Precondition { parameter: &'static str, value: usize, d: usize },
    #[error("f({vertex}) = {f}, but branchings need f ≥ 2")]
    FTooSmall { vertex: usize, f: usize },
}

#[derive(Debug, Clone)]
pub struct BranchingOrientation {
    pub digraph: Digraph,
    pub sources: Vec<ArcSource>,
    pub orientation: Orientation,
}

/// An orientation with Δ⁻ ≤ d and Δ⁺_{f−1} ≤ d (caps g ≡ d,
/// h = d(f − 1)). For f ≥ 2 it exists exactly when max{Δ_f(G), pa(G)} ≤ d,
/// which max{Δ_f(G), a(G)} ≤ d implies.
pub fn orient_for_branchings(
    graph: &Multigraph,
    f: &DegreeFn,
    d: usize,
) -> Result<BranchingOrientation, OrientError> {
    let df = delta_f(graph, f);
    if df > d {
        return Err(OrientError::Precondition { parameter: "delta_f", value: df, d });
    }
    if let Some(v) = (0..graph.n()).find(|&v| f.get(v) < 2) {
        return Err(OrientError::FTooSmall { vertex: v, f: f.get(v) });
    }
    let pa = pseudoarboricity(graph).value;
    if pa > d {
        return Err(OrientError::Precondition { parameter: "pseudoarboricity", value: pa, d });
    }
    let g = DegreeFn::constant(d);
    let h = f.map(graph.n(), |_, fv| d * (fv - 1));
    match orient(graph, &g, &h) {
        OrientationResult::Oriented(orientation) => {
            let (digraph, sources) = orientation.to_digraph(graph);
            Ok(BranchingOrientation { digraph, sources, orientation })
        }
        OrientationResult::Infeasible(w) => unreachable!("caps satisfy both conditions: {w:?}"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtReport {
    pub cond1_ok: bool,
    pub cond2_ok: bool,
    pub counterexample: Option<Infeasibility>,
}

impl EtReport {
    pub fn feasible(&self) -> bool {
        self.cond1_ok && self.cond2_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("subset enumeration limited to {limit} vertices, got {n}")]
pub struct TooManyVertices {
    pub n: usize,
    pub limit: usize,
}

pub const ET_SUBSET_LIMIT: usize = 20;

/// Checks both orientation conditions directly, condition (2) over all
/// 2^n subsets. Independent of the flow model; for cross-validation.
pub fn check_et_conditions(
    graph: &Multigraph,
    g: &DegreeFn,
    h: &DegreeFn,
) -> Result<EtReport, TooManyVertices> {
    let n = graph.n();
    if n > ET_SUBSET_LIMIT {
        return Err(TooManyVertices { n, limit: ET_SUBSET_LIMIT });
    }
    let deg = graph.degrees();
    let bad_vertex = (0..n).find(|&v| deg[v] > g.get(v) + h.get(v));
    let mut counterexample = bad_vertex.map(|v| Infeasibility::Vertex {
        vertex: v,
        degree: deg[v],
        g: g.get(v),
        h: h.get(v),
    });

    let mut nbrs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for e in graph.edges() {
        nbrs[e.u].push((e.v, e.mult));
        nbrs[e.v].push((e.u, e.mult));
    }
    let size = 1usize << n;
    let mut e_s = vec![0usize; size];
    let mut g_s = vec![0usize; size];
    let mut h_s = vec![0usize; size];
    let mut cond2_ok = true;
    for mask in 1..size {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let inner: usize = nbrs[v].iter().filter(|&&(w, _)| rest >> w & 1 == 1).map(|&(_, m)| m).sum();
        e_s[mask] = e_s[rest] + inner;
        g_s[mask] = g_s[rest] + g.get(v);
        h_s[mask] = h_s[rest] + h.get(v);
        if cond2_ok && e_s[mask] > g_s[mask].min(h_s[mask]) {
            cond2_ok = false;
            if counterexample.is_none() {
                counterexample = Some(Infeasibility::Set {
                    set: (0..n).filter(|&w| mask >> w & 1 == 1).collect(),
                    e_s: e_s[mask],
                    g_s: g_s[mask],
                    h_s: h_s[mask],
                });
            }
        }
    }
    Ok(EtReport { cond1_ok: bad_vertex.is_none(), cond2_ok, counterexample })
}
