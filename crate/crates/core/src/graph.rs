//! Multigraphs, digraphs, vertex weight functions and the degree statistics
//! built on them.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge ({u}, {v}) has multiplicity 0")]
    ZeroMultiplicity { u: usize, v: usize },
    #[error("parallel arcs ({tail}, {head}) in a simple digraph")]
    ParallelArcs { tail: usize, head: usize },
    #[error("degree function value {value} at vertex {vertex} is below the minimum {min}")]
    DegreeBelowMinimum { vertex: usize, value: usize, min: usize },
}

/// An undirected edge class: `mult` parallel copies between `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub mult: usize,
}

impl Edge {
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Loop-free undirected multigraph. Each vertex pair appears once, with its
/// multiplicity; parallel copies are addressed as `(pair index, copy index)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    n: usize,
    edges: Vec<Edge>,
}

impl Multigraph {
    /// Builds a multigraph, merging repeated pairs (in either orientation)
    /// into one entry. Pairs keep the order of their first appearance and
    /// are normalized to `u < v`.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, usize)>,
    {
        let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut out: Vec<Edge> = Vec::new();
        for (u, v, mult) in edges {
            if u == v {
                return Err(GraphError::Loop(u));
            }
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if mult == 0 {
                return Err(GraphError::ZeroMultiplicity { u, v });
            }
            let key = (u.min(v), u.max(v));
            match index.get(&key) {
                Some(&i) => out[i].mult += mult,
                None => {
                    index.insert(key, out.len());
                    out.push(Edge { u: key.0, v: key.1, mult });
                }
            }
        }
        Ok(Multigraph { n, edges: out })
    }

    /// Simple graph from a list of vertex pairs.
    pub fn simple<I>(n: usize, pairs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::new(n, pairs.into_iter().map(|(u, v)| (u, v, 1)))
    }

    pub fn empty(n: usize) -> Self {
        Multigraph { n, edges: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_pairs(&self) -> usize {
        self.edges.len()
    }

    /// Number of edges counted with multiplicity.
    pub fn total_edges(&self) -> usize {
        self.edges.iter().map(|e| e.mult).sum()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.edges.iter().map(|e| e.mult).max().unwrap_or(0)
    }

    pub fn is_simple(&self) -> bool {
        self.edges.iter().all(|e| e.mult == 1)
    }

    pub fn pair_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.iter().position(|e| (e.u, e.v) == key)
    }

    /// Degrees counted with multiplicity.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            deg[e.u] += e.mult;
            deg[e.v] += e.mult;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// `(pair index, neighbor)` lists per vertex.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.u].push((i, e.v));
            adj[e.v].push((i, e.u));
        }
        adj
    }

    /// Every parallel copy as `(pair index, copy index)`, pair-major.
    pub fn copies(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .flat_map(|(i, e)| (0..e.mult).map(move |c| (i, c)))
    }

    /// e(S): edges with both endpoints in `S`, with multiplicity.
    pub fn edges_within(&self, in_set: &[bool]) -> usize {
        self.edges
            .iter()
            .filter(|e| in_set[e.u] && in_set[e.v])
            .map(|e| e.mult)
            .sum()
    }

    pub fn edges_within_set(&self, set: &[usize]) -> usize {
        let mut mask = vec![false; self.n];
        for &v in set {
            mask[v] = true;
        }
        self.edges_within(&mask)
    }

    /// Same vertex set, one pair per edge class scaled to multiplicity `m * mult`.
    pub fn blowup(&self, m: usize) -> Multigraph {
        assert!(m >= 1, "blowup factor must be positive");
        Multigraph {
            n: self.n,
            edges: self.edges.iter().map(|e| Edge { mult: e.mult * m, ..*e }).collect(),
        }
    }

    /// Underlying simple graph together with the multiplicity of every pair
    /// (indexed like the pairs of both graphs).
    pub fn underlying_simple(&self) -> (Multigraph, Vec<usize>) {
        let mu = self.edges.iter().map(|e| e.mult).collect();
        let simple = Multigraph {
            n: self.n,
            edges: self.edges.iter().map(|e| Edge { mult: 1, ..*e }).collect(),
        };
        (simple, mu)
    }

    /// Replaces pair multiplicities. `mults` is indexed by pair.
    pub fn with_multiplicities(&self, mults: &[usize]) -> Result<Multigraph, GraphError> {
        Multigraph::new(
            self.n,
            self.edges.iter().zip(mults).map(|(e, &m)| (e.u, e.v, m)),
        )
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &(_, y) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == self.n
    }

    /// Length of a shortest cycle; `None` for a forest. Parallel copies give 2.
    pub fn girth(&self) -> Option<usize> {
        if self.edges.iter().any(|e| e.mult >= 2) {
            return Some(2);
        }
        let adj = self.adjacency();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; self.n];
        let mut via = vec![usize::MAX; self.n];
        for root in 0..self.n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            via[root] = usize::MAX;
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                if let Some(b) = best {
                    if 2 * dist[x] + 1 >= b {
                        break;
                    }
                }
                for &(pair, y) in &adj[x] {
                    if pair == via[x] {
                        continue;
                    }
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        via[y] = pair;
                        queue.push_back(y);
                    } else {
                        let len = dist[x] + dist[y] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }
}

/// A directed arc class: `mult` parallel arcs from `tail` to `head`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub mult: usize,
}

/// Loop-free directed multigraph. Anti-parallel arcs are separate entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    arcs: Vec<Arc>,
}

impl Digraph {
    /// Builds a directed multigraph, merging repeated `(tail, head)` entries.
    pub fn new<I>(n: usize, arcs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, usize)>,
    {
        let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut out: Vec<Arc> = Vec::new();
        for (tail, head, mult) in arcs {
            if tail == head {
                return Err(GraphError::Loop(tail));
            }
            for x in [tail, head] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if mult == 0 {
                return Err(GraphError::ZeroMultiplicity { u: tail, v: head });
            }
            match index.get(&(tail, head)) {
                Some(&i) => out[i].mult += mult,
                None => {
                    index.insert((tail, head), out.len());
                    out.push(Arc { tail, head, mult });
                }
            }
        }
        Ok(Digraph { n, arcs: out })
    }

    /// Directed graph without parallel arcs; a repeated pair is an error.
    pub fn new_simple<I>(n: usize, arcs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let d = Self::new(n, arcs.into_iter().map(|(t, h)| (t, h, 1)))?;
        if let Some(a) = d.arcs.iter().find(|a| a.mult > 1) {
            return Err(GraphError::ParallelArcs { tail: a.tail, head: a.head });
        }
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn num_arc_classes(&self) -> usize {
        self.arcs.len()
    }

    pub fn total_arcs(&self) -> usize {
        self.arcs.iter().map(|a| a.mult).sum()
    }

    /// True when no two arcs share `(tail, head)`.
    pub fn is_simple(&self) -> bool {
        self.arcs.iter().all(|a| a.mult == 1)
    }

    pub fn has_antiparallel(&self) -> bool {
        let set: alloc::collections::BTreeSet<(usize, usize)> =
            self.arcs.iter().map(|a| (a.tail, a.head)).collect();
        self.arcs.iter().any(|a| set.contains(&(a.head, a.tail)))
    }

    pub fn copies(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs
            .iter()
            .enumerate()
            .flat_map(|(i, a)| (0..a.mult).map(move |c| (i, c)))
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for a in &self.arcs {
            d[a.head] += a.mult;
        }
        d
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for a in &self.arcs {
            d[a.tail] += a.mult;
        }
        d
    }

    /// Out-neighbour lists `(arc index, head)`.
    pub fn out_adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, a) in self.arcs.iter().enumerate() {
            adj[a.tail].push((i, a.head));
        }
        adj
    }

    /// In-neighbour lists `(arc index, tail)`.
    pub fn in_adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, a) in self.arcs.iter().enumerate() {
            adj[a.head].push((i, a.tail));
        }
        adj
    }

    /// The underlying undirected multigraph. Anti-parallel arcs merge into
    /// one pair of multiplicity two.
    pub fn underlying(&self) -> Multigraph {
        Multigraph::new(self.n, self.arcs.iter().map(|a| (a.tail, a.head, a.mult)))
            .expect("digraph arcs are valid edges")
    }

    /// Sub-digraph on the arcs accepted by `keep` (by arc index).
    pub fn filter_arcs(&self, mut keep: impl FnMut(usize, &Arc) -> bool) -> Digraph {
        Digraph {
            n: self.n,
            arcs: self
                .arcs
                .iter()
                .enumerate()
                .filter(|(i, a)| keep(*i, a))
                .map(|(_, a)| *a)
                .collect(),
        }
    }

    pub fn reversed(&self) -> Digraph {
        Digraph {
            n: self.n,
            arcs: self
                .arcs
                .iter()
                .map(|a| Arc { tail: a.head, head: a.tail, mult: a.mult })
                .collect(),
        }
    }

    /// Length of a shortest directed cycle; `None` when acyclic.
    pub fn directed_girth(&self) -> Option<usize> {
        self.shortest_cycle_below(usize::MAX)
    }

    /// True iff every directed cycle has length at least `len`.
    pub fn directed_girth_at_least(&self, len: usize) -> bool {
        self.shortest_cycle_below(len).is_none()
    }

    /// Shortest directed cycle of length `< limit`, if any.
    fn shortest_cycle_below(&self, limit: usize) -> Option<usize> {
        if limit <= 2 {
            return None;
        }
        if self.has_antiparallel() {
            return Some(2);
        }
        let out = self.out_adjacency();
        let mut best = limit;
        let mut dist = vec![usize::MAX; self.n];
        let mut touched = Vec::new();
        for root in 0..self.n {
            for &x in &touched {
                dist[x] = usize::MAX;
            }
            touched.clear();
            dist[root] = 0;
            touched.push(root);
            let mut queue = VecDeque::from([root]);
            'bfs: while let Some(x) = queue.pop_front() {
                if dist[x] + 1 >= best {
                    break;
                }
                for &(_, y) in &out[x] {
                    if y == root {
                        best = dist[x] + 1;
                        break 'bfs;
                    }
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        touched.push(y);
                        queue.push_back(y);
                    }
                }
            }
        }
        (best < limit).then_some(best)
    }
}

/// Vertex weight function with a default and sparse overrides.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeFn {
    default: usize,
    overrides: BTreeMap<usize, usize>,
    min_allowed: usize,
}

impl DegreeFn {
    /// Minimum value for forest/branching contexts.
    pub const FOREST_MIN: usize = 2;

    pub fn new(default: usize, min_allowed: usize) -> Result<Self, GraphError> {
        if default < min_allowed {
            return Err(GraphError::DegreeBelowMinimum {
                vertex: usize::MAX,
                value: default,
                min: min_allowed,
            });
        }
        Ok(DegreeFn { default, overrides: BTreeMap::new(), min_allowed })
    }

    /// Constant function `f ≡ value` with `min_allowed = 0`.
    pub fn constant(value: usize) -> Self {
        DegreeFn { default: value, overrides: BTreeMap::new(), min_allowed: 0 }
    }

    pub fn from_values(values: &[usize]) -> Self {
        let mut f = Self::constant(values.iter().copied().min().unwrap_or(0));
        f.min_allowed = 0;
        for (v, &x) in values.iter().enumerate() {
            if x != f.default {
                f.overrides.insert(v, x);
            }
        }
        f
    }

    pub fn with_override(mut self, vertex: usize, value: usize) -> Result<Self, GraphError> {
        if value < self.min_allowed {
            return Err(GraphError::DegreeBelowMinimum { vertex, value, min: self.min_allowed });
        }
        if value == self.default {
            self.overrides.remove(&vertex);
        } else {
            self.overrides.insert(vertex, value);
        }
        Ok(self)
    }

    /// Re-declares the minimum and checks every stored value against it.
    pub fn require_min(mut self, min_allowed: usize) -> Result<Self, GraphError> {
        if self.default < min_allowed {
            return Err(GraphError::DegreeBelowMinimum {
                vertex: usize::MAX,
                value: self.default,
                min: min_allowed,
            });
        }
        if let Some((&vertex, &value)) = self.overrides.iter().find(|(_, &x)| x < min_allowed) {
            return Err(GraphError::DegreeBelowMinimum { vertex, value, min: min_allowed });
        }
        self.min_allowed = min_allowed;
        Ok(self)
    }

    pub fn get(&self, v: usize) -> usize {
        self.overrides.get(&v).copied().unwrap_or(self.default)
    }

    pub fn default_value(&self) -> usize {
        self.default
    }

    pub fn overrides(&self) -> &BTreeMap<usize, usize> {
        &self.overrides
    }

    pub fn min_allowed(&self) -> usize {
        self.min_allowed
    }

    /// Smallest value among vertices `0..n`.
    pub fn min_over(&self, n: usize) -> usize {
        (0..n).map(|v| self.get(v)).min().unwrap_or(self.default)
    }

    pub fn max_over(&self, n: usize) -> usize {
        (0..n).map(|v| self.get(v)).max().unwrap_or(self.default)
    }

    /// f(S) for a vertex list.
    pub fn sum_over(&self, set: &[usize]) -> usize {
        set.iter().map(|&v| self.get(v)).sum()
    }

    /// Pointwise map, e.g. `v ↦ f(v) - 1`.
    pub fn map(&self, n: usize, mut op: impl FnMut(usize, usize) -> usize) -> DegreeFn {
        DegreeFn::from_values(&(0..n).map(|v| op(v, self.get(v))).collect::<Vec<_>>())
    }

    /// Increments the value at one vertex.
    pub fn bumped(&self, vertex: usize) -> DegreeFn {
        let mut g = self.clone();
        g.overrides.insert(vertex, self.get(vertex) + 1);
        g
    }
}

/// Δ_f(G) = max_v ⌈d(v)/f(v)⌉, zero for an edgeless graph.
pub fn delta_f(g: &Multigraph, f: &DegreeFn) -> usize {
    g.degrees()
        .into_iter()
        .enumerate()
        .filter(|&(_, d)| d > 0)
        .map(|(v, d)| {
            let fv = f.get(v);
            assert!(fv >= 1, "degree function must be positive at vertex {v}");
            d.div_ceil(fv)
        })
        .max()
        .unwrap_or(0)
}

/// Maximum indegree and weighted maximum outdegree of a digraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DirectedStats {
    pub max_in: usize,
    /// Δ⁺_{f−1}(D) = max_v ⌈d⁺(v)/(f(v) − 1)⌉.
    pub max_out_weighted: usize,
}

impl DirectedStats {
    /// max(Δ⁻, Δ⁺_{f−1}).
    pub fn d(&self) -> usize {
        self.max_in.max(self.max_out_weighted)
    }
}

pub fn directed_degree_stats(d: &Digraph, f: &DegreeFn) -> DirectedStats {
    let max_in = d.in_degrees().into_iter().max().unwrap_or(0);
    let max_out_weighted = d
        .out_degrees()
        .into_iter()
        .enumerate()
        .filter(|&(_, x)| x > 0)
        .map(|(v, x)| {
            let fv = f.get(v);
            assert!(fv >= 2, "degree function must be at least 2 at vertex {v}");
            x.div_ceil(fv - 1)
        })
        .max()
        .unwrap_or(0);
    DirectedStats { max_in, max_out_weighted }
}

/// Free helper mirroring [`Multigraph::blowup`].
pub fn blowup(g: &Multigraph, m: usize) -> Multigraph {
    g.blowup(m)
}

/// Free helper mirroring [`Multigraph::underlying_simple`].
pub fn underlying_simple(g: &Multigraph) -> (Multigraph, Vec<usize>) {
    g.underlying_simple()
}

/// Common small graphs used across tests and examples.
pub mod named {
    use super::*;

    pub fn cycle(n: usize) -> Multigraph {
        Multigraph::simple(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn path(n: usize) -> Multigraph {
        Multigraph::simple(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn complete(n: usize) -> Multigraph {
        Multigraph::simple(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Multigraph {
        Multigraph::simple(a + b, (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j)))).unwrap()
    }

    pub fn star(leaves: usize) -> Multigraph {
        Multigraph::simple(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    pub fn petersen() -> Multigraph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Multigraph::simple(10, outer.chain(spokes).chain(inner)).unwrap()
    }

    pub fn directed_cycle(n: usize) -> Digraph {
        Digraph::new_simple(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn directed_path(n: usize) -> Digraph {
        Digraph::new_simple(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    /// K_n*: both orientations of every edge of K_n.
    pub fn complete_symmetric(n: usize) -> Digraph {
        Digraph::new_simple(
            n,
            (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))),
        )
        .unwrap()
    }

    /// Circulant digraph on `n` vertices with arcs `i → i + s` for each step.
    pub fn circulant(n: usize, steps: &[usize]) -> Digraph {
        Digraph::new_simple(
            n,
            (0..n).flat_map(|i| steps.iter().map(move |&s| (i, (i + s) % n))),
        )
        .unwrap()
    }

    pub fn transitive_tournament(n: usize) -> Digraph {
        Digraph::new_simple(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }
}
