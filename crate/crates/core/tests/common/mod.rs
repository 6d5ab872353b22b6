//! Instance generators shared by the integration tests.
#![allow(dead_code)]

use arborize_core::graph::named::circulant;
use arborize_core::{DegreeFn, Digraph, Multigraph};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random multigraph on 2..=max_n vertices with total multiplicity at most
/// `max_total` (possibly edgeless).
pub fn random_multigraph(rng: &mut impl Rng, max_n: usize, max_total: usize) -> Multigraph {
    let n = rng.gen_range(2..=max_n);
    let total = rng.gen_range(0..=max_total);
    let edges: Vec<(usize, usize, usize)> = (0..total)
        .map(|_| {
            let u = rng.gen_range(0..n);
            let mut v = rng.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            (u, v, 1)
        })
        .collect();
    Multigraph::new(n, edges).unwrap()
}

pub fn random_degree_fn(rng: &mut impl Rng, n: usize, lo: usize, hi: usize) -> DegreeFn {
    let values: Vec<usize> = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
    DegreeFn::from_values(&values)
}

/// Brute-force max over S with |S| ≥ 2 of ⌈e(S)/(|S| − 1)⌉.
pub fn nash_williams(g: &Multigraph) -> usize {
    subset_max(g, 2, |e, s| e.div_ceil(s - 1))
}

/// Brute-force max over nonempty S of ⌈e(S)/|S|⌉.
pub fn hakimi(g: &Multigraph) -> usize {
    subset_max(g, 1, |e, s| e.div_ceil(s))
}

fn subset_max(g: &Multigraph, min_size: usize, bound: impl Fn(usize, usize) -> usize) -> usize {
    let n = g.n();
    (1u32..1 << n)
        .filter(|m| m.count_ones() as usize >= min_size)
        .map(|mask| {
            let e: usize = g
                .edges()
                .iter()
                .filter(|e| mask >> e.u & 1 == 1 && mask >> e.v & 1 == 1)
                .map(|e| e.mult)
                .sum();
            bound(e, mask.count_ones() as usize)
        })
        .max()
        .unwrap_or(0)
}

/// max_v ⌈d(v)/f(v)⌉ recounted from the edge list.
pub fn max_degree_ratio(g: &Multigraph, f: &DegreeFn) -> usize {
    let mut deg = vec![0usize; g.n()];
    for e in g.edges() {
        deg[e.u] += e.mult;
        deg[e.v] += e.mult;
    }
    (0..g.n()).map(|v| deg[v].div_ceil(f.get(v))).max().unwrap_or(0)
}

/// Cyclic n-lift of `base`: vertex (v, i) ↦ v·n + i and arc u → w with
/// voltage c becomes (u, i) → (w, i + c mod n).
pub fn cyclic_lift(base: &Digraph, n: usize, rng: &mut impl Rng) -> Digraph {
    let mut arcs = Vec::new();
    for a in base.arcs() {
        let c = rng.gen_range(0..n);
        arcs.extend((0..n).map(|i| (a.tail * n + i, a.head * n + (i + c) % n)));
    }
    Digraph::new_simple(base.n() * n, arcs).unwrap()
}

/// Directed circulant on 4r + 1 vertices with r random steps from 1..=2r:
/// an Eulerian orientation of a simple 2r-regular graph.
pub fn eulerian_circulant(r: usize, rng: &mut impl Rng) -> Digraph {
    let mut steps: Vec<usize> = (1..=2 * r).collect();
    steps.shuffle(rng);
    steps.truncate(r);
    steps.sort_unstable();
    circulant(4 * r + 1, &steps)
}

/// `g` with every edge replaced by a path of s + 1 edges.
pub fn subdivide(g: &Multigraph, s: usize) -> Multigraph {
    let mut n = g.n();
    let mut pairs = Vec::new();
    for e in g.edges() {
        let mut prev = e.u;
        for _ in 0..s {
            pairs.push((prev, n));
            prev = n;
            n += 1;
        }
        pairs.push((prev, e.v));
    }
    Multigraph::simple(n, pairs).unwrap()
}

/// Cycle C_n with a pendant vertex at every cycle vertex.
pub fn sun(n: usize) -> Multigraph {
    let cycle = (0..n).map(|i| (i, (i + 1) % n));
    let pendants = (0..n).map(|i| (i, n + i));
    Multigraph::simple(2 * n, cycle.chain(pendants)).unwrap()
}
