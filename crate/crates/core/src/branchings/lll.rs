//! Random vertex coloring with balanced in/out color counts, repaired by
//! local resampling.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::analytic::{exceeds_nine_tenths, lemma_holds, lemma_threshold};
use crate::graph::{directed_degree_stats, DegreeFn, Digraph};

pub const RESAMPLING_CAP: usize = 1_000_000;

/// φ: V → [0, k) with d⁻(v,i) ≤ B and d⁺(v,i) ≤ (f(v) − 1)·B for every
/// vertex v and color i, where B = d/k + 3√(d ln d / k) and d⁻(v,i),
/// d⁺(v,i) count in- and out-neighbours of color i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexColoring {
    pub colors: Vec<usize>,
    pub k: usize,
    pub d: usize,
    /// Largest admissible d⁻(v,i).
    pub in_threshold: usize,
    /// Largest admissible d⁺(v,i), per vertex.
    pub out_thresholds: Vec<usize>,
    pub resamplings: usize,
    /// d ≤ 1: B < 1 for k ≥ 2, so the bound is replaced by the trivial one.
    pub degenerate: bool,
    /// k > d^{9/10}, outside the range where the bound is guaranteed.
    pub k_too_large: bool,
}

impl VertexColoring {
    /// (d⁻(v,i), d⁺(v,i)) recounted from scratch, indexed `[v][i]`.
    pub fn counts(&self, d: &Digraph) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        color_counts(d, &self.colors, self.k)
    }
}

fn color_counts(d: &Digraph, colors: &[usize], k: usize) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let mut ins = vec![vec![0; k]; d.n()];
    let mut outs = vec![vec![0; k]; d.n()];
    for a in d.arcs() {
        ins[a.head][colors[a.tail]] += a.mult;
        outs[a.tail][colors[a.head]] += a.mult;
    }
    (ins, outs)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LllError {
    #[error("k must be positive")]
    ZeroColors,
    #[error("{resamplings} resamplings without success; vertex {vertex} color {color} still violated")]
    IterationLimit { resamplings: usize, vertex: usize, color: usize, indegree: usize, outdegree: usize },
}

/// Checks the color-count bounds from scratch with exact arithmetic.
/// Returns the first violated `(v, i)`. For d ≤ 1 every coloring passes.
pub fn check_lemma_bounds(d: &Digraph, f: &DegreeFn, colors: &[usize], k: usize) -> Result<(), (usize, usize)> {
    let dd = directed_degree_stats(d, f).d() as u64;
    if dd <= 1 {
        return Ok(());
    }
    let (ins, outs) = color_counts(d, colors, k);
    for v in 0..d.n() {
        for i in 0..k {
            let s = f.get(v) as u64 - 1;
            if !lemma_holds(ins[v][i] as u64, 1, dd, k as u64) || !lemma_holds(outs[v][i] as u64, s, dd, k as u64) {
                return Err((v, i));
            }
        }
    }
    Ok(())
}

/// Colors V(D) with `k` colors satisfying the count bounds of
/// [`VertexColoring`]. Starts uniformly at random and, while some (v, i)
/// is violated, recolors every in- and out-neighbour of the lowest such v.
pub fn lll_vertex_coloring(d: &Digraph, f: &DegreeFn, k: usize, seed: u64) -> Result<VertexColoring, LllError> {
    lll_vertex_coloring_capped(d, f, k, seed, RESAMPLING_CAP)
}

pub(crate) fn lll_vertex_coloring_capped(
    dg: &Digraph,
    f: &DegreeFn,
    k: usize,
    seed: u64,
    cap: usize,
) -> Result<VertexColoring, LllError> {
    if k == 0 {
        return Err(LllError::ZeroColors);
    }
    let n = dg.n();
    let d = directed_degree_stats(dg, f).d();
    let degenerate = d <= 1;
    let mut memo: BTreeMap<usize, usize> = BTreeMap::new();
    let mut threshold = |s: usize| -> usize {
        if degenerate {
            return d * s;
        }
        *memo.entry(s).or_insert_with(|| lemma_threshold(s as u64, d as u64, k as u64) as usize)
    };
    let in_threshold = threshold(1);
    let out_thresholds: Vec<usize> = (0..n).map(|v| threshold(f.get(v) - 1)).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut colors: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
    let out_adj = dg.out_adjacency();
    let in_adj = dg.in_adjacency();
    let arcs = dg.arcs();
    let mut ins = vec![0usize; n * k];
    let mut outs = vec![0usize; n * k];
    for a in arcs {
        ins[a.head * k + colors[a.tail]] += a.mult;
        outs[a.tail * k + colors[a.head]] += a.mult;
    }
    let violated_at = |ins: &[usize], outs: &[usize], v: usize, i: usize| {
        ins[v * k + i] > in_threshold || outs[v * k + i] > out_thresholds[v]
    };
    let mut violated: BTreeSet<(usize, usize)> = BTreeSet::new();
    for v in 0..n {
        for i in 0..k {
            if violated_at(&ins, &outs, v, i) {
                violated.insert((v, i));
            }
        }
    }

    let mut resamplings = 0;
    let mut stamp = vec![0usize; n];
    while let Some(&(v, i)) = violated.first() {
        if resamplings == cap {
            return Err(LllError::IterationLimit {
                resamplings,
                vertex: v,
                color: i,
                indegree: ins[v * k + i],
                outdegree: outs[v * k + i],
            });
        }
        resamplings += 1;
        let neighbours: Vec<usize> = out_adj[v].iter().chain(&in_adj[v]).map(|&(_, w)| w).collect();
        for w in neighbours {
            if stamp[w] == resamplings {
                continue;
            }
            stamp[w] = resamplings;
            let (old, new) = (colors[w], rng.gen_range(0..k));
            if old == new {
                continue;
            }
            colors[w] = new;
            for &(arc, x) in &out_adj[w] {
                let m = arcs[arc].mult;
                ins[x * k + old] -= m;
                ins[x * k + new] += m;
                for c in [old, new] {
                    if violated_at(&ins, &outs, x, c) {
                        violated.insert((x, c));
                    } else {
                        violated.remove(&(x, c));
                    }
                }
            }
            for &(arc, y) in &in_adj[w] {
                let m = arcs[arc].mult;
                outs[y * k + old] -= m;
                outs[y * k + new] += m;
                for c in [old, new] {
                    if violated_at(&ins, &outs, y, c) {
                        violated.insert((y, c));
                    } else {
                        violated.remove(&(y, c));
                    }
                }
            }
        }
    }

    Ok(VertexColoring {
        colors,
        k,
        d,
        in_threshold,
        out_thresholds,
        resamplings,
        degenerate,
        k_too_large: exceeds_nine_tenths(k as u64, d as u64),
    })
}
