//! Bipartite f-coloring and the auxiliary bipartite graph of a digraph.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::certificate::{CertKind, DecompositionCertificate};
use crate::graph::{delta_f, DegreeFn, Digraph, Multigraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("graph is not bipartite: odd cycle through vertex {vertex}")]
pub struct NotBipartite {
    pub vertex: usize,
}

fn two_coloring(b: &Multigraph) -> Result<Vec<bool>, NotBipartite> {
    let adj = b.adjacency();
    let mut side: Vec<Option<bool>> = vec![None; b.n()];
    for root in 0..b.n() {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(false);
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            let sx = side[x].unwrap();
            for &(_, y) in &adj[x] {
                match side[y] {
                    None => {
                        side[y] = Some(!sx);
                        queue.push_back(y);
                    }
                    Some(sy) if sy == sx => return Err(NotBipartite { vertex: y }),
                    Some(_) => {}
                }
            }
        }
    }
    Ok(side.into_iter().map(|s| s.unwrap_or(false)).collect())
}

const FREE: u32 = u32::MAX;

/// Splits every parallel copy of a bipartite multigraph into Δ_g(B) classes,
/// each with at most g(v) edges at v.
///
/// Vertex v is split into min(g(v), d(v)) clones that take its edges round
/// robin, so every clone has degree at most Δ_g(B); the clone graph is then
/// properly edge-colored with that many colors by alternating-path swaps.
pub fn hakimi_kariv_color(b: &Multigraph, g: &DegreeFn) -> Result<DecompositionCertificate, NotBipartite> {
    two_coloring(b)?;
    let delta = delta_f(b, g);
    let deg = b.degrees();
    let mut base = vec![0usize; b.n() + 1];
    for v in 0..b.n() {
        base[v + 1] = base[v] + g.get(v).min(deg[v]);
    }
    let nodes = base[b.n()];
    let mut seen = vec![0usize; b.n()];
    let mut clone_of = |v: usize| {
        let c = base[v] + seen[v] % (base[v + 1] - base[v]);
        seen[v] += 1;
        c
    };
    let mut ends: Vec<(usize, usize)> = Vec::with_capacity(b.total_edges());
    for e in b.edges() {
        for _ in 0..e.mult {
            ends.push((clone_of(e.u), clone_of(e.v)));
        }
    }

    let mut at = vec![FREE; nodes * delta];
    let mut color = vec![0usize; ends.len()];
    let free_at = |at: &[u32], x: usize| (0..delta).find(|&c| at[x * delta + c] == FREE).expect("clone degree within Δ");
    let mut path = Vec::new();
    for (id, &(x, y)) in ends.iter().enumerate() {
        let alpha = free_at(&at, x);
        if at[y * delta + alpha] != FREE {
            let beta = free_at(&at, y);
            // swap colors on the alpha/beta path leaving y; in a bipartite
            // graph it cannot end at x, which misses alpha
            path.clear();
            let (mut cur, mut c) = (y, alpha);
            while at[cur * delta + c] != FREE {
                let e = at[cur * delta + c] as usize;
                path.push(e);
                let (p, q) = ends[e];
                cur = if p == cur { q } else { p };
                c = if c == alpha { beta } else { alpha };
            }
            for &e in &path {
                let (p, q) = ends[e];
                at[p * delta + color[e]] = FREE;
                at[q * delta + color[e]] = FREE;
            }
            for &e in &path {
                let (p, q) = ends[e];
                color[e] = if color[e] == alpha { beta } else { alpha };
                at[p * delta + color[e]] = e as u32;
                at[q * delta + color[e]] = e as u32;
            }
        }
        color[id] = alpha;
        at[x * delta + alpha] = id as u32;
        at[y * delta + alpha] = id as u32;
    }

    let mut next = 0;
    let assignment = b
        .edges()
        .iter()
        .map(|e| {
            let out = color[next..next + e.mult].to_vec();
            next += e.mult;
            out
        })
        .collect();
    Ok(DecompositionCertificate { kind: CertKind::DegreeFSubgraph, k: delta, assignment, f: Some(g.clone()) })
}

/// Bipartite graph with a copy `v_X = v` and `v_Y = n + v` of each vertex
/// and one edge `tail_X – head_Y` per arc, plus g(v_X) = f(v) − 1 and
/// g(v_Y) = 1. Pair `i` of `graph` is arc class `i` of the digraph.
#[derive(Debug, Clone)]
pub struct AuxBipartite {
    pub graph: Multigraph,
    pub g: DegreeFn,
}

impl AuxBipartite {
    /// Arc colors from a coloring of `graph`, indexed like the digraph's arcs.
    pub fn arc_colors(&self, assignment: &[Vec<usize>]) -> Vec<Vec<usize>> {
        assert_eq!(assignment.len(), self.graph.num_pairs());
        assignment.to_vec()
    }
}

pub fn aux_bipartite(d: &Digraph, f: &DegreeFn) -> AuxBipartite {
    let n = d.n();
    let graph = Multigraph::new(2 * n, d.arcs().iter().map(|a| (a.tail, n + a.head, a.mult)))
        .expect("arcs map to distinct bipartite pairs");
    debug_assert_eq!(graph.num_pairs(), d.num_arc_classes());
    let values: Vec<usize> = (0..n)
        .map(|v| {
            let fv = f.get(v);
            assert!(fv >= 2, "degree function must be at least 2 at vertex {v}");
            fv - 1
        })
        .chain(core::iter::repeat_n(1, n))
        .collect();
    AuxBipartite { graph, g: DegreeFn::from_values(&values) }
}

/// Classes of a coloring of [`aux_bipartite`]`(d, f)` read as arc classes of
/// `d`: each has indegree ≤ 1 and outdegree ≤ f(v) − 1, so it is a
/// directed degree-f pseudoforest.
pub fn pseudoforests_from_coloring(
    d: &Digraph,
    f: &DegreeFn,
    coloring: &DecompositionCertificate,
) -> DecompositionCertificate {
    assert_eq!(coloring.assignment.len(), d.num_arc_classes());
    DecompositionCertificate {
        kind: CertKind::DegreeFPseudoforest,
        k: coloring.k,
        assignment: coloring.assignment.clone(),
        f: Some(f.clone()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::verify_certificate;
    use crate::graph::named::*;
    use crate::graph::directed_degree_stats;

    fn color_and_check(b: &Multigraph, g: &DegreeFn) -> DecompositionCertificate {
        let c = hakimi_kariv_color(b, g).unwrap();
        assert_eq!(c.k, delta_f(b, g));
        verify_certificate(b, &c).unwrap();
        c
    }

    #[test]
    fn k33_splits_into_perfect_matchings() {
        let c = color_and_check(&complete_bipartite(3, 3), &DegreeFn::constant(1));
        assert_eq!(c.k, 3);
        assert_eq!(c.class_sizes(), vec![3, 3, 3]);
    }

    #[test]
    fn star_with_weighted_center() {
        let g = DegreeFn::constant(1).with_override(0, 2).unwrap();
        let c = color_and_check(&star(5), &g);
        assert_eq!(c.k, 3);
    }

    #[test]
    fn parallel_edges_and_odd_cycles() {
        let b = Multigraph::new(4, [(0, 2, 3), (0, 3, 2), (1, 2, 4), (1, 3, 1)]).unwrap();
        color_and_check(&b, &DegreeFn::constant(1));
        color_and_check(&b, &DegreeFn::constant(2));
        assert!(hakimi_kariv_color(&cycle(5), &DegreeFn::constant(1)).unwrap_err().vertex < 5);
    }

    #[test]
    fn aux_graph_shapes() {
        let aux = aux_bipartite(&directed_cycle(3), &DegreeFn::constant(2));
        assert_eq!((aux.graph.n(), aux.graph.total_edges()), (6, 3));
        assert!(aux.graph.degrees().iter().all(|&d| d <= 1));

        let arc = Digraph::new_simple(2, [(0, 1)]).unwrap();
        let aux = aux_bipartite(&arc, &DegreeFn::constant(3));
        assert_eq!(aux.graph.edges()[0].u, 0);
        assert_eq!(aux.graph.edges()[0].v, 3);
        assert_eq!(aux.g.get(0), 2);
        assert_eq!(aux.g.get(3), 1);

        let k3 = complete_symmetric(3);
        let aux = aux_bipartite(&k3, &DegreeFn::constant(2));
        assert_eq!(aux.graph.total_edges(), 6);
        assert!(aux.graph.degrees().iter().all(|&d| d == 2));
    }

    #[test]
    fn aux_coloring_yields_d_pseudoforests() {
        let f = DegreeFn::constant(2);
        for d in [directed_cycle(7), circulant(12, &[1, 5]), transitive_tournament(3), complete_symmetric(4)] {
            let want = directed_degree_stats(&d, &f).d();
            let aux = aux_bipartite(&d, &f);
            let c = hakimi_kariv_color(&aux.graph, &aux.g).unwrap();
            assert_eq!(c.k, want);
            let p = pseudoforests_from_coloring(&d, &f, &c);
            verify_certificate(&d, &p).unwrap();
        }
    }
}
