//! Edge/arc colorings claimed to split a graph into forests, branchings or
//! pseudoforests, and the checker that accepts or rejects them.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::dsu::RollbackDsu;
use crate::graph::{DegreeFn, Digraph, Multigraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CertKind {
    DegreeFForest,
    DegreeFBranching,
    DegreeFPseudoforest,
    PlainForest,
    PlainPseudoforest,
    /// Each class has degree at most f(v) at every vertex (an f-coloring).
    DegreeFSubgraph,
}

impl CertKind {
    pub const ALL: [CertKind; 6] = [
        CertKind::DegreeFForest,
        CertKind::DegreeFBranching,
        CertKind::DegreeFPseudoforest,
        CertKind::PlainForest,
        CertKind::PlainPseudoforest,
        CertKind::DegreeFSubgraph,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CertKind::DegreeFForest => "degree-f-forest",
            CertKind::DegreeFBranching => "degree-f-branching",
            CertKind::DegreeFPseudoforest => "degree-f-pseudoforest",
            CertKind::PlainForest => "plain-forest",
            CertKind::PlainPseudoforest => "plain-pseudoforest",
            CertKind::DegreeFSubgraph => "degree-f-subgraph",
        }
    }

    pub fn parse(name: &str) -> Option<CertKind> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }

    pub fn needs_f(self) -> bool {
        !matches!(self, CertKind::PlainForest | CertKind::PlainPseudoforest)
    }
}

impl fmt::Display for CertKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A coloring of every parallel copy. `assignment[i]` lists the classes of
/// the copies of pair (or arc class) `i`, one entry per copy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionCertificate {
    pub kind: CertKind,
    pub k: usize,
    pub assignment: Vec<Vec<usize>>,
    pub f: Option<DegreeFn>,
}

impl DecompositionCertificate {
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &c in self.assignment.iter().flatten() {
            if c < self.k {
                sizes[c] += 1;
            }
        }
        sizes
    }

    /// Relabels class `c` as `perm[c]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut out = self.clone();
        for c in out.assignment.iter_mut().flatten() {
            *c = perm[*c];
        }
        out
    }

    /// Drops empty classes, renumbering the rest in order.
    pub fn compacted(&self) -> Self {
        let sizes = self.class_sizes();
        let mut remap = vec![usize::MAX; self.k];
        let mut next = 0;
        for (c, &s) in sizes.iter().enumerate() {
            if s > 0 {
                remap[c] = next;
                next += 1;
            }
        }
        let mut out = self.permuted(&remap);
        out.k = next;
        out
    }
}

/// The graph a certificate is checked against.
#[derive(Debug, Clone, Copy)]
pub enum GraphRef<'a> {
    Undirected(&'a Multigraph),
    Directed(&'a Digraph),
}

impl<'a> From<&'a Multigraph> for GraphRef<'a> {
    fn from(g: &'a Multigraph) -> Self {
        GraphRef::Undirected(g)
    }
}

impl<'a> From<&'a Digraph> for GraphRef<'a> {
    fn from(d: &'a Digraph) -> Self {
        GraphRef::Directed(d)
    }
}

impl GraphRef<'_> {
    fn n(&self) -> usize {
        match self {
            GraphRef::Undirected(g) => g.n(),
            GraphRef::Directed(d) => d.n(),
        }
    }

    /// `(tail, head, mult)` per pair; undirected pairs read as `(u, v)`.
    fn classes(&self) -> Vec<(usize, usize, usize)> {
        match self {
            GraphRef::Undirected(g) => g.edges().iter().map(|e| (e.u, e.v, e.mult)).collect(),
            GraphRef::Directed(d) => d.arcs().iter().map(|a| (a.tail, a.head, a.mult)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("assignment has {found} entries but the graph has {expected} edge classes")]
    EntryCountMismatch { expected: usize, found: usize },
    #[error("edge class {entry} has {expected} copies but {found} colors were assigned")]
    CopyCountMismatch { entry: usize, expected: usize, found: usize },
    #[error("edge class {entry} uses class {class} outside 0..{k}")]
    ClassOutOfRange { entry: usize, class: usize, k: usize },
    #[error("certificate kind {0} needs a degree function")]
    MissingDegreeFn(CertKind),
    #[error("certificate kind {0} needs a directed graph")]
    NeedsDirected(CertKind),
    #[error("class {class} contains a cycle through vertices {vertices:?}")]
    Cycle { class: usize, vertices: Vec<usize> },
    #[error("class {class} has a component with two cycles at vertex {vertex}")]
    ExtraCycle { class: usize, vertex: usize },
    #[error("class {class} has degree {degree} > {bound} at vertex {vertex}")]
    Degree { class: usize, vertex: usize, degree: usize, bound: usize },
    #[error("class {class} has indegree {indegree} > 1 at vertex {vertex}")]
    Indegree { class: usize, vertex: usize, indegree: usize },
    #[error("class {class} has outdegree {outdegree} > {bound} at vertex {vertex}")]
    Outdegree { class: usize, vertex: usize, outdegree: usize, bound: usize },
}

impl Violation {
    /// Coverage problems: the coloring does not describe the graph's edge
    /// multiset, as opposed to a class breaking its kind.
    pub fn is_coverage(&self) -> bool {
        matches!(
            self,
            Violation::EntryCountMismatch { .. }
                | Violation::CopyCountMismatch { .. }
                | Violation::ClassOutOfRange { .. }
        )
    }

    pub fn class(&self) -> Option<usize> {
        match self {
            Violation::Cycle { class, .. }
            | Violation::ExtraCycle { class, .. }
            | Violation::Degree { class, .. }
            | Violation::Indegree { class, .. }
            | Violation::Outdegree { class, .. } => Some(*class),
            _ => None,
        }
    }
}

/// Accepts iff `cert` covers every copy exactly once and each class is of
/// the certificate's kind.
pub fn verify_certificate<'a>(
    graph: impl Into<GraphRef<'a>>,
    cert: &DecompositionCertificate,
) -> Result<(), Violation> {
    let graph = graph.into();
    let pairs = graph.classes();
    if cert.assignment.len() != pairs.len() {
        return Err(Violation::EntryCountMismatch {
            expected: pairs.len(),
            found: cert.assignment.len(),
        });
    }
    for (entry, (&(_, _, mult), colors)) in pairs.iter().zip(&cert.assignment).enumerate() {
        if colors.len() != mult {
            return Err(Violation::CopyCountMismatch { entry, expected: mult, found: colors.len() });
        }
        if let Some(&class) = colors.iter().find(|&&c| c >= cert.k) {
            return Err(Violation::ClassOutOfRange { entry, class, k: cert.k });
        }
    }
    if cert.kind.needs_f() && cert.f.is_none() {
        return Err(Violation::MissingDegreeFn(cert.kind));
    }
    if cert.kind == CertKind::DegreeFBranching && matches!(graph, GraphRef::Undirected(_)) {
        return Err(Violation::NeedsDirected(cert.kind));
    }

    let n = graph.n();
    let mut by_class: Vec<Vec<(usize, usize)>> = vec![Vec::new(); cert.k];
    for (&(t, h, _), colors) in pairs.iter().zip(&cert.assignment) {
        for &c in colors {
            by_class[c].push((t, h));
        }
    }
    for (class, edges) in by_class.iter().enumerate() {
        check_class(n, class, edges, cert)?;
    }
    Ok(())
}

fn check_class(
    n: usize,
    class: usize,
    edges: &[(usize, usize)],
    cert: &DecompositionCertificate,
) -> Result<(), Violation> {
    let mut indeg = vec![0usize; n];
    let mut outdeg = vec![0usize; n];
    for &(t, h) in edges {
        outdeg[t] += 1;
        indeg[h] += 1;
    }
    let f = cert.f.as_ref();
    match cert.kind {
        CertKind::DegreeFBranching => {
            let f = f.unwrap();
            for v in 0..n {
                if indeg[v] > 1 {
                    return Err(Violation::Indegree { class, vertex: v, indegree: indeg[v] });
                }
                let bound = f.get(v).saturating_sub(1);
                if outdeg[v] > bound {
                    return Err(Violation::Outdegree { class, vertex: v, outdegree: outdeg[v], bound });
                }
            }
        }
        CertKind::DegreeFForest | CertKind::DegreeFPseudoforest | CertKind::DegreeFSubgraph => {
            let f = f.unwrap();
            for v in 0..n {
                let degree = indeg[v] + outdeg[v];
                if degree > f.get(v) {
                    return Err(Violation::Degree { class, vertex: v, degree, bound: f.get(v) });
                }
            }
        }
        CertKind::PlainForest | CertKind::PlainPseudoforest => {}
    }
    let mut dsu = RollbackDsu::new(n);
    match cert.kind {
        CertKind::DegreeFForest | CertKind::PlainForest | CertKind::DegreeFBranching => {
            for (i, &(a, b)) in edges.iter().enumerate() {
                if !dsu.add_forest_edge(a, b) {
                    return Err(Violation::Cycle { class, vertices: cycle_through(n, &edges[..i], a, b) });
                }
            }
        }
        CertKind::DegreeFPseudoforest | CertKind::PlainPseudoforest => {
            for &(a, b) in edges {
                if !dsu.add_pseudoforest_edge(a, b) {
                    return Err(Violation::ExtraCycle { class, vertex: a });
                }
            }
        }
        CertKind::DegreeFSubgraph => {}
    }
    Ok(())
}

/// Vertices of the cycle closed by adding `ab` to the forest `edges`.
fn cycle_through(n: usize, edges: &[(usize, usize)], a: usize, b: usize) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(x, y) in edges {
        adj[x].push(y);
        adj[y].push(x);
    }
    let mut prev = vec![usize::MAX; n];
    prev[a] = a;
    let mut queue = VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        if x == b {
            break;
        }
        for &y in &adj[x] {
            if prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut path = vec![b];
    let mut x = b;
    while x != a {
        x = prev[x];
        path.push(x);
    }
    path
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn cert(kind: CertKind, k: usize, assignment: Vec<Vec<usize>>, f: Option<usize>) -> DecompositionCertificate {
        DecompositionCertificate { kind, k, assignment, f: f.map(DegreeFn::constant) }
    }

    #[test]
    fn triangle_two_forests_accepted() {
        let t = cycle(3);
        let c = cert(CertKind::PlainForest, 2, vec![vec![0], vec![0], vec![1]], None);
        assert_eq!(verify_certificate(&t, &c), Ok(()));
    }

    #[test]
    fn triangle_one_forest_rejected() {
        let t = cycle(3);
        let c = cert(CertKind::PlainForest, 1, vec![vec![0], vec![0], vec![0]], None);
        match verify_certificate(&t, &c) {
            Err(Violation::Cycle { class: 0, vertices }) => assert_eq!(vertices.len(), 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn directed_triangle_is_not_a_branching() {
        let d = directed_cycle(3);
        let c = cert(CertKind::DegreeFBranching, 1, vec![vec![0]; 3], Some(2));
        // indegrees and outdegrees are all 1; only the underlying cycle fails
        assert!(matches!(verify_certificate(&d, &c), Err(Violation::Cycle { class: 0, .. })));
        let c = cert(CertKind::DegreeFBranching, 2, vec![vec![0], vec![0], vec![1]], Some(2));
        assert_eq!(verify_certificate(&d, &c), Ok(()));
    }

    #[test]
    fn parallel_copies_in_one_forest_form_a_cycle() {
        let g = Multigraph::new(2, [(0, 1, 2)]).unwrap();
        let c = cert(CertKind::PlainForest, 1, vec![vec![0, 0]], None);
        assert!(matches!(verify_certificate(&g, &c), Err(Violation::Cycle { .. })));
        let c = cert(CertKind::PlainPseudoforest, 1, vec![vec![0, 0]], None);
        assert_eq!(verify_certificate(&g, &c), Ok(()));
        let g3 = Multigraph::new(2, [(0, 1, 3)]).unwrap();
        let c = cert(CertKind::PlainPseudoforest, 1, vec![vec![0, 0, 0]], None);
        assert!(matches!(verify_certificate(&g3, &c), Err(Violation::ExtraCycle { .. })));
    }

    #[test]
    fn coverage_reported_separately() {
        let t = cycle(3);
        let short = cert(CertKind::PlainForest, 2, vec![vec![0], vec![0]], None);
        assert!(verify_certificate(&t, &short).unwrap_err().is_coverage());
        let extra = cert(CertKind::PlainForest, 2, vec![vec![0], vec![0], vec![1, 1]], None);
        assert!(verify_certificate(&t, &extra).unwrap_err().is_coverage());
        let range = cert(CertKind::PlainForest, 2, vec![vec![0], vec![0], vec![2]], None);
        assert!(verify_certificate(&t, &range).unwrap_err().is_coverage());
        let bad = cert(CertKind::PlainForest, 1, vec![vec![0]; 3], None);
        assert!(!verify_certificate(&t, &bad).unwrap_err().is_coverage());
    }

    #[test]
    fn degree_bounds() {
        let s = star(3);
        let c = cert(CertKind::DegreeFForest, 1, vec![vec![0]; 3], Some(2));
        assert!(matches!(
            verify_certificate(&s, &c),
            Err(Violation::Degree { class: 0, vertex: 0, degree: 3, bound: 2 })
        ));
        let d = Digraph::new_simple(3, [(0, 1), (0, 2)]).unwrap();
        let c = cert(CertKind::DegreeFBranching, 1, vec![vec![0]; 2], Some(2));
        assert!(matches!(verify_certificate(&d, &c), Err(Violation::Outdegree { vertex: 0, .. })));
        let d = Digraph::new_simple(3, [(1, 0), (2, 0)]).unwrap();
        let c = cert(CertKind::DegreeFBranching, 1, vec![vec![0]; 2], Some(3));
        assert!(matches!(verify_certificate(&d, &c), Err(Violation::Indegree { vertex: 0, .. })));
    }

    #[test]
    fn branching_needs_directed_graph() {
        let c = cert(CertKind::DegreeFBranching, 1, vec![vec![0]], Some(2));
        assert!(matches!(
            verify_certificate(&path(2), &c),
            Err(Violation::NeedsDirected(_))
        ));
    }

    #[test]
    fn compaction_drops_empty_classes() {
        let c = cert(CertKind::PlainForest, 4, vec![vec![3], vec![1], vec![3]], None).compacted();
        assert_eq!(c.k, 2);
        assert_eq!(c.assignment, vec![vec![1], vec![0], vec![1]]);
    }
}
