//! Exact a_f, ⃗a_f and pa_f on tiny instances by exhaustive search.
//!
//! Iterative deepening on the number of colors k; for each k a DFS assigns
//! parallel copies in order, lowest color first, where a copy may open at
//! most one new color. Partial classes are pruned as soon as a degree bound
//! or the acyclicity condition fails.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::certificate::{verify_certificate, CertKind, DecompositionCertificate, GraphRef};
use crate::dsu::RollbackDsu;
use crate::graph::{DegreeFn, Digraph, Multigraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleBudget {
    /// Largest total number of parallel copies accepted.
    pub max_edges: usize,
    /// Largest k tried.
    pub max_colors: usize,
    /// DFS nodes before giving up with a non-exact answer.
    pub max_nodes: Option<u64>,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_edges: 14, max_colors: 14, max_nodes: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{edges} edge copies exceed the oracle budget of {max_edges}")]
    TooLarge { edges: usize, max_edges: usize },
    #[error("no decomposition with at most {max_colors} colors")]
    ColorLimit { max_colors: usize },
    #[error("vertex {vertex} has f = {f}, too small for any class to use its edges")]
    Infeasible { vertex: usize, f: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// Minimum k if `exact`, otherwise the best verified upper bound.
    pub value: usize,
    pub exact: bool,
    /// Every k below this was refuted.
    pub lower: usize,
    pub witness: DecompositionCertificate,
    pub nodes: u64,
}

/// a_f(G): fewest degree-f forests covering G.
pub fn brute_a_f(g: &Multigraph, f: &DegreeFn, budget: &OracleBudget) -> Result<OracleResult, OracleError> {
    brute_a_f_with(g, f, budget, &mut || false)
}

/// pa_f(G): fewest degree-f pseudoforests covering G.
pub fn brute_pa_f(g: &Multigraph, f: &DegreeFn, budget: &OracleBudget) -> Result<OracleResult, OracleError> {
    brute_pa_f_with(g, f, budget, &mut || false)
}

/// ⃗a_f(D): fewest degree-f branchings (in-degree ≤ 1, out-degree ≤ f − 1,
/// acyclic underlying graph) covering D.
pub fn brute_vec_a_f(d: &Digraph, f: &DegreeFn, budget: &OracleBudget) -> Result<OracleResult, OracleError> {
    brute_vec_a_f_with(d, f, budget, &mut || false)
}

/// As [`brute_a_f`], polling `abort` periodically; an abort yields the best
/// known upper bound flagged non-exact.
pub fn brute_a_f_with(
    g: &Multigraph,
    f: &DegreeFn,
    budget: &OracleBudget,
    abort: &mut dyn FnMut() -> bool,
) -> Result<OracleResult, OracleError> {
    let pairs: Vec<_> = g.edges().iter().map(|e| (e.u, e.v, e.mult)).collect();
    Search::new(g.n(), pairs, f, CertKind::DegreeFForest).run(GraphRef::from(g), budget, abort)
}

pub fn brute_pa_f_with(
    g: &Multigraph,
    f: &DegreeFn,
    budget: &OracleBudget,
    abort: &mut dyn FnMut() -> bool,
) -> Result<OracleResult, OracleError> {
    let pairs: Vec<_> = g.edges().iter().map(|e| (e.u, e.v, e.mult)).collect();
    Search::new(g.n(), pairs, f, CertKind::DegreeFPseudoforest).run(GraphRef::from(g), budget, abort)
}

pub fn brute_vec_a_f_with(
    d: &Digraph,
    f: &DegreeFn,
    budget: &OracleBudget,
    abort: &mut dyn FnMut() -> bool,
) -> Result<OracleResult, OracleError> {
    let arcs: Vec<_> = d.arcs().iter().map(|a| (a.tail, a.head, a.mult)).collect();
    Search::new(d.n(), arcs, f, CertKind::DegreeFBranching).run(GraphRef::from(d), budget, abort)
}

struct Search<'f> {
    n: usize,
    pairs: Vec<(usize, usize, usize)>,
    /// (pair, is first copy of its pair) per copy, in assignment order.
    copies: Vec<(usize, bool)>,
    f: &'f DegreeFn,
    kind: CertKind,
}

/// Per-color state of a partial assignment.
struct Classes {
    dsu: Vec<RollbackDsu>,
    /// Undirected: degree. Directed: out-degree.
    deg: Vec<Vec<usize>>,
    indeg: Vec<Vec<usize>>,
}

impl<'f> Search<'f> {
    fn new(n: usize, pairs: Vec<(usize, usize, usize)>, f: &'f DegreeFn, kind: CertKind) -> Self {
        let copies = pairs.iter().enumerate().flat_map(|(i, &(_, _, m))| (0..m).map(move |c| (i, c == 0))).collect();
        Search { n, pairs, copies, f, kind }
    }

    fn classes(&self, k: usize) -> Classes {
        Classes {
            dsu: (0..k).map(|_| RollbackDsu::new(self.n)).collect(),
            deg: vec![vec![0; self.n]; k],
            indeg: vec![vec![0; self.n]; k],
        }
    }

    /// Adds copy of pair `p` to class `c` if that keeps the class valid.
    fn try_add(&self, st: &mut Classes, p: usize, c: usize) -> bool {
        let (a, b, _) = self.pairs[p];
        match self.kind {
            CertKind::DegreeFBranching => {
                if st.indeg[c][b] >= 1 || st.deg[c][a] + 1 > self.f.get(a).saturating_sub(1) {
                    return false;
                }
                if !st.dsu[c].add_forest_edge(a, b) {
                    return false;
                }
                st.deg[c][a] += 1;
                st.indeg[c][b] += 1;
            }
            _ => {
                if st.deg[c][a] + 1 > self.f.get(a) || st.deg[c][b] + 1 > self.f.get(b) {
                    return false;
                }
                let ok = if self.kind == CertKind::DegreeFForest {
                    st.dsu[c].add_forest_edge(a, b)
                } else {
                    st.dsu[c].add_pseudoforest_edge(a, b)
                };
                if !ok {
                    return false;
                }
                st.deg[c][a] += 1;
                st.deg[c][b] += 1;
            }
        }
        true
    }

    fn remove(&self, st: &mut Classes, p: usize, c: usize, checkpoint: usize) {
        let (a, b, _) = self.pairs[p];
        st.dsu[c].rollback(checkpoint);
        st.deg[c][a] -= 1;
        if self.kind == CertKind::DegreeFBranching {
            st.indeg[c][b] -= 1;
        } else {
            st.deg[c][b] -= 1;
        }
    }

    fn certificate(&self, k: usize, colors: &[usize]) -> DecompositionCertificate {
        let mut assignment: Vec<Vec<usize>> = self.pairs.iter().map(|_| Vec::new()).collect();
        for (&(p, _), &c) in self.copies.iter().zip(colors) {
            assignment[p].push(c);
        }
        DecompositionCertificate { kind: self.kind, k, assignment, f: Some(self.f.clone()) }
    }

    /// First-fit coloring; `None` if some copy fits no class at all.
    fn greedy(&self) -> Option<(usize, Vec<usize>)> {
        let m = self.copies.len();
        let mut st = self.classes(m);
        let mut colors = Vec::with_capacity(m);
        let mut used = 0;
        for &(p, _) in &self.copies {
            let c = (0..m).find(|&c| self.try_add(&mut st, p, c))?;
            used = used.max(c + 1);
            colors.push(c);
        }
        Some((used, colors))
    }

    fn run(
        &self,
        graph: GraphRef<'_>,
        budget: &OracleBudget,
        abort: &mut dyn FnMut() -> bool,
    ) -> Result<OracleResult, OracleError> {
        let m = self.copies.len();
        if m > budget.max_edges {
            return Err(OracleError::TooLarge { edges: m, max_edges: budget.max_edges });
        }
        let Some((upper, greedy_colors)) = self.greedy() else {
            let &(p, _) = self.copies.iter().find(|&&(p, _)| !self.try_add(&mut self.classes(1), p, 0)).unwrap();
            let (a, b, _) = self.pairs[p];
            let vertex = if self.kind == CertKind::DegreeFBranching || self.f.get(a) == 0 { a } else { b };
            return Err(OracleError::Infeasible { vertex, f: self.f.get(vertex) });
        };
        let mut nodes = 0u64;
        let mut ctl = Control { nodes: &mut nodes, limit: budget.max_nodes, abort, aborted: false };
        let start = usize::from(m > 0);
        for k in start..upper.min(budget.max_colors + 1) {
            let mut st = self.classes(k);
            let mut colors = Vec::with_capacity(m);
            if self.dfs(&mut st, k, 0, &mut colors, &mut ctl) {
                let witness = self.certificate(k, &colors);
                verify_certificate(graph, &witness).expect("oracle witness verifies");
                return Ok(OracleResult { value: k, exact: true, lower: k, witness, nodes });
            }
            if ctl.aborted {
                let witness = self.certificate(upper, &greedy_colors);
                verify_certificate(graph, &witness).expect("greedy witness verifies");
                return Ok(OracleResult { value: upper, exact: false, lower: k, witness, nodes });
            }
        }
        if upper > budget.max_colors {
            return Err(OracleError::ColorLimit { max_colors: budget.max_colors });
        }
        let witness = self.certificate(upper, &greedy_colors);
        verify_certificate(graph, &witness).expect("greedy witness verifies");
        Ok(OracleResult { value: upper, exact: true, lower: upper, witness, nodes })
    }

    fn dfs(&self, st: &mut Classes, k: usize, i: usize, colors: &mut Vec<usize>, ctl: &mut Control<'_>) -> bool {
        if i == self.copies.len() {
            return true;
        }
        if ctl.tick() {
            return false;
        }
        let (p, first) = self.copies[i];
        let opened = colors.iter().max().map_or(0, |&c| c + 1);
        // copies of one pair are interchangeable: keep their colors sorted
        let from = if first { 0 } else { colors[i - 1] + usize::from(self.kind != CertKind::DegreeFPseudoforest) };
        for c in from..k.min(opened + 1) {
            let checkpoint = st.dsu[c].checkpoint();
            if !self.try_add(st, p, c) {
                continue;
            }
            colors.push(c);
            if self.dfs(st, k, i + 1, colors, ctl) {
                return true;
            }
            colors.pop();
            self.remove(st, p, c, checkpoint);
            if ctl.aborted {
                return false;
            }
        }
        false
    }
}

struct Control<'a> {
    nodes: &'a mut u64,
    limit: Option<u64>,
    abort: &'a mut dyn FnMut() -> bool,
    aborted: bool,
}

impl Control<'_> {
    /// Counts a node; true once the search must stop.
    fn tick(&mut self) -> bool {
        *self.nodes += 1;
        if self.limit.is_some_and(|l| *self.nodes > l) || ((*self.nodes).is_multiple_of(1024) && (self.abort)()) {
            self.aborted = true;
        }
        self.aborted
    }
}
