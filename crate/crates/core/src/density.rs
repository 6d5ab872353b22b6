//! Arboricity, pseudoarboricity and degree-f pseudoarboricity, each with a
//! decomposition attaining the value and a dense vertex set proving it optimal.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::branchings::{aux_bipartite, hakimi_kariv_color};
use crate::certificate::{CertKind, DecompositionCertificate};
use crate::flow::FlowNetwork;
use crate::graph::{delta_f, DegreeFn, Multigraph};
use crate::orient::{orient, OrientationResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    /// ⌈e(S)/(|S|−1)⌉
    Arboricity,
    /// ⌈e(S)/|S|⌉
    Pseudoarboricity,
}

impl WitnessKind {
    pub fn name(self) -> &'static str {
        match self {
            WitnessKind::Arboricity => "arboricity",
            WitnessKind::Pseudoarboricity => "pseudoarboricity",
        }
    }
}

/// A vertex set whose edge density forces a lower bound. An empty set is
/// only used for edgeless graphs, where the bound is 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityWitness {
    pub set: Vec<usize>,
    pub e_s: usize,
    pub kind: WitnessKind,
    pub value: usize,
}

impl DensityWitness {
    fn new(g: &Multigraph, mut set: Vec<usize>, kind: WitnessKind) -> Self {
        set.sort_unstable();
        set.dedup();
        let e_s = g.edges_within_set(&set);
        let value = density_bound(kind, e_s, set.len());
        DensityWitness { set, e_s, kind, value }
    }

    /// Recounts e(S) in `g` and recomputes the bound.
    pub fn recount(&self, g: &Multigraph) -> (usize, usize) {
        let e_s = g.edges_within_set(&self.set);
        (e_s, density_bound(self.kind, e_s, self.set.len()))
    }
}

pub fn density_bound(kind: WitnessKind, e_s: usize, size: usize) -> usize {
    match kind {
        WitnessKind::Arboricity if size >= 2 => e_s.div_ceil(size - 1),
        WitnessKind::Pseudoarboricity if size >= 1 => e_s.div_ceil(size),
        _ => 0,
    }
}

#[derive(Debug, Clone)]
pub struct DensityResult {
    pub value: usize,
    pub decomposition: DecompositionCertificate,
    pub witness: DensityWitness,
}

/// Forests maintained by matroid-union augmentation.
struct ForestPacking<'g> {
    g: &'g Multigraph,
    elements: Vec<(usize, usize)>,
    ends: Vec<(usize, usize)>,
    forest_of: Vec<Option<usize>>,
    /// `members[i][v]` = elements of forest i incident to v.
    members: Vec<Vec<Vec<usize>>>,
}

impl<'g> ForestPacking<'g> {
    fn new(g: &'g Multigraph) -> Self {
        let elements: Vec<(usize, usize)> = g.copies().collect();
        let ends = elements.iter().map(|&(p, _)| (g.edges()[p].u, g.edges()[p].v)).collect();
        ForestPacking { g, forest_of: vec![None; elements.len()], elements, ends, members: Vec::new() }
    }

    fn attach(&mut self, x: usize, forest: usize) {
        let (a, b) = self.ends[x];
        self.members[forest][a].push(x);
        self.members[forest][b].push(x);
        self.forest_of[x] = Some(forest);
    }

    fn detach(&mut self, x: usize) {
        if let Some(i) = self.forest_of[x].take() {
            let (a, b) = self.ends[x];
            self.members[i][a].retain(|&y| y != x);
            self.members[i][b].retain(|&y| y != x);
        }
    }

    /// Elements on the path between `a` and `b` in forest `i`, or `None`
    /// if they lie in different trees.
    fn forest_path(&self, i: usize, a: usize, b: usize) -> Option<Vec<usize>> {
        let n = self.g.n();
        let mut via = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        seen[a] = true;
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            if x == b {
                let mut path = Vec::new();
                let mut y = b;
                while y != a {
                    let e = via[y];
                    path.push(e);
                    let (p, q) = self.ends[e];
                    y = if p == y { q } else { p };
                }
                return Some(path);
            }
            for &e in &self.members[i][x] {
                let (p, q) = self.ends[e];
                let y = if p == x { q } else { p };
                if !seen[y] {
                    seen[y] = true;
                    via[y] = e;
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// Inserts element `x0` by a shortest exchange sequence. On failure
    /// returns the vertex set spanned by all labeled elements, which then
    /// carries k spanning trees plus `x0`.
    fn insert(&mut self, x0: usize) -> Result<(), Vec<usize>> {
        let k = self.members.len();
        let mut label: Vec<Option<(usize, usize)>> = vec![None; self.elements.len()];
        let mut labeled = vec![false; self.elements.len()];
        labeled[x0] = true;
        let mut order = vec![x0];
        let mut queue = VecDeque::from([x0]);
        while let Some(x) = queue.pop_front() {
            let (a, b) = self.ends[x];
            for i in 0..k {
                if self.forest_of[x] == Some(i) {
                    continue;
                }
                match self.forest_path(i, a, b) {
                    None => {
                        self.augment(x, i, &label);
                        return Ok(());
                    }
                    Some(path) => {
                        for z in path {
                            if !labeled[z] {
                                labeled[z] = true;
                                label[z] = Some((x, i));
                                order.push(z);
                                queue.push_back(z);
                            }
                        }
                    }
                }
            }
        }
        let mut set: Vec<usize> = order.iter().flat_map(|&x| [self.ends[x].0, self.ends[x].1]).collect();
        set.sort_unstable();
        set.dedup();
        Err(set)
    }

    fn augment(&mut self, last: usize, forest: usize, label: &[Option<(usize, usize)>]) {
        let mut moves = vec![(last, forest)];
        let mut x = last;
        while let Some((prev, into)) = label[x] {
            moves.push((prev, into));
            x = prev;
        }
        for &(y, _) in &moves {
            self.detach(y);
        }
        for &(y, i) in &moves {
            self.attach(y, i);
        }
    }

    fn open_forest(&mut self) -> usize {
        self.members.push(vec![Vec::new(); self.g.n()]);
        self.members.len() - 1
    }

    fn certificate(&self) -> DecompositionCertificate {
        let mut assignment: Vec<Vec<usize>> = self.g.edges().iter().map(|e| Vec::with_capacity(e.mult)).collect();
        for (x, &(p, _)) in self.elements.iter().enumerate() {
            assignment[p].push(self.forest_of[x].expect("every element placed"));
        }
        DecompositionCertificate { kind: CertKind::PlainForest, k: self.members.len(), assignment, f: None }
    }
}

/// Arboricity by incremental matroid-union augmentation. The witness is the
/// tight set found the last time a new forest had to be opened.
pub fn arboricity(g: &Multigraph) -> DensityResult {
    let mut packing = ForestPacking::new(g);
    let mut tight: Vec<usize> = Vec::new();
    for x in 0..packing.elements.len() {
        if let Err(set) = packing.insert(x) {
            tight = set;
            let i = packing.open_forest();
            packing.attach(x, i);
        }
    }
    let witness = DensityWitness::new(g, tight, WitnessKind::Arboricity);
    let decomposition = packing.certificate();
    DensityResult { value: decomposition.k, decomposition, witness }
}

enum OwnershipOutcome {
    /// `owned[p]` = copies of pair p owned by its lower endpoint `u`.
    Feasible(Vec<usize>),
    Dense(Vec<usize>),
}

/// Can every copy be assigned to one endpoint with each vertex owning at
/// most `k`? Otherwise the source side of a min cut gives S with e(S) > k|S|.
fn ownership(g: &Multigraph, k: usize) -> OwnershipOutcome {
    let pairs = g.num_pairs();
    let (s, t) = (0, 1 + pairs + g.n());
    let vertex = |v: usize| 1 + pairs + v;
    let mut net = FlowNetwork::new(t + 1);
    let mut to_u = Vec::with_capacity(pairs);
    for (i, e) in g.edges().iter().enumerate() {
        net.add_edge(s, 1 + i, e.mult as u64);
        to_u.push(net.add_edge(1 + i, vertex(e.u), e.mult as u64));
        net.add_edge(1 + i, vertex(e.v), e.mult as u64);
    }
    for v in 0..g.n() {
        net.add_edge(vertex(v), t, k as u64);
    }
    let flow = net.max_flow(s, t);
    if flow == g.total_edges() as u64 {
        OwnershipOutcome::Feasible(to_u.into_iter().map(|id| net.flow(id) as usize).collect())
    } else {
        let side = net.residual_reachable(s);
        OwnershipOutcome::Dense((0..g.n()).filter(|&v| side[vertex(v)]).collect())
    }
}

/// Pseudoarboricity by binary search over a flow feasibility test.
pub fn pseudoarboricity(g: &Multigraph) -> DensityResult {
    if g.total_edges() == 0 {
        return DensityResult {
            value: 0,
            decomposition: DecompositionCertificate {
                kind: CertKind::PlainPseudoforest,
                k: 0,
                assignment: vec![Vec::new(); g.num_pairs()],
                f: None,
            },
            witness: DensityWitness::new(g, Vec::new(), WitnessKind::Pseudoarboricity),
        };
    }
    let (mut lo, mut hi) = (1, g.max_degree());
    while lo < hi {
        let mid = (lo + hi) / 2;
        match ownership(g, mid) {
            OwnershipOutcome::Feasible(_) => hi = mid,
            OwnershipOutcome::Dense(_) => lo = mid + 1,
        }
    }
    let pa = lo;
    let owned = match ownership(g, pa) {
        OwnershipOutcome::Feasible(o) => o,
        OwnershipOutcome::Dense(_) => unreachable!("max degree always admits an ownership"),
    };
    let set = match ownership(g, pa - 1) {
        OwnershipOutcome::Dense(set) => set,
        OwnershipOutcome::Feasible(_) => unreachable!("binary search found the least feasible bound"),
    };

    let mut next_color = vec![0usize; g.n()];
    let mut assignment = Vec::with_capacity(g.num_pairs());
    for (e, &by_u) in g.edges().iter().zip(&owned) {
        let mut colors = Vec::with_capacity(e.mult);
        for copy in 0..e.mult {
            let owner = if copy < by_u { e.u } else { e.v };
            colors.push(next_color[owner]);
            next_color[owner] += 1;
        }
        assignment.push(colors);
    }
    DensityResult {
        value: pa,
        decomposition: DecompositionCertificate { kind: CertKind::PlainPseudoforest, k: pa, assignment, f: None },
        witness: DensityWitness::new(g, set, WitnessKind::Pseudoarboricity),
    }
}

#[derive(Debug, Clone)]
pub struct DegreeFPseudoResult {
    pub value: usize,
    pub decomposition: DecompositionCertificate,
}

/// pa_f(G) = max{Δ_f(G), pa(G)}, with a decomposition built by orienting
/// (indegree ≤ k, outdegree ≤ k(f−1)) and f-coloring the auxiliary
/// bipartite graph into k classes of indegree ≤ 1 and outdegree ≤ f − 1.
pub fn degree_f_pseudoarboricity(g: &Multigraph, f: &DegreeFn) -> DegreeFPseudoResult {
    let k = delta_f(g, f).max(pseudoarboricity(g).value);
    let indeg = DegreeFn::constant(k);
    let outdeg = f.map(g.n(), |_, fv| k * (fv - 1));
    let orientation = match orient(g, &indeg, &outdeg) {
        OrientationResult::Oriented(o) => o,
        OrientationResult::Infeasible(w) => {
            unreachable!("k = max(Δ_f, pa) satisfies both orientation conditions: {w:?}")
        }
    };
    let (d, sources) = orientation.to_digraph(g);
    let aux = aux_bipartite(&d, f);
    let coloring = hakimi_kariv_color(&aux.graph, &aux.g).expect("auxiliary graph is bipartite");
    debug_assert!(coloring.k <= k.max(1));
    let mut directed = DecompositionCertificate {
        kind: CertKind::DegreeFPseudoforest,
        k,
        assignment: coloring.assignment,
        f: Some(f.clone()),
    };
    directed.assignment = aux.arc_colors(&directed.assignment);
    let decomposition = crate::orient::undirect_certificate(g, &sources, &directed);
    DegreeFPseudoResult { value: k, decomposition }
}

/// max{Δ_f(G) + 1, 2·pa(G)}, an upper bound on a_f(G).
pub fn pseudoforest_upper_bound(g: &Multigraph, f: &DegreeFn) -> usize {
    (delta_f(g, f) + 1).max(2 * pseudoarboricity(g).value)
}
