//! The gadget G_t, blowup counterexamples and a search for small
//! multigraphs with large a_t*/2 subject to Δ_t = a = 2.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use thiserror::Error;

use crate::density::arboricity;
use crate::fractional::{
    check_dual, enumerate_degree_f_forests, solve_fractional, DualCheck, FractionalError, DEFAULT_EDGE_CAP,
};
use crate::graph::{delta_f, DegreeFn, Multigraph};
use crate::Rational;

fn rat(p: usize, q: usize) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("t must be at least 2, got {0}")]
    TooSmall(usize),
    #[error("pinning check failed: {0}")]
    PinningFailed(&'static str),
    #[error(transparent)]
    Fractional(#[from] FractionalError),
}

/// Largest t for which [`build_g_t`] runs its pinning checks.
pub const CHECKED_T_MAX: usize = 8;

/// G_t with its vertex and edge roles.
///
/// Vertices: u = 0, a = 1, b = 2, v = 3, c = 4, d = 5, then pendants
/// p_1..p_{t−2} at u and q_1..q_{t−2} at v. Pairs 0..7 are e_1..e_7:
/// the 6-cycle u a b v c d with multiplicities 2,1,2,1,2,1 and the chord
/// uv of multiplicity 1. Every pendant pair has multiplicity 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetSpec {
    pub t: usize,
    pub graph: Multigraph,
    pub pendants_u: Vec<usize>,
    pub pendants_v: Vec<usize>,
}

impl GadgetSpec {
    pub const U: usize = 0;
    pub const A: usize = 1;
    pub const B: usize = 2;
    pub const V: usize = 3;
    pub const C: usize = 4;
    pub const D: usize = 5;

    /// Pair index of e_i, 1 ≤ i ≤ 7.
    pub fn e(&self, i: usize) -> usize {
        assert!((1..=7).contains(&i));
        i - 1
    }

    pub fn f(&self) -> DegreeFn {
        DegreeFn::constant(self.t)
    }

    /// x_e = 2/(2t+3) on e_1, e_3, e_7 and 1/(2t+3) on every other edge of
    /// the underlying simple graph.
    pub fn reference_dual(&self) -> Vec<Rational> {
        let q = 2 * self.t + 3;
        (0..self.graph.num_pairs()).map(|p| if [0, 2, 6].contains(&p) { rat(2, q) } else { rat(1, q) }).collect()
    }

    /// (4t+7)/(2t+3).
    pub fn reference_objective(&self) -> Rational {
        rat(4 * self.t + 7, 2 * self.t + 3)
    }
}

/// Builds G_t without running the pinning checks.
pub fn build_g_t_unchecked(t: usize) -> Result<GadgetSpec, GadgetError> {
    if t < 2 {
        return Err(GadgetError::TooSmall(t));
    }
    let (u, a, b, v, c, d) = (0, 1, 2, 3, 4, 5);
    let mut edges = vec![(u, a, 2), (a, b, 1), (b, v, 2), (v, c, 1), (c, d, 2), (d, u, 1), (u, v, 1)];
    let pendants_u: Vec<usize> = (0..t - 2).map(|i| 6 + i).collect();
    let pendants_v: Vec<usize> = (0..t - 2).map(|i| 6 + (t - 2) + i).collect();
    edges.extend(pendants_u.iter().map(|&p| (u, p, 2)));
    edges.extend(pendants_v.iter().map(|&q| (v, q, 2)));
    let graph = Multigraph::new(2 * t + 2, edges).expect("gadget edges are valid");
    Ok(GadgetSpec { t, graph, pendants_u, pendants_v })
}

/// Builds G_t and, for t ≤ [`CHECKED_T_MAX`], confirms that
/// (i) every degree-t forest of G_t' containing e_1, e_3, e_7 avoids e_2
/// while some such forest contains e_5, (ii) the reference dual is feasible
/// with objective exactly (4t+7)/(2t+3), and (iii) Δ_t = a = 2.
pub fn build_g_t(t: usize) -> Result<GadgetSpec, GadgetError> {
    let spec = build_g_t_unchecked(t)?;
    if t <= CHECKED_T_MAX {
        pinning_checks(&spec)?;
    }
    Ok(spec)
}

fn pinning_checks(spec: &GadgetSpec) -> Result<(), GadgetError> {
    let f = spec.f();
    let (simple, _) = spec.graph.underlying_simple();
    let family = enumerate_degree_f_forests(&simple, &f, DEFAULT_EDGE_CAP)?;
    let core = 1u64 << spec.e(1) | 1 << spec.e(3) | 1 << spec.e(7);
    let with_core: Vec<u64> = family.forests.iter().copied().filter(|m| m & core == core).collect();
    if with_core.iter().any(|m| m >> spec.e(2) & 1 == 1) {
        return Err(GadgetError::PinningFailed("a forest through e1, e3, e7 contains e2"));
    }
    if !with_core.iter().any(|m| m >> spec.e(5) & 1 == 1) {
        return Err(GadgetError::PinningFailed("no forest through e1, e3, e7 contains e5"));
    }
    let check = check_dual(&spec.graph, &f, &spec.reference_dual())?;
    if !check.feasible || check.objective != spec.reference_objective() {
        return Err(GadgetError::PinningFailed("reference dual"));
    }
    if delta_f(&spec.graph, &f) != 2 || arboricity(&spec.graph).value != 2 {
        return Err(GadgetError::PinningFailed("Δ_t = a = 2"));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestBoundReport {
    pub t: usize,
    pub forests: usize,
    /// Largest degree-t forest of G_t'; at most 2t + 1.
    pub max_size: usize,
    /// Largest one containing e_1, e_3, e_7; at most 2t.
    pub max_size_with_core: usize,
    pub holds: bool,
}

/// Enumerates every degree-t forest of G_t' and measures the two size
/// bounds that make the reference dual feasible.
pub fn verify_forest_bounds(t: usize) -> Result<ForestBoundReport, GadgetError> {
    let spec = build_g_t_unchecked(t)?;
    let (simple, _) = spec.graph.underlying_simple();
    let family = enumerate_degree_f_forests(&simple, &spec.f(), DEFAULT_EDGE_CAP)?;
    let max_size = family.max_size();
    let max_size_with_core = family.max_size_containing(&[spec.e(1), spec.e(3), spec.e(7)]).unwrap_or(0);
    Ok(ForestBoundReport {
        t,
        forests: family.forests.len(),
        max_size,
        max_size_with_core,
        holds: max_size <= 2 * t + 1 && max_size_with_core <= 2 * t,
    })
}

#[derive(Debug, Clone)]
pub struct Counterexample {
    pub t: usize,
    pub m: usize,
    /// m·G_t.
    pub graph: Multigraph,
    /// a_t*(G_t).
    pub base_value: Rational,
    /// m·a_t*(G_t) = a_t*(mG_t) ≤ a_t(mG_t), certified by `dual`.
    pub lower_bound: Rational,
    /// Optimal dual of G_t', feasible for every blowup.
    pub dual: Vec<Rational>,
    pub dual_check: DualCheck,
    pub delta_t: usize,
    pub arboricity: usize,
    /// max(Δ_t + 1, a).
    pub conjecture_bound: usize,
    pub refutes: bool,
}

/// mG_t with a certified lower bound on a_t(mG_t) compared against
/// max(Δ_t(mG_t) + 1, a(mG_t)).
pub fn build_counterexample(t: usize, m: usize) -> Result<Counterexample, GadgetError> {
    assert!(m >= 1, "blowup factor must be positive");
    let spec = build_g_t(t)?;
    let f = spec.f();
    let base = solve_fractional(&spec.graph, &f)?;
    let graph = spec.graph.blowup(m);
    let dual = base.certificate.dual.clone();
    let dual_check = check_dual(&graph, &f, &dual)?;
    assert!(dual_check.feasible);
    let lower_bound = dual_check.objective.clone();
    debug_assert_eq!(lower_bound, &base.value * Rational::from_integer(BigInt::from(m)));
    let delta_t = delta_f(&graph, &f);
    let a = arboricity(&graph).value;
    let conjecture_bound = (delta_t + 1).max(a);
    let refutes = lower_bound > Rational::from_integer(BigInt::from(conjecture_bound));
    Ok(Counterexample {
        t,
        m,
        graph,
        base_value: base.value,
        lower_bound,
        dual,
        dual_check,
        delta_t,
        arboricity: a,
        conjecture_bound,
        refutes,
    })
}

// ---------------------------------------------------------------------------
// canonical forms

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

fn num_pairs(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Simple graph on `n ≤ 8` vertices as an adjacency bitmask over pairs in
/// the order (0,1), (0,2), …, (n−2, n−1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Adj {
    n: usize,
    bits: u64,
}

impl Adj {
    fn has(&self, i: usize, j: usize) -> bool {
        self.bits >> pair_index(self.n, i, j) & 1 == 1
    }

    fn degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&w| w != v && self.has(v, w)).count()
    }

    /// Lexicographic code of the relabeling `order[new] = old`; smaller is
    /// earlier bits set.
    fn code_under(&self, order: &[usize]) -> u64 {
        let p = num_pairs(self.n);
        let mut code = 0u64;
        let mut idx = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has(order[i], order[j]) {
                    code |= 1 << (p - 1 - idx);
                }
                idx += 1;
            }
        }
        code
    }

    fn relabeled(&self, order: &[usize]) -> Adj {
        let mut bits = 0u64;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has(order[i], order[j]) {
                    bits |= 1 << pair_index(self.n, i, j);
                }
            }
        }
        Adj { n: self.n, bits }
    }

    fn is_connected(&self) -> bool {
        let mut seen = 1u32;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for y in 0..self.n {
                if y != x && seen >> y & 1 == 0 && self.has(x, y) {
                    seen |= 1 << y;
                    stack.push(y);
                }
            }
        }
        seen.count_ones() as usize == self.n
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Calls `visit` with every vertex ordering that lists vertices by
/// non-increasing degree. The set of such orderings is isomorphism
/// invariant, so minimizing over it gives a canonical form.
fn degree_orderings(g: &Adj, visit: &mut impl FnMut(&[usize])) {
    let deg: Vec<usize> = (0..g.n).map(|v| g.degree(v)).collect();
    let mut slots: Vec<usize> = (0..g.n).map(|v| deg[v]).collect();
    slots.sort_unstable_by(|a, b| b.cmp(a));
    let mut order = Vec::with_capacity(g.n);
    let mut used = vec![false; g.n];
    fn rec(
        pos: usize,
        slots: &[usize],
        deg: &[usize],
        order: &mut Vec<usize>,
        used: &mut [bool],
        visit: &mut impl FnMut(&[usize]),
    ) {
        if pos == slots.len() {
            visit(order);
            return;
        }
        for v in 0..deg.len() {
            if !used[v] && deg[v] == slots[pos] {
                used[v] = true;
                order.push(v);
                rec(pos + 1, slots, deg, order, used, visit);
                order.pop();
                used[v] = false;
            }
        }
    }
    rec(0, &slots, &deg, &mut order, &mut used, visit);
}

/// Canonical relabeling: the graph with minimum code and one ordering
/// achieving it.
fn canonical(g: &Adj) -> (Adj, Vec<usize>) {
    let mut best: Option<(u64, Vec<usize>)> = None;
    degree_orderings(g, &mut |order| {
        let code = g.code_under(order);
        // codes with earlier set bits are larger integers; keep the largest
        let better = match &best {
            None => true,
            Some((c, _)) => code > *c,
        };
        if better {
            best = Some((code, order.to_vec()));
        }
    });
    let (_, order) = best.expect("at least one ordering");
    (g.relabeled(&order), order)
}

/// A canonical connected simple graph with its automorphisms acting on its
/// edge list.
#[derive(Debug, Clone)]
pub struct SimpleClass {
    adj: Adj,
    pub edges: Vec<(usize, usize)>,
    /// Each automorphism as a permutation of edge indices.
    edge_automorphisms: Vec<Vec<usize>>,
}

impl SimpleClass {
    fn new(adj: Adj) -> Self {
        let edges = adj.edges();
        let target = adj.code_under(&(0..adj.n).collect::<Vec<_>>());
        let mut edge_automorphisms = Vec::new();
        degree_orderings(&adj, &mut |order| {
            if adj.code_under(order) == target {
                // new label i holds old vertex order[i]; edge (i,j) ↦ (order[i], order[j])
                let perm = edges
                    .iter()
                    .map(|&(i, j)| {
                        let (a, b) = (order[i].min(order[j]), order[i].max(order[j]));
                        edges.iter().position(|&e| e == (a, b)).expect("automorphism preserves edges")
                    })
                    .collect();
                edge_automorphisms.push(perm);
            }
        });
        SimpleClass { adj, edges, edge_automorphisms }
    }

    pub fn n(&self) -> usize {
        self.adj.n
    }

    /// Hex code of the simple class.
    pub fn code(&self) -> String {
        let w = vec![1; self.edges.len()];
        self.weighted_code(&w)
    }

    /// `"<n>:"` followed by one hex digit per vertex pair (0 = no edge).
    pub fn weighted_code(&self, weights: &[usize]) -> String {
        let n = self.adj.n;
        let mut digits = vec![0usize; num_pairs(n)];
        for (&(i, j), &w) in self.edges.iter().zip(weights) {
            digits[pair_index(n, i, j)] = w;
        }
        let mut s = format!("{n}:");
        for d in digits {
            s.push(core::char::from_digit(d as u32, 16).expect("weight at most 15"));
        }
        s
    }

    /// Whether `weights` is lexicographically minimal in its automorphism
    /// orbit.
    fn is_orbit_minimal(&self, weights: &[usize]) -> bool {
        self.edge_automorphisms.iter().all(|perm| {
            let image: Vec<usize> = (0..weights.len()).map(|e| weights[perm[e]]).collect();
            image.as_slice() >= weights
        })
    }

    fn orbit_minimum(&self, weights: &[usize]) -> Vec<usize> {
        self.edge_automorphisms
            .iter()
            .map(|perm| (0..weights.len()).map(|e| weights[perm[e]]).collect::<Vec<_>>())
            .min()
            .unwrap_or_else(|| weights.to_vec())
    }

    pub fn graph(&self, weights: &[usize]) -> Multigraph {
        Multigraph::new(self.adj.n, self.edges.iter().zip(weights).map(|(&(u, v), &w)| (u, v, w)))
            .expect("class edges are valid")
    }
}

/// Connected simple graphs on `n` vertices up to isomorphism, for
/// 2 ≤ n ≤ 8, built by attaching a new vertex to graphs on n − 1 vertices.
pub fn connected_classes(n: usize) -> Vec<SimpleClass> {
    assert!((1..=8).contains(&n), "vertex count {n} outside 1..=8");
    let mut level: BTreeSet<Adj> = BTreeSet::from([Adj { n: 1, bits: 0 }]);
    for m in 2..=n {
        let mut next = BTreeSet::new();
        for g in &level {
            for nbrs in 1u32..(1 << (m - 1)) {
                let mut bits = 0u64;
                for i in 0..m - 1 {
                    for j in i + 1..m - 1 {
                        if g.has(i, j) {
                            bits |= 1 << pair_index(m, i, j);
                        }
                    }
                    if nbrs >> i & 1 == 1 {
                        bits |= 1 << pair_index(m, i, m - 1);
                    }
                }
                let h = Adj { n: m, bits };
                debug_assert!(h.is_connected());
                next.insert(canonical(&h).0);
            }
        }
        level = next;
    }
    level.into_iter().map(SimpleClass::new).collect()
}

/// Canonical weighted code of a connected multigraph on ≤ 8 vertices.
pub fn canonical_code(g: &Multigraph) -> Option<String> {
    let n = g.n();
    if !(1..=8).contains(&n) || g.max_multiplicity() > 15 {
        return None;
    }
    let mut bits = 0u64;
    for e in g.edges() {
        bits |= 1 << pair_index(n, e.u, e.v);
    }
    let adj = Adj { n, bits };
    if !adj.is_connected() {
        return None;
    }
    let (canon, order) = canonical(&adj);
    let class = SimpleClass::new(canon);
    let weights: Vec<usize> = class
        .edges
        .iter()
        .map(|&(i, j)| g.edges()[g.pair_index(order[i], order[j]).expect("edge present")].mult)
        .collect();
    Some(class.weighted_code(&class.orbit_minimum(&weights)))
}

// ---------------------------------------------------------------------------
// search

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchParams {
    pub t: usize,
    pub max_vertices: usize,
    pub max_total_mult: usize,
    pub target: Rational,
    /// Only evaluate this multigraph's isomorphism class.
    pub restrict_to: Option<Multigraph>,
}

pub const SEARCH_MAX_VERTICES: usize = 7;
pub const SEARCH_MAX_TOTAL_MULT: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("bounds too large: about {estimate} weighted candidates (limits: {max_vertices} vertices, total multiplicity {max_mult})")]
    TooLarge { estimate: u128, max_vertices: usize, max_mult: usize },
    #[error("t must be at least 2")]
    BadT,
    #[error("restriction graph must be connected with at most {0} vertices")]
    BadRestriction(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetCandidate {
    pub code: String,
    pub graph: Multigraph,
    /// a_t*(graph).
    pub value: Rational,
    /// value / 2.
    pub ratio: Rational,
    /// Optimal dual of (D), accepted by `check_dual`.
    pub dual: Vec<Rational>,
    pub dual_check: DualCheck,
}

impl GadgetCandidate {
    /// Higher ratio wins; ties go to the smaller code.
    pub fn better_than(&self, other: &GadgetCandidate) -> bool {
        self.ratio > other.ratio || (self.ratio == other.ratio && self.code < other.code)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClassOutcome {
    pub best: Option<GadgetCandidate>,
    pub evaluated: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub best: Option<GadgetCandidate>,
    pub meets_target: bool,
    pub classes: usize,
    pub evaluated: usize,
}

const CONNECTED_COUNTS: [u128; 9] = [1, 1, 1, 2, 6, 21, 112, 853, 11117];

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Rough count of weighted candidates: connected classes on n vertices
/// times the weightings of a spanning tree.
pub fn search_size_estimate(max_vertices: usize, max_total_mult: usize) -> u128 {
    (2..=max_vertices.min(8))
        .map(|n| CONNECTED_COUNTS[n] * binomial(max_total_mult as u128, n as u128 - 1))
        .sum::<u128>()
        + if max_vertices > 8 { u128::MAX / 4 } else { 0 }
}

/// Simple classes the search visits, in search order (by vertex count).
pub fn search_classes(params: &SearchParams) -> Result<Vec<SimpleClass>, SearchError> {
    if params.t < 2 {
        return Err(SearchError::BadT);
    }
    if params.max_vertices > SEARCH_MAX_VERTICES || params.max_total_mult > SEARCH_MAX_TOTAL_MULT {
        return Err(SearchError::TooLarge {
            estimate: search_size_estimate(params.max_vertices, params.max_total_mult),
            max_vertices: SEARCH_MAX_VERTICES,
            max_mult: SEARCH_MAX_TOTAL_MULT,
        });
    }
    if let Some(r) = &params.restrict_to {
        let code = canonical_code(r).ok_or(SearchError::BadRestriction(SEARCH_MAX_VERTICES))?;
        let n = r.n();
        let prefix_len = code.len();
        return Ok(connected_classes(n)
            .into_iter()
            .filter(|c| {
                let simple = c.code();
                simple.len() == prefix_len
                    && simple.bytes().zip(code.bytes()).all(|(a, b)| (a == b'0') == (b == b'0'))
            })
            .collect());
    }
    Ok((2..=params.max_vertices).flat_map(connected_classes).collect())
}

/// Evaluates every admissible weighting of one simple class: total
/// multiplicity ≤ bound, every degree ≤ 2t with some degree > t (so
/// Δ_t = 2), and a = 2. Each weighting is taken once per isomorphism class.
pub fn search_class(class: &SimpleClass, params: &SearchParams) -> ClassOutcome {
    let t = params.t;
    let f = DegreeFn::constant(t);
    let only = params.restrict_to.as_ref().and_then(canonical_code);
    let m = class.edges.len();
    let mut out = ClassOutcome::default();
    if m == 0 || m > params.max_total_mult {
        return out;
    }
    let n = class.n();
    let mut weights = vec![0usize; m];
    let mut deg = vec![0usize; n];
    let mut consider = |w: &[usize], deg: &[usize]| {
        if !deg.iter().any(|&d| d > t) || !class.is_orbit_minimal(w) {
            return;
        }
        let code = class.weighted_code(w);
        if only.as_ref().is_some_and(|c| *c != code) {
            return;
        }
        let g = class.graph(w);
        if !arboricity_is_two(&g) {
            return;
        }
        out.evaluated += 1;
        let sol = solve_fractional(&g, &f).expect("search graphs are within the enumeration cap");
        let dual_check = check_dual(&g, &f, &sol.certificate.dual).expect("dual has the right shape");
        assert!(dual_check.feasible);
        let cand = GadgetCandidate {
            code,
            ratio: &sol.value / Rational::from_integer(BigInt::from(2)),
            value: sol.value,
            graph: g,
            dual: sol.certificate.dual,
            dual_check,
        };
        if out.best.as_ref().is_none_or(|b| cand.better_than(b)) {
            out.best = Some(cand);
        }
    };
    // depth-first over weights, remaining budget and degree caps pruned
    fn rec(
        e: usize,
        budget: usize,
        class: &SimpleClass,
        cap: usize,
        weights: &mut [usize],
        deg: &mut [usize],
        consider: &mut impl FnMut(&[usize], &[usize]),
    ) {
        let m = weights.len();
        if e == m {
            consider(weights, deg);
            return;
        }
        let (u, v) = class.edges[e];
        let reserve = m - e - 1;
        let mut w = 1;
        while w + reserve <= budget && deg[u] + w <= cap && deg[v] + w <= cap {
            weights[e] = w;
            deg[u] += w;
            deg[v] += w;
            rec(e + 1, budget - w, class, cap, weights, deg, consider);
            deg[u] -= w;
            deg[v] -= w;
            w += 1;
        }
        weights[e] = 0;
    }
    rec(0, params.max_total_mult, class, 2 * t, &mut weights, &mut deg, &mut consider);
    out
}

/// e(S) ≤ 2(|S| − 1) for all S, with equality-side density above 1
/// somewhere, by subset enumeration.
fn arboricity_is_two(g: &Multigraph) -> bool {
    let n = g.n();
    let mut some_above_one = false;
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size < 2 {
            continue;
        }
        let e_s: usize =
            g.edges().iter().filter(|e| mask >> e.u & 1 == 1 && mask >> e.v & 1 == 1).map(|e| e.mult).sum();
        if e_s > 2 * (size - 1) {
            return false;
        }
        some_above_one |= e_s > size - 1;
    }
    some_above_one
}

/// Runs [`search_class`] over every class and keeps the best candidate.
pub fn gadget_search(params: &SearchParams) -> Result<SearchOutcome, SearchError> {
    let classes = search_classes(params)?;
    let mut best: Option<GadgetCandidate> = None;
    let mut evaluated = 0;
    for class in &classes {
        let out = search_class(class, params);
        evaluated += out.evaluated;
        if let Some(c) = out.best {
            if best.as_ref().is_none_or(|b| c.better_than(b)) {
                best = Some(c);
            }
        }
    }
    let meets_target = best.as_ref().is_some_and(|b| b.ratio >= params.target);
    Ok(SearchOutcome { best, meets_target, classes: classes.len(), evaluated })
}
