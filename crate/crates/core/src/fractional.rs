//! Fractional degree-f arboricity a_f*(G) with exact primal/dual
//! certificates.
//!
//! With G' the underlying simple graph and μ the multiplicities,
//!
//! (P)  min Σ_F y_F  s.t.  Σ_{F ∋ e} y_F ≥ μ_e,  y ≥ 0,
//! (D)  max Σ_e μ_e x_e  s.t.  Σ_{e ∈ F} x_e ≤ 1,  x ≥ 0,
//!
//! F ranging over the degree-f forests of G'. Forests are edge bitmasks.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::dsu::RollbackDsu;
use crate::graph::{DegreeFn, Multigraph};
use crate::lp::solve_covering;
use crate::Rational;

pub const DEFAULT_EDGE_CAP: usize = 26;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FractionalError {
    #[error("underlying simple graph has {edges} edges, above the enumeration cap {cap}")]
    CapExceeded { edges: usize, cap: usize },
    #[error("forest enumeration needs a simple graph")]
    NotSimple,
    #[error("dual has {found} entries, expected {expected}")]
    DualLength { expected: usize, found: usize },
    #[error("dual entry for edge {edge} is negative")]
    NegativeDual { edge: usize },
}

/// The degree-f forests of a simple graph, as bitmasks over its edge list.
#[derive(Debug, Clone)]
pub struct ForestFamily {
    pub base: Multigraph,
    pub f: DegreeFn,
    pub forests: Vec<u64>,
}

impl ForestFamily {
    pub fn edges_of(&self, forest: u64) -> Vec<usize> {
        mask_edges(forest)
    }

    pub fn max_size(&self) -> usize {
        self.forests.iter().map(|m| m.count_ones() as usize).max().unwrap_or(0)
    }

    /// Largest forest containing every edge in `required`.
    pub fn max_size_containing(&self, required: &[usize]) -> Option<usize> {
        let req = required.iter().fold(0u64, |m, &e| m | 1 << e);
        self.forests.iter().filter(|&&m| m & req == req).map(|m| m.count_ones() as usize).max()
    }
}

fn mask_edges(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::new();
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}

fn check_size(g: &Multigraph, cap: usize) -> Result<(), FractionalError> {
    if !g.is_simple() {
        return Err(FractionalError::NotSimple);
    }
    let cap = cap.min(63);
    if g.num_pairs() > cap {
        return Err(FractionalError::CapExceeded { edges: g.num_pairs(), cap });
    }
    Ok(())
}

/// Depth-first walk over all degree-f forests of a simple graph. `visit`
/// gets each forest's mask and, when `maximal_only`, only forests to which
/// no further edge can be added.
struct Walker<'a> {
    g: &'a Multigraph,
    f: &'a DegreeFn,
    dsu: RollbackDsu,
    deg: Vec<usize>,
}

impl<'a> Walker<'a> {
    fn new(g: &'a Multigraph, f: &'a DegreeFn) -> Self {
        Walker { g, f, dsu: RollbackDsu::new(g.n()), deg: vec![0; g.n()] }
    }

    fn can_add(&self, e: usize) -> bool {
        let edge = &self.g.edges()[e];
        self.deg[edge.u] < self.f.get(edge.u) && self.deg[edge.v] < self.f.get(edge.v) && !self.dsu.same(edge.u, edge.v)
    }

    fn walk(&mut self, e: usize, mask: u64, maximal_only: bool, visit: &mut impl FnMut(u64)) {
        let m = self.g.num_pairs();
        if e == m {
            if !maximal_only || (0..m).all(|x| mask >> x & 1 == 1 || !self.can_add(x)) {
                visit(mask);
            }
            return;
        }
        if self.can_add(e) {
            let edge = self.g.edges()[e];
            let cp = self.dsu.checkpoint();
            self.dsu.add_forest_edge(edge.u, edge.v);
            self.deg[edge.u] += 1;
            self.deg[edge.v] += 1;
            self.walk(e + 1, mask | 1 << e, maximal_only, visit);
            self.deg[edge.u] -= 1;
            self.deg[edge.v] -= 1;
            self.dsu.rollback(cp);
        }
        self.walk(e + 1, mask, maximal_only, visit);
    }
}

/// All degree-f forests of the simple graph `g`, the empty one included.
pub fn enumerate_degree_f_forests(g: &Multigraph, f: &DegreeFn, cap: usize) -> Result<ForestFamily, FractionalError> {
    check_size(g, cap)?;
    let mut forests = Vec::new();
    Walker::new(g, f).walk(0, 0, false, &mut |m| forests.push(m));
    Ok(ForestFamily { base: g.clone(), f: f.clone(), forests })
}

/// Inclusion-maximal degree-f forests. Restricting (P) to these plus the
/// singletons does not change its optimum: any y_F can be moved to a
/// maximal superset of F.
pub fn enumerate_maximal_forests(g: &Multigraph, f: &DegreeFn, cap: usize) -> Result<Vec<u64>, FractionalError> {
    check_size(g, cap)?;
    let mut forests = Vec::new();
    Walker::new(g, f).walk(0, 0, true, &mut |m| forests.push(m));
    Ok(forests)
}

/// Exact primal and dual solutions of (P)/(D) on G' = `edges`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalLpCertificate {
    /// Edges of G' as (u, v), with multiplicities μ.
    pub edges: Vec<(usize, usize)>,
    pub multiplicities: Vec<usize>,
    /// Forests (edge index lists into `edges`) with positive weight.
    pub primal: Vec<(Vec<usize>, Rational)>,
    /// x_e per edge of G'.
    pub dual: Vec<Rational>,
    pub objective_primal: Rational,
    pub objective_dual: Rational,
}

impl RationalLpCertificate {
    /// Rechecks everything against `g` and `f`: primal forests are
    /// degree-f forests covering μ, the dual is feasible by full
    /// enumeration, and the objectives match their vectors and each other.
    pub fn verify(&self, g: &Multigraph, f: &DegreeFn) -> Result<bool, FractionalError> {
        let (simple, mu) = g.underlying_simple();
        let pairs: Vec<(usize, usize)> = simple.edges().iter().map(|e| (e.u, e.v)).collect();
        if pairs != self.edges || mu != self.multiplicities {
            return Ok(false);
        }
        let mut cover = vec![Rational::zero(); pairs.len()];
        let mut total = Rational::zero();
        for (forest, y) in &self.primal {
            if y.is_negative() || !is_degree_f_forest(&simple, f, forest) {
                return Ok(false);
            }
            for &e in forest {
                cover[e] += y;
            }
            total += y;
        }
        if cover.iter().zip(&mu).any(|(c, &m)| *c < Rational::from_integer(BigInt::from(m))) {
            return Ok(false);
        }
        let check = check_dual(g, f, &self.dual)?;
        Ok(check.feasible
            && total == self.objective_primal
            && check.objective == self.objective_dual
            && self.objective_primal == self.objective_dual)
    }
}

fn is_degree_f_forest(g: &Multigraph, f: &DegreeFn, forest: &[usize]) -> bool {
    let mut dsu = RollbackDsu::new(g.n());
    let mut deg = vec![0usize; g.n()];
    let mut seen = vec![false; g.num_pairs()];
    forest.iter().all(|&e| {
        if e >= g.num_pairs() || seen[e] {
            return false;
        }
        seen[e] = true;
        let edge = g.edges()[e];
        deg[edge.u] += 1;
        deg[edge.v] += 1;
        deg[edge.u] <= f.get(edge.u) && deg[edge.v] <= f.get(edge.v) && dsu.add_forest_edge(edge.u, edge.v)
    })
}

#[derive(Debug, Clone)]
pub struct FractionalSolution {
    pub value: Rational,
    pub certificate: RationalLpCertificate,
}

/// a_f*(G) by exact simplex over singleton and maximal forests of G'. The
/// dual is re-checked by [`check_dual`] before it is returned.
pub fn solve_fractional(g: &Multigraph, f: &DegreeFn) -> Result<FractionalSolution, FractionalError> {
    solve_fractional_capped(g, f, DEFAULT_EDGE_CAP)
}

pub fn solve_fractional_capped(g: &Multigraph, f: &DegreeFn, cap: usize) -> Result<FractionalSolution, FractionalError> {
    let (simple, mu) = g.underlying_simple();
    let maximal = enumerate_maximal_forests(&simple, f, cap)?;
    let m = simple.num_pairs();
    let mut masks: Vec<u64> = (0..m).map(|e| 1u64 << e).collect();
    masks.extend(maximal.into_iter().filter(|x| x.count_ones() > 1));
    let columns: Vec<Vec<usize>> = masks.iter().map(|&x| mask_edges(x)).collect();
    let demands: Vec<u64> = mu.iter().map(|&x| x as u64).collect();
    let sol = solve_covering(m, &demands, &columns);
    let primal = columns
        .into_iter()
        .zip(sol.primal)
        .filter(|(_, y)| y.is_positive())
        .collect();
    let objective_dual: Rational =
        sol.dual.iter().zip(&mu).map(|(x, &m)| x * Rational::from_integer(BigInt::from(m))).sum();
    let certificate = RationalLpCertificate {
        edges: simple.edges().iter().map(|e| (e.u, e.v)).collect(),
        multiplicities: mu,
        primal,
        dual: sol.dual,
        objective_primal: sol.value.clone(),
        objective_dual,
    };
    let check = check_dual(g, f, &certificate.dual)?;
    assert!(check.feasible, "simplex dual violates a forest constraint");
    assert_eq!(check.objective, sol.value, "strong duality failed");
    Ok(FractionalSolution { value: sol.value, certificate })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualCheck {
    pub feasible: bool,
    /// Σ_e μ_e x_e.
    pub objective: Rational,
    /// Largest Σ_{e ∈ F} x_e over degree-f forests F.
    pub max_forest_weight: Rational,
    /// A forest attaining that maximum, when it exceeds 1.
    pub violating_forest: Option<Vec<usize>>,
}

trait Weight: Clone + Ord + Zero + for<'a> Add<&'a Self, Output = Self> {}
impl Weight for i128 {}
impl Weight for BigInt {}

/// Heaviest forest; weights are nonnegative, so maximal forests suffice.
fn heaviest_forest<W: Weight>(g: &Multigraph, f: &DegreeFn, w: &[W]) -> (W, u64) {
    let mut best = (W::zero(), 0u64);
    Walker::new(g, f).walk(0, 0, true, &mut |mask| {
        let total = mask_edges(mask).iter().fold(W::zero(), |acc, &e| acc + &w[e]);
        if total > best.0 {
            best = (total, mask);
        }
    });
    best
}

/// Checks a dual vector x (indexed like the edges of G') for feasibility in
/// (D) by enumerating every maximal degree-f forest of G'.
pub fn check_dual(g: &Multigraph, f: &DegreeFn, x: &[Rational]) -> Result<DualCheck, FractionalError> {
    let (simple, mu) = g.underlying_simple();
    if x.len() != simple.num_pairs() {
        return Err(FractionalError::DualLength { expected: simple.num_pairs(), found: x.len() });
    }
    if let Some(edge) = x.iter().position(|v| v.is_negative()) {
        return Err(FractionalError::NegativeDual { edge });
    }
    check_size(&simple, DEFAULT_EDGE_CAP)?;
    let objective: Rational = x.iter().zip(&mu).map(|(v, &m)| v * Rational::from_integer(BigInt::from(m))).sum();
    let den = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let nums: Vec<BigInt> = x.iter().map(|v| v.numer() * (&den / v.denom())).collect();
    let (weight, mask) = if den.bits() < 60 && nums.iter().all(|v| v.bits() < 60) {
        let small: Vec<i128> = nums.iter().map(|v| v.to_i128().unwrap()).collect();
        let (w, m) = heaviest_forest(&simple, f, &small);
        (BigInt::from(w), m)
    } else {
        heaviest_forest(&simple, f, &nums)
    };
    let max_forest_weight = Rational::new(weight, den);
    let feasible = max_forest_weight <= Rational::one();
    Ok(DualCheck {
        feasible,
        objective,
        violating_forest: (!feasible).then(|| mask_edges(mask)),
        max_forest_weight,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalingEntry {
    pub m: usize,
    pub value: Rational,
    /// value / a_f*(G); exactly m when scaling holds.
    pub ratio: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalingReport {
    pub base_value: Rational,
    pub entries: Vec<ScalingEntry>,
    pub exact: bool,
}

/// Solves the LP on every blowup mG and compares with m · a_f*(G).
pub fn blowup_scaling_check(g: &Multigraph, f: &DegreeFn, ms: &[usize]) -> Result<ScalingReport, FractionalError> {
    let base_value = solve_fractional(g, f)?.value;
    let mut entries = Vec::new();
    let mut exact = true;
    for &m in ms {
        let value = solve_fractional(&g.blowup(m), f)?.value;
        let ratio = if base_value.is_zero() { Rational::zero() } else { &value / &base_value };
        exact &= value == &base_value * Rational::from_integer(BigInt::from(m));
        entries.push(ScalingEntry { m, value, ratio });
    }
    Ok(ScalingReport { base_value, entries, exact })
}

/// The copy-level LP: columns are degree-f forests of the multigraph
/// itself (each uses at most one copy of a pair), rows are the individual
/// copies. Same optimum as (P); exponential in the number of copies.
pub fn solve_copy_level(g: &Multigraph, f: &DegreeFn, max_copies: usize) -> Result<Rational, FractionalError> {
    let copies: Vec<(usize, usize)> = g.copies().collect();
    if copies.len() > max_copies.min(20) {
        return Err(FractionalError::CapExceeded { edges: copies.len(), cap: max_copies.min(20) });
    }
    let mut columns = Vec::new();
    for mask in 1u32..(1 << copies.len()) {
        let edges: Vec<usize> = (0..copies.len()).filter(|&i| mask >> i & 1 == 1).collect();
        let mut dsu = RollbackDsu::new(g.n());
        let mut deg = vec![0usize; g.n()];
        let ok = edges.iter().all(|&i| {
            let e = g.edges()[copies[i].0];
            deg[e.u] += 1;
            deg[e.v] += 1;
            deg[e.u] <= f.get(e.u) && deg[e.v] <= f.get(e.v) && dsu.add_forest_edge(e.u, e.v)
        });
        if ok {
            columns.push(edges);
        }
    }
    Ok(solve_covering(copies.len(), &vec![1; copies.len()], &columns).value)
}

/// Σ_e μ_e x_e for a dual vector, without feasibility checking.
pub fn dual_objective(g: &Multigraph, x: &[Rational]) -> Rational {
    let (_, mu) = g.underlying_simple();
    x.iter().zip(&mu).map(|(v, &m)| v * Rational::from_integer(BigInt::from(m))).sum()
}

/// Integer floor of a nonnegative rational.
pub fn floor_usize(x: &Rational) -> usize {
    x.floor().to_integer().to_usize().unwrap_or(usize::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn forest_counts() {
        let f2 = DegreeFn::constant(2);
        assert_eq!(enumerate_degree_f_forests(&cycle(3), &f2, 26).unwrap().forests.len(), 7);
        assert_eq!(enumerate_degree_f_forests(&path(2), &f2, 26).unwrap().forests.len(), 2);
        assert_eq!(
            enumerate_degree_f_forests(&complete(8), &f2, 26).unwrap_err(),
            FractionalError::CapExceeded { edges: 28, cap: 26 }
        );
        assert_eq!(enumerate_maximal_forests(&cycle(3), &f2, 26).unwrap().len(), 3);
    }

    #[test]
    fn triangle_and_single_edge() {
        let f2 = DegreeFn::constant(2);
        let s = solve_fractional(&cycle(3), &f2).unwrap();
        assert_eq!(s.value, r(3, 2));
        assert_eq!(s.certificate.dual, vec![r(1, 2); 3]);
        assert!(s.certificate.verify(&cycle(3), &f2).unwrap());

        let e5 = Multigraph::new(2, [(0, 1, 5)]).unwrap();
        assert_eq!(solve_fractional(&e5, &f2).unwrap().value, r(5, 1));
        assert_eq!(solve_fractional(&Multigraph::empty(3), &f2).unwrap().value, r(0, 1));
    }

    #[test]
    fn dual_checks() {
        let f2 = DegreeFn::constant(2);
        let zero = check_dual(&cycle(3), &f2, &[r(0, 1), r(0, 1), r(0, 1)]).unwrap();
        assert!(zero.feasible);
        assert_eq!(zero.objective, r(0, 1));
        let ones = check_dual(&cycle(3), &f2, &[r(1, 1), r(1, 1), r(1, 1)]).unwrap();
        assert!(!ones.feasible);
        assert_eq!(ones.violating_forest.unwrap().len(), 2);
        assert_eq!(
            check_dual(&cycle(3), &f2, &[r(-1, 1), r(0, 1), r(0, 1)]).unwrap_err(),
            FractionalError::NegativeDual { edge: 0 }
        );
    }

    #[test]
    fn scaling() {
        let f2 = DegreeFn::constant(2);
        let rep = blowup_scaling_check(&cycle(3), &f2, &[2]).unwrap();
        assert!(rep.exact);
        assert_eq!(rep.entries[0].value, r(3, 1));
        let e = path(2);
        let rep = blowup_scaling_check(&e, &f2, &[5]).unwrap();
        assert_eq!(rep.entries[0].ratio, r(5, 1));
    }

    #[test]
    fn copy_level_matches() {
        let f2 = DegreeFn::constant(2);
        for g in [
            cycle(3),
            Multigraph::new(3, [(0, 1, 2), (1, 2, 1), (0, 2, 2)]).unwrap(),
            Multigraph::new(4, [(0, 1, 3), (1, 2, 1), (2, 3, 2)]).unwrap(),
        ] {
            assert_eq!(solve_copy_level(&g, &f2, 16).unwrap(), solve_fractional(&g, &f2).unwrap().value);
        }
    }
}
