use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use super::coloring::{aux_bipartite, hakimi_kariv_color};
use super::cycles::{monochromatic_cycles, CopyIndex};
use super::lll::{lll_vertex_coloring, LllError};
use super::transversal::{independent_transversal, is_independent_transversal, TransversalError, TransversalReport};
use crate::analytic::prime_in_window;
use crate::certificate::{verify_certificate, CertKind, DecompositionCertificate, Violation};
use crate::density::pseudoarboricity;
use crate::graph::{delta_f, directed_degree_stats, DegreeFn, Digraph, Multigraph};
use crate::orient::{orient_for_branchings, undirect_certificate, OrientError};

/// Default constant `c` in the class budget d + c·d^{3/4}(ln d)^{1/2}.
pub const BUDGET_CONSTANT: u64 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LargeGirthError {
    #[error("digraph has parallel arcs")]
    NotSimple,
    #[error("directed girth is below 4d = {needed}")]
    GirthTooSmall { needed: usize },
    #[error("transversal: {0}")]
    Transversal(TransversalError),
    #[error("certificate rejected: {0}")]
    Verification(Violation),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LargeGirthStats {
    pub d: usize,
    pub cycles: usize,
    pub transversal: Option<TransversalReport>,
}

#[derive(Debug, Clone)]
pub struct LargeGirthOutcome {
    pub certificate: DecompositionCertificate,
    pub stats: LargeGirthStats,
}

/// Splits a digraph of directed girth ≥ 4d into exactly d + 1 degree-f
/// branchings, d = max(Δ⁻, Δ⁺_{f−1}).
///
/// The auxiliary bipartite graph is f-colored into d directed
/// pseudoforests B_1..B_d; an independent transversal M of their cycles
/// then gives the classes M, B_1 ∖ M, …, B_d ∖ M. With `force` the girth
/// and simplicity checks are skipped and any failure surfaces later.
pub fn decompose_large_girth(d: &Digraph, f: &DegreeFn, force: bool) -> Result<LargeGirthOutcome, LargeGirthError> {
    let dd = directed_degree_stats(d, f).d();
    if !force {
        if !d.is_simple() {
            return Err(LargeGirthError::NotSimple);
        }
        if !d.directed_girth_at_least(4 * dd) {
            return Err(LargeGirthError::GirthTooSmall { needed: 4 * dd });
        }
    }
    large_girth_unchecked(d, f, dd)
}

fn large_girth_unchecked(d: &Digraph, f: &DegreeFn, dd: usize) -> Result<LargeGirthOutcome, LargeGirthError> {
    let aux = aux_bipartite(d, f);
    let coloring = hakimi_kariv_color(&aux.graph, &aux.g).expect("auxiliary graph is bipartite");
    debug_assert_eq!(coloring.k, dd);
    let pseudo = DecompositionCertificate { k: dd, assignment: aux.arc_colors(&coloring.assignment), ..coloring };
    let cycles = monochromatic_cycles(d, &pseudo);
    let index = CopyIndex::new(d);
    let mut classes: Vec<usize> = index.flatten(&pseudo.assignment).into_iter().map(|c| c + 1).collect();
    let mut report = None;
    if !cycles.is_empty() {
        let sets: Vec<Vec<usize>> = cycles.iter().map(|c| c.copies.clone()).collect();
        let t = independent_transversal(d, &sets).map_err(LargeGirthError::Transversal)?;
        debug_assert!(is_independent_transversal(d, &sets, &t.chosen));
        for &c in &t.chosen {
            classes[c] = 0;
        }
        report = Some(t.report);
    }
    let certificate = DecompositionCertificate {
        kind: CertKind::DegreeFBranching,
        k: dd + 1,
        assignment: index.unflatten(&classes),
        f: Some(f.clone()),
    };
    verify_certificate(d, &certificate).map_err(LargeGirthError::Verification)?;
    Ok(LargeGirthOutcome { certificate, stats: LargeGirthStats { d: dd, cycles: cycles.len(), transversal: report } })
}

#[derive(Debug, Clone)]
pub struct TrivialOutcome {
    pub certificate: DecompositionCertificate,
    pub d: usize,
    pub cycles: usize,
}

/// At most 2d degree-f branchings: f-color into d directed pseudoforests
/// and move one arc of every cycle of class i into a partner class d + i.
/// Empty classes are dropped.
pub fn decompose_trivial(d: &Digraph, f: &DegreeFn) -> TrivialOutcome {
    let dd = directed_degree_stats(d, f).d();
    let aux = aux_bipartite(d, f);
    let coloring = hakimi_kariv_color(&aux.graph, &aux.g).expect("auxiliary graph is bipartite");
    let pseudo = DecompositionCertificate { k: dd, assignment: aux.arc_colors(&coloring.assignment), ..coloring };
    let cycles = monochromatic_cycles(d, &pseudo);
    let index = CopyIndex::new(d);
    let mut classes = index.flatten(&pseudo.assignment);
    for c in &cycles {
        let first = c.copies[0];
        classes[first] = dd + c.class;
    }
    let certificate = DecompositionCertificate {
        kind: CertKind::DegreeFBranching,
        k: 2 * dd,
        assignment: index.unflatten(&classes),
        f: Some(f.clone()),
    }
    .compacted();
    debug_assert_eq!(verify_certificate(d, &certificate), Ok(()));
    TrivialOutcome { certificate, d: dd, cycles: cycles.len() }
}

/// Why the asymptotic pipeline was not run to completion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fallback {
    NotSimple,
    NoPrime,
    Coloring(LllError),
    /// k < 4·d_i for residue class i ≠ 0.
    ResidueTooDense { residue: usize, d: usize, k: usize },
    ResidueFailed { residue: usize, error: LargeGirthError },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Pipeline,
    Trivial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymptoticStats {
    pub d: usize,
    pub prime: Option<usize>,
    pub resamplings: usize,
    pub k_too_large: bool,
    /// d_i per residue class, when the coloring succeeded.
    pub residue_degrees: Vec<usize>,
    /// Classes used for each residue class.
    pub residue_classes: Vec<usize>,
    /// Classes produced by the residue pipeline, before comparison with the
    /// trivial route.
    pub pipeline_classes: Option<usize>,
    pub trivial_classes: usize,
    pub route: Route,
    pub fallback: Option<Fallback>,
}

#[derive(Debug, Clone)]
pub struct AsymptoticOutcome {
    pub certificate: DecompositionCertificate,
    pub stats: AsymptoticStats,
}

/// Degree-f branching decomposition through a random vertex coloring with a
/// prime number k ∈ [5√d, 10√d] of colors.
///
/// Arc u → v goes to residue class φ(v) − φ(u) mod k. Every directed cycle of
/// class i ≠ 0 has length divisible by k, so if k ≥ 4·d_i the large-girth
/// pipeline gives d_i + 1 classes; class 0 takes the trivial route. The
/// result is the smaller of this and the trivial decomposition of the
/// whole digraph. Failed preconditions fall back to the trivial route and
/// are recorded in the stats.
pub fn decompose_asymptotic(d: &Digraph, f: &DegreeFn, seed: u64) -> AsymptoticOutcome {
    let trivial = decompose_trivial(d, f);
    let dd = trivial.d;
    let mut stats = AsymptoticStats {
        d: dd,
        prime: None,
        resamplings: 0,
        k_too_large: false,
        residue_degrees: Vec::new(),
        residue_classes: Vec::new(),
        pipeline_classes: None,
        trivial_classes: trivial.certificate.k,
        route: Route::Trivial,
        fallback: None,
    };
    match residue_pipeline(d, f, seed, dd, &mut stats) {
        Ok(cert) if cert.k <= trivial.certificate.k => {
            stats.pipeline_classes = Some(cert.k);
            stats.route = Route::Pipeline;
            AsymptoticOutcome { certificate: cert, stats }
        }
        Ok(cert) => {
            stats.pipeline_classes = Some(cert.k);
            AsymptoticOutcome { certificate: trivial.certificate, stats }
        }
        Err(reason) => {
            stats.fallback = Some(reason);
            AsymptoticOutcome { certificate: trivial.certificate, stats }
        }
    }
}

fn residue_pipeline(
    d: &Digraph,
    f: &DegreeFn,
    seed: u64,
    dd: usize,
    stats: &mut AsymptoticStats,
) -> Result<DecompositionCertificate, Fallback> {
    if !d.is_simple() {
        return Err(Fallback::NotSimple);
    }
    let k = prime_in_window(dd as u64).ok_or(Fallback::NoPrime)? as usize;
    stats.prime = Some(k);
    let phi = lll_vertex_coloring(d, f, k, seed).map_err(Fallback::Coloring)?;
    stats.resamplings = phi.resamplings;
    stats.k_too_large = phi.k_too_large;
    let residue_of: Vec<usize> =
        d.arcs().iter().map(|a| (phi.colors[a.head] + k - phi.colors[a.tail]) % k).collect();

    let mut parts: Vec<(Vec<usize>, Digraph)> = Vec::with_capacity(k);
    for i in 0..k {
        let members: Vec<usize> = (0..d.num_arc_classes()).filter(|&a| residue_of[a] == i).collect();
        let sub = d.filter_arcs(|a, _| residue_of[a] == i);
        let di = directed_degree_stats(&sub, f).d();
        stats.residue_degrees.push(di);
        if i != 0 && k < 4 * di {
            return Err(Fallback::ResidueTooDense { residue: i, d: di, k });
        }
        parts.push((members, sub));
    }

    let mut assignment = vec![Vec::new(); d.num_arc_classes()];
    let mut offset = 0;
    for (i, (members, sub)) in parts.iter().enumerate() {
        let cert = if i == 0 {
            decompose_trivial(sub, f).certificate
        } else {
            // girth ≥ k ≥ 4·d_i holds because cycle lengths are multiples of k
            large_girth_unchecked(sub, f, stats.residue_degrees[i])
                .map_err(|error| Fallback::ResidueFailed { residue: i, error })?
                .certificate
                .compacted()
        };
        stats.residue_classes.push(cert.k);
        for (&a, colors) in members.iter().zip(&cert.assignment) {
            assignment[a] = colors.iter().map(|c| c + offset).collect();
        }
        offset += cert.k;
    }
    let cert = DecompositionCertificate { kind: CertKind::DegreeFBranching, k: offset, assignment, f: Some(f.clone()) };
    debug_assert_eq!(verify_certificate(d, &cert), Ok(()));
    Ok(cert)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UndirectedMode {
    Girth,
    Asymptotic,
    Trivial,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("graph is not simple")]
    NotSimple,
    #[error("girth {girth:?} is below 4d = {needed}")]
    GirthTooSmall { girth: Option<usize>, needed: usize },
    #[error(transparent)]
    Orient(#[from] OrientError),
    #[error(transparent)]
    LargeGirth(#[from] LargeGirthError),
}

#[derive(Debug, Clone)]
pub struct UndirectedOutcome {
    /// Degree-f forests of the input graph.
    pub certificate: DecompositionCertificate,
    /// max(Δ_f, pa) of the input graph.
    pub d: usize,
    pub orientation: Digraph,
    /// Classes of the directed decomposition before padding.
    pub directed_classes: usize,
    pub asymptotic: Option<AsymptoticStats>,
}

/// Degree-f forest decomposition of an undirected graph: orient with
/// Δ⁻ ≤ d and Δ⁺_{f−1} ≤ d for d = max(Δ_f, pa), decompose the orientation
/// into degree-f branchings, forget directions.
///
/// `Girth` needs a simple graph of girth ≥ 4d and yields exactly d + 1
/// classes (padded with empty ones if the orientation is sparser).
pub fn decompose_undirected(
    g: &Multigraph,
    f: &DegreeFn,
    mode: UndirectedMode,
    seed: u64,
) -> Result<UndirectedOutcome, DecomposeError> {
    let d = delta_f(g, f).max(pseudoarboricity(g).value);
    if mode != UndirectedMode::Trivial && !g.is_simple() {
        return Err(DecomposeError::NotSimple);
    }
    if mode == UndirectedMode::Girth {
        let girth = g.girth();
        if girth.is_some_and(|x| x < 4 * d) {
            return Err(DecomposeError::GirthTooSmall { girth, needed: 4 * d });
        }
    }
    let oriented = orient_for_branchings(g, f, d)?;
    let dg = &oriented.digraph;
    let (mut directed, asymptotic) = match mode {
        UndirectedMode::Girth => (decompose_large_girth(dg, f, false)?.certificate, None),
        UndirectedMode::Asymptotic => {
            let out = decompose_asymptotic(dg, f, seed);
            (out.certificate, Some(out.stats))
        }
        UndirectedMode::Trivial => (decompose_trivial(dg, f).certificate, None),
    };
    let directed_classes = directed.k;
    if mode == UndirectedMode::Girth {
        directed.k = d + 1;
    }
    let certificate = undirect_certificate(g, &oriented.sources, &directed);
    debug_assert_eq!(verify_certificate(g, &certificate), Ok(()));
    Ok(UndirectedOutcome { certificate, d, orientation: oriented.digraph, directed_classes, asymptotic })
}
