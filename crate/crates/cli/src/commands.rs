//! One function per subcommand. Each returns a [`Report`] that `main`
//! renders in the requested format.

use std::fmt::Write;
use std::path::Path;

use arborize_core::branchings::{
    decompose_asymptotic, decompose_large_girth, decompose_trivial, decompose_undirected, AsymptoticStats,
    DecomposeError, Fallback, LargeGirthError, Route, UndirectedMode,
};
use arborize_core::density::{arboricity, degree_f_pseudoarboricity, pseudoarboricity, DensityResult};
use arborize_core::fractional::{check_dual, solve_fractional_capped, FractionalError, DEFAULT_EDGE_CAP};
use arborize_core::gadgets::{
    build_counterexample, build_g_t, verify_forest_bounds, GadgetError, SearchParams,
};
use arborize_core::graph::{delta_f, directed_degree_stats};
use arborize_core::oracle::{brute_a_f_with, brute_pa_f_with, brute_vec_a_f_with, OracleError, OracleResult};
use arborize_core::orient::{orient, orient_for_branchings, Infeasibility, Orientation, OrientationResult};
use arborize_core::{verify_certificate, DecompositionCertificate, DegreeFn, GraphRef, Multigraph};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::dot::to_dot;
use crate::error::{CliError, Status};
use crate::json::*;

/// Command output in every format, plus the exit status.
#[derive(Debug, Clone)]
pub struct Report {
    pub status: Status,
    pub text: String,
    pub json: Value,
    pub dot: Option<String>,
    /// Certificate JSON for `--cert-out`.
    pub certificate: Option<Value>,
}

impl Report {
    fn new(text: String, json: Value) -> Self {
        Report { status: Status::Ok, text, json, dot: None, certificate: None }
    }

    fn with_certificate(mut self, graph: &Graph, cert: &DecompositionCertificate) -> Self {
        let c = serde_json::to_value(certificate_to_json(graph, cert)).expect("certificate serializes");
        if let Value::Object(map) = &mut self.json {
            map.insert("certificate".into(), c.clone());
        }
        let _ = write!(self.text, "{}", certificate_text(graph, cert));
        self.dot = Some(to_dot(graph, Some(cert)));
        self.certificate = Some(c);
        self
    }

    fn status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }
}

fn certificate_text(graph: &Graph, cert: &DecompositionCertificate) -> String {
    let mut out = format!("certificate: {} with {} classes\n", cert.kind, cert.k);
    let arrow = if matches!(graph, Graph::Directed(_)) { "->" } else { "-" };
    for ((u, v), classes) in classes_of(graph).into_iter().zip(&cert.assignment) {
        let list: Vec<String> = classes.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(out, "  {u}{arrow}{v}: {}", list.join(" "));
    }
    out
}

fn density_json(r: &DensityResult) -> Value {
    json!({
        "value": r.value,
        "witness": {"S": r.witness.set, "e_S": r.witness.e_s, "kind": r.witness.kind.name(), "value": r.witness.value},
    })
}

pub fn stats(input: &Input) -> Report {
    let f = &input.f;
    match &input.graph {
        Graph::Undirected(g) => {
            let a = arboricity(g).value;
            let pa = pseudoarboricity(g).value;
            let df = delta_f(g, f);
            let girth = g.girth();
            let text = format!(
                "undirected multigraph: n = {}, {} vertex pairs, {} edges\nmax degree = {}, Δ_f = {df}\n\
                 arboricity = {a}, pseudoarboricity = {pa}\ngirth = {}\n",
                g.n(),
                g.num_pairs(),
                g.total_edges(),
                g.max_degree(),
                girth.map_or("none (forest)".into(), |x| x.to_string()),
            );
            let json = json!({
                "directed": false, "n": g.n(), "pairs": g.num_pairs(), "edges": g.total_edges(),
                "simple": g.is_simple(), "max_degree": g.max_degree(), "delta_f": df,
                "arboricity": a, "pseudoarboricity": pa, "girth": girth,
            });
            Report { dot: Some(to_dot(&input.graph, None)), ..Report::new(text, json) }
        }
        Graph::Directed(d) => {
            let st = directed_degree_stats(d, f);
            let girth = d.directed_girth();
            let text = format!(
                "digraph: n = {}, {} arc classes, {} arcs, simple = {}\nΔ⁻ = {}, Δ⁺_(f−1) = {}, d = {}\n\
                 directed girth = {}\n",
                d.n(),
                d.num_arc_classes(),
                d.total_arcs(),
                d.is_simple(),
                st.max_in,
                st.max_out_weighted,
                st.d(),
                girth.map_or("none (acyclic)".into(), |x| x.to_string()),
            );
            let json = json!({
                "directed": true, "n": d.n(), "arc_classes": d.num_arc_classes(), "arcs": d.total_arcs(),
                "simple": d.is_simple(), "max_in": st.max_in, "max_out_weighted": st.max_out_weighted,
                "d": st.d(), "directed_girth": girth,
            });
            Report { dot: Some(to_dot(&input.graph, None)), ..Report::new(text, json) }
        }
    }
}

pub fn density(input: &Input, pseudo: bool) -> Result<Report, CliError> {
    let g = input.undirected()?;
    let (name, r) = if pseudo { ("pseudoarboricity", pseudoarboricity(g)) } else { ("arboricity", arboricity(g)) };
    let text = format!(
        "{name} = {}\nwitness S = {:?}: e(S) = {}, bound {}\n",
        r.value, r.witness.set, r.witness.e_s, r.witness.value
    );
    Ok(Report::new(text, density_json(&r)).with_certificate(&input.graph, &r.decomposition))
}

pub fn paf(input: &Input) -> Result<Report, CliError> {
    let g = input.undirected()?;
    let r = degree_f_pseudoarboricity(g, &input.f);
    let df = delta_f(g, &input.f);
    let pa = pseudoarboricity(g).value;
    let text = format!("degree-f pseudoarboricity = {} (Δ_f = {df}, pseudoarboricity = {pa})\n", r.value);
    let json = json!({"value": r.value, "delta_f": df, "pseudoarboricity": pa});
    Ok(Report::new(text, json).with_certificate(&input.graph, &r.decomposition))
}

fn fractional_error(e: FractionalError) -> CliError {
    match e {
        FractionalError::CapExceeded { .. } => CliError::refused(e.to_string()),
        _ => CliError::usage(e.to_string()),
    }
}

pub fn fractional(input: &Input, budget: &Budget) -> Result<Report, CliError> {
    let g = input.undirected()?;
    let sol = solve_fractional_capped(g, &input.f, budget.forest_cap).map_err(fractional_error)?;
    let cert = lp_certificate_to_json(&sol.certificate);
    let mut text = format!("fractional degree-f arboricity = {}\nprimal:\n", rat(&sol.value));
    for w in &cert.primal {
        let edges: Vec<String> = w.forest.iter().map(|[u, v]| format!("{u}-{v}")).collect();
        let _ = writeln!(text, "  y = {} on {{{}}}", w.y, edges.join(", "));
    }
    text.push_str("dual:\n");
    for ([u, v], x) in cert.edges.iter().zip(&cert.dual) {
        let _ = writeln!(text, "  x({u}-{v}) = {x}");
    }
    let c = serde_json::to_value(&cert).expect("certificate serializes");
    let json = json!({"value": rat(&sol.value), "certificate": c});
    Ok(Report { certificate: Some(c), dot: Some(to_dot(&input.graph, None)), ..Report::new(text, json) })
}

pub fn certify(input: &Input, cert_path: &Path) -> Result<Report, CliError> {
    let text = read_file(cert_path)?;
    let any: AnyCertificateJson = parse_json(&text, &cert_path.display().to_string())?;
    match any {
        AnyCertificateJson::Decomposition(c) => {
            let cert = certificate_from_json(&input.graph, &c)?;
            let target = match &input.graph {
                Graph::Undirected(g) => GraphRef::from(g),
                Graph::Directed(d) => GraphRef::from(d),
            };
            match verify_certificate(target, &cert) {
                Ok(()) => Ok(Report::new(
                    format!("VERIFIED: {} classes of kind {}\n", cert.k, cert.kind),
                    json!({"verified": true, "kind": cert.kind.name(), "k": cert.k}),
                )),
                Err(v) => Ok(Report::new(
                    format!("REJECTED: {v}\n"),
                    json!({"verified": false, "violation": v.to_string(), "class": v.class()}),
                )
                .status(Status::Negative)),
            }
        }
        AnyCertificateJson::Lp(c) => {
            let g = input.undirected()?;
            let cert = lp_certificate_from_json(&c)?;
            let ok = cert.verify(g, &input.f).map_err(fractional_error)?;
            let report = if ok {
                Report::new(
                    format!("VERIFIED: LP optimum {}\n", rat(&cert.objective_primal)),
                    json!({"verified": true, "value": rat(&cert.objective_primal)}),
                )
            } else {
                let check = check_dual(g, &input.f, &cert.dual).map_err(fractional_error)?;
                let why = match &check.violating_forest {
                    Some(forest) => format!("dual exceeds 1 on forest {forest:?}"),
                    None => "primal cover, objectives or edge list do not match".to_string(),
                };
                Report::new(format!("REJECTED: {why}\n"), json!({"verified": false, "violation": why}))
                    .status(Status::Negative)
            };
            Ok(report)
        }
    }
}

fn gadget_error(e: GadgetError) -> CliError {
    match e {
        GadgetError::TooSmall(_) => CliError::usage(e.to_string()),
        GadgetError::PinningFailed(_) => CliError::negative(e.to_string()),
        GadgetError::Fractional(e) => fractional_error(e),
    }
}

/// Largest t whose forest enumeration and LP stay within the default cap.
const GADGET_LP_T_MAX: usize = (DEFAULT_EDGE_CAP - 3) / 2;

pub fn gadget(t: usize) -> Result<Report, CliError> {
    let spec = build_g_t(t).map_err(gadget_error)?;
    let f = spec.f();
    let reference = check_dual(&spec.graph, &f, &spec.reference_dual()).map_err(fractional_error)?;
    let mut text = format!(
        "G_{t}: {} vertices, {} simple edges, total multiplicity {}\n\
         roles: u = 0, a = 1, b = 2, v = 3, c = 4, d = 5, pendants at u {:?}, at v {:?}\n\
         Δ_t = {}, arboricity = {}\nreference dual: feasible = {}, objective = {}\n",
        spec.graph.n(),
        spec.graph.num_pairs(),
        spec.graph.total_edges(),
        spec.pendants_u,
        spec.pendants_v,
        delta_f(&spec.graph, &f),
        arboricity(&spec.graph).value,
        reference.feasible,
        rat(&reference.objective),
    );
    let mut json = json!({
        "t": t,
        "graph": multigraph_to_json(&spec.graph, Some(&f)),
        "pendants_u": spec.pendants_u,
        "pendants_v": spec.pendants_v,
        "reference_dual": spec.reference_dual().iter().map(rat).collect::<Vec<_>>(),
        "reference_objective": rat(&reference.objective),
        "reference_dual_feasible": reference.feasible,
    });
    if t <= GADGET_LP_T_MAX {
        let sol = solve_fractional_capped(&spec.graph, &f, DEFAULT_EDGE_CAP).map_err(fractional_error)?;
        let bounds = verify_forest_bounds(t).map_err(gadget_error)?;
        let _ = write!(
            text,
            "a_t* = {}\nlargest degree-t forest of the simple graph: {} edges; through e1, e3, e7: {} edges\n",
            rat(&sol.value),
            bounds.max_size,
            bounds.max_size_with_core
        );
        json["value"] = json!(rat(&sol.value));
        json["max_forest"] = json!(bounds.max_size);
        json["max_forest_with_core"] = json!(bounds.max_size_with_core);
    }
    let graph = Graph::Undirected(spec.graph.clone());
    Ok(Report { dot: Some(to_dot(&graph, None)), ..Report::new(text, json) })
}

pub fn counterexample(t: usize, m: usize) -> Result<Report, CliError> {
    if m == 0 {
        return Err(CliError::usage("--m must be at least 1"));
    }
    let c = build_counterexample(t, m).map_err(gadget_error)?;
    let verdict = if c.refutes { "REFUTED" } else { "NOT REFUTED" };
    let text = format!(
        "G = {m}·G_{t}: {} vertices, {} edges\na_t*(G_t) = {}\nlower bound a_t(G) ≥ {}\n\
         conjecture bound max(Δ_t + 1, a) = max({} + 1, {}) = {}\n{verdict}\n",
        c.graph.n(),
        c.graph.total_edges(),
        rat(&c.base_value),
        rat(&c.lower_bound),
        c.delta_t,
        c.arboricity,
        c.conjecture_bound,
    );
    let json = json!({
        "t": t, "m": m,
        "graph": multigraph_to_json(&c.graph, Some(&DegreeFn::constant(t))),
        "base_value": rat(&c.base_value),
        "lower_bound": rat(&c.lower_bound),
        "dual": c.dual.iter().map(rat).collect::<Vec<_>>(),
        "dual_feasible": c.dual_check.feasible,
        "delta_t": c.delta_t, "arboricity": c.arboricity,
        "conjecture_bound": c.conjecture_bound,
        "refutes": c.refutes,
    });
    let status = if c.refutes { Status::Ok } else { Status::Negative };
    Ok(Report::new(text, json).status(status))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CapsJson {
    g: DegreeFnJson,
    h: DegreeFnJson,
}

pub enum OrientCaps<'a> {
    Constant { in_cap: usize, out_cap: usize },
    File(&'a Path),
    Branchings(usize),
}

fn orientation_json(g: &Multigraph, o: &Orientation) -> Value {
    let arcs: Vec<Value> = g
        .edges()
        .iter()
        .zip(&o.forward)
        .map(|(e, &fw)| json!({"u": e.u, "v": e.v, "u_to_v": fw, "v_to_u": e.mult - fw}))
        .collect();
    json!(arcs)
}

fn orientation_text(g: &Multigraph, o: &Orientation) -> String {
    let mut out = String::new();
    for (e, &fw) in g.edges().iter().zip(&o.forward) {
        let _ = writeln!(out, "  {}-{}: {} toward {}, {} toward {}", e.u, e.v, fw, e.v, e.mult - fw, e.u);
    }
    out
}

pub fn orient_command(input: &Input, caps: OrientCaps<'_>) -> Result<Report, CliError> {
    let g = input.undirected()?;
    let (caps_in, caps_out) = match caps {
        OrientCaps::Branchings(d) => {
            let r = orient_for_branchings(g, &input.f, d).map_err(|e| CliError::refused(e.to_string()))?;
            let st = directed_degree_stats(&r.digraph, &input.f);
            let text = format!(
                "orientation for branchings with d = {d}: Δ⁻ = {}, Δ⁺_(f−1) = {}\n{}",
                st.max_in,
                st.max_out_weighted,
                orientation_text(g, &r.orientation)
            );
            let json = json!({
                "feasible": true, "d": d, "max_in": st.max_in, "max_out_weighted": st.max_out_weighted,
                "arcs": orientation_json(g, &r.orientation),
                "digraph": digraph_to_json(&r.digraph, Some(&input.f)),
            });
            let graph = Graph::Directed(r.digraph);
            return Ok(Report { dot: Some(to_dot(&graph, None)), ..Report::new(text, json) });
        }
        OrientCaps::Constant { in_cap, out_cap } => (DegreeFn::constant(in_cap), DegreeFn::constant(out_cap)),
        OrientCaps::File(path) => {
            let caps: CapsJson = parse_json(&read_file(path)?, &path.display().to_string())?;
            (degree_fn_from_json(&caps.g, g.n())?, degree_fn_from_json(&caps.h, g.n())?)
        }
    };
    match orient(g, &caps_in, &caps_out) {
        OrientationResult::Oriented(o) => {
            let text = format!("FEASIBLE\n{}", orientation_text(g, &o));
            let json = json!({"feasible": true, "arcs": orientation_json(g, &o)});
            let (digraph, _) = o.to_digraph(g);
            Ok(Report { dot: Some(to_dot(&Graph::Directed(digraph), None)), ..Report::new(text, json) })
        }
        OrientationResult::Infeasible(w) => {
            let (text, witness) = match &w {
                Infeasibility::Vertex { vertex, degree, g, h } => (
                    format!("INFEASIBLE: vertex {vertex} has degree {degree} > g + h = {g} + {h}\n"),
                    json!({"vertex": vertex, "degree": degree, "g": g, "h": h}),
                ),
                Infeasibility::Set { set, e_s, g_s, h_s } => (
                    format!("INFEASIBLE: S = {set:?} spans {e_s} edges > min(g(S), h(S)) = min({g_s}, {h_s})\n"),
                    json!({"S": set, "e_S": e_s, "g_S": g_s, "h_S": h_s}),
                ),
            };
            Ok(Report::new(text, json!({"feasible": false, "witness": witness})).status(Status::Negative))
        }
    }
}

fn asymptotic_json(s: &AsymptoticStats) -> Value {
    json!({
        "d": s.d,
        "prime": s.prime,
        "resamplings": s.resamplings,
        "k_too_large": s.k_too_large,
        "residue_degrees": s.residue_degrees,
        "residue_classes": s.residue_classes,
        "pipeline_classes": s.pipeline_classes,
        "trivial_classes": s.trivial_classes,
        "route": match s.route { Route::Pipeline => "pipeline", Route::Trivial => "trivial" },
        "fallback": s.fallback.as_ref().map(fallback_text),
    })
}

fn fallback_text(f: &Fallback) -> String {
    match f {
        Fallback::NotSimple => "digraph has parallel arcs".into(),
        Fallback::NoPrime => "no prime in [5√d, 10√d]".into(),
        Fallback::Coloring(e) => format!("vertex coloring failed: {e}"),
        Fallback::ResidueTooDense { residue, d, k } => format!("residue {residue}: k = {k} < 4·{d}"),
        Fallback::ResidueFailed { residue, error } => format!("residue {residue}: {error}"),
    }
}

fn asymptotic_text(s: &AsymptoticStats) -> String {
    let mut out = format!(
        "stats: d = {}, prime = {}, resamplings = {}, route = {}\n",
        s.d,
        s.prime.map_or("-".into(), |p| p.to_string()),
        s.resamplings,
        match s.route {
            Route::Pipeline => "pipeline",
            Route::Trivial => "trivial",
        }
    );
    let _ = writeln!(
        out,
        "stats: pipeline classes = {}, trivial classes = {}",
        s.pipeline_classes.map_or("-".into(), |p| p.to_string()),
        s.trivial_classes
    );
    if !s.residue_degrees.is_empty() {
        let _ = writeln!(out, "stats: residue degrees {:?}, residue classes {:?}", s.residue_degrees, s.residue_classes);
    }
    if let Some(f) = &s.fallback {
        let _ = writeln!(out, "stats: fallback: {}", fallback_text(f));
    }
    out
}

fn decompose_error(e: impl std::fmt::Display) -> CliError {
    CliError::refused(e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Girth,
    Asymptotic,
    Trivial,
}

pub fn decompose(input: &Input, mode: Mode, seed: u64, with_stats: bool) -> Result<Report, CliError> {
    let f = &input.f;
    if let Some(v) = (0..input.n()).find(|&v| f.get(v) < 2) {
        return Err(CliError::refused(format!("f({v}) = {} but branchings need f ≥ 2", f.get(v))));
    }
    let mut stats_text = String::new();
    let mut stats_json = json!({});
    let (cert, d) = match &input.graph {
        Graph::Undirected(g) => {
            let m = match mode {
                Mode::Girth => UndirectedMode::Girth,
                Mode::Asymptotic => UndirectedMode::Asymptotic,
                Mode::Trivial => UndirectedMode::Trivial,
            };
            let out = decompose_undirected(g, f, m, seed).map_err(|e: DecomposeError| decompose_error(e))?;
            let _ = writeln!(
                stats_text,
                "stats: d = max(Δ_f, pa) = {}, directed classes = {}",
                out.d, out.directed_classes
            );
            stats_json = json!({"d": out.d, "directed_classes": out.directed_classes});
            if let Some(s) = &out.asymptotic {
                stats_text.push_str(&asymptotic_text(s));
                stats_json["asymptotic"] = asymptotic_json(s);
            }
            (out.certificate, out.d)
        }
        Graph::Directed(dg) => match mode {
            Mode::Girth => {
                let out = decompose_large_girth(dg, f, false).map_err(|e: LargeGirthError| decompose_error(e))?;
                let _ = writeln!(stats_text, "stats: d = {}, monochromatic cycles = {}", out.stats.d, out.stats.cycles);
                stats_json = json!({"d": out.stats.d, "cycles": out.stats.cycles});
                if let Some(t) = &out.stats.transversal {
                    let _ = writeln!(
                        stats_text,
                        "stats: transversal via {:?}, {} augmenting steps, {} search nodes",
                        t.phase, t.augmenting_steps, t.search_nodes
                    );
                    stats_json["transversal"] = json!({
                        "phase": format!("{:?}", t.phase).to_lowercase(),
                        "augmenting_steps": t.augmenting_steps,
                        "search_nodes": t.search_nodes,
                        "precondition_holds": t.precondition_holds,
                    });
                }
                (out.certificate, out.stats.d)
            }
            Mode::Asymptotic => {
                let out = decompose_asymptotic(dg, f, seed);
                stats_text = asymptotic_text(&out.stats);
                stats_json = asymptotic_json(&out.stats);
                (out.certificate, out.stats.d)
            }
            Mode::Trivial => {
                let out = decompose_trivial(dg, f);
                let _ = writeln!(stats_text, "stats: d = {}, monochromatic cycles = {}", out.d, out.cycles);
                stats_json = json!({"d": out.d, "cycles": out.cycles});
                (out.certificate, out.d)
            }
        },
    };
    let mut text = format!("{} classes (d = {d}, seed = {seed})\n", cert.k);
    if with_stats {
        text.push_str(&stats_text);
    }
    let mut json = json!({"classes": cert.k, "d": d, "seed": seed});
    if with_stats {
        json["stats"] = stats_json;
    }
    Ok(Report::new(text, json).with_certificate(&input.graph, &cert))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ExactKind {
    /// Degree-f arboricity a_f.
    A,
    /// Degree-f pseudoarboricity pa_f.
    Pa,
    /// Directed degree-f arboricity (degree-f branchings).
    Vec,
}

fn oracle_error(e: OracleError) -> CliError {
    CliError::refused(e.to_string())
}

pub fn exact(input: &Input, kind: ExactKind, budget: &Budget) -> Result<Report, CliError> {
    let oracle = budget.oracle();
    let mut abort = budget.deadline();
    let (name, r): (&str, OracleResult) = match (kind, &input.graph) {
        (ExactKind::A, Graph::Undirected(g)) => {
            ("a_f", brute_a_f_with(g, &input.f, &oracle, &mut abort).map_err(oracle_error)?)
        }
        (ExactKind::Pa, Graph::Undirected(g)) => {
            ("pa_f", brute_pa_f_with(g, &input.f, &oracle, &mut abort).map_err(oracle_error)?)
        }
        (ExactKind::Vec, Graph::Directed(d)) => {
            ("directed a_f", brute_vec_a_f_with(d, &input.f, &oracle, &mut abort).map_err(oracle_error)?)
        }
        (ExactKind::Vec, Graph::Undirected(_)) => return Err(CliError::usage("--kind vec needs a directed graph")),
        (_, Graph::Directed(_)) => return Err(CliError::usage("--kind a and pa need an undirected graph")),
    };
    let text = if r.exact {
        format!("{name} = {} (exact, {} search nodes)\n", r.value, r.nodes)
    } else {
        format!("{name} ≤ {} (NOT EXACT: budget exhausted; every k < {} refuted)\n", r.value, r.lower)
    };
    let json = json!({"quantity": name, "value": r.value, "exact": r.exact, "lower": r.lower, "nodes": r.nodes});
    Ok(Report::new(text, json).with_certificate(&input.graph, &r.witness))
}

pub fn search(params: &SearchParams, resume: Option<&Path>) -> Result<Report, CliError> {
    let run = crate::search::run(params, resume)?;
    if run.resumed > 0 {
        eprintln!("resumed: {} of {} classes already done", run.resumed, run.classes);
    }
    let mut text = format!(
        "searched {} simple classes, {} weighted candidates (t = {}, ≤ {} vertices, total multiplicity ≤ {})\n",
        run.classes, run.evaluated, params.t, params.max_vertices, params.max_total_mult
    );
    let mut json = json!({
        "t": params.t, "classes": run.classes, "evaluated": run.evaluated,
        "target": rat(&params.target), "meets_target": run.meets_target,
    });
    let mut report_dot = None;
    match &run.best {
        Some(b) => {
            let _ = write!(
                text,
                "best: {} with a_t* = {}, ratio {}\ndual certificate: feasible = {}, objective = {}\n",
                b.code,
                rat(&b.value),
                rat(&b.ratio),
                b.dual_check.feasible,
                rat(&b.dual_check.objective)
            );
            for (e, x) in b.graph.edges().iter().zip(&b.dual) {
                let _ = writeln!(text, "  {}-{} ×{}: x = {}", e.u, e.v, e.mult, rat(x));
            }
            json["code"] = json!(b.code);
            json["graph"] = serde_json::to_value(multigraph_to_json(&b.graph, Some(&DegreeFn::constant(params.t))))
                .expect("graph serializes");
            json["value"] = json!(rat(&b.value));
            json["ratio"] = json!(rat(&b.ratio));
            json["dual"] = json!({
                "edges": b.graph.edges().iter().map(|e| [e.u, e.v]).collect::<Vec<_>>(),
                "x": b.dual.iter().map(rat).collect::<Vec<_>>(),
                "objective": rat(&b.dual_check.objective),
                "max_forest_weight": rat(&b.dual_check.max_forest_weight),
                "feasible": b.dual_check.feasible,
            });
            report_dot = Some(to_dot(&Graph::Undirected(b.graph.clone()), None));
        }
        None => text.push_str("no admissible graph within the bounds\n"),
    }
    let _ = writeln!(text, "target {}: {}", rat(&params.target), if run.meets_target { "MET" } else { "NOT MET" });
    let status = if run.meets_target { Status::Ok } else { Status::Negative };
    Ok(Report { dot: report_dot, ..Report::new(text, json).status(status) })
}
