//! File formats: graphs, degree functions, certificates and rationals.

use std::collections::BTreeMap;
use std::path::Path;

use arborize_core::fractional::RationalLpCertificate;
use arborize_core::graph::GraphError;
use arborize_core::{CertKind, DecompositionCertificate, DegreeFn, Digraph, Multigraph, Rational};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub u: usize,
    pub v: usize,
    #[serde(default = "one")]
    pub mult: usize,
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct DegreeFnJson {
    pub default: usize,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub overrides: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    #[serde(default)]
    pub directed: bool,
    pub n: usize,
    pub edges: Vec<EdgeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<DegreeFnJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct AssignmentJson {
    pub u: usize,
    pub v: usize,
    pub classes: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CertificateJson {
    pub kind: String,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<DegreeFnJson>,
    pub assignment: Vec<AssignmentJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct WeightedForestJson {
    /// Edges of the forest as vertex pairs.
    pub forest: Vec<[usize; 2]>,
    pub y: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct LpCertificateJson {
    pub edges: Vec<[usize; 2]>,
    pub multiplicities: Vec<usize>,
    pub primal: Vec<WeightedForestJson>,
    pub dual: Vec<String>,
    pub objective_primal: String,
    pub objective_dual: String,
}

/// Either certificate format, told apart by their fields.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum AnyCertificateJson {
    Decomposition(CertificateJson),
    Lp(LpCertificateJson),
}

/// Input graph with its degree function (2 everywhere if absent).
#[derive(Debug, Clone)]
pub enum Graph {
    Undirected(Multigraph),
    Directed(Digraph),
}

#[derive(Debug, Clone)]
pub struct Input {
    pub graph: Graph,
    pub f: DegreeFn,
}

impl Input {
    pub fn undirected(&self) -> Result<&Multigraph, CliError> {
        match &self.graph {
            Graph::Undirected(g) => Ok(g),
            Graph::Directed(_) => Err(CliError::usage("this command needs an undirected graph")),
        }
    }

    pub fn n(&self) -> usize {
        match &self.graph {
            Graph::Undirected(g) => g.n(),
            Graph::Directed(d) => d.n(),
        }
    }
}

/// Always "p/q" in lowest terms, integers included.
pub fn rat(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_rat(s: &str) -> Result<Rational, CliError> {
    s.trim().parse::<Rational>().map_err(|_| CliError::usage(format!("not a rational number: {s:?}")))
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))
}

/// Parses JSON, reporting syntax errors with line and column and schema
/// errors with the offending field path.
pub fn parse_json<T: DeserializeOwned>(text: &str, what: &str) -> Result<T, CliError> {
    let mut de = serde_json::Deserializer::from_str(text);
    match serde_path_to_error::deserialize::<_, T>(&mut de) {
        Ok(v) => Ok(v),
        Err(err) => {
            let path = err.path().to_string();
            let inner = err.into_inner();
            if inner.is_syntax() || inner.is_eof() {
                Err(CliError::usage(format!(
                    "{what}: malformed JSON at line {} column {}: {inner}",
                    inner.line(),
                    inner.column()
                )))
            } else {
                Err(CliError::usage(format!("{what}: schema violation at `{path}`: {inner}")))
            }
        }
    }
}

fn graph_error(e: GraphError) -> CliError {
    CliError::usage(format!("invalid graph: {e}"))
}

pub fn degree_fn_from_json(f: &DegreeFnJson, n: usize) -> Result<DegreeFn, CliError> {
    let mut out = DegreeFn::constant(f.default);
    for (key, &value) in &f.overrides {
        let v: usize = key
            .parse()
            .map_err(|_| CliError::usage(format!("schema violation at `f.overrides.{key}`: not a vertex id")))?;
        if v >= n {
            return Err(CliError::usage(format!("f override for vertex {v} but n = {n}")));
        }
        out = out.with_override(v, value).map_err(graph_error)?;
    }
    Ok(out)
}

pub fn degree_fn_to_json(f: &DegreeFn) -> DegreeFnJson {
    DegreeFnJson {
        default: f.default_value(),
        overrides: f.overrides().iter().map(|(v, x)| (v.to_string(), *x)).collect(),
    }
}

pub fn input_from_json(g: &GraphJson) -> Result<Input, CliError> {
    let edges = g.edges.iter().map(|e| (e.u, e.v, e.mult));
    let graph = if g.directed {
        Graph::Directed(Digraph::new(g.n, edges).map_err(graph_error)?)
    } else {
        Graph::Undirected(Multigraph::new(g.n, edges).map_err(graph_error)?)
    };
    let f = match &g.f {
        Some(f) => degree_fn_from_json(f, g.n)?,
        None => DegreeFn::constant(2),
    };
    Ok(Input { graph, f })
}

pub fn read_input(path: &Path) -> Result<Input, CliError> {
    let text = read_file(path)?;
    input_from_json(&parse_json::<GraphJson>(&text, &path.display().to_string())?)
}

pub fn multigraph_to_json(g: &Multigraph, f: Option<&DegreeFn>) -> GraphJson {
    GraphJson {
        directed: false,
        n: g.n(),
        edges: g.edges().iter().map(|e| EdgeJson { u: e.u, v: e.v, mult: e.mult }).collect(),
        f: f.map(degree_fn_to_json),
    }
}

pub fn digraph_to_json(d: &Digraph, f: Option<&DegreeFn>) -> GraphJson {
    GraphJson {
        directed: true,
        n: d.n(),
        edges: d.arcs().iter().map(|a| EdgeJson { u: a.tail, v: a.head, mult: a.mult }).collect(),
        f: f.map(degree_fn_to_json),
    }
}

/// `(u, v)` per edge class, in the order certificates index them.
pub fn classes_of(graph: &Graph) -> Vec<(usize, usize)> {
    match graph {
        Graph::Undirected(g) => g.edges().iter().map(|e| (e.u, e.v)).collect(),
        Graph::Directed(d) => d.arcs().iter().map(|a| (a.tail, a.head)).collect(),
    }
}

pub fn certificate_to_json(graph: &Graph, cert: &DecompositionCertificate) -> CertificateJson {
    CertificateJson {
        kind: cert.kind.name().to_string(),
        k: cert.k,
        f: cert.f.as_ref().map(degree_fn_to_json),
        assignment: classes_of(graph)
            .into_iter()
            .zip(&cert.assignment)
            .map(|((u, v), classes)| AssignmentJson { u, v, classes: classes.clone() })
            .collect(),
    }
}

/// Maps a certificate file onto the graph's edge classes. Entries are
/// matched by endpoints (either order for undirected graphs); a pair that
/// is listed twice or absent from the graph is reported, an unlisted pair
/// is left with no colors so that verification names it.
pub fn certificate_from_json(graph: &Graph, c: &CertificateJson) -> Result<DecompositionCertificate, CliError> {
    let kind = CertKind::parse(&c.kind).ok_or_else(|| {
        let names: Vec<&str> = CertKind::ALL.iter().map(|k| k.name()).collect();
        CliError::usage(format!("unknown certificate kind {:?}; expected one of {}", c.kind, names.join(", ")))
    })?;
    let pairs = classes_of(graph);
    let directed = matches!(graph, Graph::Directed(_));
    let key = |u: usize, v: usize| if directed { (u, v) } else { (u.min(v), u.max(v)) };
    let index: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &(u, v))| (key(u, v), i)).collect();
    let mut assignment: Vec<Option<Vec<usize>>> = vec![None; pairs.len()];
    for (i, entry) in c.assignment.iter().enumerate() {
        let Some(&slot) = index.get(&key(entry.u, entry.v)) else {
            return Err(CliError::negative(format!(
                "certificate entry {i} names ({}, {}), which is not an edge of the graph",
                entry.u, entry.v
            )));
        };
        if assignment[slot].replace(entry.classes.clone()).is_some() {
            return Err(CliError::negative(format!("certificate lists ({}, {}) twice", entry.u, entry.v)));
        }
    }
    let f = c.f.as_ref().map(|f| degree_fn_from_json(f, graph_n(graph))).transpose()?;
    Ok(DecompositionCertificate {
        kind,
        k: c.k,
        assignment: assignment.into_iter().map(Option::unwrap_or_default).collect(),
        f,
    })
}

fn graph_n(graph: &Graph) -> usize {
    match graph {
        Graph::Undirected(g) => g.n(),
        Graph::Directed(d) => d.n(),
    }
}

pub fn lp_certificate_to_json(c: &RationalLpCertificate) -> LpCertificateJson {
    LpCertificateJson {
        edges: c.edges.iter().map(|&(u, v)| [u, v]).collect(),
        multiplicities: c.multiplicities.clone(),
        primal: c
            .primal
            .iter()
            .map(|(forest, y)| WeightedForestJson {
                forest: forest.iter().map(|&e| [c.edges[e].0, c.edges[e].1]).collect(),
                y: rat(y),
            })
            .collect(),
        dual: c.dual.iter().map(rat).collect(),
        objective_primal: rat(&c.objective_primal),
        objective_dual: rat(&c.objective_dual),
    }
}

pub fn lp_certificate_from_json(c: &LpCertificateJson) -> Result<RationalLpCertificate, CliError> {
    let edges: Vec<(usize, usize)> = c.edges.iter().map(|&[u, v]| (u, v)).collect();
    let index: BTreeMap<(usize, usize), usize> = edges.iter().enumerate().map(|(i, &(u, v))| ((u.min(v), u.max(v)), i)).collect();
    let mut primal = Vec::new();
    for (i, w) in c.primal.iter().enumerate() {
        let forest = w
            .forest
            .iter()
            .map(|&[u, v]| {
                index.get(&(u.min(v), u.max(v))).copied().ok_or_else(|| {
                    CliError::negative(format!("primal forest {i} uses ({u}, {v}), which is not an edge"))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        primal.push((forest, parse_rat(&w.y)?));
    }
    Ok(RationalLpCertificate {
        edges,
        multiplicities: c.multiplicities.clone(),
        primal,
        dual: c.dual.iter().map(|s| parse_rat(s)).collect::<Result<_, _>>()?,
        objective_primal: parse_rat(&c.objective_primal)?,
        objective_dual: parse_rat(&c.objective_dual)?,
    })
}
