//! `reproduce TARGET`: fixed, seed-controlled scenarios that print the
//! measured values next to the expected ones.

use std::fmt::Write;

use arborize_core::analytic::budget_holds;
use arborize_core::branchings::{decompose_asymptotic, decompose_large_girth, BUDGET_CONSTANT};
use arborize_core::fractional::{blowup_scaling_check, check_dual, solve_fractional};
use arborize_core::gadgets::{build_g_t, verify_forest_bounds};
use arborize_core::graph::directed_degree_stats;
use arborize_core::graph::named::{circulant, complete_symmetric, cycle};
use arborize_core::oracle::{brute_vec_a_f, OracleBudget};
use arborize_core::{verify_certificate, DegreeFn, Rational};
use serde_json::{json, Value};

use crate::commands::Report;
use crate::error::{CliError, Status};
use crate::json::rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Target {
    GtRatios,
    ForestBounds,
    BlowupScaling,
    K3star,
    GirthPipeline,
    AsymptoticPipeline,
}

struct Check {
    lines: Vec<String>,
    rows: Vec<Value>,
    pass: bool,
}

impl Check {
    fn new() -> Self {
        Check { lines: Vec::new(), rows: Vec::new(), pass: true }
    }

    fn row(&mut self, ok: bool, line: String, row: Value) {
        self.pass &= ok;
        self.lines.push(format!("  {} {line}", if ok { "ok  " } else { "FAIL" }));
        self.rows.push(row);
    }
}

fn ratio(p: usize, q: usize) -> Rational {
    Rational::new(p.into(), q.into())
}

fn gt_ratios(c: &mut Check) -> Result<(), CliError> {
    for t in 2..=5 {
        let spec = build_g_t(t).map_err(|e| CliError::negative(e.to_string()))?;
        let expected = ratio(4 * t + 7, 2 * t + 3);
        let value = solve_fractional(&spec.graph, &spec.f()).map_err(|e| CliError::refused(e.to_string()))?.value;
        let dual = check_dual(&spec.graph, &spec.f(), &spec.reference_dual()).map_err(|e| CliError::refused(e.to_string()))?;
        let ok = value >= expected && dual.feasible && dual.objective == expected;
        c.row(
            ok,
            format!("t = {t}: a_t* = {}, expected ≥ {}, reference dual objective {}", rat(&value), rat(&expected), rat(&dual.objective)),
            json!({"t": t, "value": rat(&value), "expected": rat(&expected), "dual_feasible": dual.feasible}),
        );
    }
    Ok(())
}

fn forest_bounds(c: &mut Check) -> Result<(), CliError> {
    for t in 2..=4 {
        let r = verify_forest_bounds(t).map_err(|e| CliError::negative(e.to_string()))?;
        let ok = r.max_size == 2 * t + 1 && r.max_size_with_core == 2 * t;
        c.row(
            ok,
            format!(
                "t = {t}: largest forest {} (expected {}), through e1, e3, e7 {} (expected {}), {} forests",
                r.max_size,
                2 * t + 1,
                r.max_size_with_core,
                2 * t,
                r.forests
            ),
            json!({"t": t, "max_size": r.max_size, "max_size_with_core": r.max_size_with_core, "forests": r.forests}),
        );
    }
    Ok(())
}

fn blowup_scaling(c: &mut Check) -> Result<(), CliError> {
    let g2 = build_g_t(2).map_err(|e| CliError::negative(e.to_string()))?;
    let cases = [("G_2", g2.graph.clone(), g2.f(), vec![1, 2, 3]), ("triangle", cycle(3), DegreeFn::constant(2), vec![1, 2, 3, 4])];
    for (name, g, f, ms) in cases {
        let r = blowup_scaling_check(&g, &f, &ms).map_err(|e| CliError::refused(e.to_string()))?;
        for e in &r.entries {
            let ok = e.ratio == Rational::from_integer(e.m.into());
            c.row(
                ok,
                format!("{name}, m = {}: a* = {} = {} · {}", e.m, rat(&e.value), rat(&e.ratio), rat(&r.base_value)),
                json!({"graph": name, "m": e.m, "value": rat(&e.value), "base": rat(&r.base_value)}),
            );
        }
    }
    Ok(())
}

fn k3star(c: &mut Check) -> Result<(), CliError> {
    let f = DegreeFn::constant(2);
    let r = brute_vec_a_f(&complete_symmetric(3), &f, &OracleBudget::default())
        .map_err(|e| CliError::refused(e.to_string()))?;
    c.row(
        r.exact && r.value == 4,
        format!("K_3*: directed linear arboricity {} (expected 4), exact = {}, {} search nodes", r.value, r.exact, r.nodes),
        json!({"n": 3, "value": r.value, "exact": r.exact}),
    );
    Ok(())
}

fn girth_pipeline(c: &mut Check) -> Result<(), CliError> {
    for s in 1..=4usize {
        let steps: Vec<usize> = (1..=s).collect();
        for extra in [0, 1, 3, 7] {
            for fv in [2, 3] {
                let n = 4 * s * s + extra;
                let d = circulant(n, &steps);
                let f = DegreeFn::constant(fv);
                let dd = directed_degree_stats(&d, &f).d();
                let (k, ok) = match decompose_large_girth(&d, &f, false) {
                    Ok(out) => (Some(out.certificate.k), out.certificate.k == dd + 1 && verify_certificate(&d, &out.certificate).is_ok()),
                    Err(_) => (None, false),
                };
                c.row(
                    ok,
                    format!(
                        "circulant n = {n}, steps 1..{s}, f = {fv}: d = {dd}, {} branchings",
                        k.map_or("refused".into(), |k| k.to_string())
                    ),
                    json!({"n": n, "steps": s, "f": fv, "d": dd, "classes": k}),
                );
            }
        }
    }
    Ok(())
}

fn asymptotic_pipeline(c: &mut Check, seed: u64) -> Result<(), CliError> {
    let f = DegreeFn::constant(2);
    for (i, r) in [64usize, 81, 100, 121, 144].into_iter().enumerate() {
        let steps: Vec<usize> = (1..=r).map(|s| 2 * s - 1).collect();
        let d = circulant(4 * r + 1, &steps);
        let dd = directed_degree_stats(&d, &f).d();
        let out = decompose_asymptotic(&d, &f, seed.wrapping_add(i as u64));
        let k = out.certificate.k;
        let verified = verify_certificate(&d, &out.certificate).is_ok();
        let ok = verified && k <= 2 * dd && budget_holds(k as u64, dd as u64, BUDGET_CONSTANT);
        let raw = out.stats.pipeline_classes;
        c.row(
            ok,
            format!(
                "circulant n = {}, d = {dd}: {k} branchings (pipeline {}, bound d + {}·d^(3/4)·log^(1/2) d)",
                4 * r + 1,
                raw.map_or("-".into(), |p| p.to_string()),
                BUDGET_CONSTANT
            ),
            json!({"n": 4 * r + 1, "d": dd, "classes": k, "pipeline_classes": raw, "verified": verified}),
        );
    }
    Ok(())
}

pub fn reproduce(target: Target, seed: u64) -> Result<Report, CliError> {
    let mut c = Check::new();
    let name = match target {
        Target::GtRatios => "gt-ratios",
        Target::ForestBounds => "forest-bounds",
        Target::BlowupScaling => "blowup-scaling",
        Target::K3star => "k3star",
        Target::GirthPipeline => "girth-pipeline",
        Target::AsymptoticPipeline => "asymptotic-pipeline",
    };
    match target {
        Target::GtRatios => gt_ratios(&mut c)?,
        Target::ForestBounds => forest_bounds(&mut c)?,
        Target::BlowupScaling => blowup_scaling(&mut c)?,
        Target::K3star => k3star(&mut c)?,
        Target::GirthPipeline => girth_pipeline(&mut c)?,
        Target::AsymptoticPipeline => asymptotic_pipeline(&mut c, seed)?,
    }
    let mut text = String::new();
    let _ = writeln!(text, "{} {name}", if c.pass { "PASS" } else { "FAIL" });
    for l in &c.lines {
        let _ = writeln!(text, "{l}");
    }
    let json = json!({"target": name, "pass": c.pass, "rows": c.rows});
    let report = Report { status: if c.pass { Status::Ok } else { Status::Negative }, text, json, dot: None, certificate: None };
    Ok(report)
}
