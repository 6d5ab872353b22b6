//! Acceptance run: one PASS/FAIL line per criterion. Exits non-zero if any
//! criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use arborize_core::analytic::budget_holds;
use arborize_core::branchings::{
    decompose_asymptotic, decompose_large_girth, decompose_undirected, lll_vertex_coloring, check_lemma_bounds,
    UndirectedMode, BUDGET_CONSTANT,
};
use arborize_core::density::{arboricity, degree_f_pseudoarboricity, pseudoarboricity, pseudoforest_upper_bound};
use arborize_core::fractional::{blowup_scaling_check, check_dual, solve_fractional};
use arborize_core::gadgets::{build_counterexample, build_g_t, gadget_search, verify_forest_bounds, SearchParams};
use arborize_core::graph::named::*;
use arborize_core::graph::{delta_f, directed_degree_stats};
use arborize_core::oracle::{brute_a_f, brute_pa_f, brute_vec_a_f, OracleBudget};
use arborize_core::orient::{check_et_conditions, orient, OrientationResult};
use arborize_core::{verify_certificate, CertKind, DegreeFn, Digraph, Multigraph};
use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gadget_ratios() -> Outcome {
    let mut shown = Vec::new();
    for t in 2..=5usize {
        let spec = build_g_t(t).map_err(|e| e.to_string())?;
        let reference = rat(4 * t as i64 + 7, 2 * t as i64 + 3);
        let value = solve_fractional(&spec.graph, &spec.f()).map_err(|e| e.to_string())?.value;
        ensure(value >= reference, || format!("t={t}: a_t* = {value} < {reference}"))?;
        let check = check_dual(&spec.graph, &spec.f(), &spec.reference_dual()).map_err(|e| e.to_string())?;
        ensure(check.feasible && check.objective == reference, || {
            format!("t={t}: reference dual feasible={} objective={}", check.feasible, check.objective)
        })?;
        shown.push(format!("t={t}: {value}"));
    }
    Ok(shown.join(", "))
}

fn forest_bounds() -> Outcome {
    let mut shown = Vec::new();
    for t in 2..=4 {
        let r = verify_forest_bounds(t).map_err(|e| e.to_string())?;
        ensure(r.max_size == 2 * t + 1 && r.max_size_with_core == 2 * t, || {
            format!("t={t}: max {} / with e1,e3,e7 {}", r.max_size, r.max_size_with_core)
        })?;
        shown.push(format!("t={t}: {}/{} over {} forests", r.max_size, r.max_size_with_core, r.forests));
    }
    Ok(shown.join(", "))
}

fn counterexample() -> Outcome {
    let c = build_counterexample(2, 8).map_err(|e| e.to_string())?;
    ensure(c.lower_bound >= rat(120, 7), || format!("lower bound {}", c.lower_bound))?;
    ensure(c.conjecture_bound == 17 && c.refutes, || {
        format!("bound {} refutes {}", c.conjecture_bound, c.refutes)
    })?;
    let g2 = build_g_t(2).unwrap();
    let scaling = blowup_scaling_check(&g2.graph, &g2.f(), &[1, 2, 3]).map_err(|e| e.to_string())?;
    ensure(scaling.exact, || format!("scaling entries {:?}", scaling.entries))?;
    Ok(format!("a_2(8·G_2) ≥ {} > {} = max(Δ_2+1, a); scaling exact for m=1,2,3", c.lower_bound, c.conjecture_bound))
}

fn search() -> Outcome {
    let params = SearchParams { t: 2, max_vertices: 6, max_total_mult: 10, target: rat(9, 8), restrict_to: None };
    let out = gadget_search(&params).map_err(|e| e.to_string())?;
    let best = out.best.ok_or("no admissible graph found")?;
    ensure(out.meets_target, || format!("best ratio {}", best.ratio))?;
    let f = DegreeFn::constant(2);
    ensure(best.dual_check.feasible && best.dual_check.objective == best.value, || "dual".into())?;
    ensure(delta_f(&best.graph, &f) == 2 && arboricity(&best.graph).value == 2, || "Δ_2 = a = 2".into())?;
    Ok(format!(
        "ratio {} on {} ({} classes, {} weighted candidates)",
        best.ratio, best.code, out.classes, out.evaluated
    ))
}

fn formula_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let budget = OracleBudget::default();
    let count = 220;
    // a_f* ≥ max{Δ_f, a} as literally stated; counted rather than asserted
    let mut literal_misses = 0;
    let mut first_miss = None;
    for i in 0..count {
        let g = random_multigraph(&mut rng, 7, 12);
        let f = random_degree_fn(&mut rng, g.n(), 2, 4);
        let a = arboricity(&g).value;
        let pa = pseudoarboricity(&g).value;
        ensure(a == nash_williams(&g), || format!("#{i}: arboricity {a} on {g:?}"))?;
        ensure(pa == hakimi(&g), || format!("#{i}: pseudoarboricity {pa} on {g:?}"))?;
        let df = max_degree_ratio(&g, &f);
        let bpa = brute_pa_f(&g, &f, &budget).map_err(|e| e.to_string())?;
        ensure(bpa.exact && bpa.value == df.max(pa), || format!("#{i}: brute pa_f {} on {g:?}", bpa.value))?;
        ensure(degree_f_pseudoarboricity(&g, &f).value == bpa.value, || format!("#{i}: pa_f flow"))?;
        let ba = brute_a_f(&g, &f, &budget).map_err(|e| e.to_string())?;
        let frac = solve_fractional(&g, &f).map_err(|e| e.to_string())?.value;
        let exact = BigRational::from_integer(BigInt::from(ba.value));
        ensure(ba.exact && exact >= frac, || format!("#{i}: a_f = {} < a_f* = {frac}", ba.value))?;
        ensure(frac.ceil().to_integer() >= BigInt::from(df.max(a)), || {
            format!("#{i}: ⌈a_f*⌉ = ⌈{frac}⌉ < max(Δ_f, a) = {}", df.max(a))
        })?;
        if frac < BigRational::from_integer(BigInt::from(df.max(a))) {
            literal_misses += 1;
            first_miss.get_or_insert_with(|| format!("a_f* = {frac} < max(Δ_f = {df}, a = {a}) on {g:?}"));
        }
        ensure(ba.value <= (df + 1).max(2 * pa) && ba.value <= pseudoforest_upper_bound(&g, &f), || {
            format!("#{i}: a_f = {} above max(Δ_f+1, 2pa)", ba.value)
        })?;
    }
    let summary = format!(
        "{count} random multigraphs; Nash-Williams, Hakimi, pa_f formula, a_f ≥ a_f*, ⌈a_f*⌉ ≥ max(Δ_f, a) \
         and a_f ≤ max(Δ_f+1, 2pa) hold throughout"
    );
    match first_miss {
        None => Ok(summary),
        Some(example) => Err(format!(
            "{summary}; a_f* ≥ max(Δ_f, a) fails on {literal_misses} of them, e.g. {example}"
        )),
    }
}

fn orientation_iff() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let count = 300;
    let mut feasible = 0;
    for i in 0..count {
        let n = rng.gen_range(2..=10);
        let total = rng.gen_range(0..=25);
        let g = random_multigraph(&mut rng, n, total);
        let caps_in = random_degree_fn(&mut rng, g.n(), 0, 4);
        let caps_out = random_degree_fn(&mut rng, g.n(), 0, 4);
        let et = check_et_conditions(&g, &caps_in, &caps_out).map_err(|e| e.to_string())?;
        match orient(&g, &caps_in, &caps_out) {
            OrientationResult::Oriented(o) => {
                feasible += 1;
                ensure(et.feasible(), || format!("#{i}: oriented but conditions fail"))?;
                let (ins, outs) = (o.in_degrees(&g), o.out_degrees(&g));
                ensure((0..g.n()).all(|v| ins[v] <= caps_in.get(v) && outs[v] <= caps_out.get(v)), || {
                    format!("#{i}: caps exceeded")
                })?;
            }
            OrientationResult::Infeasible(w) => {
                ensure(!et.feasible(), || format!("#{i}: infeasible but conditions hold"))?;
                ensure(w.holds(&g, &caps_in, &caps_out), || format!("#{i}: witness {w:?} does not recount"))?;
            }
        }
    }
    Ok(format!("{count} instances ({feasible} feasible), all agree"))
}

fn girth_instances() -> Vec<(Digraph, DegreeFn)> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut out = Vec::new();
    for s in 1..=4usize {
        let steps: Vec<usize> = (1..=s).collect();
        for extra in [0, 1, 3, 7] {
            for fv in [2, 3] {
                out.push((circulant(4 * s * s + extra, &steps), DegreeFn::constant(fv)));
            }
        }
    }
    let bases = [(complete_symmetric(3), 2), (complete_symmetric(3), 3), (directed_cycle(4), 2), (circulant(5, &[1, 2]), 2)];
    while out.len() < 60 {
        let (base, fv) = &bases[out.len() % bases.len()];
        let f = DegreeFn::constant(*fv);
        let d = directed_degree_stats(base, &f).d();
        let lift = cyclic_lift(base, rng.gen_range(500..2000), &mut rng);
        if lift.directed_girth_at_least(4 * d) {
            out.push((lift, f));
        }
    }
    out
}

fn large_girth() -> Outcome {
    let instances = girth_instances();
    for (i, (d, f)) in instances.iter().enumerate() {
        let dd = directed_degree_stats(d, f).d();
        let out = decompose_large_girth(d, f, false).map_err(|e| format!("#{i}: {e}"))?;
        ensure(out.certificate.k == dd + 1, || format!("#{i}: {} classes for d = {dd}", out.certificate.k))?;
        verify_certificate(d, &out.certificate).map_err(|e| format!("#{i}: {e}"))?;
    }
    Ok(format!("{} digraphs, each split into exactly d+1 verified branchings", instances.len()))
}

fn random_simple_digraph(rng: &mut impl Rng, n: usize, out: usize) -> Digraph {
    use rand::seq::SliceRandom;
    let mut arcs = Vec::new();
    for v in 0..n {
        let mut others: Vec<usize> = (0..n).filter(|&w| w != v).collect();
        others.shuffle(rng);
        arcs.extend(others[..out].iter().map(|&w| (v, w)));
    }
    Digraph::new_simple(n, arcs).unwrap()
}

fn local_coloring() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut ds = Vec::new();
    let mut most = 0;
    for i in 0..24u64 {
        let fv = rng.gen_range(2..=3);
        let f = DegreeFn::constant(fv);
        // out-degree `out` on n vertices gives Δ⁻ a little above `out`;
        // retry until d lands in [20, 60]
        let (d, dd) = loop {
            let n = rng.gen_range(150..400);
            let out = rng.gen_range(14..=50);
            let d = random_simple_digraph(&mut rng, n, out);
            let dd = directed_degree_stats(&d, &f).d();
            if (20..=60).contains(&dd) {
                break (d, dd);
            }
        };
        let k = (dd as f64).sqrt().floor() as usize;
        let c = lll_vertex_coloring(&d, &f, k, i).map_err(|e| format!("#{i}: {e}"))?;
        check_lemma_bounds(&d, &f, &c.colors, k).map_err(|(v, col)| format!("#{i}: ({v}, {col}) violated"))?;
        most = most.max(c.resamplings);
        ds.push(dd);
    }
    let (lo, hi) = (ds.iter().min().unwrap(), ds.iter().max().unwrap());
    Ok(format!("{} digraphs, d in [{lo}, {hi}], at most {most} resamplings", ds.len()))
}

fn asymptotic() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut shown = Vec::new();
    for (i, r) in [64usize, 81, 100, 121, 144].into_iter().enumerate() {
        let d = eulerian_circulant(r, &mut rng);
        let f = DegreeFn::constant(2);
        let dd = directed_degree_stats(&d, &f).d();
        let out = decompose_asymptotic(&d, &f, i as u64);
        verify_certificate(&d, &out.certificate).map_err(|e| format!("d={dd}: {e}"))?;
        let k = out.certificate.k;
        ensure(budget_holds(k as u64, dd as u64, BUDGET_CONSTANT) && k <= 2 * dd, || {
            format!("d={dd}: {k} classes")
        })?;
        let raw = out.stats.pipeline_classes;
        if let Some(p) = raw {
            ensure(budget_holds(p as u64, dd as u64, BUDGET_CONSTANT), || format!("d={dd}: pipeline {p}"))?;
        }
        shown.push(format!("d={dd}: {k} (pipeline {})", raw.map_or("-".into(), |p| p.to_string())));
    }
    Ok(shown.join(", "))
}

fn known_values() -> Outcome {
    let b = OracleBudget::default();
    let two = DegreeFn::constant(2);
    let k3 = brute_vec_a_f(&complete_symmetric(3), &two, &b).map_err(|e| e.to_string())?;
    let pair = brute_a_f(&Multigraph::new(2, [(0, 1, 2)]).unwrap(), &two, &b).map_err(|e| e.to_string())?;
    let tri = brute_a_f(&cycle(3), &two, &b).map_err(|e| e.to_string())?;
    ensure(k3.exact && pair.exact && tri.exact, || "non-exact oracle result".into())?;
    ensure((k3.value, pair.value, tri.value) == (4, 2, 2), || {
        format!("K3*: {}, doubled pair: {}, triangle: {}", k3.value, pair.value, tri.value)
    })?;
    Ok("K3*: 4, doubled pair: 2, triangle: 2".into())
}

fn undirected() -> Outcome {
    let f2 = DegreeFn::constant(2);
    let f3 = DegreeFn::constant(3);
    let instances: Vec<(&str, Multigraph, DegreeFn)> = vec![
        ("C_4", cycle(4), f2.clone()),
        ("C_9", cycle(9), f2.clone()),
        ("C_40", cycle(40), f2.clone()),
        ("sun(5)", sun(5), f3.clone()),
        ("sun(12)", sun(12), f3.clone()),
        ("path(30)", path(30), f2.clone()),
        ("K_4 subdivided ×2", subdivide(&complete(4), 2), f2.clone()),
        ("K_4 subdivided ×3", subdivide(&complete(4), 3), f3.clone()),
        ("K_5 subdivided ×3", subdivide(&complete(5), 3), f2.clone()),
        ("K_3,3 subdivided ×2", subdivide(&complete_bipartite(3, 3), 2), f2.clone()),
        ("Petersen subdivided ×1", subdivide(&petersen(), 1), f2.clone()),
        ("Petersen subdivided ×2", subdivide(&petersen(), 2), f3.clone()),
    ];
    let mut shown = Vec::new();
    for (name, g, f) in &instances {
        let out = decompose_undirected(g, f, UndirectedMode::Girth, 0).map_err(|e| format!("{name}: {e}"))?;
        ensure(out.certificate.k == out.d + 1 && out.certificate.kind == CertKind::DegreeFForest, || {
            format!("{name}: {} classes for d = {}", out.certificate.k, out.d)
        })?;
        verify_certificate(g, &out.certificate).map_err(|e| format!("{name}: {e}"))?;
        shown.push(format!("{name}: d={}", out.d));
    }
    Ok(format!("{} graphs ({})", instances.len(), shown.join(", ")))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("gadget ratios", gadget_ratios),
        ("forest size bounds on G_t'", forest_bounds),
        ("blowup counterexample", counterexample),
        ("gadget search", search),
        ("formula identities", formula_identities),
        ("orientation iff", orientation_iff),
        ("large-girth pipeline", large_girth),
        ("local coloring bounds", local_coloring),
        ("asymptotic pipeline", asymptotic),
        ("known exact values", known_values),
        ("undirected wrappers", undirected),
    ];
    // Criteria whose literal statement is false; they still print FAIL but
    // do not fail the run. Criterion 5 compares the fractional value with
    // the rounded-up Δ_f and a, e.g. the triangle with multiplicities 4,1,4
    // has a_f* = 9/2 < 5 = a.
    const KNOWN_FALSE: [usize; 1] = [5];
    let mut failed = 0;
    let mut unexpected = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                let known = KNOWN_FALSE.contains(&(i + 1));
                unexpected += usize::from(!known);
                let tag = if known { " (statement false as written)" } else { "" };
                println!("FAIL {:>2} {name}{tag}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if unexpected > 0 {
        std::process::exit(1);
    }
}
