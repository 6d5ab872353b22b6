mod common;

use arborize_core::branchings::{
    decompose_large_girth, decompose_trivial, hakimi_kariv_color, aux_bipartite, lll_vertex_coloring,
    check_lemma_bounds,
};
use arborize_core::density::{arboricity, degree_f_pseudoarboricity, pseudoarboricity};
use arborize_core::fractional::{blowup_scaling_check, check_dual, solve_copy_level, solve_fractional};
use arborize_core::gadgets::{build_counterexample, canonical_code};
use arborize_core::graph::directed_degree_stats;
use arborize_core::oracle::{brute_a_f, brute_pa_f, brute_vec_a_f, OracleBudget};
use arborize_core::orient::{check_et_conditions, orient, orient_for_branchings, OrientationResult};
use arborize_core::{verify_certificate, DegreeFn, Digraph, Multigraph};
use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_digraph(r: &mut impl Rng, max_n: usize, p: f64) -> Digraph {
    let n = r.gen_range(2..=max_n);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && r.gen_bool(p) {
                arcs.push((u, v));
            }
        }
    }
    Digraph::new_simple(n, arcs).unwrap()
}

fn int(x: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn density_values_match_subset_maxima(seed in any::<u64>()) {
        let g = random_multigraph(&mut rng(seed), 8, 14);
        let a = arboricity(&g);
        let pa = pseudoarboricity(&g);
        prop_assert_eq!(a.value, nash_williams(&g));
        prop_assert_eq!(pa.value, hakimi(&g));
        verify_certificate(&g, &a.decomposition).unwrap();
        verify_certificate(&g, &pa.decomposition).unwrap();
        prop_assert_eq!(a.decomposition.k, a.value);
        prop_assert!(pa.value <= a.value && a.value <= 2 * pa.value.max(1));
    }

    #[test]
    fn degree_f_pseudoarboricity_matches_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_multigraph(&mut r, 6, 12);
        let f = random_degree_fn(&mut r, g.n(), 2, 4);
        let flow = degree_f_pseudoarboricity(&g, &f);
        verify_certificate(&g, &flow.decomposition).unwrap();
        let brute = brute_pa_f(&g, &f, &OracleBudget::default()).unwrap();
        prop_assert_eq!(flow.value, brute.value);
        prop_assert_eq!(flow.value, max_degree_ratio(&g, &f).max(hakimi(&g)));
    }

    #[test]
    fn orientation_agrees_with_conditions(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_multigraph(&mut r, 10, 24);
        let caps_in = random_degree_fn(&mut r, g.n(), 0, 4);
        let caps_out = random_degree_fn(&mut r, g.n(), 0, 4);
        let et = check_et_conditions(&g, &caps_in, &caps_out).unwrap();
        match orient(&g, &caps_in, &caps_out) {
            OrientationResult::Oriented(o) => {
                prop_assert!(et.feasible());
                let (ins, outs) = (o.in_degrees(&g), o.out_degrees(&g));
                for v in 0..g.n() {
                    prop_assert!(ins[v] <= caps_in.get(v) && outs[v] <= caps_out.get(v));
                }
            }
            OrientationResult::Infeasible(w) => {
                prop_assert!(!et.feasible());
                prop_assert!(w.holds(&g, &caps_in, &caps_out));
            }
        }
    }

    #[test]
    fn branching_orientation_meets_degree_bounds(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_multigraph(&mut r, 10, 30);
        let f = random_degree_fn(&mut r, g.n(), 2, 4);
        let d = max_degree_ratio(&g, &f).max(nash_williams(&g)).max(1);
        let o = orient_for_branchings(&g, &f, d).unwrap();
        let st = directed_degree_stats(&o.digraph, &f);
        prop_assert!(st.max_in <= d && st.max_out_weighted <= d);
        prop_assert_eq!(o.digraph.total_arcs(), g.total_edges());
    }

    #[test]
    fn f_coloring_of_aux_graph_gives_d_pseudoforests(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = random_digraph(&mut r, 9, 0.4);
        let f = random_degree_fn(&mut r, d.n(), 2, 3);
        let aux = aux_bipartite(&d, &f);
        let coloring = hakimi_kariv_color(&aux.graph, &aux.g).unwrap();
        verify_certificate(&aux.graph, &coloring).unwrap();
        prop_assert_eq!(coloring.k, directed_degree_stats(&d, &f).d());
    }

    #[test]
    fn trivial_route_stays_within_twice_d(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = random_digraph(&mut r, 12, 0.35);
        let f = random_degree_fn(&mut r, d.n(), 2, 3);
        let out = decompose_trivial(&d, &f);
        verify_certificate(&d, &out.certificate).unwrap();
        prop_assert!(out.certificate.k <= 2 * out.d.max(1));
    }

    #[test]
    fn lifts_split_into_d_plus_one(seed in any::<u64>()) {
        let mut r = rng(seed);
        let base = arborize_core::graph::named::complete_symmetric(3);
        let f = DegreeFn::constant(r.gen_range(2..=3));
        let lift = cyclic_lift(&base, r.gen_range(300..900), &mut r);
        prop_assume!(lift.directed_girth_at_least(8));
        let out = decompose_large_girth(&lift, &f, false).unwrap();
        prop_assert_eq!(out.certificate.k, directed_degree_stats(&lift, &f).d() + 1);
        verify_certificate(&lift, &out.certificate).unwrap();
    }

    #[test]
    fn local_coloring_meets_exact_bounds(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(60..120);
        let out = r.gen_range(20..40);
        let mut arcs = Vec::new();
        for v in 0..n {
            let mut others: Vec<usize> = (0..n).filter(|&w| w != v).collect();
            others.shuffle(&mut r);
            arcs.extend(others[..out].iter().map(|&w| (v, w)));
        }
        let d = Digraph::new_simple(n, arcs).unwrap();
        let f = DegreeFn::constant(2);
        let k = r.gen_range(2..=5);
        let c = lll_vertex_coloring(&d, &f, k, seed).unwrap();
        prop_assert_eq!(check_lemma_bounds(&d, &f, &c.colors, k), Ok(()));
    }

    #[test]
    fn lp_duals_certify_the_optimum(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_multigraph(&mut r, 7, 14);
        let f = random_degree_fn(&mut r, g.n(), 2, 3);
        let sol = solve_fractional(&g, &f).unwrap();
        let check = check_dual(&g, &f, &sol.certificate.dual).unwrap();
        prop_assert!(check.feasible);
        prop_assert_eq!(&check.objective, &sol.value);
        prop_assert!(sol.certificate.verify(&g, &f).unwrap());
        prop_assert!(sol.value.ceil() >= int(max_degree_ratio(&g, &f).max(nash_williams(&g))));
        let scaling = blowup_scaling_check(&g, &f, &[2, 3]).unwrap();
        prop_assert!(scaling.exact);
    }

    #[test]
    fn copy_level_lp_matches_projection(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_multigraph(&mut r, 5, 6);
        let f = random_degree_fn(&mut r, g.n(), 2, 3);
        prop_assert_eq!(solve_copy_level(&g, &f, 6).unwrap(), solve_fractional(&g, &f).unwrap().value);
    }

    #[test]
    fn oracle_sandwich(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_multigraph(&mut r, 6, 10);
        let f = random_degree_fn(&mut r, g.n(), 2, 3);
        let a_f = brute_a_f(&g, &f, &OracleBudget::default()).unwrap();
        prop_assert!(a_f.exact);
        prop_assert!(int(a_f.value) >= solve_fractional(&g, &f).unwrap().value);
        prop_assert!(a_f.value <= (max_degree_ratio(&g, &f) + 1).max(2 * hakimi(&g)));
    }

    #[test]
    fn directed_oracle_bounds(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = random_digraph(&mut r, 5, 0.45);
        prop_assume!(d.total_arcs() <= 12);
        let f = random_degree_fn(&mut r, d.n(), 2, 3);
        let budget = OracleBudget::default();
        let vec_a = brute_vec_a_f(&d, &f, &budget).unwrap();
        let st = directed_degree_stats(&d, &f);
        let under = d.underlying();
        prop_assert!(vec_a.value >= st.max_in.max(st.max_out_weighted).max(nash_williams(&under)));
        prop_assert!(brute_a_f(&under, &f, &budget).unwrap().value <= vec_a.value);
        // with f above every out-degree, degree-f branchings are plain branchings
        let loose = DegreeFn::constant(d.n() + 1);
        let plain = brute_vec_a_f(&d, &loose, &budget).unwrap();
        prop_assert_eq!(plain.value, st.max_in.max(nash_williams(&under)));
    }

    #[test]
    fn canonical_codes_ignore_labels(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_multigraph(&mut r, 7, 12);
        prop_assume!(g.is_connected());
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut r);
        let h = Multigraph::new(g.n(), g.edges().iter().map(|e| (perm[e.u], perm[e.v], e.mult))).unwrap();
        prop_assert_eq!(canonical_code(&g), canonical_code(&h));
    }
}

#[test]
fn counterexample_bound_is_below_oracle_value() {
    let c = build_counterexample(2, 1).unwrap();
    let budget = OracleBudget { max_edges: 20, ..OracleBudget::default() };
    let exact = brute_a_f(&c.graph, &DegreeFn::constant(2), &budget).unwrap();
    assert!(exact.exact);
    assert!(c.lower_bound <= int(exact.value));
}
