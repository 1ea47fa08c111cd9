use num_traits::{Signed, Zero};
use proptest::prelude::*;
use tollbooth::flows::{
    compute_equilibrium, compute_social_optimum, effective_latency, social_cost, verify_social_optimum, verify_wardrop, Flow,
};
use tollbooth::fm::LinearSystem;
use tollbooth::format::{parse_instance, write_instance};
use tollbooth::gadgets::{gen_random_sp, gen_random_sp_l_instance};
use tollbooth::mintb::{make_list, max_used_path_lengths, solve_l_instance, LengthValue};
use tollbooth::rational::{int, ratio, Rational};
use tollbooth::sp::{build_parse_tree, NodeKind};

fn path_cost(path: &[usize], costs: &[Rational]) -> Rational {
    path.iter().map(|&e| &costs[e]).sum()
}

/// Wardrop check by enumeration: every path whose edges all carry flow is a
/// cheapest path.
fn wardrop_by_paths(paths: &[Vec<usize>], costs: &[Rational], flow: &Flow) -> bool {
    let best = paths.iter().map(|p| path_cost(p, costs)).min().unwrap();
    paths
        .iter()
        .filter(|p| p.iter().all(|&e| flow.on(e).is_positive()))
        .all(|p| path_cost(p, costs) == best)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn parse_tree_covers_every_edge_once(seed in any::<u64>(), m in 1usize..60) {
        let inst = gen_random_sp(seed, m, 4);
        let tree = build_parse_tree(&inst.network).unwrap();
        prop_assert!(tree.check_against(&inst.network).is_ok());
        let leaf_total: usize = tree.nodes().iter().map(|n| match &n.kind {
            NodeKind::Leaf(b) => b.len(),
            _ => 0,
        }).sum();
        prop_assert_eq!(leaf_total, m);
        prop_assert!(tree.len() < 2 * m);
    }

    #[test]
    fn equilibrium_and_optimum_verify(seed in any::<u64>(), m in 1usize..40) {
        let inst = gen_random_sp(seed, m, 5);
        let eq = compute_equilibrium(&inst.network, &inst.latencies, &inst.demand).unwrap();
        eq.check_feasible(&inst.network).unwrap();
        let costs: Vec<Rational> = inst.latencies.iter().zip(eq.edge_flows()).map(|(l, f)| l.eval(f)).collect();
        prop_assert!(verify_wardrop(&inst.network, &costs, &eq).unwrap());
        let opt = compute_social_optimum(&inst.network, &inst.latencies, &inst.demand).unwrap();
        prop_assert!(verify_social_optimum(&inst.network, &inst.latencies, &opt));
        let c_opt = social_cost(&inst.network, &inst.latencies, &opt).unwrap();
        let c_eq = social_cost(&inst.network, &inst.latencies, &eq).unwrap();
        prop_assert!(c_opt <= c_eq);
    }

    #[test]
    fn used_paths_run_at_the_effective_latency(seed in any::<u64>(), m in 1usize..12) {
        let inst = gen_random_sp(seed, m, 5);
        let tree = build_parse_tree(&inst.network).unwrap();
        let level = effective_latency(&tree, &inst.latencies).eval(&inst.demand);
        let eq = compute_equilibrium(&inst.network, &inst.latencies, &inst.demand).unwrap();
        let costs: Vec<Rational> = inst.latencies.iter().zip(eq.edge_flows()).map(|(l, f)| l.eval(f)).collect();
        let paths = inst.network.enumerate_st_paths(10_000).unwrap();
        for p in &paths {
            let cost = path_cost(p, &costs);
            if p.iter().all(|&e| eq.on(e).is_positive()) {
                prop_assert_eq!(&cost, &level);
            } else {
                prop_assert!(cost >= level);
            }
        }
    }

    #[test]
    fn social_cost_is_the_direct_sum(seed in any::<u64>(), m in 1usize..30) {
        let inst = gen_random_sp(seed, m, 5);
        let opt = compute_social_optimum(&inst.network, &inst.latencies, &inst.demand).unwrap();
        let direct: Rational = inst.latencies.iter().zip(opt.edge_flows())
            .map(|(l, f)| &l.a * f * f + &l.b * f).sum();
        prop_assert_eq!(social_cost(&inst.network, &inst.latencies, &opt).unwrap(), direct);
    }

    #[test]
    fn wardrop_check_matches_path_enumeration(seed in any::<u64>(), m in 1usize..10, picks in prop::collection::vec((0usize..64, 1i64..5), 1..4)) {
        let inst = gen_random_sp(seed, m, 3);
        let paths = inst.network.enumerate_st_paths(10_000).unwrap();
        let mut flows = vec![Rational::zero(); m];
        let mut demand = Rational::zero();
        for (pick, amount) in picks {
            for &e in &paths[pick % paths.len()] {
                flows[e] += int(amount);
            }
            demand += int(amount);
        }
        let flow = Flow::new(flows, demand);
        let costs: Vec<Rational> = inst.latencies.iter().zip(flow.edge_flows()).map(|(l, f)| l.eval(f)).collect();
        prop_assert_eq!(verify_wardrop(&inst.network, &costs, &flow).unwrap(), wardrop_by_paths(&paths, &costs, &flow));
        let eq = compute_equilibrium(&inst.network, &inst.latencies, &inst.demand).unwrap();
        let eq_costs: Vec<Rational> = inst.latencies.iter().zip(eq.edge_flows()).map(|(l, f)| l.eval(f)).collect();
        prop_assert!(wardrop_by_paths(&paths, &eq_costs, &eq));
    }

    #[test]
    fn lists_are_ordered_and_pointers_reproduce_entries(seed in any::<u64>(), m in 1usize..40, max_len in 0i64..8) {
        let inst = gen_random_sp_l_instance(seed, m, max_len);
        let tree = build_parse_tree(inst.network()).unwrap();
        let lists = make_list(&tree, &inst).unwrap();
        let heads = max_used_path_lengths(&tree, &inst);
        for (index, list) in lists.iter().enumerate() {
            prop_assert!(list.check_order().is_ok(), "{:?}", list.check_order());
            if let Some(h) = &heads[index] {
                prop_assert_eq!(&list.first().length, &LengthValue::Finite(h.clone()));
            }
            let (a, b, series) = match tree.node(index).kind {
                NodeKind::Leaf(_) => continue,
                NodeKind::Series(a, b) => (a, b, true),
                NodeKind::Parallel(a, b) => (a, b, false),
            };
            for entry in list.entries() {
                let x = &lists[a].entries()[entry.left.unwrap()];
                let y = &lists[b].entries()[entry.right.unwrap()];
                prop_assert_eq!(x.eta + y.eta, entry.eta);
                let combined = if series { &x.length + &y.length } else { x.length.clone().min(y.length.clone()) };
                prop_assert_eq!(&combined, &entry.length);
            }
        }
        let sol = solve_l_instance(&inst, &tree, None).unwrap();
        prop_assert_eq!(inst.induced_length(&sol.tolls), Some(sol.induced_length.clone()));
    }

    #[test]
    fn fourier_motzkin_witnesses_satisfy_every_row(
        rows in prop::collection::vec((prop::collection::vec(-3i64..4, 3), -6i64..7, any::<bool>()), 1..8),
        probe in prop::collection::vec(-4i64..5, 3),
    ) {
        let mut sys = LinearSystem::new(3);
        for (coeffs, c, eq) in &rows {
            let coeffs: Vec<Rational> = coeffs.iter().map(|&v| int(v)).collect();
            if *eq { sys.add_eq(coeffs, int(*c)) } else { sys.add_ge(coeffs, int(*c)) }
        }
        let point: Vec<Rational> = probe.iter().map(|&v| ratio(v, 2)).collect();
        match sys.eliminate(&[0, 1]) {
            None => prop_assert!(!sys.satisfied_by(&point)),
            Some(projection) => {
                let Some((lo, hi)) = projection.interval(2) else {
                    prop_assert!(!sys.satisfied_by(&point));
                    return Ok(());
                };
                let z = lo.or(hi).unwrap_or_else(Rational::zero);
                let mut x = vec![None, None, Some(z)];
                projection.complete(&mut x);
                let x: Vec<Rational> = x.into_iter().map(Option::unwrap).collect();
                prop_assert!(sys.satisfied_by(&x));
            }
        }
    }

    #[test]
    fn instance_text_round_trips(seed in any::<u64>(), m in 1usize..30) {
        let inst = gen_random_sp(seed, m, 7);
        let opt = compute_social_optimum(&inst.network, &inst.latencies, &inst.demand).unwrap();
        let text = write_instance(&inst.network, &inst.latencies, Some(&inst.demand), Some(&opt));
        let back = parse_instance(&text).unwrap();
        let named = |net: &tollbooth::graph::Network| -> Vec<(String, String)> {
            net.edges().iter().map(|e| (net.node_name(e.tail).to_string(), net.node_name(e.head).to_string())).collect()
        };
        prop_assert_eq!(named(&back.network), named(&inst.network));
        prop_assert_eq!(back.network.node_name(back.network.sink()), inst.network.node_name(inst.network.sink()));
        prop_assert_eq!(write_instance(&back.network, &back.latencies, back.demand.as_ref(), back.flow.as_ref()), text);
        prop_assert_eq!(&back.latencies, &inst.latencies);
        prop_assert_eq!(back.flow.as_ref(), Some(&opt));
    }
}

/// Compositions of `total` into `parts` nonnegative integers.
fn compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|k| {
            compositions(total - k, parts - 1).into_iter().map(move |mut rest| {
                rest.push(k);
                rest
            })
        })
        .collect()
}

#[test]
fn optimum_beats_every_grid_path_flow() {
    let mut checked = 0;
    for seed in 0..400u64 {
        let inst = gen_random_sp(seed, 2 + seed as usize % 5, 4);
        let paths = inst.network.enumerate_st_paths(10).unwrap();
        if paths.len() > 4 {
            continue;
        }
        let opt = compute_social_optimum(&inst.network, &inst.latencies, &inst.demand).unwrap();
        let best = social_cost(&inst.network, &inst.latencies, &opt).unwrap();
        let den = if paths.len() == 4 { 16 } else { 64 };
        for split in compositions(den, paths.len()) {
            let mut flows = vec![Rational::zero(); inst.network.edge_count()];
            for (p, k) in paths.iter().zip(&split) {
                for &e in p {
                    flows[e] += &inst.demand * ratio(*k, den);
                }
            }
            let f = Flow::new(flows, inst.demand.clone());
            assert!(social_cost(&inst.network, &inst.latencies, &f).unwrap() >= best, "seed {seed}");
        }
        checked += 1;
    }
    assert!(checked > 100);
}
