//! Randomized invariant suite: engine identities (extensivity,
//! idempotence, monotonicity, confluence, parameter monotonicity), the
//! graph format round trip, the claw-free predicate against brute force,
//! decomposition uniqueness, and the blocking-subgraph conditions.
//!
//! The rule check used by the confluence oracle is reimplemented here,
//! independent of the engine internals.

mod common;

use proptest::prelude::*;
use rand::prelude::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use spreadlab::decomposition::{self, UnitKind};
use spreadlab::families;
use spreadlab::solver::{self, SolveOptions};
use spreadlab::spreading::{self, SpreadParams};
use spreadlab::{Graph, Limit, VertexSet};

/// Test-local statement of the color change rule.
fn fires(g: &Graph, blue: &[bool], params: SpreadParams, w: usize) -> bool {
    let blue_neighbors = g.neighbors(w).iter().filter(|&&u| blue[u]).count();
    if blue_neighbors < params.p {
        return false;
    }
    g.neighbors(w).iter().any(|&u| {
        blue[u] && {
            let whites = g.neighbors(u).iter().filter(|&&x| !blue[x]).count();
            params.q.allows(whites)
        }
    })
}

/// Applies the rule in a random order until no white vertex fires.
fn closure_random_order(g: &Graph, s: &VertexSet, params: SpreadParams, seed: u64) -> VertexSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut blue = vec![false; g.n()];
    for v in s.iter() {
        blue[v] = true;
    }
    loop {
        let eligible: Vec<usize> = (0..g.n())
            .filter(|&w| !blue[w] && fires(g, &blue, params, w))
            .collect();
        match eligible.choose(&mut rng) {
            Some(&w) => blue[w] = true,
            None => break,
        }
    }
    (0..g.n()).filter(|&v| blue[v]).collect()
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let slots = n * (n.saturating_sub(1)) / 2;
        proptest::collection::vec(any::<bool>(), slots).prop_map(move |flags| {
            let mut edges = Vec::new();
            let mut idx = 0;
            for u in 0..n {
                for v in (u + 1)..n {
                    if flags[idx] {
                        edges.push((u, v));
                    }
                    idx += 1;
                }
            }
            Graph::new(n, &edges).expect("generated edges are simple")
        })
    })
}

fn arb_scenario() -> impl Strategy<Value = (Graph, VertexSet, SpreadParams)> {
    arb_graph(10).prop_flat_map(|g| {
        let n = g.n();
        (
            Just(g),
            proptest::collection::vec(any::<bool>(), n),
            1usize..=4,
            prop_oneof![Just(Limit::Infinite), (1usize..=3).prop_map(Limit::Finite)],
        )
            .prop_map(|(g, flags, p, q)| {
                let s: VertexSet = flags
                    .iter()
                    .enumerate()
                    .filter_map(|(v, &b)| b.then_some(v))
                    .collect();
                (g, s, SpreadParams::new(p, q).unwrap())
            })
    })
}

fn arb_class_instance() -> impl Strategy<Value = Graph> {
    (0..common::RANDOM_PROFILES.len(), any::<u16>()).prop_map(|(idx, seed)| {
        let (t, d) = common::RANDOM_PROFILES[idx];
        families::random_claw_free_cubic(t, d, seed as u64)
            .expect("profile is feasible")
            .graph
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn closure_is_extensive_and_idempotent((g, s, params) in arb_scenario()) {
        let once = spreading::closure(&g, &s, params).unwrap().blue;
        prop_assert!(s.is_subset_of(&once));
        let twice = spreading::closure(&g, &once, params).unwrap().blue;
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn closure_is_monotone_in_the_seed((g, s, params) in arb_scenario(), drop_flags in proptest::collection::vec(any::<bool>(), 10)) {
        // build a subset of s by dropping some members
        let smaller: VertexSet = s
            .iter()
            .enumerate()
            .filter_map(|(i, v)| (!drop_flags[i % drop_flags.len()]).then_some(v))
            .collect();
        let big = spreading::closure(&g, &s, params).unwrap().blue;
        let small = spreading::closure(&g, &smaller, params).unwrap().blue;
        prop_assert!(small.is_subset_of(&big));
    }

    #[test]
    fn closure_is_confluent((g, s, params) in arb_scenario(), seed in any::<u64>()) {
        let sequential = spreading::closure(&g, &s, params).unwrap().blue;
        let (synchronous, _) = spreading::closure_rounds(&g, &s, params).unwrap();
        prop_assert_eq!(&sequential, &synchronous);
        for round in 0..100u64 {
            let random_order = closure_random_order(&g, &s, params, seed.wrapping_add(round));
            prop_assert_eq!(&sequential, &random_order);
        }
        prop_assert_eq!(
            spreading::is_spreading_set(&g, &s, params),
            sequential.len() == g.n()
        );
    }

    #[test]
    fn closure_grows_when_parameters_relax((g, s, params) in arb_scenario()) {
        let base = spreading::closure(&g, &s, params).unwrap().blue;
        if let Limit::Finite(q) = params.q {
            for relaxed_q in [Limit::Finite(q + 1), Limit::Infinite] {
                let relaxed = SpreadParams::new(params.p, relaxed_q).unwrap();
                let bigger = spreading::closure(&g, &s, relaxed).unwrap().blue;
                prop_assert!(base.is_subset_of(&bigger));
            }
        }
        if params.p >= 2 {
            let relaxed = SpreadParams::new(params.p - 1, params.q).unwrap();
            let bigger = spreading::closure(&g, &s, relaxed).unwrap().blue;
            prop_assert!(base.is_subset_of(&bigger));
        }
    }

    #[test]
    fn trace_replays_step_by_step((g, s, params) in arb_scenario()) {
        let result = spreading::closure(&g, &s, params).unwrap();
        let mut blue = s.clone();
        for step in &result.trace.steps {
            let check = spreading::eligible(&g, &blue, params, step.vertex)
                .unwrap()
                .expect("recorded step must be eligible at replay time");
            prop_assert_eq!(check, *step);
            blue.insert(step.vertex);
        }
        prop_assert_eq!(blue, result.blue);
    }

    #[test]
    fn edge_list_round_trips(g in arb_graph(12)) {
        // trailing isolated vertices are not representable in the format
        let n_named = g
            .edges()
            .iter()
            .map(|&(u, v)| u.max(v) + 1)
            .max()
            .unwrap_or(0);
        let parsed = Graph::parse_edge_list(&g.to_edge_list()).unwrap();
        prop_assert_eq!(parsed.n(), n_named);
        prop_assert_eq!(parsed.edges(), g.edges());
    }

    #[test]
    fn claw_free_matches_brute_force(g in arb_graph(12)) {
        let n = g.n();
        let mut brute = true;
        'outer: for a in 0..n {
            for b in (a + 1)..n {
                for c in (b + 1)..n {
                    for d in (c + 1)..n {
                        let four = [a, b, c, d];
                        for &center in &four {
                            let leaves: Vec<usize> =
                                four.iter().copied().filter(|&v| v != center).collect();
                            let star = leaves.iter().all(|&v| g.has_edge(center, v));
                            let independent = !g.has_edge(leaves[0], leaves[1])
                                && !g.has_edge(leaves[0], leaves[2])
                                && !g.has_edge(leaves[1], leaves[2]);
                            if star && independent {
                                brute = false;
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
        prop_assert_eq!(g.is_claw_free(), brute);
    }

    #[test]
    fn delete_vertices_removes_exactly_the_set(
        g in arb_graph(12),
        flags in proptest::collection::vec(any::<bool>(), 12),
    ) {
        let doomed: VertexSet = (0..g.n()).filter(|&v| flags[v]).collect();
        let (rest, map) = g.delete_vertices(&doomed).unwrap();
        prop_assert_eq!(rest.n(), g.n() - doomed.len());
        let surviving = g
            .edges()
            .iter()
            .filter(|&&(u, v)| !doomed.contains(u) && !doomed.contains(v))
            .count();
        prop_assert_eq!(rest.m(), surviving);
        for (old, slot) in map.iter().enumerate() {
            prop_assert_eq!(slot.is_none(), doomed.contains(old));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn partition_covers_with_correct_kinds(g in arb_class_instance()) {
        let part = decomposition::delta_d_partition(&g).unwrap();
        let mut seen = vec![0usize; g.n()];
        let mut triangles = 0;
        let mut diamonds = 0;
        for unit in &part.units {
            for v in unit.vertices.iter() {
                seen[v] += 1;
            }
            match unit.kind {
                UnitKind::Triangle => {
                    triangles += 1;
                    prop_assert_eq!(unit.vertices.len(), 3);
                    let vs: Vec<usize> = unit.vertices.iter().collect();
                    for i in 0..3 {
                        for j in (i + 1)..3 {
                            prop_assert!(g.has_edge(vs[i], vs[j]));
                        }
                    }
                }
                UnitKind::Diamond => {
                    diamonds += 1;
                    prop_assert_eq!(unit.vertices.len(), 4);
                    let dom: Vec<usize> = unit.dominating.iter().collect();
                    prop_assert_eq!(dom.len(), 2);
                    for &d in &dom {
                        for v in unit.vertices.iter() {
                            prop_assert!(v == d || g.has_edge(d, v));
                        }
                    }
                    let missing: Vec<usize> =
                        unit.vertices.difference(&unit.dominating).iter().collect();
                    prop_assert!(!g.has_edge(missing[0], missing[1]));
                }
            }
        }
        prop_assert!(seen.iter().all(|&c| c == 1));
        prop_assert_eq!(g.n(), 3 * triangles + 4 * diamonds);
    }

    #[test]
    fn partition_is_relabeling_invariant(g in arb_class_instance(), seed in any::<u64>()) {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in (1..n).rev() {
            let j = (rng.next_u64() % (i as u64 + 1)) as usize;
            perm.swap(i, j);
        }
        let relabeled_edges: Vec<(usize, usize)> = g
            .edges()
            .into_iter()
            .map(|(u, v)| (perm[u], perm[v]))
            .collect();
        let h = Graph::new(n, &relabeled_edges).unwrap();

        let part_g = decomposition::delta_d_partition(&g).unwrap();
        let part_h = decomposition::delta_d_partition(&h).unwrap();
        let mut mapped: Vec<VertexSet> = part_g
            .units
            .iter()
            .map(|u| u.vertices.iter().map(|v| perm[v]).collect())
            .collect();
        mapped.sort();
        let mut actual: Vec<VertexSet> = part_h.units.iter().map(|u| u.vertices.clone()).collect();
        actual.sort();
        prop_assert_eq!(mapped, actual);
    }

    #[test]
    fn generator_recovers_requested_units(
        idx in 0..common::RANDOM_PROFILES.len(),
        seed in any::<u16>(),
    ) {
        let (t, d) = common::RANDOM_PROFILES[idx];
        let g = families::random_claw_free_cubic(t, d, seed as u64)
            .unwrap()
            .graph;
        prop_assert!(g.is_cubic());
        prop_assert!(g.is_claw_free());
        prop_assert!(g.is_connected());
        let part = decomposition::delta_d_partition(&g).unwrap();
        prop_assert_eq!(part.triangle_unit_count(), t);
        prop_assert_eq!(part.diamond_unit_count(), d);
    }

    #[test]
    fn units_block_two_percolation_and_edges_block_three(g in arb_class_instance()) {
        let part = decomposition::delta_d_partition(&g).unwrap();
        let everything = VertexSet::full(g.n());
        for unit in &part.units {
            let s = everything.difference(&unit.vertices);
            prop_assert!(!spreading::is_spreading_set(
                &g,
                &s,
                SpreadParams::percolation(2).unwrap()
            ));
        }
        for (u, v) in g.edges() {
            let mut s = everything.clone();
            s.remove(u);
            s.remove(v);
            prop_assert!(!spreading::is_spreading_set(
                &g,
                &s,
                SpreadParams::percolation(3).unwrap()
            ));
        }
    }

    #[test]
    fn cubic_closures_ignore_q_above_degree(g in arb_class_instance(), flags in proptest::collection::vec(any::<bool>(), 26)) {
        let s: VertexSet = (0..g.n()).filter(|&v| flags[v % flags.len()]).collect();
        for p in 1..=3 {
            let reference = spreading::closure(&g, &s, SpreadParams::finite(p, 3).unwrap())
                .unwrap()
                .blue;
            for q in [Limit::Finite(4), Limit::Infinite] {
                let other = spreading::closure(&g, &s, SpreadParams::new(p, q).unwrap())
                    .unwrap()
                    .blue;
                prop_assert_eq!(&reference, &other);
            }
        }
    }

    #[test]
    fn special_triangle_unit_always_found_outside_necklaces(g in arb_class_instance()) {
        let part = decomposition::delta_d_partition(&g).unwrap();
        if part.triangle_unit_count() == 0 {
            return Ok(());
        }
        let t1 = decomposition::find_special_triangle_unit(&g, &part).unwrap();
        let (rest, _) = g.delete_vertices(&part.units[t1].vertices).unwrap();
        prop_assert!(rest.connected_components().len() <= 2);
        let plan = decomposition::partner_unit_for_start(&g, &part, t1).unwrap();
        prop_assert!(part.units[plan.triangle_unit].vertices.contains(plan.start_vertex));
        prop_assert!(part.units[plan.partner_unit].vertices.contains(plan.partner_seed));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn solver_respects_parameter_monotonicity(g in arb_graph(8)) {
        if g.n() == 0 {
            return Ok(());
        }
        let opts = SolveOptions::default();
        let value = |p: usize, q: Limit| {
            solver::sigma_exact(&g, SpreadParams::new(p, q).unwrap(), &opts)
                .unwrap()
                .exact()
                .unwrap()
                .value
        };
        for p in 2..=3 {
            for q in 1..=2 {
                prop_assert!(value(p, Limit::Finite(q)) >= value(p, Limit::Finite(q + 1)));
                prop_assert!(value(p, Limit::Finite(q)) >= value(p - 1, Limit::Finite(q)));
            }
            prop_assert!(value(p, Limit::Finite(3)) >= value(p, Limit::Infinite));
        }
    }
}
