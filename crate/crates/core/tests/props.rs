//! Property tests for the representation layer and width machinery.

mod common;

use std::collections::HashSet;

use proptest::prelude::*;
use vpg_core::{
    build_intersection_index, connected_components, cut_max_induced_matching, cut_max_matching,
    gen_random_vpg, induced_subrepresentation, intersection_graph, parse_representation,
    refine_grid, serialize_representation, BitSet, Cut, Graph, GridRep, MimBudget,
    RandomVpgParams,
};

fn arb_rep() -> impl Strategy<Value = GridRep> {
    (1usize..14, 0u32..3, 1i64..4, 1u32..4, 3i64..10, any::<u64>()).prop_map(
        |(n, bends, c, t, cols, seed)| {
            let mut params = RandomVpgParams {
                n,
                max_bends: bends,
                max_horizontal: c,
                max_edge_load: t,
                target_columns: cols,
                seed,
            };
            loop {
                match gen_random_vpg(&params) {
                    Ok(rep) => return rep,
                    Err(_) => params.seed = params.seed.wrapping_add(1),
                }
            }
        },
    )
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (2usize..12, any::<u64>()).prop_map(|(n, seed)| {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.gen_bool(0.35) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_indexed_edges(n, &edges)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// serialize then parse is the identity on in-memory values, and
    /// serializing the reparsed value is byte-identical.
    #[test]
    fn roundtrip_is_identity(rep in arb_rep()) {
        let text = serialize_representation(&rep);
        let parsed = parse_representation(&text).expect("canonical text parses");
        prop_assert_eq!(&parsed, &rep);
        prop_assert_eq!(serialize_representation(&parsed), text);
    }

    /// Grid refinement never changes the intersection graph.
    #[test]
    fn refinement_preserves_graph(rep in arb_rep()) {
        let refined = refine_grid(&rep);
        prop_assert!(common::graphs_equal(
            &intersection_graph(&rep),
            &intersection_graph(&refined)
        ));
        for p in rep.paths() {
            prop_assert_eq!(p.length() * 2, refined.path(p.id()).unwrap().length());
        }
    }

    /// Taking an induced sub-representation commutes with graph extraction.
    #[test]
    fn induced_commutes_with_extraction(rep in arb_rep(), mask in any::<u64>()) {
        let ids: Vec<String> = rep.ids().map(|s| s.to_string()).collect();
        let keep: HashSet<String> = ids
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> (i % 64) & 1 == 1)
            .map(|(_, id)| id.clone())
            .collect();
        let sub = induced_subrepresentation(&rep, &keep).expect("known ids");
        let g = intersection_graph(&rep);
        let keep_idx = BitSet::from_indices(
            g.len(),
            keep.iter().map(|id| g.index_of(id).unwrap()),
        );
        prop_assert!(common::graphs_equal(
            &intersection_graph(&sub),
            &g.induced(&keep_idx)
        ));
    }

    /// The pairwise intersection index is symmetric in existence and agrees
    /// with brute-force trace comparison.
    #[test]
    fn intersection_index_matches_traces(rep in arb_rep()) {
        let index = build_intersection_index(&rep);
        let paths: Vec<_> = rep.paths().collect();
        for a in &paths {
            let trace_a: HashSet<_> = a.trace().into_iter().collect();
            for b in &paths {
                if a.id() == b.id() {
                    continue;
                }
                let shares = b.trace().iter().any(|q| trace_a.contains(q));
                prop_assert_eq!(index.intersects(a.id(), b.id()), shares);
                prop_assert_eq!(index.intersects(b.id(), a.id()), shares);
            }
        }
    }

    /// mim <= mm on every cut; both agree with exhaustive search when small.
    #[test]
    fn cut_mim_at_most_mm(g in arb_graph(), mask in any::<u64>()) {
        let side = BitSet::from_indices(
            g.len(),
            (0..g.len()).filter(|i| mask >> (i % 64) & 1 == 1),
        );
        let cut = Cut::new(side);
        let mm = cut_max_matching(&g, &cut);
        let budget = MimBudget { max_crossing_edges: 128 };
        let mim = cut_max_induced_matching(&g, &cut, &budget).unwrap();
        prop_assert!(mim <= mm);
        if cut.crossing_edges(&g).len() <= 12 {
            prop_assert_eq!(mim, common::brute_induced_matching(&g, cut.side_a()));
        }
    }

    /// Adding a crossing edge never decreases the cut matching size.
    #[test]
    fn matching_monotone_under_edges(g in arb_graph(), mask in any::<u64>(), extra in any::<u64>()) {
        let n = g.len();
        let side = BitSet::from_indices(n, (0..n).filter(|i| mask >> (i % 64) & 1 == 1));
        let cut = Cut::new(side);
        let before = cut_max_matching(&g, &cut);
        // add one absent crossing edge, if any
        let u = (extra % n as u64) as usize;
        let v = ((extra >> 8) % n as u64) as usize;
        if u != v && cut.side_a().contains(u) != cut.side_a().contains(v) && !g.adjacent(u, v) {
            let mut pairs = g.edges().to_vec();
            pairs.push((u.min(v), u.max(v)));
            let bigger = Graph::new(g.ids().to_vec(), &pairs);
            prop_assert!(cut_max_matching(&bigger, &cut) >= before);
        }
    }

    /// Components partition the vertex set with no crossing edges, matching
    /// an independent BFS labeling.
    #[test]
    fn components_agree_with_bfs(g in arb_graph()) {
        let comps = connected_components(&g);
        let mut seen = vec![false; g.len()];
        for comp in &comps {
            for &v in comp {
                prop_assert!(!seen[v]);
                seen[v] = true;
            }
        }
        prop_assert!(seen.into_iter().all(|b| b));
        // BFS oracle: same-component iff reachable
        let reach = |start: usize| -> HashSet<usize> {
            let mut out: HashSet<usize> = HashSet::from([start]);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for u in g.neighbors(v).iter() {
                    if out.insert(u) {
                        stack.push(u);
                    }
                }
            }
            out
        };
        for comp in &comps {
            let r = reach(comp[0]);
            let set: HashSet<usize> = comp.iter().copied().collect();
            prop_assert_eq!(r, set);
        }
    }

    /// Grid-edge load agrees with a recount over expanded traces.
    #[test]
    fn edge_load_matches_recount(rep in arb_rep()) {
        let load = vpg_core::grid_edge_load(&rep);
        let mut recount: std::collections::BTreeMap<vpg_core::GridEdge, u32> = Default::default();
        for p in rep.paths() {
            let trace = p.trace();
            let mut seen = HashSet::new();
            for w in trace.windows(2) {
                let e = vpg_core::GridEdge::new(w[0], w[1]);
                if seen.insert(e) {
                    *recount.entry(e).or_insert(0) += 1;
                }
            }
        }
        prop_assert_eq!(load.per_edge, recount);
    }
}
