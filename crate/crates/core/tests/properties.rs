mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use oddimm::certificate::{clique_edges, verify_certificate, Parity};
use oddimm::corpus::{random_connected_multigraph, random_multigraph};
use oddimm::driver::{color, decompose, is_bipartite_edge_set, maximal_bipartite, DecomposeOptions, DecompositionResult};
use oddimm::ep::{brute_force_has_odd_x_circuit, odd_x_circuits, x_block_is_bipartite, EPOutcome};
use oddimm::graph::io::{parse_edge_list, write_edge_list};
use oddimm::graph::Multigraph;
use oddimm::profile::ConstantsProfile;
use oddimm::search::{test_immersion, ExhaustiveOracle, OracleQuery, SearchOutcome};
use oddimm::split::replay_split_offs;
use oddimm::transform::{bounded_orientation, disentangle, max_in_out, trichotomy_holds};

fn graph(seed: u64, max_n: usize, max_extra: usize) -> Multigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 1 + (seed as usize % max_n);
    let extra = (seed as usize / 7) % (max_extra + 1);
    random_connected_multigraph(&mut rng, n, extra, 0.1)
}

fn parity_of(i: u8) -> Parity {
    [Parity::Any, Parity::Odd, Parity::Even][i as usize % 3]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_list_round_trips(seed in any::<u64>()) {
        let g = graph(seed, 8, 10);
        let text = write_edge_list(&g);
        let h = parse_edge_list(&text).unwrap();
        prop_assert_eq!(write_edge_list(&h), text);
        prop_assert_eq!(h.edge_count(), g.edge_count());
    }

    #[test]
    fn found_certificates_verify_and_replay(seed in any::<u64>(), t in 2usize..=4, p in 0u8..3) {
        let g = graph(seed, 6, 8);
        let parity = parity_of(p);
        if let SearchOutcome::Found(cert) = test_immersion(&OracleQuery::new(&g, t, parity)) {
            prop_assert!(verify_certificate(&g, &cert).unwrap().is_pass());
            prop_assert_eq!(cert.parity, parity);
            let (h, ids) = replay_split_offs(&g, &cert).unwrap();
            for ((i, j), id) in clique_edges(t).into_iter().zip(ids) {
                let e = h.edge(id).unwrap();
                let (a, b) = (cert.branch_vertices[i], cert.branch_vertices[j]);
                prop_assert_eq!(e.key(), (a.min(b), a.max(b)));
            }
        }
    }

    #[test]
    fn orientation_is_balanced(t in 1usize..=40) {
        let arcs = bounded_orientation(t);
        prop_assert_eq!(arcs.len(), t * (t - 1) / 2);
        let keys: BTreeSet<(usize, usize)> = arcs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        prop_assert_eq!(keys, clique_edges(t).into_iter().collect::<BTreeSet<_>>());
        let (i, o) = max_in_out(t, &arcs);
        prop_assert!(i <= t.div_ceil(2) && o <= t.div_ceil(2));
    }

    #[test]
    fn disentangle_contract(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, cert, c) = common::entangled_instance(&mut rng, 20);
        let full = cert.pattern_t;
        let out = disentangle(&g, &cert, &c, full).unwrap();
        prop_assert_eq!(out.collection.len(), c.len());
        prop_assert!(out.collection.validate(&g).is_ok());
        for tr in &cert.trails {
            prop_assert!(trichotomy_holds(&g, tr, &out.collection, full));
        }
        prop_assert!(out.potentials.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn ep_circuits_dichotomy(seed in any::<u64>(), k in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 1 + (seed as usize % 6);
        let g = random_multigraph(&mut rng, n, (seed as usize / 11) % 11, 0.15);
        match odd_x_circuits(&g, 0, k).unwrap() {
            EPOutcome::Packing { objects } => {
                prop_assert_eq!(objects.len(), k);
                let mut seen = BTreeSet::new();
                for c in &objects {
                    prop_assert!(c.validate(&g).is_ok() && c.is_odd());
                    prop_assert_eq!(c.ends(&g).unwrap(), (0, 0));
                    prop_assert!(c.edge_ids().all(|e| seen.insert(e)));
                }
            }
            EPOutcome::Cover { hitting_set } => {
                prop_assert!(hitting_set.len() <= 2 * k - 2);
                prop_assert!(!brute_force_has_odd_x_circuit(&g.without_edges(&hitting_set), 0));
                prop_assert!(x_block_is_bipartite(&g, 0, &hitting_set));
            }
        }
    }

    #[test]
    fn maximal_bipartite_is_bipartite_and_maximal(seed in any::<u64>()) {
        let g = graph(seed, 8, 12);
        let f = maximal_bipartite(&g);
        prop_assert!(is_bipartite_edge_set(&g, &f));
        for e in g.edge_ids().filter(|e| !f.contains(e)) {
            let mut more = f.clone();
            more.insert(e);
            prop_assert!(!is_bipartite_edge_set(&g, &more));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decompose_then_color(seed in any::<u64>(), t in 3usize..=4) {
        let g = graph(seed, 8, 8);
        let result = decompose(&g, t, &ConstantsProfile::desk(), &DecomposeOptions::default(), &mut ExhaustiveOracle::default());
        match result {
            Ok(r @ DecompositionResult::Split { .. }) => {
                let DecompositionResult::Split { f, sizes, .. } = &r else { unreachable!() };
                prop_assert!(is_bipartite_edge_set(&g, f));
                prop_assert!(sizes.windows(2).all(|w| w[1] > w[0]));
                let c = color(&g, &r).unwrap();
                prop_assert!(c.is_proper(&g));
                prop_assert!(c.count <= 2 * (c.degeneracy + 1));
            }
            Ok(DecompositionResult::TotallyOddWitness { certificate }) => {
                prop_assert!(verify_certificate(&g, &certificate).unwrap().is_pass());
                prop_assert_eq!(certificate.parity, Parity::Odd);
            }
            Err(e) => prop_assert!(false, "decompose failed: {e}"),
        }
    }
}
