mod common;

use oddimm::certificate::{verify_certificate, Parity};
use oddimm::corpus::small_connected_multigraphs;
use oddimm::graph::Multigraph;
use oddimm::search::{test_immersion, OracleQuery, SearchOutcome};

use common::naive_immersion;

const PARITIES: [Parity; 3] = [Parity::Any, Parity::Odd, Parity::Even];

fn search(g: &Multigraph, t: usize, parity: Parity) -> bool {
    match test_immersion(&OracleQuery::new(g, t, parity)) {
        SearchOutcome::Found(cert) => {
            assert!(verify_certificate(g, &cert).unwrap().is_pass());
            assert_eq!(cert.parity, parity);
            true
        }
        SearchOutcome::NotFound => false,
        SearchOutcome::BudgetExhausted => panic!("budget exhausted on a tiny graph"),
    }
}

#[test]
fn agrees_with_naive_on_tiny_corpus() {
    for g in small_connected_multigraphs(4, 6) {
        for t in [2, 3, 4] {
            for p in PARITIES {
                assert_eq!(search(&g, t, p), naive_immersion(&g, t, p), "t={t} {p:?} on {:?}", g.edges().collect::<Vec<_>>());
            }
        }
    }
}

/// (graph, t, [any, odd, even]) computed by the naive enumerator.
fn frozen() -> Vec<(&'static str, Multigraph, usize, [bool; 3])> {
    let theta = Multigraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]);
    let looped_c4 = Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 0)]);
    vec![
        ("K4", Multigraph::complete(4), 4, [true, true, false]),
        ("K4", Multigraph::complete(4), 3, [true, true, false]),
        ("C4", Multigraph::cycle(4), 3, [true, false, false]),
        ("C5", Multigraph::cycle(5), 3, [true, true, false]),
        ("theta", theta, 2, [true, true, false]),
        ("looped C4", looped_c4, 3, [true, true, false]),
        ("K5", Multigraph::complete(5), 5, [true, true, false]),
        ("Petersen", Multigraph::petersen(), 4, [true, true, true]),
    ]
}

#[test]
fn frozen_small_answers() {
    for (name, g, t, expected) in frozen() {
        for (p, want) in PARITIES.into_iter().zip(expected) {
            assert_eq!(naive_immersion(&g, t, p), want, "naive {name} t={t} {p:?}");
            assert_eq!(search(&g, t, p), want, "search {name} t={t} {p:?}");
        }
    }
}

