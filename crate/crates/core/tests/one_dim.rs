mod common;

use std::collections::BTreeSet;

use common::{load, nmc_graph, CASES};
use proptest::prelude::*;
use subshift_core::one_dim::{
    build_graph, find_middle_cycle, has_nmc_property, is_transitive, maximal_subsystems, maximality_type,
    spec_from_graph, star_check, subsystem_lattice, Graph1D, NmcVerdict,
};
use subshift_core::{isolated_verdict_1d, IsolationVerdict};

fn simple_cycles(v: usize, edges: &BTreeSet<(usize, usize)>) -> Vec<Vec<usize>> {
    fn walk(start: usize, path: &mut Vec<usize>, v: usize, edges: &BTreeSet<(usize, usize)>, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        for w in 0..v {
            if !edges.contains(&(last, w)) {
                continue;
            }
            if w == start {
                out.push(path.clone());
            } else if w > start && !path.contains(&w) {
                path.push(w);
                walk(start, path, v, edges, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..v {
        walk(s, &mut vec![s], v, edges, &mut out);
    }
    out
}

/// Some simple cycle has an edge in from outside and an edge out to outside.
fn has_middle_cycle_brute(g: &Graph1D) -> bool {
    let v = g.vertices().len();
    let edges: BTreeSet<(usize, usize)> = g.edges().iter().copied().collect();
    simple_cycles(v, &edges).iter().any(|c| {
        let on: BTreeSet<usize> = c.iter().copied().collect();
        edges.iter().any(|(a, b)| !on.contains(a) && on.contains(b))
            && edges.iter().any(|(a, b)| on.contains(a) && !on.contains(b))
    })
}

fn small_graph() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..=8).prop_flat_map(|v| (Just(v), prop::collection::vec((0..v, 0..v), 0..=14)))
}

fn labelled(v: usize, edges: Vec<(usize, usize)>) -> Graph1D {
    Graph1D::from_edges(1, (0..v as i64).map(|i| vec![i]).collect(), edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES * 2))]

    #[test]
    fn middle_cycle_matches_cycle_enumeration((v, edges) in small_graph()) {
        let g = labelled(v, edges);
        let found = find_middle_cycle(&g);
        prop_assert_eq!(found.is_some(), has_middle_cycle_brute(&g));
        if let Some(c) = found {
            prop_assert!(c.validate(&g));
        }
    }

    #[test]
    fn lattice_is_refused_exactly_with_a_middle_cycle((v, edges) in small_graph()) {
        let g = labelled(v, edges);
        prop_assert_eq!(subsystem_lattice(&g).is_ok(), find_middle_cycle(&g).is_none());
    }

    #[test]
    fn generated_graphs_satisfy_star((v, edges) in nmc_graph()) {
        let g = build_graph(&spec_from_graph(v, &edges).unwrap(), 1).unwrap();
        let lat = subsystem_lattice(&g).unwrap();
        prop_assert!(star_check(&lat).holds());
        for m in maximal_subsystems(&lat) {
            prop_assert!(m != lat.top());
            prop_assert!(lat.contains(&m));
        }
    }
}

#[test]
fn trimmed_graph_keeps_only_essential_vertices() {
    let g = labelled(4, vec![(0, 1), (1, 1), (2, 3)]);
    assert_eq!(g.vertices(), &[vec![1]]);
    assert_eq!(g.edges(), &[(0, 0)]);
}

#[test]
fn golden_mean_is_not_isolated_at_every_word_length() {
    let spec = load("goldenmean.shift");
    for n in 1..=5 {
        let g = build_graph(&spec, n).unwrap();
        let c = find_middle_cycle(&g).expect("golden mean graph has a middle cycle");
        assert!(c.validate(&g));
    }
    assert!(matches!(has_nmc_property(&spec, 5).unwrap(), NmcVerdict::Persists { .. }));
}

#[test]
fn forbid_10_lattice() {
    let spec = load("forbid10.shift");
    let v = isolated_verdict_1d(&spec, 6).unwrap();
    let IsolationVerdict::Isolated { nmc_from } = v else { panic!("{v}") };
    let g = build_graph(&spec, nmc_from).unwrap();
    let lat = subsystem_lattice(&g).unwrap();
    // {0^inf}, {1^inf}, their union, the whole shift
    assert_eq!(lat.len(), 4);
    assert_eq!(maximality_type(&lat), 1);
    assert!(is_transitive(&g).holds());
}

#[test]
fn two_loops_have_type_two_and_are_not_transitive() {
    let spec = load("twoloops.shift");
    let g = build_graph(&spec, 1).unwrap();
    let lat = subsystem_lattice(&g).unwrap();
    assert_eq!(lat.len(), 3);
    assert_eq!(maximality_type(&lat), 2);
    assert!(!is_transitive(&g).holds());
}

#[test]
fn single_cycle_is_minimal() {
    let g = build_graph(&spec_from_graph(3, &[(0, 1), (1, 2), (2, 0)]).unwrap(), 1).unwrap();
    let lat = subsystem_lattice(&g).unwrap();
    assert_eq!(lat.len(), 1);
    assert!(lat.is_minimal(&lat.top()));
    assert_eq!(maximality_type(&lat), 0);
}
