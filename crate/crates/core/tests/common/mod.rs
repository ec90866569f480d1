//! Strategies and properties shared by the property suite and the acceptance runner.
#![allow(dead_code)]

use std::path::PathBuf;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use subshift_core::lang::{is_locally_admissible, resolution_distance, window_language};
use subshift_core::one_dim::{build_graph, find_middle_cycle, spec_from_graph, subsystem_lattice};
use subshift_core::{parse_spec, serialize_spec, Coord, Pattern, ShiftSpec, Symbol, Window};

pub const CASES: u32 = 128;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn load(name: &str) -> ShiftSpec {
    parse_spec(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

pub fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    })
}

pub fn word_spec(alphabet: usize, words: &[Vec<Symbol>]) -> ShiftSpec {
    let refs: Vec<&[Symbol]> = words.iter().map(Vec::as_slice).collect();
    ShiftSpec::forbid_words((0..alphabet as Symbol).collect(), &refs).unwrap()
}

/// 1D specs on 2 or 3 letters with up to three forbidden words of length 1..=3.
pub fn spec_1d() -> impl Strategy<Value = ShiftSpec> {
    (2usize..=3).prop_flat_map(|a| {
        prop::collection::vec(prop::collection::vec(0..a as Symbol, 1..=3), 0..=3)
            .prop_map(move |words| word_spec(a, &words))
    })
}

/// 1D specs on {0, 1} with forbidden words of length 2..=4.
pub fn binary_spec() -> impl Strategy<Value = ShiftSpec> {
    prop::collection::vec(prop::collection::vec(0..2 as Symbol, 2..=4), 0..=2).prop_map(|w| word_spec(2, &w))
}

fn pattern_in(dim: usize, extent: i64, symbols: Symbol) -> impl Strategy<Value = Pattern> {
    prop::collection::btree_map(prop::collection::vec(0..extent, dim), 0..symbols, 1..=4)
        .prop_map(move |cells| Pattern::from_cells(dim, cells.into_iter().map(|(c, s)| (Coord::new(c), s))).unwrap())
}

/// Specs in dimension 1 or 2 with forbidden patterns on small supports.
pub fn spec_any() -> impl Strategy<Value = ShiftSpec> {
    (1usize..=2, 2 as Symbol..=3).prop_flat_map(|(dim, a)| {
        prop::collection::vec(pattern_in(dim, 3, a), 0..=3)
            .prop_map(move |ps| ShiftSpec::new(dim, (0..a).collect(), ps).unwrap())
    })
}

pub fn pattern_and_shift() -> impl Strategy<Value = (Pattern, Vec<i64>)> {
    (1usize..=3).prop_flat_map(|dim| {
        (
            pattern_in(dim, 4, 4),
            prop::collection::vec(-20i64..20, dim),
        )
    })
}

/// Edge lists without middle cycles: source cycles feeding sink cycles,
/// possibly through fresh transient vertices.
pub fn nmc_graph() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (
        prop::collection::vec(1usize..=2, 1..=2),
        prop::collection::vec(1usize..=2, 0..=2),
        prop::collection::vec((0usize..2, 0usize..2, 0usize..=1), 0..=3),
    )
        .prop_map(|(sources, sinks, links)| {
            let mut edges = Vec::new();
            let mut next = 0;
            let mut cycles = Vec::new();
            for len in sources.iter().chain(&sinks) {
                let vs: Vec<usize> = (next..next + len).collect();
                for k in 0..*len {
                    edges.push((vs[k], vs[(k + 1) % len]));
                }
                next += len;
                cycles.push(vs);
            }
            let n_src = sources.len();
            if !sinks.is_empty() {
                for (s, t, mid) in links {
                    let from = cycles[s % n_src][0];
                    let to = cycles[n_src + t % sinks.len()][0];
                    let mut prev = from;
                    for _ in 0..mid {
                        edges.push((prev, next));
                        prev = next;
                        next += 1;
                    }
                    edges.push((prev, to));
                }
            }
            (next, edges)
        })
}

pub fn prop_translation_round_trip((p, u): &(Pattern, Vec<i64>)) -> Result<(), TestCaseError> {
    let u = Coord::new(u.clone());
    let moved = p.translate(&u).unwrap();
    prop_assert_eq!(&moved.translate(&u.neg()).unwrap(), p);
    prop_assert_eq!(moved.canonical(), p.canonical());
    Ok(())
}

pub fn prop_margin_monotone((spec, w, m): &(ShiftSpec, Vec<Symbol>, u32)) -> Result<(), TestCaseError> {
    let p = Pattern::word(w);
    if is_locally_admissible(spec, &p, m + 1).unwrap() {
        prop_assert!(is_locally_admissible(spec, &p, *m).unwrap());
    }
    Ok(())
}

pub fn prop_subpattern_closure((spec, n, m): &(ShiftSpec, u32, u32)) -> Result<(), TestCaseError> {
    let big = window_language(spec, &Window::centered(1, *n), *m).unwrap();
    let inner = Window::centered(1, n - 1);
    let small = window_language(spec, &inner, *m).unwrap();
    let cells = inner.cells();
    for p in big.patterns() {
        prop_assert!(small.contains(&p.restrict(cells.iter())));
    }
    Ok(())
}

pub fn prop_ultrametric((a, b, c): &(ShiftSpec, ShiftSpec, ShiftSpec)) -> Result<(), TestCaseError> {
    let d = |x: &ShiftSpec, y: &ShiftSpec| resolution_distance(x, y, 3, 1).unwrap().value();
    prop_assert!(d(a, c) <= d(a, b).max(d(b, c)));
    prop_assert_eq!(d(a, b), d(b, a));
    Ok(())
}

pub fn prop_lattice_union_closed((v, edges): &(usize, Vec<(usize, usize)>)) -> Result<(), TestCaseError> {
    let g = build_graph(&spec_from_graph(*v, edges).unwrap(), 1).unwrap();
    prop_assert!(find_middle_cycle(&g).is_none());
    let lat = subsystem_lattice(&g).unwrap();
    prop_assert!(lat.contains(&lat.top()));
    for a in lat.elements() {
        for b in lat.elements() {
            let u = a.union(b).copied().collect();
            prop_assert!(lat.contains(&u));
        }
    }
    Ok(())
}

pub fn prop_serialize_idempotent(spec: &ShiftSpec) -> Result<(), TestCaseError> {
    let text = serialize_spec(spec);
    let back = parse_spec(&text).unwrap();
    prop_assert_eq!(&back, spec);
    prop_assert_eq!(serialize_spec(&back), text);
    Ok(())
}

pub fn margin_input() -> impl Strategy<Value = (ShiftSpec, Vec<Symbol>, u32)> {
    (spec_1d(), prop::collection::vec(0..2 as Symbol, 1..=5), 0u32..=2)
}

pub fn closure_input() -> impl Strategy<Value = (ShiftSpec, u32, u32)> {
    (spec_1d(), 1u32..=3, 0u32..=2)
}

pub fn ultrametric_input() -> impl Strategy<Value = (ShiftSpec, ShiftSpec, ShiftSpec)> {
    (binary_spec(), binary_spec(), binary_spec())
}

/// Runs the six property suites; `(name, outcome)` per suite.
pub fn run_property_suites() -> Vec<(&'static str, Result<(), String>)> {
    fn go<S: Strategy>(s: S, f: impl Fn(&S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
    where
        S::Value: std::fmt::Debug,
    {
        runner().run(&s, |v| f(&v)).map_err(|e| e.to_string())
    }
    vec![
        ("translation round-trip", go(pattern_and_shift(), prop_translation_round_trip)),
        ("margin monotonicity", go(margin_input(), prop_margin_monotone)),
        ("sub-pattern closure", go(closure_input(), prop_subpattern_closure)),
        ("ultrametric inequality", go(ultrametric_input(), prop_ultrametric)),
        ("lattice union-closure", go(nmc_graph(), prop_lattice_union_closed)),
        ("serialize/parse idempotence", go(spec_any(), prop_serialize_idempotent)),
    ]
}
