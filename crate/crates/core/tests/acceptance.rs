//! One PASS/FAIL line per acceptance criterion; exits nonzero on any failure.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::{fixture, load, nmc_graph, run_property_suites};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

use subshift_core::lang::check_convergence;
use subshift_core::one_dim::{
    build_graph, is_transitive, maximal_subsystems, maximality_decomposition, maximality_type,
    spec_from_graph, subsystem_lattice, Graph1D, IsolationVerdict,
};
use subshift_core::robinson::{check_local_rules, locate_structure, supertile, supertile_side, Quadrant};
use subshift_core::space::{cb_ladder, derived_set, forbid_run, load_family};
use subshift_core::times23::{squares_with_corners, verify_diagonal_determinism, X0Square};
use subshift_core::{isolated_verdict_1d, resolution_distance, ShiftSpec, SupertileId};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(t: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let e = t.elapsed();
    ensure(e < limit, format!("{what} took {e:?}, limit {limit:?}"))
}

/// Digit of `x` scaled by 36000, i.e. floor(6 * frac(x)).
fn digit(scaled: u64) -> u8 {
    ((scaled % 36000) * 6 / 36000) as u8
}

/// The square read off the orbit of x = (6k + l)/36 + 1/36000.
fn orbit_square(k: u8, l: u8) -> X0Square {
    let x = (6 * k as u64 + l as u64) * 1000 + 1;
    X0Square {
        a: digit(x),
        b: digit(2 * x),
        c: digit(3 * x),
        d: digit(6 * x),
    }
}

fn c1() -> Outcome {
    let t = Instant::now();
    for k in 0..6 {
        for l in 0..6 {
            let qs = squares_with_corners(k, l);
            ensure(qs.len() == 1, format!("corners ({k},{l}) admit {} squares", qs.len()))?;
            let o = orbit_square(k, l);
            ensure(qs[0] == o, format!("corners ({k},{l}): {:?} but the orbit gives {o:?}", qs[0]))?;
        }
    }
    within(t, Duration::from_secs(1), "36 corner pairs")?;
    Ok("36/36 corner pairs have one square, matching the orbit of (6k+l)/36".into())
}

fn c2() -> Outcome {
    let t = Instant::now();
    let mut out = Vec::new();
    for m in [3, 4] {
        let r = verify_diagonal_determinism(m).map_err(|e| e.to_string())?;
        ensure(r.words == 6usize.pow(m as u32), format!("m={m}: {} words", r.words))?;
        ensure(r.all_unique(), r.to_string())?;
        out.push(r.to_string());
    }
    within(t, Duration::from_secs(30), "m=3 and m=4")?;
    Ok(out.join(", "))
}

fn corner_golden() -> BTreeSet<(String, String, usize, usize)> {
    std::fs::read_to_string(fixture("order2_corners.txt"))
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            (f[0].to_string(), f[1].to_string(), f[2].parse().unwrap(), f[3].parse().unwrap())
        })
        .collect()
}

fn c3() -> Outcome {
    let t = Instant::now();
    for n in 0..=3 {
        let p = supertile(SupertileId { quadrant: Quadrant::Sw, order: n }).map_err(|e| e.to_string())?;
        let side = [1, 3, 7, 15][n as usize];
        ensure(supertile_side(n) == side && p.width() == side && p.height() == side, format!("order {n} has side {}", p.width()))?;
        let v = check_local_rules(&p);
        if let Some(first) = v.first() {
            return Err(format!("order {n}: {} violations, first {first}", v.len()));
        }
    }
    let p = supertile(SupertileId { quadrant: Quadrant::Sw, order: 2 }).map_err(|e| e.to_string())?;
    let s = locate_structure(&p).map_err(|e| e.to_string())?;
    let mut got = BTreeSet::new();
    for (x, y, q) in &s.blue {
        got.insert(("blue".to_string(), q.name().to_string(), *x, *y));
    }
    for (x, y, q, _) in &s.red {
        got.insert(("red".to_string(), q.name().to_string(), *x, *y));
    }
    let want = corner_golden();
    ensure(got == want, format!("corner mismatch: extra {:?}, missing {:?}", got.difference(&want).collect::<Vec<_>>(), want.difference(&got).collect::<Vec<_>>()))?;
    within(t, Duration::from_secs(5), "orders 0..=3")?;
    Ok(format!("sides 1 3 7 15, no violations, {} corners match the golden file", want.len()))
}

fn c4() -> Outcome {
    let mut squares = 0;
    for q in Quadrant::ALL {
        for n in 0..=3 {
            let p = supertile(SupertileId { quadrant: q, order: n }).map_err(|e| e.to_string())?;
            for y in 0..p.height().saturating_sub(1) {
                for x in 0..p.width().saturating_sub(1) {
                    let blue = [(0, 0), (1, 0), (0, 1), (1, 1)]
                        .iter()
                        .any(|&(dx, dy)| p.tile_at(x + dx, y + dy).is_some_and(|t| t.is_blue()));
                    ensure(blue, format!("{q} order {n}: no blue corner in the square at ({x},{y})"))?;
                    squares += 1;
                }
            }
        }
    }
    Ok(format!("{squares} squares checked"))
}

fn timed_verdict(name: &str) -> Result<(IsolationVerdict, ShiftSpec), String> {
    let spec = load(name);
    let t = Instant::now();
    let v = isolated_verdict_1d(&spec, 6).map_err(|e| e.to_string())?;
    within(t, Duration::from_secs(1), name)?;
    Ok((v, spec))
}

fn lattice_at(spec: &ShiftSpec, v: &IsolationVerdict) -> Result<subshift_core::one_dim::SubsystemLattice, String> {
    let IsolationVerdict::Isolated { nmc_from } = v else {
        return Err(format!("expected Isolated, got {v}"));
    };
    let g = build_graph(spec, *nmc_from).map_err(|e| e.to_string())?;
    subsystem_lattice(&g).map_err(|e| e.to_string())
}

fn c5() -> Outcome {
    let (v, _) = timed_verdict("goldenmean.shift")?;
    match &v {
        IsolationVerdict::NotIsolated { graph, certificate, .. } => {
            ensure(certificate.validate(graph), "golden mean certificate does not validate")?
        }
        _ => return Err(format!("golden mean: {v}")),
    }
    let (v, spec) = timed_verdict("forbid10.shift")?;
    let lat = lattice_at(&spec, &v)?;
    ensure(lat.len() == 4, format!("forbid 10: lattice of {}", lat.len()))?;
    ensure(maximal_subsystems(&lat).len() == 1 && maximality_type(&lat) == 1, "forbid 10: type is not 1")?;
    let (v, spec) = timed_verdict("twoloops.shift")?;
    let lat = lattice_at(&spec, &v)?;
    ensure(maximality_type(&lat) == 2, format!("two loops: type {}", maximality_type(&lat)))?;
    let (v, _) = timed_verdict("full.shift")?;
    match &v {
        IsolationVerdict::NotIsolated { graph, certificate, .. } => {
            ensure(certificate.validate(graph), "full shift certificate does not validate")?
        }
        _ => return Err(format!("full shift: {v}")),
    }
    Ok("golden mean and full shift not isolated; forbid 10 has 4 elements, type 1; two loops type 2".into())
}

fn nmc_examples() -> Result<Vec<(String, Graph1D)>, String> {
    let mut out = Vec::new();
    for name in ["forbid10.shift", "twoloops.shift"] {
        let spec = load(name);
        match isolated_verdict_1d(&spec, 6).map_err(|e| e.to_string())? {
            IsolationVerdict::Isolated { nmc_from } => {
                out.push((name.to_string(), build_graph(&spec, nmc_from).map_err(|e| e.to_string())?))
            }
            v => return Err(format!("{name}: {v}")),
        }
    }
    let graph = |v: usize, e: &[(usize, usize)]| -> Result<Graph1D, String> {
        build_graph(&spec_from_graph(v, e).map_err(|e| e.to_string())?, 1).map_err(|e| e.to_string())
    };
    out.push(("three-cycle".into(), graph(3, &[(0, 1), (1, 2), (2, 0)])?));
    out.push(("barbell".into(), graph(4, &[(0, 0), (0, 1), (1, 2), (2, 3), (3, 2)])?));
    out.push(("fork".into(), graph(3, &[(0, 0), (0, 1), (1, 1), (0, 2), (2, 2)])?));
    let mut runner = TestRunner::deterministic();
    let strat = nmc_graph();
    for k in 0..40 {
        let (v, e) = strat.new_tree(&mut runner).map_err(|e| e.to_string())?.current();
        out.push((format!("generated {k}"), graph(v, &e)?));
    }
    Ok(out)
}

fn c6() -> Outcome {
    let examples = nmc_examples()?;
    let mut transitive = 0;
    for (name, g) in &examples {
        let lat = subsystem_lattice(g).map_err(|e| format!("{name}: {e}"))?;
        let d = maximality_decomposition(&lat);
        ensure(d.reproduces_maximals(), format!("{name}: decomposition does not reproduce the maximal subsystems"))?;
        if is_transitive(g).holds() {
            transitive += 1;
            let ty = maximality_type(&lat);
            ensure(ty <= 1, format!("{name}: transitive with type {ty}"))?;
        }
    }
    ensure(transitive > 0, "no transitive example")?;
    Ok(format!("{} examples, {transitive} transitive", examples.len()))
}

/// Words of length n over {0,1} with no run of k ones.
fn words_without_run(n: usize, k: usize) -> usize {
    (0u32..1 << n)
        .filter(|w| (0..n).all(|i| i + k > n || (0..k).any(|j| w >> (i + j) & 1 == 0)))
        .count()
}

fn c7() -> Outcome {
    let full = load("full.shift");
    for (name, want) in [("forbid11.shift", 0.5), ("forbid1111.shift", 0.25)] {
        let d = resolution_distance(&full, &load(name), 4, 2).map_err(|e| e.to_string())?;
        ensure(d.value() == want, format!("d(full, {name}) = {}", d.value()))?;
    }
    let ladder: Vec<ShiftSpec> = (1..=12).map(forbid_run).collect();
    let r = check_convergence(&ladder, &full, 4, 2).map_err(|e| e.to_string())?;
    for s in 0..=4u32 {
        let n = 2 * s as usize + 1;
        let oracle = (0..ladder.len()).find(|&i| (i..ladder.len()).all(|j| words_without_run(n, j + 1) == 1 << n));
        ensure(r.agree_from(s) == oracle, format!("radius {s}: agree from {:?}, oracle {oracle:?}", r.agree_from(s)))?;
    }
    let fam = load_family(&fixture("unary.family")).map_err(|e| e.to_string())?;
    let all: Vec<&str> = fam.names().iter().map(String::as_str).collect();
    let survivors = derived_set(&fam, &all).map_err(|e| e.to_string())?;
    ensure(survivors == ["X9", "full"], format!("survivors {survivors:?}"))?;
    let trace = cb_ladder(&fam).map_err(|e| e.to_string())?;
    ensure(trace.rank <= 5, format!("rank {}", trace.rank))?;
    Ok(format!("distances 1/2 and 1/4, ladder matches oracle for s<=4, survivors {{X9, full}}, rank {}", trace.rank))
}

fn c8() -> Outcome {
    let results = run_property_suites();
    let failed: Vec<String> = results
        .iter()
        .filter_map(|(n, r)| r.as_ref().err().map(|e| format!("{n}: {e}")))
        .collect();
    ensure(failed.is_empty(), failed.join("; "))?;
    Ok(format!("{} suites, {} cases each", results.len(), common::CASES))
}

pub const NOT_REPRODUCED: [&str; 4] = [
    "deciding isolation in dimension two",
    "infinite cantor-bendixson rank",
    "five-layer isolated shift",
    "strict subsystems of x0 are finite",
];

fn c9() -> Outcome {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../README.md");
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?.to_lowercase();
    let section = text.split("## not reproduced").nth(1).ok_or("README has no 'Not reproduced' section")?;
    let missing: Vec<&str> = NOT_REPRODUCED.iter().copied().filter(|s| !section.contains(s)).collect();
    ensure(missing.is_empty(), format!("README does not state: {missing:?}"))?;
    Ok("README lists the four results that are not reproduced".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("x2x3 corner uniqueness", c1),
        ("diagonal determinism", c2),
        ("robinson structure", c3),
        ("blue corner density", c4),
        ("1D characterization", c5),
        ("decomposition consistency", c6),
        ("metric and convergence", c7),
        ("property suites", c8),
        ("non-reproduction statements", c9),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match f() {
            Ok(msg) => println!("PASS {} {name}: {msg} ({:.2?})", i + 1, t.elapsed()),
            Err(msg) => {
                failures += 1;
                println!("FAIL {} {name}: {msg}", i + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
