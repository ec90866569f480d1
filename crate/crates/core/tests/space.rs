mod common;

use std::collections::BTreeSet;

use common::{binary_spec, fixture, CASES};
use proptest::prelude::*;
use subshift_core::space::{
    build_ladder_examples, cb_ladder, cb_ladder_from, derived_set, distance_matrix, forbid_constant_box, forbid_run,
    load_family, parse_family_with,
};
use subshift_core::{check_convergence, ShiftFamily, ShiftSpec};

fn family(specs: Vec<ShiftSpec>, n: u32) -> ShiftFamily {
    let members = specs.into_iter().enumerate().map(|(i, s)| (format!("m{i}"), s)).collect();
    ShiftFamily::new(members, n, 1).unwrap()
}

fn all(fam: &ShiftFamily) -> BTreeSet<usize> {
    (0..fam.len()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn matrix_is_symmetric(specs in prop::collection::vec(binary_spec(), 1..=4), n in 0u32..=3) {
        let fam = family(specs, n);
        let m = distance_matrix(&fam).unwrap();
        for a in 0..m.len() {
            prop_assert!(m.get(a, a).is_beyond());
            for b in 0..m.len() {
                prop_assert_eq!(m.get(a, b), m.get(b, a));
            }
        }
    }

    #[test]
    fn survivors_shrink_as_resolution_grows(specs in prop::collection::vec(binary_spec(), 2..=4), n in 0u32..=2) {
        let coarse = family(specs.clone(), n);
        let fine = family(specs, n + 1);
        let sc = distance_matrix(&coarse).unwrap().derived_set(&all(&coarse));
        let sf = distance_matrix(&fine).unwrap().derived_set(&all(&fine));
        prop_assert!(sf.is_subset(&sc));
    }

    #[test]
    fn removing_a_member_never_adds_survivors(specs in prop::collection::vec(binary_spec(), 2..=4), k in 0usize..4, n in 0u32..=3) {
        let fam = family(specs, n);
        let k = k % fam.len();
        let m = distance_matrix(&fam).unwrap();
        let before = m.derived_set(&all(&fam));
        let after = m.derived_set(&all(&fam).into_iter().filter(|&i| i != k).collect());
        prop_assert!(after.is_subset(&before));
        prop_assert!(!after.contains(&k));
    }

    #[test]
    fn trace_levels_are_nested(specs in prop::collection::vec(binary_spec(), 1..=4), n in 0u32..=3) {
        let t = cb_ladder(&family(specs, n)).unwrap();
        for w in t.levels.windows(2) {
            let a: BTreeSet<&String> = w[0].iter().collect();
            prop_assert!(w[1].iter().all(|x| a.contains(x)));
        }
        prop_assert_eq!(t.levels.len(), t.rank + 1);
    }
}

#[test]
fn unary_family_from_file() {
    let fam = load_family(&fixture("unary.family")).unwrap();
    assert_eq!(fam.resolution(), 3);
    let m = distance_matrix(&fam).unwrap();
    let i = |n: &str| fam.index_of(n).unwrap();
    assert_eq!(m.get(i("X2"), i("full")).value(), 0.5);
    assert_eq!(m.get(i("X3"), i("full")).value(), 0.5);
    assert_eq!(m.get(i("X5"), i("full")).value(), 0.25);
    assert!(m.are_neighbours(i("X9"), i("full")));
    let t = cb_ladder_from(&m);
    assert_eq!(t.residue(), ["X9", "full"]);
    assert_eq!(t.rank, 1);
    assert!(m.to_lines().contains("d X9 full beyond 3\n"));
}

#[test]
fn derived_set_of_a_sub_level() {
    let fam = load_family(&fixture("unary.family")).unwrap();
    assert_eq!(derived_set(&fam, &["X2", "X9", "full"]).unwrap(), ["X9", "full"]);
    assert!(derived_set(&fam, &["X2", "X5"]).unwrap().is_empty());
    assert!(derived_set(&fam, &["nope"]).is_err());
}

#[test]
fn presets_match_their_expectations() {
    let presets = build_ladder_examples().unwrap();
    let residue = |name: &str| {
        let p = presets.iter().find(|p| p.name == name).unwrap();
        cb_ladder(&p.family).unwrap().residue().to_vec()
    };
    assert_eq!(residue("unary-blocks"), ["X9", "full"]);
    assert_eq!(residue("fullshift-approx"), ["p4", "p5", "p6", "full"]);
    assert_eq!(residue("g-ladder"), ["X0", "G1"]);
}

#[test]
fn constant_box_ladder_converges_to_the_full_shift() {
    let full = ShiftSpec::full(1, vec![0, 1]).unwrap();
    let seq: Vec<ShiftSpec> = (0..=6).map(|n| forbid_constant_box(n, 1, 1)).collect();
    let r = check_convergence(&seq, &full, 3, 2).unwrap();
    for s in 0..=3 {
        assert_eq!(r.agree_from(s), Some(s as usize + 1));
    }
    assert!(r.consistent());
}

#[test]
fn mixed_dimensions_and_duplicates_are_rejected() {
    let two_d = ShiftSpec::full(2, vec![0, 1]).unwrap();
    assert!(ShiftFamily::new(vec![("a".into(), forbid_run(2)), ("b".into(), two_d)], 1, 1).is_err());
    assert!(ShiftFamily::new(vec![("a".into(), forbid_run(2)), ("a".into(), forbid_run(3))], 1, 1).is_err());
    assert!(parse_family_with("member a x\n", |_| Ok(forbid_run(2))).is_err());
    assert!(parse_family_with("resolution 2\nbogus\n", |_| Ok(forbid_run(2))).is_err());
}
