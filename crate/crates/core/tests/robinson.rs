mod common;

use common::{fixture, CASES};
use proptest::prelude::*;
use subshift_core::robinson::{
    blue_corner, blue_free_square_count, check_local_rules, locate_structure, parse_patch, render_ascii, render_pgm,
    render_svg, robinson_spec, serialize_patch, supertile, supertile_side, tile, tile_census, tile_set, Quadrant,
    SupertileGenerator, TILE_COUNT,
};
use subshift_core::{is_locally_admissible, RobinsonPatch, SupertileId};

fn st(q: Quadrant, order: u32) -> RobinsonPatch {
    supertile(SupertileId { quadrant: q, order }).unwrap()
}

fn quadrant() -> impl Strategy<Value = Quadrant> {
    prop::sample::select(Quadrant::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn sub_windows_are_clean_and_render_consistently(q in quadrant(), x in 0usize..31, y in 0usize..31, w in 1usize..8, h in 1usize..8) {
        let p = st(q, 4);
        let w = w.min(31 - x);
        let h = h.min(31 - y);
        let sub = p.sub_patch(x, y, w, h).unwrap();
        prop_assert!(check_local_rules(&sub).is_empty());
        let full: Vec<String> = render_ascii(&p).lines().map(String::from).collect();
        let part: Vec<String> = render_ascii(&sub).lines().map(String::from).collect();
        for (k, line) in part.iter().enumerate() {
            let row = &full[31 - (y + h) + k];
            prop_assert_eq!(line.as_str(), &row[2 * x..2 * (x + w)]);
        }
    }

    #[test]
    fn patch_text_round_trips(q in quadrant(), order in 0u32..=3, holes in prop::collection::vec((0usize..15, 0usize..15), 0..5)) {
        let mut p = st(q, order);
        for (x, y) in holes {
            if x < p.width() && y < p.height() {
                p.set(x, y, None);
            }
        }
        prop_assert_eq!(parse_patch(&serialize_patch(&p)).unwrap(), p);
    }
}

#[test]
fn order_one_ascii_golden() {
    let want = std::fs::read_to_string(fixture("robinson_order1.txt")).unwrap();
    assert_eq!(render_ascii(&st(Quadrant::Sw, 1)), want);
}

#[test]
fn svg_has_one_group_per_tile() {
    let svg = render_svg(&st(Quadrant::Sw, 2));
    assert_eq!(svg.matches("<g id=\"t").count(), 49);
    assert!(svg.starts_with("<?xml") && svg.ends_with("</svg>\n"));
}

#[test]
fn pgm_layout() {
    let p = st(Quadrant::Ne, 1);
    let pgm = render_pgm(&p);
    let header = b"P5\n3 3\n255\n";
    assert_eq!(&pgm[..header.len()], header);
    assert_eq!(pgm.len(), header.len() + 9);
    // first pixel is the top left tile
    assert_eq!(pgm[header.len()], p.get(0, 2).unwrap());
    assert_eq!(render_pgm(&RobinsonPatch::new(2, 1)), b"P5\n2 1\n255\n\xff\xff".to_vec());
    assert_eq!(render_pgm(&RobinsonPatch::new(0, 0)), b"P5\n0 0\n255\n".to_vec());
}

#[test]
fn generation_is_deterministic() {
    for q in Quadrant::ALL {
        let a = SupertileGenerator::new(4).get(SupertileId { quadrant: q, order: 4 }).unwrap();
        let b = st(q, 4);
        assert_eq!(a, b);
        assert_eq!(render_svg(&a), render_svg(&b));
    }
}

#[test]
fn children_sit_at_the_quarter_offsets() {
    for q in Quadrant::ALL {
        for n in 1..=4 {
            let p = st(q, n);
            let h = supertile_side(n - 1);
            for (cq, x0, y0) in [
                (Quadrant::Sw, 0, 0),
                (Quadrant::Se, h + 1, 0),
                (Quadrant::Nw, 0, h + 1),
                (Quadrant::Ne, h + 1, h + 1),
            ] {
                assert_eq!(p.sub_patch(x0, y0, h, h).unwrap(), st(cq, n - 1), "{q} order {n} child {cq}");
            }
            let centre = p.tile_at(h, h).unwrap();
            assert!(centre.is_red());
            assert_eq!(centre.quadrant(), Some(q));
        }
    }
}

#[test]
fn order_zero_has_no_sites() {
    let s = locate_structure(&st(Quadrant::Sw, 0)).unwrap();
    assert!(s.sites.is_empty() && s.hint.is_none());
    assert_eq!(s.blue, vec![(0, 0, Quadrant::Sw)]);
}

#[test]
fn sites_of_order_three() {
    let s = locate_structure(&st(Quadrant::Se, 3)).unwrap();
    assert!(s.sites.contains(&(3, 7, 7)));
    assert_eq!(s.sites.iter().filter(|x| x.0 == 1).count(), 16);
    assert!(s.hint.unwrap().contains("order 3"));
}

#[test]
fn uniform_arrow_patch_breaks_the_rules() {
    let id = (0..TILE_COUNT as u8).find(|&i| !tile(i).unwrap().is_blue() && !tile(i).unwrap().is_red()).unwrap();
    let p = RobinsonPatch::from_rows(4, 4, vec![Some(id); 16]).unwrap();
    assert!(!check_local_rules(&p).is_empty());
    assert!(locate_structure(&p).unwrap().sites.is_empty());
}

#[test]
fn tile_table() {
    assert_eq!(tile_set().len(), 108);
    let census = tile_census();
    assert_eq!(census.values().sum::<usize>(), 108);
    assert!(tile(108).is_err());
    for q in Quadrant::ALL {
        assert_eq!(tile(blue_corner(q)).unwrap().quadrant(), Some(q));
    }
}

#[test]
fn supertiles_avoid_the_forbidden_patterns() {
    let spec = robinson_spec();
    assert_eq!(blue_free_square_count(), 1724);
    for q in Quadrant::ALL {
        for n in 1..=2 {
            assert!(is_locally_admissible(&spec, &st(q, n).to_pattern(), 0).unwrap(), "{q} order {n}");
        }
    }
}

#[test]
fn a_bad_vertical_domino_is_inadmissible() {
    let spec = robinson_spec();
    let b = blue_corner(Quadrant::Sw);
    let p = RobinsonPatch::from_rows(1, 2, vec![Some(b), Some(b)]).unwrap();
    assert!(!check_local_rules(&p).is_empty());
    assert!(!is_locally_admissible(&spec, &p.to_pattern(), 0).unwrap());
}

#[test]
fn malformed_patch_text_is_rejected() {
    assert!(parse_patch("").is_err());
    assert!(parse_patch("robipatch v1 2 1\n0\n").is_err());
    assert!(parse_patch("robipatch v1 1 1\n200\n").is_err());
    assert!(parse_patch("robipatch v2 1 1\n0\n").is_err());
}
