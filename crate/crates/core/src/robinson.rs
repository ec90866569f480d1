//! Robinson tiles, their local rules, and the finite supertile hierarchy.
//!
//! # Tile table legend
//!
//! Each side of a tile carries three arrow slots at offsets 1/4, 1/2 and 3/4
//! of the side (slots 0, 1, 2). Offsets run along `x` on the north and south
//! sides and along `y` on the east and west sides. A slot is empty, an
//! arrow entering the tile (`In`) or one leaving it (`Out`).
//!
//! Unrotated arrow tiles (the main arrow runs from north to south):
//!
//! | kind | arrows | N        | S          | W        | E        |
//! |------|--------|----------|------------|----------|----------|
//! | A    | 3      | `.I.`    | `.O.`      | `.I.`    | `.I.`    |
//! | B    | 5      | `.I.`    | `.O.`      | `II.`    | `II.`    |
//! | C    | 4      | `II.`    | `OO.`      | `.I.`    | `.I.`    |
//! | D    | 4      | `.II`    | `.OO`      | `.I.`    | `.I.`    |
//! | E    | 6      | `II.`    | `OO.`      | `II.`    | `II.`    |
//! | F    | 6      | `.II`    | `.OO`      | `II.`    | `II.`    |
//!
//! The unrotated corner is the south west one: `N OO.`, `E OO.`, `W .O.`,
//! `S .O.`. Rotations are counterclockwise; the south east, north east and
//! north west corners are the south west one turned by 1, 2 and 3 quarters.
//!
//! Bits: `i` is a row bit (equal along horizontal neighbours) and `j` a
//! column bit (equal along vertical neighbours); they do not turn with the
//! tile. Five and six arrow tiles (B, E, F) need `i != j`. Corners carry a
//! (center, outer) pair: blue (0, 0), red (1, 0) and red (1, 1). The outer
//! (gray) bit acts as both `i` and `j` of the corner.
//!
//! Ids: arrows are `16 * kind + 4 * rotation + 2 * i + j` (0..96), then blue
//! corners 96..100, red corners with gray 0 100..104 and with gray 1
//! 104..108, each group ordered sw, se, ne, nw.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::{self, Write as _};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::pattern::{Coord, Pattern, Symbol};
use crate::spec::ShiftSpec;

pub const TILE_COUNT: usize = 108;
pub const DEFAULT_ORDER_CAP: u32 = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mark {
    None,
    In,
    Out,
}

impl Mark {
    fn matches(self, other: Mark) -> bool {
        matches!(
            (self, other),
            (Mark::None, Mark::None) | (Mark::In, Mark::Out) | (Mark::Out, Mark::In)
        )
    }
}

const N: usize = 0;
const E: usize = 1;
const S: usize = 2;
const W: usize = 3;

/// Arms in side order N, E, S, W.
pub type Arms = [[Mark; 3]; 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArrowKind {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl ArrowKind {
    pub const ALL: [ArrowKind; 6] = [ArrowKind::A, ArrowKind::B, ArrowKind::C, ArrowKind::D, ArrowKind::E, ArrowKind::F];

    pub fn arrows(self) -> usize {
        match self {
            ArrowKind::A => 3,
            ArrowKind::B => 5,
            ArrowKind::C | ArrowKind::D => 4,
            ArrowKind::E | ArrowKind::F => 6,
        }
    }

    fn letter(self) -> char {
        b"ABCDEF"[self as usize] as char
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quadrant {
    Sw,
    Se,
    Ne,
    Nw,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [Quadrant::Sw, Quadrant::Se, Quadrant::Ne, Quadrant::Nw];

    pub fn name(self) -> &'static str {
        ["sw", "se", "ne", "nw"][self as usize]
    }

    fn glyph(self) -> char {
        ['L', 'J', '7', 'F'][self as usize]
    }

    fn from_rotation(r: u8) -> Quadrant {
        Quadrant::ALL[r as usize % 4]
    }
}

impl std::str::FromStr for Quadrant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Quadrant::ALL
            .into_iter()
            .find(|q| q.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown quadrant `{s}` (sw, se, ne, nw)")))
    }
}

impl fmt::Display for Quadrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Blue,
    Red,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    Arrow(ArrowKind),
    Corner(Color),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RobinsonTile {
    pub id: u8,
    pub shape: Shape,
    /// Counterclockwise quarter turns; for corners, the quadrant index.
    pub rotation: u8,
    pub i: u8,
    pub j: u8,
    pub arms: Arms,
}

impl RobinsonTile {
    pub fn is_blue(&self) -> bool {
        self.shape == Shape::Corner(Color::Blue)
    }

    pub fn is_red(&self) -> bool {
        self.shape == Shape::Corner(Color::Red)
    }

    pub fn quadrant(&self) -> Option<Quadrant> {
        matches!(self.shape, Shape::Corner(_)).then(|| Quadrant::from_rotation(self.rotation))
    }

    /// Five and six arrow tiles.
    pub fn needs_distinct_bits(&self) -> bool {
        matches!(self.shape, Shape::Arrow(k) if k.arrows() >= 5)
    }

    /// Two-character glyph used by the text renderer.
    pub fn glyph(&self) -> String {
        match self.shape {
            Shape::Corner(c) => {
                let letter = match (c, self.i) {
                    (Color::Blue, _) => 'b',
                    (Color::Red, 0) => 'r',
                    (Color::Red, _) => 'R',
                };
                format!("{letter}{}", Quadrant::from_rotation(self.rotation).glyph())
            }
            Shape::Arrow(k) => format!("{}{}", k.letter(), ['v', '>', '^', '<'][self.rotation as usize]),
        }
    }
}

fn parse_side(s: &str) -> [Mark; 3] {
    let mut out = [Mark::None; 3];
    for (k, ch) in s.chars().enumerate() {
        out[k] = match ch {
            'I' => Mark::In,
            'O' => Mark::Out,
            _ => Mark::None,
        };
    }
    out
}

/// `n, e, s, w` in the legend's notation.
fn arms(n: &str, e: &str, s: &str, w: &str) -> Arms {
    [parse_side(n), parse_side(e), parse_side(s), parse_side(w)]
}

fn base_arms(shape: Shape) -> Arms {
    match shape {
        Shape::Arrow(ArrowKind::A) => arms(".I.", ".I.", ".O.", ".I."),
        Shape::Arrow(ArrowKind::B) => arms(".I.", "II.", ".O.", "II."),
        Shape::Arrow(ArrowKind::C) => arms("II.", ".I.", "OO.", ".I."),
        Shape::Arrow(ArrowKind::D) => arms(".II", ".I.", ".OO", ".I."),
        Shape::Arrow(ArrowKind::E) => arms("II.", "II.", "OO.", "II."),
        Shape::Arrow(ArrowKind::F) => arms(".II", "II.", ".OO", "II."),
        Shape::Corner(_) => arms("OO.", "OO.", ".O.", ".O."),
    }
}

fn mirror(side: [Mark; 3]) -> [Mark; 3] {
    [side[2], side[1], side[0]]
}

/// A quarter turn counterclockwise.
fn rotate(a: Arms) -> Arms {
    let mut r = a;
    r[N] = mirror(a[E]);
    r[W] = a[N];
    r[S] = mirror(a[W]);
    r[E] = a[S];
    r
}

fn rotated(a: Arms, times: u8) -> Arms {
    (0..times).fold(a, |acc, _| rotate(acc))
}

fn build_table() -> Vec<RobinsonTile> {
    let mut out = Vec::with_capacity(TILE_COUNT);
    for kind in ArrowKind::ALL {
        for rot in 0..4u8 {
            for bits in 0..4u8 {
                out.push(RobinsonTile {
                    id: out.len() as u8,
                    shape: Shape::Arrow(kind),
                    rotation: rot,
                    i: bits >> 1,
                    j: bits & 1,
                    arms: rotated(base_arms(Shape::Arrow(kind)), rot),
                });
            }
        }
    }
    for (color, gray) in [(Color::Blue, 0u8), (Color::Red, 0), (Color::Red, 1)] {
        for rot in 0..4u8 {
            out.push(RobinsonTile {
                id: out.len() as u8,
                shape: Shape::Corner(color),
                rotation: rot,
                i: gray,
                j: gray,
                arms: rotated(base_arms(Shape::Corner(color)), rot),
            });
        }
    }
    out
}

struct Tables {
    tiles: Vec<RobinsonTile>,
    /// `horizontal[a][b]`: `b` may sit east of `a` (rules 1 and 3).
    horizontal: Vec<Vec<bool>>,
    /// `vertical[a][b]`: `b` may sit north of `a`.
    vertical: Vec<Vec<bool>>,
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let tiles = build_table();
        let horizontal = tiles
            .iter()
            .map(|a| tiles.iter().map(|b| horizontal_fault(a, b).is_none()).collect())
            .collect();
        let vertical = tiles
            .iter()
            .map(|a| tiles.iter().map(|b| vertical_fault(a, b).is_none()).collect())
            .collect();
        Tables {
            tiles,
            horizontal,
            vertical,
        }
    })
}

pub fn tile_set() -> &'static [RobinsonTile] {
    &tables().tiles
}

pub fn tile(id: u8) -> Result<&'static RobinsonTile> {
    tile_set()
        .get(id as usize)
        .ok_or_else(|| Error::InvalidArgument(format!("tile id {id} is not below {TILE_COUNT}")))
}

pub fn blue_corner(q: Quadrant) -> u8 {
    96 + q as u8
}

pub fn red_corner(q: Quadrant, gray: u8) -> u8 {
    100 + 4 * gray + q as u8
}

/// Rule number broken by `b` east of `a`, if any.
fn horizontal_fault(a: &RobinsonTile, b: &RobinsonTile) -> Option<u8> {
    if !(0..3).all(|p| a.arms[E][p].matches(b.arms[W][p])) {
        Some(1)
    } else if a.i != b.i {
        Some(3)
    } else {
        None
    }
}

/// Rule number broken by `b` north of `a`, if any.
fn vertical_fault(a: &RobinsonTile, b: &RobinsonTile) -> Option<u8> {
    if !(0..3).all(|p| a.arms[N][p].matches(b.arms[S][p])) {
        Some(1)
    } else if a.j != b.j {
        Some(3)
    } else {
        None
    }
}

/// Legend lines `id kind rotation i j glyph`.
pub fn tile_legend() -> String {
    let mut out = String::new();
    for t in tile_set() {
        let kind = match t.shape {
            Shape::Arrow(k) => format!("arrow-{}", k.letter()),
            Shape::Corner(Color::Blue) => "blue-corner".into(),
            Shape::Corner(Color::Red) => "red-corner".into(),
        };
        let _ = writeln!(out, "{:>3} {kind:<11} rot{} i={} j={} {}", t.id, t.rotation, t.i, t.j, t.glyph());
    }
    out
}

/// A rectangular array of tile ids; `None` is a hole. Row 0 is the bottom.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RobinsonPatch {
    width: usize,
    height: usize,
    cells: Vec<Option<u8>>,
}

impl RobinsonPatch {
    pub fn new(width: usize, height: usize) -> Self {
        RobinsonPatch {
            width,
            height,
            cells: vec![None; width * height],
        }
    }

    pub fn from_rows(width: usize, height: usize, cells: Vec<Option<u8>>) -> Result<Self> {
        if cells.len() != width * height {
            return Err(Error::InvalidArgument(format!(
                "{} cells for a {width}x{height} patch",
                cells.len()
            )));
        }
        if let Some(id) = cells.iter().flatten().find(|&&id| id as usize >= TILE_COUNT) {
            return Err(Error::InvalidArgument(format!("tile id {id} is not below {TILE_COUNT}")));
        }
        Ok(RobinsonPatch { width, height, cells })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, x: usize, y: usize) -> Option<u8> {
        self.cells[y * self.width + x]
    }

    pub fn tile_at(&self, x: usize, y: usize) -> Option<&'static RobinsonTile> {
        self.get(x, y).map(|id| &tile_set()[id as usize])
    }

    pub fn set(&mut self, x: usize, y: usize, id: Option<u8>) {
        self.cells[y * self.width + x] = id;
    }

    pub fn has_holes(&self) -> bool {
        self.cells.iter().any(Option::is_none)
    }

    /// Copies `other` with its south west cell at `(x0, y0)`.
    fn paste(&mut self, other: &RobinsonPatch, x0: usize, y0: usize) {
        for y in 0..other.height {
            for x in 0..other.width {
                self.set(x0 + x, y0 + y, other.get(x, y));
            }
        }
    }

    pub fn sub_patch(&self, x0: usize, y0: usize, w: usize, h: usize) -> Option<RobinsonPatch> {
        if x0 + w > self.width || y0 + h > self.height {
            return None;
        }
        let mut out = RobinsonPatch::new(w, h);
        for y in 0..h {
            for x in 0..w {
                out.set(x, y, self.get(x0 + x, y0 + y));
            }
        }
        Some(out)
    }

    /// As a pattern of the shift returned by [`robinson_spec`].
    pub fn to_pattern(&self) -> Pattern {
        let mut cells = Vec::new();
        for y in 0..self.height {
            for x in 0..self.width {
                if let Some(id) = self.get(x, y) {
                    cells.push((Coord::new(vec![x as i64, y as i64]), id as Symbol));
                }
            }
        }
        Pattern::from_cells(2, cells).expect("2D cells")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: u8,
    pub x: usize,
    pub y: usize,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule {} at ({}, {}): {}", self.rule, self.x, self.y, self.detail)
    }
}

/// Every broken rule instance. Holes are skipped; the blue lattice clause is
/// only checked where the forced position lies inside the patch.
pub fn check_local_rules(patch: &RobinsonPatch) -> Vec<Violation> {
    let mut out = Vec::new();
    let (w, h) = (patch.width, patch.height);
    let is_blue = |x: usize, y: usize| patch.tile_at(x, y).is_some_and(|t| t.is_blue());
    for y in 0..h {
        for x in 0..w {
            let Some(t) = patch.tile_at(x, y) else { continue };
            if x + 1 < w {
                if let Some(rule) = patch.tile_at(x + 1, y).and_then(|r| horizontal_fault(t, r)) {
                    out.push(Violation {
                        rule,
                        x,
                        y,
                        detail: format!("with east neighbour ({}, {y})", x + 1),
                    });
                }
            }
            if y + 1 < h {
                if let Some(rule) = patch.tile_at(x, y + 1).and_then(|u| vertical_fault(t, u)) {
                    out.push(Violation {
                        rule,
                        x,
                        y,
                        detail: format!("with north neighbour ({x}, {})", y + 1),
                    });
                }
            }
            if t.needs_distinct_bits() && t.i == t.j {
                out.push(Violation {
                    rule: 4,
                    x,
                    y,
                    detail: format!("{}-arrow tile with i = j = {}", t.arrows_count(), t.i),
                });
            }
            if t.is_blue() {
                let forced = [(2i64, 0i64), (-2, 0), (0, 2), (0, -2)];
                for (dx, dy) in forced {
                    let (fx, fy) = (x as i64 + dx, y as i64 + dy);
                    if fx < 0 || fy < 0 || fx >= w as i64 || fy >= h as i64 {
                        continue;
                    }
                    let (fx, fy) = (fx as usize, fy as usize);
                    if patch.get(fx, fy).is_some() && !is_blue(fx, fy) {
                        out.push(Violation {
                            rule: 2,
                            x,
                            y,
                            detail: format!("blue corner forces a blue corner at ({fx}, {fy})"),
                        });
                    }
                }
            }
            if x + 1 < w && y + 1 < h {
                let square = [(x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)];
                let full = square.iter().all(|&(a, b)| patch.get(a, b).is_some());
                if full && !square.iter().any(|&(a, b)| is_blue(a, b)) {
                    out.push(Violation {
                        rule: 2,
                        x,
                        y,
                        detail: "2x2 square without a blue corner".into(),
                    });
                }
            }
        }
    }
    out
}

impl RobinsonTile {
    fn arrows_count(&self) -> usize {
        match self.shape {
            Shape::Arrow(k) => k.arrows(),
            Shape::Corner(_) => 6,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SupertileId {
    pub quadrant: Quadrant,
    pub order: u32,
}

pub fn supertile_side(order: u32) -> usize {
    (1usize << (order + 1)) - 1
}

/// Builds supertiles recursively, caching every order it passes through.
pub struct SupertileGenerator {
    cap: u32,
    cache: HashMap<SupertileId, RobinsonPatch>,
}

impl Default for SupertileGenerator {
    fn default() -> Self {
        SupertileGenerator::new(DEFAULT_ORDER_CAP)
    }
}

impl SupertileGenerator {
    pub fn new(cap: u32) -> Self {
        SupertileGenerator {
            cap,
            cache: HashMap::new(),
        }
    }

    pub fn get(&mut self, id: SupertileId) -> Result<RobinsonPatch> {
        if id.order > self.cap {
            return Err(Error::InvalidArgument(format!(
                "order {} is above the cap {}",
                id.order, self.cap
            )));
        }
        if let Some(p) = self.cache.get(&id) {
            return Ok(p.clone());
        }
        let patch = if id.order == 0 {
            RobinsonPatch::from_rows(1, 1, vec![Some(blue_corner(id.quadrant))])?
        } else {
            let child = id.order - 1;
            // Children have side `h`, which is also the centre coordinate.
            let h = supertile_side(child);
            let side = supertile_side(id.order);
            let mut patch = RobinsonPatch::new(side, side);
            for (q, x0, y0) in [
                (Quadrant::Sw, 0, 0),
                (Quadrant::Se, h + 1, 0),
                (Quadrant::Nw, 0, h + 1),
                (Quadrant::Ne, h + 1, h + 1),
            ] {
                let sub = self.get(SupertileId { quadrant: q, order: child })?;
                patch.paste(&sub, x0, y0);
            }
            fill_cross(patch, h, id.quadrant)?
        };
        self.cache.insert(id, patch.clone());
        Ok(patch)
    }
}

pub fn supertile(id: SupertileId) -> Result<RobinsonPatch> {
    SupertileGenerator::default().get(id)
}

/// Fills row `h` and column `h` by arc consistency, then proves the filling
/// unique by searching for a second one.
fn fill_cross(mut patch: RobinsonPatch, h: usize, q: Quadrant) -> Result<RobinsonPatch> {
    let t = tables();
    let side = patch.width;
    let mut vars: Vec<(usize, usize)> = Vec::new();
    for k in 0..side {
        vars.push((k, h));
        if k != h {
            vars.push((h, k));
        }
    }
    vars.sort_unstable();
    let index: HashMap<(usize, usize), usize> = vars.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut domains: Vec<Vec<u8>> = vars
        .iter()
        .map(|&c| {
            if c == (h, h) {
                vec![red_corner(q, 0), red_corner(q, 1)]
            } else {
                (0..TILE_COUNT as u8)
                    .filter(|&id| {
                        let tl = &t.tiles[id as usize];
                        !(tl.needs_distinct_bits() && tl.i == tl.j)
                    })
                    .collect()
            }
        })
        .collect();

    // (dx, dy, neighbour) for the four directions.
    let neighbours = |x: usize, y: usize| -> Vec<(i64, i64, usize, usize)> {
        [(1i64, 0i64), (-1, 0), (0, 1), (0, -1)]
            .into_iter()
            .filter_map(|(dx, dy)| {
                let (nx, ny) = (x as i64 + dx, y as i64 + dy);
                (nx >= 0 && ny >= 0 && nx < side as i64 && ny < side as i64).then_some((dx, dy, nx as usize, ny as usize))
            })
            .collect()
    };
    let compatible = |a: u8, dx: i64, dy: i64, b: u8| -> bool {
        let (a, b) = (a as usize, b as usize);
        match (dx, dy) {
            (1, 0) => t.horizontal[a][b],
            (-1, 0) => t.horizontal[b][a],
            (0, 1) => t.vertical[a][b],
            _ => t.vertical[b][a],
        }
    };

    // Fixed neighbours first.
    for (vi, &(x, y)) in vars.iter().enumerate() {
        for (dx, dy, nx, ny) in neighbours(x, y) {
            if index.contains_key(&(nx, ny)) {
                continue;
            }
            let fixed = patch.get(nx, ny).expect("children fill the rest");
            domains[vi].retain(|&a| compatible(a, dx, dy, fixed));
        }
    }
    // AC-3 between cross cells.
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    for (vi, &(x, y)) in vars.iter().enumerate() {
        for (_, _, nx, ny) in neighbours(x, y) {
            if let Some(&ni) = index.get(&(nx, ny)) {
                queue.push_back((vi, ni));
            }
        }
    }
    while let Some((vi, ni)) = queue.pop_front() {
        let (x, y) = vars[vi];
        let (nx, ny) = vars[ni];
        let (dx, dy) = (nx as i64 - x as i64, ny as i64 - y as i64);
        let before = domains[vi].len();
        let other = domains[ni].clone();
        domains[vi].retain(|&a| other.iter().any(|&b| compatible(a, dx, dy, b)));
        if domains[vi].is_empty() {
            return Err(Error::Defect(format!("no tile fits the cross cell ({x}, {y})")));
        }
        if domains[vi].len() < before {
            for (_, _, mx, my) in neighbours(x, y) {
                if let Some(&mi) = index.get(&(mx, my)) {
                    if mi != ni {
                        queue.push_back((mi, vi));
                    }
                }
            }
        }
    }

    let mut solutions: Vec<Vec<u8>> = Vec::new();
    let mut assignment = vec![0u8; vars.len()];
    search(&mut patch, &vars, &domains, 0, &mut assignment, &mut solutions);
    match solutions.len() {
        1 => {
            for (vi, &(x, y)) in vars.iter().enumerate() {
                patch.set(x, y, Some(solutions[0][vi]));
            }
            Ok(patch)
        }
        0 => Err(Error::Defect(format!("no valid filling of the cross (centre {h})"))),
        _ => Err(Error::Defect(format!("cross filling is not unique (centre {h})"))),
    }
}

fn search(
    patch: &mut RobinsonPatch,
    vars: &[(usize, usize)],
    domains: &[Vec<u8>],
    k: usize,
    assignment: &mut Vec<u8>,
    solutions: &mut Vec<Vec<u8>>,
) {
    if solutions.len() >= 2 {
        return;
    }
    if k == vars.len() {
        for (vi, &(x, y)) in vars.iter().enumerate() {
            patch.set(x, y, Some(assignment[vi]));
        }
        if check_local_rules(patch).is_empty() {
            solutions.push(assignment.clone());
        }
        for &(x, y) in vars {
            patch.set(x, y, None);
        }
        return;
    }
    for &v in &domains[k] {
        assignment[k] = v;
        search(patch, vars, domains, k + 1, assignment, solutions);
    }
}

/// Corner positions, sites of complete supertiles, and a window-limited hint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub blue: Vec<(usize, usize, Quadrant)>,
    pub red: Vec<(usize, usize, Quadrant, u8)>,
    /// `(order, x, y)`: centre of a complete supertile of that order, order >= 1.
    pub sites: Vec<(u32, usize, usize)>,
    pub hint: Option<String>,
}

impl fmt::Display for StructureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "blue corners: {}", self.blue.len())?;
        for (x, y, q) in &self.blue {
            writeln!(f, "  blue {q} ({x}, {y})")?;
        }
        writeln!(f, "red corners: {}", self.red.len())?;
        for (x, y, q, g) in &self.red {
            writeln!(f, "  red {q} ({x}, {y}) gray {g}")?;
        }
        writeln!(f, "sites: {}", self.sites.len())?;
        for (k, x, y) in &self.sites {
            writeln!(f, "  order {k} ({x}, {y})")?;
        }
        if let Some(h) = &self.hint {
            write!(f, "hint: {h}")?;
        }
        Ok(())
    }
}

pub fn locate_structure(patch: &RobinsonPatch) -> Result<StructureReport> {
    let mut blue = Vec::new();
    let mut red = Vec::new();
    for y in 0..patch.height {
        for x in 0..patch.width {
            let Some(t) = patch.tile_at(x, y) else { continue };
            match (t.shape, t.quadrant()) {
                (Shape::Corner(Color::Blue), Some(q)) => blue.push((x, y, q)),
                (Shape::Corner(Color::Red), Some(q)) => red.push((x, y, q, t.i)),
                _ => {}
            }
        }
    }
    let mut sites = Vec::new();
    let mut gen = SupertileGenerator::default();
    let mut order = 1;
    while order <= DEFAULT_ORDER_CAP && supertile_side(order) <= patch.width.min(patch.height) {
        let side = supertile_side(order);
        let c = side / 2;
        for &(x, y, q, _) in &red {
            if x < c || y < c {
                continue;
            }
            let want = gen.get(SupertileId { quadrant: q, order })?;
            if patch.sub_patch(x - c, y - c, side, side).as_ref() == Some(&want) {
                sites.push((order, x, y));
            }
        }
        order += 1;
    }
    sites.sort_unstable();
    let hint = sites.iter().map(|s| s.0).max().map(|k| {
        format!("window-limited: largest complete supertile has order {k}; the infinite-supertile type is not visible")
    });
    Ok(StructureReport { blue, red, sites, hint })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
    Pgm,
}

impl std::str::FromStr for RenderFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ascii" | "txt" => Ok(RenderFormat::Ascii),
            "svg" => Ok(RenderFormat::Svg),
            "pgm" => Ok(RenderFormat::Pgm),
            _ => Err(Error::InvalidArgument(format!("unsupported format `{s}` (ascii, svg, pgm)"))),
        }
    }
}

pub fn render(patch: &RobinsonPatch, format: RenderFormat) -> Vec<u8> {
    match format {
        RenderFormat::Ascii => render_ascii(patch).into_bytes(),
        RenderFormat::Svg => render_svg(patch).into_bytes(),
        RenderFormat::Pgm => render_pgm(patch),
    }
}

/// Two characters per tile, top row first; `..` marks a hole.
pub fn render_ascii(patch: &RobinsonPatch) -> String {
    let mut out = String::new();
    for y in (0..patch.height).rev() {
        for x in 0..patch.width {
            match patch.tile_at(x, y) {
                Some(t) => out.push_str(&t.glyph()),
                None => out.push_str(".."),
            }
        }
        out.push('\n');
    }
    out
}

const SVG_CELL: usize = 24;

pub fn render_svg(patch: &RobinsonPatch) -> String {
    let (w, h) = (patch.width, patch.height);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        w * SVG_CELL,
        h * SVG_CELL,
        w * SVG_CELL,
        h * SVG_CELL
    );
    let c = SVG_CELL as f64;
    for y in 0..h {
        for x in 0..w {
            let Some(t) = patch.tile_at(x, y) else { continue };
            let (px, py) = ((x * SVG_CELL) as f64, ((h - 1 - y) * SVG_CELL) as f64);
            let fill = match t.shape {
                Shape::Corner(Color::Blue) => "#9ec5fe",
                Shape::Corner(Color::Red) => "#f1aeb5",
                Shape::Arrow(_) => "#ffffff",
            };
            let _ = writeln!(out, "<g id=\"t{x}-{y}\" data-tile=\"{}\">", t.id);
            let _ = writeln!(
                out,
                "<rect x=\"{px}\" y=\"{py}\" width=\"{c}\" height=\"{c}\" fill=\"{fill}\" stroke=\"#888\" stroke-width=\"0.5\"/>"
            );
            // Arms run from the side to the tile's middle line.
            for (side, marks) in t.arms.iter().enumerate() {
                for (p, &m) in marks.iter().enumerate() {
                    if m == Mark::None {
                        continue;
                    }
                    let off = 0.25 * (p as f64 + 1.0) * c;
                    let (x1, y1, x2, y2) = match side {
                        N => (px + off, py, px + off, py + c / 2.0),
                        S => (px + off, py + c, px + off, py + c / 2.0),
                        E => (px + c, py + c - off, px + c / 2.0, py + c - off),
                        _ => (px, py + c - off, px + c / 2.0, py + c - off),
                    };
                    let color = if m == Mark::In { "#222" } else { "#c00" };
                    let _ = writeln!(
                        out,
                        "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"{color}\" stroke-width=\"1\"/>"
                    );
                }
            }
            out.push_str("</g>\n");
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Binary PGM; each pixel is a tile id, 255 for a hole.
pub fn render_pgm(patch: &RobinsonPatch) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", patch.width, patch.height).into_bytes();
    for y in (0..patch.height).rev() {
        for x in 0..patch.width {
            out.push(patch.get(x, y).unwrap_or(255));
        }
    }
    out
}

/// `robipatch v1 <w> <h>`, then rows top first with `-` for holes.
pub fn serialize_patch(patch: &RobinsonPatch) -> String {
    let mut out = format!("robipatch v1 {} {}\n", patch.width, patch.height);
    for y in (0..patch.height).rev() {
        let row: Vec<String> = (0..patch.width)
            .map(|x| patch.get(x, y).map_or("-".to_string(), |id| id.to_string()))
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_patch(text: &str) -> Result<RobinsonPatch> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| Error::parse(1, 1, "empty patch file"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != "robipatch" || toks[1] != "v1" {
        return Err(Error::parse(1, 1, "expected header `robipatch v1 <w> <h>`"));
    }
    let dim = |s: &str, col: usize| {
        s.parse::<usize>()
            .map_err(|_| Error::parse(1, col, format!("expected a size, found `{s}`")))
    };
    let (w, h) = (dim(toks[2], 3)?, dim(toks[3], 4)?);
    let mut rows: Vec<Vec<Option<u8>>> = Vec::new();
    for (i, line) in lines {
        let row = line
            .split_whitespace()
            .enumerate()
            .map(|(k, t)| match t {
                "-" => Ok(None),
                _ => t
                    .parse::<u8>()
                    .ok()
                    .filter(|&id| (id as usize) < TILE_COUNT)
                    .map(Some)
                    .ok_or_else(|| Error::parse(i + 1, k + 1, format!("expected a tile id or `-`, found `{t}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if row.len() != w {
            return Err(Error::parse(i + 1, 1, format!("expected {w} cells, found {}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() != h {
        return Err(Error::parse(1, 1, format!("expected {h} rows, found {}", rows.len())));
    }
    rows.reverse();
    RobinsonPatch::from_rows(w, h, rows.into_iter().flatten().collect())
}

/// Number of 2x2 blocks without a blue corner whose four dominoes are allowed.
pub fn blue_free_square_count() -> usize {
    blue_free_squares().len()
}

fn blue_free_squares() -> Vec<[u8; 4]> {
    let t = tables();
    let ok = |id: u8| {
        let tl = &t.tiles[id as usize];
        !tl.is_blue() && !(tl.needs_distinct_bits() && tl.i == tl.j)
    };
    let ids: Vec<u8> = (0..TILE_COUNT as u8).filter(|&id| ok(id)).collect();
    let mut out = Vec::new();
    for &a in &ids {
        for &b in ids.iter().filter(|&&b| t.horizontal[a as usize][b as usize]) {
            for &c in ids.iter().filter(|&&c| t.vertical[a as usize][c as usize]) {
                for &d in &ids {
                    if t.horizontal[c as usize][d as usize] && t.vertical[b as usize][d as usize] {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

/// The Robinson shift as a 2D spec over tile ids.
///
/// Forbids dominoes breaking rules 1 or 3, single tiles breaking rule 4,
/// blue corners with a non-blue tile two steps away, and the blue-free 2x2
/// blocks that no smaller pattern already excludes.
pub fn robinson_spec() -> ShiftSpec {
    let t = tables();
    let c = |x: i64, y: i64| Coord::new(vec![x, y]);
    let mut forbidden = Vec::new();
    let mut push = |cells: Vec<(Coord, u8)>| {
        forbidden.push(
            Pattern::from_cells(2, cells.into_iter().map(|(p, id)| (p, id as Symbol))).expect("2D cells"),
        );
    };
    for a in 0..TILE_COUNT {
        for b in 0..TILE_COUNT {
            if !t.horizontal[a][b] {
                push(vec![(c(0, 0), a as u8), (c(1, 0), b as u8)]);
            }
            if !t.vertical[a][b] {
                push(vec![(c(0, 0), a as u8), (c(0, 1), b as u8)]);
            }
        }
    }
    for tl in &t.tiles {
        if tl.needs_distinct_bits() && tl.i == tl.j {
            push(vec![(c(0, 0), tl.id)]);
        }
    }
    for q in Quadrant::ALL {
        let b = blue_corner(q);
        for other in t.tiles.iter().filter(|x| !x.is_blue()) {
            push(vec![(c(0, 0), b), (c(2, 0), other.id)]);
            push(vec![(c(0, 0), other.id), (c(2, 0), b)]);
            push(vec![(c(0, 0), b), (c(0, 2), other.id)]);
            push(vec![(c(0, 0), other.id), (c(0, 2), b)]);
        }
    }
    for [a, b, cc, d] in blue_free_squares() {
        push(vec![(c(0, 0), a), (c(1, 0), b), (c(0, 1), cc), (c(1, 1), d)]);
    }
    ShiftSpec::new(2, (0..TILE_COUNT as Symbol).collect(), forbidden)
        .expect("valid by construction")
        .with_metadata("name", "robinson")
}

/// Counts of tiles by shape, for reports.
pub fn tile_census() -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for t in tile_set() {
        let key = match t.shape {
            Shape::Arrow(k) => format!("arrow-{}", k.letter()),
            Shape::Corner(Color::Blue) => "blue-corner".into(),
            Shape::Corner(Color::Red) => "red-corner".into(),
        };
        *out.entry(key).or_insert(0) += 1;
    }
    out
}
