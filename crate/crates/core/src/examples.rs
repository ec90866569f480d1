//! Named example shifts with checkable, window-level claims.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lang::{check_convergence, is_locally_admissible, window_language, WindowLanguage};
use crate::one_dim::{isolated_verdict_1d, IsolationVerdict};
use crate::pattern::{Coord, Pattern, Symbol, Window};
use crate::spec::ShiftSpec;

const ARM_N: u8 = 1;
const ARM_E: u8 = 2;
const ARM_S: u8 = 4;
const ARM_W: u8 = 8;

// Corner/cross alphabet.
pub const BLANK: Symbol = 0;
pub const VERTICAL: Symbol = 1;
pub const HORIZONTAL: Symbol = 2;
pub const CROSS: Symbol = 3;
/// Lines to the south and east.
pub const CORNER_SE: Symbol = 4;
pub const CORNER_SW: Symbol = 5;
pub const CORNER_NE: Symbol = 6;
pub const CORNER_NW: Symbol = 7;

const LINE_ARMS: [u8; 8] = [
    0,
    ARM_N | ARM_S,
    ARM_E | ARM_W,
    ARM_N | ARM_E | ARM_S | ARM_W,
    ARM_S | ARM_E,
    ARM_S | ARM_W,
    ARM_N | ARM_E,
    ARM_N | ARM_W,
];

const LINE_GLYPHS: [char; 8] = ['.', '│', '─', '┼', '┌', '┐', '└', '┘'];

fn line_symbol(arms: u8) -> Symbol {
    LINE_ARMS.iter().position(|&a| a == arms).expect("closed under symmetries") as Symbol
}

fn turn_arms(arms: u8) -> u8 {
    // Counterclockwise: N -> W, E -> N, S -> E, W -> S.
    let mut out = 0;
    if arms & ARM_N != 0 {
        out |= ARM_W;
    }
    if arms & ARM_E != 0 {
        out |= ARM_N;
    }
    if arms & ARM_S != 0 {
        out |= ARM_E;
    }
    if arms & ARM_W != 0 {
        out |= ARM_S;
    }
    out
}

fn mirror_arms(arms: u8) -> u8 {
    (arms & (ARM_N | ARM_S)) | if arms & ARM_E != 0 { ARM_W } else { 0 } | if arms & ARM_W != 0 { ARM_E } else { 0 }
}

/// A 2x2 block as `[(0,0), (1,0), (0,1), (1,1)]`.
pub type Block = [Symbol; 4];

fn turn_block(b: Block) -> Block {
    // Cell (x, y) moves to (1 - y, x).
    let t = |s: Symbol| line_symbol(turn_arms(LINE_ARMS[s as usize]));
    [t(b[2]), t(b[0]), t(b[3]), t(b[1])]
}

fn mirror_block(b: Block) -> Block {
    let m = |s: Symbol| line_symbol(mirror_arms(LINE_ARMS[s as usize]));
    [m(b[1]), m(b[0]), m(b[3]), m(b[2])]
}

/// The seven allowed blocks as drawn, before any symmetry.
pub fn corner_cross_listed() -> [Block; 7] {
    [
        [VERTICAL, VERTICAL, VERTICAL, VERTICAL],
        [VERTICAL, CORNER_NE, VERTICAL, VERTICAL],
        [VERTICAL, CORNER_NE, VERTICAL, CORNER_SE],
        [VERTICAL, CORNER_SE, CORNER_SE, HORIZONTAL],
        [VERTICAL, CORNER_SE, CROSS, HORIZONTAL],
        [CORNER_NE, CORNER_NW, CORNER_SE, CORNER_SW],
        [CROSS, CROSS, CROSS, CROSS],
    ]
}

/// Allowed blocks closed under rotations, and under reflections when asked.
pub fn corner_cross_allowed(reflections: bool) -> BTreeSet<Block> {
    let mut out = BTreeSet::new();
    for b in corner_cross_listed() {
        let mut cur = b;
        for _ in 0..4 {
            out.insert(cur);
            if reflections {
                out.insert(mirror_block(cur));
            }
            cur = turn_block(cur);
        }
    }
    out
}

fn block_spec(allowed: &BTreeSet<Block>, name: &str) -> ShiftSpec {
    let cells = [(0, 0), (1, 0), (0, 1), (1, 1)];
    let mut forbidden = Vec::new();
    for code in 0..8usize.pow(4) {
        let b: Block = [0, 1, 2, 3].map(|k| ((code >> (3 * k)) & 7) as Symbol);
        if !allowed.contains(&b) {
            let p = Pattern::from_cells(
                2,
                cells.iter().zip(b).map(|(&(x, y), s)| (Coord::new(vec![x, y]), s)),
            )
            .expect("2D cells");
            forbidden.push(p);
        }
    }
    ShiftSpec::new(2, (0..8).collect(), forbidden)
        .expect("valid by construction")
        .with_metadata("name", name)
}

/// Every 2x2 block outside the listed ones and their rotations and reflections.
pub fn corner_cross_spec() -> ShiftSpec {
    block_spec(&corner_cross_allowed(true), "corner-cross")
}

/// Same, closing the listed blocks under rotations only.
pub fn corner_cross_spec_rotations_only() -> ShiftSpec {
    block_spec(&corner_cross_allowed(false), "corner-cross-rotations")
}

/// Symbol of `x_n` at `(x, y)`: crosses on the `(2n+1)` lattice, grid lines
/// through them, and concentric squares filling each `2n x 2n` hole.
pub fn xn_symbol(n: u32, x: i64, y: i64) -> Symbol {
    let p = 2 * n as i64 + 1;
    let (a, b) = (x.rem_euclid(p), y.rem_euclid(p));
    match (a, b) {
        (0, 0) => CROSS,
        (0, _) => VERTICAL,
        (_, 0) => HORIZONTAL,
        _ => {
            let last = 2 * n as i64 - 1;
            let (a, b) = (a - 1, b - 1);
            let ring = a.min(b).min(last - a).min(last - b);
            let (left, right) = (a == ring, a == last - ring);
            let (bottom, top) = (b == ring, b == last - ring);
            match (left, right, bottom, top) {
                (true, _, true, _) => CORNER_NE,
                (true, _, _, true) => CORNER_SE,
                (_, true, true, _) => CORNER_NW,
                (_, true, _, true) => CORNER_SW,
                (true, _, _, _) | (_, true, _, _) => VERTICAL,
                _ => HORIZONTAL,
            }
        }
    }
}

fn sample(window: &Window, f: impl Fn(&[i64]) -> Symbol) -> Pattern {
    let cells: Vec<(Coord, Symbol)> = window
        .cells()
        .into_iter()
        .map(|c| {
            let s = f(c.components());
            (c, s)
        })
        .collect();
    Pattern::from_cells(window.dim(), cells).expect("window cells")
}

pub fn sample_xn(n: u32, window: &Window) -> Result<Pattern> {
    if n == 0 || window.dim() != 2 {
        return Err(Error::InvalidArgument("sample_xn needs n >= 1 and a 2D window".into()));
    }
    Ok(sample(window, |c| xn_symbol(n, c[0], c[1])))
}

pub fn sample_plus(window: &Window) -> Result<Pattern> {
    if window.dim() != 2 {
        return Err(Error::InvalidArgument("sample_plus needs a 2D window".into()));
    }
    Ok(sample(window, |_| CROSS))
}

/// All `2x2` blocks of a pattern whose four cells are present.
pub fn blocks_of(p: &Pattern) -> Vec<Block> {
    let mut out = Vec::new();
    for c in p.support() {
        let at = |dx: i64, dy: i64| p.get(&c.add(&Coord::new(vec![dx, dy])));
        if let (Some(a), Some(b), Some(cc), Some(d)) = (at(0, 0), at(1, 0), at(0, 1), at(1, 1)) {
            out.push([a, b, cc, d]);
        }
    }
    out
}

// Arrow alphabet.
pub const SQUARE: Symbol = 0;
pub const UP: Symbol = 1;
pub const DOWN: Symbol = 2;
pub const RIGHT: Symbol = 3;
pub const LEFT: Symbol = 4;

const ARROW_GLYPHS: [char; 5] = ['□', '↑', '↓', '→', '←'];

/// The configuration whose orbit closure is the arrow shift.
pub fn arrow_symbol(x: i64, y: i64) -> Symbol {
    match (x.signum(), y.signum()) {
        (_, 1) => UP,
        (_, -1) => DOWN,
        (1, 0) => RIGHT,
        (-1, 0) => LEFT,
        _ => SQUARE,
    }
}

/// Vertical dominoes `(lower, upper)` that occur in the orbit closure.
const ARROW_VERTICAL: [(Symbol, Symbol); 8] = [
    (UP, UP),
    (DOWN, DOWN),
    (DOWN, RIGHT),
    (DOWN, LEFT),
    (DOWN, SQUARE),
    (RIGHT, UP),
    (LEFT, UP),
    (SQUARE, UP),
];

/// Horizontal dominoes `(left, right)` that occur in the orbit closure.
const ARROW_HORIZONTAL: [(Symbol, Symbol); 6] = [
    (UP, UP),
    (DOWN, DOWN),
    (RIGHT, RIGHT),
    (LEFT, LEFT),
    (LEFT, SQUARE),
    (SQUARE, RIGHT),
];

/// Symbols `0..5` are square, up, down, right, left; every domino not seen
/// in the defining configuration or its limits is forbidden.
pub fn arrow_shift_spec() -> ShiftSpec {
    let mut forbidden = Vec::new();
    let e = |x, y| Coord::new(vec![x, y]);
    for a in 0..5 {
        for b in 0..5 {
            if !ARROW_VERTICAL.contains(&(a, b)) {
                forbidden.push(Pattern::from_cells(2, [(e(0, 0), a), (e(0, 1), b)]).expect("2D"));
            }
            if !ARROW_HORIZONTAL.contains(&(a, b)) {
                forbidden.push(Pattern::from_cells(2, [(e(0, 0), a), (e(1, 0), b)]).expect("2D"));
            }
        }
    }
    ShiftSpec::new(2, (0..5).collect(), forbidden)
        .expect("valid by construction")
        .with_metadata("name", "arrow")
}

/// The arrow shift without the square symbol.
pub fn arrow_maximal_subsystem_spec() -> ShiftSpec {
    let base = arrow_shift_spec();
    let mut forbidden = base.forbidden().to_vec();
    forbidden.push(Pattern::from_cells(2, [(Coord::zero(2), SQUARE)]).expect("2D"));
    ShiftSpec::new(2, base.alphabet().to_vec(), forbidden)
        .expect("valid")
        .with_metadata("name", "arrow-without-square")
}

/// `{0, 1}` with two 1s at distance `d <= k` forbidden, in one dimension.
pub fn sunny_side_up_spec(k: usize) -> Result<ShiftSpec> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let words: Vec<Vec<Symbol>> = (1..=k)
        .map(|d| {
            let mut w = vec![0; d + 1];
            w[0] = 1;
            w[d] = 1;
            w
        })
        .collect();
    let refs: Vec<&[Symbol]> = words.iter().map(Vec::as_slice).collect();
    Ok(ShiftSpec::forbid_words(vec![0, 1], &refs)?.with_metadata("name", format!("sunny-{k}")))
}

/// Same in two dimensions, with the sup distance.
pub fn sunny_side_up_spec_2d(k: usize) -> Result<ShiftSpec> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let k = k as i64;
    let mut forbidden = Vec::new();
    for dx in -k..=k {
        for dy in -k..=k {
            if (dx, dy) > (0, 0) {
                forbidden.push(Pattern::from_cells(2, [(Coord::zero(2), 1), (Coord::new(vec![dx, dy]), 1)])?);
            }
        }
    }
    Ok(ShiftSpec::new(2, vec![0, 1], forbidden)?.with_metadata("name", format!("sunny2d-{k}")))
}

/// `X_1 ⊇ X_2 ⊇ ... ⊇ X_kmax`, one dimension.
pub fn sunny_side_up_approximants(k_max: usize) -> Result<Vec<ShiftSpec>> {
    if k_max == 0 {
        return Err(Error::InvalidArgument("k_max must be at least 1".into()));
    }
    (1..=k_max).map(sunny_side_up_spec).collect()
}

pub fn sunny_side_up_approximants_2d(k_max: usize) -> Result<Vec<ShiftSpec>> {
    if k_max == 0 {
        return Err(Error::InvalidArgument("k_max must be at least 1".into()));
    }
    (1..=k_max).map(sunny_side_up_spec_2d).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimResult {
    pub example: &'static str,
    pub id: &'static str,
    pub statement: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for ClaimResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}/{}: {} ({})", self.example, self.id, self.statement, self.detail)
    }
}

type Check = fn() -> Result<(bool, String)>;

#[derive(Clone, Copy)]
pub struct Claim {
    pub id: &'static str,
    pub statement: &'static str,
    check: Check,
}

impl fmt::Debug for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Claim").field("id", &self.id).finish()
    }
}

#[derive(Clone, Debug)]
pub struct NamedExample {
    pub name: &'static str,
    pub summary: &'static str,
    pub spec: ShiftSpec,
    pub claims: Vec<Claim>,
    sample: fn(u32) -> Pattern,
    glyphs: &'static [char],
}

impl NamedExample {
    pub fn check(&self) -> Vec<ClaimResult> {
        self.claims
            .par_iter()
            .map(|c| {
                let (passed, detail) = match (c.check)() {
                    Ok(r) => r,
                    Err(e) => (false, format!("error: {e}")),
                };
                ClaimResult {
                    example: self.name,
                    id: c.id,
                    statement: c.statement,
                    passed,
                    detail,
                }
            })
            .collect()
    }

    /// The example's sample configuration on `B_radius`.
    pub fn sample(&self, radius: u32) -> Pattern {
        (self.sample)(radius)
    }

    pub fn glyph(&self, s: Symbol) -> char {
        self.glyphs.get(s as usize).copied().unwrap_or('?')
    }

    pub fn render(&self, radius: u32, format: &str) -> Result<Vec<u8>> {
        let p = self.sample(radius);
        match format {
            "ascii" | "txt" => Ok(render_text(&p, |s| self.glyph(s)).into_bytes()),
            "svg" => Ok(render_svg(&p, |s| self.glyph(s)).into_bytes()),
            _ => Err(Error::InvalidArgument(format!("unsupported format `{format}` (ascii, svg)"))),
        }
    }
}

/// One line per row, top row first; one-dimensional patterns are one line.
pub fn render_text(p: &Pattern, glyph: impl Fn(Symbol) -> char) -> String {
    let Some((lo, hi)) = p.bounding_box() else {
        return String::new();
    };
    let (ylo, yhi) = if p.dim() >= 2 { (lo[1], hi[1]) } else { (0, 0) };
    let mut out = String::new();
    for y in (ylo..=yhi).rev() {
        for x in lo[0]..=hi[0] {
            let c = if p.dim() >= 2 { vec![x, y] } else { vec![x] };
            out.push(p.get(&Coord::new(c)).map_or(' ', &glyph));
        }
        out.push('\n');
    }
    out
}

pub fn render_svg(p: &Pattern, glyph: impl Fn(Symbol) -> char) -> String {
    const CELL: i64 = 20;
    let Some((lo, hi)) = p.bounding_box() else {
        return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"0\" height=\"0\"></svg>\n".into();
    };
    let (ylo, yhi) = if p.dim() >= 2 { (lo[1], hi[1]) } else { (0, 0) };
    let (w, h) = ((hi[0] - lo[0] + 1) * CELL, (yhi - ylo + 1) * CELL);
    let mut out = format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n"
    );
    for (c, s) in p.cells() {
        let x = (c.components()[0] - lo[0]) * CELL;
        let y = if p.dim() >= 2 { (yhi - c.components()[1]) * CELL } else { 0 };
        let _ = writeln!(
            out,
            "<g><rect x=\"{x}\" y=\"{y}\" width=\"{CELL}\" height=\"{CELL}\" fill=\"#fff\" stroke=\"#888\" stroke-width=\"0.5\"/><text x=\"{}\" y=\"{}\" font-size=\"16\" text-anchor=\"middle\">{}</text></g>",
            x + CELL / 2,
            y + CELL - 5,
            glyph(s)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn all_blocks_admissible(spec: &ShiftSpec, p: &Pattern, margin: u32) -> Result<(bool, usize)> {
    let mut count = 0;
    for b in blocks_of(p) {
        let q = Pattern::from_cells(
            2,
            [(0, 0), (1, 0), (0, 1), (1, 1)]
                .iter()
                .zip(b)
                .map(|(&(x, y), s)| (Coord::new(vec![x, y]), s)),
        )?;
        if !is_locally_admissible(spec, &q, margin)? {
            return Ok((false, count));
        }
        count += 1;
    }
    Ok((true, count))
}

fn corner_cross_claims() -> Vec<Claim> {
    vec![
        Claim {
            id: "x1-blocks",
            statement: "every 2x2 block of x_1 on B_5 is locally admissible",
            check: || {
                let p = sample_xn(1, &Window::centered(2, 5))?;
                let (ok, n) = all_blocks_admissible(&corner_cross_spec(), &p, 1)?;
                Ok((ok, format!("{n} blocks checked")))
            },
        },
        Claim {
            id: "xn-blocks",
            statement: "every 2x2 block of x_n, n <= 4, on B_9 is an allowed block",
            check: || {
                let allowed = corner_cross_allowed(true);
                for n in 1..=4 {
                    let p = sample_xn(n, &Window::centered(2, 9))?;
                    if let Some(b) = blocks_of(&p).into_iter().find(|b| !allowed.contains(b)) {
                        return Ok((false, format!("x_{n} has block {b:?}")));
                    }
                }
                Ok((true, "n = 1..4".into()))
            },
        },
        Claim {
            id: "plus-window",
            statement: "x_+ on B_3 is all crosses and admissible",
            check: || {
                let p = sample_plus(&Window::centered(2, 3))?;
                let all = p.cells().all(|(_, s)| s == CROSS);
                Ok((all && is_locally_admissible(&corner_cross_spec(), &p, 1)?, format!("{} cells", p.len())))
            },
        },
        Claim {
            id: "rotation-closed",
            statement: "the allowed-block table is closed under rotation",
            check: || {
                let a = corner_cross_allowed(true);
                let closed = a.iter().all(|&b| a.contains(&turn_block(b)));
                Ok((closed, format!("{} allowed blocks", a.len())))
            },
        },
        Claim {
            id: "rotations-only-gap",
            statement: "closing the drawn blocks under rotations alone misses blocks of x_2",
            check: || {
                let rot = corner_cross_allowed(false);
                let p = sample_xn(2, &Window::centered(2, 5))?;
                let missing: BTreeSet<Block> = blocks_of(&p).into_iter().filter(|b| !rot.contains(b)).collect();
                Ok((!missing.is_empty(), format!("{} distinct blocks of x_2 missing", missing.len())))
            },
        },
        Claim {
            id: "blank-excluded",
            statement: "the blank symbol occurs in no allowed block",
            check: || Ok((corner_cross_allowed(true).iter().all(|b| !b.contains(&BLANK)), "table scan".into())),
        },
    ]
}

/// Windows of the arrow configurations on `B_r`, from the configurations themselves.
pub fn arrow_windows(r: u32) -> BTreeSet<Pattern> {
    let r = r as i64;
    let window = Window::centered(2, r as u32);
    let mut out = BTreeSet::new();
    // Horizon row h and square column c relative to the window; values past
    // the edge stand for every farther position.
    for h in -r - 1..=r + 1 {
        for c in -r - 1..=r + 1 {
            out.insert(sample(&window, |u| arrow_symbol(u[0] - c, u[1] - h)));
        }
    }
    out
}

fn arrow_claims() -> Vec<Claim> {
    vec![
        Claim {
            id: "defining-window",
            statement: "the defining configuration on B_2 is admissible",
            check: || {
                let p = sample(&Window::centered(2, 2), |u| arrow_symbol(u[0], u[1]));
                Ok((is_locally_admissible(&arrow_shift_spec(), &p, 1)?, "margin 1".into()))
            },
        },
        Claim {
            id: "all-up",
            statement: "an all-up window on B_2 is admissible",
            check: || {
                let p = sample(&Window::centered(2, 2), |_| UP);
                Ok((is_locally_admissible(&arrow_shift_spec(), &p, 1)?, "margin 1".into()))
            },
        },
        Claim {
            id: "two-squares",
            statement: "two squares in one row at distance 2 are inadmissible",
            check: || {
                let p = Pattern::from_cells(2, [(Coord::new(vec![0, 0]), SQUARE), (Coord::new(vec![2, 0]), SQUARE)])?;
                Ok((!is_locally_admissible(&arrow_shift_spec(), &p, 1)?, "margin 1".into()))
            },
        },
        Claim {
            id: "orbit-closure",
            statement: "window languages on B_1 and B_2 equal the windows of the configurations",
            check: || {
                let spec = arrow_shift_spec();
                for r in 1..=2 {
                    let lang: BTreeSet<Pattern> = window_language(&spec, &Window::centered(2, r), 2)?.patterns().collect();
                    if lang != arrow_windows(r) {
                        return Ok((false, format!("radius {r} differs")));
                    }
                }
                Ok((true, "radii 1, 2".into()))
            },
        },
        Claim {
            id: "square-free",
            statement: "square-free windows are exactly the windows of the maximal subsystem",
            check: || {
                let w = Window::centered(2, 1);
                let free: BTreeSet<Pattern> = window_language(&arrow_shift_spec(), &w, 2)?
                    .patterns()
                    .filter(|p| p.cells().all(|(_, s)| s != SQUARE))
                    .collect();
                let sub: BTreeSet<Pattern> = window_language(&arrow_maximal_subsystem_spec(), &w, 2)?.patterns().collect();
                Ok((free == sub, format!("{} windows", sub.len())))
            },
        },
    ]
}

fn nested(a: &WindowLanguage, b: &WindowLanguage) -> bool {
    a.patterns().all(|p| b.contains(&p))
}

fn sunny_claims() -> Vec<Claim> {
    vec![
        Claim {
            id: "k1-not-isolated",
            statement: "the k = 1 approximant is not isolated, with a valid middle cycle",
            check: || match isolated_verdict_1d(&sunny_side_up_spec(1)?, 4)? {
                IsolationVerdict::NotIsolated { graph, certificate, .. } => {
                    Ok((certificate.validate(&graph), certificate.describe(&graph)))
                }
                v => Ok((false, v.to_string())),
            },
        },
        Claim {
            id: "decreasing",
            statement: "window languages of X_1 ⊇ ... ⊇ X_4 are nested on B_0..B_3",
            check: || {
                let ladder = sunny_side_up_approximants(4)?;
                for s in 0..=3 {
                    let w = Window::centered(1, s);
                    let langs = ladder
                        .iter()
                        .map(|x| window_language(x, &w, 2))
                        .collect::<Result<Vec<_>>>()?;
                    if !langs.windows(2).all(|p| nested(&p[1], &p[0])) {
                        return Ok((false, format!("not nested at radius {s}")));
                    }
                }
                Ok((true, "k = 1..4".into()))
            },
        },
        Claim {
            id: "converges",
            statement: "X_1..X_5 converge to X_6 on B_0..B_2",
            check: || {
                let ladder = sunny_side_up_approximants(6)?;
                let r = check_convergence(&ladder[..5], &ladder[5], 2, 2)?;
                Ok((r.consistent(), r.to_lines().trim_end().replace('\n', "; ")))
            },
        },
    ]
}

pub fn named_examples() -> Vec<NamedExample> {
    vec![
        NamedExample {
            name: "corner-cross",
            summary: "lines, crosses and nested squares; x_n has crosses on (2n+1)Z^2",
            spec: corner_cross_spec(),
            claims: corner_cross_claims(),
            sample: |r| sample_xn(1, &Window::centered(2, r)).expect("2D"),
            glyphs: &LINE_GLYPHS,
        },
        NamedExample {
            name: "arrow",
            summary: "up above the horizon, down below, right/left on it, a square at the origin",
            spec: arrow_shift_spec(),
            claims: arrow_claims(),
            sample: |r| sample(&Window::centered(2, r), |u| arrow_symbol(u[0], u[1])),
            glyphs: &ARROW_GLYPHS,
        },
        NamedExample {
            name: "sunny-side-up",
            summary: "approximants forbidding two 1s within distance k",
            spec: sunny_side_up_spec(3).expect("k >= 1"),
            claims: sunny_claims(),
            sample: |r| sample(&Window::centered(1, r), |u| Symbol::from(u[0] == 0)),
            glyphs: &['0', '1'],
        },
    ]
}

pub fn find_example(name: &str) -> Result<NamedExample> {
    named_examples()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::InvalidArgument(format!("no example named `{name}`")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetries_act_on_arms() {
        assert_eq!(line_symbol(turn_arms(LINE_ARMS[CORNER_SE as usize])), CORNER_NE);
        assert_eq!(line_symbol(mirror_arms(LINE_ARMS[CORNER_SE as usize])), CORNER_SW);
        for b in corner_cross_listed() {
            let mut c = b;
            for _ in 0..4 {
                c = turn_block(c);
            }
            assert_eq!(c, b);
            assert_eq!(mirror_block(mirror_block(b)), b);
        }
    }

    #[test]
    fn x1_rows() {
        let p = sample_xn(1, &Window::centered(2, 3)).unwrap();
        let text = render_text(&p, |s| LINE_GLYPHS[s as usize]);
        assert_eq!(text.lines().next(), Some("┼──┼──┼"));
        assert_eq!(text.lines().nth(1), Some("│┌┐│┌┐│"));
    }

    #[test]
    fn arrow_configuration() {
        assert_eq!(arrow_symbol(0, 0), SQUARE);
        assert_eq!(arrow_symbol(-3, 0), LEFT);
        assert_eq!(arrow_symbol(5, -1), DOWN);
    }

    #[test]
    fn sunny_words() {
        let s = sunny_side_up_spec(2).unwrap();
        assert_eq!(s.forbidden().len(), 2);
        assert!(sunny_side_up_approximants(0).is_err());
    }
}
