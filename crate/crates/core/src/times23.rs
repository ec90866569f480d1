//! The x2x3 shift `X0` on `Z/6Z`.
//!
//! Moving one step east doubles a cell (plus a carry in {0,1}); moving one
//! step north triples it (plus a carry in {0,1,2}). A 2x2 square is fixed by
//! its two diagonal corners, so a whole square is fixed by its diagonal, and
//! the diagonal read in base 6 is a point of the circle.

use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pattern::{Coord, Pattern, Symbol};
use crate::spec::ShiftSpec;

pub type Digit = u8;
pub type Exact = Ratio<i128>;

/// Largest diagonal length handled by the exact sweeps.
pub const MAX_M: usize = 8;
/// Longest word `lambda_decode` accepts (6^40 fits comfortably in i128).
pub const MAX_DECODE_LEN: usize = 40;

pub fn east_ok(a: Digit, b: Digit) -> bool {
    (6 + b as i32 - 2 * a as i32).rem_euclid(6) <= 1
}

pub fn north_ok(a: Digit, c: Digit) -> bool {
    (6 + c as i32 - 3 * a as i32).rem_euclid(6) <= 2
}

pub fn x0_spec() -> ShiftSpec {
    let mut forbidden = Vec::new();
    let east = Coord::new(vec![1, 0]);
    let north = Coord::new(vec![0, 1]);
    for a in 0..6u8 {
        for b in 0..6u8 {
            for (ok, step) in [(east_ok(a, b), &east), (north_ok(a, b), &north)] {
                if !ok {
                    forbidden.push(
                        Pattern::from_cells(2, [(Coord::zero(2), a as Symbol), (step.clone(), b as Symbol)])
                            .expect("2D cells"),
                    );
                }
            }
        }
    }
    ShiftSpec::new(2, (0..6).collect(), forbidden)
        .expect("valid by construction")
        .with_metadata("name", "x2x3")
}

/// `a` at (0,0), `b` at (1,0), `c` at (0,1), `d` at (1,1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct X0Square {
    pub a: Digit,
    pub b: Digit,
    pub c: Digit,
    pub d: Digit,
}

impl X0Square {
    pub fn is_valid(&self) -> bool {
        [self.a, self.b, self.c, self.d].iter().all(|&x| x < 6)
            && east_ok(self.a, self.b)
            && north_ok(self.a, self.c)
            && east_ok(self.c, self.d)
            && north_ok(self.b, self.d)
    }
}

impl fmt::Display for X0Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}\n{} {}", self.c, self.d, self.a, self.b)
    }
}

/// All valid squares with the given diagonal corners.
pub fn squares_with_corners(k: Digit, l: Digit) -> Vec<X0Square> {
    let mut out = Vec::new();
    for b in 0..6 {
        for c in 0..6 {
            let q = X0Square { a: k, b, c, d: l };
            if q.is_valid() {
                out.push(q);
            }
        }
    }
    out
}

pub fn square_from_corners(k: Digit, l: Digit) -> Result<X0Square> {
    if k >= 6 || l >= 6 {
        return Err(Error::InvalidArgument(format!("corners must be in 0..6, got {k} and {l}")));
    }
    match squares_with_corners(k, l).as_slice() {
        [q] => Ok(*q),
        qs => Err(Error::Defect(format!("corners ({k},{l}) admit {} squares", qs.len()))),
    }
}

/// An `m x m` patch; `cells[y * m + x]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct X0Patch {
    m: usize,
    cells: Vec<Digit>,
}

impl X0Patch {
    pub fn side(&self) -> usize {
        self.m
    }

    pub fn get(&self, x: usize, y: usize) -> Digit {
        self.cells[y * self.m + x]
    }

    pub fn diagonal(&self) -> Vec<Digit> {
        (0..self.m).map(|n| self.get(n, n)).collect()
    }

    /// `(x_{(n+dx, n+dy)})` for `n` while it stays inside.
    pub fn shifted_diagonal(&self, dx: usize, dy: usize) -> Vec<Digit> {
        (0..self.m)
            .take_while(|n| n + dx < self.m && n + dy < self.m)
            .map(|n| self.get(n + dx, n + dy))
            .collect()
    }

    /// No forbidden domino inside the patch.
    pub fn is_admissible(&self) -> bool {
        let m = self.m;
        (0..m).all(|y| {
            (0..m).all(|x| {
                let v = self.get(x, y);
                (x + 1 == m || east_ok(v, self.get(x + 1, y))) && (y + 1 == m || north_ok(v, self.get(x, y + 1)))
            })
        })
    }

    pub fn to_pattern(&self) -> Pattern {
        let m = self.m;
        Pattern::from_cells(
            2,
            (0..m * m).map(|i| (Coord::new(vec![(i % m) as i64, (i / m) as i64]), self.cells[i] as Symbol)),
        )
        .expect("2D cells")
    }
}

impl fmt::Display for X0Patch {
    /// Top row first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for y in (0..self.m).rev() {
            let row: Vec<String> = (0..self.m).map(|x| self.get(x, y).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

fn check_digits(w: &[Digit]) -> Result<()> {
    match w.iter().find(|&&d| d >= 6) {
        Some(d) => Err(Error::InvalidArgument(format!("digit {d} is not in 0..6"))),
        None => Ok(()),
    }
}

/// Fillings of the `m x m` square with the given diagonal, up to `limit`.
///
/// Cells are assigned by distance from the diagonal, so each new cell already
/// has its west or south neighbour and its north or east neighbour fixed.
pub fn fillings(diag: &[Digit], limit: usize) -> Vec<X0Patch> {
    let m = diag.len();
    let mut order: Vec<(usize, usize)> = Vec::new();
    for d in 1..m {
        for n in 0..m - d {
            order.push((n + d, n));
            order.push((n, n + d));
        }
    }
    let mut cells = vec![0u8; m * m];
    for (n, &v) in diag.iter().enumerate() {
        cells[n * m + n] = v;
    }
    let mut out = Vec::new();

    fn fits(cells: &[Digit], m: usize, x: usize, y: usize, v: Digit) -> bool {
        // Below the diagonal (x > y) the known neighbours are west and north;
        // above it they are south and east.
        if x > y {
            east_ok(cells[y * m + x - 1], v) && north_ok(v, cells[(y + 1) * m + x])
        } else {
            north_ok(cells[(y - 1) * m + x], v) && east_ok(v, cells[y * m + x + 1])
        }
    }

    fn go(order: &[(usize, usize)], k: usize, cells: &mut Vec<Digit>, m: usize, limit: usize, out: &mut Vec<X0Patch>) {
        if out.len() >= limit {
            return;
        }
        let Some(&(x, y)) = order.get(k) else {
            out.push(X0Patch { m, cells: cells.clone() });
            return;
        };
        for v in 0..6 {
            if fits(cells, m, x, y, v) {
                cells[y * m + x] = v;
                go(order, k + 1, cells, m, limit, out);
            }
        }
    }

    go(&order, 0, &mut cells, m, limit, &mut out);
    out
}

pub fn all_words(m: usize) -> Vec<Vec<Digit>> {
    let mut words = vec![Vec::new()];
    for _ in 0..m {
        words = words
            .into_iter()
            .flat_map(|w| {
                (0..6).map(move |d| {
                    let mut w2 = w.clone();
                    w2.push(d);
                    w2
                })
            })
            .collect();
    }
    words
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterminismReport {
    pub m: usize,
    pub words: usize,
    pub unique: usize,
    /// Diagonal words with a filling count other than one (counts capped at 3).
    pub exceptions: Vec<(Vec<Digit>, usize)>,
}

impl DeterminismReport {
    pub fn all_unique(&self) -> bool {
        self.exceptions.is_empty()
    }
}

impl fmt::Display for DeterminismReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={}: {}/{} unique", self.m, self.unique, self.words)?;
        for (w, c) in &self.exceptions {
            write!(f, "\n  diagonal {w:?}: {c} fillings")?;
        }
        Ok(())
    }
}

fn check_m(m: usize) -> Result<()> {
    if !(1..=MAX_M).contains(&m) {
        return Err(Error::InvalidArgument(format!("m must be in 1..={MAX_M}, got {m}")));
    }
    Ok(())
}

pub fn verify_diagonal_determinism(m: usize) -> Result<DeterminismReport> {
    check_m(m)?;
    let words = all_words(m);
    let counts: Vec<usize> = words.par_iter().map(|w| fillings(w, 3).len()).collect();
    let exceptions: Vec<(Vec<Digit>, usize)> = words
        .iter()
        .zip(&counts)
        .filter(|(_, &c)| c != 1)
        .map(|(w, &c)| (w.clone(), c))
        .collect();
    Ok(DeterminismReport {
        m,
        words: words.len(),
        unique: counts.iter().filter(|&&c| c == 1).count(),
        exceptions,
    })
}

/// `sum w_n 6^(-n-1)`, exact.
pub fn lambda_decode(w: &[Digit]) -> Result<Exact> {
    if w.is_empty() || w.len() > MAX_DECODE_LEN {
        return Err(Error::InvalidArgument(format!(
            "word length must be in 1..={MAX_DECODE_LEN}, got {}",
            w.len()
        )));
    }
    check_digits(w)?;
    let num = w.iter().fold(0i128, |acc, &d| acc * 6 + d as i128);
    Ok(Ratio::new(num, 6i128.pow(w.len() as u32)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Encoded {
    pub patch: X0Patch,
    pub unique: bool,
}

/// The filling of the square whose diagonal is `digits`.
pub fn lambda_encode(digits: &[Digit]) -> Result<Encoded> {
    check_m(digits.len())?;
    check_digits(digits)?;
    let mut found = fillings(digits, 2);
    match found.len() {
        0 => Err(Error::Defect(format!("diagonal {digits:?} is not in the language"))),
        n => Ok(Encoded {
            patch: found.swap_remove(0),
            unique: n == 1,
        }),
    }
}

fn frac(x: Exact) -> Exact {
    x - x.floor()
}

/// Distance on the circle `R/Z`.
pub fn circle_distance(a: Exact, b: Exact) -> Exact {
    let d = frac(a - b);
    d.min(Exact::from_integer(1) - d)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibilityReport {
    pub m: usize,
    pub patches: usize,
    /// Truncation bounds for the doubling and tripling checks.
    pub bound_east: Exact,
    pub bound_north: Exact,
    pub worst_east: Exact,
    pub worst_north: Exact,
    pub failures: Vec<(Vec<Digit>, &'static str)>,
}

impl CompatibilityReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for CompatibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "m={}: {} patches; east shift vs x2: worst {} (bound {}); north shift vs x3: worst {} (bound {}); {} failures",
            self.m,
            self.patches,
            self.worst_east,
            self.bound_east,
            self.worst_north,
            self.bound_north,
            self.failures.len()
        )
    }
}

/// Checks that shifting east doubles and shifting north triples the decoded
/// diagonal, on every admissible `(m+1) x (m+1)` patch.
///
/// Both diagonals are truncated to `m` digits and both truncations round
/// down: the shifted word lies in `(kY - 6^-m, kY]` and `k` times the
/// original in `(kY - k 6^-m, kY]`, so they differ by less than `k 6^-m`.
pub fn multiplication_compatibility_check(m: usize) -> Result<CompatibilityReport> {
    check_m(m + 1)?;
    let unit = Exact::new(1, 6i128.pow(m as u32));
    let bound_east = unit * 2;
    let bound_north = unit * 3;
    let per_word: Vec<Vec<(Vec<Digit>, Exact, Exact)>> = all_words(m + 1)
        .par_iter()
        .map(|w| {
            fillings(w, usize::MAX)
                .into_iter()
                .map(|p| {
                    let y = lambda_decode(&p.diagonal()[..m]).expect("valid digits");
                    let east = lambda_decode(&p.shifted_diagonal(1, 0)[..m]).expect("valid digits");
                    let north = lambda_decode(&p.shifted_diagonal(0, 1)[..m]).expect("valid digits");
                    (
                        w.clone(),
                        circle_distance(east, y * 2),
                        circle_distance(north, y * 3),
                    )
                })
                .collect()
        })
        .collect();
    let mut report = CompatibilityReport {
        m,
        patches: 0,
        bound_east,
        bound_north,
        worst_east: Exact::from_integer(0),
        worst_north: Exact::from_integer(0),
        failures: Vec::new(),
    };
    for (w, de, dn) in per_word.into_iter().flatten() {
        report.patches += 1;
        report.worst_east = report.worst_east.max(de);
        report.worst_north = report.worst_north.max(dn);
        if de >= bound_east {
            report.failures.push((w.clone(), "east"));
        }
        if dn >= bound_north {
            report.failures.push((w, "north"));
        }
    }
    Ok(report)
}
