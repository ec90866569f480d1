//! Window languages with admissibility margins, the resolution distance, and
//! convergence reports.
//!
//! A pattern on a window `U` is *certified at margin m* when it extends to
//! `U` inflated by `m` on every axis without any forbidden pattern occurring.
//! In dimension 1 this is exact once the margin is large enough (see
//! [`stabilization_margin`]); in higher dimensions it is an over-approximation
//! of the globally admissible language and is always reported as such.
//!
//! The search assigns cells in a fixed order (window cells first, then the
//! margin, each lexicographically) and checks a forbidden occurrence as soon
//! as its last cell is assigned. Completion of the margin only depends on the
//! assigned cells that still share a forbidden-pattern placement with an
//! unassigned cell, so completion results are memoized on that frontier.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::pattern::{inflate, Coord, Pattern, Symbol, Window};
use crate::spec::ShiftSpec;

/// Default cap on the number of cell assignments per query.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

const MEMO_CAP: usize = 1 << 22;

type Idx = u16;

struct Shape {
    offsets: Vec<Coord>,
    bad: HashSet<Box<[Idx]>>,
}

/// Forbidden patterns grouped by support, symbols replaced by alphabet indices.
struct Compiled {
    alphabet: Vec<Symbol>,
    shapes: Vec<Shape>,
}

impl Compiled {
    fn new(spec: &ShiftSpec) -> Self {
        let mut by_support: HashMap<Vec<Coord>, HashSet<Box<[Idx]>>> = HashMap::new();
        for p in spec.forbidden() {
            let support: Vec<Coord> = p.support().cloned().collect();
            let key: Box<[Idx]> = p
                .symbols()
                .iter()
                .map(|&s| spec.symbol_index(s).expect("validated spec") as Idx)
                .collect();
            by_support.entry(support).or_default().insert(key);
        }
        let mut shapes: Vec<Shape> = by_support
            .into_iter()
            .map(|(offsets, bad)| Shape { offsets, bad })
            .collect();
        shapes.sort_by(|a, b| a.offsets.cmp(&b.offsets));
        Compiled {
            alphabet: spec.alphabet().to_vec(),
            shapes,
        }
    }
}

struct Placement {
    shape: usize,
    cells: Vec<usize>,
}

/// A finite region with its assignment order and precomputed checks.
struct Region {
    cells: Vec<Coord>,
    /// Number of leading cells that are enumerated (or fixed) rather than searched.
    head: usize,
    /// `checks[k]`: placements whose last cell in assignment order is `k`.
    checks: Vec<Vec<Placement>>,
    /// `frontier[k]`: cells `< k` that share a placement with some cell `>= k`.
    frontier: Vec<Vec<usize>>,
}

impl Region {
    fn new(compiled: &Compiled, head: Vec<Coord>, tail: Vec<Coord>) -> Self {
        let head_len = head.len();
        let mut cells = head;
        cells.extend(tail);
        let index: HashMap<&Coord, usize> = cells.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let n = cells.len();
        let mut checks: Vec<Vec<Placement>> = (0..n).map(|_| Vec::new()).collect();
        let mut last_use: Vec<usize> = (0..n).collect();
        for (si, shape) in compiled.shapes.iter().enumerate() {
            for anchor in &cells {
                let idx: Option<Vec<usize>> = shape
                    .offsets
                    .iter()
                    .map(|o| index.get(&anchor.add(o)).copied())
                    .collect();
                let Some(idx) = idx else { continue };
                let last = *idx.iter().max().expect("nonempty pattern");
                for &i in &idx {
                    last_use[i] = last_use[i].max(last);
                }
                checks[last].push(Placement { shape: si, cells: idx });
            }
        }
        let mut frontier = vec![Vec::new(); n + 1];
        for (i, &l) in last_use.iter().enumerate() {
            for f in frontier.iter_mut().take(l + 1).skip(i + 1) {
                f.push(i);
            }
        }
        Region {
            cells,
            head: head_len,
            checks,
            frontier,
        }
    }
}

/// Outcome of a search that respects a node budget.
struct Search<'a> {
    compiled: &'a Compiled,
    region: &'a Region,
    assign: Vec<Idx>,
    nodes: u64,
    budget: u64,
    memo: HashMap<Vec<Idx>, bool>,
    scratch: Vec<Idx>,
}

impl<'a> Search<'a> {
    fn new(compiled: &'a Compiled, region: &'a Region, budget: u64) -> Self {
        Search {
            compiled,
            region,
            assign: vec![0; region.cells.len()],
            nodes: 0,
            budget,
            memo: HashMap::new(),
            scratch: Vec::new(),
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(Error::BudgetExhausted { budget: self.budget })
        } else {
            Ok(())
        }
    }

    /// True when no forbidden pattern completes at cell `k`.
    fn consistent_at(&mut self, k: usize) -> bool {
        for pl in &self.region.checks[k] {
            self.scratch.clear();
            self.scratch.extend(pl.cells.iter().map(|&i| self.assign[i]));
            if self.compiled.shapes[pl.shape].bad.contains(self.scratch.as_slice()) {
                return false;
            }
        }
        true
    }

    /// Whether cells `k..` can be completed.
    fn complete(&mut self, k: usize) -> Result<bool> {
        let n = self.region.cells.len();
        if k == n {
            return Ok(true);
        }
        let mut key = Vec::with_capacity(self.region.frontier[k].len() + 1);
        key.push(k as Idx);
        key.extend(self.region.frontier[k].iter().map(|&i| self.assign[i]));
        if let Some(&known) = self.memo.get(&key) {
            return Ok(known);
        }
        let mut found = false;
        for v in 0..self.compiled.alphabet.len() {
            self.tick()?;
            self.assign[k] = v as Idx;
            if self.consistent_at(k) && self.complete(k + 1)? {
                found = true;
                break;
            }
        }
        if self.memo.len() < MEMO_CAP {
            self.memo.insert(key, found);
        }
        Ok(found)
    }

    fn enumerate(&mut self, k: usize, out: &mut Vec<Vec<Idx>>) -> Result<()> {
        if k == self.region.head {
            if self.complete(k)? {
                out.push(self.assign[..k].to_vec());
            }
            return Ok(());
        }
        for v in 0..self.compiled.alphabet.len() {
            self.tick()?;
            self.assign[k] = v as Idx;
            if self.consistent_at(k) {
                self.enumerate(k + 1, out)?;
            }
        }
        Ok(())
    }
}

/// Patterns on a window certified at a given margin, in deterministic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowLanguage {
    dim: usize,
    window: Window,
    margin: u32,
    cells: Vec<Coord>,
    /// Symbol rows aligned with `cells`, sorted lexicographically.
    rows: Vec<Vec<Symbol>>,
    nodes: u64,
}

impl WindowLanguage {
    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn margin(&self) -> u32 {
        self.margin
    }

    pub fn cells(&self) -> &[Coord] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Symbol sequences over the sorted window cells.
    pub fn rows(&self) -> &[Vec<Symbol>] {
        &self.rows
    }

    /// Number of search nodes spent.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn patterns(&self) -> impl Iterator<Item = Pattern> + '_ {
        self.rows.iter().map(move |r| {
            Pattern::from_cells(self.dim, self.cells.iter().cloned().zip(r.iter().copied()))
                .expect("window cells share the dimension")
        })
    }

    pub fn contains(&self, p: &Pattern) -> bool {
        if p.len() != self.cells.len() {
            return false;
        }
        let row: Option<Vec<Symbol>> = self.cells.iter().map(|c| p.get(c)).collect();
        match row {
            Some(r) => self.rows.binary_search(&r).is_ok(),
            None => false,
        }
    }

    /// Same window contents, ignoring the margin and search statistics.
    pub fn same_patterns(&self, other: &WindowLanguage) -> bool {
        self.cells == other.cells && self.rows == other.rows
    }
}

pub fn window_language(spec: &ShiftSpec, window: &Window, margin: u32) -> Result<WindowLanguage> {
    window_language_with_budget(spec, window, margin, DEFAULT_BUDGET)
}

pub fn window_language_with_budget(
    spec: &ShiftSpec,
    window: &Window,
    margin: u32,
    budget: u64,
) -> Result<WindowLanguage> {
    if window.dim() != spec.dim() {
        return Err(Error::DimensionMismatch {
            expected: spec.dim(),
            found: window.dim(),
        });
    }
    let compiled = Compiled::new(spec);
    let cells = window.cells();
    let inflated = inflate(&cells, spec.dim(), margin);
    let tail: Vec<Coord> = inflated
        .into_iter()
        .filter(|c| cells.binary_search(c).is_err())
        .collect();
    let region = Region::new(&compiled, cells.clone(), tail);
    let mut search = Search::new(&compiled, &region, budget);
    let mut found = Vec::new();
    search.enumerate(0, &mut found)?;
    let rows = found
        .into_iter()
        .map(|r| r.into_iter().map(|i| compiled.alphabet[i as usize]).collect())
        .collect();
    Ok(WindowLanguage {
        dim: spec.dim(),
        window: window.clone(),
        margin,
        cells,
        rows,
        nodes: search.nodes,
    })
}

pub fn is_locally_admissible(spec: &ShiftSpec, p: &Pattern, margin: u32) -> Result<bool> {
    is_locally_admissible_with_budget(spec, p, margin, DEFAULT_BUDGET)
}

pub fn is_locally_admissible_with_budget(
    spec: &ShiftSpec,
    p: &Pattern,
    margin: u32,
    budget: u64,
) -> Result<bool> {
    if p.dim() != spec.dim() {
        return Err(Error::DimensionMismatch {
            expected: spec.dim(),
            found: p.dim(),
        });
    }
    let compiled = Compiled::new(spec);
    let head: Vec<Coord> = p.support().cloned().collect();
    let values: Vec<Idx> = p
        .symbols()
        .into_iter()
        .map(|s| spec.symbol_index(s).map(|i| i as Idx).ok_or(Error::UnknownSymbol(s)))
        .collect::<Result<_>>()?;
    let tail: Vec<Coord> = inflate(&head, spec.dim(), margin)
        .into_iter()
        .filter(|c| head.binary_search(c).is_err())
        .collect();
    let region = Region::new(&compiled, head, tail);
    let mut search = Search::new(&compiled, &region, budget);
    for (k, v) in values.into_iter().enumerate() {
        search.assign[k] = v;
        if !search.consistent_at(k) {
            return Ok(false);
        }
    }
    search.complete(region.head)
}

/// Smallest margin `m <= max_margin` with language(m) == language(m + 1).
pub fn stabilization_margin(
    spec: &ShiftSpec,
    window: &Window,
    max_margin: u32,
) -> Result<Option<u32>> {
    let mut prev = window_language(spec, window, 0)?;
    for m in 0..max_margin {
        let next = window_language(spec, window, m + 1)?;
        if next.same_patterns(&prev) {
            return Ok(Some(m));
        }
        prev = next;
    }
    Ok(None)
}

/// First radius at which two specs' window languages differ, as `2^-s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionDistance {
    /// `None` means the languages agree on every centered box up to `cap`.
    pub separating_radius: Option<u32>,
    pub cap: u32,
    pub reason: Option<String>,
}

impl ResolutionDistance {
    pub fn beyond(cap: u32) -> Self {
        ResolutionDistance {
            separating_radius: None,
            cap,
            reason: None,
        }
    }

    pub fn at(radius: u32, cap: u32) -> Self {
        ResolutionDistance {
            separating_radius: Some(radius),
            cap,
            reason: None,
        }
    }

    /// `2^-s`, or `0.0` when the languages agree up to the cap.
    pub fn value(&self) -> f64 {
        match self.separating_radius {
            Some(s) => 0.5f64.powi(s as i32),
            None => 0.0,
        }
    }

    pub fn is_beyond(&self) -> bool {
        self.separating_radius.is_none()
    }

    /// Ordering key: larger means farther apart.
    pub fn rank(&self) -> i64 {
        match self.separating_radius {
            Some(s) => -(s as i64),
            None => i64::MIN,
        }
    }
}

impl fmt::Display for ResolutionDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.separating_radius {
            Some(s) => write!(f, "2^-{s}")?,
            None => write!(f, "beyond {}", self.cap)?,
        }
        if let Some(r) = &self.reason {
            write!(f, " ({r})")?;
        }
        Ok(())
    }
}

/// Window languages of one spec on the centered boxes `B_0 ..= B_cap`.
#[derive(Clone, Debug)]
pub struct LanguageLadder {
    alphabet: Vec<Symbol>,
    dim: usize,
    levels: Vec<WindowLanguage>,
}

impl LanguageLadder {
    pub fn new(spec: &ShiftSpec, cap: u32, margin: u32, budget: u64) -> Result<Self> {
        let levels = (0..=cap)
            .map(|s| window_language_with_budget(spec, &Window::centered(spec.dim(), s), margin, budget))
            .collect::<Result<_>>()?;
        Ok(LanguageLadder {
            alphabet: spec.alphabet().to_vec(),
            dim: spec.dim(),
            levels,
        })
    }

    pub fn cap(&self) -> u32 {
        self.levels.len() as u32 - 1
    }

    pub fn level(&self, s: u32) -> &WindowLanguage {
        &self.levels[s as usize]
    }

    pub fn distance(&self, other: &LanguageLadder) -> Result<ResolutionDistance> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let cap = self.cap().min(other.cap());
        if self.alphabet != other.alphabet {
            return Ok(ResolutionDistance {
                separating_radius: Some(0),
                cap,
                reason: Some("alphabets differ".into()),
            });
        }
        for s in 0..=cap {
            if !self.level(s).same_patterns(other.level(s)) {
                return Ok(ResolutionDistance::at(s, cap));
            }
        }
        Ok(ResolutionDistance::beyond(cap))
    }
}

pub fn resolution_distance(
    a: &ShiftSpec,
    b: &ShiftSpec,
    cap: u32,
    margin: u32,
) -> Result<ResolutionDistance> {
    resolution_distance_with_budget(a, b, cap, margin, DEFAULT_BUDGET)
}

pub fn resolution_distance_with_budget(
    a: &ShiftSpec,
    b: &ShiftSpec,
    cap: u32,
    margin: u32,
    budget: u64,
) -> Result<ResolutionDistance> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    if a.alphabet() != b.alphabet() {
        return Ok(ResolutionDistance {
            separating_radius: Some(0),
            cap,
            reason: Some("alphabets differ".into()),
        });
    }
    // Radius by radius, so an early separation avoids the large windows.
    for s in 0..=cap {
        let w = Window::centered(a.dim(), s);
        let la = window_language_with_budget(a, &w, margin, budget)?;
        let lb = window_language_with_budget(b, &w, margin, budget)?;
        if !la.same_patterns(&lb) {
            return Ok(ResolutionDistance::at(s, cap));
        }
    }
    Ok(ResolutionDistance::beyond(cap))
}

/// For each radius, the first index from which the whole sequence agrees
/// with the limit on that centered box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceReport {
    pub cap: u32,
    pub margin: u32,
    pub sequence_len: usize,
    /// `(radius, agree_from)`; `None` means no tail of the list agrees.
    pub radii: Vec<(u32, Option<usize>)>,
}

impl ConvergenceReport {
    /// "Consistent with convergence up to resolution N".
    pub fn consistent(&self) -> bool {
        self.radii.iter().all(|(_, m)| m.is_some())
    }

    pub fn agree_from(&self, radius: u32) -> Option<usize> {
        self.radii.iter().find(|(s, _)| *s == radius).and_then(|(_, m)| *m)
    }

    /// Machine-readable lines: `radius <s> agree_from <m|never>`.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for (s, m) in &self.radii {
            match m {
                Some(m) => out.push_str(&format!("radius {s} agree_from {m}\n")),
                None => out.push_str(&format!("radius {s} agree_from never\n")),
            }
        }
        out.push_str(&format!(
            "verdict {}\n",
            if self.consistent() { "consistent" } else { "inconsistent" }
        ));
        out
    }
}

impl fmt::Display for ConvergenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "convergence check: {} specs, radius <= {}, margin {} (margin-bounded languages)",
            self.sequence_len, self.cap, self.margin
        )?;
        writeln!(f, "{:>6}  {:>10}", "radius", "agree_from")?;
        for (s, m) in &self.radii {
            match m {
                Some(m) => writeln!(f, "{s:>6}  {m:>10}")?,
                None => writeln!(f, "{s:>6}  {:>10}", "never")?,
            }
        }
        if self.consistent() {
            write!(f, "consistent with convergence up to resolution {}", self.cap)
        } else {
            write!(f, "not consistent with convergence at resolution {}", self.cap)
        }
    }
}

pub fn check_convergence(
    sequence: &[ShiftSpec],
    limit: &ShiftSpec,
    cap: u32,
    margin: u32,
) -> Result<ConvergenceReport> {
    check_convergence_with_budget(sequence, limit, cap, margin, DEFAULT_BUDGET)
}

pub fn check_convergence_with_budget(
    sequence: &[ShiftSpec],
    limit: &ShiftSpec,
    cap: u32,
    margin: u32,
    budget: u64,
) -> Result<ConvergenceReport> {
    if sequence.is_empty() {
        return Err(Error::InvalidArgument("empty sequence".into()));
    }
    for s in sequence {
        if s.dim() != limit.dim() {
            return Err(Error::DimensionMismatch {
                expected: limit.dim(),
                found: s.dim(),
            });
        }
    }
    let mut radii = Vec::new();
    for s in 0..=cap {
        let w = Window::centered(limit.dim(), s);
        let target = window_language_with_budget(limit, &w, margin, budget)?;
        let mut agree_from = None;
        for (i, spec) in sequence.iter().enumerate().rev() {
            let agrees = spec.alphabet() == limit.alphabet()
                && window_language_with_budget(spec, &w, margin, budget)?.same_patterns(&target);
            if agrees {
                agree_from = Some(i);
            } else {
                break;
            }
        }
        radii.push((s, agree_from));
    }
    Ok(ConvergenceReport {
        cap,
        margin,
        sequence_len: sequence.len(),
        radii,
    })
}
