//! Lattice coordinates, finite patterns, and windows.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Alphabet symbols are plain integers.
pub type Symbol = i64;

/// A point of the integer lattice `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coord(Vec<i64>);

impl Coord {
    pub fn new(components: Vec<i64>) -> Self {
        Coord(components)
    }

    pub fn zero(dim: usize) -> Self {
        Coord(vec![0; dim])
    }

    /// The `k`-th canonical basis vector (0-based axis index).
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut c = vec![0; dim];
        c[k] = 1;
        Coord(c)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[i64] {
        &self.0
    }

    pub fn add(&self, other: &Coord) -> Coord {
        Coord(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Coord) -> Coord {
        Coord(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Coord {
        Coord(self.0.iter().map(|a| -a).collect())
    }

    /// Pads with zeros up to `dim` components.
    pub fn embed(&self, dim: usize) -> Coord {
        let mut c = self.0.clone();
        c.resize(dim, 0);
        Coord(c)
    }
}

impl From<Vec<i64>> for Coord {
    fn from(v: Vec<i64>) -> Self {
        Coord(v)
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A finite assignment of symbols to lattice points.
///
/// Cells are kept in a `BTreeMap`, so iteration follows the lexicographic
/// order of coordinates and the derived `Ord` is a total order usable for
/// canonical sorting.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    dim: usize,
    cells: BTreeMap<Coord, Symbol>,
}

impl Pattern {
    pub fn empty(dim: usize) -> Self {
        Pattern {
            dim,
            cells: BTreeMap::new(),
        }
    }

    pub fn from_cells<I>(dim: usize, cells: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Coord, Symbol)>,
    {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut map = BTreeMap::new();
        for (c, s) in cells {
            if c.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: c.dim(),
                });
            }
            map.insert(c, s);
        }
        Ok(Pattern { dim, cells: map })
    }

    /// A one-dimensional word placed at `0..len`.
    pub fn word(symbols: &[Symbol]) -> Self {
        Pattern {
            dim: 1,
            cells: symbols
                .iter()
                .enumerate()
                .map(|(i, &s)| (Coord(vec![i as i64]), s))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn get(&self, c: &Coord) -> Option<Symbol> {
        self.cells.get(c).copied()
    }

    pub fn cells(&self) -> impl Iterator<Item = (&Coord, Symbol)> {
        self.cells.iter().map(|(c, &s)| (c, s))
    }

    pub fn support(&self) -> impl Iterator<Item = &Coord> {
        self.cells.keys()
    }

    /// Symbols in lexicographic order of their coordinates.
    pub fn symbols(&self) -> Vec<Symbol> {
        self.cells.values().copied().collect()
    }

    pub fn insert(&mut self, c: Coord, s: Symbol) -> Result<()> {
        self.check_dim(c.dim())?;
        self.cells.insert(c, s);
        Ok(())
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                found,
            })
        } else {
            Ok(())
        }
    }

    /// Shift action: reading the result at `w` gives this pattern at `w + u`.
    pub fn translate(&self, u: &Coord) -> Result<Pattern> {
        self.check_dim(u.dim())?;
        Ok(Pattern {
            dim: self.dim,
            cells: self.cells.iter().map(|(c, &s)| (c.sub(u), s)).collect(),
        })
    }

    /// Translate so that the lexicographically least cell sits at the origin.
    pub fn canonical(&self) -> Pattern {
        match self.cells.keys().next() {
            None => self.clone(),
            Some(min) => {
                let min = min.clone();
                Pattern {
                    dim: self.dim,
                    cells: self.cells.iter().map(|(c, &s)| (c.sub(&min), s)).collect(),
                }
            }
        }
    }

    /// Whether some translate of `self` occurs inside `other`.
    pub fn appears_in(&self, other: &Pattern) -> Result<bool> {
        self.check_dim(other.dim)?;
        let mut it = self.cells.iter();
        let Some((first, &first_sym)) = it.next() else {
            return Ok(true);
        };
        for (w, &s) in &other.cells {
            if s != first_sym {
                continue;
            }
            let u = w.sub(first);
            if self
                .cells
                .iter()
                .all(|(v, &t)| other.cells.get(&v.add(&u)) == Some(&t))
            {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Restriction to the cells of `support` that this pattern defines.
    pub fn restrict<'a, I>(&self, support: I) -> Pattern
    where
        I: IntoIterator<Item = &'a Coord>,
    {
        Pattern {
            dim: self.dim,
            cells: support
                .into_iter()
                .filter_map(|c| self.cells.get(c).map(|&s| (c.clone(), s)))
                .collect(),
        }
    }

    /// Coordinate-wise minimum and maximum of the support.
    pub fn bounding_box(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let mut it = self.cells.keys();
        let first = it.next()?;
        let mut lo = first.components().to_vec();
        let mut hi = lo.clone();
        for c in it {
            for (k, &x) in c.components().iter().enumerate() {
                lo[k] = lo[k].min(x);
                hi[k] = hi[k].max(x);
            }
        }
        Some((lo, hi))
    }

    /// Largest extent of the support along any axis (1 for a single cell).
    pub fn diameter(&self) -> usize {
        match self.bounding_box() {
            None => 0,
            Some((lo, hi)) => lo
                .iter()
                .zip(&hi)
                .map(|(a, b)| (b - a + 1) as usize)
                .max()
                .unwrap_or(0),
        }
    }

    /// Same support, symbols rewritten through `f`.
    pub fn map_symbols(&self, mut f: impl FnMut(Symbol) -> Symbol) -> Pattern {
        Pattern {
            dim: self.dim,
            cells: self.cells.iter().map(|(c, &s)| (c.clone(), f(s))).collect(),
        }
    }
}

/// Shape of a finite window in `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WindowKind {
    /// `[-n, n]^d`
    Centered(u32),
    /// `[0, n-1]^d`
    Corner(u32),
    Explicit(Vec<Coord>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    dim: usize,
    kind: WindowKind,
}

impl Window {
    pub fn centered(dim: usize, n: u32) -> Self {
        Window {
            dim,
            kind: WindowKind::Centered(n),
        }
    }

    pub fn corner(dim: usize, n: u32) -> Self {
        Window {
            dim,
            kind: WindowKind::Corner(n),
        }
    }

    pub fn explicit(dim: usize, cells: Vec<Coord>) -> Result<Self> {
        for c in &cells {
            if c.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: c.dim(),
                });
            }
        }
        Ok(Window {
            dim,
            kind: WindowKind::Explicit(cells),
        })
    }

    /// Axis-aligned box `[lo_k, hi_k]` on every axis.
    pub fn boxed(lo: &[i64], hi: &[i64]) -> Self {
        let dim = lo.len();
        Window {
            dim,
            kind: WindowKind::Explicit(box_cells(lo, hi)),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &WindowKind {
        &self.kind
    }

    /// The coordinates of the window, sorted lexicographically and deduplicated.
    pub fn cells(&self) -> Vec<Coord> {
        let mut cells = match &self.kind {
            WindowKind::Centered(n) => {
                let n = *n as i64;
                box_cells(&vec![-n; self.dim], &vec![n; self.dim])
            }
            WindowKind::Corner(n) => {
                if *n == 0 {
                    Vec::new()
                } else {
                    box_cells(&vec![0; self.dim], &vec![*n as i64 - 1; self.dim])
                }
            }
            WindowKind::Explicit(c) => c.clone(),
        };
        cells.sort();
        cells.dedup();
        cells
    }

    /// Cells of the window inflated by `margin` along every axis, sorted.
    pub fn inflated_cells(&self, margin: u32) -> Vec<Coord> {
        inflate(&self.cells(), self.dim, margin)
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            WindowKind::Centered(n) => write!(f, "[-{n},{n}]^{}", self.dim),
            WindowKind::Corner(n) => write!(f, "[0,{}]^{}", *n as i64 - 1, self.dim),
            WindowKind::Explicit(c) => write!(f, "{} explicit cells", c.len()),
        }
    }
}

pub(crate) fn box_cells(lo: &[i64], hi: &[i64]) -> Vec<Coord> {
    let dim = lo.len();
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = lo.to_vec();
    loop {
        out.push(Coord(cur.clone()));
        let mut k = dim;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur[k] < hi[k] {
                cur[k] += 1;
                cur[k + 1..dim].copy_from_slice(&lo[k + 1..dim]);
                break;
            }
        }
    }
}

pub(crate) fn inflate(cells: &[Coord], dim: usize, margin: u32) -> Vec<Coord> {
    let m = margin as i64;
    let offsets = box_cells(&vec![-m; dim], &vec![m; dim]);
    let mut out: Vec<Coord> = cells
        .iter()
        .flat_map(|c| offsets.iter().map(move |o| c.add(o)))
        .collect();
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c1(x: i64) -> Coord {
        Coord::new(vec![x])
    }

    #[test]
    fn translate_by_zero_is_identity() {
        let p = Pattern::word(&[3, 1, 4]);
        assert_eq!(p.translate(&Coord::zero(1)).unwrap(), p);
    }

    #[test]
    fn translate_follows_shift_convention() {
        let p = Pattern::word(&[10, 11]);
        let q = p.translate(&c1(1)).unwrap();
        assert_eq!(q.get(&c1(-1)), Some(10));
        assert_eq!(q.get(&c1(0)), Some(11));
        assert_eq!(q.len(), 2);
    }

    #[test]
    fn translate_rejects_dimension_mismatch() {
        let p = Pattern::word(&[0]);
        assert!(matches!(
            p.translate(&Coord::zero(2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn empty_pattern_appears_everywhere() {
        let q = Pattern::word(&[0, 1, 0]);
        assert!(Pattern::empty(1).appears_in(&q).unwrap());
    }

    #[test]
    fn absent_symbol_does_not_appear() {
        let p = Pattern::word(&[1]);
        let q = Pattern::word(&[0, 0, 0, 0, 0]);
        assert!(!p.appears_in(&q).unwrap());
    }

    #[test]
    fn window_shapes() {
        assert_eq!(Window::centered(2, 1).cells().len(), 9);
        assert_eq!(Window::corner(3, 2).cells().len(), 8);
        assert_eq!(Window::corner(1, 0).cells().len(), 0);
        let w = Window::centered(1, 2).cells();
        assert_eq!(w.first(), Some(&c1(-2)));
        assert_eq!(w.last(), Some(&c1(2)));
        assert_eq!(Window::corner(1, 3).inflated_cells(1).len(), 5);
    }

    fn arb_pattern(dim: usize) -> impl Strategy<Value = Pattern> {
        proptest::collection::btree_map(
            proptest::collection::vec(-4i64..4, dim),
            0i64..3,
            0..8,
        )
        .prop_map(move |m| {
            Pattern::from_cells(dim, m.into_iter().map(|(c, s)| (Coord::new(c), s))).unwrap()
        })
    }

    proptest! {
        #[test]
        fn translate_round_trip(p in arb_pattern(2), u in proptest::collection::vec(-10i64..10, 2)) {
            let u = Coord::new(u);
            let back = p.translate(&u).unwrap().translate(&u.neg()).unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn cut_out_subpattern_appears(
            q in arb_pattern(2),
            keep in proptest::collection::vec(any::<bool>(), 8),
            u in proptest::collection::vec(-5i64..5, 2),
        ) {
            // Any subset of q's cells, moved by u, must be found in q again at offset u.
            let sub: Vec<Coord> = q.support().zip(keep.iter().cycle()).filter(|(_, &k)| k).map(|(c, _)| c.clone()).collect();
            let p = q.restrict(&sub).translate(&Coord::new(u)).unwrap();
            prop_assert!(p.appears_in(&q).unwrap());
        }
    }
}
