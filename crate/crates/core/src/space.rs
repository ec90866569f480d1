//! Finite families of shifts at a fixed resolution: distances, derived sets
//! and the Cantor-Bendixson ladder.
//!
//! Two members are neighbours at resolution `N` when their window languages
//! agree on every centered box `B_0 ..= B_N`, i.e. their distance is below
//! `2^-N`. Every report names `N`; a finite family is always discrete at
//! fine enough resolution, so none of this says anything about `N -> oo`.
//!
//! Family files:
//!
//! ```text
//! # comment
//! resolution 3
//! margin 2
//! member full full.shift
//! member gm goldenmean.shift
//! ```
//!
//! Member paths are relative to the family file.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::format::parse_spec;
use crate::lang::{LanguageLadder, ResolutionDistance, DEFAULT_BUDGET};
use crate::pattern::{Coord, Pattern, Symbol};
use crate::spec::{g_layer, ShiftSpec};
use crate::times23::x0_spec;

pub const DEFAULT_MARGIN: u32 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftFamily {
    names: Vec<String>,
    specs: Vec<ShiftSpec>,
    resolution: u32,
    margin: u32,
}

impl ShiftFamily {
    pub fn new(members: Vec<(String, ShiftSpec)>, resolution: u32, margin: u32) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (name, _) in &members {
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidArgument(format!("duplicate member name `{name}`")));
            }
        }
        if let Some((_, first)) = members.first() {
            if let Some((_, bad)) = members.iter().find(|(_, s)| s.dim() != first.dim()) {
                return Err(Error::DimensionMismatch {
                    expected: first.dim(),
                    found: bad.dim(),
                });
            }
        }
        let (names, specs) = members.into_iter().unzip();
        Ok(ShiftFamily {
            names,
            specs,
            resolution,
            margin,
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn specs(&self) -> &[ShiftSpec] {
        &self.specs
    }

    pub fn member(&self, name: &str) -> Option<&ShiftSpec> {
        self.index_of(name).map(|i| &self.specs[i])
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    pub fn margin(&self) -> u32 {
        self.margin
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn with_resolution(mut self, resolution: u32) -> Self {
        self.resolution = resolution;
        self
    }

    pub fn with_margin(mut self, margin: u32) -> Self {
        self.margin = margin;
        self
    }

    /// The family without the named member.
    pub fn without(&self, name: &str) -> ShiftFamily {
        let mut out = self.clone();
        if let Some(i) = self.index_of(name) {
            out.names.remove(i);
            out.specs.remove(i);
        }
        out
    }
}

/// Parses a family file; `load` resolves each member path to a spec.
pub fn parse_family_with(text: &str, mut load: impl FnMut(&str) -> Result<ShiftSpec>) -> Result<ShiftFamily> {
    let mut members = Vec::new();
    let mut resolution = None;
    let mut margin = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let num = |t: &str| {
            t.parse::<u32>()
                .map_err(|_| Error::parse(i + 1, 2, format!("expected a nonnegative integer, found `{t}`")))
        };
        match toks.as_slice() {
            ["member", name, path] => members.push((name.to_string(), load(path)?)),
            ["resolution", n] => resolution = Some(num(n)?),
            ["margin", m] => margin = Some(num(m)?),
            _ => {
                return Err(Error::parse(
                    i + 1,
                    1,
                    format!("expected `member <name> <path>`, `resolution <N>` or `margin <M>`, found `{line}`"),
                ))
            }
        }
    }
    let resolution = resolution.ok_or_else(|| Error::parse(1, 1, "missing `resolution <N>` line"))?;
    ShiftFamily::new(members, resolution, margin.unwrap_or(DEFAULT_MARGIN))
}

pub fn load_family(path: &Path) -> Result<ShiftFamily> {
    let read = |p: &Path| {
        std::fs::read_to_string(p).map_err(|e| Error::InvalidArgument(format!("cannot read `{}`: {e}", p.display())))
    };
    let text = read(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    parse_family_with(&text, |member| parse_spec(&read(&base.join(member))?))
}

/// Pairwise distances at the family's resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    names: Vec<String>,
    resolution: u32,
    entries: Vec<Vec<ResolutionDistance>>,
}

impl DistanceMatrix {
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    pub fn get(&self, a: usize, b: usize) -> &ResolutionDistance {
        &self.entries[a][b]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn are_neighbours(&self, a: usize, b: usize) -> bool {
        self.entries[a][b].is_beyond()
    }

    /// Members of `level` with another member of `level` in their ball.
    pub fn derived_set(&self, level: &BTreeSet<usize>) -> BTreeSet<usize> {
        level
            .iter()
            .copied()
            .filter(|&a| level.iter().any(|&b| b != a && self.are_neighbours(a, b)))
            .collect()
    }

    /// One `d <a> <b> <distance>` line per unordered pair, diagonal included.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for a in 0..self.len() {
            for b in a..self.len() {
                let _ = writeln!(out, "d {} {} {}", self.names[a], self.names[b], self.entries[a][b]);
            }
        }
        out
    }
}

impl fmt::Display for DistanceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|d| d.to_string()).collect())
            .collect();
        let width = self
            .names
            .iter()
            .map(String::len)
            .chain(cells.iter().flatten().map(String::len))
            .max()
            .unwrap_or(0);
        writeln!(f, "resolution {}", self.resolution)?;
        write!(f, "{:width$}", "")?;
        for n in &self.names {
            write!(f, "  {n:>width$}")?;
        }
        writeln!(f)?;
        for (name, row) in self.names.iter().zip(&cells) {
            write!(f, "{name:>width$}")?;
            for c in row {
                write!(f, "  {c:>width$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn distance_matrix(fam: &ShiftFamily) -> Result<DistanceMatrix> {
    distance_matrix_with_budget(fam, DEFAULT_BUDGET)
}

pub fn distance_matrix_with_budget(fam: &ShiftFamily, budget: u64) -> Result<DistanceMatrix> {
    let ladders: Vec<LanguageLadder> = fam
        .specs
        .par_iter()
        .map(|s| LanguageLadder::new(s, fam.resolution, fam.margin, budget))
        .collect::<Result<_>>()?;
    let n = ladders.len();
    let mut entries = vec![vec![ResolutionDistance::beyond(fam.resolution); n]; n];
    for a in 0..n {
        for b in a + 1..n {
            let d = ladders[a].distance(&ladders[b])?;
            entries[a][b] = d.clone();
            entries[b][a] = d;
        }
    }
    Ok(DistanceMatrix {
        names: fam.names.clone(),
        resolution: fam.resolution,
        entries,
    })
}

/// Names of the members of `level` that are not isolated within it.
pub fn derived_set(fam: &ShiftFamily, level: &[&str]) -> Result<Vec<String>> {
    let m = distance_matrix(fam)?;
    let idx = level
        .iter()
        .map(|n| fam.index_of(n).ok_or_else(|| Error::InvalidArgument(format!("no member named `{n}`"))))
        .collect::<Result<BTreeSet<usize>>>()?;
    Ok(m.derived_set(&idx).into_iter().map(|i| fam.names[i].clone()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationTrace {
    pub resolution: u32,
    /// Level 0 is the whole family; the last level is the residue.
    pub levels: Vec<Vec<String>>,
    pub rank: usize,
}

impl DerivationTrace {
    pub fn residue(&self) -> &[String] {
        self.levels.last().map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn to_lines(&self) -> String {
        let mut lines = vec![format!("resolution {}", self.resolution)];
        for (k, level) in self.levels.iter().enumerate() {
            lines.push(format!("level {k} {}", level.join(" ")));
        }
        lines.push(format!("rank {}", self.rank));
        lines.push(format!("residue {}", self.residue().join(" ")));
        lines.iter().map(|l| format!("{}\n", l.trim_end())).collect()
    }
}

impl fmt::Display for DerivationTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |l: &[String]| {
            if l.is_empty() {
                "(empty)".to_string()
            } else {
                format!("{{{}}}", l.join(", "))
            }
        };
        writeln!(f, "Cantor-Bendixson ladder at resolution {}", self.resolution)?;
        for (k, level) in self.levels.iter().enumerate() {
            writeln!(f, "  level {k}: {}", show(level))?;
        }
        writeln!(f, "  rank: {}", self.rank)?;
        write!(f, "  residue: {}", show(self.residue()))
    }
}

pub fn cb_ladder(fam: &ShiftFamily) -> Result<DerivationTrace> {
    Ok(cb_ladder_from(&distance_matrix(fam)?))
}

pub fn cb_ladder_from(m: &DistanceMatrix) -> DerivationTrace {
    let mut current: BTreeSet<usize> = (0..m.len()).collect();
    let names = |s: &BTreeSet<usize>| s.iter().map(|&i| m.names[i].clone()).collect::<Vec<_>>();
    let mut levels = vec![names(&current)];
    loop {
        let next = m.derived_set(&current);
        if next == current {
            break;
        }
        levels.push(names(&next));
        current = next;
    }
    DerivationTrace {
        resolution: m.resolution,
        rank: levels.len() - 1,
        levels,
    }
}

/// A named family with its documented expected trace.
#[derive(Clone, Debug)]
pub struct LadderPreset {
    pub name: &'static str,
    pub family: ShiftFamily,
    pub expected: &'static str,
}

/// `X_{1^k}` on `{0, 1}`.
pub fn forbid_run(k: usize) -> ShiftSpec {
    ShiftSpec::forbid_words(vec![0, 1], &[&vec![1; k]]).expect("valid words")
}

/// `{0, 1}` with the constant pattern of `a` on `B_n^dim` forbidden.
pub fn forbid_constant_box(n: u32, dim: usize, a: Symbol) -> ShiftSpec {
    let cells = crate::pattern::box_cells(&vec![-(n as i64); dim], &vec![n as i64; dim]);
    let p = Pattern::from_cells(dim, cells.into_iter().map(|c: Coord| (c, a))).expect("box cells");
    ShiftSpec::new(dim, vec![0, 1], vec![p]).expect("valid spec")
}

pub fn build_ladder_examples() -> Result<Vec<LadderPreset>> {
    let full = ShiftSpec::full(1, vec![0, 1])?;
    let mut unary: Vec<(String, ShiftSpec)> = [2, 3, 5, 9].iter().map(|&k| (format!("X{k}"), forbid_run(k))).collect();
    unary.push(("full".into(), full.clone()));

    let mut approx: Vec<(String, ShiftSpec)> = (0..=6).map(|n| (format!("p{n}"), forbid_constant_box(n, 1, 1))).collect();
    approx.push(("full".into(), full));

    let x0 = x0_spec();
    let mut g: Vec<(String, ShiftSpec)> = vec![("X0".into(), x0.clone())];
    for n in 1..=3 {
        g.push((format!("G{n}"), g_layer(&x0, n)?));
    }

    Ok(vec![
        LadderPreset {
            name: "unary-blocks",
            family: ShiftFamily::new(unary, 3, DEFAULT_MARGIN)?,
            expected: "levels [X2 X3 X5 X9 full] [X9 full]; rank 1; residue {X9, full}",
        },
        LadderPreset {
            name: "fullshift-approx",
            family: ShiftFamily::new(approx, 3, DEFAULT_MARGIN)?,
            expected: "p_n agrees with full up to radius n - 1, so p4..p6 and full cluster; rank 1; residue {p4, p5, p6, full}",
        },
        LadderPreset {
            name: "g-ladder",
            family: ShiftFamily::new(g, 1, 1)?,
            expected: "G2 and G3 are at distance 1 from everything (larger alphabets); G1 has the alphabet of X0 and the same language, so {X0, G1} survive; rank 1",
        },
    ])
}
