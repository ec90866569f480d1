//! The `.shift` text format.
//!
//! ```text
//! shift v1
//! dim 1
//! alphabet 0 1
//! #meta note golden mean
//! forbid
//! 0 1
//! 1 1
//! end
//! ```
//!
//! Lines starting with `#` are comments, except `#meta <key> <value>` lines
//! which carry the spec's metadata. Blank lines are ignored. Serialization is
//! canonical: sorted alphabet, canonically translated patterns in sorted
//! order, cells in lexicographic coordinate order.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::pattern::{Coord, Pattern, Symbol};
use crate::spec::ShiftSpec;

const META_PREFIX: &str = "#meta ";

pub fn serialize_spec(spec: &ShiftSpec) -> String {
    let mut out = String::new();
    out.push_str("shift v1\n");
    let _ = writeln!(out, "dim {}", spec.dim());
    out.push_str("alphabet");
    for s in spec.alphabet() {
        let _ = write!(out, " {s}");
    }
    out.push('\n');
    for (k, v) in spec.metadata() {
        let _ = writeln!(out, "{META_PREFIX}{k} {v}");
    }
    for p in spec.forbidden() {
        out.push_str("forbid\n");
        for (c, s) in p.cells() {
            for x in c.components() {
                let _ = write!(out, "{x} ");
            }
            let _ = writeln!(out, "{s}");
        }
        out.push_str("end\n");
    }
    out
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl Line<'_> {
    fn tokens(&self) -> impl Iterator<Item = (usize, &str)> {
        let base = self.text.as_ptr() as usize;
        self.text
            .split_whitespace()
            .map(move |t| (t.as_ptr() as usize - base + 1, t))
    }

    fn err(&self, column: usize, msg: impl Into<String>) -> Error {
        Error::parse(self.number, column, msg)
    }

    fn int<T: std::str::FromStr>(&self, column: usize, tok: &str) -> Result<T> {
        tok.parse()
            .map_err(|_| self.err(column, format!("expected an integer, found `{tok}`")))
    }
}

pub fn parse_spec(text: &str) -> Result<ShiftSpec> {
    let mut metadata = Vec::new();
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let trimmed = raw.trim_start();
        if let Some(rest) = trimmed.strip_prefix(META_PREFIX) {
            let rest = rest.trim();
            let (k, v) = rest.split_once(' ').unwrap_or((rest, ""));
            metadata.push((k.to_string(), v.trim().to_string()));
            continue;
        }
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        lines.push(Line {
            number: i + 1,
            text: raw,
        });
    }
    let mut it = lines.into_iter();
    let eof = |what: &str| Error::parse(text.lines().count() + 1, 1, format!("unexpected end of input, expected {what}"));

    let header = it.next().ok_or_else(|| eof("`shift v1`"))?;
    let toks: Vec<_> = header.tokens().collect();
    if toks.iter().map(|t| t.1).collect::<Vec<_>>() != ["shift", "v1"] {
        return Err(header.err(1, "expected header `shift v1`"));
    }

    let dim_line = it.next().ok_or_else(|| eof("`dim <d>`"))?;
    let toks: Vec<_> = dim_line.tokens().collect();
    if toks.len() != 2 || toks[0].1 != "dim" {
        return Err(dim_line.err(1, "expected `dim <d>`"));
    }
    let dim: usize = dim_line.int(toks[1].0, toks[1].1)?;
    if dim == 0 {
        return Err(dim_line.err(toks[1].0, "dimension must be at least 1"));
    }

    let alpha_line = it.next().ok_or_else(|| eof("`alphabet ...`"))?;
    let mut toks = alpha_line.tokens();
    match toks.next() {
        Some((_, "alphabet")) => {}
        _ => return Err(alpha_line.err(1, "expected `alphabet <symbols>`")),
    }
    let alphabet: Vec<Symbol> = toks
        .map(|(col, t)| alpha_line.int(col, t))
        .collect::<Result<_>>()?;
    if alphabet.is_empty() {
        return Err(alpha_line.err(1, "alphabet is empty"));
    }

    let mut forbidden = Vec::new();
    while let Some(line) = it.next() {
        if line.text.trim() != "forbid" {
            return Err(line.err(1, format!("expected `forbid`, found `{}`", line.text.trim())));
        }
        let mut cells = Vec::new();
        loop {
            let cell = it.next().ok_or_else(|| eof("`end`"))?;
            if cell.text.trim() == "end" {
                break;
            }
            let toks: Vec<_> = cell.tokens().collect();
            if toks.len() != dim + 1 {
                return Err(cell.err(
                    1,
                    format!("expected {dim} coordinates and a symbol, found {} fields", toks.len()),
                ));
            }
            let coords: Vec<i64> = toks[..dim]
                .iter()
                .map(|(col, t)| cell.int(*col, t))
                .collect::<Result<_>>()?;
            let sym: Symbol = cell.int(toks[dim].0, toks[dim].1)?;
            cells.push((Coord::new(coords), sym));
        }
        forbidden.push(Pattern::from_cells(dim, cells)?);
    }

    let mut spec = ShiftSpec::new(dim, alphabet, forbidden)?;
    for (k, v) in metadata {
        spec = spec.with_metadata(&k, v);
    }
    Ok(spec)
}
