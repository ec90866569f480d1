//! Shift-of-finite-type descriptors and the constructions that combine them.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::pattern::{Coord, Pattern, Symbol};

/// A subshift of finite type `X_F`: dimension, alphabet and a finite list of
/// forbidden patterns.
///
/// Forbidden patterns are stored canonically translated (least cell at the
/// origin), sorted and deduplicated, so two specs built from the same data
/// compare equal. `metadata` carries provenance notes such as the symbol
/// pairing used by [`product`]; it is serialized alongside the spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftSpec {
    dim: usize,
    alphabet: Vec<Symbol>,
    forbidden: Vec<Pattern>,
    metadata: BTreeMap<String, String>,
}

impl ShiftSpec {
    pub fn new(dim: usize, alphabet: Vec<Symbol>, forbidden: Vec<Pattern>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut alphabet = alphabet;
        alphabet.sort_unstable();
        alphabet.dedup();
        if alphabet.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        for (i, p) in forbidden.iter().enumerate() {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
            if let Some(s) = p.symbols().into_iter().find(|s| alphabet.binary_search(s).is_err()) {
                return Err(Error::SymbolOutsideAlphabet {
                    pattern_index: i,
                    symbol: s,
                });
            }
        }
        let set: BTreeSet<Pattern> = forbidden.iter().map(Pattern::canonical).collect();
        Ok(ShiftSpec {
            dim,
            alphabet,
            forbidden: set.into_iter().collect(),
            metadata: BTreeMap::new(),
        })
    }

    pub fn full(dim: usize, alphabet: Vec<Symbol>) -> Result<Self> {
        ShiftSpec::new(dim, alphabet, Vec::new())
    }

    /// One-dimensional spec forbidding the given words.
    pub fn forbid_words(alphabet: Vec<Symbol>, words: &[&[Symbol]]) -> Result<Self> {
        ShiftSpec::new(1, alphabet, words.iter().map(|w| Pattern::word(w)).collect())
    }

    pub fn with_metadata(mut self, key: &str, value: impl Into<String>) -> Self {
        self.metadata.insert(key.to_string(), value.into());
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn alphabet(&self) -> &[Symbol] {
        &self.alphabet
    }

    pub fn forbidden(&self) -> &[Pattern] {
        &self.forbidden
    }

    pub fn metadata(&self) -> &BTreeMap<String, String> {
        &self.metadata
    }

    pub fn symbol_index(&self, s: Symbol) -> Option<usize> {
        self.alphabet.binary_search(&s).ok()
    }

    /// Largest extent of any forbidden pattern along any axis.
    pub fn diameter(&self) -> usize {
        self.forbidden.iter().map(Pattern::diameter).max().unwrap_or(0)
    }

    fn check_same_dim(&self, other: &ShiftSpec) -> Result<()> {
        if self.dim != other.dim {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            })
        } else {
            Ok(())
        }
    }
}

/// Pairing used by [`product`]: `index(s) * |B| + index(t)`.
pub fn pair_code(a: &ShiftSpec, b: &ShiftSpec, s: Symbol, t: Symbol) -> Option<Symbol> {
    let i = a.symbol_index(s)?;
    let j = b.symbol_index(t)?;
    Some((i * b.alphabet.len() + j) as Symbol)
}

/// Every pattern on `p`'s support whose first (or second) component is `p`.
fn lifts(
    p: &Pattern,
    other: &[Symbol],
    encode: impl Fn(Symbol, Symbol) -> Symbol,
) -> Vec<Pattern> {
    let cells: Vec<(Coord, Symbol)> = p.cells().map(|(c, s)| (c.clone(), s)).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; cells.len()];
    loop {
        let lifted = cells
            .iter()
            .zip(&choice)
            .map(|((c, s), &k)| (c.clone(), encode(*s, other[k])));
        out.push(Pattern::from_cells(p.dim(), lifted).expect("same dimension"));
        let mut k = 0;
        loop {
            if k == choice.len() {
                return out;
            }
            choice[k] += 1;
            if choice[k] < other.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Cartesian product `X x X'` on the paired alphabet.
pub fn product(a: &ShiftSpec, b: &ShiftSpec) -> Result<ShiftSpec> {
    a.check_same_dim(b)?;
    let n = b.alphabet.len();
    let alphabet: Vec<Symbol> = (0..(a.alphabet.len() * n) as Symbol).collect();
    let code_a = |s: Symbol, t: Symbol| pair_code(a, b, s, t).expect("symbol in alphabet");
    let code_b = |t: Symbol, s: Symbol| pair_code(a, b, s, t).expect("symbol in alphabet");
    let mut forbidden = Vec::new();
    for p in &a.forbidden {
        forbidden.extend(lifts(p, &b.alphabet, code_a));
    }
    for p in &b.forbidden {
        forbidden.extend(lifts(p, &a.alphabet, code_b));
    }
    Ok(ShiftSpec::new(a.dim, alphabet, forbidden)?.with_metadata(
        "pairing",
        format!(
            "index(a)*{n}+index(b); a={} b={}",
            join(&a.alphabet),
            join(&b.alphabet)
        ),
    ))
}

fn join(s: &[Symbol]) -> String {
    s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// All two-cell patterns `{0 -> s, e_k -> t}` along `axis` with `(s, t)` in `pairs`.
fn dominoes(dim: usize, axis: usize, pairs: impl IntoIterator<Item = (Symbol, Symbol)>) -> Vec<Pattern> {
    pairs
        .into_iter()
        .map(|(s, t)| {
            Pattern::from_cells(dim, [(Coord::zero(dim), s), (Coord::basis(dim, axis), t)])
                .expect("valid domino")
        })
        .collect()
}

fn unequal_pairs(alphabet: &[Symbol]) -> Vec<(Symbol, Symbol)> {
    let mut out = Vec::new();
    for &s in alphabet {
        for &t in alphabet {
            if s != t {
                out.push((s, t));
            }
        }
    }
    out
}

/// Disjoint union. `b`'s symbols are shifted past `a`'s largest symbol and
/// every nearest-neighbour pair mixing the two alphabets is forbidden.
pub fn disjoint_union(a: &ShiftSpec, b: &ShiftSpec) -> Result<ShiftSpec> {
    a.check_same_dim(b)?;
    let a_max = *a.alphabet.last().expect("nonempty");
    let b_min = *b.alphabet.first().expect("nonempty");
    let offset = a_max - b_min + 1;
    let b_alpha: Vec<Symbol> = b.alphabet.iter().map(|s| s + offset).collect();
    let mut forbidden: Vec<Pattern> = a.forbidden.clone();
    forbidden.extend(b.forbidden.iter().map(|p| p.map_symbols(|s| s + offset)));
    let mut mixed = Vec::new();
    for &s in &a.alphabet {
        for &t in &b_alpha {
            mixed.push((s, t));
            mixed.push((t, s));
        }
    }
    for axis in 0..a.dim {
        forbidden.extend(dominoes(a.dim, axis, mixed.iter().copied()));
    }
    let mut alphabet = a.alphabet.clone();
    alphabet.extend(&b_alpha);
    Ok(ShiftSpec::new(a.dim, alphabet, forbidden)?.with_metadata("union_offset", offset.to_string()))
}

/// Adds `extra` axes along which configurations are constant. `extra = 0`
/// returns the input unchanged.
pub fn extend_dims(a: &ShiftSpec, extra: usize) -> Result<ShiftSpec> {
    if extra == 0 {
        return Ok(a.clone());
    }
    let dim = a.dim + extra;
    let mut forbidden: Vec<Pattern> = a
        .forbidden
        .iter()
        .map(|p| Pattern::from_cells(dim, p.cells().map(|(c, s)| (c.embed(dim), s))))
        .collect::<Result<_>>()?;
    let pairs = unequal_pairs(&a.alphabet);
    for axis in a.dim..dim {
        forbidden.extend(dominoes(dim, axis, pairs.iter().copied()));
    }
    ShiftSpec::new(dim, a.alphabet.clone(), forbidden)
}

/// The shift on `1..=n` whose configurations are the constant ones.
pub fn constant_layer(n: usize, dim: usize) -> Result<ShiftSpec> {
    if n == 0 {
        return Err(Error::InvalidArgument("constant_layer needs n >= 1".into()));
    }
    let alphabet: Vec<Symbol> = (1..=n as Symbol).collect();
    let pairs = unequal_pairs(&alphabet);
    let mut forbidden = Vec::new();
    for axis in 0..dim {
        forbidden.extend(dominoes(dim, axis, pairs.iter().copied()));
    }
    ShiftSpec::new(dim, alphabet, forbidden)
}

/// `X x Z_n`: `n` disjoint copies of `X` labelled by a constant layer.
pub fn g_layer(x: &ShiftSpec, n: usize) -> Result<ShiftSpec> {
    product(x, &constant_layer(n, x.dim())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_symbol_outside_alphabet() {
        let err = ShiftSpec::forbid_words(vec![0, 1], &[&[0, 7]]).unwrap_err();
        assert_eq!(
            err,
            Error::SymbolOutsideAlphabet {
                pattern_index: 0,
                symbol: 7
            }
        );
    }

    #[test]
    fn forbidden_patterns_are_canonical_and_deduplicated() {
        let p = Pattern::word(&[1, 1]);
        let q = p.translate(&Coord::new(vec![5])).unwrap();
        let s = ShiftSpec::new(1, vec![1, 0, 1], vec![p.clone(), q]).unwrap();
        assert_eq!(s.alphabet(), &[0, 1]);
        assert_eq!(s.forbidden(), &[p]);
    }

    #[test]
    fn product_of_full_shifts() {
        let a = ShiftSpec::full(1, vec![0, 1]).unwrap();
        let p = product(&a, &a).unwrap();
        assert_eq!(p.alphabet(), &[0, 1, 2, 3]);
        assert!(p.forbidden().is_empty());
        assert!(p.metadata().contains_key("pairing"));
    }

    #[test]
    fn product_rejects_dimension_mismatch() {
        let a = ShiftSpec::full(1, vec![0]).unwrap();
        let b = ShiftSpec::full(2, vec![0]).unwrap();
        assert!(product(&a, &b).is_err());
        assert!(disjoint_union(&a, &b).is_err());
    }

    #[test]
    fn union_relabels_and_bans_mixing() {
        let a = ShiftSpec::full(1, vec![0, 1]).unwrap();
        let u = disjoint_union(&a, &a).unwrap();
        assert_eq!(u.alphabet(), &[0, 1, 2, 3]);
        // 2 * 2 mixed pairs, both orders, one axis
        assert_eq!(u.forbidden().len(), 8);
        assert_eq!(u.metadata()["union_offset"], "2");
    }

    #[test]
    fn extend_by_zero_is_identity() {
        let a = ShiftSpec::forbid_words(vec![0, 1], &[&[1, 1]]).unwrap();
        assert_eq!(extend_dims(&a, 0).unwrap(), a);
        let e = extend_dims(&a, 2).unwrap();
        assert_eq!(e.dim(), 3);
        assert_eq!(e.forbidden().len(), 1 + 2 * 2);
    }

    #[test]
    fn constant_layer_shape() {
        let z = constant_layer(3, 2).unwrap();
        assert_eq!(z.alphabet(), &[1, 2, 3]);
        assert_eq!(z.forbidden().len(), 2 * 6);
        assert!(constant_layer(1, 4).unwrap().forbidden().is_empty());
        assert!(constant_layer(0, 1).is_err());
    }
}
