//! Realization, avoidance, embeddings and strong realization.
//!
//! A set `F` realizes `p` under `f` when its increasing enumeration
//! `x₀ < … < x_{ℓ−1}` satisfies `f(x_i, x_j) = p(i, j)` for all `i < j`.
//! All searches walk candidates in increasing order, so the first hit is the
//! lexicographically least witness.

use std::fmt;
use std::str::FromStr;

use crate::coloring::StableColoring;
use crate::error::{Error, Result};
use crate::pattern::{PairColoring, Pattern};

/// How a sub-pattern may be placed inside a host pattern.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EmbeddingMode {
    /// Any injective vertex map.
    #[default]
    Injective,
    /// Strictly increasing vertex maps only.
    Monotone,
}

impl EmbeddingMode {
    pub const ALL: [EmbeddingMode; 2] = [EmbeddingMode::Injective, EmbeddingMode::Monotone];

    pub fn as_str(self) -> &'static str {
        match self {
            EmbeddingMode::Injective => "injective",
            EmbeddingMode::Monotone => "monotone",
        }
    }
}

impl fmt::Display for EmbeddingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EmbeddingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "injective" => Ok(EmbeddingMode::Injective),
            "monotone" => Ok(EmbeddingMode::Monotone),
            other => Err(Error::Precondition(format!(
                "unknown embedding mode `{other}` (expected injective or monotone)"
            ))),
        }
    }
}

/// A vertex map `g : |q| → |p|` with `q(x, y) = p(g(x), g(y))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl fmt::Display for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.map)
    }
}

pub(crate) fn write_list(f: &mut impl fmt::Write, items: &[usize]) -> fmt::Result {
    for (k, x) in items.iter().enumerate() {
        if k > 0 {
            f.write_char(',')?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

fn sorted_unique(set: &[usize]) -> Vec<usize> {
    let mut v = set.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

fn check_range<C: PairColoring + ?Sized>(f: &C, set: &[usize]) -> Result<()> {
    match set.iter().find(|&&x| x >= f.vertex_count()) {
        Some(&x) => Err(Error::VertexOutOfRange {
            vertex: x,
            bound: f.vertex_count(),
        }),
        None => Ok(()),
    }
}

/// Whether `set` (any order, duplicates collapse) realizes `p` under `f`.
pub fn realizes<C: PairColoring + ?Sized>(f: &C, set: &[usize], p: &Pattern) -> Result<bool> {
    let xs = sorted_unique(set);
    if xs.len() != p.size() {
        return Err(Error::Arity {
            set_size: xs.len(),
            needed: p.size(),
        });
    }
    check_range(f, &xs)?;
    Ok(realizes_sorted(f, &xs, p))
}

pub(crate) fn realizes_sorted<C: PairColoring + ?Sized>(f: &C, xs: &[usize], p: &Pattern) -> bool {
    (0..xs.len()).all(|j| (0..j).all(|i| f.color(xs[i], xs[j]) == p.get(i, j)))
}

/// Calls `visit` on every realizer of `p` inside `set`, in lexicographic
/// order, until `visit` returns `true`. Returns whether it stopped early.
pub fn visit_realizers<C: PairColoring + ?Sized>(
    f: &C,
    set: &[usize],
    p: &Pattern,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> bool {
    let hs = sorted_unique(set);
    debug_assert!(hs.iter().all(|&x| x < f.vertex_count()));
    let mut chosen = Vec::with_capacity(p.size());
    extend_realizer(f, &hs, 0, p, &mut chosen, &mut visit)
}

fn extend_realizer<C: PairColoring + ?Sized>(
    f: &C,
    hs: &[usize],
    from: usize,
    p: &Pattern,
    chosen: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    let rank = chosen.len();
    if rank == p.size() {
        return visit(chosen);
    }
    let remaining = p.size() - rank;
    if hs.len() < from + remaining {
        return false;
    }
    for idx in from..=hs.len() - remaining {
        let y = hs[idx];
        if chosen
            .iter()
            .enumerate()
            .all(|(i, &x)| f.color(x, y) == p.get(i, rank))
        {
            chosen.push(y);
            let stop = extend_realizer(f, hs, idx + 1, p, chosen, visit);
            chosen.pop();
            if stop {
                return true;
            }
        }
    }
    false
}

/// The lexicographically least realizer of `p` inside `set`, if any.
pub fn find_realizer<C: PairColoring + ?Sized>(
    f: &C,
    set: &[usize],
    p: &Pattern,
) -> Option<Vec<usize>> {
    let mut found = None;
    visit_realizers(f, set, p, |xs| {
        found = Some(xs.to_vec());
        true
    });
    found
}

/// Every realizer of `p` inside `set`, lexicographically ordered.
pub fn realizers<C: PairColoring + ?Sized>(f: &C, set: &[usize], p: &Pattern) -> Vec<Vec<usize>> {
    let mut all = Vec::new();
    visit_realizers(f, set, p, |xs| {
        all.push(xs.to_vec());
        false
    });
    all
}

/// No subset of `set` realizes `p`. Nonempty sets never avoid `1:`.
pub fn avoids<C: PairColoring + ?Sized>(f: &C, set: &[usize], p: &Pattern) -> bool {
    find_realizer(f, set, p).is_none()
}

/// All embeddings of `q` into `p` in the given mode, lexicographically ordered.
pub fn embeddings(q: &Pattern, p: &Pattern, mode: EmbeddingMode) -> Vec<Embedding> {
    let mut out = Vec::new();
    search_embeddings(q, p, mode, &mut Vec::new(), &mut |map| {
        out.push(Embedding { map: map.to_vec() });
        false
    });
    out
}

/// The lexicographically least embedding of `q` into `p`, if any.
pub fn first_embedding(q: &Pattern, p: &Pattern, mode: EmbeddingMode) -> Option<Embedding> {
    let mut found = None;
    search_embeddings(q, p, mode, &mut Vec::new(), &mut |map| {
        found = Some(Embedding { map: map.to_vec() });
        true
    });
    found
}

pub fn is_subpattern(q: &Pattern, p: &Pattern, mode: EmbeddingMode) -> bool {
    first_embedding(q, p, mode).is_some()
}

fn search_embeddings(
    q: &Pattern,
    p: &Pattern,
    mode: EmbeddingMode,
    map: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    let k = map.len();
    if k == q.size() {
        return visit(map);
    }
    let start = match (mode, map.last()) {
        (EmbeddingMode::Monotone, Some(&last)) => last + 1,
        _ => 0,
    };
    for v in start..p.size() {
        if map.contains(&v) {
            continue;
        }
        if map
            .iter()
            .enumerate()
            .all(|(i, &u)| q.get(i, k) == p.get(u, v))
        {
            map.push(v);
            let stop = search_embeddings(q, p, mode, map, visit);
            map.pop();
            if stop {
                return true;
            }
        }
    }
    false
}

/// `F` realizes `p⁻` and each rank-`i` vertex has declared limit `p(i, ℓ−1)`.
pub fn strongly_realizes(sc: &StableColoring, set: &[usize], p: &Pattern) -> Result<bool> {
    let minus = p.minus()?;
    if !realizes(&sc.base, set, &minus)? {
        return Ok(false);
    }
    let xs = sorted_unique(set);
    let spec = p.last_column();
    Ok(xs.iter().zip(&spec).all(|(&x, &c)| sc.limit(x) == c))
}

/// The least subset of `set` strongly realizing `p`, if any; `None` when `|p| < 2`.
pub fn find_strong_realizer(sc: &StableColoring, set: &[usize], p: &Pattern) -> Option<Vec<usize>> {
    let minus = p.minus().ok()?;
    let spec = p.last_column();
    let mut found = None;
    visit_realizers(&sc.base, set, &minus, |xs| {
        if xs.iter().zip(&spec).all(|(&x, &c)| sc.limit(x) == c) {
            found = Some(xs.to_vec());
            true
        } else {
            false
        }
    });
    found
}

pub fn strongly_appears(sc: &StableColoring, set: &[usize], p: &Pattern) -> bool {
    find_strong_realizer(sc, set, p).is_some()
}
