//! Patterns: finite 2-colorings of the unordered pairs over `[0, ℓ)`.
//!
//! The textual form is `ℓ:bits`, where `bits` lists the colors of the
//! `C(ℓ,2)` pairs in lexicographic order `(0,1), (0,2), …, (0,ℓ−1), (1,2), …`.
//! Patterns order by `(size, bitstring)`, which is the order used for
//! enumeration and for picking reproducible witnesses.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A color in `{0, 1}`.
pub type Color = u8;

/// Anything that assigns a color to every unordered pair of its vertices.
///
/// Implemented by [`Pattern`] and by finite colorings, so realization and
/// embedding checks share one code path.
pub trait PairColoring {
    fn vertex_count(&self) -> usize;

    /// Color of the pair `{x, y}`; `x != y`, argument order irrelevant.
    fn color(&self, x: usize, y: usize) -> Color;
}

pub(crate) fn pair_count(size: usize) -> usize {
    size * size.saturating_sub(1) / 2
}

/// Position of the pair `(i, j)`, `i < j`, in lexicographic pair order.
fn lex_index(size: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < size);
    i * (2 * size - i - 1) / 2 + (j - i - 1)
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    // Field order matters: the derived `Ord` is the (size, bitstring) order.
    size: usize,
    colors: Vec<Color>,
}

impl Pattern {
    /// Builds a pattern from its pair colors in lexicographic order.
    pub fn new(size: usize, colors: Vec<Color>) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyPattern);
        }
        let expected = pair_count(size);
        if colors.len() != expected {
            return Err(Error::BitCount {
                text: format!("{size}:<{} colors>", colors.len()),
                size,
                expected,
                found: colors.len(),
            });
        }
        if let Some(bad) = colors.iter().find(|&&c| c > 1) {
            return Err(Error::MalformedPattern {
                text: format!("{size}:…"),
                reason: format!("color {bad} is not 0 or 1"),
            });
        }
        Ok(Pattern { size, colors })
    }

    /// Builds a pattern of the given size from a color function on pairs `i < j`.
    pub fn from_fn(size: usize, mut color: impl FnMut(usize, usize) -> Color) -> Self {
        assert!(size >= 1, "pattern size must be at least 1");
        let mut colors = Vec::with_capacity(pair_count(size));
        for i in 0..size {
            for j in i + 1..size {
                colors.push(color(i, j) & 1);
            }
        }
        Pattern { size, colors }
    }

    /// Pattern whose bitstring is the `C(size,2)`-bit binary expansion of
    /// `code`, first pair most significant.
    pub fn from_code(size: usize, code: u64) -> Self {
        let m = pair_count(size);
        debug_assert!(m <= 64);
        let colors = (0..m)
            .map(|k| ((code >> (m - 1 - k)) & 1) as Color)
            .collect();
        Pattern { size, colors }
    }

    /// Inverse of [`Pattern::from_code`]; needs `C(size,2) <= 64`.
    pub fn code(&self) -> u64 {
        self.colors
            .iter()
            .fold(0u64, |acc, &c| (acc << 1) | c as u64)
    }

    /// The singleton pattern `1:`.
    pub fn singleton() -> Self {
        Pattern {
            size: 1,
            colors: Vec::new(),
        }
    }

    /// The pattern of the given size with every pair colored `color`.
    pub fn constant(size: usize, color: Color) -> Self {
        Self::from_fn(size, |_, _| color)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Pair colors in lexicographic pair order.
    pub fn bits(&self) -> &[Color] {
        &self.colors
    }

    /// `p(i, j)` for `i != j`.
    pub fn get(&self, i: usize, j: usize) -> Color {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.colors[lex_index(self.size, i, j)]
    }

    /// Flips every pair color.
    pub fn dual(&self) -> Self {
        Pattern {
            size: self.size,
            colors: self.colors.iter().map(|c| 1 - c).collect(),
        }
    }

    /// Drops the last vertex; the result is `p⁻`.
    pub fn minus(&self) -> Result<Self> {
        if self.size < 2 {
            return Err(Error::PatternTooSmall {
                needed: 2,
                actual: self.size,
            });
        }
        Ok(Self::from_fn(self.size - 1, |i, j| self.get(i, j)))
    }

    /// The limit specification `p(·, ℓ−1)` of the last vertex.
    pub fn last_column(&self) -> Vec<Color> {
        let last = self.size - 1;
        (0..last).map(|x| self.get(x, last)).collect()
    }

    /// Induced sub-pattern on a strictly increasing vertex list, relabeled by rank.
    pub fn restrict(&self, vertices: &[usize]) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyVertexList);
        }
        for w in vertices.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateVertex(w[0]));
            }
            if w[0] > w[1] {
                return Err(Error::UnorderedVertices {
                    previous: w[0],
                    next: w[1],
                });
            }
        }
        if let Some(&v) = vertices.iter().find(|&&v| v >= self.size) {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                bound: self.size,
            });
        }
        Ok(self.relabel(vertices))
    }

    /// Pattern `q(x, y) = p(map[x], map[y])` for an injective `map`; unchecked.
    pub(crate) fn relabel(&self, map: &[usize]) -> Self {
        Self::from_fn(map.len(), |i, j| self.get(map[i], map[j]))
    }
}

impl PairColoring for Pattern {
    fn vertex_count(&self) -> usize {
        self.size
    }

    fn color(&self, x: usize, y: usize) -> Color {
        self.get(x, y)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.size)?;
        for &c in &self.colors {
            f.write_str(if c == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern({self})")
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        parse_pattern(text)
    }
}

/// Parses the `ℓ:bits` form.
pub fn parse_pattern(text: &str) -> Result<Pattern> {
    let malformed = |reason: &str| Error::MalformedPattern {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let (size_part, bits_part) = text
        .trim()
        .split_once(':')
        .ok_or_else(|| malformed("missing `:` separator"))?;
    let size: usize = size_part
        .parse()
        .map_err(|_| malformed("size is not a nonnegative integer"))?;
    if size == 0 {
        return Err(Error::EmptyPattern);
    }
    let colors = bits_part
        .chars()
        .map(|ch| match ch {
            '0' => Ok(0),
            '1' => Ok(1),
            other => Err(malformed(&format!(
                "unexpected character `{other}` in bits"
            ))),
        })
        .collect::<Result<Vec<Color>>>()?;
    let expected = pair_count(size);
    if colors.len() != expected {
        return Err(Error::BitCount {
            text: text.to_string(),
            size,
            expected,
            found: colors.len(),
        });
    }
    Ok(Pattern { size, colors })
}

pub fn format_pattern(p: &Pattern) -> String {
    p.to_string()
}
