//! Finite colorings of pairs over a window `[0, N)`, their stable variant
//! with declared limits, and partial vertex colorings.
//!
//! File format: line 1 holds `N`; line `2 + i` holds the colors of the pairs
//! `(i, j)`, `j > i`, as a bitstring of length `N − 1 − i` (the empty last row
//! is omitted). A stable coloring file appends one line of `N` limit bits.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::pattern::{Color, PairColoring};

/// A symmetric 2-coloring of the pairs over `[0, N)`.
///
/// Stored column by column (`f(x, y)`, `x < y`, lives in column `y`), so a
/// construction can append one vertex per stage.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FiniteColoring {
    window: usize,
    colors: Vec<Color>,
}

fn column_index(x: usize, y: usize) -> usize {
    y * (y - 1) / 2 + x
}

impl FiniteColoring {
    /// The coloring of a window with no vertices.
    pub fn empty() -> Self {
        FiniteColoring {
            window: 0,
            colors: Vec::new(),
        }
    }

    pub fn constant(window: usize, color: Color) -> Self {
        FiniteColoring {
            window,
            colors: vec![color & 1; window * window.saturating_sub(1) / 2],
        }
    }

    /// Builds the coloring `f(x, y) = color(x, y)` for `x < y < window`.
    pub fn from_fn(window: usize, mut color: impl FnMut(usize, usize) -> Color) -> Self {
        let mut f = Self::empty();
        for y in 0..window {
            let column: Vec<Color> = (0..y).map(|x| color(x, y) & 1).collect();
            f.push_vertex(&column);
        }
        f
    }

    pub fn window(&self) -> usize {
        self.window
    }

    /// `f(x, y)`; symmetric, `x != y`, both inside the window.
    pub fn get(&self, x: usize, y: usize) -> Color {
        let (x, y) = if x < y { (x, y) } else { (y, x) };
        assert!(
            x != y && y < self.window,
            "pair ({x},{y}) outside window {}",
            self.window
        );
        self.colors[column_index(x, y)]
    }

    pub fn set(&mut self, x: usize, y: usize, color: Color) {
        let (x, y) = if x < y { (x, y) } else { (y, x) };
        assert!(x != y && y < self.window);
        self.colors[column_index(x, y)] = color & 1;
    }

    /// Appends vertex `N` with `f(x, N) = column[x]` for every `x < N`.
    pub fn push_vertex(&mut self, column: &[Color]) {
        assert_eq!(
            column.len(),
            self.window,
            "column must color every earlier vertex"
        );
        self.colors.extend(column.iter().map(|c| c & 1));
        self.window += 1;
    }

    /// The column `f(·, y)` over `[0, y)`.
    pub fn column(&self, y: usize) -> &[Color] {
        let start = column_index(0, y.max(1));
        if y == 0 {
            return &[];
        }
        &self.colors[start..start + y]
    }

    /// Restriction to the window `[0, n)`.
    pub fn truncate(&self, n: usize) -> Self {
        let n = n.min(self.window);
        FiniteColoring {
            window: n,
            colors: self.colors[..n * n.saturating_sub(1) / 2].to_vec(),
        }
    }

    /// Every pair color inverted.
    pub fn flip(&self) -> Self {
        FiniteColoring {
            window: self.window,
            colors: self.colors.iter().map(|c| 1 - c).collect(),
        }
    }

    pub fn to_file_string(&self) -> String {
        let mut out = format!("{}\n", self.window);
        for x in 0..self.window.saturating_sub(1) {
            for y in x + 1..self.window {
                out.push(if self.get(x, y) == 0 { '0' } else { '1' });
            }
            out.push('\n');
        }
        out
    }

    pub fn parse_file(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim_start().starts_with('#'));
        let (window, rows) = parse_rows(&mut lines)?;
        let f = Self::from_fn(window, |x, y| rows[x][y - x - 1]);
        if let Some((idx, line)) = lines.find(|(_, l)| !l.trim().is_empty()) {
            return Err(Error::Parse {
                line: idx + 1,
                reason: format!("unexpected trailing content `{}`", line.trim()),
            });
        }
        Ok(f)
    }
}

fn parse_bits(line: &str, line_no: usize) -> Result<Vec<Color>> {
    line.trim()
        .chars()
        .map(|ch| match ch {
            '0' => Ok(0),
            '1' => Ok(1),
            other => Err(Error::Parse {
                line: line_no,
                reason: format!("unexpected character `{other}`"),
            }),
        })
        .collect()
}

type NumberedLines<'a> = dyn Iterator<Item = (usize, &'a str)> + 'a;

fn parse_rows(lines: &mut NumberedLines<'_>) -> Result<(usize, Vec<Vec<Color>>)> {
    let (idx, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        reason: "missing window size".into(),
    })?;
    let window: usize = header.trim().parse().map_err(|_| Error::Parse {
        line: idx + 1,
        reason: format!("window size `{}` is not an integer", header.trim()),
    })?;
    let mut rows = Vec::with_capacity(window);
    for x in 0..window.saturating_sub(1) {
        let (idx, line) = lines.next().ok_or(Error::Parse {
            line: idx + 2 + x,
            reason: format!("missing row {x}"),
        })?;
        let bits = parse_bits(line, idx + 1)?;
        let expected = window - 1 - x;
        if bits.len() != expected {
            return Err(Error::Parse {
                line: idx + 1,
                reason: format!("row {x} needs {expected} bits, found {}", bits.len()),
            });
        }
        rows.push(bits);
    }
    Ok((window, rows))
}

impl PairColoring for FiniteColoring {
    fn vertex_count(&self) -> usize {
        self.window
    }

    fn color(&self, x: usize, y: usize) -> Color {
        self.get(x, y)
    }
}

/// A finite coloring together with a declared limit color per vertex,
/// standing in for `lim_y f(x, y)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StableColoring {
    pub base: FiniteColoring,
    limit: Vec<Color>,
}

impl StableColoring {
    pub fn new(base: FiniteColoring, limit: Vec<Color>) -> Result<Self> {
        if limit.len() != base.window() {
            return Err(Error::Precondition(format!(
                "limit has {} entries for a window of {}",
                limit.len(),
                base.window()
            )));
        }
        Ok(StableColoring {
            base,
            limit: limit.into_iter().map(|c| c & 1).collect(),
        })
    }

    pub fn limit(&self, x: usize) -> Color {
        self.limit[x]
    }

    pub fn limits(&self) -> &[Color] {
        &self.limit
    }

    /// `A_i = {x : limit(x) = i}` within the window.
    pub fn limit_class(&self, color: Color) -> Vec<usize> {
        (0..self.limit.len())
            .filter(|&x| self.limit[x] == color)
            .collect()
    }

    pub fn to_file_string(&self) -> String {
        let mut out = self.base.to_file_string();
        for &c in &self.limit {
            out.push(if c == 0 { '0' } else { '1' });
        }
        out.push('\n');
        out
    }

    pub fn parse_file(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim_start().starts_with('#'));
        let (window, rows) = parse_rows(&mut lines)?;
        let base = FiniteColoring::from_fn(window, |x, y| rows[x][y - x - 1]);
        let limit = match lines.next() {
            Some((idx, line)) => {
                let bits = parse_bits(line, idx + 1)?;
                if bits.len() != window {
                    return Err(Error::Parse {
                        line: idx + 1,
                        reason: format!("limit line needs {window} bits, found {}", bits.len()),
                    });
                }
                bits
            }
            None if window == 0 => Vec::new(),
            None => {
                return Err(Error::Parse {
                    line: window + 1,
                    reason: "missing limit line".into(),
                })
            }
        };
        StableColoring::new(base, limit)
    }
}

/// A partial map from vertices to colors; the witness `g` of stabilization.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct PartialColoring {
    assignments: BTreeMap<usize, Color>,
}

impl PartialColoring {
    pub fn new() -> Self {
        Self::default()
    }

    /// `g(vertices[k]) = colors[k]`.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Color)>) -> Self {
        PartialColoring {
            assignments: pairs.into_iter().map(|(v, c)| (v, c & 1)).collect(),
        }
    }

    /// The total coloring of `[0, n]` read from the bits of `mask`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Self::from_pairs((0..=n).map(|v| (v, ((mask >> v) & 1) as Color)))
    }

    pub fn get(&self, v: usize) -> Option<Color> {
        self.assignments.get(&v).copied()
    }

    pub fn set(&mut self, v: usize, c: Color) {
        self.assignments.insert(v, c & 1);
    }

    pub fn is_defined_on(&self, vertices: &[usize]) -> bool {
        vertices.iter().all(|v| self.assignments.contains_key(v))
    }

    pub fn require(&self, v: usize) -> Result<Color> {
        self.get(v).ok_or(Error::WitnessUndefined(v))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Color)> + '_ {
        self.assignments.iter().map(|(&v, &c)| (v, c))
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    /// `v=c` pairs separated by commas, e.g. `0=1,3=0`.
    pub fn describe(&self) -> String {
        let mut out = String::new();
        for (i, (v, c)) in self.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{v}={c}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1() -> FiniteColoring {
        FiniteColoring::from_fn(3, |x, y| match (x, y) {
            (0, 2) => 1,
            _ => 0,
        })
    }

    #[test]
    fn symmetric_access() {
        let f = fig1();
        assert_eq!(f.get(0, 2), 1);
        assert_eq!(f.get(2, 0), 1);
        assert_eq!(f.get(1, 2), 0);
        assert_eq!(f.column(2), &[1, 0]);
        assert_eq!(f.column(0), &[] as &[Color]);
    }

    #[test]
    fn file_round_trip() {
        let f = fig1();
        let text = f.to_file_string();
        assert_eq!(text, "3\n01\n0\n");
        assert_eq!(FiniteColoring::parse_file(&text).unwrap(), f);
        let one = FiniteColoring::constant(1, 0);
        assert_eq!(one.to_file_string(), "1\n");
        assert_eq!(FiniteColoring::parse_file("1\n").unwrap(), one);
    }

    #[test]
    fn file_errors() {
        assert!(matches!(
            FiniteColoring::parse_file("3\n01\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            FiniteColoring::parse_file("3\n011\n0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            FiniteColoring::parse_file("x\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            FiniteColoring::parse_file("2\n2\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn stable_file_round_trip() {
        let sc = StableColoring::new(fig1(), vec![1, 0, 1]).unwrap();
        let text = sc.to_file_string();
        assert_eq!(text, "3\n01\n0\n101\n");
        assert_eq!(StableColoring::parse_file(&text).unwrap(), sc);
        assert!(StableColoring::parse_file("3\n01\n0\n").is_err());
        assert_eq!(sc.limit_class(1), vec![0, 2]);
    }

    #[test]
    fn truncate_and_flip() {
        let f = FiniteColoring::from_fn(6, |x, y| ((x + y) % 2) as Color);
        let t = f.truncate(4);
        assert_eq!(t.window(), 4);
        for y in 0..4 {
            for x in 0..y {
                assert_eq!(t.get(x, y), f.get(x, y));
                assert_eq!(f.flip().get(x, y), 1 - f.get(x, y));
            }
        }
    }
}
