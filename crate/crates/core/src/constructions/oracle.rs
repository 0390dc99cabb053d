//! Mock oracles for the constructions, and the oracle table file format.
//!
//! ```text
//! approx e:0 s:5 set:1,2,3
//! prefix e:0 sigma:01 s:4 set:7
//! pattern a:0 p:3:010
//! biarray e:0 n:1 set:3,4 stage:5
//! biarray e:0 n:1 m:2 set:7 stage:9
//! ```
//!
//! An `approx` record gives the approximation from stage `s` until the next
//! listed stage. A `prefix` record adds its set to the output of every
//! extension of `sigma` from stage `s` on (`sigma:-` is the empty string).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::pattern::{Color, Pattern};
use crate::records::{format_list, parse_records, Record};

/// Stage approximations `W_e[s] ⊆ [0, s)` of sets enumerated relative to a jump.
pub trait ApproxOracle: Sync {
    /// Sorted, duplicate-free, every element below `s`.
    fn approx(&self, e: usize, s: usize) -> Vec<usize>;
}

/// Step-function oracle built from listed stages.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TableOracle {
    entries: BTreeMap<usize, BTreeMap<usize, Vec<usize>>>,
}

impl TableOracle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, e: usize, s: usize, set: Vec<usize>) {
        let mut set = set;
        set.sort_unstable();
        set.dedup();
        self.entries.entry(e).or_default().insert(s, set);
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn records(&self) -> impl Iterator<Item = Record> + '_ {
        self.entries.iter().flat_map(|(&e, stages)| {
            stages.iter().map(move |(&s, set)| {
                Record::new("approx")
                    .with("e", e)
                    .with("s", s)
                    .with("set", format_list(set))
            })
        })
    }
}

impl ApproxOracle for TableOracle {
    fn approx(&self, e: usize, s: usize) -> Vec<usize> {
        self.entries
            .get(&e)
            .and_then(|stages| stages.range(..=s).next_back())
            .map(|(_, set)| set.iter().copied().filter(|&x| x < s).collect())
            .unwrap_or_default()
    }
}

/// Eventually constant approximations: from `settle` on, `W_e[s]` is the
/// target set below `s`. Earlier stages flicker: at odd stages only the even
/// elements are present.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StableOracle {
    targets: BTreeMap<usize, (Vec<usize>, usize)>,
}

impl StableOracle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_set(mut self, e: usize, set: Vec<usize>, settle: usize) -> Self {
        let mut set = set;
        set.sort_unstable();
        set.dedup();
        self.targets.insert(e, (set, settle));
        self
    }

    pub fn target(&self, e: usize) -> Option<&[usize]> {
        self.targets.get(&e).map(|(set, _)| set.as_slice())
    }

    pub fn settle_stage(&self, e: usize) -> Option<usize> {
        self.targets.get(&e).map(|&(_, settle)| settle)
    }

    /// The same approximations as a table, listing stages `0..stages`.
    pub fn to_table(&self, stages: usize) -> TableOracle {
        let mut table = TableOracle::new();
        for &e in self.targets.keys() {
            let mut last: Option<Vec<usize>> = None;
            for s in 0..stages {
                let now = self.approx(e, s);
                if last.as_ref() != Some(&now) {
                    table.insert(e, s, now.clone());
                    last = Some(now);
                }
            }
        }
        table
    }
}

impl ApproxOracle for StableOracle {
    fn approx(&self, e: usize, s: usize) -> Vec<usize> {
        match self.targets.get(&e) {
            None => Vec::new(),
            Some((set, settle)) => set
                .iter()
                .copied()
                .filter(|&x| x < s)
                .filter(|&x| s >= *settle || s.is_multiple_of(2) || x % 2 == 0)
                .collect(),
        }
    }
}

/// A finite-prefix approximation `σ ↦ W_e^σ[s]`.
///
/// Implementations must be monotone in `σ` (prefix extension) and in `s`,
/// and must only read the first [`PrefixFunctional::use_bound`] bits of `σ`.
pub trait PrefixFunctional: Sync {
    fn output(&self, sigma: &[Color], s: usize) -> Vec<usize>;
    fn use_bound(&self) -> usize;
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TablePrefixFunctional {
    entries: Vec<(Vec<Color>, usize, Vec<usize>)>,
}

impl TablePrefixFunctional {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, sigma: Vec<Color>, s: usize, set: Vec<usize>) {
        self.entries.push((sigma, s, set));
        self.entries.sort();
    }
}

impl PrefixFunctional for TablePrefixFunctional {
    fn output(&self, sigma: &[Color], s: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .entries
            .iter()
            .filter(|(tau, stage, _)| *stage <= s && sigma.starts_with(tau))
            .flat_map(|(_, _, set)| set.iter().copied())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn use_bound(&self) -> usize {
        self.entries
            .iter()
            .map(|(tau, _, _)| tau.len())
            .max()
            .unwrap_or(0)
    }
}

/// A functional given by a rule; the rule is trusted to be monotone.
pub struct RuleFunctional<F> {
    use_bound: usize,
    rule: F,
}

impl<F: Fn(&[Color], usize) -> Vec<usize> + Sync> RuleFunctional<F> {
    pub fn new(use_bound: usize, rule: F) -> Self {
        RuleFunctional { use_bound, rule }
    }
}

impl<F: Fn(&[Color], usize) -> Vec<usize> + Sync> PrefixFunctional for RuleFunctional<F> {
    fn output(&self, sigma: &[Color], s: usize) -> Vec<usize> {
        let cut = sigma.len().min(self.use_bound);
        let mut out = (self.rule)(&sigma[..cut], s);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn use_bound(&self) -> usize {
        self.use_bound
    }
}

/// Checks monotonicity on every string of length at most `depth` and every
/// stage below `stages`. Returns the first violation found.
pub fn check_prefix_monotone(
    fun: &dyn PrefixFunctional,
    depth: usize,
    stages: usize,
) -> std::result::Result<(), String> {
    let subset = |a: &[usize], b: &[usize]| a.iter().all(|x| b.binary_search(x).is_ok());
    for len in 0..=depth {
        for bits in 0u64..(1u64 << len) {
            let sigma: Vec<Color> = (0..len)
                .map(|k| ((bits >> (len - 1 - k)) & 1) as Color)
                .collect();
            for s in 0..stages {
                let here = fun.output(&sigma, s);
                if s + 1 < stages && !subset(&here, &fun.output(&sigma, s + 1)) {
                    return Err(format!(
                        "output shrinks from stage {s} to {} at {sigma:?}",
                        s + 1
                    ));
                }
                if len < depth {
                    for b in 0..2 {
                        let mut child = sigma.clone();
                        child.push(b);
                        if !subset(&here, &fun.output(&child, s)) {
                            return Err(format!(
                                "output shrinks from {sigma:?} to {child:?} at stage {s}"
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// A partial c.e. bi-array `(E_n, F_{n,m})` with convergence stages.
pub trait BiArrayFunctional: Sync {
    /// `E_n` if it has converged by stage `s`.
    fn e_set(&self, n: usize, s: usize) -> Option<Vec<usize>>;
    /// `F_{n,m}` if it has converged by stage `s`.
    fn f_set(&self, n: usize, m: usize, s: usize) -> Option<Vec<usize>>;
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TableBiArray {
    rows: BTreeMap<usize, (Vec<usize>, usize)>,
    cells: BTreeMap<(usize, usize), (Vec<usize>, usize)>,
}

impl TableBiArray {
    pub fn new() -> Self {
        Self::default()
    }

    /// Requires a nonempty set with `min E_n > n`.
    pub fn insert_row(&mut self, n: usize, set: Vec<usize>, stage: usize) -> Result<()> {
        let set = normalized(set);
        match set.first() {
            Some(&min) if min > n => {
                self.rows.insert(n, (set, stage));
                Ok(())
            }
            _ => Err(Error::Precondition(format!(
                "E_{n} must be nonempty with minimum above {n}"
            ))),
        }
    }

    /// Requires a nonempty set with `min F_{n,m} > m`.
    pub fn insert_cell(&mut self, n: usize, m: usize, set: Vec<usize>, stage: usize) -> Result<()> {
        let set = normalized(set);
        match set.first() {
            Some(&min) if min > m => {
                self.cells.insert((n, m), (set, stage));
                Ok(())
            }
            _ => Err(Error::Precondition(format!(
                "F_({n},{m}) must be nonempty with minimum above {m}"
            ))),
        }
    }

    fn records(&self, e: usize) -> Vec<Record> {
        let mut out = Vec::new();
        for (&n, (set, stage)) in &self.rows {
            out.push(
                Record::new("biarray")
                    .with("e", e)
                    .with("n", n)
                    .with("set", format_list(set))
                    .with("stage", stage),
            );
        }
        for (&(n, m), (set, stage)) in &self.cells {
            out.push(
                Record::new("biarray")
                    .with("e", e)
                    .with("n", n)
                    .with("m", m)
                    .with("set", format_list(set))
                    .with("stage", stage),
            );
        }
        out
    }
}

fn normalized(mut set: Vec<usize>) -> Vec<usize> {
    set.sort_unstable();
    set.dedup();
    set
}

impl BiArrayFunctional for TableBiArray {
    fn e_set(&self, n: usize, s: usize) -> Option<Vec<usize>> {
        self.rows
            .get(&n)
            .filter(|(_, st)| *st <= s)
            .map(|(set, _)| set.clone())
    }

    fn f_set(&self, n: usize, m: usize, s: usize) -> Option<Vec<usize>> {
        self.cells
            .get(&(n, m))
            .filter(|(_, st)| *st <= s)
            .map(|(set, _)| set.clone())
    }
}

/// A bi-array given by rules returning `(set, convergence stage)`.
pub struct RuleBiArray<E, F> {
    row: E,
    cell: F,
}

impl<E, F> RuleBiArray<E, F>
where
    E: Fn(usize) -> Option<(Vec<usize>, usize)> + Sync,
    F: Fn(usize, usize) -> Option<(Vec<usize>, usize)> + Sync,
{
    pub fn new(row: E, cell: F) -> Self {
        RuleBiArray { row, cell }
    }
}

impl<E, F> BiArrayFunctional for RuleBiArray<E, F>
where
    E: Fn(usize) -> Option<(Vec<usize>, usize)> + Sync,
    F: Fn(usize, usize) -> Option<(Vec<usize>, usize)> + Sync,
{
    fn e_set(&self, n: usize, s: usize) -> Option<Vec<usize>> {
        (self.row)(n)
            .filter(|(_, st)| *st <= s)
            .map(|(set, _)| normalized(set))
    }

    fn f_set(&self, n: usize, m: usize, s: usize) -> Option<Vec<usize>> {
        (self.cell)(n, m)
            .filter(|(_, st)| *st <= s)
            .map(|(set, _)| normalized(set))
    }
}

/// Everything an oracle table file can describe.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleFile {
    pub approx: TableOracle,
    pub prefix: BTreeMap<usize, TablePrefixFunctional>,
    pub patterns: BTreeMap<usize, Pattern>,
    pub biarray: BTreeMap<usize, TableBiArray>,
}

fn parse_bits(value: &str, line: usize) -> Result<Vec<Color>> {
    if value == "-" {
        return Ok(Vec::new());
    }
    value
        .chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            other => Err(Error::Parse {
                line,
                reason: format!("`{other}` is not a bit"),
            }),
        })
        .collect()
}

impl OracleFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = OracleFile::default();
        for (line, rec) in parse_records(text)? {
            let as_parse = |err: Error| match err {
                Error::Parse { .. } => err,
                other => Error::Parse {
                    line,
                    reason: other.to_string(),
                },
            };
            match rec.kind.as_str() {
                "approx" => {
                    let e = rec.require_usize("e", line)?;
                    let s = rec.require_usize("s", line)?;
                    out.approx.insert(e, s, rec.require_list("set", line)?);
                }
                "prefix" => {
                    let e = rec.require_usize("e", line)?;
                    let sigma = parse_bits(rec.require("sigma", line)?, line)?;
                    let s = rec.require_usize("s", line)?;
                    let set = rec.require_list("set", line)?;
                    out.prefix.entry(e).or_default().insert(sigma, s, set);
                }
                "pattern" => {
                    let a = rec.require_usize("a", line)?;
                    let p: Pattern = rec.require("p", line)?.parse().map_err(as_parse)?;
                    out.patterns.insert(a, p);
                }
                "biarray" => {
                    let e = rec.require_usize("e", line)?;
                    let n = rec.require_usize("n", line)?;
                    let set = rec.require_list("set", line)?;
                    let stage = rec.require_usize("stage", line)?;
                    let table = out.biarray.entry(e).or_default();
                    match rec.optional_usize("m", line)? {
                        None => table.insert_row(n, set, stage),
                        Some(m) => table.insert_cell(n, m, set, stage),
                    }
                    .map_err(as_parse)?;
                }
                other => {
                    return Err(Error::Parse {
                        line,
                        reason: format!("unknown record kind `{other}`"),
                    })
                }
            }
        }
        Ok(out)
    }

    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        for r in self.approx.records() {
            let _ = writeln!(out, "{r}");
        }
        for (&e, table) in &self.prefix {
            for (sigma, s, set) in &table.entries {
                let bits: String = if sigma.is_empty() {
                    "-".into()
                } else {
                    sigma
                        .iter()
                        .map(|b| if *b == 0 { '0' } else { '1' })
                        .collect()
                };
                let r = Record::new("prefix")
                    .with("e", e)
                    .with("sigma", bits)
                    .with("s", s)
                    .with("set", format_list(set));
                let _ = writeln!(out, "{r}");
            }
        }
        for (&a, p) in &self.patterns {
            let _ = writeln!(out, "{}", Record::new("pattern").with("a", a).with("p", p));
        }
        for (&e, table) in &self.biarray {
            for r in table.records(e) {
                let _ = writeln!(out, "{r}");
            }
        }
        out
    }

    /// Prefix functionals indexed `0..=max e`; missing indices are silent.
    pub fn functionals(&self) -> Vec<TablePrefixFunctional> {
        let top = self.prefix.keys().next_back().map_or(0, |&e| e + 1);
        (0..top)
            .map(|e| self.prefix.get(&e).cloned().unwrap_or_default())
            .collect()
    }

    /// Patterns indexed `0..=max a`; every index must be present.
    pub fn pattern_list(&self) -> Result<Vec<Pattern>> {
        self.patterns
            .iter()
            .enumerate()
            .map(|(pos, (&a, p))| {
                if a == pos {
                    Ok(p.clone())
                } else {
                    Err(Error::Parse {
                        line: 0,
                        reason: format!("pattern index {pos} is missing"),
                    })
                }
            })
            .collect()
    }

    /// Bi-arrays indexed `0..=max e`; missing indices are nowhere defined.
    pub fn biarrays(&self) -> Vec<TableBiArray> {
        let top = self.biarray.keys().next_back().map_or(0, |&e| e + 1);
        (0..top)
            .map(|e| self.biarray.get(&e).cloned().unwrap_or_default())
            .collect()
    }
}
