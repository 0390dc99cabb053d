//! Sub-pattern enumeration, the three preservation verdicts, and census tables.
//!
//! A verdict asks whether some sub-pattern has a property:
//!
//! * `omega-hyp`: a divergent irreducible sub-pattern;
//! * `one-2dim`: a divergent irreducible 0-merging sub-pattern and a divergent
//!   irreducible 1-merging one (possibly equal);
//! * `omega-2dim`: a divergent irreducible merging sub-pattern.
//!
//! Witnesses are the least qualifying sub-patterns in `(size, bitstring)`
//! order, each with its least embedding.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::algebra::{classify, ClassificationFlags};
use crate::error::{Error, Result};
use crate::pattern::{pair_count, Pattern};
use crate::realize::{first_embedding, Embedding, EmbeddingMode};

/// Largest pair count accepted by exhaustive enumeration.
pub const MAX_ENUMERATED_PAIRS: usize = 28;

fn guard(size: usize) -> Result<()> {
    if size == 0 {
        return Err(Error::EmptyPattern);
    }
    if pair_count(size) > MAX_ENUMERATED_PAIRS {
        return Err(Error::Guard(format!(
            "size {size} has {} pairs; enumeration is capped at {MAX_ENUMERATED_PAIRS}",
            pair_count(size)
        )));
    }
    Ok(())
}

/// All patterns of the given size, in ascending bitstring order, lazily.
pub fn pattern_iter(size: usize) -> Result<impl Iterator<Item = Pattern>> {
    guard(size)?;
    let count = 1u64 << pair_count(size);
    Ok((0..count).map(move |code| Pattern::from_code(size, code)))
}

pub fn enumerate_patterns(size: usize) -> Result<Vec<Pattern>> {
    Ok(pattern_iter(size)?.collect())
}

/// Every sub-pattern of `p` in the given mode, deduplicated and ordered.
pub fn subpatterns(p: &Pattern, mode: EmbeddingMode) -> BTreeSet<Pattern> {
    let mut out = BTreeSet::new();
    let mut map = Vec::with_capacity(p.size());
    collect_maps(p, mode, &mut map, &mut out);
    out
}

fn collect_maps(
    p: &Pattern,
    mode: EmbeddingMode,
    map: &mut Vec<usize>,
    out: &mut BTreeSet<Pattern>,
) {
    if !map.is_empty() {
        out.insert(p.relabel(map));
    }
    if map.len() == p.size() {
        return;
    }
    let start = match (mode, map.last()) {
        (EmbeddingMode::Monotone, Some(&last)) => last + 1,
        _ => 0,
    };
    for v in start..p.size() {
        if !map.contains(&v) {
            map.push(v);
            collect_maps(p, mode, map, out);
            map.pop();
        }
    }
}

/// A sub-pattern together with one embedding of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub pattern: Pattern,
    pub embedding: Embedding,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Verdicts {
    pub omega_hyp: bool,
    pub one_2dim: bool,
    pub omega_2dim: bool,
}

impl Verdicts {
    fn from_exists(bits: u8) -> Self {
        Verdicts {
            omega_hyp: bits & EXISTS_DI != 0,
            one_2dim: bits & EXISTS_DI0 != 0 && bits & EXISTS_DI1 != 0,
            omega_2dim: bits & EXISTS_DIM != 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub pattern: Pattern,
    pub mode: EmbeddingMode,
    pub flags: ClassificationFlags,
    pub verdict_omega_hyp: bool,
    pub verdict_one_2dim: bool,
    pub verdict_omega_2dim: bool,
    pub witness_omega_hyp: Option<Witness>,
    /// The 0-merging and the 1-merging witness.
    pub witness_one_2dim: Option<(Witness, Witness)>,
    pub witness_omega_2dim: Option<Witness>,
}

impl ClassificationReport {
    pub fn verdicts(&self) -> Verdicts {
        Verdicts {
            omega_hyp: self.verdict_omega_hyp,
            one_2dim: self.verdict_one_2dim,
            omega_2dim: self.verdict_omega_2dim,
        }
    }
}

fn least_with(
    p: &Pattern,
    subs: &[(Pattern, ClassificationFlags)],
    mode: EmbeddingMode,
    pred: impl Fn(&ClassificationFlags) -> bool,
) -> Option<Witness> {
    subs.iter().find(|(_, fl)| pred(fl)).map(|(q, _)| Witness {
        pattern: q.clone(),
        embedding: first_embedding(q, p, mode).expect("sub-pattern embeds"),
    })
}

/// Full report for one pattern, by direct sub-pattern enumeration.
pub fn classify_report(p: &Pattern, mode: EmbeddingMode) -> ClassificationReport {
    let subs: Vec<(Pattern, ClassificationFlags)> = subpatterns(p, mode)
        .into_iter()
        .map(|q| {
            let fl = classify(&q);
            (q, fl)
        })
        .collect();
    let hyp = least_with(p, &subs, mode, |f| f.div_irr());
    let w0 = least_with(p, &subs, mode, |f| f.div_irr() && f.merging0);
    let w1 = least_with(p, &subs, mode, |f| f.div_irr() && f.merging1);
    let full = least_with(p, &subs, mode, |f| f.div_irr() && f.merging);
    ClassificationReport {
        pattern: p.clone(),
        mode,
        flags: classify(p),
        verdict_omega_hyp: hyp.is_some(),
        verdict_one_2dim: w0.is_some() && w1.is_some(),
        verdict_omega_2dim: full.is_some(),
        witness_omega_hyp: hyp,
        witness_one_2dim: w0.zip(w1),
        witness_omega_2dim: full,
    }
}

fn exists_sub(
    p: &Pattern,
    mode: EmbeddingMode,
    pred: impl Fn(&ClassificationFlags) -> bool,
) -> bool {
    subpatterns(p, mode).iter().any(|q| pred(&classify(q)))
}

pub fn preserves_omega_hyp(p: &Pattern, mode: EmbeddingMode) -> bool {
    exists_sub(p, mode, |f| f.div_irr())
}

pub fn preserves_one_2dim(p: &Pattern, mode: EmbeddingMode) -> bool {
    let subs: Vec<ClassificationFlags> = subpatterns(p, mode).iter().map(classify).collect();
    subs.iter().any(|f| f.div_irr() && f.merging0) && subs.iter().any(|f| f.div_irr() && f.merging1)
}

pub fn preserves_omega_2dim(p: &Pattern, mode: EmbeddingMode) -> bool {
    exists_sub(p, mode, |f| f.div_irr() && f.merging)
}

const EXISTS_DI: u8 = 1;
const EXISTS_DI0: u8 = 2;
const EXISTS_DI1: u8 = 4;
const EXISTS_DIM: u8 = 8;

fn own_properties(flags: ClassificationFlags) -> u8 {
    if !flags.div_irr() {
        return 0;
    }
    EXISTS_DI
        | if flags.merging0 { EXISTS_DI0 } else { 0 }
        | if flags.merging1 { EXISTS_DI1 } else { 0 }
        | if flags.merging { EXISTS_DIM } else { 0 }
}

/// Bit position (from the least significant end) of pair `(i, j)` in a code.
fn code_bit(size: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    let lex = i * (2 * size - i - 1) / 2 + (j - i - 1);
    pair_count(size) - 1 - lex
}

/// For every target pair bit of the smaller code, the source bit of the larger one.
fn bit_transfer(size: usize, map: &[usize], source_size: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(pair_count(size));
    for i in 0..size {
        for j in i + 1..size {
            out.push((code_bit(source_size, map[i], map[j]), code_bit(size, i, j)));
        }
    }
    out
}

fn apply_transfer(code: u64, transfer: &[(usize, usize)]) -> u64 {
    transfer
        .iter()
        .fold(0u64, |acc, &(src, dst)| acc | (((code >> src) & 1) << dst))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Per-size lookup tables: flags of every pattern and the existential
/// sub-pattern bits used by the verdicts.
struct Tables {
    flags: Vec<u8>,
    exists: Vec<u8>,
}

fn build_tables(size: usize, mode: EmbeddingMode) -> Vec<Tables> {
    let mut levels: Vec<Tables> = Vec::with_capacity(size);
    for k in 1..=size {
        let count = 1u64 << pair_count(k);
        let flags: Vec<u8> = (0..count)
            .into_par_iter()
            .map(|code| classify(&Pattern::from_code(k, code)).bits())
            .collect();
        let own: Vec<u8> = flags
            .iter()
            .map(|&b| own_properties(ClassificationFlags::from_bits(b)))
            .collect();
        let top = match mode {
            EmbeddingMode::Monotone => own,
            EmbeddingMode::Injective => orbit_union(k, &own),
        };
        let exists = if k == 1 {
            top
        } else {
            let prev = &levels[k - 2].exists;
            let deletions: Vec<Vec<(usize, usize)>> = (0..k)
                .map(|v| {
                    let keep: Vec<usize> = (0..k).filter(|&u| u != v).collect();
                    bit_transfer(k - 1, &keep, k)
                })
                .collect();
            (0..count)
                .into_par_iter()
                .map(|code| {
                    deletions.iter().fold(top[code as usize], |acc, t| {
                        acc | prev[apply_transfer(code, t) as usize]
                    })
                })
                .collect()
        };
        levels.push(Tables { flags, exists });
    }
    levels
}

/// `out[c]` is the union of `own` over the relabeling orbit of `c`.
fn orbit_union(size: usize, own: &[u8]) -> Vec<u8> {
    let transfers: Vec<Vec<(usize, usize)>> = permutations(size)
        .iter()
        .map(|perm| bit_transfer(size, perm, size))
        .collect();
    let mut out = vec![0u8; own.len()];
    let mut seen = vec![false; own.len()];
    let mut orbit = Vec::new();
    for code in 0..own.len() {
        if seen[code] {
            continue;
        }
        orbit.clear();
        let mut acc = 0u8;
        for t in &transfers {
            let image = apply_transfer(code as u64, t) as usize;
            if !seen[image] {
                seen[image] = true;
                orbit.push(image);
                acc |= own[image];
            }
        }
        for &c in &orbit {
            out[c] = acc;
        }
    }
    out
}

/// Flags and verdicts of every pattern of one size.
#[derive(Clone, Debug)]
pub struct CensusTable {
    pub size: usize,
    pub mode: EmbeddingMode,
    flags: Vec<u8>,
    exists: Vec<u8>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusCounts {
    pub total: u64,
    pub divergent: u64,
    pub irreducible: u64,
    pub merging0: u64,
    pub merging1: u64,
    pub merging: u64,
    pub divergent_irreducible: u64,
    pub omega_hyp: u64,
    pub one_2dim: u64,
    pub omega_2dim: u64,
    /// Counts per `(divergent, irreducible, merging0, merging1)` combination.
    pub combinations: BTreeMap<(bool, bool, bool, bool), u64>,
}

pub fn census(size: usize, mode: EmbeddingMode) -> Result<CensusTable> {
    guard(size)?;
    let mut levels = build_tables(size, mode);
    let top = levels.pop().expect("at least one level");
    Ok(CensusTable {
        size,
        mode,
        flags: top.flags,
        exists: top.exists,
    })
}

impl CensusTable {
    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn flags(&self, code: u64) -> ClassificationFlags {
        ClassificationFlags::from_bits(self.flags[code as usize])
    }

    pub fn verdicts(&self, code: u64) -> Verdicts {
        Verdicts::from_exists(self.exists[code as usize])
    }

    /// Rows in ascending bitstring order.
    pub fn rows(&self) -> impl Iterator<Item = (Pattern, ClassificationFlags, Verdicts)> + '_ {
        (0..self.flags.len() as u64).map(move |code| {
            (
                Pattern::from_code(self.size, code),
                self.flags(code),
                self.verdicts(code),
            )
        })
    }

    pub fn divergent_irreducible(&self) -> Vec<Pattern> {
        self.rows()
            .filter(|(_, f, _)| f.div_irr())
            .map(|(p, _, _)| p)
            .collect()
    }

    pub fn counts(&self) -> CensusCounts {
        let mut c = CensusCounts::default();
        for code in 0..self.flags.len() as u64 {
            let f = self.flags(code);
            let v = self.verdicts(code);
            c.total += 1;
            c.divergent += u64::from(f.divergent);
            c.irreducible += u64::from(f.irreducible);
            c.merging0 += u64::from(f.merging0);
            c.merging1 += u64::from(f.merging1);
            c.merging += u64::from(f.merging);
            c.divergent_irreducible += u64::from(f.div_irr());
            c.omega_hyp += u64::from(v.omega_hyp);
            c.one_2dim += u64::from(v.one_2dim);
            c.omega_2dim += u64::from(v.omega_2dim);
            *c.combinations
                .entry((f.divergent, f.irreducible, f.merging0, f.merging1))
                .or_insert(0) += 1;
        }
        c
    }
}
