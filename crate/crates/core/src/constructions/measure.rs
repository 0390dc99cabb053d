//! The finite-injury construction against prefix functionals.
//!
//! Each requirement `⟨p,e⟩` stacks blocks `F_t = [m, s]` whenever the measure
//! of oracles whose output meets `[m, s]` exceeds `1 - 1/(2|p|)`, and commits
//! earlier blocks to the colors `p(i, t+1)` the next block needs.
//!
//! Columns are colored before attention is granted, so a commitment made at
//! stage `s` first shows in column `s + 1`. Column `s` belongs to the block
//! just created and must keep the previous commitment.

use std::collections::BTreeMap;

use super::oracle::PrefixFunctional;
use super::priority::cantor_pair;
use super::trace::{AttentionKind, ConstructionTrace, EventKind, Weight};
use crate::coloring::FiniteColoring;
use crate::pattern::{Color, Pattern};

/// Prefixes longer than this are never read.
pub const MAX_MEASURE_DEPTH: usize = 100;

/// Exact measure of oracles `X` with `hit(W^X[s])`, for a `hit` that is
/// preserved by growing outputs. Counts prefix-minimal hitting strings only.
pub fn prefix_measure(
    fun: &dyn PrefixFunctional,
    s: usize,
    hit: &dyn Fn(&[usize]) -> bool,
) -> Weight {
    let depth = s.min(fun.use_bound()).min(MAX_MEASURE_DEPTH);
    let mut sigma = Vec::with_capacity(depth);
    Weight {
        num: descend(fun, s, depth, &mut sigma, hit),
        depth: depth as u32,
    }
}

fn descend(
    fun: &dyn PrefixFunctional,
    s: usize,
    depth: usize,
    sigma: &mut Vec<Color>,
    hit: &dyn Fn(&[usize]) -> bool,
) -> u128 {
    if hit(&fun.output(sigma, s)) {
        return 1u128 << (depth - sigma.len());
    }
    if sigma.len() == depth {
        return 0;
    }
    let mut total = 0;
    for b in 0..2 {
        sigma.push(b);
        total += descend(fun, s, depth, sigma, hit);
        sigma.pop();
    }
    total
}

/// Measure of oracles whose stage-`s` output meets `[m, s]`.
pub fn attention_measure(fun: &dyn PrefixFunctional, m: usize, s: usize) -> Weight {
    prefix_measure(fun, s, &|out| out.iter().any(|&x| m <= x && x <= s))
}

pub fn requires_attention_measure(
    state_len: usize,
    fun: &dyn PrefixFunctional,
    m: usize,
    s: usize,
    p: &Pattern,
) -> bool {
    state_len < p.size() && attention_measure(fun, m, s).exceeds_threshold(p.size())
}

/// Measure of oracles meeting the block, per block.
pub fn block_measures(fun: &dyn PrefixFunctional, blocks: &[Vec<usize>], s: usize) -> Vec<Weight> {
    blocks
        .iter()
        .map(|b| {
            prefix_measure(fun, s, &|out| {
                out.iter().any(|x| b.binary_search(x).is_ok())
            })
        })
        .collect()
}

/// Measure of oracles meeting every block.
pub fn all_blocks_measure(fun: &dyn PrefixFunctional, blocks: &[Vec<usize>], s: usize) -> Weight {
    prefix_measure(fun, s, &|out| {
        blocks
            .iter()
            .all(|b| out.iter().any(|x| b.binary_search(x).is_ok()))
    })
}

/// A requirement `⟨a,e⟩` with its priority ordinal, which is also its trace id.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MeasureRequirement {
    pub pattern: usize,
    pub functional: usize,
    pub ordinal: u64,
}

/// Every requirement over the given lists, highest priority first.
pub fn measure_requirements(patterns: usize, functionals: usize) -> Vec<MeasureRequirement> {
    let mut out: Vec<MeasureRequirement> = (0..patterns)
        .flat_map(|a| {
            (0..functionals).map(move |e| MeasureRequirement {
                pattern: a,
                functional: e,
                ordinal: cantor_pair(a as u64, e as u64),
            })
        })
        .collect();
    out.sort_by_key(|r| r.ordinal);
    out
}

struct Strategy {
    req: MeasureRequirement,
    blocks: Vec<Vec<usize>>,
    marker: usize,
    introduced: bool,
}

pub fn build_measure_coloring(
    fs: &[&dyn PrefixFunctional],
    patterns: &[Pattern],
    stages: usize,
) -> (FiniteColoring, ConstructionTrace) {
    let mut f = FiniteColoring::empty();
    let mut trace = ConstructionTrace::new("measure", stages);
    if stages == 0 {
        return (f, trace);
    }
    f.push_vertex(&[]);
    let mut strategies: Vec<Strategy> = measure_requirements(patterns.len(), fs.len())
        .into_iter()
        .map(|req| Strategy {
            req,
            blocks: Vec::new(),
            marker: 0,
            introduced: false,
        })
        .collect();
    let mut commitments: BTreeMap<usize, Color> = BTreeMap::new();

    for s in 1..stages {
        let column: Vec<Color> = (0..s)
            .map(|x| commitments.get(&x).copied().unwrap_or(0))
            .collect();
        trace.push(
            s,
            None,
            EventKind::Column((0..s).filter(|&x| column[x] == 1).collect()),
        );
        f.push_vertex(&column);

        for st in strategies
            .iter_mut()
            .filter(|st| !st.introduced && st.req.ordinal < s as u64)
        {
            st.introduced = true;
            let p = &patterns[st.req.pattern];
            let id = Some(st.req.ordinal as usize);
            trace.push(
                s,
                id,
                EventKind::Requirement {
                    label: format!("p={p},e={}", st.req.functional),
                    pattern: Some(p.clone()),
                    life_cap: Some(p.size()),
                },
            );
            if st.marker > 0 {
                trace.push(s, id, EventKind::Marker(st.marker));
            }
        }

        let acting = strategies.iter().position(|st| {
            st.introduced
                && requires_attention_measure(
                    st.blocks.len(),
                    fs[st.req.functional],
                    st.marker,
                    s,
                    &patterns[st.req.pattern],
                )
        });
        let Some(idx) = acting else { continue };

        let (head, lower) = strategies.split_at_mut(idx + 1);
        let st = &mut head[idx];
        let p = &patterns[st.req.pattern];
        let id = st.req.ordinal as usize;
        let weight = attention_measure(fs[st.req.functional], st.marker, s);
        trace.push(
            s,
            Some(id),
            EventKind::Attention {
                kind: AttentionKind::Plain,
                weight: Some(weight),
            },
        );
        st.blocks.push((st.marker..=s).collect());
        let t = st.blocks.len() - 1;
        trace.push(s, Some(id), EventKind::State(st.blocks.clone()));
        trace.push(s, Some(id), EventKind::Restrain(st.blocks.concat()));
        st.marker = s + 1;
        trace.push(s, Some(id), EventKind::Marker(st.marker));

        for other in lower.iter_mut() {
            let oid = Some(other.req.ordinal as usize);
            if !other.blocks.is_empty() {
                other.blocks.clear();
                trace.push(s, oid, EventKind::Injure { by: id });
                trace.push(s, oid, EventKind::State(Vec::new()));
                trace.push(s, oid, EventKind::Release);
            }
            if other.marker < s + 1 {
                other.marker = s + 1;
                if other.introduced {
                    trace.push(s, oid, EventKind::Marker(other.marker));
                }
            }
        }

        if t + 1 < p.size() {
            for (i, block) in st.blocks.iter().enumerate() {
                let color = p.get(i, t + 1);
                for &x in block {
                    commitments.insert(x, color);
                }
                trace.push(
                    s,
                    Some(id),
                    EventKind::Commit {
                        elements: block.clone(),
                        color,
                    },
                );
            }
        }
    }
    (f, trace)
}
