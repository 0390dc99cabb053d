//! The no-injury construction whose avoiding sets compute jump-DNC functions.
//!
//! Requirement `⟨p,e⟩` watches `W_e[s]` for `h(⟨p,e⟩)+1` pairwise disjoint
//! oldest blocks realizing `p⁻`, restrains one that higher requirements left
//! free, and colors the new column so that the block plus `s` realizes `p`.

use std::collections::{BTreeMap, BTreeSet};

use super::oracle::ApproxOracle;
use super::priority::{cantor_unpair, h_bound, index_pattern};
use super::trace::{ConstructionTrace, EventKind};
use crate::coloring::FiniteColoring;
use crate::pattern::{Color, Pattern};
use crate::realize::find_realizer;

/// The `(e,s)`-age of `x`: the longest run of stages ending at `s` with `x ∈ W_e`.
pub fn age(o: &dyn ApproxOracle, e: usize, x: usize, s: usize) -> Option<usize> {
    let member = |r: usize| o.approx(e, r).binary_search(&x).is_ok();
    if !member(s) {
        return None;
    }
    let mut t = 0;
    while t < s && member(s - t - 1) {
        t += 1;
    }
    Some(t)
}

/// Greedy family of `count` disjoint blocks of `W_e[s]` realizing `p⁻`,
/// oldest first.
pub fn oldest_blocks(
    o: &dyn ApproxOracle,
    e: usize,
    s: usize,
    p: &Pattern,
    f: &FiniteColoring,
    count: usize,
) -> Option<Vec<Vec<usize>>> {
    let ages: BTreeMap<usize, usize> = o
        .approx(e, s)
        .into_iter()
        .filter_map(|x| age(o, e, x, s).map(|a| (x, a)))
        .collect();
    blocks_by_age(&ages, p, f, count)
}

fn blocks_by_age(
    ages: &BTreeMap<usize, usize>,
    p: &Pattern,
    f: &FiniteColoring,
    count: usize,
) -> Option<Vec<Vec<usize>>> {
    let minus = p.minus().ok()?;
    if count == 0 || ages.len() < count * minus.size() {
        return None;
    }
    let mut thresholds: Vec<usize> = ages
        .values()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    thresholds.reverse();
    let mut used = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let block = thresholds.iter().find_map(|&t| {
            let avail: Vec<usize> = ages
                .iter()
                .filter(|&(x, &a)| a >= t && !used.contains(x) && *x < f.window())
                .map(|(&x, _)| x)
                .collect();
            find_realizer(f, &avail, &minus)
        })?;
        used.extend(block.iter().copied());
        out.push(block);
    }
    Some(out)
}

#[derive(Default)]
struct ReqMemory {
    family: Option<Vec<Vec<usize>>>,
    choice: Option<Vec<usize>>,
}

/// Runs stages `1..S`; the result is defined on `[0,S)²`.
pub fn build_dnc_coloring(
    o: &dyn ApproxOracle,
    stages: usize,
) -> (FiniteColoring, ConstructionTrace) {
    let mut f = FiniteColoring::empty();
    let mut trace = ConstructionTrace::new("dnc", stages);
    if stages == 0 {
        return (f, trace);
    }
    f.push_vertex(&[]);
    let mut ages: Vec<BTreeMap<usize, usize>> = Vec::new();
    let mut memory: Vec<ReqMemory> = Vec::new();
    for s in 1..stages {
        // Every e with some ⟨a,e⟩ < s satisfies e < s.
        for (e, table) in ages.iter_mut().enumerate() {
            let now = o.approx(e, s);
            *table = now
                .iter()
                .map(|&x| (x, table.get(&x).map_or(0, |a| a + 1)))
                .collect();
        }
        while ages.len() < s {
            let e = ages.len();
            ages.push(
                o.approx(e, s)
                    .into_iter()
                    .filter_map(|x| age(o, e, x, s).map(|a| (x, a)))
                    .collect(),
            );
        }

        let mut restrained: BTreeSet<usize> = BTreeSet::new();
        let mut column: Vec<Color> = vec![0; s];
        for k in 0..s as u64 {
            let (a, e) = cantor_unpair(k);
            let p = index_pattern(a);
            let req = k as usize;
            if memory.len() <= req {
                memory.push(ReqMemory::default());
                trace.push(
                    s,
                    Some(req),
                    EventKind::Requirement {
                        label: format!("p={p},e={e}"),
                        pattern: Some(p.clone()),
                        life_cap: None,
                    },
                );
            }
            let family = blocks_by_age(&ages[e as usize], &p, &f, h_bound(k) as usize + 1);
            let mem = &mut memory[req];
            if family != mem.family {
                trace.push(
                    s,
                    Some(req),
                    EventKind::Family(family.clone().unwrap_or_default()),
                );
                mem.family = family.clone();
            }
            let choice = family.and_then(|blocks| {
                blocks
                    .into_iter()
                    .filter(|b| b.iter().all(|x| !restrained.contains(x)))
                    .min_by_key(|b| b[0])
            });
            if choice != mem.choice {
                match &choice {
                    Some(block) => {
                        trace.push(s, Some(req), EventKind::Choose(block.clone()));
                        trace.push(s, Some(req), EventKind::Restrain(block.clone()));
                    }
                    None => trace.push(s, Some(req), EventKind::Release),
                }
                mem.choice = choice.clone();
            }
            if let Some(block) = choice {
                let last = p.size() - 1;
                for (i, &x) in block.iter().enumerate() {
                    column[x] = p.get(i, last);
                }
                restrained.extend(block);
            }
        }
        let ones = (0..s).filter(|&x| column[x] == 1).collect();
        trace.push(s, None, EventKind::Column(ones));
        f.push_vertex(&column);
    }
    (f, trace)
}
