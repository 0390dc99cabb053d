//! The finite-injury construction of a stable coloring whose limit classes
//! defeat every c.e. bi-array.
//!
//! Requirement `R_{e,i}` (ordinal `2e+i`) first commits some `E_n` to limit
//! `1-i`; once a later `F_{n,m}` with `E_n →_{1-i} F_{n,m}` shows up it
//! commits `E_n` to `i` and `F_{n,m}` to `1-i`.

use std::collections::{BTreeMap, BTreeSet};

use super::oracle::BiArrayFunctional;
use super::trace::{AttentionKind, ConstructionTrace, EventKind};
use crate::coloring::{FiniteColoring, StableColoring};
use crate::pattern::Color;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Unsatisfied,
    Partial,
    Full,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Unsatisfied => "unsatisfied",
            Status::Partial => "partial",
            Status::Full => "full",
        }
    }
}

struct Strategy {
    e: usize,
    i: Color,
    status: Status,
    restraint: BTreeSet<usize>,
    introduced: bool,
}

fn inside(set: &[usize], lo: usize, hi: usize, restrained: &BTreeSet<usize>) -> bool {
    !set.is_empty()
        && set
            .iter()
            .all(|&x| lo <= x && x <= hi && !restrained.contains(&x))
}

fn first_target(
    b: &dyn BiArrayFunctional,
    e: usize,
    s: usize,
    restrained: &BTreeSet<usize>,
) -> Option<Vec<usize>> {
    (0..s).find_map(|n| {
        b.e_set(n, s)
            .filter(|set| s >= 1 && inside(set, e + 1, s - 1, restrained))
    })
}

fn second_target(
    b: &dyn BiArrayFunctional,
    e: usize,
    i: Color,
    s: usize,
    f: &FiniteColoring,
    restrained: &BTreeSet<usize>,
) -> Option<(Vec<usize>, Vec<usize>)> {
    if s == 0 {
        return None;
    }
    for n in 0..s {
        let Some(big_e) = b
            .e_set(n, s)
            .filter(|set| inside(set, e + 1, s - 1, restrained))
        else {
            continue;
        };
        for m in 0..s {
            let Some(big_f) = b.f_set(n, m, s) else {
                continue;
            };
            if inside(&big_f, e + 1, s - 1, restrained)
                && big_e[big_e.len() - 1] < big_f[0]
                && big_e
                    .iter()
                    .all(|&x| big_f.iter().all(|&y| f.get(x, y) == 1 - i))
            {
                return Some((big_e, big_f));
            }
        }
    }
    None
}

/// Runs stages `1..S`. Limits are the final commitments, 0 where none.
pub fn build_stable_2dim_coloring(
    bs: &[&dyn BiArrayFunctional],
    stages: usize,
) -> (StableColoring, ConstructionTrace) {
    let mut f = FiniteColoring::empty();
    let mut trace = ConstructionTrace::new("stable2dim", stages);
    let mut commitments: BTreeMap<usize, Color> = BTreeMap::new();
    if stages > 0 {
        f.push_vertex(&[]);
    }
    let mut strategies: Vec<Strategy> = (0..bs.len())
        .flat_map(|e| {
            (0..2).map(move |i| Strategy {
                e,
                i,
                status: Status::Unsatisfied,
                restraint: BTreeSet::new(),
                introduced: false,
            })
        })
        .collect();

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

        for (ord, st) in strategies.iter_mut().enumerate().take(s) {
            if !st.introduced {
                st.introduced = true;
                trace.push(
                    s,
                    Some(ord),
                    EventKind::Requirement {
                        label: format!("e={},i={}", st.e, st.i),
                        pattern: None,
                        life_cap: Some(2),
                    },
                );
            }
        }

        let mut higher: BTreeSet<usize> = BTreeSet::new();
        let mut action = None;
        for (ord, st) in strategies.iter().enumerate().take(s) {
            let b = bs[st.e];
            if st.status != Status::Full {
                if let Some((big_e, big_f)) = second_target(b, st.e, st.i, s, &f, &higher) {
                    action = Some((ord, AttentionKind::Second, big_e, big_f));
                    break;
                }
            }
            if st.status == Status::Unsatisfied {
                if let Some(big_e) = first_target(b, st.e, s, &higher) {
                    action = Some((ord, AttentionKind::First, big_e, Vec::new()));
                    break;
                }
            }
            higher.extend(st.restraint.iter().copied());
        }
        let Some((ord, kind, big_e, big_f)) = action else {
            continue;
        };

        let st = &mut strategies[ord];
        let i = st.i;
        trace.push(s, Some(ord), EventKind::Attention { kind, weight: None });
        let mut commit = |set: &[usize], color: Color, trace: &mut ConstructionTrace| {
            for &x in set {
                commitments.insert(x, color);
            }
            trace.push(
                s,
                Some(ord),
                EventKind::Commit {
                    elements: set.to_vec(),
                    color,
                },
            );
        };
        if kind == AttentionKind::Second {
            commit(&big_e, i, &mut trace);
            commit(&big_f, 1 - i, &mut trace);
            st.restraint.extend(big_e.iter().chain(&big_f).copied());
            st.status = Status::Full;
        } else {
            commit(&big_e, 1 - i, &mut trace);
            st.restraint = big_e.iter().copied().collect();
            st.status = Status::Partial;
        }
        trace.push(
            s,
            Some(ord),
            EventKind::Restrain(st.restraint.iter().copied().collect()),
        );
        trace.push(s, Some(ord), EventKind::Status(st.status.as_str().into()));

        for (lower, other) in strategies.iter_mut().enumerate().skip(ord + 1) {
            if other.status != Status::Unsatisfied || !other.restraint.is_empty() {
                other.status = Status::Unsatisfied;
                other.restraint.clear();
                trace.push(s, Some(lower), EventKind::Injure { by: ord });
                trace.push(
                    s,
                    Some(lower),
                    EventKind::Status(Status::Unsatisfied.as_str().into()),
                );
                trace.push(s, Some(lower), EventKind::Release);
            }
        }
    }

    let limits = (0..f.window())
        .map(|x| commitments.get(&x).copied().unwrap_or(0))
        .collect();
    let sc = StableColoring::new(f, limits).expect("one limit per vertex");
    (sc, trace)
}

/// How often each vertex was committed.
pub fn commit_counts(trace: &ConstructionTrace) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for e in &trace.events {
        if let EventKind::Commit { elements, .. } = &e.kind {
            for &x in elements {
                *out.entry(x).or_default() += 1;
            }
        }
    }
    out
}

/// Number of `y` with `f(x, y) != f(x, y+1)`.
pub fn column_changes(f: &FiniteColoring, x: usize) -> usize {
    (x + 1..f.window().saturating_sub(1))
        .filter(|&y| f.get(x, y) != f.get(x, y + 1))
        .count()
}

#[cfg(test)]
mod tests {
    use super::super::oracle::{RuleBiArray, TableBiArray};
    use super::super::trace::verify_trace;
    use super::*;

    #[test]
    fn undefined_functionals_give_zero() {
        let empty = TableBiArray::new();
        let bs: Vec<&dyn BiArrayFunctional> = vec![&empty, &empty];
        let (sc, trace) = build_stable_2dim_coloring(&bs, 15);
        assert_eq!(sc.base, FiniteColoring::constant(15, 0));
        assert!(sc.limits().iter().all(|&c| c == 0));
        assert!(verify_trace(&trace, &sc.base, &["all"])
            .unwrap()
            .all_passed());
    }

    #[test]
    fn total_functional_is_fully_satisfied() {
        let b = RuleBiArray::new(|n| Some((vec![n + 1], 0)), |_n, m| Some((vec![m + 1], 0)));
        let bs: Vec<&dyn BiArrayFunctional> = vec![&b];
        let (sc, trace) = build_stable_2dim_coloring(&bs, 30);
        let report = verify_trace(&trace, &sc.base, &["all"]).unwrap();
        assert!(report.all_passed(), "{report}");
        let statuses = trace.final_statuses();
        for (ord, i) in [(0usize, 0u8), (1, 1)] {
            assert_eq!(statuses[&ord], "full");
            let second = trace
                .events_for(ord)
                .filter_map(|e| match &e.kind {
                    EventKind::Commit { elements, color } => Some((elements.clone(), *color)),
                    _ => None,
                })
                .collect::<Vec<_>>();
            let (e_set, e_color) = &second[second.len() - 2];
            let (f_set, f_color) = &second[second.len() - 1];
            assert_eq!((*e_color, *f_color), (i, 1 - i));
            assert!(e_set.iter().all(|&x| sc.limit(x) == i));
            assert!(f_set.iter().all(|&x| sc.limit(x) == 1 - i));
            assert!(e_set
                .iter()
                .all(|&x| f_set.iter().all(|&y| sc.base.get(x, y) == 1 - i)));
        }
    }

    #[test]
    fn columns_change_only_on_commitment() {
        let b0 = RuleBiArray::new(
            |n| Some((vec![n + 1, n + 2], n)),
            |n, m| Some((vec![m + 1 + n % 2], m + 2)),
        );
        let b1 = RuleBiArray::new(
            |n| (n % 3 == 0).then(|| (vec![n + 4], 2 * n)),
            |_n, m| Some((vec![m + 2], 3)),
        );
        let bs: Vec<&dyn BiArrayFunctional> = vec![&b0, &b1];
        let (sc, trace) = build_stable_2dim_coloring(&bs, 40);
        assert!(verify_trace(&trace, &sc.base, &["all"])
            .unwrap()
            .all_passed());
        let counts = commit_counts(&trace);
        for x in 0..sc.base.window() {
            assert!(column_changes(&sc.base, x) <= counts.get(&x).copied().unwrap_or(0));
        }
    }

    #[test]
    fn monotone_extension() {
        let b = RuleBiArray::new(
            |n| Some((vec![n + 2], n + 1)),
            |_n, m| Some((vec![m + 3], 1)),
        );
        let bs: Vec<&dyn BiArrayFunctional> = vec![&b, &b];
        let (big, _) = build_stable_2dim_coloring(&bs, 35);
        let (small, _) = build_stable_2dim_coloring(&bs, 20);
        assert_eq!(big.base.truncate(20), small.base);
    }
}
