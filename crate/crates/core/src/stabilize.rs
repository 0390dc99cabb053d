//! Stabilization, `(f, g)`-avoidance, finite Mathias-style conditions, the
//! greedy procedure behind join avoidance, and a brute-force avoidance oracle.
//!
//! Reservoirs are explicit finite windows. Nothing here models the
//! computable-domination requirement on reservoirs or any genericity.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{is_divergent, is_irreducible, join, IrreducibilityMethod};
use crate::coloring::{FiniteColoring, PartialColoring};
use crate::error::{Error, Result};
use crate::pattern::{Color, Pattern};
use crate::realize::{avoids, find_realizer, visit_realizers};

fn sorted(set: &[usize]) -> Vec<usize> {
    let mut v = set.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

fn check_ordered(e: &[usize], f: &[usize]) -> Result<()> {
    match (e.iter().max(), f.iter().min()) {
        (Some(&a), Some(&b)) if a >= b => Err(Error::Precondition(format!(
            "expected E < F elementwise, but max E = {a} >= min F = {b}"
        ))),
        _ => Ok(()),
    }
}

/// `f(x, y) = g(x)` for every `x ∈ E`, `y ∈ F`.
pub fn stabilizes(
    f: &FiniteColoring,
    e: &[usize],
    fset: &[usize],
    g: &PartialColoring,
) -> Result<bool> {
    check_ordered(e, fset)?;
    for &x in e {
        let gx = g.require(x)?;
        if fset.iter().any(|&y| f.get(x, y) != gx) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `X` avoids `p`, and every realizer of `p⁻` inside `X` has a rank `i` with
/// `g(x_i) ≠ p(i, ℓ−1)`. For `|p| = 1` this is plain avoidance.
pub fn fg_avoids(
    f: &FiniteColoring,
    g: &PartialColoring,
    set: &[usize],
    p: &Pattern,
) -> Result<bool> {
    let xs = sorted(set);
    if let Some(&v) = xs.iter().find(|&&v| g.get(v).is_none()) {
        return Err(Error::WitnessUndefined(v));
    }
    if p.size() == 1 {
        return Ok(avoids(f, &xs, p));
    }
    Ok(avoids(f, &xs, p) && fg_blocked(f, g, &xs, p))
}

/// No realizer of `p⁻` in `xs` matches the limit specification under `g`.
pub(crate) fn fg_blocked(
    f: &FiniteColoring,
    g: &PartialColoring,
    xs: &[usize],
    p: &Pattern,
) -> bool {
    let minus = p.minus().expect("size at least 2");
    let spec = p.last_column();
    !visit_realizers(f, xs, &minus, |r| {
        r.iter().zip(&spec).all(|(&x, &c)| g.get(x) == Some(c))
    })
}

/// The largest subset of `X ∩ (max E, ∞)` on which every `x ∈ E` has a
/// constant color, with that color vector as the witness. Ties go to the
/// least color vector. `None` when no element of `X` lies above `E`.
pub fn find_stabilizing_tail(
    f: &FiniteColoring,
    e: &[usize],
    x: &[usize],
) -> Option<(Vec<usize>, PartialColoring)> {
    let es = sorted(e);
    let floor = es.last().copied();
    let mut classes: BTreeMap<Vec<Color>, Vec<usize>> = BTreeMap::new();
    for y in sorted(x) {
        if floor.is_some_and(|m| y <= m) {
            continue;
        }
        let key: Vec<Color> = es.iter().map(|&a| f.get(a, y)).collect();
        classes.entry(key).or_default().push(y);
    }
    let mut best: Option<(&Vec<Color>, &Vec<usize>)> = None;
    for (key, members) in &classes {
        if best.is_none_or(|(_, b)| members.len() > b.len()) {
            best = Some((key, members));
        }
    }
    best.map(|(key, members)| {
        let g = PartialColoring::from_pairs(es.iter().copied().zip(key.iter().copied()));
        (members.clone(), g)
    })
}

/// A finite condition `(σ, X)` with witness `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub stem: Vec<usize>,
    pub reservoir: Vec<usize>,
    pub witness: PartialColoring,
}

impl Condition {
    /// The condition `(∅, X)` with an empty witness.
    pub fn initial(reservoir: Vec<usize>) -> Self {
        Condition {
            stem: Vec::new(),
            reservoir: sorted(&reservoir),
            witness: PartialColoring::new(),
        }
    }

    /// Checks `σ < X`, that `X` stabilizes `σ` with witness `g`, and that
    /// `σ` `(f, g)`-avoids `p`.
    pub fn validate(&self, f: &FiniteColoring, p: &Pattern) -> Result<()> {
        check_ordered(&self.stem, &self.reservoir)?;
        if !stabilizes(f, &self.stem, &self.reservoir, &self.witness)? {
            return Err(Error::Precondition(
                "reservoir does not stabilize the stem".into(),
            ));
        }
        if !fg_avoids(f, &self.witness, &self.stem, p)? {
            return Err(Error::Precondition(
                "stem does not (f,g)-avoid the pattern".into(),
            ));
        }
        Ok(())
    }
}

/// Adds `x` to the stem and shrinks the reservoir to the largest tail above
/// `x` on which `f(x, ·)` is constant (ties prefer color 0).
pub fn extend_condition(
    f: &FiniteColoring,
    c: &Condition,
    x: usize,
    p: &Pattern,
) -> Result<Condition> {
    if !c.reservoir.contains(&x) {
        return Err(Error::Precondition(format!("{x} is not in the reservoir")));
    }
    if !is_divergent(p) || !is_irreducible(p, IrreducibilityMethod::Criterion) {
        return Err(Error::Precondition(format!(
            "{p} must be divergent and irreducible"
        )));
    }
    c.validate(f, p)?;
    let tail: Vec<usize> = c.reservoir.iter().copied().filter(|&y| y > x).collect();
    let (reservoir, g) = find_stabilizing_tail(f, &[x], &tail)
        .ok_or_else(|| Error::WindowExhausted(format!("no reservoir element above {x}")))?;
    let mut witness = c.witness.clone();
    witness.set(x, g.require(x)?);
    let mut stem = c.stem.clone();
    stem.push(x);
    Ok(Condition {
        stem,
        reservoir,
        witness,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    P,
    Q,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::P => "p",
            Side::Q => "q",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyOutcome {
    pub side: Side,
    pub set: Vec<usize>,
    /// Recomputed by `avoids` on the returned set.
    pub verified: bool,
    /// The choice was made by comparing the two finite candidates, since the
    /// infinite case split cannot be decided inside a window.
    pub fallback: bool,
}

/// Splits an `f`-avoider of `p ⊎ q` into a set avoiding `p` or one avoiding `q`.
///
/// A `p`-avoiding set `G` is grown greedily by least admissible element. Once
/// no element can be added, the elements of `H` above `max G` are thinned so
/// that each `x ∈ G` has constant color toward them; that set `Z` avoids `q`.
/// The longer of `G` and `Z` is returned.
pub fn greedy_avoid_join(
    f: &FiniteColoring,
    h: &[usize],
    p: &Pattern,
    q: &Pattern,
) -> Result<GreedyOutcome> {
    let hs = sorted(h);
    let joined = join(p, q);
    if let Some(r) = find_realizer(f, &hs, &joined) {
        return Err(Error::Precondition(format!(
            "set does not avoid {joined}: realizer {}",
            r.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )));
    }
    let outcome = |side: Side, set: Vec<usize>, fallback: bool| {
        let pattern = if side == Side::P { p } else { q };
        let verified = avoids(f, &set, pattern);
        GreedyOutcome {
            side,
            set,
            verified,
            fallback,
        }
    };
    if avoids(f, &hs, p) {
        return Ok(outcome(Side::P, hs, false));
    }
    if avoids(f, &hs, q) {
        return Ok(outcome(Side::Q, hs, false));
    }
    let mut greedy: Vec<usize> = Vec::new();
    loop {
        let next = hs
            .iter()
            .copied()
            .filter(|z| !greedy.contains(z))
            .find(|&z| {
                let mut trial = greedy.clone();
                trial.push(z);
                trial.sort_unstable();
                avoids(f, &trial, p)
            });
        match next {
            Some(z) => {
                greedy.push(z);
                greedy.sort_unstable();
            }
            None => break,
        }
    }
    let above: Vec<usize> = match greedy.last() {
        Some(&m) => hs.iter().copied().filter(|&y| y > m).collect(),
        None => hs.clone(),
    };
    let tail = find_stabilizing_tail(f, &greedy, &above)
        .map(|(z, _)| z)
        .unwrap_or_default();
    if tail.len() >= greedy.len() {
        Ok(outcome(Side::Q, tail, true))
    } else {
        Ok(outcome(Side::P, greedy, true))
    }
}

/// Largest subset of `W` avoiding `p` accepted by [`max_avoiding_subset`].
pub const MAX_ORACLE_WINDOW: usize = 20;

/// A maximum-cardinality subset of `W` avoiding `p`; the lexicographically
/// least among those of maximum size.
pub fn max_avoiding_subset(f: &FiniteColoring, w: &[usize], p: &Pattern) -> Result<Vec<usize>> {
    let ws = sorted(w);
    if ws.len() > MAX_ORACLE_WINDOW {
        return Err(Error::Guard(format!(
            "brute-force oracle accepts at most {MAX_ORACLE_WINDOW} vertices, got {}",
            ws.len()
        )));
    }
    let mut best = Vec::new();
    let mut cur = Vec::new();
    search_max(f, &ws, 0, p, &mut cur, &mut best);
    Ok(best)
}

fn closes_pattern(f: &FiniteColoring, cur: &[usize], y: usize, p: &Pattern) -> bool {
    if p.size() == 1 {
        return true;
    }
    let minus = p.minus().expect("size at least 2");
    let spec = p.last_column();
    visit_realizers(f, cur, &minus, |r| {
        r.iter().zip(&spec).all(|(&x, &c)| f.get(x, y) == c)
    })
}

fn search_max(
    f: &FiniteColoring,
    ws: &[usize],
    idx: usize,
    p: &Pattern,
    cur: &mut Vec<usize>,
    best: &mut Vec<usize>,
) {
    if cur.len() > best.len() {
        *best = cur.clone();
    }
    if idx == ws.len() || cur.len() + (ws.len() - idx) <= best.len() {
        return;
    }
    let y = ws[idx];
    if !closes_pattern(f, cur, y, p) {
        cur.push(y);
        search_max(f, ws, idx + 1, p, cur, best);
        cur.pop();
    }
    search_max(f, ws, idx + 1, p, cur, best);
}
