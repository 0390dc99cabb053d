//! Slow reference implementations written straight from the definitions,
//! shared by the integration tests.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeSet;

use ramsey_patterns::coloring::FiniteColoring;
use ramsey_patterns::{Color, Pattern};

/// Every increasing `k`-tuple drawn from `items`.
pub fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

pub fn realizes(f: &FiniteColoring, xs: &[usize], p: &Pattern) -> bool {
    xs.len() == p.size()
        && (0..xs.len()).all(|i| (i + 1..xs.len()).all(|j| f.get(xs[i], xs[j]) == p.get(i, j)))
}

/// The lexicographically least realizer among increasing tuples.
pub fn realizer(f: &FiniteColoring, h: &[usize], p: &Pattern) -> Option<Vec<usize>> {
    let mut hs = h.to_vec();
    hs.sort_unstable();
    hs.dedup();
    combinations(&hs, p.size())
        .into_iter()
        .find(|xs| realizes(f, xs, p))
}

pub fn avoids(f: &FiniteColoring, h: &[usize], p: &Pattern) -> bool {
    realizer(f, h, p).is_none()
}

/// `p⁻`: drop the last vertex.
pub fn minus(p: &Pattern) -> Pattern {
    let l = p.size() - 1;
    Pattern::from_fn(l, |i, j| p.get(i, j))
}

/// `(f,g)`-avoidance with `g` total on the window, for `|p| ≥ 2`.
pub fn fg_avoids(f: &FiniteColoring, g: &[Color], h: &[usize], p: &Pattern) -> bool {
    let l = p.size();
    let mut hs = h.to_vec();
    hs.sort_unstable();
    hs.dedup();
    avoids(f, &hs, p)
        && combinations(&hs, l - 1)
            .into_iter()
            .filter(|xs| realizes(f, xs, &minus(p)))
            .all(|xs| (0..l - 1).any(|i| g[xs[i]] != p.get(i, l - 1)))
}

/// The join read off its description: glue the last vertex of `p` to the
/// first of `q`; arrows from `x` in `p` into `q` take `p(x, |p|−1)`.
pub fn join(p: &Pattern, q: &Pattern) -> Pattern {
    let a = p.size();
    let n = a + q.size() - 1;
    let mut colors = vec![vec![0; n]; n];
    for x in 0..a {
        for y in x + 1..a {
            colors[x][y] = p.get(x, y);
        }
    }
    for x in 0..q.size() {
        for y in x + 1..q.size() {
            colors[a - 1 + x][a - 1 + y] = q.get(x, y);
        }
    }
    for x in 0..a - 1 {
        for y in a..n {
            colors[x][y] = p.get(x, a - 1);
        }
    }
    Pattern::from_fn(n, |x, y| colors[x][y])
}

pub fn all_patterns(size: usize) -> Vec<Pattern> {
    let pairs = size * size.saturating_sub(1) / 2;
    (0..1u64 << pairs)
        .map(|c| Pattern::from_code(size, c))
        .collect()
}

/// No `a ⊎ b = p` with `|a|, |b| ≥ 2`, over every candidate pair.
pub fn irreducible(p: &Pattern) -> bool {
    let n = p.size();
    for k in 2..n {
        for a in all_patterns(k) {
            for b in all_patterns(n + 1 - k) {
                if join(&a, &b) == *p {
                    return false;
                }
            }
        }
    }
    true
}

pub fn divergent(p: &Pattern) -> bool {
    let l = p.size();
    l >= 2 && (0..l - 1).any(|x| p.get(x, l - 1) != p.get(0, l - 1))
}

/// Every `q` with `q(x, y) = p(m(x), m(y))` for an injective (or increasing) `m`.
pub fn subpatterns(p: &Pattern, monotone: bool) -> BTreeSet<Pattern> {
    fn go(p: &Pattern, monotone: bool, map: &mut Vec<usize>, out: &mut BTreeSet<Pattern>) {
        if !map.is_empty() {
            let m = map.clone();
            out.insert(Pattern::from_fn(m.len(), |x, y| {
                let (a, b) = (m[x], m[y]);
                if a < b {
                    p.get(a, b)
                } else {
                    p.get(b, a)
                }
            }));
        }
        for v in 0..p.size() {
            if map.contains(&v) || (monotone && map.last().is_some_and(|&l| v <= l)) {
                continue;
            }
            map.push(v);
            go(p, monotone, map, out);
            map.pop();
        }
    }
    let mut out = BTreeSet::new();
    go(p, monotone, &mut Vec::new(), &mut out);
    out
}
