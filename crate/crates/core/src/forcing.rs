//! Finite-bound evaluators for the three forcing questions, and the search for
//! the least bound at which a question holds.
//!
//! Every question quantifies over 2-colorings of `[0, n]` and asks for a finite
//! `ρ ⊆ X ∩ [0, n]` meeting an avoidance condition and a bounded formula
//! `∃x ≤ B φ(σ ∪ ρ, x)`. The empty `ρ` is allowed.
//!
//! When no formula reads the quantified coloring, only its restriction to
//! `X ∩ [0, n]` matters and the evaluators quantify over that restriction.
//! Failing colorings are then reported extended by 0.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::coloring::{FiniteColoring, PartialColoring};
use crate::error::{Error, Result};
use crate::pattern::{Color, Pattern};
use crate::realize::{avoids, realizers};

/// Largest admitted bound `n`.
pub const MAX_FORCING_BOUND: usize = 14;
/// Largest `|X ∩ [0, n]|` for the homogeneous question, which ranges over pairs.
pub const MAX_PAIR_WINDOW: usize = 13;
/// Work cap (colorings times candidate sets) when a formula reads the coloring.
pub const MAX_DIRECT_WORK: u64 = 1 << 28;
/// Witnesses kept per outcome.
pub const MAX_LISTED: usize = 64;

/// `φ(G, x)` with witnesses `x ≤ bound()`. `g` is the quantified coloring
/// (the first one, for the homogeneous question).
pub trait BoundedPredicate: Sync {
    fn bound(&self) -> usize;
    fn holds(&self, set: &[usize], x: usize, g: &PartialColoring) -> bool;
    fn reads_coloring(&self) -> bool {
        false
    }
    fn describe(&self) -> String;
}

fn least_x(phi: &dyn BoundedPredicate, set: &[usize], g: &PartialColoring) -> Option<usize> {
    (0..=phi.bound()).find(|&x| phi.holds(set, x, g))
}

/// The catalogue of formulas available from the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Predicate {
    Always,
    Never,
    /// `|G| ≥ k`.
    SizeAtLeast(usize),
    /// `v ∈ G`.
    Contains(usize),
    /// `G` has at least `min_size` elements, all of quantified color `color`.
    Homogeneous {
        color: Color,
        min_size: usize,
    },
    /// `x ∈ G ∧ x ≥ threshold` for some `x ≤ bound`.
    Reaches {
        threshold: usize,
        bound: usize,
    },
}

impl BoundedPredicate for Predicate {
    fn bound(&self) -> usize {
        match self {
            Predicate::Reaches { bound, .. } => *bound,
            _ => 0,
        }
    }

    fn holds(&self, set: &[usize], x: usize, g: &PartialColoring) -> bool {
        match self {
            Predicate::Always => true,
            Predicate::Never => false,
            Predicate::SizeAtLeast(k) => set.len() >= *k,
            Predicate::Contains(v) => set.contains(v),
            Predicate::Homogeneous { color, min_size } => {
                set.len() >= *min_size && set.iter().all(|&v| g.get(v) == Some(*color))
            }
            Predicate::Reaches { threshold, .. } => x >= *threshold && set.contains(&x),
        }
    }

    fn reads_coloring(&self) -> bool {
        matches!(self, Predicate::Homogeneous { .. })
    }

    fn describe(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::Always => write!(f, "always"),
            Predicate::Never => write!(f, "never"),
            Predicate::SizeAtLeast(k) => write!(f, "size:{k}"),
            Predicate::Contains(v) => write!(f, "contains:{v}"),
            Predicate::Homogeneous { color, min_size } => {
                write!(f, "homogeneous:{color}:{min_size}")
            }
            Predicate::Reaches { threshold, bound } => write!(f, "reaches:{threshold}:{bound}"),
        }
    }
}

impl FromStr for Predicate {
    type Err = Error;

    /// `always`, `never`, `size:K`, `contains:V`, `homogeneous:C:K`, `reaches:T:B`.
    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("unknown formula `{text}`"));
        let parts: Vec<&str> = text.split(':').collect();
        let num = |i: usize| {
            parts
                .get(i)
                .and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(bad)
        };
        match (parts[0], parts.len()) {
            ("always", 1) => Ok(Predicate::Always),
            ("never", 1) => Ok(Predicate::Never),
            ("size", 2) => Ok(Predicate::SizeAtLeast(num(1)?)),
            ("contains", 2) => Ok(Predicate::Contains(num(1)?)),
            ("homogeneous", 3) => {
                let color = num(1)?;
                if color > 1 {
                    return Err(bad());
                }
                Ok(Predicate::Homogeneous {
                    color: color as Color,
                    min_size: num(2)?,
                })
            }
            ("reaches", 3) => Ok(Predicate::Reaches {
                threshold: num(1)?,
                bound: num(2)?,
            }),
            _ => Err(bad()),
        }
    }
}

/// One side of a question: stem `σ`, avoided pattern, formula.
#[derive(Clone, Copy)]
pub struct Side<'a> {
    pub sigma: &'a [usize],
    pub pattern: &'a Pattern,
    pub phi: &'a dyn BoundedPredicate,
}

#[derive(Clone, Copy)]
pub enum Question<'a> {
    /// For every `ĝ` some `ρ` `(f,ĝ)`-avoids `p` with `φ(σ ∪ ρ)`.
    Omega(Side<'a>),
    /// For every `(h₀, h₁)` some `ρ` homogeneous for both `(f,h₀)`-avoids `p` with `φ(σ ∪ ρ)`.
    Homogeneous(Side<'a>),
    /// For every `h` some side `i` and `ρ` `(f,h)`-avoiding `pᵢ` with `φᵢ(σᵢ ∪ ρ)`.
    Disjunctive(Side<'a>, Side<'a>),
}

impl<'a> Question<'a> {
    fn sides(&self) -> Vec<Side<'a>> {
        match self {
            Question::Omega(s) | Question::Homogeneous(s) => vec![*s],
            Question::Disjunctive(a, b) => vec![*a, *b],
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Question::Omega(_) => "omega",
            Question::Homogeneous(_) => "homogeneous",
            Question::Disjunctive(..) => "disjunctive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub g: PartialColoring,
    /// The second coloring of the homogeneous question.
    pub h1: Option<PartialColoring>,
    pub side: usize,
    pub rho: Vec<usize>,
    pub x: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuestionOutcome {
    pub holds: bool,
    /// Vertices the colorings were quantified over.
    pub domain: Vec<usize>,
    /// Number of colorings (or pairs) examined.
    pub colorings: u64,
    /// Least witness for the first colorings, at most [`MAX_LISTED`].
    pub witnesses: Vec<Witness>,
    /// A coloring on `[0, n]` (pair, for the homogeneous question) with no witness.
    pub failing: Option<(PartialColoring, Option<PartialColoring>)>,
}

fn check_inputs(
    f: &FiniteColoring,
    x: &[usize],
    sides: &[Side<'_>],
    n: usize,
) -> Result<Vec<usize>> {
    if n >= f.window() {
        return Err(Error::VertexOutOfRange {
            vertex: n,
            bound: f.window(),
        });
    }
    if n > MAX_FORCING_BOUND {
        return Err(Error::Guard(format!(
            "bound {n} exceeds the cap {MAX_FORCING_BOUND}"
        )));
    }
    let mut xn: Vec<usize> = x.iter().copied().filter(|&v| v <= n).collect();
    xn.sort_unstable();
    xn.dedup();
    for side in sides {
        if let (Some(&top), Some(&low)) = (side.sigma.iter().max(), x.iter().min()) {
            if top >= low {
                return Err(Error::Precondition(format!(
                    "σ must lie below X, but {top} >= {low}"
                )));
            }
        }
    }
    Ok(xn)
}

fn mask_set(xs: &[usize], mask: u32) -> Vec<usize> {
    xs.iter()
        .enumerate()
        .filter(|(j, _)| mask >> j & 1 == 1)
        .map(|(_, &v)| v)
        .collect()
}

fn coloring_from_mask(domain: &[usize], mask: u64) -> PartialColoring {
    PartialColoring::from_pairs(
        domain
            .iter()
            .enumerate()
            .map(|(j, &v)| (v, (mask >> j & 1) as Color)),
    )
}

fn extend_to(g: &PartialColoring, n: usize) -> PartialColoring {
    PartialColoring::from_pairs((0..=n).map(|v| (v, g.get(v).unwrap_or(0))))
}

struct Realizer {
    rho: u32,
    dom: u64,
    want: u64,
}

/// Per-side tables over `ρ ⊆ X ∩ [0,n]`.
struct SideTable<'a> {
    side: Side<'a>,
    avoid: Vec<bool>,
    realizers: Vec<Realizer>,
    spec: Vec<Color>,
}

impl<'a> SideTable<'a> {
    fn new(f: &FiniteColoring, xn: &[usize], domain: &[usize], side: Side<'a>) -> Self {
        let k = xn.len();
        let avoid = (0u32..1 << k)
            .map(|m| avoids(f, &mask_set(xn, m), side.pattern))
            .collect();
        let (spec, minus_members) = match side.pattern.minus() {
            Ok(minus) => (side.pattern.last_column(), realizers(f, xn, &minus)),
            Err(_) => (Vec::new(), Vec::new()),
        };
        let pos = |v: usize, list: &[usize]| list.binary_search(&v).expect("vertex in list");
        let realizers = minus_members
            .iter()
            .map(|r| {
                let mut out = Realizer {
                    rho: 0,
                    dom: 0,
                    want: 0,
                };
                for (i, &v) in r.iter().enumerate() {
                    out.rho |= 1 << pos(v, xn);
                    let d = 1u64 << pos(v, domain);
                    out.dom |= d;
                    if spec[i] == 1 {
                        out.want |= d;
                    }
                }
                out
            })
            .collect();
        SideTable {
            side,
            avoid,
            realizers,
            spec,
        }
    }

    fn with_sigma(&self, rho: &[usize]) -> Vec<usize> {
        let mut set = self.side.sigma.to_vec();
        set.extend_from_slice(rho);
        set.sort_unstable();
        set.dedup();
        set
    }

    /// `ρ` avoids `p` and no realizer of `p⁻` inside it matches the spec under `g`.
    fn fg_ok(&self, rho: u32, g: u64) -> bool {
        self.avoid[rho as usize]
            && (self.side.pattern.size() == 1
                || !self
                    .realizers
                    .iter()
                    .any(|r| r.rho & rho == r.rho && g & r.dom == r.want))
    }

    /// No realizer inside `ρ` has a constant spec `c`.
    fn const_ok(&self, rho: u32, c: Color) -> bool {
        self.avoid[rho as usize]
            && (self.side.pattern.size() == 1
                || !self
                    .realizers
                    .iter()
                    .any(|r| r.rho & rho == r.rho && self.spec.iter().all(|&s| s == c)))
    }
}

struct Setup<'a> {
    xn: Vec<usize>,
    domain: Vec<usize>,
    direct: bool,
    tables: Vec<SideTable<'a>>,
}

fn setup<'a>(f: &FiniteColoring, x: &[usize], q: &Question<'a>, n: usize) -> Result<Setup<'a>> {
    let sides = q.sides();
    let xn = check_inputs(f, x, &sides, n)?;
    let direct = sides.iter().any(|s| s.phi.reads_coloring());
    let domain: Vec<usize> = if direct {
        (0..=n).collect()
    } else {
        xn.clone()
    };
    let pairs = matches!(q, Question::Homogeneous(_));
    if pairs && !direct && xn.len() > MAX_PAIR_WINDOW {
        return Err(Error::Guard(format!(
            "|X ∩ [0,{n}]| = {} exceeds {MAX_PAIR_WINDOW} for the homogeneous question",
            xn.len()
        )));
    }
    if direct {
        let colorings = 1u64 << (domain.len() * if pairs { 2 } else { 1 });
        let work = colorings.saturating_mul(1 << xn.len());
        if work > MAX_DIRECT_WORK {
            return Err(Error::Guard(format!(
                "a formula reads the coloring and the search needs {work} steps (cap {MAX_DIRECT_WORK})"
            )));
        }
    }
    let tables = sides
        .into_iter()
        .map(|s| SideTable::new(f, &xn, &domain, s))
        .collect();
    Ok(Setup {
        xn,
        domain,
        direct,
        tables,
    })
}

/// Candidates `(ρ, x)` in increasing mask order, for formulas blind to the coloring.
fn blind_candidates(setup: &Setup<'_>, t: &SideTable<'_>) -> Vec<(u32, usize)> {
    let empty = PartialColoring::new();
    (0u32..1 << setup.xn.len())
        .filter(|&m| t.avoid[m as usize])
        .filter_map(|m| {
            least_x(t.side.phi, &t.with_sigma(&mask_set(&setup.xn, m)), &empty).map(|x| (m, x))
        })
        .collect()
}

pub fn evaluate(
    f: &FiniteColoring,
    x: &[usize],
    q: &Question<'_>,
    n: usize,
) -> Result<QuestionOutcome> {
    let setup = setup(f, x, q, n)?;
    match q {
        Question::Homogeneous(_) => Ok(evaluate_pairs(&setup, n)),
        _ => Ok(evaluate_single(&setup, n)),
    }
}

fn evaluate_single(setup: &Setup<'_>, n: usize) -> QuestionOutcome {
    let k = setup.xn.len();
    let cands: Vec<Vec<(u32, usize)>> = if setup.direct {
        Vec::new()
    } else {
        setup
            .tables
            .iter()
            .map(|t| blind_candidates(setup, t))
            .collect()
    };
    let solve = |gm: u64| -> Option<(usize, u32, usize)> {
        for (side, t) in setup.tables.iter().enumerate() {
            if setup.direct {
                let g = coloring_from_mask(&setup.domain, gm);
                for m in 0u32..1 << k {
                    if t.fg_ok(m, gm) {
                        if let Some(x) =
                            least_x(t.side.phi, &t.with_sigma(&mask_set(&setup.xn, m)), &g)
                        {
                            return Some((side, m, x));
                        }
                    }
                }
            } else if let Some(&(m, x)) = cands[side].iter().find(|&&(m, _)| t.fg_ok(m, gm)) {
                return Some((side, m, x));
            }
        }
        None
    };
    let total = 1u64 << setup.domain.len();
    let failing = (0..total)
        .into_par_iter()
        .find_first(|&gm| solve(gm).is_none());
    let witnesses = (0..total.min(MAX_LISTED as u64))
        .filter_map(|gm| {
            solve(gm).map(|(side, m, x)| Witness {
                g: coloring_from_mask(&setup.domain, gm),
                h1: None,
                side,
                rho: mask_set(&setup.xn, m),
                x,
            })
        })
        .collect();
    QuestionOutcome {
        holds: failing.is_none(),
        domain: setup.domain.clone(),
        colorings: total,
        witnesses,
        failing: failing.map(|gm| (extend_to(&coloring_from_mask(&setup.domain, gm), n), None)),
    }
}

fn evaluate_pairs(setup: &Setup<'_>, n: usize) -> QuestionOutcome {
    let t = &setup.tables[0];
    let k = setup.xn.len();
    let full = (1u32 << k) - 1;
    let d = setup.domain.len();
    // Least good submask per color, by a subset-sum sweep.
    let least: Vec<Vec<u32>> = if setup.direct {
        Vec::new()
    } else {
        let empty = PartialColoring::new();
        (0..2)
            .map(|c| {
                let mut lg: Vec<u32> = (0u32..1 << k)
                    .map(|m| {
                        let good = t.const_ok(m, c)
                            && least_x(t.side.phi, &t.with_sigma(&mask_set(&setup.xn, m)), &empty)
                                .is_some();
                        if good {
                            m
                        } else {
                            u32::MAX
                        }
                    })
                    .collect();
                for bit in 0..k {
                    for m in 0..lg.len() {
                        if m >> bit & 1 == 1 {
                            lg[m] = lg[m].min(lg[m ^ (1 << bit)]);
                        }
                    }
                }
                lg
            })
            .collect()
    };
    let xn_mask = |dm: u64| -> u32 {
        setup
            .xn
            .iter()
            .enumerate()
            .filter(|(_, v)| dm >> setup.domain.binary_search(v).expect("X ⊆ domain") & 1 == 1)
            .fold(0u32, |acc, (j, _)| acc | 1 << j)
    };
    let solve = |pair: u64| -> Option<(u32, usize)> {
        let (g0, g1) = (pair & ((1u64 << d) - 1), pair >> d);
        let (a, b) = (xn_mask(g0), xn_mask(g1));
        let classes = |c0: Color, c1: Color| {
            (if c0 == 1 { a } else { !a }) & (if c1 == 1 { b } else { !b }) & full
        };
        if setup.direct {
            let g = coloring_from_mask(&setup.domain, g0);
            for m in 0u32..1 << k {
                let homogeneous = (0..2).any(|c0| (0..2).any(|c1| m & !classes(c0, c1) == 0));
                if homogeneous && t.fg_ok(m, g0) {
                    if let Some(x) = least_x(t.side.phi, &t.with_sigma(&mask_set(&setup.xn, m)), &g)
                    {
                        return Some((m, x));
                    }
                }
            }
            return None;
        }
        let best = (0..2u8)
            .flat_map(|c0| (0..2u8).map(move |c1| (c0, c1)))
            .map(|(c0, c1)| least[c0 as usize][classes(c0, c1) as usize])
            .min()
            .filter(|&m| m != u32::MAX)?;
        let x = least_x(
            t.side.phi,
            &t.with_sigma(&mask_set(&setup.xn, best)),
            &PartialColoring::new(),
        )?;
        Some((best, x))
    };
    let total = 1u64 << (2 * d);
    let split = |pair: u64| {
        (
            coloring_from_mask(&setup.domain, pair & ((1u64 << d) - 1)),
            coloring_from_mask(&setup.domain, pair >> d),
        )
    };
    let failing = (0..total)
        .into_par_iter()
        .find_first(|&pair| solve(pair).is_none());
    let witnesses = (0..total.min(MAX_LISTED as u64))
        .filter_map(|pair| {
            solve(pair).map(|(m, x)| {
                let (g, h1) = split(pair);
                Witness {
                    g,
                    h1: Some(h1),
                    side: 0,
                    rho: mask_set(&setup.xn, m),
                    x,
                }
            })
        })
        .collect();
    QuestionOutcome {
        holds: failing.is_none(),
        domain: setup.domain.clone(),
        colorings: total,
        witnesses,
        failing: failing.map(|pair| {
            let (g, h1) = split(pair);
            (extend_to(&g, n), Some(extend_to(&h1, n)))
        }),
    }
}

pub fn eval_question_omega(
    f: &FiniteColoring,
    sigma: &[usize],
    x: &[usize],
    p: &Pattern,
    phi: &dyn BoundedPredicate,
    n: usize,
) -> Result<bool> {
    let q = Question::Omega(Side {
        sigma,
        pattern: p,
        phi,
    });
    Ok(evaluate(f, x, &q, n)?.holds)
}

pub fn eval_question_i(
    f: &FiniteColoring,
    sigma: &[usize],
    x: &[usize],
    p: &Pattern,
    phi: &dyn BoundedPredicate,
    n: usize,
) -> Result<bool> {
    let q = Question::Homogeneous(Side {
        sigma,
        pattern: p,
        phi,
    });
    Ok(evaluate(f, x, &q, n)?.holds)
}

#[allow(clippy::too_many_arguments)]
pub fn eval_question_disjunctive(
    f: &FiniteColoring,
    sigma0: &[usize],
    sigma1: &[usize],
    x: &[usize],
    p0: &Pattern,
    p1: &Pattern,
    phi0: &dyn BoundedPredicate,
    phi1: &dyn BoundedPredicate,
    n: usize,
) -> Result<bool> {
    let q = Question::Disjunctive(
        Side {
            sigma: sigma0,
            pattern: p0,
            phi: phi0,
        },
        Side {
            sigma: sigma1,
            pattern: p1,
            phi: phi1,
        },
    );
    Ok(evaluate(f, x, &q, n)?.holds)
}

/// A coloring of `[0, n]` under which the omega question has no witness.
pub fn failing_coloring(
    f: &FiniteColoring,
    sigma: &[usize],
    x: &[usize],
    p: &Pattern,
    phi: &dyn BoundedPredicate,
    n: usize,
) -> Result<Option<PartialColoring>> {
    let q = Question::Omega(Side {
        sigma,
        pattern: p,
        phi,
    });
    Ok(evaluate(f, x, &q, n)?.failing.map(|(g, _)| g))
}

/// The least `n ≤ cap` at which the question holds.
pub fn least_bound(
    f: &FiniteColoring,
    x: &[usize],
    q: &Question<'_>,
    cap: usize,
) -> Result<Option<usize>> {
    for n in 0..=cap {
        if evaluate(f, x, q, n)?.holds {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Re-checks a failing coloring straight from the definitions: no side and
/// no `ρ ⊆ X ∩ [0,n]` works under `g` (and `h1` for the homogeneous question).
pub fn confirms_failure(
    f: &FiniteColoring,
    x: &[usize],
    q: &Question<'_>,
    n: usize,
    g: &PartialColoring,
    h1: Option<&PartialColoring>,
) -> Result<bool> {
    let sides = q.sides();
    let xn = check_inputs(f, x, &sides, n)?;
    if let Question::Homogeneous(_) = q {
        if h1.is_none() {
            return Err(Error::Precondition(
                "the homogeneous question needs a second coloring".into(),
            ));
        }
    }
    let constant =
        |c: &PartialColoring, rho: &[usize]| rho.windows(2).all(|w| c.get(w[0]) == c.get(w[1]));
    for side in &sides {
        for m in 0u32..1 << xn.len() {
            let rho = mask_set(&xn, m);
            if let Some(h) = h1 {
                if !constant(g, &rho) || !constant(h, &rho) {
                    continue;
                }
            }
            if !crate::stabilize::fg_avoids(f, g, &rho, side.pattern)? {
                continue;
            }
            let mut set = side.sigma.to_vec();
            set.extend(&rho);
            set.sort_unstable();
            set.dedup();
            if least_x(side.phi, &set, g).is_some() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Kind of a [`ForcingInstance`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuestionKind {
    Omega,
    Homogeneous,
    Disjunctive,
}

/// An owned question over a fixed coloring.
#[derive(Clone, Debug)]
pub struct ForcingInstance {
    pub name: &'static str,
    pub f: FiniteColoring,
    pub x: Vec<usize>,
    pub kind: QuestionKind,
    /// `(σ, p, φ)` per side; two for the disjunctive question.
    pub sides: Vec<(Vec<usize>, Pattern, Predicate)>,
}

impl ForcingInstance {
    pub fn question(&self) -> Question<'_> {
        let side = |k: usize| {
            let (sigma, pattern, phi) = &self.sides[k];
            Side {
                sigma,
                pattern,
                phi,
            }
        };
        match self.kind {
            QuestionKind::Omega => Question::Omega(side(0)),
            QuestionKind::Homogeneous => Question::Homogeneous(side(0)),
            QuestionKind::Disjunctive => Question::Disjunctive(side(0), side(1)),
        }
    }

    /// Verdict at every bound `0..=cap`.
    pub fn profile(&self, cap: usize) -> Result<Vec<bool>> {
        let q = self.question();
        (0..=cap)
            .map(|n| Ok(evaluate(&self.f, &self.x, &q, n)?.holds))
            .collect()
    }
}

/// Twenty fixed questions over 13-vertex colorings, mixing all three kinds.
pub fn catalogue() -> Vec<ForcingInstance> {
    let zero = FiniteColoring::constant(13, 0);
    let parity = FiniteColoring::from_fn(13, |x, y| ((x + y) % 2) as Color);
    let mixed = FiniteColoring::from_fn(13, |x, y| ((x * x + 3 * y + x * y) % 3 == 0) as Color);
    let skew = FiniteColoring::from_fn(13, |x, y| ((5 * x + 2 * y) % 7 < 3) as Color);
    let pat = |s: &str| -> Pattern { s.parse().expect("catalogue pattern") };
    let phi = |s: &str| -> Predicate { s.parse().expect("catalogue formula") };
    let one =
        |name, f: &FiniteColoring, x: Vec<usize>, kind, sigma: Vec<usize>, p: &str, ph: &str| {
            ForcingInstance {
                name,
                f: f.clone(),
                x,
                kind,
                sides: vec![(sigma, pat(p), phi(ph))],
            }
        };
    let two = |name, f: &FiniteColoring, x: Vec<usize>, a: (&str, &str), b: (&str, &str)| {
        ForcingInstance {
            name,
            f: f.clone(),
            x,
            kind: QuestionKind::Disjunctive,
            sides: vec![(vec![], pat(a.0), phi(a.1)), (vec![], pat(b.0), phi(b.1))],
        }
    };
    use QuestionKind::{Homogeneous as H, Omega as O};
    vec![
        one(
            "omega-pair-zero",
            &zero,
            vec![2, 4, 6, 8],
            O,
            vec![],
            "3:010",
            "size:2",
        ),
        one(
            "omega-triple-parity",
            &parity,
            vec![1, 3, 5, 7, 9, 11],
            O,
            vec![],
            "3:010",
            "size:3",
        ),
        one(
            "omega-never",
            &mixed,
            vec![1, 2, 5, 9],
            O,
            vec![],
            "3:011",
            "never",
        ),
        one(
            "omega-always",
            &skew,
            vec![3, 4, 10],
            O,
            vec![],
            "3:101",
            "always",
        ),
        one(
            "omega-contains",
            &mixed,
            vec![3, 5, 9],
            O,
            vec![0, 1],
            "3:000",
            "contains:5",
        ),
        one(
            "omega-reaches",
            &skew,
            vec![2, 5, 8, 11],
            O,
            vec![],
            "3:101",
            "reaches:8:12",
        ),
        one(
            "omega-homogeneous",
            &parity,
            vec![4, 6, 8, 10],
            O,
            vec![],
            "3:010",
            "homogeneous:1:2",
        ),
        one(
            "omega-reducible",
            &mixed,
            vec![1, 2, 4, 7, 8, 12],
            O,
            vec![],
            "4:000101",
            "size:3",
        ),
        one(
            "omega-edge",
            &skew,
            vec![0, 3, 6, 9, 12],
            O,
            vec![],
            "2:1",
            "size:2",
        ),
        one(
            "omega-hem",
            &mixed,
            vec![1, 3, 4, 6, 9, 10, 12],
            O,
            vec![],
            "5:0111000101",
            "size:4",
        ),
        one(
            "homogeneous-pair",
            &zero,
            vec![1, 2, 3, 4, 5],
            H,
            vec![],
            "3:001",
            "size:2",
        ),
        one(
            "homogeneous-pigeonhole",
            &parity,
            (1..10).collect(),
            H,
            vec![],
            "3:001",
            "size:3",
        ),
        one(
            "homogeneous-contains",
            &mixed,
            vec![2, 4, 6],
            H,
            vec![0],
            "3:010",
            "contains:4",
        ),
        one(
            "homogeneous-never",
            &skew,
            vec![1, 5, 7],
            H,
            vec![],
            "3:100",
            "never",
        ),
        one(
            "homogeneous-reaches",
            &skew,
            vec![3, 6, 7, 10, 11],
            H,
            vec![],
            "3:010",
            "reaches:6:10",
        ),
        one(
            "homogeneous-long",
            &mixed,
            vec![2, 3, 5, 8, 11, 12],
            H,
            vec![],
            "4:101100",
            "size:2",
        ),
        two(
            "disjunctive-colors",
            &zero,
            vec![1, 2, 3],
            ("3:011", "homogeneous:0:1"),
            ("3:011", "homogeneous:1:1"),
        ),
        two(
            "disjunctive-sizes",
            &parity,
            vec![2, 3, 6, 7, 10, 11],
            ("3:010", "size:3"),
            ("3:101", "size:4"),
        ),
        two(
            "disjunctive-never",
            &mixed,
            vec![1, 4, 9],
            ("3:000", "never"),
            ("3:111", "never"),
        ),
        two(
            "disjunctive-late",
            &skew,
            vec![2, 7, 9, 12],
            ("2:1", "never"),
            ("3:001", "contains:7"),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabilize::fg_avoids;

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    /// Every coloring of `[0,n]`, every `ρ ⊆ X ∩ [0,n]`, straight from the definitions.
    fn naive_omega(
        f: &FiniteColoring,
        sigma: &[usize],
        x: &[usize],
        p: &Pattern,
        phi: &dyn BoundedPredicate,
        n: usize,
    ) -> bool {
        let xn: Vec<usize> = x.iter().copied().filter(|&v| v <= n).collect();
        (0u64..1 << (n + 1)).all(|gm| {
            let g = PartialColoring::from_mask(n + 1, gm);
            (0u32..1 << xn.len()).any(|m| {
                let rho = mask_set(&xn, m);
                let mut set = sigma.to_vec();
                set.extend(&rho);
                fg_avoids(f, &g, &rho, p).unwrap()
                    && (0..=phi.bound()).any(|w| phi.holds(&set, w, &g))
            })
        })
    }

    #[test]
    fn trivial_formulas() {
        let f = FiniteColoring::constant(8, 0);
        let x: Vec<usize> = (0..8).collect();
        for p in ["2:0", "3:010", "1:"] {
            let p = pat(p);
            assert!(eval_question_omega(&f, &[], &x, &p, &Predicate::Always, 5).unwrap());
            assert!(!eval_question_omega(&f, &[], &x, &p, &Predicate::Never, 5).unwrap());
            assert!(eval_question_i(&f, &[], &x, &p, &Predicate::Always, 5).unwrap());
            assert!(!eval_question_i(&f, &[], &x, &p, &Predicate::Never, 5).unwrap());
        }
    }

    #[test]
    fn omega_pair_example() {
        let f = FiniteColoring::constant(10, 0);
        let p = pat("3:010");
        let phi = Predicate::SizeAtLeast(2);
        let x = [2, 4, 6, 8];
        assert!(!eval_question_omega(&f, &[], &x, &p, &phi, 5).unwrap());
        assert!(eval_question_omega(&f, &[], &x, &p, &phi, 6).unwrap());
        let q = Question::Omega(Side {
            sigma: &[],
            pattern: &p,
            phi: &phi,
        });
        assert_eq!(least_bound(&f, &x, &q, 9).unwrap(), Some(6));
        let g = failing_coloring(&f, &[], &x, &p, &phi, 5).unwrap().unwrap();
        assert_eq!(g.len(), 6);
        assert!(!fg_avoids(&f, &g, &[2, 4], &p).unwrap());
    }

    #[test]
    fn agrees_with_definitions() {
        let f = FiniteColoring::from_fn(9, |x, y| ((x * 3 + y * 5) % 7 < 3) as Color);
        let x = [1, 3, 4, 6, 7];
        for p in ["2:1", "3:010", "3:001", "3:111"] {
            let p = pat(p);
            for phi in [
                Predicate::SizeAtLeast(2),
                Predicate::SizeAtLeast(3),
                Predicate::Contains(4),
                Predicate::Homogeneous {
                    color: 1,
                    min_size: 2,
                },
            ] {
                for n in [3, 5, 7] {
                    assert_eq!(
                        eval_question_omega(&f, &[0], &x, &p, &phi, n).unwrap(),
                        naive_omega(&f, &[0], &x, &p, &phi, n),
                        "{p} {phi} {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn homogeneous_pigeonhole() {
        let f = FiniteColoring::constant(14, 0);
        // The last column of 3:001 is not constant, so homogeneous sets are never blocked.
        let p = pat("3:001");
        let x: Vec<usize> = (0..14).collect();
        // Five elements force a joint class of size 2.
        let phi = Predicate::SizeAtLeast(2);
        assert!(!eval_question_i(&f, &[], &x, &p, &phi, 3).unwrap());
        assert!(eval_question_i(&f, &[], &x, &p, &phi, 4).unwrap());
        let single = [7];
        assert!(eval_question_i(&f, &[], &single, &p, &Predicate::SizeAtLeast(1), 9).unwrap());
    }

    #[test]
    fn disjunction_varies_its_side() {
        let f = FiniteColoring::constant(8, 0);
        let p = pat("3:011");
        let phi0 = Predicate::Homogeneous {
            color: 0,
            min_size: 1,
        };
        let phi1 = Predicate::Homogeneous {
            color: 1,
            min_size: 1,
        };
        let x = [1, 2, 3];
        for n in 1..=6 {
            assert!(eval_question_disjunctive(&f, &[], &[], &x, &p, &p, &phi0, &phi1, n).unwrap());
            assert!(!eval_question_omega(&f, &[], &x, &p, &phi0, n).unwrap());
            assert!(!eval_question_omega(&f, &[], &x, &p, &phi1, n).unwrap());
        }
        assert!(eval_question_disjunctive(
            &f,
            &[],
            &[],
            &x,
            &p,
            &p,
            &Predicate::Always,
            &Predicate::Never,
            3
        )
        .unwrap());
        assert!(!eval_question_disjunctive(
            &f,
            &[],
            &[],
            &x,
            &p,
            &p,
            &Predicate::Never,
            &Predicate::Never,
            3
        )
        .unwrap());
    }

    #[test]
    fn input_errors() {
        let f = FiniteColoring::constant(20, 0);
        let p = pat("2:0");
        assert!(matches!(
            eval_question_omega(&f, &[], &[1], &p, &Predicate::Always, 20),
            Err(Error::VertexOutOfRange { .. })
        ));
        assert!(matches!(
            eval_question_omega(&f, &[], &[1], &p, &Predicate::Always, 15),
            Err(Error::Guard(_))
        ));
        assert!(matches!(
            eval_question_omega(&f, &[3], &[1, 5], &p, &Predicate::Always, 5),
            Err(Error::Precondition(_))
        ));
        let x: Vec<usize> = (0..20).collect();
        assert!(matches!(
            eval_question_i(&f, &[], &x, &p, &Predicate::Always, 14),
            Err(Error::Guard(_))
        ));
    }

    #[test]
    fn predicate_text_round_trip() {
        for text in [
            "always",
            "never",
            "size:3",
            "contains:4",
            "homogeneous:1:2",
            "reaches:5:9",
        ] {
            let p: Predicate = text.parse().unwrap();
            assert_eq!(p.to_string(), text);
        }
        assert!("homogeneous:2:1".parse::<Predicate>().is_err());
        assert!("size".parse::<Predicate>().is_err());
        let r = Predicate::Reaches {
            threshold: 4,
            bound: 6,
        };
        let f = FiniteColoring::constant(8, 0);
        assert!(!eval_question_omega(&f, &[], &[1, 2, 3], &pat("3:010"), &r, 7).unwrap());
        assert!(eval_question_omega(&f, &[], &[1, 5], &pat("3:010"), &r, 7).unwrap());
        // A singleton realizes the one-vertex pattern 2:1 minus its last vertex.
        assert!(!eval_question_omega(&f, &[], &[1, 5], &pat("2:1"), &r, 7).unwrap());
    }

    #[test]
    fn catalogue_is_monotone_with_checkable_failures() {
        let cat = catalogue();
        assert_eq!(cat.len(), 20);
        for inst in &cat {
            let q = inst.question();
            let mut seen = false;
            for n in 0..=12 {
                let out = evaluate(&inst.f, &inst.x, &q, n).unwrap();
                assert!(!seen || out.holds, "{} drops at {n}", inst.name);
                seen |= out.holds;
                if !out.holds {
                    let (g, h1) = out.failing.expect("failing coloring");
                    assert!(
                        confirms_failure(&inst.f, &inst.x, &q, n, &g, h1.as_ref()).unwrap(),
                        "{} at {n}",
                        inst.name
                    );
                }
            }
        }
    }
}
