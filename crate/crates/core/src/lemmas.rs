//! Seeded randomized and exhaustive checks of the structural facts the
//! library relies on. Each suite draws from its own ChaCha stream, derived
//! from the run seed and the suite name, so suites can be run in isolation.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{
    classify, is_convergent, is_divergent, is_i_merging, is_irreducible, is_merging,
    IrreducibilityMethod,
};
use crate::classifier::{census, pattern_iter, subpatterns, CensusTable, Verdicts};
use crate::coloring::{FiniteColoring, PartialColoring, StableColoring};
use crate::error::{Error, Result};
use crate::forcing::{catalogue, confirms_failure, evaluate};
use crate::pattern::{Color, Pattern};
use crate::realize::{avoids, find_realizer, find_strong_realizer, EmbeddingMode};
use crate::records::{format_list, Record};
use crate::stabilize::{fg_avoids, greedy_avoid_join, stabilizes, Side};
use crate::tree::{tree_to_coloring, BinaryTree};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Defects that can be planted to check that the suites notice them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// The join colors cross pairs `1 − p(x, seam)` instead of `p(x, seam)`.
    FlipCase,
}

impl FromStr for Mutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "flip-case" => Ok(Mutation::FlipCase),
            other => Err(Error::Precondition(format!("unknown mutation `{other}`"))),
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("flip-case")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Overrides the instance count of every randomized suite.
    pub count: Option<usize>,
    /// Caps the pattern sizes of the exhaustive suites.
    pub max_size: Option<usize>,
    pub mutation: Option<Mutation>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: DEFAULT_SEED,
            count: None,
            max_size: None,
            mutation: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteStatus {
    Pass,
    Fail,
    /// Nothing was checked, so the pass would be vacuous.
    Skipped,
}

impl SuiteStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SuiteStatus::Pass => "pass",
            SuiteStatus::Fail => "fail",
            SuiteStatus::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub status: SuiteStatus,
    pub instances: u64,
    /// Seed of this suite's own stream.
    pub seed: u64,
    pub counterexample: Option<String>,
}

impl SuiteReport {
    pub fn to_record(&self) -> Record {
        let mut r = Record::new("suite")
            .with("name", self.name)
            .with("status", self.status.as_str())
            .with("instances", self.instances)
            .with("seed", self.seed);
        if let Some(c) = &self.counterexample {
            r = r.with("counterexample", c);
        }
        r
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<36} {:<8} {:>7} instances",
            self.name,
            self.status.as_str(),
            self.instances
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, "\n    counterexample: {c}")?;
        }
        Ok(())
    }
}

enum Kind {
    /// Default instance count.
    Random(usize),
    /// Default inclusive size range.
    Exhaustive(usize, usize),
    Fixed,
}

struct Suite {
    name: &'static str,
    kind: Kind,
    run: fn(&mut Ctx) -> Outcome,
}

const SUITES: &[Suite] = &[
    Suite {
        name: "join-associativity",
        kind: Kind::Random(10_000),
        run: join_associativity,
    },
    Suite {
        name: "divergence-under-join",
        kind: Kind::Random(10_000),
        run: divergence_under_join,
    },
    Suite {
        name: "irreducibility-equivalence",
        kind: Kind::Exhaustive(1, 6),
        run: irreducibility_equivalence,
    },
    Suite {
        name: "default-merging-colors",
        kind: Kind::Exhaustive(2, 6),
        run: default_merging_colors,
    },
    Suite {
        name: "convergent-merging",
        kind: Kind::Exhaustive(3, 6),
        run: convergent_merging,
    },
    Suite {
        name: "dual-classification",
        kind: Kind::Exhaustive(1, 6),
        run: dual_classification,
    },
    Suite {
        name: "verdict-chain",
        kind: Kind::Exhaustive(1, 5),
        run: verdict_chain,
    },
    Suite {
        name: "verdict-monotonicity",
        kind: Kind::Exhaustive(1, 5),
        run: verdict_monotonicity,
    },
    Suite {
        name: "verdict-dual-invariance",
        kind: Kind::Exhaustive(1, 5),
        run: verdict_dual_invariance,
    },
    Suite {
        name: "avoidance-duality",
        kind: Kind::Random(2_000),
        run: avoidance_duality,
    },
    Suite {
        name: "subpattern-monotonicity",
        kind: Kind::Random(2_000),
        run: subpattern_monotonicity,
    },
    Suite {
        name: "realizer-presence",
        kind: Kind::Random(2_000),
        run: realizer_presence,
    },
    Suite {
        name: "strong-to-plain",
        kind: Kind::Random(2_000),
        run: strong_to_plain,
    },
    Suite {
        name: "stabilized-avoidance-equivalence",
        kind: Kind::Random(10_000),
        run: stabilized_avoidance,
    },
    Suite {
        name: "irreducible-union",
        kind: Kind::Random(10_000),
        run: irreducible_union,
    },
    Suite {
        name: "merging-union",
        kind: Kind::Random(10_000),
        run: merging_union,
    },
    Suite {
        name: "greedy-join-soundness",
        kind: Kind::Random(1_000),
        run: greedy_join_soundness,
    },
    Suite {
        name: "forcing-monotonicity",
        kind: Kind::Fixed,
        run: forcing_monotonicity,
    },
    Suite {
        name: "tree-columns",
        kind: Kind::Random(500),
        run: tree_columns,
    },
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name).collect()
}

/// FNV-1a, to give each suite an independent stream.
fn name_hash(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

pub fn suite_seed(seed: u64, name: &str) -> u64 {
    seed ^ name_hash(name)
}

struct Ctx {
    rng: ChaCha8Rng,
    count: usize,
    lo: usize,
    hi: usize,
    mutation: Option<Mutation>,
}

/// Instances checked, and the first failure.
type Outcome = (u64, Option<String>);

pub fn run_suite(name: &str, config: &SuiteConfig) -> Result<SuiteReport> {
    let suite = SUITES
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::Precondition(format!("unknown suite `{name}`")))?;
    let seed = suite_seed(config.seed, suite.name);
    let (count, lo, hi) = match suite.kind {
        Kind::Random(n) => (config.count.unwrap_or(n), 0, 0),
        Kind::Exhaustive(lo, hi) => (0, lo, config.max_size.map_or(hi, |m| m.min(hi))),
        Kind::Fixed => (0, 0, 0),
    };
    let mut ctx = Ctx {
        rng: ChaCha8Rng::seed_from_u64(seed),
        count,
        lo,
        hi,
        mutation: config.mutation,
    };
    let (instances, counterexample) = (suite.run)(&mut ctx);
    let status = match (&counterexample, instances) {
        (Some(_), _) => SuiteStatus::Fail,
        (None, 0) => SuiteStatus::Skipped,
        (None, _) => SuiteStatus::Pass,
    };
    Ok(SuiteReport {
        name: suite.name,
        status,
        instances,
        seed,
        counterexample,
    })
}

pub fn run_all(config: &SuiteConfig) -> Vec<SuiteReport> {
    SUITES
        .iter()
        .map(|s| run_suite(s.name, config).expect("registered suite"))
        .collect()
}

fn join_with(m: Option<Mutation>, p: &Pattern, q: &Pattern) -> Pattern {
    let seam = p.size() - 1;
    Pattern::from_fn(p.size() + q.size() - 1, |x, y| {
        if y <= seam {
            p.get(x, y)
        } else if x >= seam {
            q.get(x - seam, y - seam)
        } else if m == Some(Mutation::FlipCase) {
            1 - p.get(x, seam)
        } else {
            p.get(x, seam)
        }
    })
}

fn random_pattern(rng: &mut ChaCha8Rng, size: usize) -> Pattern {
    let pairs = size * size.saturating_sub(1) / 2;
    Pattern::from_code(size, rng.gen_range(0..1u64 << pairs))
}

fn random_coloring(rng: &mut ChaCha8Rng, n: usize) -> FiniteColoring {
    FiniteColoring::from_fn(n, |_, _| rng.gen_range(0..2))
}

fn random_subset(
    rng: &mut ChaCha8Rng,
    items: impl IntoIterator<Item = usize>,
    density: f64,
) -> Vec<usize> {
    items
        .into_iter()
        .filter(|_| rng.gen_bool(density))
        .collect()
}

fn random_g(rng: &mut ChaCha8Rng, n: usize) -> PartialColoring {
    PartialColoring::from_pairs((0..n).map(|v| (v, rng.gen_range(0..2))))
}

fn show_coloring(f: &FiniteColoring) -> String {
    f.to_file_string()
        .split_whitespace()
        .collect::<Vec<_>>()
        .join("/")
}

/// Runs a check on instances drawn sequentially from the suite stream.
fn sample(ctx: &mut Ctx, mut check: impl FnMut(&mut ChaCha8Rng) -> Option<String>) -> Outcome {
    for k in 0..ctx.count {
        if let Some(c) = check(&mut ctx.rng) {
            return (k as u64 + 1, Some(c));
        }
    }
    (ctx.count as u64, None)
}

/// Draws until `draw` accepts, giving up after a fixed number of tries.
fn rejection<T>(rng: &mut ChaCha8Rng, mut draw: impl FnMut(&mut ChaCha8Rng) -> Option<T>) -> T {
    for _ in 0..1_000_000 {
        if let Some(t) = draw(rng) {
            return t;
        }
    }
    panic!("instance generator rejected a million draws");
}

/// Runs `check` on every pattern with size in `lo..=hi`, in parallel, and
/// reports the first failure in enumeration order.
fn exhaustive(ctx: &Ctx, check: impl Fn(&Pattern) -> Option<String> + Sync) -> Outcome {
    let mut total = 0;
    for size in ctx.lo..=ctx.hi {
        let all: Vec<Pattern> = pattern_iter(size)
            .expect("sizes within the guard")
            .collect();
        total += all.len() as u64;
        if let Some(c) = all.par_iter().find_map_first(&check) {
            return (total, Some(c));
        }
    }
    (total, None)
}

fn join_associativity(ctx: &mut Ctx) -> Outcome {
    let m = ctx.mutation;
    sample(ctx, |rng| {
        let [a, b, c] = [0; 3].map(|_| {
            let size = rng.gen_range(1..=5);
            random_pattern(rng, size)
        });
        let left = join_with(m, &join_with(m, &a, &b), &c);
        let right = join_with(m, &a, &join_with(m, &b, &c));
        (left != right).then(|| format!("a={a} b={b} c={c} left={left} right={right}"))
    })
}

fn divergence_under_join(ctx: &mut Ctx) -> Outcome {
    let m = ctx.mutation;
    sample(ctx, |rng| {
        let (a, b) = rejection(rng, |rng| {
            let (s, t) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
            let (a, b) = (random_pattern(rng, s), random_pattern(rng, t));
            (is_divergent(&a) || is_divergent(&b)).then_some((a, b))
        });
        let j = join_with(m, &a, &b);
        (!is_divergent(&j)).then(|| format!("a={a} b={b} join={j}"))
    })
}

fn irreducibility_equivalence(ctx: &mut Ctx) -> Outcome {
    exhaustive(ctx, |p| {
        let d = is_irreducible(p, IrreducibilityMethod::Definitional);
        let c = is_irreducible(p, IrreducibilityMethod::Criterion);
        (d != c).then(|| format!("p={p} definitional={d} criterion={c}"))
    })
}

fn default_merging_colors(ctx: &mut Ctx) -> Outcome {
    exhaustive(ctx, |p| {
        let l = p.size();
        let a = 1 - p.get(0, l - 1);
        let b = p.get(l - 2, l - 1);
        (!is_i_merging(p, a) || !is_i_merging(p, b))
            .then(|| format!("p={p} expected {a}- and {b}-merging"))
    })
}

fn convergent_merging(ctx: &mut Ctx) -> Outcome {
    exhaustive(ctx, |p| {
        (is_convergent(p) && !is_merging(p)).then(|| format!("p={p} convergent but not merging"))
    })
}

fn dual_classification(ctx: &mut Ctx) -> Outcome {
    exhaustive(ctx, |p| {
        let a = classify(p);
        let b = classify(&p.dual());
        let ok = a.divergent == b.divergent
            && a.irreducible == b.irreducible
            && a.merging0 == b.merging1
            && a.merging1 == b.merging0;
        (!ok).then(|| format!("p={p} flags={:?} dual={:?}", a.bits(), b.bits()))
    })
}

fn tables(ctx: &Ctx) -> Vec<(EmbeddingMode, Vec<CensusTable>)> {
    EmbeddingMode::ALL
        .iter()
        .map(|&mode| {
            let ts = (1..=ctx.hi.max(1))
                .map(|s| census(s, mode).expect("size within the guard"))
                .collect();
            (mode, ts)
        })
        .collect()
}

fn lookup(ts: &[CensusTable], p: &Pattern) -> Verdicts {
    ts[p.size() - 1].verdicts(p.code())
}

fn verdict_chain(ctx: &mut Ctx) -> Outcome {
    let all = tables(ctx);
    let mut total = 0;
    for (mode, ts) in &all {
        let (n, c) = exhaustive(ctx, |p| {
            let v = lookup(ts, p);
            let ok = (!v.omega_2dim || v.one_2dim) && (!v.one_2dim || v.omega_hyp);
            (!ok).then(|| format!("p={p} mode={} verdicts={v:?}", mode.as_str()))
        });
        total += n;
        if c.is_some() {
            return (total, c);
        }
    }
    (total, None)
}

fn verdict_monotonicity(ctx: &mut Ctx) -> Outcome {
    let all = tables(ctx);
    let mut total = 0;
    for (mode, ts) in &all {
        let (n, c) = exhaustive(ctx, |p| {
            let v = lookup(ts, p);
            subpatterns(p, *mode).into_iter().find_map(|q| {
                let w = lookup(ts, &q);
                let ok = (!w.omega_hyp || v.omega_hyp)
                    && (!w.one_2dim || v.one_2dim)
                    && (!w.omega_2dim || v.omega_2dim);
                (!ok).then(|| format!("q={q} p={p} mode={}", mode.as_str()))
            })
        });
        total += n;
        if c.is_some() {
            return (total, c);
        }
    }
    (total, None)
}

fn verdict_dual_invariance(ctx: &mut Ctx) -> Outcome {
    let all = tables(ctx);
    let mut total = 0;
    for (mode, ts) in &all {
        let (n, c) = exhaustive(ctx, |p| {
            let (v, w) = (lookup(ts, p), lookup(ts, &p.dual()));
            (v != w).then(|| format!("p={p} mode={} verdicts={v:?} dual={w:?}", mode.as_str()))
        });
        total += n;
        if c.is_some() {
            return (total, c);
        }
    }
    (total, None)
}

fn avoidance_duality(ctx: &mut Ctx) -> Outcome {
    sample(ctx, |rng| {
        let n = rng.gen_range(1..=10);
        let f = random_coloring(rng, n);
        let h = random_subset(rng, 0..n, 0.6);
        let size = rng.gen_range(1..=4);
        let p = random_pattern(rng, size);
        (avoids(&f, &h, &p) != avoids(&f.flip(), &h, &p.dual()))
            .then(|| format!("f={} h={} p={p}", show_coloring(&f), format_list(&h)))
    })
}

fn subpattern_monotonicity(ctx: &mut Ctx) -> Outcome {
    sample(ctx, |rng| {
        let size = rng.gen_range(1..=4);
        let p = random_pattern(rng, size);
        let subs: Vec<Pattern> = subpatterns(&p, EmbeddingMode::Monotone)
            .into_iter()
            .collect();
        let q = subs.choose(rng).expect("p is its own sub-pattern").clone();
        let n = rng.gen_range(1..=10);
        let f = random_coloring(rng, n);
        let h = random_subset(rng, 0..n, 0.6);
        (avoids(&f, &h, &q) && !avoids(&f, &h, &p))
            .then(|| format!("q={q} p={p} f={} h={}", show_coloring(&f), format_list(&h)))
    })
}

/// Every `k`-subset of `h` checked pair by pair against `p`.
fn naive_realizer(f: &FiniteColoring, h: &[usize], p: &Pattern) -> Option<Vec<usize>> {
    let k = p.size();
    let n = h.len();
    if k > n {
        return None;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let set: Vec<usize> = idx.iter().map(|&i| h[i]).collect();
        if (0..k).all(|i| (i + 1..k).all(|j| f.get(set[i], set[j]) == p.get(i, j))) {
            return Some(set);
        }
        let pos = (0..k).rev().find(|&i| idx[i] < n - k + i)?;
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn realizer_presence(ctx: &mut Ctx) -> Outcome {
    sample(ctx, |rng| {
        let n = rng.gen_range(1..=10);
        let f = random_coloring(rng, n);
        let h = random_subset(rng, 0..n, 0.7);
        let size = rng.gen_range(1..=4);
        let p = random_pattern(rng, size);
        let fast = find_realizer(&f, &h, &p);
        let slow = naive_realizer(&f, &h, &p);
        let ok = fast == slow && fast.is_some() != avoids(&f, &h, &p);
        (!ok).then(|| {
            format!(
                "f={} h={} p={p} fast={fast:?} naive={slow:?}",
                show_coloring(&f),
                format_list(&h)
            )
        })
    })
}

fn strong_to_plain(ctx: &mut Ctx) -> Outcome {
    sample(ctx, |rng| {
        let (sc, h, p, w) = rejection(rng, |rng| {
            let n = rng.gen_range(3..=10);
            let limits: Vec<Color> = (0..n).map(|_| rng.gen_range(0..2)).collect();
            let t = n - 1;
            let f = FiniteColoring::from_fn(n, |x, y| {
                if y == t {
                    limits[x]
                } else {
                    rng.gen_range(0..2)
                }
            });
            let sc = StableColoring::new(f, limits).expect("one limit per vertex");
            let h = random_subset(rng, 0..t, 0.7);
            let size = rng.gen_range(2..=4);
            let p = random_pattern(rng, size);
            find_strong_realizer(&sc, &h, &p).map(|w| (sc, h, p, w))
        });
        let mut ht = h.clone();
        ht.push(sc.base.window() - 1);
        avoids(&sc.base, &ht, &p).then(|| {
            format!(
                "base={} h={} p={p} witness={}",
                show_coloring(&sc.base),
                format_list(&h),
                format_list(&w)
            )
        })
    })
}

/// `E < F` inside a random window, `F` nonempty, and `f` adjusted so that
/// `F` stabilizes `E` with witness `g`.
struct StableInstance {
    f: FiniteColoring,
    g: PartialColoring,
    e: Vec<usize>,
    fs: Vec<usize>,
}

impl StableInstance {
    fn draw(rng: &mut ChaCha8Rng, max_window: usize) -> Self {
        let n = rng.gen_range(2..=max_window);
        let k = rng.gen_range(1..n);
        let e = random_subset(rng, 0..k, 0.6);
        let mut fs = random_subset(rng, k..n, 0.6);
        if fs.is_empty() {
            fs.push(rng.gen_range(k..n));
        }
        let g = random_g(rng, n);
        let mut f = random_coloring(rng, n);
        for &x in &e {
            for &y in &fs {
                f.set(x, y, g.get(x).expect("g is total on the window"));
            }
        }
        StableInstance { f, g, e, fs }
    }

    fn show(&self, p: &Pattern) -> String {
        format!(
            "f={} g={} E={} F={} p={p}",
            show_coloring(&self.f),
            self.g.describe().replace(' ', ""),
            format_list(&self.e),
            format_list(&self.fs)
        )
    }
}

fn stabilized_avoidance(ctx: &mut Ctx) -> Outcome {
    sample(ctx, |rng| {
        let inst = StableInstance::draw(rng, 10);
        let size = rng.gen_range(2..=4);
        let p = random_pattern(rng, size);
        debug_assert!(stabilizes(&inst.f, &inst.e, &inst.fs, &inst.g).unwrap());
        let left = fg_avoids(&inst.f, &inst.g, &inst.e, &p).expect("g is total");
        let right = inst.fs.iter().all(|&y| {
            let mut ey = inst.e.clone();
            ey.push(y);
            avoids(&inst.f, &ey, &p)
        });
        (left != right).then(|| format!("{} lhs={left} rhs={right}", inst.show(&p)))
    })
}

fn irreducible_patterns(sizes: std::ops::RangeInclusive<usize>) -> Vec<Pattern> {
    sizes
        .flat_map(|s| pattern_iter(s).expect("small sizes"))
        .filter(|p| is_irreducible(p, IrreducibilityMethod::Criterion))
        .collect()
}

fn irreducible_union(ctx: &mut Ctx) -> Outcome {
    let pool = irreducible_patterns(3..=4);
    sample(ctx, |rng| {
        let (inst, p) = rejection(rng, |rng| {
            let inst = StableInstance::draw(rng, 10);
            let p = pool
                .choose(rng)
                .expect("irreducible patterns exist")
                .clone();
            let both = fg_avoids(&inst.f, &inst.g, &inst.e, &p).expect("total g")
                && fg_avoids(&inst.f, &inst.g, &inst.fs, &p).expect("total g");
            both.then_some((inst, p))
        });
        let mut union = inst.e.clone();
        union.extend(&inst.fs);
        (!fg_avoids(&inst.f, &inst.g, &union, &p).expect("total g")).then(|| inst.show(&p))
    })
}

fn merging_union(ctx: &mut Ctx) -> Outcome {
    let pool: Vec<(Pattern, Color)> = (3..=5)
        .flat_map(|s| pattern_iter(s).expect("small sizes"))
        .filter(is_divergent)
        .flat_map(|p| {
            let colors: Vec<Color> = (0..2).filter(|&i| is_i_merging(&p, i)).collect();
            colors.into_iter().map(move |i| (p.clone(), i))
        })
        .collect();
    sample(ctx, |rng| {
        let (f, g, e, fs, p, i) = rejection(rng, |rng| {
            let (p, i) = pool
                .choose(rng)
                .expect("divergent merging patterns exist")
                .clone();
            let n = rng.gen_range(2..=10);
            let k = rng.gen_range(1..n);
            let e = random_subset(rng, 0..k, 0.6);
            let fs = random_subset(rng, k..n, 0.6);
            let e_color = rng.gen_range(0..2);
            let cross = rng.gen_range(0..2);
            let g = PartialColoring::from_pairs((0..n).map(|v| {
                let c = if e.contains(&v) {
                    e_color
                } else if fs.contains(&v) {
                    1 - i
                } else {
                    rng.gen_range(0..2)
                };
                (v, c)
            }));
            let mut f = random_coloring(rng, n);
            for &x in &e {
                for &y in &fs {
                    f.set(x, y, cross);
                }
            }
            let mut union = e.clone();
            union.extend(&fs);
            avoids(&f, &union, &p).then_some((f, g, e, fs, p, i))
        });
        let mut union = e.clone();
        union.extend(&fs);
        (!fg_avoids(&f, &g, &union, &p).expect("total g")).then(|| {
            format!(
                "f={} g={} E={} F={} p={p} i={i}",
                show_coloring(&f),
                g.describe().replace(' ', ""),
                format_list(&e),
                format_list(&fs)
            )
        })
    })
}

fn greedy_join_soundness(ctx: &mut Ctx) -> Outcome {
    let m = ctx.mutation;
    sample(ctx, |rng| {
        let (f, h, p, q) = rejection(rng, |rng| {
            let n = rng.gen_range(2..=14);
            let (s, t) = (rng.gen_range(2..=3), rng.gen_range(2..=3));
            let (p, q) = (random_pattern(rng, s), random_pattern(rng, t));
            // Biased colorings keep p ⊎ q avoidable on larger sets.
            let bias = rng.gen_range(0.1..0.9);
            let f = FiniteColoring::from_fn(n, |_, _| rng.gen_bool(bias) as Color);
            let h = random_subset(rng, 0..n, 0.8);
            naive_realizer(&f, &h, &join_with(m, &p, &q))
                .is_none()
                .then_some((f, h, p, q))
        });
        let show = || format!("f={} h={} p={p} q={q}", show_coloring(&f), format_list(&h));
        match greedy_avoid_join(&f, &h, &p, &q) {
            Err(err) => Some(format!("{} error={err}", show())),
            Ok(out) => {
                let pattern = if out.side == Side::P { &p } else { &q };
                let inside = out.set.iter().all(|x| h.contains(x));
                let ok = inside && out.verified && naive_realizer(&f, &out.set, pattern).is_none();
                (!ok).then(|| format!("{} side={} set={}", show(), out.side, format_list(&out.set)))
            }
        }
    })
}

fn forcing_monotonicity(_ctx: &mut Ctx) -> Outcome {
    let cat = catalogue();
    let mut checked = 0;
    for inst in &cat {
        let q = inst.question();
        let mut seen = None;
        for n in 0..=12 {
            checked += 1;
            let out = match evaluate(&inst.f, &inst.x, &q, n) {
                Ok(out) => out,
                Err(err) => return (checked, Some(format!("{} n={n} error={err}", inst.name))),
            };
            if let (Some(first), false) = (seen, out.holds) {
                return (
                    checked,
                    Some(format!("{} true at {first} but false at {n}", inst.name)),
                );
            }
            if out.holds {
                seen.get_or_insert(n);
                continue;
            }
            let confirmed = out
                .failing
                .as_ref()
                .map(|(g, h1)| confirms_failure(&inst.f, &inst.x, &q, n, g, h1.as_ref()));
            if !matches!(confirmed, Some(Ok(true))) {
                return (
                    checked,
                    Some(format!(
                        "{} n={n} failing coloring not confirmed",
                        inst.name
                    )),
                );
            }
        }
    }
    (checked, None)
}

fn tree_columns(ctx: &mut Ctx) -> Outcome {
    sample(ctx, |rng| {
        let depth = rng.gen_range(2..=12);
        let paths: Vec<Vec<Color>> = (0..rng.gen_range(1..=6))
            .map(|_| (0..depth).map(|_| rng.gen_range(0..2)).collect())
            .collect();
        let tree = BinaryTree::from_paths(paths.iter().map(Vec::as_slice));
        let levels = (0..=depth)
            .take_while(|&s| tree.leftmost(s).is_some())
            .count();
        let f = tree_to_coloring(&tree, levels).expect("levels are present");
        (0..levels).find_map(|x| {
            // Least s0 after which the leftmost paths agree at x.
            let value = |s: usize| tree.leftmost(s).expect("level present")[x];
            let s0 = (x + 1..levels)
                .rev()
                .take_while(|&s| value(s) == value(levels - 1))
                .last()?;
            let ok = (s0..levels).all(|s| f.get(x, s) == value(levels - 1));
            (!ok).then(|| {
                format!(
                    "tree={} x={x} s0={s0}",
                    tree.to_file_string().replace('\n', "/")
                )
            })
        })
    })
}
