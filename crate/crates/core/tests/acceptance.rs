//! Acceptance gate: one `[PASS]`/`[FAIL]` line per criterion.
//!
//! A criterion listed in `KNOWN_RED` still prints `[FAIL]` when it fails but
//! does not fail the run; any other failure does.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::time::{Duration, Instant};

use ramsey_patterns::algebra::{
    decompositions, is_divergent, is_i_merging, is_irreducible, join, IrreducibilityMethod,
};
use ramsey_patterns::classifier::{census, classify_report, pattern_iter};
use ramsey_patterns::coloring::FiniteColoring;
use ramsey_patterns::constructions::dnc::build_dnc_coloring;
use ramsey_patterns::constructions::measure::{all_blocks_measure, build_measure_coloring};
use ramsey_patterns::constructions::oracle::{
    ApproxOracle, BiArrayFunctional, PrefixFunctional, RuleBiArray, RuleFunctional, StableOracle,
};
use ramsey_patterns::constructions::priority::{cantor_unpair, index_pattern};
use ramsey_patterns::constructions::stable2dim::build_stable_2dim_coloring;
use ramsey_patterns::constructions::trace::{verify_trace, ConstructionTrace, EventKind};
use ramsey_patterns::forcing::{catalogue, confirms_failure, evaluate};
use ramsey_patterns::lemmas::{run_suite, SuiteConfig, SuiteStatus};
use ramsey_patterns::realize::{find_realizer, EmbeddingMode};
use ramsey_patterns::{Color, Pattern};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const KNOWN_RED: &[u32] = &[8];

type Check = std::result::Result<String, String>;

type Criterion = (u32, &'static str, fn() -> Check);

fn pat(s: &str) -> Pattern {
    s.parse().expect("valid pattern")
}

fn ensure(ok: bool, detail: impl Into<String>) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(detail.into())
    }
}

/// Runs a lemma suite at its default size and requires at least `min` instances.
fn suite(name: &str, min: u64) -> Check {
    let report = run_suite(name, &SuiteConfig::default()).map_err(|e| e.to_string())?;
    ensure(report.status == SuiteStatus::Pass, format!("{report}"))?;
    ensure(
        report.instances >= min,
        format!("only {} instances, need {min}", report.instances),
    )?;
    Ok(format!(
        "{} instances, seed {}",
        report.instances, report.seed
    ))
}

fn ac01() -> Check {
    let start = Instant::now();
    let mut found = Vec::new();
    for mode in EmbeddingMode::ALL {
        let table = census(3, mode).map_err(|e| e.to_string())?;
        found.push(table.divergent_irreducible());
    }
    let elapsed = start.elapsed();
    let want = vec![pat("3:010"), pat("3:101")];
    for got in &found {
        ensure(*got == want, format!("divergent irreducible = {got:?}"))?;
    }
    let reference: Vec<Pattern> = common::all_patterns(3)
        .into_iter()
        .filter(|p| common::divergent(p) && common::irreducible(p))
        .collect();
    ensure(reference == want, format!("reference found {reference:?}"))?;
    ensure(
        elapsed < Duration::from_secs(1),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!("2 of 8, {} ms", elapsed.as_millis()))
}

fn ac02() -> Check {
    let start = Instant::now();
    let mut checked = 0u64;
    for size in 1..=6 {
        for p in pattern_iter(size).map_err(|e| e.to_string())? {
            let a = is_irreducible(&p, IrreducibilityMethod::Definitional);
            let b = is_irreducible(&p, IrreducibilityMethod::Criterion);
            ensure(a == b, format!("methods disagree on {p}"))?;
            if size <= 5 {
                ensure(
                    a == common::irreducible(&p),
                    format!("reference disagrees on {p}"),
                )?;
            }
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(checked >= 32_768, format!("only {checked} patterns"))?;
    ensure(
        elapsed < Duration::from_secs(60),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!(
        "{checked} patterns, 0 mismatches, {} ms",
        elapsed.as_millis()
    ))
}

fn random_pattern(rng: &mut ChaCha8Rng, max: usize) -> Pattern {
    let size = rng.gen_range(1..=max);
    let pairs = size * (size - 1) / 2;
    Pattern::from_code(size, rng.gen_range(0..1u64 << pairs))
}

fn ac03() -> Check {
    let summary = suite("join-associativity", 10_000)?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..1_000 {
        let (a, b) = (random_pattern(&mut rng, 5), random_pattern(&mut rng, 5));
        ensure(
            join(&a, &b) == common::join(&a, &b),
            format!("join({a}, {b}) differs from the definition"),
        )?;
    }
    Ok(summary)
}

fn ac04() -> Check {
    let summary = suite("divergence-under-join", 10_000)?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..1_000 {
        let (a, b) = (random_pattern(&mut rng, 5), random_pattern(&mut rng, 5));
        if b.size() >= 2 && common::divergent(&b) {
            ensure(
                common::divergent(&common::join(&a, &b)),
                format!("{a} ⊎ {b} converges"),
            )?;
        }
    }
    Ok(summary)
}

fn ac05() -> Check {
    let mut checked = 0;
    for size in 2..=6 {
        for p in pattern_iter(size).map_err(|e| e.to_string())? {
            let l = size - 1;
            for i in [1 - p.get(0, l), p.get(l - 1, l)] {
                ensure(is_i_merging(&p, i), format!("{p} is not {i}-merging"))?;
            }
            checked += 1;
        }
    }
    suite("default-merging-colors", 1)?;
    Ok(format!("{checked} patterns"))
}

fn ac06() -> Check {
    let mut checked = 0;
    for size in 3..=6 {
        for p in pattern_iter(size).map_err(|e| e.to_string())? {
            if !is_divergent(&p) {
                ensure(
                    is_i_merging(&p, 0) && is_i_merging(&p, 1),
                    format!("convergent {p} is not merging"),
                )?;
                checked += 1;
            }
        }
    }
    suite("convergent-merging", 1)?;
    Ok(format!("{checked} convergent patterns"))
}

fn ac07() -> Check {
    let p = pat("4:000101");
    let ds = decompositions(&p);
    ensure(
        ds.contains(&(pat("2:0"), pat("3:101"))),
        format!("decompositions = {ds:?}"),
    )?;
    ensure(
        join(&pat("2:0"), &pat("3:101")) == p,
        "2:0 ⊎ 3:101 is not 4:000101",
    )?;
    for method in [
        IrreducibilityMethod::Definitional,
        IrreducibilityMethod::Criterion,
    ] {
        ensure(
            !is_irreducible(&p, method),
            format!("{method:?} calls it irreducible"),
        )?;
    }
    ensure(!common::irreducible(&p), "reference calls it irreducible")?;
    Ok(format!("{} decompositions", ds.len()))
}

fn ac08() -> Check {
    let p = pat("5:0111000101");
    let mut lines = Vec::new();
    let mut ok = true;
    for mode in EmbeddingMode::ALL {
        let report = classify_report(&p, mode);
        let v = report.verdicts();
        let mut line = format!(
            "{mode}: omega-hyp={} one-2dim={} omega-2dim={}",
            v.omega_hyp, v.one_2dim, v.omega_2dim
        );
        if let Some(w) = &report.witness_omega_2dim {
            line.push_str(&format!(" via {} at {}", w.pattern, w.embedding));
        }
        ok &= v.omega_hyp && v.one_2dim && !v.omega_2dim;
        lines.push(line);
    }
    let detail = lines.join("; ");
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn ac09() -> Check {
    suite("stabilized-avoidance-equivalence", 10_000)
}

fn ac10() -> Check {
    suite("irreducible-union", 10_000)
}

fn ac11() -> Check {
    suite("merging-union", 10_000)
}

fn ac12() -> Check {
    suite("greedy-join-soundness", 1_000)
}

/// Last stage at which requirement `r` changed its family or choice, and its final choice.
fn settled_choice(trace: &ConstructionTrace, r: usize) -> (usize, Option<Vec<usize>>) {
    let mut stage = 0;
    let mut choice = None;
    for e in trace.events_for(r) {
        match &e.kind {
            EventKind::Family(_) => stage = e.stage,
            EventKind::Choose(block) => {
                stage = e.stage;
                choice = Some(block.clone());
            }
            EventKind::Release => {
                stage = e.stage;
                choice = None;
            }
            _ => {}
        }
    }
    (stage, choice)
}

fn trace_checks(trace: &ConstructionTrace, f: &FiniteColoring) -> std::result::Result<(), String> {
    let report = verify_trace(trace, f, &["all"]).map_err(|e| e.to_string())?;
    ensure(report.all_passed(), format!("{report}"))
}

fn ac13() -> Check {
    let stages = 500;
    let oracle = StableOracle::new()
        .with_set(0, (1..=40).collect(), 30)
        .with_set(1, (41..=121).step_by(2).collect(), 130)
        .with_set(2, (150..=220).collect(), 240);
    let (f, trace) = build_dnc_coloring(&oracle, stages);
    trace_checks(&trace, &f)?;
    let mut verified = 0;
    let mut per_e: BTreeMap<u64, usize> = BTreeMap::new();
    for r in 0..stages - 1 {
        let (settled, Some(block)) = settled_choice(&trace, r) else {
            continue;
        };
        let (a, e) = cantor_unpair(r as u64);
        let p = index_pattern(a);
        let w = oracle.approx(e as usize, stages - 1);
        let from = settled.max(oracle.settle_stage(e as usize).unwrap_or(0)) + 1;
        ensure(
            from < stages,
            format!("requirement {r} settles at the horizon"),
        )?;
        ensure(
            block.iter().all(|x| w.contains(x)),
            format!("requirement {r} holds {block:?} outside W_{e}"),
        )?;
        for s in from..stages {
            let mut h = w.clone();
            h.push(s);
            h.sort_unstable();
            ensure(
                find_realizer(&f, &h, &p).is_some(),
                format!("no realizer of {p} in W_{e} ∪ {{{s}}}"),
            )?;
            let mut chosen = block.clone();
            chosen.push(s);
            ensure(
                common::realizes(&f, &chosen, &p),
                format!("requirement {r}: {chosen:?} does not realize {p}"),
            )?;
        }
        verified += 1;
        *per_e.entry(e).or_default() += 1;
    }
    ensure(
        per_e.len() == 3,
        format!("settled requirements per set: {per_e:?}"),
    )?;
    Ok(format!(
        "{verified} settled requirements probed to stage {}",
        stages - 1
    ))
}

fn ac14() -> Check {
    let stages = 300;
    let everything = RuleFunctional::new(3, |_: &[Color], s| (0..=s).collect());
    let shifted = RuleFunctional::new(4, |sigma: &[Color], s| {
        if sigma.len() < 4 {
            return Vec::new();
        }
        let v = sigma[..4].iter().fold(0, |acc, &b| 2 * acc + b as usize);
        (0..=s).filter(|x| x % 16 != v).collect()
    });
    let late = RuleFunctional::new(6, |sigma: &[Color], s| match sigma {
        [1, 1, ..] => (20..=s).filter(|x| x % 5 == 0).collect(),
        [_, _, ..] => (0..=s).filter(|x| x % 2 == 0).collect(),
        _ => Vec::new(),
    });
    let fs: Vec<&dyn PrefixFunctional> = vec![&everything, &shifted, &late];
    let patterns = [pat("3:010"), pat("2:1"), pat("4:101100")];
    let (f, trace) = build_measure_coloring(&fs, &patterns, stages);
    trace_checks(&trace, &f)?;
    let labels = requirement_patterns(&trace);
    let states = trace.final_states();
    let mut full = 0;
    let mut worst = f64::INFINITY;
    for (r, blocks) in &states {
        let p = &labels[r];
        if blocks.len() != p.size() {
            continue;
        }
        full += 1;
        let fun = fs[cantor_unpair(*r as u64).1 as usize];
        for w in blocks.windows(2) {
            ensure(
                w[0].last() < w[1].first(),
                format!("requirement {r}: blocks overlap"),
            )?;
        }
        every_selection(blocks, &mut Vec::new(), &mut |sel| {
            ensure(
                common::realizes(&f, sel, p),
                format!("requirement {r}: selection {sel:?} misses {p}"),
            )
        })?;
        let threshold = 1.0 - 1.0 / (2.0 * p.size() as f64);
        for (i, block) in blocks.iter().enumerate() {
            let m = brute_measure(fun, stages - 1, &|out| {
                out.iter().any(|x| block.contains(x))
            });
            ensure(
                m > threshold,
                format!("requirement {r}: block {i} has measure {m}"),
            )?;
        }
        let all = brute_measure(fun, stages - 1, &|out| {
            blocks.iter().all(|b| out.iter().any(|x| b.contains(x)))
        });
        let lib = all_blocks_measure(fun, blocks, stages - 1).as_f64();
        ensure(
            (all - lib).abs() < 1e-12,
            format!("requirement {r}: measure {all} vs {lib}"),
        )?;
        ensure(
            all > 0.5,
            format!("requirement {r}: all-blocks measure {all}"),
        )?;
        worst = worst.min(all);
    }
    ensure(
        full == states.len() && full == 9,
        format!("{full} full-length states of {}", states.len()),
    )?;
    Ok(format!(
        "{full} full-length states, least all-blocks measure {worst}"
    ))
}

fn requirement_patterns(trace: &ConstructionTrace) -> BTreeMap<usize, Pattern> {
    trace
        .events
        .iter()
        .filter_map(|e| match (&e.kind, e.req) {
            (
                EventKind::Requirement {
                    pattern: Some(p), ..
                },
                Some(r),
            ) => Some((r, p.clone())),
            _ => None,
        })
        .collect()
}

fn every_selection(
    blocks: &[Vec<usize>],
    sel: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> std::result::Result<(), String>,
) -> std::result::Result<(), String> {
    let Some((first, rest)) = blocks.split_first() else {
        return visit(sel);
    };
    for &x in first {
        sel.push(x);
        every_selection(rest, sel, visit)?;
        sel.pop();
    }
    Ok(())
}

/// Fraction of oracle prefixes of length `use_bound` whose output satisfies `hit`.
fn brute_measure(fun: &dyn PrefixFunctional, s: usize, hit: &dyn Fn(&[usize]) -> bool) -> f64 {
    let depth = fun.use_bound().min(s);
    let hits = (0..1u64 << depth)
        .filter(|bits| {
            let sigma: Vec<Color> = (0..depth)
                .map(|i| ((bits >> (depth - 1 - i)) & 1) as Color)
                .collect();
            hit(&fun.output(&sigma, s))
        })
        .count();
    hits as f64 / (1u64 << depth) as f64
}

fn ac15() -> Check {
    let stages = 300;
    let singles = RuleBiArray::new(|n| Some((vec![n + 1], n)), |_n, m| Some((vec![m + 1], m)));
    let pairs = RuleBiArray::new(
        |n| Some((vec![2 * n + 1, 2 * n + 2], n)),
        |n, m| Some((vec![m + n + 3], 2 * m)),
    );
    let sparse = RuleBiArray::new(
        |n| Some((vec![10 * n + 5], 3 * n + 7)),
        |n, m| Some((vec![10 * n + 6 + 4 * m, 10 * n + 8 + 4 * m], 2 * m + 5)),
    );
    let bs: Vec<&dyn BiArrayFunctional> = vec![&singles, &pairs, &sparse];
    let (sc, trace) = build_stable_2dim_coloring(&bs, stages);
    let f = &sc.base;
    trace_checks(&trace, f)?;

    let mut last_commit: BTreeMap<usize, usize> = BTreeMap::new();
    for e in &trace.events {
        if let EventKind::Commit { elements, .. } = &e.kind {
            for &x in elements {
                last_commit.insert(x, e.stage);
            }
        }
    }
    for x in 0..f.window() {
        let from = last_commit.get(&x).map_or(x + 1, |&s| (s + 1).max(x + 1));
        for y in from..f.window() {
            ensure(
                f.get(x, y) == sc.limit(x),
                format!("column {x} differs from its limit at {y}"),
            )?;
        }
    }

    let s = stages - 1;
    let class = |c: Color| sc.limit_class(c).into_iter().collect::<BTreeSet<usize>>();
    let classes = [class(0), class(1)];
    for (e, b) in bs.iter().enumerate() {
        for i in 0..2u8 {
            let other = 1 - i;
            let found = (0..s).find_map(|n| {
                let big_e = b
                    .e_set(n, s)
                    .filter(|set| set.iter().all(|x| classes[i as usize].contains(x)))?;
                (0..s).find_map(|m| {
                    let big_f = b.f_set(n, m, s)?;
                    let ok = big_f.iter().all(|y| classes[other as usize].contains(y))
                        && big_e
                            .iter()
                            .all(|&x| big_f.iter().all(|&y| x < y && f.get(x, y) == other));
                    ok.then_some((n, m))
                })
            });
            ensure(
                found.is_some(),
                format!("bi-array {e} has no witness for i={i}"),
            )?;
        }
    }
    Ok(format!(
        "{} committed vertices, {} bi-arrays defeated for both colors",
        last_commit.len(),
        bs.len()
    ))
}

fn ac16() -> Check {
    let cat = catalogue();
    ensure(
        cat.len() == 20,
        format!("catalogue has {} instances", cat.len()),
    )?;
    let (mut failures, mut flips) = (0, 0);
    for inst in &cat {
        let q = inst.question();
        let mut seen = false;
        for n in 0..=12 {
            let out = evaluate(&inst.f, &inst.x, &q, n)
                .map_err(|e| format!("{} n={n}: {e}", inst.name))?;
            ensure(
                !seen || out.holds,
                format!("{} holds below {n} but not at {n}", inst.name),
            )?;
            if out.holds {
                flips += usize::from(!seen && n > 0);
                seen = true;
                continue;
            }
            let (g, h1) = out
                .failing
                .ok_or_else(|| format!("{} n={n}: no failing coloring", inst.name))?;
            let confirmed = confirms_failure(&inst.f, &inst.x, &q, n, &g, h1.as_ref())
                .map_err(|e| e.to_string())?;
            ensure(
                confirmed,
                format!(
                    "{} n={n}: failing coloring {} does not fail",
                    inst.name,
                    g.describe()
                ),
            )?;
            failures += 1;
        }
    }
    ensure(flips > 0, "no instance changes answer within the bound")?;
    Ok(format!(
        "{} instances, {failures} failing colorings confirmed, {flips} switch to true",
        cat.len()
    ))
}

fn ac17() -> Check {
    let commands: &[&[&str]] = &[
        &["classify", "5:0111000101"],
        &["census", "4", "--mode", "monotone"],
        &["decompose", "4:000101"],
        &["join", "3:010", "3:101"],
        &["subpatterns", "4:101100"],
        &[
            "avoid-search",
            "--coloring",
            "tests/fixtures/coloring8.txt",
            "--pattern",
            "3:011",
        ],
        &[
            "simulate",
            "dnc",
            "tests/fixtures/dnc_crafted.txt",
            "--stages",
            "60",
        ],
        &[
            "simulate",
            "measure",
            "tests/fixtures/measure_total.txt",
            "--stages",
            "60",
        ],
        &[
            "simulate",
            "stable2dim",
            "tests/fixtures/stable2dim_total.txt",
            "--stages",
            "60",
        ],
        &[
            "force-eval",
            "--catalogue",
            "disjunctive-colors",
            "--least",
            "--bound",
            "12",
        ],
        &["tree2col", "tests/fixtures/tree_small.txt"],
        &["verify-lemmas", "--seed", "17", "--count", "200"],
    ];
    let mut runs = 0;
    for args in commands {
        for format in ["text", "records"] {
            let outputs: Vec<Vec<u8>> = (0..2)
                .map(|_| {
                    let out = Command::new(env!("CARGO_BIN_EXE_ramsey-patterns"))
                        .args(*args)
                        .args(["--format", format])
                        .current_dir(env!("CARGO_MANIFEST_DIR"))
                        .output()
                        .map_err(|e| e.to_string())?;
                    ensure(
                        out.status.success(),
                        format!("{args:?} exited with {}", out.status),
                    )?;
                    Ok(out.stdout)
                })
                .collect::<std::result::Result<_, String>>()?;
            ensure(
                outputs[0] == outputs[1],
                format!("{args:?} --format {format} differs between runs"),
            )?;
            runs += 2;
        }
    }
    Ok(format!("{runs} runs over {} commands", commands.len()))
}

fn main() {
    let criteria: [Criterion; 17] = [
        (1, "census of size 3", ac01),
        (2, "irreducibility methods agree up to size 6", ac02),
        (3, "join associativity", ac03),
        (4, "divergence survives join", ac04),
        (5, "default merging colors", ac05),
        (6, "convergent patterns merge", ac06),
        (7, "4:000101 is reducible", ac07),
        (8, "verdicts of 5:0111000101", ac08),
        (9, "stabilized avoidance equivalence", ac09),
        (10, "union of stabilized irreducible avoiders", ac10),
        (11, "union of merging avoiders", ac11),
        (12, "greedy join avoidance", ac12),
        (13, "no-injury construction at S=500", ac13),
        (14, "measure construction at S=300", ac14),
        (15, "stable construction at S=300", ac15),
        (16, "forcing question monotonicity", ac16),
        (17, "byte-identical reports", ac17),
    ];
    let mut passed = 0;
    let mut unexpected = Vec::new();
    for (id, name, check) in criteria {
        let start = Instant::now();
        let result = check();
        let ms = start.elapsed().as_millis();
        match result {
            Ok(detail) => {
                passed += 1;
                println!("[PASS] AC-{id:02} {name} ({detail}; {ms} ms)");
            }
            Err(detail) => {
                let note = if KNOWN_RED.contains(&id) {
                    " [known]"
                } else {
                    ""
                };
                println!("[FAIL] AC-{id:02} {name}{note}: {detail}");
                if note.is_empty() {
                    unexpected.push(id);
                }
            }
        }
    }
    println!("{passed}/{} criteria pass", criteria.len());
    if !unexpected.is_empty() {
        println!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
