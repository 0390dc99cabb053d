//! Command-line surface. Commands render into a [`RunReport`]; the binary
//! only parses arguments, prints and sets the exit code.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use crate::algebra::{decompositions, join, yes_no};
use crate::classifier::{census, classify_report, subpatterns, ClassificationReport, Witness};
use crate::coloring::FiniteColoring;
use crate::constructions::dnc::build_dnc_coloring;
use crate::constructions::measure::build_measure_coloring;
use crate::constructions::oracle::{BiArrayFunctional, OracleFile, PrefixFunctional};
use crate::constructions::stable2dim::build_stable_2dim_coloring;
use crate::constructions::trace::{verify_trace, ConstructionTrace, TraceReport};
use crate::error::{Error, Result};
use crate::forcing::{
    catalogue, evaluate, least_bound, ForcingInstance, Predicate, QuestionKind, QuestionOutcome,
};
use crate::lemmas::{run_suite, suite_names, Mutation, SuiteConfig, SuiteStatus, DEFAULT_SEED};
use crate::pattern::Pattern;
use crate::realize::EmbeddingMode;
use crate::records::{format_list, parse_list, Record};
use crate::stabilize::{greedy_avoid_join, max_avoiding_subset, MAX_ORACLE_WINDOW};
use crate::tree::{tree_to_coloring, BinaryTree};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Records,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    Dnc,
    Measure,
    Stable2dim,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum QuestionArg {
    Omega,
    Homogeneous,
    Disjunctive,
}

#[derive(Debug, Parser)]
#[command(
    name = "ramsey-patterns",
    version,
    about = "Pattern avoidance, classification and construction simulators"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: Format,
    /// Include wall-clock timing (breaks byte-identical output).
    #[arg(long, global = true)]
    pub timing: bool,
}

fn parse_mode(s: &str) -> std::result::Result<EmbeddingMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_mutation(s: &str) -> std::result::Result<Mutation, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Flags, verdicts and least witnesses of one pattern.
    Classify {
        pattern: String,
        #[arg(long, default_value = "injective", value_parser = parse_mode)]
        mode: EmbeddingMode,
    },
    /// Every pattern of one size with its flags and verdicts.
    Census {
        size: usize,
        #[arg(long, default_value = "injective", value_parser = parse_mode)]
        mode: EmbeddingMode,
    },
    /// All ways of writing a pattern as a join.
    Decompose {
        pattern: String,
    },
    Join {
        p: String,
        q: String,
    },
    Subpatterns {
        pattern: String,
        #[arg(long, default_value = "injective", value_parser = parse_mode)]
        mode: EmbeddingMode,
    },
    /// Largest avoiding subset, or the greedy split of a join avoider with `--join-with`.
    AvoidSearch {
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        pattern: String,
        /// Comma-separated vertices; defaults to the whole window.
        #[arg(long)]
        set: Option<String>,
        #[arg(long)]
        join_with: Option<String>,
    },
    /// Runs a priority construction against an oracle table file.
    Simulate {
        #[arg(value_enum)]
        kind: Construction,
        oracle: PathBuf,
        #[arg(long, default_value_t = 100)]
        stages: usize,
        /// Also write `coloring.txt`, `trace.txt` and `checks.txt` here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Evaluates a bounded forcing question over a finite coloring.
    ForceEval {
        /// A named instance from the built-in catalogue instead of explicit inputs.
        #[arg(long, conflicts_with_all = ["coloring", "question", "x"])]
        catalogue: Option<String>,
        #[arg(long, required_unless_present = "catalogue")]
        coloring: Option<PathBuf>,
        #[arg(long, value_enum, required_unless_present = "catalogue")]
        question: Option<QuestionArg>,
        /// The reservoir `X`, comma separated.
        #[arg(long, required_unless_present = "catalogue")]
        x: Option<String>,
        /// One per side.
        #[arg(long)]
        pattern: Vec<String>,
        /// One per side: always, never, size:K, contains:V, homogeneous:C:K, reaches:T:B.
        #[arg(long)]
        formula: Vec<String>,
        /// One per side, comma separated (`-` for empty).
        #[arg(long)]
        sigma: Vec<String>,
        #[arg(long, default_value_t = 6)]
        bound: usize,
        /// Report the least bound up to `--bound` instead.
        #[arg(long)]
        least: bool,
    },
    /// The leftmost-path coloring of a finite binary tree.
    Tree2col {
        tree: PathBuf,
        /// Defaults to one more than the tree depth.
        #[arg(long)]
        window: Option<usize>,
    },
    /// Seeded checks of the structural facts behind the library.
    VerifyLemmas {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Instances per randomized suite.
        #[arg(long)]
        count: Option<usize>,
        /// Largest pattern size for the exhaustive suites.
        #[arg(long)]
        max_size: Option<usize>,
        /// Restrict to these suites.
        #[arg(long)]
        suite: Vec<String>,
        #[arg(long, value_parser = parse_mutation)]
        mutation: Option<Mutation>,
    },
}

/// Output of one command together with what is needed to reproduce it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunReport {
    pub command: String,
    /// SHA-256 over the arguments and the bytes of every input file.
    pub inputs_digest: String,
    pub seed: Option<u64>,
    pub timing: Option<Duration>,
    pub text: String,
    pub records: Vec<Record>,
    /// False when a check failed; the binary then exits nonzero.
    pub success: bool,
}

impl RunReport {
    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Text => {
                let _ = writeln!(out, "# command: {}", self.command);
                let _ = writeln!(out, "# inputs: {}", self.inputs_digest);
                if let Some(seed) = self.seed {
                    let _ = writeln!(out, "# seed: {seed}");
                }
                if let Some(t) = self.timing {
                    let _ = writeln!(out, "# elapsed-ms: {}", t.as_millis());
                }
                out.push_str(&self.text);
            }
            Format::Records => {
                let mut head = Record::new("run")
                    .with("command", &self.command)
                    .with("inputs", &self.inputs_digest);
                if let Some(seed) = self.seed {
                    head = head.with("seed", seed);
                }
                if let Some(t) = self.timing {
                    head = head.with("elapsed-ms", t.as_millis());
                }
                let _ = writeln!(out, "{head}");
                for r in &self.records {
                    let _ = writeln!(out, "{r}");
                }
            }
        }
        out
    }
}

struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    fn new(argv: &[String]) -> Self {
        let mut hasher = Sha256::new();
        for a in argv {
            hasher.update(a.as_bytes());
            hasher.update([0]);
        }
        Inputs { hasher }
    }

    fn read(&mut self, path: &Path) -> Result<String> {
        let text =
            fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        self.hasher.update(text.as_bytes());
        Ok(text)
    }

    fn digest(self) -> String {
        self.hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

/// What a command produced, before the run header is added.
pub struct Body {
    pub text: String,
    pub records: Vec<Record>,
    pub seed: Option<u64>,
    pub success: bool,
}

impl Body {
    fn new() -> Self {
        Body {
            text: String::new(),
            records: Vec::new(),
            seed: None,
            success: true,
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }
}

/// Runs a parsed command; `argv` is echoed and hashed.
pub fn run(cli: &Cli, argv: &[String]) -> Result<RunReport> {
    let start = Instant::now();
    let mut inputs = Inputs::new(argv);
    let body = match &cli.command {
        Command::Classify { pattern, mode } => cmd_classify(&parse(pattern)?, *mode),
        Command::Census { size, mode } => cmd_census(*size, *mode)?,
        Command::Decompose { pattern } => cmd_decompose(&parse(pattern)?),
        Command::Join { p, q } => cmd_join(&parse(p)?, &parse(q)?),
        Command::Subpatterns { pattern, mode } => cmd_subpatterns(&parse(pattern)?, *mode),
        Command::AvoidSearch {
            coloring,
            pattern,
            set,
            join_with,
        } => {
            let f = FiniteColoring::parse_file(&inputs.read(coloring)?)?;
            let h = match set {
                Some(s) => parse_list(s, 0)?,
                None => (0..f.window()).collect(),
            };
            let q = join_with.as_deref().map(parse).transpose()?;
            cmd_avoid_search(&f, &h, &parse(pattern)?, q.as_ref())?
        }
        Command::Simulate {
            kind,
            oracle,
            stages,
            out_dir,
        } => {
            let file = OracleFile::parse(&inputs.read(oracle)?)?;
            let body = cmd_simulate(*kind, &file, *stages)?;
            if let Some(dir) = out_dir {
                write_outputs(dir, &body)?;
            }
            body.body
        }
        Command::ForceEval {
            catalogue: name,
            coloring,
            question,
            x,
            pattern,
            formula,
            sigma,
            bound,
            least,
        } => {
            let inst = match name {
                Some(name) => catalogue()
                    .into_iter()
                    .find(|i| i.name == name)
                    .ok_or_else(|| {
                        Error::Precondition(format!("no catalogue instance `{name}`"))
                    })?,
                None => {
                    let path = coloring.as_ref().expect("clap enforces --coloring");
                    let f = FiniteColoring::parse_file(&inputs.read(path)?)?;
                    let kind = match question.expect("clap enforces --question") {
                        QuestionArg::Omega => QuestionKind::Omega,
                        QuestionArg::Homogeneous => QuestionKind::Homogeneous,
                        QuestionArg::Disjunctive => QuestionKind::Disjunctive,
                    };
                    build_instance(f, kind, x.as_deref().unwrap_or(""), pattern, formula, sigma)?
                }
            };
            cmd_force_eval(&inst, *bound, *least)?
        }
        Command::Tree2col { tree, window } => {
            let t = BinaryTree::parse_file(&inputs.read(tree)?)?;
            cmd_tree2col(&t, *window)?
        }
        Command::VerifyLemmas {
            seed,
            count,
            max_size,
            suite,
            mutation,
        } => {
            let config = SuiteConfig {
                seed: *seed,
                count: *count,
                max_size: *max_size,
                mutation: *mutation,
            };
            cmd_verify_lemmas(&config, suite)?
        }
    };
    Ok(RunReport {
        command: argv.join(" "),
        inputs_digest: inputs.digest(),
        seed: body.seed,
        timing: cli.timing.then(|| start.elapsed()),
        text: body.text,
        records: body.records,
        success: body.success,
    })
}

fn parse(s: &str) -> Result<Pattern> {
    s.parse()
}

fn witness_text(w: &Witness) -> String {
    format!("{} at {}", w.pattern, w.embedding)
}

fn witness_value(w: &Witness) -> String {
    format!("{}@{}", w.pattern, w.embedding)
}

fn report_record(r: &ClassificationReport) -> Record {
    let f = &r.flags;
    let mut rec = Record::new("classification")
        .with("pattern", &r.pattern)
        .with("mode", r.mode)
        .with("divergent", yes_no(f.divergent))
        .with("irreducible", yes_no(f.irreducible))
        .with("merging0", yes_no(f.merging0))
        .with("merging1", yes_no(f.merging1))
        .with("omega-hyp", yes_no(r.verdict_omega_hyp))
        .with("one-2dim", yes_no(r.verdict_one_2dim))
        .with("omega-2dim", yes_no(r.verdict_omega_2dim));
    if let Some(w) = &r.witness_omega_hyp {
        rec = rec.with("witness-omega-hyp", witness_value(w));
    }
    if let Some((w0, w1)) = &r.witness_one_2dim {
        rec = rec.with(
            "witness-one-2dim",
            format!("{};{}", witness_value(w0), witness_value(w1)),
        );
    }
    if let Some(w) = &r.witness_omega_2dim {
        rec = rec.with("witness-omega-2dim", witness_value(w));
    }
    rec
}

pub fn cmd_classify(p: &Pattern, mode: EmbeddingMode) -> Body {
    let r = classify_report(p, mode);
    let mut b = Body::new();
    b.line(format!("pattern {p} (sub-pattern mode {mode})"));
    b.line(format!("flags: {}", r.flags));
    b.line(format!(
        "omega-hyp: {}; one-2dim: {}; omega-2dim: {}",
        yes_no(r.verdict_omega_hyp),
        yes_no(r.verdict_one_2dim),
        yes_no(r.verdict_omega_2dim)
    ));
    if let Some(w) = &r.witness_omega_hyp {
        b.line(format!("  omega-hyp witness: {}", witness_text(w)));
    }
    if let Some((w0, w1)) = &r.witness_one_2dim {
        b.line(format!(
            "  one-2dim witnesses: {} and {}",
            witness_text(w0),
            witness_text(w1)
        ));
    }
    if let Some(w) = &r.witness_omega_2dim {
        b.line(format!("  omega-2dim witness: {}", witness_text(w)));
    }
    b.records.push(report_record(&r));
    b
}

pub fn cmd_census(size: usize, mode: EmbeddingMode) -> Result<Body> {
    let table = census(size, mode)?;
    let mut b = Body::new();
    b.line(format!("census of size {size} (sub-pattern mode {mode})"));
    b.line(format!(
        "{:<18} {:<4} {:<4} {:<3} {:<3} {:<5} {:<5} {:<5}",
        "pattern", "div", "irr", "m0", "m1", "hyp", "one2", "omg2"
    ));
    let mark = |x: bool| if x { "x" } else { "." };
    for (p, f, v) in table.rows() {
        b.line(format!(
            "{:<18} {:<4} {:<4} {:<3} {:<3} {:<5} {:<5} {:<5}",
            p.to_string(),
            mark(f.divergent),
            mark(f.irreducible),
            mark(f.merging0),
            mark(f.merging1),
            mark(v.omega_hyp),
            mark(v.one_2dim),
            mark(v.omega_2dim)
        ));
        b.records.push(
            Record::new("pattern")
                .with("p", &p)
                .with("divergent", yes_no(f.divergent))
                .with("irreducible", yes_no(f.irreducible))
                .with("merging0", yes_no(f.merging0))
                .with("merging1", yes_no(f.merging1))
                .with("omega-hyp", yes_no(v.omega_hyp))
                .with("one-2dim", yes_no(v.one_2dim))
                .with("omega-2dim", yes_no(v.omega_2dim)),
        );
    }
    let c = table.counts();
    b.line(format!(
        "total {} divergent {} irreducible {} divergent+irreducible {} merging {} omega-hyp {} one-2dim {} omega-2dim {}",
        c.total, c.divergent, c.irreducible, c.divergent_irreducible, c.merging, c.omega_hyp, c.one_2dim, c.omega_2dim
    ));
    b.records.push(
        Record::new("counts")
            .with("size", size)
            .with("mode", mode)
            .with("total", c.total)
            .with("divergent", c.divergent)
            .with("irreducible", c.irreducible)
            .with("divergent-irreducible", c.divergent_irreducible)
            .with("merging0", c.merging0)
            .with("merging1", c.merging1)
            .with("merging", c.merging)
            .with("omega-hyp", c.omega_hyp)
            .with("one-2dim", c.one_2dim)
            .with("omega-2dim", c.omega_2dim),
    );
    Ok(b)
}

pub fn cmd_decompose(p: &Pattern) -> Body {
    let mut b = Body::new();
    let ds = decompositions(p);
    if ds.is_empty() {
        b.line(format!("{p} is irreducible"));
    }
    for (x, y) in &ds {
        b.line(format!("{p} = {x} ⊎ {y}"));
        b.records.push(
            Record::new("decomposition")
                .with("p", p)
                .with("left", x)
                .with("right", y),
        );
    }
    b.records.push(
        Record::new("summary")
            .with("p", p)
            .with("decompositions", ds.len()),
    );
    b
}

pub fn cmd_join(p: &Pattern, q: &Pattern) -> Body {
    let j = join(p, q);
    let mut b = Body::new();
    b.line(format!("{p} ⊎ {q} = {j}"));
    b.records.push(
        Record::new("join")
            .with("p", p)
            .with("q", q)
            .with("result", &j),
    );
    b
}

pub fn cmd_subpatterns(p: &Pattern, mode: EmbeddingMode) -> Body {
    let subs = subpatterns(p, mode);
    let mut b = Body::new();
    b.line(format!("{} sub-patterns of {p} (mode {mode})", subs.len()));
    for q in &subs {
        b.line(format!("  {q}"));
        b.records.push(
            Record::new("subpattern")
                .with("of", p)
                .with("mode", mode)
                .with("q", q),
        );
    }
    b
}

pub fn cmd_avoid_search(
    f: &FiniteColoring,
    h: &[usize],
    p: &Pattern,
    q: Option<&Pattern>,
) -> Result<Body> {
    let mut b = Body::new();
    match q {
        None => {
            if h.len() > MAX_ORACLE_WINDOW {
                return Err(Error::Guard(format!(
                    "{} candidate vertices exceed {MAX_ORACLE_WINDOW} for the exhaustive search; pass --set or --join-with",
                    h.len()
                )));
            }
            let best = max_avoiding_subset(f, h, p)?;
            b.line(format!(
                "largest subset avoiding {p}: {} ({} elements)",
                format_list(&best),
                best.len()
            ));
            b.records.push(
                Record::new("avoid")
                    .with("pattern", p)
                    .with("set", format_list(&best))
                    .with("size", best.len()),
            );
        }
        Some(q) => {
            let out = greedy_avoid_join(f, h, p, q)?;
            let target = if out.side == crate::stabilize::Side::P {
                p
            } else {
                q
            };
            b.line(format!(
                "side {} ({target}): {} ({} elements), verified {}{}",
                out.side,
                format_list(&out.set),
                out.set.len(),
                yes_no(out.verified),
                if out.fallback { ", chosen by size" } else { "" }
            ));
            b.records.push(
                Record::new("greedy")
                    .with("side", out.side)
                    .with("pattern", target)
                    .with("elements", format_list(&out.set))
                    .with("verified", yes_no(out.verified))
                    .with("fallback", yes_no(out.fallback)),
            );
            b.success = out.verified;
        }
    }
    Ok(b)
}

/// Coloring file, trace records and check records of one simulation.
pub struct Simulation {
    pub coloring_file: String,
    pub trace: ConstructionTrace,
    pub report: TraceReport,
    body: Body,
}

impl Simulation {
    pub fn body_text(&self) -> &str {
        &self.body.text
    }
}

pub fn cmd_simulate(kind: Construction, file: &OracleFile, stages: usize) -> Result<Simulation> {
    let (coloring_file, base, trace) = match kind {
        Construction::Dnc => {
            let (f, t) = build_dnc_coloring(&file.approx, stages);
            (f.to_file_string(), f, t)
        }
        Construction::Measure => {
            let fs = file.functionals();
            let refs: Vec<&dyn PrefixFunctional> =
                fs.iter().map(|f| f as &dyn PrefixFunctional).collect();
            let (f, t) = build_measure_coloring(&refs, &file.pattern_list()?, stages);
            (f.to_file_string(), f, t)
        }
        Construction::Stable2dim => {
            let bs = file.biarrays();
            let refs: Vec<&dyn BiArrayFunctional> =
                bs.iter().map(|b| b as &dyn BiArrayFunctional).collect();
            let (sc, t) = build_stable_2dim_coloring(&refs, stages);
            (sc.to_file_string(), sc.base, t)
        }
    };
    let report = verify_trace(&trace, &base, &["all"])?;
    let mut body = Body::new();
    body.line("# coloring");
    body.text.push_str(&coloring_file);
    body.line("# trace");
    body.text.push_str(&trace.to_records());
    body.line("# checks");
    body.text.push_str(&report.to_records());
    let trace_records = crate::records::parse_records(&trace.to_records())?;
    body.records
        .extend(trace_records.into_iter().map(|(_, r)| r));
    let check_records = crate::records::parse_records(&report.to_records())?;
    body.records
        .extend(check_records.into_iter().map(|(_, r)| r));
    body.success = report.all_passed();
    Ok(Simulation {
        coloring_file,
        trace,
        report,
        body,
    })
}

fn write_outputs(dir: &Path, sim: &Simulation) -> Result<()> {
    let io = |e: std::io::Error| Error::Io(format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    fs::write(dir.join("coloring.txt"), &sim.coloring_file).map_err(io)?;
    fs::write(dir.join("trace.txt"), sim.trace.to_records()).map_err(io)?;
    fs::write(dir.join("checks.txt"), sim.report.to_records()).map_err(io)?;
    Ok(())
}

fn build_instance(
    f: FiniteColoring,
    kind: QuestionKind,
    x: &str,
    patterns: &[String],
    formulas: &[String],
    sigmas: &[String],
) -> Result<ForcingInstance> {
    let sides = if kind == QuestionKind::Disjunctive {
        2
    } else {
        1
    };
    if patterns.len() != sides || formulas.len() != sides || sigmas.len() > sides {
        return Err(Error::Precondition(format!(
            "this question takes {sides} --pattern and --formula value(s) and at most {sides} --sigma"
        )));
    }
    let mut out = Vec::with_capacity(sides);
    for k in 0..sides {
        let sigma = sigmas
            .get(k)
            .map(|s| parse_list(s, 0))
            .transpose()?
            .unwrap_or_default();
        out.push((
            sigma,
            parse(&patterns[k])?,
            formulas[k].parse::<Predicate>()?,
        ));
    }
    Ok(ForcingInstance {
        name: "command-line",
        f,
        x: parse_list(x, 0)?,
        kind,
        sides: out,
    })
}

fn outcome_lines(b: &mut Body, n: usize, out: &QuestionOutcome) {
    b.line(format!(
        "bound {n}: {} ({} colorings over {})",
        if out.holds { "holds" } else { "fails" },
        out.colorings,
        format_list(&out.domain)
    ));
    b.records.push(
        Record::new("verdict")
            .with("bound", n)
            .with("holds", yes_no(out.holds))
            .with("colorings", out.colorings)
            .with("domain", format_list(&out.domain)),
    );
    for w in &out.witnesses {
        let g = w.g.describe();
        let h1 = w.h1.as_ref().map(|h| h.describe());
        b.line(format!(
            "  g={}{} side {} rho={} x={}",
            if g.is_empty() { "-" } else { &g },
            h1.as_ref().map(|h| format!(" h1={h}")).unwrap_or_default(),
            w.side,
            format_list(&w.rho),
            w.x
        ));
        let mut r = Record::new("witness")
            .with("g", if g.is_empty() { "-".into() } else { g })
            .with("side", w.side)
            .with("rho", format_list(&w.rho))
            .with("x", w.x);
        if let Some(h) = h1 {
            r = r.with("h1", h);
        }
        b.records.push(r);
    }
    if out.colorings > out.witnesses.len() as u64 && out.holds {
        b.line(format!(
            "  ({} more colorings not listed)",
            out.colorings - out.witnesses.len() as u64
        ));
    }
    if let Some((g, h1)) = &out.failing {
        let mut line = format!("  failing g={}", g.describe());
        let mut r = Record::new("failing").with("g", g.describe());
        if let Some(h) = h1 {
            let _ = write!(line, " h1={}", h.describe());
            r = r.with("h1", h.describe());
        }
        b.line(line);
        b.records.push(r);
    }
}

pub fn cmd_force_eval(inst: &ForcingInstance, bound: usize, least: bool) -> Result<Body> {
    let mut b = Body::new();
    let q = inst.question();
    b.line(format!(
        "{} question `{}` over X={}",
        q.kind(),
        inst.name,
        format_list(&inst.x)
    ));
    for (k, (sigma, p, phi)) in inst.sides.iter().enumerate() {
        b.line(format!(
            "  side {k}: sigma={} p={p} phi={phi}",
            format_list(sigma)
        ));
    }
    if least {
        let n = least_bound(&inst.f, &inst.x, &q, bound)?;
        match n {
            Some(n) => b.line(format!("least bound: {n}")),
            None => b.line(format!("no bound up to {bound}")),
        }
        b.records.push(
            Record::new("least")
                .with("cap", bound)
                .with("bound", n.map_or("none".to_string(), |n| n.to_string())),
        );
    } else {
        let out = evaluate(&inst.f, &inst.x, &q, bound)?;
        outcome_lines(&mut b, bound, &out);
    }
    Ok(b)
}

pub fn cmd_tree2col(tree: &BinaryTree, window: Option<usize>) -> Result<Body> {
    let n = match window {
        Some(n) => n,
        None => tree.depth().map_or(0, |d| d + 1),
    };
    let f = tree_to_coloring(tree, n)?;
    let mut b = Body::new();
    b.text.push_str(&f.to_file_string());
    for y in 1..n {
        let ones: Vec<usize> = (0..y).filter(|&x| f.get(x, y) == 1).collect();
        b.records.push(
            Record::new("column")
                .with("stage", y)
                .with("ones", format_list(&ones)),
        );
    }
    Ok(b)
}

pub fn cmd_verify_lemmas(config: &SuiteConfig, only: &[String]) -> Result<Body> {
    let names: Vec<&str> = if only.is_empty() {
        suite_names()
    } else {
        only.iter().map(String::as_str).collect()
    };
    let mut b = Body::new();
    b.seed = Some(config.seed);
    if let Some(m) = config.mutation {
        b.line(format!("planted mutation: {m}"));
    }
    for name in names {
        let r = run_suite(name, config)?;
        b.success &= r.status != SuiteStatus::Fail;
        b.line(r.to_string());
        b.records.push(r.to_record());
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::records::parse_records;

    fn run_args(args: &[&str]) -> Result<RunReport> {
        let argv: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let cli =
            Cli::try_parse_from(std::iter::once("ramsey-patterns".to_string()).chain(argv.clone()))
                .unwrap();
        run(&cli, &argv)
    }

    #[test]
    fn classify_examples() {
        for (p, expect) in [
            ("3:010", "omega-hyp: yes; one-2dim: no; omega-2dim: no"),
            (
                "5:0111000101",
                "omega-hyp: yes; one-2dim: yes; omega-2dim: no",
            ),
            ("3:000", "omega-hyp: no; one-2dim: no; omega-2dim: no"),
        ] {
            let r = run_args(&["classify", p, "--mode", "monotone"]).unwrap();
            assert!(r.text.contains(expect), "{p}: {}", r.text);
        }
    }

    #[test]
    fn census_totals() {
        for (size, total) in [(1, 1), (2, 2), (3, 8)] {
            let r = run_args(&["census", &size.to_string()]).unwrap();
            let counts = r.records.last().unwrap();
            assert_eq!(counts.get("total"), Some(total.to_string().as_str()));
        }
        let r = run_args(&["census", "3"]).unwrap();
        assert_eq!(
            r.records.last().unwrap().get("divergent-irreducible"),
            Some("2")
        );
    }

    #[test]
    fn records_round_trip() {
        for args in [
            vec!["classify", "5:0111000101"],
            vec!["census", "3"],
            vec!["decompose", "4:000101"],
            vec!["join", "2:0", "3:101"],
            vec!["subpatterns", "3:010"],
            vec!["verify-lemmas", "--count", "5", "--max-size", "3"],
        ] {
            let r = run_args(&args).unwrap();
            let text = r.render(Format::Records);
            let parsed: Vec<Record> = parse_records(&text)
                .unwrap()
                .into_iter()
                .map(|(_, r)| r)
                .collect();
            let again: String = parsed.iter().map(|r| format!("{r}\n")).collect();
            assert_eq!(again, text, "{args:?}");
        }
    }

    #[test]
    fn decompose_and_join() {
        let r = run_args(&["decompose", "4:000101"]).unwrap();
        assert!(r.text.contains("4:000101 = 2:0 ⊎ 3:101"), "{}", r.text);
        let r = run_args(&["join", "2:0", "3:101"]).unwrap();
        assert!(r.text.contains("= 4:000101"));
    }

    #[test]
    fn parse_errors_surface_verbatim() {
        let err = run_args(&["classify", "3:01"]).unwrap_err();
        assert!(err.to_string().contains("expected 3 bits"), "{err}");
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_args(&[
            "verify-lemmas",
            "--count",
            "20",
            "--max-size",
            "3",
            "--seed",
            "7",
        ])
        .unwrap();
        let b = run_args(&[
            "verify-lemmas",
            "--count",
            "20",
            "--max-size",
            "3",
            "--seed",
            "7",
        ])
        .unwrap();
        assert_eq!(a.render(Format::Text), b.render(Format::Text));
        assert!(a.success);
    }

    #[test]
    fn planted_mutation_fails() {
        let r = run_args(&[
            "verify-lemmas",
            "--suite",
            "join-associativity",
            "--mutation",
            "flip-case",
        ])
        .unwrap();
        assert!(!r.success);
        assert_eq!(r.records[0].get("status"), Some("fail"));
    }

    #[test]
    fn catalogue_force_eval() {
        let r = run_args(&[
            "force-eval",
            "--catalogue",
            "omega-pair-zero",
            "--bound",
            "8",
            "--least",
        ])
        .unwrap();
        assert!(r.text.contains("least bound: 6"), "{}", r.text);
    }

    #[test]
    fn empty_oracle_simulates_to_zero() {
        for kind in [
            Construction::Dnc,
            Construction::Measure,
            Construction::Stable2dim,
        ] {
            let sim = cmd_simulate(kind, &OracleFile::default(), 10).unwrap();
            assert!(sim.report.all_passed());
            let f = FiniteColoring::parse_file(
                sim.coloring_file
                    .lines()
                    .take(10)
                    .collect::<Vec<_>>()
                    .join("\n")
                    .as_str(),
            )
            .unwrap();
            assert_eq!(f, FiniteColoring::constant(10, 0));
        }
    }
}
