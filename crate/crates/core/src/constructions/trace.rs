//! Construction traces, their record form, and trace verification.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::coloring::FiniteColoring;
use crate::error::{Error, Result};
use crate::pattern::{Color, Pattern};
use crate::records::{format_blocks, format_list, parse_blocks, parse_records, Record};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AttentionKind {
    Plain,
    First,
    Second,
}

impl AttentionKind {
    fn as_str(self) -> &'static str {
        match self {
            AttentionKind::Plain => "plain",
            AttentionKind::First => "first",
            AttentionKind::Second => "second",
        }
    }
}

/// An exact dyadic weight `num / 2^depth`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Weight {
    pub num: u128,
    pub depth: u32,
}

impl Weight {
    /// Whether the weight exceeds `1 - 1/(2ℓ)`.
    pub fn exceeds_threshold(self, size: usize) -> bool {
        let l = size as u128;
        self.num * 2 * l > (2 * l - 1) << self.depth
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / (self.depth as f64).exp2()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EventKind {
    /// A requirement starts participating. `life_cap` bounds attentions between injuries.
    Requirement {
        label: String,
        pattern: Option<Pattern>,
        life_cap: Option<usize>,
    },
    Attention {
        kind: AttentionKind,
        weight: Option<Weight>,
    },
    /// Replaces the requirement's restraint.
    Restrain(Vec<usize>),
    Release,
    Injure {
        by: usize,
    },
    Marker(usize),
    State(Vec<Vec<usize>>),
    Status(String),
    Commit {
        elements: Vec<usize>,
        color: Color,
    },
    Choose(Vec<usize>),
    /// The current family of oldest blocks; empty when undefined.
    Family(Vec<Vec<usize>>),
    /// The vertices `x < stage` with `f(x, stage) = 1`.
    Column(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Event {
    pub stage: usize,
    pub req: Option<usize>,
    pub kind: EventKind,
}

impl Event {
    pub fn to_record(&self) -> Record {
        let base = |kind: &str| {
            let r = Record::new(kind).with("stage", self.stage);
            match self.req {
                Some(req) => r.with("req", req),
                None => r,
            }
        };
        match &self.kind {
            EventKind::Requirement {
                label,
                pattern,
                life_cap,
            } => {
                let mut r = base("requirement").with("label", label);
                if let Some(p) = pattern {
                    r = r.with("pattern", p);
                }
                if let Some(c) = life_cap {
                    r = r.with("cap", c);
                }
                r
            }
            EventKind::Attention { kind, weight } => {
                let mut r = base("attention").with("kind", kind.as_str());
                if let Some(w) = weight {
                    r = r.with("weight", w.num).with("depth", w.depth);
                }
                r
            }
            EventKind::Restrain(set) => base("restrain").with("set", format_list(set)),
            EventKind::Release => base("release"),
            EventKind::Injure { by } => base("injure").with("by", by),
            EventKind::Marker(v) => base("marker").with("value", v),
            EventKind::State(blocks) => base("state").with("blocks", format_blocks(blocks)),
            EventKind::Status(s) => base("status").with("value", s),
            EventKind::Commit { elements, color } => base("commit")
                .with("set", format_list(elements))
                .with("color", color),
            EventKind::Choose(block) => base("choose").with("block", format_list(block)),
            EventKind::Family(blocks) => base("family").with("blocks", format_blocks(blocks)),
            EventKind::Column(ones) => base("column").with("ones", format_list(ones)),
        }
    }

    pub fn from_record(rec: &Record, line: usize) -> Result<Event> {
        let stage = rec.require_usize("stage", line)?;
        let req = rec.optional_usize("req", line)?;
        let bad = |reason: String| Error::Parse { line, reason };
        let kind = match rec.kind.as_str() {
            "requirement" => EventKind::Requirement {
                label: rec.require("label", line)?.to_string(),
                pattern: rec
                    .get("pattern")
                    .map(str::parse)
                    .transpose()
                    .map_err(|e: Error| bad(e.to_string()))?,
                life_cap: rec.optional_usize("cap", line)?,
            },
            "attention" => {
                let kind = match rec.require("kind", line)? {
                    "plain" => AttentionKind::Plain,
                    "first" => AttentionKind::First,
                    "second" => AttentionKind::Second,
                    other => return Err(bad(format!("unknown attention kind `{other}`"))),
                };
                let weight = match rec.get("weight") {
                    None => None,
                    Some(raw) => Some(Weight {
                        num: raw
                            .parse()
                            .map_err(|_| bad(format!("bad weight `{raw}`")))?,
                        depth: rec.require_usize("depth", line)? as u32,
                    }),
                };
                EventKind::Attention { kind, weight }
            }
            "restrain" => EventKind::Restrain(rec.require_list("set", line)?),
            "release" => EventKind::Release,
            "injure" => EventKind::Injure {
                by: rec.require_usize("by", line)?,
            },
            "marker" => EventKind::Marker(rec.require_usize("value", line)?),
            "state" => EventKind::State(parse_blocks(rec.require("blocks", line)?, line)?),
            "status" => EventKind::Status(rec.require("value", line)?.to_string()),
            "commit" => {
                let color = rec.require_usize("color", line)?;
                if color > 1 {
                    return Err(bad(format!("color {color} is not 0 or 1")));
                }
                EventKind::Commit {
                    elements: rec.require_list("set", line)?,
                    color: color as Color,
                }
            }
            "choose" => EventKind::Choose(rec.require_list("block", line)?),
            "family" => EventKind::Family(parse_blocks(rec.require("blocks", line)?, line)?),
            "column" => EventKind::Column(rec.require_list("ones", line)?),
            other => return Err(bad(format!("unknown event `{other}`"))),
        };
        if req.is_none() && !matches!(kind, EventKind::Column(_)) {
            return Err(bad(format!("`{}` event needs `req`", rec.kind)));
        }
        Ok(Event { stage, req, kind })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstructionTrace {
    pub construction: String,
    pub stages: usize,
    pub events: Vec<Event>,
}

impl ConstructionTrace {
    pub fn new(construction: &str, stages: usize) -> Self {
        ConstructionTrace {
            construction: construction.to_string(),
            stages,
            events: Vec::new(),
        }
    }

    pub(crate) fn push(&mut self, stage: usize, req: Option<usize>, kind: EventKind) {
        self.events.push(Event { stage, req, kind });
    }

    pub fn to_records(&self) -> String {
        let mut out = Record::new("trace")
            .with("construction", &self.construction)
            .with("stages", self.stages)
            .to_string();
        out.push('\n');
        for e in &self.events {
            out.push_str(&e.to_record().to_string());
            out.push('\n');
        }
        out
    }

    pub fn parse_records(text: &str) -> Result<Self> {
        let records = parse_records(text)?;
        let mut iter = records.iter();
        let (line, head) = iter.next().ok_or(Error::Parse {
            line: 1,
            reason: "empty trace".into(),
        })?;
        if head.kind != "trace" {
            return Err(Error::Parse {
                line: *line,
                reason: "trace must start with a `trace` record".into(),
            });
        }
        let mut trace = ConstructionTrace::new(
            head.require("construction", *line)?,
            head.require_usize("stages", *line)?,
        );
        for (line, rec) in iter {
            trace.events.push(Event::from_record(rec, *line)?);
        }
        Ok(trace)
    }

    /// Events of the requirement, in order.
    pub fn events_for(&self, req: usize) -> impl Iterator<Item = &Event> {
        self.events.iter().filter(move |e| e.req == Some(req))
    }

    /// The last `State` of each requirement.
    pub fn final_states(&self) -> BTreeMap<usize, Vec<Vec<usize>>> {
        let mut out = BTreeMap::new();
        for e in &self.events {
            if let (Some(req), EventKind::State(blocks)) = (e.req, &e.kind) {
                out.insert(req, blocks.clone());
            }
        }
        out
    }

    /// The last `Status` of each requirement.
    pub fn final_statuses(&self) -> BTreeMap<usize, String> {
        let mut out = BTreeMap::new();
        for e in &self.events {
            if let (Some(req), EventKind::Status(s)) = (e.req, &e.kind) {
                out.insert(req, s.clone());
            }
        }
        out
    }
}

pub const CHECKS: [&str; 7] = [
    "restraint-disjointness",
    "commitment-respected",
    "finite-actions",
    "state-realization",
    "state-measure",
    "injury-resets",
    "coloring-consistent",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub stage: Option<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TraceReport {
    pub checks: Vec<CheckOutcome>,
}

impl TraceReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_records(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let mut r = Record::new("check")
                .with("name", &c.name)
                .with("result", if c.passed { "pass" } else { "fail" });
            if let Some(s) = c.stage {
                r = r.with("stage", s);
            }
            if !c.passed {
                r = r.with("detail", &c.detail);
            }
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for TraceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            if c.passed {
                writeln!(f, "{}: pass", c.name)?;
            } else {
                writeln!(
                    f,
                    "{}: fail at stage {} ({})",
                    c.name,
                    c.stage.unwrap_or(0),
                    c.detail
                )?;
            }
        }
        Ok(())
    }
}

type Violation = Option<(usize, String)>;

/// Evaluates the named checks; `all` expands to every check.
pub fn verify_trace(
    trace: &ConstructionTrace,
    coloring: &FiniteColoring,
    checks: &[&str],
) -> Result<TraceReport> {
    let mut names: Vec<&str> = Vec::new();
    for &name in checks {
        if name == "all" {
            names.extend(CHECKS);
        } else if CHECKS.contains(&name) {
            names.push(name);
        } else {
            return Err(Error::UnknownCheck(name.to_string()));
        }
    }
    let mut seen = BTreeSet::new();
    names.retain(|n| seen.insert(*n));
    let checks = names
        .into_iter()
        .map(|name| {
            let violation = match name {
                "restraint-disjointness" => restraint_disjointness(trace),
                "commitment-respected" => commitment_respected(trace),
                "finite-actions" => finite_actions(trace),
                "state-realization" => state_realization(trace, coloring),
                "state-measure" => state_measure(trace),
                "injury-resets" => injury_resets(trace),
                _ => coloring_consistent(trace, coloring),
            };
            CheckOutcome {
                name: name.to_string(),
                passed: violation.is_none(),
                stage: violation.as_ref().map(|v| v.0),
                detail: violation.map(|v| v.1).unwrap_or_default(),
            }
        })
        .collect();
    Ok(TraceReport { checks })
}

/// Groups events by stage, preserving order.
fn by_stage(trace: &ConstructionTrace) -> Vec<(usize, Vec<&Event>)> {
    let mut out: Vec<(usize, Vec<&Event>)> = Vec::new();
    for e in &trace.events {
        match out.last_mut() {
            Some((s, group)) if *s == e.stage => group.push(e),
            _ => out.push((e.stage, vec![e])),
        }
    }
    out
}

fn restraint_disjointness(trace: &ConstructionTrace) -> Violation {
    let mut restraints: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (stage, group) in by_stage(trace) {
        for e in group {
            match (&e.kind, e.req) {
                (EventKind::Restrain(set), Some(r)) => {
                    restraints.insert(r, set.clone());
                }
                (EventKind::Release, Some(r)) => {
                    restraints.remove(&r);
                }
                _ => {}
            }
        }
        let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
        for (&r, set) in &restraints {
            for &x in set {
                if let Some(other) = owner.insert(x, r) {
                    return Some((
                        stage,
                        format!("{x} restrained by requirements {other} and {r}"),
                    ));
                }
            }
        }
    }
    None
}

fn commitment_respected(trace: &ConstructionTrace) -> Violation {
    let mut committed: BTreeMap<usize, Color> = BTreeMap::new();
    for e in &trace.events {
        match &e.kind {
            EventKind::Commit { elements, color } => {
                for &x in elements {
                    committed.insert(x, *color);
                }
            }
            EventKind::Column(ones) => {
                for (&x, &c) in committed.range(..e.stage) {
                    let actual = ones.binary_search(&x).is_ok() as Color;
                    if actual != c {
                        return Some((
                            e.stage,
                            format!("f({x},{}) = {actual} but {x} is committed to {c}", e.stage),
                        ));
                    }
                }
            }
            _ => {}
        }
    }
    None
}

fn finite_actions(trace: &ConstructionTrace) -> Violation {
    let mut caps: BTreeMap<usize, usize> = BTreeMap::new();
    let mut life: BTreeMap<usize, usize> = BTreeMap::new();
    // Stage-level change counts for requirements without a cap.
    let mut changes: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    let mut family_changes: BTreeMap<usize, usize> = BTreeMap::new();
    for e in &trace.events {
        let Some(r) = e.req else { continue };
        match &e.kind {
            EventKind::Requirement {
                life_cap: Some(c), ..
            } => {
                caps.insert(r, *c);
            }
            EventKind::Attention { .. } => {
                let n = life.entry(r).or_default();
                *n += 1;
                if let Some(&cap) = caps.get(&r) {
                    if *n > cap {
                        return Some((
                            e.stage,
                            format!("requirement {r} acted {n} times without injury (cap {cap})"),
                        ));
                    }
                }
            }
            EventKind::Injure { .. } => {
                life.insert(r, 0);
            }
            EventKind::Choose(_) | EventKind::Release => {
                if !caps.contains_key(&r) {
                    changes.entry(r).or_default().insert(e.stage);
                }
            }
            EventKind::Family(_) => *family_changes.entry(r).or_default() += 1,
            _ => {}
        }
    }
    // A choice moves only when the family moves or a higher choice moves.
    let mut higher = 0usize;
    for (&r, stages) in &changes {
        let budget = 1 + family_changes.get(&r).copied().unwrap_or(0) + higher;
        if stages.len() > budget {
            let stage = *stages.iter().nth(budget).unwrap_or(&0);
            return Some((
                stage,
                format!(
                    "requirement {r} changed its choice {} times (budget {budget})",
                    stages.len()
                ),
            ));
        }
        higher += stages.len();
    }
    None
}

fn state_realization(trace: &ConstructionTrace, f: &FiniteColoring) -> Violation {
    let patterns: BTreeMap<usize, Pattern> = trace
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
        .collect();
    for (r, blocks) in trace.final_states() {
        let Some(p) = patterns.get(&r) else { continue };
        if blocks.len() > p.size() {
            return Some((
                trace.stages,
                format!(
                    "requirement {r} has {} blocks for a pattern of size {}",
                    blocks.len(),
                    p.size()
                ),
            ));
        }
        for i in 0..blocks.len() {
            for j in i + 1..blocks.len() {
                for &x in &blocks[i] {
                    for &y in &blocks[j] {
                        if x >= y || y >= f.window() || f.get(x, y) != p.get(i, j) {
                            return Some((
                                trace.stages,
                                format!("requirement {r}: ({x},{y}) from blocks {i},{j} does not match {p}"),
                            ));
                        }
                    }
                }
            }
        }
    }
    None
}

fn state_measure(trace: &ConstructionTrace) -> Violation {
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    let mut weights: BTreeMap<usize, Vec<(usize, Weight)>> = BTreeMap::new();
    for e in &trace.events {
        let Some(r) = e.req else { continue };
        match &e.kind {
            EventKind::Requirement {
                pattern: Some(p), ..
            } => {
                sizes.insert(r, p.size());
            }
            EventKind::Attention {
                kind: AttentionKind::Plain,
                weight: Some(w),
            } => weights.entry(r).or_default().push((e.stage, *w)),
            EventKind::Injure { .. } => {
                weights.remove(&r);
            }
            _ => {}
        }
    }
    for (r, ws) in weights {
        let size = sizes.get(&r).copied().unwrap_or(1);
        if let Some((stage, w)) = ws.into_iter().find(|(_, w)| !w.exceeds_threshold(size)) {
            return Some((
                stage,
                format!(
                    "requirement {r} block weight {} is not above 1 - 1/{}",
                    w.as_f64(),
                    2 * size
                ),
            ));
        }
    }
    None
}

fn injury_resets(trace: &ConstructionTrace) -> Violation {
    let mut markers: BTreeMap<usize, usize> = BTreeMap::new();
    let mut states: BTreeMap<usize, usize> = BTreeMap::new();
    let mut statuses: BTreeMap<usize, String> = BTreeMap::new();
    let mut restrained: BTreeSet<usize> = BTreeSet::new();
    for (stage, group) in by_stage(trace) {
        let mut injured = Vec::new();
        for e in group {
            let Some(r) = e.req else { continue };
            match &e.kind {
                EventKind::Marker(v) => {
                    markers.insert(r, *v);
                }
                EventKind::State(blocks) => {
                    states.insert(r, blocks.len());
                }
                EventKind::Status(s) => {
                    statuses.insert(r, s.clone());
                }
                EventKind::Restrain(set) => {
                    if set.is_empty() {
                        restrained.remove(&r);
                    } else {
                        restrained.insert(r);
                    }
                }
                EventKind::Release => {
                    restrained.remove(&r);
                }
                EventKind::Injure { by } => injured.push((r, *by)),
                _ => {}
            }
        }
        for (r, by) in injured {
            if states.get(&r).copied().unwrap_or(0) != 0 {
                return Some((
                    stage,
                    format!("requirement {r} kept its state after injury"),
                ));
            }
            if statuses.get(&r).is_some_and(|s| s != "unsatisfied") {
                return Some((
                    stage,
                    format!("requirement {r} kept its status after injury"),
                ));
            }
            if restrained.contains(&r) {
                return Some((
                    stage,
                    format!("requirement {r} kept its restraint after injury"),
                ));
            }
            let (mine, theirs) = (
                markers.get(&r).copied().unwrap_or(0),
                markers.get(&by).copied().unwrap_or(0),
            );
            if mine < theirs {
                return Some((
                    stage,
                    format!("marker of requirement {r} ({mine}) is below its injurer's ({theirs})"),
                ));
            }
        }
    }
    None
}

fn coloring_consistent(trace: &ConstructionTrace, f: &FiniteColoring) -> Violation {
    let mut seen = BTreeSet::new();
    for e in &trace.events {
        if let EventKind::Column(ones) = &e.kind {
            let y = e.stage;
            if !seen.insert(y) {
                return Some((y, format!("column {y} assigned twice")));
            }
            if y >= f.window() {
                return Some((y, format!("column {y} lies outside the coloring")));
            }
            for x in 0..y {
                let expected = ones.binary_search(&x).is_ok() as Color;
                if f.get(x, y) != expected {
                    return Some((
                        y,
                        format!(
                            "f({x},{y}) = {} but the trace assigned {expected}",
                            f.get(x, y)
                        ),
                    ));
                }
            }
        }
    }
    if let Some(y) = (1..f.window()).find(|y| !seen.contains(y)) {
        return Some((y, format!("column {y} never assigned")));
    }
    None
}
