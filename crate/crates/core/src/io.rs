//! Line-oriented text formats for instances and plans.
//!
//! Instance files hold one `key values...` entry per line:
//!
//! ```text
//! vertices 4
//! edge 0 1
//! edge 0 2
//! edge 0 3
//! trans-shipment
//! variant plain
//! kind pmt
//! start 1 2
//! target 2 1
//! ```
//!
//! The goal line depends on the kind: `target` (pmt), `destinations`
//! (unlabeled), `pebble` plus `goal` (motion) or `subtree` (gather).
//! Blank lines and lines starting with `#` are ignored.
//!
//! Plan files list one `u -> v` move per line followed by a `moves` count
//! and a `crossings` histogram with one entry per vertex.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::instance::{Instance, Problem, ProblemKind};
use crate::plan::{vertex_crossings, Configuration, Move, PebbleId, Plan, Variant};
use crate::tree::Tree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing field `{0}`")]
    MissingField(&'static str),
    #[error("{0}")]
    Invalid(String),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

impl ProblemKind {
    pub fn tag(self) -> &'static str {
        match self {
            ProblemKind::Pmt => "pmt",
            ProblemKind::Unlabeled => "unlabeled",
            ProblemKind::MotionPlanning => "motion",
            ProblemKind::GatherHoles => "gather",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Some(match tag {
            "pmt" => ProblemKind::Pmt,
            "unlabeled" => ProblemKind::Unlabeled,
            "motion" => ProblemKind::MotionPlanning,
            "gather" => ProblemKind::GatherHoles,
            _ => return None,
        })
    }
}

impl Variant {
    pub fn tag(self) -> &'static str {
        match self {
            Variant::Plain => "plain",
            Variant::TransShipment => "ts",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "plain" => Some(Variant::Plain),
            "ts" => Some(Variant::TransShipment),
            _ => None,
        }
    }
}

fn join(values: impl IntoIterator<Item = usize>) -> String {
    values
        .into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn entry(out: &mut String, key: &str, values: impl IntoIterator<Item = usize>) {
    let values = join(values);
    if values.is_empty() {
        let _ = writeln!(out, "{key}");
    } else {
        let _ = writeln!(out, "{key} {values}");
    }
}

pub fn serialize_instance(instance: &Instance) -> String {
    let tree = &instance.tree;
    let mut out = String::new();
    entry(&mut out, "vertices", [tree.vertex_count()]);
    for &(u, v) in tree.edges() {
        entry(&mut out, "edge", [u, v]);
    }
    entry(&mut out, "trans-shipment", tree.trans_shipment_vertices());
    let _ = writeln!(out, "variant {}", instance.variant.tag());
    let _ = writeln!(out, "kind {}", instance.problem.kind().tag());
    entry(
        &mut out,
        "start",
        instance.start.positions().iter().copied(),
    );
    match &instance.problem {
        Problem::Pmt { target } => entry(&mut out, "target", target.positions().iter().copied()),
        Problem::Unlabeled { destinations } => {
            entry(&mut out, "destinations", destinations.iter().copied())
        }
        Problem::MotionPlanning { pebble, target } => {
            entry(&mut out, "pebble", [pebble.0]);
            entry(&mut out, "goal", [*target]);
        }
        Problem::GatherHoles { subtree } => entry(&mut out, "subtree", subtree.iter().copied()),
    }
    out
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut fields: HashMap<&str, (usize, Vec<&str>)> = HashMap::new();
    let mut edges = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let mut words = content.split_whitespace();
        let key = words.next().unwrap();
        let values: Vec<&str> = words.collect();
        match key {
            "edge" => {
                let [u, v] = values[..] else {
                    return Err(syntax(line, "an edge needs exactly two endpoints"));
                };
                edges.push((number(line, u)?, number(line, v)?));
            }
            "vertices" | "trans-shipment" | "variant" | "kind" | "start" | "target"
            | "destinations" | "pebble" | "goal" | "subtree" => {
                if fields.insert(key, (line, values)).is_some() {
                    return Err(syntax(line, format!("duplicate field `{key}`")));
                }
            }
            other => return Err(syntax(line, format!("unknown field `{other}`"))),
        }
    }

    let get = |key: &'static str| fields.get(key).ok_or(ParseError::MissingField(key));
    let single = |key: &'static str| -> Result<(usize, &str), ParseError> {
        let (line, values) = get(key)?;
        match values[..] {
            [value] => Ok((*line, value)),
            _ => Err(syntax(*line, format!("`{key}` takes exactly one value"))),
        }
    };
    let list = |key: &'static str| -> Result<(usize, Vec<usize>), ParseError> {
        let (line, values) = get(key)?;
        let parsed = values
            .iter()
            .map(|v| number(*line, v))
            .collect::<Result<_, _>>()?;
        Ok((*line, parsed))
    };

    let (line, n) = single("vertices")?;
    let n = number(line, n)?;
    let trans_shipment = match fields.contains_key("trans-shipment") {
        true => list("trans-shipment")?.1,
        false => Vec::new(),
    };
    let tree = Tree::with_trans_shipment(n, &edges, &trans_shipment)
        .map_err(|e| ParseError::Invalid(e.to_string()))?;
    let (line, variant) = single("variant")?;
    let variant = Variant::from_tag(variant)
        .ok_or_else(|| syntax(line, format!("unknown variant `{variant}`")))?;
    let (line, kind) = single("kind")?;
    let kind = ProblemKind::from_tag(kind)
        .ok_or_else(|| syntax(line, format!("unknown kind `{kind}`")))?;
    let configuration = |key: &'static str| -> Result<Configuration, ParseError> {
        let (line, positions) = list(key)?;
        Configuration::new(n, positions).map_err(|e| syntax(line, e.to_string()))
    };
    let start = configuration("start")?;
    let problem = match kind {
        ProblemKind::Pmt => Problem::Pmt {
            target: configuration("target")?,
        },
        ProblemKind::Unlabeled => Problem::Unlabeled {
            destinations: list("destinations")?.1,
        },
        ProblemKind::MotionPlanning => {
            let (line, pebble) = single("pebble")?;
            let pebble = PebbleId(number(line, pebble)?);
            let (line, goal) = single("goal")?;
            Problem::MotionPlanning {
                pebble,
                target: number(line, goal)?,
            }
        }
        ProblemKind::GatherHoles => Problem::GatherHoles {
            subtree: list("subtree")?.1,
        },
    };
    let instance = Instance::new(tree, variant, start, problem);
    instance
        .validate()
        .map_err(|e| ParseError::Invalid(e.to_string()))?;
    Ok(instance)
}

fn number(line: usize, word: &str) -> Result<usize, ParseError> {
    word.parse().map_err(|_| {
        syntax(
            line,
            format!("expected a non-negative integer, found `{word}`"),
        )
    })
}

/// A plan together with its per-vertex arrival histogram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanFile {
    pub plan: Plan,
    pub crossings: Vec<usize>,
}

impl PlanFile {
    pub fn new(plan: Plan, vertex_count: usize) -> Self {
        let crossings = vertex_crossings(&plan, vertex_count);
        Self { plan, crossings }
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for mv in &self.plan {
            let _ = writeln!(out, "{mv}");
        }
        entry(&mut out, "moves", [self.plan.len()]);
        entry(&mut out, "crossings", self.crossings.iter().copied());
        out
    }

    /// Parses a plan file; the `moves` trailer must match the move lines.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut moves = Vec::new();
        let mut count = None;
        let mut crossings = None;
        for (index, raw) in text.lines().enumerate() {
            let line = index + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            if let Some((from, to)) = content.split_once("->") {
                if count.is_some() {
                    return Err(syntax(line, "move after the trailer"));
                }
                moves.push(Move::new(
                    number(line, from.trim())?,
                    number(line, to.trim())?,
                ));
                continue;
            }
            let mut words = content.split_whitespace();
            match words.next() {
                Some("moves") => {
                    let value = words
                        .next()
                        .ok_or_else(|| syntax(line, "missing move count"))?;
                    let value = number(line, value)?;
                    if value != moves.len() {
                        return Err(syntax(
                            line,
                            format!("trailer counts {value} moves, file lists {}", moves.len()),
                        ));
                    }
                    count = Some(value);
                }
                Some("crossings") => {
                    let values = words
                        .map(|w| number(line, w))
                        .collect::<Result<Vec<_>, _>>()?;
                    crossings = Some(values);
                }
                _ => {
                    return Err(syntax(
                        line,
                        format!("expected `u -> v`, found `{content}`"),
                    ))
                }
            }
        }
        count.ok_or(ParseError::MissingField("moves"))?;
        let crossings = crossings.ok_or(ParseError::MissingField("crossings"))?;
        Ok(Self {
            plan: Plan::from(moves),
            crossings,
        })
    }
}
