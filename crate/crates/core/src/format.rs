//! Text formats: constraint files, DAG files and Graphviz DOT.
//!
//! Constraint files hold one constraint `a b < x y` per line, meaning
//! `(ab, xy) ∈ R`; `a a < x y` writes the singleton `aa`. DAG files hold one
//! arc `u -> v` per line, from parent to child. In both, `#` starts a comment
//! and a `leaves: a b ...` line declares leaves.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::dag::{Dag, VertexId};
use crate::error::Error;
use crate::leaves::{validate_leaf_name, LeafSet, Pair, ROOT_LABEL};
use crate::relation::Relation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("{0}")]
    Input(#[from] Error),
}

impl ParseError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        ParseError::Line {
            line,
            message: message.into(),
        }
    }

    pub fn line(&self) -> Option<usize> {
        match self {
            ParseError::Line { line, .. } => Some(*line),
            ParseError::Input(_) => None,
        }
    }
}

const HEADER: &str = "leaves:";

/// Strips a comment and surrounding whitespace.
fn content(raw: &str) -> &str {
    raw.split('#').next().unwrap_or("").trim()
}

fn header_names(rest: &str, line: usize) -> Result<Vec<(String, usize)>, ParseError> {
    rest.split_whitespace()
        .map(|name| {
            validate_leaf_name(name).map_err(|e| ParseError::at(line, e.to_string()))?;
            Ok((name.to_string(), line))
        })
        .collect()
}

/// A constraint line before leaf ids are assigned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawConstraint {
    pub line: usize,
    pub lower: [String; 2],
    pub upper: [String; 2],
}

/// A parsed constraint file whose leaf set is not fixed yet.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstraintFile {
    /// Declared leaves with the line declaring them.
    pub declared: Vec<(String, usize)>,
    pub constraints: Vec<RawConstraint>,
}

impl ConstraintFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut file = ConstraintFile::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = content(raw);
            if body.is_empty() {
                continue;
            }
            if let Some(rest) = body.strip_prefix(HEADER) {
                file.declared.extend(header_names(rest, line)?);
                continue;
            }
            let tokens: Vec<&str> = body.split_whitespace().collect();
            let [a, b, "<", x, y] = tokens.as_slice() else {
                return Err(ParseError::at(
                    line,
                    format!("expected `a b < x y`, found `{body}`"),
                ));
            };
            for name in [a, b, x, y] {
                validate_leaf_name(name).map_err(|e| ParseError::at(line, e.to_string()))?;
            }
            file.constraints.push(RawConstraint {
                line,
                lower: [a.to_string(), b.to_string()],
                upper: [x.to_string(), y.to_string()],
            });
        }
        Ok(file)
    }

    /// Declared leaves together with every leaf named by a constraint.
    pub fn names(&self) -> BTreeSet<&str> {
        self.declared
            .iter()
            .map(|(n, _)| n.as_str())
            .chain(
                self.constraints
                    .iter()
                    .flat_map(|c| c.lower.iter().chain(&c.upper).map(String::as_str)),
            )
            .collect()
    }

    /// The leaf set implied by this file alone.
    pub fn leaf_set(&self) -> Result<Arc<LeafSet>, ParseError> {
        Ok(Arc::new(LeafSet::from_names_dedup(self.names())?))
    }

    /// Builds the relation over `leaves`, which must contain every leaf of the file.
    pub fn to_relation(&self, leaves: Arc<LeafSet>) -> Result<Relation, ParseError> {
        for (name, line) in &self.declared {
            leaves
                .id(name)
                .map_err(|e| ParseError::at(*line, e.to_string()))?;
        }
        let mut r = Relation::empty(leaves.clone());
        for c in &self.constraints {
            let pair = |[a, b]: &[String; 2]| {
                leaves
                    .pair(a, b)
                    .map_err(|e| ParseError::at(c.line, e.to_string()))
            };
            r.insert(pair(&c.lower)?, pair(&c.upper)?);
        }
        Ok(r)
    }

    pub fn into_relation(self) -> Result<Relation, ParseError> {
        let leaves = self.leaf_set()?;
        self.to_relation(leaves)
    }
}

/// Parses a constraint file over the leaves it names.
pub fn parse_relation(text: &str) -> Result<Relation, ParseError> {
    ConstraintFile::parse(text)?.into_relation()
}

fn write_pair(out: &mut String, leaves: &LeafSet, p: Pair) {
    out.push_str(leaves.name(p.lo()));
    out.push(' ');
    out.push_str(leaves.name(p.hi()));
}

/// Writes a relation in pair-id order. A `leaves:` header is written only when
/// some leaf occurs in no constraint.
pub fn write_relation(r: &Relation) -> String {
    let leaves = r.leaf_set();
    let mut out = String::new();
    let mentioned: HashSet<_> = r
        .support()
        .into_iter()
        .flat_map(|p| [p.lo(), p.hi()])
        .collect();
    if mentioned.len() < leaves.len() {
        out.push_str(HEADER);
        for name in leaves.names() {
            out.push(' ');
            out.push_str(name);
        }
        out.push('\n');
    }
    for (p, q) in r.iter() {
        write_pair(&mut out, leaves, p);
        out.push_str(" < ");
        write_pair(&mut out, leaves, q);
        out.push('\n');
    }
    out
}

fn valid_label(label: &str) -> bool {
    !label.is_empty() && label != "->" && !label.contains(['#', '"', '\\'])
}

/// Parses a DAG file. Without a `leaves:` header the leaves are the sinks.
pub fn parse_dag(text: &str) -> Result<Dag, ParseError> {
    let mut declared: Vec<(String, usize)> = Vec::new();
    let mut raw_arcs: Vec<(&str, &str)> = Vec::new();
    let mut seen = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = content(raw);
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body.strip_prefix(HEADER) {
            declared.extend(header_names(rest, line)?);
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let [u, "->", w] = tokens.as_slice() else {
            return Err(ParseError::at(
                line,
                format!("expected `u -> v`, found `{body}`"),
            ));
        };
        for label in [u, w] {
            if !valid_label(label) {
                return Err(ParseError::at(
                    line,
                    format!("invalid vertex label `{label}`"),
                ));
            }
        }
        if u == w {
            return Err(ParseError::at(line, format!("self-arc at `{u}`")));
        }
        if !seen.insert((*u, *w)) {
            return Err(ParseError::at(line, format!("duplicate arc `{u} -> {w}`")));
        }
        raw_arcs.push((u, w));
    }
    // ids: declared leaves, then parents by first appearance, then the rest,
    // so that writing a parsed file reproduces its arc order
    let mut labels: Vec<String> = Vec::new();
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    let mut vertex = |name: &str| -> usize {
        *index.entry(name.to_string()).or_insert_with(|| {
            labels.push(name.to_string());
            labels.len() - 1
        })
    };
    for (name, _) in &declared {
        vertex(name);
    }
    for &(u, _) in &raw_arcs {
        vertex(u);
    }
    let arcs: Vec<(usize, usize)> = raw_arcs
        .iter()
        .map(|&(u, w)| (vertex(u), vertex(w)))
        .collect();
    if labels.is_empty() {
        return Err(Error::EmptyLeafSet.into());
    }
    let leaves = if declared.is_empty() {
        let mut has_child = vec![false; labels.len()];
        for &(u, _) in &arcs {
            has_child[u] = true;
        }
        let sinks = labels
            .iter()
            .zip(&has_child)
            .filter(|(_, &c)| !c)
            .map(|(l, _)| l.as_str());
        LeafSet::from_names_dedup(sinks)?
    } else {
        LeafSet::from_names_dedup(declared.iter().map(|(n, _)| n.as_str()))?
    };
    Ok(Dag::new(Arc::new(leaves), labels, &arcs)?)
}

/// Writes a DAG: a `leaves:` header, then arcs ordered by parent and child vertex id.
pub fn write_dag(dag: &Dag) -> String {
    let mut out = String::from(HEADER);
    for name in dag.leaf_set().names() {
        out.push(' ');
        out.push_str(name);
    }
    out.push('\n');
    for (u, w) in dag.arcs() {
        let _ = writeln!(out, "{} -> {}", dag.label(u), dag.label(w));
    }
    out
}

fn dot_quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Graphviz rendering. Leaves are boxes, the added root is a point and every
/// other vertex is an ellipse; `tooltip` supplies optional per-vertex tooltips.
pub fn write_dot(dag: &Dag, tooltip: impl Fn(VertexId) -> Option<String>) -> String {
    let mut out = String::from("digraph G {\n");
    for v in dag.vertices() {
        let label = dag.label(v);
        let id = dot_quote(label);
        let _ = if dag.vertex_leaf(v).is_some() {
            write!(out, "  {id} [shape=box, label={id}")
        } else if label == ROOT_LABEL {
            write!(out, "  {id} [shape=point, label=\"\"")
        } else {
            write!(out, "  {id} [shape=ellipse, label={id}")
        };
        if let Some(tip) = tooltip(v) {
            let _ = write!(out, ", tooltip={}", dot_quote(&tip));
        }
        out.push_str("];\n");
    }
    for (u, w) in dag.arcs() {
        let _ = writeln!(
            out,
            "  {} -> {};",
            dot_quote(dag.label(u)),
            dot_quote(dag.label(w))
        );
    }
    out.push_str("}\n");
    out
}
