//! Signed edge-list files and the JSON report schema.
//!
//! Edge-list format: an `n m` header, then `m` lines `u v s` with `s` one
//! of `+`/`-`. Vertices are 0-indexed. Blank lines and lines starting with
//! `#` are ignored. Output lists each edge once with `u < v`, sorted.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::enumeration::EnumerationReport;
use crate::inertia::{adjacency_matrix, determinant_exact, float_crosscheck, inertia, DEFAULT_TOLERANCE};
use crate::invariants::{balance, girth, Balance};
use crate::predicates::Classification;
use crate::sgraph::{InertiaTriple, Sign, SignedGraph};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

pub fn parse_edge_list(text: &str) -> Result<SignedGraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| err(0, "missing 'n m' header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [n, m] = fields[..] else {
        return Err(err(hline, format!("expected 'n m', got '{header}'")));
    };
    let n: usize = n.parse().map_err(|_| err(hline, format!("bad vertex count '{n}'")))?;
    let m: usize = m.parse().map_err(|_| err(hline, format!("bad edge count '{m}'")))?;
    let mut triples = Vec::with_capacity(m);
    let mut seen = BTreeSet::new();
    let mut last_line = hline;
    for (ln, l) in lines {
        last_line = ln;
        let f: Vec<&str> = l.split_whitespace().collect();
        let [u, v, s] = f[..] else {
            return Err(err(ln, format!("expected 'u v s', got '{l}'")));
        };
        let u: usize = u.parse().map_err(|_| err(ln, format!("bad vertex '{u}'")))?;
        let v: usize = v.parse().map_err(|_| err(ln, format!("bad vertex '{v}'")))?;
        let sign = match s {
            "+" => Sign::Pos,
            "-" => Sign::Neg,
            _ => return Err(err(ln, format!("sign must be '+' or '-', got '{s}'"))),
        };
        if u == v {
            return Err(err(ln, format!("self-loop at vertex {u}")));
        }
        if u >= n || v >= n {
            return Err(err(ln, format!("vertex out of range (n = {n})")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(err(ln, format!("duplicate edge {u} {v}")));
        }
        triples.push((u, v, sign));
    }
    if triples.len() != m {
        return Err(err(
            last_line,
            format!("header declares {m} edges, found {}", triples.len()),
        ));
    }
    SignedGraph::from_edge_list(n, triples).map_err(|e| err(last_line, e.to_string()))
}

pub fn serialize_edge_list(g: &SignedGraph) -> String {
    let mut edges: Vec<(usize, usize, Sign)> = g
        .triples()
        .into_iter()
        .map(|(u, v, s)| (u.min(v), u.max(v), s))
        .collect();
    edges.sort();
    let mut out = format!("{} {}\n", g.order(), edges.len());
    for (u, v, s) in edges {
        let _ = writeln!(out, "{u} {v} {}", s.symbol());
    }
    out
}

/// SHA-256 of the canonical edge-list serialization, hex encoded.
pub fn graph_digest(g: &SignedGraph) -> String {
    let hash = Sha256::digest(serialize_edge_list(g).as_bytes());
    hash.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalanceBlock {
    pub balanced: bool,
    /// Vertices switched to make every edge positive (balanced case).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub switching_negative_set: Option<Vec<usize>>,
    /// A negative cycle (unbalanced case).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub negative_cycle: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantBlock {
    pub n: usize,
    pub m: usize,
    pub girth: Option<usize>,
    pub balance: BalanceBlock,
    pub inertia: InertiaTriple,
    /// Exact determinant of the adjacency matrix, as a rational string.
    pub det: String,
    pub det_sign: i8,
    /// Whether a floating-point eigensolver agrees with the exact inertia.
    pub float_agrees: bool,
}

pub fn invariant_block(g: &SignedGraph) -> InvariantBlock {
    let (bal, switching_negative_set, negative_cycle) = match balance(g) {
        Balance::Balanced(theta) => (true, Some(theta.negative_set()), None),
        Balance::Unbalanced(c) => (false, None, Some(c.vertices)),
    };
    let det = determinant_exact(&adjacency_matrix(g));
    let det_sign = if det.is_zero() {
        0
    } else if det.is_negative() {
        -1
    } else {
        1
    };
    let exact = inertia(g);
    InvariantBlock {
        n: g.order(),
        m: g.size(),
        girth: girth(g),
        balance: BalanceBlock {
            balanced: bal,
            switching_negative_set,
            negative_cycle,
        },
        inertia: exact,
        det: det.to_string(),
        det_sign,
        float_agrees: float_crosscheck(g, DEFAULT_TOLERANCE).is_ok_and(|f| f == exact),
    }
}

/// Nondeterministic fields, omitted with `--no-meta`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub unix_time: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u128>,
}

impl Meta {
    pub fn now(elapsed_ms: Option<u128>) -> Self {
        let unix_time = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        Meta { unix_time, elapsed_ms }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub input_digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub invariants: Option<InvariantBlock>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub classification: Vec<Classification>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub enumeration: Option<EnumerationReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub meta: Option<Meta>,
}

impl Report {
    pub fn new() -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION.to_string(),
            input_digest: None,
            invariants: None,
            classification: Vec::new(),
            enumeration: None,
            meta: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }
}

impl Default for Report {
    fn default() -> Self {
        Self::new()
    }
}
