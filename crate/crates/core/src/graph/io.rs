//! Edge-list text and JSON graph formats.
//!
//! Text: one edge per line, `u v` or `u v w`, whitespace separated. Lines
//! whose first non-blank character is `#` are comments. A missing weight
//! means a 1 ohm resistor (conductance 1.0). `N` is the largest node id seen.
//!
//! JSON: `{"n": N, "edges": [[u, v, w], ...]}`, weight optional per edge.

use serde::{Deserialize, Serialize};

use super::{Builder, Graph, GraphError, NodeId};

pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut raw = Vec::new();
    let mut n = 0;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let malformed = || GraphError::MalformedLine {
            line: line_no,
            content: line.to_string(),
        };
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if !(2..=3).contains(&fields.len()) {
            return Err(malformed());
        }
        let node = |s: &str| -> Result<NodeId, GraphError> {
            match s.parse::<NodeId>() {
                Ok(x) if x > 0 => Ok(x),
                _ => Err(malformed()),
            }
        };
        let u = node(fields[0])?;
        let v = node(fields[1])?;
        let w = match fields.get(2) {
            Some(s) => s.parse::<f64>().map_err(|_| malformed())?,
            None => 1.0,
        };
        n = n.max(u).max(v);
        raw.push((line_no, u, v, w));
    }
    let mut builder = Builder::new(n)?;
    for (line_no, u, v, w) in raw {
        builder.push(u, v, w).map_err(|e| e.with_line(line_no))?;
    }
    builder.finish()
}

/// Wire form of the JSON graph format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<JsonEdge>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonEdge {
    Weighted(NodeId, NodeId, f64),
    Unit(NodeId, NodeId),
}

pub fn parse_json(text: &str) -> Result<Graph, GraphError> {
    let raw: GraphJson = serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
    Graph::try_from(raw)
}

/// Detects the format: JSON when the first non-blank character is `{`,
/// edge list otherwise.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_edge_list(text)
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = GraphError;

    fn try_from(raw: GraphJson) -> Result<Self, Self::Error> {
        Graph::new(
            raw.n,
            raw.edges.into_iter().map(|e| match e {
                JsonEdge::Weighted(u, v, w) => (u, v, w),
                JsonEdge::Unit(u, v) => (u, v, 1.0),
            }),
        )
    }
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g
                .edges()
                .iter()
                .map(|e| JsonEdge::Weighted(e.u, e.v, e.weight))
                .collect(),
        }
    }
}

impl Graph {
    /// Edge-list text; weights use the shortest representation that parses
    /// back to the same `f64`.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for e in self.edges() {
            out.push_str(&format!("{} {} {}\n", e.u, e.v, e.weight));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson::from(self)).expect("graph serializes")
    }
}
