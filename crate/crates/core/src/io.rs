//! Edge-list text format and the JSON form of minor models.
//!
//! Edge lists look like
//!
//! ```text
//! # optional comments
//! p 4 3
//! 0 1
//! 1 2
//! 2 3
//! ```
//!
//! with 0-indexed endpoints; blank lines and `#` comments are ignored.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::FormatError;
use crate::graph::{Graph, VertexId, VertexSet};
use crate::model::{MinorModel, PatternId};

pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let err = |line: usize, message: String| FormatError::EdgeList { line, message };
    let mut header: Option<(usize, usize, usize)> = None;
    let mut graph = Graph::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match header {
            None => {
                if fields.len() != 3 || fields[0] != "p" {
                    return Err(err(line_no, format!("expected header `p <v> <e>`, found {line:?}")));
                }
                let v = fields[1]
                    .parse::<usize>()
                    .map_err(|_| err(line_no, format!("bad vertex count {:?}", fields[1])))?;
                let e = fields[2]
                    .parse::<usize>()
                    .map_err(|_| err(line_no, format!("bad edge count {:?}", fields[2])))?;
                header = Some((v, e, line_no));
                graph = Graph::empty(v);
            }
            Some((v, _, _)) => {
                if fields.len() != 2 {
                    return Err(err(line_no, format!("expected `u v`, found {line:?}")));
                }
                let mut ends = [0 as VertexId; 2];
                for (slot, f) in ends.iter_mut().zip(&fields) {
                    let x = f
                        .parse::<VertexId>()
                        .map_err(|_| err(line_no, format!("bad vertex id {f:?}")))?;
                    if x as usize >= v {
                        return Err(err(line_no, format!("vertex {x} out of range 0..{v}")));
                    }
                    *slot = x;
                }
                graph
                    .insert_edge(ends[0], ends[1])
                    .map_err(|e| err(line_no, e.to_string()))?;
            }
        }
    }
    let Some((_, e, line_no)) = header else {
        return Err(err(text.lines().count().max(1), "missing header `p <v> <e>`".into()));
    };
    if graph.edge_count() != e {
        return Err(err(
            line_no,
            format!("header declares {e} edges but {} were listed", graph.edge_count()),
        ));
    }
    Ok(graph)
}

/// Writes `g` as an edge list. Graphs whose ids are not exactly `0..v` are
/// renumbered in ascending order and the original ids recorded as
/// `# id <new> <old>` comments.
pub fn to_edge_list(g: &Graph) -> String {
    let (compact, old) = g.compacted();
    let mut out = String::new();
    let renumbered = old.iter().enumerate().any(|(i, &v)| i as VertexId != v);
    if renumbered {
        for (i, v) in old.iter().enumerate() {
            let _ = writeln!(out, "# id {i} {v}");
        }
    }
    let _ = writeln!(out, "p {} {}", compact.vertex_count(), compact.edge_count());
    for (u, v) in compact.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Serialized minor model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelDocument {
    pub host_vertices: usize,
    pub branch_sets: BTreeMap<PatternId, Vec<VertexId>>,
    pub realized_edges: Vec<[PatternId; 2]>,
}

impl ModelDocument {
    /// Captures `model` together with the pattern edges it realizes in `host`.
    pub fn new(model: &MinorModel, host: &Graph) -> Result<Self, FormatError> {
        let realized = model
            .realized_edges(host)
            .map_err(|e| FormatError::Json(e.to_string()))?;
        Ok(Self {
            host_vertices: host.vertex_count(),
            branch_sets: model
                .branch_sets
                .iter()
                .map(|(&p, s)| (p, s.iter().copied().collect()))
                .collect(),
            realized_edges: realized.into_iter().map(|(a, b)| [a, b]).collect(),
        })
    }

    pub fn model(&self) -> MinorModel {
        MinorModel::new(
            self.branch_sets
                .iter()
                .map(|(&p, ids)| (p, ids.iter().copied().collect::<VertexSet>()))
                .collect(),
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_with_comments_and_blanks() {
        let g = parse_edge_list("# a path\n\np 3 2\n0 1 # first\n\n1 2\n").unwrap();
        assert_eq!(g, Graph::path(3));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("0 1\n", 1),
            ("p 3 1\n0 5\n", 2),
            ("p 3 2\n0 1\n# c\n1 1\n", 4),
            ("p 3 2\n0 1\n1 0\n", 3),
            ("p 3 2\n0 1\n", 1),
            ("p 3 1\n0 x\n", 2),
            ("p 3 1\n0 1 2\n", 2),
        ];
        for (text, line) in cases {
            match parse_edge_list(text) {
                Err(FormatError::EdgeList { line: got, .. }) => assert_eq!(got, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
        assert!(parse_edge_list("").is_err());
    }

    #[test]
    fn sparse_ids_are_renumbered_with_map() {
        let g = Graph::complete(4).without(&VertexSet::from([0, 2])).unwrap();
        let text = to_edge_list(&g);
        assert!(text.contains("# id 0 1\n# id 1 3\n"));
        assert_eq!(parse_edge_list(&text).unwrap(), Graph::complete(2));
    }

    #[test]
    fn model_document_shape() {
        let pet = Graph::petersen();
        let model = MinorModel::from_sets((0..5).map(|i| VertexSet::from([i, i + 5])));
        let doc = ModelDocument::new(&model, &pet).unwrap();
        let value: serde_json::Value = serde_json::from_str(&doc.to_json()).unwrap();
        assert_eq!(value["host_vertices"], 10);
        assert_eq!(value["branch_sets"]["3"], serde_json::json!([3, 8]));
        assert_eq!(value["realized_edges"].as_array().unwrap().len(), 10);
        assert_eq!(ModelDocument::from_json(&doc.to_json()).unwrap().model(), model);
    }

    proptest! {
        #[test]
        fn edge_list_round_trip(n in 1usize..12, bits in any::<u64>()) {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n as VertexId {
                for v in u + 1..n as VertexId {
                    if bits >> (k % 64) & 1 == 1 { edges.push((u, v)); }
                    k += 1;
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            prop_assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
        }
    }
}
