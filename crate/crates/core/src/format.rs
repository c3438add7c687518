//! Line-oriented text format for graphs, quadruples and flows.
//!
//! ```text
//! # comment
//! graph k4
//! vertices 4
//! edge 0 0 1 3          # id, endpoints, weight
//! circuit 0 1 2         # edge ids in cyclic order
//! flow 0 10             # Z2xZ2 value per edge id
//! iflow 0 0 1 -3        # id, tail, head, integer value
//! ```
//!
//! `edge` lines must precede `circuit`, `flow` and `iflow` lines that name them.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::flow::{Z2Z2Flow, Z2Z2};
use crate::graph::{Circuit, Edge, EdgeId, Multigraph, WeightMap};
use crate::integer::IntegerFlow;
use crate::search::Quadruple;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub name: String,
    pub graph: Multigraph,
    pub weights: WeightMap,
    pub circuit: Option<Circuit>,
    pub flow: Option<Z2Z2Flow>,
    pub integer_flow: Option<IntegerFlow>,
}

impl Document {
    pub fn from_quadruple(name: &str, q: &Quadruple) -> Self {
        Document {
            name: name.to_string(),
            graph: q.graph().clone(),
            weights: q.weights().clone(),
            circuit: Some(q.circuit().clone()),
            flow: Some(q.flow().clone()),
            integer_flow: None,
        }
    }

    pub fn into_quadruple(self) -> Result<Quadruple> {
        let circuit = self
            .circuit
            .ok_or_else(|| Error::InvalidQuadruple("no circuit line".into()))?;
        let flow = self
            .flow
            .ok_or_else(|| Error::InvalidQuadruple("no flow lines".into()))?;
        Quadruple::new(self.graph, flow, circuit, self.weights)
    }
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| perr(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| perr(line, format!("bad {what} '{tok}'")))
}

pub fn parse_document(text: &str) -> Result<Document> {
    let mut name = String::new();
    let mut vertices: Option<usize> = None;
    let mut edges: Vec<Edge> = Vec::new();
    let mut weights: Vec<u64> = Vec::new();
    let mut circuit: Option<(usize, Vec<EdgeId>)> = None;
    let mut flow: Vec<(usize, EdgeId, Z2Z2)> = Vec::new();
    let mut iflow: Vec<(usize, (EdgeId, usize, usize, i64))> = Vec::new();

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut toks = content.split_whitespace();
        let Some(directive) = toks.next() else { continue };
        match directive {
            "graph" => name = toks.collect::<Vec<_>>().join(" "),
            "vertices" => vertices = Some(field(toks.next(), line, "vertex count")?),
            "edge" => {
                let id = field(toks.next(), line, "edge id")?;
                let u = field(toks.next(), line, "endpoint")?;
                let v = field(toks.next(), line, "endpoint")?;
                let w: u64 = match toks.next() {
                    Some(t) => field(Some(t), line, "weight")?,
                    None => 1,
                };
                if w == 0 {
                    return Err(perr(line, "weights must be positive"));
                }
                edges.push(Edge { id, u, v });
                weights.push(w);
            }
            "circuit" => {
                let ids = toks
                    .map(|t| field(Some(t), line, "edge id"))
                    .collect::<Result<Vec<EdgeId>>>()?;
                if circuit.replace((line, ids)).is_some() {
                    return Err(perr(line, "second circuit line"));
                }
            }
            "flow" => {
                let id = field(toks.next(), line, "edge id")?;
                let v = field(toks.next(), line, "flow value")?;
                flow.push((line, id, v));
            }
            "iflow" => {
                let id = field(toks.next(), line, "edge id")?;
                let tail = field(toks.next(), line, "tail")?;
                let head = field(toks.next(), line, "head")?;
                let value = field(toks.next(), line, "value")?;
                iflow.push((line, (id, tail, head, value)));
            }
            other => return Err(perr(line, format!("unknown directive '{other}'"))),
        }
        if let Some(extra) = toks_remaining(directive, content) {
            return Err(perr(line, format!("unexpected token '{extra}'")));
        }
    }

    let n = vertices.ok_or_else(|| perr(0, "missing 'vertices' line"))?;
    let graph = Multigraph::new(n, edges)?;
    let weights = WeightMap::from_positions(weights)?;

    let circuit = match circuit {
        None => None,
        Some((line, ids)) => Some(
            Circuit::from_edge_ids(&graph, &ids).map_err(|e| perr(line, e.to_string()))?,
        ),
    };

    let flow = if flow.is_empty() {
        None
    } else {
        let mut f = Z2Z2Flow::zero(graph.edge_count());
        let mut seen = graph.empty_set();
        for (line, id, v) in flow {
            let pos = graph
                .position(id)
                .ok_or_else(|| perr(line, format!("unknown edge id {id}")))?;
            if seen.contains(pos) {
                return Err(perr(line, format!("edge {id} assigned twice")));
            }
            seen.insert(pos);
            f.set(pos, v);
        }
        if let Some(p) = seen.complement().first() {
            return Err(Error::MissingEdgeAssignment(graph.id(p)));
        }
        Some(f)
    };

    let integer_flow = if iflow.is_empty() {
        None
    } else {
        for (line, (id, ..)) in &iflow {
            if graph.position(*id).is_none() {
                return Err(perr(*line, format!("unknown edge id {id}")));
            }
        }
        let records: Vec<_> = iflow.into_iter().map(|(_, r)| r).collect();
        Some(IntegerFlow::from_records(&graph, &records)?)
    };

    Ok(Document {
        name,
        graph,
        weights,
        circuit,
        flow,
        integer_flow,
    })
}

/// Token after the fixed arity of a directive, if any.
fn toks_remaining(directive: &str, content: &str) -> Option<String> {
    let arity = match directive {
        "vertices" => 1,
        "edge" => 4,
        "flow" => 2,
        "iflow" => 4,
        _ => return None,
    };
    content.split_whitespace().nth(arity + 1).map(str::to_string)
}

pub fn write_document(doc: &Document) -> String {
    let mut out = String::new();
    let g = &doc.graph;
    if !doc.name.is_empty() {
        let _ = writeln!(out, "graph {}", doc.name);
    }
    let _ = writeln!(out, "vertices {}", g.vertex_count());
    for (pos, e) in g.edges().iter().enumerate() {
        let _ = writeln!(out, "edge {} {} {} {}", e.id, e.u, e.v, doc.weights.at(pos));
    }
    if let Some(c) = &doc.circuit {
        let ids: Vec<String> = c.edge_ids(g).iter().map(|i| i.to_string()).collect();
        let _ = writeln!(out, "circuit {}", ids.join(" "));
    }
    if let Some(f) = &doc.flow {
        for pos in 0..g.edge_count() {
            let _ = writeln!(out, "flow {} {}", g.id(pos), f.get(pos));
        }
    }
    if let Some(h) = &doc.integer_flow {
        for pos in 0..g.edge_count() {
            let _ = writeln!(
                out,
                "iflow {} {} {} {}",
                g.id(pos),
                h.tail[pos],
                h.head[pos],
                h.value[pos]
            );
        }
    }
    out
}

pub fn write_quadruple(name: &str, q: &Quadruple) -> String {
    write_document(&Document::from_quadruple(name, q))
}

pub fn read_document(path: &Path) -> Result<Document> {
    parse_document(&std::fs::read_to_string(path)?)
}

pub fn read_quadruple(path: &Path) -> Result<Quadruple> {
    read_document(path)?.into_quadruple()
}

/// Writes through a temporary sibling and renames, so readers never see a
/// partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::instance_a;

    #[test]
    fn round_trip() {
        let q = instance_a([1, 2, 3, 4, 5, 6]);
        let text = write_quadruple("a", &q);
        let back = parse_document(&text).unwrap().into_quadruple().unwrap();
        assert_eq!(back, q);
        assert_eq!(write_quadruple("a", &back), text);
    }

    #[test]
    fn comments_and_default_weight() {
        let doc = parse_document("# k2\nvertices 2\nedge 7 0 1 # unit\nedge 9 1 0 5\n").unwrap();
        assert_eq!(doc.weights.as_slice(), &[1, 5]);
        assert!(doc.circuit.is_none());
    }

    #[test]
    fn errors_name_the_line() {
        let err = parse_document("vertices 2\nedge 0 0 1\nbogus 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = parse_document("vertices 2\nedge 0 0 1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_document("vertices 2\nedge 0 0 1\nflow 3 10\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = parse_document("vertices 2\nedge 0 0 1 1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }
}
