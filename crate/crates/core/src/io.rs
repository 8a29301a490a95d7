//! JSON formats for hypergraphs, inequalities, contraction maps and ray sets.
//!
//! Hypergraph:
//! `{"n": 2, "vertices": ["A","B","O","s"], "boundary": {"A": "A", "B": "B", "O": "O"},
//!   "edges": [{"v": ["A","s"], "w": "1/2"}]}`.
//! Weights are strings (`"3"`, `"1/2"`, `"0.25"`) or JSON integers. A party
//! may list several boundary vertices; they are merged into the first one.
//!
//! Inequality: `{"n": 3, "q": [...]}` or `{"n": 3, "expr": "S(AB)+S(BC) >= S(B)+S(ABC)"}`.
//!
//! Contraction map: `{"L": 5, "Rp": 5, "f10": [0, 1, 2, ...]}`.

use std::collections::{BTreeMap, HashMap};

use serde::Deserialize;
use serde_json::{json, Value};

use crate::catalog::RayEntry;
use crate::contraction::{decode_f10, encode_f10, ContractionMap};
use crate::error::{Error, Result};
use crate::hypergraph::{EntropyVector, Hyperedge, Hypergraph};
use crate::inequality::{Inequality, QVector};
use crate::parser::parse_inequality;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::subsystem::{party_label, party_labels};

#[derive(Deserialize)]
#[serde(untagged)]
enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    fn rational(&self) -> Result<Rational> {
        match self {
            Number::Int(v) => Ok(Rational::from_integer((*v).into())),
            Number::Text(s) => parse_rational(s),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One(String),
    Many(Vec<String>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    v: Vec<String>,
    #[serde(default)]
    w: Option<Number>,
}

#[derive(Deserialize)]
struct RawGraph {
    n: usize,
    #[serde(default)]
    vertices: Option<Vec<String>>,
    boundary: BTreeMap<String, OneOrMany>,
    edges: Vec<RawEdge>,
}

/// A loaded hypergraph plus the boundary vertices merged away per party.
#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: Hypergraph,
    /// `(party label, kept vertex, merged vertices)` for every party that
    /// listed more than one boundary vertex.
    pub merged: Vec<(String, String, Vec<String>)>,
}

pub fn read_graph(text: &str) -> Result<LoadedGraph> {
    let raw: RawGraph = serde_json::from_str(text)?;
    graph_from_raw(raw)
}

pub fn parse_graph(text: &str) -> Result<Hypergraph> {
    read_graph(text).map(|l| l.graph)
}

fn graph_from_raw(raw: RawGraph) -> Result<LoadedGraph> {
    let n = raw.n;
    crate::subsystem::check_party_count(n)?;
    let labels = party_labels(n);
    for key in raw.boundary.keys() {
        if !labels.contains(key) {
            return Err(Error::input(format!("unknown party `{key}` in boundary")));
        }
    }
    let mut names: Vec<String> = match &raw.vertices {
        Some(v) => v.clone(),
        None => {
            // parties first, then names in order of appearance
            let mut v = Vec::new();
            for label in &labels {
                if let Some(b) = raw.boundary.get(label) {
                    match b {
                        OneOrMany::One(s) => v.push(s.clone()),
                        OneOrMany::Many(list) => v.extend(list.iter().cloned()),
                    }
                }
            }
            for e in &raw.edges {
                v.extend(e.v.iter().cloned());
            }
            let mut seen = std::collections::HashSet::new();
            v.retain(|x| seen.insert(x.clone()));
            v
        }
    };
    let mut index: HashMap<String, usize> = HashMap::new();
    for (i, name) in names.iter().enumerate() {
        if index.insert(name.clone(), i).is_some() {
            return Err(Error::input(format!("duplicate vertex `{name}`")));
        }
    }
    let lookup = |name: &str, index: &HashMap<String, usize>| {
        index.get(name).copied().ok_or_else(|| Error::input(format!("unknown vertex `{name}`")))
    };

    // representative vertex for every original vertex
    let mut rep: Vec<usize> = (0..names.len()).collect();
    let mut boundary = Vec::with_capacity(n + 1);
    let mut merged = Vec::new();
    for label in &labels {
        let list = match raw.boundary.get(label) {
            Some(OneOrMany::One(s)) => vec![s.clone()],
            Some(OneOrMany::Many(list)) if !list.is_empty() => list.clone(),
            _ => return Err(Error::input(format!("party `{label}` has no boundary vertex"))),
        };
        let keep = lookup(&list[0], &index)?;
        for other in &list[1..] {
            rep[lookup(other, &index)?] = keep;
        }
        if list.len() > 1 {
            merged.push((label.clone(), list[0].clone(), list[1..].to_vec()));
        }
        boundary.push(keep);
    }

    let mut edges = Vec::with_capacity(raw.edges.len());
    for e in &raw.edges {
        let mut members = Vec::with_capacity(e.v.len());
        for name in &e.v {
            members.push(rep[lookup(name, &index)?]);
        }
        members.sort_unstable();
        members.dedup();
        let weight = match &e.w {
            Some(w) => w.rational()?,
            None => Rational::from_integer(1.into()),
        };
        if members.len() < 2 {
            if merged.is_empty() || e.v.len() < 2 {
                return Err(Error::input(format!("edge {:?} needs at least two distinct vertices", e.v)));
            }
            // collapsed inside one merged party: never cut
            continue;
        }
        edges.push(Hyperedge { members, weight });
    }

    // drop merged-away vertices and renumber
    let keep: Vec<bool> = (0..names.len()).map(|i| rep[i] == i).collect();
    let mut renumber = vec![usize::MAX; names.len()];
    let mut next = 0;
    for i in 0..names.len() {
        if keep[i] {
            renumber[i] = next;
            next += 1;
        }
    }
    let mut i = 0;
    names.retain(|_| {
        i += 1;
        keep[i - 1]
    });
    let boundary = boundary.into_iter().map(|b| renumber[b]).collect();
    for e in &mut edges {
        for m in &mut e.members {
            *m = renumber[*m];
        }
    }
    let graph = Hypergraph::new(n, names, boundary, edges)?;
    Ok(LoadedGraph { graph, merged })
}

pub fn graph_to_json(g: &Hypergraph) -> Value {
    let n = g.n();
    let boundary: serde_json::Map<String, Value> = (0..=n)
        .map(|p| (party_label(n, p), Value::String(g.vertices()[g.boundary()[p]].clone())))
        .collect();
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|e| {
            let v: Vec<&str> = e.members.iter().map(|&m| g.vertices()[m].as_str()).collect();
            json!({"v": v, "w": format_rational(&e.weight)})
        })
        .collect();
    json!({"n": n, "vertices": g.vertices(), "boundary": boundary, "edges": edges})
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInequality {
    n: usize,
    #[serde(default)]
    q: Option<Vec<Number>>,
    #[serde(default)]
    expr: Option<String>,
}

pub fn parse_inequality_file(text: &str) -> Result<Inequality> {
    let raw: RawInequality = serde_json::from_str(text)?;
    match (raw.q, raw.expr) {
        (Some(q), None) => {
            let entries = q.iter().map(Number::rational).collect::<Result<Vec<_>>>()?;
            Inequality::from_q(&QVector::new(raw.n, entries)?)
        }
        (None, Some(expr)) => parse_inequality(&expr, raw.n),
        _ => Err(Error::input("inequality file needs exactly one of `q` or `expr`")),
    }
}

pub fn inequality_to_json(ineq: &Inequality) -> Value {
    let q: Vec<String> = ineq.to_q().entries().iter().map(format_rational).collect();
    json!({"n": ineq.n(), "q": q, "expr": ineq.to_string()})
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    #[serde(rename = "L")]
    l: usize,
    #[serde(rename = "Rp")]
    rp: usize,
    f10: Vec<u64>,
}

pub fn parse_map(text: &str) -> Result<ContractionMap> {
    let raw: RawMap = serde_json::from_str(text)?;
    decode_f10(&raw.f10, raw.l, raw.rp)
}

pub fn map_to_json(map: &ContractionMap) -> Value {
    json!({"L": map.l(), "Rp": map.rp(), "f10": encode_f10(map)})
}

/// `{"n", "subsystems": [...], "values": [...]}` in canonical order.
pub fn vector_to_json(s: &EntropyVector) -> Value {
    let (labels, values): (Vec<String>, Vec<String>) =
        s.labelled().into_iter().map(|(label, v)| (label, format_rational(&v))).unzip();
    json!({"n": s.n(), "subsystems": labels, "values": values})
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRay {
    name: String,
    graph: Value,
    #[serde(default)]
    expected: Option<Vec<Number>>,
    #[serde(default)]
    provenance: Option<String>,
}

/// Reads a JSON array of `{"name", "graph", "expected"?, "provenance"?}`.
/// Without `expected`, the graph's own min-cut vector is used.
pub fn load_rays(text: &str) -> Result<Vec<RayEntry>> {
    let raw: Vec<RawRay> = serde_json::from_str(text)?;
    raw.into_iter()
        .map(|r| {
            let graph = graph_from_raw(serde_json::from_value(r.graph)?)?.graph;
            let provenance = r.provenance.unwrap_or_else(|| "external data".into());
            match r.expected {
                None => RayEntry::derived(&r.name, graph, &provenance),
                Some(values) => {
                    let entries = values.iter().map(Number::rational).collect::<Result<Vec<_>>>()?;
                    let expected = EntropyVector::new(graph.n(), entries)?;
                    Ok(RayEntry { name: r.name, n: graph.n(), hypergraph: graph, expected: Some(expected), provenance })
                }
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{entropy_vector, MinCutOptions};
    use crate::rational::int;

    #[test]
    fn graph_round_trip() {
        let text = r#"{"n": 2, "vertices": ["A","B","O","s"], "boundary": {"A":"A","B":"B","O":"O"},
            "edges": [{"v":["A","s"],"w":"1/2"},{"v":["s","B","O"],"w":2}]}"#;
        let g = parse_graph(text).unwrap();
        assert_eq!(g.edges()[0].weight, Rational::new(1.into(), 2.into()));
        let again = parse_graph(&graph_to_json(&g).to_string()).unwrap();
        assert_eq!(g, again);
    }

    #[test]
    fn merges_boundary_lists() {
        let text = r#"{"n": 1, "boundary": {"A":["a1","a2"],"O":"O"},
            "edges": [{"v":["a1","O"]},{"v":["a2","O"]},{"v":["a1","a2"]}]}"#;
        let loaded = read_graph(text).unwrap();
        assert_eq!(loaded.merged, vec![("A".into(), "a1".into(), vec!["a2".to_string()])]);
        assert_eq!(loaded.graph.edges().len(), 2);
        let s = entropy_vector(&loaded.graph, &MinCutOptions::default()).unwrap();
        assert_eq!(s.entries(), &[int(2)]);
    }

    #[test]
    fn rejects_bad_edges() {
        let text = r#"{"n": 1, "boundary": {"A":"A","O":"O"}, "edges": [{"v":["A"]}]}"#;
        assert!(parse_graph(text).is_err());
        let unknown = r#"{"n": 1, "vertices":["A","O"], "boundary": {"A":"A","O":"O"}, "edges": [{"v":["A","x"]}]}"#;
        assert!(parse_graph(unknown).is_err());
    }

    #[test]
    fn inequality_files() {
        let a = parse_inequality_file(r#"{"n":3,"q":[0,-1,0,1,0,1,-1]}"#).unwrap();
        let b = parse_inequality_file(r#"{"n":3,"expr":"S(AB)+S(BC) >= S(B)+S(ABC)"}"#).unwrap();
        assert_eq!(a.to_q(), b.to_q());
        assert!(parse_inequality_file(r#"{"n":3}"#).is_err());
    }

    #[test]
    fn map_files() {
        let m = parse_map(r#"{"L":2,"Rp":2,"f10":[0,1,1,3]}"#).unwrap();
        assert_eq!(parse_map(&map_to_json(&m).to_string()).unwrap(), m);
        assert!(parse_map(r#"{"L":2,"Rp":1,"f10":[0,1,1,3]}"#).is_err());
    }

    #[test]
    fn ray_files() {
        let text = r#"[{"name":"g","graph":{"n":2,"boundary":{"A":"A","B":"B","O":"O"},"edges":[{"v":["A","B","O"]}]},
            "expected":[2,2,2]}]"#;
        let rays = load_rays(text).unwrap();
        let c = crate::catalog::is_realization(&rays[0].hypergraph, rays[0].expected.as_ref().unwrap()).unwrap();
        assert_eq!(c, Some(Rational::new(1.into(), 2.into())));
    }
}
