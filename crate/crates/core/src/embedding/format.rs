//! Rotation and witness text formats.
//!
//! ```text
//! vertices: 2
//! edge: 0 1
//! rot: 0 0:0
//! rot: 1 0:1
//! genus: 0
//! face: 2 1
//! ```
//!
//! A dart is written `edge:end`. Vertices without a `rot:` line have an
//! empty rotation.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{dart, dart_edge, dart_end, trace_faces, EmbeddingWitness, FaceCensus, RotationSystem};
use crate::automata::format::{parse_index, tokens};
use crate::error::{Error, Result};
use crate::graphs::Multigraph;

impl RotationSystem {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, list) in self.orders().iter().enumerate() {
            let darts: Vec<String> = list
                .iter()
                .map(|&d| format!("{}:{}", dart_edge(d), dart_end(d)))
                .collect();
            if darts.is_empty() {
                writeln!(out, "rot: {v}").unwrap();
            } else {
                writeln!(out, "rot: {v} {}", darts.join(" ")).unwrap();
            }
        }
        out
    }
}

fn parse_dart(tok: &str, line: usize) -> Result<usize> {
    let (e, end) = tok
        .split_once(':')
        .ok_or_else(|| Error::parse(line, format!("expected a dart `edge:end`, found `{tok}`")))?;
    let e = parse_index(e, line, "an edge id")?;
    match end {
        "0" => Ok(dart(e, 0)),
        "1" => Ok(dart(e, 1)),
        _ => Err(Error::parse(line, format!("dart end must be 0 or 1, found `{end}`"))),
    }
}

/// What a witness file claims, before checking.
#[derive(Clone, Debug)]
pub struct WitnessClaim {
    pub graph: Multigraph,
    pub rotation: RotationSystem,
    pub genus: Option<usize>,
    pub census: Option<FaceCensus>,
}

impl WitnessClaim {
    /// Re-traces the rotation and compares against every stated value.
    pub fn check(&self) -> Result<EmbeddingWitness> {
        let w = trace_faces(&self.graph, &self.rotation)?;
        if let Some(g) = self.genus {
            if g != w.genus {
                return Err(Error::InvalidRotation(format!(
                    "claimed genus {g}, traced genus {}",
                    w.genus
                )));
            }
        }
        if let Some(c) = &self.census {
            if *c != w.census {
                return Err(Error::InvalidCensus(format!(
                    "claimed census {c:?}, traced {:?}",
                    w.census
                )));
            }
        }
        Ok(w)
    }
}

#[derive(Serialize, Deserialize)]
struct WitnessJson {
    vertices: usize,
    edges: Vec<(String, usize, usize)>,
    rotation: Vec<Vec<(usize, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    genus: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    faces: Option<Vec<(usize, usize)>>,
}

impl EmbeddingWitness {
    pub fn to_text(&self) -> String {
        let mut out = self.graph.to_text();
        out.push_str(&self.rotation.to_text());
        writeln!(out, "genus: {}", self.genus).unwrap();
        for (k, f) in &self.census {
            writeln!(out, "face: {k} {f}").unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        let json = WitnessJson {
            vertices: self.graph.num_vertices(),
            edges: self
                .graph
                .edges()
                .iter()
                .map(|e| (if e.oriented { "arc" } else { "edge" }.to_string(), e.u, e.v))
                .collect(),
            rotation: self
                .rotation
                .orders()
                .iter()
                .map(|l| l.iter().map(|&d| (dart_edge(d), dart_end(d))).collect())
                .collect(),
            genus: Some(self.genus),
            faces: Some(self.census.iter().map(|(&k, &f)| (k, f)).collect()),
        };
        serde_json::to_string_pretty(&json).expect("serializable") + "\n"
    }
}

impl WitnessClaim {
    pub fn from_text(text: &str) -> Result<WitnessClaim> {
        let mut graph_lines = Vec::new();
        let mut rot_lines = Vec::new();
        let mut genus = None;
        let mut census: Option<FaceCensus> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let Some((key, toks)) = tokens(raw) else { continue };
            match key {
                "vertices" | "edge" | "arc" => graph_lines.push((line, raw)),
                "rot" => rot_lines.push((line, toks)),
                "genus" => {
                    let [g] = toks[..] else {
                        return Err(Error::parse(line, "expected `genus: g`"));
                    };
                    genus = Some(parse_index(g, line, "a genus")?);
                }
                "face" => {
                    let [k, f] = toks[..] else {
                        return Err(Error::parse(line, "expected `face: length count`"));
                    };
                    let k = parse_index(k, line, "a face length")?;
                    let f = parse_index(f, line, "a face count")?;
                    *census.get_or_insert_with(FaceCensus::new).entry(k).or_default() += f;
                }
                other => return Err(Error::parse(line, format!("unknown key `{other}`"))),
            }
        }
        let graph = Multigraph::parse_lines(graph_lines.into_iter())?;
        let mut order = vec![Vec::new(); graph.num_vertices()];
        let mut given = vec![false; graph.num_vertices()];
        for (line, toks) in rot_lines {
            let Some((v, darts)) = toks.split_first() else {
                return Err(Error::parse(line, "expected `rot: v darts…`"));
            };
            let v = parse_index(v, line, "a vertex")?;
            if v >= order.len() {
                return Err(Error::parse(line, format!("vertex {v} out of range")));
            }
            if given[v] {
                return Err(Error::parse(line, format!("second rotation for vertex {v}")));
            }
            given[v] = true;
            for t in darts {
                order[v].push(parse_dart(t, line)?);
            }
        }
        Ok(WitnessClaim {
            graph,
            rotation: RotationSystem::new(order),
            genus,
            census,
        })
    }

    pub fn from_json(text: &str) -> Result<WitnessClaim> {
        let json: WitnessJson = serde_json::from_str(text)?;
        let mut graph = Multigraph::new(json.vertices);
        for (kind, u, v) in json.edges {
            graph.add_edge(u, v, kind == "arc")?;
        }
        if json.rotation.iter().flatten().any(|&(_, end)| end > 1) {
            return Err(Error::InvalidRotation("dart end must be 0 or 1".into()));
        }
        let mut order: Vec<Vec<usize>> = json
            .rotation
            .iter()
            .map(|l| l.iter().map(|&(e, end)| dart(e, end)).collect())
            .collect();
        order.resize(graph.num_vertices(), Vec::new());
        Ok(WitnessClaim {
            graph,
            rotation: RotationSystem::new(order),
            genus: json.genus,
            census: json.faces.map(|f| f.into_iter().collect()),
        })
    }
}
