//! Graph text format and its JSON mirror.
//!
//! ```text
//! vertices: 3
//! edge: 0 1
//! edge: 2 2 loop
//! arc: 1 2
//! ```
//!
//! `edge` lines carry no orientation, `arc` lines remember `u -> v`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Multigraph, SimpleDigraph};
use crate::automata::format::{parse_index, tokens};
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
pub(crate) struct GraphJson {
    vertices: usize,
    edges: Vec<(String, usize, usize)>,
}

impl Multigraph {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "vertices: {}", self.num_vertices).unwrap();
        for e in &self.edges {
            let kind = if e.oriented { "arc" } else { "edge" };
            let tail = if e.is_loop() && !e.oriented { " loop" } else { "" };
            writeln!(out, "{kind}: {} {}{tail}", e.u, e.v).unwrap();
        }
        out
    }

    /// Parses `(line number, text)` pairs, so a graph can be a section of a
    /// larger file.
    pub(crate) fn parse_lines<'a>(
        lines: impl Iterator<Item = (usize, &'a str)>,
    ) -> Result<Multigraph> {
        let mut g: Option<Multigraph> = None;
        for (line, raw) in lines {
            let Some((key, toks)) = tokens(raw) else { continue };
            match key {
                "vertices" => {
                    if g.is_some() {
                        return Err(Error::parse(line, "vertices given twice"));
                    }
                    let [n] = toks[..] else {
                        return Err(Error::parse(line, "expected `vertices: n`"));
                    };
                    g = Some(Multigraph::new(parse_index(n, line, "a vertex count")?));
                }
                "edge" | "arc" => {
                    let graph = g
                        .as_mut()
                        .ok_or_else(|| Error::parse(line, "`vertices:` must come first"))?;
                    let (u, v) = match toks[..] {
                        [u, v] => (u, v),
                        [u, v, "loop"] if u == v => (u, v),
                        _ => return Err(Error::parse(line, format!("expected `{key}: u v`"))),
                    };
                    let u = parse_index(u, line, "a vertex")?;
                    let v = parse_index(v, line, "a vertex")?;
                    graph
                        .add_edge(u, v, key == "arc")
                        .map_err(|e| Error::parse(line, e.to_string()))?;
                }
                other => return Err(Error::parse(line, format!("unknown key `{other}`"))),
            }
        }
        g.ok_or_else(|| Error::parse(0, "missing `vertices:` line"))
    }

    pub fn from_text(text: &str) -> Result<Multigraph> {
        Self::parse_lines(text.lines().enumerate().map(|(i, l)| (i + 1, l)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("serializable") + "\n"
    }

    pub(crate) fn to_json_value(&self) -> GraphJson {
        GraphJson {
            vertices: self.num_vertices,
            edges: self
                .edges
                .iter()
                .map(|e| (if e.oriented { "arc" } else { "edge" }.to_string(), e.u, e.v))
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Multigraph> {
        Self::from_json_value(serde_json::from_str(text)?)
    }

    pub(crate) fn from_json_value(json: GraphJson) -> Result<Multigraph> {
        let mut g = Multigraph::new(json.vertices);
        for (kind, u, v) in json.edges {
            let oriented = match kind.as_str() {
                "arc" => true,
                "edge" => false,
                other => return Err(Error::InvalidGraph(format!("unknown edge kind `{other}`"))),
            };
            g.add_edge(u, v, oriented)?;
        }
        Ok(g)
    }
}

impl SimpleDigraph {
    pub fn to_text(&self) -> String {
        self.to_multigraph().to_text()
    }

    pub fn to_json(&self) -> String {
        self.to_multigraph().to_json()
    }

    /// Reads a graph whose edges are all arcs forming a simple digraph.
    pub fn from_multigraph(g: &Multigraph) -> Result<SimpleDigraph> {
        if let Some(i) = g.edges().iter().position(|e| !e.oriented) {
            return Err(Error::MissingOrientation(i));
        }
        SimpleDigraph::new(g.num_vertices(), g.edges().iter().map(|e| (e.u, e.v)))
    }

    pub fn from_text(text: &str) -> Result<SimpleDigraph> {
        Self::from_multigraph(&Multigraph::from_text(text)?)
    }

    pub fn from_json(text: &str) -> Result<SimpleDigraph> {
        Self::from_multigraph(&Multigraph::from_json(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let mut g = Multigraph::new(3);
        g.add_edge(0, 1, false).unwrap();
        g.add_edge(2, 2, false).unwrap();
        g.add_edge(1, 2, true).unwrap();
        g.add_edge(1, 2, true).unwrap();
        let text = g.to_text();
        assert!(text.contains("edge: 2 2 loop"));
        assert_eq!(Multigraph::from_text(&text).unwrap(), g);
        assert_eq!(Multigraph::from_json(&g.to_json()).unwrap(), g);
        let d = SimpleDigraph::new(3, [(0, 1), (1, 0), (2, 1)]).unwrap();
        assert_eq!(SimpleDigraph::from_text(&d.to_text()).unwrap(), d);
    }

    #[test]
    fn line_numbered_errors() {
        match Multigraph::from_text("vertices: 2\n\nedge: 0 5\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        match Multigraph::from_text("edge: 0 1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("unexpected {other:?}"),
        }
    }
}
