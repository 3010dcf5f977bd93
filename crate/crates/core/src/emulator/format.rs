//! Emulator text format and its JSON mirror.
//!
//! ```text
//! base:
//! vertices: 3
//! arc: 0 1
//! total:
//! vertices: 6
//! arc: 0 1
//! map: 0 0
//! map: 1 1
//! ```
//!
//! `map: x v` sends total vertex `x` to base vertex `v`; every total vertex
//! needs exactly one line.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::EmulatorMap;
use crate::automata::format::{parse_index, tokens};
use crate::error::{Error, Result};
use crate::graphs::format::GraphJson;
use crate::graphs::{Multigraph, SimpleDigraph};

#[derive(Debug, Serialize, Deserialize)]
struct EmulatorJson {
    base: GraphJson,
    total: GraphJson,
    map: Vec<usize>,
}

fn digraph_at(g: Multigraph, line: usize) -> Result<SimpleDigraph> {
    SimpleDigraph::from_multigraph(&g).map_err(|e| Error::parse(line, e.to_string()))
}

impl EmulatorMap {
    pub fn to_text(&self) -> String {
        let mut out = String::from("base:\n");
        out += &self.base.to_text();
        out += "total:\n";
        out += &self.total.to_text();
        for (x, v) in self.map.iter().enumerate() {
            writeln!(out, "map: {x} {v}").unwrap();
        }
        out
    }

    /// Parses the format without checking the emulator conditions; see
    /// [`EmulatorMap::verify`].
    pub fn from_text(text: &str) -> Result<EmulatorMap> {
        #[derive(PartialEq)]
        enum Section {
            Start,
            Base,
            Total,
        }
        let mut section = Section::Start;
        let (mut base, mut total) = (Vec::new(), Vec::new());
        let (mut base_line, mut total_line) = (0, 0);
        let mut pairs = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let Some((key, toks)) = tokens(raw) else { continue };
            match key {
                "base" if toks.is_empty() && section == Section::Start => {
                    section = Section::Base;
                    base_line = line;
                }
                "total" if toks.is_empty() && section == Section::Base => {
                    section = Section::Total;
                    total_line = line;
                }
                "map" => {
                    if section != Section::Total {
                        return Err(Error::parse(line, "`map:` lines follow the `total:` section"));
                    }
                    let [x, v] = toks[..] else {
                        return Err(Error::parse(line, "expected `map: x v`"));
                    };
                    pairs.push((line, parse_index(x, line, "a total vertex")?, parse_index(v, line, "a base vertex")?));
                }
                _ => match section {
                    Section::Start => return Err(Error::parse(line, "expected `base:`")),
                    Section::Base => base.push((line, raw)),
                    Section::Total => total.push((line, raw)),
                },
            }
        }
        if section != Section::Total {
            return Err(Error::parse(0, "missing `base:` or `total:` section"));
        }
        let base = digraph_at(Multigraph::parse_lines(base.into_iter())?, base_line)?;
        let total = digraph_at(Multigraph::parse_lines(total.into_iter())?, total_line)?;
        let mut map = vec![None; total.num_vertices()];
        for (line, x, v) in pairs {
            let slot = map
                .get_mut(x)
                .ok_or_else(|| Error::parse(line, format!("total vertex {x} out of range")))?;
            if slot.replace(v).is_some() {
                return Err(Error::parse(line, format!("total vertex {x} mapped twice")));
            }
        }
        let map = map
            .into_iter()
            .enumerate()
            .map(|(x, v)| v.ok_or_else(|| Error::parse(0, format!("total vertex {x} has no `map:` line"))))
            .collect::<Result<_>>()?;
        Ok(EmulatorMap::new(base, total, map))
    }

    pub fn to_json(&self) -> String {
        let json = EmulatorJson {
            base: self.base.to_multigraph().to_json_value(),
            total: self.total.to_multigraph().to_json_value(),
            map: self.map.clone(),
        };
        serde_json::to_string_pretty(&json).expect("serializable") + "\n"
    }

    pub fn from_json(text: &str) -> Result<EmulatorMap> {
        let json: EmulatorJson = serde_json::from_str(text)?;
        let base = SimpleDigraph::from_multigraph(&Multigraph::from_json_value(json.base)?)?;
        let total = SimpleDigraph::from_multigraph(&Multigraph::from_json_value(json.total)?)?;
        if json.map.len() != total.num_vertices() {
            return Err(Error::InvalidEmulator(format!(
                "map has {} entries for {} total vertices",
                json.map.len(),
                total.num_vertices()
            )));
        }
        Ok(EmulatorMap::new(base, total, json.map))
    }
}
