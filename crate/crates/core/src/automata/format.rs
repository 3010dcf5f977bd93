//! Line-oriented text format and its JSON mirror.
//!
//! ```text
//! # comment
//! alphabet: a b
//! states: 2
//! initial: 0
//! final: 1
//! trans: 0 a 1
//! ```

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::Dfa;
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
struct DfaJson {
    alphabet: Vec<String>,
    states: usize,
    initial: usize,
    #[serde(rename = "final")]
    finals: Vec<usize>,
    trans: Vec<(usize, String, usize)>,
}

/// Splits a line into its key and value tokens, dropping `#` comments.
pub(crate) fn tokens(line: &str) -> Option<(&str, Vec<&str>)> {
    let line = line.split('#').next().unwrap_or("").trim();
    if line.is_empty() {
        return None;
    }
    match line.split_once(':') {
        Some((key, rest)) => Some((key.trim(), rest.split_whitespace().collect())),
        None => Some((line, Vec::new())),
    }
}

pub(crate) fn parse_index(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("expected {what}, found `{tok}`")))
}

impl Dfa {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "alphabet: {}", self.alphabet.join(" ")).unwrap();
        writeln!(out, "states: {}", self.num_states()).unwrap();
        writeln!(out, "initial: {}", self.initial).unwrap();
        let finals: Vec<String> = self.finals().iter().map(usize::to_string).collect();
        if finals.is_empty() {
            writeln!(out, "final:").unwrap();
        } else {
            writeln!(out, "final: {}", finals.join(" ")).unwrap();
        }
        for (q, a, r) in self.transitions() {
            writeln!(out, "trans: {q} {} {r}", self.alphabet[a]).unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Dfa> {
        let mut alphabet: Option<(usize, Vec<String>)> = None;
        let mut states: Option<usize> = None;
        let mut initial: Option<(usize, usize)> = None;
        let mut finals = Vec::new();
        let mut trans = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let Some((key, toks)) = tokens(raw) else { continue };
            match key {
                "alphabet" => {
                    if alphabet.is_some() {
                        return Err(Error::parse(line, "alphabet given twice"));
                    }
                    alphabet = Some((line, toks.iter().map(|s| s.to_string()).collect()));
                }
                "states" => {
                    let [n] = toks[..] else {
                        return Err(Error::parse(line, "expected `states: n`"));
                    };
                    states = Some(parse_index(n, line, "a state count")?);
                }
                "initial" => {
                    let [q] = toks[..] else {
                        return Err(Error::parse(line, "expected `initial: q`"));
                    };
                    initial = Some((line, parse_index(q, line, "a state")?));
                }
                "final" => {
                    for q in toks {
                        finals.push((line, parse_index(q, line, "a state")?));
                    }
                }
                "trans" => {
                    let [q, s, r] = toks[..] else {
                        return Err(Error::parse(line, "expected `trans: q symbol q'`"));
                    };
                    trans.push((
                        line,
                        parse_index(q, line, "a state")?,
                        s.to_string(),
                        parse_index(r, line, "a state")?,
                    ));
                }
                other => return Err(Error::parse(line, format!("unknown key `{other}`"))),
            }
        }
        let (_, alphabet) = alphabet.ok_or_else(|| Error::parse(0, "missing `alphabet:` line"))?;
        let n = states.ok_or_else(|| Error::parse(0, "missing `states:` line"))?;
        let (init_line, init) = initial.ok_or_else(|| Error::parse(0, "missing `initial:` line"))?;
        if init >= n {
            return Err(Error::parse(init_line, format!("state {init} out of range")));
        }
        for &(line, q) in &finals {
            if q >= n {
                return Err(Error::parse(line, format!("state {q} out of range")));
            }
        }
        let mut resolved = Vec::with_capacity(trans.len());
        let mut seen = std::collections::HashMap::new();
        for (line, q, s, r) in trans {
            let a = alphabet
                .iter()
                .position(|x| *x == s)
                .ok_or_else(|| Error::parse(line, format!("symbol `{s}` not in alphabet")))?;
            if q >= n || r >= n {
                return Err(Error::parse(line, "state out of range"));
            }
            if let Some(prev) = seen.insert((q, a), r) {
                if prev != r {
                    return Err(Error::parse(line, format!("second target for ({q}, {s})")));
                }
            }
            resolved.push((q, a, r));
        }
        let finals: Vec<usize> = finals.into_iter().map(|(_, q)| q).collect();
        Dfa::new(alphabet, n, init, &finals, resolved)
    }

    pub fn to_json(&self) -> String {
        let json = DfaJson {
            alphabet: self.alphabet.clone(),
            states: self.num_states(),
            initial: self.initial,
            finals: self.finals(),
            trans: self
                .transitions()
                .map(|(q, a, r)| (q, self.alphabet[a].clone(), r))
                .collect(),
        };
        serde_json::to_string_pretty(&json).expect("serializable") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Dfa> {
        let json: DfaJson = serde_json::from_str(text)?;
        let mut trans = Vec::with_capacity(json.trans.len());
        for (q, s, r) in json.trans {
            let a = json
                .alphabet
                .iter()
                .position(|x| *x == s)
                .ok_or(Error::UnknownSymbol(s))?;
            trans.push((q, a, r));
        }
        Dfa::new(json.alphabet, json.states, json.initial, &json.finals, trans)
    }
}
