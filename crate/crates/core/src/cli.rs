//! Command-line front end.
//!
//! Exit codes: 0 success, 1 negative answer, 2 usage or input error,
//! 3 budget exhausted before an exact answer.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::json;

use crate::automata::{Dfa, LanguageFamily};
use crate::bounds::{fmt_rational, to_f64, BoundReport};
use crate::budget::Budget;
use crate::decide::{decide_genus_with, DecideOptions, DecisionReport};
use crate::embedding::{genus_exact, planar, EmbeddingWitness, WitnessClaim};
use crate::emulator::{lift_to_automaton, search_min_genus_emulator, EmulatorMap, SearchOutcome};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::graphs::{girth, simplify, underlying_multigraph, Multigraph, SimpleDigraph};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INEXACT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "genuslab", version, about = "Genus of regular languages and their automata")]
pub struct Cli {
    /// Read and write JSON instead of the text formats.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct BudgetArgs {
    /// Search node limit; accepts forms like 10^7 or 1e7.
    #[arg(long, env = "GENUSLAB_BUDGET_NODES", value_parser = parse_count)]
    budget_nodes: Option<u64>,
    /// Wall-clock limit in milliseconds.
    #[arg(long, value_parser = parse_positive)]
    budget_ms: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self, default_nodes: Option<u64>) -> Budget {
        let mut b = match self.budget_nodes.or(default_nodes) {
            Some(n) => Budget::nodes(n),
            None => Budget::unlimited(),
        };
        if let Some(ms) = self.budget_ms {
            b = b.with_deadline(Duration::from_millis(ms));
        }
        b
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Minimal automaton of the input automaton.
    Minimize { input: Option<PathBuf> },
    /// Whether two automata accept the same language.
    Equivalent { left: PathBuf, right: PathBuf },
    /// Generate a family member: zmod K LETTERS|all, zmod-product MODULI GEN…,
    /// shuffle N P, two-letter K, cascade N, random STATES LETTERS.
    Gen {
        family: String,
        params: Vec<String>,
        /// Seed for `random`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Girth of the underlying multigraph of an automaton or graph.
    Girth { input: Option<PathBuf> },
    /// Lower and upper genus bounds for n states on m letters with girth ≥ j.
    Bounds {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        girth: u64,
    },
    /// Planarity of an automaton or graph; exit 1 when nonplanar.
    Planar {
        input: Option<PathBuf>,
        /// Write the planar embedding here.
        #[arg(long)]
        emit_witness: Option<PathBuf>,
    },
    /// Exact orientable genus within the budget; exit 3 if only bracketed.
    Genus {
        input: Option<PathBuf>,
        #[arg(long)]
        emit_witness: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Check a rotation-system witness; exit 1 when its claims are false.
    VerifyEmbedding { input: Option<PathBuf> },
    /// Check an emulator map; exit 1 naming the first violation.
    VerifyEmulator { input: Option<PathBuf> },
    /// Smallest tight emulator of genus ≤ g of a digraph or of A_min's digraph.
    EmulateSearch {
        input: Option<PathBuf>,
        #[arg(long)]
        max_size: usize,
        #[arg(long, default_value_t = 0)]
        genus: usize,
        /// Directory for the emulator and its embedding.
        #[arg(long)]
        emit_witness: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Lift an emulator of A_min's digraph to an automaton for the language.
    Lift { emulator: PathBuf, automaton: PathBuf },
    /// Bounded decision procedure for the genus and topological size.
    Decide {
        input: Option<PathBuf>,
        /// Largest candidate size when the bounds leave sizes open.
        #[arg(long)]
        max_size: Option<usize>,
        /// Directory for the witness automaton, emulator and embedding.
        #[arg(long)]
        emit_witness: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Write every example file into a directory.
    Fixtures { dir: PathBuf },
}

fn parse_count(s: &str) -> std::result::Result<u64, String> {
    let s = s.trim().replace('_', "");
    let value = if let Some((b, e)) = s.split_once('^') {
        let b: u64 = b.parse().map_err(|_| format!("bad base in `{s}`"))?;
        let e: u32 = e.parse().map_err(|_| format!("bad exponent in `{s}`"))?;
        b.checked_pow(e).ok_or("count too large")?
    } else if let Some((m, e)) = s.split_once(['e', 'E']) {
        let m: u64 = m.parse().map_err(|_| format!("bad mantissa in `{s}`"))?;
        let e: u32 = e.parse().map_err(|_| format!("bad exponent in `{s}`"))?;
        10u64.checked_pow(e).and_then(|p| p.checked_mul(m)).ok_or("count too large")?
    } else {
        s.parse().map_err(|_| format!("expected a count, found `{s}`"))?
    };
    if value == 0 {
        return Err("budget must be positive".into());
    }
    Ok(value)
}

fn parse_positive(s: &str) -> std::result::Result<u64, String> {
    match s.parse::<u64>() {
        Ok(0) | Err(_) => Err(format!("expected a positive integer, found `{s}`")),
        Ok(v) => Ok(v),
    }
}

/// Result of a command: what to print and how to exit.
struct Outcome {
    stdout: String,
    code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: EXIT_OK }
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    json: bool,
}

impl Io<'_> {
    fn read(&mut self, path: Option<&Path>) -> Result<String> {
        match path {
            Some(p) if p != Path::new("-") => Ok(fs::read_to_string(p)?),
            _ => {
                let mut s = String::new();
                self.stdin.read_to_string(&mut s)?;
                Ok(s)
            }
        }
    }
}

fn is_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

fn parse_dfa(text: &str) -> Result<Dfa> {
    if is_json(text) {
        Dfa::from_json(text)
    } else {
        Dfa::from_text(text)
    }
}

fn looks_like_dfa(text: &str) -> bool {
    if is_json(text) {
        serde_json::from_str::<serde_json::Value>(text).is_ok_and(|v| v.get("alphabet").is_some())
    } else {
        text.lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .find(|l| !l.is_empty())
            .is_some_and(|l| l.starts_with("alphabet"))
    }
}

/// An automaton's multigraph, or a graph file.
fn parse_graph(text: &str) -> Result<Multigraph> {
    if looks_like_dfa(text) {
        return Ok(underlying_multigraph(&parse_dfa(text)?));
    }
    if is_json(text) {
        Multigraph::from_json(text)
    } else {
        Multigraph::from_text(text)
    }
}

fn parse_emulator(text: &str) -> Result<EmulatorMap> {
    if is_json(text) {
        EmulatorMap::from_json(text)
    } else {
        EmulatorMap::from_text(text)
    }
}

fn dfa_out(a: &Dfa, json: bool) -> String {
    if json {
        a.to_json()
    } else {
        a.to_text()
    }
}

fn witness_out(w: &EmbeddingWitness, json: bool) -> String {
    if json {
        w.to_json()
    } else {
        w.to_text()
    }
}

fn emulator_out(m: &EmulatorMap, json: bool) -> String {
    if json {
        m.to_json()
    } else {
        m.to_text()
    }
}

fn to_json_line(v: serde_json::Value) -> String {
    serde_json::to_string_pretty(&v).expect("serializable") + "\n"
}

fn list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::InvalidFamily(format!("bad {what} `{t}`")))
        })
        .collect()
}

fn one<T: std::str::FromStr>(params: &[String], i: usize, what: &str) -> Result<T> {
    let s = params
        .get(i)
        .ok_or_else(|| Error::InvalidFamily(format!("missing {what}")))?;
    s.parse()
        .map_err(|_| Error::InvalidFamily(format!("bad {what} `{s}`")))
}

fn generate(family: &str, params: &[String], seed: u64) -> Result<Dfa> {
    let arity = |n: usize| {
        if params.len() == n {
            Ok(())
        } else {
            Err(Error::InvalidFamily(format!("{family} takes {n} parameters, got {}", params.len())))
        }
    };
    let f = match family {
        "zmod" => {
            arity(2)?;
            let modulus: u32 = one(params, 0, "modulus")?;
            let letters = if params[1] == "all" {
                (0..modulus).collect()
            } else {
                list(&params[1], "letter")?
            };
            LanguageFamily::Zmod { modulus, letters }
        }
        "zmod-product" => {
            if params.len() < 2 {
                return Err(Error::InvalidFamily("zmod-product takes moduli and generators".into()));
            }
            LanguageFamily::ZmodProduct {
                moduli: list(&params[0], "modulus")?,
                generators: params[1..].iter().map(|g| list(g, "coordinate")).collect::<Result<_>>()?,
            }
        }
        "shuffle" => {
            arity(2)?;
            LanguageFamily::Shuffle {
                n: one(params, 0, "n")?,
                p: one(params, 1, "p")?,
            }
        }
        "two-letter" => {
            arity(1)?;
            LanguageFamily::TwoLetterHierarchy { k: one(params, 0, "k")? }
        }
        "cascade" => {
            arity(1)?;
            LanguageFamily::ExponentialCascade { n: one(params, 0, "n")? }
        }
        "random" => {
            arity(2)?;
            let states: usize = one(params, 0, "state count")?;
            let letters: usize = one(params, 1, "letter count")?;
            if states == 0 || letters == 0 {
                return Err(Error::InvalidFamily("random needs states and letters".into()));
            }
            let mut rng = StdRng::seed_from_u64(seed);
            let alphabet = (0..letters).map(|a| a.to_string()).collect();
            let finals: Vec<usize> = (0..states).filter(|_| rng.gen_bool(0.5)).collect();
            let trans: Vec<_> = (0..states)
                .flat_map(|q| (0..letters).map(move |a| (q, a)))
                .map(|(q, a)| (q, a, rng.gen_range(0..states)))
                .collect();
            return Dfa::new(alphabet, states, 0, &finals, trans);
        }
        other => return Err(Error::InvalidFamily(format!("unknown family `{other}`"))),
    };
    f.generate()
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    Ok(fs::write(path, contents)?)
}

fn decision_text(r: &DecisionReport) -> String {
    let mut out = String::new();
    let girth = r.class.girth.map_or("none".to_string(), |g| g.to_string());
    out += &format!("minimal size: {}\n", r.size_set);
    out += &format!("letters: {}\ngirth: {girth}\nin class: {}\n", r.class.m, r.class.in_class);
    if r.genus_exact {
        out += &format!("genus: {}\n", r.genus_upper);
        out += &format!("topological size: {}\n", r.top_size);
    } else {
        out += &format!("genus: between {} and {}\n", r.genus_lower, r.genus_upper);
        out += &format!("topological size: at most {} at genus {}\n", r.top_size, r.genus_upper);
    }
    if let Some(s) = r.sizes_exhausted {
        out += &format!("sizes exhausted through: {s}\n");
    }
    out += &format!("search nodes: {}\n", r.nodes);
    for note in &r.notes {
        out += &format!("note: {note}\n");
    }
    out
}

fn execute(cli: Cli, io: &mut Io) -> Result<Outcome> {
    let json = io.json;
    match cli.command {
        Command::Minimize { input } => {
            let a = parse_dfa(&io.read(input.as_deref())?)?;
            Ok(Outcome::ok(dfa_out(&a.minimize(), json)))
        }
        Command::Equivalent { left, right } => {
            let a = parse_dfa(&fs::read_to_string(left)?)?;
            let b = parse_dfa(&fs::read_to_string(right)?)?;
            let eq = a.equivalent(&b)?;
            let stdout = if json {
                to_json_line(json!({ "equivalent": eq }))
            } else {
                format!("equivalent: {eq}\n")
            };
            Ok(Outcome {
                stdout,
                code: if eq { EXIT_OK } else { EXIT_NEGATIVE },
            })
        }
        Command::Gen { family, params, seed } => Ok(Outcome::ok(dfa_out(&generate(&family, &params, seed)?, json))),
        Command::Girth { input } => {
            let g = girth(&parse_graph(&io.read(input.as_deref())?)?);
            Ok(Outcome::ok(if json {
                to_json_line(json!({ "girth": g }))
            } else {
                format!("girth: {}\n", g.map_or("none".into(), |g| g.to_string()))
            }))
        }
        Command::Bounds { m, n, girth } => {
            let b = BoundReport::new(m, girth, n)?;
            Ok(Outcome::ok(if json {
                to_json_line(serde_json::to_value(&b)?)
            } else {
                format!(
                    "lower: {} ({})\nupper: {} ({})\n",
                    fmt_rational(b.lower),
                    to_f64(b.lower),
                    fmt_rational(b.upper),
                    to_f64(b.upper)
                )
            }))
        }
        Command::Planar { input, emit_witness } => {
            let g = parse_graph(&io.read(input.as_deref())?)?;
            let w = planar(&g);
            if let (Some(path), Some(w)) = (&emit_witness, &w) {
                write_file(path, &witness_out(w, json))?;
            }
            let p = w.is_some();
            Ok(Outcome {
                stdout: if json {
                    to_json_line(json!({ "planar": p }))
                } else {
                    format!("planar: {p}\n")
                },
                code: if p { EXIT_OK } else { EXIT_NEGATIVE },
            })
        }
        Command::Genus {
            input,
            emit_witness,
            budget,
        } => {
            let g = parse_graph(&io.read(input.as_deref())?)?;
            let r = genus_exact(&g, &mut budget.budget(None));
            if let (Some(path), Some(w)) = (&emit_witness, &r.witness) {
                write_file(path, &witness_out(w, json))?;
            }
            let stdout = if json {
                to_json_line(serde_json::to_value(&r)?)
            } else if r.exact {
                format!("genus: {}\nsearch nodes: {}\n", r.upper, r.nodes)
            } else {
                format!("genus: between {} and {}\nsearch nodes: {}\n", r.lower, r.upper, r.nodes)
            };
            Ok(Outcome {
                stdout,
                code: if r.exact { EXIT_OK } else { EXIT_INEXACT },
            })
        }
        Command::VerifyEmbedding { input } => {
            let text = io.read(input.as_deref())?;
            let claim = if is_json(&text) {
                WitnessClaim::from_json(&text)?
            } else {
                WitnessClaim::from_text(&text)?
            };
            Ok(match claim.check() {
                Ok(w) => Outcome::ok(if json {
                    to_json_line(json!({ "valid": true, "genus": w.genus, "faces": w.num_faces() }))
                } else {
                    format!("valid: true\ngenus: {}\nfaces: {}\n", w.genus, w.num_faces())
                }),
                Err(e) => Outcome {
                    stdout: if json {
                        to_json_line(json!({ "valid": false, "reason": e.to_string() }))
                    } else {
                        format!("valid: false\nreason: {e}\n")
                    },
                    code: EXIT_NEGATIVE,
                },
            })
        }
        Command::VerifyEmulator { input } => {
            let m = parse_emulator(&io.read(input.as_deref())?)?;
            Ok(match m.verify() {
                Ok(()) => Outcome::ok(if json {
                    to_json_line(json!({ "valid": true, "tight": m.is_tight(), "size": m.map.len() }))
                } else {
                    format!("valid: true\ntight: {}\nsize: {}\n", m.is_tight(), m.map.len())
                }),
                Err(e) => Outcome {
                    stdout: if json {
                        to_json_line(json!({ "valid": false, "reason": e.to_string() }))
                    } else {
                        format!("valid: false\nreason: {e}\n")
                    },
                    code: EXIT_NEGATIVE,
                },
            })
        }
        Command::EmulateSearch {
            input,
            max_size,
            genus,
            emit_witness,
            budget,
        } => {
            let text = io.read(input.as_deref())?;
            let base = if looks_like_dfa(&text) {
                simplify(&underlying_multigraph(&parse_dfa(&text)?.minimize()))?
            } else if is_json(&text) {
                SimpleDigraph::from_json(&text)?
            } else {
                SimpleDigraph::from_text(&text)?
            };
            let report = search_min_genus_emulator(&base, max_size, genus, &mut budget.budget(None));
            let exhausted = report.exhausted_through.map_or("none".into(), |s| s.to_string());
            match report.outcome {
                SearchOutcome::Found { emulator, witness } => {
                    if let Some(dir) = &emit_witness {
                        let ext = if json { "json" } else { "txt" };
                        write_file(&dir.join(format!("emulator.{ext}")), &emulator_out(&emulator, json))?;
                        write_file(&dir.join(format!("embedding.{ext}")), &witness_out(&witness, json))?;
                    }
                    let stdout = if json {
                        to_json_line(json!({
                            "found": true,
                            "size": emulator.map.len(),
                            "genus": witness.genus,
                            "nodes": report.nodes,
                            "emulator": serde_json::from_str::<serde_json::Value>(&emulator.to_json())?,
                        }))
                    } else {
                        format!(
                            "# size {}, genus {}, {} search nodes\n{}",
                            emulator.map.len(),
                            witness.genus,
                            report.nodes,
                            emulator.to_text()
                        )
                    };
                    Ok(Outcome::ok(stdout))
                }
                SearchOutcome::Exhausted => Ok(Outcome {
                    stdout: if json {
                        to_json_line(json!({ "found": false, "exhausted_through": report.exhausted_through, "nodes": report.nodes }))
                    } else {
                        format!("found: false\nexhausted through size: {exhausted}\nsearch nodes: {}\n", report.nodes)
                    },
                    code: EXIT_NEGATIVE,
                }),
                SearchOutcome::BudgetExhausted => Ok(Outcome {
                    stdout: if json {
                        to_json_line(json!({ "found": false, "budget_exhausted": true, "exhausted_through": report.exhausted_through, "nodes": report.nodes }))
                    } else {
                        format!(
                            "found: false\nbudget exhausted\nexhausted through size: {exhausted}\nsearch nodes: {}\n",
                            report.nodes
                        )
                    },
                    code: EXIT_INEXACT,
                }),
            }
        }
        Command::Lift { emulator, automaton } => {
            let m = parse_emulator(&fs::read_to_string(emulator)?)?;
            m.verify()?;
            let a = parse_dfa(&fs::read_to_string(automaton)?)?;
            let a_min = a.minimize();
            let lifted = lift_to_automaton(&m, &a_min)?;
            if !lifted.equivalent(&a_min)? {
                return Err(Error::InvalidEmulator("lifted automaton computes another language".into()));
            }
            Ok(Outcome::ok(dfa_out(&lifted, json)))
        }
        Command::Decide {
            input,
            max_size,
            emit_witness,
            budget,
        } => {
            let a = parse_dfa(&io.read(input.as_deref())?)?;
            let r = decide_genus_with(&a, DecideOptions { max_size }, &mut budget.budget(Some(10_000_000)));
            if let (Some(dir), Some(w)) = (&emit_witness, &r.witness) {
                let ext = if json { "json" } else { "txt" };
                write_file(&dir.join(format!("automaton.{ext}")), &dfa_out(&w.automaton, json))?;
                write_file(&dir.join(format!("emulator.{ext}")), &emulator_out(&w.emulator, json))?;
                write_file(&dir.join(format!("embedding.{ext}")), &witness_out(&w.embedding, json))?;
            }
            Ok(Outcome {
                stdout: if json {
                    to_json_line(serde_json::to_value(&r)?)
                } else {
                    decision_text(&r)
                },
                code: if r.genus_exact { EXIT_OK } else { EXIT_INEXACT },
            })
        }
        Command::Fixtures { dir } => {
            let files = fixtures::all()?;
            let mut listing = String::new();
            for (name, contents) in &files {
                write_file(&dir.join(name), contents)?;
                listing += &format!("{}\n", dir.join(name).display());
            }
            Ok(Outcome::ok(listing))
        }
    }
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let mut io = Io { stdin, json: cli.json };
    match execute(cli, &mut io) {
        Ok(out) => {
            let _ = stdout.write_all(out.stdout.as_bytes());
            out.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}
