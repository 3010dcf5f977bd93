//! Deterministic finite automata over opaque symbol tokens.
//!
//! Every transform returns an automaton whose states are numbered densely in
//! breadth-first discovery order from the initial state, visiting successors
//! in alphabet order. Unreachable states, when a transform keeps them, follow
//! in their previous relative order.

mod families;
pub(crate) mod format;

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

pub use families::LanguageFamily;

pub type StateId = usize;
pub type SymbolId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dfa {
    alphabet: Vec<String>,
    /// `delta[q][a]`
    delta: Vec<Vec<Option<StateId>>>,
    initial: StateId,
    accepting: Vec<bool>,
}

impl Dfa {
    /// Builds an automaton from an explicit transition list.
    pub fn new<I>(
        alphabet: Vec<String>,
        num_states: usize,
        initial: StateId,
        finals: &[StateId],
        transitions: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (StateId, SymbolId, StateId)>,
    {
        let mut seen = BTreeSet::new();
        for s in &alphabet {
            if s.is_empty() || s.chars().any(char::is_whitespace) {
                return Err(Error::InvalidDfa(format!("bad symbol token `{s}`")));
            }
            if !seen.insert(s.as_str()) {
                return Err(Error::InvalidDfa(format!("duplicate symbol `{s}`")));
            }
        }
        if num_states == 0 {
            return Err(Error::InvalidDfa("an automaton needs at least one state".into()));
        }
        if initial >= num_states {
            return Err(Error::InvalidDfa(format!("initial state {initial} out of range")));
        }
        let mut accepting = vec![false; num_states];
        for &f in finals {
            if f >= num_states {
                return Err(Error::InvalidDfa(format!("final state {f} out of range")));
            }
            accepting[f] = true;
        }
        let mut delta = vec![vec![None; alphabet.len()]; num_states];
        for (q, a, r) in transitions {
            if q >= num_states || r >= num_states {
                return Err(Error::InvalidDfa(format!("transition {q} -> {r} leaves the state set")));
            }
            if a >= alphabet.len() {
                return Err(Error::InvalidDfa(format!("symbol index {a} out of range")));
            }
            match delta[q][a] {
                Some(prev) if prev != r => {
                    return Err(Error::NonDeterministic {
                        state: q,
                        symbol: alphabet[a].clone(),
                    })
                }
                _ => delta[q][a] = Some(r),
            }
        }
        Ok(Dfa {
            alphabet,
            delta,
            initial,
            accepting,
        })
    }

    /// The canonical automaton of the empty language: one non-final state, no
    /// transitions.
    pub fn empty_language(alphabet: Vec<String>) -> Self {
        let m = alphabet.len();
        Dfa {
            alphabet,
            delta: vec![vec![None; m]],
            initial: 0,
            accepting: vec![false],
        }
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet.len()
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.accepting[q]
    }

    pub fn finals(&self) -> Vec<StateId> {
        (0..self.num_states()).filter(|&q| self.accepting[q]).collect()
    }

    pub fn transition(&self, q: StateId, a: SymbolId) -> Option<StateId> {
        self.delta[q][a]
    }

    pub fn symbol_id(&self, symbol: &str) -> Option<SymbolId> {
        self.alphabet.iter().position(|s| s == symbol)
    }

    /// All defined transitions, ordered by source state then symbol.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, SymbolId, StateId)> + '_ {
        self.delta.iter().enumerate().flat_map(|(q, row)| {
            row.iter()
                .enumerate()
                .filter_map(move |(a, r)| r.map(|r| (q, a, r)))
        })
    }

    pub fn num_transitions(&self) -> usize {
        self.transitions().count()
    }

    /// Number of letters defined at `q`.
    pub fn out_degree(&self, q: StateId) -> usize {
        self.delta[q].iter().filter(|r| r.is_some()).count()
    }

    pub fn is_complete(&self) -> bool {
        self.delta.iter().all(|row| row.iter().all(Option::is_some))
    }

    pub fn is_trim(&self) -> bool {
        let acc = self.accessible();
        let coacc = self.coaccessible();
        acc.iter().zip(&coacc).all(|(a, c)| *a && *c)
    }

    pub fn is_empty_language(&self) -> bool {
        !self.coaccessible()[self.initial]
    }

    fn accessible(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(q) = queue.pop_front() {
            for r in self.delta[q].iter().flatten() {
                if !seen[*r] {
                    seen[*r] = true;
                    queue.push_back(*r);
                }
            }
        }
        seen
    }

    fn coaccessible(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut preds = vec![Vec::new(); n];
        for (q, _, r) in self.transitions() {
            preds[r].push(q);
        }
        let mut seen = self.accepting.clone();
        let mut queue: VecDeque<_> = (0..n).filter(|&q| seen[q]).collect();
        while let Some(r) = queue.pop_front() {
            for &q in &preds[r] {
                if !seen[q] {
                    seen[q] = true;
                    queue.push_back(q);
                }
            }
        }
        seen
    }

    /// Runs the automaton on a word of symbol tokens.
    pub fn accepts<S: AsRef<str>>(&self, word: &[S]) -> Result<bool> {
        let ids = word
            .iter()
            .map(|s| {
                self.symbol_id(s.as_ref())
                    .ok_or_else(|| Error::UnknownSymbol(s.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.accepts_ids(&ids))
    }

    pub fn accepts_ids(&self, word: &[SymbolId]) -> bool {
        let mut q = self.initial;
        for &a in word {
            match self.delta[q].get(a).copied().flatten() {
                Some(r) => q = r,
                None => return false,
            }
        }
        self.accepting[q]
    }

    /// Keeps the states listed in `keep` (which must contain the initial
    /// state) and renumbers canonically.
    fn restrict(&self, keep: &[bool]) -> Dfa {
        let mut order = Vec::new();
        let mut index = vec![usize::MAX; self.num_states()];
        let mut queue = VecDeque::from([self.initial]);
        index[self.initial] = 0;
        order.push(self.initial);
        while let Some(q) = queue.pop_front() {
            for r in self.delta[q].iter().flatten() {
                if keep[*r] && index[*r] == usize::MAX {
                    index[*r] = order.len();
                    order.push(*r);
                    queue.push_back(*r);
                }
            }
        }
        for q in 0..self.num_states() {
            if keep[q] && index[q] == usize::MAX {
                index[q] = order.len();
                order.push(q);
            }
        }
        let delta = order
            .iter()
            .map(|&q| {
                self.delta[q]
                    .iter()
                    .map(|r| r.filter(|&r| keep[r]).map(|r| index[r]))
                    .collect()
            })
            .collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            delta,
            initial: 0,
            accepting: order.iter().map(|&q| self.accepting[q]).collect(),
        }
    }

    /// Canonical renumbering without dropping anything.
    pub fn canonical(&self) -> Dfa {
        self.restrict(&vec![true; self.num_states()])
    }

    /// Removes states that are not accessible or not co-accessible.
    ///
    /// An automaton of the empty language trims to [`Dfa::empty_language`].
    pub fn trim(&self) -> Dfa {
        let acc = self.accessible();
        let coacc = self.coaccessible();
        if !coacc[self.initial] {
            return Dfa::empty_language(self.alphabet.clone());
        }
        let keep: Vec<bool> = acc.iter().zip(&coacc).map(|(a, c)| *a && *c).collect();
        self.restrict(&keep)
    }

    /// Totalizes the transition function with at most one extra non-final
    /// sink state.
    pub fn complete(&self) -> Dfa {
        if self.is_complete() {
            return self.canonical();
        }
        let sink = self.num_states();
        let mut delta: Vec<Vec<Option<StateId>>> = self
            .delta
            .iter()
            .map(|row| row.iter().map(|r| Some(r.unwrap_or(sink))).collect())
            .collect();
        delta.push(vec![Some(sink); self.alphabet.len()]);
        let mut accepting = self.accepting.clone();
        accepting.push(false);
        Dfa {
            alphabet: self.alphabet.clone(),
            delta,
            initial: self.initial,
            accepting,
        }
        .canonical()
    }

    /// Minimal trim automaton of the same language (Hopcroft refinement).
    pub fn minimize(&self) -> Dfa {
        let trimmed = self.trim();
        if trimmed.is_empty_language() {
            return trimmed;
        }
        let classes = hopcroft_classes(&trimmed);
        let sink_class = classes[trimmed.num_states()];
        let mut class_index = vec![usize::MAX; trimmed.num_states() + 1];
        let mut reps = Vec::new();
        for (q, &c) in classes.iter().enumerate().take(trimmed.num_states()) {
            if class_index[c] == usize::MAX {
                class_index[c] = reps.len();
                reps.push(q);
            }
        }
        let delta = reps
            .iter()
            .map(|&q| {
                trimmed.delta[q]
                    .iter()
                    .map(|r| {
                        r.filter(|&r| classes[r] != sink_class)
                            .map(|r| class_index[classes[r]])
                    })
                    .collect()
            })
            .collect();
        Dfa {
            alphabet: trimmed.alphabet.clone(),
            delta,
            initial: class_index[classes[trimmed.initial]],
            accepting: reps.iter().map(|&q| trimmed.accepting[q]).collect(),
        }
        .canonical()
    }

    /// Exact language equality, by a breadth-first walk of the product with
    /// implicit sinks.
    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        let ours: BTreeSet<_> = self.alphabet.iter().collect();
        let theirs: BTreeSet<_> = other.alphabet.iter().collect();
        if ours != theirs {
            return Err(Error::AlphabetMismatch(format!(
                "{:?} vs {:?}",
                self.alphabet, other.alphabet
            )));
        }
        let remap: Vec<SymbolId> = self
            .alphabet
            .iter()
            .map(|s| other.symbol_id(s).expect("same alphabet"))
            .collect();
        let acc = |d: &Dfa, q: Option<StateId>| q.is_some_and(|q| d.accepting[q]);
        let mut seen = std::collections::HashSet::new();
        let start = (Some(self.initial), Some(other.initial));
        seen.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some((p, q)) = queue.pop_front() {
            if acc(self, p) != acc(other, q) {
                return Ok(false);
            }
            for (a, &b) in remap.iter().enumerate() {
                let next = (
                    p.and_then(|p| self.delta[p][a]),
                    q.and_then(|q| other.delta[q][b]),
                );
                if next != (None, None) && seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        Ok(true)
    }
}

/// Hopcroft partition refinement on `dfa` completed by a virtual sink with id
/// `dfa.num_states()`. Returns the class of every state, sink included.
fn hopcroft_classes(dfa: &Dfa) -> Vec<usize> {
    let n = dfa.num_states() + 1;
    let sink = n - 1;
    let m = dfa.alphabet.len();
    let step = |q: usize, a: usize| {
        if q == sink {
            sink
        } else {
            dfa.delta[q][a].unwrap_or(sink)
        }
    };
    // inverse[a][r] = states q with step(q, a) == r
    let mut inverse = vec![vec![Vec::new(); n]; m];
    for q in 0..n {
        for (a, inv) in inverse.iter_mut().enumerate() {
            inv[step(q, a)].push(q);
        }
    }

    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let finals: Vec<usize> = (0..sink).filter(|&q| dfa.accepting[q]).collect();
    let others: Vec<usize> = (0..n).filter(|&q| q == sink || !dfa.accepting[q]).collect();
    for b in [finals, others] {
        if !b.is_empty() {
            blocks.push(b);
        }
    }
    let mut block_of = vec![0; n];
    for (i, b) in blocks.iter().enumerate() {
        for &q in b {
            block_of[q] = i;
        }
    }
    let mut worklist: Vec<(usize, usize)> = (0..blocks.len())
        .flat_map(|b| (0..m).map(move |a| (b, a)))
        .collect();

    let mut marked = vec![false; n];
    let mut hits = vec![0usize; n];
    while let Some((splitter, a)) = worklist.pop() {
        let mut preimage = Vec::new();
        for &r in &blocks[splitter] {
            for &q in &inverse[a][r] {
                if !marked[q] {
                    marked[q] = true;
                    preimage.push(q);
                }
            }
        }
        let mut touched = Vec::new();
        for &q in &preimage {
            let b = block_of[q];
            if hits[b] == 0 {
                touched.push(b);
            }
            hits[b] += 1;
        }
        for b in touched {
            let count = std::mem::take(&mut hits[b]);
            if count == blocks[b].len() {
                continue;
            }
            let (inside, outside): (Vec<usize>, Vec<usize>) =
                blocks[b].iter().partition(|&&q| marked[q]);
            let new_id = blocks.len();
            let (keep, moved) = if inside.len() <= outside.len() {
                (outside, inside)
            } else {
                (inside, outside)
            };
            for &q in &moved {
                block_of[q] = new_id;
            }
            blocks[b] = keep;
            blocks.push(moved);
            // pending (b, c) entries now refer to the larger half, so queueing
            // the smaller half suffices in both Hopcroft cases
            for c in 0..m {
                worklist.push((new_id, c));
            }
        }
        for q in preimage {
            marked[q] = false;
        }
    }
    block_of
}
