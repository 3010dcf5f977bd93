//! Bounded search for a tight emulator of small genus.
//!
//! Candidates are enumerated by total size, then by fiber-size vector in
//! lexicographic order, then by arc choices. Total vertices are labelled in
//! order of discovery inside their fiber, so relabelling a fiber never
//! produces a second copy of the same emulator. When every base vertex is
//! reachable from vertex 0, only emulators reachable from the first vertex
//! over 0 are generated: the reachable part of any emulator is again one and
//! is no larger, no denser.

use super::{rooted, EmulatorMap};
use crate::budget::Budget;
use crate::embedding::{genus_exact, is_planar, planar, EmbeddingWitness};
use crate::graphs::{Multigraph, SimpleDigraph};

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum SearchOutcome {
    Found {
        emulator: EmulatorMap,
        witness: EmbeddingWitness,
    },
    /// Every size up to the limit was ruled out.
    Exhausted,
    BudgetExhausted,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    pub nodes: u64,
    /// Largest size through which every candidate was ruled out.
    pub exhausted_through: Option<usize>,
}

impl SearchReport {
    pub fn found(&self) -> Option<(&EmulatorMap, &EmbeddingWitness)> {
        match &self.outcome {
            SearchOutcome::Found { emulator, witness } => Some((emulator, witness)),
            _ => None,
        }
    }
}

/// Fiber-size vectors of the given total, in lexicographic order.
#[derive(Clone, Debug)]
pub struct FiberSpecs {
    parts: usize,
    current: Option<Vec<usize>>,
}

impl FiberSpecs {
    pub fn new(parts: usize, total: usize) -> Self {
        let current = if parts == 0 || total < parts {
            None
        } else {
            let mut v = vec![1; parts];
            v[parts - 1] = total - parts + 1;
            Some(v)
        };
        FiberSpecs { parts, current }
    }
}

impl Iterator for FiberSpecs {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let n = self.parts;
        let mut next = None;
        let mut suffix = out[n - 1];
        for i in (0..n.saturating_sub(1)).rev() {
            // the suffix after i can give one unit back
            if suffix > n - 1 - i {
                let mut v = out.clone();
                v[i] += 1;
                for x in v.iter_mut().skip(i + 1) {
                    *x = 1;
                }
                v[n - 1] = suffix - 1 - (n - 2 - i);
                next = Some(v);
                break;
            }
            suffix += out[i];
        }
        self.current = next;
        Some(out)
    }
}

/// Searches sizes `|base| ..= max_size` for a tight emulator whose genus is
/// at most `target_genus`.
pub fn search_min_genus_emulator(
    base: &SimpleDigraph,
    max_size: usize,
    target_genus: usize,
    budget: &mut Budget,
) -> SearchReport {
    let start = budget.used();
    let n = base.num_vertices();
    let mut exhausted_through = None;
    let mut inconclusive = false;
    if n == 0 {
        return SearchReport {
            outcome: SearchOutcome::Exhausted,
            nodes: 0,
            exhausted_through,
        };
    }
    for size in n..=max_size {
        for spec in FiberSpecs::new(n, size) {
            let mut s = Searcher::new(base, &spec, target_genus);
            match s.run(budget) {
                Step::Found => {
                    let (emulator, witness) = s.found.expect("found candidate");
                    return SearchReport {
                        outcome: SearchOutcome::Found { emulator, witness },
                        nodes: budget.used() - start,
                        exhausted_through,
                    };
                }
                Step::Budget => {
                    return SearchReport {
                        outcome: SearchOutcome::BudgetExhausted,
                        nodes: budget.used() - start,
                        exhausted_through,
                    };
                }
                Step::Continue => inconclusive |= s.inconclusive,
            }
        }
        if !inconclusive {
            exhausted_through = Some(size);
        }
    }
    SearchReport {
        outcome: if inconclusive {
            SearchOutcome::BudgetExhausted
        } else {
            SearchOutcome::Exhausted
        },
        nodes: budget.used() - start,
        exhausted_through,
    }
}

#[derive(PartialEq, Eq)]
enum Step {
    Continue,
    Found,
    Budget,
}

struct Searcher<'a> {
    base: &'a SimpleDigraph,
    target: usize,
    rooted: bool,
    sizes: Vec<usize>,
    offset: Vec<usize>,
    map: Vec<usize>,
    discovered: Vec<usize>,
    queue: Vec<usize>,
    arcs: Vec<(usize, usize)>,
    adj: Vec<Vec<bool>>,
    /// `in_from[x][v]`: arcs into `x` from fiber `v`.
    in_from: Vec<Vec<usize>>,
    /// `done[x][v]`: the slot of `x` towards fiber `v` is assigned.
    done: Vec<Vec<bool>>,
    /// Remaining slots with no reciprocal arc available.
    unpaired: usize,
    undirected: usize,
    edge_cap: Option<usize>,
    inconclusive: bool,
    found: Option<(EmulatorMap, EmbeddingWitness)>,
}

impl<'a> Searcher<'a> {
    fn new(base: &'a SimpleDigraph, sizes: &[usize], target: usize) -> Self {
        let n = base.num_vertices();
        let mut offset = Vec::with_capacity(n);
        let mut map = Vec::new();
        for (v, &s) in sizes.iter().enumerate() {
            offset.push(map.len());
            map.extend(std::iter::repeat_n(v, s));
        }
        let total = map.len();
        let slots: usize = map.iter().map(|&u| base.out_neighbors(u).len()).sum();
        // a simple graph of genus g on N ≥ 3 vertices has at most 3N − 6 + 6g edges
        let edge_cap = (total >= 3).then(|| 3 * total - 6 + 6 * target);
        Searcher {
            base,
            target,
            rooted: rooted(base),
            sizes: sizes.to_vec(),
            offset,
            map,
            discovered: vec![0; n],
            queue: Vec::with_capacity(total),
            arcs: Vec::with_capacity(slots),
            adj: vec![vec![false; total]; total],
            in_from: vec![vec![0; n]; total],
            done: vec![vec![false; n]; total],
            unpaired: slots,
            undirected: 0,
            edge_cap,
            inconclusive: false,
            found: None,
        }
    }

    fn run(&mut self, budget: &mut Budget) -> Step {
        if !self.feasible() {
            return Step::Continue;
        }
        if self.rooted {
            self.discover(0);
        }
        self.dfs(0, 0, budget)
    }

    fn feasible(&self) -> bool {
        self.edge_cap
            .is_none_or(|cap| self.undirected + self.unpaired.div_ceil(2) <= cap)
    }

    fn discover(&mut self, v: usize) -> usize {
        let x = self.offset[v] + self.discovered[v];
        self.discovered[v] += 1;
        self.queue.push(x);
        x
    }

    fn undiscover(&mut self, v: usize) {
        self.discovered[v] -= 1;
        self.queue.pop();
    }

    fn slot_open_unpaired(&self, x: usize, v: usize) -> bool {
        !self.done[x][v] && self.in_from[x][v] == 0
    }

    fn add_arc(&mut self, x: usize, y: usize) {
        let (u, v) = (self.map[x], self.map[y]);
        if self.slot_open_unpaired(x, v) {
            self.unpaired -= 1;
        }
        self.done[x][v] = true;
        if self.base.has_arc(v, u) && self.slot_open_unpaired(y, u) {
            self.unpaired -= 1;
        }
        self.in_from[y][u] += 1;
        if !self.adj[y][x] {
            self.undirected += 1;
        }
        self.adj[x][y] = true;
        self.arcs.push((x, y));
    }

    fn remove_arc(&mut self, x: usize, y: usize) {
        let (u, v) = (self.map[x], self.map[y]);
        self.arcs.pop();
        self.adj[x][y] = false;
        if !self.adj[y][x] {
            self.undirected -= 1;
        }
        self.in_from[y][u] -= 1;
        if self.base.has_arc(v, u) && self.slot_open_unpaired(y, u) {
            self.unpaired += 1;
        }
        self.done[x][v] = false;
        if self.slot_open_unpaired(x, v) {
            self.unpaired += 1;
        }
    }

    fn partial_graph(&self) -> Multigraph {
        let mut g = Multigraph::new(self.map.len());
        for &(x, y) in &self.arcs {
            g.add_edge(x, y, true).expect("arc endpoints in range");
        }
        g
    }

    fn dfs(&mut self, qi: usize, si: usize, budget: &mut Budget) -> Step {
        if qi == self.queue.len() {
            if self.queue.len() == self.map.len() {
                return self.complete(budget);
            }
            if self.rooted {
                return Step::Continue;
            }
            let v = (0..self.sizes.len())
                .find(|&v| self.discovered[v] < self.sizes[v])
                .expect("an undiscovered vertex");
            self.discover(v);
            let r = self.dfs(qi, 0, budget);
            self.undiscover(v);
            return r;
        }
        let x = self.queue[qi];
        let outs = self.base.out_neighbors(self.map[x]);
        if si == outs.len() {
            if self.target == 0 && !is_planar(&self.partial_graph()) {
                return Step::Continue;
            }
            return self.dfs(qi + 1, 0, budget);
        }
        let v = outs[si];
        let known = self.offset[v]..self.offset[v] + self.discovered[v];
        // reciprocating choices add no new undirected edge, so go first
        let mut options: Vec<usize> = known.clone().filter(|&y| self.adj[y][x]).collect();
        options.extend(known.filter(|&y| !self.adj[y][x]));
        let fresh = self.discovered[v] < self.sizes[v];
        let count = options.len() + usize::from(fresh);
        for i in 0..count {
            if !budget.tick() {
                return Step::Budget;
            }
            let is_fresh = i == options.len();
            let y = if is_fresh { self.discover(v) } else { options[i] };
            self.add_arc(x, y);
            let r = if self.feasible() {
                self.dfs(qi, si + 1, budget)
            } else {
                Step::Continue
            };
            self.remove_arc(x, y);
            if is_fresh {
                self.undiscover(v);
            }
            if r != Step::Continue {
                return r;
            }
        }
        Step::Continue
    }

    fn complete(&mut self, budget: &mut Budget) -> Step {
        let total = SimpleDigraph::new(self.map.len(), self.arcs.iter().copied()).expect("tight lifts are simple");
        let emulator = EmulatorMap::new(self.base.clone(), total.clone(), self.map.clone());
        debug_assert!(emulator.is_tight() && emulator.is_emulator());
        let g = total.to_multigraph();
        if self.target == 0 {
            let witness = planar(&g).expect("checked planar");
            self.found = Some((emulator, witness));
            return Step::Found;
        }
        let r = genus_exact(&g, budget);
        if r.upper <= self.target {
            self.found = Some((emulator, r.witness.expect("genus witness")));
            return Step::Found;
        }
        if r.lower <= self.target {
            self.inconclusive = true;
            if budget.is_exhausted() {
                return Step::Budget;
            }
        }
        Step::Continue
    }
}
