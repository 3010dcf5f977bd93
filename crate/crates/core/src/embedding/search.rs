//! Exact genus by iterative deepening over edge insertions.
//!
//! Each block is rebuilt edge by edge in a connected order. Inserting an edge
//! picks a corner at each endpoint; both corners on one face split it and
//! keep the genus, corners on two faces merge them and add a handle. Every
//! rotation system is reached exactly once, so the search at threshold `t`
//! is exhaustive for embeddings of genus at most `t`.

use super::planarity::{block_planar, Block};
use super::structure::{assemble, skeleton, Segments};
use super::{trace_faces, GenusInterval};
use crate::budget::Budget;
use crate::graphs::{girth, Multigraph};

/// Orientable genus of `g` (summed over components) within `budget`.
pub fn genus_exact(g: &Multigraph, budget: &mut Budget) -> GenusInterval {
    let skel = skeleton(g);
    let start = budget.used();
    let (mut lower, mut upper, mut exact) = (0, 0, true);
    let mut segments: Vec<Segments> = Vec::with_capacity(skel.blocks.len());
    for block in &skel.blocks {
        if let Some(seg) = block_planar(g, block) {
            segments.push(seg);
            continue;
        }
        let b = Block::new(g, block);
        let result = BlockSearch::new(&b).solve(budget);
        lower += result.lower;
        upper += result.upper;
        exact &= result.lower == result.upper;
        segments.push(b.to_segments(&result.orders));
    }
    let rot = assemble(g, &skel, &segments);
    let witness = trace_faces(g, &rot).expect("assembled rotation is valid");
    debug_assert_eq!(witness.genus, upper);
    GenusInterval {
        lower,
        upper,
        exact,
        witness: Some(witness),
        budget_exhausted: !exact,
        nodes: budget.used() - start,
    }
}

struct BlockResult {
    lower: usize,
    upper: usize,
    orders: Vec<Vec<usize>>,
}

const NONE: usize = usize::MAX;

struct BlockSearch {
    n: usize,
    /// Edges in insertion order; `perm[k]` is the block edge index.
    edges: Vec<(usize, usize)>,
    perm: Vec<usize>,
    succ: Vec<usize>,
    pred: Vec<usize>,
    deg: Vec<usize>,
    anchor: Vec<usize>,
    reflection_fixed: bool,
    face_of: Vec<usize>,
    best: Option<Vec<Vec<usize>>>,
}

impl BlockSearch {
    fn new(block: &Block) -> Self {
        let n = block.vertices.len();
        let perm = insertion_order(n, &block.edges);
        let edges: Vec<(usize, usize)> = perm.iter().map(|&i| block.edges[i]).collect();
        let darts = 2 * edges.len();
        BlockSearch {
            n,
            edges,
            perm,
            succ: vec![NONE; darts],
            pred: vec![NONE; darts],
            deg: vec![0; n],
            anchor: vec![NONE; n],
            reflection_fixed: false,
            face_of: vec![NONE; darts],
            best: None,
        }
    }

    fn solve(mut self, budget: &mut Budget) -> BlockResult {
        let e = self.edges.len();
        let gamma = {
            let g = Multigraph::from_edges(self.n, self.edges.iter().copied()).expect("block edges");
            girth(&g).unwrap_or(usize::MAX)
        };
        // every face has length at least the girth
        let max_faces = 2 * e / gamma;
        let euler = (2 + e) as i64 - self.n as i64 - max_faces as i64;
        let mut lower = (euler.max(0) as usize).div_ceil(2).max(1);
        // the first leaf of the split-first order is a greedy embedding
        let mut upper = {
            let mut free = Budget::unlimited();
            self.dfs(0, 0, usize::MAX, &mut free);
            self.genus_of_best()
        };
        while lower < upper {
            match self.dfs(0, 0, lower, budget) {
                Outcome::Found => {
                    upper = self.genus_of_best();
                    break;
                }
                Outcome::Exhausted => lower += 1,
                Outcome::OutOfBudget => break,
            }
        }
        let orders = self.best.take().expect("greedy pass records an embedding");
        let orders = self.to_block_order(orders);
        BlockResult { lower, upper, orders }
    }

    fn genus_of_best(&self) -> usize {
        let orders = self.best.as_ref().expect("embedding");
        let darts = 2 * self.edges.len();
        let mut succ = vec![NONE; darts];
        for list in orders {
            for (i, &d) in list.iter().enumerate() {
                succ[d] = list[(i + 1) % list.len()];
            }
        }
        let mut seen = vec![false; darts];
        let mut faces = 0;
        for s in 0..darts {
            if seen[s] {
                continue;
            }
            faces += 1;
            let mut d = s;
            while !seen[d] {
                seen[d] = true;
                d = succ[d ^ 1];
            }
        }
        (2 + self.edges.len() - self.n - faces) / 2
    }

    /// Maps darts from insertion order back to block edge order.
    fn to_block_order(&self, orders: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        orders
            .into_iter()
            .map(|l| l.into_iter().map(|d| 2 * self.perm[d / 2] + d % 2).collect())
            .collect()
    }

    fn label_faces(&mut self, darts: usize) {
        self.face_of[..darts].fill(NONE);
        let mut id = 0;
        for s in 0..darts {
            if self.face_of[s] != NONE {
                continue;
            }
            let mut d = s;
            while self.face_of[d] == NONE {
                self.face_of[d] = id;
                d = self.succ[d ^ 1];
            }
            id += 1;
        }
    }

    fn corners(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.deg[v]);
        if self.deg[v] == 0 {
            out.push(NONE);
            return out;
        }
        let mut x = self.anchor[v];
        loop {
            out.push(x);
            x = self.succ[x];
            if x == self.anchor[v] {
                break;
            }
        }
        out
    }

    fn insert(&mut self, d: usize, v: usize, after: usize) {
        if after == NONE {
            self.succ[d] = d;
            self.pred[d] = d;
            self.anchor[v] = d;
        } else {
            let next = self.succ[after];
            self.succ[after] = d;
            self.pred[d] = after;
            self.succ[d] = next;
            self.pred[next] = d;
        }
        self.deg[v] += 1;
    }

    fn remove(&mut self, d: usize, v: usize) {
        self.deg[v] -= 1;
        if self.deg[v] == 0 {
            self.anchor[v] = NONE;
        } else {
            let (p, s) = (self.pred[d], self.succ[d]);
            self.succ[p] = s;
            self.pred[s] = p;
        }
        self.succ[d] = NONE;
        self.pred[d] = NONE;
    }

    fn record(&mut self) {
        let mut orders = vec![Vec::new(); self.n];
        for (v, list) in orders.iter_mut().enumerate() {
            if self.deg[v] > 0 {
                let mut x = self.anchor[v];
                loop {
                    list.push(x);
                    x = self.succ[x];
                    if x == self.anchor[v] {
                        break;
                    }
                }
            }
        }
        self.best = Some(orders);
    }

    /// Looks for a completion of genus at most `t`.
    fn dfs(&mut self, k: usize, genus: usize, t: usize, budget: &mut Budget) -> Outcome {
        if k == self.edges.len() {
            self.record();
            return Outcome::Found;
        }
        if !budget.tick() {
            return Outcome::OutOfBudget;
        }
        let (u, v) = self.edges[k];
        let (a, b) = (2 * k, 2 * k + 1);
        let mut cu = self.corners(u);
        let mut cv = self.corners(v);
        let fix = !self.reflection_fixed && (self.deg[u] >= 2 || self.deg[v] >= 2);
        if fix {
            if self.deg[u] >= 2 {
                cu.truncate(1);
            } else {
                cv.truncate(1);
            }
            self.reflection_fixed = true;
        }
        let attached = self.deg[u] > 0 && self.deg[v] > 0;
        let mut options: Vec<(usize, usize, bool)> = Vec::with_capacity(cu.len() * cv.len());
        if attached {
            self.label_faces(2 * k);
            for &x in &cu {
                for &y in &cv {
                    let split = self.face_of[self.succ[x]] == self.face_of[self.succ[y]];
                    options.push((x, y, split));
                }
            }
            // splits keep the genus, so try them first
            options.sort_by_key(|&(_, _, split)| !split);
        } else {
            for &x in &cu {
                for &y in &cv {
                    options.push((x, y, true));
                }
            }
        }
        let mut outcome = Outcome::Exhausted;
        for (x, y, split) in options {
            let g2 = if split { genus } else { genus + 1 };
            if g2 > t {
                continue;
            }
            self.insert(a, u, x);
            self.insert(b, v, y);
            let r = self.dfs(k + 1, g2, t, budget);
            self.remove(b, v);
            self.remove(a, u);
            match r {
                Outcome::Exhausted => {}
                other => {
                    outcome = other;
                    break;
                }
            }
        }
        if fix {
            self.reflection_fixed = false;
        }
        outcome
    }
}

enum Outcome {
    Found,
    Exhausted,
    OutOfBudget,
}

/// Connected insertion order: edges closing a cycle among placed vertices
/// first, otherwise the edge reaching the highest-degree new vertex.
fn insertion_order(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut degree = vec![0; n];
    for &(u, v) in edges {
        degree[u] += 1;
        degree[v] += 1;
    }
    let mut placed = vec![false; n];
    let mut used = vec![false; edges.len()];
    let root = (0..n).max_by_key(|&v| (degree[v], std::cmp::Reverse(v))).unwrap_or(0);
    placed[root] = true;
    let mut order = Vec::with_capacity(edges.len());
    while order.len() < edges.len() {
        let closing = (0..edges.len()).find(|&i| !used[i] && placed[edges[i].0] && placed[edges[i].1]);
        let next = closing.or_else(|| {
            (0..edges.len())
                .filter(|&i| !used[i] && (placed[edges[i].0] ^ placed[edges[i].1]))
                .max_by_key(|&i| {
                    let (u, v) = edges[i];
                    let fresh = if placed[u] { v } else { u };
                    (degree[fresh], std::cmp::Reverse(i))
                })
        });
        let i = next.expect("block is connected");
        used[i] = true;
        placed[edges[i].0] = true;
        placed[edges[i].1] = true;
        order.push(i);
    }
    order
}
