//! Directed emulators of simple digraphs.
//!
//! A map `p: V' → V` is a directed emulator map when it is onto and every
//! base arc `u → v` lifts from every vertex over `u` to some vertex over `v`.

mod format;
mod random;
mod search;

use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::graphs::{has_no_simple_cycle_up_to, simplify, underlying_multigraph, CycleWitness, SimpleDigraph};

pub use random::{random_fiber_sizes, random_tight_emulator};
pub use search::{search_min_genus_emulator, FiberSpecs, SearchOutcome, SearchReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmulatorMap {
    pub base: SimpleDigraph,
    pub total: SimpleDigraph,
    /// `map[x']` is the base vertex under total vertex `x'`.
    pub map: Vec<usize>,
}

impl EmulatorMap {
    pub fn new(base: SimpleDigraph, total: SimpleDigraph, map: Vec<usize>) -> Self {
        EmulatorMap { base, total, map }
    }

    pub fn identity(g: &SimpleDigraph) -> Self {
        EmulatorMap::new(g.clone(), g.clone(), (0..g.num_vertices()).collect())
    }

    /// The map onto the one-vertex digraph with no arcs.
    pub fn to_point(g: &SimpleDigraph) -> Self {
        EmulatorMap::new(SimpleDigraph::point(), g.clone(), vec![0; g.num_vertices()])
    }

    pub fn fiber(&self, v: usize) -> Vec<usize> {
        (0..self.map.len()).filter(|&x| self.map[x] == v).collect()
    }

    pub fn fiber_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.base.num_vertices()];
        for &v in &self.map {
            if v < sizes.len() {
                sizes[v] += 1;
            }
        }
        sizes
    }

    /// Checks the map, surjectivity and the lifting condition; the error
    /// names the first violation.
    pub fn verify(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidEmulator(msg));
        if self.map.len() != self.total.num_vertices() {
            return bad(format!(
                "map has {} entries for {} total vertices",
                self.map.len(),
                self.total.num_vertices()
            ));
        }
        if let Some(x) = self.map.iter().position(|&v| v >= self.base.num_vertices()) {
            return bad(format!("vertex {x} maps outside the base"));
        }
        if let Some(v) = self.fiber_sizes().iter().position(|&s| s == 0) {
            return bad(format!("base vertex {v} has an empty fiber"));
        }
        for &(u, v) in self.base.arcs() {
            for x in self.fiber(u) {
                if !self.total.out_neighbors(x).iter().any(|&y| self.map[y] == v) {
                    return bad(format!("arc {u}->{v} does not lift at total vertex {x}"));
                }
            }
        }
        Ok(())
    }

    pub fn is_emulator(&self) -> bool {
        self.verify().is_ok()
    }

    /// Every total arc lies over a base arc.
    pub fn is_morphism(&self) -> bool {
        self.total
            .arcs()
            .iter()
            .all(|&(x, y)| self.base.has_arc(self.map[x], self.map[y]))
    }

    /// Exactly one lifted arc per total vertex and base out-neighbour, and
    /// nothing else.
    pub fn is_tight(&self) -> bool {
        self.is_morphism()
            && (0..self.total.num_vertices())
                .all(|x| self.total.out_neighbors(x).len() == self.base.out_neighbors(self.map[x]).len())
    }

    /// `self` over `lower.total`, composed with `lower`: an emulator of
    /// `lower.base`.
    pub fn compose(&self, lower: &EmulatorMap) -> Result<EmulatorMap> {
        if self.base != lower.total {
            return Err(Error::InvalidEmulator("composition needs matching middle digraphs".into()));
        }
        Ok(EmulatorMap::new(
            lower.base.clone(),
            self.total.clone(),
            self.map.iter().map(|&y| lower.map[y]).collect(),
        ))
    }
}

/// A fibered product with its two coordinate projections.
#[derive(Clone, Debug)]
pub struct FiberedProduct {
    /// Pairs `(x, y)` with `p1(x) = p2(y)`, in lexicographic order.
    pub pairs: Vec<(usize, usize)>,
    pub emulator: EmulatorMap,
    pub left: EmulatorMap,
    pub right: EmulatorMap,
}

/// The fibered product of two emulators over a common base. Both maps must
/// send arcs to arcs, so that the coordinate projections are emulators.
pub fn fibered_product(p1: &EmulatorMap, p2: &EmulatorMap) -> Result<FiberedProduct> {
    if p1.base != p2.base {
        return Err(Error::InvalidEmulator("fibered product needs a common base".into()));
    }
    p1.verify()?;
    p2.verify()?;
    if !p1.is_morphism() || !p2.is_morphism() {
        return Err(Error::Precondition(
            "fibered product needs emulators whose arcs lie over base arcs".into(),
        ));
    }
    let base = &p1.base;
    let mut pairs = Vec::new();
    for x in 0..p1.map.len() {
        for y in 0..p2.map.len() {
            if p1.map[x] == p2.map[y] {
                pairs.push((x, y));
            }
        }
    }
    let index = |x: usize, y: usize| pairs.binary_search(&(x, y)).ok();
    let mut arcs = Vec::new();
    for (i, &(x, y)) in pairs.iter().enumerate() {
        for &x2 in p1.total.out_neighbors(x) {
            for &y2 in p2.total.out_neighbors(y) {
                if p1.map[x2] == p2.map[y2] && base.has_arc(p1.map[x], p1.map[x2]) {
                    arcs.push((i, index(x2, y2).expect("pair in product")));
                }
            }
        }
    }
    let total = SimpleDigraph::new(pairs.len(), arcs)?;
    let emulator = EmulatorMap::new(base.clone(), total.clone(), pairs.iter().map(|&(x, _)| p1.map[x]).collect());
    let left = EmulatorMap::new(p1.total.clone(), total.clone(), pairs.iter().map(|&(x, _)| x).collect());
    let right = EmulatorMap::new(p2.total.clone(), total, pairs.iter().map(|&(_, y)| y).collect());
    Ok(FiberedProduct {
        pairs,
        emulator,
        left,
        right,
    })
}

/// Lifts a simple directed base cycle from `start`, always taking the
/// smallest lifted target, until a (position, vertex) state repeats; the
/// closed part of the walk is a simple directed cycle whose length is a
/// multiple of the base length.
pub fn lift_cycle(m: &EmulatorMap, c: &CycleWitness, start: usize) -> Result<CycleWitness> {
    if !c.directed {
        return Err(Error::InvalidCycle("cycle must respect arc directions".into()));
    }
    c.validate_directed(&m.base)?;
    if start >= m.map.len() || m.map[start] != c.vertices[0] {
        return Err(Error::InvalidCycle(format!(
            "start vertex {start} is not over base vertex {}",
            c.vertices[0]
        )));
    }
    let k = c.len();
    let mut first_seen = std::collections::HashMap::new();
    let mut walk = vec![start];
    let mut x = start;
    let mut step = 0usize;
    loop {
        let pos = step % k;
        if let Some(&at) = first_seen.get(&(pos, x)) {
            let vertices: Vec<usize> = walk[at..walk.len() - 1].to_vec();
            let edges = (0..vertices.len())
                .map(|i| {
                    let (a, b) = (vertices[i], vertices[(i + 1) % vertices.len()]);
                    m.total.arc_id(a, b).expect("walk follows arcs")
                })
                .collect();
            let lifted = CycleWitness {
                edges,
                vertices,
                directed: true,
            };
            lifted.validate_directed(&m.total)?;
            return Ok(lifted);
        }
        first_seen.insert((pos, x), step);
        let next_base = c.vertices[(pos + 1) % k];
        let y = m
            .total
            .out_neighbors(x)
            .iter()
            .copied()
            .find(|&y| m.map[y] == next_base)
            .ok_or_else(|| Error::InvalidEmulator(format!("arc into fiber {next_base} missing at {x}")))?;
        walk.push(y);
        x = y;
        step += 1;
    }
}

/// With a base free of simple cycles of length ≤ k, reports whether the
/// total is too.
pub fn girth_preserved(m: &EmulatorMap, k: usize) -> Result<bool> {
    if !has_no_simple_cycle_up_to(&m.base.to_multigraph(), k) {
        return Err(Error::Precondition(format!("base has a simple cycle of length ≤ {k}")));
    }
    Ok(has_no_simple_cycle_up_to(&m.total.to_multigraph(), k))
}

/// Labels the total digraph as an automaton over `a_min`: each state takes,
/// per letter, the smallest lifted target; loops of `a_min` stay loops.
pub fn lift_to_automaton(m: &EmulatorMap, a_min: &Dfa) -> Result<Dfa> {
    let base = simplify(&underlying_multigraph(a_min))?;
    if base != m.base {
        return Err(Error::Precondition(
            "emulator base is not the digraph of the automaton".into(),
        ));
    }
    let n = m.total.num_vertices();
    let mut trans = Vec::new();
    for x2 in 0..n {
        let x = m.map[x2];
        for a in 0..a_min.alphabet_size() {
            let Some(y) = a_min.transition(x, a) else { continue };
            let target = if y == x {
                x2
            } else {
                m.total
                    .out_neighbors(x2)
                    .iter()
                    .copied()
                    .find(|&t| m.map[t] == y)
                    .ok_or_else(|| Error::Lift {
                        vertex: x2,
                        symbol: a_min.alphabet()[a].clone(),
                    })?
            };
            trans.push((x2, a, target));
        }
    }
    let initial = (0..n)
        .find(|&x2| m.map[x2] == a_min.initial())
        .ok_or_else(|| Error::InvalidEmulator("initial state has an empty fiber".into()))?;
    let finals: Vec<usize> = (0..n).filter(|&x2| a_min.is_final(m.map[x2])).collect();
    Ok(Dfa::new(a_min.alphabet().to_vec(), n, initial, &finals, trans)?.trim())
}

/// Vertices of `g` reachable from vertex 0 cover `g`.
pub(crate) fn rooted(g: &SimpleDigraph) -> bool {
    g.num_vertices() == 0 || g.reachable_from(0).iter().all(|&r| r)
}
