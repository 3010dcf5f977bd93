//! The two graph images of an automaton and cycle structure.
//!
//! [`underlying_multigraph`] keeps one edge per transition; [`simplify`] is
//! the retraction to a simple digraph (self-loops dropped, parallel arcs
//! merged). Cycles are edge-simple closed walks in the undirected multigraph:
//! a self-loop has length 1 and a pair of parallel edges length 2.

pub(crate) mod format;

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::automata::Dfa;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    /// Set when the edge remembers a direction `u -> v`.
    pub oriented: bool,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// Endpoint at dart end `end` (0 = `u`, 1 = `v`).
    pub fn end(&self, end: usize) -> usize {
        if end == 0 {
            self.u
        } else {
            self.v
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Multigraph {
    num_vertices: usize,
    edges: Vec<Edge>,
}

impl Multigraph {
    pub fn new(num_vertices: usize) -> Self {
        Multigraph {
            num_vertices,
            edges: Vec::new(),
        }
    }

    pub fn from_edges(num_vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Multigraph::new(num_vertices);
        for (u, v) in edges {
            g.add_edge(u, v, false)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize, oriented: bool) -> Result<usize> {
        if u >= self.num_vertices || v >= self.num_vertices {
            return Err(Error::InvalidGraph(format!("edge {u}-{v} leaves the vertex set")));
        }
        self.edges.push(Edge { u, v, oriented });
        Ok(self.edges.len() - 1)
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Edge {
        self.edges[e]
    }

    /// Degree with self-loops counted twice.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.u == v) + usize::from(e.v == v))
            .sum()
    }

    /// Incident `(edge, neighbour)` pairs; a self-loop is listed once.
    pub fn incidence(&self) -> Vec<Vec<(usize, usize)>> {
        let mut inc = vec![Vec::new(); self.num_vertices];
        for (i, e) in self.edges.iter().enumerate() {
            inc[e.u].push((i, e.v));
            if !e.is_loop() {
                inc[e.v].push((i, e.u));
            }
        }
        inc
    }

    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let inc = self.incidence();
        let mut comp = vec![usize::MAX; self.num_vertices];
        let mut out = Vec::new();
        for s in 0..self.num_vertices {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &(_, y) in &inc[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Distinct undirected neighbour pairs `u < v`, loops excluded.
    pub fn simple_edges(&self) -> Vec<(usize, usize)> {
        let set: BTreeSet<(usize, usize)> = self
            .edges
            .iter()
            .filter(|e| !e.is_loop())
            .map(|e| (e.u.min(e.v), e.u.max(e.v)))
            .collect();
        set.into_iter().collect()
    }
}

/// Simple digraph: no self-loops, at most one arc per ordered pair.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SimpleDigraph {
    num_vertices: usize,
    /// sorted, deduplicated
    arcs: Vec<(usize, usize)>,
    out: Vec<Vec<usize>>,
}

impl SimpleDigraph {
    pub fn new(num_vertices: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list: Vec<(usize, usize)> = Vec::new();
        for (u, v) in arcs {
            if u >= num_vertices || v >= num_vertices {
                return Err(Error::InvalidGraph(format!("arc {u}->{v} leaves the vertex set")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            list.push((u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!("repeated arc {}->{}", w[0].0, w[0].1)));
        }
        Ok(Self::from_sorted(num_vertices, list))
    }

    fn from_sorted(num_vertices: usize, arcs: Vec<(usize, usize)>) -> Self {
        let mut out = vec![Vec::new(); num_vertices];
        for &(u, v) in &arcs {
            out[u].push(v);
        }
        SimpleDigraph {
            num_vertices,
            arcs,
            out,
        }
    }

    /// One vertex, no arcs.
    pub fn point() -> Self {
        Self::from_sorted(1, Vec::new())
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Sorted out-neighbours.
    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arc_id(u, v).is_some()
    }

    /// Arc id = position in the sorted arc list.
    pub fn arc_id(&self, u: usize, v: usize) -> Option<usize> {
        self.arcs.binary_search(&(u, v)).ok()
    }

    /// The underlying multigraph: one oriented edge per arc, so an
    /// antiparallel pair gives a 2-cycle.
    pub fn to_multigraph(&self) -> Multigraph {
        Multigraph {
            num_vertices: self.num_vertices,
            edges: self
                .arcs
                .iter()
                .map(|&(u, v)| Edge { u, v, oriented: true })
                .collect(),
        }
    }

    /// Undirected simple graph: antiparallel arcs become one edge.
    pub fn to_undirected(&self) -> Multigraph {
        let mut g = Multigraph::new(self.num_vertices);
        for (u, v) in self.to_multigraph().simple_edges() {
            g.edges.push(Edge { u, v, oriented: false });
        }
        g
    }

    /// Vertices reachable from `root` along arcs.
    pub fn reachable_from(&self, root: usize) -> Vec<bool> {
        let mut seen = vec![false; self.num_vertices];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.out[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }
}

/// A closed walk given by its edges (or arcs) and the vertex each step
/// leaves from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleWitness {
    pub edges: Vec<usize>,
    pub vertices: Vec<usize>,
    pub directed: bool,
}

impl CycleWitness {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Builds the directed closed walk `vs[0] -> vs[1] -> … -> vs[0]`.
    pub fn directed_from_vertices(g: &SimpleDigraph, vs: &[usize]) -> Result<Self> {
        if vs.is_empty() {
            return Err(Error::InvalidCycle("empty vertex sequence".into()));
        }
        let mut edges = Vec::with_capacity(vs.len());
        for (i, &u) in vs.iter().enumerate() {
            let v = vs[(i + 1) % vs.len()];
            let id = g
                .arc_id(u, v)
                .ok_or_else(|| Error::InvalidCycle(format!("no arc {u}->{v}")))?;
            edges.push(id);
        }
        let c = CycleWitness {
            edges,
            vertices: vs.to_vec(),
            directed: true,
        };
        c.validate_directed(g)?;
        Ok(c)
    }

    /// Checks that the walk is closed, follows arc directions and never
    /// repeats an arc.
    pub fn validate_directed(&self, g: &SimpleDigraph) -> Result<()> {
        if self.edges.is_empty() || self.edges.len() != self.vertices.len() {
            return Err(Error::InvalidCycle("length mismatch or empty cycle".into()));
        }
        let mut used = HashSet::new();
        for (i, &e) in self.edges.iter().enumerate() {
            let &(u, v) = g
                .arcs()
                .get(e)
                .ok_or_else(|| Error::InvalidCycle(format!("arc id {e} out of range")))?;
            if !used.insert(e) {
                return Err(Error::InvalidCycle(format!("arc {e} used twice")));
            }
            let next = self.vertices[(i + 1) % self.vertices.len()];
            if u != self.vertices[i] || v != next {
                return Err(Error::InvalidCycle(format!("step {i} does not follow arc {u}->{v}")));
            }
        }
        Ok(())
    }
}

/// One undirected edge per transition, oriented along it.
pub fn underlying_multigraph(a: &Dfa) -> Multigraph {
    let mut g = Multigraph::new(a.num_states());
    for (q, _, r) in a.transitions() {
        g.edges.push(Edge {
            u: q,
            v: r,
            oriented: true,
        });
    }
    g
}

/// The retraction R: drop self-loops and merge parallel oriented edges.
pub fn simplify(g: &Multigraph) -> Result<SimpleDigraph> {
    let mut arcs = BTreeSet::new();
    for (i, e) in g.edges.iter().enumerate() {
        if !e.oriented {
            return Err(Error::MissingOrientation(i));
        }
        if !e.is_loop() {
            arcs.insert((e.u, e.v));
        }
    }
    Ok(SimpleDigraph::from_sorted(g.num_vertices, arcs.into_iter().collect()))
}

/// Length of a shortest edge-simple cycle; `None` for forests.
pub fn girth(g: &Multigraph) -> Option<usize> {
    if g.edges.iter().any(Edge::is_loop) {
        return Some(1);
    }
    let mut pairs = HashSet::new();
    for e in &g.edges {
        if !pairs.insert((e.u.min(e.v), e.u.max(e.v))) {
            return Some(2);
        }
    }
    let n = g.num_vertices;
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in &pairs {
        adj[u].push(v);
        adj[v].push(u);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut edges: Vec<_> = pairs.into_iter().collect();
    edges.sort_unstable();
    // shortest u-v path avoiding the edge uv closes the shortest cycle through uv
    for (u, v) in edges {
        let limit = best.map_or(usize::MAX, |b| b - 1);
        dist.fill(usize::MAX);
        dist[u] = 0;
        let mut queue = VecDeque::from([u]);
        let mut touched = vec![u];
        'bfs: while let Some(x) = queue.pop_front() {
            if dist[x] + 1 >= limit {
                break;
            }
            for &y in &adj[x] {
                if (x == u && y == v) || dist[y] != usize::MAX {
                    continue;
                }
                dist[y] = dist[x] + 1;
                touched.push(y);
                if y == v {
                    best = Some(dist[y] + 1);
                    break 'bfs;
                }
                queue.push_back(y);
            }
        }
        if best == Some(3) {
            break;
        }
    }
    best
}

pub fn has_no_simple_cycle_up_to(g: &Multigraph, k: usize) -> bool {
    girth(g).is_none_or(|l| l > k)
}
