//! Rotation systems, face tracing and orientable genus.
//!
//! A dart is one end of an edge: dart `2e` sits at `edge(e).u` and dart
//! `2e + 1` at `edge(e).v`, so a self-loop contributes two darts at the same
//! vertex and `twin(d) = d ^ 1`. A rotation lists the darts at each vertex in
//! cyclic order; faces are the orbits of `d ↦ σ(twin(d))`, where `σ` moves
//! one step along the rotation.

mod format;
mod planarity;
mod search;
mod structure;

use std::collections::BTreeMap;

use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::Multigraph;

pub use format::WitnessClaim;
pub use planarity::{is_planar, planar};
pub use search::genus_exact;

/// Face length ↦ number of faces of that length.
pub type FaceCensus = BTreeMap<usize, usize>;

pub fn dart(edge: usize, end: usize) -> usize {
    2 * edge + end
}

pub fn dart_edge(d: usize) -> usize {
    d / 2
}

pub fn dart_end(d: usize) -> usize {
    d % 2
}

pub fn twin(d: usize) -> usize {
    d ^ 1
}

fn dart_vertex(g: &Multigraph, d: usize) -> usize {
    g.edge(dart_edge(d)).end(dart_end(d))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RotationSystem {
    order: Vec<Vec<usize>>,
}

impl RotationSystem {
    pub fn new(order: Vec<Vec<usize>>) -> Self {
        RotationSystem { order }
    }

    /// Darts at each vertex in edge order; one particular rotation.
    pub fn identity(g: &Multigraph) -> Self {
        let mut order = vec![Vec::new(); g.num_vertices()];
        for d in 0..2 * g.num_edges() {
            order[dart_vertex(g, d)].push(d);
        }
        RotationSystem { order }
    }

    pub fn random<R: Rng + ?Sized>(g: &Multigraph, rng: &mut R) -> Self {
        let mut rot = Self::identity(g);
        for list in &mut rot.order {
            list.shuffle(rng);
        }
        rot
    }

    pub fn num_vertices(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self, v: usize) -> &[usize] {
        &self.order[v]
    }

    pub fn orders(&self) -> &[Vec<usize>] {
        &self.order
    }

    /// Every dart of `g` appears exactly once, at its own vertex.
    pub fn validate(&self, g: &Multigraph) -> Result<()> {
        if self.order.len() != g.num_vertices() {
            return Err(Error::InvalidRotation(format!(
                "{} vertex orders for {} vertices",
                self.order.len(),
                g.num_vertices()
            )));
        }
        let darts = 2 * g.num_edges();
        let mut seen = vec![false; darts];
        for (v, list) in self.order.iter().enumerate() {
            for &d in list {
                if d >= darts {
                    return Err(Error::InvalidRotation(format!("dart {d} does not exist")));
                }
                if seen[d] {
                    return Err(Error::InvalidRotation(format!("dart {d} listed twice")));
                }
                seen[d] = true;
                if dart_vertex(g, d) != v {
                    return Err(Error::InvalidRotation(format!("dart {d} is not at vertex {v}")));
                }
            }
        }
        if let Some(d) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidRotation(format!("dart {d} missing")));
        }
        Ok(())
    }

    /// The permutation `σ` as a table over darts.
    fn successor(&self, darts: usize) -> Vec<usize> {
        let mut succ = vec![usize::MAX; darts];
        for list in &self.order {
            for (i, &d) in list.iter().enumerate() {
                succ[d] = list[(i + 1) % list.len()];
            }
        }
        succ
    }

    /// Reverses every vertex order; the mirror embedding has the same genus.
    pub fn reflected(&self) -> Self {
        RotationSystem {
            order: self
                .order
                .iter()
                .map(|l| l.iter().rev().copied().collect())
                .collect(),
        }
    }
}

/// A rotation system together with its traced faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingWitness {
    pub graph: Multigraph,
    pub rotation: RotationSystem,
    /// Isolated vertices count as faces of length 0.
    pub census: FaceCensus,
    pub genus: usize,
}

impl EmbeddingWitness {
    pub fn num_faces(&self) -> usize {
        self.census.values().sum()
    }

    /// Re-traces the faces and checks the stored census and genus.
    pub fn verify(&self) -> Result<()> {
        let fresh = trace_faces(&self.graph, &self.rotation)?;
        if fresh.census != self.census {
            return Err(Error::InvalidCensus(format!(
                "stored census {:?} but traced {:?}",
                self.census, fresh.census
            )));
        }
        if fresh.genus != self.genus {
            return Err(Error::InvalidRotation(format!(
                "stored genus {} but traced {}",
                self.genus, fresh.genus
            )));
        }
        Ok(())
    }
}

/// Face orbits of a rotation system as dart sequences.
pub fn faces(g: &Multigraph, rot: &RotationSystem) -> Result<Vec<Vec<usize>>> {
    rot.validate(g)?;
    let darts = 2 * g.num_edges();
    let succ = rot.successor(darts);
    let mut done = vec![false; darts];
    let mut out = Vec::new();
    for start in 0..darts {
        if done[start] {
            continue;
        }
        let mut face = Vec::new();
        let mut d = start;
        while !done[d] {
            done[d] = true;
            face.push(d);
            d = succ[twin(d)];
        }
        out.push(face);
    }
    Ok(out)
}

/// Traces faces and reads the genus off Euler's relation, summed over
/// connected components.
pub fn trace_faces(g: &Multigraph, rot: &RotationSystem) -> Result<EmbeddingWitness> {
    let faces = faces(g, rot)?;
    let mut census = FaceCensus::new();
    for f in &faces {
        *census.entry(f.len()).or_default() += 1;
    }
    let isolated = (0..g.num_vertices()).filter(|&v| rot.order[v].is_empty()).count();
    if isolated > 0 {
        *census.entry(0).or_default() += isolated;
    }
    let c = g.components().len() as i64;
    let f = (faces.len() + isolated) as i64;
    let twice = 2 * c - g.num_vertices() as i64 + g.num_edges() as i64 - f;
    debug_assert!(twice >= 0 && twice % 2 == 0, "Euler relation broken");
    Ok(EmbeddingWitness {
        graph: g.clone(),
        rotation: rot.clone(),
        census,
        genus: (twice / 2) as usize,
    })
}

/// `1 + Σ_k (k(m−1) − 2m)/(4m) · f_k` for an embedding of a complete
/// automaton with `n` states over `m` letters.
pub fn face_census_genus(m: usize, n: usize, census: &FaceCensus) -> Result<Rational64> {
    if m == 0 {
        return Err(Error::Domain("alphabet size must be positive".into()));
    }
    let darts: usize = census.iter().map(|(k, f)| k * f).sum();
    if darts != 2 * n * m {
        return Err(Error::InvalidCensus(format!(
            "Σ k·f_k = {darts}, expected 2nm = {}",
            2 * n * m
        )));
    }
    let (m, mut total) = (m as i64, Rational64::from_integer(1));
    for (&k, &f) in census {
        total += Rational64::new((k as i64 * (m - 1) - 2 * m) * f as i64, 4 * m);
    }
    Ok(total)
}

/// Result of an exact-genus computation under a budget.
#[derive(Clone, Debug, Serialize)]
pub struct GenusInterval {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    #[serde(skip)]
    pub witness: Option<EmbeddingWitness>,
    pub budget_exhausted: bool,
    pub nodes: u64,
}
