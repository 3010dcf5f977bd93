//! Reduction of a multigraph to simple biconnected blocks and reassembly of
//! block rotations into a rotation of the whole graph.
//!
//! Genus is additive over blocks, and a self-loop or an edge parallel to an
//! existing one can always be drawn inside a new face of its own.

use std::collections::HashMap;

use super::{dart, RotationSystem};
use crate::graphs::Multigraph;

pub(crate) struct Skeleton {
    /// Representative edges of each block, by global edge id.
    pub blocks: Vec<Vec<usize>>,
    /// `(edge, representative)` for every repeated vertex pair.
    pub parallels: Vec<(usize, usize)>,
    pub loops: Vec<usize>,
}

/// Block rotation: for each block vertex, its darts in cyclic order.
pub(crate) type Segments = Vec<(usize, Vec<usize>)>;

pub(crate) fn skeleton(g: &Multigraph) -> Skeleton {
    let mut reps: HashMap<(usize, usize), usize> = HashMap::new();
    let mut simple = Vec::new();
    let mut parallels = Vec::new();
    let mut loops = Vec::new();
    for (i, e) in g.edges().iter().enumerate() {
        if e.is_loop() {
            loops.push(i);
            continue;
        }
        let key = (e.u.min(e.v), e.u.max(e.v));
        match reps.get(&key) {
            Some(&r) => parallels.push((i, r)),
            None => {
                reps.insert(key, i);
                simple.push(i);
            }
        }
    }
    Skeleton {
        blocks: biconnected_blocks(g, &simple),
        parallels,
        loops,
    }
}

/// Biconnected components over the given edges, each a list of edge ids.
fn biconnected_blocks(g: &Multigraph, edges: &[usize]) -> Vec<Vec<usize>> {
    let n = g.num_vertices();
    let mut adj = vec![Vec::new(); n];
    for &i in edges {
        let e = g.edge(i);
        adj[e.u].push((e.v, i));
        adj[e.v].push((e.u, i));
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut stack: Vec<usize> = Vec::new();
    let mut blocks = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX || adj[root].is_empty() {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // frames: (vertex, edge used to enter, next adjacency index)
        let mut frames = vec![(root, usize::MAX, 0usize)];
        while let Some(top) = frames.last_mut() {
            let (v, via) = (top.0, top.1);
            if top.2 < adj[v].len() {
                let (w, e) = adj[v][top.2];
                top.2 += 1;
                if e == via {
                    continue;
                }
                if disc[w] == usize::MAX {
                    stack.push(e);
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    frames.push((w, e, 0));
                } else if disc[w] < disc[v] {
                    stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if let Some(&(p, _, _)) = frames.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(e) = stack.pop() {
                            block.push(e);
                            if e == via {
                                break;
                            }
                        }
                        block.sort_unstable();
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}

/// Concatenates block segments at each vertex, then draws every parallel
/// edge as a digon beside its representative and every loop as a 1-face.
pub(crate) fn assemble(g: &Multigraph, skel: &Skeleton, segments: &[Segments]) -> RotationSystem {
    let mut order = vec![Vec::new(); g.num_vertices()];
    for block in segments {
        for (v, darts) in block {
            order[*v].extend_from_slice(darts);
        }
    }
    for &(e, r) in &skel.parallels {
        let rep = g.edge(r);
        let (a, b) = (dart(r, 0), dart(r, 1));
        let (a2, b2) = if g.edge(e).u == rep.u {
            (dart(e, 0), dart(e, 1))
        } else {
            (dart(e, 1), dart(e, 0))
        };
        let at_u = &mut order[rep.u];
        let i = at_u.iter().position(|&d| d == a).expect("representative dart placed");
        at_u.insert(i, a2);
        let at_v = &mut order[rep.v];
        let j = at_v.iter().position(|&d| d == b).expect("representative dart placed");
        at_v.insert(j + 1, b2);
    }
    for &l in &skel.loops {
        let w = g.edge(l).u;
        order[w].push(dart(l, 1));
        order[w].push(dart(l, 0));
    }
    RotationSystem::new(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::trace_faces;

    #[test]
    fn blocks_of_bowtie_with_tail() {
        // two triangles sharing vertex 2, plus a pendant edge 4-5
        let g = Multigraph::from_edges(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (4, 5)]).unwrap();
        let skel = skeleton(&g);
        let mut blocks = skel.blocks.clone();
        blocks.sort();
        assert_eq!(blocks, vec![vec![0, 1, 2], vec![3, 4, 5], vec![6]]);
    }

    #[test]
    fn loops_and_parallels_keep_genus() {
        let g = Multigraph::from_edges(3, [(0, 1), (1, 2), (2, 0), (1, 0), (0, 1), (2, 2), (1, 1)]).unwrap();
        let skel = skeleton(&g);
        assert_eq!(skel.parallels, vec![(3, 0), (4, 0)]);
        assert_eq!(skel.loops, vec![5, 6]);
        let tri: Segments = vec![(0, vec![0, 5]), (1, vec![1, 2]), (2, vec![3, 4])];
        let rot = assemble(&g, &skel, &[tri]);
        let w = trace_faces(&g, &rot).unwrap();
        assert_eq!(w.genus, 0);
        assert_eq!(w.census.get(&2), Some(&2));
        assert_eq!(w.census.get(&1), Some(&2));
    }
}
