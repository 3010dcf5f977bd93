//! Planarity by path addition (Demoucron, Malgrange and Pertuiset) on each
//! biconnected block, producing a genus-0 rotation when one exists.

use std::collections::{HashMap, VecDeque};

use super::structure::{assemble, skeleton, Segments};
use super::{dart, trace_faces, EmbeddingWitness};
use crate::graphs::Multigraph;

/// A genus-0 embedding of `g`, or `None` when `g` is not planar.
pub fn planar(g: &Multigraph) -> Option<EmbeddingWitness> {
    let skel = skeleton(g);
    let mut segments = Vec::with_capacity(skel.blocks.len());
    for block in &skel.blocks {
        segments.push(block_planar(g, block)?);
    }
    let rot = assemble(g, &skel, &segments);
    let w = trace_faces(g, &rot).expect("assembled rotation is valid");
    debug_assert_eq!(w.genus, 0);
    Some(w)
}

pub fn is_planar(g: &Multigraph) -> bool {
    planar(g).is_some()
}

/// Local copy of a block: vertices renumbered densely, edges simple.
pub(crate) struct Block {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub global: Vec<usize>,
}

impl Block {
    pub fn new(g: &Multigraph, edge_ids: &[usize]) -> Block {
        let mut local: HashMap<usize, usize> = HashMap::new();
        let mut vertices = Vec::new();
        let mut edges = Vec::with_capacity(edge_ids.len());
        for &i in edge_ids {
            let e = g.edge(i);
            let mut id = |v: usize| {
                *local.entry(v).or_insert_with(|| {
                    vertices.push(v);
                    vertices.len() - 1
                })
            };
            let (u, v) = (id(e.u), id(e.v));
            edges.push((u, v));
        }
        Block {
            vertices,
            edges,
            global: edge_ids.to_vec(),
        }
    }

    /// Converts per-vertex local dart orders (`2i` at `edges[i].0`) into
    /// global segments.
    pub fn to_segments(&self, local_orders: &[Vec<usize>]) -> Segments {
        local_orders
            .iter()
            .enumerate()
            .map(|(v, list)| {
                let darts = list
                    .iter()
                    .map(|&d| dart(self.global[d / 2], d % 2))
                    .collect();
                (self.vertices[v], darts)
            })
            .collect()
    }
}

pub(crate) fn block_planar(g: &Multigraph, edge_ids: &[usize]) -> Option<Segments> {
    let block = Block::new(g, edge_ids);
    let faces = dmp(block.vertices.len(), &block.edges)?;
    Some(block.to_segments(&rotation_from_faces(block.vertices.len(), &block.edges, &faces)))
}

/// Faces (as vertex cycles) of a planar embedding of a simple biconnected
/// graph, or `None` if it is not planar.
fn dmp(n: usize, edges: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    if edges.len() == 1 {
        return Some(Vec::new());
    }
    if n >= 3 && edges.len() > 3 * n - 6 {
        return None;
    }
    let mut adj = vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((v, i));
        adj[v].push((u, i));
    }
    let mut in_v = vec![false; n];
    let mut in_e = vec![false; edges.len()];
    let cycle = find_cycle(n, edges, &adj)?;
    for (i, &v) in cycle.iter().enumerate() {
        in_v[v] = true;
        let w = cycle[(i + 1) % cycle.len()];
        let e = adj[v].iter().find(|&&(x, _)| x == w).expect("cycle edge").1;
        in_e[e] = true;
    }
    let mut faces = vec![cycle.clone(), cycle.iter().rev().copied().collect::<Vec<_>>()];
    loop {
        let fragments = fragments(n, edges, &adj, &in_v, &in_e);
        if fragments.is_empty() {
            return Some(faces);
        }
        let membership: Vec<Vec<bool>> = faces
            .iter()
            .map(|f| {
                let mut m = vec![false; n];
                for &v in f {
                    m[v] = true;
                }
                m
            })
            .collect();
        let mut chosen: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&f| frag.attachments.iter().all(|&a| membership[f][a]))
                .collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    chosen = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if chosen.is_none() {
                        chosen = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_id) = chosen.expect("some fragment");
        let path = fragment_path(&fragments[fi], &adj, &in_v);
        for w in path.windows(2) {
            let e = adj[w[0]].iter().find(|&&(x, _)| x == w[1]).expect("path edge").1;
            in_e[e] = true;
        }
        for &v in &path {
            in_v[v] = true;
        }
        let face = faces.swap_remove(face_id);
        let (a1, a2) = (path[0], *path.last().unwrap());
        let len = face.len();
        let i = face.iter().position(|&v| v == a1).expect("attachment on face");
        let j = face.iter().position(|&v| v == a2).expect("attachment on face");
        let inner = &path[1..path.len() - 1];
        let mut f1 = vec![a1];
        f1.extend_from_slice(inner);
        f1.push(a2);
        let mut k = (j + 1) % len;
        while k != i {
            f1.push(face[k]);
            k = (k + 1) % len;
        }
        let mut f2 = vec![a2];
        f2.extend(inner.iter().rev());
        f2.push(a1);
        let mut k = (i + 1) % len;
        while k != j {
            f2.push(face[k]);
            k = (k + 1) % len;
        }
        faces.push(f1);
        faces.push(f2);
    }
}

fn find_cycle(n: usize, edges: &[(usize, usize)], adj: &[Vec<(usize, usize)>]) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut tree = vec![false; edges.len()];
    let root = edges[0].0;
    depth[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &(y, e) in &adj[x] {
            if depth[y] == usize::MAX {
                depth[y] = depth[x] + 1;
                parent[y] = x;
                tree[e] = true;
                queue.push_back(y);
            }
        }
    }
    let e = tree.iter().position(|t| !t)?;
    let (mut x, mut y) = edges[e];
    let (mut left, mut right) = (vec![x], vec![y]);
    while x != y {
        if depth[x] >= depth[y] {
            x = parent[x];
            left.push(x);
        } else {
            y = parent[y];
            right.push(y);
        }
    }
    right.pop();
    left.extend(right.into_iter().rev());
    // left runs x → lca → y; the edge y–x closes it
    Some(left)
}

struct Fragment {
    attachments: Vec<usize>,
    /// Interior vertices; empty for a single chord.
    interior: Vec<usize>,
    chord: Option<usize>,
}

fn fragments(
    n: usize,
    edges: &[(usize, usize)],
    adj: &[Vec<(usize, usize)>],
    in_v: &[bool],
    in_e: &[bool],
) -> Vec<Fragment> {
    let mut out = Vec::new();
    for (i, &(u, v)) in edges.iter().enumerate() {
        if !in_e[i] && in_v[u] && in_v[v] {
            out.push(Fragment {
                attachments: vec![u, v],
                interior: Vec::new(),
                chord: Some(i),
            });
        }
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if in_v[s] || seen[s] || adj[s].is_empty() {
            continue;
        }
        seen[s] = true;
        let mut interior = vec![s];
        let mut attach = vec![false; n];
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &(y, _) in &adj[x] {
                if in_v[y] {
                    attach[y] = true;
                } else if !seen[y] {
                    seen[y] = true;
                    interior.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.push(Fragment {
            attachments: (0..n).filter(|&v| attach[v]).collect(),
            interior,
            chord: None,
        });
    }
    out
}

/// A path through the fragment joining two distinct attachments.
fn fragment_path(frag: &Fragment, adj: &[Vec<(usize, usize)>], in_v: &[bool]) -> Vec<usize> {
    if frag.chord.is_some() {
        return frag.attachments.clone();
    }
    let a1 = frag.attachments[0];
    let mut prev: HashMap<usize, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for &(y, _) in &adj[a1] {
        if !in_v[y] && frag.interior.contains(&y) && !prev.contains_key(&y) {
            prev.insert(y, a1);
            queue.push_back(y);
        }
    }
    while let Some(x) = queue.pop_front() {
        if let Some(&(a2, _)) = adj[x]
            .iter()
            .filter(|&&(y, _)| in_v[y] && y != a1)
            .min()
        {
            let mut path = vec![a2, x];
            let mut cur = x;
            while let Some(&p) = prev.get(&cur) {
                path.push(p);
                cur = p;
                if p == a1 {
                    break;
                }
            }
            path.reverse();
            return path;
        }
        for &(y, _) in &adj[x] {
            if !in_v[y] && !prev.contains_key(&y) {
                prev.insert(y, x);
                queue.push_back(y);
            }
        }
    }
    unreachable!("a fragment of a biconnected graph has two attachments")
}

/// Reads the rotation off the face boundaries: walking `u → v → w` along a
/// face means the dart of `vw` follows the dart of `vu` at `v`.
pub(crate) fn rotation_from_faces(n: usize, edges: &[(usize, usize)], faces: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut at: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, &(u, v)) in edges.iter().enumerate() {
        at.insert((u, v), 2 * i);
        at.insert((v, u), 2 * i + 1);
    }
    let mut succ = vec![usize::MAX; 2 * edges.len()];
    for f in faces {
        let len = f.len();
        for i in 0..len {
            let (u, v, w) = (f[(i + len - 1) % len], f[i], f[(i + 1) % len]);
            succ[at[&(v, u)]] = at[&(v, w)];
        }
    }
    let mut order = vec![Vec::new(); n];
    let mut placed = vec![false; 2 * edges.len()];
    if faces.is_empty() {
        // a single edge
        order[edges[0].0].push(0);
        order[edges[0].1].push(1);
        return order;
    }
    for d in 0..2 * edges.len() {
        if placed[d] {
            continue;
        }
        let v = if d % 2 == 0 { edges[d / 2].0 } else { edges[d / 2].1 };
        if !order[v].is_empty() {
            continue;
        }
        let mut x = d;
        while !placed[x] {
            placed[x] = true;
            order[v].push(x);
            x = succ[x];
        }
    }
    order
}
