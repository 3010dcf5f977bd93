use rand::Rng;

use super::EmulatorMap;
use crate::graphs::SimpleDigraph;

pub fn random_fiber_sizes<R: Rng + ?Sized>(rng: &mut R, base_vertices: usize, max_fiber: usize) -> Vec<usize> {
    (0..base_vertices).map(|_| rng.gen_range(1..=max_fiber.max(1))).collect()
}

/// A tight emulator with the given fiber sizes: every total vertex gets one
/// arc into a uniformly chosen vertex of each out-neighbour fiber.
pub fn random_tight_emulator<R: Rng + ?Sized>(base: &SimpleDigraph, sizes: &[usize], rng: &mut R) -> EmulatorMap {
    assert_eq!(sizes.len(), base.num_vertices(), "one fiber size per base vertex");
    assert!(sizes.iter().all(|&s| s > 0), "fibers are nonempty");
    let mut offset = Vec::with_capacity(sizes.len());
    let mut map = Vec::new();
    for (v, &s) in sizes.iter().enumerate() {
        offset.push(map.len());
        map.extend(std::iter::repeat_n(v, s));
    }
    let mut arcs = Vec::new();
    for (x, &u) in map.iter().enumerate() {
        for &v in base.out_neighbors(u) {
            arcs.push((x, offset[v] + rng.gen_range(0..sizes[v])));
        }
    }
    let total = SimpleDigraph::new(map.len(), arcs).expect("tight lifts are simple");
    EmulatorMap::new(base.clone(), total, map)
}
