//! Helpers shared by the property tests and the acceptance run.

use oridiam::generators::random_bridgeless;
use oridiam::graph::{edge, Edge, VertexId};
use oridiam::orientation::{is_strongly_connected, robbins_orient, Orientation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeSet, VecDeque};

/// A strong orientation of a small random bridgeless graph: random arc
/// directions by rejection, Robbins if none turns up.
pub fn strong_orientation(n: usize, extra: usize, seed: u64) -> Orientation {
    let g = random_bridgeless(n, n + extra, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    for _ in 0..200 {
        let forward: Vec<bool> = (0..g.m()).map(|_| rng.gen()).collect();
        let h = Orientation::from_forward(g.clone(), forward);
        if is_strongly_connected(&h) {
            return h;
        }
    }
    robbins_orient(&g).unwrap()
}

/// Simple directed cycle found by walking random out-arcs from `start`.
pub fn directed_cycle(h: &Orientation, start: VertexId, rng: &mut ChaCha8Rng) -> Vec<(VertexId, VertexId)> {
    let out = h.out_adjacency();
    let mut walk = vec![start];
    loop {
        let at = *walk.last().unwrap();
        let next = out[at][rng.gen_range(0..out[at].len())];
        if let Some(i) = walk.iter().position(|&v| v == next) {
            let mut cyc: Vec<(VertexId, VertexId)> = walk[i..].windows(2).map(|w| (w[0], w[1])).collect();
            cyc.push((at, next));
            return cyc;
        }
        walk.push(next);
    }
}

/// Shortest directed path avoiding `banned` edges.
pub fn path_avoiding(h: &Orientation, s: VertexId, t: VertexId, banned: &BTreeSet<Edge>) -> Option<Vec<(VertexId, VertexId)>> {
    let out = h.out_adjacency();
    let mut prev = vec![usize::MAX; h.base().n()];
    prev[s] = s;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &w in &out[u] {
            if prev[w] == usize::MAX && !banned.contains(&edge(u, w)) {
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    if prev[t] == usize::MAX || s == t {
        return None;
    }
    let mut arcs = vec![];
    let mut v = t;
    while v != s {
        arcs.push((prev[v], v));
        v = prev[v];
    }
    arcs.reverse();
    Some(arcs)
}
