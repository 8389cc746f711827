//! Named graphs, the extremal chain family and seeded random bridgeless
//! graphs.
//!
//! Canonical numbering:
//!
//! * `petersen`: outer cycle `0..5`, spokes `i - i+5`, inner pentagram
//!   `i+5 - (i+2)%5+5`.
//! * `k4_subdivided`: K4 on `0..4` with the edges at `0` subdivided by
//!   `4` (to `1`), `5` (to `2`) and `6` (to `3`).
//! * `cycle(n)`: edges `i - (i+1)%n`. `complete(n)`: all pairs.
//! * `family(k)`: dominators `X_i = i-1` for `i = 1..=k`; triangle `{A,B} =
//!   {k, k+1}` on `X_1` and `{G,H} = {k+2, k+3}` on `X_k`; connector `i`
//!   (between `X_i` and `X_{i+1}`) uses `C_i, D_i, E_i, F_i = k+4+4(i-1) ..`.

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, UndirectedGraph, VertexId};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Graph of the extremal chain family together with its dominating set.
pub fn gen_family(gamma: usize) -> Result<(UndirectedGraph, Vec<VertexId>)> {
    if gamma == 0 {
        return Err(Error::InvalidGraph("family needs gamma >= 1".into()));
    }
    let k = gamma;
    let x = |i: usize| i - 1;
    let (a, b, gv, hv) = (k, k + 1, k + 2, k + 3);
    let mut edges = vec![(x(1), a), (x(1), b), (a, b), (x(k), gv), (x(k), hv), (gv, hv)];
    for i in 1..k {
        let base = k + 4 + 4 * (i - 1);
        let (c, d, e, f) = (base, base + 1, base + 2, base + 3);
        edges.extend([(x(i), c), (c, e), (e, d), (d, x(i)), (e, f), (f, x(i + 1)), (x(i + 1), e)]);
    }
    let g = UndirectedGraph::new(5 * k, edges)?;
    Ok((g, (0..k).collect()))
}

/// Named graph by identifier: `petersen`, `k4_subdivided`, `cycle(n)`,
/// `complete(n)`.
pub fn gen_named(name: &str) -> Result<UndirectedGraph> {
    let name = name.trim();
    let arg = |prefix: &str| -> Option<usize> {
        name.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?.trim().parse().ok()
    };
    match name {
        "petersen" => petersen(),
        "k4_subdivided" => UndirectedGraph::new(7, [(0, 4), (4, 1), (0, 5), (5, 2), (0, 6), (6, 3), (1, 2), (1, 3), (2, 3)]),
        _ => {
            if let Some(n) = arg("cycle").filter(|&n| n >= 3) {
                UndirectedGraph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
            } else if let Some(n) = arg("complete").filter(|&n| n >= 1) {
                UndirectedGraph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
            } else {
                Err(Error::UnknownName(name.to_string()))
            }
        }
    }
}

fn petersen() -> Result<UndirectedGraph> {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    UndirectedGraph::new(10, edges)
}

/// Seeded random 2-edge-connected graph grown by ears.
///
/// Starts from a cycle and repeatedly attaches an ear: a path with fresh
/// internal vertices between two existing vertices, or a closed ear at one
/// vertex (at least two fresh vertices), or a chord. Every 2-edge-connected
/// graph has such a decomposition. Vertex ids are shuffled at the end.
/// The result has exactly `n` vertices and at most `max_edges` edges;
/// `max_edges >= n` and `n >= 3` are required.
pub fn random_bridgeless(n: usize, max_edges: usize, seed: u64) -> UndirectedGraph {
    assert!(n >= 3 && max_edges >= n, "need n >= 3 and max_edges >= n");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // each ear beyond the first cycle costs one edge above n
    let mut ear_allowance = max_edges - n;
    let c = if ear_allowance == 0 { n } else { rng.gen_range(3..=n) };
    let mut edges: Vec<Edge> = (0..c).map(|i| edge(i, (i + 1) % c)).collect();
    let mut used = c;
    while used < n {
        let left = n - used;
        let fresh = if ear_allowance == 1 { left } else { rng.gen_range(1..=left.min(4)) };
        ear_allowance -= 1;
        let a = rng.gen_range(0..used);
        let b = if fresh >= 2 && rng.gen_bool(0.2) { a } else { rng.gen_range(0..used) };
        let b = if a == b && fresh < 2 { (a + 1) % used } else { b };
        let mut prev = a;
        for _ in 0..fresh {
            edges.push(edge(prev, used));
            prev = used;
            used += 1;
        }
        edges.push(edge(prev, b));
    }
    let target_m = rng.gen_range(edges.len()..=max_edges.min(n * (n - 1) / 2));
    let mut attempts = 0;
    while edges.len() < target_m && attempts < 100 * max_edges {
        attempts += 1;
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b && !edges.contains(&edge(a, b)) {
            edges.push(edge(a, b));
        }
    }
    let mut perm: Vec<VertexId> = (0..n).collect();
    perm.shuffle(&mut rng);
    UndirectedGraph::new(n, edges.into_iter().map(|(u, v)| (perm[u], perm[v]))).expect("ears keep the graph simple")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_bridgeless_connected;

    #[test]
    fn named_sizes() {
        let p = gen_named("petersen").unwrap();
        assert_eq!((p.n(), p.m()), (10, 15));
        assert!((0..10).all(|v| p.degree(v) == 3));
        let k = gen_named("k4_subdivided").unwrap();
        assert_eq!((k.n(), k.m()), (7, 9));
        assert_eq!(gen_named("cycle(5)").unwrap().m(), 5);
        assert_eq!(gen_named("complete(5)").unwrap().m(), 10);
        assert!(matches!(gen_named("wheel(5)"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn family_sizes() {
        for k in 1..=6 {
            let (g, d) = gen_family(k).unwrap();
            assert_eq!(g.n(), 5 * k);
            assert_eq!(g.m(), 7 * k - 1);
            assert_eq!(d.len(), k);
            assert!(is_bridgeless_connected(&g));
        }
    }

    #[test]
    fn random_graphs_are_bridgeless() {
        for seed in 0..200 {
            let n = 3 + (seed as usize % 20);
            let g = random_bridgeless(n, n + 8, seed);
            assert!(g.n() == n && g.m() <= n + 8);
            assert!(is_bridgeless_connected(&g), "seed {seed}");
        }
    }
}
