//! Simple undirected graphs on dense vertex ids and the structural queries
//! used throughout the crate.

use crate::error::{Error, Result};
use std::collections::VecDeque;
use std::fmt;

/// Dense vertex index; a graph with `n` vertices uses exactly `0..n`.
pub type VertexId = usize;

/// Unordered edge stored as `(min, max)`.
pub type Edge = (VertexId, VertexId);

/// Normalizes an unordered pair.
#[inline]
pub fn edge(u: VertexId, v: VertexId) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Hop distance with a dedicated marker for unreachable targets.
///
/// `Finite` sorts before `Infinite`, so `max` and comparisons behave as on
/// the extended naturals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(u32),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => write!(f, "inf"),
        }
    }
}

/// A simple finite undirected graph.
///
/// Invariants: no loops, no parallel edges, `edges` sorted ascending,
/// `adj[v]` sorted ascending and symmetric with `edges`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UndirectedGraph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<VertexId>>,
}

impl UndirectedGraph {
    /// Builds a graph, rejecting loops, duplicates and out-of-range ids.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge {u}-{v} out of range for n={n}")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            list.push(edge(u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!("parallel edge {}-{}", w[0].0, w[0].1)));
        }
        Ok(Self::from_sorted(n, list))
    }

    /// Builds a graph from an edge list that may contain duplicates; loops
    /// and out-of-range ids still panic.
    pub fn from_edges_dedup(n: usize, edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Self {
        let mut list: Vec<Edge> = edges
            .into_iter()
            .map(|(u, v)| {
                assert!(u != v && u < n && v < n, "bad edge {u}-{v} for n={n}");
                edge(u, v)
            })
            .collect();
        list.sort_unstable();
        list.dedup();
        Self::from_sorted(n, list)
    }

    fn from_sorted(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Self { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Position of `{u,v}` in [`Self::edges`].
    pub fn edge_index(&self, u: VertexId, v: VertexId) -> Option<usize> {
        self.edges.binary_search(&edge(u, v)).ok()
    }

    /// Copy without the listed edges.
    pub fn without_edges(&self, removed: &[Edge]) -> Self {
        let mut drop: Vec<Edge> = removed.iter().map(|&(u, v)| edge(u, v)).collect();
        drop.sort_unstable();
        let kept = self
            .edges
            .iter()
            .copied()
            .filter(|e| drop.binary_search(e).is_err())
            .collect();
        Self::from_sorted(self.n, kept)
    }

    /// Induced subgraph on `vertices` (any order); returns the graph in local
    /// ids and the local-to-parent map, which is sorted ascending.
    pub fn induced(&self, vertices: &[VertexId]) -> (Self, Vec<VertexId>) {
        let mut to_parent = vertices.to_vec();
        to_parent.sort_unstable();
        to_parent.dedup();
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in to_parent.iter().enumerate() {
            local[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| local[u] != usize::MAX && local[v] != usize::MAX)
            .map(|&(u, v)| (local[u], local[v]))
            .collect::<Vec<_>>();
        let g = Self::from_edges_dedup(to_parent.len(), edges);
        (g, to_parent)
    }
}

/// True iff every vertex is reachable from vertex 0 (true for `n <= 1`).
pub fn is_connected(g: &UndirectedGraph) -> bool {
    if g.n() <= 1 {
        return true;
    }
    bfs_distances(g, 0).iter().all(|d| d.is_finite())
}

/// Hop distances from `src`; unreachable vertices get [`Distance::Infinite`].
pub fn bfs_distances(g: &UndirectedGraph, src: VertexId) -> Vec<Distance> {
    let mut dist = vec![Distance::Infinite; g.n()];
    dist[src] = Distance::Finite(0);
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        let Distance::Finite(du) = dist[u] else { unreachable!() };
        for &w in g.neighbors(u) {
            if dist[w] == Distance::Infinite {
                dist[w] = Distance::Finite(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Undirected diameter, `None` if disconnected.
pub fn undirected_diameter(g: &UndirectedGraph) -> Option<u32> {
    let mut best = 0;
    for s in 0..g.n() {
        for d in bfs_distances(g, s) {
            best = best.max(d.finite()?);
        }
    }
    Some(best)
}

/// Lowpoint data from one iterative DFS over a connected graph.
struct LowLink {
    tin: Vec<usize>,
    low: Vec<usize>,
    parent: Vec<Option<VertexId>>,
    order: Vec<VertexId>,
}

fn lowlink(g: &UndirectedGraph) -> LowLink {
    let n = g.n();
    let mut tin = vec![usize::MAX; n];
    let mut low = vec![usize::MAX; n];
    let mut parent = vec![None; n];
    let mut order = Vec::with_capacity(n);
    let mut timer = 0;
    for root in 0..n {
        if tin[root] != usize::MAX {
            continue;
        }
        // (vertex, next neighbor position)
        let mut stack = vec![(root, 0usize)];
        tin[root] = timer;
        low[root] = timer;
        timer += 1;
        order.push(root);
        while let Some(&mut (u, ref mut pos)) = stack.last_mut() {
            if let Some(&w) = g.neighbors(u).get(*pos) {
                *pos += 1;
                if tin[w] == usize::MAX {
                    parent[w] = Some(u);
                    tin[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    order.push(w);
                    stack.push((w, 0));
                } else if parent[u] != Some(w) {
                    low[u] = low[u].min(tin[w]);
                }
            } else {
                stack.pop();
                if let Some(p) = parent[u] {
                    low[p] = low[p].min(low[u]);
                }
            }
        }
    }
    LowLink { tin, low, parent, order }
}

/// Edges whose removal disconnects `g`, sorted ascending.
pub fn find_bridges(g: &UndirectedGraph) -> Result<Vec<Edge>> {
    if !is_connected(g) {
        return Err(Error::NotConnected);
    }
    Ok(bridges_unchecked(g))
}

/// Bridges of every component, without the connectivity precondition.
pub fn bridges_unchecked(g: &UndirectedGraph) -> Vec<Edge> {
    let ll = lowlink(g);
    let mut out: Vec<Edge> = (0..g.n())
        .filter_map(|v| {
            let p = ll.parent[v]?;
            (ll.low[v] > ll.tin[p]).then(|| edge(p, v))
        })
        .collect();
    out.sort_unstable();
    out
}

/// Connected and free of bridges.
pub fn is_bridgeless_connected(g: &UndirectedGraph) -> bool {
    is_connected(g) && bridges_unchecked(g).is_empty()
}

/// Vertices whose removal disconnects `g`, sorted ascending.
pub fn find_cut_vertices(g: &UndirectedGraph) -> Result<Vec<VertexId>> {
    if !is_connected(g) {
        return Err(Error::NotConnected);
    }
    let ll = lowlink(g);
    let mut cut = vec![false; g.n()];
    let mut root_children = vec![0usize; g.n()];
    for &v in &ll.order {
        let Some(p) = ll.parent[v] else { continue };
        if ll.parent[p].is_none() {
            root_children[p] += 1;
        } else if ll.low[v] >= ll.tin[p] {
            cut[p] = true;
        }
    }
    for v in 0..g.n() {
        if ll.parent[v].is_none() && root_children[v] >= 2 {
            cut[v] = true;
        }
    }
    Ok((0..g.n()).filter(|&v| cut[v]).collect())
}

/// Components of `g` after deleting `removed`; each sorted, list ordered by
/// minimum element.
pub fn connected_components_without(g: &UndirectedGraph, removed: &[VertexId]) -> Vec<Vec<VertexId>> {
    let mut seen = vec![false; g.n()];
    for &r in removed {
        seen[r] = true;
    }
    let mut comps = Vec::new();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            i += 1;
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> UndirectedGraph {
        UndirectedGraph::new(3, [(0, 1), (1, 2)]).unwrap()
    }

    fn cycle(n: usize) -> UndirectedGraph {
        UndirectedGraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn barbell() -> UndirectedGraph {
        UndirectedGraph::new(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]).unwrap()
    }

    #[test]
    fn rejects_loops_and_parallel_edges() {
        assert!(UndirectedGraph::new(2, [(0, 0)]).is_err());
        assert!(UndirectedGraph::new(2, [(0, 1), (1, 0)]).is_err());
        assert!(UndirectedGraph::new(2, [(0, 2)]).is_err());
    }

    #[test]
    fn connectivity_examples() {
        assert!(is_connected(&path3()));
        assert!(!is_connected(&UndirectedGraph::new(4, [(0, 1), (2, 3)]).unwrap()));
        assert!(is_connected(&UndirectedGraph::empty(1)));
    }

    #[test]
    fn bridge_examples() {
        assert_eq!(find_bridges(&path3()).unwrap(), vec![(0, 1), (1, 2)]);
        assert!(find_bridges(&cycle(5)).unwrap().is_empty());
        assert_eq!(find_bridges(&barbell()).unwrap(), vec![(2, 3)]);
        assert_eq!(
            find_bridges(&UndirectedGraph::new(4, [(0, 1), (2, 3)]).unwrap()),
            Err(Error::NotConnected)
        );
    }

    #[test]
    fn cut_vertex_examples() {
        assert_eq!(find_cut_vertices(&path3()).unwrap(), vec![1]);
        assert!(find_cut_vertices(&cycle(5)).unwrap().is_empty());
        assert_eq!(find_cut_vertices(&barbell()).unwrap(), vec![2, 3]);
    }

    #[test]
    fn bfs_examples() {
        let d: Vec<_> = bfs_distances(&cycle(6), 0).iter().map(|d| d.finite().unwrap()).collect();
        assert_eq!(d, vec![0, 1, 2, 3, 2, 1]);
        let star = UndirectedGraph::new(5, (1..5).map(|i| (0, i))).unwrap();
        assert!(bfs_distances(&star, 0)[1..].iter().all(|&d| d == Distance::Finite(1)));
        let pair = UndirectedGraph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(bfs_distances(&pair, 0)[2], Distance::Infinite);
    }

    #[test]
    fn component_examples() {
        let star = UndirectedGraph::new(4, (1..4).map(|i| (0, i))).unwrap();
        assert_eq!(connected_components_without(&star, &[0]), vec![vec![1], vec![2], vec![3]]);
        assert_eq!(connected_components_without(&cycle(5), &[2]), vec![vec![0, 1, 3, 4]]);
        let p5 = UndirectedGraph::new(5, (0..4).map(|i| (i, i + 1))).unwrap();
        assert_eq!(connected_components_without(&p5, &[2]), vec![vec![0, 1], vec![3, 4]]);
    }

    #[test]
    fn distance_order_puts_infinite_last() {
        assert!(Distance::Finite(u32::MAX) < Distance::Infinite);
        assert_eq!(Distance::Finite(3).max(Distance::Infinite), Distance::Infinite);
    }

    #[test]
    fn induced_maps_back() {
        let (h, map) = barbell().induced(&[5, 3, 4]);
        assert_eq!(map, vec![3, 4, 5]);
        assert_eq!(h.m(), 3);
    }
}
