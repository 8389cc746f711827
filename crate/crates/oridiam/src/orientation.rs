//! Orientations, strong connectivity, diameter profiles and the reversal
//! operations that preserve strong connectivity.

use crate::error::{Error, Result};
use crate::graph::{edge, is_connected, bridges_unchecked, Distance, Edge, UndirectedGraph, VertexId};
use serde::Serialize;
use std::collections::{HashSet, VecDeque};

/// A direction for every edge of `base`. `forward[i]` means the i-th edge
/// `(u, v)`, `u < v`, is directed `u -> v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orientation {
    base: UndirectedGraph,
    forward: Vec<bool>,
}

impl Orientation {
    pub fn from_forward(base: UndirectedGraph, forward: Vec<bool>) -> Self {
        assert_eq!(base.m(), forward.len());
        Self { base, forward }
    }

    /// Builds an orientation from arcs; every base edge must appear exactly
    /// once and nothing else may appear.
    pub fn from_arcs(base: UndirectedGraph, arcs: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut seen = vec![false; base.m()];
        let mut forward = vec![false; base.m()];
        for &(t, h) in arcs {
            let i = base
                .edge_index(t, h)
                .filter(|_| t != h)
                .ok_or_else(|| Error::InvalidGraph(format!("arc {t}->{h} is not an edge of the base graph")))?;
            if seen[i] {
                return Err(Error::InvalidGraph(format!("edge {t}-{h} directed twice")));
            }
            seen[i] = true;
            forward[i] = t < h;
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            let (u, v) = base.edges()[i];
            return Err(Error::InvalidGraph(format!("edge {u}-{v} has no direction")));
        }
        Ok(Self { base, forward })
    }

    pub fn base(&self) -> &UndirectedGraph {
        &self.base
    }

    pub fn forward(&self) -> &[bool] {
        &self.forward
    }

    /// `(tail, head)` of edge `i`.
    pub fn arc(&self, i: usize) -> (VertexId, VertexId) {
        let (u, v) = self.base.edges()[i];
        if self.forward[i] {
            (u, v)
        } else {
            (v, u)
        }
    }

    pub fn arcs(&self) -> Vec<(VertexId, VertexId)> {
        (0..self.base.m()).map(|i| self.arc(i)).collect()
    }

    /// `Some(true)` iff `{u,v}` is an edge directed `u -> v`.
    pub fn directed(&self, u: VertexId, v: VertexId) -> Option<bool> {
        let i = self.base.edge_index(u, v)?;
        Some(self.arc(i) == (u, v))
    }

    pub fn out_adjacency(&self) -> Vec<Vec<VertexId>> {
        let mut out = vec![Vec::new(); self.base.n()];
        for i in 0..self.base.m() {
            let (t, h) = self.arc(i);
            out[t].push(h);
        }
        for list in &mut out {
            list.sort_unstable();
        }
        out
    }

    pub fn in_adjacency(&self) -> Vec<Vec<VertexId>> {
        let mut inn = vec![Vec::new(); self.base.n()];
        for i in 0..self.base.m() {
            let (t, h) = self.arc(i);
            inn[h].push(t);
        }
        for list in &mut inn {
            list.sort_unstable();
        }
        inn
    }

    /// Flips the listed edges (given as unordered pairs).
    pub fn with_flipped(&self, edges: &[Edge]) -> Self {
        let mut out = self.clone();
        for &(u, v) in edges {
            let i = self.base.edge_index(u, v).expect("flipped edge must exist");
            out.forward[i] = !out.forward[i];
        }
        out
    }
}

/// Diameter profile relative to a vertex set `D`. `diam_i` is the largest
/// distance over ordered pairs (including `u == v`) with exactly `i`
/// endpoints outside `D`; an empty class contributes 0.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct DiameterProfile {
    pub diam: u32,
    pub diam0: u32,
    pub diam1: u32,
    pub diam2: u32,
}

impl DiameterProfile {
    pub fn classes(&self) -> [u32; 3] {
        [self.diam0, self.diam1, self.diam2]
    }

    /// `max{diam0 + 4, diam1 + 2, diam2}`: what an extension to a supergraph
    /// with the same dominating set can guarantee.
    pub fn extension_bound(&self) -> u32 {
        (self.diam0 + 4).max(self.diam1 + 2).max(self.diam2)
    }
}

fn bfs_out(out: &[Vec<VertexId>], src: VertexId) -> Vec<Distance> {
    let mut dist = vec![Distance::Infinite; out.len()];
    dist[src] = Distance::Finite(0);
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        let Distance::Finite(du) = dist[u] else { unreachable!() };
        for &w in &out[u] {
            if dist[w] == Distance::Infinite {
                dist[w] = Distance::Finite(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Directed hop distances from `src`.
pub fn directed_distances(h: &Orientation, src: VertexId) -> Vec<Distance> {
    bfs_out(&h.out_adjacency(), src)
}

/// All-pairs directed distances, row `u` holding distances from `u`.
pub fn all_pairs(h: &Orientation) -> Vec<Vec<Distance>> {
    let out = h.out_adjacency();
    (0..h.base.n()).map(|s| bfs_out(&out, s)).collect()
}

/// Every ordered pair mutually reachable (true for `n <= 1`).
pub fn is_strongly_connected(h: &Orientation) -> bool {
    let n = h.base.n();
    if n <= 1 {
        return true;
    }
    bfs_out(&h.out_adjacency(), 0).iter().all(|d| d.is_finite())
        && bfs_out(&h.in_adjacency(), 0).iter().all(|d| d.is_finite())
}

/// Directed diameter, `None` when not strongly connected.
pub fn diameter(h: &Orientation) -> Option<u32> {
    let mut best = 0;
    for row in all_pairs(h) {
        for d in row {
            best = best.max(d.finite()?);
        }
    }
    Some(best)
}

/// Profile of `h` relative to `dset`.
pub fn diam_profile(h: &Orientation, dset: &[VertexId]) -> Result<DiameterProfile> {
    let n = h.base.n();
    let mut in_d = vec![false; n];
    for &v in dset {
        in_d[v] = true;
    }
    let mut classes = [0u32; 3];
    for (u, row) in all_pairs(h).into_iter().enumerate() {
        for (v, d) in row.into_iter().enumerate() {
            let d = d.finite().ok_or(Error::NotStrong)?;
            let c = usize::from(!in_d[u]) + usize::from(!in_d[v]);
            classes[c] = classes[c].max(d);
        }
    }
    Ok(DiameterProfile {
        diam: classes.into_iter().max().unwrap_or(0),
        diam0: classes[0],
        diam1: classes[1],
        diam2: classes[2],
    })
}

/// Strong orientation by depth-first search from vertex 0: tree edges point
/// away from the root, non-tree edges from descendant to ancestor.
pub fn robbins_orient(g: &UndirectedGraph) -> Result<Orientation> {
    if !is_connected(g) {
        return Err(Error::NotConnected);
    }
    let bridges = bridges_unchecked(g);
    if !bridges.is_empty() {
        return Err(Error::HasBridge(bridges));
    }
    let n = g.n();
    let mut forward = vec![false; g.m()];
    if n == 0 {
        return Ok(Orientation::from_forward(g.clone(), forward));
    }
    let mut depth = vec![usize::MAX; n];
    let mut assigned = vec![false; g.m()];
    depth[0] = 0;
    let mut stack = vec![(0usize, 0usize)];
    while let Some(&mut (u, ref mut pos)) = stack.last_mut() {
        let Some(&w) = g.neighbors(u).get(*pos) else {
            stack.pop();
            continue;
        };
        *pos += 1;
        let i = g.edge_index(u, w).unwrap();
        if assigned[i] {
            continue;
        }
        assigned[i] = true;
        if depth[w] == usize::MAX {
            depth[w] = depth[u] + 1;
            forward[i] = u < w;
            stack.push((w, 0));
        } else {
            // back edge from the deeper endpoint
            let (t, hd) = if depth[u] > depth[w] { (u, w) } else { (w, u) };
            forward[i] = t < hd;
        }
    }
    Ok(Orientation::from_forward(g.clone(), forward))
}

/// Reverses every arc. Preserves strong connectivity and the diameter.
pub fn reverse_all(h: &Orientation) -> Orientation {
    Orientation::from_forward(h.base.clone(), h.forward.iter().map(|f| !f).collect())
}

fn check_trail(h: &Orientation, arcs: &[(VertexId, VertexId)]) -> Option<Vec<Edge>> {
    let mut used = HashSet::new();
    for w in arcs.windows(2) {
        if w[0].1 != w[1].0 {
            return None;
        }
    }
    for &(t, hd) in arcs {
        if h.directed(t, hd) != Some(true) || !used.insert(edge(t, hd)) {
            return None;
        }
    }
    Some(used.into_iter().collect())
}

/// Reverses a directed closed trail (arcs listed in traversal order).
pub fn reverse_cycle(h: &Orientation, cycle: &[(VertexId, VertexId)]) -> Result<Orientation> {
    if !is_strongly_connected(h) {
        return Err(Error::NotStrong);
    }
    if cycle.is_empty() || cycle[0].0 != cycle[cycle.len() - 1].1 {
        return Err(Error::NotACycle);
    }
    let edges = check_trail(h, cycle).ok_or(Error::NotACycle)?;
    Ok(h.with_flipped(&edges))
}

/// Given two edge-disjoint directed paths with the same endpoints, reverses
/// the second one.
pub fn reverse_path(
    h: &Orientation,
    keep: &[(VertexId, VertexId)],
    flip: &[(VertexId, VertexId)],
) -> Result<Orientation> {
    if !is_strongly_connected(h) {
        return Err(Error::NotStrong);
    }
    let (Some(k0), Some(k1), Some(f0), Some(f1)) = (keep.first(), keep.last(), flip.first(), flip.last()) else {
        return Err(Error::NotAPath);
    };
    if k0.0 != f0.0 || k1.1 != f1.1 {
        return Err(Error::NotAPath);
    }
    let a = check_trail(h, keep).ok_or(Error::NotAPath)?;
    let b = check_trail(h, flip).ok_or(Error::NotAPath)?;
    if a.iter().any(|e| b.contains(e)) {
        return Err(Error::NotAPath);
    }
    Ok(h.with_flipped(&b))
}
