//! Small bridgeless subgraphs that contain a dominating set, and the
//! extension of their orientations to the host.
//!
//! Pipeline: [`build_dominating_tree`] grows a tree through `D` by shortest
//! paths of length at most 3; [`fix_to_bridgeless`] adds short detours until
//! no tree edge is a bridge; [`extract_minimal_subgraph`] prunes greedily;
//! [`extend_orientation`] orients the rest of the host around an oriented
//! subgraph.

use crate::dominating::DominatedPair;
use crate::error::{Error, Result};
use crate::graph::{
    bridges_unchecked, connected_components_without, edge, is_bridgeless_connected, is_connected, Distance, Edge,
    UndirectedGraph, VertexId,
};
use crate::orientation::{all_pairs, diam_profile, is_strongly_connected, Orientation};
use crate::standard_form::StandardFormPair;
use std::collections::{BTreeSet, VecDeque};

/// A subgraph of a host, in host ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    host_n: usize,
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
}

impl Subgraph {
    /// Vertices and edges are normalized and deduplicated; every edge must
    /// join two listed vertices.
    pub fn new(
        host_n: usize,
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self> {
        let vertices: BTreeSet<VertexId> = vertices.into_iter().collect();
        let edges: BTreeSet<Edge> = edges.into_iter().map(|(u, v)| edge(u, v)).collect();
        if vertices.iter().any(|&v| v >= host_n)
            || edges.iter().any(|&(u, v)| u == v || !vertices.contains(&u) || !vertices.contains(&v))
        {
            return Err(Error::NotSubgraph);
        }
        Ok(Self { host_n, vertices: vertices.into_iter().collect(), edges: edges.into_iter().collect() })
    }

    /// The whole graph as a subgraph of itself.
    pub fn whole(g: &UndirectedGraph) -> Self {
        Self { host_n: g.n(), vertices: (0..g.n()).collect(), edges: g.edges().to_vec() }
    }

    pub fn host_n(&self) -> usize {
        self.host_n
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Local copy with ids `0..k` (ascending host order) and the
    /// local-to-host map.
    pub fn local(&self) -> (UndirectedGraph, Vec<VertexId>) {
        let edges = self.edges.iter().map(|&(u, v)| (self.to_local(u).unwrap(), self.to_local(v).unwrap()));
        (UndirectedGraph::from_edges_dedup(self.vertices.len(), edges), self.vertices.clone())
    }

    pub fn to_local(&self, v: VertexId) -> Option<VertexId> {
        self.vertices.binary_search(&v).ok()
    }

    /// The subgraph as a dominated pair in local ids, using the host's `D`.
    pub fn local_pair(&self, host: &DominatedPair) -> Result<DominatedPair> {
        let d: Vec<VertexId> = host.dset().iter().map(|&v| self.to_local(v).ok_or(Error::NotSubgraph)).collect::<Result<_>>()?;
        DominatedPair::new(self.local().0, d)
    }

    fn host_graph(&self) -> UndirectedGraph {
        UndirectedGraph::from_edges_dedup(self.host_n, self.edges.iter().copied())
    }

    fn is_subgraph_of(&self, g: &UndirectedGraph) -> bool {
        self.host_n == g.n() && self.edges.iter().all(|&(u, v)| g.has_edge(u, v))
    }
}

/// Greedy tree through all dominators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominatingTree {
    /// Dominators in insertion order.
    pub order: Vec<VertexId>,
    /// `paths[k]` joins `order[k]` (first vertex) to the earlier tree; empty
    /// for `k = 0`.
    pub paths: Vec<Vec<VertexId>>,
    pub tree: Subgraph,
}

impl DominatingTree {
    /// Edges associated with `order[k]`, from the dominator outwards.
    pub fn assoc(&self, k: usize) -> Vec<Edge> {
        self.paths[k].windows(2).map(|w| edge(w[0], w[1])).collect()
    }
}

fn bfs_from_set(g: &UndirectedGraph, sources: &[bool], skip: Option<Edge>) -> Vec<Distance> {
    let mut dist = vec![Distance::Infinite; g.n()];
    let mut queue = VecDeque::new();
    for v in 0..g.n() {
        if sources[v] {
            dist[v] = Distance::Finite(0);
            queue.push_back(v);
        }
    }
    while let Some(u) = queue.pop_front() {
        let Distance::Finite(du) = dist[u] else { unreachable!() };
        for &w in g.neighbors(u) {
            if Some(edge(u, w)) == skip || dist[w].is_finite() {
                continue;
            }
            dist[w] = Distance::Finite(du + 1);
            queue.push_back(w);
        }
    }
    dist
}

/// Grows the tree from the lowest dominator, each time attaching the nearest
/// remaining dominator (lowest id on ties) by the lexicographically smallest
/// shortest path.
pub fn build_dominating_tree(host: &DominatedPair) -> Result<DominatingTree> {
    let g = host.graph();
    if !is_connected(g) {
        return Err(Error::NotConnected);
    }
    let Some(&x1) = host.dset().first() else {
        return Err(Error::InvalidGraph("empty dominating set".into()));
    };
    let mut in_tree = vec![false; g.n()];
    in_tree[x1] = true;
    let mut order = vec![x1];
    let mut paths = vec![Vec::new()];
    let mut edges = Vec::new();
    while order.len() < host.dset().len() {
        let dist = bfs_from_set(g, &in_tree, None);
        let next = host
            .dset()
            .iter()
            .copied()
            .filter(|&d| !in_tree[d])
            .min_by_key(|&d| (dist[d], d))
            .unwrap();
        let Distance::Finite(len) = dist[next] else { return Err(Error::NotConnected) };
        if len > 3 {
            return Err(Error::Postcondition(format!("dominator {next} is {len} away from the tree")));
        }
        let mut path = vec![next];
        let mut cur = next;
        while !in_tree[cur] {
            let Distance::Finite(dc) = dist[cur] else { unreachable!() };
            cur = *g.neighbors(cur).iter().find(|&&w| dist[w] == Distance::Finite(dc - 1)).unwrap();
            path.push(cur);
        }
        for w in path.windows(2) {
            edges.push(edge(w[0], w[1]));
        }
        for &v in &path {
            in_tree[v] = true;
        }
        order.push(next);
        paths.push(path);
    }
    let tree = Subgraph::new(g.n(), (0..g.n()).filter(|&v| in_tree[v]), edges)?;
    Ok(DominatingTree { order, paths, tree })
}

/// How a dominator's associated edges were made bridge-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fix {
    AlreadyFixed,
    /// The added detours, a subset of P, Q, R in that order.
    Added(Vec<Vec<VertexId>>),
}

/// Bridgeless subgraph containing `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgelessCore {
    pub core: Subgraph,
    /// One entry per dominator in tree order.
    pub fixes: Vec<(VertexId, Fix)>,
    /// Structural expectations that did not hold (long detours with non-`D`
    /// ends); empty on every instance seen so far.
    pub violations: Vec<String>,
}

/// Shortest path in `g - skip` from `from` to `to`. Among shortest paths
/// the landing vertex minimizes `rank`, then prefers `D`, then lowest id;
/// walking back, the predecessor prefers `D` and then the lowest id.
fn detour(
    host: &DominatedPair,
    from: &[bool],
    to: &[bool],
    skip: Edge,
    rank: impl Fn(VertexId) -> usize,
) -> Option<Vec<VertexId>> {
    let g = host.graph();
    let dist = bfs_from_set(g, from, Some(skip));
    let end = (0..g.n())
        .filter(|&v| to[v] && dist[v].is_finite())
        .min_by_key(|&v| (dist[v], rank(v), !host.is_dominator(v), v))?;
    let mut path = vec![end];
    let mut cur = end;
    while let Distance::Finite(dc) = dist[cur] {
        if dc == 0 {
            break;
        }
        cur = g
            .neighbors(cur)
            .iter()
            .copied()
            .filter(|&w| Some(edge(cur, w)) != Some(skip) && dist[w] == Distance::Finite(dc - 1))
            .min_by_key(|&w| (!host.is_dominator(w), w))?;
        path.push(cur);
    }
    path.reverse();
    Some(path)
}

/// Adds detours until no tree edge is a bridge.
///
/// For an unfixed dominator the tree path is cut into subtrees `T^1..`;
/// `P` leaves `T^1` landing as far along as possible, `Q` leaves the last
/// subtree landing as early as possible, `R` joins the back half to the
/// front half. The case rule picks `P`, `P+Q` or `P+Q+R`; if another
/// combination also fixes the dominator with fewer new vertices it is used
/// instead.
pub fn fix_to_bridgeless(host: &DominatedPair, t: &DominatingTree) -> Result<BridgelessCore> {
    let g = host.graph();
    let bridges = crate::graph::find_bridges(g)?;
    if !bridges.is_empty() {
        return Err(Error::HasBridge(bridges));
    }
    let mut vertices: BTreeSet<VertexId> = t.tree.vertices().iter().copied().collect();
    let mut edges: BTreeSet<Edge> = t.tree.edges().iter().copied().collect();
    let mut fixes = vec![(t.order[0], Fix::AlreadyFixed)];
    let mut violations = Vec::new();
    for k in 1..t.order.len() {
        let assoc = t.assoc(k);
        let current = UndirectedGraph::from_edges_dedup(g.n(), edges.iter().copied());
        let bridges: BTreeSet<Edge> = bridges_unchecked(&current).into_iter().collect();
        if assoc.iter().all(|e| !bridges.contains(e)) {
            fixes.push((t.order[k], Fix::AlreadyFixed));
            continue;
        }
        // label[v] = i for v in subtree T^i (1-based), 0 off the tree
        let split = t.tree.host_graph().without_edges(&assoc);
        let path = &t.paths[k];
        let mut label = vec![0usize; g.n()];
        for comp in connected_components_without(&split, &[]) {
            if let Some(i) = path.iter().position(|p| comp.contains(p)) {
                for &v in &comp {
                    label[v] = i + 1;
                }
            }
        }
        let parts = path.len();
        let set = |f: &dyn Fn(usize) -> bool| -> Vec<bool> { label.iter().map(|&l| l > 0 && f(l)).collect() };
        let e_first = assoc[0];
        let e_last = assoc[assoc.len() - 1];
        let p = detour(host, &set(&|l| l == 1), &set(&|l| l >= 2), e_first, |v| parts - label[v])
            .ok_or_else(|| Error::HasBridge(vec![e_first]))?;
        let last = parts;
        // Q is reported from its end in T^1..T^{last-1}
        let q = if parts >= 3 {
            let q = detour(host, &set(&|l| l == last), &set(&|l| l < last), e_last, |v| label[v])
                .ok_or_else(|| Error::HasBridge(vec![e_last]))?;
            Some(q.into_iter().rev().collect::<Vec<VertexId>>())
        } else {
            None
        };
        let r = if parts == 4 {
            let e_mid = assoc[1];
            Some(detour(host, &set(&|l| l >= 3), &set(&|l| l <= 2), e_mid, |_| 0).ok_or_else(|| Error::HasBridge(vec![e_mid]))?)
        } else {
            None
        };
        let p_end = label[*p.last().unwrap()];
        let q_start = q.as_ref().map_or(0, |q| label[q[0]]);
        let rule: &[usize] = match parts {
            2 => &[0],
            3 if p_end == 3 => &[0],
            3 => &[0, 1],
            _ if p_end == 4 => &[0],
            _ if p_end == 3 || q_start == 2 => &[0, 1],
            _ => &[0, 1, 2],
        };
        let pool: Vec<&Vec<VertexId>> = [Some(&p), q.as_ref(), r.as_ref()].into_iter().flatten().collect();
        // the case rule first, then every other combination; fewest new
        // vertices wins among those that fix the associated edges
        let mut options: Vec<Vec<usize>> = vec![rule.to_vec()];
        for mask in 1u32..(1 << pool.len()) {
            let pick: Vec<usize> = (0..pool.len()).filter(|&i| mask >> i & 1 == 1).collect();
            if pick != rule {
                options.push(pick);
            }
        }
        let cost = |pick: &[usize]| -> Option<usize> {
            let mut es = edges.clone();
            let mut fresh = BTreeSet::new();
            for &i in pick {
                es.extend(pool[i].windows(2).map(|w| edge(w[0], w[1])));
                fresh.extend(pool[i].iter().copied().filter(|v| !vertices.contains(v)));
            }
            let b: BTreeSet<Edge> = bridges_unchecked(&UndirectedGraph::from_edges_dedup(g.n(), es)).into_iter().collect();
            assoc.iter().all(|e| !b.contains(e)).then_some(fresh.len())
        };
        let best = options
            .iter()
            .filter_map(|pick| cost(pick).map(|c| (c, pick)))
            .min_by_key(|&(c, _)| c)
            .map(|(_, pick)| pick.clone())
            .ok_or_else(|| Error::HasBridge(assoc.clone()))?;
        let added: Vec<Vec<VertexId>> = best.iter().map(|&i| pool[i].clone()).collect();
        for d in &added {
            let len = d.len() - 1;
            if len > 3 {
                violations.push(format!("detour {d:?} for dominator {} has length {len}", t.order[k]));
            } else if len == 3 && !(host.is_dominator(d[0]) && host.is_dominator(d[3])) {
                violations.push(format!("detour {d:?} of length 3 has an end outside D"));
            }
            vertices.extend(d.iter().copied());
            edges.extend(d.windows(2).map(|w| edge(w[0], w[1])));
        }
        fixes.push((t.order[k], Fix::Added(added)));
    }
    let core = Subgraph::new(g.n(), vertices, edges)?;
    let (local, _) = core.local();
    if !is_bridgeless_connected(&local) {
        return Err(Error::Postcondition("fixed core still has a bridge".into()));
    }
    let limit = 5 * host.dset().len() - 4;
    if core.vertices().len() > limit {
        violations.push(format!("core has {} vertices, more than {limit}", core.vertices().len()));
    }
    Ok(BridgelessCore { core, fixes, violations })
}

/// Greedy pruning of `core` to a minimal subgraph of `host`: first the edges
/// `{v, f(v)}` are added, then edges, single non-dominators and adjacent
/// pairs of non-dominators are deleted in ascending order while the result
/// stays bridgeless, connected and keeps every `{v, f(v)}`.
pub fn extract_minimal_subgraph(host: &StandardFormPair, core: &BridgelessCore) -> Result<Subgraph> {
    let p = host.pair();
    let mut vertices: BTreeSet<VertexId> = core.core.vertices().iter().copied().collect();
    let mut edges: BTreeSet<Edge> = core.core.edges().iter().copied().collect();
    if let Some(&d) = p.dset().iter().find(|d| !vertices.contains(d)) {
        return Err(Error::NotDominating(d));
    }
    for &v in &vertices {
        if let Some(f) = p.f(v) {
            edges.insert(edge(v, f));
        }
    }
    let is_f_edge = |(u, v): Edge| p.f(u) == Some(v) || p.f(v) == Some(u);
    let valid = |vs: &BTreeSet<VertexId>, es: &BTreeSet<Edge>| {
        let s = Subgraph::new(p.graph().n(), vs.iter().copied(), es.iter().copied()).unwrap();
        is_bridgeless_connected(&s.local().0)
    };
    loop {
        let mut changed = false;
        for e in edges.clone() {
            if is_f_edge(e) {
                continue;
            }
            edges.remove(&e);
            if valid(&vertices, &edges) {
                changed = true;
            } else {
                edges.insert(e);
            }
        }
        // single non-dominators, then adjacent non-dominator pairs (a chain of
        // non-dominators hanging between two points has at most two vertices)
        let mut groups: Vec<Vec<VertexId>> = vertices.iter().filter(|&&v| !p.is_dominator(v)).map(|&v| vec![v]).collect();
        groups.extend(edges.iter().filter(|&&(a, b)| !p.is_dominator(a) && !p.is_dominator(b)).map(|&(a, b)| vec![a, b]));
        for group in groups {
            if group.iter().any(|v| !vertices.contains(v)) {
                continue;
            }
            let incident: Vec<Edge> =
                edges.iter().copied().filter(|&(a, b)| group.contains(&a) || group.contains(&b)).collect();
            for v in &group {
                vertices.remove(v);
            }
            for e in &incident {
                edges.remove(e);
            }
            if valid(&vertices, &edges) {
                changed = true;
            } else {
                vertices.extend(group.iter().copied());
                edges.extend(incident);
            }
        }
        if !changed {
            break;
        }
    }
    Subgraph::new(p.graph().n(), vertices, edges)
}

/// Orients `host` so that the edges of `sub` keep the directions of `h`
/// (an orientation of `sub.local().0`).
///
/// A component of `host - V(sub)` that is a single vertex `x` gets one arc
/// out and one arc in through dominators or through a neighbour `v` and an
/// arc at `v` taken from `h`. A larger component gets a BFS tree whose
/// odd-depth vertices send all tree arcs outwards and receive from `sub`,
/// while even-depth vertices send to `sub`. Every outside vertex then lies
/// within 2 of `D` in both directions.
pub fn extend_orientation(host: &DominatedPair, sub: &Subgraph, h: &Orientation) -> Result<Orientation> {
    let g = host.graph();
    if !sub.is_subgraph_of(g) {
        return Err(Error::NotSubgraph);
    }
    let (local, to_host) = sub.local();
    if h.base() != &local {
        return Err(Error::NotSubgraph);
    }
    let local_pair = sub.local_pair(host)?;
    if !is_strongly_connected(h) {
        return Err(Error::NotStrong);
    }
    let mut dir: Vec<Option<bool>> = vec![None; g.m()];
    // first assignment wins
    let set = |dir: &mut Vec<Option<bool>>, t: VertexId, hd: VertexId| {
        let i = g.edge_index(t, hd).expect("host edge");
        if dir[i].is_none() {
            dir[i] = Some(t < hd);
        }
    };
    for (t, hd) in h.arcs() {
        set(&mut dir, to_host[t], to_host[hd]);
    }
    let in_sub = |v: VertexId| sub.contains(v);
    let sub_arc = |a: VertexId, b: VertexId| -> bool {
        h.directed(sub.to_local(a).unwrap(), sub.to_local(b).unwrap()) == Some(true)
    };
    let outside = connected_components_without(g, sub.vertices());
    for comp in &outside {
        if let [x] = comp[..] {
            let nbrs = g.neighbors(x);
            let doms: Vec<VertexId> = nbrs.iter().copied().filter(|&v| host.is_dominator(v)).collect();
            let Some(&u) = doms.first() else { return Err(Error::NotDominating(x)) };
            if doms.len() >= 2 {
                set(&mut dir, x, doms[0]);
                set(&mut dir, doms[1], x);
            } else {
                let v = *nbrs.iter().find(|&&v| v != u).ok_or_else(|| Error::HasBridge(vec![edge(x, u)]))?;
                let w = *g
                    .neighbors(v)
                    .iter()
                    .find(|&&w| host.is_dominator(w) && sub.edges().binary_search(&edge(v, w)).is_ok())
                    .ok_or(Error::NotDominating(v))?;
                if sub_arc(w, v) {
                    set(&mut dir, v, x);
                    set(&mut dir, x, u);
                } else {
                    set(&mut dir, u, x);
                    set(&mut dir, x, v);
                }
            }
            let mut out = true;
            for &y in nbrs {
                let i = g.edge_index(x, y).unwrap();
                if dir[i].is_none() {
                    if out {
                        set(&mut dir, x, y)
                    } else {
                        set(&mut dir, y, x)
                    }
                    out = !out;
                }
            }
        } else {
            let member: BTreeSet<VertexId> = comp.iter().copied().collect();
            let mut depth = vec![usize::MAX; g.n()];
            depth[comp[0]] = 0;
            let mut queue = VecDeque::from([comp[0]]);
            while let Some(a) = queue.pop_front() {
                for &b in g.neighbors(a) {
                    if member.contains(&b) && depth[b] == usize::MAX {
                        depth[b] = depth[a] + 1;
                        let odd = if depth[a] % 2 == 1 { a } else { b };
                        set(&mut dir, odd, if odd == a { b } else { a });
                        queue.push_back(b);
                    }
                }
            }
            for &x in comp {
                for &y in g.neighbors(x) {
                    if in_sub(y) {
                        if depth[x] % 2 == 1 {
                            set(&mut dir, y, x)
                        } else {
                            set(&mut dir, x, y)
                        }
                    }
                }
            }
        }
    }
    // leftover: non-tree edges inside components and host chords of sub
    for d in dir.iter_mut().filter(|d| d.is_none()) {
        *d = Some(true);
    }
    let result = Orientation::from_forward(g.clone(), dir.into_iter().map(Option::unwrap).collect());
    check_extension(host, sub, &local_pair, h, &result)?;
    Ok(result)
}

fn check_extension(
    host: &DominatedPair,
    sub: &Subgraph,
    local_pair: &DominatedPair,
    h: &Orientation,
    result: &Orientation,
) -> Result<()> {
    let dist = all_pairs(result);
    let g = host.graph();
    for x in (0..g.n()).filter(|&x| !sub.contains(x)) {
        let near = |a: VertexId, b: VertexId| matches!(dist[a][b], Distance::Finite(k) if k <= 2);
        let from_d = host.dset().iter().any(|&u| near(u, x));
        let to_d = host.dset().iter().any(|&v| near(x, v));
        if !(from_d && to_d) {
            return Err(Error::Postcondition(format!("vertex {x} is not within 2 of D in both directions")));
        }
    }
    let bound = diam_profile(h, local_pair.dset())?.extension_bound();
    let got = diam_profile(result, host.dset()).map_err(|_| Error::Postcondition("extension is not strong".into()))?;
    if got.diam > bound {
        return Err(Error::Postcondition(format!("extension diameter {} exceeds {bound}", got.diam)));
    }
    Ok(())
}
