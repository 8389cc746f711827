//! Normalization of a (graph, dominating set) pair into first standard form,
//! with a replayable trace and orientation pull-back.
//!
//! Vertex ids of the input survive unchanged through the edit phases; new
//! vertices are appended. The final pair is compacted (removed surplus
//! triangle vertices dropped) and the trace stores that compaction.

use crate::dominating::{exact_dominating_set, is_dominating_set, DominatedPair, DEFAULT_EXACT_LIMIT};
use crate::error::{Error, Result};
use crate::graph::{bfs_distances, edge, find_bridges, is_bridgeless_connected, Distance, Edge, UndirectedGraph, VertexId};
use crate::orientation::Orientation;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A pair in first standard form plus its isolated triangles per dominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardFormPair {
    pair: DominatedPair,
    triangles: BTreeMap<VertexId, Vec<(VertexId, VertexId)>>,
}

impl StandardFormPair {
    /// Wraps a pair and records its isolated triangles. No conditions are
    /// checked; see [`verify_first_standard_form`].
    pub fn from_pair(pair: DominatedPair) -> Self {
        let triangles = isolated_triangles(&pair);
        Self { pair, triangles }
    }

    pub fn pair(&self) -> &DominatedPair {
        &self.pair
    }

    pub fn graph(&self) -> &UndirectedGraph {
        self.pair.graph()
    }

    pub fn dset(&self) -> &[VertexId] {
        self.pair.dset()
    }

    /// Isolated triangles `{u, v}` (with `u < v`) keyed by dominator; every
    /// dominator has an entry.
    pub fn triangles(&self) -> &BTreeMap<VertexId, Vec<(VertexId, VertexId)>> {
        &self.triangles
    }

    pub fn into_pair(self) -> DominatedPair {
        self.pair
    }
}

fn isolated_triangles(p: &DominatedPair) -> BTreeMap<VertexId, Vec<(VertexId, VertexId)>> {
    let mut map: BTreeMap<VertexId, Vec<(VertexId, VertexId)>> = p.dset().iter().map(|&d| (d, Vec::new())).collect();
    for &(u, v) in p.graph().edges() {
        if let Some(w) = check_isolated_triangle(p, u, v) {
            map.entry(w).or_default().push((u, v));
        }
    }
    map
}

/// The dominator `w` such that `{u, v}` is an isolated triangle at `w`.
pub fn check_isolated_triangle(p: &DominatedPair, u: VertexId, v: VertexId) -> Option<VertexId> {
    let g = p.graph();
    if u == v || p.is_dominator(u) || p.is_dominator(v) || !g.has_edge(u, v) {
        return None;
    }
    let mut others = g.neighbors(u).iter().chain(g.neighbors(v)).copied().filter(|&x| x != u && x != v);
    let w = others.next()?;
    (p.is_dominator(w) && others.all(|x| x == w)).then_some(w)
}

/// One edit of the normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransformStep {
    /// `{u, v}` inside `D` becomes `u - new[0] - new[1] - v`.
    DominatorEdgeSplit { edge: Edge, new: [VertexId; 2] },
    /// `{vertex, dominator}` becomes `vertex - mid - dominator`.
    MultiDominatorSplit { vertex: VertexId, dominator: VertexId, mid: VertexId },
    EdgeDeleted { edge: Edge },
    TriangleAdded { dominator: VertexId, new: [VertexId; 2] },
    /// `kept` is a triangle of the same dominator that survives; pull-back
    /// copies its orientation.
    TriangleRemoved { dominator: VertexId, pair: [VertexId; 2], kept: [VertexId; 2] },
}

/// Ordered edits plus the final id compaction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformTrace {
    original: DominatedPair,
    steps: Vec<TransformStep>,
    compaction: Vec<Option<VertexId>>,
}

impl TransformTrace {
    pub fn original(&self) -> &DominatedPair {
        &self.original
    }

    pub fn steps(&self) -> &[TransformStep] {
        &self.steps
    }

    /// Map from pre-compaction ids to final ids (`None` = removed).
    pub fn compaction(&self) -> &[Option<VertexId>] {
        &self.compaction
    }

    /// Final id of an input vertex, if it survives.
    pub fn original_to_final(&self, v: VertexId) -> Option<VertexId> {
        self.compaction.get(v).copied().flatten()
    }

    /// Number of steps other than triangle bookkeeping.
    pub fn structural_len(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| !matches!(s, TransformStep::TriangleAdded { .. } | TransformStep::TriangleRemoved { .. }))
            .count()
    }

    /// Re-applies the steps to the stored input.
    pub fn replay(&self) -> Result<StandardFormPair> {
        let mut w = Work::new(&self.original);
        for step in &self.steps {
            w.apply(step)?;
        }
        let (pair, compaction) = w.finish()?;
        if compaction != self.compaction {
            return Err(Error::StaleStep);
        }
        Ok(StandardFormPair::from_pair(pair))
    }
}

struct Work {
    n: usize,
    edges: BTreeSet<Edge>,
    in_d: Vec<bool>,
    alive: Vec<bool>,
}

impl Work {
    fn new(p: &DominatedPair) -> Self {
        Self {
            n: p.graph().n(),
            edges: p.graph().edges().iter().copied().collect(),
            in_d: p.in_d().to_vec(),
            alive: vec![true; p.graph().n()],
        }
    }

    fn graph(&self) -> UndirectedGraph {
        UndirectedGraph::from_edges_dedup(self.n, self.edges.iter().copied())
    }

    fn fresh(&mut self) -> VertexId {
        self.n += 1;
        self.in_d.push(false);
        self.alive.push(true);
        self.n - 1
    }

    fn remove(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        if self.edges.remove(&edge(u, v)) {
            Ok(())
        } else {
            Err(Error::StaleStep)
        }
    }

    fn add(&mut self, u: VertexId, v: VertexId) {
        self.edges.insert(edge(u, v));
    }

    fn expect_fresh(&mut self, ids: &[VertexId]) -> Result<()> {
        for &id in ids {
            if id != self.fresh() {
                return Err(Error::StaleStep);
            }
        }
        Ok(())
    }

    fn apply(&mut self, step: &TransformStep) -> Result<()> {
        match *step {
            TransformStep::DominatorEdgeSplit { edge: (u, v), new: [a, b] } => {
                if !(self.in_d[u] && self.in_d[v]) {
                    return Err(Error::StaleStep);
                }
                self.remove(u, v)?;
                self.expect_fresh(&[a, b])?;
                self.add(u, a);
                self.add(a, b);
                self.add(b, v);
            }
            TransformStep::MultiDominatorSplit { vertex, dominator, mid } => {
                if self.in_d[vertex] || !self.in_d[dominator] {
                    return Err(Error::StaleStep);
                }
                self.remove(vertex, dominator)?;
                self.expect_fresh(&[mid])?;
                self.add(vertex, mid);
                self.add(mid, dominator);
            }
            TransformStep::EdgeDeleted { edge: (u, v) } => self.remove(u, v)?,
            TransformStep::TriangleAdded { dominator, new: [a, b] } => {
                if !self.in_d[dominator] {
                    return Err(Error::StaleStep);
                }
                self.expect_fresh(&[a, b])?;
                self.add(dominator, a);
                self.add(dominator, b);
                self.add(a, b);
            }
            TransformStep::TriangleRemoved { dominator, pair: [a, b], .. } => {
                for (x, y) in [(dominator, a), (dominator, b), (a, b)] {
                    self.remove(x, y)?;
                }
                let touches = |x: VertexId| self.edges.iter().any(|&(p, q)| p == x || q == x);
                if touches(a) || touches(b) {
                    return Err(Error::StaleStep);
                }
                self.alive[a] = false;
                self.alive[b] = false;
            }
        }
        Ok(())
    }

    fn finish(&self) -> Result<(DominatedPair, Vec<Option<VertexId>>)> {
        let mut compaction = vec![None; self.n];
        let mut next = 0;
        for (slot, &alive) in compaction.iter_mut().zip(&self.alive) {
            if alive {
                *slot = Some(next);
                next += 1;
            }
        }
        let edges = self.edges.iter().map(|&(u, v)| (compaction[u].unwrap(), compaction[v].unwrap()));
        let g = UndirectedGraph::new(next, edges)?;
        let dset = (0..self.n).filter(|&v| self.in_d[v]).filter_map(|v| compaction[v]);
        Ok((DominatedPair::new(g, dset)?, compaction))
    }
}

fn edge_removable(g: &UndirectedGraph, in_d: &[bool], (u, v): Edge) -> bool {
    let dominated = |x: VertexId, other: VertexId| {
        in_d[x] || g.neighbors(x).iter().any(|&w| w != other && in_d[w])
    };
    dominated(u, v) && dominated(v, u) && is_bridgeless_connected(&g.without_edges(&[(u, v)]))
}

fn required_triangles(dset_len: usize) -> usize {
    if dset_len == 1 {
        2
    } else {
        1
    }
}

/// Normalizes `p` into first standard form.
///
/// Phases, each in ascending id order: split edges inside `D`; split edges
/// from vertices with several dominators to all but the lowest; delete
/// removable edges to a fixpoint; add or remove isolated triangles.
pub fn to_first_standard_form(p: &DominatedPair) -> Result<(StandardFormPair, TransformTrace)> {
    let g = p.graph();
    if g.n() == 0 {
        return Err(Error::InvalidGraph("empty graph".into()));
    }
    let bridges = find_bridges(g)?;
    if !bridges.is_empty() {
        return Err(Error::HasBridge(bridges));
    }
    if !is_dominating_set(g, p.dset()) {
        return Err(DominatedPair::new(g.clone(), p.dset().iter().copied()).unwrap_err());
    }
    let mut w = Work::new(p);
    let mut steps = Vec::new();
    let mut push = |w: &mut Work, step: TransformStep| -> Result<()> {
        w.apply(&step)?;
        steps.push(step);
        Ok(())
    };

    let dd: Vec<Edge> = w.edges.iter().copied().filter(|&(u, v)| w.in_d[u] && w.in_d[v]).collect();
    for e in dd {
        let new = [w.n, w.n + 1];
        push(&mut w, TransformStep::DominatorEdgeSplit { edge: e, new })?;
    }

    let snapshot = w.graph();
    for v in 0..snapshot.n() {
        if w.in_d[v] {
            continue;
        }
        let doms: Vec<VertexId> = snapshot.neighbors(v).iter().copied().filter(|&x| w.in_d[x]).collect();
        for &d in doms.iter().skip(1) {
            let mid = w.n;
            push(&mut w, TransformStep::MultiDominatorSplit { vertex: v, dominator: d, mid })?;
        }
    }

    loop {
        let mut changed = false;
        let candidates: Vec<Edge> = w.edges.iter().copied().collect();
        for e in candidates {
            if edge_removable(&w.graph(), &w.in_d, e) {
                push(&mut w, TransformStep::EdgeDeleted { edge: e })?;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let dset: Vec<VertexId> = (0..w.n).filter(|&v| w.in_d[v]).collect();
    let need = required_triangles(dset.len());
    let current = DominatedPair::new_unchecked(w.graph(), dset.iter().copied())?;
    let tri = isolated_triangles(&current);
    for &d in &dset {
        let have = &tri[&d];
        for _ in have.len()..need {
            let new = [w.n, w.n + 1];
            push(&mut w, TransformStep::TriangleAdded { dominator: d, new })?;
        }
        if have.len() > need {
            let kept = [have[0].0, have[0].1];
            for &(a, b) in &have[need..] {
                push(&mut w, TransformStep::TriangleRemoved { dominator: d, pair: [a, b], kept })?;
            }
        }
    }

    let (pair, compaction) = w.finish()?;
    let trace = TransformTrace { original: p.clone(), steps, compaction };
    Ok((StandardFormPair::from_pair(pair), trace))
}

/// A violated condition of first standard form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    /// Condition number 1 to 6.
    Condition(u8),
    /// Two dominators closer than 3.
    DominatorDistance,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Condition(k) => write!(f, "({k})"),
            Violation::DominatorDistance => write!(f, "dominator distance < 3"),
        }
    }
}

/// All violated conditions, sorted. Minimality of `D` is only checked when
/// the graph is small enough for the exact solver.
pub fn verify_first_standard_form(s: &StandardFormPair) -> Vec<Violation> {
    let p = s.pair();
    let g = p.graph();
    let mut out = Vec::new();
    let structural = g.n() > 0 && is_bridgeless_connected(g);
    if !structural {
        out.push(Violation::Condition(1));
    }
    if !is_dominating_set(g, p.dset()) {
        out.push(Violation::Condition(2));
    } else if g.n() <= DEFAULT_EXACT_LIMIT {
        if let Ok(best) = exact_dominating_set(g, DEFAULT_EXACT_LIMIT) {
            if best.len() < p.dset().len() {
                out.push(Violation::Condition(2));
            }
        }
    }
    let c3 = g.edges().iter().any(|&(u, v)| p.is_dominator(u) && p.is_dominator(v));
    if c3 {
        out.push(Violation::Condition(3));
    }
    let c4 = (0..g.n()).any(|u| !p.is_dominator(u) && p.f(u).is_none());
    if c4 {
        out.push(Violation::Condition(4));
    }
    if structural && g.edges().iter().any(|&e| edge_removable(g, p.in_d(), e)) {
        out.push(Violation::Condition(5));
    }
    let need = required_triangles(p.dset().len());
    if isolated_triangles(p).values().any(|t| t.len() != need) {
        out.push(Violation::Condition(6));
    }
    if !c3 && !c4 {
        let close = p.dset().iter().any(|&u| {
            let dist = bfs_distances(g, u);
            p.dset().iter().any(|&v| v != u && matches!(dist[v], Distance::Finite(k) if k < 3))
        });
        if close {
            out.push(Violation::DominatorDistance);
        }
    }
    out
}

/// Transports an orientation of the standard-form graph back to the input
/// graph of `trace`.
pub fn pull_back_orientation(trace: &TransformTrace, h: &Orientation) -> Result<Orientation> {
    let inter_n = trace.compaction.len();
    let mut to_inter = vec![0; h.base().n()];
    for (v, c) in trace.compaction.iter().enumerate() {
        if let Some(c) = c {
            to_inter[*c] = v;
        }
    }
    if trace.compaction.iter().flatten().count() != h.base().n() {
        return Err(Error::StaleStep);
    }
    let mut arcs: BTreeMap<Edge, (VertexId, VertexId)> = BTreeMap::new();
    for (t, hd) in h.arcs() {
        let (t, hd) = (to_inter[t], to_inter[hd]);
        arcs.insert(edge(t, hd), (t, hd));
    }
    let take = |arcs: &mut BTreeMap<Edge, (VertexId, VertexId)>, u: VertexId, v: VertexId| {
        arcs.remove(&edge(u, v)).ok_or(Error::StaleStep)
    };
    for step in trace.steps.iter().rev() {
        match *step {
            TransformStep::TriangleRemoved { dominator: d, pair: [a, b], kept: [k0, k1] } => {
                let forward = arcs.get(&edge(d, k0)).ok_or(Error::StaleStep)?.0 == d;
                let (x, y) = if forward { (a, b) } else { (b, a) };
                if arcs.get(&edge(k0, k1)).ok_or(Error::StaleStep)?.0 != if forward { k0 } else { k1 } {
                    return Err(Error::StaleStep);
                }
                for (t, hd) in [(d, x), (x, y), (y, d)] {
                    arcs.insert(edge(t, hd), (t, hd));
                }
            }
            TransformStep::TriangleAdded { dominator: d, new: [a, b] } => {
                take(&mut arcs, d, a)?;
                take(&mut arcs, d, b)?;
                take(&mut arcs, a, b)?;
            }
            TransformStep::EdgeDeleted { edge: (u, v) } => {
                let mut indeg = vec![0usize; inter_n];
                let mut outdeg = vec![0usize; inter_n];
                for &(t, hd) in arcs.values() {
                    outdeg[t] += 1;
                    indeg[hd] += 1;
                }
                // count vertices left without in- or out-arcs, among u and v
                let bad = |t: VertexId, hd: VertexId| {
                    usize::from(indeg[t] == 0) + usize::from(outdeg[hd] == 0)
                };
                let (t, hd) = if bad(v, u) < bad(u, v) { (v, u) } else { (u, v) };
                arcs.insert(edge(t, hd), (t, hd));
            }
            TransformStep::MultiDominatorSplit { vertex, dominator, mid } => {
                let first = take(&mut arcs, vertex, mid)?;
                let second = take(&mut arcs, mid, dominator)?;
                let arc = contract(&[vertex, mid, dominator], &[first, second])?;
                arcs.insert(edge(vertex, dominator), arc);
            }
            TransformStep::DominatorEdgeSplit { edge: (u, v), new: [a, b] } => {
                let path = [take(&mut arcs, u, a)?, take(&mut arcs, a, b)?, take(&mut arcs, b, v)?];
                let arc = contract(&[u, a, b, v], &path)?;
                arcs.insert(edge(u, v), arc);
            }
        }
    }
    let list: Vec<(VertexId, VertexId)> = arcs.into_values().collect();
    Orientation::from_arcs(trace.original.graph().clone(), &list)
}

/// Contracts a directed path `vs[0] .. vs[k]` to a single arc between its
/// ends.
fn contract(vs: &[VertexId], arcs: &[(VertexId, VertexId)]) -> Result<(VertexId, VertexId)> {
    let forward = arcs.iter().zip(vs.windows(2)).all(|(&a, w)| a == (w[0], w[1]));
    let backward = arcs.iter().zip(vs.windows(2)).all(|(&a, w)| a == (w[1], w[0]));
    let (first, last) = (vs[0], vs[vs.len() - 1]);
    match (forward, backward) {
        (true, _) => Ok((first, last)),
        (_, true) => Ok((last, first)),
        _ => Err(Error::InconsistentPathDirection(vs.to_vec())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orientation::{diameter, is_strongly_connected, robbins_orient};

    fn pair(n: usize, edges: &[(usize, usize)], d: &[usize]) -> DominatedPair {
        DominatedPair::new(UndirectedGraph::new(n, edges.iter().copied()).unwrap(), d.iter().copied()).unwrap()
    }

    #[test]
    fn isolated_triangle_examples() {
        let p = pair(3, &[(0, 1), (1, 2), (0, 2)], &[0]);
        assert_eq!(check_isolated_triangle(&p, 1, 2), Some(0));
        let q = pair(4, &[(0, 1), (1, 2), (0, 2), (1, 3), (0, 3)], &[0]);
        assert_eq!(check_isolated_triangle(&q, 1, 2), None);
        let r = pair(4, &[(0, 1), (1, 2), (2, 3), (0, 3)], &[0, 2]);
        assert_eq!(check_isolated_triangle(&r, 1, 3), None);
    }

    #[test]
    fn dominator_edge_is_split() {
        // 4-cycle 0-1-2-3 with adjacent dominators 0 and 1
        let p = pair(4, &[(0, 1), (1, 2), (2, 3), (0, 3)], &[0, 1]);
        let (s, trace) = to_first_standard_form(&p).unwrap();
        assert!(matches!(trace.steps()[0], TransformStep::DominatorEdgeSplit { edge: (0, 1), .. }));
        assert!(verify_first_standard_form(&s).is_empty(), "{:?}", verify_first_standard_form(&s));
        assert_eq!(trace.replay().unwrap(), s);
    }

    #[test]
    fn multi_dominator_vertex_is_split() {
        // 6-cycle with dominators 0 and 2 sharing neighbour 1
        let p = pair(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)], &[0, 2, 4]);
        let (s, trace) = to_first_standard_form(&p).unwrap();
        assert!(trace
            .steps()
            .iter()
            .any(|s| matches!(s, TransformStep::MultiDominatorSplit { vertex: 1, dominator: 2, .. })));
        assert!(verify_first_standard_form(&s).is_empty());
    }

    #[test]
    fn standard_pair_is_a_fixpoint() {
        // dominators 0 and 3 on a 6-cycle, each with one isolated triangle
        let p = pair(10, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 6), (0, 7), (6, 7), (3, 8), (3, 9), (8, 9)], &[0, 3]);
        let (s, trace) = to_first_standard_form(&p).unwrap();
        assert!(trace.steps().is_empty());
        assert_eq!(s.pair(), &p);
    }

    #[test]
    fn verify_reports_conditions() {
        let p = pair(4, &[(0, 1), (1, 2), (2, 3), (0, 3)], &[0, 1]);
        assert!(verify_first_standard_form(&StandardFormPair::from_pair(p)).contains(&Violation::Condition(3)));
        let q = pair(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)], &[0, 3]);
        let v = verify_first_standard_form(&StandardFormPair::from_pair(q));
        assert_eq!(v, vec![Violation::Condition(6)]);
    }

    #[test]
    fn pull_back_is_strong_and_not_longer() {
        let p = pair(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)], &[0, 2]);
        let (s, trace) = to_first_standard_form(&p).unwrap();
        let h = robbins_orient(s.graph()).unwrap();
        let back = pull_back_orientation(&trace, &h).unwrap();
        assert!(is_strongly_connected(&back));
        assert!(diameter(&back).unwrap() <= diameter(&h).unwrap());
    }

    #[test]
    fn surplus_triangles_are_removed() {
        // one dominator with three triangles
        let mut e = vec![];
        for t in 0..3 {
            let (a, b) = (1 + 2 * t, 2 + 2 * t);
            e.extend([(0, a), (0, b), (a, b)]);
        }
        let p = pair(7, &e, &[0]);
        let (s, trace) = to_first_standard_form(&p).unwrap();
        assert_eq!(s.graph().n(), 5);
        assert_eq!(trace.original_to_final(5), None);
        let h = robbins_orient(s.graph()).unwrap();
        let back = pull_back_orientation(&trace, &h).unwrap();
        assert!(is_strongly_connected(&back));
        assert_eq!(diameter(&back), diameter(&h));
    }
}
