//! Pattern detectors and the rewrite each pattern induces.

use super::build::{Node, PartSpec};
use crate::dominating::DominatedPair;
use crate::graph::{connected_components_without, edge, find_cut_vertices, Edge, VertexId};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// Named vertices of a matched pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// Paths `x, l1, r1, y` and `x, l2, r2, y`; `y` merges into `x`.
    DoubleTwoPath { x: VertexId, y: VertexId, l1: VertexId, r1: VertexId, l2: VertexId, r2: VertexId },
    /// `x -p1- y` and `x -p3- y` with 3 and 2 inner vertices, `y -p2- z`
    /// and `y -p4- z` likewise; `y` is deleted and `z` merges into `x`.
    ThetaPair { x: VertexId, y: VertexId, z: VertexId, p1: [VertexId; 3], p3: [VertexId; 2], p2: [VertexId; 3], p4: [VertexId; 2] },
    /// `x, u1, u2, u3, y` and `x, v1, v2, y`; `y` merges into `x`.
    TwoPlusThreePath { x: VertexId, y: VertexId, u: [VertexId; 3], v: [VertexId; 2] },
    /// Dominator `x` whose removal leaves `components`.
    DominatorCut { x: VertexId, components: Vec<Vec<VertexId>> },
    /// Non-dominator `x`; `components[0]` holds `fx`.
    NonDominatorCut { x: VertexId, fx: VertexId, components: Vec<Vec<VertexId>> },
    /// Cut vertex `x` with pendant triangle `x, fx, w` and two neighbours
    /// `y1`, `y2` sharing the dominator `z`.
    PendantTriangleCut { x: VertexId, fx: VertexId, w: VertexId, y1: VertexId, y2: VertexId, z: VertexId, rest: Vec<VertexId> },
    /// Elementary cycle starting at a dominator; `pendants` lists
    /// `(v, z, w)` for cycle vertices dominated through a pendant triangle
    /// (always empty for [`super::ReductionKind::DominatorCycle`]).
    Cycle { cycle: Vec<VertexId>, pendants: Vec<(VertexId, VertexId, VertexId)> },
}

struct Ctx<'a> {
    p: &'a DominatedPair,
}

impl<'a> Ctx<'a> {
    fn d(&self, v: VertexId) -> bool {
        self.p.is_dominator(v)
    }

    fn nb(&self, v: VertexId) -> &'a [VertexId] {
        self.p.graph().neighbors(v)
    }

    /// Chains `x, inner.., y` with `x < y` in `D` and every inner vertex a
    /// degree-2 non-dominator, sorted.
    fn chains(&self, len: usize) -> Vec<(VertexId, Vec<VertexId>, VertexId)> {
        let mut out = Vec::new();
        for &x in self.p.dset() {
            for &a in self.nb(x) {
                let mut inner = vec![];
                let (mut prev, mut cur) = (x, a);
                let end = loop {
                    if self.d(cur) {
                        break Some(cur);
                    }
                    if self.p.graph().degree(cur) != 2 || inner.len() == len {
                        break None;
                    }
                    inner.push(cur);
                    let nb = self.nb(cur);
                    let next = if nb[0] == prev { nb[1] } else { nb[0] };
                    (prev, cur) = (cur, next);
                };
                if let Some(y) = end {
                    if y > x && inner.len() == len {
                        out.push((x, inner, y));
                    }
                }
            }
        }
        out.sort();
        out
    }

    fn double_two_path(&self) -> Option<Witness> {
        let c2 = self.chains(2);
        c2.windows(2).find(|w| w[0].0 == w[1].0 && w[0].2 == w[1].2).map(|w| Witness::DoubleTwoPath {
            x: w[0].0,
            y: w[0].2,
            l1: w[0].1[0],
            r1: w[0].1[1],
            l2: w[1].1[0],
            r2: w[1].1[1],
        })
    }

    fn two_plus_three(&self) -> Option<Witness> {
        let c2 = self.chains(2);
        let c3 = self.chains(3);
        for (x, u, y) in &c3 {
            if let Some((_, v, _)) = c2.iter().find(|c| c.0 == *x && c.2 == *y) {
                return Some(Witness::TwoPlusThreePath { x: *x, y: *y, u: [u[0], u[1], u[2]], v: [v[0], v[1]] });
            }
        }
        None
    }

    fn theta_pair(&self) -> Option<Witness> {
        // chains keyed by their end at `y`, inner vertices listed from the
        // far end towards `y`
        let toward = |len: usize, y: VertexId| -> BTreeMap<VertexId, Vec<VertexId>> {
            let mut m = BTreeMap::new();
            for (a, inner, b) in self.chains(len) {
                if b == y {
                    m.entry(a).or_insert(inner);
                } else if a == y {
                    m.entry(b).or_insert(inner.into_iter().rev().collect());
                }
            }
            m
        };
        for &y in self.p.dset() {
            let (three, two) = (toward(3, y), toward(2, y));
            let ends: Vec<VertexId> = three.keys().copied().filter(|e| two.contains_key(e)).collect();
            for (i, &x) in ends.iter().enumerate() {
                for &z in &ends[i + 1..] {
                    let (a, b, c, e) = (&three[&x], &two[&x], &three[&z], &two[&z]);
                    let inner: BTreeSet<VertexId> = a.iter().chain(b).chain(c).chain(e).copied().collect();
                    if self.nb(y).iter().any(|v| !inner.contains(v)) {
                        continue;
                    }
                    // p2 and p4 run from y to z
                    return Some(Witness::ThetaPair {
                        x,
                        y,
                        z,
                        p1: [a[0], a[1], a[2]],
                        p3: [b[0], b[1]],
                        p2: [c[2], c[1], c[0]],
                        p4: [e[1], e[0]],
                    });
                }
            }
        }
        None
    }

    fn dominator_count(&self, vs: &[VertexId]) -> usize {
        vs.iter().filter(|&&v| self.d(v)).count()
    }

    fn dominator_cut(&self, cuts: &[VertexId]) -> Option<Witness> {
        let total = self.p.dset().len();
        for &x in cuts.iter().filter(|&&x| self.d(x)) {
            let comps = connected_components_without(self.p.graph(), &[x]);
            if comps.iter().all(|c| self.dominator_count(c) + 1 < total) {
                return Some(Witness::DominatorCut { x, components: comps });
            }
        }
        None
    }

    fn non_dominator_cut(&self, cuts: &[VertexId]) -> Option<Witness> {
        let total = self.p.dset().len();
        for &x in cuts.iter().filter(|&&x| !self.d(x)) {
            let Some(fx) = self.p.f(x) else { continue };
            let mut comps = connected_components_without(self.p.graph(), &[x]);
            let first = comps.iter().position(|c| c.binary_search(&fx).is_ok()).unwrap();
            let c1 = comps.remove(first);
            comps.insert(0, c1);
            let sizes: Vec<usize> = comps.iter().map(|c| self.dominator_count(c)).collect();
            let shrinks = sizes[0] < total && sizes[1..].iter().all(|&s| s >= 1 && s + 1 < total);
            if shrinks && (comps.len() >= 3 || sizes[0] >= 2) {
                return Some(Witness::NonDominatorCut { x, fx, components: comps });
            }
        }
        None
    }

    fn pendant_triangle_cut(&self, cuts: &[VertexId]) -> Option<Witness> {
        for &x in cuts.iter().filter(|&&x| !self.d(x)) {
            let Some(fx) = self.p.f(x) else { continue };
            let comps = connected_components_without(self.p.graph(), &[x]);
            if comps.len() != 2 {
                continue;
            }
            let (c1, c2) = if comps[0].contains(&fx) { (&comps[0], &comps[1]) } else { (&comps[1], &comps[0]) };
            if c1.len() != 2 {
                continue;
            }
            let w = if c1[0] == fx { c1[1] } else { c1[0] };
            if self.d(w) || !self.nb(w).iter().all(|&v| v == x || v == fx) || !self.nb(fx).iter().all(|&v| v == x || v == w) {
                continue;
            }
            let ys: Vec<VertexId> = self.nb(x).iter().copied().filter(|&v| v != fx && v != w && !self.d(v)).collect();
            for (i, &y1) in ys.iter().enumerate() {
                for &y2 in &ys[i + 1..] {
                    match (self.p.f(y1), self.p.f(y2)) {
                        (Some(a), Some(b)) if a == b => {
                            return Some(Witness::PendantTriangleCut { x, fx, w, y1, y2, z: a, rest: c2.clone() })
                        }
                        _ => {}
                    }
                }
            }
        }
        None
    }

    /// `(z, w)` when `v` hangs a pendant triangle `v, z, w` with `z = f(v)`.
    fn pendant(&self, v: VertexId) -> Option<(VertexId, VertexId)> {
        let z = self.p.f(v)?;
        let nz = self.nb(z);
        if nz.len() != 2 {
            return None;
        }
        let w = if nz[0] == v { nz[1] } else { nz[0] };
        let nw = self.nb(w);
        (!self.d(w) && nw.len() == 2 && nw.contains(&v) && nw.contains(&z)).then_some((z, w))
    }

    /// Links `d, a, y.., b, d'` between distinct dominators: `f(a) = d`,
    /// `f(b) = d'`, each `y` a pendant-triangle vertex.
    fn links(&self, d: VertexId, allow_pendants: bool) -> Vec<Vec<VertexId>> {
        let mut out = Vec::new();
        for &a in self.nb(d) {
            if self.p.f(a) != Some(d) {
                continue;
            }
            let mut stack = vec![vec![d, a]];
            while let Some(path) = stack.pop() {
                let c = *path.last().unwrap();
                for &n in self.nb(c) {
                    if self.d(n) || path.contains(&n) {
                        continue;
                    }
                    let mut next = path.clone();
                    next.push(n);
                    match self.p.f(n) {
                        Some(e) if e != d && !path.contains(&e) => {
                            let mut link = next.clone();
                            link.push(e);
                            out.push(link);
                        }
                        _ => {}
                    }
                    if allow_pendants && self.pendant(n).is_some() {
                        stack.push(next);
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Lexicographically first elementary cycle of links closing at the
    /// lowest dominator on it. With `pendants`, at least one link must pass
    /// a pendant-triangle vertex; without, links are exactly `d, a, b, d'`.
    fn cycle(&self, pendants: bool, budget: usize) -> Option<Witness> {
        let links: BTreeMap<VertexId, Vec<Vec<VertexId>>> =
            self.p.dset().iter().map(|&d| (d, self.links(d, pendants))).collect();
        let mut search = CycleSearch { ctx: self, links: &links, pendants, budget, used: vec![false; self.p.graph().n()] };
        for &v0 in self.p.dset() {
            search.used[v0] = true;
            let found = search.extend(v0, &mut vec![v0]);
            search.used[v0] = false;
            match found {
                Step::Found(w) => return Some(w),
                Step::OutOfBudget => return None,
                Step::Exhausted => {}
            }
        }
        None
    }

    fn witness_of(&self, cycle: Vec<VertexId>, pendants: bool) -> Option<Witness> {
        if cycle.iter().filter(|&&v| self.d(v)).count() < 2 {
            return None;
        }
        let pend: Vec<(VertexId, VertexId, VertexId)> = cycle
            .iter()
            .filter(|&&v| !self.d(v) && self.p.f(v).is_some_and(|f| !self.d_adjacent_on(&cycle, v, f)))
            .map(|&v| {
                let (z, w) = self.pendant(v).expect("links only pass pendant vertices");
                (v, z, w)
            })
            .collect();
        (pendants != pend.is_empty()).then_some(Witness::Cycle { cycle, pendants: pend })
    }

    fn d_adjacent_on(&self, cycle: &[VertexId], v: VertexId, f: VertexId) -> bool {
        let l = cycle.len();
        let i = cycle.iter().position(|&c| c == v).unwrap();
        cycle[(i + 1) % l] == f || cycle[(i + l - 1) % l] == f
    }
}

enum Step {
    Found(Witness),
    OutOfBudget,
    Exhausted,
}

struct CycleSearch<'c, 'a> {
    ctx: &'c Ctx<'a>,
    links: &'c BTreeMap<VertexId, Vec<Vec<VertexId>>>,
    pendants: bool,
    budget: usize,
    used: Vec<bool>,
}

impl CycleSearch<'_, '_> {
    /// Tries every link out of `at`; `cyc` ends at `at` and starts at the
    /// lowest dominator `cyc[0]`.
    fn extend(&mut self, at: VertexId, cyc: &mut Vec<VertexId>) -> Step {
        let v0 = cyc[0];
        for link in &self.links[&at] {
            if self.budget == 0 {
                return Step::OutOfBudget;
            }
            self.budget -= 1;
            let end = *link.last().unwrap();
            let inner = &link[1..link.len() - 1];
            if inner.iter().any(|&v| self.used[v]) {
                continue;
            }
            if end == v0 {
                let mut cycle = cyc.clone();
                cycle.extend_from_slice(inner);
                if let Some(w) = self.ctx.witness_of(cycle, self.pendants) {
                    return Step::Found(w);
                }
                continue;
            }
            if end < v0 || self.used[end] {
                continue;
            }
            let start = cyc.len();
            for &v in inner.iter().chain([end].iter()) {
                self.used[v] = true;
                cyc.push(v);
            }
            let r = self.extend(end, cyc);
            for &v in &cyc[start..] {
                self.used[v] = false;
            }
            cyc.truncate(start);
            if !matches!(r, Step::Exhausted) {
                return r;
            }
        }
        Step::Exhausted
    }
}

/// Node budget for each cycle search.
pub(crate) const CYCLE_BUDGET: usize = 200_000;

pub(crate) fn find(p: &DominatedPair, kind: super::ReductionKind) -> Option<Witness> {
    use super::ReductionKind as K;
    let c = Ctx { p };
    let cuts = || find_cut_vertices(p.graph()).unwrap_or_default();
    match kind {
        K::DominatorCutSplit => c.dominator_cut(&cuts()),
        K::NonDominatorCutSplit => c.non_dominator_cut(&cuts()),
        K::PendantTriangleCut => c.pendant_triangle_cut(&cuts()),
        K::DoubleTwoPath => c.double_two_path(),
        K::ThetaPair => c.theta_pair(),
        K::TwoPlusThreePath => c.two_plus_three(),
        K::DominatorCycle => c.cycle(false, CYCLE_BUDGET),
        K::SpecialCycle => c.cycle(true, CYCLE_BUDGET),
    }
}

fn all_but(p: &DominatedPair, gone: &BTreeSet<VertexId>) -> (Vec<VertexId>, Vec<Edge>) {
    let g = p.graph();
    let vs = (0..g.n()).filter(|v| !gone.contains(v)).collect();
    let es = g.edges().iter().copied().filter(|(a, b)| !gone.contains(a) && !gone.contains(b)).collect();
    (vs, es)
}

fn induced(p: &DominatedPair, keep: &[VertexId]) -> (Vec<VertexId>, Vec<Edge>) {
    let set: BTreeSet<VertexId> = keep.iter().copied().collect();
    let es = p.graph().edges().iter().copied().filter(|(a, b)| set.contains(a) && set.contains(b)).collect();
    (set.into_iter().collect(), es)
}

/// Rewrite of `p` along `w`, as one spec per produced part.
pub(crate) fn specs(p: &DominatedPair, w: &Witness) -> Vec<PartSpec> {
    match w {
        Witness::DoubleTwoPath { x, y, l1, r1, l2, r2 } => {
            let gone: BTreeSet<VertexId> = [*l1, *r1, *l2, *r2].into();
            merge_spec(p, &gone, &[(*y, *x)])
        }
        Witness::ThetaPair { x, y, z, p1, p3, p2, p4 } => {
            let gone: BTreeSet<VertexId> = p1.iter().chain(p2).chain(p3).chain(p4).chain([y]).copied().collect();
            merge_spec(p, &gone, &[(*z, *x)])
        }
        Witness::TwoPlusThreePath { x, y, u, v } => {
            let gone: BTreeSet<VertexId> = u.iter().chain(v).copied().collect();
            merge_spec(p, &gone, &[(*y, *x)])
        }
        Witness::DominatorCut { x, components } => components
            .iter()
            .map(|c| {
                let (vertices, edges) = induced(p, &[c.as_slice(), &[*x]].concat());
                PartSpec { vertices, edges, ..Default::default() }
            })
            .collect(),
        Witness::NonDominatorCut { x, components, .. } => components
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let (vertices, edges) = induced(p, &[c.as_slice(), &[*x]].concat());
                let mut spec = PartSpec { vertices, edges, ..Default::default() };
                if i > 0 {
                    // triangle x, y_i, z_i with z_i a new dominator
                    spec.new_dominators = vec![false, true];
                    spec.new_edges =
                        vec![(Node::Pre(*x), Node::New(0)), (Node::Pre(*x), Node::New(1)), (Node::New(0), Node::New(1))];
                }
                spec
            })
            .collect(),
        Witness::PendantTriangleCut { x, z, rest, .. } => {
            let (vertices, edges) = induced(p, &[rest.as_slice(), &[*x]].concat());
            vec![PartSpec { vertices, edges, new_edges: vec![(Node::Pre(*x), Node::Pre(*z))], ..Default::default() }]
        }
        Witness::Cycle { cycle, pendants } => {
            let v0 = cycle[0];
            let mut gone: BTreeSet<VertexId> = pendants.iter().flat_map(|&(_, z, w)| [z, w]).collect();
            let merged: Vec<(VertexId, VertexId)> =
                cycle[1..].iter().filter(|&&v| p.is_dominator(v)).map(|&v| (v, v0)).collect();
            let l = cycle.len();
            let cyc_edges: BTreeSet<Edge> = (0..l).map(|j| edge(cycle[j], cycle[(j + 1) % l])).collect();
            gone.extend(merged.iter().map(|m| m.0));
            let (vertices, _) = all_but(p, &gone);
            let pend_set: BTreeSet<VertexId> = pendants.iter().flat_map(|&(_, z, w)| [z, w]).collect();
            let edges = p
                .graph()
                .edges()
                .iter()
                .copied()
                .filter(|e| !cyc_edges.contains(e) && !pend_set.contains(&e.0) && !pend_set.contains(&e.1))
                .collect();
            let outside: Vec<VertexId> = cycle.iter().copied().filter(|&v| !p.is_dominator(v)).collect();
            let mut new_edges = Vec::new();
            for (i, &v) in outside.iter().enumerate() {
                new_edges.push((Node::Pre(v0), Node::Pre(v)));
                new_edges.push((Node::Pre(v0), Node::New(i)));
                new_edges.push((Node::New(i), Node::Pre(v)));
            }
            vec![PartSpec {
                vertices,
                rep: merged.into_iter().collect(),
                edges,
                new_dominators: vec![false; outside.len()],
                new_edges,
            }]
        }
    }
}

/// Deletes `gone`, then folds each `(from, into)` pair.
fn merge_spec(p: &DominatedPair, gone: &BTreeSet<VertexId>, merges: &[(VertexId, VertexId)]) -> Vec<PartSpec> {
    let (_, edges) = all_but(p, gone);
    let mut all_gone = gone.clone();
    all_gone.extend(merges.iter().map(|m| m.0));
    let (vertices, _) = all_but(p, &all_gone);
    vec![PartSpec { vertices, rep: merges.iter().copied().collect(), edges, ..Default::default() }]
}
