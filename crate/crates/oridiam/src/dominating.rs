//! Dominating sets: the checked pair type, exact and greedy solvers.

use crate::error::{Error, Result};
use crate::graph::{UndirectedGraph, VertexId};

/// Default vertex limit of the exact solver.
pub const DEFAULT_EXACT_LIMIT: usize = 32;

/// A graph together with a dominating set `D` and the derived dominator map.
///
/// `fmap[u]` is `Some(d)` iff `u` is outside `D` and `d` is its only
/// neighbor in `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominatedPair {
    graph: UndirectedGraph,
    dset: Vec<VertexId>,
    in_d: Vec<bool>,
    fmap: Vec<Option<VertexId>>,
}

impl DominatedPair {
    pub fn new(graph: UndirectedGraph, dset: impl IntoIterator<Item = VertexId>) -> Result<Self> {
        let pair = Self::new_unchecked(graph, dset)?;
        if let Some(v) = first_undominated(&pair.graph, &pair.in_d) {
            return Err(Error::NotDominating(v));
        }
        Ok(pair)
    }

    /// Like [`Self::new`] but without the domination check. Used for
    /// synthetic rewrite fixtures.
    pub fn new_unchecked(graph: UndirectedGraph, dset: impl IntoIterator<Item = VertexId>) -> Result<Self> {
        let mut dset: Vec<VertexId> = dset.into_iter().collect();
        dset.sort_unstable();
        dset.dedup();
        if let Some(&v) = dset.iter().find(|&&v| v >= graph.n()) {
            return Err(Error::InvalidGraph(format!("dominator {v} out of range")));
        }
        let mut in_d = vec![false; graph.n()];
        for &v in &dset {
            in_d[v] = true;
        }
        let fmap = (0..graph.n())
            .map(|u| {
                if in_d[u] {
                    return None;
                }
                let mut it = graph.neighbors(u).iter().filter(|&&w| in_d[w]);
                match (it.next(), it.next()) {
                    (Some(&d), None) => Some(d),
                    _ => None,
                }
            })
            .collect();
        Ok(Self { graph, dset, in_d, fmap })
    }

    pub fn graph(&self) -> &UndirectedGraph {
        &self.graph
    }

    pub fn dset(&self) -> &[VertexId] {
        &self.dset
    }

    pub fn in_d(&self) -> &[bool] {
        &self.in_d
    }

    pub fn is_dominator(&self, v: VertexId) -> bool {
        self.in_d[v]
    }

    /// Unique dominator of `u`, if defined.
    pub fn f(&self, u: VertexId) -> Option<VertexId> {
        self.fmap[u]
    }

    pub fn fmap(&self) -> &[Option<VertexId>] {
        &self.fmap
    }

    /// Every vertex outside `D` has exactly one neighbor in `D`.
    pub fn has_total_fmap(&self) -> bool {
        (0..self.graph.n()).all(|u| self.in_d[u] || self.fmap[u].is_some())
    }

    pub fn into_parts(self) -> (UndirectedGraph, Vec<VertexId>) {
        (self.graph, self.dset)
    }
}

fn first_undominated(g: &UndirectedGraph, in_d: &[bool]) -> Option<VertexId> {
    (0..g.n()).find(|&u| !in_d[u] && !g.neighbors(u).iter().any(|&w| in_d[w]))
}

/// True iff every vertex outside `dset` has a neighbor in `dset`.
pub fn is_dominating_set(g: &UndirectedGraph, dset: &[VertexId]) -> bool {
    let mut in_d = vec![false; g.n()];
    for &v in dset {
        in_d[v] = true;
    }
    first_undominated(g, &in_d).is_none()
}

/// Solver selection for [`min_dominating_set`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DominationMode {
    Exact,
    Greedy,
}

/// Minimum dominating set (exact) or maximal-coverage-first set (greedy),
/// returned sorted. Exact mode is limited to [`DEFAULT_EXACT_LIMIT`] vertices.
pub fn min_dominating_set(g: &UndirectedGraph, mode: DominationMode) -> Result<Vec<VertexId>> {
    match mode {
        DominationMode::Greedy => Ok(greedy_dominating_set(g)),
        DominationMode::Exact => exact_dominating_set(g, DEFAULT_EXACT_LIMIT),
    }
}

/// Repeatedly takes the vertex covering most undominated vertices, lowest id
/// on ties.
pub fn greedy_dominating_set(g: &UndirectedGraph) -> Vec<VertexId> {
    let n = g.n();
    let mut covered = vec![false; n];
    let mut left = n;
    let mut chosen = Vec::new();
    while left > 0 {
        let gain = |v: VertexId| {
            usize::from(!covered[v]) + g.neighbors(v).iter().filter(|&&w| !covered[w]).count()
        };
        let best = (0..n).max_by_key(|&v| (gain(v), std::cmp::Reverse(v))).unwrap();
        chosen.push(best);
        for w in std::iter::once(best).chain(g.neighbors(best).iter().copied()) {
            if !covered[w] {
                covered[w] = true;
                left -= 1;
            }
        }
    }
    chosen.sort_unstable();
    chosen
}

/// Branch and bound over closed neighbourhoods of the lowest undominated
/// vertex, seeded with the greedy solution.
pub fn exact_dominating_set(g: &UndirectedGraph, limit: usize) -> Result<Vec<VertexId>> {
    let n = g.n();
    if n > limit.min(64) {
        return Err(Error::TooLarge { size: n, limit: limit.min(64) });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let closed: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(1u64 << v, |m, &w| m | (1u64 << w)))
        .collect();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut search = ExactSearch {
        closed: &closed,
        full,
        best: greedy_dominating_set(g),
        current: Vec::new(),
    };
    search.run(0);
    let mut best = search.best;
    best.sort_unstable();
    Ok(best)
}

struct ExactSearch<'a> {
    closed: &'a [u64],
    full: u64,
    best: Vec<VertexId>,
    current: Vec<VertexId>,
}

impl ExactSearch<'_> {
    fn run(&mut self, dominated: u64) {
        if dominated == self.full {
            if self.current.len() < self.best.len() {
                self.best = self.current.clone();
            }
            return;
        }
        let open = self.full & !dominated;
        let max_gain = self
            .closed
            .iter()
            .map(|&c| (c & open).count_ones())
            .max()
            .unwrap_or(1)
            .max(1);
        let lower = open.count_ones().div_ceil(max_gain) as usize;
        if self.current.len() + lower >= self.best.len() {
            return;
        }
        let v = open.trailing_zeros() as usize;
        let mut options = self.closed[v];
        while options != 0 {
            let w = options.trailing_zeros() as usize;
            options &= options - 1;
            self.current.push(w);
            self.run(dominated | self.closed[w]);
            self.current.pop();
        }
    }
}
