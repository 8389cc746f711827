//! Exact minimum oriented diameter by branch and bound over edge directions.
//!
//! Edges are fixed in depth-first-tree order (tree edges first, then back
//! edges), trying the depth-first direction first. A partial assignment is
//! pruned when a vertex has all incident edges fixed and they all point the
//! same way, or when the optimistic distances (unfixed edges usable both
//! ways) already exceed the current limit. The first edge is pinned because
//! reversing every arc preserves both the diameter and the profile.
//!
//! The search space is split into prefixes of the next few edge directions;
//! prefixes can run on several threads. Each prefix keeps its own best value
//! and only prunes against the shared bound with a strict comparison, so the
//! returned witness does not depend on the thread count.

use crate::error::{Error, Result};
use crate::graph::{is_connected, bridges_unchecked, UndirectedGraph, VertexId};
use crate::orientation::{diameter, robbins_orient, Orientation};
use std::sync::atomic::{AtomicBool, AtomicU32, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

/// Default edge limit of the exact search.
pub const DEFAULT_EDGE_LIMIT: usize = 26;

const PREFIX_BITS: usize = 4;

/// Best value found under one prefix and its orientation bits.
type Hit = (u32, Vec<bool>);

/// Options for [`exact_min_oriented_diameter_with`].
#[derive(Clone, Debug)]
pub struct OracleOptions {
    /// Return as soon as an orientation of diameter at most this is found.
    pub budget: Option<u32>,
    pub max_edges: usize,
    pub threads: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self { budget: None, max_edges: DEFAULT_EDGE_LIMIT, threads: 1 }
    }
}

/// Outcome of the exact search.
#[derive(Clone, Debug)]
pub struct OracleResult {
    pub value: u32,
    pub witness: Orientation,
    /// False when a budget hit ended the search early.
    pub optimal: bool,
    pub nodes: u64,
}

/// Minimum diameter over all strong orientations, with a witness.
pub fn exact_min_oriented_diameter(g: &UndirectedGraph, budget: Option<u32>) -> Result<(u32, Orientation)> {
    let r = exact_min_oriented_diameter_with(g, &OracleOptions { budget, ..OracleOptions::default() })?;
    Ok((r.value, r.witness))
}

pub fn exact_min_oriented_diameter_with(g: &UndirectedGraph, opts: &OracleOptions) -> Result<OracleResult> {
    let robbins = precheck(g, opts.max_edges)?;
    let start = diameter(&robbins).expect("robbins orientation is strong");
    if start == 0 || opts.budget.is_some_and(|b| start <= b) {
        return Ok(OracleResult { value: start, witness: robbins, optimal: start == 0, nodes: 0 });
    }
    let space = SearchSpace::new(g, &robbins, &[]);
    if let Some(b) = opts.budget {
        let found = space.run(Goal::Within([b; 3]), opts.threads, u64::MAX);
        if let Some(w) = found.witness {
            let value = diameter(&w).unwrap();
            return Ok(OracleResult { value, witness: w, optimal: false, nodes: found.nodes });
        }
    }
    let found = space.run(Goal::Minimize(start), opts.threads, u64::MAX);
    let witness = found.witness.unwrap_or(robbins);
    let value = diameter(&witness).unwrap();
    Ok(OracleResult { value, witness, optimal: true, nodes: found.nodes })
}

/// Searches for a strong orientation whose profile relative to `dset`
/// satisfies `[diam0, diam1, diam2] <= limits`. Returns `Ok(None)` when none
/// exists or the node budget ran out first.
pub fn find_profile_orientation(
    g: &UndirectedGraph,
    dset: &[VertexId],
    limits: [u32; 3],
    max_edges: usize,
    max_nodes: u64,
) -> Result<Option<Orientation>> {
    let robbins = precheck(g, max_edges)?;
    let space = SearchSpace::new(g, &robbins, dset);
    if let Some(classes) = space.exact_classes(&robbins) {
        if classes.iter().zip(limits).all(|(&c, l)| c <= l) {
            return Ok(Some(robbins));
        }
    }
    Ok(space.run(Goal::Within(limits), 1, max_nodes).witness)
}

fn precheck(g: &UndirectedGraph, max_edges: usize) -> Result<Orientation> {
    if !is_connected(g) {
        return Err(Error::NotConnected);
    }
    let bridges = bridges_unchecked(g);
    if !bridges.is_empty() {
        return Err(Error::HasBridge(bridges));
    }
    if g.m() > max_edges {
        return Err(Error::TooLarge { size: g.m(), limit: max_edges });
    }
    if g.n() > 64 {
        return Err(Error::TooLarge { size: g.n(), limit: 64 });
    }
    robbins_orient(g)
}

#[derive(Clone, Copy)]
enum Goal {
    /// Improve strictly on the given diameter.
    Minimize(u32),
    /// Any orientation within per-class limits.
    Within([u32; 3]),
}

struct Found {
    witness: Option<Orientation>,
    nodes: u64,
}

/// Immutable description of the search: edge order and natural directions.
struct SearchSpace<'g> {
    g: &'g UndirectedGraph,
    n: usize,
    /// `(tail, head)` in the depth-first direction, in branching order.
    order: Vec<(usize, usize)>,
    full: u64,
    d_mask: u64,
}

struct Shared {
    best: AtomicU32,
    found_prefix: AtomicUsize,
    nodes: AtomicU64,
    max_nodes: u64,
    exhausted: AtomicBool,
}

impl<'g> SearchSpace<'g> {
    fn new(g: &'g UndirectedGraph, robbins: &Orientation, dset: &[VertexId]) -> Self {
        let n = g.n();
        let mut order = Vec::with_capacity(g.m());
        let mut back = Vec::new();
        let mut placed = vec![false; g.m()];
        let mut seen = vec![false; n];
        if n > 0 {
            seen[0] = true;
            let mut stack = vec![(0usize, 0usize)];
            while let Some(&mut (u, ref mut pos)) = stack.last_mut() {
                let Some(&w) = g.neighbors(u).get(*pos) else {
                    stack.pop();
                    continue;
                };
                *pos += 1;
                let i = g.edge_index(u, w).unwrap();
                if placed[i] {
                    continue;
                }
                placed[i] = true;
                if !seen[w] {
                    seen[w] = true;
                    order.push(robbins.arc(i));
                    stack.push((w, 0));
                } else {
                    back.push(robbins.arc(i));
                }
            }
        }
        order.extend(back);
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let d_mask = dset.iter().fold(0u64, |m, &v| m | (1u64 << v));
        Self { g, n, order, full, d_mask }
    }

    fn exact_classes(&self, h: &Orientation) -> Option<[u32; 3]> {
        let mut st = State::new(self.n);
        for &(t, hd) in &self.order {
            let natural = h.directed(t, hd) == Some(true);
            st.assign(t, hd, natural);
        }
        self.bound(&st, [u32::MAX; 3])
    }

    /// Optimistic per-class maxima, or `None` if infeasible or beyond
    /// `limits`.
    fn bound(&self, st: &State, limits: [u32; 3]) -> Option<[u32; 3]> {
        let mut classes = [0u32; 3];
        for s in 0..self.n {
            let s_out = usize::from(self.d_mask >> s & 1 == 0);
            let lim_d = limits[s_out];
            let lim_o = limits[s_out + 1];
            let mut reached = 1u64 << s;
            let mut frontier = reached;
            let mut level = 0u32;
            while reached != self.full {
                level += 1;
                let mut next = 0u64;
                let mut f = frontier;
                while f != 0 {
                    let v = f.trailing_zeros() as usize;
                    f &= f - 1;
                    next |= st.out_fixed[v] | st.und[v];
                }
                next &= !reached;
                if next == 0 {
                    return None;
                }
                if next & self.d_mask != 0 {
                    if level > lim_d {
                        return None;
                    }
                    classes[s_out] = classes[s_out].max(level);
                }
                if next & !self.d_mask != 0 {
                    if level > lim_o {
                        return None;
                    }
                    classes[s_out + 1] = classes[s_out + 1].max(level);
                }
                reached |= next;
                frontier = next;
            }
        }
        Some(classes)
    }

    fn run(&self, goal: Goal, threads: usize, max_nodes: u64) -> Found {
        let m = self.order.len();
        let k = PREFIX_BITS.min(m.saturating_sub(1));
        let prefixes = 1usize << k;
        let initial_best = match goal {
            Goal::Minimize(b) => b,
            Goal::Within(_) => u32::MAX,
        };
        let shared = Shared {
            best: AtomicU32::new(initial_best),
            found_prefix: AtomicUsize::new(usize::MAX),
            nodes: AtomicU64::new(0),
            max_nodes,
            exhausted: AtomicBool::new(false),
        };
        let results: Mutex<Vec<Option<Hit>>> = Mutex::new(vec![None; prefixes]);
        let next = AtomicUsize::new(0);
        let worker = || loop {
            let p = next.fetch_add(1, Ordering::SeqCst);
            if p >= prefixes {
                break;
            }
            if let Some(r) = self.run_prefix(p, k, goal, &shared) {
                results.lock().unwrap()[p] = Some(r);
            }
        };
        if threads <= 1 {
            worker();
        } else {
            std::thread::scope(|scope| {
                for _ in 0..threads {
                    scope.spawn(worker);
                }
            });
        }
        let nodes = shared.nodes.load(Ordering::SeqCst);
        let results = results.into_inner().unwrap();
        let mut hits = results.into_iter().flatten();
        let best = match goal {
            // lowest value, then lowest prefix index
            Goal::Minimize(_) => hits.min_by_key(|(v, _)| *v),
            Goal::Within(_) => hits.next(),
        };
        Found { witness: best.map(|(_, dirs)| self.to_orientation(&dirs)), nodes }
    }

    fn to_orientation(&self, natural: &[bool]) -> Orientation {
        let arcs: Vec<_> = self
            .order
            .iter()
            .zip(natural)
            .map(|(&(t, h), &nat)| if nat { (t, h) } else { (h, t) })
            .collect();
        Orientation::from_arcs(self.g.clone(), &arcs).expect("search covers every edge")
    }

    fn run_prefix(&self, p: usize, k: usize, goal: Goal, shared: &Shared) -> Option<(u32, Vec<bool>)> {
        let mut worker = Worker {
            space: self,
            st: State::new(self.n),
            dirs: Vec::with_capacity(self.order.len()),
            goal,
            local_best: match goal {
                Goal::Minimize(b) => b,
                Goal::Within(_) => u32::MAX,
            },
            found: None,
            prefix: p,
            shared,
        };
        worker.init_undirected();
        let mut choices = vec![true];
        for j in 0..k {
            choices.push(p >> (k - 1 - j) & 1 == 0);
        }
        for (i, &nat) in choices.iter().enumerate().take(self.order.len()) {
            if !worker.push(i, nat) {
                return None;
            }
        }
        worker.dfs(choices.len().min(self.order.len()));
        worker.found
    }
}

#[derive(Clone)]
struct State {
    out_fixed: Vec<u64>,
    in_fixed: Vec<u64>,
    und: Vec<u64>,
}

impl State {
    fn new(n: usize) -> Self {
        Self { out_fixed: vec![0; n], in_fixed: vec![0; n], und: vec![0; n] }
    }

    fn assign(&mut self, t: usize, h: usize, natural: bool) {
        let (a, b) = if natural { (t, h) } else { (h, t) };
        self.und[a] &= !(1u64 << b);
        self.und[b] &= !(1u64 << a);
        self.out_fixed[a] |= 1u64 << b;
        self.in_fixed[b] |= 1u64 << a;
    }

    fn unassign(&mut self, t: usize, h: usize, natural: bool) {
        let (a, b) = if natural { (t, h) } else { (h, t) };
        self.out_fixed[a] &= !(1u64 << b);
        self.in_fixed[b] &= !(1u64 << a);
        self.und[a] |= 1u64 << b;
        self.und[b] |= 1u64 << a;
    }

    /// All edges at `v` fixed and all pointing the same way.
    fn one_sided(&self, v: usize) -> bool {
        self.und[v] == 0 && (self.out_fixed[v] == 0 || self.in_fixed[v] == 0)
    }
}

struct Worker<'a, 'g> {
    space: &'a SearchSpace<'g>,
    st: State,
    dirs: Vec<bool>,
    goal: Goal,
    local_best: u32,
    found: Option<(u32, Vec<bool>)>,
    prefix: usize,
    shared: &'a Shared,
}

impl Worker<'_, '_> {
    fn init_undirected(&mut self) {
        for &(t, h) in &self.space.order {
            self.st.und[t] |= 1u64 << h;
            self.st.und[h] |= 1u64 << t;
        }
    }

    fn limits(&self) -> [u32; 3] {
        match self.goal {
            Goal::Minimize(_) => {
                let l = self.local_best.saturating_sub(1).min(self.shared.best.load(Ordering::Relaxed));
                [l; 3]
            }
            Goal::Within(l) => l,
        }
    }

    fn stop(&self) -> bool {
        if self.shared.exhausted.load(Ordering::Relaxed) {
            return true;
        }
        match self.goal {
            Goal::Minimize(_) => self.local_best == 0,
            Goal::Within(_) => {
                self.found.is_some() || self.shared.found_prefix.load(Ordering::Relaxed) < self.prefix
            }
        }
    }

    /// Fixes edge `i`; false (and undone) if the result is pruned.
    fn push(&mut self, i: usize, natural: bool) -> bool {
        let (t, h) = self.space.order[i];
        self.st.assign(t, h, natural);
        self.dirs.push(natural);
        let nodes = self.shared.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if nodes > self.shared.max_nodes {
            self.shared.exhausted.store(true, Ordering::Relaxed);
        }
        let ok = self.space.n < 2 || (!self.st.one_sided(t) && !self.st.one_sided(h));
        let ok = ok && self.space.bound(&self.st, self.limits()).is_some();
        if !ok {
            self.pop(i);
        }
        ok
    }

    fn pop(&mut self, i: usize) {
        let (t, h) = self.space.order[i];
        let natural = self.dirs.pop().unwrap();
        self.st.unassign(t, h, natural);
    }

    fn dfs(&mut self, i: usize) {
        if self.stop() {
            return;
        }
        if i == self.space.order.len() {
            self.leaf();
            return;
        }
        for natural in [true, false] {
            if self.push(i, natural) {
                self.dfs(i + 1);
                self.pop(i);
                if self.stop() {
                    return;
                }
            }
        }
    }

    fn leaf(&mut self) {
        let Some(classes) = self.space.bound(&self.st, self.limits()) else { return };
        let value = classes.into_iter().max().unwrap();
        self.found = Some((value, self.dirs.clone()));
        match self.goal {
            Goal::Minimize(_) => {
                self.local_best = value;
                self.shared.best.fetch_min(value, Ordering::Relaxed);
            }
            Goal::Within(_) => {
                self.shared.found_prefix.fetch_min(self.prefix, Ordering::Relaxed);
            }
        }
    }
}
