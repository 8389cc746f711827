//! End-to-end orientation: standard form, bridgeless core, minimal
//! subgraph, reductions, base orientations, lifting and pull-back.

use crate::dominating::{exact_dominating_set, greedy_dominating_set, DominatedPair, DEFAULT_EXACT_LIMIT};
use crate::error::{Error, Result};
use crate::graph::{find_bridges, is_connected, UndirectedGraph, VertexId};
use crate::oracle::{exact_min_oriented_diameter_with, find_profile_orientation, OracleOptions};
use crate::orientation::{diam_profile, is_strongly_connected, robbins_orient, DiameterProfile, Orientation};
use crate::reductions::reduce_to_fixpoint;
use crate::spanning::{build_dominating_tree, extend_orientation, extract_minimal_subgraph, fix_to_bridgeless};
use crate::standard_form::{pull_back_orientation, to_first_standard_form};
use serde::Serialize;
use std::fmt;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Route {
    /// Reductions and base orientations; diam <= 4γ.
    #[serde(rename = "reduced-4gamma")]
    Reduced4Gamma,
    /// Any strong orientation of the minimal subgraph, extended; diam <= 5γ-1.
    #[serde(rename = "fomin-5gamma")]
    Fomin5Gamma,
    /// Exact search on a small input.
    #[serde(rename = "oracle")]
    Oracle,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Reduced4Gamma => "reduced-4γ",
            Route::Fomin5Gamma => "fomin-5γ",
            Route::Oracle => "oracle",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DsetSource {
    Given,
    Exact,
    Greedy,
}

#[derive(Clone, Debug)]
pub struct OrientOptions {
    /// Inputs with at most this many edges may fall back to the exact
    /// search when the reduced route misses 4γ; 0 disables it.
    pub oracle_max_edges: usize,
    /// Edge cap and node budget for the profile search on irreducible
    /// pairs above the base-case size.
    pub search_max_edges: usize,
    pub search_nodes: u64,
}

impl Default for OrientOptions {
    fn default() -> Self {
        Self { oracle_max_edges: 16, search_max_edges: 30, search_nodes: 2_000_000 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrientationReport {
    pub n: usize,
    pub m: usize,
    pub bridges: usize,
    pub dset: Vec<VertexId>,
    pub dset_source: DsetSource,
    pub gamma: usize,
    pub route: Route,
    pub profile: DiameterProfile,
    pub bound_4gamma: u32,
    pub bound_5gamma_minus_1: u32,
    pub within_4gamma: bool,
    pub within_5gamma_minus_1: bool,
    /// Structural standard-form transformations.
    pub transform_len: usize,
    /// Reduction steps applied to the minimal subgraph.
    pub trace_len: usize,
    pub irreducible_components: usize,
    /// Irreducible pairs above the base-case size that needed the profile
    /// search.
    pub searched_components: usize,
    /// Why the reduced route was not used, if it was not.
    pub fallback_reason: Option<String>,
    pub wall_time_ms: f64,
}

struct Reduced {
    h: Orientation,
    trace_len: usize,
    irreducible: usize,
    searched: usize,
}

/// Orients `g` with diameter at most `5|D| - 1`, and at most `4|D|` unless
/// the report says otherwise.
pub fn orient_graph(
    g: &UndirectedGraph,
    dset: Option<&[VertexId]>,
    opts: &OrientOptions,
) -> Result<(Orientation, OrientationReport)> {
    let start = Instant::now();
    let bridges = find_bridges(g)?;
    if !bridges.is_empty() {
        return Err(Error::HasBridge(bridges));
    }
    let (dset, source) = match dset {
        Some(d) => {
            if let Some(&v) = d.iter().find(|&&v| v >= g.n()) {
                return Err(Error::InvalidGraph(format!("dominator {v} out of range")));
            }
            (d.to_vec(), DsetSource::Given)
        }
        None if g.n() <= DEFAULT_EXACT_LIMIT => (exact_dominating_set(g, DEFAULT_EXACT_LIMIT)?, DsetSource::Exact),
        None => (greedy_dominating_set(g), DsetSource::Greedy),
    };
    let pair = DominatedPair::new(g.clone(), dset)?;
    let gamma = pair.dset().len();
    let (b4, b5) = (4 * gamma as u32, 5 * gamma as u32 - 1);

    let mut report = OrientationReport {
        n: g.n(),
        m: g.m(),
        bridges: 0,
        dset: pair.dset().to_vec(),
        dset_source: source,
        gamma,
        route: Route::Reduced4Gamma,
        profile: DiameterProfile::default(),
        bound_4gamma: b4,
        bound_5gamma_minus_1: b5,
        within_4gamma: true,
        within_5gamma_minus_1: true,
        transform_len: 0,
        trace_len: 0,
        irreducible_components: 0,
        searched_components: 0,
        fallback_reason: None,
        wall_time_ms: 0.0,
    };
    if g.m() == 0 {
        let h = Orientation::from_forward(g.clone(), vec![]);
        report.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
        return Ok((h, report));
    }

    let (s, transforms) = to_first_standard_form(&pair)?;
    report.transform_len = transforms.structural_len();
    let tree = build_dominating_tree(s.pair())?;
    let core = fix_to_bridgeless(s.pair(), &tree)?;
    let minimal = extract_minimal_subgraph(&s, &core)?;
    let mp = minimal.local_pair(s.pair())?;

    let finish = |h_min: &Orientation| -> Result<Orientation> {
        let ext = extend_orientation(s.pair(), &minimal, h_min)?;
        pull_back_orientation(&transforms, &ext)
    };

    let reduced = reduce_and_orient(&mp, opts).and_then(|r| {
        let h = finish(&r.h)?;
        let d = diam_profile(&h, pair.dset())?.diam;
        if d > b4 {
            return Err(Error::Postcondition(format!("reduced route gave diameter {d} > {b4}")));
        }
        Ok(Reduced { h, ..r })
    });
    let mut h = match reduced {
        Ok(r) => {
            report.trace_len = r.trace_len;
            report.irreducible_components = r.irreducible;
            report.searched_components = r.searched;
            r.h
        }
        Err(e) => {
            report.route = Route::Fomin5Gamma;
            report.fallback_reason = Some(e.to_string());
            finish(&robbins_orient(mp.graph())?)?
        }
    };

    if report.route != Route::Reduced4Gamma && g.m() <= opts.oracle_max_edges {
        let r = exact_min_oriented_diameter_with(g, &OracleOptions { budget: Some(b4), max_edges: opts.oracle_max_edges, threads: 1 })?;
        if r.value <= b4 {
            report.route = Route::Oracle;
            h = r.witness;
        }
    }

    if !is_strongly_connected(&h) {
        return Err(Error::NotStrong);
    }
    report.profile = diam_profile(&h, pair.dset())?;
    report.within_4gamma = report.profile.diam <= b4;
    report.within_5gamma_minus_1 = report.profile.diam <= b5;
    report.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok((h, report))
}

/// Per-class limits `[4k-4, 4k-2, 4k]` a base orientation must meet so
/// that extension stays within `4k`.
pub fn base_limits(k: usize) -> [u32; 3] {
    let k = k as u32;
    [(4 * k).saturating_sub(4), (4 * k).saturating_sub(2), 4 * k]
}

fn reduce_and_orient(mp: &DominatedPair, opts: &OrientOptions) -> Result<Reduced> {
    let trace = reduce_to_fixpoint(mp)?;
    let mut irreducible = 0;
    let mut searched = 0;
    let h = trace.lift_with(&mut |q: &DominatedPair| {
        irreducible += 1;
        let k = q.dset().len();
        let limits = base_limits(k);
        let robbins = robbins_orient(q.graph())?;
        if q.graph().n() <= 4 * k.saturating_sub(1) + 1 {
            return Ok(robbins);
        }
        searched += 1;
        find_profile_orientation(q.graph(), q.dset(), limits, opts.search_max_edges, opts.search_nodes)?.ok_or_else(|| {
            Error::Postcondition(format!("irreducible pair with {} vertices and {k} dominators has no orientation found within {limits:?}", q.graph().n()))
        })
    })?;
    Ok(Reduced { h, trace_len: trace.steps.len(), irreducible, searched })
}

/// Convenience: connectivity precheck used by callers that want the error
/// before choosing a dominating set.
pub fn check_input(g: &UndirectedGraph) -> Result<()> {
    if !is_connected(g) {
        return Err(Error::NotConnected);
    }
    let bridges = find_bridges(g)?;
    if bridges.is_empty() {
        Ok(())
    } else {
        Err(Error::HasBridge(bridges))
    }
}
