//! Rewrites that shrink a minimal dominated pair, and the lifts that carry
//! orientations of the rewritten pairs back.
//!
//! Every step either merges dominators or splits the pair at a cut vertex
//! into parts with fewer dominators each, so [`reduce_to_fixpoint`]
//! terminates. Each lift checks its diameter bound numerically.

mod build;
mod checks;
mod lift;
mod patterns;

pub use build::{restore, EditScript, Part};
pub use checks::{quadrangle_violations, shared_dominator_violations};
pub use lift::{lift_bound, lift_orientation, lift_unchecked};
pub use patterns::Witness;

use crate::dominating::DominatedPair;
use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::orientation::Orientation;
use crate::spanning::{extend_orientation, extract_minimal_subgraph, BridgelessCore, Subgraph};
use crate::standard_form::StandardFormPair;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionKind {
    DoubleTwoPath,
    ThetaPair,
    TwoPlusThreePath,
    DominatorCutSplit,
    NonDominatorCutSplit,
    PendantTriangleCut,
    DominatorCycle,
    SpecialCycle,
}

impl ReductionKind {
    /// Detection order.
    pub const SCAN_ORDER: [ReductionKind; 8] = [
        Self::DominatorCutSplit,
        Self::NonDominatorCutSplit,
        Self::PendantTriangleCut,
        Self::DoubleTwoPath,
        Self::ThetaPair,
        Self::TwoPlusThreePath,
        Self::DominatorCycle,
        Self::SpecialCycle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::DoubleTwoPath => "double_two_path",
            Self::ThetaPair => "theta_pair",
            Self::TwoPlusThreePath => "two_plus_three_path",
            Self::DominatorCutSplit => "dominator_cut_split",
            Self::NonDominatorCutSplit => "non_dominator_cut_split",
            Self::PendantTriangleCut => "pendant_triangle_cut",
            Self::DominatorCycle => "dominator_cycle",
            Self::SpecialCycle => "special_cycle",
        }
    }
}

/// A matched pattern together with the parts it rewrites the pair into.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub kind: ReductionKind,
    pub witness: Witness,
    pub pre: DominatedPair,
    pub parts: Vec<Part>,
    pub edit: EditScript,
}

impl ReductionStep {
    /// Builds the step for `witness` without checking that the pattern's
    /// side conditions hold; used for hand-made fixtures.
    pub fn from_witness(pre: &DominatedPair, kind: ReductionKind, witness: Witness) -> Result<Self> {
        let specs = patterns::specs(pre, &witness);
        let parts = specs.iter().map(|s| build::build_part(pre, s)).collect::<Result<Vec<_>>>()?;
        let edit = build::edit_script(pre, &specs, &parts);
        Ok(Self { kind, witness, pre: pre.clone(), parts, edit })
    }

    /// Post id in part `i` of pre vertex `v`, following identifications.
    pub fn post_of(&self, i: usize, v: VertexId) -> Option<VertexId> {
        let rep: BTreeMap<VertexId, VertexId> = self.edit.identifications.iter().map(|&(a, b, _)| (a, b)).collect();
        self.parts[i].post_of(v, &rep)
    }

    pub fn part_pairs(&self) -> Vec<DominatedPair> {
        self.parts.iter().map(|p| p.pair.clone()).collect()
    }
}

/// First match in [`ReductionKind::SCAN_ORDER`]; `None` when `|D| < 3`.
pub fn detect_reduction(p: &DominatedPair) -> Option<ReductionStep> {
    if p.dset().len() < 3 {
        return None;
    }
    ReductionKind::SCAN_ORDER.iter().find_map(|&kind| {
        let w = patterns::find(p, kind)?;
        ReductionStep::from_witness(p, kind, w).ok()
    })
}

/// The parts of `step`, provided it was detected on `p`.
pub fn apply_reduction(p: &DominatedPair, step: &ReductionStep) -> Result<Vec<DominatedPair>> {
    if &step.pre != p {
        return Err(Error::StaleStep);
    }
    Ok(step.part_pairs())
}

/// What happened to one pair in a [`ReductionTrace`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeAction {
    /// The minimal subgraph was rewritten by `steps[step]` into the pairs
    /// at `children`, one per part.
    Reduced { step: usize, children: Vec<usize> },
    /// No pattern applies to the minimal subgraph.
    Irreducible,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceNode {
    pub pair: DominatedPair,
    /// Minimal subgraph of `pair` the rewrite acts on.
    pub minimal: Subgraph,
    pub action: NodeAction,
}

impl TraceNode {
    pub fn minimal_pair(&self) -> DominatedPair {
        self.minimal.local_pair(&self.pair).expect("minimal subgraph of its own pair")
    }
}

/// Tree of rewrites rooted at the input pair (node 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub nodes: Vec<TraceNode>,
    pub steps: Vec<ReductionStep>,
}

impl ReductionTrace {
    pub fn original(&self) -> &DominatedPair {
        &self.nodes[0].pair
    }

    /// Minimal pairs no pattern applies to.
    pub fn irreducible(&self) -> Vec<DominatedPair> {
        self.nodes.iter().filter(|n| n.action == NodeAction::Irreducible).map(TraceNode::minimal_pair).collect()
    }

    /// `|V| <= 4(|D| - 1) + 1` on every irreducible pair.
    pub fn size_ok(&self) -> bool {
        self.irreducible().iter().all(|p| p.graph().n() <= 4 * p.dset().len().saturating_sub(1) + 1)
    }

    /// Orients every irreducible pair with `base`, then lifts and extends
    /// back to the input pair.
    pub fn lift_with(&self, base: &mut dyn FnMut(&DominatedPair) -> Result<Orientation>) -> Result<Orientation> {
        self.lift_node(0, base)
    }

    fn lift_node(&self, i: usize, base: &mut dyn FnMut(&DominatedPair) -> Result<Orientation>) -> Result<Orientation> {
        let node = &self.nodes[i];
        let h = match &node.action {
            NodeAction::Irreducible => base(&node.minimal_pair())?,
            NodeAction::Reduced { step, children } => {
                let hs = children.iter().map(|&c| self.lift_node(c, base)).collect::<Result<Vec<_>>>()?;
                lift_orientation(&self.steps[*step], &hs)?
            }
        };
        extend_orientation(&node.pair, &node.minimal, &h)
    }
}

/// Greedy minimal subgraph of a whole bridgeless pair.
pub fn minimize(p: &DominatedPair) -> Result<Subgraph> {
    let core = BridgelessCore { core: Subgraph::whole(p.graph()), fixes: vec![], violations: vec![] };
    extract_minimal_subgraph(&StandardFormPair::from_pair(p.clone()), &core)
}

/// Minimizes and rewrites until no pattern applies to any part.
pub fn reduce_to_fixpoint(p: &DominatedPair) -> Result<ReductionTrace> {
    let mut trace = ReductionTrace { nodes: vec![], steps: vec![] };
    let mut queue = vec![p.clone()];
    let mut next = 0;
    // nodes are created in queue order, so node i holds queue[i]
    while next < queue.len() {
        let pair = queue[next].clone();
        next += 1;
        let minimal = minimize(&pair)?;
        let local = minimal.local_pair(&pair)?;
        let action = match detect_reduction(&local) {
            None => NodeAction::Irreducible,
            Some(step) => {
                let children = (queue.len()..queue.len() + step.parts.len()).collect();
                queue.extend(step.part_pairs());
                trace.steps.push(step);
                NodeAction::Reduced { step: trace.steps.len() - 1, children }
            }
        };
        trace.nodes.push(TraceNode { pair, minimal, action });
    }
    Ok(trace)
}

#[cfg(test)]
mod tests;
