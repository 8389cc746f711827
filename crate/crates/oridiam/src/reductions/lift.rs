//! Orientation lifting through one reduction step, with the diameter
//! bounds each lift must meet.

use super::patterns::Witness;
use super::{ReductionKind, ReductionStep};
use crate::error::{Error, Result};
use crate::graph::{edge, Edge, VertexId};
use crate::orientation::{diam_profile, is_strongly_connected, reverse_all, Orientation};
use std::collections::BTreeMap;

/// Lifts orientations of the step's parts (one per part, in order) to an
/// orientation of the pre graph, then checks the step's diameter bound.
///
/// Where the construction needs a given arc in a part, the part's
/// orientation is reversed if the arc points the other way; reversal keeps
/// every profile class.
pub fn lift_orientation(step: &ReductionStep, hs: &[Orientation]) -> Result<Orientation> {
    let lifted = lift_unchecked(step, hs)?;
    let profiles = hs
        .iter()
        .zip(&step.parts)
        .map(|(h, part)| diam_profile(h, part.pair.dset()).map(|p| p.classes()))
        .collect::<Result<Vec<_>>>()?;
    let actual = diam_profile(&lifted, step.pre.dset())?.classes();
    let bound = lift_bound(step, &profiles);
    if (0..3).any(|c| actual[c] > bound[c]) {
        return Err(Error::InequalityViolated { kind: step.kind.name().into(), actual, bound });
    }
    Ok(lifted)
}

/// The lift construction alone: strong, but without the bound check.
pub fn lift_unchecked(step: &ReductionStep, hs: &[Orientation]) -> Result<Orientation> {
    if hs.len() != step.parts.len() {
        return Err(Error::StaleStep);
    }
    for (h, part) in hs.iter().zip(&step.parts) {
        if h.base() != part.pair.graph() {
            return Err(Error::StaleStep);
        }
        if !is_strongly_connected(h) {
            return Err(Error::NotStrong);
        }
    }
    let mut hs = hs.to_vec();
    let mut fixed: BTreeMap<Edge, (VertexId, VertexId)> = BTreeMap::new();
    let mut path = |vs: &[VertexId]| {
        for w in vs.windows(2) {
            fixed.insert(edge(w[0], w[1]), (w[0], w[1]));
        }
    };
    let post = |i: usize, v: VertexId| step.post_of(i, v).ok_or(Error::StaleStep);

    match &step.witness {
        Witness::DoubleTwoPath { x, y, l1, r1, l2, r2 } => {
            path(&[*x, *l1, *r1, *y]);
            path(&[*y, *r2, *l2, *x]);
        }
        Witness::ThetaPair { x, y, z, p1, p3, p2, p4 } => {
            path(&[*x, p1[0], p1[1], p1[2], *y]);
            path(&[*y, p4[0], p4[1], *z]);
            path(&[*z, p2[2], p2[1], p2[0], *y]);
            path(&[*y, p3[1], p3[0], *x]);
        }
        Witness::TwoPlusThreePath { x, y, u, v } => {
            path(&[*x, u[0], u[1], u[2], *y]);
            path(&[*y, v[1], v[0], *x]);
        }
        Witness::DominatorCut { .. } => {}
        Witness::NonDominatorCut { x, fx, .. } => {
            // f(x) -> x in the first part, x -> y_i -> z_i -> x elsewhere
            let (a, b) = (post(0, *fx)?, post(0, *x)?);
            conform(&mut hs[0], a, b)?;
            for (i, h) in hs.iter_mut().enumerate().skip(1) {
                let n = step.parts[i].pair.graph().n();
                let (xi, yi) = (post(i, *x)?, n - 2);
                conform(h, xi, yi)?;
            }
        }
        Witness::PendantTriangleCut { x, fx, w, y1, y2, z, .. } => {
            let (zp, a, b) = (post(0, *z)?, post(0, *y1)?, post(0, *y2)?);
            let rev = reverse_all(&hs[0]);
            // as-is, swapped, reversed, reversed and swapped
            let choice = [(&hs[0], a, *y1, *y2), (&hs[0], b, *y2, *y1), (&rev, a, *y1, *y2), (&rev, b, *y2, *y1)]
                .into_iter()
                .find(|(h, t, _, _)| h.directed(zp, *t) == Some(true))
                .map(|(h, _, p, q)| (h.clone(), p, q));
            let Some((h, p, q)) = choice else {
                return Err(Error::ConventionViolated(*z, *y1));
            };
            hs[0] = h;
            path(&[*x, *w, *fx, *x, p, *z, q, *x]);
        }
        Witness::Cycle { cycle, pendants } => {
            let mut closed = cycle.clone();
            closed.push(cycle[0]);
            path(&closed);
            for &(v, z, w) in pendants {
                path(&[v, z, w, v]);
            }
        }
    }

    let pre = step.pre.graph();
    let mut arcs: BTreeMap<Edge, (VertexId, VertexId)> = BTreeMap::new();
    for (h, part) in hs.iter().zip(&step.parts) {
        for (i, origin) in part.edge_origin.iter().enumerate() {
            let Some((a, b)) = *origin else { continue };
            let forward = h.forward()[i];
            arcs.insert(edge(a, b), if forward { (a, b) } else { (b, a) });
        }
    }
    arcs.extend(fixed);
    let arcs: Vec<(VertexId, VertexId)> = arcs.into_values().collect();
    let lifted = Orientation::from_arcs(pre.clone(), &arcs)?;
    if !is_strongly_connected(&lifted) {
        return Err(Error::NotStrong);
    }
    Ok(lifted)
}

/// Reverses `h` unless it directs `t -> h`.
fn conform(h: &mut Orientation, t: VertexId, head: VertexId) -> Result<()> {
    match h.directed(t, head) {
        Some(true) => Ok(()),
        Some(false) => {
            *h = reverse_all(h);
            Ok(())
        }
        None => Err(Error::ConventionViolated(t, head)),
    }
}

/// Bound `[diam0, diam1, diam2]` on the lifted orientation given the part
/// profiles `[d0, d1, d2]`.
pub fn lift_bound(step: &ReductionStep, parts: &[[u32; 3]]) -> [u32; 3] {
    let shift = |[d0, d1, d2]: [u32; 3], a: u32, b: u32| [d0 + a, (d1 + a).max(d0 + b).max(b), (d2 + a).max(d1 + b).max(b)];
    match (&step.kind, &step.witness) {
        (ReductionKind::DoubleTwoPath, _) => shift(parts[0], 3, 5),
        (ReductionKind::ThetaPair, _) => shift(parts[0], 7, 9),
        (ReductionKind::TwoPlusThreePath, _) => shift(parts[0], 4, 6),
        (ReductionKind::DominatorCutSplit, _) => {
            let mut b = [0; 3];
            for (i, p) in parts.iter().enumerate() {
                for c in 0..3 {
                    b[c] = b[c].max(p[c]);
                }
                for q in parts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| q) {
                    b[0] = b[0].max(p[0] + q[0]);
                    b[1] = b[1].max(p[1] + q[0]);
                    b[2] = b[2].max(p[1] + q[1]);
                }
            }
            b
        }
        (ReductionKind::NonDominatorCutSplit, _) => {
            let [a0, a1, a2] = parts[0];
            let mut b = parts[0];
            for (i, &[p0, p1, p2]) in parts.iter().enumerate().skip(1) {
                b[0] = b[0].max(p0).max(a0 + p0).max((a1 + p0).saturating_sub(2));
                b[1] = b[1].max(p1).max(a0 + p1).max(a1 + p0).max((a2 + p0).saturating_sub(2)).max((a1 + p1).saturating_sub(2));
                b[2] = b[2].max(p2).max(a1 + p1).max((a2 + p1).saturating_sub(2));
                for &[q0, q1, _] in parts.iter().skip(1).enumerate().filter(|&(j, _)| j + 1 != i).map(|(_, q)| q) {
                    b[0] = b[0].max((p0 + q0).saturating_sub(3));
                    b[1] = b[1].max((p0 + q1).saturating_sub(3));
                    b[2] = b[2].max((p1 + q1).saturating_sub(3));
                }
            }
            b
        }
        (ReductionKind::PendantTriangleCut, _) => {
            let [d0, d1, d2] = parts[0];
            [d0 + 4, (d1 + 4).max(d0 + 5).max(2), (d2 + 3).max(d1 + 5)]
        }
        (ReductionKind::DominatorCycle, Witness::Cycle { cycle, .. }) => {
            let k = (cycle.len() / 3) as u32;
            let [d0, d1, d2] = parts[0];
            [(d0 + 3 * k - 2).max(3 * k - 3), (d1 + 3 * k - 2).max(d0 + 3 * k - 1).max(3 * k - 1), (d2 + 3 * k - 2).max(d1 + 3 * k - 1).max(3 * k - 1)]
        }
        (ReductionKind::SpecialCycle, Witness::Cycle { cycle, pendants }) => {
            let k = cycle.iter().filter(|&&v| step.pre.is_dominator(v)).count() as u32;
            let s = 3 * k + pendants.len() as u32;
            let [d0, d1, d2] = parts[0];
            [(d0 + s).max(s + 3), (d1 + s).max(d0 + s).max(s + 3), (d2 + s - 2).max(d1 + s).max(s + 3)]
        }
        _ => [u32::MAX; 3],
    }
}
