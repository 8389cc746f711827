//! Structural alternatives that hold on minimal subgraphs; a hit means the
//! upstream pruning left something removable.

use crate::dominating::DominatedPair;
use crate::graph::{find_cut_vertices, VertexId};

/// Adjacent non-dominators `z1 < z2` with the same dominator, neither of
/// them a cut vertex.
pub fn shared_dominator_violations(p: &DominatedPair) -> Vec<(VertexId, VertexId)> {
    let cut = cut_mask(p);
    p.graph()
        .edges()
        .iter()
        .copied()
        .filter(|&(a, b)| p.f(a).is_some() && p.f(a) == p.f(b) && !cut[a] && !cut[b])
        .collect()
}

/// Paths `y1 - x - y2` of non-dominators with `f(y1) != f(x) != f(y2)`,
/// no cut vertex among them and `f(y1) == f(y2)`.
pub fn quadrangle_violations(p: &DominatedPair) -> Vec<(VertexId, VertexId, VertexId)> {
    let cut = cut_mask(p);
    let g = p.graph();
    let mut out = Vec::new();
    for x in 0..g.n() {
        let Some(fx) = p.f(x) else { continue };
        if cut[x] {
            continue;
        }
        let ys: Vec<VertexId> =
            g.neighbors(x).iter().copied().filter(|&y| !cut[y] && p.f(y).is_some_and(|fy| fy != fx)).collect();
        for (i, &y1) in ys.iter().enumerate() {
            for &y2 in &ys[i + 1..] {
                if p.f(y1) == p.f(y2) {
                    out.push((x, y1, y2));
                }
            }
        }
    }
    out
}

fn cut_mask(p: &DominatedPair) -> Vec<bool> {
    let mut mask = vec![false; p.graph().n()];
    for v in find_cut_vertices(p.graph()).unwrap_or_default() {
        mask[v] = true;
    }
    mask
}
