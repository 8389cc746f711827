//! Building post-reduction parts from a declarative description, and the
//! edit script that undoes them.

use crate::dominating::DominatedPair;
use crate::error::{Error, Result};
use crate::graph::{edge, Edge, UndirectedGraph, VertexId};
use std::collections::{BTreeMap, BTreeSet};

/// Endpoint of an edge in a part description: a pre vertex (through its
/// representative) or the i-th new vertex of the part.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Node {
    Pre(VertexId),
    New(usize),
}

/// Declarative part: pre vertices it keeps, identifications folded into
/// them, pre edges it keeps (mapped through identifications) and new
/// vertices and edges.
#[derive(Clone, Debug, Default)]
pub(crate) struct PartSpec {
    pub vertices: Vec<VertexId>,
    pub rep: BTreeMap<VertexId, VertexId>,
    pub edges: Vec<Edge>,
    pub new_dominators: Vec<bool>,
    pub new_edges: Vec<(Node, Node)>,
}

/// One graph produced by a reduction, with its link back to the pre graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    pub pair: DominatedPair,
    /// Pre vertex of each post vertex; `None` for inserted vertices.
    pub to_pre: Vec<Option<VertexId>>,
    /// For post edge `(u, v)`, `u < v`: the pre edge `(a, b)` it came from,
    /// with `a` mapping to `u` and `b` to `v`. `None` for inserted edges.
    pub edge_origin: Vec<Option<(VertexId, VertexId)>>,
}

impl Part {
    /// Post id of a pre vertex (directly or through identification).
    pub fn post_of(&self, pre: VertexId, rep: &BTreeMap<VertexId, VertexId>) -> Option<VertexId> {
        let r = rep.get(&pre).copied().unwrap_or(pre);
        self.to_pre.iter().position(|&p| p == Some(r))
    }
}

/// Everything needed to rebuild the pre pair from the parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EditScript {
    pub pre_n: usize,
    /// Deleted pre vertices with their membership in `D`.
    pub removed_vertices: Vec<(VertexId, bool)>,
    /// Pre edges that no part keeps.
    pub removed_edges: Vec<Edge>,
    /// `(absorbed, into)` pairs, with membership in `D` of the absorbed vertex.
    pub identifications: Vec<(VertexId, VertexId, bool)>,
    /// Inserted vertices and edges per part, in post ids.
    pub added_vertices: Vec<Vec<VertexId>>,
    pub added_edges: Vec<Vec<Edge>>,
}

pub(crate) fn build_part(pre: &DominatedPair, spec: &PartSpec) -> Result<Part> {
    let mut verts: Vec<VertexId> = spec.vertices.clone();
    verts.sort_unstable();
    verts.dedup();
    let k = verts.len();
    let post = |node: Node| -> Result<VertexId> {
        match node {
            Node::Pre(v) => {
                let r = spec.rep.get(&v).copied().unwrap_or(v);
                verts.binary_search(&r).map_err(|_| Error::Postcondition(format!("vertex {v} missing from part")))
            }
            Node::New(i) => Ok(k + i),
        }
    };
    let n = k + spec.new_dominators.len();
    let mut list: Vec<(Edge, Option<(VertexId, VertexId)>)> = Vec::new();
    for &(a, b) in &spec.edges {
        let (u, v) = (post(Node::Pre(a))?, post(Node::Pre(b))?);
        if u == v {
            return Err(Error::Postcondition(format!("edge {a}-{b} collapses to a loop")));
        }
        let origin = if u < v { (a, b) } else { (b, a) };
        list.push((edge(u, v), Some(origin)));
    }
    for &(x, y) in &spec.new_edges {
        list.push((edge(post(x)?, post(y)?), None));
    }
    list.sort_unstable_by_key(|&(e, _)| e);
    if list.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::Postcondition("reduction creates a parallel edge".into()));
    }
    let g = UndirectedGraph::new(n, list.iter().map(|&(e, _)| e))?;
    let mut dset: Vec<VertexId> = verts.iter().enumerate().filter(|&(_, &v)| pre.is_dominator(v)).map(|(i, _)| i).collect();
    dset.extend(spec.new_dominators.iter().enumerate().filter(|&(_, &d)| d).map(|(i, _)| k + i));
    let to_pre = verts.iter().map(|&v| Some(v)).chain(std::iter::repeat_n(None, n - k)).collect();
    Ok(Part {
        pair: DominatedPair::new_unchecked(g, dset)?,
        to_pre,
        edge_origin: list.into_iter().map(|(_, o)| o).collect(),
    })
}

pub(crate) fn edit_script(pre: &DominatedPair, specs: &[PartSpec], parts: &[Part]) -> EditScript {
    let mut kept_v = BTreeSet::new();
    let mut kept_e = BTreeSet::new();
    let mut ident = BTreeMap::new();
    for s in specs {
        kept_v.extend(s.vertices.iter().copied());
        kept_e.extend(s.edges.iter().map(|&(a, b)| edge(a, b)));
        ident.extend(s.rep.iter().filter(|(a, b)| a != b).map(|(&a, &b)| (a, b)));
    }
    let g = pre.graph();
    EditScript {
        pre_n: g.n(),
        removed_vertices: (0..g.n())
            .filter(|v| !kept_v.contains(v) && !ident.contains_key(v))
            .map(|v| (v, pre.is_dominator(v)))
            .collect(),
        removed_edges: g.edges().iter().copied().filter(|e| !kept_e.contains(e)).collect(),
        identifications: ident.into_iter().map(|(a, b)| (a, b, pre.is_dominator(a))).collect(),
        added_vertices: parts
            .iter()
            .map(|p| (0..p.to_pre.len()).filter(|&i| p.to_pre[i].is_none()).collect())
            .collect(),
        added_edges: parts
            .iter()
            .map(|p| {
                p.pair.graph().edges().iter().zip(&p.edge_origin).filter(|(_, o)| o.is_none()).map(|(&e, _)| e).collect()
            })
            .collect(),
    }
}

/// Rebuilds the pre pair from post parts and the edit script alone.
pub fn restore(script: &EditScript, parts: &[Part]) -> Result<DominatedPair> {
    let mut edges: BTreeSet<Edge> = script.removed_edges.iter().copied().collect();
    let mut dset: BTreeSet<VertexId> = BTreeSet::new();
    for part in parts {
        for (i, &(u, v)) in part.pair.graph().edges().iter().enumerate() {
            if let Some((a, b)) = part.edge_origin[i] {
                if part.to_pre[u].is_none() || part.to_pre[v].is_none() {
                    return Err(Error::StaleStep);
                }
                edges.insert(edge(a, b));
            }
        }
        for &d in part.pair.dset() {
            if let Some(v) = part.to_pre[d] {
                dset.insert(v);
            }
        }
    }
    dset.extend(script.removed_vertices.iter().filter(|&&(_, d)| d).map(|&(v, _)| v));
    dset.extend(script.identifications.iter().filter(|&&(_, _, d)| d).map(|&(v, _, _)| v));
    let g = UndirectedGraph::new(script.pre_n, edges)?;
    DominatedPair::new_unchecked(g, dset)
}
