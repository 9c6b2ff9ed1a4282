//! Vertex covers from a greedy maximal matching.
//!
//! Any walker outside a vertex cover steps into it immediately, so a cover
//! of size `C` attains `F = N - C`, the smallest value possible at that
//! cardinality.

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};
use crate::subsets::{binomial, Combinations};

/// Greedy maximal matching. Edges are scanned in lexicographic order of
/// `(min label, max label)` and taken when both endpoints are still free.
pub fn maximal_matching(g: &Graph) -> Vec<(usize, usize)> {
    let mut matched = vec![false; g.node_count()];
    let mut out = Vec::new();
    for (i, j) in g.edges() {
        if !matched[i] && !matched[j] {
            matched[i] = true;
            matched[j] = true;
            out.push((i, j));
        }
    }
    out
}

pub fn vertex_cover_from_matching(g: &Graph) -> NodeSet {
    NodeSet::from_indices(maximal_matching(g).into_iter().flat_map(|(i, j)| [i, j]))
}

/// First uncovered edge, if any.
pub fn uncovered_edge(g: &Graph, set: &NodeSet) -> Option<(usize, usize)> {
    let mask = set.mask(g.node_count());
    g.edges().find(|&(i, j)| !mask[i] && !mask[j])
}

pub fn is_vertex_cover(g: &Graph, set: &NodeSet) -> bool {
    uncovered_edge(g, set).is_none()
}

pub fn require_cover(g: &Graph, set: &NodeSet) -> Result<()> {
    match uncovered_edge(g, set) {
        Some((i, j)) => Err(Error::NotACover(g.label(i), g.label(j))),
        None => Ok(()),
    }
}

const COVER_SEARCH_CAP: u128 = 2_000_000;

/// A vertex cover of exactly `size` nodes.
///
/// Larger than the matching cover: pad it with the smallest free labels.
/// Smaller: drop redundant nodes from the matching cover (smallest label
/// first), then fall back to exhaustive search in lexicographic order.
pub fn cover_of_size(g: &Graph, size: usize) -> Result<NodeSet> {
    let n = g.node_count();
    if size == 0 || size > n {
        return Err(Error::NoCoverOfSize(size));
    }
    let base = vertex_cover_from_matching(g);
    if size >= base.len() {
        let mut cover = base;
        for i in 0..n {
            if cover.len() == size {
                break;
            }
            cover = cover.with(i);
        }
        return Ok(cover);
    }
    let mut cover = base;
    'shrink: while cover.len() > size {
        let members: Vec<usize> = cover.iter().collect();
        for i in members {
            let smaller = cover.without(i);
            if is_vertex_cover(g, &smaller) {
                cover = smaller;
                continue 'shrink;
            }
        }
        break;
    }
    if cover.len() == size {
        return Ok(cover);
    }
    let count = binomial(n, size);
    if count > COVER_SEARCH_CAP {
        return Err(Error::NoCoverOfSize(size));
    }
    Combinations::new(n, size)
        .map(NodeSet::from_sorted_unchecked)
        .find(|s| is_vertex_cover(g, s))
        .ok_or(Error::NoCoverOfSize(size))
}
