use itertools::Itertools;

use super::mdgraph::MDGraph;
use crate::error::{Error, Result};

pub const ISO_VERTEX_LIMIT: usize = 8;

type Labelled = (usize, usize, Option<i64>, Option<i64>);

fn labelled_edges(g: &MDGraph, perm: &[usize]) -> Vec<Labelled> {
    let mut out: Vec<Labelled> = g
        .edges
        .iter()
        .enumerate()
        .map(|(i, &(t, h))| {
            (
                perm[t],
                perm[h],
                g.weights.as_ref().map(|w| w[i]),
                g.flows.as_ref().map(|f| f[i]),
            )
        })
        .collect();
    out.sort_unstable();
    out
}

fn degree_signature(g: &MDGraph, v: usize) -> (usize, usize, usize) {
    let loops = g.edges.iter().filter(|&&(t, h)| t == v && h == v).count();
    (g.out_edges(v).count(), g.in_edges(v).count(), loops)
}

/// Brute-force isomorphism of labelled multi-digraphs. Edge weights and
/// flows, when present, must match edge by edge.
pub fn isomorphic(g: &MDGraph, h: &MDGraph) -> Result<bool> {
    if g.vertices > ISO_VERTEX_LIMIT {
        return Err(Error::LimitExceeded {
            what: "isomorphism vertex count",
            requested: g.vertices,
            limit: ISO_VERTEX_LIMIT,
        });
    }
    if g.vertices != h.vertices
        || g.edges.len() != h.edges.len()
        || g.weights.is_some() != h.weights.is_some()
        || g.flows.is_some() != h.flows.is_some()
    {
        return Ok(false);
    }
    let identity: Vec<usize> = (0..h.vertices).collect();
    let target = labelled_edges(h, &identity);
    let sig_g: Vec<_> = (0..g.vertices).map(|v| degree_signature(g, v)).collect();
    let sig_h: Vec<_> = (0..h.vertices).map(|v| degree_signature(h, v)).collect();
    for perm in (0..g.vertices).permutations(g.vertices) {
        if (0..g.vertices).any(|v| sig_g[v] != sig_h[perm[v]]) {
            continue;
        }
        if labelled_edges(g, &perm) == target {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelled_graphs_match() {
        let g = MDGraph::new(2, vec![(0, 1), (0, 1), (1, 0)]).unwrap();
        let h = MDGraph::new(2, vec![(1, 0), (0, 1), (1, 0)]).unwrap();
        assert!(isomorphic(&g, &h).unwrap());
        let k = MDGraph::new(2, vec![(0, 1), (1, 0), (1, 0), (0, 0)]).unwrap();
        assert!(!isomorphic(&g, &k).unwrap());
    }

    #[test]
    fn labels_matter() {
        let g = MDGraph::new(1, vec![(0, 0), (0, 0)]).unwrap();
        let a = g.clone().with_flows(vec![1, 2]).unwrap();
        let b = g.clone().with_flows(vec![2, 1]).unwrap();
        let c = g.with_flows(vec![2, 2]).unwrap();
        assert!(isomorphic(&a, &b).unwrap());
        assert!(!isomorphic(&a, &c).unwrap());
    }
}
