use std::collections::BTreeSet;

use itertools::Itertools;

use super::abstraction::is_abstract;
use super::flow::IntFlow;
use super::mdgraph::{connectivity, MDGraph};
use crate::error::{Error, Result};

pub const DEFAULT_HAMILTONIAN_LIMIT: usize = 8;

/// Local view used by the recursion: `(tail, head, original edge id)`.
type Edge = (usize, usize, usize);

fn as_graph(vertices: usize, edges: &[Edge]) -> MDGraph {
    MDGraph {
        vertices,
        edges: edges.iter().map(|&(t, h, _)| (t, h)).collect(),
        weights: None,
        flows: None,
    }
}

fn removable_rec(vertices: usize, edges: &[Edge]) -> Option<usize> {
    if let Some(&(_, _, id)) = edges.iter().find(|e| e.0 == e.1) {
        return Some(id);
    }
    if vertices <= 2 {
        // No loops: some direction between the two vertices carries a
        // parallel pair, and either copy may go.
        return edges
            .iter()
            .enumerate()
            .find(|(i, e)| edges[i + 1..].iter().any(|f| (f.0, f.1) == (e.0, e.1)))
            .map(|(_, e)| e.2);
    }

    // Shortest cycle through vertex 0.
    let g = as_graph(vertices, edges);
    let cycle = g
        .out_edges(0)
        .filter_map(|e| {
            g.shortest_path(g.edges[e].1, 0).map(|p| {
                let mut c = vec![e];
                c.extend(p);
                c
            })
        })
        .min_by_key(|c| c.len())?;
    let on_cycle: BTreeSet<usize> = cycle.iter().map(|&e| g.edges[e].0).collect();

    // Any other edge among cycle vertices can be bypassed along the cycle.
    if let Some((_, &(_, _, id))) = edges
        .iter()
        .enumerate()
        .find(|(i, e)| !cycle.contains(i) && on_cycle.contains(&e.0) && on_cycle.contains(&e.1))
    {
        return Some(id);
    }

    // Contract the cycle to the vertex 0 of the smaller graph.
    let mut index = vec![usize::MAX; vertices];
    let mut next = 1;
    for v in 0..vertices {
        if on_cycle.contains(&v) {
            index[v] = 0;
        } else {
            index[v] = next;
            next += 1;
        }
    }
    let rest: Vec<(usize, &Edge)> = edges
        .iter()
        .enumerate()
        .filter(|(i, _)| !cycle.contains(i))
        .collect();
    let incoming: Vec<&Edge> = rest.iter().map(|(_, e)| *e).filter(|e| on_cycle.contains(&e.1)).collect();
    let outgoing: Vec<&Edge> = rest.iter().map(|(_, e)| *e).filter(|e| on_cycle.contains(&e.0)).collect();
    if incoming.len() == 1 && outgoing.len() == 1 {
        // A 2-cycle entered at one vertex and left at the other: the cycle
        // edge from the exit back to the entry is redundant.
        let (entry, exit) = (incoming[0].1, outgoing[0].0);
        return cycle
            .iter()
            .map(|&e| edges[e])
            .find(|&(t, h, _)| t == exit && h == entry)
            .map(|e| e.2);
    }
    let contracted: Vec<Edge> = rest
        .iter()
        .map(|(_, &(t, h, id))| (index[t], index[h], id))
        .collect();
    removable_rec(next, &contracted)
}

/// An edge whose removal keeps `g` strongly connected, following the
/// induction on the number of vertices (shortcut chords, the 2-cycle case,
/// otherwise contract a cycle).
pub fn removable_edge(g: &MDGraph) -> Result<usize> {
    if g.edges.is_empty() {
        return Err(Error::precondition("graph has no edges"));
    }
    if !g.is_strongly_connected() {
        return Err(Error::precondition("graph is not strongly connected"));
    }
    if !is_abstract(g) {
        return Err(Error::precondition("graph is not abstract"));
    }
    let edges: Vec<Edge> = g.edges.iter().enumerate().map(|(i, &(t, h))| (t, h, i)).collect();
    match removable_rec(g.vertices, &edges) {
        Some(e) if g.without_edge(e).is_strongly_connected() => Ok(e),
        _ => Err(Error::precondition("no removable edge found")),
    }
}

/// One simple directed cycle through edge `e` as a sorted list of edge ids.
pub fn cycle_through(g: &MDGraph, e: usize) -> Option<Vec<usize>> {
    let (t, h) = g.edges[e];
    if t == h {
        return Some(vec![e]);
    }
    let mut c = g.shortest_path(h, t)?;
    c.push(e);
    c.sort_unstable();
    Some(c)
}

/// Strictly positive integral flow on a reflexive graph: the sum of the
/// distinct shortest cycles through each edge.
pub fn positive_flow(g: &MDGraph) -> Result<Vec<i64>> {
    g.validate()?;
    if !connectivity(g).reflexive {
        return Err(Error::precondition("graph is not reflexive"));
    }
    let mut cycles = BTreeSet::new();
    for e in 0..g.edge_count() {
        let c = cycle_through(g, e)
            .ok_or_else(|| Error::internal(format!("no cycle through edge {e}")))?;
        cycles.insert(c);
    }
    let mut f = vec![0i64; g.edge_count()];
    for c in cycles {
        for e in c {
            f[e] += 1;
        }
    }
    Ok(f)
}

/// All directed Hamiltonian cycles on `subset` as unit flows on `G_n`;
/// the first vertex is fixed, the rest permuted in lexicographic order.
pub fn hamiltonian_cycles(subset: &[usize], n: usize) -> Result<Vec<IntFlow>> {
    hamiltonian_cycles_with_limit(subset, n, DEFAULT_HAMILTONIAN_LIMIT)
}

pub fn hamiltonian_cycles_with_limit(subset: &[usize], n: usize, limit: usize) -> Result<Vec<IntFlow>> {
    if subset.len() > limit {
        return Err(Error::LimitExceeded {
            what: "Hamiltonian cycle subset size",
            requested: subset.len(),
            limit,
        });
    }
    if let Some(&v) = subset.iter().find(|&&v| v >= n) {
        return Err(Error::invalid(format!("vertex {v} out of range for n = {n}")));
    }
    let Some((&first, rest)) = subset.split_first() else {
        return Ok(Vec::new());
    };
    Ok(rest
        .iter()
        .copied()
        .permutations(rest.len())
        .map(|p| {
            let mut order = vec![first];
            order.extend(p);
            IntFlow::cycle(n, &order)
        })
        .collect())
}
