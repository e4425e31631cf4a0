use super::flow::IntFlow;
use super::mdgraph::MDGraph;
use crate::error::{Error, Result};

/// A vertex with exactly one incoming and one outgoing edge, the two edges
/// distinct: `(vertex, in_edge, out_edge)`.
fn subdivision_vertex(g: &MDGraph) -> Option<(usize, usize, usize)> {
    let mut ins = vec![Vec::new(); g.vertices];
    let mut outs = vec![Vec::new(); g.vertices];
    for (i, &(t, h)) in g.edges.iter().enumerate() {
        outs[t].push(i);
        ins[h].push(i);
    }
    (0..g.vertices).find_map(|v| match (ins[v].as_slice(), outs[v].as_slice()) {
        (&[a], &[b]) if a != b => Some((v, a, b)),
        _ => None,
    })
}

pub fn is_abstract(g: &MDGraph) -> bool {
    subdivision_vertex(g).is_none()
}

/// Merge subdivision vertices until none remain. Weights add along merged
/// edges; flows must agree.
pub fn abstract_graph(g: &MDGraph) -> Result<MDGraph> {
    g.validate()?;
    let mut g = g.clone();
    while let Some((v, a, b)) = subdivision_vertex(&g) {
        let (u, _) = g.edges[a];
        let (_, w) = g.edges[b];
        if let Some(flows) = &g.flows {
            if flows[a] != flows[b] {
                return Err(Error::invalid(format!(
                    "merging edges with flows {} and {} at vertex {v}: not a flow support",
                    flows[a], flows[b]
                )));
            }
        }
        let (keep, drop) = (a.min(b), a.max(b));
        let renumber = |x: usize| if x > v { x - 1 } else { x };
        g.edges[keep] = (u, w);
        g.edges.remove(drop);
        for e in g.edges.iter_mut() {
            *e = (renumber(e.0), renumber(e.1));
        }
        if let Some(ws) = &mut g.weights {
            ws[keep] = ws[a] + ws[b];
            ws.remove(drop);
        }
        if let Some(fs) = &mut g.flows {
            fs.remove(drop);
        }
        g.vertices -= 1;
    }
    Ok(g)
}

/// `abst(f, w_x)`: the support of `f` restricted to the vertices it touches,
/// edge `a → b` weighted by `vertex_weight[a]`, then abstracted.
pub fn abstract_flow(f: &IntFlow, vertex_weight: &[i64]) -> Result<MDGraph> {
    let n = f.n();
    if vertex_weight.len() != n {
        return Err(Error::DimensionMismatch {
            context: "vertex weight",
            expected: n,
            found: vertex_weight.len(),
        });
    }
    if f.is_zero() {
        return Err(Error::invalid("cannot abstract the zero flow"));
    }
    if !f.is_flow() {
        return Err(Error::invalid("input is not a nonnegative conserving flow"));
    }
    let mut index = vec![usize::MAX; n];
    let mut count = 0;
    for i in 0..n {
        if f.outflow(i) > 0 {
            index[i] = count;
            count += 1;
        }
    }
    let mut edges = Vec::new();
    let mut weights = Vec::new();
    let mut flows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = *f.get(i, j);
            if v > 0 {
                edges.push((index[i], index[j]));
                weights.push(vertex_weight[i]);
                flows.push(v);
            }
        }
    }
    let g = MDGraph {
        vertices: count,
        edges,
        weights: Some(weights),
        flows: Some(flows),
    };
    abstract_graph(&g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_collapses_to_edge() {
        let g = MDGraph::new(3, vec![(0, 1), (1, 2)])
            .unwrap()
            .with_flows(vec![1, 1])
            .unwrap();
        let a = abstract_graph(&g).unwrap();
        assert_eq!(a.vertices, 2);
        assert_eq!(a.edges, vec![(0, 1)]);
        assert_eq!(a.flows, Some(vec![1]));
    }

    #[test]
    fn cycle_collapses_to_loop() {
        let g = MDGraph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)])
            .unwrap()
            .with_flows(vec![1; 4])
            .unwrap();
        let a = abstract_graph(&g).unwrap();
        assert_eq!(a.vertices, 1);
        assert_eq!(a.edges, vec![(0, 0)]);
    }

    #[test]
    fn subdivided_parallel_edge() {
        // Two vertices joined both ways, with one of the edges subdivided.
        let g = MDGraph::new(3, vec![(0, 1), (1, 0), (0, 2), (2, 1)]).unwrap();
        let a = abstract_graph(&g).unwrap();
        assert_eq!(a.vertices, 2);
        assert_eq!(a.edges, vec![(0, 1), (1, 0), (0, 1)]);
        assert_eq!(abstract_graph(&a).unwrap(), a);
    }

    #[test]
    fn unequal_flows_are_rejected() {
        let g = MDGraph::new(3, vec![(0, 1), (1, 2)])
            .unwrap()
            .with_flows(vec![1, 2])
            .unwrap();
        assert!(abstract_graph(&g).is_err());
    }

    #[test]
    fn weighted_flow_abstractions() {
        let f = IntFlow::cycle(2, &[0, 1]);
        let a = abstract_flow(&f, &[1, -1]).unwrap();
        assert_eq!((a.vertices, a.edges.clone()), (1, vec![(0, 0)]));
        assert_eq!(a.weights, Some(vec![0]));
        assert_eq!(a.flows, Some(vec![1]));
        let h = IntFlow::cycle(3, &[0, 1, 2]);
        let a = abstract_flow(&h, &[2, -1, -1]).unwrap();
        assert_eq!(a.weights, Some(vec![0]));
        assert!(abstract_flow(&IntFlow::zero(2), &[1, -1]).is_err());
    }
}
