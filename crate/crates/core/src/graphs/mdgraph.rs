use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finite multi-digraph with optional integer edge weights and flow values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MDGraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flows: Option<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Connectivity {
    /// Strongly connected components, each sorted, ordered by smallest vertex.
    pub strong_components: Vec<Vec<usize>>,
    pub weak_components: Vec<Vec<usize>>,
    pub strong: bool,
    pub weak: bool,
    pub reflexive: bool,
}

impl MDGraph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let g = MDGraph {
            vertices,
            edges,
            weights: None,
            flows: None,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn with_weights(mut self, weights: Vec<i64>) -> Result<Self> {
        self.weights = Some(weights);
        self.validate()?;
        Ok(self)
    }

    pub fn with_flows(mut self, flows: Vec<i64>) -> Result<Self> {
        self.flows = Some(flows);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(&(t, h)) = self
            .edges
            .iter()
            .find(|&&(t, h)| t >= self.vertices || h >= self.vertices)
        {
            return Err(Error::invalid(format!(
                "edge {t}->{h} out of range for {} vertices",
                self.vertices
            )));
        }
        for (name, list) in [("weights", &self.weights), ("flows", &self.flows)] {
            if let Some(l) = list {
                if l.len() != self.edges.len() {
                    return Err(Error::DimensionMismatch {
                        context: if name == "weights" { "edge weights" } else { "edge flows" },
                        expected: self.edges.len(),
                        found: l.len(),
                    });
                }
            }
        }
        if let Some(f) = &self.flows {
            if f.iter().any(|&v| v < 0) {
                return Err(Error::invalid("edge flows must be nonnegative"));
            }
        }
        Ok(())
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.0 == v)
            .map(|(i, _)| i)
    }

    pub fn in_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.1 == v)
            .map(|(i, _)| i)
    }

    /// The graph with edge `e` deleted (labels follow the edge).
    pub fn without_edge(&self, e: usize) -> MDGraph {
        let keep = |list: &Option<Vec<i64>>| {
            list.as_ref().map(|l| {
                l.iter()
                    .enumerate()
                    .filter(|&(i, _)| i != e)
                    .map(|(_, &v)| v)
                    .collect()
            })
        };
        MDGraph {
            vertices: self.vertices,
            edges: self
                .edges
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != e)
                .map(|(_, &x)| x)
                .collect(),
            weights: keep(&self.weights),
            flows: keep(&self.flows),
        }
    }

    /// Vertices reachable from `start` along directed edges.
    pub fn reachable(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.vertices];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            for &(t, h) in &self.edges {
                if t == v && !seen[h] {
                    seen[h] = true;
                    queue.push_back(h);
                }
            }
        }
        seen
    }

    /// Shortest directed path from `from` to `to` as a list of edge ids,
    /// exploring edges in id order.
    pub fn shortest_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        if from == to {
            return Some(Vec::new());
        }
        let mut via: Vec<Option<usize>> = vec![None; self.vertices];
        let mut seen = vec![false; self.vertices];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for (i, &(t, h)) in self.edges.iter().enumerate() {
                if t != v || seen[h] {
                    continue;
                }
                seen[h] = true;
                via[h] = Some(i);
                if h == to {
                    let mut path = Vec::new();
                    let mut cur = to;
                    while cur != from {
                        let e = via[cur].unwrap();
                        path.push(e);
                        cur = self.edges[e].0;
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(h);
            }
        }
        None
    }

    pub fn connectivity(&self) -> Connectivity {
        connectivity(self)
    }

    pub fn is_strongly_connected(&self) -> bool {
        if self.vertices == 0 {
            return true;
        }
        let forward = self.reachable(0);
        if forward.iter().any(|&s| !s) {
            return false;
        }
        self.reversed().reachable(0).iter().all(|&s| s)
    }

    pub fn reversed(&self) -> MDGraph {
        MDGraph {
            vertices: self.vertices,
            edges: self.edges.iter().map(|&(t, h)| (h, t)).collect(),
            weights: self.weights.clone(),
            flows: self.flows.clone(),
        }
    }
}

fn find(parent: &mut [usize], v: usize) -> usize {
    let mut r = v;
    while parent[r] != r {
        r = parent[r];
    }
    let mut c = v;
    while parent[c] != r {
        let next = parent[c];
        parent[c] = r;
        c = next;
    }
    r
}

fn group(labels: &[usize]) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (v, &l) in labels.iter().enumerate() {
        match order.iter().position(|&x| x == l) {
            Some(k) => groups[k].push(v),
            None => {
                order.push(l);
                groups.push(vec![v]);
            }
        }
    }
    groups
}

/// Strong and weak components plus the reflexivity flag (the two partitions
/// coincide).
pub fn connectivity(g: &MDGraph) -> Connectivity {
    let n = g.vertices;
    let mut parent: Vec<usize> = (0..n).collect();
    for &(t, h) in &g.edges {
        let (a, b) = (find(&mut parent, t), find(&mut parent, h));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let weak_labels: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
    let weak_components = group(&weak_labels);

    let reversed = g.reversed();
    let mut strong_labels = vec![usize::MAX; n];
    for v in 0..n {
        if strong_labels[v] != usize::MAX {
            continue;
        }
        let fwd = g.reachable(v);
        let bwd = reversed.reachable(v);
        for u in 0..n {
            if fwd[u] && bwd[u] {
                strong_labels[u] = v;
            }
        }
    }
    let strong_components = group(&strong_labels);
    let reflexive = strong_components.len() == weak_components.len();
    Connectivity {
        strong: strong_components.len() <= 1,
        weak: weak_components.len() <= 1,
        reflexive,
        strong_components,
        weak_components,
    }
}
