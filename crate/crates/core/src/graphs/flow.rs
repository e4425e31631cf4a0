use serde::{Deserialize, Serialize};

use super::mdgraph::MDGraph;
use crate::error::{Error, Result};
use crate::numerics::Rational;

/// Edge values on the complete digraph `G_n` (loops included), stored row
/// major: entry `(i, j)` is the value on `i → j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flow<T> {
    n: usize,
    entries: Vec<T>,
}

pub type CompleteDigraphFlow = Flow<Rational>;
pub type IntFlow = Flow<i64>;

#[derive(Serialize, Deserialize)]
struct FlowWire<T> {
    n: usize,
    entries: Vec<Vec<T>>,
}

impl<T: Serialize + Clone> Serialize for Flow<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FlowWire {
            n: self.n,
            entries: self.entries.chunks(self.n.max(1)).map(|c| c.to_vec()).collect(),
        }
        .serialize(s)
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for Flow<T> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = FlowWire::<T>::deserialize(d)?;
        if wire.entries.len() != wire.n || wire.entries.iter().any(|r| r.len() != wire.n) {
            return Err(serde::de::Error::custom("flow entries must form an n×n matrix"));
        }
        Ok(Flow {
            n: wire.n,
            entries: wire.entries.into_iter().flatten().collect(),
        })
    }
}

impl<T> Flow<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.entries[i * self.n + j] = value;
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.entries.chunks(self.n.max(1))
    }
}

impl IntFlow {
    pub fn zero(n: usize) -> Self {
        Flow {
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn from_entries(n: usize, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                context: "flow entries",
                expected: n * n,
                found: entries.len(),
            });
        }
        Ok(Flow { n, entries })
    }

    pub fn from_matrix(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        Self::from_entries(n, rows.iter().flatten().copied().collect())
    }

    /// Unit flow on the directed cycle visiting `vertices` in order (a single
    /// vertex gives its loop).
    pub fn cycle(n: usize, vertices: &[usize]) -> Self {
        let mut f = Self::zero(n);
        for (k, &v) in vertices.iter().enumerate() {
            let w = vertices[(k + 1) % vertices.len()];
            f.entries[v * n + w] += 1;
        }
        f
    }

    pub fn outflow(&self, i: usize) -> i64 {
        self.entries[i * self.n..(i + 1) * self.n].iter().sum()
    }

    pub fn inflow(&self, j: usize) -> i64 {
        (0..self.n).map(|i| self.entries[i * self.n + j]).sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|&v| v >= 0)
    }

    pub fn is_conserving(&self) -> bool {
        (0..self.n).all(|i| self.outflow(i) == self.inflow(i))
    }

    pub fn is_flow(&self) -> bool {
        self.is_nonnegative() && self.is_conserving()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    pub fn total(&self) -> i64 {
        self.entries.iter().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        Flow {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Flow {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        Flow {
            n: self.n,
            entries: self.entries.iter().map(|a| a * k).collect(),
        }
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &Self) -> bool {
        self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }

    /// Support as a simple digraph on all `n` vertices, edges in row-major
    /// order, flows attached.
    pub fn support_graph(&self) -> MDGraph {
        let mut edges = Vec::new();
        let mut flows = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let v = self.entries[i * self.n + j];
                if v != 0 {
                    edges.push((i, j));
                    flows.push(v);
                }
            }
        }
        MDGraph {
            vertices: self.n,
            edges,
            weights: None,
            flows: Some(flows),
        }
    }

    /// Whether the support is nonempty and strongly connected on the
    /// vertices it touches.
    pub fn has_connected_support(&self) -> bool {
        let touched: Vec<usize> = (0..self.n).filter(|&i| self.outflow(i) != 0 || self.inflow(i) != 0).collect();
        let Some(&start) = touched.first() else {
            return false;
        };
        let g = self.support_graph();
        let fwd = g.reachable(start);
        let bwd = g.reversed().reachable(start);
        touched.iter().all(|&v| fwd[v] && bwd[v])
    }

    pub fn to_rational(&self) -> CompleteDigraphFlow {
        Flow {
            n: self.n,
            entries: self.entries.iter().map(|&v| Rational::from(v)).collect(),
        }
    }
}

impl CompleteDigraphFlow {
    pub fn zero(n: usize) -> Self {
        Flow {
            n,
            entries: vec![Rational::zero(); n * n],
        }
    }

    pub fn from_entries(n: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                context: "flow entries",
                expected: n * n,
                found: entries.len(),
            });
        }
        Ok(Flow { n, entries })
    }

    pub fn outflow(&self, i: usize) -> Rational {
        self.entries[i * self.n..(i + 1) * self.n].iter().sum()
    }

    pub fn inflow(&self, j: usize) -> Rational {
        (0..self.n).map(|i| &self.entries[i * self.n + j]).sum()
    }

    pub fn is_flow(&self) -> bool {
        self.entries.iter().all(|v| !v.is_negative())
            && (0..self.n).all(|i| self.outflow(i) == self.inflow(i))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    pub fn total(&self) -> Rational {
        self.entries.iter().sum()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Flow {
            n: self.n,
            entries: self.entries.iter().map(|a| a * k).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Flow {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    /// The integral flow with the same entries, if every entry is an integer.
    pub fn to_integral(&self) -> Option<IntFlow> {
        let entries = self.entries.iter().map(Rational::to_i64).collect::<Option<Vec<_>>>()?;
        Some(Flow { n: self.n, entries })
    }
}

/// `Σ_j f_ij`.
pub fn outflow(f: &CompleteDigraphFlow, i: usize) -> Rational {
    f.outflow(i)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn outflow_examples() {
        let two_cycle = IntFlow::cycle(2, &[0, 1]).to_rational();
        assert_eq!(outflow(&two_cycle, 0), Rational::one());
        assert_eq!(outflow(&CompleteDigraphFlow::zero(2), 0), Rational::zero());
        let both = IntFlow::cycle(3, &[0, 1, 2]).add(&IntFlow::cycle(3, &[0, 2, 1]));
        for i in 0..3 {
            assert_eq!(both.outflow(i), 2);
        }
    }

    #[test]
    fn connected_support() {
        assert!(IntFlow::cycle(3, &[0, 1, 2]).has_connected_support());
        let loops = IntFlow::cycle(2, &[0]).add(&IntFlow::cycle(2, &[1]));
        assert!(!loops.has_connected_support());
        assert!(!IntFlow::zero(2).has_connected_support());
    }

    #[test]
    fn json_shape() {
        let f = IntFlow::cycle(2, &[0, 1]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"n":2,"entries":[[0,1],[1,0]]}"#);
        let back: IntFlow = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }
}
