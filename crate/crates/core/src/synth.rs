//! Realising a connected abstract MD-graph as the abstraction of an extremal
//! point of a weight cone.

use num::BigInt;
use serde::{Serialize, Serializer};

use crate::cones::{is_extremal, AmbientSet, ConeSpec, DiscVector};
use crate::error::{Error, Result};
use crate::graphs::cycles::cycle_through;
use crate::graphs::{abstract_flow, is_abstract, isomorphic, positive_flow, removable_edge, IntFlow, MDGraph};

/// Cap on the size of the box `0 ≤ φ ≤ 3f` searched by the bounded checks.
pub const SYNTH_BOX_LIMIT: u64 = 5_000_000;
/// Largest `G_n` on which the direct extremality search runs.
pub const DIRECT_EXTREMAL_N_LIMIT: usize = 600;
/// Largest `G_n` step 3 will build; flows on `G_n` are dense.
pub const SYNTH_N_LIMIT: usize = 2048;
/// Uniqueness of [`lemma_numbers`] is brute forced when `Σ f·w` is at most this.
pub const UNIQUENESS_TARGET_LIMIT: i64 = 10_000;
/// Multiplier bound for the bounded checks.
pub const BOX_FACTOR: i64 = 3;

/// The polyhedron `Q_w` of an edge-weighted graph, through its integral
/// members `E_w`: nonzero nonnegative integral flows with `Σ φ(e)w(e) = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EWPolyhedronSpec {
    pub graph: MDGraph,
    pub edge_weights: Vec<i64>,
}

impl EWPolyhedronSpec {
    pub fn new(graph: MDGraph, edge_weights: Vec<i64>) -> Result<Self> {
        if edge_weights.len() != graph.edge_count() {
            return Err(Error::DimensionMismatch {
                context: "edge weights",
                expected: graph.edge_count(),
                found: edge_weights.len(),
            });
        }
        Ok(EWPolyhedronSpec { graph, edge_weights })
    }

    pub fn weight(&self, phi: &[i64]) -> i64 {
        phi.iter().zip(&self.edge_weights).map(|(a, b)| a * b).sum()
    }

    pub fn contains(&self, phi: &[i64]) -> bool {
        phi.len() == self.edge_weights.len()
            && phi.iter().all(|&v| v >= 0)
            && phi.iter().any(|&v| v > 0)
            && is_conserving(&self.graph, phi)
            && self.weight(phi) == 0
    }
}

fn is_conserving(g: &MDGraph, phi: &[i64]) -> bool {
    let mut balance = vec![0i64; g.vertices];
    for (&(t, h), &v) in g.edges.iter().zip(phi) {
        balance[t] -= v;
        balance[h] += v;
    }
    balance.iter().all(|&b| b == 0)
}

/// Every conserving integral `φ` on `g` with `0 ≤ φ ≤ cap`, zero included.
fn for_each_bounded_flow(g: &MDGraph, cap: &[i64], mut visit: impl FnMut(&[i64])) -> Result<()> {
    let size = cap
        .iter()
        .try_fold(1u64, |acc, &c| acc.checked_mul(c as u64 + 1))
        .filter(|&s| s <= SYNTH_BOX_LIMIT);
    if size.is_none() {
        return Err(Error::LimitExceeded {
            what: "bounded flow box size",
            requested: cap.iter().fold(1usize, |acc, &c| acc.saturating_mul(c as usize + 1)),
            limit: SYNTH_BOX_LIMIT as usize,
        });
    }
    fn rec(k: usize, g: &MDGraph, cap: &[i64], cur: &mut Vec<i64>, visit: &mut impl FnMut(&[i64])) {
        if k == cap.len() {
            if is_conserving(g, cur) {
                visit(cur);
            }
            return;
        }
        for v in 0..=cap[k] {
            cur.push(v);
            rec(k + 1, g, cap, cur, visit);
            cur.pop();
        }
    }
    rec(0, g, cap, &mut Vec::with_capacity(cap.len()), &mut visit);
    Ok(())
}

fn check_input(g: &MDGraph) -> Result<()> {
    g.validate()?;
    if g.edges.is_empty() {
        return Err(Error::precondition("graph has no edges"));
    }
    if !is_abstract(g) {
        return Err(Error::precondition("graph is not abstract"));
    }
    if !g.is_strongly_connected() {
        return Err(Error::precondition("graph is not strongly connected"));
    }
    Ok(())
}

/// Integral flow positive on every edge with value 1 on a removable edge.
pub fn step1_flow(g: &MDGraph) -> Result<(Vec<i64>, usize)> {
    check_input(g)?;
    let e_star = removable_edge(g)?;
    let rest = g.without_edge(e_star);
    let base = positive_flow(&rest)?;
    let mut f: Vec<i64> = (0..g.edge_count())
        .map(|e| match e.cmp(&e_star) {
            std::cmp::Ordering::Less => base[e],
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => base[e - 1],
        })
        .collect();
    let cycle = cycle_through(g, e_star).ok_or_else(|| Error::internal("no cycle through the removable edge"))?;
    for e in cycle {
        f[e] += 1;
    }
    if f[e_star] != 1 || f.iter().any(|&v| v <= 0) || !is_conserving(g, &f) {
        return Err(Error::internal(format!("step 1 produced an invalid flow {f:?}")));
    }
    Ok((f, e_star))
}

/// `w_j = n + (M+1)^{j-1}` with `M = Σ f_j` and `n = (M+1)^{k+1}`.
pub fn lemma_numbers(f: &[i64]) -> Result<Vec<i64>> {
    if f.iter().any(|&v| v < 0) {
        return Err(Error::invalid("lemma numbers need nonnegative values"));
    }
    let ov = || Error::Overflow("lemma numbers");
    let m: i64 = f.iter().try_fold(0i64, |s, &v| s.checked_add(v)).ok_or_else(ov)?;
    let base = m.checked_add(1).ok_or_else(ov)?;
    let k = u32::try_from(f.len()).map_err(|_| ov())?;
    let n = base.checked_pow(k + 1).ok_or_else(ov)?;
    (0..k)
        .map(|j| base.checked_pow(j).and_then(|p| p.checked_add(n)).ok_or_else(ov))
        .collect()
}

/// Whether `λ = f` is the only `λ ∈ ℕ^k` with `Σ λ_j w_j = Σ f_j w_j`;
/// `None` when the target exceeds [`UNIQUENESS_TARGET_LIMIT`].
pub fn lemma_uniqueness(f: &[i64], w: &[i64]) -> Option<bool> {
    let target: i64 = f.iter().zip(w).map(|(a, b)| a * b).sum();
    if target > UNIQUENESS_TARGET_LIMIT || w.iter().any(|&v| v <= 0) {
        return None;
    }
    fn rec(k: usize, rem: i64, w: &[i64], cur: &mut Vec<i64>, f: &[i64]) -> bool {
        if k == w.len() {
            return rem != 0 || cur.as_slice() == f;
        }
        for v in 0..=rem / w[k] {
            cur.push(v);
            let ok = rec(k + 1, rem - v * w[k], w, cur, f);
            cur.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    Some(rec(0, target, w, &mut Vec::new(), f))
}

/// Outcome of the unit-flow argument over the box `0 ≤ φ ≤ 3f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UnitCheck {
    pub members_checked: u64,
    pub passed: bool,
}

/// Every `φ ∈ E_w` with `φ ≤ 3f` has `φ(e*) ≥ 1`, and `φ(e*) = 1` forces `φ = f`.
pub fn unit_flow_check(poly: &EWPolyhedronSpec, f: &[i64], e_star: usize) -> Result<UnitCheck> {
    let cap: Vec<i64> = f.iter().map(|&v| BOX_FACTOR * v).collect();
    let mut members_checked = 0;
    let mut passed = true;
    for_each_bounded_flow(&poly.graph, &cap, |phi| {
        if poly.contains(phi) {
            members_checked += 1;
            if phi[e_star] < 1 || (phi[e_star] == 1 && phi != f) {
                passed = false;
            }
        }
    })?;
    Ok(UnitCheck {
        members_checked,
        passed,
    })
}

/// [`lemma_numbers`] on the edges other than `e_star`, and the balancing negative
/// weight on `e_star`.
pub fn step2_weights(g: &MDGraph, f: &[i64], e_star: usize) -> Result<Vec<i64>> {
    if f.len() != g.edge_count() || e_star >= f.len() {
        return Err(Error::invalid("flow and distinguished edge do not fit the graph"));
    }
    let others: Vec<i64> = f.iter().enumerate().filter(|&(e, _)| e != e_star).map(|(_, &v)| v).collect();
    let numbers = lemma_numbers(&others)?;
    let ov = || Error::Overflow("step 2 weights");
    let total = others
        .iter()
        .zip(&numbers)
        .try_fold(0i64, |s, (&a, &b)| a.checked_mul(b).and_then(|p| s.checked_add(p)))
        .ok_or_else(ov)?;
    let mut w = numbers;
    w.insert(e_star, -total);
    let poly = EWPolyhedronSpec::new(g.clone(), w.clone())?;
    let check = unit_flow_check(&poly, f, e_star)?;
    if !check.passed {
        return Err(Error::internal(format!(
            "flow {f:?} is not extremal for edge weights {w:?}"
        )));
    }
    Ok(w)
}

/// Where the graph sits inside `G_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexMap {
    /// Block index of each graph vertex.
    pub graph_vertices: Vec<usize>,
    /// Block indices along the path realising each edge, endpoints included.
    pub edge_paths: Vec<Vec<usize>>,
}

/// Vertices of weight `+1` and `−1` needed to realise the weighted graph.
pub fn vertex_budget(g: &MDGraph, w: &[i64]) -> (usize, usize) {
    let plus = g.vertices + w.iter().filter(|&&s| s > 0).map(|&s| s as usize).sum::<usize>();
    let minus = w.iter().map(|&s| if s < 0 { s.unsigned_abs() as usize + 1 } else { 1 }).sum();
    (plus, minus)
}

/// The smallest balanced `±1` vector meeting the budget: `+1` entries first.
pub fn minimal_vertex_weights(g: &MDGraph, w: &[i64]) -> Vec<i64> {
    let (plus, minus) = vertex_budget(g, w);
    let half = plus.max(minus);
    let mut x = vec![1; half];
    x.extend(std::iter::repeat_n(-1, half));
    x
}

/// A flow on `G_n` whose support subdivides `g`: each edge of weight `s`
/// becomes a fresh path `p r_1 l_s … l_1 q` (`s > 0`), `p r_1 q` (`s = 0`) or
/// `p r_1 … r_{|s|+1} q` (`s < 0`), the `r` of weight `−1`, the rest `+1`.
pub fn step3_concretize(g: &MDGraph, f: &[i64], w: &[i64], x: &[i64]) -> Result<(IntFlow, VertexMap)> {
    if f.len() != g.edge_count() || w.len() != g.edge_count() {
        return Err(Error::invalid("flow and weights do not fit the graph"));
    }
    let (plus_need, minus_need) = vertex_budget(g, w);
    let mut plus = x.iter().enumerate().filter(|(_, &v)| v == 1).map(|(i, _)| i);
    let mut minus = x.iter().enumerate().filter(|(_, &v)| v == -1).map(|(i, _)| i);
    let (plus_have, minus_have) = (plus.clone().count(), minus.clone().count());
    if plus_have < plus_need || minus_have < minus_need {
        return Err(Error::precondition(format!(
            "need {plus_need} vertices of weight +1 and {minus_need} of weight -1, \
             have {plus_have} and {minus_have}"
        )));
    }
    let n = x.len();
    if n > SYNTH_N_LIMIT {
        return Err(Error::LimitExceeded {
            what: "concretisation block count",
            requested: n,
            limit: SYNTH_N_LIMIT,
        });
    }
    let graph_vertices: Vec<usize> = plus.by_ref().take(g.vertices).collect();
    let mut gflow = IntFlow::zero(n);
    let mut edge_paths = Vec::with_capacity(g.edge_count());
    for (e, &(t, h)) in g.edges.iter().enumerate() {
        let s = w[e];
        let mut path = vec![graph_vertices[t]];
        path.push(minus.next().unwrap());
        if s > 0 {
            path.extend(plus.by_ref().take(s as usize));
        } else if s < 0 {
            path.extend(minus.by_ref().take(s.unsigned_abs() as usize));
        }
        path.push(graph_vertices[h]);
        for pair in path.windows(2) {
            let cur = *gflow.get(pair[0], pair[1]);
            gflow.set(pair[0], pair[1], cur + f[e]);
        }
        edge_paths.push(path);
    }
    let map = VertexMap {
        graph_vertices,
        edge_paths,
    };
    let round_trip = abstract_flow(&gflow, x)?;
    let expected = g.clone().with_flows(f.to_vec())?.with_weights(w.to_vec())?;
    if !isomorphic(&round_trip, &expected)? {
        return Err(Error::internal("concretised flow does not abstract to the weighted graph"));
    }
    Ok((gflow, map))
}

fn lift(phi: &[i64], map: &VertexMap, n: usize) -> IntFlow {
    let mut h = IntFlow::zero(n);
    for (path, &v) in map.edge_paths.iter().zip(phi) {
        if v != 0 {
            for pair in path.windows(2) {
                let cur = *h.get(pair[0], pair[1]);
                h.set(pair[0], pair[1], cur + v);
            }
        }
    }
    h
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SynthesisChecks {
    /// (a) unit-flow argument over `0 ≤ φ ≤ 3f` in `E_w`.
    pub unit_flow: UnitCheck,
    /// (b) every lift of `0 ≤ φ ≤ 3f` is a flow on `G_n` with
    /// `h_x(lift φ) = Σ φ·w`, so members of `E_x` on `supp(g)` abstract into `E_w`.
    pub weight_conservation: bool,
    pub lifts_checked: u64,
    /// (c) direct bounded extremality of `g` in the cone; `None` when `n`
    /// exceeds [`DIRECT_EXTREMAL_N_LIMIT`].
    pub direct_extremal: Option<bool>,
    pub direct_extremal_n_max: usize,
    /// (d) `g` is a disc vector, so it lies in `P(x) ⊆ Q_x` and stays
    /// extremal there.
    pub disc_vector: bool,
    pub abstraction_matches: bool,
    pub flow_bound: bool,
    pub weight_bound: bool,
    /// `None` when `Σ f·w` is beyond the brute-force range.
    pub lemma_uniqueness: Option<bool>,
}

impl SynthesisChecks {
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for (ok, name) in [
            (self.unit_flow.passed, "unit_flow"),
            (self.weight_conservation, "weight_conservation"),
            (self.direct_extremal != Some(false), "direct_extremal"),
            (self.disc_vector, "disc_vector"),
            (self.abstraction_matches, "abstraction_matches"),
            (self.flow_bound, "flow_bound"),
            (self.weight_bound, "weight_bound"),
            (self.lemma_uniqueness != Some(false), "lemma_uniqueness"),
        ] {
            if !ok {
                out.push(name);
            }
        }
        out
    }

    pub fn all_passed(&self) -> bool {
        self.failures().is_empty()
    }
}

fn sparse_flow<S: Serializer>(f: &IntFlow, s: S) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Sparse {
        n: usize,
        edges: Vec<(usize, usize, i64)>,
    }
    let n = f.n();
    let edges = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter_map(|(i, j)| {
            let v = *f.get(i, j);
            (v != 0).then_some((i, j, v))
        })
        .collect();
    Sparse { n, edges }.serialize(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SynthesisResult {
    pub graph: MDGraph,
    pub f: Vec<i64>,
    pub e_star: usize,
    pub w: Vec<i64>,
    pub x: Vec<i64>,
    #[serde(serialize_with = "sparse_flow")]
    pub g: IntFlow,
    pub vertex_map: VertexMap,
    pub checks: SynthesisChecks,
}

impl SynthesisResult {
    /// Number of blocks `n`; the matching alternating word has reduced
    /// length `2n`.
    pub fn n(&self) -> usize {
        self.x.len()
    }
}

fn pow_big(base: usize, exp: usize) -> BigInt {
    num::pow(BigInt::from(base), exp)
}

/// Steps 1 to 3 followed by every certificate check. Fails with a report
/// naming the failed checks.
pub fn synthesize_extremal(g: &MDGraph) -> Result<SynthesisResult> {
    let (f, e_star) = step1_flow(g)?;
    let w = step2_weights(g, &f, e_star)?;
    let x = minimal_vertex_weights(g, &w);
    let (gflow, map) = step3_concretize(g, &f, &w, &x)?;
    let n = x.len();
    let spec = ConeSpec::single(x.clone())?;
    let poly = EWPolyhedronSpec::new(g.clone(), w.clone())?;

    let unit_flow = unit_flow_check(&poly, &f, e_star)?;

    let cap: Vec<i64> = f.iter().map(|&v| BOX_FACTOR * v).collect();
    let mut weight_conservation = lift(&f, &map, n) == gflow;
    let mut lifts_checked = 0;
    for_each_bounded_flow(g, &cap, |phi| {
        let h = lift(phi, &map, n);
        lifts_checked += 1;
        let ok = h.is_flow() && spec.weight_int(&h) == vec![poly.weight(phi)];
        weight_conservation &= ok;
    })?;

    let n_max = BOX_FACTOR as usize;
    let direct_extremal =
        (n <= DIRECT_EXTREMAL_N_LIMIT).then(|| is_extremal(&spec, &gflow, n_max, AmbientSet::Cone).is_extremal());

    let disc_vector = DiscVector::new(&spec, gflow.clone()).is_ok();
    let expected = g.clone().with_flows(f.clone())?.with_weights(w.clone())?;
    let abstraction_matches = isomorphic(&abstract_flow(&gflow, &x)?, &expected)?;

    let (m, e) = (g.vertices, g.edge_count());
    let flow_cap = pow_big(e, m);
    let flow_bound = f.iter().all(|&v| BigInt::from(v) <= flow_cap);
    let weight_cap = pow_big(e, (m + 1) * (e + 1)) * 2;
    let weight_bound = w.iter().all(|&v| BigInt::from(v.unsigned_abs()) < weight_cap);
    let others: Vec<i64> = (0..e).filter(|&i| i != e_star).map(|i| f[i]).collect();
    let other_w: Vec<i64> = (0..e).filter(|&i| i != e_star).map(|i| w[i]).collect();
    let lemma = if others.is_empty() {
        Some(true)
    } else {
        lemma_uniqueness(&others, &other_w)
    };

    let checks = SynthesisChecks {
        unit_flow,
        weight_conservation,
        lifts_checked,
        direct_extremal,
        direct_extremal_n_max: n_max,
        disc_vector,
        abstraction_matches,
        flow_bound,
        weight_bound,
        lemma_uniqueness: lemma,
    };
    let failures = checks.failures();
    if !failures.is_empty() {
        return Err(Error::internal(format!(
            "synthesis checks failed: {} (f = {f:?}, e* = {e_star}, w = {w:?}, n = {n})",
            failures.join(", ")
        )));
    }
    Ok(SynthesisResult {
        graph: g.clone(),
        f,
        e_star,
        w,
        x,
        g: gflow,
        vertex_map: map,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loop_graph() -> MDGraph {
        MDGraph::new(1, vec![(0, 0)]).unwrap()
    }

    fn parallel_graph() -> MDGraph {
        MDGraph::new(2, vec![(0, 1), (0, 1), (1, 0)]).unwrap()
    }

    #[test]
    fn lemma_examples() {
        assert_eq!(lemma_numbers(&[1]).unwrap(), vec![5]);
        assert_eq!(lemma_numbers(&[1, 2]).unwrap(), vec![65, 68]);
        assert!(lemma_numbers(&[]).unwrap().is_empty());
        assert_eq!(lemma_uniqueness(&[1, 2], &[65, 68]), Some(true));
        // Without the large offset the representation is not unique.
        assert_eq!(lemma_uniqueness(&[1, 2], &[1, 2]), Some(false));
        assert!(lemma_numbers(&[i64::MAX]).is_err());
    }

    #[test]
    fn step1_examples() {
        assert_eq!(step1_flow(&loop_graph()).unwrap(), (vec![1], 0));
        let (f, e) = step1_flow(&parallel_graph()).unwrap();
        assert_eq!(f, vec![1, 1, 2]);
        assert!(e < 2);
        let two_cycle = MDGraph::new(2, vec![(0, 1), (1, 0)]).unwrap();
        assert!(step1_flow(&two_cycle).is_err());
        let split = MDGraph::new(2, vec![(0, 0), (1, 1)]).unwrap();
        assert!(step1_flow(&split).is_err());
    }

    #[test]
    fn step2_examples() {
        assert_eq!(step2_weights(&loop_graph(), &[1], 0).unwrap(), vec![0]);
        let w = step2_weights(&parallel_graph(), &[1, 1, 2], 0).unwrap();
        assert_eq!(w, vec![-201, 65, 68]);
    }

    #[test]
    fn step3_examples() {
        let g = loop_graph();
        let x = minimal_vertex_weights(&g, &[0]);
        assert_eq!(x, vec![1, -1]);
        let (flow, map) = step3_concretize(&g, &[1], &[0], &x).unwrap();
        assert_eq!(flow, IntFlow::cycle(2, &[0, 1]));
        assert_eq!(map.edge_paths, vec![vec![0, 1, 0]]);

        let g = parallel_graph();
        let w = [-201, 65, 68];
        let x = minimal_vertex_weights(&g, &w);
        assert_eq!(vertex_budget(&g, &w), (135, 204));
        let (_, map) = step3_concretize(&g, &[1, 1, 2], &w, &x).unwrap();
        let lengths: Vec<usize> = map.edge_paths.iter().map(|p| p.len() - 1).collect();
        assert_eq!(lengths, vec![203, 67, 70]);
        let err = step3_concretize(&g, &[1, 1, 2], &w, &[1, -1]).unwrap_err();
        assert!(err.to_string().contains("need 135 vertices of weight +1 and 204"));
    }

    #[test]
    fn six_edge_weights() {
        let g = MDGraph::new(3, vec![(0, 0), (0, 1), (1, 0), (1, 2), (2, 1), (2, 2)]).unwrap();
        let (f, e) = step1_flow(&g).unwrap();
        assert_eq!(f[e], 1);
        assert!(f.iter().all(|&v| v > 0 && v <= 6i64.pow(3)));
        let w = step2_weights(&g, &f, e).unwrap();
        assert_eq!(w.iter().filter(|&&v| v > 0).count(), 5);
        assert!(w[e] < 0);
        assert_eq!(f.iter().zip(&w).map(|(a, b)| a * b).sum::<i64>(), 0);
        let x = minimal_vertex_weights(&g, &w);
        assert!(matches!(
            step3_concretize(&g, &f, &w, &x),
            Err(Error::LimitExceeded { .. })
        ));
    }

    #[test]
    fn pipeline_on_small_graphs() {
        for g in [
            loop_graph(),
            MDGraph::new(1, vec![(0, 0), (0, 0)]).unwrap(),
            parallel_graph(),
        ] {
            let r = synthesize_extremal(&g).unwrap();
            assert!(r.checks.all_passed(), "{:?}", r.checks);
            assert_eq!(r.checks.direct_extremal, Some(true));
            assert_eq!(r.f[r.e_star], 1);
        }
    }
}
