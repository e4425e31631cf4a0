//! The weight function `h_z`, the cone `V(z)`, disc vectors and their
//! essential/extremal classification, and extreme rays of `V(z)`.

use std::collections::HashMap;
use std::ops::ControlFlow;

use num::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{connectivity, for_each_sub_circulation, sub_circulations, CompleteDigraphFlow, IntFlow};
use crate::numerics::{cone_extreme_rays, Rational};
use crate::words::ExponentMatrix;

pub const DEFAULT_DISC_N_LIMIT: usize = 8;
pub const DEFAULT_DISC_BOUND_LIMIT: i64 = 6;
pub const DEFAULT_RAY_N_LIMIT: usize = 5;

/// The rows `z^(i)` defining `h_z` and `V(z)` on `G_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ConeSpec {
    pub z: ExponentMatrix,
}

impl ConeSpec {
    pub fn new(z: ExponentMatrix) -> Self {
        ConeSpec { z }
    }

    pub fn from_rows(n: usize, rows: Vec<Vec<i64>>) -> Result<Self> {
        Ok(ConeSpec::new(ExponentMatrix::new(n, rows)?))
    }

    pub fn single(row: Vec<i64>) -> Result<Self> {
        Ok(ConeSpec::new(ExponentMatrix::single(row)?))
    }

    pub fn n(&self) -> usize {
        self.z.n()
    }

    /// `h_z` on integral flows.
    pub fn weight_int(&self, f: &IntFlow) -> Vec<i64> {
        let out: Vec<i64> = (0..f.n()).map(|j| f.outflow(j)).collect();
        self.weight_of_outflows(&out)
    }

    /// `h_z` on an outflow vector.
    pub fn weight_of_outflows(&self, outflows: &[i64]) -> Vec<i64> {
        self.z
            .rows()
            .iter()
            .map(|row| row.iter().zip(outflows).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Whether `f` is a flow on `G_n` with `h_z(f) = 0`.
    pub fn contains_int(&self, f: &IntFlow) -> bool {
        f.n() == self.n() && f.is_flow() && self.weight_int(f).iter().all(|&v| v == 0)
    }

    pub fn is_disc(&self, f: &IntFlow) -> bool {
        !f.is_zero() && self.contains_int(f) && f.has_connected_support()
    }
}

/// `(h_z(f))_i = Σ_j z^(i)_j · outflow_j(f)`.
pub fn weight_vector(spec: &ConeSpec, f: &CompleteDigraphFlow) -> Result<Vec<Rational>> {
    if f.n() != spec.n() {
        return Err(Error::DimensionMismatch {
            context: "weight vector",
            expected: spec.n(),
            found: f.n(),
        });
    }
    let out: Vec<Rational> = (0..f.n()).map(|j| f.outflow(j)).collect();
    Ok(spec
        .z
        .rows()
        .iter()
        .map(|row| {
            row.iter()
                .zip(&out)
                .map(|(&a, b)| Rational::from(a) * b)
                .sum()
        })
        .collect())
}

pub fn in_cone(spec: &ConeSpec, f: &CompleteDigraphFlow) -> bool {
    f.n() == spec.n()
        && f.is_flow()
        && weight_vector(spec, f).is_ok_and(|w| w.iter().all(Rational::is_zero))
}

/// A nonzero integral member of `V(z)` with connected support.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DiscVector {
    pub flow: IntFlow,
}

impl DiscVector {
    pub fn new(spec: &ConeSpec, flow: IntFlow) -> Result<Self> {
        if flow.n() != spec.n() {
            return Err(Error::DimensionMismatch {
                context: "disc vector",
                expected: spec.n(),
                found: flow.n(),
            });
        }
        if flow.is_zero() || !spec.contains_int(&flow) {
            return Err(Error::invalid("not a nonzero integral member of the cone"));
        }
        let strong = flow.has_connected_support();
        // For flows, weak and strong connectivity of the support coincide.
        let support = flow.support_graph();
        let c = connectivity(&support);
        let touched = c.weak_components.iter().filter(|comp| {
            comp.iter().any(|&v| flow.outflow(v) > 0)
        });
        let weak = touched.count() == 1;
        if weak != strong {
            return Err(Error::internal("flow support with differing weak and strong connectivity"));
        }
        if !strong {
            return Err(Error::invalid("flow support is not connected"));
        }
        Ok(DiscVector { flow })
    }
}

/// Visit every nonnegative integral `n × n` matrix with row sums and column
/// sums both equal to `margins`, in lexicographic cell order.
pub fn for_each_table<B>(margins: &[i64], mut visit: impl FnMut(&[i64]) -> ControlFlow<B>) -> Option<B> {
    let n = margins.len();
    let active: Vec<usize> = (0..n).filter(|&i| margins[i] > 0).collect();
    let mut cells = vec![0i64; n * n];
    let mut row_rem = margins.to_vec();
    let mut col_rem = margins.to_vec();

    #[allow(clippy::too_many_arguments)]
    fn rec<B>(
        r: usize,
        c: usize,
        active: &[usize],
        n: usize,
        cells: &mut [i64],
        row_rem: &mut [i64],
        col_rem: &mut [i64],
        visit: &mut impl FnMut(&[i64]) -> ControlFlow<B>,
    ) -> Option<B> {
        if r == active.len() {
            return match visit(cells) {
                ControlFlow::Break(b) => Some(b),
                ControlFlow::Continue(()) => None,
            };
        }
        let (i, j) = (active[r], active[c]);
        let last_col = c + 1 == active.len();
        let last_row = r + 1 == active.len();
        let (lo, hi) = if last_row {
            (col_rem[j], col_rem[j])
        } else if last_col {
            (row_rem[i], row_rem[i])
        } else {
            (0, row_rem[i].min(col_rem[j]))
        };
        if lo > row_rem[i].min(col_rem[j]) {
            return None;
        }
        let (nr, nc) = if last_col { (r + 1, 0) } else { (r, c + 1) };
        for v in lo..=hi {
            cells[i * n + j] = v;
            row_rem[i] -= v;
            col_rem[j] -= v;
            let out = if last_col && row_rem[i] != 0 {
                None
            } else {
                rec(nr, nc, active, n, cells, row_rem, col_rem, visit)
            };
            row_rem[i] += v;
            col_rem[j] += v;
            if out.is_some() {
                cells[i * n + j] = 0;
                return out;
            }
        }
        cells[i * n + j] = 0;
        None
    }

    if active.is_empty() {
        return None;
    }
    rec(0, 0, &active, n, &mut cells, &mut row_rem, &mut col_rem, &mut visit)
}

/// Outflow patterns `o ∈ {0..=bound}^n`, `o ≠ 0`, with `h_z` vanishing, in
/// lexicographic order.
pub fn outflow_patterns(spec: &ConeSpec, bound: i64) -> Vec<Vec<i64>> {
    let n = spec.n();
    let mut o = vec![0i64; n];
    let mut out = Vec::new();
    loop {
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if o[k] < bound {
                o[k] += 1;
                for v in o.iter_mut().skip(k + 1) {
                    *v = 0;
                }
                break;
            }
        }
        if spec.weight_of_outflows(&o).iter().all(|&v| v == 0) {
            out.push(o.clone());
        }
    }
}

/// All disc vectors whose outflow at every vertex is at most `bound`.
pub fn enumerate_disc_vectors(spec: &ConeSpec, bound: i64) -> Result<Vec<DiscVector>> {
    enumerate_disc_vectors_with_limits(spec, bound, DEFAULT_DISC_N_LIMIT, DEFAULT_DISC_BOUND_LIMIT)
}

pub fn enumerate_disc_vectors_with_limits(
    spec: &ConeSpec,
    bound: i64,
    n_limit: usize,
    bound_limit: i64,
) -> Result<Vec<DiscVector>> {
    if spec.n() > n_limit {
        return Err(Error::LimitExceeded {
            what: "disc enumeration block count",
            requested: spec.n(),
            limit: n_limit,
        });
    }
    if bound > bound_limit || bound < 0 {
        return Err(Error::LimitExceeded {
            what: "disc enumeration outflow bound",
            requested: bound.max(0) as usize,
            limit: bound_limit as usize,
        });
    }
    let n = spec.n();
    let mut out = Vec::new();
    for pattern in outflow_patterns(spec, bound) {
        for_each_table::<()>(&pattern, |cells| {
            let f = IntFlow::from_entries(n, cells.to_vec()).expect("n×n table");
            if f.has_connected_support() {
                out.push(DiscVector { flow: f });
            }
            ControlFlow::Continue(())
        });
    }
    Ok(out)
}

/// Whether `d` cannot be written as `e + v` with `e` a disc vector and
/// `v ≠ 0` in the cone. Candidates `e` range over sub-circulations of `d`.
pub fn is_essential(spec: &ConeSpec, d: &DiscVector) -> bool {
    let d = &d.flow;
    for_each_sub_circulation(d, |e| {
        if !e.is_zero() && e != d && spec.is_disc(e) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })
    .is_none()
}

/// Integral point set whose convex hull is tested for extremality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AmbientSet {
    /// Nonzero integral members of `V(z)`.
    Cone,
    /// Integral points of `D(z) + V(z)`.
    DiscPlusCone,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalReport {
    /// Largest `N` up to which no decomposition exists (`None` if `d` is not
    /// even in the ambient set).
    pub extremal_up_to: Option<usize>,
    /// A decomposition `N·d = d_1 + … + d_N` with some `d_i ≠ d`.
    pub counterexample: Option<Vec<IntFlow>>,
}

impl ExtremalReport {
    pub fn is_extremal(&self) -> bool {
        self.counterexample.is_none() && self.extremal_up_to.is_some()
    }
}

struct Ambient<'a> {
    spec: &'a ConeSpec,
    kind: AmbientSet,
    cache: HashMap<IntFlow, bool>,
}

impl Ambient<'_> {
    fn contains(&mut self, f: &IntFlow) -> bool {
        if f.is_zero() || !self.spec.contains_int(f) {
            return false;
        }
        match self.kind {
            AmbientSet::Cone => true,
            AmbientSet::DiscPlusCone => {
                if let Some(&v) = self.cache.get(f) {
                    return v;
                }
                let spec = self.spec;
                let v = for_each_sub_circulation(f, |e| {
                    if spec.is_disc(e) {
                        ControlFlow::Break(())
                    } else {
                        ControlFlow::Continue(())
                    }
                })
                .is_some();
                self.cache.insert(f.clone(), v);
                v
            }
        }
    }
}

/// Bounded extremality check: for each `N ≤ n_max`, search decompositions
/// `N·d = d_1 + … + d_N` into members of the ambient set.
pub fn is_extremal(spec: &ConeSpec, d: &IntFlow, n_max: usize, ambient: AmbientSet) -> ExtremalReport {
    let mut amb = Ambient {
        spec,
        kind: ambient,
        cache: HashMap::new(),
    };
    if !amb.contains(d) {
        return ExtremalReport {
            extremal_up_to: None,
            counterexample: None,
        };
    }
    for big_n in 2..=n_max.max(1) {
        let target = d.scale(big_n as i64);
        let candidates: Vec<IntFlow> = sub_circulations(&target)
            .into_iter()
            .filter(|e| amb.contains(e))
            .collect();
        let mut chosen = Vec::new();
        if decompose(&target, big_n, 0, &candidates, d, &mut amb, &mut chosen) {
            return ExtremalReport {
                extremal_up_to: Some(big_n - 1),
                counterexample: Some(chosen),
            };
        }
    }
    ExtremalReport {
        extremal_up_to: Some(n_max.max(1)),
        counterexample: None,
    }
}

/// Multisets of `k` candidates (nondecreasing index from `from`) summing to
/// `target`, not all equal to `d`.
fn decompose(
    target: &IntFlow,
    k: usize,
    from: usize,
    candidates: &[IntFlow],
    d: &IntFlow,
    amb: &mut Ambient<'_>,
    chosen: &mut Vec<IntFlow>,
) -> bool {
    if k == 1 {
        let all_d = chosen.iter().all(|c| c == d) && target == d;
        let ordered = candidates
            .iter()
            .position(|c| c == target)
            .is_some_and(|p| p >= from);
        if !all_d && ordered && amb.contains(target) {
            chosen.push(target.clone());
            return true;
        }
        return false;
    }
    for (idx, e) in candidates.iter().enumerate().skip(from) {
        if !e.le(target) {
            continue;
        }
        chosen.push(e.clone());
        if decompose(&target.sub(e), k - 1, idx, candidates, d, amb, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Extreme rays of `V(z)` as primitive integral flows.
pub fn extremal_rays(spec: &ConeSpec) -> Result<Vec<IntFlow>> {
    extremal_rays_with_limit(spec, DEFAULT_RAY_N_LIMIT)
}

pub fn extremal_rays_with_limit(spec: &ConeSpec, n_limit: usize) -> Result<Vec<IntFlow>> {
    let n = spec.n();
    if n > n_limit {
        return Err(Error::LimitExceeded {
            what: "extreme ray block count",
            requested: n,
            limit: n_limit,
        });
    }
    let mut equalities = Vec::new();
    for v in 0..n {
        let mut row = vec![0i64; n * n];
        for j in 0..n {
            row[v * n + j] += 1;
            row[j * n + v] -= 1;
        }
        if row.iter().any(|&a| a != 0) {
            equalities.push(row);
        }
    }
    for z in spec.z.rows() {
        let mut row = vec![0i64; n * n];
        for (j, &zj) in z.iter().enumerate() {
            for k in 0..n {
                row[j * n + k] = zj;
            }
        }
        equalities.push(row);
    }
    let rays = cone_extreme_rays(&equalities, n * n)?;
    rays.into_iter()
        .map(|r| {
            let entries = r
                .iter()
                .map(|x| x.to_i64().ok_or(Error::Overflow("extreme ray entry")))
                .collect::<Result<Vec<_>>>()?;
            IntFlow::from_entries(n, entries)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(rows: Vec<Vec<i64>>) -> ConeSpec {
        let n = rows[0].len();
        ConeSpec::from_rows(n, rows).unwrap()
    }

    #[test]
    fn weight_examples() {
        let s = spec(vec![vec![1, -1]]);
        let c2 = IntFlow::cycle(2, &[0, 1]).to_rational();
        assert_eq!(weight_vector(&s, &c2).unwrap(), vec![Rational::zero()]);
        assert!(in_cone(&s, &c2));
        let s3 = spec(vec![vec![2, -1, -1]]);
        let h = IntFlow::cycle(3, &[0, 1, 2]).to_rational();
        assert!(in_cone(&s3, &h));
        let lp = IntFlow::cycle(2, &[0]).to_rational();
        assert_eq!(weight_vector(&s, &lp).unwrap(), vec![Rational::one()]);
        assert!(!in_cone(&s, &lp));
    }

    #[test]
    fn disc_enumeration_examples() {
        let s = spec(vec![vec![1, -1]]);
        let d1 = enumerate_disc_vectors(&s, 1).unwrap();
        assert_eq!(d1.len(), 1);
        assert_eq!(d1[0].flow, IntFlow::cycle(2, &[0, 1]));
        let d2: Vec<IntFlow> = enumerate_disc_vectors(&s, 2).unwrap().into_iter().map(|d| d.flow).collect();
        let c = IntFlow::cycle(2, &[0, 1]);
        let loops = IntFlow::cycle(2, &[0]).add(&IntFlow::cycle(2, &[1]));
        assert!(d2.contains(&c.scale(2)));
        assert!(d2.contains(&c.add(&loops)));
        assert!(!d2.contains(&loops));
        let w3 = spec(vec![vec![1, -1, 0], vec![1, 0, -1]]);
        let h: Vec<IntFlow> = enumerate_disc_vectors(&w3, 1).unwrap().into_iter().map(|d| d.flow).collect();
        assert_eq!(h, vec![IntFlow::cycle(3, &[0, 2, 1]), IntFlow::cycle(3, &[0, 1, 2])]);
    }

    #[test]
    fn limits_are_enforced() {
        let s = spec(vec![vec![1, -1]]);
        assert!(matches!(enumerate_disc_vectors(&s, 7), Err(Error::LimitExceeded { .. })));
    }

    #[test]
    fn essential_examples() {
        let s = spec(vec![vec![1, -1]]);
        let c = IntFlow::cycle(2, &[0, 1]);
        assert!(is_essential(&s, &DiscVector::new(&s, c.clone()).unwrap()));
        let loops = IntFlow::cycle(2, &[0]).add(&IntFlow::cycle(2, &[1]));
        let d = DiscVector::new(&s, c.add(&loops)).unwrap();
        assert!(!is_essential(&s, &d));
    }

    #[test]
    fn extremal_examples() {
        let s = spec(vec![vec![1, -1]]);
        let c = IntFlow::cycle(2, &[0, 1]);
        let r = is_extremal(&s, &c, 3, AmbientSet::DiscPlusCone);
        assert!(r.is_extremal());
        assert_eq!(r.extremal_up_to, Some(3));
        let r = is_extremal(&s, &c.scale(2), 2, AmbientSet::DiscPlusCone);
        let ce = r.counterexample.unwrap();
        assert_eq!(ce.iter().fold(IntFlow::zero(2), |a, b| a.add(b)), c.scale(4));
    }

    #[test]
    fn rays_of_two_block_cone() {
        let s = spec(vec![vec![1, -1]]);
        let rays = extremal_rays(&s).unwrap();
        let c = IntFlow::cycle(2, &[0, 1]);
        let loops = IntFlow::cycle(2, &[0]).add(&IntFlow::cycle(2, &[1]));
        assert_eq!(rays.len(), 2);
        assert!(rays.contains(&c) && rays.contains(&loops));
    }

    #[test]
    fn table_counts() {
        let mut count = 0;
        for_each_table::<()>(&[1, 1, 1], |_| {
            count += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(count, 6);
        count = 0;
        for_each_table::<()>(&[2, 0, 2], |_| {
            count += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(count, 3);
    }
}
