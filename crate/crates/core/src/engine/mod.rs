//! Klein-function evaluation and the paired unit-outflow LP for scl.

mod pricing;

use serde::{Deserialize, Serialize};

use crate::bounds::lower_bound;
use crate::cones::{enumerate_disc_vectors, in_cone, ConeSpec, DEFAULT_DISC_BOUND_LIMIT};
use crate::error::{Error, Result};
use crate::graphs::{CompleteDigraphFlow, IntFlow};
use crate::numerics::lp::{Row, Sense, Simplex};
use crate::numerics::{LinearProgram, LpStatus, Rational};
use crate::words::Word;

use pricing::Pricer;

pub const DEFAULT_SCL_N_LIMIT: usize = 6;
pub const DEFAULT_BOUND: i64 = 3;
/// Columns added per side in one pricing round.
const COLUMNS_PER_ROUND: usize = 40;

/// `(v_A)_{ij} = (v_B)_{(j−1) i}` with cyclic indices: entry `(k, l)` of
/// `v_B` is entry `(l, k+1)` of `v_A`.
pub fn paired_index(n: usize, k: usize, l: usize) -> (usize, usize) {
    (l, (k + 1) % n)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairedVector {
    pub v_a: CompleteDigraphFlow,
    pub v_b: CompleteDigraphFlow,
}

impl PairedVector {
    pub fn from_a(v_a: CompleteDigraphFlow) -> Self {
        let n = v_a.n();
        let mut v_b = CompleteDigraphFlow::zero(n);
        for k in 0..n {
            for l in 0..n {
                let (i, j) = paired_index(n, k, l);
                v_b.set(k, l, v_a.get(i, j).clone());
            }
        }
        PairedVector { v_a, v_b }
    }

    pub fn is_paired(&self) -> bool {
        let n = self.v_a.n();
        self.v_b.n() == n
            && (0..n).all(|k| {
                (0..n).all(|l| {
                    let (i, j) = paired_index(n, k, l);
                    self.v_b.get(k, l) == self.v_a.get(i, j)
                })
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SclStatus {
    Stabilized,
    UpperBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub t: Rational,
    pub d: IntFlow,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SclCertificate {
    pub paired: PairedVector,
    pub decomposition_a: Vec<Term>,
    pub decomposition_b: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SclResult {
    #[serde(rename = "scl")]
    pub value: Rational,
    pub status: SclStatus,
    pub bound_used: i64,
    pub certificate: SclCertificate,
}

impl SclResult {
    /// Re-check the certificate against `w` with exact arithmetic.
    pub fn verify(&self, w: &Word) -> bool {
        let n = w.n();
        let c = &self.certificate;
        let (va, vb) = (&c.paired.v_a, &c.paired.v_b);
        let sx = ConeSpec::new(w.x().clone());
        let sy = ConeSpec::new(w.y().clone());
        let unit = |f: &CompleteDigraphFlow| (0..n).all(|i| f.outflow(i).is_one());
        let fits = |terms: &[Term], spec: &ConeSpec, v: &CompleteDigraphFlow| {
            let mut sum = CompleteDigraphFlow::zero(n);
            for term in terms {
                if term.t.is_negative() || !spec.is_disc(&term.d) {
                    return false;
                }
                sum = sum.add(&term.d.to_rational().scale(&term.t));
            }
            sum.entries().iter().zip(v.entries()).all(|(a, b)| a <= b)
        };
        let total: Rational = c
            .decomposition_a
            .iter()
            .chain(&c.decomposition_b)
            .map(|t| t.t.clone())
            .sum();
        va.n() == n
            && c.paired.is_paired()
            && unit(va)
            && unit(vb)
            && in_cone(&sx, va)
            && in_cone(&sy, vb)
            && fits(&c.decomposition_a, &sx, va)
            && fits(&c.decomposition_b, &sy, vb)
            && self.value == (Rational::from(n) - total) / Rational::from(2)
    }
}

/// LP lower bound for `κ_z(v)` using the disc vectors with outflow at most
/// `bound`.
pub fn klein_value(spec: &ConeSpec, v: &CompleteDigraphFlow, bound: i64) -> Result<Rational> {
    if !in_cone(spec, v) {
        return Err(Error::precondition("vector is not in the cone"));
    }
    let pool = enumerate_disc_vectors(spec, bound)?;
    let n = spec.n();
    let mut lp = LinearProgram::new(vec![Rational::one(); pool.len()]);
    for e in 0..n * n {
        let row = pool.iter().map(|d| Rational::from(d.flow.entries()[e])).collect();
        lp = lp.le(row, v.entries()[e].clone());
    }
    let res = crate::numerics::solve_lp(&lp)?;
    match res.status {
        LpStatus::Optimal => res.value.ok_or_else(|| Error::internal("optimal LP without value")),
        s => Err(Error::internal(format!("Klein LP ended {s:?}"))),
    }
}

/// Row layout of the paired LP.
struct Layout {
    n: usize,
    hx: usize,
    hy: usize,
}

impl Layout {
    fn cons_a(&self, i: usize) -> usize {
        i
    }
    fn cons_b(&self, k: usize) -> usize {
        self.n + k
    }
    fn unit_a(&self, i: usize) -> usize {
        2 * self.n + i
    }
    fn unit_b(&self, k: usize) -> usize {
        3 * self.n + k
    }
    fn h_x(&self, r: usize) -> usize {
        4 * self.n + r
    }
    fn h_y(&self, r: usize) -> usize {
        4 * self.n + self.hx + r
    }
    fn edge_a(&self, i: usize, j: usize) -> usize {
        4 * self.n + self.hx + self.hy + i * self.n + j
    }
    fn edge_b(&self, k: usize, l: usize) -> usize {
        self.edge_a(0, 0) + self.n * self.n + k * self.n + l
    }
    fn rows(&self) -> usize {
        self.edge_b(0, 0) + self.n * self.n
    }
}

struct PairedLp {
    layout: Layout,
    simplex: Simplex,
    /// Structural index and flow for each decomposition column per side.
    cols_a: Vec<(usize, IntFlow)>,
    cols_b: Vec<(usize, IntFlow)>,
}

impl PairedLp {
    fn build(w: &Word, pool_a: &[IntFlow], pool_b: &[IntFlow]) -> Self {
        let n = w.n();
        let layout = Layout {
            n,
            hx: w.x().row_count(),
            hy: w.y().row_count(),
        };
        let mut rows: Vec<Row> = (0..layout.rows())
            .map(|r| Row {
                coeffs: Vec::new(),
                sense: if r >= layout.edge_a(0, 0) { Sense::Le } else { Sense::Eq },
                rhs: if (layout.unit_a(0)..layout.h_x(0)).contains(&r) {
                    Rational::one()
                } else {
                    Rational::zero()
                },
            })
            .collect();
        let var = |i: usize, j: usize| i * n + j;
        let mut push = |row: usize, col: usize, a: i64| {
            if a != 0 {
                rows[row].coeffs.push((col, Rational::from(a)));
            }
        };
        for i in 0..n {
            for j in 0..n {
                let c = var(i, j);
                // v_A conservation and unit outflow.
                if i != j {
                    push(layout.cons_a(i), c, 1);
                    push(layout.cons_a(j), c, -1);
                }
                push(layout.unit_a(i), c, 1);
                for (r, row) in w.x().rows().iter().enumerate() {
                    push(layout.h_x(r), c, row[i]);
                }
                push(layout.edge_a(i, j), c, -1);
                // The same entry seen as v_B(k, l) with (i, j) = (l, k+1).
                let k = (j + n - 1) % n;
                let l = i;
                if k != l {
                    push(layout.cons_b(k), c, 1);
                    push(layout.cons_b(l), c, -1);
                }
                push(layout.unit_b(k), c, 1);
                for (r, row) in w.y().rows().iter().enumerate() {
                    push(layout.h_y(r), c, row[k]);
                }
                push(layout.edge_b(k, l), c, -1);
            }
        }
        let mut next = n * n;
        let mut cols_a = Vec::new();
        let mut cols_b = Vec::new();
        for d in pool_a {
            for i in 0..n {
                for j in 0..n {
                    push(layout.edge_a(i, j), next, *d.get(i, j));
                }
            }
            cols_a.push((next, d.clone()));
            next += 1;
        }
        for e in pool_b {
            for k in 0..n {
                for l in 0..n {
                    push(layout.edge_b(k, l), next, *e.get(k, l));
                }
            }
            cols_b.push((next, e.clone()));
            next += 1;
        }
        let mut cost = vec![Rational::zero(); n * n];
        cost.resize(next, Rational::one());
        let simplex = Simplex::new(next, &rows, &cost);
        PairedLp {
            layout,
            simplex,
            cols_a,
            cols_b,
        }
    }

    fn optimize(&mut self) -> Result<()> {
        match self.simplex.optimize() {
            LpStatus::Optimal => Ok(()),
            s => Err(Error::internal(format!("paired scl LP ended {s:?}"))),
        }
    }

    fn add(&mut self, side_b: bool, d: IntFlow) {
        let n = self.layout.n;
        let mut coeffs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let a = *d.get(i, j);
                if a != 0 {
                    let row = if side_b {
                        self.layout.edge_b(i, j)
                    } else {
                        self.layout.edge_a(i, j)
                    };
                    coeffs.push((row, Rational::from(a)));
                }
            }
        }
        let idx = self.simplex.add_column(&coeffs, Rational::one());
        if side_b {
            self.cols_b.push((idx, d));
        } else {
            self.cols_a.push((idx, d));
        }
    }

    /// Column generation until no disc vector with outflow at most the
    /// pricer bound has negative reduced cost.
    fn saturate(&mut self, pa: &Pricer, pb: &Pricer, stop: &dyn Fn(&Rational) -> bool) -> Result<bool> {
        self.optimize()?;
        let n = self.layout.n;
        loop {
            if stop(&self.value()) {
                return Ok(true);
            }
            let duals = self.simplex.duals();
            let ya: Vec<Rational> = (0..n * n).map(|e| duals[self.layout.edge_a(0, 0) + e].clone()).collect();
            let yb: Vec<Rational> = (0..n * n).map(|e| duals[self.layout.edge_b(0, 0) + e].clone()).collect();
            let new_a = pa.improving(&ya, COLUMNS_PER_ROUND);
            let new_b = pb.improving(&yb, COLUMNS_PER_ROUND);
            if new_a.is_empty() && new_b.is_empty() {
                return Ok(false);
            }
            for d in new_a {
                self.add(false, d);
            }
            for d in new_b {
                self.add(true, d);
            }
            self.optimize()?;
        }
    }

    fn value(&self) -> Rational {
        (Rational::from(self.layout.n) - self.simplex.value()) / Rational::from(2)
    }

    fn certificate(&self) -> SclCertificate {
        let n = self.layout.n;
        let x = self.simplex.structural_values();
        let v_a = CompleteDigraphFlow::from_entries(n, x[..n * n].to_vec()).expect("n² entries");
        let terms = |cols: &[(usize, IntFlow)]| {
            cols.iter()
                .filter(|(i, _)| x[*i].is_positive())
                .map(|(i, d)| Term {
                    t: x[*i].clone(),
                    d: d.clone(),
                })
                .collect()
        };
        SclCertificate {
            paired: PairedVector::from_a(v_a),
            decomposition_a: terms(&self.cols_a),
            decomposition_b: terms(&self.cols_b),
        }
    }
}

fn check_word(w: &Word, bound: i64, n_limit: usize) -> Result<()> {
    if w.n() > n_limit {
        return Err(Error::LimitExceeded {
            what: "scl block count",
            requested: w.n(),
            limit: n_limit,
        });
    }
    if !(1..=DEFAULT_DISC_BOUND_LIMIT).contains(&bound) {
        return Err(Error::LimitExceeded {
            what: "scl disc bound",
            requested: bound.max(0) as usize,
            limit: DEFAULT_DISC_BOUND_LIMIT as usize,
        });
    }
    Ok(())
}

/// Values of the paired LP for bounds `1..=max_bound`, each warm-started
/// from the previous one.
pub fn scl_values(w: &Word, max_bound: i64) -> Result<Vec<SclResult>> {
    check_word(w, max_bound, DEFAULT_SCL_N_LIMIT)?;
    run(w, 1, max_bound)
}

fn initial_lp(w: &Word) -> Result<(ConeSpec, ConeSpec, PairedLp)> {
    let sx = ConeSpec::new(w.x().clone());
    let sy = ConeSpec::new(w.y().clone());
    let pool = |s: &ConeSpec| -> Result<Vec<IntFlow>> {
        Ok(enumerate_disc_vectors(s, 1)?.into_iter().map(|d| d.flow).collect())
    };
    let lp = PairedLp::build(w, &pool(&sx)?, &pool(&sy)?);
    Ok((sx, sy, lp))
}

fn run(w: &Word, first: i64, last: i64) -> Result<Vec<SclResult>> {
    let (sx, sy, mut lp) = initial_lp(w)?;
    let mut out = Vec::new();
    for b in 1..=last {
        lp.saturate(&Pricer::new(&sx, b), &Pricer::new(&sy, b), &|_| false)?;
        if b >= first {
            out.push(SclResult {
                value: lp.value(),
                status: SclStatus::UpperBound,
                bound_used: b,
                certificate: lp.certificate(),
            });
        }
    }
    Ok(out)
}

/// scl through the paired LP truncated at disc bound `bound`. With
/// `stabilize`, bound `bound + 1` is solved as well; the result carries the
/// larger bound and is `Stabilized` when both values agree.
pub fn scl(w: &Word, bound: i64, stabilize: bool) -> Result<SclResult> {
    scl_with_limit(w, bound, stabilize, DEFAULT_SCL_N_LIMIT)
}

pub fn scl_with_limit(w: &Word, bound: i64, stabilize: bool, n_limit: usize) -> Result<SclResult> {
    let last = if stabilize { bound + 1 } else { bound };
    check_word(w, last, n_limit)?;
    let mut results = run(w, bound, last)?;
    let mut res = results.pop().ok_or_else(|| Error::internal("no LP result"))?;
    if let Some(prev) = results.pop() {
        if prev.value == res.value {
            res.status = SclStatus::Stabilized;
        }
    }
    if !res.verify(w) {
        return Err(Error::internal("scl certificate failed verification"));
    }
    Ok(res)
}

/// First LP certificate, over bounds `1..=max_bound`, whose value is below
/// `target`; `None` when even the saturated LP at `max_bound` is not.
pub fn scl_upper_below(w: &Word, max_bound: i64, target: &Rational) -> Result<Option<SclResult>> {
    check_word(w, max_bound, DEFAULT_SCL_N_LIMIT)?;
    let (sx, sy, mut lp) = initial_lp(w)?;
    for b in 1..=max_bound {
        if lp.saturate(&Pricer::new(&sx, b), &Pricer::new(&sy, b), &|v| v < target)? {
            let res = SclResult {
                value: lp.value(),
                status: SclStatus::UpperBound,
                bound_used: b,
                certificate: lp.certificate(),
            };
            if !res.verify(w) {
                return Err(Error::internal("scl certificate failed verification"));
            }
            return Ok(Some(res));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SclBracket {
    pub lower: Rational,
    pub upper: Rational,
}

impl SclBracket {
    pub fn is_certified(&self) -> bool {
        self.lower == self.upper
    }
}

/// `lower_bound(w) ≤ scl(w) ≤` the truncated LP value.
pub fn scl_bracket(w: &Word, bound: i64) -> Result<SclBracket> {
    let upper = scl(w, bound, false)?.value;
    Ok(SclBracket {
        lower: lower_bound(w),
        upper,
    })
}
