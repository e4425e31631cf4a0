//! Pricing oracle for the column-generation scl LP: find disc vectors `d`
//! with outflow bounded by `B` minimizing `y·d` for nonnegative edge duals `y`.

use crate::cones::{outflow_patterns, ConeSpec};
use crate::graphs::IntFlow;
use crate::numerics::Rational;

const SLACK: f64 = 1e-9;

pub(crate) struct Pricer {
    n: usize,
    patterns: Vec<Vec<i64>>,
}

struct Search<'a> {
    n: usize,
    y: &'a [f64],
    row_min: Vec<f64>,
    keep: usize,
    threshold: f64,
    found: Vec<(f64, Vec<i64>)>,
    cells: Vec<i64>,
    row_rem: Vec<i64>,
    col_rem: Vec<i64>,
    active: Vec<usize>,
}

impl Search<'_> {
    fn lower_rest(&self, from_row: usize) -> f64 {
        self.active[from_row..]
            .iter()
            .map(|&i| self.row_rem[i] as f64 * self.row_min[i])
            .sum()
    }

    fn dfs(&mut self, r: usize, c: usize, partial: f64) {
        let k = self.active.len();
        if r == k {
            if connected(self.n, &self.active, &self.cells) {
                self.record(partial);
            }
            return;
        }
        let (i, j) = (self.active[r], self.active[c]);
        let last_col = c + 1 == k;
        let last_row = r + 1 == k;
        let cap = self.row_rem[i].min(self.col_rem[j]);
        let (lo, hi) = if last_row {
            (self.col_rem[j], self.col_rem[j])
        } else if last_col {
            (self.row_rem[i], self.row_rem[i])
        } else {
            (0, cap)
        };
        if lo > cap {
            return;
        }
        let (nr, nc) = if last_col { (r + 1, 0) } else { (r, c + 1) };
        let yij = self.y[i * self.n + j];
        for v in lo..=hi {
            let p = partial + v as f64 * yij;
            // Remaining mass of row i beyond this cell plus later rows.
            let rest_i = (self.row_rem[i] - v) as f64 * self.row_min[i];
            let rest = if last_col { 0.0 } else { rest_i } + self.lower_rest(r + 1);
            if p + rest > self.threshold {
                break;
            }
            self.cells[i * self.n + j] = v;
            self.row_rem[i] -= v;
            self.col_rem[j] -= v;
            if !(last_col && self.row_rem[i] != 0) {
                self.dfs(nr, nc, p);
            }
            self.row_rem[i] += v;
            self.col_rem[j] += v;
        }
        self.cells[i * self.n + j] = 0;
    }

    fn record(&mut self, cost: f64) {
        self.found.push((cost, self.cells.clone()));
        if self.found.len() >= self.keep {
            self.found.sort_by(|a, b| a.0.total_cmp(&b.0));
            self.found.truncate(self.keep);
            let kth = self.found[self.keep - 1].0;
            // Tighten only once the kept columns are surely improving.
            if kth < 1.0 - SLACK {
                self.threshold = self.threshold.min(kth + SLACK);
            }
        }
    }
}

/// Weak connectivity of the support on the touched vertices; for
/// circulations this equals strong connectivity.
fn connected(n: usize, active: &[usize], cells: &[i64]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &i in active {
        for &j in active {
            if cells[i * n + j] > 0 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let root = find(&mut parent, active[0]);
    active.iter().all(|&v| find(&mut parent, v) == root)
}

impl Pricer {
    pub(crate) fn new(spec: &ConeSpec, bound: i64) -> Self {
        Pricer {
            n: spec.n(),
            patterns: outflow_patterns(spec, bound),
        }
    }

    /// Up to `keep` disc vectors with `y·d < 1` exactly, cheapest first.
    pub(crate) fn improving(&self, y: &[Rational], keep: usize) -> Vec<IntFlow> {
        let n = self.n;
        let yf: Vec<f64> = y.iter().map(Rational::to_f64).collect();
        let row_min: Vec<f64> = (0..n)
            .map(|i| yf[i * n..(i + 1) * n].iter().copied().fold(f64::INFINITY, f64::min))
            .collect();
        let mut search = Search {
            n,
            y: &yf,
            row_min,
            keep: keep.max(1),
            threshold: 1.0 + SLACK,
            found: Vec::new(),
            cells: vec![0; n * n],
            row_rem: vec![0; n],
            col_rem: vec![0; n],
            active: Vec::new(),
        };
        for o in &self.patterns {
            search.active = (0..n).filter(|&i| o[i] > 0).collect();
            search.row_rem.clone_from(o);
            search.col_rem.clone_from(o);
            search.cells.iter_mut().for_each(|c| *c = 0);
            if search.lower_rest(0) > search.threshold {
                continue;
            }
            search.dfs(0, 0, 0.0);
        }
        let mut found = search.found;
        found.sort_by(|a, b| a.0.total_cmp(&b.0));
        let one = Rational::one();
        found
            .into_iter()
            .filter_map(|(_, cells)| {
                let exact: Rational = cells
                    .iter()
                    .zip(y)
                    .filter(|(c, _)| **c != 0)
                    .map(|(&c, yv)| Rational::from(c) * yv)
                    .sum();
                (exact < one).then(|| IntFlow::from_entries(n, cells).expect("n×n table"))
            })
            .take(keep)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::enumerate_disc_vectors;

    #[test]
    fn pricing_matches_enumeration() {
        let spec = ConeSpec::from_rows(3, vec![vec![1, -1, 0], vec![1, 0, -1]]).unwrap();
        let y: Vec<Rational> = [3, 1, 7, 2, 5, 1, 1, 4, 2]
            .iter()
            .map(|&v| Rational::new(v, 20))
            .collect();
        let pricer = Pricer::new(&spec, 2);
        let got = pricer.improving(&y, 1000);
        let mut expect: Vec<IntFlow> = enumerate_disc_vectors(&spec, 2)
            .unwrap()
            .into_iter()
            .map(|d| d.flow)
            .filter(|d| {
                let c: Rational = d.entries().iter().zip(&y).map(|(&a, b)| Rational::from(a) * b).sum();
                c < Rational::one()
            })
            .collect();
        let mut got_sorted = got.clone();
        got_sorted.sort();
        expect.sort();
        assert_eq!(got_sorted, expect);
        let best = pricer.improving(&y, 1);
        assert_eq!(best.len(), 1);
        assert_eq!(best[0], got[0]);
    }
}
