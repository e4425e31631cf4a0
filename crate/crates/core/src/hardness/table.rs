use serde::{Deserialize, Serialize};

use super::var_subset_search;
use crate::error::{Error, Result};

/// The `(n+3) × (2n+2)` table turning SSP on `a` into MIXEDSSP over
/// `ℤ^{n+3}`. Columns are ordered `α_1..α_n, β_1..β_n, P, Q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTable {
    pub base: Vec<i64>,
    pub r: i64,
    pub columns: Vec<Vec<i64>>,
}

impl ReductionTable {
    pub fn n(&self) -> usize {
        self.base.len()
    }

    pub fn labels(&self) -> Vec<String> {
        let n = self.n();
        (1..=n)
            .map(|i| format!("alpha{i}"))
            .chain((1..=n).map(|i| format!("beta{i}")))
            .chain(["P".to_string(), "Q".to_string()])
            .collect()
    }

    pub fn rows_sum_to_zero(&self) -> bool {
        let k = self.n() + 3;
        (0..k).all(|row| self.columns.iter().map(|c| c[row]).sum::<i64>() == 0)
    }
}

pub fn build_table(a: &[i64], r: i64) -> Result<ReductionTable> {
    let n = a.len();
    if a.iter().sum::<i64>() != 0 {
        return Err(Error::precondition("table base must sum to zero"));
    }
    if !(0 < r && r < n as i64) {
        return Err(Error::precondition(format!("need 0 < r < {n}, got r = {r}")));
    }
    let k = n + 3;
    let mut columns = Vec::with_capacity(2 * n + 2);
    for (i, &ai) in a.iter().enumerate() {
        let mut c = vec![0; k];
        c[0] = ai;
        c[1] = -1;
        c[2 + i] = -1;
        c[n + 2] = -1;
        columns.push(c);
    }
    for i in 0..n {
        let mut c = vec![0; k];
        c[1] = -1;
        c[2 + i] = -1;
        columns.push(c);
    }
    for last in [r, n as i64 - r] {
        let mut c = vec![1; k];
        c[0] = 0;
        c[1] = n as i64;
        c[n + 2] = last;
        columns.push(c);
    }
    let table = ReductionTable {
        base: a.to_vec(),
        r,
        columns,
    };
    if !table.rows_sum_to_zero() {
        return Err(Error::internal("table row does not sum to zero"));
    }
    Ok(table)
}

/// Properties (i)–(v) of a VARSSP solution `λ` on the table columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableProperties {
    pub p_plus_q_is_one: bool,
    pub alpha_plus_beta_is_one: bool,
    pub alpha_total_is_r_or_complement: bool,
    pub is_zero_one_solution: bool,
    pub alphas_solve_base: bool,
}

impl TableProperties {
    pub fn all(&self) -> bool {
        self.p_plus_q_is_one
            && self.alpha_plus_beta_is_one
            && self.alpha_total_is_r_or_complement
            && self.is_zero_one_solution
            && self.alphas_solve_base
    }
}

pub fn table_properties(table: &ReductionTable, lambda: &[i64]) -> TableProperties {
    let n = table.n();
    let alpha = &lambda[..n];
    let beta = &lambda[n..2 * n];
    let (lp, lq) = (lambda[2 * n], lambda[2 * n + 1]);
    let alpha_total: i64 = alpha.iter().sum();
    let k = n + 3;
    let vanishes = (0..k).all(|row| {
        table
            .columns
            .iter()
            .zip(lambda)
            .map(|(c, &l)| c[row] * l)
            .sum::<i64>()
            == 0
    });
    let total: i64 = lambda.iter().sum();
    TableProperties {
        p_plus_q_is_one: lp + lq == 1,
        alpha_plus_beta_is_one: alpha.iter().zip(beta).all(|(a, b)| a + b == 1),
        alpha_total_is_r_or_complement: alpha_total == table.r || alpha_total == n as i64 - table.r,
        is_zero_one_solution: lambda.iter().all(|&l| l == 0 || l == 1)
            && vanishes
            && 0 < total
            && total < lambda.len() as i64,
        alphas_solve_base: alpha.iter().all(|&l| l == 0 || l == 1)
            && alpha.iter().zip(&table.base).map(|(l, a)| l * a).sum::<i64>() == 0
            && 0 < alpha_total
            && alpha_total < n as i64,
    }
}

/// All VARSSP solutions on the table, each with its property report.
pub fn table_witnesses(table: &ReductionTable) -> Result<Vec<(Vec<i64>, TableProperties)>> {
    let mut out = Vec::new();
    var_subset_search(&table.columns, |l| {
        out.push((l.to_vec(), table_properties(table, l)));
        false
    })?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Collapsed {
    pub multipliers: Vec<i64>,
    pub values: Vec<i64>,
}

/// `y_i = Σ_j N_j v_i^(j)` with `N_1 = 1` and
/// `N_{j+1} = 2·Σ_{l≤j} N_l·S_l + 1`, `S_l = usage_bound·max_i |v_i^(l)|`.
pub fn collapse(vectors: &[Vec<i64>], usage_bound: i64) -> Result<Collapsed> {
    let k = vectors.first().map_or(1, Vec::len);
    if let Some(v) = vectors.iter().find(|v| v.len() != k) {
        return Err(Error::DimensionMismatch {
            context: "collapse vectors",
            expected: k,
            found: v.len(),
        });
    }
    let ov = || Error::Overflow("collapse multipliers");
    let mut multipliers = Vec::with_capacity(k);
    let mut acc: i64 = 0;
    for l in 0..k {
        let n_l = if l == 0 {
            1
        } else {
            acc.checked_mul(2).and_then(|x| x.checked_add(1)).ok_or_else(ov)?
        };
        let max = vectors.iter().map(|v| v[l].unsigned_abs()).max().unwrap_or(0);
        let s_l = i64::try_from(max).ok().and_then(|m| m.checked_mul(usage_bound)).ok_or_else(ov)?;
        acc = n_l.checked_mul(s_l).and_then(|x| x.checked_add(acc)).ok_or_else(ov)?;
        multipliers.push(n_l);
    }
    let values = vectors
        .iter()
        .map(|v| {
            v.iter().zip(&multipliers).try_fold(0i64, |s, (&x, &m)| {
                x.checked_mul(m).and_then(|p| s.checked_add(p)).ok_or_else(ov)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Collapsed { multipliers, values })
}

#[cfg(test)]
mod tests {
    use super::super::{ssp, varssp, zero_subsets};
    use super::*;

    #[test]
    fn two_element_table() {
        let t = build_table(&[1, -1], 1).unwrap();
        assert_eq!(t.columns[0], vec![1, -1, -1, 0, -1]);
        assert_eq!(t.columns[1], vec![-1, -1, 0, -1, -1]);
        assert_eq!(t.columns[2], vec![0, -1, -1, 0, 0]);
        assert_eq!(t.columns[3], vec![0, -1, 0, -1, 0]);
        assert_eq!(t.columns[4], vec![0, 2, 1, 1, 1]);
        assert_eq!(t.columns[5], vec![0, 2, 1, 1, 1]);
        assert!(zero_subsets(&t.columns).unwrap().iter().all(|l| l.iter().sum::<i64>() == 6));
        assert!(build_table(&[1, -1], 2).is_err());
        assert!(build_table(&[1, 1], 1).is_err());
    }

    #[test]
    fn converse_witness() {
        let a = [1, -1, 2, -2];
        let mu = [1, 1, 0, 0];
        let t = build_table(&a, 2).unwrap();
        let mut lambda: Vec<i64> = mu.to_vec();
        lambda.extend(mu.iter().map(|m| 1 - m));
        lambda.extend([1, 0]);
        assert!(table_properties(&t, &lambda).all());
        for (_, props) in table_witnesses(&t).unwrap() {
            assert!(props.all());
        }
    }

    #[test]
    fn collapse_examples() {
        let v = vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]];
        let c = collapse(&v, 4).unwrap();
        assert_eq!(c.multipliers, vec![1, 9]);
        assert_eq!(c.values, vec![1, -1, 9, -9]);
        let scalars: Vec<Vec<i64>> = vec![vec![3], vec![-2]];
        assert_eq!(collapse(&scalars, 2).unwrap().values, vec![3, -2]);
        let t = build_table(&[1, 2, -3], 1).unwrap();
        let c = collapse(&t.columns, t.columns.len() as i64).unwrap();
        assert_eq!(ssp(&c.values).unwrap(), !zero_subsets(&t.columns).unwrap().iter().all(|l| l.iter().all(|&x| x == 1)));
        assert_eq!(varssp(&c.values).unwrap(), ssp(&c.values).unwrap());
    }
}
