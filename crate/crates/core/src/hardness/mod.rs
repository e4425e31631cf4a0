//! Subset-sum problem variants and the reduction chain down to SMALL SCL.

mod gadget;
mod smallscl;
mod table;

pub use gadget::{coss_gadget, essential_gadget, EssentialGadget};
pub use smallscl::{
    decide_small_scl, j_pair_certificate, reduce_ss_to_smallscl, small_scl_instance, small_scl_y,
    DecisionMethod, JPairCertificate, Reduction, RoundRecord, SmallSclDecision,
};
pub use table::{build_table, collapse, table_properties, table_witnesses, Collapsed, ReductionTable, TableProperties};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SUBSET_BRUTE_FORCE_LIMIT: usize = 16;
pub const VARSSP_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "SS")]
    Ss,
    #[serde(rename = "SSP")]
    Ssp,
    #[serde(rename = "VARSSP")]
    VarSsp,
    #[serde(rename = "MIXEDSSP")]
    MixedSsp,
    #[serde(rename = "COSS")]
    Coss,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetInstance {
    pub variant: Variant,
    pub vectors: Vec<Vec<i64>>,
}

impl SubsetInstance {
    pub fn new(variant: Variant, vectors: Vec<Vec<i64>>) -> Result<Self> {
        let inst = SubsetInstance { variant, vectors };
        inst.validate()?;
        Ok(inst)
    }

    /// One-dimensional instance.
    pub fn scalar(variant: Variant, values: &[i64]) -> Result<Self> {
        Self::new(variant, values.iter().map(|&v| vec![v]).collect())
    }

    pub fn dim(&self) -> usize {
        self.vectors.first().map_or(1, Vec::len)
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.dim();
        if k == 0 {
            return Err(Error::invalid("subset vectors must have dimension at least 1"));
        }
        if let Some(v) = self.vectors.iter().find(|v| v.len() != k) {
            return Err(Error::DimensionMismatch {
                context: "subset instance vectors",
                expected: k,
                found: v.len(),
            });
        }
        if matches!(self.variant, Variant::Ssp | Variant::VarSsp | Variant::MixedSsp)
            && !sum_is_zero(&self.vectors)
        {
            return Err(Error::invalid("instance must sum to zero in every coordinate"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetAnswer {
    pub answer: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<i64>>,
}

fn sum_is_zero(vectors: &[Vec<i64>]) -> bool {
    let k = vectors.first().map_or(0, Vec::len);
    (0..k).all(|c| vectors.iter().map(|v| v[c] as i128).sum::<i128>() == 0)
}

fn combination_vanishes(vectors: &[Vec<i64>], lambda: &[i64]) -> bool {
    let k = vectors.first().map_or(0, Vec::len);
    (0..k).all(|c| {
        vectors
            .iter()
            .zip(lambda)
            .map(|(v, &l)| v[c] as i128 * l as i128)
            .sum::<i128>()
            == 0
    })
}

/// Every 0/1 vector `λ ≠ 0` with `Σλv = 0`, by increasing bitmask.
pub fn zero_subsets(vectors: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let n = vectors.len();
    if n > SUBSET_BRUTE_FORCE_LIMIT {
        return Err(Error::LimitExceeded {
            what: "subset brute force size",
            requested: n,
            limit: SUBSET_BRUTE_FORCE_LIMIT,
        });
    }
    Ok((1u32..(1 << n))
        .map(|mask| (0..n).map(|i| i64::from(mask >> i & 1)).collect::<Vec<_>>())
        .filter(|l| combination_vanishes(vectors, l))
        .collect())
}

fn first_zero_subset(vectors: &[Vec<i64>], proper: bool) -> Result<Option<Vec<i64>>> {
    let n = vectors.len() as i64;
    Ok(zero_subsets(vectors)?
        .into_iter()
        .find(|l| !proper || l.iter().sum::<i64>() < n))
}

/// Every `λ ∈ ℕ^n∖{0}` with `Σλ < n` and `Σλv = 0`, visited by increasing
/// weight; stops at the first `true` from `visit`.
pub fn var_subset_search(vectors: &[Vec<i64>], mut visit: impl FnMut(&[i64]) -> bool) -> Result<Option<Vec<i64>>> {
    let n = vectors.len();
    if n > VARSSP_LIMIT {
        return Err(Error::LimitExceeded {
            what: "variable subset search size",
            requested: n,
            limit: VARSSP_LIMIT,
        });
    }
    fn rec(
        rem: i64,
        k: usize,
        cur: &mut Vec<i64>,
        vectors: &[Vec<i64>],
        visit: &mut impl FnMut(&[i64]) -> bool,
    ) -> bool {
        if k + 1 == vectors.len() {
            cur.push(rem);
            let hit = combination_vanishes(vectors, cur) && visit(cur);
            if !hit {
                cur.pop();
            }
            return hit;
        }
        for v in (0..=rem).rev() {
            cur.push(v);
            if rec(rem - v, k + 1, cur, vectors, visit) {
                return true;
            }
            cur.pop();
        }
        false
    }
    for total in 1..n as i64 {
        let mut cur = Vec::with_capacity(n);
        if rec(total, 0, &mut cur, vectors, &mut visit) {
            return Ok(Some(cur));
        }
    }
    Ok(None)
}

/// Exhaustive answer for any variant; `MixedSsp` fails when the promise
/// (SSP and VARSSP agree) does not hold.
pub fn solve_subset(inst: &SubsetInstance) -> Result<SubsetAnswer> {
    inst.validate()?;
    let v = &inst.vectors;
    let found = |w: Option<Vec<i64>>| SubsetAnswer {
        answer: w.is_some(),
        witness: w,
    };
    match inst.variant {
        Variant::Ss => Ok(found(first_zero_subset(v, false)?)),
        Variant::Ssp => Ok(found(first_zero_subset(v, true)?)),
        Variant::VarSsp => Ok(found(var_subset_search(v, |_| true)?)),
        Variant::MixedSsp => {
            let ssp = first_zero_subset(v, true)?;
            let var = var_subset_search(v, |_| true)?;
            if ssp.is_some() != var.is_some() {
                return Err(Error::PromiseViolation(format!(
                    "SSP answer {} differs from VARSSP answer {}",
                    ssp.is_some(),
                    var.is_some()
                )));
            }
            Ok(found(ssp))
        }
        Variant::Coss => {
            // True when no nonempty subset vanishes; the witness is a
            // vanishing subset refuting it.
            let w = first_zero_subset(v, false)?;
            Ok(SubsetAnswer {
                answer: w.is_none(),
                witness: w,
            })
        }
    }
}

/// `a_{m+1} = −Σa_i`, turning SS on `a` into SSP on the result.
pub fn append_balance(a: &[i64]) -> Result<Vec<i64>> {
    let total = a
        .iter()
        .try_fold(0i64, |s, &x| s.checked_add(x))
        .ok_or(Error::Overflow("balance entry"))?;
    let mut out = a.to_vec();
    out.push(total.checked_neg().ok_or(Error::Overflow("balance entry"))?);
    Ok(out)
}

fn scalar_vectors(a: &[i64]) -> Vec<Vec<i64>> {
    a.iter().map(|&v| vec![v]).collect()
}

pub fn ss(a: &[i64]) -> Result<bool> {
    Ok(first_zero_subset(&scalar_vectors(a), false)?.is_some())
}

pub fn ssp(a: &[i64]) -> Result<bool> {
    Ok(first_zero_subset(&scalar_vectors(a), true)?.is_some())
}

pub fn varssp(a: &[i64]) -> Result<bool> {
    Ok(var_subset_search(&scalar_vectors(a), |_| true)?.is_some())
}

/// No nonempty subset of `a` sums to zero.
pub fn coss(a: &[i64]) -> Result<bool> {
    Ok(!ss(a)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_examples() {
        let ss_inst = SubsetInstance::scalar(Variant::Ss, &[1, -1, 3]).unwrap();
        let r = solve_subset(&ss_inst).unwrap();
        assert!(r.answer);
        assert_eq!(r.witness, Some(vec![1, 1, 0]));
        let ssp_inst = SubsetInstance::scalar(Variant::Ssp, &[1, -1]).unwrap();
        assert!(!solve_subset(&ssp_inst).unwrap().answer);
        let var = SubsetInstance::scalar(Variant::VarSsp, &[2, -1, -1]).unwrap();
        assert!(!solve_subset(&var).unwrap().answer);
        assert!(SubsetInstance::scalar(Variant::Ssp, &[1, 2]).is_err());
    }

    #[test]
    fn mixed_promise() {
        // λ = (0, 1, 0, 2) has weight 3 < 4 while no proper subset vanishes.
        let bad = SubsetInstance::scalar(Variant::MixedSsp, &[3, -2, -2, 1]).unwrap();
        assert!(!ssp(&[3, -2, -2, 1]).unwrap());
        assert!(varssp(&[3, -2, -2, 1]).unwrap());
        assert!(matches!(solve_subset(&bad), Err(Error::PromiseViolation(_))));
        let promised = SubsetInstance::scalar(Variant::MixedSsp, &[1, -1, 2, -2]).unwrap();
        assert!(solve_subset(&promised).unwrap().answer);
    }

    #[test]
    fn balance() {
        assert_eq!(append_balance(&[1, 2]).unwrap(), vec![1, 2, -3]);
        assert_eq!(append_balance(&[1, -1]).unwrap(), vec![1, -1, 0]);
        for m in 1..=4usize {
            let count = 7usize.pow(m as u32);
            for mut code in 0..count {
                let a: Vec<i64> = (0..m)
                    .map(|_| {
                        let v = (code % 7) as i64 - 3;
                        code /= 7;
                        v
                    })
                    .collect();
                assert_eq!(ss(&a).unwrap(), ssp(&append_balance(&a).unwrap()).unwrap(), "{a:?}");
            }
        }
    }

    #[test]
    fn coss_examples() {
        assert!(coss(&[1, 2]).unwrap());
        assert!(!coss(&[1, -1, 5]).unwrap());
        let inst = SubsetInstance::scalar(Variant::Coss, &[1, 2]).unwrap();
        assert!(solve_subset(&inst).unwrap().answer);
    }
}
