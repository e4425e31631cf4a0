use serde::{Deserialize, Serialize};

use super::table::{build_table, collapse, Collapsed, ReductionTable};
use super::{append_balance, solve_subset, ss, ssp, zero_subsets, SubsetInstance, Variant};
use crate::bounds::{lower_bound_from, min_vanishing};
use crate::cones::ConeSpec;
use crate::engine::{scl_upper_below, PairedVector, DEFAULT_BOUND, DEFAULT_SCL_N_LIMIT};
use crate::error::{Error, Result};
use crate::graphs::{hamiltonian_cycles, CompleteDigraphFlow, IntFlow};
use crate::numerics::Rational;
use crate::words::{ExponentMatrix, Word};

/// `(1, …, 1, −(n−1))`.
pub fn small_scl_y(n: usize) -> Vec<i64> {
    let mut y = vec![1; n];
    y[n - 1] = -(n as i64 - 1);
    y
}

fn check_small_scl_input(x: &[i64]) -> Result<()> {
    if x.len() < 2 {
        return Err(Error::precondition("SMALL SCL needs at least two entries"));
    }
    if x.contains(&0) {
        return Err(Error::precondition("SMALL SCL entries must be nonzero"));
    }
    if x.iter().map(|&v| v as i128).sum::<i128>() != 0 {
        return Err(Error::precondition("SMALL SCL entries must sum to zero"));
    }
    Ok(())
}

/// The word `a^{x_1} b ⋯ a^{x_{n−1}} b a^{x_n} b^{−(n−1)}`.
pub fn small_scl_instance(x: &[i64]) -> Result<Word> {
    check_small_scl_input(x)?;
    let n = x.len();
    Word::new(
        ExponentMatrix::single(x.to_vec())?,
        ExponentMatrix::new(n, vec![small_scl_y(n)])?,
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JPairCertificate {
    /// Zero-based indices.
    pub j: Vec<usize>,
    pub paired: PairedVector,
    pub pair_count: u64,
    pub kappa_x_lower: Rational,
    pub kappa_y_lower: Rational,
    pub certified_upper: Rational,
}

/// Whether `s` is `{k, k+1}` for some cyclic `k`.
fn is_adjacent_pair(s: &[usize], n: usize) -> bool {
    s.len() == 2 && ((s[0] + 1) % n == s[1] || (s[1] + 1) % n == s[0])
}

fn j_pairs(j: &[usize], jc: &[usize], n: usize) -> Result<Vec<(IntFlow, IntFlow)>> {
    let cj = hamiltonian_cycles(j, n)?;
    let cjc = hamiltonian_cycles(jc, n)?;
    Ok(cjc
        .into_iter()
        .enumerate()
        .map(|(i, d)| (cj[i % cj.len()].clone(), d))
        .collect())
}

/// Upper bound for the SMALL SCL word from `N = (n−|J|−1)!` J-pairs: the
/// paired vector has `κ_x(v_A) ≥ 2` and `κ_y(v_B) ≥ 1/N`.
pub fn j_pair_certificate(x: &[i64], j: &[usize]) -> Result<JPairCertificate> {
    check_small_scl_input(x)?;
    let n = x.len();
    let mut j = j.to_vec();
    j.sort_unstable();
    j.dedup();
    if j.is_empty() || j.len() >= n || j.iter().any(|&i| i >= n) {
        return Err(Error::precondition("J must be a nonempty proper subset of the indices"));
    }
    if 2 * j.len() > n {
        return Err(Error::precondition("|J| must be at most n/2"));
    }
    if j.iter().map(|&i| x[i]).sum::<i64>() != 0 {
        return Err(Error::precondition("entries indexed by J must sum to zero"));
    }
    let jc: Vec<usize> = (0..n).filter(|i| !j.contains(i)).collect();
    if is_adjacent_pair(&j, n) || is_adjacent_pair(&jc, n) {
        return Err(Error::precondition("J or its complement is a cyclically adjacent pair"));
    }
    let pairs = j_pairs(&j, &jc, n)?;
    let big_n = pairs.len() as u64;
    let spec_x = ConeSpec::single(x.to_vec())?;
    let spec_y = ConeSpec::single(small_scl_y(n))?;
    let mut v = IntFlow::zero(n);
    for (c, d) in &pairs {
        if !spec_x.is_disc(c) || !spec_x.is_disc(d) {
            return Err(Error::internal("J-pair member is not a disc vector"));
        }
        v = v.add(c).add(d);
    }
    let inv_n = Rational::new(1, big_n as i64);
    let paired = PairedVector::from_a(v.to_rational().scale(&inv_n));
    let scaled_b = paired
        .v_b
        .scale(&Rational::from(big_n))
        .to_integral()
        .ok_or_else(|| Error::internal("scaled v_B is not integral"))?;
    if !spec_y.is_disc(&scaled_b) {
        return Err(Error::internal("scaled v_B is not a disc vector"));
    }
    let unit = |f: &CompleteDigraphFlow| (0..n).all(|i| f.outflow(i).is_one());
    if !unit(&paired.v_a) || !unit(&paired.v_b) {
        return Err(Error::internal("J-pair vector without unit outflow"));
    }
    let kappa_x_lower = Rational::from(2);
    let kappa_y_lower = inv_n;
    let certified_upper =
        (Rational::from(n) - &kappa_x_lower - &kappa_y_lower) / Rational::from(2);
    Ok(JPairCertificate {
        j,
        paired,
        pair_count: big_n,
        kappa_x_lower,
        kappa_y_lower,
        certified_upper,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum DecisionMethod {
    /// A zero entry or a cyclically adjacent pair summing to zero.
    PreCheck { indices: Vec<usize> },
    /// `p = q = n` gives scl ≥ n/2 − 1.
    LowerBound { p: i64, q: i64, lower: Rational },
    JPair { certificate: Box<JPairCertificate> },
    Lp { value: Rational, bound: i64 },
    BruteForce { note: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmallSclDecision {
    pub answer: bool,
    pub threshold: Rational,
    #[serde(flatten)]
    pub method: DecisionMethod,
}

/// Decide `scl < n/2 − 1` for the SMALL SCL word of `x` through
/// certificates, falling back to the scl LP and then to brute force.
pub fn decide_small_scl(x: &[i64]) -> Result<SmallSclDecision> {
    let n = x.len();
    if n < 2 {
        return Err(Error::precondition("SMALL SCL needs at least two entries"));
    }
    if x.iter().map(|&v| v as i128).sum::<i128>() != 0 {
        return Err(Error::precondition("SMALL SCL entries must sum to zero"));
    }
    let threshold = Rational::new(n as i64, 2) - Rational::one();
    let decided = |answer, method| SmallSclDecision {
        answer,
        threshold: threshold.clone(),
        method,
    };
    if let Some(i) = x.iter().position(|&v| v == 0) {
        return Ok(decided(true, DecisionMethod::PreCheck { indices: vec![i] }));
    }
    if n >= 3 {
        if let Some(i) = (0..n).find(|&i| x[i] + x[(i + 1) % n] == 0) {
            return Ok(decided(
                true,
                DecisionMethod::PreCheck {
                    indices: vec![i, (i + 1) % n],
                },
            ));
        }
    }
    let (p, _) = min_vanishing(&ExponentMatrix::single(x.to_vec())?);
    let (q, _) = min_vanishing(&ExponentMatrix::single(small_scl_y(n))?);
    let lower = lower_bound_from(n, p, q);
    if lower >= threshold {
        return Ok(decided(false, DecisionMethod::LowerBound { p, q, lower }));
    }
    for lambda in zero_subsets(&x.iter().map(|&v| vec![v]).collect::<Vec<_>>())? {
        let mut j: Vec<usize> = (0..n).filter(|&i| lambda[i] == 1).collect();
        if j.len() == n {
            continue;
        }
        if 2 * j.len() > n {
            j = (0..n).filter(|&i| lambda[i] == 0).collect();
        }
        match j_pair_certificate(x, &j) {
            Ok(c) if c.certified_upper < threshold => {
                return Ok(decided(
                    true,
                    DecisionMethod::JPair {
                        certificate: Box::new(c),
                    },
                ))
            }
            Ok(_) | Err(Error::Precondition(_)) | Err(Error::LimitExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    if n <= DEFAULT_SCL_N_LIMIT {
        let w = small_scl_instance(x)?;
        if let Some(r) = scl_upper_below(&w, DEFAULT_BOUND, &threshold)? {
            return Ok(decided(
                true,
                DecisionMethod::Lp {
                    value: r.value,
                    bound: r.bound_used,
                },
            ));
        }
    }
    let answer = ssp(x)?;
    Ok(decided(
        answer,
        DecisionMethod::BruteForce {
            note: "no certificate settled the threshold; answered by exhaustive SSP".into(),
        },
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub r: i64,
    pub table: ReductionTable,
    pub collapsed: Collapsed,
    /// MIXEDSSP answer by exhaustive search on the collapsed list.
    pub brute_force: Option<bool>,
    pub decision: SmallSclDecision,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    pub input: Vec<i64>,
    pub balanced: Vec<i64>,
    pub answer: bool,
    pub rounds: Vec<RoundRecord>,
}

impl Reduction {
    /// Every round's decision agrees with exhaustive MIXEDSSP.
    pub fn rounds_consistent(&self) -> bool {
        self.rounds.iter().all(|r| r.brute_force == Some(r.decision.answer))
    }
}

/// SS on `a` → SSP on the balanced list → one table per `r` → collapse →
/// SMALL SCL decision per round; the answer is the disjunction.
pub fn reduce_ss_to_smallscl(a: &[i64]) -> Result<Reduction> {
    let balanced = append_balance(a)?;
    let n = balanced.len();
    let mut rounds = Vec::new();
    for r in 1..n as i64 {
        let table = build_table(&balanced, r)?;
        let usage = table.columns.len() as i64;
        let collapsed = collapse(&table.columns, usage)?;
        let inst = SubsetInstance::scalar(Variant::MixedSsp, &collapsed.values)?;
        let (brute_force, note) = match solve_subset(&inst) {
            Ok(ans) => (Some(ans.answer), None),
            Err(Error::PromiseViolation(m)) => (None, Some(format!("promise violated: {m}"))),
            Err(e) => return Err(e),
        };
        let mut decision = decide_small_scl(&collapsed.values)?;
        if brute_force.is_none() {
            decision = SmallSclDecision {
                answer: ssp(&collapsed.values)?,
                threshold: decision.threshold,
                method: DecisionMethod::BruteForce {
                    note: "outside the promise; answered by exhaustive SSP".into(),
                },
            };
        }
        rounds.push(RoundRecord {
            r,
            table,
            collapsed,
            brute_force,
            decision,
            note,
        });
    }
    let answer = if rounds.is_empty() {
        ss(a)?
    } else {
        rounds.iter().any(|r| r.decision.answer)
    };
    Ok(Reduction {
        input: a.to_vec(),
        balanced,
        answer,
        rounds,
    })
}
