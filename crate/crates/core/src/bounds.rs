//! Minimal vanishing combinations, the resulting lower bound, the universal
//! words `w_n`, the closed form `C(m)`, and generic-word sampling.

use num::bigint::BigInt;
use num::integer::gcd;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::engine::{scl, SclResult, DEFAULT_BOUND};
use crate::error::{Error, Result};
use crate::numerics::Rational;
use crate::words::{parse_word, validate_mn, ExponentMatrix, Word};

pub const GENERIC_SAMPLER_RETRIES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingCertificate {
    pub lambda: Vec<i64>,
    pub weight: i64,
}

impl VanishingCertificate {
    pub fn annihilates(&self, x: &ExponentMatrix) -> bool {
        self.lambda.len() == x.n()
            && self.lambda.iter().all(|&l| l >= 0)
            && self.weight == self.lambda.iter().sum::<i64>()
            && self.weight > 0
            && x
                .rows()
                .iter()
                .all(|row| row.iter().zip(&self.lambda).map(|(a, l)| a * l).sum::<i64>() == 0)
    }
}

/// Visit compositions of `total` into `parts` nonnegative parts in
/// lexicographic order; stops at the first `true`.
fn find_composition(total: i64, parts: usize, mut hit: impl FnMut(&[i64]) -> bool) -> Option<Vec<i64>> {
    fn rec(rem: i64, k: usize, cur: &mut Vec<i64>, parts: usize, hit: &mut impl FnMut(&[i64]) -> bool) -> bool {
        if k + 1 == parts {
            cur.push(rem);
            if hit(cur) {
                return true;
            }
            cur.pop();
            return false;
        }
        for v in (0..=rem).rev() {
            cur.push(v);
            if rec(rem - v, k + 1, cur, parts, hit) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let mut cur = Vec::with_capacity(parts);
    rec(total, 0, &mut cur, parts, &mut hit).then_some(cur)
}

/// Least `p = Σλ_j` over nonzero `λ ∈ ℕ^n` with `Σ_j λ_j x^(i)_j = 0` for
/// every row, by increasing weight.
pub fn min_vanishing(x: &ExponentMatrix) -> (i64, VanishingCertificate) {
    let n = x.n();
    for p in 1..=n as i64 {
        let found = find_composition(p, n, |lambda| {
            x.rows()
                .iter()
                .all(|row| row.iter().zip(lambda).map(|(a, l)| a * l).sum::<i64>() == 0)
        });
        if let Some(lambda) = found {
            return (p, VanishingCertificate { lambda, weight: p });
        }
    }
    unreachable!("the all-ones vector annihilates every row of a valid exponent matrix")
}

/// `max(0, (n/2)(1 − 1/p − 1/q))`.
pub fn lower_bound(w: &Word) -> Rational {
    let p = min_vanishing(w.x()).0;
    let q = min_vanishing(w.y()).0;
    lower_bound_from(w.n(), p, q)
}

pub fn lower_bound_from(n: usize, p: i64, q: i64) -> Rational {
    let v = Rational::new(n as i64, 2)
        * (Rational::one() - Rational::new(1, p) - Rational::new(1, q));
    v.max(Rational::zero())
}

/// Rows `e_1 − e_i` for `i = 2..n`.
pub fn universal_matrix(n: usize) -> Result<ExponentMatrix> {
    if n < 2 {
        return Err(Error::precondition("universal word needs n ≥ 2"));
    }
    let rows = (1..n)
        .map(|i| {
            let mut r = vec![0; n];
            r[0] = 1;
            r[i] = -1;
            r
        })
        .collect();
    ExponentMatrix::new(n, rows)
}

pub fn universal_word(n: usize) -> Result<Word> {
    let z = universal_matrix(n)?;
    Word::new(z.clone(), z)
}

fn factorial(k: u64) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

/// Closed-form supremum of scl over words of reduced length `m`.
#[allow(non_snake_case)]
pub fn upper_bound_C(m: usize) -> Result<Rational> {
    if !m.is_multiple_of(2) || m <= 4 {
        return Err(Error::precondition("upper bound needs an even length above 4"));
    }
    let n = (m / 2) as u64;
    let half = Rational::new(n as i64, 2);
    if n % 2 == 1 {
        return Ok(half - Rational::one());
    }
    let num = factorial(n - 1) - 1;
    let den = BigInt::from(n) * factorial(n - 2) - 2;
    Ok(half - Rational::from_bigints(num, den))
}

/// True when no `λ` with `0 < Σλ < n` annihilates every row.
pub fn generic_check(x: &ExponentMatrix) -> bool {
    min_vanishing(x).0 >= x.n() as i64
}

fn sample_matrix(n: usize, rng: &mut ChaCha8Rng) -> Option<ExponentMatrix> {
    let range = n as i64 + 3;
    let rows = rng.gen_range(1..=2);
    let mut out = Vec::with_capacity(rows);
    for _ in 0..rows {
        let mut row: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(-range..=range)).collect();
        let last = -row.iter().sum::<i64>();
        if last.abs() > range {
            return None;
        }
        row.push(last);
        out.push(row);
    }
    if !validate_mn(n, &out) {
        return None;
    }
    let x = ExponentMatrix::new(n, out).ok()?;
    generic_check(&x).then_some(x)
}

/// Deterministic rejection sampler for words generic on both sides.
pub fn sample_generic_word(n: usize, seed: u64) -> Result<Word> {
    if n < 3 {
        return Err(Error::precondition("generic sampling needs n ≥ 3"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut side = || {
        (0..GENERIC_SAMPLER_RETRIES)
            .find_map(|_| sample_matrix(n, &mut rng))
            .ok_or(Error::LimitExceeded {
                what: "generic sampler retries",
                requested: GENERIC_SAMPLER_RETRIES + 1,
                limit: GENERIC_SAMPLER_RETRIES,
            })
    };
    let x = side()?;
    let y = side()?;
    Word::new(x, y)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub word: String,
    pub predicted: Rational,
    pub computed: SclResult,
}

impl ConjectureReport {
    pub fn matches(&self) -> bool {
        self.predicted == self.computed.value
    }
}

pub fn conjecture_word(n: i64, p: i64, q: i64, r: i64) -> Result<Word> {
    if p <= 0 || q <= 0 || r <= 0 || p + q + r != n {
        return Err(Error::precondition("need positive p, q, r with p + q + r = n"));
    }
    parse_word(&format!("a^-{n} b^-1 a^{p} b a^{q} b^-1 a^{r} b"))
}

/// `1 − gcd(n, q)/(2n)` next to the engine value at the default bound.
pub fn conjecture_check(n: i64, p: i64, q: i64, r: i64) -> Result<ConjectureReport> {
    let w = conjecture_word(n, p, q, r)?;
    let predicted = Rational::one() - Rational::new(gcd(n, q), 2 * n);
    let computed = scl(&w, DEFAULT_BOUND, true)?;
    Ok(ConjectureReport {
        word: w.to_string(),
        predicted,
        computed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::q;

    fn single(row: Vec<i64>) -> ExponentMatrix {
        ExponentMatrix::single(row).unwrap()
    }

    #[test]
    fn min_vanishing_examples() {
        let (p, w) = min_vanishing(&single(vec![1, -1]));
        assert_eq!((p, w.lambda.clone()), (2, vec![1, 1]));
        assert_eq!(min_vanishing(&single(vec![3, -1, -1, -1])).0, 4);
        let (p, w) = min_vanishing(&single(vec![1, 2, -3]));
        assert_eq!((p, w.lambda), (3, vec![1, 1, 1]));
    }

    #[test]
    fn lower_bound_examples() {
        let comm: Word = "a b a^-1 b^-1".parse().unwrap();
        assert_eq!(lower_bound(&comm), q(0, 1));
        assert_eq!(lower_bound(&universal_word(5).unwrap()), q(3, 2));
        assert_eq!(lower_bound_from(6, 3, 3), q(1, 1));
    }

    #[test]
    fn universal_words() {
        assert_eq!(universal_word(2).unwrap().to_string(), "a b a^-1 b^-1");
        let w3 = universal_word(3).unwrap();
        assert_eq!(w3.x().rows(), &[vec![1, -1, 0], vec![1, 0, -1]]);
        assert!(universal_word(1).is_err());
    }

    #[test]
    fn closed_form() {
        assert_eq!(upper_bound_C(6).unwrap(), q(1, 2));
        assert_eq!(upper_bound_C(8).unwrap(), q(7, 6));
        assert_eq!(upper_bound_C(12).unwrap(), q(3, 1) - q(119, 142));
        assert!(upper_bound_C(7).is_err());
        assert!(upper_bound_C(4).is_err());
    }

    #[test]
    fn genericity() {
        let x = ExponentMatrix::new(3, vec![vec![1, -1, 0], vec![1, 0, -1]]).unwrap();
        assert!(generic_check(&x));
        let y = ExponentMatrix::new(
            6,
            vec![vec![1, -1, 0, 0, 0, 0], vec![0, 0, 1, 1, -1, -1]],
        )
        .unwrap();
        assert!(!generic_check(&y));
        let w = sample_generic_word(6, 1).unwrap();
        assert!(min_vanishing(w.x()).0 >= 6 && min_vanishing(w.y()).0 >= 6);
        assert_eq!(w, sample_generic_word(6, 1).unwrap());
        assert_eq!(lower_bound(&sample_generic_word(3, 7).unwrap()), q(1, 2));
    }

    #[test]
    fn conjecture_predictions() {
        let w = conjecture_word(3, 1, 1, 1).unwrap();
        assert_eq!(w.n(), 4);
        assert!(conjecture_word(3, 1, 1, 2).is_err());
        assert_eq!(Rational::one() - Rational::new(gcd(4, 2), 8), q(3, 4));
    }
}
