//! Frozen values, each recomputed here by an oracle that shares no code
//! path with the library routine under test.

use std::collections::BTreeSet;

use itertools::Itertools;

use scl_core::bounds::{lower_bound, min_vanishing, sample_generic_word, universal_word, upper_bound_C};
use scl_core::cones::{enumerate_disc_vectors, ConeSpec};
use scl_core::engine::{klein_value, scl, scl_values};
use scl_core::graphs::{hamiltonian_cycles, CompleteDigraphFlow, IntFlow, MDGraph};
use scl_core::hardness::{j_pair_certificate, small_scl_instance};
use scl_core::numerics::{q, solve_lp, LinearProgram, LpStatus, Rational};
use scl_core::scorecard::SPAN_PAIR;
use scl_core::synth::{lemma_numbers, step1_flow, step2_weights};
use scl_core::words::{parse_word, render_word, ExponentMatrix, Word};

/// Every nonnegative integral flow on `G_n` with outflow at most `bound`
/// at each vertex: all row choices with small row sums, then conservation.
fn brute_flows(n: usize, bound: i64) -> Vec<IntFlow> {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|_| 0..=bound)
        .multi_cartesian_product()
        .filter(|r| r.iter().sum::<i64>() <= bound)
        .collect();
    (0..n)
        .map(|_| rows.iter())
        .multi_cartesian_product()
        .map(|rs| IntFlow::from_entries(n, rs.into_iter().flatten().copied().collect()).unwrap())
        .filter(|f| !f.is_zero() && f.is_conserving())
        .collect()
}

fn support_connected(f: &IntFlow) -> bool {
    let n = f.n();
    let touched: Vec<usize> = (0..n).filter(|&i| f.outflow(i) > 0).collect();
    let mut seen = vec![false; n];
    let mut stack = vec![touched[0]];
    seen[touched[0]] = true;
    while let Some(u) = stack.pop() {
        for v in 0..n {
            if !seen[v] && (*f.get(u, v) > 0 || *f.get(v, u) > 0) {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    touched.iter().all(|&v| seen[v])
}

fn brute_discs(rows: &[Vec<i64>], bound: i64) -> BTreeSet<IntFlow> {
    let n = rows[0].len();
    brute_flows(n, bound)
        .into_iter()
        .filter(|f| {
            rows.iter()
                .all(|r| (0..n).map(|i| r[i] * f.outflow(i)).sum::<i64>() == 0)
        })
        .filter(support_connected)
        .collect()
}

/// scl LP with the full disc-vector pools written out, solved in one shot.
fn scl_oracle(w: &Word, bound: i64) -> Rational {
    let n = w.n();
    let pool = |z: &ExponentMatrix| brute_discs(z.rows(), bound).into_iter().collect::<Vec<_>>();
    let (da, db) = (pool(w.x()), pool(w.y()));
    let vars = n * n + da.len() + db.len();
    let mut objective = vec![Rational::zero(); vars];
    for o in objective.iter_mut().skip(n * n) {
        *o = Rational::one();
    }
    let a = |i: usize, j: usize| i * n + j;
    // v_B(k, l) = v_A(l, k+1).
    let b = |k: usize, l: usize| a(l, (k + 1) % n);
    let mut lp = LinearProgram::new(objective);
    let zero = || vec![Rational::zero(); vars];
    for side in [&a as &dyn Fn(usize, usize) -> usize, &b] {
        for i in 0..n {
            let mut cons = zero();
            let mut unit = zero();
            for j in 0..n {
                cons[side(i, j)] += Rational::one();
                cons[side(j, i)] -= Rational::one();
                unit[side(i, j)] += Rational::one();
            }
            lp = lp.eq(cons, Rational::zero()).eq(unit, Rational::one());
        }
    }
    for (offset, pool, side) in [
        (n * n, &da, &a as &dyn Fn(usize, usize) -> usize),
        (n * n + da.len(), &db, &b),
    ] {
        for i in 0..n {
            for j in 0..n {
                let mut row = zero();
                row[side(i, j)] = -Rational::one();
                for (c, d) in pool.iter().enumerate() {
                    row[offset + c] = Rational::from(*d.get(i, j));
                }
                lp = lp.le(row, Rational::zero());
            }
        }
    }
    let res = solve_lp(&lp).unwrap();
    assert_eq!(res.status, LpStatus::Optimal);
    (Rational::from(n) - res.value.unwrap()) / Rational::from(2)
}

/// (word, LP value at bound 1, at bound 2).
const FROZEN_SCL: &[(&str, &str, &str)] = &[
    ("a b a^-1 b^-1", "1/2", "1/2"),
    ("a1 b1 b2 a1^-1 b1^-1 b2^-1", "1/2", "1/2"),
    ("a b a b a^-1 b^-1 a^-1 b^-1", "1/2", "1/2"),
    ("a b^2 a^-1 b^-2", "1/2", "1/2"),
    ("a1^2 a2^-3 b1 a1^-2 a2 b1 a1^3 a2 b1 a1^-3 a2 b1^-3", "7/6", "1"),
    ("a1^2 a2^-3 a3^5 b1 a1^-2 a2 a3^-3 b1 a1^3 a2 a3^2 b1 a1^-3 a2 a3^-4 b1^-3", "7/6", "1"),
    ("a1 a2 b1 b2 a1^-1 b1^-1 a2^-1 b2^-1", "1/2", "1/2"),
    ("a1 a2 a3 b1 b2 b3 a1^-1 b1^-1 a2^-1 b2^-1 a3^-1 b3^-1", "7/6", "7/6"),
    ("a b a^-1 b a^3 b a^-3 b^-3", "1", "1"),
    ("a1^-4 b1^-2 b2^4 a1^3 b1^-1 b2^-6 a1 b1^3 b2^2", "1/2", "1/2"),
];

fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

#[test]
fn scl_values_match_full_pool_oracle() {
    for &(text, b1, b2) in FROZEN_SCL {
        let w = parse_word(text).unwrap();
        assert_eq!(render_word(&w), text);
        let engine: Vec<Rational> = scl_values(&w, 2).unwrap().into_iter().map(|x| x.value).collect();
        assert_eq!(engine, vec![r(b1), r(b2)], "{text}");
        assert_eq!(scl_oracle(&w, 1), r(b1), "{text}");
        assert_eq!(scl_oracle(&w, 2), r(b2), "{text}");
    }
}

#[test]
fn frozen_words_come_from_the_constructions() {
    let rendered = |w: Word| render_word(&w);
    assert_eq!(rendered(universal_word(3).unwrap()), FROZEN_SCL[6].0);
    assert_eq!(rendered(universal_word(4).unwrap()), FROZEN_SCL[7].0);
    assert_eq!(rendered(small_scl_instance(&[1, -1, 3, -3]).unwrap()), FROZEN_SCL[8].0);
    let generic = sample_generic_word(3, 7).unwrap();
    assert_eq!(render_word(&generic), FROZEN_SCL[9].0);
    assert_eq!(lower_bound(&generic), q(1, 2));
    assert_eq!(SPAN_PAIR.map(|s| render_word(&parse_word(s).unwrap())), [FROZEN_SCL[4].0, FROZEN_SCL[5].0]);
}

#[test]
fn stabilized_values() {
    let w = parse_word("a b a^-1 b^-1").unwrap();
    assert_eq!(scl(&w, 3, true).unwrap().value, q(1, 2));
    let w4 = universal_word(4).unwrap();
    assert_eq!(scl(&w4, 1, true).unwrap().value, q(7, 6));
}

#[test]
fn disc_vectors_match_brute_force() {
    for (rows, bound, expected) in [
        (vec![vec![1, -1]], 1, 1),
        (vec![vec![1, -1]], 2, 3),
        (vec![vec![1, -1, 0], vec![1, 0, -1]], 1, 2),
        (vec![vec![2, -1, -1]], 2, 18),
        (vec![vec![1, 1, -1, -1]], 2, 343),
    ] {
        let spec = ConeSpec::from_rows(rows[0].len(), rows.clone()).unwrap();
        let got: BTreeSet<IntFlow> = enumerate_disc_vectors(&spec, bound)
            .unwrap()
            .into_iter()
            .map(|d| d.flow)
            .collect();
        let oracle = brute_discs(&rows, bound);
        assert_eq!(got, oracle, "{rows:?} B={bound}");
        assert_eq!(got.len(), expected, "{rows:?} B={bound}");
    }
    let two_cycle = IntFlow::cycle(2, &[0, 1]);
    let b1 = brute_discs(&[vec![1, -1]], 1);
    assert_eq!(b1.into_iter().collect::<Vec<_>>(), vec![two_cycle.clone()]);
    let b2 = brute_discs(&[vec![1, -1]], 2);
    let loops = IntFlow::from_matrix(&[vec![1, 0], vec![0, 1]]).unwrap();
    assert!(b2.contains(&two_cycle.scale(2)));
    assert!(b2.contains(&two_cycle.add(&loops)));
}

#[test]
fn hamiltonian_cycles_match_permutations() {
    for n in 2..=5usize {
        let got: BTreeSet<IntFlow> = hamiltonian_cycles(&(0..n).collect::<Vec<_>>(), n)
            .unwrap()
            .into_iter()
            .collect();
        let oracle: BTreeSet<IntFlow> = (1..n)
            .permutations(n - 1)
            .map(|p| {
                let order: Vec<usize> = std::iter::once(0).chain(p).collect();
                let mut f = IntFlow::zero(n);
                for k in 0..n {
                    f.set(order[k], order[(k + 1) % n], 1);
                }
                f
            })
            .collect();
        assert_eq!(got, oracle, "n={n}");
    }
    assert_eq!(hamiltonian_cycles(&[0, 1, 2, 3], 4).unwrap().len(), 6);
    let sum = hamiltonian_cycles(&[0, 1, 2], 3)
        .unwrap()
        .iter()
        .fold(IntFlow::zero(3), |acc, c| acc.add(c));
    assert!((0..3).all(|i| sum.outflow(i) == 2));
}

fn brute_min_vanishing(rows: &[Vec<i64>]) -> i64 {
    let n = rows[0].len() as i64;
    (0..rows[0].len())
        .map(|_| 0..=n)
        .multi_cartesian_product()
        .filter(|l| l.iter().any(|&v| v > 0))
        .filter(|l| rows.iter().all(|r| r.iter().zip(l).map(|(a, b)| a * b).sum::<i64>() == 0))
        .map(|l| l.iter().sum())
        .min()
        .unwrap()
}

#[test]
fn min_vanishing_matches_brute_force() {
    for (rows, p) in [
        (vec![vec![3, -1, -1, -1]], 4),
        (vec![vec![1, 2, -3]], 3),
        (vec![vec![1, -1, 0], vec![1, 0, -1]], 3),
        (vec![vec![2, -2, 1, -1]], 2),
        (vec![vec![5, -3, 2, -4], vec![1, 1, -1, -1]], 4),
    ] {
        let x = ExponentMatrix::new(rows[0].len(), rows.clone()).unwrap();
        let (got, cert) = min_vanishing(&x);
        assert!(cert.annihilates(&x));
        assert_eq!(got, brute_min_vanishing(&rows), "{rows:?}");
        assert_eq!(got, p, "{rows:?}");
    }
    let x = ExponentMatrix::new(3, vec![vec![1, 2, -3]]).unwrap();
    assert_eq!(min_vanishing(&x).1.lambda, vec![1, 1, 1]);
}

#[test]
fn closed_form_upper_bound() {
    // (n/2) − ((n−1)! − 1)/(n·(n−2)! − 2) at n = 6.
    let (n, f5, f4) = (6i64, 120i64, 24i64);
    let oracle = q(n, 2) - q(f5 - 1, n * f4 - 2);
    assert_eq!(oracle, q(3, 1) - q(119, 142));
    assert_eq!(upper_bound_C(12).unwrap(), oracle);
    assert_eq!(upper_bound_C(10).unwrap(), q(3, 2));
}

#[test]
fn klein_values() {
    let spec = ConeSpec::single(vec![1, -1]).unwrap();
    let v = IntFlow::cycle(2, &[0, 1]).to_rational();
    assert_eq!(klein_value(&spec, &v, 1).unwrap(), Rational::one());
    let spec = ConeSpec::from_rows(3, vec![vec![1, -1, 0], vec![1, 0, -1]]).unwrap();
    let v: CompleteDigraphFlow = IntFlow::cycle(3, &[0, 1, 2]).add(&IntFlow::cycle(3, &[0, 2, 1])).to_rational();
    assert_eq!(klein_value(&spec, &v, 1).unwrap(), q(2, 1));
}

#[test]
fn j_pair_upper_bound() {
    let x = [1, 1, -1, -1, 2, -2];
    let cert = j_pair_certificate(&x, &[0, 2]).unwrap();
    assert_eq!(cert.pair_count, 6);
    assert_eq!(cert.certified_upper, q(23, 12));
    let w = small_scl_instance(&x).unwrap();
    assert!(scl(&w, 1, false).unwrap().value <= cert.certified_upper);
}

/// Only `λ = f` solves `Σλw = Σfw` over `λ ∈ ℕ^k`, by direct search.
fn brute_unique(f: &[i64], w: &[i64]) -> bool {
    let target: i64 = f.iter().zip(w).map(|(a, b)| a * b).sum();
    w.iter()
        .map(|&x| 0..=target / x)
        .multi_cartesian_product()
        .filter(|l| l.iter().zip(w).map(|(a, b)| a * b).sum::<i64>() == target)
        .all(|l| l == f)
}

#[test]
fn synthesis_weights() {
    assert_eq!(lemma_numbers(&[1, 2]).unwrap(), vec![65, 68]);
    assert!(brute_unique(&[1, 2], &[65, 68]));
    let g = MDGraph::new(2, vec![(0, 1), (0, 1), (1, 0)]).unwrap();
    let (f, e_star) = step1_flow(&g).unwrap();
    assert_eq!(f, vec![1, 1, 2]);
    assert_eq!(g.edges[e_star], (0, 1));
    let w = step2_weights(&g, &f, e_star).unwrap();
    assert_eq!(w, vec![-201, 65, 68]);
    assert_eq!(f.iter().zip(&w).map(|(a, b)| a * b).sum::<i64>(), 0);
}
