//! Brute-force vertex enumeration and extreme rays of flow-type cones.

use std::collections::BTreeSet;

use itertools::Itertools;
use num::integer::Integer;
use num::{BigInt, One, Signed, Zero};

use super::linalg::solve_square;
use super::rational::Rational;
use crate::error::{Error, Result};

pub const DEFAULT_VERTEX_DIM_LIMIT: usize = 12;

/// Coordinate limit for [`cone_extreme_rays`] (zero sets are `u128` masks).
pub const RAY_DIM_LIMIT: usize = 128;

/// All vertices of `{x : row·x ≤ rhs}` in sorted order, found by solving every
/// square subsystem of tight constraints.
pub fn enumerate_vertices(
    ineqs: &[(Vec<Rational>, Rational)],
    dim: usize,
) -> Result<Vec<Vec<Rational>>> {
    enumerate_vertices_with_limit(ineqs, dim, DEFAULT_VERTEX_DIM_LIMIT)
}

pub fn enumerate_vertices_with_limit(
    ineqs: &[(Vec<Rational>, Rational)],
    dim: usize,
    limit: usize,
) -> Result<Vec<Vec<Rational>>> {
    if dim > limit {
        return Err(Error::LimitExceeded {
            what: "vertex enumeration dimension",
            requested: dim,
            limit,
        });
    }
    for (row, _) in ineqs {
        if row.len() != dim {
            return Err(Error::DimensionMismatch {
                context: "vertex enumeration",
                expected: dim,
                found: row.len(),
            });
        }
    }
    let feasible = |x: &[Rational]| {
        ineqs.iter().all(|(row, rhs)| {
            let lhs: Rational = row.iter().zip(x).map(|(a, b)| a * b).sum();
            &lhs <= rhs
        })
    };
    let mut found = BTreeSet::new();
    if dim == 0 {
        if ineqs.iter().all(|(_, rhs)| !rhs.is_negative()) {
            found.insert(Vec::new());
        }
        return Ok(found.into_iter().collect());
    }
    for subset in (0..ineqs.len()).combinations(dim) {
        let a: Vec<Vec<Rational>> = subset.iter().map(|&i| ineqs[i].0.clone()).collect();
        let b: Vec<Rational> = subset.iter().map(|&i| ineqs[i].1.clone()).collect();
        if let Some(x) = solve_square(&a, &b) {
            if feasible(&x) {
                found.insert(x);
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Scale a nonzero rational vector to the primitive integer vector on its ray.
pub fn primitive_integral(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

fn zero_mask(v: &[BigInt]) -> u128 {
    v.iter()
        .enumerate()
        .filter(|(_, x)| x.is_zero())
        .fold(0u128, |m, (j, _)| m | (1 << j))
}

/// Extreme rays of the pointed cone `{x ≥ 0 : e·x = 0 for every e}` as
/// primitive integer vectors in sorted order (double description, adding
/// one hyperplane at a time to the nonnegative orthant).
pub fn cone_extreme_rays(equalities: &[Vec<i64>], dim: usize) -> Result<Vec<Vec<BigInt>>> {
    if dim > RAY_DIM_LIMIT {
        return Err(Error::LimitExceeded {
            what: "extreme ray dimension",
            requested: dim,
            limit: RAY_DIM_LIMIT,
        });
    }
    let mut rays: Vec<Vec<BigInt>> = (0..dim)
        .map(|j| {
            let mut e = vec![BigInt::zero(); dim];
            e[j] = BigInt::one();
            e
        })
        .collect();
    for eq in equalities {
        if eq.len() != dim {
            return Err(Error::DimensionMismatch {
                context: "cone equality",
                expected: dim,
                found: eq.len(),
            });
        }
        let vals: Vec<BigInt> = rays
            .iter()
            .map(|r| r.iter().zip(eq).map(|(a, &b)| a * b).sum())
            .collect();
        let masks: Vec<u128> = rays.iter().map(|r| zero_mask(r)).collect();
        let mut next: BTreeSet<Vec<BigInt>> = BTreeSet::new();
        for (r, v) in rays.iter().zip(&vals) {
            if v.is_zero() {
                next.insert(r.clone());
            }
        }
        for (i, vi) in vals.iter().enumerate() {
            if !vi.is_positive() {
                continue;
            }
            for (k, vk) in vals.iter().enumerate() {
                if !vk.is_negative() {
                    continue;
                }
                let common = masks[i] & masks[k];
                let adjacent = (0..rays.len())
                    .all(|l| l == i || l == k || masks[l] & common != common);
                if !adjacent {
                    continue;
                }
                let combo: Vec<BigInt> = rays[i]
                    .iter()
                    .zip(&rays[k])
                    .map(|(a, b)| a * (-vk) + b * vi)
                    .collect();
                let g = combo.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
                next.insert(combo.into_iter().map(|x| x / &g).collect());
            }
        }
        rays = next.into_iter().collect();
    }
    Ok(rays)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::q;

    fn r(v: i64) -> Rational {
        Rational::from_integer(v)
    }

    fn rv(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| r(x)).collect()
    }

    #[test]
    fn square_and_triangle() {
        let square = vec![
            (rv(&[-1, 0]), r(0)),
            (rv(&[0, -1]), r(0)),
            (rv(&[1, 0]), r(1)),
            (rv(&[0, 1]), r(1)),
        ];
        let v = enumerate_vertices(&square, 2).unwrap();
        assert_eq!(v, vec![rv(&[0, 0]), rv(&[0, 1]), rv(&[1, 0]), rv(&[1, 1])]);
        let tri = vec![
            (rv(&[-1, 0]), r(0)),
            (rv(&[0, -1]), r(0)),
            (rv(&[1, 1]), r(1)),
        ];
        assert_eq!(enumerate_vertices(&tri, 2).unwrap().len(), 3);
    }

    #[test]
    fn refuses_large_dimension() {
        let err = enumerate_vertices(&[], 13).unwrap_err();
        assert!(matches!(err, Error::LimitExceeded { .. }));
    }

    #[test]
    fn primitive_scaling() {
        let v = primitive_integral(&[q(1, 2), q(3, 4), r(0)]);
        assert_eq!(v, vec![BigInt::from(2), BigInt::from(3), BigInt::from(0)]);
    }

    #[test]
    fn circulation_rays_are_cycles() {
        // Flows on the complete digraph with two vertices: edges 00, 01, 10, 11.
        let conservation = vec![vec![0, 1, -1, 0], vec![0, -1, 1, 0]];
        let rays = cone_extreme_rays(&conservation, 4).unwrap();
        let expect: Vec<Vec<BigInt>> = [[0, 0, 0, 1], [0, 1, 1, 0], [1, 0, 0, 0]]
            .iter()
            .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        assert_eq!(rays, expect);
    }
}
