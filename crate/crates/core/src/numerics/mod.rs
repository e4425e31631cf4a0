//! Exact rationals, linear programming and polyhedral enumeration.

pub mod linalg;
pub mod lp;
pub mod rational;
pub mod vertices;

pub use lp::{solve_lp, LinearProgram, LpResult, LpStatus};
pub use rational::{q, Rational};
pub use vertices::{cone_extreme_rays, enumerate_vertices};
