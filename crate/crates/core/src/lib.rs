pub mod bounds;
pub mod cli;
pub mod config;
pub mod cones;
pub mod engine;
pub mod error;
pub mod graphs;
pub mod hardness;
pub mod numerics;
pub mod scorecard;
pub mod synth;
pub mod words;

pub use error::{Error, Result};
