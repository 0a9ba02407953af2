//! Scenario configuration, disorder ensembles, parameter sweeps,
//! figure-style recipes, and all file I/O. The runner is the only
//! module that spawns parallelism; the physics modules stay pure.

pub mod config;
pub mod output;
pub mod recipes;
pub mod scenario;
pub mod svg;
