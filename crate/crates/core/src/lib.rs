//! Robustness of network topologies measured as *elasticity*: the area under
//! the normalized-throughput curve while nodes are removed by an attack.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: undirected simple graphs, traversal, betweenness, metrics
//! * [`generators`]: seeded synthetic topologies
//! * [`lp`]: a small dense simplex solver
//! * [`throughput`]: the three routing/throughput engines
//! * [`robustness`]: attacks, elasticity curves, mesh bounds, tradeoff score
//! * [`experiment`]: config-driven batch runs and CSV reports

pub mod error;
pub mod experiment;
pub mod fmt;
pub mod generators;
pub mod graph;
pub mod lp;
pub mod robustness;
pub mod throughput;

pub use error::{Error, ErrorClass, Result};
pub use graph::Graph;
