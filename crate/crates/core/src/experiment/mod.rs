//! Config-driven batch runs over (topology, attack) grids and their CSV
//! reports.

mod config;
mod run;

pub use config::{ExperimentConfig, InjectedScores, TopologySource, TopologySpec};
pub use run::{pearson, run_experiment, topology_seed, ExperimentReport, MetricsRow, RankingRow};
