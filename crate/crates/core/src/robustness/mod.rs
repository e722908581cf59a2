//! Robustness of a topology to node removal.

mod attack;
mod bounds;
mod elasticity;
mod tradeoff;

pub use attack::{attack_sequence, AttackKind, AttackStrategy};
pub use bounds::{
    mesh_elasticity_continuous, mesh_elasticity_discrete, mesh_normalized_throughput, Removal,
    MAX_BOUND_NODES,
};
pub use elasticity::{elasticity, ElasticityCurve};
pub use tradeoff::{density_penalty, tradeoff_re, TradeoffParams};

