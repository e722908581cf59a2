//! Throughput engines.
//!
//! Every undirected edge is two directed arcs of capacity 1. A model routes
//! traffic between every ordered pair of connected nodes and reports the
//! total delivered flow:
//!
//! * [`ModelKind::DijkstraHomogeneous`]: one shortest path per pair, one
//!   common rate `1 / max arc load` for all pairs.
//! * [`ModelKind::DijkstraHeterogeneous`]: repeated shortest-path filling of
//!   the residual capacity; pairs end up with unequal totals.
//! * [`ModelKind::LpOptimization`]: repeated maximum concurrent flow solved
//!   as a linear program on the residual capacity.
//!
//! [`ThroughputModel::offered_traffic`] records what an intact network
//! carries; [`ThroughputModel::raw_throughput_offered`] evaluates a damaged
//! network that may deliver at most that much per pair.

mod concurrent;
mod heterogeneous;
mod homogeneous;
pub(crate) mod paths;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

pub use concurrent::{
    max_concurrent_flow, throughput_lp, Commodity, ConcurrentFlow, MAX_LP_NODES,
};
pub use heterogeneous::throughput_dijkstra_heterogeneous;
use concurrent::lp_fill;
use heterogeneous::fill;
pub use homogeneous::{homogeneous_raw_throughput, throughput_dijkstra_homogeneous};
pub use paths::{shortest_path_tree, Arcs, ShortestPathTree, NO_ARC};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Residual capacities below this are treated as exhausted.
pub const CAPACITY_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    DijkstraHomogeneous,
    DijkstraHeterogeneous,
    LpOptimization,
}

impl ModelKind {
    pub const ALL: [ModelKind; 3] = [
        ModelKind::LpOptimization,
        ModelKind::DijkstraHeterogeneous,
        ModelKind::DijkstraHomogeneous,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::DijkstraHomogeneous => "dijkstra_homogeneous",
            ModelKind::DijkstraHeterogeneous => "dijkstra_heterogeneous",
            ModelKind::LpOptimization => "lp_optimization",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dijkstra_homogeneous" | "homogeneous" | "hom" => Ok(ModelKind::DijkstraHomogeneous),
            "dijkstra_heterogeneous" | "heterogeneous" | "het" => {
                Ok(ModelKind::DijkstraHeterogeneous)
            }
            "lp_optimization" | "lp" | "optimization" => Ok(ModelKind::LpOptimization),
            other => Err(Error::param(format!("unknown throughput model `{other}`"))),
        }
    }
}

/// How shortest-path ties are resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TieBreak {
    /// Smallest predecessor id wins.
    #[default]
    Sequential,
    /// Uniformly random predecessor, reproducible from the seed.
    Random(u64),
}

impl fmt::Display for TieBreak {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TieBreak::Sequential => f.write_str("sequential"),
            TieBreak::Random(seed) => write!(f, "random({seed})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ThroughputModel {
    pub kind: ModelKind,
    pub tie_break: TieBreak,
}

impl ThroughputModel {
    pub fn new(kind: ModelKind) -> Self {
        ThroughputModel {
            kind,
            tie_break: TieBreak::Sequential,
        }
    }

    pub fn with_tie_break(mut self, tie_break: TieBreak) -> Self {
        self.tie_break = tie_break;
        self
    }

    pub fn evaluate(&self, g: &Graph) -> Result<ThroughputResult> {
        match self.kind {
            ModelKind::DijkstraHomogeneous => Ok(throughput_dijkstra_homogeneous(g, self.tie_break)),
            ModelKind::DijkstraHeterogeneous => {
                Ok(throughput_dijkstra_heterogeneous(g, self.tie_break))
            }
            ModelKind::LpOptimization => throughput_lp(g),
        }
    }

    /// Total delivered flow, skipping the per-pair map where the model
    /// allows it.
    pub fn raw_throughput(&self, g: &Graph) -> Result<f64> {
        match self.kind {
            ModelKind::DijkstraHomogeneous => Ok(homogeneous_raw_throughput(g, self.tie_break).0),
            _ => self.evaluate(g).map(|r| r.raw_throughput),
        }
    }

    /// Raw throughput of `g` and the traffic it carries per pair.
    pub fn offered_traffic(&self, g: &Graph) -> Result<(f64, Offered)> {
        if self.kind == ModelKind::DijkstraHomogeneous {
            let (raw, delta) = homogeneous_raw_throughput(g, self.tie_break);
            return Ok((raw, Offered::Uniform(delta)));
        }
        let r = self.evaluate(g)?;
        let n = g.node_count();
        let mut ceiling = vec![0.0; n * n];
        for (&(s, t), &d) in &r.per_pair_delivered {
            ceiling[s * n + t] = d;
        }
        Ok((r.raw_throughput, Offered::PerPair(ceiling)))
    }

    /// Raw throughput of `g` when no pair asks for more than `offered`.
    ///
    /// Per-pair ceilings are indexed by the node ids of `g`, which node
    /// removal preserves.
    pub fn raw_throughput_offered(&self, g: &Graph, offered: &Offered) -> Result<f64> {
        let n = g.node_count();
        let ceiling = match offered {
            Offered::Unlimited => return self.raw_throughput(g),
            Offered::Uniform(rate) if self.kind == ModelKind::DijkstraHomogeneous => {
                let (raw, delta) = homogeneous_raw_throughput(g, self.tie_break);
                return Ok(if delta > *rate { raw * rate / delta } else { raw });
            }
            Offered::Uniform(rate) => vec![*rate; n * n],
            Offered::PerPair(c) => {
                if c.len() != n * n {
                    return Err(Error::param(format!(
                        "offered traffic covers {} pairs, graph has {}",
                        c.len(),
                        n * n
                    )));
                }
                c.clone()
            }
        };
        match self.kind {
            ModelKind::DijkstraHomogeneous => {
                let r = throughput_dijkstra_homogeneous(g, self.tie_break);
                Ok(r.per_pair_delivered.iter().map(|(&(s, t), &d)| d.min(ceiling[s * n + t])).sum())
            }
            ModelKind::DijkstraHeterogeneous => Ok(fill(g, self.tie_break, Some(&ceiling)).raw_throughput),
            ModelKind::LpOptimization => lp_fill(g, Some(&ceiling)).map(|r| r.raw_throughput),
        }
    }
}

/// Traffic each ordered pair asks for.
#[derive(Debug, Clone, PartialEq)]
pub enum Offered {
    Unlimited,
    /// The same rate for every pair.
    Uniform(f64),
    /// Dense `n x n` ceilings indexed `s * n + t`.
    PerPair(Vec<f64>),
}

impl fmt::Display for ThroughputModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tie_break {
            TieBreak::Sequential => write!(f, "{}", self.kind),
            tb => write!(f, "{}/{}", self.kind, tb),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThroughputResult {
    pub raw_throughput: f64,
    /// Delivered flow per ordered `(source, destination)` pair.
    pub per_pair_delivered: BTreeMap<(usize, usize), f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelComparison {
    pub lp: f64,
    pub heterogeneous: f64,
    pub homogeneous: f64,
}

/// Raw throughput of `g` under all three models.
pub fn compare_models(g: &Graph, tie_break: TieBreak) -> Result<ModelComparison> {
    let lp = throughput_lp(g)?.raw_throughput;
    Ok(ModelComparison {
        lp,
        heterogeneous: throughput_dijkstra_heterogeneous(g, tie_break).raw_throughput,
        homogeneous: homogeneous_raw_throughput(g, tie_break).0,
    })
}
