use std::fmt::Write as _;

use log::debug;

use super::attack::{attack_prefix, AttackStrategy};
use crate::error::{Error, Result};
use crate::fmt::num;
use crate::graph::Graph;
use crate::throughput::ThroughputModel;

#[derive(Debug, Clone, PartialEq)]
pub struct ElasticityCurve {
    /// `(fraction removed, throughput / alpha)`, fraction strictly increasing
    /// from 0.
    pub samples: Vec<(f64, f64)>,
    /// Trapezoidal area under `samples`.
    pub elasticity: f64,
    /// Raw throughput of the intact graph.
    pub alpha: f64,
    /// Nodes removed, in order.
    pub removed: Vec<usize>,
    pub strategy: AttackStrategy,
    pub model: ThroughputModel,
}

impl ElasticityCurve {
    /// Two-column CSV followed by a comment line describing the run.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("fraction_removed,normalized_throughput\n");
        for &(f, t) in &self.samples {
            let _ = writeln!(out, "{},{}", num(f), num(t));
        }
        let s = &self.strategy;
        let seed = s.seed.map_or_else(|| "none".to_string(), |x| x.to_string());
        let _ = writeln!(
            out,
            "# elasticity={} alpha={} attack={} recompute={} batch={} seed={} model={} tie_break={}",
            num(self.elasticity),
            num(self.alpha),
            s.kind,
            s.recompute,
            s.batch,
            seed,
            self.model.kind,
            self.model.tie_break,
        );
        out
    }
}

/// Number of nodes removed for `stop_fraction` of `n`.
pub(crate) fn removal_count(n: usize, stop_fraction: f64) -> usize {
    // Guard against 0.3 * 10 = 3.0000000000000004.
    let k = (stop_fraction * n as f64 - 1e-9).ceil();
    (k.max(0.0) as usize).min(n)
}

/// Area under the normalized throughput curve of `g` while `strategy`
/// removes nodes until `stop_fraction` of them are gone.
///
/// Throughput is sampled before any removal and after every batch. Each
/// pair offers the traffic it received in the intact graph, so a damaged
/// network never scores above 1 (see [`ThroughputModel::offered_traffic`]).
pub fn elasticity(
    g: &Graph,
    strategy: &AttackStrategy,
    model: &ThroughputModel,
    stop_fraction: f64,
) -> Result<ElasticityCurve> {
    strategy.validate()?;
    if !(stop_fraction > 0.0 && stop_fraction <= 1.0) {
        return Err(Error::param(format!(
            "stop fraction {stop_fraction} outside (0, 1]"
        )));
    }
    let n = g.active_count();
    // Every pair keeps asking for what the intact network gave it.
    let (alpha, offered) = model.offered_traffic(g)?;
    if !(alpha > 0.0) {
        return Err(Error::UndefinedElasticity);
    }
    let k = removal_count(n, stop_fraction);
    let removed = attack_prefix(g, strategy, k)?;

    let mut work = g.clone();
    let mut samples = Vec::with_capacity(k / strategy.batch + 2);
    samples.push((0.0, 1.0));
    for batch in removed.chunks(strategy.batch) {
        for &v in batch {
            work.remove_node(v)?;
        }
        let gone = n - work.active_count();
        let raw = if work.edge_count() == 0 {
            0.0
        } else {
            model.raw_throughput_offered(&work, &offered)?
        };
        samples.push((gone as f64 / n as f64, raw / alpha));
    }
    debug!("{} samples for {} removals", samples.len(), removed.len());

    Ok(ElasticityCurve {
        elasticity: trapezoid(&samples),
        samples,
        alpha,
        removed,
        strategy: *strategy,
        model: *model,
    })
}

fn trapezoid(samples: &[(f64, f64)]) -> f64 {
    samples
        .windows(2)
        .map(|w| (w[1].0 - w[0].0) * (w[0].1 + w[1].1) / 2.0)
        .sum()
}
