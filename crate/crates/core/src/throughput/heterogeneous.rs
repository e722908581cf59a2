use std::collections::BTreeMap;

use log::trace;

use super::paths::{build_tree, Arcs, NO_ARC};
use super::{ThroughputResult, TieBreak, CAPACITY_EPS};
use crate::graph::Graph;

/// Residual filling along shortest paths.
///
/// Each round recomputes shortest paths on arcs with positive residual
/// capacity, routes every still-connected ordered pair along its path, and
/// pushes the largest common increment that keeps every residual
/// nonnegative. At least one arc saturates per round, so the loop ends after
/// at most `2M` rounds, when no pair has a positive-residual path left.
pub fn throughput_dijkstra_heterogeneous(g: &Graph, tie_break: TieBreak) -> ThroughputResult {
    fill(g, tie_break, None)
}

/// Residual filling where pair `(s, t)` stops once it has received
/// `ceiling[s * n + t]`. A round then ends either on a saturated arc or on a
/// pair reaching its ceiling.
pub(crate) fn fill(g: &Graph, tie_break: TieBreak, ceiling: Option<&[f64]>) -> ThroughputResult {
    let n = g.node_count();
    let arcs = Arcs::new(g);
    let mut residual = vec![1.0f64; arcs.len()];
    let mut demand = vec![0.0f64; n * n];
    let mut routed = vec![false; n * n];
    let mut sub = vec![0u64; n];
    let mut load = vec![0u64; arcs.len()];
    let mut active: Vec<(usize, usize)> = Vec::new();
    let sources: Vec<usize> = g.nodes().collect();
    let remaining = |demand: &[f64], p: usize| ceiling.map_or(f64::INFINITY, |c| c[p] - demand[p]);

    for round in 0u64.. {
        load.iter_mut().for_each(|l| *l = 0);
        active.clear();
        // Ascending (source, destination) order.
        for &s in &sources {
            let mut rng = tie_break.rng_for(round, s);
            let tree = build_tree(&arcs, s, |a| residual[a] > CAPACITY_EPS, rng.as_mut(), None);
            if tree.order.len() < 2 {
                continue;
            }
            let wants = |t: usize| t != s && remaining(&demand, s * n + t) > CAPACITY_EPS;
            let mut reached: Vec<usize> = tree.order.iter().copied().filter(|&t| wants(t)).collect();
            if reached.is_empty() {
                continue;
            }
            reached.sort_unstable();
            active.extend(reached.into_iter().map(|t| (s, t)));
            tree.subtree_weights(&arcs, |v| wants(v) as u64, &mut sub);
            for &v in &tree.order {
                let a = tree.pred_arc[v];
                if a != NO_ARC {
                    load[a] += sub[v];
                }
            }
        }
        if active.is_empty() {
            break;
        }

        let (bottleneck, mut eps) = load
            .iter()
            .enumerate()
            .filter(|&(_, &l)| l > 0)
            .map(|(a, &l)| (a, residual[a] / l as f64))
            .fold((NO_ARC, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
        let cap = active
            .iter()
            .map(|&(s, t)| remaining(&demand, s * n + t))
            .fold(f64::INFINITY, f64::min);
        let arc_bound = eps <= cap;
        eps = eps.min(cap);
        trace!("round {round}: {} pairs, increment {eps}", active.len());

        for &(s, t) in &active {
            demand[s * n + t] += eps;
            routed[s * n + t] = true;
        }
        for (a, &l) in load.iter().enumerate() {
            if l > 0 {
                residual[a] -= eps * l as f64;
                if residual[a] <= CAPACITY_EPS {
                    residual[a] = 0.0;
                }
            }
        }
        if arc_bound {
            residual[bottleneck] = 0.0;
        }
    }

    let mut per_pair = BTreeMap::new();
    let mut raw = 0.0;
    for s in 0..n {
        for t in 0..n {
            if routed[s * n + t] {
                let d = demand[s * n + t];
                raw += d;
                per_pair.insert((s, t), d);
            }
        }
    }
    ThroughputResult {
        raw_throughput: raw,
        per_pair_delivered: per_pair,
    }
}
