//! Iterated maximum concurrent flow.
//!
//! One round solves, on the current residual capacities,
//!
//! ```text
//! maximize   delta
//! subject to inflow(j, s) - outflow(j, s) = delta   for every source s and
//!                                                    every node j != s it reaches
//!            sum_s flow(a, s) <= residual(a)         for every arc a
//!            flow >= 0
//! ```
//!
//! where flows are indexed per source (one commodity per source carrying
//! `delta` to each reachable node). Among the optimal flows the round keeps
//! one of minimum total utilization, found by a second LP with `delta`
//! fixed, so that later rounds see as much residual capacity as possible.
//! Rounds repeat until the residual is exhausted or `delta` vanishes.

use std::collections::BTreeMap;

use log::{debug, warn};

use super::paths::{build_tree, Arcs};
use super::{ThroughputResult, CAPACITY_EPS};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lp::{LinearProgram, Relation};

/// Largest number of present nodes accepted by [`throughput_lp`].
pub const MAX_LP_NODES: usize = 40;
/// Largest dense tableau (rows x columns) a single round may build.
const MAX_TABLEAU_CELLS: usize = 16_000_000;
/// Rounds end once `delta` or the total residual drops below this.
const ROUND_EPS: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq)]
pub struct Commodity {
    pub source: usize,
    /// Nodes receiving `delta` from `source`, ascending.
    pub destinations: Vec<usize>,
    /// Positive flow on arc `(u, v)`.
    pub flows: Vec<((usize, usize), f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConcurrentFlow {
    pub delta: f64,
    pub commodities: Vec<Commodity>,
}

impl ConcurrentFlow {
    /// Total flow on each arc `(u, v)` that carries any.
    pub fn utilization(&self) -> BTreeMap<(usize, usize), f64> {
        let mut util = BTreeMap::new();
        for c in &self.commodities {
            for &(arc, f) in &c.flows {
                *util.entry(arc).or_insert(0.0) += f;
            }
        }
        util
    }
}

/// One round on the intact graph: every arc has capacity 1.
pub fn max_concurrent_flow(g: &Graph) -> Result<ConcurrentFlow> {
    check_size(g)?;
    let arcs = Arcs::new(g);
    let residual = vec![1.0; arcs.len()];
    let round = solve_round(g, &arcs, &residual, |_, _| f64::INFINITY)?;
    Ok(match round {
        None => ConcurrentFlow {
            delta: 0.0,
            commodities: Vec::new(),
        },
        Some(r) => r.into_public(&arcs),
    })
}

/// Raw throughput of the iterated concurrent-flow model.
pub fn throughput_lp(g: &Graph) -> Result<ThroughputResult> {
    lp_fill(g, None)
}

/// Iterated concurrent flow where pair `(s, t)` stops once it has received
/// `ceiling[s * n + t]`.
pub(crate) fn lp_fill(g: &Graph, ceiling: Option<&[f64]>) -> Result<ThroughputResult> {
    check_size(g)?;
    let n = g.node_count();
    let arcs = Arcs::new(g);
    let mut residual = vec![1.0f64; arcs.len()];
    let mut demand = vec![0.0f64; n * n];
    let mut routed = vec![false; n * n];
    // Every round saturates an arc or retires a pair.
    let max_rounds = arcs.len() + n * n + 2;

    let mut converged = false;
    for round in 0..=max_rounds {
        let total: f64 = residual.iter().sum();
        if total < ROUND_EPS {
            converged = true;
            break;
        }
        let remaining = |s: usize, t: usize| ceiling.map_or(f64::INFINITY, |c| c[s * n + t] - demand[s * n + t]);
        let Some(r) = solve_round(g, &arcs, &residual, remaining)? else {
            converged = true;
            break;
        };
        if r.delta < ROUND_EPS {
            converged = true;
            break;
        }
        debug!("lp round {round}: delta = {}", r.delta);
        for c in &r.commodities {
            for &t in &c.destinations {
                demand[c.source * n + t] += r.delta;
                routed[c.source * n + t] = true;
            }
        }
        for (a, u) in r.utilization().into_iter().enumerate() {
            residual[a] = (residual[a] - u).max(0.0);
            if residual[a] <= CAPACITY_EPS {
                residual[a] = 0.0;
            }
        }
    }
    if !converged {
        return Err(Error::Lp(format!(
            "residual not exhausted after {max_rounds} rounds"
        )));
    }

    let mut per_pair = BTreeMap::new();
    let mut raw = 0.0;
    for s in 0..n {
        for t in 0..n {
            if routed[s * n + t] {
                raw += demand[s * n + t];
                per_pair.insert((s, t), demand[s * n + t]);
            }
        }
    }
    Ok(ThroughputResult {
        raw_throughput: raw,
        per_pair_delivered: per_pair,
    })
}

fn check_size(g: &Graph) -> Result<()> {
    let n = g.active_count();
    if n > MAX_LP_NODES {
        return Err(Error::LpTooLarge(format!(
            "{n} nodes exceeds the limit of {MAX_LP_NODES}"
        )));
    }
    Ok(())
}

struct RoundCommodity {
    source: usize,
    destinations: Vec<usize>,
    /// `(arc, flow)` for arcs carrying positive flow.
    flows: Vec<(usize, f64)>,
}

struct Round {
    delta: f64,
    commodities: Vec<RoundCommodity>,
    num_arcs: usize,
}

impl Round {
    fn utilization(&self) -> Vec<f64> {
        let mut util = vec![0.0; self.num_arcs];
        for c in &self.commodities {
            for &(a, f) in &c.flows {
                util[a] += f;
            }
        }
        util
    }

    fn into_public(self, arcs: &Arcs) -> ConcurrentFlow {
        ConcurrentFlow {
            delta: self.delta,
            commodities: self
                .commodities
                .into_iter()
                .map(|c| Commodity {
                    source: c.source,
                    destinations: c.destinations,
                    flows: c
                        .flows
                        .into_iter()
                        .map(|(a, f)| (arcs.endpoints(a), f))
                        .collect(),
                })
                .collect(),
        }
    }
}

/// Variable layout of one round: index 0 is `delta`, then one flow
/// variable per (commodity, usable arc reachable from its source).
struct Layout {
    sources: Vec<usize>,
    destinations: Vec<Vec<usize>>,
    /// Reached nodes that only relay the commodity.
    transit: Vec<Vec<usize>>,
    /// Upper bound on `delta` from the pairs' remaining demand.
    delta_cap: f64,
    /// `(commodity, arc)` for each flow variable, offset by one.
    vars: Vec<(usize, usize)>,
    /// Per commodity, arc -> variable index.
    index: Vec<BTreeMap<usize, usize>>,
    capacity_arcs: Vec<usize>,
}

fn layout(g: &Graph, arcs: &Arcs, residual: &[f64], remaining: impl Fn(usize, usize) -> f64) -> Layout {
    let usable = |a: usize| residual[a] > CAPACITY_EPS;
    let mut sources = Vec::new();
    let mut destinations = Vec::new();
    let mut transit = Vec::new();
    let mut delta_cap = f64::INFINITY;
    let mut vars = Vec::new();
    let mut index = Vec::new();
    let mut on_capacity = vec![false; arcs.len()];
    for s in g.nodes() {
        let tree = build_tree(arcs, s, usable, None, None);
        if tree.order.len() < 2 {
            continue;
        }
        let mut reach = tree.order.clone();
        reach.sort_unstable();
        let (dests, relays): (Vec<usize>, Vec<usize>) = reach
            .iter()
            .copied()
            .filter(|&v| v != s)
            .partition(|&v| remaining(s, v) > CAPACITY_EPS);
        if dests.is_empty() {
            continue;
        }
        for &t in &dests {
            delta_cap = delta_cap.min(remaining(s, t));
        }
        let k = sources.len();
        let mut map = BTreeMap::new();
        for &u in &reach {
            for a in arcs.out_arcs(u) {
                if usable(a) {
                    map.insert(a, vars.len() + 1);
                    vars.push((k, a));
                    on_capacity[a] = true;
                }
            }
        }
        sources.push(s);
        destinations.push(dests);
        transit.push(relays);
        index.push(map);
    }
    let capacity_arcs = (0..arcs.len()).filter(|&a| on_capacity[a]).collect();
    Layout {
        sources,
        destinations,
        transit,
        delta_cap,
        vars,
        index,
        capacity_arcs,
    }
}

fn build_program(arcs: &Arcs, residual: &[f64], lay: &Layout, fixed_delta: Option<f64>) -> LinearProgram {
    let mut lp = LinearProgram::new(lay.vars.len() + 1);
    match fixed_delta {
        None => {
            lp.set_objective(0, 1.0);
            if lay.delta_cap.is_finite() {
                lp.add_constraint(vec![(0, 1.0)], Relation::Le, lay.delta_cap);
            }
        }
        Some(d) => {
            for v in 1..=lay.vars.len() {
                lp.set_objective(v, -1.0);
            }
            lp.add_constraint(vec![(0, 1.0)], Relation::Eq, d);
        }
    }
    for (k, dests) in lay.destinations.iter().enumerate() {
        let map = &lay.index[k];
        let nodes = dests.iter().map(|&j| (j, -1.0)).chain(lay.transit[k].iter().map(|&j| (j, 0.0)));
        for (j, wanted) in nodes {
            let mut row = if wanted != 0.0 { vec![(0, wanted)] } else { Vec::new() };
            for a in arcs.out_arcs(j) {
                if let Some(&v) = map.get(&a) {
                    row.push((v, -1.0));
                }
                let rev = arcs
                    .find(arcs.head(a), j)
                    .expect("every arc has a reverse");
                if let Some(&v) = map.get(&rev) {
                    row.push((v, 1.0));
                }
            }
            lp.add_constraint(row, Relation::Eq, 0.0);
        }
    }
    let mut by_arc: Vec<Vec<(usize, f64)>> = vec![Vec::new(); arcs.len()];
    for (i, &(_, a)) in lay.vars.iter().enumerate() {
        by_arc[a].push((i + 1, 1.0));
    }
    for &a in &lay.capacity_arcs {
        lp.add_constraint(std::mem::take(&mut by_arc[a]), Relation::Le, residual[a]);
    }
    lp
}

fn solve_round(
    g: &Graph,
    arcs: &Arcs,
    residual: &[f64],
    remaining: impl Fn(usize, usize) -> f64,
) -> Result<Option<Round>> {
    let lay = layout(g, arcs, residual, remaining);
    if lay.sources.is_empty() {
        return Ok(None);
    }
    let rows: usize = lay.destinations.iter().chain(&lay.transit).map(Vec::len).sum::<usize>()
        + lay.capacity_arcs.len()
        + 2;
    let cols = lay.vars.len() + 1 + 2 * rows;
    if rows.saturating_mul(cols) > MAX_TABLEAU_CELLS {
        return Err(Error::LpTooLarge(format!(
            "{rows} constraints x {cols} columns exceeds the dense tableau limit"
        )));
    }

    let primary = build_program(arcs, residual, &lay, None)
        .solve()
        .map_err(|e| Error::Lp(format!("max concurrent flow: {e}")))?;
    let delta = primary.objective.max(0.0);
    let x = if delta < ROUND_EPS {
        primary.x
    } else {
        match build_program(arcs, residual, &lay, Some(delta)).solve() {
            Ok(s) => s.x,
            Err(e) => {
                warn!("minimum-utilization pass failed ({e}); keeping the first optimal flow");
                primary.x
            }
        }
    };

    let mut commodities: Vec<RoundCommodity> = lay
        .sources
        .iter()
        .zip(lay.destinations)
        .map(|(&source, destinations)| RoundCommodity {
            source,
            destinations,
            flows: Vec::new(),
        })
        .collect();
    for (i, &(k, a)) in lay.vars.iter().enumerate() {
        let f = x[i + 1];
        if f > CAPACITY_EPS {
            commodities[k].flows.push((a, f));
        }
    }
    Ok(Some(Round {
        delta,
        commodities,
        num_arcs: arcs.len(),
    }))
}
