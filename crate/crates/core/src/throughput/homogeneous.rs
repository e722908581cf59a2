use std::collections::BTreeMap;

use rayon::prelude::*;

use super::paths::{build_tree, Arcs, NO_ARC};
use super::{ThroughputResult, TieBreak};
use crate::graph::traversal::component_labels;
use crate::graph::Graph;

const SOURCES_PER_TASK: usize = 64;

/// Per-arc path counts when every connected ordered pair routes one unit
/// along its shortest-path-tree path.
fn arc_loads(g: &Graph, arcs: &Arcs, sizes: &[usize], label: &[usize], tie_break: TieBreak) -> Vec<u64> {
    let sources: Vec<usize> = g.nodes().collect();
    let n = g.node_count();
    // Integer loads: the reduction is exact in any order.
    sources
        .par_chunks(SOURCES_PER_TASK)
        .map(|chunk| {
            let mut load = vec![0u64; arcs.len()];
            let mut sub = vec![0u64; n];
            for &s in chunk {
                let comp = sizes[label[s]];
                if comp < 2 {
                    continue;
                }
                let mut rng = tie_break.rng_for(0, s);
                let stop = rng.is_none().then_some(comp);
                let tree = build_tree(arcs, s, |_| true, rng.as_mut(), stop);
                tree.subtree_sizes(arcs, &mut sub);
                for &v in &tree.order {
                    let a = tree.pred_arc[v];
                    if a != NO_ARC {
                        load[a] += sub[v];
                    }
                }
            }
            load
        })
        .reduce(
            || vec![0u64; arcs.len()],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

/// Raw throughput and per-pair rate `delta` of the homogeneous model.
pub fn homogeneous_raw_throughput(g: &Graph, tie_break: TieBreak) -> (f64, f64) {
    let (label, sizes) = component_labels(g);
    let pairs: u64 = sizes.iter().map(|&s| (s as u64) * (s as u64).saturating_sub(1)).sum();
    if pairs == 0 {
        return (0.0, 1.0);
    }
    let arcs = Arcs::new(g);
    let load = arc_loads(g, &arcs, &sizes, &label, tie_break);
    let max_load = load.iter().copied().max().unwrap_or(0);
    let delta = if max_load == 0 { 1.0 } else { 1.0 / max_load as f64 };
    (delta * pairs as f64, delta)
}

/// Single shortest path per ordered connected pair; all pairs share the rate
/// `1 / (largest number of paths on one arc)`.
pub fn throughput_dijkstra_homogeneous(g: &Graph, tie_break: TieBreak) -> ThroughputResult {
    let (raw, delta) = homogeneous_raw_throughput(g, tie_break);
    let mut per_pair = BTreeMap::new();
    if raw > 0.0 {
        let (label, _) = component_labels(g);
        for s in g.nodes() {
            for t in g.nodes() {
                if s != t && label[s] == label[t] {
                    per_pair.insert((s, t), delta);
                }
            }
        }
    }
    ThroughputResult {
        raw_throughput: raw,
        per_pair_delivered: per_pair,
    }
}
