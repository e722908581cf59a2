//! Directed arc indexing and single-predecessor shortest-path trees.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::TieBreak;
use crate::error::{Error, Result};
use crate::graph::{Graph, UNREACHABLE};

/// Sentinel for "no predecessor arc".
pub const NO_ARC: usize = usize::MAX;

/// Both directions of every undirected edge, laid out so that the arcs
/// leaving `u` are `offsets[u]..offsets[u + 1]` in ascending head order.
#[derive(Debug, Clone)]
pub struct Arcs {
    offsets: Vec<usize>,
    heads: Vec<usize>,
    tails: Vec<usize>,
}

impl Arcs {
    pub fn new(g: &Graph) -> Self {
        let n = g.node_count();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut heads = Vec::with_capacity(2 * g.edge_count());
        let mut tails = Vec::with_capacity(2 * g.edge_count());
        offsets.push(0);
        for u in 0..n {
            for &v in g.neighbors(u) {
                heads.push(v);
                tails.push(u);
            }
            offsets.push(heads.len());
        }
        Arcs {
            offsets,
            heads,
            tails,
        }
    }

    pub fn len(&self) -> usize {
        self.heads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heads.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn out_arcs(&self, u: usize) -> std::ops::Range<usize> {
        self.offsets[u]..self.offsets[u + 1]
    }

    pub fn head(&self, a: usize) -> usize {
        self.heads[a]
    }

    pub fn tail(&self, a: usize) -> usize {
        self.tails[a]
    }

    pub fn endpoints(&self, a: usize) -> (usize, usize) {
        (self.tails[a], self.heads[a])
    }

    pub fn find(&self, u: usize, v: usize) -> Option<usize> {
        let range = self.out_arcs(u);
        let start = range.start;
        self.heads[range]
            .binary_search(&v)
            .ok()
            .map(|pos| start + pos)
    }
}

/// Hop distances plus one predecessor arc per reached node.
#[derive(Debug, Clone)]
pub struct ShortestPathTree {
    pub source: usize,
    pub dist: Vec<u32>,
    pub pred_arc: Vec<usize>,
    /// Reached nodes in nondecreasing distance order, source first.
    pub order: Vec<usize>,
}

impl ShortestPathTree {
    /// Predecessor node of `v`, if `v` was reached and is not the source.
    pub fn pred(&self, arcs: &Arcs, v: usize) -> Option<usize> {
        match self.pred_arc[v] {
            NO_ARC => None,
            a => Some(arcs.tail(a)),
        }
    }

    /// Number of reached nodes in each node's subtree, itself included.
    pub(crate) fn subtree_sizes(&self, arcs: &Arcs, sizes: &mut [u64]) {
        self.subtree_weights(arcs, |_| 1, sizes);
    }

    /// Sum of `weight` over each subtree.
    pub(crate) fn subtree_weights(&self, arcs: &Arcs, weight: impl Fn(usize) -> u64, sizes: &mut [u64]) {
        for &v in &self.order {
            sizes[v] = weight(v);
        }
        for &v in self.order.iter().rev() {
            let a = self.pred_arc[v];
            if a != NO_ARC {
                sizes[arcs.tail(a)] += sizes[v];
            }
        }
    }
}

/// Shortest-path tree rooted at `source` under unit arc costs.
///
/// With [`TieBreak::Sequential`], a node with several equally short
/// predecessors takes the one with the smallest id. With
/// [`TieBreak::Random`], it takes one uniformly at random, using an RNG
/// derived from the seed and the source id.
pub fn shortest_path_tree(g: &Graph, source: usize, tie_break: TieBreak) -> Result<ShortestPathTree> {
    if !g.is_present(source) {
        return Err(Error::NodeAbsent(source));
    }
    let arcs = Arcs::new(g);
    let mut rng = tie_break.rng_for(0, source);
    Ok(build_tree(&arcs, source, |_| true, rng.as_mut(), None))
}

impl TieBreak {
    pub(crate) fn rng_for(&self, round: u64, source: usize) -> Option<ChaCha8Rng> {
        match *self {
            TieBreak::Sequential => None,
            TieBreak::Random(seed) => {
                let mixed = splitmix(seed ^ splitmix(round.wrapping_add(0x9e37_79b9)) ^ splitmix(source as u64));
                Some(ChaCha8Rng::seed_from_u64(mixed))
            }
        }
    }
}

pub(crate) fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Builds the tree over arcs accepted by `usable`. `stop_after`, when set,
/// ends the search once that many nodes are labeled; only valid for the
/// sequential rule, whose predecessors are fixed at labeling time.
pub(crate) fn build_tree<F>(
    arcs: &Arcs,
    source: usize,
    usable: F,
    rng: Option<&mut ChaCha8Rng>,
    stop_after: Option<usize>,
) -> ShortestPathTree
where
    F: Fn(usize) -> bool,
{
    let n = arcs.node_count();
    let mut dist = vec![UNREACHABLE; n];
    let mut pred_arc = vec![NO_ARC; n];
    let mut order = Vec::new();
    dist[source] = 0;
    order.push(source);

    match rng {
        None => {
            let target = stop_after.unwrap_or(usize::MAX);
            let mut level = vec![source];
            let mut next = Vec::new();
            let mut d = 0u32;
            'search: while !level.is_empty() {
                for &u in &level {
                    for a in arcs.out_arcs(u) {
                        let w = arcs.head(a);
                        if dist[w] == UNREACHABLE && usable(a) {
                            dist[w] = d + 1;
                            pred_arc[w] = a;
                            next.push(w);
                            order.push(w);
                            if order.len() >= target {
                                break 'search;
                            }
                        }
                    }
                }
                // Expanding each level in id order makes the first labeler of
                // a node its smallest-id predecessor.
                next.sort_unstable();
                std::mem::swap(&mut level, &mut next);
                next.clear();
                d += 1;
            }
        }
        Some(rng) => {
            let mut candidates = vec![0u32; n];
            let mut head = 0;
            while head < order.len() {
                let u = order[head];
                head += 1;
                let du = dist[u];
                for a in arcs.out_arcs(u) {
                    if !usable(a) {
                        continue;
                    }
                    let w = arcs.head(a);
                    if dist[w] == UNREACHABLE {
                        dist[w] = du + 1;
                        order.push(w);
                    }
                    if dist[w] == du + 1 {
                        // Reservoir sampling over all shortest-path parents.
                        candidates[w] += 1;
                        if rng.gen_range(0..candidates[w]) == 0 {
                            pred_arc[w] = a;
                        }
                    }
                }
            }
        }
    }

    ShortestPathTree {
        source,
        dist,
        pred_arc,
        order,
    }
}
