//! Shortest-path betweenness via Brandes' accumulation.

use std::collections::VecDeque;

use rayon::prelude::*;

use super::Graph;

const SOURCES_PER_TASK: usize = 32;

/// Betweenness of every node slot: for each unordered pair `{s, t}` with
/// `s != v != t`, the fraction of shortest `s-t` paths through `v`, summed.
/// Removed nodes score 0.
///
/// Partial sums are combined in source order, so the result does not depend
/// on the rayon schedule.
pub fn betweenness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let sources: Vec<usize> = g.nodes().collect();
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(SOURCES_PER_TASK)
        .map(|chunk| {
            let mut ws = Workspace::new(n);
            let mut acc = vec![0.0; n];
            for &s in chunk {
                ws.accumulate(g, s, &mut acc);
            }
            acc
        })
        .collect();

    let mut total = vec![0.0; n];
    for part in partials {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    // Every unordered pair was visited from both endpoints.
    for t in &mut total {
        *t *= 0.5;
    }
    total
}

struct Workspace {
    dist: Vec<u32>,
    sigma: Vec<f64>,
    delta: Vec<f64>,
    order: Vec<usize>,
    queue: VecDeque<usize>,
}

impl Workspace {
    fn new(n: usize) -> Self {
        Workspace {
            dist: vec![u32::MAX; n],
            sigma: vec![0.0; n],
            delta: vec![0.0; n],
            order: Vec::with_capacity(n),
            queue: VecDeque::with_capacity(n),
        }
    }

    fn accumulate(&mut self, g: &Graph, s: usize, acc: &mut [f64]) {
        self.dist[s] = 0;
        self.sigma[s] = 1.0;
        self.queue.push_back(s);
        while let Some(v) = self.queue.pop_front() {
            self.order.push(v);
            let dv = self.dist[v];
            for &w in g.neighbors(v) {
                if self.dist[w] == u32::MAX {
                    self.dist[w] = dv + 1;
                    self.queue.push_back(w);
                }
                if self.dist[w] == dv + 1 {
                    self.sigma[w] += self.sigma[v];
                }
            }
        }

        // Predecessors of w are exactly the neighbors one level closer.
        for &w in self.order.iter().rev() {
            let dw = self.dist[w];
            let coeff = (1.0 + self.delta[w]) / self.sigma[w];
            for &v in g.neighbors(w) {
                if self.dist[v] != u32::MAX && self.dist[v] + 1 == dw {
                    self.delta[v] += self.sigma[v] * coeff;
                }
            }
            if w != s {
                acc[w] += self.delta[w];
            }
        }

        for &v in &self.order {
            self.dist[v] = u32::MAX;
            self.sigma[v] = 0.0;
            self.delta[v] = 0.0;
        }
        self.order.clear();
    }
}
