#![allow(dead_code)]

use std::collections::VecDeque;
use std::io::Write;

use elastnet::graph::connected_components;
use elastnet::Graph;
use rand::Rng;

/// Betweenness by enumerating every shortest path of every pair.
pub fn brute_betweenness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let mut score = vec![0.0; n];
    for s in g.nodes() {
        let dist = distances(g, s);
        for t in g.nodes().filter(|&t| t > s && dist[t] != usize::MAX) {
            let mut paths = Vec::new();
            let mut cur = vec![s];
            walk(g, &dist, t, &mut cur, &mut paths);
            let total = paths.len() as f64;
            let mut through = vec![0usize; n];
            for p in &paths {
                for &v in &p[1..p.len() - 1] {
                    through[v] += 1;
                }
            }
            for v in 0..n {
                score[v] += through[v] as f64 / total;
            }
        }
    }
    score
}

fn distances(g: &Graph, s: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.node_count()];
    dist[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for &v in g.neighbors(u) {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                q.push_back(v);
            }
        }
    }
    dist
}

fn walk(g: &Graph, dist: &[usize], t: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let u = *cur.last().unwrap();
    if u == t {
        out.push(cur.clone());
        return;
    }
    for &v in g.neighbors(u) {
        if dist[v] == dist[u] + 1 && dist[v] <= dist[t] {
            cur.push(v);
            walk(g, dist, t, cur, out);
            cur.pop();
        }
    }
}

/// All pairs `(u, v)`, `u < v`, of `n` nodes in a fixed order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// Graph on `n` nodes holding the pairs selected by the bits of `mask`.
pub fn from_mask(n: usize, mask: u64) -> Graph {
    let edges = pairs(n)
        .into_iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, e)| e);
    Graph::from_edges(n, edges).unwrap()
}

pub fn is_connected(g: &Graph) -> bool {
    connected_components(g).len() == 1
}

/// Uniform random connected graph on `n` nodes with edge probability `p`
/// (rejection sampling).
pub fn random_connected(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    loop {
        let g = Graph::from_edges(n, pairs(n).into_iter().filter(|_| rng.gen_bool(p))).unwrap();
        if is_connected(&g) {
            return g;
        }
    }
}

/// Three 8-node networks of clearly different robustness, most robust
/// first: a dense circulant, a ring with two chords, and a spider tree.
pub fn fixed_networks() -> Vec<(&'static str, Graph)> {
    let circulant = Graph::from_edges(
        8,
        (0..8).flat_map(|i| [1, 2, 3].map(|d| (i, (i + d) % 8))),
    )
    .unwrap();
    let chorded = Graph::from_edges(8, (0..8).map(|i| (i, (i + 1) % 8)).chain([(0, 4), (2, 6)])).unwrap();
    let spider = Graph::from_edges(8, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6), (0, 7)]).unwrap();
    vec![("circulant", circulant), ("chorded-ring", chorded), ("spider", spider)]
}

/// Indices of `values` from largest to smallest.
pub fn ranking(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    idx
}

/// Writes one line to stderr past the test harness capture, so that it
/// shows in the plain `cargo test` log.
pub fn report(line: &str) {
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "{line}");
}

pub fn verdict(criterion: u32, title: &str, pass: bool, detail: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    report(&format!("[acceptance {criterion:>2}] {tag} {title}: {detail}"));
}
