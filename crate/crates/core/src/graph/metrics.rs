//! Structural metrics: density, diameter, average shortest path,
//! heterogeneity and the degree histogram.

use std::collections::BTreeMap;

use super::{betweenness, bfs_distances, connected_components, Graph, UNREACHABLE};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub nodes: usize,
    pub links: usize,
    pub density: f64,
    /// Longest shortest path inside the largest connected component.
    pub diameter: u32,
    /// Mean hop distance over pairs of the largest connected component.
    pub asp: f64,
    /// Population standard deviation of degree divided by mean degree.
    pub heterogeneity: f64,
    pub degree_histogram: BTreeMap<usize, usize>,
    pub betweenness: Vec<f64>,
}

/// Metrics over the present nodes of `g`. Diameter and ASP use the largest
/// connected component (the first one in id order on size ties).
pub fn metrics(g: &Graph) -> Result<MetricsReport> {
    let n = g.active_count();
    if n < 2 {
        return Err(Error::UndefinedMetrics(n));
    }
    let m = g.edge_count();
    let density = 2.0 * m as f64 / (n as f64 * (n as f64 - 1.0));

    let mut degree_histogram = BTreeMap::new();
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for v in g.nodes() {
        let d = g.degree(v);
        *degree_histogram.entry(d).or_insert(0) += 1;
        sum += d as f64;
        sum_sq += (d * d) as f64;
    }
    let mean = sum / n as f64;
    let heterogeneity = if mean > 0.0 {
        let var = (sum_sq / n as f64 - mean * mean).max(0.0);
        var.sqrt() / mean
    } else {
        0.0
    };

    let comps = connected_components(g);
    let largest = comps
        .iter()
        .fold(&comps[0], |best, c| if c.len() > best.len() { c } else { best });
    let mut diameter = 0u32;
    let mut total = 0u64;
    for &s in largest {
        let dist = bfs_distances(g, s);
        for &t in largest {
            let d = dist[t];
            debug_assert_ne!(d, UNREACHABLE);
            diameter = diameter.max(d);
            total += u64::from(d);
        }
    }
    let k = largest.len() as f64;
    let asp = if largest.len() > 1 {
        total as f64 / (k * (k - 1.0))
    } else {
        0.0
    };

    Ok(MetricsReport {
        nodes: n,
        links: m,
        density,
        diameter,
        asp,
        heterogeneity,
        degree_histogram,
        betweenness: betweenness(g),
    })
}
