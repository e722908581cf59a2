use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use log::{info, warn};
use rayon::prelude::*;

use super::config::{ExperimentConfig, TopologySource};
use crate::error::{Error, Result};
use crate::fmt::num;
use crate::graph::{load_edge_list, metrics, Graph};
use crate::robustness::{elasticity, tradeoff_re, AttackKind, AttackStrategy, ElasticityCurve};
use crate::throughput::paths::splitmix;

/// One line of the cost-aware ranking.
#[derive(Debug, Clone, PartialEq)]
pub struct RankingRow {
    pub name: String,
    pub nodes: u64,
    pub links: u64,
    pub elas_r: f64,
    pub elas_d: f64,
    pub elas_b: f64,
    pub re_score: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricsRow {
    pub name: String,
    pub nodes: u64,
    pub links: u64,
    pub density: f64,
    pub diameter: f64,
    pub asp: f64,
    pub heterogeneity: f64,
}

/// Everything written by [`run_experiment`], in topology declaration order.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub metrics: Vec<MetricsRow>,
    pub rows: Vec<RankingRow>,
    /// One message per failed topology or cell.
    pub failures: Vec<String>,
}

/// 64-bit FNV-1a.
fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// Seed of the topology called `name`; independent of the other topologies.
pub fn topology_seed(global_seed: u64, name: &str) -> u64 {
    splitmix(global_seed ^ splitmix(fnv1a(name.as_bytes())))
}

/// File-name-safe form of a topology name.
fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '.' { c } else { '_' })
        .collect()
}

struct Topology {
    graph: Option<Graph>,
    nodes: u64,
    links: u64,
    seed: u64,
}

/// Runs every (topology, attack) cell of `config` and writes the reports
/// under its output directory. Failures of single topologies or cells are
/// logged and reported as `NaN`; only configuration and output errors abort.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let mut stems = std::collections::BTreeSet::new();
    for t in &config.topologies {
        if !stems.insert(file_stem(&t.name)) {
            return Err(Error::param(format!(
                "topology `{}` clashes with another name after file-name sanitizing",
                t.name
            )));
        }
    }
    let out = &config.output_dir;
    fs::create_dir_all(out.join("curves"))?;

    let mut log = String::new();
    let mut failures = Vec::new();
    let _ = writeln!(
        log,
        "model={} stop_fraction={} global_seed={} attacks={}",
        config.model,
        num(config.stop_fraction),
        config.global_seed,
        config.attacks.iter().map(|a| a.kind.as_str()).collect::<Vec<_>>().join(",")
    );

    let mut topologies = Vec::with_capacity(config.topologies.len());
    let mut metric_rows = Vec::with_capacity(config.topologies.len());
    for t in &config.topologies {
        let seed = topology_seed(config.global_seed, &t.name);
        let built = match &t.source {
            TopologySource::Generated(spec) => spec.generate(seed).map(Some),
            TopologySource::EdgeList(path) => load_edge_list(path).map(Some),
            TopologySource::Injected(_) => Ok(None),
        };
        let topo = match built {
            Ok(Some(g)) => Topology {
                nodes: g.active_count() as u64,
                links: g.edge_count() as u64,
                graph: Some(g),
                seed,
            },
            Ok(None) => {
                let TopologySource::Injected(s) = &t.source else { unreachable!() };
                Topology { graph: None, nodes: s.nodes, links: s.links, seed }
            }
            Err(e) => {
                let msg = format!("topology {}: {e}", t.name);
                warn!("{msg}");
                let _ = writeln!(log, "error {msg}");
                failures.push(msg);
                Topology { graph: None, nodes: 0, links: 0, seed }
            }
        };
        let _ = writeln!(log, "topology {}: nodes={} links={} seed={}", t.name, topo.nodes, topo.links, seed);

        let nodes = topo.nodes as f64;
        let mut row = MetricsRow {
            name: t.name.clone(),
            nodes: topo.nodes,
            links: topo.links,
            density: if nodes >= 2.0 { 2.0 * topo.links as f64 / (nodes * (nodes - 1.0)) } else { f64::NAN },
            diameter: f64::NAN,
            asp: f64::NAN,
            heterogeneity: f64::NAN,
        };
        if let Some(g) = &topo.graph {
            match metrics(g) {
                Ok(m) => {
                    row.density = m.density;
                    row.diameter = m.diameter as f64;
                    row.asp = m.asp;
                    row.heterogeneity = m.heterogeneity;
                }
                Err(e) => {
                    let msg = format!("metrics {}: {e}", t.name);
                    let _ = writeln!(log, "error {msg}");
                    failures.push(msg);
                }
            }
        }
        metric_rows.push(row);
        topologies.push(topo);
    }

    let cells: Vec<(usize, usize)> = topologies
        .iter()
        .enumerate()
        .filter(|(_, t)| t.graph.is_some())
        .flat_map(|(ti, _)| (0..config.attacks.len()).map(move |ai| (ti, ai)))
        .collect();
    let run_cell = |&(ti, ai): &(usize, usize)| -> Result<ElasticityCurve> {
        let topo = &topologies[ti];
        let g = topo.graph.as_ref().expect("cells only cover built graphs");
        let strategy = cell_strategy(&config.attacks[ai], topo.seed);
        elasticity(g, &strategy, &config.model, config.stop_fraction)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::param(format!("cannot start {} workers: {e}", config.workers)))?;
    // Results come back in cell order whatever the completion order.
    let results: Vec<Result<ElasticityCurve>> = pool.install(|| cells.par_iter().map(run_cell).collect());

    let mut scores = vec![[f64::NAN; 3]; topologies.len()];
    for (&(ti, ai), result) in cells.iter().zip(results) {
        let name = &config.topologies[ti].name;
        let kind = config.attacks[ai].kind;
        match result {
            Ok(curve) => {
                let path = out.join("curves").join(format!("{}_{}.csv", file_stem(name), kind));
                fs::write(&path, curve.to_csv())?;
                let _ = writeln!(
                    log,
                    "cell {name}/{kind}: elasticity={} alpha={} samples={}",
                    num(curve.elasticity),
                    num(curve.alpha),
                    curve.samples.len()
                );
                scores[ti][column(kind)] = curve.elasticity;
            }
            Err(e) => {
                let msg = format!("cell {name}/{kind}: {e}");
                warn!("{msg}");
                let _ = writeln!(log, "error {msg}");
                failures.push(msg);
            }
        }
    }

    let mut rows = Vec::with_capacity(topologies.len());
    for (ti, t) in config.topologies.iter().enumerate() {
        let topo = &topologies[ti];
        let [mut r, mut d, mut b] = scores[ti];
        if let TopologySource::Injected(s) = &t.source {
            (r, d, b) = (s.elas_r, s.elas_d, s.elas_b);
        }
        let re_score = if [r, d, b].iter().all(|x| x.is_finite()) {
            match tradeoff_re(r, d, b, topo.nodes, topo.links, &config.tradeoff) {
                Ok(re) => re,
                Err(e) => {
                    let msg = format!("tradeoff {}: {e}", t.name);
                    let _ = writeln!(log, "error {msg}");
                    failures.push(msg);
                    f64::NAN
                }
            }
        } else {
            f64::NAN
        };
        rows.push(RankingRow {
            name: t.name.clone(),
            nodes: topo.nodes,
            links: topo.links,
            elas_r: r,
            elas_d: d,
            elas_b: b,
            re_score,
        });
    }

    write_reports(out, &metric_rows, &rows)?;
    let _ = writeln!(log, "done: {} failures", failures.len());
    fs::write(out.join("run.log"), log)?;
    info!("wrote reports to {}", out.display());
    Ok(ExperimentReport {
        metrics: metric_rows,
        rows,
        failures,
    })
}

fn column(kind: AttackKind) -> usize {
    match kind {
        AttackKind::Random => 0,
        AttackKind::HighestDegree => 1,
        AttackKind::HighestBetweenness => 2,
    }
}

fn cell_strategy(base: &AttackStrategy, topology_seed: u64) -> AttackStrategy {
    let mut s = *base;
    if let Some(seed) = base.seed {
        s.seed = Some(splitmix(topology_seed ^ splitmix(seed)));
    }
    s
}

/// Descending by value, `NaN` last, ties in declaration order.
fn descending(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| match (values[a].is_nan(), values[b].is_nan()) {
        (false, false) => values[b].total_cmp(&values[a]).then(a.cmp(&b)),
        (x, y) => x.cmp(&y).then(a.cmp(&b)),
    });
    idx
}

/// Pearson correlation over the pairs where both values are finite.
pub fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .filter(|(x, y)| x.is_finite() && y.is_finite())
        .map(|(&x, &y)| (x, y))
        .collect();
    if pts.len() < 2 {
        return f64::NAN;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in &pts {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return f64::NAN;
    }
    sxy / (sxx * syy).sqrt()
}

fn write_reports(out: &Path, metric_rows: &[MetricsRow], rows: &[RankingRow]) -> Result<()> {
    let mut csv = String::from("name,nodes,links,density,diameter,asp,heterogeneity\n");
    for m in metric_rows {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{}",
            m.name,
            m.nodes,
            m.links,
            num(m.density),
            num(m.diameter),
            num(m.asp),
            num(m.heterogeneity)
        );
    }
    fs::write(out.join("metrics.csv"), csv)?;

    // Each elasticity column sorted on its own, as (name, value) pairs.
    let cols: [Vec<f64>; 3] = [
        rows.iter().map(|r| r.elas_r).collect(),
        rows.iter().map(|r| r.elas_d).collect(),
        rows.iter().map(|r| r.elas_b).collect(),
    ];
    let orders: Vec<Vec<usize>> = cols.iter().map(|c| descending(c)).collect();
    let mut csv = String::from("rank,name_r,elas_r,name_d,elas_d,name_b,elas_b\n");
    for rank in 0..rows.len() {
        let _ = write!(csv, "{}", rank + 1);
        for (c, order) in cols.iter().zip(&orders) {
            let i = order[rank];
            let _ = write!(csv, ",{},{}", rows[i].name, num(c[i]));
        }
        csv.push('\n');
    }
    fs::write(out.join("ranking.csv"), csv)?;

    let re: Vec<f64> = rows.iter().map(|r| r.re_score).collect();
    let mut csv = String::from("name,nodes,links,elas_r,elas_d,elas_b,re\n");
    for i in descending(&re) {
        let r = &rows[i];
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{}",
            r.name,
            r.nodes,
            r.links,
            num(r.elas_r),
            num(r.elas_d),
            num(r.elas_b),
            num(r.re_score)
        );
    }
    fs::write(out.join("tradeoff.csv"), csv)?;

    let links: Vec<f64> = metric_rows.iter().map(|m| m.links as f64).collect();
    let het: Vec<f64> = metric_rows.iter().map(|m| m.heterogeneity).collect();
    let asp: Vec<f64> = metric_rows.iter().map(|m| m.asp).collect();
    let mut csv = String::from("metric,elas_r,elas_d,elas_b\n");
    for (name, xs) in [("links", &links), ("heterogeneity", &het), ("asp", &asp)] {
        let _ = write!(csv, "{name}");
        for c in &cols {
            let _ = write!(csv, ",{}", num(pearson(xs, c)));
        }
        csv.push('\n');
    }
    fs::write(out.join("correlations.csv"), csv)?;

    let mut csv = String::from("name,links,heterogeneity,asp,elas_r,elas_d,elas_b\n");
    for (m, r) in metric_rows.iter().zip(rows) {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{}",
            r.name,
            m.links,
            num(m.heterogeneity),
            num(m.asp),
            num(r.elas_r),
            num(r.elas_d),
            num(r.elas_b)
        );
    }
    fs::write(out.join("points.csv"), csv)?;
    Ok(())
}
