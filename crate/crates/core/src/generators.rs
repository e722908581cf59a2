//! Seeded constructors for the synthetic topology families.
//!
//! Every generator draws from a `ChaCha8Rng` seeded only by the caller's
//! seed, so a `(spec, seed)` pair always yields the same edge set.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorSpec {
    /// `G(n, p)`: every pair independently with probability `p`.
    Gilbert { n: usize, p: f64 },
    /// Ring lattice with `k` nearest neighbors, each edge rewired with
    /// probability `p`.
    WattsStrogatz { n: usize, k: usize, p: f64 },
    /// Barabási–Albert growth from an `(m+1)`-clique, `m` links per arrival.
    PreferentialAttachment { n: usize, m: usize },
    /// `rows x cols` grid, optionally with diagonal neighbors.
    NearRegular {
        rows: usize,
        cols: usize,
        diagonals: bool,
    },
    /// Complete graph.
    Mesh { n: usize },
    /// Node 0 joined to `n - 1` leaves.
    Star { n: usize },
}

impl GeneratorSpec {
    pub fn family(&self) -> &'static str {
        match self {
            GeneratorSpec::Gilbert { .. } => "gilbert",
            GeneratorSpec::WattsStrogatz { .. } => "watts_strogatz",
            GeneratorSpec::PreferentialAttachment { .. } => "preferential_attachment",
            GeneratorSpec::NearRegular { .. } => "near_regular",
            GeneratorSpec::Mesh { .. } => "mesh",
            GeneratorSpec::Star { .. } => "star",
        }
    }

    /// Builds a spec from a family name and string parameters looked up by
    /// key (`n`, `p`, `k`, `m`, `rows`, `cols`, `diagonals`).
    pub fn from_params<'a, F>(family: &str, get: F) -> Result<Self>
    where
        F: Fn(&str) -> Option<&'a str>,
    {
        fn req<'a, T: std::str::FromStr>(get: &impl Fn(&str) -> Option<&'a str>, key: &str) -> Result<T> {
            let raw = get(key).ok_or_else(|| Error::param(format!("missing parameter `{key}`")))?;
            raw.trim()
                .parse()
                .map_err(|_| Error::param(format!("bad value `{raw}` for `{key}`")))
        }
        Ok(match family {
            "gilbert" => GeneratorSpec::Gilbert { n: req(&get, "n")?, p: req(&get, "p")? },
            "watts_strogatz" => GeneratorSpec::WattsStrogatz {
                n: req(&get, "n")?,
                k: req(&get, "k")?,
                p: req(&get, "p")?,
            },
            "preferential_attachment" => GeneratorSpec::PreferentialAttachment {
                n: req(&get, "n")?,
                m: req(&get, "m")?,
            },
            "near_regular" => GeneratorSpec::NearRegular {
                rows: req(&get, "rows")?,
                cols: req(&get, "cols")?,
                diagonals: match get("diagonals") {
                    None => false,
                    Some(_) => req(&get, "diagonals")?,
                },
            },
            "mesh" => GeneratorSpec::Mesh { n: req(&get, "n")? },
            "star" => GeneratorSpec::Star { n: req(&get, "n")? },
            other => return Err(Error::param(format!("unknown generator family `{other}`"))),
        })
    }

    pub fn generate(&self, seed: u64) -> Result<Graph> {
        match *self {
            GeneratorSpec::Gilbert { n, p } => gen_gilbert(n, p, seed),
            GeneratorSpec::WattsStrogatz { n, k, p } => gen_watts_strogatz(n, k, p, seed),
            GeneratorSpec::PreferentialAttachment { n, m } => {
                gen_preferential_attachment(n, m, seed)
            }
            GeneratorSpec::NearRegular {
                rows,
                cols,
                diagonals,
            } => gen_near_regular(rows, cols, diagonals),
            GeneratorSpec::Mesh { n } => gen_mesh(n),
            GeneratorSpec::Star { n } => gen_star(n),
        }
    }
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::param(format!("probability {p} outside [0, 1]")))
    }
}

pub fn gen_gilbert(n: usize, p: f64, seed: u64) -> Result<Graph> {
    check_probability(p)?;
    if n < 2 {
        return Err(Error::param("gilbert needs n >= 2"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

pub fn gen_watts_strogatz(n: usize, k: usize, p: f64, seed: u64) -> Result<Graph> {
    check_probability(p)?;
    if k < 2 || k % 2 != 0 {
        return Err(Error::param(format!("k must be even and >= 2, got {k}")));
    }
    if k >= n {
        return Err(Error::param(format!("k = {k} must be smaller than n = {n}")));
    }
    let half = k / 2;
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in 1..=half {
            g.add_edge(i, (i + j) % n)?;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for j in 1..=half {
        for i in 0..n {
            if !rng.gen_bool(p) {
                continue;
            }
            let far = (i + j) % n;
            // Up to n draws; if all collide the lattice edge stays.
            for _ in 0..n {
                let w = rng.gen_range(0..n);
                if w != i && !g.has_edge(i, w) {
                    g.remove_edge(i, far);
                    g.add_edge(i, w)?;
                    break;
                }
            }
        }
    }
    Ok(g)
}

pub fn gen_preferential_attachment(n: usize, m: usize, seed: u64) -> Result<Graph> {
    if m < 1 || m >= n {
        return Err(Error::param(format!("need n > m >= 1, got n = {n}, m = {m}")));
    }
    let mut g = Graph::new(n);
    // Each endpoint appears once per incident edge: uniform draws from this
    // list are degree-proportional.
    let mut endpoints = Vec::with_capacity(2 * (m * (m + 1) / 2 + m * n));
    for u in 0..=m {
        for v in u + 1..=m {
            g.add_edge(u, v)?;
            endpoints.extend([u, v]);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut targets = Vec::with_capacity(m);
    for v in m + 1..n {
        targets.clear();
        while targets.len() < m {
            let t = endpoints[rng.gen_range(0..endpoints.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            g.add_edge(v, t)?;
            endpoints.extend([v, t]);
        }
    }
    Ok(g)
}

/// Grid graph with node `r * cols + c` at row `r`, column `c`.
pub fn gen_near_regular(rows: usize, cols: usize, diagonals: bool) -> Result<Graph> {
    if rows < 2 || cols < 2 {
        return Err(Error::param("near-regular grid needs rows, cols >= 2"));
    }
    let id = |r: usize, c: usize| r * cols + c;
    let mut g = Graph::new(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                g.add_edge(id(r, c), id(r, c + 1))?;
            }
            if r + 1 < rows {
                g.add_edge(id(r, c), id(r + 1, c))?;
            }
            if diagonals && r + 1 < rows {
                if c + 1 < cols {
                    g.add_edge(id(r, c), id(r + 1, c + 1))?;
                }
                if c > 0 {
                    g.add_edge(id(r, c), id(r + 1, c - 1))?;
                }
            }
        }
    }
    Ok(g)
}

pub fn gen_mesh(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::param("mesh needs n >= 2"));
    }
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

pub fn gen_star(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::param("star needs n >= 2"));
    }
    Graph::from_edges(n, (1..n).map(|leaf| (0, leaf)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{connected_components, metrics};
    use proptest::prelude::*;

    #[test]
    fn gilbert_extremes() {
        assert_eq!(gen_gilbert(10, 0.0, 3).unwrap().edge_count(), 0);
        assert_eq!(gen_gilbert(10, 1.0, 3).unwrap().edge_count(), 45);
        assert!(gen_gilbert(10, 1.5, 3).is_err());
        assert!(gen_gilbert(10, -0.1, 3).is_err());
    }

    #[test]
    fn specs_from_params() {
        let params = [("n", "12"), ("p", "0.5"), ("k", "4"), ("m", "2"), ("rows", "3"), ("cols", "4")];
        let get = |key: &str| params.iter().find(|(k, _)| *k == key).map(|(_, v)| *v);
        assert_eq!(
            GeneratorSpec::from_params("watts_strogatz", get).unwrap(),
            GeneratorSpec::WattsStrogatz { n: 12, k: 4, p: 0.5 }
        );
        assert_eq!(
            GeneratorSpec::from_params("near_regular", get).unwrap(),
            GeneratorSpec::NearRegular { rows: 3, cols: 4, diagonals: false }
        );
        assert!(GeneratorSpec::from_params("lattice", get).is_err());
        assert!(GeneratorSpec::from_params("gilbert", |_| None).is_err());
        assert!(GeneratorSpec::from_params("mesh", |_| Some("ten")).is_err());
    }

    #[test]
    fn star_shape() {
        let g = GeneratorSpec::Star { n: 10 }.generate(0).unwrap();
        assert_eq!(g.edge_count(), 9);
        assert_eq!(g.degree(0), 9);
    }

    #[test]
    fn gilbert_edge_count_is_binomial() {
        // Binomial(499500, 0.0091): mean 4545.45, sd 67.1.
        let mean = 0.0091 * 499_500.0;
        let sd = (499_500.0f64 * 0.0091 * (1.0 - 0.0091)).sqrt();
        for seed in 0..3 {
            let m = gen_gilbert(1000, 0.0091, seed).unwrap().edge_count() as f64;
            assert!((m - mean).abs() < 4.0 * sd, "seed {seed}: M = {m}");
        }
    }

    #[test]
    fn watts_strogatz_counts() {
        assert_eq!(gen_watts_strogatz(1000, 6, 0.3, 1).unwrap().edge_count(), 3000);
        assert_eq!(gen_watts_strogatz(1000, 4, 0.5, 1).unwrap().edge_count(), 2000);
        let lattice = gen_watts_strogatz(10, 4, 0.0, 9).unwrap();
        assert_eq!(metrics(&lattice).unwrap().heterogeneity, 0.0);
        assert!(gen_watts_strogatz(10, 3, 0.1, 0).is_err());
        assert!(gen_watts_strogatz(4, 4, 0.1, 0).is_err());
    }

    #[test]
    fn preferential_attachment_counts() {
        assert_eq!(gen_preferential_attachment(1000, 2, 5).unwrap().edge_count(), 1997);
        let tree = gen_preferential_attachment(4, 1, 5).unwrap();
        assert_eq!(tree.edge_count(), 3);
        assert_eq!(connected_components(&tree).len(), 1);
        assert!(gen_preferential_attachment(3, 3, 0).is_err());
        assert!(gen_preferential_attachment(3, 0, 0).is_err());
    }

    #[test]
    fn preferential_attachment_is_heterogeneous() {
        for m in [1, 2] {
            let g = gen_preferential_attachment(1000, m, 11).unwrap();
            assert!(g.nodes().all(|v| g.degree(v) >= m));
            let het = metrics(&g).unwrap().heterogeneity;
            assert!(het > 1.0, "m = {m}: het = {het}");
        }
    }

    #[test]
    fn near_regular_counts() {
        let g = gen_near_regular(31, 32, false).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (992, 1921));
        let g = gen_near_regular(31, 32, true).unwrap();
        assert_eq!(g.edge_count(), 3781);
        let square = gen_near_regular(2, 2, false).unwrap();
        assert_eq!(square.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn mesh_counts() {
        assert_eq!(gen_mesh(1000).unwrap().edge_count(), 499_500);
        assert_eq!(gen_mesh(2).unwrap().edges().collect::<Vec<_>>(), vec![(0, 1)]);
        let k4 = gen_mesh(4).unwrap();
        assert!(k4.nodes().all(|v| k4.degree(v) == 3));
    }

    #[test]
    fn near_regular_closed_forms() {
        for rows in 2..=50 {
            for cols in 2..=50 {
                let plain = rows * (cols - 1) + (rows - 1) * cols;
                let diag = plain + 2 * (rows - 1) * (cols - 1);
                assert_eq!(gen_near_regular(rows, cols, false).unwrap().edge_count(), plain);
                assert_eq!(gen_near_regular(rows, cols, true).unwrap().edge_count(), diag);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn same_seed_same_graph(seed in any::<u64>(), family in 0usize..3) {
            let spec = match family {
                0 => GeneratorSpec::Gilbert { n: 60, p: 0.1 },
                1 => GeneratorSpec::WattsStrogatz { n: 60, k: 4, p: 0.4 },
                _ => GeneratorSpec::PreferentialAttachment { n: 60, m: 2 },
            };
            let a = spec.generate(seed).unwrap();
            let b = spec.generate(seed).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn watts_strogatz_keeps_edge_count(n in 5usize..80, half in 1usize..4, p in 0.0f64..=1.0, seed in any::<u64>()) {
            let k = 2 * half;
            prop_assume!(k < n);
            let g = gen_watts_strogatz(n, k, p, seed).unwrap();
            prop_assert_eq!(g.edge_count(), n * k / 2);
        }

        #[test]
        fn preferential_attachment_connected(n in 3usize..120, m in 1usize..4, seed in any::<u64>()) {
            prop_assume!(m < n);
            let g = gen_preferential_attachment(n, m, seed).unwrap();
            prop_assert_eq!(connected_components(&g).len(), 1);
            prop_assert_eq!(g.edge_count(), m * (n - m - 1) + (m + 1) * m / 2);
        }
    }
}
