use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use elastnet::experiment::{run_experiment, ExperimentConfig};
use elastnet::fmt::num;
use elastnet::generators::GeneratorSpec;
use elastnet::graph::{load_edge_list, metrics, write_edge_list};
use elastnet::robustness::{
    attack_sequence, elasticity, mesh_elasticity_continuous, mesh_elasticity_discrete,
    tradeoff_re, AttackKind, AttackStrategy, Removal, TradeoffParams,
};
use elastnet::throughput::{ModelKind, ThroughputModel, TieBreak};
use elastnet::{Error, Result};

#[derive(Parser)]
#[command(name = "elastnet", version, about = "Throughput elasticity of network topologies under node removal")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a synthetic topology as an edge list.
    Generate(GenerateArgs),
    /// Print structural metrics of an edge list.
    Metrics {
        graph: PathBuf,
        /// Also list per-node betweenness.
        #[arg(long)]
        betweenness: bool,
    },
    /// Print the order in which an attack removes nodes.
    Attack {
        graph: PathBuf,
        #[command(flatten)]
        attack: AttackArgs,
    },
    /// Print raw throughput under each routing model.
    Throughput {
        graph: PathBuf,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Run one attack and print the degradation curve as CSV.
    Elasticity {
        graph: PathBuf,
        #[command(flatten)]
        attack: AttackArgs,
        #[command(flatten)]
        model: ModelArgs,
        /// Fraction of nodes to remove, in (0, 1].
        #[arg(long, default_value_t = 1.0)]
        stop: f64,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Elasticity of the full mesh under node removal.
    Bound {
        /// Node count; scientific notation such as 1e9 is accepted.
        #[arg(long)]
        n: f64,
        #[arg(long, value_enum, default_value_t = BoundMode::Discrete)]
        mode: BoundMode,
        /// Nodes removed; all of them when omitted.
        #[arg(long)]
        zeta: Option<f64>,
    },
    /// Cost-aware robustness score from three elasticities.
    Tradeoff {
        /// Elasticity under random removal.
        #[arg(long = "a")]
        elas_r: f64,
        /// Elasticity under highest-degree removal.
        #[arg(long = "b")]
        elas_d: f64,
        /// Elasticity under highest-betweenness removal.
        #[arg(long = "c")]
        elas_b: f64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 1.0)]
        alpha_tol: f64,
        #[arg(long, default_value_t = 1.0)]
        beta_tol: f64,
        #[arg(long, default_value_t = 1.0)]
        delta_tol: f64,
        #[arg(long, default_value_t = 1.0)]
        gamma_tol: f64,
    },
    /// Execute an experiment config and write its reports.
    Run {
        config: PathBuf,
        /// Overrides the config's output_dir.
        #[arg(long)]
        output_dir: Option<PathBuf>,
        /// Overrides the config's worker count.
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(Args)]
struct GenerateArgs {
    /// gilbert, watts_strogatz, preferential_attachment, near_regular, mesh or star.
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    rows: Option<String>,
    #[arg(long)]
    cols: Option<String>,
    #[arg(long)]
    diagonals: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the edge list here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AttackArgs {
    #[arg(long = "kind", value_parser = parse_attack)]
    kind: AttackKind,
    /// Permutation seed for random attacks.
    #[arg(long)]
    seed: Option<u64>,
    /// Rank once on the intact graph instead of after every batch.
    #[arg(long = "static")]
    fixed: bool,
    #[arg(long, default_value_t = 1)]
    batch: usize,
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long, value_parser = parse_model, default_value = "dijkstra_homogeneous")]
    model: ModelKind,
    /// Seed for random shortest-path tie-breaking; sequential when omitted.
    #[arg(long)]
    tie_seed: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundMode {
    Discrete,
    Continuous,
}

fn parse_attack(s: &str) -> std::result::Result<AttackKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_model(s: &str) -> std::result::Result<ModelKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl AttackArgs {
    fn strategy(&self) -> Result<AttackStrategy> {
        let mut s = AttackStrategy::of_kind(self.kind, 0);
        s.seed = match (self.kind, self.seed) {
            (AttackKind::Random, None) => Some(0),
            (_, seed) => seed,
        };
        s.batch = self.batch;
        if self.fixed {
            s.recompute = false;
        }
        s.validate()?;
        Ok(s)
    }
}

impl ModelArgs {
    fn model(&self) -> ThroughputModel {
        let tb = self.tie_seed.map_or(TieBreak::Sequential, TieBreak::Random);
        ThroughputModel::new(self.model).with_tie_break(tb)
    }
}

/// Integer-valued count given possibly in scientific notation.
fn whole(x: f64, what: &str) -> Result<u64> {
    if x.is_finite() && x >= 0.0 && x.fract() == 0.0 && x <= u64::MAX as f64 {
        Ok(x as u64)
    } else {
        Err(Error::Parameter(format!("{what} must be a nonnegative integer, got {x}")))
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate(a) => {
            let params = [
                ("n", &a.n),
                ("p", &a.p),
                ("k", &a.k),
                ("m", &a.m),
                ("rows", &a.rows),
                ("cols", &a.cols),
            ];
            let diagonals = a.diagonals.to_string();
            let get = |key: &str| {
                if key == "diagonals" {
                    return Some(diagonals.as_str());
                }
                params.iter().find(|(k, _)| *k == key).and_then(|(_, v)| v.as_deref())
            };
            let g = GeneratorSpec::from_params(&a.family, get)?.generate(a.seed)?;
            emit(a.out.as_deref(), &write_edge_list(&g))
        }
        Command::Metrics { graph, betweenness } => {
            let g = load_edge_list(&graph)?;
            let m = metrics(&g)?;
            let mut text = format!(
                "nodes {}\nlinks {}\ndensity {}\ndiameter {}\nasp {}\nheterogeneity {}\n",
                m.nodes,
                m.links,
                num(m.density),
                m.diameter,
                num(m.asp),
                num(m.heterogeneity)
            );
            for (deg, count) in &m.degree_histogram {
                text += &format!("degree {deg} {count}\n");
            }
            if betweenness {
                for v in g.nodes() {
                    text += &format!("betweenness {v} {}\n", num(m.betweenness[v]));
                }
            }
            emit(None, &text)
        }
        Command::Attack { graph, attack } => {
            let g = load_edge_list(&graph)?;
            let seq = attack_sequence(&g, &attack.strategy()?)?;
            let text: String = seq.iter().map(|v| format!("{v}\n")).collect();
            emit(None, &text)
        }
        Command::Throughput { graph, model } => {
            let g = load_edge_list(&graph)?;
            let tb = model.model().tie_break;
            let mut text = String::new();
            for kind in ModelKind::ALL {
                let raw = match ThroughputModel::new(kind).with_tie_break(tb).raw_throughput(&g) {
                    Ok(raw) => num(raw),
                    Err(Error::LpTooLarge(_)) => "NaN".to_string(),
                    Err(e) => return Err(e),
                };
                text += &format!("{kind} {raw}\n");
            }
            emit(None, &text)
        }
        Command::Elasticity {
            graph,
            attack,
            model,
            stop,
            out,
        } => {
            let g = load_edge_list(&graph)?;
            let curve = elasticity(&g, &attack.strategy()?, &model.model(), stop)?;
            emit(out.as_deref(), &curve.to_csv())?;
            if out.is_some() {
                println!("{}", num(curve.elasticity));
            }
            Ok(())
        }
        Command::Bound { n, mode, zeta } => {
            let n = whole(n, "n")?;
            let zeta = zeta.map(|z| whole(z, "zeta")).transpose()?;
            let value = match mode {
                BoundMode::Discrete => mesh_elasticity_discrete(n, zeta.unwrap_or(n))?,
                BoundMode::Continuous => {
                    mesh_elasticity_continuous(n, zeta.map_or(Removal::All, Removal::Nodes))?
                }
            };
            println!("{}", num(value));
            Ok(())
        }
        Command::Tradeoff {
            elas_r,
            elas_d,
            elas_b,
            n,
            m,
            alpha_tol,
            beta_tol,
            delta_tol,
            gamma_tol,
        } => {
            let params = TradeoffParams {
                alpha_tol,
                beta_tol,
                delta_tol,
                gamma_tol,
            };
            println!("{}", num(tradeoff_re(elas_r, elas_d, elas_b, n, m, &params)?));
            Ok(())
        }
        Command::Run {
            config,
            output_dir,
            workers,
        } => {
            let mut cfg = ExperimentConfig::load(&config)?;
            if let Some(dir) = output_dir {
                cfg.output_dir = dir;
            }
            if let Some(w) = workers {
                cfg.workers = w;
            }
            let report = run_experiment(&cfg)?;
            for f in &report.failures {
                eprintln!("warning: {f}");
            }
            println!(
                "{} topologies, {} failures, reports in {}",
                report.rows.len(),
                report.failures.len(),
                cfg.output_dir.display()
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.class().exit_code() as u8)
        }
    }
}
