//! INI-style experiment configuration.
//!
//! ```text
//! [experiment]
//! model = dijkstra_homogeneous
//! output_dir = results
//! global_seed = 42
//! attacks = random, highest_degree, highest_betweenness
//!
//! [attack highest_betweenness]
//! batch = 10
//!
//! [topology pa]
//! family = preferential_attachment
//! n = 1000
//! m = 2
//!
//! [topology abilene]
//! edge_list = abilene.txt
//! ```
//!
//! Relative paths resolve against the directory holding the config file.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use ini::{Ini, ParseOption, Properties};

use crate::error::{Error, Result};
use crate::generators::GeneratorSpec;
use crate::robustness::{AttackKind, AttackStrategy, TradeoffParams};
use crate::throughput::{ModelKind, ThroughputModel, TieBreak};

/// Elasticity scores supplied directly instead of simulated, for ranking
/// published networks alongside computed ones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InjectedScores {
    pub nodes: u64,
    pub links: u64,
    pub elas_r: f64,
    pub elas_d: f64,
    pub elas_b: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TopologySource {
    Generated(GeneratorSpec),
    EdgeList(PathBuf),
    Injected(InjectedScores),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TopologySpec {
    pub name: String,
    pub source: TopologySource,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub topologies: Vec<TopologySpec>,
    /// One strategy per attack kind, in declaration order. Random attacks
    /// carry a base seed that is mixed with each topology's seed.
    pub attacks: Vec<AttackStrategy>,
    pub model: ThroughputModel,
    pub stop_fraction: f64,
    pub tradeoff: TradeoffParams,
    pub output_dir: PathBuf,
    pub global_seed: u64,
    pub workers: usize,
}

const EXPERIMENT_KEYS: &[&str] = &[
    "model",
    "tie_break",
    "tie_seed",
    "stop_fraction",
    "output_dir",
    "global_seed",
    "workers",
    "attacks",
    "alpha_tol",
    "beta_tol",
    "delta_tol",
    "gamma_tol",
];
const ATTACK_KEYS: &[&str] = &["batch", "recompute", "seed"];
const INJECTED_KEYS: &[&str] = &["family", "nodes", "links", "elas_r", "elas_d", "elas_b"];
const GENERATOR_KEYS: &[&str] = &["family", "n", "p", "k", "m", "rows", "cols", "diagonals"];

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let base = path.parent().unwrap_or_else(|| Path::new(""));
        ExperimentConfig::parse(&text, base)
    }

    /// Parses `text`; relative paths are joined onto `base_dir`.
    pub fn parse(text: &str, base_dir: &Path) -> Result<Self> {
        let opt = ParseOption {
            enabled_escape: false,
            ..ParseOption::default()
        };
        let ini = Ini::load_from_str_opt(text, opt).map_err(|e| Error::Parse {
            line: e.line,
            msg: e.msg.into_owned(),
        })?;

        let mut experiment: Option<&Properties> = None;
        let mut attack_sections: BTreeMap<AttackKind, &Properties> = BTreeMap::new();
        let mut topologies = Vec::new();
        let mut names = BTreeSet::new();
        for (section, props) in ini.iter() {
            let Some(section) = section else {
                if !props.is_empty() {
                    return Err(Error::param("keys outside any section"));
                }
                continue;
            };
            let (head, arg) = match section.split_once(char::is_whitespace) {
                Some((h, a)) => (h, a.trim()),
                None => (section, ""),
            };
            match head {
                "experiment" if arg.is_empty() => {
                    if experiment.replace(props).is_some() {
                        return Err(Error::param("duplicate [experiment] section"));
                    }
                }
                "attack" => {
                    let kind = AttackKind::from_str(arg)?;
                    if attack_sections.insert(kind, props).is_some() {
                        return Err(Error::param(format!("duplicate [attack {arg}] section")));
                    }
                }
                "topology" if !arg.is_empty() => {
                    if !names.insert(arg.to_string()) {
                        return Err(Error::param(format!("duplicate topology name `{arg}`")));
                    }
                    topologies.push(parse_topology(arg, props, base_dir)?);
                }
                _ => return Err(Error::param(format!("unknown section [{section}]"))),
            }
        }

        let empty = Properties::new();
        let exp = experiment.unwrap_or(&empty);
        check_keys("experiment", exp, EXPERIMENT_KEYS)?;

        let kind: ModelKind = get_or(exp, "model", ModelKind::DijkstraHomogeneous)?;
        let tie_break = match exp.get("tie_break").map(str::trim) {
            None | Some("sequential") => TieBreak::Sequential,
            Some("random") => TieBreak::Random(get_or(exp, "tie_seed", 0)?),
            Some(other) => return Err(Error::param(format!("unknown tie_break `{other}`"))),
        };

        let attack_list = exp
            .get("attacks")
            .unwrap_or("random, highest_degree, highest_betweenness");
        let mut attacks = Vec::new();
        for item in attack_list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let kind = AttackKind::from_str(item)?;
            if attacks.iter().any(|a: &AttackStrategy| a.kind == kind) {
                return Err(Error::param(format!("attack `{item}` listed twice")));
            }
            let mut strategy = AttackStrategy::of_kind(kind, 0);
            if let Some(props) = attack_sections.get(&kind) {
                check_keys(&format!("attack {kind}"), props, ATTACK_KEYS)?;
                strategy.batch = get_or(props, "batch", 1)?;
                strategy.recompute = get_or(props, "recompute", strategy.recompute)?;
                if props.contains_key("seed") {
                    if kind != AttackKind::Random {
                        return Err(Error::param(format!("{kind} attack takes no seed")));
                    }
                    strategy.seed = Some(get_or(props, "seed", 0)?);
                }
            }
            strategy.validate()?;
            attacks.push(strategy);
        }
        if let Some(kind) = attack_sections.keys().find(|k| !attacks.iter().any(|a| a.kind == **k)) {
            return Err(Error::param(format!("[attack {kind}] is not in the attacks list")));
        }
        if attacks.is_empty() {
            return Err(Error::param("no attacks configured"));
        }

        let config = ExperimentConfig {
            topologies,
            attacks,
            model: ThroughputModel::new(kind).with_tie_break(tie_break),
            stop_fraction: get_or(exp, "stop_fraction", 1.0)?,
            tradeoff: TradeoffParams {
                alpha_tol: get_or(exp, "alpha_tol", 1.0)?,
                beta_tol: get_or(exp, "beta_tol", 1.0)?,
                delta_tol: get_or(exp, "delta_tol", 1.0)?,
                gamma_tol: get_or(exp, "gamma_tol", 1.0)?,
            },
            output_dir: base_dir.join(exp.get("output_dir").map_or("results", str::trim)),
            global_seed: get_or(exp, "global_seed", 0)?,
            workers: get_or(exp, "workers", 1)?,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.stop_fraction > 0.0 && self.stop_fraction <= 1.0) {
            return Err(Error::param(format!(
                "stop_fraction {} outside (0, 1]",
                self.stop_fraction
            )));
        }
        if self.workers == 0 {
            return Err(Error::param("workers must be at least 1"));
        }
        self.tradeoff.validate()?;
        let mut names = BTreeSet::new();
        for t in &self.topologies {
            if t.name.is_empty() || t.name.contains([',', '"', '\n', '\r']) {
                return Err(Error::param(format!("topology name `{}` cannot appear in a CSV cell", t.name)));
            }
            if !names.insert(t.name.as_str()) {
                return Err(Error::param(format!("duplicate topology name `{}`", t.name)));
            }
        }
        for a in &self.attacks {
            a.validate()?;
        }
        Ok(())
    }
}

fn parse_topology(name: &str, props: &Properties, base_dir: &Path) -> Result<TopologySpec> {
    let source = match (props.get("family").map(str::trim), props.get("edge_list")) {
        (Some(_), Some(_)) => {
            return Err(Error::param(format!(
                "topology `{name}` sets both family and edge_list"
            )))
        }
        (None, None) => {
            return Err(Error::param(format!(
                "topology `{name}` needs a family or an edge_list"
            )))
        }
        (None, Some(path)) => {
            check_keys(name, props, &["edge_list"])?;
            TopologySource::EdgeList(base_dir.join(path.trim()))
        }
        (Some("injected"), None) => {
            check_keys(name, props, INJECTED_KEYS)?;
            TopologySource::Injected(InjectedScores {
                nodes: get(props, "nodes")?,
                links: get(props, "links")?,
                elas_r: get(props, "elas_r")?,
                elas_d: get(props, "elas_d")?,
                elas_b: get(props, "elas_b")?,
            })
        }
        (Some(family), None) => {
            check_keys(name, props, GENERATOR_KEYS)?;
            TopologySource::Generated(GeneratorSpec::from_params(family, |k| props.get(k))?)
        }
    };
    Ok(TopologySpec {
        name: name.to_string(),
        source,
    })
}

fn check_keys(section: &str, props: &Properties, allowed: &[&str]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for (key, _) in props.iter() {
        if !allowed.contains(&key) {
            return Err(Error::param(format!("unknown key `{key}` in [{section}]")));
        }
        if !seen.insert(key) {
            return Err(Error::param(format!("key `{key}` repeated in [{section}]")));
        }
    }
    Ok(())
}

fn get<T: FromStr>(props: &Properties, key: &str) -> Result<T> {
    let raw = props
        .get(key)
        .ok_or_else(|| Error::param(format!("missing key `{key}`")))?;
    raw.trim()
        .parse()
        .map_err(|_| Error::param(format!("bad value `{raw}` for `{key}`")))
}

fn get_or<T: FromStr>(props: &Properties, key: &str, default: T) -> Result<T> {
    if props.contains_key(key) {
        get(props, key)
    } else {
        Ok(default)
    }
}
