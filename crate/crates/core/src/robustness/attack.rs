//! Node-removal attack strategies.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{betweenness, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AttackKind {
    Random,
    HighestDegree,
    HighestBetweenness,
}

impl AttackKind {
    pub const ALL: [AttackKind; 3] = [
        AttackKind::Random,
        AttackKind::HighestDegree,
        AttackKind::HighestBetweenness,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AttackKind::Random => "random",
            AttackKind::HighestDegree => "highest_degree",
            AttackKind::HighestBetweenness => "highest_betweenness",
        }
    }
}

impl fmt::Display for AttackKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AttackKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" | "r" => Ok(AttackKind::Random),
            "highest_degree" | "degree" | "d" => Ok(AttackKind::HighestDegree),
            "highest_betweenness" | "betweenness" | "b" => Ok(AttackKind::HighestBetweenness),
            other => Err(Error::param(format!("unknown attack `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AttackStrategy {
    pub kind: AttackKind,
    /// Permutation seed; required for random attacks, unused otherwise.
    pub seed: Option<u64>,
    /// Re-rank targets on the damaged graph after every batch.
    pub recompute: bool,
    /// Nodes removed between throughput evaluations (and between re-rankings).
    pub batch: usize,
}

impl AttackStrategy {
    pub fn random(seed: u64) -> Self {
        AttackStrategy {
            kind: AttackKind::Random,
            seed: Some(seed),
            recompute: false,
            batch: 1,
        }
    }

    pub fn highest_degree() -> Self {
        AttackStrategy {
            kind: AttackKind::HighestDegree,
            seed: None,
            recompute: true,
            batch: 1,
        }
    }

    pub fn highest_betweenness() -> Self {
        AttackStrategy {
            kind: AttackKind::HighestBetweenness,
            seed: None,
            recompute: true,
            batch: 1,
        }
    }

    /// Default strategy of `kind`; `seed` is used only for random attacks.
    pub fn of_kind(kind: AttackKind, seed: u64) -> Self {
        match kind {
            AttackKind::Random => AttackStrategy::random(seed),
            AttackKind::HighestDegree => AttackStrategy::highest_degree(),
            AttackKind::HighestBetweenness => AttackStrategy::highest_betweenness(),
        }
    }

    pub fn with_batch(mut self, batch: usize) -> Self {
        self.batch = batch;
        self
    }

    pub fn with_recompute(mut self, recompute: bool) -> Self {
        self.recompute = recompute;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.batch == 0 {
            return Err(Error::param("attack batch must be at least 1"));
        }
        match (self.kind, self.seed) {
            (AttackKind::Random, None) => Err(Error::param("random attack needs a seed")),
            (AttackKind::HighestDegree | AttackKind::HighestBetweenness, Some(_)) => Err(
                Error::param(format!("{} attack takes no seed", self.kind)),
            ),
            _ => Ok(()),
        }
    }
}

/// Every present node of `g` in removal order.
pub fn attack_sequence(g: &Graph, strategy: &AttackStrategy) -> Result<Vec<usize>> {
    attack_prefix(g, strategy, g.active_count())
}

/// The first `limit` nodes of [`attack_sequence`].
pub(crate) fn attack_prefix(g: &Graph, strategy: &AttackStrategy, limit: usize) -> Result<Vec<usize>> {
    strategy.validate()?;
    let limit = limit.min(g.active_count());
    let mut order: Vec<usize> = match strategy.kind {
        AttackKind::Random => {
            let mut nodes: Vec<usize> = g.nodes().collect();
            let mut rng = ChaCha8Rng::seed_from_u64(strategy.seed.unwrap_or_default());
            nodes.shuffle(&mut rng);
            nodes
        }
        kind if !strategy.recompute => ranked(g, kind),
        kind => adaptive(g, kind, strategy.batch, limit)?,
    };
    order.truncate(limit);
    Ok(order)
}

/// Scores quantized so that float noise between symmetric nodes cannot
/// break the smallest-id tie rule.
fn score_keys(g: &Graph, kind: AttackKind) -> Vec<i64> {
    match kind {
        AttackKind::HighestDegree => (0..g.node_count()).map(|v| g.degree(v) as i64).collect(),
        AttackKind::HighestBetweenness => betweenness(g)
            .into_iter()
            .map(|b| (b * 1e6).round() as i64)
            .collect(),
        AttackKind::Random => unreachable!("random attacks are not ranked"),
    }
}

/// Present nodes by descending score, ties to the smallest id.
fn ranked(g: &Graph, kind: AttackKind) -> Vec<usize> {
    let keys = score_keys(g, kind);
    let mut nodes: Vec<usize> = g.nodes().collect();
    nodes.sort_by(|&a, &b| keys[b].cmp(&keys[a]).then(a.cmp(&b)));
    nodes
}

fn adaptive(g: &Graph, kind: AttackKind, batch: usize, limit: usize) -> Result<Vec<usize>> {
    let mut work = g.clone();
    let mut order = Vec::with_capacity(limit);
    while order.len() < limit {
        // Edgeless graphs (and, for betweenness, unions of cliques) stay
        // all-tied under further removals: the rest goes in id order.
        let keys = score_keys(&work, kind);
        if work.nodes().all(|v| keys[v] == 0) {
            order.extend(work.nodes());
            break;
        }
        let mut nodes: Vec<usize> = work.nodes().collect();
        nodes.sort_by(|&a, &b| keys[b].cmp(&keys[a]).then(a.cmp(&b)));
        for &v in nodes.iter().take(batch.min(limit - order.len())) {
            work.remove_node(v)?;
            order.push(v);
        }
    }
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_mesh;

    fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|l| (0, l))).unwrap()
    }

    #[test]
    fn degree_attack_hits_star_center_first() {
        let seq = attack_sequence(&star(5), &AttackStrategy::highest_degree()).unwrap();
        assert_eq!(seq[0], 0);
        assert_eq!(seq.len(), 6);
    }

    #[test]
    fn betweenness_attack_hits_path_middle_first() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let seq = attack_sequence(&g, &AttackStrategy::highest_betweenness()).unwrap();
        assert_eq!(seq, vec![1, 0, 2]);
    }

    #[test]
    fn ties_resolve_to_ascending_ids() {
        let seq = attack_sequence(&gen_mesh(4).unwrap(), &AttackStrategy::highest_degree()).unwrap();
        assert_eq!(seq, vec![0, 1, 2, 3]);
    }

    #[test]
    fn random_is_a_seeded_permutation() {
        let g = gen_mesh(20).unwrap();
        let a = attack_sequence(&g, &AttackStrategy::random(4)).unwrap();
        let b = attack_sequence(&g, &AttackStrategy::random(4)).unwrap();
        let c = attack_sequence(&g, &AttackStrategy::random(5)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        let mut sorted = a.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..20).collect::<Vec<_>>());
    }

    #[test]
    fn adaptive_differs_from_static() {
        // Two hubs: 0 (degree 4) and 5 (degree 3) joined through 9. After
        // removing 0, the static ranking still lists leaves of 0 before 9.
        let g = Graph::from_edges(
            10,
            [(0, 1), (0, 2), (0, 3), (0, 9), (5, 6), (5, 7), (5, 9), (1, 2)],
        )
        .unwrap();
        let adaptive = attack_sequence(&g, &AttackStrategy::highest_degree()).unwrap();
        let fixed = attack_sequence(&g, &AttackStrategy::highest_degree().with_recompute(false)).unwrap();
        assert_eq!(adaptive[0], 0);
        assert_eq!(fixed[0], 0);
        assert_ne!(adaptive, fixed);
    }

    #[test]
    fn seeds_are_validated() {
        let mut s = AttackStrategy::random(1);
        s.seed = None;
        assert!(attack_sequence(&star(3), &s).is_err());
        let mut s = AttackStrategy::highest_degree();
        s.seed = Some(3);
        assert!(s.validate().is_err());
        assert!(AttackStrategy::highest_degree().with_batch(0).validate().is_err());
    }

    #[test]
    fn removed_nodes_are_skipped() {
        let mut g = star(4);
        g.remove_node(0).unwrap();
        let seq = attack_sequence(&g, &AttackStrategy::highest_betweenness()).unwrap();
        assert_eq!(seq, vec![1, 2, 3, 4]);
    }
}
