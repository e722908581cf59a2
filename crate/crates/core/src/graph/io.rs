//! Plain-text edge lists.
//!
//! One `u v` pair per line. Lines starting with `#` are comments, except an
//! optional `# nodes N` header which declares the node count so that trailing
//! isolated nodes survive a round trip.

use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};

pub fn load_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    let mut text = String::new();
    std::fs::File::open(path)?.read_to_string(&mut text)?;
    parse_edge_list(&text)
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared: Option<(usize, usize)> = None;
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            let mut toks = comment.split_whitespace();
            if toks.next() == Some("nodes") {
                let n = toks.next().ok_or_else(|| Error::Parse {
                    line,
                    msg: "`# nodes` header without a count".into(),
                })?;
                let n = parse_id(n, line)?;
                declared = Some((n, line));
            }
            continue;
        }
        let mut toks = trimmed.split_whitespace();
        let (Some(a), Some(b), None) = (toks.next(), toks.next(), toks.next()) else {
            return Err(Error::Parse {
                line,
                msg: format!("expected two node ids, got `{trimmed}`"),
            });
        };
        let u = parse_id(a, line)?;
        let v = parse_id(b, line)?;
        if u == v {
            return Err(Error::SelfLoop { line, node: u });
        }
        pairs.push((u.min(v), u.max(v), line));
    }

    let max_id = pairs.iter().map(|&(_, v, _)| v + 1).max().unwrap_or(0);
    let n = match declared {
        Some((n, line)) if n < max_id => {
            return Err(Error::Parse {
                line,
                msg: format!("declared {n} nodes but ids reach {}", max_id - 1),
            })
        }
        Some((n, _)) => n,
        None => max_id,
    };

    let mut g = Graph::new(n);
    for (u, v, line) in pairs {
        g.add_edge(u, v).map_err(|e| match e {
            Error::DuplicateEdge { u, v, .. } => Error::DuplicateEdge { line, u, v },
            other => other,
        })?;
    }
    Ok(g)
}

fn parse_id(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>().map_err(|_| Error::Parse {
        line,
        msg: format!("`{tok}` is not a nonnegative integer"),
    })
}

/// Serializes `g` with a `# nodes N` header and edges in ascending order.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(16 * (g.edge_count() + 1));
    let _ = writeln!(out, "# nodes {}", g.node_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn path_of_three() {
        let g = parse_edge_list("0 1\n1 2").unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (3, 2));
    }

    #[test]
    fn reversed_pair_is_duplicate() {
        let err = parse_edge_list("0 1\n1 0").unwrap_err();
        assert!(matches!(err, Error::DuplicateEdge { line: 2, u: 0, v: 1 }));
    }

    #[test]
    fn self_loop_reports_line() {
        let err = parse_edge_list("# hi\n0 0").unwrap_err();
        assert!(matches!(err, Error::SelfLoop { line: 2, node: 0 }));
    }

    #[test]
    fn bad_tokens() {
        assert!(matches!(
            parse_edge_list("0 x").unwrap_err(),
            Error::Parse { line: 1, .. }
        ));
        assert!(matches!(
            parse_edge_list("0 -1").unwrap_err(),
            Error::Parse { .. }
        ));
        assert!(matches!(
            parse_edge_list("0 1 2").unwrap_err(),
            Error::Parse { .. }
        ));
        assert!(parse_edge_list("# nodes 2\n0 5").is_err());
    }

    #[test]
    fn header_declares_isolated_nodes() {
        let g = parse_edge_list("# nodes 5\n# a comment\n\n0 1\n").unwrap();
        assert_eq!(g.node_count(), 5);
        assert_eq!(g.degree(4), 0);
    }

    proptest! {
        #[test]
        fn serialization_round_trips(n in 1usize..30, raw in proptest::collection::vec((0usize..30, 0usize..30), 0..80)) {
            let mut g = Graph::new(n);
            for (u, v) in raw {
                let (u, v) = (u % n, v % n);
                if u != v && !g.has_edge(u, v) {
                    g.add_edge(u, v).unwrap();
                }
            }
            let back = parse_edge_list(&write_edge_list(&g)).unwrap();
            prop_assert_eq!(back.node_count(), g.node_count());
            prop_assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        }
    }
}
