use std::collections::VecDeque;

use super::Graph;

/// Distance label of nodes not reachable from the source.
pub const UNREACHABLE: u32 = u32::MAX;

/// Hop distances from `source`; unreachable and removed nodes get
/// [`UNREACHABLE`].
pub fn bfs_distances(g: &Graph, source: usize) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; g.node_count()];
    if !g.is_present(source) {
        return dist;
    }
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u];
        for &w in g.neighbors(u) {
            if dist[w] == UNREACHABLE {
                dist[w] = du + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Connected components of the present nodes. Each component is sorted and
/// components are ordered by their smallest member.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.node_count()];
    let mut comps = Vec::new();
    let mut queue = VecDeque::new();
    for s in g.nodes() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        queue.push_back(s);
        let mut comp = Vec::new();
        while let Some(u) = queue.pop_front() {
            comp.push(u);
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Component index per node slot (`usize::MAX` for removed nodes) plus the
/// component sizes.
pub(crate) fn component_labels(g: &Graph) -> (Vec<usize>, Vec<usize>) {
    let comps = connected_components(g);
    let mut label = vec![usize::MAX; g.node_count()];
    let mut sizes = Vec::with_capacity(comps.len());
    for (c, comp) in comps.iter().enumerate() {
        for &v in comp {
            label[v] = c;
        }
        sizes.push(comp.len());
    }
    (label, sizes)
}
