//! Minimum vertex cover by branching (include a max-degree vertex or all of
//! its neighbors), with degree-1 kernelization and a matching lower bound,
//! plus the maximal-matching 2-approximation.

use std::collections::BTreeSet;

use crate::{Error, Result};

fn normalize(edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut set: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &(u, v) in edges {
        assert!(u != v, "self-loop in vertex cover input");
        set.insert((u.min(v), u.max(v)));
    }
    set.into_iter().collect()
}

#[derive(Clone)]
struct CoverGraph {
    adj: Vec<BTreeSet<usize>>,
    edge_count: usize,
}

impl CoverGraph {
    fn from_edges(edges: &[(usize, usize)]) -> CoverGraph {
        let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        let mut adj = vec![BTreeSet::new(); n];
        for &(u, v) in edges {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        CoverGraph { adj, edge_count: edges.len() }
    }

    fn remove_vertex(&mut self, v: usize) {
        let nbrs: Vec<usize> = self.adj[v].iter().copied().collect();
        for w in nbrs {
            self.adj[w].remove(&v);
            self.edge_count -= 1;
        }
        self.adj[v].clear();
    }

    /// Greedy maximal matching size: a lower bound on the cover size.
    fn matching_lower_bound(&self) -> usize {
        let mut used = vec![false; self.adj.len()];
        let mut size = 0;
        for u in 0..self.adj.len() {
            if used[u] {
                continue;
            }
            if let Some(&w) = self.adj[u].iter().find(|&&w| !used[w]) {
                used[u] = true;
                used[w] = true;
                size += 1;
            }
        }
        size
    }
}

fn branch(graph: &mut CoverGraph, chosen: &mut Vec<usize>, best: &mut Vec<usize>, nodes: &mut u64) {
    *nodes += 1;
    // kernelize: a degree-1 vertex forces its neighbor into the cover
    loop {
        let mut changed = false;
        for v in 0..graph.adj.len() {
            if graph.adj[v].len() == 1 {
                let w = *graph.adj[v].iter().next().unwrap();
                chosen.push(w);
                graph.remove_vertex(w);
                changed = true;
                break;
            }
        }
        if !changed {
            break;
        }
    }
    if graph.edge_count == 0 {
        if chosen.len() < best.len() {
            *best = chosen.clone();
        }
        return;
    }
    if chosen.len() + graph.matching_lower_bound() >= best.len() {
        return;
    }
    // branch on a maximum-degree vertex (lowest index on ties)
    let v = (0..graph.adj.len()).max_by_key(|&v| (graph.adj[v].len(), usize::MAX - v)).unwrap();
    let saved_chosen = chosen.len();

    let mut g1 = graph.clone();
    chosen.push(v);
    g1.remove_vertex(v);
    branch(&mut g1, chosen, best, nodes);
    chosen.truncate(saved_chosen);

    let nbrs: Vec<usize> = graph.adj[v].iter().copied().collect();
    let mut g2 = graph.clone();
    for &w in &nbrs {
        chosen.push(w);
        g2.remove_vertex(w);
    }
    branch(&mut g2, chosen, best, nodes);
    chosen.truncate(saved_chosen);
}

/// Minimum-cardinality vertex cover of the given undirected edge set.
/// Deterministic; the returned set is sorted.
pub fn vertex_cover_exact(edges: &[(usize, usize)]) -> Vec<usize> {
    let edges = normalize(edges);
    if edges.is_empty() {
        return Vec::new();
    }
    let mut graph = CoverGraph::from_edges(&edges);
    // greedy max-degree cover as the initial upper bound
    let mut best: Vec<usize> = {
        let mut g = graph.clone();
        let mut cover = Vec::new();
        while g.edge_count > 0 {
            let v = (0..g.adj.len()).max_by_key(|&v| (g.adj[v].len(), usize::MAX - v)).unwrap();
            cover.push(v);
            g.remove_vertex(v);
        }
        cover
    };
    let mut chosen = Vec::new();
    let mut nodes = 0u64;
    branch(&mut graph, &mut chosen, &mut best, &mut nodes);
    best.sort_unstable();
    best
}

/// Size of a greedy maximal matching: a cheap lower bound on any vertex
/// cover of the edge set.
pub fn cover_lower_bound(edges: &[(usize, usize)]) -> usize {
    let edges = normalize(edges);
    if edges.is_empty() {
        return 0;
    }
    CoverGraph::from_edges(&edges).matching_lower_bound()
}

/// Maximal-matching 2-approximation: both endpoints of a greedily chosen
/// maximal matching (edges scanned in sorted order). Size is at most twice
/// the optimum.
pub fn vertex_cover_2approx(edges: &[(usize, usize)]) -> Vec<usize> {
    let edges = normalize(edges);
    let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let mut used = vec![false; n];
    let mut cover = Vec::new();
    for (u, v) in edges {
        if !used[u] && !used[v] {
            used[u] = true;
            used[v] = true;
            cover.push(u);
            cover.push(v);
        }
    }
    cover.sort_unstable();
    cover
}

/// Validate an externally supplied cover: it must cover every edge; when
/// `claim_minimum` is set its size must equal the exact optimum.
pub fn validate_injected_cover(
    edges: &[(usize, usize)],
    cover: &[usize],
    claim_minimum: bool,
) -> Result<()> {
    let in_cover: BTreeSet<usize> = cover.iter().copied().collect();
    for &(u, v) in edges {
        if !in_cover.contains(&u) && !in_cover.contains(&v) {
            return Err(Error::validation(format!(
                "injected cover misses edge ({}, {})",
                u, v
            )));
        }
    }
    if claim_minimum {
        let exact = vertex_cover_exact(edges);
        if exact.len() != in_cover.len() {
            return Err(Error::validation(format!(
                "injected cover has {} vertices but the minimum is {}",
                in_cover.len(),
                exact.len()
            )));
        }
    }
    Ok(())
}
