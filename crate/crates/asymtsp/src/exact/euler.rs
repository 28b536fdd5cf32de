//! Undirected multigraphs and Eulerian trails (Hierholzer).

use std::collections::BTreeMap;

use crate::instance::Trail;
use crate::{Error, Result};

/// Undirected multigraph on vertices `0..n` with edge multiplicities.
#[derive(Debug, Clone)]
pub struct Multigraph {
    n: usize,
    adj: Vec<BTreeMap<usize, usize>>,
    edge_count: usize,
}

impl Multigraph {
    pub fn new(n: usize) -> Multigraph {
        Multigraph { n, adj: vec![BTreeMap::new(); n], edge_count: 0 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Add one copy of the undirected edge {u, v}.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n, "bad multigraph edge ({}, {})", u, v);
        *self.adj[u].entry(v).or_insert(0) += 1;
        *self.adj[v].entry(u).or_insert(0) += 1;
        self.edge_count += 1;
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].values().sum()
    }

    fn remove_one(&mut self, u: usize, v: usize) {
        for (a, b) in [(u, v), (v, u)] {
            let m = self.adj[a].get_mut(&b).expect("edge to remove");
            *m -= 1;
            if *m == 0 {
                self.adj[a].remove(&b);
            }
        }
        self.edge_count -= 1;
    }
}

/// Eulerian trail from `start` to `end` using every edge exactly as often as
/// its multiplicity. Requires the non-isolated vertices to be connected and
/// the odd-degree vertices to be exactly {start, end} (none when
/// start == end, which yields a circuit). The returned trail is the explicit
/// walk, so a circuit repeats the start vertex at the end.
///
/// Hierholzer with the smallest available neighbor chosen first, which makes
/// the trail deterministic.
pub fn eulerian_trail(mg: &Multigraph, start: usize, end: usize) -> Result<Trail> {
    let n = mg.n();
    if start >= n || end >= n {
        return Err(Error::validation("trail endpoint out of range"));
    }
    let odd: Vec<usize> = (0..n).filter(|&v| mg.degree(v) % 2 == 1).collect();
    if start == end {
        if !odd.is_empty() {
            return Err(Error::validation(format!(
                "circuit requested but vertices {:?} have odd degree",
                odd
            )));
        }
    } else if odd != {
        let mut e = vec![start.min(end), start.max(end)];
        e.dedup();
        e
    } {
        return Err(Error::validation(format!(
            "trail from {} to {} needs exactly these as odd-degree vertices, found {:?}",
            start, end, odd
        )));
    }
    if mg.edge_count() == 0 {
        return Ok(Trail { vertices: vec![start], closed: false });
    }
    if mg.degree(start) == 0 {
        return Err(Error::validation(format!("start vertex {} is isolated", start)));
    }
    // connectivity over non-isolated vertices
    {
        let mut seen = vec![false; n];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for &w in mg.adj[v].keys() {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        for v in 0..n {
            if mg.degree(v) > 0 && !seen[v] {
                return Err(Error::validation(format!(
                    "multigraph is disconnected: vertex {} unreachable from {}",
                    v, start
                )));
            }
        }
    }
    let mut work = mg.clone();
    let mut stack = vec![start];
    let mut walk = Vec::with_capacity(mg.edge_count() + 1);
    while let Some(&v) = stack.last() {
        if let Some((&w, _)) = work.adj[v].iter().next() {
            work.remove_one(v, w);
            stack.push(w);
        } else {
            walk.push(stack.pop().unwrap());
        }
    }
    walk.reverse();
    debug_assert_eq!(walk.len(), mg.edge_count() + 1);
    debug_assert_eq!(walk[0], start);
    debug_assert_eq!(*walk.last().unwrap(), end);
    Ok(Trail { vertices: walk, closed: false })
}
