//! Metric machinery: shortest-path closure, metric shortcuts, minor
//! contraction, and completion of incomplete graphs that satisfy the polygon
//! inequality.

use std::collections::BTreeMap;

use crate::instance::{Instance, Trail};
use crate::weight::Weight;
use crate::{Error, Result};

/// All-pairs shortest-path closure via Floyd-Warshall. The result is metric,
/// entrywise no larger than the input, and idempotent. Non-negative costs
/// rule out negative cycles.
pub fn metric_closure<W: Weight>(instance: &Instance<W>) -> Instance<W> {
    let n = instance.n();
    let mut d: Vec<W> = Vec::with_capacity(n * n);
    for u in 0..n {
        for v in 0..n {
            d.push(instance.c(u, v));
        }
    }
    for k in 0..n {
        for i in 0..n {
            if i == k {
                continue;
            }
            let dik = d[i * n + k].clone();
            for j in 0..n {
                let via = dik.clone() + d[k * n + j].clone();
                if via < d[i * n + j] {
                    d[i * n + j] = via;
                }
            }
        }
    }
    let closure = Instance::from_fn(instance.name().to_string(), n, |u, v| d[u * n + v].clone());
    closure.mark_metric();
    closure
}

/// Remove repeated vertices from a trail. Keeps the first occurrence of each
/// vertex; with `pin_endpoints` the first and last vertices of an open trail
/// stay first and last (interior occurrences of the final vertex are dropped
/// instead). Under a metric instance this never increases the cost.
pub fn metric_shortcut(trail: &Trail, pin_endpoints: bool) -> Trail {
    let verts = &trail.vertices;
    if verts.is_empty() {
        return trail.clone();
    }
    let n_max = verts.iter().max().unwrap() + 1;
    let mut seen = vec![false; n_max];
    let mut out = Vec::with_capacity(verts.len());
    if pin_endpoints && !trail.closed {
        let last = *verts.last().unwrap();
        let first = verts[0];
        if first == last {
            // degenerate: open trail returning to its start collapses to the
            // vertices in first-seen order starting at that vertex
            for &v in verts {
                if !seen[v] {
                    seen[v] = true;
                    out.push(v);
                }
            }
            return Trail::open(out);
        }
        for (i, &v) in verts.iter().enumerate() {
            if v == last && i + 1 != verts.len() {
                continue;
            }
            if !seen[v] {
                seen[v] = true;
                out.push(v);
            }
        }
        debug_assert_eq!(out[0], first);
        debug_assert_eq!(*out.last().unwrap(), last);
    } else {
        for &v in verts {
            if !seen[v] {
                seen[v] = true;
                out.push(v);
            }
        }
    }
    Trail { vertices: out, closed: trail.closed }
}

/// A partition of `0..n` into disjoint non-empty blocks, stored in canonical
/// order (sorted by minimum element).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Partition> {
        let mut seen = vec![false; n];
        let mut count = 0usize;
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::validation("empty partition block"));
            }
            block.sort_unstable();
            for &v in block.iter() {
                if v >= n {
                    return Err(Error::validation(format!("partition vertex {} out of range", v)));
                }
                if seen[v] {
                    return Err(Error::validation(format!("vertex {} in two blocks", v)));
                }
                seen[v] = true;
                count += 1;
            }
        }
        if count != n {
            return Err(Error::validation(format!("partition covers {} of {} vertices", count, n)));
        }
        blocks.sort_by_key(|b| b[0]);
        Ok(Partition { n, blocks })
    }

    pub fn singletons(n: usize) -> Partition {
        Partition { n, blocks: (0..n).map(|v| vec![v]).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// A minor of an instance: the contracted cost matrix plus the origin map
/// from meta-vertices back to the contracted vertex sets. Contraction does
/// not preserve the triangle inequality, so the inner instance is left with
/// an unknown metric state on purpose.
#[derive(Debug, Clone)]
pub struct MetaGraph<W> {
    instance: Instance<W>,
    origin: Vec<Vec<usize>>,
}

impl<W: Weight> MetaGraph<W> {
    pub fn instance(&self) -> &Instance<W> {
        &self.instance
    }

    /// Vertex sets of the original instance, indexed by meta-vertex.
    pub fn origin(&self) -> &[Vec<usize>] {
        &self.origin
    }

    pub fn n(&self) -> usize {
        self.instance.n()
    }
}

/// Contract each partition block to a single vertex; the meta-cost between
/// two blocks is the minimum original cost over all cross pairs.
pub fn contract<W: Weight>(instance: &Instance<W>, partition: &Partition) -> Result<MetaGraph<W>> {
    if partition.n() != instance.n() {
        return Err(Error::validation(format!(
            "partition over {} vertices, instance has {}",
            partition.n(),
            instance.n()
        )));
    }
    let blocks = partition.blocks();
    let m = blocks.len();
    let meta = Instance::from_fn(format!("{}/minor", instance.name()), m, |i, j| {
        let mut best: Option<W> = None;
        for &u in &blocks[i] {
            for &v in &blocks[j] {
                let c = instance.c(u, v);
                if best.as_ref().is_none_or(|b| &c < b) {
                    best = Some(c);
                }
            }
        }
        best.expect("non-empty blocks")
    });
    Ok(MetaGraph { instance: meta, origin: blocks.to_vec() })
}

/// An incomplete directed graph: explicit edges only, no self-loops.
#[derive(Debug, Clone, Default)]
pub struct PartialGraph<W> {
    n: usize,
    edges: BTreeMap<(usize, usize), W>,
}

impl<W: Weight> PartialGraph<W> {
    pub fn new(n: usize) -> PartialGraph<W> {
        PartialGraph { n, edges: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Insert a directed edge. Re-inserting an existing edge with the same
    /// cost is a no-op; a different cost is an error.
    pub fn add_edge(&mut self, u: usize, v: usize, cost: W) -> Result<()> {
        if u == v {
            return Err(Error::validation(format!("self-loop at {}", u)));
        }
        if u >= self.n || v >= self.n {
            return Err(Error::validation(format!("edge ({}, {}) out of range", u, v)));
        }
        if cost < W::zero() {
            return Err(Error::validation(format!("negative cost on edge ({}, {})", u, v)));
        }
        if let Some(prev) = self.edges.get(&(u, v)) {
            if *prev != cost {
                return Err(Error::validation(format!(
                    "edge ({}, {}) inserted twice with different costs",
                    u, v
                )));
            }
            return Ok(());
        }
        self.edges.insert((u, v), cost);
        Ok(())
    }

    /// Insert both directions with the same cost.
    pub fn add_symmetric(&mut self, u: usize, v: usize, cost: W) -> Result<()> {
        self.add_edge(u, v, cost.clone())?;
        self.add_edge(v, u, cost)
    }

    pub fn get(&self, u: usize, v: usize) -> Option<&W> {
        self.edges.get(&(u, v))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &W)> {
        self.edges.iter().map(|(&(u, v), w)| (u, v, w))
    }
}

/// Complete a partial graph that satisfies the polygon inequality: every
/// missing edge gets the cost of the cheapest path over the original edges,
/// existing edges stay bit-exact, and the result is metric. Errors if the
/// graph is not strongly connected or if some existing edge is more expensive
/// than a path between its endpoints (a polygon-inequality violation).
pub fn polygon_complete<W: Weight>(pg: &PartialGraph<W>) -> Result<Instance<W>> {
    let n = pg.n();
    if n == 0 {
        return Err(Error::validation("empty graph"));
    }
    // all-pairs shortest paths over the original edges only
    let mut d: Vec<Option<W>> = vec![None; n * n];
    for i in 0..n {
        d[i * n + i] = Some(W::zero());
    }
    for (u, v, w) in pg.edges() {
        let slot = &mut d[u * n + v];
        if slot.as_ref().is_none_or(|cur| w < cur) {
            *slot = Some(w.clone());
        }
    }
    for k in 0..n {
        for i in 0..n {
            let Some(dik) = d[i * n + k].clone() else { continue };
            for j in 0..n {
                let Some(dkj) = d[k * n + j].as_ref() else { continue };
                let via = dik.clone() + dkj.clone();
                if d[i * n + j].as_ref().is_none_or(|cur| &via < cur) {
                    d[i * n + j] = Some(via);
                }
            }
        }
    }
    for u in 0..n {
        for v in 0..n {
            if u != v && d[u * n + v].is_none() {
                return Err(Error::validation(format!(
                    "graph is not strongly connected: no path from {} to {}",
                    u, v
                )));
            }
        }
    }
    // polygon inequality: no existing edge may exceed the cheapest path
    for (u, v, w) in pg.edges() {
        let sp = d[u * n + v].as_ref().unwrap();
        if w > sp {
            return Err(Error::validation(format!(
                "polygon inequality violated: edge ({}, {}) costs {} but a path of cost {} exists",
                u, v, w, sp
            )));
        }
    }
    let inst = Instance::from_fn("completed", n, |u, v| d[u * n + v].clone().unwrap());
    inst.mark_metric();
    Ok(inst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_idempotent_and_entrywise_leq() {
        let inst = Instance::from_fn("x", 7, |u, v| ((u * 13 + v * 7) % 19 + 1) as i64);
        let c1 = metric_closure(&inst);
        let c2 = metric_closure(&c1);
        assert_eq!(c1, c2);
        assert!(c1.verify_metric(1).is_empty());
        for u in 0..7 {
            for v in 0..7 {
                assert!(c1.c(u, v) <= inst.c(u, v));
            }
        }
    }

    #[test]
    fn closure_identity_on_metric_input() {
        let inst = Instance::from_fn("m", 5, |_, _| 3i64);
        let c = metric_closure(&inst);
        assert_eq!(c, inst);
    }

    #[test]
    fn closure_three_cycle() {
        // forward cost-1 cycle, backward edges cost 10 collapse to 2
        let inst = Instance::from_fn("cyc", 3, |u, v| if (v + 3 - u) % 3 == 1 { 1i64 } else { 10 });
        let c = metric_closure(&inst);
        assert_eq!(c.c(1, 0), 2);
        assert_eq!(c.c(2, 1), 2);
        assert_eq!(c.c(0, 2), 2);
        assert_eq!(c.c(0, 1), 1);
    }

    #[test]
    fn shortcut_drops_repeats() {
        let t = Trail::open(vec![0, 1, 0, 2]);
        assert_eq!(metric_shortcut(&t, false).vertices, vec![0, 1, 2]);
        let t2 = Trail::open(vec![0, 1, 2]);
        assert_eq!(metric_shortcut(&t2, false), t2);
    }

    #[test]
    fn shortcut_pins_endpoints() {
        // trail from 3 to 1 where 1 also shows up in the middle
        let t = Trail::open(vec![3, 1, 2, 1, 0, 1]);
        let s = metric_shortcut(&t, true);
        assert_eq!(s.vertices, vec![3, 2, 0, 1]);
        // degenerate: first == last, interior absent
        let t2 = Trail::open(vec![4, 4]);
        assert_eq!(metric_shortcut(&t2, true).vertices, vec![4]);
    }

    #[test]
    fn shortcut_never_increases_cost_on_metric() {
        let inst = metric_closure(&Instance::from_fn("m", 8, |u, v| ((u * 17 + v * 29) % 37 + 1) as i64));
        // a trail with plenty of repeats, open and closed
        let walk = vec![0, 3, 1, 3, 5, 2, 5, 7, 4, 7, 6, 0, 1];
        for closed in [false, true] {
            let t = Trail { vertices: walk.clone(), closed };
            let s = metric_shortcut(&t, false);
            assert!(s.cost(&inst) <= t.cost(&inst));
        }
        let t = Trail::open(walk);
        let s = metric_shortcut(&t, true);
        assert!(s.cost(&inst) <= t.cost(&inst));
        assert_eq!(*s.vertices.last().unwrap(), 1);
    }

    #[test]
    fn contract_singletons_is_identity() {
        let inst = Instance::from_fn("x", 5, |u, v| ((u * 3 + v) % 9 + 1) as i64);
        let meta = contract(&inst, &Partition::singletons(5)).unwrap();
        assert_eq!(meta.instance(), &inst);
    }

    #[test]
    fn contract_single_block() {
        let inst = Instance::from_fn("x", 4, |_, _| 2i64);
        let p = Partition::new(4, vec![vec![0, 1, 2, 3]]).unwrap();
        let meta = contract(&inst, &p).unwrap();
        assert_eq!(meta.n(), 1);
        assert_eq!(meta.instance().metric_checked(), None);
    }

    #[test]
    fn contract_takes_min_cross_cost() {
        let inst = Instance::from_fn("x", 4, |u, v| (u * 10 + v) as i64);
        let p = Partition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let meta = contract(&inst, &p).unwrap();
        // min over {c(0,2), c(0,3), c(1,2), c(1,3)} = 2
        assert_eq!(meta.instance().c(0, 1), 2);
        // min over {c(2,0), c(2,1), c(3,0), c(3,1)} = 20
        assert_eq!(meta.instance().c(1, 0), 20);
    }

    #[test]
    fn partition_rejects_bad_covers() {
        assert!(Partition::new(3, vec![vec![0, 1]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1, 2], vec![]]).is_err());
    }

    #[test]
    fn polygon_complete_on_complete_metric_is_identity() {
        let inst = Instance::from_fn("m", 4, |_, _| 1i64);
        let mut pg = PartialGraph::new(4);
        for u in 0..4 {
            for v in 0..4 {
                if u != v {
                    pg.add_edge(u, v, 1i64).unwrap();
                }
            }
        }
        let done = polygon_complete(&pg).unwrap();
        assert_eq!(done, inst);
    }

    #[test]
    fn polygon_complete_fills_missing_edges_with_path_costs() {
        let mut pg = PartialGraph::new(3);
        pg.add_symmetric(0, 1, 2i64).unwrap();
        pg.add_symmetric(1, 2, 3i64).unwrap();
        let done = polygon_complete(&pg).unwrap();
        assert_eq!(done.c(0, 2), 5);
        assert_eq!(done.c(0, 1), 2);
        assert!(done.verify_metric(1).is_empty());
        // cheapest paths over the original edges stay cheapest: the
        // completed instance is its own closure
        assert_eq!(metric_closure(&done), done);
    }

    #[test]
    fn polygon_complete_rejects_disconnected() {
        let mut pg = PartialGraph::new(3);
        pg.add_edge(0, 1, 1i64).unwrap();
        pg.add_edge(1, 0, 1i64).unwrap();
        assert!(polygon_complete(&pg).is_err());
    }

    #[test]
    fn polygon_complete_rejects_violations_with_witness() {
        let mut pg = PartialGraph::new(3);
        pg.add_symmetric(0, 1, 1i64).unwrap();
        pg.add_symmetric(1, 2, 1i64).unwrap();
        pg.add_symmetric(0, 2, 5i64).unwrap();
        let err = polygon_complete(&pg).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("polygon"), "unexpected message: {}", msg);
    }
}
