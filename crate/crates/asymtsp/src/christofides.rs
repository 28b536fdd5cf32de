//! Christofides on symmetric metric (sub)instances, and the relaxed variant
//! that runs on the min-direction view of a moderately asymmetric subinstance
//! and keeps the cheaper traversal direction of the Eulerian circuit.

use crate::exact::{eulerian_trail, min_weight_perfect_matching, Multigraph};
use crate::instance::Instance;
use crate::spanning::{mst_undirected, validate_injected_mst};
use crate::weight::Weight;
use crate::{Error, Result};

/// MST + odd-degree matching + Eulerian circuit over `vertices`, returned as
/// the explicit closed walk (original vertex ids, starts and ends at the
/// smallest vertex).
fn euler_walk<W: Weight>(
    cost: impl Fn(usize, usize) -> W + Copy,
    vertices: &[usize],
    injected_mst: Option<&[(usize, usize)]>,
) -> Result<Vec<usize>> {
    let mut verts = vertices.to_vec();
    verts.sort_unstable();
    verts.dedup();
    if verts.len() != vertices.len() {
        return Err(Error::validation("duplicate vertices in subinstance"));
    }
    let m = verts.len();
    let tree: Vec<(usize, usize)> = match injected_mst {
        Some(t) => {
            validate_injected_mst(cost, &verts, t)?;
            t.to_vec()
        }
        None => mst_undirected(cost, &verts),
    };
    let mut local = std::collections::HashMap::new();
    for (i, &v) in verts.iter().enumerate() {
        local.insert(v, i);
    }
    let mut degree = vec![0usize; m];
    let mut mg = Multigraph::new(m);
    for &(u, v) in &tree {
        mg.add_edge(local[&u], local[&v]);
        degree[local[&u]] += 1;
        degree[local[&v]] += 1;
    }
    let odd: Vec<usize> = verts.iter().copied().filter(|v| degree[local[v]] % 2 == 1).collect();
    debug_assert!(odd.len().is_multiple_of(2), "odd-degree set of a tree has even size");
    let matching = min_weight_perfect_matching(cost, &odd)?;
    for &(u, v) in &matching.pairs {
        mg.add_edge(local[&u], local[&v]);
    }
    let start = 0; // smallest vertex: verts is sorted
    let walk = eulerian_trail(&mg, start, start)?;
    Ok(walk.vertices.into_iter().map(|i| verts[i]).collect())
}

/// Opens an explicit closed walk into a repeat-free cyclic order by keeping
/// first occurrences.
fn walk_to_cycle(walk: &[usize]) -> Vec<usize> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for &v in walk {
        if seen.insert(v) {
            out.push(v);
        }
    }
    out
}

/// Classic Christofides over a symmetric metric cost view: MST, minimum
/// matching on the odd-degree vertices, Eulerian circuit, metric shortcut.
/// Returns the cyclic vertex order; cost is at most 1.5 times the optimum of
/// the symmetric subinstance. An injected spanning tree is validated for
/// spanning and minimality.
pub fn christofides<W: Weight>(
    cost: impl Fn(usize, usize) -> W + Copy,
    vertices: &[usize],
    injected_mst: Option<&[(usize, usize)]>,
) -> Result<Vec<usize>> {
    match vertices.len() {
        0 => return Err(Error::validation("empty vertex set")),
        1 => return Ok(vec![vertices[0]]),
        2 => {
            let mut v = vertices.to_vec();
            v.sort_unstable();
            return Ok(v);
        }
        _ => {}
    }
    let walk = euler_walk(cost, vertices, injected_mst)?;
    let tour = walk_to_cycle(&walk);
    debug_assert!({
        // shortcutting never costs more than the circuit itself
        let circuit: W = walk.windows(2).fold(W::zero(), |acc, p| acc + cost(p[0], p[1]));
        let mut cyc = W::zero();
        for i in 0..tour.len() {
            cyc = cyc + cost(tour[i], tour[(i + 1) % tour.len()]);
        }
        cyc <= circuit
    });
    Ok(tour)
}

/// Relaxed Christofides for a beta-symmetric subinstance of a metric ATSP
/// instance: build the undirected min-direction view, run the Christofides
/// pipeline on it, evaluate the Eulerian circuit in the original directed
/// costs in both traversal directions, keep the cheaper one (ties go
/// forward), and only then take metric shortcuts in the original instance.
/// The min-direction view may be non-metric; the original instance is.
pub fn relaxed_christofides<W: Weight>(
    instance: &Instance<W>,
    vertices: &[usize],
    injected_mst: Option<&[(usize, usize)]>,
) -> Result<Vec<usize>> {
    match vertices.len() {
        0 => return Err(Error::validation("empty vertex set")),
        1 => return Ok(vec![vertices[0]]),
        2 => {
            let mut v = vertices.to_vec();
            v.sort_unstable();
            return Ok(v);
        }
        _ => {}
    }
    let min_view = |u: usize, v: usize| -> W {
        let a = instance.c(u, v);
        let b = instance.c(v, u);
        if a <= b {
            a
        } else {
            b
        }
    };
    let walk = euler_walk(min_view, vertices, injected_mst)?;
    let forward: W = walk.windows(2).fold(W::zero(), |acc, p| acc + instance.c(p[0], p[1]));
    let reverse: W = walk.windows(2).fold(W::zero(), |acc, p| acc + instance.c(p[1], p[0]));
    debug_assert!({
        // the cheaper direction costs at most (1+beta)/2 times the circuit
        // in the min view, with beta the actual worst pair ratio seen; a
        // zero-cost pair with an unequal reverse has an unbounded ratio and
        // makes the bound vacuous
        use crate::instance::{pair_factor, PairFactor};
        use crate::weight::Frac;
        let circuit: W = walk.windows(2).fold(W::zero(), |acc, p| acc + min_view(p[0], p[1]));
        let mut beta = Some(Frac::from_integer(1));
        for p in walk.windows(2) {
            match pair_factor(instance, p[0], p[1], None) {
                PairFactor::Defined(f) => {
                    if beta.as_ref().is_some_and(|b| &f > b) {
                        beta = Some(f);
                    }
                }
                PairFactor::Undefined => {
                    beta = None;
                    break;
                }
            }
        }
        match beta {
            None => true,
            Some(beta) => {
                let cheaper = if forward <= reverse { forward.clone() } else { reverse.clone() };
                cheaper.to_frac() * Frac::from_integer(2) <= circuit.to_frac() * (Frac::from_integer(1) + beta)
            }
        }
    });
    let chosen: Vec<usize> = if forward <= reverse {
        walk
    } else {
        walk.into_iter().rev().collect()
    };
    Ok(walk_to_cycle(&chosen))
}
