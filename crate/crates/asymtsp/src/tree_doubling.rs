//! Tree doubling generalized to metric ATSP: remove the (beta-)one-way edges
//! from a minimum spanning arborescence, contract the remaining components to
//! a meta-graph, solve that exactly, and stitch the meta-tour together with
//! per-component spanning paths built by adjusted tree doubling. Also the
//! induced-subgraph kernelization on one representative per component.

use crate::exact::{eulerian_trail, held_karp_limited, Multigraph, DEFAULT_EXACT_LIMIT};
use crate::instance::{tour_cost, Instance, Tour, Trail};
use crate::metric::{contract, metric_shortcut, MetaGraph, Partition};
use crate::spanning::{
    msa, one_way_edges, split_components, validate_injected_arborescence, Arborescence, Component,
    ComponentForest,
};
use crate::weight::{Beta, Frac, Weight};
use crate::{Error, Result};

/// Spanning path through a component tree from `v_in` to `v_out`: the unique
/// tree path between them stays single, every other edge is doubled, and the
/// resulting Eulerian trail is shortcut with pinned endpoints. With
/// `v_in == v_out` the whole tree is doubled and the closed circuit is
/// opened at that vertex.
pub fn adjusted_tree_doubling(component: &Component, v_in: usize, v_out: usize) -> Result<Vec<usize>> {
    if !component.vertices.contains(&v_in) || !component.vertices.contains(&v_out) {
        return Err(Error::validation("path endpoints outside the component"));
    }
    if component.vertices.len() == 1 {
        return Ok(vec![v_in]);
    }
    let verts = &component.vertices;
    let mut local = std::collections::HashMap::new();
    for (i, &v) in verts.iter().enumerate() {
        local.insert(v, i);
    }
    let m = verts.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); m];
    for &(u, v) in &component.edges {
        adj[local[&u]].push(local[&v]);
        adj[local[&v]].push(local[&u]);
    }
    // unique tree path from v_in to v_out
    let (lin, lout) = (local[&v_in], local[&v_out]);
    let mut parent = vec![usize::MAX; m];
    let mut stack = vec![lin];
    parent[lin] = lin;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if parent[y] == usize::MAX {
                parent[y] = x;
                stack.push(y);
            }
        }
    }
    let mut on_path = vec![false; m];
    let mut path_edges: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    {
        let mut cur = lout;
        on_path[cur] = true;
        while cur != lin {
            let p = parent[cur];
            path_edges.insert((p.min(cur), p.max(cur)));
            on_path[p] = true;
            cur = p;
        }
    }
    let mut mg = Multigraph::new(m);
    for &(u, v) in &component.edges {
        let (a, b) = (local[&u], local[&v]);
        mg.add_edge(a, b);
        if !path_edges.contains(&(a.min(b), a.max(b))) {
            mg.add_edge(a, b);
        }
    }
    let walk = eulerian_trail(&mg, lin, lout)?;
    let pinned = lin != lout;
    let path = metric_shortcut(&Trail::open(walk.vertices), pinned);
    let out: Vec<usize> = path.vertices.into_iter().map(|i| verts[i]).collect();
    debug_assert_eq!(out.len(), m, "spanning path must cover the component");
    debug_assert_eq!(out[0], v_in);
    if pinned {
        debug_assert_eq!(*out.last().unwrap(), v_out);
    }
    Ok(out)
}

/// Everything the solver decided along the way, kept for reporting.
#[derive(Debug, Clone)]
pub struct Plan<W> {
    pub arborescence: Arborescence<W>,
    pub forest: ComponentForest,
    pub meta: MetaGraph<W>,
    pub meta_tour: Tour,
    /// (v_in, v_out) per component, indexed like `forest.components`.
    pub endpoints: Vec<(usize, usize)>,
    /// Number of removed (beta-)one-way edges.
    pub parameter_k: usize,
    pub beta: Beta,
}

/// Outcome of an end-to-end run.
#[derive(Debug, Clone)]
pub struct Run<W> {
    pub plan: Plan<W>,
    pub tour: Tour,
    pub cost: W,
}

fn require_metric<W: Weight>(instance: &Instance<W>) -> Result<()> {
    if let Some((u, v, w)) = instance.check_metric(1).first().copied() {
        return Err(Error::NotMetric(u, v, w));
    }
    Ok(())
}

/// Closed tree-doubling circuit of a component, opened at `at`.
fn closed_doubling_cycle(component: &Component, at: usize) -> Result<Vec<usize>> {
    adjusted_tree_doubling(component, at, at)
}

/// Where the arborescence comes from.
#[derive(Debug, Clone, Copy)]
pub enum ArbSource<'a, W> {
    /// Compute an MSA rooted at the given vertex.
    Root(usize),
    /// Compute MSAs for all roots and keep the cheapest.
    BestRoot,
    /// Externally supplied; validated for spanning and minimality.
    Injected(&'a Arborescence<W>),
    /// Externally supplied and already validated by the caller.
    Trusted(&'a Arborescence<W>),
}

/// The generalized tree-doubling solver. With no (beta-)one-way edges this
/// degenerates to plain tree doubling of the arborescence rooted wherever
/// the arborescence is rooted; otherwise the components left by removing
/// those edges are contracted, the meta-graph solved exactly, and the
/// component paths stitched along the meta-tour. Cost is at most (2 + beta)
/// times the optimum (3 at beta = 1 counting both directions of tree edges).
pub fn solve<W: Weight>(
    instance: &Instance<W>,
    beta: &Beta,
    arb_source: ArbSource<W>,
    kernel_limit: usize,
    zero_substitute: Option<&Frac>,
) -> Result<Run<W>> {
    require_metric(instance)?;
    let arb = match arb_source {
        ArbSource::Root(root) => msa(instance, root)?,
        ArbSource::BestRoot => crate::spanning::msa_best_root(instance)?,
        ArbSource::Injected(a) => {
            validate_injected_arborescence(instance, a)?;
            a.clone()
        }
        ArbSource::Trusted(a) => a.clone(),
    };
    let removed = one_way_edges(instance, &arb, beta, zero_substitute);
    let k = removed.len();
    if k + 1 > kernel_limit {
        return Err(Error::Capacity { size: k + 1, limit: kernel_limit });
    }
    let forest = split_components(&arb, &removed)?;
    let (meta, meta_tour, endpoints, order);
    if k == 0 {
        let comp = &forest.components[0];
        meta = contract(instance, &Partition::new(instance.n(), vec![comp.vertices.clone()])?)?;
        meta_tour = Tour::new(vec![0]);
        endpoints = vec![(arb.root(), arb.root())];
        order = closed_doubling_cycle(comp, arb.root())?;
    } else {
        let partition = Partition::new(
            instance.n(),
            forest.components.iter().map(|c| c.vertices.clone()).collect(),
        )?;
        meta = contract(instance, &partition)?;
        let (mt, _) = held_karp_limited(meta.instance(), kernel_limit)?;
        // cheapest cross edge between consecutive components; ties toward
        // the smallest (source, target) pair
        let seq = mt.order();
        let mut eps = vec![(usize::MAX, usize::MAX); forest.components.len()];
        for i in 0..seq.len() {
            let (ci, cj) = (seq[i], seq[(i + 1) % seq.len()]);
            let mut best: Option<(W, usize, usize)> = None;
            for &s in &forest.components[ci].vertices {
                for &t in &forest.components[cj].vertices {
                    let c = instance.c(s, t);
                    let better = match &best {
                        None => true,
                        Some((bc, bs, bt)) => {
                            c < *bc || (c == *bc && (s, t) < (*bs, *bt))
                        }
                    };
                    if better {
                        best = Some((c, s, t));
                    }
                }
            }
            let (_, s, t) = best.unwrap();
            eps[ci].1 = s; // v_out of the source component
            eps[cj].0 = t; // v_in of the target component
        }
        let mut walk = Vec::with_capacity(instance.n());
        for &ci in seq {
            let (v_in, v_out) = (eps[ci].0, eps[ci].1);
            let chi = adjusted_tree_doubling(&forest.components[ci], v_in, v_out)?;
            walk.extend(chi);
        }
        meta_tour = mt;
        endpoints = eps;
        order = metric_shortcut(&Trail::closed(walk), false).vertices;
    }
    let tour = Tour::new(order);
    tour.validate(instance.n())?;
    let cost = tour_cost(instance, &tour)?;
    // component paths never cost more than both directions of the kept edges
    debug_assert!({
        let mut both = W::zero();
        for comp in &forest.components {
            for &(u, v) in &comp.edges {
                both = both + instance.c(u, v) + instance.c(v, u);
            }
        }
        let mut cross = W::zero();
        let seq = meta_tour.order();
        for i in 0..seq.len() {
            if seq.len() > 1 {
                cross = cross + meta.instance().c(seq[i], seq[(i + 1) % seq.len()]);
            }
        }
        cost.clone() <= both + cross
    });
    Ok(Run {
        plan: Plan {
            arborescence: arb,
            forest,
            meta,
            meta_tour,
            endpoints,
            parameter_k: k,
            beta: beta.clone(),
        },
        tour,
        cost,
    })
}

/// [`solve`] with root 0, the default Held-Karp cap, and no injections.
pub fn solve_default<W: Weight>(instance: &Instance<W>, beta: &Beta) -> Result<Run<W>> {
    solve(instance, beta, ArbSource::Root(0), DEFAULT_EXACT_LIMIT, None)
}

/// Representative choice for the kernelization.
#[derive(Debug, Clone)]
pub enum RepMode<'a> {
    /// Lowest-index vertex of each component.
    Lowest,
    /// Externally supplied, one per component.
    Injected(&'a [usize]),
}

/// The induced-subgraph kernel: one representative per component, metric by
/// induction, of size parameter_k + 1.
#[derive(Debug, Clone)]
pub struct Kernel<W> {
    /// One vertex per component, in component order.
    pub representatives: Vec<usize>,
    pub kernel_instance: Instance<W>,
    pub forest: ComponentForest,
    pub parameter_k: usize,
}

/// Build the kernel for a given arborescence: remove the (beta-)one-way
/// edges, keep one representative per remaining component, and induce.
pub fn kernelize<W: Weight>(
    instance: &Instance<W>,
    arb: &Arborescence<W>,
    beta: &Beta,
    rep_mode: RepMode,
    zero_substitute: Option<&Frac>,
) -> Result<Kernel<W>> {
    require_metric(instance)?;
    if arb.n() != instance.n() {
        return Err(Error::validation("arborescence does not span the instance"));
    }
    let removed = one_way_edges(instance, arb, beta, zero_substitute);
    let forest = split_components(arb, &removed)?;
    let representatives: Vec<usize> = match rep_mode {
        RepMode::Lowest => forest.components.iter().map(|c| c.vertices[0]).collect(),
        RepMode::Injected(reps) => {
            if reps.len() != forest.components.len() {
                return Err(Error::validation(format!(
                    "{} representatives for {} components",
                    reps.len(),
                    forest.components.len()
                )));
            }
            for (i, comp) in forest.components.iter().enumerate() {
                if !comp.vertices.contains(&reps[i]) {
                    return Err(Error::validation(format!(
                        "representative {} is not in component {}",
                        reps[i], i
                    )));
                }
            }
            reps.to_vec()
        }
    };
    let kernel_instance = instance.induced(&representatives);
    Ok(Kernel { representatives, kernel_instance, parameter_k: removed.len(), forest })
}

/// Lift a kernel tour by replacing each representative with the closed
/// tree-doubling cycle of its component, opened at the representative. Adds
/// at most twice the optimum to the kernel tour's ratio.
pub fn lift<W: Weight>(instance: &Instance<W>, kernel: &Kernel<W>, kernel_tour: &Tour) -> Result<Tour> {
    kernel_tour.validate(kernel.kernel_instance.n())?;
    let mut walk = Vec::with_capacity(instance.n());
    for &ki in kernel_tour.order() {
        let rep = kernel.representatives[ki];
        walk.extend(closed_doubling_cycle(&kernel.forest.components[ki], rep)?);
    }
    let tour = Tour::new(metric_shortcut(&Trail::closed(walk), false).vertices);
    tour.validate(instance.n())?;
    Ok(tour)
}
