//! Spanning structures: minimum spanning arborescences (Chu-Liu/Edmonds),
//! one-way-edge identification, component splitting, and undirected MSTs on
//! vertex subsets.

use crate::instance::{pair_factor, Instance, PairFactor};
use crate::weight::{Beta, Frac, Weight};
use crate::{Error, Result};

/// A rooted directed spanning tree, edges oriented away from the root.
#[derive(Debug, Clone)]
pub struct Arborescence<W> {
    root: usize,
    parent: Vec<Option<usize>>,
    total_cost: W,
}

impl<W: Weight> Arborescence<W> {
    /// Build from a parent map and validate the tree structure against the
    /// instance: every non-root vertex has a parent, pointers are acyclic,
    /// and the total cost matches the instance.
    pub fn new(instance: &Instance<W>, root: usize, parent: Vec<Option<usize>>) -> Result<Arborescence<W>> {
        let n = instance.n();
        if root >= n {
            return Err(Error::validation(format!("root {} out of range", root)));
        }
        if parent.len() != n {
            return Err(Error::validation("parent map size mismatch"));
        }
        if parent[root].is_some() {
            return Err(Error::validation("root must not have a parent"));
        }
        let mut total = W::zero();
        for v in 0..n {
            if v == root {
                continue;
            }
            let Some(p) = parent[v] else {
                return Err(Error::validation(format!("vertex {} has no parent", v)));
            };
            if p >= n {
                return Err(Error::validation(format!("parent of {} out of range", v)));
            }
            total = total + instance.c(p, v);
        }
        // walk to the root from every vertex; cycles never reach it
        for v in 0..n {
            let mut cur = v;
            let mut steps = 0;
            while let Some(p) = parent[cur] {
                cur = p;
                steps += 1;
                if steps > n {
                    return Err(Error::validation("parent pointers contain a cycle"));
                }
            }
            if cur != root {
                return Err(Error::validation(format!("vertex {} does not reach the root", v)));
            }
        }
        Ok(Arborescence { root, parent, total_cost: total })
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn total_cost(&self) -> &W {
        &self.total_cost
    }

    /// Directed edges (parent, child), children in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (p, v)))
    }

    pub fn contains_edge(&self, u: usize, v: usize) -> bool {
        self.parent[v] == Some(u)
    }
}

struct LevelEdge<W> {
    u: usize,
    v: usize,
    w: W,
    orig: (usize, usize),
}

/// Chosen edge indices for one level of the contraction recursion.
fn chu_liu_level<W: Weight>(num_nodes: usize, root: usize, edges: &[LevelEdge<W>]) -> Result<Vec<usize>> {
    // cheapest incoming edge per node; ties prefer the smaller original (u, v)
    let mut best: Vec<Option<usize>> = vec![None; num_nodes];
    for (i, e) in edges.iter().enumerate() {
        if e.v == root || e.u == e.v {
            continue;
        }
        let better = match best[e.v] {
            None => true,
            Some(j) => {
                let other = &edges[j];
                e.w < other.w || (e.w == other.w && e.orig < other.orig)
            }
        };
        if better {
            best[e.v] = Some(i);
        }
    }
    for v in 0..num_nodes {
        if v != root && best[v].is_none() {
            return Err(Error::validation(format!("vertex {} has no incoming edge", v)));
        }
    }

    // find cycles in the functional graph v -> best-incoming tail
    let mut comp = vec![usize::MAX; num_nodes];
    let mut num_comps = 0usize;
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    {
        let mut stamp = vec![usize::MAX; num_nodes];
        let next = |v: usize| best[v].map(|i| edges[i].u);
        for start in 0..num_nodes {
            let mut v = start;
            while v != root && comp[v] == usize::MAX && stamp[v] != start {
                stamp[v] = start;
                match next(v) {
                    Some(u) => v = u,
                    None => break,
                }
            }
            if v != root && comp[v] == usize::MAX && stamp[v] == start {
                // closed a new cycle through v
                let mut cyc = vec![v];
                comp[v] = num_comps;
                let mut w = next(v).unwrap();
                while w != v {
                    comp[w] = num_comps;
                    cyc.push(w);
                    w = next(w).unwrap();
                }
                num_comps += 1;
                cycles.push(cyc);
            }
        }
    }

    if cycles.is_empty() {
        return Ok((0..num_nodes).filter(|&v| v != root).map(|v| best[v].unwrap()).collect());
    }

    // contract every cycle, keep remaining nodes as singletons
    for v in 0..num_nodes {
        if comp[v] == usize::MAX {
            comp[v] = num_comps;
            num_comps += 1;
        }
    }
    let mut sub_edges: Vec<LevelEdge<W>> = Vec::new();
    let mut parent_idx: Vec<usize> = Vec::new();
    let mut in_cycle = vec![false; num_nodes];
    for cyc in &cycles {
        for &v in cyc {
            in_cycle[v] = true;
        }
    }
    for (i, e) in edges.iter().enumerate() {
        let cu = comp[e.u];
        let cv = comp[e.v];
        if cu == cv {
            continue;
        }
        let w = if in_cycle[e.v] {
            e.w.clone() - edges[best[e.v].unwrap()].w.clone()
        } else {
            e.w.clone()
        };
        sub_edges.push(LevelEdge { u: cu, v: cv, w, orig: e.orig });
        parent_idx.push(i);
    }
    let chosen_sub = chu_liu_level(num_comps, comp[root], &sub_edges)?;

    let mut chosen: Vec<usize> = chosen_sub.iter().map(|&i| parent_idx[i]).collect();
    // inside each cycle keep every best edge except the one displaced by the
    // chosen entering edge
    let mut entered = vec![usize::MAX; num_comps];
    for &i in &chosen {
        let head = edges[i].v;
        if in_cycle[head] {
            entered[comp[head]] = head;
        }
    }
    for cyc in &cycles {
        let skip = entered[comp[cyc[0]]];
        debug_assert!(skip != usize::MAX, "contracted cycle never entered");
        for &v in cyc {
            if v != skip {
                chosen.push(best[v].unwrap());
            }
        }
    }
    Ok(chosen)
}

/// Minimum spanning arborescence rooted at `root` (Chu-Liu/Edmonds).
/// Deterministic: equal-cost candidates are resolved toward the smaller
/// original (u, v) pair.
pub fn msa<W: Weight>(instance: &Instance<W>, root: usize) -> Result<Arborescence<W>> {
    let n = instance.n();
    if root >= n {
        return Err(Error::validation(format!("root {} out of range for n = {}", root, n)));
    }
    if n == 1 {
        return Arborescence::new(instance, root, vec![None]);
    }
    let mut edges = Vec::with_capacity(n * (n - 1));
    for u in 0..n {
        for v in 0..n {
            if u != v && v != root {
                edges.push(LevelEdge { u, v, w: instance.c(u, v), orig: (u, v) });
            }
        }
    }
    let chosen = chu_liu_level(n, root, &edges)?;
    let mut parent = vec![None; n];
    for i in chosen {
        let (u, v) = edges[i].orig;
        debug_assert!(parent[v].is_none());
        parent[v] = Some(u);
    }
    Arborescence::new(instance, root, parent)
}

/// Minimum MSA cost over all roots; returns the arborescence for the best
/// root (ties toward the smaller root index).
pub fn msa_best_root<W: Weight>(instance: &Instance<W>) -> Result<Arborescence<W>> {
    let mut best: Option<Arborescence<W>> = None;
    for root in 0..instance.n() {
        let a = msa(instance, root)?;
        if best.as_ref().is_none_or(|b| a.total_cost() < b.total_cost()) {
            best = Some(a);
        }
    }
    best.ok_or_else(|| Error::validation("empty instance"))
}

/// Validate an externally supplied arborescence: it must span the instance
/// and be minimum (cost equal to a computed MSA for the same root).
pub fn validate_injected_arborescence<W: Weight>(
    instance: &Instance<W>,
    arb: &Arborescence<W>,
) -> Result<()> {
    if arb.n() != instance.n() {
        return Err(Error::validation("injected arborescence does not span the instance"));
    }
    let reference = msa(instance, arb.root())?;
    if reference.total_cost() != arb.total_cost() {
        return Err(Error::validation(format!(
            "injected arborescence cost {} is not minimum (msa cost {})",
            arb.total_cost(),
            reference.total_cost()
        )));
    }
    Ok(())
}

/// Arborescence edges (u, v) that are strictly cheaper than their reverse and
/// whose asymmetry factor exceeds `beta`. `beta = 1` gives the plain one-way
/// edges; the length of this list is the tree-doubling parameter. Zero-cost
/// forward edges have an unbounded factor unless `zero_substitute` is given.
pub fn one_way_edges<W: Weight>(
    instance: &Instance<W>,
    arb: &Arborescence<W>,
    beta: &Beta,
    zero_substitute: Option<&Frac>,
) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (u, v) in arb.edges() {
        if instance.cost_ref(u, v) >= instance.cost_ref(v, u) {
            continue;
        }
        let exceeds = match pair_factor(instance, u, v, zero_substitute) {
            PairFactor::Defined(f) => beta.exceeded_by(&f),
            PairFactor::Undefined => !beta.is_infinite(),
        };
        if exceeds {
            out.push((u, v));
        }
    }
    out
}

/// One tree of the forest left after edge removal. Edges keep their
/// arborescence orientation (parent, child) so the forward cost direction
/// stays available; structurally they are treated as undirected.
#[derive(Debug, Clone)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

/// Forest obtained by deleting `removed_edges` from an arborescence.
#[derive(Debug, Clone)]
pub struct ComponentForest {
    pub components: Vec<Component>,
    pub removed_edges: Vec<(usize, usize)>,
}

/// Split an arborescence into the components that remain after removing the
/// given edges. Components are sorted by their minimum vertex.
pub fn split_components<W: Weight>(arb: &Arborescence<W>, removed: &[(usize, usize)]) -> Result<ComponentForest> {
    for &(u, v) in removed {
        if !arb.contains_edge(u, v) {
            return Err(Error::validation(format!("removed edge ({}, {}) not in arborescence", u, v)));
        }
    }
    let n = arb.n();
    let removed_set: std::collections::HashSet<(usize, usize)> = removed.iter().copied().collect();
    let mut dsu = Dsu::new(n);
    for (u, v) in arb.edges() {
        if !removed_set.contains(&(u, v)) {
            dsu.union(u, v);
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Component> = std::collections::BTreeMap::new();
    for v in 0..n {
        groups.entry(dsu.find(v)).or_insert_with(|| Component { vertices: Vec::new(), edges: Vec::new() }).vertices.push(v);
    }
    for (u, v) in arb.edges() {
        if !removed_set.contains(&(u, v)) {
            groups.get_mut(&dsu.find(u)).unwrap().edges.push((u, v));
        }
    }
    let mut components: Vec<Component> = groups.into_values().collect();
    components.sort_by_key(|c| c.vertices[0]);
    debug_assert_eq!(components.len(), removed.len() + 1);
    Ok(ComponentForest { components, removed_edges: removed.to_vec() })
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, v: usize) -> usize {
        if self.parent[v] != v {
            let r = self.find(self.parent[v]);
            self.parent[v] = r;
        }
        self.parent[v]
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // keep the smaller root as representative
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Minimum spanning tree over `vertices` under a symmetric cost view
/// (Kruskal, ties toward the lexicographically smaller edge, which makes the
/// chosen edge set lexicographically smallest). Returns the edge list.
pub fn mst_undirected<W: Weight>(cost: impl Fn(usize, usize) -> W, vertices: &[usize]) -> Vec<(usize, usize)> {
    let m = vertices.len();
    if m <= 1 {
        return Vec::new();
    }
    let mut edges: Vec<(W, usize, usize)> = Vec::with_capacity(m * (m - 1) / 2);
    for i in 0..m {
        for j in (i + 1)..m {
            let (u, v) = (vertices[i], vertices[j]);
            edges.push((cost(u, v), u, v));
        }
    }
    edges.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut index_of = std::collections::HashMap::new();
    for (i, &v) in vertices.iter().enumerate() {
        index_of.insert(v, i);
    }
    let mut dsu = Dsu::new(m);
    let mut out = Vec::with_capacity(m - 1);
    for (_, u, v) in edges {
        if dsu.union(index_of[&u], index_of[&v]) {
            out.push((u, v));
            if out.len() == m - 1 {
                break;
            }
        }
    }
    out
}

/// Total cost of an undirected edge set under a symmetric cost view.
pub fn tree_cost<W: Weight>(cost: impl Fn(usize, usize) -> W, edges: &[(usize, usize)]) -> W {
    edges.iter().fold(W::zero(), |acc, &(u, v)| acc + cost(u, v))
}

/// Validate an externally supplied spanning tree over `vertices`: must be a
/// spanning tree and have minimum cost under the view.
pub fn validate_injected_mst<W: Weight>(
    cost: impl Fn(usize, usize) -> W + Copy,
    vertices: &[usize],
    tree: &[(usize, usize)],
) -> Result<()> {
    let m = vertices.len();
    if tree.len() + 1 != m.max(1) {
        return Err(Error::validation(format!(
            "injected tree has {} edges for {} vertices",
            tree.len(),
            m
        )));
    }
    let mut index_of = std::collections::HashMap::new();
    for (i, &v) in vertices.iter().enumerate() {
        index_of.insert(v, i);
    }
    let mut dsu = Dsu::new(m);
    for &(u, v) in tree {
        let (Some(&iu), Some(&iv)) = (index_of.get(&u), index_of.get(&v)) else {
            return Err(Error::validation(format!("injected tree edge ({}, {}) leaves the vertex set", u, v)));
        };
        if !dsu.union(iu, iv) {
            return Err(Error::validation("injected tree contains a cycle"));
        }
    }
    let reference = mst_undirected(cost, vertices);
    if tree_cost(cost, tree) != tree_cost(cost, &reference) {
        return Err(Error::validation("injected tree is not a minimum spanning tree"));
    }
    Ok(())
}
