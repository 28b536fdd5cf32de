//! Exact minimum-weight perfect matching on dense complete graphs.
//!
//! The core is Galil's primal-dual blossom method in the formulation of
//! van Rantwijk's well-known `mwmatching` implementation (max-weight,
//! max-cardinality), run on negated integer weights. Costs are mapped onto
//! a common integer grid first, so rational inputs are handled exactly;
//! dual variables are kept pre-multiplied by two, which keeps all arithmetic
//! integral for integer weights.

use num_integer::Integer;

use crate::weight::{Frac, Weight};
use crate::{Error, Result};

/// A perfect matching over a vertex set: disjoint unordered pairs covering
/// every vertex, plus the total cost under the caller's cost view.
#[derive(Debug, Clone)]
pub struct Matching<W> {
    pub pairs: Vec<(usize, usize)>,
    pub total_cost: W,
}

/// Exact minimum-weight perfect matching over `vertices` under a symmetric
/// cost view. Errors when the vertex set has odd size.
pub fn min_weight_perfect_matching<W: Weight>(
    cost: impl Fn(usize, usize) -> W,
    vertices: &[usize],
) -> Result<Matching<W>> {
    let m = vertices.len();
    if !m.is_multiple_of(2) {
        return Err(Error::validation(format!(
            "perfect matching needs an even vertex set, got {}",
            m
        )));
    }
    if m == 0 {
        return Ok(Matching { pairs: Vec::new(), total_cost: W::zero() });
    }
    // exact integer grid: scale all pair costs by the lcm of denominators
    let mut fracs: Vec<Frac> = Vec::with_capacity(m * (m - 1) / 2);
    for i in 0..m {
        for j in (i + 1)..m {
            fracs.push(cost(vertices[i], vertices[j]).to_frac());
        }
    }
    let mut scale: i128 = 1;
    for f in &fracs {
        scale = scale.lcm(f.denom());
    }
    let ints: Vec<i128> = fracs.iter().map(|f| f.numer() * (scale / f.denom())).collect();
    let wmax = ints.iter().copied().max().unwrap();
    // maximize sum of (wmax - cost) over perfect matchings = minimize cost
    let mut edges = Vec::with_capacity(ints.len());
    let mut idx = 0;
    for i in 0..m {
        for j in (i + 1)..m {
            edges.push((i, j, wmax - ints[idx]));
            idx += 1;
        }
    }
    let mate = max_weight_matching(m, &edges);
    let mut pairs = Vec::with_capacity(m / 2);
    let mut total = W::zero();
    for i in 0..m {
        match mate[i] {
            Some(j) => {
                if i < j {
                    pairs.push((vertices[i], vertices[j]));
                    total = total + cost(vertices[i], vertices[j]);
                }
            }
            None => {
                return Err(Error::validation(
                    "matching is not perfect (internal error on complete graph)",
                ))
            }
        }
    }
    Ok(Matching { pairs, total_cost: total })
}

const FREE: u8 = 0;
const S: u8 = 1;
const T: u8 = 2;
const BREADCRUMB: u8 = 5;

struct Matcher<'a> {
    nv: usize,
    edges: &'a [(usize, usize, i128)],
    endpoint: Vec<usize>,
    neighbend: Vec<Vec<usize>>,
    mate: Vec<Option<usize>>,
    label: Vec<u8>,
    labelend: Vec<Option<usize>>,
    inblossom: Vec<usize>,
    blossomparent: Vec<Option<usize>>,
    blossomchilds: Vec<Vec<usize>>,
    blossombase: Vec<Option<usize>>,
    blossomendps: Vec<Vec<usize>>,
    bestedge: Vec<Option<usize>>,
    blossombestedges: Vec<Option<Vec<usize>>>,
    unusedblossoms: Vec<usize>,
    dualvar: Vec<i128>,
    allowedge: Vec<bool>,
    queue: Vec<usize>,
}

/// Maximum-weight maximum-cardinality matching; returns `mate[v]` as the
/// partner vertex. Deterministic for a fixed edge order.
fn max_weight_matching(nv: usize, edges: &[(usize, usize, i128)]) -> Vec<Option<usize>> {
    let ne = edges.len();
    if nv == 0 || ne == 0 {
        return vec![None; nv];
    }
    let maxweight = edges.iter().map(|e| e.2).max().unwrap().max(0);
    let mut endpoint = Vec::with_capacity(2 * ne);
    for &(i, j, _) in edges {
        endpoint.push(i);
        endpoint.push(j);
    }
    let mut neighbend: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (k, &(i, j, _)) in edges.iter().enumerate() {
        neighbend[i].push(2 * k + 1);
        neighbend[j].push(2 * k);
    }
    let mut st = Matcher {
        nv,
        edges,
        endpoint,
        neighbend,
        mate: vec![None; nv],
        label: vec![FREE; 2 * nv],
        labelend: vec![None; 2 * nv],
        inblossom: (0..nv).collect(),
        blossomparent: vec![None; 2 * nv],
        blossomchilds: vec![Vec::new(); 2 * nv],
        blossombase: (0..nv).map(Some).chain((0..nv).map(|_| None)).collect(),
        blossomendps: vec![Vec::new(); 2 * nv],
        bestedge: vec![None; 2 * nv],
        blossombestedges: vec![None; 2 * nv],
        unusedblossoms: (nv..2 * nv).collect(),
        dualvar: std::iter::repeat_n(maxweight, nv).chain(std::iter::repeat_n(0, nv)).collect(),
        allowedge: vec![false; ne],
        queue: Vec::new(),
    };
    st.run();
    let mut out = vec![None; nv];
    for v in 0..nv {
        if let Some(p) = st.mate[v] {
            out[v] = Some(st.endpoint[p]);
        }
    }
    out
}

impl<'a> Matcher<'a> {
    /// 2 * slack of edge k (does not work inside blossoms).
    fn slack(&self, k: usize) -> i128 {
        let (i, j, wt) = self.edges[k];
        self.dualvar[i] + self.dualvar[j] - 2 * wt
    }

    fn blossom_leaves(&self, b: usize, out: &mut Vec<usize>) {
        if b < self.nv {
            out.push(b);
        } else {
            for &t in &self.blossomchilds[b] {
                self.blossom_leaves(t, out);
            }
        }
    }

    fn leaves(&self, b: usize) -> Vec<usize> {
        let mut out = Vec::new();
        self.blossom_leaves(b, &mut out);
        out
    }

    fn assign_label(&mut self, w: usize, t: u8, p: Option<usize>) {
        let b = self.inblossom[w];
        debug_assert!(self.label[w] == FREE && self.label[b] == FREE);
        self.label[w] = t;
        self.label[b] = t;
        self.labelend[w] = p;
        self.labelend[b] = p;
        self.bestedge[w] = None;
        self.bestedge[b] = None;
        if t == S {
            self.queue.extend(self.leaves(b));
        } else if t == T {
            let base = self.blossombase[b].unwrap();
            let mate_p = self.mate[base].expect("T-labeled blossom base must be matched");
            self.assign_label(self.endpoint[mate_p], S, Some(mate_p ^ 1));
        }
    }

    /// Trace back from both endpoints of an edge joining two S-blossoms;
    /// returns the common ancestor base vertex, or None if the paths hit two
    /// different roots (an augmenting path exists).
    fn scan_blossom(&mut self, v: usize, w: usize) -> Option<usize> {
        let mut path = Vec::new();
        let mut base = None;
        let mut v = Some(v);
        let mut w = Some(w);
        while v.is_some() || w.is_some() {
            let vv = v.unwrap();
            let b = self.inblossom[vv];
            if self.label[b] & 4 != 0 {
                base = self.blossombase[b];
                break;
            }
            debug_assert_eq!(self.label[b], S);
            path.push(b);
            self.label[b] = BREADCRUMB;
            debug_assert_eq!(self.labelend[b], self.mate[self.blossombase[b].unwrap()]);
            match self.labelend[b] {
                None => v = None,
                Some(le) => {
                    let t = self.endpoint[le];
                    let bt = self.inblossom[t];
                    debug_assert_eq!(self.label[bt], T);
                    let le2 = self.labelend[bt].expect("T-blossom has a label end");
                    v = Some(self.endpoint[le2]);
                }
            }
            if w.is_some() {
                std::mem::swap(&mut v, &mut w);
            }
        }
        for b in path {
            self.label[b] = S;
        }
        base
    }

    /// Construct a new blossom with the given base through edge k, which
    /// connects two S-blossoms.
    fn add_blossom(&mut self, base: usize, k: usize) {
        let (mut v, mut w, _) = self.edges[k];
        let bb = self.inblossom[base];
        let mut bv = self.inblossom[v];
        let mut bw = self.inblossom[w];
        let b = self.unusedblossoms.pop().expect("ran out of blossom slots");
        self.blossombase[b] = Some(base);
        self.blossomparent[b] = None;
        self.blossomparent[bb] = Some(b);
        let mut path = Vec::new();
        let mut endps = Vec::new();
        while bv != bb {
            self.blossomparent[bv] = Some(b);
            path.push(bv);
            endps.push(self.labelend[bv].unwrap());
            v = self.endpoint[self.labelend[bv].unwrap()];
            bv = self.inblossom[v];
        }
        path.push(bb);
        path.reverse();
        endps.reverse();
        endps.push(2 * k);
        while bw != bb {
            self.blossomparent[bw] = Some(b);
            path.push(bw);
            endps.push(self.labelend[bw].unwrap() ^ 1);
            w = self.endpoint[self.labelend[bw].unwrap()];
            bw = self.inblossom[w];
        }
        debug_assert_eq!(self.label[bb], S);
        self.blossomchilds[b] = path.clone();
        self.blossomendps[b] = endps;
        self.label[b] = S;
        self.labelend[b] = self.labelend[bb];
        self.dualvar[b] = 0;
        for leaf in self.leaves(b) {
            if self.label[self.inblossom[leaf]] == T {
                self.queue.push(leaf);
            }
            self.inblossom[leaf] = b;
        }
        // compute the least-slack edges to neighboring S-blossoms
        let mut bestedgeto: Vec<Option<usize>> = vec![None; 2 * self.nv];
        for &bv in &path {
            let nblists: Vec<Vec<usize>> = match &self.blossombestedges[bv] {
                Some(lst) => vec![lst.clone()],
                None => self
                    .leaves(bv)
                    .into_iter()
                    .map(|leaf| self.neighbend[leaf].iter().map(|&p| p / 2).collect())
                    .collect(),
            };
            for nblist in nblists {
                for k2 in nblist {
                    let (mut i, mut j, _) = self.edges[k2];
                    if self.inblossom[j] == b {
                        std::mem::swap(&mut i, &mut j);
                    }
                    let _ = i;
                    let bj = self.inblossom[j];
                    if bj != b
                        && self.label[bj] == S
                        && (bestedgeto[bj].is_none() || self.slack(k2) < self.slack(bestedgeto[bj].unwrap()))
                    {
                        bestedgeto[bj] = Some(k2);
                    }
                }
            }
            self.blossombestedges[bv] = None;
            self.bestedge[bv] = None;
        }
        let best_list: Vec<usize> = bestedgeto.into_iter().flatten().collect();
        self.bestedge[b] = None;
        for &k2 in &best_list {
            if self.bestedge[b].is_none() || self.slack(k2) < self.slack(self.bestedge[b].unwrap()) {
                self.bestedge[b] = Some(k2);
            }
        }
        self.blossombestedges[b] = Some(best_list);
    }

    /// Expand a blossom; during a stage this relabels its sub-blossoms, at
    /// end-stage it simply dissolves zero-dual S-blossoms.
    fn expand_blossom(&mut self, b: usize, endstage: bool) {
        let childs = self.blossomchilds[b].clone();
        for &s in &childs {
            self.blossomparent[s] = None;
            if s < self.nv {
                self.inblossom[s] = s;
            } else if endstage && self.dualvar[s] == 0 {
                self.expand_blossom(s, endstage);
            } else {
                for leaf in self.leaves(s) {
                    self.inblossom[leaf] = s;
                }
            }
        }
        if !endstage && self.label[b] == T {
            let entrychild = self.inblossom[self.endpoint[self.labelend[b].unwrap() ^ 1]];
            let len = childs.len() as isize;
            let wrap = |j: isize| -> usize { (((j % len) + len) % len) as usize };
            let mut j = childs.iter().position(|&c| c == entrychild).unwrap() as isize;
            let (jstep, endptrick): (isize, usize) = if j & 1 != 0 {
                j -= len;
                (1, 0)
            } else {
                (-1, 1)
            };
            let mut p = self.labelend[b].unwrap();
            while j != 0 {
                // relabel the T-sub-blossom
                self.label[self.endpoint[p ^ 1]] = FREE;
                let ep = self.blossomendps[b][wrap(j - endptrick as isize)] ^ endptrick ^ 1;
                self.label[self.endpoint[ep]] = FREE;
                self.assign_label(self.endpoint[p ^ 1], T, Some(p));
                // step to the next S-sub-blossom and note its forward endpoint
                self.allowedge[self.blossomendps[b][wrap(j - endptrick as isize)] / 2] = true;
                j += jstep;
                p = self.blossomendps[b][wrap(j - endptrick as isize)] ^ endptrick;
                // step to the next T-sub-blossom
                self.allowedge[p / 2] = true;
                j += jstep;
            }
            // relabel the base T-sub-blossom without stepping to its mate
            let bv = childs[wrap(j)];
            self.label[self.endpoint[p ^ 1]] = T;
            self.label[bv] = T;
            self.labelend[self.endpoint[p ^ 1]] = Some(p);
            self.labelend[bv] = Some(p);
            self.bestedge[bv] = None;
            // continue along the blossom until we get back to entrychild
            j += jstep;
            while childs[wrap(j)] != entrychild {
                let bv = childs[wrap(j)];
                if self.label[bv] == S {
                    j += jstep;
                    continue;
                }
                let leaves = self.leaves(bv);
                let reached = leaves.iter().copied().find(|&v| self.label[v] != FREE);
                if let Some(v) = reached {
                    debug_assert_eq!(self.label[v], T);
                    debug_assert_eq!(self.inblossom[v], bv);
                    self.label[v] = FREE;
                    let base = self.blossombase[bv].unwrap();
                    self.label[self.endpoint[self.mate[base].unwrap()]] = FREE;
                    let le = self.labelend[v];
                    self.assign_label(v, T, le);
                }
                j += jstep;
            }
        }
        self.label[b] = FREE;
        self.labelend[b] = None;
        self.blossomchilds[b].clear();
        self.blossomendps[b].clear();
        self.blossombase[b] = None;
        self.blossombestedges[b] = None;
        self.bestedge[b] = None;
        self.unusedblossoms.push(b);
    }

    /// Swap matched and unmatched edges over the alternating path through
    /// blossom b between vertex v and the blossom base.
    fn augment_blossom(&mut self, b: usize, v: usize) {
        let mut t = v;
        while self.blossomparent[t] != Some(b) {
            t = self.blossomparent[t].unwrap();
        }
        if t >= self.nv {
            self.augment_blossom(t, v);
        }
        let childs = self.blossomchilds[b].clone();
        let len = childs.len() as isize;
        let wrap = |j: isize| -> usize { (((j % len) + len) % len) as usize };
        let i = childs.iter().position(|&c| c == t).unwrap() as isize;
        let mut j = i;
        let (jstep, endptrick): (isize, usize) = if i & 1 != 0 {
            j -= len;
            (1, 0)
        } else {
            (-1, 1)
        };
        while j != 0 {
            j += jstep;
            let t = childs[wrap(j)];
            let p = self.blossomendps[b][wrap(j - endptrick as isize)] ^ endptrick;
            if t >= self.nv {
                self.augment_blossom(t, self.endpoint[p]);
            }
            j += jstep;
            let t = childs[wrap(j)];
            if t >= self.nv {
                self.augment_blossom(t, self.endpoint[p ^ 1]);
            }
            self.mate[self.endpoint[p]] = Some(p ^ 1);
            self.mate[self.endpoint[p ^ 1]] = Some(p);
        }
        // rotate the child list so the new base is first
        let i = i as usize;
        self.blossomchilds[b].rotate_left(i);
        self.blossomendps[b].rotate_left(i);
        self.blossombase[b] = self.blossombase[self.blossomchilds[b][0]];
        debug_assert_eq!(self.blossombase[b], Some(v));
    }

    /// Augment the matching along the path through edge k.
    fn augment_matching(&mut self, k: usize) {
        let (v, w, _) = self.edges[k];
        for (mut s, mut p) in [(v, 2 * k + 1), (w, 2 * k)] {
            loop {
                let bs = self.inblossom[s];
                debug_assert_eq!(self.label[bs], S);
                debug_assert_eq!(self.labelend[bs], self.mate[self.blossombase[bs].unwrap()]);
                if bs >= self.nv {
                    self.augment_blossom(bs, s);
                }
                self.mate[s] = Some(p);
                match self.labelend[bs] {
                    None => break,
                    Some(le) => {
                        let t = self.endpoint[le];
                        let bt = self.inblossom[t];
                        debug_assert_eq!(self.label[bt], T);
                        let le2 = self.labelend[bt].unwrap();
                        s = self.endpoint[le2];
                        let j = self.endpoint[le2 ^ 1];
                        debug_assert_eq!(self.blossombase[bt], Some(t));
                        if bt >= self.nv {
                            self.augment_blossom(bt, j);
                        }
                        self.mate[j] = Some(le2);
                        p = le2 ^ 1;
                    }
                }
            }
        }
    }

    fn run(&mut self) {
        for _stage in 0..self.nv {
            self.label = vec![FREE; 2 * self.nv];
            self.bestedge = vec![None; 2 * self.nv];
            for b in self.nv..2 * self.nv {
                self.blossombestedges[b] = None;
            }
            self.allowedge = vec![false; self.edges.len()];
            self.queue.clear();
            for v in 0..self.nv {
                if self.mate[v].is_none() && self.label[self.inblossom[v]] == FREE {
                    self.assign_label(v, S, None);
                }
            }
            let mut augmented = false;
            loop {
                while let Some(v) = self.queue.pop() {
                    debug_assert_eq!(self.label[self.inblossom[v]], S);
                    for idx in 0..self.neighbend[v].len() {
                        let p = self.neighbend[v][idx];
                        let k = p / 2;
                        let w = self.endpoint[p];
                        if self.inblossom[v] == self.inblossom[w] {
                            continue;
                        }
                        let mut kslack = 0;
                        if !self.allowedge[k] {
                            kslack = self.slack(k);
                            if kslack <= 0 {
                                self.allowedge[k] = true;
                            }
                        }
                        if self.allowedge[k] {
                            if self.label[self.inblossom[w]] == FREE {
                                self.assign_label(w, T, Some(p ^ 1));
                            } else if self.label[self.inblossom[w]] == S {
                                match self.scan_blossom(v, w) {
                                    Some(base) => self.add_blossom(base, k),
                                    None => {
                                        self.augment_matching(k);
                                        augmented = true;
                                        break;
                                    }
                                }
                            } else if self.label[w] == FREE {
                                debug_assert_eq!(self.label[self.inblossom[w]], T);
                                self.label[w] = T;
                                self.labelend[w] = Some(p ^ 1);
                            }
                        } else if self.label[self.inblossom[w]] == S {
                            let b = self.inblossom[v];
                            if self.bestedge[b].is_none() || kslack < self.slack(self.bestedge[b].unwrap()) {
                                self.bestedge[b] = Some(k);
                            }
                        } else if self.label[w] == FREE
                            && (self.bestedge[w].is_none() || kslack < self.slack(self.bestedge[w].unwrap()))
                        {
                            self.bestedge[w] = Some(k);
                        }
                    }
                    if augmented {
                        break;
                    }
                }
                if augmented {
                    break;
                }
                // no augmenting path; update duals (values pre-doubled)
                let mut delta_type = 0u8;
                let mut delta: i128 = 0;
                let mut delta_edge = 0usize;
                let mut delta_blossom = 0usize;
                for v in 0..self.nv {
                    if self.label[self.inblossom[v]] == FREE {
                        if let Some(be) = self.bestedge[v] {
                            let d = self.slack(be);
                            if delta_type == 0 || d < delta {
                                delta = d;
                                delta_type = 2;
                                delta_edge = be;
                            }
                        }
                    }
                }
                for b in 0..2 * self.nv {
                    if self.blossomparent[b].is_none() && self.label[b] == S {
                        if let Some(be) = self.bestedge[b] {
                            let kslack = self.slack(be);
                            debug_assert!(kslack % 2 == 0, "S-S slack must be even");
                            let d = kslack / 2;
                            if delta_type == 0 || d < delta {
                                delta = d;
                                delta_type = 3;
                                delta_edge = be;
                            }
                        }
                    }
                }
                for b in self.nv..2 * self.nv {
                    if self.blossombase[b].is_some()
                        && self.blossomparent[b].is_none()
                        && self.label[b] == T
                        && (delta_type == 0 || self.dualvar[b] < delta)
                    {
                        delta = self.dualvar[b];
                        delta_type = 4;
                        delta_blossom = b;
                    }
                }
                if delta_type == 0 {
                    // max-cardinality optimum reached; final dual adjustment
                    delta_type = 1;
                    delta = self.dualvar[..self.nv].iter().copied().min().unwrap().max(0);
                }
                for v in 0..self.nv {
                    match self.label[self.inblossom[v]] {
                        x if x == S => self.dualvar[v] -= delta,
                        x if x == T => self.dualvar[v] += delta,
                        _ => {}
                    }
                }
                for b in self.nv..2 * self.nv {
                    if self.blossombase[b].is_some() && self.blossomparent[b].is_none() {
                        if self.label[b] == S {
                            self.dualvar[b] += delta;
                        } else if self.label[b] == T {
                            self.dualvar[b] -= delta;
                        }
                    }
                }
                match delta_type {
                    1 => break,
                    2 => {
                        self.allowedge[delta_edge] = true;
                        let (mut i, j, _) = self.edges[delta_edge];
                        if self.label[self.inblossom[i]] == FREE {
                            i = j;
                        }
                        debug_assert_eq!(self.label[self.inblossom[i]], S);
                        self.queue.push(i);
                    }
                    3 => {
                        self.allowedge[delta_edge] = true;
                        let (i, _, _) = self.edges[delta_edge];
                        debug_assert_eq!(self.label[self.inblossom[i]], S);
                        self.queue.push(i);
                    }
                    4 => self.expand_blossom(delta_blossom, false),
                    _ => unreachable!(),
                }
            }
            if !augmented {
                break;
            }
            for b in self.nv..2 * self.nv {
                if self.blossomparent[b].is_none()
                    && self.blossombase[b].is_some()
                    && self.label[b] == S
                    && self.dualvar[b] == 0
                {
                    self.expand_blossom(b, true);
                }
            }
        }
    }
}


#[cfg(test)]
mod large_tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    // necessary optimality condition checkable without enumeration: no
    // exchange of partners between two matched pairs may improve the cost
    #[test]
    fn no_improving_pair_swap_on_large_matchings() {
        for seed in 0..8u64 {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9_000 + seed);
            let m = 60;
            let mut table = vec![vec![0i64; m]; m];
            for i in 0..m {
                for j in (i + 1)..m {
                    let w = rng.random_range(0..=1000);
                    table[i][j] = w;
                    table[j][i] = w;
                }
            }
            let cost = |u: usize, v: usize| table[u][v];
            let verts: Vec<usize> = (0..m).collect();
            let got = min_weight_perfect_matching(cost, &verts).unwrap();
            assert_eq!(got.pairs.len(), m / 2);
            for x in 0..got.pairs.len() {
                for y in (x + 1)..got.pairs.len() {
                    let (a, b) = got.pairs[x];
                    let (c, d) = got.pairs[y];
                    let current = cost(a, b) + cost(c, d);
                    assert!(current <= cost(a, c) + cost(b, d), "seed {}: swap improves", seed);
                    assert!(current <= cost(a, d) + cost(b, c), "seed {}: swap improves", seed);
                }
            }
        }
    }
}

#[cfg(test)]
mod dp_oracle_tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    // subset-DP oracle reaches past enumeration range, deep into
    // blossom-forming territory
    #[test]
    fn matches_subset_dp_up_to_twenty_vertices() {
        for seed in 0..30u64 {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77_000 + seed);
            let m = 2 * rng.random_range(6..=10usize);
            let mut table = vec![vec![0i64; m]; m];
            for i in 0..m {
                for j in (i + 1)..m {
                    // small cost range forces plenty of ties and blossoms
                    let w = rng.random_range(0..=12);
                    table[i][j] = w;
                    table[j][i] = w;
                }
            }
            let cost = |u: usize, v: usize| table[u][v];
            let verts: Vec<usize> = (0..m).collect();
            let blossom = min_weight_perfect_matching(cost, &verts).unwrap().total_cost;
            let dp = crate::oracles::pairing_dp_cost(&cost, m);
            assert_eq!(blossom, dp, "seed {} m {}", seed, m);
        }
    }
}
