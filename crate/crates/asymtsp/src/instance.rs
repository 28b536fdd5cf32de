//! Core data types: dense ATSP instances, tours, trails, and the asymmetry
//! statistics used to classify instances and drive beta relaxation.

use std::sync::OnceLock;

use crate::weight::{Beta, Frac, Weight};
use crate::{Error, Result};

/// A complete directed ATSP instance as a dense n-by-n cost matrix with a
/// zero diagonal. Immutable after construction; the metric flag is a lazily
/// computed cache, so sharing across threads is safe.
#[derive(Debug)]
pub struct Instance<W> {
    name: String,
    n: usize,
    cost: Vec<W>,
    metric: OnceLock<bool>,
}

impl<W: Clone> Clone for Instance<W> {
    fn clone(&self) -> Self {
        let metric = OnceLock::new();
        if let Some(&m) = self.metric.get() {
            let _ = metric.set(m);
        }
        Instance { name: self.name.clone(), n: self.n, cost: self.cost.clone(), metric }
    }
}

impl<W: PartialEq> PartialEq for Instance<W> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.cost == other.cost
    }
}

impl<W: Weight> Instance<W> {
    /// Build an instance from a square matrix. Entries must be non-negative
    /// and the diagonal exactly zero.
    pub fn from_matrix(name: impl Into<String>, rows: Vec<Vec<W>>) -> Result<Instance<W>> {
        let n = rows.len();
        let mut cost = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::validation(format!(
                    "row {} has {} entries, expected {}",
                    i,
                    row.len(),
                    n
                )));
            }
            for (j, w) in row.into_iter().enumerate() {
                if w < W::zero() {
                    return Err(Error::validation(format!("negative cost at ({}, {})", i, j)));
                }
                if i == j && !w.is_zero() {
                    return Err(Error::validation(format!("non-zero diagonal at {}", i)));
                }
                cost.push(w);
            }
        }
        Ok(Instance { name: name.into(), n, cost, metric: OnceLock::new() })
    }

    /// Build from a cost function; the diagonal is forced to zero.
    pub fn from_fn(name: impl Into<String>, n: usize, mut f: impl FnMut(usize, usize) -> W) -> Instance<W> {
        let mut cost = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                cost.push(if u == v { W::zero() } else { f(u, v) });
            }
        }
        Instance { name: name.into(), n, cost, metric: OnceLock::new() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Cost of the directed edge (u, v), cloned out of the matrix.
    #[inline]
    pub fn c(&self, u: usize, v: usize) -> W {
        self.cost[u * self.n + v].clone()
    }

    #[inline]
    pub fn cost_ref(&self, u: usize, v: usize) -> &W {
        &self.cost[u * self.n + v]
    }

    /// Tri-state metric flag: `None` until checked, then the cached verdict.
    pub fn metric_checked(&self) -> Option<bool> {
        self.metric.get().copied()
    }

    pub(crate) fn mark_metric(&self) {
        let _ = self.metric.set(true);
    }

    /// True iff the triangle inequality holds; cached after the first scan.
    pub fn is_metric(&self) -> bool {
        *self.metric.get_or_init(|| self.find_violations(1).is_empty())
    }

    fn find_violations(&self, max: usize) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        if max == 0 {
            return out;
        }
        let n = self.n;
        for u in 0..n {
            for v in 0..n {
                if v == u {
                    continue;
                }
                let uv = self.cost_ref(u, v);
                for w in 0..n {
                    if w == u || w == v {
                        continue;
                    }
                    if &(uv.clone() + self.c(v, w)) < self.cost_ref(u, w) {
                        out.push((u, v, w));
                        if out.len() >= max {
                            return out;
                        }
                    }
                }
            }
        }
        out
    }

    /// Scan for triangle-inequality violations, returning up to
    /// `max_violations` witnesses `(u, v, w)` with `c(u,v) + c(v,w) < c(u,w)`.
    /// Also fills the metric cache.
    pub fn check_metric(&self, max_violations: usize) -> Vec<(usize, usize, usize)> {
        if let Some(true) = self.metric.get() {
            return Vec::new();
        }
        self.verify_metric(max_violations)
    }

    /// Like [`check_metric`](Self::check_metric) but never trusts the cached
    /// flag: always rescans. Used to validate constructions that mark their
    /// output metric.
    pub fn verify_metric(&self, max_violations: usize) -> Vec<(usize, usize, usize)> {
        let found = self.find_violations(max_violations.max(1));
        let _ = self.metric.set(found.is_empty());
        if found.len() > max_violations {
            found.into_iter().take(max_violations).collect()
        } else {
            found
        }
    }

    /// Induced subinstance on `vertices` (original order preserved). A metric
    /// instance stays metric under vertex induction, so the cache carries over.
    pub fn induced(&self, vertices: &[usize]) -> Instance<W> {
        let inst = Instance::from_fn(format!("{}[{}]", self.name, vertices.len()), vertices.len(), |a, b| {
            self.c(vertices[a], vertices[b])
        });
        if let Some(true) = self.metric_checked() {
            inst.mark_metric();
        }
        inst
    }

    /// Instance with all edges reversed.
    pub fn transpose(&self) -> Instance<W> {
        let t = Instance::from_fn(self.name.clone(), self.n, |u, v| self.c(v, u));
        if let Some(true) = self.metric_checked() {
            t.mark_metric();
        }
        t
    }

    /// Largest cost in the matrix (zero for n <= 1).
    pub fn max_cost(&self) -> W {
        self.cost.iter().cloned().fold(W::zero(), |a, b| if b > a { b } else { a })
    }
}

/// A cyclic permutation of all vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tour {
    order: Vec<usize>,
}

impl Tour {
    pub fn new(order: Vec<usize>) -> Tour {
        Tour { order }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Check that this is a permutation of `0..n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        if self.order.len() != n {
            return Err(Error::validation(format!(
                "tour has {} vertices, instance has {}",
                self.order.len(),
                n
            )));
        }
        let mut seen = vec![false; n];
        for &v in &self.order {
            if v >= n {
                return Err(Error::validation(format!("tour vertex {} out of range", v)));
            }
            if seen[v] {
                return Err(Error::validation(format!("tour repeats vertex {}", v)));
            }
            seen[v] = true;
        }
        Ok(())
    }

    /// Rotate the cyclic order so it starts at `v`.
    pub fn rotated_to(&self, v: usize) -> Tour {
        let pos = self.order.iter().position(|&x| x == v).expect("vertex not on tour");
        let mut order = Vec::with_capacity(self.order.len());
        order.extend_from_slice(&self.order[pos..]);
        order.extend_from_slice(&self.order[..pos]);
        Tour { order }
    }

    /// Relabel through `map` (tour over subset indices -> original ids).
    pub fn mapped(&self, map: &[usize]) -> Tour {
        Tour { order: self.order.iter().map(|&i| map[i]).collect() }
    }
}

/// Sum of edge costs along the cyclic order. `n = 1` gives zero.
pub fn tour_cost<W: Weight>(instance: &Instance<W>, tour: &Tour) -> Result<W> {
    tour.validate(instance.n())?;
    let ord = tour.order();
    let n = ord.len();
    let mut total = W::zero();
    if n <= 1 {
        return Ok(total);
    }
    for i in 0..n {
        total = total + instance.c(ord[i], ord[(i + 1) % n]);
    }
    Ok(total)
}

/// A vertex sequence that may repeat vertices; `closed` means the last vertex
/// connects back to the first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trail {
    pub vertices: Vec<usize>,
    pub closed: bool,
}

impl Trail {
    pub fn open(vertices: Vec<usize>) -> Trail {
        Trail { vertices, closed: false }
    }

    pub fn closed(vertices: Vec<usize>) -> Trail {
        Trail { vertices, closed: true }
    }

    /// Directed cost of walking the trail (plus the closing edge if closed).
    pub fn cost<W: Weight>(&self, instance: &Instance<W>) -> W {
        let mut total = W::zero();
        for pair in self.vertices.windows(2) {
            total = total + instance.c(pair[0], pair[1]);
        }
        if self.closed && self.vertices.len() > 1 {
            total = total + instance.c(*self.vertices.last().unwrap(), self.vertices[0]);
        }
        total
    }

    /// Directed cost of walking the trail in reverse.
    pub fn reverse_cost<W: Weight>(&self, instance: &Instance<W>) -> W {
        let mut total = W::zero();
        for pair in self.vertices.windows(2) {
            total = total + instance.c(pair[1], pair[0]);
        }
        if self.closed && self.vertices.len() > 1 {
            total = total + instance.c(self.vertices[0], *self.vertices.last().unwrap());
        }
        total
    }
}

/// Asymmetry factor of a vertex pair: `max(c(u,v)/c(v,u), c(v,u)/c(u,v))`.
/// Zero costs make the ratio undefined unless a substitute is supplied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairFactor {
    Defined(Frac),
    /// The pair has unequal costs, one of them zero, and no substitute was
    /// given: asymmetric with an unbounded factor.
    Undefined,
}

/// Factor of the unordered pair `{u, v}`. Equal costs (including both-zero)
/// give the factor 1. `zero_substitute` replaces zero costs inside the ratio
/// only; the instance itself is never touched.
pub fn pair_factor<W: Weight>(
    instance: &Instance<W>,
    u: usize,
    v: usize,
    zero_substitute: Option<&Frac>,
) -> PairFactor {
    let a = instance.cost_ref(u, v);
    let b = instance.cost_ref(v, u);
    if a == b {
        return PairFactor::Defined(Frac::from_integer(1));
    }
    let fa = a.to_frac();
    let fb = b.to_frac();
    let (fa, fb) = match zero_substitute {
        Some(sub) => (
            if fa == Frac::from_integer(0) { *sub } else { fa },
            if fb == Frac::from_integer(0) { *sub } else { fb },
        ),
        None => {
            if fa == Frac::from_integer(0) || fb == Frac::from_integer(0) {
                return PairFactor::Undefined;
            }
            (fa, fb)
        }
    };
    let r1 = fa / fb;
    let r2 = fb / fa;
    PairFactor::Defined(if r1 > r2 { r1 } else { r2 })
}

/// Asymmetry statistics of an instance: what fraction of unordered pairs is
/// symmetric, the median and maximum factor over the asymmetric pairs, and
/// the fraction of zero-cost directed edges.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymmetryReport {
    pub symmetric_pair_fraction: Frac,
    /// Median factor over asymmetric pairs with a defined factor; `None` when
    /// no such pair exists.
    pub median_factor: Option<Frac>,
    pub max_factor: Option<Frac>,
    pub zero_cost_edge_fraction: Frac,
}

/// Compute the asymmetry statistics. Factors involving a zero cost are
/// excluded from median/max unless `zero_substitute` is given.
pub fn asymmetry_report<W: Weight>(instance: &Instance<W>, zero_substitute: Option<&Frac>) -> AsymmetryReport {
    let n = instance.n();
    let mut symmetric = 0i128;
    let mut total_pairs = 0i128;
    let mut zero_edges = 0i128;
    let mut factors: Vec<Frac> = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && instance.cost_ref(u, v).is_zero() {
                zero_edges += 1;
            }
        }
        for v in (u + 1)..n {
            total_pairs += 1;
            if instance.cost_ref(u, v) == instance.cost_ref(v, u) {
                symmetric += 1;
            } else if let PairFactor::Defined(f) = pair_factor(instance, u, v, zero_substitute) {
                factors.push(f);
            }
        }
    }
    factors.sort();
    let median = if factors.is_empty() {
        None
    } else {
        let m = factors.len();
        Some(if m % 2 == 1 {
            factors[m / 2]
        } else {
            (factors[m / 2 - 1] + factors[m / 2]) / Frac::from_integer(2)
        })
    };
    let max = factors.last().cloned();
    let directed_edges = (n as i128) * (n as i128 - 1);
    AsymmetryReport {
        symmetric_pair_fraction: if total_pairs == 0 {
            Frac::from_integer(1)
        } else {
            Frac::new(symmetric, total_pairs)
        },
        median_factor: median,
        max_factor: max,
        zero_cost_edge_fraction: if directed_edges == 0 {
            Frac::from_integer(0)
        } else {
            Frac::new(zero_edges, directed_edges)
        },
    }
}

/// Unordered pairs whose asymmetry factor strictly exceeds `beta`. A pair
/// with unequal costs and an undefined factor (zero cost, no substitute)
/// exceeds every finite beta. `beta = Infinite` yields the empty set.
pub fn beta_asymmetric_pairs<W: Weight>(
    instance: &Instance<W>,
    beta: &Beta,
    zero_substitute: Option<&Frac>,
) -> Vec<(usize, usize)> {
    let n = instance.n();
    let mut pairs = Vec::new();
    if beta.is_infinite() {
        return pairs;
    }
    for u in 0..n {
        for v in (u + 1)..n {
            if instance.cost_ref(u, v) == instance.cost_ref(v, u) {
                continue;
            }
            let exceeds = match pair_factor(instance, u, v, zero_substitute) {
                PairFactor::Defined(f) => beta.exceeded_by(&f),
                PairFactor::Undefined => true,
            };
            if exceeds {
                pairs.push((u, v));
            }
        }
    }
    pairs
}
