//! Instance construction: the two-cycle adversarial family with a zig-zag
//! inner path, the directed-cycle family, seeded random metric instances,
//! and the lift that embeds any instance as a minor of a metric one.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::instance::{tour_cost, Instance, Tour};
use crate::metric::{metric_closure, polygon_complete, PartialGraph, Partition};
use crate::spanning::Arborescence;
use crate::weight::{Frac, Weight};
use crate::{Error, Result};

/// Adversarial instance for the cover-kernelized Christofides solver: a gray
/// cycle (the intended cover) and a black cycle carrying a zig-zag path that
/// is the classic Christofides worst case. Alternating tours cost 2k; the
/// solver with the injected choices pays at least 5k - 3.
#[derive(Debug, Clone)]
pub struct GkFamily {
    pub instance: Instance<i64>,
    /// The k gray vertices, a minimum vertex cover of the asymmetric-pair
    /// graph.
    pub gray_cover: Vec<usize>,
    /// Zig-zag path over the black vertices, injectable as an MST of the
    /// black subinstance.
    pub zigzag_mst: Vec<(usize, usize)>,
    /// The alternating gray/black tour of cost 2k.
    pub optimal_tour: Tour,
    pub optimum: i64,
}

/// Build the 2k-vertex family member. Gray vertices are 0..k, black vertices
/// k..2k. Fails loudly if the construction does not yield optimum 2k.
pub fn gen_gk(k: usize) -> Result<GkFamily> {
    if k <= 2 {
        return Err(Error::validation(format!("family needs k >= 3, got {}", k)));
    }
    let gray = |i: usize| (i - 1) % k; // 1-based helpers
    let black = |i: usize| k + (i - 1) % k;
    let mut pg: PartialGraph<i64> = PartialGraph::new(2 * k);
    for i in 1..=k {
        // gray and black cycles, cost 2 both ways
        pg.add_symmetric(gray(i), gray(i + 1), 2)?;
        pg.add_symmetric(black(i), black(i + 1), 2)?;
        // cheap direction gray -> black, expensive back
        pg.add_edge(gray(i), black(i), 1)?;
        pg.add_edge(black(i), gray(i), 2)?;
        // symmetric cost-1 link to the next gray vertex
        pg.add_symmetric(black(i), gray(i + 1), 1)?;
    }
    // inner zig-zag path b_1, b_k, b_2, b_{k-1}, ...
    let mut zigzag_order = Vec::with_capacity(k);
    let (mut lo, mut hi) = (1usize, k);
    while lo <= hi {
        zigzag_order.push(lo);
        if hi != lo {
            zigzag_order.push(hi);
        }
        lo += 1;
        hi -= 1;
    }
    let mut zigzag_mst = Vec::with_capacity(k - 1);
    for w in zigzag_order.windows(2) {
        pg.add_symmetric(black(w[0]), black(w[1]), 2)?;
        zigzag_mst.push((black(w[0]), black(w[1])));
    }
    let mut instance = polygon_complete(&pg)?;
    instance.set_name(format!("gk-{}", k));

    let mut order = Vec::with_capacity(2 * k);
    for i in 1..=k {
        order.push(gray(i));
        order.push(black(i));
    }
    let optimal_tour = Tour::new(order);
    let optimum = tour_cost(&instance, &optimal_tour)?;
    if optimum != 2 * k as i64 {
        return Err(Error::validation(format!(
            "construction broken: alternating tour costs {}, expected {}",
            optimum,
            2 * k
        )));
    }
    // every edge costs at least 1, so no tour on 2k vertices beats 2k
    let inst = &instance;
    let min_edge = (0..2 * k)
        .flat_map(|u| (0..2 * k).filter(move |&v| v != u).map(move |v| inst.c(u, v)))
        .min()
        .unwrap();
    if min_edge < 1 {
        return Err(Error::validation("construction broken: zero-cost edge appeared"));
    }
    Ok(GkFamily {
        instance,
        gray_cover: (0..k).collect(),
        zigzag_mst,
        optimal_tour,
        optimum,
    })
}

/// Tightness family for the tree-doubling kernelization: a cost-1 cycle on
/// 2m vertices in which exactly two edges are one-way, completed by shortest
/// paths. Ships the arborescence that contains only one of the directed
/// edges and the representatives that force the lifted cost 6m - 4.
#[derive(Debug, Clone)]
pub struct CycleFamily {
    pub instance: Instance<i64>,
    pub arborescence: Arborescence<i64>,
    /// One representative per component: the last vertex of each half.
    pub representatives: [usize; 2],
    pub optimal_tour: Tour,
    pub optimum: i64,
}

pub fn gen_cycle_family(m: usize) -> Result<CycleFamily> {
    if m < 2 {
        return Err(Error::validation(format!("cycle family needs m >= 2, got {}", m)));
    }
    let n = 2 * m;
    let mut pg: PartialGraph<i64> = PartialGraph::new(n);
    for i in 0..n {
        let j = (i + 1) % n;
        if i == m - 1 || i == n - 1 {
            // the two one-way edges, each entering the first vertex of a half
            pg.add_edge(i, j, 1)?;
        } else {
            pg.add_symmetric(i, j, 1)?;
        }
    }
    let mut instance = polygon_complete(&pg)?;
    instance.set_name(format!("cycle-{}", m));

    // arborescence rooted at m: m -> m+1 -> ... -> n-1 -> 0 -> ... -> m-1,
    // which uses the one-way edge (n-1, 0) but not (m-1, m)
    let mut parent = vec![None; n];
    for j in (m + 1)..n {
        parent[j] = Some(j - 1);
    }
    parent[0] = Some(n - 1);
    for j in 1..m {
        parent[j] = Some(j - 1);
    }
    let arborescence = Arborescence::new(&instance, m, parent)?;
    crate::spanning::validate_injected_arborescence(&instance, &arborescence)?;

    let optimal_tour = Tour::new((0..n).collect());
    let optimum = tour_cost(&instance, &optimal_tour)?;
    if optimum != n as i64 {
        return Err(Error::validation(format!(
            "construction broken: cycle tour costs {}, expected {}",
            optimum, n
        )));
    }
    Ok(CycleFamily {
        instance,
        arborescence,
        representatives: [m - 1, n - 1],
        optimal_tour,
        optimum,
    })
}

/// Seeded random metric ATSP instance: symmetric base costs in 1..=100, each
/// direction independently inflated by up to `asymmetry_strength` of the
/// base, then closed under shortest paths. Strength zero gives a symmetric
/// metric instance; equal seeds give identical matrices.
pub fn gen_random_metric(n: usize, seed: u64, asymmetry_strength: Frac) -> Instance<i64> {
    assert!(asymmetry_strength >= Frac::from_integer(0), "strength must be non-negative");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cost = vec![0i64; n * n];
    for u in 0..n {
        for v in (u + 1)..n {
            let base: i64 = rng.random_range(1..=100);
            let cap = (Frac::from_integer(base as i128) * asymmetry_strength)
                .floor()
                .to_integer() as i64;
            cost[u * n + v] = base + rng.random_range(0..=cap);
            cost[v * n + u] = base + rng.random_range(0..=cap);
        }
    }
    let raw = Instance::from_fn(format!("random-n{}-s{}", n, seed), n, |u, v| cost[u * n + v]);
    metric_closure(&raw)
}

/// Embed any complete instance as a minor of a metric one: one vertex per
/// ordered pair, the pair edge carrying the original cost, everything else
/// one above the maximum cost. Contracting the returned partition recovers
/// the input exactly.
pub fn metric_lift<W: Weight>(g: &Instance<W>) -> Result<(Instance<W>, Partition)> {
    let n = g.n();
    if n < 2 {
        return Err(Error::validation("lift needs at least 2 vertices"));
    }
    let heavy = g.max_cost() + W::one();
    // vertex for the ordered pair (u, v): block of u, slot for v
    let id = |u: usize, v: usize| u * (n - 1) + if v < u { v } else { v - 1 };
    let big_n = n * (n - 1);
    let mut pair_of = vec![(0usize, 0usize); big_n];
    for u in 0..n {
        for v in 0..n {
            if u != v {
                pair_of[id(u, v)] = (u, v);
            }
        }
    }
    let lifted = Instance::from_fn(format!("lift-of-{}", g.name()), big_n, |x, y| {
        let (u, v) = pair_of[x];
        let (w, z) = pair_of[y];
        if u == z && v == w {
            g.c(u, v)
        } else {
            heavy.clone()
        }
    });
    lifted.mark_metric();
    let blocks: Vec<Vec<usize>> = (0..n).map(|u| (u * (n - 1)..(u + 1) * (n - 1)).collect()).collect();
    let partition = Partition::new(big_n, blocks)?;
    Ok((lifted, partition))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::asymmetry_report;
    use crate::metric::contract;

    #[test]
    fn random_metric_is_deterministic_and_metric() {
        let a = gen_random_metric(10, 7, Frac::new(1, 2));
        let b = gen_random_metric(10, 7, Frac::new(1, 2));
        assert_eq!(a, b);
        assert!(a.verify_metric(1).is_empty());
    }

    #[test]
    fn random_metric_strength_zero_is_symmetric() {
        let inst = gen_random_metric(9, 3, Frac::from_integer(0));
        let rep = asymmetry_report(&inst, None);
        assert_eq!(rep.symmetric_pair_fraction, Frac::from_integer(1));
    }

    #[test]
    fn gk_rejects_small_k() {
        assert!(gen_gk(2).is_err());
    }

    #[test]
    fn gk_seven_has_optimum_fourteen_and_is_metric() {
        let fam = gen_gk(7).unwrap();
        assert_eq!(fam.instance.n(), 14);
        assert_eq!(fam.optimum, 14);
        assert!(fam.instance.verify_metric(1).is_empty());
        let (_, hk) = crate::exact::held_karp(&fam.instance).unwrap();
        assert_eq!(hk, 14);
    }

    #[test]
    fn gk_gray_cover_covers_all_asymmetric_pairs_and_is_minimum() {
        for k in [3usize, 5, 7, 8] {
            let fam = gen_gk(k).unwrap();
            let pairs =
                crate::instance::beta_asymmetric_pairs(&fam.instance, &crate::weight::Beta::ONE, None);
            crate::exact::validate_injected_cover(&pairs, &fam.gray_cover, true)
                .unwrap_or_else(|e| panic!("k = {}: {}", k, e));
        }
    }

    #[test]
    fn cycle_family_arborescence_is_minimum_over_all_roots() {
        let fam = gen_cycle_family(4).unwrap();
        let best = crate::spanning::msa_best_root(&fam.instance).unwrap();
        assert_eq!(best.total_cost(), fam.arborescence.total_cost());
    }

    #[test]
    fn cycle_family_shape_and_optimum() {
        let fam = gen_cycle_family(5).unwrap();
        assert_eq!(fam.instance.n(), 10);
        assert_eq!(fam.optimum, 10);
        assert!(fam.instance.verify_metric(1).is_empty());
        // reverse of a one-way edge goes all the way around
        assert_eq!(fam.instance.c(9, 0), 1);
        assert_eq!(fam.instance.c(0, 9), 9);
        assert_eq!(fam.instance.c(4, 5), 1);
        assert_eq!(fam.instance.c(5, 4), 9);
        let (_, hk) = crate::exact::held_karp(&fam.instance).unwrap();
        assert_eq!(hk, 10);
    }

    #[test]
    fn lift_round_trip_recovers_instance() {
        for seed in 0..30u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.random_range(2..=6);
            // deliberately non-metric random costs, zeros allowed
            let g = Instance::from_fn("raw", n, |_, _| rng.random_range(0..=50i64));
            let (lifted, partition) = metric_lift(&g).unwrap();
            assert_eq!(lifted.n(), n * (n - 1));
            assert!(lifted.verify_metric(1).is_empty(), "seed {}", seed);
            let meta = contract(&lifted, &partition).unwrap();
            assert_eq!(meta.instance(), &g, "seed {}", seed);
        }
    }

    #[test]
    fn lift_two_vertices_equals_input() {
        let g = Instance::from_matrix("two", vec![vec![0i64, 5], vec![9, 0]]).unwrap();
        let (lifted, _) = metric_lift(&g).unwrap();
        assert_eq!(lifted.c(0, 1), 5);
        assert_eq!(lifted.c(1, 0), 9);
    }
}
