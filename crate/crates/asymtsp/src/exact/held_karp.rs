//! Exact ATSP solvers: bitmask dynamic programming (Held-Karp) and a
//! permutation-enumeration oracle for cross-checking.

use crate::instance::{Instance, Tour};
use crate::weight::Weight;
use crate::{Error, Result};

/// Default vertex cap for the Held-Karp table. At 22 vertices the table
/// holds 2^21 * 21 entries; with 8-byte costs that is ~350 MB. The cap is a
/// safety rail, not a heuristic fallback: larger inputs fail loudly.
pub const DEFAULT_EXACT_LIMIT: usize = 22;

/// Minimum-cost tour via Held-Karp dynamic programming over vertex subsets.
/// Works on any cost matrix, metric or not. Errors with a capacity error
/// when the instance exceeds `limit`.
pub fn held_karp_limited<W: Weight>(instance: &Instance<W>, limit: usize) -> Result<(Tour, W)> {
    let n = instance.n();
    if n == 0 {
        return Err(Error::validation("empty instance has no tour"));
    }
    if n > limit {
        return Err(Error::Capacity { size: n, limit });
    }
    if n == 1 {
        return Ok((Tour::new(vec![0]), W::zero()));
    }
    if n == 2 {
        return Ok((Tour::new(vec![0, 1]), instance.c(0, 1) + instance.c(1, 0)));
    }
    // fix vertex 0 as the tour start; DP over subsets of 1..n
    let m = n - 1;
    let full: usize = (1 << m) - 1;
    // dp[mask * m + e]: cheapest path 0 -> ... -> (e+1) visiting exactly the
    // shifted vertices in mask; every (mask, e in mask) cell gets written
    // before it is read, so no sentinel is needed.
    let mut dp: Vec<W> = vec![W::zero(); (full + 1) * m];
    let mut parent: Vec<u8> = vec![u8::MAX; (full + 1) * m];
    for e in 0..m {
        dp[(1 << e) * m + e] = instance.c(0, e + 1);
    }
    for mask in 1..=full {
        if mask.count_ones() < 2 {
            continue;
        }
        let mut bits = mask;
        while bits != 0 {
            let e = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let prev_mask = mask & !(1 << e);
            let mut best: Option<(W, u8)> = None;
            let mut pbits = prev_mask;
            while pbits != 0 {
                let p = pbits.trailing_zeros() as usize;
                pbits &= pbits - 1;
                let cand = dp[prev_mask * m + p].clone() + instance.c(p + 1, e + 1);
                if best.as_ref().is_none_or(|(b, _)| &cand < b) {
                    best = Some((cand, p as u8));
                }
            }
            let (cost, p) = best.unwrap();
            dp[mask * m + e] = cost;
            parent[mask * m + e] = p;
        }
    }
    let mut best: Option<(W, usize)> = None;
    for e in 0..m {
        let cand = dp[full * m + e].clone() + instance.c(e + 1, 0);
        if best.as_ref().is_none_or(|(b, _)| &cand < b) {
            best = Some((cand, e));
        }
    }
    let (total, mut e) = best.unwrap();
    let mut order = Vec::with_capacity(n);
    let mut mask = full;
    loop {
        order.push(e + 1);
        let p = parent[mask * m + e];
        mask &= !(1 << e);
        if p == u8::MAX {
            break;
        }
        e = p as usize;
    }
    order.push(0);
    order.reverse();
    debug_assert_eq!(order.len(), n);
    Ok((Tour::new(order), total))
}

/// Held-Karp with the default 22-vertex cap.
pub fn held_karp<W: Weight>(instance: &Instance<W>) -> Result<(Tour, W)> {
    held_karp_limited(instance, DEFAULT_EXACT_LIMIT)
}

/// Exhaustive minimum over all (n-1)! cyclic orders. Test oracle; capped at
/// 10 vertices.
pub fn brute_force_tour<W: Weight>(instance: &Instance<W>) -> Result<(Tour, W)> {
    let n = instance.n();
    if n == 0 {
        return Err(Error::validation("empty instance has no tour"));
    }
    if n > 10 {
        return Err(Error::Capacity { size: n, limit: 10 });
    }
    if n == 1 {
        return Ok((Tour::new(vec![0]), W::zero()));
    }
    let mut rest: Vec<usize> = (1..n).collect();
    let mut best_order: Vec<usize> = Vec::new();
    let mut best_cost: Option<W> = None;
    permute(&mut rest, 0, &mut |perm| {
        let mut cost = instance.c(0, perm[0]);
        for w in perm.windows(2) {
            cost = cost + instance.c(w[0], w[1]);
        }
        cost = cost + instance.c(perm[perm.len() - 1], 0);
        if best_cost.as_ref().is_none_or(|b| &cost < b) {
            best_cost = Some(cost);
            best_order = perm.to_vec();
        }
    });
    let mut order = vec![0];
    order.extend(best_order);
    Ok((Tour::new(order), best_cost.unwrap()))
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}
