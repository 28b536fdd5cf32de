//! Enumeration-based reference implementations used to cross-check the
//! optimized solvers, plus the battery behind the `oracle-check` command.
//! Everything here is deliberately brute force and independent of the code
//! paths it verifies.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{brute_force_tour, held_karp, min_weight_perfect_matching, vertex_cover_exact};
use crate::instance::Instance;
use crate::spanning::{msa, Arborescence};

/// Minimum pairing cost over all (m-1)!! perfect pairings.
pub fn pairing_enumeration_cost(cost: &impl Fn(usize, usize) -> i64, verts: &[usize]) -> i64 {
    assert!(verts.len().is_multiple_of(2));
    if verts.is_empty() {
        return 0;
    }
    let first = verts[0];
    let mut best = i64::MAX;
    for i in 1..verts.len() {
        let mut rest: Vec<usize> = verts[1..].to_vec();
        let partner = rest.remove(i - 1);
        let sub = pairing_enumeration_cost(cost, &rest);
        best = best.min(cost(first, partner) + sub);
    }
    best
}

/// Minimum arborescence cost by enumerating every parent map and filtering
/// for valid arborescences.
pub fn arborescence_enumeration_cost(instance: &Instance<i64>, root: usize) -> i64 {
    let n = instance.n();
    let others: Vec<usize> = (0..n).filter(|&v| v != root).collect();
    if others.is_empty() {
        return 0;
    }
    let mut best = i64::MAX;
    let mut choice = vec![0usize; others.len()];
    loop {
        let mut parent = vec![None; n];
        for (i, &v) in others.iter().enumerate() {
            let mut p = choice[i];
            if p >= v {
                p += 1; // skip the self-loop slot
            }
            parent[v] = Some(p);
        }
        if let Ok(a) = Arborescence::new(instance, root, parent) {
            best = best.min(*a.total_cost());
        }
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return best;
            }
            choice[pos] += 1;
            if choice[pos] < n - 1 {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

/// Minimum vertex cover size by subset enumeration (up to 20 vertices).
pub fn cover_enumeration_size(edges: &[(usize, usize)], n: usize) -> usize {
    assert!(n <= 20);
    let mut best = n;
    for mask in 0u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        if edges.iter().all(|&(u, v)| mask & (1 << u) != 0 || mask & (1 << v) != 0) {
            best = size;
        }
    }
    best
}

/// One oracle family's outcome.
#[derive(Debug, Clone)]
pub struct OracleOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub detail: String,
}

impl OracleOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Cross-check the exact solvers against enumeration on seeded random
/// inputs: Held-Karp vs tours, blossom matching vs pairings, arborescences
/// vs parent maps, vertex cover vs subsets. Optimal costs must agree
/// exactly; witnesses may differ.
pub fn oracle_battery(seeds: u64) -> Vec<OracleOutcome> {
    let mut out = Vec::new();

    let mut failures = 0;
    let mut detail = String::new();
    for seed in 0..seeds {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.random_range(3..=8);
        let inst = Instance::from_fn("hk", n, |_, _| rng.random_range(0..=100i64));
        let hk = held_karp(&inst).unwrap().1;
        let bf = brute_force_tour(&inst).unwrap().1;
        if hk != bf {
            failures += 1;
            detail = format!("seed {}: held-karp {} vs enumeration {}", seed, hk, bf);
        }
    }
    out.push(OracleOutcome { name: "held-karp vs tour enumeration (n <= 8)", cases: seeds as usize, failures, detail });

    let mut failures = 0;
    let mut detail = String::new();
    for seed in 0..seeds {
        let mut rng = ChaCha8Rng::seed_from_u64(1_000_000 + seed);
        let m = 2 * rng.random_range(1..=5usize);
        let mut table = vec![vec![0i64; m]; m];
        for i in 0..m {
            for j in (i + 1)..m {
                let w = rng.random_range(0..=100);
                table[i][j] = w;
                table[j][i] = w;
            }
        }
        let cost = |u: usize, v: usize| table[u][v];
        let verts: Vec<usize> = (0..m).collect();
        let blossom = min_weight_perfect_matching(cost, &verts).unwrap().total_cost;
        let brute = pairing_enumeration_cost(&cost, &verts);
        if blossom != brute {
            failures += 1;
            detail = format!("seed {}: blossom {} vs enumeration {}", seed, blossom, brute);
        }
    }
    out.push(OracleOutcome { name: "blossom matching vs pairing enumeration (|set| <= 10)", cases: seeds as usize, failures, detail });

    let msa_cases = seeds.div_ceil(2);
    let mut failures = 0;
    let mut detail = String::new();
    for seed in 0..msa_cases {
        let mut rng = ChaCha8Rng::seed_from_u64(2_000_000 + seed);
        let n = rng.random_range(2..=5);
        let inst = Instance::from_fn("msa", n, |_, _| rng.random_range(1..=30i64));
        for root in 0..n {
            let fast = *msa(&inst, root).unwrap().total_cost();
            let slow = arborescence_enumeration_cost(&inst, root);
            if fast != slow {
                failures += 1;
                detail = format!("seed {} root {}: msa {} vs enumeration {}", seed, root, fast, slow);
            }
        }
    }
    out.push(OracleOutcome { name: "msa vs arborescence enumeration (n <= 5)", cases: msa_cases as usize, failures, detail });

    let vc_cases = seeds.div_ceil(2);
    let mut failures = 0;
    let mut detail = String::new();
    for seed in 0..vc_cases {
        let mut rng = ChaCha8Rng::seed_from_u64(3_000_000 + seed);
        let n = rng.random_range(2..=14usize);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.random_bool(0.35) {
                    edges.push((u, v));
                }
            }
        }
        let exact = vertex_cover_exact(&edges).len();
        let brute = cover_enumeration_size(&edges, n);
        if exact != brute {
            failures += 1;
            detail = format!("seed {}: branching {} vs enumeration {}", seed, exact, brute);
        }
    }
    out.push(OracleOutcome { name: "vertex cover vs subset enumeration (n <= 14)", cases: vc_cases as usize, failures, detail });

    out
}

/// Minimum perfect-pairing cost by subset dynamic programming (up to 20
/// vertices): pair the lowest unmatched vertex with every candidate.
pub fn pairing_dp_cost(cost: &impl Fn(usize, usize) -> i64, m: usize) -> i64 {
    assert!(m.is_multiple_of(2) && m <= 20);
    let full = (1usize << m) - 1;
    let mut dp = vec![i64::MAX; full + 1];
    dp[0] = 0;
    for mask in 1..=full {
        if mask.count_ones() % 2 != 0 {
            continue;
        }
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let mut bits = rest;
        let mut best = i64::MAX;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let sub = dp[rest & !(1 << j)];
            if sub != i64::MAX {
                best = best.min(sub + cost(i, j));
            }
        }
        dp[mask] = best;
    }
    dp[full]
}
