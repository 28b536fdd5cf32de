//! Acceptance suite: one test per criterion, each printing a PASS line when
//! it holds. Run with `cargo test --test acceptance -- --nocapture` to see
//! the lines.

use std::path::PathBuf;

use asymtsp::christofides_kernel::{self, CoverMode};
use asymtsp::exact::{brute_force_tour, held_karp, held_karp_limited};
use asymtsp::generators::{gen_cycle_family, gen_gk, gen_random_metric, metric_lift};
use asymtsp::harness::{default_fractions, emit_csv, sweep, Algorithm, SweepOptions};
use asymtsp::instance::{asymmetry_report, tour_cost, Instance, Tour};
use asymtsp::metric::{contract, metric_closure, Partition};
use asymtsp::oracles::oracle_battery;
use asymtsp::tree_doubling::{self, ArbSource};
use asymtsp::tsplib::{parse_tsplib_file, OptimaRegistry, ReferenceSource};
use asymtsp::weight::{frac_to_decimal, Beta, Frac};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn data_dir() -> PathBuf {
    match std::env::var("ASYMTSP_TSPLIB_DIR") {
        Ok(dir) => PathBuf::from(dir),
        Err(_) => PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/tsplib"),
    }
}

fn registry() -> OptimaRegistry {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/optima.txt");
    OptimaRegistry::load_file(path).expect("optima registry")
}

const ALL_INSTANCES: [&str; 19] = [
    "br17", "ft53", "ft70", "ftv170", "ftv33", "ftv35", "ftv38", "ftv44", "ftv47", "ftv55",
    "ftv64", "ftv70", "kro124p", "p43", "rbg323", "rbg358", "rbg403", "rbg443", "ry48p",
];

/// Criterion 1: the cover-kernelized solver is asymptotically no better than
/// 2.5 on the adversarial two-cycle family. For k in {7, 15, 31, 63} the
/// solver with the injected gray cover and zig-zag tree pays at least
/// 5k - 3 against the optimum of exactly 2k.
#[test]
fn acceptance_1_tightness_of_two_point_five() {
    let start = std::time::Instant::now();
    let mut ratio_at_63 = Frac::from_integer(0);
    let mut ratios = Vec::new();
    for k in [7usize, 15, 31, 63] {
        let fam = gen_gk(k).expect("family construction");
        let n = 2 * k as i64;
        // optimum exactly 2k: the alternating tour achieves it (validated by
        // the generator) and no tour on 2k vertices with edge costs >= 1 can
        // be cheaper; Held-Karp confirms for k = 7
        assert_eq!(fam.optimum, n, "k = {}", k);
        assert_eq!(tour_cost(&fam.instance, &fam.optimal_tour).unwrap(), n);
        if k == 7 {
            let (_, hk) = held_karp(&fam.instance).expect("held-karp on 14 vertices");
            assert_eq!(hk, 14);
        }
        let cost = if k <= 15 {
            // kernel of k + 1 vertices fits the exact solver
            let run = christofides_kernel::solve(
                &fam.instance,
                &Beta::ONE,
                CoverMode::Injected { cover: &fam.gray_cover, claim_minimum: k <= 8 },
                22,
                Some(&fam.zigzag_mst),
                None,
            )
            .expect("solver run");
            assert_eq!(run.kernel_cost, n, "kernel optimum is 2k");
            run.cost
        } else {
            // kernel too large for Held-Karp: use the provably optimal
            // kernel tour (gray cycle with the glue vertex spliced where
            // both junction edges cost 1) and lift it
            let kernel = christofides_kernel::kernelize(
                &fam.instance,
                &Beta::ONE,
                CoverMode::Injected { cover: &fam.gray_cover, claim_minimum: false },
                None,
            )
            .expect("kernelization");
            assert_eq!(kernel.glue_vertex, Some(k), "glue vertex is the first black vertex");
            // local kernel ids: grays 0..k-1 in order, glue at local id k
            let mut order = vec![0usize, k];
            order.extend(1..k);
            let ktour = Tour::new(order);
            let kcost = tour_cost(&kernel.kernel_instance, &ktour).unwrap();
            assert_eq!(kcost, n, "analytic kernel tour costs 2k");
            // optimality: >= 2 edges touch the glue vertex (>= 1 each), the
            // remaining k - 1 edges are gray-gray (>= 2 each)
            let ki = &kernel.kernel_instance;
            for u in 0..k {
                for v in 0..k {
                    if u != v {
                        assert!(ki.c(u, v) >= 2, "gray-gray kernel edge below 2");
                    }
                }
            }
            let lifted = christofides_kernel::lift(&fam.instance, &kernel, &ktour, Some(&fam.zigzag_mst))
                .expect("lift");
            tour_cost(&fam.instance, &lifted).unwrap()
        };
        let bound = 5 * k as i64 - 3;
        assert!(cost >= bound, "k = {}: cost {} below {}", k, cost, bound);
        ratios.push(Frac::new(cost as i128, fam.optimum as i128));
        if k == 63 {
            ratio_at_63 = Frac::new(cost as i128, fam.optimum as i128);
        }
    }
    assert!(ratios.windows(2).all(|w| w[0] <= w[1]), "ratio sequence must climb toward 2.5");
    assert!(
        ratio_at_63 >= Frac::new(247, 100),
        "ratio at k = 63 is {}",
        frac_to_decimal(&ratio_at_63, 4)
    );
    assert!(start.elapsed().as_secs() < 30, "criterion 1 exceeded 30 s");
    println!(
        "ACCEPTANCE 1 PASS: two-cycle family forces >= 5k-3 vs optimum 2k for k in 7..63; ratio at 63 = {}",
        frac_to_decimal(&ratio_at_63, 4)
    );
}

/// Criterion 2: the tree-doubling kernelization is asymptotically no better
/// than 3 on the directed-cycle family: the injected choices lift to exactly
/// 6m - 4 against optimum 2m.
#[test]
fn acceptance_2_tightness_of_three() {
    let start = std::time::Instant::now();
    for m in [3usize, 10, 50] {
        let fam = gen_cycle_family(m).expect("family construction");
        assert_eq!(fam.optimum, 2 * m as i64);
        let kernel = tree_doubling::kernelize(
            &fam.instance,
            &fam.arborescence,
            &Beta::ONE,
            tree_doubling::RepMode::Injected(&fam.representatives),
            None,
        )
        .expect("kernelization");
        assert_eq!(kernel.parameter_k, 1);
        assert_eq!(kernel.kernel_instance.n(), 2);
        let (ktour, _) = held_karp_limited(&kernel.kernel_instance, 22).unwrap();
        let lifted = tree_doubling::lift(&fam.instance, &kernel, &ktour).expect("lift");
        let cost = tour_cost(&fam.instance, &lifted).unwrap();
        assert_eq!(cost, 6 * m as i64 - 4, "m = {}", m);
    }
    assert!(start.elapsed().as_secs() < 5, "criterion 2 exceeded 5 s");
    println!("ACCEPTANCE 2 PASS: cycle family lifts to exactly 6m-4 vs optimum 2m for m in {{3, 10, 50}}");
}

/// Criterion 3: ratio bounds over seeded random metric instances, exact
/// rational comparisons, zero violations allowed.
#[test]
fn acceptance_3_ratio_bounds_property_suite() {
    let start = std::time::Instant::now();
    let betas = [Beta::ONE, Beta::finite(3, 2), Beta::finite(2, 1)];
    let mut cases = 0;
    for strength in [Frac::from_integer(0), Frac::new(1, 5), Frac::new(1, 2)] {
        for seed in 0..70u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(40_000 + seed);
            let n = rng.random_range(4..=10);
            let inst = gen_random_metric(n, 50_000 + seed, strength);
            let (_, opt) = brute_force_tour(&inst).unwrap();
            let opt = Frac::from_integer(opt as i128);
            for beta in &betas {
                let b = match beta {
                    Beta::Finite(b) => *b,
                    Beta::Infinite => unreachable!(),
                };
                let gc = christofides_kernel::solve(&inst, beta, CoverMode::Exact, 22, None, None)
                    .expect("gc run");
                let gc_bound = (Frac::new(7, 4) + Frac::new(3, 4) * b) * opt;
                assert!(
                    Frac::from_integer(gc.cost as i128) <= gc_bound,
                    "gc bound violated: seed {} strength {} beta {} cost {} opt {}",
                    seed, strength, beta, gc.cost, opt
                );
                let gtd = tree_doubling::solve(&inst, beta, ArbSource::Root(0), 22, None).expect("gtd run");
                let gtd_bound = (Frac::from_integer(2) + b) * opt;
                assert!(
                    Frac::from_integer(gtd.cost as i128) <= gtd_bound,
                    "gtd bound violated: seed {} strength {} beta {} cost {} opt {}",
                    seed, strength, beta, gtd.cost, opt
                );
                cases += 1;
            }
        }
    }
    assert!(cases >= 600, "need at least 200 instances x 3 betas");
    assert!(start.elapsed().as_secs() < 120, "criterion 3 exceeded 2 min");
    println!("ACCEPTANCE 3 PASS: {} bound checks, zero violations (2.5x/3x at beta 1; 7/4+3b/4 and 2+b relaxed)", cases);
}

/// Criterion 4: exact solvers agree with enumeration oracles on optimal
/// costs.
#[test]
fn acceptance_4_oracle_equivalence() {
    let start = std::time::Instant::now();
    let outcomes = oracle_battery(200);
    for o in &outcomes {
        assert!(o.passed(), "{} failed: {}", o.name, o.detail);
    }
    assert!(start.elapsed().as_secs() < 180, "criterion 4 exceeded 3 min");
    println!(
        "ACCEPTANCE 4 PASS: {}",
        outcomes.iter().map(|o| format!("{} ({} cases)", o.name, o.cases)).collect::<Vec<_>>().join("; ")
    );
}

/// Criterion 5: structural facts at desk scale: minors and induced
/// subinstances never beat the original optimum; the metric lift round-trips
/// exactly.
#[test]
fn acceptance_5_structural_lemmas() {
    // contraction: optimum of a minor <= optimum of the instance
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(60_000 + seed);
        let n = rng.random_range(4..=9);
        let inst = gen_random_metric(n, 70_000 + seed, Frac::new(1, 2));
        let (_, opt) = brute_force_tour(&inst).unwrap();
        // random partition into 2..n blocks
        let blocks_n = rng.random_range(2..=n);
        let mut blocks: Vec<Vec<usize>> = (0..blocks_n).map(|_| Vec::new()).collect();
        for v in 0..n {
            blocks[rng.random_range(0..blocks_n)].push(v);
        }
        blocks.retain(|b| !b.is_empty());
        let partition = Partition::new(n, blocks).unwrap();
        let meta = contract(&inst, &partition).unwrap();
        if meta.n() >= 2 {
            let (_, mopt) = brute_force_tour(meta.instance()).unwrap();
            assert!(mopt <= opt, "minor optimum exceeds instance optimum at seed {}", seed);
        }
        // induced subinstance: optimum <= instance optimum
        let mut subset: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.6)).collect();
        if subset.len() < 2 {
            subset = vec![0, n - 1];
        }
        let induced = inst.induced(&subset);
        let (_, iopt) = brute_force_tour(&induced).unwrap();
        assert!(iopt <= opt, "induced optimum exceeds instance optimum at seed {}", seed);
    }
    // metric lift round-trip identity on non-metric inputs
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(80_000 + seed);
        let n = rng.random_range(2..=6);
        let g = Instance::from_fn("raw", n, |_, _| rng.random_range(0..=50i64));
        let (lifted, partition) = metric_lift(&g).unwrap();
        assert!(lifted.verify_metric(1).is_empty(), "lift not metric at seed {}", seed);
        let back = contract(&lifted, &partition).unwrap();
        assert_eq!(back.instance(), &g, "round trip failed at seed {}", seed);
    }
    println!("ACCEPTANCE 5 PASS: minor/induced optima bounded by instance optimum (100 seeds each); lift round-trip exact (100 seeds)");
}

/// Criterion 6: the TSPLIB protocol reproduces: all 19 instances parse,
/// closures are metric, the published asymmetry statistics of ft53/ftv33
/// match, the exact cover kernel of ftv33 at beta 1 has exactly 29 vertices,
/// and over the full sweep every ratio respects its theoretical bound while
/// the kernelized runs that fit the exact-solver cap stay at or below 2.0.
#[test]
fn acceptance_6_tsplib_reproduction() {
    let start = std::time::Instant::now();
    let dir = data_dir();
    let mut closures = Vec::new();
    let mut any_raw_nonmetric = false;
    for name in ALL_INSTANCES {
        let raw = parse_tsplib_file(dir.join(format!("{}.atsp", name)))
            .unwrap_or_else(|e| panic!("parsing {}: {}", name, e));
        any_raw_nonmetric |= !raw.verify_metric(1).is_empty();
        let closed = metric_closure(&raw);
        assert!(closed.verify_metric(1).is_empty(), "closure of {} not metric", name);
        closures.push(closed);
    }
    assert!(any_raw_nonmetric, "at least some raw instances are non-metric");

    let by_name = |n: &str| closures.iter().find(|c| c.name() == n).unwrap();
    // Table 1 rows for ft53 and ftv33
    {
        let rep = asymmetry_report(by_name("ft53"), None);
        assert_eq!(rep.symmetric_pair_fraction, Frac::from_integer(0));
        let tol = Frac::new(1, 100);
        let median = rep.median_factor.unwrap();
        let max = rep.max_factor.unwrap();
        assert!((median - Frac::new(204, 100)).abs() <= tol, "ft53 median");
        assert!((max - Frac::new(2304, 100)).abs() <= tol, "ft53 max");
    }
    {
        let rep = asymmetry_report(by_name("ftv33"), None);
        let pp = Frac::new(1, 100);
        assert!((rep.symmetric_pair_fraction - Frac::new(6, 100)).abs() <= pp, "ftv33 symmetric fraction");
        let tol = Frac::new(1, 100);
        let median = rep.median_factor.unwrap();
        let max = rep.max_factor.unwrap();
        assert!((median - Frac::new(131, 100)).abs() <= tol, "ftv33 median");
        assert!((max - Frac::new(1875, 100)).abs() <= tol, "ftv33 max");
    }
    // exact cover kernel of ftv33 at beta 1: exactly 29 vertices
    {
        let kernel =
            christofides_kernel::kernelize(by_name("ftv33"), &Beta::ONE, CoverMode::Exact, None).unwrap();
        assert_eq!(kernel.size(), 29, "ftv33 kernel size");
        assert_eq!(kernel.parameter_z, 28);
    }
    // full sweep; ratios against theoretical bounds, and <= 2.0 for the
    // kernelized runs that fit the exact-solver cap
    let opts = SweepOptions::default();
    let reg = registry();
    let reports = sweep(
        &closures,
        &default_fractions(),
        &[Algorithm::GenChristofides, Algorithm::GenTreeDoubling],
        &reg,
        &opts,
    )
    .unwrap();
    assert_eq!(reports.len(), 19 * 5 * 2);
    let mut kernelized_checked = 0;
    for r in &reports {
        let (Some(cost), Some(reference)) = (r.tour_cost, r.reference) else { continue };
        let ratio = Frac::new(cost as i128, reference as i128);
        // theoretical bound, using the closure's worst factor when beta is
        // the infinite sentinel (0% column)
        let beta_eff = match &r.beta {
            Beta::Finite(b) => Some(*b),
            Beta::Infinite => asymmetry_report(by_name(&r.instance), opts.zero_substitute.as_ref())
                .max_factor,
        };
        if let Some(b) = beta_eff {
            let bound = match r.algorithm {
                Algorithm::GenChristofides => Frac::new(7, 4) + Frac::new(3, 4) * b,
                Algorithm::GenTreeDoubling => Frac::from_integer(2) + b,
            };
            assert!(
                ratio <= bound,
                "{} {} at fraction {:?}: ratio {} exceeds bound {}",
                r.instance,
                r.algorithm.id(),
                r.fraction.as_ref().map(|f| f.to_string()),
                frac_to_decimal(&ratio, 4),
                frac_to_decimal(&bound, 4)
            );
        }
        // kernelized runs stay at or below 2.0; the degenerate 0% baseline
        // (no kernel solved) is known to exceed that and only has to respect
        // the theoretical bound
        let kernelized = r.fraction.as_ref().is_some_and(|f| !f.is_zero() )
            && matches!(r.ref_source, Some(ReferenceSource::Exact) | Some(ReferenceSource::Registry(_)));
        if kernelized {
            assert!(
                ratio <= Frac::from_integer(2),
                "{} {} at fraction {:?}: kernelized ratio {} exceeds 2.0",
                r.instance,
                r.algorithm.id(),
                r.fraction.as_ref().map(|f| f.to_string()),
                frac_to_decimal(&ratio, 4)
            );
            kernelized_checked += 1;
        }
    }
    assert!(kernelized_checked >= 60, "only {} kernelized runs checked", kernelized_checked);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 600, "criterion 6 exceeded 10 min");
    println!(
        "ACCEPTANCE 6 PASS: 19 instances parsed, closures metric, Table-1 rows match, ftv33 kernel = 29, {} kernelized in-cap ratios <= 2.0 ({}s)",
        kernelized_checked,
        elapsed.as_secs()
    );
}

/// Criterion 7: repeated sweeps with fixed flags produce byte-identical CSV.
#[test]
fn acceptance_7_determinism() {
    let dir = data_dir();
    let mut instances = vec![
        parse_tsplib_file(dir.join("ftv33.atsp")).unwrap(),
        parse_tsplib_file(dir.join("ft53.atsp")).unwrap(),
    ];
    instances.push(gen_gk(5).unwrap().instance);
    instances.push(gen_random_metric(12, 99, Frac::new(1, 2)));
    let opts = SweepOptions::default();
    let reg = registry();
    let algs = [Algorithm::GenChristofides, Algorithm::GenTreeDoubling];
    let a = emit_csv(&sweep(&instances, &default_fractions(), &algs, &reg, &opts).unwrap());
    let b = emit_csv(&sweep(&instances, &default_fractions(), &algs, &reg, &opts).unwrap());
    assert_eq!(a, b, "sweep output must be byte-identical");
    assert!(a.len() > 400);
    println!("ACCEPTANCE 7 PASS: repeated sweep emits byte-identical CSV ({} bytes)", a.len());
}
