//! Checks against the shipped TSPLIB data that go beyond the acceptance
//! gate: kernel-size agreement with the published experiment table (within
//! the tolerance that different arborescence/cover ties allow) and the
//! consistency of beta thresholds with the published maximum factors.

use std::path::PathBuf;

use asymtsp::christofides_kernel::{kernelize, CoverMode};
use asymtsp::harness::beta_from_fraction;
use asymtsp::instance::beta_asymmetric_pairs;
use asymtsp::metric::metric_closure;
use asymtsp::spanning::{msa, one_way_edges, split_components};
use asymtsp::tsplib::parse_tsplib_file;
use asymtsp::weight::{Beta, Frac};

fn closure_of(name: &str) -> asymtsp::IntInstance {
    let dir = match std::env::var("ASYMTSP_TSPLIB_DIR") {
        Ok(dir) => PathBuf::from(dir),
        Err(_) => PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/tsplib"),
    };
    let raw = parse_tsplib_file(dir.join(format!("{}.atsp", name))).unwrap();
    metric_closure(&raw)
}

#[test]
fn ftv33_beta_at_published_max_factor_empties_the_pair_set() {
    let inst = closure_of("ftv33");
    // published maximum asymmetry factor: 18.75
    let max = Beta::Finite(Frac::new(1875, 100));
    assert!(beta_asymmetric_pairs(&inst, &max, None).is_empty());
    let below = Beta::Finite(Frac::new(1874, 100));
    assert!(!beta_asymmetric_pairs(&inst, &below, None).is_empty());
}

#[test]
fn ft53_tree_doubling_parameter_is_near_the_published_value() {
    // the published run reports 45 one-way edges; the count depends on which
    // minimum arborescence the solver picks, so match with tolerance
    let inst = closure_of("ft53");
    let arb = msa(&inst, 0).unwrap();
    let k = one_way_edges(&inst, &arb, &Beta::ONE, None).len();
    assert!((40..=50).contains(&k), "ft53 one-way edges {} too far from 45", k);
    let forest = split_components(&arb, &one_way_edges(&inst, &arb, &Beta::ONE, None)).unwrap();
    assert_eq!(forest.components.len(), k + 1);
}

#[test]
fn ftv33_small_fraction_kernel_is_small() {
    // published: kernel 5 at 1.56%; tie effects allow small deviations
    let inst = closure_of("ftv33");
    let (beta, _, _) = beta_from_fraction(&inst, &Frac::new(1, 64), None);
    let kernel = kernelize(&inst, &beta, CoverMode::Exact, None).unwrap();
    assert!(kernel.size() <= 10, "1.56% kernel unexpectedly large: {}", kernel.size());
    assert!(kernel.size() >= 2);
}

#[test]
fn fraction_sweep_on_ftv33_matches_published_kernel_shrinkage() {
    // published cover kernels: 29, 19, 11, 5 at 100%, 25%, 6.25%, 1.56%
    let inst = closure_of("ftv33");
    let mut sizes = Vec::new();
    for p in [Frac::from_integer(1), Frac::new(1, 4), Frac::new(1, 16), Frac::new(1, 64)] {
        let (beta, _, _) = beta_from_fraction(&inst, &p, None);
        let kernel = kernelize(&inst, &beta, CoverMode::Exact, None).unwrap();
        sizes.push(kernel.size());
    }
    assert_eq!(sizes[0], 29, "100% kernel is pinned by the published table");
    assert!(sizes.windows(2).all(|w| w[1] <= w[0]), "kernels must shrink: {:?}", sizes);
    for (got, published) in sizes.iter().zip([29usize, 19, 11, 5]) {
        let diff = got.abs_diff(published);
        assert!(diff <= 3, "kernel {} too far from published {}", got, published);
    }
}

#[test]
fn br17_closure_is_fully_symmetric() {
    let inst = closure_of("br17");
    let rep = asymtsp::instance::asymmetry_report(&inst, None);
    assert_eq!(rep.symmetric_pair_fraction, Frac::from_integer(1));
    assert_eq!(rep.median_factor, None);
    assert_eq!(rep.max_factor, None);
}

#[test]
fn closure_statistics_reproduce_the_published_table() {
    // (name, symmetric %, median, max, zero-cost %); median/max printed with
    // two decimals, fractions rounded to whole percent
    type Row = (&'static str, f64, Option<f64>, Option<f64>, f64);
    let published: [Row; 19] = [
        ("br17", 100.0, None, None, 12.0),
        ("ft53", 0.0, Some(2.04), Some(23.04), 0.0),
        ("ft70", 0.0, Some(1.40), Some(5.87), 0.0),
        ("ftv170", 6.0, Some(1.22), Some(34.00), 0.0),
        ("ftv33", 6.0, Some(1.31), Some(18.75), 0.0),
        ("ftv35", 5.0, Some(1.31), Some(18.75), 0.0),
        ("ftv38", 6.0, Some(1.30), Some(18.75), 0.0),
        ("ftv44", 5.0, Some(1.28), Some(18.75), 0.0),
        ("ftv47", 3.0, Some(1.31), Some(11.17), 0.0),
        ("ftv55", 5.0, Some(1.28), Some(18.75), 0.0),
        ("ftv64", 4.0, Some(1.29), Some(34.00), 0.0),
        ("ftv70", 4.0, Some(1.29), Some(34.00), 0.0),
        ("kro124p", 0.0, Some(1.04), Some(3.42), 0.0),
        ("p43", 63.0, Some(13.61), Some(14.64), 3.0),
        ("rbg323", 33.0, Some(3.00), Some(20.00), 47.0),
        ("rbg358", 50.0, Some(3.00), Some(18.00), 65.0),
        ("rbg403", 49.0, Some(2.50), Some(12.00), 68.0),
        ("rbg443", 49.0, Some(2.67), Some(11.00), 69.0),
        ("ry48p", 1.0, Some(1.04), Some(3.63), 0.0),
    ];
    let to_f = |f: &Frac| *f.numer() as f64 / *f.denom() as f64;
    for (name, sym, median, max, zero) in published {
        let rep = asymtsp::instance::asymmetry_report(&closure_of(name), None);
        assert!(
            (to_f(&rep.symmetric_pair_fraction) * 100.0 - sym).abs() <= 1.0,
            "{name}: symmetric fraction"
        );
        match (rep.median_factor, median) {
            (Some(got), Some(want)) => {
                assert!((to_f(&got) - want).abs() <= 0.011, "{name}: median {} vs {}", to_f(&got), want)
            }
            (None, None) => {}
            (got, want) => panic!("{name}: median {:?} vs {:?}", got.map(|f| to_f(&f)), want),
        }
        match (rep.max_factor, max) {
            (Some(got), Some(want)) => {
                assert!((to_f(&got) - want).abs() <= 0.011, "{name}: max {} vs {}", to_f(&got), want)
            }
            (None, None) => {}
            (got, want) => panic!("{name}: max {:?} vs {:?}", got.map(|f| to_f(&f)), want),
        }
        // the published zero-cost column appears to divide by all n^2 matrix
        // cells; ours uses the n(n-1) off-diagonal edges, so allow 1.5pp
        assert!(
            (to_f(&rep.zero_cost_edge_fraction) * 100.0 - zero).abs() <= 1.5,
            "{name}: zero-cost fraction"
        );
    }
}

#[test]
fn cover_kernel_sizes_at_beta_one_match_the_published_table_exactly() {
    // minimum vertex-cover size is intrinsic to the instance, so any exact
    // solver must land on the same kernel size (cover plus glue vertex)
    let published = [
        ("ft53", 53), ("ft70", 69), ("ftv170", 155), ("ftv33", 29), ("ftv35", 32),
        ("ftv38", 33), ("ftv44", 40), ("ftv47", 44), ("ftv55", 49), ("ftv64", 57),
        ("ftv70", 63), ("kro124p", 99), ("p43", 15), ("ry48p", 47),
    ];
    for (name, size) in published {
        let kernel = kernelize(&closure_of(name), &Beta::ONE, CoverMode::Exact, None).unwrap();
        assert_eq!(kernel.size(), size, "{}", name);
    }
}
