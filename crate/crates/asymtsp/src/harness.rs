//! Batch experiment harness: per-run reports, the fraction-to-beta
//! interpolation, sweeps over instances x fractions x algorithms, and
//! CSV/JSON emission.

use std::time::Instant;

use rayon::prelude::*;

use crate::christofides_kernel::{self, CoverMode};
use crate::instance::{beta_asymmetric_pairs, pair_factor, Instance, PairFactor, Tour};
use crate::metric::metric_closure;
use crate::spanning::{msa, msa_best_root, Arborescence};
use crate::tree_doubling::{self, ArbSource};
use crate::tsplib::{reference_optimum, OptimaRegistry, ReferenceSource};
use crate::weight::{frac_to_decimal, Beta, Frac};
use crate::{Error, Result};

/// The two solvers under evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Algorithm {
    GenChristofides,
    GenTreeDoubling,
}

impl Algorithm {
    pub fn id(&self) -> &'static str {
        match self {
            Algorithm::GenChristofides => "gen-christofides",
            Algorithm::GenTreeDoubling => "gen-treedouble",
        }
    }

    pub fn parse(s: &str) -> Result<Algorithm> {
        match s {
            "gc" | "gen-christofides" => Ok(Algorithm::GenChristofides),
            "gtd" | "gen-treedouble" => Ok(Algorithm::GenTreeDoubling),
            other => Err(Error::validation(format!("unknown algorithm {:?}", other))),
        }
    }
}

/// One experiment cell.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub instance: String,
    pub algorithm: Algorithm,
    /// Requested fraction of asymmetric pairs to keep; absent when beta was
    /// given directly.
    pub fraction: Option<Frac>,
    pub beta: Beta,
    /// Fraction of asymmetric pairs actually above the chosen beta (ties at
    /// the threshold may push this over the request).
    pub realized_fraction: Option<Frac>,
    /// Vertices solved exactly for the cover kernel; removed-edge count for
    /// tree doubling.
    pub kernel_size: Option<usize>,
    pub tour_cost: Option<i64>,
    pub reference: Option<i64>,
    pub ref_source: Option<ReferenceSource>,
    pub ratio: Option<Frac>,
    pub wall_time_ms: Option<u64>,
    pub seed: Option<u64>,
    pub root: Option<usize>,
    pub error: Option<String>,
    /// CLI exit code class of `error` (2 parse, 3 capacity, 4 validation).
    pub error_code: Option<i32>,
}

/// Largest beta that keeps at least ceil(p * |asymmetric pairs|) pairs
/// beta-asymmetric; ties at the threshold factor are all kept, so the
/// realized fraction may exceed the request. p = 1 gives beta = 1 (all
/// asymmetric pairs), p = 0 the infinite sentinel (none).
pub fn beta_from_fraction(
    instance: &Instance<i64>,
    fraction: &Frac,
    zero_substitute: Option<&Frac>,
) -> (Beta, Frac, usize) {
    assert!(
        *fraction >= Frac::from_integer(0) && *fraction <= Frac::from_integer(1),
        "fraction must lie in [0, 1]"
    );
    // factors of all asymmetric pairs; None = unbounded (zero cost, no substitute)
    let mut factors: Vec<Option<Frac>> = Vec::new();
    let n = instance.n();
    for u in 0..n {
        for v in (u + 1)..n {
            if instance.cost_ref(u, v) == instance.cost_ref(v, u) {
                continue;
            }
            match pair_factor(instance, u, v, zero_substitute) {
                PairFactor::Defined(f) => factors.push(Some(f)),
                PairFactor::Undefined => factors.push(None),
            }
        }
    }
    // descending, unbounded factors first
    factors.sort_by(|a, b| match (a, b) {
        (None, None) => std::cmp::Ordering::Equal,
        (None, Some(_)) => std::cmp::Ordering::Less,
        (Some(_), None) => std::cmp::Ordering::Greater,
        (Some(x), Some(y)) => y.cmp(x),
    });
    let total = factors.len();
    let target = (*fraction * Frac::from_integer(total as i128)).ceil().to_integer() as usize;
    if target == 0 {
        return (Beta::Infinite, Frac::from_integer(0), 0);
    }
    let threshold = factors[target - 1];
    // largest factor strictly below the threshold, floored at 1
    let mut beta = Frac::from_integer(1);
    for f in &factors[target..] {
        match (&threshold, f) {
            (Some(t), Some(x)) if x < t => {
                beta = *x;
                break;
            }
            (None, Some(x)) => {
                beta = *x;
                break;
            }
            _ => {}
        }
    }
    if beta < Frac::from_integer(1) {
        beta = Frac::from_integer(1);
    }
    let included = factors
        .iter()
        .filter(|f| match f {
            None => true,
            Some(x) => *x > beta,
        })
        .count();
    let realized = Frac::new(included as i128, total as i128);
    (Beta::Finite(beta), realized, included)
}

/// Options shared by `solve` and `sweep`.
#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub kernel_limit: usize,
    /// Exact minimum cover by branching search, or the maximal-matching
    /// 2-approximation.
    pub cover_exact: bool,
    pub root: usize,
    /// Minimize the arborescence cost over all roots instead of fixing one.
    pub best_root: bool,
    /// Substitute for zero costs inside factor computations; never mutates
    /// instances.
    pub zero_substitute: Option<Frac>,
    /// Record wall times (off by default: timing makes CSV output
    /// non-reproducible).
    pub timing: bool,
    /// Take the metric closure of non-metric inputs before solving.
    pub auto_closure: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            kernel_limit: crate::exact::DEFAULT_EXACT_LIMIT,
            cover_exact: true,
            root: 0,
            best_root: false,
            zero_substitute: Some(Frac::new(1, 10)),
            timing: false,
            auto_closure: true,
        }
    }
}

struct Prepared {
    instance: Instance<i64>,
    arb: Option<Arborescence<i64>>,
    reference: Option<(i64, ReferenceSource)>,
}

fn prepare(
    raw: &Instance<i64>,
    algorithms: &[Algorithm],
    registry: &OptimaRegistry,
    opts: &SweepOptions,
) -> Result<Prepared> {
    let instance = if opts.auto_closure && !raw.is_metric() {
        metric_closure(raw)
    } else {
        raw.clone()
    };
    let arb = if algorithms.contains(&Algorithm::GenTreeDoubling) {
        Some(if opts.best_root { msa_best_root(&instance)? } else { msa(&instance, opts.root)? })
    } else {
        None
    };
    let reference = reference_optimum(&instance, registry, opts.kernel_limit);
    Ok(Prepared { instance, arb, reference })
}

fn run_one(
    prep: &Prepared,
    fraction: Option<&Frac>,
    beta_direct: Option<&Beta>,
    algorithm: Algorithm,
    opts: &SweepOptions,
) -> RunReport {
    let sub = opts.zero_substitute.as_ref();
    let (beta, realized_fraction) = match (fraction, beta_direct) {
        (Some(p), _) => {
            let (b, realized, _) = beta_from_fraction(&prep.instance, p, sub);
            (b, Some(realized))
        }
        (None, Some(b)) => (b.clone(), None),
        (None, None) => (Beta::ONE, None),
    };
    let started = Instant::now();
    let mut report = RunReport {
        instance: prep.instance.name().to_string(),
        algorithm,
        fraction: fraction.cloned(),
        beta: beta.clone(),
        realized_fraction,
        kernel_size: None,
        tour_cost: None,
        reference: prep.reference.as_ref().map(|r| r.0),
        ref_source: prep.reference.as_ref().map(|r| r.1),
        ratio: None,
        wall_time_ms: None,
        seed: None,
        root: match algorithm {
            Algorithm::GenTreeDoubling => prep.arb.as_ref().map(|a| a.root()),
            Algorithm::GenChristofides => None,
        },
        error: None,
        error_code: None,
    };
    let outcome: Result<(usize, Tour, i64)> = match algorithm {
        Algorithm::GenChristofides => (|| {
            let pairs = beta_asymmetric_pairs(&prep.instance, &beta, sub);
            let lower = crate::exact::cover_lower_bound(&pairs);
            if lower + 1 > opts.kernel_limit {
                return Err(Error::Capacity { size: lower + 1, limit: opts.kernel_limit });
            }
            let mode = if opts.cover_exact { CoverMode::Exact } else { CoverMode::Approx };
            let kernel = christofides_kernel::kernelize(&prep.instance, &beta, mode, sub)?;
            report.kernel_size = Some(kernel.size());
            let (kernel_tour, _) = crate::exact::held_karp_limited(&kernel.kernel_instance, opts.kernel_limit)?;
            let tour = christofides_kernel::lift(&prep.instance, &kernel, &kernel_tour, None)?;
            let cost = crate::instance::tour_cost(&prep.instance, &tour)?;
            Ok((kernel.size(), tour, cost))
        })(),
        Algorithm::GenTreeDoubling => (|| {
            let arb = prep.arb.as_ref().expect("arborescence prepared for tree doubling");
            // the parameter is known before solving; record it even when the
            // meta-graph exceeds the exact-solver cap
            let k = crate::spanning::one_way_edges(&prep.instance, arb, &beta, sub).len();
            report.kernel_size = Some(k);
            let run = tree_doubling::solve(
                &prep.instance,
                &beta,
                ArbSource::Trusted(arb),
                opts.kernel_limit,
                sub,
            )?;
            Ok((run.plan.parameter_k, run.tour, run.cost))
        })(),
    };
    match outcome {
        Ok((size, _tour, cost)) => {
            report.kernel_size = Some(size);
            report.tour_cost = Some(cost);
            if let Some(reference) = report.reference {
                report.ratio = Some(Frac::new(cost as i128, reference as i128));
            }
        }
        Err(e) => {
            // kernel_size stays whatever is actually known: the cover-based
            // kernel size when the kernelization ran, the one-way-edge count
            // for tree doubling, absent when only a lower bound exists
            report.error_code = Some(e.exit_code());
            report.error = Some(e.to_string());
        }
    }
    if opts.timing {
        report.wall_time_ms = Some(started.elapsed().as_millis() as u64);
    }
    report
}

/// Solve one instance at one beta (or fraction) with one algorithm.
pub fn solve_report(
    raw: &Instance<i64>,
    algorithm: Algorithm,
    fraction: Option<&Frac>,
    beta: Option<&Beta>,
    registry: &OptimaRegistry,
    opts: &SweepOptions,
) -> Result<RunReport> {
    let prep = prepare(raw, &[algorithm], registry, opts)?;
    Ok(run_one(&prep, fraction, beta, algorithm, opts))
}

/// Cartesian product of instances, fractions and algorithms. Per-run kernel
/// capacity failures are recorded in the report, not fatal. Runs execute on
/// the current rayon pool; results are sorted (instance, algorithm,
/// descending fraction) so output is independent of scheduling.
pub fn sweep(
    instances: &[Instance<i64>],
    fractions: &[Frac],
    algorithms: &[Algorithm],
    registry: &OptimaRegistry,
    opts: &SweepOptions,
) -> Result<Vec<RunReport>> {
    let prepared: Vec<Prepared> = instances
        .par_iter()
        .map(|raw| prepare(raw, algorithms, registry, opts))
        .collect::<Result<Vec<_>>>()?;
    let mut tasks = Vec::new();
    for prep in &prepared {
        for fraction in fractions {
            for &algorithm in algorithms {
                tasks.push((prep, fraction, algorithm));
            }
        }
    }
    let mut reports: Vec<RunReport> = tasks
        .par_iter()
        .map(|(prep, fraction, algorithm)| run_one(prep, Some(fraction), None, *algorithm, opts))
        .collect();
    sort_reports(&mut reports);
    Ok(reports)
}

/// Default fraction schedule: 100%, 25%, 6.25%, 1.56%, 0%.
pub fn default_fractions() -> Vec<Frac> {
    vec![
        Frac::from_integer(1),
        Frac::new(1, 4),
        Frac::new(1, 16),
        Frac::new(1, 64),
        Frac::from_integer(0),
    ]
}

fn sort_reports(reports: &mut [RunReport]) {
    reports.sort_by(|a, b| {
        a.instance
            .cmp(&b.instance)
            .then_with(|| a.algorithm.cmp(&b.algorithm))
            .then_with(|| match (&b.fraction, &a.fraction) {
                (Some(x), Some(y)) => x.cmp(y),
                (None, None) => std::cmp::Ordering::Equal,
                (None, Some(_)) => std::cmp::Ordering::Less,
                (Some(_), None) => std::cmp::Ordering::Greater,
            })
    });
}

fn opt_str<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

/// CSV with the fixed column set; one row per report, stable order assumed.
pub fn emit_csv(reports: &[RunReport]) -> String {
    let mut out = String::from(
        "instance,algorithm,fraction,beta,kernel_size,tour_cost,reference,ref_source,ratio,wall_time_ms,seed,root\n",
    );
    for r in reports {
        let row = [
            r.instance.clone(),
            r.algorithm.id().to_string(),
            opt_str(&r.fraction),
            r.beta.to_string(),
            opt_str(&r.kernel_size),
            opt_str(&r.tour_cost),
            opt_str(&r.reference),
            opt_str(&r.ref_source),
            r.ratio.as_ref().map(|f| frac_to_decimal(f, 4)).unwrap_or_default(),
            opt_str(&r.wall_time_ms),
            opt_str(&r.seed),
            opt_str(&r.root),
        ];
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// JSON array mirroring the CSV fields, plus realized fraction and error.
pub fn emit_json(reports: &[RunReport]) -> String {
    let values: Vec<serde_json::Value> = reports
        .iter()
        .map(|r| {
            serde_json::json!({
                "instance": r.instance,
                "algorithm": r.algorithm.id(),
                "fraction": r.fraction.as_ref().map(|f| f.to_string()),
                "beta": r.beta.to_string(),
                "realized_fraction": r.realized_fraction.as_ref().map(|f| f.to_string()),
                "kernel_size": r.kernel_size,
                "tour_cost": r.tour_cost,
                "reference": r.reference,
                "ref_source": r.ref_source.map(|s| s.to_string()),
                "ratio": r.ratio.as_ref().map(|f| frac_to_decimal(f, 4)),
                "wall_time_ms": r.wall_time_ms,
                "seed": r.seed,
                "root": r.root,
                "error": r.error,
                "error_code": r.error_code,
            })
        })
        .collect();
    serde_json::to_string_pretty(&values).expect("serializable reports")
}

/// Pivot into one row per instance and one `kernel/ratio` cell per
/// (algorithm, fraction), mirroring the summary-table layout.
pub fn emit_pivot(reports: &[RunReport]) -> String {
    let mut fractions: Vec<Option<Frac>> = Vec::new();
    let mut algorithms: Vec<Algorithm> = Vec::new();
    let mut instances: Vec<String> = Vec::new();
    for r in reports {
        if !fractions.contains(&r.fraction) {
            fractions.push(r.fraction);
        }
        if !algorithms.contains(&r.algorithm) {
            algorithms.push(r.algorithm);
        }
        if !instances.contains(&r.instance) {
            instances.push(r.instance.clone());
        }
    }
    fractions.sort_by(|a, b| match (b, a) {
        (Some(x), Some(y)) => x.cmp(y),
        (None, None) => std::cmp::Ordering::Equal,
        (None, Some(_)) => std::cmp::Ordering::Less,
        (Some(_), None) => std::cmp::Ordering::Greater,
    });
    algorithms.sort();
    instances.sort();
    let mut out = String::from("instance");
    for a in &algorithms {
        for f in &fractions {
            let label = f.as_ref().map(|x| x.to_string()).unwrap_or_else(|| "-".into());
            out.push_str(&format!(",{}@{}", a.id(), label));
        }
    }
    out.push('\n');
    for inst in &instances {
        out.push_str(inst);
        for a in &algorithms {
            for f in &fractions {
                let cell = reports
                    .iter()
                    .find(|r| &r.instance == inst && r.algorithm == *a && r.fraction == *f)
                    .map(|r| match (&r.kernel_size, &r.ratio, &r.error) {
                        (Some(k), Some(ratio), None) => format!("{}/{}", k, frac_to_decimal(ratio, 2)),
                        (Some(k), None, None) => format!("{}/-", k),
                        (Some(k), _, Some(_)) => format!("{}/cap", k),
                        (None, _, Some(_)) => "cap".to_string(),
                        _ => "-".to_string(),
                    })
                    .unwrap_or_else(|| "-".into());
                out.push(',');
                out.push_str(&cell);
            }
        }
        out.push('\n');
    }
    out
}

/// Parse a tour file: whitespace-separated 0-based vertex indices; lines
/// starting with `#` are comments.
pub fn parse_tour_text(text: &str) -> Result<Tour> {
    let mut order = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        for tok in line.split_whitespace() {
            let v: usize = tok
                .parse()
                .map_err(|_| Error::Parse { line: idx + 1, msg: format!("bad vertex index {:?}", tok) })?;
            order.push(v);
        }
    }
    Ok(Tour::new(order))
}
