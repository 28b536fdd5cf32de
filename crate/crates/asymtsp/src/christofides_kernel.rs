//! Cover-kernelized Christofides for metric ATSP: reduce to the subinstance
//! induced by a vertex cover of the beta-asymmetric-pair graph plus one glue
//! vertex, solve that kernel, and lift by running (relaxed) Christofides on
//! the cover's complement and gluing the two tours at the shared vertex.
//!
//! With an exact kernel solution this is a parameterized 2.5-approximation
//! at beta = 1 and a (7/4 + (3/4) beta)-approximation in general; as a lossy
//! kernelization it adds (3/4)(1 + beta) to the kernel solution's ratio.

use crate::christofides::relaxed_christofides;
use crate::exact::{held_karp_limited, validate_injected_cover, vertex_cover_2approx, vertex_cover_exact, DEFAULT_EXACT_LIMIT};
use crate::instance::{beta_asymmetric_pairs, tour_cost, Instance, Tour, Trail};
use crate::metric::metric_shortcut;
use crate::weight::{Beta, Frac, Weight};
use crate::{Error, Result};

/// How the vertex cover of the beta-asymmetric-pair graph is obtained.
#[derive(Debug, Clone)]
pub enum CoverMode<'a> {
    /// Minimum cover by branching search.
    Exact,
    /// Maximal-matching 2-approximation.
    Approx,
    /// Externally supplied cover; validated for coverage, and for minimality
    /// when claimed.
    Injected { cover: &'a [usize], claim_minimum: bool },
}

/// The reduced instance plus everything needed to lift its solutions.
#[derive(Debug, Clone)]
pub struct Kernel<W> {
    /// Induced subinstance on `kernel_vertices` (metric by induction).
    pub kernel_instance: Instance<W>,
    /// Cover plus glue vertex, ascending original ids.
    pub kernel_vertices: Vec<usize>,
    /// Lowest-index vertex outside the cover; absent when the cover is all
    /// of V (degenerate kernel = whole instance, lifting is the identity).
    pub glue_vertex: Option<usize>,
    pub cover: Vec<usize>,
    /// V minus the cover, ascending; the symmetric side handled by
    /// Christofides.
    pub complement_vertices: Vec<usize>,
    pub beta: Beta,
    /// Zero-cost substitute the pair classification was made with.
    pub zero_substitute: Option<Frac>,
    /// Size of the cover.
    pub parameter_z: usize,
}

impl<W> Kernel<W> {
    /// Number of vertices solved exactly.
    pub fn size(&self) -> usize {
        self.kernel_vertices.len()
    }
}

fn require_metric<W: Weight>(instance: &Instance<W>) -> Result<()> {
    if let Some((u, v, w)) = instance.check_metric(1).first().copied() {
        return Err(Error::NotMetric(u, v, w));
    }
    Ok(())
}

/// Reduce a metric instance to the kernel induced by a cover of the
/// beta-asymmetric pairs plus the lowest-index vertex outside the cover.
pub fn kernelize<W: Weight>(
    instance: &Instance<W>,
    beta: &Beta,
    mode: CoverMode,
    zero_substitute: Option<&Frac>,
) -> Result<Kernel<W>> {
    require_metric(instance)?;
    let n = instance.n();
    let pairs = beta_asymmetric_pairs(instance, beta, zero_substitute);
    let cover: Vec<usize> = match mode {
        CoverMode::Exact => vertex_cover_exact(&pairs),
        CoverMode::Approx => vertex_cover_2approx(&pairs),
        CoverMode::Injected { cover, claim_minimum } => {
            validate_injected_cover(&pairs, cover, claim_minimum)?;
            let mut c: Vec<usize> = cover.to_vec();
            c.sort_unstable();
            c.dedup();
            if let Some(&v) = c.iter().find(|&&v| v >= n) {
                return Err(Error::validation(format!("injected cover vertex {} out of range", v)));
            }
            c
        }
    };
    let in_cover = {
        let mut mask = vec![false; n];
        for &v in &cover {
            mask[v] = true;
        }
        mask
    };
    let glue_vertex = (0..n).find(|&v| !in_cover[v]);
    let mut kernel_vertices = cover.clone();
    if let Some(g) = glue_vertex {
        kernel_vertices.push(g);
        kernel_vertices.sort_unstable();
    }
    let complement_vertices: Vec<usize> = (0..n).filter(|&v| !in_cover[v]).collect();
    let kernel_instance = instance.induced(&kernel_vertices);
    Ok(Kernel {
        kernel_instance,
        parameter_z: cover.len(),
        kernel_vertices,
        glue_vertex,
        cover,
        complement_vertices,
        beta: beta.clone(),
        zero_substitute: zero_substitute.cloned(),
    })
}

/// Turn a kernel tour into a full tour: run relaxed Christofides on the
/// cover's complement (plain Christofides when that side is fully
/// symmetric), rotate both tours to the glue vertex, concatenate, and take
/// metric shortcuts. Adds at most (3/4)(1 + beta) times the optimum to the
/// kernel tour's cost.
pub fn lift<W: Weight>(
    instance: &Instance<W>,
    kernel: &Kernel<W>,
    kernel_tour: &Tour,
    complement_mst: Option<&[(usize, usize)]>,
) -> Result<Tour> {
    kernel_tour.validate(kernel.kernel_instance.n())?;
    let mapped = kernel_tour.mapped(&kernel.kernel_vertices);
    if kernel.kernel_vertices.len() == instance.n() {
        return Ok(mapped);
    }
    let glue = kernel
        .glue_vertex
        .expect("kernel smaller than the instance always has a glue vertex");
    if kernel.complement_vertices.len() == 1 {
        return Ok(mapped);
    }
    debug_assert!(
        beta_asymmetric_pairs(
            &instance.induced(&kernel.complement_vertices),
            &kernel.beta,
            kernel.zero_substitute.as_ref(),
        )
        .is_empty(),
        "cover complement must contain no beta-asymmetric pair"
    );
    let symmetric_side = relaxed_christofides(instance, &kernel.complement_vertices, complement_mst)?;
    let kernel_side = mapped.rotated_to(glue);
    let side = {
        let t = Tour::new(symmetric_side);
        t.rotated_to(glue)
    };
    let mut walk = kernel_side.order().to_vec();
    walk.extend_from_slice(side.order());
    let tour = Tour::new(metric_shortcut(&Trail::closed(walk), false).vertices);
    tour.validate(instance.n())?;
    Ok(tour)
}

/// Outcome of an end-to-end run.
#[derive(Debug, Clone)]
pub struct Run<W> {
    pub kernel: Kernel<W>,
    pub kernel_tour: Tour,
    pub kernel_cost: W,
    pub tour: Tour,
    pub cost: W,
}

/// Kernelize, solve the kernel exactly with Held-Karp (failing loudly when
/// it exceeds `kernel_limit`), and lift.
pub fn solve<W: Weight>(
    instance: &Instance<W>,
    beta: &Beta,
    mode: CoverMode,
    kernel_limit: usize,
    complement_mst: Option<&[(usize, usize)]>,
    zero_substitute: Option<&Frac>,
) -> Result<Run<W>> {
    let kernel = kernelize(instance, beta, mode, zero_substitute)?;
    let (kernel_tour, kernel_cost) = held_karp_limited(&kernel.kernel_instance, kernel_limit)?;
    let tour = lift(instance, &kernel, &kernel_tour, complement_mst)?;
    let cost = tour_cost(instance, &tour)?;
    Ok(Run { kernel, kernel_tour, kernel_cost, tour, cost })
}

/// [`solve`] with the default Held-Karp cap and no injections.
pub fn solve_default<W: Weight>(instance: &Instance<W>, beta: &Beta) -> Result<Run<W>> {
    solve(instance, beta, CoverMode::Exact, DEFAULT_EXACT_LIMIT, None, None)
}
