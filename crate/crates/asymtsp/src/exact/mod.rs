//! Exact combinatorial subroutines: Held-Karp, brute-force oracles,
//! minimum-weight perfect matching, Eulerian trails, and vertex cover.

mod euler;
mod held_karp;
mod matching;
mod vertex_cover;

pub use euler::{eulerian_trail, Multigraph};
pub use held_karp::{brute_force_tour, held_karp, held_karp_limited, DEFAULT_EXACT_LIMIT};
pub use matching::{min_weight_perfect_matching, Matching};
pub use vertex_cover::{cover_lower_bound, validate_injected_cover, vertex_cover_2approx, vertex_cover_exact};
