//! Exact solver for latticized min-max optimization over max-Sugeno-Weber
//! fuzzy relational inequalities.
//!
//! The problem solved here is
//!
//! ```text
//! minimize   z(x) = max{x_1, …, x_n}
//! subject to A ∘ x ≤ b¹,   D ∘ x ≥ b²,   x ∈ [0, 1]^n,
//! ```
//!
//! where `∘` is max-T composition under the Sugeno-Weber t-norm with
//! parameter `λ > -1`. The feasible region is non-convex but highly
//! structured: one maximum solution bounds it above, finitely many minimal
//! solutions bound it below, and the optimum of `z` is attained at one of the
//! minimal solutions and admits a closed form over so-called candidate
//! values. [`solve`] decides feasibility, computes the optimal value, and
//! enumerates the optimal (or all minimal) solutions exactly.
//!
//! ```
//! use swfri::{solve, Problem, SolveOptions};
//!
//! let problem = Problem::new(
//!     1.0,
//!     vec![],            // no upper system
//!     vec![],
//!     vec![vec![0.9, 0.5], vec![0.4, 0.8]],
//!     vec![0.3, 0.3],
//! )?;
//! let result = solve(&problem, &SolveOptions::default())?;
//!
//! assert!((result.z_star.unwrap() - 4.0 / 9.0).abs() < 1e-12);
//! assert_eq!(result.optimal_solutions.len(), 1);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! The search over assignments runs on rayon by default; build with
//! `default-features = false` for a dependency-free sequential core, or pass
//! [`SolveOptions::threads`]` = Some(1)` to pick the sequential path at
//! runtime.

pub mod fixture;
pub mod oracle;
pub mod solver;
pub mod system;
pub mod tnorm;

pub use oracle::{brute_force_minimal, random_instance, GeneratorConfig};
pub use solver::{
    assemble, build_candidates, enumerate_minimal_solutions, optimal_value, solve, CandidateMatrix,
    Enumeration, InfeasibilityReason, MinimalSolution, SearchLimits, SolveError, SolveOptions,
    SolveResult, SolveStats,
};
pub use system::{max_composition, FeasibilityReport, InvalidProblem, Matrix, Problem};
pub use tnorm::{residual_geq, residual_leq, tnorm, Lambda, TnormError, UnitScalar};
