//! Solver library for the generalized multi-set Heron problem: pick one point
//! in each of `k` feasible convex sets and one point in each of `m` target
//! convex sets in `R^n`, minimizing the sum of all pairwise Euclidean
//! distances.
//!
//! The crate is organized around five pieces:
//!
//! - [`convex_set`]: exact geometry kernel (projection, distance, normal
//!   cones, distance-function subdifferentials) for balls, axis-aligned
//!   boxes, halfspaces, segments, and singletons;
//! - [`problem`]: the problem model — objective, full subgradient, the
//!   uniform subgradient norm bound, and the single-feasible-set reduction;
//! - [`solver`]: the projected subgradient method with diminishing step
//!   sizes, best-iterate tracking, and convergence-bound certification;
//! - [`optimality`]: first-order optimality certificates built from
//!   normal-cone residuals;
//! - [`oracle`]: an independent brute-force grid minimizer for validating
//!   solver output on small bounded instances.
//!
//! All types are immutable values; every operation is a pure function, so
//! instances can be shared freely across threads.

pub mod convex_set;
pub mod optimality;
pub mod oracle;
pub mod point;
pub mod problem;
pub mod sample;
pub mod solver;

pub use convex_set::{ConvexSet, DistanceSubdifferential, GeometryError, NormalConeCap, DEFAULT_TOL};
pub use optimality::{boundary_check, check_optimality, BoundaryReport, OptimalityError, OptimalityReport};
pub use oracle::{brute_force_min, non_uniqueness_probe, GridSpec, OracleError, OracleResult};
pub use point::Point;
pub use problem::{
    subgradient_norm_bound, Configuration, ProblemError, ProblemInstance, SetRole, Subgradient,
};
pub use solver::{
    certify_convergence_bound, solve, step, ConvergenceCertificate, HistoryEntry, HistoryPolicy,
    SolveOptions, SolverError, SolverRun, StepSchedule, StopReason, StoppingRule,
};
