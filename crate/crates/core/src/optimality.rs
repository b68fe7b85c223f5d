//! First-order optimality certificates.
//!
//! At a candidate configuration the per-set conditions pin the normal
//! vectors uniquely: the implied normal of feasible set `i` is
//! `n_{S_i} = -sum_j unit(x_i - y_j)` and of target set `j` is
//! `n_{C_j} = -sum_i unit(y_j - x_i)`. Optimality then reduces to cone
//! membership of each implied normal plus the global balance of all normals,
//! so the report carries one residual per set (Euclidean distance from the
//! implied normal to the exact normal cone) and one balance residual.

use thiserror::Error;

use crate::point::Point;
use crate::problem::{Configuration, ProblemError, ProblemInstance};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OptimalityError {
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error("degenerate configuration: feasible point {i} and target point {j} coincide (distance {distance:.3e} <= tol); the certificate is undefined for overlapping pairs")]
    DegeneratePair { i: usize, j: usize, distance: f64 },
}

/// Residuals and memberships for the first-order optimality conditions.
#[derive(Clone, Debug)]
pub struct OptimalityReport {
    /// Implied normals `n_{S_i}`, one per feasible set.
    pub feasible_normals: Vec<Point>,
    /// Implied normals `n_{C_j}`, one per target set.
    pub target_normals: Vec<Point>,
    /// Distance from each `n_{S_i}` to the normal cone `N_{S_i}(x_i)`.
    pub o1_residuals: Vec<f64>,
    /// Distance from each `n_{C_j}` to the normal cone `N_{C_j}(y_j)`.
    pub o2_residuals: Vec<f64>,
    /// Norm of the summed normals; zero at optimality by the balance
    /// condition (and identically near-zero as computed, since the implied
    /// normals cancel pairwise by construction).
    pub o3_residual: f64,
    pub feasible_cone_memberships: Vec<bool>,
    pub target_cone_memberships: Vec<bool>,
    /// Smallest pairwise distance `||x_i - y_j||`.
    pub min_pair_distance: f64,
    /// Tolerance the certificate was evaluated at.
    pub tol: f64,
    /// All cone memberships hold and the balance residual is within
    /// `tol * (k + m)`.
    pub passed: bool,
}

/// Evaluate the first-order optimality conditions at `z`.
///
/// Preconditions: `z` is feasible up to `tol`, and every pairwise distance
/// exceeds `tol` (coincident pairs make the unit directions undefined; such
/// configurations are rejected with the offending pair).
pub fn check_optimality(
    inst: &ProblemInstance,
    z: &Configuration,
    tol: f64,
) -> Result<OptimalityReport, OptimalityError> {
    inst.check_feasible(z, tol)?;

    let mut min_pair_distance = f64::INFINITY;
    for (i, x) in z.xs().iter().enumerate() {
        for (j, y) in z.ys().iter().enumerate() {
            let d = x.dist(y);
            if d <= tol {
                return Err(OptimalityError::DegeneratePair { i, j, distance: d });
            }
            min_pair_distance = min_pair_distance.min(d);
        }
    }

    let dim = inst.dim();
    let mut feasible_normals = vec![Point::zeros(dim); inst.k()];
    let mut target_normals = vec![Point::zeros(dim); inst.m()];
    for (i, x) in z.xs().iter().enumerate() {
        for (j, y) in z.ys().iter().enumerate() {
            let u = x.sub(y).scale(1.0 / x.dist(y));
            // n_{S_i} = -sum_j u_ij and n_{C_j} = -sum_i (-u_ij)
            feasible_normals[i] = feasible_normals[i].sub(&u);
            target_normals[j] = target_normals[j].add(&u);
        }
    }

    let mut o1_residuals = Vec::with_capacity(inst.k());
    let mut feasible_cone_memberships = Vec::with_capacity(inst.k());
    for ((set, x), n) in inst.feasible().iter().zip(z.xs()).zip(&feasible_normals) {
        let r = set.normal_cone_residual(x, n, tol).map_err(ProblemError::from)?;
        feasible_cone_memberships.push(r <= tol * n.norm().max(1.0));
        o1_residuals.push(r);
    }
    let mut o2_residuals = Vec::with_capacity(inst.m());
    let mut target_cone_memberships = Vec::with_capacity(inst.m());
    for ((set, y), n) in inst.targets().iter().zip(z.ys()).zip(&target_normals) {
        let r = set.normal_cone_residual(y, n, tol).map_err(ProblemError::from)?;
        target_cone_memberships.push(r <= tol * n.norm().max(1.0));
        o2_residuals.push(r);
    }

    let mut balance = Point::zeros(dim);
    for n in feasible_normals.iter().chain(&target_normals) {
        balance = balance.add(n);
    }
    let o3_residual = balance.norm();

    let passed = feasible_cone_memberships.iter().all(|&b| b)
        && target_cone_memberships.iter().all(|&b| b)
        && o3_residual <= tol * (inst.k() + inst.m()) as f64;

    Ok(OptimalityReport {
        feasible_normals,
        target_normals,
        o1_residuals,
        o2_residuals,
        o3_residual,
        feasible_cone_memberships,
        target_cone_memberships,
        min_pair_distance,
        tol,
        passed,
    })
}

/// Whether each block point lies on its set's boundary (within `1e-6`).
/// Advisory: minimizers must sit on boundaries only under a separation
/// hypothesis this crate does not verify.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryReport {
    pub feasible_on_boundary: Vec<bool>,
    pub targets_on_boundary: Vec<bool>,
}

impl BoundaryReport {
    pub fn all(&self) -> bool {
        self.feasible_on_boundary.iter().chain(&self.targets_on_boundary).all(|&b| b)
    }
}

const BOUNDARY_TOL: f64 = 1e-6;

pub fn boundary_check(
    inst: &ProblemInstance,
    z: &Configuration,
) -> Result<BoundaryReport, OptimalityError> {
    inst.check_shape(z).map_err(OptimalityError::from)?;
    let on = |sets: &[crate::convex_set::ConvexSet], pts: &[Point]| {
        sets.iter()
            .zip(pts)
            .map(|(s, p)| s.on_boundary(p, BOUNDARY_TOL).map_err(ProblemError::from))
            .collect::<Result<Vec<_>, _>>()
    };
    Ok(BoundaryReport {
        feasible_on_boundary: on(inst.feasible(), z.xs())?,
        targets_on_boundary: on(inst.targets(), z.ys())?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex_set::ConvexSet;

    fn pt(coords: &[f64]) -> Point {
        Point::new(coords.to_vec()).unwrap()
    }

    fn two_ball_instance() -> ProblemInstance {
        ProblemInstance::new(
            vec![ConvexSet::ball(pt(&[0.0, 0.0]), 1.0).unwrap()],
            vec![ConvexSet::ball(pt(&[5.0, 0.0]), 1.0).unwrap()],
        )
        .unwrap()
    }

    #[test]
    fn collinear_certificate_passes() {
        let inst = two_ball_instance();
        let z = Configuration::new(vec![pt(&[1.0, 0.0])], vec![pt(&[4.0, 0.0])]);
        let report = check_optimality(&inst, &z, 1e-9).unwrap();
        assert!(report.passed);
        assert_eq!(report.feasible_normals[0], pt(&[1.0, 0.0]));
        assert_eq!(report.target_normals[0], pt(&[-1.0, 0.0]));
        assert_eq!(report.o3_residual, 0.0);
        assert_eq!(report.min_pair_distance, 3.0);
        assert!(report.o1_residuals[0] <= 1e-12);
    }

    #[test]
    fn interior_point_fails_membership() {
        let inst = two_ball_instance();
        // x strictly inside S: the implied nonzero normal cannot live in {0}
        let z = Configuration::new(vec![pt(&[0.0, 0.0])], vec![pt(&[4.0, 0.0])]);
        let report = check_optimality(&inst, &z, 1e-6).unwrap();
        assert!(!report.passed);
        assert!(!report.feasible_cone_memberships[0]);
        assert!((report.o1_residuals[0] - 1.0).abs() < 1e-12); // ||n|| with n a unit vector
    }

    #[test]
    fn misaligned_boundary_point_fails() {
        let inst = two_ball_instance();
        // x on the boundary but on the wrong side: implied normal points away
        let z = Configuration::new(vec![pt(&[0.0, 1.0])], vec![pt(&[4.0, 0.0])]);
        let report = check_optimality(&inst, &z, 1e-3).unwrap();
        assert!(!report.passed);
    }

    #[test]
    fn degenerate_pair_is_rejected_with_indices() {
        let inst = ProblemInstance::new(
            vec![ConvexSet::ball(pt(&[0.0, 0.0]), 5.0).unwrap()],
            vec![
                ConvexSet::ball(pt(&[1.0, 0.0]), 5.0).unwrap(),
                ConvexSet::ball(pt(&[2.0, 0.0]), 5.0).unwrap(),
            ],
        )
        .unwrap();
        let z = Configuration::new(
            vec![pt(&[1.0, 1.0])],
            vec![pt(&[3.0, 0.0]), pt(&[1.0, 1.0])],
        );
        match check_optimality(&inst, &z, 1e-9) {
            Err(OptimalityError::DegeneratePair { i: 0, j: 1, .. }) => {}
            other => panic!("expected degenerate pair (0, 1), got {other:?}"),
        }
    }

    #[test]
    fn balance_residual_is_bounded_by_per_set_residuals() {
        // triangle inequality on the summed identities, on an arbitrary
        // feasible configuration
        let inst = ProblemInstance::new(
            vec![
                ConvexSet::ball(pt(&[0.0, 0.0]), 1.0).unwrap(),
                ConvexSet::axis_box(pt(&[0.0, 6.0]), vec![1.0, 1.0]).unwrap(),
            ],
            vec![ConvexSet::ball(pt(&[6.0, 3.0]), 1.0).unwrap()],
        )
        .unwrap();
        let z = Configuration::new(
            vec![pt(&[1.0, 0.0]), pt(&[1.0, 5.5])],
            vec![pt(&[5.0, 3.0])],
        );
        let report = check_optimality(&inst, &z, 1e-3).unwrap();
        let sum: f64 =
            report.o1_residuals.iter().chain(&report.o2_residuals).sum();
        // the balance residual vanishes by construction, so this is strict
        assert!(report.o3_residual <= sum + 1e-12);
        assert!(report.o3_residual <= 1e-12);
    }

    #[test]
    fn scaling_the_scene_preserves_the_certificate() {
        let inst = two_ball_instance();
        let z = Configuration::new(vec![pt(&[1.0, 0.0])], vec![pt(&[4.0, 0.0])]);
        let s = 3.5;
        let scaled = ProblemInstance::new(
            inst.feasible().iter().map(|c| c.scale_about_origin(s).unwrap()).collect(),
            inst.targets().iter().map(|c| c.scale_about_origin(s).unwrap()).collect(),
        )
        .unwrap();
        let zs = Configuration::new(
            z.xs().iter().map(|p| p.scale(s)).collect(),
            z.ys().iter().map(|p| p.scale(s)).collect(),
        );
        let a = check_optimality(&inst, &z, 1e-6).unwrap();
        let b = check_optimality(&scaled, &zs, 1e-6).unwrap();
        assert_eq!(a.passed, b.passed);
        assert_eq!(a.feasible_cone_memberships, b.feasible_cone_memberships);
        for (na, nb) in a.feasible_normals.iter().zip(&b.feasible_normals) {
            assert!(na.sub(nb).norm() < 1e-12);
        }
        let fa = inst.objective(&z).unwrap();
        let fb = scaled.objective(&zs).unwrap();
        assert!((fb - s * fa).abs() < 1e-9);
    }

    #[test]
    fn boundary_report() {
        let inst = ProblemInstance::new(
            vec![ConvexSet::ball(pt(&[0.0, 0.0]), 1.0).unwrap()],
            vec![ConvexSet::axis_box(pt(&[4.0, 2.0]), vec![1.0, 1.0]).unwrap()],
        )
        .unwrap();
        let z = Configuration::new(vec![pt(&[0.0, 0.0])], vec![pt(&[3.0, 3.0])]);
        let report = boundary_check(&inst, &z).unwrap();
        assert_eq!(report.feasible_on_boundary, vec![false]); // center is interior
        assert_eq!(report.targets_on_boundary, vec![true]); // box corner
        assert!(!report.all());
    }
}
