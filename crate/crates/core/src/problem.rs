//! Problem model: instance assembly, objective evaluation, the full
//! subgradient, the uniform subgradient norm bound, and the reduction to the
//! single-feasible-set problem.

use thiserror::Error;

use crate::convex_set::{ConvexSet, GeometryError, DEFAULT_TOL};
use crate::point::Point;

/// Which family a set belongs to, for diagnostics.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetRole {
    Feasible,
    Target,
}

impl std::fmt::Display for SetRole {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SetRole::Feasible => write!(f, "feasible"),
            SetRole::Target => write!(f, "target"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProblemError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("at least one {0} set is required")]
    NoSets(SetRole),
    #[error("{role} set {index} lives in R^{got}, expected R^{expected}")]
    SetDimensionMismatch { role: SetRole, index: usize, expected: usize, got: usize },
    #[error("configuration has {got_k} feasible / {got_m} target points, instance needs {k} / {m}")]
    ShapeMismatch { k: usize, m: usize, got_k: usize, got_m: usize },
    #[error("point {index} for the {role} sets lives in R^{got}, expected R^{expected}")]
    PointDimensionMismatch { role: SetRole, index: usize, expected: usize, got: usize },
    #[error("point is outside {role} set {index} (distance {distance:.3e})")]
    InfeasiblePoint { role: SetRole, index: usize, distance: f64 },
    #[error("the reduction needs exactly one feasible set, instance has {k}")]
    UnsupportedReduction { k: usize },
}

/// An instance of the multi-set distance minimization problem: `k` feasible
/// sets `S_i`, `m` target sets `C_j`, all in `R^n`.
///
/// Construction accepts instances where every set is unbounded (a minimizer
/// may then fail to exist); call [`existence_guaranteed`](Self::existence_guaranteed)
/// to check the sufficient condition that at least one set is bounded.
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemInstance {
    dim: usize,
    feasible: Vec<ConvexSet>,
    targets: Vec<ConvexSet>,
}

impl ProblemInstance {
    pub fn new(feasible: Vec<ConvexSet>, targets: Vec<ConvexSet>) -> Result<Self, ProblemError> {
        if feasible.is_empty() {
            return Err(ProblemError::NoSets(SetRole::Feasible));
        }
        if targets.is_empty() {
            return Err(ProblemError::NoSets(SetRole::Target));
        }
        let dim = feasible[0].dim();
        for (role, sets) in [(SetRole::Feasible, &feasible), (SetRole::Target, &targets)] {
            for (index, set) in sets.iter().enumerate() {
                set.validate()?;
                if set.dim() != dim {
                    return Err(ProblemError::SetDimensionMismatch {
                        role,
                        index,
                        expected: dim,
                        got: set.dim(),
                    });
                }
            }
        }
        Ok(Self { dim, feasible, targets })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of feasible sets.
    pub fn k(&self) -> usize {
        self.feasible.len()
    }

    /// Number of target sets.
    pub fn m(&self) -> usize {
        self.targets.len()
    }

    pub fn feasible(&self) -> &[ConvexSet] {
        &self.feasible
    }

    pub fn targets(&self) -> &[ConvexSet] {
        &self.targets
    }

    /// Sufficient condition for a minimizer to exist: at least one set among
    /// the feasible and target families is bounded.
    pub fn existence_guaranteed(&self) -> bool {
        self.feasible.iter().chain(&self.targets).any(ConvexSet::is_bounded)
    }

    pub fn check_shape(&self, z: &Configuration) -> Result<(), ProblemError> {
        if z.xs.len() != self.k() || z.ys.len() != self.m() {
            return Err(ProblemError::ShapeMismatch {
                k: self.k(),
                m: self.m(),
                got_k: z.xs.len(),
                got_m: z.ys.len(),
            });
        }
        for (role, pts) in [(SetRole::Feasible, &z.xs), (SetRole::Target, &z.ys)] {
            for (index, p) in pts.iter().enumerate() {
                if p.dim() != self.dim {
                    return Err(ProblemError::PointDimensionMismatch {
                        role,
                        index,
                        expected: self.dim,
                        got: p.dim(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Opt-in feasibility check: every block point must lie in its set up to
    /// `tol`. Reports the first offending set.
    pub fn check_feasible(&self, z: &Configuration, tol: f64) -> Result<(), ProblemError> {
        self.check_shape(z)?;
        for (role, sets, pts) in [
            (SetRole::Feasible, &self.feasible, &z.xs),
            (SetRole::Target, &self.targets, &z.ys),
        ] {
            for (index, (set, p)) in sets.iter().zip(pts).enumerate() {
                let distance = set.distance(p)?;
                if distance > tol {
                    return Err(ProblemError::InfeasiblePoint { role, index, distance });
                }
            }
        }
        Ok(())
    }

    /// Blockwise projection onto the feasible product set: each feasible
    /// block onto its `S_i`, each target block onto its `C_j`. Exact because
    /// the product set is a Cartesian product.
    pub fn project_blockwise(&self, z: &Configuration) -> Result<Configuration, ProblemError> {
        self.check_shape(z)?;
        let xs = self
            .feasible
            .iter()
            .zip(&z.xs)
            .map(|(s, p)| s.project(p))
            .collect::<Result<Vec<_>, _>>()?;
        let ys = self
            .targets
            .iter()
            .zip(&z.ys)
            .map(|(s, p)| s.project(p))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Configuration { xs, ys })
    }

    /// The objective `F(Z) = sum_i sum_j || x_i - y_j ||`.
    pub fn objective(&self, z: &Configuration) -> Result<f64, ProblemError> {
        self.check_shape(z)?;
        let mut acc = 0.0;
        for x in &z.xs {
            for y in &z.ys {
                acc += x.dist(y);
            }
        }
        Ok(acc)
    }

    /// A subgradient of `F` at `Z`: each pair contributes the unit vector of
    /// `x_i - y_j` to the `x_i` block and its negation to the `y_j` block;
    /// coincident pairs contribute zero.
    pub fn subgradient(&self, z: &Configuration) -> Result<Subgradient, ProblemError> {
        self.check_shape(z)?;
        let mut gxs = vec![Point::zeros(self.dim); self.k()];
        let mut gys = vec![Point::zeros(self.dim); self.m()];
        for (i, x) in z.xs.iter().enumerate() {
            for (j, y) in z.ys.iter().enumerate() {
                let d = x.dist(y);
                if d == 0.0 {
                    continue;
                }
                let u = x.sub(y).scale(1.0 / d);
                gxs[i] = gxs[i].add(&u);
                gys[j] = gys[j].sub(&u);
            }
        }
        Ok(Subgradient { gxs, gys })
    }

    /// For a single feasible set, fixing `x ∈ S_1` makes the best target
    /// choices the projections of `x`: returns `(sum_j d(x, C_j), [proj_{C_j}(x)])`.
    pub fn reduce_to_generalized_heron(
        &self,
        x: &Point,
    ) -> Result<(f64, Vec<Point>), ProblemError> {
        if self.k() != 1 {
            return Err(ProblemError::UnsupportedReduction { k: self.k() });
        }
        let distance = self.feasible[0].distance(x)?;
        if distance > DEFAULT_TOL {
            return Err(ProblemError::InfeasiblePoint {
                role: SetRole::Feasible,
                index: 0,
                distance,
            });
        }
        let mut value = 0.0;
        let mut ys = Vec::with_capacity(self.m());
        for c in &self.targets {
            value += c.distance(x)?;
            ys.push(c.project(x)?);
        }
        Ok((value, ys))
    }
}

/// A decision vector: one point per feasible set and one per target set.
#[derive(Clone, Debug, PartialEq)]
pub struct Configuration {
    xs: Vec<Point>,
    ys: Vec<Point>,
}

impl Configuration {
    pub fn new(xs: Vec<Point>, ys: Vec<Point>) -> Self {
        Self { xs, ys }
    }

    pub fn xs(&self) -> &[Point] {
        &self.xs
    }

    pub fn ys(&self) -> &[Point] {
        &self.ys
    }

    pub fn blocks(&self) -> impl Iterator<Item = &Point> {
        self.xs.iter().chain(self.ys.iter())
    }

    /// Euclidean distance between two configurations viewed as stacked
    /// vectors of `R^{n(k+m)}`.
    pub fn flat_distance(&self, other: &Configuration) -> f64 {
        let mut acc = 0.0;
        for (a, b) in self.blocks().zip(other.blocks()) {
            let d = a.dist(b);
            acc += d * d;
        }
        acc.sqrt()
    }

    /// Blockwise affine combination `(1 - t) * self + t * other`.
    pub fn lerp(&self, other: &Configuration, t: f64) -> Configuration {
        let comb = |a: &Point, b: &Point| a.scale(1.0 - t).add(&b.scale(t));
        Configuration {
            xs: self.xs.iter().zip(&other.xs).map(|(a, b)| comb(a, b)).collect(),
            ys: self.ys.iter().zip(&other.ys).map(|(a, b)| comb(a, b)).collect(),
        }
    }
}

/// A subgradient of the objective, split into per-set blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct Subgradient {
    gxs: Vec<Point>,
    gys: Vec<Point>,
}

impl Subgradient {
    pub fn gxs(&self) -> &[Point] {
        &self.gxs
    }

    pub fn gys(&self) -> &[Point] {
        &self.gys
    }

    pub fn norm(&self) -> f64 {
        let mut acc = 0.0;
        for g in self.gxs.iter().chain(&self.gys) {
            acc += g.norm_sq();
        }
        acc.sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.gxs.iter().chain(&self.gys).all(Point::is_finite)
    }
}

/// Uniform bound on the norm of any subgradient of the objective:
/// `sqrt(k * m * (m + k))`. Each `x`-block is a sum of at most `m` unit
/// vectors and each `y`-block a sum of at most `k`.
pub fn subgradient_norm_bound(k: usize, m: usize) -> f64 {
    let (k, m) = (k as f64, m as f64);
    (k * m * (m + k)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(coords: &[f64]) -> Point {
        Point::new(coords.to_vec()).unwrap()
    }

    fn ball(c: &[f64], r: f64) -> ConvexSet {
        ConvexSet::ball(pt(c), r).unwrap()
    }

    #[test]
    fn instance_validation() {
        assert!(matches!(
            ProblemInstance::new(vec![], vec![ball(&[0.0, 0.0], 1.0)]),
            Err(ProblemError::NoSets(SetRole::Feasible))
        ));
        assert!(matches!(
            ProblemInstance::new(vec![ball(&[0.0, 0.0], 1.0)], vec![]),
            Err(ProblemError::NoSets(SetRole::Target))
        ));
        let err = ProblemInstance::new(
            vec![ball(&[0.0, 0.0], 1.0)],
            vec![ball(&[0.0, 0.0, 0.0], 1.0)],
        )
        .unwrap_err();
        assert!(matches!(err, ProblemError::SetDimensionMismatch { role: SetRole::Target, .. }));
    }

    #[test]
    fn existence_guard() {
        let hs = ConvexSet::halfspace(pt(&[0.0, 1.0]), 0.0).unwrap();
        let bounded = ProblemInstance::new(
            vec![hs.clone()],
            vec![ConvexSet::singleton(pt(&[0.0, 3.0]))],
        )
        .unwrap();
        assert!(bounded.existence_guaranteed());
        let unbounded = ProblemInstance::new(vec![hs.clone()], vec![hs]).unwrap();
        assert!(!unbounded.existence_guaranteed());
    }

    #[test]
    fn objective_values() {
        let inst = ProblemInstance::new(
            vec![ball(&[0.0, 0.0], 1.0)],
            vec![ball(&[5.0, 0.0], 1.0)],
        )
        .unwrap();
        let z = Configuration::new(vec![pt(&[0.0, 0.0])], vec![pt(&[3.0, 4.0])]);
        assert_eq!(inst.objective(&z).unwrap(), 5.0);

        // all points coincident => zero
        let inst22 = ProblemInstance::new(
            vec![ball(&[0.0, 0.0], 5.0), ball(&[1.0, 0.0], 5.0)],
            vec![ball(&[0.0, 1.0], 5.0), ball(&[1.0, 1.0], 5.0)],
        )
        .unwrap();
        let same = pt(&[0.5, 0.5]);
        let z = Configuration::new(vec![same.clone(), same.clone()], vec![same.clone(), same]);
        assert_eq!(inst22.objective(&z).unwrap(), 0.0);
    }

    #[test]
    fn objective_shape_mismatch() {
        let inst = ProblemInstance::new(
            vec![ball(&[0.0, 0.0], 1.0)],
            vec![ball(&[5.0, 0.0], 1.0)],
        )
        .unwrap();
        let z = Configuration::new(vec![pt(&[0.0, 0.0]); 2], vec![pt(&[3.0, 4.0])]);
        assert!(matches!(inst.objective(&z), Err(ProblemError::ShapeMismatch { .. })));
    }

    #[test]
    fn subgradient_unit_directions() {
        let inst = ProblemInstance::new(
            vec![ball(&[0.0, 0.0], 1.0)],
            vec![ball(&[5.0, 0.0], 1.0)],
        )
        .unwrap();
        let z = Configuration::new(vec![pt(&[0.0, 0.0])], vec![pt(&[3.0, 4.0])]);
        let g = inst.subgradient(&z).unwrap();
        assert!((g.gxs()[0][0] + 0.6).abs() < 1e-15);
        assert!((g.gxs()[0][1] + 0.8).abs() < 1e-15);
        assert!((g.gys()[0][0] - 0.6).abs() < 1e-15);
        assert!((g.gys()[0][1] - 0.8).abs() < 1e-15);

        // coincident pair contributes zero
        let z = Configuration::new(vec![pt(&[3.0, 4.0])], vec![pt(&[3.0, 4.0])]);
        let g = inst.subgradient(&z).unwrap();
        assert_eq!(g.gxs()[0], Point::zeros(2));
        assert_eq!(g.gys()[0], Point::zeros(2));
    }

    #[test]
    fn subgradient_opposing_directions_cancel() {
        let inst = ProblemInstance::new(
            vec![ball(&[0.0, 0.0], 1.0)],
            vec![ball(&[5.0, 0.0], 1.0), ball(&[-5.0, 0.0], 1.0)],
        )
        .unwrap();
        let z = Configuration::new(
            vec![pt(&[0.0, 0.0])],
            vec![pt(&[1.0, 0.0]), pt(&[-1.0, 0.0])],
        );
        let g = inst.subgradient(&z).unwrap();
        assert_eq!(g.gxs()[0], Point::zeros(2));
    }

    #[test]
    fn norm_bound_values() {
        assert!((subgradient_norm_bound(4, 3) - 84f64.sqrt()).abs() < 1e-15);
        assert!((subgradient_norm_bound(1, 1) - 2f64.sqrt()).abs() < 1e-15);
        assert!((subgradient_norm_bound(3, 2) - 30f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn reduction_requires_single_feasible_set() {
        let inst = ProblemInstance::new(
            vec![ball(&[0.0, 0.0], 1.0), ball(&[9.0, 0.0], 1.0)],
            vec![ball(&[5.0, 0.0], 1.0)],
        )
        .unwrap();
        assert!(matches!(
            inst.reduce_to_generalized_heron(&pt(&[0.0, 0.0])),
            Err(ProblemError::UnsupportedReduction { k: 2 })
        ));
    }

    #[test]
    fn reduction_projects_each_target() {
        let hs = ConvexSet::halfspace(pt(&[0.0, 1.0]), 0.0).unwrap();
        let inst = ProblemInstance::new(
            vec![hs],
            vec![ConvexSet::singleton(pt(&[0.0, 3.0]))],
        )
        .unwrap();
        let (value, ys) = inst.reduce_to_generalized_heron(&pt(&[0.0, 0.0])).unwrap();
        assert_eq!(value, 3.0);
        assert_eq!(ys, vec![pt(&[0.0, 3.0])]);

        let inst = ProblemInstance::new(
            vec![ConvexSet::halfspace(pt(&[1.0, 0.0]), 2.0).unwrap()],
            vec![ball(&[5.0, 0.0], 1.0)],
        )
        .unwrap();
        let (value, ys) = inst.reduce_to_generalized_heron(&pt(&[0.0, 0.0])).unwrap();
        assert_eq!(value, 4.0);
        assert_eq!(ys, vec![pt(&[4.0, 0.0])]);
    }

    #[test]
    fn reduction_rejects_points_off_the_feasible_set() {
        let inst = ProblemInstance::new(
            vec![ball(&[0.0, 0.0], 1.0)],
            vec![ball(&[5.0, 0.0], 1.0)],
        )
        .unwrap();
        assert!(matches!(
            inst.reduce_to_generalized_heron(&pt(&[2.0, 0.0])),
            Err(ProblemError::InfeasiblePoint { role: SetRole::Feasible, index: 0, .. })
        ));
    }

    #[test]
    fn feasibility_check_names_the_set() {
        let inst = ProblemInstance::new(
            vec![ball(&[0.0, 0.0], 1.0)],
            vec![ball(&[5.0, 0.0], 1.0), ball(&[0.0, 5.0], 1.0)],
        )
        .unwrap();
        let z = Configuration::new(
            vec![pt(&[1.0, 0.0])],
            vec![pt(&[4.0, 0.0]), pt(&[0.0, 2.0])],
        );
        match inst.check_feasible(&z, 1e-9) {
            Err(ProblemError::InfeasiblePoint { role: SetRole::Target, index: 1, distance }) => {
                assert!((distance - 2.0).abs() < 1e-12);
            }
            other => panic!("expected infeasibility at target 1, got {other:?}"),
        }
    }
}
