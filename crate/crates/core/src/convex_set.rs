//! Closed convex set shapes with exact Euclidean projection, distance,
//! boundary classification, and normal-cone tests.
//!
//! The shape catalog (ball, axis-aligned box, halfspace, segment, singleton)
//! covers every set the solver and the bundled scenes need while keeping all
//! projections closed-form; no general QP machinery is involved. Everything
//! is plain `f64`; comparisons default to the absolute tolerance
//! [`DEFAULT_TOL`] and every predicate takes an explicit tolerance.

use thiserror::Error;

use crate::point::Point;

/// Default absolute tolerance for geometric comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("dimension mismatch: set lives in R^{expected}, point in R^{got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point coordinates must be finite")]
    NonFiniteCoordinates,
    #[error("a point needs at least one coordinate")]
    EmptyPoint,
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("base point is not in the set (distance {distance:.3e})")]
    BaseOutsideSet { distance: f64 },
}

/// A nonempty closed convex subset of `R^n`.
///
/// Invariants, checked by the constructors: ball radius > 0, box half-widths
/// all > 0, halfspace normal nonzero, segment endpoints distinct. A
/// `Halfspace { normal, offset }` is the region `{ z : <normal, z> <= offset }`.
#[derive(Clone, Debug, PartialEq)]
pub enum ConvexSet {
    Ball { center: Point, radius: f64 },
    Box { center: Point, half_widths: Vec<f64> },
    Halfspace { normal: Point, offset: f64 },
    Segment { a: Point, b: Point },
    Singleton { point: Point },
}

impl ConvexSet {
    pub fn ball(center: Point, radius: f64) -> Result<Self, GeometryError> {
        let set = ConvexSet::Ball { center, radius };
        set.validate()?;
        Ok(set)
    }

    /// Axis-aligned box given by its center and per-axis half-widths.
    pub fn axis_box(center: Point, half_widths: Vec<f64>) -> Result<Self, GeometryError> {
        let set = ConvexSet::Box { center, half_widths };
        set.validate()?;
        Ok(set)
    }

    /// The region `{ z : <normal, z> <= offset }`.
    pub fn halfspace(normal: Point, offset: f64) -> Result<Self, GeometryError> {
        let set = ConvexSet::Halfspace { normal, offset };
        set.validate()?;
        Ok(set)
    }

    pub fn segment(a: Point, b: Point) -> Result<Self, GeometryError> {
        let set = ConvexSet::Segment { a, b };
        set.validate()?;
        Ok(set)
    }

    pub fn singleton(point: Point) -> Self {
        ConvexSet::Singleton { point }
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        match self {
            ConvexSet::Ball { center: _, radius } => {
                if !(radius.is_finite() && *radius > 0.0) {
                    return Err(GeometryError::InvalidShape(format!(
                        "ball radius must be positive and finite, got {radius}"
                    )));
                }
            }
            ConvexSet::Box { center, half_widths } => {
                if half_widths.len() != center.dim() {
                    return Err(GeometryError::DimensionMismatch {
                        expected: center.dim(),
                        got: half_widths.len(),
                    });
                }
                if half_widths.iter().any(|h| !(h.is_finite() && *h > 0.0)) {
                    return Err(GeometryError::InvalidShape(
                        "box half-widths must all be positive and finite".into(),
                    ));
                }
            }
            ConvexSet::Halfspace { normal, offset } => {
                if normal.norm_sq() == 0.0 {
                    return Err(GeometryError::InvalidShape(
                        "halfspace normal must be nonzero".into(),
                    ));
                }
                if !offset.is_finite() {
                    return Err(GeometryError::InvalidShape(
                        "halfspace offset must be finite".into(),
                    ));
                }
            }
            ConvexSet::Segment { a, b } => {
                if a.dim() != b.dim() {
                    return Err(GeometryError::DimensionMismatch {
                        expected: a.dim(),
                        got: b.dim(),
                    });
                }
                if a == b {
                    return Err(GeometryError::InvalidShape(
                        "segment endpoints must be distinct".into(),
                    ));
                }
            }
            ConvexSet::Singleton { .. } => {}
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvexSet::Ball { center, .. } => center.dim(),
            ConvexSet::Box { center, .. } => center.dim(),
            ConvexSet::Halfspace { normal, .. } => normal.dim(),
            ConvexSet::Segment { a, .. } => a.dim(),
            ConvexSet::Singleton { point } => point.dim(),
        }
    }

    fn check_dim(&self, z: &Point) -> Result<(), GeometryError> {
        if self.dim() != z.dim() {
            Err(GeometryError::DimensionMismatch { expected: self.dim(), got: z.dim() })
        } else {
            Ok(())
        }
    }

    /// Halfspaces are the only unbounded shape in the catalog.
    pub fn is_bounded(&self) -> bool {
        !matches!(self, ConvexSet::Halfspace { .. })
    }

    /// Diameter of the set; `None` when unbounded.
    pub fn diameter(&self) -> Option<f64> {
        match self {
            ConvexSet::Ball { radius, .. } => Some(2.0 * radius),
            ConvexSet::Box { half_widths, .. } => {
                Some(2.0 * half_widths.iter().map(|h| h * h).sum::<f64>().sqrt())
            }
            ConvexSet::Halfspace { .. } => None,
            ConvexSet::Segment { a, b } => Some(a.dist(b)),
            ConvexSet::Singleton { .. } => Some(0.0),
        }
    }

    /// A deterministic representative point: the center of a ball or box,
    /// the midpoint of a segment, the singleton itself, and for a halfspace
    /// the projection of the origin.
    pub fn anchor(&self) -> Point {
        match self {
            ConvexSet::Ball { center, .. } => center.clone(),
            ConvexSet::Box { center, .. } => center.clone(),
            ConvexSet::Halfspace { .. } => self
                .project(&Point::zeros(self.dim()))
                .expect("origin has the right dimension"),
            ConvexSet::Segment { a, b } => a.add_scaled(&b.sub(a), 0.5),
            ConvexSet::Singleton { point } => point.clone(),
        }
    }

    /// Euclidean projection onto the set: the unique nearest point.
    pub fn project(&self, z: &Point) -> Result<Point, GeometryError> {
        self.check_dim(z)?;
        Ok(match self {
            ConvexSet::Ball { center, radius } => {
                let d = z.dist(center);
                if d <= *radius {
                    z.clone()
                } else {
                    let f = radius / d;
                    Point::from_coords(
                        center
                            .coords()
                            .iter()
                            .zip(z.coords())
                            .map(|(c, x)| c + (x - c) * f)
                            .collect(),
                    )
                }
            }
            ConvexSet::Box { center, half_widths } => Point::from_coords(
                z.coords()
                    .iter()
                    .zip(center.coords().iter().zip(half_widths))
                    .map(|(x, (c, h))| x.max(c - h).min(c + h))
                    .collect(),
            ),
            ConvexSet::Halfspace { normal, offset } => {
                let s = normal.dot(z);
                if s <= *offset {
                    z.clone()
                } else {
                    z.add_scaled(normal, (offset - s) / normal.norm_sq())
                }
            }
            ConvexSet::Segment { a, b } => {
                let d = b.sub(a);
                let t = (z.sub(a).dot(&d) / d.norm_sq()).clamp(0.0, 1.0);
                a.add_scaled(&d, t)
            }
            ConvexSet::Singleton { point } => point.clone(),
        })
    }

    /// Distance to the set, `|| z - project(z) ||`; zero exactly when `z`
    /// belongs to the set.
    pub fn distance(&self, z: &Point) -> Result<f64, GeometryError> {
        Ok(z.dist(&self.project(z)?))
    }

    pub fn contains(&self, z: &Point, tol: f64) -> Result<bool, GeometryError> {
        Ok(self.distance(z)? <= tol)
    }

    /// Distance from `z` to the topological boundary of the set. For points
    /// outside the set this equals the distance to the set; for points
    /// inside it is the depth below the nearest face/surface. Segments in
    /// dimension >= 2 and singletons have empty interior, so every point of
    /// the set is boundary.
    pub fn distance_to_boundary(&self, z: &Point) -> Result<f64, GeometryError> {
        self.check_dim(z)?;
        Ok(match self {
            ConvexSet::Ball { center, radius } => (z.dist(center) - radius).abs(),
            ConvexSet::Box { center, half_widths } => {
                let outside = self.distance(z)?;
                if outside > 0.0 {
                    outside
                } else {
                    z.coords()
                        .iter()
                        .zip(center.coords().iter().zip(half_widths))
                        .map(|(x, (c, h))| ((c + h) - x).min(x - (c - h)))
                        .fold(f64::INFINITY, f64::min)
                }
            }
            ConvexSet::Halfspace { normal, offset } => {
                (offset - normal.dot(z)).abs() / normal.norm()
            }
            ConvexSet::Segment { a, b } => {
                if self.dim() == 1 {
                    // an interval of the line: boundary is the endpoint pair
                    z.dist(a).min(z.dist(b))
                } else {
                    self.distance(z)?
                }
            }
            ConvexSet::Singleton { point } => z.dist(point),
        })
    }

    pub fn on_boundary(&self, z: &Point, tol: f64) -> Result<bool, GeometryError> {
        Ok(self.distance_to_boundary(z)? <= tol)
    }

    /// Euclidean distance from `v` to the normal cone of the set at `base`.
    ///
    /// `tol` classifies which faces of the set are active at `base` (a point
    /// within `tol` of the boundary counts as on it). The base point must
    /// belong to the set up to `tol`.
    ///
    /// Per shape: ball/halfspace boundaries project `v` onto the outward
    /// normal ray, box boundaries onto the product of per-coordinate cones,
    /// segment endpoints onto a halfspace of directions, segment interiors
    /// onto the orthogonal complement of the direction, singletons accept
    /// everything, and interior points accept only the zero vector.
    pub fn normal_cone_residual(
        &self,
        base: &Point,
        v: &Point,
        tol: f64,
    ) -> Result<f64, GeometryError> {
        self.check_dim(base)?;
        self.check_dim(v)?;
        let dist = self.distance(base)?;
        if dist > tol {
            return Err(GeometryError::BaseOutsideSet { distance: dist });
        }
        Ok(match self {
            ConvexSet::Ball { center, radius } => {
                let r = base.dist(center);
                if r >= radius - tol && r > 0.0 {
                    let u = base.sub(center).scale(1.0 / r);
                    let along = v.dot(&u).max(0.0);
                    v.sub(&u.scale(along)).norm()
                } else {
                    v.norm()
                }
            }
            ConvexSet::Box { center, half_widths } => {
                let mut acc = 0.0;
                for ((x, vi), (c, h)) in base
                    .coords()
                    .iter()
                    .zip(v.coords())
                    .zip(center.coords().iter().zip(half_widths))
                {
                    let at_upper = (c + h) - x <= tol;
                    let at_lower = x - (c - h) <= tol;
                    let r = match (at_upper, at_lower) {
                        (true, true) => 0.0,            // degenerate thin axis: whole line
                        (true, false) => (-vi).max(0.0), // cone [0, inf)
                        (false, true) => vi.max(0.0),    // cone (-inf, 0]
                        (false, false) => vi.abs(),      // cone {0}
                    };
                    acc += r * r;
                }
                acc.sqrt()
            }
            ConvexSet::Halfspace { normal, offset } => {
                let gap = (offset - normal.dot(base)) / normal.norm();
                if gap.abs() <= tol {
                    let u = normal.scale(1.0 / normal.norm());
                    let along = v.dot(&u).max(0.0);
                    v.sub(&u.scale(along)).norm()
                } else {
                    v.norm()
                }
            }
            ConvexSet::Segment { a, b } => {
                let d = b.sub(a);
                let len = d.norm();
                let u = d.scale(1.0 / len);
                let t = base.sub(a).dot(&u); // arclength position in [0, len]
                if t <= tol {
                    v.dot(&u).max(0.0)
                } else if t >= len - tol {
                    (-v.dot(&u)).max(0.0)
                } else {
                    v.dot(&u).abs()
                }
            }
            ConvexSet::Singleton { .. } => 0.0,
        })
    }

    /// Does `v` belong to the normal cone of the set at `base`, up to an
    /// angular tolerance? For balls, boxes and halfspaces the test is
    /// `normal_cone_residual <= tol * max(1, ||v||)`. Segments and singletons
    /// fall back to the variational inequality `<v, y - base> <= tol * ||v||`
    /// checked over the extreme points.
    pub fn in_normal_cone(&self, base: &Point, v: &Point, tol: f64) -> Result<bool, GeometryError> {
        match self {
            ConvexSet::Segment { a, b } => {
                let dist = self.distance(base)?;
                if dist > tol {
                    return Err(GeometryError::BaseOutsideSet { distance: dist });
                }
                let slack = tol * v.norm();
                Ok(v.dot(&a.sub(base)) <= slack && v.dot(&b.sub(base)) <= slack)
            }
            ConvexSet::Singleton { point } => {
                let dist = self.distance(base)?;
                if dist > tol {
                    return Err(GeometryError::BaseOutsideSet { distance: dist });
                }
                Ok(v.dot(&point.sub(base)) <= tol * v.norm())
            }
            _ => {
                let residual = self.normal_cone_residual(base, v, tol)?;
                Ok(residual <= tol * v.norm().max(1.0))
            }
        }
    }

    /// Subdifferential of the distance function `z -> d(z, set)`.
    ///
    /// Outside the set this is the single unit vector pointing from the
    /// projection to `z`; on the set it is the normal cone intersected with
    /// the closed unit ball, returned as a queryable description.
    pub fn subdifferential_distance(
        &self,
        z: &Point,
    ) -> Result<DistanceSubdifferential, GeometryError> {
        let proj = self.project(z)?;
        let d = z.dist(&proj);
        if d > 0.0 {
            Ok(DistanceSubdifferential::UnitGradient(z.sub(&proj).scale(1.0 / d)))
        } else {
            Ok(DistanceSubdifferential::NormalConeCap(NormalConeCap {
                set: self.clone(),
                base: z.clone(),
            }))
        }
    }

    pub fn translate(&self, v: &Point) -> ConvexSet {
        match self {
            ConvexSet::Ball { center, radius } => {
                ConvexSet::Ball { center: center.add(v), radius: *radius }
            }
            ConvexSet::Box { center, half_widths } => {
                ConvexSet::Box { center: center.add(v), half_widths: half_widths.clone() }
            }
            ConvexSet::Halfspace { normal, offset } => ConvexSet::Halfspace {
                normal: normal.clone(),
                offset: offset + normal.dot(v),
            },
            ConvexSet::Segment { a, b } => ConvexSet::Segment { a: a.add(v), b: b.add(v) },
            ConvexSet::Singleton { point } => ConvexSet::Singleton { point: point.add(v) },
        }
    }

    /// Scale the set about the origin by `s > 0`.
    pub fn scale_about_origin(&self, s: f64) -> Result<ConvexSet, GeometryError> {
        if !(s.is_finite() && s > 0.0) {
            return Err(GeometryError::InvalidShape(format!(
                "scale factor must be positive and finite, got {s}"
            )));
        }
        Ok(match self {
            ConvexSet::Ball { center, radius } => {
                ConvexSet::Ball { center: center.scale(s), radius: radius * s }
            }
            ConvexSet::Box { center, half_widths } => ConvexSet::Box {
                center: center.scale(s),
                half_widths: half_widths.iter().map(|h| h * s).collect(),
            },
            ConvexSet::Halfspace { normal, offset } => {
                ConvexSet::Halfspace { normal: normal.clone(), offset: offset * s }
            }
            ConvexSet::Segment { a, b } => {
                ConvexSet::Segment { a: a.scale(s), b: b.scale(s) }
            }
            ConvexSet::Singleton { point } => ConvexSet::Singleton { point: point.scale(s) },
        })
    }
}

/// Subdifferential of a distance function at a point.
#[derive(Clone, Debug)]
pub enum DistanceSubdifferential {
    /// The point is outside the set: the unique unit gradient.
    UnitGradient(Point),
    /// The point is in the set: the normal cone capped by the unit ball.
    NormalConeCap(NormalConeCap),
}

/// The set `N_C(base) ∩ { v : ||v|| <= 1 }`, queryable by membership.
#[derive(Clone, Debug)]
pub struct NormalConeCap {
    set: ConvexSet,
    base: Point,
}

impl NormalConeCap {
    pub fn base(&self) -> &Point {
        &self.base
    }

    pub fn contains(&self, v: &Point, tol: f64) -> Result<bool, GeometryError> {
        Ok(v.norm() <= 1.0 + tol && self.set.in_normal_cone(&self.base, v, tol)?)
    }
}
