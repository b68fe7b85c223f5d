//! Independent brute-force reference minimizer for small bounded instances.
//!
//! Each set's boundary is sampled on a per-shape parameter grid (circles by
//! angle, spheres by latitude/longitude, boxes by face grids, segments by
//! arclength), the product grid is enumerated exhaustively, and the incumbent
//! is optionally refined by re-gridding a shrinking parameter window around
//! it. The oracle only ever evaluates feasible points, so its value is always
//! an upper bound on the true optimum.

use std::collections::HashSet;

use thiserror::Error;

use crate::convex_set::ConvexSet;
use crate::point::Point;
use crate::problem::{Configuration, ProblemError, ProblemInstance, SetRole};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error("the grid oracle requires bounded sets, but {role} set {index} is unbounded")]
    UnboundedSet { role: SetRole, index: usize },
    #[error("product grid of {required} configurations exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: usize },
    #[error("the grid oracle supports dimensions 1 through 3, got {dim}")]
    UnsupportedDimension { dim: usize },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

/// Sampling plan for the oracle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    density: usize,
    refine_rounds: usize,
    budget: usize,
    include_interior: bool,
}

impl GridSpec {
    /// `density` points per boundary parameter (at least 8) and the number
    /// of local refinement rounds around the incumbent.
    pub fn new(density: usize, refine_rounds: usize) -> Result<Self, OracleError> {
        if density < 8 {
            return Err(OracleError::InvalidGrid(format!(
                "density must be at least 8, got {density}"
            )));
        }
        Ok(Self { density, refine_rounds, budget: 10_000_000, include_interior: false })
    }

    /// Cap on the number of enumerated configurations per pass (default 1e7).
    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    /// Also sample set interiors (shell/inner grids). Boundary sampling plus
    /// the center is the default; interiors matter for scenes whose optima
    /// are not confined to boundaries.
    pub fn with_interior(mut self, include_interior: bool) -> Self {
        self.include_interior = include_interior;
        self
    }

    pub fn density(&self) -> usize {
        self.density
    }
}

/// Result of a brute-force minimization.
#[derive(Clone, Debug)]
pub struct OracleResult {
    pub value: f64,
    pub config: Configuration,
    /// Coarsest sample spacing of the initial grid, over all sets.
    pub cell_diameter: f64,
    /// Configurations evaluated across all passes.
    pub evaluations: usize,
}

/// Exhaustive product-grid minimization followed by `refine_rounds` local
/// re-gridding passes around the incumbent. Ties break to the first
/// configuration in enumeration order, which is fixed.
pub fn brute_force_min(
    inst: &ProblemInstance,
    grid: &GridSpec,
) -> Result<OracleResult, OracleError> {
    let sets = check_supported(inst)?;
    let mut candidates: Vec<Vec<Point>> = sets
        .iter()
        .map(|(_, _, set)| initial_candidates(set, grid))
        .collect();
    check_budget(&candidates, grid.budget)?;

    let cell_diameter = sets
        .iter()
        .map(|(_, _, set)| max_spacing(set, grid.density))
        .fold(0.0, f64::max);

    let mut evaluations = 0usize;
    let (mut value, mut incumbent) =
        enumerate_min(inst, &candidates, &mut evaluations).expect("grids are nonempty");

    let shrink = 4.0 / grid.density as f64;
    let mut window = 1.0f64;
    for _ in 0..grid.refine_rounds {
        window *= shrink;
        candidates = sets
            .iter()
            .zip(&incumbent)
            .map(|((_, _, set), anchor)| {
                let mut cands = samples_near(set, anchor, window, grid.density);
                cands.push(anchor.clone());
                cands
            })
            .collect();
        check_budget(&candidates, grid.budget)?;
        let (v, c) = enumerate_min(inst, &candidates, &mut evaluations).expect("nonempty");
        // the incumbent is among the candidates, so this cannot regress
        debug_assert!(v <= value);
        value = v;
        incumbent = c;
    }

    let k = inst.k();
    let config = Configuration::new(incumbent[..k].to_vec(), incumbent[k..].to_vec());
    Ok(OracleResult { value, config, cell_diameter, evaluations })
}

/// Count near-optimal configurations on the initial grid: those within `tol`
/// of the grid minimum, deduplicated by snapping coordinates to buckets of
/// twice the set's finest sample spacing. A count above one signals
/// non-uniqueness at grid scale.
pub fn non_uniqueness_probe(
    inst: &ProblemInstance,
    grid: &GridSpec,
    tol: f64,
) -> Result<usize, OracleError> {
    let sets = check_supported(inst)?;
    let candidates: Vec<Vec<Point>> = sets
        .iter()
        .map(|(_, _, set)| initial_candidates(set, grid))
        .collect();
    check_budget(&candidates, grid.budget)?;

    let mut evaluations = 0usize;
    let (min_value, _) =
        enumerate_min(inst, &candidates, &mut evaluations).expect("grids are nonempty");

    let buckets: Vec<f64> = sets
        .iter()
        .map(|(_, _, set)| 2.0 * min_spacing(set, grid.density, grid.include_interior))
        .collect();

    let k = inst.k();
    let m = inst.m();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut odometer = vec![0usize; candidates.len()];
    loop {
        let selection: Vec<&Point> =
            odometer.iter().zip(&candidates).map(|(&i, c)| &c[i]).collect();
        let f = objective_of(&selection, k, m);
        if f <= min_value + tol {
            let mut key = Vec::with_capacity(selection.len() * inst.dim());
            for (p, bucket) in selection.iter().zip(&buckets) {
                for c in p.coords() {
                    key.push((c / bucket).floor() as i64);
                }
            }
            seen.insert(key);
        }
        if !advance(&mut odometer, &candidates) {
            break;
        }
    }
    Ok(seen.len())
}

fn check_supported(
    inst: &ProblemInstance,
) -> Result<Vec<(SetRole, usize, ConvexSet)>, OracleError> {
    if inst.dim() > 3 {
        return Err(OracleError::UnsupportedDimension { dim: inst.dim() });
    }
    let mut sets = Vec::with_capacity(inst.k() + inst.m());
    for (role, family) in [(SetRole::Feasible, inst.feasible()), (SetRole::Target, inst.targets())]
    {
        for (index, set) in family.iter().enumerate() {
            if !set.is_bounded() {
                return Err(OracleError::UnboundedSet { role, index });
            }
            sets.push((role, index, set.clone()));
        }
    }
    Ok(sets)
}

fn check_budget(candidates: &[Vec<Point>], budget: usize) -> Result<(), OracleError> {
    let mut required: u128 = 1;
    for c in candidates {
        required = required.saturating_mul(c.len() as u128);
    }
    if required > budget as u128 {
        return Err(OracleError::BudgetExceeded { required, budget });
    }
    Ok(())
}

fn enumerate_min(
    inst: &ProblemInstance,
    candidates: &[Vec<Point>],
    evaluations: &mut usize,
) -> Option<(f64, Vec<Point>)> {
    let k = inst.k();
    let m = inst.m();
    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut odometer = vec![0usize; candidates.len()];
    loop {
        let selection: Vec<&Point> =
            odometer.iter().zip(candidates).map(|(&i, c)| &c[i]).collect();
        let f = objective_of(&selection, k, m);
        *evaluations += 1;
        if best.as_ref().map_or(true, |(bv, _)| f < *bv) {
            best = Some((f, odometer.clone()));
        }
        if !advance(&mut odometer, candidates) {
            break;
        }
    }
    best.map(|(v, idx)| {
        (v, idx.iter().zip(candidates).map(|(&i, c)| c[i].clone()).collect())
    })
}

/// Odometer increment with the last set cycling fastest.
fn advance(odometer: &mut [usize], candidates: &[Vec<Point>]) -> bool {
    for (slot, cands) in odometer.iter_mut().zip(candidates).rev() {
        *slot += 1;
        if *slot < cands.len() {
            return true;
        }
        *slot = 0;
    }
    false
}

fn objective_of(selection: &[&Point], k: usize, m: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..k {
        for j in 0..m {
            acc += selection[i].dist(selection[k + j]);
        }
    }
    acc
}

fn initial_candidates(set: &ConvexSet, grid: &GridSpec) -> Vec<Point> {
    let mut cands = boundary_samples(set, grid.density);
    cands.push(set.anchor());
    if grid.include_interior {
        cands.extend(interior_samples(set, grid.density));
    }
    cands
}

fn circle_point(center: &Point, radius: f64, theta: f64) -> Point {
    Point::from_coords(vec![
        center[0] + radius * theta.cos(),
        center[1] + radius * theta.sin(),
    ])
}

fn sphere_point(center: &Point, radius: f64, phi: f64, theta: f64) -> Point {
    Point::from_coords(vec![
        center[0] + radius * phi.cos() * theta.cos(),
        center[1] + radius * phi.cos() * theta.sin(),
        center[2] + radius * phi.sin(),
    ])
}

fn boundary_samples(set: &ConvexSet, d: usize) -> Vec<Point> {
    use std::f64::consts::PI;
    match set {
        ConvexSet::Ball { center, radius } => match center.dim() {
            1 => vec![
                Point::from_coords(vec![center[0] - radius]),
                Point::from_coords(vec![center[0] + radius]),
            ],
            2 => (0..d)
                .map(|i| circle_point(center, *radius, 2.0 * PI * i as f64 / d as f64))
                .collect(),
            _ => {
                let mut pts = Vec::with_capacity(2 + (d - 2) * d);
                for l in 0..d {
                    let phi = -PI / 2.0 + PI * l as f64 / (d - 1) as f64;
                    if l == 0 || l == d - 1 {
                        pts.push(sphere_point(center, *radius, phi, 0.0));
                    } else {
                        for t in 0..d {
                            let theta = 2.0 * PI * t as f64 / d as f64;
                            pts.push(sphere_point(center, *radius, phi, theta));
                        }
                    }
                }
                pts
            }
        },
        ConvexSet::Box { center, half_widths } => match center.dim() {
            1 => vec![
                Point::from_coords(vec![center[0] - half_widths[0]]),
                Point::from_coords(vec![center[0] + half_widths[0]]),
            ],
            2 => box2_perimeter(center, half_widths)
                .flat_map_edges(d)
                .collect(),
            _ => {
                // six face grids, edges and corners included (duplicates are harmless)
                let mut pts = Vec::with_capacity(6 * d * d);
                for axis in 0..3 {
                    for side in [-1.0, 1.0] {
                        let (u, v) = other_axes(axis);
                        for p in 0..d {
                            for q in 0..d {
                                let tu = p as f64 / (d - 1) as f64 * 2.0 - 1.0;
                                let tv = q as f64 / (d - 1) as f64 * 2.0 - 1.0;
                                let mut coords = vec![0.0; 3];
                                coords[axis] = center[axis] + side * half_widths[axis];
                                coords[u] = center[u] + tu * half_widths[u];
                                coords[v] = center[v] + tv * half_widths[v];
                                pts.push(Point::from_coords(coords));
                            }
                        }
                    }
                }
                pts
            }
        },
        ConvexSet::Halfspace { .. } => unreachable!("unbounded sets are rejected upstream"),
        ConvexSet::Segment { a, b } => {
            let dir = b.sub(a);
            (0..=d).map(|i| a.add_scaled(&dir, i as f64 / d as f64)).collect()
        }
        ConvexSet::Singleton { point } => vec![point.clone()],
    }
}

fn interior_samples(set: &ConvexSet, d: usize) -> Vec<Point> {
    use std::f64::consts::PI;
    match set {
        ConvexSet::Ball { center, radius } => match center.dim() {
            1 => (1..d)
                .map(|i| {
                    Point::from_coords(vec![
                        center[0] - radius + 2.0 * radius * i as f64 / d as f64,
                    ])
                })
                .collect(),
            2 => {
                let shells = (d / 4).max(1);
                let mut pts = Vec::with_capacity(shells * d);
                for s in 1..=shells {
                    let rho = radius * s as f64 / (shells + 1) as f64;
                    for i in 0..d {
                        pts.push(circle_point(center, rho, 2.0 * PI * i as f64 / d as f64));
                    }
                }
                pts
            }
            _ => {
                let shells = (d / 4).max(1);
                let mut pts = Vec::new();
                for s in 1..=shells {
                    let rho = radius * s as f64 / (shells + 1) as f64;
                    let shell = ConvexSet::Ball { center: center.clone(), radius: rho };
                    pts.extend(boundary_samples(&shell, d));
                }
                pts
            }
        },
        ConvexSet::Box { center, half_widths } => {
            let n = center.dim();
            let mut pts = Vec::new();
            let mut idx = vec![1usize; n];
            'outer: loop {
                let coords: Vec<f64> = (0..n)
                    .map(|ax| {
                        center[ax] - half_widths[ax]
                            + 2.0 * half_widths[ax] * idx[ax] as f64 / d as f64
                    })
                    .collect();
                pts.push(Point::from_coords(coords));
                for ax in (0..n).rev() {
                    idx[ax] += 1;
                    if idx[ax] < d {
                        continue 'outer;
                    }
                    idx[ax] = 1;
                    if ax == 0 {
                        break 'outer;
                    }
                }
            }
            pts
        }
        ConvexSet::Halfspace { .. } => unreachable!("unbounded sets are rejected upstream"),
        // segments are fully covered by the boundary parameterization
        ConvexSet::Segment { .. } | ConvexSet::Singleton { .. } => Vec::new(),
    }
}

/// Local re-grid around `anchor`, covering the fraction `window` of each
/// boundary parameter's full range.
fn samples_near(set: &ConvexSet, anchor: &Point, window: f64, d: usize) -> Vec<Point> {
    use std::f64::consts::PI;
    let steps = |lo: f64, hi: f64| -> Vec<f64> {
        (0..d).map(move |i| lo + (hi - lo) * i as f64 / (d - 1) as f64).collect()
    };
    match set {
        ConvexSet::Ball { center, radius } => match center.dim() {
            1 => boundary_samples(set, d),
            2 => {
                let dir = anchor.sub(center);
                let theta0 = dir[1].atan2(dir[0]);
                steps(theta0 - PI * window, theta0 + PI * window)
                    .into_iter()
                    .map(|t| circle_point(center, *radius, t))
                    .collect()
            }
            _ => {
                let dir = anchor.sub(center);
                let norm = dir.norm();
                let (phi0, theta0) = if norm > 0.0 {
                    ((dir[2] / norm).clamp(-1.0, 1.0).asin(), dir[1].atan2(dir[0]))
                } else {
                    (0.0, 0.0)
                };
                let phis = steps(
                    (phi0 - PI / 2.0 * window).max(-PI / 2.0),
                    (phi0 + PI / 2.0 * window).min(PI / 2.0),
                );
                let thetas = steps(theta0 - PI * window, theta0 + PI * window);
                let mut pts = Vec::with_capacity(d * d);
                for &phi in &phis {
                    for &theta in &thetas {
                        pts.push(sphere_point(center, *radius, phi, theta));
                    }
                }
                pts
            }
        },
        ConvexSet::Box { center, half_widths } => match center.dim() {
            1 => boundary_samples(set, d),
            2 => {
                let loop_ = box2_perimeter(center, half_widths);
                let s0 = loop_.arclength_of(anchor);
                let half = window * loop_.total / 2.0;
                steps(s0 - half, s0 + half)
                    .into_iter()
                    .map(|s| loop_.point_at(s))
                    .collect()
            }
            _ => {
                let mut pts = Vec::with_capacity(6 * d * d);
                for axis in 0..3 {
                    for side in [-1.0, 1.0] {
                        let (u, v) = other_axes(axis);
                        let au = (anchor[u] - center[u]).clamp(-half_widths[u], half_widths[u]);
                        let av = (anchor[v] - center[v]).clamp(-half_widths[v], half_widths[v]);
                        let us = steps(
                            (au - window * half_widths[u]).max(-half_widths[u]),
                            (au + window * half_widths[u]).min(half_widths[u]),
                        );
                        let vs = steps(
                            (av - window * half_widths[v]).max(-half_widths[v]),
                            (av + window * half_widths[v]).min(half_widths[v]),
                        );
                        for &cu in &us {
                            for &cv in &vs {
                                let mut coords = vec![0.0; 3];
                                coords[axis] = center[axis] + side * half_widths[axis];
                                coords[u] = center[u] + cu;
                                coords[v] = center[v] + cv;
                                pts.push(Point::from_coords(coords));
                            }
                        }
                    }
                }
                pts
            }
        },
        ConvexSet::Halfspace { .. } => unreachable!("unbounded sets are rejected upstream"),
        ConvexSet::Segment { a, b } => {
            let dir = b.sub(a);
            let t0 = (anchor.sub(a).dot(&dir) / dir.norm_sq()).clamp(0.0, 1.0);
            steps((t0 - window / 2.0).max(0.0), (t0 + window / 2.0).min(1.0))
                .into_iter()
                .map(|t| a.add_scaled(&dir, t))
                .collect()
        }
        ConvexSet::Singleton { point } => vec![point.clone()],
    }
}

/// Coarsest gap between adjacent samples of the initial boundary grid.
fn max_spacing(set: &ConvexSet, d: usize) -> f64 {
    use std::f64::consts::PI;
    match set {
        ConvexSet::Ball { center, radius } => match center.dim() {
            1 => 0.0,
            2 => 2.0 * PI * radius / d as f64,
            _ => (2.0 * PI * radius / d as f64).max(PI * radius / (d - 1) as f64),
        },
        ConvexSet::Box { center, half_widths } => {
            let h = half_widths.iter().fold(0.0f64, |a, &b| a.max(b));
            match center.dim() {
                1 => 0.0,
                2 => 2.0 * h / d as f64,
                _ => 2.0 * h / (d - 1) as f64,
            }
        }
        ConvexSet::Halfspace { .. } => f64::INFINITY,
        ConvexSet::Segment { a, b } => a.dist(b) / d as f64,
        ConvexSet::Singleton { .. } => 0.0,
    }
}

/// Finest gap between adjacent samples, the dedup cell for the probe.
fn min_spacing(set: &ConvexSet, d: usize, include_interior: bool) -> f64 {
    use std::f64::consts::PI;
    match set {
        ConvexSet::Ball { center, radius } => {
            let boundary = match center.dim() {
                1 => 2.0 * radius,
                2 => 2.0 * PI * radius / d as f64,
                _ => PI * radius / (d - 1) as f64,
            };
            if include_interior {
                let shells = (d / 4).max(1);
                boundary.min(radius / (shells + 1) as f64)
            } else {
                boundary
            }
        }
        ConvexSet::Box { center, half_widths } => {
            let h = half_widths.iter().fold(f64::INFINITY, |a, &b| a.min(b));
            match center.dim() {
                1 => 2.0 * h,
                2 => 2.0 * h / d as f64,
                _ => 2.0 * h / (d - 1) as f64,
            }
        }
        ConvexSet::Halfspace { .. } => f64::INFINITY,
        ConvexSet::Segment { a, b } => a.dist(b) / d as f64,
        ConvexSet::Singleton { .. } => f64::INFINITY,
    }
}

fn other_axes(axis: usize) -> (usize, usize) {
    match axis {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// The four edges of a 2-D box as one closed arclength loop.
struct Box2Perimeter {
    corners: [Point; 4],
    lengths: [f64; 4],
    total: f64,
}

fn box2_perimeter(center: &Point, half_widths: &[f64]) -> Box2Perimeter {
    let (hx, hy) = (half_widths[0], half_widths[1]);
    let corner = |sx: f64, sy: f64| {
        Point::from_coords(vec![center[0] + sx * hx, center[1] + sy * hy])
    };
    let corners = [corner(-1.0, -1.0), corner(1.0, -1.0), corner(1.0, 1.0), corner(-1.0, 1.0)];
    let lengths = [2.0 * hx, 2.0 * hy, 2.0 * hx, 2.0 * hy];
    let total = lengths.iter().sum();
    Box2Perimeter { corners, lengths, total }
}

impl Box2Perimeter {
    fn point_at(&self, s: f64) -> Point {
        let mut s = s.rem_euclid(self.total);
        for e in 0..4 {
            if s <= self.lengths[e] || e == 3 {
                let a = &self.corners[e];
                let b = &self.corners[(e + 1) % 4];
                let t = (s / self.lengths[e]).min(1.0);
                return a.add_scaled(&b.sub(a), t);
            }
            s -= self.lengths[e];
        }
        unreachable!()
    }

    fn arclength_of(&self, p: &Point) -> f64 {
        let mut best = (f64::INFINITY, 0.0);
        let mut offset = 0.0;
        for e in 0..4 {
            let a = &self.corners[e];
            let b = &self.corners[(e + 1) % 4];
            let dir = b.sub(a);
            let t = (p.sub(a).dot(&dir) / dir.norm_sq()).clamp(0.0, 1.0);
            let q = a.add_scaled(&dir, t);
            let dist = p.dist(&q);
            if dist < best.0 {
                best = (dist, offset + t * self.lengths[e]);
            }
            offset += self.lengths[e];
        }
        best.1
    }

    fn flat_map_edges(&self, d: usize) -> impl Iterator<Item = Point> + '_ {
        (0..4).flat_map(move |e| {
            let a = self.corners[e].clone();
            let b = self.corners[(e + 1) % 4].clone();
            let dir = b.sub(&a);
            (0..d).map(move |i| a.add_scaled(&dir, i as f64 / d as f64))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn grid_spec_validation() {
        assert!(GridSpec::new(7, 0).is_err());
        assert!(GridSpec::new(8, 0).is_ok());
    }

    #[test]
    fn two_ball_value() {
        let inst = two_ball_instance();
        let grid = GridSpec::new(512, 3).unwrap();
        let res = brute_force_min(&inst, &grid).unwrap();
        assert!((res.value - 3.0).abs() <= 1e-3, "oracle value {}", res.value);
        assert!((res.config.xs()[0][0] - 1.0).abs() < 1e-2);
        assert!((res.config.ys()[0][0] - 4.0).abs() < 1e-2);
        assert!(res.cell_diameter > 0.0);
    }

    #[test]
    fn classical_line_instance_matches_reflection_value() {
        // segment feasible set, two fixed targets on the same side: the
        // reflection principle gives the optimum in closed form
        let inst = ProblemInstance::new(
            vec![ConvexSet::segment(pt(&[-10.0, 0.0]), pt(&[10.0, 0.0])).unwrap()],
            vec![
                ConvexSet::singleton(pt(&[0.0, 2.0])),
                ConvexSet::singleton(pt(&[4.0, 2.0])),
            ],
        )
        .unwrap();
        let grid = GridSpec::new(512, 3).unwrap();
        let res = brute_force_min(&inst, &grid).unwrap();
        let expected = 2.0 * 8f64.sqrt();
        assert!((res.value - expected).abs() <= 1e-6, "value {}", res.value);
        assert!((res.config.xs()[0][0] - 2.0).abs() <= 1e-4);
    }

    #[test]
    fn refinement_never_regresses() {
        let inst = two_ball_instance();
        let coarse = brute_force_min(&inst, &GridSpec::new(16, 0).unwrap()).unwrap();
        let mut prev = coarse.value;
        for rounds in 1..=3 {
            let res = brute_force_min(&inst, &GridSpec::new(16, rounds).unwrap()).unwrap();
            assert!(res.value <= prev + 1e-15, "round {rounds} regressed");
            prev = res.value;
        }
    }

    #[test]
    fn oracle_value_upper_bounds_the_optimum() {
        let inst = two_ball_instance();
        let res = brute_force_min(&inst, &GridSpec::new(32, 1).unwrap()).unwrap();
        assert!(res.value >= 3.0 - 1e-12);
        assert!(inst.check_feasible(&res.config, 1e-9).is_ok());
    }

    #[test]
    fn budget_is_enforced() {
        let inst = ProblemInstance::new(
            vec![
                ConvexSet::ball(pt(&[0.0, 0.0]), 1.0).unwrap(),
                ConvexSet::ball(pt(&[9.0, 0.0]), 1.0).unwrap(),
            ],
            vec![ConvexSet::ball(pt(&[5.0, 5.0]), 1.0).unwrap()],
        )
        .unwrap();
        let grid = GridSpec::new(512, 0).unwrap().with_budget(1000);
        assert!(matches!(
            brute_force_min(&inst, &grid),
            Err(OracleError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn unbounded_sets_are_rejected() {
        let hs = ConvexSet::halfspace(pt(&[0.0, 1.0]), 0.0).unwrap();
        let inst = ProblemInstance::new(
            vec![hs],
            vec![ConvexSet::singleton(pt(&[0.0, 3.0]))],
        )
        .unwrap();
        assert!(matches!(
            brute_force_min(&inst, &GridSpec::new(8, 0).unwrap()),
            Err(OracleError::UnboundedSet { role: SetRole::Feasible, index: 0 })
        ));
    }

    #[test]
    fn high_dimensions_are_rejected() {
        let inst = ProblemInstance::new(
            vec![ConvexSet::ball(pt(&[0.0; 4]), 1.0).unwrap()],
            vec![ConvexSet::ball(pt(&[5.0, 0.0, 0.0, 0.0]), 1.0).unwrap()],
        )
        .unwrap();
        assert!(matches!(
            brute_force_min(&inst, &GridSpec::new(8, 0).unwrap()),
            Err(OracleError::UnsupportedDimension { dim: 4 })
        ));
    }

    #[test]
    fn probe_on_strictly_convex_toy_finds_one_optimum() {
        let inst = two_ball_instance();
        let grid = GridSpec::new(512, 0).unwrap();
        let count = non_uniqueness_probe(&inst, &grid, 1e-9).unwrap();
        assert_eq!(count, 1);
    }

    #[test]
    fn probe_on_symmetric_disc_scene_reports_many() {
        // two large discs and two smaller target discs lined up on y = 6;
        // every target point on the diameters gives the same total distance
        let inst = ProblemInstance::new(
            vec![
                ConvexSet::ball(pt(&[-6.0, 6.0]), 2.0).unwrap(),
                ConvexSet::ball(pt(&[6.0, 6.0]), 2.0).unwrap(),
            ],
            vec![
                ConvexSet::ball(pt(&[-2.0, 6.0]), 1.0).unwrap(),
                ConvexSet::ball(pt(&[2.0, 6.0]), 1.0).unwrap(),
            ],
        )
        .unwrap();
        let grid = GridSpec::new(8, 0).unwrap().with_interior(true);
        let count = non_uniqueness_probe(&inst, &grid, 1e-6).unwrap();
        assert!(count >= 10, "expected non-uniqueness, count = {count}");
        // all near-optimal configurations sit on the shared axis, so the
        // count collapses to 1 when the tolerance is tightened to zero width
        let exact = brute_force_min(&inst, &grid).unwrap();
        assert!((exact.value - 16.0).abs() <= 1e-9);
    }

    #[test]
    fn boundary_samples_hit_axis_points() {
        let ball = ConvexSet::ball(pt(&[-6.0, 6.0]), 2.0).unwrap();
        let pts = boundary_samples(&ball, 8);
        assert!(pts.iter().any(|p| p.dist(&pt(&[-4.0, 6.0])) < 1e-12));
        assert!(pts.iter().any(|p| p.dist(&pt(&[-8.0, 6.0])) < 1e-12));
        let cube = ConvexSet::axis_box(pt(&[0.0, 0.0, 0.0]), vec![1.0, 1.0, 1.0]).unwrap();
        let pts = boundary_samples(&cube, 8);
        assert!(pts.iter().any(|p| p.dist(&pt(&[1.0, 1.0, 1.0])) < 1e-12)); // corner
        for p in &pts {
            assert!(cube.on_boundary(p, 1e-12).unwrap());
        }
    }
}
