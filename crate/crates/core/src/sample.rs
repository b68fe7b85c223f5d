//! Random sampling of feasible points, for property tests, perturbation
//! checks, and quick experiments. Deterministic given the RNG.

use rand::Rng;

use crate::convex_set::ConvexSet;
use crate::point::Point;
use crate::problem::{Configuration, ProblemInstance};

/// Draw a point of the set. Balls, boxes and segments are sampled across
/// their volume/length; halfspaces by projecting a point drawn from a cube
/// around the anchor.
pub fn point_in<R: Rng + ?Sized>(set: &ConvexSet, rng: &mut R) -> Point {
    match set {
        ConvexSet::Ball { center, radius } => loop {
            // rejection sample the unit cube
            let offset: Vec<f64> =
                (0..center.dim()).map(|_| rng.gen_range(-1.0..=1.0)).collect();
            let candidate = Point::new(offset).expect("finite offsets");
            if candidate.norm_sq() <= 1.0 {
                return center.add(&candidate.scale(*radius));
            }
        },
        ConvexSet::Box { center, half_widths } => Point::new(
            center
                .coords()
                .iter()
                .zip(half_widths)
                .map(|(c, h)| rng.gen_range(c - h..=c + h))
                .collect(),
        )
        .expect("finite coordinates"),
        ConvexSet::Halfspace { .. } => {
            let anchor = set.anchor();
            let jitter: Vec<f64> = (0..anchor.dim()).map(|_| rng.gen_range(-5.0..=5.0)).collect();
            let candidate = anchor.add(&Point::new(jitter).expect("finite"));
            set.project(&candidate).expect("dimension matches")
        }
        ConvexSet::Segment { a, b } => a.add_scaled(&b.sub(a), rng.gen_range(0.0..=1.0)),
        ConvexSet::Singleton { point } => point.clone(),
    }
}

/// Draw a feasible configuration of the instance.
pub fn configuration_in<R: Rng + ?Sized>(
    inst: &ProblemInstance,
    rng: &mut R,
) -> Configuration {
    let xs = inst.feasible().iter().map(|s| point_in(s, rng)).collect();
    let ys = inst.targets().iter().map(|s| point_in(s, rng)).collect();
    Configuration::new(xs, ys)
}
