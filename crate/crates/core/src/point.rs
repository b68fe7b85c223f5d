//! Points of `R^n` with the handful of vector operations the solver needs.

use std::fmt;
use std::ops::Index;

use crate::convex_set::GeometryError;

/// A point of `R^n`, stored as an ordered coordinate list.
///
/// Coordinates are always finite: [`Point::new`] rejects NaN and infinities,
/// and every operation in this crate preserves finiteness or reports a
/// numeric failure at a higher level.
#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    /// Validating constructor: coordinates must be finite and nonempty.
    pub fn new(coords: Vec<f64>) -> Result<Self, GeometryError> {
        if coords.is_empty() {
            return Err(GeometryError::EmptyPoint);
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(GeometryError::NonFiniteCoordinates);
        }
        Ok(Self { coords })
    }

    /// Internal constructor for coordinates produced by our own arithmetic.
    pub(crate) fn from_coords(coords: Vec<f64>) -> Self {
        Self { coords }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { coords: vec![0.0; dim] }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|c| c.is_finite())
    }

    pub fn add(&self, other: &Point) -> Point {
        debug_assert_eq!(self.dim(), other.dim());
        Point::from_coords(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Point) -> Point {
        debug_assert_eq!(self.dim(), other.dim());
        Point::from_coords(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: f64) -> Point {
        Point::from_coords(self.coords.iter().map(|a| a * s).collect())
    }

    /// `self + s * other`, the update step of the solver.
    pub fn add_scaled(&self, other: &Point, s: f64) -> Point {
        debug_assert_eq!(self.dim(), other.dim());
        Point::from_coords(
            self.coords.iter().zip(&other.coords).map(|(a, b)| a + b * s).collect(),
        )
    }

    pub fn dot(&self, other: &Point) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        let mut acc = 0.0;
        for c in &self.coords {
            acc += c * c;
        }
        acc
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Euclidean distance, accumulated in coordinate order so that runs are
    /// reproducible bit for bit.
    pub fn dist(&self, other: &Point) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        let mut acc = 0.0;
        for (a, b) in self.coords.iter().zip(&other.coords) {
            let d = a - b;
            acc += d * d;
        }
        acc.sqrt()
    }
}

impl Index<usize> for Point {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.coords[i]
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prec = f.precision().unwrap_or(4);
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c:.prec$}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_finite_coordinates() {
        assert!(Point::new(vec![1.0, f64::NAN]).is_err());
        assert!(Point::new(vec![f64::INFINITY]).is_err());
        assert!(Point::new(vec![]).is_err());
        assert!(Point::new(vec![1.0, -2.5]).is_ok());
    }

    #[test]
    fn basic_arithmetic() {
        let a = Point::new(vec![1.0, 2.0]).unwrap();
        let b = Point::new(vec![3.0, -1.0]).unwrap();
        assert_eq!(a.add(&b).coords(), &[4.0, 1.0]);
        assert_eq!(a.sub(&b).coords(), &[-2.0, 3.0]);
        assert_eq!(a.dot(&b), 1.0);
        assert_eq!(a.add_scaled(&b, 2.0).coords(), &[7.0, 0.0]);
        assert_eq!(Point::new(vec![3.0, 4.0]).unwrap().norm(), 5.0);
        assert_eq!(a.dist(&a), 0.0);
    }

    #[test]
    fn display_uses_requested_precision() {
        let p = Point::new(vec![1.0, -2.25]).unwrap();
        assert_eq!(format!("{p}"), "(1.0000, -2.2500)");
        assert_eq!(format!("{p:.1}"), "(1.0, -2.2)");
    }
}
