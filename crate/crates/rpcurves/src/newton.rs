//! Newton polygons of bivariate series.
//!
//! The polygon of a series is the lower-left convex hull of its exponent
//! support: the part of the boundary of `conv(support + ℝ²≥0)` visible from
//! the origin. Its edges seed Puiseux-branch exponents: an edge from
//! `(i₁,j₁)` to `(i₂,j₂)` with `j₁ > j₂` carries the inclination
//! `(i₂−i₁)/(j₁−j₂)`, the leading exponent `p/q` of the branches it supports.

use crate::error::{Error, Result};
use crate::series::{Exp2, Series2};
use num_rational::Rational64;

/// One edge of the lower-left hull.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub from: Exp2,
    pub to: Exp2,
    /// Slope `Δj/Δi` as a reduced fraction; always negative.
    pub slope: Rational64,
}

impl Edge {
    /// Positive inclination `p/q = Δi/Δj`, the reciprocal of `|slope|`:
    /// the leading exponent of the branches seeded by this edge.
    pub fn inclination(&self) -> Rational64 {
        -self.slope.recip()
    }
}

/// The Newton polygon of a nonzero series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// Full exponent support, in graded-lexicographic order.
    pub support: Vec<Exp2>,
    /// Hull vertices ordered by increasing first coordinate (so the second
    /// coordinate strictly decreases). A single vertex means no edges.
    pub vertices: Vec<Exp2>,
    /// Edges between consecutive vertices; slopes strictly increase along
    /// the list (equivalently, the positive inclinations strictly increase).
    pub edges: Vec<Edge>,
}

/// Lower-left convex hull of a set of lattice points (the hull of the set
/// translated by the positive quadrant).
pub(crate) fn lower_left_hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    assert!(!points.is_empty());
    // Sort by (i asc, j asc); for equal i only the smallest j can matter.
    let mut pts: Vec<(i64, i64)> = points.to_vec();
    pts.sort();
    pts.dedup();
    let mut min_per_i: Vec<(i64, i64)> = Vec::new();
    for p in pts {
        match min_per_i.last() {
            Some(last) if last.0 == p.0 => {} // larger j, dominated
            _ => min_per_i.push(p),
        }
    }
    // Walk by increasing i, keeping the chain convex from below
    // (cross product test) — a monotone-chain lower hull.
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for p in min_per_i {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        // Points with j no smaller than the current chain end add nothing
        // to the *lower-left* hull (the quadrant translate absorbs them).
        if let Some(last) = hull.last() {
            if p.1 >= last.1 {
                continue;
            }
        }
        hull.push(p);
    }
    hull
}

/// The Newton polygon of `f`. Errors on the zero series.
pub fn newton_polygon(f: &Series2) -> Result<NewtonPolygon> {
    if f.is_zero() {
        return Err(Error::domain(
            "newton_polygon",
            "the zero series has no Newton polygon",
        ));
    }
    let support: Vec<Exp2> = f.iter().map(|(e, _)| *e).collect();
    let pts: Vec<(i64, i64)> = support.iter().map(|e| (e.i as i64, e.j as i64)).collect();
    let hull = lower_left_hull(&pts);
    let vertices: Vec<Exp2> = hull
        .iter()
        .map(|(i, j)| Exp2::new(*i as usize, *j as usize))
        .collect();
    let edges: Vec<Edge> = vertices
        .windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            let di = b.i as i64 - a.i as i64;
            let dj = b.j as i64 - a.j as i64;
            Edge {
                from: a,
                to: b,
                slope: Rational64::new(dj, di),
            }
        })
        .collect();
    Ok(NewtonPolygon {
        support,
        vertices,
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Series2;

    fn s2(terms: &[(usize, usize, i64)]) -> Series2 {
        Series2::from_int_terms(10, terms)
    }

    #[test]
    fn two_monomial_polygon() {
        // y² − x³: vertices (0,2),(3,0), single edge of slope −2/3
        let np = newton_polygon(&s2(&[(0, 2, 1), (3, 0, -1)])).unwrap();
        assert_eq!(np.vertices, vec![Exp2::new(0, 2), Exp2::new(3, 0)]);
        assert_eq!(np.edges.len(), 1);
        assert_eq!(np.edges[0].slope, Rational64::new(-2, 3));
        assert_eq!(np.edges[0].inclination(), Rational64::new(3, 2));
    }

    #[test]
    fn single_vertex_polygon() {
        // xy: one vertex, no edges
        let np = newton_polygon(&s2(&[(1, 1, 1)])).unwrap();
        assert_eq!(np.vertices, vec![Exp2::new(1, 1)]);
        assert!(np.edges.is_empty());
    }

    #[test]
    fn interior_points_are_absorbed() {
        // y² − x² + x⁴: vertices (0,2),(2,0); x⁴ lies beyond the hull
        let np = newton_polygon(&s2(&[(0, 2, 1), (2, 0, -1), (4, 0, 1)])).unwrap();
        assert_eq!(np.vertices, vec![Exp2::new(0, 2), Exp2::new(2, 0)]);
        assert_eq!(np.edges.len(), 1);
        assert_eq!(np.edges[0].slope, Rational64::new(-1, 1));
    }

    #[test]
    fn multi_edge_inclinations_decrease() {
        // support (0,3), (1,1), (4,0): edges (0,3)→(1,1) with inclination
        // 1/2 and (1,1)→(4,0) with inclination 3.
        let np = newton_polygon(&s2(&[(0, 3, 1), (1, 1, 2), (4, 0, -1)])).unwrap();
        assert_eq!(
            np.vertices,
            vec![Exp2::new(0, 3), Exp2::new(1, 1), Exp2::new(4, 0)]
        );
        let slopes: Vec<Rational64> = np.edges.iter().map(|e| e.slope).collect();
        assert_eq!(
            slopes,
            vec![Rational64::new(-2, 1), Rational64::new(-1, 3)]
        );
        // algebraically increasing slopes ⟺ strictly decreasing |slope|
        assert!(slopes.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn zero_series_rejected() {
        assert!(newton_polygon(&Series2::zero(5)).is_err());
    }

    #[test]
    fn quadrant_domination() {
        // x²y + x² + y³: (2,1) is dominated by (2,0)
        let np = newton_polygon(&s2(&[(2, 1, 1), (2, 0, 1), (0, 3, 1)])).unwrap();
        assert_eq!(np.vertices, vec![Exp2::new(0, 3), Exp2::new(2, 0)]);
    }
}
