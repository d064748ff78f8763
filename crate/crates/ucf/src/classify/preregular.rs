//! Detection of Pre-regular sets and their supporting polygon.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::Snapshot;
use crate::geometry::{polygon_from_indexed_lines, strictly_convex_position, Line, Point, RegularPolygon};

/// Witness that a set is Pre-regular.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PreRegularCertificate {
    /// Supporting polygon in the snapshot's frame.
    pub shape: RegularPolygon,
    /// Its vertices, counterclockwise.
    pub polygon: Vec<Point>,
    /// Matching vertex of each point.
    pub matching: Vec<usize>,
    /// Companion pairs, counterclockwise, each sharing an edge.
    pub companions: Vec<(usize, usize)>,
}

/// Pre-regular test: returns the supporting polygon when one exists.
pub fn is_pre_regular(s: &Snapshot) -> Option<PreRegularCertificate> {
    let n = s.n();
    if n % 2 == 1 || n < 6 {
        return None;
    }
    let unit: Vec<Point> = (0..n).map(|i| s.unit(i)).collect();
    let tol = s.tol();
    if !strictly_convex_position(&unit, &tol) {
        return None;
    }
    let ring = s.ring();
    if ring.has_coincident_rays() {
        return None;
    }
    let ccw: Vec<usize> = ring.order().iter().rev().copied().collect();
    (0..2).find_map(|parity| try_parity(s, &unit, &ccw, parity))
}

fn try_parity(s: &Snapshot, unit: &[Point], ccw: &[usize], parity: usize) -> Option<PreRegularCertificate> {
    let n = unit.len();
    let m = n / 2;
    let slack = 4.0 * s.eps();
    let pairs: Vec<(usize, usize)> = (0..m)
        .map(|j| (ccw[(2 * j + parity) % n], ccw[(2 * j + 1 + parity) % n]))
        .collect();
    // Companions are mutual nearest neighbours.
    for &(x, y) in &pairs {
        let d = unit[x].dist(unit[y]);
        let nearest = |a: usize| (0..n).filter(|&z| z != a).all(|z| d <= unit[a].dist(unit[z]) + slack);
        if !nearest(x) || !nearest(y) {
            return None;
        }
    }
    let reference = (0..m)
        .max_by(|&a, &b| {
            let la = unit[pairs[a].0].dist(unit[pairs[a].1]);
            let lb = unit[pairs[b].0].dist(unit[pairs[b].1]);
            la.total_cmp(&lb)
        })
        .expect("at least three pairs");
    let (rx, ry) = pairs[reference];
    let base = (unit[ry] - unit[rx]).angle();
    let step = 2.0 * TAU / n as f64;
    let mut lines = Vec::with_capacity(m);
    for (j, &(x, y)) in pairs.iter().enumerate() {
        let dir = Point::polar(1.0, base + step * (j as f64 - reference as f64));
        let v = unit[y] - unit[x];
        // Slope consistency.
        if v.dot(dir) <= 0.0 || dir.cross(v).abs() > slack {
            return None;
        }
        lines.push((2 * j, Line::new(unit[x].midpoint(unit[y]), dir)));
    }
    let poly = polygon_from_indexed_lines(n, &lines, &s.tol())?;
    let mut matching = vec![0usize; n];
    for (j, &(x, y)) in pairs.iter().enumerate() {
        let a = poly.vertex(2 * j);
        let b = poly.vertex(2 * j + 1);
        let edge = b - a;
        let l = edge.norm();
        let e = edge * (1.0 / l);
        let t = |p: Point| (p - a).dot(e);
        let off = |p: Point| e.cross(p - a).abs();
        let (tx, ty) = (t(unit[x]), t(unit[y]));
        if off(unit[x]) > slack || off(unit[y]) > slack {
            return None;
        }
        if tx < -slack || ty > l + slack || tx > ty {
            return None;
        }
        matching[x] = 2 * j;
        matching[y] = 2 * j + 1;
    }
    let shape = RegularPolygon {
        n,
        center: s.denormalize(poly.center),
        circumradius: poly.circumradius * s.sec().radius,
        phase: poly.phase,
    };
    Some(PreRegularCertificate {
        shape,
        polygon: shape.vertices(),
        matching,
        companions: pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::TolerancePolicy;

    fn hexagon() -> RegularPolygon {
        RegularPolygon {
            n: 6,
            center: Point::new(1.0, 2.0),
            circumradius: 3.0,
            phase: 0.2,
        }
    }

    fn on_edges(poly: &RegularPolygon, params: &[(f64, f64)]) -> Vec<Point> {
        let mut pts = Vec::new();
        for (j, &(s, t)) in params.iter().enumerate() {
            let a = poly.vertex(2 * j);
            let b = poly.vertex(2 * j + 1);
            pts.push(a.lerp(b, s));
            pts.push(a.lerp(b, t));
        }
        pts
    }

    #[test]
    fn two_points_on_alternate_edges() {
        let poly = hexagon();
        let pts = on_edges(&poly, &[(0.1, 0.7), (0.3, 0.9), (0.0, 0.5)]);
        let s = Snapshot::new(pts, TolerancePolicy::default()).unwrap();
        let cert = is_pre_regular(&s).unwrap();
        assert!(cert.shape.vertex_deviation(&poly) < 1e-9);
        assert_eq!(cert.companions.len(), 3);
    }

    #[test]
    fn odd_sizes_never_qualify() {
        let pts: Vec<Point> = (0..7).map(|k| Point::polar(1.0, 0.1 + k as f64)).collect();
        let s = Snapshot::new(pts, TolerancePolicy::default()).unwrap();
        assert!(is_pre_regular(&s).is_none());
    }

    #[test]
    fn point_off_its_edge_is_rejected() {
        let poly = hexagon();
        let mut pts = on_edges(&poly, &[(0.1, 0.7), (0.3, 0.9), (0.2, 0.5)]);
        let l = poly.vertex(0).dist(poly.vertex(1));
        pts[2] = pts[2] + poly.normal(2) * (0.01 * l);
        let s = Snapshot::new(pts, TolerancePolicy::default()).unwrap();
        assert!(is_pre_regular(&s).is_none());
    }

    #[test]
    fn matching_vertices_follow_edge_order() {
        let poly = hexagon();
        let pts = on_edges(&poly, &[(0.2, 0.6), (0.2, 0.6), (0.2, 0.6)]);
        let s = Snapshot::new(pts.clone(), TolerancePolicy::default()).unwrap();
        let cert = is_pre_regular(&s).unwrap();
        for (i, &v) in cert.matching.iter().enumerate() {
            let vert = cert.polygon[v];
            // The matching vertex is the nearer end of the point's edge.
            let other = cert.polygon[if v % 2 == 0 { v + 1 } else { v - 1 }];
            assert!(pts[i].dist(vert) < pts[i].dist(other));
        }
    }
}
