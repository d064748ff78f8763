//! Three robots: straighten the triangle into an equilateral one.

use crate::geometry::{Point, TolerancePolicy};

/// Destination of robot `me` among three, with the move's name.
pub fn ucf3_compute(points: &[Point], me: usize, tol: &TolerancePolicy) -> (Point, &'static str) {
    let here = points[me];
    let edge = |k: usize| points[(k + 1) % 3].dist(points[(k + 2) % 3]);
    let len = [edge(0), edge(1), edge(2)];
    let scale = len.iter().copied().fold(0.0, f64::max);
    let eq = |a: f64, b: f64| tol.eq_len(a, b, scale);
    if eq(len[0], len[1]) && eq(len[1], len[2]) {
        return (here, "DoNothing");
    }
    // Isosceles: the apex is opposite the odd edge.
    for k in 0..3 {
        let (a, b) = ((k + 1) % 3, (k + 2) % 3);
        if eq(len[a], len[b]) {
            if me != k {
                return (here, "Isosceles");
            }
            let (p, q) = (points[a], points[b]);
            let m = p.midpoint(q);
            let d = q - p;
            let h = d.perp() * (0.75f64.sqrt());
            let c1 = m + h;
            let c2 = m - h;
            let dest = if here.dist(c1) <= here.dist(c2) { c1 } else { c2 };
            return (dest, "Isosceles");
        }
    }
    // Scalene: the robot facing the longest edge slides parallel to it onto
    // its perpendicular bisector.
    let k = (0..3).max_by(|&a, &b| len[a].total_cmp(&len[b])).expect("three edges");
    if me != k {
        return (here, "Scalene");
    }
    let (p, q) = (points[(k + 1) % 3], points[(k + 2) % 3]);
    let e = (q - p) * (1.0 / len[k]);
    let m = p.midpoint(q);
    (here + e * (m - here).dot(e), "Scalene")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    #[test]
    fn scalene_slides_parallel() {
        let pts = [Point::new(0.0, 0.0), Point::new(4.0, 0.0), Point::new(1.0, 1.0)];
        let (d, _) = ucf3_compute(&pts, 2, &tol());
        assert!(d.dist(Point::new(2.0, 1.0)) < 1e-12);
        assert_eq!(ucf3_compute(&pts, 0, &tol()).0, pts[0]);
    }

    #[test]
    fn isosceles_apex_completes_the_triangle() {
        let pts = [Point::new(0.0, 0.0), Point::new(2.0, 0.0), Point::new(1.0, 0.7)];
        let (d, _) = ucf3_compute(&pts, 2, &tol());
        assert!(d.dist(Point::new(1.0, 3f64.sqrt())) < 1e-12);
    }

    #[test]
    fn equilateral_stays() {
        let pts = [Point::new(0.0, 0.0), Point::new(2.0, 0.0), Point::new(1.0, 3f64.sqrt())];
        for i in 0..3 {
            assert_eq!(ucf3_compute(&pts, i, &tol()).0, pts[i]);
        }
    }
}
