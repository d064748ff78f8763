//! Planar primitives evaluated under an explicit tolerance policy.
//!
//! Angles are radians: `[0, π]` for undirected angular distances and
//! `[0, 2π)` for directed polar angles.

use std::f64::consts::{PI, TAU};
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Result, UcfError};

/// A point (or vector) of the plane. Serialized as `[x, y]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl From<[f64; 2]> for Point {
    fn from(a: [f64; 2]) -> Self {
        Point { x: a[0], y: a[1] }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn polar(radius: f64, angle: f64) -> Self {
        Point::new(radius * angle.cos(), radius * angle.sin())
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    /// Polar angle in `[0, 2π)`.
    pub fn angle(self) -> f64 {
        norm_angle(self.y.atan2(self.x))
    }

    /// Counterclockwise perpendicular.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn lerp(self, o: Point, t: f64) -> Point {
        self + (o - self) * t
    }

    pub fn midpoint(self, o: Point) -> Point {
        Point::new(0.5 * (self.x + o.x), 0.5 * (self.y + o.y))
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// Reduces an angle to `[0, 2π)`.
pub fn norm_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Reduces an angle to `(-π, π]`.
pub fn signed_angle(a: f64) -> f64 {
    let r = norm_angle(a);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Tolerances used by every equality or ordering predicate on derived reals.
///
/// Lengths compare with `eps_abs·scale + eps_rel·|value|`, where `scale` is the
/// length scale of the configuration (the SEC radius). Angles and other
/// dimensionless quantities compare with `eps_abs + eps_rel`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TolerancePolicy {
    pub eps_abs: f64,
    pub eps_rel: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        TolerancePolicy {
            eps_abs: 1e-9,
            eps_rel: 1e-9,
        }
    }
}

impl TolerancePolicy {
    pub fn new(eps_abs: f64, eps_rel: f64) -> Result<Self> {
        if !(eps_abs.is_finite() && eps_rel.is_finite()) || eps_abs < 0.0 || eps_rel < 0.0 {
            return Err(UcfError::InvalidArgument(format!(
                "tolerances must be finite and nonnegative, got ({eps_abs}, {eps_rel})"
            )));
        }
        Ok(TolerancePolicy { eps_abs, eps_rel })
    }

    /// Slack for dimensionless comparisons.
    pub fn unit(&self) -> f64 {
        self.eps_abs + self.eps_rel
    }

    /// Slack for lengths of magnitude `value` in a configuration of size `scale`.
    pub fn len(&self, scale: f64, value: f64) -> f64 {
        self.eps_abs * scale + self.eps_rel * value.abs()
    }

    pub fn eq_len(&self, a: f64, b: f64, scale: f64) -> bool {
        (a - b).abs() <= self.len(scale, a.abs().max(b.abs()))
    }

    pub fn eq_angle(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.unit()
    }
}

/// A circle; also stands for the closed disk it bounds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Point, radius: f64) -> Self {
        Circle { center, radius }
    }

    pub fn contains(&self, p: Point, tol: &TolerancePolicy) -> bool {
        let d = p.dist(self.center);
        d <= self.radius * (1.0 + tol.eps_rel) + tol.eps_abs * self.radius.max(f64::MIN_POSITIVE)
    }

    pub fn on_boundary(&self, p: Point, tol: &TolerancePolicy) -> bool {
        tol.eq_len(p.dist(self.center), self.radius, self.radius)
    }
}

/// The concentric circle with a third of the radius.
pub fn sed_third(c: Circle) -> Circle {
    Circle::new(c.center, c.radius / 3.0)
}

/// Relative slack used inside the SEC construction itself.
const SEC_SLACK: f64 = 1e-12;

fn circle_two(a: Point, b: Point) -> Circle {
    Circle::new(a.midpoint(b), 0.5 * a.dist(b))
}

fn circumcircle(a: Point, b: Point, c: Point) -> Option<Circle> {
    let ab = b - a;
    let ac = c - a;
    let d = 2.0 * ab.cross(ac);
    let scale = ab.norm() * ac.norm();
    if d.abs() <= 1e-14 * scale || scale == 0.0 {
        return None;
    }
    let ab2 = ab.dot(ab);
    let ac2 = ac.dot(ac);
    let ux = (ac.y * ab2 - ab.y * ac2) / d;
    let uy = (ab.x * ac2 - ac.x * ab2) / d;
    let center = a + Point::new(ux, uy);
    let radius = center.dist(a).max(center.dist(b)).max(center.dist(c));
    Some(Circle::new(center, radius))
}

fn encloses(c: &Circle, p: Point) -> bool {
    p.dist(c.center) <= c.radius * (1.0 + SEC_SLACK) + SEC_SLACK * f64::MIN_POSITIVE.max(c.radius)
}

fn circle_three(a: Point, b: Point, c: Point) -> Circle {
    // The smallest circle through a and b that also encloses c, as required by
    // the incremental construction; collinear triples fall back to a diameter.
    match circumcircle(a, b, c) {
        Some(circ) => circ,
        None => {
            let cands = [circle_two(a, b), circle_two(a, c), circle_two(b, c)];
            cands
                .into_iter()
                .filter(|k| encloses(k, a) && encloses(k, b) && encloses(k, c))
                .fold(None::<Circle>, |best, k| match best {
                    Some(b) if b.radius <= k.radius => Some(b),
                    _ => Some(k),
                })
                .unwrap_or_else(|| circle_two(a, b))
        }
    }
}

/// Smallest enclosing circle by the incremental (Welzl-style) construction.
///
/// Points are processed in the given order; the result does not depend on it
/// beyond rounding. The tolerance policy only guards the input; the circle is
/// computed at machine precision.
pub fn smallest_enclosing_circle(points: &[Point], _tol: &TolerancePolicy) -> Result<Circle> {
    if points.is_empty() {
        return Err(UcfError::InvalidArgument("empty point set".into()));
    }
    if points.iter().any(|p| !p.is_finite()) {
        return Err(UcfError::InvalidArgument("non-finite point".into()));
    }
    let mut c = Circle::new(points[0], 0.0);
    for i in 1..points.len() {
        if encloses(&c, points[i]) {
            continue;
        }
        c = Circle::new(points[i], 0.0);
        for j in 0..i {
            if encloses(&c, points[j]) {
                continue;
            }
            c = circle_two(points[i], points[j]);
            for k in 0..j {
                if encloses(&c, points[k]) {
                    continue;
                }
                c = circle_three(points[i], points[j], points[k]);
            }
        }
    }
    Ok(c)
}

/// Measure of the smallest angle at `center` between the rays through `a` and `b`.
pub fn angular_distance(center: Point, a: Point, b: Point) -> Result<f64> {
    let u = a - center;
    let v = b - center;
    if u.norm() == 0.0 || v.norm() == 0.0 {
        return Err(UcfError::InvalidArgument(
            "angular distance undefined at the center".into(),
        ));
    }
    Ok(u.cross(v).abs().atan2(u.dot(v)))
}

/// Whether `a` and `b` lie on the same ray from `center`.
pub fn is_coradial(center: Point, a: Point, b: Point, tol: &TolerancePolicy) -> Result<bool> {
    Ok(angular_distance(center, a, b)? <= tol.unit())
}

/// Whether `a` and `b` both lie on `circle` and are collinear with its center.
pub fn is_antipodal_on(circle: &Circle, a: Point, b: Point, tol: &TolerancePolicy) -> Result<bool> {
    let th = angular_distance(circle.center, a, b)?;
    Ok(circle.on_boundary(a, tol) && circle.on_boundary(b, tol) && th >= PI - tol.unit())
}

/// Radial projection of `p` onto the circle.
pub fn footprint(sec: &Circle, p: Point) -> Result<Point> {
    let v = p - sec.center;
    let d = v.norm();
    if d == 0.0 {
        return Err(UcfError::InvalidArgument("footprint of the center".into()));
    }
    Ok(sec.center + v * (sec.radius / d))
}

/// Radial projection of `p` onto the concentric circle of a third of the radius.
pub fn anti_footprint(sec: &Circle, p: Point) -> Result<Point> {
    footprint(&sed_third(*sec), p)
}

/// Side of the directed line from the center through `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// The angular region between the rays through `a` and `b`.
///
/// When the center lies on segment `ab` the two rays bound two half-planes and
/// `halfplane` selects one of them.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sector {
    pub center: Point,
    pub a: Point,
    pub b: Point,
    pub halfplane: Option<Side>,
}

impl Sector {
    pub fn new(center: Point, a: Point, b: Point, halfplane: Option<Side>, tol: &TolerancePolicy) -> Result<Self> {
        let th = angular_distance(center, a, b)?;
        let degenerate = th >= PI - tol.unit();
        if degenerate != halfplane.is_some() {
            return Err(UcfError::InvalidArgument(
                "half-plane flag must be present exactly when the center lies on ab".into(),
            ));
        }
        Ok(Sector { center, a, b, halfplane })
    }
}

/// Membership in a closed sector.
pub fn sector_contains(s: &Sector, x: Point, tol: &TolerancePolicy) -> Result<bool> {
    match s.halfplane {
        Some(side) => {
            let u = s.a - s.center;
            let w = x - s.center;
            if w.norm() == 0.0 {
                return Err(UcfError::InvalidArgument("point at the sector apex".into()));
            }
            let c = u.cross(w) / (u.norm() * w.norm());
            Ok(match side {
                Side::Left => c >= -tol.unit(),
                Side::Right => c <= tol.unit(),
            })
        }
        None => {
            let ax = angular_distance(s.center, s.a, x)?;
            let xb = angular_distance(s.center, x, s.b)?;
            let ab = angular_distance(s.center, s.a, s.b)?;
            Ok(ax + xb - ab <= tol.unit())
        }
    }
}

/// Whether every point is a vertex of the convex hull and no three are collinear.
pub fn strictly_convex_position(points: &[Point], tol: &TolerancePolicy) -> bool {
    let n = points.len();
    if n < 3 {
        return false;
    }
    let c = points.iter().fold(Point::ORIGIN, |acc, &p| acc + p) * (1.0 / n as f64);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| (points[i] - c).angle().total_cmp(&(points[j] - c).angle()));
    if order.iter().any(|&i| points[i].dist(c) == 0.0) {
        return false;
    }
    for k in 0..n {
        let a = points[order[k]];
        let b = points[order[(k + 1) % n]];
        let d = points[order[(k + 2) % n]];
        let u = b - a;
        let v = d - b;
        let (lu, lv) = (u.norm(), v.norm());
        if lu == 0.0 || lv == 0.0 {
            return false;
        }
        // Strict left turn at every vertex of the angular ordering.
        if u.cross(v) / (lu * lv) <= tol.unit() {
            return false;
        }
    }
    // Left turns everywhere with total turning 2π means a simple convex polygon.
    let mut turning = 0.0;
    for k in 0..n {
        let a = points[order[k]];
        let b = points[order[(k + 1) % n]];
        let d = points[order[(k + 2) % n]];
        let u = b - a;
        let v = d - b;
        turning += u.cross(v).atan2(u.dot(v));
    }
    (turning - TAU).abs() < 1e-6
}

/// A straight line through `point` with direction `dir`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Line {
    pub point: Point,
    pub dir: Point,
}

impl Line {
    pub fn new(point: Point, dir: Point) -> Self {
        let l = dir.norm();
        Line { point, dir: dir * (1.0 / l) }
    }

    pub fn through(a: Point, b: Point) -> Self {
        Line::new(a, b - a)
    }

    pub fn distance(&self, p: Point) -> f64 {
        self.dir.cross(p - self.point).abs()
    }
}

/// Intersection of the ray from `origin` along `dir` with a line, as the ray
/// parameter `t ≥ 0` (distance along unit `dir`).
pub fn ray_line_param(origin: Point, dir: Point, line: &Line) -> Option<f64> {
    let denom = dir.cross(line.dir);
    if denom.abs() < 1e-14 {
        return None;
    }
    let t = (line.point - origin).cross(line.dir) / denom;
    if t >= 0.0 {
        Some(t)
    } else {
        None
    }
}

/// A regular polygon; vertex `k` sits at polar angle `phase + 2πk/n` about
/// `center`, and edge `k` joins vertices `k` and `k+1` (counterclockwise).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularPolygon {
    pub n: usize,
    pub center: Point,
    pub circumradius: f64,
    pub phase: f64,
}

impl RegularPolygon {
    pub fn vertex(&self, k: usize) -> Point {
        let a = self.phase + TAU * (k % self.n) as f64 / self.n as f64;
        self.center + Point::polar(self.circumradius, a)
    }

    pub fn vertices(&self) -> Vec<Point> {
        (0..self.n).map(|k| self.vertex(k)).collect()
    }

    pub fn apothem(&self) -> f64 {
        self.circumradius * (PI / self.n as f64).cos()
    }

    /// Outward unit normal of edge `k`.
    pub fn normal(&self, k: usize) -> Point {
        let a = self.phase + PI / self.n as f64 + TAU * (k % self.n) as f64 / self.n as f64;
        Point::polar(1.0, a)
    }

    pub fn edge_line(&self, k: usize) -> Line {
        Line::through(self.vertex(k), self.vertex(k + 1))
    }

    /// Largest distance between corresponding vertices under the best cyclic
    /// relabeling in either orientation.
    pub fn vertex_deviation(&self, other: &RegularPolygon) -> f64 {
        if self.n != other.n {
            return f64::INFINITY;
        }
        let a = self.vertices();
        let b = other.vertices();
        let n = self.n;
        let mut best = f64::INFINITY;
        for s in 0..n {
            for rev in [false, true] {
                let mut worst: f64 = 0.0;
                for k in 0..n {
                    let j = if rev { (s + n - k) % n } else { (s + k) % n };
                    worst = worst.max(a[k].dist(b[j]));
                }
                best = best.min(worst);
            }
        }
        best
    }
}

pub(crate) fn solve3(m: [[f64; 3]; 3], r: [f64; 3]) -> Option<[f64; 3]> {
    let det = |m: &[[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let d = det(&m);
    if d.abs() < 1e-12 {
        return None;
    }
    let mut out = [0.0; 3];
    for (c, o) in out.iter_mut().enumerate() {
        let mut mm = m;
        for row in 0..3 {
            mm[row][c] = r[row];
        }
        *o = det(&mm) / d;
    }
    Some(out)
}

/// The regular n-gon whose edge `k_i` lies on oriented line `i` for every
/// given pair, fitted by least squares and accepted when all lines fit within
/// `tol` relative to the polygon size. Lines are oriented along the
/// counterclockwise traversal of the polygon, which lies on their left.
/// Requires at least three lines.
pub fn polygon_from_indexed_lines(n: usize, lines: &[(usize, Line)], tol: &TolerancePolicy) -> Option<RegularPolygon> {
    if n < 3 || lines.len() < 3 {
        return None;
    }
    let step = TAU / n as f64;
    let (k0, l0) = lines[0];
    // Outward normal of edge 0.
    let psi0 = (-l0.dir.perp()).angle() - step * k0 as f64;
    let mut rows = Vec::with_capacity(lines.len());
    for &(k, l) in lines {
        let u = Point::polar(1.0, psi0 + step * k as f64);
        if u.dot(-l.dir.perp()) < 1.0 - 1e-6 || u.cross(-l.dir.perp()).abs() > 10.0 * tol.unit() + 1e-12 {
            return None;
        }
        rows.push((u, u.dot(l.point)));
    }
    // Least squares for u·X + h = u·p.
    let mut ata = [[0.0; 3]; 3];
    let mut atb = [0.0; 3];
    for &(u, rhs) in &rows {
        let a = [u.x, u.y, 1.0];
        for i in 0..3 {
            for j in 0..3 {
                ata[i][j] += a[i] * a[j];
            }
            atb[i] += a[i] * rhs;
        }
    }
    let [x, y, h] = solve3(ata, atb)?;
    if !(h > 0.0) {
        return None;
    }
    let center = Point::new(x, y);
    let worst = rows
        .iter()
        .map(|&(u, rhs)| (u.dot(center) + h - rhs).abs())
        .fold(0.0, f64::max);
    if worst > 10.0 * tol.len(h, h) {
        return None;
    }
    Some(RegularPolygon {
        n,
        center,
        circumradius: h / (PI / n as f64).cos(),
        phase: norm_angle(psi0 - PI / n as f64),
    })
}

/// The regular n-gon having three of its edges on the three oriented lines.
///
/// Orientation follows the counterclockwise traversal of the polygon, so the
/// polygon lies to the left of each line. Orientation fixes which edge each
/// line carries, which makes the answer unique; unoriented lines admit
/// several regular n-gons in general.
pub fn regular_polygon_from_lines(n: usize, lines: &[Line; 3], tol: &TolerancePolicy) -> Option<RegularPolygon> {
    if n < 3 {
        return None;
    }
    let step = TAU / n as f64;
    let base = (-lines[0].dir.perp()).angle();
    let mut indexed = Vec::with_capacity(3);
    for l in lines {
        let rel = norm_angle((-l.dir.perp()).angle() - base) / step;
        let k = rel.round();
        if (rel - k).abs() * step > 10.0 * tol.unit() + 1e-12 {
            return None;
        }
        indexed.push(((k as usize) % n, *l));
    }
    if indexed[0].0 == indexed[1].0 || indexed[0].0 == indexed[2].0 || indexed[1].0 == indexed[2].0 {
        return None;
    }
    polygon_from_indexed_lines(n, &indexed, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    fn close(a: Point, b: Point) -> bool {
        a.dist(b) < 1e-12
    }

    #[test]
    fn sec_of_antipodal_pair() {
        let c = smallest_enclosing_circle(&[Point::new(1.0, 0.0), Point::new(-1.0, 0.0)], &tol()).unwrap();
        assert!(close(c.center, Point::ORIGIN));
        assert!((c.radius - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sec_of_regular_pentagon() {
        let pts: Vec<Point> = (0..5).map(|k| Point::polar(1.0, TAU * k as f64 / 5.0)).collect();
        let c = smallest_enclosing_circle(&pts, &tol()).unwrap();
        assert!(close(c.center, Point::ORIGIN));
        assert!((c.radius - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sec_of_isosceles_triangle() {
        // Value frozen from the pair/triple brute-force oracle.
        let pts = [Point::new(0.0, 0.0), Point::new(2.0, 0.0), Point::new(1.0, 2.0)];
        let c = smallest_enclosing_circle(&pts, &tol()).unwrap();
        assert!(close(c.center, Point::new(1.0, 0.75)));
        assert!((c.radius - 1.25).abs() < 1e-12);
    }

    #[test]
    fn sec_singleton_and_errors() {
        let c = smallest_enclosing_circle(&[Point::new(3.0, 4.0)], &tol()).unwrap();
        assert_eq!(c.radius, 0.0);
        assert!(smallest_enclosing_circle(&[], &tol()).is_err());
        assert!(smallest_enclosing_circle(&[Point::new(f64::NAN, 0.0)], &tol()).is_err());
    }

    #[test]
    fn third_circle() {
        let c = sed_third(Circle::new(Point::ORIGIN, 3.0));
        assert_eq!(c.radius, 1.0);
        assert_eq!(sed_third(Circle::new(Point::ORIGIN, 0.0)).radius, 0.0);
        let c = sed_third(Circle::new(Point::new(5.0, -2.0), 0.9));
        assert_eq!(c.center, Point::new(5.0, -2.0));
        assert!((c.radius - 0.3).abs() < 1e-15);
    }

    #[test]
    fn angular_distances() {
        let o = Point::ORIGIN;
        let d = angular_distance(o, Point::new(1.0, 0.0), Point::new(0.0, 1.0)).unwrap();
        assert!((d - PI / 2.0).abs() < 1e-15);
        let d = angular_distance(o, Point::new(1.0, 0.0), Point::new(-2.0, 0.0)).unwrap();
        assert!((d - PI).abs() < 1e-15);
        let d = angular_distance(o, Point::new(1.0, 0.0), Point::new(3.0, 3.0)).unwrap();
        assert!((d - PI / 4.0).abs() < 1e-15);
        assert!(angular_distance(o, o, Point::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn coradial_and_antipodal() {
        let o = Point::ORIGIN;
        assert!(is_coradial(o, Point::new(1.0, 0.0), Point::new(2.0, 0.0), &tol()).unwrap());
        let unit = Circle::new(o, 1.0);
        assert!(is_antipodal_on(&unit, Point::new(1.0, 0.0), Point::new(-1.0, 0.0), &tol()).unwrap());
        let tight = TolerancePolicy::new(1e-12, 1e-12).unwrap();
        assert!(!is_coradial(o, Point::new(1.0, 0.0), Point::new(1.0, 0.001), &tight).unwrap());
    }

    #[test]
    fn footprints() {
        let sec = Circle::new(Point::ORIGIN, 3.0);
        assert!(close(footprint(&sec, Point::new(1.0, 0.0)).unwrap(), Point::new(3.0, 0.0)));
        assert!(close(anti_footprint(&sec, Point::new(1.0, 0.0)).unwrap(), Point::new(1.0, 0.0)));
        assert!(close(footprint(&sec, Point::new(0.0, 2.0)).unwrap(), Point::new(0.0, 3.0)));
        assert!(footprint(&sec, Point::ORIGIN).is_err());
    }

    #[test]
    fn sectors() {
        let o = Point::ORIGIN;
        let s = Sector::new(o, Point::new(1.0, 0.0), Point::new(0.0, 1.0), None, &tol()).unwrap();
        assert!(sector_contains(&s, Point::new(1.0, 1.0), &tol()).unwrap());
        assert!(!sector_contains(&s, Point::new(-1.0, 0.0), &tol()).unwrap());
        let h = Sector::new(o, Point::new(1.0, 0.0), Point::new(-1.0, 0.0), Some(Side::Left), &tol()).unwrap();
        assert!(sector_contains(&h, Point::new(0.0, 1.0), &tol()).unwrap());
        assert!(!sector_contains(&h, Point::new(0.0, -1.0), &tol()).unwrap());
        assert!(Sector::new(o, Point::new(1.0, 0.0), Point::new(-1.0, 0.0), None, &tol()).is_err());
    }

    #[test]
    fn convex_position() {
        let sq = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0), Point::new(0.0, 1.0)];
        assert!(strictly_convex_position(&sq, &tol()));
        let mut with_mid = sq.to_vec();
        with_mid.push(Point::new(0.5, 0.0));
        assert!(!strictly_convex_position(&with_mid, &tol()));
        let line = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(2.0, 0.0)];
        assert!(!strictly_convex_position(&line, &tol()));
        let mut inner = sq.to_vec();
        inner.push(Point::new(0.5, 0.5));
        assert!(!strictly_convex_position(&inner, &tol()));
    }

    fn sample_polygon(n: usize) -> RegularPolygon {
        RegularPolygon {
            n,
            center: Point::new(0.3, -1.2),
            circumradius: 2.5,
            phase: 0.4,
        }
    }

    #[test]
    fn hexagon_from_alternate_edges() {
        let p = sample_polygon(6);
        let lines = [p.edge_line(0), p.edge_line(2), p.edge_line(4)];
        let q = regular_polygon_from_lines(6, &lines, &tol()).unwrap();
        assert!(p.vertex_deviation(&q) < 1e-9);
    }

    #[test]
    fn incompatible_slopes() {
        let lines = [
            Line::new(Point::new(0.0, 0.0), Point::new(1.0, 0.0)),
            Line::new(Point::new(0.0, 1.0), Point::new(1.0, 0.5)),
            Line::new(Point::new(2.0, 0.0), Point::new(0.0, 1.0)),
        ];
        assert!(regular_polygon_from_lines(6, &lines, &tol()).is_none());
    }

    #[test]
    fn octagon_from_consecutive_edges() {
        let p = sample_polygon(8);
        let lines = [p.edge_line(3), p.edge_line(4), p.edge_line(5)];
        let q = regular_polygon_from_lines(8, &lines, &tol()).unwrap();
        assert!(p.vertex_deviation(&q) < 1e-9);
    }

    #[test]
    fn indexed_reconstruction() {
        let p = sample_polygon(10);
        let lines: Vec<(usize, Line)> = [1usize, 4, 8].iter().map(|&k| (k, p.edge_line(k))).collect();
        let q = polygon_from_indexed_lines(10, &lines, &tol()).unwrap();
        assert!(p.vertex_deviation(&q) < 1e-9);
    }
}
