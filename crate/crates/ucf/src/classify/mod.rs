//! Configuration taxonomy: angle sequences, periods, partitions, symmetry,
//! relocations and the class predicates consulted by the formation dispatch.

mod preregular;
mod relocation;
mod ring;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Result, UcfError};
use crate::geometry::{smallest_enclosing_circle, Circle, Point, TolerancePolicy};

pub use preregular::{is_pre_regular, PreRegularCertificate};
pub(crate) use relocation::principal_angles;
pub use relocation::{is_well_occupied, occupied_sectors, principal_relocation, well_occupying_relocation, OccupiedSector};
pub use ring::{
    ang_dist, cmp_seq, cw_dist, seq_eq, AngleSequence, Chirality, Direction, Partition, PeriodClass, PeriodKind, Ring,
};

/// Principal line of a Half-disk set through the SED center.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrincipalLine {
    /// Direction of the first principal ray; the second points the opposite way.
    pub angle: f64,
    /// Whether the open half-plane to the left of the first ray is empty.
    pub left_empty: bool,
    /// Whether the open half-plane to the right of the first ray is empty.
    pub right_empty: bool,
}

impl PrincipalLine {
    pub fn collinear(&self) -> bool {
        self.left_empty && self.right_empty
    }
}

/// Result of the dispatch ladder, in priority order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum ConfigClass {
    Regular,
    PreRegular(PreRegularCertificate),
    Central,
    HalfDisk(PrincipalLine),
    CoRadial,
    ValidReady,
    ValidWaiting,
    Invalid,
}

impl ConfigClass {
    pub fn name(&self) -> &'static str {
        match self {
            ConfigClass::Regular => "Regular",
            ConfigClass::PreRegular(_) => "PreRegular",
            ConfigClass::Central => "Central",
            ConfigClass::HalfDisk(_) => "HalfDisk",
            ConfigClass::CoRadial => "CoRadial",
            ConfigClass::ValidReady => "ValidReady",
            ConfigClass::ValidWaiting => "ValidWaiting",
            ConfigClass::Invalid => "Invalid",
        }
    }
}

/// A set of distinct points with its smallest enclosing circle and the polar
/// coordinates of every point relative to that circle (center at the origin,
/// radius 1).
#[derive(Clone, Debug)]
pub struct Snapshot {
    points: Vec<Point>,
    sec: Circle,
    tol: TolerancePolicy,
    unit: Vec<Point>,
    rho: Vec<f64>,
    phi: Vec<f64>,
    cyclic: Vec<usize>,
    eps: f64,
}

impl Snapshot {
    pub fn new(points: Vec<Point>, tol: TolerancePolicy) -> Result<Snapshot> {
        let n = points.len();
        if n < 3 {
            return Err(UcfError::InvalidArgument(format!("need at least 3 points, got {n}")));
        }
        let sec = smallest_enclosing_circle(&points, &tol)?;
        let eps = tol.unit();
        for i in 0..n {
            for j in i + 1..n {
                if points[i].dist(points[j]) <= tol.len(sec.radius, 0.0) {
                    return Err(UcfError::InvalidArgument(format!("points {i} and {j} coincide")));
                }
            }
        }
        let inv = 1.0 / sec.radius;
        let unit: Vec<Point> = points.iter().map(|&p| (p - sec.center) * inv).collect();
        let rho: Vec<f64> = unit.iter().map(|u| u.norm()).collect();
        let phi: Vec<f64> = unit
            .iter()
            .zip(&rho)
            .map(|(u, &r)| if r <= eps { 0.0 } else { u.angle() })
            .collect();
        let mut cyclic: Vec<usize> = (0..n).collect();
        cyclic.sort_by(|&a, &b| {
            let ca = rho[a] <= eps;
            let cb = rho[b] <= eps;
            cb.cmp(&ca)
                .then_with(|| {
                    if ang_dist(phi[a], phi[b]) <= eps {
                        std::cmp::Ordering::Equal
                    } else {
                        phi[b].total_cmp(&phi[a])
                    }
                })
                .then(rho[a].total_cmp(&rho[b]))
                .then(a.cmp(&b))
        });
        Ok(Snapshot { points, sec, tol, unit, rho, phi, cyclic, eps })
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn sec(&self) -> Circle {
        self.sec
    }

    pub fn tol(&self) -> TolerancePolicy {
        self.tol
    }

    /// Slack used on the normalized (unit-radius) coordinates.
    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Point indices clockwise about the SED center; a central point comes
    /// first and co-radial points are ordered inner to outer.
    pub fn cyclic_order(&self) -> &[usize] {
        &self.cyclic
    }

    /// Normalized position of point `i` (SED center at the origin, radius 1).
    pub fn unit(&self, i: usize) -> Point {
        self.unit[i]
    }

    pub fn rho(&self, i: usize) -> f64 {
        self.rho[i]
    }

    pub fn phi(&self, i: usize) -> f64 {
        self.phi[i]
    }

    /// Maps a normalized point back to the snapshot's frame.
    pub fn denormalize(&self, u: Point) -> Point {
        self.sec.center + u * self.sec.radius
    }

    pub fn is_center(&self, i: usize) -> bool {
        self.rho[i] <= self.eps
    }

    pub fn on_sec(&self, i: usize) -> bool {
        (self.rho[i] - 1.0).abs() <= self.eps
    }

    pub fn in_third(&self, i: usize) -> bool {
        self.rho[i] <= 1.0 / 3.0 + self.eps
    }

    pub fn inside_third(&self, i: usize) -> bool {
        self.rho[i] < 1.0 / 3.0 - self.eps
    }

    pub fn on_third(&self, i: usize) -> bool {
        (self.rho[i] - 1.0 / 3.0).abs() <= self.eps
    }

    /// Indices of the points on SEC.
    pub fn external(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.on_sec(i)).collect()
    }

    /// Indices of the points off SEC.
    pub fn internal(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| !self.on_sec(i)).collect()
    }

    /// Angular structure of all points. Meaningful only for non-Co-radial sets.
    pub fn ring(&self) -> Ring {
        Ring::new(self.phi.clone(), self.eps)
    }

    fn require_not_coradial(&self) -> Result<Ring> {
        if is_coradial_config(self) {
            return Err(UcfError::PreconditionViolation(
                "angle sequences are undefined on Co-radial sets".into(),
            ));
        }
        Ok(self.ring())
    }

    /// Footprint of point `i` in normalized coordinates.
    pub fn unit_footprint(&self, i: usize) -> Point {
        Point::polar(1.0, self.phi[i])
    }

    /// Axes of mirror symmetry of the whole set (angles in `[0, π)`).
    pub fn axes(&self) -> Vec<f64> {
        let n = self.n();
        let mut cands = Vec::new();
        for i in 0..n {
            if self.is_center(i) {
                continue;
            }
            cands.push(self.phi[i]);
            for j in 0..n {
                if j != i && !self.is_center(j) {
                    cands.push(0.5 * (self.phi[i] + self.phi[j]));
                }
            }
        }
        let mut axes: Vec<f64> = Vec::new();
        for a in cands {
            let a = a.rem_euclid(PI);
            if axes.iter().any(|&b| ang_dist(2.0 * a, 2.0 * b) <= 2.0 * self.eps) {
                continue;
            }
            let d = Point::polar(1.0, a);
            let ok = (0..n).all(|i| {
                let u = self.unit[i];
                let r = d * (2.0 * u.dot(d)) - u;
                (0..n).any(|j| self.unit[j].dist(r) <= 4.0 * self.eps)
            });
            if ok {
                axes.push(a);
            }
        }
        axes.sort_by(f64::total_cmp);
        axes
    }
}

/// The lexicographically smallest angle sequence.
pub fn min_sequence(s: &Snapshot) -> Result<AngleSequence> {
    Ok(s.require_not_coradial()?.min_sequence())
}

pub fn angle_sequence(s: &Snapshot, origin: usize, dir: Direction) -> Result<AngleSequence> {
    if origin >= s.n() {
        return Err(UcfError::InvalidArgument(format!("origin {origin} out of range")));
    }
    Ok(s.require_not_coradial()?.sequence(origin, dir))
}

pub fn period_class(s: &Snapshot) -> Result<PeriodClass> {
    Ok(s.require_not_coradial()?.period_class())
}

pub fn partitions(s: &Snapshot) -> Result<Partition> {
    Ok(s.require_not_coradial()?.partitions())
}

pub fn is_regular(s: &Snapshot) -> bool {
    let n = s.n();
    if !(0..n).all(|i| s.on_sec(i)) {
        return false;
    }
    let ring = s.ring();
    let step = 2.0 * PI / n as f64;
    ring.gaps().iter().all(|g| (g - step).abs() <= s.eps * 4.0)
}

pub fn is_central(s: &Snapshot) -> bool {
    (0..s.n()).any(|i| s.is_center(i))
}

pub fn is_coradial_config(s: &Snapshot) -> bool {
    if is_central(s) {
        return true;
    }
    s.ring().has_coincident_rays()
}

/// Principal line when some open half-plane bounded by a line through the SED
/// center contains no point. Collinear sets (both half-planes empty) are
/// reported too.
pub fn is_half_disk(s: &Snapshot) -> Option<PrincipalLine> {
    if is_central(s) {
        return None;
    }
    let ring = s.ring();
    let n = ring.len();
    let gaps = ring.gaps();
    let order = ring.order();
    let big: Vec<usize> = (0..n).filter(|&k| gaps[k] >= PI - s.eps * 4.0).collect();
    let &k = big.first()?;
    // Gap from position k clockwise to k+1; the empty side is to the right of
    // the ray through order[k].
    let a = ring.phi(order[k]);
    let b = ring.phi(order[(k + 1) % n]);
    let angle = crate::geometry::norm_angle(a + 0.5 * crate::geometry::signed_angle(b + PI - a));
    Some(PrincipalLine { angle, left_empty: big.len() > 1, right_empty: true })
}

/// Valid (n ≥ 5, not Co-radial, not Half-disk) and Ready.
pub fn is_valid_ready(s: &Snapshot) -> bool {
    (0..s.n()).all(|i| s.on_sec(i) || s.in_third(i)) && is_well_occupied(s)
}

/// Valid and Waiting.
pub fn is_valid_waiting(s: &Snapshot) -> bool {
    if (0..s.n()).any(|i| s.inside_third(i)) {
        return false;
    }
    let internal = s.internal();
    if internal.len() <= 1 {
        return true;
    }
    let ring = s.ring();
    let mu0 = ring.mu(internal[0]);
    internal[1..].iter().all(|&i| seq_eq(&ring.mu(i), &mu0, ring.eps()))
}

/// Runs the dispatch ladder.
pub fn classify(s: &Snapshot) -> Result<ConfigClass> {
    let n = s.n();
    if n == 4 || n < 3 {
        return Err(UcfError::UnsupportedSwarmSize(n));
    }
    if is_regular(s) {
        return Ok(ConfigClass::Regular);
    }
    if let Some(cert) = is_pre_regular(s) {
        return Ok(ConfigClass::PreRegular(cert));
    }
    if is_central(s) {
        return Ok(ConfigClass::Central);
    }
    if let Some(line) = is_half_disk(s) {
        return Ok(ConfigClass::HalfDisk(line));
    }
    if is_coradial_config(s) {
        return Ok(ConfigClass::CoRadial);
    }
    if n >= 5 {
        if is_valid_ready(s) {
            return Ok(ConfigClass::ValidReady);
        }
        if is_valid_waiting(s) {
            return Ok(ConfigClass::ValidWaiting);
        }
    }
    Ok(ConfigClass::Invalid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn snap(pts: Vec<Point>) -> Snapshot {
        Snapshot::new(pts, TolerancePolicy::default()).unwrap()
    }

    fn regular(n: usize, r: f64) -> Vec<Point> {
        (0..n).map(|k| Point::polar(r, 0.3 + TAU * k as f64 / n as f64)).collect()
    }

    #[test]
    fn regular_hexagon_is_regular() {
        assert_eq!(classify(&snap(regular(6, 2.0))).unwrap(), ConfigClass::Regular);
        assert!(is_regular(&snap(regular(8, 1.0))));
    }

    #[test]
    fn pulled_vertex_is_central() {
        let mut p = regular(6, 1.0);
        p[2] = Point::ORIGIN;
        let s = snap(p);
        assert_eq!(classify(&s).unwrap(), ConfigClass::Central);
        assert!(is_coradial_config(&s));
    }

    #[test]
    fn upper_half_is_half_disk() {
        let p = vec![
            Point::new(1.0, 0.0),
            Point::new(-1.0, 0.0),
            Point::polar(1.0, 0.5),
            Point::polar(0.6, 1.4),
            Point::polar(0.9, 2.2),
        ];
        let s = snap(p);
        let line = is_half_disk(&s).unwrap();
        assert!(line.angle.sin().abs() < 1e-9);
        assert!(!line.collinear());
        assert!(matches!(classify(&s).unwrap(), ConfigClass::HalfDisk(_)));
    }

    #[test]
    fn collinear_is_half_disk_with_both_sides_empty() {
        let p = vec![
            Point::new(-1.0, 0.0),
            Point::new(-0.5, 0.0),
            Point::new(0.2, 0.0),
            Point::new(0.6, 0.0),
            Point::new(1.0, 0.0),
        ];
        let line = is_half_disk(&snap(p)).unwrap();
        assert!(line.collinear());
    }

    #[test]
    fn all_on_sec_aperiodic_is_waiting() {
        let angles = [0.0, 0.7, 1.5, 2.6, 3.3, 4.4, 5.5];
        let p: Vec<Point> = angles.iter().map(|&a| Point::polar(1.0, a)).collect();
        assert_eq!(classify(&snap(p)).unwrap(), ConfigClass::ValidWaiting);
    }

    #[test]
    fn four_robots_rejected() {
        let s = snap(regular(4, 1.0));
        assert_eq!(classify(&s), Err(UcfError::UnsupportedSwarmSize(4)));
    }

    #[test]
    fn coradial_sequences_rejected() {
        let mut p = regular(6, 1.0);
        p.push(Point::polar(0.5, 0.3));
        let s = snap(p);
        assert!(matches!(min_sequence(&s), Err(UcfError::PreconditionViolation(_))));
    }

    #[test]
    fn duplicate_points_rejected() {
        let p = vec![Point::new(0.0, 0.0), Point::new(0.0, 0.0), Point::new(1.0, 0.0)];
        assert!(Snapshot::new(p, TolerancePolicy::default()).is_err());
    }

    #[test]
    fn snapshot_axes_respect_radii() {
        let mut p = regular(6, 1.0);
        p[0] = Point::polar(0.5, 0.3);
        let s = snap(p);
        let axes = s.axes();
        assert_eq!(axes.len(), 1);
        assert!(ang_dist(2.0 * axes[0], 0.6) < 1e-9);
    }
}
