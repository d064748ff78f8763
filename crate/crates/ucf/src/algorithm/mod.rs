//! The Compute function: classify a snapshot, dispatch to the matching
//! procedure and return one destination for the observing robot.

mod critical;
mod triangle;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::classify::{
    ang_dist, classify, is_coradial_config, ConfigClass, PeriodKind, PrincipalLine, Ring, Snapshot,
};
use crate::error::{Result, UcfError};
use crate::geometry::{norm_angle, Point, TolerancePolicy};
use crate::targets::{finish_lines, walkers_on_sec};

pub use critical::{augment_path, critical_points, pre_regular_residual, CriticalKind, CriticalPointSet, PathPoint};
pub use triangle::ucf3_compute;

/// A snapshot in the observer's local frame; the observer sits at the origin.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComputeInput {
    pub points: Vec<Point>,
    #[serde(default)]
    pub tol: TolerancePolicy,
}

/// Direction of a radial group move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MoveDir {
    ToSec,
    ToSec3,
}

impl MoveDir {
    pub fn endpoint(self) -> f64 {
        match self {
            MoveDir::ToSec => 1.0,
            MoveDir::ToSec3 => 1.0 / 3.0,
        }
    }
}

/// Outcome of one Compute, with the dispatch that produced it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Decision {
    pub destination: Point,
    /// Configuration class seen by the observer ("Triangle" for three robots).
    pub class: String,
    /// Procedure that chose the destination.
    pub procedure: String,
    /// Input critical points of the cautious move in progress, snapshot frame.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub critical: Vec<Point>,
}

fn observer_index(points: &[Point]) -> Result<usize> {
    let (k, d) = points
        .iter()
        .enumerate()
        .map(|(k, p)| (k, p.norm()))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or_else(|| UcfError::InvalidArgument("empty snapshot".into()))?;
    let scale = points.iter().map(|p| p.norm()).fold(0.0, f64::max).max(1.0);
    if d > 1e-9 * scale {
        return Err(UcfError::InvalidArgument("observer is not at the origin".into()));
    }
    Ok(k)
}

/// Destination of the observer at the origin.
pub fn ucf_compute(input: &ComputeInput) -> Result<Point> {
    Ok(decide(&input.points, input.tol)?.destination)
}

/// Destination of the observer at the origin, with its dispatch.
pub fn decide(points: &[Point], tol: TolerancePolicy) -> Result<Decision> {
    let me = observer_index(points)?;
    decide_for(points, me, tol)
}

/// Destination of robot `me` of the snapshot, in the snapshot's frame.
pub fn decide_for(points: &[Point], me: usize, tol: TolerancePolicy) -> Result<Decision> {
    let n = points.len();
    if n == 4 || n < 3 {
        return Err(UcfError::UnsupportedSwarmSize(n));
    }
    if n == 3 {
        let (destination, procedure) = ucf3_compute(points, me, &tol);
        return Ok(Decision {
            destination,
            class: "Triangle".into(),
            procedure: procedure.into(),
            critical: Vec::new(),
        });
    }
    let s = Snapshot::new(points.to_vec(), tol)?;
    let class = classify(&s)?;
    let mut crit = Vec::new();
    let (u, procedure) = match &class {
        ConfigClass::Regular => (s.unit(me), "DoNothing"),
        ConfigClass::PreRegular(cert) => {
            return Ok(Decision {
                destination: cert.polygon[cert.matching[me]],
                class: class.name().into(),
                procedure: "PreRegular".into(),
                critical: Vec::new(),
            })
        }
        ConfigClass::Central => (proc_central(&s, me), "Central"),
        ConfigClass::HalfDisk(line) => (proc_half_disk(&s, me, line), "HalfDisk"),
        ConfigClass::CoRadial => (proc_co_radial(&s, me), "CoRadial"),
        ConfigClass::ValidReady => proc_valid_ready(&s, me, &mut crit),
        ConfigClass::ValidWaiting => proc_valid_waiting(&s, me, &mut crit),
        ConfigClass::Invalid => (move_all_to_sec(&s, me, &mut crit), "MoveAllToSec"),
    };
    let destination = if u == s.unit(me) { points[me] } else { s.denormalize(u) };
    let critical = crit.into_iter().map(|u| s.denormalize(u)).collect();
    Ok(Decision { destination, class: class.name().into(), procedure: procedure.into(), critical })
}

fn third(angle: f64) -> Point {
    Point::polar(1.0 / 3.0, angle)
}

/// The robot at the center leaves along the bisector of the widest gap
/// between the other robots' rays.
pub(crate) fn proc_central(s: &Snapshot, me: usize) -> Point {
    if !s.is_center(me) {
        return s.unit(me);
    }
    let rays: Vec<f64> = (0..s.n()).filter(|&i| !s.is_center(i)).map(|i| s.phi(i)).collect();
    let ring = Ring::new(rays, s.eps());
    let gaps = ring.gaps();
    let k = (0..gaps.len())
        .max_by(|&a, &b| gaps[a].total_cmp(&gaps[b]))
        .expect("other robots exist");
    let from = ring.phi(ring.order()[k]);
    third(from - 0.5 * gaps[k])
}

/// Unit rotation sense (+1 counterclockwise) of the snapshot's own frame;
/// used only to break ties that the configuration itself leaves open.
const LOCAL_CCW: f64 = 1.0;

pub(crate) fn proc_half_disk(s: &Snapshot, me: usize, line: &PrincipalLine) -> Point {
    let n = s.n();
    let eps = s.eps();
    let here = s.unit(me);
    let a = line.angle;
    let on_ray = |i: usize, r: f64| ang_dist(s.phi(i), r) <= eps;
    let rays = [a, norm_angle(a + PI)];
    // Rotation sense that leads from a principal ray into an empty half-plane.
    let into_empty = |ray: usize| -> f64 {
        if line.collinear() {
            LOCAL_CCW
        } else if ray == 0 {
            -1.0
        } else {
            1.0
        }
    };
    let closest_on = |r: f64| {
        (0..n)
            .filter(|&i| on_ray(i, r))
            .min_by(|&x, &y| s.rho(x).total_cmp(&s.rho(y)))
    };
    let collinear = (0..n).all(|i| on_ray(i, rays[0]) || on_ray(i, rays[1]));
    if collinear {
        let counts = [0, 1].map(|k| (0..n).filter(|&i| on_ray(i, rays[k])).count());
        if let Some(thin) = (0..2).find(|&k| counts[k] < 3) {
            let thick = 1 - thin;
            if closest_on(rays[thick]) != Some(me) {
                return here;
            }
            return if !s.in_third(me) {
                third(s.phi(me))
            } else {
                third(s.phi(me) + into_empty(thick) * PI / 3.0)
            };
        }
    }
    // A principal ray whose stretch inside SED/3 is empty receives the robot
    // nearest to it in angle (then nearest to the center).
    let mut picks: Vec<(usize, usize, f64)> = Vec::new();
    for (k, &r) in rays.iter().enumerate() {
        if (0..n).any(|i| on_ray(i, r) && s.in_third(i)) {
            continue;
        }
        let Some(anchor) = (0..n).filter(|&i| on_ray(i, r) && s.on_sec(i)).max_by(|&x, &y| s.rho(x).total_cmp(&s.rho(y))) else {
            continue;
        };
        let dist = |i: usize| ang_dist(s.phi(i), s.phi(anchor));
        let best = (0..n)
            .filter(|&i| i != anchor)
            .min_by(|&x, &y| {
                let (dx, dy) = (dist(x), dist(y));
                if (dx - dy).abs() <= eps {
                    s.rho(x).total_cmp(&s.rho(y))
                } else {
                    dx.total_cmp(&dy)
                }
            })
            .expect("several robots");
        picks.push((k, best, dist(best)));
    }
    if !picks.is_empty() {
        let mine: Vec<&(usize, usize, f64)> = picks.iter().filter(|p| p.1 == me).collect();
        return match mine.iter().min_by(|x, y| x.2.total_cmp(&y.2)) {
            Some(&&(k, _, _)) => third(rays[k]),
            None => here,
        };
    }
    for (k, &r) in rays.iter().enumerate() {
        if closest_on(r) == Some(me) {
            return third(s.phi(me) + into_empty(k) * PI / 3.0);
        }
    }
    here
}

pub(crate) fn proc_co_radial(s: &Snapshot, me: usize) -> Point {
    let n = s.n();
    let eps = s.eps();
    let here = s.unit(me);
    let shares_ray = |i: usize| (0..n).any(|j| j != i && ang_dist(s.phi(i), s.phi(j)) <= eps);
    let loose: Vec<usize> = (0..n).filter(|&i| !shares_ray(i) && s.inside_third(i)).collect();
    if !loose.is_empty() {
        return if loose.contains(&me) { third(s.phi(me)) } else { here };
    }
    let co: Vec<usize> = (0..n).filter(|&i| shares_ray(i)).collect();
    let rmin = co.iter().map(|&i| s.rho(i)).fold(f64::INFINITY, f64::min);
    let inner: Vec<usize> = co.iter().copied().filter(|&i| s.rho(i) <= rmin + eps).collect();
    if !inner.contains(&me) {
        return here;
    }
    if !s.in_third(me) {
        return third(s.phi(me));
    }
    // Lateral step of a third of the smallest positive angular gap, into the
    // wider of the two gaps beside the shared ray.
    let mut rays: Vec<f64> = (0..n).map(|i| s.phi(i)).collect();
    rays.sort_by(f64::total_cmp);
    rays.dedup_by(|a, b| ang_dist(*a, *b) <= eps);
    let ring = Ring::new(rays.clone(), eps);
    let step = ring.gaps().iter().copied().fold(f64::INFINITY, f64::min) / 3.0;
    let k = (0..rays.len()).find(|&k| ang_dist(rays[k], s.phi(me)) <= eps).expect("own ray");
    let cw_gap = ring.gaps()[ring.pos(k)];
    let ccw_gap = ring.gaps()[(ring.pos(k) + rays.len() - 1) % rays.len()];
    let sense = if (cw_gap - ccw_gap).abs() <= eps {
        LOCAL_CCW
    } else if cw_gap > ccw_gap {
        -1.0
    } else {
        1.0
    };
    third(s.phi(me) + sense * step)
}

pub(crate) fn proc_valid_ready(s: &Snapshot, me: usize, crit: &mut Vec<Point>) -> (Point, &'static str) {
    let n = s.n();
    let here = s.unit(me);
    if (0..n).any(|i| s.inside_third(i)) {
        let p = if s.inside_third(me) { third(s.phi(me)) } else { here };
        return (p, "ValidReady");
    }
    let finish = finish_lines(s);
    let eps = s.eps();
    let settled = finish
        .corr
        .iter()
        .all(|&(i, l)| ang_dist(s.phi(i), finish.lines[l]) <= eps);
    if !settled {
        return (move_to_finish_line(s, me, &finish), "MoveToFinishLine");
    }
    proc_valid_waiting(s, me, crit)
}

/// Lateral move of an internal robot onto its finish line, when reachable.
pub(crate) fn move_to_finish_line(s: &Snapshot, me: usize, finish: &crate::targets::FinishSet) -> Point {
    let here = s.unit(me);
    let Some(line) = finish.line_of(me) else {
        return here;
    };
    if ang_dist(s.phi(me), line) <= s.eps() {
        return here;
    }
    if s.ring().reaches(me, line) {
        third(line)
    } else {
        here
    }
}

pub(crate) fn proc_valid_waiting(s: &Snapshot, me: usize, crit: &mut Vec<Point>) -> (Point, &'static str) {
    let walkers = walkers_on_sec(&s.ring());
    if s.internal().iter().all(|i| walkers.contains(i)) {
        (cautious(s, me, &walkers, MoveDir::ToSec3, crit), "MoveWalkersToSec3")
    } else {
        (move_all_to_sec(s, me, crit), "MoveAllToSec")
    }
}

fn cautious(s: &Snapshot, me: usize, movers: &[usize], dir: MoveDir, out: &mut Vec<Point>) -> Point {
    if !movers.contains(&me) {
        return s.unit(me);
    }
    let crit = critical_points(s, movers, dir);
    let u = cautious_unit(s, me, movers, &crit.unit_points, dir);
    *out = crit.unit_points;
    u
}

/// Analogy class (or strong class) that goes to SEC next.
pub fn move_all_selection(s: &Snapshot) -> Vec<usize> {
    let ring = s.ring();
    let pc = ring.period_class();
    let on_sec: Vec<usize> = s.external();
    let pick_whole = |classes: Vec<Vec<usize>>| -> Option<Vec<usize>> {
        let c = classes.into_iter().find(|c| on_sec.iter().all(|i| c.contains(i)))?;
        (c.iter().any(|&i| !s.on_sec(i))).then_some(c)
    };
    if pc.kind == PeriodKind::Biangular {
        if let Some(c) = pick_whole(ring.strong_analogy_classes()) {
            return c;
        }
    }
    if pc.double_biangular {
        if let Some(c) = pick_whole(ring.analogy_classes()) {
            return c;
        }
    }
    let open: Vec<Vec<usize>> = ring
        .analogy_classes()
        .into_iter()
        .filter(|c| c.iter().any(|&i| !s.on_sec(i)))
        .collect();
    let least = open.iter().map(|c| c.len()).min().unwrap_or(0);
    let keys: Vec<(Vec<f64>, &Vec<usize>)> = open
        .iter()
        .filter(|c| c.len() == least)
        .map(|c| {
            let key = c
                .iter()
                .map(|&i| ring.mu(i))
                .min_by(|a, b| crate::classify::cmp_seq(a, b, ring.eps()))
                .unwrap_or_default();
            (key, c)
        })
        .collect();
    keys.into_iter()
        .min_by(|a, b| crate::classify::cmp_seq(&a.0, &b.0, ring.eps()))
        .map(|(_, c)| c.clone())
        .unwrap_or_default()
}

/// Robots inside SED/3 first go out to SEC/3; then one class moves to SEC.
pub(crate) fn move_all_to_sec(s: &Snapshot, me: usize, crit: &mut Vec<Point>) -> Point {
    let n = s.n();
    if is_coradial_config(s) {
        return s.unit(me);
    }
    if (0..n).any(|i| s.inside_third(i)) {
        return if s.inside_third(me) { third(s.phi(me)) } else { s.unit(me) };
    }
    let movers = move_all_selection(s);
    cautious(s, me, &movers, MoveDir::ToSec, crit)
}

/// Cautious step in normalized coordinates, given the input critical points.
pub(crate) fn cautious_unit(s: &Snapshot, me: usize, movers: &[usize], crit: &[Point], dir: MoveDir) -> Point {
    let here = s.unit(me);
    if !movers.contains(&me) {
        return here;
    }
    let eps = s.eps();
    let rho = s.rho(me);
    let end = dir.endpoint();
    if (rho - end).abs() <= eps {
        return here;
    }
    let behind = movers.iter().any(|&r| match dir {
        MoveDir::ToSec => s.rho(r) < rho - eps,
        MoveDir::ToSec3 => s.rho(r) > rho + eps,
    });
    if behind {
        return here;
    }
    let radii = path_radii(crit, end);
    let ahead = |r: f64| match dir {
        MoveDir::ToSec => r > rho + eps && r < end,
        MoveDir::ToSec3 => r < rho - eps && r > end,
    };
    let next = radii
        .into_iter()
        .filter(|&r| ahead(r))
        .min_by(|a, b| (a - rho).abs().total_cmp(&(b - rho).abs()))
        .unwrap_or(end);
    Point::polar(next, s.phi(me))
}

/// Distances from the center of every final, transposed and intermediate
/// critical point on one path.
fn path_radii(crit: &[Point], end: f64) -> Vec<f64> {
    let mut base: Vec<f64> = vec![end];
    for p in crit {
        let r = p.norm();
        if r <= 1.0 + 1e-12 && !base.iter().any(|&b| (b - r).abs() <= 1e-15) {
            base.push(r);
        }
    }
    let mut all = base.clone();
    for i in 0..base.len() {
        for j in i + 1..base.len() {
            all.push(0.5 * (base[i] + base[j]));
        }
    }
    all
}

/// Cautious-move destination of robot `me` in the snapshot frame, with the
/// input critical points given in the snapshot frame too.
pub fn cautious_destination(s: &Snapshot, me: usize, movers: &[usize], crit: &[Point], dir: MoveDir) -> Point {
    let unit: Vec<Point> = crit
        .iter()
        .map(|&p| (p - s.sec().center) * (1.0 / s.sec().radius))
        .collect();
    let u = cautious_unit(s, me, movers, &unit, dir);
    if u == s.unit(me) {
        s.points()[me]
    } else {
        s.denormalize(u)
    }
}
