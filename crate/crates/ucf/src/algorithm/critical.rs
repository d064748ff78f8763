//! Critical points of radial group moves: positions at which the moving
//! robots would complete a Pre-regular configuration, plus the auxiliary
//! points the cautious protocol stops at.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::MoveDir;
use crate::classify::{is_pre_regular, PeriodKind, Snapshot};
use crate::geometry::{polygon_from_indexed_lines, ray_line_param, solve3, Line, Point};

/// Input critical points of a group move.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CriticalPointSet {
    /// Pre-regular configurations reachable by the movers, snapshot frame.
    pub configurations: Vec<Vec<Point>>,
    /// Positions of the movers in those configurations, snapshot frame.
    pub points: Vec<Point>,
    #[serde(skip)]
    pub(crate) unit_points: Vec<Point>,
}

/// Role of a point on a mover's path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CriticalKind {
    Input,
    Final,
    Transposed,
    Intermediate,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathPoint {
    pub point: Point,
    pub kind: CriticalKind,
}

/// Critical points on the path of `robot`, nearest to the endpoint first.
pub fn augment_path(s: &Snapshot, robot: usize, crit: &[Point], dir: MoveDir) -> Vec<PathPoint> {
    let c = s.sec().center;
    let r = s.sec().radius;
    let phi = s.phi(robot);
    let end = dir.endpoint();
    let tol = 1e-12;
    let mut pts: Vec<(f64, CriticalKind)> = vec![(end, CriticalKind::Final)];
    for p in crit {
        let u = (*p - c) * (1.0 / r);
        let rad = u.norm();
        let on_path = crate::classify::ang_dist(u.angle(), phi) <= s.eps();
        let kind = if on_path { CriticalKind::Input } else { CriticalKind::Transposed };
        if rad <= 1.0 + tol && !pts.iter().any(|&(q, _)| (q - rad).abs() <= tol) {
            pts.push((rad, kind));
        }
    }
    let base = pts.clone();
    for i in 0..base.len() {
        for j in i + 1..base.len() {
            let m = 0.5 * (base[i].0 + base[j].0);
            if !pts.iter().any(|&(q, _)| (q - m).abs() <= tol) {
                pts.push((m, CriticalKind::Intermediate));
            }
        }
    }
    pts.sort_by(|a, b| (a.0 - end).abs().total_cmp(&(b.0 - end).abs()));
    pts.into_iter()
        .map(|(rad, kind)| PathPoint { point: c + Point::polar(rad * r, phi), kind })
        .collect()
}

fn ccw_order(s: &Snapshot) -> Vec<usize> {
    s.ring().order().iter().rev().copied().collect()
}

fn pairs_for(ccw: &[usize], parity: usize) -> Vec<(usize, usize)> {
    let n = ccw.len();
    (0..n / 2)
        .map(|j| (ccw[(2 * j + parity) % n], ccw[(2 * j + 1 + parity) % n]))
        .collect()
}

/// Distance of `pts` from satisfying the edge constraints of a Pre-regular
/// set with the given companion pairing: zero exactly when the pair
/// directions step by `4π/n` and the pair lines are edges of one regular
/// polygon.
pub fn pre_regular_residual(pts: &[Point], pairs: &[(usize, usize)]) -> f64 {
    let n = pts.len();
    let step = 2.0 * TAU / n as f64;
    let (mut sx, mut sy) = (0.0, 0.0);
    for (k, &(x, y)) in pairs.iter().enumerate() {
        let v = pts[y] - pts[x];
        let d = v.angle() - step * k as f64;
        let l = v.norm();
        sx += l * d.cos();
        sy += l * d.sin();
    }
    let base = sy.atan2(sx);
    let mut sum = 0.0;
    let mut ata = [[0.0; 3]; 3];
    let mut atb = [0.0; 3];
    let mut rows = Vec::with_capacity(pairs.len());
    for (k, &(x, y)) in pairs.iter().enumerate() {
        let dir = Point::polar(1.0, base + step * k as f64);
        let v = pts[y] - pts[x];
        let off = dir.cross(v);
        sum += off * off;
        let nrm = Point::new(dir.y, -dir.x);
        let c = nrm.dot(pts[x].midpoint(pts[y]));
        let row = [nrm.x, nrm.y, 1.0];
        for a in 0..3 {
            for b in 0..3 {
                ata[a][b] += row[a] * row[b];
            }
            atb[a] += row[a] * c;
        }
        rows.push((row, c));
    }
    if let Some(sol) = solve3(ata, atb) {
        for (row, c) in rows {
            let r = row[0] * sol[0] + row[1] * sol[1] + row[2] * sol[2] - c;
            sum += r * r;
        }
    }
    sum.sqrt()
}

fn verified(s: &Snapshot, unit: &[Point]) -> Option<Vec<Point>> {
    let pts: Vec<Point> = unit.iter().map(|&u| s.denormalize(u)).collect();
    let snap = Snapshot::new(pts.clone(), s.tol()).ok()?;
    is_pre_regular(&snap)?;
    Some(pts)
}

/// Exact configurations when some companion pair stays put: its direction
/// fixes the polygon's rotation, and every pair with a fixed point then
/// contributes a known edge line.
fn with_fixed_pair(s: &Snapshot, free: &[bool], dir: MoveDir, out: &mut Vec<Vec<Point>>) {
    let n = s.n();
    let eps = s.eps();
    let unit: Vec<Point> = (0..n).map(|i| s.unit(i)).collect();
    let ccw = ccw_order(s);
    let step = 2.0 * TAU / n as f64;
    for parity in 0..2 {
        let pairs = pairs_for(&ccw, parity);
        let Some(j0) = (0..pairs.len()).find(|&j| !free[pairs[j].0] && !free[pairs[j].1]) else {
            continue;
        };
        let (x0, y0) = pairs[j0];
        let base = (unit[y0] - unit[x0]).angle() - step * j0 as f64;
        let mut lines = Vec::new();
        let mut consistent = true;
        for (k, &(x, y)) in pairs.iter().enumerate() {
            let d = Point::polar(1.0, base + step * k as f64);
            match (free[x], free[y]) {
                (false, false) => {
                    let v = unit[y] - unit[x];
                    if v.dot(d) <= 0.0 || d.cross(v).abs() > 4.0 * eps {
                        consistent = false;
                    }
                    lines.push((2 * k, Line::new(unit[x], d)));
                }
                (false, true) => lines.push((2 * k, Line::new(unit[x], d))),
                (true, false) => lines.push((2 * k, Line::new(unit[y], d))),
                (true, true) => {}
            }
        }
        if !consistent || lines.len() < 3 {
            continue;
        }
        let Some(poly) = polygon_from_indexed_lines(n, &lines, &s.tol()) else {
            continue;
        };
        let mut cfg = unit.clone();
        let mut ok = true;
        for (k, &(x, y)) in pairs.iter().enumerate() {
            let edge = Line::through(poly.vertex(2 * k), poly.vertex(2 * k + 1));
            for i in [x, y] {
                if !free[i] {
                    continue;
                }
                let ray = Point::polar(1.0, s.phi(i));
                match ray_line_param(Point::new(0.0, 0.0), ray, &edge) {
                    Some(t) if within_path(s.rho(i), t, dir, eps) => cfg[i] = ray * t,
                    _ => ok = false,
                }
            }
        }
        if ok {
            if let Some(pts) = verified(s, &cfg) {
                out.push(pts);
            }
        }
    }
}

fn within_path(rho: f64, t: f64, dir: MoveDir, eps: f64) -> bool {
    let end = dir.endpoint();
    let (lo, hi) = if rho <= end { (rho, end) } else { (end, rho) };
    t >= lo - eps && t <= hi + eps
}

/// Configurations on the synchronized path of the cautious protocol: robots
/// behind catch up first, then all move together.
fn lockstep(s: &Snapshot, free: &[bool], dir: MoveDir, out: &mut Vec<Vec<Point>>) {
    let n = s.n();
    let movers: Vec<usize> = (0..n).filter(|&i| free[i]).collect();
    if movers.is_empty() {
        return;
    }
    let end = dir.endpoint();
    let start = match dir {
        MoveDir::ToSec => movers.iter().map(|&i| s.rho(i)).fold(f64::INFINITY, f64::min),
        MoveDir::ToSec3 => movers.iter().map(|&i| s.rho(i)).fold(0.0, f64::max),
    };
    let unit: Vec<Point> = (0..n).map(|i| s.unit(i)).collect();
    let at = |r: f64| -> Vec<Point> {
        let mut cfg = unit.clone();
        for &i in &movers {
            let rad = match dir {
                MoveDir::ToSec => s.rho(i).max(r),
                MoveDir::ToSec3 => s.rho(i).min(r),
            };
            cfg[i] = Point::polar(rad, s.phi(i));
        }
        cfg
    };
    let ccw = ccw_order(s);
    for parity in 0..2 {
        let pairs = pairs_for(&ccw, parity);
        let f = |r: f64| pre_regular_residual(&at(r), &pairs);
        const SAMPLES: usize = 160;
        let rs: Vec<f64> = (0..=SAMPLES)
            .map(|k| start + (end - start) * k as f64 / SAMPLES as f64)
            .collect();
        let vals: Vec<f64> = rs.iter().map(|&r| f(r)).collect();
        for k in 0..=SAMPLES {
            let left = if k == 0 { f64::INFINITY } else { vals[k - 1] };
            let right = if k == SAMPLES { f64::INFINITY } else { vals[k + 1] };
            if !(vals[k] <= left && vals[k] <= right) || vals[k] > 0.05 {
                continue;
            }
            let a = rs[k.saturating_sub(1)];
            let b = rs[(k + 1).min(SAMPLES)];
            let r = golden_min(&f, a, b);
            if f(r) > 1e-6 {
                continue;
            }
            if let Some(pts) = verified(s, &at(r)) {
                out.push(pts);
            }
        }
    }
}

fn golden_min(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = if a <= b { (a, b) } else { (b, a) };
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..90 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
        if (b - a).abs() < 1e-15 {
            break;
        }
    }
    0.5 * (a + b)
}

/// Pre-regular configurations the movers could form on their radial paths.
pub fn critical_points(s: &Snapshot, movers: &[usize], dir: MoveDir) -> CriticalPointSet {
    let n = s.n();
    let mut out = CriticalPointSet::default();
    if n % 2 == 1 || n < 6 || movers.is_empty() {
        return out;
    }
    if s.ring().period_class().kind == PeriodKind::Equiangular {
        return out;
    }
    let end = dir.endpoint();
    let free: Vec<bool> = (0..n)
        .map(|i| movers.contains(&i) && (s.rho(i) - end).abs() > s.eps())
        .collect();
    let mut cfgs = Vec::new();
    with_fixed_pair(s, &free, dir, &mut cfgs);
    lockstep(s, &free, dir, &mut cfgs);
    let scale = s.sec().radius;
    for cfg in cfgs {
        let dup = out.configurations.iter().any(|c: &Vec<Point>| {
            c.iter().zip(&cfg).all(|(a, b)| a.dist(*b) <= 1e-9 * scale)
        });
        if dup {
            continue;
        }
        for &i in movers {
            out.points.push(cfg[i]);
            out.unit_points.push((cfg[i] - s.sec().center) * (1.0 / scale));
        }
        out.configurations.push(cfg);
    }
    out
}
