//! Occupied sectors, the principal relocation and well-occupied sets.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::ring::{ang_dist, cw_dist, Ring};
use super::Snapshot;
use crate::error::{Result, UcfError};
use crate::geometry::{norm_angle, Point};

/// A main sector of the points on SEC that contains internal points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OccupiedSector {
    /// External point where the sector starts, reading clockwise.
    pub from: usize,
    /// External point where it ends.
    pub to: usize,
    /// Clockwise width.
    pub width: f64,
    /// Internal points inside, clockwise.
    pub members: Vec<usize>,
}

/// Occupied sectors of a non-Co-radial snapshot, clockwise.
pub fn occupied_sectors(s: &Snapshot) -> Vec<OccupiedSector> {
    let ext = s.external();
    let ring = s.ring();
    let mut ext_cw: Vec<usize> = ext.clone();
    ext_cw.sort_by_key(|&i| ring.pos(i));
    let m = ext_cw.len();
    let mut out: Vec<OccupiedSector> = Vec::new();
    if m == 0 {
        return out;
    }
    for k in 0..m {
        let from = ext_cw[k];
        let to = ext_cw[(k + 1) % m];
        let width = if m == 1 { TAU } else { cw_dist(s.phi(from), s.phi(to)) };
        let mut members: Vec<usize> = Vec::new();
        let mut p = ring.next(from);
        while p != to && p != from {
            members.push(p);
            p = ring.next(p);
        }
        if !members.is_empty() {
            out.push(OccupiedSector { from, to, width, members });
        }
    }
    out
}

/// Angles of the principal relocation: the members of each occupied sector
/// are spread evenly, so each relocated point is a midpoint.
pub(crate) fn principal_angles(s: &Snapshot) -> Vec<(usize, f64)> {
    let mut out = Vec::new();
    for sec in occupied_sectors(s) {
        let k = sec.members.len() as f64;
        for (j, &i) in sec.members.iter().enumerate() {
            let a = s.phi(sec.from) - sec.width * (j as f64 + 1.0) / (k + 1.0);
            out.push((i, norm_angle(a)));
        }
    }
    out.sort_by_key(|&(i, _)| i);
    out
}

/// Principal relocation of the internal points, on SEC in the snapshot frame.
pub fn principal_relocation(s: &Snapshot) -> Result<Vec<(usize, Point)>> {
    if s.internal().is_empty() {
        return Err(UcfError::PreconditionViolation("no internal points".into()));
    }
    if super::is_coradial_config(s) {
        return Err(UcfError::PreconditionViolation("Co-radial set".into()));
    }
    Ok(principal_angles(s)
        .into_iter()
        .map(|(i, a)| (i, s.denormalize(Point::polar(1.0, a))))
        .collect())
}

/// A map of the circle onto itself: `φ ↦ sign·φ + shift`.
#[derive(Clone, Copy, Debug)]
struct Iso {
    reflect: bool,
    shift: f64,
}

impl Iso {
    fn apply(&self, a: f64) -> f64 {
        norm_angle(if self.reflect { self.shift - a } else { a + self.shift })
    }
}

/// Symmetry subgroups of the external points, as explicit element lists.
fn subgroups(ext: &Ring) -> Vec<Vec<Iso>> {
    let m = ext.len();
    let k = m / ext.period();
    let axes = ext.axes();
    let mut out = Vec::new();
    for d in (1..=k).filter(|d| k.is_multiple_of(*d)) {
        let rot: Vec<Iso> = (0..d)
            .map(|j| Iso { reflect: false, shift: TAU * j as f64 / d as f64 })
            .collect();
        out.push(rot.clone());
        for &a in &axes {
            let mut g = rot.clone();
            for j in 0..d {
                g.push(Iso { reflect: true, shift: 2.0 * a + TAU * j as f64 / d as f64 });
            }
            out.push(g);
        }
    }
    out
}

/// A relocation of the internal points that forms one analogy class together
/// with the points on SEC, when one exists.
///
/// Such a relocation is an orbit of a symmetry group of the external points,
/// so the search runs over the (finitely many) subgroups and a generic
/// starting point in the first occupied sector; each candidate is verified by
/// recomputing analogy classes.
pub fn well_occupying_relocation(s: &Snapshot) -> Option<Vec<(usize, f64)>> {
    let internal = s.internal();
    if internal.is_empty() || super::is_coradial_config(s) {
        return None;
    }
    let sectors = occupied_sectors(s);
    let c0 = sectors[0].members.len();
    if sectors.iter().any(|sec| sec.members.len() != c0) || c0 > 2 {
        return None;
    }
    let ext = s.external();
    let eps = s.eps();
    let ext_ring = Ring::new(ext.iter().map(|&i| s.phi(i)).collect(), eps);
    let first = &sectors[0];
    let inside = |a: f64, sec: &super::OccupiedSector| {
        let d = cw_dist(s.phi(sec.from), a);
        d > eps && d < sec.width - eps
    };
    for group in subgroups(&ext_ring) {
        for f in [0.381_966_011_250_105, 0.276_393_202_250_021, 0.447_213_595_499_958] {
            let r = norm_angle(s.phi(first.from) - f * first.width);
            let mut orbit: Vec<f64> = Vec::new();
            for g in &group {
                let a = g.apply(r);
                if !orbit.iter().any(|&b| ang_dist(a, b) <= eps) {
                    orbit.push(a);
                }
            }
            if orbit.len() != internal.len() {
                continue;
            }
            let mut assignment: Vec<(usize, f64)> = Vec::new();
            let mut ok = true;
            for sec in &sectors {
                let mut here: Vec<f64> = orbit.iter().copied().filter(|&a| inside(a, sec)).collect();
                if here.len() != sec.members.len() {
                    ok = false;
                    break;
                }
                here.sort_by(|&a, &b| cw_dist(s.phi(sec.from), a).total_cmp(&cw_dist(s.phi(sec.from), b)));
                assignment.extend(sec.members.iter().copied().zip(here));
            }
            if !ok || assignment.len() != internal.len() {
                continue;
            }
            let mut phi: Vec<f64> = (0..s.n()).map(|i| s.phi(i)).collect();
            for &(i, a) in &assignment {
                phi[i] = a;
            }
            let full = Ring::new(phi, eps);
            let mut target = internal.clone();
            target.sort_unstable();
            if full.analogy_classes().contains(&target) {
                assignment.sort_by_key(|&(i, _)| i);
                return Some(assignment);
            }
        }
    }
    None
}

/// Whether some relocation of the internal points is an analogy class of the
/// points on SEC together with it.
pub fn is_well_occupied(s: &Snapshot) -> bool {
    well_occupying_relocation(s).is_some()
}
