//! Target sets, class status (movable, satisfied, improvable), locked sets,
//! walkers and finish sets.
//!
//! Everything here works on angles about the SED center: a configuration is
//! a [`Ring`] plus a flag per point telling whether it lies on SEC.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::classify::{
    cmp_seq, cw_dist, is_coradial_config, is_half_disk, is_valid_ready, is_valid_waiting, ang_dist, Chirality,
    PeriodKind, Ring, Snapshot,
};
use crate::error::{Result, UcfError};
use crate::geometry::{norm_angle, Point};

/// A Regular set of targets on SEC and the point-to-target bijection.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TargetAssignment {
    /// Targets in the snapshot frame, clockwise, starting with the target of
    /// the first point in clockwise order.
    pub targets: Vec<Point>,
    /// Target index of each point.
    pub corr: Vec<usize>,
    /// Target angle of each point about the SED center.
    pub angles: Vec<f64>,
}

/// Locked-set analysis of a Waiting set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LockInfo {
    pub locked: bool,
    /// Analogy classes, as point-index lists; the fields below index into it.
    pub classes: Vec<Vec<usize>>,
    pub non_movable: Vec<usize>,
    pub unlocking: Vec<usize>,
}

/// Half-lines from the SED center, one per internal point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FinishSet {
    /// Direction angle of each line.
    pub lines: Vec<f64>,
    /// `(internal point, line index)` pairs.
    pub corr: Vec<(usize, usize)>,
}

impl FinishSet {
    pub fn line_of(&self, point: usize) -> Option<f64> {
        self.corr.iter().find(|&&(p, _)| p == point).map(|&(_, l)| self.lines[l])
    }
}

/// Valid: at least five points, not Co-radial, not Half-disk, Ready or Waiting.
pub fn is_valid(s: &Snapshot) -> bool {
    s.n() >= 5 && !is_coradial_config(s) && is_half_disk(s).is_none() && (is_valid_ready(s) || is_valid_waiting(s))
}

fn require_valid(s: &Snapshot) -> Result<()> {
    if is_valid(s) {
        Ok(())
    } else {
        Err(UcfError::PreconditionViolation("configuration is not Valid".into()))
    }
}

fn require_waiting(s: &Snapshot) -> Result<()> {
    if s.n() >= 5 && !is_coradial_config(s) && is_half_disk(s).is_none() && is_valid_waiting(s) {
        Ok(())
    } else {
        Err(UcfError::PreconditionViolation("configuration is not Valid and Waiting".into()))
    }
}

fn require_ready(s: &Snapshot) -> Result<()> {
    if s.n() >= 5 && !is_coradial_config(s) && is_half_disk(s).is_none() && is_valid_ready(s) {
        Ok(())
    } else {
        Err(UcfError::PreconditionViolation("configuration is not Valid and Ready".into()))
    }
}

/// Smallest angle sequence induced by any point of `class`.
fn class_key(ring: &Ring, class: &[usize]) -> Vec<f64> {
    class
        .iter()
        .map(|&i| ring.mu(i))
        .min_by(|a, b| cmp_seq(a, b, ring.eps()))
        .unwrap_or_default()
}

/// Index of the class with the lexicographically smallest sequence.
fn lexmin_class(ring: &Ring, classes: &[&Vec<usize>]) -> Option<usize> {
    let keys: Vec<Vec<f64>> = classes.iter().map(|c| class_key(ring, c)).collect();
    (0..classes.len()).min_by(|&a, &b| cmp_seq(&keys[a], &keys[b], ring.eps()))
}

fn lexmin_point(ring: &Ring, pts: &[usize]) -> Option<usize> {
    pts.iter()
        .copied()
        .min_by(|&a, &b| cmp_seq(&ring.mu(a), &ring.mu(b), ring.eps()))
}

/// Whether the points of `class` can leave SEC without changing it.
fn movable_on(ring: &Ring, ext: &[bool], class: &[usize]) -> bool {
    let rest: Vec<f64> = (0..ring.len())
        .filter(|i| ext[*i] && !class.contains(i))
        .map(|i| ring.phi(i))
        .collect();
    if rest.len() < 2 || class.len() == ring.len() {
        return false;
    }
    let r = Ring::new(rest, ring.eps());
    r.gaps().iter().all(|&g| g <= PI + ring.eps())
}

/// Neighbours of `i` outside `skip`, reading counterclockwise then clockwise.
fn outer_neighbours(ring: &Ring, i: usize, skip: impl Fn(usize) -> bool) -> (usize, usize) {
    let mut a = ring.prev(i);
    while skip(a) && a != i {
        a = ring.prev(a);
    }
    let mut b = ring.next(i);
    while skip(b) && b != i {
        b = ring.next(b);
    }
    (a, b)
}

/// Whether angle `q` lies strictly inside the clockwise arc from `from` to `to`.
fn strictly_inside(from: f64, to: f64, q: f64, eps: f64) -> bool {
    let arc = if ang_dist(from, to) <= eps { TAU } else { cw_dist(from, to) };
    let d = cw_dist(from, q);
    d > eps && d < arc - eps
}

/// Angle the point at `i` must take to be concordant with `anchor`.
fn concordant_angle(ring: &Ring, anchor: usize, anchor_angle: f64, i: usize) -> f64 {
    let n = ring.len();
    let k = (ring.pos(i) + n - ring.pos(anchor)) % n;
    norm_angle(anchor_angle - TAU * k as f64 / n as f64)
}

fn all_angles(ring: &Ring, anchor: usize, anchor_angle: f64) -> Vec<f64> {
    (0..ring.len()).map(|i| concordant_angle(ring, anchor, anchor_angle, i)).collect()
}

/// Target angles of a configuration whose relocated view is `ring`. When the
/// set is Ready, `ext` marks the points on SEC and the others are the
/// principal relocation; otherwise `ext` is `None` and `ring` holds footprints.
pub(crate) fn target_angles(ring: &Ring, ext: Option<&[bool]>) -> Vec<f64> {
    let eps = ring.eps();
    let n = ring.len();
    let axes = ring.axes();
    if axes.is_empty() {
        let classes = ring.concordance_classes();
        let weight = |c: &Vec<usize>| match ext {
            Some(e) => c.iter().filter(|&&i| e[i]).count(),
            None => c.len(),
        };
        let best = classes.iter().map(weight).max().unwrap_or(0);
        let top: Vec<&Vec<usize>> = classes.iter().filter(|c| weight(c) == best).collect();
        let feasible: Vec<&Vec<usize>> = match ext {
            None => {
                let all = vec![true; n];
                let analogy = ring.analogy_classes();
                top.iter()
                    .copied()
                    .filter(|c| {
                        analogy.iter().any(|a| {
                            a.iter().all(|i| !c.contains(i))
                                && movable_on(ring, &all, a)
                                && a.iter().all(|&i| {
                                    let (u, v) = outer_neighbours(ring, i, |j| a.contains(&j));
                                    let q = concordant_angle(ring, c[0], ring.phi(c[0]), i);
                                    strictly_inside(ring.phi(u), ring.phi(v), q, eps)
                                })
                        })
                    })
                    .collect()
            }
            Some(e) => top
                .iter()
                .copied()
                .filter(|c| {
                    (0..n).filter(|&i| !e[i]).all(|i| {
                        let (u, v) = outer_neighbours(ring, i, |j| !e[j]);
                        let q = concordant_angle(ring, c[0], ring.phi(c[0]), i);
                        strictly_inside(ring.phi(u), ring.phi(v), q, eps)
                    })
                })
                .collect(),
        };
        let pool = if feasible.is_empty() { top } else { feasible };
        let t = pool[lexmin_class(ring, &pool).expect("nonempty pool")];
        let anchor = match ext {
            Some(e) => t.iter().copied().find(|&i| e[i]).unwrap_or(t[0]),
            None => t[0],
        };
        return all_angles(ring, anchor, ring.phi(anchor));
    }
    let on_axis: Vec<usize> = (0..n).filter(|&i| axes.iter().any(|&a| ring.on_axis(ring.phi(i), a))).collect();
    if let Some(p) = lexmin_point(ring, &on_axis) {
        return all_angles(ring, p, ring.phi(p));
    }
    let axis = axes[0];
    let dist = |i: usize| (ring.phi(i) - axis).sin().abs();
    let p = (0..n).min_by(|&a, &b| dist(a).total_cmp(&dist(b))).expect("nonempty ring");
    let half = PI / n as f64;
    let t = [axis + half, axis - half, axis + PI + half, axis + PI - half]
        .into_iter()
        .min_by(|&a, &b| ang_dist(a, ring.phi(p)).total_cmp(&ang_dist(b, ring.phi(p))))
        .expect("four candidates");
    all_angles(ring, p, norm_angle(t))
}

/// Relocated angular view of a Valid set: E ∪ principal relocation when
/// Ready, footprints otherwise; plus the on-SEC flags when Ready.
fn relocated_view(s: &Snapshot, ready: bool) -> (Ring, Option<Vec<bool>>) {
    let mut phi: Vec<f64> = (0..s.n()).map(|i| s.phi(i)).collect();
    if ready {
        for (i, a) in crate::classify::principal_angles(s) {
            phi[i] = a;
        }
        let ext = (0..s.n()).map(|i| s.on_sec(i)).collect();
        (Ring::new(phi, s.eps()), Some(ext))
    } else {
        (Ring::new(phi, s.eps()), None)
    }
}

fn assignment_from_angles(s: &Snapshot, ring: &Ring, angles: Vec<f64>) -> TargetAssignment {
    let n = s.n();
    let corr: Vec<usize> = (0..n).map(|i| ring.pos(i)).collect();
    let mut targets = vec![Point::new(0.0, 0.0); n];
    for i in 0..n {
        targets[corr[i]] = s.denormalize(Point::polar(1.0, angles[i]));
    }
    TargetAssignment { targets, corr, angles }
}

/// Target set and correspondence of a Valid set.
pub fn target_assignment(s: &Snapshot) -> Result<TargetAssignment> {
    require_valid(s)?;
    let ready = is_valid_ready(s);
    let (ring, ext) = relocated_view(s, ready);
    let angles = target_angles(&ring, ext.as_deref());
    Ok(assignment_from_angles(s, &ring, angles))
}

fn check_class(ring: &Ring, class: &[usize]) -> Result<()> {
    let mut c = class.to_vec();
    c.sort_unstable();
    if ring.analogy_classes().contains(&c) {
        Ok(())
    } else {
        Err(UcfError::InvalidArgument("not an analogy class".into()))
    }
}

/// Whether removing `class` leaves SED unchanged.
pub fn movable(s: &Snapshot, class: &[usize]) -> Result<bool> {
    require_waiting(s)?;
    let ring = s.ring();
    check_class(&ring, class)?;
    let ext: Vec<bool> = (0..s.n()).map(|i| s.on_sec(i)).collect();
    Ok(movable_on(&ring, &ext, class))
}

/// Whether every point of `class` has its footprint on its target.
pub fn satisfied(s: &Snapshot, class: &[usize]) -> Result<bool> {
    require_waiting(s)?;
    let ring = s.ring();
    check_class(&ring, class)?;
    let t = target_angles(&ring, None);
    Ok(class.iter().all(|&i| ang_dist(ring.phi(i), t[i]) <= ring.eps()))
}

/// Movable, not satisfied, and every point can reach its target.
pub fn improvable(s: &Snapshot, class: &[usize]) -> Result<bool> {
    require_waiting(s)?;
    let ring = s.ring();
    check_class(&ring, class)?;
    let ext: Vec<bool> = (0..s.n()).map(|i| s.on_sec(i)).collect();
    let t = target_angles(&ring, None);
    Ok(Status::new(&ring, &ext, &t).improvable(class))
}

/// Per-class status helpers over a footprint ring.
struct Status<'a> {
    ring: &'a Ring,
    ext: &'a [bool],
    targets: &'a [f64],
}

impl<'a> Status<'a> {
    fn new(ring: &'a Ring, ext: &'a [bool], targets: &'a [f64]) -> Self {
        Status { ring, ext, targets }
    }

    fn point_satisfied(&self, i: usize) -> bool {
        ang_dist(self.ring.phi(i), self.targets[i]) <= self.ring.eps()
    }

    fn satisfied(&self, class: &[usize]) -> bool {
        class.iter().all(|&i| self.point_satisfied(i))
    }

    fn movable(&self, class: &[usize]) -> bool {
        movable_on(self.ring, self.ext, class)
    }

    fn improvable(&self, class: &[usize]) -> bool {
        self.movable(class)
            && !self.satisfied(class)
            && class.iter().all(|&i| self.ring.reaches(i, self.targets[i]))
    }

    fn lock(&self) -> LockInfo {
        let classes = self.ring.analogy_classes();
        let locked = classes.len() > 1 && !classes.iter().any(|c| self.improvable(c));
        let non_movable: Vec<usize> = (0..classes.len()).filter(|&k| !self.movable(&classes[k])).collect();
        let mut unlocking = Vec::new();
        if locked {
            for k in 0..classes.len() {
                if !self.movable(&classes[k]) {
                    continue;
                }
                let touches = classes[k].iter().any(|&i| {
                    non_movable.iter().any(|&m| {
                        classes[m]
                            .iter()
                            .any(|&j| self.ring.next(i) == j || self.ring.prev(i) == j)
                    })
                });
                if touches {
                    unlocking.push(k);
                }
            }
        }
        LockInfo { locked, classes, non_movable, unlocking }
    }
}

/// Locked analysis of a Waiting set.
pub fn lock_info(s: &Snapshot) -> Result<LockInfo> {
    require_waiting(s)?;
    let ring = s.ring();
    if ring.analogy_classes().len() < 2 {
        return Err(UcfError::PreconditionViolation("a single analogy class cannot be locked".into()));
    }
    let ext: Vec<bool> = (0..s.n()).map(|i| s.on_sec(i)).collect();
    let t = target_angles(&ring, None);
    Ok(Status::new(&ring, &ext, &t).lock())
}

fn antipodal_pairs(ring: &Ring) -> Vec<(usize, usize)> {
    let n = ring.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if ring.antipodal(i, j) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Five-point walker overrides; `None` when the generic rule applies.
fn walkers_five(ring: &Ring, st: &Status) -> Option<Vec<usize>> {
    let pc = ring.period_class();
    let pairs = antipodal_pairs(ring);
    if pc.is_uni_aperiodic() {
        match pairs.len() {
            0 => {
                let cands: Vec<usize> = (0..5)
                    .filter(|&p| {
                        st.movable(&[p])
                            && (0..5).any(|q| q != p && ring.reaches(p, norm_angle(ring.phi(q) + PI)))
                    })
                    .collect();
                return lexmin_point(ring, &cands).map(|p| vec![p]);
            }
            1 => {
                let (a, b) = pairs[0];
                return (0..5)
                    .find(|&p| p != a && p != b && ring.consecutive(p, a) && ring.consecutive(p, b))
                    .map(|p| vec![p]);
            }
            2 => {
                return (0..5)
                    .find(|&p| pairs.iter().all(|&(a, b)| a != p && b != p))
                    .map(|p| vec![p]);
            }
            _ => return None,
        }
    }
    if pc.is_bi_aperiodic() {
        let satisfied = (0..5).filter(|&i| st.point_satisfied(i)).count();
        if satisfied != 1 {
            return None;
        }
        let classes = ring.analogy_classes();
        let antipodal_class = classes
            .iter()
            .find(|c| c.len() == 2 && ring.antipodal(c[0], c[1]))?;
        let other = classes.iter().find(|c| c.len() == 2 && *c != antipodal_class)?;
        return Some(other.clone());
    }
    None
}

/// Walkers of a set whose points all lie on SEC, given as a ring.
pub(crate) fn walkers_on_sec(ring: &Ring) -> Vec<usize> {
    let n = ring.len();
    let classes = ring.analogy_classes();
    if classes.len() < 2 {
        return Vec::new();
    }
    let ext = vec![true; n];
    let t = target_angles(ring, None);
    let st = Status::new(ring, &ext, &t);
    if n == 5 {
        if let Some(w) = walkers_five(ring, &st) {
            let mut w = w;
            w.sort_unstable();
            return w;
        }
    }
    let improvable: Vec<&Vec<usize>> = classes.iter().filter(|c| st.improvable(c)).collect();
    if let Some(k) = lexmin_class(ring, &improvable) {
        return improvable[k].clone();
    }
    let lock = st.lock();
    let unlocking: Vec<&Vec<usize>> = lock
        .unlocking
        .iter()
        .map(|&k| &lock.classes[k])
        .filter(|c| n == 5 || !st.satisfied(c))
        .collect();
    if let Some(k) = lexmin_class(ring, &unlocking) {
        return unlocking[k].clone();
    }
    // Not reachable for Valid sets; keep the swarm moving with any movable
    // non-satisfied class.
    let fallback: Vec<&Vec<usize>> = classes.iter().filter(|c| st.movable(c) && !st.satisfied(c)).collect();
    lexmin_class(ring, &fallback).map(|k| fallback[k].clone()).unwrap_or_default()
}

/// Walkers of a Valid and Waiting set: the points whose footprints are
/// walkers of the footprint set.
pub fn walkers(s: &Snapshot) -> Result<Vec<usize>> {
    require_waiting(s)?;
    Ok(walkers_on_sec(&s.ring()))
}

/// Matches lines to internal points sector by sector, in clockwise order.
fn match_lines(s: &Snapshot, lines: &[f64]) -> Option<Vec<(usize, usize)>> {
    let mut corr = Vec::new();
    let mut used = vec![false; lines.len()];
    for sec in crate::classify::occupied_sectors(s) {
        let start = s.phi(sec.from);
        let end = s.phi(sec.to);
        let mut here: Vec<usize> = (0..lines.len())
            .filter(|&l| !used[l] && strictly_inside(start, end, lines[l], s.eps()))
            .collect();
        if here.len() != sec.members.len() {
            return None;
        }
        here.sort_by(|&a, &b| cw_dist(start, lines[a]).total_cmp(&cw_dist(start, lines[b])));
        for (&p, &l) in sec.members.iter().zip(&here) {
            used[l] = true;
            corr.push((p, l));
        }
    }
    corr.sort_unstable();
    Some(corr)
}

fn finish_from(s: &Snapshot, lines: Vec<f64>) -> Option<FinishSet> {
    let corr = match_lines(s, &lines)?;
    Some(FinishSet { lines, corr })
}

/// Lines through two antipodal points perpendicular to the axis of `ring`.
fn perpendicular_pair(ring: &Ring) -> Option<Vec<f64>> {
    let axis = *ring.axes().first()?;
    Some(vec![norm_angle(axis + 0.5 * PI), norm_angle(axis - 0.5 * PI)])
}

fn finish_five(s: &Snapshot, prime: &Ring, principal: &[(usize, f64)]) -> Option<FinishSet> {
    let pc = prime.period_class();
    if pc.is_uni_aperiodic() && principal.len() == 1 {
        let p = principal[0].0;
        let cands: Vec<usize> = (0..5)
            .filter(|&q| q != p && prime.reaches(p, norm_angle(prime.phi(q) + PI)))
            .collect();
        let q = lexmin_point(prime, &cands)?;
        return finish_from(s, vec![norm_angle(prime.phi(q) + PI)]);
    }
    if pc.is_bi_aperiodic() && principal.len() == 2 {
        let (a, b) = (principal[0].0, principal[1].0);
        if prime.consecutive(a, b) {
            return None;
        }
        let classes = prime.analogy_classes();
        let pair = classes
            .iter()
            .find(|c| c.len() == 2 && prime.consecutive(c[0], c[1]))?;
        let t = target_angles(prime, None);
        let ext = vec![true; 5];
        if Status::new(prime, &ext, &t).point_satisfied(pair[0]) || Status::new(prime, &ext, &t).point_satisfied(pair[1]) {
            return None;
        }
        return finish_from(s, perpendicular_pair(prime)?);
    }
    None
}

/// Finish set of a Valid and Ready set.
pub fn finish_set(s: &Snapshot) -> Result<FinishSet> {
    require_ready(s)?;
    Ok(finish_lines(s))
}

/// Finish set without re-checking the Ready precondition.
pub(crate) fn finish_lines(s: &Snapshot) -> FinishSet {
    let n = s.n();
    let eps = s.eps();
    let principal = crate::classify::principal_angles(s);
    let (prime, ext) = relocated_view(s, true);
    let ext = ext.expect("Ready view");
    if n == 5 {
        if let Some(f) = finish_five(s, &prime, &principal) {
            return f;
        }
    }
    let internal: Vec<usize> = principal.iter().map(|&(i, _)| i).collect();
    let classes = prime.analogy_classes();
    let holder = classes.iter().find(|c| c.contains(&internal[0]));
    let proper_subset = holder.is_some_and(|c| c.len() > internal.len() && internal.iter().all(|i| c.contains(i)));
    let tentative: Vec<(usize, f64)> = if proper_subset {
        principal.clone()
    } else {
        let t = target_angles(&prime, Some(&ext));
        let relocation = internal.iter().all(|&i| {
            let (u, v) = outer_neighbours(&prime, i, |j| !ext[j]);
            strictly_inside(prime.phi(u), prime.phi(v), t[i], eps)
        });
        if relocation {
            internal.iter().map(|&i| (i, t[i])).collect()
        } else {
            principal.clone()
        }
    };
    let mut phi: Vec<f64> = (0..n).map(|i| s.phi(i)).collect();
    for &(i, a) in &tentative {
        phi[i] = a;
    }
    let second = Ring::new(phi, eps);
    let all = vec![true; n];
    let t2 = target_angles(&second, None);
    let st = Status::new(&second, &all, &t2);
    let lock = st.lock();
    let mut r_set: Vec<usize> = internal.clone();
    r_set.sort_unstable();
    // A tentative set already sitting on its targets is left alone.
    let r_is_unlocking = lock.locked
        && lock.unlocking.iter().any(|&k| lock.classes[k] == r_set)
        && (n == 5 || !st.satisfied(&r_set));
    let lines: Vec<f64> = if r_is_unlocking {
        let pc = second.period_class();
        match pc.kind {
            PeriodKind::Aperiodic(Chirality::Uni) => {
                let r = r_set[0];
                let nm: Vec<usize> = lock.non_movable.iter().flat_map(|&k| lock.classes[k].clone()).collect();
                let r1 = [second.prev(r), second.next(r)].into_iter().find(|j| nm.contains(j));
                match r1 {
                    Some(r1) => {
                        let r2 = if second.prev(r1) == r { second.next(r1) } else { second.prev(r1) };
                        vec![norm_angle(second.phi(r2) + PI)]
                    }
                    None => tentative.iter().map(|&(_, a)| a).collect(),
                }
            }
            PeriodKind::Aperiodic(Chirality::Bi) => {
                perpendicular_pair(&second).unwrap_or_else(|| tentative.iter().map(|&(_, a)| a).collect())
            }
            _ => tentative.iter().map(|&(_, a)| a).collect(),
        }
    } else {
        tentative.iter().map(|&(_, a)| a).collect()
    };
    finish_from(s, lines).unwrap_or_else(|| {
        let lines: Vec<f64> = tentative.iter().map(|&(_, a)| a).collect();
        let corr = tentative.iter().enumerate().map(|(l, &(i, _))| (i, l)).collect();
        FinishSet { lines, corr }
    })
}
