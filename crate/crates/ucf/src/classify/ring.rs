//! Angular structure of points around a common center.
//!
//! A [`Ring`] keeps only polar angles, which is all that angle sequences,
//! periods, analogy and concordance depend on.

use std::cmp::Ordering;
use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::geometry::norm_angle;

/// Clockwise or counterclockwise reading of an angle sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Cw,
    Ccw,
}

/// Gaps between cyclically consecutive points, read from `origin`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleSequence {
    pub values: Vec<f64>,
    pub origin: usize,
    pub direction: Direction,
}

/// Whether a symmetric-looking sequence is mirrored (`Bi`) or only rotational.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Chirality {
    Uni,
    Bi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PeriodKind {
    Equiangular,
    Biangular,
    Periodic(Chirality),
    Aperiodic(Chirality),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodClass {
    pub period: usize,
    pub kind: PeriodKind,
    pub double_biangular: bool,
}

impl PeriodClass {
    pub fn chirality(&self) -> Chirality {
        match self.kind {
            PeriodKind::Equiangular | PeriodKind::Biangular => Chirality::Bi,
            PeriodKind::Periodic(c) | PeriodKind::Aperiodic(c) => c,
        }
    }

    pub fn is_uni_aperiodic(&self) -> bool {
        self.kind == PeriodKind::Aperiodic(Chirality::Uni)
    }

    pub fn is_bi_aperiodic(&self) -> bool {
        self.kind == PeriodKind::Aperiodic(Chirality::Bi)
    }
}

/// Partitions of the point indices; classes are sorted and listed by their
/// smallest member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub analogy_classes: Vec<Vec<usize>>,
    pub strong_analogy_classes: Vec<Vec<usize>>,
    pub concordance_classes: Vec<Vec<usize>>,
}

/// Lexicographic comparison where entries within `eps` compare equal.
pub fn cmp_seq(a: &[f64], b: &[f64], eps: f64) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        if (x - y).abs() > eps {
            return x.total_cmp(y);
        }
    }
    a.len().cmp(&b.len())
}

pub fn seq_eq(a: &[f64], b: &[f64], eps: f64) -> bool {
    cmp_seq(a, b, eps) == Ordering::Equal
}

/// Clockwise distance from angle `from` to angle `to`, in `[0, 2π)`.
pub fn cw_dist(from: f64, to: f64) -> f64 {
    norm_angle(from - to)
}

/// Smallest angle between two directions, in `[0, π]`.
pub fn ang_dist(a: f64, b: f64) -> f64 {
    let d = norm_angle(a - b);
    d.min(TAU - d)
}

/// Groups indices into classes of an equivalence given by `same`, keeping
/// classes sorted.
pub(crate) fn group_by<F: Fn(usize, usize) -> bool>(items: &[usize], same: F) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &i in items {
        match classes.iter_mut().find(|c| same(c[0], i)) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    for c in &mut classes {
        c.sort_unstable();
    }
    classes.sort();
    classes
}

/// Points given by polar angle around a common center, read clockwise.
#[derive(Clone, Debug)]
pub struct Ring {
    phi: Vec<f64>,
    order: Vec<usize>,
    pos: Vec<usize>,
    gaps: Vec<f64>,
    eps: f64,
}

impl Ring {
    /// Builds the ring from polar angles (one per point index).
    pub fn new(phi: Vec<f64>, eps: f64) -> Ring {
        let n = phi.len();
        let phi: Vec<f64> = phi.into_iter().map(norm_angle).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| phi[b].total_cmp(&phi[a]).then(a.cmp(&b)));
        let mut pos = vec![0; n];
        for (k, &i) in order.iter().enumerate() {
            pos[i] = k;
        }
        let gaps = (0..n)
            .map(|k| {
                if n == 1 {
                    TAU
                } else {
                    let g = cw_dist(phi[order[k]], phi[order[(k + 1) % n]]);
                    if k + 1 == n && g == 0.0 {
                        0.0
                    } else {
                        g
                    }
                }
            })
            .collect();
        Ring { phi, order, pos, gaps, eps }
    }

    pub fn len(&self) -> usize {
        self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phi.is_empty()
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn phi(&self, i: usize) -> f64 {
        self.phi[i]
    }

    pub fn angles(&self) -> &[f64] {
        &self.phi
    }

    /// Point indices in clockwise order.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Clockwise position of point `i`.
    pub fn pos(&self, i: usize) -> usize {
        self.pos[i]
    }

    /// Clockwise gaps by position: `gaps()[k]` separates positions `k` and `k+1`.
    pub fn gaps(&self) -> &[f64] {
        &self.gaps
    }

    /// Next point clockwise.
    pub fn next(&self, i: usize) -> usize {
        self.order[(self.pos[i] + 1) % self.len()]
    }

    /// Next point counterclockwise.
    pub fn prev(&self, i: usize) -> usize {
        let n = self.len();
        self.order[(self.pos[i] + n - 1) % n]
    }

    pub fn consecutive(&self, i: usize, j: usize) -> bool {
        i != j && (self.next(i) == j || self.prev(i) == j)
    }

    /// Whether two points share a ray (the smallest gap is within tolerance).
    pub fn has_coincident_rays(&self) -> bool {
        self.len() > 1 && self.gaps.iter().any(|&g| g <= self.eps)
    }

    pub fn alpha(&self, i: usize) -> Vec<f64> {
        let n = self.len();
        let k = self.pos[i];
        (0..n).map(|j| self.gaps[(k + j) % n]).collect()
    }

    pub fn beta(&self, i: usize) -> Vec<f64> {
        let n = self.len();
        let k = self.pos[i];
        (0..n).map(|j| self.gaps[(k + 2 * n - 1 - j) % n]).collect()
    }

    pub fn mu(&self, i: usize) -> Vec<f64> {
        let a = self.alpha(i);
        let b = self.beta(i);
        if cmp_seq(&b, &a, self.eps) == Ordering::Less {
            b
        } else {
            a
        }
    }

    pub fn sequence(&self, i: usize, direction: Direction) -> AngleSequence {
        let values = match direction {
            Direction::Cw => self.alpha(i),
            Direction::Ccw => self.beta(i),
        };
        AngleSequence { values, origin: i, direction }
    }

    /// The lexicographically smallest sequence over all origins and directions.
    pub fn min_sequence(&self) -> AngleSequence {
        let mut best: Option<AngleSequence> = None;
        for i in 0..self.len() {
            for d in [Direction::Cw, Direction::Ccw] {
                let s = self.sequence(i, d);
                if best
                    .as_ref()
                    .is_none_or(|b| cmp_seq(&s.values, &b.values, self.eps) == Ordering::Less)
                {
                    best = Some(s);
                }
            }
        }
        best.expect("nonempty ring")
    }

    fn min_over(&self, f: impl Fn(usize) -> Vec<f64>) -> Vec<f64> {
        (0..self.len())
            .map(f)
            .min_by(|a, b| cmp_seq(a, b, self.eps))
            .unwrap_or_default()
    }

    /// Smallest shift that maps the gap sequence to itself.
    pub fn period(&self) -> usize {
        let n = self.len();
        (1..=n)
            .find(|&s| n.is_multiple_of(s) && (0..n).all(|k| (self.gaps[k] - self.gaps[(k + s) % n]).abs() <= self.eps))
            .unwrap_or(n)
    }

    pub fn chirality(&self) -> Chirality {
        let a = self.min_over(|i| self.alpha(i));
        let b = self.min_over(|i| self.beta(i));
        if seq_eq(&a, &b, self.eps) {
            Chirality::Bi
        } else {
            Chirality::Uni
        }
    }

    pub fn analogy_classes(&self) -> Vec<Vec<usize>> {
        let mus: Vec<Vec<f64>> = (0..self.len()).map(|i| self.mu(i)).collect();
        let items: Vec<usize> = (0..self.len()).collect();
        group_by(&items, |a, b| seq_eq(&mus[a], &mus[b], self.eps))
    }

    pub fn strong_analogy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let p = self.period();
        let items: Vec<usize> = (0..n).collect();
        group_by(&items, |a, b| (self.pos[a] + n - self.pos[b]).is_multiple_of(p))
    }

    /// Offset of each point from the regular n-gon through position 0:
    /// points are concordant exactly when their offsets agree.
    pub fn concordance_offsets(&self) -> Vec<f64> {
        let n = self.len();
        let mut off = vec![0.0; n];
        let mut acc = 0.0;
        for k in 0..n {
            off[self.order[k]] = acc - TAU * k as f64 / n as f64;
            acc += self.gaps[k];
        }
        off
    }

    pub fn concordance_classes(&self) -> Vec<Vec<usize>> {
        let off = self.concordance_offsets();
        let items: Vec<usize> = (0..self.len()).collect();
        group_by(&items, |a, b| (off[a] - off[b]).abs() <= self.eps * self.len() as f64)
    }

    pub fn period_class(&self) -> PeriodClass {
        let n = self.len();
        let period = self.period();
        let chir = self.chirality();
        let kind = match period {
            1 => PeriodKind::Equiangular,
            2 if n > 2 => PeriodKind::Biangular,
            k if k == n => PeriodKind::Aperiodic(chir),
            _ => PeriodKind::Periodic(chir),
        };
        let double_biangular = matches!(kind, PeriodKind::Periodic(Chirality::Bi))
            && period == 4
            && self.analogy_classes().len() == 2;
        PeriodClass { period, kind, double_biangular }
    }

    pub fn partitions(&self) -> Partition {
        Partition {
            analogy_classes: self.analogy_classes(),
            strong_analogy_classes: self.strong_analogy_classes(),
            concordance_classes: self.concordance_classes(),
        }
    }

    fn has_angle(&self, a: f64) -> bool {
        self.phi.iter().any(|&p| ang_dist(p, a) <= self.eps)
    }

    /// Axes of mirror symmetry, as direction angles in `[0, π)`.
    pub fn axes(&self) -> Vec<f64> {
        let n = self.len();
        let mut cands = Vec::with_capacity(2 * n);
        for k in 0..n {
            let p = self.phi[self.order[k]];
            cands.push(p);
            cands.push(p - 0.5 * self.gaps[k]);
        }
        let mut axes: Vec<f64> = Vec::new();
        for a in cands {
            let a = norm_angle(a) % PI;
            if axes.iter().any(|&b| ang_dist(2.0 * a, 2.0 * b) <= 2.0 * self.eps) {
                continue;
            }
            if self.phi.iter().all(|&p| self.has_angle(2.0 * a - p)) {
                axes.push(a);
            }
        }
        axes.sort_by(f64::total_cmp);
        axes
    }

    /// Whether the angle lies on the given axis (either of its two rays).
    pub fn on_axis(&self, angle: f64, axis: f64) -> bool {
        ang_dist(angle, axis) <= self.eps || ang_dist(angle, axis + PI) <= self.eps
    }

    /// Whether `q` lies strictly inside the open arc between the two
    /// neighbours of `i` that contains `i`.
    pub fn reaches(&self, i: usize, q: f64) -> bool {
        if self.len() < 3 {
            return false;
        }
        let from = self.phi[self.prev(i)];
        let to = self.phi[self.next(i)];
        let arc = cw_dist(from, to);
        let d = cw_dist(from, q);
        d > self.eps && d < arc - self.eps
    }

    pub fn antipodal(&self, i: usize, j: usize) -> bool {
        ang_dist(self.phi[i], self.phi[j]) >= PI - self.eps
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring_from_gaps(gaps_deg: &[f64]) -> Ring {
        let mut acc = 0.0;
        let mut phi = Vec::new();
        for g in gaps_deg {
            phi.push(-acc);
            acc += g.to_radians();
        }
        Ring::new(phi, 2e-9)
    }

    #[test]
    fn regular_hexagon() {
        let r = ring_from_gaps(&[60.0; 6]);
        let s = r.min_sequence();
        assert!(s.values.iter().all(|&v| (v - PI / 3.0).abs() < 1e-12));
        let pc = r.period_class();
        assert_eq!(pc.period, 1);
        assert_eq!(pc.kind, PeriodKind::Equiangular);
        assert_eq!(r.strong_analogy_classes().len(), 1);
        assert_eq!(r.axes().len(), 6);
    }

    #[test]
    fn biangular_octagon() {
        let r = ring_from_gaps(&[40.0, 50.0, 40.0, 50.0, 40.0, 50.0, 40.0, 50.0]);
        let mu = r.min_sequence();
        assert!((mu.values[0] - 40f64.to_radians()).abs() < 1e-12);
        assert!((mu.values[1] - 50f64.to_radians()).abs() < 1e-12);
        let pc = r.period_class();
        assert_eq!(pc.period, 2);
        assert_eq!(pc.kind, PeriodKind::Biangular);
        assert_eq!(r.analogy_classes().len(), 1);
        assert_eq!(r.strong_analogy_classes().len(), 2);
    }

    #[test]
    fn bi_periodic_nine() {
        let r = ring_from_gaps(&[30.0, 30.0, 60.0, 30.0, 30.0, 60.0, 30.0, 30.0, 60.0]);
        let pc = r.period_class();
        assert_eq!(pc.period, 3);
        assert_eq!(pc.kind, PeriodKind::Periodic(Chirality::Bi));
    }

    #[test]
    fn uni_aperiodic_singletons() {
        let r = ring_from_gaps(&[20.0, 35.0, 50.0, 65.0, 80.0, 50.0, 60.0]);
        assert_eq!(r.period_class().kind, PeriodKind::Aperiodic(Chirality::Uni));
        assert_eq!(r.analogy_classes().len(), 7);
        assert!(r.axes().is_empty());
    }

    #[test]
    fn midpoint_uses_both_neighbours() {
        // β starts with the counterclockwise gap.
        let r = ring_from_gaps(&[30.0, 30.0, 100.0, 200.0]);
        let p = 1;
        assert!((r.alpha(p)[0] - r.beta(p)[0]).abs() < 1e-12);
    }

    #[test]
    fn concordance_of_regular_subset() {
        // Positions 0, 2, 4 of a hexagon plus three shifted points.
        let r = ring_from_gaps(&[50.0, 70.0, 50.0, 70.0, 60.0, 60.0]);
        let c = r.concordance_classes();
        let big = c.iter().map(|c| c.len()).max().unwrap();
        assert_eq!(big, 4);
    }
}
