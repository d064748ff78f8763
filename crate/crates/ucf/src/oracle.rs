//! Definition-level reference computations and randomized cross-checks.
//!
//! Nothing here calls into `geometry`'s enclosing circle, `classify`'s rings
//! or the Pre-regular detector: each check recomputes its answer from the
//! definitions, the slow way, and compares.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classify::{is_pre_regular, Snapshot};
use crate::geometry::{smallest_enclosing_circle, Circle, Point, RegularPolygon, TolerancePolicy};

/// Smallest circle through two or three of the points that holds them all.
pub fn brute_force_sec(points: &[Point]) -> Circle {
    let n = points.len();
    if n == 1 {
        return Circle { center: points[0], radius: 0.0 };
    }
    let holds = |c: &Circle| points.iter().all(|p| p.dist(c.center) <= c.radius * (1.0 + 1e-12) + 1e-15);
    let mut best: Option<Circle> = None;
    let mut consider = |c: Circle| {
        if holds(&c) && best.is_none_or(|b| c.radius < b.radius) {
            best = Some(c);
        }
    };
    for i in 0..n {
        for j in i + 1..n {
            let center = points[i].midpoint(points[j]);
            consider(Circle { center, radius: points[i].dist(points[j]) / 2.0 });
            for k in j + 1..n {
                if let Some(c) = circumcircle(points[i], points[j], points[k]) {
                    consider(c);
                }
            }
        }
    }
    best.expect("some pair circle holds all points")
}

fn circumcircle(a: Point, b: Point, c: Point) -> Option<Circle> {
    let d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    if d.abs() < 1e-300 {
        return None;
    }
    let a2 = a.dot(a);
    let b2 = b.dot(b);
    let c2 = c.dot(c);
    let ux = (a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d;
    let uy = (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d;
    let center = Point::new(ux, uy);
    Some(Circle { center, radius: center.dist(a) })
}

/// Period, analogy, strong analogy and concordance classes computed from
/// the definitions. Classes are sorted lists of point indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BruteClasses {
    pub period: usize,
    pub analogy: Vec<Vec<usize>>,
    pub strong: Vec<Vec<usize>>,
    pub concordance: Vec<Vec<usize>>,
}

fn seq_le(a: &[f64], b: &[f64], eps: f64) -> bool {
    for (x, y) in a.iter().zip(b) {
        if (x - y).abs() > eps {
            return x < y;
        }
    }
    true
}

fn seq_same(a: &[f64], b: &[f64], eps: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= eps)
}

fn classes_of(n: usize, same: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut label: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in 0..i {
            if same(i, j) {
                let (from, to) = (label[i], label[j]);
                for l in label.iter_mut() {
                    if *l == from {
                        *l = to;
                    }
                }
            }
        }
    }
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        match out.iter_mut().find(|c| label[c[0]] == label[i]) {
            Some(c) => c.push(i),
            None => out.push(vec![i]),
        }
    }
    out.sort();
    out
}

/// Classes of a set with no center point and no shared rays.
pub fn brute_force_classes(points: &[Point], eps: f64) -> BruteClasses {
    let n = points.len();
    let c = brute_force_sec(points).center;
    let theta: Vec<f64> = points.iter().map(|&p| (p.y - c.y).atan2(p.x - c.x)).collect();
    // Clockwise angle from a to b in [0, 2π).
    let cw = |a: usize, b: usize| (theta[a] - theta[b]).rem_euclid(TAU);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| theta[b].total_cmp(&theta[a]));
    let at = |i: usize| order.iter().position(|&x| x == i).expect("index in order");
    let seq = |i: usize, clockwise: bool| -> Vec<f64> {
        let k = at(i);
        (0..n)
            .map(|j| {
                if clockwise {
                    cw(order[(k + j) % n], order[(k + j + 1) % n])
                } else {
                    cw(order[(k + 2 * n - j - 1) % n], order[(k + 2 * n - j) % n])
                }
            })
            .collect()
    };
    let cws: Vec<Vec<f64>> = (0..n).map(|i| seq(i, true)).collect();
    let mus: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let b = seq(i, false);
            if seq_le(&cws[i], &b, eps) {
                cws[i].clone()
            } else {
                b
            }
        })
        .collect();
    let mut distinct: Vec<&Vec<f64>> = Vec::new();
    for s in &cws {
        if !distinct.iter().any(|d| seq_same(d, s, eps)) {
            distinct.push(s);
        }
    }
    let strong = classes_of(n, |a, b| seq_same(&cws[a], &cws[b], eps));
    let analogy = classes_of(n, |a, b| seq_same(&mus[a], &mus[b], eps));
    // a and b are concordant when the clockwise sector from a to b spans
    // 2πk/n and holds exactly k+1 points, ends included.
    let direct = |a: usize, b: usize| {
        let d = cw(a, b);
        let k = (0..n).filter(|&i| i != a && cw(a, i) <= d + eps).count();
        (d - TAU * k as f64 / n as f64).abs() <= eps * n as f64
    };
    let concordance = classes_of(n, |a, b| direct(a, b) || direct(b, a));
    BruteClasses { period: distinct.len(), analogy, strong, concordance }
}

/// A regular polygon with two of the points on every other edge, found by
/// fitting the pair lines as tangents of one incircle.
pub fn brute_force_pre_regular(points: &[Point], slack: f64) -> Option<RegularPolygon> {
    let n = points.len();
    if n < 6 || n % 2 == 1 {
        return None;
    }
    let g = points.iter().fold(Point::new(0.0, 0.0), |a, &p| a + p) * (1.0 / n as f64);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| (points[a] - g).angle().total_cmp(&(points[b] - g).angle()));
    let scale = points.iter().map(|p| p.dist(g)).fold(0.0, f64::max);
    (0..2).find_map(|par| fit_alternate_edges(points, &order, par, slack * scale))
}

fn fit_alternate_edges(points: &[Point], order: &[usize], par: usize, slack: f64) -> Option<RegularPolygon> {
    let n = points.len();
    let m = n / 2;
    let pair = |j: usize| (points[order[(2 * j + par) % n]], points[order[(2 * j + 1 + par) % n]]);
    let step = 2.0 * TAU / n as f64;
    let dir0 = {
        let (x, y) = pair(0);
        (y - x).angle()
    };
    for j in 0..m {
        let (x, y) = pair(j);
        let want = dir0 + step * j as f64;
        let d = (y - x).angle() - want;
        if d.sin().abs() > 1e-6 || d.cos() < 0.0 {
            return None;
        }
    }
    // Normal equations for the incircle center c and apothem h:
    // outward_j · c + h = outward_j · x_j.
    let mut ata = [[0.0f64; 3]; 3];
    let mut atb = [0.0f64; 3];
    let rows: Vec<([f64; 3], f64)> = (0..m)
        .map(|j| {
            let (x, _) = pair(j);
            let a = dir0 + step * j as f64 - PI / 2.0;
            let nrm = Point::new(a.cos(), a.sin());
            ([nrm.x, nrm.y, 1.0], nrm.dot(x))
        })
        .collect();
    for (r, b) in &rows {
        for i in 0..3 {
            for k in 0..3 {
                ata[i][k] += r[i] * r[k];
            }
            atb[i] += r[i] * b;
        }
    }
    let sol = gauss3(ata, atb)?;
    let center = Point::new(sol[0], sol[1]);
    let h = sol[2];
    if h <= 0.0 {
        return None;
    }
    for (r, b) in &rows {
        if (r[0] * sol[0] + r[1] * sol[1] + r[2] * sol[2] - b).abs() > slack {
            return None;
        }
    }
    let circumradius = h / (PI / n as f64).cos();
    // Edge 2j runs between vertices 2j and 2j+1; its direction is that of pair j.
    let phase = dir0 - PI / 2.0 - PI / n as f64;
    let poly = RegularPolygon { n, center, circumradius, phase };
    for j in 0..m {
        let (x, y) = pair(j);
        let a = poly.vertex(2 * j);
        let b = poly.vertex(2 * j + 1);
        let e = b - a;
        for p in [x, y] {
            let t = (p - a).dot(e) / e.dot(e);
            if t < -slack || t > 1.0 + slack || e.cross(p - a).abs() / e.norm() > slack {
                return None;
            }
        }
    }
    Some(poly)
}

fn gauss3(mut a: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let piv = (col..3).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-14 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..3 {
            if r != col {
                let f = a[r][col] / a[col][col];
                for c in 0..3 {
                    a[r][c] -= f * a[col][c];
                }
                b[r] -= f * b[col];
            }
        }
    }
    Some([b[0] / a[0][0], b[1] / a[1][1], b[2] / a[2][2]])
}

/// A random supporting polygon and a Pre-regular set on it: two points on
/// each even edge, strictly between its endpoints.
pub fn random_pre_regular(n: usize, rng: &mut impl Rng) -> (RegularPolygon, Vec<Point>) {
    let poly = RegularPolygon {
        n,
        center: Point::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0)),
        circumradius: rng.random_range(0.5..5.0),
        phase: rng.random_range(0.0..TAU),
    };
    let mut pts = Vec::with_capacity(n);
    for j in 0..n / 2 {
        let a = poly.vertex(2 * j);
        let b = poly.vertex(2 * j + 1);
        let s: f64 = rng.random_range(0.02..0.49);
        let t: f64 = rng.random_range(0.51..0.98);
        pts.push(a.lerp(b, s));
        pts.push(a.lerp(b, t));
    }
    (poly, pts)
}

/// A random set whose rays have built-in rotational or mirror structure,
/// so that nontrivial classes occur. All rays are distinct and SEC is the
/// unit circle around the origin.
pub fn random_structured_set(n: usize, rng: &mut impl Rng) -> Vec<Point> {
    let divisors: Vec<usize> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let p = divisors[rng.random_range(0..divisors.len())];
    let mut base: Vec<f64> = (0..p).map(|_| rng.random_range(0.3..1.0)).collect();
    if rng.random_bool(0.4) {
        for k in 0..p / 2 {
            base[p - 1 - k] = base[k];
        }
    }
    if rng.random_bool(0.3) {
        let k = rng.random_range(0..p);
        for v in base.iter_mut().take(k) {
            *v = 1.0;
        }
    }
    let sum: f64 = base.iter().sum();
    let block = TAU * p as f64 / n as f64;
    let gaps: Vec<f64> = (0..n).map(|k| base[k % p] / sum * block).collect();
    let mut a = rng.random_range(0.0..TAU);
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    for g in &gaps {
        pts.push(Point::polar(1.0, a));
        a -= g;
    }
    // Pull some points inward while the rest still pin SEC.
    for i in 0..n {
        if rng.random_bool(0.3) {
            let keep: Vec<f64> = (0..n).filter(|&j| j != i && pts[j].norm() > 0.999).map(|j| pts[j].angle()).collect();
            if pins_unit_circle(&keep) {
                pts[i] = pts[i] * rng.random_range(0.4..0.95);
            }
        }
    }
    pts
}

fn pins_unit_circle(angles: &[f64]) -> bool {
    if angles.len() < 2 {
        return false;
    }
    let mut a = angles.to_vec();
    a.sort_by(f64::total_cmp);
    let widest = (0..a.len())
        .map(|k| if k + 1 < a.len() { a[k + 1] - a[k] } else { a[0] + TAU - a[k] })
        .fold(0.0, f64::max);
    widest < PI - 1e-6
}

/// Randomized cross-check suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OracleSuite {
    /// Enclosing circle against the all-pairs-and-triples search.
    Sec,
    /// Period and classes against the definitions.
    Classify,
    /// Pre-regular detection against the incircle fit, positives and nudged negatives.
    PreRegular,
    /// The enclosing-circle check run on a deliberately inflated radius; must fail.
    InjectedBug,
}

impl OracleSuite {
    pub const ALL: [OracleSuite; 4] = [OracleSuite::Sec, OracleSuite::Classify, OracleSuite::PreRegular, OracleSuite::InjectedBug];

    pub fn name(self) -> &'static str {
        match self {
            OracleSuite::Sec => "sec",
            OracleSuite::Classify => "classify",
            OracleSuite::PreRegular => "pre-regular",
            OracleSuite::InjectedBug => "injected-bug",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|x| x.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub points: Vec<Point>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub suite: OracleSuite,
    pub checked: usize,
    pub mismatches: Vec<Counterexample>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn sec_mismatch(points: &[Point], inflate: f64) -> Option<String> {
    let tol = TolerancePolicy::default();
    let mut got = match smallest_enclosing_circle(points, &tol) {
        Ok(c) => c,
        Err(e) => return Some(e.to_string()),
    };
    got.radius *= inflate;
    let want = brute_force_sec(points);
    let rel = (got.radius - want.radius).abs() / want.radius.max(1e-300);
    (rel > 1e-9).then(|| format!("radius {} vs brute force {}", got.radius, want.radius))
}

fn classify_mismatch(points: &[Point]) -> Option<String> {
    let s = Snapshot::new(points.to_vec(), TolerancePolicy::default()).ok()?;
    let ring = s.ring();
    let want = brute_force_classes(points, 1e-9);
    let got = BruteClasses {
        period: ring.period(),
        analogy: ring.analogy_classes(),
        strong: ring.strong_analogy_classes(),
        concordance: ring.concordance_classes(),
    };
    (got != want).then(|| format!("got {got:?}, definitions give {want:?}"))
}

/// Runs `count` randomized instances of a suite.
pub fn run_suite(suite: OracleSuite, seed: u64, count: usize) -> OracleReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for _ in 0..count {
        match suite {
            OracleSuite::Sec | OracleSuite::InjectedBug => {
                let n = rng.random_range(2..=12);
                let pts: Vec<Point> = (0..n)
                    .map(|_| Point::new(rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0)))
                    .collect();
                let inflate = if suite == OracleSuite::InjectedBug { 1.0 + 1e-6 } else { 1.0 };
                checked += 1;
                if let Some(detail) = sec_mismatch(&pts, inflate) {
                    mismatches.push(Counterexample { points: pts, detail });
                }
            }
            OracleSuite::Classify => {
                let n = rng.random_range(3..=9);
                let pts = random_structured_set(n, &mut rng);
                checked += 1;
                if let Some(detail) = classify_mismatch(&pts) {
                    mismatches.push(Counterexample { points: pts, detail });
                }
            }
            OracleSuite::PreRegular => {
                let n = 2 * rng.random_range(3..=6);
                let (poly, pts) = random_pre_regular(n, &mut rng);
                let snap = Snapshot::new(pts.clone(), TolerancePolicy::default()).expect("distinct points");
                let got = is_pre_regular(&snap).map(|c| c.shape);
                let want = brute_force_pre_regular(&pts, 1e-7);
                checked += 1;
                let agree = match (&got, &want) {
                    (Some(a), Some(b)) => a.vertex_deviation(b) <= 1e-6 * poly.circumradius,
                    _ => false,
                };
                if !agree {
                    mismatches.push(Counterexample { points: pts.clone(), detail: format!("got {got:?}, fit {want:?}") });
                }
                // One point nudged off its edge by 1% of the edge length.
                let mut bent = pts;
                let k = rng.random_range(0..n);
                let edge = poly.vertex(0).dist(poly.vertex(1));
                bent[k] = bent[k] + poly.normal(k / 2 * 2) * (0.01 * edge);
                let snap = Snapshot::new(bent.clone(), TolerancePolicy::default()).expect("distinct points");
                checked += 1;
                let got = is_pre_regular(&snap).is_some();
                let want = brute_force_pre_regular(&bent, 1e-7).is_some();
                if got || want {
                    mismatches.push(Counterexample {
                        points: bent,
                        detail: format!("nudged set accepted (detector {got}, fit {want})"),
                    });
                }
            }
        }
    }
    OracleReport { suite, checked, mismatches }
}
