use std::f64::consts::TAU;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ucf::algorithm::{cautious_destination, decide_for, MoveDir};
use ucf::classify::{classify, is_pre_regular, Snapshot};
use ucf::geometry::{smallest_enclosing_circle, Point, TolerancePolicy};
use ucf::oracle::{brute_force_classes, brute_force_sec, random_pre_regular, random_structured_set};
use ucf::simulator::{run, AdversaryKind, ExecutionTrace, SimConfig};

fn tol() -> TolerancePolicy {
    TolerancePolicy::default()
}

fn points(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec((-10.0..10.0f64, -10.0..10.0f64), n)
        .prop_map(|v| v.into_iter().map(|(x, y)| Point::new(x, y)).collect::<Vec<_>>())
        .prop_filter("distinct points", |v| {
            v.iter().enumerate().all(|(i, p)| v[..i].iter().all(|q| q.dist(*p) > 1e-3))
        })
}

fn swarm() -> impl Strategy<Value = Vec<Point>> {
    prop_oneof![points(3..=3), points(5..=12)]
}

#[derive(Clone, Copy, Debug)]
struct Similarity {
    rot: f64,
    flip: bool,
    scale: f64,
    shift: Point,
}

impl Similarity {
    fn apply(&self, p: Point) -> Point {
        let p = if self.flip { Point::new(p.x, -p.y) } else { p };
        Point::polar(self.scale * p.norm(), p.angle() + self.rot) + self.shift
    }
}

fn similarity() -> impl Strategy<Value = Similarity> {
    (0.0..TAU, any::<bool>(), -1.0..1.0f64, -5.0..5.0f64, -5.0..5.0f64).prop_map(|(rot, flip, e, x, y)| Similarity {
        rot,
        flip,
        scale: 10f64.powf(e),
        shift: Point::new(x, y),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn sec_holds_every_point_and_is_minimal(pts in points(2..=12)) {
        let c = smallest_enclosing_circle(&pts, &tol()).unwrap();
        for p in &pts {
            prop_assert!(p.dist(c.center) <= c.radius * (1.0 + 1e-9));
        }
        let b = brute_force_sec(&pts);
        prop_assert!((c.radius - b.radius).abs() <= 1e-9 * b.radius);
    }

    #[test]
    fn class_is_similarity_invariant(pts in swarm(), g in similarity()) {
        let a = classify(&Snapshot::new(pts.clone(), tol()).unwrap()).unwrap();
        let moved: Vec<Point> = pts.iter().map(|&p| g.apply(p)).collect();
        let b = classify(&Snapshot::new(moved, tol()).unwrap()).unwrap();
        prop_assert_eq!(a.name(), b.name());
    }

    #[test]
    fn destinations_commute_with_similarities(pts in swarm(), g in similarity(), pick in any::<prop::sample::Index>()) {
        let me = pick.index(pts.len());
        let d = decide_for(&pts, me, tol()).unwrap().destination;
        let moved: Vec<Point> = pts.iter().map(|&p| g.apply(p)).collect();
        let e = decide_for(&moved, me, tol()).unwrap().destination;
        let r = Snapshot::new(moved, tol()).unwrap().sec().radius;
        prop_assert!(e.dist(g.apply(d)) <= 1e-8 * r);
    }

    #[test]
    fn regular_polygons_stay_put(n in prop_oneof![Just(3usize), 5usize..=12], g in similarity(), pick in any::<prop::sample::Index>()) {
        let pts: Vec<Point> = (0..n).map(|k| g.apply(Point::polar(1.0, TAU * k as f64 / n as f64))).collect();
        let me = pick.index(n);
        let d = decide_for(&pts, me, tol()).unwrap();
        prop_assert!(d.destination.dist(pts[me]) <= 1e-9 * g.scale);
    }

    #[test]
    fn pre_regular_sets_certify_their_polygon(seed in any::<u64>(), half in 3usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (poly, pts) = random_pre_regular(2 * half, &mut rng);
        let cert = is_pre_regular(&Snapshot::new(pts, tol()).unwrap());
        prop_assert!(cert.is_some());
        prop_assert!(cert.unwrap().shape.vertex_deviation(&poly) <= 1e-6 * poly.circumradius);
    }

    #[test]
    fn ring_classes_match_definitions(seed in any::<u64>(), n in 3usize..=9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts = random_structured_set(n, &mut rng);
        let ring = Snapshot::new(pts.clone(), tol()).unwrap().ring();
        let want = brute_force_classes(&pts, 1e-9);
        prop_assert_eq!(ring.period(), want.period);
        prop_assert_eq!(ring.analogy_classes(), want.analogy);
        prop_assert_eq!(ring.strong_analogy_classes(), want.strong);
        prop_assert_eq!(ring.concordance_classes(), want.concordance);
    }

    #[test]
    fn strong_classes_split_analogy_classes_evenly(seed in any::<u64>(), n in 3usize..=9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = Snapshot::new(random_structured_set(n, &mut rng), tol()).unwrap().ring();
        let strong = ring.strong_analogy_classes();
        prop_assert!(strong.iter().all(|c| c.len() == n / ring.period()));
        let analogy = ring.analogy_classes();
        for c in &strong {
            prop_assert!(analogy.iter().any(|a| c.iter().all(|i| a.contains(i))));
        }
    }

    #[test]
    fn cautious_steps_stay_on_the_ray(pts in points(5..=10), pick in any::<prop::sample::Index>(), outward in any::<bool>()) {
        let s = Snapshot::new(pts.clone(), tol()).unwrap();
        let me = pick.index(pts.len());
        prop_assume!(!s.is_center(me));
        let dir = if outward { MoveDir::ToSec } else { MoveDir::ToSec3 };
        let d = cautious_destination(&s, me, &[me], &[], dir);
        let c = s.sec().center;
        let here = pts[me] - c;
        let there = d - c;
        prop_assert!(here.cross(there).abs() <= 1e-9 * s.sec().radius * s.sec().radius);
        prop_assert!(there.dot(here) >= 0.0);
        let end = dir.endpoint() * s.sec().radius;
        prop_assert!((there.norm() - end).abs() <= 1e-9 * s.sec().radius);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn traces_round_trip_and_replay_identically(seed in any::<u64>(), n in prop_oneof![Just(5usize), Just(6), Just(7)]) {
        let cfg = SimConfig::random(n, AdversaryKind::Async, seed, 3000);
        let text = run(&cfg).trace.to_jsonl();
        let back = ExecutionTrace::read_jsonl(text.as_bytes()).unwrap();
        prop_assert_eq!(back.to_jsonl(), text.clone());
        prop_assert_eq!(run(&cfg).trace.to_jsonl(), text);
    }
}
