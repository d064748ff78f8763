use super::*;
use crate::algorithm::Decision;

fn polygon(n: usize, r: f64) -> Vec<Point> {
    (0..n).map(|k| Point::polar(r, 0.4 + TAU * k as f64 / n as f64)).collect()
}

fn config(initial: Vec<Point>, kind: AdversaryKind) -> SimConfig {
    SimConfig {
        n: initial.len(),
        initial,
        adversary: AdversaryPolicy::new(kind, 7, 0.01),
        max_cycles: 2000,
        tol: TolerancePolicy::default(),
        regular_tolerance: 1e-6,
    }
}

#[test]
fn regular_start_ends_after_one_round() {
    let run = run(&config(polygon(6, 2.0), AdversaryKind::FullySync));
    assert_eq!(run.outcome, Outcome::ReachedRegular);
    assert_eq!(run.cycles, 6);
    assert!(run.trace.events.iter().all(|e| matches!(e.kind, EventKind::LookCompute { stay: true, .. })));
}

#[test]
fn four_robots_are_unsupported() {
    let run = run(&config(polygon(4, 1.0), AdversaryKind::FullySync));
    assert_eq!(run.outcome, Outcome::UnsupportedSize);
}

#[test]
fn frames_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let f = LocalFrame::random(Point::new(0.3, -2.0), &mut rng);
        let p = Point::new(1.5, 0.25);
        assert!(f.to_global(f.to_local(p)).dist(p) < 1e-12);
        assert_eq!(f.to_local(f.origin), Point::new(0.0, 0.0));
    }
}

#[test]
fn observers_see_interpolated_positions() {
    // Robot 0 walks halfway towards (1, 0); robot 1 then looks.
    let initial = vec![Point::new(-1.0, 0.0), Point::new(0.0, 1.0), Point::new(0.0, -1.0)];
    let protocol = |pts: &[Point], me: usize| -> crate::error::Result<Decision> {
        let destination = if me == 0 { pts[me] + Point::new(2.0, 0.0) } else { pts[me] };
        Ok(Decision { destination, class: "Test".into(), procedure: "Test".into(), critical: vec![] })
    };
    let mut cfg = config(
        initial,
        AdversaryKind::Scripted(vec![
            ScriptStep::Activate(0),
            ScriptStep::Advance { robot: 0, progress: 0.5 },
            ScriptStep::Activate(1),
        ]),
    );
    cfg.adversary.frame_noise = false;
    cfg.max_cycles = 3;
    let run = run_with(&cfg, &protocol);
    let states = run.trace.states();
    let s = &states[3];
    assert_eq!(s.positions[0], Point::new(0.0, 0.0));
    assert!(!s.idle[0]);
    let EventKind::LookCompute { snapshot_hash: seen_hash, .. } = &run.trace.events[2].kind else {
        panic!("third event is a look");
    };
    let seen = [Point::new(0.0, -1.0), Point::new(0.0, 0.0), Point::new(0.0, -2.0)];
    assert_eq!(*seen_hash, snapshot_hash(&seen));
}

#[test]
fn short_interruptions_are_rejected() {
    let initial = vec![Point::new(-1.0, 0.0), Point::new(0.0, 1.0), Point::new(0.0, -1.0)];
    let protocol = |pts: &[Point], me: usize| -> crate::error::Result<Decision> {
        let destination = if me == 0 { pts[me] + Point::new(1.0, 0.0) } else { pts[me] };
        Ok(Decision { destination, class: "Test".into(), procedure: "Test".into(), critical: vec![] })
    };
    let mut cfg = config(
        initial,
        AdversaryKind::Scripted(vec![
            ScriptStep::Activate(0),
            ScriptStep::Advance { robot: 0, progress: 0.001 },
            ScriptStep::End(0),
        ]),
    );
    cfg.adversary.delta = 0.1;
    cfg.max_cycles = 1;
    let run = run_with(&cfg, &protocol);
    assert!(!run.trace.events.iter().any(|e| matches!(e.kind, EventKind::PhaseEnd { reached: false })));
}

#[test]
fn crossing_robots_collide() {
    let initial = vec![Point::new(-1.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 3.0)];
    let protocol = |pts: &[Point], me: usize| -> crate::error::Result<Decision> {
        let destination = if me == 2 { pts[me] } else { pts[me] + (pts[1 - me] - pts[me]) * 0.5 * 2.0 };
        Ok(Decision { destination, class: "Test".into(), procedure: "Test".into(), critical: vec![] })
    };
    let mut cfg = config(
        initial,
        AdversaryKind::Scripted(vec![
            ScriptStep::Activate(0),
            ScriptStep::Activate(1),
            ScriptStep::Advance { robot: 0, progress: 0.5 },
            ScriptStep::Advance { robot: 1, progress: 0.5 },
        ]),
    );
    cfg.adversary.frame_noise = false;
    let run = run_with(&cfg, &protocol);
    assert_eq!(run.outcome, Outcome::CollisionDetected { pair: (0, 1) });
}

#[test]
fn trace_round_trips_through_jsonl() {
    let cfg = SimConfig::random(5, AdversaryKind::Async, 11, 300);
    let run = run(&cfg);
    let text = run.trace.to_jsonl();
    let back = ExecutionTrace::read_jsonl(text.as_bytes()).unwrap();
    assert_eq!(back, run.trace);
    assert_eq!(back.to_jsonl(), text);
}

#[test]
fn corrupt_trace_line_is_reported() {
    let cfg = SimConfig::random(5, AdversaryKind::FullySync, 1, 20);
    let mut text = run(&cfg).trace.to_jsonl();
    text.insert_str(text.find('\n').unwrap() + 1, "{oops\n");
    let err = ExecutionTrace::read_jsonl(text.as_bytes()).unwrap_err();
    assert!(err.to_string().contains("line 2"), "{err}");
}

#[test]
fn replay_reproduces_the_schedule() {
    let cfg = SimConfig::random(6, AdversaryKind::Async, 5, 400);
    let first = run(&cfg);
    let mut again = cfg.clone();
    again.adversary.kind = AdversaryKind::Replay(script_from_trace(&first.trace));
    again.adversary.frame_noise = false;
    let second = run(&again);
    let a = first.trace.states();
    let b = second.trace.states();
    let k = a.len().min(b.len());
    for (x, y) in a[..k].iter().zip(&b[..k]) {
        for (p, q) in x.positions.iter().zip(&y.positions) {
            assert!(p.dist(*q) < 1e-9);
        }
    }
}

#[test]
fn regular_deviation_is_zero_on_polygons() {
    assert!(regular_deviation(&polygon(7, 3.0)) < 1e-12);
    let mut p = polygon(7, 3.0);
    p[2] = p[2] * 0.9;
    assert!(regular_deviation(&p) > 1e-3);
}

#[test]
fn freeze_is_checked_when_the_configuration_forms() {
    let initial = vec![Point::new(-1.0, 0.0), Point::new(0.0, 1.0), Point::new(0.0, -1.0)];
    let goal = vec![Point::new(0.0, 0.0), Point::new(0.0, 1.0), Point::new(0.0, -1.0)];
    let protocol = |pts: &[Point], me: usize| -> crate::error::Result<Decision> {
        let destination = if me == 0 { pts[me] + Point::new(2.0, 0.0) } else { pts[me] };
        Ok(Decision { destination, class: "Test".into(), procedure: "Test".into(), critical: vec![] })
    };
    let script = |steps: Vec<ScriptStep>| {
        let mut cfg = config(initial.clone(), AdversaryKind::Scripted(steps));
        cfg.adversary.frame_noise = false;
        cfg.max_cycles = 3;
        run_with(&cfg, &protocol).trace
    };
    // Passing through the goal mid-move is not a freeze.
    let passing = script(vec![ScriptStep::Activate(0), ScriptStep::Advance { robot: 0, progress: 0.5 }]);
    assert!(!check_freeze_at(&passing, &goal, 1e-9));
    // Arriving there is, even if a robot then looks again and moves on.
    let arriving = script(vec![
        ScriptStep::Activate(0),
        ScriptStep::Advance { robot: 0, progress: 0.5 },
        ScriptStep::Advance { robot: 0, progress: 1.0 },
        ScriptStep::Activate(0),
    ]);
    let at_goal = vec![Point::new(1.0, 0.0), Point::new(0.0, 1.0), Point::new(0.0, -1.0)];
    assert!(check_freeze_at(&arriving, &at_goal, 1e-9));
    assert!(!check_freeze_at(&arriving, &goal, 1e-9));
}
