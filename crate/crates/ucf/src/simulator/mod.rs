//! Discrete-event execution of a swarm under the asynchronous non-rigid
//! Look-Compute-Move model, with a seeded adversary choosing activations,
//! move progress and interruptions.

mod batch;
mod protocol;
mod trace;

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Result, UcfError};
use crate::geometry::{smallest_enclosing_circle, Circle, Point, TolerancePolicy};

pub use batch::{run_batch, run_cell, AdversaryName, BatchCell, BatchRow, BatchSpec, RunSpec};
pub use protocol::{CautiousHarness, Protocol, Ucf};
pub use trace::{check_freeze_at, Event, EventKind, ExecutionTrace, TraceState, TRACE_FORMAT};

/// One scheduler decision of a scripted adversary.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum ScriptStep {
    /// Look and Compute for an idle robot.
    Activate(usize),
    /// Move a robot to the given fraction of its current segment.
    Advance { robot: usize, progress: f64 },
    /// Move a robot as close to `point` as its current segment allows.
    AdvanceTo { robot: usize, point: Point },
    /// End a robot's Move phase (subject to the δ rule).
    End(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum AdversaryKind {
    /// Every robot activates each round and completes its move.
    FullySync,
    /// A random nonempty subset activates each round; moves may be cut short.
    SemiSync,
    /// One robot acts per event: Look, partial advance or phase end.
    Async,
    /// Steps taken verbatim; fully synchronous rounds once they run out.
    Scripted(Vec<ScriptStep>),
    /// Steps recovered from a recorded trace.
    Replay(Vec<ScriptStep>),
}

/// How often a moving robot is stopped early or allowed to finish at once.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interruption {
    pub stop_prob: f64,
    pub full_prob: f64,
}

impl Default for Interruption {
    fn default() -> Self {
        Interruption { stop_prob: 0.3, full_prob: 0.3 }
    }
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdversaryPolicy {
    pub kind: AdversaryKind,
    #[serde(default)]
    pub seed: u64,
    /// Minimum travel per interrupted Move phase, global units.
    pub delta: f64,
    #[serde(default)]
    pub interruption: Interruption,
    /// Fresh random rotation, reflection and scale of every local frame.
    #[serde(default = "yes")]
    pub frame_noise: bool,
    /// Longest run of events (Async) or rounds (SemiSync) a robot may be
    /// skipped; defaults to `4n`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub starvation_bound: Option<u64>,
}

impl AdversaryPolicy {
    pub fn new(kind: AdversaryKind, seed: u64, delta: f64) -> Self {
        AdversaryPolicy {
            kind,
            seed,
            delta,
            interruption: Interruption::default(),
            frame_noise: true,
            starvation_bound: None,
        }
    }
}

fn default_regular_tolerance() -> f64 {
    1e-6
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub n: usize,
    pub initial: Vec<Point>,
    pub adversary: AdversaryPolicy,
    pub max_cycles: u64,
    #[serde(default)]
    pub tol: TolerancePolicy,
    /// Largest vertex deviation, relative to the SEC radius, accepted as a
    /// regular polygon.
    #[serde(default = "default_regular_tolerance")]
    pub regular_tolerance: f64,
}

impl SimConfig {
    /// Checks the configuration; `UnsupportedSwarmSize` for four robots.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(UcfError::InvalidArgument(m));
        if self.initial.len() != self.n {
            return bad(format!("n is {} but {} initial points given", self.n, self.initial.len()));
        }
        if self.n < 3 || self.n == 4 {
            return Err(UcfError::UnsupportedSwarmSize(self.n));
        }
        if self.initial.iter().any(|p| !p.is_finite()) {
            return bad("non-finite initial point".into());
        }
        let sec = smallest_enclosing_circle(&self.initial, &self.tol)?;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.initial[i].dist(self.initial[j]) <= self.tol.len(sec.radius, 0.0) {
                    return bad(format!("initial points {i} and {j} coincide"));
                }
            }
        }
        if !(self.adversary.delta > 0.0 && self.adversary.delta.is_finite()) {
            return bad("delta must be positive".into());
        }
        let i = self.adversary.interruption;
        if !(0.0..=1.0).contains(&i.stop_prob) || !(0.0..=1.0).contains(&i.full_prob) {
            return bad("interruption probabilities must lie in [0, 1]".into());
        }
        if !(self.regular_tolerance > 0.0) {
            return bad("regular_tolerance must be positive".into());
        }
        Ok(())
    }

    /// A run from a random initial configuration drawn from `seed`.
    pub fn random(n: usize, kind: AdversaryKind, seed: u64, max_cycles: u64) -> SimConfig {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_1c0f_f1e5_0001);
        SimConfig {
            n,
            initial: random_configuration(n, &mut rng),
            adversary: AdversaryPolicy::new(kind, seed, 0.01),
            max_cycles,
            tol: TolerancePolicy::default(),
            regular_tolerance: default_regular_tolerance(),
        }
    }
}

/// `n` points uniform in the unit disk, pairwise at least `0.01` apart.
pub fn random_configuration(n: usize, rng: &mut impl Rng) -> Vec<Point> {
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = Point::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        if p.norm() <= 1.0 && pts.iter().all(|q| q.dist(p) >= 0.01) {
            pts.push(p);
        }
    }
    pts
}

/// Largest distance, relative to the SEC radius, from a point to the
/// matching vertex of the best-aligned regular polygon inscribed in SEC.
pub fn regular_deviation(points: &[Point]) -> f64 {
    let n = points.len();
    let Ok(sec) = smallest_enclosing_circle(points, &TolerancePolicy::default()) else {
        return f64::INFINITY;
    };
    if sec.radius <= 0.0 {
        return f64::INFINITY;
    }
    let mut ang: Vec<f64> = points.iter().map(|&p| (p - sec.center).angle()).collect();
    ang.sort_by(f64::total_cmp);
    let step = TAU / n as f64;
    let (mut sx, mut sy) = (0.0, 0.0);
    for (k, a) in ang.iter().enumerate() {
        let d = (a - step * k as f64) * n as f64;
        sx += d.cos();
        sy += d.sin();
    }
    let phase = sy.atan2(sx) / n as f64;
    points
        .iter()
        .map(|&p| {
            let u = (p - sec.center) * (1.0 / sec.radius);
            (0..n)
                .map(|k| u.dist(Point::polar(1.0, phase + step * k as f64)))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Phase {
    Idle,
    Moving { segment_start: Point, destination: Point, progress: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RobotState {
    pub position: Point,
    pub phase: Phase,
    pub cycle_count: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Outcome {
    ReachedRegular,
    /// Every robot idle and choosing to stay, but not in a regular polygon.
    Frozen,
    BudgetExhausted,
    CollisionDetected { pair: (usize, usize) },
    ComputeFailed { robot: usize, reason: String },
    UnsupportedSize,
}

/// Measurements taken during a run.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    pub events: u64,
    /// Smallest pairwise distance seen at any event, over the SEC radius.
    pub min_separation: f64,
    /// Largest relative drift of SEC before the first Pre-regular dispatch.
    pub sec_drift: f64,
    /// Vertex deviation of the final configuration, over the SEC radius.
    pub final_deviation: f64,
    /// Tick of the first Pre-regular dispatch.
    pub pre_regular_at: Option<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Run {
    pub outcome: Outcome,
    pub cycles: u64,
    pub stats: RunStats,
    pub trace: ExecutionTrace,
}

/// A similarity taking global coordinates to a robot's local frame.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalFrame {
    pub origin: Point,
    pub rotation: f64,
    pub reflect: bool,
    pub scale: f64,
}

impl LocalFrame {
    pub fn at(origin: Point) -> Self {
        LocalFrame { origin, rotation: 0.0, reflect: false, scale: 1.0 }
    }

    pub fn random(origin: Point, rng: &mut impl Rng) -> Self {
        LocalFrame {
            origin,
            rotation: rng.random_range(0.0..TAU),
            reflect: rng.random_bool(0.5),
            scale: 10f64.powf(rng.random_range(-1.0..1.0)),
        }
    }

    pub fn to_local(&self, p: Point) -> Point {
        let mut v = p - self.origin;
        if self.reflect {
            v.y = -v.y;
        }
        rotate(v, self.rotation) * self.scale
    }

    pub fn to_global(&self, q: Point) -> Point {
        let mut v = rotate(q * (1.0 / self.scale), -self.rotation);
        if self.reflect {
            v.y = -v.y;
        }
        self.origin + v
    }
}

fn rotate(v: Point, a: f64) -> Point {
    let (s, c) = a.sin_cos();
    Point::new(c * v.x - s * v.y, s * v.x + c * v.y)
}

fn snapshot_hash(points: &[Point]) -> String {
    let mut h = Sha256::new();
    for p in points {
        h.update(p.x.to_le_bytes());
        h.update(p.y.to_le_bytes());
    }
    h.finalize()[..8].iter().map(|b| format!("{b:02x}")).collect()
}

struct World<'a> {
    cfg: &'a SimConfig,
    protocol: &'a dyn Protocol,
    robots: Vec<RobotState>,
    rng: ChaCha8Rng,
    tick: u64,
    cycles: u64,
    trace: ExecutionTrace,
    /// Robots whose latest Compute chose to stay, since anything last moved.
    stayed: Vec<bool>,
    /// Events (Async) or rounds (sync kinds) since each robot last acted.
    skipped: Vec<u64>,
    frozen_logged: bool,
    sec0: Circle,
    stats: RunStats,
    end: Option<Outcome>,
}

impl<'a> World<'a> {
    fn new(cfg: &'a SimConfig, protocol: &'a dyn Protocol) -> Self {
        let n = cfg.n;
        let sec0 = smallest_enclosing_circle(&cfg.initial, &cfg.tol).expect("validated");
        World {
            cfg,
            protocol,
            robots: cfg
                .initial
                .iter()
                .map(|&p| RobotState { position: p, phase: Phase::Idle, cycle_count: 0 })
                .collect(),
            rng: ChaCha8Rng::seed_from_u64(cfg.adversary.seed),
            tick: 0,
            cycles: 0,
            trace: ExecutionTrace::new(cfg.clone()),
            stayed: vec![false; n],
            skipped: vec![0; n],
            frozen_logged: true,
            sec0,
            stats: RunStats { min_separation: f64::INFINITY, ..RunStats::default() },
            end: None,
        }
    }

    fn positions(&self) -> Vec<Point> {
        self.robots.iter().map(|r| r.position).collect()
    }

    fn push(&mut self, robot: Option<usize>, kind: EventKind) {
        self.stats.events += 1;
        self.trace.events.push(Event { t: self.tick, robot, kind });
    }

    fn idle(&self, i: usize) -> bool {
        matches!(self.robots[i].phase, Phase::Idle)
    }

    fn look_compute(&mut self, i: usize) {
        let me = self.robots[i].position;
        let frame = if self.cfg.adversary.frame_noise {
            LocalFrame::random(me, &mut self.rng)
        } else {
            LocalFrame::at(me)
        };
        let local: Vec<Point> = self.positions().iter().map(|&p| frame.to_local(p)).collect();
        let decision = match self.protocol.compute(&local, i) {
            Ok(d) => d,
            Err(e) => {
                self.end = Some(Outcome::ComputeFailed { robot: i, reason: e.to_string() });
                return;
            }
        };
        self.cycles += 1;
        self.robots[i].cycle_count += 1;
        self.skipped[i] = 0;
        let dest = frame.to_global(decision.destination);
        let stay = dest.dist(me) <= 1e-12 * self.sec0.radius;
        if decision.procedure == "PreRegular" && self.stats.pre_regular_at.is_none() {
            self.stats.pre_regular_at = Some(self.tick);
        }
        log::debug!("t={} robot {i}: {} / {} -> {:?}", self.tick, decision.class, decision.procedure, dest);
        self.push(
            Some(i),
            EventKind::LookCompute {
                snapshot_hash: snapshot_hash(&local),
                destination: dest,
                stay,
                class: decision.class,
                procedure: decision.procedure,
                critical: decision.critical.iter().map(|&p| frame.to_global(p)).collect(),
            },
        );
        if stay {
            self.stayed[i] = true;
        } else {
            self.stayed[i] = false;
            self.robots[i].phase = Phase::Moving { segment_start: me, destination: dest, progress: 0.0 };
        }
    }

    fn advance(&mut self, i: usize, progress: f64) -> bool {
        let Phase::Moving { segment_start, destination, progress: cur } = self.robots[i].phase else {
            return false;
        };
        if !(progress > cur) {
            return false;
        }
        let p = progress.min(1.0);
        let pos = if p >= 1.0 { destination } else { segment_start.lerp(destination, p) };
        self.robots[i].position = pos;
        self.robots[i].phase = Phase::Moving { segment_start, destination, progress: p };
        self.skipped[i] = 0;
        self.stayed.fill(false);
        self.frozen_logged = false;
        self.push(Some(i), EventKind::MoveProgress { position: pos, progress: p });
        self.after_motion(i);
        if p >= 1.0 {
            self.robots[i].phase = Phase::Idle;
            self.push(Some(i), EventKind::PhaseEnd { reached: true });
        }
        true
    }

    fn can_end(&self, i: usize) -> bool {
        match self.robots[i].phase {
            Phase::Idle => false,
            Phase::Moving { segment_start, destination, progress } => {
                progress >= 1.0 || progress * segment_start.dist(destination) >= self.cfg.adversary.delta
            }
        }
    }

    fn end_phase(&mut self, i: usize) -> bool {
        if !self.can_end(i) {
            return false;
        }
        self.robots[i].phase = Phase::Idle;
        self.skipped[i] = 0;
        self.push(Some(i), EventKind::PhaseEnd { reached: false });
        true
    }

    fn after_motion(&mut self, i: usize) {
        let pts = self.positions();
        let sec = smallest_enclosing_circle(&pts, &self.cfg.tol).expect("finite points");
        for j in 0..pts.len() {
            if j == i {
                continue;
            }
            let d = pts[i].dist(pts[j]) / sec.radius;
            self.stats.min_separation = self.stats.min_separation.min(d);
            if d < 1e-9 && self.end.is_none() {
                let pair = (i.min(j), i.max(j));
                self.push(None, EventKind::Collision { pair });
                self.end = Some(Outcome::CollisionDetected { pair });
            }
        }
        if self.stats.pre_regular_at.is_none() {
            let drift = (sec.center.dist(self.sec0.center)).max((sec.radius - self.sec0.radius).abs()) / self.sec0.radius;
            self.stats.sec_drift = self.stats.sec_drift.max(drift);
        }
    }

    fn starvation_bound(&self) -> u64 {
        self.cfg.adversary.starvation_bound.unwrap_or(4 * self.cfg.n as u64)
    }

    /// After each scheduler step: log freezes and detect termination.
    fn settle(&mut self) {
        if self.end.is_some() {
            return;
        }
        let all_idle = (0..self.cfg.n).all(|i| self.idle(i));
        if all_idle && !self.frozen_logged {
            self.frozen_logged = true;
            self.push(None, EventKind::Freeze);
        }
        if all_idle && self.stayed.iter().all(|&b| b) {
            let dev = regular_deviation(&self.positions());
            self.stats.final_deviation = dev;
            self.end = Some(if dev <= self.cfg.regular_tolerance { Outcome::ReachedRegular } else { Outcome::Frozen });
        } else if self.cycles >= self.cfg.max_cycles || self.stats.events >= 64 * self.cfg.max_cycles.max(64) {
            self.stats.final_deviation = regular_deviation(&self.positions());
            self.end = Some(Outcome::BudgetExhausted);
        }
    }

    /// One synchronous round: pending moves finish, then the chosen robots
    /// Look together and move.
    fn sync_round(&mut self, semi: bool) {
        let n = self.cfg.n;
        for i in 0..n {
            if !self.idle(i) {
                self.advance(i, 1.0);
            }
        }
        self.tick += 1;
        let bound = self.starvation_bound();
        let mut chosen: Vec<usize> = if semi {
            (0..n).filter(|&i| self.skipped[i] >= bound || self.rng.random_bool(0.5)).collect()
        } else {
            (0..n).collect()
        };
        if chosen.is_empty() {
            chosen.push(self.rng.random_range(0..n));
        }
        for i in 0..n {
            if !chosen.contains(&i) {
                self.skipped[i] += 1;
            }
        }
        for &i in &chosen {
            self.look_compute(i);
            if self.end.is_some() {
                return;
            }
        }
        self.tick += 1;
        let intr = self.cfg.adversary.interruption;
        for &i in &chosen {
            let Phase::Moving { segment_start, destination, .. } = self.robots[i].phase else {
                continue;
            };
            if semi && self.rng.random_bool(intr.stop_prob) {
                let len = segment_start.dist(destination);
                let least = (self.cfg.adversary.delta / len).min(1.0);
                let p = least + (1.0 - least) * self.rng.random::<f64>();
                self.advance(i, p);
                if p < 1.0 {
                    self.end_phase(i);
                }
            } else {
                self.advance(i, 1.0);
            }
            if self.end.is_some() {
                return;
            }
        }
    }

    fn async_step(&mut self) {
        let n = self.cfg.n;
        self.tick += 1;
        let bound = self.starvation_bound();
        let starved = (0..n).filter(|&i| self.skipped[i] >= bound).max_by_key(|&i| (self.skipped[i], n - i));
        let i = starved.unwrap_or_else(|| self.rng.random_range(0..n));
        for j in 0..n {
            if j != i {
                self.skipped[j] += 1;
            }
        }
        if self.idle(i) {
            self.look_compute(i);
            return;
        }
        let intr = self.cfg.adversary.interruption;
        if self.rng.random_bool(intr.stop_prob) && self.end_phase(i) {
            return;
        }
        let Phase::Moving { progress, .. } = self.robots[i].phase else {
            unreachable!("robot {i} is moving");
        };
        let p = if self.rng.random_bool(intr.full_prob) {
            1.0
        } else {
            progress + (1.0 - progress) * (1.0 - self.rng.random::<f64>())
        };
        self.advance(i, p);
    }

    fn scripted_step(&mut self, step: &ScriptStep) {
        self.tick += 1;
        let ok = match *step {
            ScriptStep::Activate(i) if i < self.cfg.n && self.idle(i) => {
                self.look_compute(i);
                true
            }
            ScriptStep::Advance { robot, progress } if robot < self.cfg.n => self.advance(robot, progress),
            ScriptStep::AdvanceTo { robot, point } if robot < self.cfg.n => match self.robots[robot].phase {
                Phase::Moving { segment_start, destination, .. } => {
                    let d = destination - segment_start;
                    let t = ((point - segment_start).dot(d) / d.dot(d)).clamp(0.0, 1.0);
                    self.advance(robot, t)
                }
                Phase::Idle => false,
            },
            ScriptStep::End(i) if i < self.cfg.n => self.end_phase(i),
            _ => false,
        };
        if !ok {
            log::info!("scripted step {step:?} rejected at t={}", self.tick);
        }
    }
}

/// Runs the uniform circle formation algorithm.
pub fn run(cfg: &SimConfig) -> Run {
    run_with(cfg, &Ucf { tol: cfg.tol })
}

/// Runs an arbitrary Compute function.
pub fn run_with(cfg: &SimConfig, protocol: &dyn Protocol) -> Run {
    if let Err(e) = cfg.validate() {
        let outcome = match e {
            UcfError::UnsupportedSwarmSize(_) => Outcome::UnsupportedSize,
            e => Outcome::ComputeFailed { robot: 0, reason: e.to_string() },
        };
        let mut trace = ExecutionTrace::new(cfg.clone());
        trace.end = Some((outcome.clone(), 0));
        return Run { outcome, cycles: 0, stats: RunStats::default(), trace };
    }
    let mut w = World::new(cfg, protocol);
    let script: &[ScriptStep] = match &cfg.adversary.kind {
        AdversaryKind::Scripted(s) | AdversaryKind::Replay(s) => s,
        _ => &[],
    };
    let mut next = 0;
    w.settle();
    while w.end.is_none() {
        match &cfg.adversary.kind {
            AdversaryKind::FullySync => w.sync_round(false),
            AdversaryKind::SemiSync => w.sync_round(true),
            AdversaryKind::Async => w.async_step(),
            AdversaryKind::Scripted(_) | AdversaryKind::Replay(_) => {
                if next < script.len() {
                    w.scripted_step(&script[next]);
                    next += 1;
                } else {
                    w.sync_round(false);
                }
            }
        }
        w.settle();
    }
    let outcome = w.end.take().expect("loop ends with an outcome");
    w.trace.end = Some((outcome.clone(), w.cycles));
    if w.stats.min_separation.is_infinite() {
        w.stats.min_separation = min_separation(&w.positions());
    }
    Run { outcome, cycles: w.cycles, stats: w.stats, trace: w.trace }
}

fn min_separation(pts: &[Point]) -> f64 {
    let Ok(sec) = smallest_enclosing_circle(pts, &TolerancePolicy::default()) else {
        return 0.0;
    };
    let mut m = f64::INFINITY;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            m = m.min(pts[i].dist(pts[j]) / sec.radius);
        }
    }
    m
}

/// The scheduler decisions of a recorded trace, for replay.
pub fn script_from_trace(trace: &ExecutionTrace) -> Vec<ScriptStep> {
    trace
        .events
        .iter()
        .filter_map(|e| {
            let i = e.robot?;
            match &e.kind {
                EventKind::LookCompute { .. } => Some(ScriptStep::Activate(i)),
                EventKind::MoveProgress { progress, .. } => Some(ScriptStep::Advance { robot: i, progress: *progress }),
                EventKind::PhaseEnd { reached: false } => Some(ScriptStep::End(i)),
                _ => None,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests;
