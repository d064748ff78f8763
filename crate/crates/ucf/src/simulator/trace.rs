//! Execution traces: JSON lines, one header with the run configuration, one
//! line per event and a closing outcome line.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Outcome, SimConfig};
use crate::error::{Result, UcfError};
use crate::geometry::Point;

pub const TRACE_FORMAT: &str = "ucf-trace/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum EventKind {
    /// Instantaneous Look and Compute. `destination` and `critical` are in
    /// the global frame.
    LookCompute {
        snapshot_hash: String,
        destination: Point,
        stay: bool,
        class: String,
        procedure: String,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        critical: Vec<Point>,
    },
    MoveProgress { position: Point, progress: f64 },
    PhaseEnd { reached: bool },
    /// Every robot is idle.
    Freeze,
    Collision { pair: (usize, usize) },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub t: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub robot: Option<usize>,
    #[serde(flatten)]
    pub kind: EventKind,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct Header {
    format: String,
    config: SimConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct Footer {
    outcome: Outcome,
    cycles: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExecutionTrace {
    pub config: SimConfig,
    pub events: Vec<Event>,
    /// Outcome and cycle count, once the run has ended.
    pub end: Option<(Outcome, u64)>,
}

/// Global state after an event.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceState {
    pub t: u64,
    pub positions: Vec<Point>,
    pub idle: Vec<bool>,
    /// Pending destination of each moving robot.
    pub destinations: Vec<Option<Point>>,
}

impl ExecutionTrace {
    pub fn new(config: SimConfig) -> Self {
        ExecutionTrace { config, events: Vec::new(), end: None }
    }

    pub fn write_jsonl<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let header = Header { format: TRACE_FORMAT.into(), config: self.config.clone() };
        serde_json::to_writer(&mut w, &header)?;
        w.write_all(b"\n")?;
        for e in &self.events {
            serde_json::to_writer(&mut w, e)?;
            w.write_all(b"\n")?;
        }
        if let Some((outcome, cycles)) = &self.end {
            serde_json::to_writer(&mut w, &Footer { outcome: outcome.clone(), cycles: *cycles })?;
            w.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn to_jsonl(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("JSON is UTF-8")
    }

    /// Parses a trace; errors name the offending line (1-based).
    pub fn read_jsonl<R: BufRead>(r: R) -> Result<Self> {
        let mut trace: Option<ExecutionTrace> = None;
        for (k, line) in r.lines().enumerate() {
            let no = k + 1;
            let bad = |msg: String| UcfError::InvalidArgument(format!("trace line {no}: {msg}"));
            let line = line.map_err(|e| bad(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let v: Value = serde_json::from_str(&line).map_err(|e| bad(e.to_string()))?;
            match trace.as_mut() {
                None => {
                    let h: Header = serde_json::from_value(v).map_err(|e| bad(format!("bad header: {e}")))?;
                    if h.format != TRACE_FORMAT {
                        return Err(bad(format!("unknown format {}", h.format)));
                    }
                    trace = Some(ExecutionTrace::new(h.config));
                }
                Some(t) if t.end.is_some() => return Err(bad("content after the outcome line".into())),
                Some(t) if v.get("outcome").is_some() => {
                    let f: Footer = serde_json::from_value(v).map_err(|e| bad(e.to_string()))?;
                    t.end = Some((f.outcome, f.cycles));
                }
                Some(t) => {
                    let e: Event = serde_json::from_value(v).map_err(|e| bad(e.to_string()))?;
                    if t.events.last().is_some_and(|p| p.t > e.t) {
                        return Err(bad("event times go backwards".into()));
                    }
                    t.events.push(e);
                }
            }
        }
        trace.ok_or_else(|| UcfError::InvalidArgument("empty trace".into()))
    }

    /// The initial state followed by the state after every event.
    pub fn states(&self) -> Vec<TraceState> {
        let n = self.config.initial.len();
        let mut cur = TraceState {
            t: 0,
            positions: self.config.initial.clone(),
            idle: vec![true; n],
            destinations: vec![None; n],
        };
        let mut out = vec![cur.clone()];
        for e in &self.events {
            cur.t = e.t;
            if let Some(i) = e.robot {
                match &e.kind {
                    EventKind::LookCompute { destination, stay, .. } => {
                        if !stay {
                            cur.idle[i] = false;
                            cur.destinations[i] = Some(*destination);
                        }
                    }
                    EventKind::MoveProgress { position, progress } => {
                        cur.positions[i] = *position;
                        if *progress >= 1.0 {
                            cur.idle[i] = true;
                            cur.destinations[i] = None;
                        }
                    }
                    EventKind::PhaseEnd { .. } => {
                        cur.idle[i] = true;
                        cur.destinations[i] = None;
                    }
                    EventKind::Freeze | EventKind::Collision { .. } => {}
                }
            }
            out.push(cur.clone());
        }
        out
    }
}

/// Whether every robot is idle each time the swarm forms `config` (matched
/// as a set, each point within `tol`). Only the state in which the
/// configuration appears is checked; robots may start new cycles from it.
pub fn check_freeze_at(trace: &ExecutionTrace, config: &[Point], tol: f64) -> bool {
    let mut inside = false;
    trace.states().iter().all(|s| {
        let here = matches_set(&s.positions, config, tol);
        let entered = here && !inside;
        inside = here;
        !entered || s.idle.iter().all(|&b| b)
    })
}

fn matches_set(a: &[Point], b: &[Point], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; a.len()];
    b.iter().all(|q| match (0..a.len()).find(|&i| !used[i] && a[i].dist(*q) <= tol) {
        Some(i) => {
            used[i] = true;
            true
        }
        None => false,
    })
}
