//! SVG frames of a recorded trace.

use std::fmt::Write;

use crate::geometry::{smallest_enclosing_circle, Point, TolerancePolicy};
use crate::simulator::{EventKind, ExecutionTrace};

/// Which states of a trace become frames.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrameSelection {
    /// The state at every freeze, plus the final state.
    Freeze,
    /// The state after every k-th event, plus the final state.
    EveryK(usize),
}

impl std::str::FromStr for FrameSelection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "freeze" {
            return Ok(FrameSelection::Freeze);
        }
        let k = s.strip_prefix("every-").ok_or_else(|| format!("unknown frame selection {s:?}"))?;
        match k.parse::<usize>() {
            Ok(k) if k > 0 => Ok(FrameSelection::EveryK(k)),
            _ => Err(format!("bad frame step in {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
    /// Number of events applied before this state.
    pub event: usize,
    pub t: u64,
    pub svg: String,
}

/// Renders the selected states. A trace without events gives no frames.
pub fn render_trace(trace: &ExecutionTrace, sel: FrameSelection) -> Vec<Frame> {
    let states = trace.states();
    let m = trace.events.len();
    if m == 0 {
        return Vec::new();
    }
    let mut picks: Vec<usize> = match sel {
        FrameSelection::Freeze => (0..m).filter(|&k| trace.events[k].kind == EventKind::Freeze).map(|k| k + 1).collect(),
        FrameSelection::EveryK(step) => (1..=m).filter(|k| k % step == 0).collect(),
    };
    if picks.last() != Some(&m) {
        picks.push(m);
    }
    // Critical points announced by each robot's latest look, kept while it moves.
    let n = trace.config.initial.len();
    let mut critical: Vec<Vec<Point>> = vec![Vec::new(); n];
    let mut frames = Vec::with_capacity(picks.len());
    let mut next = picks.iter().peekable();
    for (k, e) in trace.events.iter().enumerate() {
        if let (Some(i), EventKind::LookCompute { critical: c, .. }) = (e.robot, &e.kind) {
            critical[i] = c.clone();
        }
        if next.peek() == Some(&&(k + 1)) {
            next.next();
            let s = &states[k + 1];
            let shown: Vec<Point> = (0..n).filter(|&i| !s.idle[i]).flat_map(|i| critical[i].iter().copied()).collect();
            frames.push(Frame { event: k + 1, t: s.t, svg: scene(&s.positions, &s.destinations, &shown) });
        }
    }
    frames
}

/// One scene: SEC, the circle at a third of its radius, robots, pending
/// destinations and critical points.
pub fn scene(positions: &[Point], destinations: &[Option<Point>], critical: &[Point]) -> String {
    let sec = smallest_enclosing_circle(positions, &TolerancePolicy::default())
        .unwrap_or(crate::geometry::Circle { center: positions.first().copied().unwrap_or_default(), radius: 1.0 });
    let r = if sec.radius > 0.0 { sec.radius } else { 1.0 };
    let c = sec.center;
    let half = 1.25 * r;
    let dot = 0.025 * r;
    let line = 0.006 * r;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="600" height="600">"#,
        c.x - half,
        -c.y - half,
        2.0 * half,
        2.0 * half
    );
    let _ = writeln!(
        out,
        r#"<circle class="sec" cx="{}" cy="{}" r="{}" fill="none" stroke="black" stroke-width="{line}"/>"#,
        c.x, -c.y, r
    );
    let _ = writeln!(
        out,
        r#"<circle class="sec3" cx="{}" cy="{}" r="{}" fill="none" stroke="gray" stroke-width="{line}" stroke-dasharray="{} {}"/>"#,
        c.x,
        -c.y,
        r / 3.0,
        4.0 * line,
        3.0 * line
    );
    for (p, d) in positions.iter().zip(destinations) {
        if let Some(d) = d {
            let _ = writeln!(
                out,
                r#"<line class="path" x1="{}" y1="{}" x2="{}" y2="{}" stroke="steelblue" stroke-width="{line}"/>"#,
                p.x, -p.y, d.x, -d.y
            );
            let _ = writeln!(
                out,
                r#"<circle class="destination" cx="{}" cy="{}" r="{}" fill="none" stroke="steelblue" stroke-width="{line}"/>"#,
                d.x,
                -d.y,
                dot
            );
        }
    }
    for q in critical {
        let a = 0.6 * dot;
        let _ = writeln!(
            out,
            r#"<path class="critical" d="M {} {} L {} {} M {} {} L {} {}" stroke="crimson" stroke-width="{line}"/>"#,
            q.x - a,
            -q.y - a,
            q.x + a,
            -q.y + a,
            q.x - a,
            -q.y + a,
            q.x + a,
            -q.y - a
        );
    }
    for (i, p) in positions.iter().enumerate() {
        let _ = writeln!(out, r#"<circle class="robot" data-id="{i}" cx="{}" cy="{}" r="{dot}" fill="black"/>"#, p.x, -p.y);
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulator::{run, AdversaryKind, SimConfig};

    fn radius_of(svg: &str, class: &str) -> f64 {
        let tag = svg.lines().find(|l| l.contains(&format!(r#"class="{class}""#))).unwrap();
        let start = tag.find(" r=\"").unwrap() + 4;
        tag[start..].split('"').next().unwrap().parse().unwrap()
    }

    #[test]
    fn frames_draw_sec_and_its_third() {
        let trace = run(&SimConfig::random(6, AdversaryKind::FullySync, 3, 500)).trace;
        let frames = render_trace(&trace, FrameSelection::Freeze);
        assert!(!frames.is_empty());
        for f in &frames {
            let ratio = radius_of(&f.svg, "sec") / radius_of(&f.svg, "sec3");
            assert!((ratio - 3.0).abs() < 3e-3);
            assert_eq!(f.svg.matches(r#"class="robot""#).count(), 6);
        }
    }

    #[test]
    fn empty_trace_has_no_frames() {
        let mut trace = run(&SimConfig::random(5, AdversaryKind::FullySync, 1, 10)).trace;
        trace.events.clear();
        assert!(render_trace(&trace, FrameSelection::EveryK(1)).is_empty());
    }

    #[test]
    fn every_k_ends_on_the_last_event() {
        let trace = run(&SimConfig::random(5, AdversaryKind::Async, 2, 200)).trace;
        let frames = render_trace(&trace, FrameSelection::EveryK(7));
        assert_eq!(frames.last().unwrap().event, trace.events.len());
        assert_eq!(frames.len(), trace.events.len().div_ceil(7));
    }

    #[test]
    fn frame_selection_parses() {
        assert_eq!("freeze".parse::<FrameSelection>(), Ok(FrameSelection::Freeze));
        assert_eq!("every-5".parse::<FrameSelection>(), Ok(FrameSelection::EveryK(5)));
        assert!("every-0".parse::<FrameSelection>().is_err());
        assert!("sometimes".parse::<FrameSelection>().is_err());
    }
}
