//! Records a trace as JSON lines, reads it back and replays its schedule.
//!
//! ```bash
//! cargo run -p ucf --example trace_replay
//! ```

use ucf::simulator::{run, script_from_trace, AdversaryKind, ExecutionTrace, SimConfig};

fn main() {
    let cfg = SimConfig::random(6, AdversaryKind::Async, 5, 2000);
    let first = run(&cfg);
    let text = first.trace.to_jsonl();
    println!("{} lines, first event: {}", text.lines().count(), text.lines().nth(1).unwrap_or(""));
    let back = ExecutionTrace::read_jsonl(text.as_bytes()).unwrap();
    assert_eq!(back, first.trace);
    let mut again = cfg.clone();
    again.adversary.kind = AdversaryKind::Replay(script_from_trace(&back));
    let second = run(&again);
    println!("original {:?} in {} cycles, replay {:?} in {} cycles", first.outcome, first.cycles, second.outcome, second.cycles);
}
