//! Simulates one swarm under each adversary and prints the outcome.
//!
//! ```bash
//! cargo run -p ucf --example simulate -- 8 42
//! ```

use ucf::simulator::{run, AdversaryKind, SimConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(7);
    let seed: u64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(1);
    for kind in [AdversaryKind::FullySync, AdversaryKind::SemiSync, AdversaryKind::Async] {
        let label = format!("{kind:?}");
        let r = run(&SimConfig::random(n, kind, seed, 50_000));
        println!(
            "{label:<9} {:?} after {} cycles, {} events, min separation {:.3}, deviation {:.1e}",
            r.outcome, r.cycles, r.stats.events, r.stats.min_separation, r.stats.final_deviation
        );
    }
}
