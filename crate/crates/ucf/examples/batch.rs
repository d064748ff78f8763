//! A small campaign over swarm sizes and adversaries.
//!
//! ```bash
//! cargo run -p ucf --example batch
//! ```

use ucf::simulator::{run_batch, AdversaryName, BatchCell, BatchSpec};

fn main() {
    let mut cells = Vec::new();
    for n in [5, 6, 9] {
        for adversary in [AdversaryName::Fullsync, AdversaryName::Semisync, AdversaryName::Async] {
            cells.push(BatchCell { n, adversary, seeds: 5 });
        }
    }
    let rows = run_batch(&BatchSpec { cells, first_seed: 0, max_cycles: 50_000 }).unwrap();
    println!("  n adversary  success  mean cycles  max cycles  no collisions");
    for r in rows {
        println!(
            "{:>3} {:<10} {:>7.2} {:>12.1} {:>11} {:>14}",
            r.n,
            r.adversary.as_str(),
            r.success_rate,
            r.mean_cycles,
            r.max_cycles,
            r.zero_collisions
        );
    }
}
