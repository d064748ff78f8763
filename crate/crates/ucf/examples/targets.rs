//! Target set of a Valid configuration and the robot-to-target matching.
//!
//! ```bash
//! cargo run -p ucf --example targets
//! ```

use ucf::classify::Snapshot;
use ucf::geometry::{Point, TolerancePolicy};
use ucf::report::class_report;

fn main() {
    // All on one circle, mirror-symmetric about the x-axis.
    let pts: Vec<Point> = [0.0f64, 50.0, 140.0, 175.0, 185.0, 220.0, 310.0]
        .iter()
        .map(|a| Point::polar(1.0, a.to_radians()))
        .collect();
    let s = Snapshot::new(pts.clone(), TolerancePolicy::default()).unwrap();
    let r = class_report(&s).unwrap();
    println!("class {}  period {:?}", r.class, r.period);
    println!("walkers {:?}", r.walkers);
    for (p, t) in pts.iter().zip(&r.targets) {
        println!("({:5.2}, {:5.2}) -> ({:6.3}, {:6.3})", p.x, p.y, t.x, t.y);
    }
}
