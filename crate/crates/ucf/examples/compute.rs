//! One Look-Compute step seen from each robot, in its own frame and in a
//! rotated, reflected and scaled copy of it.
//!
//! ```bash
//! cargo run -p ucf --example compute
//! ```

use ucf::algorithm::{decide, ucf_compute, ComputeInput};
use ucf::geometry::{Point, TolerancePolicy};

fn main() {
    let global = [
        Point::new(0.3, 0.1),
        Point::new(2.0, 0.4),
        Point::new(-1.1, 1.7),
        Point::new(-0.8, -1.5),
        Point::new(0.9, -1.2),
        Point::new(0.1, 0.9),
    ];
    // A similarity that reflects, rotates by 1 rad and scales by 3.
    let g = |p: Point| Point::polar(3.0 * p.norm(), 1.0 - p.angle());
    for (me, &origin) in global.iter().enumerate() {
        let local: Vec<Point> = global.iter().map(|&p| p - origin).collect();
        let d = decide(&local, TolerancePolicy::default()).unwrap();
        let warped = ComputeInput { points: local.iter().map(|&p| g(p)).collect(), tol: TolerancePolicy::default() };
        let w = ucf_compute(&warped).unwrap();
        println!(
            "robot {me}: {:<14} {:<22} dest ({:6.3}, {:6.3})  similarity error {:.1e}",
            d.class,
            d.procedure,
            d.destination.x + origin.x,
            d.destination.y + origin.y,
            g(d.destination).dist(w)
        );
    }
}
