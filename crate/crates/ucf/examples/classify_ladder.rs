//! Runs the classification ladder on a few hand-made sets.
//!
//! ```bash
//! cargo run -p ucf --example classify_ladder
//! ```

use std::f64::consts::TAU;

use ucf::classify::{classify, Snapshot};
use ucf::geometry::{Point, TolerancePolicy};

fn ring(n: usize, r: f64, phase: f64) -> Vec<Point> {
    (0..n).map(|k| Point::polar(r, phase + TAU * k as f64 / n as f64)).collect()
}

fn main() {
    let mut central = ring(5, 1.0, 0.2);
    central.push(Point::new(0.0, 0.0));
    let half_disk = vec![
        Point::new(1.0, 0.0),
        Point::new(-1.0, 0.0),
        Point::new(0.0, 0.5),
        Point::new(0.4, 0.7),
        Point::new(-0.3, 0.2),
    ];
    let mut coradial = ring(5, 1.0, 0.0);
    coradial.push(coradial[0] * 0.5);
    let generic = vec![
        Point::new(0.3, 0.1),
        Point::new(2.0, 0.4),
        Point::new(-1.1, 1.7),
        Point::new(-0.8, -1.5),
        Point::new(0.9, -1.2),
    ];
    let cases = [("regular", ring(7, 2.0, 0.1)), ("central", central), ("half disk", half_disk), ("co-radial", coradial), ("generic", generic)];
    for (label, pts) in cases {
        let s = Snapshot::new(pts, TolerancePolicy::default()).unwrap();
        println!("{label:>10}: {}", classify(&s).unwrap().name());
    }
}
