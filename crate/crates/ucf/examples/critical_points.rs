//! A robot pulled radially back from a Pre-regular set: the critical point
//! set contains that set, and the cautious move stops there.
//!
//! ```bash
//! cargo run -p ucf --example critical_points
//! ```

use ucf::algorithm::{cautious_destination, critical_points, MoveDir};
use ucf::classify::Snapshot;
use ucf::geometry::{Point, RegularPolygon, TolerancePolicy};

fn main() {
    let hex = RegularPolygon { n: 6, center: Point::new(0.0, 0.0), circumradius: 1.0, phase: 0.3 };
    let mut target = Vec::new();
    for (j, (s, t)) in [(0.0, 0.6), (0.3, 1.0), (0.0, 0.5)].into_iter().enumerate() {
        target.push(hex.vertex(2 * j).lerp(hex.vertex(2 * j + 1), s));
        target.push(hex.vertex(2 * j).lerp(hex.vertex(2 * j + 1), t));
    }
    let tol = TolerancePolicy::default();
    let s0 = Snapshot::new(target.clone(), tol).unwrap();
    let mover = (0..6).find(|&i| s0.rho(i) < 0.9).unwrap();
    let mut pts = target.clone();
    pts[mover] = target[mover] * 0.7;
    let s = Snapshot::new(pts, tol).unwrap();
    let crit = critical_points(&s, &[mover], MoveDir::ToSec);
    println!("{} critical configurations, {} critical points", crit.configurations.len(), crit.points.len());
    let d = cautious_destination(&s, mover, &[mover], &crit.points, MoveDir::ToSec);
    println!("mover {mover} heads to ({:.4}, {:.4}); its Pre-regular spot is ({:.4}, {:.4})", d.x, d.y, target[mover].x, target[mover].y);
}
