//! Smallest enclosing circle of a point set, checked against the
//! all-pairs-and-triples search.
//!
//! ```bash
//! cargo run -p ucf --example enclosing_circle
//! ```

use ucf::geometry::{sed_third, smallest_enclosing_circle, Point, TolerancePolicy};
use ucf::oracle::brute_force_sec;

fn main() {
    let pts = [Point::new(0.0, 0.0), Point::new(2.0, 0.0), Point::new(1.0, 2.0), Point::new(1.0, 0.5)];
    let sec = smallest_enclosing_circle(&pts, &TolerancePolicy::default()).unwrap();
    let third = sed_third(sec);
    let brute = brute_force_sec(&pts);
    println!("SEC   center ({:.4}, {:.4}) radius {:.4}", sec.center.x, sec.center.y, sec.radius);
    println!("SEC/3 radius {:.4}", third.radius);
    println!("brute force radius {:.4}", brute.radius);
}
