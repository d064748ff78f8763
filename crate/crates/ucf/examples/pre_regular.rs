//! Builds a Pre-regular set on a random octagon and recovers the octagon.
//!
//! ```bash
//! cargo run -p ucf --example pre_regular
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ucf::classify::{is_pre_regular, Snapshot};
use ucf::geometry::TolerancePolicy;
use ucf::oracle::random_pre_regular;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (poly, pts) = random_pre_regular(8, &mut rng);
    let s = Snapshot::new(pts.clone(), TolerancePolicy::default()).unwrap();
    let cert = is_pre_regular(&s).expect("two points on every other edge");
    println!("generator vertex error {:.2e}", cert.shape.vertex_deviation(&poly) / poly.circumradius);
    for (p, &v) in pts.iter().zip(&cert.matching) {
        println!("({:7.3}, {:7.3}) -> vertex {v}", p.x, p.y);
    }
    let mut bent = pts;
    bent[3] = bent[3] + poly.normal(2) * 0.05;
    let s = Snapshot::new(bent, TolerancePolicy::default()).unwrap();
    println!("nudged copy pre-regular: {}", is_pre_regular(&s).is_some());
}
