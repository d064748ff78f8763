//! Writes SVG frames of a simulated run to a directory.
//!
//! ```bash
//! cargo run -p ucf --example render_frames -- /tmp/ucf-frames
//! ```

use ucf::render::{render_trace, FrameSelection};
use ucf::simulator::{run, AdversaryKind, SimConfig};

fn main() {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "ucf-frames".into());
    std::fs::create_dir_all(&dir).unwrap();
    let r = run(&SimConfig::random(8, AdversaryKind::SemiSync, 3, 5000));
    let frames = render_trace(&r.trace, FrameSelection::Freeze);
    for f in &frames {
        std::fs::write(format!("{dir}/frame_{:06}.svg", f.event), &f.svg).unwrap();
    }
    println!("{} frames in {dir}", frames.len());
}
