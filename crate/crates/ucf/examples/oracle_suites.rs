//! Runs every cross-check suite, including the deliberately broken one.
//!
//! ```bash
//! cargo run -p ucf --example oracle_suites
//! ```

use ucf::oracle::{run_suite, OracleSuite};

fn main() {
    for suite in OracleSuite::ALL {
        let r = run_suite(suite, 0, 200);
        println!("{:<13} checked {:4}  mismatches {:4}", suite.name(), r.checked, r.mismatches.len());
    }
}
