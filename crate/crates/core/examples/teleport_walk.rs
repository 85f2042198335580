//! Walk straight ahead across several cells. The camera is teleported back
//! into the central cell at each face; what it sees does not change.

use h2xe::tiling::in_radius;
use h2xe::verify::{long_run_defect, teleport_walk};

fn main() {
    let walk = teleport_walk(10.0 * in_radius(), 0.02);
    println!("{} frames, {} teleports, offset word {}", walk.frames, walk.teleports, walk.offset);
    println!("largest corner mismatch across a teleport: {:.2e}", walk.invariance);
    println!("largest per-frame corner displacement: {:.4}", walk.continuity);
    println!("orthogonality defect after 100000 motions: {:.2e}", long_run_defect(100_000));
}
