//! Approach the next cube: its far face widens like 1/sinh(d) but grows
//! taller only like 1/d. Frames are written for the same six stations.

use std::sync::Arc;

use h2xe::render::RenderSettings;
use h2xe::scene::{Scene, DEFAULT_LAYERS};
use h2xe::service::Session;
use h2xe::tiling::TilingSpec;
use h2xe::verify::anisotropy_samples;
use h2xe::walk::{drive, read_walk};

fn main() -> h2xe::Result<()> {
    let samples = anisotropy_samples();
    let (d0, w0, h0) = samples[0];
    println!("{:>8} {:>8} {:>10} {:>8} {:>10}", "distance", "width", "sinh law", "height", "1/d law");
    for &(d, w, h) in &samples {
        println!("{d:>8.4} {:>8.3} {:>10.3} {:>8.3} {:>10.3}", w / w0, d0.sinh() / d.sinh(), h / h0, d0 / d);
    }

    let script = concat!(env!("CARGO_MANIFEST_DIR"), "/scripts/aspect_ratio.walk");
    let steps = read_walk(std::path::Path::new(script))?;
    let scene = Arc::new(Scene::build(TilingSpec::new(4, DEFAULT_LAYERS), 8)?);
    let mut session = Session::new(scene, h2xe::isometry::DEFAULT_ROOM_SCALE);
    let settings = RenderSettings::with_size(400, 400);
    drive(&mut session, &steps, |i, s| {
        let path = format!("aspect_{i}.png");
        s.render(&settings)?.save(std::path::Path::new(&path))?;
        println!("wrote {path} (offset {})", s.offset());
        Ok(())
    })
}
