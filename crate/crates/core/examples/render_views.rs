//! Render the four reference views from the centre of the central cube.
//!
//!     cargo run --release --example render_views -- [out_dir] [depth]

use std::path::PathBuf;

use h2xe::render::{RenderSettings, DEFAULT_SUBDIVISIONS};
use h2xe::scene::{Scene, View, DEFAULT_LAYERS};
use h2xe::tiling::TilingSpec;

fn main() -> h2xe::Result<()> {
    let mut args = std::env::args().skip(1);
    let out = PathBuf::from(args.next().unwrap_or_else(|| "views".into()));
    let depth = args.next().and_then(|d| d.parse().ok()).unwrap_or(5);
    std::fs::create_dir_all(&out)?;
    let scene = Scene::build(TilingSpec::new(depth, DEFAULT_LAYERS), DEFAULT_SUBDIVISIONS)?;
    println!("{} cells", scene.cells.len());
    for view in View::ALL {
        let path = out.join(format!("{}.png", view.name()));
        scene.render_view(view, &RenderSettings::default())?.save(&path)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
