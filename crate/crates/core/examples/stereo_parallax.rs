//! Eyes looking at a far object must still turn inward: the convergence
//! angle tends to arcsin(tanh(s/2)) instead of zero. Also writes a stereo
//! pair of the level view.

use h2xe::render::{eye_convergence_angle, render_stereo, side_by_side, RenderSettings, StereoConfig};
use h2xe::scene::{Scene, View};
use h2xe::tiling::TilingSpec;
use h2xe::CameraPose;

fn main() -> h2xe::Result<()> {
    let s = 0.1;
    println!("limit arcsin(tanh(s/2)) = {:.6}", (s / 2.0f64).tanh().asin());
    for d in [0.5, 1.0, 2.0, 5.0, 10.0, 20.0] {
        println!("d = {d:>4}: {:.6} rad (euclidean {:.6})", eye_convergence_angle(s, d), (s / 2.0 / d).atan());
    }

    let scene = Scene::build(TilingSpec::new(4, 2), 8)?;
    let pose = CameraPose::new(Default::default(), View::H2.frame());
    let settings = RenderSettings::with_size(400, 400);
    let (l, r) = render_stereo(&pose, &StereoConfig { eye_separation: s }, &scene.cells, &scene.mesh, &settings)?;
    side_by_side(&l, &r).save(std::path::Path::new("stereo_pair.png"))?;
    println!("wrote stereo_pair.png");
    Ok(())
}
