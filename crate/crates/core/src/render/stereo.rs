use nalgebra::Vector3;

use crate::error::Result;
use crate::isometry::{translation_from_tangent, CameraPose};
use crate::tiling::Cell;

use super::mesh::SceneMesh;
use super::project::project_scene;
use super::raster::{render_frame, FrameImage, RenderSettings};

/// Largest accepted eye separation, model units.
pub const MAX_SEPARATION: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StereoConfig {
    /// Total distance between the eyes, model units. Eyes look straight ahead.
    pub eye_separation: f64,
}

/// Left and right eye poses: the head pose moved sideways by half the
/// separation each way, keeping the head's orientation.
pub fn eye_poses(pose: &CameraPose, cfg: &StereoConfig) -> (CameraPose, CameraPose) {
    let half = cfg.eye_separation.clamp(0.0, MAX_SEPARATION) / 2.0;
    let eye = |side: f64| {
        let t = pose.local_to_tangent(&Vector3::new(side * half, 0.0, 0.0));
        pose.with_loc(pose.loc.compose(&translation_from_tangent(t)))
    };
    (eye(-1.0), eye(1.0))
}

pub fn render_stereo(
    pose: &CameraPose,
    cfg: &StereoConfig,
    cells: &[Cell],
    mesh: &SceneMesh,
    settings: &RenderSettings,
) -> Result<(FrameImage, FrameImage)> {
    let (l, r) = eye_poses(pose, cfg);
    Ok((
        render_frame(&project_scene(&l, cells, mesh), settings)?,
        render_frame(&project_scene(&r, cells, mesh), settings)?,
    ))
}

/// Side-by-side composite of a stereo pair.
pub fn side_by_side(left: &FrameImage, right: &FrameImage) -> FrameImage {
    let w = left.width + right.width;
    let h = left.height.max(right.height);
    let mut out = FrameImage::filled(w, h, [0, 0, 0]);
    for y in 0..h {
        for x in 0..w {
            let px = if x < left.width {
                (y < left.height).then(|| left.get(x, y))
            } else {
                (y < right.height).then(|| right.get(x - left.width, y))
            };
            if let Some(p) = px {
                out.pixels[y * w + x] = p;
            }
        }
    }
    out
}

/// Angle by which the left eye must turn inward to look at a marker `distance`
/// ahead of the midpoint between the eyes, measured through the engine.
pub fn eye_convergence_angle(separation: f64, distance: f64) -> f64 {
    use crate::maps::inv_exp_map;
    let head = CameraPose::default();
    let marker = translation_from_tangent(head.local_to_tangent(&Vector3::new(0.0, 0.0, distance)))
        .origin_image();
    let (left, _) = eye_poses(&head, &StereoConfig { eye_separation: separation });
    let t = inv_exp_map(&left.loc.inverse().apply(&marker));
    let local = left.tangent_to_local(&t);
    local.x.atan2(local.z)
}
