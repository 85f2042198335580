//! Wireframe rendering: Klein×E meshes lifted to the model, moved by cell and
//! camera isometries, pulled back through the inverse exponential map and
//! drawn with ordinary perspective.

mod mesh;
mod project;
mod raster;
mod stereo;

pub use mesh::{build_cube_mesh, square_corners_klein, MeshSegment, SceneMesh, DEFAULT_SUBDIVISIONS};
pub use project::{clip_near, project_cell_vertices, project_scene, ProjectedSegment, ViewVec, NEAR_CLIP};
pub use raster::{render_frame, FrameImage, RenderSettings, DEFAULT_FOV_DEG, DEFAULT_SIZE};
pub use stereo::{eye_convergence_angle, eye_poses, render_stereo, side_by_side, StereoConfig, MAX_SEPARATION};
