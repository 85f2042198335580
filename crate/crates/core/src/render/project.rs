use nalgebra::Vector3;

use crate::geometry::TangentVec;
use crate::isometry::CameraPose;
use crate::maps::inv_exp_map;
use crate::tiling::Cell;

use super::mesh::SceneMesh;

/// Segments closer than this along the camera's forward axis are clipped.
pub const NEAR_CLIP: f64 = 0.05;

/// Camera-frame coordinates `(right, up, forward)` of a point of the
/// tangent space.
pub type ViewVec = Vector3<f64>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectedSegment {
    pub a: ViewVec,
    pub b: ViewVec,
    pub color: [f64; 3],
    /// Tangent-space distance from the eye to the segment midpoint.
    pub depth_key: f64,
}

/// Tangent vectors of every mesh vertex of one cell, as seen from `pose`.
pub fn project_cell_vertices(pose: &CameraPose, cell: &Cell, mesh: &SceneMesh) -> Vec<ViewVec> {
    let to_cam = pose.loc.inverse().compose(&cell.g);
    let view = pose.view_matrix();
    mesh.vertices
        .iter()
        .map(|v| {
            let t: TangentVec = inv_exp_map(&to_cam.apply(v));
            view * Vector3::new(t.u, t.v, t.z)
        })
        .collect()
}

/// Clips `a→b` against the near plane; `None` if entirely behind it.
pub fn clip_near(a: ViewVec, b: ViewVec, near: f64) -> Option<(ViewVec, ViewVec)> {
    match (a.z >= near, b.z >= near) {
        (true, true) => Some((a, b)),
        (false, false) => None,
        (a_in, _) => {
            let t = (near - a.z) / (b.z - a.z);
            let hit = a + (b - a) * t;
            if a_in {
                Some((a, hit))
            } else {
                Some((hit, b))
            }
        }
    }
}

/// Transforms every cell's copy of `mesh` into the camera's frame through
/// the inverse exponential map.
pub fn project_scene(pose: &CameraPose, cells: &[Cell], mesh: &SceneMesh) -> Vec<ProjectedSegment> {
    let mut out = Vec::with_capacity(cells.len() * mesh.segments.len() / 2);
    for cell in cells {
        let verts = project_cell_vertices(pose, cell, mesh);
        let rgb = cell.color.rgb();
        for s in &mesh.segments {
            let Some((a, b)) = clip_near(verts[s.a], verts[s.b], NEAR_CLIP) else {
                continue;
            };
            out.push(ProjectedSegment {
                a,
                b,
                color: [rgb[0] * s.shade, rgb[1] * s.shade, rgb[2] * s.shade],
                depth_key: ((a + b) * 0.5).norm(),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clipping() {
        let a = ViewVec::new(0.0, 0.0, 1.0);
        let b = ViewVec::new(1.0, 0.0, -1.0);
        let (p, q) = clip_near(a, b, 0.05).unwrap();
        assert_eq!(p, a);
        assert!((q.z - 0.05).abs() < 1e-15);
        assert!(clip_near(b, b, 0.05).is_none());
        let (p, _) = clip_near(b, a, 0.05).unwrap();
        assert!((p.z - 0.05).abs() < 1e-15);
    }
}
