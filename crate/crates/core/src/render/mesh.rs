use crate::error::Result;
use crate::geometry::PointH2E;
use crate::maps::{klein_lift, KleinPoint};
use crate::tiling::{circum_radius, TilingSpec};

pub const DEFAULT_SUBDIVISIONS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshSegment {
    pub a: usize,
    pub b: usize,
    /// Brightness multiplier applied to the owning cell's colour.
    pub shade: f64,
}

/// Vertices already lifted to the model, drawn once per cell with that
/// cell's isometry.
#[derive(Debug, Clone, PartialEq)]
pub struct SceneMesh {
    pub vertices: Vec<PointH2E>,
    pub segments: Vec<MeshSegment>,
}

impl SceneMesh {
    pub fn from_klein(points: &[KleinPoint], segments: Vec<MeshSegment>) -> Result<Self> {
        let vertices = points
            .iter()
            .map(|k| klein_lift(*k))
            .collect::<Result<Vec<_>>>()?;
        debug_assert!(segments
            .iter()
            .all(|s| s.a < vertices.len() && s.b < vertices.len()));
        Ok(Self { vertices, segments })
    }

    /// Polyline along the subdivided edge with index `edge` (see
    /// [`build_cube_mesh`] for edge order).
    pub fn edge_polyline(&self, edge: usize, subdivisions: usize) -> Vec<usize> {
        let segs = &self.segments[edge * subdivisions..(edge + 1) * subdivisions];
        let mut out = vec![segs[0].a];
        out.extend(segs.iter().map(|s| s.b));
        out
    }
}

const HORIZONTAL_SHADE: f64 = 1.0;
const VERTICAL_SHADE: f64 = 0.75;

/// Corners of the central square in the Klein disk, counterclockwise from
/// the `+x+y` corner. Edges of the square face the `±x`, `±y` directions.
pub fn square_corners_klein() -> [(f64, f64); 4] {
    let c = circum_radius().tanh() * std::f64::consts::FRAC_1_SQRT_2;
    [(c, c), (-c, c), (-c, -c), (c, -c)]
}

/// Wireframe of the central cube authored in Klein×E: bottom square edges,
/// then top square edges, then the four vertical edges, each split into
/// `subdivisions` segments. Corners are vertices `0..8` (bottom then top).
pub fn build_cube_mesh(spec: &TilingSpec, subdivisions: usize) -> Result<SceneMesh> {
    let n = subdivisions.max(1);
    let half = spec.cube_height / 2.0;
    let corners = square_corners_klein();
    let mut points: Vec<KleinPoint> = corners
        .iter()
        .map(|&(x, y)| KleinPoint::new(x, y, -half))
        .chain(corners.iter().map(|&(x, y)| KleinPoint::new(x, y, half)))
        .collect();

    let mut edges = Vec::with_capacity(12);
    for base in [0, 4] {
        for i in 0..4 {
            edges.push((base + i, base + (i + 1) % 4, HORIZONTAL_SHADE));
        }
    }
    for i in 0..4 {
        edges.push((i, i + 4, VERTICAL_SHADE));
    }

    let mut segments = Vec::with_capacity(12 * n);
    for (a, b, shade) in edges {
        let (pa, pb) = (points[a], points[b]);
        let mut prev = a;
        for k in 1..=n {
            let next = if k == n {
                b
            } else {
                let t = k as f64 / n as f64;
                points.push(KleinPoint::new(
                    pa.x + (pb.x - pa.x) * t,
                    pa.y + (pb.y - pa.y) * t,
                    pa.z + (pb.z - pa.z) * t,
                ));
                points.len() - 1
            };
            segments.push(MeshSegment { a: prev, b: next, shade });
            prev = next;
        }
    }
    SceneMesh::from_klein(&points, segments)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::inv_exp_map;
    use crate::tiling::cube_vertex_distance;
    use approx::assert_abs_diff_eq;

    #[test]
    fn single_subdivision_is_a_cube() {
        let m = build_cube_mesh(&TilingSpec::new(0, 0), 1).unwrap();
        assert_eq!(m.vertices.len(), 8);
        assert_eq!(m.segments.len(), 12);
    }

    #[test]
    fn corners_are_equidistant() {
        let m = build_cube_mesh(&TilingSpec::new(0, 0), 8).unwrap();
        for v in &m.vertices[..8] {
            assert_abs_diff_eq!(inv_exp_map(v).norm(), cube_vertex_distance(), epsilon = 1e-12);
            assert!(v.model_defect().abs() < 1e-12);
        }
        assert_eq!(m.vertices.len(), 8 + 12 * 7);
        assert_eq!(m.edge_polyline(0, 8).len(), 9);
    }
}
