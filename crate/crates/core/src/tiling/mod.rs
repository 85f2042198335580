//! The {4,6}×E cube honeycomb.
//!
//! Cells are addressed by words in six generators and placed by the
//! isometry those words spell. Cell identity is geometric: two words name
//! the same cell when their isometries move the origin to the same place.

mod coloring;
mod words;

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::geometry::PointH2E;
use crate::isometry::{CameraPose, IsometryH2E};

pub use coloring::{color_circle, color_of, color_with_step, ColorIndex, DEFAULT_LAYER_HUE_STEP, PALETTE_SIZE};
pub use words::{CellWord, Letter};

/// Distance from the centre of a {4,6} square to the midpoint of an edge.
pub fn in_radius() -> f64 {
    // cosh r = cos(π/6) / sin(π/4) = √(3/2)
    std::f64::consts::FRAC_1_SQRT_2.asinh()
}

/// Distance from the centre of a {4,6} square to a vertex.
pub fn circum_radius() -> f64 {
    // cosh R = cot(π/4) cot(π/6) = √3
    std::f64::consts::SQRT_2.asinh()
}

/// Translation length between centres of edge-adjacent squares.
pub fn translation_length() -> f64 {
    2.0 * in_radius()
}

/// Cube height for which the tangent-space images of a cube's vertices,
/// seen from its centre, form a euclidean cube: the horizontal half-side
/// `R/√2` equals the half-height.
pub fn default_cube_height() -> f64 {
    std::f64::consts::SQRT_2 * circum_radius()
}

/// Tangent-space distance from a cube's centre to its faces,
/// `arcsinh(√2)/√2`.
pub fn cube_half_width() -> f64 {
    circum_radius() / std::f64::consts::SQRT_2
}

/// Tangent-space distance from a cube's centre to its vertices.
pub fn cube_vertex_distance() -> f64 {
    circum_radius() * 1.5f64.sqrt()
}

pub const MAX_DEPTH: usize = 12;
/// Two cells are the same when their centres are closer than this.
pub const DEDUP_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TilingSpec {
    pub p: u32,
    pub q: u32,
    /// Horizontal BFS depth.
    pub depth: usize,
    /// Cells are drawn in layers `−layers..=layers`.
    pub layers: usize,
    pub cube_height: f64,
}

impl TilingSpec {
    pub fn new(depth: usize, layers: usize) -> Self {
        Self {
            p: 4,
            q: 6,
            depth,
            layers,
            cube_height: default_cube_height(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if (self.p, self.q) != (4, 6) {
            return Err(Error::InvalidTiling(format!(
                "only {{4,6}} is supported, got {{{},{}}}",
                self.p, self.q
            )));
        }
        if self.depth > MAX_DEPTH {
            return Err(Error::InvalidTiling(format!(
                "depth {} exceeds {MAX_DEPTH}",
                self.depth
            )));
        }
        if !(self.cube_height > 0.0 && self.cube_height.is_finite()) {
            return Err(Error::InvalidTiling(format!(
                "cube height {} must be positive",
                self.cube_height
            )));
        }
        Ok(())
    }

    pub fn generator(&self, l: Letter) -> IsometryH2E {
        match l.face() {
            Some(face) => IsometryH2E::boost(
                translation_length(),
                face as f64 * std::f64::consts::FRAC_PI_2,
            ),
            None => IsometryH2E::translate_z(if l == Letter::U {
                self.cube_height
            } else {
                -self.cube_height
            }),
        }
    }

    /// Composition of the generators spelled by `word`, left to right.
    pub fn word_isometry(&self, word: &CellWord) -> IsometryH2E {
        word.letters()
            .iter()
            .fold(IsometryH2E::identity(), |g, &l| g.compose(&self.generator(l)))
    }
}

pub fn generators(spec: &TilingSpec) -> Vec<(Letter, IsometryH2E)> {
    Letter::ALL.iter().map(|&l| (l, spec.generator(l))).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub word: CellWord,
    /// Takes the central cell to this one.
    pub g: IsometryH2E,
    pub layer: i64,
    pub color: ColorIndex,
}

/// Spatial hash over the horizontal part of cell centres.
#[derive(Default)]
pub(crate) struct CentreIndex {
    buckets: HashMap<(i64, i64), Vec<(f64, f64)>>,
}

impl CentreIndex {
    const BUCKET: f64 = 1e-3;

    fn key(x: f64, y: f64) -> (i64, i64) {
        ((x / Self::BUCKET).floor() as i64, (y / Self::BUCKET).floor() as i64)
    }

    pub fn contains(&self, p: &PointH2E, tol: f64) -> bool {
        let (kx, ky) = Self::key(p.x(), p.y());
        (kx - 1..=kx + 1).any(|i| {
            (ky - 1..=ky + 1).any(|j| {
                self.buckets.get(&(i, j)).is_some_and(|v| {
                    v.iter()
                        .any(|&(x, y)| (x - p.x()).hypot(y - p.y()) < tol)
                })
            })
        })
    }

    /// Inserts unless already present; returns whether it was new.
    pub fn insert(&mut self, p: &PointH2E, tol: f64) -> bool {
        if self.contains(p, tol) {
            return false;
        }
        self.buckets
            .entry(Self::key(p.x(), p.y()))
            .or_default()
            .push((p.x(), p.y()));
        true
    }
}

/// Breadth-first expansion of the horizontal tiling, one entry per distinct
/// square, in BFS order.
pub fn horizontal_ball(spec: &TilingSpec) -> Vec<(CellWord, IsometryH2E)> {
    let mut index = CentreIndex::default();
    index.insert(&PointH2E::ORIGIN, DEDUP_TOL);
    let mut out = vec![(CellWord::empty(), IsometryH2E::identity())];
    let mut frontier = 0..1;
    for _ in 0..spec.depth {
        let start = out.len();
        for i in frontier.clone() {
            let (word, g) = out[i].clone();
            for l in Letter::HORIZONTAL {
                if word.letters().last() == Some(&l.inverse()) {
                    continue;
                }
                let h = g.compose(&spec.generator(l));
                let h = h.renormalize().unwrap_or(h);
                if index.insert(&h.origin_image(), DEDUP_TOL) {
                    let mut w = word.clone();
                    w.push(l);
                    out.push((w, h));
                }
            }
        }
        frontier = start..out.len();
    }
    out
}

/// Layer order: 0, 1, −1, 2, −2, ...
fn layer_sequence(layers: usize) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=layers as i64).flat_map(|k| [k, -k]))
}

pub fn build_tiling(spec: &TilingSpec) -> Result<Vec<Cell>> {
    spec.validate()?;
    let ball = horizontal_ball(spec);
    let mut cells = Vec::with_capacity(ball.len() * (2 * spec.layers + 1));
    let empty = CellWord::empty();
    for layer in layer_sequence(spec.layers) {
        let step = if layer >= 0 { Letter::U } else { Letter::V };
        for (hword, g) in &ball {
            let mut word = hword.clone();
            for _ in 0..layer.unsigned_abs() {
                word.push(step);
            }
            let mut g = *g;
            g.dz = layer as f64 * spec.cube_height;
            let color = color_of(&word, &empty);
            cells.push(Cell { word, g, layer, color });
        }
    }
    Ok(cells)
}

/// Tab-separated listing of `cells`: word, layer, the Lorentz block
/// row-major, vertical offset, base colour.
pub fn write_dump<W: std::io::Write>(cells: &[Cell], mut out: W) -> std::io::Result<()> {
    for c in cells {
        write!(out, "{}\t{}", c.word, c.layer)?;
        for r in 0..3 {
            for k in 0..3 {
                write!(out, "\t{:.16e}", c.g.h[(r, k)])?;
            }
        }
        writeln!(out, "\t{:.16e}\t{}", c.g.dz, c.color.base)?;
    }
    Ok(())
}

/// Spacelike unit normal of the geodesic carrying face `face` of the
/// central square, oriented so the centre is on the negative side.
pub fn face_pole(face: usize) -> [f64; 3] {
    let r = in_radius();
    let theta = face as f64 * std::f64::consts::FRAC_PI_2;
    let (s, c) = theta.sin_cos();
    [r.cosh() * c, r.cosh() * s, r.sinh()]
}

/// Signed distances past each face `A, B, C, D, U, V` (positive = outside).
pub fn face_excess(p: &PointH2E, spec: &TilingSpec) -> [f64; 6] {
    let mut out = [0.0; 6];
    for (face, slot) in out.iter_mut().take(4).enumerate() {
        let n = face_pole(face);
        let ip = n[0] * p.x() + n[1] * p.y() - n[2] * p.w();
        // ⟨n, p⟩ = sinh of the signed distance to the face line
        *slot = ip.asinh();
    }
    let half = spec.cube_height / 2.0;
    out[4] = p.z() - half;
    out[5] = -p.z() - half;
    out
}

/// Whether `p` lies in the central cube, and if not, the face it left by
/// (the most exceeded one; ties go to the earlier label).
pub fn cell_test(p: &PointH2E, spec: &TilingSpec) -> (bool, Option<Letter>) {
    let excess = face_excess(p, spec);
    let mut best: Option<(Letter, f64)> = None;
    for (l, &e) in Letter::ALL.iter().zip(excess.iter()) {
        if e > 0.0 && best.is_none_or(|(_, b)| e > b) {
            best = Some((*l, e));
        }
    }
    match best {
        None => (true, None),
        Some((l, _)) => (false, Some(l)),
    }
}

const MAX_TELEPORTS_PER_CALL: usize = 32;

/// Brings the camera back into the central cell by deck transformations,
/// recording each face crossed in `offset`.
pub fn teleport(pose: &CameraPose, spec: &TilingSpec, offset: &CellWord) -> (CameraPose, CellWord) {
    let mut pose = pose.clone();
    let mut offset = offset.clone();
    for _ in 0..MAX_TELEPORTS_PER_CALL {
        let (inside, exit) = cell_test(&pose.position(), spec);
        let Some(l) = exit else { break };
        debug_assert!(!inside);
        let loc = spec.generator(l).inverse().compose(&pose.loc);
        pose = pose.with_loc(loc.renormalize().unwrap_or(loc));
        offset.push(l);
    }
    (pose, offset)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn constants() {
        assert_abs_diff_eq!(in_radius().cosh(), 1.5f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(circum_radius().cosh(), 3f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(circum_radius().tanh(), (2.0f64 / 3.0).sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(default_cube_height() / 2.0, cube_half_width(), epsilon = 1e-15);
        assert_abs_diff_eq!(cube_half_width(), 0.8104969894767537, epsilon = 1e-12);
    }

    #[test]
    fn generator_inverses() {
        let spec = TilingSpec::new(1, 1);
        for l in Letter::ALL {
            let g = spec.generator(l).compose(&spec.generator(l.inverse()));
            assert!((g.h - nalgebra::Matrix3::identity()).abs().max() < 1e-10);
            assert!(g.dz.abs() < 1e-10);
        }
    }

    #[test]
    fn small_balls() {
        let count = |d| build_tiling(&TilingSpec::new(d, 0)).unwrap().len();
        assert_eq!(count(0), 1);
        assert_eq!(count(1), 5);
        assert_eq!(count(2), 17);
        assert_eq!(build_tiling(&TilingSpec::new(1, 2)).unwrap().len(), 25);
    }

    #[test]
    fn layered_cells_carry_layer_and_word() {
        let spec = TilingSpec::new(1, 1);
        for c in build_tiling(&spec).unwrap() {
            assert_eq!(c.layer, c.word.layer());
            let g = spec.word_isometry(&c.word);
            assert!((g.h - c.g.h).abs().max() < 1e-9);
            assert_abs_diff_eq!(g.dz, c.g.dz, epsilon = 1e-12);
        }
    }

    #[test]
    fn cell_test_examples() {
        let spec = TilingSpec::new(1, 1);
        assert_eq!(cell_test(&PointH2E::ORIGIN, &spec), (true, None));
        let above = PointH2E::from_coords(0.0, 0.0, 0.6 * spec.cube_height, 1.0);
        assert_eq!(cell_test(&above, &spec), (false, Some(Letter::U)));
        let below = PointH2E::from_coords(0.0, 0.0, -0.6 * spec.cube_height, 1.0);
        assert_eq!(cell_test(&below, &spec), (false, Some(Letter::V)));
        for l in Letter::HORIZONTAL {
            let p = spec.generator(l).origin_image();
            assert_eq!(cell_test(&p, &spec), (false, Some(l)));
        }
    }

    #[test]
    fn face_excess_is_signed_distance() {
        let spec = TilingSpec::new(0, 0);
        let e = face_excess(&PointH2E::ORIGIN, &spec);
        for d in &e[..4] {
            assert_abs_diff_eq!(*d, -in_radius(), epsilon = 1e-14);
        }
        let p = IsometryH2E::boost(in_radius() + 0.1, 0.0).origin_image();
        assert_abs_diff_eq!(face_excess(&p, &spec)[0], 0.1, epsilon = 1e-12);
    }

    #[test]
    fn teleport_noop_and_single_crossing() {
        let spec = TilingSpec::new(1, 0);
        let pose = CameraPose::default();
        let (same, off) = teleport(&pose, &spec, &CellWord::empty());
        assert_eq!(same, pose);
        assert!(off.is_empty());

        let past = CameraPose::new(IsometryH2E::boost(in_radius() + 1e-3, 0.0), nalgebra::Matrix3::identity());
        let (moved, off) = teleport(&past, &spec, &CellWord::empty());
        assert_eq!(off.to_string(), "A");
        let expected = spec.generator(Letter::C).compose(&past.loc);
        assert!((moved.loc.h - expected.h).abs().max() < 1e-12);
        assert!(cell_test(&moved.position(), &spec).0);
    }

    #[test]
    fn invalid_specs() {
        let mut s = TilingSpec::new(13, 0);
        assert!(s.validate().is_err());
        s = TilingSpec::new(2, 0);
        s.q = 5;
        assert!(s.validate().is_err());
        s = TilingSpec::new(2, 0);
        s.cube_height = 0.0;
        assert!(s.validate().is_err());
    }
}
