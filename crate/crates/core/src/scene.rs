//! A built honeycomb plus cube mesh, and the named viewpoints used for the
//! reference renders.

use std::str::FromStr;

use nalgebra::Matrix3;

use crate::error::{Error, Result};
use crate::isometry::{frame_from_yaw_pitch, CameraPose};
use crate::render::{build_cube_mesh, project_scene, render_frame, FrameImage, RenderSettings, SceneMesh};
use crate::tiling::{build_tiling, color_of, Cell, CellWord, TilingSpec};

pub const DEFAULT_LAYERS: usize = 3;

/// Reference viewing directions from the centre of the central cube.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum View {
    /// Level, looking along the hyperbolic plane.
    H2,
    /// Straight up the euclidean line.
    E,
    /// Halfway between the two.
    Diag,
    /// Diagonal towards a vertical edge of the cube.
    Diag2,
}

impl View {
    pub const ALL: [View; 4] = [View::H2, View::E, View::Diag, View::Diag2];

    pub fn frame(self) -> Matrix3<f64> {
        use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
        match self {
            View::H2 => Matrix3::identity(),
            View::E => frame_from_yaw_pitch(0.0, FRAC_PI_2),
            View::Diag => frame_from_yaw_pitch(0.0, FRAC_PI_4),
            View::Diag2 => frame_from_yaw_pitch(FRAC_PI_4, 0.6),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            View::H2 => "h2",
            View::E => "e",
            View::Diag => "diag",
            View::Diag2 => "diag2",
        }
    }
}

impl FromStr for View {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        View::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::UnknownView(s.to_string()))
    }
}

#[derive(Debug, Clone)]
pub struct Scene {
    pub spec: TilingSpec,
    pub cells: Vec<Cell>,
    pub mesh: SceneMesh,
}

impl Scene {
    pub fn build(spec: TilingSpec, subdivisions: usize) -> Result<Self> {
        Ok(Self {
            cells: build_tiling(&spec)?,
            mesh: build_cube_mesh(&spec, subdivisions)?,
            spec,
        })
    }

    /// Cells recoloured for a camera whose central cell is `offset`.
    pub fn recolored(&self, offset: &CellWord) -> Vec<Cell> {
        self.cells
            .iter()
            .map(|c| Cell {
                color: color_of(&c.word, offset),
                ..c.clone()
            })
            .collect()
    }

    pub fn render(&self, pose: &CameraPose, settings: &RenderSettings) -> Result<FrameImage> {
        render_frame(&project_scene(pose, &self.cells, &self.mesh), settings)
    }

    pub fn render_view(&self, view: View, settings: &RenderSettings) -> Result<FrameImage> {
        self.render(&CameraPose::new(Default::default(), view.frame()), settings)
    }
}
