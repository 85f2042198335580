//! Geometry engine, wireframe renderer and frame service for H²×E, the
//! product of the hyperbolic plane with the euclidean line.
//!
//! * [`geometry`]: Minkowski algebra, the hyperboloid×line model, metric,
//!   Christoffel symbols and closed-form geodesics.
//! * [`maps`]: exponential map at the origin, its inverse, the Klein×E chart.
//! * [`isometry`]: product isometries, camera pose, relative motion, holonomy.
//! * [`tiling`]: the {4,6}×E honeycomb, teleportation and colouring.
//! * [`render`]: mesh lifting, projection, rasterization, stereo pairs.
//! * [`service`]: the per-session frame loop and its JSON wire protocol.
//! * [`verify`]: the numerical property suite behind `h2xe verify`.

pub mod error;
pub mod geometry;
pub mod isometry;
pub mod maps;
pub mod render;
pub mod scene;
pub mod service;
pub mod tiling;
pub mod verify;
pub mod walk;

pub use error::{Error, Result};
pub use geometry::{PointH2E, TangentVec, Vec4M};
pub use isometry::{CameraPose, IsometryH2E};
