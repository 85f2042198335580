//! Isometries of H²×E, camera pose and relative-motion updates.
//!
//! An isometry is stored as a product: a 3×3 Lorentz matrix acting on the
//! hyperboloid coordinates `(x, y, w)` plus a translation along `z`. The two
//! factors never mix.

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::geometry::{PointH2E, TangentVec};
use crate::maps::exp_map;

/// `diag(1, 1, −1)`.
pub fn lorentz_form() -> Matrix3<f64> {
    Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, -1.0))
}

/// Defect above which a matrix is treated as corrupted rather than drifted.
pub const MAX_RENORMALIZE_DEFECT: f64 = 0.01;
/// Renormalize a pose after this many compositions...
pub const RENORMALIZE_EVERY: u32 = 100;
/// ...or as soon as the defect exceeds this.
pub const RENORMALIZE_DEFECT: f64 = 1e-8;
/// Meters of room motion to model units.
pub const DEFAULT_ROOM_SCALE: f64 = 0.4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsometryH2E {
    /// Acts on `(x, y, w)` column vectors.
    pub h: Matrix3<f64>,
    pub dz: f64,
}

impl Default for IsometryH2E {
    fn default() -> Self {
        Self::identity()
    }
}

impl IsometryH2E {
    pub fn identity() -> Self {
        Self {
            h: Matrix3::identity(),
            dz: 0.0,
        }
    }

    pub fn translate_z(dz: f64) -> Self {
        Self {
            h: Matrix3::identity(),
            dz,
        }
    }

    /// Rotation by `angle` about the vertical axis through the origin.
    pub fn rotation(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self {
            h: Matrix3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0),
            dz: 0.0,
        }
    }

    /// Hyperbolic translation by `dist` along the horizontal direction `theta`.
    pub fn boost(dist: f64, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        let ch = dist.cosh();
        let sh = dist.sinh();
        let k = ch - 1.0;
        Self {
            h: Matrix3::new(
                1.0 + k * c * c,
                k * c * s,
                sh * c,
                k * c * s,
                1.0 + k * s * s,
                sh * s,
                sh * c,
                sh * s,
                ch,
            ),
            dz: 0.0,
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &IsometryH2E) -> IsometryH2E {
        IsometryH2E {
            h: self.h * other.h,
            dz: self.dz + other.dz,
        }
    }

    pub fn inverse(&self) -> IsometryH2E {
        let j = lorentz_form();
        IsometryH2E {
            h: j * self.h.transpose() * j,
            dz: -self.dz,
        }
    }

    pub fn apply(&self, p: &PointH2E) -> PointH2E {
        let m = &self.h;
        let (x, y, w) = (p.x(), p.y(), p.w());
        PointH2E::from_coords(
            m[(0, 0)] * x + m[(0, 1)] * y + m[(0, 2)] * w,
            m[(1, 0)] * x + m[(1, 1)] * y + m[(1, 2)] * w,
            p.z() + self.dz,
            m[(2, 0)] * x + m[(2, 1)] * y + m[(2, 2)] * w,
        )
    }

    pub fn origin_image(&self) -> PointH2E {
        PointH2E::from_coords(self.h[(0, 2)], self.h[(1, 2)], self.dz, self.h[(2, 2)])
    }

    /// Largest entry of `HᵀJH − J`.
    pub fn defect(&self) -> f64 {
        let j = lorentz_form();
        (self.h.transpose() * j * self.h - j).abs().max()
    }

    /// Minkowski Gram–Schmidt on the columns of `H`: the timelike column is
    /// normalized first, then the two spacelike columns are orthogonalized
    /// against it and each other.
    pub fn renormalize(&self) -> Result<IsometryH2E> {
        let defect = self.defect();
        if !(defect < MAX_RENORMALIZE_DEFECT) {
            return Err(Error::PoseCorrupted { defect });
        }
        let ip = |a: &Vector3<f64>, b: &Vector3<f64>| a.x * b.x + a.y * b.y - a.z * b.z;
        let mut c0: Vector3<f64> = self.h.column(0).into();
        let mut c1: Vector3<f64> = self.h.column(1).into();
        let mut c2: Vector3<f64> = self.h.column(2).into();

        c2 /= (-ip(&c2, &c2)).sqrt();
        c0 += c2 * ip(&c0, &c2);
        c0 /= ip(&c0, &c0).sqrt();
        c1 += c2 * ip(&c1, &c2);
        c1 -= c0 * ip(&c1, &c0);
        c1 /= ip(&c1, &c1).sqrt();

        Ok(IsometryH2E {
            h: Matrix3::from_columns(&[c0, c1, c2]),
            dz: self.dz,
        })
    }

    /// Rotation angle of `H` about the origin's vertical axis. Only
    /// meaningful when the isometry fixes the origin.
    pub fn rotation_angle(&self) -> f64 {
        self.h[(1, 0)].atan2(self.h[(0, 0)])
    }
}

/// The translation taking the origin to `exp_map(dir)` without rotating the
/// tangent frame at the origin.
pub fn translation_from_tangent(dir: TangentVec) -> IsometryH2E {
    let rho = dir.horizontal_norm();
    let mut g = if rho == 0.0 {
        IsometryH2E::identity()
    } else {
        IsometryH2E::boost(rho, dir.v.atan2(dir.u))
    };
    g.dz = dir.z;
    debug_assert!(g.origin_image().distance(&exp_map(dir)) < 1e-6 * (1.0 + rho.cosh()));
    g
}

/// Maps camera-local axes `(right, up, forward)` to tangent coordinates
/// `(u, v, z)`: right is `u`, up is the vertical `z`, forward is `v`.
pub fn camera_basis() -> Matrix3<f64> {
    Matrix3::new(1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 0.0)
}

/// Largest entry of `FᵀF − I`.
pub fn frame_defect(frame: &Matrix3<f64>) -> f64 {
    (frame.transpose() * frame - Matrix3::identity()).abs().max()
}

/// Nearest orthogonal matrix (polar factor), for frames that have drifted
/// by less than `MAX_RENORMALIZE_DEFECT`.
pub fn orthonormalize_frame(frame: &Matrix3<f64>) -> Result<Matrix3<f64>> {
    let defect = frame_defect(frame);
    if !(defect < MAX_RENORMALIZE_DEFECT) {
        return Err(Error::FrameNotOrthogonal { defect });
    }
    let svd = frame.svd(true, true);
    match (svd.u, svd.v_t) {
        (Some(u), Some(v_t)) => Ok(u * v_t),
        _ => Err(Error::FrameNotOrthogonal { defect }),
    }
}

/// Camera orientation from yaw (about the vertical, positive turns right)
/// and pitch (positive looks up).
pub fn frame_from_yaw_pitch(yaw: f64, pitch: f64) -> Matrix3<f64> {
    let (sy, cy) = yaw.sin_cos();
    let (sp, cp) = pitch.sin_cos();
    // columns are right, up, forward in the (right, up, forward) reference axes
    let right = Vector3::new(cy, 0.0, -sy);
    let forward = Vector3::new(sy * cp, sp, cy * cp);
    let up = Vector3::new(-sy * sp, cp, -cy * sp);
    Matrix3::from_columns(&[right, up, forward])
}

#[derive(Debug, Clone, PartialEq)]
pub struct CameraPose {
    /// Takes the origin to the camera position.
    pub loc: IsometryH2E,
    /// Columns are the camera's right, up and forward axes, expressed in the
    /// reference camera axes (see [`camera_basis`]).
    pub frame: Matrix3<f64>,
    composes_since_renormalize: u32,
}

impl Default for CameraPose {
    fn default() -> Self {
        Self::new(IsometryH2E::identity(), Matrix3::identity())
    }
}

impl CameraPose {
    pub fn new(loc: IsometryH2E, frame: Matrix3<f64>) -> Self {
        Self {
            loc,
            frame,
            composes_since_renormalize: 0,
        }
    }

    pub fn position(&self) -> PointH2E {
        self.loc.origin_image()
    }

    /// Tangent-space direction of a camera-local vector.
    pub fn local_to_tangent(&self, local: &Vector3<f64>) -> TangentVec {
        let t = camera_basis() * self.frame * local;
        TangentVec::new(t.x, t.y, t.z)
    }

    /// Camera-local `(right, up, forward)` coordinates of a tangent vector.
    pub fn tangent_to_local(&self, t: &TangentVec) -> Vector3<f64> {
        self.view_matrix() * Vector3::new(t.u, t.v, t.z)
    }

    /// `frameᵀ · basisᵀ`, the tangent-to-camera rotation.
    pub fn view_matrix(&self) -> Matrix3<f64> {
        self.frame.transpose() * camera_basis().transpose()
    }

    /// Replaces `loc`, resetting the renormalization counter.
    pub fn with_loc(&self, loc: IsometryH2E) -> CameraPose {
        CameraPose::new(loc, self.frame)
    }

    fn compose_tracked(&self, g: &IsometryH2E) -> Result<IsometryH2E> {
        let loc = self.loc.compose(g);
        if self.composes_since_renormalize + 1 >= RENORMALIZE_EVERY
            || loc.defect() > RENORMALIZE_DEFECT
        {
            loc.renormalize()
        } else {
            Ok(loc)
        }
    }
}

/// A per-frame displacement of the viewer, in camera-local axes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoomDelta {
    /// `(right, up, forward)` in meters.
    pub d: Vector3<f64>,
    /// Model units per meter.
    pub scale: f64,
}

impl RoomDelta {
    pub fn new(d: Vector3<f64>, scale: f64) -> Self {
        debug_assert!(scale > 0.0);
        Self { d, scale }
    }
}

/// Moves the camera by `delta` in its own tangent space, then adopts
/// `new_frame` as the orientation. The same room motion produces the same
/// model motion wherever the camera is.
pub fn apply_motion(
    pose: &CameraPose,
    delta: &RoomDelta,
    new_frame: &Matrix3<f64>,
) -> Result<CameraPose> {
    let step = translation_from_tangent(pose.local_to_tangent(&(delta.d * delta.scale)));
    let loc = pose.compose_tracked(&step)?;
    let renormalized = loc != pose.loc.compose(&step);
    Ok(CameraPose {
        loc,
        frame: *new_frame,
        composes_since_renormalize: if renormalized {
            0
        } else {
            pose.composes_since_renormalize + 1
        },
    })
}

/// Closure tolerance for [`holonomy_angle`].
pub const LOOP_CLOSURE_TOL: f64 = 1e-6;

/// Rotation left over after walking the closed loop `legs`, each leg taken
/// in the frame carried along by the previous legs.
///
/// A counterclockwise loop in the H² plane rotates the frame clockwise by
/// the enclosed area, so the returned angle is `−A` for such a loop.
pub fn holonomy_angle(legs: &[TangentVec]) -> Result<f64> {
    let g = legs.iter().fold(IsometryH2E::identity(), |acc, leg| {
        acc.compose(&translation_from_tangent(*leg))
    });
    let image = g.origin_image();
    let defect = image.horizontal_distance(&PointH2E::ORIGIN);
    if !(defect <= LOOP_CLOSURE_TOL) {
        return Err(Error::LoopNotClosed { defect });
    }
    if g.dz.abs() > 1e-9 {
        return Err(Error::LoopVerticalOffset { dz: g.dz });
    }
    Ok(g.rotation_angle())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn max_diff(a: &IsometryH2E, b: &IsometryH2E) -> f64 {
        (a.h - b.h).abs().max().max((a.dz - b.dz).abs())
    }

    #[test]
    fn compose_examples() {
        let g = translation_from_tangent(TangentVec::new(0.3, -0.2, 0.7));
        assert_eq!(IsometryH2E::identity().compose(&g), g);
        let z = IsometryH2E::translate_z(1.0).compose(&IsometryH2E::translate_z(2.0));
        assert_eq!(z, IsometryH2E::translate_z(3.0));
        let id = IsometryH2E::boost(0.5, 0.0).compose(&IsometryH2E::boost(-0.5, 0.0));
        assert!(max_diff(&id, &IsometryH2E::identity()) < 1e-12);
    }

    #[test]
    fn apply_examples() {
        let p = PointH2E::from_coords(0.3, 0.4, 1.0, (1.25f64).sqrt());
        assert_eq!(IsometryH2E::identity().apply(&p), p);
        assert_eq!(
            IsometryH2E::translate_z(2.0).apply(&PointH2E::ORIGIN),
            PointH2E::from_coords(0.0, 0.0, 2.0, 1.0)
        );
        let q = IsometryH2E::boost(1.0, 0.0).apply(&PointH2E::ORIGIN);
        assert_abs_diff_eq!(q.x(), 1f64.sinh(), epsilon = 1e-15);
        assert_abs_diff_eq!(q.w(), 1f64.cosh(), epsilon = 1e-15);
    }

    #[test]
    fn translation_examples() {
        assert_eq!(translation_from_tangent(TangentVec::ZERO), IsometryH2E::identity());
        let g = translation_from_tangent(TangentVec::new(1.0, 0.0, 0.0));
        assert_abs_diff_eq!(g.h[(0, 0)], 1f64.cosh(), epsilon = 1e-15);
        assert_abs_diff_eq!(g.h[(0, 2)], 1f64.sinh(), epsilon = 1e-15);
        assert_abs_diff_eq!(g.h[(1, 1)], 1.0, epsilon = 1e-15);
        let v = translation_from_tangent(TangentVec::new(0.0, 0.0, 2.5));
        assert_eq!(v, IsometryH2E::translate_z(2.5));
        let dir = TangentVec::new(-0.4, 1.1, 0.2);
        let img = translation_from_tangent(dir).origin_image();
        assert!(img.vec().ambient_distance(exp_map(dir).vec()) < 1e-12);
    }

    #[test]
    fn boost_has_no_rotation_at_origin() {
        // the boost fixes its axis direction: the pulled-back tangent of the
        // geodesic through the origin is unchanged
        let g = IsometryH2E::boost(0.8, 0.6);
        let ahead = IsometryH2E::boost(1.3, 0.6).origin_image();
        let back = g.inverse().apply(&ahead);
        assert_abs_diff_eq!(back.y().atan2(back.x()), 0.6, epsilon = 1e-12);
    }

    #[test]
    fn renormalize_repairs_noise() {
        let g = IsometryH2E::boost(0.3, 0.0);
        assert!(max_diff(&g.renormalize().unwrap(), &g) < 1e-12);
        let mut noisy = g;
        for (i, e) in noisy.h.iter_mut().enumerate() {
            *e += 1e-6 * (((i * 7) % 5) as f64 - 2.0) / 2.0;
        }
        let input_defect = noisy.defect();
        let fixed = noisy.renormalize().unwrap();
        assert!(fixed.defect() < 1e-12);
        assert!((fixed.h - noisy.h).abs().max() <= 10.0 * input_defect);
        let moved = fixed.origin_image().distance(&g.origin_image());
        assert!(moved < 1e-5);
        assert!(fixed.h.determinant() > 0.0);
        assert!(fixed.h[(2, 2)] >= 1.0);
    }

    #[test]
    fn renormalize_rejects_corruption() {
        let mut g = IsometryH2E::identity();
        g.h[(0, 0)] = 1.5;
        assert!(matches!(g.renormalize(), Err(Error::PoseCorrupted { .. })));
    }

    #[test]
    fn motion_from_identity() {
        let pose = CameraPose::default();
        let delta = RoomDelta::new(Vector3::new(0.0, 0.0, 1.0), 1.0);
        let moved = apply_motion(&pose, &delta, &Matrix3::identity()).unwrap();
        // forward is the tangent v axis
        let expected = translation_from_tangent(TangentVec::new(0.0, 1.0, 0.0));
        assert!(max_diff(&moved.loc, &expected) < 1e-15);

        let still = apply_motion(
            &pose,
            &RoomDelta::new(Vector3::zeros(), 0.4),
            &frame_from_yaw_pitch(0.3, 0.1),
        )
        .unwrap();
        assert_eq!(still.loc, pose.loc);
        assert_eq!(still.frame, frame_from_yaw_pitch(0.3, 0.1));
    }

    #[test]
    fn yaw_pitch_frames_are_orthogonal() {
        for &(y, p) in &[(0.0, 0.0), (0.7, -0.4), (-2.0, 1.2)] {
            let f = frame_from_yaw_pitch(y, p);
            assert!(frame_defect(&f) < 1e-15);
            assert_abs_diff_eq!(f.determinant(), 1.0, epsilon = 1e-12);
        }
        let up = frame_from_yaw_pitch(0.0, std::f64::consts::FRAC_PI_2);
        let pose = CameraPose::new(IsometryH2E::identity(), up);
        let fwd = pose.local_to_tangent(&Vector3::new(0.0, 0.0, 1.0));
        assert_abs_diff_eq!(fwd.z, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn frame_renormalization_thresholds() {
        let mut f = frame_from_yaw_pitch(0.4, 0.2);
        f[(0, 0)] += 1e-3;
        let fixed = orthonormalize_frame(&f).unwrap();
        assert!(frame_defect(&fixed) < 1e-12);
        let mut bad = Matrix3::identity();
        bad[(1, 1)] = 1.5;
        assert!(matches!(orthonormalize_frame(&bad), Err(Error::FrameNotOrthogonal { .. })));
    }

    #[test]
    fn holonomy_errors_and_degenerate_loop() {
        let leg = TangentVec::new(0.4, 0.1, 0.2);
        let back = leg.scale(-1.0);
        assert_abs_diff_eq!(holonomy_angle(&[leg, back]).unwrap(), 0.0, epsilon = 1e-12);
        assert!(matches!(holonomy_angle(&[leg]), Err(Error::LoopNotClosed { .. })));
    }

    #[test]
    fn holonomy_sign_for_counterclockwise_loop() {
        // right, forward, left, back in the plane: counterclockwise seen from +z
        let d = 0.5;
        let legs = [
            TangentVec::new(d, 0.0, 0.0),
            TangentVec::new(0.0, d, 0.0),
            TangentVec::new(-d, 0.0, 0.0),
        ];
        let g = legs.iter().fold(IsometryH2E::identity(), |a, l| a.compose(&translation_from_tangent(*l)));
        let back = crate::maps::inv_exp_map(&g.inverse().apply(&PointH2E::ORIGIN));
        let mut all = legs.to_vec();
        all.push(back);
        assert!(holonomy_angle(&all).unwrap() < 0.0);
    }
}
