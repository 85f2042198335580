//! Exponential map at the origin, its inverse, and the Klein×E chart used
//! for authoring meshes.
//!
//! The inverse exponential map is what the renderer uses to draw: it sends a
//! point to the initial velocity of the geodesic that reaches it at `t = 1`,
//! so light rays become straight lines in the tangent space.

use crate::error::{Error, Result};
use crate::geometry::{geodesic_point, PointH2E, TangentVec};

/// A point of the Klein disk times the line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KleinPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl KleinPoint {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }
}

const KLEIN_MARGIN: f64 = 1e-12;
const SERIES_CUTOFF: f64 = 1e-4;

pub fn exp_map(dir: TangentVec) -> PointH2E {
    geodesic_point(dir, 1.0)
}

/// `arcsinh(r) / r`, with the limit value near `r = 0`.
pub(crate) fn asinh_over_r(r: f64) -> f64 {
    if r < SERIES_CUTOFF {
        let r2 = r * r;
        1.0 - r2 / 6.0 + 3.0 * r2 * r2 / 40.0
    } else {
        r.asinh() / r
    }
}

pub fn inv_exp_map(p: &PointH2E) -> TangentVec {
    let r = p.x().hypot(p.y());
    let k = asinh_over_r(r);
    TangentVec::new(k * p.x(), k * p.y(), p.z())
}

/// Lifts a Klein×E point onto the hyperboloid×E.
pub fn klein_lift(k: KleinPoint) -> Result<PointH2E> {
    let r2 = k.x * k.x + k.y * k.y;
    if !(r2 < 1.0 - KLEIN_MARGIN) {
        return Err(Error::OutsideKleinDisk { x: k.x, y: k.y });
    }
    let w = 1.0 / (1.0 - r2).sqrt();
    Ok(PointH2E::from_coords(k.x * w, k.y * w, k.z, w))
}

pub fn klein_project(p: &PointH2E) -> KleinPoint {
    KleinPoint::new(p.x() / p.w(), p.y() / p.w(), p.z())
}

/// Angle at the origin between the true viewing direction of `p` and the
/// direction one would draw it in by treating Klein×E as if it were E³.
///
/// Zero for points on the horizontal plane or the vertical axis; positive in
/// every other direction.
pub fn klein_straightline_error(p: &PointH2E) -> f64 {
    let t = inv_exp_map(p);
    let k = klein_project(p);
    let s = TangentVec::new(k.x, k.y, k.z);
    angle_between(&t, &s)
}

pub(crate) fn angle_between(a: &TangentVec, b: &TangentVec) -> f64 {
    let cross = TangentVec::new(
        a.v * b.z - a.z * b.v,
        a.z * b.u - a.u * b.z,
        a.u * b.v - a.v * b.u,
    );
    let n = cross.norm();
    let d = a.dot(b);
    if n == 0.0 && d == 0.0 {
        return 0.0;
    }
    n.atan2(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{param_to_point, ParamCoords};
    use approx::assert_abs_diff_eq;

    #[test]
    fn exp_examples() {
        assert_eq!(exp_map(TangentVec::ZERO), PointH2E::ORIGIN);
        let p = exp_map(TangentVec::new(1.0, 0.0, 2.0));
        assert_abs_diff_eq!(p.x(), 1f64.sinh(), epsilon = 1e-15);
        assert_eq!(p.z(), 2.0);
        let far = exp_map(TangentVec::new(30.0, 0.0, 0.0));
        assert_abs_diff_eq!(far.w() / 30f64.cosh(), 1.0, epsilon = 1e-14);
        let very_far = exp_map(TangentVec::new(0.0, 700.0, 0.0));
        assert!(very_far.vec().is_finite());
    }

    #[test]
    fn inv_exp_examples() {
        assert_eq!(
            inv_exp_map(&PointH2E::from_coords(0.0, 0.0, 7.0, 1.0)),
            TangentVec::new(0.0, 0.0, 7.0)
        );
        let t = inv_exp_map(&PointH2E::from_coords(1f64.sinh(), 0.0, 2.0, 1f64.cosh()));
        assert_abs_diff_eq!(t.u, 1.0, epsilon = 1e-15);
        assert_eq!(t.z, 2.0);
        let p = PointH2E::from_coords(3f64.sinh() * 1f64.cos(), 3f64.sinh() * 1f64.sin(), -4.0, 3f64.cosh());
        let t = inv_exp_map(&p);
        assert_abs_diff_eq!(t.u, 3.0 * 1f64.cos(), epsilon = 1e-12);
        assert_abs_diff_eq!(t.v, 3.0 * 1f64.sin(), epsilon = 1e-12);
        assert_eq!(t.z, -4.0);
    }

    #[test]
    fn series_matches_direct_at_cutoff() {
        let r = SERIES_CUTOFF * 0.999_999;
        assert_abs_diff_eq!(asinh_over_r(r), r.asinh() / r, epsilon = 1e-15);
        assert_eq!(asinh_over_r(0.0), 1.0);
    }

    #[test]
    fn klein_examples() {
        let p = klein_lift(KleinPoint::new(0.0, 0.0, 1.5)).unwrap();
        assert_eq!(p, PointH2E::from_coords(0.0, 0.0, 1.5, 1.0));
        let p = klein_lift(KleinPoint::new(0.6, 0.0, 0.5)).unwrap();
        assert_abs_diff_eq!(p.x(), 0.75, epsilon = 1e-15);
        assert_abs_diff_eq!(p.w(), 1.25, epsilon = 1e-15);
        let p = klein_lift(KleinPoint::new(1.0 / 3f64.sqrt(), 0.0, 0.0)).unwrap();
        assert_abs_diff_eq!(p.x(), 0.5f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(p.w(), 1.5f64.sqrt(), epsilon = 1e-15);
        assert!(matches!(
            klein_lift(KleinPoint::new(0.8, 0.6, 0.0)),
            Err(Error::OutsideKleinDisk { .. })
        ));
        let k = klein_project(&PointH2E::from_coords(0.75, 0.0, 0.5, 1.25));
        assert_abs_diff_eq!(k.x, 0.6, epsilon = 1e-15);
        assert_eq!(k.z, 0.5);
    }

    #[test]
    fn straightline_error() {
        let h = param_to_point(ParamCoords::new(1.0, 0.0, 0.0));
        assert_eq!(klein_straightline_error(&h), 0.0);
        assert_eq!(klein_straightline_error(&PointH2E::from_coords(0.0, 0.0, 2.0, 1.0)), 0.0);
        let d = param_to_point(ParamCoords::new(1.0, 0.0, 1.0));
        let expected = std::f64::consts::FRAC_PI_4 - 1f64.tanh().atan();
        assert_abs_diff_eq!(klein_straightline_error(&d), expected, epsilon = 1e-12);
        assert!(expected > 0.05);
    }
}
