//! Minkowski algebra and the hyperboloid-times-line model of H²×E.
//!
//! Points live in E^{3,1} with coordinates `(x, y, z, w)`. The triple
//! `(x, y, w)` is a point of the hyperboloid `x² + y² − w² = −1, w > 0` and
//! `z` is the euclidean height. Everything here is closed-form; the geodesic
//! equation is only ever evaluated as a residual check.

use std::f64::consts::TAU;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

/// A vector in E^{3,1}. `w` is the timelike coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec4M {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub w: f64,
}

impl Vec4M {
    pub const fn new(x: f64, y: f64, z: f64, w: f64) -> Self {
        Self { x, y, z, w }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite() && self.w.is_finite()
    }

    /// Euclidean distance in the ambient coordinates. Only meaningful as a
    /// numerical closeness test, not as a geometric quantity.
    pub fn ambient_distance(&self, other: &Self) -> f64 {
        let d = *self - *other;
        (d.x * d.x + d.y * d.y + d.z * d.z + d.w * d.w).sqrt()
    }
}

impl Add for Vec4M {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z, self.w + o.w)
    }
}

impl Sub for Vec4M {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z, self.w - o.w)
    }
}

impl Mul<f64> for Vec4M {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s, self.w * s)
    }
}

/// Minkowski inner product with signature (+, +, +, −).
pub fn minkowski_inner(a: &Vec4M, b: &Vec4M) -> f64 {
    a.x * b.x + a.y * b.y + a.z * b.z - a.w * b.w
}

/// A point of the model surface.
///
/// Construction through [`PointH2E::new`] does not re-project; callers that
/// produce points by long chains of arithmetic should use
/// [`PointH2E::normalized`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointH2E(Vec4M);

impl PointH2E {
    pub const ORIGIN: PointH2E = PointH2E(Vec4M::new(0.0, 0.0, 0.0, 1.0));

    pub fn new(v: Vec4M) -> Self {
        Self(v)
    }

    pub fn from_coords(x: f64, y: f64, z: f64, w: f64) -> Self {
        Self(Vec4M::new(x, y, z, w))
    }

    /// Pushes `(x, y, w)` back onto the upper sheet by recomputing `w`.
    pub fn normalized(v: Vec4M) -> Self {
        let w = (1.0 + v.x * v.x + v.y * v.y).sqrt();
        Self(Vec4M::new(v.x, v.y, v.z, w))
    }

    pub fn vec(&self) -> &Vec4M {
        &self.0
    }

    pub fn x(&self) -> f64 {
        self.0.x
    }
    pub fn y(&self) -> f64 {
        self.0.y
    }
    pub fn z(&self) -> f64 {
        self.0.z
    }
    pub fn w(&self) -> f64 {
        self.0.w
    }

    /// `x² + y² − w² + 1`; zero on the model.
    pub fn model_defect(&self) -> f64 {
        self.0.x * self.0.x + self.0.y * self.0.y - self.0.w * self.0.w + 1.0
    }

    /// Horizontal hyperbolic distance from the vertical axis through the origin.
    pub fn horizontal_radius(&self) -> f64 {
        self.0.x.hypot(self.0.y).asinh()
    }

    /// Distance in H² between the horizontal parts of two points.
    pub fn horizontal_distance(&self, other: &PointH2E) -> f64 {
        // chord form 4 sinh²(d/2) = ⟨p − q, p − q⟩ stays accurate for close points
        let (dx, dy, dw) = (self.0.x - other.0.x, self.0.y - other.0.y, self.0.w - other.0.w);
        let chord2 = (dx * dx + dy * dy - dw * dw).max(0.0);
        2.0 * (chord2.sqrt() / 2.0).asinh()
    }

    /// Geodesic distance in H²×E.
    pub fn distance(&self, other: &PointH2E) -> f64 {
        self.horizontal_distance(other).hypot(self.0.z - other.0.z)
    }
}

/// Polar chart coordinates `(ρ, θ, z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamCoords {
    pub rho: f64,
    pub theta: f64,
    pub z: f64,
}

impl ParamCoords {
    /// Builds chart coordinates, folding a negative radius into the angle and
    /// wrapping the angle into `[0, 2π)`.
    pub fn new(rho: f64, theta: f64, z: f64) -> Self {
        let (rho, theta) = if rho < 0.0 {
            (-rho, theta + std::f64::consts::PI)
        } else {
            (rho, theta)
        };
        Self {
            rho,
            theta: wrap_angle(theta),
            z,
        }
    }
}

/// Wraps an angle into `[0, 2π)`.
pub fn wrap_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    // rem_euclid can return TAU itself for tiny negative inputs
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// A vector in the tangent space at the origin, in cartesian form.
///
/// `(u, v)` is the horizontal (H²) part and `z` the vertical (E) part. This
/// is also the E³ in which projected geometry is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TangentVec {
    pub u: f64,
    pub v: f64,
    pub z: f64,
}

impl TangentVec {
    pub const ZERO: TangentVec = TangentVec {
        u: 0.0,
        v: 0.0,
        z: 0.0,
    };

    pub const fn new(u: f64, v: f64, z: f64) -> Self {
        Self { u, v, z }
    }

    pub fn from_polar(rho0: f64, theta0: f64, z0: f64) -> Self {
        let (s, c) = theta0.sin_cos();
        Self::new(rho0 * c, rho0 * s, z0)
    }

    /// `(ρ₀, θ₀, z₀)`; θ₀ is 0 when the horizontal part vanishes.
    pub fn to_polar(&self) -> (f64, f64, f64) {
        let rho = self.u.hypot(self.v);
        let theta = if rho == 0.0 {
            0.0
        } else {
            wrap_angle(self.v.atan2(self.u))
        };
        (rho, theta, self.z)
    }

    pub fn horizontal_norm(&self) -> f64 {
        self.u.hypot(self.v)
    }

    pub fn norm(&self) -> f64 {
        (self.u * self.u + self.v * self.v + self.z * self.z).sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.u * s, self.v * s, self.z * s)
    }

    pub fn dot(&self, o: &Self) -> f64 {
        self.u * o.u + self.v * o.v + self.z * o.z
    }

    pub fn is_finite(&self) -> bool {
        self.u.is_finite() && self.v.is_finite() && self.z.is_finite()
    }
}

impl Add for TangentVec {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.u + o.u, self.v + o.v, self.z + o.z)
    }
}

impl Sub for TangentVec {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.u - o.u, self.v - o.v, self.z - o.z)
    }
}

/// Diagonal metric components in the polar chart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricTensor {
    pub g_rho_rho: f64,
    pub g_theta_theta: f64,
    pub g_zz: f64,
}

/// The nonzero Christoffel symbols of the polar chart at a given radius.
/// `Γ^θ_θρ` equals `Γ^θ_ρθ`; every symbol with a `z` index vanishes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChristoffelTable {
    pub rho_theta_theta: f64,
    pub theta_rho_theta: f64,
}

impl ChristoffelTable {
    /// Full lookup `Γ^λ_μν` with indices 0 = ρ, 1 = θ, 2 = z.
    pub fn get(&self, lambda: usize, mu: usize, nu: usize) -> f64 {
        match (lambda, mu, nu) {
            (0, 1, 1) => self.rho_theta_theta,
            (1, 0, 1) | (1, 1, 0) => self.theta_rho_theta,
            _ => 0.0,
        }
    }
}

/// `φ(ρ, θ, z) = (sinh ρ cos θ, sinh ρ sin θ, z, cosh ρ)`.
pub fn param_to_point(c: ParamCoords) -> PointH2E {
    let (s, co) = c.theta.sin_cos();
    let sh = c.rho.sinh();
    PointH2E::from_coords(sh * co, sh * s, c.z, c.rho.cosh())
}

/// Inverse chart.
pub fn point_to_param(p: &PointH2E) -> ParamCoords {
    let r = p.x().hypot(p.y());
    let theta = if r == 0.0 {
        0.0
    } else {
        wrap_angle(p.y().atan2(p.x()))
    };
    ParamCoords {
        rho: r.asinh(),
        theta,
        z: p.z(),
    }
}

pub fn metric_components(rho: f64) -> MetricTensor {
    let s = rho.sinh();
    MetricTensor {
        g_rho_rho: 1.0,
        g_theta_theta: s * s,
        g_zz: 1.0,
    }
}

/// Christoffel symbols at `rho`. The polar chart is singular on the axis.
pub fn christoffel(rho: f64) -> Result<ChristoffelTable> {
    if rho <= 0.0 || !rho.is_finite() {
        return Err(Error::PolarAxis { rho });
    }
    Ok(ChristoffelTable {
        rho_theta_theta: -rho.cosh() * rho.sinh(),
        theta_rho_theta: 1.0 / rho.tanh(),
    })
}

/// The geodesic from the origin with initial velocity `dir`, at time `t`.
pub fn geodesic_point(dir: TangentVec, t: f64) -> PointH2E {
    let rho0 = dir.horizontal_norm();
    let r = rho0 * t;
    let sh = r.sinh();
    // (u, v)/ρ₀ is the unit direction; multiply through to avoid dividing by zero
    let (x, y) = if rho0 == 0.0 {
        (0.0, 0.0)
    } else {
        (sh * dir.u / rho0, sh * dir.v / rho0)
    };
    PointH2E::from_coords(x, y, dir.z * t, r.cosh())
}

/// Central finite-difference step used by the residual checks.
pub const RESIDUAL_STEP: f64 = 1e-4;

/// Largest geodesic-equation residual of `curve` over `t_samples`, with the
/// derivatives of `(ρ, θ, z)` taken by central differences.
///
/// The samples must stay off the axis `ρ = 0`.
pub fn geodesic_equation_residual<F>(curve: F, t_samples: &[f64]) -> f64
where
    F: Fn(f64) -> PointH2E,
{
    let h = RESIDUAL_STEP;
    let mut worst = 0.0f64;
    for &t in t_samples {
        let c0 = point_to_param(&curve(t - h));
        let c1 = point_to_param(&curve(t));
        let c2 = point_to_param(&curve(t + h));
        let dtheta_a = angle_diff(c1.theta, c0.theta);
        let dtheta_b = angle_diff(c2.theta, c1.theta);

        let rho_d = (c2.rho - c0.rho) / (2.0 * h);
        let rho_dd = (c2.rho - 2.0 * c1.rho + c0.rho) / (h * h);
        let th_d = (dtheta_a + dtheta_b) / (2.0 * h);
        let th_dd = (dtheta_b - dtheta_a) / (h * h);
        let z_dd = (c2.z - 2.0 * c1.z + c0.z) / (h * h);

        let gamma = match christoffel(c1.rho) {
            Ok(g) => g,
            Err(_) => continue,
        };
        let r_rho = rho_dd + gamma.rho_theta_theta * th_d * th_d;
        let r_theta = th_dd + 2.0 * gamma.theta_rho_theta * rho_d * th_d;
        worst = worst.max(r_rho.abs()).max(r_theta.abs()).max(z_dd.abs());
    }
    worst
}

/// Geodesic-equation residual of the closed-form geodesic in direction `dir`.
pub fn geodesic_residual(dir: TangentVec, t_samples: &[f64]) -> f64 {
    geodesic_equation_residual(|t| geodesic_point(dir, t), t_samples)
}

/// Signed difference `a − b` folded into `(−π, π]`.
pub(crate) fn angle_diff(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    if d > std::f64::consts::PI {
        d - TAU
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn inner_product_signature() {
        let ex = Vec4M::new(1.0, 0.0, 0.0, 0.0);
        let ew = Vec4M::new(0.0, 0.0, 0.0, 1.0);
        assert_eq!(minkowski_inner(&ex, &ex), 1.0);
        assert_eq!(minkowski_inner(&ew, &ew), -1.0);
        let p = param_to_point(ParamCoords::new(1.0, 0.0, 2.0));
        assert_abs_diff_eq!(minkowski_inner(p.vec(), p.vec()), 3.0, epsilon = 1e-12);
    }

    #[test]
    fn chart_examples() {
        assert_eq!(
            param_to_point(ParamCoords::new(0.0, 1.234, 0.0)),
            PointH2E::ORIGIN
        );
        let p = param_to_point(ParamCoords::new(1.0, 0.0, 2.0));
        assert_abs_diff_eq!(p.x(), 1.175201193643801, epsilon = 1e-12);
        assert_abs_diff_eq!(p.w(), 1.5430806348152437, epsilon = 1e-12);
        assert_eq!(p.y(), 0.0);
        let q = param_to_point(ParamCoords::new(1.0, FRAC_PI_2, -1.0));
        assert_abs_diff_eq!(q.x(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q.y(), 1f64.sinh(), epsilon = 1e-15);
        assert_eq!(q.z(), -1.0);

        let axis = point_to_param(&PointH2E::from_coords(0.0, 0.0, 5.0, 1.0));
        assert_eq!((axis.rho, axis.theta, axis.z), (0.0, 0.0, 5.0));
        let c = point_to_param(&PointH2E::from_coords(2f64.sinh(), 0.0, 0.0, 2f64.cosh()));
        assert_abs_diff_eq!(c.rho, 2.0, epsilon = 1e-12);
        assert_eq!(c.theta, 0.0);
    }

    #[test]
    fn negative_angle_wraps() {
        let c = ParamCoords::new(1.0, -FRAC_PI_2, 0.0);
        assert_abs_diff_eq!(c.theta, 1.5 * PI, epsilon = 1e-15);
        let p = point_to_param(&param_to_point(c));
        assert_abs_diff_eq!(p.theta, 1.5 * PI, epsilon = 1e-12);
    }

    #[test]
    fn metric_values() {
        let m0 = metric_components(0.0);
        assert_eq!((m0.g_rho_rho, m0.g_theta_theta, m0.g_zz), (1.0, 0.0, 1.0));
        assert_abs_diff_eq!(metric_components(1.0).g_theta_theta, 1.3810978455418161, epsilon = 1e-12);
    }

    #[test]
    fn christoffel_values_and_axis_error() {
        let g = christoffel(1.0).unwrap();
        assert_abs_diff_eq!(g.rho_theta_theta, -1.8134302039235093, epsilon = 1e-12);
        assert_abs_diff_eq!(g.theta_rho_theta, 1.3130352854993312, epsilon = 1e-12);
        for l in 0..3 {
            for m in 0..3 {
                assert_eq!(g.get(2, l, m), 0.0);
                assert_eq!(g.get(l, 2, m), 0.0);
            }
        }
        assert!(matches!(christoffel(0.0), Err(Error::PolarAxis { .. })));
    }

    #[test]
    fn geodesic_examples() {
        let p = geodesic_point(TangentVec::from_polar(0.0, 0.0, 3.0), 1.0);
        assert_eq!(p, PointH2E::from_coords(0.0, 0.0, 3.0, 1.0));
        let p = geodesic_point(TangentVec::from_polar(1.0, 0.0, 2.0), 1.0);
        assert_abs_diff_eq!(p.x(), 1f64.sinh(), epsilon = 1e-15);
        assert_abs_diff_eq!(p.z(), 2.0, epsilon = 1e-15);
        let p = geodesic_point(TangentVec::from_polar(2.0, PI, 0.0), 0.5);
        assert_abs_diff_eq!(p.x(), -1f64.sinh(), epsilon = 1e-12);
        assert_abs_diff_eq!(p.y(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.w(), 1f64.cosh(), epsilon = 1e-12);
    }

    #[test]
    fn residual_detects_non_geodesic() {
        let samples: Vec<f64> = (0..50).map(|i| 0.1 + 0.9 * i as f64 / 49.0).collect();
        assert!(geodesic_residual(TangentVec::new(1.0, 0.0, 1.0), &samples) < 1e-5);
        let curve = |t: f64| param_to_point(ParamCoords::new(t, 0.0, t * t));
        assert!(geodesic_equation_residual(curve, &samples) > 0.1);
    }

    #[test]
    fn angle_wrap_edge() {
        assert_eq!(wrap_angle(-1e-300), 0.0);
        assert_abs_diff_eq!(angle_diff(0.1, TAU - 0.1), 0.2, epsilon = 1e-12);
    }
}
