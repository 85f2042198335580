//! Reference computations that share no code path with the engine they
//! check: finite differences of the embedding, hyperbolic trigonometry, and
//! brute-force enumeration.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

use nalgebra::{Matrix3, Vector3};

/// Horizontal point `(x, y, w)` on the hyperboloid.
pub type HPoint = Vector3<f64>;

fn lorentz(a: &HPoint, b: &HPoint) -> f64 {
    a.x * b.x + a.y * b.y - a.z * b.z
}

pub fn h_point(r: f64, theta: f64) -> HPoint {
    Vector3::new(r.sinh() * theta.cos(), r.sinh() * theta.sin(), r.cosh())
}

pub fn h_distance(a: &HPoint, b: &HPoint) -> f64 {
    let d = a - b;
    2.0 * (lorentz(&d, &d).max(0.0).sqrt() / 2.0).asinh()
}

/// Embedding of the polar chart into `R^{3,1}`, written out independently.
fn embed(rho: f64, theta: f64, z: f64) -> [f64; 4] {
    [rho.sinh() * theta.cos(), rho.sinh() * theta.sin(), z, rho.cosh()]
}

fn minkowski(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] - a[3] * b[3]
}

fn shifted(c: [f64; 3], i: usize, h: f64) -> [f64; 3] {
    let mut c = c;
    c[i] += h;
    c
}

fn at(c: [f64; 3]) -> [f64; 4] {
    embed(c[0], c[1], c[2])
}

fn combine(terms: &[(f64, [f64; 4])]) -> [f64; 4] {
    let mut out = [0.0; 4];
    for (k, v) in terms {
        for j in 0..4 {
            out[j] += k * v[j];
        }
    }
    out
}

const FIRST_STEP: f64 = 1e-3;
const SECOND_STEP: f64 = 1e-2;

/// Fourth-order central difference of `f` along coordinate `i`.
fn diff<F: Fn([f64; 3]) -> [f64; 4]>(f: &F, c: [f64; 3], i: usize, h: f64) -> [f64; 4] {
    let k = 1.0 / (12.0 * h);
    combine(&[
        (-k, f(shifted(c, i, 2.0 * h))),
        (8.0 * k, f(shifted(c, i, h))),
        (-8.0 * k, f(shifted(c, i, -h))),
        (k, f(shifted(c, i, -2.0 * h))),
    ])
}

fn d1(c: [f64; 3], i: usize, h: f64) -> [f64; 4] {
    diff(&at, c, i, h)
}

fn d2(c: [f64; 3], i: usize, j: usize, h: f64) -> [f64; 4] {
    diff(&|q| d1(q, j, h), c, i, h)
}

/// Induced metric of the polar chart by central differences of the
/// embedding, `g_ij = ⟨∂_i φ, ∂_j φ⟩`.
pub fn fd_metric(rho: f64, theta: f64) -> [[f64; 3]; 3] {
    let c = [rho, theta, 0.0];
    let d: Vec<[f64; 4]> = (0..3).map(|i| d1(c, i, FIRST_STEP)).collect();
    let mut g = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            g[i][j] = minkowski(&d[i], &d[j]);
        }
    }
    g
}

/// `(Γ^ρ_θθ, Γ^θ_ρθ)` of the polar chart from the embedding: the tangential
/// part of the second derivatives, `Γ^λ_μν = g^{λλ} ⟨∂_λ φ, ∂_μ∂_ν φ⟩`.
pub fn fd_christoffel(rho: f64, theta: f64) -> (f64, f64) {
    let c = [rho, theta, 0.0];
    let g = fd_metric(rho, theta);
    let d_rho = d1(c, 0, FIRST_STEP);
    let d_theta = d1(c, 1, FIRST_STEP);
    let tt = d2(c, 1, 1, SECOND_STEP);
    let rt = d2(c, 0, 1, SECOND_STEP);
    (
        minkowski(&d_rho, &tt) / g[0][0],
        minkowski(&d_theta, &rt) / g[1][1],
    )
}

/// `(Γ^ρ_θθ, Γ^θ_ρθ)` of the diagonal metric `diag(1, f(ρ), 1)` by the
/// Levi-Civita formula, with `f′` by central differences.
pub fn levi_civita_symbols<F: Fn(f64) -> f64>(g_theta_theta: F, rho: f64) -> (f64, f64) {
    let h = FIRST_STEP;
    let f = &g_theta_theta;
    let df = (f(rho - 2.0 * h) - 8.0 * f(rho - h) + 8.0 * f(rho + h) - f(rho + 2.0 * h)) / (12.0 * h);
    (-0.5 * df, 0.5 * df / g_theta_theta(rho))
}

/// Area of a geodesic triangle from its side lengths (law of cosines and
/// angle defect).
pub fn triangle_area(a: &HPoint, b: &HPoint, c: &HPoint) -> f64 {
    let ab = h_distance(a, b);
    let bc = h_distance(b, c);
    let ca = h_distance(c, a);
    let angle = |opp: f64, s1: f64, s2: f64| {
        let cos = (s1.cosh() * s2.cosh() - opp.cosh()) / (s1.sinh() * s2.sinh());
        cos.clamp(-1.0, 1.0).acos()
    };
    PI - angle(bc, ab, ca) - angle(ca, ab, bc) - angle(ab, bc, ca)
}

/// Area of a polygon star-shaped about `centre`, as a fan of triangles.
pub fn fan_area(centre: &HPoint, vertices: &[HPoint]) -> f64 {
    (0..vertices.len())
        .map(|i| triangle_area(centre, &vertices[i], &vertices[(i + 1) % vertices.len()]))
        .sum()
}

fn rotation(theta: f64) -> Matrix3<f64> {
    let (s, c) = theta.sin_cos();
    Matrix3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0)
}

fn x_boost(d: f64) -> Matrix3<f64> {
    let (s, c) = (d.sinh(), d.cosh());
    Matrix3::new(c, 0.0, s, 0.0, 1.0, 0.0, s, 0.0, c)
}

/// Horizontal generator `k` (0..4) of a {4,6} tiling with in-radius
/// `r_in`: a boost by `2 r_in` towards the `k`-th edge, as `R·B·R⁻¹`.
pub fn square_generator(r_in: f64, k: usize) -> Matrix3<f64> {
    let theta = k as f64 * FRAC_PI_2;
    rotation(theta) * x_boost(2.0 * r_in) * rotation(-theta)
}

/// Corners of the central square with circumradius `r`.
pub fn square_corners(r: f64) -> [HPoint; 4] {
    std::array::from_fn(|k| h_point(r, FRAC_PI_4 + k as f64 * FRAC_PI_2))
}

fn cluster_count(points: &[HPoint], tol: f64) -> usize {
    let mut reps: Vec<HPoint> = Vec::new();
    for p in points {
        if !reps.iter().any(|q| h_distance(p, q) < tol) {
            reps.push(*p);
        }
    }
    reps.len()
}

/// Number of distinct squares reached by freely reduced words of length at
/// most `depth` in the horizontal generators.
pub fn word_enumeration_count(r_in: f64, depth: usize) -> usize {
    let gens: Vec<Matrix3<f64>> = (0..4).map(|k| square_generator(r_in, k)).collect();
    let origin = Vector3::new(0.0, 0.0, 1.0);
    // (matrix, last generator index)
    let mut layer: Vec<(Matrix3<f64>, Option<usize>)> = vec![(Matrix3::identity(), None)];
    let mut centres = vec![origin];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (m, last) in &layer {
            for (k, g) in gens.iter().enumerate() {
                if last.is_some_and(|l| (l + 2) % 4 == k) {
                    continue;
                }
                let mk = m * g;
                centres.push(mk * origin);
                next.push((mk, Some(k)));
            }
        }
        layer = next;
    }
    cluster_count(&centres, 1e-6)
}

/// Outcome of the vertex-coincidence test for a candidate pair of
/// constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VertexCoincidence {
    /// Corners each edge neighbour shares with the central square (want 2).
    pub shared_corners: usize,
    /// Largest distance between a neighbour corner and the central corner it
    /// should coincide with.
    pub corner_gap: f64,
    /// `6 α − 2π` for the interior angle `α` of the square.
    pub angle_sum_error: f64,
}

impl VertexCoincidence {
    pub fn holds(&self, tol: f64) -> bool {
        self.shared_corners == 2 && self.corner_gap < tol && self.angle_sum_error.abs() < tol
    }
}

fn tangent_towards(p: &HPoint, q: &HPoint) -> HPoint {
    q + p * lorentz(p, q)
}

fn interior_angle(p: &HPoint, a: &HPoint, b: &HPoint) -> f64 {
    let u = tangent_towards(p, a);
    let v = tangent_towards(p, b);
    (lorentz(&u, &v) / (lorentz(&u, &u) * lorentz(&v, &v)).sqrt())
        .clamp(-1.0, 1.0)
        .acos()
}

/// Checks that squares of in-radius `r_in` and circumradius `r` close up
/// six around a vertex: each neighbour across an edge shares that edge's
/// two corners, and six interior angles make a full turn.
pub fn vertex_coincidence(r_in: f64, r: f64) -> VertexCoincidence {
    let corners = square_corners(r);
    let mut shared = usize::MAX;
    let mut gap = 0.0f64;
    for k in 0..4 {
        let g = square_generator(r_in, k);
        let images: Vec<HPoint> = corners.iter().map(|c| g * c).collect();
        let mut count = 0;
        // the edge facing direction k joins corners k-1 and k (mod 4)
        for idx in [(k + 3) % 4, k] {
            let nearest = images
                .iter()
                .map(|q| h_distance(q, &corners[idx]))
                .fold(f64::INFINITY, f64::min);
            gap = gap.max(nearest);
            if nearest < 1e-6 {
                count += 1;
            }
        }
        shared = shared.min(count);
    }
    let alpha = interior_angle(&corners[0], &corners[1], &corners[3]);
    VertexCoincidence {
        shared_corners: shared,
        corner_gap: gap,
        angle_sum_error: 6.0 * alpha - TAU,
    }
}

/// Squares around each vertex: clusters corner images of `squares` and
/// returns, for every corner of the first `inner` squares, how many squares
/// share it.
pub fn vertex_incidence(squares: &[Matrix3<f64>], inner: usize, r: f64, tol: f64) -> Vec<usize> {
    let corners = square_corners(r);
    let mut reps: Vec<(HPoint, Vec<usize>)> = Vec::new();
    for (s, m) in squares.iter().enumerate() {
        for c in &corners {
            let p = m * c;
            match reps.iter_mut().find(|(q, _)| h_distance(&p, q) < tol) {
                Some((_, owners)) => {
                    if !owners.contains(&s) {
                        owners.push(s)
                    }
                }
                None => reps.push((p, vec![s])),
            }
        }
    }
    reps.iter()
        .filter(|(_, owners)| owners.iter().any(|&s| s < inner))
        .map(|(_, owners)| owners.len())
        .collect()
}

/// Inward turn of an eye at horizontal offset `s/2` fixating a point at
/// distance `d` straight ahead of the midpoint (right-angled triangle with
/// legs `s/2` and `d`).
pub fn convergence_angle(separation: f64, d: f64) -> f64 {
    ((separation / 2.0).sinh() / d.tanh()).atan()
}

/// Aitken Δ² extrapolation of three terms of a geometrically converging
/// sequence.
pub fn aitken(a0: f64, a1: f64, a2: f64) -> f64 {
    let denom = a2 - 2.0 * a1 + a0;
    if denom.abs() < 1e-300 {
        a2
    } else {
        a2 - (a2 - a1).powi(2) / denom
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn unit_square_triangle() {
        // equilateral triangle with vertex angles π/4: area π/4
        let cos_a = std::f64::consts::FRAC_1_SQRT_2;
        let side = ((cos_a + cos_a * cos_a) / (1.0 - cos_a * cos_a)).acosh();
        let circ = (side / 2.0).sinh() / (PI / 3.0).sin();
        let r = circ.asinh();
        let p: Vec<HPoint> = (0..3).map(|k| h_point(r, k as f64 * TAU / 3.0)).collect();
        assert_abs_diff_eq!(triangle_area(&p[0], &p[1], &p[2]), PI / 4.0, epsilon = 1e-9);
    }

    #[test]
    fn aitken_recovers_geometric_limit() {
        let seq = |n: i32| 2.0 + 0.5f64.powi(n);
        assert_abs_diff_eq!(aitken(seq(1), seq(2), seq(3)), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn small_word_counts() {
        let r_in = std::f64::consts::FRAC_1_SQRT_2.asinh();
        assert_eq!(word_enumeration_count(r_in, 0), 1);
        assert_eq!(word_enumeration_count(r_in, 1), 5);
    }
}
