//! Closed-form geodesics of H²×E: walk a few directions, check that each
//! curve solves the geodesic equation and that the exponential map inverts.

use h2xe::geometry::{geodesic_point, geodesic_residual, point_to_param, TangentVec};
use h2xe::maps::{exp_map, inv_exp_map};

fn main() {
    let samples: Vec<f64> = (1..=10).map(|k| k as f64 / 10.0).collect();
    for dir in [
        TangentVec::new(1.0, 0.0, 0.0),
        TangentVec::new(0.0, 0.0, 1.0),
        TangentVec::new(1.0, 0.0, 1.0),
        TangentVec::new(-2.0, 1.5, 0.5),
    ] {
        println!("direction ({:+.2}, {:+.2}, {:+.2})", dir.u, dir.v, dir.z);
        for t in [0.5, 1.0, 2.0] {
            let c = point_to_param(&geodesic_point(dir, t));
            println!("  t = {t:.1}: rho {:.4} theta {:+.4} z {:+.4}", c.rho, c.theta, c.z);
        }
        let back = inv_exp_map(&exp_map(dir));
        println!(
            "  residual {:.2e}, log(exp v) − v = {:.2e}",
            if dir.horizontal_norm() > 0.0 { geodesic_residual(dir, &samples) } else { 0.0 },
            (back - dir).norm()
        );
    }
}
