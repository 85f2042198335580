//! Carry a frame around closed loops. A loop with vertical legs comes back
//! unrotated; a loop in the hyperbolic plane comes back turned by its area.

use h2xe::isometry::holonomy_angle;
use h2xe::TangentVec;

fn main() {
    let rect = [
        TangentVec::new(1.5, 0.0, 0.0),
        TangentVec::new(0.0, 0.0, 2.0),
        TangentVec::new(-1.5, 0.0, 0.0),
        TangentVec::new(0.0, 0.0, -2.0),
    ];
    println!("mixed rectangle: {:+.3e} rad", holonomy_angle(&rect).unwrap());

    // equilateral triangles of growing side, walked counterclockwise
    for side in [0.5f64, 1.0, 1.5, 2.0] {
        // law of cosines for the vertex angle
        let c = side.cosh();
        let angle = ((c * c - c) / (side.sinh() * side.sinh())).acos();
        let area = std::f64::consts::PI - 3.0 * angle;
        let turn = std::f64::consts::PI - angle;
        let legs: Vec<TangentVec> = (0..3)
            .map(|k| TangentVec::from_polar(side, k as f64 * turn, 0.0))
            .collect();
        let h = holonomy_angle(&legs).unwrap();
        println!("triangle side {side:.1}: area {area:.6}, holonomy {h:+.6}");
    }
}
