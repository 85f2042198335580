//! Why the renderer cannot treat the Klein×E chart as euclidean space: the
//! direction a point is actually seen in (inverse exponential map) differs
//! from the naive straight-line direction off the horizontal plane.

use h2xe::geometry::{param_to_point, ParamCoords};
use h2xe::maps::{inv_exp_map, klein_project, klein_straightline_error};

fn main() {
    println!("{:>5} {:>6} {:>10} {:>10} {:>12}", "rho", "z", "seen u", "klein x", "error (deg)");
    for rho in [0.5, 1.0, 2.0, 3.0] {
        for z in [0.0, 0.5, 1.0, 2.0] {
            let p = param_to_point(ParamCoords::new(rho, 0.0, z));
            let t = inv_exp_map(&p);
            let k = klein_project(&p);
            println!(
                "{rho:>5.1} {z:>6.1} {:>10.4} {:>10.4} {:>12.3}",
                t.u,
                k.x,
                klein_straightline_error(&p).to_degrees()
            );
        }
    }
}
