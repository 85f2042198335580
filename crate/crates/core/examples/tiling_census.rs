//! Grow the {4,6} honeycomb and count cells per depth, with the colour
//! census over the six quotient squares.

use h2xe::tiling::{build_tiling, circum_radius, in_radius, translation_length, TilingSpec, PALETTE_SIZE};

fn main() {
    println!(
        "in-radius {:.6}, circumradius {:.6}, step {:.6}, cube height {:.6}",
        in_radius(),
        circum_radius(),
        translation_length(),
        TilingSpec::new(0, 0).cube_height
    );
    for depth in 0..=7 {
        let cells = build_tiling(&TilingSpec::new(depth, 0)).unwrap();
        let mut census = [0usize; PALETTE_SIZE];
        for c in &cells {
            census[c.color.base] += 1;
        }
        println!("depth {depth}: {:>5} squares, colours {census:?}", cells.len());
    }
}
