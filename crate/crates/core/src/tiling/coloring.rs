//! Cell colours lifted from a genus-two quotient of the {4,6} tiling.
//!
//! The quotient surface is made of six squares. `GLUING[s][e]` names the
//! square and edge that edge `e` of square `s` is glued to (edges numbered
//! counterclockwise, gluings orientation-reversing). Walking a word through
//! this map tracks which quotient square a cell covers, so two words that
//! reach the same cell of the tiling always agree on its colour.

use super::words::{CellWord, Letter};

pub const PALETTE_SIZE: usize = 6;

/// Per-layer hue shift, as a fraction of the colour circle.
pub const DEFAULT_LAYER_HUE_STEP: f64 = 1.0 / 12.0;

#[rustfmt::skip]
pub(crate) const GLUING: [[(usize, usize); 4]; PALETTE_SIZE] = [
    [(5, 0), (2, 3), (1, 2), (2, 1)],
    [(3, 2), (4, 0), (0, 2), (4, 2)],
    [(4, 1), (0, 3), (5, 2), (0, 1)],
    [(4, 3), (5, 1), (1, 0), (5, 3)],
    [(1, 1), (2, 0), (1, 3), (3, 0)],
    [(0, 0), (3, 1), (2, 2), (3, 3)],
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColorIndex {
    /// Quotient square, `0..6`.
    pub base: usize,
    /// Hue rotation in `[0, 1)`.
    pub layer_phase: f64,
}

impl ColorIndex {
    /// Position on the black → red → white → cyan colour circle.
    pub fn rgb(&self) -> [f64; 3] {
        color_circle(self.base as f64 / PALETTE_SIZE as f64 + self.layer_phase)
    }
}

/// Piecewise-linear loop through black, red, white and cyan.
pub fn color_circle(t: f64) -> [f64; 3] {
    const KEYS: [[f64; 3]; 4] = [
        [0.0, 0.0, 0.0],
        [1.0, 0.0, 0.0],
        [1.0, 1.0, 1.0],
        [0.0, 1.0, 1.0],
    ];
    let t = t.rem_euclid(1.0) * 4.0;
    let i = (t.floor() as usize).min(3);
    let f = t - i as f64;
    let a = KEYS[i];
    let b = KEYS[(i + 1) % 4];
    [
        a[0] + (b[0] - a[0]) * f,
        a[1] + (b[1] - a[1]) * f,
        a[2] + (b[2] - a[2]) * f,
    ]
}

/// Walker state on the quotient: current square and the rotation between
/// the walker's labels and the square's own edge numbering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub(crate) struct QuotientState {
    pub square: usize,
    pub rot: usize,
}

impl QuotientState {
    pub fn step(self, letter: Letter) -> QuotientState {
        let Some(l) = letter.face() else {
            return self;
        };
        let edge = (l + self.rot) % 4;
        let (square, entry) = GLUING[self.square][edge];
        QuotientState {
            square,
            rot: (entry + 2 + 4 - l) % 4,
        }
    }
}

/// Colour of the cell `offset · word`: the quotient square it covers and a
/// hue shift proportional to its layer.
pub fn color_of(word: &CellWord, offset: &CellWord) -> ColorIndex {
    color_with_step(word, offset, DEFAULT_LAYER_HUE_STEP)
}

pub fn color_with_step(word: &CellWord, offset: &CellWord, hue_step: f64) -> ColorIndex {
    let state = offset
        .letters()
        .iter()
        .chain(word.letters())
        .fold(QuotientState::default(), |s, &l| s.step(l));
    let layer = offset.layer() + word.layer();
    ColorIndex {
        base: state.square,
        layer_phase: (hue_step * layer as f64).rem_euclid(1.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn find(parent: &mut [usize], mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }

    #[test]
    fn gluing_is_an_involution_without_self_adjacency() {
        for s in 0..PALETTE_SIZE {
            for e in 0..4 {
                let (t, f) = GLUING[s][e];
                assert_ne!(s, t, "square {s} glued to itself");
                assert_eq!(GLUING[t][f], (s, e));
            }
        }
    }

    #[test]
    fn quotient_is_a_genus_two_surface_with_six_squares_per_vertex() {
        // corner k of square s sits between edges k−1 and k
        let corner = |s: usize, k: usize| 4 * s + k % 4;
        let mut parent: Vec<usize> = (0..24).collect();
        for s in 0..PALETTE_SIZE {
            for e in 0..4 {
                let (t, f) = GLUING[s][e];
                for (a, b) in [(corner(s, e), corner(t, f + 1)), (corner(s, e + 1), corner(t, f))] {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    parent[ra] = rb;
                }
            }
        }
        let mut sizes = std::collections::HashMap::new();
        for c in 0..24 {
            *sizes.entry(find(&mut parent, c)).or_insert(0) += 1;
        }
        let vertices = sizes.len() as i64;
        assert!(sizes.values().all(|&n| n == 6));
        let euler = vertices - 12 + PALETTE_SIZE as i64;
        assert_eq!(euler, -2);
    }

    #[test]
    fn empty_word_has_base_zero() {
        let c = color_of(&CellWord::empty(), &CellWord::empty());
        assert_eq!(c.base, 0);
        assert_eq!(c.layer_phase, 0.0);
    }

    #[test]
    fn layer_rotation() {
        let up: CellWord = "UU".parse().unwrap();
        let down: CellWord = "V".parse().unwrap();
        assert!((color_of(&up, &CellWord::empty()).layer_phase - 2.0 / 12.0).abs() < 1e-15);
        assert!((color_of(&down, &CellWord::empty()).layer_phase - 11.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn circle_hits_key_colours() {
        assert_eq!(color_circle(0.0), [0.0, 0.0, 0.0]);
        assert_eq!(color_circle(0.25), [1.0, 0.0, 0.0]);
        assert_eq!(color_circle(0.5), [1.0, 1.0, 1.0]);
        assert_eq!(color_circle(0.75), [0.0, 1.0, 1.0]);
        assert_eq!(color_circle(1.0), [0.0, 0.0, 0.0]);
    }
}
