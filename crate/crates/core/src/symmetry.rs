//! The eight symmetries of the square acting on quadrants, letters, pin
//! words and centred permutations.
//!
//! A symmetry is a rotation by `rotations` quarter turns anticlockwise,
//! preceded by the transpose (reflection in the main diagonal) when
//! `transpose` is set.

use std::fmt;

use crate::cperm::{CentredPerm, Quadrant};
use crate::pinword::{Direction, PinWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symmetry {
    pub transpose: bool,
    pub rotations: u8,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry { transpose: false, rotations: 0 };

    pub fn all() -> [Symmetry; 8] {
        let mut out = [Symmetry::IDENTITY; 8];
        for (i, s) in out.iter_mut().enumerate() {
            *s = Symmetry { transpose: i >= 4, rotations: (i % 4) as u8 };
        }
        out
    }

    pub fn inverse(self) -> Symmetry {
        if self.transpose {
            self
        } else {
            Symmetry { transpose: false, rotations: (4 - self.rotations) % 4 }
        }
    }

    /// Acts on a vector of signs `(x, y)` about the origin.
    fn apply_signed(self, mut x: i64, mut y: i64) -> (i64, i64) {
        if self.transpose {
            std::mem::swap(&mut x, &mut y);
        }
        for _ in 0..self.rotations {
            (x, y) = (-y, x);
        }
        (x, y)
    }

    pub fn quadrant(self, q: Quadrant) -> Quadrant {
        let (x, y) = self.apply_signed(
            if q.is_right() { 1 } else { -1 },
            if q.is_up() { 1 } else { -1 },
        );
        Quadrant::from_signs(x > 0, y > 0)
    }

    pub fn direction(self, d: Direction) -> Direction {
        let v = match d {
            Direction::U => (0, 1),
            Direction::D => (0, -1),
            Direction::L => (-1, 0),
            Direction::R => (1, 0),
        };
        match self.apply_signed(v.0, v.1) {
            (0, 1) => Direction::U,
            (0, -1) => Direction::D,
            (-1, 0) => Direction::L,
            _ => Direction::R,
        }
    }

    pub fn word(self, w: &PinWord) -> PinWord {
        PinWord {
            quadrant: self.quadrant(w.quadrant),
            letters: w.letters.iter().map(|&d| self.direction(d)).collect(),
        }
    }

    pub fn perm(self, p: &CentredPerm) -> CentredPerm {
        let n = p.filled().len() as i64;
        let mut points: Vec<(i64, i64)> = p
            .filled()
            .iter()
            .enumerate()
            .map(|(i, &v)| self.apply_signed(2 * i as i64 - (n - 1), 2 * v as i64 - (n - 1)))
            .collect();
        let origin = points[p.origin_index()];
        points.sort_unstable();
        let origin_pos = points.iter().position(|&pt| pt == origin).unwrap();
        let ys: Vec<i64> = points.iter().map(|pt| pt.1).collect();
        let mut sorted = ys.clone();
        sorted.sort_unstable();
        let filled = ys
            .iter()
            .map(|y| sorted.binary_search(y).unwrap() as u32)
            .collect();
        CentredPerm::from_raw(filled, origin_pos)
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.transpose {
            write!(f, "T")?;
        }
        write!(f, "R{}", self.rotations)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pimap::pi_map;

    #[test]
    fn generators() {
        let t = Symmetry { transpose: true, rotations: 0 };
        let r = Symmetry { transpose: false, rotations: 1 };
        assert_eq!(t.direction(Direction::U), Direction::R);
        assert_eq!(t.direction(Direction::D), Direction::L);
        assert_eq!(t.quadrant(Quadrant::Two), Quadrant::Four);
        assert_eq!(t.quadrant(Quadrant::One), Quadrant::One);
        assert_eq!(r.direction(Direction::R), Direction::U);
        assert_eq!(r.direction(Direction::U), Direction::L);
        assert_eq!(r.quadrant(Quadrant::Four), Quadrant::One);
    }

    #[test]
    fn inverse_undoes() {
        let p: CentredPerm = "31586[4]27".parse().unwrap();
        for s in Symmetry::all() {
            assert_eq!(s.inverse().perm(&s.perm(&p)), p);
        }
    }

    #[test]
    fn transpose_is_inverse_permutation() {
        let p: CentredPerm = "426[3]51".parse().unwrap();
        let t = Symmetry { transpose: true, rotations: 0 }.perm(&p);
        for (i, &v) in p.filled().iter().enumerate() {
            assert_eq!(t.filled()[v as usize] as usize, i);
        }
    }

    #[test]
    fn commutes_with_pi_map() {
        for n in 1..=6 {
            for w in PinWord::all_of_length(n) {
                for s in Symmetry::all() {
                    assert_eq!(pi_map(&s.word(&w)), s.perm(&pi_map(&w)), "{w} under {s}");
                }
            }
        }
    }
}
