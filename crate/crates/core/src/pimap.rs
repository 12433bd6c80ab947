//! The π-map: realising a pin word as a centred permutation.
//!
//! Points are kept as two rank orders (left-to-right and bottom-to-top) of
//! point ids, with id 0 the origin and id `k` the point `p_k`. Each letter
//! puts its point at the extreme end of one order and immediately next to
//! `p_{k-1}`, on the origin side, in the other. That slot separates
//! `p_{k-1}` from everything placed before it.

use crate::cperm::{CentredPerm, Quadrant};
use crate::error::{Error, Result};
use crate::pinword::{Alignment, Direction, PinWord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PinDiagram {
    word: PinWord,
    xs: Vec<usize>,
    ys: Vec<usize>,
}

fn insert_beside(order: &mut Vec<usize>, prev: usize, new: usize) {
    let i = order.iter().position(|&p| p == prev).expect("previous point placed");
    let o = order.iter().position(|&p| p == 0).expect("origin placed");
    if i > o {
        order.insert(i, new);
    } else {
        order.insert(i + 1, new);
    }
}

impl PinDiagram {
    pub fn new(word: &PinWord) -> Self {
        let q = word.quadrant;
        let mut xs = vec![0];
        let mut ys = vec![0];
        if q.is_right() {
            xs.push(1);
        } else {
            xs.insert(0, 1);
        }
        if q.is_up() {
            ys.push(1);
        } else {
            ys.insert(0, 1);
        }
        for (i, &d) in word.letters.iter().enumerate() {
            let k = i + 2;
            let (along, across) = match d.alignment() {
                Alignment::Vertical => (&mut ys, &mut xs),
                Alignment::Horizontal => (&mut xs, &mut ys),
            };
            match d {
                Direction::U | Direction::R => along.push(k),
                Direction::D | Direction::L => along.insert(0, k),
            }
            insert_beside(across, k - 1, k);
        }
        PinDiagram { word: word.clone(), xs, ys }
    }

    pub fn word(&self) -> &PinWord {
        &self.word
    }

    /// Number of non-origin points.
    pub fn len(&self) -> usize {
        self.xs.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// 0-based `(x, y)` ranks of `p_0..p_n`, indexed by point id.
    pub fn coordinates(&self) -> Vec<(usize, usize)> {
        let mut out = vec![(0, 0); self.xs.len()];
        for (r, &p) in self.xs.iter().enumerate() {
            out[p].0 = r;
        }
        for (r, &p) in self.ys.iter().enumerate() {
            out[p].1 = r;
        }
        out
    }

    pub fn perm(&self) -> CentredPerm {
        let coords = self.coordinates();
        let filled = self.xs.iter().map(|&p| coords[p].1 as u32).collect();
        CentredPerm::from_raw(filled, coords[0].0)
    }

    /// Quadrants of `p_1..p_n`.
    pub fn quadrants(&self) -> Vec<Quadrant> {
        let coords = self.coordinates();
        let (ox, oy) = coords[0];
        coords[1..]
            .iter()
            .map(|&(x, y)| Quadrant::from_signs(x > ox, y > oy))
            .collect()
    }

    /// Inclusive rank bounds `(x_min, x_max, y_min, y_max)` of `p_0..p_k`.
    pub fn bounding_rect(&self, k: usize) -> (usize, usize, usize, usize) {
        let coords = self.coordinates();
        let pts = &coords[..=k];
        (
            pts.iter().map(|c| c.0).min().unwrap(),
            pts.iter().map(|c| c.0).max().unwrap(),
            pts.iter().map(|c| c.1).min().unwrap(),
            pts.iter().map(|c| c.1).max().unwrap(),
        )
    }
}

pub fn pi_map(word: &PinWord) -> CentredPerm {
    PinDiagram::new(word).perm()
}

pub fn point_quadrants(word: &PinWord) -> Vec<Quadrant> {
    PinDiagram::new(word).quadrants()
}

/// Quadrant of `p_k` (1-based) in the diagram of `word`.
pub fn point_quadrant(word: &PinWord, k: usize) -> Result<Quadrant> {
    if k == 0 || k > word.len() {
        return Err(Error::IndexOutOfRange(format!("point {k} of {word}")));
    }
    if k == 1 {
        return Ok(word.quadrant);
    }
    Ok(point_quadrants(&word.prefix(k)?)[k - 1])
}

/// Splits `π_w − {p_k}` as `π_{w_{1,k-1}} ⊞ π_{w_{k+1,n}}`.
pub fn remove_interior_point(word: &PinWord, k: usize) -> Result<(CentredPerm, CentredPerm)> {
    let n = word.len();
    if k < 2 || k + 1 > n {
        return Err(Error::NotInterior { k, n });
    }
    let left = pi_map(&word.prefix(k - 1)?);
    let right = pi_map(&word.factor(k + 1, n)?);
    let diagram = PinDiagram::new(word);
    let pos = diagram.coordinates()[k].0;
    let deleted = diagram.perm().delete_point(pos);
    assert_eq!(
        CentredPerm::box_sum(&left, &right),
        deleted,
        "interior point removal failed for {word} at {k}"
    );
    Ok((left, right))
}

/// `π_{w_1} ⊞ π_{w_2} ⊞ …`, innermost first.
pub fn compose_representation(words: &[PinWord]) -> Result<CentredPerm> {
    if words.is_empty() {
        return Err(Error::EmptyInput);
    }
    let parts: Vec<CentredPerm> = words.iter().map(pi_map).collect();
    Ok(CentredPerm::compose(&parts))
}

/// Representations reachable by appending one symbol: a legal letter on
/// the last word, or a new single-numeral word.
pub fn one_point_extension_candidates(rep: &[PinWord]) -> Vec<Vec<PinWord>> {
    let mut out = Vec::new();
    if let Some(last) = rep.last() {
        for d in last.extensions() {
            let mut next = rep.to_vec();
            *next.last_mut().unwrap() = last.push(d).expect("legal extension");
            out.push(next);
        }
    }
    for q in Quadrant::ALL {
        let mut next = rep.to_vec();
        next.push(PinWord::numeral(q));
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn w(s: &str) -> PinWord {
        s.parse().unwrap()
    }

    fn p(s: &str) -> CentredPerm {
        s.parse().unwrap()
    }

    #[test]
    fn pin_permutations() {
        assert_eq!(pi_map(&w("2lurdld")), p("31586[4]27"));
        assert_eq!(pi_map(&w("1ururu")), p("[1]426375"));
        assert_eq!(pi_map(&w("1rurur")), p("[1]352746"));
        assert_eq!(pi_map(&w("2lulu")), p("46253[1]"));
        assert_eq!(pi_map(&w("1u")), p("[1]32"));
        assert_eq!(pi_map(&w("1r")), p("[1]32"));
        for q in Quadrant::ALL {
            assert_eq!(pi_map(&PinWord::numeral(q)), CentredPerm::single(q));
        }
    }

    #[test]
    fn quadrants_of_points() {
        assert_eq!(point_quadrant(&w("2ruldlurdru"), 5), Ok(Quadrant::Three));
        assert_eq!(point_quadrant(&w("2ruldlurdru"), 1), Ok(Quadrant::Two));
        assert_eq!(point_quadrant(&w("3rurdlurur"), 4), Ok(Quadrant::One));
        assert!(point_quadrant(&w("3ru"), 4).is_err());
    }

    #[test]
    fn interior_removal() {
        let (a, b) = remove_interior_point(&w("1ldldruruld"), 6).unwrap();
        assert_eq!(a, pi_map(&w("1ldld")));
        assert_eq!(b, pi_map(&w("1ruld")));
        let (a, b) = remove_interior_point(&w("1ru"), 2).unwrap();
        assert_eq!((a.len(), b.len()), (1, 1));
        remove_interior_point(&w("2lurdld"), 4).unwrap();
        assert_eq!(remove_interior_point(&w("1ru"), 3), Err(Error::NotInterior { k: 3, n: 3 }));
        assert_eq!(remove_interior_point(&w("1ru"), 1), Err(Error::NotInterior { k: 1, n: 3 }));
    }

    #[test]
    fn representations() {
        let target = p("51[2]364");
        for rep in [vec!["1", "3", "1ul"], vec!["3", "1", "1ul"], vec!["1", "1uld"]] {
            let words: Vec<PinWord> = rep.iter().map(|s| w(s)).collect();
            assert_eq!(compose_representation(&words).unwrap(), target);
        }
        assert_eq!(compose_representation(&[]), Err(Error::EmptyInput));
    }

    #[test]
    fn extension_candidates() {
        let cands = one_point_extension_candidates(&[w("1")]);
        assert_eq!(cands.len(), 8);
        assert!(cands.contains(&vec![w("1u")]));
        assert!(cands.contains(&vec![w("1r")]));
        assert!(cands.contains(&vec![w("1"), w("3")]));
        let perms: BTreeSet<CentredPerm> =
            cands.iter().map(|r| compose_representation(r).unwrap()).collect();
        assert!(perms.len() <= 12);
        assert_eq!(one_point_extension_candidates(&[w("1u")]).len(), 6);
    }
}
