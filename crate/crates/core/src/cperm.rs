//! Centred permutations: a permutation of length `n + 1` with one
//! designated origin point that does not count towards the length.
//!
//! Points are stored as the filled-in permutation in one-line order with
//! 0-based values; the origin is a 0-based position. Text and JSON forms use
//! the conventional 1-based values, with the origin written in brackets:
//! `426[3]51`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Quadrants relative to the origin, numbered anticlockwise from the
/// upper-right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Quadrant {
    One = 1,
    Two = 2,
    Three = 3,
    Four = 4,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [Quadrant::One, Quadrant::Two, Quadrant::Three, Quadrant::Four];

    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(Quadrant::One),
            2 => Some(Quadrant::Two),
            3 => Some(Quadrant::Three),
            4 => Some(Quadrant::Four),
            _ => None,
        }
    }

    /// The quadrant containing a point that lies to the right of the origin
    /// iff `right` and above it iff `up`.
    pub fn from_signs(right: bool, up: bool) -> Self {
        match (right, up) {
            (true, true) => Quadrant::One,
            (false, true) => Quadrant::Two,
            (false, false) => Quadrant::Three,
            (true, false) => Quadrant::Four,
        }
    }

    pub fn is_right(self) -> bool {
        matches!(self, Quadrant::One | Quadrant::Four)
    }

    pub fn is_up(self) -> bool {
        matches!(self, Quadrant::One | Quadrant::Two)
    }

    pub fn opposite(self) -> Self {
        Quadrant::from_signs(!self.is_right(), !self.is_up())
    }

    /// Adjacent quadrants share an axis half: their numbers differ by 1 mod 4.
    pub fn is_adjacent(self, other: Quadrant) -> bool {
        let d = (self.number() + 4 - other.number()) % 4;
        d == 1 || d == 3
    }
}

impl From<Quadrant> for u8 {
    fn from(q: Quadrant) -> u8 {
        q.number()
    }
}

impl TryFrom<u8> for Quadrant {
    type Error = String;
    fn try_from(n: u8) -> std::result::Result<Self, String> {
        Quadrant::from_number(n).ok_or_else(|| format!("invalid quadrant {n}"))
    }
}

impl fmt::Display for Quadrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// Which quadrants a centred permutation occupies, and how many points sit
/// in each.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadrantProfile {
    pub counts: [usize; 4],
}

impl QuadrantProfile {
    pub fn from_quadrants<I: IntoIterator<Item = Quadrant>>(quadrants: I) -> Self {
        let mut counts = [0; 4];
        for q in quadrants {
            counts[q.number() as usize - 1] += 1;
        }
        QuadrantProfile { counts }
    }

    pub fn count(&self, q: Quadrant) -> usize {
        self.counts[q.number() as usize - 1]
    }

    pub fn occupied(&self) -> BTreeSet<Quadrant> {
        Quadrant::ALL.into_iter().filter(|&q| self.count(q) > 0).collect()
    }
}

/// True iff exactly one quadrant is occupied, or two occupied quadrants are
/// adjacent.
pub fn adjacency_condition(profile: &QuadrantProfile) -> bool {
    let occupied = profile.occupied();
    if occupied.len() == 1 {
        return true;
    }
    occupied
        .iter()
        .any(|&a| occupied.iter().any(|&b| a.is_adjacent(b)))
}

/// A non-trivial interval containing the origin, as inclusive 0-based
/// position and value ranges of the filled-in permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CentredInterval {
    pub start: usize,
    pub end: usize,
    pub low: u32,
    pub high: u32,
}

impl CentredInterval {
    pub fn size(&self) -> usize {
        self.end - self.start + 1
    }

    fn contains_interval(&self, other: &CentredInterval) -> bool {
        self.start <= other.start && other.end <= self.end
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CentredPerm {
    filled: Vec<u32>,
    origin: usize,
}

/// Replaces values by their ranks (0-based), preserving relative order.
pub(crate) fn standardize(values: &[u32]) -> Vec<u32> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_unstable_by_key(|&i| values[i]);
    let mut out = vec![0u32; values.len()];
    for (rank, i) in idx.into_iter().enumerate() {
        out[i] = rank as u32;
    }
    out
}

impl CentredPerm {
    /// Builds from 1-based one-line values and a 1-based origin position.
    pub fn new(filled: Vec<u32>, origin: usize) -> Result<Self> {
        let n = filled.len();
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        if origin == 0 || origin > n {
            return Err(Error::IndexOutOfRange(format!(
                "origin position {origin} outside 1..={n}"
            )));
        }
        let mut seen = vec![false; n];
        for &v in &filled {
            if v == 0 || v as usize > n || seen[v as usize - 1] {
                return Err(Error::NotAPermutation(format!("{filled:?}")));
            }
            seen[v as usize - 1] = true;
        }
        Ok(CentredPerm {
            filled: filled.into_iter().map(|v| v - 1).collect(),
            origin: origin - 1,
        })
    }

    /// 0-based values and origin; caller guarantees validity.
    pub(crate) fn from_raw(filled: Vec<u32>, origin: usize) -> Self {
        debug_assert!(origin < filled.len());
        CentredPerm { filled, origin }
    }

    /// Builds from arbitrary distinct values listed in position order.
    pub(crate) fn from_values(values: &[u32], origin: usize) -> Self {
        CentredPerm::from_raw(standardize(values), origin)
    }

    /// The empty centred permutation: the origin alone.
    pub fn empty() -> Self {
        CentredPerm { filled: vec![0], origin: 0 }
    }

    /// The single-point centred permutation in quadrant `q`.
    pub fn single(q: Quadrant) -> Self {
        match q {
            Quadrant::One => CentredPerm::from_raw(vec![0, 1], 0),
            Quadrant::Two => CentredPerm::from_raw(vec![1, 0], 1),
            Quadrant::Three => CentredPerm::from_raw(vec![0, 1], 1),
            Quadrant::Four => CentredPerm::from_raw(vec![1, 0], 0),
        }
    }

    pub fn len(&self) -> usize {
        self.filled.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.filled.len() == 1
    }

    /// 0-based values of the filled-in permutation.
    pub fn filled(&self) -> &[u32] {
        &self.filled
    }

    /// 0-based position of the origin.
    pub fn origin_index(&self) -> usize {
        self.origin
    }

    pub fn origin_value(&self) -> u32 {
        self.filled[self.origin]
    }

    /// 1-based values, as in one-line notation.
    pub fn one_based(&self) -> Vec<u32> {
        self.filled.iter().map(|v| v + 1).collect()
    }

    /// The underlying uncentred permutation (0-based values).
    pub fn strip_origin(&self) -> Vec<u32> {
        let ov = self.origin_value();
        self.filled
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != self.origin)
            .map(|(_, &v)| if v > ov { v - 1 } else { v })
            .collect()
    }

    /// Quadrant of the point at 0-based position `pos` (which must not be
    /// the origin).
    pub fn quadrant_at(&self, pos: usize) -> Quadrant {
        debug_assert_ne!(pos, self.origin);
        Quadrant::from_signs(pos > self.origin, self.filled[pos] > self.origin_value())
    }

    pub fn quadrant_profile(&self) -> QuadrantProfile {
        QuadrantProfile::from_quadrants(
            (0..self.filled.len())
                .filter(|&i| i != self.origin)
                .map(|i| self.quadrant_at(i)),
        )
    }

    /// `Some(q)` when every point lies in quadrant `q`.
    pub fn one_quadrant(&self) -> Option<Quadrant> {
        let occupied = self.quadrant_profile().occupied();
        if occupied.len() == 1 {
            occupied.into_iter().next()
        } else {
            None
        }
    }

    /// Removes the non-origin point at 0-based position `pos`.
    pub fn delete_point(&self, pos: usize) -> CentredPerm {
        assert!(pos != self.origin && pos < self.filled.len());
        let removed = self.filled[pos];
        let filled = self
            .filled
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != pos)
            .map(|(_, &v)| if v > removed { v - 1 } else { v })
            .collect();
        let origin = if pos < self.origin { self.origin - 1 } else { self.origin };
        CentredPerm::from_raw(filled, origin)
    }

    /// The centred permutation formed by the points at the given sorted
    /// positions, which must include the origin.
    pub fn restrict(&self, positions: &[usize]) -> CentredPerm {
        let origin = positions
            .iter()
            .position(|&p| p == self.origin)
            .expect("restriction must keep the origin");
        let values: Vec<u32> = positions.iter().map(|&p| self.filled[p]).collect();
        CentredPerm::from_values(&values, origin)
    }

    /// Parses `426[3]51` or the comma form `4,2,6,[3],5,1`.
    pub fn from_oneline(text: &str) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut values = Vec::new();
        let mut origins = Vec::new();
        if compact.contains(',') {
            for token in compact.split(',') {
                let (body, marked) = match token.strip_prefix('[') {
                    Some(rest) => match rest.strip_suffix(']') {
                        Some(inner) => (inner, true),
                        None => return Err(Error::MalformedSyntax(text.to_string())),
                    },
                    None => (token, false),
                };
                let v: u32 = body
                    .parse()
                    .map_err(|_| Error::MalformedSyntax(text.to_string()))?;
                if marked {
                    origins.push(values.len());
                }
                values.push(v);
            }
        } else {
            let mut chars = compact.chars();
            while let Some(c) = chars.next() {
                if c == '[' {
                    let inner: String = chars.by_ref().take_while(|&c| c != ']').collect();
                    let v: u32 = inner
                        .parse()
                        .map_err(|_| Error::MalformedSyntax(text.to_string()))?;
                    origins.push(values.len());
                    values.push(v);
                } else if let Some(d) = c.to_digit(10) {
                    values.push(d);
                } else {
                    return Err(Error::MalformedSyntax(text.to_string()));
                }
            }
        }
        match origins.len() {
            0 => Err(Error::NoOrigin(text.to_string())),
            1 => CentredPerm::new(values, origins[0] + 1),
            _ => Err(Error::MultipleOrigins(text.to_string())),
        }
    }

    pub fn to_oneline(&self) -> String {
        let wide = self.filled.len() > 9;
        let parts: Vec<String> = self
            .filled
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if i == self.origin {
                    format!("[{}]", v + 1)
                } else {
                    (v + 1).to_string()
                }
            })
            .collect();
        parts.join(if wide { "," } else { "" })
    }

    /// Centred containment: `small` embeds into `self` order-isomorphically
    /// with origin mapped to origin.
    pub fn contains(&self, small: &CentredPerm) -> bool {
        if small.filled.len() > self.filled.len() {
            return false;
        }
        let left_needed = small.origin;
        let right_needed = small.filled.len() - 1 - small.origin;
        if left_needed > self.origin || right_needed > self.filled.len() - 1 - self.origin {
            return false;
        }
        let mut chosen = Vec::with_capacity(small.filled.len());
        self.embed_from(small, 0, 0, &mut chosen)
    }

    fn embed_from(
        &self,
        small: &CentredPerm,
        idx: usize,
        start: usize,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if idx == small.filled.len() {
            return true;
        }
        let consistent = |cand: usize, chosen: &[usize]| {
            chosen.iter().enumerate().all(|(t, &pos)| {
                (small.filled[t] < small.filled[idx]) == (self.filled[pos] < self.filled[cand])
            })
        };
        let candidates: Vec<usize> = if idx == small.origin {
            if start <= self.origin {
                vec![self.origin]
            } else {
                vec![]
            }
        } else {
            let remaining_after = small.filled.len() - 1 - idx;
            let (lo, hi) = if idx < small.origin {
                let left_after = small.origin - idx - 1;
                (start, self.origin - left_after)
            } else {
                (start.max(self.origin + 1), self.filled.len() - remaining_after)
            };
            (lo..hi).collect()
        };
        for cand in candidates {
            if consistent(cand, chosen) {
                chosen.push(cand);
                if self.embed_from(small, idx + 1, cand + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    /// `inner ⊞ outer`: the origin of `outer` is inflated by a copy of
    /// `inner`, whose origin becomes the origin of the result.
    pub fn box_sum(inner: &CentredPerm, outer: &CentredPerm) -> CentredPerm {
        let shift = inner.len() as u32;
        let ov = outer.origin_value();
        let mut filled = Vec::with_capacity(inner.filled.len() + outer.filled.len() - 1);
        for (i, &v) in outer.filled.iter().enumerate() {
            if i == outer.origin {
                filled.extend(inner.filled.iter().map(|&w| ov + w));
            } else if v > ov {
                filled.push(v + shift);
            } else {
                filled.push(v);
            }
        }
        CentredPerm::from_raw(filled, outer.origin + inner.origin)
    }

    /// Every non-trivial interval containing the origin, including the
    /// whole permutation.
    pub fn centred_intervals(&self) -> Vec<CentredInterval> {
        let n = self.filled.len();
        let mut out = Vec::new();
        for start in (0..=self.origin).rev() {
            let (mut lo, mut hi) = (u32::MAX, 0u32);
            for v in &self.filled[start..self.origin] {
                lo = lo.min(*v);
                hi = hi.max(*v);
            }
            for end in self.origin..n {
                let v = self.filled[end];
                lo = lo.min(v);
                hi = hi.max(v);
                if end > start && (hi - lo) as usize == end - start {
                    out.push(CentredInterval { start, end, low: lo, high: hi });
                }
            }
        }
        out
    }

    /// The minimal non-trivial centred intervals: one, or two one-quadrant
    /// intervals in opposite quadrants.
    pub fn minimal_centred_intervals(&self) -> Result<Vec<CentredInterval>> {
        if self.is_empty() {
            return Err(Error::EmptyPermutation);
        }
        let all = self.centred_intervals();
        let mut minimal: Vec<CentredInterval> = all
            .iter()
            .filter(|a| !all.iter().any(|b| b != *a && a.contains_interval(b)))
            .copied()
            .collect();
        minimal.sort_by_key(|iv| self.interval_quadrant(iv).map_or(0, Quadrant::number));
        Ok(minimal)
    }

    /// The quadrant of a one-quadrant interval, `None` otherwise.
    pub fn interval_quadrant(&self, iv: &CentredInterval) -> Option<Quadrant> {
        let qs: BTreeSet<Quadrant> = (iv.start..=iv.end)
            .filter(|&p| p != self.origin)
            .map(|p| self.quadrant_at(p))
            .collect();
        if qs.len() == 1 {
            qs.into_iter().next()
        } else {
            None
        }
    }

    /// The centred permutation enclosed by an interval.
    pub fn enclosed(&self, iv: &CentredInterval) -> CentredPerm {
        CentredPerm::from_values(&self.filled[iv.start..=iv.end], self.origin - iv.start)
    }

    /// Removes every non-origin point of the interval.
    pub fn contract(&self, iv: &CentredInterval) -> CentredPerm {
        let width = (iv.end - iv.start) as u32;
        let mut filled = Vec::with_capacity(self.filled.len() - iv.size() + 1);
        for (i, &v) in self.filled.iter().enumerate() {
            if i < iv.start || i > iv.end {
                filled.push(if v > iv.high { v - width } else { v });
            } else if i == self.origin {
                filled.push(iv.low);
            }
        }
        CentredPerm::from_raw(filled, iv.start)
    }

    /// No proper non-trivial centred interval exists.
    pub fn is_box_indecomposable(&self) -> Result<bool> {
        if self.is_empty() {
            return Err(Error::EmptyPermutation);
        }
        Ok(self.indecomposable_unchecked())
    }

    pub(crate) fn indecomposable_unchecked(&self) -> bool {
        let n = self.filled.len();
        for start in (0..=self.origin).rev() {
            let (mut lo, mut hi) = (u32::MAX, 0u32);
            for v in &self.filled[start..self.origin] {
                lo = lo.min(*v);
                hi = hi.max(*v);
            }
            for end in self.origin..n {
                let v = self.filled[end];
                lo = lo.min(v);
                hi = hi.max(v);
                let size = end - start + 1;
                if size >= 2 && size < n && (hi - lo) as usize == end - start {
                    return false;
                }
            }
        }
        true
    }

    /// Greedy decomposition into box-indecomposables, innermost first. When
    /// two minimal intervals exist the lower-numbered quadrant is taken
    /// first.
    pub fn box_decompose(&self) -> Vec<CentredPerm> {
        let mut parts = Vec::new();
        let mut rest = self.clone();
        while !rest.is_empty() {
            let minimal = rest
                .minimal_centred_intervals()
                .expect("non-empty permutation has a minimal interval");
            let iv = minimal[0];
            parts.push(rest.enclosed(&iv));
            rest = rest.contract(&iv);
        }
        parts
    }

    /// Folds `⊞` over a decomposition; the empty list gives the empty
    /// permutation.
    pub fn compose(parts: &[CentredPerm]) -> CentredPerm {
        parts
            .iter()
            .rev()
            .fold(CentredPerm::empty(), |outer, inner| CentredPerm::box_sum(inner, &outer))
    }

    /// The single-point permutations `μ₁..μ₄`.
    pub fn single_points() -> [CentredPerm; 4] {
        Quadrant::ALL.map(CentredPerm::single)
    }

    /// Every origin-pinned sub-permutation, including `self` and the empty
    /// permutation.
    pub fn downward_closure(&self) -> BTreeSet<CentredPerm> {
        let others: Vec<usize> = (0..self.filled.len()).filter(|&i| i != self.origin).collect();
        let mut out = BTreeSet::new();
        for mask in 0u64..(1u64 << others.len()) {
            let mut positions: Vec<usize> = others
                .iter()
                .enumerate()
                .filter(|&(b, _)| mask >> b & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            positions.push(self.origin);
            positions.sort_unstable();
            out.insert(self.restrict(&positions));
        }
        out
    }
}

/// Two box-indecomposables commute iff they are equal or one-quadrant from
/// opposite quadrants.
pub fn commute(a: &CentredPerm, b: &CentredPerm) -> bool {
    if a == b {
        return true;
    }
    match (a.one_quadrant(), b.one_quadrant()) {
        (Some(qa), Some(qb)) => qa.opposite() == qb,
        _ => false,
    }
}

fn normal_key(p: &CentredPerm) -> (u8, usize, String) {
    (
        p.one_quadrant().map_or(0, Quadrant::number),
        p.len(),
        p.to_oneline(),
    )
}

/// Canonical representative of a decomposition up to swaps of adjacent
/// commuting pairs: the lexicographically least rearrangement under the
/// key (quadrant, length, one-line text).
pub fn normal_form(decomposition: &[CentredPerm]) -> Result<Vec<CentredPerm>> {
    for p in decomposition {
        if p.is_empty() || !p.indecomposable_unchecked() {
            return Err(Error::NonIndecomposableElement(p.to_oneline()));
        }
    }
    let mut rest: Vec<CentredPerm> = decomposition.to_vec();
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        // an element can move to the front iff it commutes with everything before it
        let pick = (0..rest.len())
            .filter(|&i| rest[..i].iter().all(|q| commute(q, &rest[i])))
            .min_by_key(|&i| normal_key(&rest[i]))
            .expect("the first element is always movable");
        out.push(rest.remove(pick));
    }
    Ok(out)
}

impl fmt::Display for CentredPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_oneline())
    }
}

impl fmt::Debug for CentredPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CentredPerm({})", self.to_oneline())
    }
}

impl FromStr for CentredPerm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CentredPerm::from_oneline(s)
    }
}

#[derive(Serialize, Deserialize)]
struct CentredPermJson {
    filled: Vec<u32>,
    origin: usize,
}

impl Serialize for CentredPerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CentredPermJson { filled: self.one_based(), origin: self.origin + 1 }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CentredPerm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = CentredPermJson::deserialize(d)?;
        CentredPerm::new(raw.filled, raw.origin).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> CentredPerm {
        s.parse().unwrap()
    }

    #[test]
    fn parses_bracket_and_comma_forms() {
        let a = p("426[3]51");
        assert_eq!(a.len(), 5);
        assert_eq!(a.origin_index(), 3);
        assert_eq!(a, p("4,2,6,[3],5,1"));
        assert_eq!(p("[1]"), CentredPerm::empty());
        assert_ne!(p("14[2]3"), p("1[2]43"));
        let wide = p("1,2,3,4,5,6,7,8,9,[10],11");
        assert_eq!(wide.to_oneline(), "1,2,3,4,5,6,7,8,9,[10],11");
        assert_eq!(p(&wide.to_oneline()), wide);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(CentredPerm::from_oneline("4263"), Err(Error::NoOrigin("4263".into())));
        assert!(matches!(CentredPerm::from_oneline("[4]2[6]"), Err(Error::MultipleOrigins(_))));
        assert!(matches!(CentredPerm::from_oneline("42[2]"), Err(Error::NotAPermutation(_))));
        assert!(matches!(CentredPerm::from_oneline("4x[2]"), Err(Error::MalformedSyntax(_))));
        assert_eq!(CentredPerm::from_oneline("  "), Err(Error::EmptyInput));
    }

    #[test]
    fn containment() {
        assert!(p("7183[4]526").contains(&p("14[2]3")));
        assert!(!p("1[2]43").contains(&p("14[2]3")));
        let a = p("31586[4]27");
        assert!(a.contains(&a));
        assert!(a.contains(&CentredPerm::empty()));
    }

    #[test]
    fn box_sum_examples() {
        assert_eq!(CentredPerm::box_sum(&p("241[3]5"), &p("413[5]2")), p("413685[7]92"));
        let x = p("41[3]52");
        assert_eq!(CentredPerm::box_sum(&CentredPerm::empty(), &x), x);
        assert_eq!(CentredPerm::box_sum(&x, &CentredPerm::empty()), x);
        assert_eq!(CentredPerm::box_sum(&p("[1]32"), &p("1[2]")), p("1[2]43"));
        assert_eq!(CentredPerm::box_sum(&p("1[2]"), &p("[1]32")), p("1[2]43"));
    }

    #[test]
    fn minimal_intervals() {
        // the inner summand 241[3]5 is itself decomposable, so the minimal
        // interval sits strictly inside its block
        let a = p("413685[7]92");
        let m = a.minimal_centred_intervals().unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(a.enclosed(&m[0]), p("241[3]"));
        assert!((3..=7).contains(&m[0].start) && (3..=7).contains(&m[0].end));

        let b = p("1[2]43");
        let m = b.minimal_centred_intervals().unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(b.interval_quadrant(&m[0]), Some(Quadrant::One));
        assert_eq!(b.interval_quadrant(&m[1]), Some(Quadrant::Three));

        let c = p("[1]2");
        let m = c.minimal_centred_intervals().unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].size(), 2);

        assert_eq!(CentredPerm::empty().minimal_centred_intervals(), Err(Error::EmptyPermutation));
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(p("1[2]43").box_decompose(), vec![p("[1]32"), p("1[2]")]);
        assert_eq!(
            p("413685[7]92").box_decompose(),
            vec![p("241[3]"), p("[1]2"), p("413[5]2")]
        );
        assert_eq!(p("241[3]5").box_decompose(), vec![p("241[3]"), p("[1]2")]);
        assert_eq!(p("41[3]52").box_decompose(), vec![p("41[3]52")]);
    }

    #[test]
    fn indecomposability() {
        assert_eq!(p("41[3]52").is_box_indecomposable(), Ok(true));
        assert_eq!(p("[1]32").is_box_indecomposable(), Ok(true));
        // the image of the pin word 1l
        assert_eq!(p("2[1]3").is_box_indecomposable(), Ok(false));
        for mu in CentredPerm::single_points() {
            assert_eq!(mu.is_box_indecomposable(), Ok(true));
        }
        assert_eq!(CentredPerm::empty().is_box_indecomposable(), Err(Error::EmptyPermutation));
    }

    #[test]
    fn normal_form_reorders_commuting_pairs_only() {
        let a = normal_form(&[p("1[2]"), p("[1]32")]).unwrap();
        let b = normal_form(&[p("[1]32"), p("1[2]")]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, vec![p("[1]32"), p("1[2]")]);

        // Q1 and Q2 points do not commute
        let q1 = CentredPerm::single(Quadrant::One);
        let q2 = CentredPerm::single(Quadrant::Two);
        assert_eq!(normal_form(&[q2.clone(), q1.clone()]).unwrap(), vec![q2, q1]);

        assert!(matches!(
            normal_form(&[p("2[1]3")]),
            Err(Error::NonIndecomposableElement(_))
        ));
    }

    #[test]
    fn adjacency() {
        let prof = |qs: &[u8]| {
            QuadrantProfile::from_quadrants(qs.iter().map(|&n| Quadrant::from_number(n).unwrap()))
        };
        assert!(adjacency_condition(&prof(&[1])));
        assert!(!adjacency_condition(&prof(&[1, 3])));
        assert!(adjacency_condition(&prof(&[1, 2, 3])));
        assert!(!adjacency_condition(&prof(&[2, 4, 4])));
    }

    #[test]
    fn quadrants_and_strip() {
        let a = p("426[3]51");
        assert_eq!(a.quadrant_at(0), Quadrant::Two);
        assert_eq!(a.quadrant_at(1), Quadrant::Three);
        assert_eq!(a.quadrant_at(4), Quadrant::One);
        assert_eq!(a.quadrant_at(5), Quadrant::Four);
        assert_eq!(a.strip_origin(), vec![2, 1, 4, 3, 0]);
    }

    #[test]
    fn json_form() {
        let a = p("426[3]51");
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"filled":[4,2,6,3,5,1],"origin":4}"#);
        let back: CentredPerm = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
    }
}
