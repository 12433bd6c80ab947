//! Finite pin words and eventually periodic pin sequences.
//!
//! A pin word is a quadrant numeral followed by direction letters that
//! alternate between horizontal (`l`, `r`) and vertical (`u`, `d`)
//! alignment. Positions are 1-based: position 1 is the numeral, position
//! `k >= 2` is the letter placing point `p_k`.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cperm::Quadrant;
use crate::error::{Error, Result};
use crate::pimap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    U,
    D,
    L,
    R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Alignment {
    Horizontal,
    Vertical,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::U, Direction::D, Direction::L, Direction::R];

    pub fn alignment(self) -> Alignment {
        match self {
            Direction::U | Direction::D => Alignment::Vertical,
            Direction::L | Direction::R => Alignment::Horizontal,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Direction::U => 'u',
            Direction::D => 'd',
            Direction::L => 'l',
            Direction::R => 'r',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c.to_ascii_lowercase() {
            'u' => Some(Direction::U),
            'd' => Some(Direction::D),
            'l' => Some(Direction::L),
            'r' => Some(Direction::R),
            _ => None,
        }
    }

    /// The two letters that may follow this one.
    pub fn successors(self) -> [Direction; 2] {
        match self.alignment() {
            Alignment::Vertical => [Direction::L, Direction::R],
            Alignment::Horizontal => [Direction::U, Direction::D],
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

fn check_alternation(letters: &[Direction], offset: usize) -> Result<()> {
    for (i, pair) in letters.windows(2).enumerate() {
        if pair[0].alignment() == pair[1].alignment() {
            return Err(Error::AlignmentViolation {
                position: offset + i + 1,
                first: pair[0].as_char(),
                second: pair[1].as_char(),
            });
        }
    }
    Ok(())
}

fn parse_letters(text: &str, original: &str) -> Result<Vec<Direction>> {
    text.chars()
        .map(|c| Direction::from_char(c).ok_or_else(|| Error::MalformedSyntax(original.to_string())))
        .collect()
}

fn parse_numeral(c: Option<char>, original: &str) -> Result<Quadrant> {
    c.and_then(|c| c.to_digit(10))
        .and_then(|d| Quadrant::from_number(d as u8))
        .ok_or_else(|| Error::MalformedSyntax(original.to_string()))
}

fn squeeze(text: &str) -> String {
    text.chars().filter(|c| !c.is_whitespace()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PinWord {
    pub quadrant: Quadrant,
    pub letters: Vec<Direction>,
}

impl PinWord {
    pub fn new(quadrant: Quadrant, letters: Vec<Direction>) -> Result<Self> {
        check_alternation(&letters, 1)?;
        Ok(PinWord { quadrant, letters })
    }

    pub fn numeral(quadrant: Quadrant) -> Self {
        PinWord { quadrant, letters: Vec::new() }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let s = squeeze(text);
        if s.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut chars = s.chars();
        let quadrant = parse_numeral(chars.next(), text)?;
        let letters = parse_letters(chars.as_str(), text)?;
        PinWord::new(quadrant, letters)
    }

    /// Number of points placed: the numeral counts for one.
    pub fn len(&self) -> usize {
        1 + self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Letters that may legally be appended.
    pub fn extensions(&self) -> Vec<Direction> {
        match self.letters.last() {
            None => Direction::ALL.to_vec(),
            Some(d) => d.successors().to_vec(),
        }
    }

    pub fn push(&self, d: Direction) -> Result<PinWord> {
        let mut letters = self.letters.clone();
        letters.push(d);
        PinWord::new(self.quadrant, letters)
    }

    /// The initial segment `w_{1,j}`.
    pub fn prefix(&self, j: usize) -> Result<PinWord> {
        if j == 0 || j > self.len() {
            return Err(Error::IndexOutOfRange(format!("prefix length {j} of {}", self)));
        }
        Ok(PinWord { quadrant: self.quadrant, letters: self.letters[..j - 1].to_vec() })
    }

    /// The pin factor `w_{i,j}` of this finite word.
    pub fn factor(&self, i: usize, j: usize) -> Result<PinWord> {
        if i == 0 || j < i || j > self.len() {
            return Err(Error::IndexOutOfRange(format!("factor ({i},{j}) of {}", self)));
        }
        if i == 1 {
            return self.prefix(j);
        }
        let quadrant = pimap::point_quadrant(&self.prefix(i)?, i)?;
        Ok(PinWord { quadrant, letters: self.letters[i - 1..j - 1].to_vec() })
    }

    /// Every pin word of length `n`.
    pub fn all_of_length(n: usize) -> Vec<PinWord> {
        let mut words: Vec<PinWord> = Quadrant::ALL.iter().map(|&q| PinWord::numeral(q)).collect();
        for _ in 1..n {
            words = words
                .iter()
                .flat_map(|w| {
                    w.extensions().into_iter().map(move |d| {
                        let mut letters = w.letters.clone();
                        letters.push(d);
                        PinWord { quadrant: w.quadrant, letters }
                    })
                })
                .collect();
        }
        words
    }
}

impl fmt::Display for PinWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.quadrant)?;
        for d in &self.letters {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for PinWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PinWord::parse(s)
    }
}

impl Serialize for PinWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PinWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        PinWord::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Which pin factors to count: every factor, or only those recurring at
/// arbitrarily late start positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorMode {
    All,
    Recurrent,
}

/// An eventually periodic pin sequence `q · prefix · cycle · cycle · …`.
///
/// Equality and hashing compare the canonical form (shortest prefix,
/// minimal period); display keeps the input as written.
#[derive(Clone, Debug)]
pub struct PinSpec {
    quadrant: Quadrant,
    prefix: Vec<Direction>,
    cycle: Vec<Direction>,
}

impl PinSpec {
    pub fn new(quadrant: Quadrant, prefix: Vec<Direction>, cycle: Vec<Direction>) -> Result<Self> {
        let shown = || {
            let p: String = prefix.iter().map(|d| d.as_char()).collect();
            let c: String = cycle.iter().map(|d| d.as_char()).collect();
            format!("{quadrant}{p}({c})*")
        };
        if cycle.is_empty() {
            return Err(Error::MalformedSyntax(format!("{} has an empty cycle", shown())));
        }
        check_alternation(&prefix, 1)?;
        if let (Some(a), Some(b)) = (prefix.last(), cycle.first()) {
            if a.alignment() == b.alignment() {
                return Err(Error::AlignmentViolation {
                    position: prefix.len() + 1,
                    first: a.as_char(),
                    second: b.as_char(),
                });
            }
        }
        let mut doubled = cycle.clone();
        doubled.extend_from_slice(&cycle);
        if check_alternation(&doubled, 0).is_err() {
            return Err(Error::NonAlternatingCycle(shown()));
        }
        Ok(PinSpec { quadrant, prefix, cycle })
    }

    /// Parses `2ru(ld)*`; whitespace and letter case are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let s = squeeze(text).to_ascii_lowercase();
        if s.is_empty() {
            return Err(Error::EmptyInput);
        }
        let open = s.find('(').ok_or_else(|| Error::MalformedSyntax(text.to_string()))?;
        let body = s[open + 1..]
            .strip_suffix(")*")
            .ok_or_else(|| Error::MalformedSyntax(text.to_string()))?;
        if body.contains(['(', ')', '*']) {
            return Err(Error::MalformedSyntax(text.to_string()));
        }
        let mut head = s[..open].chars();
        let quadrant = parse_numeral(head.next(), text)?;
        let prefix = parse_letters(head.as_str(), text)?;
        let cycle = parse_letters(body, text)?;
        if cycle.is_empty() {
            return Err(Error::MalformedSyntax(text.to_string()));
        }
        PinSpec::new(quadrant, prefix, cycle)
    }

    pub fn quadrant(&self) -> Quadrant {
        self.quadrant
    }

    pub fn prefix_letters(&self) -> &[Direction] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[Direction] {
        &self.cycle
    }

    /// Number of prefix symbols, numeral included.
    pub fn prefix_len(&self) -> usize {
        1 + self.prefix.len()
    }

    pub fn period(&self) -> usize {
        self.cycle.len()
    }

    /// Letter at 1-based position `k >= 2`.
    pub fn letter(&self, k: usize) -> Direction {
        assert!(k >= 2, "position 1 holds the numeral");
        let i = k - 2;
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.cycle[(i - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// The initial segment `w_{1,n}` as a finite word.
    pub fn initial_segment(&self, n: usize) -> PinWord {
        assert!(n >= 1);
        PinWord { quadrant: self.quadrant, letters: (2..=n).map(|k| self.letter(k)).collect() }
    }

    /// Shortest prefix and minimal period.
    pub fn canonical(&self) -> PinSpec {
        let c = self.cycle.len();
        let period = (1..=c)
            .find(|&p| c.is_multiple_of(p) && (0..c).all(|i| self.cycle[i] == self.cycle[i % p]))
            .unwrap_or(c);
        let mut prefix = self.prefix.clone();
        let mut cycle = self.cycle[..period].to_vec();
        while let Some(&last) = prefix.last() {
            if last != *cycle.last().unwrap() {
                break;
            }
            prefix.pop();
            cycle.rotate_right(1);
        }
        PinSpec { quadrant: self.quadrant, prefix, cycle }
    }

    /// Quadrants of `p_1..p_n`, read off the π-map geometry.
    pub fn point_quadrants(&self, n: usize) -> Vec<Quadrant> {
        pimap::point_quadrants(&self.initial_segment(n))
    }

    /// The pin factor `w_{i,j}`.
    pub fn pin_factor(&self, i: usize, j: usize) -> Result<PinWord> {
        if i == 0 || j < i {
            return Err(Error::IndexOutOfRange(format!("factor ({i},{j})")));
        }
        self.initial_segment(j).factor(i, j)
    }

    /// The left-truncation `w_{≥n}`.
    pub fn left_truncate(&self, n: usize) -> Result<PinSpec> {
        if n == 0 {
            return Err(Error::IndexOutOfRange("truncation position 0".into()));
        }
        if n == 1 {
            return Ok(self.clone());
        }
        let quadrant = pimap::point_quadrant(&self.initial_segment(n), n)?;
        let p = self.prefix_len();
        if n < p {
            PinSpec::new(quadrant, self.prefix[n - 1..].to_vec(), self.cycle.clone())
        } else {
            let mut cycle = self.cycle.clone();
            let shift = (n - p) % cycle.len();
            cycle.rotate_left(shift);
            PinSpec::new(quadrant, Vec::new(), cycle)
        }
    }

    /// Last start position needed to see every distinct factor.
    pub fn last_start(&self) -> usize {
        self.prefix_len() + 1 + self.period()
    }

    /// Start positions whose factors recur: the quadrant of `p_i` is fixed by
    /// letters `i-1` and `i`, so every start past `prefix_len() + 1`
    /// repeats with the cycle.
    pub fn recurrent_starts(&self) -> std::ops::RangeInclusive<usize> {
        self.prefix_len() + 2..=self.last_start()
    }

    /// Distinct pin factors of length `n`.
    pub fn enumerate_pin_factors(&self, n: usize, mode: FactorMode) -> BTreeSet<PinWord> {
        assert!(n >= 1, "factor length must be positive");
        let last = self.last_start();
        let seg = self.initial_segment(last + n - 1);
        let quadrants = pimap::point_quadrants(&seg);
        let first = match mode {
            FactorMode::All => 1,
            FactorMode::Recurrent => *self.recurrent_starts().start(),
        };
        (first..=last)
            .map(|i| {
                let quadrant = if i == 1 { self.quadrant } else { quadrants[i - 1] };
                PinWord { quadrant, letters: seg.letters[i - 1..i + n - 2].to_vec() }
            })
            .collect()
    }

    /// Stabilisation window: factor counts are constant from here on.
    pub fn stabilization_length(&self) -> usize {
        self.prefix_len() + 2 * self.period() + 2
    }

    pub fn is_recurrent(&self) -> bool {
        (1..=self.stabilization_length()).all(|n| {
            self.enumerate_pin_factors(n, FactorMode::All)
                == self.enumerate_pin_factors(n, FactorMode::Recurrent)
        })
    }

    /// Factor counts for lengths `1..=L+c`, checked constant over `[L, L+c]`.
    pub fn factor_counts(&self, mode: FactorMode) -> Result<Vec<usize>> {
        let l = self.stabilization_length();
        let counts: Vec<usize> = (1..=l + self.period())
            .map(|n| self.enumerate_pin_factors(n, mode).len())
            .collect();
        if counts[l - 1..].iter().any(|&c| c != counts[l - 1]) {
            return Err(Error::StabilizationFailure(format!("{self}: factor counts {counts:?}")));
        }
        Ok(counts)
    }
}

impl PartialEq for PinSpec {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.canonical(), other.canonical());
        a.quadrant == b.quadrant && a.prefix == b.prefix && a.cycle == b.cycle
    }
}

impl Eq for PinSpec {}

impl Hash for PinSpec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let c = self.canonical();
        c.quadrant.hash(state);
        c.prefix.hash(state);
        c.cycle.hash(state);
    }
}

impl fmt::Display for PinSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.quadrant)?;
        for d in &self.prefix {
            write!(f, "{d}")?;
        }
        write!(f, "(")?;
        for d in &self.cycle {
            write!(f, "{d}")?;
        }
        write!(f, ")*")
    }
}

impl FromStr for PinSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PinSpec::parse(s)
    }
}

impl Serialize for PinSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PinSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        PinSpec::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> PinWord {
        s.parse().unwrap()
    }

    fn spec(s: &str) -> PinSpec {
        s.parse().unwrap()
    }

    fn words(items: &[&str]) -> BTreeSet<PinWord> {
        items.iter().map(|s| w(s)).collect()
    }

    #[test]
    fn parse_words() {
        let a = w("2lurdld");
        assert_eq!(a.quadrant, Quadrant::Two);
        assert_eq!(a.to_string(), "2lurdld");
        assert_eq!(a.len(), 7);
        assert_eq!(w("1").letters, vec![]);
        assert_eq!(w(" 1 R u "), w("1ru"));
        assert_eq!(
            PinWord::parse("1uu"),
            Err(Error::AlignmentViolation { position: 2, first: 'u', second: 'u' })
        );
        assert_eq!(PinWord::parse(""), Err(Error::EmptyInput));
        assert!(matches!(PinWord::parse("5u"), Err(Error::MalformedSyntax(_))));
        assert!(matches!(PinWord::parse("1x"), Err(Error::MalformedSyntax(_))));
    }

    #[test]
    fn parse_specs() {
        let a = spec("1(ru)*");
        assert_eq!(a.quadrant(), Quadrant::One);
        assert!(a.prefix_letters().is_empty());
        assert_eq!(a.cycle(), &[Direction::R, Direction::U]);
        let y = spec("1(uldlur)*");
        assert_eq!(y.cycle().len(), 6);
        assert!(matches!(PinSpec::parse("1(rr)*"), Err(Error::NonAlternatingCycle(_))));
        assert!(matches!(PinSpec::parse("1(r)*"), Err(Error::NonAlternatingCycle(_))));
        assert!(matches!(PinSpec::parse("1r(rr)*"), Err(Error::AlignmentViolation { .. })));
        assert!(matches!(PinSpec::parse("1ru"), Err(Error::MalformedSyntax(_))));
        assert!(matches!(PinSpec::parse("1()*"), Err(Error::MalformedSyntax(_))));
        assert_eq!(PinSpec::parse(" "), Err(Error::EmptyInput));
    }

    #[test]
    fn canonical_equality() {
        assert_eq!(spec("1(ruru)*"), spec("1(ru)*"));
        assert_eq!(spec("1ru(ru)*"), spec("1(ru)*"));
        assert_eq!(spec("1r(ur)*"), spec("1(ru)*"));
        assert_ne!(spec("1(ur)*"), spec("1(ru)*"));
        assert_eq!(spec("1r(ur)*").to_string(), "1r(ur)*");
    }

    #[test]
    fn pin_factors_of_finite_words() {
        let a = w("2ruldlurdru");
        assert_eq!(a.factor(5, 9).unwrap(), w("3lurd"));
        assert_eq!(a.factor(9, 11).unwrap(), w("4ru"));
        assert_eq!(a.factor(1, 1).unwrap(), w("2"));
        assert!(matches!(a.factor(5, 4), Err(Error::IndexOutOfRange(_))));
        let s = spec("2ruldlurd(ru)*");
        assert_eq!(s.pin_factor(5, 9).unwrap(), w("3lurd"));
        assert_eq!(s.pin_factor(9, 11).unwrap(), w("4ru"));
        assert_eq!(s.pin_factor(1, 1).unwrap(), w("2"));
    }

    #[test]
    fn truncations() {
        let s = spec("3rurdl(ur)*");
        assert_eq!(s.left_truncate(4).unwrap(), spec("1dl(ur)*"));
        assert_eq!(s.left_truncate(4).unwrap().initial_segment(7), w("1dlurur"));
        assert_eq!(s.left_truncate(7).unwrap(), spec("2(ru)*"));
        assert_eq!(s.left_truncate(1).unwrap(), s);
        assert!(s.left_truncate(0).is_err());
    }

    #[test]
    fn factor_sets() {
        assert_eq!(spec("1(ru)*").enumerate_pin_factors(2, FactorMode::All), words(&["1r", "1u"]));
        assert_eq!(
            spec("1(uldlur)*").enumerate_pin_factors(1, FactorMode::All),
            words(&["1", "2", "3"])
        );
        assert!(!spec("1(ul)*")
            .enumerate_pin_factors(2, FactorMode::Recurrent)
            .contains(&w("1u")));
        assert!(spec("1(ul)*").enumerate_pin_factors(2, FactorMode::All).contains(&w("1u")));
    }

    #[test]
    fn recurrence() {
        assert!(spec("2(ul)*").is_recurrent());
        assert!(!spec("1(ul)*").is_recurrent());
        assert!(spec("1(ru)*").is_recurrent());
        assert!(spec("1(ldru)*").is_recurrent());
        assert!(spec("2(urul)*").is_recurrent());
        assert!(spec("1(uldlur)*").is_recurrent());
    }

    #[test]
    fn counts_stabilise() {
        let counts = spec("1(ru)*").factor_counts(FactorMode::All).unwrap();
        assert_eq!(&counts[..4], &[1, 2, 2, 2]);
    }

    #[test]
    fn all_words_counts() {
        assert_eq!(PinWord::all_of_length(1).len(), 4);
        for n in 2..8 {
            assert_eq!(PinWord::all_of_length(n).len(), 1 << (n + 2));
        }
    }
}
