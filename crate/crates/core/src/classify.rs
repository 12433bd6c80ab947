//! Which pin words give ⊞-decomposable permutations, and which sets of
//! words give the same permutation.
//!
//! Both lists are short families of words, written once as orbit
//! representatives and closed under the eight symmetries of the square.
//! `verify_tables` re-derives both lists from scratch by mapping every word
//! of a given length and compares.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::cperm::CentredPerm;
use crate::pimap::pi_map;
use crate::pinword::PinWord;
use crate::symmetry::Symmetry;

/// `prefix · unit^k · suffix`.
#[derive(Clone, Copy, Debug)]
struct Pattern {
    prefix: &'static str,
    unit: &'static str,
    suffix: &'static str,
}

const fn pat(prefix: &'static str, unit: &'static str, suffix: &'static str) -> Pattern {
    Pattern { prefix, unit, suffix }
}

impl Pattern {
    fn instantiate(&self, n: usize) -> Option<String> {
        let fixed = self.prefix.len() + self.suffix.len();
        if n < fixed {
            return None;
        }
        let rest = n - fixed;
        let k = match self.unit.len() {
            0 if rest == 0 => 0,
            0 => return None,
            u if rest.is_multiple_of(u) => rest / u,
            _ => return None,
        };
        Some(format!("{}{}{}", self.prefix, self.unit.repeat(k), self.suffix))
    }

    fn matches(&self, s: &str) -> bool {
        self.instantiate(s.len()).is_some_and(|t| t == s)
    }
}

#[derive(Clone, Copy, Debug)]
struct Family {
    members: &'static [Pattern],
    min_len: usize,
    max_len: Option<usize>,
    parity: Option<usize>,
}

impl Family {
    fn applies(&self, n: usize) -> bool {
        n >= self.min_len
            && self.max_len.is_none_or(|m| n <= m)
            && self.parity.is_none_or(|p| n % 2 == p)
    }

    fn instantiate(&self, n: usize) -> Option<Vec<PinWord>> {
        if !self.applies(n) {
            return None;
        }
        self.members
            .iter()
            .map(|m| m.instantiate(n).map(|s| s.parse().expect("family words are valid")))
            .collect()
    }
}

const fn exact(members: &'static [Pattern], n: usize) -> Family {
    Family { members, min_len: n, max_len: Some(n), parity: None }
}

const fn from(members: &'static [Pattern], n: usize) -> Family {
    Family { members, min_len: n, max_len: None, parity: Some(n % 2) }
}

const DECOMPOSABLE: &[Family] = &[
    exact(&[pat("1l", "", "")], 2),
    exact(&[pat("1ld", "", "")], 3),
    from(&[pat("1", "ur", "uld")], 4),
    from(&[pat("1", "ru", "ld")], 5),
    from(&[pat("1l", "dl", "")], 4),
    from(&[pat("1ld", "ld", "")], 5),
];

const COLLISIONS: &[Family] = &[
    exact(&[pat("1u", "", ""), pat("1r", "", "")], 2),
    exact(&[pat("1ul", "", ""), pat("2ru", "", "")], 3),
    exact(&[pat("1ldr", "", ""), pat("2dru", "", ""), pat("3rul", "", ""), pat("4uld", "", "")],
        4,
    ),
    exact(&[pat("1uldl", "", ""), pat("3luru", "", "")], 5),
    from(&[pat("1", "ld", "lu"), pat("2", "dl", "ur")], 5),
    from(&[pat("1ld", "ld", "r"), pat("2", "dl", "dru")], 6),
];

fn orbit_words(words: &[PinWord]) -> Vec<Vec<PinWord>> {
    Symmetry::all()
        .iter()
        .map(|s| words.iter().map(|w| s.word(w)).collect())
        .collect()
}

/// Closed-form list of decomposable words of length `n`.
pub fn decomposable_words(n: usize) -> BTreeSet<PinWord> {
    DECOMPOSABLE
        .iter()
        .filter_map(|f| f.instantiate(n))
        .flat_map(|ws| orbit_words(&ws).into_iter().flatten())
        .collect()
}

/// Closed-form list of collision groups of length `n`.
pub fn collision_groups(n: usize) -> BTreeSet<BTreeSet<PinWord>> {
    COLLISIONS
        .iter()
        .filter_map(|f| f.instantiate(n))
        .flat_map(|ws| orbit_words(&ws).into_iter().map(|g| g.into_iter().collect()))
        .collect()
}

pub fn is_decomposable_word(w: &PinWord) -> bool {
    let n = w.len();
    DECOMPOSABLE.iter().filter(|f| f.applies(n)).any(|f| {
        Symmetry::all()
            .iter()
            .any(|s| f.members.iter().any(|m| m.matches(&s.word(w).to_string())))
    })
}

/// The colliding set containing `w`; `{w}` when `w` collides with nothing.
pub fn collision_group(w: &PinWord) -> BTreeSet<PinWord> {
    let n = w.len();
    for f in COLLISIONS.iter().filter(|f| f.applies(n)) {
        for s in Symmetry::all() {
            let image = s.word(w).to_string();
            if f.members.iter().any(|m| m.matches(&image)) {
                let inv = s.inverse();
                return f
                    .instantiate(n)
                    .expect("family applies")
                    .iter()
                    .map(|m| inv.word(m))
                    .collect();
            }
        }
    }
    BTreeSet::from([w.clone()])
}

/// Distinct images lost to collisions: for each group, the number of its
/// members present beyond the first.
pub fn overcount(words: &BTreeSet<PinWord>) -> usize {
    let lengths: BTreeSet<usize> = words.iter().map(PinWord::len).collect();
    lengths
        .into_iter()
        .flat_map(collision_groups)
        .map(|g| g.iter().filter(|w| words.contains(*w)).count().saturating_sub(1))
        .sum()
}

/// Overcount per length, for factor sets listed by length.
pub fn overcount_series(factor_sets_by_length: &[BTreeSet<PinWord>]) -> Vec<usize> {
    factor_sets_by_length.iter().map(overcount).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub length: usize,
    pub word_count: usize,
    pub decomposable_words: BTreeSet<PinWord>,
    pub collision_groups: BTreeSet<BTreeSet<PinWord>>,
    pub distinct_indecomposables: usize,
    pub overcount: usize,
    pub table_match: bool,
    pub discrepancies: Vec<String>,
}

impl ClassificationReport {
    /// Group sizes with multiplicities, e.g. `{2: 8}`.
    pub fn group_sizes(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for g in &self.collision_groups {
            *out.entry(g.len()).or_insert(0) += 1;
        }
        out
    }
}

fn scan_length(n: usize) -> (Vec<PinWord>, BTreeMap<CentredPerm, Vec<PinWord>>) {
    let words = PinWord::all_of_length(n);
    let partitions: Vec<Vec<PinWord>> = {
        let mut parts: BTreeMap<String, Vec<PinWord>> = BTreeMap::new();
        for w in &words {
            let key: String = w.to_string().chars().take(2).collect();
            parts.entry(key).or_default().push(w.clone());
        }
        parts.into_values().collect()
    };
    let mapped: Vec<Vec<(CentredPerm, PinWord)>> = partitions
        .into_par_iter()
        .map(|part| part.into_iter().map(|w| (pi_map(&w), w)).collect())
        .collect();
    let mut images: BTreeMap<CentredPerm, Vec<PinWord>> = BTreeMap::new();
    for (p, w) in mapped.into_iter().flatten() {
        images.entry(p).or_default().push(w);
    }
    (words, images)
}

fn report_for_length(n: usize) -> ClassificationReport {
    let (words, images) = scan_length(n);
    let mut found_dec = BTreeSet::new();
    let mut found_groups = BTreeSet::new();
    let mut distinct = 0;
    for (p, ws) in &images {
        if p.indecomposable_unchecked() {
            distinct += 1;
        } else {
            found_dec.extend(ws.iter().cloned());
        }
        if ws.len() > 1 {
            found_groups.insert(ws.iter().cloned().collect::<BTreeSet<_>>());
        }
    }
    let mut discrepancies = Vec::new();

    let table_dec = decomposable_words(n);
    for w in found_dec.symmetric_difference(&table_dec) {
        let side = if found_dec.contains(w) { "found but not listed" } else { "listed but not found" };
        discrepancies.push(format!("decomposable {w}: {side}"));
    }
    for w in &words {
        if is_decomposable_word(w) != found_dec.contains(w) {
            discrepancies.push(format!("is_decomposable_word({w}) disagrees"));
        }
    }
    let table_groups = collision_groups(n);
    for g in found_groups.symmetric_difference(&table_groups) {
        let side = if found_groups.contains(g) { "found but not listed" } else { "listed but not found" };
        let names: Vec<String> = g.iter().map(|w| w.to_string()).collect();
        discrepancies.push(format!("collision {{{}}}: {side}", names.join(", ")));
    }
    for g in &found_groups {
        for w in g {
            if collision_group(w) != *g {
                discrepancies.push(format!("collision_group({w}) disagrees"));
            }
        }
    }

    for g in &found_groups {
        if g.len() != 2 && !(n == 4 && g.len() == 4) {
            discrepancies.push(format!("unexpected group size {} at length {n}", g.len()));
        }
        if g.iter().any(|w| found_dec.contains(w)) {
            discrepancies.push(format!("group {g:?} meets the decomposables"));
        }
        if n >= 5 {
            let finals: BTreeSet<_> = g.iter().map(|w| w.letters.last().copied()).collect();
            if finals.len() != g.len() {
                discrepancies.push(format!("group {g:?} is not minimal"));
            }
        }
    }
    if n == 4 && found_groups.iter().filter(|g| g.len() == 4).count() != 2 {
        discrepancies.push("expected exactly two quadruples at length 4".into());
    }
    let overcount = found_groups.iter().map(|g| g.len() - 1).sum();
    ClassificationReport {
        length: n,
        word_count: words.len(),
        decomposable_words: found_dec,
        collision_groups: found_groups,
        distinct_indecomposables: distinct,
        overcount,
        table_match: discrepancies.is_empty(),
        discrepancies,
    }
}

/// Exhaustively re-derives both tables for lengths `1..=n_max`.
pub fn verify_tables(n_max: usize, jobs: usize) -> Vec<ClassificationReport> {
    let run = || (1..=n_max).map(report_for_length).collect();
    match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    }
}
