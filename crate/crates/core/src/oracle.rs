//! Brute-force censuses of pin classes and checks of their counting
//! inequalities, used as an independent check on the generating functions.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::cperm::{adjacency_condition, CentredPerm, QuadrantProfile};
use crate::error::{Error, Result};
use crate::pimap::pi_map;
use crate::pinword::{FactorMode, PinSpec, PinWord};

/// Largest number of retained permutations before a census aborts.
pub const MEMORY_LIMIT: usize = 10_000_000;

pub const SUBSET_MAX_LEN: usize = 6;
pub const COMPOSITION_MAX_LEN: usize = 10;
pub const PIN_PERMUTATION_MAX_LEN: usize = 8;

/// Upper limit on subset-method segment growth, in cycle lengths.
const SUBSET_GROWTH_STEPS: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Subset,
    Composition,
    Representation,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "subset" => Ok(Method::Subset),
            "composition" => Ok(Method::Composition),
            "representation" => Ok(Method::Representation),
            other => Err(Error::MalformedSyntax(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassCensus {
    pub source: String,
    pub method: Method,
    pub n_max: usize,
    /// `counts[n]` is the number of members of length `n`.
    pub counts: Vec<u64>,
    #[serde(skip)]
    pub perms: Vec<BTreeSet<CentredPerm>>,
    /// Segment length at which the subset method stopped.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub segment_length: Option<usize>,
    /// The subset method stops on observed stability, not on a proven bound.
    pub empirical: bool,
}

impl ClassCensus {
    fn from_levels(source: String, method: Method, levels: Vec<BTreeSet<CentredPerm>>) -> Self {
        ClassCensus {
            source,
            method,
            n_max: levels.len() - 1,
            counts: levels.iter().map(|l| l.len() as u64).collect(),
            perms: levels,
            segment_length: None,
            empirical: false,
        }
    }

    /// Members in one-line notation, shortest first.
    pub fn dump(&self) -> impl Iterator<Item = String> + '_ {
        self.perms.iter().flatten().map(CentredPerm::to_oneline)
    }

    pub fn retained(&self) -> usize {
        self.perms.iter().map(BTreeSet::len).sum()
    }
}

/// Runs `f` on a thread pool of `jobs` workers.
pub fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

fn guard(total: usize) -> Result<()> {
    if total > MEMORY_LIMIT {
        return Err(Error::MemoryGuard { limit: MEMORY_LIMIT });
    }
    Ok(())
}

/// All ways of adding one point to `p`, with the origin kept.
pub fn one_point_insertions(p: &CentredPerm) -> Vec<CentredPerm> {
    let filled = p.filled();
    let size = filled.len();
    let mut out = Vec::with_capacity((size + 1) * (size + 1));
    for x in 0..=size {
        for y in 0..=size as u32 {
            let mut f: Vec<u32> = filled.iter().map(|&v| if v >= y { v + 1 } else { v }).collect();
            f.insert(x, y);
            let origin = if x <= p.origin_index() { p.origin_index() + 1 } else { p.origin_index() };
            out.push(CentredPerm::new(f.iter().map(|v| v + 1).collect(), origin + 1).expect("valid insertion"));
        }
    }
    out
}

/// Length-`≤ n_max` centred subpermutations of `host`, grown level by level
/// from one-point insertions tested for containment.
fn subpatterns(host: &CentredPerm, n_max: usize) -> Result<Vec<BTreeSet<CentredPerm>>> {
    let mut levels = vec![BTreeSet::from([CentredPerm::empty()])];
    let mut total = 1;
    for n in 1..=n_max.min(host.len()) {
        let candidates: BTreeSet<CentredPerm> =
            levels[n - 1].iter().flat_map(one_point_insertions).collect();
        let level: BTreeSet<CentredPerm> = candidates
            .into_par_iter()
            .filter(|c| host.contains(c))
            .collect();
        total += level.len();
        guard(total)?;
        levels.push(level);
    }
    levels.resize(n_max + 1, BTreeSet::new());
    Ok(levels)
}

/// Census of the pin class by extracting subpermutations of `π°` of ever
/// longer initial segments until the counts stop changing.
pub fn enumerate_class_subset(spec: &PinSpec, n_max: usize, allow_large: bool) -> Result<ClassCensus> {
    if n_max > SUBSET_MAX_LEN && !allow_large {
        return Err(Error::OutOfSupportedRange(format!(
            "subset method limited to n <= {SUBSET_MAX_LEN}"
        )));
    }
    let c = spec.period();
    let start = (n_max + 1) * (spec.prefix_len() + c) + n_max;
    let cap = start + SUBSET_GROWTH_STEPS * c;
    let mut m = start;
    let mut previous: Option<Vec<u64>> = None;
    let mut stable_rounds = 0;
    while m <= cap {
        let levels = subpatterns(&pi_map(&spec.initial_segment(m)), n_max)?;
        let counts: Vec<u64> = levels.iter().map(|l| l.len() as u64).collect();
        if previous.as_ref() == Some(&counts) {
            stable_rounds += 1;
            if stable_rounds == 2 {
                let mut census = ClassCensus::from_levels(spec.to_string(), Method::Subset, levels);
                census.segment_length = Some(m);
                census.empirical = true;
                return Ok(census);
            }
        } else {
            stable_rounds = 0;
        }
        previous = Some(counts);
        m += c;
    }
    Err(Error::ConvergenceNotReached(format!(
        "{spec}: counts still changing at segment length {cap}"
    )))
}

/// Every `⊞`-composition of the given building blocks with total length at
/// most `n_max`. `blocks[k]` holds the blocks of length `k`.
pub fn compose_census(blocks: &[BTreeSet<CentredPerm>], n_max: usize) -> Result<Vec<BTreeSet<CentredPerm>>> {
    let mut levels: Vec<BTreeSet<CentredPerm>> = vec![BTreeSet::from([CentredPerm::empty()])];
    let mut total = 1;
    for n in 1..=n_max {
        let pairs: Vec<(&CentredPerm, usize)> = (1..=n.min(blocks.len().saturating_sub(1)))
            .flat_map(|k| blocks[k].iter().map(move |b| (b, k)))
            .collect();
        let level = pairs
            .par_iter()
            .map(|&(outer, k)| {
                levels[n - k]
                    .iter()
                    .map(|inner| CentredPerm::box_sum(inner, outer))
                    .collect::<BTreeSet<_>>()
            })
            .reduce(BTreeSet::new, |mut a, mut b| {
                if a.len() < b.len() {
                    std::mem::swap(&mut a, &mut b);
                }
                a.extend(b);
                a
            });
        total += level.len();
        guard(total)?;
        levels.push(level);
    }
    Ok(levels)
}

fn factor_blocks(spec: &PinSpec, n_max: usize) -> Vec<BTreeSet<CentredPerm>> {
    (0..=n_max)
        .map(|k| {
            if k == 0 {
                BTreeSet::new()
            } else {
                spec.enumerate_pin_factors(k, FactorMode::All).iter().map(pi_map).collect()
            }
        })
        .collect()
}

/// Census of a recurrent pin class as all `⊞`-compositions of π-images of
/// its pin factors.
pub fn enumerate_class_composition(spec: &PinSpec, n_max: usize) -> Result<ClassCensus> {
    if !spec.is_recurrent() {
        return Err(Error::NotRecurrent(spec.to_string()));
    }
    if n_max > COMPOSITION_MAX_LEN {
        return Err(Error::OutOfSupportedRange(format!(
            "composition method limited to n <= {COMPOSITION_MAX_LEN}"
        )));
    }
    let levels = compose_census(&factor_blocks(spec, n_max), n_max)?;
    Ok(ClassCensus::from_levels(spec.to_string(), Method::Composition, levels))
}

/// Census of all pin permutations: compositions of π-images of arbitrary
/// pin words.
pub fn enumerate_pin_permutations(n_max: usize) -> Result<ClassCensus> {
    if n_max > PIN_PERMUTATION_MAX_LEN {
        return Err(Error::OutOfSupportedRange(format!(
            "pin permutation census limited to n <= {PIN_PERMUTATION_MAX_LEN}"
        )));
    }
    let blocks: Vec<BTreeSet<CentredPerm>> = (0..=n_max)
        .map(|k| {
            if k == 0 {
                BTreeSet::new()
            } else {
                PinWord::all_of_length(k).iter().map(pi_map).collect()
            }
        })
        .collect();
    let levels = compose_census(&blocks, n_max)?;
    Ok(ClassCensus::from_levels("complete".into(), Method::Representation, levels))
}

/// Census of the `⊞`-closure of a finite generator set.
pub fn enumerate_finite_closure(generators: &[CentredPerm], n_max: usize) -> Result<ClassCensus> {
    if generators.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut blocks = vec![BTreeSet::new(); n_max + 1];
    for p in crate::pipeline::finite_closure_indecomposables(generators) {
        if p.len() <= n_max {
            blocks[p.len()].insert(p);
        }
    }
    let levels = compose_census(&blocks, n_max)?;
    let names: Vec<String> = generators.iter().map(CentredPerm::to_oneline).collect();
    Ok(ClassCensus::from_levels(
        format!("closure of {{{}}}", names.join(", ")),
        Method::Composition,
        levels,
    ))
}

/// Whether every member is a `⊞`-sum of π-images of pin factors of `spec`.
pub fn decomposes_into_factors(census: &ClassCensus, spec: &PinSpec) -> bool {
    let blocks = factor_blocks(spec, census.n_max);
    census.perms.iter().flatten().all(|p| {
        p.box_decompose()
            .iter()
            .all(|part| blocks.get(part.len()).is_some_and(|b| b.contains(part)))
    })
}

/// Whether the census satisfies the adjacency condition: its members
/// jointly occupy one quadrant or two adjacent quadrants.
pub fn census_adjacency(census: &ClassCensus) -> bool {
    let quadrants = census
        .perms
        .iter()
        .flatten()
        .flat_map(|p| (0..p.filled().len()).filter(move |&i| i != p.origin_index()).map(move |i| p.quadrant_at(i)));
    adjacency_condition(&QuadrantProfile::from_quadrants(quadrants))
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PropertyReport {
    pub checks: usize,
    pub violations: Vec<String>,
    pub supermultiplicative_skipped: bool,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `C_{m+n} >= C_{m-1} C_{n-1}` and `144 C_{m+n} >= C_m C_n` (when
/// `adjacency` holds and the class is closed) and `C_n <= 12 C_{n-1}`.
pub fn property_suite(census: &ClassCensus, closed: bool, adjacency: bool) -> PropertyReport {
    let c: Vec<u128> = census.counts.iter().map(|&x| x as u128).collect();
    let top = c.len() - 1;
    let mut report = PropertyReport { supermultiplicative_skipped: !(closed && adjacency), ..Default::default() };
    for n in 1..=top {
        report.checks += 1;
        if c[n] > 12 * c[n - 1] {
            report.violations.push(format!("C_{n} = {} > 12 C_{} = {}", c[n], n - 1, 12 * c[n - 1]));
        }
    }
    if report.supermultiplicative_skipped {
        return report;
    }
    for m in 1..top {
        for n in 1..=top - m {
            report.checks += 2;
            if c[m + n] < c[m - 1] * c[n - 1] {
                report.violations.push(format!(
                    "C_{} = {} < C_{} C_{} = {}",
                    m + n,
                    c[m + n],
                    m - 1,
                    n - 1,
                    c[m - 1] * c[n - 1]
                ));
            }
            if 144 * c[m + n] < c[m] * c[n] {
                report.violations.push(format!("144 C_{} < C_{m} C_{n}", m + n));
            }
        }
    }
    report
}

#[derive(Clone, Debug, Serialize)]
pub struct UncentredReport {
    pub uncentred: Vec<u64>,
    pub centred: Vec<u64>,
    pub violations: Vec<String>,
}

/// Strips origins and checks `C_n <= C°_n <= (n+1)^2 C_n`.
pub fn centred_uncentred_check(census: &ClassCensus) -> UncentredReport {
    let uncentred: Vec<u64> = census
        .perms
        .iter()
        .map(|level| level.iter().map(CentredPerm::strip_origin).collect::<BTreeSet<_>>().len() as u64)
        .collect();
    let mut violations = Vec::new();
    for (n, (&u, &c)) in uncentred.iter().zip(&census.counts).enumerate() {
        let square = ((n + 1) * (n + 1)) as u64;
        if u > c || c > square * u {
            violations.push(format!("n = {n}: C = {u}, C° = {c}"));
        }
    }
    UncentredReport { uncentred, centred: census.counts.clone(), violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline;

    fn spec(s: &str) -> PinSpec {
        s.parse().unwrap()
    }

    fn gf_counts(s: &str, n: usize) -> Vec<u64> {
        pipeline::counts_of(&pipeline::class_gf(&spec(s)).unwrap(), n).unwrap()
    }

    #[test]
    fn insertions() {
        let e = CentredPerm::empty();
        let ins: BTreeSet<_> = one_point_insertions(&e).into_iter().collect();
        assert_eq!(ins, CentredPerm::single_points().into_iter().collect());
        assert_eq!(one_point_insertions(&"[1]2".parse().unwrap()).len(), 9);
    }

    #[test]
    fn subset_method() {
        let c = enumerate_class_subset(&spec("1(ru)*"), 4, false).unwrap();
        assert_eq!(c.counts, gf_counts("1(ru)*", 4));
        assert_eq!(c.counts[0], 1);
        assert!(c.empirical);
        let c = enumerate_class_subset(&spec("1(ldru)*"), 5, false).unwrap();
        assert_eq!(c.counts, gf_counts("1(ldru)*", 5));
        assert!(enumerate_class_subset(&spec("1(ru)*"), 7, false).is_err());
    }

    #[test]
    fn composition_method() {
        let c = enumerate_class_composition(&spec("2(urul)*"), 8).unwrap();
        assert_eq!(c.counts, gf_counts("2(urul)*", 8));
        assert!(decomposes_into_factors(&c, &spec("2(urul)*")));
        let c = enumerate_class_composition(&spec("1(uldlur)*"), 7).unwrap();
        assert_eq!(c.counts, gf_counts("1(uldlur)*", 7));
        let c = enumerate_class_composition(&spec("1(ru)*"), 0).unwrap();
        assert_eq!(c.counts, vec![1]);
        assert_eq!(
            enumerate_class_composition(&spec("1(ul)*"), 4).unwrap_err(),
            Error::NotRecurrent("1(ul)*".into())
        );
    }

    #[test]
    fn methods_agree() {
        for s in ["2(urul)*", "1(uldlur)*"] {
            let a = enumerate_class_subset(&spec(s), 5, false).unwrap();
            let b = enumerate_class_composition(&spec(s), 5).unwrap();
            assert_eq!(a.perms, b.perms, "{s}");
        }
    }

    #[test]
    fn pin_permutations() {
        let c = enumerate_pin_permutations(5).unwrap();
        assert_eq!(c.counts[1], 4);
        let all = crate::cperm::Quadrant::ALL.into_iter().collect();
        let gf = pipeline::counts_of(&pipeline::complete_class_gf(&all).unwrap(), 5).unwrap();
        assert_eq!(c.counts, gf);
    }

    #[test]
    fn properties() {
        let o = enumerate_class_composition(&spec("1(ru)*"), 8).unwrap();
        let r = property_suite(&o, true, census_adjacency(&o));
        assert!(r.passed() && !r.supermultiplicative_skipped);
        let pts = CentredPerm::single_points();
        let two = enumerate_finite_closure(&[pts[0].clone(), pts[2].clone()], 6).unwrap();
        assert!(!census_adjacency(&two));
        assert!(property_suite(&two, true, false).supermultiplicative_skipped);
    }

    #[test]
    fn uncentred() {
        let x = enumerate_finite_closure(&CentredPerm::single_points(), 6).unwrap();
        let r = centred_uncentred_check(&x);
        assert_eq!(r.uncentred, vec![1, 1, 2, 6, 20, 68, 232]);
        assert!(r.violations.is_empty());
        let w = enumerate_class_composition(&spec("1(ldru)*"), 5).unwrap();
        assert!(centred_uncentred_check(&w).violations.is_empty());
    }
}
