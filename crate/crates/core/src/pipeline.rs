//! From pin sequences and generator sets to generating functions and growth
//! rates.
//!
//! The indecomposables of a ⊞-closed class are counted per length (all of
//! them in `g`, the one-quadrant ones per quadrant in `g_q`). The class is
//! then enumerated by `Seq(G)` with `G = g - g_1 g_3 - g_2 g_4`, the
//! correction accounting for commuting opposite-quadrant pairs.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::classify;
use crate::cperm::{CentredPerm, Quadrant};
use crate::error::{Error, Result};
use crate::growth::{self, GrowthResult, GrowthTarget, Sturm, DEFAULT_DIGITS};
use crate::pimap::{self, pi_map};
use crate::pinword::{Alignment, Direction, FactorMode, PinSpec, PinWord};
use crate::series::{rat, ratio, Poly, RatGF};

/// Number of `G` coefficients checked against the coefficient bounds.
pub const BOUND_TERMS: usize = 30;

/// Which class of a pin sequence to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassMode {
    /// The pin class itself; requires a recurrent sequence.
    Class,
    /// The ⊞-closure of the pin class.
    Closure,
    /// The ⊞-closure of the recurrent pin factors.
    Interior,
}

impl ClassMode {
    pub fn factor_mode(self) -> FactorMode {
        match self {
            ClassMode::Class | ClassMode::Closure => FactorMode::All,
            ClassMode::Interior => FactorMode::Recurrent,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GSequence {
    pub g: RatGF,
    pub g_quadrants: [RatGF; 4],
    #[serde(rename = "G")]
    pub big_g: RatGF,
}

impl GSequence {
    /// Assembles `G` and checks its first coefficients against the bounds
    /// `a_1 ∈ {1..4}` and `-8n <= a_n < 2^(n+2)`.
    pub fn new(g: RatGF, g_quadrants: [RatGF; 4]) -> Result<Self> {
        let [g1, g2, g3, g4] = &g_quadrants;
        let big_g = g.sub(&g1.mul(g3)).sub(&g2.mul(g4));
        let seq = GSequence { g, g_quadrants, big_g };
        seq.check_bounds()?;
        Ok(seq)
    }

    pub fn g_quadrant(&self, q: Quadrant) -> &RatGF {
        &self.g_quadrants[q.number() as usize - 1]
    }

    pub fn check_bounds(&self) -> Result<()> {
        let a = self.big_g.coeffs(BOUND_TERMS)?;
        for (n, c) in a.iter().enumerate().skip(1) {
            if !c.is_integer() {
                return Err(Error::BoundViolation(format!("a_{n} = {c} is not an integer")));
            }
            let c = c.to_integer();
            let ok = if n == 1 {
                (BigInt::from(1)..=BigInt::from(4)).contains(&c)
            } else {
                c >= BigInt::from(-8 * n as i64) && c < BigInt::from(2).pow(n as u32 + 2)
            };
            if !ok {
                return Err(Error::BoundViolation(format!("a_{n} = {c}")));
            }
        }
        Ok(())
    }

    /// `Seq(G)`.
    pub fn class_gf(&self) -> Result<RatGF> {
        self.big_g.seq()
    }
}

/// Per-length census of the distinct indecomposable images of pin factors.
#[derive(Clone, Debug, Serialize)]
pub struct IndecomposableCounts {
    pub counts: Vec<usize>,
    pub quadrant_counts: [Vec<usize>; 4],
    pub stabilization_length: usize,
}

fn indecomposable_images(words: &BTreeSet<PinWord>) -> BTreeSet<CentredPerm> {
    words
        .iter()
        .map(pi_map)
        .filter(|p| p.indecomposable_unchecked())
        .collect()
}

fn table_count(words: &BTreeSet<PinWord>) -> usize {
    let dec = words.iter().filter(|w| classify::is_decomposable_word(w)).count();
    words.len() - dec - classify::overcount(words)
}

/// Counts distinct indecomposable images of pin factors for lengths
/// `1..=L+c`, cross-checked against the classification tables.
pub fn count_indecomposables(spec: &PinSpec, mode: FactorMode) -> Result<IndecomposableCounts> {
    let l = spec.stabilization_length();
    let top = l + spec.period();
    let mut counts = Vec::with_capacity(top);
    let mut quadrant_counts: [Vec<usize>; 4] = Default::default();
    for n in 1..=top {
        let factors = spec.enumerate_pin_factors(n, mode);
        let images = indecomposable_images(&factors);
        let by_table = table_count(&factors);
        if by_table != images.len() {
            return Err(Error::TableMismatch(format!(
                "{spec}, length {n}: {} distinct images but tables give {by_table}",
                images.len()
            )));
        }
        counts.push(images.len());
        for q in Quadrant::ALL {
            quadrant_counts[q.number() as usize - 1]
                .push(images.iter().filter(|p| p.one_quadrant() == Some(q)).count());
        }
    }
    let stable = |v: &[usize]| v[l - 1..].iter().all(|&c| c == v[l - 1]);
    if !stable(&counts) || !quadrant_counts.iter().all(|v| stable(v)) {
        return Err(Error::StabilizationFailure(format!(
            "{spec}: counts {counts:?} not constant from length {l}"
        )));
    }
    Ok(IndecomposableCounts { counts, quadrant_counts, stabilization_length: l })
}

fn encode_counts(counts: &[usize], l: usize) -> RatGF {
    let head: Vec<i64> = counts[..l - 1].iter().map(|&c| c as i64).collect();
    RatGF::from_eventually_constant(&head, counts[l - 1] as i64, l).expect("consistent lengths")
}

/// `g(z)` of a pin sequence, with the per-length counts.
pub fn indecomposable_counts(spec: &PinSpec, mode: FactorMode) -> Result<(Vec<usize>, RatGF)> {
    let c = count_indecomposables(spec, mode)?;
    let g = encode_counts(&c.counts, c.stabilization_length);
    Ok((c.counts, g))
}

/// `g_q(z)`: one-quadrant indecomposables in quadrant `q`.
pub fn quadrant_indecomposable_counts(spec: &PinSpec, q: Quadrant, mode: FactorMode) -> Result<RatGF> {
    let c = count_indecomposables(spec, mode)?;
    Ok(encode_counts(&c.quadrant_counts[q.number() as usize - 1], c.stabilization_length))
}

fn check_no_early_pole(g: &GSequence, what: &str) -> Result<()> {
    let half = ratio(1, 2);
    if Sturm::new(g.big_g.den()).count(&BigRational::zero(), &half) != 0 {
        return Err(Error::EarlySingularity(format!("{what}: G has a pole in (0, 1/2]")));
    }
    Ok(())
}

pub fn amended_g(spec: &PinSpec, mode: FactorMode) -> Result<GSequence> {
    let c = count_indecomposables(spec, mode)?;
    let l = c.stabilization_length;
    let g = encode_counts(&c.counts, l);
    let gq = c.quadrant_counts.clone().map(|v| encode_counts(&v, l));
    let seq = GSequence::new(g, gq)?;
    check_no_early_pole(&seq, &spec.to_string())?;
    Ok(seq)
}

/// Generating function of the pin class of a recurrent sequence.
pub fn class_gf(spec: &PinSpec) -> Result<RatGF> {
    if !spec.is_recurrent() {
        return Err(Error::NotRecurrent(spec.to_string()));
    }
    amended_g(spec, FactorMode::All)?.class_gf()
}

/// Generating function of the ⊞-closure of the pin class.
pub fn closure_gf(spec: &PinSpec) -> Result<RatGF> {
    amended_g(spec, FactorMode::All)?.class_gf()
}

/// Generating function of the ⊞-interior.
pub fn interior_gf(spec: &PinSpec) -> Result<RatGF> {
    amended_g(spec, FactorMode::Recurrent)?.class_gf()
}

pub fn mode_g(spec: &PinSpec, mode: ClassMode) -> Result<GSequence> {
    if mode == ClassMode::Class && !spec.is_recurrent() {
        return Err(Error::NotRecurrent(spec.to_string()));
    }
    amended_g(spec, mode.factor_mode())
}

fn poly_gf(counts: &BTreeMap<usize, usize>) -> RatGF {
    let top = counts.keys().max().copied().unwrap_or(0);
    let coeffs: Vec<i64> = (0..=top).map(|n| *counts.get(&n).unwrap_or(&0) as i64).collect();
    RatGF::from_poly(Poly::from_ints(&coeffs))
}

/// `G` for the ⊞-closure of a finite set of centred permutations.
pub fn finite_closure_g(generators: &[CentredPerm]) -> Result<GSequence> {
    if generators.is_empty() {
        return Err(Error::EmptyInput);
    }
    let closure: BTreeSet<CentredPerm> =
        generators.iter().flat_map(CentredPerm::downward_closure).collect();
    let indecs: Vec<&CentredPerm> = closure
        .iter()
        .filter(|p| !p.is_empty() && p.indecomposable_unchecked())
        .collect();
    let mut all = BTreeMap::new();
    let mut per_q: [BTreeMap<usize, usize>; 4] = Default::default();
    for p in &indecs {
        *all.entry(p.len()).or_insert(0) += 1;
        if let Some(q) = p.one_quadrant() {
            *per_q[q.number() as usize - 1].entry(p.len()).or_insert(0) += 1;
        }
    }
    GSequence::new(poly_gf(&all), per_q.map(|m| poly_gf(&m)))
}

pub fn finite_closure_gf(generators: &[CentredPerm]) -> Result<RatGF> {
    finite_closure_g(generators)?.class_gf()
}

/// The indecomposables of a finite generator set's closure, by length.
pub fn finite_closure_indecomposables(generators: &[CentredPerm]) -> BTreeSet<CentredPerm> {
    generators
        .iter()
        .flat_map(CentredPerm::downward_closure)
        .filter(|p| !p.is_empty() && p.indecomposable_unchecked())
        .collect()
}

/// Quadrant of the point placed by letter `d` after a point in quadrant
/// `q`, read off the π-map of the two-symbol word `qd`.
pub fn step_quadrant(q: Quadrant, d: Direction) -> Quadrant {
    pimap::point_quadrants(&PinWord { quadrant: q, letters: vec![d] })[1]
}

fn connected(quadrants: &BTreeSet<Quadrant>) -> bool {
    let Some(&start) = quadrants.iter().next() else {
        return false;
    };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(q) = stack.pop() {
        for &r in quadrants {
            if q.is_adjacent(r) && seen.insert(r) {
                stack.push(r);
            }
        }
    }
    seen.len() == quadrants.len()
}

fn quadrant_set_name(quadrants: &BTreeSet<Quadrant>) -> String {
    let parts: Vec<String> = quadrants.iter().map(|q| q.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Characteristic polynomial `det(λI - A)` by Faddeev–LeVerrier, as
/// coefficients `[1, c_1, .., c_m]` of `λ^m + c_1 λ^(m-1) + ..`.
fn char_poly(a: &[Vec<BigRational>]) -> Vec<BigRational> {
    let m = a.len();
    let mul = |x: &[Vec<BigRational>], y: &[Vec<BigRational>]| -> Vec<Vec<BigRational>> {
        (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| (0..m).fold(BigRational::zero(), |acc, k| acc + &x[i][k] * &y[k][j]))
                    .collect()
            })
            .collect()
    };
    let mut c = vec![rat(1)];
    let mut mk = vec![vec![BigRational::zero(); m]; m];
    for k in 1..=m {
        let mut next = mul(a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[k - 1];
        }
        mk = next;
        let am = mul(a, &mk);
        let trace = (0..m).fold(BigRational::zero(), |acc, i| acc + &am[i][i]);
        c.push(-trace / rat(k as i64));
    }
    c
}

/// Generating function of pin words all of whose points lie in `quadrants`.
pub fn confined_words_gf(quadrants: &BTreeSet<Quadrant>) -> RatGF {
    let states: Vec<(Quadrant, Alignment)> = quadrants
        .iter()
        .flat_map(|&q| [(q, Alignment::Horizontal), (q, Alignment::Vertical)])
        .collect();
    let m = states.len();
    let index = |q: Quadrant, a: Alignment| states.iter().position(|&s| s == (q, a));
    let mut a = vec![vec![0i64; m]; m];
    let mut v = vec![0i64; m];
    for (j, &(q, al)) in states.iter().enumerate() {
        for d in Direction::ALL.into_iter().filter(|d| d.alignment() != al) {
            if let Some(i) = index(step_quadrant(q, d), d.alignment()) {
                a[i][j] += 1;
            }
        }
    }
    for &q in quadrants {
        for d in Direction::ALL {
            if let Some(i) = index(step_quadrant(q, d), d.alignment()) {
                v[i] += 1;
            }
        }
    }
    let terms = 3 * m + 8;
    // s_k = 1ᵀ A^k v counts confined words of length k + 2
    let mut s = Vec::with_capacity(terms);
    let mut cur = v.clone();
    for _ in 0..terms {
        s.push(cur.iter().sum::<i64>());
        cur = (0..m).map(|i| (0..m).map(|j| a[i][j] * cur[j]).sum()).collect();
    }
    let ar: Vec<Vec<BigRational>> = a.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    let den = Poly::new(char_poly(&ar));
    let series = Poly::from_ints(&s);
    let full = &series * &den;
    let num = Poly::new((0..m).map(|i| full.coeff(i)).collect());
    let tail = RatGF::new(num, den).expect("denominator has constant term 1");
    let h = RatGF::from_poly(Poly::monomial(rat(quadrants.len() as i64), 1))
        .add(&tail.mul(&RatGF::from_poly(Poly::monomial(rat(1), 2))));
    let check = h.int_coeffs(terms + 1).expect("no pole at 0");
    for (k, sk) in s.iter().enumerate() {
        assert_eq!(check[k + 2], BigInt::from(*sk), "transfer-matrix series mismatch");
    }
    h
}

fn confined(w: &PinWord, quadrants: &BTreeSet<Quadrant>) -> bool {
    pimap::point_quadrants(w).iter().all(|q| quadrants.contains(q))
}

/// Lengths through which decomposable and collision corrections are
/// tabulated before their period-2 tail is read off.
const CORRECTION_TERMS: usize = 14;
const CORRECTION_PERIOD_FROM: usize = 8;

/// Decomposables plus collision overcount among words confined to
/// `quadrants`, as an eventually periodic series.
fn confined_corrections(quadrants: &BTreeSet<Quadrant>) -> Result<RatGF> {
    let mut c = vec![0i64; CORRECTION_TERMS + 1];
    for (n, slot) in c.iter_mut().enumerate().skip(1) {
        let dec = classify::decomposable_words(n)
            .iter()
            .filter(|w| confined(w, quadrants))
            .count();
        let over: usize = classify::collision_groups(n)
            .iter()
            .map(|g| g.iter().filter(|w| confined(w, quadrants)).count().saturating_sub(1))
            .sum();
        *slot = (dec + over) as i64;
    }
    if (CORRECTION_PERIOD_FROM + 2..=CORRECTION_TERMS).any(|n| c[n] != c[n - 2]) {
        return Err(Error::StabilizationFailure(format!(
            "corrections for {} not 2-periodic: {c:?}",
            quadrant_set_name(quadrants)
        )));
    }
    RatGF::from_eventually_periodic(
        &c[..CORRECTION_PERIOD_FROM],
        &c[CORRECTION_PERIOD_FROM..CORRECTION_PERIOD_FROM + 2],
    )
}

fn confined_g(quadrants: &BTreeSet<Quadrant>) -> Result<RatGF> {
    Ok(confined_words_gf(quadrants).sub(&confined_corrections(quadrants)?))
}

/// `G` for the complete pin class restricted to a connected set of
/// quadrants.
pub fn complete_class_g(quadrants: &BTreeSet<Quadrant>) -> Result<GSequence> {
    if quadrants.is_empty() {
        return Err(Error::EmptyInput);
    }
    if !connected(quadrants) {
        return Err(Error::DisconnectedQuadrants(quadrant_set_name(quadrants)));
    }
    let g = confined_g(quadrants)?;
    let mut gq: [RatGF; 4] = std::array::from_fn(|_| RatGF::zero());
    for q in quadrants {
        gq[q.number() as usize - 1] = confined_g(&BTreeSet::from([*q]))?;
    }
    GSequence::new(g, gq)
}

pub fn complete_class_gf(quadrants: &BTreeSet<Quadrant>) -> Result<RatGF> {
    complete_class_g(quadrants)?.class_gf()
}

/// Certified growth rate from either the denominator of `f` or the
/// equation `G(z) = 1`.
pub fn growth_rate(f: &RatGF, target: GrowthTarget, tol: &BigRational) -> Result<GrowthResult> {
    match target {
        GrowthTarget::DenominatorRoot => growth::growth_of_polynomial(f.den(), tol, DEFAULT_DIGITS),
        GrowthTarget::GEqualsOne => {
            let p = f.den() - f.num();
            let r = growth::growth_of_polynomial(&p, tol, DEFAULT_DIGITS)?;
            if Sturm::new(f.den()).count(&BigRational::zero(), &r.root_interval.1) != 0 {
                return Err(Error::EarlySingularity(f.to_string()));
            }
            Ok(r)
        }
    }
}

/// Points `α·k/(samples+1)` where `G` fails to be positive.
pub fn g_positivity_violations(g: &RatGF, alpha: &BigRational, samples: usize) -> Vec<BigRational> {
    (1..=samples)
        .map(|k| alpha * ratio(k as i64, samples as i64 + 1))
        .filter(|x| {
            let v = g.num().eval(x) / g.den().eval(x);
            !v.is_positive()
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct GfReport {
    pub spec: String,
    pub mode: ClassMode,
    pub g: RatGF,
    pub g_quadrants: [RatGF; 4],
    #[serde(rename = "G")]
    pub big_g: RatGF,
    pub f: RatGF,
    pub growth: GrowthSummary,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthSummary {
    pub interval: [String; 2],
    pub decimal: String,
}

impl From<&GrowthResult> for GrowthSummary {
    fn from(r: &GrowthResult) -> Self {
        GrowthSummary {
            interval: [r.growth_interval.0.to_string(), r.growth_interval.1.to_string()],
            decimal: r.decimal.clone(),
        }
    }
}

pub fn gf_report(spec: &PinSpec, mode: ClassMode, tol: &BigRational) -> Result<GfReport> {
    let seq = mode_g(spec, mode)?;
    let f = seq.class_gf()?;
    let growth = growth_rate(&f, GrowthTarget::DenominatorRoot, tol)?;
    Ok(GfReport {
        spec: spec.to_string(),
        mode,
        g: seq.g,
        g_quadrants: seq.g_quadrants,
        big_g: seq.big_g,
        f,
        growth: GrowthSummary::from(&growth),
    })
}

/// Growth rate of the increasing oscillations, the least pin-class growth
/// rate.
pub fn kappa() -> f64 {
    growth::growth_of_polynomial(&Poly::from_ints(&[1, -2, 0, -1]), &growth::default_tol(), 15)
        .expect("1 - 2z - z^3 has a root in (0, 1/2]")
        .value()
}

/// `16/(κ-2) · (2/κ)^t`.
pub fn truncation_envelope(t: usize) -> f64 {
    let k = kappa();
    16.0 / (k - 2.0) * (2.0 / k).powi(t as i32)
}

#[derive(Clone, Debug, Serialize)]
pub struct TruncationStep {
    pub t: usize,
    pub n_t: usize,
    pub truncation: String,
    pub growth: GrowthResult,
    pub envelope: f64,
    /// `sup |G_t - G|` over sampled points of `[0, 1/κ]`.
    pub g_deviation: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TruncationReport {
    pub spec: String,
    pub interior: GrowthResult,
    pub steps: Vec<TruncationStep>,
    pub weakly_decreasing: bool,
    pub bounded_below: bool,
    pub within_envelope: bool,
}

/// Smallest `n` such that every pin factor of `w_{≥n}` of length at most
/// `t` is a recurrent factor of `w`.
pub fn truncation_index(spec: &PinSpec, t: usize) -> Result<usize> {
    let recurrent: Vec<BTreeSet<PinWord>> =
        (1..=t).map(|k| spec.enumerate_pin_factors(k, FactorMode::Recurrent)).collect();
    let last = spec.prefix_len() + 2;
    for n in 1..=last {
        let tr = spec.left_truncate(n)?;
        if (1..=t).all(|k| tr.enumerate_pin_factors(k, FactorMode::All).is_subset(&recurrent[k - 1])) {
            return Ok(n);
        }
    }
    Err(Error::StabilizationFailure(format!("{spec}: no truncation index for t = {t}")))
}

fn max_deviation(a: &RatGF, b: &RatGF) -> f64 {
    let k = kappa();
    let diff = a.sub(b);
    (0..=200)
        .map(|i| {
            let x = (1.0 / k) * i as f64 / 200.0;
            (diff.num().eval_f64(x) / diff.den().eval_f64(x)).abs()
        })
        .fold(0.0, f64::max)
}

pub fn truncation_convergence(spec: &PinSpec, t_max: usize, tol: &BigRational) -> Result<TruncationReport> {
    let interior_seq = amended_g(spec, FactorMode::Recurrent)?;
    let interior = growth_rate(&interior_seq.class_gf()?, GrowthTarget::DenominatorRoot, tol)?;
    let mut steps = Vec::with_capacity(t_max);
    for t in 1..=t_max {
        let n_t = truncation_index(spec, t)?;
        let tr = spec.left_truncate(n_t)?;
        let seq = amended_g(&tr, FactorMode::All)?;
        let growth = growth_rate(&seq.class_gf()?, GrowthTarget::DenominatorRoot, tol)?;
        steps.push(TruncationStep {
            t,
            n_t,
            truncation: tr.to_string(),
            growth,
            envelope: truncation_envelope(t),
            g_deviation: max_deviation(&seq.big_g, &interior_seq.big_g),
        });
    }
    let slack = 1e-9;
    let weakly_decreasing = steps.windows(2).all(|w| w[1].growth.value() <= w[0].growth.value() + slack);
    let bounded_below = steps.iter().all(|s| s.growth.value() >= interior.value() - slack);
    let within_envelope = steps.iter().all(|s| {
        (s.growth.value() - interior.value()).abs() <= s.envelope + slack && s.g_deviation <= s.envelope + slack
    });
    Ok(TruncationReport {
        spec: spec.to_string(),
        interior,
        steps,
        weakly_decreasing,
        bounded_below,
        within_envelope,
    })
}

/// Coefficients of `f` as machine integers.
pub fn counts_of(f: &RatGF, n: usize) -> Result<Vec<u64>> {
    Ok(f.int_coeffs(n)?
        .into_iter()
        .map(|c| c.to_u64().expect("non-negative count"))
        .collect())
}
