//! Certified isolation of the smallest positive real root of a polynomial,
//! using an exact Sturm sequence and rational bisection.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{rat, Poly};

pub const DEFAULT_DIGITS: usize = 10;

/// `10^-12`.
pub fn default_tol() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u64).pow(12))
}

#[derive(Clone, Debug)]
pub struct Sturm {
    chain: Vec<Poly>,
}

impl Sturm {
    /// The Sturm chain of the squarefree part of `p`.
    pub fn new(p: &Poly) -> Self {
        let p0 = p.squarefree();
        let mut chain = vec![p0.clone(), p0.derivative()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let r = chain[n - 2].div_rem(&chain[n - 1]).expect("nonzero").1;
            chain.push(-r);
        }
        chain.pop();
        Sturm { chain }
    }

    fn variations(&self, x: &BigRational) -> usize {
        let signs: Vec<bool> = self
            .chain
            .iter()
            .map(|p| p.eval(x))
            .filter(|v| !v.is_zero())
            .map(|v| v.is_positive())
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }

    pub fn squarefree(&self) -> &Poly {
        &self.chain[0]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GrowthTarget {
    DenominatorRoot,
    GEqualsOne,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthResult {
    /// Isolating interval `(lo, hi]` for the smallest positive root.
    #[serde(serialize_with = "ser_interval")]
    pub root_interval: (BigRational, BigRational),
    /// `1/hi .. 1/lo`, bracketing the growth rate.
    #[serde(serialize_with = "ser_interval")]
    pub growth_interval: (BigRational, BigRational),
    /// Reciprocal of the interval midpoint.
    pub decimal: String,
    pub polynomial: String,
}

fn ser_interval<S: serde::Serializer>(
    iv: &(BigRational, BigRational),
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    [iv.0.to_string(), iv.1.to_string()].serialize(s)
}

impl GrowthResult {
    pub fn value(&self) -> f64 {
        self.decimal.parse().unwrap_or(f64::NAN)
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.growth_interval.0 + &self.growth_interval.1) / rat(2)
    }
}

/// Rounds a positive rational to `digits` significant decimal digits.
pub fn to_decimal(x: &BigRational, digits: usize) -> String {
    assert!(x.is_positive() && digits > 0);
    let ten = BigRational::from_integer(BigInt::from(10));
    let mut e: i64 = 0;
    let mut y = x.clone();
    while y >= ten {
        y /= &ten;
        e += 1;
    }
    while y < BigRational::one() {
        y *= &ten;
        e -= 1;
    }
    let scale = BigInt::from(10).pow(digits as u32 - 1);
    let mut m = (y * BigRational::from_integer(scale.clone())).round().to_integer();
    if m >= &scale * BigInt::from(10) {
        m /= BigInt::from(10);
        e += 1;
    }
    let s = m.to_string();
    let point = e + 1;
    if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), s)
    } else if point as usize >= s.len() {
        format!("{}{}", s, "0".repeat(point as usize - s.len()))
    } else {
        format!("{}.{}", &s[..point as usize], &s[point as usize..])
    }
}

/// Isolates the smallest root of `p` in `(0, 1/2]` to width `tol`, with a
/// Sturm certificate that `(0, lo]` holds no root.
pub fn smallest_positive_root(p: &Poly, tol: &BigRational) -> Result<(BigRational, BigRational)> {
    let zero = BigRational::zero();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    if p.is_zero() || p.degree() == Some(0) {
        return Err(Error::NoRootInRange(p.to_string()));
    }
    let sturm = Sturm::new(p);
    if sturm.count(&zero, &half) == 0 {
        return Err(Error::NoRootInRange(p.to_string()));
    }
    let (mut lo, mut hi) = (zero, half);
    while &hi - &lo > *tol || sturm.count(&lo, &hi) != 1 {
        let mid = (&lo + &hi) / rat(2);
        if sturm.count(&lo, &mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    debug_assert_eq!(sturm.count(&BigRational::zero(), &lo), 0);
    let q = sturm.squarefree();
    debug_assert!(!(q.eval(&lo) * q.eval(&hi)).is_positive());
    Ok((lo, hi))
}

pub fn growth_of_polynomial(p: &Poly, tol: &BigRational, digits: usize) -> Result<GrowthResult> {
    let (lo, hi) = smallest_positive_root(p, tol)?;
    let growth_interval = (hi.recip(), lo.recip());
    let mid = (&growth_interval.0 + &growth_interval.1) / rat(2);
    Ok(GrowthResult {
        root_interval: (lo, hi),
        growth_interval,
        decimal: to_decimal(&mid, digits),
        polynomial: p.to_string(),
    })
}

/// Parses a tolerance written as `p/q`, a decimal, or in exponent form
/// such as `1e-12`.
pub fn parse_tolerance(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::MalformedSyntax(format!("tolerance {t:?}"));
    let value = if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        BigRational::new(n, d)
    } else {
        let (mantissa, exp) = match t.split_once(['e', 'E']) {
            Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
            None => (t, 0),
        };
        let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
        let shift = exp - frac.len() as i32;
        let ten = BigInt::from(10);
        if shift >= 0 {
            BigRational::from_integer(digits * ten.pow(shift as u32))
        } else {
            BigRational::new(digits, ten.pow((-shift) as u32))
        }
    };
    if !value.is_positive() {
        return Err(bad());
    }
    Ok(value)
}

/// Rough floating value of a rational, for reporting only.
pub fn approx(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
