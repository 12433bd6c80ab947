//! Exact univariate polynomials and rational generating functions over
//! `BigRational`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Coefficients in ascending degree with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(rat(1))
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::new(vec![c])
    }

    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.push(c);
        Poly::new(coeffs)
    }

    /// The polynomial `z`.
    pub fn z() -> Self {
        Poly::monomial(rat(1), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lead;
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = &rem[k + i] - &c * d;
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// The product of the distinct irreducible factors.
    pub fn squarefree(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).expect("gcd is nonzero").0
    }

    /// Exact integer coefficients, if every coefficient is integral.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.coeffs
            .iter()
            .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
            .collect()
    }

    /// Parses forms like `1 - 2z - z^3`, `(1-z)^2(1-2z)` or `3/2*z^2`.
    pub fn parse(text: &str) -> Result<Poly> {
        let chars: Vec<char> = text
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '−' { '-' } else { c })
            .collect();
        if chars.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut parser = PolyParser { chars: &chars, pos: 0, text };
        let p = parser.expr()?;
        if parser.pos != chars.len() {
            return Err(parser.error());
        }
        Ok(p)
    }
}

struct PolyParser<'a> {
    chars: &'a [char],
    pos: usize,
    text: &'a str,
}

impl PolyParser<'_> {
    fn error(&self) -> Error {
        Error::MalformedSyntax(format!("polynomial '{}' at offset {}", self.text, self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -self.term()?
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(c) if c == 'z' || c == 'x' || c == '(' || c.is_ascii_digit() => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            let e: u32 = e.to_u32().ok_or_else(|| self.error())?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error());
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error())
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some('z' | 'x') => {
                self.pos += 1;
                Ok(Poly::z())
            }
            Some('(') => {
                self.pos += 1;
                let p = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error());
                }
                self.pos += 1;
                Ok(p)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    return Ok(Poly::constant(BigRational::new(n, d)));
                }
                Ok(Poly::constant(BigRational::from_integer(n)))
            }
            _ => Err(self.error()),
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

fn fmt_coeff_abs(c: &BigRational, k: usize) -> String {
    let a = c.abs();
    let var = match k {
        0 => String::new(),
        1 => "z".to_string(),
        _ => format!("z^{k}"),
    };
    if k == 0 {
        a.to_string()
    } else if a.is_one() {
        var
    } else if a.is_integer() {
        format!("{a}{var}")
    } else {
        format!("({a}){var}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = fmt_coeff_abs(c, k);
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        let coeffs = v
            .iter()
            .map(|s| s.parse::<BigRational>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Poly::new(coeffs))
    }
}

/// A rational function `num / den`, stored with the common factor
/// cancelled and the lowest nonzero coefficient of `den` equal to 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RatGF {
    num: Poly,
    den: Poly,
}

impl RatGF {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatGF::zero());
        }
        let g = num.gcd(&den);
        let num = num.div_rem(&g)?.0;
        let den = den.div_rem(&g)?.0;
        let low = den.coeff(den.valuation().unwrap()).recip();
        Ok(RatGF { num: num.scale(&low), den: den.scale(&low) })
    }

    pub fn zero() -> Self {
        RatGF { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatGF::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        RatGF { num: p, den: Poly::one() }
    }

    pub fn from_ints(num: &[i64], den: &[i64]) -> Result<Self> {
        RatGF::new(Poly::from_ints(num), Poly::from_ints(den))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &RatGF) -> RatGF {
        RatGF::new(&(&self.num * &other.den) + &(&other.num * &self.den), &self.den * &other.den)
            .expect("nonzero denominators")
    }

    pub fn sub(&self, other: &RatGF) -> RatGF {
        RatGF::new(&(&self.num * &other.den) - &(&other.num * &self.den), &self.den * &other.den)
            .expect("nonzero denominators")
    }

    pub fn mul(&self, other: &RatGF) -> RatGF {
        RatGF::new(&self.num * &other.num, &self.den * &other.den).expect("nonzero denominators")
    }

    pub fn div(&self, other: &RatGF) -> Result<RatGF> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatGF::new(&self.num * &other.den, &self.den * &other.num)
    }

    /// `Seq(G) = 1 / (1 - G)`; needs `G(0) = 0`.
    pub fn seq(&self) -> Result<RatGF> {
        if self.den.coeff(0).is_zero() {
            return Err(Error::PoleAtZero);
        }
        if !self.num.coeff(0).is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        RatGF::new(self.den.clone(), &self.den - &self.num)
    }

    /// The first `n + 1` Taylor coefficients at 0.
    pub fn coeffs(&self, n: usize) -> Result<Vec<BigRational>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::PoleAtZero);
        }
        let inv = d0.recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.num.coeff(k);
            for j in 1..=k.min(self.den.coeffs.len().saturating_sub(1)) {
                acc -= &self.den.coeffs[j] * &out[k - j];
            }
            out.push(acc * &inv);
        }
        Ok(out)
    }

    /// Taylor coefficients as integers; panics on a non-integral one.
    pub fn int_coeffs(&self, n: usize) -> Result<Vec<BigInt>> {
        Ok(self
            .coeffs(n)?
            .into_iter()
            .map(|c| {
                assert!(c.is_integer(), "non-integral coefficient {c}");
                c.to_integer()
            })
            .collect())
    }

    /// `Σ initial[i] z^(i+1) + constant · z^from / (1 - z)`, where `initial`
    /// covers indices `1..from`.
    pub fn from_eventually_constant(initial: &[i64], constant: i64, from_index: usize) -> Result<RatGF> {
        if from_index == 0 || initial.len() + 1 != from_index {
            return Err(Error::IndexOutOfRange(format!(
                "{} initial terms cannot cover indices 1..{from_index}",
                initial.len()
            )));
        }
        let mut head = vec![0];
        head.extend_from_slice(initial);
        let tail = RatGF::new(Poly::monomial(rat(constant), from_index), Poly::from_ints(&[1, -1]))?;
        Ok(RatGF::from_poly(Poly::from_ints(&head)).add(&tail))
    }

    /// `Σ initial[i] z^i + z^m Σ period[j] z^j / (1 - z^c)` with
    /// `m = initial.len()` and `c = period.len()`; index 0 included.
    pub fn from_eventually_periodic(initial: &[i64], period: &[i64]) -> Result<RatGF> {
        if period.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut shifted = vec![0; initial.len()];
        shifted.extend_from_slice(period);
        let mut den = vec![0; period.len() + 1];
        den[0] = 1;
        den[period.len()] = -1;
        let tail = RatGF::new(Poly::from_ints(&shifted), Poly::from_ints(&den))?;
        Ok(RatGF::from_poly(Poly::from_ints(initial)).add(&tail))
    }
}

impl fmt::Display for RatGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[derive(Deserialize)]
struct RatGFJson {
    num: Poly,
    den: Poly,
}

impl<'de> Deserialize<'de> for RatGF {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RatGFJson::deserialize(d)?;
        RatGF::new(raw.num, raw.den).map_err(serde::de::Error::custom)
    }
}
