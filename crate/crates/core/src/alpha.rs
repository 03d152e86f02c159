//! Exact descriptions of the rotation number α and their string grammar.
//!
//! ```text
//! golden | sqrt:D | quad:P,D,Q | rat:p/q | cf:a0;a1,a2,...[(period digits)]
//! ```
//!
//! `golden` is `(1+√5)/2`. A `cf:` spec without a parenthesised period is a
//! *prefix*: it names an irrational number whose expansion begins with the
//! listed digits and whose deeper digits are unknown.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::Interval;

/// `(p + √d)/q` kept in the normal form `q | d − p²`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    p: BigInt,
    d: BigInt,
    q: BigInt,
}

impl QuadraticSurd {
    pub fn new(p: BigInt, d: BigInt, q: BigInt) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::InvalidAlpha("zero denominator Q".into()));
        }
        if !d.is_positive() {
            return Err(Error::InvalidAlpha(format!("radicand {d} must be positive")));
        }
        let r = d.sqrt();
        if &r * &r == d {
            return Err(Error::InvalidAlpha(format!("radicand {d} is a perfect square")));
        }
        let (p, d, q) = if (&d - &p * &p).is_multiple_of(&q) {
            (p, d, q)
        } else {
            let qa = q.abs();
            (&p * &qa, &d * &q * &q, &q * &qa)
        };
        Ok(QuadraticSurd { p, d, q })
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn is_normalized(&self) -> bool {
        (&self.d - &self.p * &self.p).is_multiple_of(&self.q)
    }

    /// `floor((p + √d)/q)`, exact in integers because √d is irrational.
    pub fn floor(&self) -> BigInt {
        let root = self.d.sqrt();
        if self.q.is_positive() {
            let num: BigInt = &self.p + &root;
            num.div_floor(&self.q)
        } else {
            let q: BigInt = -&self.q;
            let f: BigInt = (&self.p + &root).div_floor(&q);
            -(f + BigInt::one())
        }
    }

    /// One step of the Gauss map: returns `a = floor(x)` and `1/(x − a)`.
    pub fn gauss_step(&self) -> (BigInt, QuadraticSurd) {
        let a = self.floor();
        let p = &a * &self.q - &self.p;
        let q = (&self.d - &p * &p) / &self.q;
        (
            a,
            QuadraticSurd {
                p,
                d: self.d.clone(),
                q,
            },
        )
    }

    pub fn enclose(&self, bits: u32) -> Interval {
        // Extra bits absorb the division by q.
        let extra = self.q.bits() as u32 + 2;
        Interval::sqrt_int(&self.d, bits + extra)
            .add_int(&self.p)
            .div_int(&self.q)
            .rescale(bits)
    }
}

/// Explicit digits `[a0; preperiod..., (period...)]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExplicitCf {
    /// `a_0` followed by the non-repeating digits.
    preperiod: Vec<BigInt>,
    period: Vec<BigInt>,
}

impl ExplicitCf {
    pub fn new(preperiod: Vec<BigInt>, period: Vec<BigInt>) -> Result<Self> {
        let Some(a0) = preperiod.first() else {
            return Err(Error::InvalidAlpha("continued fraction needs a_0".into()));
        };
        if a0.is_negative() {
            return Err(Error::InvalidAlpha("a_0 must be nonnegative".into()));
        }
        if let Some(bad) = preperiod[1..].iter().chain(&period).find(|a| !a.is_positive()) {
            return Err(Error::InvalidAlpha(format!(
                "partial quotient {bad} must be at least 1"
            )));
        }
        Ok(ExplicitCf { preperiod, period })
    }

    pub fn preperiod(&self) -> &[BigInt] {
        &self.preperiod
    }

    pub fn period(&self) -> &[BigInt] {
        &self.period
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlphaSpec {
    QuadraticSurd(QuadraticSurd),
    Rational(BigRational),
    ExplicitCf(ExplicitCf),
}

impl AlphaSpec {
    pub fn golden() -> Self {
        AlphaSpec::quadratic(1, 5, 2).expect("valid surd")
    }

    pub fn sqrt(d: impl Into<BigInt>) -> Result<Self> {
        Ok(AlphaSpec::QuadraticSurd(QuadraticSurd::new(
            BigInt::zero(),
            d.into(),
            BigInt::one(),
        )?))
    }

    pub fn quadratic(p: impl Into<BigInt>, d: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        Ok(AlphaSpec::QuadraticSurd(QuadraticSurd::new(p.into(), d.into(), q.into())?))
    }

    pub fn rational(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::InvalidAlpha("zero denominator".into()));
        }
        Ok(AlphaSpec::Rational(BigRational::new(num.into(), den)))
    }

    pub fn explicit_cf<I, J>(preperiod: I, period: J) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<BigInt>,
        J: IntoIterator,
        J::Item: Into<BigInt>,
    {
        Ok(AlphaSpec::ExplicitCf(ExplicitCf::new(
            preperiod.into_iter().map(Into::into).collect(),
            period.into_iter().map(Into::into).collect(),
        )?))
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, AlphaSpec::Rational(_))
    }

    /// Direct enclosure of α from its closed form, independent of the
    /// continued fraction. `None` for explicit digit lists.
    pub fn direct_enclosure(&self, bits: u32) -> Option<Interval> {
        match self {
            AlphaSpec::QuadraticSurd(s) => Some(s.enclose(bits)),
            AlphaSpec::Rational(r) => Some(Interval::from_rational(r, bits)),
            AlphaSpec::ExplicitCf(_) => None,
        }
    }
}

fn parse_int(s: &str) -> Result<BigInt> {
    let t = s.trim();
    BigInt::from_str(t).map_err(|_| Error::Parse(format!("not an integer: {t:?}")))
}

fn parse_list(s: &str) -> Result<Vec<BigInt>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(parse_int)
        .collect()
}

fn parse_cf(body: &str) -> Result<AlphaSpec> {
    let (a0, rest) = match body.split_once(';') {
        Some((a0, rest)) => (a0, rest),
        None => (body, ""),
    };
    let mut preperiod = vec![parse_int(a0)?];
    let period = match rest.find('(') {
        Some(open) => {
            let close = rest
                .rfind(')')
                .filter(|&c| c > open && rest[c + 1..].trim().is_empty())
                .ok_or_else(|| Error::Parse(format!("unbalanced period in {rest:?}")))?;
            preperiod.extend(parse_list(&rest[..open])?);
            let period = parse_list(&rest[open + 1..close])?;
            if period.is_empty() {
                return Err(Error::Parse("empty period".into()));
            }
            period
        }
        None => {
            preperiod.extend(parse_list(rest)?);
            Vec::new()
        }
    };
    AlphaSpec::explicit_cf(preperiod, period)
}

impl FromStr for AlphaSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "golden" {
            return Ok(AlphaSpec::golden());
        }
        let (kind, body) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("unrecognised alpha spec {s:?}")))?;
        match kind {
            "sqrt" => AlphaSpec::sqrt(parse_int(body)?),
            "quad" => {
                let parts: Vec<&str> = body.split(',').collect();
                if parts.len() != 3 {
                    return Err(Error::Parse(format!("quad needs P,D,Q, got {body:?}")));
                }
                AlphaSpec::quadratic(parse_int(parts[0])?, parse_int(parts[1])?, parse_int(parts[2])?)
            }
            "rat" => {
                let (n, d) = body
                    .split_once('/')
                    .ok_or_else(|| Error::Parse(format!("rat needs p/q, got {body:?}")))?;
                AlphaSpec::rational(parse_int(n)?, parse_int(d)?)
            }
            "cf" => parse_cf(body),
            other => Err(Error::Parse(format!("unknown alpha kind {other:?}"))),
        }
    }
}

fn join(xs: &[BigInt]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for AlphaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaSpec::QuadraticSurd(s) => write!(f, "quad:{},{},{}", s.p, s.d, s.q),
            AlphaSpec::Rational(r) => write!(f, "rat:{}/{}", r.numer(), r.denom()),
            AlphaSpec::ExplicitCf(cf) => {
                write!(f, "cf:{}", cf.preperiod[0])?;
                let tail = &cf.preperiod[1..];
                if tail.is_empty() && cf.period.is_empty() {
                    return Ok(());
                }
                write!(f, ";{}", join(tail))?;
                if !cf.period.is_empty() {
                    if !tail.is_empty() {
                        write!(f, ",")?;
                    }
                    write!(f, "({})", join(&cf.period))?;
                }
                Ok(())
            }
        }
    }
}
