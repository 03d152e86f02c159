//! Exact values `a·α₀ + c` (rational `a`, `c`) and certified comparison.
//!
//! Kronecker points, gaps, fill distances and separation radii all live in
//! `Q + Q·α₀` where `α₀ = α mod 1`. For irrational α the representation is
//! unique, so structural equality is value equality; for rational α every
//! value collapses to its constant part.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::alpha::AlphaSpec;
use crate::contfrac::{alpha_tail_best, expand, CfExpansion, PrecisionContext};
use crate::error::{Error, Result};
use crate::interval::Interval;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Real {
    alpha: BigRational,
    constant: BigRational,
}

impl Real {
    pub fn rational(c: BigRational) -> Self {
        Real {
            alpha: BigRational::zero(),
            constant: c,
        }
    }

    pub fn integer(c: i64) -> Self {
        Real::rational(BigRational::from_integer(c.into()))
    }

    /// `u·α₀ + v` with integer coefficients.
    pub fn form(u: BigInt, v: BigInt) -> Self {
        Real {
            alpha: BigRational::from_integer(u),
            constant: BigRational::from_integer(v),
        }
    }

    pub fn alpha_coeff(&self) -> &BigRational {
        &self.alpha
    }

    pub fn constant(&self) -> &BigRational {
        &self.constant
    }

    pub fn is_rational(&self) -> bool {
        self.alpha.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.constant)
    }

    pub fn add(&self, other: &Real) -> Real {
        Real {
            alpha: &self.alpha + &other.alpha,
            constant: &self.constant + &other.constant,
        }
    }

    pub fn sub(&self, other: &Real) -> Real {
        Real {
            alpha: &self.alpha - &other.alpha,
            constant: &self.constant - &other.constant,
        }
    }

    pub fn scale(&self, k: &BigRational) -> Real {
        Real {
            alpha: &self.alpha * k,
            constant: &self.constant * k,
        }
    }

    pub fn half(&self) -> Real {
        self.scale(&BigRational::new(1.into(), 2.into()))
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.constant.is_zero()
    }
}

/// The number field context for one α: enclosures of `α₀` at any precision,
/// cached, plus comparison of [`Real`] values with precision escalation.
#[derive(Debug)]
pub struct AlphaField {
    expansion: CfExpansion,
    ctx: PrecisionContext,
    exact: Option<BigRational>,
    cache: Mutex<HashMap<u32, Interval>>,
}

impl AlphaField {
    pub fn new(alpha: &AlphaSpec, ctx: PrecisionContext) -> Result<Self> {
        let expansion = expand(alpha, 2)?;
        let exact = expansion.alpha0_rational();
        Ok(AlphaField {
            expansion,
            ctx,
            exact,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn alpha(&self) -> &AlphaSpec {
        self.expansion.alpha()
    }

    pub fn expansion(&self) -> &CfExpansion {
        &self.expansion
    }

    pub fn ctx(&self) -> &PrecisionContext {
        &self.ctx
    }

    pub fn is_rational(&self) -> bool {
        self.exact.is_some()
    }

    /// `α₀` itself, when rational.
    pub fn exact_alpha0(&self) -> Option<&BigRational> {
        self.exact.as_ref()
    }

    /// Enclosure of `α₀` on the grid `2^-bits`. Prefix-only expansions return
    /// the tightest enclosure their digits support, which may be wider.
    pub fn alpha0(&self, bits: u32) -> Result<Interval> {
        if let Some(r) = &self.exact {
            return Ok(Interval::from_rational(r, bits));
        }
        let mut cache = self.cache.lock().expect("alpha cache poisoned");
        if let Some(iv) = cache.get(&bits) {
            return Ok(iv.clone());
        }
        let ctx = PrecisionContext {
            bits,
            max_bits: bits.max(self.ctx.max_bits),
            guard: 0,
        };
        let iv = alpha_tail_best(&self.expansion, 0, &ctx)?.rescale(bits);
        cache.insert(bits, iv.clone());
        Ok(iv)
    }

    /// Exact value, when `x` is rational in this field.
    pub fn exact_value(&self, x: &Real) -> Option<BigRational> {
        if x.is_rational() {
            return Some(x.constant.clone());
        }
        self.exact.as_ref().map(|a| &x.alpha * a + &x.constant)
    }

    /// Enclosure of `x` on the grid `2^-bits`.
    pub fn enclose(&self, x: &Real, bits: u32) -> Result<Interval> {
        if let Some(v) = self.exact_value(x) {
            return Ok(Interval::from_rational(&v, bits));
        }
        let extra = x.alpha.numer().bits() as u32 + 2;
        let a = self.alpha0(bits + extra)?;
        Ok(a
            .mul_rational(&x.alpha)
            .add_rational(&x.constant)
            .rescale(bits))
    }

    /// Certified sign of `x`.
    pub fn sign(&self, x: &Real) -> Result<Ordering> {
        if let Some(v) = self.exact_value(x) {
            return Ok(v.cmp(&BigRational::zero()));
        }
        let mut bits = self.ctx.bits;
        loop {
            let iv = self.enclose(x, bits)?;
            if let Some(s) = iv.sign() {
                return Ok(s);
            }
            if bits >= self.ctx.max_bits {
                return Err(Error::PrecisionUnresolved { bits });
            }
            bits = (bits * 2).min(self.ctx.max_bits);
        }
    }

    pub fn cmp(&self, x: &Real, y: &Real) -> Result<Ordering> {
        if x == y {
            return Ok(Ordering::Equal);
        }
        self.sign(&x.sub(y))
    }

    /// `floor(i·α₀)`, certified.
    pub fn floor_multiple(&self, i: &BigInt) -> Result<BigInt> {
        if let Some(a) = &self.exact {
            return Ok((a * BigRational::from_integer(i.clone())).floor().to_integer());
        }
        let mut bits = self.ctx.bits + i.bits() as u32;
        loop {
            let iv = self.alpha0(bits)?.mul_int(i);
            let lo = iv.lo() >> bits;
            let hi = iv.hi() >> bits;
            if lo == hi {
                return Ok(lo);
            }
            if bits >= self.ctx.max_bits {
                return Err(Error::PrecisionUnresolved { bits });
            }
            bits = (bits * 2).min(self.ctx.max_bits);
        }
    }
}

/// Sign-aware comparison helper for optional fields: rational values never
/// need one.
pub fn cmp_values(field: Option<&AlphaField>, x: &Real, y: &Real) -> Result<Ordering> {
    match field {
        Some(f) => f.cmp(x, y),
        None => match (x.as_rational(), y.as_rational()) {
            (Some(a), Some(b)) => Ok(a.cmp(b)),
            _ => Err(Error::Domain("irrational value without an alpha field".into())),
        },
    }
}

pub fn enclose_value(field: Option<&AlphaField>, x: &Real, bits: u32) -> Result<Interval> {
    match field {
        Some(f) => f.enclose(x, bits),
        None => x
            .as_rational()
            .map(|r| Interval::from_rational(r, bits))
            .ok_or_else(|| Error::Domain("irrational value without an alpha field".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_comparisons() {
        let f = AlphaField::new(&AlphaSpec::golden(), PrecisionContext::default()).unwrap();
        // α₀ ≈ 0.618 > 1/2
        let a = Real::form(1.into(), 0.into());
        assert_eq!(f.cmp(&a, &Real::rational(BigRational::new(1.into(), 2.into()))).unwrap(), Ordering::Greater);
        // 2α₀ − 1 ≈ 0.236 > 0 ; 3α₀ − 2 ≈ −0.146 < 0
        assert_eq!(f.sign(&Real::form(2.into(), (-1).into())).unwrap(), Ordering::Greater);
        assert_eq!(f.sign(&Real::form(3.into(), (-2).into())).unwrap(), Ordering::Less);
        assert_eq!(f.floor_multiple(&BigInt::from(1000)).unwrap(), BigInt::from(618));
    }

    #[test]
    fn rational_field_is_exact() {
        let f = AlphaField::new(&AlphaSpec::rational(7, 3).unwrap(), PrecisionContext::default()).unwrap();
        assert!(f.is_rational());
        // α₀ = 1/3, so 3α₀ − 1 = 0 exactly.
        assert_eq!(f.sign(&Real::form(3.into(), (-1).into())).unwrap(), Ordering::Equal);
        assert_eq!(f.floor_multiple(&BigInt::from(3)).unwrap(), BigInt::from(1));
    }

    #[test]
    fn prefix_field_runs_out_of_precision() {
        let alpha = AlphaSpec::explicit_cf([0, 1, 2, 3], Vec::<i32>::new()).unwrap();
        let f = AlphaField::new(&alpha, PrecisionContext::new(64, 256, 4).unwrap()).unwrap();
        // 10α₀ − 7 is tiny and its sign is not determined by three digits.
        assert!(matches!(
            f.sign(&Real::form(10.into(), (-7).into())),
            Err(Error::PrecisionUnresolved { .. })
        ));
        assert_eq!(f.sign(&Real::form(1.into(), 0.into())).unwrap(), Ordering::Greater);
    }
}
