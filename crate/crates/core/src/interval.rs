//! Dyadic fixed-point intervals with directed rounding.
//!
//! An [`Interval`] is the closed set `[lo·2^-bits, hi·2^-bits]` for big integers
//! `lo ≤ hi`. Every operation rounds the lower endpoint down and the upper
//! endpoint up, so a result always encloses the exact result of the operation
//! applied to any points of the operands.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::decimal::{self, Rounding};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    bits: u32,
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

impl Interval {
    pub fn new(lo: BigInt, hi: BigInt, bits: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi, bits }
    }

    pub fn zero(bits: u32) -> Self {
        Interval::new(BigInt::zero(), BigInt::zero(), bits)
    }

    pub fn from_int(v: &BigInt, bits: u32) -> Self {
        let x = v << bits;
        Interval::new(x.clone(), x, bits)
    }

    /// Tightest enclosure of `num/den` on the grid `2^-bits`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, bits: u32) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let (num, den) = if den.is_negative() {
            (-num, -den)
        } else {
            (num.clone(), den.clone())
        };
        let scaled = num << bits;
        Interval::new(scaled.div_floor(&den), ceil_div(&scaled, &den), bits)
    }

    pub fn from_rational(r: &BigRational, bits: u32) -> Self {
        Interval::from_ratio(r.numer(), r.denom(), bits)
    }

    /// Enclosure of `√d` for a nonnegative integer `d`.
    pub fn sqrt_int(d: &BigInt, bits: u32) -> Self {
        assert!(!d.is_negative(), "square root of a negative integer");
        let scaled = d << (2 * bits);
        let root = scaled.sqrt();
        if &root * &root == scaled {
            Interval::new(root.clone(), root, bits)
        } else {
            let up = &root + 1;
            Interval::new(root, up, bits)
        }
    }

    pub fn lo(&self) -> &BigInt {
        &self.lo
    }

    pub fn hi(&self) -> &BigInt {
        &self.hi
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn lower(&self) -> BigRational {
        BigRational::new(self.lo.clone(), pow2(self.bits))
    }

    pub fn upper(&self) -> BigRational {
        BigRational::new(self.hi.clone(), pow2(self.bits))
    }

    pub fn midpoint(&self) -> BigRational {
        BigRational::new(&self.lo + &self.hi, pow2(self.bits + 1))
    }

    /// Width in grid units of `2^-bits`.
    pub fn width_units(&self) -> BigInt {
        &self.hi - &self.lo
    }

    pub fn width(&self) -> BigRational {
        BigRational::new(self.width_units(), pow2(self.bits))
    }

    /// True when the width is at most `2^-target_bits`.
    pub fn width_at_most_pow2(&self, target_bits: i64) -> bool {
        let w = self.width_units();
        if w.is_zero() {
            return true;
        }
        // w·2^-bits ≤ 2^-target  ⇔  w ≤ 2^(bits - target)
        let e = self.bits as i64 - target_bits;
        if e < 0 {
            return false;
        }
        w <= pow2(e as u32)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Re-express on another grid, widening outward when coarsening.
    pub fn rescale(&self, bits: u32) -> Interval {
        match bits.cmp(&self.bits) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let s = bits - self.bits;
                Interval::new(&self.lo << s, &self.hi << s, bits)
            }
            Ordering::Less => {
                let d = pow2(self.bits - bits);
                Interval::new(self.lo.div_floor(&d), ceil_div(&self.hi, &d), bits)
            }
        }
    }

    fn aligned(&self, other: &Interval) -> (Interval, Interval) {
        let bits = self.bits.max(other.bits);
        (self.rescale(bits), other.rescale(bits))
    }

    pub fn add(&self, other: &Interval) -> Interval {
        let (a, b) = self.aligned(other);
        Interval::new(&a.lo + &b.lo, &a.hi + &b.hi, a.bits)
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        let (a, b) = self.aligned(other);
        Interval::new(&a.lo - &b.hi, &a.hi - &b.lo, a.bits)
    }

    pub fn neg(&self) -> Interval {
        Interval::new(-&self.hi, -&self.lo, self.bits)
    }

    pub fn add_int(&self, v: &BigInt) -> Interval {
        let shift = v << self.bits;
        Interval::new(&self.lo + &shift, &self.hi + &shift, self.bits)
    }

    pub fn mul_int(&self, k: &BigInt) -> Interval {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if k.is_negative() {
            Interval::new(b, a, self.bits)
        } else {
            Interval::new(a, b, self.bits)
        }
    }

    pub fn div_int(&self, k: &BigInt) -> Interval {
        assert!(!k.is_zero(), "division by zero");
        let (lo, hi) = if k.is_negative() {
            (-&self.hi, -&self.lo)
        } else {
            (self.lo.clone(), self.hi.clone())
        };
        let k = k.abs();
        Interval::new(lo.div_floor(&k), ceil_div(&hi, &k), self.bits)
    }

    pub fn mul_rational(&self, r: &BigRational) -> Interval {
        self.mul_int(r.numer()).div_int(r.denom())
    }

    pub fn add_rational(&self, r: &BigRational) -> Interval {
        self.add(&Interval::from_rational(r, self.bits))
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let (a, b) = self.aligned(other);
        let bits = a.bits;
        let d = pow2(bits);
        let products = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
        let lo = products.iter().min().unwrap().div_floor(&d);
        let hi = ceil_div(products.iter().max().unwrap(), &d);
        Interval::new(lo, hi, bits)
    }

    /// Quotient; `None` when the divisor interval contains zero.
    pub fn div(&self, other: &Interval) -> Option<Interval> {
        let (a, b) = self.aligned(other);
        if !(b.lo.is_positive() || b.hi.is_negative()) {
            return None;
        }
        let bits = a.bits;
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for n in [&a.lo, &a.hi] {
            for m in [&b.lo, &b.hi] {
                let (n2, m2) = if m.is_negative() {
                    (-(n << bits), -m)
                } else {
                    (n << bits, m.clone())
                };
                let f = n2.div_floor(&m2);
                let c = ceil_div(&n2, &m2);
                lo = Some(match lo {
                    Some(x) if x <= f => x,
                    _ => f,
                });
                hi = Some(match hi {
                    Some(x) if x >= c => x,
                    _ => c,
                });
            }
        }
        Some(Interval::new(lo.unwrap(), hi.unwrap(), bits))
    }

    pub fn recip(&self) -> Option<Interval> {
        Interval::from_int(&BigInt::one(), self.bits).div(self)
    }

    pub fn min(&self, other: &Interval) -> Interval {
        let (a, b) = self.aligned(other);
        Interval::new(a.lo.min(b.lo), a.hi.min(b.hi), a.bits)
    }

    pub fn max(&self, other: &Interval) -> Interval {
        let (a, b) = self.aligned(other);
        Interval::new(a.lo.max(b.lo), a.hi.max(b.hi), a.bits)
    }

    /// Convex hull of two intervals.
    pub fn hull(&self, other: &Interval) -> Interval {
        let (a, b) = self.aligned(other);
        Interval::new(a.lo.min(b.lo), a.hi.max(b.hi), a.bits)
    }

    pub fn contains(&self, r: &BigRational) -> bool {
        &self.lower() <= r && r <= &self.upper()
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        let (a, b) = self.aligned(other);
        a.lo <= b.lo && b.hi <= a.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        let (a, b) = self.aligned(other);
        a.lo <= b.hi && b.lo <= a.hi
    }

    /// Every point of `self` is strictly below every point of `other`.
    pub fn certainly_lt(&self, other: &Interval) -> bool {
        let (a, b) = self.aligned(other);
        a.hi < b.lo
    }

    /// Sign of every enclosed value, when it is uniform.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Certified comparison of all enclosed values against `r`.
    pub fn cmp_rational(&self, r: &BigRational) -> Option<Ordering> {
        let lower = self.lower();
        let upper = self.upper();
        if &upper < r {
            Some(Ordering::Less)
        } else if &lower > r {
            Some(Ordering::Greater)
        } else if self.is_point() && &lower == r {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// `lo` rounded down and `hi` rounded up to `digits` significant digits.
    pub fn to_decimal_bounds(&self, digits: usize) -> (String, String) {
        (
            decimal::format_sig(&self.lower(), digits, Rounding::Floor),
            decimal::format_sig(&self.upper(), digits, Rounding::Ceil),
        )
    }

    /// Lossy conversion for diagnostics and plotting only.
    pub fn to_f64(&self) -> f64 {
        decimal::to_f64(&self.midpoint())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn ratio_enclosure_is_tight() {
        let i = Interval::from_ratio(&1.into(), &3.into(), 10);
        assert!(i.contains(&rat(1, 3)));
        assert_eq!(i.width_units(), BigInt::one());
        let exact = Interval::from_ratio(&3.into(), &8.into(), 10);
        assert!(exact.is_point());
    }

    #[test]
    fn negative_denominators() {
        let i = Interval::from_ratio(&1.into(), &(-3).into(), 20);
        assert!(i.contains(&rat(-1, 3)));
        let q = Interval::from_ratio(&1.into(), &3.into(), 20).div_int(&(-7).into());
        assert!(q.contains(&rat(-1, 21)));
    }

    #[test]
    fn sqrt_encloses() {
        let s = Interval::sqrt_int(&2.into(), 64);
        let sq = s.mul(&s);
        assert!(sq.contains(&rat(2, 1)));
        assert!(s.width_at_most_pow2(64));
        assert!(Interval::sqrt_int(&9.into(), 8).is_point());
    }

    #[test]
    fn division_handles_signs() {
        let a = Interval::from_ratio(&(-5).into(), &7.into(), 40);
        let b = Interval::from_ratio(&(-3).into(), &11.into(), 40);
        let q = a.div(&b).unwrap();
        assert!(q.contains(&rat(55, 21)));
        let z = Interval::new((-1).into(), 1.into(), 4);
        assert!(a.div(&z).is_none());
    }

    #[test]
    fn rescale_widens_outward() {
        let i = Interval::from_ratio(&1.into(), &3.into(), 100);
        let c = i.rescale(10);
        assert!(c.contains_interval(&i));
        assert!(c.rescale(100).contains_interval(&i));
    }

    #[test]
    fn sign_and_order() {
        let a = Interval::from_ratio(&1.into(), &3.into(), 30);
        let b = Interval::from_ratio(&1.into(), &2.into(), 30);
        assert!(a.certainly_lt(&b));
        assert_eq!(a.sub(&b).sign(), Some(Ordering::Less));
        assert_eq!(a.sub(&a).sign(), None);
        assert_eq!(a.cmp_rational(&rat(1, 2)), Some(Ordering::Less));
        assert_eq!(b.cmp_rational(&rat(1, 2)), Some(Ordering::Equal));
    }
}
