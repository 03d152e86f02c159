//! Continued-fraction engine.
//!
//! Every [`AlphaSpec`] reduces to one of three digit sources: a finite list
//! (rationals, via the Euclidean algorithm), an eventually periodic list
//! (quadratic surds via the integer Gauss map, or explicit periodic digits),
//! or a known prefix of an otherwise unspecified irrational.
//!
//! On top of the digits, [`CfExpansion`] tabulates convergents `p_m/q_m`, the
//! denominators `s_m` (with `s_{-1} = 0`) and the thresholds
//! `n_0 = 1, n_m = s_m + s_{m-1}` that index the three-gap regimes.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::alpha::AlphaSpec;
use crate::error::{Error, Result};
use crate::interval::Interval;

/// Working precision for certified evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionContext {
    /// Target precision in bits.
    pub bits: u32,
    /// Escalation ceiling.
    pub max_bits: u32,
    /// Slack between working and certified precision.
    pub guard: u32,
}

impl PrecisionContext {
    pub fn new(bits: u32, max_bits: u32, guard: u32) -> Result<Self> {
        if bits < 64 {
            return Err(Error::Domain(format!("precision {bits} below 64 bits")));
        }
        if max_bits < bits {
            return Err(Error::Domain(format!(
                "precision ceiling {max_bits} below working precision {bits}"
            )));
        }
        if guard >= bits {
            return Err(Error::Domain(format!("guard {guard} not below precision {bits}")));
        }
        Ok(PrecisionContext { bits, max_bits, guard })
    }

    pub fn with_bits(self, bits: u32) -> Self {
        PrecisionContext {
            bits,
            max_bits: self.max_bits.max(bits),
            ..self
        }
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext {
            bits: 128,
            max_bits: 8192,
            guard: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DigitSource {
    /// Complete expansion of a rational, last digit ≥ 2 unless it is `a_0`.
    Finite(Vec<BigInt>),
    /// `preperiod` starts with `a_0`; `period` is nonempty.
    Periodic {
        preperiod: Vec<BigInt>,
        period: Vec<BigInt>,
    },
    /// Leading digits of an irrational whose tail is unknown.
    Prefix(Vec<BigInt>),
}

impl DigitSource {
    pub fn from_alpha(alpha: &AlphaSpec) -> DigitSource {
        match alpha {
            AlphaSpec::Rational(r) => {
                let mut digits = Vec::new();
                let (mut num, mut den) = (r.numer().clone(), r.denom().clone());
                while !den.is_zero() {
                    let (a, rem) = num.div_mod_floor(&den);
                    digits.push(a);
                    num = std::mem::replace(&mut den, rem);
                }
                DigitSource::Finite(digits)
            }
            AlphaSpec::QuadraticSurd(surd) => {
                // Lagrange: the Gauss map on reduced states is eventually
                // periodic, so a repeated (P, Q) pair must appear.
                let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
                let mut digits = Vec::new();
                let mut state = surd.clone();
                loop {
                    let key = (state.p().clone(), state.q().clone());
                    if let Some(&start) = seen.get(&key) {
                        let period = digits.split_off(start);
                        return DigitSource::Periodic {
                            preperiod: digits,
                            period,
                        };
                    }
                    seen.insert(key, digits.len());
                    let (a, next) = state.gauss_step();
                    digits.push(a);
                    state = next;
                }
            }
            AlphaSpec::ExplicitCf(cf) => {
                if cf.period().is_empty() {
                    DigitSource::Prefix(cf.preperiod().to_vec())
                } else {
                    DigitSource::Periodic {
                        preperiod: cf.preperiod().to_vec(),
                        period: cf.period().to_vec(),
                    }
                }
            }
        }
    }

    /// Digit `a_j`, if the source determines it.
    pub fn digit(&self, j: usize) -> Option<&BigInt> {
        match self {
            DigitSource::Finite(d) | DigitSource::Prefix(d) => d.get(j),
            DigitSource::Periodic { preperiod, period } => Some(if j < preperiod.len() {
                &preperiod[j]
            } else {
                &period[(j - preperiod.len()) % period.len()]
            }),
        }
    }

    /// Index of the last determined digit; `None` when unbounded.
    pub fn last_index(&self) -> Option<usize> {
        match self {
            DigitSource::Finite(d) | DigitSource::Prefix(d) => Some(d.len() - 1),
            DigitSource::Periodic { .. } => None,
        }
    }
}

/// Digits, convergents and the `s_m`, `n_m` tables of a continued fraction.
///
/// Tables are materialised through [`CfExpansion::depth`]; extension takes
/// `&mut self`, so shared references are read-only and extension is serialised.
#[derive(Clone, Debug)]
pub struct CfExpansion {
    alpha: AlphaSpec,
    source: DigitSource,
    digits: Vec<BigInt>,
    convergents: Vec<(BigInt, BigInt)>,
    s: Vec<BigInt>,
    n: Vec<BigInt>,
}

/// Expand `alpha` through digit `a_{m_max}` (or the end of a finite expansion).
pub fn expand(alpha: &AlphaSpec, m_max: usize) -> Result<CfExpansion> {
    if m_max < 1 {
        return Err(Error::Domain("m_max must be at least 1".into()));
    }
    let mut exp = CfExpansion {
        alpha: alpha.clone(),
        source: DigitSource::from_alpha(alpha),
        digits: Vec::new(),
        convergents: Vec::new(),
        s: Vec::new(),
        n: Vec::new(),
    };
    exp.extend_to(m_max);
    Ok(exp)
}

impl CfExpansion {
    pub fn alpha(&self) -> &AlphaSpec {
        &self.alpha
    }

    pub fn source(&self) -> &DigitSource {
        &self.source
    }

    /// Largest materialised index.
    pub fn depth(&self) -> usize {
        self.digits.len() - 1
    }

    pub fn digits(&self) -> &[BigInt] {
        &self.digits
    }

    /// `a_j` from the underlying source, materialised or not.
    pub fn digit(&self, j: usize) -> Option<&BigInt> {
        self.source.digit(j)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.source, DigitSource::Finite(_))
    }

    pub fn is_prefix_only(&self) -> bool {
        matches!(self.source, DigitSource::Prefix(_))
    }

    /// `(preperiod length, period length)`, counting `a_0` in the preperiod.
    pub fn periodic(&self) -> Option<(usize, usize)> {
        match &self.source {
            DigitSource::Periodic { preperiod, period } => Some((preperiod.len(), period.len())),
            _ => None,
        }
    }

    pub fn convergents(&self) -> &[(BigInt, BigInt)] {
        &self.convergents
    }

    pub fn s(&self) -> &[BigInt] {
        &self.s
    }

    pub fn n(&self) -> &[BigInt] {
        &self.n
    }

    /// `s_m` for `m ≥ -1`, with `s_{-1} = 0`.
    pub fn s_at(&self, m: i64) -> Result<BigInt> {
        if m == -1 {
            return Ok(BigInt::zero());
        }
        self.s
            .get(usize::try_from(m).map_err(|_| self.out_of_range("s", m))?)
            .cloned()
            .ok_or_else(|| self.out_of_range("s", m))
    }

    fn out_of_range(&self, what: &'static str, m: i64) -> Error {
        match self.source.last_index() {
            Some(last) if self.is_prefix_only() && m as usize > last => Error::InsufficientDigits {
                needed: m as usize,
                available: last,
            },
            _ => Error::OutOfRange {
                what,
                index: m,
                available: self.depth() as i64,
            },
        }
    }

    /// `α₀ = α mod 1` exactly, for rational α.
    pub fn alpha0_rational(&self) -> Option<BigRational> {
        match &self.alpha {
            AlphaSpec::Rational(r) => Some(r - r.floor()),
            _ => None,
        }
    }

    /// Materialise digits through `m_max`; stops early at the end of a
    /// finite or prefix-only source.
    pub fn extend_to(&mut self, m_max: usize) {
        while self.digits.len() <= m_max {
            let j = self.digits.len();
            let Some(a) = self.source.digit(j).cloned() else {
                break;
            };
            let (p, q) = match j {
                0 => (a.clone(), BigInt::one()),
                1 => {
                    let (p0, _) = &self.convergents[0];
                    (&a * p0 + 1, a.clone())
                }
                _ => {
                    let (p1, q1) = &self.convergents[j - 1];
                    let (p2, q2) = &self.convergents[j - 2];
                    (&a * p1 + p2, &a * q1 + q2)
                }
            };
            let s = match j {
                0 => BigInt::one(),
                1 => a.clone(),
                _ => &a * &self.s[j - 1] + &self.s[j - 2],
            };
            let n = if j == 0 {
                BigInt::one()
            } else {
                &s + &self.s[j - 1]
            };
            self.digits.push(a);
            self.convergents.push((p, q));
            self.s.push(s);
            self.n.push(n);
        }
    }

    /// Extend until `n_{depth} > n`; returns false when the source runs out first.
    pub fn extend_past(&mut self, n: &BigInt) -> bool {
        loop {
            if self.n.last().is_some_and(|last| last > n) {
                return true;
            }
            let before = self.digits.len();
            self.extend_to(before);
            if self.digits.len() == before {
                return false;
            }
        }
    }

    /// Enclosure of `α_m` with the backward recurrence over `window` digits.
    /// Returns the enclosure and whether the source was exhausted.
    fn tail_window(&self, m: usize, window: usize, bits: u32) -> (Interval, bool) {
        let mut end = m + window;
        let mut exhausted = false;
        let mut x = Interval::new(BigInt::zero(), BigInt::one() << bits, bits);
        if let Some(last) = self.source.last_index() {
            if end >= last {
                end = last;
                exhausted = true;
                if self.is_finite() {
                    // α_last = 0 for a terminating expansion.
                    x = Interval::zero(bits);
                }
            }
        }
        for j in (m + 1..=end).rev() {
            let a = self.source.digit(j).expect("digit within source");
            x = x.add_int(a).recip().expect("a_j + x is positive");
        }
        (x, exhausted)
    }
}

/// `(s_m, n_m)` from the tabulated recurrences.
pub fn s_and_n(exp: &CfExpansion, m: usize) -> Result<(BigInt, BigInt)> {
    if m > exp.depth() {
        return Err(exp.out_of_range("s/n", m as i64));
    }
    Ok((exp.s[m].clone(), exp.n[m].clone()))
}

/// Certified enclosure of the tail `α_m = [0; a_{m+1}, a_{m+2}, …]`.
///
/// The width is at most `2^(guard − bits)`. The remainder beyond the digit
/// window is seeded with `[0, 1]` and the window doubles until the target
/// is met.
pub fn alpha_tail(exp: &CfExpansion, m: usize, ctx: &PrecisionContext) -> Result<Interval> {
    let target = ctx.bits as i64 - ctx.guard as i64;
    let mut window = 16usize;
    loop {
        let wp = ctx.bits + ctx.guard + 16 + usize::BITS - window.leading_zeros();
        let (x, exhausted) = exp.tail_window(m, window, wp);
        if x.width_at_most_pow2(target) {
            return Ok(x);
        }
        if exhausted {
            let last = exp.source.last_index().unwrap_or(0);
            // Denominators grow at least like Fibonacci numbers, so each
            // further digit buys at least log2(φ²) ≈ 1.38 bits.
            let have = -log2_upper(&x.width());
            let needed = last + ((target - have).max(1) as f64 / 1.38).ceil() as usize;
            return Err(Error::InsufficientDigits {
                needed,
                available: last,
            });
        }
        window *= 2;
    }
}

/// Best enclosure of `α_m` that the source supports at grid `bits`, even when
/// a prefix-only source cannot reach the requested width.
pub fn alpha_tail_best(exp: &CfExpansion, m: usize, ctx: &PrecisionContext) -> Result<Interval> {
    match alpha_tail(exp, m, ctx) {
        Err(Error::InsufficientDigits { .. }) => {
            let last = exp.source.last_index().unwrap_or(m);
            let window = last.saturating_sub(m).max(1);
            Ok(exp.tail_window(m, window, ctx.bits + ctx.guard + 16).0)
        }
        other => other,
    }
}

/// `ceil(log2(w))` for a positive rational; zero width maps to a large value.
fn log2_upper(w: &BigRational) -> i64 {
    if w.is_zero() {
        return i64::MIN / 2;
    }
    let num = w.numer().bits() as i64;
    let den = w.denom().bits() as i64;
    num - den + 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certainty {
    Exact,
    PrefixOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitSupremum {
    pub value: BigInt,
    pub certainty: Certainty,
}

/// `sup_{j ≥ 1} a_j`: exact for finite and periodic expansions, otherwise the
/// maximum over the first `probe_depth` digits.
pub fn digit_supremum(exp: &CfExpansion, probe_depth: usize) -> DigitSupremum {
    let max_of = |xs: &[BigInt]| xs.iter().max().cloned().unwrap_or_else(BigInt::zero);
    match &exp.source {
        DigitSource::Finite(d) => DigitSupremum {
            value: max_of(d.get(1..).unwrap_or(&[])),
            certainty: Certainty::Exact,
        },
        DigitSource::Periodic { preperiod, period } => DigitSupremum {
            value: max_of(preperiod.get(1..).unwrap_or(&[])).max(max_of(period)),
            certainty: Certainty::Exact,
        },
        DigitSource::Prefix(d) => {
            let end = (probe_depth + 1).min(d.len());
            DigitSupremum {
                value: max_of(&d[1.min(end)..end]),
                certainty: Certainty::PrefixOnly,
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Infinite expansion with bounded digits.
    Yes { sup: BigInt },
    /// Rational α: finite expansion.
    No,
    /// Only a prefix is known; the prefix maximum is reported.
    Unknown { prefix_max: BigInt },
}

pub fn is_badly_approximable(alpha: &AlphaSpec, probe_depth: usize) -> Verdict {
    let exp = CfExpansion {
        alpha: alpha.clone(),
        source: DigitSource::from_alpha(alpha),
        digits: Vec::new(),
        convergents: Vec::new(),
        s: Vec::new(),
        n: Vec::new(),
    };
    let sup = digit_supremum(&exp, probe_depth);
    match (&exp.source, sup.certainty) {
        (DigitSource::Finite(_), _) => Verdict::No,
        (_, Certainty::Exact) => Verdict::Yes { sup: sup.value },
        (_, Certainty::PrefixOnly) => Verdict::Unknown {
            prefix_max: sup.value,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alpha::QuadraticSurd;
    use proptest::prelude::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn golden_conjugate_expansion() {
        let exp = expand(&AlphaSpec::quadratic(-1, 5, 2).unwrap(), 6).unwrap();
        assert_eq!(exp.digits(), ints(&[0, 1, 1, 1, 1, 1, 1]).as_slice());
        assert_eq!(exp.periodic(), Some((1, 1)));
        assert!(!exp.is_finite());
    }

    #[test]
    fn rational_expansion_terminates() {
        let exp = expand(&AlphaSpec::rational(3, 8).unwrap(), 10).unwrap();
        assert_eq!(exp.digits(), ints(&[0, 2, 1, 2]).as_slice());
        assert!(exp.is_finite());
        assert_eq!(exp.depth(), 3);
        let (p, q) = exp.convergents().last().unwrap();
        assert_eq!(BigRational::new(p.clone(), q.clone()), rat(3, 8));
    }

    #[test]
    fn sqrt2_expansion() {
        let exp = expand(&AlphaSpec::sqrt(2).unwrap(), 4).unwrap();
        assert_eq!(exp.digits(), ints(&[1, 2, 2, 2, 2]).as_slice());
        assert_eq!(exp.periodic(), Some((1, 1)));
    }

    #[test]
    fn m_max_zero_is_rejected() {
        assert!(matches!(expand(&AlphaSpec::golden(), 0), Err(Error::Domain(_))));
    }

    #[test]
    fn s_and_n_tables() {
        let golden = expand(&AlphaSpec::golden(), 6).unwrap();
        let s: Vec<_> = (0..6).map(|m| s_and_n(&golden, m).unwrap().0).collect();
        let n: Vec<_> = (0..6).map(|m| s_and_n(&golden, m).unwrap().1).collect();
        assert_eq!(s, ints(&[1, 1, 2, 3, 5, 8]));
        assert_eq!(n, ints(&[1, 2, 3, 5, 8, 13]));
        assert_eq!(golden.s_at(-1).unwrap(), BigInt::zero());

        let silver = expand(&AlphaSpec::quadratic(-1, 2, 1).unwrap(), 5).unwrap();
        assert_eq!(&silver.s()[..5], ints(&[1, 2, 5, 12, 29]).as_slice());
        assert_eq!(s_and_n(&silver, 1).unwrap().1, BigInt::from(3));
        assert_eq!(s_and_n(&silver, 2).unwrap().1, BigInt::from(7));
        assert_eq!(s_and_n(&silver, 0).unwrap(), (BigInt::one(), BigInt::one()));
        assert!(matches!(s_and_n(&silver, 9), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn alpha_tail_examples() {
        let ctx = PrecisionContext::new(64, 1024, 4).unwrap();
        let golden = expand(&AlphaSpec::golden(), 4).unwrap();
        let t = alpha_tail(&golden, 3, &ctx).unwrap();
        assert!(t.width_at_most_pow2(60));
        let conj = Interval::sqrt_int(&5.into(), 80).add_int(&(-1).into()).div_int(&2.into());
        assert!(t.overlaps(&conj));
        assert!((t.to_f64() - 0.6180339887).abs() < 1e-10);

        // [0; 2] terminates: α_0 = 1/2 exactly.
        let half = expand(&AlphaSpec::rational(1, 2).unwrap(), 3).unwrap();
        let t = alpha_tail(&half, 0, &ctx).unwrap();
        assert!(t.is_point());
        assert!(t.contains(&rat(1, 2)));

        let sqrt2 = expand(&AlphaSpec::sqrt(2).unwrap(), 3).unwrap();
        let t = alpha_tail(&sqrt2, 0, &ctx).unwrap();
        let direct = Interval::sqrt_int(&2.into(), 96).add_int(&(-1).into());
        assert!(t.overlaps(&direct));
        assert!((t.to_f64() - 0.41421356).abs() < 1e-8);
    }

    #[test]
    fn prefix_tail_reports_needed_depth() {
        let ctx = PrecisionContext::new(256, 1024, 4).unwrap();
        let exp = expand(&AlphaSpec::explicit_cf([0, 1, 2, 3], Vec::<i32>::new()).unwrap(), 3).unwrap();
        match alpha_tail(&exp, 0, &ctx) {
            Err(Error::InsufficientDigits { needed, available }) => {
                assert_eq!(available, 3);
                assert!(needed > 3);
            }
            other => panic!("expected insufficient digits, got {other:?}"),
        }
        let best = alpha_tail_best(&exp, 0, &ctx).unwrap();
        // [0;1,2,3] and [0;1,2,4] both share the prefix.
        assert!(best.contains(&rat(7, 10)));
        assert!(best.contains(&rat(9, 13)));
    }

    #[test]
    fn supremum_and_classification() {
        let golden = expand(&AlphaSpec::golden(), 2).unwrap();
        assert_eq!(
            digit_supremum(&golden, 10),
            DigitSupremum { value: 1.into(), certainty: Certainty::Exact }
        );
        let r = expand(&AlphaSpec::rational(3, 8).unwrap(), 2).unwrap();
        assert_eq!(digit_supremum(&r, 10).value, BigInt::from(2));
        let rule: Vec<i64> = (0..=50).collect();
        let explicit = AlphaSpec::explicit_cf(rule, Vec::<i64>::new()).unwrap();
        let e = expand(&explicit, 50).unwrap();
        assert_eq!(
            digit_supremum(&e, 50),
            DigitSupremum { value: 50.into(), certainty: Certainty::PrefixOnly }
        );

        assert_eq!(is_badly_approximable(&AlphaSpec::golden(), 10), Verdict::Yes { sup: 1.into() });
        assert_eq!(is_badly_approximable(&AlphaSpec::rational(3, 8).unwrap(), 10), Verdict::No);
        assert_eq!(
            is_badly_approximable(&explicit, 50),
            Verdict::Unknown { prefix_max: 50.into() }
        );
    }

    #[test]
    fn gauss_map_stays_normalized() {
        for (p, d, q) in [(1, 5, 2), (0, 2, 1), (3, 7, 5), (-4, 13, 3), (2, 19, -7), (1, 1001, 10)] {
            let mut state = QuadraticSurd::new(p.into(), d.into(), q.into()).unwrap();
            for _ in 0..200 {
                assert!(state.is_normalized());
                state = state.gauss_step().1;
            }
        }
    }

    /// Strict tail bounds valid for every irrational α:
    /// `1/(a+1/a') < α_m < 1/(a + 1/(a'+1))` with `a = a_{m+1}`, `a' = a_{m+2}`.
    fn assert_tail_sandwich(exp: &CfExpansion, m: usize, t: &Interval) {
        let a = BigRational::from_integer(exp.digit(m + 1).unwrap().clone());
        let a2 = BigRational::from_integer(exp.digit(m + 2).unwrap().clone());
        let one = BigRational::one();
        let lower = &one / (&a + &one / &a2);
        let upper = &one / (&a + &one / (&a2 + &one));
        assert!(t.lower() > lower, "m={m}: tail not above 1/(a+1/a')");
        assert!(t.upper() < upper, "m={m}: tail not below 1/(a+1/(a'+1))");
        assert!(t.lower() > &one / (&a + &one));
        assert!(t.upper() < &one / &a);
    }

    #[test]
    fn published_upper_sandwich_is_reversed() {
        // α_m < 1/(a_{m+1} + 1/a_{m+2}) fails already for the golden ratio:
        // α_m ≈ 0.618 while the right-hand side is 1/2.
        let ctx = PrecisionContext::default();
        let golden = expand(&AlphaSpec::golden(), 4).unwrap();
        let t = alpha_tail(&golden, 0, &ctx).unwrap();
        assert!(t.lower() > rat(1, 2));
        assert_tail_sandwich(&golden, 0, &t);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn s_matches_convergent_denominators(digits in proptest::collection::vec(1u32..40, 50)) {
            let mut pre = vec![0u32];
            pre.extend(digits);
            let exp = expand(&AlphaSpec::explicit_cf(pre, Vec::<u32>::new()).unwrap(), 50).unwrap();
            // Independent convergent recurrence for [0; a_1, ...].
            let (mut q_prev, mut q) = (BigInt::zero(), BigInt::one());
            for m in 0..=50usize {
                if m > 0 {
                    let next = exp.digits()[m].clone() * &q + &q_prev;
                    q_prev = std::mem::replace(&mut q, next);
                }
                prop_assert_eq!(&exp.s()[m], &q);
                prop_assert_eq!(&exp.convergents()[m].1, &q);
            }
            for m in 1..=50usize {
                prop_assert!(exp.n()[m] > exp.n()[m - 1]);
            }
        }

        #[test]
        fn rational_final_convergent(num in 1i64..100_000, den in 1i64..100_000) {
            let exp = expand(&AlphaSpec::rational(num, den).unwrap(), 100).unwrap();
            prop_assert!(exp.is_finite());
            let (p, q) = exp.convergents().last().unwrap();
            prop_assert_eq!(BigRational::new(p.clone(), q.clone()), rat(num, den));
            if exp.depth() > 0 {
                prop_assert!(exp.digits()[exp.depth()] >= BigInt::from(2));
            }
        }

        #[test]
        fn tails_satisfy_sandwich(pre in proptest::collection::vec(1u32..10, 0..4),
                                  period in proptest::collection::vec(1u32..10, 1..4),
                                  m in 0usize..30) {
            let mut p = vec![0u32];
            p.extend(pre);
            let exp = expand(&AlphaSpec::explicit_cf(p, period).unwrap(), m + 2).unwrap();
            let t = alpha_tail(&exp, m, &PrecisionContext::default()).unwrap();
            prop_assert!(t.width_at_most_pow2(124));
            assert_tail_sandwich(&exp, m, &t);
        }
    }
}
