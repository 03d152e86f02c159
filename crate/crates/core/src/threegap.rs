//! Closed-form three-gap structure of Kronecker prefixes.
//!
//! For `n_m ≤ n < n_{m+1}` write `n = n_m + h·s_m + k` with
//! `0 ≤ h < a_{m+1}` and `0 ≤ k < s_m`. The `n` gaps of the sorted prefix
//! (closing with the gap up to 1) take the lengths
//!
//! | length                    | multiplicity              |
//! |---------------------------|---------------------------|
//! | `η_m`                     | `s_{m-1} + h·s_m + k`     |
//! | `η_{m-1} − h·η_m`         | `s_m − k`                 |
//! | `η_{m-1} − (h+1)·η_m`     | `k`                       |
//!
//! where `η_{-1} = 1`, `η_0 = α₀` and `η_{m+1} = η_{m-1} − a_{m+1}·η_m`.
//! Lengths are exact integer linear forms in `α₀`.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::contfrac::CfExpansion;
use crate::error::{Error, Result};
use crate::field::{AlphaField, Real};

/// The real number `u·α₀ + v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    pub u: BigInt,
    pub v: BigInt,
}

impl LinearForm {
    pub fn new(u: impl Into<BigInt>, v: impl Into<BigInt>) -> Self {
        LinearForm {
            u: u.into(),
            v: v.into(),
        }
    }

    pub fn one() -> Self {
        LinearForm::new(0, 1)
    }

    pub fn zero() -> Self {
        LinearForm::new(0, 0)
    }

    pub fn alpha() -> Self {
        LinearForm::new(1, 0)
    }

    pub fn to_real(&self) -> Real {
        Real::form(self.u.clone(), self.v.clone())
    }
}

impl Add for &LinearForm {
    type Output = LinearForm;
    fn add(self, o: &LinearForm) -> LinearForm {
        LinearForm::new(&self.u + &o.u, &self.v + &o.v)
    }
}

impl Sub for &LinearForm {
    type Output = LinearForm;
    fn sub(self, o: &LinearForm) -> LinearForm {
        LinearForm::new(&self.u - &o.u, &self.v - &o.v)
    }
}

impl Mul<&BigInt> for &LinearForm {
    type Output = LinearForm;
    fn mul(self, k: &BigInt) -> LinearForm {
        LinearForm::new(&self.u * k, &self.v * k)
    }
}

impl Neg for &LinearForm {
    type Output = LinearForm;
    fn neg(self) -> LinearForm {
        LinearForm::new(-&self.u, -&self.v)
    }
}

/// `η_m` for `m ≥ -1`.
pub fn eta(exp: &CfExpansion, m: i64) -> Result<LinearForm> {
    if m < -1 {
        return Err(Error::OutOfRange {
            what: "eta",
            index: m,
            available: exp.depth() as i64,
        });
    }
    let (mut prev, mut cur) = (LinearForm::one(), LinearForm::alpha());
    if m == -1 {
        return Ok(prev);
    }
    for j in 0..m as usize {
        let a = exp.digits().get(j + 1).ok_or_else(|| {
            if exp.is_prefix_only() && exp.source().last_index().is_some_and(|l| j + 1 > l) {
                Error::InsufficientDigits {
                    needed: j + 1,
                    available: exp.depth(),
                }
            } else {
                Error::OutOfRange {
                    what: "eta",
                    index: m,
                    available: exp.depth() as i64,
                }
            }
        })?;
        let next = &prev - &(&cur * a);
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub m: usize,
    pub h: u64,
    pub k: u64,
}

fn to_u64(x: &BigInt) -> u64 {
    x.to_u64().expect("value bounded by n fits in u64")
}

/// Locate `n` in the regime `n_m ≤ n < n_{m+1}` and split the remainder.
pub fn decompose(exp: &CfExpansion, n: u64) -> Result<Decomposition> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    let nb = BigInt::from(n);
    let ns = exp.n();
    // ns is strictly increasing from n_0 = 1.
    let m = ns.partition_point(|x| x <= &nb) - 1;
    if m + 1 >= ns.len() {
        return Err(if exp.is_finite() {
            Error::Unsupported(format!(
                "rational alpha: n = {n} reaches the periodic regime (n ≥ n_{})",
                exp.depth()
            ))
        } else if exp.is_prefix_only() && exp.source().last_index() == Some(exp.depth()) {
            Error::InsufficientDigits {
                needed: exp.depth() + 1,
                available: exp.depth(),
            }
        } else {
            Error::OutOfRange {
                what: "n_m",
                index: m as i64 + 1,
                available: exp.depth() as i64,
            }
        });
    }
    let rest = &nb - &ns[m];
    let s = &exp.s()[m];
    let h = &rest / s;
    let k = &rest % s;
    debug_assert!(&h < &exp.digits()[m + 1], "h ≤ a_(m+1) − 1");
    Ok(Decomposition {
        m,
        h: to_u64(&h),
        k: to_u64(&k),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapEntry {
    pub length: LinearForm,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapStructure {
    pub n: u64,
    pub decomposition: Decomposition,
    /// Ordered as `η_m`, `η_{m-1} − h·η_m`, `η_{m-1} − (h+1)·η_m`; zero
    /// multiplicities are kept.
    pub entries: [GapEntry; 3],
}

pub fn gap_structure(exp: &CfExpansion, n: u64) -> Result<GapStructure> {
    if exp.is_finite() {
        return Err(Error::Unsupported(
            "three-gap structure requires irrational alpha".into(),
        ));
    }
    let d = decompose(exp, n)?;
    let m = d.m as i64;
    let eta_m = eta(exp, m)?;
    let eta_prev = eta(exp, m - 1)?;
    let h = BigInt::from(d.h);
    let s_m = to_u64(&exp.s_at(m)?);
    let s_prev = to_u64(&exp.s_at(m - 1)?);
    let middle = &eta_prev - &(&eta_m * &h);
    let third = &middle - &eta_m;
    Ok(GapStructure {
        n,
        decomposition: d,
        entries: [
            GapEntry {
                length: eta_m,
                multiplicity: s_prev + d.h * s_m + d.k,
            },
            GapEntry {
                length: middle,
                multiplicity: s_m - d.k,
            },
            GapEntry {
                length: third,
                multiplicity: d.k,
            },
        ],
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub checks: Vec<IdentityCheck>,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Exact integer identities every gap structure must satisfy.
pub fn lengths_check(gs: &GapStructure) -> CheckReport {
    let [first, middle, third] = &gs.entries;
    let sum_lengths = &first.length + &third.length;
    let total = gs
        .entries
        .iter()
        .fold(LinearForm::zero(), |acc, e| &acc + &(&e.length * &BigInt::from(e.multiplicity)));
    let count: u128 = gs.entries.iter().map(|e| e.multiplicity as u128).sum();
    CheckReport {
        checks: vec![
            IdentityCheck {
                identity: "middle = first + third",
                passed: sum_lengths == middle.length,
                detail: format!(
                    "({}, {}) vs ({}, {})",
                    sum_lengths.u, sum_lengths.v, middle.length.u, middle.length.v
                ),
            },
            IdentityCheck {
                identity: "sum of multiplicity x length = 1",
                passed: total == LinearForm::one(),
                detail: format!("({}, {})", total.u, total.v),
            },
            IdentityCheck {
                identity: "multiplicities sum to n",
                passed: count == gs.n as u128,
                detail: format!("{count} vs {}", gs.n),
            },
        ],
    }
}

#[derive(Serialize)]
struct EntryJson {
    u: serde_json::Number,
    v: serde_json::Number,
    multiplicity: u64,
    interval: [String; 2],
}

#[derive(Serialize)]
struct GapStructureJson {
    m: usize,
    h: u64,
    k: u64,
    entries: Vec<EntryJson>,
}

fn json_int(x: &BigInt) -> Result<serde_json::Number> {
    x.to_i64()
        .map(Into::into)
        .ok_or_else(|| Error::Unsupported(format!("coefficient {x} exceeds 64 bits")))
}

impl GapStructure {
    /// `{m, h, k, entries: [{u, v, multiplicity, interval: [lo, hi]}]}` with
    /// interval endpoints as directed-rounded decimal strings.
    pub fn to_json(&self, field: &AlphaField, digits: usize) -> Result<serde_json::Value> {
        let bits = field.ctx().bits;
        let entries = self
            .entries
            .iter()
            .map(|e| {
                let (lo, hi) = field
                    .enclose(&e.length.to_real(), bits)?
                    .to_decimal_bounds(digits);
                Ok(EntryJson {
                    u: json_int(&e.length.u)?,
                    v: json_int(&e.length.v)?,
                    multiplicity: e.multiplicity,
                    interval: [lo, hi],
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let doc = GapStructureJson {
            m: self.decomposition.m,
            h: self.decomposition.h,
            k: self.decomposition.k,
            entries,
        };
        Ok(serde_json::to_value(doc).expect("serializable"))
    }
}

/// Recompose `n_m + h·s_m + k`.
pub fn recompose(exp: &CfExpansion, d: &Decomposition) -> BigInt {
    &exp.n()[d.m] + BigInt::from(d.h) * &exp.s()[d.m] + BigInt::from(d.k)
}

/// Is `x` (a candidate gap length) strictly between 0 and 1?
pub fn in_unit_interval(field: &AlphaField, x: &LinearForm) -> Result<bool> {
    let r = x.to_real();
    Ok(field.sign(&r)? == std::cmp::Ordering::Greater
        && field.cmp(&r, &Real::integer(1))? == std::cmp::Ordering::Less
        && !x.u.is_zero()
        || (x.u.is_zero() && x.v.is_one()))
}
