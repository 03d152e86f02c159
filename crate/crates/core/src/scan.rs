//! Fixed-point scan of large Kronecker prefixes.
//!
//! Each point `{i·α₀}` is represented by `X_i = i·L mod 2^128`, where `L` is
//! the lower end of a 128-bit enclosure of `α₀` with width `w`. The true
//! scaled point lies in `[X_i, X_i + n·w]` as long as that range does not
//! cross `2^128`, which is checked per point. Keys pack the top 96 bits of
//! `X_i` above the 32-bit index, so sorting keys sorts points; adjacent keys
//! are certified distinct by a margin exceeding `n·w`.
//!
//! The value range is split into passes so that at most about
//! `2^chunk_log2` keys are held in memory at once. Gap lengths are recovered
//! exactly as `d·α₀ − f` from the index difference `d`; the handful of
//! distinct forms is then compared exactly.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::field::{AlphaField, Real};
use crate::metrics::QUMetrics;

pub const DEFAULT_CHUNK_LOG2: u32 = 26;

const BITS: u32 = 128;
const INDEX_MASK: u128 = 0xFFFF_FFFF;

#[derive(Clone, Debug)]
pub struct ScanResult {
    pub metrics: QUMetrics,
    /// Distinct interior gaps with their counts.
    pub gaps: Vec<(Real, u64)>,
    /// Index of the largest point.
    pub last_index: u64,
}

fn to_u128(x: &BigInt) -> Option<u128> {
    x.to_u128()
}

/// Exact metrics of the first `n` Kronecker points, `2 ≤ n < 2^32`.
pub fn kronecker_scan(field: &AlphaField, n: u64, chunk_log2: u32) -> Result<QUMetrics> {
    Ok(kronecker_scan_detail(field, n, chunk_log2)?.metrics)
}

pub fn kronecker_scan_detail(field: &AlphaField, n: u64, chunk_log2: u32) -> Result<ScanResult> {
    if field.is_rational() {
        return Err(Error::Unsupported("fixed-point scan requires irrational alpha".into()));
    }
    if n < 2 {
        return Err(Error::Domain("mesh ratio needs at least two points".into()));
    }
    if n > INDEX_MASK as u64 {
        return Err(Error::Unsupported(format!("scan supports n < 2^32, got {n}")));
    }
    let a = field.alpha0(BITS)?;
    let unresolved = Error::PrecisionUnresolved { bits: BITS };
    let lo = to_u128(a.lo()).ok_or(unresolved.clone())?;
    let w = to_u128(&(a.hi() - a.lo())).ok_or(unresolved.clone())?;
    let spread = (n as u128).checked_mul(w).ok_or(unresolved.clone())?;
    let margin = (spread >> 32) + 2;
    let alpha_f64 = a.to_f64();

    let passes = n.div_ceil(1u64 << chunk_log2).max(1);
    let step = u64::MAX / passes;
    let mut keys: Vec<u128> = Vec::with_capacity((n / passes * 11 / 10 + 16) as usize);
    // Three-gap structure keeps this to at most three entries.
    let mut forms: Vec<((i64, i64), u64, f64)> = Vec::new();
    let mut prev: Option<u128> = None;
    let mut scratch: Vec<u128> = Vec::new();

    // Pass p holds the points whose high 64 bits lie in [start, start + span].
    for p in 0..passes {
        let start = p * step;
        let span = if p + 1 < passes { step - 1 } else { u64::MAX - start };
        keys.clear();
        let mut x: u128 = 0;
        for i in 0..n {
            if ((x >> 64) as u64).wrapping_sub(start) <= span {
                if x.checked_add(spread).is_none() {
                    return Err(unresolved);
                }
                keys.push((x & !INDEX_MASK) | i as u128);
            }
            x = x.wrapping_add(lo);
        }
        let width = ((span as u128) << 64) | u64::MAX as u128;
        bucket_sort(&mut keys, &mut scratch, (start as u128) << 64, width);
        for &k in &keys {
            if let Some(pk) = prev {
                let dt = (k >> 32) - (pk >> 32);
                if dt < margin {
                    return Err(unresolved);
                }
                let d = (k & INDEX_MASK) as i64 - (pk & INDEX_MASK) as i64;
                let gap = dt as f64 * 2f64.powi(-96);
                let f = (d as f64 * alpha_f64 - gap).round() as i64;
                match forms.iter_mut().find(|e| e.0 == (d, f)) {
                    Some(e) => e.1 += 1,
                    None => forms.push(((d, f), 1, gap)),
                }
            }
            prev = Some(k);
        }
    }

    let last_index = (prev.expect("n ≥ 2") & INDEX_MASK) as u64;
    let total: u64 = forms.iter().map(|e| e.1).sum();
    assert_eq!(total, n - 1, "every adjacent pair accounted for");

    let mut gaps = Vec::with_capacity(forms.len());
    forms.sort_unstable_by_key(|e| e.0);
    for ((d, f), count, approx) in forms {
        let g = Real::form(d.into(), (-f).into());
        // The recovered integer part must reproduce the observed gap.
        let iv = field.enclose(&g, 64)?;
        if (iv.to_f64() - approx).abs() > 1e-6 || iv.sign() != Some(std::cmp::Ordering::Greater) {
            return Err(Error::PrecisionUnresolved { bits: BITS });
        }
        gaps.push((g, count));
    }

    let fl = field.floor_multiple(&BigInt::from(last_index))?;
    let right = Real::form(-BigInt::from(last_index), fl + 1);
    let mut max_gap = &gaps[0].0;
    let mut min_gap = &gaps[0].0;
    for (g, _) in &gaps[1..] {
        if field.cmp(g, max_gap)?.is_gt() {
            max_gap = g;
        }
        if field.cmp(g, min_gap)?.is_lt() {
            min_gap = g;
        }
    }
    // x_0 = 0 is the smallest point, so the left boundary term vanishes.
    let half_max = max_gap.half();
    let fill = if field.cmp(&right, &half_max)?.is_gt() {
        right
    } else {
        half_max
    };
    let metrics = QUMetrics::from_parts(n as usize, fill, min_gap.half());
    Ok(ScanResult {
        metrics,
        gaps,
        last_index,
    })
}

const BUCKET_BITS: u32 = 16;

/// Sort keys whose values lie in `[start, start + width]`: one counting pass
/// on the leading bits of the offset, then a comparison sort per bucket.
fn bucket_sort(keys: &mut Vec<u128>, scratch: &mut Vec<u128>, start: u128, width: u128) {
    let shift = (128 - width.leading_zeros()).saturating_sub(BUCKET_BITS);
    // Masking the index keeps the bucket monotone in the key.
    let bucket = |k: u128| (((k & !INDEX_MASK).saturating_sub(start)) >> shift) as usize;
    let mut counts = vec![0usize; (1 << BUCKET_BITS) + 2];
    for &k in keys.iter() {
        counts[bucket(k) + 1] += 1;
    }
    for b in 1..counts.len() {
        counts[b] += counts[b - 1];
    }
    scratch.clear();
    scratch.resize(keys.len(), 0);
    let mut next = counts.clone();
    for &k in keys.iter() {
        let b = bucket(k);
        scratch[next[b]] = k;
        next[b] += 1;
    }
    for w in counts.windows(2) {
        scratch[w[0]..w[1]].sort_unstable();
    }
    std::mem::swap(keys, scratch);
}
