//! Decimal rendering of exact rationals at a fixed number of significant digits.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    /// Toward −∞.
    Floor,
    /// Toward +∞.
    Ceil,
    /// Nearest, ties away from zero.
    Nearest,
}

fn pow10(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), e as usize)
}

/// Scale `r` by `10^e` for a signed exponent.
fn scale10(r: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        r * BigRational::from_integer(pow10(e as u32))
    } else {
        r / BigRational::from_integer(pow10((-e) as u32))
    }
}

/// `floor(log10(r))` for `r > 0`.
fn log10_floor(r: &BigRational) -> i64 {
    let digits = |x: &BigInt| x.to_str_radix(10).len() as i64;
    let mut e = digits(r.numer()) - digits(r.denom());
    // Correct the estimate, which is off by at most one.
    while scale10(r, -e) < BigRational::one() {
        e -= 1;
    }
    while scale10(r, -(e + 1)) >= BigRational::one() {
        e += 1;
    }
    e
}

fn round_integer(r: &BigRational, mode: Rounding) -> BigInt {
    match mode {
        Rounding::Floor => r.numer().div_floor(r.denom()),
        Rounding::Ceil => -((-r.numer()).div_floor(r.denom())),
        Rounding::Nearest => {
            let half = BigRational::new(1.into(), 2.into());
            if r.is_negative() {
                -((-r + half).floor().to_integer())
            } else {
                (r + half).floor().to_integer()
            }
        }
    }
}

/// Render `r` with `digits` significant digits under the given rounding.
///
/// Trailing fractional zeros are dropped, so exact dyadic values print short
/// (`1/4` renders as `0.25`).
pub fn format_sig(r: &BigRational, digits: usize, mode: Rounding) -> String {
    assert!(digits > 0, "at least one significant digit");
    if r.is_zero() {
        return "0".to_string();
    }
    let e = log10_floor(&r.abs());
    let places = digits as i64 - 1 - e;
    let scaled = scale10(r, places);
    let mantissa = round_integer(&scaled, mode);
    render_scaled(&mantissa, places)
}

/// Render `mantissa · 10^-places` as a plain decimal string.
fn render_scaled(mantissa: &BigInt, places: i64) -> String {
    let negative = mantissa.sign() == Sign::Minus;
    let mut body = if places <= 0 {
        (mantissa.abs() * pow10((-places) as u32)).to_str_radix(10)
    } else {
        let s = mantissa.abs().to_str_radix(10);
        let p = places as usize;
        let padded = if s.len() <= p {
            format!("{}{}", "0".repeat(p + 1 - s.len()), s)
        } else {
            s
        };
        let (int, frac) = padded.split_at(padded.len() - p);
        let frac = frac.trim_end_matches('0');
        if frac.is_empty() {
            int.to_string()
        } else {
            format!("{int}.{frac}")
        }
    };
    if negative && body != "0" {
        body.insert(0, '-');
    }
    body
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
