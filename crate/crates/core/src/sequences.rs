//! Point prefixes: Kronecker, van der Corput and greedy packing.
//!
//! Points are stored exactly as [`Real`] values. Kronecker points are
//! `i·α₀ − floor(i·α₀)` with a certified floor; the others are rationals.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::alpha::AlphaSpec;
use crate::contfrac::PrecisionContext;
use crate::error::{Error, Result};
use crate::field::{AlphaField, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Kronecker,
    Vdc,
    Greedy,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::Kronecker => "kronecker",
            Generator::Vdc => "vdc",
            Generator::Greedy => "greedy",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TieBreak {
    #[default]
    Leftmost,
    Rightmost,
}

impl FromStr for TieBreak {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "leftmost" | "left" => Ok(TieBreak::Leftmost),
            "rightmost" | "right" => Ok(TieBreak::Rightmost),
            _ => Err(Error::Parse(format!("unknown tie-break `{s}` (leftmost|rightmost)"))),
        }
    }
}

impl fmt::Display for TieBreak {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TieBreak::Leftmost => "leftmost",
            TieBreak::Rightmost => "rightmost",
        })
    }
}

/// A generator with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorSpec {
    Kronecker(AlphaSpec),
    Vdc { base: u32 },
    Greedy { tie: TieBreak },
}

impl GeneratorSpec {
    pub fn tag(&self) -> Generator {
        match self {
            GeneratorSpec::Kronecker(_) => Generator::Kronecker,
            GeneratorSpec::Vdc { .. } => Generator::Vdc,
            GeneratorSpec::Greedy { .. } => Generator::Greedy,
        }
    }

    pub fn generate(&self, n: usize, ctx: &PrecisionContext) -> Result<PointSet> {
        match self {
            GeneratorSpec::Kronecker(alpha) => kronecker(alpha, n, ctx),
            GeneratorSpec::Vdc { base } => van_der_corput(*base, n),
            GeneratorSpec::Greedy { tie } => greedy_packing(n, *tie),
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Kronecker(a) => write!(f, "kronecker({a})"),
            GeneratorSpec::Vdc { base } => write!(f, "vdc(base={base})"),
            GeneratorSpec::Greedy { tie } => write!(f, "greedy({tie})"),
        }
    }
}

/// The first `n` points of a sequence, in index order.
#[derive(Clone, Debug)]
pub struct PointSet {
    points: Vec<Real>,
    /// `None` when every point is rational; otherwise the precision of the
    /// enclosures used to certify floors and renderings.
    precision_bits: Option<u32>,
    generator: Generator,
    field: Option<Arc<AlphaField>>,
}

impl PointSet {
    /// An arbitrary rational point set, e.g. for oracle comparisons.
    pub fn from_rationals(generator: Generator, points: Vec<BigRational>) -> Self {
        PointSet {
            points: points.into_iter().map(Real::rational).collect(),
            precision_bits: None,
            generator,
            field: None,
        }
    }

    pub fn points(&self) -> &[Real] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn precision_bits(&self) -> Option<u32> {
        self.precision_bits
    }

    pub fn generator(&self) -> Generator {
        self.generator
    }

    pub fn field(&self) -> Option<&AlphaField> {
        self.field.as_deref()
    }

    pub fn field_arc(&self) -> Option<&Arc<AlphaField>> {
        self.field.as_ref()
    }

    /// The first `n` points as a new set sharing the field.
    pub fn prefix(&self, n: usize) -> PointSet {
        PointSet {
            points: self.points[..n.min(self.points.len())].to_vec(),
            precision_bits: self.precision_bits,
            generator: self.generator,
            field: self.field.clone(),
        }
    }

    /// True when every value is an exact rational.
    pub fn is_exact(&self) -> bool {
        self.precision_bits.is_none()
    }
}

fn require_positive(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    Ok(())
}

/// `x_i = i·α mod 1` for `i < n`.
pub fn kronecker(alpha: &AlphaSpec, n: usize, ctx: &PrecisionContext) -> Result<PointSet> {
    require_positive(n)?;
    let field = Arc::new(AlphaField::new(alpha, *ctx)?);
    kronecker_in(field, n)
}

/// As [`kronecker`], reusing an existing field.
pub fn kronecker_in(field: Arc<AlphaField>, n: usize) -> Result<PointSet> {
    require_positive(n)?;
    let mut points = Vec::with_capacity(n);
    if let Some(a) = field.exact_alpha0().cloned() {
        let mut x = BigRational::zero();
        for _ in 0..n {
            points.push(Real::rational(x.clone()));
            x += &a;
            if x >= BigRational::one() {
                x -= BigRational::one();
            }
        }
        return Ok(PointSet {
            points,
            precision_bits: None,
            generator: Generator::Kronecker,
            field: Some(field),
        });
    }
    // Enclose i·α₀ incrementally; a floor is certified when both ends agree.
    let bits = field.ctx().bits + usize::BITS - n.leading_zeros();
    let a = field.alpha0(bits)?;
    let (mut lo, mut hi) = (BigInt::zero(), BigInt::zero());
    for i in 0..n {
        let fl_lo: BigInt = &lo >> bits;
        let fl = if fl_lo == (&hi >> bits) {
            fl_lo
        } else {
            field.floor_multiple(&BigInt::from(i))?
        };
        points.push(Real::form(BigInt::from(i), -fl));
        lo += a.lo();
        hi += a.hi();
    }
    Ok(PointSet {
        points,
        precision_bits: Some(field.ctx().bits),
        generator: Generator::Kronecker,
        field: Some(field),
    })
}

/// Radical inverse of `i` in `base`, as `(numerator, base^digits)`.
pub fn radical_inverse(mut i: u64, base: u64) -> (BigInt, BigInt) {
    let (mut num, mut den) = (BigInt::zero(), BigInt::one());
    while i > 0 {
        num = num * base + i % base;
        den *= base;
        i /= base;
    }
    (num, den)
}

pub fn van_der_corput(base: u32, n: usize) -> Result<PointSet> {
    if base < 2 {
        return Err(Error::Domain(format!("van der Corput base must be ≥ 2, got {base}")));
    }
    require_positive(n)?;
    let points = (0..n as u64)
        .map(|i| {
            let (num, den) = radical_inverse(i, base as u64);
            Real::rational(BigRational::new(num, den))
        })
        .collect();
    Ok(PointSet {
        points,
        precision_bits: None,
        generator: Generator::Vdc,
        field: None,
    })
}

/// A placement candidate: its distance to the nearest placed point and
/// its location.
#[derive(PartialEq, Eq)]
struct Candidate {
    distance: BigRational,
    location: BigRational,
    /// Interval this candidate splits, `None` for the endpoints 0 and 1.
    split: Option<(BigRational, BigRational)>,
    tie: TieBreak,
}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        let by_location = match self.tie {
            TieBreak::Leftmost => other.location.cmp(&self.location),
            TieBreak::Rightmost => self.location.cmp(&other.location),
        };
        self.distance.cmp(&other.distance).then(by_location)
    }
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Farthest-point packing of `[0, 1]` started at `1/2`.
///
/// Each step places a point at maximal distance from those already placed.
/// Maximizers are midpoints of empty interior intervals (distance half the
/// gap) or the endpoints 0 and 1 (distance to the nearest point, unhalved).
pub fn greedy_packing(n: usize, tie: TieBreak) -> Result<PointSet> {
    require_positive(n)?;
    let half = BigRational::new(1.into(), 2.into());
    let mut points = vec![half.clone()];
    let mut heap = BinaryHeap::new();
    // Endpoint distances only shrink when an endpoint itself is placed: the
    // region between an endpoint and its nearest point has no interior
    // candidate until then.
    for end in [BigRational::zero(), BigRational::one()] {
        heap.push(Candidate {
            distance: half.clone(),
            location: end,
            split: None,
            tie,
        });
    }
    let mut lowest = half.clone();
    let mut highest = half;
    while points.len() < n {
        let c = heap.pop().expect("candidates never run out");
        let (a, b) = match c.split {
            Some(ab) => ab,
            None if c.location.is_zero() => (c.location.clone(), lowest.clone()),
            None => (highest.clone(), c.location.clone()),
        };
        if c.location < lowest {
            lowest = c.location.clone();
        }
        if c.location > highest {
            highest = c.location.clone();
        }
        for (l, r) in [(a, c.location.clone()), (c.location.clone(), b)] {
            if l < r {
                let distance = (&r - &l) / BigRational::from_integer(2.into());
                let location = (&l + &r) / BigRational::from_integer(2.into());
                heap.push(Candidate {
                    distance,
                    location,
                    split: Some((l, r)),
                    tie,
                });
            }
        }
        points.push(c.location);
    }
    Ok(PointSet {
        points: points.into_iter().map(Real::rational).collect(),
        precision_bits: None,
        generator: Generator::Greedy,
        field: None,
    })
}

/// Distance from `x` to the nearest of `placed`, exact.
pub fn nearest_distance(x: &BigRational, placed: &[BigRational]) -> Option<BigRational> {
    placed
        .iter()
        .map(|p| {
            let d = x - p;
            if d < BigRational::zero() {
                -d
            } else {
                d
            }
        })
        .min()
}
