//! Fill distance, separation radius and mesh ratio of point prefixes, and the
//! closed-form bounds on the mesh ratio of Kronecker prefixes.
//!
//! On the domain `[0, 1]`:
//!
//! * `h_n = max(x_(0), 1 − x_(n−1), max_i (x_(i+1) − x_(i)) / 2)`
//! * `q_n = min_i (x_(i+1) − x_(i)) / 2`
//! * `ρ_n = h_n / q_n`, infinite when two points coincide.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::ops::RangeInclusive;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::contfrac::{alpha_tail_best, digit_supremum, CfExpansion, Certainty, PrecisionContext};
use crate::error::{Error, Result};
use crate::field::{cmp_values, enclose_value, AlphaField, Real};
use crate::interval::Interval;
use crate::scan;
use crate::sequences::{kronecker_in, GeneratorSpec, PointSet};
use crate::threegap::decompose;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Computed from the points themselves.
    OracleExact,
    /// Derived from closed-form bounds.
    FormulaBound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MeshRatio {
    Finite { fill: Real, separation: Real },
    Infinite,
}

impl MeshRatio {
    fn new(fill: Real, separation: Real) -> Self {
        if separation.is_zero() {
            MeshRatio::Infinite
        } else {
            MeshRatio::Finite { fill, separation }
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, MeshRatio::Infinite)
    }

    /// The exact ratio, when it is rational: both terms rational, or the two
    /// forms proportional.
    pub fn exact(&self, field: Option<&AlphaField>) -> Option<BigRational> {
        let MeshRatio::Finite { fill, separation } = self else {
            return None;
        };
        let value = |x: &Real| match field {
            Some(f) => f.exact_value(x),
            None => x.as_rational().cloned(),
        };
        if let (Some(h), Some(q)) = (value(fill), value(separation)) {
            return Some(h / q);
        }
        let (ha, hc) = (fill.alpha_coeff(), fill.constant());
        let (qa, qc) = (separation.alpha_coeff(), separation.constant());
        if ha * qc != hc * qa {
            return None;
        }
        Some(if qa.is_zero() { hc / qc } else { ha / qa })
    }

    /// Enclosure of `h_n / q_n`; `None` when infinite.
    pub fn enclose(&self, field: Option<&AlphaField>, bits: u32) -> Result<Option<Interval>> {
        let MeshRatio::Finite { fill, separation } = self else {
            return Ok(None);
        };
        if let Some(r) = self.exact(field) {
            return Ok(Some(Interval::from_rational(&r, bits)));
        }
        let mut b = bits;
        loop {
            let num = enclose_value(field, fill, b + 8)?;
            let den = enclose_value(field, separation, b + 8)?;
            if let Some(r) = num.div(&den) {
                return Ok(Some(r.rescale(bits)));
            }
            let max = field.map_or(b, |f| f.ctx().max_bits);
            if b >= max {
                return Err(Error::PrecisionUnresolved { bits: b });
            }
            b = (b * 2).min(max);
        }
    }

    /// Exact comparison of `ρ_n` with a rational constant.
    pub fn cmp_rational(&self, field: Option<&AlphaField>, c: &BigRational) -> Result<Ordering> {
        match self {
            MeshRatio::Infinite => Ok(Ordering::Greater),
            MeshRatio::Finite { fill, separation } => cmp_values(field, fill, &separation.scale(c)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QUMetrics {
    pub n: usize,
    pub fill: Real,
    pub separation: Real,
    pub mesh_ratio: MeshRatio,
    pub provenance: Provenance,
}

impl QUMetrics {
    pub(crate) fn from_parts(n: usize, fill: Real, separation: Real) -> Self {
        QUMetrics {
            n,
            mesh_ratio: MeshRatio::new(fill.clone(), separation.clone()),
            fill,
            separation,
            provenance: Provenance::OracleExact,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortedGaps {
    /// Point indices in ascending order of value; ties keep index order.
    pub order: Vec<usize>,
    pub sorted: Vec<Real>,
    /// `n − 1` adjacent differences.
    pub gaps: Vec<Real>,
    /// `x_(0) − 0`.
    pub left: Real,
    /// `1 − x_(n−1)`.
    pub right: Real,
}

/// Stable index order of the points by value.
pub fn sort_order(ps: &PointSet) -> Result<Vec<usize>> {
    let pts = ps.points();
    let mut order: Vec<usize> = (0..pts.len()).collect();
    if ps.is_exact() {
        let vals: Vec<&BigRational> = pts
            .iter()
            .map(|p| p.as_rational().expect("exact point set"))
            .collect();
        order.sort_by(|&a, &b| vals[a].cmp(vals[b]));
        return Ok(order);
    }
    let field = ps
        .field()
        .ok_or_else(|| Error::Domain("irrational points without an alpha field".into()))?;
    let bits = field.ctx().bits;
    let encl = pts
        .iter()
        .map(|p| field.enclose(p, bits))
        .collect::<Result<Vec<_>>>()?;
    let mut failure = None;
    order.sort_by(|&a, &b| {
        if encl[a].certainly_lt(&encl[b]) {
            Ordering::Less
        } else if encl[b].certainly_lt(&encl[a]) {
            Ordering::Greater
        } else {
            field.cmp(&pts[a], &pts[b]).unwrap_or_else(|e| {
                failure.get_or_insert(e);
                Ordering::Equal
            })
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(order),
    }
}

pub fn sorted_gaps(ps: &PointSet) -> Result<SortedGaps> {
    if ps.is_empty() {
        return Err(Error::Domain("empty point set".into()));
    }
    let order = sort_order(ps)?;
    let sorted: Vec<Real> = order.iter().map(|&i| ps.points()[i].clone()).collect();
    let gaps = sorted.windows(2).map(|w| w[1].sub(&w[0])).collect();
    let left = sorted[0].clone();
    let right = Real::integer(1).sub(sorted.last().expect("nonempty"));
    Ok(SortedGaps {
        order,
        sorted,
        gaps,
        left,
        right,
    })
}

fn extreme<'a>(
    field: Option<&AlphaField>,
    items: impl IntoIterator<Item = &'a Real>,
    want: Ordering,
) -> Result<Option<&'a Real>> {
    let mut best: Option<&Real> = None;
    for x in items {
        best = match best {
            Some(b) if cmp_values(field, x, b)? != want => Some(b),
            _ => Some(x),
        };
    }
    Ok(best)
}

fn fill_of(field: Option<&AlphaField>, left: &Real, right: &Real, max_gap: Option<&Real>) -> Result<Real> {
    let half = max_gap.map(Real::half);
    let candidates = [Some(left), Some(right), half.as_ref()];
    Ok(extreme(field, candidates.into_iter().flatten(), Ordering::Greater)?
        .expect("boundaries always present")
        .clone())
}

pub fn fill_distance(ps: &PointSet) -> Result<Real> {
    let sg = sorted_gaps(ps)?;
    let field = ps.field();
    let max_gap = extreme(field, &sg.gaps, Ordering::Greater)?;
    fill_of(field, &sg.left, &sg.right, max_gap)
}

pub fn separation_radius(ps: &PointSet) -> Result<Real> {
    if ps.len() < 2 {
        return Err(Error::Domain("separation radius needs at least two points".into()));
    }
    let sg = sorted_gaps(ps)?;
    Ok(extreme(ps.field(), &sg.gaps, Ordering::Less)?
        .expect("n ≥ 2")
        .half())
}

pub fn mesh_ratio(ps: &PointSet) -> Result<QUMetrics> {
    if ps.len() < 2 {
        return Err(Error::Domain("mesh ratio needs at least two points".into()));
    }
    let sg = sorted_gaps(ps)?;
    let field = ps.field();
    let max_gap = extreme(field, &sg.gaps, Ordering::Greater)?;
    let min_gap = extreme(field, &sg.gaps, Ordering::Less)?.expect("n ≥ 2");
    let fill = fill_of(field, &sg.left, &sg.right, max_gap)?;
    Ok(QUMetrics::from_parts(ps.len(), fill, min_gap.half()))
}

/// Lower bound on `ρ_{n_m}`: the enclosure of `1/α_m` and the digit
/// expression `a_{m+1} + 1/a_{m+2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBound {
    pub recip_alpha: Interval,
    pub digit_form: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub n: u64,
    pub m: usize,
    pub h: u64,
    pub k: u64,
    /// `2(1 − h·α_m) / min(α_m, 1 − (h+1)·α_m)`.
    pub upper: Interval,
    /// Present when `n = n_m` with `m ≥ 3`.
    pub lower_at_nm: Option<LowerBound>,
    /// `2 + 2·sup a_j`, when the supremum is exact.
    pub global_upper: Option<BigInt>,
}

/// Bound evaluation with the expansion and tail enclosures cached across `n`.
pub struct BoundCalculator {
    exp: CfExpansion,
    ctx: PrecisionContext,
    tails: HashMap<usize, Interval>,
    global_upper: Option<BigInt>,
}

impl BoundCalculator {
    pub fn new(exp: &CfExpansion, ctx: PrecisionContext) -> Result<Self> {
        if exp.is_finite() {
            return Err(Error::Unsupported(
                "mesh-ratio bounds require irrational alpha".into(),
            ));
        }
        let sup = digit_supremum(exp, exp.depth());
        let global_upper =
            (sup.certainty == Certainty::Exact).then(|| BigInt::from(2) + BigInt::from(2) * sup.value);
        Ok(BoundCalculator {
            exp: exp.clone(),
            ctx,
            tails: HashMap::new(),
            global_upper,
        })
    }

    fn tail(&mut self, m: usize) -> Result<Interval> {
        if let Some(t) = self.tails.get(&m) {
            return Ok(t.clone());
        }
        let t = alpha_tail_best(&self.exp, m, &self.ctx)?;
        self.tails.insert(m, t.clone());
        Ok(t)
    }

    fn digit(&self, j: usize) -> Result<BigInt> {
        self.exp.digit(j).cloned().ok_or(Error::InsufficientDigits {
            needed: j,
            available: self.exp.depth(),
        })
    }

    pub fn bounds(&mut self, n: u64) -> Result<BoundReport> {
        self.exp.extend_past(&BigInt::from(n));
        let d = decompose(&self.exp, n)?;
        self.exp.extend_to(d.m + 2);
        let a = self.tail(d.m)?;
        let bits = a.bits();
        let one = Interval::from_int(&BigInt::one(), bits);
        let h = BigInt::from(d.h);
        let num = one.sub(&a.mul_int(&h)).mul_int(&BigInt::from(2));
        let den = a.min(&one.sub(&a.mul_int(&(h + 1))));
        let upper = num
            .div(&den)
            .ok_or(Error::PrecisionUnresolved { bits })?
            .rescale(self.ctx.bits);
        let lower_at_nm = if d.h == 0 && d.k == 0 && d.m >= 3 {
            let a1 = self.digit(d.m + 1)?;
            let a2 = self.digit(d.m + 2)?;
            Some(LowerBound {
                recip_alpha: a.recip().ok_or(Error::PrecisionUnresolved { bits })?.rescale(self.ctx.bits),
                digit_form: BigRational::from_integer(a1) + BigRational::new(BigInt::one(), a2),
            })
        } else {
            None
        };
        Ok(BoundReport {
            n,
            m: d.m,
            h: d.h,
            k: d.k,
            upper,
            lower_at_nm,
            global_upper: self.global_upper.clone(),
        })
    }
}

pub fn kronecker_bounds(exp: &CfExpansion, n: u64, ctx: &PrecisionContext) -> Result<BoundReport> {
    BoundCalculator::new(exp, *ctx)?.bounds(n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub metrics: QUMetrics,
    pub bounds: Option<BoundReport>,
}

/// Prefix metrics maintained under point insertion in index order.
///
/// Points are ranked once by a global sort; each insertion splits one gap,
/// so the gap multiset changes by one removal and two additions.
pub struct Incremental<'a> {
    points: &'a [Real],
    field: Option<&'a AlphaField>,
    rank: Vec<u32>,
    by_rank: Vec<usize>,
    present: BTreeSet<u32>,
    gaps: HashMap<Real, usize>,
}

impl<'a> Incremental<'a> {
    pub fn new(ps: &'a PointSet) -> Result<Self> {
        let by_rank = sort_order(ps)?;
        let mut rank = vec![0u32; by_rank.len()];
        for (r, &i) in by_rank.iter().enumerate() {
            rank[i] = r as u32;
        }
        Ok(Incremental {
            points: ps.points(),
            field: ps.field(),
            rank,
            by_rank,
            present: BTreeSet::new(),
            gaps: HashMap::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.present.len()
    }

    pub fn is_empty(&self) -> bool {
        self.present.is_empty()
    }

    fn value(&self, r: u32) -> &Real {
        &self.points[self.by_rank[r as usize]]
    }

    fn gap(&self, lo: u32, hi: u32) -> Real {
        self.value(hi).sub(self.value(lo))
    }

    fn add_gap(&mut self, g: Real) {
        *self.gaps.entry(g).or_insert(0) += 1;
    }

    fn remove_gap(&mut self, g: &Real) {
        let c = self.gaps.get_mut(g).expect("gap present in bag");
        *c -= 1;
        if *c == 0 {
            self.gaps.remove(g);
        }
    }

    /// Insert the next point in index order.
    pub fn push(&mut self) {
        let r = self.rank[self.present.len()];
        let pred = self.present.range(..r).next_back().copied();
        let succ = self.present.range(r..).next().copied();
        if let (Some(p), Some(s)) = (pred, succ) {
            let g = self.gap(p, s);
            self.remove_gap(&g);
        }
        if let Some(p) = pred {
            let g = self.gap(p, r);
            self.add_gap(g);
        }
        if let Some(s) = succ {
            let g = self.gap(r, s);
            self.add_gap(g);
        }
        self.present.insert(r);
    }

    /// Metrics of the current prefix; needs at least two points.
    pub fn metrics(&self) -> Result<QUMetrics> {
        let n = self.present.len();
        if n < 2 {
            return Err(Error::Domain("mesh ratio needs at least two points".into()));
        }
        let first = *self.present.first().expect("nonempty");
        let last = *self.present.last().expect("nonempty");
        let left = self.value(first).clone();
        let right = Real::integer(1).sub(self.value(last));
        let max_gap = extreme(self.field, self.gaps.keys(), Ordering::Greater)?;
        let min_gap = extreme(self.field, self.gaps.keys(), Ordering::Less)?.expect("n ≥ 2");
        let fill = fill_of(self.field, &left, &right, max_gap)?;
        Ok(QUMetrics::from_parts(n, fill, min_gap.half()))
    }
}

/// Beyond this size, sparse Kronecker sweeps use the fixed-point scan rather
/// than materialising every prefix point.
const SCAN_THRESHOLD: usize = 1 << 20;

/// Metrics for every `n` in `range`.
pub fn sweep(spec: &GeneratorSpec, range: RangeInclusive<usize>, ctx: &PrecisionContext) -> Result<Vec<SweepRow>> {
    let ns: Vec<usize> = range.collect();
    sweep_at(spec, &ns, ctx)
}

/// Metrics at each listed `n`; `ns` must be strictly increasing and ≥ 2.
pub fn sweep_at(spec: &GeneratorSpec, ns: &[usize], ctx: &PrecisionContext) -> Result<Vec<SweepRow>> {
    let Some(&n_max) = ns.last() else {
        return Err(Error::Domain("empty n range".into()));
    };
    if ns[0] < 2 || ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("n values must be increasing and at least 2".into()));
    }
    let field = match spec {
        GeneratorSpec::Kronecker(alpha) => Some(Arc::new(AlphaField::new(alpha, *ctx)?)),
        _ => None,
    };
    let mut bounds = match &field {
        Some(f) if !f.is_rational() => Some(BoundCalculator::new(f.expansion(), *ctx)?),
        _ => None,
    };
    let mut bound_at = |n: usize| bounds.as_mut().map(|b| b.bounds(n as u64)).transpose();

    if let Some(f) = field.as_ref().filter(|f| !f.is_rational()) {
        if n_max > SCAN_THRESHOLD && ns.len() <= 256 {
            return ns
                .iter()
                .map(|&n| {
                    Ok(SweepRow {
                        metrics: scan::kronecker_scan(f, n as u64, scan::DEFAULT_CHUNK_LOG2)?,
                        bounds: bound_at(n)?,
                    })
                })
                .collect();
        }
    }
    let ps = match &field {
        Some(f) => kronecker_in(f.clone(), n_max)?,
        None => spec.generate(n_max, ctx)?,
    };
    let mut inc = Incremental::new(&ps)?;
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        while inc.len() < n {
            inc.push();
        }
        rows.push(SweepRow {
            metrics: inc.metrics()?,
            bounds: bound_at(n)?,
        });
    }
    Ok(rows)
}
