//! CSV and JSON renderings of point sets, metrics and sweeps.
//!
//! Irrational values print as the nearest decimal to a tight enclosure;
//! bounds print as `[lo, hi]` pairs rounded outward.

use std::io::Write;

use serde_json::{json, Value};

use crate::decimal::{format_sig, Rounding};
use crate::error::{Error, Result};
use crate::field::{enclose_value, AlphaField, Real};
use crate::interval::Interval;
use crate::metrics::{BoundReport, MeshRatio, QUMetrics, SweepRow};
use crate::sequences::PointSet;

/// Grid precision that resolves `digits` significant decimal digits of a
/// value of size at least `2^-64`.
fn render_bits(digits: usize) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 96
}

pub fn render_real(field: Option<&AlphaField>, x: &Real, digits: usize) -> Result<String> {
    if let Some(v) = field.map_or_else(|| x.as_rational().cloned(), |f| f.exact_value(x)) {
        return Ok(format_sig(&v, digits, Rounding::Nearest));
    }
    let iv = enclose_value(field, x, render_bits(digits))?;
    Ok(format_sig(&iv.midpoint(), digits, Rounding::Nearest))
}

pub fn render_ratio(field: Option<&AlphaField>, rho: &MeshRatio, digits: usize) -> Result<String> {
    if rho.is_infinite() {
        return Ok("inf".into());
    }
    if let Some(v) = rho.exact(field) {
        return Ok(format_sig(&v, digits, Rounding::Nearest));
    }
    let iv = rho
        .enclose(field, render_bits(digits))?
        .expect("finite ratio");
    Ok(format_sig(&iv.midpoint(), digits, Rounding::Nearest))
}

fn pair(iv: &Interval, digits: usize) -> [String; 2] {
    let (lo, hi) = iv.to_decimal_bounds(digits);
    [lo, hi]
}

fn csv_error(e: csv::Error) -> Error {
    Error::Unsupported(format!("csv output failed: {e}"))
}

pub fn points_csv<W: Write>(ps: &PointSet, digits: usize, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["index", "value"]).map_err(csv_error)?;
    for (i, p) in ps.points().iter().enumerate() {
        w.write_record([i.to_string(), render_real(ps.field(), p, digits)?])
            .map_err(csv_error)?;
    }
    w.flush().map_err(|e| csv_error(e.into()))
}

pub fn points_json(ps: &PointSet, digits: usize) -> Result<Value> {
    let values = ps
        .points()
        .iter()
        .map(|p| render_real(ps.field(), p, digits))
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({
        "generator": ps.generator().to_string(),
        "n": ps.len(),
        "precision_bits": ps.precision_bits(),
        "exact": ps.is_exact(),
        "points": values,
    }))
}

pub fn bounds_json(b: &BoundReport, digits: usize) -> Value {
    json!({
        "m": b.m,
        "h": b.h,
        "k": b.k,
        "upper": pair(&b.upper, digits),
        "lower_at_nm": b.lower_at_nm.as_ref().map(|l| json!({
            "recip_alpha_m": pair(&l.recip_alpha, digits),
            "digit_form": format_sig(&l.digit_form, digits, Rounding::Nearest),
        })),
        "global_upper": b.global_upper.as_ref().map(|g| g.to_string()),
    })
}

pub fn metrics_json(
    field: Option<&AlphaField>,
    qm: &QUMetrics,
    bounds: Option<&BoundReport>,
    digits: usize,
) -> Result<Value> {
    let rho_interval = qm
        .mesh_ratio
        .enclose(field, render_bits(digits))?
        .map(|iv| pair(&iv, digits));
    Ok(json!({
        "n": qm.n,
        "h_n": render_real(field, &qm.fill, digits)?,
        "q_n": render_real(field, &qm.separation, digits)?,
        "rho_n": render_ratio(field, &qm.mesh_ratio, digits)?,
        "rho_n_interval": rho_interval,
        "provenance": "oracle-exact",
        "bounds": bounds.map(|b| bounds_json(b, digits)),
    }))
}

pub const SWEEP_COLUMNS: [&str; 9] = [
    "n",
    "h_n",
    "q_n",
    "rho_n",
    "upper_bound_lo",
    "upper_bound_hi",
    "lower_bound_lo",
    "lower_bound_hi",
    "global_upper",
];

fn sweep_record(field: Option<&AlphaField>, row: &SweepRow, digits: usize) -> Result<Vec<String>> {
    let qm = &row.metrics;
    let mut rec = vec![
        qm.n.to_string(),
        render_real(field, &qm.fill, digits)?,
        render_real(field, &qm.separation, digits)?,
        render_ratio(field, &qm.mesh_ratio, digits)?,
    ];
    let b = row.bounds.as_ref();
    rec.extend(match b {
        Some(b) => pair(&b.upper, digits).to_vec(),
        None => vec![String::new(); 2],
    });
    rec.extend(match b.and_then(|b| b.lower_at_nm.as_ref()) {
        Some(l) => pair(&l.recip_alpha, digits).to_vec(),
        None => vec![String::new(); 2],
    });
    rec.push(
        b.and_then(|b| b.global_upper.as_ref())
            .map(|g| g.to_string())
            .unwrap_or_default(),
    );
    Ok(rec)
}

pub fn sweep_csv<W: Write>(field: Option<&AlphaField>, rows: &[SweepRow], digits: usize, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_COLUMNS).map_err(csv_error)?;
    for row in rows {
        w.write_record(sweep_record(field, row, digits)?).map_err(csv_error)?;
    }
    w.flush().map_err(|e| csv_error(e.into()))
}

pub fn sweep_json(field: Option<&AlphaField>, rows: &[SweepRow], digits: usize) -> Result<Value> {
    let rows = rows
        .iter()
        .map(|r| metrics_json(field, &r.metrics, r.bounds.as_ref(), digits))
        .collect::<Result<Vec<_>>>()?;
    Ok(Value::Array(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alpha::AlphaSpec;
    use crate::contfrac::PrecisionContext;
    use crate::metrics::{mesh_ratio, sweep};
    use crate::sequences::{kronecker, van_der_corput, GeneratorSpec};

    #[test]
    fn point_csv_shape() {
        let ps = van_der_corput(2, 4).unwrap();
        let mut buf = Vec::new();
        points_csv(&ps, 40, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "index,value\n0,0\n1,0.5\n2,0.25\n3,0.75\n");
    }

    #[test]
    fn irrational_rendering() {
        let ps = kronecker(&AlphaSpec::golden(), 2, &PrecisionContext::default()).unwrap();
        let s = render_real(ps.field(), &ps.points()[1], 20).unwrap();
        assert_eq!(s, "0.6180339887498948482");
        let v = points_json(&ps, 10).unwrap();
        assert_eq!(v["points"][1], "0.6180339887");
        assert_eq!(v["precision_bits"], 128);
    }

    #[test]
    fn metrics_rendering() {
        let ps = kronecker(&AlphaSpec::golden(), 5, &PrecisionContext::default()).unwrap();
        let qm = mesh_ratio(&ps).unwrap();
        let v = metrics_json(ps.field(), &qm, None, 12).unwrap();
        assert_eq!(v["rho_n"], "2");
        let ps = kronecker(&AlphaSpec::rational(1, 3).unwrap(), 4, &PrecisionContext::default()).unwrap();
        let qm = mesh_ratio(&ps).unwrap();
        assert_eq!(render_ratio(ps.field(), &qm.mesh_ratio, 12).unwrap(), "inf");
    }

    #[test]
    fn sweep_csv_columns() {
        let spec = GeneratorSpec::Kronecker(AlphaSpec::golden());
        let rows = sweep(&spec, 2..=5, &PrecisionContext::default()).unwrap();
        let field = AlphaField::new(&AlphaSpec::golden(), PrecisionContext::default()).unwrap();
        let mut buf = Vec::new();
        sweep_csv(Some(&field), &rows, 10, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], SWEEP_COLUMNS.join(","));
        assert_eq!(lines.len(), 5);
        let last: Vec<&str> = lines[4].split(',').collect();
        assert_eq!(last[0], "5");
        assert_eq!(last[3], "2");
        assert_eq!(last[8], "4");
        assert!(!last[6].is_empty());
    }
}
