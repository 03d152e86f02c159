//! Structural invariants checked on random inputs.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use kronecker_core::threegap::recompose;
use kronecker_core::{
    decompose, expand, gap_structure, kronecker, lengths_check, mesh_ratio, sweep, AlphaField,
    AlphaSpec, Generator, GeneratorSpec, PointSet, PrecisionContext,
};

fn periodic() -> impl Strategy<Value = AlphaSpec> {
    (
        proptest::collection::vec(1i64..=9, 0..3),
        proptest::collection::vec(1i64..=9, 1..4),
    )
        .prop_map(|(pre, period)| {
            let pre: Vec<i64> = std::iter::once(0).chain(pre).collect();
            AlphaSpec::explicit_cf(pre, period).unwrap()
        })
}

fn ctx() -> PrecisionContext {
    PrecisionContext::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gaps_partition_the_circle(alpha in periodic(), n in 1u64..5000) {
        let mut exp = expand(&alpha, 40).unwrap();
        exp.extend_past(&BigInt::from(n));
        let gs = gap_structure(&exp, n).unwrap();
        let total: u64 = gs.entries.iter().map(|e| e.multiplicity).sum();
        prop_assert_eq!(total, n);
        prop_assert!(lengths_check(&gs).all_passed());
    }

    #[test]
    fn decomposition_recomposes(alpha in periodic(), n in 1u64..100_000) {
        let mut exp = expand(&alpha, 40).unwrap();
        exp.extend_past(&BigInt::from(n));
        let d = decompose(&exp, n).unwrap();
        prop_assert_eq!(recompose(&exp, &d), BigInt::from(n));
        prop_assert!(BigInt::from(d.k) < exp.s()[d.m]);
        prop_assert!(&BigInt::from(d.h) < exp.digit(d.m + 1).unwrap());
    }

    #[test]
    fn ratio_at_least_one_and_below_upper(alpha in periodic(), n in 2usize..600) {
        let spec = GeneratorSpec::Kronecker(alpha.clone());
        let field = AlphaField::new(&alpha, ctx()).unwrap();
        let rows = sweep(&spec, n..=n, &ctx()).unwrap();
        let row = &rows[0];
        let one = BigRational::from_integer(1.into());
        prop_assert_ne!(row.metrics.mesh_ratio.cmp_rational(Some(&field), &one).unwrap(), Ordering::Less);
        let rho = row.metrics.mesh_ratio.enclose(Some(&field), 128).unwrap().unwrap();
        prop_assert!(rho.lower() <= row.bounds.as_ref().unwrap().upper.upper());
    }

    #[test]
    fn metrics_ignore_point_order(
        pts in proptest::collection::vec((0i64..997, 1i64..997), 2..60),
        seed in any::<u64>(),
    ) {
        let values: Vec<BigRational> = pts
            .iter()
            .map(|&(p, q)| BigRational::new(BigInt::from(p % q), BigInt::from(q)))
            .collect();
        let mut shuffled = values.clone();
        let len = shuffled.len();
        shuffled.rotate_left((seed as usize) % len);
        shuffled.reverse();
        let a = mesh_ratio(&PointSet::from_rationals(Generator::Vdc, values)).unwrap();
        let b = mesh_ratio(&PointSet::from_rationals(Generator::Vdc, shuffled)).unwrap();
        prop_assert_eq!(a.fill, b.fill);
        prop_assert_eq!(a.separation, b.separation);
    }

    #[test]
    fn prefix_metrics_are_monotone(alpha in periodic(), n in 3usize..400) {
        let spec = GeneratorSpec::Kronecker(alpha.clone());
        let field = AlphaField::new(&alpha, ctx()).unwrap();
        let rows = sweep(&spec, n - 1..=n, &ctx()).unwrap();
        let (a, b) = (&rows[0].metrics, &rows[1].metrics);
        prop_assert_ne!(field.cmp(&b.fill, &a.fill).unwrap(), Ordering::Greater);
        prop_assert_ne!(field.cmp(&b.separation, &a.separation).unwrap(), Ordering::Greater);
    }

    #[test]
    fn enclosures_nest_across_precisions(alpha in periodic(), i in 1usize..2000) {
        let ps = kronecker(&alpha, i + 1, &ctx()).unwrap();
        let field = ps.field().unwrap();
        let x = &ps.points()[i];
        let coarse = field.enclose(x, 64).unwrap();
        let fine = field.enclose(x, 256).unwrap();
        prop_assert!(coarse.lower() <= fine.lower() && fine.upper() <= coarse.upper());
        prop_assert!(coarse.lower() >= BigRational::from_integer(0.into()));
        prop_assert!(fine.upper() <= BigRational::from_integer(1.into()));
    }
}
