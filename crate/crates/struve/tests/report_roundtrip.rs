use proptest::prelude::*;
use struve::report::{emit_reports, parse_reports, Format, ReportRow};

fn any_f64() -> impl Strategy<Value = f64> {
    prop_oneof![
        any::<u64>().prop_map(f64::from_bits),
        Just(f64::INFINITY),
        Just(f64::NEG_INFINITY),
        Just(0.0),
        Just(-0.0),
        -1e3f64..1e3,
    ]
}

fn same(a: f64, b: f64) -> bool {
    (a.is_nan() && b.is_nan()) || a.to_bits() == b.to_bits()
}

fn row() -> impl Strategy<Value = ReportRow> {
    (
        "[a-z_]{1,12}",
        prop::collection::btree_map("[a-z]{1,3}", -1e6f64..1e6, 0..4),
        prop::array::uniform6(any_f64()),
        any::<bool>(),
    )
        .prop_map(|(identity, params, v, pass)| ReportRow {
            identity,
            params,
            lhs: v[0],
            lhs_err: v[1],
            rhs: v[2],
            rhs_err: v[3],
            abs_residual: v[4],
            rel_residual: v[5],
            pass,
        })
}

fn assert_same(a: &[ReportRow], b: &[ReportRow]) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(b) {
        prop_assert_eq!(&x.identity, &y.identity);
        prop_assert_eq!(x.pass, y.pass);
        prop_assert_eq!(x.params.len(), y.params.len());
        for ((k1, v1), (k2, v2)) in x.params.iter().zip(&y.params) {
            prop_assert_eq!(k1, k2);
            prop_assert!(same(*v1, *v2), "param {} {} vs {}", k1, v1, v2);
        }
        for (p, q) in [
            (x.lhs, y.lhs),
            (x.lhs_err, y.lhs_err),
            (x.rhs, y.rhs),
            (x.rhs_err, y.rhs_err),
            (x.abs_residual, y.abs_residual),
            (x.rel_residual, y.rel_residual),
        ] {
            prop_assert!(same(p, q), "{:e} ({:#x}) vs {:e} ({:#x})", p, p.to_bits(), q, q.to_bits());
        }
    }
    Ok(())
}

proptest! {
    #[test]
    fn json_round_trip_is_bit_exact(rows in prop::collection::vec(row(), 0..6)) {
        let bytes = emit_reports(&rows, Format::Json).unwrap();
        let back = parse_reports(&bytes, Format::Json).unwrap();
        assert_same(&rows, &back)?;
    }

    #[test]
    fn csv_round_trip_is_bit_exact(rows in prop::collection::vec(row(), 0..6)) {
        let bytes = emit_reports(&rows, Format::Csv).unwrap();
        let back = parse_reports(&bytes, Format::Csv).unwrap();
        assert_same(&rows, &back)?;
    }
}

#[test]
fn empty_list_is_an_empty_array() {
    let bytes = emit_reports(&[], Format::Json).unwrap();
    assert_eq!(String::from_utf8(bytes).unwrap().trim(), "[]");
}
