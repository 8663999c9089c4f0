mod common;

use common::golden;
use wbsdp::multiplicity::{variable_count, Count};

#[test]
fn gelfand_tsetlin_table() {
    for &(d, row) in golden::GT {
        for (offset, &want) in row.iter().enumerate() {
            let n = d + offset;
            assert_eq!(variable_count(n.div_ceil(2), n / 2, d, Count::GelfandTsetlin).unwrap(), want, "d={d} n={n}");
        }
    }
}

#[test]
fn dimension_table() {
    for &(d, row) in golden::DIMENSION {
        for (offset, &want) in row.iter().enumerate() {
            let n = d + offset;
            assert_eq!(variable_count(n.div_ceil(2), n / 2, d, Count::Dimension).unwrap(), want, "d={d} n={n}");
        }
    }
}

#[test]
fn full_symmetry_table() {
    for &(d, start, row) in golden::FULL {
        for (offset, &want) in row.iter().enumerate() {
            let (p, q) = golden::FULL_COLUMNS[start + offset];
            assert_eq!(variable_count(p, q, d, Count::FullBrauer).unwrap(), want, "d={d} ({p},{q})");
        }
    }
}

#[test]
fn spsq_table() {
    for &((p, q), row) in golden::SPSQ {
        for (offset, &want) in row.iter().enumerate() {
            let d = 2 + offset;
            assert_eq!(variable_count(p, q, d, Count::SpSq).unwrap(), want, "({p},{q}) d={d}");
        }
    }
}
