use std::collections::BTreeMap;

use wbsdp::lattice::{Bipartition, BratteliGraph, Family};
use wbsdp::multiplicity::{
    full_brauer_csv, king_modify, restriction_multiplicity, restriction_table, spsq_csv, total_degree_csv,
    variable_count, Count,
};

fn shapes(max_n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=max_n).flat_map(|n| (0..=n).map(move |p| (p, n - p)))
}

#[test]
fn multiplicities_are_at_most_one_in_the_reducible_cases() {
    for (p, q) in shapes(7) {
        for d in 2..=7 {
            if p.min(q) > 2 && d != 2 {
                continue;
            }
            for (key, m) in restriction_table(p, q, d).unwrap() {
                assert_eq!(m, 1, "({p},{q},{d}) {:?}", key);
            }
        }
    }
}

#[test]
fn larger_multiplicities_occur() {
    let table = restriction_table(3, 3, 6).unwrap();
    assert!(table.values().any(|&m| m > 1));
}

#[test]
fn dimension_bookkeeping() {
    for (p, q) in shapes(6) {
        for d in [2, 3, 4, 6] {
            let mut from_restriction: BTreeMap<Bipartition, u128> = BTreeMap::new();
            for ((leaf, mu, nu), m) in restriction_table(p, q, d).unwrap() {
                *from_restriction.entry(leaf).or_default() += m as u128 * mu.hook_dimension() * nu.hook_dimension();
            }
            let graph = BratteliGraph::build(p, q, Family::Truncated { d: d as u32 }).unwrap();
            let from_paths: BTreeMap<Bipartition, u128> = graph.leaf_dimensions().into_iter().collect();
            assert_eq!(from_restriction, from_paths, "({p},{q},{d})");
        }
    }
}

#[test]
fn single_multiplicity_lookup() {
    let leaf = "((1),(1))".parse::<Bipartition>().unwrap();
    let mu = "(2)".parse().unwrap();
    let nu = "(2)".parse().unwrap();
    assert_eq!(restriction_multiplicity(&leaf, &mu, &nu, 4).unwrap(), 1);
    let nu = "(1,1)".parse().unwrap();
    assert_eq!(restriction_multiplicity(&leaf, &mu, &nu, 4).unwrap(), 1);
    let top = "((2),(2))".parse::<Bipartition>().unwrap();
    assert_eq!(restriction_multiplicity(&top, &mu, &nu, 4).unwrap(), 0);
}

#[test]
fn modification_keeps_admissible_labels() {
    for d in 2..=5 {
        for (p, q) in shapes(5) {
            let graph = BratteliGraph::build(p, q, Family::Truncated { d: d as u32 }).unwrap();
            for leaf in graph.leaves() {
                let r = king_modify(leaf, d).unwrap();
                assert_eq!((r.g, r.f.as_ref()), (1, Some(leaf)));
            }
        }
    }
}

#[test]
fn spsq_examples() {
    for d in 4..=7 {
        assert_eq!(variable_count(2, 2, d, Count::SpSq).unwrap(), 10);
    }
    assert_eq!(variable_count(3, 1, 2, Count::SpSq).unwrap(), 4);
    assert_eq!(variable_count(3, 1, 4, Count::SpSq).unwrap(), 7);
    assert_eq!(variable_count(1, 3, 4, Count::SpSq).unwrap(), 7);
}

#[test]
fn csv_layouts() {
    let gt = total_degree_csv(Count::GelfandTsetlin, 6).unwrap();
    let lines: Vec<&str> = gt.lines().collect();
    assert_eq!(lines[0], "d,2,3,4,5,6");
    assert_eq!(lines.len(), 6);
    assert!(lines[1].starts_with("2,"));

    let full = full_brauer_csv(4).unwrap();
    assert!(full.lines().next().unwrap().starts_with("d,\"(1,1)\""));

    let spsq = spsq_csv(5).unwrap();
    let lines: Vec<&str> = spsq.lines().collect();
    assert_eq!(lines[0], "p,q,2,3,4,5");
    for line in &lines[1..] {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells.len(), 6, "{line}");
        let n: usize = cells[0].parse::<usize>().unwrap() + cells[1].parse::<usize>().unwrap();
        for (k, cell) in cells[2..].iter().enumerate() {
            assert_eq!(cell.is_empty(), 2 + k > n, "{line}");
        }
    }
}
