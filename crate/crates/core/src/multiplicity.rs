//! Littlewood–Richardson coefficients, the modification rule for mixed
//! tensor labels, restriction multiplicities to `S_p × S_q`, and the
//! variable counts of the LP produced under each symmetry.

use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{Bipartition, BratteliGraph, Family, Partition};

/// Outcome of the modification rule: a sign and the relabelled leaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModificationResult {
    pub g: i8,
    pub f: Option<Bipartition>,
}

type LrKey = (Partition, Partition, Partition);

fn lr_cache() -> &'static RwLock<HashMap<LrKey, u64>> {
    static CACHE: OnceLock<RwLock<HashMap<LrKey, u64>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `c^μ_{γ,λ}`: fillings of the skew shape `μ/λ` with content `γ` that are
/// semistandard and whose reverse reading word is a lattice word.
pub fn lr_coefficient(mu: &Partition, gamma: &Partition, lam: &Partition) -> u64 {
    if mu.size() != gamma.size() + lam.size() || !lam.is_contained_in(mu) {
        return 0;
    }
    if gamma.is_empty() {
        return 1;
    }
    let key = (mu.clone(), gamma.clone(), lam.clone());
    if let Some(&v) = lr_cache().read().expect("lr cache poisoned").get(&key) {
        return v;
    }
    let v = lr_enumerate(mu, gamma, lam);
    lr_cache().write().expect("lr cache poisoned").insert(key, v);
    v
}

fn lr_enumerate(mu: &Partition, gamma: &Partition, lam: &Partition) -> u64 {
    // Cells read row by row, each row right to left.
    let cells: Vec<(usize, usize)> = (0..mu.len())
        .flat_map(|i| (lam.row(i)..mu.row(i)).rev().map(move |j| (i, j)))
        .collect();
    let width = mu.row(0);
    let mut fill = vec![vec![usize::MAX; width]; mu.len()];
    let mut count = vec![0usize; gamma.len()];

    fn rec(
        idx: usize,
        cells: &[(usize, usize)],
        gamma: &Partition,
        lam: &Partition,
        fill: &mut Vec<Vec<usize>>,
        count: &mut Vec<usize>,
    ) -> u64 {
        if idx == cells.len() {
            return 1;
        }
        let (i, j) = cells[idx];
        let mut total = 0;
        for v in 0..gamma.len() {
            if count[v] >= gamma.row(v) || (v > 0 && count[v] + 1 > count[v - 1]) {
                continue;
            }
            if j + 1 < fill[i].len() && fill[i][j + 1] != usize::MAX && fill[i][j + 1] < v {
                continue;
            }
            if i > 0 && j >= lam.row(i - 1) && fill[i - 1][j] >= v {
                continue;
            }
            fill[i][j] = v;
            count[v] += 1;
            total += rec(idx + 1, cells, gamma, lam, fill, count);
            fill[i][j] = usize::MAX;
            count[v] -= 1;
        }
        total
    }

    rec(0, &cells, gamma, lam, &mut fill, &mut count)
}

/// Partitions of `n` with at most `max_len` rows.
pub fn partitions_bounded(n: usize, max_len: usize) -> Vec<Partition> {
    Partition::all_of_size(n).into_iter().filter(|p| p.len() <= max_len).collect()
}

/// Sign of the permutation sorting `seq` into decreasing order.
fn sort_sign(seq: &[i64]) -> i8 {
    let mut inv = 0usize;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[a] < seq[b] {
                inv += 1;
            }
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Conjugate of the partition whose columns are given by `cols`.
fn from_columns(cols: &[i64]) -> Result<Partition> {
    if cols.iter().any(|&c| c < 0) {
        return Err(Error::Invalid(format!("negative column length in {cols:?}")));
    }
    let rows: Vec<usize> = cols.iter().filter(|&&c| c > 0).map(|&c| c as usize).collect();
    Ok(Partition::new(rows)?.conjugate())
}

/// Modification rule sending a pair of diagrams with at most `d` rows each
/// to a leaf of the truncated family, with a sign in `{−1, 0, 1}`.
pub fn king_modify(tilde: &Bipartition, d: usize) -> Result<ModificationResult> {
    let (l, r) = (&tilde.left, &tilde.right);
    if l.len() > d || r.len() > d {
        return Err(Error::Invalid(format!("{tilde} has a component longer than {d}")));
    }
    if tilde.fits(d) {
        return Ok(ModificationResult { g: 1, f: Some(tilde.clone()) });
    }
    let (lc, rc) = (l.conjugate(), r.conjugate());
    let r1 = r.row(0);
    let l1 = l.row(0);
    let d = d as i64;
    let a: Vec<i64> = (1..=r1)
        .rev()
        .map(|i| d - rc.row(i - 1) as i64 - r1 as i64 + i as i64)
        .collect();
    let b: Vec<i64> = (1..=l1)
        .map(|j| lc.row(j - 1) as i64 - r1 as i64 - j as i64 + 1)
        .collect();
    if a.iter().any(|x| b.contains(x)) {
        return Ok(ModificationResult { g: 0, f: None });
    }
    let seq: Vec<i64> = a.iter().chain(&b).copied().collect();
    let g = sort_sign(&seq);
    let mut k = seq;
    k.sort_unstable_by(|x, y| y.cmp(x));
    if k.windows(2).any(|w| w[0] == w[1]) {
        return Ok(ModificationResult { g: 0, f: None });
    }
    let right_cols: Vec<i64> = (1..=r1)
        .rev()
        .map(|i| d - k[i - 1] - i as i64 + 1)
        .collect();
    let left_cols: Vec<i64> = (1..=l1)
        .map(|j| k[r1 + j - 1] + r1 as i64 + j as i64 - 1)
        .collect();
    let f = Bipartition::new(from_columns(&left_cols)?, from_columns(&right_cols)?);
    Ok(ModificationResult { g, f: Some(f) })
}

/// `m^λ_{μν}(d)` for every leaf `λ` of the truncated family and every
/// `μ ⊢ p`, `ν ⊢ q` with at most `d` rows; zero entries are omitted.
pub fn restriction_table(
    p: usize,
    q: usize,
    d: usize,
) -> Result<BTreeMap<(Bipartition, Partition, Partition), u64>> {
    let mus = partitions_bounded(p, d);
    let nus = partitions_bounded(q, d);
    let mut acc: BTreeMap<(Bipartition, Partition, Partition), i64> = BTreeMap::new();
    for k in 0..=p.min(q) {
        let gammas = Partition::all_of_size(k);
        for l in partitions_bounded(p - k, d) {
            for r in partitions_bounded(q - k, d) {
                let tilde = Bipartition::new(l.clone(), r.clone());
                let ModificationResult { g, f } = king_modify(&tilde, d)?;
                let Some(f) = f else { continue };
                for gamma in &gammas {
                    for mu in &mus {
                        let c1 = lr_coefficient(mu, gamma, &l);
                        if c1 == 0 {
                            continue;
                        }
                        for nu in &nus {
                            let c2 = lr_coefficient(nu, gamma, &r);
                            if c2 == 0 {
                                continue;
                            }
                            *acc.entry((f.clone(), mu.clone(), nu.clone())).or_insert(0) +=
                                g as i64 * (c1 * c2) as i64;
                        }
                    }
                }
            }
        }
    }
    let mut out = BTreeMap::new();
    for (key, m) in acc {
        if m < 0 {
            return Err(Error::Invalid(format!(
                "negative multiplicity {m} for {} in {} x {}",
                key.0, key.1, key.2
            )));
        }
        if m > 0 {
            out.insert(key, m as u64);
        }
    }
    Ok(out)
}

/// Single multiplicity `m^λ_{μν}(d)`.
pub fn restriction_multiplicity(
    lam: &Bipartition,
    mu: &Partition,
    nu: &Partition,
    d: usize,
) -> Result<u64> {
    let table = restriction_table(mu.size(), nu.size(), d)?;
    Ok(table
        .get(&(lam.clone(), mu.clone(), nu.clone()))
        .copied()
        .unwrap_or(0))
}

/// The four variable counts tabulated for the LP reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Count {
    /// Number of irreducibles of the image algebra.
    FullBrauer,
    /// Sum of the irreducible dimensions.
    GelfandTsetlin,
    /// Sum of squared `S_p × S_q` multiplicities.
    SpSq,
    /// Dimension of the image algebra.
    Dimension,
}

pub fn variable_count(p: usize, q: usize, d: usize, count: Count) -> Result<u128> {
    match count {
        Count::SpSq => Ok(restriction_table(p, q, d)?
            .values()
            .map(|&m| (m as u128) * (m as u128))
            .sum()),
        _ => {
            let g = BratteliGraph::build(p, q, Family::Truncated { d: d as u32 })?;
            let dims = g.leaf_dimensions();
            Ok(match count {
                Count::FullBrauer => dims.len() as u128,
                Count::GelfandTsetlin => dims.iter().map(|(_, x)| x).sum(),
                _ => dims.iter().map(|(_, x)| x * x).sum(),
            })
        }
    }
}

/// Rows `d = 2..=max_n` over columns `p + q = 2..=max_n`, computed at the
/// split `p = ⌈n/2⌉`.
pub fn total_degree_table(count: Count, max_n: usize) -> Result<Vec<(usize, Vec<u128>)>> {
    (2..=max_n)
        .into_par_iter()
        .map(|d| {
            let row = (2..=max_n)
                .map(|n| variable_count(n.div_ceil(2), n / 2, d, count))
                .collect::<Result<Vec<_>>>()?;
            Ok((d, row))
        })
        .collect()
}

/// Shapes `(p, q)` with `1 ≤ p ≤ q` and `2 ≤ p + q ≤ max_n`, ordered by
/// `p + q` then `p`.
pub fn split_columns(max_n: usize) -> Vec<(usize, usize)> {
    (2..=max_n)
        .flat_map(|n| (1..=n / 2).map(move |p| (p, n - p)))
        .collect()
}

pub fn full_brauer_table(max_n: usize) -> Result<Vec<(usize, Vec<u128>)>> {
    let cols = split_columns(max_n);
    (2..=max_n)
        .into_par_iter()
        .map(|d| {
            let row = cols
                .iter()
                .map(|&(p, q)| variable_count(p, q, d, Count::FullBrauer))
                .collect::<Result<Vec<_>>>()?;
            Ok((d, row))
        })
        .collect()
}

/// A table row keyed by `(p, q)`.
pub type SplitRow = ((usize, usize), Vec<u128>);

/// Rows `(p, q)` over `d = 2..=p+q`.
pub fn spsq_table(max_n: usize) -> Result<Vec<SplitRow>> {
    split_columns(max_n)
        .into_par_iter()
        .map(|(p, q)| {
            let row = (2..=p + q)
                .map(|d| variable_count(p, q, d, Count::SpSq))
                .collect::<Result<Vec<_>>>()?;
            Ok(((p, q), row))
        })
        .collect()
}

fn join(v: &[u128]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn total_degree_csv(count: Count, max_n: usize) -> Result<String> {
    let mut s = String::from("d");
    for n in 2..=max_n {
        s.push_str(&format!(",{n}"));
    }
    s.push('\n');
    for (d, row) in total_degree_table(count, max_n)? {
        s.push_str(&format!("{d},{}\n", join(&row)));
    }
    Ok(s)
}

pub fn full_brauer_csv(max_n: usize) -> Result<String> {
    let mut s = String::from("d");
    for (p, q) in split_columns(max_n) {
        s.push_str(&format!(",\"({p},{q})\""));
    }
    s.push('\n');
    for (d, row) in full_brauer_table(max_n)? {
        s.push_str(&format!("{d},{}\n", join(&row)));
    }
    Ok(s)
}

/// Rows `(p, q)`, columns `d = 2..=max_n`; cells with `d > p + q` are blank.
pub fn spsq_csv(max_n: usize) -> Result<String> {
    let mut s = String::from("p,q");
    for d in 2..=max_n {
        s.push_str(&format!(",{d}"));
    }
    s.push('\n');
    for ((p, q), row) in spsq_table(max_n)? {
        let mut cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        cells.resize(max_n - 1, String::new());
        s.push_str(&format!("{p},{q},{}\n", cells.join(",")));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn bp(s: &str) -> Bipartition {
        s.parse().unwrap()
    }

    #[test]
    fn lr_small() {
        assert_eq!(lr_coefficient(&part("(2)"), &part("(1)"), &part("(1)")), 1);
        assert_eq!(lr_coefficient(&part("(2,1)"), &part("(1)"), &part("(1,1)")), 1);
        assert_eq!(lr_coefficient(&part("(1,1,1)"), &part("(1)"), &part("(1,1)")), 1);
        assert_eq!(lr_coefficient(&part("(2,2)"), &part("(2,1)"), &part("(1)")), 1);
        assert_eq!(lr_coefficient(&part("(3,2,1)"), &part("(2,1)"), &part("(2,1)")), 2);
        assert_eq!(lr_coefficient(&part("(2)"), &part("(1,1)"), &part("()")), 0);
    }

    #[test]
    fn modification_examples() {
        assert_eq!(
            king_modify(&bp("((1),(1))"), 2).unwrap(),
            ModificationResult { g: 1, f: Some(bp("((1),(1))")) }
        );
        for (a, b) in [(1, 1), (2, 1), (1, 3), (3, 2)] {
            let tilde = Bipartition::from_rows(&[a, 1], &[b, 1]).unwrap();
            let res = king_modify(&tilde, 2).unwrap();
            assert_eq!(res.g, -1);
            assert_eq!(res.f, Some(Bipartition::from_rows(&[a], &[b]).unwrap()));
        }
        assert!(king_modify(&bp("((1,1,1),())"), 2).is_err());
    }

    #[test]
    fn spsq_small_rows() {
        let got: Vec<u128> = (2..=4)
            .map(|d| variable_count(2, 2, d, Count::SpSq).unwrap())
            .collect();
        assert_eq!(got, vec![6, 9, 10]);
        assert_eq!(variable_count(2, 3, 3, Count::FullBrauer).unwrap(), 6);
        assert_eq!(variable_count(3, 2, 3, Count::GelfandTsetlin).unwrap(), 21);
        assert_eq!(variable_count(3, 2, 4, Count::Dimension).unwrap(), 119);
    }
}
