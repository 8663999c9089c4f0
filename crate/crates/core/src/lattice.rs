//! Partitions, bipartitions and the Bratteli diagrams of the walled Brauer
//! tower and its `d`-truncation.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

/// Young diagram given by weakly decreasing row lengths.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(rows: Vec<usize>) -> Result<Self> {
        Partition::new(rows)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl Partition {
    pub fn new(rows: Vec<usize>) -> Result<Self> {
        if rows.contains(&0) || rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("{rows:?} is not a partition")));
        }
        Ok(Partition(rows))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn rows(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Row length, zero past the last row (0-based `i`).
    pub fn row(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Sum of `j − i` over all cells.
    pub fn content(&self) -> i64 {
        self.cells().map(|(i, j)| j as i64 - i as i64).sum()
    }

    /// Cells as 1-based `(row, column)`.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| (1..=r).map(move |j| (i + 1, j)))
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.row(0);
        Partition((0..first).map(|j| self.0.iter().filter(|&&r| r > j).count()).collect())
    }

    /// Rows (0-based) where a cell can be appended.
    pub fn addable_rows(&self) -> Vec<usize> {
        (0..=self.len())
            .filter(|&i| i == 0 || self.row(i) < self.row(i - 1))
            .collect()
    }

    /// Rows (0-based) whose last cell can be removed.
    pub fn removable_rows(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.row(i) > self.row(i + 1))
            .collect()
    }

    pub fn with_added(&self, i: usize) -> Partition {
        let mut rows = self.0.clone();
        if i == rows.len() {
            rows.push(1);
        } else {
            rows[i] += 1;
        }
        Partition(rows)
    }

    pub fn with_removed(&self, i: usize) -> Partition {
        let mut rows = self.0.clone();
        rows[i] -= 1;
        if rows[i] == 0 {
            rows.pop();
        }
        Partition(rows)
    }

    /// True when `self` fits inside `other` cell by cell.
    pub fn is_contained_in(&self, other: &Partition) -> bool {
        self.len() <= other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Number of standard Young tableaux, by the hook length formula.
    pub fn hook_dimension(&self) -> u128 {
        let conj = self.conjugate();
        let mut num: u128 = 1;
        let mut hooks: Vec<u128> = Vec::new();
        for (k, (i, j)) in self.cells().enumerate() {
            num *= (k + 1) as u128;
            hooks.push((self.row(i - 1) - j + conj.row(j - 1) - i + 1) as u128);
        }
        hooks.into_iter().fold(num, |acc, h| acc / h)
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all_of_size(n: usize) -> Vec<Partition> {
        fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for r in (1..=n.min(max)).rev() {
                cur.push(r);
                rec(n - r, r, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", rows.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("partition must be parenthesised: {s:?}")))?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let rows = inner
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse(format!("bad partition {s:?}")))?;
        Partition::new(rows)
    }
}

/// A pair of Young diagrams labelling an irreducible of the walled Brauer
/// tower.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bipartition {
    pub left: Partition,
    pub right: Partition,
}

impl Bipartition {
    pub fn new(left: Partition, right: Partition) -> Self {
        Bipartition { left, right }
    }

    pub fn from_rows(left: &[usize], right: &[usize]) -> Result<Self> {
        Ok(Bipartition::new(Partition::new(left.to_vec())?, Partition::new(right.to_vec())?))
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Length condition defining the truncated family.
    pub fn fits(&self, d: usize) -> bool {
        self.left.len() + self.right.len() <= d
    }

    fn order_key(&self) -> (usize, &[usize], &[usize]) {
        (self.left.size(), self.left.rows(), self.right.rows())
    }

    pub fn swapped(&self) -> Bipartition {
        Bipartition::new(self.right.clone(), self.left.clone())
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.left, self.right)
    }
}

impl FromStr for Bipartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad bipartition {s:?}"));
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let close = inner.find(')').ok_or_else(bad)?;
        let (l, rest) = inner.split_at(close + 1);
        let r = rest.trim_start().strip_prefix(',').ok_or_else(bad)?;
        Ok(Bipartition::new(l.parse()?, r.parse()?))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Every vertex of the walled Brauer tower, loop parameter `delta`.
    Walled { delta: u32 },
    /// Vertices with `len(left) + len(right) ≤ d`, loop parameter `d`.
    Truncated { d: u32 },
}

impl Family {
    pub fn delta(&self) -> u32 {
        match *self {
            Family::Walled { delta } => delta,
            Family::Truncated { d } => d,
        }
    }

    fn admits(&self, v: &Bipartition) -> bool {
        match *self {
            Family::Walled { .. } => true,
            Family::Truncated { d } => v.fits(d as usize),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub content: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub vertices: Vec<usize>,
    pub leaf: Bipartition,
    pub contents: Vec<Rational>,
}

#[derive(Clone, Debug)]
pub struct BratteliGraph {
    p: usize,
    q: usize,
    family: Family,
    levels: Vec<Vec<Bipartition>>,
    /// `edges[k]` joins level `k` to level `k + 1`, sorted by `(from, to)`.
    edges: Vec<Vec<Edge>>,
}

/// Content of the cell distinguishing `from` and `to` at level `k`
/// (1-based) of the `(p, ·)` tower with loop parameter `delta`.
pub fn edge_content(
    from: &Bipartition,
    to: &Bipartition,
    k: usize,
    p: usize,
    delta: u32,
) -> Result<Rational> {
    let illegal = || Error::Invalid(format!("{from} -> {to} is not a move at level {k}"));
    let single_cell = |small: &Partition, big: &Partition| -> Option<(usize, usize)> {
        if big.size() != small.size() + 1 || !small.is_contained_in(big) {
            return None;
        }
        (0..big.len())
            .find(|&i| big.row(i) != small.row(i))
            .map(|i| (i + 1, big.row(i)))
    };
    let c = |i: usize, j: usize| j as i64 - i as i64;
    let value = if k == 0 {
        return Err(illegal());
    } else if k <= p {
        if from.right != to.right || !from.right.is_empty() {
            return Err(illegal());
        }
        let (i, j) = single_cell(&from.left, &to.left).ok_or_else(illegal)?;
        c(i, j)
    } else if from.left == to.left {
        let (i, j) = single_cell(&from.right, &to.right).ok_or_else(illegal)?;
        c(i, j) + delta as i64
    } else if from.right == to.right {
        let (i, j) = single_cell(&to.left, &from.left).ok_or_else(illegal)?;
        -c(i, j)
    } else {
        return Err(illegal());
    };
    Ok(Rational::from_integer(value.into()))
}

impl BratteliGraph {
    pub fn build(p: usize, q: usize, family: Family) -> Result<Self> {
        if p + q == 0 {
            return Err(Error::Shape("p + q must be positive".into()));
        }
        let delta = family.delta();
        let mut levels = vec![vec![Bipartition::empty()]];
        let mut edges = Vec::with_capacity(p + q);
        for k in 1..=p + q {
            let prev = &levels[k - 1];
            let mut next: Vec<Bipartition> = Vec::new();
            let mut raw: Vec<(usize, Bipartition)> = Vec::new();
            for (a, v) in prev.iter().enumerate() {
                let mut succ = Vec::new();
                if k <= p {
                    for i in v.left.addable_rows() {
                        succ.push(Bipartition::new(v.left.with_added(i), v.right.clone()));
                    }
                } else {
                    for i in v.right.addable_rows() {
                        succ.push(Bipartition::new(v.left.clone(), v.right.with_added(i)));
                    }
                    for i in v.left.removable_rows() {
                        succ.push(Bipartition::new(v.left.with_removed(i), v.right.clone()));
                    }
                }
                raw.extend(succ.into_iter().filter(|w| family.admits(w)).map(|w| (a, w)));
            }
            for (_, w) in &raw {
                next.push(w.clone());
            }
            next.sort_by(|x, y| x.order_key().cmp(&y.order_key()));
            next.dedup();
            let pos: HashMap<&Bipartition, usize> =
                next.iter().enumerate().map(|(i, v)| (v, i)).collect();
            let mut level_edges = raw
                .iter()
                .map(|(a, w)| {
                    Ok(Edge {
                        from: *a,
                        to: pos[w],
                        content: edge_content(&prev[*a], w, k, p, delta)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            level_edges.sort_by_key(|e| (e.from, e.to));
            edges.push(level_edges);
            levels.push(next);
        }
        Ok(BratteliGraph { p, q, family, levels, edges })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn depth(&self) -> usize {
        self.p + self.q
    }

    pub fn level(&self, k: usize) -> &[Bipartition] {
        &self.levels[k]
    }

    /// Edges from level `k` to level `k + 1`.
    pub fn edges(&self, k: usize) -> &[Edge] {
        &self.edges[k]
    }

    /// Outgoing edges of vertex `v` at level `k`, by increasing target.
    pub fn out_edges(&self, k: usize, v: usize) -> &[Edge] {
        let es = &self.edges[k];
        let lo = es.partition_point(|e| e.from < v);
        let hi = es.partition_point(|e| e.from <= v);
        &es[lo..hi]
    }

    pub fn leaves(&self) -> &[Bipartition] {
        &self.levels[self.depth()]
    }

    pub fn vertex_index(&self, k: usize, v: &Bipartition) -> Option<usize> {
        self.levels[k].iter().position(|w| w == v)
    }

    /// Number of paths from the root to every vertex of every level.
    pub fn path_counts(&self) -> Vec<Vec<u128>> {
        let mut counts = vec![vec![1u128]];
        for k in 0..self.depth() {
            let mut next = vec![0u128; self.levels[k + 1].len()];
            for e in &self.edges[k] {
                next[e.to] += counts[k][e.from];
            }
            counts.push(next);
        }
        counts
    }

    pub fn path_count(&self, leaf: &Bipartition) -> Result<u128> {
        let i = self.leaf_index(leaf)?;
        Ok(self.path_counts()[self.depth()][i])
    }

    fn leaf_index(&self, leaf: &Bipartition) -> Result<usize> {
        self.vertex_index(self.depth(), leaf)
            .ok_or_else(|| Error::Invalid(format!("{leaf} is not a leaf")))
    }

    /// Paths ending at `leaf`, in lexicographic order of vertex indices.
    pub fn paths_to(&self, leaf: &Bipartition) -> Result<Vec<Path>> {
        let target = self.leaf_index(leaf)?;
        Ok(self.all_paths().into_iter().filter(|t| t.vertices[self.depth()] == target).collect())
    }

    /// Every root-to-leaf path, in lexicographic order of vertex indices.
    pub fn all_paths(&self) -> Vec<Path> {
        let n = self.depth();
        let mut out = Vec::new();
        let mut verts = vec![0usize];
        let mut contents = Vec::new();
        self.dfs(0, &mut verts, &mut contents, &mut |vs, cs| {
            out.push(Path {
                vertices: vs.to_vec(),
                leaf: self.levels[n][vs[n]].clone(),
                contents: cs.to_vec(),
            })
        });
        out
    }

    fn dfs(
        &self,
        k: usize,
        verts: &mut Vec<usize>,
        contents: &mut Vec<Rational>,
        visit: &mut dyn FnMut(&[usize], &[Rational]),
    ) {
        if k == self.depth() {
            visit(verts, contents);
            return;
        }
        for e in self.out_edges(k, verts[k]) {
            verts.push(e.to);
            contents.push(e.content.clone());
            self.dfs(k + 1, verts, contents, visit);
            verts.pop();
            contents.pop();
        }
    }

    /// `(leaf, d_λ)` for every leaf, in vertex order.
    pub fn leaf_dimensions(&self) -> Vec<(Bipartition, u128)> {
        let counts = self.path_counts();
        self.leaves()
            .iter()
            .cloned()
            .zip(counts[self.depth()].iter().copied())
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph bratteli {\n  rankdir=TB;\n");
        for (k, level) in self.levels.iter().enumerate() {
            s.push_str("  { rank=same;");
            for (i, v) in level.iter().enumerate() {
                s.push_str(&format!(" \"{k}:{i}\" [label=\"{v}\"];"));
            }
            s.push_str(" }\n");
        }
        for (k, es) in self.edges.iter().enumerate() {
            for e in es {
                s.push_str(&format!(
                    "  \"{}:{}\" -> \"{}:{}\" [label=\"{}\"];\n",
                    k,
                    e.from,
                    k + 1,
                    e.to,
                    format_rational(&e.content)
                ));
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("leaf,dimension\n");
        for (leaf, dim) in self.leaf_dimensions() {
            s.push_str(&format!("\"{leaf}\",{dim}\n"));
        }
        s
    }
}

/// Sum of the contents along a path, expected to telescope to the leaf data.
pub fn content_sum(path: &Path) -> Rational {
    path.contents.iter().fold(Rational::zero(), |acc, c| acc + c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn bp(s: &str) -> Bipartition {
        s.parse().unwrap()
    }

    #[test]
    fn partition_basics() {
        let p: Partition = "(3,1)".parse().unwrap();
        assert_eq!(p.conjugate(), "(2,1,1)".parse().unwrap());
        assert_eq!(p.hook_dimension(), 3);
        assert_eq!(Partition::all_of_size(5).len(), 7);
        assert_eq!(Partition::empty().to_string(), "()");
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(bp("((2,1),())").to_string(), "((2,1),())");
    }

    #[test]
    fn contents_and_sizes() {
        assert_eq!(Partition::empty().content(), 0);
        assert_eq!(Partition::new(vec![2, 1]).unwrap().content(), 0);
        assert_eq!(Partition::new(vec![3]).unwrap().content(), 3);
        assert_eq!(Partition::new(vec![3]).unwrap().size(), 3);
    }

    #[test]
    fn edge_contents() {
        let e = Bipartition::empty();
        let one = bp("((1),())");
        assert_eq!(edge_content(&e, &one, 1, 1, 5).unwrap(), rat(0));
        assert_eq!(edge_content(&one, &e, 2, 1, 5).unwrap(), rat(0));
        assert_eq!(edge_content(&one, &bp("((1),(1))"), 2, 1, 5).unwrap(), rat(5));
        assert!(edge_content(&e, &bp("((2),())"), 1, 1, 5).is_err());
    }

    #[test]
    fn small_graphs() {
        let b = BratteliGraph::build(2, 2, Family::Walled { delta: 7 }).unwrap();
        assert_eq!(b.leaves().len(), 6);
        assert_eq!(b.path_count(&bp("((1),(1))")).unwrap(), 4);
        assert_eq!(b.path_count(&bp("((2),(2))")).unwrap(), 1);
        let a = BratteliGraph::build(2, 2, Family::Truncated { d: 2 }).unwrap();
        assert_eq!(a.path_count(&bp("((1),(1))")).unwrap(), 3);
        assert_eq!(a.paths_to(&bp("((1),(1))")).unwrap().len(), 3);
        for gone in ["((2),(1,1))", "((1,1),(2))", "((1,1),(1,1))"] {
            assert!(a.vertex_index(4, &bp(gone)).is_none());
        }
        assert!(a.vertex_index(3, &bp("((1,1),(1))")).is_none());
        assert!(b.vertex_index(3, &bp("((1,1),(1))")).is_some());
        assert!(b.paths_to(&bp("((3),())")).is_err());
    }
}
