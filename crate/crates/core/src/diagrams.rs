//! Walled Brauer diagrams.
//!
//! A diagram of shape `(p, q)` is a perfect matching on two rows of `n = p+q`
//! nodes with a wall after column `p`. Nodes are numbered `0..2n`: top node of
//! column `c` is `c`, bottom node of column `c` is `n + c`. The matching is
//! stored as an involution, which makes the representation canonical.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on `p + q` for basis enumeration.
pub const DEFAULT_BOUND: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Row {
    Top,
    Bottom,
}

/// A node given by its row and 1-based column index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId {
    pub row: Row,
    pub index: usize,
}

impl NodeId {
    pub fn top(index: usize) -> Self {
        NodeId { row: Row::Top, index }
    }

    pub fn bottom(index: usize) -> Self {
        NodeId { row: Row::Bottom, index }
    }

    fn raw(self, n: usize) -> usize {
        match self.row {
            Row::Top => self.index - 1,
            Row::Bottom => n + self.index - 1,
        }
    }

    fn from_raw(raw: usize, n: usize) -> Self {
        if raw < n {
            NodeId::top(raw + 1)
        } else {
            NodeId::bottom(raw - n + 1)
        }
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.row {
            Row::Top => write!(f, "t{}", self.index),
            Row::Bottom => write!(f, "b{}", self.index),
        }
    }
}

/// A walled Brauer diagram.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    p: u8,
    q: u8,
    pair: Vec<u8>,
}

/// A perfect matching on two rows with no wall condition, e.g. the partial
/// transpose of a diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matching {
    n: usize,
    pair: Vec<usize>,
}

impl Matching {
    pub fn n(&self) -> usize {
        self.n
    }

    /// The matching pairing top `i` with bottom `perm[i]` (0-based).
    pub fn from_permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut pair = vec![0; 2 * n];
        for (i, &j) in perm.iter().enumerate() {
            pair[i] = n + j;
            pair[n + j] = i;
        }
        Matching { n, pair }
    }

    /// The permutation `i ↦ j` with top `i` matched to bottom `j`, if every
    /// pair joins the two rows.
    pub fn to_permutation(&self) -> Option<Vec<usize>> {
        (0..self.n)
            .map(|i| (self.pair[i] >= self.n).then(|| self.pair[i] - self.n))
            .collect()
    }

    pub fn partner(&self, node: NodeId) -> NodeId {
        NodeId::from_raw(self.pair[node.raw(self.n)], self.n)
    }

    pub fn pairs(&self) -> Vec<(NodeId, NodeId)> {
        canonical_pairs(&self.pair)
            .into_iter()
            .map(|(a, b)| (NodeId::from_raw(a, self.n), NodeId::from_raw(b, self.n)))
            .collect()
    }
}

fn canonical_pairs<T: Copy + Into<usize>>(pair: &[T]) -> Vec<(usize, usize)> {
    pair.iter()
        .enumerate()
        .filter_map(|(i, &j)| {
            let j = j.into();
            (i < j).then_some((i, j))
        })
        .collect()
}

fn swap_row(node: usize, n: usize) -> usize {
    if node < n {
        node + n
    } else {
        node - n
    }
}

impl Diagram {
    fn check_shape(p: usize, q: usize) -> Result<()> {
        if p + q > 60 {
            return Err(Error::Bound(format!("p+q = {} is too large", p + q)));
        }
        Ok(())
    }

    fn raw(p: usize, q: usize, pair: Vec<u8>) -> Self {
        Diagram { p: p as u8, q: q as u8, pair }
    }

    /// Builds a diagram from explicit node pairs, validating the matching and
    /// the wall rule.
    pub fn from_pairs(p: usize, q: usize, pairs: &[(NodeId, NodeId)]) -> Result<Self> {
        Self::check_shape(p, q)?;
        let n = p + q;
        let mut pair = vec![u8::MAX; 2 * n];
        for &(a, b) in pairs {
            for node in [a, b] {
                if node.index == 0 || node.index > n {
                    return Err(Error::InvalidDiagram(format!(
                        "node {node} outside 1..={n}"
                    )));
                }
            }
            let (x, y) = (a.raw(n), b.raw(n));
            if x == y || pair[x] != u8::MAX || pair[y] != u8::MAX {
                return Err(Error::InvalidDiagram(format!(
                    "node used twice in pair {a}-{b}"
                )));
            }
            pair[x] = y as u8;
            pair[y] = x as u8;
        }
        if pair.contains(&u8::MAX) {
            return Err(Error::InvalidDiagram("not a perfect matching".into()));
        }
        let d = Diagram::raw(p, q, pair);
        d.check_wall()?;
        Ok(d)
    }

    fn check_wall(&self) -> Result<()> {
        let n = self.n();
        let p = self.p();
        for (a, b) in canonical_pairs(&self.pair) {
            let same_row = (a < n) == (b < n);
            let (ca, cb) = (a % n, b % n);
            let ok = if same_row {
                (ca < p) != (cb < p)
            } else {
                (ca < p) == (cb < p)
            };
            if !ok {
                return Err(Error::InvalidDiagram(format!(
                    "pair {}-{} violates the wall rule for p={}",
                    NodeId::from_raw(a, n),
                    NodeId::from_raw(b, n),
                    p
                )));
            }
        }
        Ok(())
    }

    /// The empty diagram, i.e. the scalar `1`.
    pub fn empty() -> Self {
        Diagram::raw(0, 0, Vec::new())
    }

    pub fn identity(p: usize, q: usize) -> Self {
        let n = p + q;
        let mut pair = vec![0u8; 2 * n];
        for i in 0..n {
            pair[i] = (n + i) as u8;
            pair[n + i] = i as u8;
        }
        Diagram::raw(p, q, pair)
    }

    /// The generator `σ_i` swapping strands `i` and `i+1` (1-based).
    pub fn transposition(i: usize, p: usize, q: usize) -> Result<Self> {
        let n = p + q;
        if i == 0 || i >= n {
            return Err(Error::Invalid(format!("transposition index {i} outside 1..{n}")));
        }
        if i == p {
            return Err(Error::Invalid(format!(
                "transposition {i} would cross the wall at p={p}"
            )));
        }
        Self::swap(i, i + 1, p, q)
    }

    /// The generator `σ̄_p` contracting columns `p` and `p+1`.
    pub fn contraction(p: usize, q: usize) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::Invalid(format!(
                "contraction needs nodes on both sides of the wall (p={p}, q={q})"
            )));
        }
        Self::bar(p, p + 1, p, q)
    }

    /// `σ_{i,k}`: strands `i` and `k` swapped, both on the same side of the wall.
    pub fn swap(i: usize, k: usize, p: usize, q: usize) -> Result<Self> {
        let n = p + q;
        if i == 0 || k == 0 || i > n || k > n || i == k {
            return Err(Error::Invalid(format!("bad swap columns {i},{k} for n={n}")));
        }
        if (i <= p) != (k <= p) {
            return Err(Error::Invalid(format!(
                "swap of columns {i},{k} crosses the wall at p={p}"
            )));
        }
        let mut d = Self::identity(p, q);
        let (a, b) = (i - 1, k - 1);
        d.pair[a] = (n + b) as u8;
        d.pair[n + b] = a as u8;
        d.pair[b] = (n + a) as u8;
        d.pair[n + a] = b as u8;
        Ok(d)
    }

    /// `σ̄_{i,k}`: columns `i ≤ p < k` joined by a cup on top and a cap below.
    pub fn bar(i: usize, k: usize, p: usize, q: usize) -> Result<Self> {
        let n = p + q;
        if i == 0 || i > p || k <= p || k > n {
            return Err(Error::Invalid(format!(
                "contraction columns {i},{k} must satisfy 1 <= i <= {p} < k <= {n}"
            )));
        }
        let mut d = Self::identity(p, q);
        let (a, b) = (i - 1, k - 1);
        d.pair[a] = b as u8;
        d.pair[b] = a as u8;
        d.pair[n + a] = (n + b) as u8;
        d.pair[n + b] = (n + a) as u8;
        Ok(d)
    }

    pub fn p(&self) -> usize {
        self.p as usize
    }

    pub fn q(&self) -> usize {
        self.q as usize
    }

    pub fn n(&self) -> usize {
        (self.p + self.q) as usize
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.p(), self.q())
    }

    pub fn partner(&self, node: NodeId) -> NodeId {
        let n = self.n();
        NodeId::from_raw(self.pair[node.raw(n)] as usize, n)
    }

    /// Pairs in canonical order.
    pub fn pairs(&self) -> Vec<(NodeId, NodeId)> {
        let n = self.n();
        canonical_pairs(&self.pair)
            .into_iter()
            .map(|(a, b)| (NodeId::from_raw(a, n), NodeId::from_raw(b, n)))
            .collect()
    }

    /// Raw involution on `0..2n` (top column `c` is `c`, bottom is `n+c`).
    pub fn involution(&self) -> impl Iterator<Item = usize> + '_ {
        self.pair.iter().map(|&v| v as usize)
    }

    pub fn is_identity(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| self.pair[i] as usize == n + i)
    }

    /// Stacks `self` above `other`; returns the product diagram and the number
    /// of closed loops removed.
    pub fn compose(&self, other: &Diagram) -> Result<(Diagram, u32)> {
        if self.shape() != other.shape() {
            return Err(Error::Shape(format!(
                "cannot compose {:?} with {:?}",
                self.shape(),
                other.shape()
            )));
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, b: &Diagram) -> (Diagram, u32) {
        let a = self;
        let n = a.n();
        let mut out = vec![u8::MAX; 2 * n];
        let mut seen = vec![false; n];
        for start in 0..2 * n {
            if out[start] != u8::MAX {
                continue;
            }
            let (mut cur, mut in_a) = if start < n {
                (a.pair[start] as usize, true)
            } else {
                (b.pair[start] as usize, false)
            };
            let end = loop {
                if in_a {
                    if cur < n {
                        break cur;
                    }
                    let mid = cur - n;
                    seen[mid] = true;
                    cur = b.pair[mid] as usize;
                    in_a = false;
                } else {
                    if cur >= n {
                        break cur;
                    }
                    let mid = cur;
                    seen[mid] = true;
                    cur = a.pair[n + mid] as usize;
                    in_a = true;
                }
            };
            out[start] = end as u8;
            out[end] = start as u8;
        }
        let mut loops = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            loops += 1;
            let mut mid = s;
            loop {
                seen[mid] = true;
                let via_a = a.pair[n + mid] as usize - n;
                seen[via_a] = true;
                mid = b.pair[via_a] as usize;
                if mid == s {
                    break;
                }
            }
        }
        (Diagram::raw(a.p(), a.q(), out), loops)
    }

    /// Number of loops obtained by joining every top node to the bottom node
    /// of the same column.
    pub fn trace(&self) -> u32 {
        self.trace_loop_lengths().len() as u32
    }

    /// Lengths (number of diagram strands) of the loops closed by the full trace.
    pub fn trace_loop_lengths(&self) -> Vec<usize> {
        let n = self.n();
        let mut seen = vec![false; 2 * n];
        let mut lengths = Vec::new();
        for s in 0..2 * n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut node = s;
            loop {
                seen[node] = true;
                let other = self.pair[node] as usize;
                seen[other] = true;
                len += 1;
                node = swap_row(other, n);
                if node == s {
                    break;
                }
            }
            lengths.push(len);
        }
        lengths
    }

    /// Joins top and bottom of every column in `subset` (1-based). Returns
    /// the number of closed loops and the residual diagram on the remaining
    /// columns, relabelled in order.
    pub fn partial_trace(&self, subset: &[usize]) -> Result<(u32, Diagram)> {
        let n = self.n();
        let mut traced = vec![false; n];
        for &c in subset {
            if c == 0 || c > n {
                return Err(Error::Invalid(format!("column {c} outside 1..={n}")));
            }
            traced[c - 1] = true;
        }
        Ok(self.partial_trace_mask(&traced))
    }

    pub(crate) fn partial_trace_mask(&self, traced: &[bool]) -> (u32, Diagram) {
        let n = self.n();
        let p = self.p();
        let mut relabel = vec![usize::MAX; n];
        let mut kept = 0;
        let mut new_p = 0;
        for c in 0..n {
            if !traced[c] {
                relabel[c] = kept;
                kept += 1;
                if c < p {
                    new_p += 1;
                }
            }
        }
        let new_n = kept;
        let map = |node: usize| -> usize {
            let c = node % n;
            if node < n {
                relabel[c]
            } else {
                new_n + relabel[c]
            }
        };
        let mut seen = vec![false; 2 * n];
        let mut out = vec![u8::MAX; 2 * new_n];
        for s in 0..2 * n {
            if traced[s % n] || seen[s] {
                continue;
            }
            seen[s] = true;
            let mut node = self.pair[s] as usize;
            while traced[node % n] {
                seen[node] = true;
                let across = swap_row(node, n);
                seen[across] = true;
                node = self.pair[across] as usize;
            }
            seen[node] = true;
            let (x, y) = (map(s), map(node));
            out[x] = y as u8;
            out[y] = x as u8;
        }
        let mut loops = 0;
        for s in 0..2 * n {
            if seen[s] {
                continue;
            }
            loops += 1;
            let mut node = s;
            loop {
                seen[node] = true;
                let other = self.pair[node] as usize;
                seen[other] = true;
                node = swap_row(other, n);
                if node == s {
                    break;
                }
            }
        }
        (loops, Diagram::raw(new_p, new_n - new_p, out))
    }

    /// Partial transpose: exchanges top and bottom nodes of every column right
    /// of the wall.
    pub fn partial_transpose(&self) -> Matching {
        let n = self.n();
        let p = self.p();
        let f = |node: usize| if node % n >= p { swap_row(node, n) } else { node };
        let mut pair = vec![0; 2 * n];
        for x in 0..2 * n {
            pair[f(x)] = f(self.pair[x] as usize);
        }
        Matching { n, pair }
    }

    /// Inverse of [`Diagram::partial_transpose`].
    pub fn from_partial_transpose(m: &Matching, p: usize) -> Result<Self> {
        let n = m.n;
        if p > n {
            return Err(Error::Invalid(format!("p={p} exceeds n={n}")));
        }
        let f = |node: usize| if node % n >= p { swap_row(node, n) } else { node };
        let mut pair = vec![0u8; 2 * n];
        for x in 0..2 * n {
            pair[f(x)] = f(m.pair[x]) as u8;
        }
        let d = Diagram::raw(p, n - p, pair);
        d.check_wall()?;
        Ok(d)
    }

    /// Inclusion into shape `(p, q)`: left columns keep their positions,
    /// right columns move next to the new right block, and every added
    /// column carries a through strand.
    pub fn embed(&self, p: usize, q: usize) -> Result<Diagram> {
        let (a, b) = self.shape();
        if a > p || b > q {
            return Err(Error::Shape(format!(
                "cannot embed shape ({a},{b}) into ({p},{q})"
            )));
        }
        Self::check_shape(p, q)?;
        let (m, n) = (a + b, p + q);
        let col = |c: usize| if c < a { c } else { p + c - a };
        let node = |x: usize| if x < m { col(x) } else { n + col(x - m) };
        let mut d = Self::identity(p, q);
        for (x, &y) in self.pair.iter().enumerate() {
            d.pair[node(x)] = node(y as usize) as u8;
        }
        Ok(d)
    }

    /// Vertical flip (the algebra adjoint on a single diagram).
    pub fn flip(&self) -> Diagram {
        let n = self.n();
        let mut pair = vec![0u8; 2 * n];
        for x in 0..2 * n {
            pair[swap_row(x, n)] = swap_row(self.pair[x] as usize, n) as u8;
        }
        Diagram::raw(self.p(), self.q(), pair)
    }

    /// Left-right mirror image, a diagram of shape `(q, p)`.
    pub fn mirror(&self) -> Diagram {
        let n = self.n();
        let f = |node: usize| {
            let c = node % n;
            let base = node - c;
            base + (n - 1 - c)
        };
        let mut pair = vec![0u8; 2 * n];
        for x in 0..2 * n {
            pair[f(x)] = f(self.pair[x] as usize) as u8;
        }
        Diagram::raw(self.q(), self.p(), pair)
    }

    /// Position of this diagram in [`enumerate_diagrams`].
    pub fn index(&self) -> usize {
        let perm = self
            .partial_transpose()
            .to_permutation()
            .expect("partial transpose of a walled diagram is a permutation");
        permutation_rank(&perm)
    }

    /// Inverse of [`Diagram::index`].
    pub fn from_index(p: usize, q: usize, index: usize) -> Result<Self> {
        let n = p + q;
        let total = factorial(n);
        if index >= total {
            return Err(Error::Invalid(format!("index {index} >= {n}! = {total}")));
        }
        let perm = permutation_unrank(n, index);
        Diagram::from_partial_transpose(&Matching::from_permutation(&perm), p)
    }

    /// Diagram text `p,q|t1-b1,...`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse(s: &str) -> Result<Self> {
        s.parse()
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}|", self.p, self.q)?;
        let pairs = self.pairs();
        for (k, (a, b)) in pairs.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}-{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram({self})")
    }
}

fn parse_node(tok: &str) -> Result<NodeId> {
    let tok = tok.trim();
    let bad = || Error::Parse(format!("bad node token {tok:?}"));
    let (row, rest) = match tok.chars().next() {
        Some('t') | Some('T') => (Row::Top, &tok[1..]),
        Some('b') | Some('B') => (Row::Bottom, &tok[1..]),
        _ => return Err(bad()),
    };
    let index: usize = rest.parse().map_err(|_| bad())?;
    Ok(NodeId { row, index })
}

impl FromStr for Diagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (shape, body) = s
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("missing '|' in diagram {s:?}")))?;
        let (p, q) = shape
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("missing 'p,q' in diagram {s:?}")))?;
        let p: usize = p.trim().parse().map_err(|_| Error::Parse(format!("bad p in {s:?}")))?;
        let q: usize = q.trim().parse().map_err(|_| Error::Parse(format!("bad q in {s:?}")))?;
        let mut pairs = Vec::new();
        for item in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (a, b) = item
                .split_once('-')
                .ok_or_else(|| Error::Parse(format!("bad pair {item:?}")))?;
            pairs.push((parse_node(a)?, parse_node(b)?));
        }
        Diagram::from_pairs(p, q, &pairs)
    }
}

impl Serialize for Diagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Lexicographic rank of a permutation in one-line notation.
pub fn permutation_rank(perm: &[usize]) -> usize {
    let n = perm.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = perm[i + 1..].iter().filter(|&&x| x < perm[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

/// Inverse of [`permutation_rank`].
pub fn permutation_unrank(n: usize, mut rank: usize) -> Vec<usize> {
    let mut digits = vec![0; n];
    for i in (0..n).rev() {
        let base = n - i;
        digits[i] = rank % base;
        rank /= base;
    }
    let mut pool: Vec<usize> = (0..n).collect();
    digits.into_iter().map(|d| pool.remove(d)).collect()
}

/// All `(p+q)!` diagrams, ordered so that their partial transposes run through
/// the permutations of `S_{p+q}` in lexicographic one-line order.
pub fn enumerate_diagrams(p: usize, q: usize) -> Result<Vec<Diagram>> {
    enumerate_diagrams_bounded(p, q, DEFAULT_BOUND)
}

pub fn enumerate_diagrams_bounded(p: usize, q: usize, bound: usize) -> Result<Vec<Diagram>> {
    let n = p + q;
    if n > bound {
        return Err(Error::Bound(format!(
            "p+q = {n} exceeds the enumeration bound {bound}"
        )));
    }
    (0..factorial(n))
        .map(|k| Diagram::from_index(p, q, k))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Diagram {
        s.parse().unwrap()
    }

    #[test]
    fn generators_match_pictures() {
        assert_eq!(
            Diagram::transposition(1, 2, 2).unwrap(),
            d("2,2|t1-b2,t2-b1,t3-b3,t4-b4")
        );
        assert_eq!(
            Diagram::transposition(3, 2, 2).unwrap(),
            d("2,2|t1-b1,t2-b2,t3-b4,t4-b3")
        );
        assert!(Diagram::transposition(2, 2, 2).is_err());
        assert_eq!(
            Diagram::contraction(2, 2).unwrap(),
            d("2,2|t1-b1,t2-t3,b2-b3,t4-b4")
        );
        assert!(Diagram::contraction(3, 0).is_err());
    }

    #[test]
    fn text_round_trip_is_canonical() {
        let x = d("3,2|b2-b4,t3-t5,t1-b1,b3-t2,t4-b5");
        assert_eq!(x.to_string(), "3,2|t1-b1,t2-b3,t3-t5,t4-b5,b2-b4");
        assert_eq!(d(&x.to_string()), x);
        assert_eq!(Diagram::empty().to_string(), "0,0|");
        assert_eq!(d("0,0|"), Diagram::empty());
    }

    #[test]
    fn rejects_invalid_matchings() {
        assert!("1,1|t1-b2,t2-b1".parse::<Diagram>().is_err());
        assert!("2,0|t1-t2,b1-b2".parse::<Diagram>().is_err());
        assert!("1,1|t1-b1".parse::<Diagram>().is_err());
        assert!("1,1|t1-b1,t1-b2".parse::<Diagram>().is_err());
        assert!("1,1|t1-b1,t3-b2".parse::<Diagram>().is_err());
    }

    #[test]
    fn rank_unrank_round_trip() {
        for k in 0..120 {
            assert_eq!(permutation_rank(&permutation_unrank(5, k)), k);
        }
        assert_eq!(permutation_unrank(3, 0), vec![0, 1, 2]);
        assert_eq!(permutation_unrank(3, 5), vec![2, 1, 0]);
    }

    #[test]
    fn mirror_is_an_involution_and_a_homomorphism() {
        let all = enumerate_diagrams(2, 1).unwrap();
        for a in &all {
            assert_eq!(a.mirror().mirror(), *a);
            for b in &all {
                let (ab, l) = a.compose(b).unwrap();
                let (mab, ml) = a.mirror().compose(&b.mirror()).unwrap();
                assert_eq!(ab.mirror(), mab);
                assert_eq!(l, ml);
            }
        }
    }
}
