//! Jucys–Murphy elements, the recursive construction of central and
//! canonical (Gelfand–Tsetlin) idempotents, and the last-edge grouping used
//! for `S_p × S_q` symmetric problems.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path as FsPath, PathBuf};
use std::str::FromStr;

use num::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::Element;
use crate::diagrams::Diagram;
use crate::error::{Error, Result};
use crate::lattice::{Bipartition, BratteliGraph, Family};
use crate::rational::{format_rational, parse_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    /// One variable per irreducible (central idempotents).
    #[serde(alias = "full", alias = "fullbrauer")]
    FullBrauer,
    /// One variable per Gelfand–Tsetlin path (canonical idempotents).
    #[serde(alias = "gt", alias = "gelfandtsetlin")]
    GelfandTsetlin,
    /// One variable per last edge; needs `min(p, q) = 1`.
    #[serde(alias = "spsq")]
    SpSq,
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symmetry::FullBrauer => "full",
            Symmetry::GelfandTsetlin => "gt",
            Symmetry::SpSq => "spsq",
        })
    }
}

impl FromStr for Symmetry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "full" | "fullbrauer" => Ok(Symmetry::FullBrauer),
            "gt" | "gelfandtsetlin" => Ok(Symmetry::GelfandTsetlin),
            "spsq" => Ok(Symmetry::SpSq),
            _ => Err(Error::Parse(format!("unknown symmetry {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Label {
    Leaf(Bipartition),
    Path(Vec<Bipartition>),
    LastEdge { from: Bipartition, to: Bipartition },
}

impl Label {
    /// The irreducible the row belongs to.
    pub fn leaf(&self) -> &Bipartition {
        match self {
            Label::Leaf(b) => b,
            Label::Path(v) => v.last().expect("paths are nonempty"),
            Label::LastEdge { to, .. } => to,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Leaf(b) => write!(f, "{b}"),
            Label::Path(v) => {
                let parts: Vec<String> = v.iter().map(|b| b.to_string()).collect();
                write!(f, "{}", parts.join(" -> "))
            }
            Label::LastEdge { from, to } => write!(f, "{from} -> {to}"),
        }
    }
}

/// Rows of idempotent preimages together with their labels.
#[derive(Clone, Debug, PartialEq)]
pub struct IdempotentSet {
    pub p: usize,
    pub q: usize,
    pub d: usize,
    pub symmetry: Symmetry,
    pub labels: Vec<Label>,
    pub rows: Vec<Element>,
}

/// Shape `(a, b)` of the algebra at level `k` of the tower with wall `p`.
pub fn level_shape(k: usize, p: usize) -> (usize, usize) {
    let a = k.min(p);
    (a, k - a)
}

/// `J_k` as an element of shape `(p, q)`.
pub fn jm_element(k: usize, p: usize, q: usize, delta: u32) -> Result<Element> {
    let n = p + q;
    if k == 0 || k > n {
        return Err(Error::Invalid(format!("JM index {k} outside 1..={n}")));
    }
    let mut terms = Vec::new();
    if k <= p {
        for i in 1..k {
            terms.push((Diagram::swap(i, k, p, q)?, Rational::one()));
        }
    } else {
        for i in p + 1..k {
            terms.push((Diagram::swap(i, k, p, q)?, Rational::one()));
        }
        for i in 1..=p {
            terms.push((Diagram::bar(i, k, p, q)?, -Rational::one()));
        }
        terms.push((Diagram::identity(p, q), Rational::from_integer(delta.into())));
    }
    Element::from_terms(p, q, delta, terms)
}

/// `x · ∏_r (J − r)/(target − r)` over `roots` taken in increasing order.
fn apply_edge(x: &Element, j: &Element, roots: &[Rational], target: &Rational) -> Result<Element> {
    let mut roots = roots.to_vec();
    roots.sort();
    let mut out = x.clone();
    for r in &roots {
        let denom = target - r;
        if denom.is_zero() {
            return Err(Error::ContentCollision(format!(
                "sibling content {} equals edge content",
                format_rational(r)
            )));
        }
        let factor = j.add_scalar(&-r.clone()).scale(&(Rational::one() / denom));
        out = out.mul_unchecked(&factor);
    }
    Ok(out)
}

struct Tower {
    graph: BratteliGraph,
    jm: Vec<Element>,
    delta: u32,
}

impl Tower {
    fn new(p: usize, q: usize, d: usize) -> Result<Self> {
        if d < 1 {
            return Err(Error::Invalid("d must be positive".into()));
        }
        let delta = d as u32;
        let graph = BratteliGraph::build(p, q, Family::Truncated { d: delta })?;
        let mut jm = vec![Element::zero(0, 0, delta)];
        for k in 1..=p + q {
            let (a, b) = level_shape(k, p);
            jm.push(jm_element(k, a, b, delta)?);
        }
        Ok(Tower { graph, jm, delta })
    }

    /// Applies the projection for the edge `edge_pos` among the outgoing
    /// edges of vertex `v` at level `k - 1`, after lifting `x` to level `k`.
    fn step(&self, x: &Element, k: usize, v: usize, edge_pos: usize) -> Result<Element> {
        let (a, b) = level_shape(k, self.graph.p());
        let lifted = x.embed(a, b)?;
        let out = self.graph.out_edges(k - 1, v);
        let roots: Vec<Rational> = out
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != edge_pos)
            .map(|(_, e)| e.content.clone())
            .collect();
        apply_edge(&lifted, &self.jm[k], &roots, &out[edge_pos].content)
    }

    fn root(&self) -> Element {
        Element::identity(0, 0, self.delta)
    }
}

/// Central idempotents `ε(λ)` of the truncated family, one per leaf.
pub fn central_idempotents(p: usize, q: usize, d: usize) -> Result<IdempotentSet> {
    let tower = Tower::new(p, q, d)?;
    let g = &tower.graph;
    let mut eps = vec![tower.root()];
    for k in 1..=p + q {
        let (a, b) = level_shape(k, p);
        let contributions: Vec<(usize, Element)> = g
            .edges(k - 1)
            .par_iter()
            .map(|e| {
                let pos = g
                    .out_edges(k - 1, e.from)
                    .iter()
                    .position(|f| f.to == e.to)
                    .expect("edge is among its source's edges");
                Ok((e.to, tower.step(&eps[e.from], k, e.from, pos)?))
            })
            .collect::<Result<_>>()?;
        let mut next = vec![Element::zero(a, b, tower.delta); g.level(k).len()];
        for (to, x) in contributions {
            next[to] = next[to].add(&x)?;
        }
        eps = next;
    }
    Ok(IdempotentSet {
        p,
        q,
        d,
        symmetry: Symmetry::FullBrauer,
        labels: g.leaves().iter().cloned().map(Label::Leaf).collect(),
        rows: eps,
    })
}

/// Canonical idempotents `ε_T`, one per path, in lexicographic path order.
pub fn canonical_idempotents(p: usize, q: usize, d: usize) -> Result<IdempotentSet> {
    let tower = Tower::new(p, q, d)?;
    let found = grow(&tower, 0, 0, tower.root(), vec![0])?;
    let g = &tower.graph;
    let labels = found
        .iter()
        .map(|(vs, _)| Label::Path(vs.iter().enumerate().map(|(k, &v)| g.level(k)[v].clone()).collect()))
        .collect();
    Ok(IdempotentSet {
        p,
        q,
        d,
        symmetry: Symmetry::GelfandTsetlin,
        labels,
        rows: found.into_iter().map(|(_, x)| x).collect(),
    })
}

type Grown = Vec<(Vec<usize>, Element)>;

fn grow(tower: &Tower, k: usize, v: usize, x: Element, path: Vec<usize>) -> Result<Grown> {
    if k == tower.graph.depth() {
        return Ok(vec![(path, x)]);
    }
    let out = tower.graph.out_edges(k, v);
    let parts: Vec<Grown> = (0..out.len())
        .into_par_iter()
        .map(|pos| {
            let y = tower.step(&x, k + 1, v, pos)?;
            let mut next = path.clone();
            next.push(out[pos].to);
            grow(tower, k + 1, out[pos].to, y, next)
        })
        .collect::<Result<_>>()?;
    Ok(parts.into_iter().flatten().collect())
}

/// Sums of canonical idempotents sharing their final edge, for
/// `min(p, q) = 1`. The `p = 1` case is the mirror image of `(q, 1)`.
pub fn last_edge_ansatz(p: usize, q: usize, d: usize) -> Result<IdempotentSet> {
    if p.min(q) != 1 {
        return Err(Error::Invalid(format!(
            "last-edge grouping needs min(p,q) = 1, got ({p},{q})"
        )));
    }
    if q != 1 {
        let base = last_edge_ansatz(q, 1, d)?;
        let labels = base
            .labels
            .iter()
            .map(|l| match l {
                Label::LastEdge { from, to } => Label::LastEdge { from: from.swapped(), to: to.swapped() },
                other => other.clone(),
            })
            .collect();
        return Ok(IdempotentSet {
            p,
            q,
            d,
            symmetry: Symmetry::SpSq,
            labels,
            rows: base.rows.iter().map(Element::mirror).collect(),
        });
    }
    let tower = Tower::new(p, q, d)?;
    let n = p + q;
    let found = grow(&tower, 0, 0, tower.root(), vec![0])?;
    let mut groups: BTreeMap<(usize, usize), Element> = BTreeMap::new();
    for (vs, x) in found {
        let key = (vs[n], vs[n - 1]);
        match groups.get_mut(&key) {
            Some(acc) => *acc = acc.add(&x)?,
            None => {
                groups.insert(key, x);
            }
        }
    }
    let g = &tower.graph;
    let (labels, rows) = groups
        .into_iter()
        .map(|((to, from), x)| {
            (Label::LastEdge { from: g.level(n - 1)[from].clone(), to: g.level(n)[to].clone() }, x)
        })
        .unzip();
    Ok(IdempotentSet { p, q, d, symmetry: Symmetry::SpSq, labels, rows })
}

const CACHE_MAGIC: &str = "wbsdp-alpha";

impl IdempotentSet {
    pub fn build(p: usize, q: usize, d: usize, symmetry: Symmetry) -> Result<Self> {
        match symmetry {
            Symmetry::FullBrauer => central_idempotents(p, q, d),
            Symmetry::GelfandTsetlin => canonical_idempotents(p, q, d),
            Symmetry::SpSq => last_edge_ansatz(p, q, d),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn delta(&self) -> u32 {
        self.d as u32
    }

    pub fn sum(&self) -> Result<Element> {
        self.rows
            .iter()
            .try_fold(Element::zero(self.p, self.q, self.delta()), |acc, x| acc.add(x))
    }

    /// Sparse rows of the coefficient matrix over the canonical diagram order.
    pub fn alpha(&self) -> Vec<Vec<(usize, Rational)>> {
        self.rows
            .iter()
            .map(|x| {
                let mut row: Vec<(usize, Rational)> =
                    x.iter().map(|(d, c)| (d.index(), c.clone())).collect();
                row.sort_by_key(|(j, _)| *j);
                row
            })
            .collect()
    }

    pub fn cache_file_name(p: usize, q: usize, d: usize, symmetry: Symmetry) -> String {
        format!("alpha_{p}_{q}_{d}_{symmetry}.txt")
    }

    pub fn save(&self, path: &FsPath) -> Result<()> {
        let mut f = std::io::BufWriter::new(fs::File::create(path)?);
        writeln!(
            f,
            "{CACHE_MAGIC} {} {} {} {} {}",
            self.p,
            self.q,
            self.d,
            self.symmetry,
            self.len()
        )?;
        for label in &self.labels {
            writeln!(f, "label {}", serde_json::to_string(label)?)?;
        }
        for (i, row) in self.alpha().into_iter().enumerate() {
            for (j, c) in row {
                writeln!(f, "{i} {j} {}", format_rational(&c))?;
            }
        }
        f.flush()?;
        Ok(())
    }

    pub fn load(path: &FsPath) -> Result<Self> {
        let reader = BufReader::new(fs::File::open(path)?);
        let mut lines = reader.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty alpha cache".into()))??;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 6 || fields[0] != CACHE_MAGIC {
            return Err(Error::Parse(format!("bad alpha cache header {header:?}")));
        }
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad number {s:?} in cache header")))
        };
        let (p, q, d) = (num(fields[1])?, num(fields[2])?, num(fields[3])?);
        let symmetry: Symmetry = fields[4].parse()?;
        let n = num(fields[5])?;
        let mut labels = Vec::with_capacity(n);
        let mut rows = vec![Element::zero(p, q, d as u32); n];
        for line in lines {
            let line = line?;
            if let Some(json) = line.strip_prefix("label ") {
                labels.push(serde_json::from_str(json)?);
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.is_empty() {
                continue;
            }
            if parts.len() != 3 {
                return Err(Error::Parse(format!("bad alpha cache line {line:?}")));
            }
            let (i, j) = (num(parts[0])?, num(parts[1])?);
            if i >= n {
                return Err(Error::Parse(format!("row {i} out of range in alpha cache")));
            }
            rows[i].add_term(Diagram::from_index(p, q, j)?, parse_rational(parts[2])?);
        }
        if labels.len() != n {
            return Err(Error::Parse(format!(
                "alpha cache lists {} labels for {n} rows",
                labels.len()
            )));
        }
        Ok(IdempotentSet { p, q, d, symmetry, labels, rows })
    }

    /// Loads from `dir` when a cache file exists there, otherwise builds and
    /// stores the result.
    pub fn load_or_build(
        dir: Option<&FsPath>,
        p: usize,
        q: usize,
        d: usize,
        symmetry: Symmetry,
    ) -> Result<Self> {
        let Some(dir) = dir else {
            return Self::build(p, q, d, symmetry);
        };
        let file: PathBuf = dir.join(Self::cache_file_name(p, q, d, symmetry));
        if file.exists() {
            return Self::load(&file);
        }
        let set = Self::build(p, q, d, symmetry)?;
        fs::create_dir_all(dir)?;
        set.save(&file)?;
        Ok(set)
    }

    /// Diagrammatic consistency checks, meaningful when `d ≥ p + q`:
    /// orthogonality, idempotency and resolution of the identity.
    pub fn diagrammatic_defects(&self) -> Result<Vec<String>> {
        let mut bad = Vec::new();
        let total = self.sum()?;
        if total != Element::identity(self.p, self.q, self.delta()) {
            bad.push("rows do not sum to the identity".to_string());
        }
        let n = self.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let found: Vec<String> = pairs
            .par_iter()
            .filter_map(|&(i, j)| {
                let prod = self.rows[i].mul_unchecked(&self.rows[j]);
                let ok = if i == j { prod == self.rows[i] } else { prod.is_zero() };
                (!ok).then(|| format!("row {i} times row {j}"))
            })
            .collect();
        bad.extend(found);
        Ok(bad)
    }
}
