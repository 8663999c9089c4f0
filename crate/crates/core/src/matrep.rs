//! The explicit tensor representation `ψ` on `(C^d)^{⊗(p+q)}`, used as a
//! brute-force oracle, plus block extraction in a Gelfand–Tsetlin frame.
//!
//! Matrix rows are indexed by the labels of the top row of nodes and columns
//! by the labels of the bottom row; the first column of a diagram is the most
//! significant tensor digit. With this choice `ψ(a∘b) = ψ(a)ψ(b)` when `a` is
//! stacked above `b`.

use std::collections::{BTreeMap, HashMap};

use nalgebra::{Complex, DMatrix};
use num::{BigInt, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Element;
use crate::diagrams::{enumerate_diagrams, factorial, Diagram};
use crate::error::{Error, Result};
use crate::idempotents::{IdempotentSet, Label, Symmetry};
use crate::lattice::{Bipartition, BratteliGraph, Family};
use crate::rational::{lcm_denominators, to_f64, Rational};

/// Largest matrix dimension the oracle agrees to build.
pub const MAX_DIM: usize = 4096;

pub fn tensor_dim(d: usize, n: usize) -> Result<usize> {
    let mut dim: usize = 1;
    for _ in 0..n {
        dim = dim
            .checked_mul(d)
            .filter(|&x| x <= MAX_DIM)
            .ok_or_else(|| Error::Bound(format!("{d}^{n} exceeds the oracle bound {MAX_DIM}")))?;
    }
    Ok(dim)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    dim: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SparseMatrix {
    pub fn zeros(dim: usize) -> Self {
        SparseMatrix { dim, entries: BTreeMap::new() }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries.insert((i, i), Rational::one());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.entries.iter()
    }

    pub fn add_entry(&mut self, r: usize, c: usize, v: Rational) {
        if v.is_zero() {
            return;
        }
        let e = self.entries.entry((r, c)).or_insert_with(Rational::zero);
        *e += v;
        if e.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    fn check_dim(&self, other: &SparseMatrix) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Shape(format!("matrix dimensions {} and {} differ", self.dim, other.dim)));
        }
        Ok(())
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (&(r, c), v) in &other.entries {
            out.add_entry(r, c, v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> SparseMatrix {
        if s.is_zero() {
            return Self::zeros(self.dim);
        }
        SparseMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|(k, v)| (*k, v * s)).collect(),
        }
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.check_dim(other)?;
        let mut rows: HashMap<usize, Vec<(usize, &Rational)>> = HashMap::new();
        for (&(r, c), v) in &other.entries {
            rows.entry(r).or_default().push((c, v));
        }
        let mut out = Self::zeros(self.dim);
        for (&(i, k), a) in &self.entries {
            if let Some(row) = rows.get(&k) {
                for (j, b) in row {
                    out.add_entry(i, *j, a * *b);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> SparseMatrix {
        SparseMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|(&(r, c), v)| ((c, r), v.clone())).collect(),
        }
    }

    pub fn trace(&self) -> Rational {
        self.entries
            .iter()
            .filter(|((r, c), _)| r == c)
            .fold(Rational::zero(), |acc, (_, v)| acc + v)
    }

    /// Partial trace over the 1-based tensor factors in `subset` of an
    /// `n`-fold tensor power of `C^d`.
    pub fn partial_trace(&self, d: usize, n: usize, subset: &[usize]) -> Result<SparseMatrix> {
        if d.pow(n as u32) != self.dim {
            return Err(Error::Shape(format!("dimension {} is not {d}^{n}", self.dim)));
        }
        let mut traced = vec![false; n];
        for &s in subset {
            if s == 0 || s > n {
                return Err(Error::Invalid(format!("factor {s} outside 1..={n}")));
            }
            traced[s - 1] = true;
        }
        let kept = traced.iter().filter(|&&t| !t).count();
        let mut out = Self::zeros(d.pow(kept as u32));
        for (&(r, c), v) in &self.entries {
            let (rd, cd) = (digits(r, d, n), digits(c, d, n));
            if (0..n).any(|i| traced[i] && rd[i] != cd[i]) {
                continue;
            }
            let keep = |ds: &[usize]| (0..n).filter(|&i| !traced[i]).fold(0, |acc, i| acc * d + ds[i]);
            out.add_entry(keep(&rd), keep(&cd), v.clone());
        }
        Ok(out)
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (&(r, c), v) in &self.entries {
            m[(r, c)] = to_f64(v);
        }
        m
    }

    pub fn to_complex(&self) -> DMatrix<Complex<f64>> {
        self.to_dense().map(|x| Complex::new(x, 0.0))
    }
}

fn digits(mut x: usize, d: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for i in (0..n).rev() {
        out[i] = x % d;
        x /= d;
    }
    out
}

/// Positions of the ones of `ψ(σ)` with local dimension `d`.
pub fn psi_pattern(sigma: &Diagram, d: usize) -> Result<Vec<(usize, usize)>> {
    let n = sigma.n();
    tensor_dim(d, n)?;
    let inv: Vec<usize> = sigma.involution().collect();
    let pairs: Vec<(usize, usize)> = (0..2 * n).filter(|&x| x < inv[x]).map(|x| (x, inv[x])).collect();
    let place = |node: usize| -> (bool, usize) {
        if node < n {
            (true, n - 1 - node)
        } else {
            (false, 2 * n - 1 - node)
        }
    };
    let weights: Vec<usize> = (0..n).map(|e| d.pow(e as u32)).collect();
    let contrib: Vec<[(usize, usize); 2]> = pairs
        .iter()
        .map(|&(a, b)| {
            let mut w = [(0usize, 0usize); 2];
            for (slot, node) in [a, b].into_iter().enumerate() {
                let (top, e) = place(node);
                w[slot] = if top { (weights[e], 0) } else { (0, weights[e]) };
            }
            w
        })
        .collect();
    let mut out = Vec::with_capacity(d.pow(n as u32));
    let mut labels = vec![0usize; pairs.len()];
    loop {
        let (mut r, mut c) = (0, 0);
        for (w, &l) in contrib.iter().zip(&labels) {
            for &(wr, wc) in w {
                r += wr * l;
                c += wc * l;
            }
        }
        out.push((r, c));
        let mut i = 0;
        loop {
            if i == labels.len() {
                out.sort_unstable();
                return Ok(out);
            }
            labels[i] += 1;
            if labels[i] < d {
                break;
            }
            labels[i] = 0;
            i += 1;
        }
    }
}

/// `ψ(σ)` as an exact 0/1 matrix.
pub fn psi(sigma: &Diagram, d: usize) -> Result<SparseMatrix> {
    let dim = tensor_dim(d, sigma.n())?;
    let mut m = SparseMatrix::zeros(dim);
    for (r, c) in psi_pattern(sigma, d)? {
        m.entries.insert((r, c), Rational::one());
    }
    Ok(m)
}

/// Linear extension of `ψ` with local dimension `δ` of the element.
pub fn psi_element(x: &Element) -> Result<SparseMatrix> {
    let d = x.delta() as usize;
    let dim = tensor_dim(d, x.p() + x.q())?;
    let den = lcm_denominators(x.iter().map(|(_, c)| c));
    let mut acc: HashMap<(usize, usize), BigInt> = HashMap::new();
    for (sigma, c) in x.iter() {
        let v = c.numer() * (&den / c.denom());
        for rc in psi_pattern(sigma, d)? {
            *acc.entry(rc).or_insert_with(BigInt::zero) += &v;
        }
    }
    let mut m = SparseMatrix::zeros(dim);
    for (rc, v) in acc {
        if !v.is_zero() {
            m.entries.insert(rc, Rational::new(v, den.clone()));
        }
    }
    Ok(m)
}

/// Explicit-matrix data for one `(p, q, d)`: every `ψ(σ)` and the
/// Hilbert–Schmidt Gram matrix of the spanning set.
pub struct PsiOracle {
    pub p: usize,
    pub q: usize,
    pub d: usize,
    patterns: Vec<Vec<(usize, usize)>>,
    gram: Vec<Vec<i64>>,
}

impl PsiOracle {
    pub fn new(p: usize, q: usize, d: usize) -> Result<Self> {
        tensor_dim(d, p + q)?;
        let patterns = enumerate_diagrams(p, q)?
            .iter()
            .map(|s| psi_pattern(s, d))
            .collect::<Result<Vec<_>>>()?;
        let gram = patterns
            .par_iter()
            .map(|a| patterns.iter().map(|b| overlap(a, b) as i64).collect())
            .collect();
        Ok(PsiOracle { p, q, d, patterns, gram })
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn pattern(&self, index: usize) -> &[(usize, usize)] {
        &self.patterns[index]
    }

    /// Squared Frobenius norm of `ψ(x)`.
    pub fn norm_squared(&self, x: &Element) -> Rational {
        let den = lcm_denominators(x.iter().map(|(_, c)| c));
        let coeffs: Vec<(usize, BigInt)> = x
            .iter()
            .map(|(s, c)| (s.index(), c.numer() * (&den / c.denom())))
            .collect();
        let mut total = BigInt::zero();
        for (i, a) in &coeffs {
            for (j, b) in &coeffs {
                total += a * b * self.gram[*i][*j];
            }
        }
        Rational::new(total, &den * &den)
    }

    /// True when `ψ(x) = 0`, equivalently when the Gram matrix annihilates
    /// the coefficient vector.
    pub fn vanishes(&self, x: &Element) -> bool {
        let den = lcm_denominators(x.iter().map(|(_, c)| c));
        let coeffs: Option<Vec<(usize, i128)>> = x
            .iter()
            .map(|(s, c)| Some((s.index(), i128::try_from(c.numer() * (&den / c.denom())).ok()?)))
            .collect();
        let Some(coeffs) = coeffs else {
            return self.norm_squared(x).is_zero();
        };
        let image = self.gram.iter().try_fold(true, |zero, row| {
            let v = coeffs
                .iter()
                .try_fold(0i128, |acc, &(j, c)| acc.checked_add(c.checked_mul(row[j] as i128)?))?;
            Some(zero && v == 0)
        });
        match image {
            Some(z) => z,
            None => self.norm_squared(x).is_zero(),
        }
    }

    /// Dimension of the span of all `ψ(σ)`.
    pub fn span_rank(&self) -> usize {
        let rows = self
            .gram
            .iter()
            .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
            .collect();
        rational_rank(rows)
    }
}

fn overlap(a: &[(usize, usize)], b: &[(usize, usize)]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Exact rank by Gaussian elimination.
pub fn rational_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pivot_row[col];
            for (x, y) in row[col..ncols].iter_mut().zip(&pivot_row[col..ncols]) {
                *x -= &f * y;
            }
        }
        rank += 1;
    }
    rank
}

/// `Σ_λ d_λ²` over the leaves of the truncated family.
pub fn algebra_dimension(p: usize, q: usize, d: usize) -> Result<u128> {
    let g = BratteliGraph::build(p, q, Family::Truncated { d: d as u32 })?;
    Ok(g.leaf_dimensions().iter().map(|(_, x)| x * x).sum())
}

#[derive(Clone, Debug, Default)]
pub struct TraceLiftReport {
    pub checked: usize,
    pub mismatches: Vec<String>,
}

/// Compares matrix traces and partial traces of `ψ(σ)` with their
/// diagrammatic counterparts on random diagrams and random subsets.
pub fn verify_trace_lift(samples: usize, p: usize, q: usize, d: usize, seed: u64) -> Result<TraceLiftReport> {
    let n = p + q;
    tensor_dim(d, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = factorial(n);
    let mut report = TraceLiftReport::default();
    for _ in 0..samples {
        let sigma = Diagram::from_index(p, q, rng.random_range(0..total))?;
        let subset: Vec<usize> = (1..=n).filter(|_| rng.random_bool(0.5)).collect();
        let m = psi(&sigma, d)?;
        let expect = Rational::from_integer(BigInt::from(d).pow(sigma.trace()));
        if m.trace() != expect {
            report.mismatches.push(format!("trace of {sigma}"));
        }
        let (loops, rest) = sigma.partial_trace(&subset)?;
        let lhs = m.partial_trace(d, n, &subset)?;
        let rhs = psi(&rest, d)?.scale(&Rational::from_integer(BigInt::from(d).pow(loops)));
        if lhs != rhs {
            report.mismatches.push(format!("partial trace of {sigma} over {subset:?}"));
        }
        report.checked += 1;
    }
    Ok(report)
}

/// Haar-random `d × d` unitary.
pub fn haar_unitary(d: usize, rng: &mut impl Rng) -> DMatrix<Complex<f64>> {
    let g = DMatrix::from_fn(d, d, |_, _| {
        Complex::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
    });
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    let phases = DMatrix::from_fn(d, d, |i, j| {
        if i == j {
            let x = r[(i, i)];
            x / Complex::new(x.norm(), 0.0)
        } else {
            Complex::new(0.0, 0.0)
        }
    });
    q * phases
}

/// `U^{⊗p} ⊗ Ū^{⊗q}`.
pub fn mixed_tensor_power(u: &DMatrix<Complex<f64>>, p: usize, q: usize) -> DMatrix<Complex<f64>> {
    let ubar = u.map(|z| z.conj());
    let mut out = DMatrix::from_element(1, 1, Complex::new(1.0, 0.0));
    for i in 0..p + q {
        out = out.kronecker(if i < p { u } else { &ubar });
    }
    out
}

/// Largest Frobenius norm of `[m, U^{⊗p} ⊗ Ū^{⊗q}]` over Haar samples.
pub fn commutant_deviation(
    m: &DMatrix<Complex<f64>>,
    p: usize,
    q: usize,
    d: usize,
    trials: usize,
    seed: u64,
) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| {
            let w = mixed_tensor_power(&haar_unitary(d, &mut rng), p, q);
            (m * &w - &w * m).norm()
        })
        .fold(0.0, f64::max)
}

pub fn verify_commutant(x: &Element, trials: usize, seed: u64) -> Result<f64> {
    let m = psi_element(x)?.to_complex();
    Ok(commutant_deviation(&m, x.p(), x.q(), x.delta() as usize, trials, seed))
}

/// Block of one irreducible in a Gelfand–Tsetlin frame.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BlockData {
    pub leaf: Bipartition,
    pub d_lambda: usize,
    #[serde(serialize_with = "crate::matrep::ser_rational")]
    pub m_lambda: Rational,
    /// One `d_λ × d_λ` matrix per input element.
    pub entries: Vec<Vec<Vec<f64>>>,
    /// Exact diagonals, one per input element.
    #[serde(skip)]
    pub diagonals: Vec<Vec<Rational>>,
    pub seed: u64,
}

pub(crate) fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::rational::format_rational(r))
}

const PROBE_RETRIES: usize = 16;

fn random_probe(p: usize, q: usize, delta: u32, rng: &mut ChaCha8Rng) -> Result<Element> {
    let diagrams = enumerate_diagrams(p, q)?;
    let r = Element::from_terms(
        p,
        q,
        delta,
        diagrams
            .into_iter()
            .map(|s| (s, Rational::from_integer(rng.random_range(-9i64..=9).into()))),
    )?;
    r.add(&r.adjoint())
}

/// Blocks of self-adjoint elements in the frame fixed by the first path to
/// every leaf and a random self-adjoint probe.
pub fn extract_blocks(xs: &[&Element], gt: &IdempotentSet, seed: u64) -> Result<Vec<BlockData>> {
    if gt.symmetry != Symmetry::GelfandTsetlin {
        return Err(Error::Invalid("block extraction needs the canonical idempotents".into()));
    }
    for x in xs {
        if (x.p(), x.q(), x.delta() as usize) != (gt.p, gt.q, gt.d) {
            return Err(Error::Shape("input element does not match the idempotent set".into()));
        }
    }
    let mut groups: Vec<(Bipartition, Vec<usize>)> = Vec::new();
    for (i, label) in gt.labels.iter().enumerate() {
        let Label::Path(_) = label else {
            return Err(Error::Invalid("expected path labels".into()));
        };
        match groups.iter_mut().find(|(l, _)| l == label.leaf()) {
            Some((_, v)) => v.push(i),
            None => groups.push((label.leaf().clone(), vec![i])),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..PROBE_RETRIES {
        let probe = random_probe(gt.p, gt.q, gt.delta(), &mut rng)?;
        let attempt: Result<Option<Vec<BlockData>>> = groups
            .par_iter()
            .map(|(leaf, idx)| leaf_block(xs, gt, leaf, idx, &probe, seed))
            .collect::<Result<Vec<_>>>()
            .map(|v| v.into_iter().collect());
        if let Some(blocks) = attempt? {
            return Ok(blocks);
        }
    }
    Err(Error::Verification(format!(
        "no usable probe after {PROBE_RETRIES} attempts"
    )))
}

fn leaf_block(
    xs: &[&Element],
    gt: &IdempotentSet,
    leaf: &Bipartition,
    idx: &[usize],
    probe: &Element,
    seed: u64,
) -> Result<Option<BlockData>> {
    let eps: Vec<&Element> = idx.iter().map(|&i| &gt.rows[i]).collect();
    let m = eps[0].trace();
    for e in &eps[1..] {
        if e.trace() != m {
            return Err(Error::Verification(format!("traces differ across paths to {leaf}")));
        }
    }
    if m.is_zero() {
        return Err(Error::Verification(format!("leaf {leaf} has zero multiplicity")));
    }
    let n = eps.len();
    let e1g = eps[0].mul(probe)?;
    let mut a = vec![eps[0].clone()];
    let mut b = vec![eps[0].clone()];
    let mut s = vec![Rational::one()];
    for e in &eps[1..] {
        let ai = e1g.mul(e)?;
        let bi = e.mul(probe)?.mul(eps[0])?;
        let si = ai.trace_product(&bi)? / &m;
        if si.is_zero() {
            return Ok(None);
        }
        if si.is_negative() {
            return Err(Error::Verification(format!("negative normalisation at {leaf}")));
        }
        a.push(ai);
        b.push(bi);
        s.push(si);
    }
    let mut entries = Vec::with_capacity(xs.len());
    let mut diagonals = Vec::with_capacity(xs.len());
    for x in xs {
        let mut block = vec![vec![0.0; n]; n];
        let mut diag = Vec::with_capacity(n);
        for i in 0..n {
            let v = x.trace_product(eps[i])? / &m;
            block[i][i] = to_f64(&v);
            diag.push(v);
        }
        for j in 0..n {
            let xb = x.mul(&b[j])?;
            for i in 0..n {
                if i == j {
                    continue;
                }
                let r = xb.trace_product(&a[i])? / &m;
                block[i][j] = to_f64(&r) / (to_f64(&s[i]) * to_f64(&s[j])).sqrt();
            }
        }
        entries.push(block);
        diagonals.push(diag);
    }
    Ok(Some(BlockData {
        leaf: leaf.clone(),
        d_lambda: n,
        m_lambda: m,
        entries,
        diagonals,
        seed,
    }))
}

/// Eigenvalues of a real symmetric matrix, ascending.
pub fn symmetric_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    let mut v: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    v.sort_by(|a, b| a.total_cmp(b));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn swap_and_contraction() {
        let swap = psi(&Diagram::transposition(1, 2, 0).unwrap(), 2).unwrap();
        let want: Vec<(usize, usize)> = vec![(0, 0), (1, 2), (2, 1), (3, 3)];
        assert_eq!(swap.entries().map(|(k, _)| *k).collect::<Vec<_>>(), want);
        let c = psi(&Diagram::contraction(1, 1).unwrap(), 2).unwrap();
        let want: Vec<(usize, usize)> = vec![(0, 0), (0, 3), (3, 0), (3, 3)];
        assert_eq!(c.entries().map(|(k, _)| *k).collect::<Vec<_>>(), want);
        assert_eq!(psi(&Diagram::identity(2, 1), 3).unwrap(), SparseMatrix::identity(27));
    }

    #[test]
    fn homomorphism_on_samples() {
        let all = enumerate_diagrams(2, 1).unwrap();
        for a in &all {
            for b in &all {
                let (c, loops) = a.compose(b).unwrap();
                let lhs = psi(a, 2).unwrap().mul(&psi(b, 2).unwrap()).unwrap();
                let rhs = psi(&c, 2).unwrap().scale(&rat(2i64.pow(loops)));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn antisymmetrizer_vanishes_at_d2() {
        let diagrams = enumerate_diagrams(3, 0).unwrap();
        let terms = diagrams.into_iter().map(|s| {
            let perm = s.partial_transpose().to_permutation().unwrap();
            let inv = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
            (s, rat(if inv % 2 == 0 { 1 } else { -1 }))
        });
        let x = Element::from_terms(3, 0, 2, terms).unwrap();
        assert!(psi_element(&x).unwrap().is_zero());
        assert!(PsiOracle::new(3, 0, 2).unwrap().vanishes(&x));
    }

    #[test]
    fn dimensions() {
        assert_eq!(algebra_dimension(2, 2, 2).unwrap(), 14);
        assert_eq!(algebra_dimension(2, 1, 3).unwrap(), 6);
        assert_eq!(algebra_dimension(3, 1, 4).unwrap(), 24);
        assert_eq!(PsiOracle::new(2, 2, 2).unwrap().span_rank(), 14);
    }

    #[test]
    fn trace_lift_small() {
        let r = verify_trace_lift(50, 2, 1, 2, 7).unwrap();
        assert_eq!(r.checked, 50);
        assert!(r.mismatches.is_empty(), "{:?}", r.mismatches);
    }
}
