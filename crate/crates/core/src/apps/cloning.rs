//! Asymmetric `1 → q` cloning: block-diagonal SDP in a Gelfand–Tsetlin frame
//! and its SDPA sparse rendering.

use std::fmt::Write as _;

use nalgebra::DMatrix;
use num::{BigInt, Integer, One, Zero};
use serde::Serialize;

use crate::algebra::Element;
use crate::diagrams::Diagram;
use crate::error::{Error, Result};
use crate::idempotents::{canonical_idempotents, IdempotentSet};
use crate::lattice::Bipartition;
use crate::matrep::{extract_blocks, symmetric_eigenvalues, BlockData};
use crate::rational::{format_decimal, format_rational, rat, to_f64, Rational};

pub const COPIES: usize = 3;

/// Upper-triangle entry `(block, row, col)` of a block variable, 0-based.
pub type BlockEntry = (usize, usize, usize);

#[derive(Clone, Debug)]
pub struct CloningSdp {
    pub q: usize,
    pub d: usize,
    pub seed: u64,
    pub gt: IdempotentSet,
    /// Blocks of the identity followed by `σ̄_{1,i+1}` for `i = 1..=q`,
    /// ordered by block size, then by decreasing multiplicity.
    pub blocks: Vec<BlockData>,
    pub variables: Vec<BlockEntry>,
    /// `Σ trace_coeffs · x = trace_rhs`, divided by the integer content.
    pub trace_coeffs: Vec<Rational>,
    pub trace_rhs: Rational,
    /// `Tr(X σ̄_{1,i+1})` as a linear form in the variables.
    pub overlap_coeffs: Vec<Vec<f64>>,
}

/// `σ̄_{1,k}` in shape `(1, q)`.
pub fn input_output_contraction(k: usize, q: usize, d: usize) -> Result<Element> {
    Ok(Element::from_diagram(Diagram::bar(1, k, 1, q)?, d as u32))
}

/// Symmetriser over the `q` output columns of shape `(1, q)`.
pub fn output_symmetrizer(q: usize, d: usize) -> Result<Element> {
    let delta = d as u32;
    let mut sym = Element::identity(1, q, delta);
    for k in 3..=q + 1 {
        let mut coset = Element::identity(1, q, delta);
        for j in 2..k {
            coset = coset.add(&Element::from_diagram(Diagram::swap(j, k, 1, q)?, delta))?;
        }
        sym = sym.mul(&coset)?;
    }
    let norm: usize = (1..=q).product();
    Ok(sym.scale(&Rational::new(1.into(), (norm as i64).into())))
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Choi matrix `(d / dim Sym^q) · P_sym σ̄_{1,2} P_sym` of the optimal
/// symmetric cloner.
pub fn symmetric_cloner(q: usize, d: usize) -> Result<Element> {
    let sym = output_symmetrizer(q, d)?;
    let x = sym.mul(&input_output_contraction(2, q, d)?)?.mul(&sym)?;
    let dim = binomial(d + q - 1, q);
    Ok(x.scale(&Rational::new((d as i64).into(), (dim as i64).into())))
}

/// Shrinking factor of every marginal of the symmetric cloner.
pub fn symmetric_shrinking(q: usize, d: usize) -> Rational {
    Rational::new(((q + d) as i64).into(), ((q * (d + 1)) as i64).into())
}

fn block_matrix(rows: &[Vec<f64>]) -> DMatrix<f64> {
    let n = rows.len();
    DMatrix::from_fn(n, n, |i, j| rows[i][j])
}

impl CloningSdp {
    pub fn build(q: usize, d: usize, seed: u64) -> Result<Self> {
        if q != COPIES || !(2..=3).contains(&d) {
            return Err(Error::Invalid(format!("cloning supports (q, d) in {{(3, 2), (3, 3)}}, got ({q}, {d})")));
        }
        let gt = canonical_idempotents(1, q, d)?;
        let mut inputs = vec![Element::identity(1, q, d as u32)];
        for k in 2..=q + 1 {
            inputs.push(input_output_contraction(k, q, d)?);
        }
        let refs: Vec<&Element> = inputs.iter().collect();
        let mut blocks = extract_blocks(&refs, &gt, seed)?;
        blocks.sort_by(|a, b| a.d_lambda.cmp(&b.d_lambda).then_with(|| b.m_lambda.cmp(&a.m_lambda)));

        let variables: Vec<BlockEntry> = blocks
            .iter()
            .enumerate()
            .flat_map(|(b, blk)| (0..blk.d_lambda).flat_map(move |i| (i..blk.d_lambda).map(move |j| (b, i, j))))
            .collect();
        let mut trace_coeffs: Vec<Rational> = variables
            .iter()
            .map(|&(b, i, j)| if i == j { blocks[b].m_lambda.clone() } else { Rational::zero() })
            .collect();
        let mut trace_rhs = rat(d as i64);
        if trace_coeffs.iter().all(|c| c.is_integer()) {
            let g = trace_coeffs
                .iter()
                .fold(trace_rhs.numer().clone(), |acc: BigInt, c| acc.gcd(c.numer()));
            if !g.is_zero() && !g.is_one() {
                let g = Rational::from_integer(g);
                for c in trace_coeffs.iter_mut() {
                    *c /= &g;
                }
                trace_rhs /= &g;
            }
        }
        let overlap_coeffs = (1..=q)
            .map(|k| {
                variables
                    .iter()
                    .map(|&(b, i, j)| {
                        let m = to_f64(&blocks[b].m_lambda);
                        let y = &blocks[b].entries[k];
                        if i == j {
                            m * y[i][i]
                        } else {
                            m * (y[i][j] + y[j][i])
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(CloningSdp { q, d, seed, gt, blocks, variables, trace_coeffs, trace_rhs, overlap_coeffs })
    }

    pub fn leaves(&self) -> Vec<Bipartition> {
        self.blocks.iter().map(|b| b.leaf.clone()).collect()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.d_lambda).collect()
    }

    /// Trace-row coefficients of the diagonal variables, grouped by block.
    pub fn trace_diagonal(&self) -> Vec<Vec<Rational>> {
        let mut out: Vec<Vec<Rational>> = self.blocks.iter().map(|_| Vec::new()).collect();
        for (&(b, i, j), c) in self.variables.iter().zip(&self.trace_coeffs) {
            if i == j {
                out[b].push(c.clone());
            }
        }
        out
    }

    /// Blocks of `x` in the frame of this emission.
    pub fn blocks_of(&self, x: &Element) -> Result<Vec<DMatrix<f64>>> {
        let raw = extract_blocks(&[x], &self.gt, self.seed)?;
        self.blocks
            .iter()
            .map(|b| {
                raw.iter()
                    .find(|r| r.leaf == b.leaf)
                    .map(|r| block_matrix(&r.entries[0]))
                    .ok_or_else(|| Error::Verification(format!("leaf {} missing from the frame", b.leaf)))
            })
            .collect()
    }

    /// Variable vector read off block matrices.
    pub fn flatten(&self, blocks: &[DMatrix<f64>]) -> Vec<f64> {
        self.variables.iter().map(|&(b, i, j)| blocks[b][(i, j)]).collect()
    }

    /// Marginal shrinking factors `p_i = (Tr(X σ̄_{1,i+1}) − 1) / (d² − 1)`.
    pub fn marginals(&self, x: &[f64]) -> Vec<f64> {
        let scale = (self.d * self.d - 1) as f64;
        self.overlap_coeffs
            .iter()
            .map(|row| (row.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() - 1.0) / scale)
            .collect()
    }

    pub fn trace_value(&self, x: &[f64]) -> f64 {
        self.trace_coeffs.iter().zip(x).map(|(a, b)| to_f64(a) * b).sum()
    }

    /// Whether block matrices satisfy every constraint of the emitted SDP
    /// with marginals `targets`, to tolerance `tol`.
    pub fn is_feasible(&self, blocks: &[DMatrix<f64>], targets: &[f64], tol: f64) -> bool {
        let x = self.flatten(blocks);
        let psd = blocks.iter().all(|m| {
            let sym = (m + m.transpose()) * 0.5;
            symmetric_eigenvalues(sym).first().is_none_or(|&e| e >= -tol)
        });
        let trace_ok = (self.trace_value(&x) - to_f64(&self.trace_rhs)).abs() <= tol;
        let marg_ok = self
            .marginals(&x)
            .iter()
            .zip(targets)
            .all(|(a, b)| (a - b).abs() <= tol);
        psd && trace_ok && marg_ok && targets.len() == self.q
    }

    /// SDPA sparse text for the feasibility problem with marginals `targets`.
    /// Equalities sit in a final diagonal block as pairs of inequalities.
    pub fn to_sdpa(&self, targets: &[f64], digits: usize) -> Result<String> {
        if targets.len() != self.q {
            return Err(Error::Invalid(format!("expected {} marginal targets, got {}", self.q, targets.len())));
        }
        let fmt = |x: f64| format_decimal(x, digits);
        let m = self.variables.len();
        let nb = self.blocks.len();
        let lp_block = nb + 1;
        let scale = (self.d * self.d - 1) as f64;
        let mut rows: Vec<(Vec<f64>, f64)> = vec![(self.trace_coeffs.iter().map(to_f64).collect(), to_f64(&self.trace_rhs))];
        for (row, t) in self.overlap_coeffs.iter().zip(targets) {
            rows.push((row.clone(), t * scale + 1.0));
        }
        let mut s = String::new();
        let _ = writeln!(s, "\"asymmetric cloning 1 -> {}, d = {}, marginals {:?}", self.q, self.d, targets);
        let _ = writeln!(s, "{m}");
        let _ = writeln!(s, "{}", nb + 1);
        let sizes: Vec<String> = self.block_sizes().iter().map(|b| b.to_string()).collect();
        let _ = writeln!(s, "{} -{}", sizes.join(" "), 2 * rows.len());
        let _ = writeln!(s, "{}", vec!["0"; m].join(" "));
        for (r, (_, rhs)) in rows.iter().enumerate() {
            if *rhs != 0.0 {
                let _ = writeln!(s, "0 {lp_block} {} {} {}", 2 * r + 1, 2 * r + 1, fmt(*rhs));
                let _ = writeln!(s, "0 {lp_block} {} {} {}", 2 * r + 2, 2 * r + 2, fmt(-*rhs));
            }
        }
        for (k, &(b, i, j)) in self.variables.iter().enumerate() {
            let _ = writeln!(s, "{} {} {} {} 1", k + 1, b + 1, i + 1, j + 1);
            for (r, (coeffs, _)) in rows.iter().enumerate() {
                let c = coeffs[k];
                if c != 0.0 {
                    let _ = writeln!(s, "{} {lp_block} {} {} {}", k + 1, 2 * r + 1, 2 * r + 1, fmt(c));
                    let _ = writeln!(s, "{} {lp_block} {} {} {}", k + 1, 2 * r + 2, 2 * r + 2, fmt(-c));
                }
            }
        }
        Ok(s)
    }

    pub fn sidecar(&self, targets: &[f64]) -> CloningSidecar {
        CloningSidecar {
            q: self.q,
            d: self.d,
            seed: self.seed,
            leaves: self.leaves().iter().map(|l| l.to_string()).collect(),
            block_sizes: self.block_sizes(),
            multiplicities: self.blocks.iter().map(|b| format_rational(&b.m_lambda)).collect(),
            variables: self.variables.iter().map(|&(b, i, j)| [b + 1, i + 1, j + 1]).collect(),
            trace_coefficients: self.trace_coeffs.iter().map(format_rational).collect(),
            trace_rhs: format_rational(&self.trace_rhs),
            overlap_coefficients: self.overlap_coeffs.clone(),
            marginal_denominator: self.d * self.d - 1,
            targets: targets.to_vec(),
        }
    }
}

/// Exact companion of the SDPA file.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CloningSidecar {
    pub q: usize,
    pub d: usize,
    pub seed: u64,
    pub leaves: Vec<String>,
    pub block_sizes: Vec<usize>,
    pub multiplicities: Vec<String>,
    /// 1-based `(block, row, col)` of each variable.
    pub variables: Vec<[usize; 3]>,
    pub trace_coefficients: Vec<String>,
    pub trace_rhs: String,
    pub overlap_coefficients: Vec<Vec<f64>>,
    pub marginal_denominator: usize,
    pub targets: Vec<f64>,
}

/// `σ x σ` for the swap of outputs `i` and `j` (1-based output indices).
pub fn permute_outputs(x: &Element, i: usize, j: usize) -> Result<Element> {
    let (p, q) = x.shape();
    let s = Element::from_diagram(Diagram::swap(p + i, p + j, p, q)?, x.delta());
    s.mul(x)?.mul(&s)
}
