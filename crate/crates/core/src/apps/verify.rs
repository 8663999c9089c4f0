//! Invariant suite for the idempotents of one `(p, q, d)`.

use num::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::idempotents::{canonical_idempotents, central_idempotents, jm_element, IdempotentSet, Label};
use crate::lattice::edge_content;
use crate::matrep::{tensor_dim, verify_commutant, verify_trace_lift, PsiOracle, MAX_DIM};
use crate::rational::{rat, Rational};

/// How vanishing is decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Exact identities between diagram combinations (`d ≥ p + q`).
    Diagrammatic,
    /// Exact identities after `ψ`, through the Hilbert–Schmidt Gram matrix.
    Matrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub p: usize,
    pub q: usize,
    pub d: usize,
    pub mode: Mode,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

enum Vanishing {
    Exact,
    Psi(Box<PsiOracle>),
}

impl Vanishing {
    fn vanishes(&self, x: &Element) -> bool {
        match self {
            Vanishing::Exact => x.is_zero(),
            Vanishing::Psi(o) => o.vanishes(x),
        }
    }
}

fn check(name: &str, failures: Vec<String>) -> Check {
    Check {
        name: name.to_string(),
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            "ok".to_string()
        } else {
            let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
            format!("{} failure(s): {}", failures.len(), shown.join("; "))
        },
    }
}

fn orthogonality(set: &IdempotentSet, zero: &Vanishing) -> Vec<String> {
    let n = set.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            let name = || format!("{} · {}", set.labels[i], set.labels[j]);
            let diff = set.rows[i].mul(&set.rows[j]).and_then(|prod| {
                if i == j {
                    prod.sub(&set.rows[i])
                } else {
                    Ok(prod)
                }
            });
            match diff {
                Ok(x) => (!zero.vanishes(&x)).then(name),
                Err(e) => Some(format!("{}: {e}", name())),
            }
        })
        .collect()
}

fn resolution(set: &IdempotentSet, zero: &Vanishing) -> Result<Vec<String>> {
    let diff = set.sum()?.sub(&Element::identity(set.p, set.q, set.delta()))?;
    Ok(if zero.vanishes(&diff) { Vec::new() } else { vec!["Σ ε ≠ 1".to_string()] })
}

/// Contents `c_T(1..=n)` of a path label.
pub fn path_contents(label: &Label, p: usize, d: usize) -> Result<Vec<Rational>> {
    let Label::Path(vs) = label else {
        return Err(Error::Invalid(format!("{label} is not a path")));
    };
    vs.windows(2)
        .enumerate()
        .map(|(k, w)| edge_content(&w[0], &w[1], k + 1, p, d as u32))
        .collect()
}

/// `cont(λ^l) + cont(λ^r) + d · |λ^r|` for the leaf of a path.
pub fn leaf_eigenvalue(label: &Label, d: usize) -> Rational {
    let leaf = label.leaf();
    rat(leaf.left.content() + leaf.right.content() + (d * leaf.right.size()) as i64)
}

fn jm_eigenvalues(set: &IdempotentSet, zero: &Vanishing) -> Result<(Vec<String>, Vec<String>)> {
    let n = set.p + set.q;
    let jms: Vec<Element> = (1..=n)
        .map(|k| jm_element(k, set.p, set.q, set.delta()))
        .collect::<Result<_>>()?;
    let total = jms
        .iter()
        .try_fold(Element::zero(set.p, set.q, set.delta()), |acc, j| acc.add(j))?;
    let results: Vec<(Vec<String>, Vec<String>)> = set
        .rows
        .par_iter()
        .zip(&set.labels)
        .map(|(e, label)| {
            let contents = path_contents(label, set.p, set.d)?;
            let mut bad_k = Vec::new();
            for (k, (j, c)) in jms.iter().zip(&contents).enumerate() {
                if !zero.vanishes(&j.mul(e)?.sub(&e.scale(c))?) {
                    bad_k.push(format!("J_{} on {label}", k + 1));
                }
            }
            let mut bad_sum = Vec::new();
            let expected = leaf_eigenvalue(label, set.d);
            let telescoped = contents.iter().fold(Rational::zero(), |acc, c| acc + c);
            if telescoped != expected || !zero.vanishes(&total.mul(e)?.sub(&e.scale(&expected))?) {
                bad_sum.push(format!("Σ J on {label}"));
            }
            Ok((bad_k, bad_sum))
        })
        .collect::<Result<_>>()?;
    Ok(results.into_iter().fold((Vec::new(), Vec::new()), |(mut a, mut b), (x, y)| {
        a.extend(x);
        b.extend(y);
        (a, b)
    }))
}

fn zero_test(p: usize, q: usize, d: usize) -> Result<(Mode, Vanishing)> {
    if d >= p + q {
        return Ok((Mode::Diagrammatic, Vanishing::Exact));
    }
    let dim = tensor_dim(d, p + q)?;
    if dim > MAX_DIM {
        return Err(Error::Bound(format!("d^(p+q) = {dim} exceeds {MAX_DIM}")));
    }
    Ok((Mode::Matrix, Vanishing::Psi(Box::new(PsiOracle::new(p, q, d)?))))
}

/// Orthogonality, idempotency, resolution of the identity and the JM
/// eigenvalue identities for the canonical idempotents, plus orthogonality
/// and resolution for the central ones.
pub fn idempotent_suite(p: usize, q: usize, d: usize) -> Result<SuiteReport> {
    let (mode, zero) = zero_test(p, q, d)?;
    let gt = canonical_idempotents(p, q, d)?;
    let central = central_idempotents(p, q, d)?;
    let (jm, jm_sum) = jm_eigenvalues(&gt, &zero)?;
    let checks = vec![
        check("canonical orthogonality and idempotency", orthogonality(&gt, &zero)),
        check("canonical resolution of the identity", resolution(&gt, &zero)?),
        check("JM eigenvalues", jm),
        check("sum of JM elements", jm_sum),
        check("central orthogonality and idempotency", orthogonality(&central, &zero)),
        check("central resolution of the identity", resolution(&central, &zero)?),
    ];
    Ok(SuiteReport { p, q, d, mode, checks })
}

/// Dimension up to which the commutant check runs on dense matrices.
pub const COMMUTANT_MAX_DIM: usize = 64;

/// The idempotent suite together with trace lifting and, for small
/// dimensions, the commutant check on every canonical idempotent.
pub fn full_suite(p: usize, q: usize, d: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = idempotent_suite(p, q, d)?;
    let lift = verify_trace_lift(200, p, q, d, seed)?;
    report.checks.push(check(
        "trace lifting",
        lift.mismatches,
    ));
    if tensor_dim(d, p + q)? <= COMMUTANT_MAX_DIM {
        let gt = canonical_idempotents(p, q, d)?;
        let mut worst = 0.0f64;
        for e in &gt.rows {
            worst = worst.max(verify_commutant(e, 20, seed)?);
        }
        let failures = if worst < 1e-10 { Vec::new() } else { vec![format!("deviation {worst:e}")] };
        report.checks.push(check("commutant", failures));
    }
    Ok(report)
}
