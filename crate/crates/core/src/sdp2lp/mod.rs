//! Conversion of unitary-equivariant SDPs into LPs over the coefficients of
//! a fixed family of orthogonal idempotents, with every trace evaluated by
//! diagram contraction.

pub mod lpfile;
pub mod simplex;

use std::collections::{HashMap, HashSet};

use num::{BigInt, One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::Element;
use crate::diagrams::{factorial, Diagram};
use crate::error::{Error, Result};
use crate::idempotents::{IdempotentSet, Symmetry};
use crate::rational::{format_rational, parse_rational, Rational};

pub use simplex::{LpSolution, LpStatus};

/// One summand of a matrix expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    /// `coeff · ψ(diagram)`.
    Diagram { diagram: Diagram, coeff: Rational },
    /// `coeff · |ket⟩⟨bra|`, labels 1-based.
    RankOne { ket: Vec<usize>, bra: Vec<usize>, coeff: Rational },
}

pub type MatrixExpr = Vec<Term>;

#[derive(Clone, Debug, PartialEq)]
pub struct Inequality {
    pub a: MatrixExpr,
    pub b: Rational,
    pub scalars: Vec<Rational>,
}

/// `Tr_S X = ψ(target)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialTraceConstraint {
    pub subset: Vec<usize>,
    pub target: Element,
}

/// Maximise `Tr(C X) + f·y` subject to `Tr(A_k X) + g_k·y ≤ b_k`,
/// partial-trace equalities, `X ⪰ 0`, `y ≥ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SdpSpec {
    pub p: usize,
    pub q: usize,
    pub d: usize,
    pub symmetry: Symmetry,
    pub objective: MatrixExpr,
    pub objective_scalars: Vec<Rational>,
    pub inequalities: Vec<Inequality>,
    pub partial_traces: Vec<PartialTraceConstraint>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawTerm {
    Diagram { diagram: String, coeff: String },
    RankOne { ket: Vec<usize>, bra: Vec<usize>, coeff: String },
}

#[derive(Serialize, Deserialize)]
struct RawInequality {
    #[serde(rename = "A")]
    a: Vec<RawTerm>,
    b: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    scalars: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct RawPartialTrace {
    #[serde(rename = "S")]
    s: Vec<usize>,
    #[serde(rename = "D")]
    d: Vec<RawTerm>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct RawSpec {
    p: usize,
    q: usize,
    d: usize,
    symmetry: Symmetry,
    #[serde(default)]
    objective: Vec<RawTerm>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    objective_scalars: Vec<String>,
    #[serde(default)]
    inequalities: Vec<RawInequality>,
    #[serde(default)]
    partial_traces: Vec<RawPartialTrace>,
}

fn raw_term(t: &Term) -> RawTerm {
    match t {
        Term::Diagram { diagram, coeff } => RawTerm::Diagram {
            diagram: diagram.to_string(),
            coeff: format_rational(coeff),
        },
        Term::RankOne { ket, bra, coeff } => RawTerm::RankOne {
            ket: ket.clone(),
            bra: bra.clone(),
            coeff: format_rational(coeff),
        },
    }
}

impl SdpSpec {
    pub fn n(&self) -> usize {
        self.p + self.q
    }

    pub fn n_scalars(&self) -> usize {
        self.objective_scalars.len()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawSpec = serde_json::from_str(text).map_err(|e| Error::Spec(e.to_string()))?;
        let (p, q, d) = (raw.p, raw.q, raw.d);
        if p + q == 0 || d < 2 {
            return Err(Error::Spec(format!("need p+q >= 1 and d >= 2, got ({p},{q},{d})")));
        }
        let term = |t: &RawTerm| -> Result<Term> {
            match t {
                RawTerm::Diagram { diagram, coeff } => {
                    let s: Diagram = diagram.parse()?;
                    if s.shape() != (p, q) {
                        return Err(Error::Spec(format!("diagram {s} is not of shape ({p},{q})")));
                    }
                    Ok(Term::Diagram { diagram: s, coeff: parse_rational(coeff)? })
                }
                RawTerm::RankOne { ket, bra, coeff } => {
                    for v in [ket, bra] {
                        if v.len() != p + q || v.iter().any(|&x| x == 0 || x > d) {
                            return Err(Error::Spec(format!(
                                "labels {v:?} must be {} values in 1..={d}",
                                p + q
                            )));
                        }
                    }
                    Ok(Term::RankOne { ket: ket.clone(), bra: bra.clone(), coeff: parse_rational(coeff)? })
                }
            }
        };
        let expr = |v: &[RawTerm]| v.iter().map(term).collect::<Result<Vec<_>>>();
        let rats = |v: &[String]| v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>();
        let objective_scalars = rats(&raw.objective_scalars)?;
        let mut inequalities = Vec::new();
        for ineq in &raw.inequalities {
            let mut scalars = rats(&ineq.scalars)?;
            if scalars.len() > objective_scalars.len() {
                return Err(Error::Spec(format!(
                    "inequality uses {} scalars but the objective declares {}",
                    scalars.len(),
                    objective_scalars.len()
                )));
            }
            scalars.resize(objective_scalars.len(), Rational::zero());
            inequalities.push(Inequality { a: expr(&ineq.a)?, b: parse_rational(&ineq.b)?, scalars });
        }
        let mut partial_traces = Vec::new();
        for pt in &raw.partial_traces {
            let mut subset = pt.s.clone();
            subset.sort_unstable();
            subset.dedup();
            if subset.len() != pt.s.len() || subset.iter().any(|&c| c == 0 || c > p + q) {
                return Err(Error::Spec(format!("bad partial-trace subset {:?}", pt.s)));
            }
            let kp = (1..=p).filter(|c| !subset.contains(c)).count();
            let kq = (p + 1..=p + q).filter(|c| !subset.contains(c)).count();
            let mut target = Element::zero(kp, kq, d as u32);
            for t in &pt.d {
                let RawTerm::Diagram { diagram, coeff } = t else {
                    return Err(Error::Spec("partial-trace targets must be diagram combinations".into()));
                };
                let s: Diagram = diagram.parse()?;
                if s.shape() != (kp, kq) {
                    return Err(Error::Spec(format!(
                        "target diagram {s} is not of residual shape ({kp},{kq})"
                    )));
                }
                target.add_term(s, parse_rational(coeff)?);
            }
            partial_traces.push(PartialTraceConstraint { subset, target });
        }
        let spec = SdpSpec {
            p,
            q,
            d,
            symmetry: raw.symmetry,
            objective: expr(&raw.objective)?,
            objective_scalars,
            inequalities,
            partial_traces,
        };
        spec.check_dimension()?;
        Ok(spec)
    }

    /// Residual algebras of the partial-trace constraints must act
    /// faithfully, which needs `d ≥ p + q − |S|`.
    pub fn check_dimension(&self) -> Result<()> {
        if let Some(min) = self.partial_traces.iter().map(|c| c.subset.len()).min() {
            let need = self.n() - min;
            if self.d < need {
                return Err(Error::Spec(format!(
                    "d = {} is below p+q-min|S| = {need}; the residual representation has a kernel \
                     and coefficient matching would not be equivalent",
                    self.d
                )));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        let raw = RawSpec {
            p: self.p,
            q: self.q,
            d: self.d,
            symmetry: self.symmetry,
            objective: self.objective.iter().map(raw_term).collect(),
            objective_scalars: self.objective_scalars.iter().map(format_rational).collect(),
            inequalities: self
                .inequalities
                .iter()
                .map(|i| RawInequality {
                    a: i.a.iter().map(raw_term).collect(),
                    b: format_rational(&i.b),
                    scalars: i.scalars.iter().map(format_rational).collect(),
                })
                .collect(),
            partial_traces: self
                .partial_traces
                .iter()
                .map(|c| RawPartialTrace {
                    s: c.subset.clone(),
                    d: c
                        .target
                        .terms()
                        .into_iter()
                        .map(|(s, x)| RawTerm::Diagram { diagram: s.to_string(), coeff: format_rational(x) })
                        .collect(),
                })
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&raw)?)
    }
}

/// `ψ(σ)` at row labels `bra` (top) and column labels `ket` (bottom).
pub fn psi_entry(sigma: &Diagram, bra: &[usize], ket: &[usize]) -> bool {
    let n = sigma.n();
    let label = |node: usize| if node < n { bra[node] } else { ket[node - n] };
    sigma
        .involution()
        .enumerate()
        .all(|(x, y)| label(x) == label(y))
}

/// `Tr(T ψ(σ))` for a single term.
pub fn term_trace(term: &Term, sigma: &Diagram, d: usize) -> Result<Rational> {
    match term {
        Term::Diagram { diagram, coeff } => {
            let (c, loops) = diagram.compose(sigma)?;
            let e = loops + c.trace();
            Ok(coeff * Rational::from_integer(BigInt::from(d).pow(e)))
        }
        Term::RankOne { ket, bra, coeff } => Ok(if psi_entry(sigma, bra, ket) {
            coeff.clone()
        } else {
            Rational::zero()
        }),
    }
}

/// `Tr(E ψ(σ))` for a matrix expression.
pub fn trace_against(expr: &[Term], sigma: &Diagram, d: usize) -> Result<Rational> {
    expr.iter().try_fold(Rational::zero(), |acc, t| Ok(acc + term_trace(t, sigma, d)?))
}

/// `Tr(E ψ(x))` for every row `x`, memoising traces per diagram.
pub fn traces_against_rows(expr: &[Term], rows: &[Element], d: usize) -> Result<Vec<Rational>> {
    if expr.is_empty() {
        return Ok(vec![Rational::zero(); rows.len()]);
    }
    let mut support: HashSet<&Diagram> = HashSet::new();
    for r in rows {
        support.extend(r.iter().map(|(s, _)| s));
    }
    let support: Vec<&Diagram> = support.into_iter().collect();
    let values: HashMap<&Diagram, Rational> = support
        .par_iter()
        .map(|s| Ok((*s, trace_against(expr, s, d)?)))
        .collect::<Result<_>>()?;
    Ok(rows
        .par_iter()
        .map(|r| r.iter().fold(Rational::zero(), |acc, (s, c)| acc + c * &values[s]))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearConstraint {
    #[serde(with = "rational_vec")]
    pub coeffs: Vec<Rational>,
    #[serde(with = "rational_str")]
    pub rhs: Rational,
}

/// `max c·v  s.t.  a_k·v ≤ b_k,  d_l·v = e_l,  v ≥ 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LpProblem {
    pub variables: Vec<String>,
    pub labels: Vec<String>,
    #[serde(with = "rational_vec")]
    pub objective: Vec<Rational>,
    pub inequalities: Vec<LinearConstraint>,
    pub equalities: Vec<LinearConstraint>,
}

impl LpProblem {
    pub fn n_vars(&self) -> usize {
        self.variables.len()
    }

    /// Inequalities, equalities and one bound per variable.
    pub fn constraint_count(&self) -> usize {
        self.inequalities.len() + self.equalities.len() + self.n_vars()
    }

    pub fn solve(&self) -> Result<LpSolution> {
        let pairs = |v: &[LinearConstraint]| -> Vec<(Vec<Rational>, Rational)> {
            v.iter().map(|c| (c.coeffs.clone(), c.rhs.clone())).collect()
        };
        simplex::solve(&self.objective, &pairs(&self.inequalities), &pairs(&self.equalities))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

mod rational_str {
    use super::*;

    pub fn serialize<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

mod rational_vec {
    use super::*;

    pub fn serialize<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Builds the LP equivalent to `spec` under the ansatz `X = Σ v_i ψ(ε_i)`.
pub fn convert(spec: &SdpSpec, idemp: &IdempotentSet) -> Result<LpProblem> {
    if (idemp.p, idemp.q, idemp.d) != (spec.p, spec.q, spec.d) {
        return Err(Error::Spec(format!(
            "idempotents are for ({},{},{}) but the spec is ({},{},{})",
            idemp.p, idemp.q, idemp.d, spec.p, spec.q, spec.d
        )));
    }
    if idemp.symmetry != spec.symmetry {
        return Err(Error::Spec(format!(
            "idempotents use symmetry {} but the spec asks for {}",
            idemp.symmetry, spec.symmetry
        )));
    }
    spec.check_dimension()?;
    let (n, s) = (idemp.len(), spec.n_scalars());
    let widen = |mut v: Vec<Rational>, extra: &[Rational]| {
        v.extend(extra.iter().cloned());
        v
    };
    let zeros = vec![Rational::zero(); s];
    let objective = widen(traces_against_rows(&spec.objective, &idemp.rows, spec.d)?, &spec.objective_scalars);
    let mut inequalities = Vec::with_capacity(spec.inequalities.len());
    for ineq in &spec.inequalities {
        inequalities.push(LinearConstraint {
            coeffs: widen(traces_against_rows(&ineq.a, &idemp.rows, spec.d)?, &ineq.scalars),
            rhs: ineq.b.clone(),
        });
    }
    let mut equalities = Vec::new();
    for c in &spec.partial_traces {
        let (kp, kq) = c.target.shape();
        let size = factorial(kp + kq);
        let traced: Vec<Vec<Rational>> = idemp
            .rows
            .par_iter()
            .map(|r| Ok(r.partial_trace(&c.subset)?.to_dense()))
            .collect::<Result<_>>()?;
        let rhs = c.target.to_dense();
        for (l, e) in rhs.into_iter().enumerate().take(size) {
            let coeffs = traced.iter().map(|t| t[l].clone()).collect();
            equalities.push(LinearConstraint { coeffs: widen(coeffs, &zeros), rhs: e });
        }
    }
    let mut variables: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    variables.extend((1..=s).map(|i| format!("y{i}")));
    let mut labels: Vec<String> = idemp.labels.iter().map(|l| l.to_string()).collect();
    labels.extend((1..=s).map(|i| format!("scalar {i}")));
    Ok(LpProblem { variables, labels, objective, inequalities, equalities })
}

/// `Σ v_i ε_i` for the first `idemp.len()` entries of `v`.
pub fn assemble(idemp: &IdempotentSet, v: &[Rational]) -> Result<Element> {
    let mut x = Element::zero(idemp.p, idemp.q, idemp.delta());
    for (row, c) in idemp.rows.iter().zip(v) {
        if !c.is_zero() {
            x = x.add(&row.scale(c))?;
        }
    }
    Ok(x)
}

/// Rank-one term with coefficient one.
pub fn rank_one(ket: &[usize], bra: &[usize]) -> Term {
    Term::RankOne { ket: ket.to_vec(), bra: bra.to_vec(), coeff: Rational::one() }
}
