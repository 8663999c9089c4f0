//! Unitary-equivariant majority vote on three inputs and one output.

use num::{One, Zero};
use rayon::prelude::*;

use crate::algebra::Element;
use crate::diagrams::Diagram;
use crate::error::{Error, Result};
use crate::idempotents::{IdempotentSet, Symmetry};
use crate::matrep::psi_element;
use crate::rational::Rational;
use crate::sdp2lp::{
    convert, Inequality, LinearConstraint, LpProblem, LpStatus, PartialTraceConstraint, SdpSpec,
    Term,
};

pub const INPUTS: usize = 3;

/// Input patterns with their accepted outputs, restricted to the alphabet.
pub fn majority_rules(d: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut rules = vec![(vec![1, 1, 1], vec![1]), (vec![1, 1, 2], vec![1])];
    if d >= 3 {
        rules.push((vec![1, 2, 3], vec![1, 2, 3]));
    }
    rules
}

/// The majority SDP over `(3, 1, d)`: maximise `F` subject to one
/// fidelity row per rule and, when `d ≥ 3`, trace preservation.
pub fn majority_spec(d: usize) -> Result<SdpSpec> {
    if d < 2 {
        return Err(Error::Invalid(format!("majority vote needs d >= 2, got {d}")));
    }
    let inequalities = majority_rules(d)
        .into_iter()
        .map(|(x, ys)| {
            let a = ys
                .iter()
                .map(|&y| {
                    let mut label = x.clone();
                    label.push(y);
                    Term::RankOne { ket: label.clone(), bra: label, coeff: -Rational::one() }
                })
                .collect();
            Inequality { a, b: Rational::zero(), scalars: vec![Rational::one()] }
        })
        .collect();
    let partial_traces = if d >= INPUTS {
        vec![PartialTraceConstraint {
            subset: vec![INPUTS + 1],
            target: Element::identity(INPUTS, 0, d as u32),
        }]
    } else {
        Vec::new()
    };
    Ok(SdpSpec {
        p: INPUTS,
        q: 1,
        d,
        symmetry: Symmetry::SpSq,
        objective: Vec::new(),
        objective_scalars: vec![Rational::one()],
        inequalities,
        partial_traces,
    })
}

/// `Tr_out ψ(x) = I` written entrywise on the explicit matrices. Rows that
/// vanish identically are dropped.
pub fn oracle_trace_preservation(idemp: &IdempotentSet, n_scalars: usize) -> Result<Vec<LinearConstraint>> {
    let n = idemp.p + idemp.q;
    let traced: Vec<_> = idemp
        .rows
        .par_iter()
        .map(|r| psi_element(r)?.partial_trace(idemp.d, n, &(idemp.p + 1..=n).collect::<Vec<_>>()))
        .collect::<Result<_>>()?;
    let dim = idemp.d.pow(idemp.p as u32);
    let mut rows = Vec::new();
    for r in 0..dim {
        for c in 0..dim {
            let mut coeffs: Vec<Rational> = traced.iter().map(|t| t.get(r, c)).collect();
            let rhs = if r == c { Rational::one() } else { Rational::zero() };
            if coeffs.iter().all(Zero::is_zero) && rhs.is_zero() {
                continue;
            }
            coeffs.extend(std::iter::repeat_n(Rational::zero(), n_scalars));
            rows.push(LinearConstraint { coeffs, rhs });
        }
    }
    Ok(rows)
}

/// The LP for `majority_spec(d)` over the last-edge ansatz.
pub fn majority_lp(d: usize, idemp: &IdempotentSet) -> Result<LpProblem> {
    let spec = majority_spec(d)?;
    let mut lp = convert(&spec, idemp)?;
    if spec.partial_traces.is_empty() {
        lp.equalities = oracle_trace_preservation(idemp, spec.n_scalars())?;
    }
    Ok(lp)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MajorityResult {
    pub d: usize,
    pub fidelity: Rational,
    pub weights: Vec<Rational>,
    pub lp: LpProblem,
}

/// Solves the majority LP exactly.
pub fn majority(d: usize, idemp: &IdempotentSet) -> Result<MajorityResult> {
    let lp = majority_lp(d, idemp)?;
    let sol = lp.solve()?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::Verification(format!("majority LP at d = {d} is {:?}", sol.status)));
    }
    Ok(MajorityResult { d, fidelity: sol.objective, weights: sol.x, lp })
}

/// `Tr_out ψ(x)` equals the identity on the inputs.
pub fn is_trace_preserving(x: &Element) -> Result<bool> {
    let (p, q) = x.shape();
    let d = x.delta() as usize;
    let traced = psi_element(x)?.partial_trace(d, p + q, &(p + 1..=p + q).collect::<Vec<_>>())?;
    Ok(traced == psi_element(&Element::from_diagram(Diagram::identity(p, 0), x.delta()))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sdp2lp::assemble;

    #[test]
    fn spec_shape() {
        let s = majority_spec(3).unwrap();
        assert_eq!(s.inequalities.len(), 3);
        assert_eq!(s.partial_traces.len(), 1);
        let s = majority_spec(2).unwrap();
        assert_eq!(s.inequalities.len(), 2);
        assert!(s.partial_traces.is_empty());
        assert!(majority_spec(1).is_err());
    }

    #[test]
    fn optimum_at_three() {
        let idemp = IdempotentSet::build(3, 1, 3, Symmetry::SpSq).unwrap();
        let r = majority(3, &idemp).unwrap();
        assert_eq!(r.fidelity, crate::rational::ratio(8, 9));
        let x = assemble(&idemp, &r.weights).unwrap();
        assert!(is_trace_preserving(&x).unwrap());
    }
}
