//! Deciding whether the largest eigenvalue of a qubit state exceeds a
//! threshold, given `n` copies drawn from the normalised Wishart ensemble.

use num::{One, Zero};
use rayon::prelude::*;

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::idempotents::{central_idempotents, IdempotentSet};
use crate::rational::{rat, Rational};
use crate::sdp2lp::simplex::{self, LpStatus};

pub const MAX_COPIES: usize = 8;
const LOCAL_DIM: usize = 2;

/// Dense univariate polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(Vec<Rational>);

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// `a + b·x`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        Poly::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let get = |v: &[Rational], i: usize| v.get(i).cloned().unwrap_or_else(Rational::zero);
        Poly::new((0..n).map(|i| get(&self.0, i) + get(&other.0, i)).collect())
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.0.is_empty() || other.0.is_empty() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: usize) -> Poly {
        (0..e).fold(Poly::constant(Rational::one()), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `∫_a^b self(x) dx`.
    pub fn integrate(&self, a: &Rational, b: &Rational) -> Rational {
        let anti = Poly::new(
            std::iter::once(Rational::zero())
                .chain(self.0.iter().enumerate().map(|(k, c)| c / rat(k as i64 + 1)))
                .collect(),
        );
        anti.eval(b) - anti.eval(a)
    }
}

/// Density of the larger eigenvalue `x ∈ [1/2, 1]` of a random qubit state,
/// `6(2x − 1)²`: the Wishart density `3(2x − 1)²` on `[0, 1]` folded onto
/// the upper half.
pub fn eigenvalue_density() -> Poly {
    Poly::linear(rat(-1), rat(2)).pow(2).scale(&rat(6))
}

/// `Tr(diag(x, 1 − x)^{⊗n} ψ(e))` for `e` in the symmetric-group algebra.
/// A loop through `ℓ` strands contributes `x^ℓ + (1 − x)^ℓ`.
pub fn diagonal_trace(e: &Element) -> Result<Poly> {
    if e.q() != 0 {
        return Err(Error::Shape("diagonal traces are defined for shape (n, 0)".into()));
    }
    let x = Poly::linear(rat(0), rat(1));
    let y = Poly::linear(rat(1), rat(-1));
    let mut total = Poly::zero();
    for (sigma, c) in e.iter() {
        let term = sigma
            .trace_loop_lengths()
            .into_iter()
            .fold(Poly::constant(Rational::one()), |acc, l| acc.mul(&x.pow(l).add(&y.pow(l))));
        total = total.add(&term.scale(c));
    }
    Ok(total)
}

/// Per-copy-number data reused across thresholds.
#[derive(Clone, Debug)]
pub struct EigmaxModel {
    pub n: usize,
    pub idempotents: IdempotentSet,
    pub traces: Vec<Poly>,
}

impl EigmaxModel {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_COPIES {
            return Err(Error::Bound(format!("copy number {n} outside 1..={MAX_COPIES}")));
        }
        let idempotents = central_idempotents(n, 0, LOCAL_DIM)?;
        let traces = idempotents.rows.par_iter().map(diagonal_trace).collect::<Result<_>>()?;
        Ok(EigmaxModel { n, idempotents, traces })
    }

    /// Success probability of the measurement `{P, I − P}` with
    /// `P = Σ w_λ ε(λ)`, where `P` answers "largest eigenvalue below `c`".
    pub fn success(&self, c: &Rational, w: &[Rational]) -> Rational {
        let (base, gains) = self.objective(c);
        gains.iter().zip(w).fold(base, |acc, (g, x)| acc + g * x)
    }

    /// Constant term and per-idempotent gain of the success probability.
    pub fn objective(&self, c: &Rational) -> (Rational, Vec<Rational>) {
        let rho = eigenvalue_density();
        let (half, one) = (Rational::new(1.into(), 2.into()), Rational::one());
        let base = rho.integrate(c, &one);
        let gains = self
            .traces
            .iter()
            .map(|t| {
                let f = rho.mul(t);
                f.integrate(&half, c) - f.integrate(c, &one)
            })
            .collect();
        (base, gains)
    }

    /// Optimal probability at threshold `c ∈ [1/2, 1]`, maximising over
    /// `0 ≤ w ≤ 1` with the exact simplex.
    pub fn optimum(&self, c: &Rational) -> Result<(Rational, Vec<Rational>)> {
        let half = Rational::new(1.into(), 2.into());
        if *c < half || *c > Rational::one() {
            return Err(Error::Invalid(format!("threshold {c} outside [1/2, 1]")));
        }
        let (base, gains) = self.objective(c);
        let k = gains.len();
        let bounds: Vec<(Vec<Rational>, Rational)> = (0..k)
            .map(|i| {
                let mut row = vec![Rational::zero(); k];
                row[i] = Rational::one();
                (row, Rational::one())
            })
            .collect();
        let sol = simplex::solve(&gains, &bounds, &[])?;
        if sol.status != LpStatus::Optimal {
            return Err(Error::Verification(format!("threshold LP is {:?}", sol.status)));
        }
        Ok((base + sol.objective, sol.x))
    }
}

/// `(c, optimal probability)` for every threshold on the grid.
pub fn eigmax(n: usize, grid: &[Rational]) -> Result<Vec<(Rational, Rational)>> {
    let model = EigmaxModel::new(n)?;
    grid.par_iter()
        .map(|c| Ok((c.clone(), model.optimum(c)?.0)))
        .collect()
}

/// The single-copy value `max{2(1−c)(4c²−2c+1), (2c−1)³}`.
pub fn single_copy_bound(c: &Rational) -> Rational {
    let one = Rational::one();
    let a = rat(2) * (&one - c) * (rat(4) * c * c - rat(2) * c + &one);
    let b = (rat(2) * c - &one).pow(3);
    if a >= b {
        a
    } else {
        b
    }
}

/// Branch points of the three-copy closed form.
pub const THREE_COPY_BREAKS: (f64, f64) = (0.821_569_391, 0.913_830_846);

/// Closed form of the three-copy optimum, piecewise in `c ∈ [1/2, 1]`.
pub fn three_copy_closed_form(c: f64) -> f64 {
    let (c1, c2) = THREE_COPY_BREAKS;
    if c <= c1 {
        2.0 * (1.0 - c) * (4.0 * c * c - 2.0 * c + 1.0)
    } else if c <= c2 {
        7.0 / 5.0 - 6.0 / 5.0 * c * (16.0 * c.powi(4) - 40.0 * c.powi(3) + 40.0 * c * c - 20.0 * c + 5.0)
    } else {
        (2.0 * c - 1.0).powi(3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn polynomial_arithmetic() {
        let p = Poly::linear(rat(1), rat(1)).pow(2);
        assert_eq!(p.coeffs(), &[rat(1), rat(2), rat(1)]);
        assert_eq!(p.integrate(&rat(0), &rat(1)), ratio(7, 3));
        assert_eq!(eigenvalue_density().integrate(&ratio(1, 2), &rat(1)), rat(1));
    }

    #[test]
    fn single_copy() {
        let m = EigmaxModel::new(1).unwrap();
        for c in [ratio(1, 2), ratio(3, 5), ratio(4, 5), ratio(19, 20), rat(1)] {
            assert_eq!(m.optimum(&c).unwrap().0, single_copy_bound(&c));
        }
    }

    #[test]
    fn three_copies_endpoints() {
        let m = EigmaxModel::new(3).unwrap();
        assert_eq!(m.optimum(&ratio(1, 2)).unwrap().0, rat(1));
        assert_eq!(m.optimum(&rat(1)).unwrap().0, rat(1));
    }
}
