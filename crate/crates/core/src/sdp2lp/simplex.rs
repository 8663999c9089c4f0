//! Exact two-phase primal simplex with Bland's rule.

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Tableau cells above which the dense solver refuses to run.
pub const MAX_TABLEAU_CELLS: usize = 4_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub objective: Rational,
    pub x: Vec<Rational>,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Rational::one() / &self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (v, pv) in self.rows[i].iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        self.basis[r] = c;
    }

    /// Maximises `cost · x` over the columns allowed by `active`, starting
    /// from the current basis. Returns `false` when unbounded.
    fn optimise(&mut self, cost: &[Rational], active: &[bool]) -> bool {
        let ncols = cost.len();
        loop {
            let reduced = |j: usize| -> Rational {
                let mut r = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                        r -= &cost[b] * &self.rows[i][j];
                    }
                }
                r
            };
            let entering = (0..ncols)
                .filter(|&j| active[j] && !self.basis.contains(&j))
                .find(|&j| reduced(j).is_positive());
            let Some(j) = entering else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][j].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.rows[i][j];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, j);
        }
    }

    fn value(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .zip(&self.rhs)
            .fold(Rational::zero(), |acc, (&b, v)| acc + &cost[b] * v)
    }
}

/// Maximises `c · x` subject to `A_ub x ≤ b_ub`, `A_eq x = b_eq`, `x ≥ 0`.
pub fn solve(
    c: &[Rational],
    ineqs: &[(Vec<Rational>, Rational)],
    eqs: &[(Vec<Rational>, Rational)],
) -> Result<LpSolution> {
    let n = c.len();
    for (a, _) in ineqs.iter().chain(eqs) {
        if a.len() != n {
            return Err(Error::Shape(format!("constraint of width {} for {n} variables", a.len())));
        }
    }
    let m = ineqs.len() + eqs.len();
    let n_slack = ineqs.len();
    let n_art = m;
    let ncols = n + n_slack + n_art;
    if m.saturating_mul(ncols) > MAX_TABLEAU_CELLS {
        return Err(Error::Bound(format!(
            "{m} x {ncols} tableau is beyond desk scale; emit the LP and use an external solver"
        )));
    }
    let mut t = Tableau { rows: Vec::with_capacity(m), rhs: Vec::with_capacity(m), basis: Vec::with_capacity(m) };
    for (k, (a, b)) in ineqs.iter().chain(eqs).enumerate() {
        let mut row = vec![Rational::zero(); ncols];
        row[..n].clone_from_slice(a);
        if k < n_slack {
            row[n + k] = Rational::one();
        }
        let mut rhs = b.clone();
        if rhs.is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
            rhs = -rhs;
        }
        row[n + n_slack + k] = Rational::one();
        t.rows.push(row);
        t.rhs.push(rhs);
        t.basis.push(n + n_slack + k);
    }
    // A slack with a +1 entry is a ready-made basic variable.
    for k in 0..n_slack {
        if t.rows[k][n + k].is_positive() {
            t.basis[k] = n + k;
            t.rows[k][n + n_slack + k] = Rational::zero();
        }
    }

    let all = vec![true; ncols];
    let mut phase1 = vec![Rational::zero(); ncols];
    for v in phase1.iter_mut().skip(n + n_slack) {
        *v = -Rational::one();
    }
    t.optimise(&phase1, &all);
    if t.value(&phase1).is_negative() {
        return Ok(LpSolution { status: LpStatus::Infeasible, objective: Rational::zero(), x: vec![] });
    }
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n + n_slack {
            match (0..n + n_slack).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.rhs.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    let mut active = vec![true; ncols];
    for a in active.iter_mut().skip(n + n_slack) {
        *a = false;
    }
    let mut cost = vec![Rational::zero(); ncols];
    cost[..n].clone_from_slice(c);
    if !t.optimise(&cost, &active) {
        return Ok(LpSolution { status: LpStatus::Unbounded, objective: Rational::zero(), x: vec![] });
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            x[b] = t.rhs[i].clone();
        }
    }
    Ok(LpSolution { status: LpStatus::Optimal, objective: t.value(&cost), x })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    #[test]
    fn trivial_bound() {
        let s = solve(&[rat(1)], &[(vec![rat(1)], rat(3))], &[]).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.objective, rat(3));
        assert_eq!(s.x, vec![rat(3)]);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let s = solve(&[rat(0)], &[], &[(vec![rat(1)], rat(-1))]).unwrap();
        assert_eq!(s.status, LpStatus::Infeasible);
        let s = solve(&[rat(1)], &[], &[]).unwrap();
        assert_eq!(s.status, LpStatus::Unbounded);
    }

    #[test]
    fn small_mixed_problem() {
        // max x + y  s.t. x + 2y <= 4, 3x + y <= 6, x - y = 0
        let s = solve(
            &[rat(1), rat(1)],
            &[(vec![rat(1), rat(2)], rat(4)), (vec![rat(3), rat(1)], rat(6))],
            &[(vec![rat(1), rat(-1)], rat(0))],
        )
        .unwrap();
        assert_eq!(s.objective, ratio(8, 3));
        assert_eq!(s.x, vec![ratio(4, 3), ratio(4, 3)]);
    }

    #[test]
    fn redundant_equalities() {
        let s = solve(
            &[rat(-1), rat(0)],
            &[],
            &[(vec![rat(1), rat(1)], rat(2)), (vec![rat(2), rat(2)], rat(4))],
        )
        .unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.objective, rat(0));
    }
}
