//! Explicit-matrix LP assembly and exhaustive vertex enumeration.

use num::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wbsdp::diagrams::{enumerate_diagrams, Diagram};
use wbsdp::idempotents::IdempotentSet;
use wbsdp::matrep::{psi, psi_element, SparseMatrix};
use wbsdp::sdp2lp::{Inequality, MatrixExpr, PartialTraceConstraint, SdpSpec, Term};
use wbsdp::{Element, Rational};

pub fn label_index(labels: &[usize], d: usize) -> usize {
    labels.iter().fold(0, |acc, &l| acc * d + (l - 1))
}

/// Dense rational matrix of a matrix expression.
pub fn expr_matrix(expr: &MatrixExpr, d: usize, n: usize) -> SparseMatrix {
    let dim = d.pow(n as u32);
    let mut m = SparseMatrix::zeros(dim);
    for t in expr {
        match t {
            Term::Diagram { diagram, coeff } => {
                m = m.add(&psi(diagram, d).unwrap().scale(coeff)).unwrap();
            }
            Term::RankOne { ket, bra, coeff } => {
                m.add_entry(label_index(ket, d), label_index(bra, d), coeff.clone());
            }
        }
    }
    m
}

/// `Tr(A B)` on explicit matrices.
pub fn trace_of_product(a: &SparseMatrix, b: &SparseMatrix) -> Rational {
    a.mul(b).unwrap().trace()
}

/// The LP in `(v, y)` obtained from explicit matrices:
/// `(objective, inequalities, equalities)`.
pub type DenseLp = (Vec<Rational>, Vec<(Vec<Rational>, Rational)>, Vec<(Vec<Rational>, Rational)>);

pub fn explicit_lp(spec: &SdpSpec, idemp: &IdempotentSet) -> DenseLp {
    let (d, n) = (spec.d, spec.n());
    let mats: Vec<SparseMatrix> = idemp.rows.iter().map(|e| psi_element(e).unwrap()).collect();
    let row = |expr: &MatrixExpr, scalars: &[Rational]| -> Vec<Rational> {
        let a = expr_matrix(expr, d, n);
        let mut v: Vec<Rational> = mats.iter().map(|m| trace_of_product(&a, m)).collect();
        v.extend(scalars.iter().cloned());
        v.resize(idemp.len() + spec.n_scalars(), Rational::zero());
        v
    };
    let objective = row(&spec.objective, &spec.objective_scalars);
    let ineqs = spec.inequalities.iter().map(|i| (row(&i.a, &i.scalars), i.b.clone())).collect();
    let mut eqs = Vec::new();
    for c in &spec.partial_traces {
        let traced: Vec<SparseMatrix> = mats.iter().map(|m| m.partial_trace(d, n, &c.subset).unwrap()).collect();
        let target = psi_element(&c.target).unwrap();
        let dim = target.dim();
        for r in 0..dim {
            for col in 0..dim {
                let mut coeffs: Vec<Rational> = traced.iter().map(|t| t.get(r, col)).collect();
                coeffs.resize(idemp.len() + spec.n_scalars(), Rational::zero());
                eqs.push((coeffs, target.get(r, col)));
            }
        }
    }
    (objective, ineqs, eqs)
}

fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = Rational::one() / &a[col][col];
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            let pivot = a[col].clone();
            for (x, y) in a[r][col..].iter_mut().zip(&pivot[col..]) {
                *x -= &f * y;
            }
            let delta = &f * &b[col];
            b[r] -= delta;
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Independent subset of the equality rows, or `None` if inconsistent.
fn independent_equalities(eqs: &[(Vec<Rational>, Rational)]) -> Option<Vec<(Vec<Rational>, Rational)>> {
    let mut basis: Vec<(Vec<Rational>, Rational, usize)> = Vec::new();
    let mut kept = Vec::new();
    for (a, b) in eqs {
        let mut v = a.clone();
        let mut rhs = b.clone();
        for (row, r, piv) in &basis {
            if !v[*piv].is_zero() {
                let f = &v[*piv] / &row[*piv];
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &f * y;
                }
                rhs -= &f * r;
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(piv) => {
                basis.push((v, rhs, piv));
                kept.push((a.clone(), b.clone()));
            }
            None if !rhs.is_zero() => return None,
            None => {}
        }
    }
    Some(kept)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Maximum of `c·x` over `{A x ≤ b, E x = e, x ≥ 0}` by enumerating every
/// basic solution. Assumes a bounded feasible region; `None` if empty.
pub fn vertex_enumeration(
    c: &[Rational],
    ineqs: &[(Vec<Rational>, Rational)],
    eqs: &[(Vec<Rational>, Rational)],
) -> Option<Rational> {
    let n = c.len();
    let eqs = independent_equalities(eqs)?;
    let mut rows: Vec<(Vec<Rational>, Rational)> = ineqs.to_vec();
    for i in 0..n {
        let mut a = vec![Rational::zero(); n];
        a[i] = -Rational::one();
        rows.push((a, Rational::zero()));
    }
    let free = n.checked_sub(eqs.len())?;
    let mut best: Option<Rational> = None;
    for combo in combinations(rows.len(), free) {
        let mut a: Vec<Vec<Rational>> = eqs.iter().map(|(r, _)| r.clone()).collect();
        let mut b: Vec<Rational> = eqs.iter().map(|(_, r)| r.clone()).collect();
        for &k in &combo {
            a.push(rows[k].0.clone());
            b.push(rows[k].1.clone());
        }
        let Some(x) = solve_square(a, b) else { continue };
        let feasible = rows.iter().all(|(r, rhs)| {
            let lhs = r.iter().zip(&x).fold(Rational::zero(), |acc, (p, q)| acc + p * q);
            lhs <= *rhs
        });
        if !feasible {
            continue;
        }
        let value = c.iter().zip(&x).fold(Rational::zero(), |acc, (p, q)| acc + p * q);
        if best.as_ref().is_none_or(|b| value > *b) {
            best = Some(value);
        }
    }
    best
}

fn random_expr(rng: &mut ChaCha8Rng, p: usize, q: usize, d: usize) -> MatrixExpr {
    let diagrams = enumerate_diagrams(p, q).unwrap();
    let n = p + q;
    let mut expr = Vec::new();
    for _ in 0..rng.random_range(1..=3) {
        let coeff = Rational::from_integer(rng.random_range(-4i64..=4).into());
        let diagram = diagrams[rng.random_range(0..diagrams.len())].clone();
        expr.push(Term::Diagram { diagram, coeff });
    }
    for _ in 0..rng.random_range(0..=2) {
        let coeff = Rational::from_integer(rng.random_range(-4i64..=4).into());
        let ket: Vec<usize> = (0..n).map(|_| rng.random_range(1..=d)).collect();
        let bra: Vec<usize> = (0..n).map(|_| rng.random_range(1..=d)).collect();
        expr.push(Term::RankOne { ket, bra, coeff });
    }
    expr
}

/// Random channel-like spec: trace preservation over the output columns,
/// a random objective and random inequalities satisfied by `I / d^q`.
pub fn random_spec(p: usize, q: usize, d: usize, seed: u64, symmetry: wbsdp::idempotents::Symmetry) -> SdpSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = p + q;
    let delta = d as u32;
    let x0 = expr_matrix(
        &vec![Term::Diagram { diagram: Diagram::identity(p, q), coeff: Rational::new(1.into(), (d.pow(q as u32) as i64).into()) }],
        d,
        n,
    );
    let inequalities = (0..rng.random_range(1..=3))
        .map(|_| {
            let a = random_expr(&mut rng, p, q, d);
            let slack = Rational::new(rng.random_range(0i64..=4).into(), 2.into());
            let b = trace_of_product(&expr_matrix(&a, d, n), &x0) + slack;
            Inequality { a, b, scalars: vec![] }
        })
        .collect();
    SdpSpec {
        p,
        q,
        d,
        symmetry,
        objective: random_expr(&mut rng, p, q, d),
        objective_scalars: vec![],
        inequalities,
        partial_traces: vec![PartialTraceConstraint {
            subset: (p + 1..=n).collect(),
            target: Element::identity(p, 0, delta),
        }],
    }
}

/// `true` when all entries are non-negative.
pub fn nonnegative(v: &[Rational]) -> bool {
    v.iter().all(|x| !x.is_negative())
}
