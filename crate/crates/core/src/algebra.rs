//! Exact rational linear combinations of walled Brauer diagrams with loop
//! parameter `δ = d`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num::{BigInt, One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagrams::Diagram;
use crate::error::{Error, Result};
use crate::rational::{format_rational, lcm_denominators, parse_rational, Rational};

/// Below this many term products multiplication stays on one thread.
const PARALLEL_THRESHOLD: usize = 1 << 14;

/// Largest `p + q` whose full composition table is cached.
const TABLE_MAX_N: usize = 6;

/// Term products above which the composition table pays for itself.
const TABLE_THRESHOLD: usize = 1 << 10;

/// Composition of every pair of diagrams of one shape, by index.
struct ComposeTable {
    size: usize,
    /// `(index of a·b, loops)` at `a.index() * size + b.index()`.
    product: Vec<(u32, u8)>,
    /// Loops of the full trace of each diagram.
    trace: Vec<u8>,
}

type TableCache = RwLock<HashMap<(usize, usize), Arc<ComposeTable>>>;

fn compose_table(p: usize, q: usize) -> Arc<ComposeTable> {
    static CACHE: OnceLock<TableCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(t) = cache.read().expect("table cache poisoned").get(&(p, q)) {
        return t.clone();
    }
    let size = crate::diagrams::factorial(p + q);
    let diagrams: Vec<Diagram> = (0..size)
        .map(|i| Diagram::from_index(p, q, i).expect("index below (p+q)!"))
        .collect();
    let product = diagrams
        .par_iter()
        .flat_map_iter(|a| {
            diagrams.iter().map(move |b| {
                let (c, loops) = a.compose_unchecked(b);
                (c.index() as u32, loops as u8)
            })
        })
        .collect();
    let trace = diagrams.iter().map(|d| d.trace() as u8).collect();
    let table = Arc::new(ComposeTable { size, product, trace });
    cache.write().expect("table cache poisoned").insert((p, q), table.clone());
    table
}

/// Integer numerators by diagram index with a common denominator, or
/// `None` when a numerator does not fit in `i128`.
fn dense_integer_form(e: &Element, size: usize) -> Option<(Vec<(usize, i128)>, BigInt)> {
    let (terms, den) = integer_form(e);
    let mut out = Vec::with_capacity(terms.len());
    for (d, c) in terms {
        out.push((d.index(), i128::try_from(&c).ok()?));
    }
    debug_assert!(out.iter().all(|(i, _)| *i < size));
    Some((out, den))
}

fn small_powers(delta: u32, max: usize) -> Option<Vec<i128>> {
    (0..=max as u32).map(|k| (delta as i128).checked_pow(k)).collect()
}

/// `Σ a_x b_y δ^loops` accumulated by index, `None` on overflow.
fn table_product(
    t: &ComposeTable,
    a: &[(usize, i128)],
    b: &[(usize, i128)],
    pw: &[i128],
) -> Option<Vec<i128>> {
    let mut acc = vec![0i128; t.size];
    for &(x, cx) in a {
        let row = &t.product[x * t.size..(x + 1) * t.size];
        for &(y, cy) in b {
            let (z, loops) = row[y];
            let v = cx.checked_mul(cy)?.checked_mul(pw[loops as usize])?;
            let slot = &mut acc[z as usize];
            *slot = slot.checked_add(v)?;
        }
    }
    Some(acc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    p: usize,
    q: usize,
    delta: u32,
    terms: HashMap<Diagram, Rational>,
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    diagram: String,
    num: String,
    den: String,
}

fn delta_powers(delta: u32, max: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(max + 1);
    let mut acc = BigInt::one();
    for _ in 0..=max {
        out.push(acc.clone());
        acc *= delta;
    }
    out
}

impl Element {
    pub fn zero(p: usize, q: usize, delta: u32) -> Self {
        Element { p, q, delta, terms: HashMap::new() }
    }

    pub fn identity(p: usize, q: usize, delta: u32) -> Self {
        Self::from_diagram(Diagram::identity(p, q), delta)
    }

    pub fn scalar(p: usize, q: usize, delta: u32, c: Rational) -> Self {
        let mut e = Self::zero(p, q, delta);
        e.add_term(Diagram::identity(p, q), c);
        e
    }

    pub fn from_diagram(d: Diagram, delta: u32) -> Self {
        let (p, q) = d.shape();
        let mut terms = HashMap::new();
        terms.insert(d, Rational::one());
        Element { p, q, delta, terms }
    }

    /// Builds an element from `(diagram, coefficient)` pairs; repeated
    /// diagrams are summed.
    pub fn from_terms(
        p: usize,
        q: usize,
        delta: u32,
        terms: impl IntoIterator<Item = (Diagram, Rational)>,
    ) -> Result<Self> {
        let mut e = Self::zero(p, q, delta);
        for (d, c) in terms {
            if d.shape() != (p, q) {
                return Err(Error::Shape(format!(
                    "diagram {d} does not have shape ({p},{q})"
                )));
            }
            e.add_term(d, c);
        }
        Ok(e)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, d: &Diagram) -> Rational {
        self.terms.get(d).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in canonical diagram-index order.
    pub fn terms(&self) -> Vec<(&Diagram, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_cached_key(|(d, _)| d.index());
        v
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Diagram, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, d: Diagram, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            std::collections::hash_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    fn check_compatible(&self, other: &Element) -> Result<()> {
        if (self.p, self.q, self.delta) != (other.p, other.q, other.delta) {
            return Err(Error::Shape(format!(
                "elements of shape ({},{}) δ={} and ({},{}) δ={} are incompatible",
                self.p, self.q, self.delta, other.p, other.q, other.delta
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Element {
        let mut out = Self::zero(self.p, self.q, self.delta);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(d, x)| (d.clone(), x * c)).collect();
        out
    }

    /// `self + c·1`.
    pub fn add_scalar(&self, c: &Rational) -> Element {
        let mut out = self.clone();
        out.add_term(Diagram::identity(self.p, self.q), c.clone());
        out
    }

    /// Product with `δ^loops` weights; `self` is stacked above `other`.
    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Element) -> Element {
        let mut out = Self::zero(self.p, self.q, self.delta);
        if self.is_zero() || other.is_zero() {
            return out;
        }
        let n = self.p + self.q;
        if n <= TABLE_MAX_N && self.len() * other.len() >= TABLE_THRESHOLD {
            if let Some(out) = self.mul_by_table(other) {
                return out;
            }
        }
        let pw = delta_powers(self.delta, n);
        let (a, da) = integer_form(self);
        let (b, db) = integer_form(other);
        let accumulate = |chunk: &[(&Diagram, BigInt)]| {
            let mut acc: HashMap<Diagram, BigInt> = HashMap::new();
            for (x, cx) in chunk {
                for (y, cy) in &b {
                    let (z, loops) = x.compose_unchecked(y);
                    let v = cx * cy * &pw[loops as usize];
                    *acc.entry(z).or_insert_with(BigInt::zero) += v;
                }
            }
            acc
        };
        let acc = if a.len() * b.len() < PARALLEL_THRESHOLD {
            accumulate(&a)
        } else {
            let chunk = (a.len() / (4 * rayon::current_num_threads())).max(1);
            a.par_chunks(chunk)
                .map(accumulate)
                .reduce(HashMap::new, |mut m1, m2| {
                    for (k, v) in m2 {
                        *m1.entry(k).or_insert_with(BigInt::zero) += v;
                    }
                    m1
                })
        };
        let den = da * db;
        out.terms = acc
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (k, Rational::new(v, den.clone())))
            .collect();
        out
    }

    fn mul_by_table(&self, other: &Element) -> Option<Element> {
        let t = compose_table(self.p, self.q);
        let (a, da) = dense_integer_form(self, t.size)?;
        let (b, db) = dense_integer_form(other, t.size)?;
        let pw = small_powers(self.delta, self.p + self.q)?;
        let chunk = (a.len() / (4 * rayon::current_num_threads())).max(1);
        let acc = a
            .par_chunks(chunk)
            .map(|c| table_product(&t, c, &b, &pw))
            .try_reduce(
                || vec![0i128; t.size],
                |mut x, y| {
                    for (u, v) in x.iter_mut().zip(y) {
                        *u = u.checked_add(v)?;
                    }
                    Some(x)
                },
            )?;
        let den = da * db;
        let mut out = Self::zero(self.p, self.q, self.delta);
        for (i, v) in acc.into_iter().enumerate() {
            if v != 0 {
                let d = Diagram::from_index(self.p, self.q, i).expect("index below (p+q)!");
                out.terms.insert(d, Rational::new(BigInt::from(v), den.clone()));
            }
        }
        Some(out)
    }

    /// Vertical flip of every diagram.
    pub fn adjoint(&self) -> Element {
        let mut out = Self::zero(self.p, self.q, self.delta);
        out.terms = self.terms.iter().map(|(d, c)| (d.flip(), c.clone())).collect();
        out
    }

    /// Left-right mirror image, an element of shape `(q, p)`.
    pub fn mirror(&self) -> Element {
        let mut out = Self::zero(self.q, self.p, self.delta);
        out.terms = self.terms.iter().map(|(d, c)| (d.mirror(), c.clone())).collect();
        out
    }

    /// Image under the diagram inclusion into shape `(p, q)`.
    pub fn embed(&self, p: usize, q: usize) -> Result<Element> {
        let mut out = Self::zero(p, q, self.delta);
        for (d, c) in &self.terms {
            out.terms.insert(d.embed(p, q)?, c.clone());
        }
        Ok(out)
    }

    /// `∏_r (x − r)/(target − r)` evaluated in the algebra.
    pub fn eval_polynomial(&self, roots: &[Rational], target: &Rational) -> Result<Element> {
        let mut out = Self::identity(self.p, self.q, self.delta);
        for r in roots {
            let denom = target - r;
            if denom.is_zero() {
                return Err(Error::ContentCollision(format!(
                    "root {} equals the target content",
                    format_rational(r)
                )));
            }
            let factor = self.add_scalar(&-r).scale(&(Rational::one() / denom));
            out = out.mul_unchecked(&factor);
        }
        Ok(out)
    }

    /// Linear extension of the diagram trace, `Σ c_σ δ^{loops(σ)}`.
    pub fn trace(&self) -> Rational {
        let pw = delta_powers(self.delta, self.p + self.q);
        self.terms
            .iter()
            .map(|(d, c)| c * Rational::from_integer(pw[d.trace() as usize].clone()))
            .sum()
    }

    /// Linear extension of the diagram partial trace over 1-based columns.
    pub fn partial_trace(&self, subset: &[usize]) -> Result<Element> {
        let n = self.p + self.q;
        let mut mask = vec![false; n];
        for &c in subset {
            if c == 0 || c > n {
                return Err(Error::Invalid(format!("column {c} outside 1..={n}")));
            }
            mask[c - 1] = true;
        }
        let kept_p = (0..self.p).filter(|&c| !mask[c]).count();
        let kept_q = (self.p..n).filter(|&c| !mask[c]).count();
        let pw = delta_powers(self.delta, n);
        let mut out = Self::zero(kept_p, kept_q, self.delta);
        for (d, c) in &self.terms {
            let (loops, rest) = d.partial_trace_mask(&mask);
            out.add_term(rest, c * Rational::from_integer(pw[loops as usize].clone()));
        }
        Ok(out)
    }

    /// `Tr(self · other)` without materialising the product.
    pub fn trace_product(&self, other: &Element) -> Result<Rational> {
        self.check_compatible(other)?;
        let n = self.p + self.q;
        if n <= TABLE_MAX_N && self.len() * other.len() >= TABLE_THRESHOLD {
            let t = compose_table(self.p, self.q);
            if let (Some((a, da)), Some((b, db)), Some(pw)) = (
                dense_integer_form(self, t.size),
                dense_integer_form(other, t.size),
                small_powers(self.delta, 2 * n),
            ) {
                let total = a.iter().try_fold(0i128, |acc, &(x, cx)| {
                    let row = &t.product[x * t.size..(x + 1) * t.size];
                    b.iter().try_fold(acc, |acc, &(y, cy)| {
                        let (z, loops) = row[y];
                        let e = loops as usize + t.trace[z as usize] as usize;
                        acc.checked_add(cx.checked_mul(cy)?.checked_mul(pw[e])?)
                    })
                });
                if let Some(total) = total {
                    return Ok(Rational::new(BigInt::from(total), da * db));
                }
            }
        }
        let pw = delta_powers(self.delta, 2 * n);
        let (a, da) = integer_form(self);
        let (b, db) = integer_form(other);
        let total: BigInt = a
            .par_iter()
            .map(|(x, cx)| {
                let mut s = BigInt::zero();
                for (y, cy) in &b {
                    let (z, loops) = x.compose_unchecked(y);
                    s += cx * cy * &pw[loops as usize + z.trace() as usize];
                }
                s
            })
            .sum();
        Ok(Rational::new(total, da * db))
    }

    /// Dense coefficient vector over the canonical diagram order.
    pub fn to_dense(&self) -> Vec<Rational> {
        let size = crate::diagrams::factorial(self.p + self.q);
        let mut v = vec![Rational::zero(); size];
        for (d, c) in &self.terms {
            v[d.index()] = c.clone();
        }
        v
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<JsonTerm> = self
            .terms()
            .into_iter()
            .map(|(d, c)| JsonTerm {
                diagram: d.to_string(),
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect();
        serde_json::to_value(terms).expect("plain data serializes")
    }

    pub fn from_json(p: usize, q: usize, delta: u32, value: &serde_json::Value) -> Result<Self> {
        let terms: Vec<JsonTerm> = serde_json::from_value(value.clone())?;
        let mut out = Self::zero(p, q, delta);
        for t in terms {
            let d: Diagram = t.diagram.parse()?;
            if d.shape() != (p, q) {
                return Err(Error::Shape(format!("diagram {d} is not of shape ({p},{q})")));
            }
            let c = parse_rational(&format!("{}/{}", t.num, t.den))?;
            out.add_term(d, c);
        }
        Ok(out)
    }
}

fn integer_form(e: &Element) -> (Vec<(&Diagram, BigInt)>, BigInt) {
    let den = lcm_denominators(e.terms.values());
    let v = e
        .terms
        .iter()
        .map(|(d, c)| (d, c.numer() * (&den / c.denom())))
        .collect();
    (v, den)
}

/// One defining relation `lhs = rhs` of the walled Brauer algebra.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub lhs: Element,
    pub rhs: Element,
}

impl Relation {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Every instance of the defining relations among the transpositions
/// `σ_i` (`i ≠ p`) and the contraction `σ̄_p` of shape `(p, q)`.
pub fn defining_relations(p: usize, q: usize, delta: u32) -> Result<Vec<Relation>> {
    let n = p + q;
    let gens: Vec<usize> = (1..n).filter(|&i| i != p).collect();
    let s = |i: usize| -> Result<Element> { Ok(Element::from_diagram(Diagram::transposition(i, p, q)?, delta)) };
    let prod = |xs: &[&Element]| -> Result<Element> {
        let mut acc = Element::identity(p, q, delta);
        for x in xs {
            acc = acc.mul(x)?;
        }
        Ok(acc)
    };
    let one = Element::identity(p, q, delta);
    let is_gen = |i: usize| gens.contains(&i);
    let mut out = Vec::new();
    let mut push = |name: String, lhs: Element, rhs: Element| out.push(Relation { name, lhs, rhs });
    for &i in &gens {
        let si = s(i)?;
        push(format!("s{i}^2 = 1"), prod(&[&si, &si])?, one.clone());
        if is_gen(i + 1) {
            let sj = s(i + 1)?;
            push(
                format!("s{i} s{} s{i} = s{} s{i} s{}", i + 1, i + 1, i + 1),
                prod(&[&si, &sj, &si])?,
                prod(&[&sj, &si, &sj])?,
            );
        }
        for &j in gens.iter().filter(|&&j| j > i + 1) {
            let sj = s(j)?;
            push(format!("s{i} s{j} = s{j} s{i}"), prod(&[&si, &sj])?, prod(&[&sj, &si])?);
        }
    }
    if p == 0 || q == 0 {
        return Ok(out);
    }
    let e = Element::from_diagram(Diagram::contraction(p, q)?, delta);
    push("e^2 = delta e".into(), prod(&[&e, &e])?, e.scale(&Rational::from_integer(delta.into())));
    for &i in &gens {
        let si = s(i)?;
        if i + 1 == p || i == p + 1 {
            push(format!("e s{i} e = e"), prod(&[&e, &si, &e])?, e.clone());
        } else {
            push(format!("e s{i} = s{i} e"), prod(&[&e, &si])?, prod(&[&si, &e])?);
        }
    }
    if is_gen(p.wrapping_sub(1)) && is_gen(p + 1) {
        let (a, b) = (s(p - 1)?, s(p + 1)?);
        push(
            format!("e s{} s{} e s{} = e s{} s{} e s{}", p + 1, p - 1, p - 1, p + 1, p - 1, p + 1),
            prod(&[&e, &b, &a, &e, &a])?,
            prod(&[&e, &b, &a, &e, &b])?,
        );
        push(
            format!("s{} e s{} s{} e = s{} e s{} s{} e", p - 1, p + 1, p - 1, p + 1, p + 1, p - 1),
            prod(&[&a, &e, &b, &a, &e])?,
            prod(&[&b, &e, &b, &a, &e])?,
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    #[test]
    fn contraction_squares_to_delta_times_itself() {
        let s = Element::from_diagram(Diagram::contraction(1, 1).unwrap(), 3);
        assert_eq!(s.mul(&s).unwrap(), s.scale(&rat(3)));
    }

    #[test]
    fn normalized_contraction_is_idempotent() {
        let s = Element::from_diagram(Diagram::contraction(1, 1).unwrap(), 2).scale(&ratio(1, 2));
        assert_eq!(s.mul(&s).unwrap(), s);
    }

    #[test]
    fn polynomial_of_jm_element() {
        let sbar = Element::from_diagram(Diagram::contraction(1, 1).unwrap(), 2);
        let j2 = Element::scalar(1, 1, 2, rat(2)).sub(&sbar).unwrap();
        let e0 = j2.eval_polynomial(&[rat(2)], &rat(0)).unwrap();
        assert_eq!(e0, sbar.scale(&ratio(1, 2)));
        let e1 = j2.eval_polynomial(&[rat(0)], &rat(2)).unwrap();
        assert_eq!(e1, Element::identity(1, 1, 2).sub(&sbar.scale(&ratio(1, 2))).unwrap());
        assert_eq!(j2.eval_polynomial(&[], &rat(5)).unwrap(), Element::identity(1, 1, 2));
        assert!(j2.eval_polynomial(&[rat(1)], &rat(1)).is_err());
    }

    #[test]
    fn traces() {
        assert_eq!(Element::identity(1, 1, 2).trace(), rat(4));
        let sbar = Element::from_diagram(Diagram::contraction(1, 1).unwrap(), 3);
        assert_eq!(sbar.trace(), rat(3));
        let x: Diagram = "4,1|t1-b1,t2-b3,t3-b2,t4-t5,b4-b5".parse().unwrap();
        let e = Element::from_diagram(x, 2);
        assert_eq!(
            e.partial_trace(&[2, 3, 4]).unwrap(),
            Element::identity(1, 1, 2).scale(&rat(2))
        );
    }

    #[test]
    fn json_round_trip() {
        let sbar = Element::from_diagram(Diagram::contraction(1, 1).unwrap(), 2);
        let e = Element::identity(1, 1, 2).sub(&sbar.scale(&ratio(1, 3))).unwrap();
        let back = Element::from_json(1, 1, 2, &e.to_json()).unwrap();
        assert_eq!(back, e);
    }
}
