use num::{One, Zero};
use proptest::prelude::*;

use wbsdp::algebra::defining_relations;
use wbsdp::diagrams::{factorial, Diagram, NodeId};
use wbsdp::idempotents::jm_element;
use wbsdp::rational::{rat, ratio};
use wbsdp::{Element, Rational};

fn element(p: usize, q: usize, delta: u32, terms: &[(usize, i64)]) -> Element {
    Element::from_terms(
        p,
        q,
        delta,
        terms.iter().map(|&(i, c)| (Diagram::from_index(p, q, i).unwrap(), rat(c))),
    )
    .unwrap()
}

fn contraction(delta: u32) -> Element {
    Element::from_diagram(Diagram::contraction(1, 1).unwrap(), delta)
}

#[test]
fn multiplication_examples() {
    let c = contraction(3);
    assert_eq!(c.mul(&c).unwrap(), c.scale(&rat(3)));
    let half = contraction(2).scale(&ratio(1, 2));
    assert_eq!(half.mul(&half).unwrap(), half);
    let x = element(2, 1, 3, &[(0, 2), (3, -1), (5, 4)]);
    assert_eq!(x.mul(&Element::identity(2, 1, 3)).unwrap(), x);
    assert!(x.mul(&Element::identity(1, 2, 3)).is_err());
    assert!(x.mul(&Element::identity(2, 1, 2)).is_err());
}

#[test]
fn adjoint_examples() {
    let s = Element::from_diagram(Diagram::transposition(1, 2, 1).unwrap(), 2);
    assert_eq!(s.adjoint(), s);
    let c = Element::from_diagram(Diagram::contraction(2, 1).unwrap(), 2);
    assert_eq!(c.adjoint(), c);
}

#[test]
fn polynomial_examples() {
    let j2 = jm_element(2, 1, 1, 2).unwrap();
    assert_eq!(j2, Element::identity(1, 1, 2).scale(&rat(2)).sub(&contraction(2)).unwrap());
    assert_eq!(j2.eval_polynomial(&[], &rat(5)).unwrap(), Element::identity(1, 1, 2));
    let half = contraction(2).scale(&ratio(1, 2));
    assert_eq!(j2.eval_polynomial(&[rat(2)], &rat(0)).unwrap(), half);
    assert_eq!(
        j2.eval_polynomial(&[rat(0)], &rat(2)).unwrap(),
        Element::identity(1, 1, 2).sub(&half).unwrap()
    );
    assert!(j2.eval_polynomial(&[rat(2)], &rat(2)).is_err());
}

#[test]
fn trace_examples() {
    assert_eq!(Element::identity(1, 1, 2).trace(), rat(4));
    assert_eq!(contraction(3).trace(), rat(3));
    let t = NodeId::top;
    let b = NodeId::bottom;
    let sigma = Diagram::from_pairs(4, 1, &[(t(1), b(1)), (t(2), b(3)), (t(3), b(2)), (t(4), t(5)), (b(4), b(5))]).unwrap();
    let x = Element::from_diagram(sigma, 2);
    assert_eq!(x.partial_trace(&[2, 3, 4]).unwrap(), Element::identity(1, 1, 2).scale(&rat(2)));
}

#[test]
fn relations_hold_for_small_shapes() {
    for n in 1..=5 {
        for p in 0..=n {
            for delta in [2, 3, 7] {
                for r in defining_relations(p, n - p, delta).unwrap() {
                    assert!(r.holds(), "({p},{}) δ={delta}: {}", n - p, r.name);
                }
            }
        }
    }
}

#[test]
fn embedding_is_a_homomorphism() {
    let x = element(1, 1, 3, &[(0, 1), (1, -2)]);
    let y = element(1, 1, 3, &[(0, 3), (1, 5)]);
    let lhs = x.mul(&y).unwrap().embed(2, 2).unwrap();
    let rhs = x.embed(2, 2).unwrap().mul(&y.embed(2, 2).unwrap()).unwrap();
    assert_eq!(lhs, rhs);
    assert_eq!(Element::identity(1, 1, 3).embed(2, 1).unwrap(), Element::identity(2, 1, 3));
}

#[test]
fn json_round_trip() {
    let x = element(2, 2, 2, &[(0, 1), (7, -3), (23, 2)]).scale(&ratio(1, 3));
    let back = Element::from_json(2, 2, 2, &x.to_json()).unwrap();
    assert_eq!(back, x);
}

fn random_element(p: usize, q: usize, delta: u32) -> impl Strategy<Value = Element> {
    prop::collection::vec((0..factorial(p + q), -5i64..=5), 0..6).prop_map(move |terms| {
        Element::from_terms(
            p,
            q,
            delta,
            terms.into_iter().map(|(i, c)| (Diagram::from_index(p, q, i).unwrap(), rat(c))),
        )
        .unwrap()
    })
}

fn triples() -> impl Strategy<Value = (Element, Element, Element)> {
    (0usize..=4, 0usize..=4, prop::sample::select(vec![2u32, 3]))
        .prop_filter("1 ≤ p+q ≤ 4", |(p, q, _)| (1..=4).contains(&(p + q)))
        .prop_flat_map(|(p, q, delta)| {
            (random_element(p, q, delta), random_element(p, q, delta), random_element(p, q, delta))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ring_axioms((a, b, c) in triples()) {
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.add(&b).unwrap().mul(&c).unwrap(),
            a.mul(&c).unwrap().add(&b.mul(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn trace_of_product_is_symmetric((a, b, _) in triples()) {
        let ab = a.mul(&b).unwrap().trace();
        prop_assert_eq!(&ab, &b.mul(&a).unwrap().trace());
        prop_assert_eq!(&ab, &a.trace_product(&b).unwrap());
    }

    #[test]
    fn adjoint_reverses_products((a, b, _) in triples()) {
        prop_assert_eq!(a.mul(&b).unwrap().adjoint(), b.adjoint().mul(&a.adjoint()).unwrap());
        prop_assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn zero_terms_are_pruned((a, _, _) in triples()) {
        let z = a.sub(&a).unwrap();
        prop_assert!(z.is_zero());
        prop_assert_eq!(z.len(), 0);
        prop_assert!(a.iter().all(|(_, c)| !c.is_zero()));
        prop_assert_eq!(a.scale(&Rational::one()), a.clone());
    }
}
