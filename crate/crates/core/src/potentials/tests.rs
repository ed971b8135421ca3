use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use super::*;
use crate::exactalg::Subspace;
use crate::quiverpath::{strip_left, strip_right};
use crate::sampling;

fn q1() -> Quiver {
    Quiver::one_vertex(&["x", "y"]).unwrap()
}

fn rat() -> FieldSpec {
    FieldSpec::Rationals
}

fn el(q: &Quiver, terms: &[(i64, &str)]) -> Element {
    Element::from_terms(rat(), terms.iter().map(|&(c, p)| (q.path(p).unwrap(), rat().from_i64(c))))
}

fn pot(q: &Quiver, terms: &[(i64, &str)]) -> Potential {
    let mut w = Potential::zero(rat());
    for &(c, p) in terms {
        w.add_cycle(q, rat().from_i64(c), &q.path(p).unwrap()).unwrap();
    }
    w
}

fn two_vertex() -> Quiver {
    Quiver::new(
        &["1", "2"],
        &[("a1", "1", "1"), ("a2", "2", "2"), ("a3", "2", "1"), ("a4", "1", "2")],
    )
    .unwrap()
}

#[test]
fn rotation_classes() {
    let q = q1();
    let xy = q.path("x y").unwrap();
    let yx = q.path("y x").unwrap();
    assert_eq!(class_of(&q, &xy).unwrap(), class_of(&q, &yx).unwrap());
    let x = q.path("x").unwrap();
    assert_eq!(class_of(&q, &x).unwrap().representative(), &x);
    let tv = two_vertex();
    assert!(class_of(&tv, &tv.path("a3").unwrap()).is_err());
    assert!(class_of(&q, &Path::trivial(0)).is_err());
}

#[test]
fn all_rotations_share_a_class() {
    let q = q1();
    let mut r = sampling::rng(11);
    for p in enumerate_paths(&q, 6, None, None) {
        let k = class_of(&q, &p).unwrap();
        for i in 0..6 {
            assert_eq!(class_of(&q, &p.rotation(&q, i)).unwrap(), k);
        }
        let rep = k.representative();
        for i in 0..6 {
            assert!(rep <= &rep.rotation(&q, i));
        }
    }
    let _ = rand::Rng::random_range(&mut r, 0..2);
}

#[test]
fn symmetrize_examples() {
    let q = q1();
    let w = pot(&q, &[(1, "x x y")]);
    assert_eq!(cyclic_symmetrize(&q, &w), el(&q, &[(1, "x x y"), (1, "x y x"), (1, "y x x")]));
    let w = pot(&q, &[(1, "x x x")]);
    assert_eq!(cyclic_symmetrize(&q, &w), el(&q, &[(3, "x x x")]));
    let w = pot(&q, &[(1, "x y x y")]);
    assert_eq!(cyclic_symmetrize(&q, &w), el(&q, &[(2, "x y x y"), (2, "y x y x")]));
}

#[test]
fn derivative_of_one_loop_cube() {
    let q = Quiver::one_vertex(&["x"]).unwrap();
    let w = pot(&q, &[(1, "x x x")]);
    assert_eq!(cyclic_derivative(&q, &w, 0), el(&q, &[(3, "x x")]));
    let w = pot(&q, &[(1, "x")]);
    assert_eq!(cyclic_derivative(&q, &w, 0), Element::from_path(rat(), Path::trivial(0)));
}

#[test]
fn primitive_examples() {
    let q = q1();
    let cls = |s: &str| class_of(&q, &q.path(s).unwrap()).unwrap();
    assert_eq!(primitive_decomposition(&q, &cls("x x x")), (q.path("x").unwrap(), 3));
    let (tau, m) = primitive_decomposition(&q, &cls("x y x y"));
    assert_eq!(m, 2);
    assert_eq!(class_of(&q, &tau).unwrap(), cls("x y"));
    assert_eq!(primitive_decomposition(&q, &cls("x y y")).1, 1);
}

#[test]
fn prime_symmetrize_examples() {
    let q = q1();
    let cls = |s: &str| class_of(&q, &q.path(s).unwrap()).unwrap();
    assert_eq!(
        cyclic_symmetrize_prime(&q, rat(), &cls("x y x y")),
        el(&q, &[(1, "x y x y"), (1, "y x y x")])
    );
    assert_eq!(cyclic_symmetrize_prime(&q, rat(), &cls("x x x")), el(&q, &[(1, "x x x")]));
    let k = cls("x y y");
    assert_eq!(
        cyclic_symmetrize_prime(&q, rat(), &k),
        cyclic_symmetrize(&q, &Potential::from_classes(rat(), [(k.clone(), rat().one())]))
    );
}

#[test]
fn double_derivative_examples() {
    let q = q1();
    let e = Path::trivial(0);
    let t = double_derivative(&q, &el(&q, &[(1, "x y")]), 0);
    let mut want = TensorElement::zero(rat());
    want.add_term(e.clone(), q.path("y").unwrap(), rat().one());
    assert_eq!(t, want);
    let t = double_derivative(&q, &el(&q, &[(1, "x x")]), 0);
    let mut want = TensorElement::zero(rat());
    want.add_term(e.clone(), q.path("x").unwrap(), rat().one());
    want.add_term(q.path("x").unwrap(), e.clone(), rat().one());
    assert_eq!(t, want);
    let mut s = TensorElement::zero(rat());
    s.add_term(e.clone(), q.path("y").unwrap(), rat().one());
    let mut flipped = TensorElement::zero(rat());
    flipped.add_term(q.path("y").unwrap(), e, rat().one());
    assert_eq!(swap(&s), flipped);
    assert!(swap(&TensorElement::zero(rat())).is_zero());
}

/// Groups all words of length `j` on `n` letters by rotation, independently of
/// the class machinery.
fn necklace_count(n: usize, j: usize) -> usize {
    let mut seen = BTreeSet::new();
    let total = n.pow(j as u32);
    for code in 0..total {
        let mut w = Vec::with_capacity(j);
        let mut c = code;
        for _ in 0..j {
            w.push(c % n);
            c /= n;
        }
        let mut best = w.clone();
        for i in 1..j {
            let mut r = w[i..].to_vec();
            r.extend_from_slice(&w[..i]);
            best = best.min(r);
        }
        seen.insert(best);
    }
    seen.len()
}

#[test]
fn potential_dimensions() {
    let q3 = Quiver::one_vertex(&["x", "y", "z"]).unwrap();
    assert_eq!(potential_dim(&q3, 1), 3);
    assert_eq!(potential_dim(&q3, 2), 6);
    assert_eq!(potential_dim(&q1(), 3), 4);
    assert_eq!(necklace_count(2, 3), 4);
    for j in 1..=6 {
        assert_eq!(potential_dim(&q1(), j), necklace_count(2, j));
    }
}

#[test]
fn projection_examples() {
    let q = q1();
    let w = project_to_potential(&q, &el(&q, &[(1, "x y"), (1, "y x")])).unwrap();
    assert_eq!(w, pot(&q, &[(2, "x y")]));
    let z = &el(&q, &[(1, "x x")]) - &el(&q, &[(1, "x x")]);
    assert!(project_to_potential(&q, &z).unwrap().is_zero());
    let k = class_of(&q, &q.path("x x y").unwrap()).unwrap();
    let c = cyclic_symmetrize(&q, &Potential::from_classes(rat(), [(k.clone(), rat().one())]));
    assert_eq!(project_to_potential(&q, &c).unwrap(), Potential::from_classes(rat(), [(k, rat().from_i64(3))]));
    let tv = two_vertex();
    let bad = Element::from_path(rat(), tv.path("a3").unwrap());
    assert!(project_to_potential(&tv, &bad).is_err());
}

fn strip_element(q: &Quiver, x: &Element, a: usize, right: bool) -> Element {
    let mut out = Element::zero(x.field());
    for (p, c) in x.terms() {
        let s = if right { strip_right(q, p, a) } else { strip_left(q, p, a) };
        if let Some(r) = s.unwrap() {
            out.add_term(r, c.clone());
        }
    }
    out
}

/// Brute-force oracle: j · Σ { q ∈ Q_{j-1} : class(a q) = σ̄ }.
fn prime_derivative_oracle(q: &Quiver, sigma: &CycleClass, a: usize) -> Element {
    let j = sigma.len();
    let mut out = Element::zero(rat());
    for p in enumerate_paths(q, j - 1, None, None) {
        let ap = match crate::quiverpath::compose(&Path::arrow(q, a), &p) {
            Some(x) => x,
            None => continue,
        };
        if ap.is_cycle() && &class_of(q, &ap).unwrap() == sigma {
            out.add_term(p, rat().from_i64(j as i64));
        }
    }
    out
}

#[test]
fn prime_derivative_formula() {
    for q in [q1(), two_vertex()] {
        for j in 1..=6 {
            for k in cycle_classes(&q, j) {
                let projected = project_to_potential(&q, &cyclic_symmetrize_prime(&q, rat(), &k)).unwrap();
                for a in 0..q.arrow_count() {
                    assert_eq!(cyclic_derivative(&q, &projected, a), prime_derivative_oracle(&q, &k, a));
                }
            }
        }
    }
}

#[test]
fn derivatives_separate_positive_degrees() {
    for q in [q1(), two_vertex(), Quiver::one_vertex(&["x", "y", "z"]).unwrap()] {
        for j in 1..=4 {
            let classes = cycle_classes(&q, j);
            let mut index: BTreeMap<(usize, Path), usize> = BTreeMap::new();
            let mut rows = Vec::new();
            for k in &classes {
                let w = Potential::from_classes(rat(), [(k.clone(), rat().one())]);
                let mut row = Vec::new();
                for a in 0..q.arrow_count() {
                    for (p, c) in cyclic_derivative(&q, &w, a).terms() {
                        let n = index.len();
                        let i = *index.entry((a, p.clone())).or_insert(n);
                        row.push((i, c.clone()));
                    }
                }
                rows.push(row);
            }
            let n = index.len();
            let dense = rows
                .into_iter()
                .map(|r| {
                    let mut v = vec![rat().zero(); n];
                    for (i, c) in r {
                        v[i] = c;
                    }
                    v
                })
                .collect();
            let s = Subspace::span(rat(), n, dense).unwrap();
            assert_eq!(s.dim(), classes.len());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn strip_sides_agree(seed in any::<u64>()) {
        let mut r = sampling::rng(seed);
        for q in [q1(), two_vertex()] {
            let w = sampling::random_potential(&mut r, &q, rat(), 1..=5, 3);
            let c = cyclic_symmetrize(&q, &w);
            for a in 0..q.arrow_count() {
                let right = strip_element(&q, &c, a, true);
                prop_assert_eq!(&right, &strip_element(&q, &c, a, false));
                prop_assert_eq!(&right, &cyclic_derivative(&q, &w, a));
            }
        }
    }

    #[test]
    fn der_swap_identity(seed in any::<u64>()) {
        let mut r = sampling::rng(seed);
        for q in [q1(), two_vertex()] {
            let w = sampling::random_potential(&mut r, &q, rat(), 2..=5, 3);
            for a in 0..q.arrow_count() {
                for b in 0..q.arrow_count() {
                    let lhs = double_derivative(&q, &cyclic_derivative(&q, &w, b), a);
                    let rhs = swap(&double_derivative(&q, &cyclic_derivative(&q, &w, a), b));
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn derivatives_kill_vertices_and_respect_endpoints(seed in any::<u64>()) {
        let mut r = sampling::rng(seed);
        let q = two_vertex();
        let w = sampling::random_potential(&mut r, &q, rat(), 1..=4, 3);
        for a in 0..q.arrow_count() {
            for (p, _) in cyclic_derivative(&q, &w, a).terms() {
                prop_assert_eq!((p.source(), p.target()), (q.target(a), q.source(a)));
            }
        }
        prop_assert!(cyclic_derivative(&q, &Potential::zero(rat()), 0).is_zero());
    }

    #[test]
    fn swap_is_involution(seed in any::<u64>()) {
        let mut r = sampling::rng(seed);
        let q = q1();
        let x = sampling::random_element(&mut r, &q, rat(), 4, 5);
        let t = double_derivative(&q, &x, 0);
        prop_assert_eq!(swap(&swap(&t)), t);
    }
}
