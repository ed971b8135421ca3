use proptest::prelude::*;

use super::*;
use crate::error::Error;
use crate::exactalg::{FieldSpec, MatrixQ};
use crate::potentials::{cycle_classes, primitive_decomposition, Potential};
use crate::quiverpath::{enumerate_paths, Element, Quiver};
use crate::sampling;
use crate::vacualgebra::RelationSet;
use crate::zoo::{self, ExampleInstance};

fn rat() -> FieldSpec {
    FieldSpec::Rationals
}

fn bases() -> Vec<ExampleInstance> {
    vec![
        zoo::yang_mills_identity(1).unwrap(),
        zoo::cubic_type_a(rat().from_i64(1), rat().from_i64(2)).unwrap(),
        zoo::antisymmetriser(3).unwrap(),
        zoo::two_vertex(3, rat()).unwrap(),
        zoo::cyclic_quiver(3, 2, &[2, 2, 2]).unwrap(),
    ]
}

fn random_lower(inst: &ExampleInstance, seed: u64) -> Potential {
    let mut rng = sampling::rng(seed);
    sampling::random_potential(&mut rng, &inst.quiver, rat(), 1..=inst.relation_degree(), 2)
}

#[test]
fn derived_deformations_satisfy_every_condition() {
    for (i, inst) in bases().iter().enumerate() {
        for seed in 0..3 {
            let w = random_lower(inst, 100 * i as u64 + seed);
            let d = deformation_from_potential(&inst.relations, &w).unwrap();
            let r = check_conditions_with(&d, CheckOptions::without_base_check()).unwrap();
            assert!(r.pbw1.holds && r.pbw2.holds && r.pbw4.holds, "{}", inst.name);
            assert!(r.pbw3.iter().all(|c| c.holds && c.evaluated), "{}", inst.name);
            assert!(r.pbw2prime.holds, "{}", inst.name);
            assert!(r.overall);
            assert_eq!(r.base_status, BaseStatus::NotChecked);
            assert!(!r.pbw_implied());
        }
    }
}

#[test]
fn reconstruction_inverts_derivation() {
    for (i, inst) in bases().iter().enumerate() {
        for seed in 0..4 {
            let w = random_lower(inst, 1000 + 10 * i as u64 + seed);
            let d = deformation_from_potential(&inst.relations, &w).unwrap();
            assert_eq!(reconstruct_potential(&d).unwrap(), w, "{}", inst.name);
        }
    }
}

#[test]
fn lambda_tables_of_derived_deformations_are_consistent() {
    let inst = zoo::two_vertex(3, rat()).unwrap();
    let w = random_lower(&inst, 5);
    let d = deformation_from_potential(&inst.relations, &w).unwrap();
    for j in 1..=3 {
        let t = lambda_table(&d, j).unwrap();
        let table = t.table().unwrap();
        assert_eq!(table.degree, j);
        for k in cycle_classes(&inst.quiver, j) {
            let c = w.coefficient(&k);
            let lam = table.value(&k).cloned().unwrap_or_else(|| rat().zero());
            let (_, m) = primitive_decomposition(&inst.quiver, &k);
            assert_eq!(lam, -&c.scale_int(m as i64));
        }
    }
    assert!(matches!(lambda_table(&d, 0), Err(Error::Degree(_))));
    assert!(matches!(lambda_table(&d, 4), Err(Error::Degree(_))));
}

#[test]
fn trivial_deformation_is_pbw() {
    for inst in bases() {
        let d = Deformation::trivial(&inst.relations).unwrap();
        assert!(d.is_trivial());
        let r = check_conditions(&d).unwrap();
        assert!(r.overall && r.pbw2prime.holds);
        assert!(r.pbw_implied(), "{}: {:?}", inst.name, r.base_status);
        assert!(reconstruct_potential(&d).unwrap().is_zero());
    }
}

#[test]
fn non_calabi_yau_base_is_flagged() {
    let inst = zoo::one_loop_cubic().unwrap();
    let d = Deformation::trivial(&inst.relations).unwrap();
    let r = check_conditions(&d).unwrap();
    assert!(r.overall);
    assert!(matches!(r.base_status, BaseStatus::Inconsistent { .. }));
    assert!(!r.pbw_implied());
}

#[test]
fn deformation_rejects_bad_data() {
    let inst = zoo::two_vertex(3, rat()).unwrap();
    let q = &inst.quiver;
    let e = |w: &str| Element::from_path(rat(), q.path(w).unwrap());
    let zero = Element::zero(rat());
    assert!(matches!(
        Deformation::new(&inst.relations, vec![zero.clone(); 3]),
        Err(Error::DimensionMismatch { .. })
    ));
    let high = vec![e("a3 a4 a1"), zero.clone(), zero.clone(), zero.clone()];
    assert!(matches!(Deformation::new(&inst.relations, high), Err(Error::Degree(_))));
    let wrong_ends = vec![zero.clone(), zero.clone(), e("a1"), zero.clone()];
    assert!(Deformation::new(&inst.relations, wrong_ends).is_err());
    let other = vec![Element::zero(FieldSpec::PrimeField(5)); 4];
    assert!(matches!(Deformation::new(&inst.relations, other), Err(Error::FieldMismatch(..))));
    let ok = vec![e("a1"), zero.clone(), e("a4 a1"), zero];
    let d = Deformation::new(&inst.relations, ok).unwrap();
    assert_eq!(d.phi_j(2, 2), e("a4 a1"));
    assert!(d.phi_j(2, 1).is_zero());
    assert!(matches!(
        deformation_from_potential(&inst.relations, &random_lower(&inst, 1).plus(inst.potential.as_ref().unwrap())),
        Err(Error::Degree(_))
    ));
}

#[test]
fn from_relation_basis_recovers_phi() {
    let inst = zoo::yang_mills_identity(1).unwrap();
    let w = random_lower(&inst, 9);
    let d = deformation_from_potential(&inst.relations, &w).unwrap();
    let deformed = d.deformed_relations();
    let two = rat().from_i64(2);
    let mut mixed = deformed[0].clone();
    mixed.add_scaled(&two, &deformed[1]);
    let again = from_relation_basis(&inst.relations, &[deformed[1].clone(), mixed]).unwrap();
    assert_eq!(again, d);
}

#[test]
fn dependent_relations_must_agree_under_phi() {
    let q = Quiver::one_vertex(&["x", "y"]).unwrap();
    let xx = Element::from_path(rat(), q.path("x x").unwrap());
    let base = RelationSet::new(&q, rat(), 2, vec![xx.clone(), xx]).unwrap();
    let x = Element::from_path(rat(), q.path("x").unwrap());
    let d = Deformation::new(&base, vec![x.clone(), Element::zero(rat())]).unwrap();
    let r = check_conditions_with(&d, CheckOptions::without_base_check()).unwrap();
    assert!(!r.pbw1.holds);
    assert!(!r.overall);
    let w = r.pbw1.witness.unwrap();
    assert!(w == x || w == x.scale(&rat().from_i64(-1)));
}

#[test]
fn isolated_vertex_breaks_theta() {
    let q = Quiver::new(&["1", "2"], &[("x", "1", "1")]).unwrap();
    let base = RelationSet::new(&q, rat(), 2, vec![Element::from_path(rat(), q.path("x x").unwrap())]).unwrap();
    let d = Deformation::trivial(&base).unwrap();
    assert!(matches!(check_pbw2prime(&d), Err(Error::ThetaNotInjective(_))));
}

#[test]
fn antisymmetric_bracket_blocks_reconstruction() {
    let alpha = MatrixQ::from_i64(rat(), &[vec![0, 0, 0], vec![0, 0, 1], vec![0, -1, 0]]).unwrap();
    let lie = zoo::antisym3_lie(&alpha).unwrap();
    assert!(lie.jacobi.holds);
    let r = check_conditions(&lie.deformation).unwrap();
    assert!(r.overall && r.pbw_implied());
    assert!(!r.pbw2prime.holds);
    assert!(matches!(reconstruct_potential(&lie.deformation), Err(Error::Pbw2PrimeViolated(_))));
}

#[test]
fn cyclic_quiver_deformations_live_in_degrees_divisible_by_k() {
    let inst = zoo::cyclic_quiver(3, 2, &[2, 2, 2]).unwrap();
    let q = &inst.quiver;
    let n = inst.relation_degree();
    for j in 1..=n {
        for a in 0..q.arrow_count() {
            let room = enumerate_paths(q, j - 1, Some(q.target(a)), Some(q.source(a)));
            assert_eq!(room.is_empty(), j % 3 != 0, "j = {j}");
        }
    }
    for seed in 0..3 {
        let w = random_lower(&inst, 77 + seed);
        let d = deformation_from_potential(&inst.relations, &w).unwrap();
        for a in 0..q.arrow_count() {
            for j in (1..=n).filter(|j| j % 3 != 0) {
                assert!(d.phi_j(a, j - 1).is_zero());
            }
        }
    }
}

#[test]
fn oracle_matches_graded_dims_for_trivial_deformation() {
    let inst = zoo::two_vertex(3, rat()).unwrap();
    let d = Deformation::trivial(&inst.relations).unwrap();
    let v = gr_oracle(&d, 5, 3).unwrap();
    assert_eq!(v.upper_bounds, v.graded_cumulative);
    assert!(v.consistent());
    let w = random_lower(&inst, 3);
    let v = gr_oracle(&deformation_from_potential(&inst.relations, &w).unwrap(), 5, 3).unwrap();
    assert!(v.consistent());
    assert!(gr_oracle(&d, 80, 0).is_err());
}

#[test]
fn characteristic_flags_follow_field() {
    let inst = zoo::two_vertex(3, FieldSpec::PrimeField(5)).unwrap();
    let d = Deformation::trivial(&inst.relations).unwrap();
    let r = check_conditions_with(&d, CheckOptions::without_base_check()).unwrap();
    assert_eq!(r.characteristic, 5);
    assert!(!r.char_divides_n_factorial);
    assert!(!r.char_divides_n1_factorial);
    let inst = zoo::two_vertex(4, FieldSpec::PrimeField(5)).unwrap();
    let r = check_conditions_with(&Deformation::trivial(&inst.relations).unwrap(), CheckOptions::without_base_check()).unwrap();
    assert!(!r.char_divides_n_factorial && r.char_divides_n1_factorial);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn oracle_violation_implies_conditions_fail(
        alpha in prop::array::uniform9(-2i64..=2),
        constants in prop::array::uniform3(-2i64..=2),
    ) {
        let m = MatrixQ::from_i64(rat(), &[alpha[0..3].to_vec(), alpha[3..6].to_vec(), alpha[6..9].to_vec()]).unwrap();
        let lie = zoo::antisym3_lie(&m).unwrap();
        let q = lie.deformation.base().quiver().clone();
        let phi: Vec<Element> = lie
            .deformation
            .phi()
            .iter()
            .zip(constants)
            .map(|(x, c)| {
                let mut y = x.clone();
                y.add_term(q.trivial(0), rat().from_i64(c));
                y
            })
            .collect();
        let d = Deformation::new(lie.deformation.base(), phi).unwrap();
        let r = check_conditions(&d).unwrap();
        let v = gr_oracle(&d, 3, 2).unwrap();
        if r.pbw_implied() {
            prop_assert!(v.consistent());
        }
        if !v.consistent() {
            prop_assert!(!r.overall);
        }
    }

    #[test]
    fn derived_deformations_pass_pbw2prime_in_prime_fields(seed in 0u64..1000, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let field = FieldSpec::prime(p).unwrap();
        let inst = zoo::two_vertex(3, field).unwrap();
        let mut rng = sampling::rng(seed);
        let w = sampling::random_potential(&mut rng, &inst.quiver, field, 1..=3, 2);
        let d = deformation_from_potential(&inst.relations, &w).unwrap();
        prop_assert!(check_pbw2prime(&d).unwrap().iter().all(|r| r.is_zero()));
    }
}
