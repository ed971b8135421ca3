//! Seeded random generators for scalars, elements and potentials.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactalg::{FieldSpec, Scalar};
use crate::potentials::{cycle_classes, Potential};
use crate::quiverpath::{enumerate_paths, Element, Quiver};

/// Deterministic generator used throughout the crate.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integer scalar drawn uniformly from `[-bound, bound]`.
pub fn small_scalar<R: Rng>(rng: &mut R, field: FieldSpec, bound: i64) -> Scalar {
    field.from_i64(rng.random_range(-bound..=bound))
}

/// Uniform element of a prime field, or a small integer over the rationals.
pub fn field_scalar<R: Rng>(rng: &mut R, field: FieldSpec) -> Scalar {
    match field {
        FieldSpec::PrimeField(p) => field.from_i64(rng.random_range(0..p) as i64),
        FieldSpec::Rationals => small_scalar(rng, field, 9),
    }
}

/// Random potential with about `terms` classes per degree in `degrees`.
pub fn random_potential<R: Rng>(
    rng: &mut R,
    q: &Quiver,
    field: FieldSpec,
    degrees: std::ops::RangeInclusive<usize>,
    terms: usize,
) -> Potential {
    let mut w = Potential::zero(field);
    for j in degrees {
        let classes = cycle_classes(q, j);
        if classes.is_empty() {
            continue;
        }
        for _ in 0..terms {
            let k = classes[rng.random_range(0..classes.len())].clone();
            w.add_class(k, small_scalar(rng, field, 5));
        }
    }
    w
}

/// Random element of `kQ_j` with about `terms` terms.
pub fn random_element<R: Rng>(rng: &mut R, q: &Quiver, field: FieldSpec, j: usize, terms: usize) -> Element {
    let paths = enumerate_paths(q, j, None, None);
    let mut e = Element::zero(field);
    for _ in 0..terms {
        let p = paths[rng.random_range(0..paths.len())].clone();
        e.add_term(p, small_scalar(rng, field, 5));
    }
    e
}
