use super::fit::{equations, solve_homogeneous};
use super::{cy_hilbert_prediction, potential, ExampleInstance};
use crate::error::{Error, Result};
use crate::exactalg::{FieldSpec, Scalar, SparseVec};
use crate::pbwengine::Deformation;
use crate::potentials::Potential;
use crate::quiverpath::{enumerate_paths, Element, Path, PathCodec, Quiver};
use crate::sampling;
use crate::vacualgebra::{left_multiply, right_multiply, to_sparse, RelationSet};

/// Quiver with loops `a1` at `1`, `a2` at `2`, and arrows `a3: 2 → 1`,
/// `a4: 1 → 2`; potential `a3a4a1^{N−1} + a4a3a2^{N−1}`.
pub fn two_vertex(n: usize, field: FieldSpec) -> Result<ExampleInstance> {
    if n < 2 {
        return Err(Error::Invalid("two-vertex family needs N ≥ 2".into()));
    }
    let q = Quiver::new(
        &["1", "2"],
        &[("a1", "1", "1"), ("a2", "2", "2"), ("a3", "2", "1"), ("a4", "1", "2")],
    )?;
    let word = |head: &str, tail: &str| {
        let mut w = vec![head.to_string()];
        w.extend(std::iter::repeat_n(tail.to_string(), n - 1));
        w.join(" ")
    };
    let w = potential(
        &q,
        field,
        &[(field.one(), word("a3 a4", "a1")), (field.one(), word("a4 a3", "a2"))],
    )?;
    let relations = RelationSet::from_potential(&q, &w)?;
    let label = match field {
        FieldSpec::Rationals => 0,
        FieldSpec::PrimeField(p) => p,
    };
    Ok(ExampleInstance {
        name: format!("two-vertex:{n},{label}"),
        expected_hilbert: cy_hilbert_prediction(&q, n, n + 4),
        quiver: q,
        potential: Some(w),
        relations,
        printed_scale: None,
        calabi_yau: Some(true),
    })
}

fn require_cubic(inst: &ExampleInstance) -> Result<()> {
    if inst.relation_degree() != 3 || inst.quiver.arrow_count() != 4 {
        return Err(Error::Precondition("documented deformations need the N = 3 instance".into()));
    }
    Ok(())
}

/// The three documented deformations of the `N = 3` instance, by index
/// `1..=3`, each given as `φ` on `a1, a2, a3, a4`.
pub fn two_vertex_deformation(inst: &ExampleInstance, which: usize) -> Result<Deformation> {
    require_cubic(inst)?;
    let table: [[&str; 4]; 3] = [
        ["", "a4 a3", "a4 a1", "a1 a3"],
        ["a3 a4", "", "a4 a1", "a1 a3"],
        ["a1 a1", "", "", ""],
    ];
    let row = which
        .checked_sub(1)
        .and_then(|i| table.get(i))
        .ok_or_else(|| Error::Invalid(format!("no documented deformation {which}")))?;
    let field = inst.field();
    let q = &inst.quiver;
    let phi = row
        .iter()
        .map(|p| {
            if p.is_empty() {
                Ok(Element::zero(field))
            } else {
                Ok(Element::from_path(field, q.path(p)?))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Deformation::new(&inst.relations, phi)
}

/// Lower potential `[a4 a1 a3]` whose derivatives give the second
/// documented deformation.
pub fn two_vertex_expected_lower(inst: &ExampleInstance) -> Result<Potential> {
    require_cubic(inst)?;
    potential(&inst.quiver, inst.field(), &[(inst.field().one(), "a4 a1 a3".into())])
}

/// Solutions of `PBW2′ residue at 1 = μ·r_{a1}`, `residue at 2 = ν·r_{a2}`
/// with unknown top deformation `φ_{N−1}` and scalars `μ`, `ν`.
#[derive(Clone, Debug, PartialEq)]
pub struct MuNuReport {
    pub field: FieldSpec,
    pub solution_dim: usize,
    /// `(μ, ν)` for random points of the solution space.
    pub samples: Vec<(Scalar, Scalar)>,
    pub mu_identically_zero: bool,
    pub nu_identically_zero: bool,
}

impl MuNuReport {
    pub fn all_zero(&self) -> bool {
        self.mu_identically_zero && self.nu_identically_zero
    }
}

pub fn two_vertex_mu_nu(n: usize, field: FieldSpec, samples: usize, seed: u64) -> Result<MuNuReport> {
    let inst = two_vertex(n, field)?;
    let q = &inst.quiver;
    let codec = PathCodec::new(q);
    let mut columns: Vec<(usize, SparseVec)> = Vec::new();
    for a in 0..q.arrow_count() {
        let arrow = Path::arrow(q, a);
        for p in enumerate_paths(q, n - 1, Some(q.target(a)), Some(q.source(a))) {
            let x = Element::from_path(field, p);
            let mut residue = right_multiply(&x, &arrow);
            residue.add_scaled(&-field.one(), &left_multiply(&arrow, &x));
            columns.push((columns.len(), to_sparse(&codec, &residue)));
        }
    }
    let mu = columns.len();
    for (offset, a) in [0usize, 1].into_iter().enumerate() {
        let r = inst.relations.relation(a).scale(&-field.one());
        columns.push((mu + offset, to_sparse(&codec, &r)));
    }
    let basis = solve_homogeneous(field, equations(&columns), mu + 2);
    let coordinate = |v: &SparseVec, k: usize| -> Scalar {
        v.iter()
            .find(|(key, _)| *key as usize == k)
            .map_or_else(|| field.zero(), |(_, x)| x.clone())
    };
    let mu_identically_zero = basis.iter().all(|v| coordinate(v, mu).is_zero());
    let nu_identically_zero = basis.iter().all(|v| coordinate(v, mu + 1).is_zero());
    let mut rng = sampling::rng(seed);
    let samples = (0..samples)
        .map(|_| {
            let mut m = field.zero();
            let mut nu = field.zero();
            for v in &basis {
                let c = sampling::field_scalar(&mut rng, field);
                m = &m + &(&c * &coordinate(v, mu));
                nu = &nu + &(&c * &coordinate(v, mu + 1));
            }
            (m, nu)
        })
        .collect();
    Ok(MuNuReport {
        field,
        solution_dim: basis.len(),
        samples,
        mu_identically_zero,
        nu_identically_zero,
    })
}
