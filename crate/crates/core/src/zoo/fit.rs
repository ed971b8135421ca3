use rand::Rng;

use crate::error::{Error, Result};
use crate::exactalg::{sparse_from_pairs, Echelon, FieldSpec, Scalar, SparseVec};
use crate::potentials::{cycle_classes, cyclic_derivative, CycleClass, Potential};
use crate::quiverpath::{PathCodec, Quiver};
use crate::sampling;
use crate::vacualgebra::{to_sparse, RelationSet};

/// Field used for generic-rank sampling.
pub const FIT_FIELD: FieldSpec = FieldSpec::PrimeField(2_147_483_647);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FitMode {
    /// `∂_{aᵢ}W ∈ 𝕜·rᵢ` for each arrow.
    PerGeneratorLine,
    /// `∂ₐW ∈ span(R)` for every arrow and `span{∂ₐW} = span(R)`.
    WholeSpan,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FitOutcome {
    Found { potential: Potential, solution_dim: usize },
    /// Only `W = 0` satisfies the constraints.
    Infeasible,
    /// Solutions exist but none of the sampled ones has derivatives spanning `R`.
    RankNotAchieved { solution_dim: usize, rank: usize, needed: usize },
}

impl FitOutcome {
    pub fn potential(&self) -> Option<&Potential> {
        match self {
            FitOutcome::Found { potential, .. } => Some(potential),
            _ => None,
        }
    }
}

fn class_derivatives(q: &Quiver, field: FieldSpec, classes: &[CycleClass], codec: &PathCodec) -> Vec<Vec<SparseVec>> {
    classes
        .iter()
        .map(|k| {
            let w = Potential::from_classes(field, [(k.clone(), field.one())]);
            (0..q.arrow_count())
                .map(|a| to_sparse(codec, &cyclic_derivative(q, &w, a)))
                .collect()
        })
        .collect()
}

/// Solves the homogeneous system whose equations are the given rows over
/// columns `0..columns`; returns a basis of the solutions.
pub(super) fn solve_homogeneous(field: FieldSpec, rows: Vec<SparseVec>, columns: usize) -> Vec<SparseVec> {
    let mut ech = Echelon::new(field);
    for r in rows {
        ech.insert(r);
    }
    let cols: Vec<u64> = (0..columns as u64).collect();
    ech.kernel_basis(&cols)
}

/// Transposes `per_column[c] = sparse vector over equation keys` into
/// equation rows over column indices.
pub(super) fn equations(per_column: &[(usize, SparseVec)]) -> Vec<SparseVec> {
    let mut by_key: std::collections::BTreeMap<u64, Vec<(u64, Scalar)>> = Default::default();
    for (c, v) in per_column {
        for (k, x) in v {
            by_key.entry(*k).or_default().push((*c as u64, x.clone()));
        }
    }
    by_key.into_values().map(sparse_from_pairs).collect()
}

fn combine(field: FieldSpec, classes: &[CycleClass], basis: &[SparseVec], coeffs: &[Scalar]) -> Potential {
    let mut w = Potential::zero(field);
    for (v, c) in basis.iter().zip(coeffs) {
        for (k, x) in v {
            if (*k as usize) < classes.len() {
                w.add_class(classes[*k as usize].clone(), c * x);
            }
        }
    }
    w
}

/// Looks for a potential `W` of degree `N+1` whose derivatives match the
/// relations as prescribed by `mode`. Sampling uses `seed`, then `seed+1`
/// and `seed+2`.
pub fn fit_potential(q: &Quiver, rels: &RelationSet, mode: FitMode, seed: u64) -> Result<FitOutcome> {
    let field = rels.field();
    let n = rels.degree();
    let codec = PathCodec::new(q);
    let classes = cycle_classes(q, n + 1);
    let ders = class_derivatives(q, field, &classes, &codec);
    let m = classes.len();
    let na = q.arrow_count() as u64;
    let solutions: Vec<SparseVec> = match mode {
        FitMode::PerGeneratorLine => {
            if rels.len() != q.arrow_count() {
                return Err(Error::DimensionMismatch {
                    expected: q.arrow_count(),
                    found: rels.len(),
                });
            }
            let mut cols: Vec<(usize, SparseVec)> = Vec::new();
            for (c, per_arrow) in ders.iter().enumerate() {
                let v = per_arrow
                    .iter()
                    .enumerate()
                    .flat_map(|(a, d)| d.iter().map(move |(k, x)| (k * na + a as u64, x.clone())));
                cols.push((c, sparse_from_pairs(v)));
            }
            for (a, r) in rels.relations().iter().enumerate() {
                let v = to_sparse(&codec, r).into_iter().map(|(k, x)| (k * na + a as u64, -x));
                cols.push((m + a, sparse_from_pairs(v)));
            }
            solve_homogeneous(field, equations(&cols), m + q.arrow_count())
        }
        FitMode::WholeSpan => {
            let mut span = Echelon::new(field);
            for r in rels.relations() {
                span.insert(to_sparse(&codec, r));
            }
            let cols: Vec<(usize, SparseVec)> = ders
                .iter()
                .enumerate()
                .map(|(c, per_arrow)| {
                    let v = per_arrow.iter().enumerate().flat_map(|(a, d)| {
                        span.reduce_full(d.clone())
                            .into_iter()
                            .map(move |(k, x)| (k * na + a as u64, x))
                    });
                    (c, sparse_from_pairs(v))
                })
                .collect();
            solve_homogeneous(field, equations(&cols), m)
        }
    };
    let basis: Vec<SparseVec> = solutions
        .into_iter()
        .map(|v| v.into_iter().filter(|(k, _)| (*k as usize) < m).collect::<SparseVec>())
        .filter(|v| !v.is_empty())
        .collect();
    if basis.is_empty() {
        return Ok(FitOutcome::Infeasible);
    }
    let needed = rels.span_dim();
    let mut best = 0;
    for s in seed..seed + 3 {
        let mut rng = sampling::rng(s);
        let lifts: Vec<i64> = (0..basis.len())
            .map(|_| rng.random_range(1..FIT_FIELD.characteristic()) as i64)
            .collect();
        let sample_coeffs: Vec<Scalar> = lifts.iter().map(|&c| FIT_FIELD.from_i64(c)).collect();
        let reduced: Option<Vec<SparseVec>> = basis
            .iter()
            .map(|v| {
                v.iter()
                    .map(|(k, x)| Some((*k, x.reduce_mod(FIT_FIELD)?)))
                    .collect::<Option<SparseVec>>()
            })
            .collect();
        let Some(reduced) = reduced else { continue };
        let sample = combine(FIT_FIELD, &classes, &reduced, &sample_coeffs);
        let mut ech = Echelon::new(FIT_FIELD);
        for a in 0..q.arrow_count() {
            ech.insert(to_sparse(&codec, &cyclic_derivative(q, &sample, a)));
        }
        best = best.max(ech.rank());
        if ech.rank() == needed {
            let coeffs: Vec<Scalar> = if basis.len() == 1 {
                vec![field.one()]
            } else {
                lifts.iter().map(|&c| field.from_i64(c)).collect()
            };
            return Ok(FitOutcome::Found {
                potential: combine(field, &classes, &basis, &coeffs),
                solution_dim: basis.len(),
            });
        }
    }
    Ok(FitOutcome::RankNotAchieved {
        solution_dim: basis.len(),
        rank: best,
        needed,
    })
}
