use super::matrix::gauss_jordan;
use super::{FieldSpec, Scalar};
use crate::error::{Error, Result};

/// A subspace of `k^n` stored by its canonical reduced row-echelon basis.
///
/// Equality of subspaces is equality of these bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: FieldSpec,
    ambient_dim: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub(crate) fn from_reduced(
        field: FieldSpec,
        ambient_dim: usize,
        basis: Vec<Vec<Scalar>>,
        pivots: Vec<usize>,
    ) -> Self {
        Subspace {
            field,
            ambient_dim,
            basis,
            pivots,
        }
    }

    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        Self::from_reduced(field, ambient_dim, Vec::new(), Vec::new())
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![field.zero(); ambient_dim];
                v[i] = field.one();
                v
            })
            .collect();
        Self::from_reduced(field, ambient_dim, basis, (0..ambient_dim).collect())
    }

    /// Span of the given vectors.
    pub fn span(field: FieldSpec, ambient_dim: usize, vectors: Vec<Vec<Scalar>>) -> Result<Self> {
        for v in &vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: v.len(),
                });
            }
            for x in v {
                field.check(x)?;
            }
        }
        let mut rows = vectors;
        let pivots = gauss_jordan(&mut rows, ambient_dim);
        Ok(Self::from_reduced(field, ambient_dim, rows, pivots))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivots
    }

    fn check_len(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Residue of `v` after reduction by the basis; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_len(v)?;
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        Ok(r)
    }

    /// Membership test by reduction against the reduced basis.
    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(|x| x.is_zero()))
    }

    /// Coordinates of `v` in the reduced basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    /// `self + other`.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let vectors = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::span(self.field, self.ambient_dim, vectors)
    }

    /// `self ∩ other`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        intersect(self, other)
    }
}

/// Intersection of two subspaces of the same ambient space.
///
/// Reduces the basis of `a` modulo `b`; combinations of residues that vanish
/// give the intersection.
pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.check_compatible(b)?;
    let field = a.field;
    let k = a.dim();
    let n = a.ambient_dim;
    let residues: Vec<Vec<Scalar>> = a
        .basis
        .iter()
        .map(|v| b.reduce(v))
        .collect::<Result<_>>()?;
    // left kernel of the residue matrix: rows of the transpose
    let mut rows: Vec<Vec<Scalar>> = (0..n)
        .map(|c| (0..k).map(|i| residues[i][c].clone()).collect())
        .collect();
    let pivots = gauss_jordan(&mut rows, k);
    let mut is_pivot = vec![false; k];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut vectors = Vec::new();
    for free in (0..k).filter(|&c| !is_pivot[c]) {
        let mut coeff = vec![field.zero(); k];
        coeff[free] = field.one();
        for (row, &p) in rows.iter().zip(&pivots) {
            coeff[p] = -&row[free];
        }
        let mut v = vec![field.zero(); n];
        for (c, basis_vec) in coeff.iter().zip(&a.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(basis_vec) {
                if !y.is_zero() {
                    *x = &*x + &(c * y);
                }
            }
        }
        vectors.push(v);
    }
    Subspace::span(field, n, vectors)
}

/// Membership test (free-function form).
pub fn contains(space: &Subspace, v: &[Scalar]) -> Result<bool> {
    space.contains(v)
}
