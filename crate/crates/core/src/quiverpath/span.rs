use std::collections::HashMap;

use super::{enumerate_paths, Element, Path, Quiver};
use crate::error::{Error, Result};
use crate::exactalg::{FieldSpec, Scalar, Subspace};

/// A kQ₀-sub-bimodule of `kQ_d` (graded) or of `F^d = ⊕_{k≤d} kQ_k`
/// (filtered), stored as a subspace over the path basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleSpan {
    degree: usize,
    filtered: bool,
    basis_paths: Vec<Path>,
    index: HashMap<Path, usize>,
    space: Subspace,
}

impl BimoduleSpan {
    /// Span of the generators inside `kQ_degree`, closed under vertex
    /// truncation `x ↦ e·x·f`.
    pub fn graded(q: &Quiver, field: FieldSpec, degree: usize, generators: &[Element]) -> Result<Self> {
        for g in generators {
            if let Some(p) = g.terms().map(|(p, _)| p).find(|p| p.len() != degree) {
                return Err(Error::Inhomogeneous(format!(
                    "term {} has degree {}, expected {degree}",
                    p.display(q),
                    p.len()
                )));
            }
        }
        Self::build(q, field, degree, false, enumerate_paths(q, degree, None, None), generators)
    }

    /// Span of the generators inside `F^degree`, closed under vertex truncation.
    pub fn filtered(q: &Quiver, field: FieldSpec, degree: usize, generators: &[Element]) -> Result<Self> {
        for g in generators {
            if let Some(p) = g.terms().map(|(p, _)| p).find(|p| p.len() > degree) {
                return Err(Error::Degree(format!(
                    "term {} exceeds filtration degree {degree}",
                    p.display(q)
                )));
            }
        }
        let paths = (0..=degree)
            .flat_map(|j| enumerate_paths(q, j, None, None))
            .collect();
        Self::build(q, field, degree, true, paths, generators)
    }

    fn build(
        q: &Quiver,
        field: FieldSpec,
        degree: usize,
        filtered: bool,
        basis_paths: Vec<Path>,
        generators: &[Element],
    ) -> Result<Self> {
        let index: HashMap<Path, usize> = basis_paths
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let n = basis_paths.len();
        let mut vectors = Vec::new();
        for g in generators {
            if g.field() != field {
                return Err(Error::FieldMismatch(field, g.field()));
            }
            for e in 0..q.vertex_count() {
                for f in 0..q.vertex_count() {
                    let part = g.truncate(e, f);
                    if part.is_zero() {
                        continue;
                    }
                    let mut v = vec![field.zero(); n];
                    for (p, c) in part.terms() {
                        v[index[p]] = c.clone();
                    }
                    vectors.push(v);
                }
            }
        }
        let space = Subspace::span(field, n, vectors)?;
        Ok(BimoduleSpan {
            degree,
            filtered,
            basis_paths,
            index,
            space,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_filtered(&self) -> bool {
        self.filtered
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn basis_paths(&self) -> &[Path] {
        &self.basis_paths
    }

    /// Coordinate vector of `x` over the path basis; errors if `x` has a term
    /// outside it.
    pub fn vectorize(&self, q: &Quiver, x: &Element) -> Result<Vec<Scalar>> {
        let field = self.space.field();
        let mut v = vec![field.zero(); self.basis_paths.len()];
        for (p, c) in x.terms() {
            let i = self.index.get(p).ok_or_else(|| {
                Error::Degree(format!("term {} lies outside the ambient space", p.display(q)))
            })?;
            v[*i] = c.clone();
        }
        Ok(v)
    }

    /// Element with the given coordinates over the path basis.
    pub fn elementize(&self, v: &[Scalar]) -> Element {
        Element::from_terms(
            self.space.field(),
            self.basis_paths.iter().cloned().zip(v.iter().cloned()),
        )
    }

    pub fn contains(&self, q: &Quiver, x: &Element) -> Result<bool> {
        self.space.contains(&self.vectorize(q, x)?)
    }

    /// Residue of `x` modulo the span (zero iff `x` lies in it).
    pub fn residue(&self, q: &Quiver, x: &Element) -> Result<Element> {
        Ok(self.elementize(&self.space.reduce(&self.vectorize(q, x)?)?))
    }

    /// Basis elements (reduced echelon form).
    pub fn basis_elements(&self) -> Vec<Element> {
        self.space.basis().iter().map(|v| self.elementize(v)).collect()
    }

    /// Whether `e·x·f` stays in the span for every basis vector `x` and all
    /// vertices `e`, `f`.
    pub fn is_bimodule(&self, q: &Quiver) -> Result<bool> {
        for b in self.basis_elements() {
            for e in 0..q.vertex_count() {
                for f in 0..q.vertex_count() {
                    if !self.contains(q, &b.truncate(e, f))? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}
