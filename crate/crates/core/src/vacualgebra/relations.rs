use crate::error::{Error, Result};
use crate::exactalg::{FieldSpec, Scalar, SpanSolver, SparseVec};
use crate::potentials::{all_derivatives, Potential};
use crate::quiverpath::{BimoduleSpan, Element, Path, PathCodec, Quiver};

/// Homogeneous relations of a common degree `N`, each running between a
/// single pair of vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationSet {
    quiver: Quiver,
    field: FieldSpec,
    degree: usize,
    relations: Vec<Element>,
    span: BimoduleSpan,
}

impl RelationSet {
    pub fn new(q: &Quiver, field: FieldSpec, degree: usize, relations: Vec<Element>) -> Result<Self> {
        if degree < 2 {
            return Err(Error::Degree(format!("relation degree must be at least 2, got {degree}")));
        }
        for (i, r) in relations.iter().enumerate() {
            if r.field() != field {
                return Err(Error::FieldMismatch(field, r.field()));
            }
            if r.is_zero() {
                continue;
            }
            if r.homogeneous_degree() != Some(degree) {
                return Err(Error::Inhomogeneous(format!(
                    "relation {i} ({}) is not homogeneous of degree {degree}",
                    r.display(q)
                )));
            }
            if r.endpoints().is_none() {
                return Err(Error::Inhomogeneous(format!(
                    "relation {i} ({}) mixes endpoints",
                    r.display(q)
                )));
            }
        }
        let span = BimoduleSpan::graded(q, field, degree, &relations)?;
        Ok(RelationSet {
            quiver: q.clone(),
            field,
            degree,
            relations,
            span,
        })
    }

    /// The relations `∂ₐW`, one per arrow, for `W` homogeneous of degree
    /// `N+1 ≥ 3`.
    pub fn from_potential(q: &Quiver, w: &Potential) -> Result<Self> {
        let top = w
            .homogeneous_degree()
            .ok_or_else(|| Error::Inhomogeneous("potential must be nonzero and homogeneous".into()))?;
        if top < 3 {
            return Err(Error::Degree(format!("potential degree {top} is below 3")));
        }
        Self::new(q, w.field(), top - 1, all_derivatives(q, w))
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// The relation degree `N`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn relations(&self) -> &[Element] {
        &self.relations
    }

    pub fn relation(&self, i: usize) -> &Element {
        &self.relations[i]
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    /// The kQ₀-bimodule `R` spanned by the relations.
    pub fn span(&self) -> &BimoduleSpan {
        &self.span
    }

    pub fn span_dim(&self) -> usize {
        self.span.dim()
    }

    pub fn is_independent(&self) -> bool {
        self.span.dim() == self.relations.len()
    }

    /// Whether relation `i` is indexed by arrow `i` and runs from `t(aᵢ)` to
    /// `s(aᵢ)`, as the derivatives of a potential do.
    pub fn is_keyed_by_arrow(&self) -> bool {
        let q = &self.quiver;
        self.relations.len() == q.arrow_count()
            && self.relations.iter().enumerate().all(|(a, r)| {
                r.endpoints()
                    .is_none_or(|(s, t)| s == q.target(a) && t == q.source(a))
            })
    }

    /// Sparse vectors of the relations over degree-`N` path codes.
    pub(crate) fn sparse_relations(&self) -> Vec<SparseVec> {
        let codec = PathCodec::new(&self.quiver);
        self.relations.iter().map(|r| to_sparse(&codec, r)).collect()
    }

    /// Coefficients expressing a degree-`N` element in the relation list, or
    /// None when it lies outside `R`.
    pub fn coordinates(&self, x: &Element) -> Option<Vec<Scalar>> {
        if x.terms().any(|(p, _)| p.len() != self.degree) {
            return None;
        }
        let codec = PathCodec::new(&self.quiver);
        SpanSolver::new(self.field, &self.sparse_relations()).solve(&to_sparse(&codec, x))
    }
}

/// Key of a path: its code for positive length, its vertex otherwise.
pub(crate) fn path_key(codec: &PathCodec, p: &Path) -> u64 {
    if p.is_trivial() {
        p.source() as u64
    } else {
        codec.encode(p.arrows())
    }
}

pub(crate) fn key_path(q: &Quiver, codec: &PathCodec, degree: usize, key: u64) -> Path {
    if degree == 0 {
        Path::trivial(key as usize)
    } else {
        Path::from_arrows_unchecked(q, codec.decode_arrows(key, degree))
    }
}

/// Sparse vector of a homogeneous element.
pub(crate) fn to_sparse(codec: &PathCodec, x: &Element) -> SparseVec {
    let mut v: SparseVec = x.terms().map(|(p, c)| (path_key(codec, p), c.clone())).collect();
    v.sort_by_key(|(k, _)| *k);
    v
}

pub(crate) fn from_sparse(q: &Quiver, field: FieldSpec, codec: &PathCodec, degree: usize, v: &[(u64, Scalar)]) -> Element {
    Element::from_terms(field, v.iter().map(|(k, c)| (key_path(q, codec, degree, *k), c.clone())))
}

/// Storage key of `later · earlier` given keys and degrees of both factors.
pub(crate) fn product_key(codec: &PathCodec, later: (usize, u64), earlier: (usize, u64)) -> (usize, u64) {
    match (earlier.0, later.0) {
        (0, _) => later,
        (_, 0) => earlier,
        (de, dl) => (de + dl, codec.concat(earlier.1, later.1, dl)),
    }
}
