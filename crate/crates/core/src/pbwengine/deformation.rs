use crate::error::{Error, Result};
use crate::exactalg::{SpanSolver, SparseVec};
use crate::potentials::{cyclic_derivative, Potential};
use crate::quiverpath::{Element, PathCodec};
use crate::vacualgebra::{to_sparse, RelationSet};

/// A filtered deformation of the relations `rₐ = ∂ₐW_{N+1}`: the deformed
/// relations are `rₐ − φ(rₐ)` with `φ(rₐ)` of degree at most `N−1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Deformation {
    base: RelationSet,
    phi: Vec<Element>,
}

impl Deformation {
    /// Checks that the base is indexed by arrows and that every `φ(rₐ)` has
    /// degree at most `N−1` and runs from `t(a)` to `s(a)`.
    pub fn new(base: &RelationSet, phi: Vec<Element>) -> Result<Self> {
        let q = base.quiver();
        if !base.is_keyed_by_arrow() {
            return Err(Error::Precondition(
                "deformation base must have one relation per arrow, running from t(a) to s(a)".into(),
            ));
        }
        if phi.len() != q.arrow_count() {
            return Err(Error::DimensionMismatch {
                expected: q.arrow_count(),
                found: phi.len(),
            });
        }
        let n = base.degree();
        for (a, x) in phi.iter().enumerate() {
            if x.field() != base.field() {
                return Err(Error::FieldMismatch(base.field(), x.field()));
            }
            if let Some(d) = x.max_degree() {
                if d >= n {
                    return Err(Error::Degree(format!(
                        "phi({}) has degree {d}, at most {} allowed",
                        q.arrow_name(a),
                        n - 1
                    )));
                }
            }
            for (p, _) in x.terms() {
                if p.source() != q.target(a) || p.target() != q.source(a) {
                    return Err(Error::Inhomogeneous(format!(
                        "term {} of phi({}) does not run from the target to the source of the arrow",
                        p.display(q),
                        q.arrow_name(a)
                    )));
                }
            }
        }
        Ok(Deformation { base: base.clone(), phi })
    }

    /// The undeformed deformation `φ ≡ 0`.
    pub fn trivial(base: &RelationSet) -> Result<Self> {
        let zero = Element::zero(base.field());
        Self::new(base, vec![zero; base.quiver().arrow_count()])
    }

    pub fn base(&self) -> &RelationSet {
        &self.base
    }

    /// The relation degree `N`.
    pub fn degree(&self) -> usize {
        self.base.degree()
    }

    /// `φ(rₐ)` for every arrow `a`.
    pub fn phi(&self) -> &[Element] {
        &self.phi
    }

    /// `φ(rₐ)`.
    pub fn phi_of(&self, a: usize) -> &Element {
        &self.phi[a]
    }

    /// Degree-`j` part `φ_j(rₐ)`.
    pub fn phi_j(&self, a: usize, j: usize) -> Element {
        self.phi[a].graded_component(j)
    }

    pub fn is_trivial(&self) -> bool {
        self.phi.iter().all(Element::is_zero)
    }

    /// The deformed relations `rₐ − φ(rₐ)`.
    pub fn deformed_relations(&self) -> Vec<Element> {
        self.base
            .relations()
            .iter()
            .zip(&self.phi)
            .map(|(r, f)| r - f)
            .collect()
    }
}

/// `φ(∂ₐW_{N+1}) = −∂ₐW′` for a lower-order potential `W′` of degree at most `N`.
pub fn deformation_from_potential(base: &RelationSet, lower: &Potential) -> Result<Deformation> {
    let q = base.quiver();
    if lower.field() != base.field() {
        return Err(Error::FieldMismatch(base.field(), lower.field()));
    }
    if let Some(d) = lower.max_degree() {
        if d > base.degree() {
            return Err(Error::Degree(format!(
                "lower potential has degree {d}, at most {} allowed",
                base.degree()
            )));
        }
    }
    let phi = (0..q.arrow_count())
        .map(|a| -&cyclic_derivative(q, lower, a))
        .collect();
    Deformation::new(base, phi)
}

/// Converts deformed relations `pᵢ = gᵢ + lᵢ`, whose top parts `gᵢ` form a
/// basis of `R`, into the per-arrow form `φ(rₐ) = −Σ Mₐᵢ lᵢ` where
/// `rₐ = Σ Mₐᵢ gᵢ`.
pub fn from_relation_basis(base: &RelationSet, deformed: &[Element]) -> Result<Deformation> {
    let q = base.quiver();
    let n = base.degree();
    let field = base.field();
    if deformed.len() != q.arrow_count() || base.span_dim() != q.arrow_count() {
        return Err(Error::DimensionMismatch {
            expected: q.arrow_count(),
            found: deformed.len().min(base.span_dim()),
        });
    }
    let codec = PathCodec::new(q);
    let tops: Vec<Element> = deformed.iter().map(|p| p.graded_component(n)).collect();
    for (i, p) in deformed.iter().enumerate() {
        if p.max_degree().is_some_and(|d| d > n) {
            return Err(Error::Degree(format!("deformed relation {i} exceeds degree {n}")));
        }
    }
    let vectors: Vec<SparseVec> = tops.iter().map(|g| to_sparse(&codec, g)).collect();
    let solver = SpanSolver::new(field, &vectors);
    if solver.rank() != vectors.len() {
        return Err(Error::Precondition("top parts of the deformed relations are dependent".into()));
    }
    let mut phi = Vec::with_capacity(q.arrow_count());
    for (a, r) in base.relations().iter().enumerate() {
        let m = solver.solve(&to_sparse(&codec, r)).ok_or_else(|| {
            Error::Precondition(format!(
                "relation of arrow {} is outside the span of the top parts",
                q.arrow_name(a)
            ))
        })?;
        let mut x = Element::zero(field);
        for (i, c) in m.iter().enumerate() {
            if !c.is_zero() {
                x.add_scaled(&-c, &(&deformed[i] - &tops[i]));
            }
        }
        phi.push(x);
    }
    Deformation::new(base, phi)
}
