use super::relations::{from_sparse, to_sparse, RelationSet};
use crate::error::{Error, Result};
use crate::exactalg::{sparse_from_pairs, Echelon, FieldSpec, Scalar, SpanSolver, SparseVec, Subspace};
use crate::potentials::{cyclic_derivative, cyclic_symmetrize, Potential};
use crate::quiverpath::{compose, BimoduleSpan, Element, Path, PathCodec, Quiver};

/// `R·kQ₁ ∩ kQ₁·R` inside `kQ_{N+1}`, with each basis vector written in both
/// tensor bases.
///
/// Basis vector `i` equals `Σ c · rⱼ·b` over `right[i] = [(j, b, c)]` and
/// `Σ d · a·rⱼ` over `left[i] = [(a, j, d)]`, where `j` ranges over the
/// independent relations listed in `independent`.
#[derive(Clone, Debug)]
pub struct RelationIntersection {
    degree: usize,
    independent: Vec<usize>,
    basis: Vec<Element>,
    right: Vec<Vec<(usize, usize, Scalar)>>,
    left: Vec<Vec<(usize, usize, Scalar)>>,
}

impl RelationIntersection {
    /// The degree `N+1` of the intersection.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Indices of a maximal independent subset of the relations, in order.
    pub fn independent(&self) -> &[usize] {
        &self.independent
    }

    pub fn basis(&self) -> &[Element] {
        &self.basis
    }

    /// Coordinates of basis vector `i` in the `{rⱼ·b}` basis as `(j, b, c)`.
    pub fn right_coordinates(&self, i: usize) -> &[(usize, usize, Scalar)] {
        &self.right[i]
    }

    /// Coordinates of basis vector `i` in the `{a·rⱼ}` basis as `(a, j, d)`.
    pub fn left_coordinates(&self, i: usize) -> &[(usize, usize, Scalar)] {
        &self.left[i]
    }

    /// The intersection as a subspace over the paths of length `N+1`.
    pub fn subspace(&self, q: &Quiver, field: FieldSpec) -> Result<Subspace> {
        Ok(BimoduleSpan::graded(q, field, self.degree, &self.basis)?.space().clone())
    }
}

/// `r · b` (apply `b`, then `r`) for an element `r`.
pub(crate) fn right_multiply(r: &Element, b: &Path) -> Element {
    Element::from_terms(r.field(), r.terms().filter_map(|(p, c)| Some((compose(p, b)?, c.clone()))))
}

/// `a · r` (apply `r`, then `a`).
pub(crate) fn left_multiply(a: &Path, r: &Element) -> Element {
    Element::from_terms(r.field(), r.terms().filter_map(|(p, c)| Some((compose(a, p)?, c.clone()))))
}

/// Computes `R·kQ₁ ∩ kQ₁·R` with dual coordinates.
pub fn relation_intersection(rels: &RelationSet) -> Result<RelationIntersection> {
    let q = rels.quiver();
    let field = rels.field();
    let n = rels.degree();
    let codec = PathCodec::new(q);
    let mut ech = Echelon::new(field);
    let mut independent = Vec::new();
    for (i, v) in rels.sparse_relations().into_iter().enumerate() {
        if ech.insert(v).is_some() {
            independent.push(i);
        }
    }
    let mut vectors: Vec<SparseVec> = Vec::new();
    let mut labels_right = Vec::new();
    let mut labels_left = Vec::new();
    for &j in &independent {
        let r = rels.relation(j);
        let (s, _) = r.endpoints().expect("nonzero relation");
        for b in q.arrows_into(s) {
            vectors.push(to_sparse(&codec, &right_multiply(r, &Path::arrow(q, b))));
            labels_right.push((j, b));
        }
    }
    let split = vectors.len();
    for &j in &independent {
        let r = rels.relation(j);
        let (_, t) = r.endpoints().expect("nonzero relation");
        for a in q.arrows_from(t) {
            let v = to_sparse(&codec, &left_multiply(&Path::arrow(q, a), r));
            vectors.push(v.into_iter().map(|(k, c)| (k, -c)).collect());
            labels_left.push((a, j));
        }
    }
    let solver = SpanSolver::new(field, &vectors);
    let mut basis = Vec::new();
    let mut right = Vec::new();
    let mut left = Vec::new();
    for dep in solver.dependencies() {
        let mut acc: Vec<(u64, Scalar)> = Vec::new();
        let mut rc = Vec::new();
        for (i, c) in dep[..split].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc.extend(vectors[i].iter().map(|(k, x)| (*k, c * x)));
            rc.push((labels_right[i].0, labels_right[i].1, c.clone()));
        }
        let lc = dep[split..]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (labels_left[i].0, labels_left[i].1, c.clone()))
            .collect();
        basis.push(from_sparse(q, field, &codec, n + 1, &sparse_from_pairs(acc)));
        right.push(rc);
        left.push(lc);
    }
    Ok(RelationIntersection {
        degree: n + 1,
        independent,
        basis,
        right,
        left,
    })
}

/// The images `θ(e) = Σ_{t(a)=e} a·∂ₐW` together with the checks made on them.
#[derive(Clone, Debug)]
pub struct ThetaMap {
    images: Vec<Element>,
    two_sided: bool,
    independent: bool,
}

impl ThetaMap {
    /// `θ(e)` for each vertex `e`.
    pub fn images(&self) -> &[Element] {
        &self.images
    }

    /// Whether `Σ_{t(a)=e} a·∂ₐW = Σ_{s(b)=e} ∂_bW·b = e·𝔠(W)` held at every vertex.
    pub fn is_two_sided(&self) -> bool {
        self.two_sided
    }

    /// Whether the images are linearly independent.
    pub fn is_independent(&self) -> bool {
        self.independent
    }
}

/// Computes `θ` for a homogeneous potential.
pub fn theta(q: &Quiver, w: &Potential) -> Result<ThetaMap> {
    let field = w.field();
    if !w.is_zero() && w.homogeneous_degree().is_none() {
        return Err(Error::Inhomogeneous("theta needs a homogeneous potential".into()));
    }
    let sym = cyclic_symmetrize(q, w);
    let mut images = Vec::new();
    let mut two_sided = true;
    for e in 0..q.vertex_count() {
        let mut lhs = Element::zero(field);
        for a in q.arrows_into(e) {
            lhs.add_scaled(&field.one(), &left_multiply(&Path::arrow(q, a), &cyclic_derivative(q, w, a)));
        }
        let mut rhs = Element::zero(field);
        for b in q.arrows_from(e) {
            rhs.add_scaled(&field.one(), &right_multiply(&cyclic_derivative(q, w, b), &Path::arrow(q, b)));
        }
        let end_at_e = Element::from_terms(
            field,
            sym.terms().filter(|(p, _)| p.target() == e).map(|(p, c)| (p.clone(), c.clone())),
        );
        two_sided &= lhs == rhs && lhs == end_at_e;
        images.push(lhs);
    }
    // images at distinct vertices have disjoint supports
    let independent = images.iter().all(|x| !x.is_zero());
    Ok(ThetaMap {
        images,
        two_sided,
        independent,
    })
}
