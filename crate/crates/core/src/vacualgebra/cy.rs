use super::intersection::{relation_intersection, theta};
use super::relations::RelationSet;
use super::truncated::{build_graded, TruncatedAlgebra};
use crate::error::{Error, Result};
use crate::exactalg::{sparse_from_pairs, Echelon, SparseVec, Subspace};
use crate::potentials::Potential;
use crate::quiverpath::Quiver;

/// Ranks and homology of the one-sided complex
/// `A⊗ω → A⊗R → A⊗kQ₁ → A → kQ₀` in one total degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeHomology {
    pub degree: usize,
    /// Dimensions of `A⊗ω`, `A⊗R`, `A⊗kQ₁`, `A`, `kQ₀`.
    pub dims: [usize; 5],
    /// Ranks of `δ₃`, `δ₂`, `δ₁`, the augmentation.
    pub ranks: [usize; 4],
    /// Homology at `A⊗ω`, `A⊗R`, `A⊗kQ₁`, `A`, `kQ₀`.
    pub homology: [usize; 5],
}

impl DegreeHomology {
    pub fn is_exact(&self) -> bool {
        self.homology.iter().all(|&h| h == 0)
    }
}

/// Names of the five positions, leftmost first.
pub const POSITIONS: [&str; 5] = ["A⊗ω", "A⊗R", "A⊗kQ₁", "A", "kQ₀"];

/// Outcome of the truncated Calabi-Yau checks. A passing report means
/// "consistent with CY-3 up to the truncation degree", never more.
#[derive(Clone, Debug)]
pub struct CyReport {
    pub truncation: usize,
    pub relation_degree: usize,
    pub relations_independent: bool,
    /// None when no potential was supplied.
    pub theta_injective: Option<bool>,
    pub theta_two_sided: Option<bool>,
    pub theta_spans_intersection: Option<bool>,
    pub intersection_dim: usize,
    pub vertex_count: usize,
    pub hilbert: Vec<usize>,
    pub homology: Vec<DegreeHomology>,
    /// First `(degree, position)` with nonzero homology.
    pub first_failure: Option<(usize, usize)>,
}

impl CyReport {
    pub fn complex_exact(&self) -> bool {
        self.first_failure.is_none()
    }

    /// All checks pass up to the truncation degree.
    pub fn consistent(&self) -> bool {
        self.relations_independent
            && self.theta_injective != Some(false)
            && self.theta_two_sided != Some(false)
            && self.theta_spans_intersection != Some(false)
            && self.intersection_dim == self.vertex_count
            && self.complex_exact()
    }
}

/// One-sided homology table of the complex built from relations keyed by
/// arrow, in total degrees `0..=D`.
pub fn one_sided_homology(alg: &TruncatedAlgebra) -> Result<Vec<DegreeHomology>> {
    let rels = alg.relations();
    if !rels.is_keyed_by_arrow() {
        return Err(Error::Precondition("relations must be indexed by arrows".into()));
    }
    let q = alg.quiver();
    let n = rels.degree();
    let nv = q.vertex_count();
    let na = q.arrow_count() as u64;
    let field = rels.field();
    let mut out = Vec::new();
    for t in 0..=alg.max_degree() {
        let dim_a = alg.dim(t);
        let dim_e = if t == 0 { nv } else { 0 };
        let dim_q1 = if t == 0 {
            0
        } else {
            (0..q.arrow_count()).map(|a| alg.dim_from(t - 1, q.target(a))).sum()
        };
        let dim_r = if t < n {
            0
        } else {
            (0..q.arrow_count()).map(|a| alg.dim_from(t - n, q.source(a))).sum()
        };
        let dim_w = if t <= n { 0 } else { alg.dim(t - n - 1) };
        let rank_aug = dim_e;
        let rank_d1 = if t == 0 { 0 } else { dim_a };
        let rank_d2 = if t == 0 {
            0
        } else {
            let below: usize = (0..q.arrow_count()).map(|b| alg.ideal_dim_from(t - 1, q.target(b))).sum();
            alg.ideal_dim(t) - below
        };
        let rank_d3 = if t <= n {
            0
        } else {
            let ud = t - n - 1;
            let mut ech = Echelon::new(field);
            for &u in alg.standard_keys(ud) {
                let e = alg.key_source(ud, u);
                let mut v: SparseVec = Vec::new();
                for a in q.arrows_into(e) {
                    let (_, nf) = alg.multiply_keys((ud, u), (1, a as u64));
                    v.extend(nf.into_iter().map(|(k, c)| (k * na + a as u64, c)));
                }
                ech.insert(sparse_from_pairs(v));
            }
            ech.rank()
        };
        let homology = [
            dim_w - rank_d3,
            dim_r - rank_d3 - rank_d2,
            dim_q1 - rank_d2 - rank_d1,
            dim_a - rank_d1 - rank_aug,
            dim_e - rank_aug,
        ];
        out.push(DegreeHomology {
            degree: t,
            dims: [dim_w, dim_r, dim_q1, dim_a, dim_e],
            ranks: [rank_d3, rank_d2, rank_d1, rank_aug],
            homology,
        });
    }
    Ok(out)
}

fn first_failure(table: &[DegreeHomology]) -> Option<(usize, usize)> {
    table
        .iter()
        .find_map(|h| h.homology.iter().position(|&x| x != 0).map(|p| (h.degree, p)))
}

/// Truncated CY checks for relations indexed by arrows, without a potential.
pub fn cy_check_relations(rels: &RelationSet, max_degree: usize) -> Result<CyReport> {
    let alg = build_graded(rels, max_degree)?;
    let inter = relation_intersection(rels)?;
    let homology = one_sided_homology(&alg)?;
    Ok(CyReport {
        truncation: max_degree,
        relation_degree: rels.degree(),
        relations_independent: rels.is_independent() && rels.len() == rels.quiver().arrow_count(),
        theta_injective: None,
        theta_two_sided: None,
        theta_spans_intersection: None,
        intersection_dim: inter.dim(),
        vertex_count: rels.quiver().vertex_count(),
        hilbert: alg.dims(),
        first_failure: first_failure(&homology),
        homology,
    })
}

/// Truncated CY checks for `A(Q,W)` with `W` homogeneous: independence of
/// the derivatives, injectivity of `θ`, `θ` spanning the relation
/// intersection, and exactness of the complex in degrees `≤ D`.
pub fn cy_check(q: &Quiver, w: &Potential, max_degree: usize) -> Result<CyReport> {
    let rels = RelationSet::from_potential(q, w)?;
    let mut report = cy_check_relations(&rels, max_degree)?;
    let th = theta(q, w)?;
    let inter = relation_intersection(&rels)?;
    let field = w.field();
    let spans = if th.is_independent() && inter.dim() == th.images().len() {
        let target = inter.subspace(q, field)?;
        let images = crate::quiverpath::BimoduleSpan::graded(q, field, rels.degree() + 1, th.images())?;
        let s: &Subspace = images.space();
        s == &target
    } else {
        false
    };
    report.theta_injective = Some(th.is_independent());
    report.theta_two_sided = Some(th.is_two_sided());
    report.theta_spans_intersection = Some(spans);
    Ok(report)
}
