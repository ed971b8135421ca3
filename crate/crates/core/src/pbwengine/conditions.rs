use super::deformation::Deformation;
use crate::error::{Error, Result};
use crate::exactalg::{Scalar, SpanSolver, SparseVec};
use crate::quiverpath::{Element, Path, PathCodec};
use crate::vacualgebra::{
    cy_check_relations, left_multiply, relation_intersection, right_multiply, to_sparse, RelationIntersection,
};

/// Outcome of one condition.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionResult {
    pub holds: bool,
    /// False when an earlier condition failed and this one could not be
    /// formulated.
    pub evaluated: bool,
    /// A nonzero residue when the condition fails.
    pub witness: Option<Element>,
}

impl ConditionResult {
    fn pass() -> Self {
        ConditionResult {
            holds: true,
            evaluated: true,
            witness: None,
        }
    }

    fn fail(witness: Element) -> Self {
        ConditionResult {
            holds: false,
            evaluated: true,
            witness: Some(witness),
        }
    }

    fn skipped() -> Self {
        ConditionResult {
            holds: false,
            evaluated: false,
            witness: None,
        }
    }

    fn from_residue(residue: Option<Element>) -> Self {
        match residue {
            None => Self::pass(),
            Some(w) => Self::fail(w),
        }
    }
}

/// Truncated Calabi-Yau status of the base algebra. The PBW conditions are
/// equivalent to the PBW property only for N-Koszul bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseStatus {
    NotChecked,
    /// Complex exact and intersection of the right size up to this degree.
    ConsistentUpTo(usize),
    /// Some check failed at this truncation.
    Inconsistent { truncation: usize, first_failure: Option<(usize, usize)> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct PbwReport {
    pub relation_degree: usize,
    pub pbw1: ConditionResult,
    pub pbw2: ConditionResult,
    /// Entry `j−1` is the condition for `j`, `1 ≤ j ≤ N−1`.
    pub pbw3: Vec<ConditionResult>,
    pub pbw4: ConditionResult,
    pub pbw2prime: ConditionResult,
    pub overall: bool,
    pub base_status: BaseStatus,
    pub characteristic: u64,
    pub char_divides_n_factorial: bool,
    pub char_divides_n1_factorial: bool,
}

impl PbwReport {
    /// Whether the conditions certify a PBW deformation: they hold and the
    /// base passed the truncated Calabi-Yau checks.
    pub fn pbw_implied(&self) -> bool {
        self.overall && matches!(self.base_status, BaseStatus::ConsistentUpTo(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    /// Truncation for the base Calabi-Yau check; None skips it.
    pub cy_degree: Option<usize>,
}

impl CheckOptions {
    pub fn for_degree(n: usize) -> Self {
        CheckOptions { cy_degree: Some(n + 2) }
    }

    pub fn without_base_check() -> Self {
        CheckOptions { cy_degree: None }
    }
}

fn arrow_path(d: &Deformation, a: usize) -> Path {
    Path::arrow(d.base().quiver(), a)
}

fn none_if_zero(x: Element) -> Option<Element> {
    (!x.is_zero()).then_some(x)
}

/// `Σ c · φ_j(rₖ)·b − Σ d · a·φ_j(rₖ)` for intersection vector `i`.
fn split_difference(d: &Deformation, inter: &RelationIntersection, i: usize, j: usize) -> Element {
    let field = d.base().field();
    let mut out = Element::zero(field);
    for (k, b, c) in inter.right_coordinates(i) {
        out.add_scaled(c, &right_multiply(&d.phi_j(*k, j), &arrow_path(d, *b)));
    }
    for (a, k, c) in inter.left_coordinates(i) {
        out.add_scaled(&-c, &left_multiply(&arrow_path(d, *a), &d.phi_j(*k, j)));
    }
    out
}

/// `Σ κₖ φ_j(rₖ)` over the independent relations.
fn apply_phi(d: &Deformation, independent: &[usize], kappa: &[Scalar], j: usize) -> Element {
    let mut out = Element::zero(d.base().field());
    for (idx, c) in kappa.iter().enumerate() {
        if !c.is_zero() {
            out.add_scaled(c, &d.phi_j(independent[idx], j));
        }
    }
    out
}

/// Residues of the condition PBW2′ per vertex `e`:
/// `Σ_{s(b)=e} φ_{N−1}(r_b)·b − Σ_{t(a)=e} a·φ_{N−1}(rₐ)`.
pub fn check_pbw2prime(d: &Deformation) -> Result<Vec<Element>> {
    let base = d.base();
    let q = base.quiver();
    let top = base.degree() - 1;
    let mut out = Vec::with_capacity(q.vertex_count());
    for e in 0..q.vertex_count() {
        let mut theta = Element::zero(base.field());
        for a in q.arrows_into(e) {
            theta.add_scaled(&base.field().one(), &left_multiply(&arrow_path(d, a), base.relation(a)));
        }
        if theta.is_zero() {
            return Err(Error::ThetaNotInjective(format!(
                "theta vanishes at vertex {}",
                q.vertex_name(e)
            )));
        }
        let mut residue = Element::zero(base.field());
        for b in q.arrows_from(e) {
            residue.add_scaled(&base.field().one(), &right_multiply(&d.phi_j(b, top), &arrow_path(d, b)));
        }
        for a in q.arrows_into(e) {
            residue.add_scaled(&-base.field().one(), &left_multiply(&arrow_path(d, a), &d.phi_j(a, top)));
        }
        out.push(residue);
    }
    Ok(out)
}

/// Evaluates PBW1 to PBW4 and PBW2′ with the default base check at `N+2`.
pub fn check_conditions(d: &Deformation) -> Result<PbwReport> {
    check_conditions_with(d, CheckOptions::for_degree(d.degree()))
}

pub fn check_conditions_with(d: &Deformation, options: CheckOptions) -> Result<PbwReport> {
    let base = d.base();
    let q = base.quiver();
    let field = base.field();
    let n = base.degree();
    let codec = PathCodec::new(q);

    // PBW1: every linear dependency among the relations annihilates φ
    let rel_vectors = base.sparse_relations();
    let all = SpanSolver::new(field, &rel_vectors);
    let mut pbw1 = ConditionResult::pass();
    for dep in all.dependencies() {
        let mut x = Element::zero(field);
        for (a, c) in dep.iter().enumerate() {
            if !c.is_zero() {
                x.add_scaled(c, d.phi_of(a));
            }
        }
        if !x.is_zero() {
            pbw1 = ConditionResult::fail(x);
            break;
        }
    }

    let inter = relation_intersection(base)?;
    let independent = inter.independent().to_vec();
    let ind_vectors: Vec<SparseVec> = independent.iter().map(|&k| rel_vectors[k].clone()).collect();
    let solver = SpanSolver::new(field, &ind_vectors);

    // PBW2: the split difference of each intersection vector lies in R
    let mut kappas = Vec::with_capacity(inter.dim());
    let mut pbw2 = ConditionResult::pass();
    for i in 0..inter.dim() {
        let v = split_difference(d, &inter, i, n - 1);
        match solver.solve(&to_sparse(&codec, &v)) {
            Some(k) => kappas.push(k),
            None => {
                pbw2 = ConditionResult::fail(v);
                break;
            }
        }
    }

    let (pbw3, pbw4) = if pbw2.holds {
        let pbw3: Vec<ConditionResult> = (1..n)
            .map(|j| {
                let residue = (0..inter.dim()).find_map(|i| {
                    let mut x = apply_phi(d, &independent, &kappas[i], j);
                    x.add_scaled(&field.one(), &split_difference(d, &inter, i, j - 1));
                    none_if_zero(x)
                });
                ConditionResult::from_residue(residue)
            })
            .collect();
        let residue = (0..inter.dim()).find_map(|i| none_if_zero(apply_phi(d, &independent, &kappas[i], 0)));
        (pbw3, ConditionResult::from_residue(residue))
    } else {
        ((1..n).map(|_| ConditionResult::skipped()).collect(), ConditionResult::skipped())
    };

    let residues = check_pbw2prime(d)?;
    let pbw2prime = ConditionResult::from_residue(residues.into_iter().find(|r| !r.is_zero()));

    let base_status = match options.cy_degree {
        None => BaseStatus::NotChecked,
        Some(deg) => {
            let report = cy_check_relations(base, deg.max(n + 1))?;
            if report.consistent() {
                BaseStatus::ConsistentUpTo(report.truncation)
            } else {
                BaseStatus::Inconsistent {
                    truncation: report.truncation,
                    first_failure: report.first_failure,
                }
            }
        }
    };

    let overall = pbw1.holds && pbw2.holds && pbw3.iter().all(|c| c.holds) && pbw4.holds;
    Ok(PbwReport {
        relation_degree: n,
        pbw1,
        pbw2,
        pbw3,
        pbw4,
        pbw2prime,
        overall,
        base_status,
        characteristic: field.characteristic(),
        char_divides_n_factorial: field.divides_factorial(n),
        char_divides_n1_factorial: field.divides_factorial(n + 1),
    })
}
