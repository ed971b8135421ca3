//! Generators for the worked example families, with their documented
//! deformations, and the linear solver that fits a potential to relations.

mod families;
mod fit;
mod lie;
mod two_vertex;

pub use families::{
    antisymmetriser, cubic_type_a, cyclic_quiver, cyclic_quiver_deformation, cyclic_quiver_expected_lower,
    one_loop_cubic, type_a_expected_lower, type_a_deformation, yang_mills, yang_mills_identity,
    yang_mills_printed_relations, CubicDeformationCoefficients,
};
pub use fit::{fit_potential, FitMode, FitOutcome, FIT_FIELD};
pub use lie::{antisym3_lie, jacobi, lie_solution_space_dim, JacobiReport, LieDeformation};
pub use two_vertex::{
    two_vertex, two_vertex_deformation, two_vertex_expected_lower, two_vertex_mu_nu, MuNuReport,
};

use crate::error::{Error, Result};
use crate::exactalg::{FieldSpec, MatrixQ, Scalar};
use crate::potentials::{project_to_potential, Potential};
use crate::quiverpath::{Element, Quiver};
use crate::vacualgebra::RelationSet;

/// One member of an example family.
#[derive(Clone, Debug)]
pub struct ExampleInstance {
    pub name: String,
    pub quiver: Quiver,
    /// Potential whose derivatives are exactly the relations, when one exists.
    pub potential: Option<Potential>,
    pub relations: RelationSet,
    /// Factor `c` with `∂ₐ(c·potential) = c·rₐ` for the customary printed
    /// form of the potential.
    pub printed_scale: Option<Scalar>,
    /// Hilbert series prefix expected for the algebra, when known.
    pub expected_hilbert: Vec<usize>,
    /// Whether the algebra is Calabi-Yau of dimension 3, when known.
    pub calabi_yau: Option<bool>,
}

impl ExampleInstance {
    pub fn relation_degree(&self) -> usize {
        self.relations.degree()
    }

    pub fn field(&self) -> FieldSpec {
        self.relations.field()
    }

    /// The potential in its customary printed normalisation.
    pub fn printed_potential(&self) -> Option<Potential> {
        let w = self.potential.as_ref()?;
        Some(match &self.printed_scale {
            Some(c) => w.scale(c),
            None => w.clone(),
        })
    }
}

/// Sums `c · path` over display strings.
pub(crate) fn element(q: &Quiver, field: FieldSpec, terms: &[(Scalar, String)]) -> Result<Element> {
    let mut x = Element::zero(field);
    for (c, p) in terms {
        x.add_term(q.path(p)?, c.clone());
    }
    Ok(x)
}

pub(crate) fn potential(q: &Quiver, field: FieldSpec, terms: &[(Scalar, String)]) -> Result<Potential> {
    project_to_potential(q, &element(q, field, terms)?)
}

/// All permutations of `0..n` with their signs, in lexicographic order.
pub(crate) fn signed_permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, i64)>) {
        let n = used.len();
        if prefix.len() == n {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| prefix[i] > prefix[j])
                .count();
            out.push((prefix.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// `dim A_0, …, dim A_D` predicted for a Calabi-Yau algebra of dimension 3
/// with relations of degree `N`: the entries of `(I − Mt + Mᵀt^N − t^{N+1})⁻¹`,
/// where `M` is the adjacency matrix, summed.
pub fn cy_hilbert_prediction(q: &Quiver, n: usize, max_degree: usize) -> Vec<usize> {
    let nv = q.vertex_count();
    let mut m = vec![vec![0i128; nv]; nv];
    for a in q.arrows() {
        m[a.target][a.source] += 1;
    }
    let mut h: Vec<Vec<Vec<i128>>> = Vec::with_capacity(max_degree + 1);
    for d in 0..=max_degree {
        let mut cur = vec![vec![0i128; nv]; nv];
        if d == 0 {
            for (v, row) in cur.iter_mut().enumerate() {
                row[v] = 1;
            }
        }
        for i in 0..nv {
            for j in 0..nv {
                let mut acc = cur[i][j];
                for k in 0..nv {
                    if d >= 1 {
                        acc += m[i][k] * h[d - 1][k][j];
                    }
                    if d >= n {
                        acc -= m[k][i] * h[d - n][k][j];
                    }
                }
                if d > n {
                    acc += h[d - n - 1][i][j];
                }
                cur[i][j] = acc;
            }
        }
        h.push(cur);
    }
    h.iter()
        .map(|x| x.iter().flatten().sum::<i128>().max(0) as usize)
        .collect()
}

fn parse_args(args: &str) -> Result<Vec<i64>> {
    if args.is_empty() {
        return Ok(Vec::new());
    }
    args.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Invalid(format!("bad zoo parameter `{t}`")))
        })
        .collect()
}

/// Names accepted by [`by_name`], each with its default parameters.
pub const CATALOG: [&str; 8] = [
    "yang-mills:2",
    "cubic-type-a:1,2",
    "antisymmetriser:3",
    "antisymmetriser:5",
    "cyclic:3,2,2,2,2",
    "two-vertex:3,0",
    "two-vertex:4,0",
    "one-loop-cubic",
];

/// Builds an instance from `family[:p1,p2,…]`:
/// `yang-mills:s`, `cubic-type-a:a,b`, `antisymmetriser:n`,
/// `cyclic:k,l,n_0,…,n_{k−1}`, `two-vertex:N,p` (`p = 0` for the
/// rationals) and `one-loop-cubic`.
pub fn by_name(spec: &str) -> Result<ExampleInstance> {
    let (family, args) = spec.split_once(':').unwrap_or((spec, ""));
    let p = parse_args(args)?;
    let arity = |k: usize| -> Result<()> {
        if p.len() == k {
            Ok(())
        } else {
            Err(Error::Invalid(format!("`{family}` takes {k} parameter(s), got {}", p.len())))
        }
    };
    let count = |v: i64| -> Result<usize> {
        usize::try_from(v).map_err(|_| Error::Invalid(format!("parameter {v} must be nonnegative")))
    };
    let q = FieldSpec::Rationals;
    match family {
        "yang-mills" => {
            arity(1)?;
            yang_mills_identity(count(p[0])?)
        }
        "cubic-type-a" => {
            arity(2)?;
            cubic_type_a(q.from_i64(p[0]), q.from_i64(p[1]))
        }
        "antisymmetriser" => {
            arity(1)?;
            antisymmetriser(count(p[0])?)
        }
        "cyclic" => {
            if p.len() < 2 {
                return Err(Error::Invalid("`cyclic` takes k, l and k arrow counts".into()));
            }
            let ns = p[2..].iter().map(|&v| count(v)).collect::<Result<Vec<_>>>()?;
            cyclic_quiver(count(p[0])?, count(p[1])?, &ns)
        }
        "two-vertex" => {
            arity(2)?;
            let field = if p[1] == 0 { q } else { FieldSpec::prime(count(p[1])? as u64)? };
            two_vertex(count(p[0])?, field)
        }
        "one-loop-cubic" => {
            arity(0)?;
            one_loop_cubic()
        }
        _ => Err(Error::Invalid(format!("unknown zoo family `{family}`"))),
    }
}

/// Checks that `g` is square, symmetric and invertible.
pub(crate) fn check_metric(g: &MatrixQ) -> Result<()> {
    if g.rows() != g.cols() {
        return Err(Error::DimensionMismatch {
            expected: g.rows(),
            found: g.cols(),
        });
    }
    for i in 0..g.rows() {
        for j in 0..i {
            if g.get(i, j) != g.get(j, i) {
                return Err(Error::Invalid(format!("metric is not symmetric at ({i}, {j})")));
            }
        }
    }
    if crate::exactalg::rref(g).0 != g.rows() {
        return Err(Error::Invalid("metric is singular".into()));
    }
    Ok(())
}
