use super::families::antisymmetriser;
use crate::error::{Error, Result};
use crate::exactalg::{rref, FieldSpec, MatrixQ, Scalar};
use crate::pbwengine::Deformation;
use crate::quiverpath::{Element, Path};

/// The three quadratic expressions whose vanishing is the Jacobi identity
/// for the bracket encoded by `α`.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiReport {
    pub equations: [Scalar; 3],
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LieDeformation {
    pub deformation: Deformation,
    pub jacobi: JacobiReport,
}

fn check_alpha(alpha: &MatrixQ) -> Result<()> {
    if alpha.rows() != 3 || alpha.cols() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: if alpha.rows() != 3 { alpha.rows() } else { alpha.cols() },
        });
    }
    Ok(())
}

fn jacobi_values(a: &[[Scalar; 3]; 3]) -> [Scalar; 3] {
    let e = |i: usize, j: usize, k: usize| -> Scalar {
        // αᵢⱼ α_{ki} − α_{ik} α_{ji} + αᵢᵢ (α_{jk} − α_{kj}) with (i, j, k) cyclic
        &(&(&a[i][j] * &a[k][i]) - &(&a[i][k] * &a[j][i])) + &(&a[i][i] * &(&a[j][k] - &a[k][j]))
    };
    [e(0, 1, 2), e(1, 2, 0), e(2, 0, 1)]
}

fn entries(alpha: &MatrixQ) -> [[Scalar; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| alpha.get(i, j).clone()))
}

pub fn jacobi(alpha: &MatrixQ) -> Result<JacobiReport> {
    check_alpha(alpha)?;
    let equations = jacobi_values(&entries(alpha));
    let holds = equations.iter().all(Scalar::is_zero);
    Ok(JacobiReport { equations, holds })
}

/// Deformation of the three-loop commutative relations with
/// `φ(∂_{x_i}) = Σ_j α_{ij} x_j`.
pub fn antisym3_lie(alpha: &MatrixQ) -> Result<LieDeformation> {
    check_alpha(alpha)?;
    let inst = antisymmetriser(3)?;
    let field = inst.field();
    if alpha.field() != field {
        return Err(Error::FieldMismatch(field, alpha.field()));
    }
    let q = &inst.quiver;
    let phi = (0..3)
        .map(|i| {
            Element::from_terms(
                field,
                (0..3).map(|j| (Path::arrow(q, j), alpha.get(i, j).clone())),
            )
        })
        .collect();
    let deformation = Deformation::new(&inst.relations, phi)?;
    Ok(LieDeformation {
        deformation,
        jacobi: jacobi(alpha)?,
    })
}

/// Dimension of the space of `α` satisfying the Jacobi identity whose
/// antisymmetric part is fixed by `r = (α₃₂ − α₂₃, α₁₃ − α₃₁, α₂₁ − α₁₂)`.
/// Writing `α = α₀ + β` with `α₀` antisymmetric and `β` symmetric, the
/// Jacobi expressions are linear in `β`, so the space is affine of
/// dimension `6 − rank`.
pub fn lie_solution_space_dim(r: [Scalar; 3]) -> Result<usize> {
    let field = FieldSpec::Rationals;
    let half = field.from_ratio(1, 2)?;
    let zero = field.zero();
    let mut base: [[Scalar; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| zero.clone()));
    for (idx, (i, j)) in [(2, 1), (0, 2), (1, 0)].into_iter().enumerate() {
        let v = &r[idx] * &half;
        base[j][i] = -&v;
        base[i][j] = v;
    }
    let constant = jacobi_values(&base);
    let mut columns = Vec::new();
    for i in 0..3 {
        for j in i..3 {
            let mut a = base.clone();
            a[i][j] = &a[i][j] + &field.one();
            if i != j {
                a[j][i] = &a[j][i] + &field.one();
            }
            let v = jacobi_values(&a);
            columns.push([&v[0] - &constant[0], &v[1] - &constant[1], &v[2] - &constant[2]]);
        }
    }
    let rows = (0..3).map(|e| columns.iter().map(|c| c[e].clone()).collect()).collect();
    let lin = MatrixQ::from_rows(field, 6, rows)?;
    if !constant.iter().all(Scalar::is_zero) {
        return Err(Error::Invalid("Jacobi expressions do not vanish on the antisymmetric part".into()));
    }
    Ok(6 - rref(&lin).0)
}
