use super::{check_metric, cy_hilbert_prediction, element, potential, signed_permutations, ExampleInstance};
use crate::error::{Error, Result};
use crate::exactalg::{FieldSpec, MatrixQ, Scalar};
use crate::pbwengine::Deformation;
use crate::potentials::{class_of, Potential};
use crate::quiverpath::{Element, Quiver};
use crate::vacualgebra::RelationSet;

fn require_char_zero(field: FieldSpec, family: &str) -> Result<()> {
    if field != FieldSpec::Rationals {
        return Err(Error::Precondition(format!("{family} is defined over the rationals")));
    }
    Ok(())
}

fn loop_names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn ym_coefficient(g: &MatrixQ, r: usize, l: usize, m: usize, n: usize) -> Scalar {
    let p = |a: usize, b: usize, c: usize, d: usize| g.get(a, b) * g.get(c, d);
    let two = g.field().from_i64(2);
    &(&p(r, l, m, n) + &p(r, n, l, m)) - &(&two * &p(r, m, l, n))
}

/// The relations `W^ρ = Σ W^{ρλμν} ∇λ∇μ∇ν` built directly from the metric.
pub fn yang_mills_printed_relations(q: &Quiver, g: &MatrixQ) -> Result<Vec<Element>> {
    let k = g.rows();
    (0..k)
        .map(|r| {
            let mut terms = Vec::new();
            for l in 0..k {
                for m in 0..k {
                    for n in 0..k {
                        let c = ym_coefficient(g, r, l, m, n);
                        if !c.is_zero() {
                            terms.push((c, format!("n{l} n{m} n{n}")));
                        }
                    }
                }
            }
            element(q, g.field(), &terms)
        })
        .collect()
}

/// Yang-Mills algebra on `s+1` generators `n0, …, ns` for a symmetric
/// invertible metric `g`. The stored potential is `W₄/4`.
pub fn yang_mills(s: usize, g: &MatrixQ) -> Result<ExampleInstance> {
    if s < 1 {
        return Err(Error::Invalid("yang-mills needs s ≥ 1".into()));
    }
    require_char_zero(g.field(), "yang-mills")?;
    check_metric(g)?;
    if g.rows() != s + 1 {
        return Err(Error::DimensionMismatch {
            expected: s + 1,
            found: g.rows(),
        });
    }
    let field = g.field();
    let q = Quiver::one_vertex(&loop_names("n", s + 1))?;
    let mut terms = Vec::new();
    for r in 0..=s {
        for l in 0..=s {
            for m in 0..=s {
                for n in 0..=s {
                    let c = ym_coefficient(g, r, l, m, n);
                    if !c.is_zero() {
                        terms.push((c, format!("n{r} n{l} n{m} n{n}")));
                    }
                }
            }
        }
    }
    let four = field.from_i64(4);
    let w = potential(&q, field, &terms)?.scale(&four.inv().expect("char 0"));
    let relations = RelationSet::from_potential(&q, &w)?;
    Ok(ExampleInstance {
        name: format!("yang-mills:{s}"),
        expected_hilbert: cy_hilbert_prediction(&q, 3, 7),
        quiver: q,
        potential: Some(w),
        relations,
        printed_scale: Some(four),
        calabi_yau: Some(true),
    })
}

/// Yang-Mills with the identity metric.
pub fn yang_mills_identity(s: usize) -> Result<ExampleInstance> {
    yang_mills(s, &MatrixQ::identity(FieldSpec::Rationals, s + 1))
}

/// Cubic Artin-Schelter regular algebra of type A with parameters `a`, `b`:
/// loops `x`, `y`, relations `f = ay²x + byxy + axy² + x³` and
/// `g = y³ + ayx² + bxyx + ax²y`. The stored potential is `W₄/4`.
pub fn cubic_type_a(a: Scalar, b: Scalar) -> Result<ExampleInstance> {
    let field = a.field();
    require_char_zero(field, "cubic-type-a")?;
    let q = Quiver::one_vertex(&["x", "y"])?;
    let one = field.one();
    let printed = potential(
        &q,
        field,
        &[
            (one.clone(), "y y y y".into()),
            (a.clone(), "x x y y".into()),
            (a.clone(), "x y y x".into()),
            (a.clone(), "y y x x".into()),
            (a.clone(), "y x x y".into()),
            (b.clone(), "x y x y".into()),
            (b.clone(), "y x y x".into()),
            (one.clone(), "x x x x".into()),
        ],
    )?;
    let four = field.from_i64(4);
    let w = printed.scale(&four.inv().expect("char 0"));
    let relations = RelationSet::from_potential(&q, &w)?;
    let generic = a != b && a != -&b;
    Ok(ExampleInstance {
        name: format!("cubic-type-a:{a},{b}"),
        expected_hilbert: if generic { cy_hilbert_prediction(&q, 3, 7) } else { Vec::new() },
        quiver: q,
        potential: Some(w),
        relations,
        printed_scale: Some(four),
        calabi_yau: if generic { Some(true) } else { None },
    })
}

/// The nine coefficients of the deformed type A relations
/// `f + a₁₁x² + b₁₁(xy+yx) + a₁₄y² + a₂₁x + a₂₂y + a₃` and
/// `g + b₁₁x² + a₁₄(xy+yx) + b₁₄y² + a₂₂x + b₂₂y + b₃`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicDeformationCoefficients {
    pub a11: Scalar,
    pub b11: Scalar,
    pub a14: Scalar,
    pub b14: Scalar,
    pub a21: Scalar,
    pub a22: Scalar,
    pub b22: Scalar,
    pub a3: Scalar,
    pub b3: Scalar,
}

impl CubicDeformationCoefficients {
    pub fn from_i64(field: FieldSpec, v: [i64; 9]) -> Self {
        let s = |i: usize| field.from_i64(v[i]);
        CubicDeformationCoefficients {
            a11: s(0),
            b11: s(1),
            a14: s(2),
            b14: s(3),
            a21: s(4),
            a22: s(5),
            b22: s(6),
            a3: s(7),
            b3: s(8),
        }
    }
}

/// The deformation of a type A instance whose relations are the deformed
/// `f` and `g` above.
pub fn type_a_deformation(inst: &ExampleInstance, c: &CubicDeformationCoefficients) -> Result<Deformation> {
    let q = &inst.quiver;
    let field = inst.field();
    let unit = format!("e({})", q.vertex_name(0));
    let lower_f = element(
        q,
        field,
        &[
            (c.a11.clone(), "x x".into()),
            (c.b11.clone(), "x y".into()),
            (c.b11.clone(), "y x".into()),
            (c.a14.clone(), "y y".into()),
            (c.a21.clone(), "x".into()),
            (c.a22.clone(), "y".into()),
            (c.a3.clone(), unit.clone()),
        ],
    )?;
    let lower_g = element(
        q,
        field,
        &[
            (c.b11.clone(), "x x".into()),
            (c.a14.clone(), "x y".into()),
            (c.a14.clone(), "y x".into()),
            (c.b14.clone(), "y y".into()),
            (c.a22.clone(), "x".into()),
            (c.b22.clone(), "y".into()),
            (c.b3.clone(), unit),
        ],
    )?;
    Deformation::new(&inst.relations, vec![-&lower_f, -&lower_g])
}

/// `W₃ + W₂ + W₁` with `W₃ = ⅓(a₁₁x³ + b₁₁(x²y+xyx+yx²) + a₁₄(y²x+yxy+xy²) + b₁₄y³)`,
/// `W₂ = ½(a₂₁x² + a₂₂(xy+yx) + b₂₂y²)` and `W₁ = a₃x + b₃y`.
pub fn type_a_expected_lower(inst: &ExampleInstance, c: &CubicDeformationCoefficients) -> Result<Potential> {
    let q = &inst.quiver;
    let field = inst.field();
    let third = field.from_ratio(1, 3)?;
    let half = field.from_ratio(1, 2)?;
    let w3 = potential(
        q,
        field,
        &[
            (c.a11.clone(), "x x x".into()),
            (c.b11.clone(), "x x y".into()),
            (c.b11.clone(), "x y x".into()),
            (c.b11.clone(), "y x x".into()),
            (c.a14.clone(), "y y x".into()),
            (c.a14.clone(), "y x y".into()),
            (c.a14.clone(), "x y y".into()),
            (c.b14.clone(), "y y y".into()),
        ],
    )?
    .scale(&third);
    let w2 = potential(
        q,
        field,
        &[
            (c.a21.clone(), "x x".into()),
            (c.a22.clone(), "x y".into()),
            (c.a22.clone(), "y x".into()),
            (c.b22.clone(), "y y".into()),
        ],
    )?
    .scale(&half);
    let w1 = potential(q, field, &[(c.a3.clone(), "x".into()), (c.b3.clone(), "y".into())])?;
    Ok(w3.plus(&w2).plus(&w1))
}

/// `Ant(v₁, …, v_m) = Σ_σ sgn(σ) v_{σ(1)} ⋯ v_{σ(m)}`, written left to right.
fn antisymmetrizer(q: &Quiver, field: FieldSpec, names: &[&str]) -> Result<Element> {
    let terms: Vec<(Scalar, String)> = signed_permutations(names.len())
        .into_iter()
        .map(|(perm, sign)| {
            let word: Vec<&str> = perm.iter().map(|&i| names[i]).collect();
            (field.from_i64(sign), word.join(" "))
        })
        .collect();
    element(q, field, &terms)
}

/// Antisymmetriser algebra on `n ≥ 3` loops (`x, y, z` for `n = 3`, else
/// `x1, …, xn`) with relations `(−1)^{i+1} Ant(x₁, …, x̂ᵢ, …, x_n)`. For odd
/// `n` the potential is `W̄_n/n`, whose derivatives are these relations.
pub fn antisymmetriser(n: usize) -> Result<ExampleInstance> {
    if n < 3 {
        return Err(Error::Invalid("antisymmetriser needs n ≥ 3".into()));
    }
    let field = FieldSpec::Rationals;
    let names: Vec<String> = if n == 3 {
        vec!["x".into(), "y".into(), "z".into()]
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    };
    let q = Quiver::one_vertex(&names)?;
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut relations = Vec::with_capacity(n);
    for i in 0..n {
        let rest: Vec<&str> = refs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, s)| *s).collect();
        let sign = if i % 2 == 0 { field.one() } else { -&field.one() };
        relations.push(antisymmetrizer(&q, field, &rest)?.scale(&sign));
    }
    let relations = RelationSet::new(&q, field, n - 1, relations)?;
    let odd = n % 2 == 1;
    let (w, scale) = if odd {
        let full = crate::potentials::project_to_potential(&q, &antisymmetrizer(&q, field, &refs)?)?;
        let nn = field.from_i64(n as i64);
        (Some(full.scale(&nn.inv().expect("char 0"))), Some(nn))
    } else {
        (None, None)
    };
    Ok(ExampleInstance {
        name: format!("antisymmetriser:{n}"),
        expected_hilbert: cy_hilbert_prediction(&q, n - 1, n + 3),
        quiver: q,
        potential: w,
        relations,
        printed_scale: scale,
        calabi_yau: Some(odd),
    })
}

fn cyclic_arrow(j: usize, i: usize, k: usize) -> String {
    format!("a{j}_{}", i % k)
}

/// Cyclic quiver on vertices `0, …, k−1` with `n_i ≥ 2` arrows `a{j}_{i}`
/// from `i` to `i+1`, and relation degree `N = lk − 1`.
///
/// The potential is `Σ_i a1_i a1_{i−1} a2_{i−2} ⋯ a2_{i−N}` plus, for each
/// arrow `c = a{j}_i` with `j ≥ 3`, the cycle
/// `c a1_{i−1} a2_{i−2} ⋯ a2_{i−k+1} (c a2_{i−1} ⋯ a2_{i−k+1})^{l−1}`.
pub fn cyclic_quiver(k: usize, l: usize, ns: &[usize]) -> Result<ExampleInstance> {
    if k < 3 || l < 2 {
        return Err(Error::Invalid("cyclic quiver needs k ≥ 3 and l ≥ 2".into()));
    }
    if ns.len() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            found: ns.len(),
        });
    }
    if ns.iter().any(|&x| x < 2) {
        return Err(Error::Invalid("each vertex needs at least two outgoing arrows".into()));
    }
    let field = FieldSpec::Rationals;
    let n = l * k - 1;
    let vertices: Vec<String> = (0..k).map(|i| i.to_string()).collect();
    let mut arrows = Vec::new();
    for (i, &ni) in ns.iter().enumerate() {
        for j in 1..=ni {
            arrows.push((cyclic_arrow(j, i, k), i.to_string(), ((i + 1) % k).to_string()));
        }
    }
    let q = Quiver::new(&vertices, &arrows)?;
    let back = |i: usize, s: usize| (i + k * (n + 1) - s) % k;
    let mut terms = Vec::new();
    for i in 0..k {
        let mut word = vec![cyclic_arrow(1, i, k), cyclic_arrow(1, back(i, 1), k)];
        word.extend((2..=n).map(|s| cyclic_arrow(2, back(i, s), k)));
        terms.push((field.one(), word.join(" ")));
    }
    for (i, &ni) in ns.iter().enumerate() {
        for j in 3..=ni {
            let c = cyclic_arrow(j, i, k);
            let mut word = vec![c.clone(), cyclic_arrow(1, back(i, 1), k)];
            word.extend((2..k).map(|s| cyclic_arrow(2, back(i, s), k)));
            for _ in 1..l {
                word.push(c.clone());
                word.extend((1..k).map(|s| cyclic_arrow(2, back(i, s), k)));
            }
            terms.push((field.one(), word.join(" ")));
        }
    }
    let w = potential(&q, field, &terms)?;
    if w.homogeneous_degree() != Some(n + 1) {
        return Err(Error::Inhomogeneous("cyclic quiver potential is not homogeneous".into()));
    }
    let relations = RelationSet::from_potential(&q, &w)?;
    let label: Vec<String> = ns.iter().map(|x| x.to_string()).collect();
    Ok(ExampleInstance {
        name: format!("cyclic:{k},{l},{}", label.join(",")),
        expected_hilbert: cy_hilbert_prediction(&q, n, n + 4),
        quiver: q,
        potential: Some(w),
        relations,
        printed_scale: None,
        calabi_yau: Some(true),
    })
}

/// For `n_i = 2` everywhere: `φ(r_{a{j}_i}) = a{j}_{i+λk−1} ⋯ a{j}_{i+1}`
/// in every degree `λk − 1 ≤ N − 1`, for `j = 1, 2`.
pub fn cyclic_quiver_deformation(inst: &ExampleInstance) -> Result<Deformation> {
    let q = &inst.quiver;
    let k = q.vertex_count();
    let n = inst.relation_degree();
    if q.arrow_count() != 2 * k {
        return Err(Error::Precondition("documented deformation needs two arrows per vertex".into()));
    }
    let field = inst.field();
    let mut phi = Vec::with_capacity(q.arrow_count());
    for a in 0..q.arrow_count() {
        let name = q.arrow_name(a).to_string();
        let (j, i) = name[1..].split_once('_').expect("cyclic arrow name");
        let (j, i): (usize, usize) = (j.parse().expect("index"), i.parse().expect("index"));
        let mut x = Element::zero(field);
        let mut lambda = 1;
        while lambda * k < n {
            let len = lambda * k - 1;
            let word: Vec<String> = (1..=len).rev().map(|s| cyclic_arrow(j, i + s, k)).collect();
            x.add_term(q.path(&word.join(" "))?, field.one());
            lambda += 1;
        }
        phi.push(x);
    }
    Deformation::new(&inst.relations, phi)
}

/// The lower potential reconstructed from [`cyclic_quiver_deformation`]:
/// `W_{λk} = −(1/λ)(σ₁^λ + σ₂^λ)` where `σ_j` is the cycle of the arrows
/// `a{j}_*` once around.
pub fn cyclic_quiver_expected_lower(inst: &ExampleInstance) -> Result<Potential> {
    let q = &inst.quiver;
    let k = q.vertex_count();
    let n = inst.relation_degree();
    let field = inst.field();
    let mut w = Potential::zero(field);
    let mut lambda = 1;
    while lambda * k < n {
        for j in 1..=2 {
            let word: Vec<String> = (0..lambda * k).rev().map(|s| cyclic_arrow(j, s, k)).collect();
            let c = -&field.from_i64(lambda as i64).inv().expect("char 0");
            w.add_class(class_of(q, &q.path(&word.join(" "))?)?, c);
        }
        lambda += 1;
    }
    Ok(w)
}

/// One loop `x` with potential `x³/3`, relation `x²`; not Calabi-Yau.
pub fn one_loop_cubic() -> Result<ExampleInstance> {
    let field = FieldSpec::Rationals;
    let q = Quiver::one_vertex(&["x"])?;
    let three = field.from_i64(3);
    let w = potential(&q, field, &[(three.inv().expect("char 0"), "x x x".into())])?;
    let relations = RelationSet::from_potential(&q, &w)?;
    Ok(ExampleInstance {
        name: "one-loop-cubic".into(),
        expected_hilbert: vec![1, 1, 0, 0, 0, 0],
        quiver: q,
        potential: Some(w),
        relations,
        printed_scale: Some(three),
        calabi_yau: Some(false),
    })
}
