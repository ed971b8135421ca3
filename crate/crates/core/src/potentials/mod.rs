//! The cyclic calculus on Pot(Q): rotation classes of cycles, the rotation
//! sums 𝔠 and 𝔠′, cyclic derivatives and the double derivative.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::exactalg::{FieldSpec, Scalar};
use crate::quiverpath::{enumerate_paths, Element, Path, Quiver};

/// A cycle up to rotation, represented by its lexicographically least
/// rotation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleClass {
    rep: Path,
}

impl CycleClass {
    pub fn representative(&self) -> &Path {
        &self.rep
    }

    pub fn len(&self) -> usize {
        self.rep.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rep.is_empty()
    }

    pub fn display(&self, q: &Quiver) -> String {
        self.rep.display(q)
    }
}

/// Rotation class of a cycle of positive length.
pub fn class_of(q: &Quiver, p: &Path) -> Result<CycleClass> {
    if p.is_empty() {
        return Err(Error::EmptyPath);
    }
    if !p.is_cycle() {
        return Err(Error::NotACycle(p.display(q)));
    }
    let w = p.arrows();
    let n = w.len();
    let mut best = 0;
    for i in 1..n {
        let cmp = (0..n)
            .map(|k| w[(i + k) % n].cmp(&w[(best + k) % n]))
            .find(|o| o.is_ne());
        if cmp == Some(std::cmp::Ordering::Less) {
            best = i;
        }
    }
    Ok(CycleClass {
        rep: if best == 0 { p.clone() } else { p.rotation(q, best) },
    })
}

/// Minimal rotation period of a word.
fn period(w: &[usize]) -> usize {
    let n = w.len();
    (1..=n)
        .find(|&d| n % d == 0 && (0..n).all(|k| w[k] == w[(k + d) % n]))
        .unwrap_or(n)
}

/// Writes `σ = τ^m` with `m` maximal.
pub fn primitive_decomposition(q: &Quiver, sigma: &CycleClass) -> (Path, usize) {
    let w = sigma.rep.arrows();
    let d = period(w);
    (sigma.rep.slice(q, 0, d), w.len() / d)
}

/// An element of Pot(Q): a linear combination of cycle classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Potential {
    field: FieldSpec,
    terms: BTreeMap<CycleClass, Scalar>,
}

impl Potential {
    pub fn zero(field: FieldSpec) -> Self {
        Potential {
            field,
            terms: BTreeMap::new(),
        }
    }

    /// `c · class(p)` for a cycle `p`.
    pub fn from_cycle(q: &Quiver, c: Scalar, p: &Path) -> Result<Self> {
        let mut w = Potential::zero(c.field());
        w.add_cycle(q, c, p)?;
        Ok(w)
    }

    pub fn from_classes(field: FieldSpec, terms: impl IntoIterator<Item = (CycleClass, Scalar)>) -> Self {
        let mut w = Potential::zero(field);
        for (k, c) in terms {
            w.add_class(k, c);
        }
        w
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CycleClass, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, k: &CycleClass) -> Scalar {
        self.terms.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_class(&mut self, k: CycleClass, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(x) => {
                *x = &*x + &c;
                if x.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn add_cycle(&mut self, q: &Quiver, c: Scalar, p: &Path) -> Result<()> {
        self.add_class(class_of(q, p)?, c);
        Ok(())
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &Potential) {
        for (k, x) in &other.terms {
            self.add_class(k.clone(), c * x);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Potential {
        let mut out = Potential::zero(self.field);
        out.add_scaled(c, self);
        out
    }

    pub fn plus(&self, other: &Potential) -> Potential {
        let mut out = self.clone();
        out.add_scaled(&self.field.one(), other);
        out
    }

    pub fn minus(&self, other: &Potential) -> Potential {
        let mut out = self.clone();
        out.add_scaled(&-self.field.one(), other);
        out
    }

    /// Part of cycle length `j`.
    pub fn homogeneous_part(&self, j: usize) -> Potential {
        Potential {
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.len() == j)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Part of cycle length below `j`.
    pub fn lower_part(&self, j: usize) -> Potential {
        Potential {
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.len() < j)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|k| k.len()).max()
    }

    pub fn homogeneous_degree(&self) -> Option<usize> {
        let d = self.max_degree()?;
        self.terms.keys().all(|k| k.len() == d).then_some(d)
    }

    /// Same terms over another field (coefficients must reduce).
    pub fn reduce_mod(&self, field: FieldSpec) -> Option<Potential> {
        let mut out = Potential::zero(field);
        for (k, c) in &self.terms {
            out.add_class(k.clone(), c.reduce_mod(field)?);
        }
        Some(out)
    }

    /// Right-to-left rendering, e.g. `1 * z y x - 1 * y z x`.
    pub fn display(&self, q: &Quiver) -> String {
        let mut e = String::new();
        if self.terms.is_empty() {
            return "0".into();
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    e.push('-');
                }
            } else {
                e.push_str(if neg { " - " } else { " + " });
            }
            e.push_str(&format!("{mag} * {}", k.display(q)));
        }
        e
    }
}

/// 𝔠: each class goes to the sum of all rotations of its representative,
/// counted with multiplicity.
pub fn cyclic_symmetrize(q: &Quiver, w: &Potential) -> Element {
    let mut out = Element::zero(w.field);
    for (k, c) in &w.terms {
        for i in 0..k.len() {
            out.add_term(k.rep.rotation(q, i), c.clone());
        }
    }
    out
}

/// ∂ₐ W = 𝔠(W) a⁻¹.
pub fn cyclic_derivative(q: &Quiver, w: &Potential, a: usize) -> Element {
    let mut out = Element::zero(w.field);
    for (k, c) in &w.terms {
        let arrows = k.rep.arrows();
        for (i, &b) in arrows.iter().enumerate() {
            if b != a {
                continue;
            }
            let rot = k.rep.rotation(q, i);
            out.add_term(rot.slice(q, 1, rot.len()), c.clone());
        }
    }
    out
}

/// ∂ₐ W for every arrow, in arrow order.
pub fn all_derivatives(q: &Quiver, w: &Potential) -> Vec<Element> {
    (0..q.arrow_count()).map(|a| cyclic_derivative(q, w, a)).collect()
}

/// 𝔠′(σ): for `σ = τ^m` with `m` maximal, the sum of the `m`-th powers of the
/// distinct rotations of `τ`.
pub fn cyclic_symmetrize_prime(q: &Quiver, field: FieldSpec, sigma: &CycleClass) -> Element {
    let (tau, m) = primitive_decomposition(q, sigma);
    let mut out = Element::zero(field);
    for i in 0..tau.len() {
        out.add_term(tau.rotation(q, i).power(m), field.one());
    }
    out
}

/// Linear extension of 𝔠′ to potentials.
pub fn cyclic_symmetrize_prime_potential(q: &Quiver, w: &Potential) -> Element {
    let mut out = Element::zero(w.field);
    for (k, c) in &w.terms {
        let (tau, m) = primitive_decomposition(q, k);
        for i in 0..tau.len() {
            out.add_term(tau.rotation(q, i).power(m), c.clone());
        }
    }
    out
}

/// Sums coefficients over rotation classes; every term must be a cycle of
/// positive length.
pub fn project_to_potential(q: &Quiver, x: &Element) -> Result<Potential> {
    let mut w = Potential::zero(x.field());
    for (p, c) in x.terms() {
        w.add_cycle(q, c.clone(), p)?;
    }
    Ok(w)
}

/// Number of rotation classes of cycles of length `j`, i.e. `dim Pot(Q)_j`.
pub fn potential_dim(q: &Quiver, j: usize) -> usize {
    if j == 0 {
        return q.vertex_count();
    }
    let classes: BTreeSet<CycleClass> = enumerate_paths(q, j, None, None)
        .into_iter()
        .filter(|p| p.is_cycle())
        .map(|p| class_of(q, &p).expect("cycle"))
        .collect();
    classes.len()
}

/// All rotation classes of cycles of length `j`, in canonical order.
pub fn cycle_classes(q: &Quiver, j: usize) -> Vec<CycleClass> {
    let classes: BTreeSet<CycleClass> = enumerate_paths(q, j, None, None)
        .into_iter()
        .filter(|p| p.is_cycle())
        .map(|p| class_of(q, &p).expect("cycle"))
        .collect();
    classes.into_iter().collect()
}

/// A linear combination of pairs `u ⊗ v` of paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    field: FieldSpec,
    terms: BTreeMap<(Path, Path), Scalar>,
}

impl TensorElement {
    pub fn zero(field: FieldSpec) -> Self {
        TensorElement {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Path, Path), &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, u: Path, v: Path, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (u, v);
        match self.terms.get_mut(&key) {
            Some(x) => {
                *x = &*x + &c;
                if x.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|((u, v), c)| format!("{c} * ({}) (x) ({})", u.display(q), v.display(q)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// der_a x = Σ_{p = u a v} u ⊗ v over every occurrence of `a` in every term.
pub fn double_derivative(q: &Quiver, x: &Element, a: usize) -> TensorElement {
    let mut out = TensorElement::zero(x.field());
    for (p, c) in x.terms() {
        for (i, &b) in p.arrows().iter().enumerate() {
            if b != a {
                continue;
            }
            let v = p.slice(q, 0, i);
            let u = p.slice(q, i + 1, p.len());
            out.add_term(u, v, c.clone());
        }
    }
    out
}

/// τ(u ⊗ v) = v ⊗ u.
pub fn swap(t: &TensorElement) -> TensorElement {
    TensorElement {
        field: t.field,
        terms: t
            .terms
            .iter()
            .map(|((u, v), c)| ((v.clone(), u.clone()), c.clone()))
            .collect(),
    }
}

#[cfg(test)]
mod tests;
