use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use super::{compose, Path, Quiver};
use crate::error::{Error, Result};
use crate::exactalg::{FieldSpec, Scalar};

/// A finite linear combination of paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    field: FieldSpec,
    terms: BTreeMap<Path, Scalar>,
}

impl Element {
    pub fn zero(field: FieldSpec) -> Self {
        Element {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_path(field: FieldSpec, p: Path) -> Self {
        Self::term(field.one(), p)
    }

    pub fn term(c: Scalar, p: Path) -> Self {
        let mut e = Element::zero(c.field());
        e.add_term(p, c);
        e
    }

    /// Sums the given terms, dropping zeros.
    pub fn from_terms(field: FieldSpec, terms: impl IntoIterator<Item = (Path, Scalar)>) -> Self {
        let mut e = Element::zero(field);
        for (p, c) in terms {
            e.add_term(p, c);
        }
        e
    }

    /// Sum of all vertex idempotents.
    pub fn unit(q: &Quiver, field: FieldSpec) -> Self {
        Self::from_terms(field, (0..q.vertex_count()).map(|v| (Path::trivial(v), field.one())))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &Path) -> Scalar {
        self.terms.get(p).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, p: Path, c: Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(c.field(), self.field);
        match self.terms.get_mut(&p) {
            Some(x) => {
                *x = &*x + &c;
                if x.is_zero() {
                    self.terms.remove(&p);
                }
            }
            None => {
                self.terms.insert(p, c);
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Scalar, other: &Element) {
        for (p, x) in &other.terms {
            self.add_term(p.clone(), c * x);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero(self.field);
        }
        Element {
            field: self.field,
            terms: self.terms.iter().map(|(p, x)| (p.clone(), x * c)).collect(),
        }
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|p| p.len()).max()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(|p| p.len()).min()
    }

    /// The common length of all terms, if there is one (None for zero).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let d = self.min_degree()?;
        (self.max_degree() == Some(d)).then_some(d)
    }

    /// Common `(source, target)` of all terms, if there is one.
    pub fn endpoints(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let st = (first.source(), first.target());
        it.all(|p| (p.source(), p.target()) == st).then_some(st)
    }

    /// `e · self · f` for vertices `e`, `f` (keeps terms from `f` to `e`).
    pub fn truncate(&self, e: usize, f: usize) -> Element {
        Element {
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.source() == f && p.target() == e)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    /// Degree-`j` part.
    pub fn graded_component(&self, j: usize) -> Element {
        graded_component(self, j)
    }

    /// Right-to-left rendering with explicit coefficients, e.g.
    /// `2 * y x - 1/3 * e(v)`.
    pub fn display(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&format!("{mag} * {}", p.display(q)));
        }
        out
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        assert_eq!(self.field, rhs.field, "element field mismatch");
        let mut out = self.clone();
        out.add_scaled(&self.field.one(), rhs);
        out
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        assert_eq!(self.field, rhs.field, "element field mismatch");
        let mut out = self.clone();
        out.add_scaled(&-self.field.one(), rhs);
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&-self.field.one())
    }
}

/// Product `x · y` in kQ (`y` applied first); incomposable pairs vanish.
pub fn multiply(x: &Element, y: &Element) -> Result<Element> {
    if x.field != y.field {
        return Err(Error::FieldMismatch(x.field, y.field));
    }
    let mut out = Element::zero(x.field);
    for (p, a) in &x.terms {
        for (r, b) in &y.terms {
            if let Some(pr) = compose(p, r) {
                out.add_term(pr, a * b);
            }
        }
    }
    Ok(out)
}

/// Degree-`j` part of `x`.
pub fn graded_component(x: &Element, j: usize) -> Element {
    Element {
        field: x.field,
        terms: x
            .terms
            .iter()
            .filter(|(p, _)| p.len() == j)
            .map(|(p, c)| (p.clone(), c.clone()))
            .collect(),
    }
}
