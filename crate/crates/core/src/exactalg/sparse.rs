use std::borrow::Cow;
use std::collections::{BTreeMap, HashMap};

use super::{FieldSpec, Scalar};

/// Sparse vector: `(key, coefficient)` pairs sorted by increasing key, with no
/// zero coefficients. The largest key is the leading term.
pub type SparseVec = Vec<(u64, Scalar)>;

/// Builds a sparse vector from unsorted pairs, summing repeated keys.
pub fn sparse_from_pairs(pairs: impl IntoIterator<Item = (u64, Scalar)>) -> SparseVec {
    let mut acc: BTreeMap<u64, Scalar> = BTreeMap::new();
    for (k, v) in pairs {
        match acc.get_mut(&k) {
            Some(x) => *x = &*x + &v,
            None => {
                acc.insert(k, v);
            }
        }
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// `c * v`.
pub fn sparse_scale(v: &[(u64, Scalar)], c: &Scalar) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(k, x)| (*k, x * c)).collect()
}

/// `a + c * b`.
pub fn sparse_axpy(a: &[(u64, Scalar)], c: &Scalar, b: &[(u64, Scalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let s = &a[i].1 + &(c * &b[j].1);
            if !s.is_zero() {
                out.push((a[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

/// Working accumulator used by the reduction routines.
struct Acc(BTreeMap<u64, Scalar>);

impl Acc {
    fn new(v: SparseVec) -> Self {
        Acc(v.into_iter().collect())
    }

    fn sub_scaled(&mut self, c: &Scalar, row: &[(u64, Scalar)], skip: u64) {
        for (k, x) in row {
            if *k == skip {
                continue;
            }
            let d = c * x;
            match self.0.get_mut(k) {
                Some(y) => {
                    *y = &*y - &d;
                    if y.is_zero() {
                        self.0.remove(k);
                    }
                }
                None => {
                    self.0.insert(*k, -d);
                }
            }
        }
    }
}

/// Repeatedly cancels the leading term against pivot rows supplied by
/// `lookup` (rows normalised so the pivot coefficient is one). Stops at the
/// first leading term without a pivot. The result is zero iff the input lies
/// in the span of the pivot rows.
pub fn reduce_top_with<'a, F>(v: SparseVec, lookup: F) -> SparseVec
where
    F: Fn(u64) -> Option<Cow<'a, [(u64, Scalar)]>>,
{
    let mut acc = Acc::new(v);
    while let Some((&k, _)) = acc.0.last_key_value() {
        let Some(row) = lookup(k) else {
            break;
        };
        let c = acc.0.remove(&k).expect("leading term present");
        acc.sub_scaled(&c, &row, k);
    }
    acc.0.into_iter().collect()
}

/// Cancels every term that has a pivot row, leaving a combination of
/// non-pivot keys (a normal form).
pub fn reduce_full_with<'a, F>(v: SparseVec, lookup: F) -> SparseVec
where
    F: Fn(u64) -> Option<Cow<'a, [(u64, Scalar)]>>,
{
    let mut acc = Acc::new(v);
    let mut out: Vec<(u64, Scalar)> = Vec::new();
    while let Some((k, c)) = acc.0.pop_last() {
        match lookup(k) {
            Some(row) => acc.sub_scaled(&c, &row, k),
            None => out.push((k, c)),
        }
    }
    out.reverse();
    out
}

/// Semi-echelon basis: rows with pairwise distinct leading keys, each
/// normalised to leading coefficient one.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: FieldSpec,
    rows: HashMap<u64, SparseVec>,
}

impl Echelon {
    pub fn new(field: FieldSpec) -> Self {
        Echelon {
            field,
            rows: HashMap::new(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, key: u64) -> bool {
        self.rows.contains_key(&key)
    }

    pub fn row(&self, key: u64) -> Option<&SparseVec> {
        self.rows.get(&key)
    }

    /// Pivot keys in increasing order.
    pub fn pivots(&self) -> Vec<u64> {
        let mut p: Vec<u64> = self.rows.keys().copied().collect();
        p.sort_unstable();
        p
    }

    fn lookup<'s>(&'s self) -> impl Fn(u64) -> Option<Cow<'s, [(u64, Scalar)]>> + 's {
        move |k| self.rows.get(&k).map(|r| Cow::Borrowed(r.as_slice()))
    }

    pub fn reduce_top(&self, v: SparseVec) -> SparseVec {
        reduce_top_with(v, self.lookup())
    }

    pub fn reduce_full(&self, v: SparseVec) -> SparseVec {
        reduce_full_with(v, self.lookup())
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce_top(v).is_empty()
    }

    /// Adds `v` to the span. Returns the new pivot key if the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> Option<u64> {
        let r = self.reduce_top(v);
        let (k, lead) = r.last()?.clone();
        let inv = lead.inv().expect("nonzero leading coefficient");
        let r = if inv.is_one() { r } else { sparse_scale(&r, &inv) };
        self.rows.insert(k, r);
        Some(k)
    }

    /// Fully reduced rows keyed by pivot: each row has coefficient zero at
    /// every other pivot key.
    pub fn reduced_rows(&self) -> BTreeMap<u64, SparseVec> {
        let mut out: BTreeMap<u64, SparseVec> = BTreeMap::new();
        for k in self.pivots() {
            // lower pivots are already reduced; reduce the tail of row k by them
            let row = &self.rows[&k];
            let tail: SparseVec = row.iter().filter(|(j, _)| *j != k).cloned().collect();
            let reduced = reduce_full_with(tail, |j| out.get(&j).map(|r| Cow::Borrowed(r.as_slice())));
            let mut full = reduced;
            full.push((k, self.field.one()));
            out.insert(k, full);
        }
        out
    }

    /// Basis of `{x : <row, x> = 0 for all rows}` over the given columns,
    /// i.e. the solution space of the homogeneous system whose equations are
    /// the inserted rows.
    pub fn kernel_basis(&self, columns: &[u64]) -> Vec<SparseVec> {
        let reduced = self.reduced_rows();
        let mut out = Vec::new();
        for &free in columns {
            if reduced.contains_key(&free) {
                continue;
            }
            let mut v = vec![(free, self.field.one())];
            for (&p, row) in &reduced {
                if let Ok(i) = row.binary_search_by_key(&free, |(k, _)| *k) {
                    v.push((p, -&row[i].1));
                }
            }
            v.sort_by_key(|(k, _)| *k);
            out.push(v);
        }
        out
    }
}

/// Expresses vectors as combinations of a fixed generator list.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    field: FieldSpec,
    count: u64,
    echelon: Echelon,
    dependencies: Vec<Vec<Scalar>>,
}

impl SpanSolver {
    /// Generator keys are shifted past the generator count so that tag keys
    /// recording the combination stay below every real key.
    pub fn new(field: FieldSpec, generators: &[SparseVec]) -> Self {
        let n = generators.len() as u64;
        let mut echelon = Echelon::new(field);
        let mut dependencies = Vec::new();
        for (i, v) in generators.iter().enumerate() {
            let mut aug: SparseVec = Vec::with_capacity(v.len() + 1);
            aug.push((i as u64, field.one()));
            aug.extend(v.iter().map(|(k, c)| (k + n, c.clone())));
            let r = echelon.reduce_top(aug);
            match r.last() {
                Some((k, _)) if *k < n => {
                    let mut dense = vec![field.zero(); generators.len()];
                    for (k, c) in r {
                        dense[k as usize] = c;
                    }
                    dependencies.push(dense);
                }
                _ => {
                    echelon.insert(r);
                }
            }
        }
        SpanSolver {
            field,
            count: n,
            echelon,
            dependencies,
        }
    }

    /// Rank of the generator list.
    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    /// Basis of the dependencies `λ` with `Σ λ_i g_i = 0`.
    pub fn dependencies(&self) -> &[Vec<Scalar>] {
        &self.dependencies
    }

    /// Coefficients `λ` with `Σ λ_i g_i = v`, or None if `v` is outside the span.
    pub fn solve(&self, v: &[(u64, Scalar)]) -> Option<Vec<Scalar>> {
        let n = self.count;
        let shifted: SparseVec = v.iter().map(|(k, c)| (k + n, c.clone())).collect();
        let r = self.echelon.reduce_top(shifted);
        if r.last().is_some_and(|(k, _)| *k >= n) {
            return None;
        }
        let mut out = vec![self.field.zero(); n as usize];
        for (k, c) in r {
            out[k as usize] = -c;
        }
        Some(out)
    }
}

/// Basis of the linear dependencies `λ` with `Σ λ_i v_i = 0`, each returned
/// as a dense coefficient vector of length `vectors.len()`.
pub fn linear_dependencies(field: FieldSpec, vectors: &[SparseVec]) -> Vec<Vec<Scalar>> {
    SpanSolver::new(field, vectors).dependencies
}
