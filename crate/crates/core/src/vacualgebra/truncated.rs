use std::borrow::Cow;
use std::collections::HashMap;

use super::relations::{from_sparse, key_path, to_sparse, RelationSet};
use crate::error::{Error, Result};
use crate::exactalg::{reduce_full_with, reduce_top_with, Scalar, SparseVec};
use crate::quiverpath::{Element, Path, PathCodec, Quiver};

/// The graded algebra `kQ / (R)` computed in every degree up to a bound.
///
/// The ideal in degree `d` is kept as a semi-echelon basis whose pivots are
/// the extensions `L ++ s` of "new" pivots `L` found in some degree `d' ≤ d`;
/// only the new pivot rows are stored.
#[derive(Clone, Debug)]
pub struct TruncatedAlgebra {
    relations: RelationSet,
    max_degree: usize,
    codec: PathCodec,
    new_rows: Vec<HashMap<u64, SparseVec>>,
    path_counts: Vec<Vec<Vec<u64>>>,
    pivot_counts: Vec<Vec<Vec<u64>>>,
    standard: Vec<Vec<u64>>,
}

impl TruncatedAlgebra {
    pub fn build(relations: &RelationSet, max_degree: usize) -> Result<Self> {
        build_graded(relations, max_degree)
    }

    pub fn quiver(&self) -> &Quiver {
        self.relations.quiver()
    }

    pub fn relations(&self) -> &RelationSet {
        &self.relations
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn codec(&self) -> &PathCodec {
        &self.codec
    }

    /// `dim A_d`.
    pub fn dim(&self, d: usize) -> usize {
        self.standard[d].len()
    }

    /// `dim A_0, …, dim A_D`.
    pub fn dims(&self) -> Vec<usize> {
        (0..=self.max_degree).map(|d| self.dim(d)).collect()
    }

    /// `dim I_d`.
    pub fn ideal_dim(&self, d: usize) -> usize {
        self.pivot_counts[d].iter().flatten().sum::<u64>() as usize
    }

    /// Dimension of `I_d` restricted to paths starting at `v`.
    pub fn ideal_dim_from(&self, d: usize, v: usize) -> usize {
        self.pivot_counts[d][v].iter().sum::<u64>() as usize
    }

    /// Number of standard monomials of degree `d` from `s` to `t`.
    pub fn dim_between(&self, d: usize, s: usize, t: usize) -> usize {
        (self.path_counts[d][s][t] - self.pivot_counts[d][s][t]) as usize
    }

    /// Number of standard monomials of degree `d` starting at `v`.
    pub fn dim_from(&self, d: usize, v: usize) -> usize {
        (0..self.quiver().vertex_count()).map(|t| self.dim_between(d, v, t)).sum()
    }

    /// Codes of the standard monomials (paths outside the pivot set) of
    /// degree `d`, ascending. Degree zero uses vertex indices.
    pub fn standard_keys(&self, d: usize) -> &[u64] {
        &self.standard[d]
    }

    pub fn standard_paths(&self, d: usize) -> Vec<Path> {
        self.standard[d]
            .iter()
            .map(|&k| key_path(self.quiver(), &self.codec, d, k))
            .collect()
    }

    pub fn key_source(&self, d: usize, key: u64) -> usize {
        if d == 0 {
            key as usize
        } else {
            self.quiver().source(self.codec.first_arrow(key, d))
        }
    }

    pub fn key_target(&self, d: usize, key: u64) -> usize {
        if d == 0 {
            key as usize
        } else {
            self.quiver().target(self.codec.last_arrow(key))
        }
    }

    fn row_for(&self, d: usize, key: u64) -> Option<Cow<'_, [(u64, Scalar)]>> {
        let n = self.relations.degree();
        if d < n {
            return None;
        }
        for dp in n..=d {
            let m = d - dp;
            let scale = self.codec.pow(m);
            if let Some(row) = self.new_rows[dp].get(&(key / scale)) {
                if m == 0 {
                    return Some(Cow::Borrowed(row.as_slice()));
                }
                let suffix = key % scale;
                return Some(Cow::Owned(
                    row.iter().map(|(k, c)| (k * scale + suffix, c.clone())).collect(),
                ));
            }
        }
        None
    }

    pub fn is_pivot(&self, d: usize, key: u64) -> bool {
        self.row_for(d, key).is_some()
    }

    /// Normal form of a degree-`d` sparse vector: a combination of standard
    /// monomials congruent to it modulo `I_d`.
    pub fn normal_form_sparse(&self, d: usize, v: SparseVec) -> SparseVec {
        reduce_full_with(v, |k| self.row_for(d, k))
    }

    /// Whether a degree-`d` sparse vector lies in `I_d`.
    pub fn in_ideal_sparse(&self, d: usize, v: SparseVec) -> bool {
        reduce_top_with(v, |k| self.row_for(d, k)).is_empty()
    }

    fn check_degrees(&self, x: &Element) -> Result<()> {
        match x.max_degree() {
            Some(m) if m > self.max_degree => Err(Error::Degree(format!(
                "element of degree {m} exceeds truncation degree {}",
                self.max_degree
            ))),
            _ => Ok(()),
        }
    }

    /// Normal form of an element, degree by degree.
    pub fn normal_form(&self, x: &Element) -> Result<Element> {
        self.check_degrees(x)?;
        let mut out = Element::zero(x.field());
        for d in 0..=x.max_degree().unwrap_or(0) {
            let part = x.graded_component(d);
            if part.is_zero() {
                continue;
            }
            let nf = self.normal_form_sparse(d, to_sparse(&self.codec, &part));
            out.add_scaled(
                &x.field().one(),
                &from_sparse(self.quiver(), x.field(), &self.codec, d, &nf),
            );
        }
        Ok(out)
    }

    /// Whether `x` lies in the ideal generated by the relations.
    pub fn in_ideal(&self, x: &Element) -> Result<bool> {
        self.check_degrees(x)?;
        for d in 0..=x.max_degree().unwrap_or(0) {
            let part = x.graded_component(d);
            if !part.is_zero() && !self.in_ideal_sparse(d, to_sparse(&self.codec, &part)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Normal form of the monomial `later · earlier` given as standard keys.
    pub(crate) fn multiply_keys(&self, later: (usize, u64), earlier: (usize, u64)) -> (usize, SparseVec) {
        let (d, k) = super::relations::product_key(&self.codec, later, earlier);
        (d, self.normal_form_sparse(d, vec![(k, self.relations.field().one())]))
    }
}

/// Builds the truncated algebra `A_0 ⊕ ⋯ ⊕ A_D` for homogeneous relations.
pub fn build_graded(relations: &RelationSet, max_degree: usize) -> Result<TruncatedAlgebra> {
    let q = relations.quiver().clone();
    let n = relations.degree();
    let codec = PathCodec::new(&q);
    let nv = q.vertex_count();
    if codec.base().checked_pow(max_degree as u32).is_none_or(|x| x >= 1 << 56) {
        return Err(Error::Degree(format!("truncation degree {max_degree} is too large for this quiver")));
    }
    let path_counts = q.path_counts(max_degree);
    let rels: Vec<(usize, usize, SparseVec)> = relations
        .relations()
        .iter()
        .filter_map(|r| {
            let (s, t) = r.endpoints()?;
            Some((s, t, to_sparse(&codec, r)))
        })
        .collect();
    let mut alg = TruncatedAlgebra {
        relations: relations.clone(),
        max_degree,
        codec,
        new_rows: Vec::with_capacity(max_degree + 1),
        path_counts,
        pivot_counts: Vec::with_capacity(max_degree + 1),
        standard: Vec::with_capacity(max_degree + 1),
    };
    // paths of length d - N as (code, source, target), grown one arrow at a time
    let mut prefixes: Vec<(u64, usize, usize)> = (0..nv).map(|v| (v as u64, v, v)).collect();
    for d in 0..=max_degree {
        let mut rows: HashMap<u64, SparseVec> = HashMap::new();
        if d >= n {
            if d > n {
                let mut grown = Vec::new();
                for &(code, s, t) in &prefixes {
                    for a in q.arrows_from(t) {
                        let c = if d - n == 1 { a as u64 } else { code * codec.base() + a as u64 };
                        grown.push((c, s, q.target(a)));
                    }
                }
                prefixes = grown;
            }
            let ulen = d - n;
            for &(ucode, _, ut) in &prefixes {
                for (rs, _, rv) in &rels {
                    if *rs != ut {
                        continue;
                    }
                    let cand: SparseVec = if ulen == 0 {
                        rv.clone()
                    } else {
                        rv.iter().map(|(k, c)| (codec.concat(ucode, *k, n), c.clone())).collect()
                    };
                    let r = reduce_top_with(cand, |k| {
                        if let Some(row) = rows.get(&k) {
                            return Some(Cow::Borrowed(row.as_slice()));
                        }
                        alg.row_for_partial(d, k)
                    });
                    if let Some((k, lead)) = r.last().cloned() {
                        let inv = lead.inv().expect("nonzero leading coefficient");
                        let row = if inv.is_one() {
                            r
                        } else {
                            r.iter().map(|(k, c)| (*k, c * &inv)).collect()
                        };
                        rows.insert(k, row);
                    }
                }
            }
        }
        // pivot counts and standard monomials
        let mut counts = vec![vec![0u64; nv]; nv];
        let mut standard = Vec::new();
        if d == 0 {
            standard = (0..nv as u64).collect();
        } else {
            for s in 0..nv {
                for v in 0..nv {
                    let c = alg.pivot_counts[d - 1][s][v];
                    if c == 0 {
                        continue;
                    }
                    for a in q.arrows_from(v) {
                        counts[s][q.target(a)] += c;
                    }
                }
            }
            for &k in rows.keys() {
                counts[q.source(codec.first_arrow(k, d))][q.target(codec.last_arrow(k))] += 1;
            }
            for &sk in &alg.standard[d - 1] {
                let t = alg.key_target(d - 1, sk);
                for a in q.arrows_from(t) {
                    let k = if d == 1 { a as u64 } else { sk * codec.base() + a as u64 };
                    if !rows.contains_key(&k) {
                        standard.push(k);
                    }
                }
            }
            standard.sort_unstable();
        }
        alg.new_rows.push(rows);
        alg.pivot_counts.push(counts);
        alg.standard.push(standard);
    }
    Ok(alg)
}

impl TruncatedAlgebra {
    /// Pivot lookup while degree `d` is still under construction: only the
    /// extensions of pivots found in lower degrees.
    fn row_for_partial(&self, d: usize, key: u64) -> Option<Cow<'_, [(u64, Scalar)]>> {
        let n = self.relations.degree();
        for dp in n..d {
            let m = d - dp;
            let scale = self.codec.pow(m);
            if let Some(row) = self.new_rows[dp].get(&(key / scale)) {
                let suffix = key % scale;
                return Some(Cow::Owned(
                    row.iter().map(|(k, c)| (k * scale + suffix, c.clone())).collect(),
                ));
            }
        }
        None
    }
}
