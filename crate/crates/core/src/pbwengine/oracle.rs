use super::deformation::Deformation;
use crate::error::{Error, Result};
use crate::exactalg::{sparse_from_pairs, Echelon, Scalar};
use crate::quiverpath::{enumerate_paths, PathCodec};
use crate::vacualgebra::build_graded;

const DEGREE_SHIFT: u32 = 56;

/// Dimension evidence for the filtered algebra `A′ = kQ / (rₐ − φ(rₐ))`
/// against its graded counterpart `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleVerdict {
    pub truncation: usize,
    pub slack: usize,
    /// Upper bound on `dim F^d A′` for `d = 0..=D`, from generators of
    /// total length at most `d + slack`.
    pub upper_bounds: Vec<usize>,
    /// `dim A_0 + ⋯ + dim A_d` for `d = 0..=D`.
    pub graded_cumulative: Vec<usize>,
    /// First degree whose upper bound falls below the graded count.
    pub violation: Option<usize>,
}

impl OracleVerdict {
    pub fn consistent(&self) -> bool {
        self.violation.is_none()
    }
}

/// Mixed-degree key: degree in the high bits, path key below. Ordering by
/// key puts the highest-degree term last, so echelon pivots are top-degree
/// terms.
fn mixed_key(codec: &PathCodec, arrows: &[usize], vertex: usize) -> u64 {
    let low = if arrows.is_empty() { vertex as u64 } else { codec.encode(arrows) };
    ((arrows.len() as u64) << DEGREE_SHIFT) | low
}

/// Compares `dim F^d A′` bounded from above by the span of `u·pₐ·v`,
/// `|u| + N + |v| ≤ d + slack`, with the graded dimensions of the base.
/// Falling below certifies that `A′` is not a PBW deformation.
pub fn gr_oracle(d: &Deformation, max_degree: usize, slack: usize) -> Result<OracleVerdict> {
    let base = d.base();
    let q = base.quiver();
    let n = base.degree();
    let field = base.field();
    let codec = PathCodec::new(q);
    let top = max_degree + slack;
    if codec.base().checked_pow(top as u32).is_none_or(|x| x >= 1 << DEGREE_SHIFT) {
        return Err(Error::Degree(format!("total length {top} is too large for this quiver")));
    }
    let graded = build_graded(base, max_degree)?;
    let graded_cumulative: Vec<usize> = graded
        .dims()
        .iter()
        .scan(0, |acc, x| {
            *acc += x;
            Some(*acc)
        })
        .collect();
    let counts = q.path_counts(max_degree);
    let free_cumulative: Vec<usize> = counts
        .iter()
        .map(|c| c.iter().flatten().sum::<u64>() as usize)
        .scan(0, |acc, x| {
            *acc += x;
            Some(*acc)
        })
        .collect();

    let deformed = d.deformed_relations();
    let terms: Vec<Vec<(Vec<usize>, usize, Scalar)>> = deformed
        .iter()
        .map(|p| p.terms().map(|(path, c)| (path.arrows().to_vec(), path.source(), c.clone())).collect())
        .collect();
    let mut ech = Echelon::new(field);
    let mut done_outer = None::<usize>;
    let mut upper_bounds = Vec::with_capacity(max_degree + 1);
    for deg in 0..=max_degree {
        let e = deg + slack;
        // generators with |u| + |v| = extra, for every extra not yet processed
        if e >= n {
            let start = done_outer.map_or(0, |x| x + 1);
            for extra in start..=e - n {
                for (a, rel_terms) in terms.iter().enumerate() {
                    if rel_terms.is_empty() {
                        continue;
                    }
                    for left_len in 0..=extra {
                        let right_len = extra - left_len;
                        let lefts = enumerate_paths(q, left_len, Some(q.source(a)), None);
                        let rights = enumerate_paths(q, right_len, None, Some(q.target(a)));
                        for u in &lefts {
                            for v in &rights {
                                let vec = rel_terms.iter().map(|(arrows, src, c)| {
                                    let mut w = v.arrows().to_vec();
                                    w.extend_from_slice(arrows);
                                    w.extend_from_slice(u.arrows());
                                    let vertex = if w.is_empty() { *src } else { 0 };
                                    (mixed_key(&codec, &w, vertex), c.clone())
                                });
                                ech.insert(sparse_from_pairs(vec));
                            }
                        }
                    }
                }
            }
            done_outer = Some(e - n);
        }
        let low = ech
            .pivots()
            .iter()
            .filter(|&&k| (k >> DEGREE_SHIFT) as usize <= deg)
            .count();
        upper_bounds.push(free_cumulative[deg] - low);
    }
    let violation = (0..=max_degree).find(|&i| upper_bounds[i] < graded_cumulative[i]);
    Ok(OracleVerdict {
        truncation: max_degree,
        slack,
        upper_bounds,
        graded_cumulative,
        violation,
    })
}
