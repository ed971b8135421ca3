use super::{FieldSpec, Scalar, Subspace};
use crate::error::{Error, Result};

/// Dense row-major matrix over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixQ {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl MatrixQ {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        MatrixQ {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows of equal length `cols`.
    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for x in row {
                field.check(&x)?;
                entries.push(x);
            }
        }
        Ok(MatrixQ {
            field,
            rows: nrows,
            cols,
            entries,
        })
    }

    /// Builds a matrix of small integers.
    pub fn from_i64(field: FieldSpec, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, cols, rows)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> MatrixQ {
        let mut t = MatrixQ::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Matrix-vector product `m * x`.
    pub fn mul_vec(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .fold(self.field.zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }
}

/// In-place Gauss-Jordan elimination on a list of rows. Returns pivot columns;
/// on return the first `pivots.len()` rows are the reduced basis and the rest
/// are zero.
pub(crate) fn gauss_jordan(rows: &mut Vec<Vec<Scalar>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r].iter_mut().skip(c) {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(pivots.len());
    pivots
}

/// Row space of `m` in canonical reduced row-echelon form, with its rank.
pub fn rref(m: &MatrixQ) -> (usize, Subspace) {
    let mut rows = m.row_vectors();
    let pivots = gauss_jordan(&mut rows, m.cols);
    let space = Subspace::from_reduced(m.field, m.cols, rows, pivots);
    (space.dim(), space)
}

/// Right kernel `{x : m x = 0}`.
pub fn kernel(m: &MatrixQ) -> Subspace {
    let mut rows = m.row_vectors();
    let pivots = gauss_jordan(&mut rows, m.cols);
    kernel_from_reduced(m.field, m.cols, &rows, &pivots)
}

fn kernel_from_reduced(
    field: FieldSpec,
    cols: usize,
    rows: &[Vec<Scalar>],
    pivots: &[usize],
) -> Subspace {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); cols];
        v[free] = field.one();
        for (row, &p) in rows.iter().zip(pivots) {
            v[p] = -&row[free];
        }
        basis.push(v);
    }
    Subspace::span(field, cols, basis).expect("consistent dimensions")
}

/// Solves `m x = rhs`. Returns a particular solution and the kernel, or None
/// when the system is inconsistent.
pub fn solve_affine(m: &MatrixQ, rhs: &[Scalar]) -> Result<Option<(Vec<Scalar>, Subspace)>> {
    if rhs.len() != m.rows {
        return Err(Error::DimensionMismatch {
            expected: m.rows,
            found: rhs.len(),
        });
    }
    let field = m.field;
    let mut rows: Vec<Vec<Scalar>> = (0..m.rows)
        .map(|r| {
            let mut row = m.row(r).to_vec();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let pivots = gauss_jordan(&mut rows, m.cols + 1);
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut particular = vec![field.zero(); m.cols];
    for (row, &p) in rows.iter().zip(&pivots) {
        particular[p] = row[m.cols].clone();
    }
    let coeff_rows: Vec<Vec<Scalar>> = rows.iter().map(|r| r[..m.cols].to_vec()).collect();
    let ker = kernel_from_reduced(field, m.cols, &coeff_rows, &pivots);
    Ok(Some((particular, ker)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_zero() {
        let q = FieldSpec::Rationals;
        let (r, s) = rref(&MatrixQ::identity(q, 3));
        assert_eq!(r, 3);
        assert_eq!(s, Subspace::full(q, 3));
        let (r, s) = rref(&MatrixQ::zeros(q, 2, 4));
        assert_eq!(r, 0);
        assert!(s.basis().is_empty());
    }

    #[test]
    fn solve_examples() {
        let q = FieldSpec::Rationals;
        let v: Vec<Scalar> = [3, -1, 2].iter().map(|&x| q.from_i64(x)).collect();
        let (p, k) = solve_affine(&MatrixQ::identity(q, 3), &v).unwrap().unwrap();
        assert_eq!(p, v);
        assert_eq!(k.dim(), 0);
        let (p, k) = solve_affine(&MatrixQ::zeros(q, 2, 2), &[q.zero(), q.zero()])
            .unwrap()
            .unwrap();
        assert_eq!(p, vec![q.zero(), q.zero()]);
        assert_eq!(k.dim(), 2);
        let m = MatrixQ::zeros(q, 1, 1);
        assert!(solve_affine(&m, &[q.one()]).unwrap().is_none());
    }

    #[test]
    fn kernel_is_annihilated() {
        let q = FieldSpec::Rationals;
        let m = MatrixQ::from_i64(q, &[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 1, 0]]).unwrap();
        let k = kernel(&m);
        assert_eq!(k.dim(), 2);
        for v in k.basis() {
            assert!(m.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
    }
}
