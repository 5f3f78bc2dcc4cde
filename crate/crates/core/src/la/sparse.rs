use crate::error::{Error, Result};
use crate::ff::FieldSpec;
use crate::la::{DenseMatrix, Vector};

/// Compressed sparse row matrix. Stored values are nonzero and column
/// indices are strictly increasing within each row.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseMatrix {
    spec: FieldSpec,
    n_rows: usize,
    n_cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<u32>,
}

impl SparseMatrix {
    /// Builds a matrix from 0-based `(row, col, value)` triplets in any order.
    /// Zero values are dropped; duplicate positions are rejected.
    pub fn from_triplets<I>(spec: FieldSpec, n_rows: usize, n_cols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u32)>,
    {
        let mut entries = Vec::new();
        for (i, j, v) in triplets {
            if i >= n_rows {
                return Err(Error::IndexOutOfRange { index: i, bound: n_rows });
            }
            if j >= n_cols {
                return Err(Error::IndexOutOfRange { index: j, bound: n_cols });
            }
            if v >= spec.modulus() {
                return Err(Error::NonCanonical { value: v, modulus: spec.modulus() });
            }
            entries.push((i, j, v));
        }
        entries.sort_unstable_by_key(|&(i, j, _)| (i, j));
        if let Some(w) = entries.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(Error::InvalidArgument(format!("duplicate entry at ({}, {})", w[0].0 + 1, w[0].1 + 1)));
        }
        entries.retain(|&(_, _, v)| v != 0);

        let mut row_ptr = vec![0; n_rows + 1];
        for &(i, _, _) in &entries {
            row_ptr[i + 1] += 1;
        }
        for i in 0..n_rows {
            row_ptr[i + 1] += row_ptr[i];
        }
        let col_idx = entries.iter().map(|e| e.1).collect();
        let values = entries.iter().map(|e| e.2).collect();
        Ok(Self { spec, n_rows, n_cols, row_ptr, col_idx, values })
    }

    pub fn identity(spec: FieldSpec, n: usize) -> Self {
        Self { spec, n_rows: n, n_cols: n, row_ptr: (0..=n).collect(), col_idx: (0..n).collect(), values: vec![1; n] }
    }

    /// Sparse copy of a dense matrix (dense zeros are not stored).
    pub fn from_dense(dense: &DenseMatrix) -> Self {
        let triplets = (0..dense.rows())
            .flat_map(|i| (0..dense.cols()).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, dense.get(i, j)));
        Self::from_triplets(dense.spec(), dense.rows(), dense.cols(), triplets)
            .expect("dense entries are canonical and unique")
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    /// Number of stored nonzeros.
    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Column indices and values of row `i`.
    #[inline]
    pub fn row(&self, i: usize) -> (&[usize], &[u32]) {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        (&self.col_idx[range.clone()], &self.values[range])
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        let (cols, vals) = self.row(i);
        cols.binary_search(&j).map_or(0, |p| vals[p])
    }

    /// All stored entries as 0-based triplets in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        (0..self.n_rows).flat_map(move |i| {
            let (cols, vals) = self.row(i);
            cols.iter().zip(vals).map(move |(&j, &v)| (i, j, v))
        })
    }

    /// `A_{i,*} · x` over raw entries.
    #[inline]
    pub(crate) fn row_dot(&self, i: usize, x: &[u32]) -> u32 {
        let spec = self.spec;
        let (cols, vals) = self.row(i);
        cols.iter().zip(vals).fold(0, |acc, (&j, &v)| spec.add(acc, spec.mul(v, x[j])))
    }

    pub fn spmv(&self, x: &Vector) -> Result<Vector> {
        if x.spec() != self.spec {
            return Err(Error::FieldMismatch { left: self.spec, right: x.spec() });
        }
        if x.len() != self.n_cols {
            return Err(Error::dims(
                "spmv",
                format!("matrix has {} columns, vector has length {}", self.n_cols, x.len()),
            ));
        }
        let entries = (0..self.n_rows).map(|i| self.row_dot(i, x.entries())).collect();
        Ok(Vector::from_raw(self.spec, entries))
    }

    /// `A_{R,*}` with rows in the order given.
    pub fn row_submatrix(&self, rows: &[usize]) -> Result<SparseMatrix> {
        let mut row_ptr = Vec::with_capacity(rows.len() + 1);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        row_ptr.push(0);
        for &i in rows {
            if i >= self.n_rows {
                return Err(Error::IndexOutOfRange { index: i, bound: self.n_rows });
            }
            let (cols, vals) = self.row(i);
            col_idx.extend_from_slice(cols);
            values.extend_from_slice(vals);
            row_ptr.push(col_idx.len());
        }
        Ok(Self { spec: self.spec, n_rows: rows.len(), n_cols: self.n_cols, row_ptr, col_idx, values })
    }

    /// Column `a_v`. Costs one pass over the nonzeros.
    pub fn column(&self, v: usize) -> Result<Vector> {
        if v >= self.n_cols {
            return Err(Error::IndexOutOfRange { index: v, bound: self.n_cols });
        }
        let mut out = Vector::zeros(self.spec, self.n_rows);
        for i in 0..self.n_rows {
            out.entries_mut()[i] = self.get(i, v);
        }
        Ok(out)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut counts = vec![0usize; self.n_cols + 1];
        for &j in &self.col_idx {
            counts[j + 1] += 1;
        }
        for j in 0..self.n_cols {
            counts[j + 1] += counts[j];
        }
        let row_ptr = counts.clone();
        let mut next = counts;
        let mut col_idx = vec![0; self.nnz()];
        let mut values = vec![0; self.nnz()];
        for (i, j, v) in self.triplets() {
            let p = next[j];
            col_idx[p] = i;
            values[p] = v;
            next[j] += 1;
        }
        Self { spec: self.spec, n_rows: self.n_cols, n_cols: self.n_rows, row_ptr, col_idx, values }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.spec, self.n_rows, self.n_cols);
        for (i, j, v) in self.triplets() {
            out.set_raw(i, j, v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> FieldSpec {
        FieldSpec::GF2
    }

    pub(crate) fn p3() -> SparseMatrix {
        SparseMatrix::from_triplets(gf2(), 3, 3, [(0, 1, 1), (1, 0, 1), (1, 2, 1), (2, 1, 1)]).unwrap()
    }

    fn vec_of(spec: FieldSpec, v: &[u32]) -> Vector {
        Vector::new(spec, v.to_vec()).unwrap()
    }

    #[test]
    fn spmv_examples() {
        let perm = SparseMatrix::from_triplets(gf2(), 2, 2, [(0, 1, 1), (1, 0, 1)]).unwrap();
        assert_eq!(perm.spmv(&vec_of(gf2(), &[1, 0])).unwrap().entries(), &[0, 1]);

        let gf5 = FieldSpec::prime(5).unwrap();
        let diag = SparseMatrix::from_triplets(gf5, 2, 2, [(0, 0, 2), (1, 1, 3)]).unwrap();
        assert_eq!(diag.spmv(&vec_of(gf5, &[1, 1])).unwrap().entries(), &[2, 3]);

        assert_eq!(p3().spmv(&vec_of(gf2(), &[0, 1, 0])).unwrap().entries(), &[1, 0, 1]);
        assert!(matches!(p3().spmv(&vec_of(gf2(), &[0, 1])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn extraction() {
        let i2 = SparseMatrix::identity(gf2(), 2);
        assert_eq!(i2.column(0).unwrap().entries(), &[1, 0]);
        assert!(i2.column(2).is_err());

        let row = p3().row_submatrix(&[1]).unwrap();
        assert_eq!((row.n_rows(), row.n_cols()), (1, 3));
        assert_eq!(row.to_dense().to_rows(), vec![vec![1, 0, 1]]);
        assert!(p3().row_submatrix(&[3]).is_err());

        assert_eq!(SparseMatrix::identity(gf2(), 3).to_dense(), DenseMatrix::identity(gf2(), 3));
    }

    #[test]
    fn construction_rules() {
        let dup = SparseMatrix::from_triplets(gf2(), 2, 2, [(0, 0, 1), (0, 0, 1)]);
        assert!(matches!(dup, Err(Error::InvalidArgument(_))));
        let zero_dropped = SparseMatrix::from_triplets(gf2(), 2, 2, [(0, 0, 0), (1, 1, 1)]).unwrap();
        assert_eq!(zero_dropped.nnz(), 1);
        assert!(SparseMatrix::from_triplets(gf2(), 2, 2, [(0, 0, 2)]).is_err());
        assert!(SparseMatrix::from_triplets(gf2(), 2, 2, [(2, 0, 1)]).is_err());
        let empty = SparseMatrix::from_triplets(gf2(), 2, 3, []).unwrap();
        assert_eq!(empty.nnz(), 0);
        assert_eq!(empty.to_dense(), DenseMatrix::zeros(gf2(), 2, 3));
    }

    #[test]
    fn transpose_matches_dense() {
        let gf7 = FieldSpec::prime(7).unwrap();
        let a = SparseMatrix::from_triplets(gf7, 2, 3, [(0, 2, 3), (1, 0, 5), (1, 2, 1)]).unwrap();
        let t = a.transpose();
        for (i, j, v) in a.triplets() {
            assert_eq!(t.get(j, i), v);
        }
        assert_eq!(t.nnz(), a.nnz());
        assert_eq!(t.transpose(), a);
    }
}
