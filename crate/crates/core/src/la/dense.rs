use crate::bits::BitMatrix;
use crate::error::{Error, Result};
use crate::ff::FieldSpec;
use crate::la::Vector;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Store {
    /// GF(2): packed rows.
    Bits(BitMatrix),
    /// GF(p): row-major residues.
    Words(Vec<u32>),
}

/// Dense row-major matrix. GF(2) matrices are stored bit-packed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DenseMatrix {
    spec: FieldSpec,
    rows: usize,
    cols: usize,
    store: Store,
}

impl DenseMatrix {
    pub fn zeros(spec: FieldSpec, rows: usize, cols: usize) -> Self {
        let store =
            if spec.is_gf2() { Store::Bits(BitMatrix::zeros(rows, cols)) } else { Store::Words(vec![0; rows * cols]) };
        Self { spec, rows, cols, store }
    }

    pub fn identity(spec: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(spec, n, n);
        for i in 0..n {
            m.set_raw(i, i, 1);
        }
        m
    }

    pub fn from_rows(spec: FieldSpec, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(spec, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::dims("from_rows", format!("row {i} has length {}, expected {cols}", row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v)?;
            }
        }
        Ok(m)
    }

    pub fn from_bits(bits: BitMatrix) -> Self {
        Self { spec: FieldSpec::GF2, rows: bits.rows(), cols: bits.cols(), store: Store::Bits(bits) }
    }

    /// Packed view, present for GF(2) matrices.
    pub fn as_bits(&self) -> Option<&BitMatrix> {
        match &self.store {
            Store::Bits(b) => Some(b),
            Store::Words(_) => None,
        }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        match &self.store {
            Store::Bits(b) => u32::from(b.get(i, j)),
            Store::Words(w) => w[i * self.cols + j],
        }
    }

    pub fn set(&mut self, i: usize, j: usize, value: u32) -> Result<()> {
        if value >= self.spec.modulus() {
            return Err(Error::NonCanonical { value, modulus: self.spec.modulus() });
        }
        if i >= self.rows {
            return Err(Error::IndexOutOfRange { index: i, bound: self.rows });
        }
        if j >= self.cols {
            return Err(Error::IndexOutOfRange { index: j, bound: self.cols });
        }
        self.set_raw(i, j, value);
        Ok(())
    }

    #[inline]
    pub(crate) fn set_raw(&mut self, i: usize, j: usize, value: u32) {
        match &mut self.store {
            Store::Bits(b) => b.set(i, j, value == 1),
            Store::Words(w) => w[i * self.cols + j] = value,
        }
    }

    pub fn row(&self, i: usize) -> Vec<u32> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector::from_raw(self.spec, (0..self.rows).map(|i| self.get(i, j)).collect())
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        match &self.store {
            Store::Bits(b) => b.count_ones() == 0,
            Store::Words(w) => w.iter().all(|&v| v == 0),
        }
    }

    /// Submatrix with the given rows and columns, in the given orders.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Result<DenseMatrix> {
        if let Some(&i) = rows.iter().find(|&&i| i >= self.rows) {
            return Err(Error::IndexOutOfRange { index: i, bound: self.rows });
        }
        if let Some(&j) = cols.iter().find(|&&j| j >= self.cols) {
            return Err(Error::IndexOutOfRange { index: j, bound: self.cols });
        }
        let mut out = DenseMatrix::zeros(self.spec, rows.len(), cols.len());
        for (oi, &i) in rows.iter().enumerate() {
            for (oj, &j) in cols.iter().enumerate() {
                out.set_raw(oi, oj, self.get(i, j));
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.spec, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set_raw(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Classical product; GF(2) uses packed row XORs.
    pub fn mul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.spec != other.spec {
            return Err(Error::FieldMismatch { left: self.spec, right: other.spec });
        }
        if self.cols != other.rows {
            return Err(Error::dims(
                "dense_mul",
                format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols),
            ));
        }
        let store = match (&self.store, &other.store) {
            (Store::Bits(a), Store::Bits(b)) => Store::Bits(a.mul(b)),
            (Store::Words(a), Store::Words(b)) => {
                let spec = self.spec;
                let (n, inner) = (other.cols, self.cols);
                let mut out = vec![0u32; self.rows * n];
                for i in 0..self.rows {
                    let dst = &mut out[i * n..(i + 1) * n];
                    for k in 0..inner {
                        let a_ik = a[i * inner + k];
                        if a_ik == 0 {
                            continue;
                        }
                        for (d, &b_kj) in dst.iter_mut().zip(&b[k * n..(k + 1) * n]) {
                            *d = spec.add(*d, spec.mul(a_ik, b_kj));
                        }
                    }
                }
                Store::Words(out)
            }
            _ => unreachable!("store kind follows the field"),
        };
        Ok(DenseMatrix { spec: self.spec, rows: self.rows, cols: other.cols, store })
    }

    pub fn mul_vec(&self, x: &Vector) -> Result<Vector> {
        if x.spec() != self.spec {
            return Err(Error::FieldMismatch { left: self.spec, right: x.spec() });
        }
        if x.len() != self.cols {
            return Err(Error::dims("dense mat-vec", format!("{} columns vs length {}", self.cols, x.len())));
        }
        let spec = self.spec;
        let out = (0..self.rows)
            .map(|i| (0..self.cols).fold(0, |acc, j| spec.add(acc, spec.mul(self.get(i, j), x.get(j)))))
            .collect();
        Ok(Vector::from_raw(spec, out))
    }

    /// `self^e` by repeated squaring.
    pub fn pow(&self, e: u64) -> Result<DenseMatrix> {
        self.pow_counted(e).map(|(m, _)| m)
    }

    /// `self^e` together with the number of matrix products performed, which
    /// never exceeds `2 * ceil(log2(e + 1))`.
    pub fn pow_counted(&self, mut e: u64) -> Result<(DenseMatrix, usize)> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut products = 0;
        let mut acc: Option<DenseMatrix> = None;
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => {
                        products += 1;
                        a.mul(&base)?
                    }
                });
            }
            e >>= 1;
            if e > 0 {
                products += 1;
                base = base.mul(&base)?;
            }
        }
        Ok((acc.unwrap_or_else(|| DenseMatrix::identity(self.spec, self.rows)), products))
    }
}
