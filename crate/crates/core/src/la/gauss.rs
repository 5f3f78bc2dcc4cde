//! Plain Gaussian elimination to reduced row echelon form. Used as the
//! reference oracle for the structured solver, so it shares no code with
//! `factor`.

use crate::bits::BitMatrix;
use crate::error::{Error, Result};
use crate::la::{DenseMatrix, Vector};

/// Reduced row echelon form and its pivot columns (ascending).
fn rref(m: &DenseMatrix) -> (DenseMatrix, Vec<usize>) {
    match m.as_bits() {
        Some(b) => {
            let (reduced, pivots) = rref_bits(b.clone());
            (DenseMatrix::from_bits(reduced), pivots)
        }
        None => rref_words(m),
    }
}

fn rref_bits(mut m: BitMatrix) -> (BitMatrix, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols() {
        if r == m.rows() {
            break;
        }
        let Some(p) = (r..m.rows()).find(|&i| m.get(i, c)) else {
            continue;
        };
        m.swap_rows(r, p);
        for i in 0..m.rows() {
            if i != r && m.get(i, c) {
                m.xor_rows(i, r);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

fn rref_words(m: &DenseMatrix) -> (DenseMatrix, Vec<usize>) {
    let spec = m.spec();
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<u32>> = m.to_rows();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        let inv = spec.inv(a[r][c]).expect("pivot is nonzero");
        for v in a[r].iter_mut() {
            *v = spec.mul(*v, inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            let f = row[c];
            if i == r || f == 0 {
                continue;
            }
            for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                *v = spec.sub_mul(*v, f, pv);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut out = DenseMatrix::zeros(spec, rows, cols);
    for (i, row) in a.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            out.set_raw(i, j, v);
        }
    }
    (out, pivots)
}

/// Exact rank over the field.
pub fn rank(a: &DenseMatrix) -> usize {
    rref(a).1.len()
}

/// Solves `A x = b` for any shape of `A`. Returns `None` if inconsistent;
/// free variables are set to zero.
pub fn dense_gaussian_solve(a: &DenseMatrix, b: &Vector) -> Result<Option<Vector>> {
    if a.spec() != b.spec() {
        return Err(Error::FieldMismatch { left: a.spec(), right: b.spec() });
    }
    if a.rows() != b.len() {
        return Err(Error::dims("dense_gaussian_solve", format!("{} rows vs length {}", a.rows(), b.len())));
    }
    let spec = a.spec();
    let n = a.cols();
    let mut aug = DenseMatrix::zeros(spec, a.rows(), n + 1);
    for i in 0..a.rows() {
        for j in 0..n {
            aug.set_raw(i, j, a.get(i, j));
        }
        aug.set_raw(i, n, b.get(i));
    }
    let (reduced, pivots) = rref(&aug);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![0u32; n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = reduced.get(r, n);
    }
    Ok(Some(Vector::from_raw(spec, x)))
}

/// A basis of the right kernel `{x : A x = 0}`, one vector per free column.
pub fn kernel_basis(a: &DenseMatrix) -> Vec<Vector> {
    let spec = a.spec();
    let n = a.cols();
    let (reduced, pivots) = rref(a);
    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x = vec![0u32; n];
            x[f] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                x[c] = spec.neg(reduced.get(r, f));
            }
            Vector::from_raw(spec, x)
        })
        .collect()
}
